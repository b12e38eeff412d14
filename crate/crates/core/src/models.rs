//! Built-in fractional SIR model and JSON model configurations.
//!
//! Config schema:
//!
//! ```json
//! {
//!   "variables": ["S", "I", "R"],
//!   "initial": [620, 10, 70],
//!   "alpha": 1.0,
//!   "t0": 0.0,
//!   "equations": [
//!     [{"coeff": -0.001, "powers": [1, 1, 0], "tpower": 0}],
//!     ...
//!   ]
//! }
//! ```
//!
//! `tpower` counts α-grid slots: the term is multiplied by `(t − t₀)^{tpower·α}`.

use serde::{Deserialize, Serialize};

use crate::field::{Monomial, PolynomialVectorField};
use crate::fracpoly::check_grid_order;
use crate::solver::AcpsProblem;
use crate::{Error, Result, Scalar};

pub const SIR_INFECTION_RATE: f64 = 0.001;
pub const SIR_RECOVERY_RATE: f64 = 0.072;
pub const SIR_INITIAL: [f64; 3] = [620.0, 10.0, 70.0];

#[derive(Debug, Clone, PartialEq)]
pub struct ModelSpec<T> {
    pub variable_names: Vec<String>,
    pub initial: Vec<T>,
    pub equations: Vec<Vec<Monomial<T>>>,
    pub alpha: T,
    pub t0: T,
}

impl<T: Scalar> ModelSpec<T> {
    pub fn new(
        variable_names: Vec<String>,
        initial: Vec<T>,
        equations: Vec<Vec<Monomial<T>>>,
        alpha: T,
        t0: T,
    ) -> Result<Self> {
        let spec = Self { variable_names, initial, equations, alpha, t0 };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        let n = self.variable_names.len();
        if n == 0 {
            return Err(Error::validation("at least one variable is required"));
        }
        if self.initial.len() != n {
            return Err(Error::validation(format!("initial has {} values for {n} variables", self.initial.len())));
        }
        if self.equations.len() != n {
            return Err(Error::validation(format!("equations has {} entries for {n} variables", self.equations.len())));
        }
        if !(self.alpha > T::zero() && self.alpha <= T::one()) {
            return Err(Error::validation(format!("alpha out of (0,1]: {}", self.alpha)));
        }
        if !self.t0.is_finite() || self.initial.iter().any(|v| !v.is_finite()) {
            return Err(Error::validation("t0 and initial values must be finite"));
        }
        for (i, eq) in self.equations.iter().enumerate() {
            for (k, term) in eq.iter().enumerate() {
                if term.state_powers.len() != n {
                    return Err(Error::validation(format!(
                        "equation {i} term {k}: powers has {} entries for {n} variables",
                        term.state_powers.len()
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn dimension(&self) -> usize {
        self.variable_names.len()
    }

    pub fn field(&self) -> Result<PolynomialVectorField<T>> {
        PolynomialVectorField::new(self.equations.clone(), self.variable_names.clone())
    }

    pub fn problem(&self, degree: usize) -> Result<AcpsProblem<T>> {
        AcpsProblem::new(self.field()?, self.initial.clone(), self.alpha, self.t0, degree)
    }

    pub fn with_alpha(&self, alpha: T) -> Result<Self> {
        check_grid_order(alpha).map_err(|_| Error::validation(format!("alpha out of (0,1]: {alpha}")))?;
        Ok(Self { alpha, ..self.clone() })
    }
}

/// `D^α S = −p1 S I`, `D^α I = p1 S I − p2 I`, `D^α R = p2 I`.
pub fn sir_field<T: Scalar>(p1: T, p2: T) -> Result<PolynomialVectorField<T>> {
    PolynomialVectorField::new(sir_equations(p1, p2)?, sir_names())
}

fn sir_names() -> Vec<String> {
    ["S", "I", "R"].iter().map(|s| s.to_string()).collect()
}

fn sir_equations<T: Scalar>(p1: T, p2: T) -> Result<Vec<Vec<Monomial<T>>>> {
    if !(p1 > T::zero()) || !(p2 > T::zero()) || !p1.is_finite() || !p2.is_finite() {
        return Err(Error::domain(format!("SIR rates must be positive, got p1 = {p1}, p2 = {p2}")));
    }
    Ok(vec![
        vec![Monomial::new(-p1, vec![1, 1, 0], 0)],
        vec![Monomial::new(p1, vec![1, 1, 0], 0), Monomial::new(-p2, vec![0, 1, 0], 0)],
        vec![Monomial::new(p2, vec![0, 1, 0], 0)],
    ])
}

pub fn sir_spec<T: Scalar>(p1: T, p2: T, initial: [T; 3], alpha: T) -> Result<ModelSpec<T>> {
    ModelSpec::new(sir_names(), initial.to_vec(), sir_equations(p1, p2)?, alpha, T::zero())
}

/// The SIR setup with the default rates and initial state, α = 1.
pub fn default_sir() -> ModelSpec<f64> {
    sir_spec(SIR_INFECTION_RATE, SIR_RECOVERY_RATE, SIR_INITIAL, 1.0).expect("builtin SIR is valid")
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigDocument {
    variables: Vec<String>,
    initial: Vec<f64>,
    alpha: f64,
    #[serde(default)]
    t0: f64,
    equations: Vec<Vec<ConfigTerm>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigTerm {
    coeff: f64,
    powers: Vec<u32>,
    tpower: u32,
}

pub fn parse_model_config(document: &str) -> Result<ModelSpec<f64>> {
    let doc: ConfigDocument = serde_json::from_str(document).map_err(|e| Error::Parse(e.to_string()))?;
    let equations = doc
        .equations
        .into_iter()
        .map(|eq| eq.into_iter().map(|t| Monomial::new(t.coeff, t.powers, t.tpower)).collect())
        .collect();
    ModelSpec::new(doc.variables, doc.initial, equations, doc.alpha, doc.t0)
}

impl ModelSpec<f64> {
    pub fn to_json(&self) -> String {
        let doc = ConfigDocument {
            variables: self.variable_names.clone(),
            initial: self.initial.clone(),
            alpha: self.alpha,
            t0: self.t0,
            equations: self
                .equations
                .iter()
                .map(|eq| {
                    eq.iter()
                        .map(|m| ConfigTerm { coeff: m.coeff, powers: m.state_powers.clone(), tpower: m.time_power })
                        .collect()
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("config document serializes")
    }
}
