//! Correctional power-series solution of `D^α y = f(t, y)`, `y(t₀) = y₀`.
//!
//! The ansatz is a fractional polynomial of order α and degree n per state
//! variable. Its defect `D^α P − f(t, P)` is forced to satisfy
//!
//! ```text
//! lim_{t→t₀⁺} (D^α)^{i−1} Def(t) = 0,   i = 1..n
//! ```
//!
//! For polynomial `f` the (i−1)-th defect coefficient reads
//! `cᵢ Γ(iα+1)/Γ((i−1)α+1) − [f(t, P)]_{i−1}` and the bracket only involves
//! `c₀..c_{i−1}`, so every condition is linear in the single unknown `cᵢ`.
//! All components advance in lockstep.

use crate::field::PolynomialVectorField;
use crate::fracpoly::{check_grid_order, FractionalPolynomial};
use crate::special::gamma_positive;
use crate::{Error, Result, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct AcpsProblem<T> {
    pub field: PolynomialVectorField<T>,
    pub y0: Vec<T>,
    pub alpha: T,
    pub t0: T,
    pub degree: usize,
}

impl<T: Scalar> AcpsProblem<T> {
    pub fn new(field: PolynomialVectorField<T>, y0: Vec<T>, alpha: T, t0: T, degree: usize) -> Result<Self> {
        if y0.len() != field.dimension() {
            return Err(Error::Dimension { expected: field.dimension(), got: y0.len() });
        }
        check_grid_order(alpha)?;
        if !t0.is_finite() || y0.iter().any(|v| !v.is_finite()) {
            return Err(Error::domain("initial data must be finite"));
        }
        Ok(Self { field, y0, alpha, t0, degree })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AcpsSolution<T> {
    /// One fractional polynomial per state variable.
    pub series: Vec<FractionalPolynomial<T>>,
    /// Defect coefficients 0..n−1 of each equation after solving; ≈ 0.
    pub defect_coefficients: Vec<Vec<T>>,
}

impl<T: Scalar> AcpsSolution<T> {
    /// State vector at time `t ≥ t₀`.
    pub fn evaluate(&self, t: T) -> Result<Vec<T>> {
        self.series.iter().map(|p| p.evaluate(t)).collect()
    }
}

/// `D^α P − f(t, P)` per component, truncated at `max_degree`.
pub fn build_defect<T: Scalar>(
    field: &PolynomialVectorField<T>,
    candidate: &[FractionalPolynomial<T>],
    max_degree: usize,
) -> Result<Vec<FractionalPolynomial<T>>> {
    let composed = field.compose_series(candidate, max_degree)?;
    candidate
        .iter()
        .zip(&composed)
        .map(|(p, f)| p.caputo_derivative().resized(max_degree).add_scaled(f, T::one(), -T::one()))
        .collect()
}

pub fn solve<T: Scalar>(problem: &AcpsProblem<T>) -> Result<AcpsSolution<T>> {
    let n = problem.degree;
    let alpha = problem.alpha;
    let mut series = problem
        .y0
        .iter()
        .map(|&v| {
            let mut p = FractionalPolynomial::zero(alpha, problem.t0, n)?;
            p.coeffs_mut()[0] = v;
            Ok(p)
        })
        .collect::<Result<Vec<_>>>()?;

    if n == 0 {
        return Ok(AcpsSolution { defect_coefficients: vec![Vec::new(); series.len()], series });
    }

    for i in 1..=n {
        // coefficients ≥ i are still zero, so composing at degree i−1 sees only c₀..c_{i−1}
        let composed = problem.field.compose_series(&series, i - 1)?;
        let step = T::from_usize_exact(i);
        let factor = gamma_positive((step - T::one()) * alpha + T::one()) / gamma_positive(step * alpha + T::one());
        for (p, f) in series.iter_mut().zip(&composed) {
            p.coeffs_mut()[i] = factor * f.coeff(i - 1);
        }
    }

    let defect = build_defect(&problem.field, &series, n - 1)?;
    let defect_coefficients = defect.iter().map(|d| d.coeffs().to_vec()).collect();
    Ok(AcpsSolution { series, defect_coefficients })
}

/// For each `i = 1..n`, the largest `|lim_{t→t₀⁺} (D^α)^{i−1} Def_j(t)|` over
/// equations `j`, computed by literal repeated Caputo differentiation of the
/// defect.
pub fn verify_defect_conditions<T: Scalar>(solution: &AcpsSolution<T>, problem: &AcpsProblem<T>) -> Result<Vec<T>> {
    let n = problem.degree;
    if n == 0 {
        return Ok(Vec::new());
    }
    let defect = build_defect(&problem.field, &solution.series, n - 1)?;
    (1..=n)
        .map(|i| defect.iter().try_fold(T::zero(), |worst, d| Ok(worst.max(d.sequential_caputo_limit(i - 1)?.abs()))))
        .collect()
}

/// Magnitude of the data that cancels in each defect condition:
/// `Γ((i−1)α+1) · max_j max(|[D^α P_j]_{i−1}|, |[f(t, P)_j]_{i−1}|)`, floored
/// at `Γ((i−1)α+1)`. Dividing [`verify_defect_conditions`] by this gives a
/// relative residual.
pub fn defect_condition_scales<T: Scalar>(solution: &AcpsSolution<T>, problem: &AcpsProblem<T>) -> Result<Vec<T>> {
    let n = problem.degree;
    if n == 0 {
        return Ok(Vec::new());
    }
    let composed = problem.field.compose_series(&solution.series, n - 1)?;
    let derivs: Vec<_> = solution.series.iter().map(|p| p.caputo_derivative()).collect();
    Ok((1..=n)
        .map(|i| {
            let k = i - 1;
            let data =
                derivs.iter().zip(&composed).fold(T::one(), |m, (d, f)| m.max(d.coeff(k).abs()).max(f.coeff(k).abs()));
            gamma_positive(T::from_usize_exact(k) * problem.alpha + T::one()) * data
        })
        .collect())
}
