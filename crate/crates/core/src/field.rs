//! Polynomial right-hand sides `f(t, y)`.
//!
//! Each equation is a sum of monomials `c · (t − t₀)^{pα} · ∏ yⱼ^{eⱼ}`. This
//! class is closed under substitution of fractional polynomials for the
//! state, which is what the series solver needs.

use crate::fracpoly::FractionalPolynomial;
use crate::{Error, Result, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct Monomial<T> {
    pub coeff: T,
    /// Exponent of each state variable.
    pub state_powers: Vec<u32>,
    /// Number of α-grid slots of time dependence: the term carries `(t − t₀)^{pα}`.
    pub time_power: u32,
}

impl<T: Scalar> Monomial<T> {
    pub fn new(coeff: T, state_powers: Vec<u32>, time_power: u32) -> Self {
        Self { coeff, state_powers, time_power }
    }

    pub fn total_state_degree(&self) -> u32 {
        self.state_powers.iter().sum()
    }

    fn evaluate(&self, x: T, y: &[T]) -> T {
        let mut v = self.coeff * x.powi(self.time_power as i32);
        for (&yj, &e) in y.iter().zip(&self.state_powers) {
            if e > 0 {
                v = v * yj.powi(e as i32);
            }
        }
        v
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialVectorField<T> {
    dimension: usize,
    equations: Vec<Vec<Monomial<T>>>,
    variable_names: Vec<String>,
}

impl<T: Scalar> PolynomialVectorField<T> {
    pub fn new(equations: Vec<Vec<Monomial<T>>>, variable_names: Vec<String>) -> Result<Self> {
        let dimension = equations.len();
        if dimension == 0 {
            return Err(Error::validation("a vector field needs at least one equation"));
        }
        if variable_names.len() != dimension {
            return Err(Error::Dimension { expected: dimension, got: variable_names.len() });
        }
        for (i, eq) in equations.iter().enumerate() {
            for term in eq {
                if term.state_powers.len() != dimension {
                    return Err(Error::validation(format!(
                        "equation {i}: term has {} state powers, expected {dimension}",
                        term.state_powers.len()
                    )));
                }
                if !term.coeff.is_finite() {
                    return Err(Error::validation(format!("equation {i}: non-finite coefficient")));
                }
            }
        }
        Ok(Self { dimension, equations, variable_names })
    }

    /// Field with `dimension` equations and no terms. Variables are named `y0, y1, ...`.
    pub fn zero(dimension: usize) -> Result<Self> {
        let names = (0..dimension).map(|i| format!("y{i}")).collect();
        Self::new(vec![Vec::new(); dimension], names)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn equations(&self) -> &[Vec<Monomial<T>>] {
        &self.equations
    }

    pub fn variable_names(&self) -> &[String] {
        &self.variable_names
    }

    /// Evaluates `f` at a point. `t_shifted_pow_alpha` is `(t − t₀)^α`; with
    /// α = 1 it is simply `t − t₀`.
    pub fn evaluate_field(&self, t_shifted_pow_alpha: T, y: &[T]) -> Result<Vec<T>> {
        let mut out = vec![T::zero(); self.dimension];
        self.evaluate_into(t_shifted_pow_alpha, y, &mut out)?;
        Ok(out)
    }

    pub(crate) fn evaluate_into(&self, x: T, y: &[T], out: &mut [T]) -> Result<()> {
        if y.len() != self.dimension {
            return Err(Error::Dimension { expected: self.dimension, got: y.len() });
        }
        if !(x >= T::zero()) {
            return Err(Error::domain(format!("(t - t0)^alpha must be non-negative, got {x}")));
        }
        for (slot, eq) in out.iter_mut().zip(&self.equations) {
            *slot = eq.iter().fold(T::zero(), |acc, m| acc + m.evaluate(x, y));
        }
        Ok(())
    }

    /// Substitutes one fractional polynomial per state variable into `f`,
    /// truncating every component at `max_degree`.
    pub fn compose_series(
        &self,
        y_series: &[FractionalPolynomial<T>],
        max_degree: usize,
    ) -> Result<Vec<FractionalPolynomial<T>>> {
        if y_series.len() != self.dimension {
            return Err(Error::Dimension { expected: self.dimension, got: y_series.len() });
        }
        let first = &y_series[0];
        for s in &y_series[1..] {
            first.check_grid(s)?;
        }
        let (alpha, t0) = (first.alpha(), first.t0());

        let mut powers = PowerCache::new(y_series, max_degree);
        let mut out = Vec::with_capacity(self.dimension);
        for eq in &self.equations {
            let mut acc = vec![T::zero(); max_degree + 1];
            for term in eq {
                let slots = term.time_power as usize;
                if slots > max_degree || term.coeff == T::zero() {
                    continue;
                }
                let product = powers.monomial(&term.state_powers, max_degree - slots)?.shifted(slots, max_degree);
                for (a, &c) in acc.iter_mut().zip(product.coeffs()) {
                    *a = *a + term.coeff * c;
                }
            }
            out.push(FractionalPolynomial::new(alpha, t0, acc)?);
        }
        Ok(out)
    }
}

/// Memoized truncated powers `yⱼ^e` of the substituted series.
struct PowerCache<'a, T> {
    series: &'a [FractionalPolynomial<T>],
    max_degree: usize,
    powers: Vec<Vec<FractionalPolynomial<T>>>,
}

impl<'a, T: Scalar> PowerCache<'a, T> {
    fn new(series: &'a [FractionalPolynomial<T>], max_degree: usize) -> Self {
        let powers = series
            .iter()
            .map(|s| vec![FractionalPolynomial::new(s.alpha(), s.t0(), vec![T::one()]).expect("grid already valid")])
            .collect();
        Self { series, max_degree, powers }
    }

    fn power(&mut self, j: usize, e: u32) -> Result<&FractionalPolynomial<T>> {
        let e = e as usize;
        while self.powers[j].len() <= e {
            let last = self.powers[j].last().expect("power 0 always present");
            let next = last.multiply_truncated(&self.series[j], self.max_degree)?;
            self.powers[j].push(next);
        }
        Ok(&self.powers[j][e])
    }

    fn monomial(&mut self, state_powers: &[u32], max_degree: usize) -> Result<FractionalPolynomial<T>> {
        let mut acc = self.power(0, 0)?.resized(0);
        for (j, &e) in state_powers.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let p = self.power(j, e)?.clone();
            acc = acc.multiply_truncated(&p, max_degree)?;
        }
        Ok(acc)
    }
}
