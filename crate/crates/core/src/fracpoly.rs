//! Truncated fractional polynomials `Σ cᵢ (t − t₀)^{iα}` and the operators
//! that act on them term-wise: the Caputo derivative of order α, its
//! sequential powers, and the Riemann–Liouville integral of order α.
//!
//! Coefficients are stored flat, without Γ denominators factored out.

use crate::special::{gamma_positive, gamma_ratio};
use crate::{Error, Result, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct FractionalPolynomial<T> {
    alpha: T,
    t0: T,
    coeffs: Vec<T>,
}

/// Result of applying `D^α` to a single power `(t − t₀)^β`:
/// `coefficient · (t − t₀)^exponent`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerTerm<T> {
    pub coefficient: T,
    pub exponent: T,
}

/// Checks 0 < alpha ≤ 1.
pub(crate) fn check_grid_order<T: Scalar>(alpha: T) -> Result<()> {
    if alpha > T::zero() && alpha <= T::one() {
        Ok(())
    } else {
        Err(Error::domain(format!("alpha out of (0,1]: {alpha}")))
    }
}

impl<T: Scalar> FractionalPolynomial<T> {
    /// Builds a polynomial from `c₀..c_n`. An empty coefficient list is
    /// treated as the zero constant.
    pub fn new(alpha: T, t0: T, coeffs: Vec<T>) -> Result<Self> {
        check_grid_order(alpha)?;
        if !t0.is_finite() {
            return Err(Error::domain("expansion center must be finite"));
        }
        let coeffs = if coeffs.is_empty() { vec![T::zero()] } else { coeffs };
        Ok(Self { alpha, t0, coeffs })
    }

    pub fn constant(alpha: T, t0: T, value: T) -> Result<Self> {
        Self::new(alpha, t0, vec![value])
    }

    /// The zero polynomial with `degree + 1` coefficients.
    pub fn zero(alpha: T, t0: T, degree: usize) -> Result<Self> {
        Self::new(alpha, t0, vec![T::zero(); degree + 1])
    }

    /// Same grid as `self`, new coefficients. Grid already validated.
    fn with_coeffs(&self, coeffs: Vec<T>) -> Self {
        let coeffs = if coeffs.is_empty() { vec![T::zero()] } else { coeffs };
        Self { alpha: self.alpha, t0: self.t0, coeffs }
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn t0(&self) -> T {
        self.t0
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of `(t − t₀)^{iα}`; zero past the degree.
    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).copied().unwrap_or_else(T::zero)
    }

    pub(crate) fn coeffs_mut(&mut self) -> &mut [T] {
        &mut self.coeffs
    }

    /// Pads with zeros or drops trailing terms so the degree becomes `degree`.
    pub fn resized(&self, degree: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(degree + 1, T::zero());
        self.with_coeffs(coeffs)
    }

    pub fn same_grid(&self, other: &Self) -> bool {
        self.alpha == other.alpha && self.t0 == other.t0
    }

    pub(crate) fn check_grid(&self, other: &Self) -> Result<()> {
        if self.alpha != other.alpha {
            return Err(Error::Mismatch(format!("alpha {} vs {}", self.alpha, other.alpha)));
        }
        if self.t0 != other.t0 {
            return Err(Error::Mismatch(format!("t0 {} vs {}", self.t0, other.t0)));
        }
        Ok(())
    }

    /// Σ cᵢ (t − t₀)^{iα}, with (t − t₀)⁰ = 1 including at t = t₀.
    pub fn evaluate(&self, t: T) -> Result<T> {
        if !(t >= self.t0) {
            return Err(Error::domain(format!("evaluation point {t} precedes center {}", self.t0)));
        }
        let shift = t - self.t0;
        if shift == T::zero() {
            return Ok(self.coeffs[0]);
        }
        // Horner in x = (t − t₀)^α, with x = exp(α ln(t − t₀))
        let x = (self.alpha * shift.ln()).exp();
        Ok(self.coeffs.iter().rev().fold(T::zero(), |acc, &c| acc * x + c))
    }

    /// `a·self + b·other`, degree = max of the two.
    pub fn add_scaled(&self, other: &Self, a: T, b: T) -> Result<Self> {
        self.check_grid(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| a * self.coeff(i) + b * other.coeff(i)).collect();
        Ok(self.with_coeffs(coeffs))
    }

    /// Cauchy product truncated to degree `max_degree`. Exponents stay on the
    /// grid since iα + jα = (i + j)α.
    pub fn multiply_truncated(&self, other: &Self, max_degree: usize) -> Result<Self> {
        self.check_grid(other)?;
        let n = (self.degree() + other.degree()).min(max_degree);
        let mut out = vec![T::zero(); n + 1];
        for (i, &p) in self.coeffs.iter().enumerate().take(n + 1) {
            if p == T::zero() {
                continue;
            }
            for (j, &q) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                out[i + j] = out[i + j] + p * q;
            }
        }
        Ok(self.with_coeffs(out))
    }

    /// Multiplies by `(t − t₀)^{slots·α}`, truncating at `max_degree`.
    pub(crate) fn shifted(&self, slots: usize, max_degree: usize) -> Self {
        let mut out = vec![T::zero(); max_degree + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            if i + slots > max_degree {
                break;
            }
            out[i + slots] = c;
        }
        self.with_coeffs(out)
    }

    /// Caputo derivative of order α (the grid order): the constant term is
    /// annihilated and `cᵢ (t − t₀)^{iα}` becomes
    /// `cᵢ Γ(iα+1)/Γ((i−1)α+1) (t − t₀)^{(i−1)α}`.
    pub fn caputo_derivative(&self) -> Self {
        if self.degree() == 0 {
            return self.with_coeffs(vec![T::zero()]);
        }
        let coeffs = self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| c * self.step_ratio(i)).collect();
        self.with_coeffs(coeffs)
    }

    /// Γ(iα+1)/Γ((i−1)α+1), the factor `D^α` puts on the index-i term.
    pub(crate) fn step_ratio(&self, i: usize) -> T {
        let a = self.alpha;
        let i_t = T::from_usize_exact(i);
        gamma_ratio(i_t * a + T::one(), (i_t - T::one()) * a + T::one())
    }

    /// `lim_{t→t₀⁺} (D^α)^k p(t)`, computed by applying the Caputo
    /// derivative `k` times and reading off the constant term.
    pub fn sequential_caputo_limit(&self, k: usize) -> Result<T> {
        if k > self.degree() {
            return Err(Error::Index { index: k, max: self.degree() });
        }
        let mut p = self.clone();
        for _ in 0..k {
            p = p.caputo_derivative();
        }
        Ok(p.coeffs[0])
    }

    /// Riemann–Liouville integral of order α:
    /// `J^α (t − t₀)^{iα} = Γ(iα+1)/Γ((i+1)α+1) (t − t₀)^{(i+1)α}`.
    pub fn rl_integral(&self) -> Self {
        let a = self.alpha;
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(T::zero());
        for (i, &c) in self.coeffs.iter().enumerate() {
            let i_t = T::from_usize_exact(i);
            coeffs.push(c * gamma_ratio(i_t * a + T::one(), (i_t + T::one()) * a + T::one()));
        }
        self.with_coeffs(coeffs)
    }
}

/// Caputo derivative of order `alpha` of a single power `(t − t₀)^beta_exp`.
///
/// Returns `None` when the power is annihilated (a non-negative integer below
/// `m = ⌈alpha⌉`), otherwise `Γ(β+1)/Γ(β−α+1) (t − t₀)^{β−α}`. Powers with
/// `beta_exp ≤ m − 1` that are not such integers are rejected.
pub fn caputo_power_rule<T: Scalar>(beta_exp: T, alpha: T) -> Result<Option<PowerTerm<T>>> {
    if !(alpha > T::zero()) || !alpha.is_finite() {
        return Err(Error::domain(format!("derivative order must be positive, got {alpha}")));
    }
    if !(beta_exp >= T::zero()) || !beta_exp.is_finite() {
        return Err(Error::domain(format!("power must be non-negative, got {beta_exp}")));
    }
    let m = alpha.ceil();
    if beta_exp.fract() == T::zero() && beta_exp < m {
        return Ok(None);
    }
    if !(beta_exp > m - T::one()) {
        return Err(Error::domain(format!(
            "power {beta_exp} must exceed {} for derivative order {alpha}",
            m - T::one()
        )));
    }
    let coefficient = gamma_positive(beta_exp + T::one()) / gamma_positive(beta_exp - alpha + T::one());
    Ok(Some(PowerTerm { coefficient, exponent: beta_exp - alpha }))
}
