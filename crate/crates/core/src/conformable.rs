//! Side-by-side comparison of the Caputo derivative and the conformable
//! derivative `T_α f = (t − t₀)^{m−α} f^{(m)}(t)` on power functions
//! `f = (t − t₀)^β`, with `m = ⌈α⌉`.
//!
//! Both give a multiple of `(t − t₀)^{β−α}`. The multiples differ by the
//! factor `Γ(β−m+1)/Γ(β−α+1)`, which is 1 only when α is an integer.

use crate::special::gamma_positive;
use crate::{Error, Result, Scalar};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscrepancyReport<T> {
    pub alpha: T,
    pub beta_exp: T,
    pub m: u32,
    /// Γ(β+1)/Γ(β−α+1)
    pub caputo_coefficient: T,
    /// Γ(β+1)/Γ(β−m+1)
    pub conformable_coefficient: T,
    /// Γ(β−m+1)/Γ(β−α+1)
    pub ratio: T,
}

fn order_ceiling<T: Scalar>(beta_exp: T, alpha: T) -> Result<(T, u32)> {
    if !(alpha > T::zero()) || !alpha.is_finite() {
        return Err(Error::domain(format!("order must be positive, got {alpha}")));
    }
    let m = alpha.ceil();
    if !(beta_exp > m - T::one()) || !beta_exp.is_finite() {
        return Err(Error::domain(format!("power {beta_exp} must exceed {} for order {alpha}", m - T::one())));
    }
    let m_int = m.to_u32().ok_or_else(|| Error::domain("order too large"))?;
    Ok((m, m_int))
}

fn shifted_power<T: Scalar>(t_shift: T, exponent: T) -> Result<T> {
    if !(t_shift >= T::zero()) {
        return Err(Error::domain(format!("t - t0 must be non-negative, got {t_shift}")));
    }
    if t_shift == T::zero() {
        return match exponent {
            e if e == T::zero() => Ok(T::one()),
            e if e > T::zero() => Ok(T::zero()),
            _ => Err(Error::domain("negative power at t = t0")),
        };
    }
    Ok(t_shift.powf(exponent))
}

/// `Γ(β+1)/Γ(β−m+1) · t_shift^{β−α}`.
pub fn conformable_power_derivative<T: Scalar>(beta_exp: T, alpha: T, t_shift: T) -> Result<T> {
    let (m, _) = order_ceiling(beta_exp, alpha)?;
    let c = gamma_positive(beta_exp + T::one()) / gamma_positive(beta_exp - m + T::one());
    Ok(c * shifted_power(t_shift, beta_exp - alpha)?)
}

/// `Γ(β+1)/Γ(β−α+1) · t_shift^{β−α}`.
pub fn caputo_power_value<T: Scalar>(beta_exp: T, alpha: T, t_shift: T) -> Result<T> {
    order_ceiling(beta_exp, alpha)?;
    let c = gamma_positive(beta_exp + T::one()) / gamma_positive(beta_exp - alpha + T::one());
    Ok(c * shifted_power(t_shift, beta_exp - alpha)?)
}

pub fn discrepancy_report<T: Scalar>(beta_exp: T, alpha: T) -> Result<DiscrepancyReport<T>> {
    let (m, m_int) = order_ceiling(beta_exp, alpha)?;
    let g_top = gamma_positive(beta_exp + T::one());
    let g_m = gamma_positive(beta_exp - m + T::one());
    let g_a = gamma_positive(beta_exp - alpha + T::one());
    Ok(DiscrepancyReport {
        alpha,
        beta_exp,
        m: m_int,
        caputo_coefficient: g_top / g_a,
        conformable_coefficient: g_top / g_m,
        ratio: g_m / g_a,
    })
}
