//! Pointwise comparison of a reference trajectory against a series solution.

use crate::fracpoly::FractionalPolynomial;
use crate::rk4::Trajectory;
use crate::{Error, Result, Scalar};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorRow<T> {
    pub t: T,
    pub reference: T,
    pub approximation: T,
    pub absolute_error: T,
    /// NaN when the reference value is zero.
    pub relative_error: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorTable<T> {
    pub variable: String,
    pub rows: Vec<ErrorRow<T>>,
}

impl<T: Scalar> ErrorRow<T> {
    pub fn new(t: T, reference: T, approximation: T) -> Self {
        let absolute_error = (reference - approximation).abs();
        let relative_error = if reference == T::zero() { T::nan() } else { absolute_error / reference.abs() };
        Self { t, reference, approximation, absolute_error, relative_error }
    }
}

impl<T: Scalar> ErrorTable<T> {
    pub fn row_at(&self, t: T, tol: T) -> Option<&ErrorRow<T>> {
        self.rows.iter().find(|r| (r.t - t).abs() <= tol)
    }

    pub fn max_absolute_error(&self) -> T {
        self.rows.iter().fold(T::zero(), |m, r| m.max(r.absolute_error))
    }
}

/// `t_start + i (t_end − t_start) / intervals` for `i = 0..=intervals`.
pub fn uniform_times<T: Scalar>(t_start: T, t_end: T, intervals: usize) -> Vec<T> {
    let n = T::from_usize_exact(intervals.max(1));
    (0..=intervals).map(|i| t_start + (t_end - t_start) * T::from_usize_exact(i) / n).collect()
}

/// One row per sample time, comparing component `component` of the
/// trajectory against `series[component]`.
pub fn comparison_table<T: Scalar>(
    reference: &Trajectory<T>,
    series: &[FractionalPolynomial<T>],
    component: usize,
    sample_times: &[T],
    variable: &str,
) -> Result<ErrorTable<T>> {
    let poly = series.get(component).ok_or(Error::Index { index: component, max: series.len().saturating_sub(1) })?;
    let tol = T::lit(1e-12);
    let rows = sample_times
        .iter()
        .map(|&t| {
            let state = reference.state_at(t, tol).ok_or(Error::MissingSample(t.as_f64()))?;
            let r = *state.get(component).ok_or(Error::Dimension { expected: component + 1, got: state.len() })?;
            Ok(ErrorRow::new(t, r, poly.evaluate(t)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ErrorTable { variable: variable.to_string(), rows })
}
