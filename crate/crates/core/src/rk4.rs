//! Classical fourth-order Runge–Kutta for the integer-order (α = 1) case,
//! used as the reference solution.

use crate::field::PolynomialVectorField;
use crate::fracpoly::FractionalPolynomial;
use crate::{Error, Result, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<T> {
    pub times: Vec<T>,
    pub states: Vec<Vec<T>>,
}

impl<T: Scalar> Trajectory<T> {
    /// Samples fractional-polynomial series on the given (increasing) times.
    pub fn from_series(series: &[FractionalPolynomial<T>], times: &[T]) -> Result<Self> {
        let states = times
            .iter()
            .map(|&t| series.iter().map(|p| p.evaluate(t)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { times: times.to_vec(), states })
    }

    /// State at the grid point within `tol` of `t`.
    pub fn state_at(&self, t: T, tol: T) -> Option<&[T]> {
        // grid is sorted; binary search for the nearest point
        let idx = self.times.partition_point(|&x| x < t);
        [idx.checked_sub(1), Some(idx)]
            .into_iter()
            .flatten()
            .filter(|&i| i < self.times.len())
            .find(|&i| (self.times[i] - t).abs() <= tol)
            .map(|i| self.states[i].as_slice())
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

/// Integrates `y' = f(t, y)` from `t0` to `t_end` with fixed step `h`,
/// recording the initial point and every `record_every`-th step. Time powers
/// in `field` are interpreted with α = 1, i.e. as powers of `t − t0`.
pub fn rk4_integrate<T: Scalar>(
    field: &PolynomialVectorField<T>,
    y0: &[T],
    t0: T,
    t_end: T,
    h: T,
    record_every: usize,
) -> Result<Trajectory<T>> {
    if !(h > T::zero()) || !h.is_finite() {
        return Err(Error::domain(format!("step size must be positive, got {h}")));
    }
    if !(t_end > t0) {
        return Err(Error::domain(format!("t_end {t_end} must exceed t0 {t0}")));
    }
    if record_every == 0 {
        return Err(Error::domain("record_every must be positive"));
    }
    if y0.len() != field.dimension() {
        return Err(Error::Dimension { expected: field.dimension(), got: y0.len() });
    }
    let span = t_end - t0;
    let steps_t = (span / h).round();
    let steps = steps_t.to_usize().ok_or_else(|| Error::domain("step count out of range"))?;
    let tol = T::lit(1e-12).max(T::epsilon() * T::lit(16.0) * steps_t.max(T::one()) * h);
    if steps == 0 || (steps_t * h - span).abs() > tol {
        return Err(Error::domain(format!("step {h} does not divide the interval [{t0}, {t_end}]")));
    }

    let dim = y0.len();
    let two = T::lit(2.0);
    let half_h = h / two;
    let sixth_h = h / T::lit(6.0);
    let mut y = y0.to_vec();
    let (mut k1, mut k2, mut k3, mut k4) =
        (vec![T::zero(); dim], vec![T::zero(); dim], vec![T::zero(); dim], vec![T::zero(); dim]);
    let mut tmp = vec![T::zero(); dim];

    let mut times = vec![t0];
    let mut states = vec![y.clone()];
    for step in 0..steps {
        let s = T::from_usize_exact(step) * h;
        field.evaluate_into(s, &y, &mut k1)?;
        for d in 0..dim {
            tmp[d] = y[d] + half_h * k1[d];
        }
        field.evaluate_into(s + half_h, &tmp, &mut k2)?;
        for d in 0..dim {
            tmp[d] = y[d] + half_h * k2[d];
        }
        field.evaluate_into(s + half_h, &tmp, &mut k3)?;
        for d in 0..dim {
            tmp[d] = y[d] + h * k3[d];
        }
        field.evaluate_into(s + h, &tmp, &mut k4)?;
        for d in 0..dim {
            y[d] = y[d] + sixth_h * (k1[d] + two * (k2[d] + k3[d]) + k4[d]);
        }
        if (step + 1) % record_every == 0 {
            times.push(t0 + T::from_usize_exact(step + 1) * h);
            states.push(y.clone());
        }
    }
    Ok(Trajectory { times, states })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Monomial;
    use crate::models::sir_field;

    fn growth() -> PolynomialVectorField<f64> {
        PolynomialVectorField::new(vec![vec![Monomial::new(1.0, vec![1], 0)]], vec!["y".into()]).unwrap()
    }

    #[test]
    fn zero_field_is_constant() {
        let f = PolynomialVectorField::<f64>::zero(2).unwrap();
        let tr = rk4_integrate(&f, &[1.5, -2.0], 0.0, 1.0, 0.25, 1).unwrap();
        assert_eq!(tr.len(), 5);
        assert!(tr.states.iter().all(|s| s == &[1.5, -2.0]));
    }

    #[test]
    fn exponential_growth() {
        let tr = rk4_integrate(&growth(), &[1.0], 0.0, 1.0, 1e-3, 1000).unwrap();
        assert_eq!(tr.times, vec![0.0, 1.0]);
        assert!((tr.states[1][0] - std::f64::consts::E).abs() < 1e-10);
    }

    #[test]
    fn fourth_order_convergence() {
        let err = |h: f64| {
            let tr = rk4_integrate(&growth(), &[1.0], 0.0, 1.0, h, 1).unwrap();
            (tr.states.last().unwrap()[0] - std::f64::consts::E).abs()
        };
        let (e1, e2, e3) = (err(0.1), err(0.05), err(0.025));
        for ratio in [e1 / e2, e2 / e3] {
            assert!((14.0..=18.0).contains(&ratio), "ratio {ratio}");
        }
    }

    #[test]
    fn explicit_time_dependence() {
        // y' = 3 (t − 1)^2 from t0 = 1, exact y = (t − 1)^3
        let f = PolynomialVectorField::new(vec![vec![Monomial::new(3.0_f64, vec![0], 2)]], vec!["y".into()]).unwrap();
        let tr = rk4_integrate(&f, &[0.0], 1.0, 3.0, 0.5, 4).unwrap();
        assert!((tr.states[1][0] - 8.0).abs() < 1e-12);
    }

    #[test]
    fn sir_reference_value_and_conservation() {
        let f = sir_field(0.001_f64, 0.072).unwrap();
        let tr = rk4_integrate(&f, &[620.0, 10.0, 70.0], 0.0, 1.0, 1e-4, 100).unwrap();
        assert_eq!(tr.len(), 101);
        let s01 = tr.state_at(0.1, 1e-12).unwrap()[0];
        assert!((s01 - 619.363_031_579_673_5).abs() < 1e-6);
        for s in &tr.states {
            assert!((s.iter().sum::<f64>() - 700.0).abs() < 1e-9);
        }
    }

    #[test]
    fn argument_errors() {
        let f = growth();
        assert!(matches!(rk4_integrate(&f, &[1.0], 0.0, 1.0, 0.0, 1), Err(Error::Domain(_))));
        assert!(matches!(rk4_integrate(&f, &[1.0], 0.0, 1.0, -0.1, 1), Err(Error::Domain(_))));
        assert!(matches!(rk4_integrate(&f, &[1.0], 0.0, 1.0, 0.3, 1), Err(Error::Domain(_))));
        assert!(matches!(rk4_integrate(&f, &[1.0], 1.0, 1.0, 0.1, 1), Err(Error::Domain(_))));
        assert!(matches!(rk4_integrate(&f, &[1.0, 2.0], 0.0, 1.0, 0.1, 1), Err(Error::Dimension { .. })));
    }

    #[test]
    fn state_at_misses_off_grid_times() {
        let tr = rk4_integrate(&growth(), &[1.0], 0.0, 1.0, 0.1, 1).unwrap();
        assert!(tr.state_at(0.3, 1e-12).is_some());
        assert!(tr.state_at(0.35, 1e-12).is_none());
        assert!(tr.state_at(1.0, 1e-12).is_some());
        assert!(tr.state_at(1.2, 1e-12).is_none());
    }
}
