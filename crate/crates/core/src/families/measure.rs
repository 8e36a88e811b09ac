use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::PolySeries;

/// A Stieltjes transform with a finite discrete measure:
/// `f(x) = a / x + b + sum_i w_i / (s_i + x)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureRep {
    pub a: f64,
    pub b: f64,
    /// `(s_i, w_i)` pairs, both positive.
    pub atoms: Vec<(f64, f64)>,
}

impl MeasureRep {
    pub fn new(a: f64, b: f64, atoms: Vec<(f64, f64)>) -> Result<Self> {
        let m = MeasureRep { a, b, atoms };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.a >= 0.0 && self.a.is_finite()) || !(self.b >= 0.0 && self.b.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "Stieltjes constants must be finite and nonnegative, got a = {}, b = {}",
                self.a, self.b
            )));
        }
        for &(s, w) in &self.atoms {
            if !(s > 0.0 && s.is_finite() && w > 0.0 && w.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "atom ({s}, {w}) must have positive finite location and weight"
                )));
            }
        }
        // integral of dmu(s) / (1 + s); finite for finite atom lists
        let mass: f64 = self.atoms.iter().map(|(s, w)| w / (1.0 + s)).sum();
        if !mass.is_finite() {
            return Err(Error::InvalidParameter("atom mass is not summable".into()));
        }
        if self.a == 0.0 && self.b == 0.0 && self.atoms.is_empty() {
            return Err(Error::InvalidParameter(
                "the zero measure does not represent a positive function".into(),
            ));
        }
        Ok(())
    }

    pub fn evaluate(&self, x: f64) -> Result<f64> {
        if !(x > 0.0 && x.is_finite()) {
            return Err(Error::domain("Stieltjes transform", x));
        }
        let atoms: f64 = self.atoms.iter().map(|(s, w)| w / (s + x)).sum();
        Ok(self.a / x + self.b + atoms)
    }

    /// Derivatives in closed form:
    /// `f^(k)(x) / k! = (-1)^k [a / x^(k+1) + sum_i w_i / (s_i + x)^(k+1)]`, plus `b` at `k = 0`.
    pub fn series_at(&self, x0: f64, order: usize) -> Result<PolySeries> {
        self.series_scaled(x0, 1.0, order)
    }

    /// Series of `u -> f(m * (x0 + u))`.
    pub(crate) fn series_scaled(&self, x0: f64, m: f64, order: usize) -> Result<PolySeries> {
        let y = m * x0;
        if !(y > 0.0 && y.is_finite()) {
            return Err(Error::domain("Stieltjes transform", y));
        }
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut pole = self.a / y;
        let mut atoms: Vec<f64> = self.atoms.iter().map(|(s, w)| w / (s + y)).collect();
        let mut sign_scale = 1.0;
        for k in 0..=order {
            let sum: f64 = pole + atoms.iter().sum::<f64>();
            let base = if k == 0 {
                sum + self.b
            } else {
                sign_scale * sum
            };
            coeffs.push(base);
            pole /= y;
            for (v, (s, _)) in atoms.iter_mut().zip(&self.atoms) {
                *v /= s + y;
            }
            sign_scale *= -m;
        }
        PolySeries::new(x0, coeffs)
    }

    pub fn ln_series_at(&self, x0: f64, order: usize) -> Result<PolySeries> {
        self.series_at(x0, order)?.ln_series()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn evaluation_examples() {
        let inv = MeasureRep::new(1.0, 0.0, vec![]).unwrap();
        assert_eq!(inv.evaluate(4.0).unwrap(), 0.25);
        let one = MeasureRep::new(0.0, 1.0, vec![]).unwrap();
        assert_eq!(one.evaluate(0.37).unwrap(), 1.0);
        let atoms = MeasureRep::new(0.0, 0.0, vec![(1.0, 1.0), (2.0, 3.0)]).unwrap();
        assert_eq!(atoms.evaluate(1.0).unwrap(), 1.5);
        assert!(matches!(inv.evaluate(0.0), Err(Error::Domain { .. })));
    }

    #[test]
    fn invalid_measures() {
        assert!(MeasureRep::new(-1.0, 0.0, vec![]).is_err());
        assert!(MeasureRep::new(0.0, 0.0, vec![(0.0, 1.0)]).is_err());
        assert!(MeasureRep::new(0.0, 0.0, vec![(1.0, -1.0)]).is_err());
        assert!(MeasureRep::new(0.0, 0.0, vec![]).is_err());
    }

    #[test]
    fn ln_series_examples() {
        let inv = MeasureRep::new(1.0, 0.0, vec![]).unwrap();
        let s = inv.ln_series_at(1.0, 4).unwrap();
        assert_relative_eq!(s.derivative(1).unwrap(), -1.0, max_relative = 1e-15);
        let c = MeasureRep::new(0.0, 2.5, vec![]).unwrap();
        let s = c.ln_series_at(3.0, 6).unwrap();
        assert!(s.coeffs()[1..].iter().all(|v| *v == 0.0));
        let atom = MeasureRep::new(0.0, 0.0, vec![(1.0, 1.0)]).unwrap();
        // f(x) = 1/(1+x): f''(1) = 2 / 2^3
        let f = atom.series_at(1.0, 3).unwrap();
        assert_relative_eq!(f.derivative(2).unwrap(), 0.25, max_relative = 1e-15);
        let back = atom.ln_series_at(1.0, 3).unwrap().exp_series().unwrap();
        assert_relative_eq!(back.derivative(2).unwrap(), 0.25, max_relative = 1e-14);
    }

    #[test]
    fn scaled_series_is_chain_rule() {
        let m = MeasureRep::new(0.5, 0.1, vec![(2.0, 1.0)]).unwrap();
        let direct = m.series_at(1.5, 5).unwrap();
        let scaled = m.series_scaled(0.75, 2.0, 5).unwrap();
        for k in 0..=5 {
            let want = direct.coeffs()[k] * 2f64.powi(k as i32);
            assert_relative_eq!(scaled.coeffs()[k], want, max_relative = 1e-14);
        }
    }
}
