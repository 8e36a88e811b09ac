//! Catalog of gamma-ratio function families.
//!
//! Every family exposes its natural domain, point evaluation (including the
//! explicit limit values at removable points) and the truncated power series of
//! `ln f` at a requested point. The series are assembled from log-gamma series,
//! divisions by monomials and ln/exp lifts, independently of any closed-form
//! derivative identity.

pub mod measure;
pub mod text;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::PolySeries;
use crate::specfun::{self, ln_gamma, polygamma};

pub use measure::MeasureRep;
pub use text::FamilyTemplate;

/// `ln_series_at` refuses expansion points closer than this to a removable point.
pub const REMOVABLE_EXCLUSION: f64 = 1e-3;

/// Open interval `(lo, hi)`; either end may be infinite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub const POSITIVE: Interval = Interval {
        lo: 0.0,
        hi: f64::INFINITY,
    };

    pub fn above(lo: f64) -> Self {
        Interval {
            lo,
            hi: f64::INFINITY,
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        x > self.lo && x < self.hi
    }

    pub fn is_empty(&self) -> bool {
        !(self.lo < self.hi)
    }

    /// Distance from `x` to the nearer endpoint.
    pub fn margin(&self, x: f64) -> f64 {
        (x - self.lo).min(self.hi - x)
    }

    fn intersect(self, other: Interval) -> Interval {
        Interval {
            lo: self.lo.max(other.lo),
            hi: self.hi.min(other.hi),
        }
    }

    /// `{x : coef * x in self}`.
    fn preimage(self, coef: f64) -> Interval {
        if coef > 0.0 {
            Interval {
                lo: self.lo / coef,
                hi: self.hi / coef,
            }
        } else if coef < 0.0 {
            Interval {
                lo: self.hi / coef,
                hi: self.lo / coef,
            }
        } else if self.contains(0.0) {
            Interval {
                lo: f64::NEG_INFINITY,
                hi: f64::INFINITY,
            }
        } else {
            Interval { lo: 0.0, hi: 0.0 }
        }
    }
}

/// The base function `f` of a general power ratio `f(bx)^a / f(ax)^b`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum BaseFunction {
    /// `f(y) = Gamma(y + shift)`.
    GammaShift { shift: f64 },
    /// `f` given by a finite Stieltjes measure.
    Stieltjes(MeasureRep),
}

impl BaseFunction {
    fn domain(&self) -> Interval {
        match self {
            BaseFunction::GammaShift { shift } => Interval::above(-shift),
            BaseFunction::Stieltjes(_) => Interval::POSITIVE,
        }
    }

    fn ln_value(&self, y: f64) -> Result<f64> {
        match self {
            BaseFunction::GammaShift { shift } => ln_gamma(y + shift),
            BaseFunction::Stieltjes(m) => Ok(m.evaluate(y)?.ln()),
        }
    }

    /// Series of `u -> ln f(m (x0 + u))`.
    fn ln_series(&self, x0: f64, m: f64, order: usize) -> Result<PolySeries> {
        match self {
            BaseFunction::GammaShift { shift } => PolySeries::lngamma_affine(x0, *shift, m, order),
            BaseFunction::Stieltjes(measure) if m == 0.0 => {
                Err(Error::domain("Stieltjes transform", 0.0))
            }
            BaseFunction::Stieltjes(measure) => measure.series_scaled(x0, m, order)?.ln_series(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum FamilySpec {
    /// `[2 sqrt(pi) Gamma(x+1) / Gamma(x+1/2)]^(1/x)` on `(0, inf)`.
    CodingGain,
    /// `[c Gamma(x+a) / Gamma(x+b)]^(1/x)` on `(0, inf)`.
    GeneralRatio { a: f64, b: f64, c: f64 },
    /// `Gamma(x+alpha+1)^(1/(x+alpha)) / Gamma(x+1)^(1/x)`.
    ShiftedRootRatio { alpha: f64 },
    /// `Gamma(x+1)^(1/x) / x * (1 + 1/x)^x` on `(0, inf)`.
    QiBerg,
    /// `Gamma(1+tx)^s / Gamma(1+sx)^t`, `s != t`.
    GstRatio { s: f64, t: f64 },
    /// `f(bx)^a / f(ax)^b`.
    GeneralPowerRatio { a: f64, b: f64, base: BaseFunction },
    /// `[Gamma(beta+t)/Gamma(beta+s) * Gamma(x+s)/Gamma(x+t)]^(1/(x-beta))`.
    HBeta { s: f64, t: f64, beta: f64 },
    /// `[Gamma(alpha+1)/alpha^alpha * x^x/Gamma(x+1)]^(1/(alpha-x))`.
    PAlpha { alpha: f64 },
    /// `(x+y+1)^(-alpha) [Gamma(x+y+1)/Gamma(y+1)]^(1/x)`.
    HAlphaY { alpha: f64, y: f64 },
    /// `[Gamma(x+t)/Gamma(x+s)]^(1/(t-s))`, or `exp(psi(x+s))` when `s = t`.
    PsiRatio { s: f64, t: f64 },
}

fn finite(name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "{name} must be finite, got {v}"
        )))
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "{name} must be positive, got {v}"
        )))
    }
}

/// `ln Gamma(1 + y) / y`, with its limit `psi(1)` at `y = 0`.
fn ln_gamma_root(y: f64) -> Result<f64> {
    if y == 0.0 {
        Ok(-specfun::EULER_GAMMA)
    } else {
        Ok(ln_gamma(1.0 + y)? / y)
    }
}

impl FamilySpec {
    pub fn general_ratio(a: f64, b: f64, c: f64) -> Result<Self> {
        let f = FamilySpec::GeneralRatio { a, b, c };
        f.validate()?;
        Ok(f)
    }

    /// Short kebab-case name, as used in the text form.
    pub fn kind(&self) -> &'static str {
        match self {
            FamilySpec::CodingGain => "coding-gain",
            FamilySpec::GeneralRatio { .. } => "general-ratio",
            FamilySpec::ShiftedRootRatio { .. } => "shifted-root-ratio",
            FamilySpec::QiBerg => "qi-berg",
            FamilySpec::GstRatio { .. } => "gst-ratio",
            FamilySpec::GeneralPowerRatio { .. } => "general-power-ratio",
            FamilySpec::HBeta { .. } => "h-beta",
            FamilySpec::PAlpha { .. } => "p-alpha",
            FamilySpec::HAlphaY { .. } => "h-alpha-y",
            FamilySpec::PsiRatio { .. } => "psi-ratio",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            FamilySpec::CodingGain | FamilySpec::QiBerg => {}
            FamilySpec::GeneralRatio { a, b, c } => {
                positive("a", a)?;
                positive("b", b)?;
                positive("c", c)?;
            }
            FamilySpec::ShiftedRootRatio { alpha } => finite("alpha", alpha)?,
            FamilySpec::GstRatio { s, t } => {
                finite("s", s)?;
                finite("t", t)?;
                if s == t {
                    return Err(Error::InvalidParameter("gst-ratio requires s != t".into()));
                }
            }
            FamilySpec::GeneralPowerRatio { a, b, ref base } => {
                finite("a", a)?;
                finite("b", b)?;
                match base {
                    BaseFunction::GammaShift { shift } => finite("shift", *shift)?,
                    BaseFunction::Stieltjes(m) => m.validate()?,
                }
                if self.domain_unchecked().is_empty() {
                    return Err(Error::InvalidParameter(
                        "a x and b x never lie together in the base function's domain".into(),
                    ));
                }
            }
            FamilySpec::HBeta { s, t, beta } => {
                finite("s", s)?;
                finite("t", t)?;
                finite("beta", beta)?;
                if s == t {
                    return Err(Error::InvalidParameter("h-beta requires s != t".into()));
                }
                if !(beta > -s.min(t)) {
                    return Err(Error::InvalidParameter(format!(
                        "h-beta requires beta > -min(s, t) = {}",
                        -s.min(t)
                    )));
                }
            }
            FamilySpec::PAlpha { alpha } => positive("alpha", alpha)?,
            FamilySpec::HAlphaY { alpha, y } => {
                finite("alpha", alpha)?;
                finite("y", y)?;
                if !(y > -1.0) {
                    return Err(Error::InvalidParameter(format!(
                        "h-alpha-y requires y > -1, got {y}"
                    )));
                }
            }
            FamilySpec::PsiRatio { s, t } => {
                finite("s", s)?;
                finite("t", t)?;
            }
        }
        Ok(())
    }

    fn domain_unchecked(&self) -> Interval {
        match *self {
            FamilySpec::CodingGain
            | FamilySpec::GeneralRatio { .. }
            | FamilySpec::QiBerg
            | FamilySpec::PAlpha { .. } => Interval::POSITIVE,
            FamilySpec::ShiftedRootRatio { alpha } => Interval::above(-1.0 - alpha.min(0.0)),
            FamilySpec::GstRatio { s, t } => {
                let unit = Interval::above(-1.0);
                unit.preimage(s).intersect(unit.preimage(t))
            }
            FamilySpec::GeneralPowerRatio { a, b, ref base } => {
                let d = base.domain();
                d.preimage(a).intersect(d.preimage(b))
            }
            FamilySpec::HBeta { s, t, .. } | FamilySpec::PsiRatio { s, t } => {
                Interval::above(-s.min(t))
            }
            FamilySpec::HAlphaY { y, .. } => Interval::above(-y - 1.0),
        }
    }

    /// Natural domain (open interval).
    pub fn domain(&self) -> Result<Interval> {
        self.validate()?;
        Ok(self.domain_unchecked())
    }

    /// Points of the domain where the defining formula is replaced by its limit value.
    pub fn removable_points(&self) -> Vec<f64> {
        let candidates = match *self {
            FamilySpec::ShiftedRootRatio { alpha } => vec![0.0, -alpha],
            FamilySpec::HBeta { beta, .. } => vec![beta],
            FamilySpec::PAlpha { alpha } => vec![alpha],
            FamilySpec::HAlphaY { .. } => vec![0.0],
            _ => vec![],
        };
        let domain = self.domain_unchecked();
        candidates
            .into_iter()
            .filter(|p| domain.contains(*p))
            .collect()
    }

    fn check_point(&self, x: f64) -> Result<()> {
        if !self.domain()?.contains(x) {
            return Err(Error::domain(self.kind(), x));
        }
        Ok(())
    }

    /// `ln f(x)`, using the explicit limit values at removable points.
    pub fn ln_evaluate(&self, x: f64) -> Result<f64> {
        self.check_point(x)?;
        let v = match *self {
            FamilySpec::CodingGain => {
                let c = 2.0 * std::f64::consts::PI.sqrt();
                (c.ln() + ln_gamma(x + 1.0)? - ln_gamma(x + 0.5)?) / x
            }
            FamilySpec::GeneralRatio { a, b, c } => {
                (c.ln() + ln_gamma(x + a)? - ln_gamma(x + b)?) / x
            }
            FamilySpec::ShiftedRootRatio { alpha } => ln_gamma_root(x + alpha)? - ln_gamma_root(x)?,
            FamilySpec::QiBerg => ln_gamma_root(x)? - x.ln() + x * (1.0 / x).ln_1p(),
            FamilySpec::GstRatio { s, t } => {
                s * ln_gamma(1.0 + t * x)? - t * ln_gamma(1.0 + s * x)?
            }
            FamilySpec::GeneralPowerRatio { a, b, ref base } => {
                a * base.ln_value(b * x)? - b * base.ln_value(a * x)?
            }
            FamilySpec::HBeta { s, t, beta } => {
                if x == beta {
                    polygamma(0, beta + s)? - polygamma(0, beta + t)?
                } else {
                    (ln_gamma(beta + t)? - ln_gamma(beta + s)? + ln_gamma(x + s)?
                        - ln_gamma(x + t)?)
                        / (x - beta)
                }
            }
            FamilySpec::PAlpha { alpha } => {
                if x == alpha {
                    polygamma(0, alpha + 1.0)? - 1.0 - alpha.ln()
                } else {
                    (ln_gamma(alpha + 1.0)? - alpha * alpha.ln() + x * x.ln() - ln_gamma(x + 1.0)?)
                        / (alpha - x)
                }
            }
            FamilySpec::HAlphaY { alpha, y } => {
                if x == 0.0 {
                    -alpha * (y + 1.0).ln() + polygamma(0, y + 1.0)?
                } else {
                    -alpha * (x + y + 1.0).ln() + (ln_gamma(x + y + 1.0)? - ln_gamma(y + 1.0)?) / x
                }
            }
            FamilySpec::PsiRatio { s, t } => {
                if s == t {
                    polygamma(0, x + s)?
                } else {
                    (ln_gamma(x + t)? - ln_gamma(x + s)?) / (t - s)
                }
            }
        };
        Ok(v)
    }

    /// `f(x)`.
    pub fn evaluate(&self, x: f64) -> Result<f64> {
        let v = self.ln_evaluate(x)?.exp();
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Overflow("family value"))
        }
    }

    /// Truncated power series of `ln f` at `x0` to order `order`.
    pub fn ln_series_at(&self, x0: f64, order: usize) -> Result<PolySeries> {
        self.check_point(x0)?;
        for p in self.removable_points() {
            let distance = (x0 - p).abs();
            if distance < REMOVABLE_EXCLUSION {
                return Err(Error::NearRemovablePoint {
                    x: x0,
                    point: p,
                    distance,
                });
            }
        }
        let k = order;
        let x = PolySeries::identity(x0, k)?;
        let lg = |shift: f64| PolySeries::from_lngamma(x0, shift, k);
        match *self {
            FamilySpec::CodingGain => {
                let c = 2.0 * std::f64::consts::PI.sqrt();
                let head = PolySeries::constant(x0, c.ln(), k)?.div(&x)?;
                let num = lg(1.0)?.div(&x)?;
                let den = lg(0.5)?.div(&x)?;
                head.add(&num)?.sub(&den)
            }
            FamilySpec::GeneralRatio { a, b, c } => {
                lg(a)?.sub(&lg(b)?)?.add_constant(c.ln()).div(&x)
            }
            FamilySpec::ShiftedRootRatio { alpha } => {
                let shifted = root_series(x0, alpha, k)?;
                let plain = root_series(x0, 0.0, k)?;
                shifted.sub(&plain)
            }
            FamilySpec::QiBerg => {
                let ln_x = x.ln_series()?;
                let ln_x1 = PolySeries::affine(x0, x0 + 1.0, 1.0, k)?.ln_series()?;
                root_series(x0, 0.0, k)?
                    .sub(&ln_x)?
                    .add(&x.mul(&ln_x1.sub(&ln_x)?)?)
            }
            FamilySpec::GstRatio { s, t } => PolySeries::lngamma_affine(x0, 1.0, t, k)?
                .scale(s)?
                .sub(&PolySeries::lngamma_affine(x0, 1.0, s, k)?.scale(t)?),
            FamilySpec::GeneralPowerRatio { a, b, ref base } => base
                .ln_series(x0, b, k)?
                .scale(a)?
                .sub(&base.ln_series(x0, a, k)?.scale(b)?),
            FamilySpec::HBeta { s, t, beta } => {
                let numerator = lg(s)?.sub(&lg(t)?)?;
                let at_beta = ln_gamma(beta + s)? - ln_gamma(beta + t)?;
                PolySeries::divided_difference(
                    &numerator,
                    beta,
                    at_beta,
                    beta + s.min(t),
                    |m, y| Ok(polygamma(m - 1, y + s)? - polygamma(m - 1, y + t)?),
                )
            }
            FamilySpec::PAlpha { alpha } => {
                // F(x) = x ln x - ln Gamma(x + 1); ln p = -(F(x) - F(alpha)) / (x - alpha)
                let numerator = x.mul(&x.ln_series()?)?.sub(&lg(1.0)?)?;
                let at_alpha = alpha * alpha.ln() - ln_gamma(alpha + 1.0)?;
                let dd =
                    PolySeries::divided_difference(&numerator, alpha, at_alpha, alpha, |m, y| {
                        let gamma_part = polygamma(m - 1, y + 1.0)?;
                        Ok(match m {
                            1 => y.ln() + 1.0 - gamma_part,
                            _ => {
                                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                                let fact = (2..=m - 2).fold(1.0, |acc, i| acc * i as f64);
                                sign * fact / y.powi(m as i32 - 1) - gamma_part
                            }
                        })
                    })?;
                Ok(dd.neg())
            }
            FamilySpec::HAlphaY { alpha, y } => {
                let log_term = PolySeries::affine(x0, x0 + y + 1.0, 1.0, k)?
                    .ln_series()?
                    .scale(-alpha)?;
                let dd = PolySeries::divided_difference(
                    &lg(y + 1.0)?,
                    0.0,
                    ln_gamma(y + 1.0)?,
                    y + 1.0,
                    |m, z| polygamma(m - 1, z + y + 1.0),
                )?;
                log_term.add(&dd)
            }
            FamilySpec::PsiRatio { s, t } => {
                if s == t {
                    return PolySeries::from_digamma(x0, s, k);
                }
                let gap = (t - s).abs();
                if gap < REMOVABLE_EXCLUSION {
                    return Err(Error::InvalidParameter(format!(
                        "psi-ratio with |t - s| = {gap:e} is too close to the removable case s = t"
                    )));
                }
                lg(t)?.sub(&lg(s)?)?.scale(1.0 / (t - s))
            }
        }
    }
}

/// Series of `x -> ln Gamma(x + shift + 1) / (x + shift)` at `x0`.
fn root_series(x0: f64, shift: f64, order: usize) -> Result<PolySeries> {
    let numerator = PolySeries::from_lngamma(x0, shift + 1.0, order)?;
    PolySeries::divided_difference(&numerator, -shift, 0.0, 1.0, |m, y| {
        polygamma(m - 1, y + shift + 1.0)
    })
}

/// Anything the checker can sample: a cataloged family or an explicit Stieltjes measure.
pub trait Analytic: Send + Sync {
    fn domain(&self) -> Result<Interval>;

    fn ln_evaluate(&self, x: f64) -> Result<f64>;

    fn ln_series_at(&self, x0: f64, order: usize) -> Result<PolySeries>;

    /// Series of `f` itself.
    fn series_at(&self, x0: f64, order: usize) -> Result<PolySeries> {
        self.ln_series_at(x0, order)?.exp_series()
    }

    /// `(a, b, c)` when the function is a general ratio `h_{a,b;c}`.
    fn general_ratio(&self) -> Option<(f64, f64, f64)> {
        None
    }
}

impl Analytic for FamilySpec {
    fn domain(&self) -> Result<Interval> {
        FamilySpec::domain(self)
    }

    fn ln_evaluate(&self, x: f64) -> Result<f64> {
        FamilySpec::ln_evaluate(self, x)
    }

    fn ln_series_at(&self, x0: f64, order: usize) -> Result<PolySeries> {
        FamilySpec::ln_series_at(self, x0, order)
    }

    fn general_ratio(&self) -> Option<(f64, f64, f64)> {
        match *self {
            FamilySpec::GeneralRatio { a, b, c } => Some((a, b, c)),
            _ => None,
        }
    }
}

impl Analytic for MeasureRep {
    fn domain(&self) -> Result<Interval> {
        self.validate()?;
        Ok(Interval::POSITIVE)
    }

    fn ln_evaluate(&self, x: f64) -> Result<f64> {
        Ok(self.evaluate(x)?.ln())
    }

    fn ln_series_at(&self, x0: f64, order: usize) -> Result<PolySeries> {
        MeasureRep::ln_series_at(self, x0, order)
    }

    fn series_at(&self, x0: f64, order: usize) -> Result<PolySeries> {
        MeasureRep::series_at(self, x0, order)
    }
}

/// Either a cataloged family or a Stieltjes measure; the unit parsed from text.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Target {
    Family(FamilySpec),
    Measure(MeasureRep),
}

impl Target {
    pub fn evaluate(&self, x: f64) -> Result<f64> {
        match self {
            Target::Family(f) => f.evaluate(x),
            Target::Measure(m) => m.evaluate(x),
        }
    }

    fn inner(&self) -> &dyn Analytic {
        match self {
            Target::Family(f) => f,
            Target::Measure(m) => m,
        }
    }
}

impl Analytic for Target {
    fn domain(&self) -> Result<Interval> {
        self.inner().domain()
    }

    fn ln_evaluate(&self, x: f64) -> Result<f64> {
        self.inner().ln_evaluate(x)
    }

    fn ln_series_at(&self, x0: f64, order: usize) -> Result<PolySeries> {
        self.inner().ln_series_at(x0, order)
    }

    fn series_at(&self, x0: f64, order: usize) -> Result<PolySeries> {
        self.inner().series_at(x0, order)
    }

    fn general_ratio(&self) -> Option<(f64, f64, f64)> {
        self.inner().general_ratio()
    }
}

impl From<FamilySpec> for Target {
    fn from(f: FamilySpec) -> Self {
        Target::Family(f)
    }
}

impl From<MeasureRep> for Target {
    fn from(m: MeasureRep) -> Self {
        Target::Measure(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const TWO_SQRT_PI: f64 = 3.544_907_701_811_032;

    #[test]
    fn coding_gain_at_one() {
        assert_relative_eq!(
            FamilySpec::CodingGain.evaluate(1.0).unwrap(),
            4.0,
            max_relative = 1e-14
        );
        let g = FamilySpec::general_ratio(1.0, 0.5, TWO_SQRT_PI).unwrap();
        assert_relative_eq!(g.evaluate(1.0).unwrap(), 4.0, max_relative = 1e-14);
    }

    #[test]
    fn degenerate_ratio_is_one() {
        let g = FamilySpec::general_ratio(2.5, 2.5, 1.0).unwrap();
        for x in [0.01, 1.0, 30.0] {
            assert_eq!(g.evaluate(x).unwrap(), 1.0);
            let s = g.ln_series_at(x, 10).unwrap();
            assert!(s.coeffs().iter().all(|c| *c == 0.0));
        }
    }

    #[test]
    fn removable_point_values() {
        let e_neg_gamma = (-specfun::EULER_GAMMA).exp();
        let h = FamilySpec::HAlphaY { alpha: 0.0, y: 0.0 };
        assert_relative_eq!(h.evaluate(0.0).unwrap(), e_neg_gamma, max_relative = 1e-14);
        let psi = FamilySpec::PsiRatio { s: 1.0, t: 1.0 };
        assert_relative_eq!(
            psi.evaluate(0.0).unwrap(),
            e_neg_gamma,
            max_relative = 1e-14
        );
        let p = FamilySpec::PAlpha { alpha: 2.0 };
        let want = (specfun::digamma(3.0).unwrap() - 1.0).exp() / 2.0;
        assert_relative_eq!(p.evaluate(2.0).unwrap(), want, max_relative = 1e-14);
        let hb = FamilySpec::HBeta {
            s: 1.0,
            t: 2.0,
            beta: 0.5,
        };
        let want = (specfun::digamma(1.5).unwrap() - specfun::digamma(2.5).unwrap()).exp();
        assert_relative_eq!(hb.evaluate(0.5).unwrap(), want, max_relative = 1e-14);
    }

    #[test]
    fn domains_and_validation() {
        assert_eq!(
            FamilySpec::ShiftedRootRatio { alpha: -0.5 }
                .domain()
                .unwrap(),
            Interval::above(-0.5)
        );
        assert_eq!(
            FamilySpec::ShiftedRootRatio { alpha: 2.0 }
                .domain()
                .unwrap(),
            Interval::above(-1.0)
        );
        let gst = FamilySpec::GstRatio { s: -0.5, t: 2.0 }.domain().unwrap();
        assert_eq!((gst.lo, gst.hi), (-0.5, 2.0));
        assert!(FamilySpec::GstRatio { s: 1.0, t: 1.0 }.validate().is_err());
        assert!(FamilySpec::HBeta {
            s: 1.0,
            t: 2.0,
            beta: -1.0
        }
        .validate()
        .is_err());
        assert!(FamilySpec::PAlpha { alpha: 0.0 }.validate().is_err());
        assert!(FamilySpec::HAlphaY {
            alpha: 1.0,
            y: -1.0
        }
        .validate()
        .is_err());
        assert!(FamilySpec::general_ratio(1.0, 0.0, 1.0).is_err());
        assert!(matches!(
            FamilySpec::CodingGain.evaluate(0.0),
            Err(Error::Domain { .. })
        ));
        assert!(matches!(
            FamilySpec::HAlphaY { alpha: 0.0, y: 0.0 }.evaluate(-1.0),
            Err(Error::Domain { .. })
        ));
        let bad = FamilySpec::GeneralPowerRatio {
            a: 0.0,
            b: 1.0,
            base: BaseFunction::Stieltjes(MeasureRep::new(1.0, 0.0, vec![]).unwrap()),
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn series_refuses_points_near_removable() {
        let p = FamilySpec::PAlpha { alpha: 1.0 };
        assert!(matches!(
            p.ln_series_at(1.0005, 4),
            Err(Error::NearRemovablePoint { .. })
        ));
        assert!(p.ln_series_at(1.002, 4).is_ok());
        let psi = FamilySpec::PsiRatio { s: 1.0, t: 1.0005 };
        assert!(matches!(
            psi.ln_series_at(1.0, 3),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn coding_gain_matches_general_ratio_series() {
        let g = FamilySpec::general_ratio(1.0, 0.5, TWO_SQRT_PI).unwrap();
        let a = FamilySpec::CodingGain.ln_series_at(2.0, 10).unwrap();
        let b = g.ln_series_at(2.0, 10).unwrap();
        for (x, y) in a.coeffs().iter().zip(b.coeffs()) {
            assert_relative_eq!(x, y, max_relative = 1e-13);
        }
    }

    #[test]
    fn series_constant_term_is_log_value() {
        let families = [
            FamilySpec::CodingGain,
            FamilySpec::ShiftedRootRatio { alpha: 0.7 },
            FamilySpec::QiBerg,
            FamilySpec::GstRatio { s: 0.5, t: 1.5 },
            FamilySpec::HBeta {
                s: 0.5,
                t: 1.5,
                beta: 2.0,
            },
            FamilySpec::PAlpha { alpha: 1.5 },
            FamilySpec::HAlphaY { alpha: 0.3, y: 0.5 },
            FamilySpec::PsiRatio { s: 0.5, t: 2.0 },
            FamilySpec::PsiRatio { s: 0.5, t: 0.5 },
            FamilySpec::GeneralPowerRatio {
                a: 1.0,
                b: 2.0,
                base: BaseFunction::GammaShift { shift: 1.0 },
            },
        ];
        for f in &families {
            for x in [0.3, 1.7, 6.0] {
                let s = f.ln_series_at(x, 6).unwrap();
                assert_relative_eq!(
                    s.coeffs()[0],
                    f.ln_evaluate(x).unwrap(),
                    max_relative = 1e-12,
                    epsilon = 1e-14
                );
            }
        }
    }
}
