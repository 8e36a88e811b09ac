//! Canonical text form of families, e.g. `general-ratio:a=1,b=0.5,c=2sqrtpi`.
//!
//! Numbers are decimal literals or one of the named constants `pi`, `sqrtpi`,
//! `2sqrtpi` (optionally negated). Stieltjes atoms are written `s:w` and separated
//! by `;` (or `|`), e.g. `stieltjes:a=0.5,b=0.1,atoms=2:1;7:3`.

use std::fmt;
use std::str::FromStr;

use super::{BaseFunction, FamilySpec, MeasureRep, Target};
use crate::error::{Error, Result};

/// Parses a real number or named constant.
pub fn parse_real(text: &str) -> Result<f64> {
    let t = text.trim();
    let (sign, body) = match t.strip_prefix('-') {
        Some(rest) => (-1.0, rest),
        None => (1.0, t),
    };
    let sqrt_pi = std::f64::consts::PI.sqrt();
    let v = match body {
        "pi" => std::f64::consts::PI,
        "sqrtpi" => sqrt_pi,
        "2sqrtpi" => 2.0 * sqrt_pi,
        _ => {
            return t
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| {
                    Error::parse(text, "expected a finite number or pi, sqrtpi, 2sqrtpi")
                })
        }
    };
    Ok(sign * v)
}

fn parse_atoms(text: &str) -> Result<Vec<(f64, f64)>> {
    text.split([';', '|'])
        .filter(|s| !s.trim().is_empty())
        .map(|pair| {
            let (s, w) = pair
                .split_once(':')
                .ok_or_else(|| Error::parse(pair, "atoms are written s:w"))?;
            Ok((parse_real(s)?, parse_real(w)?))
        })
        .collect()
}

fn format_atoms(atoms: &[(f64, f64)]) -> String {
    atoms
        .iter()
        .map(|(s, w)| format!("{s}:{w}"))
        .collect::<Vec<_>>()
        .join(";")
}

/// A family text split into its kind and raw `key=value` pairs, not yet validated.
///
/// Sweeps use this to substitute one free parameter before building the family.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyTemplate {
    pub kind: String,
    pub params: Vec<(String, String)>,
}

impl FamilyTemplate {
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let (kind, rest) = match text.split_once(':') {
            Some((k, r)) => (k, r),
            None => (text, ""),
        };
        if kind.is_empty() {
            return Err(Error::parse(text, "missing family name"));
        }
        let mut params = Vec::new();
        for item in rest.split(',').filter(|s| !s.trim().is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| Error::parse(item, "parameters are written key=value"))?;
            let key = k.trim().to_string();
            if params.iter().any(|(existing, _)| *existing == key) {
                return Err(Error::parse(text, format!("duplicate parameter {key}")));
            }
            params.push((key, v.trim().to_string()));
        }
        Ok(FamilyTemplate {
            kind: kind.trim().to_string(),
            params,
        })
    }

    /// Sets (or overrides) one parameter.
    pub fn with(&self, key: &str, value: f64) -> Self {
        let mut out = self.clone();
        let formatted = format!("{value}");
        match out.params.iter_mut().find(|(k, _)| k == key) {
            Some(slot) => slot.1 = formatted,
            None => out.params.push((key.to_string(), formatted)),
        }
        out
    }

    pub fn build(&self) -> Result<Target> {
        let mut reader = Params {
            source: self,
            used: Vec::new(),
        };
        let target = match self.kind.as_str() {
            "coding-gain" => FamilySpec::CodingGain.into(),
            "qi-berg" => FamilySpec::QiBerg.into(),
            "general-ratio" => FamilySpec::GeneralRatio {
                a: reader.real("a")?,
                b: reader.real("b")?,
                c: reader.real("c")?,
            }
            .into(),
            "shifted-root-ratio" => FamilySpec::ShiftedRootRatio {
                alpha: reader.real("alpha")?,
            }
            .into(),
            "gst-ratio" => FamilySpec::GstRatio {
                s: reader.real("s")?,
                t: reader.real("t")?,
            }
            .into(),
            "general-power-ratio" => {
                let a = reader.real("a")?;
                let b = reader.real("b")?;
                let base = match reader.raw("base").unwrap_or("gamma") {
                    "gamma" => BaseFunction::GammaShift {
                        shift: reader.real_or("shift", 1.0)?,
                    },
                    "stieltjes" => BaseFunction::Stieltjes(MeasureRep {
                        a: reader.real_or("ma", 0.0)?,
                        b: reader.real_or("mb", 0.0)?,
                        atoms: parse_atoms(reader.raw("atoms").unwrap_or(""))?,
                    }),
                    other => {
                        return Err(Error::parse(other, "base must be gamma or stieltjes"));
                    }
                };
                FamilySpec::GeneralPowerRatio { a, b, base }.into()
            }
            "h-beta" => FamilySpec::HBeta {
                s: reader.real("s")?,
                t: reader.real("t")?,
                beta: reader.real("beta")?,
            }
            .into(),
            "p-alpha" => FamilySpec::PAlpha {
                alpha: reader.real("alpha")?,
            }
            .into(),
            "h-alpha-y" => FamilySpec::HAlphaY {
                alpha: reader.real("alpha")?,
                y: reader.real("y")?,
            }
            .into(),
            "psi-ratio" => FamilySpec::PsiRatio {
                s: reader.real("s")?,
                t: reader.real("t")?,
            }
            .into(),
            "stieltjes" => MeasureRep {
                a: reader.real_or("a", 0.0)?,
                b: reader.real_or("b", 0.0)?,
                atoms: parse_atoms(reader.raw("atoms").unwrap_or(""))?,
            }
            .into(),
            other => return Err(Error::parse(other, "unknown family")),
        };
        reader.finish()?;
        match &target {
            Target::Family(f) => f.validate()?,
            Target::Measure(m) => m.validate()?,
        }
        Ok(target)
    }
}

struct Params<'a> {
    source: &'a FamilyTemplate,
    used: Vec<&'a str>,
}

impl<'a> Params<'a> {
    fn raw(&mut self, key: &'a str) -> Option<&'a str> {
        let found = self
            .source
            .params
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str());
        if found.is_some() {
            self.used.push(key);
        }
        found
    }

    fn real(&mut self, key: &'a str) -> Result<f64> {
        let kind = &self.source.kind;
        let v = self
            .raw(key)
            .ok_or_else(|| Error::parse(kind, format!("missing parameter {key}")))?;
        parse_real(v)
    }

    fn real_or(&mut self, key: &'a str, default: f64) -> Result<f64> {
        match self.raw(key) {
            Some(v) => parse_real(v),
            None => Ok(default),
        }
    }

    fn finish(self) -> Result<()> {
        for (k, _) in &self.source.params {
            if !self.used.contains(&k.as_str()) {
                return Err(Error::parse(
                    k,
                    format!("unknown parameter for {}", self.source.kind),
                ));
            }
        }
        Ok(())
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FamilyTemplate::parse(s)?.build()
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.parse::<Target>()? {
            Target::Family(f) => Ok(f),
            Target::Measure(_) => Err(Error::parse(
                s,
                "expected a family, found a Stieltjes measure",
            )),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = self.kind();
        match self {
            FamilySpec::CodingGain | FamilySpec::QiBerg => write!(f, "{kind}"),
            FamilySpec::GeneralRatio { a, b, c } => write!(f, "{kind}:a={a},b={b},c={c}"),
            FamilySpec::ShiftedRootRatio { alpha } | FamilySpec::PAlpha { alpha } => {
                write!(f, "{kind}:alpha={alpha}")
            }
            FamilySpec::GstRatio { s, t } | FamilySpec::PsiRatio { s, t } => {
                write!(f, "{kind}:s={s},t={t}")
            }
            FamilySpec::GeneralPowerRatio { a, b, base } => match base {
                BaseFunction::GammaShift { shift } => {
                    write!(f, "{kind}:a={a},b={b},base=gamma,shift={shift}")
                }
                BaseFunction::Stieltjes(m) => write!(
                    f,
                    "{kind}:a={a},b={b},base=stieltjes,ma={},mb={},atoms={}",
                    m.a,
                    m.b,
                    format_atoms(&m.atoms)
                ),
            },
            FamilySpec::HBeta { s, t, beta } => write!(f, "{kind}:s={s},t={t},beta={beta}"),
            FamilySpec::HAlphaY { alpha, y } => write!(f, "{kind}:alpha={alpha},y={y}"),
        }
    }
}

impl fmt::Display for MeasureRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "stieltjes:a={},b={},atoms={}",
            self.a,
            self.b,
            format_atoms(&self.atoms)
        )
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Family(x) => x.fmt(f),
            Target::Measure(m) => m.fmt(f),
        }
    }
}

impl fmt::Display for FamilyTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.kind)?;
        for (i, (k, v)) in self.params.iter().enumerate() {
            write!(f, "{}{k}={v}", if i == 0 { ':' } else { ',' })?;
        }
        Ok(())
    }
}
