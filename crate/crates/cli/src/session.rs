//! Numeric bindings shared by the subcommands: `q`, `θ`, torus models.

use qlab_core::crossed::TorusModel;
use qlab_core::replab::ThetaSpec;
use qlab_core::scalar::parse_rational;
use qlab_core::Rational;

use crate::CliError;

/// `q` as given on the command line: exact when it is a fraction or a terminating decimal.
#[derive(Clone, Debug, PartialEq)]
pub struct QValue {
    pub exact: Rational,
    pub value: f64,
}

impl QValue {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let exact = parse_rational(text).ok_or_else(|| CliError::Usage(format!("--q: `{text}` is not a number")))?;
        let value = num_traits::ToPrimitive::to_f64(&exact).unwrap_or(f64::NAN);
        if !(value.abs() > 0.0 && value.abs() < 1.0) {
            return Err(CliError::Usage(format!("--q must satisfy 0 < |q| < 1, got {text}")));
        }
        Ok(Self { exact, value })
    }
}

/// `θ` as given: `L/N`, a decimal, or `golden`.
#[derive(Clone, Debug, PartialEq)]
pub enum Theta {
    Rational { numerator: i64, denominator: u64 },
    Real(f64),
}

pub const GOLDEN: &str = "golden";

impl Theta {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let t = text.trim();
        if t.eq_ignore_ascii_case(GOLDEN) {
            return Ok(Theta::Real((5f64.sqrt() - 1.0) / 2.0));
        }
        let bad = || CliError::Usage(format!("--theta: expected L/N, a decimal or `golden`, got `{text}`"));
        if let Some((l, n)) = t.split_once('/') {
            let l: i64 = l.trim().parse().map_err(|_| bad())?;
            let n: u64 = n.trim().parse().map_err(|_| bad())?;
            if n == 0 {
                return Err(bad());
            }
            let g = num_integer::gcd(l.unsigned_abs(), n);
            return Ok(Theta::Rational { numerator: l / g as i64, denominator: n / g });
        }
        let v: f64 = t.parse().map_err(|_| bad())?;
        if !v.is_finite() {
            return Err(bad());
        }
        Ok(Theta::Real(v))
    }

    pub fn value(&self) -> f64 {
        match *self {
            Theta::Rational { numerator, denominator } => numerator as f64 / denominator as f64,
            Theta::Real(v) => v,
        }
    }

    pub fn spec(&self) -> ThetaSpec {
        match *self {
            Theta::Rational { numerator, denominator } => ThetaSpec::Rational { numerator, denominator },
            Theta::Real(v) => ThetaSpec::Real(v),
        }
    }

    /// Continued-fraction convergent `L/N` of `θ mod 1` with the largest `N ≤ max_den`.
    pub fn convergent(&self, max_den: u64) -> (i64, u64) {
        if let Theta::Rational { numerator, denominator } = *self {
            if denominator <= max_den {
                return (numerator, denominator);
            }
        }
        let x = self.value().rem_euclid(1.0);
        let (mut p0, mut q0, mut p1, mut q1) = (0i64, 1u64, 1i64, 0u64);
        let mut r = x;
        loop {
            let a = r.floor();
            let (p2, q2) = (a as i64 * p1 + p0, a as u64 * q1 + q0);
            if q2 > max_den {
                break;
            }
            (p0, q0, p1, q1) = (p1, q1, p2, q2);
            let frac = r - a;
            if frac < 1e-12 {
                break;
            }
            r = 1.0 / frac;
        }
        if q1 == 0 {
            (0, 1)
        } else {
            (p1, q1)
        }
    }
}

/// `N:L` (clock of size `N`, `θ = L/N`) or `shift:θ:J` (cyclic window `[−J, J]`).
pub fn parse_model(text: &str) -> Result<TorusModel, CliError> {
    let bad = || CliError::Usage(format!("torus model: expected N:L or shift:THETA:J, got `{text}`"));
    let parts: Vec<&str> = text.split(':').map(str::trim).collect();
    let model = match parts.as_slice() {
        ["shift", theta, window] => {
            let theta = Theta::parse(theta)?.value();
            TorusModel::truncated_shift(theta, window.parse().map_err(|_| bad())?)
        }
        [n, l] => TorusModel::clock(n.parse().map_err(|_| bad())?, l.parse().map_err(|_| bad())?),
        _ => return Err(bad()),
    };
    model.map_err(CliError::from)
}

#[cfg(test)]
mod tests {
    use super::*;
    use qlab_core::scalar::rat;

    #[test]
    fn q_values() {
        assert_eq!(QValue::parse("1/2").unwrap().exact, rat(1, 2));
        assert_eq!(QValue::parse("-0.5").unwrap().value, -0.5);
        assert!(QValue::parse("1").is_err());
        assert!(QValue::parse("0").is_err());
        assert!(QValue::parse("x").is_err());
    }

    #[test]
    fn thetas() {
        assert_eq!(Theta::parse("2/4").unwrap(), Theta::Rational { numerator: 1, denominator: 2 });
        let g = Theta::parse("golden").unwrap();
        assert_eq!(g.convergent(100), (55, 89));
        assert_eq!(g.convergent(200), (89, 144));
        assert_eq!(Theta::parse("0.25").unwrap().convergent(100), (1, 4));
        assert!(Theta::parse("1/0").is_err());
        assert!(Theta::parse("pi").is_err());
    }

    #[test]
    fn models() {
        assert_eq!(parse_model("89:55").unwrap(), TorusModel::clock(89, 55).unwrap());
        assert!(matches!(parse_model("shift:golden:20").unwrap(), TorusModel::TruncatedShift { window: 20, .. }));
        assert!(parse_model("4:2").is_err());
        assert!(parse_model("4").is_err());
    }
}
