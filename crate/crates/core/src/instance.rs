//! Two-variable inequality systems and SM2 instances.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedMul, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::{GroundSet, SubmodularOracle};

/// Structural class of a two-variable inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstraintClass {
    /// Coefficients of strictly opposite signs.
    Monotone,
    /// Both coefficients nonzero with the same sign.
    NonMonotone,
    /// A single active variable.
    Singleton,
}

/// `a·x_i + b·x_j >= c` with integer coefficients.
///
/// Rational input is cleared to integers by [`TwoVarConstraint::from_ratios`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwoVarConstraint {
    pub i: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
    pub a: i64,
    #[serde(default)]
    pub b: i64,
    pub c: i64,
}

impl TwoVarConstraint {
    pub fn new(i: usize, a: i64, j: usize, b: i64, c: i64) -> Result<Self> {
        if i == j {
            return Err(Error::InvalidConstraint(format!(
                "both variables are x_{i}"
            )));
        }
        if a == 0 && b == 0 {
            return Err(Error::InvalidConstraint(
                "both coefficients are zero".into(),
            ));
        }
        Ok(TwoVarConstraint {
            i,
            j: Some(j),
            a,
            b,
            c,
        })
    }

    pub fn single(i: usize, a: i64, c: i64) -> Result<Self> {
        if a == 0 {
            return Err(Error::InvalidConstraint("coefficient is zero".into()));
        }
        Ok(TwoVarConstraint {
            i,
            j: None,
            a,
            b: 0,
            c,
        })
    }

    /// Build from rational coefficients, multiplying through by the least
    /// common denominator.
    pub fn from_ratios(
        i: usize,
        a: Ratio<i64>,
        j: Option<(usize, Ratio<i64>)>,
        c: Ratio<i64>,
    ) -> Result<Self> {
        let b = j.map(|(_, b)| b).unwrap_or_else(Ratio::zero);
        let lcm = a.denom().lcm(b.denom()).lcm(c.denom());
        let scale = Ratio::from_integer(lcm);
        let clear = |r: Ratio<i64>| -> Result<i64> {
            let v = r.checked_mul(&scale).ok_or_else(|| {
                Error::InvalidConstraint("coefficient overflow while clearing denominators".into())
            })?;
            debug_assert!(v.is_integer());
            Ok(v.to_integer())
        };
        let (a, b, c) = (clear(a)?, clear(b)?, clear(c)?);
        match j {
            Some((j, _)) => TwoVarConstraint::new(i, a, j, b, c),
            None => TwoVarConstraint::single(i, a, c),
        }
    }

    pub fn classify(&self) -> ConstraintClass {
        classify(self)
    }

    /// The one active `(variable, coefficient)` when the constraint is a
    /// singleton.
    pub fn active_single(&self) -> Option<(usize, i64)> {
        match (self.j, self.a, self.b) {
            (None, a, _) => Some((self.i, a)),
            (Some(j), 0, b) => Some((j, b)),
            (Some(_), a, 0) => Some((self.i, a)),
            _ => None,
        }
    }

    pub fn lhs(&self, x: &[u32]) -> i128 {
        let mut v = self.a as i128 * x[self.i] as i128;
        if let Some(j) = self.j {
            v += self.b as i128 * x[j] as i128;
        }
        v
    }

    pub fn satisfied_by(&self, x: &[u32]) -> bool {
        self.lhs(x) >= self.c as i128
    }

    /// Same test for signed points (used by the monotonized system).
    pub fn satisfied_by_signed(&self, x: &[i64]) -> bool {
        let mut v = self.a as i128 * x[self.i] as i128;
        if let Some(j) = self.j {
            v += self.b as i128 * x[j] as i128;
        }
        v >= self.c as i128
    }

    pub fn max_index(&self) -> usize {
        self.j.map_or(self.i, |j| j.max(self.i))
    }
}

/// `Singleton` when `j` is absent or exactly one coefficient is zero,
/// `Monotone` when `a·b < 0`, `NonMonotone` otherwise.
pub fn classify(c: &TwoVarConstraint) -> ConstraintClass {
    if c.j.is_none() || c.a == 0 || c.b == 0 {
        ConstraintClass::Singleton
    } else if c.a.signum() != c.b.signum() {
        ConstraintClass::Monotone
    } else {
        ConstraintClass::NonMonotone
    }
}

/// `min f(x)` subject to two-variable inequalities over `0 <= x <= u`.
#[derive(Debug, Clone)]
pub struct Sm2Instance {
    pub name: Option<String>,
    pub ground: GroundSet,
    pub constraints: Vec<TwoVarConstraint>,
    pub objective: SubmodularOracle,
    /// Declared round-up property of the constraint system.
    pub roundup_declared: bool,
}

impl Sm2Instance {
    pub fn new(
        ground: GroundSet,
        constraints: Vec<TwoVarConstraint>,
        objective: SubmodularOracle,
        roundup_declared: bool,
    ) -> Result<Self> {
        if objective.ground() != &ground {
            return Err(Error::dims(
                "objective ground set",
                ground.len(),
                objective.ground().len(),
            ));
        }
        for c in &constraints {
            if c.max_index() >= ground.len() {
                return Err(Error::IndexOutOfRange {
                    what: "constraint variable",
                    index: c.max_index(),
                    len: ground.len(),
                });
            }
            if c.a == 0 && c.b == 0 {
                return Err(Error::InvalidConstraint(
                    "both coefficients are zero".into(),
                ));
            }
        }
        Ok(Sm2Instance {
            name: None,
            ground,
            constraints,
            objective,
            roundup_declared,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn n(&self) -> usize {
        self.ground.len()
    }

    pub fn is_feasible(&self, x: &[u32]) -> bool {
        self.ground.contains(x) && self.constraints.iter().all(|c| c.satisfied_by(x))
    }

    pub fn first_violation(&self, x: &[u32]) -> Option<usize> {
        self.constraints.iter().position(|c| !c.satisfied_by(x))
    }

    /// True when every constraint is monotone or a singleton.
    pub fn is_monotone_system(&self) -> bool {
        self.constraints
            .iter()
            .all(|c| c.classify() != ConstraintClass::NonMonotone)
    }
}

/// Parse `"3"`, `"-1/2"` or `"0.25"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Ratio<i64>> {
    let err = |m: &str| Error::Parse {
        context: format!("number {s:?}"),
        message: m.to_string(),
    };
    let t = s.trim();
    if let Some((num, den)) = t.split_once('/') {
        let num: i64 = num.trim().parse().map_err(|_| err("bad numerator"))?;
        let den: i64 = den.trim().parse().map_err(|_| err("bad denominator"))?;
        if den == 0 {
            return Err(err("zero denominator"));
        }
        return Ok(Ratio::new(num, den));
    }
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(p) => (
            &t[..p],
            t[p + 1..].parse::<i32>().map_err(|_| err("bad exponent"))?,
        ),
        None => (t, 0),
    };
    let negative = mantissa.starts_with('-');
    let digits = mantissa.trim_start_matches(['-', '+']);
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err("empty number"));
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|ch| ch.is_ascii_digit())
    {
        return Err(err("not a decimal number"));
    }
    let all: String = format!("{int_part}{frac_part}");
    let mut num: i64 = if all.is_empty() {
        0
    } else {
        all.parse().map_err(|_| err("too many digits"))?
    };
    let scale_exp = exp - frac_part.len() as i32;
    let mut den: i64 = 1;
    let pow = 10i64
        .checked_pow(scale_exp.unsigned_abs())
        .ok_or_else(|| err("exponent out of range"))?;
    if scale_exp >= 0 {
        num = num
            .checked_mul(pow)
            .ok_or_else(|| err("value out of range"))?;
    } else {
        den = pow;
    }
    let r = Ratio::new(num, den);
    Ok(if negative { -r.abs() } else { r })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classification_examples() {
        let vc = TwoVarConstraint::new(0, 1, 1, 1, 1).unwrap();
        assert_eq!(vc.classify(), ConstraintClass::NonMonotone);
        let mono = TwoVarConstraint::new(0, 1, 1, -1, 0).unwrap();
        assert_eq!(mono.classify(), ConstraintClass::Monotone);
        let single = TwoVarConstraint::new(0, 2, 1, 0, 1).unwrap();
        assert_eq!(single.classify(), ConstraintClass::Singleton);
        assert_eq!(single.active_single(), Some((0, 2)));
        assert_eq!(
            TwoVarConstraint::single(3, -1, 0).unwrap().classify(),
            ConstraintClass::Singleton
        );
    }

    #[test]
    fn invalid_constraints() {
        assert!(TwoVarConstraint::new(1, 1, 1, 1, 1).is_err());
        assert!(TwoVarConstraint::new(0, 0, 1, 0, 1).is_err());
        assert!(TwoVarConstraint::single(0, 0, 1).is_err());
    }

    #[test]
    fn ratios_are_cleared() {
        let c = TwoVarConstraint::from_ratios(
            0,
            Ratio::new(1, 2),
            Some((1, Ratio::new(-2, 3))),
            Ratio::new(1, 4),
        )
        .unwrap();
        assert_eq!((c.a, c.b, c.c), (6, -8, 3));
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("3").unwrap(), Ratio::from_integer(3));
        assert_eq!(parse_rational("-1/2").unwrap(), Ratio::new(-1, 2));
        assert_eq!(parse_rational("0.25").unwrap(), Ratio::new(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), Ratio::new(-3, 2));
        assert_eq!(parse_rational("2e2").unwrap(), Ratio::from_integer(200));
        assert_eq!(parse_rational("1.5e-1").unwrap(), Ratio::new(3, 20));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
    }
}
