//! Rotation angles as rational multiples of pi, with optional opaque symbols.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Neg, Sub};
use core::str::FromStr;

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

use crate::error::CoreError;

/// `pi * coeff + sum(k * symbol)`, with `coeff` kept in `[0, 2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Angle {
    coeff: Rational64,
    symbols: Vec<(String, i64)>,
}

fn wrap(r: Rational64) -> Rational64 {
    let two = Rational64::from_integer(2);
    let mut q = r % two;
    if q.is_negative() {
        q += two;
    }
    q
}

impl Angle {
    pub fn zero() -> Self {
        Angle {
            coeff: Rational64::zero(),
            symbols: Vec::new(),
        }
    }

    /// `num/den * pi`.
    pub fn pi_frac(num: i64, den: i64) -> Self {
        Self::from_ratio(Rational64::new(num, den))
    }

    pub fn from_ratio(r: Rational64) -> Self {
        Angle {
            coeff: wrap(r),
            symbols: Vec::new(),
        }
    }

    pub fn pi() -> Self {
        Self::pi_frac(1, 1)
    }

    pub fn symbol(name: &str) -> Self {
        Angle {
            coeff: Rational64::zero(),
            symbols: alloc::vec![(name.to_string(), 1)],
        }
    }

    /// Multiple of pi, if the angle has no symbolic part.
    pub fn ratio(&self) -> Option<Rational64> {
        self.symbols.is_empty().then_some(self.coeff)
    }

    pub fn is_numeric(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.symbols.is_empty() && self.coeff.is_zero()
    }

    /// Numeric multiple of pi/2.
    pub fn is_clifford(&self) -> bool {
        self.symbols.is_empty() && (self.coeff * 2).is_integer()
    }

    pub fn is_pauli(&self) -> bool {
        self.symbols.is_empty() && self.coeff.is_integer()
    }

    pub fn radians(&self) -> Result<f64, CoreError> {
        if let Some((s, _)) = self.symbols.first() {
            return Err(CoreError::OpaqueAngle(s.clone()));
        }
        let r = self.coeff;
        Ok(*r.numer() as f64 / *r.denom() as f64 * core::f64::consts::PI)
    }

    pub fn symbols(&self) -> &[(String, i64)] {
        &self.symbols
    }

    fn normalized(mut self) -> Self {
        self.symbols.sort();
        let mut out: Vec<(String, i64)> = Vec::with_capacity(self.symbols.len());
        for (s, k) in self.symbols {
            match out.last_mut() {
                Some((t, j)) if *t == s => *j += k,
                _ => out.push((s, k)),
            }
        }
        out.retain(|(_, k)| *k != 0);
        Angle {
            coeff: wrap(self.coeff),
            symbols: out,
        }
    }
}

impl Default for Angle {
    fn default() -> Self {
        Angle::zero()
    }
}

impl Add for Angle {
    type Output = Angle;
    fn add(mut self, rhs: Angle) -> Angle {
        self.coeff += rhs.coeff;
        self.symbols.extend(rhs.symbols);
        self.normalized()
    }
}

impl AddAssign for Angle {
    fn add_assign(&mut self, rhs: Angle) {
        *self = core::mem::take(self) + rhs;
    }
}

impl Neg for Angle {
    type Output = Angle;
    fn neg(self) -> Angle {
        Angle {
            coeff: wrap(-self.coeff),
            symbols: self.symbols.into_iter().map(|(s, k)| (s, -k)).collect(),
        }
    }
}

impl Sub for Angle {
    type Output = Angle;
    fn sub(self, rhs: Angle) -> Angle {
        self + (-rhs)
    }
}

/// Written as e.g. `1/4`, `3/2`, `theta`, `-theta+1/2` (units of pi).
impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (s, k) in &self.symbols {
            if *k < 0 {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            if k.abs() != 1 {
                write!(f, "{}*", k.abs())?;
            }
            f.write_str(s)?;
            first = false;
        }
        if !self.coeff.is_zero() || first {
            if !first {
                f.write_str("+")?;
            }
            if self.coeff.denom().is_one() {
                write!(f, "{}", self.coeff.numer())?;
            } else {
                write!(f, "{}/{}", self.coeff.numer(), self.coeff.denom())?;
            }
        }
        Ok(())
    }
}

impl FromStr for Angle {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err("empty angle".into());
        }
        let mut acc = Angle::zero();
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, c) in s.char_indices() {
            if (c == '+' || c == '-') && i > start {
                terms.push(&s[start..i]);
                start = i;
            }
        }
        terms.push(&s[start..]);
        for t in terms {
            let (neg, body) = match t.strip_prefix('-') {
                Some(b) => (true, b),
                None => (false, t.strip_prefix('+').unwrap_or(t)),
            };
            let term = parse_term(body).ok_or_else(|| alloc::format!("bad angle term `{t}`"))?;
            acc += if neg { -term } else { term };
        }
        Ok(acc)
    }
}

fn parse_term(t: &str) -> Option<Angle> {
    if t.is_empty() {
        return None;
    }
    let t = t.strip_suffix("pi").map(|x| x.strip_suffix('*').unwrap_or(x)).unwrap_or(t);
    let t = if t.is_empty() { "1" } else { t };
    if t.chars().next()?.is_ascii_digit() {
        if let Some((k, sym)) = t.split_once('*') {
            let k: i64 = k.parse().ok()?;
            if !valid_symbol(sym) {
                return None;
            }
            return Some(Angle {
                coeff: Rational64::zero(),
                symbols: alloc::vec![(sym.to_string(), k)],
            }
            .normalized());
        }
        let r = match t.split_once('/') {
            Some((n, d)) => {
                let d: i64 = d.parse().ok()?;
                if d == 0 {
                    return None;
                }
                Rational64::new(n.parse().ok()?, d)
            }
            None => Rational64::from_integer(t.parse().ok()?),
        };
        Some(Angle::from_ratio(r))
    } else if valid_symbol(t) {
        Some(Angle::symbol(t))
    } else {
        None
    }
}

fn valid_symbol(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wraps_mod_two() {
        assert_eq!(Angle::pi_frac(9, 4), Angle::pi_frac(1, 4));
        assert_eq!(Angle::pi_frac(-1, 4), Angle::pi_frac(7, 4));
        assert_eq!(Angle::pi_frac(1, 2) + Angle::pi_frac(3, 2), Angle::zero());
    }

    #[test]
    fn symbols_cancel() {
        let a = Angle::symbol("t") + Angle::pi_frac(1, 4);
        let b = a.clone() - Angle::symbol("t");
        assert_eq!(b, Angle::pi_frac(1, 4));
        assert!(a.radians().is_err());
    }

    #[test]
    fn parse_and_print() {
        for s in ["1/4", "0", "3/2", "t", "-t+1/4", "2*x-y+1"] {
            let a: Angle = s.parse().unwrap();
            let back: Angle = a.to_string().parse().unwrap();
            assert_eq!(a, back, "{s}");
        }
        assert_eq!("-1/4".parse::<Angle>().unwrap(), Angle::pi_frac(7, 4));
        assert_eq!("pi/4".parse::<Angle>().ok(), None);
        assert_eq!("1/4pi".parse::<Angle>().unwrap(), Angle::pi_frac(1, 4));
    }

    #[test]
    fn clifford_classes() {
        assert!(Angle::pi_frac(1, 2).is_clifford());
        assert!(!Angle::pi_frac(1, 4).is_clifford());
        assert!(Angle::pi().is_pauli());
        assert!(!Angle::symbol("a").is_clifford());
    }
}
