use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Serialize, Serializer};

/// Integer Laurent polynomial in one variable `A`. Zero coefficients are never
/// stored.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Laurent {
    terms: BTreeMap<i32, i64>,
}

impl Laurent {
    pub fn zero() -> Laurent {
        Laurent::default()
    }

    pub fn one() -> Laurent {
        Laurent::monomial(1, 0)
    }

    /// `c * A^e`.
    pub fn monomial(c: i64, e: i32) -> Laurent {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(e, c);
        }
        Laurent { terms }
    }

    /// The loop value `-A^2 - A^-2`.
    pub fn delta() -> Laurent {
        Laurent::from_terms([(2, -1), (-2, -1)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i32, i64)>) -> Laurent {
        let mut p = Laurent::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: i32, c: i64) {
        if c == 0 {
            return;
        }
        let slot = self.terms.entry(e).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: i32) -> i64 {
        self.terms.get(&e).copied().unwrap_or(0)
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// Multiplies by `A^k`.
    pub fn shift(&self, k: i32) -> Laurent {
        Laurent {
            terms: self.terms.iter().map(|(&e, &c)| (e + k, c)).collect(),
        }
    }

    pub fn scale(&self, s: i64) -> Laurent {
        Laurent::from_terms(self.terms().map(|(e, c)| (e, c * s)))
    }

    /// Substitutes `A -> A^-1`.
    pub fn invert(&self) -> Laurent {
        Laurent {
            terms: self.terms.iter().map(|(&e, &c)| (-e, c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Laurent {
        let mut out = Laurent::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Exact division by the loop value; `None` if it does not divide.
    pub fn div_delta(&self) -> Option<Laurent> {
        // P = -A^-2 (1 + A^4) Q, so Q = -A^2 P / (1 + A^4).
        let p = self.shift(2).scale(-1);
        let (lo, hi) = match (p.min_exp(), p.max_exp()) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => return Some(Laurent::zero()),
        };
        let mut q: BTreeMap<i32, i64> = BTreeMap::new();
        for e in lo..=hi - 4 {
            let v = p.coeff(e) - q.get(&(e - 4)).copied().unwrap_or(0);
            if v != 0 {
                q.insert(e, v);
            }
        }
        for e in hi - 3..=hi {
            if p.coeff(e) != q.get(&(e - 4)).copied().unwrap_or(0) {
                return None;
            }
        }
        Some(Laurent { terms: q })
    }
}

impl Ord for Laurent {
    /// Orders by the ascending term list, for use as a deterministic
    /// minimum.
    fn cmp(&self, other: &Self) -> Ordering {
        self.terms().cmp(other.terms())
    }
}

impl PartialOrd for Laurent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c);
        }
        out
    }
}

impl Add for Laurent {
    type Output = Laurent;
    fn add(self, rhs: Laurent) -> Laurent {
        &self + &rhs
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        self + &(-rhs)
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        self.scale(-1)
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for Laurent {
    type Output = Laurent;
    fn mul(self, rhs: Laurent) -> Laurent {
        &self * &rhs
    }
}

impl fmt::Display for Laurent {
    /// Descending exponents, e.g. `-A^5 - A^-3 + A^-7`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().rev().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            if i == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.unsigned_abs();
            match (e, a) {
                (0, _) => write!(f, "{a}")?,
                (_, 1) => write!(f, "A^{e}")?,
                _ => write!(f, "{a}*A^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Laurent {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_format() {
        let p = Laurent::from_terms([(-7, 1), (-3, -1), (5, -1)]);
        assert_eq!(p.to_string(), "-A^5 - A^-3 + A^-7");
        assert_eq!(Laurent::one().to_string(), "1");
        assert_eq!(
            Laurent::from_terms([(4, 2), (0, -3)]).to_string(),
            "2*A^4 - 3"
        );
        assert_eq!(Laurent::zero().to_string(), "0");
    }

    #[test]
    fn arithmetic() {
        let d = Laurent::delta();
        let d2 = &d * &d;
        assert_eq!(d2, Laurent::from_terms([(4, 1), (0, 2), (-4, 1)]));
        assert_eq!(d2.div_delta().unwrap(), d);
        assert!(Laurent::one().div_delta().is_none());
        assert_eq!(&d - &d, Laurent::zero());
        assert_eq!(d.invert(), d);
    }
}
