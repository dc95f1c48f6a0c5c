//! Laurent polynomials over the integers in one variable v, the
//! coefficient ring of the Hecke algebra.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;

/// Sparse Laurent polynomial: exponent -> nonzero integer coefficient.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// c * v^e.
    pub fn monomial(exponent: i64, coeff: i64) -> Self {
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            terms.insert(exponent, BigInt::from(coeff));
        }
        LaurentPoly { terms }
    }

    /// v^L - v^{-L}, the coefficient in the quadratic relation of the
    /// generator with weight L.
    pub fn generator_coeff(weight: u64) -> Self {
        let mut terms = BTreeMap::new();
        let l = weight as i64;
        terms.insert(l, BigInt::one());
        terms.insert(-l, -BigInt::one());
        LaurentPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exponent: i64) -> BigInt {
        self.terms.get(&exponent).cloned().unwrap_or_default()
    }

    /// Highest exponent with nonzero coefficient.
    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Lowest exponent with nonzero coefficient.
    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut terms = self.terms.clone();
        for (&e, c) in &other.terms {
            let entry = terms.entry(e).or_insert_with(BigInt::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(&e);
            }
        }
        LaurentPoly { terms }
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut terms: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &other.terms {
                let entry = terms.entry(e1 + e2).or_insert_with(BigInt::zero);
                *entry += c1 * c2;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        LaurentPoly { terms }
    }

    /// Evaluate at v = 1 (specialization to the group algebra).
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Exponent/coefficient pairs in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    /// Every exponent congruent to r mod 2.
    pub fn exponents_congruent(&self, r: i64) -> bool {
        self.terms.keys().all(|e| (e - r).rem_euclid(2) == 0)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        // highest degree first, conventional reading order
        for (&e, c) in self.terms.iter().rev() {
            let (sign, mag) = if c.is_negative() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            let show_coeff = !mag.is_one() || e == 0;
            if show_coeff {
                write!(f, "{}", mag)?;
            }
            if e != 0 {
                if show_coeff {
                    write!(f, "*")?;
                }
                if e == 1 {
                    write!(f, "v")?;
                } else {
                    write!(f, "v^{}", e)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        // ascending exponent order; coefficients as strings (may exceed i64)
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (&e, c) in &self.terms {
            seq.serialize_element(&(e, c.to_string()))?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_identities() {
        let a = LaurentPoly::generator_coeff(1); // v - v^-1
        let b = LaurentPoly::monomial(2, 3).add(&LaurentPoly::one());
        assert_eq!(a.mul(&b), b.mul(&a));
        assert_eq!(a.add(&b), b.add(&a));
        assert_eq!(a.sub(&a), LaurentPoly::zero());
        assert_eq!(a.mul(&LaurentPoly::one()), a);
        assert_eq!(a.mul(&LaurentPoly::zero()), LaurentPoly::zero());
    }

    #[test]
    fn generator_coeff_shape() {
        let g = LaurentPoly::generator_coeff(3);
        assert_eq!(g.degree(), Some(3));
        assert_eq!(g.min_degree(), Some(-3));
        assert_eq!(g.coeff(3), BigInt::from(1));
        assert_eq!(g.coeff(-3), BigInt::from(-1));
        assert_eq!(g.coeff(0), BigInt::from(0));
        assert_eq!(g.eval_at_one(), BigInt::from(0));
    }

    #[test]
    fn squaring_the_generator_coefficient() {
        // (v - v^-1)^2 = v^2 - 2 + v^-2
        let g = LaurentPoly::generator_coeff(1);
        let sq = g.mul(&g);
        assert_eq!(sq.coeff(2), BigInt::from(1));
        assert_eq!(sq.coeff(0), BigInt::from(-2));
        assert_eq!(sq.coeff(-2), BigInt::from(1));
        assert_eq!(sq.degree(), Some(2));
    }

    #[test]
    fn parity_check() {
        let g = LaurentPoly::generator_coeff(2); // exponents 2, -2
        assert!(g.exponents_congruent(0));
        assert!(!g.exponents_congruent(1));
        assert!(LaurentPoly::zero().exponents_congruent(0));
        assert!(LaurentPoly::zero().exponents_congruent(1));
    }

    #[test]
    fn display_formatting() {
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(LaurentPoly::one().to_string(), "1");
        assert_eq!(LaurentPoly::generator_coeff(1).to_string(), "v - v^-1");
        assert_eq!(LaurentPoly::monomial(0, -2).to_string(), "-2");
    }
}
