//! Vectors in the reflection representation, expressed over the basis
//! of simple roots, and the positive/negative dichotomy for roots.

use crate::field::{ExactReal, Sign};
use crate::system::CoxeterSystem;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use std::cmp::Ordering;
use std::hash::{Hash, Hasher};
use std::sync::Arc;
use thiserror::Error;

/// Sign class of a root: every root of a Coxeter system has either all
/// coordinates >= 0 or all <= 0 in the simple-root basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RootSign {
    Positive,
    Negative,
}

impl RootSign {
    pub fn flip(self) -> RootSign {
        match self {
            RootSign::Positive => RootSign::Negative,
            RootSign::Negative => RootSign::Positive,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SignError {
    #[error("vector is zero, not a root")]
    ZeroVector,
    #[error("vector has strictly positive and strictly negative coordinates, not a root")]
    MixedSign,
}

/// A vector in the rank-dimensional representation space, with exact
/// coordinates over the simple-root basis.
#[derive(Clone)]
pub struct RootVector {
    system: Arc<CoxeterSystem>,
    coords: Vec<ExactReal>,
}

impl RootVector {
    pub fn new(system: Arc<CoxeterSystem>, coords: Vec<ExactReal>) -> Self {
        assert_eq!(
            coords.len(),
            system.rank(),
            "coordinate count must equal rank"
        );
        RootVector { system, coords }
    }

    pub fn system(&self) -> &Arc<CoxeterSystem> {
        &self.system
    }

    pub fn coords(&self) -> &[ExactReal] {
        &self.coords
    }

    pub fn neg(&self) -> RootVector {
        RootVector {
            system: self.system.clone(),
            coords: self.coords.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// Coordinatewise total order (for deterministic set layouts).
    pub fn cmp_coords(&self, other: &RootVector) -> Ordering {
        for (a, b) in self.coords.iter().zip(&other.coords) {
            match a.cmp_real(b) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialEq for RootVector {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords
    }
}

impl Eq for RootVector {}

impl Hash for RootVector {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl std::fmt::Debug for RootVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Root[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, "]")
    }
}

impl Serialize for RootVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coords.len()))?;
        for c in &self.coords {
            seq.serialize_element(c)?;
        }
        seq.end()
    }
}

/// Classify a root as positive or negative. Errors on the zero vector
/// and on vectors with strictly mixed coordinate signs (which are not
/// roots and indicate caller misuse).
pub fn root_sign(v: &RootVector) -> Result<RootSign, SignError> {
    let mut seen_pos = false;
    let mut seen_neg = false;
    for c in v.coords() {
        match c.sign() {
            Sign::Positive => seen_pos = true,
            Sign::Negative => seen_neg = true,
            Sign::Zero => {}
        }
        if seen_pos && seen_neg {
            return Err(SignError::MixedSign);
        }
    }
    match (seen_pos, seen_neg) {
        (true, false) => Ok(RootSign::Positive),
        (false, true) => Ok(RootSign::Negative),
        (false, false) => Err(SignError::ZeroVector),
        (true, true) => unreachable!(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::CoxeterSystem;

    fn a2() -> Arc<CoxeterSystem> {
        CoxeterSystem::new(&[vec![1, 3], vec![3, 1]], None).unwrap()
    }

    #[test]
    fn simple_roots_are_positive_and_negations_negative() {
        let w = a2();
        let a0 = w.simple_root(0);
        assert_eq!(root_sign(&a0), Ok(RootSign::Positive));
        assert_eq!(root_sign(&a0.neg()), Ok(RootSign::Negative));
    }

    #[test]
    fn zero_and_mixed_vectors_are_rejected() {
        let w = a2();
        let zero = RootVector::new(
            w.clone(),
            vec![ExactReal::zero(w.field()), ExactReal::zero(w.field())],
        );
        assert_eq!(root_sign(&zero), Err(SignError::ZeroVector));
        let mixed = RootVector::new(
            w.clone(),
            vec![
                ExactReal::one(w.field()),
                ExactReal::from_integer(w.field(), -1),
            ],
        );
        assert_eq!(root_sign(&mixed), Err(SignError::MixedSign));
    }

    #[test]
    fn reflection_of_other_simple_stays_positive() {
        let w = a2();
        let r = w.apply_reflection(0, &w.simple_root(1));
        assert_eq!(root_sign(&r), Ok(RootSign::Positive));
    }
}
