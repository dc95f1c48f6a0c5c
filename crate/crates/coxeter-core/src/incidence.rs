//! Reflection hyperplanes as positive roots, chamber separation, and
//! the pairwise interior-intersection criterion.

use crate::element::GroupElement;
use crate::field::ExactReal;
use crate::root::{root_sign, RootSign, RootVector};
use serde::{Serialize, Serializer};
use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

/// A reflection hyperplane, identified by its positive root. Two roots
/// give the same hyperplane iff they differ by sign, so normalizing to
/// the positive representative makes equality structural.
#[derive(Clone)]
pub struct Hyperplane {
    alpha: RootVector,
}

impl Hyperplane {
    /// Wrap a root, normalizing to the positive representative.
    /// Panics on vectors that are not roots (zero or mixed sign).
    pub fn from_root(alpha: RootVector) -> Hyperplane {
        match root_sign(&alpha).expect("hyperplane requires a root") {
            RootSign::Positive => Hyperplane { alpha },
            RootSign::Negative => Hyperplane { alpha: alpha.neg() },
        }
    }

    /// The hyperplane of a simple root.
    pub fn of_simple(
        system: &std::sync::Arc<crate::system::CoxeterSystem>,
        s: usize,
    ) -> Hyperplane {
        Hyperplane {
            alpha: system.simple_root(s),
        }
    }

    /// The positive root defining the hyperplane.
    pub fn alpha(&self) -> &RootVector {
        &self.alpha
    }
}

impl PartialEq for Hyperplane {
    fn eq(&self, other: &Self) -> bool {
        self.alpha == other.alpha
    }
}

impl Eq for Hyperplane {}

impl Hash for Hyperplane {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.alpha.hash(state);
    }
}

impl PartialOrd for Hyperplane {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Hyperplane {
    fn cmp(&self, other: &Self) -> Ordering {
        self.alpha.cmp_coords(&other.alpha)
    }
}

impl std::fmt::Debug for Hyperplane {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "H{:?}", self.alpha)
    }
}

impl Serialize for Hyperplane {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.alpha.serialize(serializer)
    }
}

/// Whether two hyperplanes meet inside the interior of the Tits cone:
/// true for P = Q, otherwise exactly when -1 < B(alpha_P, alpha_Q) < 1.
pub fn intersects_interior(p: &Hyperplane, q: &Hyperplane) -> bool {
    if p == q {
        return true;
    }
    let system = p.alpha.system();
    let b = system.bilinear_form(p.alpha(), q.alpha());
    let one = ExactReal::one(system.field());
    b.cmp_real(&one.neg()) == Ordering::Greater && b.cmp_real(&one) == Ordering::Less
}

/// Whether P separates the chambers xC and yC: the signs of x^{-1}
/// alpha_P and y^{-1} alpha_P differ.
pub fn separates(p: &Hyperplane, x: &GroupElement, y: &GroupElement) -> bool {
    let sx = root_sign(&x.apply_inverse(p.alpha())).expect("image of a root is a root");
    let sy = root_sign(&y.apply_inverse(p.alpha())).expect("image of a root is a root");
    sx != sy
}

/// The image hyperplane w(P), normalized positive.
pub fn reflect_hyperplane(w: &GroupElement, p: &Hyperplane) -> Hyperplane {
    Hyperplane::from_root(w.apply(p.alpha()))
}

/// Whether every unordered pair of hyperplanes in the set meets inside
/// the interior of the Tits cone. The empty set and singletons qualify.
pub fn is_intersecting_set(set: &[Hyperplane]) -> bool {
    for (i, p) in set.iter().enumerate() {
        for q in &set[i + 1..] {
            if !intersects_interior(p, q) {
                return false;
            }
        }
    }
    true
}
