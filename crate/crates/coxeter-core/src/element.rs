//! Group elements as exact matrices of the reflection representation,
//! with a maintained reduced word and cached inverse matrix.

use crate::field::ExactReal;
use crate::root::{root_sign, RootSign, RootVector};
use crate::system::CoxeterSystem;
use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

/// Column-major square matrix over the scalar field; column t holds the
/// coordinates of the image of the t-th simple root.
#[derive(Clone, PartialEq, Eq)]
struct Mat {
    rank: usize,
    data: Vec<ExactReal>,
}

impl Mat {
    fn identity(system: &CoxeterSystem) -> Mat {
        let rank = system.rank();
        let field = system.field();
        let mut data = vec![ExactReal::zero(field); rank * rank];
        for i in 0..rank {
            data[i * rank + i] = ExactReal::one(field);
        }
        Mat { rank, data }
    }

    fn entry(&self, row: usize, col: usize) -> &ExactReal {
        &self.data[col * self.rank + row]
    }

    fn col(&self, col: usize) -> &[ExactReal] {
        &self.data[col * self.rank..(col + 1) * self.rank]
    }

    /// Right-multiply by the reflection of generator s:
    /// col_t -= 2B(alpha_s, alpha_t) * col_s for every t.
    fn mul_gen_right(&self, system: &CoxeterSystem, s: usize) -> Mat {
        let rank = self.rank;
        let col_s: Vec<ExactReal> = self.col(s).to_vec();
        let mut data = self.data.clone();
        for t in 0..rank {
            let c = system.two_b(s, t);
            if c.is_zero() {
                continue;
            }
            for r in 0..rank {
                let delta = col_s[r].mul(c);
                data[t * rank + r] = data[t * rank + r].sub(&delta);
            }
        }
        Mat { rank, data }
    }

    /// Left-multiply by the reflection of generator s:
    /// row_s -= sum_k 2B(alpha_s, alpha_k) * row_k.
    fn mul_gen_left(&self, system: &CoxeterSystem, s: usize) -> Mat {
        let rank = self.rank;
        let mut data = self.data.clone();
        for t in 0..rank {
            let mut acc = ExactReal::zero(system.field());
            for k in 0..rank {
                let c = system.two_b(s, k);
                if !c.is_zero() {
                    acc = acc.add(&self.entry(k, t).mul(c));
                }
            }
            data[t * rank + s] = data[t * rank + s].sub(&acc);
        }
        Mat { rank, data }
    }

    fn apply(&self, coords: &[ExactReal], system: &CoxeterSystem) -> Vec<ExactReal> {
        let rank = self.rank;
        let mut out = vec![ExactReal::zero(system.field()); rank];
        for (t, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let col = self.col(t);
            for r in 0..rank {
                if !col[r].is_zero() {
                    out[r] = out[r].add(&col[r].mul(c));
                }
            }
        }
        out
    }
}

struct Inner {
    system: Arc<CoxeterSystem>,
    mat: Mat,
    inv_mat: Mat,
    /// Reduced word over generator indices (0-based).
    word: Vec<u8>,
    hash: u64,
}

/// An element of the Coxeter group. Cheap to clone (shared storage);
/// equality is matrix equality, which coincides with group equality
/// because the reflection representation is faithful.
#[derive(Clone)]
pub struct GroupElement {
    inner: Arc<Inner>,
}

fn mat_hash(mat: &Mat) -> u64 {
    let mut h = DefaultHasher::new();
    mat.data.hash(&mut h);
    h.finish()
}

impl GroupElement {
    pub fn identity(system: &Arc<CoxeterSystem>) -> GroupElement {
        let mat = Mat::identity(system);
        let hash = mat_hash(&mat);
        GroupElement {
            inner: Arc::new(Inner {
                system: system.clone(),
                mat: mat.clone(),
                inv_mat: mat,
                word: Vec::new(),
                hash,
            }),
        }
    }

    pub fn system(&self) -> &Arc<CoxeterSystem> {
        &self.inner.system
    }

    /// The maintained reduced word (0-based generator indices).
    pub fn word(&self) -> &[u8] {
        &self.inner.word
    }

    pub fn length(&self) -> usize {
        self.inner.word.len()
    }

    /// Total weight: sum of L over the letters of a reduced word.
    pub fn weight(&self) -> u64 {
        let system = &self.inner.system;
        self.inner
            .word
            .iter()
            .map(|&s| system.weight(s as usize))
            .sum()
    }

    pub fn is_identity(&self) -> bool {
        self.inner.word.is_empty()
    }

    /// Whether s is a right descent: l(ws) < l(w), equivalently w sends
    /// alpha_s to a negative root.
    pub fn right_descent(&self, s: usize) -> bool {
        self.image_sign(s) == RootSign::Negative
    }

    /// Whether s is a left descent: l(sw) < l(w).
    pub fn left_descent(&self, s: usize) -> bool {
        let col = self.inner.inv_mat.col(s);
        column_sign(self.system(), col) == RootSign::Negative
    }

    fn image_sign(&self, s: usize) -> RootSign {
        column_sign(self.system(), self.inner.mat.col(s))
    }

    /// Right-multiply by a generator, maintaining the reduced word. If
    /// s is a descent the word shrinks by the exchange condition,
    /// otherwise s is appended.
    pub fn mul_gen(&self, s: usize) -> GroupElement {
        let system = &self.inner.system;
        assert!(s < system.rank(), "generator index out of range");
        let descent = !self.inner.word.is_empty() && self.right_descent(s);
        let word = if descent {
            exchange_delete(system, &self.inner.word, s)
        } else {
            let mut w = self.inner.word.clone();
            w.push(s as u8);
            w
        };
        let mat = self.inner.mat.mul_gen_right(system, s);
        let inv_mat = self.inner.inv_mat.mul_gen_left(system, s);
        let hash = mat_hash(&mat);
        GroupElement {
            inner: Arc::new(Inner {
                system: system.clone(),
                mat,
                inv_mat,
                word,
                hash,
            }),
        }
    }

    /// Group product; cost O(l(other) * rank^2).
    pub fn mul(&self, other: &GroupElement) -> GroupElement {
        let mut acc = self.clone();
        for &s in other.word() {
            acc = acc.mul_gen(s as usize);
        }
        acc
    }

    /// Inverse element (matrices swapped, word reversed).
    pub fn inverse(&self) -> GroupElement {
        let word: Vec<u8> = self.inner.word.iter().rev().copied().collect();
        let hash = mat_hash(&self.inner.inv_mat);
        GroupElement {
            inner: Arc::new(Inner {
                system: self.inner.system.clone(),
                mat: self.inner.inv_mat.clone(),
                inv_mat: self.inner.mat.clone(),
                word,
                hash,
            }),
        }
    }

    /// Apply the element to a vector: w(v).
    pub fn apply(&self, v: &RootVector) -> RootVector {
        let coords = self.inner.mat.apply(v.coords(), &self.inner.system);
        RootVector::new(self.inner.system.clone(), coords)
    }

    /// Apply the inverse without constructing it: w^{-1}(v).
    pub fn apply_inverse(&self, v: &RootVector) -> RootVector {
        let coords = self.inner.inv_mat.apply(v.coords(), &self.inner.system);
        RootVector::new(self.inner.system.clone(), coords)
    }

    /// Image of the s-th simple root as a vector.
    pub fn image_of_simple(&self, s: usize) -> RootVector {
        RootVector::new(self.inner.system.clone(), self.inner.mat.col(s).to_vec())
    }

    /// All right descents of the element.
    pub fn right_descents(&self) -> Vec<usize> {
        (0..self.inner.system.rank())
            .filter(|&s| self.right_descent(s))
            .collect()
    }
}

fn column_sign(system: &Arc<CoxeterSystem>, col: &[ExactReal]) -> RootSign {
    let v = RootVector::new(system.clone(), col.to_vec());
    root_sign(&v).expect("group element column must be a root")
}

/// Strong exchange: given a reduced word for w and a right descent s,
/// return the reduced word for ws obtained by deleting one letter. The
/// deleted position j satisfies word[j+1..] applied to alpha_s equals
/// alpha_{word[j]}.
fn exchange_delete(system: &Arc<CoxeterSystem>, word: &[u8], s: usize) -> Vec<u8> {
    let mut v = system.simple_root(s);
    for j in (0..word.len()).rev() {
        let t = word[j] as usize;
        if v == system.simple_root(t) {
            let mut out = word.to_vec();
            out.remove(j);
            return out;
        }
        v = system.apply_reflection(t, &v);
    }
    unreachable!("descent guaranteed a deletable letter");
}

/// Build an element from a word over 0-based generator indices. The
/// result carries a reduced word, which may be shorter than the input.
pub fn element_from_word(system: &Arc<CoxeterSystem>, word: &[usize]) -> GroupElement {
    let mut acc = GroupElement::identity(system);
    for &s in word {
        acc = acc.mul_gen(s);
    }
    acc
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.inner, &other.inner) {
            return true;
        }
        if self.inner.hash != other.inner.hash {
            return false;
        }
        if self.inner.word == other.inner.word {
            return true;
        }
        self.inner.mat == other.inner.mat
    }
}

impl Eq for GroupElement {}

impl Hash for GroupElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.inner.hash);
    }
}

impl std::fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_identity() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self
            .inner
            .word
            .iter()
            .map(|&s| format!("s{}", s + 1))
            .collect();
        write!(f, "{}", parts.join("."))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn system(matrix: &[Vec<u64>]) -> Arc<CoxeterSystem> {
        CoxeterSystem::new(matrix, None).unwrap()
    }

    fn a2() -> Arc<CoxeterSystem> {
        system(&[vec![1, 3], vec![3, 1]])
    }

    #[test]
    fn generators_are_involutions() {
        let w = a2();
        let s0 = w.generator(0);
        assert_eq!(s0.length(), 1);
        assert_eq!(s0.mul(&s0), w.identity());
        assert!(s0.right_descent(0));
        assert!(!s0.right_descent(1));
    }

    #[test]
    fn braid_relation_holds() {
        let w = a2();
        let lhs = element_from_word(&w, &[0, 1, 0]);
        let rhs = element_from_word(&w, &[1, 0, 1]);
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.length(), 3);

        let b2 = system(&[vec![1, 4], vec![4, 1]]);
        let lhs4 = element_from_word(&b2, &[0, 1, 0, 1]);
        let rhs4 = element_from_word(&b2, &[1, 0, 1, 0]);
        assert_eq!(lhs4, rhs4);
        assert_eq!(lhs4.length(), 4);
    }

    #[test]
    fn words_stay_reduced_under_unreduced_input() {
        let w = a2();
        let e = element_from_word(&w, &[0, 0]);
        assert!(e.is_identity());
        // s0 s1 s0 s1 = s1 s0 in the m=3 group (order 6)
        let x = element_from_word(&w, &[0, 1, 0, 1]);
        assert_eq!(x, element_from_word(&w, &[1, 0]));
        assert_eq!(x.length(), 2);
        // dihedral of order 6: s0 s1 has order 3
        let r = element_from_word(&w, &[0, 1, 0, 1, 0, 1]);
        assert!(r.is_identity());
    }

    #[test]
    fn composition_convention_applies_rightmost_first() {
        // In the m=3 dihedral group: (s1 s2) alpha_2 = -alpha_1 - alpha_2,
        // while (s2 s1) alpha_2 = alpha_1 (generators 1-indexed in names).
        let w = a2();
        let a1 = w.simple_root(1);
        let s0s1 = element_from_word(&w, &[0, 1]);
        let s1s0 = element_from_word(&w, &[1, 0]);
        let m1 = ExactReal::from_integer(w.field(), -1);
        assert_eq!(
            s0s1.apply(&a1),
            RootVector::new(w.clone(), vec![m1.clone(), m1.clone()])
        );
        assert_eq!(s1s0.apply(&a1), w.simple_root(0));
        // associativity of application
        let v = s0s1.apply(&a1);
        let direct = element_from_word(&w, &[0]).apply(&element_from_word(&w, &[1]).apply(&a1));
        assert_eq!(v, direct);
    }

    #[test]
    fn inverse_and_apply_inverse_agree() {
        let w = system(&[vec![1, 4, 2], vec![4, 1, 4], vec![2, 4, 1]]);
        let x = element_from_word(&w, &[0, 1, 2, 1, 0, 2]);
        let inv = x.inverse();
        assert_eq!(x.mul(&inv), w.identity());
        assert_eq!(inv.mul(&x), w.identity());
        assert_eq!(inv.length(), x.length());
        let v = w.simple_root(1);
        assert_eq!(x.apply_inverse(&v), inv.apply(&v));
        assert_eq!(x.apply(&x.apply_inverse(&v)), v);
    }

    #[test]
    fn length_via_word_matches_descent_structure() {
        // longest element of the m=4 dihedral group has length 4 and
        // every generator as a descent
        let b2 = system(&[vec![1, 4], vec![4, 1]]);
        let w0 = element_from_word(&b2, &[0, 1, 0, 1]);
        assert_eq!(w0.length(), 4);
        assert!(w0.right_descent(0));
        assert!(w0.right_descent(1));
        assert!(w0.left_descent(0));
        assert!(w0.left_descent(1));
    }

    #[test]
    fn weight_sums_generator_weights() {
        let w = CoxeterSystem::new(&[vec![1, 4], vec![4, 1]], Some(&[2, 3])).unwrap();
        let x = element_from_word(&w, &[0, 1, 0]);
        assert_eq!(x.length(), 3);
        assert_eq!(x.weight(), 7);
        assert_eq!(w.identity().weight(), 0);
    }

    #[test]
    fn infinite_group_grows_without_collapse() {
        // infinite dihedral: alternating word of any length is reduced
        let w = system(&[vec![1, 0], vec![0, 1]]);
        let mut x = w.identity();
        for i in 0..20 {
            x = x.mul_gen(i % 2);
            assert_eq!(x.length(), i + 1);
        }
    }
}
