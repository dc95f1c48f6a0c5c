//! Hecke algebra of a weighted Coxeter system in the standard basis
//! {T_w}: multiplication, structure constants, and the subsequence
//! expansion that bounds their degrees.

use crate::element::{element_from_word, GroupElement};
use crate::enumerate::Enumeration;
use crate::laurent::LaurentPoly;
use crate::system::CoxeterSystem;
use serde::Serialize;
use std::collections::HashMap;
use std::sync::Arc;

/// A finitely supported A-linear combination of basis elements T_w.
#[derive(Clone, Debug)]
pub struct HeckeElement {
    terms: HashMap<GroupElement, LaurentPoly>,
}

impl HeckeElement {
    pub fn zero() -> Self {
        HeckeElement {
            terms: HashMap::new(),
        }
    }

    /// The basis element T_x.
    pub fn basis(x: GroupElement) -> Self {
        let mut terms = HashMap::new();
        terms.insert(x, LaurentPoly::one());
        HeckeElement { terms }
    }

    pub fn add_term(&mut self, z: GroupElement, f: &LaurentPoly) {
        if f.is_zero() {
            return;
        }
        use std::collections::hash_map::Entry;
        match self.terms.entry(z) {
            Entry::Occupied(mut e) => {
                let sum = e.get().add(f);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
            Entry::Vacant(e) => {
                e.insert(f.clone());
            }
        }
    }

    pub fn coeff(&self, z: &GroupElement) -> LaurentPoly {
        self.terms.get(z).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    /// Terms sorted by (length, word) of the basis element, for
    /// deterministic reports.
    pub fn sorted_terms(&self) -> Vec<(&GroupElement, &LaurentPoly)> {
        let mut out: Vec<_> = self.terms.iter().collect();
        out.sort_by(|a, b| (a.0.length(), a.0.word()).cmp(&(b.0.length(), b.0.word())));
        out
    }

    /// Largest degree among the coefficients (None for the zero element).
    pub fn max_degree(&self) -> Option<i64> {
        self.terms.values().filter_map(|f| f.degree()).max()
    }
}

impl PartialEq for HeckeElement {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for HeckeElement {}

/// Right-multiply by T_s: T_w T_s = T_{ws} when lengths add, and
/// (v^{L(s)} - v^{-L(s)}) T_w + T_{ws} when s is a descent of w.
pub fn mult_by_generator(h: &HeckeElement, s: usize) -> HeckeElement {
    let mut out = HeckeElement::zero();
    for (w, f) in &h.terms {
        let ws = w.mul_gen(s);
        if w.right_descent(s) {
            let xi = LaurentPoly::generator_coeff(w.system().weight(s));
            out.add_term(w.clone(), &f.mul(&xi));
        }
        out.add_term(ws, f);
    }
    out
}

/// The product T_x T_y as a combination of basis elements; the
/// coefficient of T_z is the structure constant f_{x,y,z}. Computed by
/// folding generator multiplications over a reduced word of y.
pub fn structure_constants(x: &GroupElement, y: &GroupElement) -> HeckeElement {
    let mut acc = HeckeElement::basis(x.clone());
    for &s in y.word() {
        acc = mult_by_generator(&acc, s as usize);
    }
    acc
}

/// One term of the subsequence expansion of T_x T_y: the index set I
/// (1-based positions into the word of y), the group element z_I, and
/// the coefficient xi_I.
#[derive(Clone, Debug, Serialize)]
pub struct ExpansionTerm {
    pub indices: Vec<usize>,
    #[serde(serialize_with = "crate::hecke::serialize_word")]
    pub z: GroupElement,
    pub xi: LaurentPoly,
}

pub(crate) fn serialize_word<S: serde::Serializer>(
    z: &GroupElement,
    s: S,
) -> Result<S::Ok, S::Error> {
    let word: Vec<u32> = z.word().iter().map(|&g| g as u32 + 1).collect();
    word.serialize(s)
}

/// Enumerate the expansion T_x T_y = sum_I xi_I T_{z_I} over admissible
/// index sets I, depth first. A position may join I exactly when the
/// generator at that position is a right descent of the element built
/// so far; this keeps every prefix admissible, so invalid branches are
/// never explored. The empty set always contributes z = xy with xi = 1.
pub fn enumerate_expansion(
    x: &GroupElement,
    y_word: &[usize],
    budget: usize,
) -> Enumeration<ExpansionTerm> {
    let system = x.system().clone();
    debug_assert_eq!(
        element_from_word(&system, y_word).length(),
        y_word.len(),
        "y_word must be reduced"
    );
    let mut items = Vec::new();
    let mut truncated = false;
    let mut stack: Vec<(usize, GroupElement, Vec<usize>, LaurentPoly)> =
        vec![(0, x.clone(), Vec::new(), LaurentPoly::one())];
    while let Some((pos, u, indices, xi)) = stack.pop() {
        if pos == y_word.len() {
            if items.len() >= budget {
                truncated = true;
                break;
            }
            items.push(ExpansionTerm { indices, z: u, xi });
            continue;
        }
        let s = y_word[pos];
        if u.right_descent(s) {
            // branch: position joins I (element unchanged, coefficient grows)
            let mut with = indices.clone();
            with.push(pos + 1);
            let xi_s = LaurentPoly::generator_coeff(system.weight(s));
            // push the skip branch first so take-branches surface in DFS order
            stack.push((pos + 1, u.mul_gen(s), indices, xi.clone()));
            stack.push((pos + 1, u.clone(), with, xi.mul(&xi_s)));
        } else {
            stack.push((pos + 1, u.mul_gen(s), indices, xi));
        }
    }
    // deterministic order: by indices lexicographically
    items.sort_by(|a, b| a.indices.cmp(&b.indices));
    Enumeration { items, truncated }
}

/// Group the expansion terms by z; must reproduce structure_constants.
pub fn aggregate_expansion(terms: &[ExpansionTerm]) -> HeckeElement {
    let mut acc = HeckeElement::zero();
    for t in terms {
        acc.add_term(t.z.clone(), &t.xi);
    }
    acc
}

/// Degree report for one product T_x T_y.
#[derive(Clone, Debug, Serialize)]
pub struct DegreeReport {
    /// max over z of deg f_{x,y,z}
    pub degree: i64,
    /// a z attaining the max (smallest by (length, word) among ties)
    #[serde(serialize_with = "crate::hecke::serialize_word")]
    pub witness_z: GroupElement,
    /// size of the largest admissible index set
    pub p_max: usize,
    /// degree <= p_max * max weight (always true; recorded for reports)
    pub bound_holds: bool,
}

/// Maximum coefficient degree in T_x T_y, a witness z, and the largest
/// admissible index-set size, with the degree bound degree <= p_max L_m
/// checked.
pub fn max_f_degree(x: &GroupElement, y: &GroupElement) -> DegreeReport {
    let product = structure_constants(x, y);
    let mut degree = i64::MIN;
    let mut witness: Option<&GroupElement> = None;
    for (z, f) in product.sorted_terms() {
        let d = f.degree().expect("stored coefficients are nonzero");
        if d > degree {
            degree = d;
            witness = Some(z);
        }
    }
    let witness_z = witness.expect("T_x T_y is never zero").clone();

    // p_max by level DP over the positions of y's reduced word: state =
    // element built so far -> largest index count achieving it.
    let mut states: HashMap<GroupElement, usize> = HashMap::new();
    states.insert(x.clone(), 0);
    for &s in y.word() {
        let mut next: HashMap<GroupElement, usize> = HashMap::new();
        for (u, p) in &states {
            let us = u.mul_gen(s as usize);
            if u.right_descent(s as usize) {
                let e = next.entry(u.clone()).or_insert(0);
                *e = (*e).max(p + 1);
            }
            let e = next.entry(us).or_insert(0);
            *e = (*e).max(*p);
        }
        states = next;
    }
    let p_max = states.values().copied().max().unwrap_or(0);

    let lm = x.system().max_weight();
    let bound_holds = degree <= (p_max as i64) * (lm as i64);
    assert!(
        bound_holds,
        "degree bound violated: {} > {} * {}",
        degree, p_max, lm
    );
    DegreeReport {
        degree,
        witness_z,
        p_max,
        bound_holds,
    }
}

/// One violation found by verify_bound.
#[derive(Clone, Debug, Serialize)]
pub struct BoundViolation {
    pub x: Vec<u32>,
    pub y: Vec<u32>,
    pub degree: i64,
    pub witness_z: Vec<u32>,
}

/// Result of checking deg f_{x,y,z} <= n over a sample of pairs.
#[derive(Clone, Debug, Serialize)]
pub struct BoundCheck {
    pub n: i64,
    pub pairs_checked: usize,
    pub max_degree_seen: i64,
    pub violations: Vec<BoundViolation>,
}

fn one_indexed(w: &GroupElement) -> Vec<u32> {
    w.word().iter().map(|&g| g as u32 + 1).collect()
}

/// Check the degree bound deg f_{x,y,z} <= n over the given pairs.
/// Violations are reported with witnesses, in input order.
pub fn verify_bound(
    _system: &Arc<CoxeterSystem>,
    n: i64,
    pairs: &[(GroupElement, GroupElement)],
) -> BoundCheck {
    let mut violations = Vec::new();
    let mut max_seen = i64::MIN;
    for (x, y) in pairs {
        let report = max_f_degree(x, y);
        max_seen = max_seen.max(report.degree);
        if report.degree > n {
            violations.push(BoundViolation {
                x: one_indexed(x),
                y: one_indexed(y),
                degree: report.degree,
                witness_z: one_indexed(&report.witness_z),
            });
        }
    }
    BoundCheck {
        n,
        pairs_checked: pairs.len(),
        max_degree_seen: if pairs.is_empty() { 0 } else { max_seen },
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::enumerate_elements;

    fn system(matrix: &[Vec<u64>]) -> Arc<CoxeterSystem> {
        CoxeterSystem::new(matrix, None).unwrap()
    }

    fn a2() -> Arc<CoxeterSystem> {
        system(&[vec![1, 3], vec![3, 1]])
    }

    #[test]
    fn identity_times_generator() {
        let w = a2();
        let h = mult_by_generator(&HeckeElement::basis(w.identity()), 0);
        assert_eq!(h.support_len(), 1);
        assert_eq!(h.coeff(&w.generator(0)), LaurentPoly::one());
    }

    #[test]
    fn quadratic_relation() {
        let w = CoxeterSystem::new(&[vec![1, 4], vec![4, 1]], Some(&[2, 1])).unwrap();
        let s = w.generator(0);
        let h = mult_by_generator(&HeckeElement::basis(s.clone()), 0);
        assert_eq!(h.support_len(), 2);
        assert_eq!(h.coeff(&w.identity()), LaurentPoly::one());
        assert_eq!(h.coeff(&s), LaurentPoly::generator_coeff(2));
    }

    #[test]
    fn lengths_add_gives_single_term() {
        let w = a2();
        let h = mult_by_generator(&HeckeElement::basis(w.generator(0)), 1);
        assert_eq!(h.support_len(), 1);
        let s0s1 = element_from_word(&w, &[0, 1]);
        assert_eq!(h.coeff(&s0s1), LaurentPoly::one());

        let x = element_from_word(&w, &[0]);
        let y = element_from_word(&w, &[1, 0]);
        let prod = structure_constants(&x, &y);
        assert_eq!(prod.support_len(), 1);
        assert_eq!(prod.coeff(&x.mul(&y)), LaurentPoly::one());
    }

    #[test]
    fn longest_element_self_product_degrees() {
        // max_z deg f at x = y = longest element, all weights 1:
        // 3 for m=3, 4 for m=4, 6 for m=6
        for (m, expected) in [(3u64, 3i64), (4, 4), (6, 6)] {
            let w = system(&[vec![1, m], vec![m, 1]]);
            let all = enumerate_elements(&w, 2 * m as usize, 10_000);
            let w0 = all.items.iter().max_by_key(|x| x.length()).unwrap().clone();
            assert_eq!(w0.length() as u64, m);
            let report = max_f_degree(&w0, &w0);
            assert_eq!(report.degree, expected);
            assert!(report.bound_holds);
        }
    }

    #[test]
    fn b2_longest_element_report() {
        let w = system(&[vec![1, 4], vec![4, 1]]);
        let w0 = element_from_word(&w, &[0, 1, 0, 1]);
        let report = max_f_degree(&w0, &w0);
        assert_eq!(report.degree, 4);
        assert_eq!(report.p_max, 4);
        assert_eq!(report.witness_z, w0);
    }

    #[test]
    fn expansion_base_cases() {
        let w = a2();
        // x = e, y = s: a single term with empty I
        let e = enumerate_expansion(&w.identity(), &[0], 1000);
        assert!(!e.truncated);
        assert_eq!(e.items.len(), 1);
        assert!(e.items[0].indices.is_empty());
        assert_eq!(e.items[0].z, w.generator(0));
        assert_eq!(e.items[0].xi, LaurentPoly::one());

        // x = s, y = s: empty I gives z = e; I = (1) gives z = s
        let s = w.generator(0);
        let two = enumerate_expansion(&s, &[0], 1000);
        assert_eq!(two.items.len(), 2);
        assert!(two.items[0].indices.is_empty());
        assert_eq!(two.items[0].z, w.identity());
        assert_eq!(two.items[1].indices, vec![1]);
        assert_eq!(two.items[1].z, s);
        assert_eq!(two.items[1].xi, LaurentPoly::generator_coeff(1));
    }

    #[test]
    fn expansion_matches_structure_constants_exhaustively_in_b2() {
        let w = system(&[vec![1, 4], vec![4, 1]]);
        let all = enumerate_elements(&w, 10, 1000).items;
        for x in &all {
            for y in &all {
                let yw: Vec<usize> = y.word().iter().map(|&s| s as usize).collect();
                let exp = enumerate_expansion(x, &yw, 100_000);
                assert!(!exp.truncated);
                let agg = aggregate_expansion(&exp.items);
                let direct = structure_constants(x, y);
                assert_eq!(agg, direct, "mismatch at x={:?} y={:?}", x, y);
            }
        }
    }

    #[test]
    fn expansion_term_invariants() {
        let w = system(&[vec![1, 6], vec![6, 1]]);
        let w0 = element_from_word(&w, &[0, 1, 0, 1, 0, 1]);
        let yw: Vec<usize> = w0.word().iter().map(|&s| s as usize).collect();
        let exp = enumerate_expansion(&w0, &yw, 1_000_000);
        assert!(!exp.truncated);
        for t in &exp.items {
            // strictly increasing indices, p <= l(y)
            assert!(t.indices.windows(2).all(|p| p[0] < p[1]));
            assert!(t.indices.len() <= yw.len());
            // deg xi = sum of weights at the chosen positions
            let expected: i64 = t.indices.iter().map(|&i| w.weight(yw[i - 1]) as i64).sum();
            if t.indices.is_empty() {
                assert_eq!(t.xi, LaurentPoly::one());
            } else {
                assert_eq!(t.xi.degree(), Some(expected));
            }
        }
        // empty index set present exactly once, with z = xy
        let empties: Vec<_> = exp.items.iter().filter(|t| t.indices.is_empty()).collect();
        assert_eq!(empties.len(), 1);
        assert_eq!(empties[0].z, w0.mul(&w0));
    }

    #[test]
    fn expansion_budget_is_explicit() {
        let w = system(&[vec![1, 6], vec![6, 1]]);
        let w0 = element_from_word(&w, &[0, 1, 0, 1, 0, 1]);
        let yw: Vec<usize> = w0.word().iter().map(|&s| s as usize).collect();
        let exp = enumerate_expansion(&w0, &yw, 3);
        assert!(exp.truncated);
        assert_eq!(exp.items.len(), 3);
    }

    #[test]
    fn specialization_at_one_recovers_group_multiplication() {
        let w = a2();
        let all = enumerate_elements(&w, 10, 1000).items;
        for x in &all {
            for y in &all {
                let prod = structure_constants(x, y);
                let xy = x.mul(y);
                for (z, f) in prod.sorted_terms() {
                    let expected = if *z == xy { 1 } else { 0 };
                    assert_eq!(f.eval_at_one(), expected.into());
                }
            }
        }
    }

    #[test]
    fn verify_bound_exhaustive_a2() {
        let w = a2();
        let all = enumerate_elements(&w, 10, 1000).items;
        let pairs: Vec<_> = all
            .iter()
            .flat_map(|x| all.iter().map(move |y| (x.clone(), y.clone())))
            .collect();
        assert_eq!(pairs.len(), 36);
        let ok = verify_bound(&w, 3, &pairs);
        assert!(ok.violations.is_empty());
        assert_eq!(ok.max_degree_seen, 3); // bound attained
        let bad = verify_bound(&w, 2, &pairs);
        assert!(!bad.violations.is_empty());
        let w0 = element_from_word(&w, &[0, 1, 0]);
        let hit = bad
            .violations
            .iter()
            .any(|v| v.x == one_indexed(&w0) && v.y == one_indexed(&w0));
        assert!(hit, "x = y = longest element must violate n = 2");
    }

    #[test]
    fn unequal_weights_enter_degrees() {
        // dihedral m=4 with weights (2,1): T_s1 T_s1 has degree 2
        let w = CoxeterSystem::new(&[vec![1, 4], vec![4, 1]], Some(&[2, 1])).unwrap();
        let s0 = w.generator(0);
        let r = max_f_degree(&s0, &s0);
        assert_eq!(r.degree, 2);
        assert_eq!(r.p_max, 1);
    }
}
