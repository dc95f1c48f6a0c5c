//! Breadth-first enumeration of group elements and positive roots,
//! deterministic and with explicit budget reporting.

use crate::element::GroupElement;
use crate::root::{root_sign, RootSign, RootVector};
use crate::system::CoxeterSystem;
use std::collections::HashSet;
use std::sync::Arc;

/// Enumeration result: the collected items in deterministic BFS order
/// (level by level, generators in index order) plus a flag that is set
/// when the item budget stopped the walk early. Budget exhaustion is
/// always explicit, never silent.
#[derive(Clone, Debug)]
pub struct Enumeration<T> {
    pub items: Vec<T>,
    pub truncated: bool,
}

impl<T> Enumeration<T> {
    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

/// All elements of length <= max_len (inclusive), BFS over the Cayley
/// graph with the full generator set.
pub fn enumerate_elements(
    system: &Arc<CoxeterSystem>,
    max_len: usize,
    budget: usize,
) -> Enumeration<GroupElement> {
    let gens: Vec<usize> = (0..system.rank()).collect();
    enumerate_elements_restricted(system, &gens, max_len, budget)
}

/// BFS restricted to a generator subset (enumerates the standard
/// parabolic subgroup it generates).
pub fn enumerate_elements_restricted(
    system: &Arc<CoxeterSystem>,
    gens: &[usize],
    max_len: usize,
    budget: usize,
) -> Enumeration<GroupElement> {
    let identity = GroupElement::identity(system);
    let mut seen: HashSet<GroupElement> = HashSet::new();
    seen.insert(identity.clone());
    let mut items = vec![identity.clone()];
    let mut frontier = vec![identity];
    let mut truncated = false;

    'levels: for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for &s in gens {
                if w.right_descent(s) {
                    continue; // length would drop; already seen
                }
                let ws = w.mul_gen(s);
                if seen.insert(ws.clone()) {
                    if items.len() >= budget {
                        truncated = true;
                        break 'levels;
                    }
                    items.push(ws.clone());
                    next.push(ws);
                }
            }
        }
        if next.is_empty() {
            break; // group exhausted
        }
        frontier = next;
    }

    Enumeration { items, truncated }
}

/// All positive roots of depth <= max_depth, where depth(alpha) is the
/// least l(w) with alpha = w(alpha_s); the simple roots have depth 0.
pub fn enumerate_positive_roots(
    system: &Arc<CoxeterSystem>,
    max_depth: usize,
    budget: usize,
) -> Enumeration<RootVector> {
    let gens: Vec<usize> = (0..system.rank()).collect();
    enumerate_positive_roots_restricted(system, &gens, max_depth, budget)
}

/// Positive-root BFS restricted to a generator subset: produces the
/// positive roots of the standard parabolic subsystem.
pub fn enumerate_positive_roots_restricted(
    system: &Arc<CoxeterSystem>,
    gens: &[usize],
    max_depth: usize,
    budget: usize,
) -> Enumeration<RootVector> {
    let mut seen: HashSet<RootVector> = HashSet::new();
    let mut items = Vec::new();
    let mut frontier = Vec::new();
    let mut truncated = false;
    for &s in gens {
        let a = system.simple_root(s);
        if seen.insert(a.clone()) {
            if items.len() >= budget {
                return Enumeration {
                    items,
                    truncated: true,
                };
            }
            items.push(a.clone());
            frontier.push(a);
        }
    }

    'levels: for _ in 0..max_depth {
        let mut next = Vec::new();
        for alpha in &frontier {
            for &s in gens {
                let beta = system.apply_reflection(s, alpha);
                if root_sign(&beta).expect("reflection of a root is a root") == RootSign::Negative {
                    continue; // beta = -alpha_s case; its positive form is known
                }
                if seen.insert(beta.clone()) {
                    if items.len() >= budget {
                        truncated = true;
                        break 'levels;
                    }
                    items.push(beta.clone());
                    next.push(beta);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }

    Enumeration { items, truncated }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn system(matrix: &[Vec<u64>]) -> Arc<CoxeterSystem> {
        CoxeterSystem::new(matrix, None).unwrap()
    }

    #[test]
    fn finite_group_orders() {
        // dihedral orders 2m and symmetric group order 24
        let cases: Vec<(Arc<CoxeterSystem>, usize)> = vec![
            (system(&[vec![1, 3], vec![3, 1]]), 6),
            (system(&[vec![1, 4], vec![4, 1]]), 8),
            (system(&[vec![1, 6], vec![6, 1]]), 12),
            (system(&[vec![1, 7], vec![7, 1]]), 14),
            (system(&[vec![1, 3, 2], vec![3, 1, 3], vec![2, 3, 1]]), 24),
        ];
        for (w, order) in cases {
            let e = enumerate_elements(&w, 100, 100_000);
            assert!(!e.truncated);
            assert_eq!(e.len(), order);
        }
    }

    #[test]
    fn icosahedral_group_order_120() {
        let h3 = system(&[vec![1, 5, 2], vec![5, 1, 3], vec![2, 3, 1]]);
        let e = enumerate_elements(&h3, 100, 100_000);
        assert!(!e.truncated);
        assert_eq!(e.len(), 120);
    }

    #[test]
    fn affine_growth_series() {
        // affine rank-3 system with all bonds 3: level sizes 1,3,6,9,12,...
        let w = system(&[vec![1, 3, 3], vec![3, 1, 3], vec![3, 3, 1]]);
        assert_eq!(enumerate_elements(&w, 3, 100_000).len(), 19);
        assert_eq!(enumerate_elements(&w, 4, 100_000).len(), 31);
        assert_eq!(enumerate_elements(&w, 6, 100_000).len(), 64);
        assert_eq!(enumerate_elements(&w, 0, 100_000).len(), 1);
    }

    #[test]
    fn budget_exhaustion_is_flagged() {
        let w = system(&[vec![1, 0], vec![0, 1]]);
        let e = enumerate_elements(&w, 50, 10);
        assert!(e.truncated);
        assert_eq!(e.len(), 10);
        let full = enumerate_elements(&w, 5, 1000);
        assert!(!full.truncated);
        assert_eq!(full.len(), 11); // 1 + 2 per level in infinite dihedral
    }

    #[test]
    fn positive_root_counts_in_finite_groups() {
        let cases: Vec<(Arc<CoxeterSystem>, usize)> = vec![
            (system(&[vec![1, 3], vec![3, 1]]), 3),
            (system(&[vec![1, 4], vec![4, 1]]), 4),
            (system(&[vec![1, 6], vec![6, 1]]), 6),
            (system(&[vec![1, 3, 2], vec![3, 1, 3], vec![2, 3, 1]]), 6),
            (system(&[vec![1, 5, 2], vec![5, 1, 3], vec![2, 3, 1]]), 15),
        ];
        for (w, count) in cases {
            let r = enumerate_positive_roots(&w, 100, 100_000);
            assert!(!r.truncated);
            assert_eq!(r.len(), count);
        }
    }

    #[test]
    fn root_depth_levels_match_orbit_structure() {
        // icosahedral depth profile: 3,3,3,2,2,1,1 new roots per level
        let h3 = system(&[vec![1, 5, 2], vec![5, 1, 3], vec![2, 3, 1]]);
        let sizes: Vec<usize> = (0..7)
            .map(|d| enumerate_positive_roots(&h3, d, 100_000).len())
            .collect();
        assert_eq!(sizes, vec![3, 6, 9, 11, 13, 14, 15]);
    }

    #[test]
    fn enumerated_roots_are_positive_units() {
        let w = system(&[vec![1, 4, 2], vec![4, 1, 4], vec![2, 4, 1]]);
        let roots = enumerate_positive_roots(&w, 4, 10_000);
        assert!(!roots.truncated);
        for alpha in &roots.items {
            assert_eq!(root_sign(alpha), Ok(RootSign::Positive));
            assert_eq!(
                w.bilinear_form(alpha, alpha),
                crate::field::ExactReal::one(w.field())
            );
        }
    }

    #[test]
    fn restricted_enumeration_gives_parabolic_subgroup() {
        // in the rank-3 system with bonds (3,2;3), generators {0,1} span
        // a 6-element dihedral parabolic
        let w = system(&[vec![1, 3, 2], vec![3, 1, 3], vec![2, 3, 1]]);
        let sub = enumerate_elements_restricted(&w, &[0, 1], 100, 10_000);
        assert!(!sub.truncated);
        assert_eq!(sub.len(), 6);
        let roots = enumerate_positive_roots_restricted(&w, &[0, 1], 100, 10_000);
        assert_eq!(roots.len(), 3);
    }

    #[test]
    fn deterministic_order() {
        let w = system(&[vec![1, 3, 3], vec![3, 1, 3], vec![3, 3, 1]]);
        let a = enumerate_elements(&w, 4, 100_000);
        let b = enumerate_elements(&w, 4, 100_000);
        let words_a: Vec<Vec<u8>> = a.items.iter().map(|x| x.word().to_vec()).collect();
        let words_b: Vec<Vec<u8>> = b.items.iter().map(|x| x.word().to_vec()).collect();
        assert_eq!(words_a, words_b);
    }
}
