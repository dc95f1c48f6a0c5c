//! Upper and lower bounds for the largest intersecting set of
//! hyperplanes: exact finite-parabolic maxima, the palette of root
//! pairings, a Ramsey-type upper bound, branch-and-bound clique search
//! for certified lower bounds, and the equal-pairing Gram rank check.

use crate::element::GroupElement;
use crate::enumerate::{
    enumerate_elements_restricted, enumerate_positive_roots, enumerate_positive_roots_restricted,
};
use crate::field::{CycloField, ExactReal, Sign};
use crate::incidence::{intersects_interior, is_intersecting_set, Hyperplane};
use crate::root::RootVector;
use crate::system::CoxeterSystem;
use num_rational::BigRational;
use serde::Serialize;
use std::cmp::Ordering;
use std::sync::Arc;
use thiserror::Error;

/// Element count cap for the parabolic confirmation BFS; positive
/// definiteness guarantees termination, so exceeding this is a bug.
const PARABOLIC_BFS_BUDGET: usize = 1_000_000;

/// Results above this magnitude are reported as Overflow.
const BOUND_CAP: u128 = u128::MAX / 4;

// ----------------------------------------------------------- parabolics

/// One finite standard parabolic subgroup: the generating subset, its
/// order, and its longest element with length and weight.
#[derive(Clone, Debug, Serialize)]
pub struct ParabolicInfo {
    /// 1-based generator indices
    pub subset: Vec<u32>,
    pub order: u64,
    /// 1-based word of the longest element
    pub longest_word: Vec<u32>,
    pub length: usize,
    pub weight: u64,
    /// number of BFS levels below the longest element (max root depth
    /// within the subsystem is bounded by this)
    pub depth: usize,
}

/// Whether the Gram submatrix on the subset is positive definite,
/// decided by exact elimination: symmetric elimination without
/// pivoting succeeds with all pivots positive iff all leading
/// principal minors are positive.
fn gram_positive_definite(system: &CoxeterSystem, subset: &[usize]) -> bool {
    let k = subset.len();
    let mut m: Vec<Vec<ExactReal>> = subset
        .iter()
        .map(|&s| {
            subset
                .iter()
                .map(|&t| system.gram_entry(s, t).clone())
                .collect()
        })
        .collect();
    for i in 0..k {
        if m[i][i].sign() != Sign::Positive {
            return false;
        }
        let inv = m[i][i].inv().expect("positive pivot is invertible");
        for r in (i + 1)..k {
            if m[r][i].is_zero() {
                continue;
            }
            let f = m[r][i].mul(&inv);
            let (top, rest) = m.split_at_mut(r);
            let pivot = &top[i];
            let row = &mut rest[0];
            for (entry, p) in row.iter_mut().zip(pivot.iter()).skip(i) {
                *entry = entry.sub(&f.mul(p));
            }
        }
    }
    true
}

/// Enumerate all finite standard parabolic subgroups. Finiteness is
/// decided by positive definiteness of the Gram submatrix and then
/// confirmed by BFS; the two must agree, and the BFS must find a
/// unique top element whose descents cover the subset, with length
/// equal to the subsystem's positive-root count.
pub fn finite_parabolics(system: &Arc<CoxeterSystem>) -> Vec<ParabolicInfo> {
    let rank = system.rank();
    assert!(rank <= 24, "subset enumeration is exponential in rank");
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << rank) {
        let subset: Vec<usize> = (0..rank).filter(|s| mask >> s & 1 == 1).collect();
        if subset.is_empty() {
            out.push(ParabolicInfo {
                subset: Vec::new(),
                order: 1,
                longest_word: Vec::new(),
                length: 0,
                weight: 0,
                depth: 0,
            });
            continue;
        }
        if !gram_positive_definite(system, &subset) {
            continue;
        }
        let elems = enumerate_elements_restricted(
            system,
            &subset,
            PARABOLIC_BFS_BUDGET,
            PARABOLIC_BFS_BUDGET,
        );
        assert!(
            !elems.truncated,
            "positive-definite subset must generate a finite subgroup"
        );
        let max_len = elems.items.iter().map(|w| w.length()).max().unwrap();
        let top: Vec<&GroupElement> = elems
            .items
            .iter()
            .filter(|w| w.length() == max_len)
            .collect();
        assert_eq!(top.len(), 1, "finite subgroup has a unique longest element");
        let w_i = top[0];
        for &s in &subset {
            assert!(
                w_i.right_descent(s),
                "longest element must have every subset generator as a descent"
            );
        }
        let roots = enumerate_positive_roots_restricted(
            system,
            &subset,
            PARABOLIC_BFS_BUDGET,
            PARABOLIC_BFS_BUDGET,
        );
        assert!(!roots.truncated);
        assert_eq!(
            w_i.length(),
            roots.len(),
            "longest length must equal the positive-root count"
        );
        out.push(ParabolicInfo {
            subset: subset.iter().map(|&s| s as u32 + 1).collect(),
            order: elems.len() as u64,
            longest_word: w_i.word().iter().map(|&s| s as u32 + 1).collect(),
            length: w_i.length(),
            weight: w_i.weight(),
            depth: max_len.saturating_sub(1),
        });
    }
    out
}

/// Largest weight of a longest element over finite standard parabolics.
pub fn n_weighted(system: &Arc<CoxeterSystem>) -> u64 {
    finite_parabolics(system)
        .iter()
        .map(|p| p.weight)
        .max()
        .unwrap_or(0)
}

/// Largest length of a longest element over finite standard parabolics
/// (the all-weights-one specialization).
pub fn n_unweighted(system: &Arc<CoxeterSystem>) -> u64 {
    finite_parabolics(system)
        .iter()
        .map(|p| p.length as u64)
        .max()
        .unwrap_or(0)
}

// ------------------------------------------------------------- palette

/// The palette of pairing values strictly between -1 and 1 observed
/// among positive roots, with the depth bookkeeping needed to judge
/// how settled the observation is.
#[derive(Clone, Debug, Serialize)]
pub struct ColReport {
    /// distinct values, ascending
    pub values: Vec<ExactReal>,
    /// last depth at which a new value appeared (0 = none ever)
    pub last_new_depth: usize,
    /// set when no new value appeared for at least 3 consecutive
    /// depths; a heuristic signal, not a completeness proof
    pub stabilized_at: Option<usize>,
    pub max_depth: usize,
    pub truncated: bool,
}

/// Collect pairing values in (-1, 1) over positive roots enumerated to
/// depth max_depth - 1, tracking the depth at which each value first
/// appeared. Depth d of the report therefore sees exactly the pairs of
/// roots wich depth at most d - 1; at depth 1 these are the pairs of
/// simple roots.
pub fn col_set(system: &Arc<CoxeterSystem>, max_depth: usize, budget: usize) -> ColReport {
    assert!(max_depth >= 1, "palette depth must be at least 1");
    let one = ExactReal::one(system.field());
    let neg_one = one.neg();
    let mut values: Vec<ExactReal> = Vec::new();
    let mut last_new_depth = 0usize;
    let mut truncated = false;
    let mut prev_count = 0usize;
    for d in 1..=max_depth {
        let roots = enumerate_positive_roots(system, d - 1, budget);
        truncated |= roots.truncated;
        let roots = roots.items;
        let mut added = false;
        for j in prev_count..roots.len() {
            for i in 0..j {
                let b = system.bilinear_form(&roots[i], &roots[j]);
                if b.cmp_real(&neg_one) == Ordering::Greater && b.cmp_real(&one) == Ordering::Less {
                    match values.binary_search_by(|v| v.cmp_real(&b)) {
                        Ok(_) => {}
                        Err(pos) => {
                            values.insert(pos, b);
                            added = true;
                        }
                    }
                }
            }
        }
        if added {
            last_new_depth = d;
        }
        prev_count = roots.len();
    }
    let stabilized_at = if max_depth >= last_new_depth + 3 {
        Some(last_new_depth)
    } else {
        None
    };
    ColReport {
        values,
        last_new_depth,
        stabilized_at,
        max_depth,
        truncated,
    }
}

// -------------------------------------------------------------- Ramsey

/// An integer bound that may exceed the representable cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value")]
pub enum Bound {
    Finite(u128),
    Overflow,
}

impl Bound {
    pub fn finite(self) -> Option<u128> {
        match self {
            Bound::Finite(v) => Some(v),
            Bound::Overflow => None,
        }
    }

    fn map(self, f: impl FnOnce(u128) -> Option<u128>) -> Bound {
        match self {
            Bound::Finite(v) => match f(v) {
                Some(w) if w <= BOUND_CAP => Bound::Finite(w),
                _ => Bound::Overflow,
            },
            Bound::Overflow => Bound::Overflow,
        }
    }
}

/// binom(n, k) with overflow detection.
fn checked_binomial(n: u128, k: u128) -> Option<u128> {
    let k = k.min(n - k.min(n));
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)?;
        acc /= i + 1; // exact at every step: product of j consecutive integers is divisible by j!
    }
    Some(acc)
}

/// Two-color bound: a complete graph on binom(a+b-2, a-1) vertices
/// forces a red clique of size a or a blue clique of size b (the
/// closed form of the pigeonhole recurrence).
fn two_color_upper(a: u128, b: u128) -> Option<u128> {
    checked_binomial(a + b - 2, a - 1)
}

/// Upper bound for the m-color Ramsey number: the least size forcing a
/// monochromatic complete subgraph on l vertices. Computed by merging
/// colors one at a time into the two-color bound; always a valid upper
/// bound, never a table lookup.
pub fn ramsey_upper(l: u64, m: u64) -> Bound {
    assert!(l >= 1 && m >= 1, "Ramsey parameters must be positive");
    if l == 1 {
        return Bound::Finite(1);
    }
    let mut acc: u128 = l as u128; // one color: need l vertices
    for _ in 1..m {
        match two_color_upper(l as u128, acc) {
            Some(v) if v <= BOUND_CAP => acc = v,
            _ => return Bound::Overflow,
        }
    }
    Bound::Finite(acc)
}

/// Upper bound report for the largest intersecting set.
#[derive(Clone, Debug, Serialize)]
pub struct NPrimeUpper {
    pub palette_size: usize,
    /// R(rank + 2; palette size); Finite(1) marker unused when palette empty
    pub ramsey: Bound,
    /// bound on the largest intersecting-set size
    pub bound: Bound,
    /// bound multiplied by the largest generator weight
    pub weighted: Bound,
    /// true when the palette had not stabilized at the probed depth,
    /// so the bound may rest on an incomplete palette
    pub provisional: bool,
}

/// Derive the intersecting-set upper bound from the palette at the
/// given depth: any such set, edge-colored by pairing values, avoids a
/// monochromatic clique of size rank + 2 (an equal-pairing family that
/// large cannot embed in rank dimensions), so its size is below the
/// Ramsey bound. An empty palette means no two distinct hyperplanes
/// ever intersect inside the cone, giving bound 1 directly.
pub fn n_prime_upper(system: &Arc<CoxeterSystem>, col_depth: usize, budget: usize) -> NPrimeUpper {
    let col = col_set(system, col_depth, budget);
    let m = col.values.len();
    let lm = system.max_weight() as u128;
    let (ramsey, bound) = if m == 0 {
        (Bound::Finite(1), Bound::Finite(1))
    } else {
        let r = ramsey_upper(system.rank() as u64 + 2, m as u64);
        (r, r.map(|v| Some(v - 1)))
    };
    NPrimeUpper {
        palette_size: m,
        ramsey,
        bound,
        weighted: bound.map(|v| v.checked_mul(lm)),
        provisional: col.stabilized_at.is_none() || col.truncated,
    }
}

// -------------------------------------------------------------- clique

/// Result of the maximum-clique search over hyperplanes at bounded
/// depth. When exhausted is true the size is the exact maximum for the
/// probed depth and hence a certified lower bound overall.
#[derive(Clone, Debug, Serialize)]
pub struct CliqueResult {
    pub size: usize,
    pub witness: Vec<Hyperplane>,
    pub exhausted: bool,
    pub depth: usize,
    pub vertex_count: usize,
}

struct CliqueSearch<'a> {
    adj: &'a [Vec<bool>],
    best: Vec<usize>,
    nodes: usize,
    budget: usize,
}

/// Greedy coloring of the candidate list; returns candidates reordered
/// class by class with their 1-based class numbers ascending. The class
/// number of a vertex bounds any clique inside the prefix ending at it.
fn color_sort(p: &[usize], adj: &[Vec<bool>]) -> (Vec<usize>, Vec<usize>) {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in p {
        match classes
            .iter_mut()
            .find(|class| class.iter().all(|&u| !adj[v][u]))
        {
            Some(class) => class.push(v),
            None => classes.push(vec![v]),
        }
    }
    let mut order = Vec::with_capacity(p.len());
    let mut colors = Vec::with_capacity(p.len());
    for (ci, class) in classes.iter().enumerate() {
        for &v in class {
            order.push(v);
            colors.push(ci + 1);
        }
    }
    (order, colors)
}

impl CliqueSearch<'_> {
    /// Returns false when the node budget ran out inside this subtree.
    fn expand(&mut self, r: &mut Vec<usize>, p: &[usize]) -> bool {
        if self.nodes >= self.budget {
            return false;
        }
        self.nodes += 1;
        if p.is_empty() {
            if r.len() > self.best.len() {
                self.best = r.clone();
            }
            return true;
        }
        let (order, colors) = color_sort(p, self.adj);
        for i in (0..order.len()).rev() {
            // colors ascend with i, so once the bound fails here it
            // fails for every remaining candidate
            if r.len() + colors[i] <= self.best.len() {
                return true;
            }
            let v = order[i];
            r.push(v);
            let next: Vec<usize> = order[..i]
                .iter()
                .copied()
                .filter(|&u| self.adj[v][u])
                .collect();
            let ok = if next.is_empty() {
                if r.len() > self.best.len() {
                    self.best = r.clone();
                }
                true
            } else {
                self.expand(r, &next)
            };
            r.pop();
            if !ok {
                return false;
            }
        }
        true
    }
}

/// Exact maximum intersecting set among hyperplanes of positive roots
/// up to max_depth, by branch and bound with greedy-coloring pruning.
pub fn max_intersecting_clique(
    system: &Arc<CoxeterSystem>,
    max_depth: usize,
    budget: usize,
) -> CliqueResult {
    max_intersecting_clique_seeded(system, max_depth, budget, &[])
}

/// Clique search constrained to supersets of the given seed (which
/// must itself be intersecting and consist of hyperplanes visible at
/// this depth). The unseeded search is the special case of an empty
/// seed.
pub fn max_intersecting_clique_seeded(
    system: &Arc<CoxeterSystem>,
    max_depth: usize,
    budget: usize,
    seed: &[Hyperplane],
) -> CliqueResult {
    let roots = enumerate_positive_roots(system, max_depth, budget.max(1_000_000));
    assert!(!roots.truncated, "root enumeration exceeded its budget");
    let mut planes: Vec<Hyperplane> = roots.items.into_iter().map(Hyperplane::from_root).collect();
    planes.sort();
    let n = planes.len();

    let adj: Vec<Vec<bool>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| i != j && intersects_interior(&planes[i], &planes[j]))
                .collect()
        })
        .collect();

    let seed_idx: Vec<usize> = seed
        .iter()
        .map(|h| {
            planes
                .iter()
                .position(|p| p == h)
                .expect("seed hyperplane not visible at this depth")
        })
        .collect();
    for (a, &i) in seed_idx.iter().enumerate() {
        for &j in &seed_idx[a + 1..] {
            assert!(adj[i][j], "seed must be an intersecting set");
        }
    }

    // candidates: common neighbors of the whole seed, degree-descending
    let degree: Vec<usize> = (0..n)
        .map(|v| adj[v].iter().filter(|&&x| x).count())
        .collect();
    let mut candidates: Vec<usize> = (0..n)
        .filter(|&v| !seed_idx.contains(&v) && seed_idx.iter().all(|&s| adj[s][v]))
        .collect();
    candidates.sort_by(|&a, &b| degree[b].cmp(&degree[a]).then(a.cmp(&b)));

    let mut search = CliqueSearch {
        adj: &adj,
        best: seed_idx.clone(),
        nodes: 0,
        budget,
    };
    let mut r = seed_idx.clone();
    let exhausted = search.expand(&mut r, &candidates);

    let mut witness: Vec<Hyperplane> = search.best.iter().map(|&v| planes[v].clone()).collect();
    witness.sort();
    debug_assert!(is_intersecting_set(&witness));
    CliqueResult {
        size: witness.len(),
        witness,
        exhausted,
        depth: max_depth,
        vertex_count: n,
    }
}

// ----------------------------------------------------------- Gram rank

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GramError {
    #[error("pairings are not all equal: found two distinct off-diagonal values")]
    NonConstantOffDiagonal,
}

/// Rank of the Gram matrix of an equal-pairing family, with the value
/// predicted by the closed form: k - 1 when the common pairing is
/// -1/(k-1), k otherwise (rank 1 when the pairing is 1).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GramCheck {
    pub size: usize,
    pub rank: usize,
    pub expected_rank: usize,
    pub agree: bool,
}

fn field_matrix_rank(mut m: Vec<Vec<ExactReal>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0usize;
    for col in 0..cols {
        let Some(pivot_row) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot_row);
        let inv = m[rank][col].inv().expect("nonzero pivot");
        for r in (rank + 1)..rows {
            if m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].mul(&inv);
            let (top, rest) = m.split_at_mut(r);
            let pivot = &top[rank];
            let row = &mut rest[0];
            for (entry, p) in row.iter_mut().zip(pivot.iter()).skip(col) {
                *entry = entry.sub(&f.mul(p));
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Rank of the coordinate matrix of a root family (exact elimination).
pub fn vector_rank(roots: &[RootVector]) -> usize {
    let m: Vec<Vec<ExactReal>> = roots.iter().map(|r| r.coords().to_vec()).collect();
    field_matrix_rank(m)
}

fn expected_equal_pairing_rank(k: usize, is_one: bool, is_critical: bool) -> usize {
    if k == 0 {
        0
    } else if is_one {
        1
    } else if k >= 2 && is_critical {
        k - 1
    } else {
        k
    }
}

/// Check the rank formula on an actual family of roots whose pairwise
/// pairings are all equal: compute the Gram rank by exact elimination
/// and compare with the closed form.
pub fn gram_rank_check(roots: &[RootVector]) -> Result<GramCheck, GramError> {
    let k = roots.len();
    if k == 0 {
        return Ok(GramCheck {
            size: 0,
            rank: 0,
            expected_rank: 0,
            agree: true,
        });
    }
    let system = roots[0].system().clone();
    let gram: Vec<Vec<ExactReal>> = roots
        .iter()
        .map(|a| roots.iter().map(|b| system.bilinear_form(a, b)).collect())
        .collect();
    let mut common: Option<ExactReal> = None;
    for (i, row) in gram.iter().enumerate() {
        for (j, value) in row.iter().enumerate() {
            if i == j {
                continue;
            }
            match &common {
                None => common = Some(value.clone()),
                Some(a) => {
                    if value != a {
                        return Err(GramError::NonConstantOffDiagonal);
                    }
                }
            }
        }
    }
    let (is_one, is_critical) = match &common {
        None => (false, false), // k = 1
        Some(a) => {
            let one = ExactReal::one(system.field());
            let critical = ExactReal::from_rational(
                system.field(),
                BigRational::new((-1).into(), (k as i64 - 1).into()),
            );
            (*a == one, k >= 2 && *a == critical)
        }
    };
    let expected_rank = expected_equal_pairing_rank(k, is_one, is_critical);
    let rank = field_matrix_rank(gram);
    Ok(GramCheck {
        size: k,
        rank,
        expected_rank,
        agree: rank == expected_rank,
    })
}

/// The same rank computation on the synthetic k-by-k matrix with unit
/// diagonal and a constant rational off-diagonal value, independent of
/// any root system (such a matrix need not be realizable by roots).
pub fn equal_a_rank(k: usize, a: &BigRational) -> GramCheck {
    let field = CycloField::new(2); // rational scalars
    let one = ExactReal::one(&field);
    let av = ExactReal::from_rational(&field, a.clone());
    let m: Vec<Vec<ExactReal>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| if i == j { one.clone() } else { av.clone() })
                .collect()
        })
        .collect();
    let is_one = *a == BigRational::from_integer(1.into());
    let is_critical = k >= 2 && *a == BigRational::new((-1).into(), (k as i64 - 1).into());
    let expected_rank = expected_equal_pairing_rank(k, is_one, is_critical);
    let rank = field_matrix_rank(m);
    GramCheck {
        size: k,
        rank,
        expected_rank,
        agree: rank == expected_rank,
    }
}

// -------------------------------------------------------------- report

/// The combined bound report for one system.
#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub n_weighted: u64,
    pub n_unweighted: u64,
    pub max_generator_weight: u64,
    pub parabolics: Vec<ParabolicInfo>,
    pub col: ColReport,
    pub n_prime: NPrimeUpper,
    pub clique: CliqueResult,
    /// clique lower bound consistent with the Ramsey upper bound;
    /// false signals an under-explored palette, not unsound search
    pub coherent: bool,
}

/// Assemble the full report: parabolic maxima, palette, Ramsey upper
/// bound, and clique lower bound at the given depths.
pub fn bound_report(
    system: &Arc<CoxeterSystem>,
    col_depth: usize,
    clique_depth: usize,
    clique_budget: usize,
) -> BoundReport {
    let parabolics = finite_parabolics(system);
    let n_weighted = parabolics.iter().map(|p| p.weight).max().unwrap_or(0);
    let n_unweighted = parabolics
        .iter()
        .map(|p| p.length as u64)
        .max()
        .unwrap_or(0);
    let col = col_set(system, col_depth, 1_000_000);
    let n_prime = n_prime_upper(system, col_depth, 1_000_000);
    let clique = max_intersecting_clique(system, clique_depth, clique_budget);
    let coherent = match n_prime.bound {
        Bound::Finite(b) => clique.size as u128 <= b,
        Bound::Overflow => true,
    };
    BoundReport {
        n_weighted,
        n_unweighted,
        max_generator_weight: system.max_weight(),
        parabolics,
        col,
        n_prime,
        clique,
        coherent,
    }
}
