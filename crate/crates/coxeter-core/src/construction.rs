//! Inductive construction of intersecting hyperplane sets along a
//! gallery from xC to xyC, with every claimed property of the
//! construction checked at every step. A check failure aborts with a
//! serialized witness; the underlying theory guarantees the checks can
//! only fail on an implementation bug, so violations are always
//! actionable.

use crate::element::{element_from_word, GroupElement};
use crate::enumerate::Enumeration;
use crate::incidence::{
    intersects_interior, is_intersecting_set, reflect_hyperplane, separates, Hyperplane,
};
use crate::system::CoxeterSystem;
use serde::Serialize;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SequenceError {
    #[error("indices must be strictly increasing")]
    IndicesNotIncreasing,
    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("y_word is not reduced")]
    NonReducedWord,
}

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error(transparent)]
    Sequence(#[from] SequenceError),
    #[error("deletion condition fails at step {n}")]
    SequenceInvalid { n: usize },
    #[error(transparent)]
    Violation(#[from] InvariantViolation),
}

/// A property check failed during the construction. Carries everything
/// needed to reproduce: the instance, the step, and the offending data.
#[derive(Debug, Clone, Error, Serialize)]
#[error("invariant '{property}' violated at step {n}")]
pub struct InvariantViolation {
    pub n: usize,
    pub property: String,
    pub witness: ViolationWitness,
}

#[derive(Debug, Clone, Serialize)]
pub struct ViolationWitness {
    /// 1-based word of x
    pub x: Vec<u32>,
    /// 1-based word of y
    pub y_word: Vec<u32>,
    /// 1-based positions into y_word
    pub indices: Vec<usize>,
    /// offending hyperplanes/elements, serialized
    pub detail: serde_json::Value,
}

/// Check the deletion-descent condition: for each chosen position, the
/// product of x with the prefix of y_word before that position, with
/// all earlier chosen positions omitted, must have the generator at
/// that position as a right descent. Returns Ok(false) when the
/// condition fails, Err on malformed input.
pub fn validate_sequence(
    x: &GroupElement,
    y_word: &[usize],
    indices: &[usize],
) -> Result<bool, SequenceError> {
    check_shape(x, y_word, indices)?;
    Ok(first_failing_step(x, y_word, indices).is_none())
}

fn check_shape(x: &GroupElement, y_word: &[usize], indices: &[usize]) -> Result<(), SequenceError> {
    for pair in indices.windows(2) {
        if pair[0] >= pair[1] {
            return Err(SequenceError::IndicesNotIncreasing);
        }
    }
    for &i in indices {
        if i == 0 || i > y_word.len() {
            return Err(SequenceError::IndexOutOfRange {
                index: i,
                len: y_word.len(),
            });
        }
    }
    if element_from_word(x.system(), y_word).length() != y_word.len() {
        return Err(SequenceError::NonReducedWord);
    }
    Ok(())
}

/// Walk the deleted-word products; return the first n (1-based) whose
/// descent test fails, or None if all pass.
fn first_failing_step(x: &GroupElement, y_word: &[usize], indices: &[usize]) -> Option<usize> {
    let mut u = x.clone();
    let mut next = 0; // position into indices
    for (pos, &s) in y_word.iter().enumerate() {
        if next < indices.len() && indices[next] == pos + 1 {
            if !u.right_descent(s) {
                return Some(next + 1);
            }
            next += 1; // letter omitted, u unchanged
        } else {
            u = u.mul_gen(s);
        }
        if next == indices.len() {
            break;
        }
    }
    None
}

/// The gallery data derived from (x, y_word, indices): per step n the
/// prefix element x_n, the reflection sigma_n that crosses the wall at
/// position i_n, its hyperplane H_n, and the partial products
/// e_n = sigma_n ... sigma_1 (with e_0 = identity).
pub struct PathContext {
    system: Arc<CoxeterSystem>,
    x: GroupElement,
    y_word: Vec<usize>,
    indices: Vec<usize>,
    x_n: Vec<GroupElement>,
    sigma: Vec<GroupElement>,
    h: Vec<Hyperplane>,
    /// e[n] = sigma_n ... sigma_1; e[0] = identity
    e: Vec<GroupElement>,
}

impl PathContext {
    pub fn system(&self) -> &Arc<CoxeterSystem> {
        &self.system
    }

    pub fn p(&self) -> usize {
        self.indices.len()
    }

    pub fn x(&self) -> &GroupElement {
        &self.x
    }

    pub fn y_word(&self) -> &[usize] {
        &self.y_word
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    /// x_n = x s_1 ... s_{i_n - 1}; n is 1-based.
    pub fn x_at(&self, n: usize) -> &GroupElement {
        &self.x_n[n - 1]
    }

    pub fn sigma_at(&self, n: usize) -> &GroupElement {
        &self.sigma[n - 1]
    }

    pub fn h_at(&self, n: usize) -> &Hyperplane {
        &self.h[n - 1]
    }

    /// e_n; accepts n = 0.
    pub fn e_at(&self, n: usize) -> &GroupElement {
        &self.e[n]
    }

    fn witness(&self, detail: serde_json::Value) -> ViolationWitness {
        ViolationWitness {
            x: self.x.word().iter().map(|&g| g as u32 + 1).collect(),
            y_word: self.y_word.iter().map(|&g| g as u32 + 1).collect(),
            indices: self.indices.clone(),
            detail,
        }
    }

    fn violation(&self, n: usize, property: &str, detail: serde_json::Value) -> InvariantViolation {
        InvariantViolation {
            n,
            property: property.to_string(),
            witness: self.witness(detail),
        }
    }
}

/// Build the gallery context, validating the sequence and checking the
/// side relations every step hyperplane must satisfy: H_n separates
/// x_1C from e_{n-1}C; x_1C and e_nC lie on the same side of H_n; and
/// H_n keeps x_1C with x_nC while splitting off x_n s_{i_n} C.
// The error carries a full serializable witness by design; boxing it
// would only obscure the reporting path it exists for.
#[allow(clippy::result_large_err)]
pub fn build_context(
    x: &GroupElement,
    y_word: &[usize],
    indices: &[usize],
) -> Result<PathContext, ConstructionError> {
    check_shape(x, y_word, indices)?;
    if let Some(n) = first_failing_step(x, y_word, indices) {
        return Err(ConstructionError::SequenceInvalid { n });
    }

    let system = x.system().clone();
    let p = indices.len();
    let mut x_n = Vec::with_capacity(p);
    let mut sigma = Vec::with_capacity(p);
    let mut h = Vec::with_capacity(p);
    let mut e = vec![GroupElement::identity(&system)];

    // walk prefixes of y_word once, snapshotting at each chosen index
    let mut prefix = x.clone();
    let mut pos = 0usize;
    for (n, &i) in indices.iter().enumerate() {
        while pos + 1 < i {
            prefix = prefix.mul_gen(y_word[pos]);
            pos += 1;
        }
        let s = y_word[i - 1];
        let xn = prefix.clone();
        let sn = xn.mul_gen(s).mul(&xn.inverse());
        let hn = Hyperplane::from_root(xn.image_of_simple(s));
        let en = sn.mul(&e[n]);
        x_n.push(xn);
        sigma.push(sn);
        h.push(hn);
        e.push(en);
    }

    let ctx = PathContext {
        system,
        x: x.clone(),
        y_word: y_word.to_vec(),
        indices: indices.to_vec(),
        x_n,
        sigma,
        h,
        e,
    };

    if p == 0 {
        return Ok(ctx); // nothing deleted, nothing to check
    }
    let x1 = ctx.x_at(1).clone();
    for n in 1..=p {
        let hn = ctx.h_at(n);
        if !separates(hn, &x1, ctx.e_at(n - 1)) {
            return Err(ctx
                .violation(
                    n,
                    "step-hyperplane-separates-previous-endpoint",
                    serde_json::json!({ "h": hn }),
                )
                .into());
        }
        if separates(hn, &x1, ctx.e_at(n)) {
            return Err(ctx
                .violation(
                    n,
                    "step-hyperplane-unilateral-with-endpoint",
                    serde_json::json!({ "h": hn }),
                )
                .into());
        }
        let xn = ctx.x_at(n);
        let across = xn.mul_gen(ctx.y_word[ctx.indices[n - 1] - 1]);
        if separates(hn, &x1, xn) || !separates(hn, &x1, &across) {
            return Err(ctx
                .violation(
                    n,
                    "step-hyperplane-splits-path-edge",
                    serde_json::json!({ "h": hn }),
                )
                .into());
        }
    }

    Ok(ctx)
}

/// One step of the inductive construction: the cascade blocks
/// A_0, ..., A_{l-1} (first block by the separation test, later blocks
/// by failure to meet the reflected previous block), the untouched part
/// B, the diagnostic dual block B_sigma, and the resulting set Q_n.
#[derive(Clone, Debug, Serialize)]
pub struct ConstructionStep {
    pub n: usize,
    pub cascade: Vec<Vec<Hyperplane>>,
    pub b: Vec<Hyperplane>,
    pub b_sigma: Vec<Hyperplane>,
    pub q: Vec<Hyperplane>,
}

fn sorted(mut planes: Vec<Hyperplane>) -> Vec<Hyperplane> {
    planes.sort();
    planes
}

/// Run the inductive construction over the whole context, producing
/// Q_1, ..., Q_p and checking at every step: the five step properties
/// (cardinality n; pairwise intersecting; contains H_n; every member
/// separates x_1C from x_n s_{i_n} C; no member separates x_1C from
/// e_nC) plus the structural facts the induction relies on (H_n fresh
/// and meeting all of Q_{n-1}; no recrossing; reflected blocks leave
/// Q_{n-1}; the dual block B_sigma avoids the cascade).
#[allow(clippy::result_large_err)] // the violation witness is the payload
pub fn construct_chain(ctx: &PathContext) -> Result<Vec<ConstructionStep>, InvariantViolation> {
    let p = ctx.p();
    let mut steps: Vec<ConstructionStep> = Vec::with_capacity(p);
    if p == 0 {
        return Ok(steps);
    }
    let x1 = ctx.x_at(1).clone();

    let mut q_prev: Vec<Hyperplane> = Vec::new();
    for n in 1..=p {
        let hn = ctx.h_at(n).clone();
        let xn = ctx.x_at(n);
        let sn = ctx.sigma_at(n);
        let en = ctx.e_at(n);
        let edge_target = xn.mul_gen(ctx.y_word[ctx.indices[n - 1] - 1]);

        let (cascade, b, b_sigma, q_n) = if n == 1 {
            (Vec::new(), Vec::new(), Vec::new(), vec![hn.clone()])
        } else {
            // structural diagnostics on Q_{n-1}
            if q_prev.contains(&hn) {
                return Err(ctx.violation(n, "fresh-hyperplane", serde_json::json!({ "h": hn })));
            }
            for plane in &q_prev {
                if separates(plane, xn, &edge_target) {
                    return Err(ctx.violation(
                        n,
                        "no-recrossing",
                        serde_json::json!({ "p": plane }),
                    ));
                }
                if !separates(plane, &x1, xn) {
                    return Err(ctx.violation(
                        n,
                        "separates-start",
                        serde_json::json!({ "p": plane }),
                    ));
                }
                if !intersects_interior(&hn, plane) {
                    return Err(ctx.violation(
                        n,
                        "meets-previous-set",
                        serde_json::json!({ "p": plane }),
                    ));
                }
            }

            // cascade: first block by separation, later blocks by
            // failure to meet the reflection of the previous block
            let mut cascade: Vec<Vec<Hyperplane>> = Vec::new();
            let mut remaining: Vec<Hyperplane> = q_prev.clone();
            let a0: Vec<Hyperplane> = remaining
                .iter()
                .filter(|plane| separates(plane, &x1, en))
                .cloned()
                .collect();
            if !a0.is_empty() {
                remaining.retain(|plane| !a0.contains(plane));
                cascade.push(a0);
                loop {
                    let last_reflected: Vec<Hyperplane> = cascade
                        .last()
                        .unwrap()
                        .iter()
                        .map(|plane| reflect_hyperplane(sn, plane))
                        .collect();
                    let next: Vec<Hyperplane> = remaining
                        .iter()
                        .filter(|plane| {
                            last_reflected
                                .iter()
                                .any(|r| !intersects_interior(plane, r))
                        })
                        .cloned()
                        .collect();
                    if next.is_empty() {
                        break;
                    }
                    remaining.retain(|plane| !next.contains(plane));
                    cascade.push(next);
                }
            }
            let b = remaining;

            let a: Vec<Hyperplane> = cascade.iter().flatten().cloned().collect();
            let b_sigma: Vec<Hyperplane> = q_prev
                .iter()
                .filter(|plane| separates(&reflect_hyperplane(sn, plane), &x1, en))
                .cloned()
                .collect();
            if let Some(bad) = a.iter().find(|plane| b_sigma.contains(plane)) {
                return Err(ctx.violation(
                    n,
                    "dual-blocks-disjoint",
                    serde_json::json!({ "p": bad }),
                ));
            }

            let reflected_a: Vec<Hyperplane> = a
                .iter()
                .map(|plane| reflect_hyperplane(sn, plane))
                .collect();
            if let Some(bad) = reflected_a.iter().find(|r| q_prev.contains(r)) {
                return Err(ctx.violation(
                    n,
                    "reflected-blocks-leave-previous-set",
                    serde_json::json!({ "p": bad }),
                ));
            }

            let mut q_n = reflected_a;
            for plane in &b {
                if q_n.contains(plane) {
                    return Err(ctx.violation(n, "cardinality", serde_json::json!({ "p": plane })));
                }
            }
            q_n.extend(b.iter().cloned());
            if q_n.contains(&hn) {
                return Err(ctx.violation(n, "cardinality", serde_json::json!({ "p": hn })));
            }
            q_n.push(hn.clone());
            (cascade, b, b_sigma, sorted(q_n))
        };

        // the five step properties
        if q_n.len() != n {
            return Err(ctx.violation(n, "cardinality", serde_json::json!({ "size": q_n.len() })));
        }
        if !is_intersecting_set(&q_n) {
            // locate an offending pair for the witness
            let mut detail = serde_json::Value::Null;
            'outer: for (i, a) in q_n.iter().enumerate() {
                for bb in &q_n[i + 1..] {
                    if !intersects_interior(a, bb) {
                        detail = serde_json::json!({ "p": a, "q": bb });
                        break 'outer;
                    }
                }
            }
            return Err(ctx.violation(n, "intersecting", detail));
        }
        if !q_n.contains(&hn) {
            return Err(ctx.violation(
                n,
                "contains-step-hyperplane",
                serde_json::json!({ "h": hn }),
            ));
        }
        for plane in &q_n {
            if !separates(plane, &x1, &edge_target) {
                return Err(ctx.violation(
                    n,
                    "separates-start-from-edge-target",
                    serde_json::json!({ "p": plane }),
                ));
            }
            if separates(plane, &x1, en) {
                return Err(ctx.violation(
                    n,
                    "unilateral-with-endpoint",
                    serde_json::json!({ "p": plane }),
                ));
            }
        }

        steps.push(ConstructionStep {
            n,
            cascade,
            b,
            b_sigma,
            q: q_n.clone(),
        });
        q_prev = q_n;
    }
    Ok(steps)
}

/// Depth-first enumeration of all index sequences satisfying the
/// deletion condition, including the empty one, capped at max_p taken
/// indices per sequence. Deterministic order; budget exhaustion is
/// explicit.
pub fn enumerate_valid_sequences(
    x: &GroupElement,
    y_word: &[usize],
    max_p: usize,
    budget: usize,
) -> Enumeration<Vec<usize>> {
    debug_assert_eq!(
        element_from_word(x.system(), y_word).length(),
        y_word.len(),
        "y_word must be reduced"
    );
    let mut items: Vec<Vec<usize>> = Vec::new();
    let mut truncated = false;
    // stack of (position, element-so-far, chosen 1-based indices)
    let mut stack: Vec<(usize, GroupElement, Vec<usize>)> = vec![(0, x.clone(), Vec::new())];
    while let Some((pos, u, chosen)) = stack.pop() {
        if pos == y_word.len() {
            if items.len() >= budget {
                truncated = true;
                break;
            }
            items.push(chosen);
            continue;
        }
        let s = y_word[pos];
        if chosen.len() < max_p && u.right_descent(s) {
            let mut with = chosen.clone();
            with.push(pos + 1);
            stack.push((pos + 1, u.mul_gen(s), chosen));
            stack.push((pos + 1, u, with));
        } else {
            stack.push((pos + 1, u.mul_gen(s), chosen));
        }
    }
    items.sort();
    Enumeration { items, truncated }
}
