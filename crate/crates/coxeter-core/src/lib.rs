//! Exact computation for positively weighted Coxeter systems of finite
//! rank: the geometric representation over a real cyclotomic field,
//! Hecke-algebra structure constants in the standard basis, intersecting
//! sets of reflection hyperplanes with an inductive chain construction,
//! and upper/lower bound reports for the largest weight reachable by an
//! intersecting family.

pub mod bounds;
pub mod construction;
pub mod element;
pub mod enumerate;
pub mod field;
pub mod hecke;
pub mod incidence;
pub mod laurent;
pub mod root;
pub mod system;

pub use bounds::{
    bound_report, col_set, equal_a_rank, finite_parabolics, gram_rank_check,
    max_intersecting_clique, max_intersecting_clique_seeded, n_prime_upper, n_unweighted,
    n_weighted, ramsey_upper, vector_rank, Bound, BoundReport, CliqueResult, ColReport, GramCheck,
    GramError, NPrimeUpper, ParabolicInfo,
};
pub use construction::{
    build_context, construct_chain, enumerate_valid_sequences, validate_sequence,
    ConstructionError, ConstructionStep, InvariantViolation, PathContext, SequenceError,
};
pub use element::{element_from_word, GroupElement};
pub use enumerate::{enumerate_elements, enumerate_positive_roots, Enumeration};
pub use field::{CycloField, ExactReal, Sign};
pub use hecke::{
    aggregate_expansion, enumerate_expansion, max_f_degree, mult_by_generator, structure_constants,
    verify_bound, BoundCheck, BoundViolation, DegreeReport, ExpansionTerm, HeckeElement,
};
pub use incidence::{
    intersects_interior, is_intersecting_set, reflect_hyperplane, separates, Hyperplane,
};
pub use laurent::LaurentPoly;
pub use root::{root_sign, RootSign, RootVector, SignError};
pub use system::{Bond, ConfigError, CoxeterSystem, RunConfig};
