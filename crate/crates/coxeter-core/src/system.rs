//! Coxeter system: symmetric bond matrix, positive integer weights, and
//! the bilinear form of the geometric representation.

use crate::element::GroupElement;
use crate::field::{CycloField, ExactReal};
use crate::root::RootVector;
use num_rational::BigRational;
use serde::Deserialize;
use std::sync::Arc;
use thiserror::Error;

/// Bond order between two generators: a finite order >= 2, or infinity.
/// The diagonal is always 1 and is stored implicitly as `Finite(1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bond {
    Finite(u64),
    Infinite,
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("rank must be between 1 and 64, got {0}")]
    BadRank(usize),
    #[error("matrix must be {expected}x{expected}, got row of length {got}")]
    BadShape { expected: usize, got: usize },
    #[error("matrix entry ({row},{col}) must be 1 exactly on the diagonal")]
    BadDiagonal { row: usize, col: usize },
    #[error("matrix entry ({row},{col}) = {value} is not a valid bond order (need 0, \"inf\", or an integer >= 2)")]
    BadEntry {
        row: usize,
        col: usize,
        value: String,
    },
    #[error("matrix is not symmetric at ({row},{col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("weights must have length {expected}, got {got}")]
    BadWeights { expected: usize, got: usize },
    #[error("weight of generator {0} must be a positive integer")]
    BadWeight(usize),
    #[error(
        "generators {s} and {t} are joined by an odd bond, so a weight \
         function must give them equal weights"
    )]
    OddBondWeightMismatch { s: usize, t: usize },
    #[error("invalid config JSON: {0}")]
    Json(String),
}

/// JSON run configuration: bond matrix with 0 or "inf" for infinite
/// entries, and optional per-generator weights (default all 1).
#[derive(Debug, Deserialize)]
pub struct RunConfig {
    pub rank: usize,
    pub matrix: Vec<Vec<serde_json::Value>>,
    #[serde(default)]
    pub weights: Option<Vec<u64>>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<RunConfig, ConfigError> {
        serde_json::from_str(text).map_err(|e| ConfigError::Json(e.to_string()))
    }
}

/// A Coxeter system of finite rank with a positive integer weight on
/// each generator. Generators joined by an odd bond are conjugate and
/// must carry equal weights; construction rejects anything else, so
/// element weights are well defined on reduced words.
pub struct CoxeterSystem {
    rank: usize,
    bonds: Vec<Vec<Bond>>,
    weights: Vec<u64>,
    field: Arc<CycloField>,
    /// gram[s][t] = B(alpha_s, alpha_t) = -cos(pi / m(s,t)), -1 if infinite.
    gram: Vec<Vec<ExactReal>>,
    /// two_b[s][t] = 2 B(alpha_s, alpha_t), the reflection coefficients.
    two_b: Vec<Vec<ExactReal>>,
}

impl CoxeterSystem {
    /// Build a system from a bond matrix (entry 0 denotes infinity) and
    /// optional weights.
    pub fn new(matrix: &[Vec<u64>], weights: Option<&[u64]>) -> Result<Arc<Self>, ConfigError> {
        let rank = matrix.len();
        if rank == 0 || rank > 64 {
            return Err(ConfigError::BadRank(rank));
        }
        let mut bonds = vec![vec![Bond::Finite(1); rank]; rank];
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != rank {
                return Err(ConfigError::BadShape {
                    expected: rank,
                    got: row.len(),
                });
            }
            for (j, &m) in row.iter().enumerate() {
                if i == j {
                    if m != 1 {
                        return Err(ConfigError::BadDiagonal { row: i, col: j });
                    }
                    continue;
                }
                bonds[i][j] = match m {
                    0 => Bond::Infinite,
                    1 => {
                        return Err(ConfigError::BadEntry {
                            row: i,
                            col: j,
                            value: "1".into(),
                        })
                    }
                    m => Bond::Finite(m),
                };
            }
        }
        for (i, row) in bonds.iter().enumerate() {
            for (j, &bond) in row.iter().enumerate().skip(i + 1) {
                if bond != bonds[j][i] {
                    return Err(ConfigError::NotSymmetric { row: i, col: j });
                }
            }
        }
        let weights = match weights {
            None => vec![1u64; rank],
            Some(w) => {
                if w.len() != rank {
                    return Err(ConfigError::BadWeights {
                        expected: rank,
                        got: w.len(),
                    });
                }
                for (s, &x) in w.iter().enumerate() {
                    if x == 0 {
                        return Err(ConfigError::BadWeight(s + 1));
                    }
                }
                w.to_vec()
            }
        };
        // an odd bond makes the two generators conjugate, forcing equal
        // weights; without this no weight function takes these values
        for (i, row) in bonds.iter().enumerate() {
            for (j, &bond) in row.iter().enumerate().skip(i + 1) {
                if let Bond::Finite(m) = bond {
                    if m % 2 == 1 && weights[i] != weights[j] {
                        return Err(ConfigError::OddBondWeightMismatch { s: i + 1, t: j + 1 });
                    }
                }
            }
        }

        // Field order: lcm of 2m over all finite bonds (diagonal gives 2).
        let mut order = 2u64;
        for (i, row) in bonds.iter().enumerate() {
            for &bond in row.iter().skip(i + 1) {
                if let Bond::Finite(m) = bond {
                    order = num_integer::lcm(order, 2 * m);
                }
            }
        }
        let field = CycloField::new(order);

        let gram: Vec<Vec<ExactReal>> = bonds
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, &bond)| {
                        if i == j {
                            ExactReal::one(&field)
                        } else {
                            match bond {
                                Bond::Finite(m) => ExactReal::neg_cos_pi_over(&field, m),
                                Bond::Infinite => ExactReal::from_integer(&field, -1),
                            }
                        }
                    })
                    .collect()
            })
            .collect();
        let two = BigRational::from_integer(2.into());
        let two_b = gram
            .iter()
            .map(|row| row.iter().map(|b| b.mul_rational(&two)).collect())
            .collect();

        Ok(Arc::new(CoxeterSystem {
            rank,
            bonds,
            weights,
            field,
            gram,
            two_b,
        }))
    }

    /// Build from a parsed JSON run configuration.
    pub fn from_config(cfg: &RunConfig) -> Result<Arc<Self>, ConfigError> {
        if cfg.matrix.len() != cfg.rank {
            return Err(ConfigError::BadShape {
                expected: cfg.rank,
                got: cfg.matrix.len(),
            });
        }
        let mut matrix = Vec::with_capacity(cfg.rank);
        for (i, row) in cfg.matrix.iter().enumerate() {
            let mut out = Vec::with_capacity(row.len());
            for (j, v) in row.iter().enumerate() {
                let m = match v {
                    serde_json::Value::Number(n) => n.as_u64().ok_or(ConfigError::BadEntry {
                        row: i,
                        col: j,
                        value: n.to_string(),
                    })?,
                    serde_json::Value::String(s) if s == "inf" => 0,
                    other => {
                        return Err(ConfigError::BadEntry {
                            row: i,
                            col: j,
                            value: other.to_string(),
                        })
                    }
                };
                out.push(m);
            }
            matrix.push(out);
        }
        CoxeterSystem::new(&matrix, cfg.weights.as_deref())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    /// Bond order m(s,t); generators are 0-indexed here.
    pub fn bond(&self, s: usize, t: usize) -> Bond {
        self.bonds[s][t]
    }

    /// Weight L(s) of a generator.
    pub fn weight(&self, s: usize) -> u64 {
        self.weights[s]
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn max_weight(&self) -> u64 {
        *self.weights.iter().max().expect("rank >= 1")
    }

    /// B(alpha_s, alpha_t) for simple roots.
    pub fn gram_entry(&self, s: usize, t: usize) -> &ExactReal {
        &self.gram[s][t]
    }

    pub(crate) fn two_b(&self, s: usize, t: usize) -> &ExactReal {
        &self.two_b[s][t]
    }

    /// The simple root alpha_s as a coordinate vector.
    pub fn simple_root(self: &Arc<Self>, s: usize) -> RootVector {
        assert!(s < self.rank, "generator index out of range");
        let mut coords = vec![ExactReal::zero(&self.field); self.rank];
        coords[s] = ExactReal::one(&self.field);
        RootVector::new(self.clone(), coords)
    }

    /// The symmetric bilinear form B(u, v), computed in the basis of
    /// simple roots via the Gram matrix.
    pub fn bilinear_form(&self, u: &RootVector, v: &RootVector) -> ExactReal {
        assert_eq!(u.coords().len(), self.rank, "vector rank mismatch");
        assert_eq!(v.coords().len(), self.rank, "vector rank mismatch");
        let mut acc = ExactReal::zero(&self.field);
        for (s, cu) in u.coords().iter().enumerate() {
            if cu.is_zero() {
                continue;
            }
            for (t, cv) in v.coords().iter().enumerate() {
                if cv.is_zero() {
                    continue;
                }
                acc = acc.add(&cu.mul(cv).mul(&self.gram[s][t]));
            }
        }
        acc
    }

    /// Apply the reflection of generator s to a vector:
    /// `s v = v - 2 B(alpha_s, v) alpha_s`.
    pub fn apply_reflection(&self, s: usize, v: &RootVector) -> RootVector {
        assert!(s < self.rank, "generator index out of range");
        // 2B(alpha_s, v) = sum_t v_t * two_b[s][t]
        let mut coef = ExactReal::zero(&self.field);
        for (t, cv) in v.coords().iter().enumerate() {
            if !cv.is_zero() {
                coef = coef.add(&cv.mul(&self.two_b[s][t]));
            }
        }
        let mut coords = v.coords().to_vec();
        coords[s] = coords[s].sub(&coef);
        RootVector::new(v.system().clone(), coords)
    }

    /// The identity element.
    pub fn identity(self: &Arc<Self>) -> GroupElement {
        GroupElement::identity(self)
    }

    /// The generator s as a group element (0-indexed).
    pub fn generator(self: &Arc<Self>, s: usize) -> GroupElement {
        assert!(s < self.rank, "generator index out of range");
        GroupElement::identity(self).mul_gen(s)
    }
}

impl std::fmt::Debug for CoxeterSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "CoxeterSystem(rank={}, field order={})",
            self.rank,
            self.field.order()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Sign;

    pub(crate) fn a2() -> Arc<CoxeterSystem> {
        CoxeterSystem::new(&[vec![1, 3], vec![3, 1]], None).unwrap()
    }

    #[test]
    fn config_parsing_accepts_inf_and_zero() {
        let cfg =
            RunConfig::from_json(r#"{"rank":2,"matrix":[[1,"inf"],["inf",1]],"weights":[2,3]}"#)
                .unwrap();
        let w = CoxeterSystem::from_config(&cfg).unwrap();
        assert_eq!(w.bond(0, 1), Bond::Infinite);
        assert_eq!(w.weight(0), 2);
        assert_eq!(w.weight(1), 3);

        let cfg0 = RunConfig::from_json(r#"{"rank":2,"matrix":[[1,0],[0,1]]}"#).unwrap();
        let w0 = CoxeterSystem::from_config(&cfg0).unwrap();
        assert_eq!(w0.bond(0, 1), Bond::Infinite);
        assert_eq!(w0.weight(0), 1);
    }

    #[test]
    fn config_rejects_bad_input() {
        assert!(CoxeterSystem::new(&[vec![1, 3], vec![4, 1]], None).is_err());
        assert!(CoxeterSystem::new(&[vec![2, 3], vec![3, 1]], None).is_err());
        assert!(CoxeterSystem::new(&[vec![1, 1], vec![1, 1]], None).is_err());
        assert!(CoxeterSystem::new(&[vec![1, 3], vec![3, 1]], Some(&[1])).is_err());
        assert!(CoxeterSystem::new(&[vec![1, 3], vec![3, 1]], Some(&[1, 0])).is_err());
        assert!(CoxeterSystem::new(&[], None).is_err());
        // odd bond forces equal weights; even bonds leave them free
        assert!(CoxeterSystem::new(&[vec![1, 3], vec![3, 1]], Some(&[1, 2])).is_err());
        assert!(CoxeterSystem::new(&[vec![1, 4], vec![4, 1]], Some(&[1, 2])).is_ok());
        assert!(CoxeterSystem::new(&[vec![1, 0], vec![0, 1]], Some(&[1, 2])).is_ok());
    }

    #[test]
    fn gram_matrix_values() {
        // m=3 gives -1/2; m=4 gives -sqrt(2)/2; infinite gives -1
        let w = CoxeterSystem::new(&[vec![1, 3, 4], vec![3, 1, 0], vec![4, 0, 1]], None).unwrap();
        let half = ExactReal::from_rational(w.field(), BigRational::new((-1).into(), 2.into()));
        assert_eq!(w.gram_entry(0, 1), &half);
        assert_eq!(w.gram_entry(1, 2), &ExactReal::from_integer(w.field(), -1));
        // (-cos(pi/4))^2 = 1/2
        let c = w.gram_entry(0, 2);
        assert_eq!(
            c.mul(c).as_rational(),
            Some(&BigRational::new(1.into(), 2.into()))
        );
        assert_eq!(c.sign(), Sign::Negative);
        assert_eq!(w.gram_entry(0, 0), &ExactReal::one(w.field()));
    }

    #[test]
    fn bilinear_form_is_symmetric_and_unit_on_simples() {
        let w = a2();
        let a0 = w.simple_root(0);
        let a1 = w.simple_root(1);
        assert_eq!(w.bilinear_form(&a0, &a0), ExactReal::one(w.field()));
        assert_eq!(w.bilinear_form(&a0, &a1), w.bilinear_form(&a1, &a0));
    }

    #[test]
    fn reflection_fixes_form_and_negates_own_root() {
        let w = a2();
        let a0 = w.simple_root(0);
        let a1 = w.simple_root(1);
        let r = w.apply_reflection(0, &a0);
        assert_eq!(r, a0.neg());
        // s0 alpha_1 = alpha_1 + alpha_0 for m=3
        let r1 = w.apply_reflection(0, &a1);
        let expected = RootVector::new(
            w.clone(),
            vec![ExactReal::one(w.field()), ExactReal::one(w.field())],
        );
        assert_eq!(r1, expected);
        // form preserved
        let lhs = w.bilinear_form(&r1, &r);
        let rhs = w.bilinear_form(&a1, &a0);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn field_order_is_lcm_of_doubled_bonds() {
        let w = CoxeterSystem::new(&[vec![1, 3, 2], vec![3, 1, 4], vec![2, 4, 1]], None).unwrap();
        // lcm(2*3, 2*2, 2*4) = lcm(6, 4, 8) = 24
        assert_eq!(w.field().order(), 24);
        let w2 = a2();
        assert_eq!(w2.field().order(), 6);
    }
}
