//! Exact arithmetic in a fixed real cyclotomic field.
//!
//! Every scalar produced by a Coxeter system with finite bond orders
//! `m` lives in the real subfield of `Q(zeta_n)` where `n = lcm(2m)`,
//! because `cos(pi/m) = (zeta_{2m} + zeta_{2m}^{-1}) / 2`. Values are
//! stored as rational coefficient vectors over the power basis
//! `1, zeta, ..., zeta^{phi(n)-1}`, reduced modulo the n-th cyclotomic
//! polynomial. Zero testing is therefore exact (zero coefficient
//! vector), and the sign of a nonzero value is decided by interval
//! refinement with rational endpoints, doubling the working precision
//! until the enclosure excludes zero. Termination is guaranteed since
//! exact zero is ruled out first.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

/// Sign of an exact real value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

/// Bits of precision at refinement level 0; doubled at each level.
const BASE_BITS: u64 = 128;
/// Taylor terms for cosine at level 0 (remainder 7^70/70! < 2^-135).
const BASE_COS_TERMS: usize = 35;
/// Refinement ceiling; reaching it means a nonzero value survived
/// ~2^13 bits of precision, which indicates a reduction bug.
const MAX_LEVEL: u32 = 6;

// ---------------------------------------------------------------- intervals

/// Closed interval with rational endpoints.
#[derive(Clone, Debug)]
struct Interval {
    lo: BigRational,
    hi: BigRational,
}

impl Interval {
    fn point(q: BigRational) -> Self {
        Interval {
            lo: q.clone(),
            hi: q,
        }
    }

    fn add(&self, other: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    /// Multiply by an exact rational, flipping endpoints for negative scale.
    fn scale(&self, q: &BigRational) -> Interval {
        if q.is_negative() {
            Interval {
                lo: &self.hi * q,
                hi: &self.lo * q,
            }
        } else {
            Interval {
                lo: &self.lo * q,
                hi: &self.hi * q,
            }
        }
    }

    fn sign(&self) -> Option<Sign> {
        if self.hi.is_negative() {
            Some(Sign::Negative)
        } else if self.lo.is_positive() {
            Some(Sign::Positive)
        } else {
            None
        }
    }

    /// Round endpoints outward onto the 2^-bits grid to keep them small.
    fn round_out(&self, bits: u64) -> Interval {
        let denom = BigInt::one() << bits;
        let lo = (&self.lo * BigRational::from_integer(denom.clone())).floor();
        let hi = (&self.hi * BigRational::from_integer(denom.clone())).ceil();
        let d = BigRational::from_integer(denom);
        Interval {
            lo: lo / d.clone(),
            hi: hi / d,
        }
    }
}

/// `arctan(1/q)` enclosed by two consecutive alternating partial sums.
fn atan_inv(q: u64, terms: usize) -> Interval {
    let x = BigRational::new(BigInt::one(), BigInt::from(q));
    let x2 = &x * &x;
    let mut power = x; // x^(2j+1)
    let mut sum = BigRational::zero();
    let mut prev;
    let mut j = 0usize;
    loop {
        prev = sum.clone();
        let term = &power / BigRational::from_integer(BigInt::from(2 * j as u64 + 1));
        if j.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        if j >= terms {
            break;
        }
        power *= &x2;
        j += 1;
    }
    if sum <= prev {
        Interval { lo: sum, hi: prev }
    } else {
        Interval { lo: prev, hi: sum }
    }
}

/// Enclosure of pi via Machin's formula, rounded out to `bits`.
fn pi_interval(bits: u64) -> Interval {
    // 5^-(2j+1) < 2^-(bits+8) needs roughly j > bits/4.6.
    let t5 = (bits / 4 + 4) as usize;
    let t239 = (bits / 15 + 3) as usize;
    let a5 = atan_inv(5, t5);
    let a239 = atan_inv(239, t239);
    let sixteen = BigRational::from_integer(BigInt::from(16));
    let four = BigRational::from_integer(BigInt::from(4));
    Interval {
        lo: &a5.lo * &sixteen - &a239.hi * &four,
        hi: &a5.hi * &sixteen - &a239.lo * &four,
    }
    .round_out(bits)
}

/// Enclosure of `cos(theta)` for `theta` in a thin interval inside [0, 2pi).
///
/// Taylor sum at the left endpoint with the Lagrange remainder bound
/// |a|^(2M)/(2M)!, padded by the interval width (cosine is 1-Lipschitz).
fn cos_interval(theta: &Interval, terms: usize, bits: u64) -> Interval {
    let a = theta.lo.clone();
    let a2 = &a * &a;
    let mut power = BigRational::one(); // a^(2j)
    let mut fact = BigInt::one(); // (2j)!
    let mut sum = BigRational::zero();
    for j in 0..terms {
        if j > 0 {
            power *= &a2;
            let k = BigInt::from(2 * j as u64);
            fact = fact * (&k - BigInt::one()) * &k;
        }
        let term = &power / BigRational::from_integer(fact.clone());
        if j.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
    }
    // remainder bound at 2*terms
    let mut rem_pow = power * &a2;
    let k = BigInt::from(2 * terms as u64);
    let rem_fact = fact * (&k - BigInt::one()) * &k;
    rem_pow /= BigRational::from_integer(rem_fact);
    let pad = (&theta.hi - &theta.lo) + rem_pow.abs();
    Interval {
        lo: &sum - &pad,
        hi: &sum + &pad,
    }
    .round_out(bits)
}

/// Enclosures of cos(2 pi k / n) for k in 0..count at the given level.
fn cos_table(n: u64, count: usize, level: u32) -> Vec<Interval> {
    let bits = BASE_BITS << level;
    let terms = BASE_COS_TERMS << level;
    let pi = pi_interval(bits);
    (0..count)
        .map(|k| {
            if k == 0 {
                Interval::point(BigRational::one())
            } else {
                let scale = BigRational::new(BigInt::from(2 * k as u64), BigInt::from(n));
                cos_interval(&pi.scale(&scale), terms, bits)
            }
        })
        .collect()
}

// -------------------------------------------------------- polynomial helpers

type Poly = Vec<BigRational>; // coefficient i = coefficient of x^i

fn poly_trim(p: &mut Poly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            if !cb.is_zero() {
                out[i + j] += ca * cb;
            }
        }
    }
    out
}

/// Quotient and remainder of a by b (b nonzero).
fn poly_divmod(a: &Poly, b: &Poly) -> (Poly, Poly) {
    let mut rem = a.clone();
    poly_trim(&mut rem);
    let mut bb = b.clone();
    poly_trim(&mut bb);
    assert!(!bb.is_empty(), "polynomial division by zero");
    let db = bb.len() - 1;
    let lead = bb[db].clone();
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quo = vec![BigRational::zero(); rem.len() - db];
    while rem.len() > db {
        let da = rem.len() - 1;
        let c = &rem[da] / &lead;
        quo[da - db] = c.clone();
        for i in 0..=db {
            let t = &bb[i] * &c;
            rem[da - db + i] -= t;
        }
        poly_trim(&mut rem);
        if rem.is_empty() {
            break;
        }
    }
    (quo, rem)
}

/// n-th cyclotomic polynomial by recursive exact division of x^n - 1.
fn cyclotomic(n: u64, memo: &mut std::collections::HashMap<u64, Poly>) -> Poly {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    // x^n - 1
    let mut xn1 = vec![BigRational::zero(); n as usize + 1];
    xn1[0] = -BigRational::one();
    xn1[n as usize] = BigRational::one();
    let mut quo = xn1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let phi_d = cyclotomic(d, memo);
            let (q, r) = poly_divmod(&quo, &phi_d);
            assert!(r.is_empty(), "cyclotomic division must be exact");
            quo = q;
        }
    }
    memo.insert(n, quo.clone());
    quo
}

// ------------------------------------------------------------------- field

/// The ambient cyclotomic field `Q(zeta_n)`, shared by all scalars of a
/// Coxeter system. Immutable after construction.
pub struct CycloField {
    n: u64,
    degree: usize,
    /// Monic coefficients of the n-th cyclotomic polynomial.
    modulus: Poly,
    /// Level-0 enclosures of cos(2 pi k / n), k in 0..degree.
    cos_base: Vec<Interval>,
}

impl CycloField {
    /// Build the field of order n (n >= 1).
    pub fn new(n: u64) -> Arc<CycloField> {
        assert!(n >= 1, "cyclotomic order must be positive");
        let mut memo = std::collections::HashMap::new();
        let modulus = cyclotomic(n, &mut memo);
        let degree = modulus.len() - 1;
        let cos_base = cos_table(n, degree, 0);
        Arc::new(CycloField {
            n,
            degree,
            modulus,
            cos_base,
        })
    }

    /// Order n of the root of unity.
    pub fn order(&self) -> u64 {
        self.n
    }

    /// Field degree phi(n) over the rationals.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Reduce a raw coefficient vector modulo the cyclotomic polynomial.
    fn reduce(&self, mut coeffs: Vec<BigRational>) -> Vec<BigRational> {
        let d = self.degree;
        let mut k = coeffs.len();
        while k > d {
            k -= 1;
            if coeffs[k].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut coeffs[k], BigRational::zero());
            // x^k = -c * (modulus minus leading term) * x^(k-d)
            for i in 0..d {
                if !self.modulus[i].is_zero() {
                    let t = &self.modulus[i] * &c;
                    coeffs[k - d + i] -= t;
                }
            }
        }
        coeffs.truncate(d);
        coeffs.resize(d, BigRational::zero());
        coeffs
    }
}

impl fmt::Debug for CycloField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloField(n={}, degree={})", self.n, self.degree)
    }
}

// ---------------------------------------------------------------- ExactReal

/// An exact real scalar: element of the real subfield of `Q(zeta_n)`.
#[derive(Clone)]
pub struct ExactReal {
    field: Arc<CycloField>,
    /// Reduced coefficients over the power basis, length = field degree.
    coeffs: Vec<BigRational>,
}

impl ExactReal {
    pub fn zero(field: &Arc<CycloField>) -> Self {
        ExactReal {
            field: field.clone(),
            coeffs: vec![BigRational::zero(); field.degree],
        }
    }

    pub fn one(field: &Arc<CycloField>) -> Self {
        Self::from_rational(field, BigRational::one())
    }

    pub fn from_integer(field: &Arc<CycloField>, v: i64) -> Self {
        Self::from_rational(field, BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_rational(field: &Arc<CycloField>, q: BigRational) -> Self {
        let mut coeffs = vec![BigRational::zero(); field.degree];
        coeffs[0] = q;
        ExactReal {
            field: field.clone(),
            coeffs,
        }
    }

    /// The value -cos(pi/m); requires 2m to divide the field order.
    pub fn neg_cos_pi_over(field: &Arc<CycloField>, m: u64) -> Self {
        assert!(
            m >= 1 && field.n.is_multiple_of(2 * m),
            "2m must divide the field order"
        );
        let e = (field.n / (2 * m)) as usize; // zeta^e = zeta_{2m}
        let mut raw = vec![BigRational::zero(); field.n as usize];
        let half = BigRational::new(BigInt::from(-1), BigInt::from(2));
        raw[e] += &half;
        raw[field.n as usize - e] += &half;
        ExactReal {
            field: field.clone(),
            coeffs: field.reduce(raw),
        }
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Exact rational value, if the element is rational.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn assert_same_field(&self, other: &ExactReal) {
        assert_eq!(
            self.field.n, other.field.n,
            "scalars from different cyclotomic fields"
        );
    }

    pub fn add(&self, other: &ExactReal) -> ExactReal {
        self.assert_same_field(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        ExactReal {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn sub(&self, other: &ExactReal) -> ExactReal {
        self.assert_same_field(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        ExactReal {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn neg(&self) -> ExactReal {
        ExactReal {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &ExactReal) -> ExactReal {
        self.assert_same_field(other);
        let raw = poly_mul(&self.coeffs, &other.coeffs);
        ExactReal {
            field: self.field.clone(),
            coeffs: self.field.reduce(raw),
        }
    }

    pub fn mul_rational(&self, q: &BigRational) -> ExactReal {
        ExactReal {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Multiplicative inverse (None for zero). Uses the extended
    /// Euclidean algorithm against the cyclotomic modulus, which is
    /// irreducible, so every nonzero element is invertible.
    pub fn inv(&self) -> Option<ExactReal> {
        if self.is_zero() {
            return None;
        }
        let mut r0 = self.field.modulus.clone();
        let mut r1 = self.coeffs.clone();
        poly_trim(&mut r1);
        let mut t0: Poly = Vec::new();
        let mut t1: Poly = vec![BigRational::one()];
        while !r1.is_empty() {
            let (q, r) = poly_divmod(&r0, &r1);
            let qt1 = poly_mul(&q, &t1);
            let mut t2 = t0.clone();
            t2.resize(t2.len().max(qt1.len()), BigRational::zero());
            for (i, c) in qt1.iter().enumerate() {
                t2[i] -= c;
            }
            poly_trim(&mut t2);
            t0 = std::mem::replace(&mut t1, t2);
            r0 = std::mem::replace(&mut r1, r);
        }
        // r0 is a nonzero constant gcd; t0 satisfies t0 * self = r0 (mod modulus)
        debug_assert!(r0.len() == 1, "cyclotomic modulus is irreducible");
        let scale = r0[0].recip();
        let mut coeffs: Vec<BigRational> = t0.iter().map(|c| c * &scale).collect();
        coeffs.resize(coeffs.len().max(1), BigRational::zero());
        let reduced = self.field.reduce(coeffs);
        let out = ExactReal {
            field: self.field.clone(),
            coeffs: reduced,
        };
        debug_assert!(out.mul(self).sub(&ExactReal::one(&self.field)).is_zero());
        Some(out)
    }

    /// Enclose the value at the given refinement level.
    fn enclose(&self, level: u32) -> Interval {
        let table_owned;
        let table = if level == 0 {
            &self.field.cos_base
        } else {
            table_owned = cos_table(self.field.n, self.field.degree, level);
            &table_owned
        };
        let mut acc = Interval::point(BigRational::zero());
        for (c, enc) in self.coeffs.iter().zip(table) {
            if !c.is_zero() {
                acc = acc.add(&enc.scale(c));
            }
        }
        acc
    }

    /// Exact sign. Zero is decided by the coefficient vector; nonzero
    /// values by interval refinement with doubling precision.
    pub fn sign(&self) -> Sign {
        if self.is_zero() {
            return Sign::Zero;
        }
        if let Some(q) = self.as_rational() {
            return if q.is_negative() {
                Sign::Negative
            } else {
                Sign::Positive
            };
        }
        debug_assert!(self.is_real(), "sign of a non-real field element");
        for level in 0..=MAX_LEVEL {
            if let Some(s) = self.enclose(level).sign() {
                return s;
            }
        }
        panic!(
            "sign refinement exhausted at {} bits for a nonzero value; \
             this indicates a coefficient-reduction bug",
            BASE_BITS << MAX_LEVEL
        );
    }

    /// Whether the element is fixed by complex conjugation.
    fn is_real(&self) -> bool {
        let n = self.field.n as usize;
        let mut raw = vec![BigRational::zero(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                raw[(n - k) % n] += c;
            }
        }
        self.field.reduce(raw) == self.coeffs
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Sign::Positive
    }

    pub fn is_negative(&self) -> bool {
        self.sign() == Sign::Negative
    }

    /// Total order induced by the real embedding.
    pub fn cmp_real(&self, other: &ExactReal) -> Ordering {
        match self.sub(other).sign() {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        }
    }

    /// Decimal approximation with the given number of fractional digits,
    /// deterministic across runs (round-half-up of an exact midpoint).
    pub fn decimal(&self, digits: u32) -> String {
        if self.is_zero() {
            return format!("{:.*}", digits as usize, 0.0);
        }
        let mut level = 0;
        let scale = BigInt::from(10u32).pow(digits + 2);
        let target = BigRational::new(BigInt::one(), scale);
        let enc = loop {
            let e = self.enclose(level);
            if (&e.hi - &e.lo) < target || level == MAX_LEVEL {
                break e;
            }
            level += 1;
        };
        let mid = (&enc.lo + &enc.hi) / BigRational::from_integer(BigInt::from(2));
        let pow = BigInt::from(10u32).pow(digits);
        let scaled = mid * BigRational::from_integer(pow.clone());
        let rounded = (scaled + BigRational::new(BigInt::one(), BigInt::from(2))).floor();
        let units = rounded.to_integer();
        let neg = units.is_negative();
        let abs = units.magnitude().clone();
        let (ip, fp) = abs.div_rem(&pow.magnitude().clone());
        format!(
            "{}{}.{:0>width$}",
            if neg { "-" } else { "" },
            ip,
            fp.to_string(),
            width = digits as usize
        )
    }

    /// Float approximation for display purposes only.
    pub fn to_f64(&self) -> f64 {
        let enc = self.enclose(0);
        let mid = (&enc.lo + &enc.hi) / BigRational::from_integer(BigInt::from(2));
        mid.to_f64().unwrap_or(f64::NAN)
    }

    /// Exact coefficient strings over the power basis (for reports).
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

impl PartialEq for ExactReal {
    fn eq(&self, other: &Self) -> bool {
        self.field.n == other.field.n && self.coeffs == other.coeffs
    }
}

impl Eq for ExactReal {}

impl Hash for ExactReal {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.n.hash(state);
        self.coeffs.hash(state);
    }
}

impl PartialOrd for ExactReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactReal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_real(other)
    }
}

impl fmt::Debug for ExactReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactReal({})", self.decimal(6))
    }
}

impl fmt::Display for ExactReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            write!(f, "{}", q)
        } else {
            write!(f, "{}", self.decimal(10))
        }
    }
}

impl Serialize for ExactReal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("ExactReal", 3)?;
        s.serialize_field("order", &self.field.n)?;
        s.serialize_field("coeffs", &self.coeff_strings())?;
        s.serialize_field("approx", &self.decimal(10))?;
        s.end()
    }
}
