//! Exact coefficient fields: the rationals, prime fields `GF(p)` and
//! cyclotomic extensions `Q(zeta_N)`.
//!
//! Every [`Scalar`] is kept in canonical form, so equality of scalars is
//! plain structural equality. Cyclotomic elements are stored as rational
//! coefficient vectors of length `deg(Phi_N)` reduced modulo the `N`-th
//! cyclotomic polynomial.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    Mismatch(FieldSpec, FieldSpec),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("cyclotomic order must be positive")]
    ZeroOrder,
    #[error("denominator {0} is not invertible in GF({1})")]
    NotInvertible(BigInt, u64),
    /// Not all `degree`-th roots of a value exist in the current field.
    /// `required` is the cyclotomic order that contains them (0 when no
    /// cyclotomic field is known to work, e.g. over `GF(p)`).
    #[error("{field} lacks the roots of degree {degree} needed here; re-run over QQ(zeta_{required})")]
    MissingRoots { field: FieldSpec, degree: u64, required: u64 },
    #[error("cannot extract roots of {0} in {1}")]
    Unsupported(String, FieldSpec),
}

/// Which field the coefficients live in.
#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
    Cyclotomic(u64),
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "QQ"),
            FieldSpec::PrimeField(p) => write!(f, "GF({p})"),
            FieldSpec::Cyclotomic(n) => write!(f, "QQ(zeta_{n})"),
        }
    }
}

#[derive(Debug)]
struct CycloData {
    order: u64,
    /// Monic `Phi_N`, coefficients low to high.
    phi: Vec<BigInt>,
}

impl CycloData {
    fn degree(&self) -> usize {
        self.phi.len() - 1
    }
}

/// A field together with the precomputed data needed for arithmetic.
#[derive(Debug, Clone)]
pub struct Field {
    spec: FieldSpec,
    cyclo: Option<Arc<CycloData>>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}
impl Eq for Field {}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.spec.fmt(f)
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Integer polynomial `Phi_n`, low-to-high coefficients.
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    assert!(n > 0);
    // x^n - 1
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_polynomial(d);
            num = int_poly_exact_div(&num, &phi_d);
        }
    }
    num
}

fn int_poly_exact_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dl = den.len() - 1;
    let lead = &den[dl];
    debug_assert!(lead.is_one());
    let ql = rem.len() - dl;
    let mut quot = vec![BigInt::zero(); ql];
    for i in (0..ql).rev() {
        let c = rem[i + dl].clone() / lead;
        if !c.is_zero() {
            for (j, dj) in den.iter().enumerate() {
                rem[i + j] -= &c * dj;
            }
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(|r| r.is_zero()));
    quot
}

impl Field {
    pub fn new(spec: FieldSpec) -> Result<Field, FieldError> {
        match spec {
            FieldSpec::Rationals => Ok(Field::rationals()),
            FieldSpec::PrimeField(p) => {
                if !is_prime(p) {
                    return Err(FieldError::NotPrime(p));
                }
                Ok(Field { spec, cyclo: None })
            }
            FieldSpec::Cyclotomic(0) => Err(FieldError::ZeroOrder),
            // Q(zeta_1) = Q(zeta_2) = Q.
            FieldSpec::Cyclotomic(1) | FieldSpec::Cyclotomic(2) => Ok(Field::rationals()),
            FieldSpec::Cyclotomic(n) => Ok(Field {
                spec,
                cyclo: Some(Arc::new(CycloData { order: n, phi: cyclotomic_polynomial(n) })),
            }),
        }
    }

    pub fn rationals() -> Field {
        Field { spec: FieldSpec::Rationals, cyclo: None }
    }

    pub fn prime(p: u64) -> Result<Field, FieldError> {
        Field::new(FieldSpec::PrimeField(p))
    }

    pub fn cyclotomic(n: u64) -> Result<Field, FieldError> {
        Field::new(FieldSpec::Cyclotomic(n))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn characteristic(&self) -> u64 {
        match self.spec {
            FieldSpec::PrimeField(p) => p,
            _ => 0,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_rational(BigRational::zero()).expect("zero is always representable")
    }

    pub fn one(&self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(&self, v: i64) -> Scalar {
        self.from_rational(BigRational::from_integer(BigInt::from(v)))
            .expect("integers are always representable")
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        self.from_rational(BigRational::from_integer(v.clone()))
            .expect("integers are always representable")
    }

    pub fn from_rational(&self, q: BigRational) -> Result<Scalar, FieldError> {
        match &self.spec {
            FieldSpec::Rationals => Ok(Scalar::Rational(q)),
            FieldSpec::PrimeField(p) => {
                let pb = BigInt::from(*p);
                let num = q.numer().mod_floor(&pb).to_u64().unwrap();
                let den = q.denom().mod_floor(&pb).to_u64().unwrap();
                if den == 0 {
                    return Err(FieldError::NotInvertible(q.denom().clone(), *p));
                }
                Ok(Scalar::Mod { value: mulmod(num, invmod(den, *p), *p), modulus: *p })
            }
            FieldSpec::Cyclotomic(_) => {
                let data = self.cyclo.clone().unwrap();
                let mut coeffs = vec![BigRational::zero(); data.degree()];
                coeffs[0] = q;
                Ok(Scalar::Cyclotomic(CycloElem { coeffs, data }))
            }
        }
    }

    /// The primitive `N`-th root of unity generating a cyclotomic field.
    pub fn zeta(&self) -> Option<Scalar> {
        let data = self.cyclo.clone()?;
        let mut poly = vec![BigRational::zero(), BigRational::one()];
        reduce_mod_phi(&mut poly, &data.phi);
        poly.resize(data.degree(), BigRational::zero());
        Some(Scalar::Cyclotomic(CycloElem { coeffs: poly, data }))
    }

    /// Size of the (cyclic) group of roots of unity contained in the field.
    pub fn roots_of_unity_order(&self) -> u64 {
        match self.spec {
            FieldSpec::Rationals => 2,
            FieldSpec::PrimeField(p) => p - 1,
            FieldSpec::Cyclotomic(n) => n.lcm(&2),
        }
    }

    /// A generator of the group of roots of unity in the field.
    pub fn root_of_unity_generator(&self) -> Scalar {
        match self.spec {
            FieldSpec::Rationals => self.from_int(-1),
            FieldSpec::PrimeField(p) => {
                let g = (1..p)
                    .find(|&g| multiplicative_order_mod(g, p) == p - 1)
                    .expect("prime fields have primitive roots");
                Scalar::Mod { value: g, modulus: p }
            }
            FieldSpec::Cyclotomic(n) => {
                let z = self.zeta().unwrap();
                if n % 2 == 0 {
                    z
                } else {
                    -&z
                }
            }
        }
    }

    /// All powers of the root-of-unity generator, index = exponent.
    fn roots_of_unity_table(&self) -> Vec<Scalar> {
        let g = self.root_of_unity_generator();
        let m = self.roots_of_unity_order();
        let mut out = Vec::with_capacity(m as usize);
        let mut cur = self.one();
        for _ in 0..m {
            out.push(cur.clone());
            cur = &cur * &g;
        }
        out
    }

    /// Multiplicative order of `c` if it is a root of unity in this field.
    pub fn root_of_unity_order(&self, c: &Scalar) -> Option<u64> {
        let table = self.roots_of_unity_table();
        let m = table.len() as u64;
        let k = table.iter().position(|t| t == c)? as u64;
        Some(m / k.gcd(&m))
    }

    /// All `y` in the field with `y^d = c` (for `c != 0`).
    ///
    /// Over `GF(p)` the search is exhaustive. Over the rationals and
    /// cyclotomic fields, `c` must be a rational number or a root of unity;
    /// anything else is reported as unsupported. When the field contains
    /// some but not all `d`-th roots the error names the cyclotomic order
    /// that does.
    pub fn nth_roots(&self, c: &Scalar, d: u64) -> Result<Vec<Scalar>, FieldError> {
        assert!(d > 0);
        if c.is_zero() {
            return Ok(vec![self.zero()]);
        }
        if d == 1 {
            return Ok(vec![c.clone()]);
        }
        if let FieldSpec::PrimeField(p) = self.spec {
            let cv = match c {
                Scalar::Mod { value, .. } => *value,
                _ => unreachable!(),
            };
            let roots: Vec<Scalar> = (1..p)
                .filter(|&y| powmod(y, d, p) == cv)
                .map(|y| Scalar::Mod { value: y, modulus: p })
                .collect();
            // p-power roots are unique in characteristic p; only the
            // prime-to-p part can be missing.
            let mut dprime = d;
            while dprime % p == 0 {
                dprime /= p;
            }
            if (roots.len() as u64) < dprime {
                return Err(FieldError::MissingRoots { field: self.spec.clone(), degree: d, required: 0 });
            }
            return Ok(roots);
        }
        // Characteristic zero: split c = r^d * eta, eta a root of unity.
        let table = self.roots_of_unity_table();
        let (base, eta) = if let Some(k) = table.iter().position(|t| t == c) {
            (self.one(), table[k].clone())
        } else if let Some(q) = c.as_rational() {
            let r = rational_root(&q.abs(), d).ok_or_else(|| {
                FieldError::Unsupported(format!("{c}"), self.spec.clone())
            })?;
            let rs = self.from_rational(r).unwrap();
            let eta = c * &rs.pow(-(d as i64));
            (rs, eta)
        } else {
            return Err(FieldError::Unsupported(format!("{c}"), self.spec.clone()));
        };
        let eta_order = self.root_of_unity_order(&eta).ok_or_else(|| {
            FieldError::Unsupported(format!("{c}"), self.spec.clone())
        })?;
        let roots: Vec<Scalar> = table
            .iter()
            .filter(|t| t.pow(d as i64) == eta)
            .map(|t| &base * t)
            .collect();
        if (roots.len() as u64) < d {
            let required = match self.spec {
                FieldSpec::Cyclotomic(n) => (d * eta_order).lcm(&n),
                _ => d * eta_order,
            };
            return Err(FieldError::MissingRoots { field: self.spec.clone(), degree: d, required });
        }
        Ok(roots)
    }
}

fn rational_root(q: &BigRational, d: u64) -> Option<BigRational> {
    let n = int_root(q.numer(), d)?;
    let m = int_root(q.denom(), d)?;
    Some(BigRational::new(n, m))
}

fn int_root(v: &BigInt, d: u64) -> Option<BigInt> {
    if v.is_negative() {
        return None;
    }
    let r = v.nth_root(d as u32);
    if num_traits::pow(r.clone(), d as usize) == *v {
        Some(r)
    } else {
        None
    }
}

pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

fn multiplicative_order_mod(g: u64, p: u64) -> u64 {
    let mut k = 1;
    let mut cur = g % p;
    while cur != 1 {
        cur = mulmod(cur, g, p);
        k += 1;
        if k > p {
            return 0;
        }
    }
    k
}

/// Element of `Q(zeta_N)` in the power basis.
#[derive(Clone)]
pub struct CycloElem {
    coeffs: Vec<BigRational>,
    data: Arc<CycloData>,
}

impl CycloElem {
    pub fn order(&self) -> u64 {
        self.data.order
    }
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }
}

impl fmt::Debug for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloElem({:?} mod Phi_{})", self.coeffs, self.data.order)
    }
}

impl PartialEq for CycloElem {
    fn eq(&self, other: &Self) -> bool {
        self.data.order == other.data.order && self.coeffs == other.coeffs
    }
}
impl Eq for CycloElem {}

impl Hash for CycloElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.data.order.hash(state);
        self.coeffs.hash(state);
    }
}

fn reduce_mod_phi(poly: &mut Vec<BigRational>, phi: &[BigInt]) {
    let deg = phi.len() - 1;
    while poly.len() > deg {
        let top = poly.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let base = poly.len() - deg;
        for (j, pj) in phi.iter().enumerate().take(deg) {
            poly[base + j] -= &top * BigRational::from_integer(pj.clone());
        }
    }
}

// Univariate helpers over Q for cyclotomic inversion.
fn upoly_trim(p: &mut Vec<BigRational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn upoly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    upoly_trim(&mut r);
    let mut b = b.to_vec();
    upoly_trim(&mut b);
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (vec![], r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let c = r.last().unwrap() / &b[db];
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &c * bj;
        }
        q[shift] = c;
        upoly_trim(&mut r);
    }
    (q, r)
}

fn upoly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

fn upoly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    upoly_trim(&mut out);
    out
}

/// Inverse of `a` modulo the irreducible `m`, via the extended Euclidean algorithm.
fn upoly_inverse(a: &[BigRational], m: &[BigRational]) -> Vec<BigRational> {
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    upoly_trim(&mut r1);
    let (mut t0, mut t1): (Vec<BigRational>, Vec<BigRational>) = (vec![], vec![BigRational::one()]);
    while r1.len() > 1 {
        let (q, r) = upoly_divrem(&r0, &r1);
        let t2 = upoly_sub(&t0, &upoly_mul(&q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        t0 = std::mem::replace(&mut t1, t2);
    }
    // r1 is a nonzero constant
    let c = r1[0].clone();
    t1.iter().map(|t| t / &c).collect()
}

/// An element of one of the supported exact fields.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Mod { value: u64, modulus: u64 },
    Cyclotomic(CycloElem),
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Scalar {
    pub fn field_spec(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Mod { modulus, .. } => FieldSpec::PrimeField(*modulus),
            Scalar::Cyclotomic(c) => FieldSpec::Cyclotomic(c.data.order),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
            Scalar::Cyclotomic(c) => c.coeffs.iter().all(|q| q.is_zero()),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
            Scalar::Cyclotomic(c) => {
                c.coeffs[0].is_one() && c.coeffs[1..].iter().all(|q| q.is_zero())
            }
        }
    }

    /// The value as a rational number, if it lies in the prime subfield of
    /// a characteristic-zero field.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Rational(q) => Some(q.clone()),
            Scalar::Mod { .. } => None,
            Scalar::Cyclotomic(c) => {
                if c.coeffs[1..].iter().all(|q| q.is_zero()) {
                    Some(c.coeffs[0].clone())
                } else {
                    None
                }
            }
        }
    }

    fn same_field(&self, other: &Scalar) -> Result<(), FieldError> {
        let (a, b) = (self.field_spec(), other.field_spec());
        if a == b {
            Ok(())
        } else {
            Err(FieldError::Mismatch(a, b))
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Mod { value: a, modulus: p }, Scalar::Mod { value: b, .. }) => {
                Scalar::Mod { value: ((*a as u128 + *b as u128) % *p as u128) as u64, modulus: *p }
            }
            (Scalar::Cyclotomic(a), Scalar::Cyclotomic(b)) => Scalar::Cyclotomic(CycloElem {
                coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
                data: a.data.clone(),
            }),
            _ => unreachable!(),
        })
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Mod { value: a, modulus: p }, Scalar::Mod { value: b, .. }) => {
                Scalar::Mod { value: mulmod(*a, *b, *p), modulus: *p }
            }
            (Scalar::Cyclotomic(a), Scalar::Cyclotomic(b)) => {
                let mut prod = upoly_mul(&a.coeffs, &b.coeffs);
                reduce_mod_phi(&mut prod, &a.data.phi);
                prod.resize(a.data.degree(), BigRational::zero());
                Scalar::Cyclotomic(CycloElem { coeffs: prod, data: a.data.clone() })
            }
            _ => unreachable!(),
        })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.checked_add(&-other)
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.same_field(other)?;
        let inv = other.inv()?;
        self.checked_mul(&inv)
    }

    pub fn inv(&self) -> Result<Scalar, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Mod { value, modulus } => Scalar::Mod { value: invmod(*value, *modulus), modulus: *modulus },
            Scalar::Cyclotomic(c) => {
                let phi: Vec<BigRational> =
                    c.data.phi.iter().map(|v| BigRational::from_integer(v.clone())).collect();
                let mut inv = upoly_inverse(&c.coeffs, &phi);
                reduce_mod_phi(&mut inv, &c.data.phi);
                inv.resize(c.data.degree(), BigRational::zero());
                Scalar::Cyclotomic(CycloElem { coeffs: inv, data: c.data.clone() })
            }
        })
    }

    /// Integer power; negative exponents invert (panics on `0^-k`).
    pub fn pow(&self, e: i64) -> Scalar {
        let base = if e < 0 { self.inv().expect("negative power of zero") } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.one_like();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        acc
    }

    pub fn one_like(&self) -> Scalar {
        match self {
            Scalar::Rational(_) => Scalar::Rational(BigRational::one()),
            Scalar::Mod { modulus, .. } => Scalar::Mod { value: 1 % modulus, modulus: *modulus },
            Scalar::Cyclotomic(c) => {
                let mut coeffs = vec![BigRational::zero(); c.data.degree()];
                coeffs[0] = BigRational::one();
                Scalar::Cyclotomic(CycloElem { coeffs, data: c.data.clone() })
            }
        }
    }

    pub fn zero_like(&self) -> Scalar {
        match self {
            Scalar::Rational(_) => Scalar::Rational(BigRational::zero()),
            Scalar::Mod { modulus, .. } => Scalar::Mod { value: 0, modulus: *modulus },
            Scalar::Cyclotomic(c) => Scalar::Cyclotomic(CycloElem {
                coeffs: vec![BigRational::zero(); c.data.degree()],
                data: c.data.clone(),
            }),
        }
    }

    /// True when the printed form needs parentheses as a coefficient.
    pub(crate) fn is_compound(&self) -> bool {
        match self {
            Scalar::Cyclotomic(c) => c.coeffs.iter().filter(|q| !q.is_zero()).count() > 1,
            _ => false,
        }
    }

    /// True when the value is a negative rational (used for sign printing).
    pub(crate) fn is_negative_rational(&self) -> bool {
        match self.as_rational() {
            Some(q) => q.is_negative(),
            None => false,
        }
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{}", fmt_rational(q)),
            Scalar::Mod { value, .. } => write!(f, "{value}"),
            Scalar::Cyclotomic(c) => {
                let mut parts = Vec::new();
                for (i, q) in c.coeffs.iter().enumerate() {
                    if q.is_zero() {
                        continue;
                    }
                    let mon = match i {
                        0 => String::new(),
                        1 => "zeta".to_string(),
                        _ => format!("zeta^{i}"),
                    };
                    let s = if mon.is_empty() {
                        fmt_rational(q)
                    } else if q.is_one() {
                        mon
                    } else if (-q).is_one() {
                        format!("-{mon}")
                    } else {
                        format!("{}*{mon}", fmt_rational(q))
                    };
                    parts.push(s);
                }
                if parts.is_empty() {
                    return write!(f, "0");
                }
                let mut out = parts[0].clone();
                for p in &parts[1..] {
                    if let Some(rest) = p.strip_prefix('-') {
                        out.push_str(" - ");
                        out.push_str(rest);
                    } else {
                        out.push_str(" + ");
                        out.push_str(p);
                    }
                }
                write!(f, "{out}")
            }
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl std::ops::$tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).expect("scalar arithmetic across fields")
            }
        }
        impl std::ops::$tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$checked(&rhs).expect("scalar arithmetic across fields")
            }
        }
    };
}
binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);
binop!(Div, div, checked_div);

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Mod { value, modulus } => {
                Scalar::Mod { value: (modulus - value) % modulus, modulus: *modulus }
            }
            Scalar::Cyclotomic(c) => Scalar::Cyclotomic(CycloElem {
                coeffs: c.coeffs.iter().map(|q| -q).collect(),
                data: c.data.clone(),
            }),
        }
    }
}

impl std::ops::Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// The four field operations, as a single entry point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn scalar_arith(a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar, FieldError> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_sub(b),
        ArithOp::Mul => a.checked_mul(b),
        ArithOp::Div => a.checked_div(b),
    }
}
