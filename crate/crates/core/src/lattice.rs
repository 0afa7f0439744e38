//! Integer lattices, Smith normal forms, lattice saturations, partial
//! characters and lattice ideals.
//!
//! Lattices live in the ambient `Z^n` of the polynomial ring; a lattice
//! "in `Z^σ`" is one whose vectors vanish outside `σ`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, FieldError, Scalar};
use crate::ideal::Ideal;
use crate::poly::{Monomial, Polynomial, Ring};

pub type IntVec = Vec<BigInt>;
pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn int_vec(v: &[i64]) -> IntVec {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn int_matrix(rows: &[Vec<i64>]) -> IntMatrix {
    rows.iter().map(|r| int_vec(r)).collect()
}

fn identity(n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(BigInt::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

/// Determinant by fraction-free elimination (Bareiss).
pub fn determinant(m: &IntMatrix) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// `U * B * V = D` with `U`, `V` unimodular and `D` diagonal with
/// `d_1 | d_2 | ...`; `v_inv` is the inverse of `V`.
#[derive(Debug, Clone)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    /// Nonzero elementary divisors, positive; their count is the rank.
    pub divisors: Vec<BigInt>,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.divisors.len()
    }
}

pub fn smith_normal_form(b: &IntMatrix, ncols: usize) -> SmithDecomposition {
    let r = b.len();
    let c = ncols;
    let mut a = b.clone();
    let mut u = identity(r);
    let mut v = identity(c);
    let mut vi = identity(c);
    let mut t = 0;
    while t < r.min(c) {
        // pivot: smallest nonzero entry in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        u.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        for row in v.iter_mut() {
            row.swap(t, pj);
        }
        vi.swap(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..r {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in 0..c {
                    let s = &q * &a[t][j];
                    a[i][j] -= s;
                }
                for j in 0..r {
                    let s = &q * &u[t][j];
                    u[i][j] -= s;
                }
                if !a[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..c {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut() {
                    let s = &q * &row[t];
                    row[j] -= s;
                }
                for row in v.iter_mut() {
                    let s = &q * &row[t];
                    row[j] -= s;
                }
                // V^{-1} gets the inverse row operation
                for k in 0..c {
                    let s = &q * &vi[j][k];
                    vi[t][k] += s;
                }
                if !a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                // divisibility of the remaining block
                let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !(&a[i][j] % &a[t][t]).is_zero()));
                match bad {
                    Some(i) => {
                        for j in 0..c {
                            let s = a[i][j].clone();
                            a[t][j] += s;
                        }
                        for j in 0..r {
                            let s = u[i][j].clone();
                            u[t][j] += s;
                        }
                        dirty = true;
                    }
                    None => break,
                }
            }
            if dirty {
                // move the smallest nonzero entry of row/col t to the pivot
                let mut best = (t, t);
                for i in t..r {
                    if !a[i][t].is_zero() && (a[best.0][best.1].is_zero() || a[i][t].abs() < a[best.0][best.1].abs()) {
                        best = (i, t);
                    }
                }
                for j in t..c {
                    if !a[t][j].is_zero() && (a[best.0][best.1].is_zero() || a[t][j].abs() < a[best.0][best.1].abs()) {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    a.swap(t, best.0);
                    u.swap(t, best.0);
                } else if best.1 != t {
                    for row in a.iter_mut() {
                        row.swap(t, best.1);
                    }
                    for row in v.iter_mut() {
                        row.swap(t, best.1);
                    }
                    vi.swap(t, best.1);
                }
            }
        }
        if a[t][t].is_negative() {
            for j in 0..c {
                a[t][j] = -&a[t][j];
            }
            for j in 0..r {
                u[t][j] = -&u[t][j];
            }
        }
        t += 1;
    }
    let divisors = (0..r.min(c)).map(|i| a[i][i].clone()).take_while(|d| !d.is_zero()).collect();
    SmithDecomposition { u, v, v_inv: vi, divisors }
}

/// A sublattice of `Z^n` given by a basis (rows).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntLattice {
    n: usize,
    basis: IntMatrix,
}

impl IntLattice {
    /// The lattice spanned by arbitrary generators.
    pub fn from_generators(n: usize, gens: &[IntVec]) -> IntLattice {
        let rows: Vec<(IntVec, ())> = gens.iter().map(|g| (g.clone(), ())).collect();
        let reduced = echelon(rows, |_, _, _| (), |_| ());
        IntLattice { n, basis: reduced.into_iter().map(|(r, _)| r).collect() }
    }

    pub fn from_basis_unchecked(n: usize, basis: IntMatrix) -> IntLattice {
        IntLattice { n, basis }
    }

    pub fn zero(n: usize) -> IntLattice {
        IntLattice { n, basis: vec![] }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    fn snf(&self) -> SmithDecomposition {
        smith_normal_form(&self.basis, self.n)
    }

    /// Coordinates of `v` in the basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<IntVec> {
        let r = self.rank();
        if r == 0 {
            return if v.iter().all(|x| x.is_zero()) { Some(vec![]) } else { None };
        }
        let s = self.snf();
        let y: IntVec = (0..self.n).map(|j| (0..self.n).fold(BigInt::zero(), |acc, k| acc + &v[k] * &s.v[k][j])).collect();
        let mut z = Vec::with_capacity(r);
        for (k, yk) in y.iter().enumerate() {
            if k < r {
                if !(yk % &s.divisors[k]).is_zero() {
                    return None;
                }
                z.push(yk / &s.divisors[k]);
            } else if !yk.is_zero() {
                return None;
            }
        }
        Some((0..r).map(|j| (0..r).fold(BigInt::zero(), |acc, k| acc + &z[k] * &s.u[k][j])).collect())
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_lattice(&self, other: &IntLattice) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    pub fn same_as(&self, other: &IntLattice) -> bool {
        self.rank() == other.rank() && self.contains_lattice(other) && other.contains_lattice(self)
    }

    /// Elementary divisors of `L` inside `Sat(L)`.
    pub fn elementary_divisors(&self) -> Vec<BigInt> {
        self.snf().divisors
    }

    /// `Sat(L) = (Q ⊗ L) ∩ Z^n`.
    pub fn saturation(&self) -> IntLattice {
        self.scaled_saturation(|_| BigInt::one())
    }

    pub fn is_saturated(&self) -> bool {
        self.elementary_divisors().iter().all(|d| d.is_one())
    }

    /// Lattice with basis `f(d_i) * w_i`, `w_i` the saturated basis from the SNF.
    fn scaled_saturation(&self, f: impl Fn(&BigInt) -> BigInt) -> IntLattice {
        let s = self.snf();
        let basis: IntMatrix = s
            .divisors
            .iter()
            .enumerate()
            .map(|(i, d)| {
                let k = f(d);
                s.v_inv[i].iter().map(|x| x * &k).collect()
            })
            .collect();
        IntLattice::from_generators(self.n, &basis)
    }

    /// Largest lattice between `L` and `Sat(L)` whose index over `L` is a power of `p`.
    pub fn sat_p(&self, p: u64) -> Result<IntLattice> {
        if p == 0 {
            return Ok(self.clone());
        }
        check_prime(p)?;
        Ok(self.scaled_saturation(|d| d / p_part(d, p)))
    }

    /// Largest lattice between `L` and `Sat(L)` whose index over `L` is prime to `p`.
    pub fn sat_p_prime(&self, p: u64) -> Result<IntLattice> {
        if p == 0 {
            return Ok(self.saturation());
        }
        check_prime(p)?;
        Ok(self.scaled_saturation(|d| p_part(d, p)))
    }

    /// `[other : self]` for a finite-index superlattice `other`.
    pub fn index_in(&self, other: &IntLattice) -> Option<BigInt> {
        if self.rank() != other.rank() || !other.contains_lattice(self) {
            return None;
        }
        let c: IntMatrix = self.basis.iter().map(|b| other.coordinates(b).unwrap()).collect();
        Some(determinant(&c).abs())
    }

    /// Integer kernel of the `d x n` matrix `a`, restricted to the columns in `cols`.
    pub fn kernel(a: &[Vec<i64>], n: usize, cols: &[usize]) -> IntLattice {
        let sub: IntMatrix = a.iter().map(|row| cols.iter().map(|&j| BigInt::from(row[j])).collect()).collect();
        let k = cols.len();
        if k == 0 {
            return IntLattice::zero(n);
        }
        // columns of V beyond the rank span the kernel of sub (as column vectors)
        let s = smith_normal_form(&sub, k);
        let r = s.rank();
        let gens: Vec<IntVec> = (r..k)
            .map(|j| {
                let mut v = vec![BigInt::zero(); n];
                for (t, &c) in cols.iter().enumerate() {
                    v[c] = s.v[t][j].clone();
                }
                v
            })
            .collect();
        IntLattice::from_generators(n, &gens)
    }
}

fn check_prime(p: u64) -> Result<()> {
    if crate::field::is_prime(p) {
        Ok(())
    } else {
        Err(Error::Field(FieldError::NotPrime(p)))
    }
}

/// The largest power of `p` dividing `d`.
fn p_part(d: &BigInt, p: u64) -> BigInt {
    let pb = BigInt::from(p);
    let mut out = BigInt::one();
    let mut d = d.clone();
    while !d.is_zero() && (&d % &pb).is_zero() {
        d /= &pb;
        out *= &pb;
    }
    out
}

/// Integer row echelon form on rows carrying a payload that is updated
/// alongside the integer row operations: `sub(a, b, q)` returns the payload
/// of `row_a - q * row_b`, `neg(a)` that of `-row_a`. Zero rows are dropped
/// and returned separately by [`echelon_with_zero_rows`].
fn echelon<T: Clone>(rows: Vec<(IntVec, T)>, sub: impl Fn(&T, &T, &BigInt) -> T, neg: impl Fn(&T) -> T) -> Vec<(IntVec, T)> {
    echelon_with_zero_rows(rows, sub, neg).0
}

#[allow(clippy::type_complexity)]
fn echelon_with_zero_rows<T: Clone>(
    mut rows: Vec<(IntVec, T)>,
    sub: impl Fn(&T, &T, &BigInt) -> T,
    neg: impl Fn(&T) -> T,
) -> (Vec<(IntVec, T)>, Vec<T>) {
    let n = rows.first().map_or(0, |r| r.0.len());
    let mut out = Vec::new();
    let mut col = 0;
    while col < n && !rows.is_empty() {
        loop {
            let nz: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i].0[col].is_zero()).collect();
            if nz.len() <= 1 {
                break;
            }
            let piv = *nz.iter().min_by_key(|&&i| rows[i].0[col].abs()).unwrap();
            for &i in &nz {
                if i == piv {
                    continue;
                }
                let q = rows[i].0[col].div_floor(&rows[piv].0[col]);
                let new_payload = sub(&rows[i].1, &rows[piv].1, &q);
                let new_row: IntVec = rows[i].0.iter().zip(&rows[piv].0).map(|(a, b)| a - &q * b).collect();
                rows[i] = (new_row, new_payload);
            }
        }
        if let Some(i) = (0..rows.len()).find(|&i| !rows[i].0[col].is_zero()) {
            let (mut r, mut t) = rows.swap_remove(i);
            if r[col].is_negative() {
                r = r.iter().map(|x| -x).collect();
                t = neg(&t);
            }
            out.push((r, t));
        }
        col += 1;
    }
    // reduce entries above pivots
    for k in 0..out.len() {
        let pc = out[k].0.iter().position(|x| !x.is_zero()).unwrap();
        for i in 0..k {
            let q = out[i].0[pc].div_floor(&out[k].0[pc]);
            if q.is_zero() {
                continue;
            }
            let payload = sub(&out[i].1, &out[k].1, &q);
            let row: IntVec = out[i].0.iter().zip(&out[k].0).map(|(a, b)| a - &q * b).collect();
            out[i] = (row, payload);
        }
    }
    let zero_payloads = rows.into_iter().map(|(_, t)| t).collect();
    (out, zero_payloads)
}

/// Positive and negative parts of an integer vector.
pub fn split_vector(v: &[BigInt]) -> (Monomial, Monomial) {
    let pos = v.iter().map(|x| if x.is_positive() { x.to_u32().unwrap() } else { 0 }).collect();
    let neg = v.iter().map(|x| if x.is_negative() { (-x).to_u32().unwrap() } else { 0 }).collect();
    (Monomial(pos), Monomial(neg))
}

pub fn monomial_difference(u: &Monomial, v: &Monomial) -> IntVec {
    u.0.iter().zip(&v.0).map(|(a, b)| BigInt::from(*a) - BigInt::from(*b)).collect()
}

fn scalar_pow(s: &Scalar, e: &BigInt) -> Scalar {
    s.pow(e.to_i64().expect("exponent fits in i64"))
}

/// A homomorphism `L -> k^*`, stored by its values on the basis of `L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeCharacter {
    lattice: IntLattice,
    values: Vec<Scalar>,
    field: Field,
}

impl LatticeCharacter {
    pub fn new(lattice: IntLattice, values: Vec<Scalar>, field: &Field) -> Result<LatticeCharacter> {
        if values.len() != lattice.rank() {
            return Err(Error::Invalid("one character value per basis vector required".into()));
        }
        if values.iter().any(|v| v.is_zero()) {
            return Err(Error::Invalid("character values must be nonzero".into()));
        }
        Ok(LatticeCharacter { lattice, values, field: field.clone() })
    }

    pub fn trivial(lattice: IntLattice, field: &Field) -> LatticeCharacter {
        let values = vec![field.one(); lattice.rank()];
        LatticeCharacter { lattice, values, field: field.clone() }
    }

    /// Builds the character from pairs `(v, ρ(v))` spanning the lattice,
    /// failing when the pairs are inconsistent.
    pub fn from_relations(n: usize, rels: Vec<(IntVec, Scalar)>, field: &Field) -> Result<LatticeCharacter> {
        let (basis, zeros) = echelon_with_zero_rows(
            rels,
            |a, b, q| a * &scalar_pow(b, &-q),
            |a| a.inv().unwrap(),
        );
        if zeros.iter().any(|z| !z.is_one()) {
            return Err(Error::Invalid("inconsistent character values: not a lattice ideal".into()));
        }
        let (rows, values): (Vec<_>, Vec<_>) = basis.into_iter().unzip();
        Ok(LatticeCharacter { lattice: IntLattice::from_basis_unchecked(n, rows), values, field: field.clone() })
    }

    pub fn lattice(&self) -> &IntLattice {
        &self.lattice
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// `ρ(v)` for `v ∈ L`.
    pub fn eval(&self, v: &[BigInt]) -> Option<Scalar> {
        let c = self.lattice.coordinates(v)?;
        Some(c.iter().zip(&self.values).fold(self.field.one(), |acc, (e, s)| &acc * &scalar_pow(s, e)))
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|v| v.is_one())
    }

    /// Agreement on `L` (basis-independent).
    pub fn same_as(&self, other: &LatticeCharacter) -> bool {
        self.lattice.same_as(&other.lattice)
            && self.lattice.basis.iter().zip(&self.values).all(|(b, v)| other.eval(b).as_ref() == Some(v))
    }

    /// Restriction to a sublattice.
    pub fn restrict(&self, sub: &IntLattice) -> Option<LatticeCharacter> {
        let values = sub.basis.iter().map(|b| self.eval(b)).collect::<Option<Vec<_>>>()?;
        Some(LatticeCharacter { lattice: sub.clone(), values, field: self.field.clone() })
    }

    /// The same character with values reinterpreted over a larger field.
    pub fn over_field(&self, field: &Field) -> Result<LatticeCharacter> {
        let values = self.values.iter().map(|v| embed_scalar(v, field)).collect::<Result<Vec<_>>>()?;
        Ok(LatticeCharacter { lattice: self.lattice.clone(), values, field: field.clone() })
    }
}

/// Moves a scalar into a field containing its field.
pub fn embed_scalar(s: &Scalar, field: &Field) -> Result<Scalar> {
    if s.field_spec() == *field.spec() {
        return Ok(s.clone());
    }
    match s {
        Scalar::Rational(q) => Ok(field.from_rational(q.clone())?),
        Scalar::Cyclotomic(c) => {
            let Some(z) = field.zeta() else {
                return Err(Error::Invalid(format!("cannot embed {s} into {field}")));
            };
            let (from, to) = (c.order(), field.spec().clone());
            let crate::field::FieldSpec::Cyclotomic(big) = to else { unreachable!() };
            if big % from != 0 {
                return Err(Error::Invalid(format!("cannot embed {s} into {field}")));
            }
            let zeta_small = z.pow((big / from) as i64);
            let mut acc = field.zero();
            for (i, q) in c.coeffs().iter().enumerate() {
                acc = &acc + &(&field.from_rational(q.clone())? * &zeta_small.pow(i as i64));
            }
            Ok(acc)
        }
        Scalar::Mod { .. } => Err(Error::Invalid(format!("cannot embed {s} into {field}"))),
    }
}

/// All characters on `target ⊇ L` extending `rho`.
pub fn character_extensions(rho: &LatticeCharacter, target: &IntLattice) -> Result<Vec<LatticeCharacter>> {
    let field = rho.field.clone();
    let l = &rho.lattice;
    if l.rank() != target.rank() || !target.contains_lattice(l) {
        return Err(Error::Invalid("extension target must contain the lattice with finite index".into()));
    }
    let r = l.rank();
    if r == 0 {
        return Ok(vec![LatticeCharacter::trivial(target.clone(), &field)]);
    }
    // B_L = C B_target
    let c: IntMatrix = l.basis.iter().map(|b| target.coordinates(b).unwrap()).collect();
    let s = smith_normal_form(&c, r);
    // new basis e_i = (U B_L)_i = d_i f_i with f = V^{-1} B_target
    let mut per_coord: Vec<Vec<Scalar>> = Vec::with_capacity(r);
    let mut missing: Option<u64> = None;
    for i in 0..r {
        let val = (0..r).fold(field.one(), |acc, k| &acc * &scalar_pow(&rho.values[k], &s.u[i][k]));
        let d = s.divisors[i].to_u64().ok_or_else(|| Error::Capability("lattice index too large".into()))?;
        match field.nth_roots(&val, d) {
            Ok(roots) => per_coord.push(roots),
            Err(FieldError::MissingRoots { required, .. }) => {
                let cur = match field.spec() {
                    crate::field::FieldSpec::Cyclotomic(n) => *n,
                    _ => 1,
                };
                let req = if required == 0 { 0 } else { required.lcm(&cur) };
                missing = Some(match missing {
                    None => req,
                    Some(m) if m == 0 || req == 0 => 0,
                    Some(m) => m.lcm(&req),
                });
                per_coord.push(vec![]);
            }
            Err(e) => return Err(e.into()),
        }
    }
    if let Some(required) = missing {
        let degree = s.divisors.last().unwrap().to_u64().unwrap_or(0);
        return Err(FieldError::MissingRoots { field: field.spec().clone(), degree, required }.into());
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; r];
    loop {
        let chi_f: Vec<Scalar> = (0..r).map(|i| per_coord[i][idx[i]].clone()).collect();
        // B_target = V f
        let values: Vec<Scalar> = (0..r)
            .map(|j| (0..r).fold(field.one(), |acc, i| &acc * &scalar_pow(&chi_f[i], &s.v[j][i])))
            .collect();
        out.push(LatticeCharacter { lattice: target.clone(), values, field: field.clone() });
        let mut k = 0;
        loop {
            if k == r {
                return Ok(out);
            }
            idx[k] += 1;
            if idx[k] < per_coord[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// `x^{b+} - ρ(b) x^{b-}` for each basis vector `b`.
pub fn lattice_generators(rho: &LatticeCharacter, ring: &Ring) -> Vec<Polynomial> {
    rho.lattice
        .basis
        .iter()
        .zip(&rho.values)
        .map(|(b, v)| {
            let (p, n) = split_vector(b);
            ring.binomial(p, v.clone(), n)
        })
        .collect()
}

/// The lattice ideal `I(ρ)`.
pub fn lattice_ideal(rho: &LatticeCharacter, ring: &Ring) -> Ideal {
    let gens = lattice_generators(rho, ring);
    let support: Vec<usize> = (0..ring.nvars())
        .filter(|&i| rho.lattice.basis.iter().any(|b| !b[i].is_zero()))
        .collect();
    Ideal::new(ring, gens).saturate_vars(&support)
}

/// Reads `(L, ρ)` off the binomials of a lattice ideal `J` (all of whose
/// basis elements only involve the variables in `sigma`).
pub fn lattice_of_ideal(j: &Ideal) -> Result<LatticeCharacter> {
    let ring = j.ring();
    let ord = crate::poly::TermOrder::GRevLex;
    let mut rels = Vec::new();
    for g in j.gb().elements() {
        if g.len() != 2 {
            return Err(Error::Invalid(format!("{g} is not a pure difference binomial; not a lattice ideal")));
        }
        let (lead, _) = g.leading_term(&ord).unwrap();
        let (tail, c) = g.terms().find(|(m, _)| *m != lead).unwrap();
        // x^u + c x^v  means  ρ(u - v) = -c
        rels.push((monomial_difference(lead, tail), -c));
    }
    LatticeCharacter::from_relations(ring.nvars(), rels, ring.field())
}

/// `(L, ρ)` underlying `I ∩ k[N^σ]` for a σ-cellular `I`.
pub fn lattice_of_cellular(i: &Ideal, sigma: &[usize]) -> Result<LatticeCharacter> {
    let n = i.ring().nvars();
    let others: Vec<usize> = (0..n).filter(|k| !sigma.contains(k)).collect();
    let part = i.eliminate(&others);
    if part.is_unit() {
        return Err(Error::Invalid("the σ-part is the unit ideal".into()));
    }
    lattice_of_ideal(&part).map_err(|e| match e {
        Error::Invalid(m) => Error::Invalid(format!("not cellular for the given σ: {m}")),
        e => e,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn lat(n: usize, rows: &[Vec<i64>]) -> IntLattice {
        IntLattice::from_generators(n, &int_matrix(rows))
    }

    fn is_unimodular(m: &IntMatrix) -> bool {
        determinant(m).abs().is_one()
    }

    #[test]
    fn smith_examples() {
        let s = smith_normal_form(&int_matrix(&[vec![2, -2]]), 2);
        assert_eq!(s.divisors, int_vec(&[2]));
        assert!(is_unimodular(&s.u) && is_unimodular(&s.v));
        let s = smith_normal_form(&int_matrix(&[vec![2, 0], vec![0, 3]]), 2);
        assert_eq!(s.divisors, int_vec(&[1, 6]));
        let id = smith_normal_form(&int_matrix(&[vec![1, 0, 0], vec![0, 1, 0]]), 3);
        assert_eq!(id.divisors, int_vec(&[1, 1]));
    }

    #[test]
    fn smith_reconstructs() {
        let b = int_matrix(&[vec![4, 6, -2], vec![2, 8, 10], vec![6, 14, 8]]);
        let s = smith_normal_form(&b, 3);
        let d = mat_mul(&mat_mul(&s.u, &b), &s.v);
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j && i < s.rank() { s.divisors[i].clone() } else { BigInt::zero() };
                assert_eq!(d[i][j], expect);
            }
        }
        assert_eq!(mat_mul(&s.v, &s.v_inv), identity(3));
    }

    #[test]
    fn saturations() {
        let l = lat(2, &[vec![2, -2]]);
        assert!(l.saturation().same_as(&lat(2, &[vec![1, -1]])));
        assert!(l.sat_p(2).unwrap().same_as(&lat(2, &[vec![1, -1]])));
        assert!(l.sat_p_prime(2).unwrap().same_as(&l));
        assert!(l.sat_p(0).unwrap().same_as(&l));
        assert!(l.sat_p_prime(0).unwrap().same_as(&lat(2, &[vec![1, -1]])));
        assert!(lat(1, &[vec![2]]).saturation().same_as(&lat(1, &[vec![1]])));
        let six = lat(2, &[vec![6, -6]]);
        assert_eq!(six.index_in(&six.sat_p(3).unwrap()), Some(BigInt::from(3)));
        assert_eq!(six.index_in(&six.sat_p_prime(3).unwrap()), Some(BigInt::from(2)));
        assert!(l.sat_p(4).is_err());
    }

    #[test]
    fn membership() {
        let l = lat(3, &[vec![1, -2, 1], vec![0, 1, -1]]);
        assert!(l.contains(&int_vec(&[1, -1, 0])));
        assert!(!l.contains(&int_vec(&[1, 0, 0])));
        assert_eq!(l.coordinates(&int_vec(&[2, -3, 1])).map(|c| c.len()), Some(2));
    }

    #[test]
    fn extensions_of_trivial_character() {
        let q = Field::rationals();
        let rho = LatticeCharacter::trivial(lat(1, &[vec![2]]), &q);
        let ext = character_extensions(&rho, &lat(1, &[vec![1]])).unwrap();
        let vals: Vec<Scalar> = ext.iter().map(|c| c.eval(&int_vec(&[1])).unwrap()).collect();
        assert_eq!(vals.len(), 2);
        assert!(vals.contains(&q.one()) && vals.contains(&q.from_int(-1)));
        let three = LatticeCharacter::trivial(lat(1, &[vec![3]]), &q);
        let err = character_extensions(&three, &lat(1, &[vec![1]])).unwrap_err();
        assert!(matches!(err, Error::Field(FieldError::MissingRoots { required: 3, .. })));
        let f3 = Field::cyclotomic(3).unwrap();
        let three = LatticeCharacter::trivial(lat(1, &[vec![3]]), &f3);
        let ext = character_extensions(&three, &lat(1, &[vec![1]])).unwrap();
        assert_eq!(ext.len(), 3);
        let same = character_extensions(&rho, rho.lattice()).unwrap();
        assert_eq!(same.len(), 1);
        assert!(same[0].same_as(&rho));
    }

    #[test]
    fn lattice_ideals() {
        let q = Field::rationals();
        let r = Ring::new(["y"], q.clone());
        let i = lattice_ideal(&LatticeCharacter::trivial(lat(1, &[vec![2]]), &q), &r);
        let y2 = r.binomial(Monomial(vec![2]), q.one(), Monomial(vec![0]));
        assert!(i.equals(&Ideal::new(&r, vec![y2])));
        let r4 = Ring::new(["a", "b", "c", "d"], q.clone());
        let tc = lattice_ideal(&LatticeCharacter::trivial(lat(4, &[vec![1, -2, 1, 0], vec![0, 1, -2, 1]]), &q), &r4);
        let one = q.one();
        for (u, v) in [([1, 0, 0, 1], [0, 1, 1, 0]), ([1, 0, 1, 0], [0, 2, 0, 0]), ([0, 1, 0, 1], [0, 0, 2, 0])] {
            assert!(tc.contains(&r4.binomial(Monomial(u.to_vec()), one.clone(), Monomial(v.to_vec()))));
        }
    }

    #[test]
    fn lattice_from_cellular() {
        let q = Field::rationals();
        let r = Ring::new(["x", "z", "w"], q.clone());
        let one = q.one();
        let i = Ideal::new(&r, vec![
            r.binomial(Monomial(vec![0, 2, 0]), one.clone(), Monomial(vec![0, 0, 2])),
            r.binomial(Monomial(vec![1, 1, 0]), one.clone(), Monomial(vec![1, 0, 1])),
            r.monomial(Monomial(vec![2, 0, 0])),
        ]);
        let rho = lattice_of_cellular(&i, &[1, 2]).unwrap();
        assert!(rho.lattice().same_as(&lat(3, &[vec![0, 2, -2]])));
        assert!(rho.is_trivial());
    }

    #[test]
    fn inconsistent_relations_rejected() {
        let q = Field::rationals();
        let rels = vec![(int_vec(&[1, -1]), q.one()), (int_vec(&[2, -2]), q.from_int(-1))];
        assert!(LatticeCharacter::from_relations(2, rels, &q).is_err());
    }

    #[test]
    fn kernel_of_grading() {
        // twisted cubic grading: columns (1,0),(1,1),(1,2),(1,3)
        let a = vec![vec![1, 1, 1, 1], vec![0, 1, 2, 3]];
        let k = IntLattice::kernel(&a, 4, &[0, 1, 2, 3]);
        assert_eq!(k.rank(), 2);
        assert!(k.same_as(&lat(4, &[vec![1, -2, 1, 0], vec![0, 1, -2, 1]])));
    }
}
