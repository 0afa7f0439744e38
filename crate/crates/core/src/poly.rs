//! Monomials, term orders, rings and sparse polynomials.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::field::{Field, Scalar};

/// An exponent vector `u` standing for `x^u`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(pub Vec<u32>);

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{:?}", self.0)
    }
}

impl Monomial {
    pub fn one(n: usize) -> Monomial {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Monomial {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial(self.0.iter().map(|a| a * k).collect())
    }

    /// Indices with nonzero exponent.
    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] > 0).collect()
    }

    /// The part of the monomial in the given variables.
    pub fn restrict_to(&self, vars: &[usize]) -> Monomial {
        let mut e = vec![0; self.0.len()];
        for &i in vars {
            e[i] = self.0[i];
        }
        Monomial(e)
    }

    /// Weighted degree `sum w_i u_i`.
    pub fn weight(&self, w: &[i64]) -> i64 {
        self.0.iter().zip(w).map(|(&e, &wi)| e as i64 * wi).sum()
    }

    /// Product of the given variables.
    pub fn product_of(n: usize, vars: &[usize]) -> Monomial {
        let mut e = vec![0; n];
        for &i in vars {
            e[i] += 1;
        }
        Monomial(e)
    }

    /// Embeds into a ring with `extra` trailing variables.
    pub fn extend(&self, extra: usize) -> Monomial {
        let mut e = self.0.clone();
        e.extend(std::iter::repeat(0).take(extra));
        Monomial(e)
    }
}

/// A monomial order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TermOrder {
    Lex,
    GRevLex,
    /// Compares total degree in the block first, ties broken by grevlex;
    /// the block variables are eliminated.
    Elimination(Vec<usize>),
}

fn grevlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    if da != db {
        return da.cmp(&db);
    }
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

impl TermOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            TermOrder::Lex => a.0.cmp(&b.0),
            TermOrder::GRevLex => grevlex_cmp(&a.0, &b.0),
            TermOrder::Elimination(block) => {
                let da: u64 = block.iter().map(|&i| a.0[i] as u64).sum();
                let db: u64 = block.iter().map(|&i| b.0[i] as u64).sum();
                da.cmp(&db).then_with(|| grevlex_cmp(&a.0, &b.0))
            }
        }
    }
}

#[derive(Debug, PartialEq, Eq)]
struct RingData {
    vars: Vec<String>,
    field: Field,
}

/// Polynomial ring `k[x_1..x_n]` with named variables.
#[derive(Debug, Clone)]
pub struct Ring(Arc<RingData>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}
impl Eq for Ring {}

impl Ring {
    pub fn new<S: Into<String>>(vars: impl IntoIterator<Item = S>, field: Field) -> Ring {
        Ring(Arc::new(RingData { vars: vars.into_iter().map(Into::into).collect(), field }))
    }

    pub fn nvars(&self) -> usize {
        self.0.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.0.vars
    }

    pub fn field(&self) -> &Field {
        &self.0.field
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.vars.iter().position(|v| v == name)
    }

    /// The same field with extra variables appended.
    pub fn with_extra_vars(&self, names: &[&str]) -> Ring {
        let mut vars = self.0.vars.clone();
        for n in names {
            let mut name = n.to_string();
            while vars.contains(&name) {
                name.push('_');
            }
            vars.push(name);
        }
        Ring::new(vars, self.0.field.clone())
    }

    /// Same variables over a different field.
    pub fn with_field(&self, field: Field) -> Ring {
        Ring::new(self.0.vars.clone(), field)
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial { ring: self.clone(), terms: BTreeMap::new() }
    }

    pub fn one(&self) -> Polynomial {
        self.constant(self.field().one())
    }

    pub fn constant(&self, c: Scalar) -> Polynomial {
        self.term(c, Monomial::one(self.nvars()))
    }

    pub fn var(&self, i: usize) -> Polynomial {
        self.monomial(Monomial::var(self.nvars(), i))
    }

    pub fn monomial(&self, m: Monomial) -> Polynomial {
        self.term(self.field().one(), m)
    }

    pub fn term(&self, c: Scalar, m: Monomial) -> Polynomial {
        assert_eq!(m.nvars(), self.nvars());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { ring: self.clone(), terms }
    }

    /// `x^u - c x^v`.
    pub fn binomial(&self, u: Monomial, c: Scalar, v: Monomial) -> Polynomial {
        &self.monomial(u) - &self.term(c, v)
    }

    pub fn from_terms(&self, terms: impl IntoIterator<Item = (Scalar, Monomial)>) -> Polynomial {
        let mut p = self.zero();
        for (c, m) in terms {
            p.add_term(c, m);
        }
        p
    }

    pub fn fmt_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.0.vars[i].clone()),
                _ => parts.push(format!("{}^{}", self.0.vars[i], e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// A sparse polynomial; no zero coefficients are stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: Ring,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&Scalar> {
        self.terms.get(m)
    }

    pub fn support(&self) -> Vec<Monomial> {
        self.terms.keys().cloned().collect()
    }

    pub fn is_binomial(&self) -> bool {
        self.terms.len() <= 2
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn add_term(&mut self, c: Scalar, m: Monomial) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let s = &*old + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn leading_term(&self, ord: &TermOrder) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().max_by(|a, b| ord.cmp(a.0, b.0))
    }

    pub fn leading_monomial(&self, ord: &TermOrder) -> Option<&Monomial> {
        self.leading_term(ord).map(|t| t.0)
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return self.ring.zero();
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(u, a)| (u.mul(m), a.clone())).collect(),
        }
    }

    /// Divides by the leading coefficient.
    pub fn make_monic(&self, ord: &TermOrder) -> Polynomial {
        match self.leading_term(ord) {
            Some((_, c)) => self.scale(&c.inv().unwrap()),
            None => self.clone(),
        }
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// Embeds into `ring`, which must extend this ring by trailing variables.
    pub fn extend_to(&self, ring: &Ring) -> Polynomial {
        let extra = ring.nvars() - self.ring.nvars();
        Polynomial {
            ring: ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.extend(extra), c.clone())).collect(),
        }
    }

    /// Drops trailing variables, which must not occur.
    pub fn truncate_to(&self, ring: &Ring) -> Polynomial {
        let n = ring.nvars();
        Polynomial {
            ring: ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    debug_assert!(m.0[n..].iter().all(|&e| e == 0));
                    (Monomial(m.0[..n].to_vec()), c.clone())
                })
                .collect(),
        }
    }

    /// Substitutes `x_i -> values[i]` for each `Some` entry.
    pub fn substitute(&self, values: &[Option<Scalar>]) -> Polynomial {
        let mut out = self.ring.zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut e = m.0.clone();
            for (i, v) in values.iter().enumerate() {
                if let Some(v) = v {
                    coeff = &coeff * &v.pow(e[i] as i64);
                    e[i] = 0;
                }
            }
            out.add_term(coeff, Monomial(e));
        }
        out
    }

    /// Replaces every occurrence of the given variables by 1, without
    /// collecting the resulting coefficients (the "erasure" of those
    /// variables).
    pub fn erase_vars(&self, vars: &[usize]) -> Polynomial {
        let values: Vec<Option<Scalar>> = (0..self.ring.nvars())
            .map(|i| if vars.contains(&i) { Some(self.ring.field().one()) } else { None })
            .collect();
        self.substitute(&values)
    }

    /// Multiplication by a polynomial.
    pub fn mul_poly(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.ring.zero();
        for (m, a) in &self.terms {
            for (u, b) in &other.terms {
                out.add_term(a * b, m.mul(u));
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = self.ring.one();
        for _ in 0..k {
            acc = acc.mul_poly(self);
        }
        acc
    }

    /// True when all terms have equal weighted degree under every row of `a`.
    pub fn is_homogeneous(&self, a: &[Vec<i64>]) -> bool {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else { return true };
        let d0: Vec<i64> = a.iter().map(|row| first.weight(row)).collect();
        it.all(|m| a.iter().zip(&d0).all(|(row, d)| m.weight(row) == *d))
    }

    /// The variables occurring in the polynomial.
    pub fn variables(&self) -> Vec<usize> {
        let n = self.ring.nvars();
        (0..n).filter(|&i| self.terms.keys().any(|m| m.0[i] > 0)).collect()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let ord = TermOrder::GRevLex;
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| ord.cmp(b.0, a.0));
        let mut out = String::new();
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative_rational() || (!c.is_compound() && c.to_string().starts_with('-'));
            let abs = if neg { -c } else { c.clone() };
            let mon = if m.is_one() { String::new() } else { self.ring.fmt_monomial(m) };
            let body = if mon.is_empty() {
                format!("{abs}")
            } else if abs.is_one() {
                mon
            } else if abs.is_compound() {
                format!("({abs})*{mon}")
            } else {
                format!("{abs}*{mon}")
            };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        write!(f, "{out}")
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(c.clone(), m.clone());
        }
        out
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(-c, m.clone());
        }
        out
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.mul_poly(rhs)
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

/// True iff the polynomial has at most two terms.
pub fn is_binomial_poly(p: &Polynomial) -> bool {
    p.is_binomial()
}

pub fn poly_support(p: &Polynomial) -> Vec<Monomial> {
    p.support()
}
