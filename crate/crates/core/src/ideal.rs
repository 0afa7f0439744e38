//! Ideals with a cached Gröbner basis, and the standard ideal operations
//! built on elimination.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::groebner::{groebner_basis, GroebnerBasis};
use crate::poly::{Monomial, Polynomial, Ring, TermOrder};

/// An ideal given by generators. The grevlex Gröbner basis is computed
/// lazily and cached.
#[derive(Clone)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Polynomial>,
    gb: OnceLock<Arc<GroebnerBasis>>,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.gens.iter().map(|p| p.to_string()).collect();
        write!(f, "<{}>", g.join(", "))
    }
}

impl Ideal {
    pub fn new(ring: &Ring, gens: Vec<Polynomial>) -> Ideal {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal { ring: ring.clone(), gens, gb: OnceLock::new() }
    }

    pub fn zero(ring: &Ring) -> Ideal {
        Ideal::new(ring, vec![])
    }

    pub fn unit(ring: &Ring) -> Ideal {
        Ideal::new(ring, vec![ring.one()])
    }

    pub fn from_monomials(ring: &Ring, ms: impl IntoIterator<Item = Monomial>) -> Ideal {
        Ideal::new(ring, ms.into_iter().map(|m| ring.monomial(m)).collect())
    }

    /// The ideal generated by the given variables.
    pub fn of_vars(ring: &Ring, vars: &[usize]) -> Ideal {
        Ideal::new(ring, vars.iter().map(|&i| ring.var(i)).collect())
    }

    fn from_basis(gb: GroebnerBasis) -> Ideal {
        let ring = gb.ring().clone();
        let gens = gb.elements().to_vec();
        let cell = OnceLock::new();
        if *gb.order() == TermOrder::GRevLex {
            let _ = cell.set(Arc::new(gb));
        }
        Ideal { ring, gens, gb: cell }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn gb(&self) -> &GroebnerBasis {
        self.gb.get_or_init(|| Arc::new(groebner_basis(&self.ring, &self.gens, &TermOrder::GRevLex)))
    }

    /// The ideal with its reduced grevlex basis as generators.
    pub fn reduced(&self) -> Ideal {
        let gb = self.gb().clone();
        Ideal::from_basis(gb)
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gb().is_unit()
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        self.gb().contains(p)
    }

    pub fn contains_monomial(&self, m: &Monomial) -> bool {
        self.gb().contains_monomial(m)
    }

    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        self.gb().normal_form(p)
    }

    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    pub fn equals(&self, other: &Ideal) -> bool {
        self.gb().elements() == other.gb().elements()
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, g)
    }

    pub fn add_gens(&self, extra: impl IntoIterator<Item = Polynomial>) -> Ideal {
        let mut g = self.gens.clone();
        g.extend(extra);
        Ideal::new(&self.ring, g)
    }

    /// Every generator has at most two terms.
    pub fn has_binomial_generators(&self) -> bool {
        self.gens.iter().all(|g| g.is_binomial())
    }

    /// `I ∩ J` by eliminating `t` from `tI + (1-t)J`.
    pub fn intersect(&self, other: &Ideal) -> Ideal {
        if self.is_zero() || other.is_zero() {
            return Ideal::zero(&self.ring);
        }
        if self.is_unit() {
            return other.reduced();
        }
        if other.is_unit() || other.contains_ideal(self) {
            return self.reduced();
        }
        if self.contains_ideal(other) {
            return other.reduced();
        }
        let n = self.ring.nvars();
        let big = self.ring.with_extra_vars(&["t"]);
        let t = big.var(n);
        let one_minus_t = &big.one() - &t;
        let mut gens = Vec::new();
        for g in self.gb().elements() {
            gens.push(&g.extend_to(&big) * &t);
        }
        for g in other.gb().elements() {
            gens.push(&g.extend_to(&big) * &one_minus_t);
        }
        let gb = groebner_basis(&big, &gens, &TermOrder::Elimination(vec![n]));
        let kept: Vec<Polynomial> = gb
            .elements()
            .iter()
            .filter(|p| p.terms().all(|(m, _)| m.0[n] == 0))
            .map(|p| p.truncate_to(&self.ring))
            .collect();
        Ideal::new(&self.ring, kept).reduced()
    }

    pub fn intersect_all<'a>(ring: &Ring, ideals: impl IntoIterator<Item = &'a Ideal>) -> Ideal {
        let mut acc: Option<Ideal> = None;
        for i in ideals {
            acc = Some(match acc {
                None => i.reduced(),
                Some(a) => a.intersect(i),
            });
        }
        acc.unwrap_or_else(|| Ideal::unit(ring))
    }

    /// `I : f`.
    pub fn quotient(&self, f: &Polynomial) -> Result<Ideal> {
        if f.is_zero() {
            return Err(Error::Invalid("quotient by the zero polynomial".into()));
        }
        if f.is_constant() {
            return Ok(self.reduced());
        }
        if self.contains(f) {
            return Ok(Ideal::unit(&self.ring));
        }
        let fi = Ideal::new(&self.ring, vec![f.clone()]);
        let inter = self.intersect(&fi);
        let gens = inter.gens.iter().map(|g| exact_division(g, f)).collect::<Option<Vec<_>>>();
        let gens = gens.ok_or_else(|| Error::Internal("inexact division in quotient".into()))?;
        Ok(Ideal::new(&self.ring, gens).reduced())
    }

    /// `I : x^m`.
    pub fn quotient_monomial(&self, m: &Monomial) -> Ideal {
        self.quotient(&self.ring.monomial(m.clone())).expect("monomials are nonzero")
    }

    /// `I : J`.
    pub fn quotient_ideal(&self, other: &Ideal) -> Result<Ideal> {
        let mut parts = Vec::new();
        for g in other.gens() {
            parts.push(self.quotient(g)?);
        }
        Ok(Ideal::intersect_all(&self.ring, &parts))
    }

    /// `I : f^∞` by eliminating `t` from `I + <1 - t f>`.
    pub fn saturate(&self, f: &Polynomial) -> Result<Ideal> {
        if f.is_zero() {
            return Err(Error::Invalid("saturation by the zero polynomial".into()));
        }
        if f.is_constant() || self.is_zero() {
            return Ok(self.reduced());
        }
        let n = self.ring.nvars();
        let big = self.ring.with_extra_vars(&["t"]);
        let t = big.var(n);
        let mut gens: Vec<Polynomial> = self.gb().elements().iter().map(|g| g.extend_to(&big)).collect();
        gens.push(&big.one() - &(&t * &f.extend_to(&big)));
        let gb = groebner_basis(&big, &gens, &TermOrder::Elimination(vec![n]));
        let kept: Vec<Polynomial> = gb
            .elements()
            .iter()
            .filter(|p| p.terms().all(|(m, _)| m.0[n] == 0))
            .map(|p| p.truncate_to(&self.ring))
            .collect();
        Ok(Ideal::new(&self.ring, kept).reduced())
    }

    /// Saturation by the product of the given variables.
    pub fn saturate_vars(&self, vars: &[usize]) -> Ideal {
        if vars.is_empty() {
            return self.reduced();
        }
        let f = self.ring.monomial(Monomial::product_of(self.ring.nvars(), vars));
        self.saturate(&f).expect("monomials are nonzero")
    }

    /// Saturation as the stabilized chain `I : f^k`. Slower than
    /// [`Ideal::saturate`]; kept as an independent cross-check.
    pub fn saturate_by_chain(&self, f: &Polynomial) -> Result<(Ideal, u32)> {
        let mut cur = self.reduced();
        let mut k = 0;
        loop {
            let next = cur.quotient(f)?;
            if next.equals(&cur) {
                return Ok((cur, k));
            }
            cur = next;
            k += 1;
        }
    }

    /// `I ∩ k[x_j : j ∉ vars]`, returned as an ideal of the same ring.
    pub fn eliminate(&self, vars: &[usize]) -> Ideal {
        if vars.is_empty() {
            return self.reduced();
        }
        let gb = groebner_basis(&self.ring, self.gb().elements(), &TermOrder::Elimination(vars.to_vec()));
        let kept: Vec<Polynomial> = gb
            .elements()
            .iter()
            .filter(|p| p.terms().all(|(m, _)| vars.iter().all(|&i| m.0[i] == 0)))
            .cloned()
            .collect();
        Ideal::new(&self.ring, kept).reduced()
    }

    /// Krull dimension of the quotient ring: the largest set of variables
    /// containing the support of no leading monomial.
    pub fn dimension(&self) -> Result<usize> {
        let gb = self.gb();
        if gb.is_unit() {
            return Err(Error::UnitIdeal("dimension"));
        }
        let n = self.ring.nvars();
        let supports: Vec<u64> = gb
            .leading_monomials()
            .iter()
            .map(|m| m.support().iter().fold(0u64, |acc, &i| acc | (1 << i)))
            .collect();
        let mut best = 0;
        for mask in 0u64..(1u64 << n) {
            let size = mask.count_ones() as usize;
            if size <= best {
                continue;
            }
            if supports.iter().all(|&s| s & !mask != 0) {
                best = size;
            }
        }
        Ok(best)
    }

    /// `None` if the reduced grevlex basis consists of binomials; otherwise
    /// a basis element with more than two terms.
    pub fn binomiality_witness(&self) -> Option<Polynomial> {
        self.gb().elements().iter().find(|g| !g.is_binomial()).cloned()
    }

    pub fn is_binomial(&self) -> bool {
        self.binomiality_witness().is_none()
    }

    /// Whether `x_i` is a nonzerodivisor modulo the ideal.
    pub fn is_nonzerodivisor(&self, i: usize) -> bool {
        let q = self.quotient(&self.ring.var(i)).expect("variables are nonzero");
        q.equals(self)
    }

    /// Smallest `k` with `x_i^k` in the ideal, if any power up to `limit` is.
    pub fn nilpotency_order(&self, i: usize, limit: u32) -> Option<u32> {
        let n = self.ring.nvars();
        let pw = |k: u32| Monomial::var(n, i).pow(k);
        // doubling then binary search
        let mut hi = 1;
        while !self.contains_monomial(&pw(hi)) {
            if hi >= limit {
                return None;
            }
            hi = (hi * 2).min(limit);
        }
        let mut lo = 0;
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if self.contains_monomial(&pw(mid)) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Some(hi)
    }
}

/// Exact division `p / f`, or `None` if `f` does not divide `p`.
pub fn exact_division(p: &Polynomial, f: &Polynomial) -> Option<Polynomial> {
    let ord = TermOrder::GRevLex;
    let (lm_f, lc_f) = f.leading_term(&ord)?;
    let (lm_f, lc_f) = (lm_f.clone(), lc_f.clone());
    let ring = p.ring();
    let mut rest = p.clone();
    let mut q = ring.zero();
    while let Some((m, c)) = rest.leading_term(&ord) {
        let shift = m.div(&lm_f)?;
        let c = c / &lc_f;
        let t = ring.term(c.clone(), shift.clone());
        rest = &rest - &f.mul_monomial(&shift).scale(&c);
        q = &q + &t;
    }
    Some(q)
}

/// Generators are checked to have at most two terms.
#[derive(Clone, Debug)]
pub struct BinomialIdeal(Ideal);

impl BinomialIdeal {
    pub fn new(ring: &Ring, gens: Vec<Polynomial>) -> Result<BinomialIdeal> {
        if let Some(g) = gens.iter().find(|g| !g.is_binomial()) {
            return Err(Error::Input(format!("generator {g} is not a binomial")));
        }
        Ok(BinomialIdeal(Ideal::new(ring, gens)))
    }

    pub fn ideal(&self) -> &Ideal {
        &self.0
    }

    pub fn into_ideal(self) -> Ideal {
        self.0
    }
}

impl std::ops::Deref for BinomialIdeal {
    type Target = Ideal;
    fn deref(&self) -> &Ideal {
        &self.0
    }
}
