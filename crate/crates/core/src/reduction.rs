//! Setting the σ-variables to a point: restriction, weak witnesses,
//! lifting and non-lifting, witness transfer, and the toral primary
//! component computed in the smaller ring.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::grading::check_positive_grading;
use crate::ideal::Ideal;
use crate::lattice::{lattice_ideal, LatticeCharacter};
use crate::linalg::{rank, row_reduce};
use crate::meso::{classified_witnesses, complement, SearchMode, WitnessRecord};
use crate::poly::{Monomial, Polynomial, Ring};
use crate::primdec::{is_toral_prime, primary_decomposition, PrimaryOptions};

/// Data for `I ↦ Ī = I · k[N^n]/⟨x_i - ν_i | i ∈ σ⟩`, read in `k[N^{σ^c}]`.
#[derive(Debug, Clone)]
pub struct RestrictionContext {
    pub sigma: Vec<usize>,
    pub nu: Vec<Scalar>,
    /// `σ^c` in increasing order; variable `k` of the small ring is `keep[k]`.
    pub keep: Vec<usize>,
    pub ring: Ring,
    pub big: Ring,
    pub grading: Option<Vec<Vec<i64>>>,
}

impl RestrictionContext {
    /// Checks that `ν` has nonzero entries and is a zero of `I ∩ k[N^σ]`.
    pub fn new(i: &Ideal, sigma: &[usize], nu: Vec<Scalar>, grading: Option<Vec<Vec<i64>>>) -> Result<RestrictionContext> {
        let big = i.ring().clone();
        let mut sigma = sigma.to_vec();
        sigma.sort_unstable();
        sigma.dedup();
        if nu.len() != sigma.len() {
            return Err(Error::Invalid(format!("ν has {} entries but σ has {}", nu.len(), sigma.len())));
        }
        if nu.iter().any(|v| v.is_zero()) {
            return Err(Error::Invalid("ν must lie in the torus".into()));
        }
        let keep = complement(big.nvars(), &sigma);
        let names: Vec<String> = keep.iter().map(|&k| big.vars()[k].clone()).collect();
        let ring = Ring::new(names, big.field().clone());
        let ctx = RestrictionContext { sigma, nu, keep, ring, big, grading };
        let part = i.eliminate(&ctx.keep);
        for g in part.gb().elements() {
            if !ctx.substitute(g).is_zero() {
                return Err(Error::Invalid(format!(
                    "ν is not a zero of I ∩ k[N^σ] ({g} does not vanish); setting the σ-variables would introduce constants"
                )));
            }
        }
        Ok(ctx)
    }

    /// `ν = (1, …, 1)`.
    pub fn ones(i: &Ideal, sigma: &[usize], grading: Option<Vec<Vec<i64>>>) -> Result<RestrictionContext> {
        let one = i.ring().field().one();
        let mut s = sigma.to_vec();
        s.sort_unstable();
        s.dedup();
        RestrictionContext::new(i, &s, vec![one; s.len()], grading)
    }

    fn substitute(&self, p: &Polynomial) -> Polynomial {
        let mut values: Vec<Option<Scalar>> = vec![None; self.big.nvars()];
        for (k, &s) in self.sigma.iter().enumerate() {
            values[s] = Some(self.nu[k].clone());
        }
        p.substitute(&values)
    }

    /// The image `p̄` in the small ring.
    pub fn restrict(&self, p: &Polynomial) -> Polynomial {
        let q = self.substitute(p);
        self.ring.from_terms(q.terms().map(|(m, c)| (c.clone(), self.shrink(m))))
    }

    pub fn shrink(&self, m: &Monomial) -> Monomial {
        Monomial(self.keep.iter().map(|&k| m.0[k]).collect())
    }

    pub fn grow(&self, m: &Monomial) -> Monomial {
        let mut e = vec![0; self.big.nvars()];
        for (k, &v) in self.keep.iter().enumerate() {
            e[v] = m.0[k];
        }
        Monomial(e)
    }

    fn is_all_ones(&self) -> bool {
        self.nu.iter().all(|v| v.is_one())
    }

    /// The standing hypotheses of the lifting results: `I` is
    /// A-homogeneous for a `d × n` matrix of rank `d < n`, `|σ| = d`,
    /// `A_σ` has rank `d`, and `ν = (1, …, 1)`.
    pub fn require_convention(&self, i: &Ideal) -> Result<&[Vec<i64>]> {
        let a = self.grading.as_deref().ok_or_else(|| Error::Invalid("a grading matrix is required".into()))?;
        let n = self.big.nvars();
        let d = a.len();
        let q = Field::rationals();
        let rows = |cols: &[usize]| -> Vec<Vec<Scalar>> { a.iter().map(|r| cols.iter().map(|&c| q.from_int(r[c])).collect()).collect() };
        let all: Vec<usize> = (0..n).collect();
        if rank(rows(&all), n) != d || d >= n {
            return Err(Error::Invalid(format!("grading matrix must have rank d = {d} < n = {n}")));
        }
        if self.sigma.len() != d {
            return Err(Error::Invalid(format!("|σ| = {} but d = {d}", self.sigma.len())));
        }
        if rank(rows(&self.sigma), d) != d {
            return Err(Error::Invalid("A_σ does not have full rank".into()));
        }
        if !i.gens().iter().all(|g| g.is_homogeneous(a)) {
            return Err(Error::NotHomogeneous(i.to_string()));
        }
        if !self.is_all_ones() {
            return Err(Error::Invalid("ν must be the all-ones vector".into()));
        }
        Ok(a)
    }
}

/// `Ī` as an ideal of `k[N^{σ^c}]`.
pub fn restrict_ideal(i: &Ideal, ctx: &RestrictionContext) -> Ideal {
    let gens: Vec<Polynomial> = i.gens().iter().map(|g| ctx.restrict(g)).filter(|g| !g.is_zero()).collect();
    Ideal::new(&ctx.ring, gens).reduced()
}

/// Weak monomial witnesses of `ibar` for the variables outside `sigma`,
/// with essentiality filled in. Candidates range over all monomials up to
/// the bound.
pub fn weak_monomial_witnesses(ibar: &Ideal, sigma: &[usize], bound: Option<i64>) -> Result<Vec<WitnessRecord>> {
    classified_witnesses(ibar, sigma, &SearchMode::Ungraded, bound)
}

/// Solves `A_σ v = rhs` over the rationals (`A_σ` square and invertible).
fn solve_sigma(a: &[Vec<i64>], sigma: &[usize], rhs: &[i64]) -> Vec<BigRational> {
    let q = Field::rationals();
    let d = sigma.len();
    let mut rows: Vec<Vec<Scalar>> =
        a.iter().zip(rhs).map(|(r, &b)| sigma.iter().map(|&c| q.from_int(r[c])).chain([q.from_int(b)]).collect()).collect();
    row_reduce(&mut rows, d + 1);
    rows.iter().map(|r| r[d].as_rational().unwrap()).collect()
}

/// A polynomial `f ∈ I` whose σ-erasure is `g ∈ Ī`.
///
/// Terms of `g` are grouped by their degree modulo `A_σ Z^σ`. Each group is
/// lifted to an A-homogeneous polynomial with the same erasure, which lies
/// in `I : (Π σ)^∞`, and is then multiplied by a power of `Π σ` until it lies
/// in `I`.
pub fn lift_polynomial(g: &Polynomial, i: &Ideal, ctx: &RestrictionContext) -> Result<Polynomial> {
    let a = ctx.require_convention(i)?;
    let ibar = restrict_ideal(i, ctx);
    if !ibar.contains(g) {
        return Err(Error::Invalid(format!("{g} is not in the restricted ideal")));
    }
    let terms: Vec<(Monomial, Scalar)> = g.terms().map(|(m, c)| (ctx.grow(m), c.clone())).collect();
    let deg = |m: &Monomial| -> Vec<i64> { a.iter().map(|r| m.weight(r)).collect() };
    // offsets r_t = A_σ^{-1} A (u_0 - u_t) relative to each group's first term
    let mut groups: Vec<Vec<(usize, Vec<BigRational>)>> = Vec::new();
    for (t, (u, _)) in terms.iter().enumerate() {
        let du = deg(u);
        let mut placed = false;
        for grp in groups.iter_mut() {
            let d0 = deg(&terms[grp[0].0].0);
            let rhs: Vec<i64> = d0.iter().zip(&du).map(|(x, y)| x - y).collect();
            let r = solve_sigma(a, &ctx.sigma, &rhs);
            if r.iter().all(|x| x.is_integer()) {
                grp.push((t, r));
                placed = true;
                break;
            }
        }
        if !placed {
            groups.push(vec![(t, vec![BigRational::from_integer(0.into()); ctx.sigma.len()])]);
        }
    }
    let n = ctx.big.nvars();
    let sigma_prod = Monomial::product_of(n, &ctx.sigma);
    let mut f = ctx.big.zero();
    for grp in groups {
        let mins: Vec<BigRational> =
            (0..ctx.sigma.len()).map(|k| grp.iter().map(|(_, r)| r[k].clone()).min().unwrap()).collect();
        let mut h = ctx.big.zero();
        for (t, r) in &grp {
            let mut e = terms[*t].0.clone();
            for (k, &s) in ctx.sigma.iter().enumerate() {
                let v = (&r[k] - &mins[k]).to_integer();
                e.0[s] += u32::try_from(v.abs()).map_err(|_| Error::Resource("lift exponent too large".into()))?;
            }
            h.add_term(terms[*t].1.clone(), e);
        }
        let mut k = 0;
        while !i.contains(&h) {
            k += 1;
            if k > 256 {
                return Err(Error::Internal(format!("lift of {g} does not enter I")));
            }
            h = h.mul_monomial(&sigma_prod);
        }
        f = &f + &h;
    }
    if !i.contains(&f) || ctx.restrict(&f.erase_vars(&ctx.sigma)) != *g {
        return Err(Error::Internal(format!("lift of {g} failed verification")));
    }
    Ok(f)
}

/// The implication `p ∉ I : (Π σ)^∞  ⟹  p̄ ∉ Ī` for an A-homogeneous `p`.
pub fn check_nonlifting(p: &Polynomial, i: &Ideal, ctx: &RestrictionContext) -> Result<bool> {
    let a = ctx.require_convention(i)?;
    if !p.is_homogeneous(a) {
        return Err(Error::NotHomogeneous(p.to_string()));
    }
    if i.saturate_vars(&ctx.sigma).contains(p) {
        return Ok(true);
    }
    Ok(!restrict_ideal(i, ctx).contains(&ctx.restrict(p)))
}

/// Witness monomials of `I` for `m_{σ^c}` next to the weak witnesses of
/// `Ī`, both as monomials of the small ring.
#[derive(Debug, Clone)]
pub struct TransferReport {
    pub witnesses: BTreeSet<Monomial>,
    pub weak_witnesses: BTreeSet<Monomial>,
    pub essential: BTreeSet<Monomial>,
    pub weak_essential: BTreeSet<Monomial>,
    pub restricted: Ideal,
}

impl TransferReport {
    pub fn agrees(&self) -> bool {
        self.witnesses == self.weak_witnesses && self.essential == self.weak_essential
    }
}

fn monomials_of(ws: &[WitnessRecord], f: impl Fn(&Monomial) -> Monomial, essential_only: bool) -> BTreeSet<Monomial> {
    ws.iter().filter(|w| !essential_only || w.is_essential()).flat_map(|w| w.class.iter().map(&f)).collect()
}

/// Computes both witness sets without checking the standing hypotheses.
pub fn compare_witnesses(i: &Ideal, ctx: &RestrictionContext, mode: &SearchMode, bound: Option<i64>) -> Result<TransferReport> {
    let full = classified_witnesses(i, &ctx.sigma, mode, bound)?;
    let ibar = restrict_ideal(i, ctx);
    let weak = if ibar.is_unit() { vec![] } else { weak_monomial_witnesses(&ibar, &[], bound)? };
    Ok(TransferReport {
        witnesses: monomials_of(&full, |m| ctx.shrink(m), false),
        essential: monomials_of(&full, |m| ctx.shrink(m), true),
        weak_witnesses: monomials_of(&weak, Monomial::clone, false),
        weak_essential: monomials_of(&weak, Monomial::clone, true),
        restricted: ibar,
    })
}

/// The witness transfer check under the standing hypotheses (see
/// [`RestrictionContext::require_convention`]).
pub fn witness_transfer_check(i: &Ideal, ctx: &RestrictionContext, bound: Option<i64>) -> Result<TransferReport> {
    let a = ctx.require_convention(i)?;
    let g = check_positive_grading(a)?;
    compare_witnesses(i, ctx, &SearchMode::Graded(g), bound)
}

/// The monomial ideal of `k[N^{σ^c}]` spanned by monomials that divide no
/// essential weak witness of `ibar`.
pub fn witness_monomial_ideal(ibar: &Ideal, bound: Option<i64>) -> Result<Ideal> {
    let ring = ibar.ring();
    let n = ring.nvars();
    if ibar.is_unit() {
        return Ok(Ideal::unit(ring));
    }
    let ws = weak_monomial_witnesses(ibar, &[], bound)?;
    let tops: Vec<Monomial> = ws.iter().filter(|w| w.is_essential()).flat_map(|w| w.class.iter().cloned()).collect();
    // minimal monomials outside the order ideal of the witnesses
    let mut gens: BTreeMap<Monomial, ()> = BTreeMap::new();
    let below = |m: &Monomial| tops.iter().any(|t| m.divides(t));
    let mut frontier = vec![Monomial::one(n)];
    let mut seen = BTreeSet::new();
    while let Some(m) = frontier.pop() {
        if !seen.insert(m.clone()) {
            continue;
        }
        for k in 0..n {
            let next = m.mul(&Monomial::var(n, k));
            if below(&next) {
                frontier.push(next);
            } else {
                gens.insert(next, ());
            }
        }
    }
    if !below(&Monomial::one(n)) {
        return Ok(Ideal::unit(ring));
    }
    let ms: Vec<Monomial> = gens.keys().filter(|m| !gens.keys().any(|o| o != *m && o.divides(m))).cloned().collect();
    Ok(Ideal::from_monomials(ring, ms))
}

/// The toral `P`-primary component `((I + I(χ) + K) : (Π σ)^∞) + M̄` for
/// `P = I(χ) + m_{σ^c}`, with `M̄` read off the restriction of `I` at `ν`.
/// `K` may be omitted only when `P` is a minimal prime of `I`.
pub fn toral_primary_component(
    i: &Ideal,
    chi: &LatticeCharacter,
    ctx: &RestrictionContext,
    a: &[Vec<i64>],
    k: Option<&Ideal>,
) -> Result<Ideal> {
    let ring = i.ring();
    if ring.field().characteristic() != 0 {
        return Err(Error::Capability("toral components are computed in characteristic zero".into()));
    }
    let sigma = &ctx.sigma;
    if !is_toral_prime(chi, sigma, a) {
        return Err(Error::Invalid("the prime is Andean".into()));
    }
    let lat = lattice_ideal(chi, ring);
    let prime = lat.sum(&Ideal::of_vars(ring, &ctx.keep)).reduced();
    let k = match k {
        Some(k) => k.clone(),
        None => {
            let d = primary_decomposition(i, &PrimaryOptions::default())?;
            match d.components.iter().find(|c| c.prime.equals(&prime)) {
                Some(c) if c.minimal => Ideal::zero(ring),
                Some(_) => return Err(Error::Invalid("the prime is embedded; supply K".into())),
                None => return Err(Error::Invalid(format!("{prime} is not an associated prime"))),
            }
        }
    };
    let base = i.sum(&lat).sum(&k).saturate_vars(sigma);
    let mbar = witness_monomial_ideal(&restrict_ideal(i, ctx), None)?;
    let mbig = Ideal::from_monomials(ring, mbar.gens().iter().filter_map(|g| g.terms().next().map(|(m, _)| ctx.grow(m))));
    let comp = base.sum(&mbig).reduced();
    if !comp.contains_ideal(i) || !prime.contains_ideal(&comp) {
        return Err(Error::Internal(format!("{comp} is not between I and {prime}")));
    }
    if ctx.keep.iter().any(|&j| comp.nilpotency_order(j, 256).is_none()) {
        return Err(Error::Internal(format!("{comp} is not primary to {prime}")));
    }
    Ok(comp)
}

/// `K` by doubling exponents from the nilpotency orders until the
/// component stops changing.
pub fn toral_primary_component_stabilized(
    i: &Ideal,
    chi: &LatticeCharacter,
    ctx: &RestrictionContext,
    a: &[Vec<i64>],
) -> Result<(Ideal, Ideal)> {
    let ring = i.ring();
    let n = ring.nvars();
    let mut exps: Vec<u32> = ctx.keep.iter().map(|&j| i.nilpotency_order(j, 64).unwrap_or(1)).collect();
    let k_of = |exps: &[u32]| Ideal::from_monomials(ring, ctx.keep.iter().zip(exps).map(|(&j, &e)| Monomial::var(n, j).pow(e)));
    let mut k = k_of(&exps);
    let mut comp = toral_primary_component(i, chi, ctx, a, Some(&k))?;
    for _ in 0..8 {
        exps.iter_mut().for_each(|e| *e *= 2);
        let k2 = k_of(&exps);
        let next = toral_primary_component(i, chi, ctx, a, Some(&k2))?;
        if next.equals(&comp) {
            return Ok((comp, k));
        }
        comp = next;
        k = k2;
    }
    Err(Error::Resource("K did not stabilize".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{int_matrix, IntLattice};

    fn m(e: &[u32]) -> Monomial {
        Monomial(e.to_vec())
    }

    fn remark_ideal() -> Ideal {
        let r = Ring::new(["x", "z", "w"], Field::rationals());
        let one = r.field().one();
        Ideal::new(&r, vec![
            r.binomial(m(&[0, 2, 0]), one.clone(), m(&[0, 0, 2])),
            r.binomial(m(&[1, 1, 0]), one, m(&[1, 0, 1])),
            r.monomial(m(&[2, 0, 0])),
        ])
    }

    #[test]
    fn restriction_of_remark_ideal() {
        let i = remark_ideal();
        let ctx = RestrictionContext::ones(&i, &[1, 2], None).unwrap();
        let ibar = restrict_ideal(&i, &ctx);
        assert!(ibar.equals(&Ideal::from_monomials(&ctx.ring, [m(&[2])])));
        let ws = weak_monomial_witnesses(&ibar, &[], None).unwrap();
        assert_eq!(ws.len(), 1);
        assert_eq!(ws[0].w, m(&[1]));
        assert!(ws[0].is_essential() && ws[0].verify(&ibar));
    }

    #[test]
    fn nu_must_be_a_zero() {
        let r = Ring::new(["x", "y"], Field::rationals());
        let one = r.field().one();
        let i = Ideal::new(&r, vec![r.binomial(m(&[3, 0]), one.clone(), m(&[0, 0])), r.monomial(m(&[0, 2]))]);
        assert!(RestrictionContext::new(&i, &[0], vec![one], None).is_ok());
        let err = RestrictionContext::new(&i, &[0], vec![r.field().from_int(2)], None).unwrap_err();
        assert!(err.to_string().contains("not a zero"));
    }

    #[test]
    fn lattice_ideal_restricts_to_zero() {
        let r = Ring::new(["x", "y"], Field::rationals());
        let i = Ideal::new(&r, vec![&r.var(0) - &r.var(1)]);
        let ctx = RestrictionContext::ones(&i, &[0, 1], None).unwrap();
        let ibar = restrict_ideal(&i, &ctx);
        assert!(ibar.is_zero());
        let ws = weak_monomial_witnesses(&ibar, &[], None).unwrap();
        assert_eq!(ws.len(), 1);
        assert!(ws[0].w.is_one());
    }

    // x² - yz, xy - z² ... graded by total degree with σ = {z}
    fn conv_ideal() -> (Ideal, RestrictionContext) {
        let r = Ring::new(["x", "y", "z"], Field::rationals());
        let one = r.field().one();
        let i = Ideal::new(&r, vec![
            r.binomial(m(&[2, 0, 0]), one.clone(), m(&[0, 1, 1])),
            r.monomial(m(&[0, 2, 0])),
            r.binomial(m(&[1, 1, 0]), one, m(&[0, 0, 2])).mul_monomial(&m(&[1, 0, 0])),
        ]);
        let ctx = RestrictionContext::ones(&i, &[2], Some(vec![vec![1, 1, 1]])).unwrap();
        (i, ctx)
    }

    #[test]
    fn lifts_restricted_basis() {
        let (i, ctx) = conv_ideal();
        let ibar = restrict_ideal(&i, &ctx);
        for b in ibar.gb().elements() {
            let f = lift_polynomial(b, &i, &ctx).unwrap();
            assert!(i.contains(&f));
            assert_eq!(ctx.restrict(&f), *b);
        }
        let mixed = &ibar.gb().elements()[0].mul_monomial(&m(&[1, 0])) + &ibar.gb().elements()[1];
        let f = lift_polynomial(&mixed, &i, &ctx).unwrap();
        assert!(i.contains(&f));
    }

    #[test]
    fn nonlifting_instance() {
        let (i, ctx) = conv_ideal();
        let r = i.ring();
        assert!(check_nonlifting(&r.var(0), &i, &ctx).unwrap());
        assert!(check_nonlifting(&r.monomial(m(&[0, 2, 0])), &i, &ctx).unwrap());
    }

    #[test]
    fn convention_rejects_equal_columns() {
        let i = remark_ideal();
        let ctx = RestrictionContext::ones(&i, &[1, 2], Some(vec![vec![1, 1, 1]])).unwrap();
        assert!(ctx.require_convention(&i).is_err());
    }

    #[test]
    fn example_five_two_component() {
        let i = remark_ideal();
        let r = i.ring();
        let ctx = RestrictionContext::ones(&i, &[1, 2], None).unwrap();
        let l = IntLattice::from_generators(3, &int_matrix(&[vec![0, 1, -1]]));
        let minus_one = -&r.field().one();
        let chi = LatticeCharacter::new(l.clone(), vec![minus_one], r.field()).unwrap();
        let a = vec![vec![1, 1, 1]];
        let comp = toral_primary_component(&i, &chi, &ctx, &a, None).unwrap();
        assert!(comp.equals(&Ideal::new(r, vec![&r.var(1) + &r.var(2), r.var(0)])));
        assert!(witness_monomial_ideal(&restrict_ideal(&i, &ctx), None).unwrap().equals(&Ideal::from_monomials(&ctx.ring, [m(&[2])])));
        let chi = LatticeCharacter::trivial(l, r.field());
        let k = Ideal::from_monomials(r, [m(&[2, 0, 0])]);
        let comp = toral_primary_component(&i, &chi, &ctx, &a, Some(&k)).unwrap();
        let expected = Ideal::new(r, vec![&r.var(1) - &r.var(2), r.monomial(m(&[2, 0, 0]))]);
        assert!(comp.equals(&expected));
        assert!(toral_primary_component(&i, &chi, &ctx, &a, None).unwrap().equals(&expected));
    }
}
