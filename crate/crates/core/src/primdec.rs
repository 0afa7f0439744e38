//! Primary decomposition: lattice ideals, refinement of mesoprimary
//! components, associated primes, the hull and toral parts.

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::lattice::{character_extensions, lattice_ideal, lattice_of_cellular, IntLattice, LatticeCharacter};
use crate::meso::{complement, mesoprimary_decomposition, MesoComponent, MesoDecomposition, MesoOptions};
use crate::poly::{Monomial, Polynomial, Ring};

/// One component of a lattice ideal: `I(ρ_j)` with radical `I(χ_j)`.
#[derive(Debug, Clone)]
pub struct LatticeComponent {
    /// `ρ_j` on `Sat'_p(L)`.
    pub character: LatticeCharacter,
    /// `χ_j` on `Sat(L)`.
    pub prime_character: LatticeCharacter,
    pub primary: Ideal,
    pub prime: Ideal,
}

/// Primary decomposition of `I(ρ)` over the field of `ring`. The
/// characteristic is the field's.
pub fn lattice_primary_decomposition(rho: &LatticeCharacter, ring: &Ring) -> Result<Vec<LatticeComponent>> {
    let p = ring.field().characteristic();
    let rho = rho.over_field(ring.field())?;
    let l = rho.lattice();
    let sat_pp = l.sat_p_prime(p)?;
    let sat = l.saturation();
    let n = ring.nvars();
    let mut out = Vec::new();
    for ext in character_extensions(&rho, &sat_pp)? {
        let chis = if p == 0 { vec![ext.clone()] } else { character_extensions(&ext, &sat)? };
        if chis.len() != 1 {
            return Err(Error::Capability(format!("p-part extension of a character yields {} values in characteristic {p}", chis.len())));
        }
        let chi = chis.into_iter().next().unwrap();
        let primary = lattice_ideal(&ext, ring);
        let prime = if p == 0 { primary.clone() } else { lattice_ideal(&chi, ring) };
        if !prime.is_zero() && prime.dimension()? != n - l.rank() {
            return Err(Error::Internal(format!("lattice prime {prime} has the wrong dimension")));
        }
        out.push(LatticeComponent { character: ext, prime_character: chi, primary, prime });
    }
    Ok(out)
}

/// A primary component and its associated prime `I(χ) + m_{σ^c}`.
#[derive(Debug, Clone)]
pub struct PrimaryComponent {
    pub ideal: Ideal,
    pub prime: Ideal,
    pub sigma: Vec<usize>,
    /// `χ` on `Sat(L)`.
    pub character: LatticeCharacter,
    pub minimal: bool,
    /// `Some` when a grading matrix was supplied.
    pub toral: Option<bool>,
    /// Cogenerators of the mesoprimary components this came from.
    pub cogenerators: Vec<Monomial>,
}

/// Toral test for `I(χ) + m_{σ^c}`: `Sat(L) = ker_Z(A_σ)`. Positivity of
/// `A` is not needed.
pub fn is_toral_prime(chi: &LatticeCharacter, sigma: &[usize], a: &[Vec<i64>]) -> bool {
    let n = chi.lattice().ambient_dim();
    chi.lattice().saturation().same_as(&IntLattice::kernel(a, n, sigma))
}

/// Toral test for a σ-cellular (mesoprimary) ideal through its lattice.
pub fn is_toral_mesoprimary(i: &Ideal, sigma: &[usize], a: &[Vec<i64>]) -> Result<bool> {
    let rho = lattice_of_cellular(i, sigma)?;
    Ok(is_toral_prime(&rho, sigma, a))
}

/// Canonical primary decomposition of a mesoprimary component:
/// `C = ∩ (C + I(ρ_j))`.
pub fn mesoprimary_to_primary(c: &MesoComponent) -> Result<Vec<PrimaryComponent>> {
    let ring = c.ideal.ring();
    let comp = complement(ring.nvars(), &c.sigma);
    let rho = lattice_of_cellular(&c.ideal, &c.sigma)?;
    let mvars = Ideal::of_vars(ring, &comp);
    let mut out = Vec::new();
    for lc in lattice_primary_decomposition(&rho, ring)? {
        let ideal = c.ideal.sum(&lc.primary).reduced();
        let prime = lc.prime.sum(&mvars).reduced();
        if !prime.contains_ideal(&c.mesoprime) || !prime.contains_ideal(&ideal) {
            return Err(Error::Internal(format!("prime {prime} does not contain its component")));
        }
        out.push(PrimaryComponent {
            ideal,
            prime,
            sigma: c.sigma.clone(),
            character: lc.prime_character,
            minimal: true,
            toral: None,
            cogenerators: vec![c.cogenerator.clone()],
        });
    }
    if out.len() > 1 && !Ideal::intersect_all(ring, out.iter().map(|p| &p.ideal)).equals(&c.ideal) {
        return Err(Error::Internal(format!("refinement of {} does not intersect back", c.ideal)));
    }
    Ok(out)
}

/// Reads σ, `χ` and the prime off a primary binomial ideal in
/// characteristic zero (for components supplied from elsewhere).
pub fn component_from_primary(q: &Ideal) -> Result<PrimaryComponent> {
    let ring = q.ring();
    if ring.field().characteristic() != 0 {
        return Err(Error::Capability("reading primes off components needs characteristic zero".into()));
    }
    let cell = crate::cellular::cellular_data(q)?.map_err(|v| Error::NotCellular(ring.vars()[v].clone()))?;
    let sigma = cell.sigma.clone();
    let rho = lattice_of_cellular(q, &sigma)?;
    let sat = rho.lattice().saturation();
    let mut chis = character_extensions(&rho, &sat)?;
    if chis.len() != 1 {
        return Err(Error::Invalid(format!("{q} is not primary: its lattice has {} saturation characters", chis.len())));
    }
    let chi = chis.pop().unwrap();
    let prime = lattice_ideal(&chi, ring).sum(&Ideal::of_vars(ring, &complement(ring.nvars(), &sigma))).reduced();
    Ok(PrimaryComponent { ideal: q.clone(), prime, sigma, character: chi, minimal: true, toral: None, cogenerators: vec![] })
}

#[derive(Debug, Clone, Default)]
pub struct PrimaryOptions {
    pub meso: MesoOptions,
    /// Grading matrix for toral flags (need not be positive).
    pub matrix: Option<Vec<Vec<i64>>>,
}

#[derive(Debug, Clone)]
pub struct PrimaryDecomposition {
    /// One component per prime, redundant embedded components dropped.
    pub components: Vec<PrimaryComponent>,
    /// Every refinement of every mesoprimary component, before grouping.
    pub refined: Vec<PrimaryComponent>,
    pub meso: MesoDecomposition,
}

impl PrimaryDecomposition {
    pub fn ideals(&self) -> Vec<&Ideal> {
        self.components.iter().map(|c| &c.ideal).collect()
    }
}

/// Sets `minimal` by pairwise containment of the primes.
pub fn associated_primes(components: &mut [PrimaryComponent]) -> Vec<(Ideal, bool)> {
    let primes: Vec<Ideal> = components.iter().map(|c| c.prime.clone()).collect();
    for (k, c) in components.iter_mut().enumerate() {
        c.minimal = !primes.iter().enumerate().any(|(l, q)| l != k && c.prime.contains_ideal(q) && !q.contains_ideal(&c.prime));
    }
    components.iter().map(|c| (c.prime.clone(), c.minimal)).collect()
}

/// Refines a mesoprimary decomposition, collects components with equal
/// primes and drops embedded components that are provably redundant.
pub fn primary_decomposition(i: &Ideal, opts: &PrimaryOptions) -> Result<PrimaryDecomposition> {
    let meso = mesoprimary_decomposition(i, &opts.meso)?;
    let mut refined = Vec::new();
    for c in &meso.components {
        refined.extend(mesoprimary_to_primary(c)?);
    }
    if let Some(a) = &opts.matrix {
        for c in refined.iter_mut() {
            c.toral = Some(is_toral_prime(&c.character, &c.sigma, a));
        }
    }
    let mut grouped: Vec<PrimaryComponent> = Vec::new();
    for c in &refined {
        match grouped.iter_mut().find(|g| g.prime.equals(&c.prime)) {
            Some(g) => {
                g.ideal = g.ideal.intersect(&c.ideal);
                g.cogenerators.extend(c.cogenerators.iter().cloned());
            }
            None => grouped.push(c.clone()),
        }
    }
    associated_primes(&mut grouped);
    // minimal components are never redundant
    let mut keep = vec![true; grouped.len()];
    for k in (0..grouped.len()).rev() {
        if grouped[k].minimal {
            continue;
        }
        let others = grouped.iter().enumerate().filter(|(l, _)| *l != k && keep[*l]).map(|(_, c)| &c.ideal);
        if Ideal::intersect_all(i.ring(), others).equals(i) {
            keep[k] = false;
        }
    }
    let mut components: Vec<PrimaryComponent> = grouped.into_iter().zip(keep).filter(|(_, k)| *k).map(|(c, _)| c).collect();
    associated_primes(&mut components);
    components.sort_by(|a, b| b.minimal.cmp(&a.minimal).then_with(|| a.sigma.cmp(&b.sigma)).then_with(|| a.prime.to_string().cmp(&b.prime.to_string())));
    if !Ideal::intersect_all(i.ring(), components.iter().map(|c| &c.ideal)).equals(i) {
        return Err(Error::Internal("primary components do not intersect to the input".into()));
    }
    Ok(PrimaryDecomposition { components, refined, meso })
}

/// An ideal computed by intersecting some components, with its
/// binomiality verdict.
#[derive(Debug, Clone)]
pub struct IntersectionReport {
    pub ideal: Ideal,
    pub binomial: bool,
    /// A reduced basis element with more than two terms.
    pub witness: Option<Polynomial>,
    /// For toral parts: whether every toral prime is minimal, so that the
    /// result does not depend on the decomposition.
    pub decomposition_independent: bool,
}

fn report(ideal: Ideal, independent: bool) -> IntersectionReport {
    let witness = ideal.binomiality_witness();
    IntersectionReport { binomial: witness.is_none(), witness, ideal, decomposition_independent: independent }
}

/// Intersection of the components at minimal primes.
pub fn hull(decomp: &PrimaryDecomposition) -> IntersectionReport {
    let ring = decomp.meso.components[0].ideal.ring().clone();
    let ideal = Ideal::intersect_all(&ring, decomp.components.iter().filter(|c| c.minimal).map(|c| &c.ideal));
    report(ideal, true)
}

/// Intersection of the toral components (the unit ideal if none).
pub fn toral_part(ring: &Ring, components: &[PrimaryComponent], a: &[Vec<i64>]) -> IntersectionReport {
    let flags: Vec<bool> = components.iter().map(|c| c.toral.unwrap_or_else(|| is_toral_prime(&c.character, &c.sigma, a))).collect();
    let toral: Vec<&PrimaryComponent> = components.iter().zip(&flags).filter(|(_, t)| **t).map(|(c, _)| c).collect();
    let independent = toral.iter().all(|c| c.minimal);
    report(Ideal::intersect_all(ring, toral.iter().map(|c| &c.ideal)), independent)
}

/// Intersection of the toral mesoprimary components.
pub fn meso_toral_part(meso: &MesoDecomposition, a: &[Vec<i64>]) -> Result<IntersectionReport> {
    let ring = meso.components[0].ideal.ring().clone();
    let mut toral = Vec::new();
    for c in &meso.components {
        if is_toral_mesoprimary(&c.ideal, &c.sigma, a)? {
            toral.push(&c.ideal);
        }
    }
    Ok(report(Ideal::intersect_all(&ring, toral), false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::lattice::int_matrix;

    fn m(e: &[u32]) -> Monomial {
        Monomial(e.to_vec())
    }

    #[test]
    fn two_roots_over_rationals() {
        let r = Ring::new(["y"], Field::rationals());
        let l = IntLattice::from_generators(1, &int_matrix(&[vec![2]]));
        let rho = LatticeCharacter::trivial(l, r.field());
        let comps = lattice_primary_decomposition(&rho, &r).unwrap();
        assert_eq!(comps.len(), 2);
        let one = r.field().one();
        let plus = Ideal::new(&r, vec![&r.var(0) + &r.constant(one.clone())]);
        let minus = Ideal::new(&r, vec![&r.var(0) - &r.constant(one)]);
        assert!(comps.iter().any(|c| c.primary.equals(&plus)));
        assert!(comps.iter().any(|c| c.primary.equals(&minus)));
    }

    #[test]
    fn cube_roots_need_zeta_three() {
        let l = IntLattice::from_generators(1, &int_matrix(&[vec![3]]));
        let q = Ring::new(["y"], Field::rationals());
        let err = lattice_primary_decomposition(&LatticeCharacter::trivial(l.clone(), q.field()), &q).unwrap_err();
        assert!(matches!(err, Error::Field(crate::field::FieldError::MissingRoots { required: 3, .. })));
        let k = Ring::new(["y"], Field::cyclotomic(3).unwrap());
        let comps = lattice_primary_decomposition(&LatticeCharacter::trivial(l, k.field()), &k).unwrap();
        assert_eq!(comps.len(), 3);
        let z = k.field().zeta().unwrap();
        for root in [k.field().one(), z.clone(), z.pow(2)] {
            let lin = Ideal::new(&k, vec![&k.var(0) - &k.constant(root)]);
            assert!(comps.iter().any(|c| c.prime.equals(&lin)));
        }
    }

    #[test]
    fn remark_five_four_primary() {
        let r = Ring::new(["x", "z", "w"], Field::rationals());
        let one = r.field().one();
        let i = Ideal::new(&r, vec![
            r.binomial(m(&[0, 2, 0]), one.clone(), m(&[0, 0, 2])),
            r.binomial(m(&[1, 1, 0]), one.clone(), m(&[1, 0, 1])),
            r.monomial(m(&[2, 0, 0])),
        ]);
        let d = primary_decomposition(&i, &PrimaryOptions::default()).unwrap();
        let plus = Ideal::new(&r, vec![&r.var(1) + &r.var(2), r.var(0)]);
        let minus = Ideal::new(&r, vec![&r.var(1) - &r.var(2), r.monomial(m(&[2, 0, 0]))]);
        assert_eq!(d.components.len(), 2);
        assert!(d.components.iter().any(|c| c.ideal.equals(&plus)));
        assert!(d.components.iter().any(|c| c.ideal.equals(&minus)));
        assert!(d.components.iter().all(|c| c.minimal));
        assert!(hull(&d).ideal.equals(&i));
    }

    #[test]
    fn example_one_one_hull() {
        let r = Ring::new(["x1", "x2", "x3", "x4"], Field::rationals());
        let one = r.field().one();
        let b = |u: [u32; 4], v: [u32; 4]| r.binomial(m(&u), one.clone(), m(&v));
        let i = Ideal::new(&r, vec![
            b([0, 0, 0, 2], [0, 0, 0, 0]),
            b([2, 0, 0, 1], [2, 0, 0, 0]),
            b([0, 0, 1, 1], [0, 0, 1, 0]),
            b([1, 0, 1, 0], [0, 1, 1, 0]),
            b([2, 0, 0, 0], [1, 1, 0, 0]),
            b([1, 1, 0, 0], [0, 2, 0, 0]),
            r.monomial(m(&[3, 0, 0, 0])),
            r.monomial(m(&[2, 0, 1, 0])),
        ]);
        let d = primary_decomposition(&i, &PrimaryOptions::default()).unwrap();
        assert_eq!(d.components.len(), 3);
        assert_eq!(d.components.iter().filter(|c| c.minimal).count(), 2);
        let h = hull(&d);
        assert!(!h.binomial);
        let w = h.witness.unwrap();
        let expected = &(&r.monomial(m(&[1, 0, 0, 1])) - &r.monomial(m(&[0, 1, 0, 1]))) + &(&r.var(0) - &r.var(1));
        assert!(w == expected || w == -&expected);
    }

    #[test]
    fn example_four_five_toral_parts() {
        let r = Ring::new(["a", "b", "c", "d", "x", "y"], Field::rationals());
        let one = r.field().one();
        let e = |v: [u32; 6]| Monomial(v.to_vec());
        let ad_bc = r.binomial(e([1, 0, 0, 1, 0, 0]), one.clone(), e([0, 1, 1, 0, 0, 0]));
        let ac_b2 = r.binomial(e([1, 0, 1, 0, 0, 0]), one.clone(), e([0, 2, 0, 0, 0, 0]));
        let bd_c2 = r.binomial(e([0, 1, 0, 1, 0, 0]), one.clone(), e([0, 0, 2, 0, 0, 0]));
        let (x, y) = (e([0, 0, 0, 0, 1, 0]), e([0, 0, 0, 0, 0, 1]));
        let i = Ideal::new(&r, vec![
            ad_bc.clone(),
            ac_b2.mul_monomial(&x),
            bd_c2.mul_monomial(&x),
            ac_b2.mul_monomial(&y),
            bd_c2.mul_monomial(&y),
            r.monomial(x.pow(2)),
            r.monomial(x.mul(&y)),
            r.monomial(y.pow(2)),
        ]);
        let a = vec![vec![1; 6], vec![0, 1, 2, 3, 4, 5]];
        let g = crate::grading::check_positive_grading(&a).unwrap();
        let meso = crate::meso::SearchMode::Graded(g);
        let opts = PrimaryOptions { meso: MesoOptions { mode: Some(meso), ..Default::default() }, matrix: Some(a.clone()) };
        let d = primary_decomposition(&i, &opts).unwrap();
        let flags: Vec<bool> = d.meso.components.iter().map(|c| is_toral_mesoprimary(&c.ideal, &c.sigma, &a).unwrap()).collect();
        assert_eq!(flags, vec![false, true, true]);
        let expected = Ideal::new(&r, vec![ad_bc, ac_b2, bd_c2, r.monomial(x.pow(2)), r.monomial(x.mul(&y)), r.monomial(y.pow(2))]);
        let mt = meso_toral_part(&d.meso, &a).unwrap();
        assert!(mt.ideal.equals(&expected));
        let pt = toral_part(&r, &d.refined, &a);
        assert!(pt.ideal.equals(&mt.ideal));
        // the toral prime is embedded in the Andean one
        assert!(!toral_part(&r, &d.components, &a).decomposition_independent);
    }
}
