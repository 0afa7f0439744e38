//! Mesoprimes, monomial witnesses, coprincipal components and mesoprimary
//! decomposition.
//!
//! Witness and essentiality tests never build Gröbner bases of colon
//! ideals. Modulo a binomial ideal `J` every monomial reduces to a single
//! term, so both tests become statements about the normal forms of
//! monomials in one graded piece.

use std::cell::{OnceCell, RefCell};
use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::rc::Rc;

use crate::cellular::cellular_decomposition;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::grading::{monomials_up_to_weight, GradingMatrix, DEFAULT_ENUMERATION_CAP};
use crate::ideal::Ideal;
use crate::linalg::kernel_basis;
use crate::poly::{Monomial, Polynomial, TermOrder};

/// How witness searches range over monomials.
#[derive(Debug, Clone)]
pub enum SearchMode {
    /// Partners and essentiality polynomials live in one A-graded piece.
    Graded(GradingMatrix),
    /// No grading: every monomial of total degree at most the bound is a
    /// candidate. This is the weak witness notion.
    Ungraded,
}

impl SearchMode {
    fn weights(&self, n: usize) -> Vec<i64> {
        match self {
            SearchMode::Graded(g) => g.weights().to_vec(),
            SearchMode::Ungraded => vec![1; n],
        }
    }

    pub fn is_graded(&self) -> bool {
        matches!(self, SearchMode::Graded(_))
    }
}

/// How `x_i` acts on `x^m x^w` in a witness certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Partner {
    /// `x_i (x^m x^w - λ x^q) ∈ I_σ` and `x^m x^w - λ x^q ∉ I_σ`.
    Merge { q: Monomial, lambda: Scalar },
    /// `x_i x^m x^w ∈ I_σ`.
    Annihilated,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessCertificate {
    /// The σ-monomial `x^m`.
    pub m: Monomial,
    pub partners: Vec<(usize, Partner)>,
}

/// `p ∉ I_σ`, `x^v x^w ∈ supp(p)` and `x_j p ∈ I_σ` for all `j ∉ σ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EssentialCertificate {
    pub v: Monomial,
    pub p: Polynomial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessRecord {
    pub sigma: Vec<usize>,
    /// Representative: the smallest class member in grevlex.
    pub w: Monomial,
    /// Witness monomials equal to `x^w` up to a scalar modulo `I_σ`.
    pub class: Vec<Monomial>,
    pub certificate: WitnessCertificate,
    pub essential: Option<EssentialCertificate>,
}

impl WitnessRecord {
    pub fn is_essential(&self) -> bool {
        self.essential.is_some()
    }

    /// Rechecks every stored membership claim against `I_σ` by normal forms.
    pub fn verify(&self, i_sigma: &Ideal) -> bool {
        let ring = i_sigma.ring();
        let n = ring.nvars();
        let comp = complement(n, &self.sigma);
        if i_sigma.contains_monomial(&self.w) {
            return false;
        }
        if !self.w.restrict_to(&self.sigma).is_one() || !self.certificate.m.restrict_to(&comp).is_one() {
            return false;
        }
        let mu = self.certificate.m.mul(&self.w);
        if self.certificate.partners.len() != comp.len() {
            return false;
        }
        for (i, partner) in &self.certificate.partners {
            let xi = Monomial::var(n, *i);
            let ok = match partner {
                Partner::Annihilated => i_sigma.contains_monomial(&mu.mul(&xi)),
                Partner::Merge { q, lambda } => {
                    let b = ring.binomial(mu.clone(), lambda.clone(), q.clone());
                    i_sigma.contains(&b.mul_monomial(&xi)) && !i_sigma.contains(&b)
                }
            };
            if !ok {
                return false;
            }
        }
        if let Some(e) = &self.essential {
            let vw = e.v.mul(&self.w);
            if e.p.coeff(&vw).is_none() || i_sigma.contains(&e.p) {
                return false;
            }
            if !comp.iter().all(|&j| i_sigma.contains(&e.p.mul_monomial(&Monomial::var(n, j)))) {
                return false;
            }
        }
        true
    }
}

pub fn complement(n: usize, sigma: &[usize]) -> Vec<usize> {
    (0..n).filter(|i| !sigma.contains(i)).collect()
}

/// One graded piece (or the whole bounded region when ungraded).
struct Region {
    all: Vec<Monomial>,
    standard: Vec<Monomial>,
    kernel: OnceCell<Rc<Vec<Vec<Scalar>>>>,
}

/// Search state for one `σ`: `J = I_σ` and cached normal forms.
pub(crate) struct WitnessSearch<'a> {
    j: &'a Ideal,
    sigma: Vec<usize>,
    comp: Vec<usize>,
    mode: &'a SearchMode,
    weights: Vec<i64>,
    bound: i64,
    cap: usize,
    nf: RefCell<HashMap<Monomial, Option<(Monomial, Scalar)>>>,
    regions: RefCell<HashMap<Vec<i64>, Rc<Region>>>,
}

impl<'a> WitnessSearch<'a> {
    pub(crate) fn new(j: &'a Ideal, sigma: &[usize], mode: &'a SearchMode, bound: i64) -> WitnessSearch<'a> {
        let n = j.ring().nvars();
        WitnessSearch {
            j,
            sigma: sigma.to_vec(),
            comp: complement(n, sigma),
            mode,
            weights: mode.weights(n),
            bound,
            cap: DEFAULT_ENUMERATION_CAP,
            nf: RefCell::new(HashMap::new()),
            regions: RefCell::new(HashMap::new()),
        }
    }

    fn n(&self) -> usize {
        self.j.ring().nvars()
    }

    /// Normal form of a monomial modulo `J`: a single term or zero.
    fn nf(&self, m: &Monomial) -> Result<Option<(Monomial, Scalar)>> {
        if let Some(r) = self.nf.borrow().get(m) {
            return Ok(r.clone());
        }
        let mut t = self.j.gb().normal_form_terms(m);
        if t.len() > 1 {
            return Err(Error::Internal(format!("{} is not a binomial ideal", self.j)));
        }
        let r = t.pop();
        self.nf.borrow_mut().insert(m.clone(), r.clone());
        Ok(r)
    }

    fn region_key(&self, mu: &Monomial) -> Vec<i64> {
        match self.mode {
            SearchMode::Graded(g) => g.degree(mu),
            SearchMode::Ungraded => vec![],
        }
    }

    fn region(&self, mu: &Monomial) -> Result<Rc<Region>> {
        let key = self.region_key(mu);
        if let Some(r) = self.regions.borrow().get(&key) {
            return Ok(r.clone());
        }
        let mut all = match self.mode {
            SearchMode::Graded(g) => g.fiber(&key, self.cap)?,
            SearchMode::Ungraded => {
                let vars: Vec<usize> = (0..self.n()).collect();
                monomials_up_to_weight(self.n(), &vars, &self.weights, self.bound, self.cap)?
            }
        };
        all.sort();
        let mut standard = Vec::new();
        for m in &all {
            if let Some((b, _)) = self.nf(m)? {
                if &b == m {
                    standard.push(b);
                }
            }
        }
        let r = Rc::new(Region { all, standard, kernel: OnceCell::new() });
        self.regions.borrow_mut().insert(key, r.clone());
        Ok(r)
    }

    /// A partner for `x_i` acting on `mu`, if one exists.
    fn partner(&self, mu: &Monomial, i: usize) -> Result<Option<Partner>> {
        let n = self.n();
        let Some((b, _)) = self.nf(mu)? else { return Ok(None) };
        let xi = Monomial::var(n, i);
        let Some((a, c)) = self.nf(&mu.mul(&xi))? else { return Ok(Some(Partner::Annihilated)) };
        let region = self.region(mu)?;
        for q in &region.standard {
            if *q == b {
                continue;
            }
            if let Some((a2, c2)) = self.nf(&q.mul(&xi))? {
                if a2 == a {
                    let lambda = c.checked_div(&c2)?;
                    return Ok(Some(Partner::Merge { q: q.clone(), lambda }));
                }
            }
        }
        Ok(None)
    }

    fn sigma_monomials(&self) -> Result<Vec<Monomial>> {
        let mut ms = monomials_up_to_weight(self.n(), &self.sigma, &self.weights, self.bound, self.cap)?;
        ms.sort_by(|a, b| a.weight(&self.weights).cmp(&b.weight(&self.weights)).then_with(|| a.cmp(b)));
        Ok(ms)
    }

    /// σ^c-monomials outside `J` with weight at most the bound.
    fn candidates(&self) -> Result<Vec<Monomial>> {
        let mut ws = monomials_up_to_weight(self.n(), &self.comp, &self.weights, self.bound, self.cap)?;
        ws.sort_by(|a, b| a.weight(&self.weights).cmp(&b.weight(&self.weights)).then_with(|| a.cmp(b)));
        let mut out = Vec::new();
        for w in ws {
            if self.nf(&w)?.is_some() {
                out.push(w);
            }
        }
        Ok(out)
    }

    /// The first `x^m` (by weight) certifying `x^w` as a witness.
    fn certify(&self, w: &Monomial, sigma_monomials: &[Monomial]) -> Result<Option<WitnessCertificate>> {
        'm: for m in sigma_monomials {
            let mu = m.mul(w);
            let mut partners = Vec::new();
            for &i in &self.comp {
                match self.partner(&mu, i)? {
                    Some(p) => partners.push((i, p)),
                    None => continue 'm,
                }
            }
            return Ok(Some(WitnessCertificate { m: m.clone(), partners }));
        }
        Ok(None)
    }

    /// All witness classes found within the bound, essentiality unset.
    pub(crate) fn witnesses(&self) -> Result<Vec<WitnessRecord>> {
        let sm = self.sigma_monomials()?;
        let mut classes: BTreeMap<Monomial, WitnessRecord> = BTreeMap::new();
        for w in self.candidates()? {
            let Some(cert) = self.certify(&w, &sm)? else { continue };
            let (b, _) = self.nf(&w)?.expect("candidates lie outside J");
            match classes.get_mut(&b) {
                Some(rec) => rec.class.push(w),
                None => {
                    classes.insert(b, WitnessRecord {
                        sigma: self.sigma.clone(),
                        w: w.clone(),
                        class: vec![w],
                        certificate: cert,
                        essential: None,
                    });
                }
            }
        }
        let mut out: Vec<WitnessRecord> = classes.into_values().collect();
        for rec in out.iter_mut() {
            rec.class.sort_by(|a, b| TermOrder::GRevLex.cmp(a, b));
            let rep = rec.class[0].clone();
            if rep != rec.w {
                rec.certificate = self.certify(&rep, &sm)?.expect("class members are witnesses");
                rec.w = rep;
            }
        }
        out.sort_by(|a, b| a.w.weight(&self.weights).cmp(&b.w.weight(&self.weights)).then_with(|| TermOrder::GRevLex.cmp(&a.w, &b.w)));
        Ok(out)
    }

    /// Kernel of `p ↦ (x_j p)_{j ∉ σ}` on the standard monomials of a
    /// region, modulo `J`.
    fn annihilated_space(&self, region: &Region) -> Result<Rc<Vec<Vec<Scalar>>>> {
        if let Some(k) = region.kernel.get() {
            return Ok(k.clone());
        }
        let field = self.j.ring().field();
        let ncols = region.standard.len();
        let mut rows: HashMap<(usize, Monomial), Vec<Scalar>> = HashMap::new();
        for (col, b) in region.standard.iter().enumerate() {
            for &i in &self.comp {
                if let Some((a, c)) = self.nf(&b.mul(&Monomial::var(self.n(), i)))? {
                    rows.entry((i, a)).or_insert_with(|| vec![field.zero(); ncols])[col] = c;
                }
            }
        }
        let mut keys: Vec<_> = rows.keys().cloned().collect();
        keys.sort();
        let rows: Vec<Vec<Scalar>> = keys.into_iter().map(|k| rows.remove(&k).unwrap()).collect();
        let k = Rc::new(kernel_basis(rows, ncols, field));
        let _ = region.kernel.set(k.clone());
        Ok(k)
    }

    /// An essentiality certificate at `mu = x^v x^w`, if one exists.
    fn essential_at(&self, v: &Monomial, w: &Monomial) -> Result<Option<EssentialCertificate>> {
        let ring = self.j.ring();
        let mu = v.mul(w);
        let Some((b, d)) = self.nf(&mu)? else { return Ok(None) };
        let region = self.region(&mu)?;
        let kernel = self.annihilated_space(&region)?;
        if kernel.is_empty() {
            return Ok(None);
        }
        let to_poly = |vec: &Vec<Scalar>| {
            ring.from_terms(region.standard.iter().zip(vec).filter(|(_, c)| !c.is_zero()).map(|(m, c)| (c.clone(), m.clone())))
        };
        // a classmate of mu in the region gives an element of J through mu
        let mut mate = None;
        for m in &region.all {
            if *m != mu {
                if let Some((b2, d2)) = self.nf(m)? {
                    if b2 == b {
                        mate = Some((m.clone(), d2));
                        break;
                    }
                }
            }
        }
        match mate {
            Some((m2, d2)) => {
                let s = to_poly(&kernel[0]);
                let p = if s.coeff(&mu).is_some() {
                    s
                } else {
                    // mu - (d/d2) m2 lies in J
                    let t = ring.binomial(mu.clone(), d.checked_div(&d2)?, m2);
                    &s + &t
                };
                Ok(Some(EssentialCertificate { v: v.clone(), p }))
            }
            None => {
                let col = region.standard.iter().position(|m| *m == b).expect("normal forms are standard");
                Ok(kernel.iter().find(|k| !k[col].is_zero()).map(|k| EssentialCertificate { v: v.clone(), p: to_poly(k) }))
            }
        }
    }

    pub(crate) fn essentiality(&self, w: &Monomial) -> Result<Option<EssentialCertificate>> {
        for v in self.sigma_monomials()? {
            if let Some(e) = self.essential_at(&v, w)? {
                return Ok(Some(e));
            }
        }
        Ok(None)
    }
}

/// Default witness bound for `J = I_σ`: the largest weight of a reduced
/// Gröbner basis element plus the weighted nilpotency orders of the
/// σ^c-variables (variables that are not nilpotent count the largest
/// basis weight instead).
pub fn default_bound(j: &Ideal, sigma: &[usize], mode: &SearchMode) -> i64 {
    let n = j.ring().nvars();
    let weights = mode.weights(n);
    let top = j.gb().elements().iter().flat_map(|g| g.terms().map(|(m, _)| m.weight(&weights))).max().unwrap_or(0);
    let mut bound = top;
    for i in complement(n, sigma) {
        bound += match j.nilpotency_order(i, 64) {
            Some(e) => e as i64 * weights[i],
            None => top.max(weights[i]),
        };
    }
    bound.max(1)
}

fn check_mode(i: &Ideal, mode: &SearchMode) -> Result<()> {
    if let SearchMode::Graded(g) = mode {
        if g.nvars() != i.ring().nvars() {
            return Err(Error::Invalid("grading matrix has the wrong number of columns".into()));
        }
        if !g.is_homogeneous(i) {
            return Err(Error::NotHomogeneous(i.to_string()));
        }
    }
    Ok(())
}

/// Monomial witnesses of `I` for `m_{σ^c}` found with `x^m` of weight at
/// most `bound` (the default bound when `None`).
pub fn monomial_witnesses(i: &Ideal, sigma: &[usize], mode: &SearchMode, bound: Option<i64>) -> Result<Vec<WitnessRecord>> {
    check_mode(i, mode)?;
    let j = i.saturate_vars(sigma);
    if j.is_unit() {
        return Ok(vec![]);
    }
    let bound = bound.unwrap_or_else(|| default_bound(&j, sigma, mode));
    WitnessSearch::new(&j, sigma, mode, bound).witnesses()
}

/// The essential monomial witnesses, each with its certificate.
pub fn essential_witnesses(i: &Ideal, sigma: &[usize], mode: &SearchMode, bound: Option<i64>) -> Result<Vec<WitnessRecord>> {
    check_mode(i, mode)?;
    let j = i.saturate_vars(sigma);
    if j.is_unit() {
        return Ok(vec![]);
    }
    let bound = bound.unwrap_or_else(|| default_bound(&j, sigma, mode));
    essential_in(&j, sigma, mode, bound)
}

fn essential_in(j: &Ideal, sigma: &[usize], mode: &SearchMode, bound: i64) -> Result<Vec<WitnessRecord>> {
    Ok(classified_in(j, sigma, mode, bound)?.into_iter().filter(|w| w.is_essential()).collect())
}

fn classified_in(j: &Ideal, sigma: &[usize], mode: &SearchMode, bound: i64) -> Result<Vec<WitnessRecord>> {
    let search = WitnessSearch::new(j, sigma, mode, bound);
    let mut out = search.witnesses()?;
    for rec in out.iter_mut() {
        rec.essential = search.essentiality(&rec.w)?;
    }
    Ok(out)
}

/// All monomial witnesses, with `essential` filled in where it holds.
pub fn classified_witnesses(i: &Ideal, sigma: &[usize], mode: &SearchMode, bound: Option<i64>) -> Result<Vec<WitnessRecord>> {
    check_mode(i, mode)?;
    let j = i.saturate_vars(sigma);
    if j.is_unit() {
        return Ok(vec![]);
    }
    let bound = bound.unwrap_or_else(|| default_bound(&j, sigma, mode));
    classified_in(&j, sigma, mode, bound)
}

/// `I_m^σ = ((I : (Π σ)^∞) : x^m) ∩ k[N^σ]`.
pub fn lattice_part_at(i: &Ideal, sigma: &[usize], m: &Monomial) -> Result<Ideal> {
    let j = i.saturate_vars(sigma);
    lattice_part_in(&j, sigma, m)
}

fn lattice_part_in(j: &Ideal, sigma: &[usize], m: &Monomial) -> Result<Ideal> {
    if j.contains_monomial(m) {
        return Err(Error::Invalid(format!("{} lies in the σ-saturation", j.ring().fmt_monomial(m))));
    }
    Ok(j.quotient_monomial(m).eliminate(&complement(j.ring().nvars(), sigma)))
}

/// The mesoprime at `x^m`: `I_m^σ + <x_i : i ∉ σ>`.
pub fn mesoprime_at(i: &Ideal, sigma: &[usize], m: &Monomial) -> Result<Ideal> {
    if i.contains_monomial(m) {
        return Err(Error::Invalid(format!("{} lies in the ideal", i.ring().fmt_monomial(m))));
    }
    let lat = lattice_part_at(i, sigma, m)?;
    let comp = complement(i.ring().nvars(), sigma);
    Ok(lat.sum(&Ideal::of_vars(i.ring(), &comp)))
}

/// Outcome of the mesoprimarity test.
#[derive(Debug, Clone)]
pub enum MesoprimaryCheck {
    Mesoprimary { sigma: Vec<usize>, lattice_part: Ideal },
    NotCellular { variable: usize },
    /// `(I : x^m) ∩ k[N^σ]` differs from `I ∩ k[N^σ]` at this monomial.
    Violation { sigma: Vec<usize>, monomial: Monomial },
}

impl MesoprimaryCheck {
    pub fn holds(&self) -> bool {
        matches!(self, MesoprimaryCheck::Mesoprimary { .. })
    }
}

/// Tests the quotient condition on the finitely many standard
/// σ^c-monomials; σ-variables are nonzerodivisors and do not change the
/// quotient.
pub fn is_mesoprimary(i: &Ideal) -> Result<MesoprimaryCheck> {
    let data = match crate::cellular::cellular_data(i)? {
        Ok(d) => d,
        Err(v) => return Ok(MesoprimaryCheck::NotCellular { variable: v }),
    };
    let n = i.ring().nvars();
    let comp = data.complement();
    let lattice_part = i.eliminate(&comp);
    let mut stack = vec![Monomial::one(n)];
    let mut seen = HashSet::new();
    while let Some(m) = stack.pop() {
        if !seen.insert(m.clone()) || i.contains_monomial(&m) {
            continue;
        }
        if !m.is_one() && !i.quotient_monomial(&m).eliminate(&comp).equals(&lattice_part) {
            return Ok(MesoprimaryCheck::Violation { sigma: data.sigma, monomial: m });
        }
        for &j in &comp {
            stack.push(m.mul(&Monomial::var(n, j)));
        }
    }
    Ok(MesoprimaryCheck::Mesoprimary { sigma: data.sigma, lattice_part })
}

/// `M_{x^m}^σ(I)`: generated by the monomials `x^u` with
/// `x^m ∉ (I + <x^u>) : (Π σ)^∞`. Only σ^c-monomials are tried; a
/// monomial with σ-support behaves like its σ^c-part after saturation.
pub fn monomial_part_m(i: &Ideal, sigma: &[usize], m: &Monomial) -> Result<Ideal> {
    let j = i.saturate_vars(sigma);
    monomial_part_in(&j, sigma, m, default_weight_cap(&j))
}

fn default_weight_cap(j: &Ideal) -> u64 {
    let top = j.gb().elements().iter().map(|g| g.total_degree()).max().unwrap_or(0);
    4 * (top + 1) * (j.ring().nvars() as u64 + 1)
}

fn monomial_part_in(j: &Ideal, sigma: &[usize], m: &Monomial, cap: u64) -> Result<Ideal> {
    let ring = j.ring();
    let n = ring.nvars();
    let comp = complement(n, sigma);
    let wm = m.restrict_to(&comp);
    if j.contains_monomial(m) {
        return Err(Error::Invalid(format!("{} dies in the σ-saturation", ring.fmt_monomial(m))));
    }
    let survives = |u: &Monomial| -> bool {
        if u.divides(&wm) {
            return true;
        }
        if j.contains_monomial(u) {
            return false;
        }
        j.add_gens([ring.monomial(u.clone())]).saturate_vars(sigma).contains_monomial(m)
    };
    // breadth-first search through the complement of M, a down-closed set
    let mut queue = VecDeque::from([Monomial::one(n)]);
    let mut seen: HashSet<Monomial> = HashSet::from([Monomial::one(n)]);
    let mut gens: Vec<Monomial> = Vec::new();
    while let Some(u) = queue.pop_front() {
        for &k in &comp {
            let v = u.mul(&Monomial::var(n, k));
            if !seen.insert(v.clone()) {
                continue;
            }
            if gens.iter().any(|g| g.divides(&v)) {
                continue;
            }
            if v.degree() > cap {
                return Err(Error::BoundTooSmall {
                    bound: cap as i64,
                    detail: format!("the monomial part for {} is not finitely cogenerated within degree {cap}", ring.fmt_monomial(m)),
                });
            }
            if survives(&v) {
                queue.push_back(v);
            } else {
                gens.push(v);
            }
        }
    }
    let minimal: Vec<Monomial> = gens.iter().filter(|g| !gens.iter().any(|h| h != *g && h.divides(g))).cloned().collect();
    Ok(Ideal::from_monomials(ring, minimal).reduced())
}

/// A mesoprimary component with its provenance.
#[derive(Debug, Clone)]
pub struct MesoComponent {
    pub ideal: Ideal,
    pub sigma: Vec<usize>,
    /// The cogenerating σ^c-monomial.
    pub cogenerator: Monomial,
    /// Witnesses whose coprincipal components were intersected here.
    pub witnesses: Vec<WitnessRecord>,
    pub mesoprime: Ideal,
    /// The monomial ideal `M`.
    pub monomial_part: Ideal,
}

/// `W = ((I + I_m^σ) : (Π σ)^∞) + M_{x^m}^σ(I)`.
pub fn coprincipal_component(i: &Ideal, sigma: &[usize], m: &Monomial) -> Result<MesoComponent> {
    let j = i.saturate_vars(sigma);
    coprincipal_in(&j, sigma, m, vec![])
}

fn coprincipal_in(j: &Ideal, sigma: &[usize], m: &Monomial, witnesses: Vec<WitnessRecord>) -> Result<MesoComponent> {
    let ring = j.ring();
    let comp = complement(ring.nvars(), sigma);
    let lat = lattice_part_in(j, sigma, m)?;
    let mpart = monomial_part_in(j, sigma, m, default_weight_cap(j))?;
    let ideal = j.sum(&lat).saturate_vars(sigma).sum(&mpart).reduced();
    if !ideal.is_binomial() {
        return Err(Error::Internal(format!("coprincipal component {ideal} is not binomial")));
    }
    Ok(MesoComponent {
        ideal,
        sigma: sigma.to_vec(),
        cogenerator: m.restrict_to(&comp),
        witnesses,
        mesoprime: lat.sum(&Ideal::of_vars(ring, &comp)),
        monomial_part: mpart,
    })
}

/// Knobs for [`mesoprimary_decomposition`].
#[derive(Debug, Clone, Default)]
pub struct MesoOptions {
    /// `None`: graded by total degree when the ideal is homogeneous,
    /// ungraded otherwise.
    pub mode: Option<SearchMode>,
    /// Witness bound for every `σ`; per-`σ` defaults when `None`.
    pub bound: Option<i64>,
    /// Replaces the `σ` candidates taken from the cellular decomposition.
    pub sigmas: Option<Vec<Vec<usize>>>,
}

#[derive(Debug, Clone)]
pub struct MesoDecomposition {
    pub components: Vec<MesoComponent>,
    /// The bound used for each `σ` that was searched.
    pub bounds: Vec<(Vec<usize>, i64)>,
    pub graded: bool,
}

impl MesoDecomposition {
    pub fn ideals(&self) -> Vec<&Ideal> {
        self.components.iter().map(|c| &c.ideal).collect()
    }

    /// Intersects components that share `σ` and mesoprime.
    pub fn merged(&self) -> Vec<MesoComponent> {
        let mut out: Vec<MesoComponent> = Vec::new();
        for c in &self.components {
            match out.iter_mut().find(|o| o.sigma == c.sigma && o.mesoprime.equals(&c.mesoprime)) {
                Some(o) => {
                    o.ideal = o.ideal.intersect(&c.ideal);
                    o.monomial_part = o.monomial_part.intersect(&c.monomial_part);
                    o.witnesses.extend(c.witnesses.iter().cloned());
                }
                None => out.push(c.clone()),
            }
        }
        out
    }
}

/// Picks the search mode for an ideal when none is given.
pub fn resolve_mode(i: &Ideal, mode: Option<SearchMode>) -> Result<SearchMode> {
    match mode {
        Some(m) => {
            check_mode(i, &m)?;
            Ok(m)
        }
        None => {
            let g = GradingMatrix::standard(i.ring().nvars());
            Ok(if g.is_homogeneous(i) { SearchMode::Graded(g) } else { SearchMode::Ungraded })
        }
    }
}

/// Candidate `σ`: the cellular variables of every cellular leaf, and `[n]`.
pub fn sigma_candidates(i: &Ideal) -> Result<Vec<Vec<usize>>> {
    let mut out: Vec<Vec<usize>> = cellular_decomposition(i)?.into_iter().map(|l| l.data.sigma).collect();
    out.push((0..i.ring().nvars()).collect());
    out.sort();
    out.dedup();
    Ok(out)
}

/// Coprincipal components of the essential witnesses of `J = J_σ`, one per
/// distinct ideal.
fn components_at(j: &Ideal, sigma: &[usize], mode: &SearchMode, bound: i64) -> Result<Vec<MesoComponent>> {
    let mut out: Vec<MesoComponent> = Vec::new();
    for rec in essential_in(j, sigma, mode, bound)? {
        let w = rec.w.clone();
        let c = coprincipal_in(j, sigma, &w, vec![rec])?;
        match out.iter_mut().find(|o| o.ideal.equals(&c.ideal)) {
            Some(o) => o.witnesses.extend(c.witnesses),
            None => out.push(c),
        }
    }
    Ok(out)
}

/// Intersection of the coprincipal components cogenerated by essential
/// witnesses, verified against the input.
pub fn mesoprimary_decomposition(i: &Ideal, opts: &MesoOptions) -> Result<MesoDecomposition> {
    if i.is_unit() {
        return Err(Error::UnitIdeal("mesoprimary decomposition"));
    }
    if !i.is_binomial() {
        return Err(Error::Input(format!("{i} is not a binomial ideal")));
    }
    let mode = resolve_mode(i, opts.mode.clone())?;
    let sigmas = match &opts.sigmas {
        Some(s) => s.clone(),
        None => sigma_candidates(i)?,
    };
    let mut components: Vec<MesoComponent> = Vec::new();
    let mut bounds = Vec::new();
    for sigma in sigmas {
        let j = i.saturate_vars(&sigma);
        if j.is_unit() {
            continue;
        }
        let bound = opts.bound.unwrap_or_else(|| default_bound(&j, &sigma, &mode));
        let found = match components_at(&j, &sigma, &mode, bound) {
            // a σ^c-variable that is a unit somewhere in I_σ can give
            // infinitely many witnesses; search the σ-cellular leaves instead
            Err(Error::BoundTooSmall { .. } | Error::Resource(_))
                if complement(i.ring().nvars(), &sigma).iter().any(|&k| j.nilpotency_order(k, 64).is_none()) =>
            {
                let leaves = cellular_decomposition(i)?;
                let same: Vec<&Ideal> = leaves.iter().filter(|l| l.data.sigma == sigma).map(|l| &l.ideal).collect();
                if same.is_empty() {
                    continue;
                }
                let cell = Ideal::intersect_all(i.ring(), same);
                let bound = opts.bound.unwrap_or_else(|| default_bound(&cell, &sigma, &mode));
                bounds.push((sigma.clone(), bound));
                components_at(&cell, &sigma, &mode, bound)?
            }
            other => {
                bounds.push((sigma.clone(), bound));
                other?
            }
        };
        for c in found {
            match components.iter_mut().find(|o| o.sigma == c.sigma && o.ideal.equals(&c.ideal)) {
                Some(o) => o.witnesses.extend(c.witnesses),
                None => components.push(c),
            }
        }
    }
    let max_bound = bounds.iter().map(|(_, b)| *b).max().unwrap_or(0);
    let inter = Ideal::intersect_all(i.ring(), components.iter().map(|c| &c.ideal));
    if !inter.equals(i) {
        return Err(Error::BoundTooSmall {
            bound: max_bound,
            detail: format!(
                "the {} coprincipal components found do not intersect to the input (missing witnesses, or a σ outside the cellular leaves)",
                components.len()
            ),
        });
    }
    for c in &components {
        if !is_mesoprimary(&c.ideal)?.holds() {
            return Err(Error::BoundTooSmall { bound: max_bound, detail: format!("component {} is not mesoprimary", c.ideal) });
        }
    }
    Ok(MesoDecomposition { components, bounds, graded: mode.is_graded() })
}
