//! Positive `Z^d`-gradings, A-graded Hilbert functions, and the
//! toral/Andean classification.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cellular::cellular_data;
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::lattice::{lattice_of_cellular, smith_normal_form, IntLattice, LatticeCharacter};
use crate::poly::{Monomial, Polynomial};

/// Default cap on the number of monomials visited by fiber enumeration.
pub const DEFAULT_ENUMERATION_CAP: usize = 1_000_000;

/// A positive grading: `deg(x_i)` is the `i`-th column of `A`, and
/// `h A` has strictly positive entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradingMatrix {
    a: Vec<Vec<i64>>,
    h: Vec<BigRational>,
    /// `h A` scaled to coprime positive integers.
    weights: Vec<i64>,
}

impl GradingMatrix {
    /// The standard grading by total degree.
    pub fn standard(n: usize) -> GradingMatrix {
        GradingMatrix { a: vec![vec![1; n]], h: vec![BigRational::one()], weights: vec![1; n] }
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.a
    }

    pub fn d(&self) -> usize {
        self.a.len()
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn certificate(&self) -> &[BigRational] {
        &self.h
    }

    /// Positive integer weight of each variable, proportional to `h A`.
    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn degree(&self, m: &Monomial) -> Vec<i64> {
        self.a.iter().map(|row| m.weight(row)).collect()
    }

    pub fn weight(&self, m: &Monomial) -> i64 {
        m.weight(&self.weights)
    }

    pub fn is_homogeneous_poly(&self, p: &Polynomial) -> bool {
        p.is_homogeneous(&self.a)
    }

    /// Homogeneity of the ideal, decided on its reduced basis.
    pub fn is_homogeneous(&self, i: &Ideal) -> bool {
        i.gb().elements().iter().all(|g| self.is_homogeneous_poly(g))
    }

    /// Rank of the columns indexed by `cols`.
    pub fn rank_of(&self, cols: &[usize]) -> usize {
        if cols.is_empty() {
            return 0;
        }
        let sub: Vec<Vec<BigInt>> =
            self.a.iter().map(|row| cols.iter().map(|&j| BigInt::from(row[j])).collect()).collect();
        smith_normal_form(&sub, cols.len()).rank()
    }

    /// `ker_Z(A_σ)` inside `Z^n`.
    pub fn kernel(&self, sigma: &[usize]) -> IntLattice {
        IntLattice::kernel(&self.a, self.nvars(), sigma)
    }

    /// All monomials of degree `beta`.
    pub fn fiber(&self, beta: &[i64], cap: usize) -> Result<Vec<Monomial>> {
        let hb = self.h_value(beta);
        // total weight is fixed by beta
        let scale = self.weight_scale();
        let w = &hb * &scale;
        if !w.is_integer() || w.is_negative() {
            return Ok(vec![]);
        }
        let w = w.to_integer().to_i64().ok_or_else(|| Error::Resource("degree too large".into()))?;
        let all = monomials_of_weight(&self.weights, w, cap)?;
        Ok(all.into_iter().filter(|m| self.degree(m) == beta).collect())
    }

    fn h_value(&self, beta: &[i64]) -> BigRational {
        self.h.iter().zip(beta).fold(BigRational::zero(), |acc, (h, b)| acc + h * BigRational::from_integer(BigInt::from(*b)))
    }

    /// Factor turning `h A` into `weights`.
    fn weight_scale(&self) -> BigRational {
        let j = 0;
        let ha = self.h.iter().zip(&self.a).fold(BigRational::zero(), |acc, (h, row)| acc + h * BigRational::from_integer(BigInt::from(row[j])));
        BigRational::from_integer(BigInt::from(self.weights[j])) / ha
    }
}

/// Monomials `u` with `weights · u = total` (weights positive).
pub fn monomials_of_weight(weights: &[i64], total: i64, cap: usize) -> Result<Vec<Monomial>> {
    let n = weights.len();
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    let mut visited = 0usize;
    fn rec(k: usize, left: i64, weights: &[i64], cur: &mut Vec<u32>, out: &mut Vec<Monomial>, visited: &mut usize, cap: usize) -> Result<()> {
        *visited += 1;
        if *visited > cap {
            return Err(Error::Resource(format!("more than {cap} monomials enumerated")));
        }
        if k == weights.len() {
            if left == 0 {
                out.push(Monomial(cur.clone()));
            }
            return Ok(());
        }
        let mut e = 0;
        while e as i64 * weights[k] <= left {
            cur[k] = e;
            rec(k + 1, left - e as i64 * weights[k], weights, cur, out, visited, cap)?;
            e += 1;
        }
        cur[k] = 0;
        Ok(())
    }
    if n == 0 {
        if total == 0 {
            out.push(Monomial(vec![]));
        }
        return Ok(out);
    }
    rec(0, total, weights, &mut cur, &mut out, &mut visited, cap)?;
    Ok(out)
}

/// Monomials in the variables `vars` with `weights · u <= bound`.
pub fn monomials_up_to_weight(n: usize, vars: &[usize], weights: &[i64], bound: i64, cap: usize) -> Result<Vec<Monomial>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(k: usize, left: i64, vars: &[usize], weights: &[i64], cur: &mut Vec<u32>, out: &mut Vec<Monomial>, cap: usize) -> Result<()> {
        if k == vars.len() {
            if out.len() >= cap {
                return Err(Error::Resource(format!("more than {cap} monomials enumerated")));
            }
            out.push(Monomial(cur.clone()));
            return Ok(());
        }
        let v = vars[k];
        let mut e = 0u32;
        while e as i64 * weights[v] <= left {
            cur[v] = e;
            rec(k + 1, left - e as i64 * weights[v], vars, weights, cur, out, cap)?;
            e += 1;
        }
        cur[v] = 0;
        Ok(())
    }
    if bound < 0 {
        return Ok(out);
    }
    rec(0, bound, vars, weights, &mut cur, &mut out, cap)?;
    Ok(out)
}

type Constraint = (Vec<BigRational>, BigRational);

/// Finds `h` with `h A >= 1` entrywise by Fourier–Motzkin elimination,
/// preferring small integer coordinates.
fn positive_functional(a: &[Vec<i64>]) -> Option<Vec<BigRational>> {
    let d = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let q = |x: i64| BigRational::from_integer(BigInt::from(x));
    let mut system: Vec<Constraint> = (0..n).map(|j| ((0..d).map(|i| q(a[i][j])).collect(), BigRational::one())).collect();
    let mut stages = Vec::with_capacity(d);
    for k in 0..d {
        stages.push(system.clone());
        let (mut pos, mut neg, mut rest) = (vec![], vec![], vec![]);
        for c in system {
            if c.0[k].is_positive() {
                pos.push(c);
            } else if c.0[k].is_negative() {
                neg.push(c);
            } else {
                rest.push(c);
            }
        }
        for p in &pos {
            for m in &neg {
                let (sa, sb) = (p.0[k].clone(), -m.0[k].clone());
                let coeffs: Vec<BigRational> = p.0.iter().zip(&m.0).map(|(x, y)| x / &sa + y / &sb).collect();
                let rhs = &p.1 / &sa + &m.1 / &sb;
                rest.push((coeffs, rhs));
            }
        }
        system = rest;
    }
    if system.iter().any(|c| c.1.is_positive()) {
        return None;
    }
    let mut h = vec![BigRational::zero(); d];
    for k in (0..d).rev() {
        let (mut lo, mut hi): (Option<BigRational>, Option<BigRational>) = (None, None);
        for (coeffs, rhs) in &stages[k] {
            let ck = &coeffs[k];
            if ck.is_zero() {
                continue;
            }
            let others = (k + 1..d).fold(BigRational::zero(), |acc, i| acc + &coeffs[i] * &h[i]);
            let bound = (rhs - others) / ck;
            if ck.is_positive() {
                lo = Some(lo.map_or(bound.clone(), |l| if bound > l { bound.clone() } else { l }));
            } else {
                hi = Some(hi.map_or(bound.clone(), |u| if bound < u { bound.clone() } else { u }));
            }
        }
        h[k] = pick_in_interval(lo, hi);
    }
    Some(h)
}

fn pick_in_interval(lo: Option<BigRational>, hi: Option<BigRational>) -> BigRational {
    let zero = BigRational::zero();
    let inside = |x: &BigRational| lo.as_ref().is_none_or(|l| x >= l) && hi.as_ref().is_none_or(|u| x <= u);
    if inside(&zero) {
        return zero;
    }
    let cand = match (&lo, &hi) {
        (Some(l), _) if l.is_positive() => l.ceil(),
        (_, Some(u)) if u.is_negative() => u.floor(),
        _ => zero,
    };
    if inside(&cand) {
        return cand;
    }
    match (lo, hi) {
        (Some(l), Some(u)) => (l + u) / BigRational::from_integer(BigInt::from(2)),
        (Some(l), None) => l,
        (None, Some(u)) => u,
        (None, None) => BigRational::zero(),
    }
}

/// Validates `A` and finds a positivity certificate.
pub fn check_positive_grading(a: &[Vec<i64>]) -> Result<GradingMatrix> {
    let d = a.len();
    if d == 0 {
        return Err(Error::NotPositive("empty grading matrix".into()));
    }
    let n = a[0].len();
    if a.iter().any(|r| r.len() != n) {
        return Err(Error::Input("grading rows have different lengths".into()));
    }
    let big: Vec<Vec<BigInt>> = a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let s = smith_normal_form(&big, n);
    if s.rank() < d {
        return Err(Error::NotPositive(format!("matrix has rank {} < {d}", s.rank())));
    }
    if s.divisors.iter().any(|x| !x.is_one()) {
        return Err(Error::NotPositive("columns do not span Z^d".into()));
    }
    let h = positive_functional(a).ok_or_else(|| Error::NotPositive("columns do not lie in an open half-space".into()))?;
    let ha: Vec<BigRational> = (0..n)
        .map(|j| h.iter().zip(a).fold(BigRational::zero(), |acc, (hi, row)| acc + hi * BigRational::from_integer(BigInt::from(row[j]))))
        .collect();
    let lcm_den = ha.iter().fold(BigInt::one(), |acc, x| num_integer::lcm(acc, x.denom().clone()));
    let ints: Vec<BigInt> = ha.iter().map(|x| (x * BigRational::from_integer(lcm_den.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| num_integer::gcd(acc, x.clone()));
    let weights = ints
        .iter()
        .map(|x| (x / &g).to_i64().ok_or_else(|| Error::Resource("weights too large".into())))
        .collect::<Result<Vec<_>>>()?;
    Ok(GradingMatrix { a: a.to_vec(), h, weights })
}

pub fn degree(m: &Monomial, g: &GradingMatrix) -> Vec<i64> {
    g.degree(m)
}

/// Degree under an arbitrary integer matrix (no positivity required).
pub fn degree_in(m: &Monomial, a: &[Vec<i64>]) -> Vec<i64> {
    a.iter().map(|row| m.weight(row)).collect()
}

/// Homogeneity of the reduced basis under an arbitrary integer matrix.
pub fn is_homogeneous_in(i: &Ideal, a: &[Vec<i64>]) -> bool {
    i.gb().elements().iter().all(|g| g.is_homogeneous(a))
}

pub fn is_homogeneous(i: &Ideal, g: &GradingMatrix) -> bool {
    g.is_homogeneous(i)
}

/// `dim_k (k[x]/I)_β`.
pub fn hilbert_function(i: &Ideal, g: &GradingMatrix, beta: &[i64]) -> Result<u64> {
    hilbert_function_capped(i, g, beta, DEFAULT_ENUMERATION_CAP)
}

pub fn hilbert_function_capped(i: &Ideal, g: &GradingMatrix, beta: &[i64], cap: usize) -> Result<u64> {
    if !g.is_homogeneous(i) {
        return Err(Error::NotHomogeneous(i.to_string()));
    }
    let gb = i.gb();
    Ok(g.fiber(beta, cap)?.iter().filter(|m| gb.is_standard(m)).count() as u64)
}

/// Outcome of the toral test for a mesoprimary ideal.
#[derive(Debug, Clone)]
pub struct ToralClassification {
    pub toral: bool,
    pub sigma: Vec<usize>,
    pub lattice: LatticeCharacter,
    /// `ker_Z(A_σ)`.
    pub kernel: IntLattice,
    pub dimension: usize,
    pub rank: usize,
    /// For Andean ideals: Hilbert values along `k deg(prod σ)`, `k = 1..`.
    pub growth: Vec<u64>,
}

/// Toral iff `Sat(L) = ker_Z(A_σ)`, cross-checked against `dim = rank(A_σ)`.
pub fn toral_classify(i: &Ideal, g: &GradingMatrix) -> Result<ToralClassification> {
    let cell = cellular_data(i)?.map_err(|v| Error::NotCellular(i.ring().vars()[v].clone()))?;
    let sigma = cell.sigma.clone();
    let lattice = lattice_of_cellular(i, &sigma)?;
    let kernel = g.kernel(&sigma);
    let toral = lattice.lattice().saturation().same_as(&kernel);
    let dimension = i.dimension()?;
    let rank = g.rank_of(&sigma);
    if toral != (dimension == rank) {
        return Err(Error::Internal(format!(
            "lattice test ({toral}) disagrees with dimension test (dim {dimension}, rank {rank})"
        )));
    }
    let mut growth = Vec::new();
    if !toral {
        let step = g.degree(&Monomial::product_of(i.ring().nvars(), &sigma));
        for k in 1..=3 {
            let beta: Vec<i64> = step.iter().map(|x| x * k).collect();
            growth.push(hilbert_function(i, g, &beta)?);
        }
    }
    Ok(ToralClassification { toral, sigma, lattice, kernel, dimension, rank, growth })
}

/// Toral test for a prime `I(χ) + m_{σ^c}` with `χ` on a saturated lattice.
pub fn toral_prime_test(chi: &LatticeCharacter, sigma: &[usize], g: &GradingMatrix) -> bool {
    chi.lattice().same_as(&g.kernel(sigma))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::poly::Ring;

    fn r(x: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(x))
    }

    #[test]
    fn certificates() {
        let g = check_positive_grading(&[vec![1, 1, 1]]).unwrap();
        assert_eq!(g.certificate(), &[r(1)]);
        let g = check_positive_grading(&[vec![1, 1, 1, 1, 1, 1], vec![0, 1, 2, 3, 4, 5]]).unwrap();
        assert_eq!(g.certificate(), &[r(1), r(0)]);
        assert!(matches!(check_positive_grading(&[vec![1, -1]]), Err(Error::NotPositive(_))));
        assert!(matches!(check_positive_grading(&[vec![2, 2]]), Err(Error::NotPositive(_))));
        assert!(matches!(check_positive_grading(&[vec![1, 1], vec![2, 2]]), Err(Error::NotPositive(_))));
    }

    #[test]
    fn mixed_sign_matrix_is_positive() {
        let a = vec![vec![5, 5, 5, 1, 0], vec![-3, -6, 3, 0, 2]];
        let g = check_positive_grading(&a).unwrap();
        for j in 0..a[0].len() {
            let v = g.certificate().iter().zip(&a).fold(r(0), |acc, (h, row)| acc + h * r(row[j]));
            assert!(v.is_positive());
            assert!(g.weights()[j] > 0);
        }
    }

    #[test]
    fn nonnegative_kernel_vector_blocks_positivity() {
        let a = vec![vec![5, 5, -11, -13, 5, 0], vec![60, 73, -130, -160, 82, 14]];
        // 91 e1 + 35 e4 + 10 e6 has degree zero
        let u = Monomial(vec![91, 0, 0, 35, 0, 10]);
        assert_eq!(degree_in(&u, &a), vec![0, 0]);
        assert!(matches!(check_positive_grading(&a), Err(Error::NotPositive(_))));
    }

    #[test]
    fn degrees_are_additive_columns() {
        let a = vec![vec![5, 5, -11, -13, 5, 0], vec![60, 73, -130, -160, 82, 14]];
        assert_eq!(degree_in(&Monomial(vec![0, 0, 4, 0, 1, 0]), &a), vec![-39, -438]);
        assert_eq!(degree_in(&Monomial(vec![0, 0, 0, 3, 0, 3]), &a), vec![-39, -438]);
    }

    #[test]
    fn example_four_three_hilbert_values() {
        let q = Field::rationals();
        let ring = Ring::new(["x", "y", "z", "w"], q.clone());
        let g = check_positive_grading(&[vec![1, 1, 0, 0], vec![0, 1, 1, 1]]).unwrap();
        let one = q.one();
        let m = |e: [u32; 4]| Monomial(e.to_vec());
        let toral = Ideal::new(&ring, vec![
            ring.binomial(m([0, 0, 1, 0]), one.clone(), m([0, 0, 0, 1])),
            ring.binomial(m([1, 0, 0, 1]), one.clone(), m([0, 1, 0, 0])),
        ]);
        assert_eq!(hilbert_function(&toral, &g, &[2, 3]).unwrap(), 1);
        let andean = Ideal::of_vars(&ring, &[0, 1]);
        assert_eq!(hilbert_function(&andean, &g, &[0, 3]).unwrap(), 4);
        assert_eq!(hilbert_function(&andean, &g, &[-1, 3]).unwrap(), 0);
        assert!(toral_classify(&toral, &g).unwrap().toral);
        let c = toral_classify(&andean, &g).unwrap();
        assert!(!c.toral);
        assert!(c.growth.windows(2).all(|w| w[0] < w[1]));
    }
}
