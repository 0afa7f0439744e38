//! Cellularity and cellular decomposition.

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::poly::Monomial;

/// Which variables are nonzerodivisors (`sigma`) and the nilpotency order
/// of every other variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellularWitnessData {
    pub sigma: Vec<usize>,
    /// `(j, N_j)`: `x_j^{N_j}` lies in the ideal, `x_j^{N_j - 1}` does not.
    pub nilpotency: Vec<(usize, u32)>,
}

impl CellularWitnessData {
    pub fn complement(&self) -> Vec<usize> {
        self.nilpotency.iter().map(|(j, _)| *j).collect()
    }

    pub fn order_of(&self, j: usize) -> Option<u32> {
        self.nilpotency.iter().find(|(k, _)| *k == j).map(|(_, e)| *e)
    }
}

/// How a single variable behaves modulo an ideal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VariableKind {
    Nonzerodivisor,
    Nilpotent(u32),
    Neither,
}

pub fn classify_variable(i: &Ideal, j: usize) -> VariableKind {
    if i.is_nonzerodivisor(j) {
        return VariableKind::Nonzerodivisor;
    }
    if i.saturate(&i.ring().var(j)).expect("variables are nonzero").is_unit() {
        let order = i.nilpotency_order(j, u32::MAX / 2).expect("nilpotent variables have a finite order");
        VariableKind::Nilpotent(order)
    } else {
        VariableKind::Neither
    }
}

/// The cellular data of `I`, or the first variable that is neither
/// nilpotent nor a nonzerodivisor.
pub fn cellular_data(i: &Ideal) -> Result<std::result::Result<CellularWitnessData, usize>> {
    if i.is_unit() {
        return Err(Error::UnitIdeal("cellular structure"));
    }
    let mut sigma = Vec::new();
    let mut nilpotency = Vec::new();
    for j in 0..i.ring().nvars() {
        match classify_variable(i, j) {
            VariableKind::Nonzerodivisor => sigma.push(j),
            VariableKind::Nilpotent(e) => nilpotency.push((j, e)),
            VariableKind::Neither => return Ok(Err(j)),
        }
    }
    Ok(Ok(CellularWitnessData { sigma, nilpotency }))
}

/// A cellular ideal together with its cellular variables.
#[derive(Debug, Clone)]
pub struct CellularLeaf {
    pub ideal: Ideal,
    pub data: CellularWitnessData,
}

/// Smallest `e` with `I : x_j^e = I : x_j^∞`.
pub fn stabilization_exponent(i: &Ideal, j: usize, saturated: &Ideal) -> u32 {
    let n = i.ring().nvars();
    let mut e = 0;
    for g in saturated.gb().elements() {
        while !i.contains(&g.mul_monomial(&Monomial::var(n, j).pow(e))) {
            e += 1;
        }
    }
    e
}

/// Splits `I` into cellular ideals whose intersection is `I`.
pub fn cellular_decomposition(i: &Ideal) -> Result<Vec<CellularLeaf>> {
    if i.is_unit() {
        return Err(Error::UnitIdeal("cellular decomposition"));
    }
    let mut leaves = Vec::new();
    split(i.reduced(), &mut leaves)?;
    // drop leaves containing another leaf
    let mut keep = vec![true; leaves.len()];
    for a in 0..leaves.len() {
        for b in 0..leaves.len() {
            if a != b && keep[b] && keep[a] && leaves[a].ideal.contains_ideal(&leaves[b].ideal) {
                let tie = leaves[b].ideal.contains_ideal(&leaves[a].ideal);
                if !tie || b < a {
                    keep[a] = false;
                }
            }
        }
    }
    let leaves: Vec<CellularLeaf> = leaves.into_iter().zip(keep).filter(|(_, k)| *k).map(|(l, _)| l).collect();
    let inter = Ideal::intersect_all(i.ring(), leaves.iter().map(|l| &l.ideal));
    if !inter.equals(i) {
        return Err(Error::Internal("cellular leaves do not intersect to the input".into()));
    }
    Ok(leaves)
}

fn split(i: Ideal, out: &mut Vec<CellularLeaf>) -> Result<()> {
    if i.is_unit() {
        return Ok(());
    }
    match cellular_data(&i)? {
        Ok(data) => {
            out.push(CellularLeaf { ideal: i, data });
            Ok(())
        }
        Err(j) => {
            let n = i.ring().nvars();
            let sat = i.saturate(&i.ring().var(j))?;
            let e = stabilization_exponent(&i, j, &sat).max(1);
            let nil = i.add_gens([i.ring().monomial(Monomial::var(n, j).pow(e))]).reduced();
            split(sat, out)?;
            split(nil, out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::poly::Ring;

    fn m(e: &[u32]) -> Monomial {
        Monomial(e.to_vec())
    }

    #[test]
    fn remark_five_four_is_cellular() {
        let r = Ring::new(["x", "z", "w"], Field::rationals());
        let one = r.field().one();
        let i = Ideal::new(&r, vec![
            r.binomial(m(&[0, 2, 0]), one.clone(), m(&[0, 0, 2])),
            r.binomial(m(&[1, 1, 0]), one.clone(), m(&[1, 0, 1])),
            r.monomial(m(&[2, 0, 0])),
        ]);
        let d = cellular_data(&i).unwrap().unwrap();
        assert_eq!(d.sigma, vec![1, 2]);
        assert_eq!(d.nilpotency, vec![(0, 2)]);
    }

    #[test]
    fn example_three_nine_is_not_cellular() {
        let r = Ring::new(["x", "y"], Field::rationals());
        let one = r.field().one();
        let i = Ideal::new(&r, vec![r.binomial(m(&[2, 0]), one.clone(), m(&[0, 2])), r.binomial(m(&[2, 1]), one.clone(), m(&[1, 2]))]);
        assert_eq!(cellular_data(&i).unwrap(), Err(0));
        // oracle: x^3 is not in I and (I : x) differs from I
        assert!(!i.contains_monomial(&m(&[3, 0])));
        assert!(!i.quotient(&r.var(0)).unwrap().equals(&i));
        let leaves = cellular_decomposition(&i).unwrap();
        for l in &leaves {
            assert!(cellular_data(&l.ideal).unwrap().is_ok());
            assert!(l.ideal.is_binomial());
        }
        assert!(Ideal::intersect_all(&r, leaves.iter().map(|l| &l.ideal)).equals(&i));
    }

    #[test]
    fn monomial_ideal_leaves() {
        let r = Ring::new(["x", "y"], Field::rationals());
        let i = Ideal::from_monomials(&r, [m(&[2, 0]), m(&[1, 1])]);
        let leaves = cellular_decomposition(&i).unwrap();
        assert!(leaves.len() >= 2);
        assert!(leaves.iter().any(|l| l.data.sigma == vec![1]));
        assert!(Ideal::intersect_all(&r, leaves.iter().map(|l| &l.ideal)).equals(&i));
    }

    #[test]
    fn lattice_ideal_is_its_own_leaf() {
        let r = Ring::new(["x", "y"], Field::rationals());
        let i = Ideal::new(&r, vec![r.binomial(m(&[1, 0]), r.field().one(), m(&[0, 1]))]);
        let leaves = cellular_decomposition(&i).unwrap();
        assert_eq!(leaves.len(), 1);
        assert_eq!(leaves[0].data.sigma, vec![0, 1]);
    }
}
