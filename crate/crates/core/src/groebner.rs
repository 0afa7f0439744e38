//! Buchberger's algorithm with sugar selection and the Gebauer–Möller
//! pair update, plus normal forms against a reduced basis.

use std::cmp::Ordering;

use crate::field::Scalar;
use crate::poly::{Monomial, Polynomial, Ring, TermOrder};

/// Terms sorted by decreasing monomial under a fixed order.
type Terms = Vec<(Monomial, Scalar)>;

fn to_terms(p: &Polynomial, ord: &TermOrder) -> Terms {
    let mut t: Terms = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
    t.sort_by(|a, b| ord.cmp(&b.0, &a.0));
    t
}

fn from_terms(ring: &Ring, t: &[(Monomial, Scalar)]) -> Polynomial {
    ring.from_terms(t.iter().map(|(m, c)| (c.clone(), m.clone())))
}

/// `a - c * x^shift * b`, both sorted decreasingly.
fn sub_scaled(a: &[(Monomial, Scalar)], b: &[(Monomial, Scalar)], c: &Scalar, shift: &Monomial, ord: &TermOrder) -> Terms {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut j = 0;
    let mut bj: Option<(Monomial, Scalar)> = b.first().map(|(m, s)| (m.mul(shift), s * c));
    while i < a.len() || bj.is_some() {
        match (a.get(i), bj.as_ref()) {
            (Some(ta), Some(tb)) => match ord.cmp(&ta.0, &tb.0) {
                Ordering::Greater => {
                    out.push(ta.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((tb.0.clone(), -&tb.1));
                    j += 1;
                    bj = b.get(j).map(|(m, s)| (m.mul(shift), s * c));
                }
                Ordering::Equal => {
                    let s = &ta.1 - &tb.1;
                    if !s.is_zero() {
                        out.push((ta.0.clone(), s));
                    }
                    i += 1;
                    j += 1;
                    bj = b.get(j).map(|(m, s)| (m.mul(shift), s * c));
                }
            },
            (Some(ta), None) => {
                out.push(ta.clone());
                i += 1;
            }
            (None, Some(tb)) => {
                out.push((tb.0.clone(), -&tb.1));
                j += 1;
                bj = b.get(j).map(|(m, s)| (m.mul(shift), s * c));
            }
            (None, None) => break,
        }
    }
    out
}

fn monic(t: &mut Terms) {
    if let Some((_, c)) = t.first() {
        if !c.is_one() {
            let inv = c.inv().unwrap();
            for (_, a) in t.iter_mut() {
                *a = &*a * &inv;
            }
        }
    }
}

/// Fully reduces `f` by `basis` (each element monic with its leading term first).
fn reduce_full(f: Terms, basis: &[&Terms], ord: &TermOrder) -> Terms {
    let mut rest = f;
    let mut done: Terms = Vec::new();
    let mut start = 0;
    while start < rest.len() {
        let (m, c) = &rest[start];
        let hit = basis.iter().find(|g| g[0].0.divides(m));
        match hit {
            Some(g) => {
                let shift = m.div(&g[0].0).unwrap();
                let c = c.clone();
                rest = sub_scaled(&rest[start..], g, &c, &shift, ord);
                start = 0;
            }
            None => {
                done.push(rest[start].clone());
                start += 1;
            }
        }
    }
    done
}

/// Reduces only while the leading term is reducible.
fn reduce_top(f: Terms, basis: &[&Terms], ord: &TermOrder) -> Terms {
    let mut f = f;
    while let Some((m, c)) = f.first() {
        let Some(g) = basis.iter().find(|g| g[0].0.divides(m)) else { break };
        let shift = m.div(&g[0].0).unwrap();
        let c = c.clone();
        f = sub_scaled(&f, g, &c, &shift, ord);
    }
    f
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u64,
}

struct Builder<'a> {
    ord: &'a TermOrder,
    polys: Vec<Terms>,
    sugar: Vec<u64>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl<'a> Builder<'a> {
    fn lm(&self, i: usize) -> &Monomial {
        &self.polys[i][0].0
    }

    fn pair_sugar(&self, i: usize, j: usize, lcm: &Monomial) -> u64 {
        let si = self.sugar[i] + lcm.degree() - self.lm(i).degree();
        let sj = self.sugar[j] + lcm.degree() - self.lm(j).degree();
        si.max(sj)
    }

    /// Gebauer–Möller update with the new element `h`.
    fn update(&mut self, h: usize) {
        let lm_h = self.lm(h).clone();
        let cands: Vec<usize> = (0..h).filter(|&g| self.active[g]).collect();
        let lcms: Vec<Monomial> = cands.iter().map(|&g| lm_h.lcm(self.lm(g))).collect();
        let coprime: Vec<bool> = cands.iter().map(|&g| lm_h.is_coprime(self.lm(g))).collect();
        // Keep (h,g) if coprime or no other candidate lcm properly divides it
        // (ties broken by index so that one of equal lcms survives).
        let mut keep = vec![false; cands.len()];
        for a in 0..cands.len() {
            if coprime[a] {
                keep[a] = true;
                continue;
            }
            let dominated = (0..cands.len()).any(|b| {
                b != a
                    && lcms[b].divides(&lcms[a])
                    && (lcms[b] != lcms[a] || b < a)
            });
            keep[a] = !dominated;
        }
        // Among kept pairs sharing an lcm with a coprime pair, drop all (product criterion).
        let mut new_pairs = Vec::new();
        for a in 0..cands.len() {
            if !keep[a] || coprime[a] {
                continue;
            }
            if (0..cands.len()).any(|b| coprime[b] && lcms[b] == lcms[a]) {
                continue;
            }
            let sugar = self.pair_sugar(cands[a], h, &lcms[a]);
            new_pairs.push(Pair { i: cands[a], j: h, lcm: lcms[a].clone(), sugar });
        }
        let polys = &self.polys;
        self.pairs.retain(|p| {
            !(lm_h.divides(&p.lcm)
                && lm_h.lcm(&polys[p.i][0].0) != p.lcm
                && lm_h.lcm(&polys[p.j][0].0) != p.lcm)
        });
        self.pairs.extend(new_pairs);
        for g in 0..h {
            if self.active[g] && lm_h.divides(self.lm(g)) {
                self.active[g] = false;
            }
        }
        self.active[h] = true;
    }

    fn push(&mut self, t: Terms, sugar: u64) {
        self.polys.push(t);
        self.sugar.push(sugar);
        self.active.push(false);
        let h = self.polys.len() - 1;
        self.update(h);
    }

    fn active_refs(&self) -> Vec<&Terms> {
        (0..self.polys.len()).filter(|&i| self.active[i]).map(|i| &self.polys[i]).collect()
    }

    fn pop_pair(&mut self) -> Option<Pair> {
        let ord = self.ord;
        let best = (0..self.pairs.len()).min_by(|&a, &b| {
            let (pa, pb) = (&self.pairs[a], &self.pairs[b]);
            pa.sugar.cmp(&pb.sugar).then_with(|| ord.cmp(&pa.lcm, &pb.lcm))
        })?;
        Some(self.pairs.swap_remove(best))
    }

    fn spoly(&self, p: &Pair) -> Terms {
        let (f, g) = (&self.polys[p.i], &self.polys[p.j]);
        let sf = p.lcm.div(&f[0].0).unwrap();
        let sg = p.lcm.div(&g[0].0).unwrap();
        let fshift: Terms = f[1..].iter().map(|(m, c)| (m.mul(&sf), c.clone())).collect();
        let one = g[0].1.one_like();
        sub_scaled(&fshift, &g[1..], &one, &sg, self.ord)
    }
}

/// A reduced Gröbner basis: monic, interreduced, sorted by decreasing
/// leading monomial.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    ring: Ring,
    order: TermOrder,
    elements: Vec<Polynomial>,
    terms: Vec<Terms>,
}

impl GroebnerBasis {
    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_constant()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.terms.iter().map(|t| t[0].0.clone()).collect()
    }

    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        let refs: Vec<&Terms> = self.terms.iter().collect();
        let r = reduce_full(to_terms(p, &self.order), &refs, &self.order);
        from_terms(&self.ring, &r)
    }

    /// Normal form of a single monomial, as sorted terms (cheaper than
    /// building a polynomial when called in inner loops).
    pub fn normal_form_terms(&self, m: &Monomial) -> Vec<(Monomial, Scalar)> {
        let refs: Vec<&Terms> = self.terms.iter().collect();
        reduce_full(vec![(m.clone(), self.ring.field().one())], &refs, &self.order)
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        self.normal_form(p).is_zero()
    }

    /// Whether `x^m` is a standard monomial (not divisible by any leading monomial).
    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self.terms.iter().any(|t| t[0].0.divides(m))
    }

    pub fn contains_monomial(&self, m: &Monomial) -> bool {
        if self.is_standard(m) {
            return false;
        }
        self.normal_form_terms(m).is_empty()
    }
}

/// Computes the reduced Gröbner basis of the ideal generated by `gens`.
pub fn groebner_basis(ring: &Ring, gens: &[Polynomial], ord: &TermOrder) -> GroebnerBasis {
    let mut b = Builder { ord, polys: Vec::new(), sugar: Vec::new(), active: Vec::new(), pairs: Vec::new() };
    let mut input: Vec<Terms> = gens.iter().filter(|g| !g.is_zero()).map(|g| to_terms(g, ord)).collect();
    input.sort_by(|a, b| ord.cmp(&a[0].0, &b[0].0));
    for t in input {
        let sugar = t.iter().map(|(m, _)| m.degree()).max().unwrap_or(0);
        let refs = b.active_refs();
        let mut r = reduce_top(t, &refs, ord);
        if r.is_empty() {
            continue;
        }
        monic(&mut r);
        b.push(r, sugar);
    }
    while let Some(p) = b.pop_pair() {
        let s = b.spoly(&p);
        if s.is_empty() {
            continue;
        }
        let refs = b.active_refs();
        let mut r = reduce_top(s, &refs, ord);
        if r.is_empty() {
            continue;
        }
        monic(&mut r);
        if r[0].0.is_one() {
            let one = vec![(r[0].0.clone(), r[0].1.one_like())];
            return GroebnerBasis {
                ring: ring.clone(),
                order: ord.clone(),
                elements: vec![from_terms(ring, &one)],
                terms: vec![one],
            };
        }
        b.push(r, p.sugar);
    }
    let mut basis: Vec<Terms> = (0..b.polys.len()).filter(|&i| b.active[i]).map(|i| b.polys[i].clone()).collect();
    // interreduce tails
    let lms: Vec<Terms> = basis.iter().map(|t| t.clone()).collect();
    for k in 0..basis.len() {
        let others: Vec<&Terms> = lms.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, t)| t).collect();
        let head = basis[k][0].clone();
        let tail = reduce_full(basis[k][1..].to_vec(), &others, ord);
        let mut t = vec![head];
        t.extend(tail);
        basis[k] = t;
    }
    basis.sort_by(|a, b| ord.cmp(&b[0].0, &a[0].0));
    let elements = basis.iter().map(|t| from_terms(ring, t)).collect();
    GroebnerBasis { ring: ring.clone(), order: ord.clone(), elements, terms: basis }
}

/// Remainder of `p` modulo the basis; zero iff `p` lies in the ideal.
pub fn normal_form(p: &Polynomial, g: &GroebnerBasis) -> Polynomial {
    g.normal_form(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn ring(vars: &[&str]) -> Ring {
        Ring::new(vars.iter().copied(), Field::rationals())
    }

    fn m(e: &[u32]) -> Monomial {
        Monomial(e.to_vec())
    }

    #[test]
    fn single_variable() {
        let r = ring(&["x"]);
        let g = groebner_basis(&r, &[r.var(0)], &TermOrder::Lex);
        assert_eq!(g.elements(), &[r.var(0)]);
    }

    #[test]
    fn example_three_nine_basis() {
        let r = ring(&["x", "y"]);
        let one = r.field().one();
        let f1 = r.binomial(m(&[2, 0]), one.clone(), m(&[0, 2]));
        let f2 = r.binomial(m(&[2, 1]), one.clone(), m(&[1, 2]));
        let g = groebner_basis(&r, &[f1.clone(), f2.clone()], &TermOrder::GRevLex);
        assert!(g.contains(&f1) && g.contains(&f2));
        // y^3 - x y^2 = y(x^2-y^2) - (x^2 y - x y^2) lies in the ideal
        let y3 = r.binomial(m(&[0, 3]), one.clone(), m(&[1, 2]));
        assert!(g.contains(&y3));
        for e in g.elements() {
            assert!(e.is_binomial());
        }
        let x3 = r.monomial(m(&[3, 0]));
        let big = groebner_basis(&r, &[f1, x3.clone(), r.monomial(m(&[1, 1])), r.monomial(m(&[0, 3]))], &TermOrder::GRevLex);
        assert!(normal_form(&x3, &big).is_zero());
    }

    #[test]
    fn normal_form_below_leading_terms() {
        let r = ring(&["x", "y"]);
        let g = groebner_basis(&r, &[r.monomial(m(&[2, 0])), r.monomial(m(&[0, 2]))], &TermOrder::GRevLex);
        let p = &r.var(0) - &r.var(1);
        assert_eq!(normal_form(&p, &g), p);
        assert_eq!(normal_form(&normal_form(&p, &g), &g), normal_form(&p, &g));
    }

    #[test]
    fn unit_ideal() {
        let r = ring(&["x", "y"]);
        let g = groebner_basis(&r, &[r.var(0), &r.var(0) - &r.one()], &TermOrder::GRevLex);
        assert!(g.is_unit());
    }

    #[test]
    fn reduced_basis_is_interreduced() {
        let r = ring(&["x", "y", "z"]);
        let one = r.field().one();
        let gens = vec![
            r.binomial(m(&[1, 1, 0]), one.clone(), m(&[0, 0, 2])),
            r.binomial(m(&[2, 0, 0]), one.clone(), m(&[0, 1, 1])),
            r.binomial(m(&[0, 2, 0]), one.clone(), m(&[1, 0, 1])),
        ];
        for ord in [TermOrder::Lex, TermOrder::GRevLex, TermOrder::Elimination(vec![0])] {
            let g = groebner_basis(&r, &gens, &ord);
            let lms = g.leading_monomials();
            for (k, e) in g.elements().iter().enumerate() {
                assert!(e.leading_term(&ord).unwrap().1.is_one());
                for (mm, _) in e.terms() {
                    for (j, l) in lms.iter().enumerate() {
                        if j != k {
                            assert!(!l.divides(mm));
                        }
                    }
                }
            }
            for f in &gens {
                assert!(g.contains(f));
            }
        }
    }
}
