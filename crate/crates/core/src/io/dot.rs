//! Congruence diagrams in DOT: monomials in a box, joined when their
//! difference (up to a scalar) lies in the ideal.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::field::Scalar;
use crate::ideal::Ideal;
use crate::poly::Monomial;

/// Monomials of `[0, bound]^n` in lexicographic order of exponents.
pub fn box_monomials(n: usize, bound: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::one(n)];
    for i in 0..n {
        let mut next = Vec::new();
        for m in &out {
            for e in 0..=bound {
                let mut x = m.clone();
                x.0[i] = e;
                next.push(x);
            }
        }
        out = next;
    }
    out.sort();
    out
}

/// The class of each monomial: `None` for monomials in `I`, otherwise the
/// monomial of its normal form and the scalar `c` with `NF(x^u) = c x^b`.
pub fn congruence_keys(i: &Ideal, ms: &[Monomial]) -> Vec<Option<(Monomial, Scalar)>> {
    let gb = i.gb();
    ms.iter()
        .map(|m| {
            let nf = gb.normal_form_terms(m);
            match nf.len() {
                0 => None,
                1 => Some((nf[0].0.clone(), nf[0].1.clone())),
                _ => panic!("normal form of a monomial modulo a binomial ideal has {} terms", nf.len()),
            }
        })
        .collect()
}

/// Edges `(a, b, λ)` with `x^{ms[a]} - λ x^{ms[b]} ∈ I`, `a < b`. Monomials
/// in `I` are joined to their successors `u + e_i` in the box, which keeps
/// them in one component.
pub fn congruence_edges(i: &Ideal, ms: &[Monomial]) -> Vec<(usize, usize, Option<Scalar>)> {
    let keys = congruence_keys(i, ms);
    let index: BTreeMap<&Monomial, usize> = ms.iter().enumerate().map(|(k, m)| (m, k)).collect();
    let mut edges = Vec::new();
    for a in 0..ms.len() {
        match &keys[a] {
            None => {
                for v in 0..ms[a].nvars() {
                    let up = ms[a].mul(&Monomial::var(ms[a].nvars(), v));
                    if let Some(&b) = index.get(&up) {
                        if keys[b].is_none() {
                            edges.push((a, b, None));
                        }
                    }
                }
            }
            Some((nb, ca)) => {
                for b in a + 1..ms.len() {
                    if let Some((nb2, cb)) = &keys[b] {
                        if nb == nb2 {
                            edges.push((a, b, Some(ca / cb)));
                        }
                    }
                }
            }
        }
    }
    edges.sort_by(|x, y| (x.0, x.1).cmp(&(y.0, y.1)));
    edges
}

/// Connected components of the diagram, as lists of box indices.
pub fn congruence_components(n: usize, edges: &[(usize, usize, Option<Scalar>)]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let nx = p[y];
            p[y] = r;
            y = nx;
        }
        r
    }
    for (a, b, _) in edges {
        let (ra, rb) = (find(&mut parent, *a), find(&mut parent, *b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for k in 0..n {
        let r = find(&mut parent, k);
        groups.entry(r).or_default().push(k);
    }
    groups.into_values().collect()
}

/// DOT text for the box `[0, bound]^n`. Rings with at most three variables
/// get pinned planar positions.
pub fn emit_congruence_dot(i: &Ideal, bound: u32) -> String {
    let ring = i.ring();
    let n = ring.nvars();
    let ms = box_monomials(n, bound);
    let keys = congruence_keys(i, &ms);
    let edges = congruence_edges(i, &ms);
    let id = |m: &Monomial| format!("m{}", m.0.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("_"));
    let mut out = String::new();
    writeln!(out, "graph congruence {{").unwrap();
    writeln!(out, "  node [shape=circle, fontsize=10];").unwrap();
    for (m, key) in ms.iter().zip(&keys) {
        let label = ring.fmt_monomial(m);
        let label = if label.is_empty() { "1".to_string() } else { label };
        let mut attrs = format!("label=\"{label}\"");
        if n <= 3 {
            let (x, y) = match n {
                0 => (0.0, 0.0),
                1 => (m.0[0] as f64, 0.0),
                2 => (m.0[0] as f64, m.0[1] as f64),
                _ => (m.0[0] as f64 - 0.5 * m.0[2] as f64, m.0[1] as f64 - 0.5 * m.0[2] as f64),
            };
            write!(attrs, ", pos=\"{x},{y}!\"").unwrap();
        }
        if key.is_none() {
            attrs.push_str(", style=filled, fillcolor=gray");
        }
        writeln!(out, "  {} [{attrs}];", id(m)).unwrap();
    }
    for (a, b, lambda) in &edges {
        match lambda {
            Some(l) if !l.is_one() => writeln!(out, "  {} -- {} [label=\"{l}\"];", id(&ms[*a]), id(&ms[*b])).unwrap(),
            Some(_) => writeln!(out, "  {} -- {};", id(&ms[*a]), id(&ms[*b])).unwrap(),
            None => writeln!(out, "  {} -- {} [color=gray];", id(&ms[*a]), id(&ms[*b])).unwrap(),
        }
    }
    writeln!(out, "}}").unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::poly::Ring;

    #[test]
    fn zero_ideal_has_no_edges() {
        let r = Ring::new(["x", "y"], Field::rationals());
        let i = Ideal::zero(&r);
        let ms = box_monomials(2, 3);
        assert!(congruence_edges(&i, &ms).is_empty());
        assert!(!emit_congruence_dot(&i, 3).contains("--"));
    }

    #[test]
    fn monomial_ideal_classes() {
        let r = Ring::new(["x", "y"], Field::rationals());
        let i = Ideal::from_monomials(&r, [Monomial(vec![2, 0]), Monomial(vec![0, 2])]);
        let ms = box_monomials(2, 3);
        let comps = congruence_components(ms.len(), &congruence_edges(&i, &ms));
        // 1, x, y, xy stay apart; everything else is one class
        assert_eq!(comps.len(), 5);
        assert_eq!(comps.iter().filter(|c| c.len() == 1).count(), 4);
    }
}
