//! JSON reports (schema 1). Polynomials are arrays of
//! `[coefficient, exponent vector]` pairs in decreasing grevlex order;
//! ideals are given by their reduced Gröbner basis.

use serde_json::{json, Value};

use crate::ideal::Ideal;
use crate::meso::{MesoComponent, MesoDecomposition, WitnessRecord};
use crate::poly::{Monomial, Polynomial, TermOrder};
use crate::primdec::{IntersectionReport, PrimaryComponent};

use super::parse::ProblemFile;

pub const SCHEMA: u32 = 1;

pub fn poly_json(p: &Polynomial) -> Value {
    let ord = TermOrder::GRevLex;
    let mut terms: Vec<_> = p.terms().collect();
    terms.sort_by(|a, b| ord.cmp(b.0, a.0));
    Value::Array(terms.into_iter().map(|(m, c)| json!([c.to_string(), m.0])).collect())
}

/// Reduced basis sorted by leading monomial.
pub fn sorted_basis(i: &Ideal) -> Vec<Polynomial> {
    let ord = TermOrder::GRevLex;
    let mut gens = i.gb().elements().to_vec();
    gens.sort_by(|a, b| ord.cmp(a.leading_monomial(&ord).unwrap(), b.leading_monomial(&ord).unwrap()));
    gens
}

pub fn ideal_text(i: &Ideal) -> String {
    let gens: Vec<String> = sorted_basis(i).iter().map(|g| g.to_string()).collect();
    format!("<{}>", gens.join(", "))
}

pub fn ideal_json(i: &Ideal) -> Value {
    let basis = sorted_basis(i);
    json!({
        "text": ideal_text(i),
        "basis": basis.iter().map(poly_json).collect::<Vec<_>>(),
    })
}

fn monomial_text(i: &Ideal, m: &Monomial) -> String {
    let s = i.ring().fmt_monomial(m);
    if s.is_empty() {
        "1".into()
    } else {
        s
    }
}

fn names(i: &Ideal, vars: &[usize]) -> Vec<String> {
    vars.iter().map(|&v| i.ring().vars()[v].clone()).collect()
}

pub fn input_json(p: &ProblemFile) -> Value {
    json!({
        "vars": p.ring.vars(),
        "field": p.ring.field().spec().to_string(),
        "grading": p.grading,
        "generators": p.generators.iter().map(poly_json).collect::<Vec<_>>(),
    })
}

pub fn envelope(command: &str, p: &ProblemFile, result: Value) -> Value {
    json!({ "schema": SCHEMA, "command": command, "input": input_json(p), "result": result })
}

pub fn witness_json(i: &Ideal, w: &WitnessRecord) -> Value {
    json!({
        "sigma": names(i, &w.sigma),
        "witness": monomial_text(i, &w.w),
        "class": w.class.iter().map(|m| monomial_text(i, m)).collect::<Vec<_>>(),
        "sigma_monomial": monomial_text(i, &w.certificate.m),
        "essential": w.is_essential(),
        "essential_certificate": w.essential.as_ref().map(|e| poly_json(&e.p)),
    })
}

pub fn meso_component_json(c: &MesoComponent) -> Value {
    let i = &c.ideal;
    json!({
        "ideal": ideal_json(i),
        "sigma": names(i, &c.sigma),
        "cogenerator": monomial_text(i, &c.cogenerator),
        "witnesses": c.witnesses.iter().map(|w| witness_json(i, w)).collect::<Vec<_>>(),
        "mesoprime": ideal_json(&c.mesoprime),
        "monomial_part": ideal_json(&c.monomial_part),
    })
}

pub fn meso_json(d: &MesoDecomposition, toral: Option<&[bool]>) -> Value {
    let mut comps: Vec<Value> = d.components.iter().map(meso_component_json).collect();
    if let Some(flags) = toral {
        for (c, t) in comps.iter_mut().zip(flags) {
            c["toral"] = json!(t);
        }
    }
    let merged: Vec<Value> = d.merged().iter().map(meso_component_json).collect();
    let bounds: Vec<Value> = match d.components.first() {
        Some(c) => d.bounds.iter().map(|(s, b)| json!({ "sigma": names(&c.ideal, s), "bound": b })).collect(),
        None => vec![],
    };
    json!({
        "components": comps,
        "merged": merged,
        "bounds": bounds,
        "graded": d.graded,
        "verification": { "intersection_equals_input": true, "components_mesoprimary": true },
    })
}

pub fn primary_component_json(c: &PrimaryComponent) -> Value {
    let i = &c.ideal;
    json!({
        "ideal": ideal_json(i),
        "prime": ideal_json(&c.prime),
        "sigma": names(i, &c.sigma),
        "minimal": c.minimal,
        "toral": c.toral,
        "cogenerators": c.cogenerators.iter().map(|m| monomial_text(i, m)).collect::<Vec<_>>(),
    })
}

pub fn intersection_json(r: &IntersectionReport) -> Value {
    json!({
        "ideal": ideal_json(&r.ideal),
        "binomial": r.binomial,
        "witness": r.witness.as_ref().map(poly_json),
        "witness_text": r.witness.as_ref().map(|w| w.to_string()),
        "decomposition_independent": r.decomposition_independent,
    })
}
