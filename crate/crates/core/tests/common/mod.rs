#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use binomeso::ideal::Ideal;
use binomeso::io::parse::{parse_generators, parse_monomial, parse_problem, ProblemFile};
use binomeso::poly::{Monomial, Ring};

pub fn problems_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../problems")
}

pub fn load(name: &str) -> ProblemFile {
    let path = problems_dir().join(format!("{name}.txt"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    parse_problem(&text, None).unwrap()
}

/// Every problem file, by stem, in name order.
pub fn corpus() -> Vec<(String, ProblemFile)> {
    let mut names: Vec<String> = std::fs::read_dir(problems_dir())
        .unwrap()
        .filter_map(|e| {
            let p = e.ok()?.path();
            (p.extension()? == "txt").then(|| p.file_stem().unwrap().to_string_lossy().into_owned())
        })
        .collect();
    names.sort();
    names.into_iter().map(|n| (n.clone(), load(&n))).collect()
}

/// `"x - y, x^2"` as an ideal of `ring`.
pub fn ideal(ring: &Ring, gens: &str) -> Ideal {
    Ideal::new(ring, parse_generators(ring, gens, 1, 1).unwrap())
}

pub fn mono(ring: &Ring, s: &str) -> Monomial {
    parse_monomial(ring, s).unwrap()
}

/// Matches `got` against `want` as sets of ideals.
pub fn same_ideal_set(got: &[&Ideal], want: &[Ideal]) -> Result<(), String> {
    if got.len() != want.len() {
        return Err(format!("{} ideals, expected {}: {}", got.len(), want.len(), list(got)));
    }
    let mut used = vec![false; got.len()];
    for w in want {
        match (0..got.len()).find(|&k| !used[k] && got[k].equals(w)) {
            Some(k) => used[k] = true,
            None => return Err(format!("{w} missing from {}", list(got))),
        }
    }
    Ok(())
}

pub fn list(is: &[&Ideal]) -> String {
    is.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ∩ ")
}

pub fn partition(classes: impl IntoIterator<Item = impl IntoIterator<Item = Monomial>>) -> BTreeSet<BTreeSet<Monomial>> {
    classes.into_iter().map(|c| c.into_iter().collect()).collect()
}
