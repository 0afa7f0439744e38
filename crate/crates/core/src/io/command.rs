//! Command dispatch shared by the binary and the tests.

use std::fmt::Write;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::cellular::{cellular_data, cellular_decomposition};
use crate::error::{Error, Result};
use crate::grading::{check_positive_grading, is_homogeneous_in, toral_classify, GradingMatrix};
use crate::ideal::Ideal;
use crate::meso::{
    classified_witnesses, coprincipal_component, is_mesoprimary, mesoprimary_decomposition, MesoOptions, MesoprimaryCheck,
    SearchMode,
};
use crate::poly::Polynomial;
use crate::primdec::{
    associated_primes, component_from_primary, hull, is_toral_mesoprimary, meso_toral_part, primary_decomposition, toral_part,
    PrimaryOptions,
};
use crate::reduction::{restrict_ideal, witness_transfer_check, RestrictionContext};

use super::dot::emit_congruence_dot;
use super::parse::{parse_generators, parse_monomial, parse_scalar, ProblemFile};
use super::report::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Check,
    Cellular,
    Meso,
    Primary,
    Witnesses,
    Hull,
    ToralPart,
    MesoToralPart,
    Restrict,
    TransferCheck,
    Diagram,
}

impl Command {
    pub const ALL: [(&'static str, Command); 11] = [
        ("check", Command::Check),
        ("cellular", Command::Cellular),
        ("meso", Command::Meso),
        ("primary", Command::Primary),
        ("witnesses", Command::Witnesses),
        ("hull", Command::Hull),
        ("toral-part", Command::ToralPart),
        ("meso-toral-part", Command::MesoToralPart),
        ("restrict", Command::Restrict),
        ("transfer-check", Command::TransferCheck),
        ("diagram", Command::Diagram),
    ];

    pub fn name(self) -> &'static str {
        Command::ALL.iter().find(|(_, c)| *c == self).unwrap().0
    }
}

impl FromStr for Command {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Command, String> {
        Command::ALL.iter().find(|(n, _)| *n == s).map(|(_, c)| *c).ok_or_else(|| {
            let names: Vec<&str> = Command::ALL.iter().map(|(n, _)| *n).collect();
            format!("unknown command `{s}`; expected one of {}", names.join(", "))
        })
    }
}

#[derive(Debug, Clone, Default)]
pub struct Flags {
    pub bound: Option<i64>,
    /// Variable names or 1-based indices, comma-separated.
    pub sigma: Option<String>,
    pub witness_monomial: Option<String>,
    pub nu: Option<String>,
    /// Contents of a components file (`component:` sections).
    pub components: Option<String>,
}

#[derive(Debug, Clone)]
pub struct CommandOutput {
    pub text: String,
    pub json: Value,
    pub dot: Option<String>,
}

pub fn parse_sigma(p: &ProblemFile, s: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let idx = match p.ring.var_index(tok) {
            Some(i) => i,
            None => match tok.parse::<usize>() {
                Ok(k) if k >= 1 && k <= p.ring.nvars() => k - 1,
                _ => return Err(Error::Input(format!("`{tok}` is neither a variable nor an index in 1..={}", p.ring.nvars()))),
            },
        };
        out.push(idx);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// `component:` sections, each a comma-separated list of generators.
pub fn parse_components(p: &ProblemFile, text: &str) -> Result<Vec<Ideal>> {
    let mut sections: Vec<(usize, usize, String)> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim_start();
        if let Some(rest) = trimmed.strip_prefix("component:") {
            sections.push((k + 1, content.len() - trimmed.len() + 11, rest.to_string()));
        } else if let Some(last) = sections.last_mut() {
            last.2.push('\n');
            last.2.push_str(content);
        } else if !trimmed.is_empty() {
            return Err(Error::Input(format!("line {}, column 1: expected `component:`", k + 1)));
        }
    }
    sections.into_iter().map(|(line, col, body)| Ok(Ideal::new(&p.ring, parse_generators(&p.ring, &body, line, col)?))).collect()
}

fn names(p: &ProblemFile, vars: &[usize]) -> String {
    let v: Vec<&str> = vars.iter().map(|&i| p.ring.vars()[i].as_str()).collect();
    format!("{{{}}}", v.join(", "))
}

fn positive(p: &ProblemFile) -> Option<std::result::Result<GradingMatrix, Error>> {
    p.grading.as_ref().map(|a| check_positive_grading(a))
}

fn meso_options(p: &ProblemFile, flags: &Flags) -> Result<MesoOptions> {
    let mode = match positive(p) {
        Some(Ok(g)) => Some(SearchMode::Graded(g)),
        _ => None,
    };
    let sigmas = match &flags.sigma {
        Some(s) => Some(vec![parse_sigma(p, s)?]),
        None => None,
    };
    Ok(MesoOptions { mode, bound: flags.bound, sigmas })
}

fn require_grading(p: &ProblemFile) -> Result<&[Vec<i64>]> {
    p.grading.as_deref().ok_or_else(|| Error::Input("this command needs a `grading:` line".into()))
}

fn binomial_input(p: &ProblemFile) -> Result<Ideal> {
    p.require_binomial()?;
    let i = p.ideal();
    if i.is_unit() {
        return Err(Error::UnitIdeal("decomposition"));
    }
    Ok(i)
}

pub fn run_command(cmd: Command, p: &ProblemFile, flags: &Flags) -> Result<CommandOutput> {
    let mut text = String::new();
    let mut dot = None;
    let result = match cmd {
        Command::Check => check(p, &mut text)?,
        Command::Cellular => {
            let i = binomial_input(p)?;
            let leaves = cellular_decomposition(&i)?;
            let mut comps = Vec::new();
            for (k, l) in leaves.iter().enumerate() {
                writeln!(text, "component {}: {}\n  sigma: {}", k + 1, ideal_text(&l.ideal), names(p, &l.data.sigma)).unwrap();
                comps.push(json!({ "ideal": ideal_json(&l.ideal), "sigma": l.data.sigma.iter().map(|&v| p.ring.vars()[v].clone()).collect::<Vec<_>>() }));
            }
            json!({ "components": comps })
        }
        Command::Meso => {
            let i = binomial_input(p)?;
            let d = mesoprimary_decomposition(&i, &meso_options(p, flags)?)?;
            let flags_toral = match &p.grading {
                Some(a) => Some(d.components.iter().map(|c| is_toral_mesoprimary(&c.ideal, &c.sigma, a)).collect::<Result<Vec<_>>>()?),
                None => None,
            };
            for (k, c) in d.components.iter().enumerate() {
                let ws: Vec<String> = c.witnesses.iter().map(|w| fmt_mono(p, &w.w)).collect();
                writeln!(text, "component {}: {}", k + 1, ideal_text(&c.ideal)).unwrap();
                writeln!(text, "  sigma: {}\n  witnesses: {}\n  mesoprime: {}", names(p, &c.sigma), ws.join(", "), ideal_text(&c.mesoprime)).unwrap();
                if let Some(f) = &flags_toral {
                    writeln!(text, "  {}", if f[k] { "toral" } else { "Andean" }).unwrap();
                }
            }
            let merged = d.merged();
            if merged.len() < d.components.len() {
                writeln!(text, "merged:").unwrap();
                for c in &merged {
                    writeln!(text, "  {}", ideal_text(&c.ideal)).unwrap();
                }
            }
            meso_json(&d, flags_toral.as_deref())
        }
        Command::Primary | Command::Hull => {
            let i = binomial_input(p)?;
            let opts = PrimaryOptions { meso: meso_options(p, flags)?, matrix: p.grading.clone() };
            let d = primary_decomposition(&i, &opts)?;
            if cmd == Command::Primary {
                for (k, c) in d.components.iter().enumerate() {
                    writeln!(text, "component {}: {}", k + 1, ideal_text(&c.ideal)).unwrap();
                    write!(text, "  prime: {} ({})", ideal_text(&c.prime), if c.minimal { "minimal" } else { "embedded" }).unwrap();
                    match c.toral {
                        Some(t) => writeln!(text, " {}", if t { "toral" } else { "Andean" }).unwrap(),
                        None => writeln!(text).unwrap(),
                    }
                }
                json!({
                    "components": d.components.iter().map(primary_component_json).collect::<Vec<_>>(),
                    "verification": { "intersection_equals_input": true },
                })
            } else {
                let h = hull(&d);
                write_intersection(&mut text, "hull", &h);
                intersection_json(&h)
            }
        }
        Command::Witnesses => {
            let i = binomial_input(p)?;
            let sigma = match &flags.sigma {
                Some(s) => parse_sigma(p, s)?,
                None => match cellular_data(&i)? {
                    Ok(c) => c.sigma,
                    Err(_) => return Err(Error::Input("the ideal is not cellular; pass --sigma".into())),
                },
            };
            let mode = crate::meso::resolve_mode(&i, meso_options(p, flags)?.mode)?;
            let ws = classified_witnesses(&i, &sigma, &mode, flags.bound)?;
            writeln!(text, "sigma: {}", names(p, &sigma)).unwrap();
            for w in &ws {
                let class: Vec<String> = w.class.iter().map(|m| fmt_mono(p, m)).collect();
                writeln!(text, "witness {}{}", class.join(" ~ "), if w.is_essential() { " (essential)" } else { "" }).unwrap();
            }
            let mut out = json!({ "sigma": sigma.iter().map(|&v| p.ring.vars()[v].clone()).collect::<Vec<_>>(), "witnesses": ws.iter().map(|w| witness_json(&i, w)).collect::<Vec<_>>() });
            if let Some(m) = &flags.witness_monomial {
                let m = parse_monomial(&p.ring, m)?;
                let c = coprincipal_component(&i, &sigma, &m)?;
                writeln!(text, "coprincipal component at {}: {}", fmt_mono(p, &m), ideal_text(&c.ideal)).unwrap();
                out["coprincipal"] = meso_component_json(&c);
            }
            out
        }
        Command::ToralPart => {
            let a = require_grading(p)?;
            let comps = match &flags.components {
                Some(t) => {
                    let ideals = parse_components(p, t)?;
                    let mut comps = ideals.iter().map(component_from_primary).collect::<Result<Vec<_>>>()?;
                    associated_primes(&mut comps);
                    comps
                }
                None => {
                    let i = binomial_input(p)?;
                    let opts = PrimaryOptions { meso: meso_options(p, flags)?, matrix: Some(a.to_vec()) };
                    primary_decomposition(&i, &opts)?.components
                }
            };
            let r = toral_part(&p.ring, &comps, a);
            let toral = comps.iter().filter(|c| c.toral.unwrap_or_else(|| crate::primdec::is_toral_prime(&c.character, &c.sigma, a))).count();
            writeln!(text, "toral components: {toral} of {}", comps.len()).unwrap();
            write_intersection(&mut text, "toral part", &r);
            let mut out = intersection_json(&r);
            if flags.components.is_some() && !p.generators.is_empty() {
                let eq = Ideal::intersect_all(&p.ring, comps.iter().map(|c| &c.ideal)).equals(&p.ideal());
                writeln!(text, "components intersect to the input: {eq}").unwrap();
                out["intersection_equals_input"] = json!(eq);
            }
            out
        }
        Command::MesoToralPart => {
            let a = require_grading(p)?;
            let i = binomial_input(p)?;
            let d = mesoprimary_decomposition(&i, &meso_options(p, flags)?)?;
            let r = meso_toral_part(&d, a)?;
            write_intersection(&mut text, "mesoprimary toral part", &r);
            intersection_json(&r)
        }
        Command::Restrict => {
            let i = p.ideal();
            let ctx = context(p, &i, flags)?;
            let ibar = restrict_ideal(&i, &ctx);
            writeln!(text, "restricted: {}", ideal_text(&ibar)).unwrap();
            json!({ "vars": ctx.ring.vars(), "restricted": ideal_json(&ibar) })
        }
        Command::TransferCheck => {
            let i = binomial_input(p)?;
            let ctx = context(p, &i, flags)?;
            let r = witness_transfer_check(&i, &ctx, flags.bound)?;
            let show = |s: &std::collections::BTreeSet<crate::poly::Monomial>| -> Vec<String> {
                s.iter().map(|m| {
                    let t = ctx.ring.fmt_monomial(m);
                    if t.is_empty() { "1".to_string() } else { t }
                }).collect()
            };
            writeln!(text, "witnesses of I: {:?}\nweak witnesses of the restriction: {:?}", show(&r.witnesses), show(&r.weak_witnesses)).unwrap();
            writeln!(text, "essential: {:?} vs {:?}\nagree: {}", show(&r.essential), show(&r.weak_essential), r.agrees()).unwrap();
            json!({
                "restricted": ideal_json(&r.restricted),
                "witnesses": show(&r.witnesses),
                "weak_witnesses": show(&r.weak_witnesses),
                "essential": show(&r.essential),
                "weak_essential": show(&r.weak_essential),
                "agree": r.agrees(),
            })
        }
        Command::Diagram => {
            let bound = u32::try_from(flags.bound.unwrap_or(4)).map_err(|_| Error::Input("diagram bound must be nonnegative".into()))?;
            let d = emit_congruence_dot(&p.ideal(), bound);
            text.push_str(&d);
            dot = Some(d.clone());
            json!({ "bound": bound, "dot": d })
        }
    };
    Ok(CommandOutput { text, json: envelope(cmd.name(), p, result), dot })
}

fn fmt_mono(p: &ProblemFile, m: &crate::poly::Monomial) -> String {
    let s = p.ring.fmt_monomial(m);
    if s.is_empty() {
        "1".into()
    } else {
        s
    }
}

fn write_intersection(text: &mut String, what: &str, r: &crate::primdec::IntersectionReport) {
    writeln!(text, "{what}: {}", ideal_text(&r.ideal)).unwrap();
    writeln!(text, "binomial: {}", r.binomial).unwrap();
    if let Some(w) = &r.witness {
        writeln!(text, "non-binomial basis element: {w}").unwrap();
    }
}

fn context(p: &ProblemFile, i: &Ideal, flags: &Flags) -> Result<RestrictionContext> {
    let sigma = parse_sigma(p, flags.sigma.as_deref().ok_or_else(|| Error::Input("--sigma is required".into()))?)?;
    match &flags.nu {
        Some(nu) => {
            let vals = nu.split(',').map(|v| parse_scalar(p.ring.field(), v.trim())).collect::<Result<Vec<_>>>()?;
            RestrictionContext::new(i, &sigma, vals, p.grading.clone())
        }
        None => RestrictionContext::ones(i, &sigma, p.grading.clone()),
    }
}

fn check(p: &ProblemFile, text: &mut String) -> Result<Value> {
    let i = p.ideal();
    let binomial = p.generators.iter().all(|g: &Polynomial| g.len() <= 2) || i.is_binomial();
    writeln!(text, "binomial: {binomial}").unwrap();
    let std_rows = vec![vec![1; p.ring.nvars()]];
    let rows = p.grading.as_deref().unwrap_or(&std_rows);
    let homogeneous = p.generators.iter().all(|g| g.is_homogeneous(rows));
    writeln!(text, "homogeneous{}: {homogeneous}", if p.grading.is_some() { "" } else { " (standard grading)" }).unwrap();
    let mut out = json!({ "binomial": binomial, "homogeneous": homogeneous });
    let pos = positive(p);
    if let Some(pos) = &pos {
        let msg = match pos {
            Ok(_) => "true".to_string(),
            Err(e) => format!("false ({e})"),
        };
        writeln!(text, "positive grading: {msg}").unwrap();
        out["positive"] = json!(pos.is_ok());
    }
    if !binomial || i.is_unit() {
        return Ok(out);
    }
    match cellular_data(&i)? {
        Err(v) => {
            writeln!(text, "cellular: false ({} is neither nilpotent nor a nonzerodivisor)", p.ring.vars()[v]).unwrap();
            out["cellular"] = json!(false);
        }
        Ok(c) => {
            writeln!(text, "cellular: true, sigma = {}", names(p, &c.sigma)).unwrap();
            out["cellular"] = json!(true);
            out["sigma"] = json!(c.sigma.iter().map(|&v| p.ring.vars()[v].clone()).collect::<Vec<_>>());
            let m = is_mesoprimary(&i)?;
            writeln!(text, "mesoprimary: {}", m.holds()).unwrap();
            out["mesoprimary"] = json!(m.holds());
            if let (MesoprimaryCheck::Mesoprimary { .. }, Some(Ok(g))) = (&m, &pos) {
                if is_homogeneous_in(&i, g.rows()) {
                    let t = toral_classify(&i, g)?;
                    writeln!(text, "{}", if t.toral { "toral" } else { "Andean" }).unwrap();
                    out["toral"] = json!(t.toral);
                }
            }
        }
    }
    Ok(out)
}
