//! Problem files:
//!
//! ```text
//! # comment
//! ring x y z over QQ(zeta_3)
//! grading: [[1,1,1],[0,1,2]]
//! ideal: x^2 - y^2,
//!        x^2*y - x*y^2
//! ```
//!
//! The `ideal:` section runs to the end of the file; an empty section is
//! the zero ideal.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, Scalar};
use crate::poly::{Monomial, Polynomial, Ring};

#[derive(Debug, Clone)]
pub struct ProblemFile {
    pub ring: Ring,
    pub grading: Option<Vec<Vec<i64>>>,
    pub generators: Vec<Polynomial>,
}

impl ProblemFile {
    pub fn ideal(&self) -> crate::ideal::Ideal {
        crate::ideal::Ideal::new(&self.ring, self.generators.clone())
    }

    /// Rejects generators with more than two terms.
    pub fn require_binomial(&self) -> Result<()> {
        match self.generators.iter().find(|g| g.len() > 2) {
            Some(g) => Err(Error::Input(format!("generator {g} is not a binomial"))),
            None => Ok(()),
        }
    }

    /// Text that parses back to the same problem.
    pub fn to_text(&self) -> String {
        let mut out = format!("ring {} over {}\n", self.ring.vars().join(" "), self.ring.field().spec());
        if let Some(a) = &self.grading {
            let rows: Vec<String> =
                a.iter().map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))).collect();
            out.push_str(&format!("grading: [{}]\n", rows.join(",")));
        }
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        out.push_str(&format!("ideal: {}\n", gens.join(",\n       ")));
        out
    }
}

fn err(line: usize, col: usize, msg: impl std::fmt::Display) -> Error {
    Error::Input(format!("line {line}, column {col}: {msg}"))
}

pub fn parse_field(s: &str) -> std::result::Result<FieldSpec, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t == "QQ" {
        return Ok(FieldSpec::Rationals);
    }
    if let Some(p) = t.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')) {
        return p.parse().map(FieldSpec::PrimeField).map_err(|_| format!("bad prime in {s}"));
    }
    if let Some(n) = t.strip_prefix("QQ(zeta_").and_then(|r| r.strip_suffix(')')) {
        return n.parse().map(FieldSpec::Cyclotomic).map_err(|_| format!("bad order in {s}"));
    }
    Err(format!("unknown field {s}; expected QQ, GF(p) or QQ(zeta_N)"))
}

/// Parses a problem file. `field` overrides the declared field.
pub fn parse_problem(text: &str, field: Option<FieldSpec>) -> Result<ProblemFile> {
    let mut ring = None;
    let mut grading = None;
    let mut ideal: Option<(usize, usize, String)> = None;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("");
        if let Some((_, _, body)) = ideal.as_mut() {
            body.push('\n');
            body.push_str(content);
            continue;
        }
        let trimmed = content.trim_start();
        let indent = content.len() - trimmed.len();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix("ring ") {
            let (vars, fld) = match rest.find(" over ") {
                Some(p) => (&rest[..p], rest[p + 6..].trim()),
                None => return Err(err(line, indent + 1, "expected `ring <vars> over <field>`")),
            };
            let spec = parse_field(fld).map_err(|m| err(line, indent + rest.find(" over ").unwrap() + 12, m))?;
            let spec = field.clone().unwrap_or(spec);
            let names: Vec<String> = vars.split(|c: char| c.is_whitespace() || c == ',').filter(|v| !v.is_empty()).map(String::from).collect();
            for v in &names {
                if v == "zeta" || !is_ident(v) {
                    return Err(err(line, indent + 6, format!("invalid variable name `{v}`")));
                }
            }
            let f = Field::new(spec).map_err(|e| err(line, indent + 1, e))?;
            ring = Some(Ring::new(names, f));
        } else if let Some(rest) = trimmed.strip_prefix("grading:") {
            let col = indent + 9;
            grading = Some(parse_matrix(rest).map_err(|m| err(line, col, m))?);
        } else if let Some(rest) = trimmed.strip_prefix("ideal:") {
            ideal = Some((line, indent + 7, rest.to_string()));
        } else {
            return Err(err(line, indent + 1, format!("unexpected `{}`", trimmed.split_whitespace().next().unwrap_or(""))));
        }
    }
    let ring = ring.ok_or_else(|| err(1, 1, "missing `ring` declaration"))?;
    if let Some(a) = &grading {
        if a.iter().any(|r| r.len() != ring.nvars()) {
            return Err(Error::Input(format!("grading rows must have {} entries", ring.nvars())));
        }
    }
    let generators = match ideal {
        Some((line, col, body)) => parse_generators(&ring, &body, line, col)?,
        None => vec![],
    };
    Ok(ProblemFile { ring, grading, generators })
}

fn is_ident(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic() || c == '_') && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn parse_matrix(s: &str) -> std::result::Result<Vec<Vec<i64>>, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = t.strip_prefix('[').and_then(|r| r.strip_suffix(']')).ok_or("grading must look like [[..],[..]]")?;
    let mut rows = Vec::new();
    for part in inner.split("],") {
        let row = part.trim_start_matches('[').trim_end_matches(']');
        let vals = row.split(',').map(|x| x.parse::<i64>().map_err(|_| format!("bad integer `{x}` in grading"))).collect::<std::result::Result<Vec<_>, _>>()?;
        rows.push(vals);
    }
    Ok(rows)
}

/// Comma-separated polynomials; positions are reported relative to the
/// `ideal:` line.
pub fn parse_generators(ring: &Ring, body: &str, line: usize, col: usize) -> Result<Vec<Polynomial>> {
    let mut p = Parser { ring, chars: body.chars().collect(), pos: 0, line0: line, col0: col };
    let mut out = Vec::new();
    p.skip_ws();
    if p.at_end() {
        return Ok(out);
    }
    loop {
        let g = p.expr()?;
        if !g.is_zero() {
            out.push(g);
        }
        p.skip_ws();
        match p.peek() {
            None => break,
            Some(',') => p.pos += 1,
            Some(c) => return Err(p.error(format!("unexpected `{c}`"))),
        }
    }
    Ok(out)
}

/// Parses one polynomial in `ring`.
pub fn parse_polynomial(ring: &Ring, s: &str) -> Result<Polynomial> {
    let mut p = Parser { ring, chars: s.chars().collect(), pos: 0, line0: 1, col0: 1 };
    let g = p.expr()?;
    p.skip_ws();
    if let Some(c) = p.peek() {
        return Err(p.error(format!("unexpected `{c}`")));
    }
    Ok(g)
}

/// Parses a monomial such as `x*y^2` (or `1`).
pub fn parse_monomial(ring: &Ring, s: &str) -> Result<Monomial> {
    let p = parse_polynomial(ring, s)?;
    let term = p.terms().next().map(|(m, c)| (m.clone(), c.is_one()));
    match term {
        Some((m, true)) if p.len() == 1 => Ok(m),
        _ => Err(Error::Input(format!("`{s}` is not a monomial"))),
    }
}

/// Parses a field element (`-3/2`, `zeta^2 + 1`, ...).
pub fn parse_scalar(field: &Field, s: &str) -> Result<Scalar> {
    let ring = Ring::new(Vec::<String>::new(), field.clone());
    let p = parse_polynomial(&ring, s)?;
    let c = p.terms().next().map(|(_, c)| c.clone());
    Ok(c.unwrap_or_else(|| field.zero()))
}

struct Parser<'a> {
    ring: &'a Ring,
    chars: Vec<char>,
    pos: usize,
    line0: usize,
    col0: usize,
}

impl Parser<'_> {
    fn error(&self, msg: impl std::fmt::Display) -> Error {
        let before = &self.chars[..self.pos.min(self.chars.len())];
        let nl = before.iter().filter(|&&c| c == '\n').count();
        let col = match before.iter().rposition(|&c| c == '\n') {
            Some(p) => self.pos - p,
            None => self.col0 + self.pos,
        };
        err(self.line0 + nl, col, msg)
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        self.skip_ws();
        let mut acc = match self.peek() {
            Some('-') => {
                self.pos += 1;
                -&self.term()?
            }
            Some('+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            self.skip_ws();
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some('-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.power()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some('/') => {
                    self.pos += 1;
                    let start = self.pos;
                    let d = self.power()?;
                    let c = match d.terms().next() {
                        Some((m, c)) if d.len() == 1 && m.is_one() => c.clone(),
                        _ => {
                            self.pos = start;
                            return Err(self.error("can only divide by a nonzero constant"));
                        }
                    };
                    let inv = c.inv().map_err(|e| self.error(e))?;
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        self.skip_ws();
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                self.pos += 1;
            }
            let digits: String = self.chars[start..self.pos].iter().collect();
            let Ok(e) = digits.parse::<u32>() else {
                self.pos = start;
                return Err(self.error("expected a nonnegative exponent"));
            };
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(-&self.atom()?)
            }
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let digits: String = self.chars[start..self.pos].iter().collect();
                let v: BigInt = digits.parse().unwrap();
                let c = self.ring.field().from_rational(BigRational::from_integer(v)).map_err(|e| self.error(e))?;
                Ok(self.ring.constant(c))
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                if let Some(i) = self.ring.var_index(&name) {
                    return Ok(self.ring.var(i));
                }
                if name == "zeta" {
                    if let Some(z) = self.ring.field().zeta() {
                        return Ok(self.ring.constant(z));
                    }
                }
                self.pos = start;
                Err(self.error(format!("undeclared variable `{name}`")))
            }
            Some(c) => Err(self.error(format!("unexpected `{c}`"))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
