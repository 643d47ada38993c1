//! Line-oriented network and rate file formats.
//!
//! Network files:
//!
//! ```text
//! # comment
//! species: S0, S1, E        (optional, pins species order)
//! S0 + E <-> ES0 ; kon0, koff0
//! ES0 -> S1 + E ; kcat0
//! E -> 0 ; kdeg          (`0` is the zero complex)
//! ```
//!
//! Rate files hold one `name = value` per line; values are positive integers,
//! fractions `p/q` or decimals.

use std::collections::HashMap;
use std::fmt;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::linalg::{Integer, Rational};
use crate::network::{NetworkError, RateAssignment, Reaction, ReactionNetwork};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TextError {
    #[error(transparent)]
    Syntax(#[from] ParseError),
    #[error("invalid network: {0}")]
    Network(#[from] NetworkError),
}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        column,
        message: message.into(),
    }
}

/// Byte cursor over one line; columns are 1-based character positions.
struct Cursor<'a> {
    text: &'a str,
    pos: usize,
    line: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str, line: usize) -> Self {
        Self { text, pos: 0, line }
    }

    fn column(&self) -> usize {
        self.text[..self.pos].chars().count() + 1
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        err(self.line, self.column(), message)
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.rest().is_empty()
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> &'a str {
        let start = self.pos;
        let len: usize = self.rest().chars().take_while(|&c| pred(c)).map(char::len_utf8).sum();
        self.pos += len;
        &self.text[start..self.pos]
    }

    fn identifier(&mut self, what: &str) -> Result<&'a str, ParseError> {
        self.skip_ws();
        match self.rest().chars().next() {
            Some(c) if c.is_alphabetic() || c == '_' => {
                Ok(self.take_while(|c| c.is_alphanumeric() || c == '_'))
            }
            Some(c) => Err(self.error(format!("expected {what}, found {c:?}"))),
            None => Err(self.error(format!("expected {what}, found end of line"))),
        }
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

type Terms = Vec<(String, u32)>;

fn parse_complex(cur: &mut Cursor<'_>) -> Result<Terms, ParseError> {
    let mut terms = Vec::new();
    cur.skip_ws();
    // A lone `0` is the zero complex.
    let rest = cur.rest();
    if rest.starts_with('0')
        && !rest[1..].starts_with(|c: char| c.is_alphanumeric() || c == '_' || c == '.' || c == '/')
    {
        cur.eat("0");
        return Ok(terms);
    }
    loop {
        cur.skip_ws();
        let col = cur.column();
        let rest = cur.rest();
        let coeff = if rest.starts_with('-') {
            return Err(cur.error("stoichiometric coefficient must be a non-negative integer"));
        } else if rest.starts_with(|c: char| c.is_ascii_digit()) {
            let digits = cur.take_while(|c| c.is_ascii_digit());
            if cur.rest().starts_with(['.', '/']) {
                return Err(cur.error("stoichiometric coefficient must be an integer"));
            }
            let v: u32 = digits
                .parse()
                .map_err(|_| err(cur.line, col, "stoichiometric coefficient is too large"))?;
            if v == 0 {
                return Err(err(cur.line, col, "stoichiometric coefficient must be positive"));
            }
            v
        } else {
            1
        };
        let name = cur.identifier("species name")?;
        terms.push((name.to_string(), coeff));
        if !cur.eat("+") {
            return Ok(terms);
        }
    }
}

fn parse_rate_list(cur: &mut Cursor<'_>, expected: usize) -> Result<Vec<String>, ParseError> {
    let mut names = vec![cur.identifier("rate constant name")?.to_string()];
    while cur.eat(",") {
        names.push(cur.identifier("rate constant name")?.to_string());
    }
    if !cur.at_end() {
        return Err(cur.error("unexpected text after rate constants"));
    }
    if names.len() != expected {
        return Err(cur.error(format!(
            "expected {expected} rate constant name{} for this arrow, found {}",
            if expected == 1 { "" } else { "s" },
            names.len()
        )));
    }
    Ok(names)
}

struct RawReaction {
    educt: Terms,
    product: Terms,
    rate: String,
    line: usize,
}

/// Parses a network description. Complexes and species are numbered in order
/// of first appearance unless a `species:` header fixes the species order;
/// `<->` expands to the forward reaction followed by the backward one.
pub fn parse_network(text: &str) -> Result<ReactionNetwork, TextError> {
    let mut header: Option<(Vec<String>, usize)> = None;
    let mut raw: Vec<RawReaction> = Vec::new();
    let mut rate_lines: HashMap<String, usize> = HashMap::new();

    for (idx, full) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = strip_comment(full);
        if line.trim().is_empty() {
            continue;
        }
        let mut cur = Cursor::new(line, line_no);
        cur.skip_ws();
        if cur.rest().starts_with("species") && cur.rest()["species".len()..].trim_start().starts_with(':') {
            if header.is_some() {
                return Err(cur.error("duplicate species header").into());
            }
            if !raw.is_empty() {
                return Err(cur.error("species header must precede all reactions").into());
            }
            cur.eat("species");
            cur.eat(":");
            let mut list = vec![cur.identifier("species name")?.to_string()];
            while cur.eat(",") {
                list.push(cur.identifier("species name")?.to_string());
            }
            if !cur.at_end() {
                return Err(cur.error("unexpected text in species header").into());
            }
            header = Some((list, line_no));
            continue;
        }
        let educt = parse_complex(&mut cur)?;
        cur.skip_ws();
        let reversible = if cur.eat("<->") {
            true
        } else if cur.eat("->") {
            false
        } else {
            return Err(cur.error("expected '->' or '<->'").into());
        };
        let product = parse_complex(&mut cur)?;
        if !cur.eat(";") {
            return Err(cur.error("expected ';' before rate constants").into());
        }
        let col = {
            cur.skip_ws();
            cur.column()
        };
        let names = parse_rate_list(&mut cur, if reversible { 2 } else { 1 })?;
        for n in &names {
            if let Some(prev) = rate_lines.insert(n.clone(), line_no) {
                return Err(err(
                    line_no,
                    col,
                    format!("duplicate rate constant name {n:?} (first used on line {prev})"),
                )
                .into());
            }
        }
        let mut names = names.into_iter();
        raw.push(RawReaction {
            educt: educt.clone(),
            product: product.clone(),
            rate: names.next().expect("one name"),
            line: line_no,
        });
        if reversible {
            raw.push(RawReaction {
                educt: product,
                product: educt,
                rate: names.next().expect("two names"),
                line: line_no,
            });
        }
    }

    let mut species: Vec<String> = Vec::new();
    let pinned = header.is_some();
    if let Some((list, line_no)) = &header {
        for (i, name) in list.iter().enumerate() {
            if list[..i].contains(name) {
                return Err(err(*line_no, 1, format!("species {name:?} listed twice")).into());
            }
        }
        species = list.clone();
    }
    let mut index: HashMap<String, usize> =
        species.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
    for r in &raw {
        for (name, _) in r.educt.iter().chain(&r.product) {
            if !index.contains_key(name) {
                if pinned {
                    return Err(err(r.line, 1, format!("species {name:?} is not in the species header")).into());
                }
                index.insert(name.clone(), species.len());
                species.push(name.clone());
            }
        }
    }
    let s = species.len();
    let to_vec = |terms: &Terms| {
        let mut v = vec![0u32; s];
        for (name, c) in terms {
            v[index[name]] += c;
        }
        v
    };
    let mut complexes: Vec<Vec<u32>> = Vec::new();
    let mut complex_index: HashMap<Vec<u32>, usize> = HashMap::new();
    let mut intern = |v: Vec<u32>| -> usize {
        *complex_index.entry(v.clone()).or_insert_with(|| {
            complexes.push(v);
            complexes.len() - 1
        })
    };
    let mut reactions = Vec::with_capacity(raw.len());
    for r in &raw {
        let a = intern(to_vec(&r.educt));
        let b = intern(to_vec(&r.product));
        if a == b {
            return Err(err(r.line, 1, "educt and product complexes are identical").into());
        }
        reactions.push(Reaction::new(a, b, r.rate.clone()));
    }
    Ok(ReactionNetwork::new(species, complexes, reactions)?)
}

/// Exact value of an unsigned literal: integer, `p/q` or decimal.
pub fn parse_rational_literal(text: &str) -> Option<Rational> {
    let text = text.trim();
    if let Some((p, q)) = text.split_once('/') {
        let (p, q) = (p.trim(), q.trim());
        if !is_signed_digits(p) || !is_digits(q) {
            return None;
        }
        let q: Integer = q.parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(Rational::new(p.parse().ok()?, q));
    }
    let (sign, body) = match text.strip_prefix('-') {
        Some(b) => (-1, b),
        None => (1, text),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((a, b)) => (a, b),
        None => (body, ""),
    };
    if (int_part.is_empty() && frac_part.is_empty())
        || !(int_part.is_empty() || is_digits(int_part))
        || !(frac_part.is_empty() || is_digits(frac_part))
    {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: Integer = digits.parse().ok()?;
    let denom = num_traits::pow(Integer::from(10), frac_part.len());
    Some(Rational::new(numer * sign, denom))
}

fn is_digits(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_digit())
}

fn is_signed_digits(s: &str) -> bool {
    is_digits(s.strip_prefix('-').unwrap_or(s))
}

pub fn parse_rates(text: &str) -> Result<RateAssignment, ParseError> {
    let mut rates = RateAssignment::new();
    let mut seen: HashMap<String, usize> = HashMap::new();
    for (idx, full) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = strip_comment(full);
        if line.trim().is_empty() {
            continue;
        }
        let mut cur = Cursor::new(line, line_no);
        let name = cur.identifier("rate constant name")?.to_string();
        if !cur.eat("=") {
            return Err(cur.error("expected '='"));
        }
        cur.skip_ws();
        let col = cur.column();
        let literal = cur.rest().trim();
        let value = parse_rational_literal(literal)
            .ok_or_else(|| err(line_no, col, format!("cannot read {literal:?} as a rational number")))?;
        if !value.is_positive() {
            return Err(err(line_no, col, "rate must be positive"));
        }
        if let Some(prev) = seen.insert(name.clone(), line_no) {
            return Err(err(line_no, 1, format!("rate {name:?} already set on line {prev}")));
        }
        rates
            .insert(name, value)
            .expect("positivity checked above");
    }
    Ok(rates)
}

/// Writes a network in the input format. Consecutive reactions that are
/// reverses of each other are joined with `<->`, so parsing the output
/// reproduces the same numbering.
pub fn render_network(net: &ReactionNetwork) -> String {
    let mut out = String::new();
    out.push_str("species: ");
    out.push_str(&net.species().join(", "));
    out.push('\n');
    let rs = net.reactions();
    let mut i = 0;
    while i < rs.len() {
        let r = &rs[i];
        let lhs = net.complex_label(r.educt);
        let rhs = net.complex_label(r.product);
        match rs.get(i + 1) {
            Some(b) if b.educt == r.product && b.product == r.educt => {
                out.push_str(&format!("{lhs} <-> {rhs} ; {}, {}\n", r.rate, b.rate));
                i += 2;
            }
            _ => {
                out.push_str(&format!("{lhs} -> {rhs} ; {}\n", r.rate));
                i += 1;
            }
        }
    }
    out
}

pub fn render_rates(rates: &RateAssignment) -> String {
    rates.iter().map(|(k, v)| format!("{k} = {v}\n")).collect()
}
