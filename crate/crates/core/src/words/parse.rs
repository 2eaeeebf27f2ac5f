//! Text form of one-variable group words.
//!
//! ```text
//! word = term { WS term }
//! term = NAME | "x" [ "^" SIGNED_INT ]
//! ```

use std::fmt;

use crate::error::{Error, Result};

/// Largest exponent magnitude accepted by the parser.
pub const MAX_EXPONENT: i64 = i32::MAX as i64;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Term {
    /// A coefficient looked up in the element store.
    Name(String),
    /// `x^k`; `x` alone is `x^1`.
    Var(i64),
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Name(name) => f.write_str(name),
            Term::Var(1) => f.write_str("x"),
            Term::Var(k) => write!(f, "x^{k}"),
        }
    }
}

pub fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && name != "x"
}

pub fn print_terms(terms: &[Term]) -> String {
    terms.iter().map(Term::to_string).collect::<Vec<_>>().join(" ")
}

pub fn parse_terms(text: &str) -> Result<Vec<Term>> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut terms = Vec::new();
    loop {
        let start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if pos == bytes.len() {
            break;
        }
        if !terms.is_empty() && pos == start {
            return Err(Error::parse(pos, "terms must be separated by whitespace"));
        }
        let (term, next) = parse_term(bytes, pos)?;
        terms.push(term);
        pos = next;
    }
    if terms.is_empty() {
        return Err(Error::parse(0, "empty word"));
    }
    Ok(terms)
}

fn parse_term(bytes: &[u8], start: usize) -> Result<(Term, usize)> {
    let first = bytes[start];
    if !(first.is_ascii_alphabetic() || first == b'_') {
        return Err(Error::parse(start, format!("unexpected character {:?}", char::from(first))));
    }
    let mut pos = start + 1;
    while pos < bytes.len() && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == b'_') {
        pos += 1;
    }
    // the slice is ASCII by construction
    let name = std::str::from_utf8(&bytes[start..pos]).expect("ascii identifier");
    let caret = pos < bytes.len() && bytes[pos] == b'^';
    if name != "x" {
        if caret {
            return Err(Error::parse(pos, format!("only x takes an exponent, not {name:?}")));
        }
        return Ok((Term::Name(name.to_string()), pos));
    }
    if !caret {
        return Ok((Term::Var(1), pos));
    }
    pos += 1;
    let digits_start = pos;
    if pos < bytes.len() && (bytes[pos] == b'-' || bytes[pos] == b'+') {
        pos += 1;
    }
    let num_start = pos;
    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
        pos += 1;
    }
    if pos == num_start {
        return Err(Error::parse(pos, "malformed exponent"));
    }
    let literal = std::str::from_utf8(&bytes[digits_start..pos]).expect("ascii digits");
    let k: i64 = literal
        .parse()
        .ok()
        .filter(|k: &i64| k.abs() <= MAX_EXPONENT)
        .ok_or_else(|| Error::parse(digits_start, format!("exponent {literal} exceeds 2^31 - 1 in magnitude")))?;
    Ok((Term::Var(k), pos))
}
