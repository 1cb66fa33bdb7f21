//! Text syntax for homogeneous forms and multivectors.
//!
//! ```text
//! expr     := term (('+'|'-') term)*
//! term     := [rational '*'?] blade | rational
//! blade    := 'e' digit+ | 'e{' int (',' int)* '}'
//! rational := int ['/' posint]
//! ```
//!
//! Whitespace is ignored between tokens and a leading sign is allowed. The
//! compact blade form `e123` reads one index per digit.

use std::fmt;

use crate::blade::Blade;
use crate::error::{Error, Result};
use crate::exterior::{Alternating, Variance};
use crate::scalar::Scalar;

/// How blades are written back out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BladeStyle {
    /// `e123` when every index is a single digit, otherwise braced.
    #[default]
    Compact,
    /// Always `e{1,2,3}`.
    Braced,
}

/// Result of parsing before the ambient dimension is applied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedExpr {
    /// Terms in input order; a `None` blade is a bare scalar term.
    pub terms: Vec<(Option<Blade>, Scalar)>,
    /// Whether any blade used the braced notation.
    pub braced: bool,
}

impl ParsedExpr {
    pub fn style(&self) -> BladeStyle {
        if self.braced {
            BladeStyle::Braced
        } else {
            BladeStyle::Compact
        }
    }

    /// Grade of the blade terms, `Some(0)` for nonzero bare scalars, `None`
    /// if the expression only contains zero scalars.
    pub fn grade(&self) -> Result<Option<usize>> {
        let mut grade = None;
        for (b, c) in &self.terms {
            let g = match b {
                Some(b) => b.grade(),
                None if c.is_zero() => continue,
                None => 0,
            };
            match grade {
                None => grade = Some(g),
                Some(h) if h != g => return Err(Error::GradeMismatch { expected: h, found: g }),
                _ => {}
            }
        }
        Ok(grade)
    }

    /// Largest index used by any blade.
    pub fn max_index(&self) -> usize {
        self.terms.iter().filter_map(|(b, _)| b.map(Blade::max_index)).max().unwrap_or(0)
    }

    /// Builds the element on an `n`-dimensional space. `k` is required only
    /// when the expression does not determine the grade (zero).
    pub fn build<V: Variance>(&self, n: usize, k: Option<usize>) -> Result<Alternating<V>> {
        let grade = match (self.grade()?, k) {
            (Some(g), Some(k)) if g != k => return Err(Error::GradeMismatch { expected: k, found: g }),
            (Some(g), _) => g,
            (None, Some(k)) => k,
            (None, None) => {
                return Err(Error::Parse { pos: 0, msg: "grade of the zero element is ambiguous; pass k".into() })
            }
        };
        let max = self.max_index();
        if max > n {
            return Err(Error::IndexOutOfRange { index: max, n });
        }
        let terms = self
            .terms
            .iter()
            .filter(|(b, c)| b.is_some() || !c.is_zero())
            .map(|(b, c)| (b.unwrap_or(Blade::EMPTY), c.clone()));
        Alternating::from_terms(n, grade, terms)
    }
}

/// Parses to an intermediate term list.
pub fn parse_expr(text: &str) -> Result<ParsedExpr> {
    Parser { src: text.as_bytes(), pos: 0, braced: false }.expr()
}

/// Parses a form or multivector of dimension `n`.
pub fn parse<V: Variance>(text: &str, n: usize, k: Option<usize>) -> Result<Alternating<V>> {
    parse_expr(text)?.build(n, k)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    braced: bool,
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos + 1, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(mut self) -> Result<ParsedExpr> {
        let mut terms = Vec::new();
        let mut negative = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        loop {
            let (blade, c) = self.term()?;
            terms.push((blade, if negative { -c } else { c }));
            match self.peek() {
                None => break,
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                Some(_) => return self.err("expected '+' or '-'"),
            }
            self.pos += 1;
        }
        Ok(ParsedExpr { terms, braced: self.braced })
    }

    fn term(&mut self) -> Result<(Option<Blade>, Scalar)> {
        match self.peek() {
            Some(b'e') => Ok((Some(self.blade()?), Scalar::one())),
            Some(c) if c.is_ascii_digit() => {
                let c = self.rational()?;
                if self.eat(b'*') {
                    if self.peek() != Some(b'e') {
                        return self.err("expected blade after '*'");
                    }
                    return Ok((Some(self.blade()?), c));
                }
                if self.peek() == Some(b'e') {
                    return Ok((Some(self.blade()?), c));
                }
                Ok((None, c))
            }
            Some(_) => self.err("expected a coefficient or blade"),
            None => self.err("unexpected end of input"),
        }
    }

    fn uint(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        s.parse().or_else(|_| {
            self.pos = start;
            self.err("integer too large")
        })
    }

    fn rational(&mut self) -> Result<Scalar> {
        let start = self.pos;
        let num = self.uint()?;
        let den = if self.eat(b'/') { self.uint()? } else { 1 };
        if den == 0 {
            self.pos = start;
            return self.err("zero denominator");
        }
        if num > i64::MAX as u64 || den > i64::MAX as u64 {
            self.pos = start;
            return self.err("integer too large");
        }
        Ok(Scalar::new(num as i64, den as i64))
    }

    fn blade(&mut self) -> Result<Blade> {
        self.skip_ws();
        let start = self.pos;
        self.pos += 1; // 'e'
        let mut indices = Vec::new();
        if self.src.get(self.pos) == Some(&b'{') {
            self.pos += 1;
            self.braced = true;
            loop {
                let at = self.pos;
                let i = self.uint()?;
                if i == 0 || i > crate::blade::MAX_DIM as u64 {
                    self.pos = at;
                    return self.err(format!("index {i} out of range"));
                }
                indices.push((i as usize, at));
                if self.eat(b'}') {
                    break;
                }
                if !self.eat(b',') {
                    return self.err("expected ',' or '}'");
                }
            }
        } else {
            while let Some(&d) = self.src.get(self.pos) {
                if !d.is_ascii_digit() {
                    break;
                }
                if d == b'0' {
                    return self.err("index 0 out of range");
                }
                indices.push(((d - b'0') as usize, self.pos));
                self.pos += 1;
            }
            if indices.is_empty() {
                self.pos = start + 1;
                return self.err("expected blade indices after 'e'");
            }
        }
        for w in indices.windows(2) {
            let (prev, _) = w[0];
            let (cur, at) = w[1];
            if cur == prev || indices.iter().take_while(|(_, p)| *p < at).any(|(i, _)| *i == cur) {
                return Err(Error::DuplicateIndex { index: cur });
            }
            if cur < prev {
                self.pos = at;
                return self.err("blade indices must be strictly increasing");
            }
        }
        let plain: Vec<usize> = indices.iter().map(|(i, _)| *i).collect();
        Blade::from_sorted(&plain)
    }
}

fn write_blade(f: &mut impl fmt::Write, b: Blade, style: BladeStyle) -> fmt::Result {
    if style == BladeStyle::Compact && b.max_index() <= 9 {
        write!(f, "e")?;
        for i in b.indices() {
            write!(f, "{i}")?;
        }
        return Ok(());
    }
    write!(f, "e{{")?;
    for (j, i) in b.indices().enumerate() {
        if j > 0 {
            write!(f, ",")?;
        }
        write!(f, "{i}")?;
    }
    write!(f, "}}")
}

/// Canonical text for an element: lexicographic blade order, unit
/// coefficients omitted, `0` for the zero element.
pub fn format_with<V: Variance>(x: &Alternating<V>, style: BladeStyle) -> String {
    let mut out = String::new();
    write_terms(&mut out, x, style).expect("writing to a String");
    out
}

fn write_terms<V: Variance>(f: &mut impl fmt::Write, x: &Alternating<V>, style: BladeStyle) -> fmt::Result {
    if x.is_zero() {
        return write!(f, "0");
    }
    for (j, (b, c)) in x.terms().enumerate() {
        let neg = c.is_negative();
        match (j, neg) {
            (0, true) => write!(f, "-")?,
            (0, false) => {}
            (_, true) => write!(f, " - ")?,
            (_, false) => write!(f, " + ")?,
        }
        let a = c.abs();
        if b == Blade::EMPTY {
            write!(f, "{a}")?;
            continue;
        }
        if !a.is_one() {
            write!(f, "{a}*")?;
        }
        write_blade(f, b, style)?;
    }
    Ok(())
}

impl<V: Variance> fmt::Display for Alternating<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self, BladeStyle::Compact)
    }
}
