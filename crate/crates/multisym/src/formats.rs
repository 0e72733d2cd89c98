//! Instance files and the textual grammar for symbolic elements.
//!
//! JSON instance format:
//!
//! ```json
//! {
//!   "n": 6, "k": 2,
//!   "omega": [ {"idx": [1,2,4], "coef": "1"}, {"idx": [1,3,5], "coef": "1"} ],
//!   "subspaces": { "N": [["1","1","0","0","0","0"], ["0","0","1","0","0","0"]] }
//! }
//! ```
//!
//! Rationals serialize as `"p/q"` strings with the sign on the numerator.
//!
//! Textual grammar for polynomial forms and multivector fields, one element
//! per string:
//!
//! ```text
//! element  := [sign] term (('+' | '-') term)*
//! term     := [coefficient] [monomial*] [basis]
//! coefficient := integer or rational like 3, -1/2
//! monomial := x<digits> ['^' exponent]
//! basis    := dx<i> ('^' dx<j>)*      covariant (forms)
//!           | e<i> ('^' e<j>)*        contravariant (multivector fields)
//! ```
//!
//! Examples: `3/2 x1^2 dx2^dx3`, `x1 e1^e2 - e3`, `5`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::{AltElement, Variance};
use crate::mspace::MSpace;
use crate::poly::Poly;
use crate::polyalt::PolyAlt;
use crate::scalar::{format_rat, parse_rat, Rat};
use crate::subspace::Subspace;

/// One sparse term of an alternating element.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermRecord {
    pub idx: Vec<u32>,
    pub coef: String,
}

/// A multisymplectic instance: the space plus named subspaces.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstanceFile {
    pub n: usize,
    pub k: usize,
    pub omega: Vec<TermRecord>,
    #[serde(default)]
    pub subspaces: BTreeMap<String, Vec<Vec<String>>>,
}

impl InstanceFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("instance JSON: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serialization cannot fail")
    }

    /// Builds the multisymplectic space from the record list.
    pub fn space(&self) -> Result<MSpace> {
        let omega = alt_from_records(self.n, self.k + 1, Variance::Covariant, &self.omega)?;
        MSpace::new(self.n, self.k, omega)
    }

    pub fn subspace(&self, name: &str) -> Result<Subspace> {
        let rows = self
            .subspaces
            .get(name)
            .ok_or_else(|| Error::Parse(format!("no subspace named {name:?} in instance")))?;
        let parsed = rows
            .iter()
            .map(|row| {
                if row.len() != self.n {
                    return Err(Error::Parse(format!(
                        "subspace {name:?} row has {} entries, expected {}",
                        row.len(),
                        self.n
                    )));
                }
                row.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Subspace::from_rows(self.n, parsed))
    }

    /// Round-trippable construction from parts.
    pub fn from_parts(ms: &MSpace, subspaces: &BTreeMap<String, Subspace>) -> Self {
        InstanceFile {
            n: ms.dim(),
            k: ms.order(),
            omega: alt_to_records(ms.omega()),
            subspaces: subspaces
                .iter()
                .map(|(name, s)| {
                    (
                        name.clone(),
                        s.basis()
                            .iter()
                            .map(|row| row.iter().map(format_rat).collect())
                            .collect(),
                    )
                })
                .collect(),
        }
    }
}

/// Serializes an alternating element as its sparse record list.
pub fn alt_to_records(a: &AltElement) -> Vec<TermRecord> {
    a.terms()
        .map(|(idx, c)| TermRecord {
            idx: idx.indices().to_vec(),
            coef: format_rat(c),
        })
        .collect()
}

/// Parses a record list into an alternating element of the stated shape.
pub fn alt_from_records(
    dim: usize,
    degree: usize,
    variance: Variance,
    records: &[TermRecord],
) -> Result<AltElement> {
    let terms = records
        .iter()
        .map(|r| Ok((r.idx.clone(), parse_rat(&r.coef)?)))
        .collect::<Result<Vec<_>>>()?;
    AltElement::from_terms(dim, degree, variance, terms)
}

/// Parses the textual grammar into a polynomial form or multivector field.
///
/// The variance is inferred from the basis symbols (`dx` vs `e`); terms
/// without basis symbols are degree 0. `expect_degree` resolves the shape
/// of all-zero or scalar inputs.
pub fn parse_poly_alt(
    input: &str,
    nvars: usize,
    expect_degree: Option<usize>,
    expect_variance: Option<Variance>,
) -> Result<PolyAlt> {
    let mut lexer = Lexer::new(input);
    let mut terms: Vec<(Vec<u32>, Poly)> = Vec::new();
    let mut variance: Option<Variance> = expect_variance;
    let mut degree: Option<usize> = None;

    let mut sign = 1i64;
    if lexer.peek_op('+') {
        lexer.take_op();
    } else if lexer.peek_op('-') {
        lexer.take_op();
        sign = -1;
    }
    loop {
        let (coef, monomial, basis, term_variance) = lexer.term(nvars)?;
        let coef = if sign < 0 { -coef } else { coef };
        let poly = Poly::from_terms(nvars, vec![(monomial, coef)]);
        if let Some(v) = term_variance {
            match variance {
                None => variance = Some(v),
                Some(existing) if existing != v => {
                    return Err(Error::Parse(
                        "mixed dx and e basis symbols in one element".into(),
                    ));
                }
                _ => {}
            }
        }
        match degree {
            None => degree = Some(basis.len()),
            Some(d) if d != basis.len() => {
                return Err(Error::Parse(format!(
                    "mixed term degrees {d} and {} in one element",
                    basis.len()
                )));
            }
            _ => {}
        }
        terms.push((basis, poly));
        match lexer.next_sign()? {
            Some(s) => sign = s,
            None => break,
        }
    }
    let degree = match (degree, expect_degree) {
        (Some(d), Some(e)) if d != e && !terms.iter().all(|(_, p)| p.is_zero()) => {
            return Err(Error::Parse(format!(
                "element has degree {d}, expected {e}"
            )));
        }
        (Some(d), _) => d,
        (None, Some(e)) => e,
        (None, None) => 0,
    };
    let variance = variance.unwrap_or(Variance::Covariant);
    let mut acc = PolyAlt::zero(nvars, degree, variance);
    for (basis, poly) in terms {
        if poly.is_zero() {
            continue;
        }
        if basis.len() != degree {
            return Err(Error::Parse("zero-degree term in a graded element".into()));
        }
        let one = PolyAlt::from_terms(nvars, degree, variance, vec![(basis, poly)])?;
        acc = acc.add(&one)?;
    }
    Ok(acc)
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
}

impl<'a> Lexer<'a> {
    fn new(s: &'a str) -> Self {
        Lexer {
            chars: s.chars().peekable(),
        }
    }

    fn skip_ws(&mut self) {
        while matches!(self.chars.peek(), Some(c) if c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn peek_op(&mut self, op: char) -> bool {
        self.skip_ws();
        self.chars.peek() == Some(&op)
    }

    fn take_op(&mut self) {
        self.chars.next();
    }

    /// After a term: `Some(sign)` when another term follows, `None` at end.
    fn next_sign(&mut self) -> Result<Option<i64>> {
        self.skip_ws();
        match self.chars.peek() {
            None => Ok(None),
            Some('+') => {
                self.chars.next();
                Ok(Some(1))
            }
            Some('-') => {
                self.chars.next();
                Ok(Some(-1))
            }
            Some(c) => Err(Error::Parse(format!("expected + or -, found {c:?}"))),
        }
    }

    fn number(&mut self) -> Result<Rat> {
        self.skip_ws();
        let mut s = String::new();
        while matches!(self.chars.peek(), Some(c) if c.is_ascii_digit()) {
            s.push(self.chars.next().unwrap());
        }
        if self.chars.peek() == Some(&'/') {
            s.push(self.chars.next().unwrap());
            while matches!(self.chars.peek(), Some(c) if c.is_ascii_digit()) {
                s.push(self.chars.next().unwrap());
            }
        }
        parse_rat(&s)
    }

    fn index(&mut self) -> Result<u32> {
        let mut s = String::new();
        while matches!(self.chars.peek(), Some(c) if c.is_ascii_digit()) {
            s.push(self.chars.next().unwrap());
        }
        s.parse()
            .map_err(|_| Error::Parse("expected an index after a basis symbol".into()))
    }

    /// One term: coefficient, exponent vector, basis indices, and the
    /// variance implied by the basis symbols.
    #[allow(clippy::type_complexity)]
    fn term(&mut self, nvars: usize) -> Result<(Rat, Vec<u32>, Vec<u32>, Option<Variance>)> {
        self.skip_ws();
        let mut coef = Rat::from_integer(1.into());
        if matches!(self.chars.peek(), Some(c) if c.is_ascii_digit()) {
            coef = self.number()?;
        }
        let mut exponents = vec![0u32; nvars];
        let mut basis: Vec<u32> = Vec::new();
        let mut variance = None;
        loop {
            self.skip_ws();
            match self.chars.peek() {
                Some('x') => {
                    self.chars.next();
                    let i = self.index()?;
                    if i == 0 || i as usize > nvars {
                        return Err(Error::Parse(format!("variable x{i} out of range")));
                    }
                    let mut exp = 1u32;
                    if self.chars.peek() == Some(&'^') {
                        self.chars.next();
                        exp = self.index()?;
                    }
                    exponents[i as usize - 1] += exp;
                }
                Some('d') => {
                    self.chars.next();
                    if self.chars.next() != Some('x') {
                        return Err(Error::Parse("expected dx<i>".into()));
                    }
                    variance = Some(Variance::Covariant);
                    basis.push(self.index()?);
                    while self.peek_op('^') {
                        self.take_op();
                        self.skip_ws();
                        if self.chars.next() != Some('d') || self.chars.next() != Some('x') {
                            return Err(Error::Parse("expected dx<i> after ^".into()));
                        }
                        basis.push(self.index()?);
                    }
                    break;
                }
                Some('e') => {
                    self.chars.next();
                    variance = Some(Variance::Contravariant);
                    basis.push(self.index()?);
                    while self.peek_op('^') {
                        self.take_op();
                        self.skip_ws();
                        if self.chars.next() != Some('e') {
                            return Err(Error::Parse("expected e<i> after ^".into()));
                        }
                        basis.push(self.index()?);
                    }
                    break;
                }
                _ => break,
            }
        }
        if basis.iter().any(|&i| i == 0 || i as usize > nvars) {
            return Err(Error::Parse("basis index out of range".into()));
        }
        Ok((coef, exponents, basis, variance))
    }
}

/// Input for the bracket command: the space, two Hamiltonian classes and
/// their witnesses, in the textual grammar.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BracketFile {
    /// Number of base variables.
    pub n: usize,
    /// Order of the multisymplectic structure; ω has degree k+1.
    pub k: usize,
    pub omega: String,
    pub a: BracketEntry,
    pub b: BracketEntry,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BracketEntry {
    /// Representative form in the textual grammar.
    pub rep: String,
    /// Hamiltonian witness multivector field.
    pub witness: String,
}

impl BracketFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("bracket JSON: {e}")))
    }
}
