use std::collections::BTreeSet;
use std::fmt;

use num_complex::Complex64;

use super::document::*;
use super::lexer::{tokenize, Tok, Token};
use crate::limits::max_dim;
use crate::states::Role;

/// Deviation of the squared norm from 1 tolerated without `normalize`.
pub const NORM_TOL: f64 = 1e-6;

/// A parse or validation failure with its source position and what would
/// have been accepted there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: usize,
    pub col: usize,
    pub message: String,
    pub expected: Vec<String>,
}

impl Diagnostic {
    pub(crate) fn new(span: Span, message: impl Into<String>, expected: Vec<String>) -> Self {
        Diagnostic { line: span.line, col: span.col, message: message.into(), expected }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected.join(" or "))?;
        }
        Ok(())
    }
}

impl std::error::Error for Diagnostic {}

#[derive(Debug, Clone, Copy, Default)]
pub struct ParseOptions {
    /// Rescale off-norm states instead of rejecting them.
    pub normalize: bool,
}

pub fn parse(source: &str) -> Result<SpecDocument, Diagnostic> {
    parse_with(source, ParseOptions::default())
}

pub fn parse_with(source: &str, options: ParseOptions) -> Result<SpecDocument, Diagnostic> {
    let tokens = tokenize(source)?;
    let mut p = Parser { tokens, pos: 0, options };
    p.document()
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    options: ParseOptions,
}

type PResult<T> = Result<T, Diagnostic>;

fn strs(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected<T>(&self, expected: &[&str]) -> PResult<T> {
        let t = self.peek();
        Err(Diagnostic::new(t.span, format!("unexpected {}", t.tok.describe()), strs(expected)))
    }

    fn expect(&mut self, tok: Tok, what: &str) -> PResult<Span> {
        if self.peek().tok == tok {
            Ok(self.bump().span)
        } else {
            self.unexpected(&[what])
        }
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(s) if s == kw)
    }

    fn keyword(&mut self, kw: &str) -> PResult<Span> {
        if self.at_keyword(kw) {
            Ok(self.bump().span)
        } else {
            self.unexpected(&[&format!("`{kw}`")])
        }
    }

    fn ident(&mut self, what: &str) -> PResult<(String, Span)> {
        match &self.peek().tok {
            Tok::Ident(s) => {
                let s = s.clone();
                Ok((s, self.bump().span))
            }
            _ => self.unexpected(&[what]),
        }
    }

    fn int(&mut self, what: &str) -> PResult<(usize, Span)> {
        match &self.peek().tok {
            Tok::Number(s) if s.bytes().all(|b| b.is_ascii_digit()) => {
                let span = self.peek().span;
                let v = s.parse::<usize>().map_err(|_| Diagnostic::new(span, format!("integer {s} is too large"), strs(&[what])))?;
                self.bump();
                Ok((v, span))
            }
            _ => self.unexpected(&[what]),
        }
    }

    fn float(&mut self) -> PResult<f64> {
        match &self.peek().tok {
            Tok::Number(s) => {
                let span = self.peek().span;
                let v: f64 = s
                    .parse()
                    .map_err(|_| Diagnostic::new(span, format!("malformed number {s}"), strs(&["number"])))?;
                if !v.is_finite() {
                    return Err(Diagnostic::new(span, format!("number {s} is not finite"), strs(&["finite number"])));
                }
                self.bump();
                Ok(v)
            }
            _ => self.unexpected(&["number"]),
        }
    }

    fn signed_float(&mut self) -> PResult<f64> {
        match self.peek().tok {
            Tok::Minus => {
                self.bump();
                Ok(-self.float()?)
            }
            Tok::Plus => {
                self.bump();
                self.float()
            }
            Tok::Number(_) => self.float(),
            _ => self.unexpected(&["number", "`-`", "`(`"]),
        }
    }

    fn document(&mut self) -> PResult<SpecDocument> {
        if self.peek().tok == Tok::Header {
            self.bump();
            let (v, span) = self.ident("`v1`")?;
            if v != "v1" {
                return Err(Diagnostic::new(span, format!("unsupported version {v}"), strs(&["`v1`"])));
            }
        }
        if !self.at_keyword("system") {
            return self.unexpected(&["`system`", "`tangnet-spec`"]);
        }
        let system = self.system()?;
        let mut states: Vec<StateDecl> = Vec::new();
        while self.at_keyword("state") {
            let s = self.state(&system)?;
            if states.iter().any(|o| o.name == s.name) {
                return Err(Diagnostic::new(s.span, format!("duplicate state {}", s.name), strs(&["a new state name"])));
            }
            states.push(s);
        }
        let roles = if self.at_keyword("roles") { Some(self.roles(&system)?) } else { None };
        if self.peek().tok != Tok::Eof {
            return if roles.is_some() {
                self.unexpected(&["end of input"])
            } else {
                self.unexpected(&["`state`", "`roles`", "end of input"])
            };
        }
        Ok(SpecDocument { system, states, roles })
    }

    fn system(&mut self) -> PResult<SystemDecl> {
        let span = self.keyword("system")?;
        let (name, _) = self.ident("system name")?;
        self.expect(Tok::LBrace, "`{`")?;
        let mut parties: Vec<PartyDecl> = Vec::new();
        let mut total: usize = 1;
        loop {
            let (label, lspan) = self.ident("party label")?;
            self.expect(Tok::Colon, "`:`")?;
            let (dim, dspan) = self.int("dimension")?;
            if parties.iter().any(|p| p.label == label) {
                return Err(Diagnostic::new(lspan, format!("duplicate party {label}"), strs(&["a new party label"])));
            }
            if dim == 0 {
                return Err(Diagnostic::new(dspan, "party dimension must be at least 1", strs(&["positive integer"])));
            }
            let cap = max_dim();
            total = total.saturating_mul(dim);
            if total > cap {
                return Err(Diagnostic::new(
                    dspan,
                    format!("total dimension exceeds the cap of {cap}"),
                    strs(&["smaller dimension"]),
                ));
            }
            parties.push(PartyDecl { label, dim, span: lspan });
            match self.peek().tok {
                Tok::Comma => {
                    self.bump();
                }
                Tok::RBrace => {
                    self.bump();
                    break;
                }
                _ => return self.unexpected(&["`,`", "`}`"]),
            }
        }
        Ok(SystemDecl { name, parties, span })
    }

    fn amplitude(&mut self) -> PResult<Complex64> {
        if self.peek().tok != Tok::LParen {
            return Ok(Complex64::new(self.signed_float()?, 0.0));
        }
        self.bump();
        let re = self.signed_float()?;
        let sign = match self.peek().tok {
            Tok::Plus => 1.0,
            Tok::Minus => -1.0,
            _ => return self.unexpected(&["`+`", "`-`"]),
        };
        self.bump();
        let im = sign * self.float()?;
        self.keyword("i")?;
        self.expect(Tok::RParen, "`)`")?;
        Ok(Complex64::new(re, im))
    }

    fn term(&mut self, system: &SystemDecl) -> PResult<Term> {
        let span = self.peek().span;
        let amp = self.amplitude()?;
        self.expect(Tok::Pipe, "`|`")?;
        let mut indices = Vec::new();
        loop {
            let (k, kspan) = self.int("basis index")?;
            let n = indices.len();
            if let Some(p) = system.parties.get(n) {
                if k >= p.dim {
                    return Err(Diagnostic::new(
                        kspan,
                        format!("index {k} out of range for party {} (dim {})", p.label, p.dim),
                        vec![format!("index below {}", p.dim)],
                    ));
                }
            } else {
                return Err(Diagnostic::new(
                    kspan,
                    format!("ket has more than {} indices", system.parties.len()),
                    strs(&["`>`"]),
                ));
            }
            indices.push(k);
            match self.peek().tok {
                Tok::Comma => {
                    self.bump();
                }
                Tok::RAngle => {
                    if indices.len() < system.parties.len() {
                        return Err(Diagnostic::new(
                            self.peek().span,
                            format!("ket has {} of {} indices", indices.len(), system.parties.len()),
                            strs(&["`,`"]),
                        ));
                    }
                    self.bump();
                    break;
                }
                _ => return self.unexpected(&["`,`", "`>`"]),
            }
        }
        Ok(Term { amplitude: Amplitude(amp), indices, span })
    }

    fn state(&mut self, system: &SystemDecl) -> PResult<StateDecl> {
        self.keyword("state")?;
        let (name, span) = self.ident("state name")?;
        self.expect(Tok::Eq, "`=`")?;
        let mut terms: Vec<Term> = Vec::new();
        loop {
            let t = self.term(system)?;
            if terms.iter().any(|o| o.indices == t.indices) {
                return Err(Diagnostic::new(t.span, "duplicate basis term", strs(&["a new basis state"])));
            }
            terms.push(t);
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                }
                Tok::Semi => {
                    self.bump();
                    break;
                }
                _ => return self.unexpected(&["`+`", "`;`"]),
            }
        }
        let norm2: f64 = terms.iter().map(|t| t.amplitude.0.norm_sqr()).sum();
        if norm2 <= 0.0 || !norm2.is_finite() {
            return Err(Diagnostic::new(span, format!("state {name} has no usable norm"), strs(&["nonzero amplitudes"])));
        }
        if (norm2 - 1.0).abs() > NORM_TOL {
            if !self.options.normalize {
                return Err(Diagnostic::new(
                    span,
                    format!("state {name} has squared norm {norm2}, not 1"),
                    strs(&["amplitudes with squared norm 1"]),
                ));
            }
            let n = norm2.sqrt();
            for t in &mut terms {
                t.amplitude.0 /= n;
            }
        }
        Ok(StateDecl { name, terms, span })
    }

    fn roles(&mut self, system: &SystemDecl) -> PResult<Vec<RoleDecl>> {
        self.keyword("roles")?;
        self.expect(Tok::LBrace, "`{`")?;
        let role_names: Vec<String> = Role::ALL.iter().map(|r| format!("`{r}`")).collect();
        let mut out: Vec<RoleDecl> = Vec::new();
        let mut seen = BTreeSet::new();
        loop {
            let (label, span) = self.ident("party label")?;
            if !system.parties.iter().any(|p| p.label == label) {
                let known = system.parties.iter().map(|p| format!("`{}`", p.label)).collect();
                return Err(Diagnostic::new(span, format!("unknown party {label}"), known));
            }
            if !seen.insert(label.clone()) {
                return Err(Diagnostic::new(span, format!("duplicate role for party {label}"), strs(&["a party without a role"])));
            }
            self.expect(Tok::Colon, "`:`")?;
            let rspan = self.peek().span;
            let role = match &self.peek().tok {
                Tok::Ident(s) => s.parse::<Role>().ok(),
                _ => None,
            };
            let Some(role) = role else {
                let t = self.peek();
                return Err(Diagnostic::new(rspan, format!("unexpected {}, not a role", t.tok.describe()), role_names));
            };
            self.bump();
            self.expect(Tok::Semi, "`;`")?;
            out.push(RoleDecl { label, role, span });
            match self.peek().tok {
                Tok::RBrace => {
                    self.bump();
                    break;
                }
                Tok::Ident(_) => {}
                _ => return self.unexpected(&["party label", "`}`"]),
            }
        }
        Ok(out)
    }
}
