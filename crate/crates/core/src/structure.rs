//! Text format for structure equations.
//!
//! ```text
//! file     = { line } ;
//! line     = [ dim | equation | metric ] [ comment ] newline ;
//! comment  = "#" { any character } ;
//! dim      = "dim" integer ;
//! equation = "d" "phi" index "=" [ term { ( "+" | "-" ) term } ] ;
//! term     = [ "+" | "-" ] [ complex ] factor "^" factor ;
//! factor   = ( "phi" | "bar" ) index ;
//! metric   = "metric" ( "identity" | "surface" { key "=" complex } ) ;
//! complex  = literal | "(" literal ")" ;
//! literal  = real | [ real ] imag | real ( "+" | "-" ) [ unsigned ] "i" ;
//! ```
//!
//! Tokens are separated by whitespace. `phi<j>` is φ^j and `bar<j>` is φ̄^j;
//! factors may appear in any order and are normalized with the wedge sign.
//! Repeated monomials are merged by addition. An equation with an empty
//! right-hand side declares dφ^i = 0. Surface metric keys are `r`, `s`, `u`.

use std::fmt;

use crate::forms::{CoframeAlgebra, InvariantForm, JacobiReport};
use crate::invariant::SurfaceMetricParams;
use crate::literal::parse_complex;
use crate::scalar::{format_ratio, Scalar, CQ};

#[derive(Clone, Debug, PartialEq, Eq)]
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

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq)]
pub enum MetricSpec {
    Identity,
    Surface(SurfaceMetricParams<CQ>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct StructureFile {
    pub algebra: CoframeAlgebra<CQ>,
    pub metric: Option<MetricSpec>,
    /// d∘d = 0 diagnostics, computed on parse; a failure is not a parse error.
    pub jacobi: JacobiReport,
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push(Token { text: &line[s..i], column: line[..s].chars().count() + 1 });
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(Token { text: &line[s..], column: line[..s].chars().count() + 1 });
    }
    out
}

struct LineParser<'a> {
    line: usize,
    end_column: usize,
    tokens: Vec<Token<'a>>,
    pos: usize,
}

impl<'a> LineParser<'a> {
    fn err<T>(&self, column: usize, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { line: self.line, column, message: message.into() })
    }

    fn column(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end_column, |t| t.column)
    }

    fn next(&mut self) -> Option<&Token<'a>> {
        let t = self.tokens.get(self.pos);
        self.pos += 1;
        t
    }

    fn peek(&self) -> Option<&str> {
        self.tokens.get(self.pos).map(|t| t.text)
    }

    fn expect(&mut self, word: &str) -> Result<(), ParseError> {
        let column = self.column();
        match self.next() {
            Some(t) if t.text == word => Ok(()),
            Some(t) => {
                let found = t.text.to_string();
                self.err(column, format!("expected `{word}`, found `{found}`"))
            }
            None => self.err(column, format!("expected `{word}`")),
        }
    }
}

fn parse_index(text: &str, prefix: &str) -> Option<usize> {
    let digits = text.strip_prefix(prefix)?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}

/// Basis position (0..2n) of a `phi<j>` or `bar<j>` factor.
fn parse_factor(text: &str, n: usize) -> Result<usize, String> {
    let (index, offset) = if let Some(j) = parse_index(text, "phi") {
        (j, 0)
    } else if let Some(j) = parse_index(text, "bar") {
        (j, n)
    } else {
        return Err(format!("expected `phi<j>` or `bar<j>`, found `{text}`"));
    };
    if index == 0 || index > n {
        return Err(format!("index {index} out of range 1..{n}"));
    }
    Ok(index - 1 + offset)
}

fn is_monomial(text: &str) -> bool {
    text.starts_with("phi") || text.starts_with("bar")
}

impl StructureFile {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut dim: Option<usize> = None;
        let mut equations: Vec<Option<InvariantForm<CQ>>> = Vec::new();
        let mut metric = None;
        let mut last_line = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            last_line = line_no;
            let content = raw.split('#').next().unwrap_or("");
            let mut p = LineParser { line: line_no, end_column: content.chars().count() + 1, tokens: tokens(content), pos: 0 };
            let Some(head) = p.peek() else { continue };
            match head {
                "dim" => {
                    p.next();
                    if dim.is_some() {
                        return p.err(1, "duplicate `dim` line");
                    }
                    let column = p.column();
                    let n = match p.next().map(|t| t.text.parse::<usize>()) {
                        Some(Ok(n)) if (1..=8).contains(&n) => n,
                        _ => return p.err(column, "`dim` needs an integer between 1 and 8"),
                    };
                    dim = Some(n);
                    equations = vec![None; n];
                }
                "d" => {
                    let Some(n) = dim else { return p.err(1, "`dim` must come before the equations") };
                    p.next();
                    let column = p.column();
                    let target = match p.next().map(|t| parse_index(t.text, "phi")) {
                        Some(Some(i)) if (1..=n).contains(&i) => i - 1,
                        Some(Some(i)) => return p.err(column, format!("index {i} out of range 1..{n}")),
                        _ => return p.err(column, "expected `phi<i>` after `d`"),
                    };
                    if equations[target].is_some() {
                        return p.err(column, format!("duplicate equation for d phi{}", target + 1));
                    }
                    p.expect("=")?;
                    equations[target] = Some(parse_terms(&mut p, n)?);
                }
                "metric" => {
                    p.next();
                    if metric.is_some() {
                        return p.err(1, "duplicate `metric` line");
                    }
                    metric = Some(parse_metric(&mut p)?);
                }
                other => {
                    let other = other.to_string();
                    return p.err(1, format!("unexpected `{other}`"));
                }
            }
        }
        let eof = |message: String| ParseError { line: last_line.max(1), column: 1, message };
        let n = dim.ok_or_else(|| eof("missing `dim` line".into()))?;
        let mut d_phi = Vec::with_capacity(n);
        for (i, eq) in equations.into_iter().enumerate() {
            d_phi.push(eq.ok_or_else(|| eof(format!("missing equation for d phi{}", i + 1)))?);
        }
        if let Some(MetricSpec::Surface(_)) = metric {
            if n != 2 {
                return Err(eof("the surface metric family needs dim 2".into()));
            }
        }
        let algebra = CoframeAlgebra::new(n, d_phi).map_err(|e| eof(e.to_string()))?;
        let jacobi = algebra.check_jacobi();
        Ok(StructureFile { algebra, metric, jacobi })
    }

    pub fn new(algebra: CoframeAlgebra<CQ>, metric: Option<MetricSpec>) -> Self {
        let jacobi = algebra.check_jacobi();
        StructureFile { algebra, metric, jacobi }
    }

    /// Canonical text: every coefficient parenthesized, terms joined by ` + `
    /// in monomial order.
    pub fn print(&self) -> String {
        let n = self.algebra.dim();
        let mut out = format!("dim {n}\n");
        for i in 0..n {
            out.push_str(&format!("d phi{} =", i + 1));
            let form = self.algebra.d_phi(i);
            let terms: Vec<String> = form.terms().map(|(m, c)| format!("({}) {}", c.render(), m)).collect();
            if !terms.is_empty() {
                out.push(' ');
                out.push_str(&terms.join(" + "));
            }
            out.push('\n');
        }
        match &self.metric {
            None => {}
            Some(MetricSpec::Identity) => out.push_str("metric identity\n"),
            Some(MetricSpec::Surface(p)) => {
                out.push_str(&format!(
                "metric surface r={} s={} u={}\n",
                format_ratio(&p.r.re),
                format_ratio(&p.s.re),
                p.u.render()
            ))
            }
        }
        out
    }
}

fn parse_terms(p: &mut LineParser<'_>, n: usize) -> Result<InvariantForm<CQ>, ParseError> {
    let mut form = InvariantForm::zero(n);
    let mut first = true;
    while p.peek().is_some() {
        let mut sign = CQ::one();
        match p.peek() {
            Some("+") => {
                p.next();
            }
            Some("-") => {
                p.next();
                sign = -sign;
            }
            _ if !first => return p.err(p.column(), "expected `+` or `-` between terms"),
            _ => {}
        }
        first = false;
        let column = p.column();
        let Some(token) = p.next().map(|t| t.text) else { return p.err(column, "expected a term") };
        let (coefficient, mono, mono_column) = if is_monomial(token) {
            (CQ::one(), token, column)
        } else {
            let c = match parse_complex(token) {
                Ok(c) => c,
                Err(message) => return p.err(column, message),
            };
            let mono_column = p.column();
            match p.next() {
                Some(t) => (c, t.text, mono_column),
                None => return p.err(mono_column, "expected a monomial after the coefficient"),
            }
        };
        let factors: Vec<&str> = mono.split('^').collect();
        if factors.len() != 2 {
            return p.err(mono_column, format!("expected a product of two factors, found `{mono}`"));
        }
        let mut positions = Vec::with_capacity(2);
        for factor in factors {
            match parse_factor(factor, n) {
                Ok(b) => positions.push(b),
                Err(message) => return p.err(mono_column, message),
            }
        }
        if positions[0] == positions[1] {
            return p.err(mono_column, format!("repeated factor in `{mono}`"));
        }
        form = form.add_unchecked(&InvariantForm::from_product(n, &positions, sign * coefficient));
    }
    Ok(form)
}

fn parse_metric(p: &mut LineParser<'_>) -> Result<MetricSpec, ParseError> {
    let column = p.column();
    match p.next().map(|t| t.text) {
        Some("identity") => {
            if p.peek().is_some() {
                return p.err(p.column(), "`metric identity` takes no parameters");
            }
            Ok(MetricSpec::Identity)
        }
        Some("surface") => {
            let (mut r, mut s, mut u) = (None, None, None);
            while let Some(t) = p.next() {
                let (column, text) = (t.column, t.text);
                let Some((key, value)) = text.split_once('=') else {
                    return p.err(column, format!("expected key=value, found `{text}`"));
                };
                let value = match parse_complex(value) {
                    Ok(v) => v,
                    Err(message) => return p.err(column, message),
                };
                let slot = match key {
                    "r" => &mut r,
                    "s" => &mut s,
                    "u" => &mut u,
                    _ => return p.err(column, format!("unknown metric key `{key}`")),
                };
                *slot = Some(value);
            }
            let (Some(r), Some(s)) = (r, s) else { return p.err(column, "surface metric needs r and s") };
            let params = SurfaceMetricParams::new(r, s, u.unwrap_or_else(CQ::zero));
            if let Err(e) = params.check() {
                return p.err(column, e.to_string());
            }
            Ok(MetricSpec::Surface(params))
        }
        _ => p.err(column, "expected `identity` or `surface`"),
    }
}
