//! Text form of algebra presentations.
//!
//! ```text
//! spec    := stmt (";" stmt)* [";"]
//! stmt    := "free" [gen ("," gen)*]        generators; a bare gen list continues "free"
//!          | gen ("," gen)*
//!          | "d" NAME "=" expr               differential of a generator
//!          | "window" INT ("," INT)*        weight bounds for free algebras (default 4)
//!          | "quot" NAME "^" INT            C[x]/(x^m)
//!          | "cross" ["W" "=" INT]          C[x,y]/(xy), default W = 4
//!          | "sqzero" "D+" "=" INT "D-" "=" INT
//!          | "laurent" "D-" "=" INT "D+" "=" INT
//! gen     := NAME (":" attr)*
//! attr    := "even" | "odd" | "deg" "=" INT | "w" "=" INT ("," INT)*
//! expr    := ["-"] term (("+" | "-") term)*
//! term    := INT ["/" INT] ["*" factor ("*" factor)*] | factor ("*" factor)*
//! factor  := NAME ["^" INT]
//! ```

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::constructors::{build_free, crossing_lines, laurent_window, quotient_truncated_poly, square_zero_extension};
use super::presentation::{GenPoly, GeneratorSpec, GradedAlgebraPresentation};
use crate::error::Result;
use crate::exact::Rational;

pub const DEFAULT_WINDOW: i64 = 4;

/// Recipe from which a presentation is built; also its printable form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraSpec {
    Free {
        gens: Vec<GeneratorSpec>,
        delta: Vec<GenPoly>,
        window: Vec<i64>,
    },
    Quot {
        m: i64,
    },
    Cross {
        w: i64,
    },
    SqZero {
        d_plus: i64,
        d_minus: i64,
    },
    Laurent {
        d_minus: i64,
        d_plus: i64,
    },
}

impl AlgebraSpec {
    pub fn build(&self) -> Result<GradedAlgebraPresentation> {
        match self {
            AlgebraSpec::Free { gens, delta, window } => {
                build_free(gens.clone(), delta.clone(), window.clone(), self.clone())
            }
            AlgebraSpec::Quot { m } => quotient_truncated_poly(*m),
            AlgebraSpec::Cross { w } => crossing_lines(*w),
            AlgebraSpec::SqZero { d_plus, d_minus } => square_zero_extension(*d_plus, *d_minus),
            AlgebraSpec::Laurent { d_minus, d_plus } => laurent_window(*d_minus, *d_plus),
        }
    }
}

fn fmt_ints(v: &[i64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn fmt_poly(gens: &[GeneratorSpec], p: &GenPoly) -> String {
    if p.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (c, e)) in p.iter().enumerate() {
        let neg = c.is_negative();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let a = c.abs();
        let factors: Vec<String> = gens
            .iter()
            .zip(e)
            .filter(|(_, x)| **x > 0)
            .map(|(g, x)| {
                if *x == 1 {
                    g.name.clone()
                } else {
                    format!("{}^{}", g.name, x)
                }
            })
            .collect();
        if factors.is_empty() {
            out.push_str(&a.to_string());
        } else {
            if !a.is_one() {
                out.push_str(&format!("{a}*"));
            }
            out.push_str(&factors.join("*"));
        }
    }
    out
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraSpec::Free { gens, delta, window } => {
                write!(f, "free")?;
                for (i, g) in gens.iter().enumerate() {
                    let parity = if g.is_odd() { "odd" } else { "even" };
                    write!(
                        f,
                        "{} {}:{}:deg={}",
                        if i == 0 { "" } else { ";" },
                        g.name,
                        parity,
                        g.degree
                    )?;
                    if !g.weight.is_empty() {
                        write!(f, ":w={}", fmt_ints(&g.weight))?;
                    }
                }
                for (g, p) in gens.iter().zip(delta) {
                    if !p.is_empty() {
                        write!(f, "; d {} = {}", g.name, fmt_poly(gens, p))?;
                    }
                }
                if !window.is_empty() {
                    write!(f, "; window {}", fmt_ints(window))?;
                }
                Ok(())
            }
            AlgebraSpec::Quot { m } => write!(f, "quot x^{m}"),
            AlgebraSpec::Cross { w } => write!(f, "cross W={w}"),
            AlgebraSpec::SqZero { d_plus, d_minus } => write!(f, "sqzero D+={d_plus} D-={d_minus}"),
            AlgebraSpec::Laurent { d_minus, d_plus } => write!(f, "laurent D-={d_minus} D+={d_plus}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {col}: {message}{}", expected_suffix(.expected))]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
    pub expected: Vec<String>,
}

fn expected_suffix(e: &[String]) -> String {
    if e.is_empty() {
        String::new()
    } else {
        format!(" (expected one of: {})", e.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Name(String),
    Int(i64),
    Sym(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Name(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Sym(c) => write!(f, "`{c}`"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

struct Lexed {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> std::result::Result<Vec<Lexed>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            col += i - start;
            out.push(Lexed {
                tok: Tok::Name(chars[start..i].iter().collect()),
                line: l0,
                col: c0,
            });
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            col += i - start;
            let s: String = chars[start..i].iter().collect();
            let n = s.parse::<i64>().map_err(|_| ParseError {
                line: l0,
                col: c0,
                message: format!("integer {s} out of range"),
                expected: Vec::new(),
            })?;
            out.push(Lexed {
                tok: Tok::Int(n),
                line: l0,
                col: c0,
            });
            continue;
        }
        if ";:,=^*/+-".contains(c) {
            out.push(Lexed {
                tok: Tok::Sym(c),
                line: l0,
                col: c0,
            });
            i += 1;
            col += 1;
            continue;
        }
        return Err(ParseError {
            line: l0,
            col: c0,
            message: format!("unexpected character `{c}`"),
            expected: Vec::new(),
        });
    }
    out.push(Lexed {
        tok: Tok::End,
        line,
        col,
    });
    Ok(out)
}

const KEYWORDS: [&str; 6] = ["free", "window", "quot", "cross", "sqzero", "laurent"];

struct RawGen {
    spec: GeneratorSpec,
    has_weight: bool,
}

enum Kind {
    Free,
    Other(AlgebraSpec),
}

struct Parser {
    toks: Vec<Lexed>,
    pos: usize,
    gens: Vec<RawGen>,
    rules: Vec<(String, Vec<(Rational, Vec<(String, u32)>)>, usize)>,
    window: Option<Vec<i64>>,
    kind: Option<Kind>,
}

type PResult<T> = std::result::Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn err<T>(&self, expected: &[&str]) -> PResult<T> {
        let l = &self.toks[self.pos];
        Err(ParseError {
            line: l.line,
            col: l.col,
            message: format!("unexpected {}", l.tok),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        })
    }

    fn fail<T>(&self, at: usize, message: String) -> PResult<T> {
        let l = &self.toks[at];
        Err(ParseError {
            line: l.line,
            col: l.col,
            message,
            expected: Vec::new(),
        })
    }

    fn sym(&mut self, c: char) -> PResult<()> {
        if *self.peek() == Tok::Sym(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(&[&format!("`{c}`")])
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> PResult<i64> {
        let neg = self.eat('-');
        match *self.peek() {
            Tok::Int(n) => {
                self.pos += 1;
                Ok(if neg { -n } else { n })
            }
            _ => self.err(&["integer"]),
        }
    }

    fn name(&mut self) -> PResult<String> {
        match self.peek().clone() {
            Tok::Name(s) => {
                self.pos += 1;
                Ok(s)
            }
            _ => self.err(&["name"]),
        }
    }

    fn keyword(&mut self, kw: &str) -> PResult<()> {
        if *self.peek() == Tok::Name(kw.to_string()) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(&[&format!("`{kw}`")])
        }
    }

    fn int_list(&mut self) -> PResult<Vec<i64>> {
        let mut v = vec![self.int()?];
        while *self.peek() == Tok::Sym(',') && matches!(self.peek_at(1), Tok::Int(_) | Tok::Sym('-')) {
            self.pos += 1;
            v.push(self.int()?);
        }
        Ok(v)
    }

    fn set_kind(&mut self, k: Kind, at: usize) -> PResult<()> {
        if self.kind.is_some() {
            let same = matches!((&self.kind, &k), (Some(Kind::Free), Kind::Free));
            if !same {
                return self.fail(at, "only one algebra constructor per spec".into());
            }
        }
        self.kind = Some(k);
        Ok(())
    }

    fn gen_list(&mut self) -> PResult<()> {
        loop {
            let at = self.pos;
            let name = self.name()?;
            if KEYWORDS.contains(&name.as_str()) || name == "d" {
                return self.fail(at, format!("`{name}` is reserved"));
            }
            if self.gens.iter().any(|g| g.spec.name == name) {
                return self.fail(at, format!("duplicate generator `{name}`"));
            }
            let mut odd = None;
            let mut degree = None;
            let mut weight = None;
            while self.eat(':') {
                match self.peek().clone() {
                    Tok::Name(a) if a == "even" || a == "odd" => {
                        self.pos += 1;
                        odd = Some(a == "odd");
                    }
                    Tok::Name(a) if a == "deg" => {
                        self.pos += 1;
                        self.sym('=')?;
                        let d_at = self.pos;
                        let d = self.int()?;
                        if d < 0 {
                            return self.fail(d_at, "generator degree must be >= 0".into());
                        }
                        degree = Some(d);
                    }
                    Tok::Name(a) if a == "w" => {
                        self.pos += 1;
                        self.sym('=')?;
                        weight = Some(self.int_list()?);
                    }
                    _ => return self.err(&["`even`", "`odd`", "`deg`", "`w`"]),
                }
            }
            let degree = match (degree, odd) {
                (Some(d), Some(o)) if (d % 2 == 1) != o => {
                    return self.fail(at, format!("degree of `{name}` contradicts its parity"));
                }
                (Some(d), _) => d,
                (None, Some(true)) => 1,
                (None, _) => 0,
            };
            let has_weight = weight.is_some();
            self.gens.push(RawGen {
                spec: GeneratorSpec::new(&name, degree, weight.unwrap_or_default()),
                has_weight,
            });
            if !self.eat(',') {
                return Ok(());
            }
        }
    }

    fn factor(&mut self) -> PResult<(String, u32)> {
        let n = self.name()?;
        let e = if self.eat('^') {
            let at = self.pos;
            let e = self.int()?;
            if e < 0 {
                return self.fail(at, "exponent must be >= 0".into());
            }
            e as u32
        } else {
            1
        };
        Ok((n, e))
    }

    fn term(&mut self, neg: bool) -> PResult<(Rational, Vec<(String, u32)>)> {
        let mut coef = Rational::one();
        let mut factors = Vec::new();
        if let Tok::Int(n) = *self.peek() {
            self.pos += 1;
            let mut den = 1;
            if self.eat('/') {
                let at = self.pos;
                den = self.int()?;
                if den == 0 {
                    return self.fail(at, "zero denominator".into());
                }
            }
            coef = Rational::new(BigInt::from(n), BigInt::from(den));
            if !self.eat('*') {
                return Ok((if neg { -coef } else { coef }, factors));
            }
        }
        factors.push(self.factor()?);
        while self.eat('*') {
            factors.push(self.factor()?);
        }
        Ok((if neg { -coef } else { coef }, factors))
    }

    fn expr(&mut self) -> PResult<Vec<(Rational, Vec<(String, u32)>)>> {
        let mut neg = self.eat('-');
        let mut terms = Vec::new();
        loop {
            if !matches!(self.peek(), Tok::Int(_) | Tok::Name(_)) {
                return self.err(&["integer", "name"]);
            }
            terms.push(self.term(neg)?);
            if self.eat('+') {
                neg = false;
            } else if self.eat('-') {
                neg = true;
            } else {
                return Ok(terms);
            }
        }
    }

    fn d_plus_minus(&mut self, sign: char) -> PResult<i64> {
        self.keyword("D")?;
        self.sym(sign)?;
        self.sym('=')?;
        self.int()
    }

    fn statement(&mut self) -> PResult<()> {
        let at = self.pos;
        let word = match self.peek().clone() {
            Tok::Name(w) => w,
            _ => {
                return self.err(&[
                    "`free`",
                    "`d`",
                    "`window`",
                    "`quot`",
                    "`cross`",
                    "`sqzero`",
                    "`laurent`",
                    "generator",
                ])
            }
        };
        let next_is_name = matches!(self.peek_at(1), Tok::Name(_));
        match word.as_str() {
            "free" => {
                self.pos += 1;
                self.set_kind(Kind::Free, at)?;
                if matches!(self.peek(), Tok::Name(_)) {
                    self.gen_list()?;
                }
            }
            "d" if next_is_name => {
                self.pos += 1;
                let g = self.name()?;
                self.sym('=')?;
                let e = self.expr()?;
                self.rules.push((g, e, at));
            }
            "window" => {
                self.pos += 1;
                if self.window.is_some() {
                    return self.fail(at, "window given twice".into());
                }
                self.window = Some(self.int_list()?);
            }
            "quot" => {
                self.pos += 1;
                self.name()?;
                self.sym('^')?;
                let m_at = self.pos;
                let m = self.int()?;
                if m < 1 {
                    return self.fail(m_at, "quotient exponent must be >= 1".into());
                }
                self.set_kind(Kind::Other(AlgebraSpec::Quot { m }), at)?;
            }
            "cross" => {
                self.pos += 1;
                let mut w = DEFAULT_WINDOW;
                if *self.peek() == Tok::Name("W".into()) {
                    self.pos += 1;
                    self.sym('=')?;
                    w = self.int()?;
                }
                self.set_kind(Kind::Other(AlgebraSpec::Cross { w }), at)?;
            }
            "sqzero" => {
                self.pos += 1;
                let d_plus = self.d_plus_minus('+')?;
                let d_minus = self.d_plus_minus('-')?;
                if d_minus < 1 {
                    return self.fail(at, "D- must be >= 1".into());
                }
                self.set_kind(Kind::Other(AlgebraSpec::SqZero { d_plus, d_minus }), at)?;
            }
            "laurent" => {
                self.pos += 1;
                let d_minus = self.d_plus_minus('-')?;
                let d_plus = self.d_plus_minus('+')?;
                self.set_kind(Kind::Other(AlgebraSpec::Laurent { d_minus, d_plus }), at)?;
            }
            _ => {
                self.set_kind(Kind::Free, at)?;
                self.gen_list()?;
            }
        }
        Ok(())
    }

    fn finish(self) -> PResult<AlgebraSpec> {
        let other = match &self.kind {
            Some(Kind::Other(spec)) => Some(spec.clone()),
            _ => None,
        };
        if let Some(spec) = other {
            if !self.rules.is_empty() {
                return self.fail(
                    self.rules[0].2,
                    "differentials are only allowed on free algebras".into(),
                );
            }
            if self.window.is_some() {
                return self.fail(0, "window applies only to free algebras".into());
            }
            return Ok(spec);
        }
        let arity = self
            .gens
            .iter()
            .find(|g| g.has_weight)
            .map(|g| g.spec.weight.len())
            .or_else(|| self.window.as_ref().map(|w| w.len()))
            .unwrap_or(if self.gens.is_empty() { 0 } else { 1 });
        let mut gens = Vec::new();
        for g in &self.gens {
            let mut s = g.spec.clone();
            if !g.has_weight {
                s.weight = vec![1; arity];
            }
            if s.weight.len() != arity {
                return self.fail(
                    0,
                    format!(
                        "generator `{}` has weight arity {}, expected {arity}",
                        s.name,
                        s.weight.len()
                    ),
                );
            }
            gens.push(s);
        }
        let window = self.window.clone().unwrap_or_else(|| vec![DEFAULT_WINDOW; arity]);
        if window.len() != arity {
            return self.fail(0, format!("window has {} entries, expected {arity}", window.len()));
        }
        let mut delta: Vec<GenPoly> = vec![Vec::new(); gens.len()];
        for (g, terms, at) in &self.rules {
            let Some(gi) = gens.iter().position(|x| &x.name == g) else {
                return self.fail(*at + 1, format!("unknown generator `{g}` in differential"));
            };
            if !delta[gi].is_empty() {
                return self.fail(*at, format!("differential of `{g}` given twice"));
            }
            let mut poly: std::collections::BTreeMap<Vec<u32>, Rational> = Default::default();
            for (c, factors) in terms {
                let mut e = vec![0u32; gens.len()];
                for (name, x) in factors {
                    let Some(k) = gens.iter().position(|y| &y.name == name) else {
                        return self.fail(*at, format!("unknown generator `{name}` in differential of `{g}`"));
                    };
                    e[k] += x;
                }
                *poly.entry(e).or_insert_with(Rational::zero) += c;
            }
            let mut p: GenPoly = poly
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(e, c)| (c, e))
                .collect();
            p.sort_by(|a, b| b.1.cmp(&a.1));
            for (_, e) in &p {
                let deg: i64 = gens.iter().zip(e).map(|(x, k)| x.degree * i64::from(*k)).sum();
                let mut w = vec![0; arity];
                for (x, k) in gens.iter().zip(e) {
                    for (a, b) in w.iter_mut().zip(&x.weight) {
                        *a += b * i64::from(*k);
                    }
                }
                if w != gens[gi].weight {
                    return self.fail(*at, format!("differential of `{g}` violates weight homogeneity"));
                }
                if deg != gens[gi].degree - 1 {
                    return self.fail(
                        *at,
                        format!("differential of `{g}` must have degree {}", gens[gi].degree - 1),
                    );
                }
            }
            delta[gi] = p;
        }
        if delta.iter().all(|p| p.is_empty()) {
            delta.clear();
        }
        Ok(AlgebraSpec::Free { gens, delta, window })
    }
}

pub fn parse_spec(text: &str) -> std::result::Result<AlgebraSpec, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        gens: Vec::new(),
        rules: Vec::new(),
        window: None,
        kind: None,
    };
    loop {
        if *p.peek() == Tok::End {
            break;
        }
        p.statement()?;
        if *p.peek() == Tok::End {
            break;
        }
        if !p.eat(';') {
            return p.err(&["`;`", "end of input"]);
        }
    }
    if p.kind.is_none() {
        p.kind = Some(Kind::Free);
    }
    p.finish()
}

pub fn parse_algebra_spec(text: &str) -> Result<GradedAlgebraPresentation> {
    parse_spec(text)?.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{quotient_truncated_poly, resolve_quotient};

    #[test]
    fn resolution_of_dual_numbers() {
        let a = parse_algebra_spec("free x:even:w=1; xi:odd:w=2; d xi = x^2").unwrap();
        let b = resolve_quotient(2, DEFAULT_WINDOW).unwrap();
        assert_eq!(a.basis(), b.basis());
        assert_eq!(a.products, b.products);
        assert_eq!(a.delta, b.delta);
    }

    #[test]
    fn quotient_matches_constructor() {
        assert_eq!(
            parse_algebra_spec("quot x^3").unwrap(),
            quotient_truncated_poly(3).unwrap()
        );
    }

    #[test]
    fn bigraded_polynomials() {
        let a = parse_algebra_spec("free x:even:w=1,0; y:even:w=0,1").unwrap();
        assert_eq!(a.weight_arity(), 2);
        assert_eq!(a.dim(), 25);
    }

    #[test]
    fn round_trip() {
        for text in [
            "free x:even:w=1; xi:odd:w=2; d xi = x^2",
            "free x:w=1,0; y:w=0,1; z:odd:deg=1:w=1,1; d z = 2*x*y; window 3,3",
            "free",
            "quot x^2",
            "cross W=3",
            "sqzero D+=4 D-=2",
            "laurent D-=2 D+=3",
            "free a:odd:w=1, b:odd:w=2; window 3",
        ] {
            let a = parse_algebra_spec(text).unwrap();
            let b = parse_algebra_spec(&a.pretty()).unwrap();
            assert_eq!(a, b, "{text} -> {}", a.pretty());
        }
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_spec("free x:even;\n  d y = x").unwrap_err();
        assert_eq!((e.line, e.col), (2, 5));
        let e = parse_spec("free x:blue").unwrap_err();
        assert_eq!(e.col, 8);
        assert!(e.expected.contains(&"`odd`".to_string()));
        let e = parse_spec("free x:even:w=1; xi:odd:w=3; d xi = x^2").unwrap_err();
        assert!(e.message.contains("homogeneity"));
        assert!(parse_spec("quot x^0").is_err());
        assert!(parse_spec("quot x^2; cross").is_err());
    }
}
