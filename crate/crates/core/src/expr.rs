//! A small expression language over multivectors: tokenizer, precedence
//! parser and a session evaluator bound to one algebra (optionally presented
//! through a conformal model).
//!
//! Grammar (EBNF):
//! ```text
//! expr    = product { ("+" | "-") product } ;
//! product = unary { ("*" | "|" | "^") unary } ;     (* one level, left-assoc *)
//! unary   = "~" unary | "-" unary | atom ;
//! atom    = number | symbol | name "(" expr { "," expr } ")" | "(" expr ")" ;
//! ```
//! There is deliberately no `/` operator: division is ambiguous under a
//! noncommutative product, so the grammar directs users to `inv()` instead.

use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::Algebra;
use crate::analytic::{int_power, inverse, AnalyticFn, AnalyticOps};
use crate::cga::CgaModel;
use crate::error::{GaError, Result};
use crate::multivector::{BasisStyle, Multivector};
use crate::pga::PgaModel;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Pipe,
    Caret,
    Tilde,
    LParen,
    RParen,
    Comma,
}

#[derive(Clone, Debug)]
struct SpannedTok {
    tok: Tok,
    col: usize,
}

/// Split the text into numbers, identifiers and operator tokens; columns are
/// 1-based.
pub fn tokenize(text: &str) -> Result<Vec<SpannedTokPublic>> {
    let toks = tokenize_internal(text)?;
    Ok(toks.into_iter().map(|t| SpannedTokPublic { col: t.col, kind: format!("{:?}", t.tok) }).collect())
}

/// Opaque token view for diagnostics and tests.
#[derive(Clone, Debug)]
pub struct SpannedTokPublic {
    pub col: usize,
    pub kind: String,
}

fn tokenize_internal(text: &str) -> Result<Vec<SpannedTok>> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if i < chars.len() && chars[i] == '.' {
                    let dot_col = i + 1;
                    i += 1;
                    if i >= chars.len() || !chars[i].is_ascii_digit() {
                        return Err(GaError::parse(dot_col, "malformed number"));
                    }
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                toks.push(SpannedTok { tok: Tok::Num(chars[start..i].iter().collect()), col });
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                toks.push(SpannedTok { tok: Tok::Ident(chars[start..i].iter().collect()), col });
            }
            '/' => {
                return Err(GaError::parse(col, "division operator not defined; use inv()"));
            }
            _ => {
                let tok = match c {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '|' => Tok::Pipe,
                    '^' => Tok::Caret,
                    '~' => Tok::Tilde,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    ',' => Tok::Comma,
                    other => {
                        return Err(GaError::parse(col, format!("illegal character `{other}`")))
                    }
                };
                toks.push(SpannedTok { tok, col });
                i += 1;
            }
        }
    }
    Ok(toks)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnOp {
    Neg,
    Reverse,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Geometric,
    Inner,
    Outer,
}

impl BinOp {
    fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Geometric => '*',
            BinOp::Inner => '|',
            BinOp::Outer => '^',
        }
    }
}

/// Parsed expression tree. Every node carries the 1-based column where it
/// starts, for error spans.
#[derive(Clone, Debug)]
pub enum Expr {
    Number { text: String, col: usize },
    Symbol { name: String, col: usize },
    Unary { op: UnOp, arg: Box<Expr>, col: usize },
    Binary { op: BinOp, lhs: Box<Expr>, rhs: Box<Expr>, col: usize },
    Call { name: String, args: Vec<Expr>, col: usize },
}

impl PartialEq for Expr {
    /// Structural equality, ignoring source columns.
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Expr::Number { text: a, .. }, Expr::Number { text: b, .. }) => a == b,
            (Expr::Symbol { name: a, .. }, Expr::Symbol { name: b, .. }) => a == b,
            (
                Expr::Unary { op: a, arg: x, .. },
                Expr::Unary { op: b, arg: y, .. },
            ) => a == b && x == y,
            (
                Expr::Binary { op: a, lhs: l1, rhs: r1, .. },
                Expr::Binary { op: b, lhs: l2, rhs: r2, .. },
            ) => a == b && l1 == l2 && r1 == r2,
            (
                Expr::Call { name: a, args: x, .. },
                Expr::Call { name: b, args: y, .. },
            ) => a == b && x == y,
            _ => false,
        }
    }
}

impl Expr {
    pub fn col(&self) -> usize {
        match self {
            Expr::Number { col, .. }
            | Expr::Symbol { col, .. }
            | Expr::Unary { col, .. }
            | Expr::Binary { col, .. }
            | Expr::Call { col, .. } => *col,
        }
    }

    fn prec(&self) -> u8 {
        match self {
            Expr::Binary { op: BinOp::Add | BinOp::Sub, .. } => 1,
            Expr::Binary { .. } => 2,
            Expr::Unary { .. } => 3,
            _ => 4,
        }
    }
}

impl std::fmt::Display for Expr {
    /// Canonical rendering: minimal parentheses under the grammar's
    /// precedence, no whitespace. `parse(render(e)) == e`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let child = |f: &mut std::fmt::Formatter<'_>, e: &Expr, parens: bool| {
            if parens {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        };
        match self {
            Expr::Number { text, .. } => f.write_str(text),
            Expr::Symbol { name, .. } => f.write_str(name),
            Expr::Unary { op, arg, .. } => {
                f.write_str(if *op == UnOp::Neg { "-" } else { "~" })?;
                child(f, arg, arg.prec() < 3)
            }
            Expr::Binary { op, lhs, rhs, .. } => {
                let p = self.prec();
                child(f, lhs, lhs.prec() < p)?;
                write!(f, "{}", op.symbol())?;
                child(f, rhs, rhs.prec() <= p)
            }
            Expr::Call { name, args, .. } => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// Number of arguments of a callable, or None for unknown names.
fn arity(name: &str) -> Option<usize> {
    match name {
        "grade" | "pow" => Some(2),
        "inv" | "rev" | "dual" | "hodge" | "norm" | "normalize" | "clean" | "push"
        | "pull" => Some(1),
        _ => AnalyticFn::from_name(name).map(|_| 1),
    }
}

struct Parser {
    toks: Vec<SpannedTok>,
    pos: usize,
    end_col: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.col)
    }

    fn bump(&mut self) -> Option<SpannedTok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        match self.peek() {
            Some(t) if *t == want => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(GaError::parse(self.col(), format!("expected {what}"))),
        }
    }

    fn parse_expr(&mut self) -> Result<Expr> {
        let mut lhs = self.parse_product()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Plus) => BinOp::Add,
                Some(Tok::Minus) => BinOp::Sub,
                _ => break,
            };
            let col = self.col();
            self.pos += 1;
            let rhs = self.parse_product()?;
            lhs = Expr::Binary { op, lhs: Box::new(lhs), rhs: Box::new(rhs), col };
        }
        Ok(lhs)
    }

    fn parse_product(&mut self) -> Result<Expr> {
        let mut lhs = self.parse_unary()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Star) => BinOp::Geometric,
                Some(Tok::Pipe) => BinOp::Inner,
                Some(Tok::Caret) => BinOp::Outer,
                _ => break,
            };
            let col = self.col();
            self.pos += 1;
            let rhs = self.parse_unary()?;
            lhs = Expr::Binary { op, lhs: Box::new(lhs), rhs: Box::new(rhs), col };
        }
        Ok(lhs)
    }

    fn parse_unary(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(Tok::Tilde) => {
                let col = self.col();
                self.pos += 1;
                Ok(Expr::Unary { op: UnOp::Reverse, arg: Box::new(self.parse_unary()?), col })
            }
            Some(Tok::Minus) => {
                let col = self.col();
                self.pos += 1;
                Ok(Expr::Unary { op: UnOp::Neg, arg: Box::new(self.parse_unary()?), col })
            }
            _ => self.parse_atom(),
        }
    }

    fn parse_atom(&mut self) -> Result<Expr> {
        let col = self.col();
        match self.bump().map(|t| t.tok) {
            Some(Tok::Num(text)) => Ok(Expr::Number { text, col }),
            Some(Tok::Ident(name)) => {
                if self.peek() == Some(&Tok::LParen) {
                    let Some(want) = arity(&name) else {
                        return Err(GaError::parse(col, format!("unknown function `{name}`")));
                    };
                    self.pos += 1;
                    let mut args = vec![self.parse_expr()?];
                    while self.peek() == Some(&Tok::Comma) {
                        self.pos += 1;
                        args.push(self.parse_expr()?);
                    }
                    self.expect(Tok::RParen, "`)`")?;
                    if args.len() != want {
                        return Err(GaError::parse(
                            col,
                            format!("function `{name}` expects {want} argument(s)"),
                        ));
                    }
                    Ok(Expr::Call { name, args, col })
                } else {
                    Ok(Expr::Symbol { name, col })
                }
            }
            Some(Tok::LParen) => {
                let e = self.parse_expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            _ => Err(GaError::parse(col, "expected a value")),
        }
    }
}

/// Parse the text into an expression tree; arity of calls is checked here.
pub fn parse(text: &str) -> Result<Expr> {
    let toks = tokenize_internal(text)?;
    let mut p = Parser { toks, pos: 0, end_col: text.chars().count() + 1 };
    let e = p.parse_expr()?;
    if p.pos != p.toks.len() {
        return Err(GaError::parse(p.col(), "unexpected trailing input"));
    }
    Ok(e)
}

/// An evaluation context: one algebra, an optional conformal presentation,
/// and a flat table of named values.
pub struct Session<S: Scalar + AnalyticOps> {
    algebra: Arc<Algebra>,
    cga: Option<CgaModel<S>>,
    symbols: HashMap<String, Multivector<S>>,
}

impl<S: Scalar + AnalyticOps> Session<S> {
    pub fn new(algebra: &Arc<Algebra>) -> Self {
        Session { algebra: algebra.clone(), cga: None, symbols: HashMap::new() }
    }

    /// A session whose basis symbols and rendering use the conformal null
    /// basis (n0, e1…, ni).
    pub fn conformal(model: CgaModel<S>) -> Self {
        let algebra = model.algebra().clone();
        Session { algebra, cga: Some(model), symbols: HashMap::new() }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn cga(&self) -> Option<&CgaModel<S>> {
        self.cga.as_ref()
    }

    pub fn define(&mut self, name: impl Into<String>, value: Multivector<S>) {
        self.symbols.insert(name.into(), value);
    }

    pub fn eval_text(&self, text: &str) -> Result<Multivector<S>> {
        self.evaluate(&parse(text)?)
    }

    /// Render a value in the session's preferred verbose style.
    pub fn render(&self, value: &Multivector<S>) -> String {
        match &self.cga {
            Some(model) => model
                .display_text(value)
                .expect("session values share the model's algebra"),
            None => value.clean(1e-12).to_text(BasisStyle::Plain),
        }
    }

    fn resolve_symbol(&self, name: &str, col: usize) -> Result<Multivector<S>> {
        if let Some(v) = self.symbols.get(name) {
            return Ok(v.clone());
        }
        let found = match &self.cga {
            Some(model) => self.conformal_blade(model, name),
            None => Multivector::basis(&self.algebra, name),
        };
        found.map_err(|_| GaError::parse(col, format!("unknown basis element `{name}`")))
    }

    /// Wedge of display vectors named by an "n0…e…ni" conformal label.
    fn conformal_blade(&self, model: &CgaModel<S>, name: &str) -> Result<Multivector<S>> {
        if name == "e0" {
            return Ok(Multivector::one(&self.algebra));
        }
        let base_n = model.base_dim();
        let mut gens: Vec<u32> = Vec::new();
        let mut rest = name;
        if let Some(r) = rest.strip_prefix("n0") {
            gens.push(0);
            rest = r;
        }
        if let Some(r) = rest.strip_prefix('e') {
            let digits: String = r.chars().take_while(char::is_ascii_digit).collect();
            if digits.is_empty() {
                return Err(GaError::UnknownBasis(name.into()));
            }
            rest = &r[digits.len()..];
            let mut prev = 0;
            for ch in digits.chars() {
                let d = ch.to_digit(10).expect("ascii digit");
                if d == 0 || d > base_n || d <= prev {
                    return Err(GaError::UnknownBasis(name.into()));
                }
                prev = d;
                gens.push(d);
            }
        }
        if let Some(r) = rest.strip_prefix("ni") {
            gens.push(base_n + 1);
            rest = r;
        }
        if !rest.is_empty() || gens.is_empty() {
            return Err(GaError::UnknownBasis(name.into()));
        }
        let mut acc = Multivector::one(&self.algebra);
        for g in gens {
            acc = acc.outer_product(&model.display_vector(g)?);
        }
        Ok(acc)
    }

    pub fn evaluate(&self, e: &Expr) -> Result<Multivector<S>> {
        let wrap = |r: Result<Multivector<S>>| {
            r.map_err(|err| match err {
                err @ (GaError::Parse { .. } | GaError::Eval { .. }) => err,
                other => GaError::Eval { context: e.to_string(), source: Box::new(other) },
            })
        };
        match e {
            Expr::Number { text, col } => S::from_decimal_text(text)
                .map(|v| Multivector::scalar(&self.algebra, v))
                .map_err(|_| GaError::parse(*col, format!("invalid number `{text}`"))),
            Expr::Symbol { name, col } => self.resolve_symbol(name, *col),
            Expr::Unary { op, arg, .. } => {
                let a = self.evaluate(arg)?;
                Ok(match op {
                    UnOp::Neg => a.neg(),
                    UnOp::Reverse => a.reverse(),
                })
            }
            Expr::Binary { op, lhs, rhs, .. } => {
                let a = self.evaluate(lhs)?;
                let b = self.evaluate(rhs)?;
                Ok(match op {
                    BinOp::Add => a.add(&b),
                    BinOp::Sub => a.sub(&b),
                    BinOp::Geometric => a.geometric_product(&b),
                    BinOp::Inner => a.inner_product(&b),
                    BinOp::Outer => a.outer_product(&b),
                })
            }
            Expr::Call { name, args, col } => {
                let a = self.evaluate(&args[0])?;
                match name.as_str() {
                    "inv" => wrap(inverse(&a)),
                    "rev" => Ok(a.reverse()),
                    "dual" => Ok(a.dual_complement()),
                    "hodge" => {
                        let sig = self.algebra.signature();
                        if sig.q != 0 || sig.r != 1 {
                            return wrap(Err(GaError::NotPga));
                        }
                        wrap(PgaModel::new(sig.p)?.hodge_dual(&a))
                    }
                    "norm" => wrap(S::mv_norm(&a).map(|n| Multivector::scalar(&self.algebra, n))),
                    "normalize" => wrap(S::mv_normalize(&a)),
                    "clean" => Ok(a.clean(1e-12)),
                    "grade" => {
                        let k = self.int_arg(&args[1], "grade")?;
                        if k < 0 {
                            return Err(GaError::parse(*col, "grade must be nonnegative"));
                        }
                        wrap(a.grade_projection(k as usize))
                    }
                    "pow" => {
                        let k = self.int_arg(&args[1], "pow")?;
                        wrap(int_power(&a, k))
                    }
                    "push" => {
                        let model = self.require_cga(*col)?;
                        wrap(model.vector_coords(&a).and_then(|c| model.push(&c)))
                    }
                    "pull" => {
                        let model = self.require_cga(*col)?;
                        wrap(model.pull(&a).and_then(|c| model.euclidean(&c)))
                    }
                    other => {
                        let f = AnalyticFn::from_name(other).expect("parser checked the name");
                        wrap(S::mv_analytic(&a, &f))
                    }
                }
            }
        }
    }

    fn require_cga(&self, col: usize) -> Result<&CgaModel<S>> {
        self.cga
            .as_ref()
            .ok_or_else(|| GaError::parse(col, "push/pull need a conformal session (--cga)"))
    }

    fn int_arg(&self, e: &Expr, func: &str) -> Result<i64> {
        let v = self.evaluate(e)?;
        let ok = v.coeffs().iter().skip(1).all(Scalar::is_zero);
        match (ok, v.scalar_part().to_i64()) {
            (true, Some(k)) => Ok(k),
            _ => Err(GaError::parse(e.col(), format!("{func} expects an integer argument"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Signature;
    use crate::ratfun::RationalFunction;
    use crate::scalar::Rational;

    fn session(p: u32, q: u32, r: u32) -> Session<Rational> {
        Session::new(&Algebra::get(Signature::new(p, q, r).unwrap()))
    }

    fn fsession(p: u32, q: u32, r: u32) -> Session<f64> {
        Session::new(&Algebra::get(Signature::new(p, q, r).unwrap()))
    }

    #[test]
    fn token_stream_shapes() {
        assert_eq!(tokenize("(1+2*e12)*(5-e12)").unwrap().len(), 13);
        assert_eq!(tokenize("pow(A,-1)").unwrap().len(), 7);
        match tokenize("2..5") {
            Err(GaError::Parse { col, .. }) => assert_eq!(col, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
        match tokenize("a/b") {
            Err(GaError::Parse { col, msg }) => {
                assert_eq!(col, 2);
                assert!(msg.contains("inv()"), "{msg}");
            }
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(matches!(tokenize("a ? b"), Err(GaError::Parse { col: 3, .. })));
    }

    #[test]
    fn parse_shapes() {
        // flat product level, left-associative
        let e = parse("a*b^c").unwrap();
        assert_eq!(e.to_string(), "a*b^c");
        match &e {
            Expr::Binary { op: BinOp::Outer, lhs, .. } => {
                assert!(matches!(**lhs, Expr::Binary { op: BinOp::Geometric, .. }));
            }
            other => panic!("unexpected shape {other:?}"),
        }
        // unary binds tighter than products
        let e = parse("~a*b").unwrap();
        match &e {
            Expr::Binary { op: BinOp::Geometric, lhs, .. } => {
                assert!(matches!(**lhs, Expr::Unary { op: UnOp::Reverse, .. }));
            }
            other => panic!("unexpected shape {other:?}"),
        }
        assert!(parse("(1+2").is_err());
        assert!(parse("1+").is_err());
        assert!(parse("grade(a)").is_err());
        assert!(parse("mystery(a)").is_err());
        assert!(parse("1 2").is_err());
    }

    #[test]
    fn render_round_trip() {
        for text in [
            "(1+2*e12)*(5-e12)",
            "a*b^c",
            "~a*-b",
            "grade(1+e1+e2+e12,1)",
            "pow(a,-2)|b",
            "-(a+b)*c",
            "exp(-0.5*e12)",
            "a-(b-c)",
        ] {
            let e = parse(text).unwrap();
            assert_eq!(parse(&e.to_string()).unwrap(), e, "render of `{text}`");
        }
    }

    #[test]
    fn listing_evaluations() {
        let s = session(2, 0, 0);
        let v = s.eval_text("(1+2*e12)*(5-e12)").unwrap();
        assert_eq!(s.render(&v), "( 7 )*e0+( 9 )*e12");
        let v = s.eval_text("grade(1+e1+e2+e12,1)").unwrap();
        assert_eq!(s.render(&v), "( 1 )*e1+( 1 )*e2");
        let v = s.eval_text("dual(1+e1+e2+e12)").unwrap();
        assert_eq!(s.render(&v), "( 1 )*e0+( 1 )*e1+( -1 )*e2+( 1 )*e12");
        let fs = fsession(2, 0, 0);
        let v = fs.eval_text("norm(3*e1+4*e2)").unwrap();
        assert_eq!(fs.render(&v), "( 5 )*e0");
    }

    #[test]
    fn inverse_and_power() {
        // fractions via decimal literals; both generators square to -1 here
        let s = session(0, 2, 0);
        let v = s.eval_text("inv(0.5-0.5*e1+0.5*e2+0.5*e12)").unwrap();
        assert_eq!(s.render(&v), "( 1/2 )*e0+( 1/2 )*e1+( -1/2 )*e2+( -1/2 )*e12");
        let sq = s.eval_text("pow(1+e1,2)").unwrap();
        assert_eq!(sq, s.eval_text("(1+e1)*(1+e1)").unwrap());
        let back = s.eval_text("pow(1+2*e12,-1)*(1+2*e12)").unwrap();
        assert_eq!(s.render(&back), "( 1 )*e0");
    }

    #[test]
    fn conformal_session() {
        let s = Session::conformal(CgaModel::<f64>::new(3, 0).unwrap());
        let v = s.eval_text("pull(push(e1+e2))").unwrap();
        assert_eq!(s.render(&v), "( 1 )*e1+( 1 )*e2");
        let v = s.eval_text("push(e1+e2)").unwrap();
        assert_eq!(s.render(&v), "( 1 )*n0+( 1 )*e1+( 1 )*e2+( 1 )*ni");
        // display blade symbols resolve to wedges of the null basis
        let v = s.eval_text("n0^e1^ni").unwrap();
        let w = s.eval_text("n0e1ni").unwrap();
        assert_eq!(v, w);
        assert!(matches!(
            s.eval_text("e9"),
            Err(GaError::Parse { .. })
        ));
        // push of a non-vector is a math error, not a parse error
        let err = s.eval_text("push(1+e1)").unwrap_err();
        assert!(!err.is_parse());
        // plain sessions refuse push
        let err = fsession(3, 0, 0).eval_text("push(e1)").unwrap_err();
        assert!(err.is_parse());
    }

    #[test]
    fn analytic_calls_and_domains() {
        let fs = fsession(2, 0, 0);
        let v = fs.eval_text("exp(log(2+e12))").unwrap();
        assert!(v.equals(&fs.eval_text("2+e12").unwrap(), 1e-10));
        let r = fs.eval_text("clean(cos(e12)*cos(e12)+sin(e12)*sin(e12))").unwrap();
        assert!(r.equals(&Multivector::one(fs.algebra()), 1e-10));
        // exact domains decline analytic calls with the float-domain error
        let s = session(2, 0, 0);
        match s.eval_text("exp(e12)") {
            Err(GaError::Eval { source, .. }) => {
                assert!(matches!(*source, GaError::FloatDomainRequired { .. }));
            }
            other => panic!("expected float-domain error, got {other:?}"),
        }
    }

    #[test]
    fn hodge_call() {
        let s = session(2, 0, 1);
        let v = s.eval_text("hodge(1)").unwrap();
        assert_eq!(s.render(&v), "( 1 )*e123");
        assert!(session(2, 0, 0).eval_text("hodge(1)").is_err());
    }

    #[test]
    fn laplace_variable_session() {
        let alg = Algebra::get(Signature::new(2, 0, 0).unwrap());
        let mut s = Session::<RationalFunction>::new(&alg);
        s.define("s", Multivector::scalar(&alg, RationalFunction::s()));
        let v = s.eval_text("(s*s+2*s)*e1").unwrap();
        let c = v.coeffs()[1].clone();
        let want = RationalFunction::s()
            .mul(&RationalFunction::s())
            .add(&RationalFunction::s().mul(&RationalFunction::from_i64(2)));
        assert_eq!(c, want);
    }

    #[test]
    fn error_spans_carry_context() {
        let s = session(2, 0, 0);
        match s.eval_text("1+inv(e1+e2-e1-e2)") {
            Err(GaError::Eval { context, source }) => {
                assert_eq!(context, "inv(e1+e2-e1-e2)");
                assert!(matches!(*source, GaError::NotInvertible));
            }
            other => panic!("expected eval error, got {other:?}"),
        }
        match s.eval_text("grade(1+e1, e1)") {
            Err(GaError::Parse { .. }) => {}
            other => panic!("expected parse error, got {other:?}"),
        }
    }
}
