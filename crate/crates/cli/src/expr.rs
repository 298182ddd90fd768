//! The command-line element grammar.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := int ['/' int] | 'z' ['^' int] | 'v' int | path | '(' expr ')'
//! path   := 'a' int ('.' 'a' int)*
//! ```
//!
//! `v3` is the vertex with index 3. `a2.a0` is the path that traverses
//! `a0` first, written right to left as in `a_n ⋯ a_1`. `z` is the chosen
//! primitive root of unity of the field. A bare scalar `c` denotes `c·1`.
//! `*` between two elements is the Majid product and associates to the left.

use hopfquiver::{Element, Field, MajidStructure, Path, Quiver, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExprError {
    #[error("unexpected {found} at offset {at} in {input:?}")]
    Unexpected { input: String, at: usize, found: String },
    #[error("arrows {0:?} do not form a path")]
    NotAPath(Vec<usize>),
    #[error("vertex {0} out of range")]
    BadVertex(usize),
    #[error("a product of two elements needs the whole structure")]
    NeedsStructure,
    #[error("expected a scalar, found an element")]
    NotScalar,
    #[error("division by zero")]
    DivisionByZero,
    #[error(transparent)]
    Majid(#[from] hopfquiver::majid::MajidError),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Zeta,
    Vertex(usize),
    Arrow(usize),
    Sym(char),
}

fn lex(input: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let unexpected = |at: usize, found: &str| ExprError::Unexpected {
        input: input.to_string(),
        at,
        found: found.to_string(),
    };
    let digits = |mut j: usize| {
        let start = j;
        while j < bytes.len() && bytes[j].is_ascii_digit() {
            j += 1;
        }
        (start, j)
    };
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' => i += 1,
            '0'..='9' => {
                let (s, e) = digits(i);
                out.push((i, Tok::Int(input[s..e].parse().expect("digits"))));
                i = e;
            }
            'z' => {
                out.push((i, Tok::Zeta));
                i += 1;
            }
            'v' | 'a' => {
                let (s, e) = digits(i + 1);
                if s == e {
                    return Err(unexpected(i, &c.to_string()));
                }
                let n: usize = input[s..e].parse().map_err(|_| unexpected(i, &input[s..e]))?;
                out.push((i, if c == 'v' { Tok::Vertex(n) } else { Tok::Arrow(n) }));
                i = e;
            }
            '+' | '-' | '*' | '/' | '^' | '.' | '(' | ')' => {
                out.push((i, Tok::Sym(c)));
                i += 1;
            }
            _ => return Err(unexpected(i, &c.to_string())),
        }
    }
    Ok(out)
}

/// Where expressions are evaluated.
pub struct Context<'a> {
    pub quiver: &'a Quiver,
    pub field: &'a Field,
    pub identity: usize,
    pub structure: Option<&'a MajidStructure>,
}

#[derive(Debug, Clone)]
enum Val {
    Scalar(Scalar),
    Elem(Element),
}

impl Val {
    fn into_element(self, ctx: &Context<'_>) -> Element {
        match self {
            Val::Scalar(c) => Element::term(Path::vertex(ctx.identity), c),
            Val::Elem(e) => e,
        }
    }
}

struct Parser<'a, 'c> {
    input: &'a str,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    ctx: &'a Context<'c>,
}

impl Parser<'_, '_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn error(&self) -> ExprError {
        match self.toks.get(self.pos) {
            Some((at, t)) => ExprError::Unexpected {
                input: self.input.to_string(),
                at: *at,
                found: format!("{t:?}"),
            },
            None => ExprError::Unexpected {
                input: self.input.to_string(),
                at: self.input.len(),
                found: "end of input".to_string(),
            },
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<BigInt, ExprError> {
        match self.peek() {
            Some(Tok::Int(n)) => {
                let n = n.clone();
                self.pos += 1;
                Ok(n)
            }
            _ => Err(self.error()),
        }
    }

    fn expr(&mut self) -> Result<Val, ExprError> {
        let neg = self.eat('-');
        let mut acc = self.term()?;
        if neg {
            acc = negate(acc, self.ctx);
        }
        loop {
            if self.eat('+') {
                let t = self.term()?;
                acc = add(acc, t, self.ctx);
            } else if self.eat('-') {
                let t = self.term()?;
                acc = add(acc, negate(t, self.ctx), self.ctx);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Val, ExprError> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            let f = self.factor()?;
            acc = mul(acc, f, self.ctx)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Val, ExprError> {
        let field = self.ctx.field;
        match self.peek().cloned() {
            Some(Tok::Int(_)) => {
                let p = self.int()?;
                let q = if self.eat('/') { self.int()? } else { BigInt::from(1) };
                if q == BigInt::from(0) {
                    return Err(ExprError::DivisionByZero);
                }
                Ok(Val::Scalar(field.rational(BigRational::new(p, q))))
            }
            Some(Tok::Zeta) => {
                self.pos += 1;
                let k = if self.eat('^') {
                    let k = self.int()?;
                    i64::try_from(k).map_err(|_| self.error())?
                } else {
                    1
                };
                Ok(Val::Scalar(field.zeta_pow(k)))
            }
            Some(Tok::Vertex(v)) => {
                self.pos += 1;
                if v >= self.ctx.quiver.vertex_count() {
                    return Err(ExprError::BadVertex(v));
                }
                Ok(Val::Elem(Element::basis(Path::vertex(v), field)))
            }
            Some(Tok::Arrow(a)) => {
                self.pos += 1;
                let mut written = vec![a];
                while self.eat('.') {
                    match self.peek().cloned() {
                        Some(Tok::Arrow(b)) => {
                            self.pos += 1;
                            written.push(b);
                        }
                        _ => return Err(self.error()),
                    }
                }
                written.reverse();
                let path = Path::from_arrows(self.ctx.quiver, &written).ok_or(ExprError::NotAPath(written))?;
                Ok(Val::Elem(Element::basis(path, field)))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error());
                }
                Ok(v)
            }
            _ => Err(self.error()),
        }
    }
}

fn negate(v: Val, ctx: &Context<'_>) -> Val {
    let m = ctx.field.integer(-1);
    match v {
        Val::Scalar(c) => Val::Scalar(-&c),
        Val::Elem(e) => Val::Elem(e.scaled(&m)),
    }
}

fn add(a: Val, b: Val, ctx: &Context<'_>) -> Val {
    match (a, b) {
        (Val::Scalar(x), Val::Scalar(y)) => Val::Scalar(&x + &y),
        (a, b) => {
            let mut e = a.into_element(ctx);
            e.add(&b.into_element(ctx));
            Val::Elem(e)
        }
    }
}

fn mul(a: Val, b: Val, ctx: &Context<'_>) -> Result<Val, ExprError> {
    Ok(match (a, b) {
        (Val::Scalar(x), Val::Scalar(y)) => Val::Scalar(&x * &y),
        (Val::Scalar(c), Val::Elem(e)) | (Val::Elem(e), Val::Scalar(c)) => Val::Elem(e.scaled(&c)),
        (Val::Elem(x), Val::Elem(y)) => {
            let h = ctx.structure.ok_or(ExprError::NeedsStructure)?;
            Val::Elem(h.multiply(&x, &y)?)
        }
    })
}

fn parse(input: &str, ctx: &Context<'_>) -> Result<Val, ExprError> {
    let toks = lex(input)?;
    let mut p = Parser {
        input,
        toks,
        pos: 0,
        ctx,
    };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.error());
    }
    Ok(v)
}

/// Evaluates an element expression.
pub fn element(input: &str, ctx: &Context<'_>) -> Result<Element, ExprError> {
    Ok(parse(input, ctx)?.into_element(ctx))
}

/// Evaluates an expression that must be a scalar, such as `-1`, `1/2` or
/// `1 + z^3`.
pub fn scalar(input: &str, ctx: &Context<'_>) -> Result<Scalar, ExprError> {
    match parse(input, ctx)? {
        Val::Scalar(c) => Ok(c),
        Val::Elem(_) => Err(ExprError::NotScalar),
    }
}

/// Renders an element in the same grammar, e.g. `(1 + z)*a1.a0 - v2`.
pub fn render(x: &Element) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (p, c)) in x.terms().enumerate() {
        let path = if p.is_vertex() {
            format!("v{}", p.source)
        } else {
            p.arrows
                .iter()
                .rev()
                .map(|a| format!("a{a}"))
                .collect::<Vec<_>>()
                .join(".")
        };
        let coeff = c.to_string();
        let (neg, mag) = match coeff.strip_prefix('-') {
            Some(rest) if !rest.contains(' ') => (true, rest.to_string()),
            _ => (false, coeff.clone()),
        };
        if i > 0 {
            out.push_str(if neg { " - " } else { " + " });
        } else if neg {
            out.push('-');
        }
        if mag == "1" {
            out.push_str(&path);
        } else if mag.contains(' ') {
            out.push_str(&format!("({mag})*{path}"));
        } else {
            out.push_str(&format!("{mag}*{path}"));
        }
    }
    out
}
