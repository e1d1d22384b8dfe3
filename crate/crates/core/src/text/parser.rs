use std::collections::BTreeMap;

use num_traits::{ToPrimitive, Zero};

use super::error::{ParseError, Position};
use super::lexer::{tokenize, Tok, Token};
use crate::derivop::{Automorphism, Derivation};
use crate::error::{Error, Result};
use crate::exactalg::{MultiPoly, Rational, Ring, UniPoly, VarId};

/// Largest accepted exponent.
pub const MAX_EXPONENT: u32 = 64;
/// Largest number of terms any intermediate polynomial may have.
pub const MAX_TERMS: usize = 4096;
/// Largest number of declared variables.
pub const MAX_VARS: usize = 32;

fn err(pos: Position, msg: impl Into<String>) -> ParseError {
    ParseError { position: pos, message: msg.into() }
}

struct Cursor {
    toks: Vec<Token>,
    i: usize,
}

impl Cursor {
    fn new(text: &str) -> std::result::Result<Self, ParseError> {
        Ok(Cursor { toks: tokenize(text)?, i: 0 })
    }

    fn peek(&self) -> &Token {
        &self.toks[self.i]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.i].clone();
        if t.tok != Tok::Eof {
            self.i += 1;
        }
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if &self.peek().tok == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &Tok) -> std::result::Result<Position, ParseError> {
        let t = self.peek().clone();
        if &t.tok == tok {
            self.bump();
            Ok(t.pos)
        } else {
            Err(err(t.pos, format!("expected {}, found {}", tok.describe(), t.tok.describe())))
        }
    }

    fn ident(&mut self, what: &str) -> std::result::Result<(String, Position), ParseError> {
        let t = self.bump();
        match t.tok {
            Tok::Ident(s) => Ok((s, t.pos)),
            other => Err(err(t.pos, format!("expected {what}, found {}", other.describe()))),
        }
    }

    fn skip_newlines(&mut self) {
        while self.eat(&Tok::Newline) {}
    }

    fn end_of_line(&mut self) -> std::result::Result<(), ParseError> {
        let t = self.peek().clone();
        match t.tok {
            Tok::Newline | Tok::Eof => {
                self.bump();
                Ok(())
            }
            Tok::Ident(_) | Tok::Int(_) | Tok::LParen => {
                Err(err(t.pos, format!("expected an operator before {}; write products with `*`", t.tok.describe())))
            }
            other => Err(err(t.pos, format!("expected end of line, found {}", other.describe()))),
        }
    }
}

fn checked_size(p: MultiPoly, pos: Position) -> std::result::Result<MultiPoly, ParseError> {
    if p.num_terms() > MAX_TERMS {
        return Err(err(pos, format!("expression has more than {MAX_TERMS} terms")));
    }
    Ok(p)
}

fn mul(a: &MultiPoly, b: &MultiPoly, pos: Position) -> std::result::Result<MultiPoly, ParseError> {
    if a.num_terms().saturating_mul(b.num_terms()) > MAX_TERMS * 64 {
        return Err(err(pos, format!("expression has more than {MAX_TERMS} terms")));
    }
    checked_size(a * b, pos)
}

struct ExprParser<'a> {
    ring: &'a Ring,
}

impl ExprParser<'_> {
    fn sum(&self, c: &mut Cursor) -> std::result::Result<MultiPoly, ParseError> {
        let mut acc = self.product(c)?;
        loop {
            let pos = c.peek().pos;
            if c.eat(&Tok::Plus) {
                acc = checked_size(&acc + &self.product(c)?, pos)?;
            } else if c.eat(&Tok::Minus) {
                acc = checked_size(&acc - &self.product(c)?, pos)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&self, c: &mut Cursor) -> std::result::Result<MultiPoly, ParseError> {
        let mut acc = self.unary(c)?;
        loop {
            let pos = c.peek().pos;
            if c.eat(&Tok::Star) {
                acc = mul(&acc, &self.unary(c)?, pos)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&self, c: &mut Cursor) -> std::result::Result<MultiPoly, ParseError> {
        if c.eat(&Tok::Minus) {
            return Ok(-&self.unary(c)?);
        }
        if c.eat(&Tok::Plus) {
            return self.unary(c);
        }
        self.power(c)
    }

    fn power(&self, c: &mut Cursor) -> std::result::Result<MultiPoly, ParseError> {
        let base = self.atom(c)?;
        let pos = c.peek().pos;
        if !c.eat(&Tok::Caret) {
            return Ok(base);
        }
        let t = c.bump();
        let Tok::Int(n) = t.tok else {
            return Err(err(t.pos, format!("expected a nonnegative integer exponent, found {}", t.tok.describe())));
        };
        let exp = n
            .to_u32()
            .filter(|&e| e <= MAX_EXPONENT)
            .ok_or_else(|| err(t.pos, format!("exponent larger than {MAX_EXPONENT}")))?;
        if c.peek().tok == Tok::Caret {
            return Err(err(c.peek().pos, "chained exponents need parentheses"));
        }
        let mut acc = MultiPoly::one(base.nvars());
        for _ in 0..exp {
            acc = mul(&acc, &base, pos)?;
        }
        Ok(acc)
    }

    fn atom(&self, c: &mut Cursor) -> std::result::Result<MultiPoly, ParseError> {
        let n = self.ring.len();
        let t = c.bump();
        match t.tok {
            Tok::Int(num) => {
                let mut value = Rational::from_integer(num);
                if c.eat(&Tok::Slash) {
                    let dt = c.bump();
                    let Tok::Int(den) = dt.tok else {
                        return Err(err(dt.pos, "`/` is only allowed inside rational literals such as 3/2"));
                    };
                    if den.is_zero() {
                        return Err(err(dt.pos, "zero denominator"));
                    }
                    value /= Rational::from_integer(den);
                }
                Ok(MultiPoly::constant(n, value))
            }
            Tok::Ident(name) => match self.ring.var(&name) {
                Some(v) => Ok(MultiPoly::var(n, v)),
                None => Err(err(t.pos, format!("undeclared variable `{name}`"))),
            },
            Tok::LParen => {
                let inner = self.sum(c)?;
                c.expect(&Tok::RParen)?;
                Ok(inner)
            }
            other => Err(err(t.pos, format!("expected a number, variable or `(`, found {}", other.describe()))),
        }
    }
}

/// Parses a polynomial in the variables of `ring`.
pub fn parse_expr(text: &str, ring: &Ring) -> std::result::Result<MultiPoly, ParseError> {
    let mut c = Cursor::new(text)?;
    c.skip_newlines();
    let p = ExprParser { ring }.sum(&mut c)?;
    c.skip_newlines();
    let t = c.peek().clone();
    match t.tok {
        Tok::Eof => Ok(p),
        Tok::Ident(_) | Tok::Int(_) | Tok::LParen => {
            Err(err(t.pos, format!("expected an operator before {}; write products with `*`", t.tok.describe())))
        }
        other => Err(err(t.pos, format!("unexpected {}", other.describe()))),
    }
}

/// Parses a polynomial in `X` alone.
pub fn parse_uni(text: &str) -> std::result::Result<UniPoly, ParseError> {
    let ring = Ring::new(["X"]).expect("one name");
    Ok(parse_expr(text, &ring)?.to_uni(VarId::X).expect("single variable"))
}

/// `vars: X, Y, …`
fn vars_line(c: &mut Cursor) -> std::result::Result<(Ring, Position), ParseError> {
    let t = c.peek().clone();
    match &t.tok {
        Tok::Ident(s) if s == "vars" => {
            c.bump();
        }
        _ => return Err(err(t.pos, "expected a `vars:` declaration first")),
    }
    c.expect(&Tok::Colon)?;
    let mut names: Vec<String> = Vec::new();
    loop {
        let (name, pos) = c.ident("a variable name")?;
        if names.contains(&name) {
            return Err(err(pos, format!("variable `{name}` declared twice")));
        }
        if names.len() == MAX_VARS {
            return Err(err(pos, format!("more than {MAX_VARS} variables")));
        }
        names.push(name);
        if !c.eat(&Tok::Comma) {
            break;
        }
    }
    c.end_of_line()?;
    Ok((Ring::new(names).expect("distinct nonempty names"), t.pos))
}

/// One `head(v) = expr` line.
struct ImageLine {
    head: String,
    var: VarId,
    pos: Position,
    image: MultiPoly,
}

fn image_line(c: &mut Cursor, ring: &Ring, heads: &[&str]) -> std::result::Result<ImageLine, ParseError> {
    let (head, pos) = c.ident("an image line")?;
    if !heads.contains(&head.as_str()) {
        let expected: Vec<String> = heads.iter().map(|h| format!("`{h}(v) = ...`")).collect();
        return Err(err(pos, format!("expected {}, found `{head}`", expected.join(" or "))));
    }
    c.expect(&Tok::LParen)?;
    let (name, vpos) = c.ident("a variable name")?;
    let var = ring.var(&name).ok_or_else(|| err(vpos, format!("undeclared variable `{name}`")))?;
    c.expect(&Tok::RParen)?;
    c.expect(&Tok::Eq)?;
    let image = ExprParser { ring }.sum(c)?;
    c.end_of_line()?;
    Ok(ImageLine { head, var, pos, image })
}

fn image_lines(c: &mut Cursor, ring: &Ring, heads: &[&str]) -> std::result::Result<Vec<ImageLine>, ParseError> {
    let mut lines: Vec<ImageLine> = Vec::new();
    loop {
        c.skip_newlines();
        if c.peek().tok == Tok::Eof {
            return Ok(lines);
        }
        let line = image_line(c, ring, heads)?;
        if let Some(prev) = lines.iter().find(|l| l.head == line.head && l.var == line.var) {
            return Err(err(
                line.pos,
                format!(
                    "duplicate image for `{}({})`, first given at line {}",
                    line.head,
                    ring.name(line.var),
                    prev.pos.line
                ),
            ));
        }
        lines.push(line);
    }
}

/// Parses a derivation file: a `vars:` line followed by exactly one
/// `d(v) = expr` line per declared variable. The first declared variable
/// plays the role of `X`.
pub fn parse_derivation(text: &str) -> std::result::Result<Derivation, ParseError> {
    let mut c = Cursor::new(text)?;
    c.skip_newlines();
    let (ring, vars_pos) = vars_line(&mut c)?;
    let lines = image_lines(&mut c, &ring, &["d"])?;
    let mut images: BTreeMap<VarId, MultiPoly> = lines.into_iter().map(|l| (l.var, l.image)).collect();
    let mut ordered = Vec::with_capacity(ring.len());
    for v in ring.vars() {
        let image = images
            .remove(&v)
            .ok_or_else(|| err(vars_pos, format!("missing image line `d({}) = ...`", ring.name(v))))?;
        ordered.push(image);
    }
    Ok(Derivation::new(ring, ordered).expect("one image per variable, same ring"))
}

/// Parses an automorphism file of `rho(v) = expr` and `rhoinv(v) = expr`
/// lines over `ring`. A leading `vars:` line is optional and must then
/// match `ring`. Variables without a `rho` line are fixed.
///
/// Without `affine`, the inverse images must be given (`rhoinv` lines,
/// missing ones default to the variable itself) and both compositions are
/// checked. With `affine`, the forward images must have the shape
/// `X + α`, `C·Y + e(X)`, and the inverse is derived; any `rhoinv` lines
/// given must agree with it.
pub fn parse_automorphism(text: &str, ring: &Ring, affine: bool) -> Result<Automorphism> {
    let mut c = Cursor::new(text)?;
    c.skip_newlines();
    if matches!(&c.peek().tok, Tok::Ident(s) if s == "vars") {
        let (declared, pos) = vars_line(&mut c)?;
        if &declared != ring {
            return Err(err(pos, format!("declared variables {declared} do not match {ring}")).into());
        }
    }
    let lines = image_lines(&mut c, ring, &["rho", "rhoinv"])?;
    let mut forward: Vec<MultiPoly> = ring.vars().map(|v| MultiPoly::var(ring.len(), v)).collect();
    let mut inverse = forward.clone();
    let mut any_inverse = None;
    let mut nontrivial = None;
    for line in lines {
        if line.head == "rho" {
            if line.image != forward[line.var.0] {
                nontrivial.get_or_insert(line.pos);
            }
            forward[line.var.0] = line.image;
        } else {
            any_inverse.get_or_insert(line.pos);
            inverse[line.var.0] = line.image;
        }
    }
    if affine {
        let data = Automorphism::affine_data_of(ring, &forward).ok_or_else(|| {
            Error::NotAutomorphism(
                "with --affine every rho(v) must be affine: X + a, or linear in the Y variables plus a polynomial in X"
                    .into(),
            )
        })?;
        let rho = Automorphism::affine(ring.clone(), &data)?;
        if any_inverse.is_some() && rho.inverse_images() != inverse.as_slice() {
            return Err(Error::NotAutomorphism("the given rhoinv lines differ from the derived inverse".into()));
        }
        return Ok(rho);
    }
    if let (Some(pos), None) = (nontrivial, any_inverse) {
        return Err(err(pos, "rhoinv lines are required unless the inverse is derived with --affine").into());
    }
    Automorphism::new(ring.clone(), forward, inverse)
}

/// Canonical text of a polynomial: terms by increasing total degree, signs
/// normalized, `0` for the zero polynomial.
pub fn print_polynomial(p: &MultiPoly, ring: &Ring) -> String {
    p.display(ring)
}

pub fn print_derivation(d: &Derivation) -> String {
    let ring = d.ring();
    let mut out = format!("vars: {}\n", ring.names().join(", "));
    for v in ring.vars() {
        out.push_str(&format!("d({}) = {}\n", ring.name(v), d.image(v).display(ring)));
    }
    out
}

pub fn print_automorphism(rho: &Automorphism) -> String {
    let ring = rho.ring();
    let mut out = format!("vars: {}\n", ring.names().join(", "));
    for v in ring.vars() {
        out.push_str(&format!("rho({}) = {}\n", ring.name(v), rho.image(v).display(ring)));
    }
    for v in ring.vars() {
        out.push_str(&format!("rhoinv({}) = {}\n", ring.name(v), rho.inverse_images()[v.0].display(ring)));
    }
    out
}
