//! Text front end: field descriptors, polynomials and positive combinations.
//!
//! Polynomial grammar (no implicit multiplication):
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*        divisors must be nonzero constants
//! unary := ('-' | '+') unary | power
//! power := atom ('^' digits)?
//! atom  := digits | ident | '(' expr ')'
//! ```
//!
//! Identifiers resolve to the given variables first, then to the generator
//! names of the field (`u` in `Fq(3,2,u^2+1)`, `t` in `FF(2,2,t)`).

use etale_core::field::FieldKind;
use etale_core::setalg::{Atom, Context, PositiveCombination, Relation};
use etale_core::{FieldDescriptor, FieldElement, MultiPoly};
use num_bigint::BigInt;

use crate::error::{LabError, LabResult};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
    Rel(Relation),
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
    end: usize,
}

fn parse_err<T>(pos: usize, msg: impl Into<String>) -> LabResult<T> {
    Err(LabError::Parse { pos, msg: msg.into() })
}

fn lex(s: &str, offset: usize) -> LabResult<Lexer> {
    let bytes = s.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let pos = offset + i;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            toks.push((Tok::Num(s[start..i].parse().expect("digits")), pos));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            let word = &s[start..i];
            if (word == "inP" || word == "inR") && bytes.get(i) == Some(&b'(') {
                let close = s[i..].find(')').map(|k| i + k);
                let Some(close) = close else { return parse_err(pos, "unclosed power relation") };
                let n: u32 = match s[i + 1..close].trim().parse() {
                    Ok(n) if n > 0 => n,
                    _ => return parse_err(offset + i + 1, "power index must be a positive integer"),
                };
                toks.push((Tok::Rel(if word == "inP" { Relation::InP(n) } else { Relation::InR(n) }), pos));
                i = close + 1;
            } else {
                toks.push((Tok::Ident(word.to_string()), pos));
            }
        } else if let Some((rel, len)) = relation_at(&s[i..]) {
            toks.push((Tok::Rel(rel), pos));
            i += len;
        } else if "+-*/^()[],|".contains(c) {
            toks.push((Tok::Sym(c), pos));
            i += 1;
        } else {
            return parse_err(pos, format!("unexpected character `{}`", &s[i..].chars().next().expect("nonempty")));
        }
    }
    Ok(Lexer { toks, end: offset + s.len() })
}

fn relation_at(s: &str) -> Option<(Relation, usize)> {
    let compact: String = s.chars().take(6).filter(|c| !c.is_whitespace()).collect();
    let table = [("!=0", Relation::Ne0), (">=0", Relation::Ge0), (">0", Relation::Gt0), ("=0", Relation::Eq0)];
    for (text, rel) in table {
        if compact.starts_with(text) {
            // consume the same characters in the original, skipping whitespace
            let mut need = text.len();
            let mut used = 0;
            for ch in s.chars() {
                used += ch.len_utf8();
                if !ch.is_whitespace() {
                    need -= 1;
                    if need == 0 {
                        break;
                    }
                }
            }
            return Some((rel, used));
        }
    }
    None
}

const MAX_EXPONENT: u64 = 1 << 16;
const MAX_DEPTH: usize = 256;

struct Parser<'a> {
    lx: Lexer,
    i: usize,
    depth: usize,
    field: &'a FieldDescriptor,
    vars: &'a [String],
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.lx.toks.get(self.i).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.lx.toks.get(self.i).map_or(self.lx.end, |(_, p)| *p)
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> LabResult<()> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            parse_err(self.pos(), format!("expected `{c}`"))
        }
    }

    fn expr(&mut self) -> LabResult<MultiPoly> {
        let mut acc = self.term()?;
        loop {
            if self.eat_sym('+') {
                acc = acc.checked_add(&self.term()?)?;
            } else if self.eat_sym('-') {
                acc = acc.checked_sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> LabResult<MultiPoly> {
        let mut acc = self.unary()?;
        loop {
            if self.eat_sym('*') {
                acc = acc.checked_mul(&self.unary()?)?;
            } else if self.peek() == Some(&Tok::Sym('/')) {
                let pos = self.pos();
                self.i += 1;
                let d = self.unary()?;
                let Some(c) = d.constant_value().filter(|c| !c.is_zero()) else {
                    return parse_err(pos, "division only by nonzero constants");
                };
                acc = acc.scale(&c.inv()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> LabResult<MultiPoly> {
        if self.eat_sym('-') {
            return Ok(-&self.unary()?);
        }
        if self.eat_sym('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> LabResult<MultiPoly> {
        let base = self.atom()?;
        if !self.eat_sym('^') {
            return Ok(base);
        }
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.i += 1;
                match u64::try_from(n) {
                    Ok(e) if e <= MAX_EXPONENT => Ok(base.pow(e)),
                    _ => parse_err(pos, format!("exponent exceeds {MAX_EXPONENT}")),
                }
            }
            _ => parse_err(pos, "exponent must be a nonnegative integer literal"),
        }
    }

    fn atom(&mut self) -> LabResult<MultiPoly> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.i += 1;
                Ok(MultiPoly::constant(self.field, self.vars, self.field.from_bigint(&n)))
            }
            Some(Tok::Ident(name)) => {
                self.i += 1;
                if self.vars.iter().any(|v| v == &name) {
                    return Ok(MultiPoly::var(self.field, self.vars, &name)?);
                }
                match named_constant(self.field, &name) {
                    Some(c) => Ok(MultiPoly::constant(self.field, self.vars, c)),
                    None => Err(LabError::UnknownVariable { name, pos }),
                }
            }
            Some(Tok::Sym('(')) => {
                self.i += 1;
                self.depth += 1;
                if self.depth > MAX_DEPTH {
                    return parse_err(pos, "parentheses nested too deeply");
                }
                let e = self.expr()?;
                self.expect_sym(')')?;
                self.depth -= 1;
                Ok(e)
            }
            Some(_) => parse_err(pos, "expected a number, variable or `(`"),
            None => parse_err(pos, "unexpected end of input"),
        }
    }

    fn finish(&self) -> LabResult<()> {
        if self.i < self.lx.toks.len() {
            return parse_err(self.pos(), "unexpected trailing input");
        }
        Ok(())
    }
}

/// The element named `name` among the generators of `fd`'s tower.
pub fn named_constant(fd: &FieldDescriptor, name: &str) -> Option<FieldElement> {
    match fd.kind() {
        FieldKind::Extension(e) => {
            if e.generator == name {
                fd.generator()
            } else {
                named_constant(&e.base, name).and_then(|c| fd.embed(&c).ok())
            }
        }
        FieldKind::Function(func) => {
            if func.var == name {
                fd.generator()
            } else {
                named_constant(&func.coeff, name).and_then(|c| fd.embed(&c).ok())
            }
        }
        _ => None,
    }
}

fn parse_poly_at(s: &str, offset: usize, vars: &[String], fd: &FieldDescriptor) -> LabResult<MultiPoly> {
    let mut p = Parser { lx: lex(s, offset)?, i: 0, depth: 0, field: fd, vars };
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

/// A polynomial over `fd` in exactly the variables `vars`.
pub fn parse_poly<S: AsRef<str>>(s: &str, vars: &[S], fd: &FieldDescriptor) -> LabResult<MultiPoly> {
    let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
    parse_poly_at(s, 0, &vars, fd)
}

/// Polynomial in its own single free identifier, for minimal polynomials.
fn parse_minpoly(s: &str, offset: usize, base: &FieldDescriptor) -> LabResult<(MultiPoly, String)> {
    let lx = lex(s, offset)?;
    let reserved = base.generator_names();
    let mut names: Vec<String> = Vec::new();
    for (t, _) in &lx.toks {
        if let Tok::Ident(n) = t {
            if !reserved.contains(n) && !names.contains(n) {
                names.push(n.clone());
            }
        }
    }
    if names.len() != 1 {
        return parse_err(offset, "minimal polynomial must use exactly one variable");
    }
    let p = parse_poly_at(s, offset, &names, base)?;
    Ok((p, names.pop().expect("one name")))
}

fn split_args(s: &str, open: usize) -> LabResult<Vec<(usize, &str)>> {
    if !s.ends_with(')') {
        return parse_err(s.len(), "expected `)`");
    }
    let inner = &s[open + 1..s.len() - 1];
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in inner.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push((open + 1 + start, &inner[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push((open + 1 + start, &inner[start..]));
    Ok(out)
}

fn parse_u64(arg: (usize, &str)) -> LabResult<u64> {
    arg.1.trim().parse().map_err(|_| LabError::Parse { pos: arg.0, msg: format!("expected an integer, got `{}`", arg.1) })
}

fn validation(e: etale_core::Error) -> LabError {
    LabError::Validation(e)
}

/// `Q` | `Fp(p)` | `Fq(p,d,minpoly)` | `Q(alpha,minpoly)` | `FF(p,d,t)`.
pub fn parse_field_spec(s: &str) -> LabResult<FieldDescriptor> {
    let s = s.trim();
    if s == "Q" {
        return Ok(FieldDescriptor::rationals());
    }
    let Some(open) = s.find('(') else {
        return parse_err(0, format!("unknown field `{s}`"));
    };
    let head = &s[..open];
    let args = split_args(s, open)?;
    let arity = |n: usize| -> LabResult<()> {
        if args.len() == n {
            Ok(())
        } else {
            parse_err(open, format!("`{head}` takes {n} arguments, got {}", args.len()))
        }
    };
    match head {
        "Fp" => {
            arity(1)?;
            FieldDescriptor::prime(parse_u64(args[0])?).map_err(validation)
        }
        "Fq" => {
            arity(3)?;
            let p = parse_u64(args[0])?;
            let d = parse_u64(args[1])? as usize;
            let base = FieldDescriptor::prime(p).map_err(validation)?;
            let (minpoly, _) = parse_minpoly(args[2].1, args[2].0, &base)?;
            if minpoly.total_degree() != d {
                return parse_err(args[2].0, format!("minimal polynomial has degree {}, expected {d}", minpoly.total_degree()));
            }
            base.make_extension(&minpoly).map_err(validation)
        }
        "Q" => {
            arity(2)?;
            let name = args[0].1.trim();
            let q = FieldDescriptor::rationals();
            let (minpoly, var) = parse_minpoly(args[1].1, args[1].0, &q)?;
            if var != name {
                return parse_err(args[1].0, format!("minimal polynomial must be in `{name}`"));
            }
            q.make_extension(&minpoly).map_err(validation)
        }
        "FF" => {
            arity(3)?;
            let p = parse_u64(args[0])?;
            let d = parse_u64(args[1])? as usize;
            let var = args[2].1.trim();
            if var.is_empty() || !var.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return parse_err(args[2].0, "expected a variable name");
            }
            let coeff_gen = if var == "u" { "w" } else { "u" };
            let coeff = FieldDescriptor::finite(p, d, coeff_gen).map_err(validation)?;
            FieldDescriptor::function_field(&coeff, var).map_err(validation)
        }
        _ => parse_err(0, format!("unknown field constructor `{head}`")),
    }
}

/// `ACF` | `RCF` | `PADIC(p)`.
pub fn parse_context(s: &str) -> LabResult<Context> {
    let s = s.trim();
    match s {
        "ACF" => Ok(Context::Acf),
        "RCF" => Ok(Context::Rcf),
        _ if s.starts_with("PADIC(") && s.ends_with(')') => Ok(Context::Padic(parse_u64((6, &s[6..s.len() - 1]))?)),
        _ => parse_err(0, format!("unknown context `{s}`")),
    }
}

/// Clauses in brackets joined by `|`, atoms `poly REL` separated by commas:
/// `[x^2 - 2 >0, x !=0] | [x =0]`. `[]` alone is the empty clause
/// (everything); `empty` is the empty union.
pub fn parse_combination<S: AsRef<str>>(
    s: &str,
    context: Context,
    vars: &[S],
    fd: &FieldDescriptor,
) -> LabResult<PositiveCombination> {
    let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
    let mut p = Parser { lx: lex(s, 0)?, i: 0, depth: 0, field: fd, vars: &vars };
    let mut clauses = Vec::new();
    if s.trim() == "empty" {
        return PositiveCombination::new(context, &vars, clauses).map_err(validation);
    }
    if p.peek().is_some() {
        loop {
            p.expect_sym('[')?;
            let mut clause = Vec::new();
            if !p.eat_sym(']') {
                loop {
                    let poly = p.expr()?;
                    let pos = p.pos();
                    let rel = match p.peek() {
                        Some(Tok::Rel(r)) => *r,
                        _ => return parse_err(pos, "expected a relation (!=0 =0 >0 >=0 inP(n) inR(n))"),
                    };
                    p.i += 1;
                    clause.push(Atom::new(poly, rel));
                    if p.eat_sym(']') {
                        break;
                    }
                    p.expect_sym(',')?;
                }
            }
            clauses.push(clause);
            if !p.eat_sym('|') {
                break;
            }
        }
    }
    p.finish()?;
    PositiveCombination::new(context, &vars, clauses).map_err(validation)
}

/// Comma-separated variable list.
pub fn parse_vars(s: &str) -> Vec<String> {
    s.split(',').map(str::trim).filter(|v| !v.is_empty()).map(String::from).collect()
}

/// A point `a,b,c` of field elements, each in the polynomial grammar.
pub fn parse_point(s: &str, fd: &FieldDescriptor) -> LabResult<Vec<FieldElement>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for part in s.split(',') {
        let p = parse_poly_at(part, offset, &[], fd)?;
        offset += part.len() + 1;
        out.push(p.constant_value().unwrap_or_else(|| fd.zero()));
    }
    Ok(out)
}
