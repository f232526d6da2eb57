//! Algebra presentations: parsing, canonical serialization, the `B_n`
//! family and free products.
//!
//! Grammar (`#` comments run to end of line, whitespace is free):
//!
//! ```text
//! algebra <name> ;
//! kind (commutative | noncommutative) ;
//! generators <name>[:degree] ... ;
//! order (deglex | lex) <name> > <name> > ... ;
//! relations <poly> ; <poly> ; ... ;
//! ```
//!
//! `kind` may be abbreviated to a bare `commutative;` or `noncommutative;`.
//! Polynomials use `+ - * ^`, parentheses and integer or `p/q`
//! coefficients; `L = R` stands for `L - R`.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{CommMonomial, CommPoly, MonomialOrder, NcPoly, OrderKind, Scalar, Word};
use crate::error::{AlgebraError, ParseError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AlgebraKind {
    Commutative,
    Noncommutative,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub index: usize,
    pub name: String,
    pub degree: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Relations {
    Commutative(Vec<CommPoly>),
    Noncommutative(Vec<NcPoly>),
}

impl Relations {
    pub fn len(&self) -> usize {
        match self {
            Relations::Commutative(v) => v.len(),
            Relations::Noncommutative(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A finitely presented algebra: generators, an admissible order and a list
/// of relations. The augmentation sends every generator to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub name: String,
    pub kind: AlgebraKind,
    pub generators: Vec<Generator>,
    pub order: MonomialOrder,
    pub relations: Relations,
}

const KEYWORDS: &[&str] = &[
    "algebra",
    "kind",
    "commutative",
    "noncommutative",
    "generators",
    "order",
    "relations",
    "deglex",
    "lex",
];

impl Presentation {
    pub fn ngens(&self) -> usize {
        self.generators.len()
    }

    pub fn names(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.name.clone()).collect()
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.generators.iter().map(|g| g.degree).collect()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn nc_relations(&self) -> Option<&[NcPoly]> {
        match &self.relations {
            Relations::Noncommutative(v) => Some(v),
            Relations::Commutative(_) => None,
        }
    }

    pub fn comm_relations(&self) -> Option<&[CommPoly]> {
        match &self.relations {
            Relations::Commutative(v) => Some(v),
            Relations::Noncommutative(_) => None,
        }
    }

    /// True when every relation is homogeneous for the generator degrees.
    pub fn is_homogeneous(&self) -> bool {
        match &self.relations {
            Relations::Commutative(v) => v.iter().all(|p| p.is_homogeneous(&self.order)),
            Relations::Noncommutative(v) => v.iter().all(|p| p.is_homogeneous(&self.order)),
        }
    }

    /// Parses a single polynomial over this presentation's generators as an
    /// element of the free algebra.
    pub fn parse_nc_poly(&self, text: &str) -> Result<NcPoly, ParseError> {
        let expr = parse_standalone_expr(text)?;
        let index = self.name_index();
        let raw = eval(&expr, &index)?;
        Ok(NcPoly::from_terms(raw, &self.order))
    }

    /// Parses a single polynomial as a commutative polynomial.
    pub fn parse_comm_poly(&self, text: &str) -> Result<CommPoly, ParseError> {
        let expr = parse_standalone_expr(text)?;
        let index = self.name_index();
        let raw = eval(&expr, &index)?;
        Ok(commutative_image(raw, self.ngens(), &self.order))
    }

    fn name_index(&self) -> HashMap<String, usize> {
        self.generators.iter().map(|g| (g.name.clone(), g.index)).collect()
    }

    /// Canonical text form; parsing it gives back an equal presentation.
    pub fn serialize(&self) -> String {
        let names = self.names();
        let mut out = String::new();
        let _ = writeln!(out, "algebra {};", self.name);
        let kind = match self.kind {
            AlgebraKind::Commutative => "commutative",
            AlgebraKind::Noncommutative => "noncommutative",
        };
        let _ = writeln!(out, "kind {kind};");
        let gens: Vec<String> = self
            .generators
            .iter()
            .map(|g| {
                if g.degree == 1 {
                    g.name.clone()
                } else {
                    format!("{}:{}", g.name, g.degree)
                }
            })
            .collect();
        let _ = writeln!(out, "generators {};", gens.join(" "));
        let kind = match self.order.kind() {
            OrderKind::Deglex => "deglex",
            OrderKind::Lex => "lex",
        };
        let prec: Vec<&str> = self.order.precedence().iter().map(|&g| names[g].as_str()).collect();
        let _ = writeln!(out, "order {kind} {};", prec.join(" > "));
        let rels: Vec<String> = match &self.relations {
            Relations::Commutative(v) => v.iter().map(|p| p.display(&names).to_string()).collect(),
            Relations::Noncommutative(v) => v.iter().map(|p| p.display(&names).to_string()).collect(),
        };
        if !rels.is_empty() {
            out.push_str("relations\n");
            for r in rels {
                let _ = writeln!(out, "  {r};");
            }
        }
        out
    }
}

/// Builds `B_n`: generators `a0 b0 c0 ... an bn cn`, ordered
/// `an > bn > cn > ... > a0 > b0 > c0`.
pub fn make_bn(n: usize) -> Result<Presentation, AlgebraError> {
    if n < 1 {
        return Err(AlgebraError::BadFamilyIndex);
    }
    let a = |i: usize| (3 * i) as u16;
    let b = |i: usize| (3 * i + 1) as u16;
    let c = |i: usize| (3 * i + 2) as u16;
    let ngens = 3 * n + 3;
    let generators = (0..=n)
        .flat_map(|i| ["a", "b", "c"].into_iter().map(move |l| format!("{l}{i}")))
        .enumerate()
        .map(|(index, name)| Generator { index, name, degree: 1 })
        .collect();
    let precedence = (0..=n).rev().flat_map(|i| [3 * i, 3 * i + 1, 3 * i + 2]).collect();
    let order = MonomialOrder::deglex(precedence, vec![1; ngens])?;
    let mono = |l: Vec<u16>| NcPoly::word(Word::new(l));
    let mut rels = vec![mono(vec![a(n), b(n), c(n)]), mono(vec![c(0), a(0)])];
    for i in 0..n {
        let sum = NcPoly::from_terms(
            [
                (Word::new(vec![a(i), b(i), c(i)]), Scalar::one()),
                (Word::new(vec![c(i + 1), a(i + 1), b(i + 1)]), Scalar::one()),
            ],
            &order,
        );
        rels.push(sum);
        rels.push(mono(vec![b(i + 1), c(i + 1), a(i + 1)]));
        rels.push(mono(vec![c(i), c(i + 1)]));
        rels.push(mono(vec![b(i + 1), a(i)]));
    }
    Ok(Presentation {
        name: format!("B{n}"),
        kind: AlgebraKind::Noncommutative,
        generators,
        order,
        relations: Relations::Noncommutative(rels),
    })
}

/// Free product of two noncommutative presentations. Second-factor names
/// that collide get a `'` suffix; all of `p`'s generators rank above `q`'s.
pub fn free_product(p: &Presentation, q: &Presentation) -> Result<Presentation, AlgebraError> {
    let (Some(pr), Some(qr)) = (p.nc_relations(), q.nc_relations()) else {
        return Err(AlgebraError::CommutativeFreeProduct);
    };
    let offset = p.ngens();
    let mut generators = p.generators.clone();
    for g in &q.generators {
        let mut name = g.name.clone();
        while generators.iter().any(|h| h.name == name)
            || q.generators.iter().any(|h| h.index != g.index && h.name == name)
        {
            name.push('\'');
        }
        generators.push(Generator {
            index: offset + g.index,
            name,
            degree: g.degree,
        });
    }
    let precedence = p
        .order
        .precedence()
        .iter()
        .copied()
        .chain(q.order.precedence().iter().map(|&g| g + offset))
        .collect();
    let weights = generators.iter().map(|g| g.degree).collect();
    let order = MonomialOrder::deglex(precedence, weights)?;
    let shift = offset as u16;
    let mut rels: Vec<NcPoly> = pr.iter().map(|r| r.reorder(&order)).collect();
    rels.extend(qr.iter().map(|r| {
        NcPoly::from_terms(
            r.terms()
                .iter()
                .map(|(w, c)| (Word::new(w.letters().iter().map(|&l| l + shift).collect()), c.clone())),
            &order,
        )
    }));
    Ok(Presentation {
        name: format!("{}*{}", p.name, q.name),
        kind: AlgebraKind::Noncommutative,
        generators,
        order,
        relations: Relations::Noncommutative(rels),
    })
}

type OrderSpec = (OrderKind, Vec<(String, Pos)>, Pos);

/// Parses presentation text.
pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let tokens = tokenize(text)?;
    let mut p = Parser { tokens, pos: 0 };
    let mut name: Option<String> = None;
    let mut kind: Option<AlgebraKind> = None;
    let mut gens: Option<Vec<(String, u32, Pos)>> = None;
    let mut order_spec: Option<OrderSpec> = None;
    let mut rel_exprs: Vec<(Expr, Pos)> = Vec::new();

    while let Some(tok) = p.peek().cloned() {
        let kw = match &tok.kind {
            Tok::Ident(s) => s.clone(),
            _ => return Err(p.syntax_at(tok.pos, "expected a section keyword")),
        };
        p.bump();
        match kw.as_str() {
            "algebra" => {
                let (n, _) = p.ident("algebra name")?;
                name = Some(n);
                p.expect(';')?;
            }
            "kind" => {
                let (k, pos) = p.ident("commutative or noncommutative")?;
                kind = Some(match k.as_str() {
                    "commutative" => AlgebraKind::Commutative,
                    "noncommutative" => AlgebraKind::Noncommutative,
                    _ => return Err(p.syntax_at(pos, "expected commutative or noncommutative")),
                });
                p.expect(';')?;
            }
            "commutative" => {
                kind = Some(AlgebraKind::Commutative);
                p.expect(';')?;
            }
            "noncommutative" => {
                kind = Some(AlgebraKind::Noncommutative);
                p.expect(';')?;
            }
            "generators" => {
                let mut list = Vec::new();
                while !p.at(';') {
                    let (g, pos) = p.ident("generator name")?;
                    if KEYWORDS.contains(&g.as_str()) {
                        return Err(p.syntax_at(pos, "keyword used as generator name"));
                    }
                    let mut degree = 1;
                    if p.at(':') {
                        p.bump();
                        let (d, dpos) = p.integer()?;
                        degree = u32::try_from(d).ok().filter(|&d| d >= 1).ok_or(ParseError::Algebra {
                            line: dpos.line,
                            column: dpos.column,
                            source: AlgebraError::BadDegree,
                        })?;
                    }
                    list.push((g, degree, pos));
                }
                p.expect(';')?;
                gens = Some(list);
            }
            "order" => {
                let (k, kpos) = p.ident("deglex or lex")?;
                let ok = match k.as_str() {
                    "deglex" => OrderKind::Deglex,
                    "lex" => OrderKind::Lex,
                    _ => return Err(p.syntax_at(kpos, "expected deglex or lex")),
                };
                let mut names = Vec::new();
                if !p.at(';') {
                    names.push(p.ident("generator name")?);
                    while p.at('>') {
                        p.bump();
                        names.push(p.ident("generator name")?);
                    }
                }
                p.expect(';')?;
                order_spec = Some((ok, names, kpos));
            }
            "relations" => loop {
                match p.peek() {
                    None => break,
                    Some(Token {
                        kind: Tok::Ident(s), ..
                    }) if KEYWORDS.contains(&s.as_str()) => break,
                    Some(Token {
                        kind: Tok::Sym(';'), ..
                    }) => {
                        p.bump();
                    }
                    Some(t) => {
                        let pos = t.pos;
                        let e = p.relation()?;
                        p.expect(';')?;
                        rel_exprs.push((e, pos));
                    }
                }
            },
            _ => return Err(p.syntax_at(tok.pos, &format!("unknown section `{kw}`"))),
        }
    }

    let kind = kind.unwrap_or(AlgebraKind::Noncommutative);
    let gens = gens.unwrap_or_default();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut generators = Vec::with_capacity(gens.len());
    for (i, (g, degree, pos)) in gens.into_iter().enumerate() {
        if index.insert(g.clone(), i).is_some() {
            return Err(ParseError::DuplicateGenerator {
                line: pos.line,
                column: pos.column,
                name: g,
            });
        }
        generators.push(Generator {
            index: i,
            name: g,
            degree,
        });
    }
    let weights: Vec<u32> = generators.iter().map(|g| g.degree).collect();
    let order = match order_spec {
        None => MonomialOrder::deglex((0..generators.len()).collect(), weights)
            .expect("declaration order is a valid precedence"),
        Some((ok, names, kpos)) => {
            let algebra_err = |source| ParseError::Algebra {
                line: kpos.line,
                column: kpos.column,
                source,
            };
            if ok == OrderKind::Lex && kind == AlgebraKind::Noncommutative {
                return Err(algebra_err(AlgebraError::LexOnNoncommutative));
            }
            let mut prec = Vec::with_capacity(names.len());
            for (n, pos) in names {
                let g = *index.get(&n).ok_or(ParseError::UnknownGenerator {
                    line: pos.line,
                    column: pos.column,
                    name: n.clone(),
                })?;
                prec.push(g);
            }
            MonomialOrder::new(ok, prec, weights).map_err(algebra_err)?
        }
    };

    let mut nc = Vec::new();
    let mut comm = Vec::new();
    for (e, pos) in &rel_exprs {
        let raw = eval(e, &index)?;
        let zero = ParseError::ZeroRelation {
            line: pos.line,
            column: pos.column,
        };
        match kind {
            AlgebraKind::Noncommutative => {
                let poly = NcPoly::from_terms(raw, &order);
                if poly.is_zero() {
                    return Err(zero);
                }
                nc.push(poly);
            }
            AlgebraKind::Commutative => {
                let poly = commutative_image(raw, generators.len(), &order);
                if poly.is_zero() {
                    return Err(zero);
                }
                comm.push(poly);
            }
        }
    }
    let relations = match kind {
        AlgebraKind::Noncommutative => Relations::Noncommutative(nc),
        AlgebraKind::Commutative => Relations::Commutative(comm),
    };
    Ok(Presentation {
        name: name.unwrap_or_else(|| "A".to_string()),
        kind,
        generators,
        order,
        relations,
    })
}

fn commutative_image(raw: Vec<(Word, Scalar)>, nvars: usize, ord: &MonomialOrder) -> CommPoly {
    CommPoly::from_terms(
        raw.into_iter().map(|(w, c)| {
            let mut e = vec![0u32; nvars];
            for &l in w.letters() {
                e[l as usize] += 1;
            }
            (CommMonomial::new(e), c)
        }),
        ord,
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Pos {
    line: usize,
    column: usize,
}

impl From<(usize, usize)> for Pos {
    fn from((line, column): (usize, usize)) -> Self {
        Pos { line, column }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
}

#[derive(Clone, Debug)]
struct Token {
    kind: Tok,
    pos: Pos,
}

fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let ch = chars[i];
            let pos = Pos {
                line: lineno + 1,
                column: i + 1,
            };
            if ch == '#' {
                break;
            }
            if ch.is_whitespace() {
                i += 1;
            } else if ch.is_ascii_alphabetic() || ch == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                    i += 1;
                }
                out.push(Token {
                    kind: Tok::Ident(chars[start..i].iter().collect()),
                    pos,
                });
            } else if ch.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Token {
                    kind: Tok::Int(s.parse().expect("digits")),
                    pos,
                });
            } else if ";+-*^/()=>:".contains(ch) {
                out.push(Token {
                    kind: Tok::Sym(ch),
                    pos,
                });
                i += 1;
            } else {
                return Err(ParseError::Syntax {
                    line: pos.line,
                    column: pos.column,
                    message: format!("unexpected character `{ch}`"),
                });
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
enum Expr {
    Num(Scalar),
    Gen(String, Pos),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn at(&self, c: char) -> bool {
        matches!(self.peek(), Some(Token { kind: Tok::Sym(s), .. }) if *s == c)
    }

    fn end_pos(&self) -> Pos {
        self.tokens
            .last()
            .map(|t| Pos {
                line: t.pos.line,
                column: t.pos.column + 1,
            })
            .unwrap_or(Pos { line: 1, column: 1 })
    }

    fn here(&self) -> Pos {
        self.peek().map(|t| t.pos).unwrap_or_else(|| self.end_pos())
    }

    fn syntax_at(&self, pos: Pos, message: &str) -> ParseError {
        ParseError::Syntax {
            line: pos.line,
            column: pos.column,
            message: message.to_string(),
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.at(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.syntax_at(self.here(), &format!("expected `{c}`")))
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, Pos), ParseError> {
        match self.peek() {
            Some(Token {
                kind: Tok::Ident(s),
                pos,
            }) => {
                let r = (s.clone(), *pos);
                self.bump();
                Ok(r)
            }
            _ => Err(self.syntax_at(self.here(), &format!("expected {what}"))),
        }
    }

    fn integer(&mut self) -> Result<(BigInt, Pos), ParseError> {
        match self.peek() {
            Some(Token { kind: Tok::Int(n), pos }) => {
                let r = (n.clone(), *pos);
                self.bump();
                Ok(r)
            }
            _ => Err(self.syntax_at(self.here(), "expected an integer")),
        }
    }

    fn relation(&mut self) -> Result<Expr, ParseError> {
        let lhs = self.expr()?;
        if self.at('=') {
            self.bump();
            let rhs = self.expr()?;
            Ok(Expr::Sub(Box::new(lhs), Box::new(rhs)))
        } else {
            Ok(lhs)
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut acc = if self.at('-') {
            self.bump();
            Expr::Neg(Box::new(self.term()?))
        } else {
            if self.at('+') {
                self.bump();
            }
            self.term()?
        };
        loop {
            if self.at('+') {
                self.bump();
                acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.at('-') {
                self.bump();
                acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.factor()?;
        while self.at('*') {
            self.bump();
            acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.at('^') {
            self.bump();
            let (e, pos) = self.integer()?;
            let e = u32::try_from(e).map_err(|_| self.syntax_at(pos, "exponent too large"))?;
            Ok(Expr::Pow(Box::new(base), e))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let tok = self
            .peek()
            .cloned()
            .ok_or_else(|| self.syntax_at(self.end_pos(), "unexpected end of input"))?;
        match tok.kind {
            Tok::Int(n) => {
                self.bump();
                if self.at('/') {
                    self.bump();
                    let (d, dpos) = self.integer()?;
                    if d.is_zero() {
                        return Err(self.syntax_at(dpos, "zero denominator"));
                    }
                    Ok(Expr::Num(Scalar::new(n, d)))
                } else {
                    Ok(Expr::Num(Scalar::from_integer(n)))
                }
            }
            Tok::Ident(s) => {
                if KEYWORDS.contains(&s.as_str()) {
                    return Err(self.syntax_at(tok.pos, "expected a polynomial"));
                }
                self.bump();
                Ok(Expr::Gen(s, tok.pos))
            }
            Tok::Sym('(') => {
                self.bump();
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            _ => Err(self.syntax_at(tok.pos, "expected a polynomial")),
        }
    }
}

fn parse_standalone_expr(text: &str) -> Result<Expr, ParseError> {
    let tokens = tokenize(text)?;
    let mut p = Parser { tokens, pos: 0 };
    let e = p.relation()?;
    if p.at(';') {
        p.bump();
    }
    match p.peek() {
        None => Ok(e),
        Some(t) => Err(p.syntax_at(t.pos, "trailing input")),
    }
}

type RawPoly = Vec<(Word, Scalar)>;

fn eval(e: &Expr, index: &HashMap<String, usize>) -> Result<RawPoly, ParseError> {
    Ok(match e {
        Expr::Num(c) => vec![(Word::empty(), c.clone())],
        Expr::Gen(name, pos) => {
            let g = *index.get(name).ok_or(ParseError::UnknownGenerator {
                line: pos.line,
                column: pos.column,
                name: name.clone(),
            })?;
            vec![(Word::letter(g), Scalar::one())]
        }
        Expr::Neg(a) => eval(a, index)?.into_iter().map(|(w, c)| (w, -c)).collect(),
        Expr::Add(a, b) => {
            let mut v = eval(a, index)?;
            v.extend(eval(b, index)?);
            v
        }
        Expr::Sub(a, b) => {
            let mut v = eval(a, index)?;
            v.extend(eval(b, index)?.into_iter().map(|(w, c)| (w, -c)));
            v
        }
        Expr::Mul(a, b) => raw_mul(&eval(a, index)?, &eval(b, index)?),
        Expr::Pow(a, k) => {
            let base = eval(a, index)?;
            let mut acc = vec![(Word::empty(), Scalar::one())];
            for _ in 0..*k {
                acc = raw_mul(&acc, &base);
            }
            acc
        }
    })
}

fn raw_mul(a: &RawPoly, b: &RawPoly) -> RawPoly {
    a.iter()
        .flat_map(|(u, x)| b.iter().map(move |(v, y)| (u.concat(v), x * y)))
        .collect()
}
