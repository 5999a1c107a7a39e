//! Line-oriented session format.
//!
//! ```text
//! ring R weights 2 3 5 field QQ
//! ideal m = x0, x1, x2
//! resolve m
//! ```
//!
//! A trailing `\` continues a statement on the next line and `#` starts a
//! comment. Names must be declared before use; ideals and modules belong to
//! the most recent `ring` (or the one selected with `use`).

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use gsw_core::lattice::{transpose, Matrix};
use gsw_core::toric::{class_group_degrees, Fan};
use gsw_core::{FieldKind, Grading};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub pos: Pos,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.pos, self.message)
    }
}

impl std::error::Error for ParseError {}

type PResult<T> = std::result::Result<T, ParseError>;

/// A parsed matrix entry with its degree and position.
type Entry = (Poly, Option<Vec<i64>>, Pos);

/// A polynomial with rational coefficients; exponents are in declaration
/// order of the variables. Terms are sorted and nonzero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly(pub Vec<(Vec<u32>, BigRational)>);

impl Poly {
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, BigRational)>) -> Self {
        let mut acc: BTreeMap<Vec<u32>, BigRational> = BTreeMap::new();
        for (mut e, c) in terms {
            e.resize(nvars, 0);
            *acc.entry(e).or_insert_with(BigRational::zero) += c;
        }
        let mut terms: Vec<(Vec<u32>, BigRational)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then(b.0.cmp(&a.0))
        });
        Poly(terms)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.0.iter().enumerate() {
            let neg = c < &BigRational::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mon: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| if x == 1 { format!("x{i}") } else { format!("x{i}^{x}") })
                .collect();
            if mon.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&mon.join("*"))?;
            } else {
                write!(f, "{abs}*{}", mon.join("*"))?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GradingSpec {
    Weights(Vec<i64>),
    /// One degree vector per variable.
    Degrees(Vec<Vec<i64>>),
    Fan(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingDecl {
    pub name: String,
    pub grading: GradingSpec,
    pub field: FieldKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanDecl {
    pub name: String,
    pub rays: Matrix,
    pub cones: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealDecl {
    pub name: String,
    pub ring: String,
    pub gens: Vec<Poly>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleExpr {
    /// Cokernel of a matrix given by rows; `twists` are the generator
    /// degrees of the target.
    Coker { rows: Vec<Vec<Poly>>, twists: Vec<Vec<i64>> },
    Quotient(String),
    Ideal(String),
    Free(Vec<Vec<i64>>),
    Residue,
    Sum(Vec<String>),
    Twist(String, Vec<i64>),
    /// `M_{≥a}(a)`.
    Truncate(String, Vec<i64>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleDecl {
    pub name: String,
    pub ring: String,
    pub expr: ModuleExpr,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RegularityKind {
    Koszul,
    Weighted,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Theorem {
    A,
    B,
    Symonds,
    Cor17,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Betti { module: String },
    Resolve { module: String, length: Option<usize> },
    Regularity { module: String, kind: RegularityKind },
    Cohomology { module: String },
    Truncate { module: String, at: Vec<i64>, twist: bool },
    Verify { module: String, theorem: Theorem },
    ToricPolytope { fan: String, i: usize, plot: bool },
    ToricCheck { fan: String, module: String, assume_hypothesis: bool },
    BggCheck { module: String, lo: i64, hi: i64 },
    Dump { name: String, presentation: bool },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Statement {
    Ring(RingDecl),
    Fan(FanDecl),
    Ideal(IdealDecl),
    Module(ModuleDecl),
    Use(String),
    Command(Command),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Session {
    pub statements: Vec<(Pos, Statement)>,
}

impl Session {
    pub fn declarations(&self) -> impl Iterator<Item = &Statement> {
        self.statements
            .iter()
            .map(|(_, s)| s)
            .filter(|s| !matches!(s, Statement::Command(_)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(String),
    Flag(String),
    Sym(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    col: usize,
}

fn tokenize(line: usize, text: &str) -> PResult<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c == '#' {
            break;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '.') {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                col,
            });
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Int(chars[start..i].iter().collect()),
                col,
            });
        } else if c == '-' && chars.get(i + 1) == Some(&'-') && chars.get(i + 2).is_some_and(|c| c.is_ascii_alphabetic()) {
            let start = i + 2;
            i = start;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '-') {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Flag(chars[start..i].iter().collect()),
                col,
            });
        } else if "=[](),+-*^/".contains(c) {
            out.push(Token { tok: Tok::Sym(c), col });
            i += 1;
        } else {
            return Err(ParseError {
                pos: Pos { line, col },
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
struct RingInfo {
    /// Degree of each variable in declaration order.
    degrees: Vec<Vec<i64>>,
    fan: Option<String>,
}

impl RingInfo {
    fn rank(&self) -> usize {
        self.degrees[0].len()
    }

    fn nvars(&self) -> usize {
        self.degrees.len()
    }

    fn degree_of(&self, e: &[u32]) -> Vec<i64> {
        let mut d = vec![0; self.rank()];
        for (i, &x) in e.iter().enumerate() {
            for (k, v) in d.iter_mut().enumerate() {
                *v += x as i64 * self.degrees[i][k];
            }
        }
        d
    }
}

#[derive(Clone, Debug)]
enum Symbol {
    Ring(RingInfo),
    Fan,
    Ideal { ring: String },
    Module { ring: String },
}

struct Parser {
    symbols: HashMap<String, Symbol>,
    fans: HashMap<String, Fan>,
    current_ring: Option<String>,
}

struct Cursor<'a> {
    toks: &'a [Token],
    i: usize,
    line: usize,
    end_col: usize,
}

impl<'a> Cursor<'a> {
    fn pos(&self) -> Pos {
        Pos {
            line: self.line,
            col: self.toks.get(self.i).map_or(self.end_col, |t| t.col),
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> PResult<T> {
        Err(ParseError {
            pos: self.pos(),
            message: message.into(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.tok)
    }

    fn next(&mut self) -> Option<&Tok> {
        let t = self.toks.get(self.i).map(|t| &t.tok);
        self.i += 1;
        t
    }

    fn at_end(&self) -> bool {
        self.i >= self.toks.len()
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> PResult<()> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn eat_keyword(&mut self, k: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Ident(s)) if s == k) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect_keyword(&mut self, k: &str) -> PResult<()> {
        if self.eat_keyword(k) {
            Ok(())
        } else {
            self.err(format!("expected `{k}`"))
        }
    }

    fn ident(&mut self, what: &str) -> PResult<String> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.i += 1;
                Ok(s)
            }
            _ => self.err(format!("expected {what}")),
        }
    }

    fn int(&mut self) -> PResult<i64> {
        let neg = self.eat_sym('-');
        match self.peek() {
            Some(Tok::Int(s)) => {
                let v: i64 = match s.parse() {
                    Ok(v) => v,
                    Err(_) => return self.err("integer out of range"),
                };
                self.i += 1;
                Ok(if neg { -v } else { v })
            }
            _ => self.err("expected an integer"),
        }
    }

    fn usize(&mut self) -> PResult<usize> {
        let p = self.pos();
        let v = self.int()?;
        usize::try_from(v).map_err(|_| ParseError {
            pos: p,
            message: "expected a nonnegative integer".into(),
        })
    }

    fn is_int_start(&self) -> bool {
        match self.peek() {
            Some(Tok::Int(_)) => true,
            Some(Tok::Sym('-')) => matches!(self.toks.get(self.i + 1).map(|t| &t.tok), Some(Tok::Int(_))),
            _ => false,
        }
    }

    fn int_list(&mut self) -> PResult<Vec<i64>> {
        self.expect_sym('[')?;
        let mut out = Vec::new();
        if self.eat_sym(']') {
            return Ok(out);
        }
        loop {
            out.push(self.int()?);
            if self.eat_sym(']') {
                return Ok(out);
            }
            self.expect_sym(',')?;
        }
    }

    fn int_matrix(&mut self) -> PResult<Vec<Vec<i64>>> {
        self.expect_sym('[')?;
        let mut out = Vec::new();
        if self.eat_sym(']') {
            return Ok(out);
        }
        loop {
            out.push(self.int_list()?);
            if self.eat_sym(']') {
                return Ok(out);
            }
            self.expect_sym(',')?;
        }
    }

    /// `5`, `-2`, `(2,3)` or `[2,3]`.
    fn degree(&mut self, rank: usize) -> PResult<Vec<i64>> {
        let p = self.pos();
        let d = if self.is_int_start() {
            vec![self.int()?]
        } else if self.peek() == Some(&Tok::Sym('(')) {
            self.i += 1;
            let mut v = vec![self.int()?];
            while self.eat_sym(',') {
                v.push(self.int()?);
            }
            self.expect_sym(')')?;
            v
        } else if self.peek() == Some(&Tok::Sym('[')) {
            self.int_list()?
        } else {
            return self.err("expected a degree");
        };
        if d.len() != rank {
            return Err(ParseError {
                pos: p,
                message: format!("degree has {} entries, the grading has rank {rank}", d.len()),
            });
        }
        Ok(d)
    }

    fn flag(&mut self) -> Option<String> {
        match self.peek() {
            Some(Tok::Flag(f)) => {
                let f = f.clone();
                self.i += 1;
                Some(f)
            }
            _ => None,
        }
    }

    fn finish(&self) -> PResult<()> {
        if self.at_end() {
            Ok(())
        } else {
            self.err("unexpected trailing input")
        }
    }
}

fn rational(s: &str) -> BigRational {
    BigRational::from_integer(s.parse::<BigInt>().expect("digits"))
}

impl Parser {
    fn new() -> Self {
        Parser {
            symbols: HashMap::new(),
            fans: HashMap::new(),
            current_ring: None,
        }
    }

    fn ring_info(&self, name: &str) -> &RingInfo {
        match self.symbols.get(name) {
            Some(Symbol::Ring(r)) => r,
            _ => unreachable!("ring names are checked on declaration"),
        }
    }

    fn declare(&mut self, c: &Cursor, name: &str, sym: Symbol) -> PResult<()> {
        if self.symbols.contains_key(name) {
            return c.err(format!("`{name}` is already declared"));
        }
        self.symbols.insert(name.to_string(), sym);
        Ok(())
    }

    fn current_ring(&self, c: &Cursor) -> PResult<String> {
        match &self.current_ring {
            Some(r) => Ok(r.clone()),
            None => c.err("no ring declared yet"),
        }
    }

    /// A module or ideal name, returning its ring.
    fn module_ref(&self, c: &mut Cursor) -> PResult<(String, String)> {
        let p = c.pos();
        let name = c.ident("a module or ideal name")?;
        match self.symbols.get(&name) {
            Some(Symbol::Module { ring }) | Some(Symbol::Ideal { ring }) => Ok((name, ring.clone())),
            Some(_) => Err(ParseError {
                pos: p,
                message: format!("`{name}` is not a module or ideal"),
            }),
            None => Err(ParseError {
                pos: p,
                message: format!("`{name}` is not declared"),
            }),
        }
    }

    fn ideal_ref(&self, c: &mut Cursor, ring: &str) -> PResult<String> {
        let p = c.pos();
        let name = c.ident("an ideal name")?;
        match self.symbols.get(&name) {
            Some(Symbol::Ideal { ring: r }) if r == ring => Ok(name),
            Some(Symbol::Ideal { .. }) => Err(ParseError {
                pos: p,
                message: format!("`{name}` belongs to another ring"),
            }),
            Some(_) => Err(ParseError {
                pos: p,
                message: format!("`{name}` is not an ideal"),
            }),
            None => Err(ParseError {
                pos: p,
                message: format!("`{name}` is not declared"),
            }),
        }
    }

    fn fan_ref(&self, c: &mut Cursor) -> PResult<String> {
        let p = c.pos();
        let name = c.ident("a fan name")?;
        match self.symbols.get(&name) {
            Some(Symbol::Fan) => Ok(name),
            _ => Err(ParseError {
                pos: p,
                message: format!("`{name}` is not a declared fan"),
            }),
        }
    }

    /// A polynomial, checked to be homogeneous; returns it with its degree
    /// (`None` for zero).
    fn poly(&self, c: &mut Cursor, ring: &RingInfo) -> PResult<(Poly, Option<Vec<i64>>, Pos)> {
        let start = c.pos();
        let n = ring.nvars();
        let mut terms: Vec<(Vec<u32>, BigRational, Pos)> = Vec::new();
        let mut first = true;
        loop {
            let mut sign = BigRational::one();
            if c.eat_sym('-') {
                sign = -sign;
            } else if !first && !c.eat_sym('+') {
                break;
            }
            first = false;
            let tpos = c.pos();
            let mut coeff = sign;
            let mut exps = vec![0u32; n];
            loop {
                match c.peek().cloned() {
                    Some(Tok::Int(s)) => {
                        c.i += 1;
                        let mut v = rational(&s);
                        if c.eat_sym('/') {
                            let dp = c.pos();
                            match c.next().cloned() {
                                Some(Tok::Int(d)) if d.parse::<BigInt>().is_ok_and(|d| !d.is_zero()) => {
                                    v /= rational(&d);
                                }
                                _ => {
                                    return Err(ParseError {
                                        pos: dp,
                                        message: "expected a nonzero denominator".into(),
                                    })
                                }
                            }
                        }
                        coeff *= v;
                    }
                    Some(Tok::Ident(s)) => {
                        let idx = s
                            .strip_prefix('x')
                            .and_then(|d| d.parse::<usize>().ok())
                            .filter(|&i| i < n);
                        let Some(idx) = idx else {
                            return c.err(format!("unknown variable `{s}` (variables are x0..x{})", n - 1));
                        };
                        c.i += 1;
                        let mut e = 1u32;
                        if c.eat_sym('^') {
                            let p = c.pos();
                            e = u32::try_from(c.usize()?).map_err(|_| ParseError {
                                pos: p,
                                message: "exponent too large".into(),
                            })?;
                        }
                        exps[idx] += e;
                    }
                    _ => return c.err("expected a coefficient or a variable"),
                }
                if !c.eat_sym('*') {
                    break;
                }
            }
            terms.push((exps, coeff, tpos));
        }
        let mut degree: Option<Vec<i64>> = None;
        for (e, coeff, p) in &terms {
            if coeff.is_zero() {
                continue;
            }
            let d = ring.degree_of(e);
            match &degree {
                None => degree = Some(d),
                Some(d0) if *d0 != d => {
                    return Err(ParseError {
                        pos: *p,
                        message: format!(
                            "inhomogeneous polynomial: term of degree {d:?}, expected {d0:?}"
                        ),
                    })
                }
                _ => {}
            }
        }
        let poly = Poly::from_terms(n, terms.into_iter().map(|(e, c, _)| (e, c)));
        if poly.is_zero() {
            degree = None;
        }
        Ok((poly, degree, start))
    }

    fn statement(&mut self, c: &mut Cursor) -> PResult<Statement> {
        let kw = c.ident("a statement")?;
        match kw.as_str() {
            "ring" => self.ring_decl(c),
            "fan" => self.fan_decl(c),
            "ideal" => self.ideal_decl(c),
            "module" => self.module_decl(c),
            "use" => {
                let p = c.pos();
                let name = c.ident("a ring name")?;
                if !matches!(self.symbols.get(&name), Some(Symbol::Ring(_))) {
                    return Err(ParseError {
                        pos: p,
                        message: format!("`{name}` is not a declared ring"),
                    });
                }
                c.finish()?;
                self.current_ring = Some(name.clone());
                Ok(Statement::Use(name))
            }
            _ => {
                c.i -= 1;
                self.command(c).map(Statement::Command)
            }
        }
    }

    fn field(&self, c: &mut Cursor) -> PResult<FieldKind> {
        if !c.eat_keyword("field") {
            return Ok(FieldKind::Rationals);
        }
        let p = c.pos();
        let f = c.ident("a field")?;
        match f.as_str() {
            "QQ" => Ok(FieldKind::Rationals),
            "GF" => {
                c.expect_sym('(')?;
                let pp = c.pos();
                let q = c.int()?;
                c.expect_sym(')')?;
                u32::try_from(q)
                    .ok()
                    .and_then(|q| FieldKind::prime(q).ok())
                    .ok_or_else(|| ParseError {
                        pos: pp,
                        message: format!("{q} is not a supported prime"),
                    })
            }
            _ => Err(ParseError {
                pos: p,
                message: format!("unknown field `{f}` (expected QQ or GF(p))"),
            }),
        }
    }

    fn ring_decl(&mut self, c: &mut Cursor) -> PResult<Statement> {
        let name = c.ident("a ring name")?;
        let p = c.pos();
        let (grading, info) = if c.eat_keyword("weights") {
            let mut w = Vec::new();
            while c.is_int_start() {
                w.push(c.int()?);
            }
            Grading::weighted(&w).map_err(|e| ParseError {
                pos: p,
                message: e.to_string(),
            })?;
            let degrees = w.iter().map(|&x| vec![x]).collect();
            (GradingSpec::Weights(w), RingInfo { degrees, fan: None })
        } else if c.eat_keyword("degrees") {
            let d = c.int_matrix()?;
            Grading::multigraded(&d).map_err(|e| ParseError {
                pos: p,
                message: e.to_string(),
            })?;
            (
                GradingSpec::Degrees(d.clone()),
                RingInfo {
                    degrees: d,
                    fan: None,
                },
            )
        } else if c.eat_keyword("fan") {
            let fan = self.fan_ref(c)?;
            let degrees = self.fan_degrees(&fan).map_err(|m| ParseError { pos: p, message: m })?;
            (GradingSpec::Fan(fan.clone()), RingInfo { degrees, fan: Some(fan) })
        } else {
            return c.err("expected `weights`, `degrees` or `fan`");
        };
        let field = self.field(c)?;
        c.finish()?;
        self.declare(c, &name, Symbol::Ring(info))?;
        self.current_ring = Some(name.clone());
        Ok(Statement::Ring(RingDecl { name, grading, field }))
    }

    fn fan_degrees(&self, fan: &str) -> std::result::Result<Vec<Vec<i64>>, String> {
        let f = self.fans.get(fan).expect("declared fan");
        let d = class_group_degrees(f).map_err(|e| e.to_string())?;
        Ok(transpose(&d))
    }

    fn fan_decl(&mut self, c: &mut Cursor) -> PResult<Statement> {
        let name = c.ident("a fan name")?;
        c.expect_keyword("rays")?;
        let p = c.pos();
        let rays = c.int_matrix()?;
        c.expect_keyword("cones")?;
        let cones = c.int_matrix()?;
        c.finish()?;
        let cones: Vec<Vec<usize>> = cones
            .into_iter()
            .map(|cone| cone.into_iter().map(|i| usize::try_from(i).unwrap_or(usize::MAX)).collect())
            .collect();
        let fan = Fan::new(rays.clone(), cones.clone()).map_err(|e| ParseError {
            pos: p,
            message: e.to_string(),
        })?;
        self.declare(c, &name, Symbol::Fan)?;
        self.fans.insert(name.clone(), fan);
        Ok(Statement::Fan(FanDecl { name, rays, cones }))
    }

    fn ideal_decl(&mut self, c: &mut Cursor) -> PResult<Statement> {
        let name = c.ident("an ideal name")?;
        let ring = self.current_ring(c)?;
        c.expect_sym('=')?;
        let info = self.ring_info(&ring).clone();
        let mut gens = Vec::new();
        if !c.at_end() {
            loop {
                gens.push(self.poly(c, &info)?.0);
                if !c.eat_sym(',') {
                    break;
                }
            }
        }
        c.finish()?;
        self.declare(c, &name, Symbol::Ideal { ring: ring.clone() })?;
        Ok(Statement::Ideal(IdealDecl { name, ring, gens }))
    }

    fn degree_list(&self, c: &mut Cursor, rank: usize) -> PResult<Vec<Vec<i64>>> {
        let mut out = Vec::new();
        while c.is_int_start() || matches!(c.peek(), Some(Tok::Sym('(')) | Some(Tok::Sym('['))) {
            out.push(c.degree(rank)?);
        }
        Ok(out)
    }

    fn module_decl(&mut self, c: &mut Cursor) -> PResult<Statement> {
        let name = c.ident("a module name")?;
        let ring = self.current_ring(c)?;
        c.expect_sym('=')?;
        let info = self.ring_info(&ring).clone();
        let rank = info.rank();
        let p = c.pos();
        let op = c.ident("a module expression")?;
        let same_ring = |this: &Parser, c: &mut Cursor| -> PResult<String> {
            let p = c.pos();
            let (m, r) = this.module_ref(c)?;
            if r != ring {
                return Err(ParseError {
                    pos: p,
                    message: format!("`{m}` belongs to ring `{r}`, not `{ring}`"),
                });
            }
            Ok(m)
        };
        let expr = match op.as_str() {
            "coker" => {
                let rows = self.poly_matrix(c, &info)?;
                let twists = if c.eat_keyword("twists") {
                    self.degree_list(c, rank)?
                } else {
                    vec![vec![0; rank]; rows.len()]
                };
                if twists.len() != rows.len() {
                    return c.err(format!("{} twists for {} rows", twists.len(), rows.len()));
                }
                self.check_matrix(&rows, &twists)?;
                ModuleExpr::Coker {
                    rows: rows.into_iter().map(|r| r.into_iter().map(|(p, _, _)| p).collect()).collect(),
                    twists,
                }
            }
            "quotient" => ModuleExpr::Quotient(self.ideal_ref(c, &ring)?),
            "ideal" => ModuleExpr::Ideal(self.ideal_ref(c, &ring)?),
            "free" => ModuleExpr::Free(self.degree_list(c, rank)?),
            "residue" => ModuleExpr::Residue,
            "sum" => {
                let mut parts = vec![same_ring(self, c)?];
                while !c.at_end() {
                    parts.push(same_ring(self, c)?);
                }
                ModuleExpr::Sum(parts)
            }
            "twist" => {
                let m = same_ring(self, c)?;
                ModuleExpr::Twist(m, c.degree(rank)?)
            }
            "truncate" => {
                let m = same_ring(self, c)?;
                c.expect_keyword("at")?;
                ModuleExpr::Truncate(m, c.degree(rank)?)
            }
            _ => {
                return Err(ParseError {
                    pos: p,
                    message: format!("unknown module expression `{op}`"),
                })
            }
        };
        c.finish()?;
        self.declare(c, &name, Symbol::Module { ring: ring.clone() })?;
        Ok(Statement::Module(ModuleDecl { name, ring, expr }))
    }

    fn poly_matrix(&self, c: &mut Cursor, info: &RingInfo) -> PResult<Vec<Vec<Entry>>> {
        c.expect_sym('[')?;
        let mut rows = Vec::new();
        if c.eat_sym(']') {
            return Ok(rows);
        }
        loop {
            c.expect_sym('[')?;
            let mut row = Vec::new();
            if !c.eat_sym(']') {
                loop {
                    row.push(self.poly(c, info)?);
                    if c.eat_sym(']') {
                        break;
                    }
                    c.expect_sym(',')?;
                }
            }
            rows.push(row);
            if c.eat_sym(']') {
                break;
            }
            c.expect_sym(',')?;
        }
        let width = rows[0].len();
        if rows.iter().any(|r| r.len() != width) {
            return c.err("matrix rows have different lengths");
        }
        Ok(rows)
    }

    /// Every column must have one source degree: `twist(row) + deg(entry)`.
    fn check_matrix(&self, rows: &[Vec<Entry>], twists: &[Vec<i64>]) -> PResult<()> {
        let width = rows.first().map_or(0, |r| r.len());
        for col in 0..width {
            let mut source: Option<Vec<i64>> = None;
            for (r, row) in rows.iter().enumerate() {
                let (_, deg, pos) = &row[col];
                let Some(d) = deg else { continue };
                let s: Vec<i64> = d.iter().zip(&twists[r]).map(|(a, b)| a + b).collect();
                match &source {
                    None => source = Some(s),
                    Some(s0) if *s0 != s => {
                        return Err(ParseError {
                            pos: *pos,
                            message: format!(
                                "column {col} is inhomogeneous: entry in row {r} has source degree {s:?}, expected {s0:?}"
                            ),
                        })
                    }
                    _ => {}
                }
            }
        }
        Ok(())
    }

    fn command(&mut self, c: &mut Cursor) -> PResult<Command> {
        let p = c.pos();
        let kw = c.ident("a command")?;
        let cmd = match kw.as_str() {
            "betti" => Command::Betti {
                module: self.module_ref(c)?.0,
            },
            "resolve" => {
                let module = self.module_ref(c)?.0;
                let mut length = None;
                while let Some(f) = c.flag() {
                    match f.as_str() {
                        "length" => length = Some(c.usize()?),
                        _ => return c.err(format!("unknown flag --{f}")),
                    }
                }
                Command::Resolve { module, length }
            }
            "regularity" => {
                let module = self.module_ref(c)?.0;
                let mut kind = RegularityKind::Both;
                while let Some(f) = c.flag() {
                    kind = match f.as_str() {
                        "koszul" => RegularityKind::Koszul,
                        "weighted" => RegularityKind::Weighted,
                        "both" => RegularityKind::Both,
                        _ => return c.err(format!("unknown flag --{f}")),
                    };
                }
                Command::Regularity { module, kind }
            }
            "cohomology" => Command::Cohomology {
                module: self.module_ref(c)?.0,
            },
            "truncate" => {
                let (module, ring) = self.module_ref(c)?;
                let rank = self.ring_info(&ring).rank();
                let mut at = None;
                let mut twist = false;
                while let Some(f) = c.flag() {
                    match f.as_str() {
                        "at" => at = Some(c.degree(rank)?),
                        "twist" => twist = true,
                        _ => return c.err(format!("unknown flag --{f}")),
                    }
                }
                let Some(at) = at else {
                    return c.err("truncate needs --at");
                };
                Command::Truncate { module, at, twist }
            }
            "verify" => {
                let module = self.module_ref(c)?.0;
                let mut theorem = None;
                while let Some(f) = c.flag() {
                    match f.as_str() {
                        "theorem" => {
                            let t = c.ident("a, b, symonds or cor17")?;
                            theorem = Some(match t.as_str() {
                                "a" => Theorem::A,
                                "b" => Theorem::B,
                                "symonds" => Theorem::Symonds,
                                "cor17" => Theorem::Cor17,
                                _ => return c.err(format!("unknown theorem `{t}`")),
                            });
                        }
                        _ => return c.err(format!("unknown flag --{f}")),
                    }
                }
                let Some(theorem) = theorem else {
                    return c.err("verify needs --theorem");
                };
                Command::Verify { module, theorem }
            }
            "toric" => {
                let sub = c.ident("`polytope` or `check`")?;
                match sub.as_str() {
                    "polytope" => {
                        let fan = self.fan_ref(c)?;
                        let mut i = 0;
                        let mut plot = false;
                        while let Some(f) = c.flag() {
                            match f.as_str() {
                                "i" => i = c.usize()?,
                                "plot" => plot = true,
                                _ => return c.err(format!("unknown flag --{f}")),
                            }
                        }
                        Command::ToricPolytope { fan, i, plot }
                    }
                    "check" => {
                        let fan = self.fan_ref(c)?;
                        let mp = c.pos();
                        let (module, ring) = self.module_ref(c)?;
                        if self.ring_info(&ring).fan.as_deref() != Some(fan.as_str()) {
                            return Err(ParseError {
                                pos: mp,
                                message: format!("`{module}` is not over the Cox ring of `{fan}`"),
                            });
                        }
                        let mut assume_hypothesis = false;
                        while let Some(f) = c.flag() {
                            match f.as_str() {
                                "assume-hypothesis" => assume_hypothesis = true,
                                _ => return c.err(format!("unknown flag --{f}")),
                            }
                        }
                        Command::ToricCheck {
                            fan,
                            module,
                            assume_hypothesis,
                        }
                    }
                    _ => return c.err(format!("unknown toric command `{sub}`")),
                }
            }
            "bgg" => {
                c.expect_keyword("check")?;
                let module = self.module_ref(c)?.0;
                let mut window = None;
                while let Some(f) = c.flag() {
                    match f.as_str() {
                        "window" => window = Some((c.int()?, c.int()?)),
                        _ => return c.err(format!("unknown flag --{f}")),
                    }
                }
                let Some((lo, hi)) = window else {
                    return c.err("bgg check needs --window lo hi");
                };
                Command::BggCheck { module, lo, hi }
            }
            "dump" => {
                let np = c.pos();
                let name = c.ident("a name")?;
                if !self.symbols.contains_key(&name) {
                    return Err(ParseError {
                        pos: np,
                        message: format!("`{name}` is not declared"),
                    });
                }
                let mut presentation = false;
                while let Some(f) = c.flag() {
                    match f.as_str() {
                        "presentation" => presentation = true,
                        _ => return c.err(format!("unknown flag --{f}")),
                    }
                }
                if presentation && !matches!(self.symbols.get(&name), Some(Symbol::Module { .. } | Symbol::Ideal { .. })) {
                    return Err(ParseError {
                        pos: np,
                        message: format!("`{name}` is not a module or ideal"),
                    });
                }
                Command::Dump { name, presentation }
            }
            _ => {
                return Err(ParseError {
                    pos: p,
                    message: format!("unknown statement `{kw}`"),
                })
            }
        };
        c.finish()?;
        Ok(cmd)
    }
}

/// Logical lines: `\` joins a line with the next. Returns the starting
/// line number of each.
fn logical_lines(text: &str) -> Vec<(usize, String)> {
    let mut out = Vec::new();
    let mut buf = String::new();
    let mut start = 0;
    for (k, raw) in text.lines().enumerate() {
        if buf.is_empty() {
            start = k + 1;
        }
        let trimmed = raw.trim_end();
        if let Some(head) = trimmed.strip_suffix('\\') {
            buf.push_str(head);
            buf.push(' ');
        } else {
            buf.push_str(trimmed);
            out.push((start, std::mem::take(&mut buf)));
        }
    }
    if !buf.is_empty() {
        out.push((start, buf));
    }
    out
}

pub fn parse(text: &str) -> PResult<Session> {
    let mut parser = Parser::new();
    let mut session = Session::default();
    for (line, content) in logical_lines(text) {
        let toks = tokenize(line, &content)?;
        if toks.is_empty() {
            continue;
        }
        let mut c = Cursor {
            toks: &toks,
            i: 0,
            line,
            end_col: content.chars().count() + 1,
        };
        let pos = c.pos();
        let st = parser.statement(&mut c)?;
        session.statements.push((pos, st));
    }
    Ok(session)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn poly_display_is_canonical() {
        let p = Poly::from_terms(
            3,
            vec![
                (vec![0, 0, 1], q(-3, 2)),
                (vec![2, 1], q(1, 1)),
                (vec![0, 0, 1], q(1, 2)),
                (vec![], q(0, 1)),
            ],
        );
        assert_eq!(p.to_string(), "x0^2*x1 - x2");
        assert_eq!(Poly::default().to_string(), "0");
    }

    #[test]
    fn continuation_joins_lines() {
        let l = logical_lines("a \\\nb\n\nc\\\n");
        assert_eq!(l, vec![(1, "a  b".to_string()), (3, String::new()), (4, "c ".to_string())]);
    }

    #[test]
    fn flags_and_negative_numbers() {
        let t: Vec<Tok> = tokenize(1, "x --at -2 --twist").unwrap().into_iter().map(|t| t.tok).collect();
        assert_eq!(
            t,
            vec![
                Tok::Ident("x".into()),
                Tok::Flag("at".into()),
                Tok::Sym('-'),
                Tok::Int("2".into()),
                Tok::Flag("twist".into()),
            ]
        );
        assert!(tokenize(3, "a ; b").is_err_and(|e| e.pos == Pos { line: 3, col: 3 }));
    }

    #[test]
    fn fan_ring_degrees_come_from_the_class_group() {
        let s = parse("fan P rays [[1,3],[1,-2],[-1,0]] cones [[0,1],[1,2],[2,0]]\nring R fan P\nideal I = x0^5 + x2^2\n");
        assert!(s.is_ok(), "{s:?}");
        let e = parse("fan P rays [[1,3],[1,-2],[-1,0]] cones [[0,1],[1,2],[2,0]]\nring R fan P\nideal I = x0 + x1\n");
        assert!(e.is_err_and(|e| e.message.contains("inhomogeneous")));
    }
}
