//! Lexer and recursive-descent evaluator for the literal and expression
//! syntax accepted by `mildset eval`.
//!
//! Everything is evaluated while parsing; there is no separate AST.

use mildset_core::emss::Filter;
use mildset_core::mset::InjElt;
use mildset_core::pap::Piece;
use mildset_core::{ConfigSimplex, InjN, MElt, OperadicClass, PapInj, PapMap, UpSet};
use thiserror::Error;

use crate::eval;
use crate::family::{Base, FamilySpec};
use crate::value::Value;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExprError {
    #[error("parse error at column {col}: {msg}")]
    Parse { col: usize, msg: String },
    #[error("error at column {col}: {msg}")]
    Eval { col: usize, msg: String },
}

impl ExprError {
    pub fn col(&self) -> usize {
        match self {
            ExprError::Parse { col, .. } | ExprError::Eval { col, .. } => *col,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    Sym(char),
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Token>, ExprError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            let n = text.parse().map_err(|_| ExprError::Parse {
                col,
                msg: format!("integer {text} out of range"),
            })?;
            out.push(Token { tok: Tok::Int(n), col });
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            if i < chars.len() && chars[i] == '?' {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                col,
            });
        } else if "{}[](),;:=/*^-".contains(c) {
            out.push(Token { tok: Tok::Sym(c), col });
            i += 1;
        } else {
            return Err(ExprError::Parse {
                col,
                msg: format!("unexpected character {c:?}"),
            });
        }
    }
    out.push(Token {
        tok: Tok::End,
        col: chars.len() + 1,
    });
    Ok(out)
}

/// Parses and evaluates one expression.
pub fn evaluate(src: &str) -> Result<Value, ExprError> {
    let mut p = Parser { toks: lex(src)?, at: 0 };
    let v = p.expr()?;
    match p.peek() {
        Tok::End => Ok(v),
        t => Err(p.error(format!("unexpected {} after expression", describe(t)))),
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("'{s}'"),
        Tok::Int(n) => format!("'{n}'"),
        Tok::Sym(c) => format!("'{c}'"),
        Tok::End => "end of input".into(),
    }
}

struct Parser {
    toks: Vec<Token>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].tok
    }

    fn col(&self) -> usize {
        self.toks[self.at].col
    }

    fn error(&self, msg: impl Into<String>) -> ExprError {
        ExprError::Parse {
            col: self.col(),
            msg: msg.into(),
        }
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].tok.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ExprError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}', found {}", describe(self.peek()))))
        }
    }

    fn ident(&mut self) -> Result<String, ExprError> {
        match self.bump() {
            Tok::Ident(s) => Ok(s),
            t => {
                self.at -= 1;
                Err(self.error(format!("expected a name, found {}", describe(&t))))
            }
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), ExprError> {
        let col = self.col();
        let got = self.ident()?;
        if got == kw {
            Ok(())
        } else {
            Err(ExprError::Parse {
                col,
                msg: format!("expected '{kw}', found '{got}'"),
            })
        }
    }

    fn int(&mut self) -> Result<i64, ExprError> {
        let neg = self.eat('-');
        match self.bump() {
            Tok::Int(n) => Ok(if neg { -n } else { n }),
            t => {
                self.at -= 1;
                Err(self.error(format!("expected an integer, found {}", describe(&t))))
            }
        }
    }

    fn usize(&mut self) -> Result<usize, ExprError> {
        let col = self.col();
        let n = self.int()?;
        usize::try_from(n).map_err(|_| ExprError::Parse {
            col,
            msg: format!("expected a natural number, found {n}"),
        })
    }

    /// `a` or `a/b`, reduced to a fraction with positive denominator.
    fn frac(&mut self) -> Result<(i64, i64), ExprError> {
        let n = self.int()?;
        if self.eat('/') {
            let col = self.col();
            let d = self.int()?;
            if d <= 0 {
                return Err(ExprError::Parse {
                    col,
                    msg: "denominator must be positive".into(),
                });
            }
            Ok((n, d))
        } else {
            Ok((n, 1))
        }
    }

    /// `[a, b, …]` of integers.
    fn int_list(&mut self) -> Result<Vec<i64>, ExprError> {
        self.expect('[')?;
        let mut out = Vec::new();
        if self.eat(']') {
            return Ok(out);
        }
        loop {
            out.push(self.int()?);
            if self.eat(']') {
                return Ok(out);
            }
            self.expect(',')?;
        }
    }

    /// `{x:y, …}`.
    fn table(&mut self) -> Result<Vec<(i64, i64)>, ExprError> {
        self.expect('{')?;
        let mut out = Vec::new();
        if self.eat('}') {
            return Ok(out);
        }
        loop {
            let x = self.int()?;
            self.expect(':')?;
            let y = self.int()?;
            out.push((x, y));
            if self.eat('}') {
                return Ok(out);
            }
            self.expect(',')?;
        }
    }

    fn eval_err(col: usize, e: impl std::fmt::Display) -> ExprError {
        ExprError::Eval {
            col,
            msg: e.to_string(),
        }
    }

    fn expr(&mut self) -> Result<Value, ExprError> {
        let col = self.col();
        match self.peek().clone() {
            Tok::Sym('*') => {
                self.bump();
                Ok(Value::Elt(MElt::Point))
            }
            Tok::Sym('(') => {
                self.bump();
                let mut items = vec![self.expr()?];
                while self.eat(',') {
                    items.push(self.expr()?);
                }
                self.expect(')')?;
                Ok(if items.len() == 1 {
                    items.pop().unwrap()
                } else {
                    Value::Tuple(items)
                })
            }
            Tok::Sym('[') => {
                let items = self.seq('[', ']', ';')?;
                Ok(seq_value(items))
            }
            Tok::Sym('-') | Tok::Int(_) => Ok(Value::Int(self.int()?)),
            Tok::Ident(name) => {
                self.bump();
                match name.as_str() {
                    "up" => self.upset().map(Value::Set),
                    "pap" => {
                        let m = self.pap_map()?;
                        PapInj::validate(m).map(Value::Inj).map_err(|e| Self::eval_err(col, e))
                    }
                    "inj" => self.inj_elt(col),
                    "selfm" | "warn" => {
                        self.expect('{')?;
                        let inner_col = self.col();
                        let u = match self.expr()? {
                            Value::Inj(u) => u,
                            v => return Err(Self::eval_err(inner_col, format!("expected a pap map, found {}", v.kind()))),
                        };
                        self.expect('}')?;
                        Ok(Value::Elt(if name == "selfm" { MElt::SelfM(u) } else { MElt::Warn(u) }))
                    }
                    "cfg" => self.config(col),
                    "injn" => {
                        let items = self.seq('[', ']', ';')?;
                        let comps = items
                            .into_iter()
                            .map(|(c, v)| match v {
                                Value::Inj(u) => Ok(u),
                                v => Err(Self::eval_err(c, format!("expected a pap map, found {}", v.kind()))),
                            })
                            .collect::<Result<Vec<_>, _>>()?;
                        InjN::new(comps).map(Value::InjN).map_err(|e| Self::eval_err(col, e))
                    }
                    "class" => self.class(col),
                    "box?" => {
                        let items = self.seq('[', ']', ';')?;
                        eval::call("box", items, col)
                    }
                    "EInj" | "ESelfM" => self.family(&name),
                    _ if *self.peek() == Tok::Sym('(') => {
                        let args = self.seq('(', ')', ',')?;
                        eval::call(&name, args, col)
                    }
                    _ => eval::constant(&name, col),
                }
            }
            t => Err(self.error(format!("expected an expression, found {}", describe(&t)))),
        }
    }

    /// A delimited, separated list of expressions with their columns.
    fn seq(&mut self, open: char, close: char, sep: char) -> Result<Vec<(usize, Value)>, ExprError> {
        self.expect(open)?;
        let mut out = Vec::new();
        if self.eat(close) {
            return Ok(out);
        }
        loop {
            let col = self.col();
            out.push((col, self.expr()?));
            if self.eat(close) {
                return Ok(out);
            }
            self.expect(sep)?;
        }
    }

    fn upset(&mut self) -> Result<UpSet, ExprError> {
        let col = self.col();
        self.expect('{')?;
        let key = self.ident()?;
        let set = match key.as_str() {
            "finite" => {
                self.expect('=')?;
                let xs = self.int_list()?;
                if let Some(x) = xs.iter().find(|&&x| x < 1) {
                    return Err(Self::eval_err(col, format!("malformed set literal: {x} is not in ω")));
                }
                UpSet::finite(xs)
            }
            "mod" => {
                let p = self.int()?;
                self.keyword("in")?;
                let res = self.int_list()?;
                UpSet::new(0, &[], p, &res).map_err(|e| Self::eval_err(col, e))?
            }
            "N" => {
                self.expect('=')?;
                let n = self.int()?;
                self.expect(',')?;
                self.keyword("exc")?;
                self.expect('=')?;
                let exc = self.int_list()?;
                self.expect(',')?;
                self.keyword("p")?;
                self.expect('=')?;
                let p = self.int()?;
                self.expect(',')?;
                self.keyword("res")?;
                self.expect('=')?;
                let res = self.int_list()?;
                UpSet::new(n, &exc, p, &res).map_err(|e| Self::eval_err(col, e))?
            }
            other => return Err(self.error(format!("unknown set field '{other}'"))),
        };
        self.expect('}')?;
        Ok(set)
    }

    /// The body of a `pap{…}` literal, without checking injectivity.
    fn pap_map(&mut self) -> Result<PapMap, ExprError> {
        let col = self.col();
        self.expect('{')?;
        let mut table: Vec<(i64, i64)> = Vec::new();
        let mut threshold: Option<i64> = None;
        let mut period: Option<i64> = None;
        let mut rows: Vec<(i64, (i64, i64), (i64, i64))> = Vec::new();
        loop {
            let key = self.ident()?;
            self.expect('=')?;
            match key.as_str() {
                "table" => table = self.table()?,
                "N" => threshold = Some(self.int()?),
                "p" => period = Some(self.int()?),
                "pieces" => {
                    self.expect('[')?;
                    if !self.eat(']') {
                        loop {
                            self.expect('(')?;
                            let r = self.int()?;
                            self.expect(',')?;
                            let slope = self.frac()?;
                            self.expect(',')?;
                            let offset = self.frac()?;
                            self.expect(')')?;
                            rows.push((r, slope, offset));
                            if self.eat(']') {
                                break;
                            }
                            self.expect(',')?;
                        }
                    }
                }
                other => return Err(self.error(format!("unknown pap field '{other}'"))),
            }
            if self.eat('}') {
                break;
            }
            self.expect(',')?;
        }
        let n = threshold.unwrap_or(table.len() as i64);
        let mut values = vec![0; n.max(0) as usize];
        for &(x, y) in &table {
            if x < 1 || x > n {
                return Err(Self::eval_err(col, format!("malformed pap literal: table key {x} outside 1..={n}")));
            }
            values[(x - 1) as usize] = y;
        }
        if table.len() as i64 != n || values.iter().any(|&v| v < 1) {
            return Err(Self::eval_err(
                col,
                format!("malformed pap literal: table must give a positive value for every x in 1..={n}"),
            ));
        }
        let p = period.ok_or_else(|| Self::eval_err(col, "malformed pap literal: missing p"))?;
        let pieces: Vec<Piece> = PapMap::pieces_from_rationals(p, &rows).map_err(|e| Self::eval_err(col, e))?;
        PapMap::from_parts(values, p, pieces).map_err(|e| Self::eval_err(col, e))
    }

    fn inj_elt(&mut self, col: usize) -> Result<Value, ExprError> {
        self.expect('{')?;
        self.keyword("A")?;
        self.expect('=')?;
        let dom_col = self.col();
        let domain = if *self.peek() == Tok::Sym('[') {
            UpSet::finite(self.int_list()?)
        } else {
            match self.expr()? {
                Value::Set(s) => s,
                v => return Err(Self::eval_err(dom_col, format!("expected a set, found {}", v.kind()))),
            }
        };
        self.expect(',')?;
        let key = self.ident()?;
        self.expect('=')?;
        let elt = match key.as_str() {
            "table" => {
                let table = self.table()?;
                let keys = UpSet::finite(table.iter().map(|&(x, _)| x));
                if keys != domain || keys.cardinality() != Some(table.len() as u64) {
                    return Err(Self::eval_err(col, "table keys must list the domain exactly once"));
                }
                InjElt::from_table(&table).map_err(|e| Self::eval_err(col, e))?
            }
            "map" => {
                let map_col = self.col();
                if let Tok::Ident(name) = self.peek().clone() {
                    if name == "pap" {
                        self.bump();
                        let m = self.pap_map()?;
                        self.expect('}')?;
                        return InjElt::new(domain, &m)
                            .map(|i| Value::Elt(MElt::Inj(i)))
                            .map_err(|e| Self::eval_err(col, e));
                    }
                }
                match self.expr()? {
                    Value::Inj(u) => InjElt::new(domain, u.as_map()).map_err(|e| Self::eval_err(col, e))?,
                    Value::Map(m) => InjElt::new(domain, &m).map_err(|e| Self::eval_err(col, e))?,
                    v => return Err(Self::eval_err(map_col, format!("expected a map, found {}", v.kind()))),
                }
            }
            other => return Err(self.error(format!("unknown inj field '{other}'"))),
        };
        self.expect('}')?;
        Ok(Value::Elt(MElt::Inj(elt)))
    }

    fn config(&mut self, col: usize) -> Result<Value, ExprError> {
        self.expect('{')?;
        let mut m: Option<usize> = None;
        let mut degree: Option<usize> = None;
        let mut cols: Vec<Vec<i64>> = Vec::new();
        loop {
            let key = self.ident()?;
            self.expect('=')?;
            match key.as_str() {
                "m" => m = Some(self.usize()?),
                "n" => degree = Some(self.usize()?),
                "cols" => {
                    self.expect('[')?;
                    if !self.eat(']') {
                        loop {
                            cols.push(self.int_list()?);
                            if self.eat(']') {
                                break;
                            }
                            self.expect(',')?;
                        }
                    }
                }
                other => return Err(self.error(format!("unknown cfg field '{other}'"))),
            }
            if self.eat('}') {
                break;
            }
            self.expect(',')?;
        }
        if m.is_some_and(|m| m != cols.len()) {
            return Err(Self::eval_err(col, "m must equal the number of columns"));
        }
        let degree = match (degree, cols.first()) {
            (Some(d), _) => d,
            (None, Some(c)) if !c.is_empty() => c.len() - 1,
            (None, Some(_)) => return Err(Self::eval_err(col, "columns must be non-empty")),
            (None, None) => 0,
        };
        ConfigSimplex::new(degree, cols)
            .map(Value::Config)
            .map_err(|e| Self::eval_err(col, e))
    }

    fn class(&mut self, col: usize) -> Result<Value, ExprError> {
        self.expect('{')?;
        self.keyword("frame")?;
        self.expect('=')?;
        let frame = self
            .seq('[', ']', ';')?
            .into_iter()
            .map(|(c, v)| match v {
                Value::InjN(f) => Ok(f),
                Value::Inj(u) => InjN::new(vec![u]).map_err(|e| Self::eval_err(c, e)),
                v => Err(Self::eval_err(c, format!("expected an injn frame, found {}", v.kind()))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        self.expect(',')?;
        self.keyword("payload")?;
        self.expect('=')?;
        let payload = self
            .seq('[', ']', ',')?
            .into_iter()
            .map(|(c, v)| {
                v.to_simplex()
                    .ok_or_else(|| Self::eval_err(c, format!("expected a simplex, found {}", v.kind())))
            })
            .collect::<Result<Vec<_>, _>>()?;
        self.expect('}')?;
        OperadicClass::new(frame, payload)
            .map(Value::Class)
            .map_err(|e| Self::eval_err(col, e))
    }

    fn family(&mut self, name: &str) -> Result<Value, ExprError> {
        self.expect('{')?;
        let mut domain: Option<Vec<i64>> = None;
        let mut degree = mildset_core::emss::DEFAULT_DEGREE;
        loop {
            let key_col = self.col();
            let key = self.ident()?;
            self.expect('=')?;
            match key.as_str() {
                "A" if name == "EInj" => {
                    let c = self.col();
                    domain = Some(if *self.peek() == Tok::Sym('[') {
                        self.int_list()?
                    } else {
                        match self.expr()? {
                            Value::Set(s) if s.is_finite() => s.exceptional().to_vec(),
                            _ => return Err(Self::eval_err(c, "expected a finite set")),
                        }
                    });
                }
                "D" => degree = self.usize()?,
                other => {
                    return Err(ExprError::Parse {
                        col: key_col,
                        msg: format!("unknown family field '{other}'"),
                    })
                }
            }
            if self.eat('}') {
                break;
            }
            self.expect(',')?;
        }
        let base = if name == "EInj" {
            Base::Inj(domain.ok_or_else(|| self.error("EInj needs A"))?)
        } else {
            Base::SelfM
        };
        let filter = if self.eat('^') {
            let c = self.col();
            match self.ident()?.as_str() {
                "mu" => Some(Filter::Mu),
                "tau" => Some(Filter::Tau),
                other => {
                    return Err(ExprError::Parse {
                        col: c,
                        msg: format!("unknown filter '{other}'"),
                    })
                }
            }
        } else {
            None
        };
        Ok(Value::Family(FamilySpec { base, degree, filter }))
    }
}

/// `[a; b; …]` is a simplex when every entry is an element, and a plain
/// sequence otherwise.
fn seq_value(items: Vec<(usize, Value)>) -> Value {
    let vals: Vec<Value> = items.into_iter().map(|(_, v)| v).collect();
    let seq = Value::Seq(vals);
    match seq.to_simplex() {
        Some(s) if !matches!(&seq, Value::Seq(v) if v.is_empty()) => Value::Simplex(s),
        _ => seq,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexes_positions() {
        let err = evaluate("compose(double, $)").unwrap_err();
        assert_eq!(err.col(), 17);
        let err = evaluate("up{N=1, exc=[2], p=1, res=[]}").unwrap_err();
        assert!(err.to_string().contains("exceptional element 2"), "{err}");
    }

    #[test]
    fn literals_round_trip() {
        for src in [
            "up{finite=[1, 5]}",
            "up{mod 4 in [1, 2]}",
            "up{N=3, exc=[2], p=2, res=[1]}",
            "pap{p=1, pieces=[(0, 2/1, 2)]}",
            "pap{table={1:2, 2:1}, N=2, p=1, pieces=[(0, 1/1, 0)]}",
            "inj{A=[1, 2], table={1:3, 2:7}}",
            "selfm{pap{p=1, pieces=[(0, 2/1, 0)]}}",
            "cfg{m=2, cols=[[1, 4], [2, 3]]}",
        ] {
            let v = evaluate(src).unwrap();
            assert_eq!(v.to_string(), src);
        }
    }

    #[test]
    fn rejects_collisions() {
        let err = evaluate("pap{table={1:1, 2:1}, N=2, p=1, pieces=[(0, 1/1, 0)]}").unwrap_err();
        assert!(err.to_string().contains("not injective"), "{err}");
    }
}
