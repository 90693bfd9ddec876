//! Recursive-descent parser for scripts.
//!
//! ```text
//! script    := stmt*
//! stmt      := "ring" ident+ ";"
//!            | ident "=" rf ";"
//!            | "divisor" ident "=" rf ";"
//!            | "ideal" ident "=" "(" poly ("," poly)* ")" ";"
//!            | command ";"
//! rf        := poly ("/" poly)?
//! poly      := "-"? term (("+" | "-") term)*
//! term      := power ("*" power)*
//! power     := atom ("^" int)?
//! atom      := int | ident | "(" poly ")"
//! ```
//!
//! Names are resolved while parsing, so a parsed script only refers to
//! values bound above each use.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use ratequiv::corpus::CorpusVerb;
use ratequiv::groebner::Ideal;
use ratequiv::{Polynomial, RationalFunction, Ring};

use crate::error::ScriptError;
use crate::lexer::{tokenize, Tok, Token};

/// A bound value. Functions and divisors both hold a rational function; the
/// distinction is kept for echoing.
#[derive(Clone, Debug)]
pub enum Value {
    Function(RationalFunction),
    Divisor(RationalFunction),
    Ideal(Ideal),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Binding {
    pub name: String,
    pub value: Value,
}

/// A resolved function or divisor argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arg {
    pub name: String,
    pub function: RationalFunction,
}

/// A resolved ideal argument: a bound name or an inline generator list.
#[derive(Clone, Debug)]
pub struct IdealArg {
    pub text: String,
    pub ideal: Ideal,
}

/// Ideals compare by their generator lists, as written.
fn same_generators(a: &Ideal, b: &Ideal) -> bool {
    a.ring() == b.ring() && a.generators() == b.generators()
}

impl PartialEq for Value {
    fn eq(&self, other: &Value) -> bool {
        match (self, other) {
            (Value::Function(a), Value::Function(b)) | (Value::Divisor(a), Value::Divisor(b)) => a == b,
            (Value::Ideal(a), Value::Ideal(b)) => same_generators(a, b),
            _ => false,
        }
    }
}

impl Eq for Value {}

impl PartialEq for IdealArg {
    fn eq(&self, other: &IdealArg) -> bool {
        self.text == other.text && same_generators(&self.ideal, &other.ideal)
    }
}

impl Eq for IdealArg {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShowWhat {
    Weil,
    Support,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Op {
    Show(ShowWhat, Arg),
    ShowExcess(Arg, Arg),
    Intersect(Arg, Arg),
    Omega(Arg, Arg),
    VerifyReciprocity(Arg, Arg),
    VerifyCommute(Arg, Arg),
    VerifyDifference(Arg, Arg),
    Cone(IdealArg),
    DoubleCone(IdealArg, IdealArg),
    BigratCheck(IdealArg, IdealArg),
    EquivarianceCheck(IdealArg),
    Corpus {
        verb: CorpusVerb,
        count: Option<usize>,
        seed: Option<u64>,
        max_degree: Option<u32>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Command {
    /// The statement as written, whitespace collapsed.
    pub echo: String,
    pub line: usize,
    pub op: Op,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Script {
    pub ring: Option<Ring>,
    pub bindings: Vec<Binding>,
    pub commands: Vec<Command>,
}

impl Script {
    pub fn binding(&self, name: &str) -> Option<&Value> {
        self.bindings.iter().find(|b| b.name == name).map(|b| &b.value)
    }
}

pub fn parse(src: &str) -> Result<Script, ScriptError> {
    let mut p = Parser {
        src,
        toks: tokenize(src)?,
        pos: 0,
        script: Script::default(),
        names: BTreeMap::new(),
    };
    while p.peek().tok != Tok::Eof {
        p.statement()?;
    }
    Ok(p.script)
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<Token>,
    pos: usize,
    script: Script,
    names: BTreeMap<String, usize>,
}

fn syntax(t: &Token, msg: impl Into<String>) -> ScriptError {
    ScriptError::Syntax {
        line: t.line,
        col: t.col,
        msg: msg.into(),
    }
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn peek_at(&self, k: usize) -> &Token {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn at_sym(&self, c: char) -> bool {
        self.peek().tok == Tok::Sym(c)
    }

    fn expect_sym(&mut self, c: char) -> Result<Token, ScriptError> {
        if self.at_sym(c) {
            Ok(self.next())
        } else {
            Err(syntax(self.peek(), format!("expected `{c}`, found {}", self.peek().describe())))
        }
    }

    fn ident(&mut self) -> Result<(String, Token), ScriptError> {
        match &self.peek().tok {
            Tok::Ident(s) => {
                let s = s.clone();
                Ok((s, self.next()))
            }
            _ => Err(syntax(self.peek(), format!("expected a name, found {}", self.peek().describe()))),
        }
    }

    /// An identifier with `-`-joined parts written without spaces, as in
    /// `verify-difference` or `max-degree`.
    fn word(&mut self) -> Result<(String, Token), ScriptError> {
        let (mut s, first) = self.ident()?;
        let mut end = first.end;
        while self.at_sym('-') && self.peek().start == end {
            let (dash, after) = (self.peek(), self.peek_at(1));
            match &after.tok {
                Tok::Ident(part) if after.start == dash.end => {
                    s.push('-');
                    s.push_str(part);
                    end = after.end;
                    self.pos += 2;
                }
                _ => break,
            }
        }
        Ok((s, first))
    }

    fn ring(&self, at: &Token) -> Result<Ring, ScriptError> {
        self.script.ring.clone().ok_or_else(|| ScriptError::RingMismatch {
            line: at.line,
            col: at.col,
            msg: "no ring declared before this statement".into(),
        })
    }

    fn statement(&mut self) -> Result<(), ScriptError> {
        let start = self.peek().clone();
        let (word, _) = self.word()?;
        match word.as_str() {
            "ring" => self.ring_decl(&start),
            "divisor" => {
                let (name, at) = self.ident()?;
                self.expect_sym('=')?;
                let f = self.rational(&start)?;
                self.end_statement()?;
                self.bind(name, &at, Value::Divisor(f))
            }
            "ideal" => {
                let (name, at) = self.ident()?;
                self.expect_sym('=')?;
                let i = self.ideal_literal(&start)?;
                self.end_statement()?;
                self.bind(name, &at, Value::Ideal(i))
            }
            _ if self.at_sym('=') && !word.contains('-') => {
                self.next();
                let f = self.rational(&start)?;
                self.end_statement()?;
                self.bind(word, &start, Value::Function(f))
            }
            _ => {
                let op = self.command(&word, &start)?;
                let end = self.peek().start;
                self.end_statement()?;
                let echo = self.src[start.start..end].split_whitespace().collect::<Vec<_>>().join(" ");
                self.script.commands.push(Command {
                    echo,
                    line: start.line,
                    op,
                });
                Ok(())
            }
        }
    }

    fn end_statement(&mut self) -> Result<(), ScriptError> {
        if self.at_sym(';') {
            self.next();
            Ok(())
        } else {
            Err(syntax(self.peek(), format!("expected `;`, found {}", self.peek().describe())))
        }
    }

    fn ring_decl(&mut self, start: &Token) -> Result<(), ScriptError> {
        if self.script.ring.is_some() {
            return Err(ScriptError::RingMismatch {
                line: start.line,
                col: start.col,
                msg: "a script declares a single ring".into(),
            });
        }
        let mut vars: Vec<String> = Vec::new();
        while let Tok::Ident(_) = self.peek().tok {
            let (v, at) = self.ident()?;
            if vars.contains(&v) {
                return Err(syntax(&at, format!("variable `{v}` declared twice")));
            }
            vars.push(v);
        }
        if vars.is_empty() {
            return Err(syntax(self.peek(), "a ring needs at least one variable"));
        }
        self.end_statement()?;
        self.script.ring = Some(Ring::new(vars));
        Ok(())
    }

    fn bind(&mut self, name: String, at: &Token, value: Value) -> Result<(), ScriptError> {
        if self.names.contains_key(&name) {
            return Err(syntax(at, format!("`{name}` is already bound")));
        }
        if self.script.ring.as_ref().is_some_and(|r| r.index_of(&name).is_some()) {
            return Err(syntax(at, format!("`{name}` is a ring variable")));
        }
        self.names.insert(name.clone(), self.script.bindings.len());
        self.script.bindings.push(Binding { name, value });
        Ok(())
    }

    fn lookup(&self, name: &str, at: &Token) -> Result<&Value, ScriptError> {
        self.names
            .get(name)
            .map(|&i| &self.script.bindings[i].value)
            .ok_or_else(|| ScriptError::Unbound {
                line: at.line,
                col: at.col,
                name: name.into(),
            })
    }

    fn rational(&mut self, start: &Token) -> Result<RationalFunction, ScriptError> {
        let ring = self.ring(start)?;
        let num = self.poly(&ring)?;
        if !self.at_sym('/') {
            return Ok(num);
        }
        let slash = self.next();
        let den = self.poly(&ring)?;
        if self.at_sym('/') {
            return Err(syntax(self.peek(), "`/` may appear once, at the top level"));
        }
        num.div(&den).map_err(|e| syntax(&slash, e.to_string()))
    }

    fn poly(&mut self, ring: &Ring) -> Result<RationalFunction, ScriptError> {
        let mut acc = if self.at_sym('-') {
            self.next();
            self.term(ring)?.neg()
        } else {
            self.term(ring)?
        };
        loop {
            let t = self.peek().clone();
            let add = match t.tok {
                Tok::Sym('+') => true,
                Tok::Sym('-') => false,
                _ => return Ok(acc),
            };
            self.next();
            let rhs = self.term(ring)?;
            acc = if add { acc.add(&rhs) } else { acc.sub(&rhs) }.map_err(|e| syntax(&t, e.to_string()))?;
        }
    }

    fn term(&mut self, ring: &Ring) -> Result<RationalFunction, ScriptError> {
        let mut acc = self.power(ring)?;
        while self.at_sym('*') {
            let t = self.next();
            let rhs = self.power(ring)?;
            acc = acc.mul(&rhs).map_err(|e| syntax(&t, e.to_string()))?;
        }
        Ok(acc)
    }

    fn power(&mut self, ring: &Ring) -> Result<RationalFunction, ScriptError> {
        let base = self.atom(ring)?;
        if !self.at_sym('^') {
            return Ok(base);
        }
        self.next();
        let t = self.next();
        let k: i64 = match &t.tok {
            Tok::Int(s) => s.parse().map_err(|_| syntax(&t, "exponent too large"))?,
            _ => return Err(syntax(&t, format!("expected an exponent, found {}", t.describe()))),
        };
        base.pow(k).map_err(|e| syntax(&t, e.to_string()))
    }

    fn atom(&mut self, ring: &Ring) -> Result<RationalFunction, ScriptError> {
        let t = self.next();
        match &t.tok {
            Tok::Int(s) => {
                let n: BigInt = s.parse().expect("digits");
                Ok(RationalFunction::constant(ring, BigRational::from_integer(n)))
            }
            Tok::Ident(name) => {
                if let Some(i) = ring.index_of(name) {
                    return Ok(RationalFunction::from_poly(Polynomial::variable(ring, i)));
                }
                match self.lookup(name, &t)? {
                    Value::Function(f) | Value::Divisor(f) => Ok(f.clone()),
                    Value::Ideal(_) => Err(syntax(&t, format!("ideal `{name}` used in an expression"))),
                }
            }
            Tok::Sym('(') => {
                let inner = self.poly(ring)?;
                if self.at_sym('/') {
                    return Err(syntax(self.peek(), "`/` is only allowed at the top level of a rational function"));
                }
                self.expect_sym(')')?;
                Ok(inner)
            }
            _ => Err(syntax(&t, format!("expected an expression, found {}", t.describe()))),
        }
    }

    fn polynomial(&mut self, ring: &Ring) -> Result<Polynomial, ScriptError> {
        let at = self.peek().clone();
        let f = self.poly(ring)?;
        if !f.is_polynomial() {
            return Err(syntax(&at, format!("{f} is not a polynomial")));
        }
        Ok(f.numerator().scale(&f.denominator().constant_value().expect("constant").recip()))
    }

    fn ideal_literal(&mut self, start: &Token) -> Result<Ideal, ScriptError> {
        let ring = self.ring(start)?;
        self.expect_sym('(')?;
        let mut gens = vec![self.polynomial(&ring)?];
        while self.at_sym(',') {
            self.next();
            gens.push(self.polynomial(&ring)?);
        }
        if self.at_sym('/') {
            return Err(syntax(self.peek(), "ideal generators must be polynomials"));
        }
        self.expect_sym(')')?;
        Ok(Ideal::new(&ring, gens).expect("one ring"))
    }

    fn arg(&mut self) -> Result<Arg, ScriptError> {
        let (name, at) = self.ident()?;
        if self.script.ring.as_ref().is_some_and(|r| r.index_of(&name).is_some()) {
            let ring = self.ring(&at)?;
            let i = ring.index_of(&name).unwrap();
            return Ok(Arg {
                function: RationalFunction::from_poly(Polynomial::variable(&ring, i)),
                name,
            });
        }
        match self.lookup(&name, &at)? {
            Value::Function(f) | Value::Divisor(f) => Ok(Arg {
                function: f.clone(),
                name,
            }),
            Value::Ideal(_) => Err(syntax(&at, format!("`{name}` is an ideal, expected a function or divisor"))),
        }
    }

    fn ideal_arg(&mut self, start: &Token) -> Result<IdealArg, ScriptError> {
        let at = self.peek().clone();
        if self.at_sym('(') {
            let ideal = self.ideal_literal(start)?;
            let text = self.src[at.start..self.toks[self.pos - 1].end].split_whitespace().collect::<Vec<_>>().join(" ");
            return Ok(IdealArg { text, ideal });
        }
        let (name, at) = self.ident()?;
        let ideal = match self.lookup(&name, &at)? {
            Value::Ideal(i) => i.clone(),
            Value::Function(f) | Value::Divisor(f) if f.is_polynomial() => {
                Ideal::new(f.ring(), [f.numerator().clone()]).expect("one ring")
            }
            _ => return Err(syntax(&at, format!("`{name}` is not an ideal or a polynomial"))),
        };
        Ok(IdealArg { text: name, ideal })
    }

    fn command(&mut self, word: &str, start: &Token) -> Result<Op, ScriptError> {
        if word != "corpus" {
            self.ring(start)?;
        }
        Ok(match word {
            "show" => {
                let (what, at) = self.ident()?;
                match what.as_str() {
                    "weil" => Op::Show(ShowWhat::Weil, self.arg()?),
                    "support" => Op::Show(ShowWhat::Support, self.arg()?),
                    "excess" => Op::ShowExcess(self.arg()?, self.arg()?),
                    _ => return Err(syntax(&at, format!("expected weil, support or excess, found `{what}`"))),
                }
            }
            "intersect" => Op::Intersect(self.arg()?, self.arg()?),
            "omega" => Op::Omega(self.arg()?, self.arg()?),
            "verify-reciprocity" => Op::VerifyReciprocity(self.arg()?, self.arg()?),
            "verify-commute" => Op::VerifyCommute(self.arg()?, self.arg()?),
            "verify-difference" => Op::VerifyDifference(self.arg()?, self.arg()?),
            "cone" => Op::Cone(self.ideal_arg(start)?),
            "double-cone" => Op::DoubleCone(self.ideal_arg(start)?, self.ideal_arg(start)?),
            "bigrat-check" => Op::BigratCheck(self.ideal_arg(start)?, self.ideal_arg(start)?),
            "equivariance-check" => Op::EquivarianceCheck(self.ideal_arg(start)?),
            "corpus" => self.corpus()?,
            _ => return Err(syntax(start, format!("unknown command `{word}`"))),
        })
    }

    fn corpus(&mut self) -> Result<Op, ScriptError> {
        let (name, at) = self.word()?;
        let verb: CorpusVerb = name.parse().map_err(|e: ratequiv::Error| syntax(&at, e.to_string()))?;
        let (mut count, mut seed, mut max_degree) = (None, None, None);
        while self.at_sym('-') {
            let dash = self.next();
            let second = self.expect_sym('-')?;
            let (flag, at) = self.word()?;
            if second.start != dash.end || at.start != second.end {
                return Err(syntax(&dash, "flags are written `--name`"));
            }
            let t = self.next();
            let value = match &t.tok {
                Tok::Int(s) => s.clone(),
                _ => return Err(syntax(&t, format!("expected a number after --{flag}, found {}", t.describe()))),
            };
            let bad = |_| syntax(&t, format!("--{flag} value {value} is out of range"));
            match flag.as_str() {
                "count" => count = Some(value.parse().map_err(bad)?),
                "seed" => seed = Some(value.parse().map_err(bad)?),
                "max-degree" => max_degree = Some(value.parse().map_err(bad)?),
                _ => return Err(syntax(&at, format!("unknown corpus flag --{flag}"))),
            }
        }
        Ok(Op::Corpus {
            verb,
            count,
            seed,
            max_degree,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_command() {
        let s = parse("ring u v; x = u^2*v/(u+v); divisor D = x; show weil D;").unwrap();
        assert_eq!(s.commands.len(), 1);
        assert_eq!(s.commands[0].echo, "show weil D");
        assert_eq!(s.bindings.len(), 2);
        let Value::Function(x) = s.binding("x").unwrap() else { panic!() };
        assert_eq!(x.to_string(), "u^2*v/(u + v)");
    }

    #[test]
    fn unbound_names_are_reported() {
        let err = parse("ring u v; omega D E;").unwrap_err();
        assert_eq!(err, ScriptError::Unbound { line: 1, col: 17, name: "D".into() });
    }

    #[test]
    fn empty_input() {
        assert_eq!(parse("").unwrap(), Script::default());
        assert_eq!(parse("  # nothing\n").unwrap(), Script::default());
    }

    #[test]
    fn slash_only_at_top_level() {
        let err = parse("ring u v;\nx = (u/v) + 1;").unwrap_err();
        assert!(matches!(err, ScriptError::Syntax { line: 2, col: 7, .. }), "{err}");
        assert!(parse("ring u v; x = u/v/u;").is_err());
    }

    #[test]
    fn a_single_ring() {
        let err = parse("ring u; ring v;").unwrap_err();
        assert!(matches!(err, ScriptError::RingMismatch { line: 1, col: 9, .. }));
        let err = parse("x = 1;").unwrap_err();
        assert!(matches!(err, ScriptError::RingMismatch { .. }));
    }

    #[test]
    fn hyphenated_commands_and_flags() {
        let s = parse("ring u v; ideal I = (u); bigrat-check I (v^2 - u^3); corpus fulton --count 7 --max-degree 2;").unwrap();
        let Op::BigratCheck(a, b) = &s.commands[0].op else { panic!() };
        assert_eq!((a.text.as_str(), b.text.as_str()), ("I", "(v^2 - u^3)"));
        assert_eq!(
            s.commands[1].op,
            Op::Corpus { verb: CorpusVerb::Fulton, count: Some(7), seed: None, max_degree: Some(2) }
        );
        assert!(parse("ring u v; verify -difference u v;").is_err());
    }

    #[test]
    fn subtraction_is_not_a_hyphen() {
        let s = parse("ring u v; x = u-v; y = u - v; verify-reciprocity x y;").unwrap();
        assert_eq!(s.binding("x"), s.binding("y"));
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse("ring u v;\ndivisor D = u +;\n").unwrap_err();
        assert_eq!(err.position(), (2, 16));
        let err = parse("ring u v;\nshow weyl u;").unwrap_err();
        assert_eq!(err.position(), (2, 6));
    }
}
