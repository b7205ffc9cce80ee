//! Quantifier-free formulas and transductions.
//!
//! Text form of a formula is an S-expression over free variables `x1, x2, ..`:
//!
//! ```text
//! formula := true | false
//!          | (atom NAME var*) | (eq var var) | (neq var var)
//!          | (not formula) | (and formula*) | (or formula*)
//! ```
//!
//! A transduction file looks like
//!
//! ```text
//! QF-TRANSDUCTION v1
//! FROM
//! R R1 3
//! TO
//! R A 2
//! FORMULA A
//! (atom R1 x1 x1 x2)
//! ```
//!
//! where formula bodies may span several lines and `#` starts a comment.

use std::fmt::{self, Write as _};

use crate::combin::pow_sat;
use crate::error::{Error, Result};
use crate::structures::{RelStructure, Signature};

/// Variables are 0-based here and printed 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum QfFormula {
    True,
    False,
    Atom { rel: usize, args: Vec<usize> },
    Eq(usize, usize),
    Neq(usize, usize),
    Not(Box<QfFormula>),
    And(Vec<QfFormula>),
    Or(Vec<QfFormula>),
}

impl QfFormula {
    pub fn eval(&self, a: &RelStructure, vars: &[usize]) -> bool {
        match self {
            QfFormula::True => true,
            QfFormula::False => false,
            QfFormula::Atom { rel, args } => {
                let n = a.n();
                let code = args.iter().fold(0usize, |acc, &v| acc * n + vars[v]);
                a.relation_bits(*rel).get(code)
            }
            QfFormula::Eq(i, j) => vars[*i] == vars[*j],
            QfFormula::Neq(i, j) => vars[*i] != vars[*j],
            QfFormula::Not(f) => !f.eval(a, vars),
            QfFormula::And(fs) => fs.iter().all(|f| f.eval(a, vars)),
            QfFormula::Or(fs) => fs.iter().any(|f| f.eval(a, vars)),
        }
    }

    /// Largest variable index plus one.
    pub fn var_bound(&self) -> usize {
        match self {
            QfFormula::True | QfFormula::False => 0,
            QfFormula::Atom { args, .. } => args.iter().map(|v| v + 1).max().unwrap_or(0),
            QfFormula::Eq(i, j) | QfFormula::Neq(i, j) => i.max(j) + 1,
            QfFormula::Not(f) => f.var_bound(),
            QfFormula::And(fs) | QfFormula::Or(fs) => fs.iter().map(|f| f.var_bound()).max().unwrap_or(0),
        }
    }

    /// Resolves every (in)equality for the concrete values `vars` and folds
    /// constants; what remains depends only on relation atoms.
    pub fn specialize(&self, vars: &[usize]) -> QfFormula {
        use QfFormula::*;
        match self {
            True | False | Atom { .. } => self.clone(),
            Eq(i, j) => if vars[*i] == vars[*j] { True } else { False },
            Neq(i, j) => if vars[*i] != vars[*j] { True } else { False },
            Not(f) => match f.specialize(vars) {
                True => False,
                False => True,
                g => Not(Box::new(g)),
            },
            And(fs) => {
                let mut out = Vec::new();
                for f in fs {
                    match f.specialize(vars) {
                        False => return False,
                        True => {}
                        g => out.push(g),
                    }
                }
                match out.len() {
                    0 => True,
                    1 => out.pop().unwrap(),
                    _ => And(out),
                }
            }
            Or(fs) => {
                let mut out = Vec::new();
                for f in fs {
                    match f.specialize(vars) {
                        True => return True,
                        False => {}
                        g => out.push(g),
                    }
                }
                match out.len() {
                    0 => False,
                    1 => out.pop().unwrap(),
                    _ => Or(out),
                }
            }
        }
    }

    /// Relation atoms `(rel, args)` occurring in the formula, in order.
    pub fn atoms(&self) -> Vec<(usize, Vec<usize>)> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut Vec<(usize, Vec<usize>)>) {
        match self {
            QfFormula::Atom { rel, args } => out.push((*rel, args.clone())),
            QfFormula::Not(f) => f.collect_atoms(out),
            QfFormula::And(fs) | QfFormula::Or(fs) => fs.iter().for_each(|f| f.collect_atoms(out)),
            _ => {}
        }
    }

    fn check(&self, sig: &Signature, free: usize) -> Result<()> {
        if self.var_bound() > free {
            return Err(Error::pre(format!("formula uses x{} but only {free} variables are free", self.var_bound())));
        }
        for (rel, args) in self.atoms() {
            if rel >= sig.len() || sig.arity(rel) != args.len() {
                return Err(Error::InvalidArity(format!("atom over relation #{rel} has {} arguments", args.len())));
            }
        }
        Ok(())
    }

    pub fn to_sexpr(&self, sig: &Signature) -> String {
        let mut s = String::new();
        self.write(sig, &mut s);
        s
    }

    fn write(&self, sig: &Signature, s: &mut String) {
        match self {
            QfFormula::True => s.push_str("true"),
            QfFormula::False => s.push_str("false"),
            QfFormula::Atom { rel, args } => {
                let _ = write!(s, "(atom {}", sig.name(*rel));
                for v in args {
                    let _ = write!(s, " x{}", v + 1);
                }
                s.push(')');
            }
            QfFormula::Eq(i, j) => {
                let _ = write!(s, "(eq x{} x{})", i + 1, j + 1);
            }
            QfFormula::Neq(i, j) => {
                let _ = write!(s, "(neq x{} x{})", i + 1, j + 1);
            }
            QfFormula::Not(f) => {
                s.push_str("(not ");
                f.write(sig, s);
                s.push(')');
            }
            QfFormula::And(fs) | QfFormula::Or(fs) => {
                s.push_str(if matches!(self, QfFormula::And(_)) { "(and" } else { "(or" });
                for f in fs {
                    s.push(' ');
                    f.write(sig, s);
                }
                s.push(')');
            }
        }
    }

    /// Parses the S-expression form; relation names resolve against `sig`.
    pub fn parse(text: &str, sig: &Signature) -> Result<QfFormula> {
        let toks = tokenize(text);
        let mut pos = 0;
        let f = parse_expr(&toks, &mut pos, sig)?;
        if pos != toks.len() {
            return Err(Error::parse(0, format!("trailing input after formula: `{}`", toks[pos])));
        }
        Ok(f)
    }
}

fn tokenize(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    for ch in text.chars() {
        match ch {
            '(' | ')' => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
                out.push(ch.to_string());
            }
            c if c.is_whitespace() => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
            }
            c => cur.push(c),
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

fn parse_var(tok: &str) -> Result<usize> {
    tok.strip_prefix('x')
        .and_then(|d| d.parse::<usize>().ok())
        .filter(|&v| v >= 1)
        .map(|v| v - 1)
        .ok_or_else(|| Error::parse(0, format!("expected a variable like x1, got `{tok}`")))
}

fn parse_expr(toks: &[String], pos: &mut usize, sig: &Signature) -> Result<QfFormula> {
    let tok = toks.get(*pos).ok_or_else(|| Error::parse(0, "unexpected end of formula"))?;
    *pos += 1;
    match tok.as_str() {
        "true" => return Ok(QfFormula::True),
        "false" => return Ok(QfFormula::False),
        "(" => {}
        other => return Err(Error::parse(0, format!("unexpected token `{other}`"))),
    }
    let head = toks.get(*pos).ok_or_else(|| Error::parse(0, "unexpected end of formula"))?.clone();
    *pos += 1;
    let words = |pos: &mut usize| -> Vec<String> {
        let mut w = Vec::new();
        while let Some(t) = toks.get(*pos) {
            if t == "(" || t == ")" {
                break;
            }
            w.push(t.clone());
            *pos += 1;
        }
        w
    };
    let f = match head.as_str() {
        "atom" => {
            let w = words(pos);
            let (name, vars) = w.split_first().ok_or_else(|| Error::parse(0, "atom needs a relation name"))?;
            let rel = sig.index_of(name).ok_or_else(|| Error::parse(0, format!("unknown relation `{name}`")))?;
            let args = vars.iter().map(|v| parse_var(v)).collect::<Result<Vec<_>>>()?;
            if args.len() != sig.arity(rel) {
                return Err(Error::parse(0, format!("{name} expects {} arguments, got {}", sig.arity(rel), args.len())));
            }
            QfFormula::Atom { rel, args }
        }
        "eq" | "neq" => {
            let w = words(pos);
            if w.len() != 2 {
                return Err(Error::parse(0, format!("{head} expects two variables")));
            }
            let (i, j) = (parse_var(&w[0])?, parse_var(&w[1])?);
            if head == "eq" { QfFormula::Eq(i, j) } else { QfFormula::Neq(i, j) }
        }
        "not" => QfFormula::Not(Box::new(parse_expr(toks, pos, sig)?)),
        "and" | "or" => {
            let mut fs = Vec::new();
            while toks.get(*pos).is_some_and(|t| t != ")") {
                fs.push(parse_expr(toks, pos, sig)?);
            }
            if head == "and" { QfFormula::And(fs) } else { QfFormula::Or(fs) }
        }
        other => return Err(Error::parse(0, format!("unknown operator `{other}`"))),
    };
    match toks.get(*pos).map(|s| s.as_str()) {
        Some(")") => {
            *pos += 1;
            Ok(f)
        }
        _ => Err(Error::parse(0, format!("missing `)` after `{head}`"))),
    }
}

/// One formula per target relation, with as many free variables as the
/// relation's arity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QfTransduction {
    from: Signature,
    to: Signature,
    formulas: Vec<QfFormula>,
}

impl QfTransduction {
    pub fn new(from: Signature, to: Signature, formulas: Vec<QfFormula>) -> Result<Self> {
        if formulas.len() != to.len() {
            return Err(Error::pre(format!("{} formulas for {} target relations", formulas.len(), to.len())));
        }
        for (i, f) in formulas.iter().enumerate() {
            f.check(&from, to.arity(i))?;
        }
        Ok(QfTransduction { from, to, formulas })
    }

    /// Each target relation copies the source relation of the same position.
    pub fn identity(sig: &Signature) -> Self {
        let formulas = (0..sig.len())
            .map(|rel| QfFormula::Atom { rel, args: (0..sig.arity(rel)).collect() })
            .collect();
        QfTransduction { from: sig.clone(), to: sig.clone(), formulas }
    }

    pub fn from_sig(&self) -> &Signature {
        &self.from
    }

    pub fn to_sig(&self) -> &Signature {
        &self.to
    }

    pub fn formulas(&self) -> &[QfFormula] {
        &self.formulas
    }

    pub fn to_text(&self) -> String {
        let mut s = String::from("QF-TRANSDUCTION v1\nFROM\n");
        s.push_str(&self.from.to_text());
        s.push_str("TO\n");
        s.push_str(&self.to.to_text());
        for (i, f) in self.formulas.iter().enumerate() {
            let _ = writeln!(s, "FORMULA {}\n{}", self.to.name(i), f.to_sexpr(&self.from));
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        let mut it = lines.iter().peekable();
        let expect = |item: Option<&(usize, &str)>, want: &str| -> Result<()> {
            match item {
                Some((_, l)) if *l == want => Ok(()),
                Some((ln, l)) => Err(Error::parse(*ln, format!("expected `{want}`, found `{l}`"))),
                None => Err(Error::parse(0, format!("expected `{want}`, found end of input"))),
            }
        };
        expect(it.next(), "QF-TRANSDUCTION v1")?;
        expect(it.next(), "FROM")?;
        let block = |it: &mut std::iter::Peekable<std::slice::Iter<(usize, &str)>>| -> Result<Signature> {
            let mut t = String::new();
            let mut first = 0;
            while let Some((ln, l)) = it.peek() {
                if !l.starts_with("R ") {
                    break;
                }
                if first == 0 {
                    first = *ln;
                }
                t.push_str(l);
                t.push('\n');
                it.next();
            }
            Signature::parse(&t).map_err(|e| Error::parse(first, e.to_string()))
        };
        let from = block(&mut it)?;
        expect(it.next(), "TO")?;
        let to = block(&mut it)?;
        let mut formulas: Vec<Option<QfFormula>> = vec![None; to.len()];
        while let Some((ln, l)) = it.next() {
            let name = l
                .strip_prefix("FORMULA ")
                .map(str::trim)
                .ok_or_else(|| Error::parse(*ln, format!("expected `FORMULA <name>`, found `{l}`")))?;
            let idx = to.index_of(name).ok_or_else(|| Error::parse(*ln, format!("unknown target relation `{name}`")))?;
            if formulas[idx].is_some() {
                return Err(Error::parse(*ln, format!("second formula for `{name}`")));
            }
            let mut body = String::new();
            let body_line = it.peek().map(|(l, _)| *l).unwrap_or(*ln);
            while let Some((_, l)) = it.peek() {
                if l.starts_with("FORMULA ") {
                    break;
                }
                body.push_str(l);
                body.push(' ');
                it.next();
            }
            let f = QfFormula::parse(&body, &from).map_err(|e| match e {
                Error::Parse { msg, .. } => Error::parse(body_line, msg),
                e => e,
            })?;
            f.check(&from, to.arity(idx)).map_err(|e| Error::parse(body_line, e.to_string()))?;
            formulas[idx] = Some(f);
        }
        let formulas = formulas
            .into_iter()
            .enumerate()
            .map(|(i, f)| f.ok_or_else(|| Error::parse(0, format!("no formula for `{}`", to.name(i)))))
            .collect::<Result<Vec<_>>>()?;
        QfTransduction::new(from, to, formulas)
    }
}

impl fmt::Display for QfTransduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Evaluates each target formula on every tuple of the universe.
pub fn apply_qf_transduction(theta: &QfTransduction, a: &RelStructure) -> Result<RelStructure> {
    if a.sig() != &theta.from {
        return Err(Error::SignatureMismatch(format!(
            "transduction reads `{}` but the structure has `{}`",
            theta.from,
            a.sig()
        )));
    }
    let n = a.n();
    let mut out = RelStructure::empty(theta.to.clone(), n)?;
    for (rel, f) in theta.formulas.iter().enumerate() {
        let ar = theta.to.arity(rel);
        let cells = pow_sat(n as u128, ar as u32) as usize;
        let mut tuple = vec![0usize; ar];
        let bits = out.relation_bits_mut(rel);
        for code in 0..cells {
            if f.eval(a, &tuple) {
                bits.insert(code);
            }
            // odometer, last coordinate fastest
            for slot in tuple.iter_mut().rev() {
                *slot += 1;
                if *slot < n {
                    break;
                }
                *slot = 0;
            }
        }
    }
    Ok(out)
}
