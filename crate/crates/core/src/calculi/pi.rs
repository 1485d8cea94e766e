use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::lex::{Cursor, ParseError, Tok};
use crate::term::{self, Action, BasicName, Element, Message, Name, Process};

/// Polyadic pi-calculus processes.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PiProcess {
    Nil,
    In(Name, Vec<Name>, Arc<PiProcess>),
    Out(Name, Vec<Name>, Arc<PiProcess>),
    Par(Arc<PiProcess>, Arc<PiProcess>),
    Nu(Name, Arc<PiProcess>),
    Bang(Arc<PiProcess>),
}

impl PiProcess {
    pub fn par(a: Arc<PiProcess>, b: Arc<PiProcess>) -> Arc<PiProcess> {
        Arc::new(PiProcess::Par(a, b))
    }

    pub fn par_all<I: IntoIterator<Item = Arc<PiProcess>>>(ps: I) -> Arc<PiProcess> {
        ps.into_iter().reduce(PiProcess::par).unwrap_or_else(|| Arc::new(PiProcess::Nil))
    }

    /// Largest channel arity used.
    pub fn max_arity(&self) -> usize {
        match self {
            PiProcess::Nil => 0,
            PiProcess::In(_, xs, p) => xs.len().max(p.max_arity()),
            PiProcess::Out(_, ys, p) => ys.len().max(p.max_arity()),
            PiProcess::Par(a, b) => a.max_arity().max(b.max_arity()),
            PiProcess::Nu(_, p) | PiProcess::Bang(p) => p.max_arity(),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            PiProcess::Nil => 1,
            PiProcess::In(_, xs, p) => 1 + xs.len() + p.size(),
            PiProcess::Out(_, ys, p) => 1 + ys.len() + p.size(),
            PiProcess::Par(a, b) => 1 + a.size() + b.size(),
            PiProcess::Nu(_, p) | PiProcess::Bang(p) => 1 + p.size(),
        }
    }
}

/// `c(x).P` becomes the action `c in<x>`, `c<a>.P` becomes `c out<a>`.
pub fn encode_pi(p: &PiProcess) -> Arc<Process> {
    match p {
        PiProcess::Nil => Process::nil(),
        PiProcess::In(c, xs, q) => Process::prefix(Action(vec![Element::Name(c.clone()), Element::In(xs.clone())]), encode_pi(q)),
        PiProcess::Out(c, ys, q) => Process::prefix(
            Action(vec![Element::Name(c.clone()), Element::Out(ys.iter().cloned().map(Message::name).collect())]),
            encode_pi(q),
        ),
        PiProcess::Par(a, b) => Process::par(encode_pi(a), encode_pi(b)),
        PiProcess::Nu(x, q) => Process::nu(x.clone(), encode_pi(q)),
        PiProcess::Bang(q) => Process::bang(encode_pi(q)),
    }
}

/// Well-scoped: free, input-bound and restricted names disjoint, no nested
/// rebinding, distinct names within one input.
pub fn pi_well_scoped(p: &PiProcess) -> bool {
    term::well_scoped(&encode_pi(p))
}

pub fn pi_fbn(p: &PiProcess) -> BTreeSet<BasicName> {
    term::fbn(&encode_pi(p))
}

pub fn parse_pi(src: &str) -> Result<Arc<PiProcess>, ParseError> {
    let mut c = Cursor::new(src)?;
    let p = par(&mut c)?;
    c.expect_end()?;
    Ok(p)
}

fn par(c: &mut Cursor) -> Result<Arc<PiProcess>, ParseError> {
    let mut p = unary(c)?;
    while c.eat_sym("|") {
        let q = unary(c)?;
        p = PiProcess::par(p, q);
    }
    Ok(p)
}

fn names(c: &mut Cursor, close: &str) -> Result<Vec<Name>, ParseError> {
    let mut xs = Vec::new();
    if c.eat_sym(close) {
        return Ok(xs);
    }
    loop {
        xs.push(term::parse_name_at(c)?);
        if !c.eat_sym(",") {
            break;
        }
    }
    c.expect_sym(close)?;
    Ok(xs)
}

fn cont(c: &mut Cursor) -> Result<Arc<PiProcess>, ParseError> {
    if c.eat_sym(".") {
        unary(c)
    } else {
        Ok(Arc::new(PiProcess::Nil))
    }
}

fn unary(c: &mut Cursor) -> Result<Arc<PiProcess>, ParseError> {
    match c.peek() {
        Some(Tok::Int(0)) => {
            c.bump();
            Ok(Arc::new(PiProcess::Nil))
        }
        Some(Tok::Sym("!")) => {
            c.bump();
            Ok(Arc::new(PiProcess::Bang(unary(c)?)))
        }
        Some(Tok::Sym("(")) => {
            c.bump();
            let p = par(c)?;
            c.expect_sym(")")?;
            Ok(p)
        }
        Some(Tok::Ident(s)) if s == "new" => {
            c.bump();
            let xs = {
                let mut xs = vec![term::parse_name_at(c)?];
                while c.eat_sym(",") {
                    xs.push(term::parse_name_at(c)?);
                }
                xs
            };
            c.expect_sym(".")?;
            let body = unary(c)?;
            Ok(xs.into_iter().rev().fold(body, |acc, x| Arc::new(PiProcess::Nu(x, acc))))
        }
        Some(Tok::Ident(_)) => {
            let ch = term::parse_name_at(c)?;
            if c.eat_sym("(") {
                let xs = names(c, ")")?;
                Ok(Arc::new(PiProcess::In(ch, xs, cont(c)?)))
            } else if c.eat_sym("<") {
                let ys = names(c, ">")?;
                Ok(Arc::new(PiProcess::Out(ch, ys, cont(c)?)))
            } else {
                Err(c.error("expected `(` or `<` after a channel".into()))
            }
        }
        _ => Err(c.error("expected a pi-calculus process".into())),
    }
}

fn join(xs: &[Name]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

struct Unary<'a>(&'a PiProcess);

impl fmt::Display for Unary<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            PiProcess::Nil => f.write_str("0"),
            PiProcess::Par(..) => write!(f, "({})", self.0),
            PiProcess::Bang(p) => write!(f, "!{}", Unary(p)),
            PiProcess::Nu(x, p) => write!(f, "new {}.{}", x, Unary(p)),
            PiProcess::In(c, xs, p) => write!(f, "{}({}).{}", c, join(xs), Unary(p)),
            PiProcess::Out(c, ys, p) => write!(f, "{}<{}>.{}", c, join(ys), Unary(p)),
        }
    }
}

impl fmt::Display for PiProcess {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PiProcess::Par(a, b) => {
                if matches!(**a, PiProcess::Par(..)) {
                    write!(f, "{}", a)?;
                } else {
                    write!(f, "{}", Unary(a))?;
                }
                write!(f, " | {}", Unary(b))
            }
            _ => write!(f, "{}", Unary(self)),
        }
    }
}

impl fmt::Debug for PiProcess {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Capture-avoiding renaming of free names.
pub fn pi_subst(p: &Arc<PiProcess>, s: &BTreeMap<Name, Name>, avoid: &mut BTreeSet<Name>) -> Arc<PiProcess> {
    if s.is_empty() {
        return p.clone();
    }
    let n = |x: &Name| s.get(x).cloned().unwrap_or_else(|| x.clone());
    let range: BTreeSet<Name> = s.values().cloned().collect();
    let bind = |xs: &[Name], s: &BTreeMap<Name, Name>, avoid: &mut BTreeSet<Name>| {
        let mut inner: BTreeMap<Name, Name> = s.iter().filter(|(k, _)| !xs.contains(k)).map(|(k, v)| (k.clone(), v.clone())).collect();
        let mut out = Vec::new();
        for x in xs {
            if range.contains(x) {
                let x2 = term::fresh_name(&x.base, avoid);
                avoid.insert(x2.clone());
                inner.insert(x.clone(), x2.clone());
                out.push(x2);
            } else {
                out.push(x.clone());
            }
        }
        (out, inner)
    };
    match &**p {
        PiProcess::Nil => p.clone(),
        PiProcess::Par(a, b) => PiProcess::par(pi_subst(a, s, avoid), pi_subst(b, s, avoid)),
        PiProcess::Bang(q) => Arc::new(PiProcess::Bang(pi_subst(q, s, avoid))),
        PiProcess::Nu(x, q) => {
            let (xs, inner) = bind(std::slice::from_ref(x), s, avoid);
            Arc::new(PiProcess::Nu(xs[0].clone(), pi_subst(q, &inner, avoid)))
        }
        PiProcess::Out(c, ys, q) => Arc::new(PiProcess::Out(n(c), ys.iter().map(n).collect(), pi_subst(q, s, avoid))),
        PiProcess::In(c, xs, q) => {
            let (xs2, inner) = bind(xs, s, avoid);
            Arc::new(PiProcess::In(n(c), xs2, pi_subst(q, &inner, avoid)))
        }
    }
}
