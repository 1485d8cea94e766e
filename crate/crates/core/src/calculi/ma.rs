use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::lex::{Cursor, ParseError, Tok};
use crate::term::{self, Action, BasicName, Element, Message, Name, Process};

/// Message types `Amb[T]`, `Cap[T]`; `?w` is an unknown.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MsgType {
    Amb(ExType),
    Cap(ExType),
    Var(Arc<str>),
}

/// Exchange types: `Shh` or a tuple of message types (`1` when empty).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExType {
    Shh,
    Tuple(Vec<MsgType>),
    Var(Arc<str>),
}

impl MsgType {
    pub fn is_ground(&self) -> bool {
        match self {
            MsgType::Amb(t) | MsgType::Cap(t) => t.is_ground(),
            MsgType::Var(_) => false,
        }
    }
}

impl ExType {
    pub fn unit() -> ExType {
        ExType::Tuple(Vec::new())
    }

    pub fn is_ground(&self) -> bool {
        match self {
            ExType::Shh => true,
            ExType::Tuple(ws) => ws.iter().all(MsgType::is_ground),
            ExType::Var(_) => false,
        }
    }
}

/// Capabilities.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cap {
    Empty,
    Name(Name),
    In(Box<Cap>),
    Out(Box<Cap>),
    Open(Box<Cap>),
    Seq(Box<Cap>, Box<Cap>),
}

impl Cap {
    pub fn name(s: &str) -> Cap {
        Cap::Name(Name::new(s))
    }

    pub fn names(&self, out: &mut BTreeSet<Name>) {
        match self {
            Cap::Empty => {}
            Cap::Name(n) => {
                out.insert(n.clone());
            }
            Cap::In(c) | Cap::Out(c) | Cap::Open(c) => c.names(out),
            Cap::Seq(a, b) => {
                a.names(out);
                b.names(out);
            }
        }
    }

    pub fn subst(&self, s: &BTreeMap<Name, Cap>) -> Cap {
        match self {
            Cap::Empty => Cap::Empty,
            Cap::Name(n) => s.get(n).cloned().unwrap_or_else(|| self.clone()),
            Cap::In(c) => Cap::In(Box::new(c.subst(s))),
            Cap::Out(c) => Cap::Out(Box::new(c.subst(s))),
            Cap::Open(c) => Cap::Open(Box::new(c.subst(s))),
            Cap::Seq(a, b) => Cap::Seq(Box::new(a.subst(s)), Box::new(b.subst(s))),
        }
    }
}

/// Mobile ambient processes with typed binders.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MaProcess {
    Nil,
    Par(Arc<MaProcess>, Arc<MaProcess>),
    Nu(Name, MsgType, Arc<MaProcess>),
    Bang(Arc<MaProcess>),
    Amb(Cap, Arc<MaProcess>),
    Prefix(Cap, Arc<MaProcess>),
    Output(Vec<Cap>),
    Input(Vec<(Name, MsgType)>, Arc<MaProcess>),
}

impl MaProcess {
    pub fn nil() -> Arc<MaProcess> {
        Arc::new(MaProcess::Nil)
    }

    pub fn par(a: Arc<MaProcess>, b: Arc<MaProcess>) -> Arc<MaProcess> {
        Arc::new(MaProcess::Par(a, b))
    }

    pub fn par_all<I: IntoIterator<Item = Arc<MaProcess>>>(ps: I) -> Arc<MaProcess> {
        ps.into_iter().reduce(MaProcess::par).unwrap_or_else(MaProcess::nil)
    }

    pub fn max_arity(&self) -> usize {
        match self {
            MaProcess::Nil => 0,
            MaProcess::Par(a, b) => a.max_arity().max(b.max_arity()),
            MaProcess::Nu(_, _, p) | MaProcess::Bang(p) | MaProcess::Amb(_, p) | MaProcess::Prefix(_, p) => p.max_arity(),
            MaProcess::Output(ms) => ms.len(),
            MaProcess::Input(xs, p) => xs.len().max(p.max_arity()),
        }
    }

    /// Binders with their annotations: (name, type, bound by restriction).
    pub fn binders(&self) -> Vec<(Name, MsgType, bool)> {
        let mut out = Vec::new();
        fn go(p: &MaProcess, out: &mut Vec<(Name, MsgType, bool)>) {
            match p {
                MaProcess::Nil | MaProcess::Output(_) => {}
                MaProcess::Par(a, b) => {
                    go(a, out);
                    go(b, out);
                }
                MaProcess::Nu(x, w, q) => {
                    out.push((x.clone(), w.clone(), true));
                    go(q, out);
                }
                MaProcess::Input(xs, q) => {
                    out.extend(xs.iter().map(|(x, w)| (x.clone(), w.clone(), false)));
                    go(q, out);
                }
                MaProcess::Bang(q) | MaProcess::Amb(_, q) | MaProcess::Prefix(_, q) => go(q, out),
            }
        }
        go(self, &mut out);
        out
    }
}

/// A name, or `•` for any other capability.
pub fn cabname(m: &Cap) -> Name {
    match m {
        Cap::Name(n) => n.clone(),
        _ => Name::bullet(),
    }
}

pub fn cabenc(m: &Cap) -> Message {
    let form = |kw: &str, c: &Cap| Message::Form(vec![Name::new(kw), cabname(c)]);
    match m {
        Cap::Empty => Message::Empty,
        Cap::Name(n) => Message::name(n.clone()),
        Cap::In(c) => form("in", c),
        Cap::Out(c) => form("out", c),
        Cap::Open(c) => form("open", c),
        Cap::Seq(a, b) => Message::comp(cabenc(a), cabenc(b)),
    }
}

/// The encoded process, plus the annotation of every binder (erased from the term).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EncodedMa {
    pub process: Arc<Process>,
    pub annotations: Vec<(Name, MsgType, bool)>,
}

pub fn encode_ma(p: &MaProcess) -> EncodedMa {
    EncodedMa { process: enc(p), annotations: p.binders() }
}

fn enc(p: &MaProcess) -> Arc<Process> {
    match p {
        MaProcess::Nil => Process::nil(),
        MaProcess::Par(a, b) => Process::par(enc(a), enc(b)),
        MaProcess::Nu(x, _, q) => Process::nu(x.clone(), enc(q)),
        MaProcess::Bang(q) => Process::bang(enc(q)),
        MaProcess::Amb(m, q) => Process::prefix(Action::ambient(cabname(m)), enc(q)),
        MaProcess::Prefix(m, q) => term::splice(&cabenc(m), enc(q)),
        MaProcess::Output(ms) => Process::prefix(Action(vec![Element::Out(ms.iter().map(cabenc).collect())]), Process::nil()),
        MaProcess::Input(xs, q) => {
            Process::prefix(Action(vec![Element::In(xs.iter().map(|(x, _)| x.clone()).collect())]), enc(q))
        }
    }
}

/// Reasons an MA process fails the scoping conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MaScopeViolation {
    Term(term::ScopeViolation),
    /// Two binders of the same basic name carry different types.
    Conflict(BasicName),
}

pub fn ma_scope_violations(p: &MaProcess) -> Vec<MaScopeViolation> {
    let mut out: Vec<MaScopeViolation> = term::scope_violations(&enc(p)).into_iter().map(MaScopeViolation::Term).collect();
    let mut seen: BTreeMap<BasicName, MsgType> = BTreeMap::new();
    let mut conflicts = BTreeSet::new();
    for (x, w, _) in p.binders() {
        match seen.get(&x.base) {
            Some(w0) if *w0 != w => {
                conflicts.insert(x.base.clone());
            }
            _ => {
                seen.insert(x.base.clone(), w);
            }
        }
    }
    out.extend(conflicts.into_iter().map(MaScopeViolation::Conflict));
    out
}

pub fn ma_well_scoped(p: &MaProcess) -> bool {
    ma_scope_violations(p).is_empty()
}

/// Capture-avoiding substitution of capabilities for names.
pub fn ma_subst(p: &Arc<MaProcess>, s: &BTreeMap<Name, Cap>, avoid: &mut BTreeSet<Name>) -> Arc<MaProcess> {
    if s.is_empty() {
        return p.clone();
    }
    let mut range = BTreeSet::new();
    for c in s.values() {
        c.names(&mut range);
    }
    let bind = |xs: &[Name], avoid: &mut BTreeSet<Name>| {
        let mut inner: BTreeMap<Name, Cap> = s.iter().filter(|(k, _)| !xs.contains(k)).map(|(k, v)| (k.clone(), v.clone())).collect();
        let mut out = Vec::new();
        for x in xs {
            if range.contains(x) {
                let x2 = term::fresh_name(&x.base, avoid);
                avoid.insert(x2.clone());
                inner.insert(x.clone(), Cap::Name(x2.clone()));
                out.push(x2);
            } else {
                out.push(x.clone());
            }
        }
        (out, inner)
    };
    match &**p {
        MaProcess::Nil => p.clone(),
        MaProcess::Par(a, b) => MaProcess::par(ma_subst(a, s, avoid), ma_subst(b, s, avoid)),
        MaProcess::Bang(q) => Arc::new(MaProcess::Bang(ma_subst(q, s, avoid))),
        MaProcess::Amb(m, q) => Arc::new(MaProcess::Amb(m.subst(s), ma_subst(q, s, avoid))),
        MaProcess::Prefix(m, q) => Arc::new(MaProcess::Prefix(m.subst(s), ma_subst(q, s, avoid))),
        MaProcess::Output(ms) => Arc::new(MaProcess::Output(ms.iter().map(|m| m.subst(s)).collect())),
        MaProcess::Nu(x, w, q) => {
            let (xs, inner) = bind(std::slice::from_ref(x), avoid);
            Arc::new(MaProcess::Nu(xs[0].clone(), w.clone(), ma_subst(q, &inner, avoid)))
        }
        MaProcess::Input(xs, q) => {
            let names: Vec<Name> = xs.iter().map(|(x, _)| x.clone()).collect();
            let (ns, inner) = bind(&names, avoid);
            let xs2 = ns.into_iter().zip(xs).map(|(n, (_, w))| (n, w.clone())).collect();
            Arc::new(MaProcess::Input(xs2, ma_subst(q, &inner, avoid)))
        }
    }
}

pub fn parse_ma(src: &str) -> Result<Arc<MaProcess>, ParseError> {
    let mut c = Cursor::new(src)?;
    let p = par(&mut c)?;
    c.expect_end()?;
    Ok(p)
}

pub fn parse_msg_type(src: &str) -> Result<MsgType, ParseError> {
    let mut c = Cursor::new(src)?;
    let w = msg_type(&mut c)?;
    c.expect_end()?;
    Ok(w)
}

pub fn parse_ex_type(src: &str) -> Result<ExType, ParseError> {
    let mut c = Cursor::new(src)?;
    let t = ex_type(&mut c)?;
    c.expect_end()?;
    Ok(t)
}

/// `d: Amb[1], x: Cap[1]`
pub fn parse_env(src: &str) -> Result<BTreeMap<BasicName, MsgType>, ParseError> {
    let mut c = Cursor::new(src)?;
    let mut env = BTreeMap::new();
    while !c.at_end() {
        let n = term::parse_name_at(&mut c)?;
        c.expect_sym(":")?;
        env.insert(n.base, msg_type(&mut c)?);
        if !c.eat_sym(",") {
            break;
        }
    }
    c.expect_end()?;
    Ok(env)
}

fn type_var(c: &mut Cursor) -> Result<Arc<str>, ParseError> {
    c.expect_sym("?")?;
    match c.bump() {
        Some(Tok::Ident(s)) => Ok(Arc::from(s.as_str())),
        _ => Err(c.error("expected a type variable name".into())),
    }
}

fn msg_type(c: &mut Cursor) -> Result<MsgType, ParseError> {
    if c.is_sym("?") {
        return Ok(MsgType::Var(type_var(c)?));
    }
    let amb = if c.is_ident("Amb") {
        true
    } else if c.is_ident("Cap") {
        false
    } else {
        return Err(c.error("expected `Amb[..]`, `Cap[..]` or `?name`".into()));
    };
    c.bump();
    c.expect_sym("[")?;
    let t = ex_type(c)?;
    c.expect_sym("]")?;
    Ok(if amb { MsgType::Amb(t) } else { MsgType::Cap(t) })
}

fn ex_type(c: &mut Cursor) -> Result<ExType, ParseError> {
    if c.is_ident("Shh") {
        c.bump();
        return Ok(ExType::Shh);
    }
    if matches!(c.peek(), Some(Tok::Int(1))) {
        c.bump();
        return Ok(ExType::unit());
    }
    if c.is_sym("?") && !matches!(c.peek_at(2), Some(Tok::Sym("×"))) && !matches!(c.peek_at(2), Some(Tok::Ident(s)) if s == "x") {
        return Ok(ExType::Var(type_var(c)?));
    }
    let mut ws = vec![msg_type(c)?];
    while c.eat_sym("×") || (c.is_ident("x") && c.bump().is_some()) {
        ws.push(msg_type(c)?);
    }
    Ok(ExType::Tuple(ws))
}

fn par(c: &mut Cursor) -> Result<Arc<MaProcess>, ParseError> {
    let mut p = unary(c)?;
    while c.eat_sym("|") {
        let q = unary(c)?;
        p = MaProcess::par(p, q);
    }
    Ok(p)
}

fn is_cap_start(c: &Cursor) -> bool {
    matches!(c.peek(), Some(Tok::Ident(s)) if s != "new") || matches!(c.peek(), Some(Tok::Eps))
}

fn cap_arg(c: &mut Cursor) -> Result<Cap, ParseError> {
    match c.peek() {
        Some(Tok::Sym("(")) => {
            c.bump();
            let m = cap(c)?;
            c.expect_sym(")")?;
            Ok(m)
        }
        _ => cap_atom(c),
    }
}

fn cap_atom(c: &mut Cursor) -> Result<Cap, ParseError> {
    match c.peek() {
        Some(Tok::Eps) => {
            c.bump();
            Ok(Cap::Empty)
        }
        Some(Tok::Ident(s)) if s == "in" || s == "out" || s == "open" => {
            let kw = s.clone();
            c.bump();
            let arg = Box::new(cap_arg(c)?);
            Ok(match kw.as_str() {
                "in" => Cap::In(arg),
                "out" => Cap::Out(arg),
                _ => Cap::Open(arg),
            })
        }
        Some(Tok::Ident(_)) => Ok(Cap::Name(term::parse_name_at(c)?)),
        _ => Err(c.error("expected a capability".into())),
    }
}

fn cap(c: &mut Cursor) -> Result<Cap, ParseError> {
    let mut m = cap_arg(c)?;
    while c.eat_sym(".") {
        m = Cap::Seq(Box::new(m), Box::new(cap_arg(c)?));
    }
    Ok(m)
}

fn caps(c: &mut Cursor) -> Result<Vec<Cap>, ParseError> {
    let mut ms = Vec::new();
    if c.eat_sym(">") {
        return Ok(ms);
    }
    loop {
        ms.push(cap(c)?);
        if !c.eat_sym(",") {
            break;
        }
    }
    c.expect_sym(">")?;
    Ok(ms)
}

/// For a `(` at the cursor, the token after its matching `)` when that is
/// `.` or `[`, which makes the group a capability.
fn group_then(c: &Cursor) -> Option<&str> {
    let mut depth = 0usize;
    let mut k = 0;
    while let Some(t) = c.peek_at(k) {
        match t {
            Tok::Sym("(") => depth += 1,
            Tok::Sym(")") => {
                depth -= 1;
                if depth == 0 {
                    return match c.peek_at(k + 1) {
                        Some(Tok::Sym(s)) if *s == "." || *s == "[" => Some(s),
                        _ => None,
                    };
                }
            }
            _ => {}
        }
        k += 1;
    }
    None
}

fn unary(c: &mut Cursor) -> Result<Arc<MaProcess>, ParseError> {
    match c.peek() {
        Some(Tok::Int(0)) => {
            c.bump();
            Ok(MaProcess::nil())
        }
        Some(Tok::Sym("!")) => {
            c.bump();
            Ok(Arc::new(MaProcess::Bang(unary(c)?)))
        }
        Some(Tok::Sym("<")) => {
            c.bump();
            let ms = caps(c)?;
            if c.is_sym(".") && matches!(c.peek_at(1), Some(Tok::Int(0))) {
                c.bump();
                c.bump();
            }
            Ok(Arc::new(MaProcess::Output(ms)))
        }
        Some(Tok::Sym("(")) => {
            let input = matches!(c.peek_at(1), Some(Tok::Ident(_))) && matches!(c.peek_at(2), Some(Tok::Sym(":")))
                || matches!(c.peek_at(1), Some(Tok::Sym(")")));
            if !input && group_then(c).is_some() {
                c.bump();
                let m = cap(c)?;
                c.expect_sym(")")?;
                if c.eat_sym("[") {
                    let body = if c.is_sym("]") { MaProcess::nil() } else { par(c)? };
                    c.expect_sym("]")?;
                    return Ok(Arc::new(MaProcess::Amb(m, body)));
                }
                c.expect_sym(".")?;
                return Ok(Arc::new(MaProcess::Prefix(m, unary(c)?)));
            }
            c.bump();
            if input {
                let mut xs = Vec::new();
                if !c.eat_sym(")") {
                    loop {
                        let x = term::parse_name_at(c)?;
                        c.expect_sym(":")?;
                        xs.push((x, msg_type(c)?));
                        if !c.eat_sym(",") {
                            break;
                        }
                    }
                    c.expect_sym(")")?;
                }
                c.expect_sym(".")?;
                Ok(Arc::new(MaProcess::Input(xs, unary(c)?)))
            } else {
                let p = par(c)?;
                c.expect_sym(")")?;
                Ok(p)
            }
        }
        Some(Tok::Ident(s)) if s == "new" => {
            c.bump();
            c.expect_sym("(")?;
            let x = term::parse_name_at(c)?;
            c.expect_sym(":")?;
            let w = msg_type(c)?;
            c.expect_sym(")")?;
            c.eat_sym(".");
            Ok(Arc::new(MaProcess::Nu(x, w, unary(c)?)))
        }
        _ if is_cap_start(c) => {
            let mut chain = vec![cap_atom(c)?];
            loop {
                if c.is_sym("[") {
                    c.bump();
                    let body = if c.is_sym("]") { MaProcess::nil() } else { par(c)? };
                    c.expect_sym("]")?;
                    let amb = chain.pop().expect("chain is non-empty");
                    let p = Arc::new(MaProcess::Amb(amb, body));
                    return Ok(chain.into_iter().rev().fold(p, |acc, m| Arc::new(MaProcess::Prefix(m, acc))));
                }
                if !c.eat_sym(".") {
                    return Ok(chain.into_iter().rev().fold(MaProcess::nil(), |acc, m| Arc::new(MaProcess::Prefix(m, acc))));
                }
                if is_cap_start(c) {
                    chain.push(cap_atom(c)?);
                } else {
                    let cont = unary(c)?;
                    return Ok(chain.into_iter().rev().fold(cont, |acc, m| Arc::new(MaProcess::Prefix(m, acc))));
                }
            }
        }
        _ => Err(c.error("expected an ambient process".into())),
    }
}

impl fmt::Display for MsgType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MsgType::Amb(t) => write!(f, "Amb[{}]", t),
            MsgType::Cap(t) => write!(f, "Cap[{}]", t),
            MsgType::Var(v) => write!(f, "?{}", v),
        }
    }
}

impl fmt::Display for ExType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExType::Shh => f.write_str("Shh"),
            ExType::Tuple(ws) if ws.is_empty() => f.write_str("1"),
            ExType::Tuple(ws) => {
                let v: Vec<String> = ws.iter().map(|w| w.to_string()).collect();
                f.write_str(&v.join(" × "))
            }
            ExType::Var(v) => write!(f, "?{}", v),
        }
    }
}

impl fmt::Display for Cap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arg = |c: &Cap| match c {
            Cap::Seq(..) => format!("({})", c),
            _ => c.to_string(),
        };
        match self {
            Cap::Empty => f.write_str("ε"),
            Cap::Name(n) => write!(f, "{}", n),
            Cap::In(c) => write!(f, "in {}", arg(c)),
            Cap::Out(c) => write!(f, "out {}", arg(c)),
            Cap::Open(c) => write!(f, "open {}", arg(c)),
            Cap::Seq(a, b) if matches!(**b, Cap::Seq(..)) => write!(f, "{}.({})", a, b),
            Cap::Seq(a, b) => write!(f, "{}.{}", a, b),
        }
    }
}

struct Unary<'a>(&'a MaProcess);

impl fmt::Display for Unary<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            MaProcess::Nil => f.write_str("0"),
            MaProcess::Par(..) => write!(f, "({})", self.0),
            MaProcess::Bang(p) => write!(f, "!{}", Unary(p)),
            MaProcess::Nu(x, w, p) => write!(f, "new ({}:{}).{}", x, w, Unary(p)),
            MaProcess::Amb(m, p) => match m {
                Cap::Name(_) => write!(f, "{}[{}]", m, p),
                _ => write!(f, "({})[{}]", m, p),
            },
            MaProcess::Prefix(m, p) => match m {
                Cap::Seq(..) => write!(f, "({}).{}", m, Unary(p)),
                _ => write!(f, "{}.{}", m, Unary(p)),
            },
            MaProcess::Output(ms) => {
                let v: Vec<String> = ms.iter().map(|m| m.to_string()).collect();
                write!(f, "<{}>", v.join(", "))
            }
            MaProcess::Input(xs, p) => {
                let v: Vec<String> = xs.iter().map(|(x, w)| format!("{}:{}", x, w)).collect();
                write!(f, "({}).{}", v.join(", "), Unary(p))
            }
        }
    }
}

impl fmt::Display for MaProcess {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MaProcess::Par(a, b) => {
                if matches!(**a, MaProcess::Par(..)) {
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

macro_rules! debug_as_display {
    ($($t:ty),*) => {$(
        impl fmt::Debug for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}", self)
            }
        }
    )*};
}

debug_as_display!(MsgType, ExType, Cap, MaProcess);
