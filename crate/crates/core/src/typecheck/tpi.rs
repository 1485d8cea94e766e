use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use super::unify::{Term, Unifier};
use crate::calculi::{encode_pi, pi_fbn, pi_subst, PiProcess};
use crate::infer::{infer_principal, InferError};
use crate::lex::{Cursor, ParseError, Tok};
use crate::rules::rsp;
use crate::shape::{ElementType, MessageType, ShapeGraph, ShapePredicate};
use crate::term::{self, BasicName, Name};

/// Channel types: a type variable, or `ch[T1, ..., Tk]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PiType {
    Var(Arc<str>),
    Ch(Vec<PiType>),
}

pub type PiContext = BTreeMap<BasicName, PiType>;

impl PiType {
    pub fn var(s: &str) -> PiType {
        PiType::Var(Arc::from(s))
    }
}

impl fmt::Display for PiType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PiType::Var(v) => f.write_str(v),
            PiType::Ch(ts) => {
                let v: Vec<String> = ts.iter().map(|t| t.to_string()).collect();
                write!(f, "ch[{}]", v.join(", "))
            }
        }
    }
}

impl fmt::Debug for PiType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

pub fn parse_pi_type(src: &str) -> Result<PiType, ParseError> {
    let mut c = Cursor::new(src)?;
    let t = pi_type(&mut c)?;
    c.expect_end()?;
    Ok(t)
}

/// `a: ch[i], b: i`
pub fn parse_pi_context(src: &str) -> Result<PiContext, ParseError> {
    let mut c = Cursor::new(src)?;
    let mut ctx = PiContext::new();
    while !c.at_end() {
        let n = term::parse_name_at(&mut c)?;
        c.expect_sym(":")?;
        ctx.insert(n.base, pi_type(&mut c)?);
        if !c.eat_sym(",") {
            break;
        }
    }
    c.expect_end()?;
    Ok(ctx)
}

fn pi_type(c: &mut Cursor) -> Result<PiType, ParseError> {
    match c.bump() {
        Some(Tok::Ident(s)) if s == "ch" => {
            c.expect_sym("[")?;
            let mut ts = Vec::new();
            if !c.eat_sym("]") {
                loop {
                    ts.push(pi_type(c)?);
                    if !c.eat_sym(",") {
                        break;
                    }
                }
                c.expect_sym("]")?;
            }
            Ok(PiType::Ch(ts))
        }
        Some(Tok::Ident(s)) => Ok(PiType::Var(Arc::from(s.as_str()))),
        _ => Err(c.error("expected a channel type".into())),
    }
}

fn to_term(t: &PiType) -> Term {
    match t {
        PiType::Var(v) => Term::Rigid(v.clone()),
        PiType::Ch(ts) => Term::App("ch", ts.iter().map(to_term).collect()),
    }
}

fn from_term(t: &Term) -> PiType {
    match t {
        Term::Var(v) => PiType::Var(Arc::from(format!("'{}", v))),
        Term::Rigid(v) => PiType::Var(v.clone()),
        Term::App(_, ts) => PiType::Ch(ts.iter().map(from_term).collect()),
    }
}

type Env = BTreeMap<BasicName, Term>;

fn check(env: &Env, p: &PiProcess, u: &mut Unifier) -> bool {
    let ty = |env: &Env, x: &Name| env.get(&x.base).cloned();
    match p {
        PiProcess::Nil => true,
        PiProcess::Par(a, b) => check(env, a, u) && check(env, b, u),
        PiProcess::Bang(q) => check(env, q, u),
        PiProcess::Nu(x, q) => {
            let mut env2 = env.clone();
            env2.insert(x.base.clone(), u.fresh());
            check(&env2, q, u)
        }
        PiProcess::In(c, xs, q) => {
            let Some(tc) = ty(env, c) else { return false };
            let ts: Vec<Term> = xs.iter().map(|_| u.fresh()).collect();
            if !u.unify(&tc, &Term::App("ch", ts.clone())) {
                return false;
            }
            let mut env2 = env.clone();
            env2.extend(xs.iter().map(|x| x.base.clone()).zip(ts));
            check(&env2, q, u)
        }
        PiProcess::Out(c, ys, q) => {
            let Some(tc) = ty(env, c) else { return false };
            let Some(ts) = ys.iter().map(|y| ty(env, y)).collect::<Option<Vec<_>>>() else { return false };
            u.unify(&tc, &Term::App("ch", ts)) && check(env, q, u)
        }
    }
}

/// `ctx ⊢ p`, with the context's type variables held fixed.
pub fn tpi_check(ctx: &PiContext, p: &PiProcess) -> bool {
    let env: Env = ctx.iter().map(|(a, t)| (a.clone(), to_term(t))).collect();
    check(&env, p, &mut Unifier::default())
}

/// A most general context for the free names of `p`, if one exists.
pub fn tpi_infer(p: &PiProcess) -> Option<PiContext> {
    let mut u = Unifier::default();
    let env: Env = pi_fbn(p).into_iter().map(|a| (a, u.fresh())).collect();
    if !check(&env, p, &mut u) {
        return None;
    }
    Some(env.iter().map(|(a, t)| (a.clone(), from_term(&u.resolve(t)))).collect())
}

/// Whether some context types `p`.
pub fn tpi_typable(p: &PiProcess) -> bool {
    tpi_infer(p).is_some()
}

/// Communication labels `a in<b..>` / `a out<b..>`: channel and argument bases.
fn comm_edges(g: &ShapeGraph) -> Vec<(&BasicName, Vec<&MessageType>, Vec<&BasicName>)> {
    let mut out = Vec::new();
    for e in &g.edges {
        if let [ElementType::Name(a), last] = e.label.0.as_slice() {
            match last {
                ElementType::In(bs) => out.push((a, Vec::new(), bs.iter().collect())),
                ElementType::Out(ms) => out.push((a, ms.iter().collect(), Vec::new())),
                ElementType::Name(_) => {}
            }
        }
    }
    out
}

fn single(m: &MessageType) -> Option<&BasicName> {
    match m {
        MessageType::Single(b) => Some(b),
        MessageType::Star(_) => None,
    }
}

/// Pairs of expected and actual channel types; `None` when `ctx` misses a base.
pub fn chtypes(ctx: &PiContext, g: &ShapeGraph) -> Option<BTreeSet<(PiType, PiType)>> {
    let mut out = BTreeSet::new();
    for (a, ms, bs) in comm_edges(g) {
        let args: Vec<&BasicName> = if ms.is_empty() { bs } else { ms.into_iter().map(single).collect::<Option<_>>()? };
        let actual = PiType::Ch(args.into_iter().map(|b| ctx.get(b).cloned()).collect::<Option<_>>()?);
        out.insert((ctx.get(a)?.clone(), actual));
    }
    Some(out)
}

/// Some extension of `ctx` to the remaining bases makes every channel's
/// expected and actual types equal.
pub fn agrees(ctx: &PiContext, s: &ShapePredicate) -> bool {
    let mut u = Unifier::default();
    let mut env: Env = ctx.iter().map(|(a, t)| (a.clone(), to_term(t))).collect();
    let mut ty = |b: &BasicName, u: &mut Unifier| env.entry(b.clone()).or_insert_with(|| u.fresh()).clone();
    for (a, ms, bs) in comm_edges(&s.graph) {
        let args: Vec<&BasicName> = if ms.is_empty() {
            bs
        } else {
            match ms.into_iter().map(single).collect::<Option<_>>() {
                Some(v) => v,
                None => return false,
            }
        };
        let actual = Term::App("ch", args.into_iter().map(|b| ty(b, &mut u)).collect());
        let expected = ty(a, &mut u);
        if !u.unify(&expected, &actual) {
            return false;
        }
    }
    true
}

/// Renames binders so that no two binders, and no binder and free name, share a basic name.
pub fn distinct_binders(p: &Arc<PiProcess>) -> Arc<PiProcess> {
    let mut used: BTreeSet<BasicName> = pi_fbn(p);
    let mut avoid = BTreeSet::new();
    collect(p, &mut avoid);
    used.extend(avoid.iter().map(|n| n.base.clone()));
    let mut seen = pi_fbn(p);
    go(p, &mut seen, &mut used, &mut avoid)
}

fn collect(p: &PiProcess, out: &mut BTreeSet<Name>) {
    match p {
        PiProcess::Nil => {}
        PiProcess::In(c, xs, q) | PiProcess::Out(c, xs, q) => {
            out.insert(c.clone());
            out.extend(xs.iter().cloned());
            collect(q, out);
        }
        PiProcess::Par(a, b) => {
            collect(a, out);
            collect(b, out);
        }
        PiProcess::Nu(x, q) => {
            out.insert(x.clone());
            collect(q, out);
        }
        PiProcess::Bang(q) => collect(q, out),
    }
}

fn fresh_base(b: &BasicName, used: &mut BTreeSet<BasicName>) -> BasicName {
    let mut k = 1;
    loop {
        let c = BasicName::new(&format!("{}{}", b.as_str(), k));
        if used.insert(c.clone()) {
            return c;
        }
        k += 1;
    }
}

fn go(p: &Arc<PiProcess>, seen: &mut BTreeSet<BasicName>, used: &mut BTreeSet<BasicName>, avoid: &mut BTreeSet<Name>) -> Arc<PiProcess> {
    match &**p {
        PiProcess::Nil => p.clone(),
        PiProcess::Par(a, b) => PiProcess::par(go(a, seen, used, avoid), go(b, seen, used, avoid)),
        PiProcess::Bang(q) => Arc::new(PiProcess::Bang(go(q, seen, used, avoid))),
        PiProcess::Out(c, ys, q) => Arc::new(PiProcess::Out(c.clone(), ys.clone(), go(q, seen, used, avoid))),
        PiProcess::Nu(x, q) => {
            let (xs, q2) = bind(std::slice::from_ref(x), q, seen, used, avoid);
            Arc::new(PiProcess::Nu(xs[0].clone(), go(&q2, seen, used, avoid)))
        }
        PiProcess::In(c, xs, q) => {
            let (xs2, q2) = bind(xs, q, seen, used, avoid);
            Arc::new(PiProcess::In(c.clone(), xs2, go(&q2, seen, used, avoid)))
        }
    }
}

/// Decides `ctx ⊢ p` through the principal shape type of `p`.
pub fn tpi_decide(ctx: &PiContext, p: &Arc<PiProcess>) -> Result<bool, InferError> {
    let q = distinct_binders(p);
    let s = infer_principal(&rsp(q.max_arity()), &encode_pi(&q))?;
    Ok(agrees(ctx, &s))
}

fn bind(
    xs: &[Name],
    q: &Arc<PiProcess>,
    seen: &mut BTreeSet<BasicName>,
    used: &mut BTreeSet<BasicName>,
    avoid: &mut BTreeSet<Name>,
) -> (Vec<Name>, Arc<PiProcess>) {
    let mut s = BTreeMap::new();
    let mut out = Vec::new();
    for x in xs {
        if seen.insert(x.base.clone()) {
            out.push(x.clone());
        } else {
            let y = Name::indexed(fresh_base(&x.base, used), x.index);
            seen.insert(y.base.clone());
            avoid.insert(y.clone());
            s.insert(x.clone(), y.clone());
            out.push(y);
        }
    }
    (out, pi_subst(q, &s, avoid))
}
