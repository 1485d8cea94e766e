use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use super::unify::{Term, Unifier};
use crate::calculi::{encode_ma, Cap, ExType, MaProcess, MsgType};
use crate::shape::{matches, ActionType, ElementType, FormType, MessageType, NodeId, ShapeGraph, ShapePredicate};
use crate::term::{self, BasicName};

pub type AEnvironment = BTreeMap<BasicName, MsgType>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum TmaError {
    #[error("restricted name `{0}` has non-ambient type {1}")]
    NonAmbRestriction(BasicName, MsgType),
    #[error("binders of `{0}` carry different types")]
    Conflict(BasicName),
    #[error("environment mentions restricted names {0:?}")]
    EnvMentionsRestricted(Vec<BasicName>),
    #[error("type information is not ground: {0}")]
    NotGround(String),
}

fn ex_term(t: &ExType, u: &mut Unifier) -> Term {
    match t {
        ExType::Shh => Term::App("Shh", Vec::new()),
        ExType::Tuple(ws) => Term::App("Tup", ws.iter().map(|w| msg_term(w, u)).collect()),
        ExType::Var(v) => u.named(v),
    }
}

fn msg_term(w: &MsgType, u: &mut Unifier) -> Term {
    match w {
        MsgType::Amb(t) => Term::App("Amb", vec![ex_term(t, u)]),
        MsgType::Cap(t) => Term::App("Cap", vec![ex_term(t, u)]),
        MsgType::Var(v) => u.named(v),
    }
}

type Env = BTreeMap<BasicName, Term>;

fn amb_of(u: &mut Unifier) -> (Term, Term) {
    let t = u.fresh();
    (Term::App("Amb", vec![t.clone()]), t)
}

fn cap_type(env: &Env, m: &Cap, u: &mut Unifier) -> Option<Term> {
    match m {
        Cap::Name(x) => env.get(&x.base).cloned(),
        Cap::Empty => Some(Term::App("Cap", vec![u.fresh()])),
        Cap::In(n) | Cap::Out(n) => {
            let t = cap_type(env, n, u)?;
            let (a, _) = amb_of(u);
            u.unify(&t, &a).then(|| Term::App("Cap", vec![u.fresh()]))
        }
        Cap::Open(n) => {
            let t = cap_type(env, n, u)?;
            let (a, inner) = amb_of(u);
            u.unify(&t, &a).then(|| Term::App("Cap", vec![inner]))
        }
        Cap::Seq(a, b) => {
            let ta = cap_type(env, a, u)?;
            let tb = cap_type(env, b, u)?;
            let t = u.fresh();
            let c = Term::App("Cap", vec![t]);
            (u.unify(&ta, &c) && u.unify(&tb, &c)).then_some(c)
        }
    }
}

fn check(env: &Env, p: &MaProcess, t: &Term, u: &mut Unifier) -> bool {
    match p {
        MaProcess::Nil => true,
        MaProcess::Par(a, b) => check(env, a, t, u) && check(env, b, t, u),
        MaProcess::Bang(q) => check(env, q, t, u),
        MaProcess::Prefix(m, q) => {
            let Some(tm) = cap_type(env, m, u) else { return false };
            u.unify(&tm, &Term::App("Cap", vec![t.clone()])) && check(env, q, t, u)
        }
        MaProcess::Amb(m, q) => {
            let Some(tm) = cap_type(env, m, u) else { return false };
            let (a, inner) = amb_of(u);
            u.unify(&tm, &a) && check(env, q, &inner, u)
        }
        MaProcess::Nu(x, w, q) => {
            let tw = msg_term(w, u);
            let (a, _) = amb_of(u);
            if !u.unify(&tw, &a) {
                return false;
            }
            let mut env2 = env.clone();
            env2.insert(x.base.clone(), tw);
            check(&env2, q, t, u)
        }
        MaProcess::Output(ms) => {
            let mut ws = Vec::new();
            for m in ms {
                match cap_type(env, m, u) {
                    Some(w) => ws.push(w),
                    None => return false,
                }
            }
            u.unify(t, &Term::App("Tup", ws))
        }
        MaProcess::Input(xs, q) => {
            let ws: Vec<Term> = xs.iter().map(|(_, w)| msg_term(w, u)).collect();
            if !u.unify(t, &Term::App("Tup", ws.clone())) {
                return false;
            }
            let mut env2 = env.clone();
            env2.extend(xs.iter().map(|(x, _)| x.base.clone()).zip(ws));
            check(&env2, q, t, u)
        }
    }
}

/// `env ⊢ p : t`. Type variables `?v` in `env`, `t` and the annotations of
/// `p` are solved for.
pub fn tma_check(env: &AEnvironment, p: &MaProcess, t: &ExType) -> bool {
    let mut u = Unifier::default();
    let e: Env = env.iter().map(|(a, w)| (a.clone(), msg_term(w, &mut u))).collect();
    let tt = ex_term(t, &mut u);
    check(&e, p, &tt, &mut u)
}

/// Some environment for the free names and some exchange type that type `p`.
pub fn tma_typable(p: &MaProcess) -> bool {
    let mut u = Unifier::default();
    let e: Env = term::fbn(&encode_ma(p).process).into_iter().map(|a| (a, u.fresh())).collect();
    let t = u.fresh();
    check(&e, p, &t, &mut u)
}

/// Annotations of restricted and input-bound names.
pub fn extract_envs(p: &MaProcess) -> Result<(AEnvironment, AEnvironment), TmaError> {
    let mut nu = AEnvironment::new();
    let mut inp = AEnvironment::new();
    for (x, w, restricted) in p.binders() {
        if restricted && !matches!(w, MsgType::Amb(_)) {
            return Err(TmaError::NonAmbRestriction(x.base, w));
        }
        let env = if restricted { &mut nu } else { &mut inp };
        match env.get(&x.base) {
            Some(w0) if *w0 != w => return Err(TmaError::Conflict(x.base)),
            _ => {
                env.insert(x.base, w);
            }
        }
    }
    if let Some(a) = nu.keys().find(|a| inp.contains_key(*a)) {
        return Err(TmaError::Conflict(a.clone()));
    }
    Ok((nu, inp))
}

/// Types of all names, types of input-bound names, and the top exchange type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeInfo {
    pub all: AEnvironment,
    pub com: AEnvironment,
    pub top: ExType,
}

impl TypeInfo {
    pub fn new(env: AEnvironment, com: AEnvironment, top: ExType) -> TypeInfo {
        let mut all = env;
        all.extend(com.iter().map(|(a, w)| (a.clone(), w.clone())));
        TypeInfo { all, com, top }
    }

    /// The root's type first, then the remaining ambient types in order.
    pub fn extypes(&self) -> Vec<ExType> {
        let mut rest: BTreeSet<ExType> = self
            .all
            .values()
            .filter_map(|w| match w {
                MsgType::Amb(t) => Some(t.clone()),
                _ => None,
            })
            .collect();
        rest.remove(&self.top);
        std::iter::once(self.top.clone()).chain(rest).collect()
    }

    pub fn namesof(&self, w: &MsgType) -> Vec<BasicName> {
        self.all.iter().filter(|(_, v)| *v == w).map(|(a, _)| a.clone()).collect()
    }

    fn ambients(&self) -> impl Iterator<Item = &BasicName> {
        self.all.iter().filter(|(_, w)| matches!(w, MsgType::Amb(_))).map(|(a, _)| a)
    }

    pub fn moves(&self) -> BTreeSet<ActionType> {
        let mut out = BTreeSet::new();
        for a in self.ambients() {
            for kw in ["in", "out"] {
                out.insert(ActionType(vec![ElementType::Name(BasicName::new(kw)), ElementType::Name(a.clone())]));
            }
        }
        out
    }

    pub fn opens(&self, t: &ExType) -> BTreeSet<ActionType> {
        let open = BasicName::new("open");
        let mut out: BTreeSet<ActionType> = self
            .namesof(&MsgType::Amb(t.clone()))
            .into_iter()
            .map(|a| ActionType(vec![ElementType::Name(open.clone()), ElementType::Name(a)]))
            .collect();
        out.extend(self.namesof(&MsgType::Cap(t.clone())).into_iter().map(ActionType::name));
        out
    }

    pub fn msg(&self, w: &MsgType) -> BTreeSet<MessageType> {
        let mut out: BTreeSet<MessageType> = self.namesof(w).into_iter().map(MessageType::Single).collect();
        if let MsgType::Cap(t) = w {
            let forms = self.moves().into_iter().chain(self.opens(t)).map(|l| {
                FormType(
                    l.0.into_iter()
                        .map(|e| match e {
                            ElementType::Name(n) => n,
                            _ => unreachable!("capability labels are name sequences"),
                        })
                        .collect(),
                )
            });
            out.insert(MessageType::star(forms));
        }
        out
    }

    pub fn comm(&self, t: &ExType) -> BTreeSet<ActionType> {
        let ExType::Tuple(ws) = t else { return BTreeSet::new() };
        let mut outs: Vec<Vec<MessageType>> = vec![Vec::new()];
        for w in ws {
            let choices = self.msg(w);
            outs = outs.into_iter().flat_map(|pre| choices.iter().map(move |m| [pre.clone(), vec![m.clone()]].concat())).collect();
        }
        let mut ins: Vec<Vec<BasicName>> = vec![Vec::new()];
        for w in ws {
            let choices: Vec<BasicName> = self.com.iter().filter(|(_, v)| *v == w).map(|(a, _)| a.clone()).collect();
            let mut next = Vec::new();
            for pre in &ins {
                for a in choices.iter().filter(|a| !pre.contains(a)) {
                    next.push([pre.clone(), vec![a.clone()]].concat());
                }
            }
            ins = next;
        }
        outs.into_iter()
            .map(|ms| ActionType(vec![ElementType::Out(ms)]))
            .chain(ins.into_iter().map(|xs| ActionType(vec![ElementType::In(xs)])))
            .collect()
    }

    pub fn allowed(&self, t: &ExType) -> BTreeSet<ActionType> {
        let mut out = self.moves();
        out.extend(self.opens(t));
        out.extend(self.comm(t));
        out
    }

    fn ground(&self) -> Result<(), TmaError> {
        if let Some(w) = self.all.values().find(|w| !w.is_ground()) {
            return Err(TmaError::NotGround(w.to_string()));
        }
        if !self.top.is_ground() {
            return Err(TmaError::NotGround(self.top.to_string()));
        }
        Ok(())
    }
}

/// The shape type of everything `info` allows: one node per exchange type,
/// legal actions as self-loops, ambient edges into the ambient's node.
pub fn typenc(info: &TypeInfo) -> ShapePredicate {
    let types = info.extypes();
    let node = |t: &ExType| NodeId(types.iter().position(|u| u == t).expect("known exchange type") as u32);
    let mut g = ShapeGraph::default();
    for t in &types {
        let n = node(t);
        g.nodes.insert(n);
        for l in info.allowed(t) {
            g.add_edge(n, l, n);
        }
    }
    for (a, w) in &info.all {
        if let MsgType::Amb(t) = w {
            let y = node(t);
            for x in &types {
                g.add_edge(node(x), ActionType::ambient(a.clone()), y);
            }
        }
    }
    ShapePredicate { graph: g, root: node(&info.top) }
}

/// Decides `env ⊢ p : t` by matching against the embedded type.
pub fn tma_decide(env: &AEnvironment, p: &MaProcess, t: &ExType) -> Result<bool, TmaError> {
    let (nu, inp) = extract_envs(p)?;
    let clash: Vec<BasicName> = env.keys().filter(|a| nu.contains_key(*a)).cloned().collect();
    if !clash.is_empty() {
        return Err(TmaError::EnvMentionsRestricted(clash));
    }
    let mut e = env.clone();
    e.extend(nu);
    let info = TypeInfo::new(e, inp, t.clone());
    info.ground()?;
    Ok(matches(&encode_ma(p).process, &typenc(&info)))
}
