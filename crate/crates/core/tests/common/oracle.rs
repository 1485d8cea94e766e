//! Brute-force reference implementations used to cross-check the library.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use shapestar::rules::{ActionTempl, Binding, ElemTempl, ProcTempl, Rule, RuleSet, Var};
use shapestar::shape::{ActionType, ElementType, FormType, MessageType, NodeId, ShapePredicate};
use shapestar::term::{
    all_names, apply_subst, float, fresh_name, rename, struct_normalize, Action, Element, Message, Name, Process, Subst,
};

/// Matching by direct search for a derivation.
pub fn derives(p: &Process, s: &ShapePredicate) -> bool {
    derives_at(p, s, s.root)
}

fn derives_at(p: &Process, s: &ShapePredicate, n: NodeId) -> bool {
    match p {
        Process::Nil => true,
        Process::Nu(_, q) | Process::Bang(q) => derives_at(q, s, n),
        Process::Par(a, b) => derives_at(a, s, n) && derives_at(b, s, n),
        Process::Prefix(a, q) => s.graph.edges.iter().any(|e| e.src == n && action_has(a, &e.label) && derives_at(q, s, e.dst)),
    }
}

fn action_has(a: &Action, t: &ActionType) -> bool {
    a.0.len() == t.0.len()
        && a.0.iter().zip(&t.0).all(|(e, et)| match (e, et) {
            (Element::Name(x), ElementType::Name(b)) => x.base == *b,
            (Element::In(xs), ElementType::In(bs)) => xs.len() == bs.len() && xs.iter().zip(bs).all(|(x, b)| x.base == *b),
            (Element::Out(ms), ElementType::Out(ts)) => ms.len() == ts.len() && ms.iter().zip(ts).all(|(m, t)| message_has(m, t)),
            _ => false,
        })
}

fn message_has(m: &Message, t: &MessageType) -> bool {
    let lone = matches!(m, Message::Form(ns) if ns.len() == 1);
    match t {
        MessageType::Single(a) => matches!(m, Message::Form(ns) if ns.len() == 1 && ns[0].base == *a),
        MessageType::Star(fs) => !lone && forms_in(m, fs),
    }
}

fn forms_in(m: &Message, fs: &BTreeSet<FormType>) -> bool {
    match m {
        Message::Empty => true,
        Message::Comp(a, b) => forms_in(a, fs) && forms_in(b, fs),
        Message::Form(ns) => fs.contains(&FormType(ns.iter().map(|n| n.base.clone()).collect())),
    }
}

/// One-step reducts by enumerating every decomposition of the process into a
/// rule instance and a context.
pub fn reducts(rules: &RuleSet, p: &Arc<Process>) -> BTreeSet<Arc<Process>> {
    let q = struct_normalize(p);
    let mut st = State { avoid: all_names(&q) };
    let (nus, items) = st.float(&q);
    let mut out = BTreeSet::new();
    for rule in &rules.rules {
        match rule {
            Rule::Reduce { lhs, rhs } => {
                for (b, rest, extra) in st.soup(&lhs.components(), &items, &Binding::default(), true) {
                    out.insert(rebuild(&nus, &extra, inst(rhs, &b), rest));
                }
            }
            Rule::Active { var, body } => {
                for (b, rest, extra) in st.soup(&body.components(), &items, &Binding::default(), true) {
                    for r in reducts(rules, &b.procs[var]) {
                        let mut b2 = b.clone();
                        b2.procs.insert(var.clone(), r);
                        out.insert(rebuild(&nus, &extra, inst(body, &b2), rest.clone()));
                    }
                }
            }
        }
    }
    out
}

fn rebuild(nus: &[Name], extra: &[Name], head: Arc<Process>, rest: Vec<Arc<Process>>) -> Arc<Process> {
    let body = Process::par_all(std::iter::once(head).chain(rest));
    struct_normalize(&Process::nus(nus.iter().chain(extra).cloned().collect::<Vec<_>>(), body))
}

struct State {
    avoid: BTreeSet<Name>,
}

type Decomp = (Binding, Vec<Arc<Process>>, Vec<Name>);

impl State {
    /// Lift restrictions, always renaming them to unused names.
    fn float(&mut self, p: &Arc<Process>) -> (Vec<Name>, Vec<Arc<Process>>) {
        let soup = float(p);
        let mut body = Process::par_all(soup.items);
        let mut nus = Vec::new();
        for x in soup.nus {
            let y = fresh_name(&x.base, &self.avoid);
            self.avoid.insert(y.clone());
            body = rename(&body, &x, &y);
            nus.push(y);
        }
        let mut items = Vec::new();
        flatten(&body, &mut items);
        (nus, items)
    }

    fn soup(&mut self, comps: &[&ProcTempl], items: &[Arc<Process>], b: &Binding, top: bool) -> Vec<Decomp> {
        let prefixes: Vec<&ProcTempl> = comps.iter().copied().filter(|t| matches!(t, ProcTempl::Prefix(..))).collect();
        let vars: Vec<&Var> = comps
            .iter()
            .filter_map(|t| match t {
                ProcTempl::Var(v) => Some(v),
                _ => None,
            })
            .collect();
        let bangs: Vec<usize> = (0..items.len()).filter(|&i| matches!(&*items[i], Process::Bang(_))).collect();
        let mut out = Vec::new();
        for counts in count_vectors(bangs.len(), prefixes.len()) {
            let mut pool: Vec<(Arc<Process>, Option<usize>)> = items.iter().map(|p| (p.clone(), None)).collect();
            let mut copy_nus = Vec::new();
            let mut copies = 0;
            for (&bi, &c) in bangs.iter().zip(&counts) {
                let Process::Bang(body) = &*items[bi] else { unreachable!() };
                for _ in 0..c {
                    let (ns, cs) = self.float(body);
                    copy_nus.extend(ns);
                    pool.extend(cs.into_iter().map(|c| (c, Some(copies))));
                    copies += 1;
                }
            }
            for chosen in injections(prefixes.len(), pool.len()) {
                if !(0..copies).all(|k| chosen.iter().any(|&i| pool[i].1 == Some(k))) {
                    continue;
                }
                let mut partial: Vec<(Binding, Vec<Name>)> = vec![(b.clone(), copy_nus.clone())];
                for (t, &i) in prefixes.iter().zip(&chosen) {
                    let mut next = Vec::new();
                    for (bb, ns) in &partial {
                        for (b2, ns2) in self.prefix(t, &pool[i].0, bb) {
                            next.push((b2, [ns.clone(), ns2].concat()));
                        }
                    }
                    partial = next;
                }
                let remaining: Vec<Arc<Process>> =
                    (0..pool.len()).filter(|i| !chosen.contains(i)).map(|i| pool[i].0.clone()).collect();
                for (bb, ns) in partial {
                    spread(&vars, &remaining, bb, ns, top, &mut out);
                }
            }
        }
        out
    }

    fn prefix(&mut self, t: &ProcTempl, p: &Arc<Process>, b: &Binding) -> Vec<(Binding, Vec<Name>)> {
        let ProcTempl::Prefix(_, at, pt) = t else { unreachable!() };
        let Process::Prefix(a, cont) = &**p else { return Vec::new() };
        let mut out = Vec::new();
        for b1 in action_bindings(at, a, b) {
            let (ns, cs) = self.float(cont);
            for (b2, _, ns2) in self.soup(&pt.components(), &cs, &b1, false) {
                out.push((b2, [ns.clone(), ns2].concat()));
            }
        }
        out
    }
}

fn flatten(p: &Arc<Process>, out: &mut Vec<Arc<Process>>) {
    match &**p {
        Process::Nil => {}
        Process::Par(a, b) => {
            flatten(a, out);
            flatten(b, out);
        }
        _ => out.push(p.clone()),
    }
}

/// Vectors of `n` counts with total at most `max`.
fn count_vectors(n: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vec<usize>| {
                let used: usize = v.iter().sum();
                (0..=max - used).map(move |c| [v.clone(), vec![c]].concat())
            })
            .collect();
    }
    out
}

/// Sequences of `k` distinct indices below `n`.
fn injections(k: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|v: Vec<usize>| (0..n).filter(|i| !v.contains(i)).map(|i| [v.clone(), vec![i]].concat()).collect::<Vec<_>>())
            .collect();
    }
    out
}

fn spread(vars: &[&Var], remaining: &[Arc<Process>], b: Binding, ns: Vec<Name>, top: bool, out: &mut Vec<Decomp>) {
    let targets = vars.len() + usize::from(top);
    if targets == 0 {
        if remaining.is_empty() {
            out.push((b, Vec::new(), ns));
        }
        return;
    }
    let mut assignment = vec![0; remaining.len()];
    loop {
        let mut bb = b.clone();
        let mut ok = true;
        for (vi, v) in vars.iter().enumerate() {
            let val = Process::par_all((0..remaining.len()).filter(|&i| assignment[i] == vi).map(|i| remaining[i].clone()));
            if let Some(old) = bb.procs.get(*v) {
                ok &= *old == val;
            }
            bb.procs.insert((*v).clone(), val);
        }
        if ok {
            let rest = (0..remaining.len()).filter(|&i| top && assignment[i] == vars.len()).map(|i| remaining[i].clone()).collect();
            out.push((bb, rest, ns.clone()));
        }
        let mut i = 0;
        loop {
            if i == assignment.len() {
                return;
            }
            assignment[i] += 1;
            if assignment[i] < targets {
                break;
            }
            assignment[i] = 0;
            i += 1;
        }
    }
}

/// All extensions of `b` under which the template spells out `a`.
fn action_bindings(t: &ActionTempl, a: &Action, b: &Binding) -> Vec<Binding> {
    if t.0.len() != a.0.len() {
        return Vec::new();
    }
    let mut names: BTreeSet<Name> = BTreeSet::new();
    let mut msgs: BTreeSet<Message> = BTreeSet::new();
    for e in &a.0 {
        match e {
            Element::Name(n) => {
                names.insert(n.clone());
            }
            Element::In(xs) => names.extend(xs.iter().cloned()),
            Element::Out(ms) => msgs.extend(ms.iter().cloned()),
        }
    }
    names.retain(|n| !n.is_bullet());
    let mut name_vars: Vec<Var> = Vec::new();
    let mut msg_vars: Vec<Var> = Vec::new();
    for e in &t.0 {
        match e {
            ElemTempl::Concrete(_) => {}
            ElemTempl::NameVar(v) => name_vars.push(v.clone()),
            ElemTempl::In(vs) => name_vars.extend(vs.iter().cloned()),
            ElemTempl::Out(vs) => msg_vars.extend(vs.iter().cloned()),
        }
    }
    name_vars.retain(|v| !b.names.contains_key(v));
    name_vars.sort();
    name_vars.dedup();
    msg_vars.retain(|v| !b.messages.contains_key(v));
    msg_vars.sort();
    msg_vars.dedup();
    let names: Vec<Name> = names.into_iter().collect();
    let msgs: Vec<Message> = msgs.into_iter().collect();
    let mut out = Vec::new();
    for ni in product(name_vars.len(), names.len()) {
        for mi in product(msg_vars.len(), msgs.len()) {
            let mut bb = b.clone();
            for (v, &i) in name_vars.iter().zip(&ni) {
                bb.names.insert(v.clone(), names[i].clone());
            }
            for (v, &i) in msg_vars.iter().zip(&mi) {
                bb.messages.insert(v.clone(), msgs[i].clone());
            }
            if spells(t, a, &bb) {
                out.push(bb);
            }
        }
    }
    out
}

fn product(k: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out.into_iter().flat_map(|v: Vec<usize>| (0..n).map(move |i| [v.clone(), vec![i]].concat())).collect();
    }
    out
}

fn spells(t: &ActionTempl, a: &Action, b: &Binding) -> bool {
    t.0.iter().zip(&a.0).all(|(et, e)| match (et, e) {
        (ElemTempl::Concrete(x), Element::Name(n)) => n.base == *x,
        (ElemTempl::NameVar(v), Element::Name(n)) => b.names[v] == *n,
        (ElemTempl::In(vs), Element::In(xs)) => vs.len() == xs.len() && vs.iter().zip(xs).all(|(v, x)| b.names[v] == *x),
        (ElemTempl::Out(vs), Element::Out(ms)) => vs.len() == ms.len() && vs.iter().zip(ms).all(|(v, m)| b.messages[v] == *m),
        _ => false,
    })
}

fn inst(t: &ProcTempl, b: &Binding) -> Arc<Process> {
    match t {
        ProcTempl::Nil => Process::nil(),
        ProcTempl::Var(v) => b.procs[v].clone(),
        ProcTempl::Par(l, r) => Process::par(inst(l, b), inst(r, b)),
        ProcTempl::Prefix(_, at, pt) => {
            let a = Action(
                at.0.iter()
                    .map(|e| match e {
                        ElemTempl::Concrete(x) => Element::Name(Name::from(x.clone())),
                        ElemTempl::NameVar(v) => Element::Name(b.names[v].clone()),
                        ElemTempl::In(vs) => Element::In(vs.iter().map(|v| b.names[v].clone()).collect()),
                        ElemTempl::Out(vs) => Element::Out(vs.iter().map(|v| b.messages[v].clone()).collect()),
                    })
                    .collect(),
            );
            Process::prefix(a, inst(pt, b))
        }
        ProcTempl::Subst(pairs, v) => {
            let s: Subst = pairs
                .iter()
                .map(|(x, src)| {
                    let m = b.names.get(src).map(|n| Message::name(n.clone())).unwrap_or_else(|| b.messages[src].clone());
                    (b.names[x].clone(), m)
                })
                .collect::<BTreeMap<_, _>>();
            apply_subst(&s, &b.procs[v])
        }
    }
}
