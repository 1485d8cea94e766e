//! Direct reduction relations for the π-calculus and mobile ambients, used to
//! cross-check the rule engine.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use super::ma::{ma_subst, Cap, MaProcess, MsgType};
use super::pi::{pi_subst, PiProcess};
use crate::rules::matching::unfold_plans;
use crate::term::{fresh_name, Name};

/// Top-level components after replicated components have been unfolded.
struct Pool<T, N> {
    entries: Vec<T>,
    copy_of: Vec<Option<usize>>,
    copies: usize,
    nus: Vec<N>,
}

impl<T: Clone, N> Pool<T, N> {
    /// Every unfolded copy is among `used`.
    fn complete(&self, used: &[usize]) -> bool {
        (0..self.copies).all(|k| used.iter().any(|&u| self.copy_of[u] == Some(k)))
    }

    fn rest(&self, used: &[usize]) -> Vec<T> {
        self.entries.iter().enumerate().filter(|(i, _)| !used.contains(i)).map(|(_, e)| e.clone()).collect()
    }
}

/// Pools with up to `max` unfoldings; `unfold` floats a fresh copy of a bang body.
fn pools<T: Clone, N>(items: &[T], max: usize, mut unfold: impl FnMut(&T) -> Option<(Vec<N>, Vec<T>)>) -> Vec<Pool<T, N>> {
    let bangs: Vec<usize> = (0..items.len()).filter(|&i| unfold(&items[i]).is_some()).collect();
    let mut out = Vec::new();
    for plan in unfold_plans(bangs.len(), max) {
        let mut pool = Pool { entries: items.to_vec(), copy_of: vec![None; items.len()], copies: 0, nus: Vec::new() };
        for (b, &count) in bangs.iter().zip(&plan) {
            for _ in 0..count {
                let (nus, comps) = unfold(&items[*b]).expect("bang");
                pool.nus.extend(nus);
                for c in comps {
                    pool.entries.push(c);
                    pool.copy_of.push(Some(pool.copies));
                }
                pool.copies += 1;
            }
        }
        out.push(pool);
    }
    out
}

fn pi_names(p: &PiProcess, out: &mut BTreeSet<Name>) {
    match p {
        PiProcess::Nil => {}
        PiProcess::In(c, xs, q) => {
            out.insert(c.clone());
            out.extend(xs.iter().cloned());
            pi_names(q, out);
        }
        PiProcess::Out(c, ys, q) => {
            out.insert(c.clone());
            out.extend(ys.iter().cloned());
            pi_names(q, out);
        }
        PiProcess::Par(a, b) => {
            pi_names(a, out);
            pi_names(b, out);
        }
        PiProcess::Nu(x, q) => {
            out.insert(x.clone());
            pi_names(q, out);
        }
        PiProcess::Bang(q) => pi_names(q, out),
    }
}

fn pi_float(p: &Arc<PiProcess>, avoid: &mut BTreeSet<Name>, nus: &mut Vec<Name>, items: &mut Vec<Arc<PiProcess>>) {
    match &**p {
        PiProcess::Nil => {}
        PiProcess::Par(a, b) => {
            pi_float(a, avoid, nus, items);
            pi_float(b, avoid, nus, items);
        }
        PiProcess::Nu(x, q) => {
            let x2 = fresh_name(&x.base, avoid);
            avoid.insert(x2.clone());
            let q2 = pi_subst(q, &BTreeMap::from([(x.clone(), x2.clone())]), avoid);
            nus.push(x2);
            pi_float(&q2, avoid, nus, items);
        }
        _ => items.push(p.clone()),
    }
}

fn pi_rebuild(nus: Vec<Name>, items: Vec<Arc<PiProcess>>) -> Arc<PiProcess> {
    let body = PiProcess::par_all(items);
    nus.into_iter().rev().fold(body, |acc, x| Arc::new(PiProcess::Nu(x, acc)))
}

/// One-step reducts of a π process, unfolding replication at most twice.
pub fn pi_reducts(p: &Arc<PiProcess>) -> Vec<Arc<PiProcess>> {
    let mut avoid = BTreeSet::new();
    pi_names(p, &mut avoid);
    let mut nus = Vec::new();
    let mut items = Vec::new();
    pi_float(p, &mut avoid, &mut nus, &mut items);
    let mut out = Vec::new();
    let unfold = |t: &Arc<PiProcess>, avoid: &mut BTreeSet<Name>| match &**t {
        PiProcess::Bang(q) => {
            let mut n = Vec::new();
            let mut cs = Vec::new();
            pi_float(q, avoid, &mut n, &mut cs);
            Some((n, cs))
        }
        _ => None,
    };
    for pool in pools(&items, 2, |t| unfold(t, &mut avoid)) {
        for (i, a) in pool.entries.iter().enumerate() {
            let PiProcess::Out(c, ys, pa) = &**a else { continue };
            for (j, b) in pool.entries.iter().enumerate() {
                let PiProcess::In(d, xs, pb) = &**b else { continue };
                if i == j || c != d || xs.len() != ys.len() || !pool.complete(&[i, j]) {
                    continue;
                }
                let s: BTreeMap<Name, Name> = xs.iter().cloned().zip(ys.iter().cloned()).collect();
                let mut av = avoid.clone();
                for e in &pool.entries {
                    pi_names(e, &mut av);
                }
                let pb2 = pi_subst(pb, &s, &mut av);
                let mut comps = vec![pa.clone(), pb2];
                comps.extend(pool.rest(&[i, j]));
                let mut all_nus = nus.clone();
                all_nus.extend(pool.nus.iter().cloned());
                out.push(pi_rebuild(all_nus, comps));
            }
        }
    }
    out
}

fn ma_names(p: &MaProcess, out: &mut BTreeSet<Name>) {
    match p {
        MaProcess::Nil => {}
        MaProcess::Par(a, b) => {
            ma_names(a, out);
            ma_names(b, out);
        }
        MaProcess::Nu(x, _, q) => {
            out.insert(x.clone());
            ma_names(q, out);
        }
        MaProcess::Bang(q) => ma_names(q, out),
        MaProcess::Amb(m, q) | MaProcess::Prefix(m, q) => {
            m.names(out);
            ma_names(q, out);
        }
        MaProcess::Output(ms) => ms.iter().for_each(|m| m.names(out)),
        MaProcess::Input(xs, q) => {
            out.extend(xs.iter().map(|(x, _)| x.clone()));
            ma_names(q, out);
        }
    }
}

type MaNu = (Name, MsgType);

/// Lifts restrictions out of parallel composition and splits capability paths.
fn ma_float(p: &Arc<MaProcess>, avoid: &mut BTreeSet<Name>, nus: &mut Vec<MaNu>, items: &mut Vec<Arc<MaProcess>>) {
    match &**p {
        MaProcess::Nil => {}
        MaProcess::Par(a, b) => {
            ma_float(a, avoid, nus, items);
            ma_float(b, avoid, nus, items);
        }
        MaProcess::Nu(x, w, q) => {
            let x2 = fresh_name(&x.base, avoid);
            avoid.insert(x2.clone());
            let q2 = ma_subst(q, &BTreeMap::from([(x.clone(), Cap::Name(x2.clone()))]), avoid);
            nus.push((x2, w.clone()));
            ma_float(&q2, avoid, nus, items);
        }
        MaProcess::Prefix(Cap::Empty, q) => ma_float(q, avoid, nus, items),
        MaProcess::Prefix(Cap::Seq(a, b), q) => {
            let inner = Arc::new(MaProcess::Prefix((**b).clone(), q.clone()));
            ma_float(&Arc::new(MaProcess::Prefix((**a).clone(), inner)), avoid, nus, items)
        }
        _ => items.push(p.clone()),
    }
}

fn ma_rebuild(nus: Vec<MaNu>, items: Vec<Arc<MaProcess>>) -> Arc<MaProcess> {
    let body = MaProcess::par_all(items);
    nus.into_iter().rev().fold(body, |acc, (x, w)| Arc::new(MaProcess::Nu(x, w, acc)))
}

struct MaCtx {
    avoid: BTreeSet<Name>,
}

impl MaCtx {
    fn float(&mut self, p: &Arc<MaProcess>) -> (Vec<MaNu>, Vec<Arc<MaProcess>>) {
        let mut nus = Vec::new();
        let mut items = Vec::new();
        ma_float(p, &mut self.avoid, &mut nus, &mut items);
        (nus, items)
    }

    fn pools(&mut self, items: &[Arc<MaProcess>], max: usize) -> Vec<Pool<Arc<MaProcess>, MaNu>> {
        pools(items, max, |t| match &**t {
            MaProcess::Bang(q) => Some(self.float(q)),
            _ => None,
        })
    }
}

fn amb_name(p: &MaProcess) -> Option<(&Name, &Arc<MaProcess>)> {
    match p {
        MaProcess::Amb(Cap::Name(n), q) => Some((n, q)),
        _ => None,
    }
}

fn amb(n: &Name, items: Vec<Arc<MaProcess>>) -> Arc<MaProcess> {
    Arc::new(MaProcess::Amb(Cap::Name(n.clone()), MaProcess::par_all(items)))
}

fn wrap(nus: &[MaNu], extra: &[MaNu], more: &[MaNu], items: Vec<Arc<MaProcess>>) -> Arc<MaProcess> {
    let all: Vec<MaNu> = nus.iter().chain(extra).chain(more).cloned().collect();
    ma_rebuild(all, items)
}

/// One-step reducts of an ambient process. Replication is unfolded as often
/// as the reduction rule has prefix components at that level.
pub fn ma_reducts(p: &Arc<MaProcess>) -> Vec<Arc<MaProcess>> {
    let mut ctx = MaCtx { avoid: BTreeSet::new() };
    ma_names(p, &mut ctx.avoid);
    reducts_in(p, &mut ctx)
}

fn reducts_in(p: &Arc<MaProcess>, ctx: &mut MaCtx) -> Vec<Arc<MaProcess>> {
    let (nus, items) = ctx.float(p);
    let mut out = Vec::new();

    // a[in b.P | Q] | b[R] -> b[a[P | Q] | R]
    for pool in ctx.pools(&items, 2) {
        for (i, a) in pool.entries.iter().enumerate() {
            let Some((x, content)) = amb_name(a) else { continue };
            for (j, b) in pool.entries.iter().enumerate() {
                let Some((y, r)) = amb_name(b) else { continue };
                if i == j || !pool.complete(&[i, j]) {
                    continue;
                }
                let (cn, citems) = ctx.float(content);
                for cpool in ctx.pools(&citems, 1) {
                    for (k, c) in cpool.entries.iter().enumerate() {
                        let MaProcess::Prefix(Cap::In(t), cont) = &**c else { continue };
                        if **t != Cap::Name(y.clone()) || !cpool.complete(&[k]) {
                            continue;
                        }
                        let mut inner = vec![cont.clone()];
                        inner.extend(cpool.rest(&[k]));
                        let moved = amb(x, inner);
                        let mut comps = vec![amb(y, vec![r.clone(), moved])];
                        comps.extend(pool.rest(&[i, j]));
                        out.push(wrap(&nus, &pool.nus, &[cn.clone(), cpool.nus.clone()].concat(), comps));
                    }
                }
            }
        }
    }

    // a[b[out a.P | Q] | R] -> b[P | Q] | a[R]
    for pool in ctx.pools(&items, 1) {
        for (i, a) in pool.entries.iter().enumerate() {
            let Some((x, content)) = amb_name(a) else { continue };
            if !pool.complete(&[i]) {
                continue;
            }
            let (cn, citems) = ctx.float(content);
            for cpool in ctx.pools(&citems, 1) {
                for (j, b) in cpool.entries.iter().enumerate() {
                    let Some((y, inner)) = amb_name(b) else { continue };
                    if !cpool.complete(&[j]) {
                        continue;
                    }
                    let (dn, ditems) = ctx.float(inner);
                    for dpool in ctx.pools(&ditems, 1) {
                        for (k, c) in dpool.entries.iter().enumerate() {
                            let MaProcess::Prefix(Cap::Out(t), cont) = &**c else { continue };
                            if **t != Cap::Name(x.clone()) || !dpool.complete(&[k]) {
                                continue;
                            }
                            let mut bq = vec![cont.clone()];
                            bq.extend(dpool.rest(&[k]));
                            let mut comps = vec![amb(y, bq), amb(x, cpool.rest(&[j]))];
                            comps.extend(pool.rest(&[i]));
                            let extra = [cn.clone(), cpool.nus.clone(), dn.clone(), dpool.nus.clone()].concat();
                            out.push(wrap(&nus, &pool.nus, &extra, comps));
                        }
                    }
                }
            }
        }
    }

    for pool in ctx.pools(&items, 2) {
        for (i, a) in pool.entries.iter().enumerate() {
            match &**a {
                // open a.P | a[Q] -> P | Q
                MaProcess::Prefix(Cap::Open(t), cont) => {
                    for (j, b) in pool.entries.iter().enumerate() {
                        let Some((y, q)) = amb_name(b) else { continue };
                        if i == j || **t != Cap::Name(y.clone()) || !pool.complete(&[i, j]) {
                            continue;
                        }
                        let mut comps = vec![cont.clone(), q.clone()];
                        comps.extend(pool.rest(&[i, j]));
                        out.push(wrap(&nus, &pool.nus, &[], comps));
                    }
                }
                // <M> | (x).P -> P{M/x}
                MaProcess::Output(ms) => {
                    for (j, b) in pool.entries.iter().enumerate() {
                        let MaProcess::Input(xs, cont) = &**b else { continue };
                        if i == j || xs.len() != ms.len() || !pool.complete(&[i, j]) {
                            continue;
                        }
                        let s: BTreeMap<Name, Cap> = xs.iter().map(|(x, _)| x.clone()).zip(ms.iter().cloned()).collect();
                        let mut av = ctx.avoid.clone();
                        for e in &pool.entries {
                            ma_names(e, &mut av);
                        }
                        let mut comps = vec![ma_subst(cont, &s, &mut av)];
                        ctx.avoid = av;
                        comps.extend(pool.rest(&[i, j]));
                        out.push(wrap(&nus, &pool.nus, &[], comps));
                    }
                }
                _ => {}
            }
        }
    }

    // P -> Q implies a[P] -> a[Q]
    for pool in ctx.pools(&items, 1) {
        for (i, a) in pool.entries.iter().enumerate() {
            let Some((x, content)) = amb_name(a) else { continue };
            if !pool.complete(&[i]) {
                continue;
            }
            for r in reducts_in(content, ctx) {
                let mut comps = vec![Arc::new(MaProcess::Amb(Cap::Name(x.clone()), r))];
                comps.extend(pool.rest(&[i]));
                out.push(wrap(&nus, &pool.nus, &[], comps));
            }
        }
    }
    out
}
