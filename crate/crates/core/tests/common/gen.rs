use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use shapestar::calculi::{Cap, ExType, MaProcess, MsgType, PiProcess};
use shapestar::term::{Action, BasicName, Element, Message, Name, Process};

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// Random well-scoped pi processes. Every binder gets a basic name of its own.
pub struct PiGen<'r> {
    pub rng: &'r mut ChaCha8Rng,
    pub max_arity: usize,
    pub free: Vec<Name>,
    counter: usize,
}

impl<'r> PiGen<'r> {
    pub fn new(rng: &'r mut ChaCha8Rng, max_arity: usize) -> Self {
        let free = ["a", "b", "c"].iter().map(|s| Name::new(s)).collect();
        PiGen { rng, max_arity, free, counter: 0 }
    }

    fn fresh(&mut self, base: &str) -> Name {
        self.counter += 1;
        Name::new(&format!("{}{}", base, self.counter))
    }

    fn pick(&mut self, scope: &[Name]) -> Name {
        if !scope.is_empty() && self.rng.gen_bool(0.6) {
            scope[self.rng.gen_range(0..scope.len())].clone()
        } else {
            self.free[self.rng.gen_range(0..self.free.len())].clone()
        }
    }

    /// A process of roughly `budget` syntax nodes.
    pub fn process(&mut self, budget: usize, scope: &[Name]) -> Arc<PiProcess> {
        if budget <= 1 {
            return Arc::new(PiProcess::Nil);
        }
        match self.rng.gen_range(0..10) {
            0 | 1 => {
                let k = self.rng.gen_range(1..budget);
                PiProcess::par(self.process(k, scope), self.process(budget - k, scope))
            }
            2 => Arc::new(PiProcess::Bang(self.process(budget - 1, scope))),
            3 => {
                let x = self.fresh("n");
                let inner = [scope, std::slice::from_ref(&x)].concat();
                Arc::new(PiProcess::Nu(x, self.process(budget - 1, &inner)))
            }
            4..=6 => {
                let k = self.rng.gen_range(0..=self.max_arity.min(budget.saturating_sub(2)));
                let c = self.pick(scope);
                let xs: Vec<Name> = (0..k).map(|_| self.fresh("x")).collect();
                let inner = [scope, &xs].concat();
                let cont = self.process(budget - 1 - k, &inner);
                Arc::new(PiProcess::In(c, xs, cont))
            }
            _ => {
                let k = self.rng.gen_range(0..=self.max_arity.min(budget.saturating_sub(2)));
                let c = self.pick(scope);
                let ys: Vec<Name> = (0..k).map(|_| self.pick(scope)).collect();
                let cont = self.process(budget - 1 - k, scope);
                Arc::new(PiProcess::Out(c, ys, cont))
            }
        }
    }
}

/// A small universe of exchange and message types.
pub fn ex_types() -> Vec<ExType> {
    vec![
        ExType::Shh,
        ExType::unit(),
        ExType::Tuple(vec![MsgType::Amb(ExType::unit())]),
        ExType::Tuple(vec![MsgType::Cap(ExType::unit())]),
    ]
}

pub fn msg_types() -> Vec<MsgType> {
    vec![
        MsgType::Amb(ExType::Shh),
        MsgType::Amb(ExType::unit()),
        MsgType::Amb(ExType::Tuple(vec![MsgType::Amb(ExType::unit())])),
        MsgType::Cap(ExType::unit()),
        MsgType::Cap(ExType::Shh),
    ]
}

/// Free names available to generated ambient processes, with their types.
pub fn ma_env() -> BTreeMap<BasicName, MsgType> {
    let ts = msg_types();
    [("a", 1), ("b", 0), ("c", 2), ("k", 3)].into_iter().map(|(n, i)| (BasicName::new(n), ts[i].clone())).collect()
}

/// Random ambient processes, mostly well typed for a target exchange type,
/// with a `noise` chance of an arbitrary choice at each decision.
pub struct MaGen<'r> {
    pub rng: &'r mut ChaCha8Rng,
    pub noise: f64,
    counter: usize,
}

type Scope = Vec<(Name, MsgType)>;

impl<'r> MaGen<'r> {
    pub fn new(rng: &'r mut ChaCha8Rng, noise: f64) -> Self {
        MaGen { rng, noise, counter: 0 }
    }

    fn fresh(&mut self, base: &str) -> Name {
        self.counter += 1;
        Name::new(&format!("{}{}", base, self.counter))
    }

    fn noisy(&mut self) -> bool {
        self.rng.gen_bool(self.noise)
    }

    fn names_of(&mut self, scope: &Scope, want: impl Fn(&MsgType) -> bool) -> Vec<Name> {
        let noisy = self.noisy();
        scope.iter().filter(|(_, w)| noisy || want(w)).map(|(n, _)| n.clone()).collect()
    }

    fn any_type(&mut self) -> MsgType {
        msg_types().choose(self.rng).unwrap().clone()
    }

    fn ambient_name(&mut self, scope: &Scope, inner: Option<&ExType>) -> Option<(Name, ExType)> {
        let noisy = self.noisy();
        let cands: Vec<(Name, ExType)> = scope
            .iter()
            .filter_map(|(n, w)| match w {
                MsgType::Amb(t) if noisy || inner.map(|i| i == t).unwrap_or(true) => Some((n.clone(), t.clone())),
                _ => None,
            })
            .collect();
        cands.choose(self.rng).cloned()
    }

    /// A capability of type `Cap[t]`.
    pub fn cap(&mut self, t: &ExType, scope: &Scope, budget: usize) -> Cap {
        let choice = self.rng.gen_range(0..7);
        match choice {
            0 => Cap::Empty,
            1 | 2 => match self.ambient_name(scope, None) {
                Some((a, _)) => {
                    let a = Box::new(Cap::Name(a));
                    if choice == 1 {
                        Cap::In(a)
                    } else {
                        Cap::Out(a)
                    }
                }
                None => Cap::Empty,
            },
            3 => match self.ambient_name(scope, Some(t)) {
                Some((a, _)) => Cap::Open(Box::new(Cap::Name(a))),
                None => Cap::Empty,
            },
            4 => {
                let want = MsgType::Cap(t.clone());
                let ns = self.names_of(scope, |w| *w == want);
                ns.choose(self.rng).cloned().map(Cap::Name).unwrap_or(Cap::Empty)
            }
            5 if budget > 2 => Cap::Seq(Box::new(self.cap(t, scope, budget / 2)), Box::new(self.cap(t, scope, budget / 2))),
            _ => {
                let inner = self.cap(t, scope, budget / 2);
                match self.ambient_name(scope, None) {
                    Some((a, _)) if budget > 2 => Cap::In(Box::new(if self.noisy() { inner } else { Cap::Name(a) })),
                    _ => inner,
                }
            }
        }
    }

    fn message(&mut self, w: &MsgType, scope: &Scope, budget: usize) -> Cap {
        let w = if self.noisy() { self.any_type() } else { w.clone() };
        let ns = self.names_of(scope, |v| *v == w);
        match (&w, ns.choose(self.rng).cloned()) {
            (MsgType::Cap(t), n) if n.is_none() || self.rng.gen_bool(0.5) => self.cap(t, scope, budget),
            (_, Some(n)) => Cap::Name(n),
            _ => Cap::Name(Name::new("a")),
        }
    }

    /// A process of exchange type `t`, roughly `budget` syntax nodes.
    pub fn process(&mut self, t: &ExType, scope: &Scope, budget: usize) -> Arc<MaProcess> {
        if budget <= 1 {
            return MaProcess::nil();
        }
        match self.rng.gen_range(0..12) {
            0 | 1 => {
                let k = self.rng.gen_range(1..budget);
                MaProcess::par(self.process(t, scope, k), self.process(t, scope, budget - k))
            }
            2 => Arc::new(MaProcess::Bang(self.process(t, scope, budget - 1))),
            3 => {
                let s = ex_types().choose(self.rng).unwrap().clone();
                let n = self.fresh("n");
                let w = MsgType::Amb(s);
                let inner = [scope.clone(), vec![(n.clone(), w.clone())]].concat();
                Arc::new(MaProcess::Nu(n, w, self.process(t, &inner, budget - 1)))
            }
            4 | 5 => match self.ambient_name(scope, None) {
                Some((a, s)) => Arc::new(MaProcess::Amb(Cap::Name(a), self.process(&s, scope, budget - 1))),
                None => MaProcess::nil(),
            },
            6 | 7 => {
                let m = self.cap(t, scope, 3);
                Arc::new(MaProcess::Prefix(m, self.process(t, scope, budget - 1)))
            }
            8 | 9 => {
                let ws = match (t, self.noisy()) {
                    (ExType::Tuple(ws), false) => ws.clone(),
                    _ => (0..self.rng.gen_range(0..=1)).map(|_| self.any_type()).collect(),
                };
                let ms = ws.iter().map(|w| self.message(w, scope, 2)).collect();
                Arc::new(MaProcess::Output(ms))
            }
            _ => {
                let ws = match (t, self.noisy()) {
                    (ExType::Tuple(ws), false) => ws.clone(),
                    _ => (0..self.rng.gen_range(0..=1)).map(|_| self.any_type()).collect(),
                };
                let xs: Vec<(Name, MsgType)> = ws.into_iter().map(|w| (self.fresh("x"), w)).collect();
                let inner = [scope.clone(), xs.clone()].concat();
                let cont = self.process(t, &inner, budget.saturating_sub(1 + xs.len()));
                Arc::new(MaProcess::Input(xs, cont))
            }
        }
    }

    /// Free names from [`ma_env`] in scope.
    pub fn top_scope() -> Scope {
        ma_env().into_iter().map(|(a, w)| (Name::from(a), w)).collect()
    }
}

/// Random processes over the ambient vocabulary written directly in the
/// metacalculus, including shapes no typed calculus produces.
pub struct MetaGen<'r> {
    pub rng: &'r mut ChaCha8Rng,
    counter: usize,
}

impl<'r> MetaGen<'r> {
    pub fn new(rng: &'r mut ChaCha8Rng) -> Self {
        MetaGen { rng, counter: 0 }
    }

    fn pick(&mut self, scope: &[Name]) -> Name {
        let free = ["a", "b"];
        if !scope.is_empty() && self.rng.gen_bool(0.6) {
            scope[self.rng.gen_range(0..scope.len())].clone()
        } else {
            Name::new(free[self.rng.gen_range(0..free.len())])
        }
    }

    fn message(&mut self, scope: &[Name]) -> Message {
        match self.rng.gen_range(0..5) {
            0 => Message::Empty,
            1 => Message::Form(vec![Name::new(["in", "out", "open"][self.rng.gen_range(0..3)]), self.pick(scope)]),
            2 => Message::comp(Message::Form(vec![Name::new("in"), self.pick(scope)]), Message::name(self.pick(scope))),
            _ => Message::name(self.pick(scope)),
        }
    }

    pub fn process(&mut self, budget: usize, scope: &[Name]) -> Arc<Process> {
        if budget <= 1 {
            return Process::nil();
        }
        let simple = |g: &mut Self, elems: Vec<Element>, scope: &[Name], budget: usize| Process::prefix(Action(elems), g.process(budget, scope));
        match self.rng.gen_range(0..12) {
            0 | 1 => {
                let k = self.rng.gen_range(1..budget);
                Process::par(self.process(k, scope), self.process(budget - k, scope))
            }
            2 => Process::bang(self.process(budget - 1, scope)),
            3 => {
                self.counter += 1;
                let x = Name::new(&format!("n{}", self.counter));
                let inner = [scope, std::slice::from_ref(&x)].concat();
                Process::nu(x, self.process(budget - 1, &inner))
            }
            4 | 5 => {
                let a = self.pick(scope);
                simple(self, vec![Element::Name(a), Element::name("amb")], scope, budget - 1)
            }
            6 | 7 => {
                let cap = ["in", "out", "open"][self.rng.gen_range(0..3)];
                let a = self.pick(scope);
                simple(self, vec![Element::name(cap), Element::Name(a)], scope, budget - 2)
            }
            8 => {
                let a = self.pick(scope);
                simple(self, vec![Element::Name(a)], scope, budget - 1)
            }
            9 => {
                let k = self.rng.gen_range(0..=1.min(budget - 2));
                let ms = (0..k).map(|_| self.message(scope)).collect();
                simple(self, vec![Element::Out(ms)], scope, budget - 1 - k)
            }
            _ => {
                let k = self.rng.gen_range(0..=1.min(budget - 2));
                let xs: Vec<Name> = (0..k)
                    .map(|_| {
                        self.counter += 1;
                        Name::new(&format!("x{}", self.counter))
                    })
                    .collect();
                let inner = [scope, &xs].concat();
                let cont = self.process(budget - 1 - k, &inner);
                Process::prefix(Action(vec![Element::In(xs)]), cont)
            }
        }
    }
}
