use std::collections::BTreeMap;
use std::sync::Arc;

/// First-order terms over constructor symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Term {
    Var(usize),
    /// A type variable fixed by the caller; equal only to itself.
    Rigid(Arc<str>),
    App(&'static str, Vec<Term>),
}

#[derive(Default)]
pub(crate) struct Unifier {
    binds: Vec<Option<Term>>,
    named: BTreeMap<Arc<str>, Term>,
}

impl Unifier {
    pub fn fresh(&mut self) -> Term {
        self.binds.push(None);
        Term::Var(self.binds.len() - 1)
    }

    /// The flexible variable with this name, created on first use.
    pub fn named(&mut self, v: &Arc<str>) -> Term {
        if let Some(t) = self.named.get(v) {
            return t.clone();
        }
        let t = self.fresh();
        self.named.insert(v.clone(), t.clone());
        t
    }

    fn walk(&self, t: &Term) -> Term {
        let mut t = t.clone();
        while let Term::Var(v) = t {
            match &self.binds[v] {
                Some(u) => t = u.clone(),
                None => break,
            }
        }
        t
    }

    fn occurs(&self, v: usize, t: &Term) -> bool {
        match self.walk(t) {
            Term::Var(u) => u == v,
            Term::Rigid(_) => false,
            Term::App(_, ts) => ts.iter().any(|t| self.occurs(v, t)),
        }
    }

    pub fn unify(&mut self, a: &Term, b: &Term) -> bool {
        let (a, b) = (self.walk(a), self.walk(b));
        match (&a, &b) {
            (Term::Var(x), Term::Var(y)) if x == y => true,
            (Term::Var(x), t) | (t, Term::Var(x)) => {
                if self.occurs(*x, t) {
                    return false;
                }
                self.binds[*x] = Some(t.clone());
                true
            }
            (Term::Rigid(x), Term::Rigid(y)) => x == y,
            (Term::App(f, xs), Term::App(g, ys)) => {
                f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| self.unify(x, y))
            }
            _ => false,
        }
    }

    /// Fully substituted form.
    pub fn resolve(&self, t: &Term) -> Term {
        match self.walk(t) {
            Term::App(f, ts) => Term::App(f, ts.iter().map(|t| self.resolve(t)).collect()),
            t => t,
        }
    }
}
