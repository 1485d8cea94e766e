use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::term::BasicName;

/// Metavariable, written with a trailing prime.
pub type Var = Arc<str>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarKind {
    Name,
    Message,
    Process,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ElemTempl {
    Concrete(BasicName),
    NameVar(Var),
    In(Vec<Var>),
    Out(Vec<Var>),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ActionTempl(pub Vec<ElemTempl>);

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ProcTempl {
    Nil,
    Var(Var),
    /// Prefix with an identifier unique within its rule.
    Prefix(usize, ActionTempl, Box<ProcTempl>),
    Par(Box<ProcTempl>, Box<ProcTempl>),
    /// `[a1':=S1', ...]P'`
    Subst(Vec<(Var, Var)>, Var),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    Reduce { lhs: ProcTempl, rhs: ProcTempl },
    /// Reduction may happen inside `body` at the position of `var`.
    Active { var: Var, body: ProcTempl },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RuleSet {
    pub rules: Vec<Rule>,
}

impl ActionTempl {
    pub fn binder_vars(&self) -> Vec<&Var> {
        self.0
            .iter()
            .flat_map(|e| match e {
                ElemTempl::In(vs) => vs.iter().collect(),
                _ => Vec::new(),
            })
            .collect()
    }
}

impl ProcTempl {
    /// Flattened parallel components, `0` dropped.
    pub fn components(&self) -> Vec<&ProcTempl> {
        let mut out = Vec::new();
        fn go<'a>(t: &'a ProcTempl, out: &mut Vec<&'a ProcTempl>) {
            match t {
                ProcTempl::Par(a, b) => {
                    go(a, out);
                    go(b, out);
                }
                ProcTempl::Nil => {}
                _ => out.push(t),
            }
        }
        go(self, &mut out);
        out
    }

    /// Metavariables with the kind implied by their position.
    pub fn var_kinds(&self, out: &mut Vec<(Var, VarKind)>) {
        match self {
            ProcTempl::Nil => {}
            ProcTempl::Var(v) => out.push((v.clone(), VarKind::Process)),
            ProcTempl::Prefix(_, a, p) => {
                for e in &a.0 {
                    match e {
                        ElemTempl::Concrete(_) => {}
                        ElemTempl::NameVar(v) => out.push((v.clone(), VarKind::Name)),
                        ElemTempl::In(vs) => out.extend(vs.iter().map(|v| (v.clone(), VarKind::Name))),
                        ElemTempl::Out(vs) => out.extend(vs.iter().map(|v| (v.clone(), VarKind::Message))),
                    }
                }
                p.var_kinds(out);
            }
            ProcTempl::Par(a, b) => {
                a.var_kinds(out);
                b.var_kinds(out);
            }
            ProcTempl::Subst(pairs, v) => {
                for (a, _) in pairs {
                    out.push((a.clone(), VarKind::Name));
                }
                out.push((v.clone(), VarKind::Process));
            }
        }
    }

    pub fn has_subst(&self) -> bool {
        match self {
            ProcTempl::Subst(..) => true,
            ProcTempl::Prefix(_, _, p) => p.has_subst(),
            ProcTempl::Par(a, b) => a.has_subst() || b.has_subst(),
            _ => false,
        }
    }

    /// Chain of action templates from the top to `var`, if `var` occurs under prefixes only.
    pub fn path_to(&self, var: &Var) -> Option<Vec<&ActionTempl>> {
        match self {
            ProcTempl::Var(v) if v == var => Some(Vec::new()),
            ProcTempl::Prefix(_, a, p) => p.path_to(var).map(|mut path| {
                path.insert(0, a);
                path
            }),
            ProcTempl::Par(a, b) => a.path_to(var).or_else(|| b.path_to(var)),
            _ => None,
        }
    }
}

impl Rule {
    pub fn kinds(&self) -> BTreeMap<Var, VarKind> {
        let mut v = Vec::new();
        match self {
            Rule::Reduce { lhs, .. } => lhs.var_kinds(&mut v),
            Rule::Active { body, .. } => body.var_kinds(&mut v),
        }
        v.into_iter().collect()
    }
}

impl RuleSet {
    pub fn new(rules: Vec<Rule>) -> RuleSet {
        let mut out: Vec<Rule> = Vec::new();
        for r in rules {
            if !out.contains(&r) {
                out.push(r);
            }
        }
        RuleSet { rules: out }
    }

    pub fn reduce_rules(&self) -> impl Iterator<Item = (&ProcTempl, &ProcTempl)> {
        self.rules.iter().filter_map(|r| match r {
            Rule::Reduce { lhs, rhs } => Some((lhs, rhs)),
            _ => None,
        })
    }

    pub fn active_rules(&self) -> impl Iterator<Item = (&Var, &ProcTempl)> {
        self.rules.iter().filter_map(|r| match r {
            Rule::Active { var, body } => Some((var, body)),
            _ => None,
        })
    }

    pub fn union(&self, other: &RuleSet) -> RuleSet {
        RuleSet::new(self.rules.iter().chain(&other.rules).cloned().collect())
    }
}

fn list(f: &mut fmt::Formatter<'_>, vs: &[Var]) -> fmt::Result {
    for (i, v) in vs.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        f.write_str(v)?;
    }
    Ok(())
}

impl fmt::Display for ElemTempl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElemTempl::Concrete(n) => write!(f, "{}", n),
            ElemTempl::NameVar(v) => f.write_str(v),
            ElemTempl::In(vs) => {
                f.write_str("in<")?;
                list(f, vs)?;
                f.write_str(">")
            }
            ElemTempl::Out(vs) => {
                f.write_str("out<")?;
                list(f, vs)?;
                f.write_str(">")
            }
        }
    }
}

impl fmt::Display for ActionTempl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", e)?;
        }
        Ok(())
    }
}

fn is_amb(a: &ActionTempl) -> bool {
    a.0.len() >= 2 && matches!(a.0.last(), Some(ElemTempl::Concrete(n)) if n.as_str() == "amb")
}

struct TUnary<'a>(&'a ProcTempl);

impl fmt::Display for TUnary<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            ProcTempl::Par(..) => write!(f, "({})", self.0),
            _ => write!(f, "{}", self.0),
        }
    }
}

impl fmt::Display for ProcTempl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProcTempl::Nil => f.write_str("0"),
            ProcTempl::Var(v) => f.write_str(v),
            ProcTempl::Prefix(_, a, p) if is_amb(a) => {
                let head = ActionTempl(a.0[..a.0.len() - 1].to_vec());
                write!(f, "{}[{}]", head, p)
            }
            ProcTempl::Prefix(_, a, p) => write!(f, "{}.{}", a, TUnary(p)),
            ProcTempl::Par(a, b) => write!(f, "{} | {}", a, TUnary(b)),
            ProcTempl::Subst(pairs, v) => {
                f.write_str("[")?;
                for (i, (a, s)) in pairs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{}:={}", a, s)?;
                }
                write!(f, "]{}", v)
            }
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::Reduce { lhs, rhs } => write!(f, "{} => {}", lhs, rhs),
            Rule::Active { var, body } => write!(f, "{} ~active~ {}", var, body),
        }
    }
}

impl fmt::Display for RuleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rules {
            writeln!(f, "{}", r)?;
        }
        Ok(())
    }
}
