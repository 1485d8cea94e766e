use std::fmt;
use std::sync::Arc;

use super::name::{BasicName, Name};

/// Messages: forms, the empty path, and path composition.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Message {
    /// A non-empty sequence of names, e.g. `in d`.
    Form(Vec<Name>),
    Empty,
    Comp(Box<Message>, Box<Message>),
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element {
    Name(Name),
    /// Input binder `in<x1,...,xk>`.
    In(Vec<Name>),
    /// Output `out<M1,...,Mk>`.
    Out(Vec<Message>),
}

/// A non-empty sequence of elements.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Action(pub Vec<Element>);

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Process {
    Nil,
    Prefix(Action, Arc<Process>),
    Par(Arc<Process>, Arc<Process>),
    Nu(Name, Arc<Process>),
    Bang(Arc<Process>),
}

impl Message {
    pub fn name(n: Name) -> Message {
        Message::Form(vec![n])
    }

    pub fn comp(a: Message, b: Message) -> Message {
        Message::Comp(Box::new(a), Box::new(b))
    }

    /// The single name of a one-name form.
    pub fn as_name(&self) -> Option<&Name> {
        match self {
            Message::Form(ns) if ns.len() == 1 => Some(&ns[0]),
            _ => None,
        }
    }

    /// Forms of the message in left-to-right order, ε dropped.
    pub fn components(&self) -> Vec<&Vec<Name>> {
        let mut out = Vec::new();
        self.collect_components(&mut out);
        out
    }

    fn collect_components<'a>(&'a self, out: &mut Vec<&'a Vec<Name>>) {
        match self {
            Message::Form(ns) => out.push(ns),
            Message::Empty => {}
            Message::Comp(a, b) => {
                a.collect_components(out);
                b.collect_components(out);
            }
        }
    }

    pub fn names(&self) -> Vec<&Name> {
        self.components().into_iter().flatten().collect()
    }

    pub fn size(&self) -> usize {
        match self {
            Message::Form(ns) => ns.len(),
            Message::Empty => 1,
            Message::Comp(a, b) => 1 + a.size() + b.size(),
        }
    }
}

impl Element {
    pub fn name(s: &str) -> Element {
        Element::Name(Name::new(s))
    }

    pub fn binders(&self) -> &[Name] {
        match self {
            Element::In(xs) => xs,
            _ => &[],
        }
    }
}

impl Action {
    pub fn new(elems: Vec<Element>) -> Action {
        assert!(!elems.is_empty(), "actions are non-empty");
        Action(elems)
    }

    /// Names bound by the input binders of the action.
    pub fn binders(&self) -> Vec<&Name> {
        self.0.iter().flat_map(|e| e.binders()).collect()
    }

    /// `a1 ... ak amb`, the ambient prefix.
    pub fn is_ambient(&self) -> bool {
        self.0.len() >= 2 && matches!(self.0.last(), Some(Element::Name(n)) if n.base == BasicName::amb() && n.index == 0)
    }

    pub fn ambient(name: Name) -> Action {
        Action(vec![Element::Name(name), Element::Name(Name::new("amb"))])
    }

    pub fn size(&self) -> usize {
        self.0
            .iter()
            .map(|e| match e {
                Element::Name(_) => 1,
                Element::In(xs) => 1 + xs.len(),
                Element::Out(ms) => 1 + ms.iter().map(Message::size).sum::<usize>(),
            })
            .sum()
    }
}

impl Process {
    pub fn nil() -> Arc<Process> {
        Arc::new(Process::Nil)
    }

    pub fn prefix(a: Action, p: Arc<Process>) -> Arc<Process> {
        Arc::new(Process::Prefix(a, p))
    }

    pub fn par(p: Arc<Process>, q: Arc<Process>) -> Arc<Process> {
        Arc::new(Process::Par(p, q))
    }

    pub fn nu(x: Name, p: Arc<Process>) -> Arc<Process> {
        Arc::new(Process::Nu(x, p))
    }

    pub fn bang(p: Arc<Process>) -> Arc<Process> {
        Arc::new(Process::Bang(p))
    }

    /// Left-nested parallel composition of the list; `0` when empty.
    pub fn par_all<I: IntoIterator<Item = Arc<Process>>>(ps: I) -> Arc<Process> {
        let mut acc: Option<Arc<Process>> = None;
        for p in ps {
            acc = Some(match acc {
                None => p,
                Some(a) => Process::par(a, p),
            });
        }
        acc.unwrap_or_else(Process::nil)
    }

    pub fn nus<I>(xs: I, p: Arc<Process>) -> Arc<Process>
    where
        I: IntoIterator<Item = Name>,
        I::IntoIter: DoubleEndedIterator,
    {
        xs.into_iter().rev().fold(p, |acc, x| Process::nu(x, acc))
    }

    /// Number of syntax nodes, counting action elements.
    pub fn size(&self) -> usize {
        match self {
            Process::Nil => 1,
            Process::Prefix(a, p) => a.size() + p.size(),
            Process::Par(p, q) => 1 + p.size() + q.size(),
            Process::Nu(_, p) | Process::Bang(p) => 1 + p.size(),
        }
    }

    /// Flattened parallel components, with `0` dropped.
    pub fn components(self: &Arc<Process>) -> Vec<Arc<Process>> {
        let mut out = Vec::new();
        fn go(p: &Arc<Process>, out: &mut Vec<Arc<Process>>) {
            match &**p {
                Process::Par(a, b) => {
                    go(a, out);
                    go(b, out);
                }
                Process::Nil => {}
                _ => out.push(p.clone()),
            }
        }
        go(self, &mut out);
        out
    }
}

fn write_list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, xs: &[T]) -> fmt::Result {
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{}", x)?;
    }
    Ok(())
}

impl fmt::Display for Message {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Message::Form(ns) => {
                for (i, n) in ns.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{}", n)?;
                }
                Ok(())
            }
            Message::Empty => f.write_str("ε"),
            Message::Comp(a, b) => {
                write!(f, "{}.", a)?;
                if matches!(**b, Message::Comp(..)) {
                    write!(f, "({})", b)
                } else {
                    write!(f, "{}", b)
                }
            }
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Name(n) => write!(f, "{}", n),
            Element::In(xs) => {
                f.write_str("in<")?;
                write_list(f, xs)?;
                f.write_str(">")
            }
            Element::Out(ms) => {
                f.write_str("out<")?;
                write_list(f, ms)?;
                f.write_str(">")
            }
        }
    }
}

impl fmt::Display for Action {
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

struct Unary<'a>(&'a Process);

impl fmt::Display for Unary<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Process::Nil => f.write_str("0"),
            Process::Par(..) => write!(f, "({})", self.0),
            Process::Bang(p) => write!(f, "!{}", Unary(p)),
            Process::Nu(x, p) => write!(f, "new {}.{}", x, Unary(p)),
            Process::Prefix(a, p) => {
                if a.is_ambient() {
                    let head = Action(a.0[..a.0.len() - 1].to_vec());
                    write!(f, "{}[{}]", head, p)
                } else {
                    write!(f, "{}.{}", a, Unary(p))
                }
            }
        }
    }
}

impl fmt::Display for Process {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Process::Par(p, q) => {
                if matches!(**p, Process::Par(..)) {
                    write!(f, "{}", p)?;
                } else {
                    write!(f, "{}", Unary(p))?;
                }
                write!(f, " | {}", Unary(q))
            }
            _ => write!(f, "{}", Unary(self)),
        }
    }
}

impl fmt::Debug for Message {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Debug for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Debug for Process {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
