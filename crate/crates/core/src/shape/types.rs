use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::lex::{Cursor, ParseError, Tok};
use crate::term::{Action, BasicName, Element, Message};

/// A sequence of basic names, the shape of one message form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FormType(pub Vec<BasicName>);

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MessageType {
    /// Compositions of forms from the set (never a lone name).
    Star(BTreeSet<FormType>),
    /// Exactly one name with this base.
    Single(BasicName),
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ElementType {
    Name(BasicName),
    In(Vec<BasicName>),
    Out(Vec<MessageType>),
}

/// Edge label of a shape graph.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ActionType(pub Vec<ElementType>);

/// Substitution on shape labels.
pub type TypeSubst = BTreeMap<BasicName, MessageType>;

impl FormType {
    pub fn as_action(&self) -> ActionType {
        ActionType(self.0.iter().cloned().map(ElementType::Name).collect())
    }
}

impl MessageType {
    pub fn star<I: IntoIterator<Item = FormType>>(fs: I) -> MessageType {
        MessageType::Star(fs.into_iter().collect())
    }

    /// The type of a message: a lone name keeps its base, anything else is a star of its forms.
    pub fn of(m: &Message) -> MessageType {
        match m.as_name() {
            Some(n) => MessageType::Single(n.base.clone()),
            None => MessageType::Star(
                m.components().into_iter().map(|f| FormType(f.iter().map(|n| n.base.clone()).collect())).collect(),
            ),
        }
    }

    /// `M |= self`
    pub fn admits(&self, m: &Message) -> bool {
        match self {
            MessageType::Single(a) => m.as_name().map(|n| n.base == *a).unwrap_or(false),
            MessageType::Star(fs) => {
                m.as_name().is_none()
                    && m.components().into_iter().all(|f| fs.contains(&FormType(f.iter().map(|n| n.base.clone()).collect())))
            }
        }
    }

    pub fn leq(&self, other: &MessageType) -> bool {
        match (self, other) {
            (MessageType::Single(a), MessageType::Single(b)) => a == b,
            (MessageType::Star(f), MessageType::Star(g)) => f.is_subset(g),
            _ => false,
        }
    }

    pub fn subst(&self, s: &TypeSubst) -> MessageType {
        match self {
            MessageType::Single(a) => s.get(a).cloned().unwrap_or_else(|| self.clone()),
            MessageType::Star(fs) => {
                let mut out = BTreeSet::new();
                for f in fs {
                    if let [a] = f.0.as_slice() {
                        match s.get(a) {
                            Some(MessageType::Single(b)) => {
                                out.insert(FormType(vec![b.clone()]));
                            }
                            Some(MessageType::Star(gs)) => out.extend(gs.iter().cloned()),
                            None => {
                                out.insert(f.clone());
                            }
                        }
                    } else {
                        out.insert(FormType(f.0.iter().map(|a| name_slot(a, s)).collect()));
                    }
                }
                MessageType::Star(out)
            }
        }
    }

    pub fn bases(&self) -> BTreeSet<BasicName> {
        match self {
            MessageType::Single(a) => [a.clone()].into(),
            MessageType::Star(fs) => fs.iter().flat_map(|f| f.0.iter().cloned()).collect(),
        }
    }
}

fn name_slot(a: &BasicName, s: &TypeSubst) -> BasicName {
    match s.get(a) {
        None => a.clone(),
        Some(MessageType::Single(b)) => b.clone(),
        Some(MessageType::Star(_)) => BasicName::bullet(),
    }
}

impl ActionType {
    pub fn of(a: &Action) -> ActionType {
        ActionType(
            a.0.iter()
                .map(|e| match e {
                    Element::Name(n) => ElementType::Name(n.base.clone()),
                    Element::In(xs) => ElementType::In(xs.iter().map(|x| x.base.clone()).collect()),
                    Element::Out(ms) => ElementType::Out(ms.iter().map(MessageType::of).collect()),
                })
                .collect(),
        )
    }

    /// `A |= self`
    pub fn admits(&self, a: &Action) -> bool {
        self.0.len() == a.0.len()
            && self.0.iter().zip(&a.0).all(|(t, e)| match (t, e) {
                (ElementType::Name(b), Element::Name(n)) => n.base == *b,
                (ElementType::In(bs), Element::In(xs)) => {
                    bs.len() == xs.len() && bs.iter().zip(xs).all(|(b, x)| x.base == *b)
                }
                (ElementType::Out(ts), Element::Out(ms)) => ts.len() == ms.len() && ts.iter().zip(ms).all(|(t, m)| t.admits(m)),
                _ => false,
            })
    }

    /// Label inclusion: every action matching `self` matches `other`.
    pub fn leq(&self, other: &ActionType) -> bool {
        self.0.len() == other.0.len()
            && self.0.iter().zip(&other.0).all(|(a, b)| match (a, b) {
                (ElementType::Out(xs), ElementType::Out(ys)) => xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| x.leq(y)),
                _ => a == b,
            })
    }

    pub fn binders(&self) -> Vec<&BasicName> {
        self.0
            .iter()
            .flat_map(|e| match e {
                ElementType::In(bs) => bs.iter().collect(),
                _ => Vec::new(),
            })
            .collect()
    }

    /// Apply a substitution to every non-binder position. A star placed
    /// where a name is required becomes `•`.
    pub fn subst(&self, s: &TypeSubst) -> ActionType {
        let s = self.restrict(s);
        let s = &s;
        ActionType(
            self.0
                .iter()
                .map(|e| match e {
                    ElementType::Name(a) => ElementType::Name(name_slot(a, s)),
                    ElementType::In(bs) => ElementType::In(bs.clone()),
                    ElementType::Out(ts) => ElementType::Out(ts.iter().map(|t| t.subst(s)).collect()),
                })
                .collect(),
        )
    }

    /// The substitution without this label's binders.
    pub fn restrict(&self, s: &TypeSubst) -> TypeSubst {
        let bs = self.binders();
        s.iter().filter(|(k, _)| !bs.contains(k)).map(|(k, v)| (k.clone(), v.clone())).collect()
    }

    pub fn contains_bullet(&self) -> bool {
        self.0.iter().any(|e| match e {
            ElementType::Name(a) => a.is_bullet(),
            ElementType::In(bs) => bs.iter().any(BasicName::is_bullet),
            ElementType::Out(ts) => ts.iter().any(|t| t.bases().iter().any(BasicName::is_bullet)),
        })
    }

    pub fn is_ambient(&self) -> bool {
        self.0.len() >= 2 && matches!(self.0.last(), Some(ElementType::Name(n)) if *n == BasicName::amb())
    }

    pub fn ambient(a: BasicName) -> ActionType {
        ActionType(vec![ElementType::Name(a), ElementType::Name(BasicName::amb())])
    }

    pub fn name(a: BasicName) -> ActionType {
        ActionType(vec![ElementType::Name(a)])
    }

    /// Unicode rendering: `⟨⟩` brackets, `★` and `a[]` for ambients.
    pub fn pretty(&self) -> String {
        self.render(true)
    }

    fn render(&self, pretty: bool) -> String {
        let (lt, gt, star) = if pretty { ("⟨", "⟩", "★") } else { ("<", ">", "*") };
        let mt = |t: &MessageType| match t {
            MessageType::Single(a) => a.to_string(),
            MessageType::Star(fs) => {
                let inner: Vec<String> = fs.iter().map(|f| f.to_string()).collect();
                format!("{}{{{}}}", star, inner.join(", "))
            }
        };
        let elem = |e: &ElementType| match e {
            ElementType::Name(a) => a.to_string(),
            ElementType::In(bs) => {
                let v: Vec<String> = bs.iter().map(|b| b.to_string()).collect();
                format!("in{}{}{}", lt, v.join(", "), gt)
            }
            ElementType::Out(ts) => {
                let v: Vec<String> = ts.iter().map(mt).collect();
                format!("out{}{}{}", lt, v.join(", "), gt)
            }
        };
        let (elems, suffix) = if self.is_ambient() { (&self.0[..self.0.len() - 1], "[]") } else { (&self.0[..], "") };
        let parts: Vec<String> = elems.iter().map(elem).collect();
        format!("{}{}", parts.join(" "), suffix)
    }
}

impl fmt::Display for FormType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<&str> = self.0.iter().map(|b| b.as_str()).collect();
        f.write_str(&v.join(" "))
    }
}

impl fmt::Display for MessageType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MessageType::Single(a) => write!(f, "{}", a),
            MessageType::Star(fs) => {
                let v: Vec<String> = fs.iter().map(|x| x.to_string()).collect();
                write!(f, "*{{{}}}", v.join(", "))
            }
        }
    }
}

impl fmt::Display for ActionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
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

debug_as_display!(FormType, MessageType, ActionType);

impl fmt::Debug for ElementType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", ActionType(vec![self.clone()]))
    }
}

fn basic(c: &mut Cursor) -> Result<BasicName, ParseError> {
    match c.peek() {
        Some(Tok::Ident(s)) if !s.ends_with('\'') => {
            let b = BasicName::new(s);
            c.bump();
            Ok(b)
        }
        Some(Tok::Bullet) => {
            c.bump();
            Ok(BasicName::bullet())
        }
        _ => Err(c.error("expected a basic name".into())),
    }
}

fn message_type(c: &mut Cursor) -> Result<MessageType, ParseError> {
    if matches!(c.peek(), Some(Tok::Star)) {
        c.bump();
        c.expect_sym("{")?;
        let mut fs = BTreeSet::new();
        if !c.eat_sym("}") {
            loop {
                let mut f = vec![basic(c)?];
                while matches!(c.peek(), Some(Tok::Ident(_)) | Some(Tok::Bullet)) {
                    f.push(basic(c)?);
                }
                fs.insert(FormType(f));
                if !c.eat_sym(",") {
                    break;
                }
            }
            c.expect_sym("}")?;
        }
        Ok(MessageType::Star(fs))
    } else {
        Ok(MessageType::Single(basic(c)?))
    }
}

/// Parse a label such as `s in<x, y>`, `out<a, *{in d}>` or `d[]`.
pub fn parse_action_type(src: &str) -> Result<ActionType, ParseError> {
    let mut c = Cursor::new(src)?;
    let mut elems = Vec::new();
    while !c.at_end() && !c.is_sym("[") {
        let kw = |c: &Cursor, k: &str| c.is_ident(k) && matches!(c.peek_at(1), Some(Tok::Sym("<")));
        if kw(&c, "in") {
            c.bump();
            c.bump();
            let mut bs = Vec::new();
            if !c.eat_sym(">") {
                bs.push(basic(&mut c)?);
                while c.eat_sym(",") {
                    bs.push(basic(&mut c)?);
                }
                c.expect_sym(">")?;
            }
            elems.push(ElementType::In(bs));
        } else if kw(&c, "out") {
            c.bump();
            c.bump();
            let mut ts = Vec::new();
            if !c.eat_sym(">") {
                ts.push(message_type(&mut c)?);
                while c.eat_sym(",") {
                    ts.push(message_type(&mut c)?);
                }
                c.expect_sym(">")?;
            }
            elems.push(ElementType::Out(ts));
        } else {
            elems.push(ElementType::Name(basic(&mut c)?));
        }
    }
    if c.eat_sym("[") {
        c.expect_sym("]")?;
        elems.push(ElementType::Name(BasicName::amb()));
    }
    c.expect_end()?;
    if elems.is_empty() {
        return Err(c.error("expected a label".into()));
    }
    Ok(ActionType(elems))
}
