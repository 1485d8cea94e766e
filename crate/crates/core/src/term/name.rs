use std::fmt;
use std::sync::Arc;

/// Textual name identifier.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasicName(Arc<str>);

pub const BULLET: &str = "•";
pub const RESERVED: [&str; 4] = ["in", "out", "open", "amb"];

impl BasicName {
    pub fn new(s: &str) -> BasicName {
        BasicName(Arc::from(s))
    }

    pub fn bullet() -> BasicName {
        BasicName::new(BULLET)
    }

    pub fn amb() -> BasicName {
        BasicName::new("amb")
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn is_bullet(&self) -> bool {
        &*self.0 == BULLET
    }

    /// Names that can never be bound: `in`, `out`, `open`, `amb` and the error name.
    pub fn is_reserved(&self) -> bool {
        self.is_bullet() || RESERVED.contains(&&*self.0)
    }
}

impl fmt::Display for BasicName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for BasicName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<&str> for BasicName {
    fn from(s: &str) -> Self {
        BasicName::new(s)
    }
}

/// A basic name with an index; index 0 is the plain name.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Name {
    pub base: BasicName,
    pub index: u32,
}

impl Name {
    pub fn new(base: &str) -> Name {
        Name { base: BasicName::new(base), index: 0 }
    }

    pub fn indexed(base: BasicName, index: u32) -> Name {
        Name { base, index }
    }

    pub fn bullet() -> Name {
        Name { base: BasicName::bullet(), index: 0 }
    }

    pub fn is_bullet(&self) -> bool {
        self.base.is_bullet()
    }

    pub fn is_reserved(&self) -> bool {
        self.base.is_reserved()
    }
}

impl From<BasicName> for Name {
    fn from(base: BasicName) -> Self {
        Name { base, index: 0 }
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.index == 0 {
            write!(f, "{}", self.base)
        } else {
            write!(f, "{}^{}", self.base, self.index)
        }
    }
}

impl fmt::Debug for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
