use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::infer::{active_nodes, is_type};
use crate::rules::RuleSet;
use crate::shape::{ActionType, ElementType, ShapePredicate};
use crate::term::BasicName;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FindingKind {
    ArityMismatch,
    BulletLabel,
    BareNameCapability,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Finding {
    pub kind: FindingKind,
    pub node: u32,
    pub labels: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SafetyVerdict {
    pub safe: bool,
    pub findings: Vec<Finding>,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SafetyError {
    #[error("the shape predicate is not a type under the rule set")]
    NotAType,
}

impl SafetyVerdict {
    fn from_findings(mut findings: Vec<Finding>) -> SafetyVerdict {
        findings.sort();
        findings.dedup();
        SafetyVerdict { safe: findings.is_empty(), findings }
    }
}

impl fmt::Display for FindingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FindingKind::ArityMismatch => "arity-mismatch",
            FindingKind::BulletLabel => "bullet-label",
            FindingKind::BareNameCapability => "bare-name-capability",
        })
    }
}

impl fmt::Display for SafetyVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.safe {
            return writeln!(f, "safe");
        }
        writeln!(f, "unsafe")?;
        for x in &self.findings {
            writeln!(f, "  {} at node {}: {}", x.kind, x.node, x.labels.join(" / "))?;
        }
        Ok(())
    }
}

/// A communication label: its channel prefix, whether it is an input, and its arity.
fn comm(l: &ActionType) -> Option<(&[ElementType], bool, usize)> {
    let (last, chan) = l.0.split_last()?;
    match last {
        ElementType::In(xs) => Some((chan, true, xs.len())),
        ElementType::Out(ms) => Some((chan, false, ms.len())),
        ElementType::Name(_) => None,
    }
}

fn scan(s: &ShapePredicate, r: &RuleSet, bare: Option<&BTreeSet<BasicName>>) -> Result<SafetyVerdict, SafetyError> {
    if !is_type(r, s) {
        return Err(SafetyError::NotAType);
    }
    let mut findings = Vec::new();
    for e in &s.graph.edges {
        if e.label.contains_bullet() {
            findings.push(Finding { kind: FindingKind::BulletLabel, node: e.src.0, labels: vec![e.label.pretty()] });
        }
    }
    for n in active_nodes(r, s) {
        let labels: Vec<&ActionType> = s.graph.out_edges(n).map(|e| &e.label).collect();
        for (i, a) in labels.iter().enumerate() {
            let Some((ca, ia, ka)) = comm(a) else {
                if let (Some(ibn), [ElementType::Name(x)]) = (bare, a.0.as_slice()) {
                    if !ibn.contains(x) && !x.is_reserved() {
                        findings.push(Finding { kind: FindingKind::BareNameCapability, node: n.0, labels: vec![a.pretty()] });
                    }
                }
                continue;
            };
            for b in &labels[i + 1..] {
                if let Some((cb, ib, kb)) = comm(b) {
                    if ca == cb && ia != ib && ka != kb {
                        let (x, y) = if ia { (b, a) } else { (a, b) };
                        findings.push(Finding { kind: FindingKind::ArityMismatch, node: n.0, labels: vec![x.pretty(), y.pretty()] });
                    }
                }
            }
        }
    }
    Ok(SafetyVerdict::from_findings(findings))
}

/// Communication safety of a π shape type: no arity clash on a channel at an
/// active node, and no `•` anywhere.
pub fn pi_safety(s: &ShapePredicate, r: &RuleSet) -> Result<SafetyVerdict, SafetyError> {
    scan(s, r, None)
}

/// As [`pi_safety`], also flagging active single-name capabilities that are not
/// input-bound.
pub fn ma_safety(s: &ShapePredicate, r: &RuleSet, ibn: &BTreeSet<BasicName>) -> Result<SafetyVerdict, SafetyError> {
    scan(s, r, Some(ibn))
}

