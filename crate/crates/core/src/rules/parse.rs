use std::collections::BTreeMap;
use std::sync::Arc;

use super::template::{ActionTempl, ElemTempl, ProcTempl, Rule, RuleSet, Var, VarKind};
use crate::lex::{Cursor, ParseError, Tok};
use crate::term::BasicName;

/// Parse a rule file: one rule per line (or `;`-separated), `#` comments.
pub fn parse_rules(src: &str) -> Result<RuleSet, ParseError> {
    let mut rules = Vec::new();
    for (lineno, line) in src.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        let mut col = 0;
        for chunk in line.split(';') {
            let offset_col = col;
            col += chunk.chars().count() + 1;
            if chunk.trim().is_empty() {
                continue;
            }
            let rule = parse_rule(chunk).map_err(|e| ParseError {
                line: lineno + 1,
                col: e.col + offset_col,
                msg: e.msg,
            })?;
            rules.push(rule);
        }
    }
    Ok(RuleSet::new(rules))
}

pub fn parse_rule(src: &str) -> Result<Rule, ParseError> {
    let mut c = Cursor::new(src)?;
    let mut ids = 0;
    let rule = if is_var(c.peek()) && matches!(c.peek_at(1), Some(Tok::Sym("~active~"))) {
        let var = var(&mut c)?;
        c.bump();
        let body = par(&mut c, &mut ids)?;
        c.expect_end()?;
        Rule::Active { var, body }
    } else {
        let lhs = par(&mut c, &mut ids)?;
        c.expect_sym("=>")?;
        let rhs = par(&mut c, &mut ids)?;
        c.expect_end()?;
        Rule::Reduce { lhs, rhs }
    };
    check(&rule).map_err(|msg| ParseError { line: 1, col: 1, msg })?;
    Ok(rule)
}

fn check(rule: &Rule) -> Result<(), String> {
    let mut seen: BTreeMap<Var, VarKind> = BTreeMap::new();
    let record = |occ: Vec<(Var, VarKind)>, seen: &mut BTreeMap<Var, VarKind>, lhs: bool| -> Result<(), String> {
        let mut count: BTreeMap<Var, usize> = BTreeMap::new();
        for (v, k) in occ {
            match seen.get(&v) {
                Some(k0) if *k0 != k => {
                    return Err(format!("metavariable {} used both as {:?} and {:?}", v, k0, k).to_lowercase())
                }
                None if !lhs => return Err(format!("metavariable {} on the right does not occur on the left", v)),
                _ => {}
            }
            seen.insert(v.clone(), k);
            if lhs && k != VarKind::Name {
                *count.entry(v).or_default() += 1;
            }
        }
        if let Some((v, _)) = count.into_iter().find(|(_, n)| *n > 1) {
            return Err(format!("metavariable {} occurs more than once on the left", v));
        }
        Ok(())
    };
    match rule {
        Rule::Reduce { lhs, rhs } => {
            if lhs.has_subst() {
                return Err("substitution is not allowed on the left of a rule".into());
            }
            let mut l = Vec::new();
            lhs.var_kinds(&mut l);
            record(l, &mut seen, true)?;
            let mut r = Vec::new();
            rhs.var_kinds(&mut r);
            record(r, &mut seen, false)?;
            subst_sources(rhs, &seen)?;
        }
        Rule::Active { var, body } => {
            if body.has_subst() {
                return Err("substitution is not allowed in an active context".into());
            }
            let mut l = Vec::new();
            body.var_kinds(&mut l);
            if !l.iter().any(|(v, k)| v == var && *k == VarKind::Process) {
                return Err(format!("active context does not contain {}", var));
            }
            record(l, &mut seen, true)?;
            match body.path_to(var) {
                Some(path) if !path.is_empty() => {}
                _ => return Err(format!("{} must occur under a prefix of the active context", var)),
            }
        }
    }
    Ok(())
}

fn subst_sources(t: &ProcTempl, kinds: &BTreeMap<Var, VarKind>) -> Result<(), String> {
    match t {
        ProcTempl::Subst(pairs, _) => {
            for (_, s) in pairs {
                match kinds.get(s) {
                    Some(VarKind::Name) | Some(VarKind::Message) => {}
                    Some(VarKind::Process) => return Err(format!("cannot substitute process metavariable {}", s)),
                    None => return Err(format!("metavariable {} on the right does not occur on the left", s)),
                }
            }
            Ok(())
        }
        ProcTempl::Prefix(_, _, p) => subst_sources(p, kinds),
        ProcTempl::Par(a, b) => {
            subst_sources(a, kinds)?;
            subst_sources(b, kinds)
        }
        _ => Ok(()),
    }
}

fn is_var(t: Option<&Tok>) -> bool {
    matches!(t, Some(Tok::Ident(s)) if s.ends_with('\''))
}

fn var(c: &mut Cursor) -> Result<Var, ParseError> {
    match c.peek() {
        Some(Tok::Ident(s)) if s.ends_with('\'') => {
            let v: Var = Arc::from(s.as_str());
            c.bump();
            Ok(v)
        }
        _ => Err(c.error("expected a metavariable".into())),
    }
}

fn par(c: &mut Cursor, ids: &mut usize) -> Result<ProcTempl, ParseError> {
    let mut t = unary(c, ids)?;
    while c.eat_sym("|") {
        let r = unary(c, ids)?;
        t = ProcTempl::Par(Box::new(t), Box::new(r));
    }
    Ok(t)
}

fn element_follows(c: &Cursor) -> bool {
    match c.peek_at(1) {
        Some(Tok::Sym(".")) | Some(Tok::Sym("[")) => true,
        Some(Tok::Sym("<")) | Some(Tok::Sym("(")) => c.glued(1),
        Some(Tok::Ident(s)) => s != "new",
        _ => false,
    }
}

fn unary(c: &mut Cursor, ids: &mut usize) -> Result<ProcTempl, ParseError> {
    match c.peek() {
        Some(Tok::Int(0)) => {
            c.bump();
            Ok(ProcTempl::Nil)
        }
        Some(Tok::Sym("(")) => {
            c.bump();
            let t = par(c, ids)?;
            c.expect_sym(")")?;
            Ok(t)
        }
        Some(Tok::Sym("[")) => {
            c.bump();
            let mut pairs = Vec::new();
            loop {
                let a = var(c)?;
                c.expect_sym(":=")?;
                let s = var(c)?;
                pairs.push((a, s));
                if !c.eat_sym(",") {
                    break;
                }
            }
            c.expect_sym("]")?;
            let v = var(c)?;
            Ok(ProcTempl::Subst(pairs, v))
        }
        Some(Tok::Bullet) => Err(c.error("the error name cannot appear in a rule".into())),
        Some(Tok::Ident(_)) if is_var(c.peek()) && !element_follows(c) => Ok(ProcTempl::Var(var(c)?)),
        Some(Tok::Ident(s)) if s != "new" => {
            let mut a = action(c)?;
            let id = *ids;
            *ids += 1;
            if c.eat_sym("[") {
                let body = if c.is_sym("]") { ProcTempl::Nil } else { par(c, ids)? };
                c.expect_sym("]")?;
                a.0.push(ElemTempl::Concrete(BasicName::amb()));
                Ok(ProcTempl::Prefix(id, a, Box::new(body)))
            } else if c.eat_sym(".") {
                Ok(ProcTempl::Prefix(id, a, Box::new(unary(c, ids)?)))
            } else {
                Ok(ProcTempl::Prefix(id, a, Box::new(ProcTempl::Nil)))
            }
        }
        _ => Err(c.error("expected a process template".into())),
    }
}

fn var_list(c: &mut Cursor, close: &str) -> Result<Vec<Var>, ParseError> {
    let mut vs = Vec::new();
    if c.eat_sym(close) {
        return Ok(vs);
    }
    vs.push(var(c)?);
    while c.eat_sym(",") {
        vs.push(var(c)?);
    }
    c.expect_sym(close)?;
    Ok(vs)
}

fn action(c: &mut Cursor) -> Result<ActionTempl, ParseError> {
    let mut elems = Vec::new();
    loop {
        let s = match c.peek() {
            Some(Tok::Ident(s)) if s != "new" => s.clone(),
            Some(Tok::Bullet) => return Err(c.error("the error name cannot appear in a rule".into())),
            _ => break,
        };
        if (s == "in" || s == "out") && matches!(c.peek_at(1), Some(Tok::Sym("<"))) {
            c.bump();
            c.bump();
            let vs = var_list(c, ">")?;
            elems.push(if s == "in" { ElemTempl::In(vs) } else { ElemTempl::Out(vs) });
            continue;
        }
        c.bump();
        elems.push(if s.ends_with('\'') {
            ElemTempl::NameVar(Arc::from(s.as_str()))
        } else {
            ElemTempl::Concrete(BasicName::new(&s))
        });
        if c.glued(0) && c.eat_sym("<") {
            elems.push(ElemTempl::Out(var_list(c, ">")?));
        } else if c.glued(0) && c.eat_sym("(") {
            elems.push(ElemTempl::In(var_list(c, ")")?));
        }
    }
    if elems.is_empty() {
        return Err(c.error("expected an action template".into()));
    }
    Ok(ActionTempl(elems))
}
