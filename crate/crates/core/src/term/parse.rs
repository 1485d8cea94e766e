use std::sync::Arc;

use super::name::{BasicName, Name};
use super::syntax::{Action, Element, Message, Process};
use crate::lex::{Cursor, ParseError, Tok};

pub fn parse_process(src: &str) -> Result<Arc<Process>, ParseError> {
    let mut c = Cursor::new(src)?;
    let p = par(&mut c)?;
    c.expect_end()?;
    Ok(p)
}

pub fn parse_action(src: &str) -> Result<Action, ParseError> {
    let mut c = Cursor::new(src)?;
    let a = action(&mut c)?.ok_or_else(|| c.error("expected an action".into()))?;
    c.expect_end()?;
    Ok(a)
}

pub fn parse_message(src: &str) -> Result<Message, ParseError> {
    let mut c = Cursor::new(src)?;
    let m = message(&mut c)?;
    c.expect_end()?;
    Ok(m)
}

pub fn parse_name(src: &str) -> Result<Name, ParseError> {
    let mut c = Cursor::new(src)?;
    let n = name(&mut c)?;
    c.expect_end()?;
    Ok(n)
}

fn par(c: &mut Cursor) -> Result<Arc<Process>, ParseError> {
    let mut p = unary(c)?;
    while c.eat_sym("|") {
        let q = unary(c)?;
        p = Process::par(p, q);
    }
    Ok(p)
}

fn unary(c: &mut Cursor) -> Result<Arc<Process>, ParseError> {
    match c.peek() {
        Some(Tok::Int(0)) => {
            c.bump();
            Ok(Process::nil())
        }
        Some(Tok::Sym("!")) => {
            c.bump();
            Ok(Process::bang(unary(c)?))
        }
        Some(Tok::Sym("(")) => {
            c.bump();
            let p = par(c)?;
            c.expect_sym(")")?;
            Ok(p)
        }
        Some(Tok::Ident(s)) if s == "new" => {
            c.bump();
            let mut xs = vec![name(c)?];
            while c.eat_sym(",") {
                xs.push(name(c)?);
            }
            c.expect_sym(".")?;
            let body = unary(c)?;
            for x in &xs {
                if x.is_reserved() {
                    return Err(c.error(format!("reserved name `{}` cannot be bound", x)));
                }
            }
            Ok(Process::nus(xs, body))
        }
        _ => {
            let Some(mut a) = action(c)? else {
                return Err(c.error("expected a process".into()));
            };
            if c.eat_sym("[") {
                let body = if c.is_sym("]") { Process::nil() } else { par(c)? };
                c.expect_sym("]")?;
                a.0.push(Element::Name(Name::new("amb")));
                Ok(Process::prefix(a, body))
            } else if c.eat_sym(".") {
                Ok(Process::prefix(a, unary(c)?))
            } else {
                Ok(Process::prefix(a, Process::nil()))
            }
        }
    }
}

fn is_element_start(c: &Cursor) -> bool {
    match c.peek() {
        Some(Tok::Ident(s)) => s != "new" && !s.ends_with('\''),
        Some(Tok::Bullet) => true,
        _ => false,
    }
}

/// Elements until the next non-element token; `None` when there is none.
pub(crate) fn action(c: &mut Cursor) -> Result<Option<Action>, ParseError> {
    let mut elems = Vec::new();
    while is_element_start(c) {
        let is_kw = |k: &str| c.is_ident(k) && matches!(c.peek_at(1), Some(Tok::Sym("<")));
        if is_kw("in") {
            c.bump();
            c.bump();
            elems.push(Element::In(binders(c)?));
            continue;
        }
        if is_kw("out") {
            c.bump();
            c.bump();
            elems.push(Element::Out(messages(c)?));
            continue;
        }
        let n = name(c)?;
        elems.push(Element::Name(n));
        if c.glued(0) && c.is_sym("<") {
            c.bump();
            elems.push(Element::Out(messages(c)?));
        } else if c.glued(0) && c.is_sym("(") {
            c.bump();
            let xs = if c.is_sym(")") { Vec::new() } else { name_list(c)? };
            c.expect_sym(")")?;
            check_binders(c, &xs)?;
            elems.push(Element::In(xs));
        }
    }
    Ok(if elems.is_empty() { None } else { Some(Action(elems)) })
}

fn check_binders(c: &Cursor, xs: &[Name]) -> Result<(), ParseError> {
    for x in xs {
        if x.is_reserved() {
            return Err(c.error(format!("reserved name `{}` cannot be bound", x)));
        }
    }
    Ok(())
}

fn binders(c: &mut Cursor) -> Result<Vec<Name>, ParseError> {
    let xs = if c.is_sym(">") { Vec::new() } else { name_list(c)? };
    c.expect_sym(">")?;
    check_binders(c, &xs)?;
    Ok(xs)
}

fn name_list(c: &mut Cursor) -> Result<Vec<Name>, ParseError> {
    let mut xs = vec![name(c)?];
    while c.eat_sym(",") {
        xs.push(name(c)?);
    }
    Ok(xs)
}

fn messages(c: &mut Cursor) -> Result<Vec<Message>, ParseError> {
    let mut ms = Vec::new();
    if c.eat_sym(">") {
        return Ok(ms);
    }
    ms.push(message(c)?);
    while c.eat_sym(",") {
        ms.push(message(c)?);
    }
    c.expect_sym(">")?;
    Ok(ms)
}

pub(crate) fn message(c: &mut Cursor) -> Result<Message, ParseError> {
    let mut m = message_atom(c)?;
    while c.eat_sym(".") {
        let r = message_atom(c)?;
        m = Message::comp(m, r);
    }
    Ok(m)
}

fn message_atom(c: &mut Cursor) -> Result<Message, ParseError> {
    match c.peek() {
        Some(Tok::Eps) => {
            c.bump();
            Ok(Message::Empty)
        }
        Some(Tok::Sym("(")) => {
            c.bump();
            if c.eat_sym(")") {
                return Ok(Message::Empty);
            }
            let m = message(c)?;
            c.expect_sym(")")?;
            Ok(m)
        }
        _ => {
            let mut ns = vec![name(c)?];
            while matches!(c.peek(), Some(Tok::Ident(s)) if !s.ends_with('\'')) || matches!(c.peek(), Some(Tok::Bullet)) {
                ns.push(name(c)?);
            }
            Ok(Message::Form(ns))
        }
    }
}

pub(crate) fn name(c: &mut Cursor) -> Result<Name, ParseError> {
    let base = match c.peek() {
        Some(Tok::Ident(s)) if s != "new" && !s.ends_with('\'') => BasicName::new(s),
        Some(Tok::Bullet) => BasicName::bullet(),
        _ => return Err(c.error("expected a name".into())),
    };
    c.bump();
    let mut index = 0;
    if c.glued(0) && c.is_sym("^") {
        c.bump();
        match c.bump() {
            Some(Tok::Int(i)) => index = i,
            _ => return Err(c.error("expected an index after `^`".into())),
        }
    }
    Ok(Name { base, index })
}
