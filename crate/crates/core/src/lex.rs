use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(u32),
    Sym(&'static str),
    Eps,
    Bullet,
    Star,
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
    /// Whitespace directly precedes the token.
    pub spaced: bool,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("{line}:{col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

const SYMS: [&str; 22] = [
    "~active~", ":=", "=>", "⟨", "⟩", ".", "|", "!", "(", ")", "[", "]", "<", ">", ",", "^", ":", "{", "}", ";", "?", "×",
];

pub fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let mut toks = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let mut spaced = true;
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            spaced = true;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            spaced = true;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let start = (line, col);
        let push = |toks: &mut Vec<Token>, tok: Tok, spaced: bool| {
            toks.push(Token { tok, line: start.0, col: start.1, spaced })
        };
        if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                s.push(chars[i]);
                i += 1;
            }
            while i < chars.len() && chars[i] == '\'' {
                s.push('\'');
                i += 1;
            }
            col += s.chars().count();
            push(&mut toks, Tok::Ident(s), spaced);
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while i < chars.len() && chars[i].is_ascii_digit() {
                s.push(chars[i]);
                i += 1;
            }
            col += s.len();
            let n = s.parse::<u32>().map_err(|_| ParseError {
                line: start.0,
                col: start.1,
                msg: format!("integer out of range: {}", s),
            })?;
            push(&mut toks, Tok::Int(n), spaced);
        } else if c == 'ε' {
            i += 1;
            col += 1;
            push(&mut toks, Tok::Eps, spaced);
        } else if c == '•' {
            i += 1;
            col += 1;
            push(&mut toks, Tok::Bullet, spaced);
        } else if c == '★' || c == '*' {
            i += 1;
            col += 1;
            push(&mut toks, Tok::Star, spaced);
        } else if c == 'ν' {
            i += 1;
            col += 1;
            push(&mut toks, Tok::Ident("new".into()), spaced);
        } else {
            let rest: String = chars[i..chars.len().min(i + 8)].iter().collect();
            let sym = SYMS.iter().find(|s| rest.starts_with(**s)).ok_or_else(|| ParseError {
                line,
                col,
                msg: format!("unexpected character `{}`", c),
            })?;
            let n = sym.chars().count();
            i += n;
            col += n;
            let sym: &'static str = match *sym {
                "⟨" => "<",
                "⟩" => ">",
                s => s,
            };
            push(&mut toks, Tok::Sym(sym), spaced);
        }
        spaced = false;
    }
    Ok(toks)
}

/// Cursor over a token list with positional error reporting.
pub struct Cursor {
    toks: Vec<Token>,
    pos: usize,
    end: (usize, usize),
}

impl Cursor {
    pub fn new(src: &str) -> Result<Cursor, ParseError> {
        let toks = tokenize(src)?;
        let lines = src.split('\n').count();
        let last = src.split('\n').next_back().map(|l| l.chars().count()).unwrap_or(0);
        Ok(Cursor { toks, pos: 0, end: (lines, last + 1) })
    }

    pub fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    pub fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|t| &t.tok)
    }

    /// Token at offset `k` exists and is not preceded by whitespace.
    pub fn glued(&self, k: usize) -> bool {
        self.toks.get(self.pos + k).map(|t| !t.spaced).unwrap_or(false)
    }

    pub fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.tok.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Some(Tok::Sym(x)) if *x == s)
    }

    pub fn is_ident(&self, s: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(x)) if x == s)
    }

    pub fn eat_sym(&mut self, s: &str) -> bool {
        if self.is_sym(s) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expect_sym(&mut self, s: &str) -> Result<(), ParseError> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{}`", s)))
        }
    }

    pub fn expect_end(&self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input".to_string()))
        }
    }

    pub fn error(&self, msg: String) -> ParseError {
        let (line, col) = match self.toks.get(self.pos) {
            Some(t) => (t.line, t.col),
            None => self.end,
        };
        let found = match self.peek() {
            Some(Tok::Ident(s)) => format!(", found `{}`", s),
            Some(Tok::Int(n)) => format!(", found `{}`", n),
            Some(Tok::Sym(s)) => format!(", found `{}`", s),
            Some(Tok::Eps) => ", found `ε`".to_string(),
            Some(Tok::Bullet) => ", found `•`".to_string(),
            Some(Tok::Star) => ", found `*`".to_string(),
            None => ", found end of input".to_string(),
        };
        ParseError { line, col, msg: format!("{}{}", msg, found) }
    }

    /// Shift all reported lines by `offset` (used when parsing one line of a larger file).
    pub fn with_line_offset(mut self, offset: usize) -> Cursor {
        for t in &mut self.toks {
            t.line += offset;
        }
        self.end.0 += offset;
        self
    }
}
