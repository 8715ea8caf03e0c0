//! Character cursor shared by the program and goal parsers.

use super::parse::{ParseError, ParseErrorKind};

pub(super) struct Cursor<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
    col: usize,
    anon: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(src: &'a str) -> Self {
        Cursor {
            src,
            pos: 0,
            line: 1,
            col: 1,
            anon: 0,
        }
    }

    pub fn position(&self) -> (usize, usize) {
        (self.line, self.col)
    }

    pub fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: self.line,
            column: self.col,
            kind,
        }
    }

    pub fn syntax(&self, msg: impl Into<String>) -> ParseError {
        self.error(ParseErrorKind::Syntax(msg.into()))
    }

    pub fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek2(&self) -> Option<char> {
        let mut it = self.src[self.pos..].chars();
        it.next();
        it.next()
    }

    pub fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    pub fn at_end(&mut self) -> bool {
        self.skip_trivia();
        self.pos >= self.src.len()
    }

    /// Skips whitespace and `%` line comments.
    pub fn skip_trivia(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '%' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    pub fn looking_at(&mut self, s: &str) -> bool {
        self.skip_trivia();
        self.src[self.pos..].starts_with(s)
    }

    pub fn eat(&mut self, s: &str) -> bool {
        if self.looking_at(s) {
            for _ in s.chars() {
                self.bump();
            }
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, s: &str) -> Result<(), ParseError> {
        if self.eat(s) {
            Ok(())
        } else {
            let found = self
                .peek()
                .map_or("end of input".to_string(), |c| format!("`{c}`"));
            Err(self.syntax(format!("expected `{s}`, found {found}")))
        }
    }

    /// A lowercase identifier or a quoted name. Inside identifiers a `.`
    /// between two digits is kept, so `pay_0.8` is one symbol.
    pub fn symbol(&mut self) -> Result<Option<String>, ParseError> {
        self.skip_trivia();
        match self.peek() {
            Some('\'') => self.quoted().map(Some),
            Some(c) if c.is_ascii_lowercase() => Ok(Some(self.ident_chars())),
            _ => Ok(None),
        }
    }

    /// An uppercase- or underscore-initial variable name. Each bare `_` is
    /// renamed to a distinct anonymous variable.
    pub fn variable(&mut self) -> Option<String> {
        self.skip_trivia();
        match self.peek() {
            Some(c) if c.is_ascii_uppercase() || c == '_' => {
                let name = self.ident_chars();
                if name == "_" {
                    self.anon += 1;
                    Some(format!("_{}", self.anon))
                } else {
                    Some(name)
                }
            }
            _ => None,
        }
    }

    fn ident_chars(&mut self) -> String {
        let mut out = String::new();
        while let Some(c) = self.peek() {
            let keep = c.is_ascii_alphanumeric()
                || c == '_'
                || (c == '.'
                    && out.ends_with(|p: char| p.is_ascii_digit())
                    && self.peek2().is_some_and(|n| n.is_ascii_digit()));
            if !keep {
                break;
            }
            out.push(c);
            self.bump();
        }
        out
    }

    fn quoted(&mut self) -> Result<String, ParseError> {
        self.bump();
        let mut out = String::new();
        loop {
            match self.bump() {
                None => return Err(self.syntax("unterminated quoted name")),
                Some('\'') => {
                    if self.peek() == Some('\'') {
                        self.bump();
                        out.push('\'');
                    } else {
                        break;
                    }
                }
                Some(c) => out.push(c),
            }
        }
        if out.is_empty() {
            return Err(self.syntax("empty quoted name"));
        }
        Ok(out)
    }

    /// Raw text of a value literal, up to (not including) the first
    /// character at parenthesis depth zero for which `stop` holds.
    pub fn raw_value(
        &mut self,
        stop: impl Fn(char, Option<char>) -> bool,
    ) -> Result<String, ParseError> {
        self.skip_trivia();
        let mut depth = 0usize;
        let mut out = String::new();
        while let Some(c) = self.peek() {
            if depth == 0 && stop(c, self.peek2()) {
                break;
            }
            match c {
                '(' => depth += 1,
                ')' => {
                    if depth == 0 {
                        break;
                    }
                    depth -= 1
                }
                '\n' => break,
                _ => {}
            }
            out.push(c);
            self.bump();
        }
        let out = out.trim().to_string();
        if out.is_empty() {
            return Err(self.syntax("expected a value literal"));
        }
        Ok(out)
    }

    /// Rest of the current line, trimmed.
    pub fn rest_of_line(&mut self) -> String {
        let mut out = String::new();
        while let Some(c) = self.peek() {
            if c == '\n' || c == '%' {
                break;
            }
            out.push(c);
            self.bump();
        }
        out.trim().to_string()
    }
}
