//! Text syntax for words and morphisms.
//!
//! ```text
//! word     := '1' | factor (('*' | ws)? factor)*
//! factor   := ('x' | 'e') digits ('^' '-'? digits | '\'')?
//! morphism := '(' word (',' word)* ')' (':' digits '->' digits)?
//! ```
//! An empty word (or `1`) is the identity.

use super::{reduce, FreeWord, GrMorphism, Letter};
use crate::error::{Error, Result};

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor { s: s.as_bytes(), pos: 0 }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<usize> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        text.parse().map_err(|_| Error::Parse { pos: start, msg: "number too large".into() })
    }

    /// Parses letters until a delimiter (`,`, `)`, `:`, `}` or end).
    fn word_letters(&mut self) -> Result<Vec<Letter>> {
        let mut letters = Vec::new();
        let mut seen_one = false;
        loop {
            self.skip_ws();
            match self.peek() {
                None | Some(b',') | Some(b')') | Some(b':') | Some(b'}') => break,
                Some(b'*') if !letters.is_empty() || seen_one => {
                    self.pos += 1;
                }
                Some(b'1') if letters.is_empty() && !seen_one => {
                    self.pos += 1;
                    seen_one = true;
                }
                Some(b'x') | Some(b'e') => {
                    self.pos += 1;
                    let idx_pos = self.pos;
                    let k = self.number()?;
                    if k == 0 {
                        return Err(Error::Parse { pos: idx_pos, msg: "generator index must be >= 1".into() });
                    }
                    let k = Letter::try_from(k).map_err(|_| Error::Parse {
                        pos: idx_pos,
                        msg: "generator index too large".into(),
                    })?;
                    let mut exp: i64 = 1;
                    if self.eat(b'\'') {
                        exp = -1;
                    } else if self.eat(b'^') {
                        let neg = self.eat(b'-');
                        let e = self.number()? as i64;
                        exp = if neg { -e } else { e };
                    }
                    let l = if exp < 0 { -k } else { k };
                    for _ in 0..exp.unsigned_abs() {
                        letters.push(l);
                    }
                }
                Some(c) => return self.err(format!("unexpected character '{}'", c as char)),
            }
        }
        Ok(letters)
    }
}

fn max_index(letters: &[Letter]) -> usize {
    letters.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0)
}

/// Parses a single word. With `rank = None` the ambient rank is the largest
/// generator index that occurs.
pub fn parse_word(text: &str, rank: Option<usize>) -> Result<FreeWord> {
    let mut c = Cursor::new(text);
    let letters = c.word_letters()?;
    c.skip_ws();
    if c.peek().is_some() {
        return c.err("trailing input");
    }
    reduce(&letters, rank.unwrap_or_else(|| max_index(&letters)))
}

fn parse_tuple(c: &mut Cursor<'_>, open: u8, close: u8) -> Result<Vec<Vec<Letter>>> {
    c.skip_ws();
    let bracketed = c.eat(open);
    let mut words = Vec::new();
    c.skip_ws();
    if bracketed && c.eat(close) {
        return Ok(words);
    }
    loop {
        words.push(c.word_letters()?);
        c.skip_ws();
        if c.eat(b',') {
            continue;
        }
        break;
    }
    if bracketed && !c.eat(close) {
        return c.err(format!("expected '{}'", close as char));
    }
    Ok(words)
}

/// Parses `"(w1, ..., wk)"` with an optional `": src -> dst"` declaration.
/// Without a declaration the source rank is `k` and the target rank is the
/// largest generator index used.
pub fn parse_morphism(text: &str) -> Result<GrMorphism> {
    let mut c = Cursor::new(text);
    c.skip_ws();
    if c.peek() != Some(b'(') {
        return c.err("expected '('");
    }
    let words = parse_tuple(&mut c, b'(', b')')?;
    c.skip_ws();
    let (src, dst) = if c.eat(b':') {
        c.skip_ws();
        let src = c.number()?;
        c.skip_ws();
        if !(c.eat(b'-') && c.eat(b'>')) {
            return c.err("expected '->'");
        }
        c.skip_ws();
        let dst = c.number()?;
        (src, dst)
    } else {
        let dst = words.iter().map(|w| max_index(w)).max().unwrap_or(0);
        (words.len(), dst)
    };
    c.skip_ws();
    if c.peek().is_some() {
        return c.err("trailing input");
    }
    // `()` declared as `: 1 -> n` would be ambiguous with a single empty word
    let words = if words.is_empty() && src == 1 { vec![Vec::new()] } else { words };
    let images = words
        .iter()
        .map(|ls| reduce(ls, dst))
        .collect::<Result<Vec<_>>>()?;
    GrMorphism::new(src, dst, images)
}

/// Parses a comma-separated list of words, optionally wrapped in `{}` or `()`.
pub fn parse_word_list(text: &str, rank: Option<usize>) -> Result<Vec<FreeWord>> {
    let mut c = Cursor::new(text);
    c.skip_ws();
    let words = match c.peek() {
        Some(b'{') => parse_tuple(&mut c, b'{', b'}')?,
        Some(b'(') => parse_tuple(&mut c, b'(', b')')?,
        None => Vec::new(),
        _ => parse_tuple(&mut c, b'{', b'}')?,
    };
    c.skip_ws();
    if c.peek().is_some() {
        return c.err("trailing input");
    }
    let rank = rank.unwrap_or_else(|| words.iter().map(|w| max_index(w)).max().unwrap_or(0));
    words.iter().map(|ls| reduce(ls, rank)).collect()
}
