//! Parsing words such as `(x y)^7`, `xyxY` or `a b^-1 (a b)^-2`.

use std::collections::HashMap;

use thiserror::Error;

use crate::pregroup::{invert_case, Elem, Pregroup, Word, IDENTITY};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("unknown generator {token:?} at column {column}")]
    Unknown { token: String, column: usize },
    #[error("unbalanced parenthesis at column {0}")]
    Unbalanced(usize),
    #[error("bad exponent at column {0}")]
    Exponent(usize),
    #[error("unexpected character {ch:?} at column {column}")]
    Unexpected { ch: char, column: usize },
}

/// Names recognised by the parser, each mapped to a letter.
#[derive(Debug, Clone)]
pub struct Lexicon {
    entries: HashMap<String, Elem>,
    sigma: Vec<Elem>,
}

impl Lexicon {
    /// Every element name, plus case-swapped names for inverses where unambiguous.
    pub fn new(p: &Pregroup) -> Self {
        Self::restricted(p, &p.letters().collect::<Vec<_>>())
    }

    /// Only the given letters and their inverses.
    pub fn restricted(p: &Pregroup, letters: &[Elem]) -> Self {
        let mut entries = HashMap::new();
        for &e in letters {
            entries.insert(p.name(e).to_string(), e);
            entries.insert(p.name(p.sigma(e)).to_string(), p.sigma(e));
        }
        for &e in letters {
            let alias = invert_case(p.name(e));
            if p.lookup(&alias).is_none() {
                entries.entry(alias).or_insert(p.sigma(e));
            }
        }
        entries.insert("1".to_string(), IDENTITY);
        let sigma = (0..p.len() as Elem).map(|e| p.sigma(e)).collect();
        Lexicon { entries, sigma }
    }

    pub fn parse(&self, s: &str) -> Result<Word, ParseError> {
        let chars: Vec<char> = s.chars().collect();
        let mut pos = 0;
        let w = self.sequence(&chars, &mut pos, 0)?;
        if pos < chars.len() {
            return Err(ParseError::Unbalanced(pos + 1));
        }
        Ok(w.into_iter().filter(|&e| e != IDENTITY).collect())
    }

    fn sequence(&self, c: &[char], pos: &mut usize, depth: usize) -> Result<Word, ParseError> {
        let mut out = Word::new();
        loop {
            skip_space(c, pos);
            let Some(&ch) = c.get(*pos) else {
                if depth > 0 {
                    return Err(ParseError::Unbalanced(*pos + 1));
                }
                return Ok(out);
            };
            let atom = match ch {
                ')' => {
                    if depth == 0 {
                        return Err(ParseError::Unbalanced(*pos + 1));
                    }
                    return Ok(out);
                }
                '(' => {
                    *pos += 1;
                    let inner = self.sequence(c, pos, depth + 1)?;
                    *pos += 1;
                    inner
                }
                '*' | '.' | ',' => {
                    *pos += 1;
                    continue;
                }
                _ => vec![self.name(c, pos)?],
            };
            let mut atom = atom;
            loop {
                skip_space(c, pos);
                if c.get(*pos) != Some(&'^') {
                    break;
                }
                let start = *pos + 1;
                *pos += 1;
                skip_space(c, pos);
                let neg = c.get(*pos) == Some(&'-');
                if neg {
                    *pos += 1;
                }
                let digits_start = *pos;
                while c.get(*pos).is_some_and(|d| d.is_ascii_digit()) {
                    *pos += 1;
                }
                let k: usize = c[digits_start..*pos]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| ParseError::Exponent(start))?;
                if neg {
                    atom = atom.iter().rev().map(|&e| self.sigma[e as usize]).collect();
                }
                atom = atom.repeat(k);
            }
            out.extend(atom);
        }
    }

    fn name(&self, c: &[char], pos: &mut usize) -> Result<Elem, ParseError> {
        let start = *pos;
        let mut best = None;
        let mut end = start;
        while end < c.len() && is_name_char(c[end]) {
            end += 1;
            let candidate: String = c[start..end].iter().collect();
            if let Some(&e) = self.entries.get(&candidate) {
                best = Some((e, end));
            }
        }
        match best {
            Some((e, stop)) => {
                *pos = stop;
                Ok(e)
            }
            None if end > start => {
                let token: String = c[start..end].iter().collect();
                Err(ParseError::Unknown { token, column: start + 1 })
            }
            None => Err(ParseError::Unexpected { ch: c[start], column: start + 1 }),
        }
    }
}

fn is_name_char(ch: char) -> bool {
    ch.is_alphanumeric() || ch == '_' || ch == '\''
}

fn skip_space(c: &[char], pos: &mut usize) {
    while c.get(*pos).is_some_and(|ch| ch.is_whitespace()) {
        *pos += 1;
    }
}
