use std::fmt;

use crate::error::{Error, Result};

/// A generator letter with exponent `+1` or `-1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Letter {
    pub gen: char,
    pub exp: i8,
}

impl Letter {
    pub fn new(gen: char, exp: i8) -> Self {
        debug_assert!(gen.is_ascii_lowercase() && (exp == 1 || exp == -1));
        Letter { gen, exp }
    }

    pub fn inverse(self) -> Self {
        Letter {
            gen: self.gen,
            exp: -self.exp,
        }
    }

    /// Lowercase for `+1`, uppercase for `-1`.
    pub fn to_char(self) -> char {
        if self.exp > 0 {
            self.gen
        } else {
            self.gen.to_ascii_uppercase()
        }
    }
}

/// Free-group word, kept exactly as written. Reduction is explicit.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    pub fn gen(g: char) -> Self {
        Word {
            letters: vec![Letter::new(g, 1)],
        }
    }

    /// Lowercase letters are generators, uppercase their inverses.
    pub fn parse(text: &str) -> Result<Self> {
        let mut letters = Vec::with_capacity(text.len());
        for (pos, ch) in text.chars().enumerate() {
            if ch.is_ascii_lowercase() {
                letters.push(Letter::new(ch, 1));
            } else if ch.is_ascii_uppercase() {
                letters.push(Letter::new(ch.to_ascii_lowercase(), -1));
            } else {
                return Err(Error::WordParse { pos, found: ch });
            }
        }
        Ok(Word { letters })
    }

    pub fn render(&self) -> String {
        self.letters.iter().map(|l| l.to_char()).collect()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| w[0] != w[1].inverse())
    }

    /// Concatenation without reduction.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    /// Reversed letters with flipped exponents, unreduced.
    pub fn inverse_literal(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn multiply(&self, other: &Word) -> Word {
        self.concat(other).free_reduce()
    }

    pub fn invert(&self) -> Word {
        self.inverse_literal().free_reduce()
    }

    pub fn exponent_sum(&self, g: char) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.gen == g)
            .map(|l| l.exp as i64)
            .sum()
    }

    pub fn prefix(&self, k: usize) -> Word {
        Word {
            letters: self.letters[..k].to_vec(),
        }
    }

    /// Generators appearing in the word, in order of first appearance.
    pub fn generators(&self) -> Vec<char> {
        let mut seen = Vec::new();
        for l in &self.letters {
            if !seen.contains(&l.gen) {
                seen.push(l.gen);
            }
        }
        seen
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", self.render())
        }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({:?})", self.render())
    }
}

/// Parses `text` as a word.
pub fn parse_word(text: &str) -> Result<Word> {
    Word::parse(text)
}

pub fn render_word(w: &Word) -> String {
    w.render()
}

pub fn free_reduce(w: &Word) -> Word {
    w.free_reduce()
}

pub fn word_multiply(u: &Word, v: &Word) -> Word {
    u.multiply(v)
}

pub fn word_invert(u: &Word) -> Word {
    u.invert()
}

pub fn exponent_sum(w: &Word, g: char) -> i64 {
    w.exponent_sum(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn parse_cases() {
        assert_eq!(
            w("aB").letters(),
            &[Letter::new('a', 1), Letter::new('b', -1)]
        );
        assert!(w("").is_empty());
        let c = w("abACbcbacBCABaBc");
        assert_eq!(c.len(), 16);
        assert_eq!(c.render(), "abACbcbacBCABaBc");
        assert_eq!(
            Word::parse("ab1c"),
            Err(Error::WordParse { pos: 2, found: '1' })
        );
    }

    #[test]
    fn reduction_cases() {
        assert!(w("aA").free_reduce().is_empty());
        assert!(w("abBA").free_reduce().is_empty());
        assert_eq!(w("aBc").free_reduce(), w("aBc"));
    }

    #[test]
    fn multiply_invert() {
        assert!(w("ab").multiply(&w("BA")).is_empty());
        assert_eq!(w("aB").invert(), w("bA"));
        assert_eq!(w("a").multiply(&w("a")), w("aa"));
    }

    #[test]
    fn exponent_sums() {
        let r = w("abcACaB");
        assert_eq!(r.exponent_sum('a'), 1);
        assert_eq!(r.exponent_sum('b'), 0);
        assert_eq!(w("").exponent_sum('q'), 0);
    }
}
