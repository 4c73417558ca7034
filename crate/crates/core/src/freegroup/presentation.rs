use std::fmt;
use std::path::Path;

use super::Word;
use crate::error::{Error, Result};

/// Finite presentation with single-letter generator names.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Presentation {
    generators: Vec<char>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generators: Vec<char>, relators: Vec<Word>) -> Result<Self> {
        for (i, &g) in generators.iter().enumerate() {
            if !g.is_ascii_lowercase() {
                return Err(Error::FileFormat {
                    line: 0,
                    msg: format!("generator name {g:?} is not a lowercase letter"),
                });
            }
            if generators[..i].contains(&g) {
                return Err(Error::FileFormat {
                    line: 0,
                    msg: format!("generator {g} declared twice"),
                });
            }
        }
        for r in &relators {
            for l in r.letters() {
                if !generators.contains(&l.gen) {
                    return Err(Error::UndeclaredGenerator(l.gen));
                }
            }
        }
        Ok(Presentation {
            generators,
            relators,
        })
    }

    /// Builds from a generator string such as `"abc"` and relator texts.
    pub fn from_strs(gens: &str, rels: &[&str]) -> Result<Self> {
        let relators = rels
            .iter()
            .map(|r| Word::parse(r))
            .collect::<Result<Vec<_>>>()?;
        Self::new(gens.chars().collect(), relators)
    }

    pub fn generators(&self) -> &[char] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_index(&self, g: char) -> Option<usize> {
        self.generators.iter().position(|&h| h == g)
    }

    /// `#generators - #relators`.
    pub fn deficiency(&self) -> i64 {
        self.generators.len() as i64 - self.relators.len() as i64
    }

    pub fn check_deficiency_one(&self) -> Result<()> {
        match self.deficiency() {
            1 => Ok(()),
            d => Err(Error::Deficiency(d)),
        }
    }

    /// Checks that every letter of `w` names a declared generator.
    pub fn check_word(&self, w: &Word) -> Result<()> {
        for l in w.letters() {
            if !self.generators.contains(&l.gen) {
                return Err(Error::UndeclaredGenerator(l.gen));
            }
        }
        Ok(())
    }

    /// Relator exponent-sum matrix, one row per relator.
    pub fn exponent_matrix(&self) -> Vec<Vec<i64>> {
        self.relators
            .iter()
            .map(|r| self.generators.iter().map(|&g| r.exponent_sum(g)).collect())
            .collect()
    }

    /// Parses the text format:
    ///
    /// ```text
    /// gens: a b c
    /// rel: abcACaB
    /// ```
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut gens: Option<Vec<char>> = None;
        let mut rels = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |msg: String| Error::FileFormat { line: line_no, msg };
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| bad(format!("expected `gens:` or `rel:`, found {line:?}")))?;
            match key.trim() {
                "gens" => {
                    if gens.is_some() {
                        return Err(bad("duplicate gens line".into()));
                    }
                    let mut g = Vec::new();
                    for tok in value.split_whitespace() {
                        let mut cs = tok.chars();
                        match (cs.next(), cs.next()) {
                            (Some(c), None) if c.is_ascii_lowercase() => {
                                if g.contains(&c) {
                                    return Err(bad(format!("generator {c} declared twice")));
                                }
                                g.push(c)
                            }
                            _ => {
                                return Err(bad(format!(
                                    "generator names are single lowercase letters, found {tok:?}"
                                )))
                            }
                        }
                    }
                    gens = Some(g);
                }
                "rel" => {
                    let Some(g) = gens.as_ref() else {
                        return Err(bad("rel line before gens line".into()));
                    };
                    let word = Word::parse(value.trim()).map_err(|e| bad(e.to_string()))?;
                    if let Some(l) = word.letters().iter().find(|l| !g.contains(&l.gen)) {
                        return Err(bad(format!("undeclared generator '{}'", l.gen)));
                    }
                    rels.push(word);
                }
                other => return Err(bad(format!("unknown key {other:?}"))),
            }
        }
        let gens = gens.ok_or(Error::FileFormat {
            line: 0,
            msg: "missing gens line".into(),
        })?;
        Self::new(gens, rels)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse_text(&std::fs::read_to_string(path)?)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::from("gens:");
        for g in &self.generators {
            s.push(' ');
            s.push(*g);
        }
        s.push('\n');
        for r in &self.relators {
            s.push_str("rel: ");
            s.push_str(&r.render());
            s.push('\n');
        }
        s
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: String = self.generators.iter().collect();
        let rels: Vec<String> = self.relators.iter().map(|r| r.render()).collect();
        write!(f, "<{} | {}>", gens, rels.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_round_trip() {
        let text = "# KT\ngens: a b c\n\nrel: aBCbABBCbaBcbbcABcbbaB\nrel: abcACaB  # short\n";
        let p = Presentation::parse_text(text).unwrap();
        assert_eq!(p.generators(), &['a', 'b', 'c']);
        assert_eq!(p.relators().len(), 2);
        assert_eq!(p.deficiency(), 1);
        assert_eq!(Presentation::parse_text(&p.to_text()).unwrap(), p);
    }

    #[test]
    fn malformed_lines_name_the_line() {
        let err = Presentation::parse_text("gens: a b\nrel: ab\nrel: a-b\n").unwrap_err();
        assert!(matches!(err, Error::FileFormat { line: 3, .. }), "{err:?}");
        let err = Presentation::parse_text("gens: a b\nrel: abc\n").unwrap_err();
        assert!(matches!(err, Error::FileFormat { line: 2, .. }));
        let err = Presentation::parse_text("gens: ab\n").unwrap_err();
        assert!(matches!(err, Error::FileFormat { line: 1, .. }));
    }

    #[test]
    fn undeclared_generator_rejected() {
        assert_eq!(
            Presentation::from_strs("ab", &["abC"]),
            Err(Error::UndeclaredGenerator('c'))
        );
    }
}
