//! Fox free differential calculus.

use std::fmt;

use crate::freegroup::{GroupRingElement, Presentation, Word};

/// `d w / d g` in the integral group ring, by one left-to-right sweep.
///
/// A letter `g` at position `k` contributes `+prefix`, a letter `G`
/// contributes `-(prefix G)`.
pub fn fox_derivative(w: &Word, g: char) -> GroupRingElement {
    let mut out = GroupRingElement::zero();
    for (k, l) in w.letters().iter().enumerate() {
        if l.gen != g {
            continue;
        }
        if l.exp > 0 {
            out.add_term(1, &w.prefix(k));
        } else {
            out.add_term(-1, &w.prefix(k + 1));
        }
    }
    out
}

/// Matrix of Fox derivatives, rows indexed by relators, columns by generators.
#[derive(Clone, Debug)]
pub struct FoxJacobian {
    presentation: Presentation,
    entries: Vec<Vec<GroupRingElement>>,
}

impl FoxJacobian {
    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.presentation.generators().len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &GroupRingElement {
        &self.entries[i][j]
    }

    pub fn row(&self, i: usize) -> &[GroupRingElement] {
        &self.entries[i]
    }
}

impl fmt::Display for FoxJacobian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens = self.presentation.generators();
        for (i, r) in self.presentation.relators().iter().enumerate() {
            for (j, g) in gens.iter().enumerate() {
                writeln!(f, "d({})/d{}\t{}", r.render(), g, self.entries[i][j])?;
            }
        }
        Ok(())
    }
}

pub fn fox_jacobian(p: &Presentation) -> FoxJacobian {
    let entries = p
        .relators()
        .iter()
        .map(|r| {
            p.generators()
                .iter()
                .map(|&g| fox_derivative(r, g))
                .collect()
        })
        .collect();
    FoxJacobian {
        presentation: p.clone(),
        entries,
    }
}

/// `sum_j (dw/dx_j)(x_j - 1) - (w - 1)`; zero for every word.
pub fn fundamental_identity_defect(w: &Word, gens: &[char]) -> GroupRingElement {
    let one = GroupRingElement::one();
    let mut lhs = GroupRingElement::zero();
    for &g in gens {
        let x = &GroupRingElement::from_word(&Word::gen(g)) - &one;
        lhs = &lhs + &(&fox_derivative(w, g) * &x);
    }
    let rhs = &GroupRingElement::from_word(w) - &one;
    &lhs - &rhs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn axioms() {
        assert_eq!(fox_derivative(&w("ab"), 'a'), GroupRingElement::one());
        assert_eq!(
            fox_derivative(&w("ab"), 'b'),
            GroupRingElement::from_word(&w("a"))
        );
        assert_eq!(
            fox_derivative(&w("A"), 'a'),
            GroupRingElement::term(-1, &w("A"))
        );
        assert!(fox_derivative(&w("b"), 'a').is_zero());
    }

    #[test]
    fn commutator_jacobian() {
        let p = Presentation::from_strs("ab", &["abAB"]).unwrap();
        let j = fox_jacobian(&p);
        assert_eq!(j.entry(0, 0).to_string(), "1 - abA");
        assert_eq!(j.entry(0, 1).to_string(), "a - abAB");
        let empty = fox_jacobian(&Presentation::from_strs("a", &[]).unwrap());
        assert_eq!((empty.rows(), empty.cols()), (0, 1));
    }

    #[test]
    fn identity_on_unreduced_word() {
        assert!(fundamental_identity_defect(&w("aAbBBcaCb"), &['a', 'b', 'c']).is_zero());
    }
}
