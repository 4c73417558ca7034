use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Letter, Presentation, Word};

/// Replaces relator `i` by `g r G` written out literally.
pub fn conjugate_relator(p: &Presentation, i: usize, g: Letter) -> Presentation {
    let mut rels = p.relators().to_vec();
    let gw = Word::from_letters(vec![g]);
    rels[i] = gw.concat(&rels[i]).concat(&gw.inverse_literal());
    rebuild(p.generators().to_vec(), rels)
}

pub fn invert_relator(p: &Presentation, i: usize) -> Presentation {
    let mut rels = p.relators().to_vec();
    rels[i] = rels[i].inverse_literal();
    rebuild(p.generators().to_vec(), rels)
}

/// Replaces relator `i` by `r_i r_j` (freely reduced), `i != j`.
pub fn multiply_relators(p: &Presentation, i: usize, j: usize) -> Presentation {
    let mut rels = p.relators().to_vec();
    rels[i] = rels[i].multiply(&rels[j]);
    rebuild(p.generators().to_vec(), rels)
}

/// Adds a generator `z` with the relator `z W^-1`.
pub fn add_generator(p: &Presentation, z: char, w: &Word) -> Presentation {
    let mut gens = p.generators().to_vec();
    gens.push(z);
    let mut rels = p.relators().to_vec();
    rels.push(Word::gen(z).concat(&w.inverse_literal()));
    rebuild(gens, rels)
}

/// Removes a generator that occurs exactly once in some relator and
/// nowhere else, together with that relator.
pub fn remove_generator(p: &Presentation, z: char) -> Option<Presentation> {
    let rels = p.relators();
    let holders: Vec<usize> = (0..rels.len())
        .filter(|&i| rels[i].letters().iter().any(|l| l.gen == z))
        .collect();
    let [i] = holders[..] else { return None };
    if rels[i].letters().iter().filter(|l| l.gen == z).count() != 1 {
        return None;
    }
    let gens: Vec<char> = p.generators().iter().copied().filter(|&g| g != z).collect();
    if gens.is_empty() {
        return None;
    }
    let mut out = rels.to_vec();
    out.remove(i);
    Some(rebuild(gens, out))
}

fn rebuild(gens: Vec<char>, rels: Vec<Word>) -> Presentation {
    Presentation::new(gens, rels).expect("Tietze moves keep letters declared")
}

fn random_word(rng: &mut ChaCha8Rng, gens: &[char], len: usize) -> Word {
    let letters = (0..len)
        .map(|_| {
            let g = gens[rng.gen_range(0..gens.len())];
            Letter::new(g, if rng.gen_bool(0.5) { 1 } else { -1 })
        })
        .collect();
    Word::from_letters(letters).free_reduce()
}

/// Applies `steps` random Tietze moves chosen by a seeded generator.
///
/// Added generators are later eligible for removal, so the number of
/// generators does not grow without bound. Deficiency is preserved.
pub fn tietze_perturb(p: &Presentation, seed: u64, steps: usize) -> Presentation {
    tietze_perturb_traced(p, seed, steps).0
}

/// As [`tietze_perturb`], also returning each surviving added generator
/// as a word in the original generators.
pub fn tietze_perturb_traced(
    p: &Presentation,
    seed: u64,
    steps: usize,
) -> (Presentation, Vec<(char, Word)>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = p.clone();
    let mut added: Vec<(char, Word)> = Vec::new();
    for _ in 0..steps {
        let nrel = cur.relators().len();
        let gens = cur.generators().to_vec();
        let choice = rng.gen_range(0..5);
        cur = match choice {
            0 if nrel > 0 => {
                let i = rng.gen_range(0..nrel);
                let g = gens[rng.gen_range(0..gens.len())];
                let e = if rng.gen_bool(0.5) { 1 } else { -1 };
                conjugate_relator(&cur, i, Letter::new(g, e))
            }
            1 if nrel > 0 => invert_relator(&cur, rng.gen_range(0..nrel)),
            2 if nrel > 1 => {
                let i = rng.gen_range(0..nrel);
                let mut j = rng.gen_range(0..nrel - 1);
                if j >= i {
                    j += 1;
                }
                multiply_relators(&cur, i, j)
            }
            3 => match ('a'..='z').find(|c| !gens.contains(c)) {
                Some(z) => {
                    let len = rng.gen_range(1..=3);
                    let w = random_word(&mut rng, &gens, len);
                    added.push((z, expand(&w, &added)));
                    add_generator(&cur, z, &w)
                }
                None => cur,
            },
            4 => {
                let removable = added
                    .iter()
                    .position(|(z, _)| remove_generator(&cur, *z).is_some());
                match removable {
                    Some(k) => {
                        let (z, _) = added.remove(k);
                        remove_generator(&cur, z).expect("checked above")
                    }
                    None => cur,
                }
            }
            _ => cur,
        };
    }
    (cur, added)
}

fn expand(w: &Word, defs: &[(char, Word)]) -> Word {
    let mut out = Word::identity();
    for l in w.letters() {
        let piece = match defs.iter().find(|(z, _)| *z == l.gen) {
            Some((_, d)) if l.exp > 0 => d.clone(),
            Some((_, d)) => d.invert(),
            None => Word::from_letters(vec![*l]),
        };
        out = out.concat(&piece);
    }
    out.free_reduce()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freegroup::abelianization;

    fn kt() -> Presentation {
        Presentation::from_strs("abc", &["aBCbABBCbaBcbbcABcbbaB", "abcACaB"]).unwrap()
    }

    #[test]
    fn zero_steps_is_identity() {
        assert_eq!(tietze_perturb(&kt(), 3, 0), kt());
    }

    #[test]
    fn conjugation_is_literal() {
        let p = conjugate_relator(&kt(), 1, Letter::new('a', 1));
        assert_eq!(p.relators()[1].render(), "aabcACaBA");
    }

    #[test]
    fn traced_definitions_use_original_generators() {
        for seed in 0..30 {
            let (q, defs) = tietze_perturb_traced(&kt(), seed, 12);
            for (z, w) in &defs {
                assert!(q.generators().contains(z));
                assert!(w.letters().iter().all(|l| "abc".contains(l.gen)));
            }
            assert_eq!(q.generators().len(), 3 + defs.len());
        }
    }

    #[test]
    fn perturbation_keeps_deficiency() {
        for seed in 0..20 {
            let q = tietze_perturb(&kt(), seed, 8);
            assert_eq!(q.deficiency(), 1);
            assert!(abelianization(&q).is_ok());
        }
    }
}
