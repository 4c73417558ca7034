mod common;

use common::{fox_by_positions, random_word, ring_add, ring_mul, ring_word, RingElem};
use knot_torsion::foxcalc::{fox_derivative, fox_jacobian, fundamental_identity_defect};
use knot_torsion::freegroup::{GroupRingElement, Presentation, Word};
use knot_torsion::tables::Knot;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn as_ring(e: &GroupRingElement) -> RingElem {
    e.terms().map(|(w, c)| (w.render(), c)).collect()
}

/// `sum_j (dw/dx_j)(x_j - 1)` computed with the oracle ring.
fn oracle_identity_lhs(w: &Word, gens: &[char]) -> RingElem {
    let mut acc = RingElem::new();
    for &g in gens {
        let mut xm1 = ring_word(&Word::gen(g));
        *xm1.entry(String::new()).or_insert(0) -= 1;
        acc = ring_add(&acc, &ring_mul(&fox_by_positions(w, g), &xm1));
    }
    acc
}

fn w_minus_one(w: &Word) -> RingElem {
    let mut e = ring_word(w);
    let v = e.entry(String::new()).or_insert(0);
    *v -= 1;
    e.retain(|_, c| *c != 0);
    e
}

#[test]
fn fundamental_identity_on_200_random_words() {
    let mut rng = ChaCha8Rng::seed_from_u64(200);
    let gens = ['a', 'b', 'c'];
    for _ in 0..200 {
        let w = random_word(&mut rng, &gens, 40);
        assert!(fundamental_identity_defect(&w, &gens).is_zero(), "{w}");
        assert_eq!(oracle_identity_lhs(&w, &gens), w_minus_one(&w));
        for g in gens {
            assert_eq!(as_ring(&fox_derivative(&w, g)), fox_by_positions(&w, g), "{w} d{g}");
        }
    }
}

#[test]
fn fundamental_identity_on_knot_presentations() {
    for knot in Knot::ALL {
        let p = knot.presentation();
        let jac = fox_jacobian(&p);
        assert_eq!((jac.rows(), jac.cols()), (2, 3));
        for (i, r) in p.relators().iter().enumerate() {
            assert!(fundamental_identity_defect(r, p.generators()).is_zero());
            for (j, &g) in p.generators().iter().enumerate() {
                assert_eq!(as_ring(jac.entry(i, j)), fox_by_positions(r, g));
            }
        }
    }
}

proptest! {
    #![proptest_config(Config { cases: 128, rng_seed: RngSeed::Fixed(0x666f78), ..Config::default() })]

    #[test]
    fn product_rule_on_random_splits(s in "[abAB]{0,30}", k in 0usize..31) {
        let w = Word::parse(&s).unwrap();
        let k = k.min(w.len());
        let u = Word::from_letters(w.letters()[..k].to_vec());
        let v = Word::from_letters(w.letters()[k..].to_vec());
        for g in ['a', 'b'] {
            let lhs = fox_derivative(&w, g);
            let rhs = &fox_derivative(&u, g)
                + &(&GroupRingElement::from_word(&u) * &fox_derivative(&v, g));
            prop_assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn axioms_and_small_jacobians() {
    let ab = Word::parse("ab").unwrap();
    assert_eq!(fox_derivative(&ab, 'a'), GroupRingElement::one());
    assert_eq!(fox_derivative(&ab, 'b').to_string(), "a");
    assert_eq!(fox_derivative(&Word::parse("A").unwrap(), 'a').to_string(), "-A");

    let unknot = Presentation::from_strs("a", &[]).unwrap();
    let j = fox_jacobian(&unknot);
    assert_eq!((j.rows(), j.cols()), (0, 1));

    let torus = Presentation::from_strs("ab", &["abAB"]).unwrap();
    let j = fox_jacobian(&torus);
    assert_eq!(j.entry(0, 0).to_string(), "1 - abA");
    assert_eq!(j.entry(0, 1).to_string(), "a - abAB");
}
