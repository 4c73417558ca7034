mod common;

use std::collections::BTreeMap;

use common::{quadratic_field, random_nonzero, random_sl2};
use knot_torsion::exactalg::{NfElem, NfMatrix, NumberField};
use knot_torsion::freegroup::{abelianization, Presentation, Word};
use knot_torsion::replift::{check_representation, sl2_inverse, sym_power, RelatorStatus, Representation};
use knot_torsion::tables::Knot;
use knot_torsion::cli::{default_data_dir, load_knot_data};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn diag(k: &NumberField, l: &NfElem) -> NfMatrix {
    NfMatrix::from_rows(vec![vec![l.clone(), k.zero()], vec![k.zero(), l.inv().unwrap()]]).unwrap()
}

#[test]
fn sym_power_identities_on_100_random_matrices() {
    let k = quadratic_field();
    let mut rng = ChaCha8Rng::seed_from_u64(100);
    for i in 0..100 {
        let m = random_sl2(&mut rng, &k);
        let n = random_sl2(&mut rng, &k);
        assert_eq!(m.det(&k).unwrap(), k.one());
        let d = 2 + i % 5;
        let sm = sym_power(&m, d).unwrap();
        let sn = sym_power(&n, d).unwrap();
        let smn = sym_power(&m.matmul(&n).unwrap(), d).unwrap();
        assert_eq!(smn, sm.matmul(&sn).unwrap());
        assert_eq!(sm.det(&k).unwrap(), k.one());
        // sigma(-m) = (-1)^(d-1) sigma(m)
        let neg = sym_power(&m.scale(&k.from_int(-1)), d).unwrap();
        let sign = if d % 2 == 0 { -1 } else { 1 };
        assert_eq!(neg, sm.scale(&k.from_int(sign)));
        assert_eq!(sm.matmul(&sym_power(&sl2_inverse(&m), d).unwrap()).unwrap(), NfMatrix::identity(&k, d));

        // trace on a diagonal matrix
        let l = random_nonzero(&mut rng, &k, 4);
        let tr = sym_power(&diag(&k, &l), d).unwrap().trace().unwrap();
        let li = l.inv().unwrap();
        let expected = (0..d).fold(k.zero(), |s, j| &s + &(&l.pow((d - 1 - j) as u64) * &li.pow(j as u64)));
        assert_eq!(tr, expected);
    }
}

#[test]
fn sym_power_examples() {
    let k = quadratic_field();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let m = random_sl2(&mut rng, &k);
    assert_eq!(sym_power(&m, 2).unwrap(), m);
    assert!(sym_power(&m, 0).is_err());
    let l = k.gen();
    let d4 = sym_power(&diag(&k, &l), 4).unwrap();
    let li = l.inv().unwrap();
    for (i, e) in [l.pow(3), l.clone(), li.clone(), li.pow(3)].iter().enumerate() {
        assert_eq!(d4.get(i, i), e);
    }
    // unipotent: binomial coefficients in the first row
    let u = NfMatrix::from_rows(vec![vec![k.one(), k.one()], vec![k.zero(), k.one()]]).unwrap();
    let su = sym_power(&u, 4).unwrap();
    for i in 0..4 {
        for j in 0..i {
            assert!(su.get(i, j).is_zero());
        }
    }
    let row: Vec<NfElem> = (0..4).map(|j| su.get(0, j).clone()).collect();
    assert_eq!(row, [1, 1, 1, 1].map(|c| k.from_int(c)).to_vec());
    let col: Vec<NfElem> = (0..4).map(|i| su.get(i, 3).clone()).collect();
    assert_eq!(col, [1, 3, 3, 1].map(|c| k.from_int(c)).to_vec());
}

#[test]
fn epsilon_twist_on_shipped_representations() {
    for knot in Knot::ALL {
        let (p, r) = load_knot_data(&default_data_dir(), knot).unwrap();
        let alpha = abelianization(&p).unwrap();
        let m = knot.meridian();
        assert_eq!(r.trace_of(&m).unwrap(), r.field().from_int(2));
        let tw = r.epsilon_twist(&alpha);
        assert!(check_representation(&p, &tw).unwrap().passed());
        assert_eq!(tw.trace_of(&m).unwrap(), r.field().from_int(-2));
        assert_eq!(tw.epsilon_twist(&alpha).images(), r.images());
        for rel in p.relators() {
            assert_eq!(tw.word_image(rel).unwrap(), r.word_image(rel).unwrap());
        }
        for (g, img) in tw.images() {
            let sign = if alpha.get(*g) % 2 == 0 { 1 } else { -1 };
            assert_eq!(img, &r.image(*g).unwrap().scale(&r.field().from_int(sign)));
        }
        // traces of a word and its inverse agree
        let w = Word::parse("abCab").unwrap();
        assert_eq!(r.trace_of(&w).unwrap(), r.trace_of(&w.invert()).unwrap());
    }
}

#[test]
fn psl_only_relator_is_flagged() {
    // a = [[0,1],[-1,0]] squares to -I
    let k = NumberField::rationals();
    let p = Presentation::from_strs("a", &["aa"]).unwrap();
    let rot = NfMatrix::from_rows(vec![vec![k.zero(), k.one()], vec![k.from_int(-1), k.zero()]]).unwrap();
    let r = Representation::new(&p, &k, BTreeMap::from([('a', rot)]), None).unwrap();
    let check = check_representation(&p, &r).unwrap();
    assert!(!check.passed());
    assert!(check.psl_only());
    assert_eq!(check.relators[0].1, RelatorStatus::MinusIdentity);

    let trivial = Representation::trivial(&Knot::Conway.presentation(), &k);
    assert!(check_representation(&Knot::Conway.presentation(), &trivial).unwrap().passed());
    assert_eq!(trivial.word_image(&Word::identity()).unwrap(), NfMatrix::identity(&k, 2));
}

#[test]
fn representation_file_round_trip() {
    let (p, r) = load_knot_data(&default_data_dir(), Knot::KinoshitaTerasaka).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("kt.rep");
    r.write(&path).unwrap();
    let back = Representation::read(&path, &p).unwrap();
    assert_eq!(back.images(), r.images());
    assert_eq!(back.meridian(), r.meridian());
    assert!(Representation::parse_text("field: 1 0 1\ngen a: 1 0 0\n", &p).is_err());
}
