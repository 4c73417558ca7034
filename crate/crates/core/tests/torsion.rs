mod common;

use std::collections::BTreeMap;
use std::sync::OnceLock;

use common::{evaluate_cancelled, wada_by_cofactors};
use knot_torsion::cli::{default_data_dir, load_knot_data};
use knot_torsion::exactalg::{NfElem, NfMatrix, NumberField};
use knot_torsion::freegroup::{abelianization, tietze_perturb_traced, Presentation};
use knot_torsion::replift::{check_representation, LiftSign, Representation};
use knot_torsion::repsolve::{solve, SolveOptions, SolveSpec};
use knot_torsion::tables::{figure_eight, Knot};
use knot_torsion::torsioncore::{
    cohomology_dims, torsion_at, torsion_report, twisted_alexander, twisted_alexander_with,
};
use knot_torsion::Error;

fn shipped(knot: Knot) -> &'static (Presentation, Representation) {
    static KT: OnceLock<(Presentation, Representation)> = OnceLock::new();
    static C: OnceLock<(Presentation, Representation)> = OnceLock::new();
    let cell = match knot {
        Knot::KinoshitaTerasaka => &KT,
        Knot::Conway => &C,
    };
    cell.get_or_init(|| load_knot_data(&default_data_dir(), knot).unwrap())
}

fn fig8() -> &'static (Presentation, Representation) {
    static F: OnceLock<(Presentation, Representation)> = OnceLock::new();
    F.get_or_init(|| {
        let p = figure_eight();
        let out = solve(&SolveSpec::default_policy(&p).unwrap(), &SolveOptions::default()).unwrap();
        (p, out.branches[0].representation.clone())
    })
}

fn value(p: &Presentation, r: &Representation, dim: usize, column: char, t0: i64) -> NfElem {
    torsion_at(&twisted_alexander(p, r, dim, column).unwrap(), t0).unwrap()
}

fn alpha_map(p: &Presentation) -> BTreeMap<char, i64> {
    let a = abelianization(p).unwrap();
    p.generators().iter().map(|&g| (g, a.get(g))).collect()
}

#[test]
fn column_choice_does_not_matter() {
    let (p, r) = shipped(Knot::Conway);
    for dim in [2, 4] {
        for t0 in [1, -1] {
            let va = value(p, r, dim, 'a', t0);
            assert_eq!(value(p, r, dim, 'b', t0), va);
            assert_eq!(value(p, r, dim, 'c', t0), va);
        }
    }
    let (p, r) = shipped(Knot::KinoshitaTerasaka);
    let f = twisted_alexander(p, r, 2, 'a');
    assert!(matches!(f, Err(Error::DegenerateDenominator('a'))));
    let fc = twisted_alexander(p, r, 2, 'c');
    assert!(matches!(fc, Err(Error::DegenerateDenominator('c'))));
}

#[test]
fn agrees_with_cofactor_oracle() {
    let mut cases: Vec<(&Presentation, &Representation, usize, char)> = Vec::new();
    let (p, r) = fig8();
    cases.push((p, r, 2, 'a'));
    cases.push((p, r, 4, 'b'));
    let (p, r) = shipped(Knot::Conway);
    cases.push((p, r, 2, 'a'));
    cases.push((p, r, 2, 'c'));
    let (p, r) = shipped(Knot::KinoshitaTerasaka);
    cases.push((p, r, 2, 'b'));
    for (p, r, dim, column) in cases {
        let (num, den, shift) = wada_by_cofactors(p, r, &alpha_map(p), dim, column);
        for t0 in [1, -1] {
            let oracle = evaluate_cancelled(&num, &den, shift, t0).expect("finite value");
            assert_eq!(value(p, r, dim, column, t0), oracle, "dim {dim} column {column} t {t0}");
        }
    }
}

#[test]
fn tietze_moves_preserve_torsion() {
    for knot in Knot::ALL {
        let (p, r) = shipped(knot);
        let base: Vec<NfElem> = [1, -1]
            .iter()
            .map(|&t0| value(p, r, 2, 'b', t0))
            .collect();
        for seed in 0..20u64 {
            let (q, defs) = tietze_perturb_traced(p, seed, 6);
            let extra: BTreeMap<char, NfMatrix> = defs
                .iter()
                .map(|(z, w)| (*z, r.word_image(w).unwrap()))
                .collect();
            let rq = r.rebind(&q, extra).unwrap();
            assert!(check_representation(&q, &rq).unwrap().passed());
            for (t0, expected) in [1, -1].iter().zip(&base) {
                let got = torsion_report(&q, &rq, 2, if *t0 == 1 { LiftSign::Plus } else { LiftSign::Minus }, None)
                    .unwrap()
                    .value;
                assert_eq!(&got, expected, "{knot} seed {seed} t {t0}");
            }
        }
    }
}

#[test]
fn minus_lift_is_the_sign_twisted_plus_lift() {
    for knot in Knot::ALL {
        let (p, r) = shipped(knot);
        let alpha = abelianization(p).unwrap();
        let twisted = r.epsilon_twist(&alpha);
        let m = knot.meridian();
        assert_eq!(twisted.trace_of(&m).unwrap(), twisted.field().from_int(-2));
        for dim in [2, 4] {
            let f = twisted_alexander_with(p, r, &alpha, dim, 'b').unwrap();
            let g = twisted_alexander_with(p, &twisted, &alpha, dim, 'b').unwrap();
            assert_eq!(torsion_at(&f, -1).unwrap(), torsion_at(&g, 1).unwrap());
            assert_eq!(torsion_at(&f, 1).unwrap(), torsion_at(&g, -1).unwrap());
            let rep = torsion_report(p, r, dim, LiftSign::Minus, Some('b')).unwrap();
            assert!(rep.cross_checked);
        }
    }
}

#[test]
fn mutants_agree_at_low_dimension() {
    let (pk, rk) = shipped(Knot::KinoshitaTerasaka);
    let (pc, rc) = shipped(Knot::Conway);
    for t0 in [1, -1] {
        assert_eq!(value(pk, rk, 2, 'b', t0), value(pc, rc, 2, 'b', t0));
    }
    assert_eq!(value(pk, rk, 4, 'b', 1), value(pc, rc, 4, 'b', 1));
    assert_ne!(value(pk, rk, 4, 'b', -1), value(pc, rc, 4, 'b', -1));
}

#[test]
fn euler_characteristic_and_acyclicity() {
    for knot in Knot::ALL {
        let (p, r) = shipped(knot);
        let h = cohomology_dims(p, r, 2).unwrap();
        assert_eq!((h.h0, h.h1, h.h2), (0, 0, 0));
        let h3 = cohomology_dims(p, r, 3).unwrap();
        assert_eq!(h3.h0 + h3.h2, h3.h1);
    }
    let (p, r) = fig8();
    for dim in 2..=4 {
        let h = cohomology_dims(p, r, dim).unwrap();
        assert_eq!(h.h0 + h.h2, h.h1, "dim {dim}");
    }
    let free = Presentation::from_strs("abc", &[]).unwrap();
    let k = NumberField::from_descending_ints(&[1, 0, 1]).unwrap();
    let h = cohomology_dims(&free, &Representation::trivial(&free, &k), 2).unwrap();
    assert_eq!((h.h0, h.h1, h.h2), (2, 6, 0));
}

#[test]
fn figure_eight_values() {
    let (p, r) = fig8();
    let f = twisted_alexander(p, r, 2, 'a').unwrap();
    let k = r.field();
    assert_eq!(f.denominator.order_at(&k.one()).unwrap(), 2);
    assert!(f.numerator.order_at(&k.one()).unwrap() >= 2);
    assert_eq!(torsion_at(&f, 1).unwrap(), k.from_int(-2));
    assert_eq!(torsion_at(&f, -1).unwrap(), k.from_int(6));
    assert_eq!(value(p, r, 4, 'a', 1), k.from_int(4));
    assert_eq!(value(p, r, 4, 'a', -1), k.from_int(36));
}

#[test]
fn unknot_has_a_pole() {
    let p = Presentation::from_strs("a", &[]).unwrap();
    let k = NumberField::from_descending_ints(&[1, 0, 1]).unwrap();
    let r = Representation::trivial(&p, &k);
    let f = twisted_alexander(&p, &r, 2, 'a').unwrap();
    assert_eq!(f.numerator.degree(), Some(0));
    assert_eq!(f.denominator.order_at(&k.one()).unwrap(), 2);
    assert_eq!(torsion_at(&f, 1).unwrap_err(), Error::Pole);
    // 1 / (t - 1)^2 at t = -1
    assert_eq!(torsion_at(&f, -1).unwrap(), k.from_int(1).checked_div(&k.from_int(4)).unwrap());
}
