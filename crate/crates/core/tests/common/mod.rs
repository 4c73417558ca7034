//! Test-only oracles. Nothing here calls into `foxcalc`, `torsioncore`
//! or `repsolve`.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Sub};

use knot_torsion::exactalg::{rat, NfElem, NfMatrix, NfPoly, NumberField, RatPoly, Rational};
use knot_torsion::freegroup::{Letter, Presentation, Word};
use knot_torsion::replift::{sym_power, Representation};
use num_bigint::BigInt;
use num_integer::Integer;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Laplace expansion along the first row.
pub fn cofactor_det<T>(m: &[Vec<T>], zero: &T, one: &T) -> T
where
    T: Clone,
    for<'a> &'a T: Add<&'a T, Output = T> + Sub<&'a T, Output = T> + Mul<&'a T, Output = T>,
{
    let n = m.len();
    if n == 0 {
        return one.clone();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = zero.clone();
    for j in 0..n {
        let minor: Vec<Vec<T>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * &cofactor_det(&minor, zero, one);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// Abelianization by search: the unique primitive integer vector (up to
/// sign) with zero weight on every relator, first nonzero entry positive.
pub fn alpha_by_search(p: &Presentation, bound: i64) -> Option<Vec<i64>> {
    let gens = p.generators();
    let n = gens.len();
    let rows: Vec<Vec<i64>> = p
        .relators()
        .iter()
        .map(|r| gens.iter().map(|&g| r.exponent_sum(g)).collect())
        .collect();
    let mut found = Vec::new();
    let mut v = vec![-bound; n];
    loop {
        let nonzero = v.iter().find(|&&x| x != 0);
        let g = v.iter().fold(0i64, |a, &b| a.gcd(&b));
        if nonzero.is_some_and(|&x| x > 0)
            && g == 1
            && rows
                .iter()
                .all(|r| r.iter().zip(&v).map(|(a, b)| a * b).sum::<i64>() == 0)
        {
            found.push(v.clone());
        }
        let mut k = 0;
        loop {
            if k == n {
                return (found.len() == 1).then(|| found.pop().unwrap());
            }
            v[k] += 1;
            if v[k] <= bound {
                break;
            }
            v[k] = -bound;
            k += 1;
        }
    }
}

/// Group-ring element as reduced word text to coefficient.
pub type RingElem = BTreeMap<String, i64>;

fn add_term(e: &mut RingElem, w: &Word, c: i64) {
    let key = w.free_reduce().render();
    let v = e.entry(key.clone()).or_insert(0);
    *v += c;
    if *v == 0 {
        e.remove(&key);
    }
}

/// Fox derivative from the positional formula.
pub fn fox_by_positions(w: &Word, g: char) -> RingElem {
    let mut e = RingElem::new();
    let letters = w.letters();
    for (i, l) in letters.iter().enumerate() {
        if l.gen != g {
            continue;
        }
        if l.exp > 0 {
            add_term(&mut e, &Word::from_letters(letters[..i].to_vec()), 1);
        } else {
            add_term(&mut e, &Word::from_letters(letters[..=i].to_vec()), -1);
        }
    }
    e
}

pub fn ring_mul(a: &RingElem, b: &RingElem) -> RingElem {
    let mut e = RingElem::new();
    for (u, c) in a {
        for (v, d) in b {
            let w = Word::parse(u).unwrap().concat(&Word::parse(v).unwrap());
            add_term(&mut e, &w, c * d);
        }
    }
    e
}

pub fn ring_add(a: &RingElem, b: &RingElem) -> RingElem {
    let mut e = a.clone();
    for (v, d) in b {
        add_term(&mut e, &Word::parse(v).unwrap(), *d);
    }
    e
}

pub fn ring_word(w: &Word) -> RingElem {
    let mut e = RingElem::new();
    add_term(&mut e, w, 1);
    e
}

pub fn random_word(rng: &mut ChaCha8Rng, gens: &[char], max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::from_letters(
        (0..len)
            .map(|_| {
                let g = gens[rng.gen_range(0..gens.len())];
                Letter::new(g, if rng.gen_bool(0.5) { 1 } else { -1 })
            })
            .collect(),
    )
}

pub fn random_elem(rng: &mut ChaCha8Rng, k: &NumberField, range: i64) -> NfElem {
    let coords: Vec<Rational> = (0..k.degree())
        .map(|_| {
            let n = rng.gen_range(-range..=range);
            let d = rng.gen_range(1..=3);
            Rational::new(BigInt::from(n), BigInt::from(d))
        })
        .collect();
    k.from_coords(&coords).unwrap()
}

pub fn random_nonzero(rng: &mut ChaCha8Rng, k: &NumberField, range: i64) -> NfElem {
    loop {
        let x = random_elem(rng, k, range);
        if !x.is_zero() {
            return x;
        }
    }
}

/// `[[a, b], [c, (1 + bc)/a]]`.
pub fn random_sl2(rng: &mut ChaCha8Rng, k: &NumberField) -> NfMatrix {
    let a = random_nonzero(rng, k, 4);
    let b = random_elem(rng, k, 4);
    let c = random_elem(rng, k, 4);
    let d = (&k.one() + &(&b * &c)).checked_div(&a).unwrap();
    NfMatrix::from_rows(vec![vec![a, b], vec![c, d]]).unwrap()
}

pub fn quadratic_field() -> NumberField {
    NumberField::from_descending_ints(&[1, 0, 5]).unwrap()
}

pub fn to_rows<T: Clone>(m: &knot_torsion::exactalg::Matrix<T>) -> Vec<Vec<T>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

/// Wada numerator and denominator assembled from the positional Fox
/// formula and expanded by cofactors. Returned as `(num, den, shift)` with
/// the value `t^shift num / den`.
pub fn wada_by_cofactors(
    p: &Presentation,
    r: &Representation,
    alpha: &BTreeMap<char, i64>,
    dim: usize,
    column: char,
) -> (NfPoly, NfPoly, i64) {
    let k = r.field().clone();
    let gens: Vec<char> = p.generators().iter().copied().filter(|&g| g != column).collect();
    // shift every entry by t^lift so no exponent is negative
    let mut lift = 0i64;
    let mut blocks: Vec<Vec<Vec<Vec<NfPoly>>>> = Vec::new();
    let mut raw = Vec::new();
    for rel in p.relators() {
        let mut row = Vec::new();
        for &g in &gens {
            let d = fox_by_positions(rel, g);
            for w in d.keys() {
                let a: i64 = Word::parse(w)
                    .unwrap()
                    .letters()
                    .iter()
                    .map(|l| alpha[&l.gen] * l.exp as i64)
                    .sum();
                lift = lift.max(-a);
            }
            row.push(d);
        }
        raw.push(row);
    }
    for row in &raw {
        let mut brow = Vec::new();
        for d in row {
            let mut block = vec![vec![NfPoly::zero(&k); dim]; dim];
            for (w, c) in d {
                let word = Word::parse(w).unwrap();
                let a: i64 = word.letters().iter().map(|l| alpha[&l.gen] * l.exp as i64).sum();
                let m = sym_power(&r.word_image(&word).unwrap(), dim).unwrap();
                for (i, brow_i) in block.iter_mut().enumerate() {
                    for (j, e) in brow_i.iter_mut().enumerate() {
                        let coef = &m.get(i, j).clone() * &k.from_int(*c);
                        let term = NfPoly::monomial(coef, (a + lift) as usize);
                        *e = &*e + &term;
                    }
                }
            }
            brow.push(block);
        }
        blocks.push(brow);
    }
    let n = gens.len() * dim;
    let mut big = vec![vec![NfPoly::zero(&k); n]; n];
    for (bi, brow) in blocks.iter().enumerate() {
        for (bj, block) in brow.iter().enumerate() {
            for i in 0..dim {
                for j in 0..dim {
                    big[bi * dim + i][bj * dim + j] = block[i][j].clone();
                }
            }
        }
    }
    let zero = NfPoly::zero(&k);
    let one = NfPoly::one(&k);
    let num = cofactor_det(&big, &zero, &one);
    let aj = alpha[&column];
    let mj = sym_power(r.image(column).unwrap(), dim).unwrap();
    let (tpow, shift_den) = if aj >= 0 { (aj as usize, 0) } else { (0, -aj) };
    let den_m: Vec<Vec<NfPoly>> = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| {
                    let mut e = NfPoly::monomial(mj.get(i, j).clone(), tpow);
                    if i == j {
                        e = &e - &NfPoly::monomial(k.one(), shift_den as usize);
                    }
                    e
                })
                .collect()
        })
        .collect();
    let den = cofactor_det(&den_m, &zero, &one);
    let shift = -lift * n as i64 + shift_den * dim as i64;
    (num, den, shift)
}

/// Synthetic division by `(t - t0)` as long as both vanish, then evaluate.
pub fn evaluate_cancelled(num: &NfPoly, den: &NfPoly, shift: i64, t0: i64) -> Option<NfElem> {
    let k = num.field().clone();
    let x = k.from_int(t0);
    let mut a: Vec<NfElem> = num.coeffs().to_vec();
    let mut b: Vec<NfElem> = den.coeffs().to_vec();
    let horner = |c: &[NfElem]| c.iter().rev().fold(k.zero(), |acc, e| &(&acc * &x) + e);
    let deflate = |c: &[NfElem]| -> Vec<NfElem> {
        let n = c.len();
        let mut q = vec![k.zero(); n - 1];
        let mut carry = k.zero();
        for i in (1..n).rev() {
            carry = &c[i] + &(&carry * &x);
            q[i - 1] = carry.clone();
        }
        q
    };
    while !a.is_empty() && !b.is_empty() && horner(&a).is_zero() && horner(&b).is_zero() {
        a = deflate(&a);
        b = deflate(&b);
    }
    let d = horner(&b);
    if d.is_zero() {
        return None;
    }
    let v = horner(&a).checked_div(&d).ok()?;
    Some(&v * &x.powi(shift).ok()?)
}

/// Characteristic polynomial of multiplication by `x`, by the
/// Faddeev-LeVerrier recursion over the rationals.
pub fn charpoly(x: &NfElem) -> RatPoly {
    let m = x.mult_matrix();
    let n = m.len();
    let mul = |a: &Vec<Vec<Rational>>, b: &Vec<Vec<Rational>>| -> Vec<Vec<Rational>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).fold(rat(0), |s, k| s + &a[i][k] * &b[k][j]))
                    .collect()
            })
            .collect()
    };
    let mut coeffs = vec![rat(0); n + 1];
    coeffs[n] = rat(1);
    let mut mk: Vec<Vec<Rational>> = vec![vec![rat(0); n]; n];
    for k in 1..=n {
        let mut next = mul(&m, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        mk = next;
        let am = mul(&m, &mk);
        let tr = (0..n).fold(rat(0), |s, i| s + &am[i][i]);
        coeffs[n - k] = -tr / rat(k as i64);
    }
    RatPoly::new(coeffs)
}
