//! Buchberger's algorithm over `F_p` in degree reverse lexicographic
//! order, with the Gebauer–Möller pair criteria and the sugar selection
//! strategy.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

use super::modp::{addm, invm, mulm, reduce_bigint, subm};
use super::mpoly::IntPoly;
use crate::error::{Error, Result};

pub const MAX_VARS: usize = 16;

/// Monomial with at most [`MAX_VARS`] variables.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Mono {
    e: [u8; MAX_VARS],
    deg: u32,
    mask: u16,
}

impl Mono {
    pub fn one() -> Self {
        Mono {
            e: [0; MAX_VARS],
            deg: 0,
            mask: 0,
        }
    }

    pub fn from_exps(exps: &[u16]) -> Result<Self> {
        let mut m = Self::one();
        for (i, &k) in exps.iter().enumerate() {
            let k = u8::try_from(k).map_err(|_| Error::ResourceCap("exponent above 255".into()))?;
            m.e[i] = k;
        }
        m.fix();
        Ok(m)
    }

    pub fn var(i: usize) -> Self {
        let mut m = Self::one();
        m.e[i] = 1;
        m.fix();
        m
    }

    fn fix(&mut self) {
        self.deg = self.e.iter().map(|&k| k as u32).sum();
        self.mask = self
            .e
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .fold(0, |m, (i, _)| m | (1 << i));
    }

    pub fn divides(&self, o: &Mono) -> bool {
        self.mask & !o.mask == 0 && self.deg <= o.deg && self.e.iter().zip(&o.e).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        let mut m = Mono::one();
        for i in 0..MAX_VARS {
            m.e[i] = self.e[i]
                .checked_add(o.e[i])
                .expect("exponent overflow in Groebner computation");
        }
        m.deg = self.deg + o.deg;
        m.mask = self.mask | o.mask;
        m
    }

    /// `self / o`, assuming `o` divides `self`.
    pub fn div(&self, o: &Mono) -> Mono {
        let mut m = Mono::one();
        for i in 0..MAX_VARS {
            m.e[i] = self.e[i] - o.e[i];
        }
        m.fix();
        m
    }

    pub fn lcm(&self, o: &Mono) -> Mono {
        let mut m = Mono::one();
        for i in 0..MAX_VARS {
            m.e[i] = self.e[i].max(o.e[i]);
        }
        m.fix();
        m
    }

    pub fn coprime(&self, o: &Mono) -> bool {
        self.mask & o.mask == 0
    }
}

impl Ord for Mono {
    fn cmp(&self, o: &Self) -> Ordering {
        self.deg.cmp(&o.deg).then_with(|| {
            for i in (0..MAX_VARS).rev() {
                if self.e[i] != o.e[i] {
                    return o.e[i].cmp(&self.e[i]);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Polynomial over `F_p`, terms sorted by decreasing monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModPoly {
    pub terms: Vec<(Mono, u64)>,
}

impl ModPoly {
    pub fn from_int(f: &IntPoly, p: u64) -> Result<Self> {
        if f.nvars() > MAX_VARS {
            return Err(Error::ResourceCap(format!(
                "{} variables, at most {MAX_VARS} supported",
                f.nvars()
            )));
        }
        let mut terms = Vec::new();
        for (e, c) in f.terms() {
            let c = reduce_bigint(c, p);
            if c != 0 {
                terms.push((Mono::from_exps(e)?, c));
            }
        }
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        Ok(ModPoly { terms })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> Mono {
        self.terms[0].0
    }

    pub fn monic(mut self, p: u64) -> Self {
        if let Some(&(_, c)) = self.terms.first() {
            let inv = invm(c, p);
            for t in &mut self.terms {
                t.1 = mulm(t.1, inv, p);
            }
        }
        self
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.deg == 0
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Mono,
    sugar: u32,
}

struct Basis {
    p: u64,
    polys: Vec<ModPoly>,
    sugar: Vec<u32>,
    active: Vec<usize>,
    deadline: Option<Instant>,
}

impl Basis {
    fn check_time(&self) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() > d => Err(Error::ResourceCap("time cap reached".into())),
            _ => Ok(()),
        }
    }

    fn find_reducer(&self, m: &Mono) -> Option<usize> {
        self.active
            .iter()
            .copied()
            .filter(|&k| self.polys[k].lm().divides(m))
            .min_by_key(|&k| self.polys[k].terms.len())
    }

    /// Full normal form with respect to the active polynomials.
    fn reduce(&self, f: &ModPoly) -> Result<ModPoly> {
        let p = self.p;
        let mut work: BTreeMap<Mono, u64> = f.terms.iter().copied().collect();
        let mut out = Vec::new();
        let mut steps = 0u64;
        while let Some((m, c)) = work.pop_last() {
            match self.find_reducer(&m) {
                Some(k) => {
                    let g = &self.polys[k];
                    let q = m.div(&g.lm());
                    // g is monic: subtract c * q * g
                    for &(gm, gc) in &g.terms[1..] {
                        let t = q.mul(&gm);
                        let v = mulm(c, gc, p);
                        let slot = work.entry(t).or_insert(0);
                        *slot = subm(*slot, v, p);
                        if *slot == 0 {
                            work.remove(&t);
                        }
                    }
                    steps += 1;
                    if steps % 4096 == 0 {
                        self.check_time()?;
                    }
                }
                None => out.push((m, c)),
            }
        }
        Ok(ModPoly { terms: out })
    }

    fn spoly(&self, pr: &Pair) -> ModPoly {
        let p = self.p;
        let (f, g) = (&self.polys[pr.i], &self.polys[pr.j]);
        let qf = pr.lcm.div(&f.lm());
        let qg = pr.lcm.div(&g.lm());
        let mut acc: HashMap<Mono, u64> = HashMap::new();
        for &(m, c) in &f.terms[1..] {
            let e = acc.entry(qf.mul(&m)).or_insert(0);
            *e = addm(*e, c, p);
        }
        for &(m, c) in &g.terms[1..] {
            let e = acc.entry(qg.mul(&m)).or_insert(0);
            *e = subm(*e, c, p);
        }
        let mut terms: Vec<(Mono, u64)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        ModPoly { terms }
    }
}

/// Gebauer–Möller update after adding polynomial `t`.
fn update(b: &mut Basis, pairs: &mut Vec<Pair>, t: usize) {
    let ht = b.polys[t].lm();
    let st = b.sugar[t];
    let cand: Vec<Pair> = b
        .active
        .iter()
        .map(|&i| {
            let hi = b.polys[i].lm();
            let lcm = hi.lcm(&ht);
            let sugar = (b.sugar[i] + lcm.deg - hi.deg).max(st + lcm.deg - ht.deg);
            Pair { i, j: t, lcm, sugar }
        })
        .collect();
    // chain criterion among the new pairs
    let mut keep: Vec<Pair> = Vec::new();
    for (k, c) in cand.iter().enumerate() {
        let hi = b.polys[c.i].lm();
        if hi.coprime(&ht) {
            keep.push(c.clone());
            continue;
        }
        let dominated = cand.iter().enumerate().any(|(l, d)| {
            l != k && d.lcm.divides(&c.lcm) && (d.lcm != c.lcm || l < k)
        });
        if !dominated {
            keep.push(c.clone());
        }
    }
    keep.retain(|c| !b.polys[c.i].lm().coprime(&ht));
    // old pairs made redundant by t
    pairs.retain(|pr| {
        if !ht.divides(&pr.lcm) {
            return true;
        }
        let li = b.polys[pr.i].lm().lcm(&ht);
        let lj = b.polys[pr.j].lm().lcm(&ht);
        li == pr.lcm || lj == pr.lcm
    });
    pairs.extend(keep);
    let polys = &b.polys;
    b.active.retain(|&i| !ht.divides(&polys[i].lm()));
    b.active.push(t);
}

/// Reduced Groebner basis of the ideal generated by `input` over `F_p`.
///
/// Returns `[1]` for the unit ideal.
pub fn groebner(input: &[ModPoly], p: u64, deadline: Option<Instant>) -> Result<Vec<ModPoly>> {
    let mut b = Basis {
        p,
        polys: Vec::new(),
        sugar: Vec::new(),
        active: Vec::new(),
        deadline,
    };
    let mut pairs: Vec<Pair> = Vec::new();
    let mut sorted: Vec<&ModPoly> = input.iter().filter(|f| !f.is_zero()).collect();
    sorted.sort_by(|a, c| a.lm().cmp(&c.lm()));
    for f in sorted {
        let h = b.reduce(f)?;
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Ok(vec![h.monic(p)]);
        }
        let s = h.terms.iter().map(|t| t.0.deg).max().unwrap_or(0);
        b.polys.push(h.monic(p));
        b.sugar.push(s);
        let t = b.polys.len() - 1;
        update(&mut b, &mut pairs, t);
    }
    while !pairs.is_empty() {
        b.check_time()?;
        let k = (0..pairs.len())
            .min_by(|&x, &y| {
                pairs[x]
                    .sugar
                    .cmp(&pairs[y].sugar)
                    .then_with(|| pairs[x].lcm.cmp(&pairs[y].lcm))
            })
            .expect("nonempty");
        let pr = pairs.swap_remove(k);
        let s = b.spoly(&pr);
        let h = b.reduce(&s)?;
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Ok(vec![h.monic(p)]);
        }
        b.polys.push(h.monic(p));
        b.sugar.push(pr.sugar);
        let t = b.polys.len() - 1;
        update(&mut b, &mut pairs, t);
    }
    // interreduce the minimal basis
    let mut active = b.active.clone();
    active.sort_by(|&x, &y| b.polys[x].lm().cmp(&b.polys[y].lm()));
    let mut out = Vec::new();
    for &k in &active {
        let others: Vec<usize> = active.iter().copied().filter(|&j| j != k).collect();
        let saved = std::mem::replace(&mut b.active, others);
        let lead = b.polys[k].terms[0];
        let tail = ModPoly {
            terms: b.polys[k].terms[1..].to_vec(),
        };
        let mut r = b.reduce(&tail)?;
        r.terms.insert(0, lead);
        b.active = saved;
        out.push(r);
    }
    out.sort_by(|a, c| c.lm().cmp(&a.lm()));
    Ok(out)
}

/// Quotient ring data for a zero-dimensional ideal.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub p: u64,
    pub basis: Vec<ModPoly>,
    /// Standard monomials in increasing order; the first is `1`.
    pub standard: Vec<Mono>,
    index: HashMap<Mono, usize>,
}

impl Quotient {
    /// Fails for the unit ideal and for positive-dimensional ideals.
    pub fn new(basis: Vec<ModPoly>, nvars: usize, p: u64, cap: usize) -> Result<Self> {
        if basis.iter().any(|g| g.is_constant()) {
            return Err(Error::NoSolutions);
        }
        let lms: Vec<Mono> = basis.iter().map(|g| g.lm()).collect();
        for i in 0..nvars {
            let pure = lms
                .iter()
                .any(|m| m.mask == (1 << i));
            if !pure {
                return Err(Error::PositiveDimensional);
            }
        }
        let mut standard = vec![Mono::one()];
        let mut seen: HashMap<Mono, usize> = HashMap::new();
        seen.insert(Mono::one(), 0);
        let mut k = 0;
        while k < standard.len() {
            let m = standard[k];
            for i in 0..nvars {
                let n = m.mul(&Mono::var(i));
                if seen.contains_key(&n) || lms.iter().any(|l| l.divides(&n)) {
                    continue;
                }
                seen.insert(n, 0);
                standard.push(n);
                if standard.len() > cap {
                    return Err(Error::ResourceCap(format!(
                        "more than {cap} standard monomials"
                    )));
                }
            }
            k += 1;
        }
        standard.sort();
        let index = standard.iter().enumerate().map(|(k, m)| (*m, k)).collect();
        Ok(Quotient {
            p,
            basis,
            standard,
            index,
        })
    }

    pub fn dim(&self) -> usize {
        self.standard.len()
    }

    /// Coordinates of the normal form of `f` on the standard monomials.
    pub fn normal_form(&self, f: &ModPoly) -> Result<Vec<u64>> {
        let b = Basis {
            p: self.p,
            polys: self.basis.clone(),
            sugar: vec![0; self.basis.len()],
            active: (0..self.basis.len()).collect(),
            deadline: None,
        };
        let r = b.reduce(f)?;
        let mut v = vec![0u64; self.dim()];
        for (m, c) in r.terms {
            let k = *self
                .index
                .get(&m)
                .ok_or_else(|| Error::Internal("normal form left the standard monomials".into()))?;
            v[k] = c;
        }
        Ok(v)
    }

    /// Matrix of multiplication by `x_i`: column `k` holds the normal form
    /// of `x_i` times the `k`-th standard monomial.
    pub fn mult_matrix(&self, i: usize) -> Result<Vec<Vec<u64>>> {
        let n = self.dim();
        let mut m = vec![vec![0u64; n]; n];
        for (k, s) in self.standard.iter().enumerate() {
            let f = ModPoly {
                terms: vec![(s.mul(&Mono::var(i)), 1)],
            };
            let v = self.normal_form(&f)?;
            for (r, c) in v.into_iter().enumerate() {
                m[r][k] = c;
            }
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u64 = 1_000_003;

    fn poly(terms: &[(&[u8], i64)]) -> ModPoly {
        let mut t: Vec<(Mono, u64)> = terms
            .iter()
            .map(|(e, c)| {
                let e16: Vec<u16> = e.iter().map(|&k| k as u16).collect();
                (Mono::from_exps(&e16).unwrap(), c.rem_euclid(P as i64) as u64)
            })
            .collect();
        t.sort_by(|a, b| b.0.cmp(&a.0));
        ModPoly { terms: t }
    }

    #[test]
    fn grevlex_order() {
        let x = Mono::from_exps(&[1, 0, 0]).unwrap();
        let y = Mono::from_exps(&[0, 1, 0]).unwrap();
        let z = Mono::from_exps(&[0, 0, 1]).unwrap();
        assert!(x > y && y > z);
        let x2 = x.mul(&x);
        let yz = y.mul(&z);
        let xz = x.mul(&z);
        let y2 = y.mul(&y);
        // grevlex: x^2 > xy > y^2 > xz > yz > z^2
        assert!(x2 > y2 && y2 > xz && xz > yz);
    }

    #[test]
    fn circle_and_line() {
        // x^2 + y^2 - 1, x - y : two points
        let f = poly(&[(&[2, 0], 1), (&[0, 2], 1), (&[0, 0], -1)]);
        let g = poly(&[(&[1, 0], 1), (&[0, 1], -1)]);
        let gb = groebner(&[f, g], P, None).unwrap();
        let q = Quotient::new(gb, 2, P, 100).unwrap();
        assert_eq!(q.dim(), 2);
    }

    #[test]
    fn inconsistent_and_positive_dimensional() {
        let f = poly(&[(&[1, 0], 1), (&[0, 0], -1)]);
        let g = poly(&[(&[1, 0], 1), (&[0, 0], -2)]);
        let gb = groebner(&[f.clone(), g], P, None).unwrap();
        assert!(matches!(Quotient::new(gb, 2, P, 100), Err(Error::NoSolutions)));
        let gb = groebner(&[f], P, None).unwrap();
        assert!(matches!(
            Quotient::new(gb, 2, P, 100),
            Err(Error::PositiveDimensional)
        ));
    }

    #[test]
    fn cyclic3_has_six_points() {
        // cyclic-3 over F_p
        let f1 = poly(&[(&[1, 0, 0], 1), (&[0, 1, 0], 1), (&[0, 0, 1], 1)]);
        let f2 = poly(&[(&[1, 1, 0], 1), (&[0, 1, 1], 1), (&[1, 0, 1], 1)]);
        let f3 = poly(&[(&[1, 1, 1], 1), (&[0, 0, 0], -1)]);
        let gb = groebner(&[f1, f2, f3], P, None).unwrap();
        let q = Quotient::new(gb, 3, P, 100).unwrap();
        assert_eq!(q.dim(), 6);
    }
}
