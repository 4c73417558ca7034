//! Arithmetic modulo a word-sized prime: univariate polynomials, their
//! factorization, finite extension fields and dense linear algebra.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

#[inline]
pub fn addm(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn subm(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn powm(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, a, p);
        }
        a = mulm(a, a, p);
        e >>= 1;
    }
    r
}

pub fn invm(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    powm(a, p - 2, p)
}

pub fn reduce_bigint(n: &BigInt, p: u64) -> u64 {
    let r = n % BigInt::from(p);
    let r = if r < BigInt::zero() { r + BigInt::from(p) } else { r };
    r.try_into().expect("fits")
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % q == 0 {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powm(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulm(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A random prime in `[2^30, 2^31)`.
pub fn random_prime(rng: &mut ChaCha8Rng) -> u64 {
    loop {
        let n = rng.gen_range((1u64 << 30)..(1u64 << 31)) | 1;
        if is_prime(n) {
            return n;
        }
    }
}

/// Univariate polynomial over `F_p`, ascending coefficients, no trailing
/// zeros.
pub type Up = Vec<u64>;

pub fn trim(mut a: Up) -> Up {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn deg(a: &Up) -> isize {
    a.len() as isize - 1
}

pub fn padd(a: &Up, b: &Up, p: u64) -> Up {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| addm(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0), p))
            .collect(),
    )
}

pub fn psub(a: &Up, b: &Up, p: u64) -> Up {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| subm(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0), p))
            .collect(),
    )
}

pub fn pscale(a: &Up, c: u64, p: u64) -> Up {
    trim(a.iter().map(|&x| mulm(x, c, p)).collect())
}

pub fn pmul(a: &Up, b: &Up, p: u64) -> Up {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut acc = vec![0u128; a.len() + b.len() - 1];
    let pp = p as u128;
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            let t = &mut acc[i + j];
            *t += x as u128 * y as u128;
            if *t >= pp << 64 {
                *t %= pp;
            }
        }
    }
    trim(acc.into_iter().map(|t| (t % pp) as u64).collect())
}

pub fn pdivrem(a: &Up, b: &Up, p: u64) -> (Up, Up) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut r = a.clone();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let inv = invm(*b.last().expect("nonempty"), p);
    let mut q = vec![0u64; r.len() - b.len() + 1];
    for k in (0..q.len()).rev() {
        let c = mulm(r[k + b.len() - 1], inv, p);
        q[k] = c;
        if c == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            r[k + j] = subm(r[k + j], mulm(c, bj, p), p);
        }
    }
    r.truncate(b.len() - 1);
    (trim(q), trim(r))
}

pub fn prem(a: &Up, b: &Up, p: u64) -> Up {
    pdivrem(a, b, p).1
}

pub fn monic(a: &Up, p: u64) -> Up {
    match a.last() {
        None => Vec::new(),
        Some(&l) => pscale(a, invm(l, p), p),
    }
}

pub fn pgcd(a: &Up, b: &Up, p: u64) -> Up {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_empty() {
        let r = prem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(&x, p)
}

/// `(g, s)` with `g = gcd(a, m)` monic and `s a = g mod m`.
pub fn pgcdinv(a: &Up, m: &Up, p: u64) -> (Up, Up) {
    let (mut r0, mut r1) = (m.clone(), prem(a, m, p));
    let (mut s0, mut s1): (Up, Up) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = pdivrem(&r0, &r1, p);
        let s = psub(&s0, &pmul(&q, &s1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    let l = *r0.last().unwrap_or(&1);
    let li = invm(l, p);
    (pscale(&r0, li, p), pscale(&s0, li, p))
}

pub fn pderiv(a: &Up, p: u64) -> Up {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mulm(c, i as u64 % p, p))
            .collect(),
    )
}

pub fn pmulmod(a: &Up, b: &Up, m: &Up, p: u64) -> Up {
    prem(&pmul(a, b, p), m, p)
}

pub fn ppowmod(a: &Up, e: &BigUint, m: &Up, p: u64) -> Up {
    let mut r: Up = prem(&vec![1], m, p);
    let base = prem(a, m, p);
    for i in (0..e.bits()).rev() {
        r = pmulmod(&r, &r, m, p);
        if e.bit(i) {
            r = pmulmod(&r, &base, m, p);
        }
    }
    r
}

/// Irreducible factors with multiplicity of a nonzero polynomial whose
/// degree is below `p`.
pub fn factor(a: &Up, p: u64, rng: &mut ChaCha8Rng) -> Vec<(Up, usize)> {
    let mut out = Vec::new();
    for (sq, mult) in squarefree(&monic(a, p), p) {
        for (g, d) in ddf(&sq, p) {
            for f in edf(&g, d, p, rng) {
                out.push((f, mult));
            }
        }
    }
    out.sort();
    out
}

/// Yun's algorithm.
pub fn squarefree(a: &Up, p: u64) -> Vec<(Up, usize)> {
    let mut out = Vec::new();
    if deg(a) < 1 {
        return out;
    }
    let da = pderiv(a, p);
    let b = pgcd(a, &da, p);
    let mut c = pdivrem(a, &b, p).0;
    let mut d = psub(&pdivrem(&da, &b, p).0, &pderiv(&c, p), p);
    let mut i = 1;
    while deg(&c) >= 1 {
        let g = pgcd(&c, &d, p);
        if deg(&g) >= 1 {
            out.push((g.clone(), i));
        }
        c = pdivrem(&c, &g, p).0;
        let nd = pdivrem(&d, &g, p).0;
        d = psub(&nd, &pderiv(&c, p), p);
        i += 1;
    }
    out
}

/// Distinct-degree factorization of a monic squarefree polynomial.
pub fn ddf(a: &Up, p: u64) -> Vec<(Up, usize)> {
    let mut out = Vec::new();
    let mut f = a.clone();
    let x: Up = vec![0, 1];
    let mut h = x.clone();
    let pe = BigUint::from(p);
    let mut d = 1;
    while 2 * d as isize <= deg(&f) {
        h = ppowmod(&h, &pe, &f, p);
        let g = pgcd(&f, &psub(&h, &x, p), p);
        if deg(&g) >= 1 {
            f = pdivrem(&f, &g, p).0;
            h = prem(&h, &f, p);
            out.push((g, d));
        }
        d += 1;
    }
    if deg(&f) >= 1 {
        let n = deg(&f) as usize;
        out.push((f, n));
    }
    out
}

/// Equal-degree splitting (Cantor–Zassenhaus), odd `p`.
pub fn edf(a: &Up, d: usize, p: u64, rng: &mut ChaCha8Rng) -> Vec<Up> {
    let n = deg(a) as usize;
    if n == d {
        return vec![a.clone()];
    }
    let e = (num_traits::pow(BigUint::from(p), d) - BigUint::one()) / BigUint::from(2u32);
    loop {
        let r: Up = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if deg(&r) < 1 {
            continue;
        }
        let t = psub(&ppowmod(&r, &e, a, p), &vec![1], p);
        let g = pgcd(a, &t, p);
        if deg(&g) >= 1 && (deg(&g) as usize) < n {
            let mut out = edf(&g, d, p, rng);
            out.extend(edf(&pdivrem(a, &g, p).0, d, p, rng));
            return out;
        }
    }
}

/// Characteristic polynomial of a square matrix via Hessenberg reduction.
pub fn charpoly(m: &[Vec<u64>], p: u64) -> Up {
    let n = m.len();
    let mut h: Vec<Vec<u64>> = m.to_vec();
    for k in 0..n.saturating_sub(2) {
        let Some(piv) = (k + 1..n).find(|&i| h[i][k] != 0) else {
            continue;
        };
        if piv != k + 1 {
            h.swap(piv, k + 1);
            for row in h.iter_mut() {
                row.swap(piv, k + 1);
            }
        }
        let inv = invm(h[k + 1][k], p);
        for i in k + 2..n {
            let u = mulm(h[i][k], inv, p);
            if u == 0 {
                continue;
            }
            for j in 0..n {
                let t = mulm(u, h[k + 1][j], p);
                h[i][j] = subm(h[i][j], t, p);
            }
            for row in h.iter_mut() {
                let t = mulm(u, row[i], p);
                row[k + 1] = addm(row[k + 1], t, p);
            }
        }
    }
    // recurrence on leading principal submatrices
    let mut polys: Vec<Up> = vec![vec![1]];
    for k in 0..n {
        let mut next = psub(&pmul(&vec![0, 1], &polys[k], p), &pscale(&polys[k], h[k][k], p), p);
        let mut t = 1u64;
        for i in (0..k).rev() {
            t = mulm(t, h[i + 1][i], p);
            let c = mulm(t, h[i][k], p);
            next = psub(&next, &pscale(&polys[i], c, p), p);
        }
        polys.push(next);
    }
    polys.pop().expect("nonempty")
}

/// The finite field `F_p[Y]/(f)` for a monic irreducible `f`.
#[derive(Clone, Debug)]
pub struct Ext {
    pub p: u64,
    pub f: Up,
}

impl Ext {
    pub fn new(p: u64, f: Up) -> Self {
        Ext { p, f }
    }

    pub fn degree(&self) -> usize {
        self.f.len() - 1
    }

    pub fn from_u64(&self, c: u64) -> Up {
        trim(vec![c % self.p])
    }

    pub fn gen(&self) -> Up {
        prem(&vec![0, 1], &self.f, self.p)
    }

    pub fn add(&self, a: &Up, b: &Up) -> Up {
        padd(a, b, self.p)
    }

    pub fn sub(&self, a: &Up, b: &Up) -> Up {
        psub(a, b, self.p)
    }

    pub fn mul(&self, a: &Up, b: &Up) -> Up {
        pmulmod(a, b, &self.f, self.p)
    }

    pub fn inv(&self, a: &Up) -> Up {
        let (g, s) = pgcdinv(a, &self.f, self.p);
        assert_eq!(g, vec![1], "inverting zero in a finite field");
        s
    }

    pub fn order(&self) -> BigUint {
        num_traits::pow(BigUint::from(self.p), self.degree())
    }

    /// Rank and a normalized kernel basis of a matrix over this field.
    pub fn kernel(&self, m: &[Vec<Up>], cols: usize) -> (usize, Vec<Vec<Up>>) {
        let mut a: Vec<Vec<Up>> = m.to_vec();
        let mut pivots = Vec::new();
        let mut row = 0;
        for c in 0..cols {
            let Some(piv) = (row..a.len()).find(|&i| !a[i][c].is_empty()) else {
                continue;
            };
            a.swap(row, piv);
            let inv = self.inv(&a[row][c]);
            for j in c..cols {
                a[row][j] = self.mul(&a[row][j], &inv);
            }
            for i in 0..a.len() {
                if i == row || a[i][c].is_empty() {
                    continue;
                }
                let f = a[i][c].clone();
                for j in c..cols {
                    let t = self.mul(&f, &a[row][j]);
                    a[i][j] = self.sub(&a[i][j], &t);
                }
            }
            pivots.push(c);
            row += 1;
            if row == a.len() {
                break;
            }
        }
        let rank = pivots.len();
        let mut basis = Vec::new();
        for free in (0..cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![Vec::new(); cols];
            v[free] = vec![1];
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = self.sub(&Vec::new(), &a[r][free]);
            }
            basis.push(v);
        }
        (rank, basis)
    }

    /// Roots in this field of a polynomial with `F_p` coefficients.
    pub fn roots(&self, g: &Up, rng: &mut ChaCha8Rng) -> Vec<Up> {
        let g: Vec<Up> = g.iter().map(|&c| self.from_u64(c)).collect();
        let g = self.xmonic(&xtrim(g));
        if g.len() <= 1 {
            return Vec::new();
        }
        // gcd with X^q - X keeps the roots that lie in this field
        let q = self.order();
        let x: Vec<Up> = vec![Vec::new(), vec![1]];
        let xq = self.xpowmod(&x, &q, &g);
        let h = self.xgcd(&g, &self.xsub(&xq, &x));
        let mut out = Vec::new();
        self.split_roots(&h, rng, &mut out);
        out
    }

    fn split_roots(&self, h: &[Up], rng: &mut ChaCha8Rng, out: &mut Vec<Up>) {
        let n = h.len() as isize - 1;
        if n <= 0 {
            return;
        }
        if n == 1 {
            out.push(self.sub(&Vec::new(), &h[0]));
            return;
        }
        let e = (self.order() - BigUint::one()) / BigUint::from(2u32);
        loop {
            let a: Up = trim((0..self.degree()).map(|_| rng.gen_range(0..self.p)).collect());
            let base = vec![a, vec![1]];
            let t = self.xsub(&self.xpowmod(&base, &e, h), &[vec![1]]);
            let g = self.xgcd(h, &t);
            let dg = g.len() as isize - 1;
            if dg >= 1 && dg < n {
                let (q, _) = self.xdivrem(h, &g);
                self.split_roots(&g, rng, out);
                self.split_roots(&q, rng, out);
                return;
            }
        }
    }

    // polynomials with coefficients in the extension

    fn xmonic(&self, a: &[Up]) -> Vec<Up> {
        match a.last() {
            None => Vec::new(),
            Some(l) => {
                let inv = self.inv(l);
                a.iter().map(|c| self.mul(c, &inv)).collect()
            }
        }
    }

    fn xsub(&self, a: &[Up], b: &[Up]) -> Vec<Up> {
        let n = a.len().max(b.len());
        let e = Vec::new();
        xtrim(
            (0..n)
                .map(|i| self.sub(a.get(i).unwrap_or(&e), b.get(i).unwrap_or(&e)))
                .collect(),
        )
    }

    fn xmul(&self, a: &[Up], b: &[Up]) -> Vec<Up> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Vec::new(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_empty() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] = padd(&out[i + j], &pmul(x, y, self.p), self.p);
            }
        }
        xtrim(out.into_iter().map(|c| prem(&c, &self.f, self.p)).collect())
    }

    fn xdivrem(&self, a: &[Up], b: &[Up]) -> (Vec<Up>, Vec<Up>) {
        let mut r: Vec<Up> = a.to_vec();
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let inv = self.inv(b.last().expect("nonzero divisor"));
        let mut q = vec![Vec::new(); r.len() - b.len() + 1];
        for k in (0..q.len()).rev() {
            let c = self.mul(&r[k + b.len() - 1], &inv);
            if c.is_empty() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                let t = self.mul(&c, bj);
                r[k + j] = self.sub(&r[k + j], &t);
            }
            q[k] = c;
        }
        r.truncate(b.len() - 1);
        (xtrim(q), xtrim(r))
    }

    fn xgcd(&self, a: &[Up], b: &[Up]) -> Vec<Up> {
        let (mut x, mut y) = (a.to_vec(), b.to_vec());
        while !y.is_empty() {
            let r = self.xdivrem(&x, &y).1;
            x = y;
            y = r;
        }
        self.xmonic(&x)
    }

    fn xpowmod(&self, a: &[Up], e: &BigUint, m: &[Up]) -> Vec<Up> {
        let mut r = self.xdivrem(&[vec![1]], m).1;
        let base = self.xdivrem(a, m).1;
        for i in (0..e.bits()).rev() {
            r = self.xdivrem(&self.xmul(&r, &r), m).1;
            if e.bit(i) {
                r = self.xdivrem(&self.xmul(&r, &base), m).1;
            }
        }
        r
    }
}

fn xtrim(mut a: Vec<Up>) -> Vec<Up> {
    while a.last().is_some_and(|c| c.is_empty()) {
        a.pop();
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    const P: u64 = 1_000_003;

    #[test]
    fn factor_reassembles() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        // (x^2 + 1)^2 (x - 3) (x^3 + x + 1)
        let a = pmul(&pmul(&vec![1, 0, 1], &vec![1, 0, 1], P), &vec![P - 3, 1], P);
        let a = pmul(&a, &vec![1, 1, 0, 1], P);
        let fs = factor(&a, P, &mut rng);
        let mut prod: Up = vec![1];
        for (f, m) in &fs {
            for _ in 0..*m {
                prod = pmul(&prod, f, P);
            }
        }
        assert_eq!(prod, a);
    }

    #[test]
    fn charpoly_of_companion() {
        // companion of x^3 - 2x + 5
        let m = vec![vec![0, 0, P - 5], vec![1, 0, 2], vec![0, 1, 0]];
        assert_eq!(charpoly(&m, P), vec![5, P - 2, 0, 1]);
    }

    #[test]
    fn roots_in_extension() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut f = vec![0, 0, 1];
        // an irreducible quadratic: x^2 - n for a non-residue n
        let n = (2..P).find(|&n| powm(n, (P - 1) / 2, P) == P - 1).unwrap();
        f[0] = P - n;
        let k = Ext::new(P, f.clone());
        let r = k.roots(&f, &mut rng);
        assert_eq!(r.len(), 2);
        for x in r {
            let fx = f
                .iter()
                .rev()
                .fold(Vec::new(), |acc, &c| k.add(&k.mul(&acc, &x), &k.from_u64(c)));
            assert!(fx.is_empty());
        }
    }

    #[test]
    fn primality() {
        assert!(is_prime(2_147_483_647));
        assert!(!is_prime(2_147_483_649));
    }
}
