//! `l`-adic lifting: arithmetic in `(Z/l^N)[Y]/(F)`, Newton iteration on a
//! square polynomial system, and rational reconstruction.

use std::sync::Arc;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::modp::{pgcdinv, reduce_bigint, trim, Ext, Up};
use super::mpoly::{EvalRing, IntPoly};
use crate::error::{Error, Result};
use crate::exactalg::Rational;

/// Reduces into `[0, m)`.
pub fn zmod(a: &BigInt, m: &BigInt) -> BigInt {
    a.mod_floor(m)
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn zinv(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Polynomials over `Z/m`, ascending, not trimmed.
pub mod zpoly {
    use super::*;

    pub fn trim(mut a: Vec<BigInt>) -> Vec<BigInt> {
        while a.last().is_some_and(|c| c.is_zero()) {
            a.pop();
        }
        a
    }

    pub fn add(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
        let n = a.len().max(b.len());
        let z = BigInt::zero();
        trim(
            (0..n)
                .map(|i| zmod(&(a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)), m))
                .collect(),
        )
    }

    pub fn sub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
        let n = a.len().max(b.len());
        let z = BigInt::zero();
        trim(
            (0..n)
                .map(|i| zmod(&(a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)), m))
                .collect(),
        )
    }

    pub fn mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(out.iter().map(|c| zmod(c, m)).collect())
    }

    /// Remainder modulo a monic polynomial.
    pub fn rem(a: &[BigInt], f: &[BigInt], m: &BigInt) -> Vec<BigInt> {
        let e = f.len() - 1;
        let mut r: Vec<BigInt> = a.to_vec();
        if r.len() <= e {
            return trim(r);
        }
        for k in (e..r.len()).rev() {
            let c = std::mem::take(&mut r[k]);
            if c.is_zero() {
                continue;
            }
            for j in 0..e {
                r[k - e + j] -= &c * &f[j];
            }
        }
        r.truncate(e);
        trim(r.iter().map(|c| zmod(c, m)).collect())
    }

    pub fn reduce_mod_l(a: &[BigInt], l: u64) -> Up {
        super::trim(a.iter().map(|c| reduce_bigint(c, l)).collect())
    }

    pub fn from_up(a: &Up) -> Vec<BigInt> {
        a.iter().map(|&c| BigInt::from(c)).collect()
    }

    /// Inverse of `a` modulo monic `f`, valid when `a` is invertible modulo
    /// `(l, f)`.
    pub fn inv_mod(a: &[BigInt], f: &[BigInt], m: &BigInt, l: u64) -> Option<Vec<BigInt>> {
        let fbar = reduce_mod_l(f, l);
        let abar = reduce_mod_l(a, l);
        let (g, s) = pgcdinv(&abar, &fbar, l);
        if g != vec![1] {
            return None;
        }
        let mut b = from_up(&s);
        let two = vec![BigInt::from(2)];
        for _ in 0..200 {
            let ab = rem(&mul(a, &b, m), f, m);
            if ab.len() == 1 && ab[0].is_one() {
                return Some(b);
            }
            b = rem(&mul(&b, &sub(&two, &ab, m), m), f, m);
        }
        None
    }
}

/// The ring `(Z/m)[Y]/(F)` with `m = l^N` and `F` monic, irreducible mod `l`.
#[derive(Debug)]
pub struct GrCtx {
    pub l: u64,
    pub m: BigInt,
    pub f: Vec<BigInt>,
    pub ext: Ext,
}

impl GrCtx {
    pub fn new(l: u64, n: u32, fbar: &Up) -> Arc<Self> {
        let m = num_traits::pow(BigInt::from(l), n as usize);
        Arc::new(GrCtx {
            l,
            m,
            f: zpoly::from_up(fbar),
            ext: Ext::new(l, fbar.clone()),
        })
    }


    pub fn degree(&self) -> usize {
        self.f.len() - 1
    }
}

#[derive(Clone, Debug)]
pub struct GrElem {
    pub ctx: Arc<GrCtx>,
    pub c: Vec<BigInt>,
}

impl GrElem {
    pub fn zero(ctx: &Arc<GrCtx>) -> Self {
        GrElem {
            ctx: ctx.clone(),
            c: Vec::new(),
        }
    }

    pub fn from_up(ctx: &Arc<GrCtx>, a: &Up) -> Self {
        GrElem {
            ctx: ctx.clone(),
            c: zpoly::from_up(a),
        }
    }

    pub fn from_coeffs(ctx: &Arc<GrCtx>, c: Vec<BigInt>) -> Self {
        let c = zpoly::rem(&c, &ctx.f, &ctx.m);
        GrElem { ctx: ctx.clone(), c }
    }

    /// Moves to another precision of the same ring.
    pub fn rebase(&self, ctx: &Arc<GrCtx>) -> Self {
        GrElem::from_coeffs(ctx, self.c.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn residue(&self) -> Up {
        zpoly::reduce_mod_l(&self.c, self.ctx.l)
    }

    pub fn is_unit(&self) -> bool {
        !self.residue().is_empty()
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.c.get(k).cloned().unwrap_or_default()
    }

    pub fn add(&self, o: &Self) -> Self {
        GrElem {
            ctx: self.ctx.clone(),
            c: zpoly::add(&self.c, &o.c, &self.ctx.m),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        GrElem {
            ctx: self.ctx.clone(),
            c: zpoly::sub(&self.c, &o.c, &self.ctx.m),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let prod = zpoly::mul(&self.c, &o.c, &self.ctx.m);
        GrElem {
            ctx: self.ctx.clone(),
            c: zpoly::rem(&prod, &self.ctx.f, &self.ctx.m),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        zpoly::inv_mod(&self.c, &self.ctx.f, &self.ctx.m, self.ctx.l)
            .map(|c| GrElem {
                ctx: self.ctx.clone(),
                c,
            })
            .ok_or(Error::ZeroDivisor)
    }
}

impl EvalRing for GrElem {
    fn zero_like(&self) -> Self {
        GrElem::zero(&self.ctx)
    }
    fn from_bigint_like(&self, n: &BigInt) -> Self {
        GrElem {
            ctx: self.ctx.clone(),
            c: zpoly::trim(vec![zmod(n, &self.ctx.m)]),
        }
    }
    fn add_ref(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self.mul(o)
    }
}

/// Solves `a x = b` with `a` square and invertible modulo the maximal ideal.
pub fn gr_solve(a: &[Vec<GrElem>], b: &[GrElem]) -> Result<Vec<GrElem>> {
    let n = a.len();
    let mut m: Vec<Vec<GrElem>> = a.to_vec();
    let mut rhs: Vec<GrElem> = b.to_vec();
    for c in 0..n {
        let piv = (c..n)
            .find(|&i| m[i][c].is_unit())
            .ok_or_else(|| Error::Internal("singular Jacobian during lifting".into()))?;
        m.swap(c, piv);
        rhs.swap(c, piv);
        let inv = m[c][c].inv()?;
        for j in c..n {
            m[c][j] = m[c][j].mul(&inv);
        }
        rhs[c] = rhs[c].mul(&inv);
        for i in 0..n {
            if i == c || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for j in c..n {
                let t = f.mul(&m[c][j]);
                m[i][j] = m[i][j].sub(&t);
            }
            let t = f.mul(&rhs[c]);
            rhs[i] = rhs[i].sub(&t);
        }
    }
    Ok(rhs)
}

/// Square system with its Jacobian, for Newton iteration.
pub struct Newton {
    pub eqs: Vec<IntPoly>,
    pub jac: Vec<Vec<IntPoly>>,
}

impl Newton {
    pub fn new(eqs: Vec<IntPoly>) -> Self {
        let n = eqs.first().map(|e| e.nvars()).unwrap_or(0);
        let jac = eqs
            .iter()
            .map(|e| (0..n).map(|j| e.derivative(j)).collect())
            .collect();
        Newton { eqs, jac }
    }

    /// Refines `x` until the system vanishes modulo the context's `m`.
    pub fn lift(&self, mut x: Vec<GrElem>) -> Result<Vec<GrElem>> {
        for _ in 0..64 {
            let fx: Vec<GrElem> = self.eqs.iter().map(|e| e.eval(&x)).collect();
            if fx.iter().all(|v| v.is_zero()) {
                return Ok(x);
            }
            let j: Vec<Vec<GrElem>> = self
                .jac
                .iter()
                .map(|row| row.iter().map(|d| d.eval(&x)).collect())
                .collect();
            let delta = gr_solve(&j, &fx)?;
            x = x.iter().zip(&delta).map(|(a, d)| a.sub(d)).collect();
        }
        Err(Error::Internal("Newton iteration did not converge".into()))
    }
}

/// `n/d` with `|n|, |d| <= sqrt(m/2)` and `n = a d mod m`, if one exists.
pub fn rational_reconstruction(a: &BigInt, m: &BigInt) -> Option<Rational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    if t1.sign() == Sign::Minus {
        r1 = -r1;
        t1 = -t1;
    }
    Some(Rational::new(r1, t1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reconstruct_small_fraction() {
        let m = num_traits::pow(BigInt::from(1_000_003u64), 4);
        let q = Rational::new(BigInt::from(-355), BigInt::from(113));
        let inv = zinv(&BigInt::from(113), &m).unwrap();
        let a = zmod(&(BigInt::from(-355) * inv), &m);
        assert_eq!(rational_reconstruction(&a, &m), Some(q));
    }

    #[test]
    fn newton_lifts_square_root_of_two() {
        // x^2 - 2 over Z/7^k: 3^2 = 2 mod 7
        let x = IntPoly::var(1, 0);
        let eq = &x.pow(2) - &IntPoly::from_i64(1, 2);
        let ctx = GrCtx::new(7, 20, &vec![0, 1]);
        let x0 = GrElem::from_up(&ctx, &vec![3]);
        let sol = Newton::new(vec![eq.clone()]).lift(vec![x0]).unwrap();
        assert!(eq.eval(&sol).is_zero());
    }

    #[test]
    fn unit_inverse_in_extension() {
        // Y^2 + 1 is irreducible mod 7
        let ctx = GrCtx::new(7, 10, &vec![1, 0, 1]);
        let a = GrElem::from_coeffs(&ctx, vec![BigInt::from(3), BigInt::from(5)]);
        let b = a.inv().unwrap();
        let one = a.mul(&b);
        assert_eq!(one.c, vec![BigInt::one()]);
    }
}
