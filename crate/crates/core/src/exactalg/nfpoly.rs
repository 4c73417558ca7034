use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{NfElem, NumberField};
use crate::error::{Error, Result};

/// Polynomial in `t` with number-field coefficients, ascending degree,
/// no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct NfPoly {
    field: NumberField,
    coeffs: Vec<NfElem>,
}

impl NfPoly {
    pub fn new(field: &NumberField, mut coeffs: Vec<NfElem>) -> Self {
        while coeffs.last().is_some_and(NfElem::is_zero) {
            coeffs.pop();
        }
        NfPoly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &NumberField) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn constant(c: NfElem) -> Self {
        let field = c.field().clone();
        Self::new(&field, vec![c])
    }

    pub fn one(field: &NumberField) -> Self {
        Self::constant(field.one())
    }

    /// `c * t^k`.
    pub fn monomial(c: NfElem, k: usize) -> Self {
        let field = c.field().clone();
        let mut v = vec![field.zero(); k];
        v.push(c);
        Self::new(&field, v)
    }

    /// Polynomial with small integer coefficients, ascending.
    pub fn from_ints(field: &NumberField, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn coeffs(&self) -> &[NfElem] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> NfElem {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&NfElem> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &NfElem) -> Self {
        if c.is_zero() {
            return Self::zero(&self.field);
        }
        Self::new(&self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![self.field.zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Self::new(&self.field, v)
    }

    pub fn monic(&self) -> Result<Self> {
        match self.leading() {
            None => Ok(self.clone()),
            Some(lc) => Ok(self.scale(&lc.inv()?)),
        }
    }

    /// Horner evaluation.
    pub fn eval(&self, t0: &NfElem) -> NfElem {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * t0) + c;
        }
        acc
    }

    pub fn div_rem(&self, d: &NfPoly) -> Result<(NfPoly, NfPoly)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        if self.coeffs.len() <= dd {
            return Ok((Self::zero(&self.field), self.clone()));
        }
        let lc_inv = d.coeffs[dd].inv()?;
        let mut r = self.coeffs.clone();
        let mut q = vec![self.field.zero(); r.len() - dd];
        for k in (dd..r.len()).rev() {
            if r[k].is_zero() {
                continue;
            }
            let f = &r[k] * &lc_inv;
            for (i, dc) in d.coeffs.iter().enumerate().take(dd) {
                let idx = k - dd + i;
                if !dc.is_zero() {
                    r[idx] = &r[idx] - &(&f * dc);
                }
            }
            r[k] = self.field.zero();
            q[k - dd] = f;
        }
        r.truncate(dd);
        Ok((Self::new(&self.field, q), Self::new(&self.field, r)))
    }

    /// Quotient when `d` divides `self`; `None` when there is a remainder.
    pub fn div_exact(&self, d: &NfPoly) -> Result<Option<NfPoly>> {
        let (q, r) = self.div_rem(d)?;
        Ok(r.is_zero().then_some(q))
    }

    /// Monic gcd by the Euclidean algorithm over the field.
    pub fn gcd(&self, other: &NfPoly) -> Result<NfPoly> {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b)?.1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Order of vanishing at `t = t0`.
    pub fn order_at(&self, t0: &NfElem) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let lin = NfPoly::new(&self.field, vec![-t0, self.field.one()]);
        let mut cur = self.clone();
        let mut k = 0;
        while let Some(q) = cur.div_exact(&lin)? {
            cur = q;
            k += 1;
        }
        Ok(k)
    }
}

impl<'a> Add<&'a NfPoly> for &'a NfPoly {
    type Output = NfPoly;
    fn add(self, o: &NfPoly) -> NfPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n)
            .map(|k| match (self.coeffs.get(k), o.coeffs.get(k)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        NfPoly::new(&self.field, v)
    }
}

impl<'a> Sub<&'a NfPoly> for &'a NfPoly {
    type Output = NfPoly;
    fn sub(self, o: &NfPoly) -> NfPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n)
            .map(|k| match (self.coeffs.get(k), o.coeffs.get(k)) {
                (Some(a), Some(b)) => a - b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => -b,
                (None, None) => unreachable!(),
            })
            .collect();
        NfPoly::new(&self.field, v)
    }
}

impl Neg for &NfPoly {
    type Output = NfPoly;
    fn neg(self) -> NfPoly {
        NfPoly {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl<'a> Mul<&'a NfPoly> for &'a NfPoly {
    type Output = NfPoly;
    fn mul(self, o: &NfPoly) -> NfPoly {
        if self.is_zero() || o.is_zero() {
            return NfPoly::zero(&self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        NfPoly::new(&self.field, out)
    }
}

impl fmt::Debug for NfPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NfPoly{:?}", self.coeffs)
    }
}

impl fmt::Display for NfPoly {
    /// One term per line-free chunk: `(coeff)*t^k` joined by ` + `, highest
    /// degree first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{k}")?,
            }
        }
        Ok(())
    }
}
