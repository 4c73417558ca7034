use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Exponent vector.
pub type Exps = Vec<u16>;

/// Multivariate polynomial with integer coefficients in a fixed number of
/// variables.
#[derive(Clone, PartialEq, Eq)]
pub struct IntPoly {
    nvars: usize,
    terms: BTreeMap<Exps, BigInt>,
}

/// Minimal ring interface for evaluating an [`IntPoly`] at a point.
pub trait EvalRing: Clone {
    fn zero_like(&self) -> Self;
    fn from_bigint_like(&self, n: &BigInt) -> Self;
    fn add_ref(&self, o: &Self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;
}

impl IntPoly {
    pub fn zero(nvars: usize) -> Self {
        IntPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn from_i64(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, BigInt::from(c))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(e, BigInt::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> usize {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&k| k as usize).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> usize {
        self.terms.keys().map(|e| e[i] as usize).max().unwrap_or(0)
    }

    /// Constant term, zero if absent.
    pub fn constant_term(&self) -> BigInt {
        self.terms
            .get(&vec![0; self.nvars])
            .cloned()
            .unwrap_or_default()
    }

    fn add_term(&mut self, e: Exps, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e.clone()).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        IntPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::from_i64(self.nvars, 1);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Divides out the gcd of the coefficients and makes the leading
    /// coefficient (in the map order) positive.
    pub fn primitive(&self) -> Self {
        let g = self
            .terms
            .values()
            .fold(BigInt::zero(), |acc, c| num_integer::Integer::gcd(&acc, c));
        if g.is_zero() {
            return self.clone();
        }
        let sign = match self.terms.values().next_back() {
            Some(c) if c.is_negative() => -BigInt::one(),
            _ => BigInt::one(),
        };
        IntPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c / &g * &sign))
                .collect(),
        }
    }

    /// Substitutes `x_i = num / den` (with `num` free of `x_i`) and clears the
    /// denominator by multiplying through by `den^deg_i`.
    pub fn substitute(&self, i: usize, num: &IntPoly, den: &BigInt) -> IntPoly {
        let d = self.degree_in(i);
        let mut num_pows = vec![IntPoly::from_i64(self.nvars, 1)];
        for k in 1..=d {
            num_pows.push(&num_pows[k - 1] * num);
        }
        let den_pows: Vec<BigInt> = (0..=d).map(|k| num_traits::pow(den.clone(), k)).collect();
        let mut out = IntPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let k = e[i] as usize;
            let mut rest = e.clone();
            rest[i] = 0;
            let mono = IntPoly {
                nvars: self.nvars,
                terms: [(rest, c * &den_pows[d - k])].into_iter().collect(),
            };
            out = &out + &(&mono * &num_pows[k]);
        }
        out
    }

    /// If `x_i` occurs only in a single term `c * x_i` with integer `c`,
    /// returns `(c, rest)` with `self = c x_i + rest`.
    pub fn linear_in(&self, i: usize) -> Option<(BigInt, IntPoly)> {
        let mut unit = vec![0; self.nvars];
        unit[i] = 1;
        let c = self.terms.get(&unit)?.clone();
        if self.terms.keys().filter(|e| e[i] > 0).count() != 1 {
            return None;
        }
        let mut rest = self.clone();
        rest.terms.remove(&unit);
        Some((c, rest))
    }

    /// Evaluates at `point`, one ring element per variable.
    pub fn eval<R: EvalRing>(&self, point: &[R]) -> R {
        let proto = &point[0];
        let mut powers: Vec<Vec<R>> = (0..self.nvars)
            .map(|_| vec![proto.from_bigint_like(&BigInt::one())])
            .collect();
        let mut acc = proto.zero_like();
        for (e, c) in &self.terms {
            let mut t = proto.from_bigint_like(c);
            for (v, &k) in e.iter().enumerate() {
                let k = k as usize;
                while powers[v].len() <= k {
                    let next = powers[v].last().expect("nonempty").mul_ref(&point[v]);
                    powers[v].push(next);
                }
                if k > 0 {
                    t = t.mul_ref(&powers[v][k]);
                }
            }
            acc = acc.add_ref(&t);
        }
        acc
    }

    /// Evaluates at a point with no variables (constants only).
    pub fn eval_constant<R: EvalRing>(&self, proto: &R) -> R {
        assert_eq!(self.nvars, 0);
        proto.from_bigint_like(&self.constant_term())
    }

    pub fn derivative(&self, i: usize) -> IntPoly {
        let mut out = IntPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut f = e.clone();
            f[i] -= 1;
            out.add_term(f, c * BigInt::from(e[i]));
        }
        out
    }

    /// Renames variables: variable `i` becomes `map[i]` in a ring with
    /// `nvars` variables. Variables mapped to `None` must not occur.
    pub fn remap(&self, map: &[Option<usize>], nvars: usize) -> IntPoly {
        let mut out = IntPoly::zero(nvars);
        for (e, c) in &self.terms {
            let mut f = vec![0; nvars];
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    f[map[i].expect("variable was eliminated")] = k;
                }
            }
            out.add_term(f, c.clone());
        }
        out
    }

    pub fn display_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        names[i].clone()
                    } else {
                        format!("{}^{}", names[i], k)
                    }
                })
                .collect();
            let neg = c.is_negative();
            let mag = c.abs();
            if n == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if mono.is_empty() {
                s.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    s.push_str(&mag.to_string());
                    s.push('*');
                }
                s.push_str(&mono.join("*"));
            }
        }
        s
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        f.write_str(&self.display_with(&names))
    }
}

impl<'a> Add<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;
    fn add(self, o: &IntPoly) -> IntPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;
    fn sub(self, o: &IntPoly) -> IntPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        self.scale(&-BigInt::one())
    }
}

impl<'a> Mul<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;
    fn mul(self, o: &IntPoly) -> IntPoly {
        let mut out = IntPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Exps = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

/// 2x2 matrix of polynomials, row-major.
pub type PolyMat2 = [IntPoly; 4];

pub fn mat2_mul(a: &PolyMat2, b: &PolyMat2) -> PolyMat2 {
    [
        &(&a[0] * &b[0]) + &(&a[1] * &b[2]),
        &(&a[0] * &b[1]) + &(&a[1] * &b[3]),
        &(&a[2] * &b[0]) + &(&a[3] * &b[2]),
        &(&a[2] * &b[1]) + &(&a[3] * &b[3]),
    ]
}

pub fn mat2_identity(nvars: usize) -> PolyMat2 {
    [
        IntPoly::from_i64(nvars, 1),
        IntPoly::zero(nvars),
        IntPoly::zero(nvars),
        IntPoly::from_i64(nvars, 1),
    ]
}

/// Adjugate; the inverse for determinant one.
pub fn mat2_adj(a: &PolyMat2) -> PolyMat2 {
    [a[3].clone(), -&a[1], -&a[2], a[0].clone()]
}
