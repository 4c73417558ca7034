use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{NfElem, NfPoly, NumberField, Rational};
use crate::error::{Error, Result};

/// Minimal integral-domain interface used by the generic matrix routines.
///
/// Elements of number fields need their field to produce constants, hence
/// the `*_like` constructors instead of associated constants.
pub trait Domain: Clone + PartialEq {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add_elem(&self, o: &Self) -> Self;
    fn sub_elem(&self, o: &Self) -> Self;
    fn mul_elem(&self, o: &Self) -> Self;
    fn neg_elem(&self) -> Self;
    /// `self / d`, required to be exact.
    fn div_exact_elem(&self, d: &Self) -> Result<Self>;
}

impl Domain for NfElem {
    fn zero_like(&self) -> Self {
        self.field().zero()
    }
    fn one_like(&self) -> Self {
        self.field().one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_elem(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_elem(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_elem(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_elem(&self) -> Self {
        -self
    }
    fn div_exact_elem(&self, d: &Self) -> Result<Self> {
        self.checked_div(d)
    }
}

impl Domain for NfPoly {
    fn zero_like(&self) -> Self {
        NfPoly::zero(self.field())
    }
    fn one_like(&self) -> Self {
        NfPoly::one(self.field())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_elem(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_elem(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_elem(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_elem(&self) -> Self {
        -self
    }
    fn div_exact_elem(&self, d: &Self) -> Result<Self> {
        self.div_exact(d)?
            .ok_or_else(|| Error::Internal("inexact polynomial division".into()))
    }
}

impl Domain for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_elem(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_elem(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_elem(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_elem(&self) -> Self {
        -self
    }
    fn div_exact_elem(&self, d: &Self) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self / d)
    }
}

impl Domain for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_elem(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_elem(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_elem(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_elem(&self) -> Self {
        -self
    }
    fn div_exact_elem(&self, d: &Self) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (q, r) = num_integer::Integer::div_rem(self, d);
        if !r.is_zero() {
            return Err(Error::Internal("inexact integer division".into()));
        }
        Ok(q)
    }
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type NfMatrix = Matrix<NfElem>;
pub type NfPolyMatrix = Matrix<NfPoly>;

impl<T: Clone> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<U: Clone>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Submatrix keeping the listed rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }
}

impl<T: Domain> Matrix<T> {
    pub fn mul(&self, o: &Matrix<T>, zero: &T) -> Result<Matrix<T>> {
        if self.cols != o.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(Matrix::from_fn(self.rows, o.cols, |i, j| {
            let mut acc = zero.clone();
            for k in 0..self.cols {
                let a = self.get(i, k);
                let b = o.get(k, j);
                if !a.is_zero_elem() && !b.is_zero_elem() {
                    acc = acc.add_elem(&a.mul_elem(b));
                }
            }
            acc
        }))
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(Domain::is_zero_elem)
    }
}

/// Determinant by fraction-free (Bareiss) elimination over an integral
/// domain. `one` supplies the unit for the empty matrix.
pub fn det_bareiss<T: Domain>(m: &Matrix<T>, one: &T) -> Result<T> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    if n == 0 {
        return Ok(one.clone());
    }
    let mut a = m.clone();
    let mut prev = one.clone();
    let mut negate = false;
    for k in 0..n - 1 {
        if a.get(k, k).is_zero_elem() {
            let Some(p) = (k + 1..n).find(|&i| !a.get(i, k).is_zero_elem()) else {
                return Ok(one.zero_like());
            };
            a.swap_rows(k, p);
            negate = !negate;
        }
        let pivot = a.get(k, k).clone();
        for i in k + 1..n {
            let aik = a.get(i, k).clone();
            for j in k + 1..n {
                let lhs = pivot.mul_elem(a.get(i, j));
                let v = if aik.is_zero_elem() {
                    lhs
                } else {
                    lhs.sub_elem(&aik.mul_elem(a.get(k, j)))
                };
                let v = if k == 0 { v } else { v.div_exact_elem(&prev)? };
                a.set(i, j, v);
            }
            a.set(i, k, one.zero_like());
        }
        prev = pivot;
    }
    let d = a.get(n - 1, n - 1).clone();
    Ok(if negate { d.neg_elem() } else { d })
}

impl Matrix<NfElem> {
    pub fn identity(field: &NumberField, n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { field.one() } else { field.zero() })
    }

    pub fn zeros(field: &NumberField, rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| field.zero())
    }

    pub fn scale(&self, c: &NfElem) -> Self {
        self.map(|x| x * c)
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::Dimension("matrix sum shape mismatch".into()));
        }
        Ok(Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) + o.get(i, j)))
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::Dimension("matrix difference shape mismatch".into()));
        }
        Ok(Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) - o.get(i, j)))
    }

    pub fn matmul(&self, o: &Self) -> Result<Self> {
        let zero = match self.data.first().or(o.data.first()) {
            Some(e) => e.zero_like(),
            None => return Matrix::new(self.rows, o.cols, Vec::new()),
        };
        self.mul(o, &zero)
    }

    pub fn trace(&self) -> Result<NfElem> {
        if !self.is_square() || self.rows == 0 {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut acc = self.get(0, 0).clone();
        for i in 1..self.rows {
            acc = &acc + self.get(i, i);
        }
        Ok(acc)
    }

    /// Determinant by Gaussian elimination over the field.
    pub fn det(&self, field: &NumberField) -> Result<NfElem> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = field.one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a.get(i, k).is_zero()) else {
                return Ok(field.zero());
            };
            if p != k {
                a.swap_rows(k, p);
                det = -&det;
            }
            let pivot = a.get(k, k).clone();
            det = &det * &pivot;
            let inv = pivot.inv()?;
            for i in k + 1..n {
                if a.get(i, k).is_zero() {
                    continue;
                }
                let f = a.get(i, k) * &inv;
                for j in k + 1..n {
                    let v = a.get(i, j) - &(&f * a.get(k, j));
                    a.set(i, j, v);
                }
                a.set(i, k, field.zero());
            }
        }
        Ok(det)
    }

    /// Reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Result<Vec<usize>> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self.get(r, c).inv()?;
            for j in c..self.cols {
                let v = self.get(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r || self.get(i, c).is_zero() {
                    continue;
                }
                let f = self.get(i, c).clone();
                for j in c..self.cols {
                    let v = self.get(i, j) - &(&f * self.get(r, j));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Ok(pivots)
    }

    /// Row rank by exact elimination.
    pub fn rank(&self) -> Result<usize> {
        Ok(self.clone().rref()?.len())
    }

    /// Basis of the right kernel `{v : M v = 0}`, one vector per free column.
    pub fn kernel_basis(&self, field: &NumberField) -> Result<Vec<Vec<NfElem>>> {
        let mut a = self.clone();
        let pivots = a.rref()?;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        Ok(free
            .iter()
            .map(|&f| {
                let mut v = vec![field.zero(); self.cols];
                v[f] = field.one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -a.get(r, f);
                }
                v
            })
            .collect())
    }

    pub fn apply(&self, v: &[NfElem], field: &NumberField) -> Vec<NfElem> {
        (0..self.rows)
            .map(|i| {
                let mut acc = field.zero();
                for (j, x) in v.iter().enumerate() {
                    if !x.is_zero() && !self.get(i, j).is_zero() {
                        acc = &acc + &(self.get(i, j) * x);
                    }
                }
                acc
            })
            .collect()
    }
}

impl Matrix<NfPoly> {
    /// Exact determinant by Bareiss elimination.
    pub fn det(&self, field: &NumberField) -> Result<NfPoly> {
        det_bareiss(self, &NfPoly::one(field))
    }

    pub fn eval(&self, t0: &NfElem) -> NfMatrix {
        self.map(|p| p.eval(t0))
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[i * self.cols..(i + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, RatPoly};

    fn qi() -> NumberField {
        NumberField::new(RatPoly::from_ints(&[1, 0, 1])).unwrap()
    }

    #[test]
    fn bareiss_small_cases() {
        let k = qi();
        let t = NfPoly::from_ints(&k, &[0, 1]);
        let one = NfPoly::one(&k);
        let m = Matrix::from_rows(vec![vec![t.clone(), one.clone()], vec![one.clone(), t]]).unwrap();
        assert_eq!(m.det(&k).unwrap(), NfPoly::from_ints(&k, &[-1, 0, 1]));
        let id = Matrix::from_fn(5, 5, |i, j| if i == j { one.clone() } else { NfPoly::zero(&k) });
        assert_eq!(id.det(&k).unwrap(), one);
        let empty: NfPolyMatrix = Matrix::new(0, 0, vec![]).unwrap();
        assert_eq!(empty.det(&k).unwrap(), one);
    }

    #[test]
    fn bareiss_needs_pivoting() {
        let m = Matrix::from_rows(vec![
            vec![rat(0), rat(1), rat(2)],
            vec![rat(1), rat(0), rat(3)],
            vec![rat(4), rat(-3), rat(8)],
        ])
        .unwrap();
        assert_eq!(det_bareiss(&m, &rat(1)).unwrap(), rat(-2));
        let ints = m.map(|q| q.to_integer());
        assert_eq!(det_bareiss(&ints, &BigInt::one()).unwrap(), BigInt::from(-2));
    }

    #[test]
    fn non_square_rejected() {
        let k = qi();
        let m = NfMatrix::zeros(&k, 2, 3);
        assert!(matches!(m.det(&k), Err(Error::NotSquare { .. })));
        let pm = m.map(|e| NfPoly::constant(e.clone()));
        assert!(matches!(pm.det(&k), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn rank_examples() {
        let k = qi();
        assert_eq!(NfMatrix::zeros(&k, 3, 4).rank().unwrap(), 0);
        assert_eq!(NfMatrix::identity(&k, 4).rank().unwrap(), 4);
        let w = k.gen();
        let m = Matrix::from_rows(vec![vec![k.one(), w.clone()], vec![w.clone(), &w * &w]]).unwrap();
        assert_eq!(m.rank().unwrap(), 1);
    }

    #[test]
    fn kernel_complements_rank() {
        let k = qi();
        let w = k.gen();
        let m = Matrix::from_rows(vec![
            vec![k.one(), w.clone(), k.from_int(2), k.zero()],
            vec![w.clone(), k.from_int(-1), &w + &w, k.zero()],
            vec![k.zero(), k.one(), k.zero(), k.one()],
        ])
        .unwrap();
        let ker = m.kernel_basis(&k).unwrap();
        assert_eq!(m.rank().unwrap() + ker.len(), 4);
        for v in ker {
            assert!(m.apply(&v, &k).iter().all(NfElem::is_zero));
        }
    }

    #[test]
    fn field_det_matches_bareiss() {
        let k = qi();
        let w = k.gen();
        let m = Matrix::from_rows(vec![
            vec![w.clone(), k.from_int(3), k.one()],
            vec![k.from_int(2), &w + &k.one(), k.zero()],
            vec![k.zero(), w.clone(), k.from_int(-5)],
        ])
        .unwrap();
        assert_eq!(m.det(&k).unwrap(), det_bareiss(&m, &k.one()).unwrap());
    }
}
