use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{format_rational, parse_rational, RatPoly, Rational};
use crate::error::{Error, Result};

struct FieldData {
    modulus: RatPoly,
    degree: usize,
    // x^(degree + i) mod modulus, as integer numerators over `table_den`
    reduce_table: Vec<Vec<BigInt>>,
    table_den: BigInt,
}

/// The number field `Q[x]/(modulus)` for a monic modulus.
///
/// Irreducibility of the modulus is not checked up front; an attempt to
/// invert a zero divisor reports [`Error::ZeroDivisor`].
#[derive(Clone)]
pub struct NumberField(Arc<FieldData>);

impl NumberField {
    pub fn new(modulus: RatPoly) -> Result<Self> {
        let degree = match modulus.degree() {
            Some(d) if d >= 1 => d,
            _ => {
                return Err(Error::Dimension(
                    "field modulus must have degree >= 1".into(),
                ))
            }
        };
        if !modulus.is_monic() {
            return Err(Error::Dimension("field modulus must be monic".into()));
        }
        let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(degree - 1);
        // x^degree = -sum c_i x^i
        let mut cur: Vec<Rational> = (0..degree).map(|i| -modulus.coeff(i)).collect();
        for _ in 0..degree.saturating_sub(1) {
            rows.push(cur.clone());
            // multiply by x and reduce
            let top = cur[degree - 1].clone();
            let mut next = vec![Rational::zero(); degree];
            for i in (1..degree).rev() {
                next[i] = cur[i - 1].clone();
            }
            for (i, n) in next.iter_mut().enumerate() {
                *n -= &top * modulus.coeff(i);
            }
            cur = next;
        }
        let table_den = rows
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let reduce_table = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|c| (c * Rational::from_integer(table_den.clone())).to_integer())
                    .collect()
            })
            .collect();
        Ok(NumberField(Arc::new(FieldData {
            modulus,
            degree,
            reduce_table,
            table_den,
        })))
    }

    /// Field from integer coefficients listed leading first.
    pub fn from_descending_ints(coeffs: &[i64]) -> Result<Self> {
        let mut c = coeffs.to_vec();
        c.reverse();
        Self::new(RatPoly::from_ints(&c))
    }

    /// `Q` itself, as `Q[x]/(x)`.
    pub fn rationals() -> Self {
        Self::new(RatPoly::from_ints(&[0, 1])).expect("x is monic")
    }

    pub fn modulus(&self) -> &RatPoly {
        &self.0.modulus
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn zero(&self) -> NfElem {
        NfElem {
            field: self.clone(),
            num: vec![BigInt::zero(); self.degree()],
            den: BigInt::one(),
        }
    }

    pub fn one(&self) -> NfElem {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> NfElem {
        self.from_rational(&Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(&self, q: &Rational) -> NfElem {
        let mut e = self.zero();
        e.num[0] = q.numer().clone();
        e.den = q.denom().clone();
        e
    }

    /// The class of `x`, i.e. the generator usually written omega.
    pub fn gen(&self) -> NfElem {
        self.from_poly(&RatPoly::x())
    }

    /// Reduces a rational polynomial modulo the field modulus.
    pub fn from_poly(&self, p: &RatPoly) -> NfElem {
        let r = p.rem(&self.0.modulus).expect("modulus nonzero");
        let coords: Vec<Rational> = (0..self.degree()).map(|i| r.coeff(i)).collect();
        self.from_coords(&coords).expect("length matches degree")
    }

    /// Builds from ascending coordinates `(1, x, ..., x^(deg-1))`.
    pub fn from_coords(&self, coords: &[Rational]) -> Result<NfElem> {
        if coords.len() != self.degree() {
            return Err(Error::Dimension(format!(
                "expected {} coordinates, got {}",
                self.degree(),
                coords.len()
            )));
        }
        let den = coords.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coords
            .iter()
            .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
            .collect();
        let mut e = NfElem {
            field: self.clone(),
            num,
            den,
        };
        e.normalize();
        Ok(e)
    }

    /// Parses the display form: `degree` comma-separated rationals, highest
    /// power first.
    pub fn parse_display(&self, s: &str) -> Result<NfElem> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let mut coords = parts
            .iter()
            .map(|p| parse_rational(p))
            .collect::<Result<Vec<_>>>()?;
        coords.reverse();
        self.from_coords(&coords)
    }

    /// Header line body: modulus coefficients leading first.
    pub fn header(&self) -> String {
        let c = self.modulus().coeffs();
        c.iter()
            .rev()
            .map(format_rational)
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.modulus == other.0.modulus
    }
}

impl Eq for NumberField {}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumberField({})", self.0.modulus)
    }
}

/// Element of a [`NumberField`], stored as integer numerators over a common
/// positive denominator with no common factor.
#[derive(Clone)]
pub struct NfElem {
    field: NumberField,
    num: Vec<BigInt>,
    den: BigInt,
}

impl NfElem {
    pub fn field(&self) -> &NumberField {
        &self.field
    }

    fn normalize(&mut self) {
        if self.num.iter().all(Zero::is_zero) {
            self.den.set_one();
            return;
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for n in &self.num {
            if g.is_one() {
                break;
            }
            if !n.is_zero() {
                g = g.gcd(n);
            }
        }
        if !g.is_one() {
            for n in &mut self.num {
                *n /= &g;
            }
            self.den /= &g;
        }
        if self.den.is_negative() {
            self.den = -&self.den;
            for n in &mut self.num {
                *n = -&*n;
            }
        }
    }

    /// Ascending coordinates `(1, x, ..., x^(deg-1))`.
    pub fn coords(&self) -> Vec<Rational> {
        self.num
            .iter()
            .map(|n| Rational::new(n.clone(), self.den.clone()))
            .collect()
    }

    pub fn coord(&self, i: usize) -> Rational {
        Rational::new(self.num[i].clone(), self.den.clone())
    }

    /// Coordinates in display order, highest power first.
    pub fn display_coords(&self) -> Vec<Rational> {
        let mut c = self.coords();
        c.reverse();
        c
    }

    pub fn to_display_string(&self) -> String {
        self.display_coords()
            .iter()
            .map(format_rational)
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn to_poly(&self) -> RatPoly {
        RatPoly::new(self.coords())
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// The element as a rational, if it lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(self.coord(0))
        } else {
            None
        }
    }

    fn check(&self, other: &NfElem) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn checked_add(&self, other: &NfElem) -> Result<NfElem> {
        self.check(other)?;
        Ok(self.add_unchecked(other, false))
    }

    pub fn checked_sub(&self, other: &NfElem) -> Result<NfElem> {
        self.check(other)?;
        Ok(self.add_unchecked(other, true))
    }

    pub fn checked_mul(&self, other: &NfElem) -> Result<NfElem> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &NfElem, subtract: bool) -> NfElem {
        let (num, den) = if self.den == other.den {
            let num = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| if subtract { a - b } else { a + b })
                .collect();
            (num, self.den.clone())
        } else {
            let num = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| {
                    let l = a * &other.den;
                    let r = b * &self.den;
                    if subtract {
                        l - r
                    } else {
                        l + r
                    }
                })
                .collect();
            (num, &self.den * &other.den)
        };
        let mut e = NfElem {
            field: self.field.clone(),
            num,
            den,
        };
        e.normalize();
        e
    }

    fn mul_unchecked(&self, other: &NfElem) -> NfElem {
        let n = self.field.degree();
        let data = &self.field.0;
        let mut conv = vec![BigInt::zero(); 2 * n - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    conv[i + j] += a * b;
                }
            }
        }
        let trivial_den = data.table_den.is_one();
        let mut num: Vec<BigInt> = if trivial_den {
            conv[..n].to_vec()
        } else {
            conv[..n].iter().map(|c| c * &data.table_den).collect()
        };
        for (k, c) in conv[n..].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (slot, t) in num.iter_mut().zip(&data.reduce_table[k]) {
                if !t.is_zero() {
                    *slot += c * t;
                }
            }
        }
        let mut den = &self.den * &other.den;
        if !trivial_den {
            den *= &data.table_den;
        }
        let mut e = NfElem {
            field: self.field.clone(),
            num,
            den,
        };
        e.normalize();
        e
    }

    pub fn scale_int(&self, k: &BigInt) -> NfElem {
        let mut e = NfElem {
            field: self.field.clone(),
            num: self.num.iter().map(|n| n * k).collect(),
            den: self.den.clone(),
        };
        e.normalize();
        e
    }

    pub fn scale(&self, q: &Rational) -> NfElem {
        let mut e = NfElem {
            field: self.field.clone(),
            num: self.num.iter().map(|n| n * q.numer()).collect(),
            den: &self.den * q.denom(),
        };
        e.normalize();
        e
    }

    /// Multiplicative inverse by extended Euclid against the modulus.
    pub fn inv(&self) -> Result<NfElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(self.field.from_rational(&q.recip()));
        }
        let (g, s, _) = self.to_poly().ext_gcd(self.field.modulus());
        if g.degree() != Some(0) {
            return Err(Error::ZeroDivisor);
        }
        Ok(self.field.from_poly(&s))
    }

    pub fn checked_div(&self, other: &NfElem) -> Result<NfElem> {
        self.check(other)?;
        Ok(self.mul_unchecked(&other.inv()?))
    }

    pub fn pow(&self, mut e: u64) -> NfElem {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Integer power, negative exponents through the inverse.
    pub fn powi(&self, e: i64) -> Result<NfElem> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    /// Rational matrix of multiplication by `self` on the power basis;
    /// column `j` holds the coordinates of `self * x^j`.
    pub fn mult_matrix(&self) -> Vec<Vec<Rational>> {
        let n = self.field.degree();
        let x = self.field.gen();
        let mut cols = Vec::with_capacity(n);
        let mut cur = self.clone();
        for _ in 0..n {
            cols.push(cur.coords());
            cur = &cur * &x;
        }
        (0..n)
            .map(|i| (0..n).map(|j| cols[j][i].clone()).collect())
            .collect()
    }
}

impl PartialEq for NfElem {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.den == other.den && self.num == other.num
    }
}

impl Eq for NfElem {}

impl Hash for NfElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl fmt::Debug for NfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.to_display_string())
    }
}

impl fmt::Display for NfElem {
    /// Polynomial in `w` (omega), highest power first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.to_poly().to_string();
        write!(f, "{}", s.replace('x', "w"))
    }
}

impl<'a> Add<&'a NfElem> for &'a NfElem {
    type Output = NfElem;
    fn add(self, o: &NfElem) -> NfElem {
        self.checked_add(o).expect("number field mismatch")
    }
}

impl<'a> Sub<&'a NfElem> for &'a NfElem {
    type Output = NfElem;
    fn sub(self, o: &NfElem) -> NfElem {
        self.checked_sub(o).expect("number field mismatch")
    }
}

impl<'a> Mul<&'a NfElem> for &'a NfElem {
    type Output = NfElem;
    fn mul(self, o: &NfElem) -> NfElem {
        self.checked_mul(o).expect("number field mismatch")
    }
}

impl Neg for &NfElem {
    type Output = NfElem;
    fn neg(self) -> NfElem {
        NfElem {
            field: self.field.clone(),
            num: self.num.iter().map(|n| -n).collect(),
            den: self.den.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    fn gaussian() -> NumberField {
        NumberField::new(RatPoly::from_ints(&[1, 0, 1])).unwrap()
    }

    pub(crate) fn paper_field() -> NumberField {
        NumberField::from_descending_ints(&[1, -1, 3, -4, 5, -8, 8, -5, 6, -5, 2, -1]).unwrap()
    }

    #[test]
    fn i_squared_is_minus_one() {
        let k = gaussian();
        let x = k.gen();
        assert_eq!(&x * &x, k.from_int(-1));
        assert_eq!(&x + &k.zero(), x);
    }

    #[test]
    fn inverse_of_one_plus_i() {
        let k = gaussian();
        let e = &k.one() + &k.gen();
        let inv = e.inv().unwrap();
        let expected = k
            .from_coords(&[crate::exactalg::rat_frac(1, 2), crate::exactalg::rat_frac(-1, 2)])
            .unwrap();
        assert_eq!(inv, expected);
        assert_eq!(k.one().inv().unwrap(), k.one());
        assert_eq!(k.zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn reduction_in_degree_eleven_field() {
        let k = paper_field();
        let w = k.gen();
        let w10 = w.pow(10);
        // w^11 = w^10 - 3w^9 + 4w^8 - 5w^7 + 8w^6 - 8w^5 + 5w^4 - 6w^3 + 5w^2 - 2w + 1
        let expected = k
            .parse_display("1,-3,4,-5,8,-8,5,-6,5,-2,1")
            .unwrap();
        assert_eq!(&w10 * &w, expected);
        let winv = w.inv().unwrap();
        assert!((&w * &winv).is_one());
    }

    #[test]
    fn reducible_modulus_reports_zero_divisor() {
        // x^2 - 1 = (x-1)(x+1)
        let k = NumberField::new(RatPoly::from_ints(&[-1, 0, 1])).unwrap();
        let e = &k.gen() - &k.one();
        assert_eq!(e.inv(), Err(Error::ZeroDivisor));
    }

    #[test]
    fn field_mismatch_is_an_error() {
        let a = gaussian().gen();
        let b = paper_field().gen();
        assert_eq!(a.checked_add(&b), Err(Error::FieldMismatch));
    }

    #[test]
    fn rational_modulus_reduces_correctly() {
        // x^2 - 1/2
        let k = NumberField::new(RatPoly::new(vec![crate::exactalg::rat_frac(-1, 2), rat(0), rat(1)]))
            .unwrap();
        let x = k.gen();
        assert_eq!(&x * &x, k.from_rational(&crate::exactalg::rat_frac(1, 2)));
        let x3 = x.pow(3);
        assert_eq!(x3, x.scale(&crate::exactalg::rat_frac(1, 2)));
    }

    #[test]
    fn display_round_trip() {
        let k = paper_field();
        let e = k.parse_display("356,-620,636,-864,1228,-1080,780,-628,428,-188,124").unwrap();
        assert_eq!(e.to_display_string(), "356,-620,636,-864,1228,-1080,780,-628,428,-188,124");
        assert_eq!(e.coord(0), rat(124));
    }
}
