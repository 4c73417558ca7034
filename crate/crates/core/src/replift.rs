//! SL(2) representations over a number field and their symmetric powers.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use crate::exactalg::{parse_rational, NfElem, NfMatrix, NumberField, RatPoly};
use crate::freegroup::{AbelianizationMap, Presentation, Word};
use crate::error::{Error, Result};

/// Which lift of the holonomy: trace of the meridian `+2` or `-2`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub enum LiftSign {
    Plus,
    Minus,
}

impl LiftSign {
    pub fn t0(self) -> i64 {
        match self {
            LiftSign::Plus => 1,
            LiftSign::Minus => -1,
        }
    }
}

impl fmt::Display for LiftSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LiftSign::Plus => "plus",
            LiftSign::Minus => "minus",
        })
    }
}

impl std::str::FromStr for LiftSign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plus" | "+" => Ok(LiftSign::Plus),
            "minus" | "-" => Ok(LiftSign::Minus),
            _ => Err(Error::InvalidRepresentation(format!("unknown lift {s:?}"))),
        }
    }
}

/// Inverse of a determinant-one 2x2 matrix.
pub fn sl2_inverse(m: &NfMatrix) -> NfMatrix {
    let (p, q, r, s) = (m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1));
    NfMatrix::from_rows(vec![vec![s.clone(), -q], vec![-r, p.clone()]]).expect("2x2")
}

fn mat2_mul(a: &NfMatrix, b: &NfMatrix) -> NfMatrix {
    a.matmul(b).expect("2x2 shapes")
}

/// Assignment of 2x2 matrices to the generators of a presentation.
#[derive(Clone, Debug, PartialEq)]
pub struct Representation {
    field: NumberField,
    presentation: Presentation,
    images: BTreeMap<char, NfMatrix>,
    meridian: Option<Word>,
}

impl Representation {
    pub fn new(
        presentation: &Presentation,
        field: &NumberField,
        images: BTreeMap<char, NfMatrix>,
        meridian: Option<Word>,
    ) -> Result<Self> {
        for &g in presentation.generators() {
            let m = images
                .get(&g)
                .ok_or_else(|| Error::InvalidRepresentation(format!("no image for {g}")))?;
            if m.rows() != 2 || m.cols() != 2 {
                return Err(Error::InvalidRepresentation(format!("image of {g} is not 2x2")));
            }
            if m.entries().iter().any(|e| e.field() != field) {
                return Err(Error::FieldMismatch);
            }
        }
        if let Some(g) = images.keys().find(|g| presentation.generator_index(**g).is_none()) {
            return Err(Error::UndeclaredGenerator(*g));
        }
        if let Some(w) = &meridian {
            presentation.check_word(w)?;
        }
        Ok(Representation {
            field: field.clone(),
            presentation: presentation.clone(),
            images,
            meridian,
        })
    }

    /// Every generator sent to the identity.
    pub fn trivial(presentation: &Presentation, field: &NumberField) -> Self {
        let images = presentation
            .generators()
            .iter()
            .map(|&g| (g, NfMatrix::identity(field, 2)))
            .collect();
        Representation {
            field: field.clone(),
            presentation: presentation.clone(),
            images,
            meridian: None,
        }
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn image(&self, g: char) -> Result<&NfMatrix> {
        self.images.get(&g).ok_or(Error::UndeclaredGenerator(g))
    }

    pub fn images(&self) -> &BTreeMap<char, NfMatrix> {
        &self.images
    }

    pub fn meridian(&self) -> Option<&Word> {
        self.meridian.as_ref()
    }

    pub fn with_meridian(mut self, w: Option<Word>) -> Result<Self> {
        if let Some(w) = &w {
            self.presentation.check_word(w)?;
        }
        self.meridian = w;
        Ok(self)
    }

    /// Same images, attached to another presentation on the same generators
    /// (or a superset, with extra images supplied).
    pub fn rebind(&self, p: &Presentation, extra: BTreeMap<char, NfMatrix>) -> Result<Self> {
        let mut images: BTreeMap<char, NfMatrix> = self
            .images
            .iter()
            .filter(|(g, _)| p.generator_index(**g).is_some())
            .map(|(g, m)| (*g, m.clone()))
            .collect();
        images.extend(extra);
        Representation::new(p, &self.field, images, self.meridian.clone())
    }

    pub fn word_image(&self, w: &Word) -> Result<NfMatrix> {
        let mut acc = NfMatrix::identity(&self.field, 2);
        for l in w.letters() {
            let m = self.image(l.gen)?;
            acc = if l.exp > 0 {
                mat2_mul(&acc, m)
            } else {
                mat2_mul(&acc, &sl2_inverse(m))
            };
        }
        Ok(acc)
    }

    pub fn trace_of(&self, w: &Word) -> Result<NfElem> {
        self.word_image(w)?.trace()
    }

    /// Multiplies `rho(g)` by `(-1)^alpha(g)`.
    pub fn epsilon_twist(&self, alpha: &AbelianizationMap) -> Representation {
        let images = self
            .images
            .iter()
            .map(|(&g, m)| {
                if alpha.get(g).rem_euclid(2) == 1 {
                    (g, m.scale(&self.field.from_int(-1)))
                } else {
                    (g, m.clone())
                }
            })
            .collect();
        Representation {
            field: self.field.clone(),
            presentation: self.presentation.clone(),
            images,
            meridian: self.meridian.clone(),
        }
    }

    /// Representation file text; entries are listed in display order.
    pub fn to_text(&self) -> String {
        let mut s = format!("field: {}\n", self.field.header());
        for (g, m) in &self.images {
            s.push_str(&format!("gen {g}:"));
            for e in m.entries() {
                s.push(' ');
                s.push_str(&e.to_display_string());
            }
            s.push('\n');
        }
        if let Some(w) = &self.meridian {
            s.push_str(&format!("meridian: {}\n", w.render()));
        }
        s
    }

    pub fn parse_text(text: &str, presentation: &Presentation) -> Result<Self> {
        let mut field: Option<NumberField> = None;
        let mut images = BTreeMap::new();
        let mut meridian = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |msg: String| Error::FileFormat { line: line_no, msg };
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| bad(format!("expected `key: value`, found {line:?}")))?;
            let key = key.trim();
            if key == "field" {
                let coeffs = value
                    .split_whitespace()
                    .map(parse_rational)
                    .collect::<Result<Vec<_>>>()
                    .map_err(|e| bad(e.to_string()))?;
                let m = RatPoly::from_descending(coeffs);
                field = Some(NumberField::new(m).map_err(|e| bad(e.to_string()))?);
            } else if key == "meridian" {
                meridian = Some(Word::parse(value.trim()).map_err(|e| bad(e.to_string()))?);
            } else if let Some(g) = key.strip_prefix("gen") {
                let k = field
                    .as_ref()
                    .ok_or_else(|| bad("gen line before field line".into()))?;
                let mut gc = g.trim().chars();
                let g = match (gc.next(), gc.next()) {
                    (Some(c), None) if c.is_ascii_lowercase() => c,
                    _ => return Err(bad(format!("bad generator name {:?}", g.trim()))),
                };
                let toks: Vec<&str> = value
                    .split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|t| !t.is_empty())
                    .collect();
                let deg = k.degree();
                if toks.len() != 4 * deg {
                    return Err(bad(format!(
                        "expected 4 entries of {deg} coordinates, found {} numbers",
                        toks.len()
                    )));
                }
                let mut entries = Vec::with_capacity(4);
                for chunk in toks.chunks(deg) {
                    let mut c = chunk
                        .iter()
                        .map(|t| parse_rational(t))
                        .collect::<Result<Vec<_>>>()
                        .map_err(|e| bad(e.to_string()))?;
                    c.reverse();
                    entries.push(k.from_coords(&c)?);
                }
                if images.insert(g, NfMatrix::new(2, 2, entries)?).is_some() {
                    return Err(bad(format!("generator {g} given twice")));
                }
            } else {
                return Err(bad(format!("unknown key {key:?}")));
            }
        }
        let field = field.ok_or(Error::FileFormat {
            line: 0,
            msg: "missing field line".into(),
        })?;
        Representation::new(presentation, &field, images, meridian)
    }

    pub fn read(path: impl AsRef<Path>, presentation: &Presentation) -> Result<Self> {
        Self::parse_text(&std::fs::read_to_string(path)?, presentation)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }
}

/// Outcome for a single relator.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RelatorStatus {
    Identity,
    /// Lands on `-I`: a PSL(2) representation that does not lift here.
    MinusIdentity,
    Fails,
}

#[derive(Clone, Debug)]
pub struct RepCheck {
    pub determinants: Vec<(char, bool)>,
    pub relators: Vec<(Word, RelatorStatus)>,
}

impl RepCheck {
    pub fn passed(&self) -> bool {
        self.determinants.iter().all(|(_, ok)| *ok)
            && self
                .relators
                .iter()
                .all(|(_, s)| *s == RelatorStatus::Identity)
    }

    pub fn psl_only(&self) -> bool {
        self.relators
            .iter()
            .any(|(_, s)| *s == RelatorStatus::MinusIdentity)
    }
}

impl fmt::Display for RepCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (g, ok) in &self.determinants {
            writeln!(f, "det {g}\t{}", if *ok { "ok" } else { "FAIL" })?;
        }
        for (r, s) in &self.relators {
            let tag = match s {
                RelatorStatus::Identity => "ok",
                RelatorStatus::MinusIdentity => "FAIL (-I, PSL only)",
                RelatorStatus::Fails => "FAIL",
            };
            writeln!(f, "rel {}\t{tag}", r.render())?;
        }
        write!(f, "{}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

/// Checks `det = 1` on generators and `relator = I` exactly.
pub fn check_representation(p: &Presentation, r: &Representation) -> Result<RepCheck> {
    let k = r.field();
    let one = k.one();
    let id = NfMatrix::identity(k, 2);
    let minus = id.scale(&k.from_int(-1));
    let mut determinants = Vec::new();
    for &g in p.generators() {
        let m = r.image(g)?;
        determinants.push((g, m.det(k)? == one));
    }
    let mut relators = Vec::new();
    for w in p.relators() {
        let m = r.word_image(w)?;
        let status = if m == id {
            RelatorStatus::Identity
        } else if m == minus {
            RelatorStatus::MinusIdentity
        } else {
            RelatorStatus::Fails
        };
        relators.push((w.clone(), status));
    }
    Ok(RepCheck {
        determinants,
        relators,
    })
}

/// Coefficients in `y` of `(a + b y)^e` as a vector.
fn binom_power(a: &NfElem, b: &NfElem, e: usize) -> Vec<NfElem> {
    let k = a.field();
    let mut out = vec![k.one()];
    for _ in 0..e {
        let mut next = vec![k.zero(); out.len() + 1];
        for (i, c) in out.iter().enumerate() {
            next[i] = &next[i] + &(c * a);
            next[i + 1] = &next[i + 1] + &(c * b);
        }
        out = next;
    }
    out
}

/// The `dim`-dimensional irreducible representation applied to `m`.
///
/// Basis `e1^(d-1), e1^(d-2) e2, ..., e2^(d-1)`, with `m e_j = sum_i m_ij e_i`.
pub fn sym_power(m: &NfMatrix, dim: usize) -> Result<NfMatrix> {
    if dim < 1 {
        return Err(Error::Dimension("symmetric power dimension must be at least 1".into()));
    }
    if m.rows() != 2 || m.cols() != 2 {
        return Err(Error::Dimension("sym_power expects a 2x2 matrix".into()));
    }
    let k = m.get(0, 0).field().clone();
    let n = dim - 1;
    let mut out = NfMatrix::zeros(&k, dim, dim);
    for col in 0..dim {
        // image of e1^(n-col) e2^col
        let u = binom_power(m.get(0, 0), m.get(1, 0), n - col);
        let v = binom_power(m.get(0, 1), m.get(1, 1), col);
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let cur = out.get(i + j, col) + &(a * b);
                out.set(i + j, col, cur);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qi() -> NumberField {
        NumberField::new(RatPoly::from_ints(&[1, 0, 1])).unwrap()
    }

    fn m2(k: &NumberField, a: [i64; 4]) -> NfMatrix {
        NfMatrix::new(2, 2, a.iter().map(|&x| k.from_int(x)).collect()).unwrap()
    }

    #[test]
    fn sym_power_small_cases() {
        let k = qi();
        let m = m2(&k, [2, 3, 1, 2]);
        assert_eq!(sym_power(&m, 2).unwrap(), m);
        let lam = k.from_int(3);
        let li = lam.inv().unwrap();
        let d = NfMatrix::from_rows(vec![vec![lam.clone(), k.zero()], vec![k.zero(), li.clone()]])
            .unwrap();
        let s = sym_power(&d, 4).unwrap();
        let expect = [lam.pow(3), lam.clone(), li.clone(), li.pow(3)];
        for i in 0..4 {
            for j in 0..4 {
                let e = if i == j { expect[i].clone() } else { k.zero() };
                assert_eq!(s.get(i, j), &e);
            }
        }
        let u = m2(&k, [1, 1, 0, 1]);
        let su = sym_power(&u, 4).unwrap();
        assert_eq!(su.get(0, 3), &k.from_int(1));
        assert_eq!(su.get(1, 3), &k.from_int(3));
        assert_eq!(su.get(2, 3), &k.from_int(3));
        assert_eq!(su.get(1, 2), &k.from_int(2));
        assert!(su.get(3, 0).is_zero());
        let prod = su.matmul(&sym_power(&sl2_inverse(&u), 4).unwrap()).unwrap();
        assert_eq!(prod, NfMatrix::identity(&k, 4));
        assert!(sym_power(&u, 0).is_err());
    }

    #[test]
    fn file_round_trip_and_psl_diagnostic() {
        let k = qi();
        let p = Presentation::from_strs("ab", &["abAB"]).unwrap();
        let mut images = BTreeMap::new();
        // a = [[i,0],[0,-i]], b = [[0,1],[-1,0]] anticommute
        let i = k.gen();
        let a = NfMatrix::from_rows(vec![vec![i.clone(), k.zero()], vec![k.zero(), -&i]]).unwrap();
        images.insert('a', a);
        images.insert('b', m2(&k, [0, 1, -1, 0]));
        let r = Representation::new(&p, &k, images, Some(Word::parse("a").unwrap())).unwrap();
        let chk = check_representation(&p, &r).unwrap();
        assert!(!chk.passed());
        assert!(chk.psl_only());
        let back = Representation::parse_text(&r.to_text(), &p).unwrap();
        assert_eq!(back, r);
        assert_eq!(r.trace_of(&Word::identity()).unwrap(), k.from_int(2));
    }

    #[test]
    fn trivial_rep_passes() {
        let k = qi();
        let p = Presentation::from_strs("abc", &["abACbcbacBCABaBc"]).unwrap();
        let r = Representation::trivial(&p, &k);
        assert!(check_representation(&p, &r).unwrap().passed());
    }
}
