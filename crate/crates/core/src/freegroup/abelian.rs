use std::collections::BTreeMap;
use std::fmt;

use super::{Presentation, Word};
use crate::error::{Error, Result};

/// Smith normal form `U * A * V = D` of an integer matrix.
#[derive(Clone, Debug)]
pub struct SmithForm {
    /// Nonzero diagonal entries of `D`, each dividing the next, all positive.
    pub invariants: Vec<i64>,
    pub u: Vec<Vec<i64>>,
    pub v: Vec<Vec<i64>>,
    pub d: Vec<Vec<i64>>,
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

/// Smith normal form by elementary row and column operations.
pub fn smith_normal_form(a: &[Vec<i64>], cols: usize) -> SmithForm {
    let rows = a.len();
    let mut d: Vec<Vec<i64>> = a.to_vec();
    let mut u = identity(rows);
    let mut v = identity(cols);

    let row_op = |m: &mut Vec<Vec<i64>>, dst: usize, src: usize, k: i64| {
        for c in 0..m[dst].len() {
            m[dst][c] -= k * m[src][c];
        }
    };
    let col_op = |m: &mut Vec<Vec<i64>>, dst: usize, src: usize, k: i64| {
        for row in m.iter_mut() {
            row[dst] -= k * row[src];
        }
    };

    let mut invariants = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if d[i][j] != 0 && best.is_none_or(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap(t, pi);
        u.swap(t, pi);
        for row in d.iter_mut() {
            row.swap(t, pj);
        }
        for row in v.iter_mut() {
            row.swap(t, pj);
        }

        let mut dirty = false;
        for i in t + 1..rows {
            let k = d[i][t].div_euclid(d[t][t]);
            if k != 0 {
                row_op(&mut d, i, t, k);
                row_op(&mut u, i, t, k);
            }
            dirty |= d[i][t] != 0;
        }
        for j in t + 1..cols {
            let k = d[t][j].div_euclid(d[t][t]);
            if k != 0 {
                col_op(&mut d, j, t, k);
                col_op(&mut v, j, t, k);
            }
            dirty |= d[t][j] != 0;
        }
        if dirty {
            continue;
        }
        // pivot must divide the whole trailing block
        let mut bad_row = None;
        'scan: for i in t + 1..rows {
            for j in t + 1..cols {
                if d[i][j] % d[t][t] != 0 {
                    bad_row = Some(i);
                    break 'scan;
                }
            }
        }
        if let Some(i) = bad_row {
            row_op(&mut d, t, i, -1);
            row_op(&mut u, t, i, -1);
            continue;
        }
        if d[t][t] < 0 {
            for c in 0..rows {
                u[t][c] = -u[t][c];
            }
            for c in 0..cols {
                d[t][c] = -d[t][c];
            }
        }
        invariants.push(d[t][t]);
        t += 1;
    }
    SmithForm {
        invariants,
        u,
        v,
        d,
    }
}

/// Homomorphism `alpha` from the group onto `Z`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AbelianizationMap {
    values: BTreeMap<char, i64>,
    order: Vec<char>,
}

impl AbelianizationMap {
    /// Builds from explicit values; checks that they generate `Z`.
    pub fn new(gens: &[char], values: &[i64]) -> Result<Self> {
        if gens.len() != values.len() {
            return Err(Error::Dimension("one value per generator".into()));
        }
        let g = values.iter().fold(0i64, |acc, &v| num_integer::gcd(acc, v));
        if g != 1 {
            return Err(Error::NotKnotLike(format!("values {values:?} do not generate Z")));
        }
        Ok(AbelianizationMap {
            values: gens.iter().copied().zip(values.iter().copied()).collect(),
            order: gens.to_vec(),
        })
    }

    pub fn get(&self, g: char) -> i64 {
        self.values.get(&g).copied().unwrap_or(0)
    }

    pub fn generators(&self) -> &[char] {
        &self.order
    }

    pub fn values(&self) -> Vec<i64> {
        self.order.iter().map(|&g| self.get(g)).collect()
    }

    pub fn of_word(&self, w: &Word) -> i64 {
        w.letters()
            .iter()
            .map(|l| l.exp as i64 * self.get(l.gen))
            .sum()
    }

    /// Flips all signs.
    pub fn negated(&self) -> Self {
        AbelianizationMap {
            values: self.values.iter().map(|(&g, &v)| (g, -v)).collect(),
            order: self.order.clone(),
        }
    }
}

impl fmt::Display for AbelianizationMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .order
            .iter()
            .map(|&g| format!("{g}={}", self.get(g)))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Abelianization onto `Z`, with the first nonzero value made positive.
///
/// Fails unless the relator exponent matrix has cokernel exactly `Z`.
pub fn abelianization(p: &Presentation) -> Result<AbelianizationMap> {
    let gens = p.generators();
    let n = gens.len();
    if n == 0 {
        return Err(Error::NotKnotLike("no generators".into()));
    }
    let m = p.exponent_matrix();
    let snf = smith_normal_form(&m, n);
    let rank = snf.invariants.len();
    if rank + 1 != n {
        return Err(Error::NotKnotLike(format!(
            "first homology has free rank {}",
            n - rank
        )));
    }
    if let Some(&t) = snf.invariants.iter().find(|&&t| t != 1) {
        return Err(Error::NotKnotLike(format!("first homology has torsion Z/{t}")));
    }
    // rows of the relation lattice r satisfy (r V)_last = 0, so alpha is
    // the last column of V
    let mut alpha: Vec<i64> = snf.v.iter().map(|row| row[n - 1]).collect();
    if alpha.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
        alpha.iter_mut().for_each(|x| *x = -*x);
    }
    let map = AbelianizationMap::new(gens, &alpha)?;
    for r in p.relators() {
        if map.of_word(r) != 0 {
            return Err(Error::Internal(format!(
                "relator {} has nonzero weight",
                r.render()
            )));
        }
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
        let k = b.len();
        let c = b.first().map_or(0, |r| r.len());
        a.iter()
            .map(|row| {
                (0..c)
                    .map(|j| (0..k).map(|i| row[i] * b[i][j]).sum())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn snf_factorisation_holds() {
        let a = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let s = smith_normal_form(&a, 3);
        assert_eq!(s.invariants, vec![2, 6, 12]);
        assert_eq!(mat_mul(&mat_mul(&s.u, &a), &s.v), s.d);
    }

    #[test]
    fn unknot_and_torus_knot() {
        let p = Presentation::from_strs("a", &[]).unwrap();
        assert_eq!(abelianization(&p).unwrap().values(), vec![1]);
        let t = Presentation::from_strs("xy", &["xxYYY"]).unwrap();
        assert_eq!(abelianization(&t).unwrap().values(), vec![3, 2]);
    }

    #[test]
    fn rejects_non_knot_groups() {
        let z2 = Presentation::from_strs("ab", &["aa"]).unwrap();
        assert!(matches!(abelianization(&z2), Err(Error::NotKnotLike(_))));
        let free = Presentation::from_strs("ab", &[]).unwrap();
        assert!(matches!(abelianization(&free), Err(Error::NotKnotLike(_))));
    }
}
