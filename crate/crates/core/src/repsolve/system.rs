use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use super::mpoly::{mat2_adj, mat2_identity, mat2_mul, EvalRing, IntPoly, PolyMat2};
use crate::error::{Error, Result};
use crate::exactalg::{NfElem, NfMatrix, NumberField, Rational};
use crate::freegroup::{abelianization, Letter, Presentation, Word};
use crate::replift::sl2_inverse;

/// Letters tried, in order, for a fresh meridian generator.
const FRESH: &str = "mzyxwvutsrqponlkjihgfedcba";

/// What to solve for: a presentation, a generator pinned to `[[1,1],[0,1]]`,
/// and trace constraints.
///
/// When the meridian is a longer word, one generator occurring once in it
/// is traded for a fresh generator standing for the meridian itself, so the
/// working presentation may differ from the original one.
#[derive(Clone, Debug)]
pub struct SolveSpec {
    original: Presentation,
    working: Presentation,
    pinned: char,
    normalized: Option<char>,
    constraints: Vec<(Word, Rational)>,
    recover: Vec<(char, Word)>,
    meridian: Option<Word>,
}

impl SolveSpec {
    /// Pins `pinned` and imposes the listed traces. Everything stays in the
    /// original letters.
    pub fn new(p: &Presentation, pinned: char, constraints: Vec<(Word, Rational)>) -> Result<Self> {
        if p.generator_index(pinned).is_none() {
            return Err(Error::UndeclaredGenerator(pinned));
        }
        let alpha = abelianization(p)?;
        if alpha.get(pinned).abs() != 1 {
            return Err(Error::SolveSetup(format!(
                "pinned generator {pinned} has alpha = {}, expected +-1",
                alpha.get(pinned)
            )));
        }
        for (w, _) in &constraints {
            if w.free_reduce().is_empty() {
                return Err(Error::SolveSetup("empty constraint word".into()));
            }
            p.check_word(w)?;
        }
        let spec = SolveSpec {
            original: p.clone(),
            working: p.clone(),
            pinned,
            normalized: second_generator(p, pinned),
            constraints,
            recover: Vec::new(),
            meridian: Some(Word::gen(pinned)),
        };
        spec.check_pin_used()?;
        Ok(spec)
    }

    /// Trace 2 on every generator with `|alpha| = 1`, the first of them
    /// pinned.
    pub fn default_policy(p: &Presentation) -> Result<Self> {
        let alpha = abelianization(p)?;
        let unit: Vec<char> = p
            .generators()
            .iter()
            .copied()
            .filter(|&g| alpha.get(g).abs() == 1)
            .collect();
        let Some(&pinned) = unit.first() else {
            return Err(Error::SolveSetup(
                "no generator has alpha = +-1; pass --meridian WORD".into(),
            ));
        };
        let two = Rational::from_integer(BigInt::from(2));
        let constraints = unit.iter().map(|&g| (Word::gen(g), two.clone())).collect();
        Self::new(p, pinned, constraints)
    }

    /// The meridian word `w` is sent to `[[1,1],[0,1]]`.
    pub fn with_meridian(p: &Presentation, w: &Word) -> Result<Self> {
        p.check_word(w)?;
        let w = w.free_reduce();
        if w.is_empty() {
            return Err(Error::SolveSetup("empty meridian word".into()));
        }
        let alpha = abelianization(p)?;
        if alpha.of_word(&w).abs() != 1 {
            return Err(Error::SolveSetup(format!(
                "meridian {} has alpha = {}, expected +-1",
                w.render(),
                alpha.of_word(&w)
            )));
        }
        let two = Rational::from_integer(BigInt::from(2));
        let constraints = vec![(w.clone(), two)];
        let letters = w.letters();
        if letters.len() == 1 && letters[0].exp == 1 {
            let mut spec = Self::new(p, letters[0].gen, constraints)?;
            spec.meridian = Some(w);
            return Ok(spec);
        }
        let gens = p.generators();
        let z = FRESH
            .chars()
            .find(|c| !gens.contains(c))
            .ok_or_else(|| Error::SolveSetup("no free letter for the meridian".into()))?;
        // among letters occurring once in w, trade the one least used by the relators
        let uses = |g: char| -> usize {
            p.relators()
                .iter()
                .map(|r| r.letters().iter().filter(|l| l.gen == g).count())
                .sum()
        };
        let once = gens
            .iter()
            .copied()
            .filter(|&g| letters.iter().filter(|l| l.gen == g).count() == 1)
            .min_by_key(|&g| uses(g));
        let (working, recover) = match once {
            Some(g) => {
                // w = u g^e v  =>  g^e = u^-1 z v^-1
                let k = letters.iter().position(|l| l.gen == g).expect("occurs once");
                let u = Word::from_letters(letters[..k].to_vec());
                let v = Word::from_letters(letters[k + 1..].to_vec());
                let mut image = u
                    .inverse_literal()
                    .concat(&Word::gen(z))
                    .concat(&v.inverse_literal());
                if letters[k].exp < 0 {
                    image = image.inverse_literal();
                }
                let image = image.free_reduce();
                let new_gens: Vec<char> = gens.iter().map(|&h| if h == g { z } else { h }).collect();
                let subst: BTreeMap<char, Word> = [(g, image.clone())].into_iter().collect();
                let rels = p
                    .relators()
                    .iter()
                    .map(|r| cyclic_reduce(&substitute(r, &subst)))
                    .filter(|r| !r.is_empty())
                    .collect();
                (Presentation::new(new_gens, rels)?, vec![(g, image)])
            }
            None => {
                let mut new_gens = gens.to_vec();
                new_gens.push(z);
                let mut rels = p.relators().to_vec();
                rels.push(Word::gen(z).concat(&w.inverse_literal()));
                (Presentation::new(new_gens, rels)?, Vec::new())
            }
        };
        let spec = SolveSpec {
            original: p.clone(),
            normalized: second_generator(&working, z),
            working,
            pinned: z,
            constraints,
            recover,
            meridian: Some(w),
        };
        spec.check_pin_used()?;
        Ok(spec)
    }

    fn check_pin_used(&self) -> Result<()> {
        let used = self
            .working
            .relators()
            .iter()
            .any(|r| r.letters().iter().any(|l| l.gen == self.pinned));
        if !used && !self.working.relators().is_empty() {
            return Err(Error::SolveSetup(format!(
                "pinned generator {} appears in no relator",
                self.pinned
            )));
        }
        Ok(())
    }

    pub fn presentation(&self) -> &Presentation {
        &self.original
    }

    pub fn working_presentation(&self) -> &Presentation {
        &self.working
    }

    pub fn pinned(&self) -> char {
        self.pinned
    }

    pub fn normalized(&self) -> Option<char> {
        self.normalized
    }

    pub fn constraints(&self) -> &[(Word, Rational)] {
        &self.constraints
    }

    pub fn meridian(&self) -> Option<&Word> {
        self.meridian.as_ref()
    }

    /// Original generators expressed through the working ones.
    pub fn recovery(&self) -> &[(char, Word)] {
        &self.recover
    }

    /// A constraint word rewritten in working letters.
    fn to_working(&self, w: &Word) -> Word {
        let subst: BTreeMap<char, Word> = self.recover.iter().cloned().collect();
        substitute(w, &subst).free_reduce()
    }

    /// Images of the original generators from images of the working ones.
    pub fn original_images(
        &self,
        working: &BTreeMap<char, NfMatrix>,
        field: &NumberField,
    ) -> Result<BTreeMap<char, NfMatrix>> {
        let mut out = BTreeMap::new();
        for &g in self.original.generators() {
            let m = match self.recover.iter().find(|(h, _)| *h == g) {
                Some((_, w)) => word_matrix(w, working, field)?,
                None => working
                    .get(&g)
                    .cloned()
                    .ok_or(Error::UndeclaredGenerator(g))?,
            };
            out.insert(g, m);
        }
        Ok(out)
    }
}

fn second_generator(p: &Presentation, pinned: char) -> Option<char> {
    p.generators().iter().copied().find(|&g| g != pinned)
}

fn substitute(w: &Word, subst: &BTreeMap<char, Word>) -> Word {
    let mut out = Vec::new();
    for l in w.letters() {
        match subst.get(&l.gen) {
            Some(img) if l.exp > 0 => out.extend_from_slice(img.letters()),
            Some(img) => out.extend_from_slice(img.inverse_literal().letters()),
            None => out.push(*l),
        }
    }
    Word::from_letters(out)
}

pub(crate) fn cyclic_reduce(w: &Word) -> Word {
    let mut v: Vec<Letter> = w.free_reduce().letters().to_vec();
    while v.len() >= 2 && v[0] == v[v.len() - 1].inverse() {
        v.pop();
        v.remove(0);
    }
    Word::from_letters(v)
}

fn word_matrix(w: &Word, images: &BTreeMap<char, NfMatrix>, field: &NumberField) -> Result<NfMatrix> {
    let mut m = NfMatrix::identity(field, 2);
    for l in w.letters() {
        let g = images.get(&l.gen).ok_or(Error::UndeclaredGenerator(l.gen))?;
        let g = if l.exp > 0 { g.clone() } else { sl2_inverse(g) };
        m = m.matmul(&g)?;
    }
    Ok(m)
}

/// Where an entry of a working generator's matrix comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Entry {
    Const(i64),
    Var(usize),
}

/// Polynomial equations over the integers, plus the layout tying variables
/// to matrix entries.
#[derive(Clone, Debug)]
pub struct PolySystem {
    pub vars: Vec<String>,
    pub equations: Vec<IntPoly>,
    pub metadata: Vec<String>,
    layout: Vec<(char, [Entry; 4])>,
}

impl PolySystem {
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn layout(&self) -> &[(char, [Entry; 4])] {
        &self.layout
    }

    /// Working-generator matrices at a point given as field elements.
    pub fn images_at(&self, values: &[NfElem], field: &NumberField) -> Result<BTreeMap<char, NfMatrix>> {
        let mut out = BTreeMap::new();
        for (g, entries) in &self.layout {
            let data: Vec<NfElem> = entries
                .iter()
                .map(|e| match e {
                    Entry::Const(c) => field.from_int(*c),
                    Entry::Var(i) => values[*i].clone(),
                })
                .collect();
            out.insert(*g, NfMatrix::new(2, 2, data)?);
        }
        Ok(out)
    }
}

impl fmt::Display for PolySystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for m in &self.metadata {
            writeln!(f, "# {m}")?;
        }
        writeln!(f, "vars: {}", self.vars.join(" "))?;
        for e in &self.equations {
            writeln!(f, "{} = 0", e.display_with(&self.vars))?;
        }
        Ok(())
    }
}

/// Number of letters of `w` that are not the pinned generator.
fn cost(letters: &[Letter], pinned: char) -> usize {
    letters.iter().filter(|l| l.gen != pinned).count()
}

/// Rotation and split `r = u v` minimizing the larger unpinned count.
fn best_split(r: &Word, pinned: char) -> (Word, Word) {
    let l = r.letters();
    let n = l.len();
    let mut best = (usize::MAX, 0, 0);
    for s in 0..n {
        let rot: Vec<Letter> = l[s..].iter().chain(&l[..s]).copied().collect();
        for k in 0..=n {
            let c = cost(&rot[..k], pinned).max(cost(&rot[k..], pinned));
            if c < best.0 {
                best = (c, s, k);
            }
        }
    }
    let (_, s, k) = best;
    let rot: Vec<Letter> = l[s..].iter().chain(&l[..s]).copied().collect();
    (
        Word::from_letters(rot[..k].to_vec()),
        Word::from_letters(rot[k..].to_vec()),
    )
}

/// Relator, determinant and trace equations for `spec`.
///
/// Each relator `r` is rotated and split as `u v`, and contributes the
/// entries of `rho(u) - adj(rho(v))`; with the determinant equations this
/// cuts out the same solutions as `rho(r) = I` at about half the degree.
pub fn build_system(spec: &SolveSpec) -> Result<PolySystem> {
    let p = &spec.working;
    let unknown: Vec<char> = p
        .generators()
        .iter()
        .copied()
        .filter(|&g| g != spec.pinned)
        .collect();
    let mut vars = Vec::new();
    let mut layout = Vec::new();
    for &g in p.generators() {
        if g == spec.pinned {
            layout.push((g, [Entry::Const(1), Entry::Const(1), Entry::Const(0), Entry::Const(1)]));
            continue;
        }
        let mut entries = [Entry::Const(0); 4];
        for (k, name) in ["11", "12", "21", "22"].iter().enumerate() {
            if Some(g) == spec.normalized && k == 0 {
                continue;
            }
            entries[k] = Entry::Var(vars.len());
            vars.push(format!("{g}{name}"));
        }
        layout.push((g, entries));
    }
    let n = vars.len();
    let mats: BTreeMap<char, PolyMat2> = layout
        .iter()
        .map(|(g, es)| {
            let m = es.map(|e| match e {
                Entry::Const(c) => IntPoly::from_i64(n, c),
                Entry::Var(i) => IntPoly::var(n, i),
            });
            (*g, m)
        })
        .collect();
    let word_poly = |w: &Word| -> PolyMat2 {
        let mut m = mat2_identity(n);
        for l in w.letters() {
            let g = &mats[&l.gen];
            m = if l.exp > 0 {
                mat2_mul(&m, g)
            } else {
                mat2_mul(&m, &mat2_adj(g))
            };
        }
        m
    };

    let mut equations = Vec::new();
    let mut push = |e: IntPoly| {
        if !e.is_zero() {
            let e = e.primitive();
            if !equations.contains(&e) {
                equations.push(e);
            }
        }
    };
    for &g in &unknown {
        let m = &mats[&g];
        push(&(&(&m[0] * &m[3]) - &(&m[1] * &m[2])) - &IntPoly::from_i64(n, 1));
    }
    for r in p.relators() {
        let (u, v) = best_split(&cyclic_reduce(r), spec.pinned);
        let lhs = word_poly(&u);
        let rhs = mat2_adj(&word_poly(&v));
        for k in 0..4 {
            push(&lhs[k] - &rhs[k]);
        }
    }
    for (w, target) in &spec.constraints {
        let m = word_poly(&spec.to_working(w));
        let tr = &m[0] + &m[3];
        let den = IntPoly::constant(n, target.denom().clone());
        let num = IntPoly::constant(n, target.numer().clone());
        push(&(&tr * &den) - &num);
    }

    let mut metadata = vec![format!(
        "pinned {} = [[1,1],[0,1]]",
        spec.pinned
    )];
    if let Some(h) = spec.normalized {
        metadata.push(format!(
            "normalized {h}11 = 0 (spends the upper unipotent conjugation freedom)"
        ));
    }
    for (g, w) in &spec.recover {
        metadata.push(format!("{g} = {}", w.render()));
    }
    for (w, t) in &spec.constraints {
        metadata.push(format!("trace({}) = {}", w.render(), t));
    }
    Ok(PolySystem {
        vars,
        equations,
        metadata,
        layout,
    })
}

/// A system after eliminating variables that occur affinely.
#[derive(Clone, Debug)]
pub struct Presubstituted {
    /// Indices (in the full system) of the variables that remain.
    pub kept: Vec<usize>,
    /// Equations in the remaining variables only.
    pub equations: Vec<IntPoly>,
    /// `(i, c, rest)`: `x_i = -rest / c`, in elimination order, over the
    /// full variable set.
    pub substitutions: Vec<(usize, BigInt, IntPoly)>,
    nfull: usize,
}

impl Presubstituted {
    /// Fills in eliminated variables given values for the kept ones.
    pub fn complete<R: EvalRing + DivRing>(&self, kept_values: &[R], proto: &R) -> Result<Vec<R>> {
        let mut full: Vec<R> = vec![proto.zero_like(); self.nfull];
        for (k, &i) in self.kept.iter().enumerate() {
            full[i] = kept_values[k].clone();
        }
        for (i, c, rest) in self.substitutions.iter().rev() {
            let r = if self.nfull == 0 {
                rest.eval_constant(proto)
            } else {
                rest.eval(&full)
            };
            let neg_c = proto.from_bigint_like(&-c);
            full[*i] = r.div_ref(&neg_c)?;
        }
        Ok(full)
    }
}

/// Division, for recovering eliminated variables.
pub trait DivRing {
    fn div_ref(&self, o: &Self) -> Result<Self>
    where
        Self: Sized;
}

/// Repeatedly solves equations of the form `c x + (affine in others)` for
/// `x` and substitutes. Degrees never increase.
pub fn presubstitute(sys: &PolySystem) -> Result<Presubstituted> {
    let n = sys.nvars();
    let mut eqs: Vec<IntPoly> = sys.equations.clone();
    let mut subs = Vec::new();
    let mut alive: Vec<bool> = vec![true; n];
    loop {
        let mut found = None;
        'outer: for (k, e) in eqs.iter().enumerate() {
            if e.total_degree() > 1 {
                continue;
            }
            for i in 0..n {
                if !alive[i] {
                    continue;
                }
                if let Some((c, rest)) = e.linear_in(i) {
                    found = Some((k, i, c, rest));
                    break 'outer;
                }
            }
        }
        let Some((k, i, c, rest)) = found else { break };
        eqs.remove(k);
        alive[i] = false;
        let num = -&rest;
        eqs = eqs
            .iter()
            .map(|e| e.substitute(i, &num, &c).primitive())
            .filter(|e| !e.is_zero())
            .collect();
        // later substitutions are in terms of variables still alive
        subs = subs
            .into_iter()
            .map(|(j, cj, r): (usize, BigInt, IntPoly)| {
                let d = r.degree_in(i);
                if d == 0 {
                    (j, cj, r)
                } else {
                    (j, &cj * num_traits::pow(c.clone(), d), r.substitute(i, &num, &c))
                }
            })
            .collect();
        subs.push((i, c, rest));
        if eqs.iter().any(|e| e.total_degree() == 0) {
            return Err(Error::NoSolutions);
        }
    }
    if eqs.iter().any(|e| e.total_degree() == 0) {
        return Err(Error::NoSolutions);
    }
    let kept: Vec<usize> = (0..n).filter(|&i| alive[i]).collect();
    let mut map = vec![None; n];
    for (k, &i) in kept.iter().enumerate() {
        map[i] = Some(k);
    }
    let equations = eqs.iter().map(|e| e.remap(&map, kept.len())).collect();
    // substitutions must only mention kept variables or later-eliminated ones
    Ok(Presubstituted {
        kept,
        equations,
        substitutions: subs,
        nfull: n,
    })
}

impl EvalRing for NfElem {
    fn zero_like(&self) -> Self {
        self.field().zero()
    }
    fn from_bigint_like(&self, n: &BigInt) -> Self {
        self.field().from_rational(&Rational::from_integer(n.clone()))
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
}

impl DivRing for NfElem {
    fn div_ref(&self, o: &Self) -> Result<Self> {
        self.checked_div(o)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig8() -> Presentation {
        Presentation::from_strs("ab", &["bAbaBAbABa"]).unwrap()
    }

    #[test]
    fn unknot_has_no_equations() {
        let p = Presentation::from_strs("a", &[]).unwrap();
        let spec = SolveSpec::default_policy(&p).unwrap();
        let sys = build_system(&spec).unwrap();
        assert!(sys.vars.is_empty());
        assert!(sys.equations.is_empty());
    }

    #[test]
    fn figure_eight_reduces_to_two_unknowns() {
        let spec = SolveSpec::default_policy(&fig8()).unwrap();
        assert_eq!(spec.pinned(), 'a');
        let sys = build_system(&spec).unwrap();
        assert_eq!(sys.vars, vec!["b12", "b21", "b22"]);
        let pre = presubstitute(&sys).unwrap();
        // trace(b) = 2 fixes b22
        assert_eq!(pre.kept.len(), 2);
    }

    #[test]
    fn meridian_word_is_traded_for_a_generator() {
        let kt = Presentation::from_strs("abc", &["aBCbABBCbaBcbbcABcbbaB", "abcACaB"]).unwrap();
        let spec = SolveSpec::with_meridian(&kt, &Word::parse("cb").unwrap()).unwrap();
        assert_eq!(spec.working_presentation().generators(), &['a', 'b', 'm']);
        assert_eq!(spec.recovery()[0].0, 'c');
        assert_eq!(spec.recovery()[0].1.render(), "mB");
        let sys = build_system(&spec).unwrap();
        assert_eq!(sys.nvars(), 7);
        assert!(sys.equations.iter().all(|e| e.total_degree() <= 8));
    }

    #[test]
    fn bad_pins_are_rejected() {
        let kt = Presentation::from_strs("abc", &["aBCbABBCbaBcbbcABcbbaB", "abcACaB"]).unwrap();
        assert!(SolveSpec::new(&kt, 'a', vec![]).is_err());
        assert!(SolveSpec::with_meridian(&kt, &Word::parse("a").unwrap()).is_err());
        let free = Presentation::from_strs("ab", &["abAB"]).unwrap();
        assert!(SolveSpec::new(&free, 'a', vec![]).is_err());
    }

    #[test]
    fn split_balances_unpinned_letters() {
        let (u, v) = best_split(&Word::parse("abAbaBAbAB").unwrap(), 'a');
        let c = |w: &Word| w.letters().iter().filter(|l| l.gen != 'a').count();
        assert_eq!(c(&u).max(c(&v)), 3);
    }
}
