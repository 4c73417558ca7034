use std::path::Path;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::groebner::{groebner, ModPoly, Quotient};
use super::lift::{rational_reconstruction, zinv, zmod, zpoly, GrCtx, GrElem, Newton};
use super::modp::{self, charpoly, factor, random_prime, Ext, Up};
use super::mpoly::{EvalRing, IntPoly};
use super::system::{build_system, presubstitute, PolySystem, Presubstituted, SolveSpec};
use crate::error::{Error, Result};
use crate::exactalg::{NfElem, NumberField, RatPoly, Rational};
use crate::replift::{check_representation, Representation};

#[derive(Clone, Debug)]
pub struct SolveOptions {
    /// Largest branch field degree searched for.
    pub max_degree: usize,
    pub time_cap: Option<Duration>,
    pub seed: u64,
    /// Cap on the number of solutions counted with multiplicity.
    pub max_quotient_dim: usize,
    /// Cap on the `l`-adic precision, in bits.
    pub max_precision_bits: u64,
    /// Branches whose degree matches are rewritten over `Q[x]/(field_poly)`
    /// when that field contains a root of the branch polynomial.
    pub field_poly: Option<RatPoly>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            max_degree: 64,
            time_cap: None,
            seed: 1,
            max_quotient_dim: 4000,
            max_precision_bits: 1 << 18,
            field_poly: None,
        }
    }
}

/// One Galois orbit of solutions, realized over its own number field.
#[derive(Clone, Debug)]
pub struct SolutionBranch {
    pub field: NumberField,
    pub representation: Representation,
    /// Minimal polynomial of the primitive element the solver used.
    pub primitive_minpoly: RatPoly,
    pub relators_verified: bool,
    pub constraints_verified: bool,
    /// Whether the branch was rewritten over the requested field polynomial.
    pub recognized: bool,
}

impl SolutionBranch {
    pub fn degree(&self) -> usize {
        self.field.degree()
    }
}

#[derive(Clone, Debug, Default)]
pub struct SolveOutcome {
    pub branches: Vec<SolutionBranch>,
    pub prime: u64,
    /// Number of solutions over the algebraic closure, with multiplicity.
    pub quotient_dim: usize,
    /// Solutions at which the system is not smooth; not lifted.
    pub singular_points: usize,
    /// Smooth solutions left without a verified branch.
    pub unresolved_points: usize,
}

/// Builds the system for `spec` and solves it.
pub fn solve(spec: &SolveSpec, opts: &SolveOptions) -> Result<SolveOutcome> {
    let sys = build_system(spec)?;
    eliminate(spec, &sys, opts)
}

struct Point {
    fbar: Up,
    coords: Vec<Up>,
    square: Vec<usize>,
    lifted: Option<Vec<GrElem>>,
    minpoly: Vec<BigInt>,
    rep: Vec<Vec<BigInt>>,
}

/// Solves a zero-dimensional system exactly.
///
/// A Groebner basis modulo a random prime gives the solutions over finite
/// fields; each smooth one is lifted `l`-adically, Galois orbits are found
/// by rational reconstruction of the minimal polynomial of a random linear
/// form, and every candidate branch is re-verified over its number field.
pub fn eliminate(spec: &SolveSpec, sys: &PolySystem, opts: &SolveOptions) -> Result<SolveOutcome> {
    let deadline = opts.time_cap.map(|d| Instant::now() + d);
    let pre = presubstitute(sys)?;
    let n = pre.kept.len();
    let mut out = SolveOutcome::default();
    if n == 0 {
        let q = NumberField::rationals();
        if let Some(b) = make_branch(spec, sys, &pre, &q, &[], RatPoly::x())? {
            out.branches.push(b);
        }
        return finish(out, opts);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let l = random_prime(&mut rng);
    out.prime = l;
    let eqs: Vec<ModPoly> = pre
        .equations
        .iter()
        .map(|e| ModPoly::from_int(e, l))
        .collect::<Result<_>>()?;
    let gb = groebner(&eqs, l, deadline)?;
    let quot = Quotient::new(gb, n, l, opts.max_quotient_dim)?;
    out.quotient_dim = quot.dim();
    let mults: Vec<Vec<Vec<u64>>> = (0..n).map(|i| quot.mult_matrix(i)).collect::<Result<_>>()?;
    let var_nf: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            quot.normal_form(&ModPoly {
                terms: vec![(super::groebner::Mono::var(i), 1)],
            })
        })
        .collect::<Result<_>>()?;

    let (theta, raw_points) = find_points(&mults, &var_nf, l, &mut rng)?;
    let newton_full = Newton::new(pre.equations.clone());
    let mut points = Vec::new();
    for (fbar, coords) in raw_points {
        match square_subsystem(&newton_full, &fbar, &coords, l) {
            Some(square) => points.push(Point {
                fbar,
                coords,
                square,
                lifted: None,
                minpoly: Vec::new(),
                rep: Vec::new(),
            }),
            None => out.singular_points += 1,
        }
    }

    let log2l = 64 - l.leading_zeros() as u64;
    let mut prec: u32 = 8;
    let mut remaining: Vec<usize> = (0..points.len()).collect();
    while !remaining.is_empty() {
        if prec as u64 * log2l > opts.max_precision_bits {
            break;
        }
        if deadline.is_some_and(|d| Instant::now() > d) {
            return Err(Error::ResourceCap("time cap reached while lifting".into()));
        }
        for &k in &remaining {
            lift_point(&mut points[k], &pre.equations, &theta, l, prec)?;
        }
        let m = num_traits::pow(BigInt::from(l), prec as usize);
        let mut progress = true;
        while progress && !remaining.is_empty() {
            progress = false;
            let found = group_search(&points, &remaining, &m, l, opts.max_degree, |g, hs| {
                let field = NumberField::new(g.clone())?;
                let vals: Vec<NfElem> = hs.iter().map(|h| field.from_poly(h)).collect();
                make_branch(spec, sys, &pre, &field, &vals, g.clone())
            })?;
            if let Some((subset, branch)) = found {
                remaining.retain(|k| !subset.contains(k));
                out.branches.push(branch);
                progress = true;
            }
        }
        prec *= 2;
    }
    out.unresolved_points = remaining.len();
    finish(out, opts)
}

fn finish(mut out: SolveOutcome, opts: &SolveOptions) -> Result<SolveOutcome> {
    if let Some(q) = &opts.field_poly {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x5eed);
        for b in out.branches.iter_mut() {
            if b.degree() != q.degree().unwrap_or(0) {
                continue;
            }
            if let Some(nb) = recognize(b, q, opts, &mut rng)? {
                *b = nb;
            }
        }
    }
    out.branches.sort_by_key(|b| b.degree());
    Ok(out)
}

/// Random linear form separating the solutions, and one point per
/// irreducible factor of its characteristic polynomial.
#[allow(clippy::type_complexity)]
fn find_points(
    mults: &[Vec<Vec<u64>>],
    var_nf: &[Vec<u64>],
    l: u64,
    rng: &mut ChaCha8Rng,
) -> Result<(Vec<u64>, Vec<(Up, Vec<Up>)>)> {
    let n = mults.len();
    let d = mults[0].len();
    'attempt: for _ in 0..16 {
        let theta: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=32)).collect();
        let mut mt = vec![vec![0u64; d]; d];
        for (i, m) in mults.iter().enumerate() {
            for r in 0..d {
                for c in 0..d {
                    mt[r][c] = modp::addm(mt[r][c], modp::mulm(theta[i], m[r][c], l), l);
                }
            }
        }
        let chi = charpoly(&mt, l);
        let mut pts = Vec::new();
        for (f, _mult) in factor(&chi, l, rng) {
            let ext = Ext::new(l, f.clone());
            let y = ext.gen();
            // transpose minus Y
            let a: Vec<Vec<Up>> = (0..d)
                .map(|r| {
                    (0..d)
                        .map(|c| {
                            let v = ext.from_u64(mt[c][r]);
                            if r == c {
                                ext.sub(&v, &y)
                            } else {
                                v
                            }
                        })
                        .collect()
                })
                .collect();
            let (_, ker) = ext.kernel(&a, d);
            if ker.len() != 1 {
                continue 'attempt;
            }
            let v = &ker[0];
            if v[0].is_empty() {
                continue 'attempt;
            }
            let inv = ext.inv(&v[0]);
            let v: Vec<Up> = v.iter().map(|c| ext.mul(c, &inv)).collect();
            let coords: Vec<Up> = var_nf
                .iter()
                .map(|nf| {
                    nf.iter().zip(&v).fold(Vec::new(), |acc, (&c, vk)| {
                        ext.add(&acc, &ext.mul(&ext.from_u64(c), vk))
                    })
                })
                .collect();
            pts.push((f, coords));
        }
        return Ok((theta, pts));
    }
    Err(Error::ResourceCap(
        "no separating linear form found".into(),
    ))
}

/// Rows of the Jacobian forming an invertible square block at the point,
/// or `None` when the point is singular.
fn square_subsystem(full: &Newton, fbar: &Up, coords: &[Up], l: u64) -> Option<Vec<usize>> {
    let ctx = GrCtx::new(l, 1, fbar);
    let x: Vec<GrElem> = coords.iter().map(|c| GrElem::from_up(&ctx, c)).collect();
    let n = x.len();
    if full.eqs.iter().any(|e| !e.eval(&x).is_zero()) {
        return None;
    }
    let ext = &ctx.ext;
    let mut chosen: Vec<usize> = Vec::new();
    let mut rows: Vec<Vec<Up>> = Vec::new();
    for (r, jr) in full.jac.iter().enumerate() {
        let row: Vec<Up> = jr.iter().map(|d| d.eval(&x).residue()).collect();
        let mut trial = rows.clone();
        trial.push(row.clone());
        let (rank, _) = ext.kernel(&trial, n);
        if rank == trial.len() {
            rows.push(row);
            chosen.push(r);
            if chosen.len() == n {
                return Some(chosen);
            }
        }
    }
    None
}

fn lift_point(pt: &mut Point, eqs: &[IntPoly], theta: &[u64], l: u64, prec: u32) -> Result<()> {
    let ctx = GrCtx::new(l, prec, &pt.fbar);
    let start: Vec<GrElem> = match &pt.lifted {
        Some(x) => x.iter().map(|e| e.rebase(&ctx)).collect(),
        None => pt.coords.iter().map(|c| GrElem::from_up(&ctx, c)).collect(),
    };
    let square = Newton::new(pt.square.iter().map(|&k| eqs[k].clone()).collect());
    let x = square.lift(start)?;
    // theta and its powers
    let e = ctx.degree();
    let mut th = GrElem::zero(&ctx);
    for (xi, &c) in x.iter().zip(theta) {
        th = th.add(&xi.mul(&xi.from_bigint_like(&BigInt::from(c))));
    }
    let mut pows = vec![th.from_bigint_like(&BigInt::one())];
    for k in 1..=e {
        let next = pows[k - 1].mul(&th);
        pows.push(next);
    }
    let cols: Vec<Vec<BigInt>> = pows[..e].iter().map(|p| (0..e).map(|i| p.coeff(i)).collect()).collect();
    let mut rhs: Vec<Vec<BigInt>> = vec![(0..e).map(|i| pows[e].coeff(i)).collect()];
    for xi in &x {
        rhs.push((0..e).map(|i| xi.coeff(i)).collect());
    }
    let sol = zm_solve_columns(&cols, &rhs, &ctx.m)?;
    // theta^e = sum a_k theta^k
    let mut mp: Vec<BigInt> = sol[0].iter().map(|a| zmod(&-a, &ctx.m)).collect();
    mp.push(BigInt::one());
    pt.minpoly = mp;
    pt.rep = sol[1..].to_vec();
    pt.lifted = Some(x);
    Ok(())
}

/// Solves `V y = b` for each right-hand side, where `V` has the given
/// columns and is invertible modulo the prime under `m`.
fn zm_solve_columns(cols: &[Vec<BigInt>], rhs: &[Vec<BigInt>], m: &BigInt) -> Result<Vec<Vec<BigInt>>> {
    let e = cols.len();
    // augmented rows: V | b_1 | b_2 ...
    let mut a: Vec<Vec<BigInt>> = (0..e)
        .map(|r| {
            let mut row: Vec<BigInt> = cols.iter().map(|c| c[r].clone()).collect();
            row.extend(rhs.iter().map(|b| b[r].clone()));
            row
        })
        .collect();
    let w = e + rhs.len();
    for c in 0..e {
        let (piv, inv) = (c..e)
            .find_map(|i| zinv(&a[i][c], m).map(|v| (i, v)))
            .ok_or_else(|| Error::Internal("power basis not invertible".into()))?;
        a.swap(c, piv);
        for j in c..w {
            a[c][j] = zmod(&(&a[c][j] * &inv), m);
        }
        for i in 0..e {
            if i == c || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for j in c..w {
                let t = &f * &a[c][j];
                a[i][j] = zmod(&(&a[i][j] - t), m);
            }
        }
    }
    Ok((0..rhs.len())
        .map(|k| (0..e).map(|r| a[r][e + k].clone()).collect())
        .collect())
}

type Candidate = (Vec<usize>, SolutionBranch);

/// Looks for a set of points forming one Galois orbit over `Q`.
fn group_search(
    points: &[Point],
    remaining: &[usize],
    m: &BigInt,
    l: u64,
    max_degree: usize,
    mut verify: impl FnMut(&RatPoly, &[RatPoly]) -> Result<Option<SolutionBranch>>,
) -> Result<Option<Candidate>> {
    let mut attempts = 0usize;
    for (pos, &i0) in remaining.iter().enumerate() {
        let rest: Vec<usize> = remaining[pos + 1..].to_vec();
        for size in 0..=rest.len() {
            let mut found = None;
            let mut combo = Vec::new();
            combinations(&rest, size, 0, &mut combo, &mut |c| {
                if found.is_some() || attempts > 50_000 {
                    return Ok(());
                }
                let mut subset = vec![i0];
                subset.extend_from_slice(c);
                let degree: usize = subset.iter().map(|&k| points[k].minpoly.len() - 1).sum();
                if degree > max_degree {
                    return Ok(());
                }
                attempts += 1;
                let Some((g, hs)) = combine(points, &subset, m, l) else {
                    return Ok(());
                };
                if let Some(b) = verify(&g, &hs)? {
                    found = Some((subset, b));
                }
                Ok(())
            })?;
            if found.is_some() {
                return Ok(found);
            }
        }
    }
    Ok(None)
}

fn combinations(
    items: &[usize],
    k: usize,
    start: usize,
    cur: &mut Vec<usize>,
    f: &mut dyn FnMut(&[usize]) -> Result<()>,
) -> Result<()> {
    if cur.len() == k {
        return f(cur);
    }
    for i in start..items.len() {
        if items.len() - i < k - cur.len() {
            break;
        }
        cur.push(items[i]);
        combinations(items, k, i + 1, cur, f)?;
        cur.pop();
    }
    Ok(())
}

/// Product of the local minimal polynomials and the coordinate polynomials
/// glued by CRT, all reconstructed over `Q`.
fn combine(points: &[Point], subset: &[usize], m: &BigInt, l: u64) -> Option<(RatPoly, Vec<RatPoly>)> {
    let mut g: Vec<BigInt> = vec![BigInt::one()];
    for &k in subset {
        g = zpoly::mul(&g, &points[k].minpoly, m);
    }
    let g_rat = reconstruct_poly(&g, m)?;
    if !g_rat.is_monic() {
        return None;
    }
    let nvars = points[subset[0]].rep.len();
    let mut hs = Vec::with_capacity(nvars);
    for j in 0..nvars {
        let mut acc_mod: Vec<BigInt> = points[subset[0]].minpoly.clone();
        let mut acc: Vec<BigInt> = points[subset[0]].rep[j].clone();
        for &k in &subset[1..] {
            let b = &points[k].minpoly;
            let hb = &points[k].rep[j];
            // h = acc + A * ((hb - acc) * A^-1 mod B)
            let ainv = zpoly::inv_mod(&zpoly::rem(&acc_mod, b, m), b, m, l)?;
            let diff = zpoly::rem(&zpoly::sub(hb, &acc, m), b, m);
            let t = zpoly::rem(&zpoly::mul(&diff, &ainv, m), b, m);
            acc = zpoly::add(&acc, &zpoly::mul(&acc_mod, &t, m), m);
            acc_mod = zpoly::mul(&acc_mod, b, m);
        }
        hs.push(reconstruct_poly(&acc, m)?);
    }
    Some((g_rat, hs))
}

fn reconstruct_poly(a: &[BigInt], m: &BigInt) -> Option<RatPoly> {
    let coeffs: Option<Vec<Rational>> = a.iter().map(|c| rational_reconstruction(c, m)).collect();
    Some(RatPoly::new(coeffs?))
}

fn make_branch(
    spec: &SolveSpec,
    sys: &PolySystem,
    pre: &Presubstituted,
    field: &NumberField,
    kept: &[NfElem],
    primitive_minpoly: RatPoly,
) -> Result<Option<SolutionBranch>> {
    let full = match pre.complete(kept, &field.zero()) {
        Ok(v) => v,
        Err(Error::ZeroDivisor) | Err(Error::DivisionByZero) => return Ok(None),
        Err(e) => return Err(e),
    };
    let working = sys.images_at(&full, field)?;
    let images = spec.original_images(&working, field)?;
    let rep = Representation::new(spec.presentation(), field, images, spec.meridian().cloned())?;
    verify_branch(spec, rep, primitive_minpoly, false)
}

fn verify_branch(
    spec: &SolveSpec,
    rep: Representation,
    primitive_minpoly: RatPoly,
    recognized: bool,
) -> Result<Option<SolutionBranch>> {
    let check = check_representation(spec.presentation(), &rep)?;
    if !check.passed() {
        return Ok(None);
    }
    for (w, t) in spec.constraints() {
        if rep.trace_of(w)? != rep.field().from_rational(t) {
            return Ok(None);
        }
    }
    Ok(Some(SolutionBranch {
        field: rep.field().clone(),
        representation: rep,
        primitive_minpoly,
        relators_verified: true,
        constraints_verified: true,
        recognized,
    }))
}

/// Finds a root of the branch polynomial in `Q[x]/(q)` and rewrites the
/// branch over that field.
fn recognize(
    b: &SolutionBranch,
    q: &RatPoly,
    opts: &SolveOptions,
    rng: &mut ChaCha8Rng,
) -> Result<Option<SolutionBranch>> {
    let target = NumberField::new(q.clone())?;
    let Some(root) = root_in_field(b.field.modulus(), &target, opts, rng)? else {
        return Ok(None);
    };
    let images = b
        .representation
        .images()
        .iter()
        .map(|(g, m)| {
            let data: Vec<NfElem> = m.entries().iter().map(|e| eval_at(&e.to_poly(), &root)).collect();
            Ok((*g, crate::exactalg::NfMatrix::new(2, 2, data)?))
        })
        .collect::<Result<_>>()?;
    let rep = Representation::new(
        b.representation.presentation(),
        &target,
        images,
        b.representation.meridian().cloned(),
    )?;
    let check = check_representation(b.representation.presentation(), &rep)?;
    if !check.passed() {
        return Err(Error::Internal("recognized branch failed verification".into()));
    }
    Ok(Some(SolutionBranch {
        field: target,
        representation: rep,
        primitive_minpoly: b.primitive_minpoly.clone(),
        relators_verified: true,
        constraints_verified: b.constraints_verified,
        recognized: true,
    }))
}

fn eval_at(p: &RatPoly, x: &NfElem) -> NfElem {
    let k = x.field();
    p.coeffs()
        .iter()
        .rev()
        .fold(k.zero(), |acc, c| &(&acc * x) + &k.from_rational(c))
}

/// A root of `g` (monic, rational) in the number field `k`, found
/// `l`-adically and checked exactly.
pub fn root_in_field(
    g: &RatPoly,
    k: &NumberField,
    opts: &SolveOptions,
    rng: &mut ChaCha8Rng,
) -> Result<Option<NfElem>> {
    let q = k.modulus();
    if q.coeffs().iter().any(|c| !c.is_integer()) {
        return Err(Error::SolveSetup("field polynomial must have integer coefficients".into()));
    }
    let qz: Vec<BigInt> = q.coeffs().iter().map(|c| c.to_integer()).collect();
    let den = g
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
    let gz: Vec<BigInt> = g.coeffs().iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect();
    let nq = k.degree();
    // a prime where q stays irreducible and g keeps its degree
    let mut chosen = None;
    for _ in 0..2000 {
        let l = random_prime(rng);
        if modp::reduce_bigint(&den, l) == 0 {
            continue;
        }
        let qbar: Up = qz.iter().map(|c| modp::reduce_bigint(c, l)).collect();
        let dd = modp::ddf(&qbar, l);
        if dd.len() == 1 && dd[0].1 == nq && modp::deg(&modp::pgcd(&qbar, &modp::pderiv(&qbar, l), l)) == 0 {
            chosen = Some((l, qbar));
            break;
        }
    }
    let Some((l, qbar)) = chosen else {
        return Err(Error::ResourceCap("no prime keeps the field polynomial irreducible".into()));
    };
    let gbar: Up = modp::trim(gz.iter().map(|c| modp::reduce_bigint(c, l)).collect());
    let ext = Ext::new(l, qbar);
    let roots = ext.roots(&gbar, rng);
    let gpoly = {
        let mut p = IntPoly::zero(1);
        for (i, c) in gz.iter().enumerate() {
            let mono = &IntPoly::var(1, 0).pow(i as u32) * &IntPoly::constant(1, c.clone());
            p = &p + &mono;
        }
        p
    };
    let newton = Newton::new(vec![gpoly]);
    let log2l = 64 - l.leading_zeros() as u64;
    let mut lifted: Vec<Option<GrElem>> = vec![None; roots.len()];
    let mut prec = 8u32;
    while prec as u64 * log2l <= opts.max_precision_bits {
        let ctx = Arc::new(GrCtx {
            l,
            m: num_traits::pow(BigInt::from(l), prec as usize),
            f: qz.iter().map(|c| zmod(c, &num_traits::pow(BigInt::from(l), prec as usize))).collect(),
            ext: ext.clone(),
        });
        for (r, slot) in roots.iter().zip(lifted.iter_mut()) {
            let start = match slot {
                Some(x) => x.rebase(&ctx),
                None => GrElem::from_up(&ctx, r),
            };
            let x = newton.lift(vec![start])?.remove(0);
            let coords: Option<Vec<Rational>> = (0..nq)
                .map(|i| rational_reconstruction(&x.coeff(i), &ctx.m))
                .collect();
            *slot = Some(x);
            let Some(coords) = coords else { continue };
            let cand = k.from_coords(&coords)?;
            if eval_at(g, &cand).is_zero() {
                return Ok(Some(cand));
            }
        }
        prec *= 2;
    }
    Ok(None)
}

/// Writes the branch's representation in the text format read by
/// [`Representation::read`].
pub fn export_representation(branch: &SolutionBranch, path: impl AsRef<Path>) -> Result<()> {
    branch.representation.write(path)
}
