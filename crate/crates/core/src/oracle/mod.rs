//! Ground truth from explicit coordinates.
//!
//! Everything here is computed from integer point coordinates with exact
//! linear algebra: a form of degree `d` lies in `I^(m)` iff every Taylor
//! coefficient of order `< m` vanishes at every point, so `I^(m)_d` is the
//! kernel of a condition matrix whose columns are the degree-`d` monomials.
//! Nothing in this module touches divisor classes.

pub mod matrix;
pub mod monomials;

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::divisor_lattice::MIN_COLLINEAR;
use crate::error::{Error, Result};
use crate::gin_builder::GinStaircase;
use matrix::IntegerEchelon;
pub use matrix::RationalMatrix;
pub use monomials::{Monomial, MonomialOrderContext};

/// `l + 1` projective points with integer coordinates: the first `l` on the
/// line `z = 0`, the last off it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<[i64; 3]>,
}

impl PointSet {
    pub fn new(points: Vec<[i64; 3]>) -> Result<Self> {
        let l = points.len().saturating_sub(1);
        if l < MIN_COLLINEAR as usize {
            return Err(Error::UnsupportedConfiguration { l: l as u32 });
        }
        if points.iter().any(|p| p.iter().all(|&x| x == 0)) {
            return Err(Error::InvalidInput(
                "[0:0:0] is not a projective point".into(),
            ));
        }
        if points[..l].iter().any(|p| p[2] != 0) || points[l][2] == 0 {
            return Err(Error::InvalidInput(
                "exactly the first l points must lie on z = 0".into(),
            ));
        }
        for (i, p) in points.iter().enumerate() {
            for q in &points[i + 1..] {
                if cross(p, q) == [0, 0, 0] {
                    return Err(Error::InvalidInput(format!(
                        "points {p:?} and {q:?} coincide projectively"
                    )));
                }
            }
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[[i64; 3]] {
        &self.points
    }

    pub fn l(&self) -> u32 {
        (self.points.len() - 1) as u32
    }

    fn big(&self) -> Vec<[BigInt; 3]> {
        self.points.iter().map(|p| p.map(BigInt::from)).collect()
    }
}

fn cross(p: &[i64; 3], q: &[i64; 3]) -> [i128; 3] {
    let (p, q) = (p.map(i128::from), q.map(i128::from));
    [
        p[1] * q[2] - p[2] * q[1],
        p[2] * q[0] - p[0] * q[2],
        p[0] * q[1] - p[1] * q[0],
    ]
}

/// `p_i = [1 : i : 0]` for `i = 1..=l`, `p_{l+1} = [0 : 0 : 1]`.
pub fn default_points(l: u32) -> Result<PointSet> {
    if l < MIN_COLLINEAR {
        return Err(Error::UnsupportedConfiguration { l });
    }
    let mut points: Vec<[i64; 3]> = (1..=i64::from(l)).map(|i| [1, i, 0]).collect();
    points.push([0, 0, 1]);
    PointSet::new(points)
}

/// A second choice of coordinates: `p_i = [1 : 2i+1 : 0]`, `p_{l+1} = [1 : 0 : 1]`.
pub fn alternate_points(l: u32) -> Result<PointSet> {
    if l < MIN_COLLINEAR {
        return Err(Error::UnsupportedConfiguration { l });
    }
    let mut points: Vec<[i64; 3]> = (1..=i64::from(l)).map(|i| [1, 2 * i + 1, 0]).collect();
    points.push([1, 0, 1]);
    PointSet::new(points)
}

fn binomials(n: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut row = vec![BigInt::one(); i + 1];
        for j in 1..i {
            row[j] = &rows[i - 1][j - 1] + &rows[i - 1][j];
        }
        rows.push(row);
    }
    rows
}

fn powers(base: &BigInt, n: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(BigInt::one());
    for i in 1..=n {
        let next = &out[i - 1] * base;
        out.push(next);
    }
    out
}

/// Rows are the functionals "coefficient of `s^a t^b` in `f(p + s e_u + t e_v)`"
/// for `a + b < m`, where `p` has a nonzero coordinate `k` and `u, v` are the
/// other two. These are the affine Taylor coefficients of `f` at `p` in the
/// chart `x_k != 0`, up to rescaling `s, t` by `p_k`.
fn condition_rows(points: &[[BigInt; 3]], m: u64, ctx: &MonomialOrderContext) -> Vec<Vec<BigInt>> {
    let d = ctx.degree() as usize;
    let binom = binomials(d);
    let order = m as usize;
    let mut rows = Vec::with_capacity(points.len() * order * (order + 1) / 2);
    for p in points {
        let k = p.iter().position(|x| !x.is_zero()).expect("nonzero point");
        let (u, v) = match k {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let pw: Vec<Vec<BigInt>> = p.iter().map(|x| powers(x, d)).collect();
        for total in 0..order {
            for a in 0..=total {
                let b = total - a;
                let row = ctx
                    .monomials()
                    .iter()
                    .map(|mono| {
                        let e = mono.0.map(|x| x as usize);
                        if a > e[u] || b > e[v] {
                            return BigInt::zero();
                        }
                        &pw[k][e[k]]
                            * &binom[e[u]][a]
                            * &pw[u][e[u] - a]
                            * &binom[e[v]][b]
                            * &pw[v][e[v] - b]
                    })
                    .collect();
                rows.push(row);
            }
        }
    }
    rows
}

fn degree(d: u64) -> Result<u32> {
    u32::try_from(d).map_err(|_| Error::InvalidInput(format!("degree {d} is too large")))
}

fn check_multiplicity(m: u64) -> Result<()> {
    if m < 1 {
        return Err(Error::InvalidInput("multiplicity m must be >= 1".into()));
    }
    Ok(())
}

fn echelon_of(rows: Vec<Vec<BigInt>>, cols: usize) -> IntegerEchelon {
    let mut echelon = IntegerEchelon::new(cols);
    for row in rows {
        echelon.insert(row);
    }
    echelon
}

/// The condition matrix for `I^(m)_d` as an exact matrix.
pub fn condition_matrix(ps: &PointSet, m: u64, d: u64) -> Result<RationalMatrix> {
    check_multiplicity(m)?;
    let ctx = MonomialOrderContext::new(degree(d)?);
    RationalMatrix::from_integer_rows(&condition_rows(&ps.big(), m, &ctx), ctx.len())
}

/// `dim I^(m)_d` from the rank of the condition matrix.
pub fn oracle_hilbert(ps: &PointSet, m: u64, d: u64) -> Result<u64> {
    check_multiplicity(m)?;
    let ctx = MonomialOrderContext::new(degree(d)?);
    let echelon = echelon_of(condition_rows(&ps.big(), m, &ctx), ctx.len());
    Ok((ctx.len() - echelon.rank()) as u64)
}

struct KernelData {
    ctx: MonomialOrderContext,
    /// Non-pivot columns; restricting to them is injective on the kernel.
    free: Vec<usize>,
    vectors: Vec<Vec<BigInt>>,
}

fn kernel_data(points: &[[BigInt; 3]], m: u64, d: u32) -> KernelData {
    let ctx = MonomialOrderContext::new(d);
    let mut echelon = echelon_of(condition_rows(points, m, &ctx), ctx.len());
    echelon.reduce();
    let kernel = echelon.kernel_vectors();
    let free = kernel.iter().map(|(f, _)| *f).collect();
    let vectors = kernel.into_iter().map(|(_, v)| v).collect();
    KernelData { ctx, free, vectors }
}

/// `v_d = dim I_d - dim(R_1 I_{d-1})` for `d <= dmax`; only nonzero counts
/// are returned.
pub fn oracle_generator_counts(ps: &PointSet, m: u64, dmax: u64) -> Result<BTreeMap<u64, u64>> {
    check_multiplicity(m)?;
    if dmax < 1 {
        return Err(Error::InvalidInput("dmax must be >= 1".into()));
    }
    let top = degree(dmax)?;
    let points = ps.big();
    let kernels: Vec<KernelData> = (0..=top)
        .into_par_iter()
        .map(|d| kernel_data(&points, m, d))
        .collect();

    let counts: Vec<(u64, u64)> = (0..=top as usize)
        .into_par_iter()
        .map(|d| {
            let here = &kernels[d];
            let dim = here.vectors.len();
            if d == 0 || dim == 0 {
                return (d as u64, dim as u64);
            }
            let below = &kernels[d - 1];
            let mut column_of = vec![usize::MAX; here.ctx.len()];
            for (j, &f) in here.free.iter().enumerate() {
                column_of[f] = j;
            }
            let mut span = IntegerEchelon::new(dim);
            'fill: for v in &below.vectors {
                for var in 0..3 {
                    let mut row = vec![BigInt::zero(); dim];
                    for (i, c) in v.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let target = below.ctx.monomials()[i].times_variable(var);
                        let pos = here.ctx.position(&target).expect("degree d monomial");
                        if column_of[pos] != usize::MAX {
                            row[column_of[pos]] = c.clone();
                        }
                    }
                    span.insert(row);
                    if span.rank() == dim {
                        break 'fill;
                    }
                }
            }
            (d as u64, (dim - span.rank()) as u64)
        })
        .collect();
    Ok(counts.into_iter().filter(|&(_, v)| v > 0).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GinOptions {
    /// Entries of the random coordinate change are drawn from `[-bound, bound]`.
    pub coefficient_bound: i64,
    /// Extra coordinate changes tried after a non-generic one.
    pub retries: u32,
}

impl Default for GinOptions {
    fn default() -> Self {
        Self {
            coefficient_bound: 50,
            retries: 3,
        }
    }
}

/// The initial ideal of `I^(m)` after one random coordinate change, degree
/// by degree up to `dmax`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GinComputation {
    /// The matrix `g` applied to the points (`p -> g p`).
    pub coordinate_change: [[i64; 3]; 3],
    /// Initial monomials of each degree `0..=dmax`, largest first.
    pub initial: Vec<Vec<Monomial>>,
    /// Minimal generators of the initial ideal, by degree then revlex.
    pub generators: Vec<Monomial>,
    pub staircase: GinStaircase,
}

fn det3(g: &[[i64; 3]; 3]) -> i128 {
    let g = g.map(|r| r.map(i128::from));
    g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1])
        - g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0])
        + g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0])
}

fn random_coordinate_change(rng: &mut ChaCha8Rng, bound: i64) -> [[i64; 3]; 3] {
    loop {
        let mut g = [[0i64; 3]; 3];
        for x in g.iter_mut().flatten() {
            *x = rng.gen_range(-bound..=bound);
        }
        if det3(&g) != 0 {
            return g;
        }
    }
}

/// Initial monomials of the kernel of the degree-`ctx` condition matrix.
///
/// With the columns ordered smallest monomial first, a monomial leads some
/// kernel element iff its column lies in the span of the columns left of
/// it, i.e. iff it is not a pivot column.
fn initial_monomials(points: &[[BigInt; 3]], m: u64, ctx: &MonomialOrderContext) -> Vec<Monomial> {
    let rows = condition_rows(points, m, ctx)
        .into_iter()
        .map(|mut r| {
            r.reverse();
            r
        })
        .collect();
    let echelon = echelon_of(rows, ctx.len());
    let mut is_pivot = vec![false; ctx.len()];
    for p in echelon.pivot_columns() {
        is_pivot[p] = true;
    }
    let n = ctx.len();
    (0..n)
        .filter(|&ascending| !is_pivot[ascending])
        .map(|ascending| ctx.monomials()[n - 1 - ascending])
        .rev()
        .collect()
}

fn minimal_generators(initial: &[Vec<Monomial>]) -> Vec<Monomial> {
    let mut generators = Vec::new();
    let mut previous: HashSet<Monomial> = HashSet::new();
    for in_d in initial {
        for mono in in_d {
            let from_below = (0..3).any(|var| {
                mono.divided_by_variable(var)
                    .is_some_and(|q| previous.contains(&q))
            });
            if !from_below {
                generators.push(*mono);
            }
        }
        previous = in_d.iter().copied().collect();
    }
    generators
}

fn staircase_from_generators(m: u64, generators: &[Monomial]) -> Result<GinStaircase> {
    if let Some(g) = generators.iter().find(|g| g.0[2] != 0) {
        return Err(Error::NonGeneric(format!("generator {g} involves z")));
    }
    let alpha = generators
        .iter()
        .find(|g| g.0[1] == 0)
        .map(|g| u64::from(g.0[0]))
        .ok_or_else(|| Error::NonGeneric("no pure power of x among the generators".into()))?;
    if !generators.iter().any(|g| g.0[0] == 0) {
        return Err(Error::InvalidInput(
            "dmax is below the degree of the pure power of y; raise dmax".into(),
        ));
    }
    let mut lambda: Vec<Option<u64>> = vec![None; alpha as usize];
    for g in generators.iter().filter(|g| g.0[1] > 0) {
        let i = g.0[0] as usize;
        if i >= lambda.len() || lambda[i].is_some() {
            return Err(Error::NonGeneric(format!(
                "generator {g} does not fit a Borel-fixed staircase"
            )));
        }
        lambda[i] = Some(u64::from(g.0[1]));
    }
    let lambda = lambda
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::NonGeneric("staircase has missing steps".into()))?;
    GinStaircase::new(m, alpha, lambda).map_err(|e| Error::NonGeneric(e.to_string()))
}

/// [`oracle_gin`] with explicit options, returning the full computation.
pub fn oracle_gin_with(
    ps: &PointSet,
    m: u64,
    dmax: u64,
    seed: u64,
    options: &GinOptions,
) -> Result<GinComputation> {
    check_multiplicity(m)?;
    let top = degree(dmax)?;
    let contexts: Vec<MonomialOrderContext> = (0..=top).map(MonomialOrderContext::new).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last_error = None;
    for _ in 0..=options.retries {
        let g = random_coordinate_change(&mut rng, options.coefficient_bound);
        let moved: Vec<[BigInt; 3]> = ps
            .points()
            .iter()
            .map(|p| {
                let mut q = [0i64; 3];
                for (r, row) in g.iter().enumerate() {
                    q[r] = row.iter().zip(p).map(|(a, b)| a * b).sum();
                }
                q.map(BigInt::from)
            })
            .collect();
        let initial: Vec<Vec<Monomial>> = contexts
            .par_iter()
            .map(|ctx| initial_monomials(&moved, m, ctx))
            .collect();
        let generators = minimal_generators(&initial);
        match staircase_from_generators(m, &generators) {
            Ok(staircase) => {
                return Ok(GinComputation {
                    coordinate_change: g,
                    initial,
                    generators,
                    staircase,
                })
            }
            Err(e @ Error::NonGeneric(_)) => last_error = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last_error.expect("at least one attempt"))
}

/// The reverse-lexicographic generic initial ideal of `I^(m)` as a staircase,
/// computed after a seeded random change of coordinates. `dmax` must reach
/// the degree of the pure power of `y` (`lm + 1` is always enough).
pub fn oracle_gin(ps: &PointSet, m: u64, dmax: u64, seed: u64) -> Result<GinStaircase> {
    Ok(oracle_gin_with(ps, m, dmax, seed, &GinOptions::default())?.staircase)
}
