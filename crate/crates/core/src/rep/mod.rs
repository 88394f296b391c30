//! Wedderburn decomposition of finite-dimensional semisimple algebras given by structure constants.
//!
//! Degrees come from a numeric split of the center and are revalidated exactly; characters are
//! recovered exactly when the basis is monomial (every product of basis elements is a root of unity
//! times a basis element), as for group and twisted group algebras.

mod cocycle;
mod induced;

pub use cocycle::{
    beta_from_omega, cyclic_character, twisted_group_algebra, ThreeCocycle, TwoCocycleOnCentralizer,
};
pub use induced::{
    crossed_product_irreps, double_irreps, DoubleCatalog, DoubleObject, ObjectRecord,
};

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cyclotomic::CycScalar;
use crate::error::{Error, Result};
use crate::hopf::HopfAlgebra;
use crate::linalg::{nullspace, Accumulator, SparseVec};

/// Two eigenvalues closer than this (relative to the spectral radius) are not separated.
pub const EIGEN_SEPARATION_TOL: f64 = 1e-9;
/// Bound on numeric residuals: idempotent identities, integer rounding, exact-vs-numeric distance.
pub const RESIDUAL_TOL: f64 = 1e-6;

/// An associative unital algebra on the basis `b_0, …, b_{d-1}`.
pub trait Algebra: Sync {
    fn dim(&self) -> usize;
    /// Every structure constant lies in `Q(ζ_order)`.
    fn order(&self) -> u32;
    fn mul_basis(&self, i: usize, j: usize) -> &SparseVec;
    fn unit(&self) -> &SparseVec;
}

impl Algebra for HopfAlgebra {
    fn dim(&self) -> usize {
        HopfAlgebra::dim(self)
    }
    fn order(&self) -> u32 {
        self.order
    }
    fn mul_basis(&self, i: usize, j: usize) -> &SparseVec {
        HopfAlgebra::mul_basis(self, i, j)
    }
    fn unit(&self) -> &SparseVec {
        HopfAlgebra::unit(self)
    }
}

/// A bare algebra, e.g. a twisted group algebra `k_β K` with basis `u_x`.
#[derive(Clone, Debug)]
pub struct StructAlgebra {
    pub name: String,
    pub labels: Vec<String>,
    pub order: u32,
    pub(crate) mul: Vec<SparseVec>,
    pub(crate) unit: SparseVec,
}

impl StructAlgebra {
    pub fn new(
        name: &str,
        labels: Vec<String>,
        order: u32,
        mul: Vec<SparseVec>,
        unit: SparseVec,
    ) -> Self {
        assert_eq!(mul.len(), labels.len() * labels.len());
        Self {
            name: name.to_string(),
            labels,
            order,
            mul,
            unit,
        }
    }
}

impl Algebra for StructAlgebra {
    fn dim(&self) -> usize {
        self.labels.len()
    }
    fn order(&self) -> u32 {
        self.order
    }
    fn mul_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.mul[i * self.labels.len() + j]
    }
    fn unit(&self) -> &SparseVec {
        &self.unit
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IrrepEntry {
    pub label: String,
    pub degree: usize,
    /// `χ(b_x)` for every basis element; present only for monomial bases.
    #[serde(serialize_with = "serialize_character")]
    pub character: Option<Vec<CycScalar>>,
}

fn serialize_character<S: serde::Serializer>(
    c: &Option<Vec<CycScalar>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match c {
        None => s.serialize_none(),
        Some(v) => s.collect_seq(v.iter().map(scalar_terms)),
    }
}

/// Exact scalar as `(numerator, denominator, power)` triples in `Q(ζ_order)`, never floats.
pub fn scalar_terms(c: &CycScalar) -> (u32, Vec<(i64, i64, usize)>) {
    (
        c.order(),
        c.terms()
            .into_iter()
            .map(|(q, p)| (*q.numer(), *q.denom(), p))
            .collect(),
    )
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IrrepCatalog {
    pub entries: Vec<IrrepEntry>,
    pub algebra_dim: usize,
    /// The two seeds whose splits agreed.
    pub seeds: (u64, u64),
}

impl IrrepCatalog {
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.entries.iter().map(|e| e.degree).collect();
        d.sort_unstable();
        d
    }

    pub fn sum_of_squares(&self) -> usize {
        self.entries.iter().map(|e| e.degree * e.degree).sum()
    }
}

#[derive(Clone, Debug)]
pub struct DecomposeOptions {
    pub seed: u64,
    /// Elements generating the algebra; the center is computed as their common centralizer.
    /// `None` uses every basis element.
    pub generators: Option<Vec<SparseVec>>,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            generators: None,
        }
    }
}

/// Catalog plus the numeric central idempotents and block traces behind it.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub catalog: IrrepCatalog,
    /// `idempotents[i]` is the primitive central idempotent of block `i`, in basis coordinates.
    pub idempotents: Vec<Vec<Complex64>>,
    /// `block_traces[i][x]` is the trace of left multiplication by `b_x` on `A e_i`, i.e. `deg_i · χ_i(b_x)`.
    pub block_traces: Vec<Vec<Complex64>>,
}

pub fn decompose_semisimple(alg: &dyn Algebra, seed: u64) -> Result<IrrepCatalog> {
    Ok(decompose_with(
        alg,
        &DecomposeOptions {
            seed,
            generators: None,
        },
    )?
    .catalog)
}

/// Complex structure constants with sparse products.
struct NumAlg {
    d: usize,
    mul: Vec<Vec<(usize, Complex64)>>,
    /// `trace[k] = tr(L_{b_k})` on the regular module.
    trace: Vec<Complex64>,
}

impl NumAlg {
    fn new(alg: &dyn Algebra) -> Self {
        let d = alg.dim();
        let mul: Vec<Vec<(usize, Complex64)>> = (0..d * d)
            .into_par_iter()
            .map(|k| {
                alg.mul_basis(k / d, k % d)
                    .iter()
                    .map(|(i, c)| (*i, c.to_complex()))
                    .collect()
            })
            .collect();
        let trace = (0..d)
            .map(|k| {
                (0..d)
                    .flat_map(|j| {
                        mul[k * d + j]
                            .iter()
                            .filter(move |(i, _)| *i == j)
                            .map(|(_, c)| *c)
                    })
                    .sum()
            })
            .collect();
        Self { d, mul, trace }
    }

    fn product(&self, a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.d];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| x.norm_sqr() > 0.0) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| y.norm_sqr() > 0.0) {
                let xy = x * y;
                for (k, c) in &self.mul[i * self.d + j] {
                    out[*k] += xy * c;
                }
            }
        }
        out
    }

    fn basis_times(&self, x: usize, b: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.d];
        for (j, y) in b.iter().enumerate().filter(|(_, y)| y.norm_sqr() > 0.0) {
            for (k, c) in &self.mul[x * self.d + j] {
                out[*k] += y * c;
            }
        }
        out
    }

    fn trace_of(&self, a: &[Complex64]) -> Complex64 {
        a.iter().zip(&self.trace).map(|(x, t)| x * t).sum()
    }
}

fn to_numeric(v: &SparseVec, d: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); d];
    for (i, c) in v {
        out[*i] = c.to_complex();
    }
    out
}

fn dist(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// Exact basis of the center together with the free coordinate of each basis vector:
/// a central element `w` has coordinates `w[free_k]`.
fn center(alg: &dyn Algebra, gens: &[SparseVec]) -> (Vec<SparseVec>, Vec<usize>) {
    let d = alg.dim();
    let mul = |a: &[(usize, CycScalar)], b: &[(usize, CycScalar)]| {
        let mut acc = Accumulator::new();
        for (i, x) in a {
            for (j, y) in b {
                acc.add_scaled(alg.mul_basis(*i, *j), &(x * y));
            }
        }
        acc.into_sparse()
    };
    // Equation (gen, m): Σ_k z_k [gen·b_k − b_k·gen]_m = 0.
    let eqs: Vec<SparseVec> = gens
        .par_iter()
        .flat_map_iter(|g| {
            let mut rows: Vec<Accumulator> = vec![Accumulator::new(); d];
            for k in 0..d {
                let bk = vec![(k, CycScalar::one())];
                for (m, c) in mul(g, &bk) {
                    rows[m].add(k, &c);
                }
                for (m, c) in mul(&bk, g) {
                    rows[m].add(k, &(-&c));
                }
            }
            rows.into_iter()
                .map(|r| r.into_sparse())
                .filter(|r| !r.is_empty())
                .collect::<Vec<_>>()
        })
        .collect();
    let basis = nullspace(eqs, d);
    let frees = basis
        .iter()
        .map(|v| {
            v.iter()
                .find(|(i, c)| {
                    c.is_one()
                        && basis
                            .iter()
                            .filter(|w| !std::ptr::eq(*w, v))
                            .all(|w| crate::linalg::sparse_get(w, *i).is_zero())
                })
                .map(|(i, _)| *i)
                .expect("nullspace basis has a free coordinate")
        })
        .collect();
    (basis, frees)
}

struct NumericSplit {
    degrees: Vec<usize>,
    idempotents: Vec<Vec<Complex64>>,
}

fn numeric_split(
    num: &NumAlg,
    center: &[Vec<Complex64>],
    frees: &[usize],
    seed: u64,
) -> Result<NumericSplit> {
    let r = center.len();
    let d = num.d;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut z = vec![Complex64::new(0.0, 0.0); d];
    for c in center {
        let w = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        for (zi, ci) in z.iter_mut().zip(c) {
            *zi += w * ci;
        }
    }
    // Left multiplication by z on the center, in free coordinates.
    let cols: Vec<Vec<Complex64>> = center.par_iter().map(|c| num.product(&z, c)).collect();
    let m = DMatrix::from_fn(r, r, |i, j| cols[j][frees[i]]);
    let eig = m
        .clone()
        .schur()
        .eigenvalues()
        .ok_or_else(|| Error::Decomposition("Schur form did not converge".into()))?;
    let radius = eig.iter().map(|l| l.norm()).fold(1.0f64, f64::max);
    for i in 0..r {
        for j in 0..i {
            if (eig[i] - eig[j]).norm() < EIGEN_SEPARATION_TOL * radius {
                return Err(Error::Decomposition(format!(
                    "eigenvalues {i} and {j} not separated (seed {seed})"
                )));
            }
        }
    }
    let mut idempotents = Vec::with_capacity(r);
    let mut degrees = Vec::with_capacity(r);
    for lambda in eig.iter() {
        let shifted = &m - DMatrix::<Complex64>::identity(r, r) * *lambda;
        let svd = shifted.svd(false, true);
        let v_t = svd
            .v_t
            .ok_or_else(|| Error::Decomposition("SVD failed".into()))?;
        let k = (0..r)
            .min_by(|&a, &b| svd.singular_values[a].total_cmp(&svd.singular_values[b]))
            .unwrap();
        let coords: Vec<Complex64> = (0..r).map(|j| v_t[(k, j)].conj()).collect();
        let mut w = vec![Complex64::new(0.0, 0.0); d];
        for (c, basis) in coords.iter().zip(center) {
            for (wi, bi) in w.iter_mut().zip(basis) {
                *wi += c * bi;
            }
        }
        // w is a multiple of a primitive idempotent: w² = s·w.
        let w2 = num.product(&w, &w);
        let p = (0..d)
            .max_by(|&a, &b| w[a].norm().total_cmp(&w[b].norm()))
            .unwrap();
        let s = w2[p] / w[p];
        if s.norm() < RESIDUAL_TOL {
            return Err(Error::Decomposition(
                "central element is nilpotent; algebra is not semisimple".into(),
            ));
        }
        let e: Vec<Complex64> = w.iter().map(|x| x / s).collect();
        let resid = dist(&num.product(&e, &e), &e);
        if resid > RESIDUAL_TOL {
            return Err(Error::Decomposition(format!(
                "idempotent residual {resid:.3e}"
            )));
        }
        let sq = num.trace_of(&e);
        let rounded = sq.re.round();
        if (sq - Complex64::new(rounded, 0.0)).norm() > RESIDUAL_TOL || rounded < 1.0 {
            return Err(Error::Decomposition(format!(
                "block dimension {sq} is not a positive integer"
            )));
        }
        let deg = (rounded as usize).isqrt();
        if deg * deg != rounded as usize {
            return Err(Error::Decomposition(format!(
                "block dimension {rounded} is not a square"
            )));
        }
        idempotents.push(e);
        degrees.push(deg);
    }
    let total: usize = degrees.iter().map(|x| x * x).sum();
    if total != d {
        return Err(Error::Decomposition(format!(
            "Σ deg² = {total} but dim = {d} (residual {})",
            d as i64 - total as i64
        )));
    }
    for i in 0..r {
        for j in 0..i {
            let resid = num
                .product(&idempotents[i], &idempotents[j])
                .iter()
                .map(|x| x.norm_sqr())
                .sum::<f64>()
                .sqrt();
            if resid > RESIDUAL_TOL {
                return Err(Error::Decomposition(format!(
                    "idempotents {i}, {j} not orthogonal ({resid:.3e})"
                )));
            }
        }
    }
    Ok(NumericSplit {
        degrees,
        idempotents,
    })
}

/// Second seed derived from the first; both splits must agree on the degree multiset.
fn companion_seed(seed: u64) -> u64 {
    seed ^ 0x9E37_79B9_7F4A_7C15
}

/// Decomposes `alg`, cross-checking two seeded splits.
pub fn decompose_with(alg: &dyn Algebra, opts: &DecomposeOptions) -> Result<Decomposition> {
    let d = alg.dim();
    let gens: Vec<SparseVec> = match &opts.generators {
        Some(g) => g.clone(),
        None => (0..d).map(|i| vec![(i, CycScalar::one())]).collect(),
    };
    let (center_exact, frees) = center(alg, &gens);
    let num = NumAlg::new(alg);
    let center_num: Vec<Vec<Complex64>> = center_exact.iter().map(|c| to_numeric(c, d)).collect();
    let seeds = (opts.seed, companion_seed(opts.seed));
    let a = numeric_split(&num, &center_num, &frees, seeds.0)?;
    let b = numeric_split(&num, &center_num, &frees, seeds.1)?;
    let (mut da, mut db) = (a.degrees.clone(), b.degrees.clone());
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return Err(Error::Decomposition(format!(
            "seeds {} and {} disagree: {da:?} vs {db:?}",
            seeds.0, seeds.1
        )));
    }
    let block_traces: Vec<Vec<Complex64>> = a
        .idempotents
        .par_iter()
        .map(|e| {
            (0..d)
                .map(|x| num.trace_of(&num.basis_times(x, e)))
                .collect()
        })
        .collect();

    let characters = match monomial_structure(alg) {
        Some(mono) => Some(exact_characters(
            alg,
            &mono,
            &a.degrees,
            &block_traces,
            &a.idempotents,
        )?),
        None => None,
    };

    // Deterministic order: by degree, then by character (exact) or block traces (numeric).
    let mut order: Vec<usize> = (0..a.degrees.len()).collect();
    let key = |i: usize| -> Vec<(i64, i64)> {
        block_traces[i]
            .iter()
            .map(|c| ((c.re * 1e6).round() as i64, (c.im * 1e6).round() as i64))
            .collect()
    };
    order.sort_by(|&i, &j| {
        a.degrees[i]
            .cmp(&a.degrees[j])
            .then_with(|| key(i).cmp(&key(j)))
    });
    let mono = characters.is_some();
    let entries = order
        .iter()
        .enumerate()
        .map(|(pos, &i)| IrrepEntry {
            label: if mono {
                format!("χ{pos}")
            } else {
                format!("ρ{pos}")
            },
            degree: a.degrees[i],
            character: characters.as_ref().map(|c| c[i].clone()),
        })
        .collect();
    Ok(Decomposition {
        catalog: IrrepCatalog {
            entries,
            algebra_dim: d,
            seeds,
        },
        idempotents: order.iter().map(|&i| a.idempotents[i].clone()).collect(),
        block_traces: order.iter().map(|&i| block_traces[i].clone()).collect(),
    })
}

/// For a monomial basis: `b_i b_j = c_ij b_{k_ij}` with `c_ij` a root of unity, and the unit basis index.
struct Monomial {
    unit: usize,
    table: Vec<(usize, CycScalar)>,
}

fn monomial_structure(alg: &dyn Algebra) -> Option<Monomial> {
    let d = alg.dim();
    let unit = match alg.unit().as_slice() {
        [(u, c)] if c.is_one() => *u,
        _ => return None,
    };
    let n = (alg.order() as u64).lcm(&2) as u32;
    let mut table = Vec::with_capacity(d * d);
    for k in 0..d * d {
        match alg.mul_basis(k / d, k % d).as_slice() {
            [(i, c)] if c.pow(n).is_one() => table.push((*i, c.clone())),
            _ => return None,
        }
    }
    Some(Monomial { unit, table })
}

fn root_order(c: &CycScalar, bound: u32) -> u32 {
    let mut p = c.clone();
    for k in 1..=bound {
        if p.is_one() {
            return k;
        }
        p = &p * c;
    }
    panic!("not a root of unity of order ≤ {bound}")
}

/// Exact characters by Fourier inversion of the power traces `χ(b_x^j)`, then exact reconstruction
/// of the central idempotents `e_χ = (deg/dim) Σ_x χ(b_x^{-1}) b_x`.
fn exact_characters(
    alg: &dyn Algebra,
    mono: &Monomial,
    degrees: &[usize],
    block_traces: &[Vec<Complex64>],
    idempotents: &[Vec<Complex64>],
) -> Result<Vec<Vec<CycScalar>>> {
    let d = alg.dim();
    let bound = 2 * (alg.order() as u64).lcm(&2) as u32;
    let mul = |x: usize, y: usize| &mono.table[x * d + y];
    // powers[x] = (b_x^j for j < m as (index, coefficient)), with b_x^m = c·1.
    let powers: Vec<(Vec<(usize, CycScalar)>, CycScalar)> = (0..d)
        .map(|x| {
            let mut seq = vec![(mono.unit, CycScalar::one())];
            loop {
                let (idx, c) = seq.last().unwrap();
                let (nidx, nc) = mul(*idx, x);
                let c = c * nc;
                if *nidx == mono.unit {
                    return (seq, c);
                }
                seq.push((*nidx, c));
            }
        })
        .collect();
    let mut out = Vec::with_capacity(degrees.len());
    for (i, &deg) in degrees.iter().enumerate() {
        let chi_num = |y: usize| block_traces[i][y] / deg as f64;
        let mut chars = Vec::with_capacity(d);
        for (seq, c) in &powers {
            let m = seq.len();
            let o = root_order(c, bound);
            let big_m = m * o as usize;
            let cnum = c.to_complex();
            let vals: Vec<Complex64> = (0..big_m)
                .map(|j| {
                    let (y, cy) = &seq[j % m];
                    cnum.powu((j / m) as u32) * cy.to_complex() * chi_num(*y)
                })
                .collect();
            let mut terms = Vec::new();
            let mut total = 0i64;
            for k in 0..big_m {
                let s: Complex64 = vals
                    .iter()
                    .enumerate()
                    .map(|(j, v)| {
                        v * Complex64::from_polar(
                            1.0,
                            -2.0 * std::f64::consts::PI * ((j * k) % big_m) as f64 / big_m as f64,
                        )
                    })
                    .sum::<Complex64>()
                    / big_m as f64;
                let r = s.re.round();
                if (s - Complex64::new(r, 0.0)).norm() > RESIDUAL_TOL || r < 0.0 {
                    return Err(Error::Decomposition(format!(
                        "eigenvalue multiplicity {s} is not a natural number"
                    )));
                }
                if r > 0.0 {
                    terms.push((Rational64::from_integer(r as i64), k as i64));
                    total += r as i64;
                }
            }
            if total != deg as i64 {
                return Err(Error::Decomposition(format!(
                    "multiplicities sum to {total}, degree is {deg}"
                )));
            }
            chars.push(CycScalar::from_terms(big_m as u32, &terms));
        }
        out.push(chars);
    }

    // Exact revalidation through the reconstructed central idempotents.
    let dimq = Rational64::from_integer(d as i64);
    let mut sum = Accumulator::new();
    let exact: Vec<SparseVec> = out
        .iter()
        .zip(degrees)
        .map(|(chi, &deg)| {
            let mut acc = Accumulator::new();
            for (x, (seq, c)) in powers.iter().enumerate() {
                // b_x^{-1} = c⁻¹ · b_x^{m-1}
                let (y, cy) = &seq[seq.len() - 1];
                let inv_c = c.inv().expect("root of unity");
                let val = &(&inv_c * cy) * &chi[*y];
                acc.add(
                    x,
                    &val.scale(&(Rational64::from_integer(deg as i64) / dimq)),
                );
            }
            acc.into_sparse()
        })
        .collect();
    let xmul = |a: &SparseVec, b: &SparseVec| {
        let mut acc = Accumulator::new();
        for (i, x) in a {
            for (j, y) in b {
                let (k, c) = mul(*i, *j);
                acc.add(*k, &(&(x * y) * c));
            }
        }
        acc.into_sparse()
    };
    for (i, e) in exact.iter().enumerate() {
        if xmul(e, e) != *e {
            return Err(Error::Consistency(format!(
                "reconstructed idempotent {i} is not idempotent"
            )));
        }
        if dist(&to_numeric(e, d), &idempotents[i]) > RESIDUAL_TOL {
            return Err(Error::Consistency(format!(
                "reconstructed idempotent {i} disagrees with the numeric split"
            )));
        }
        sum.add_scaled(e, &CycScalar::one());
    }
    if sum.into_sparse() != vec![(mono.unit, CycScalar::one())] {
        return Err(Error::Consistency(
            "central idempotents do not sum to 1".into(),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{function_algebra, group_algebra};
    use crate::perm::FiniteGroup;

    /// Class-sum oracle: the number of irreducibles equals the number of classes, and
    /// `Σ deg² = |G|` with every degree dividing `|G|`.
    fn check_group(g: &FiniteGroup, expect: &[usize]) {
        let cat = decompose_semisimple(&group_algebra(g), 3).unwrap();
        assert_eq!(cat.degrees(), expect);
        assert_eq!(cat.entries.len(), g.conjugacy_classes().len());
        assert_eq!(cat.sum_of_squares(), g.order());
    }

    #[test]
    fn symmetric_and_alternating_degrees() {
        check_group(&FiniteGroup::symmetric(3), &[1, 1, 2]);
        check_group(&FiniteGroup::symmetric(4), &[1, 1, 2, 3, 3]);
        check_group(&FiniteGroup::alternating(5), &[1, 3, 3, 4, 5]);
    }

    #[test]
    fn characters_are_class_functions_and_orthonormal() {
        let g = FiniteGroup::symmetric(4);
        let cat = decompose_semisimple(&group_algebra(&g), 11).unwrap();
        let n = g.order();
        for e in &cat.entries {
            let chi = e.character.as_ref().unwrap();
            assert_eq!(chi[g.identity()], CycScalar::from_int(e.degree as i64));
            for x in 0..n {
                for y in 0..n {
                    assert_eq!(chi[g.conj(x, y)], chi[y]);
                }
            }
        }
        for a in &cat.entries {
            for b in &cat.entries {
                let (ca, cb) = (a.character.as_ref().unwrap(), b.character.as_ref().unwrap());
                let s = (0..n).fold(CycScalar::zero(), |acc, x| acc + &ca[x] * &cb[x].conj());
                let expect = if a.label == b.label { n as i64 } else { 0 };
                assert_eq!(s, CycScalar::from_int(expect));
            }
        }
    }

    #[test]
    fn cyclic_characters_use_roots_of_unity() {
        let g = FiniteGroup::cyclic(5);
        let cat = decompose_semisimple(&group_algebra(&g), 0).unwrap();
        assert_eq!(cat.degrees(), vec![1; 5]);
        let gen = g.generator_indices()[0];
        let mut values: Vec<String> = cat
            .entries
            .iter()
            .map(|e| e.character.as_ref().unwrap()[gen].to_string())
            .collect();
        values.sort();
        values.dedup();
        assert_eq!(values.len(), 5);
    }

    #[test]
    fn commutative_function_algebra_splits_into_points() {
        let cat = decompose_semisimple(&function_algebra(&FiniteGroup::symmetric(3)), 1).unwrap();
        assert_eq!(cat.degrees(), vec![1; 6]);
        assert!(cat.entries.iter().all(|e| e.character.is_none()));
    }

    #[test]
    fn non_semisimple_algebra_is_rejected() {
        // k[x]/(x²) on the basis 1, x.
        let one = CycScalar::one();
        let mul = vec![
            vec![(0, one.clone())],
            vec![(1, one.clone())],
            vec![(1, one.clone())],
            vec![],
        ];
        let alg = StructAlgebra::new(
            "dual numbers",
            vec!["1".into(), "x".into()],
            1,
            mul,
            vec![(0, one)],
        );
        assert!(matches!(
            decompose_semisimple(&alg, 0),
            Err(Error::Decomposition(_))
        ));
    }
}
