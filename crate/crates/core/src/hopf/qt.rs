use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cyclotomic::CycScalar;
use crate::hopf::axioms::{add3, comul_left_leg, comul_right_leg, flip, map_leg, Tensor3};
use crate::hopf::{HopfAlgebra, Tensor2};
use crate::linalg::{solve_unique, sparse_get, Accumulator, PairAccumulator, SparseVec};
use crate::report::AxiomReport;

/// Above this dimension the tensor-square inverse of `R` is not solved for;
/// the candidate `(S⊗id)(R)` is verified instead.
const DIRECT_INVERSE_DIM_LIMIT: usize = 40;

/// Sampled basis elements for the cross-relation check of `f: D(H) → H` above the exhaustive limit.
const CROSS_SAMPLES: usize = 24;

fn tensor3_sorted(acc: BTreeMap<(usize, usize, usize), CycScalar>) -> Tensor3 {
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

/// Solves `R X = 1⊗1` in `H ⊗ H`.
pub(crate) fn solve_tensor_inverse(h: &HopfAlgebra, r: &Tensor2) -> Option<Tensor2> {
    let d = h.dim();
    let mut rows: HashMap<(usize, usize), Accumulator> = HashMap::new();
    for k in 0..d {
        for l in 0..d {
            for (p, q, c) in h.tensor_mul(r, &[(k, l, CycScalar::one())]) {
                rows.entry((p, q)).or_default().add(k * d + l, &c);
            }
        }
    }
    let one_one: HashMap<(usize, usize), CycScalar> = h
        .tensor_unit()
        .into_iter()
        .map(|(a, b, c)| ((a, b), c))
        .collect();
    let mut keys: BTreeSet<(usize, usize)> = rows.keys().copied().collect();
    keys.extend(one_one.keys().copied());
    let eqs = keys
        .into_iter()
        .map(|k| {
            let row = rows.remove(&k).unwrap_or_default().into_sparse();
            (
                row,
                one_one.get(&k).cloned().unwrap_or_else(CycScalar::zero),
            )
        })
        .collect();
    let sol = solve_unique(eqs, d * d).ok()?;
    Some(
        sol.into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i / d, i % d, c))
            .collect(),
    )
}

pub fn verify_qt(h: &HopfAlgebra, r: &Tensor2) -> AxiomReport {
    verify_qt_with(h, r, DIRECT_INVERSE_DIM_LIMIT)
}

/// Checks invertibility and QT1–QT5 for `R = Σ r⁽¹⁾ ⊗ r⁽²⁾`.
///
/// QT1 `(Δ⊗id)R = R₁₃R₂₃`, QT2 `(ε⊗id)R = 1`, QT3 `(id⊗Δ)R = R₁₃R₁₂`, QT4 `(id⊗ε)R = 1`,
/// QT5 `Δᶜᵒᵖ(h) R = R Δ(h)` on every basis element. Non-invertibility is reported as its own axiom.
pub fn verify_qt_with(h: &HopfAlgebra, r: &Tensor2, direct_inverse_limit: usize) -> AxiomReport {
    let mut rep = AxiomReport::new();
    let one_one = h.tensor_unit();

    rep.check("R invertible");
    let candidate = map_leg(r, &h.antipode, true);
    let inverse_ok =
        h.tensor_mul(r, &candidate) == one_one && h.tensor_mul(&candidate, r) == one_one;
    if !inverse_ok {
        let solved = (h.dim() <= direct_inverse_limit)
            .then(|| solve_tensor_inverse(h, r))
            .flatten()
            .filter(|x| h.tensor_mul(x, r) == one_one);
        if solved.is_none() {
            rep.fail("R invertible", vec![]);
        }
    }

    rep.check("QT1");
    let mut r13r23 = BTreeMap::new();
    for (a1, a2, c) in r {
        for (b1, b2, e) in r {
            for (m, u) in h.mul_basis(*a2, *b2) {
                add3(&mut r13r23, (*a1, *b1, *m), &(&(c * e) * u));
            }
        }
    }
    if comul_left_leg(h, r) != tensor3_sorted(r13r23) {
        rep.fail("QT1", vec![]);
    }

    rep.check("QT2");
    let mut left = Accumulator::new();
    let mut right = Accumulator::new();
    for (a, b, c) in r {
        left.add(*b, &(c * h.counit_basis(*a)));
        right.add(*a, &(c * h.counit_basis(*b)));
    }
    if left.into_sparse() != *h.unit() {
        rep.fail("QT2", vec![]);
    }

    rep.check("QT3");
    let mut r13r12 = BTreeMap::new();
    for (a1, a2, c) in r {
        for (b1, b2, e) in r {
            for (m, u) in h.mul_basis(*a1, *b1) {
                add3(&mut r13r12, (*m, *b2, *a2), &(&(c * e) * u));
            }
        }
    }
    if comul_right_leg(h, r) != tensor3_sorted(r13r12) {
        rep.fail("QT3", vec![]);
    }

    rep.check("QT4");
    if right.into_sparse() != *h.unit() {
        rep.fail("QT4", vec![]);
    }

    rep.check("QT5");
    let bad: Vec<usize> = (0..h.dim())
        .into_par_iter()
        .filter(|&i| {
            let delta = h.comul_basis(i);
            h.tensor_mul(&flip(delta), r) != h.tensor_mul(r, delta)
        })
        .take_any(8)
        .collect();
    for i in bad {
        rep.fail("QT5", vec![i]);
    }
    rep
}

/// The maps `f_R(f_i) = Σ_j r_ij b_j` and `f_{R21}(f_j) = Σ_i r_ij b_i` as columns indexed by dual basis,
/// with their hom checks and the checks on `f: D(H) → H`, `f(p⊗h) = f_R(p)h`.
#[derive(Clone, Debug)]
pub struct FrMaps {
    pub f_r: Vec<SparseVec>,
    pub f_r21: Vec<SparseVec>,
    pub report: AxiomReport,
}

fn columns(d: usize, r: &Tensor2, first_is_index: bool) -> Vec<SparseVec> {
    let mut acc: Vec<Accumulator> = vec![Accumulator::new(); d];
    for (a, b, c) in r {
        if first_is_index {
            acc[*a].add(*b, c);
        } else {
            acc[*b].add(*a, c);
        }
    }
    acc.into_iter().map(|a| a.into_sparse()).collect()
}

fn apply_map(cols: &[SparseVec], v: &[(usize, CycScalar)]) -> SparseVec {
    let mut acc = Accumulator::new();
    for (i, c) in v {
        acc.add_scaled(&cols[*i], c);
    }
    acc.into_sparse()
}

/// Checks `φ(pq) = φ(p)φ(q)` (or `φ(q)φ(p)` when `reversed`) on all dual-basis pairs.
fn check_multiplicative(h: &HopfAlgebra, phi: &[SparseVec], reversed: bool) -> Vec<Vec<usize>> {
    let support: Vec<usize> = (0..h.dim()).filter(|&i| !phi[i].is_empty()).collect();
    // f_p f_q = Σ_m Δ(b_m)[p,q] f_m
    let mut lhs: HashMap<(usize, usize), Accumulator> = HashMap::new();
    for &m in &support {
        for (p, q, c) in h.comul_basis(m) {
            lhs.entry((*p, *q)).or_default().add_scaled(&phi[m], c);
        }
    }
    let mut keys: BTreeSet<(usize, usize)> = lhs.keys().copied().collect();
    for &p in &support {
        for &q in &support {
            keys.insert((p, q));
        }
    }
    let keys: Vec<(usize, usize)> = keys.into_iter().collect();
    let lhs: HashMap<(usize, usize), SparseVec> =
        lhs.into_iter().map(|(k, v)| (k, v.into_sparse())).collect();
    keys.par_iter()
        .filter(|(p, q)| {
            let rhs = if reversed {
                h.mul(&phi[*q], &phi[*p])
            } else {
                h.mul(&phi[*p], &phi[*q])
            };
            lhs.get(&(*p, *q)).map(|v| v.as_slice()).unwrap_or(&[]) != rhs.as_slice()
        })
        .take_any(8)
        .map(|(p, q)| vec![*p, *q])
        .collect()
}

/// Checks `Δ(φ(f_k)) = Σ m_ij^k φ(f_i)⊗φ(f_j)` (legs swapped when `co_opposite`).
fn check_comultiplicative(
    h: &HopfAlgebra,
    phi: &[SparseVec],
    co_opposite: bool,
) -> Vec<Vec<usize>> {
    let d = h.dim();
    let support: Vec<usize> = (0..d).filter(|&i| !phi[i].is_empty()).collect();
    let mut rhs: HashMap<usize, PairAccumulator> = HashMap::new();
    for &i in &support {
        for &j in &support {
            for (k, m) in h.mul_basis(i, j) {
                let (a, b) = if co_opposite {
                    (&phi[j], &phi[i])
                } else {
                    (&phi[i], &phi[j])
                };
                let acc = rhs.entry(*k).or_default();
                for (x, u) in a {
                    for (y, v) in b {
                        acc.add(*x, *y, &(&(m * u) * v));
                    }
                }
            }
        }
    }
    let mut keys: BTreeSet<usize> = rhs.keys().copied().collect();
    keys.extend(support.iter().copied());
    let rhs: HashMap<usize, Tensor2> = rhs.into_iter().map(|(k, v)| (k, v.into_sorted())).collect();
    keys.into_iter()
        .filter(|k| h.comul(&phi[*k]) != rhs.get(k).cloned().unwrap_or_default())
        .take(8)
        .map(|k| vec![k])
        .collect()
}

/// Builds `f_R`, `f_{R21}` and verifies their (co)algebra-map properties, then `f: D(H) → H`.
pub fn derive_fr_maps(h: &HopfAlgebra, r: &Tensor2, seed: u64) -> FrMaps {
    let d = h.dim();
    let f_r = columns(d, r, true);
    let f_r21 = columns(d, r, false);
    let mut rep = AxiomReport::new();
    let eps: SparseVec = h
        .counit
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect();

    rep.check("f_R multiplicative");
    for w in check_multiplicative(h, &f_r, false) {
        rep.fail("f_R multiplicative", w);
    }
    rep.check("f_R unital");
    if apply_map(&f_r, &eps) != *h.unit() {
        rep.fail("f_R unital", vec![]);
    }
    rep.check("f_R comultiplicative");
    for w in check_comultiplicative(h, &f_r, true) {
        rep.fail("f_R comultiplicative", w);
    }
    rep.check("f_R counital");
    if let Some(k) = (0..d).find(|&k| h.counit(&f_r[k]) != sparse_get(h.unit(), k)) {
        rep.fail("f_R counital", vec![k]);
    }

    rep.check("f_R21 anti-multiplicative");
    for w in check_multiplicative(h, &f_r21, true) {
        rep.fail("f_R21 anti-multiplicative", w);
    }
    rep.check("f_R21 unital");
    if apply_map(&f_r21, &eps) != *h.unit() {
        rep.fail("f_R21 unital", vec![]);
    }
    rep.check("f_R21 comultiplicative");
    for w in check_comultiplicative(h, &f_r21, false) {
        rep.fail("f_R21 comultiplicative", w);
    }
    rep.check("f_R21 counital");
    if let Some(k) = (0..d).find(|&k| h.counit(&f_r21[k]) != sparse_get(h.unit(), k)) {
        rep.fail("f_R21 counital", vec![k]);
    }

    // (f⊗f)(Σ_i (ε⊗b_i) ⊗ (f_i⊗1)) with f(ε⊗b) = f_R(ε)b and f(f_i⊗1) = f_R(f_i).
    rep.check("(f⊗f)R_D = R");
    let f_eps = apply_map(&f_r, &eps);
    let mut image = PairAccumulator::new();
    for i in 0..d {
        let left = h.mul(&f_eps, &h.basis(i));
        let right = h.mul(&f_r[i], h.unit());
        for (a, u) in &left {
            for (b, v) in &right {
                image.add(*a, *b, &(u * v));
            }
        }
    }
    let mut r_sorted = r.clone();
    r_sorted.retain(|t| !t.2.is_zero());
    if image.into_sorted() != PairAccumulator::from_terms(&r_sorted).into_sorted() {
        rep.fail("(f⊗f)R_D = R", vec![]);
    }

    // f is multiplicative on D(H) iff f((ε⊗a)(p⊗1)) = a f_R(p) for basis a and every p.
    rep.check("f multiplicative on D(H)");
    let sinv = h.antipode_inverse().expect("invertible antipode");
    let support: Vec<usize> = (0..d).filter(|&i| !f_r[i].is_empty()).collect();
    let sampled = d > super::EXHAUSTIVE_DIM_LIMIT;
    let elems: Vec<usize> = if sampled {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut v = sample(&mut rng, d, CROSS_SAMPLES.min(d)).into_vec();
        v.sort_unstable();
        v
    } else {
        (0..d).collect()
    };
    let bad: Vec<Vec<usize>> = elems
        .par_iter()
        .filter_map(|&a| {
            let mut lhs: HashMap<usize, Accumulator> = HashMap::new();
            for ((a1, a2, a3), w) in comul_left_leg(h, h.comul_basis(a)) {
                for &x in &support {
                    let sandwich = h.mul(&h.mul(&sinv[a3], &h.basis(x)), &h.basis(a1));
                    if sandwich.is_empty() {
                        continue;
                    }
                    let tail = h.mul(&f_r[x], &h.basis(a2));
                    for (p, coef) in sandwich {
                        lhs.entry(p).or_default().add_scaled(&tail, &(&w * &coef));
                    }
                }
            }
            let mut keys: BTreeSet<usize> = lhs.keys().copied().collect();
            keys.extend(support.iter().copied());
            let lhs: HashMap<usize, SparseVec> =
                lhs.into_iter().map(|(k, v)| (k, v.into_sparse())).collect();
            keys.into_iter()
                .find(|p| lhs.get(p).cloned().unwrap_or_default() != h.mul(&h.basis(a), &f_r[*p]))
                .map(|p| vec![a, p])
        })
        .collect();
    for w in bad.into_iter().take(8) {
        rep.fail("f multiplicative on D(H)", w);
    }
    if sampled {
        rep.sampling = Some((seed, elems.len()));
    }
    FrMaps {
        f_r,
        f_r21,
        report: rep,
    }
}
