use rayon::prelude::*;

use crate::cyclotomic::CycScalar;
use crate::error::{Error, Result};
use crate::hopf::HopfAlgebra;
use crate::linalg::{solve_unique, sparse_get, Accumulator, SolveError, SparseVec};

/// Reverse multiplication index: `rev[j]` lists `(m, k, c)` with `b_k b_j ∋ c·b_m`.
fn right_factor_index(h: &HopfAlgebra) -> Vec<Vec<(usize, usize, CycScalar)>> {
    let d = h.dim();
    let mut rev = vec![Vec::new(); d];
    for k in 0..d {
        for j in 0..d {
            for (m, c) in h.mul_basis(k, j) {
                rev[j].push((*m, k, c.clone()));
            }
        }
    }
    for r in &mut rev {
        r.sort_by_key(|t| (t.0, t.1));
    }
    rev
}

/// Solves `Σ S(b_{(1)}) b_{(2)} = ε(b)1` for the antipode matrix and confirms `id * S = uε`.
///
/// Unknown `k·d + i` is the coefficient of `b_k` in `S(b_i)`.
pub fn compute_antipode(h: &HopfAlgebra) -> Result<Vec<SparseVec>> {
    let d = h.dim();
    let rev = right_factor_index(h);
    let equations: Vec<(SparseVec, CycScalar)> = (0..d)
        .into_par_iter()
        .flat_map_iter(|i| {
            let mut rows: std::collections::BTreeMap<usize, Accumulator> =
                std::collections::BTreeMap::new();
            for (i1, i2, c) in h.comul_basis(i) {
                for (m, k, w) in &rev[*i2] {
                    rows.entry(*m).or_default().add(k * d + i1, &(c * w));
                }
            }
            let eps = h.counit_basis(i).clone();
            let mut out: Vec<(SparseVec, CycScalar)> = Vec::new();
            let unit_rows: Vec<usize> = h.unit().iter().map(|(m, _)| *m).collect();
            for m in rows
                .keys()
                .copied()
                .chain(unit_rows)
                .collect::<std::collections::BTreeSet<_>>()
            {
                let row = rows.get(&m).cloned().unwrap_or_default().into_sparse();
                out.push((row, &eps * &sparse_get(h.unit(), m)));
            }
            out
        })
        .collect();
    let sol = solve_unique(equations, d * d).map_err(|e| match e {
        SolveError::Inconsistent => {
            Error::NoAntipode("convolution equations are inconsistent".into())
        }
        SolveError::Underdetermined { free } => {
            Error::NoAntipode(format!("{free} undetermined antipode coefficients"))
        }
    })?;
    let mut cols: Vec<SparseVec> = vec![Vec::new(); d];
    for (idx, c) in sol.into_iter().enumerate() {
        if !c.is_zero() {
            cols[idx % d].push((idx / d, c));
        }
    }
    for col in &mut cols {
        col.sort_by_key(|t| t.0);
    }
    let mut check = h.clone();
    check.set_antipode(cols.clone());
    if let Some(i) = (0..d).find(|&i| !right_convolution_holds(&check, i)) {
        return Err(Error::NoAntipode(format!(
            "id * S fails on basis element {i}"
        )));
    }
    Ok(cols)
}

/// `Σ b_{(1)} S(b_{(2)}) = ε(b_i) 1`.
pub(crate) fn right_convolution_holds(h: &HopfAlgebra, i: usize) -> bool {
    let mut acc = Accumulator::new();
    for (a, b, c) in h.comul_basis(i) {
        acc.add_scaled(&h.mul(&h.basis(*a), h.antipode_basis(*b)), c);
    }
    let want: SparseVec = h
        .unit()
        .iter()
        .map(|(m, u)| (*m, u * h.counit_basis(i)))
        .filter(|t| !t.1.is_zero())
        .collect();
    acc.into_sparse() == want
}

/// `Σ S(b_{(1)}) b_{(2)} = ε(b_i) 1`.
pub(crate) fn left_convolution_holds(h: &HopfAlgebra, i: usize) -> bool {
    let mut acc = Accumulator::new();
    for (a, b, c) in h.comul_basis(i) {
        acc.add_scaled(&h.mul(h.antipode_basis(*a), &h.basis(*b)), c);
    }
    let want: SparseVec = h
        .unit()
        .iter()
        .map(|(m, u)| (*m, u * h.counit_basis(i)))
        .filter(|t| !t.1.is_zero())
        .collect();
    acc.into_sparse() == want
}
