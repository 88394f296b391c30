use crate::hopf::axioms::flip;
use crate::hopf::{HopfAlgebra, Tensor2};
use crate::linalg::{Accumulator, PairAccumulator, SparseVec};

/// `H*` on the dual basis `f_i`: products transpose `Δ`, coproducts transpose the product.
pub fn dual_hopf(h: &HopfAlgebra) -> HopfAlgebra {
    let d = h.dim();
    let mut mul: Vec<Accumulator> = vec![Accumulator::new(); d * d];
    for k in 0..d {
        for (i, j, c) in h.comul_basis(k) {
            mul[i * d + j].add(k, c);
        }
    }
    let mut comul: Vec<PairAccumulator> = vec![PairAccumulator::new(); d];
    for i in 0..d {
        for j in 0..d {
            for (k, c) in h.mul_basis(i, j) {
                comul[*k].add(i, j, c);
            }
        }
    }
    let unit: SparseVec = h
        .counit
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect();
    let mut counit = vec![crate::cyclotomic::CycScalar::zero(); d];
    for (i, c) in h.unit() {
        counit[*i] = c.clone();
    }
    let mut dual = HopfAlgebra::from_parts(
        &format!("{}*", h.name),
        h.labels.iter().map(|l| dual_label(l)).collect(),
        h.order,
        mul.into_iter().map(|a| a.into_sparse()).collect(),
        unit,
        comul.into_iter().map(|a| a.into_sorted()).collect(),
        counit,
    );
    dual.antipode = transpose(&h.antipode, d);
    dual
}

/// `f[x]` names the dual basis vector of `x`; dualizing twice strips the wrapper.
pub(crate) fn dual_label(l: &str) -> String {
    match l.strip_prefix("f[").and_then(|r| r.strip_suffix(']')) {
        Some(inner) if balanced(inner) => inner.to_string(),
        _ => format!("f[{l}]"),
    }
}

fn balanced(s: &str) -> bool {
    let mut depth = 0i32;
    for ch in s.chars() {
        match ch {
            '[' => depth += 1,
            ']' => {
                depth -= 1;
                if depth < 0 {
                    return false;
                }
            }
            _ => {}
        }
    }
    depth == 0
}

/// Transpose of a square matrix given by sparse columns.
pub(crate) fn transpose(cols: &[SparseVec], d: usize) -> Vec<SparseVec> {
    let mut out: Vec<SparseVec> = vec![Vec::new(); d];
    for (j, col) in cols.iter().enumerate() {
        for (i, c) in col {
            out[*i].push((j, c.clone()));
        }
    }
    out
}

/// Opposite algebra, same coalgebra; the antipode becomes `S^{-1}`.
pub fn op_hopf(h: &HopfAlgebra) -> HopfAlgebra {
    let d = h.dim();
    let mut out = h.clone();
    out.name = format!("{}^op", h.name);
    for i in 0..d {
        for j in 0..d {
            out.mul[i * d + j] = h.mul_basis(j, i).clone();
        }
    }
    out.antipode = h
        .antipode_inverse()
        .expect("antipode of a finite-dimensional Hopf algebra is invertible");
    out.rmatrix = None;
    out
}

/// Co-opposite coalgebra, same algebra; the antipode becomes `S^{-1}`.
pub fn cop_hopf(h: &HopfAlgebra) -> HopfAlgebra {
    let mut out = h.clone();
    out.name = format!("{}^cop", h.name);
    out.comul = h.comul.iter().map(|t: &Tensor2| flip(t)).collect();
    out.antipode = h
        .antipode_inverse()
        .expect("antipode of a finite-dimensional Hopf algebra is invertible");
    out.rmatrix = h.rmatrix.as_ref().map(flip);
    out
}
