use rayon::prelude::*;

use crate::cyclotomic::CycScalar;
use crate::hopf::axioms::comul_left_leg;
use crate::hopf::dual::dual_label;
use crate::hopf::{HopfAlgebra, Tensor2};
use crate::linalg::{sparse_get, Accumulator, PairAccumulator, SparseVec};

/// Index arithmetic for `D(H) = H*ᶜᵒᵖ ⊗ H` with basis `f_a ⊗ b_j` at `a·d + j`.
#[derive(Clone, Copy, Debug)]
pub struct DoubleIndex {
    pub d: usize,
}

impl DoubleIndex {
    pub fn index(&self, a: usize, j: usize) -> usize {
        a * self.d + j
    }

    pub fn split(&self, i: usize) -> (usize, usize) {
        (i / self.d, i % self.d)
    }
}

/// `dual_mul[a*d + x]` lists `(m, c)` with `f_a f_x = Σ c f_m`, i.e. `Δ(b_m) ∋ c b_a⊗b_x`.
fn dual_products(h: &HopfAlgebra) -> Vec<Vec<(usize, CycScalar)>> {
    let d = h.dim();
    let mut out = vec![Vec::new(); d * d];
    for m in 0..d {
        for (a, x, c) in h.comul_basis(m) {
            out[a * d + x].push((m, c.clone()));
        }
    }
    out
}

/// Drinfeld double with the product
/// `(p⊗a)(q⊗b) = p(a₁ ⇀ q ↼ S⁻¹(a₃)) ⊗ a₂b`, where `(a₁ ⇀ q ↼ S⁻¹(a₃))(x) = q(S⁻¹(a₃) x a₁)`,
/// the coproduct `Δ(p⊗h) = (p₂⊗h₁) ⊗ (p₁⊗h₂)` and the canonical R-matrix
/// `R = Σ_i (ε⊗b_i) ⊗ (f_i⊗1)`.
pub fn drinfeld_double(h: &HopfAlgebra) -> HopfAlgebra {
    let d = h.dim();
    let dd = d * d;
    let ix = DoubleIndex { d };
    let sinv = h
        .antipode_inverse()
        .expect("antipode of a finite-dimensional Hopf algebra is invertible");
    let dual_mul = dual_products(h);

    // Work grouped by (j, c): the H*-part depends on (a, j, c), the H-part on (j, k).
    let blocks: Vec<Vec<(usize, usize, SparseVec)>> = (0..d)
        .into_par_iter()
        .map(|j| {
            let d2 = comul_left_leg(h, h.comul_basis(j));
            // conj[c] lists (x, j2, w): coefficient w of f_x in the sandwiched q = f_c, paired with a₂ = b_j2.
            let mut conj: Vec<Vec<(usize, usize, CycScalar)>> = vec![Vec::new(); d];
            for ((j1, j2, j3), w) in &d2 {
                let left = &sinv[*j3];
                for x in 0..d {
                    let lx = h.mul(left, &h.basis(x));
                    if lx.is_empty() {
                        continue;
                    }
                    for (c, coef) in h.mul(&lx, &h.basis(*j1)) {
                        conj[c].push((x, *j2, w * &coef));
                    }
                }
            }
            let mut out = Vec::new();
            for (c, terms) in conj.iter().enumerate() {
                for a in 0..d {
                    let mut acc = PairAccumulator::new();
                    for (x, j2, w) in terms {
                        for (m, e) in &dual_mul[a * d + x] {
                            acc.add(*m, *j2, &(w * e));
                        }
                    }
                    let left = acc.into_sorted();
                    for k in 0..d {
                        let mut prod = Accumulator::new();
                        for (m, j2, v) in &left {
                            for (n, u) in h.mul_basis(*j2, k) {
                                prod.add(ix.index(*m, *n), &(v * u));
                            }
                        }
                        out.push((ix.index(a, j), ix.index(c, k), prod.into_sparse()));
                    }
                }
            }
            out
        })
        .collect();
    let mut mul = vec![Vec::new(); dd * dd];
    for block in blocks {
        for (i, k, v) in block {
            mul[i * dd + k] = v;
        }
    }

    let eps: SparseVec = h
        .counit
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect();
    let mut unit = Accumulator::new();
    for (u, e) in &eps {
        for (v, c) in h.unit() {
            unit.add(ix.index(*u, *v), &(e * c));
        }
    }
    let unit = unit.into_sparse();
    let counit: Vec<CycScalar> = (0..dd)
        .map(|i| &sparse_get(h.unit(), i / d) * h.counit_basis(i % d))
        .collect();

    // f_a(xy) = Σ coefficient of b_a in b_x b_y, so Δ(f_a) = Σ f_x ⊗ f_y over those pairs.
    let mut mul_t: Vec<Vec<(usize, usize, CycScalar)>> = vec![Vec::new(); d];
    for x in 0..d {
        for y in 0..d {
            for (a, c) in h.mul_basis(x, y) {
                mul_t[*a].push((x, y, c.clone()));
            }
        }
    }
    let comul: Vec<Tensor2> = (0..dd)
        .into_par_iter()
        .map(|i| {
            let (a, j) = ix.split(i);
            let mut acc = PairAccumulator::new();
            for (p1, p2, m) in &mul_t[a] {
                for (h1, h2, c) in h.comul_basis(j) {
                    acc.add(ix.index(*p2, *h1), ix.index(*p1, *h2), &(m * c));
                }
            }
            acc.into_sorted()
        })
        .collect();

    let labels = (0..dd)
        .map(|i| {
            let (a, j) = ix.split(i);
            format!("{}⊗{}", dual_label(&h.labels[a]), h.labels[j])
        })
        .collect();
    let mut dh = HopfAlgebra::from_parts(
        &format!("D({})", h.name),
        labels,
        h.order,
        mul,
        unit,
        comul,
        counit,
    );

    // S(p⊗h) = (ε⊗S(h)) (S*⁻¹(p)⊗1), with S*⁻¹(f_a) = Σ_x f_a(S⁻¹(b_x)) f_x.
    let antipode: Vec<SparseVec> = (0..dd)
        .into_par_iter()
        .map(|i| {
            let (a, j) = ix.split(i);
            let mut left = Accumulator::new();
            for (u, e) in &eps {
                for (k, s) in h.antipode_basis(j) {
                    left.add(ix.index(*u, *k), &(e * s));
                }
            }
            let mut right = Accumulator::new();
            for (x, col) in sinv.iter().enumerate() {
                let c = sparse_get(col, a);
                if c.is_zero() {
                    continue;
                }
                for (v, u) in h.unit() {
                    right.add(ix.index(x, *v), &(&c * u));
                }
            }
            dh.mul(&left.into_sparse(), &right.into_sparse())
        })
        .collect();
    dh.antipode = antipode;

    let mut r = PairAccumulator::new();
    for i in 0..d {
        for (u, e) in &eps {
            for (v, c) in h.unit() {
                r.add(ix.index(*u, i), ix.index(i, *v), &(e * c));
            }
        }
    }
    dh.rmatrix = Some(r.into_sorted());
    dh
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorization::{derive_matched_pair, find_exact_factorizations, CocyclePair};
    use crate::hopf::{
        build_bicrossed_product, function_algebra, group_algebra, verify_hopf_axioms, verify_qt,
    };
    use crate::perm::FiniteGroup;

    #[test]
    fn doubles_of_small_algebras_are_quasitriangular() {
        let g = FiniteGroup::symmetric(3);
        let fact = find_exact_factorizations(&g, true)
            .into_iter()
            .find(|f| f.f.order() == 2)
            .unwrap();
        let mp = derive_matched_pair(&g, &fact).unwrap();
        let bismash = build_bicrossed_product("H", &mp, &CocyclePair::trivial(&mp)).unwrap();
        for h in [
            group_algebra(&FiniteGroup::cyclic(3)),
            group_algebra(&g),
            function_algebra(&g),
            bismash,
        ] {
            let dh = drinfeld_double(&h);
            assert_eq!(dh.dim(), h.dim() * h.dim());
            let rep = verify_hopf_axioms(&dh);
            assert!(rep.passed(), "{}: {rep}", dh.name);
            let qt = verify_qt(&dh, dh.rmatrix().unwrap());
            assert!(qt.passed(), "{}: {qt}", dh.name);
        }
    }
}
