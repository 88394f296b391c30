//! Finite-dimensional Hopf algebras as exact structure constants.

mod antipode;
mod axioms;
mod bicrossed;
mod double;
mod dual;
mod dump;
mod qt;
mod twist;

pub use antipode::compute_antipode;
pub use axioms::{verify_hopf_axioms, verify_hopf_axioms_with, AxiomOptions, EXHAUSTIVE_DIM_LIMIT};
pub use bicrossed::build_bicrossed_product;
pub use double::{drinfeld_double, DoubleIndex};
pub use dual::{cop_hopf, dual_hopf, op_hopf};
pub use dump::{load_dump, write_dump};
pub use qt::{derive_fr_maps, verify_qt, verify_qt_with, FrMaps};
pub use twist::{apply_twist, group_algebra_abelian_twist, verify_twist, Twist};

use std::collections::HashMap;

use crate::cyclotomic::CycScalar;
use crate::linalg::{solve_unique, Accumulator, PairAccumulator, SparseVec};
use crate::perm::FiniteGroup;

/// An element of `H ⊗ H` as sorted `(i, j, coefficient)` terms.
pub type Tensor2 = Vec<(usize, usize, CycScalar)>;

/// Structure constants of a Hopf algebra on the basis `b_0, …, b_{d-1}`.
///
/// `mul[i*d + j]` is `b_i b_j`, `comul[i]` is `Δ(b_i)`, `antipode[i]` is `S(b_i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HopfAlgebra {
    pub name: String,
    pub labels: Vec<String>,
    /// Every scalar lies in `Q(ζ_order)`.
    pub order: u32,
    pub(crate) mul: Vec<SparseVec>,
    pub(crate) unit: SparseVec,
    pub(crate) comul: Vec<Tensor2>,
    pub(crate) counit: Vec<CycScalar>,
    pub(crate) antipode: Vec<SparseVec>,
    pub(crate) rmatrix: Option<Tensor2>,
}

impl HopfAlgebra {
    /// Assembles a bialgebra; the antipode is left empty until [`compute_antipode`] fills it.
    pub fn from_parts(
        name: &str,
        labels: Vec<String>,
        order: u32,
        mul: Vec<SparseVec>,
        unit: SparseVec,
        comul: Vec<Tensor2>,
        counit: Vec<CycScalar>,
    ) -> Self {
        let d = labels.len();
        assert_eq!(mul.len(), d * d);
        assert_eq!(comul.len(), d);
        assert_eq!(counit.len(), d);
        Self {
            name: name.to_string(),
            labels,
            order,
            mul,
            unit,
            comul,
            counit,
            antipode: vec![Vec::new(); d],
            rmatrix: None,
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.mul[i * self.dim() + j]
    }

    pub fn unit(&self) -> &SparseVec {
        &self.unit
    }

    pub fn comul_basis(&self, i: usize) -> &Tensor2 {
        &self.comul[i]
    }

    pub fn counit_basis(&self, i: usize) -> &CycScalar {
        &self.counit[i]
    }

    pub fn antipode_basis(&self, i: usize) -> &SparseVec {
        &self.antipode[i]
    }

    pub fn rmatrix(&self) -> Option<&Tensor2> {
        self.rmatrix.as_ref()
    }

    pub fn set_rmatrix(&mut self, r: Option<Tensor2>) {
        self.rmatrix = r;
    }

    pub fn set_mul_basis(&mut self, i: usize, j: usize, v: SparseVec) {
        let d = self.dim();
        self.mul[i * d + j] = v;
    }

    pub fn set_comul_basis(&mut self, i: usize, v: Tensor2) {
        self.comul[i] = v;
    }

    pub fn set_counit_basis(&mut self, i: usize, v: CycScalar) {
        self.counit[i] = v;
    }

    pub fn set_antipode(&mut self, columns: Vec<SparseVec>) {
        assert_eq!(columns.len(), self.dim());
        self.antipode = columns;
    }

    pub fn basis(&self, i: usize) -> SparseVec {
        vec![(i, CycScalar::one())]
    }

    pub fn mul(&self, a: &[(usize, CycScalar)], b: &[(usize, CycScalar)]) -> SparseVec {
        let mut acc = Accumulator::new();
        for (i, x) in a {
            for (j, y) in b {
                acc.add_scaled(self.mul_basis(*i, *j), &(x * y));
            }
        }
        acc.into_sparse()
    }

    pub fn comul(&self, a: &[(usize, CycScalar)]) -> Tensor2 {
        let mut acc = PairAccumulator::new();
        for (i, x) in a {
            for (p, q, c) in &self.comul[*i] {
                acc.add(*p, *q, &(c * x));
            }
        }
        acc.into_sorted()
    }

    pub fn counit(&self, a: &[(usize, CycScalar)]) -> CycScalar {
        a.iter()
            .fold(CycScalar::zero(), |acc, (i, x)| acc + x * &self.counit[*i])
    }

    pub fn antipode(&self, a: &[(usize, CycScalar)]) -> SparseVec {
        let mut acc = Accumulator::new();
        for (i, x) in a {
            acc.add_scaled(&self.antipode[*i], x);
        }
        acc.into_sparse()
    }

    /// Product in `H ⊗ H`.
    pub fn tensor_mul(
        &self,
        x: &[(usize, usize, CycScalar)],
        y: &[(usize, usize, CycScalar)],
    ) -> Tensor2 {
        let mut acc = PairAccumulator::new();
        for (a1, a2, c) in x {
            for (b1, b2, e) in y {
                let l = self.mul_basis(*a1, *b1);
                if l.is_empty() {
                    continue;
                }
                let r = self.mul_basis(*a2, *b2);
                let ce = c * e;
                for (p, u) in l {
                    let cu = &ce * u;
                    for (q, v) in r {
                        acc.add(*p, *q, &(&cu * v));
                    }
                }
            }
        }
        acc.into_sorted()
    }

    pub fn tensor_unit(&self) -> Tensor2 {
        let mut acc = PairAccumulator::new();
        for (i, x) in &self.unit {
            for (j, y) in &self.unit {
                acc.add(*i, *j, &(x * y));
            }
        }
        acc.into_sorted()
    }

    /// `S^{-1}` as columns. Uses `S² = id` when it holds, a linear solve otherwise.
    pub fn antipode_inverse(&self) -> Option<Vec<SparseVec>> {
        let d = self.dim();
        let involutive = (0..d).all(|i| self.antipode(&self.antipode[i]) == self.basis(i));
        if involutive {
            return Some(self.antipode.clone());
        }
        let mut cols = Vec::with_capacity(d);
        for i in 0..d {
            // Solve S(x) = b_i for x.
            let mut rows: Vec<Accumulator> = vec![Accumulator::new(); d];
            for (k, col) in self.antipode.iter().enumerate() {
                for (m, c) in col {
                    rows[*m].add(k, c);
                }
            }
            let eqs = rows
                .into_iter()
                .enumerate()
                .map(|(m, r)| {
                    (
                        r.into_sparse(),
                        if m == i {
                            CycScalar::one()
                        } else {
                            CycScalar::zero()
                        },
                    )
                })
                .collect();
            let sol = solve_unique(eqs, d).ok()?;
            cols.push(
                sol.into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .collect(),
            );
        }
        Some(cols)
    }

    /// Solves `x·a = 1` in `H`.
    pub fn inverse(&self, a: &[(usize, CycScalar)]) -> Option<SparseVec> {
        let d = self.dim();
        let mut rows: Vec<Accumulator> = vec![Accumulator::new(); d];
        for k in 0..d {
            for (m, c) in self.mul(&self.basis(k), a) {
                rows[m].add(k, &c);
            }
        }
        let eqs = rows
            .into_iter()
            .enumerate()
            .map(|(m, r)| (r.into_sparse(), crate::linalg::sparse_get(&self.unit, m)))
            .collect();
        let sol = solve_unique(eqs, d).ok()?;
        Some(
            sol.into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        )
    }

    /// Index of a basis label.
    pub fn label_index(&self) -> HashMap<&str, usize> {
        self.labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect()
    }
}

/// Group algebra `kG` with grouplike basis.
pub fn group_algebra(g: &FiniteGroup) -> HopfAlgebra {
    let n = g.order();
    let one = CycScalar::one();
    let mul = (0..n * n)
        .map(|k| vec![(g.mul(k / n, k % n), one.clone())])
        .collect();
    let comul = (0..n).map(|i| vec![(i, i, one.clone())]).collect();
    let counit = vec![one.clone(); n];
    let labels = g.elements().iter().map(|p| p.to_string()).collect();
    let mut h = HopfAlgebra::from_parts(
        &format!("k{}", g.name()),
        labels,
        1,
        mul,
        vec![(0, one.clone())],
        comul,
        counit,
    );
    h.antipode = (0..n).map(|i| vec![(g.inv(i), one.clone())]).collect();
    h
}

/// Function algebra `k^G` on the dual basis of point masses `e_g`.
pub fn function_algebra(g: &FiniteGroup) -> HopfAlgebra {
    let n = g.order();
    let one = CycScalar::one();
    let mul = (0..n * n)
        .map(|k| {
            if k / n == k % n {
                vec![(k / n, one.clone())]
            } else {
                Vec::new()
            }
        })
        .collect();
    let comul = (0..n)
        .map(|x| {
            let mut t: Tensor2 = (0..n)
                .map(|s| (s, g.mul(g.inv(s), x), one.clone()))
                .collect();
            t.sort_by_key(|e| (e.0, e.1));
            t
        })
        .collect();
    let counit = (0..n)
        .map(|i| {
            if i == 0 {
                one.clone()
            } else {
                CycScalar::zero()
            }
        })
        .collect();
    let labels = g.elements().iter().map(|p| format!("e[{p}]")).collect();
    let unit = (0..n).map(|i| (i, one.clone())).collect();
    let mut h = HopfAlgebra::from_parts(
        &format!("k^{}", g.name()),
        labels,
        1,
        mul,
        unit,
        comul,
        counit,
    );
    h.antipode = (0..n).map(|i| vec![(g.inv(i), one.clone())]).collect();
    h
}
