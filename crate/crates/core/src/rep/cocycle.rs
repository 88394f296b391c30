use rayon::prelude::*;

use crate::cyclotomic::CycScalar;
use crate::error::{Error, Result};
use crate::linalg::SparseVec;
use crate::perm::{FiniteGroup, Subgroup};
use crate::rep::StructAlgebra;
use crate::report::AxiomReport;

/// A normalized 3-cocycle `ω: G³ → μ_N` stored as exponents of `ζ_N`, indexed by group element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeCocycle {
    order: u32,
    n: usize,
    table: Vec<u32>,
}

impl ThreeCocycle {
    pub fn trivial(g: &FiniteGroup) -> Self {
        Self {
            order: 1,
            n: g.order(),
            table: vec![0; g.order().pow(3)],
        }
    }

    /// Validates normalization and the cocycle identity.
    pub fn from_table(g: &FiniteGroup, order: u32, table: Vec<u32>) -> Result<Self> {
        let n = g.order();
        if table.len() != n * n * n || order == 0 {
            return Err(Error::CocycleInvalid(format!(
                "table must have {} entries",
                n * n * n
            )));
        }
        let w = Self {
            order,
            n,
            table: table.into_iter().map(|e| e % order).collect(),
        };
        let rep = w.validate(g);
        if !rep.passed() {
            return Err(Error::CocycleInvalid(format!(
                "ω fails {:?}",
                rep.failed_axioms()
            )));
        }
        Ok(w)
    }

    pub fn from_fn(
        g: &FiniteGroup,
        order: u32,
        f: impl Fn(usize, usize, usize) -> u32,
    ) -> Result<Self> {
        let n = g.order();
        let table = (0..n * n * n)
            .map(|k| f(k / (n * n), (k / n) % n, k % n))
            .collect();
        Self::from_table(g, order, table)
    }

    /// Pullback of the cyclic cocycle `ω(a,b,c) = ζ_m^{p·a·⌊(b+c)/m⌋}` along `φ: G → Z_m`.
    pub fn cyclic_pullback(g: &FiniteGroup, phi: &[u32], m: u32, p: u32) -> Result<Self> {
        Self::from_fn(g, m, |a, b, c| (p * phi[a] * ((phi[b] + phi[c]) / m)) % m)
    }

    /// `ζ_m^{p·φ₁(a)φ₂(b)φ₃(c)}` for homomorphisms `φᵢ: G → Z_m`.
    pub fn trilinear(g: &FiniteGroup, m: u32, homs: [&[u32]; 3], p: u32) -> Result<Self> {
        Self::from_fn(g, m, |a, b, c| {
            (p * homs[0][a] * homs[1][b] % m * homs[2][c]) % m
        })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn group_order(&self) -> usize {
        self.n
    }

    pub fn value(&self, a: usize, b: usize, c: usize) -> u32 {
        self.table[(a * self.n + b) * self.n + c]
    }

    pub fn is_trivial(&self) -> bool {
        self.table.iter().all(|&e| e == 0)
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn validate(&self, g: &FiniteGroup) -> AxiomReport {
        let n = self.n;
        let e = g.identity();
        let mut rep = AxiomReport::new();
        rep.check("normalization");
        for x in 0..n {
            for y in 0..n {
                for (a, b, c) in [(e, x, y), (x, e, y), (x, y, e)] {
                    if self.value(a, b, c) != 0 {
                        rep.fail("normalization", vec![a, b, c]);
                    }
                }
            }
        }
        rep.check("3-cocycle identity");
        if self.is_trivial() {
            return rep;
        }
        let m = self.order;
        let bad: Vec<Vec<usize>> = (0..n * n)
            .into_par_iter()
            .flat_map_iter(|ab| {
                let (a, b) = (ab / n, ab % n);
                let mut out = Vec::new();
                for c in 0..n {
                    for d in 0..n {
                        let lhs = self.value(b, c, d)
                            + self.value(a, g.mul(b, c), d)
                            + self.value(a, b, c);
                        let rhs = self.value(g.mul(a, b), c, d) + self.value(a, b, g.mul(c, d));
                        if lhs % m != rhs % m {
                            out.push(vec![a, b, c, d]);
                            if out.len() == 8 {
                                return out;
                            }
                        }
                    }
                }
                out
            })
            .collect();
        for w in bad.into_iter().take(8) {
            rep.fail("3-cocycle identity", w);
        }
        rep
    }

    /// Exponent of `β_a(x, y) = ω(a,x,y) ω(x,y,(xy)⁻¹a(xy)) / ω(x, x⁻¹ax, y)` for arbitrary `x, y ∈ G`.
    pub fn beta(&self, g: &FiniteGroup, a: usize, x: usize, y: usize) -> u32 {
        let m = self.order;
        let xy = g.mul(x, y);
        let t1 = self.value(a, x, y);
        let t2 = self.value(x, y, g.conj(g.inv(xy), a));
        let t3 = self.value(x, g.conj(g.inv(x), a), y);
        (t1 + t2 + m - t3) % m
    }
}

/// `β_g` on `C_G(g)`, in the local indices of `centralizer.members()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoCocycleOnCentralizer {
    pub g: usize,
    pub centralizer: Subgroup,
    pub order: u32,
    table: Vec<u32>,
}

impl TwoCocycleOnCentralizer {
    pub fn value(&self, x: usize, y: usize) -> u32 {
        self.table[x * self.centralizer.order() + y]
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn is_trivial(&self) -> bool {
        self.table.iter().all(|&e| e == 0)
    }
}

/// `β_g(x,y) = ω(g,x,y)ω(x,y,g)/ω(x,g,y)` on `C_G(g)`; normalization and the 2-cocycle identity are checked exhaustively.
pub fn beta_from_omega(
    group: &FiniteGroup,
    omega: &ThreeCocycle,
    g: usize,
) -> Result<TwoCocycleOnCentralizer> {
    let c = group.centralizer(g);
    let k = c.order();
    let mem = c.members().to_vec();
    let m = omega.order();
    let table: Vec<u32> = (0..k * k)
        .map(|ij| {
            let (x, y) = (mem[ij / k], mem[ij % k]);
            (omega.value(g, x, y) + omega.value(x, y, g) + m - omega.value(x, g, y)) % m
        })
        .collect();
    let beta = TwoCocycleOnCentralizer {
        g,
        centralizer: c,
        order: m,
        table,
    };
    let pos = |x: usize| {
        beta.centralizer
            .position(x)
            .expect("centralizer is a subgroup")
    };
    let e = pos(group.identity());
    for x in 0..k {
        if beta.value(e, x) != 0 || beta.value(x, e) != 0 {
            return Err(Error::CocycleInvalid(format!(
                "β_{g} is not normalized at {}",
                mem[x]
            )));
        }
        for y in 0..k {
            let xy = pos(group.mul(mem[x], mem[y]));
            for z in 0..k {
                let yz = pos(group.mul(mem[y], mem[z]));
                if (beta.value(x, y) + beta.value(xy, z)) % m
                    != (beta.value(y, z) + beta.value(x, yz)) % m
                {
                    return Err(Error::CocycleInvalid(format!(
                        "β_{g} fails the 2-cocycle identity at ({}, {}, {})",
                        mem[x], mem[y], mem[z]
                    )));
                }
            }
        }
    }
    Ok(beta)
}

/// `k_β K` with basis `u_x` (`x` in `sub.members()` order) and `u_x u_y = ζ_N^{β(x,y)} u_{xy}`.
pub fn twisted_group_algebra(
    group: &FiniteGroup,
    sub: &Subgroup,
    order: u32,
    beta: &[u32],
) -> StructAlgebra {
    let k = sub.order();
    let mem = sub.members();
    let mul: Vec<SparseVec> = (0..k * k)
        .map(|ij| {
            let (x, y) = (ij / k, ij % k);
            let xy = sub
                .position(group.mul(mem[x], mem[y]))
                .expect("closed under products");
            vec![(xy, CycScalar::root_of_unity(order.max(1), beta[ij] as i64))]
        })
        .collect();
    let unit = vec![(sub.position(group.identity()).unwrap(), CycScalar::one())];
    let labels = mem
        .iter()
        .map(|&x| format!("u{}", group.element(x)))
        .collect();
    StructAlgebra::new(
        &format!("k_β{}", sub.order()),
        labels,
        order.max(1),
        mul,
        unit,
    )
}

/// The homomorphism `G → Z_m` with the given values on `g.generator_indices()`; `None` if inconsistent.
pub fn cyclic_character(g: &FiniteGroup, images: &[u32], m: u32) -> Option<Vec<u32>> {
    let gens = g.generator_indices();
    assert_eq!(gens.len(), images.len());
    let mut phi: Vec<Option<u32>> = vec![None; g.order()];
    phi[g.identity()] = Some(0);
    let mut queue = vec![g.identity()];
    while let Some(x) = queue.pop() {
        let px = phi[x].unwrap();
        for (&s, &v) in gens.iter().zip(images) {
            let y = g.mul(x, s);
            let val = (px + v) % m;
            match phi[y] {
                None => {
                    phi[y] = Some(val);
                    queue.push(y);
                }
                Some(old) if old != val => return None,
                _ => {}
            }
        }
    }
    Some(phi.into_iter().map(|v| v.unwrap()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;
    use crate::rep::decompose_semisimple;

    fn c2_cubed() -> FiniteGroup {
        let gens = ["(1 2)", "(3 4)", "(5 6)"]
            .iter()
            .map(|c| Permutation::parse_cycles(6, c).unwrap())
            .collect();
        FiniteGroup::closure("C2^3", 6, gens).unwrap()
    }

    #[test]
    fn trivial_omega_gives_trivial_beta() {
        let g = FiniteGroup::symmetric(4);
        let w = ThreeCocycle::trivial(&g);
        for x in 0..g.order() {
            assert!(beta_from_omega(&g, &w, x).unwrap().is_trivial());
        }
    }

    #[test]
    fn pulled_back_cyclic_cocycles_validate() {
        let g = FiniteGroup::symmetric(3);
        let sign: Vec<u32> = (0..g.order())
            .map(|x| if g.element_order(x) == 2 { 1 } else { 0 })
            .collect();
        let w = ThreeCocycle::cyclic_pullback(&g, &sign, 2, 1).unwrap();
        assert!(!w.is_trivial());
        for x in 0..g.order() {
            let b = beta_from_omega(&g, &w, x).unwrap();
            if x == g.identity() {
                assert!(b.is_trivial());
            }
        }
        let c4 = FiniteGroup::cyclic(4);
        let phi = cyclic_character(&c4, &[1], 4).unwrap();
        for p in 0..4 {
            assert!(ThreeCocycle::cyclic_pullback(&c4, &phi, 4, p).is_ok());
        }
    }

    #[test]
    fn tampered_cocycle_is_rejected() {
        let g = FiniteGroup::cyclic(4);
        let phi = cyclic_character(&g, &[1], 4).unwrap();
        let w = ThreeCocycle::cyclic_pullback(&g, &phi, 4, 1).unwrap();
        let mut t = w.table().to_vec();
        let n = g.order();
        let (a, b, c) = (1, 2, 3);
        t[(a * n + b) * n + c] = (t[(a * n + b) * n + c] + 1) % 4;
        assert!(matches!(
            ThreeCocycle::from_table(&g, 4, t),
            Err(Error::CocycleInvalid(_))
        ));
    }

    /// Type III cocycle on C2³: each β_g for g ≠ e has a nondegenerate antisymmetric part, so the
    /// twisted group algebra is a sum of 2×2 matrix blocks (or 1-dimensional where β_g is a coboundary).
    #[test]
    fn type_three_cocycle_gives_projective_centralizer_algebras() {
        let g = c2_cubed();
        let homs: Vec<Vec<u32>> = (0..3)
            .map(|i| {
                cyclic_character(
                    &g,
                    &(0..3).map(|j| u32::from(i == j)).collect::<Vec<_>>(),
                    2,
                )
                .unwrap()
            })
            .collect();
        let w = ThreeCocycle::trilinear(&g, 2, [&homs[0], &homs[1], &homs[2]], 1).unwrap();
        let mut two_dim = 0;
        for x in 0..g.order() {
            let b = beta_from_omega(&g, &w, x).unwrap();
            let alg = twisted_group_algebra(&g, &b.centralizer, b.order, b.table());
            let cat = decompose_semisimple(&alg, 5).unwrap();
            assert_eq!(cat.sum_of_squares(), 8);
            two_dim += cat.entries.iter().filter(|e| e.degree == 2).count();
        }
        // 8 one-dimensional objects from g = e, and 2 two-dimensional objects for each of the 7 others.
        assert_eq!(two_dim, 14);
    }

    #[test]
    fn inconsistent_character_is_rejected() {
        let g = FiniteGroup::symmetric(3);
        assert!(cyclic_character(&g, &vec![1; g.generator_indices().len()], 3).is_none());
    }
}
