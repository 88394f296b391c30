use rayon::prelude::*;
use serde::Serialize;

use crate::cyclotomic::CycScalar;
use crate::error::{Error, Result};
use crate::factorization::{CocyclePair, MatchedPair};
use crate::hopf::build_bicrossed_product;
use crate::linalg::SparseVec;
use crate::perm::{FiniteGroup, Subgroup};
use crate::rep::{
    beta_from_omega, decompose_semisimple, scalar_terms, twisted_group_algebra, IrrepCatalog,
    IrrepEntry, StructAlgebra, ThreeCocycle,
};

/// Irreducibles `V_{s,ρ}` of `k^Γ τ#σ kF`: `s` runs over representatives of the `◁`-orbits on `Γ`,
/// `ρ` over irreducibles of `k_{σ_s} F^s`, and `dim V_{s,ρ} = [F:F^s] deg ρ`.
///
/// The result is cross-checked against a direct decomposition of the whole algebra.
pub fn crossed_product_irreps(
    mp: &MatchedPair,
    cp: &CocyclePair,
    seed: u64,
) -> Result<IrrepCatalog> {
    let (nf, ng) = (mp.nf(), mp.ng());
    let mut seen = vec![false; ng];
    let mut orbits: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    for s in 0..ng {
        if seen[s] {
            continue;
        }
        let mut size = 0;
        for x in 0..nf {
            let t = mp.left(s, x);
            if !seen[t] {
                seen[t] = true;
                size += 1;
            }
        }
        let stab: Vec<usize> = (0..nf).filter(|&x| mp.left(s, x) == s).collect();
        orbits.push((s, size, stab));
    }
    let order = cp.order.max(1);
    let parts: Vec<Result<Vec<IrrepEntry>>> = orbits
        .par_iter()
        .map(|(s, size, stab)| {
            let k = stab.len();
            let pos = |x: usize| {
                stab.iter()
                    .position(|&y| y == x)
                    .expect("stabilizer is a subgroup")
            };
            let mul: Vec<SparseVec> = (0..k * k)
                .map(|ij| {
                    let (x, y) = (stab[ij / k], stab[ij % k]);
                    vec![(
                        pos(mp.fmul(x, y)),
                        CycScalar::root_of_unity(order, cp.sigma(*s, x, y) as i64),
                    )]
                })
                .collect();
            let labels = stab.iter().map(|&x| mp.f_labels[x].clone()).collect();
            let alg = StructAlgebra::new(
                "k_σF^s",
                labels,
                order,
                mul,
                vec![(pos(0), CycScalar::one())],
            );
            let cat = decompose_semisimple(&alg, seed)?;
            Ok(cat
                .entries
                .into_iter()
                .map(|e| IrrepEntry {
                    label: format!("({},{})", mp.gamma_labels[*s], e.label),
                    degree: size * e.degree,
                    character: None,
                })
                .collect())
        })
        .collect();
    let mut entries = Vec::new();
    for p in parts {
        entries.extend(p?);
    }
    let catalog = IrrepCatalog {
        entries,
        algebra_dim: nf * ng,
        seeds: (seed, super::companion_seed(seed)),
    };
    if catalog.sum_of_squares() != nf * ng {
        return Err(Error::Consistency(format!(
            "Σ deg² = {} ≠ {}",
            catalog.sum_of_squares(),
            nf * ng
        )));
    }
    let h = build_bicrossed_product("H", mp, cp)?;
    let direct = decompose_semisimple(&h, seed)?;
    if direct.degrees() != catalog.degrees() {
        return Err(Error::Consistency(format!(
            "induced degrees {:?} differ from direct decomposition {:?}",
            catalog.degrees(),
            direct.degrees()
        )));
    }
    Ok(catalog)
}

/// A simple object `V_{(g,π)}` of `Rep D^ω(G)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DoubleObject {
    pub label: String,
    /// Index into `G::conjugacy_classes()`.
    pub class: usize,
    /// The class representative `g`.
    pub g: usize,
    pub centralizer: Subgroup,
    pub pi_degree: usize,
    /// `π(u_h)` for `h` in `centralizer.members()` order.
    pub pi_character: Vec<CycScalar>,
    /// `[G : C_G(g)] · deg π`.
    pub degree: usize,
}

impl DoubleObject {
    /// `π(u_h)` for a group element `h ∈ C_G(g)`.
    pub fn pi(&self, h: usize) -> Option<&CycScalar> {
        self.centralizer.position(h).map(|i| &self.pi_character[i])
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DoubleCatalog {
    pub objects: Vec<DoubleObject>,
    pub group_order: usize,
    pub omega_trivial: bool,
    pub seed: u64,
}

/// Serializable view of a [`DoubleObject`]; scalars as `(order, [(num, den, power)])`.
#[derive(Clone, Debug, Serialize)]
pub struct ObjectRecord {
    pub label: String,
    pub class_representative: String,
    pub centralizer_order: usize,
    pub pi_degree: usize,
    pub degree: usize,
    pub pi_character: Vec<(u32, Vec<(i64, i64, usize)>)>,
}

impl DoubleCatalog {
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.objects.iter().map(|o| o.degree).collect();
        d.sort_unstable();
        d
    }

    pub fn sum_of_squares(&self) -> usize {
        self.objects.iter().map(|o| o.degree * o.degree).sum()
    }

    /// The unit object `(e, trivial)`.
    pub fn unit_index(&self) -> usize {
        self.objects
            .iter()
            .position(|o| {
                o.class == 0 && o.pi_degree == 1 && o.pi_character.iter().all(|c| c.is_one())
            })
            .expect("trivial representation is present")
    }

    pub fn as_catalog(&self) -> IrrepCatalog {
        IrrepCatalog {
            entries: self
                .objects
                .iter()
                .map(|o| IrrepEntry {
                    label: o.label.clone(),
                    degree: o.degree,
                    character: None,
                })
                .collect(),
            algebra_dim: self.group_order * self.group_order,
            seeds: (self.seed, super::companion_seed(self.seed)),
        }
    }

    pub fn records(&self, g: &FiniteGroup) -> Vec<ObjectRecord> {
        self.objects
            .iter()
            .map(|o| ObjectRecord {
                label: o.label.clone(),
                class_representative: g.element(o.g).to_string(),
                centralizer_order: o.centralizer.order(),
                pi_degree: o.pi_degree,
                degree: o.degree,
                pi_character: o.pi_character.iter().map(scalar_terms).collect(),
            })
            .collect()
    }
}

/// Simple objects `(g, π)` of `Rep D^ω(G)`: `g` over class representatives, `π` over irreducibles of
/// `k_{β_g} C_G(g)`, with `dim V_{(g,π)} = [G : C_G(g)] deg π`.
pub fn double_irreps(g: &FiniteGroup, omega: &ThreeCocycle, seed: u64) -> Result<DoubleCatalog> {
    let classes = g.conjugacy_classes();
    let parts: Vec<Result<Vec<DoubleObject>>> = classes
        .par_iter()
        .enumerate()
        .map(|(ci, class)| {
            let rep = class.representative;
            let beta = beta_from_omega(g, omega, rep)?;
            let alg = twisted_group_algebra(g, &beta.centralizer, beta.order, beta.table());
            let cat = decompose_semisimple(&alg, seed)?;
            let index = g.order() / beta.centralizer.order();
            Ok(cat
                .entries
                .into_iter()
                .enumerate()
                .map(|(i, e)| DoubleObject {
                    label: format!("({},π{i})", g.element(rep)),
                    class: ci,
                    g: rep,
                    centralizer: beta.centralizer.clone(),
                    pi_degree: e.degree,
                    pi_character: e
                        .character
                        .expect("twisted group algebras have monomial bases"),
                    degree: index * e.degree,
                })
                .collect())
        })
        .collect();
    let mut objects = Vec::new();
    for p in parts {
        objects.extend(p?);
    }
    let cat = DoubleCatalog {
        objects,
        group_order: g.order(),
        omega_trivial: omega.is_trivial(),
        seed,
    };
    let n = g.order();
    if cat.sum_of_squares() != n * n {
        return Err(Error::Consistency(format!(
            "Σ deg² = {} ≠ |G|² = {}",
            cat.sum_of_squares(),
            n * n
        )));
    }
    Ok(cat)
}
