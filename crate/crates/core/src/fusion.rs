//! Fusion subcategories of `Rep D^ω(G)` through triples `(K₁, K₂, B)`, with an independent
//! tensor-closure oracle on the untwisted double.

use std::collections::{BTreeSet, HashMap, HashSet};

use num_complex::Complex64;
use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::cyclotomic::CycScalar;
use crate::error::{Error, Result};
use crate::hopf::{drinfeld_double, group_algebra, DoubleIndex, HopfAlgebra};
use crate::linalg::SparseVec;
use crate::perm::{FiniteGroup, Subgroup};
use crate::rep::{decompose_with, DecomposeOptions, DoubleCatalog, ThreeCocycle, RESIDUAL_TOL};

/// Largest `|K₁^ab|·|K₂^ab|` searched for a nontrivial `ω`.
pub const GENERAL_OMEGA_AB_CAP: usize = 64;
/// Largest number of generator-value assignments tried in one bicharacter search.
pub const ASSIGNMENT_CAP: u64 = 1 << 22;
/// Up to this many simple objects the oracle closes every seed set; above it, principal closures and joins.
pub const ALL_SEEDS_LIMIT: usize = 12;

/// `B: K₁ × K₂ → μ_E` as exponents of `ζ_E`, on all of `K₁ × K₂` in member order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Bicharacter {
    pub order: u32,
    pub table: Vec<u32>,
}

impl Bicharacter {
    fn value(&self, k2: usize, a: usize, h: usize) -> u32 {
        self.table[a * k2 + h]
    }

    pub fn is_trivial(&self) -> bool {
        self.table.iter().all(|&e| e == 0)
    }

    /// Order of `B` in the group of bicharacters, which divides the storage modulus `order`.
    pub fn value_order(&self) -> u32 {
        self.table
            .iter()
            .fold(1, |acc, &e| acc.lcm(&(self.order / e.gcd(&self.order))))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triple {
    pub k1: Subgroup,
    pub k2: Subgroup,
    pub b: Bicharacter,
    /// `|K₁| · [G : K₂]`.
    pub dimension: usize,
}

impl Triple {
    /// `B(a, h)` for group elements `a ∈ K₁`, `h ∈ K₂`.
    pub fn b_at(&self, a: usize, h: usize) -> u32 {
        let (i, j) = (
            self.k1.position(a).expect("a ∈ K1"),
            self.k2.position(h).expect("h ∈ K2"),
        );
        self.b.value(self.k2.order(), i, j)
    }

    /// True for `(1, 1, 1)`, the triple of `Rep G`.
    pub fn is_trivial(&self) -> bool {
        self.k1.is_trivial() && self.k2.is_trivial()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FusionSubcategory {
    /// Indices into [`DoubleCatalog::objects`], sorted.
    pub objects: Vec<usize>,
    /// `Σ deg²` over the objects.
    pub dimension: usize,
}

impl FusionSubcategory {
    fn from_set(catalog: &DoubleCatalog, set: &BTreeSet<usize>) -> Self {
        let objects: Vec<usize> = set.iter().copied().collect();
        let dimension = objects
            .iter()
            .map(|&o| catalog.objects[o].degree.pow(2))
            .sum();
        Self { objects, dimension }
    }

    pub fn labels<'a>(&self, catalog: &'a DoubleCatalog) -> Vec<&'a str> {
        self.objects
            .iter()
            .map(|&o| catalog.objects[o].label.as_str())
            .collect()
    }
}

/// Exponent ring `Z_E` in which every bicharacter value lives.
fn exponent_modulus(g: &FiniteGroup, omega: &ThreeCocycle) -> u32 {
    g.exponent() as u32 * omega.order()
}

/// Extends values on generators multiplicatively (or twisted-multiplicatively) over a subgroup by BFS.
/// `step(value_at_x, x, s)` gives the value at `x·s`; `None` if two paths disagree.
fn extend_over(
    g: &FiniteGroup,
    sub: &Subgroup,
    step: impl Fn(&[Option<u32>], usize, usize, usize) -> u32,
) -> Option<Vec<u32>> {
    let mut vals: Vec<Option<u32>> = vec![None; sub.order()];
    let e = sub.position(g.identity()).unwrap();
    vals[e] = Some(0);
    let mut queue = vec![g.identity()];
    while let Some(x) = queue.pop() {
        for (gi, &s) in sub.generators().iter().enumerate() {
            let y = g.mul(x, s);
            let v = step(&vals, x, s, gi);
            let p = sub.position(y).unwrap();
            match vals[p] {
                None => {
                    vals[p] = Some(v);
                    queue.push(y);
                }
                Some(old) if old != v => return None,
                _ => {}
            }
        }
    }
    Some(vals.into_iter().map(|v| v.unwrap()).collect())
}

fn assignments(modulus: u64, slots: usize) -> Result<u64> {
    let total = modulus
        .checked_pow(slots as u32)
        .filter(|&t| t <= ASSIGNMENT_CAP);
    total.ok_or_else(|| Error::SearchTooLarge(format!("{modulus}^{slots} generator assignments")))
}

/// Digits of `k` in base `m`.
fn digits(mut k: u64, m: u64, n: usize) -> Vec<u32> {
    (0..n)
        .map(|_| {
            let d = (k % m) as u32;
            k /= m;
            d
        })
        .collect()
}

/// Linear characters `K → Z_E`, as exponent vectors over `K` in member order.
///
/// Characters factor through `K^ab`; a generator of order `o` can only take multiples of `E/o`.
fn linear_characters(g: &FiniteGroup, k: &Subgroup, modulus: u32) -> Result<Vec<Vec<u32>>> {
    let kg = g.subgroup_as_group(k, "K");
    let (q, hom) = kg.abelianization();
    let qgens = q.generator_indices();
    let orders: Vec<u64> = qgens.iter().map(|&s| q.element_order(s) as u64).collect();
    let total = orders
        .iter()
        .try_fold(1u64, |acc, &o| acc.checked_mul(o))
        .filter(|&t| t <= ASSIGNMENT_CAP);
    let total = total.ok_or_else(|| {
        Error::SearchTooLarge(format!(
            "characters of an abelian group with generator orders {orders:?}"
        ))
    })?;
    let qsub = q.whole();
    let mut out: Vec<Vec<u32>> = (0..total)
        .into_par_iter()
        .filter_map(|mut code| {
            let vals: Vec<u32> = orders
                .iter()
                .map(|&o| {
                    let d = code % o;
                    code /= o;
                    d as u32 * (modulus / o as u32)
                })
                .collect();
            let on_q = extend_over(&q, &qsub, |cur, x, _, gi| {
                (cur[qsub.position(x).unwrap()].unwrap() + vals[gi]) % modulus
            })?;
            Some(
                k.members()
                    .iter()
                    .map(|&x| {
                        on_q[qsub
                            .position(hom.apply(kg.index_of(g.element(x)).unwrap()))
                            .unwrap()]
                    })
                    .collect(),
            )
        })
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// The `G`-invariance identity
/// `B(x⁻¹ax, h) = β_a(x,h) β_a(xh,x⁻¹) / β_a(x,x⁻¹) · B(a, xhx⁻¹)` for all `x ∈ G`.
fn is_invariant(
    g: &FiniteGroup,
    k1: &Subgroup,
    k2: &Subgroup,
    omega: &ThreeCocycle,
    b: &Bicharacter,
) -> bool {
    let m = b.order;
    let scale = m / omega.order();
    let n2 = k2.order();
    let trivial = omega.is_trivial();
    (0..g.order()).into_par_iter().all(|x| {
        let xi = g.inv(x);
        k1.members().iter().enumerate().all(|(ai, &a)| {
            let lhs_row = k1.position(g.conj(xi, a)).expect("K1 normal");
            k2.members().iter().enumerate().all(|(hi, &h)| {
                let conj_h = k2.position(g.conj(x, h)).expect("K2 normal");
                let mut rhs = b.value(n2, ai, conj_h);
                if !trivial {
                    let tw =
                        omega.beta(g, a, x, h) + omega.beta(g, a, g.mul(x, h), xi) + omega.order()
                            - omega.beta(g, a, x, xi);
                    rhs = (rhs + (tw % omega.order()) * scale) % m;
                }
                b.value(n2, lhs_row, hi) == rhs
            })
        })
    })
}

/// The two ω-bicharacter identities on the full table.
fn satisfies_twisted_identities(
    g: &FiniteGroup,
    k1: &Subgroup,
    k2: &Subgroup,
    omega: &ThreeCocycle,
    b: &Bicharacter,
) -> bool {
    let m = b.order;
    let scale = m / omega.order();
    let beta = |a: usize, x: usize, y: usize| omega.beta(g, a, x, y) * scale;
    let n2 = k2.order();
    let (m1, m2) = (k1.members(), k2.members());
    for (xi, &x) in m1.iter().enumerate() {
        for (yi, &y) in m2.iter().enumerate() {
            for (zi, &z) in m2.iter().enumerate() {
                let yz = k2.position(g.mul(y, z)).unwrap();
                // B(x,yz) = β_x(y,z)⁻¹ B(x,y) B(x,z)
                if (b.value(n2, xi, yz) + beta(x, y, z)) % m
                    != (b.value(n2, xi, yi) + b.value(n2, xi, zi)) % m
                {
                    return false;
                }
            }
            for (ti, &t) in m1.iter().enumerate() {
                let tx = k1.position(g.mul(t, x)).unwrap();
                // B(tx,y) = β_y(t,x) B(t,y) B(x,y)
                if b.value(n2, tx, yi)
                    != (beta(y, t, x) + b.value(n2, ti, yi) + b.value(n2, xi, yi)) % m
                {
                    return false;
                }
            }
        }
    }
    true
}

fn abelianization_order(g: &FiniteGroup, k: &Subgroup) -> usize {
    let kg = g.subgroup_as_group(k, "K");
    kg.order() / kg.derived_subgroup().order()
}

/// Every `G`-invariant ω-bicharacter `B: K₁ × K₂ → k^×`.
///
/// For `ω ≡ 1` this is a homomorphism `K₁ → Hom(K₂, k^×)` built from the linear characters of `K₂`;
/// otherwise an exhaustive search over values on generator pairs extended through the twisted identities.
pub fn enumerate_invariant_bicharacters(
    g: &FiniteGroup,
    k1: &Subgroup,
    k2: &Subgroup,
    omega: &ThreeCocycle,
) -> Result<Vec<Bicharacter>> {
    let m = exponent_modulus(g, omega);
    let mut out = if omega.is_trivial() {
        untwisted_bicharacters(g, k1, k2, m)?
    } else {
        twisted_bicharacters(g, k1, k2, omega, m)?
    };
    out.retain(|b| is_invariant(g, k1, k2, omega, b));
    out.sort();
    out.dedup();
    Ok(out)
}

fn untwisted_bicharacters(
    g: &FiniteGroup,
    k1: &Subgroup,
    k2: &Subgroup,
    m: u32,
) -> Result<Vec<Bicharacter>> {
    let lin = linear_characters(g, k2, m)?;
    let index: HashMap<&Vec<u32>, usize> = lin.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let r1 = k1.generators().len();
    let total = assignments(lin.len() as u64, r1)?;
    let n2 = k2.order();
    let found: Vec<Bicharacter> = (0..total)
        .into_par_iter()
        .filter_map(|code| {
            let choice = digits(code, lin.len() as u64, r1);
            // Row of x·s is the pointwise product of the rows of x and s.
            let mut rows: Vec<Option<usize>> = vec![None; k1.order()];
            rows[k1.position(g.identity()).unwrap()] = Some(index[&vec![0; n2]]);
            let mut queue = vec![g.identity()];
            while let Some(x) = queue.pop() {
                let rx = &lin[rows[k1.position(x).unwrap()].unwrap()];
                for (gi, &s) in k1.generators().iter().enumerate() {
                    let rs = &lin[choice[gi] as usize];
                    let prod: Vec<u32> = rx.iter().zip(rs).map(|(a, b)| (a + b) % m).collect();
                    let pi = *index.get(&prod)?;
                    let p = k1.position(g.mul(x, s)).unwrap();
                    match rows[p] {
                        None => {
                            rows[p] = Some(pi);
                            queue.push(g.mul(x, s));
                        }
                        Some(old) if old != pi => return None,
                        _ => {}
                    }
                }
            }
            let table = rows
                .into_iter()
                .flat_map(|r| lin[r.unwrap()].clone())
                .collect();
            Some(Bicharacter { order: m, table })
        })
        .collect();
    Ok(found)
}

fn twisted_bicharacters(
    g: &FiniteGroup,
    k1: &Subgroup,
    k2: &Subgroup,
    omega: &ThreeCocycle,
    m: u32,
) -> Result<Vec<Bicharacter>> {
    let ab = abelianization_order(g, k1) * abelianization_order(g, k2);
    if ab > GENERAL_OMEGA_AB_CAP {
        return Err(Error::SearchTooLarge(format!(
            "|K1^ab|·|K2^ab| = {ab} exceeds {GENERAL_OMEGA_AB_CAP}"
        )));
    }
    let scale = m / omega.order();
    let beta = |a: usize, x: usize, y: usize| omega.beta(g, a, x, y) * scale;
    let (g1, g2) = (k1.generators(), k2.generators());
    let slots = g1.len() * g2.len();
    let total = assignments(m as u64, slots)?;
    let n2 = k2.order();
    let found: Vec<Bicharacter> = (0..total)
        .into_par_iter()
        .filter_map(|code| {
            let vals = digits(code, m as u64, slots);
            // Rows B(x_i, ·) for generators x_i of K1: B(x, y·s) = β_x(y,s)⁻¹ B(x,y) B(x,s).
            let mut gen_rows = Vec::with_capacity(g1.len());
            for (i, &x) in g1.iter().enumerate() {
                let row = extend_over(g, k2, |cur, y, s, j| {
                    (cur[k2.position(y).unwrap()].unwrap() + vals[i * g2.len() + j] + m
                        - beta(x, y, s) % m)
                        % m
                })?;
                gen_rows.push(row);
            }
            // Columns over K1: B(t·x, y) = β_y(t,x) B(t,y) B(x,y).
            let mut rows: Vec<Option<Vec<u32>>> = vec![None; k1.order()];
            rows[k1.position(g.identity()).unwrap()] = Some(vec![0; n2]);
            let mut queue = vec![g.identity()];
            while let Some(t) = queue.pop() {
                let rt = rows[k1.position(t).unwrap()].clone().unwrap();
                for (i, &x) in g1.iter().enumerate() {
                    let next: Vec<u32> = k2
                        .members()
                        .iter()
                        .enumerate()
                        .map(|(yi, &y)| (beta(y, t, x) + rt[yi] + gen_rows[i][yi]) % m)
                        .collect();
                    let p = k1.position(g.mul(t, x)).unwrap();
                    match &rows[p] {
                        None => {
                            rows[p] = Some(next);
                            queue.push(g.mul(t, x));
                        }
                        Some(old) if *old != next => return None,
                        _ => {}
                    }
                }
            }
            let b = Bicharacter {
                order: m,
                table: rows.into_iter().flat_map(|r| r.unwrap()).collect(),
            };
            satisfies_twisted_identities(g, k1, k2, omega, &b).then_some(b)
        })
        .collect();
    Ok(found)
}

/// All triples `(K₁, K₂, B)`: centralizing pairs of normal subgroups with a `G`-invariant ω-bicharacter.
pub fn enumerate_triples(g: &FiniteGroup, omega: &ThreeCocycle) -> Result<Vec<Triple>> {
    let normals = g.normal_subgroups();
    let pairs: Vec<(&Subgroup, &Subgroup)> = normals
        .iter()
        .flat_map(|a| normals.iter().map(move |b| (a, b)))
        .filter(|(a, b)| g.centralize_each_other(a, b))
        .collect();
    let parts: Vec<Result<Vec<Triple>>> = pairs
        .par_iter()
        .map(|(k1, k2)| {
            let bs = enumerate_invariant_bicharacters(g, k1, k2, omega)?;
            let dimension = k1.order() * (g.order() / k2.order());
            Ok(bs
                .into_iter()
                .map(|b| Triple {
                    k1: (*k1).clone(),
                    k2: (*k2).clone(),
                    b,
                    dimension,
                })
                .collect())
        })
        .collect();
    let mut out = Vec::new();
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}

/// Triples with `|K₁| = |K₂|`, i.e. those whose subcategory has dimension `|G|`.
pub fn equal_order_filter(triples: &[Triple]) -> Vec<Triple> {
    triples
        .iter()
        .filter(|t| t.k1.order() == t.k2.order())
        .cloned()
        .collect()
}

/// Whether `(g, π)` satisfies `π(h) = B(g, h) deg π` for all `h ∈ K₂`.
fn admissible(catalog: &DoubleCatalog, o: usize, triple: &Triple) -> bool {
    let obj = &catalog.objects[o];
    if !triple.k1.contains(obj.g) {
        return false;
    }
    let deg = CycScalar::from_int(obj.pi_degree as i64);
    triple.k2.members().iter().all(|&h| {
        let want = &CycScalar::root_of_unity(triple.b.order, triple.b_at(obj.g, h) as i64) * &deg;
        obj.pi(h).is_some_and(|v| *v == want)
    })
}

/// The simple objects `(g, π)` with `g ∈ K₁` and `π(h) = B(g,h) deg π` on `K₂`.
pub fn triple_to_objects(catalog: &DoubleCatalog, triple: &Triple) -> Result<FusionSubcategory> {
    let set: BTreeSet<usize> = (0..catalog.objects.len())
        .filter(|&o| admissible(catalog, o, triple))
        .collect();
    let sub = FusionSubcategory::from_set(catalog, &set);
    if sub.dimension != triple.dimension {
        return Err(Error::Consistency(format!(
            "objects of ({}, {}) have Σ deg² = {} but |K1|[G:K2] = {}",
            triple.k1.order(),
            triple.k2.order(),
            sub.dimension,
            triple.dimension
        )));
    }
    Ok(sub)
}

/// Recovers `(K₁ᶜ, K₂ᶜ, Bᶜ)` from an object set: `K₁ᶜ` is the union of the classes that occur,
/// `K₂ᶜ` the intersection of the kernels of the `(e, π)` in the set, and
/// `Bᶜ(x⁻¹gx, h) = β_g(x,h) β_g(xh,x⁻¹) / β_g(x,x⁻¹) · π(xhx⁻¹) / deg π`.
pub fn reconstruct_triple(
    g: &FiniteGroup,
    omega: &ThreeCocycle,
    catalog: &DoubleCatalog,
    sub: &FusionSubcategory,
) -> Result<Triple> {
    let classes = g.conjugacy_classes();
    let mut k1: Vec<usize> = Vec::new();
    for &o in &sub.objects {
        k1.extend(&classes[catalog.objects[o].class].members);
    }
    k1.sort_unstable();
    k1.dedup();
    let closed = k1
        .iter()
        .all(|&a| k1.iter().all(|&b| k1.binary_search(&g.mul(a, b)).is_ok()));
    if !closed {
        return Err(Error::Consistency(
            "occurring classes do not form a subgroup".into(),
        ));
    }
    let k1 = g.subgroup_from_members(k1);
    let mut k2: Vec<usize> = (0..g.order()).collect();
    for &o in &sub.objects {
        let obj = &catalog.objects[o];
        if obj.class != 0 {
            continue;
        }
        let deg = CycScalar::from_int(obj.pi_degree as i64);
        k2.retain(|&h| obj.pi(h) == Some(&deg));
    }
    let k2 = g.subgroup_from_members(k2);
    let m = exponent_modulus(g, omega);
    let scale = m / omega.order();
    let mut table = vec![0u32; k1.order() * k2.order()];
    for (ai, &a) in k1.members().iter().enumerate() {
        let cls = g.class_index()[a];
        let o = *sub
            .objects
            .iter()
            .find(|&&o| catalog.objects[o].class == cls)
            .expect("a lies in an occurring class");
        let obj = &catalog.objects[o];
        let gr = obj.g;
        let x = (0..g.order())
            .find(|&x| g.conj(g.inv(x), gr) == a)
            .expect("a is conjugate to the representative");
        let xi = g.inv(x);
        for (hi, &h) in k2.members().iter().enumerate() {
            let ratio = obj
                .pi(g.conj(x, h))
                .expect("xhx⁻¹ centralizes g")
                .scale(&num_rational::Rational64::new(1, obj.pi_degree as i64));
            let k = (0..m)
                .find(|&k| CycScalar::root_of_unity(m, k as i64) == ratio)
                .ok_or_else(|| {
                    Error::Consistency(format!(
                        "π(xhx⁻¹)/deg π is not a root of unity at {}",
                        g.element(h)
                    ))
                })?;
            let tw = (omega.beta(g, gr, x, h) + omega.beta(g, gr, g.mul(x, h), xi) + omega.order()
                - omega.beta(g, gr, x, xi))
                % omega.order();
            table[ai * k2.order() + hi] = (k + tw * scale) % m;
        }
    }
    let dimension = k1.order() * (g.order() / k2.order());
    Ok(Triple {
        k1,
        k2,
        b: Bicharacter { order: m, table },
        dimension,
    })
}

/// Fusion rules of `Rep D(G)` read off the Wedderburn blocks of the Drinfeld double of `kG`,
/// with blocks matched to the `(g, π)` labels of a [`DoubleCatalog`].
#[derive(Clone, Debug)]
pub struct TensorOracle {
    pub catalog: DoubleCatalog,
    /// `fusion[a][b][c]` = multiplicity of object `c` in `a ⊗ b`.
    pub fusion: Vec<Vec<Vec<usize>>>,
    pub dual: Vec<usize>,
    pub unit: usize,
}

impl TensorOracle {
    /// Decomposes `D(kG)` (ω ≡ 1 only) and derives tensor multiplicities from the block traces of the
    /// tensor-product module `A e_a ⊗ A e_b`.
    pub fn new(g: &FiniteGroup, catalog: DoubleCatalog, seed: u64) -> Result<Self> {
        if !catalog.omega_trivial {
            return Err(Error::Consistency(
                "the tensor-closure oracle covers only ω ≡ 1".into(),
            ));
        }
        let kg = group_algebra(g);
        let dh = drinfeld_double(&kg);
        let n = g.order();
        let ix = DoubleIndex { d: n };
        let one = CycScalar::one();
        // D(kG) is generated by the f_a ⊗ e and by ε ⊗ s for generators s of G.
        let mut gens: Vec<SparseVec> = (0..n)
            .map(|a| vec![(ix.index(a, g.identity()), one.clone())])
            .collect();
        for &s in g.generator_indices() {
            gens.push((0..n).map(|a| (ix.index(a, s), one.clone())).collect());
        }
        let dec = decompose_with(
            &dh,
            &DecomposeOptions {
                seed,
                generators: Some(gens),
            },
        )?;
        let r = dec.idempotents.len();
        if r != catalog.objects.len() {
            return Err(Error::Consistency(format!(
                "D(kG) has {r} blocks, catalog has {} objects",
                catalog.objects.len()
            )));
        }
        let degs: Vec<usize> = dec.catalog.entries.iter().map(|e| e.degree).collect();

        // Block c carries (g, π) iff tr(f_g ⊗ h | V_c) = π(h) for h ∈ C_G(g).
        let block_of: Vec<usize> = catalog
            .objects
            .iter()
            .map(|obj| {
                let hits: Vec<usize> = (0..r)
                    .filter(|&c| degs[c] == obj.degree)
                    .filter(|&c| {
                        obj.centralizer
                            .members()
                            .iter()
                            .zip(&obj.pi_character)
                            .all(|(&h, v)| {
                                let chi = dec.block_traces[c][ix.index(obj.g, h)] / degs[c] as f64;
                                (chi - v.to_complex()).norm() < RESIDUAL_TOL
                            })
                    })
                    .collect();
                match hits.as_slice() {
                    [c] => Ok(*c),
                    _ => Err(Error::Consistency(format!(
                        "object {} matches {} blocks",
                        obj.label,
                        hits.len()
                    ))),
                }
            })
            .collect::<Result<_>>()?;
        let mut object_of = vec![usize::MAX; r];
        for (o, &c) in block_of.iter().enumerate() {
            if object_of[c] != usize::MAX {
                return Err(Error::Consistency("two objects share a block".into()));
            }
            object_of[c] = o;
        }

        let fusion = tensor_multiplicities(&dh, &dec.idempotents, &dec.block_traces, &degs)?;
        let k = catalog.objects.len();
        let fusion: Vec<Vec<Vec<usize>>> = (0..k)
            .map(|a| {
                (0..k)
                    .map(|b| {
                        (0..k)
                            .map(|c| fusion[block_of[a]][block_of[b]][block_of[c]])
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let unit = catalog.unit_index();
        let dual = (0..k)
            .map(|a| {
                (0..k).find(|&b| fusion[a][b][unit] == 1).ok_or_else(|| {
                    Error::Consistency(format!("no dual for {}", catalog.objects[a].label))
                })
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            catalog,
            fusion,
            dual,
            unit,
        })
    }

    /// Smallest set containing the seeds and the unit, closed under duals and tensor constituents.
    pub fn closure(&self, seeds: &[usize]) -> FusionSubcategory {
        let mut set: BTreeSet<usize> = seeds.iter().copied().collect();
        set.insert(self.unit);
        loop {
            let mut next = set.clone();
            for &a in &set {
                next.insert(self.dual[a]);
                for &b in &set {
                    for (c, &m) in self.fusion[a][b].iter().enumerate() {
                        if m > 0 {
                            next.insert(c);
                        }
                    }
                }
            }
            if next == set {
                return FusionSubcategory::from_set(&self.catalog, &set);
            }
            set = next;
        }
    }

    /// Every fusion subcategory: closures of all seed sets when there are at most
    /// [`ALL_SEEDS_LIMIT`] objects, otherwise principal closures closed under joins.
    pub fn all_subcategories(&self) -> Vec<FusionSubcategory> {
        let k = self.catalog.objects.len();
        let mut found: HashSet<FusionSubcategory> = HashSet::new();
        if k <= ALL_SEEDS_LIMIT {
            let subs: Vec<FusionSubcategory> = (0u32..1 << k)
                .into_par_iter()
                .map(|mask| {
                    self.closure(&(0..k).filter(|&i| mask >> i & 1 == 1).collect::<Vec<_>>())
                })
                .collect();
            found.extend(subs);
        } else {
            let mut frontier: Vec<FusionSubcategory> = (0..k).map(|a| self.closure(&[a])).collect();
            let principal = frontier.clone();
            found.extend(frontier.iter().cloned());
            while !frontier.is_empty() {
                let mut next = Vec::new();
                for s in &frontier {
                    for p in &principal {
                        let joined: Vec<usize> =
                            s.objects.iter().chain(&p.objects).copied().collect();
                        let j = self.closure(&joined);
                        if found.insert(j.clone()) {
                            next.push(j);
                        }
                    }
                }
                frontier = next;
            }
        }
        let mut out: Vec<FusionSubcategory> = found.into_iter().collect();
        out.sort();
        out
    }
}

/// `N_ab^c = tr(e_c | A e_a ⊗ A e_b) / (d_a d_b d_c)`, with `H` acting on the tensor product through `Δ`.
fn tensor_multiplicities(
    h: &HopfAlgebra,
    idempotents: &[Vec<Complex64>],
    block_traces: &[Vec<Complex64>],
    degs: &[usize],
) -> Result<Vec<Vec<Vec<usize>>>> {
    let r = idempotents.len();
    let comul: Vec<Vec<(usize, usize, Complex64)>> = (0..h.dim())
        .map(|k| {
            h.comul_basis(k)
                .iter()
                .map(|(a, b, c)| (*a, *b, c.to_complex()))
                .collect()
        })
        .collect();
    let rows: Vec<Result<Vec<Vec<usize>>>> = (0..r)
        .into_par_iter()
        .map(|a| {
            (0..r)
                .map(|b| {
                    let mut row = Vec::with_capacity(r);
                    let mut check = 0;
                    for c in 0..r {
                        let mut tr = Complex64::new(0.0, 0.0);
                        for (k, e) in idempotents[c].iter().enumerate() {
                            if e.norm_sqr() == 0.0 {
                                continue;
                            }
                            for (x1, x2, coef) in &comul[k] {
                                tr += e * coef * block_traces[a][*x1] * block_traces[b][*x2];
                            }
                        }
                        let v = tr / (degs[a] * degs[b] * degs[c]) as f64;
                        let m = v.re.round();
                        if (v - Complex64::new(m, 0.0)).norm() > RESIDUAL_TOL || m < 0.0 {
                            return Err(Error::Decomposition(format!(
                                "tensor multiplicity {v} is not a natural number"
                            )));
                        }
                        check += m as usize * degs[c];
                        row.push(m as usize);
                    }
                    if check != degs[a] * degs[b] {
                        return Err(Error::Consistency(format!(
                            "Σ N d_c = {check} ≠ {}",
                            degs[a] * degs[b]
                        )));
                    }
                    Ok(row)
                })
                .collect()
        })
        .collect();
    rows.into_iter().collect()
}

/// Structured record of a triple for reports.
#[derive(Clone, Debug, Serialize)]
pub struct TripleRecord {
    pub k1_order: usize,
    pub k1_generators: Vec<String>,
    pub k2_order: usize,
    pub k2_generators: Vec<String>,
    pub b_order: u32,
    /// `b_table` holds exponents of `ζ_{b_modulus}`.
    pub b_modulus: u32,
    pub b_table: Vec<u32>,
    pub dimension: usize,
    pub objects: Vec<String>,
}

impl TripleRecord {
    pub fn new(
        g: &FiniteGroup,
        t: &Triple,
        objects: Option<(&DoubleCatalog, &FusionSubcategory)>,
    ) -> Self {
        let gens = |s: &Subgroup| {
            s.generators()
                .iter()
                .map(|&x| g.element(x).to_string())
                .collect()
        };
        Self {
            k1_order: t.k1.order(),
            k1_generators: gens(&t.k1),
            k2_order: t.k2.order(),
            k2_generators: gens(&t.k2),
            b_order: t.b.value_order(),
            b_modulus: t.b.order,
            b_table: t.b.table.clone(),
            dimension: t.dimension,
            objects: objects
                .map(|(c, s)| s.labels(c).into_iter().map(String::from).collect())
                .unwrap_or_default(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::{cyclic_character, double_irreps};

    fn s3() -> FiniteGroup {
        FiniteGroup::symmetric(3)
    }

    #[test]
    fn trivial_pair_has_one_bicharacter() {
        let g = s3();
        let w = ThreeCocycle::trivial(&g);
        let bs = enumerate_invariant_bicharacters(&g, &g.trivial(), &g.trivial(), &w).unwrap();
        assert_eq!(bs.len(), 1);
    }

    #[test]
    fn a3_pairs_have_three_invariant_bicharacters() {
        let g = s3();
        let a3 = g
            .normal_subgroups()
            .iter()
            .find(|s| s.order() == 3)
            .unwrap()
            .clone();
        let bs =
            enumerate_invariant_bicharacters(&g, &a3, &a3, &ThreeCocycle::trivial(&g)).unwrap();
        assert_eq!(bs.len(), 3);
    }

    #[test]
    fn perfect_k1_has_only_trivial_bicharacter() {
        let g = FiniteGroup::alternating(5);
        let w = ThreeCocycle::trivial(&g);
        let bs = enumerate_invariant_bicharacters(&g, &g.whole(), &g.trivial(), &w).unwrap();
        assert_eq!(bs.len(), 1);
        assert!(bs[0].is_trivial());
    }

    #[test]
    fn s3_triples() {
        let g = s3();
        let triples = enumerate_triples(&g, &ThreeCocycle::trivial(&g)).unwrap();
        let mut dims: Vec<usize> = triples.iter().map(|t| t.dimension).collect();
        dims.sort_unstable();
        assert_eq!(dims, vec![1, 2, 6, 6, 6, 6, 18, 36]);
        assert!(triples.iter().any(|t| t.is_trivial() && t.dimension == 6));
        assert_eq!(equal_order_filter(&triples).len(), 4);
    }

    #[test]
    fn s5_centralizing_pairs() {
        let g = FiniteGroup::symmetric(5);
        let triples = enumerate_triples(&g, &ThreeCocycle::trivial(&g)).unwrap();
        let mut pairs: Vec<(usize, usize)> = triples
            .iter()
            .map(|t| (t.k1.order(), t.k2.order()))
            .collect();
        pairs.sort_unstable();
        assert_eq!(pairs, vec![(1, 1), (1, 60), (1, 120), (60, 1), (120, 1)]);
        let eq = equal_order_filter(&triples);
        assert_eq!(eq.len(), 1);
        assert!(eq[0].is_trivial());
    }

    #[test]
    fn s4_keeps_klein_triples() {
        let g = FiniteGroup::symmetric(4);
        let triples = enumerate_triples(&g, &ThreeCocycle::trivial(&g)).unwrap();
        let eq = equal_order_filter(&triples);
        // GL₂(F₂)-invariant bilinear forms on F₂²: zero and the determinant.
        assert_eq!(
            eq.iter()
                .filter(|t| t.k1.order() == 4 && t.k2.order() == 4)
                .count(),
            2
        );
    }

    #[test]
    fn s3_objects_of_named_triples() {
        let g = s3();
        let w = ThreeCocycle::trivial(&g);
        let cat = double_irreps(&g, &w, 0).unwrap();
        let triples = enumerate_triples(&g, &w).unwrap();
        let t = triples
            .iter()
            .find(|t| t.k1.is_trivial() && t.k2.order() == 3)
            .unwrap();
        let sub = triple_to_objects(&cat, t).unwrap();
        assert_eq!(sub.objects.len(), 2);
        assert_eq!(sub.dimension, 2);
        let t = triples
            .iter()
            .find(|t| t.k1.order() == 3 && t.k2.order() == 3 && t.b.is_trivial())
            .unwrap();
        assert_eq!(triple_to_objects(&cat, t).unwrap().dimension, 6);
    }

    /// The keystone: triples and tensor closures give the same eight subcategories of Rep D(S3).
    #[test]
    fn s3_bijection_with_tensor_closures() {
        let g = s3();
        let w = ThreeCocycle::trivial(&g);
        let cat = double_irreps(&g, &w, 0).unwrap();
        let oracle = TensorOracle::new(&g, cat.clone(), 0).unwrap();
        let closures = oracle.all_subcategories();
        assert_eq!(closures.len(), 8);
        let triples = enumerate_triples(&g, &w).unwrap();
        let mut from_triples: Vec<FusionSubcategory> = triples
            .iter()
            .map(|t| triple_to_objects(&cat, t).unwrap())
            .collect();
        from_triples.sort();
        assert_eq!(from_triples, closures);
        for t in &triples {
            let sub = triple_to_objects(&cat, t).unwrap();
            assert_eq!(reconstruct_triple(&g, &w, &cat, &sub).unwrap(), *t);
        }
        assert_eq!(oracle.closure(&[]).dimension, 1);
        let transposition = g
            .conjugacy_classes()
            .iter()
            .position(|c| c.members.len() == 3)
            .unwrap();
        let seed = cat
            .objects
            .iter()
            .position(|o| o.class == transposition)
            .unwrap();
        assert_eq!(oracle.closure(&[seed]).dimension, 36);
    }

    #[test]
    fn bijection_on_small_groups() {
        for g in [
            FiniteGroup::cyclic(3),
            FiniteGroup::cyclic(4),
            FiniteGroup::dihedral(4),
        ] {
            let w = ThreeCocycle::trivial(&g);
            let cat = double_irreps(&g, &w, 0).unwrap();
            let closures = TensorOracle::new(&g, cat.clone(), 0)
                .unwrap()
                .all_subcategories();
            let triples = enumerate_triples(&g, &w).unwrap();
            let mut from_triples: Vec<FusionSubcategory> = triples
                .iter()
                .map(|t| triple_to_objects(&cat, t).unwrap())
                .collect();
            from_triples.sort();
            from_triples.dedup();
            assert_eq!(from_triples.len(), triples.len(), "{}", g.name());
            assert_eq!(from_triples, closures, "{}", g.name());
        }
    }

    #[test]
    fn twisted_search_agrees_with_untwisted_route_when_omega_is_trivial() {
        let g = FiniteGroup::symmetric(4);
        let w = ThreeCocycle::trivial(&g);
        let v4 = g
            .normal_subgroups()
            .iter()
            .find(|s| s.order() == 4)
            .unwrap()
            .clone();
        let m = exponent_modulus(&g, &w);
        let mut a = untwisted_bicharacters(&g, &v4, &v4, m).unwrap();
        let mut b = twisted_bicharacters(&g, &v4, &v4, &w, m).unwrap();
        a.sort();
        b.sort();
        assert_eq!(a, b);
        assert_eq!(a.len(), 16);
    }

    #[test]
    fn nontrivial_omega_triples_have_consistent_dimensions() {
        let g = FiniteGroup::cyclic(4);
        let phi = cyclic_character(&g, &[1], 4).unwrap();
        let w = ThreeCocycle::cyclic_pullback(&g, &phi, 4, 2).unwrap();
        let cat = double_irreps(&g, &w, 0).unwrap();
        let triples = enumerate_triples(&g, &w).unwrap();
        assert!(triples.iter().any(|t| t.is_trivial()));
        for t in &triples {
            let sub = triple_to_objects(&cat, t).unwrap();
            assert_eq!(reconstruct_triple(&g, &w, &cat, &sub).unwrap(), *t);
        }
    }
}
