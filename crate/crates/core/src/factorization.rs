//! Exact factorizations `G = FΓ`, their matched-pair actions, and compatible cocycle pairs.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::perm::{FiniteGroup, Subgroup};
use crate::report::AxiomReport;

/// `G = FΓ` with `F ∩ Γ = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactFactorization {
    pub f: Subgroup,
    pub gamma: Subgroup,
    pub proper: bool,
}

impl ExactFactorization {
    pub fn new(g: &FiniteGroup, f: Subgroup, gamma: Subgroup) -> Result<Self> {
        if f.order() * gamma.order() != g.order() {
            return Err(Error::InvalidFactorization(format!(
                "|F|·|Γ| = {}·{} differs from |G| = {}",
                f.order(),
                gamma.order(),
                g.order()
            )));
        }
        if f.intersection_members(&gamma).len() != 1 {
            return Err(Error::InvalidFactorization("F ∩ Γ is not trivial".into()));
        }
        let proper = f.order() != g.order() && gamma.order() != g.order();
        Ok(Self { f, gamma, proper })
    }
}

/// Every ordered pair `(F, Γ)` of subgroups forming an exact factorization.
pub fn find_exact_factorizations(g: &FiniteGroup, proper_only: bool) -> Vec<ExactFactorization> {
    let subs = g.all_subgroups();
    let n = g.order();
    let mut out: Vec<ExactFactorization> = subs
        .par_iter()
        .flat_map_iter(|f| {
            subs.iter()
                .filter(move |gamma| f.order() * gamma.order() == n)
                .filter(move |gamma| f.intersection_members(gamma).len() == 1)
                .map(move |gamma| {
                    ExactFactorization::new(g, f.clone(), gamma.clone()).expect("checked above")
                })
                .filter(|fact| fact.proper || !proper_only)
                .collect::<Vec<_>>()
        })
        .collect();
    out.sort_by(|a, b| {
        (a.f.order(), a.f.members(), a.gamma.members()).cmp(&(
            b.f.order(),
            b.f.members(),
            b.gamma.members(),
        ))
    });
    out
}

/// Action tables of a matched pair in local indices: positions `0..|F|` and `0..|Γ|`,
/// position 0 being the identity.
///
/// `s·x = (s▷x)(s◁x)` in `G`, with `▷: Γ×F → F` and `◁: Γ×F → Γ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchedPair {
    pub f_labels: Vec<String>,
    pub gamma_labels: Vec<String>,
    f_mul: Vec<u32>,
    gamma_mul: Vec<u32>,
    f_inv: Vec<u32>,
    gamma_inv: Vec<u32>,
    left: Vec<u32>,
    right: Vec<u32>,
}

impl MatchedPair {
    pub fn nf(&self) -> usize {
        self.f_inv.len()
    }

    pub fn ng(&self) -> usize {
        self.gamma_inv.len()
    }

    pub fn fmul(&self, x: usize, y: usize) -> usize {
        self.f_mul[x * self.nf() + y] as usize
    }

    pub fn gmul(&self, s: usize, t: usize) -> usize {
        self.gamma_mul[s * self.ng() + t] as usize
    }

    pub fn finv(&self, x: usize) -> usize {
        self.f_inv[x] as usize
    }

    pub fn ginv(&self, s: usize) -> usize {
        self.gamma_inv[s] as usize
    }

    /// `s ◁ x ∈ Γ`.
    pub fn left(&self, s: usize, x: usize) -> usize {
        self.left[s * self.nf() + x] as usize
    }

    /// `s ▷ x ∈ F`.
    pub fn right(&self, s: usize, x: usize) -> usize {
        self.right[s * self.nf() + x] as usize
    }

    pub fn set_left(&mut self, s: usize, x: usize, v: usize) {
        let nf = self.nf();
        self.left[s * nf + x] = v as u32;
    }

    pub fn set_right(&mut self, s: usize, x: usize, v: usize) {
        let nf = self.nf();
        self.right[s * nf + x] = v as u32;
    }

    /// Inverses are recovered from the multiplication tables.
    fn from_tables(
        f_labels: Vec<String>,
        gamma_labels: Vec<String>,
        f_mul: Vec<u32>,
        gamma_mul: Vec<u32>,
        left: Vec<u32>,
        right: Vec<u32>,
    ) -> Self {
        let inv = |mul: &[u32], n: usize| -> Vec<u32> {
            (0..n)
                .map(|a| (0..n).find(|&b| mul[a * n + b] == 0).expect("group table") as u32)
                .collect()
        };
        let f_inv = inv(&f_mul, f_labels.len());
        let gamma_inv = inv(&gamma_mul, gamma_labels.len());
        Self {
            f_labels,
            gamma_labels,
            f_mul,
            gamma_mul,
            f_inv,
            gamma_inv,
            left,
            right,
        }
    }

    /// Direct product `F × Γ` with trivial actions, from abstract multiplication tables.
    pub fn direct_product(
        f_labels: Vec<String>,
        f_mul: Vec<u32>,
        gamma_labels: Vec<String>,
        gamma_mul: Vec<u32>,
    ) -> Self {
        let (nf, ng) = (f_labels.len(), gamma_labels.len());
        let left = (0..ng)
            .flat_map(|s| std::iter::repeat_n(s as u32, nf))
            .collect();
        let right = (0..ng).flat_map(|_| 0..nf as u32).collect();
        Self::from_tables(f_labels, gamma_labels, f_mul, gamma_mul, left, right)
    }
}

/// Local multiplication table of a subgroup, indexed by member position.
pub fn subgroup_table(g: &FiniteGroup, h: &Subgroup) -> Vec<u32> {
    let m = h.members();
    m.iter()
        .flat_map(|&a| {
            m.iter()
                .map(move |&b| h.position(g.mul(a, b)).expect("subgroup closed") as u32)
        })
        .collect()
}

/// Decomposes each `s·x` as `(s▷x)(s◁x)`.
pub fn derive_matched_pair(g: &FiniteGroup, fact: &ExactFactorization) -> Result<MatchedPair> {
    let (f, gamma) = (&fact.f, &fact.gamma);
    let mut split = vec![(u32::MAX, u32::MAX); g.order()];
    for (i, &x) in f.members().iter().enumerate() {
        for (j, &s) in gamma.members().iter().enumerate() {
            split[g.mul(x, s)] = (i as u32, j as u32);
        }
    }
    let mut left = Vec::with_capacity(f.order() * gamma.order());
    let mut right = Vec::with_capacity(f.order() * gamma.order());
    for &s in gamma.members() {
        for &x in f.members() {
            let (fx, gs) = split[g.mul(s, x)];
            if fx == u32::MAX {
                return Err(Error::InvalidFactorization(format!(
                    "{}·{} has no decomposition in FΓ",
                    g.element(s),
                    g.element(x)
                )));
            }
            right.push(fx);
            left.push(gs);
        }
    }
    let labels = |h: &Subgroup| {
        h.members()
            .iter()
            .map(|&i| g.element(i).to_string())
            .collect()
    };
    Ok(MatchedPair::from_tables(
        labels(f),
        labels(gamma),
        subgroup_table(g, f),
        subgroup_table(g, gamma),
        left,
        right,
    ))
}

/// Checks that the tables reproduce the products `s·x` of `G`.
pub fn verify_decomposition(
    g: &FiniteGroup,
    fact: &ExactFactorization,
    mp: &MatchedPair,
) -> AxiomReport {
    let mut rep = AxiomReport::new();
    rep.check("decomposition");
    for (s, &gs) in fact.gamma.members().iter().enumerate() {
        for (x, &gx) in fact.f.members().iter().enumerate() {
            let lhs = g.mul(gs, gx);
            let rhs = g.mul(
                fact.f.members()[mp.right(s, x)],
                fact.gamma.members()[mp.left(s, x)],
            );
            if lhs != rhs {
                rep.fail("decomposition", vec![s, x]);
            }
        }
    }
    rep
}

/// Exhaustive check of the matched-pair axioms; violations cite `(s, x, y)` or `(s, t, x)` witnesses.
pub fn verify_matched_pair(mp: &MatchedPair) -> AxiomReport {
    let (nf, ng) = (mp.nf(), mp.ng());
    let mut rep = AxiomReport::new();
    for a in [
        "identity laws",
        "comp1",
        "comp2",
        "left action bijective",
        "right action bijective",
    ] {
        rep.check(a);
    }
    for x in 0..nf {
        if mp.right(0, x) != x || mp.left(0, x) != 0 {
            rep.fail("identity laws", vec![0, x]);
        }
    }
    for s in 0..ng {
        if mp.right(s, 0) != 0 || mp.left(s, 0) != s {
            rep.fail("identity laws", vec![s, 0]);
        }
    }
    for s in 0..ng {
        for x in 0..nf {
            for y in 0..nf {
                let lhs = mp.right(s, mp.fmul(x, y));
                let rhs = mp.fmul(mp.right(s, x), mp.right(mp.left(s, x), y));
                if lhs != rhs {
                    rep.fail("comp1", vec![s, x, y]);
                }
            }
        }
    }
    for s in 0..ng {
        for t in 0..ng {
            for x in 0..nf {
                let lhs = mp.left(mp.gmul(s, t), x);
                let rhs = mp.gmul(mp.left(s, mp.right(t, x)), mp.left(t, x));
                if lhs != rhs {
                    rep.fail("comp2", vec![s, t, x]);
                }
            }
        }
    }
    for x in 0..nf {
        let mut seen = vec![false; ng];
        for s in 0..ng {
            seen[mp.left(s, x)] = true;
        }
        if seen.iter().any(|b| !b) {
            rep.fail("left action bijective", vec![x]);
        }
    }
    for s in 0..ng {
        let mut seen = vec![false; nf];
        for x in 0..nf {
            seen[mp.right(s, x)] = true;
        }
        if seen.iter().any(|b| !b) {
            rep.fail("right action bijective", vec![s]);
        }
    }
    rep
}

/// Root-of-unity valued cocycles as exponents of `ζ_order`.
///
/// `sigma[s][x][y]` holds `σ_s(x,y)`, `tau[x][s][t]` holds `τ_x(s,t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocyclePair {
    pub order: u32,
    nf: usize,
    ng: usize,
    sigma: Vec<u32>,
    tau: Vec<u32>,
}

impl CocyclePair {
    pub fn trivial(mp: &MatchedPair) -> Self {
        Self::new(mp, 1)
    }

    /// All exponents zero, over `ζ_order`.
    pub fn new(mp: &MatchedPair, order: u32) -> Self {
        let (nf, ng) = (mp.nf(), mp.ng());
        Self {
            order,
            nf,
            ng,
            sigma: vec![0; ng * nf * nf],
            tau: vec![0; nf * ng * ng],
        }
    }

    pub fn sigma(&self, s: usize, x: usize, y: usize) -> u32 {
        self.sigma[(s * self.nf + x) * self.nf + y]
    }

    pub fn tau(&self, x: usize, s: usize, t: usize) -> u32 {
        self.tau[(x * self.ng + s) * self.ng + t]
    }

    pub fn set_sigma(&mut self, s: usize, x: usize, y: usize, e: u32) {
        self.sigma[(s * self.nf + x) * self.nf + y] = e % self.order;
    }

    pub fn set_tau(&mut self, x: usize, s: usize, t: usize, e: u32) {
        self.tau[(x * self.ng + s) * self.ng + t] = e % self.order;
    }

    pub fn is_trivial(&self) -> bool {
        self.sigma.iter().chain(&self.tau).all(|&e| e == 0)
    }

    /// Re-expresses every exponent over `ζ_target`; `target` must be a multiple of `order`.
    pub fn lift(&self, target: u32) -> Self {
        assert_eq!(
            target % self.order,
            0,
            "cocycle order must divide the target order"
        );
        let k = target / self.order;
        Self {
            order: target,
            nf: self.nf,
            ng: self.ng,
            sigma: self.sigma.iter().map(|e| e * k).collect(),
            tau: self.tau.iter().map(|e| e * k).collect(),
        }
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.nf, self.ng)
    }
}

/// Exhaustive check of the cocycle, normalization and joint compatibility identities.
/// Witnesses are `(s,x,y,z)` for σ, `(x,u,v,t)` for τ and `(t,s,x,y)` for the joint identity.
pub fn validate_cocycles(mp: &MatchedPair, cp: &CocyclePair) -> AxiomReport {
    let (nf, ng) = (mp.nf(), mp.ng());
    let n = cp.order as u64;
    let mut rep = AxiomReport::new();
    for a in [
        "table shape",
        "sigma normalization",
        "tau normalization",
        "sigma cocycle",
        "tau cocycle",
        "joint compatibility",
    ] {
        rep.check(a);
    }
    if cp.dims() != (nf, ng) {
        rep.fail("table shape", vec![cp.nf, cp.ng]);
        return rep;
    }
    let add = |xs: &[u32]| xs.iter().map(|&e| e as u64).sum::<u64>() % n;
    for x in 0..nf {
        for y in 0..nf {
            if cp.sigma(0, x, y) != 0 {
                rep.fail("sigma normalization", vec![0, x, y]);
            }
        }
    }
    for s in 0..ng {
        for x in 0..nf {
            if cp.sigma(s, x, 0) != 0 || cp.sigma(s, 0, x) != 0 {
                rep.fail("sigma normalization", vec![s, x]);
            }
        }
    }
    for s in 0..ng {
        for t in 0..ng {
            if cp.tau(0, s, t) != 0 {
                rep.fail("tau normalization", vec![0, s, t]);
            }
        }
    }
    for x in 0..nf {
        for s in 0..ng {
            if cp.tau(x, s, 0) != 0 || cp.tau(x, 0, s) != 0 {
                rep.fail("tau normalization", vec![x, s]);
            }
        }
    }
    // σ_{s◁x}(y,z) σ_s(x,yz) = σ_s(x,y) σ_s(xy,z)
    for s in 0..ng {
        for x in 0..nf {
            let sx = mp.left(s, x);
            for y in 0..nf {
                for z in 0..nf {
                    let lhs = add(&[cp.sigma(sx, y, z), cp.sigma(s, x, mp.fmul(y, z))]);
                    let rhs = add(&[cp.sigma(s, x, y), cp.sigma(s, mp.fmul(x, y), z)]);
                    if lhs != rhs {
                        rep.fail("sigma cocycle", vec![s, x, y, z]);
                    }
                }
            }
        }
    }
    // τ_x(uv,t) τ_{t▷x}(u,v) = τ_x(u,vt) τ_x(v,t)
    for x in 0..nf {
        for t in 0..ng {
            let tx = mp.right(t, x);
            for u in 0..ng {
                for v in 0..ng {
                    let lhs = add(&[cp.tau(x, mp.gmul(u, v), t), cp.tau(tx, u, v)]);
                    let rhs = add(&[cp.tau(x, u, mp.gmul(v, t)), cp.tau(x, v, t)]);
                    if lhs != rhs {
                        rep.fail("tau cocycle", vec![x, u, v, t]);
                    }
                }
            }
        }
    }
    // σ_{ts}(x,y) τ_{xy}(t,s) = τ_x(t,s) τ_y(t◁(s▷x), s◁x) σ_t(s▷x, (s◁x)▷y) σ_s(x,y)
    for t in 0..ng {
        for s in 0..ng {
            let ts = mp.gmul(t, s);
            for x in 0..nf {
                let (sx_f, sx_g) = (mp.right(s, x), mp.left(s, x));
                for y in 0..nf {
                    let lhs = add(&[cp.sigma(ts, x, y), cp.tau(mp.fmul(x, y), t, s)]);
                    let rhs = add(&[
                        cp.tau(x, t, s),
                        cp.tau(y, mp.left(t, sx_f), sx_g),
                        cp.sigma(t, sx_f, mp.right(sx_g, y)),
                        cp.sigma(s, x, y),
                    ]);
                    if lhs != rhs {
                        rep.fail("joint compatibility", vec![t, s, x, y]);
                    }
                }
            }
        }
    }
    rep
}
