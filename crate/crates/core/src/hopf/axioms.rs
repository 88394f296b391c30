use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cyclotomic::CycScalar;
use crate::hopf::antipode::{left_convolution_holds, right_convolution_holds};
use crate::hopf::{HopfAlgebra, Tensor2};
use crate::linalg::{Accumulator, PairAccumulator, SparseVec};
use crate::report::AxiomReport;

/// An element of `H ⊗ H ⊗ H` as sorted terms.
pub(crate) type Tensor3 = Vec<((usize, usize, usize), CycScalar)>;

/// Above this dimension, pair and triple checks are sampled.
pub const EXHAUSTIVE_DIM_LIMIT: usize = 200;

#[derive(Clone, Copy, Debug)]
pub struct AxiomOptions {
    pub seed: u64,
    pub samples: usize,
    pub exhaustive_limit: usize,
}

impl Default for AxiomOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            samples: 10_000,
            exhaustive_limit: EXHAUSTIVE_DIM_LIMIT,
        }
    }
}

pub fn verify_hopf_axioms(h: &HopfAlgebra) -> AxiomReport {
    verify_hopf_axioms_with(h, AxiomOptions::default())
}

/// Index tuples to check: all of `0..d` to the power `arity`, or a seeded sample.
enum Domain {
    Exhaustive { d: usize, arity: u32 },
    Sampled(Vec<Vec<usize>>),
}

fn tuples(d: usize, arity: u32, opts: &AxiomOptions, salt: u64) -> (Domain, bool) {
    if d <= opts.exhaustive_limit {
        (Domain::Exhaustive { d, arity }, false)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ salt);
        let s = (0..opts.samples)
            .map(|_| (0..arity).map(|_| rng.random_range(0..d)).collect())
            .collect();
        (Domain::Sampled(s), true)
    }
}

fn failures<F>(dom: &Domain, f: F) -> Vec<Vec<usize>>
where
    F: Fn(&[usize]) -> bool + Sync,
{
    match dom {
        Domain::Sampled(items) => items
            .par_iter()
            .filter(|t| !f(t))
            .take_any(8)
            .cloned()
            .collect(),
        Domain::Exhaustive { d, arity } => {
            let (d, arity) = (*d, *arity);
            (0..d.pow(arity))
                .into_par_iter()
                .map(|mut k| {
                    let mut t = vec![0; arity as usize];
                    for slot in t.iter_mut().rev() {
                        *slot = k % d;
                        k /= d;
                    }
                    t
                })
                .filter(|t| !f(t))
                .take_any(8)
                .collect()
        }
    }
}

pub(crate) fn add3(
    acc: &mut std::collections::BTreeMap<(usize, usize, usize), CycScalar>,
    k: (usize, usize, usize),
    c: &CycScalar,
) {
    if c.is_zero() {
        return;
    }
    match acc.get_mut(&k) {
        Some(v) => *v += c,
        None => {
            acc.insert(k, c.clone());
        }
    }
}

/// Exhaustive (or seeded-sampled above `exhaustive_limit`) check of every Hopf algebra identity.
/// Witnesses are basis indices.
pub fn verify_hopf_axioms_with(h: &HopfAlgebra, opts: AxiomOptions) -> AxiomReport {
    let d = h.dim();
    let mut rep = AxiomReport::new();
    let unit = h.unit().clone();
    let one_one = h.tensor_unit();

    let (triples, sampled3) = tuples(d, 3, &opts, 0x11);
    rep.check("associativity");
    for w in failures(&triples, |t| {
        let (i, j, k) = (t[0], t[1], t[2]);
        h.mul(h.mul_basis(i, j), &h.basis(k)) == h.mul(&h.basis(i), h.mul_basis(j, k))
    }) {
        rep.fail("associativity", w);
    }

    let singles = Domain::Exhaustive { d, arity: 1 };
    rep.check("unit");
    for w in failures(&singles, |t| {
        let b = h.basis(t[0]);
        h.mul(&unit, &b) == b && h.mul(&b, &unit) == b
    }) {
        rep.fail("unit", w);
    }

    rep.check("coassociativity");
    for w in failures(&singles, |t| {
        comul_left_leg(h, h.comul_basis(t[0])) == comul_right_leg(h, h.comul_basis(t[0]))
    }) {
        rep.fail("coassociativity", w);
    }

    rep.check("counit");
    for w in failures(&singles, |t| {
        let b = h.basis(t[0]);
        let mut l = Accumulator::new();
        let mut r = Accumulator::new();
        for (p, q, c) in h.comul_basis(t[0]) {
            l.add(*q, &(c * h.counit_basis(*p)));
            r.add(*p, &(c * h.counit_basis(*q)));
        }
        l.into_sparse() == b && r.into_sparse() == b
    }) {
        rep.fail("counit", w);
    }

    let (pairs, sampled2) = tuples(d, 2, &opts, 0x22);
    rep.check("comultiplication multiplicative");
    for w in failures(&pairs, |t| {
        let lhs = h.comul(h.mul_basis(t[0], t[1]));
        lhs == h.tensor_mul(h.comul_basis(t[0]), h.comul_basis(t[1]))
    }) {
        rep.fail("comultiplication multiplicative", w);
    }

    rep.check("comultiplication unital");
    if h.comul(&unit) != one_one {
        rep.fail("comultiplication unital", vec![]);
    }

    rep.check("counit multiplicative");
    for w in failures(&pairs, |t| {
        h.counit(h.mul_basis(t[0], t[1])) == h.counit_basis(t[0]) * h.counit_basis(t[1])
    }) {
        rep.fail("counit multiplicative", w);
    }

    rep.check("counit unital");
    if !h.counit(&unit).is_one() {
        rep.fail("counit unital", vec![]);
    }

    rep.check("antipode S*id");
    for w in failures(&singles, |t| left_convolution_holds(h, t[0])) {
        rep.fail("antipode S*id", w);
    }
    rep.check("antipode id*S");
    for w in failures(&singles, |t| right_convolution_holds(h, t[0])) {
        rep.fail("antipode id*S", w);
    }

    if sampled2 || sampled3 {
        rep.sampling = Some((opts.seed, opts.samples));
    }
    rep
}

/// `(Δ ⊗ id)(x)` for `x ∈ H ⊗ H`, as sorted triples.
pub(crate) fn comul_left_leg(h: &HopfAlgebra, x: &Tensor2) -> Tensor3 {
    let mut acc = std::collections::BTreeMap::new();
    for (a, b, c) in x {
        for (p, q, e) in h.comul_basis(*a) {
            add3(&mut acc, (*p, *q, *b), &(c * e));
        }
    }
    acc.into_iter()
        .filter(|(_, v): &(_, CycScalar)| !v.is_zero())
        .collect()
}

/// `(id ⊗ Δ)(x)` for `x ∈ H ⊗ H`.
pub(crate) fn comul_right_leg(h: &HopfAlgebra, x: &Tensor2) -> Tensor3 {
    let mut acc = std::collections::BTreeMap::new();
    for (a, b, c) in x {
        for (p, q, e) in h.comul_basis(*b) {
            add3(&mut acc, (*a, *p, *q), &(c * e));
        }
    }
    acc.into_iter()
        .filter(|(_, v): &(_, CycScalar)| !v.is_zero())
        .collect()
}

/// Product of two elements of `H ⊗ H ⊗ H`.
pub(crate) fn tensor3_mul(
    h: &HopfAlgebra,
    x: &[((usize, usize, usize), CycScalar)],
    y: &[((usize, usize, usize), CycScalar)],
) -> Tensor3 {
    let mut acc = std::collections::BTreeMap::new();
    for ((a1, a2, a3), c) in x {
        for ((b1, b2, b3), e) in y {
            let p1 = h.mul_basis(*a1, *b1);
            if p1.is_empty() {
                continue;
            }
            let p2 = h.mul_basis(*a2, *b2);
            if p2.is_empty() {
                continue;
            }
            let p3 = h.mul_basis(*a3, *b3);
            let ce = c * e;
            for (i, u) in p1 {
                for (j, v) in p2 {
                    let uv = &(&ce * u) * v;
                    for (k, w) in p3 {
                        add3(&mut acc, (*i, *j, *k), &(&uv * w));
                    }
                }
            }
        }
    }
    acc.into_iter()
        .filter(|(_, v): &(_, CycScalar)| !v.is_zero())
        .collect()
}

/// Swaps the two legs of a tensor.
pub(crate) fn flip(x: &Tensor2) -> Tensor2 {
    let mut acc = PairAccumulator::new();
    for (a, b, c) in x {
        acc.add(*b, *a, c);
    }
    acc.into_sorted()
}

/// Applies a linear map given by columns to one leg.
pub(crate) fn map_leg(x: &Tensor2, cols: &[SparseVec], first: bool) -> Tensor2 {
    let mut acc = PairAccumulator::new();
    for (a, b, c) in x {
        if first {
            for (p, e) in &cols[*a] {
                acc.add(*p, *b, &(c * e));
            }
        } else {
            for (p, e) in &cols[*b] {
                acc.add(*a, *p, &(c * e));
            }
        }
    }
    acc.into_sorted()
}
