use crate::cyclotomic::CycScalar;
use crate::error::{Error, Result};
use crate::factorization::{validate_cocycles, verify_matched_pair, CocyclePair, MatchedPair};
use crate::hopf::{compute_antipode, HopfAlgebra, Tensor2};

/// Basis index of `e_g # x`.
pub(crate) fn bicrossed_index(mp: &MatchedPair, g: usize, x: usize) -> usize {
    g * mp.nf() + x
}

/// `k^Γ τ#σ kF` on the basis `e_g # x`, index `g·|F| + x`.
///
/// `(e_g#x)(e_h#y) = δ_{g◁x,h} σ_g(x,y) e_g#xy` and
/// `Δ(e_g#x) = Σ_{st=g} τ_x(s,t) e_s#(t▷x) ⊗ e_t#x`.
pub fn build_bicrossed_product(
    name: &str,
    mp: &MatchedPair,
    cp: &CocyclePair,
) -> Result<HopfAlgebra> {
    let pair = verify_matched_pair(mp);
    if !pair.passed() {
        return Err(Error::InvalidFactorization(format!(
            "matched pair axioms fail: {:?}",
            pair.failed_axioms()
        )));
    }
    let coc = validate_cocycles(mp, cp);
    if !coc.passed() {
        return Err(Error::CocycleInvalid(format!(
            "{:?} (witness {:?})",
            coc.failed_axioms(),
            coc.violations[0].witness
        )));
    }
    let (nf, ng) = (mp.nf(), mp.ng());
    let d = nf * ng;
    let n = cp.order;
    let zeta = |e: u32| CycScalar::root_of_unity(n, e as i64);
    let one = CycScalar::one();

    let mut mul = vec![Vec::new(); d * d];
    for g in 0..ng {
        for x in 0..nf {
            let h = mp.left(g, x);
            for y in 0..nf {
                let i = bicrossed_index(mp, g, x);
                let j = bicrossed_index(mp, h, y);
                mul[i * d + j] = vec![(
                    bicrossed_index(mp, g, mp.fmul(x, y)),
                    zeta(cp.sigma(g, x, y)),
                )];
            }
        }
    }
    let mut comul = Vec::with_capacity(d);
    for g in 0..ng {
        for x in 0..nf {
            let mut t: Tensor2 = (0..ng)
                .map(|s| {
                    let t = mp.gmul(mp.ginv(s), g);
                    (
                        bicrossed_index(mp, s, mp.right(t, x)),
                        bicrossed_index(mp, t, x),
                        zeta(cp.tau(x, s, t)),
                    )
                })
                .collect();
            t.sort_by_key(|e| (e.0, e.1));
            comul.push(t);
        }
    }
    let unit = (0..ng)
        .map(|g| (bicrossed_index(mp, g, 0), one.clone()))
        .collect();
    let counit = (0..d)
        .map(|i| {
            if i < nf {
                one.clone()
            } else {
                CycScalar::zero()
            }
        })
        .collect();
    let labels = (0..ng)
        .flat_map(|g| (0..nf).map(move |x| (g, x)))
        .map(|(g, x)| format!("e[{}]#{}", mp.gamma_labels[g], mp.f_labels[x]))
        .collect();
    let mut h = HopfAlgebra::from_parts(name, labels, n, mul, unit, comul, counit);
    let s = compute_antipode(&h)?;
    h.set_antipode(s);
    Ok(h)
}
