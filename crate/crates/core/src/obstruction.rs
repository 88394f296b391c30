//! Non-existence of quasitriangular structures on `k^Γ τ#σ kF`, decided on a concrete `(G, F, Γ, ω)`.
//!
//! A quasitriangular `H` makes `Rep H` a fusion subcategory of dimension `|G|` in
//! `Rep D(H) ≅ Rep D^ω(G)`, so it is the subcategory of some triple with `|K₁| = |K₂|` whose simple objects
//! all have dimension dividing `|F|`. When only `(1,1,1)` remains, `H` is a twist of `kG`; twisting
//! preserves quotients and irreducible degrees, which gives the two closing contradictions.

use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::Result;
use crate::factorization::ExactFactorization;
use crate::fusion::{
    enumerate_triples, equal_order_filter, triple_to_objects, Triple, TripleRecord,
};
use crate::hopf::group_algebra;
use crate::perm::{FiniteGroup, Subgroup};
use crate::rep::{decompose_semisimple, double_irreps, DoubleCatalog, ThreeCocycle};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    NoQT,
    Inconclusive,
    OutOfScope,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::NoQT => "NoQT",
            Verdict::Inconclusive => "Inconclusive",
            Verdict::OutOfScope => "OutOfScope",
        })
    }
}

/// The operation a step ran, with enough arguments to run it again.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "op")]
pub enum Operation {
    Properness {
        f_order: usize,
        gamma_order: usize,
    },
    EqualOrderTriples {
        f_order: usize,
    },
    /// `triple` indexes `enumerate_triples(G, ω)`.
    TripleDivisibility {
        triple: usize,
        f_order: usize,
    },
    QuotientObstruction {
        f_order: usize,
    },
    DegreeDivisibility {
        f_order: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepRecord {
    pub name: &'static str,
    pub operation: Operation,
    /// The argument the step instantiates.
    pub anchor: &'static str,
    /// True when the step pushes toward `NoQT`.
    pub outcome: bool,
    pub summary: String,
    pub witnesses: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct InstanceSummary {
    pub group: String,
    pub group_order: usize,
    pub f_generators: Vec<String>,
    pub f_order: usize,
    pub gamma_generators: Vec<String>,
    pub gamma_order: usize,
    pub omega_trivial: bool,
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ObstructionReport {
    pub verdict: Verdict,
    pub instance: InstanceSummary,
    pub trace: Vec<StepRecord>,
    /// True when `G` is simple or almost simple, the hypotheses under which `NoQT` is a theorem.
    pub theorem_backed: bool,
    /// Surviving equal-order triples, for the record.
    pub survivors: Vec<TripleRecord>,
}

/// Everything the steps share: the group, ω, the triples of `Rep D^ω(G)` and its simple objects.
pub struct GroupContext<'a> {
    pub group: &'a FiniteGroup,
    pub omega: &'a ThreeCocycle,
    pub seed: u64,
    pub triples: Vec<Triple>,
    pub catalog: DoubleCatalog,
    /// Irreducible degrees of `G` and of its socle, computed on first use.
    degrees: OnceLock<(Vec<usize>, Vec<usize>)>,
}

impl<'a> GroupContext<'a> {
    pub fn new(group: &'a FiniteGroup, omega: &'a ThreeCocycle, seed: u64) -> Result<Self> {
        let triples = enumerate_triples(group, omega)?;
        let catalog = double_irreps(group, omega, seed)?;
        Ok(Self {
            group,
            omega,
            seed,
            triples,
            catalog,
            degrees: OnceLock::new(),
        })
    }

    fn degrees(&self) -> Result<&(Vec<usize>, Vec<usize>)> {
        if let Some(d) = self.degrees.get() {
            return Ok(d);
        }
        let g = self.group;
        let dg = decompose_semisimple(&group_algebra(g), self.seed)?.degrees();
        let n = g.subgroup_as_group(&g.socle().socle, "N");
        let dn = decompose_semisimple(&group_algebra(&n), self.seed)?.degrees();
        Ok(self.degrees.get_or_init(|| (dg, dn)))
    }

    fn generators(&self, s: &Subgroup) -> Vec<String> {
        s.generators()
            .iter()
            .map(|&x| self.group.element(x).to_string())
            .collect()
    }

    /// Runs one recorded operation again.
    pub fn rerun(&self, op: &Operation) -> Result<StepRecord> {
        match *op {
            Operation::Properness {
                f_order,
                gamma_order,
            } => Ok(check_properness(self.group, f_order, gamma_order)),
            Operation::EqualOrderTriples { f_order } => {
                Ok(check_equal_order_triples(self, f_order))
            }
            Operation::TripleDivisibility { triple, f_order } => {
                check_triple_divisibility(self, triple, f_order)
            }
            Operation::QuotientObstruction { f_order } => {
                Ok(check_quotient_obstruction(self.group, f_order))
            }
            Operation::DegreeDivisibility { f_order } => check_degree_divisibility(self, f_order),
        }
    }
}

/// Step 0: both factors proper; socle structure recorded.
pub fn check_properness(g: &FiniteGroup, f_order: usize, gamma_order: usize) -> StepRecord {
    let proper = f_order > 1 && gamma_order > 1 && f_order * gamma_order == g.order();
    let socle = g.socle();
    let simple = g.is_simple();
    let almost = socle.socle_simple_nonabelian;
    StepRecord {
        name: "properness",
        operation: Operation::Properness { f_order, gamma_order },
        anchor: "the factorization is proper; in an almost simple group every nontrivial normal subgroup contains the socle",
        outcome: proper,
        summary: format!(
            "|F| = {f_order}, |Γ| = {gamma_order}, {}; socle of order {}{}",
            if proper { "proper" } else { "not proper" },
            socle.socle.order(),
            if simple {
                ", G simple"
            } else if almost {
                ", G almost simple"
            } else {
                ""
            }
        ),
        witnesses: vec![format!("socle order {}", socle.socle.order())],
    }
}

/// Step 1: the fusion subcategories of dimension `|G|`; succeeds iff only `(1,1,1)` has `|K₁| = |K₂|`.
pub fn check_equal_order_triples(ctx: &GroupContext, f_order: usize) -> StepRecord {
    let eq = equal_order_filter(&ctx.triples);
    let nontrivial = eq.iter().filter(|t| !t.is_trivial()).count();
    let witnesses = eq
        .iter()
        .filter(|t| !t.is_trivial())
        .map(|t| {
            format!(
                "({}, {}, B of order {})",
                t.k1.order(),
                t.k2.order(),
                t.b.value_order()
            )
        })
        .collect();
    StepRecord {
        name: "equal-order triples",
        operation: Operation::EqualOrderTriples { f_order },
        anchor: "a quasitriangular structure on H makes Rep H a fusion subcategory of Rep D(H) of dimension |G|, hence given by a triple with |K1| = |K2|",
        outcome: nontrivial == 0,
        summary: format!("{} of {} triples have |K1| = |K2|; {nontrivial} besides (1,1,1)", eq.len(), ctx.triples.len()),
        witnesses,
    }
}

/// Step 2: the triple is eliminated when some simple object `(g, π)` of its subcategory has
/// `[G : C_G(g)] deg π` not dividing `|F|`.
pub fn check_triple_divisibility(
    ctx: &GroupContext,
    triple: usize,
    f_order: usize,
) -> Result<StepRecord> {
    let t = &ctx.triples[triple];
    let sub = triple_to_objects(&ctx.catalog, t)?;
    let bad: Vec<String> = sub
        .objects
        .iter()
        .map(|&o| &ctx.catalog.objects[o])
        .filter(|o| f_order % o.degree != 0)
        .map(|o| format!("{} of dimension {}", o.label, o.degree))
        .collect();
    Ok(StepRecord {
        name: "triple divisibility",
        operation: Operation::TripleDivisibility { triple, f_order },
        anchor: "every irreducible of H has dimension [F:F^s] deg ρ, which divides |F|",
        outcome: !bad.is_empty(),
        summary: format!(
            "triple {triple} (K1 = <{}>, K2 = <{}>, B of order {}) {}",
            ctx.generators(&t.k1).join(", "),
            ctx.generators(&t.k2).join(", "),
            t.b.value_order(),
            if bad.is_empty() {
                "survives".to_string()
            } else {
                format!("eliminated by {} objects", bad.len())
            }
        ),
        witnesses: bad,
    })
}

/// Step 3a: a twist of `kG` with the quotient `H → kF` gives a group quotient of `G` of order `|F|`.
pub fn check_quotient_obstruction(g: &FiniteGroup, f_order: usize) -> StepRecord {
    let index = g.order() / f_order.max(1);
    let n = g.has_normal_subgroup_of_index(f_order);
    StepRecord {
        name: "quotient obstruction",
        operation: Operation::QuotientObstruction { f_order },
        anchor: "twisting preserves Hopf quotients, so kG would have a quotient kT with |T| = |F|",
        outcome: n.is_none(),
        summary: match &n {
            None => format!("G has no normal subgroup of index {f_order}"),
            Some(n) => format!(
                "G has a normal subgroup of order {} and index {f_order}",
                n.order()
            ),
        },
        witnesses: vec![
            format!(
                "normal subgroup orders {:?}",
                g.normal_subgroups()
                    .iter()
                    .map(|n| n.order())
                    .collect::<Vec<_>>()
            ),
            format!("needed order {index}"),
        ],
    }
}

/// Step 3b: irreducible degrees of a twist of `kG` are those of `G`, and restrict to the socle `N`;
/// all must divide `|F|`.
pub fn check_degree_divisibility(ctx: &GroupContext, f_order: usize) -> Result<StepRecord> {
    let (dg, dn) = ctx.degrees()?;
    let mut witnesses: Vec<String> = Vec::new();
    if let Some(d) = dg.iter().find(|&&d| f_order % d != 0) {
        witnesses.push(format!("G has an irreducible of degree {d}"));
    }
    if let Some(d) = dn.iter().find(|&&d| f_order % d != 0) {
        witnesses.push(format!("socle N has an irreducible of degree {d}"));
    }
    Ok(StepRecord {
        name: "degree divisibility",
        operation: Operation::DegreeDivisibility { f_order },
        anchor: "irreducible degrees of G, and of its socle N, must divide |F|",
        outcome: !witnesses.is_empty(),
        summary: format!("degrees of G {dg:?}, of N {dn:?}, |F| = {f_order}"),
        witnesses,
    })
}

/// Runs the full pipeline; the verdict is never a claim that an R-matrix exists.
pub fn run_pipeline(
    g: &FiniteGroup,
    f: &Subgroup,
    gamma: &Subgroup,
    omega: &ThreeCocycle,
    seed: u64,
) -> Result<ObstructionReport> {
    let fact = ExactFactorization::new(g, f.clone(), gamma.clone())?;
    if !fact.proper {
        return Ok(out_of_scope(g, &fact, omega, seed));
    }
    let ctx = GroupContext::new(g, omega, seed)?;
    run_pipeline_in(&ctx, f, gamma)
}

fn instance(
    g: &FiniteGroup,
    fact: &ExactFactorization,
    omega: &ThreeCocycle,
    seed: u64,
) -> InstanceSummary {
    let gens = |s: &Subgroup| {
        s.generators()
            .iter()
            .map(|&x| g.element(x).to_string())
            .collect()
    };
    InstanceSummary {
        group: g.name().to_string(),
        group_order: g.order(),
        f_generators: gens(&fact.f),
        f_order: fact.f.order(),
        gamma_generators: gens(&fact.gamma),
        gamma_order: fact.gamma.order(),
        omega_trivial: omega.is_trivial(),
        seed,
    }
}

fn out_of_scope(
    g: &FiniteGroup,
    fact: &ExactFactorization,
    omega: &ThreeCocycle,
    seed: u64,
) -> ObstructionReport {
    ObstructionReport {
        verdict: Verdict::OutOfScope,
        instance: instance(g, fact, omega, seed),
        trace: vec![check_properness(g, fact.f.order(), fact.gamma.order())],
        theorem_backed: g.is_simple() || g.is_almost_simple(),
        survivors: vec![],
    }
}

/// The pipeline against a prepared context, so several factorizations of one group share the
/// triple scan and the double's simple objects.
pub fn run_pipeline_in(
    ctx: &GroupContext,
    f: &Subgroup,
    gamma: &Subgroup,
) -> Result<ObstructionReport> {
    let g = ctx.group;
    let fact = ExactFactorization::new(g, f.clone(), gamma.clone())?;
    let mut report = out_of_scope(g, &fact, ctx.omega, ctx.seed);
    if !report.trace[0].outcome {
        return Ok(report);
    }
    let nf = fact.f.order();
    let step1 = check_equal_order_triples(ctx, nf);
    let mut only_trivial = step1.outcome;
    report.trace.push(step1);
    if !only_trivial {
        let mut all_eliminated = true;
        for (i, t) in ctx.triples.iter().enumerate() {
            if t.is_trivial() || t.k1.order() != t.k2.order() {
                continue;
            }
            let step = check_triple_divisibility(ctx, i, nf)?;
            if !step.outcome {
                all_eliminated = false;
                let sub = triple_to_objects(&ctx.catalog, t)?;
                report
                    .survivors
                    .push(TripleRecord::new(g, t, Some((&ctx.catalog, &sub))));
            }
            report.trace.push(step);
        }
        only_trivial = all_eliminated;
    }
    if !only_trivial {
        report.verdict = Verdict::Inconclusive;
        return Ok(report);
    }
    let quotient = check_quotient_obstruction(g, nf);
    let degrees = check_degree_divisibility(ctx, nf)?;
    let fired = quotient.outcome || degrees.outcome;
    report.trace.push(quotient);
    report.trace.push(degrees);
    report.verdict = if fired {
        Verdict::NoQT
    } else {
        Verdict::Inconclusive
    };
    Ok(report)
}

impl fmt::Display for ObstructionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = &self.instance;
        writeln!(
            f,
            "instance: G = {} (order {}), F = <{}> (order {}), Γ = <{}> (order {}), ω {}",
            i.group,
            i.group_order,
            i.f_generators.join(", "),
            i.f_order,
            i.gamma_generators.join(", "),
            i.gamma_order,
            if i.omega_trivial {
                "trivial"
            } else {
                "nontrivial"
            }
        )?;
        writeln!(f, "verdict: {}", self.verdict)?;
        if self.verdict == Verdict::NoQT && !self.theorem_backed {
            writeln!(f, "note: G is neither simple nor almost simple; the verdict rests on the recorded steps alone")?;
        }
        for s in &self.trace {
            let (step, yes, no) = match s.operation {
                Operation::Properness { .. } => ("0", "proper", "not proper"),
                Operation::EqualOrderTriples { .. } => {
                    ("1", "only (1,1,1)", "nontrivial triples remain")
                }
                Operation::TripleDivisibility { .. } => ("2", "eliminated", "survives"),
                Operation::QuotientObstruction { .. } => ("3a", "fires", "does not fire"),
                Operation::DegreeDivisibility { .. } => ("3b", "fires", "does not fire"),
            };
            writeln!(
                f,
                "step {step}: {} [{}]",
                s.name,
                if s.outcome { yes } else { no }
            )?;
            writeln!(f, "  because: {}", s.anchor)?;
            writeln!(f, "  {}", s.summary)?;
            for w in &s.witnesses {
                writeln!(f, "  witness: {w}")?;
            }
        }
        for t in &self.survivors {
            writeln!(
                f,
                "surviving triple: |K1| = {}, |K2| = {}, objects {}",
                t.k1_order,
                t.k2_order,
                t.objects.join(" ")
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorization::find_exact_factorizations;

    fn run(g: &FiniteGroup, nf: usize, ng: usize) -> ObstructionReport {
        let fact = find_exact_factorizations(g, true)
            .into_iter()
            .find(|x| x.f.order() == nf && x.gamma.order() == ng)
            .unwrap();
        run_pipeline(g, &fact.f, &fact.gamma, &ThreeCocycle::trivial(g), 0).unwrap()
    }

    #[test]
    fn s5_has_no_qt_in_either_orientation() {
        let g = FiniteGroup::symmetric(5);
        for (nf, ng) in [(24, 5), (5, 24)] {
            let r = run(&g, nf, ng);
            assert_eq!(r.verdict, Verdict::NoQT);
            assert_eq!(r.trace.len(), 4);
            assert!(r.trace.iter().all(|s| s.outcome));
            assert!(r.theorem_backed);
        }
    }

    #[test]
    fn a5_has_no_qt() {
        let g = FiniteGroup::alternating(5);
        let r = run(&g, 12, 5);
        assert_eq!(r.verdict, Verdict::NoQT);
        assert!(r
            .trace
            .last()
            .unwrap()
            .witnesses
            .iter()
            .any(|w| w.contains("degree 5")));
    }

    #[test]
    fn s3_with_f_of_order_two_is_inconclusive() {
        let g = FiniteGroup::symmetric(3);
        let r = run(&g, 2, 3);
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert_eq!(r.survivors.len(), 3);
    }

    /// `k^{S₃}` is not quasitriangular, and the pipeline proves it: the rotation class has size 2, which does not divide 3.
    #[test]
    fn s3_with_f_of_order_three_is_obstructed() {
        let g = FiniteGroup::symmetric(3);
        assert_eq!(run(&g, 3, 2).verdict, Verdict::NoQT);
    }

    #[test]
    fn s4_klein_triples_survive_for_f_of_order_six() {
        let g = FiniteGroup::symmetric(4);
        let r = run(&g, 6, 4);
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert!(r
            .survivors
            .iter()
            .any(|t| t.k1_order == 4 && t.k2_order == 4));
    }

    #[test]
    fn non_proper_is_out_of_scope() {
        let g = FiniteGroup::symmetric(3);
        let r = run_pipeline(&g, &g.whole(), &g.trivial(), &ThreeCocycle::trivial(&g), 0).unwrap();
        assert_eq!(r.verdict, Verdict::OutOfScope);
        assert_eq!(r.trace.len(), 1);
    }

    #[test]
    fn invalid_factorization_is_an_error() {
        let g = FiniteGroup::symmetric(3);
        let c2 = g.generate(&[g
            .index_of(&crate::Permutation::parse_cycles(3, "(1 2)").unwrap())
            .unwrap()]);
        assert!(run_pipeline(&g, &c2, &c2, &ThreeCocycle::trivial(&g), 0).is_err());
    }

    #[test]
    fn quotient_step_fails_for_sign_quotient() {
        let g = FiniteGroup::symmetric(5);
        assert!(!check_quotient_obstruction(&g, 2).outcome);
        assert!(check_quotient_obstruction(&g, 24).outcome);
    }

    #[test]
    fn steps_rerun_to_the_same_record() {
        let g = FiniteGroup::symmetric(4);
        let r = run(&g, 6, 4);
        let w = ThreeCocycle::trivial(&g);
        let ctx = GroupContext::new(&g, &w, r.instance.seed).unwrap();
        for s in &r.trace {
            assert_eq!(&ctx.rerun(&s.operation).unwrap(), s);
        }
    }
}
