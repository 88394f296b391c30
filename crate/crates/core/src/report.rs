use serde::Serialize;

/// One failed identity with the basis or element indices that witness it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: &'static str,
    pub witness: Vec<usize>,
}

/// Outcome of an exhaustive or sampled identity check.
#[derive(Clone, Debug, Default, Serialize)]
pub struct AxiomReport {
    pub checked: Vec<&'static str>,
    pub violations: Vec<Violation>,
    /// `(seed, samples per axiom)` when the check was sampled rather than exhaustive.
    pub sampling: Option<(u64, usize)>,
}

/// Witness lists are truncated per axiom so tampered inputs do not flood reports.
const WITNESSES_PER_AXIOM: usize = 8;

impl AxiomReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn check(&mut self, axiom: &'static str) {
        if !self.checked.contains(&axiom) {
            self.checked.push(axiom);
        }
    }

    pub fn fail(&mut self, axiom: &'static str, witness: Vec<usize>) {
        self.check(axiom);
        if self.violations.iter().filter(|v| v.axiom == axiom).count() < WITNESSES_PER_AXIOM {
            self.violations.push(Violation { axiom, witness });
        }
    }

    pub fn failed_axioms(&self) -> Vec<&'static str> {
        let mut v: Vec<&'static str> = self.violations.iter().map(|v| v.axiom).collect();
        v.dedup();
        v
    }

    pub fn merge(&mut self, other: AxiomReport) {
        for a in other.checked {
            self.check(a);
        }
        for v in other.violations {
            self.fail(v.axiom, v.witness);
        }
        if self.sampling.is_none() {
            self.sampling = other.sampling;
        }
    }
}

impl std::fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for a in &self.checked {
            let bad: Vec<&Violation> = self.violations.iter().filter(|v| v.axiom == *a).collect();
            if bad.is_empty() {
                writeln!(f, "  {a}: pass")?;
            } else {
                writeln!(f, "  {a}: FAIL")?;
                for v in bad {
                    writeln!(f, "    witness {:?}", v.witness)?;
                }
            }
        }
        if let Some((seed, n)) = self.sampling {
            writeln!(f, "  sampled: {n} index tuples per axiom, seed {seed}")?;
        }
        Ok(())
    }
}
