use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use hopfact::factorization::{
    derive_matched_pair, find_exact_factorizations, validate_cocycles, verify_matched_pair,
};
use hopfact::formats::{
    cocycle_pair_from_files, parse_cocycle_file, parse_group_with_cap, parse_omega,
};
use hopfact::fusion::{enumerate_triples, triple_to_objects, TensorOracle, TripleRecord};
use hopfact::hopf::{build_bicrossed_product, verify_hopf_axioms_with, write_dump, AxiomOptions};
use hopfact::obstruction::run_pipeline;
use hopfact::perm::DEFAULT_ELEMENT_CAP;
use hopfact::rep::{crossed_product_irreps, double_irreps};
use hopfact::{
    CocyclePair, ExactFactorization, FiniteGroup, MatchedPair, Permutation, Subgroup, ThreeCocycle,
};

/// The tensor-closure cross-check decomposes `D(kG)` of dimension `|G|²`; beyond this order it is skipped.
const ORACLE_GROUP_ORDER_LIMIT: usize = 24;

#[derive(Parser)]
#[command(
    name = "hopfact",
    version,
    about = "Bicrossed-product Hopf algebras, Drinfeld doubles and quasitriangularity obstructions"
)]
struct Cli {
    /// Seed for every randomized step (decomposition, sampled checks).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest group order enumerated from a group file.
    #[arg(long, global = true, default_value_t = DEFAULT_ELEMENT_CAP)]
    cap: usize,
    /// Report destination; for `build`, the Hopf dump destination.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Args)]
struct SplitArgs {
    /// A generator of F in cycle notation; repeat for more. `()` gives the trivial subgroup.
    #[arg(long = "f", required = true)]
    f: Vec<String>,
    /// A generator of Γ in cycle notation; repeat for more.
    #[arg(long = "gamma", required = true)]
    gamma: Vec<String>,
}

#[derive(Args)]
struct CocycleArgs {
    /// σ cocycle file, lines `s x y e` meaning σ_s(x, y) = ζ^e (s in Γ, x and y in F); trivial if absent
    #[arg(long)]
    sigma: Option<PathBuf>,
    /// τ cocycle file, lines `x s t e` meaning τ_x(s, t) = ζ^e (x in F, s and t in Γ); trivial if absent
    #[arg(long)]
    tau: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// List exact factorizations G = FΓ.
    Factorize {
        group: PathBuf,
        /// Only factorizations with both factors proper.
        #[arg(long)]
        proper: bool,
    },
    /// Build k^Γ τ#σ kF, check the Hopf axioms and write its dump.
    Build {
        group: PathBuf,
        #[command(flatten)]
        split: SplitArgs,
        #[command(flatten)]
        cocycles: CocycleArgs,
    },
    /// Irreducible representations of k^Γ τ#σ kF by orbits and stabilizers.
    Irreps {
        group: PathBuf,
        #[command(flatten)]
        split: SplitArgs,
        #[command(flatten)]
        cocycles: CocycleArgs,
    },
    /// Simple objects (g, π) of Rep D^ω(G).
    Double {
        group: PathBuf,
        /// 3-cocycle file over the canonical element order; ω ≡ 1 if absent
        #[arg(long)]
        omega: Option<PathBuf>,
    },
    /// Triples (K1, K2, B) and the fusion subcategories they give.
    Fusion {
        group: PathBuf,
        /// 3-cocycle file over the canonical element order; ω ≡ 1 if absent
        #[arg(long)]
        omega: Option<PathBuf>,
        /// Skip the tensor-closure cross-check.
        #[arg(long)]
        no_oracle: bool,
    },
    /// Run the quasitriangularity obstruction pipeline on G = FΓ.
    Obstruct {
        group: PathBuf,
        #[command(flatten)]
        split: SplitArgs,
        /// 3-cocycle file over the canonical element order; ω ≡ 1 if absent
        #[arg(long)]
        omega: Option<PathBuf>,
    },
}

/// Files read during a run, with their digests for the output header.
#[derive(Default, Serialize)]
struct Inputs {
    files: Vec<InputDigest>,
}

#[derive(Serialize)]
struct InputDigest {
    path: String,
    sha256: String,
}

impl Inputs {
    fn read(&mut self, path: &Path) -> Result<String> {
        let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
        self.files.push(InputDigest {
            path: path.display().to_string(),
            sha256: format!("{:x}", Sha256::digest(&bytes)),
        });
        String::from_utf8(bytes).with_context(|| format!("{} is not UTF-8", path.display()))
    }

    fn group(&mut self, path: &Path, cap: usize) -> Result<FiniteGroup> {
        let text = self.read(path)?;
        parse_group_with_cap(&text, cap).with_context(|| format!("in {}", path.display()))
    }

    fn omega(&mut self, g: &FiniteGroup, path: Option<&PathBuf>) -> Result<ThreeCocycle> {
        match path {
            None => Ok(ThreeCocycle::trivial(g)),
            Some(p) => {
                let text = self.read(p)?;
                parse_omega(g, &text).with_context(|| format!("in {}", p.display()))
            }
        }
    }

    fn cocycles(&mut self, mp: &MatchedPair, args: &CocycleArgs) -> Result<CocyclePair> {
        let mut load = |p: &Option<PathBuf>| -> Result<_> {
            p.as_ref()
                .map(|p| {
                    self.read(p).and_then(|t| {
                        parse_cocycle_file(&t).with_context(|| format!("in {}", p.display()))
                    })
                })
                .transpose()
        };
        let sigma = load(&args.sigma)?;
        let tau = load(&args.tau)?;
        Ok(cocycle_pair_from_files(mp, sigma.as_ref(), tau.as_ref())?)
    }
}

/// A command's result in both renderings; `ok` is false on a validation failure.
struct Report {
    text: String,
    machine: Value,
    ok: bool,
}

fn subgroup(g: &FiniteGroup, gens: &[String], what: &str) -> Result<Subgroup> {
    let idx = gens
        .iter()
        .map(|c| {
            let p = Permutation::parse_cycles(g.degree(), c)
                .with_context(|| format!("{what} generator {c}"))?;
            g.index_of(&p)
                .ok_or_else(|| anyhow!("{what} generator {c} is not in {}", g.name()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(g.generate(&idx))
}

fn generators(g: &FiniteGroup, s: &Subgroup) -> Vec<String> {
    s.generators()
        .iter()
        .map(|&x| g.element(x).to_string())
        .collect()
}

fn factorization(g: &FiniteGroup, split: &SplitArgs) -> Result<(ExactFactorization, MatchedPair)> {
    let f = subgroup(g, &split.f, "F")?;
    let gamma = subgroup(g, &split.gamma, "Γ")?;
    let fact = ExactFactorization::new(g, f, gamma)?;
    let mp = derive_matched_pair(g, &fact)?;
    let rep = verify_matched_pair(&mp);
    if !rep.passed() {
        bail!("matched pair fails {:?}", rep.failed_axioms());
    }
    Ok((fact, mp))
}

fn cmd_factorize(g: &FiniteGroup, proper: bool) -> Report {
    let facts = find_exact_factorizations(g, proper);
    let mut text = format!(
        "{} exact factorizations of {} (order {}){}\n",
        facts.len(),
        g.name(),
        g.order(),
        if proper { ", proper only" } else { "" }
    );
    let mut rows = Vec::new();
    for f in &facts {
        let (fg, gg) = (generators(g, &f.f), generators(g, &f.gamma));
        text.push_str(&format!(
            "F = <{}> (order {})  Γ = <{}> (order {})\n",
            fg.join(", "),
            f.f.order(),
            gg.join(", "),
            f.gamma.order()
        ));
        rows.push(json!({"f_order": f.f.order(), "f_generators": fg, "gamma_order": f.gamma.order(), "gamma_generators": gg, "proper": f.proper}));
    }
    Report {
        text,
        machine: json!({"group": g.name(), "order": g.order(), "factorizations": rows}),
        ok: true,
    }
}

fn cmd_build(
    g: &FiniteGroup,
    split: &SplitArgs,
    cocycles: &CocycleArgs,
    inputs: &mut Inputs,
    seed: u64,
) -> Result<(Report, String)> {
    let (fact, mp) = factorization(g, split)?;
    let cp = inputs.cocycles(&mp, cocycles)?;
    let cv = validate_cocycles(&mp, &cp);
    if !cv.passed() {
        bail!("cocycle validation failed: {:?}\n{cv}", cv.failed_axioms());
    }
    let name = format!(
        "k^Γ#kF({}; |F|={}, |Γ|={})",
        g.name(),
        fact.f.order(),
        fact.gamma.order()
    );
    let h = build_bicrossed_product(&name, &mp, &cp)?;
    let rep = verify_hopf_axioms_with(
        &h,
        AxiomOptions {
            seed,
            ..AxiomOptions::default()
        },
    );
    let text = format!(
        "{} dim {} cyclotomic {}\naxioms: {}\n{rep}",
        h.name,
        h.dim(),
        h.order,
        if rep.passed() { "pass" } else { "FAIL" }
    );
    let machine = json!({"name": h.name, "dim": h.dim(), "cyclotomic": h.order, "axioms_passed": rep.passed(), "axioms": rep});
    Ok((
        Report {
            text,
            machine,
            ok: rep.passed(),
        },
        write_dump(&h),
    ))
}

fn cmd_irreps(
    g: &FiniteGroup,
    split: &SplitArgs,
    cocycles: &CocycleArgs,
    inputs: &mut Inputs,
    seed: u64,
) -> Result<Report> {
    let (fact, mp) = factorization(g, split)?;
    let cp = inputs.cocycles(&mp, cocycles)?;
    let cv = validate_cocycles(&mp, &cp);
    if !cv.passed() {
        bail!("cocycle validation failed: {:?}", cv.failed_axioms());
    }
    let cat = crossed_product_irreps(&mp, &cp, seed)?;
    let nf = fact.f.order();
    let divides = cat.degrees().iter().all(|d| nf % d == 0);
    let mut text = format!(
        "{} irreducibles, Σ deg² = {}, |F| = {nf}\n",
        cat.entries.len(),
        cat.sum_of_squares()
    );
    for e in &cat.entries {
        text.push_str(&format!("{}  degree {}\n", e.label, e.degree));
    }
    text.push_str(&format!(
        "every degree divides |F|: {}\n",
        if divides { "yes" } else { "NO" }
    ));
    let machine = json!({"f_order": nf, "gamma_order": fact.gamma.order(), "catalog": cat, "degrees_divide_f": divides});
    Ok(Report {
        text,
        machine,
        ok: divides,
    })
}

fn cmd_double(g: &FiniteGroup, omega: &ThreeCocycle, seed: u64) -> Result<Report> {
    let cat = double_irreps(g, omega, seed)?;
    let records = cat.records(g);
    let mut text = format!(
        "{} simple objects of Rep D^ω({}), Σ dim² = {}\n",
        records.len(),
        g.name(),
        cat.sum_of_squares()
    );
    for r in &records {
        text.push_str(&format!(
            "{}  |C_G(g)| = {}  deg π = {}  dim = {}\n",
            r.label, r.centralizer_order, r.pi_degree, r.degree
        ));
    }
    Ok(Report {
        text,
        machine: json!({"group": g.name(), "omega_trivial": omega.is_trivial(), "objects": records}),
        ok: true,
    })
}

fn cmd_fusion(g: &FiniteGroup, omega: &ThreeCocycle, seed: u64, oracle: bool) -> Result<Report> {
    let triples = enumerate_triples(g, omega)?;
    let cat = double_irreps(g, omega, seed)?;
    let mut subs = Vec::new();
    let mut records = Vec::new();
    let mut text = format!("{} triples for {}\n", triples.len(), g.name());
    for (i, t) in triples.iter().enumerate() {
        let sub = triple_to_objects(&cat, t)?;
        let r = TripleRecord::new(g, t, Some((&cat, &sub)));
        text.push_str(&format!("triple {i}: dimension {}\n", r.dimension));
        text.push_str(&format!(
            "  K1 = <{}> (order {})\n",
            r.k1_generators.join(", "),
            r.k1_order
        ));
        text.push_str(&format!(
            "  K2 = <{}> (order {})\n",
            r.k2_generators.join(", "),
            r.k2_order
        ));
        text.push_str(&format!(
            "  B of order {}, exponents of ζ_{} over K1 × K2: {:?}\n",
            r.b_order, r.b_modulus, r.b_table
        ));
        text.push_str(&format!("  objects: {}\n", r.objects.join(" ")));
        subs.push(sub);
        records.push(r);
    }
    let (ok, check) = if !omega.is_trivial() {
        (
            true,
            "not run: the tensor-closure oracle covers only trivial ω".to_string(),
        )
    } else if !oracle || g.order() > ORACLE_GROUP_ORDER_LIMIT {
        (
            true,
            format!("not run (requested off, or |G| > {ORACLE_GROUP_ORDER_LIMIT})"),
        )
    } else {
        let closures = TensorOracle::new(g, cat.clone(), seed)?.all_subcategories();
        subs.sort();
        let agree = subs == closures;
        (
            agree,
            format!(
                "{} tensor-closed subcategories, {}",
                closures.len(),
                if agree {
                    "identical to the triples"
                } else {
                    "MISMATCH with the triples"
                }
            ),
        )
    };
    text.push_str(&format!("oracle: {check}\n"));
    Ok(Report {
        text,
        machine: json!({"group": g.name(), "omega_trivial": omega.is_trivial(), "triples": records, "oracle": check}),
        ok,
    })
}

fn cmd_obstruct(
    g: &FiniteGroup,
    split: &SplitArgs,
    omega: &ThreeCocycle,
    seed: u64,
) -> Result<Report> {
    let f = subgroup(g, &split.f, "F")?;
    let gamma = subgroup(g, &split.gamma, "Γ")?;
    let report = run_pipeline(g, &f, &gamma, omega, seed)?;
    Ok(Report {
        text: report.to_string(),
        machine: serde_json::to_value(&report)?,
        ok: true,
    })
}

fn header_text(seed: u64, inputs: &Inputs) -> String {
    let mut h = format!("# hopfact {}\n# seed {seed}\n", env!("CARGO_PKG_VERSION"));
    for f in &inputs.files {
        h.push_str(&format!("# input {} sha256 {}\n", f.path, f.sha256));
    }
    h
}

fn render(cli: &Cli, command: &str, inputs: &Inputs, report: &Report) -> Result<String> {
    Ok(match cli.format {
        Format::Text => format!("{}{}", header_text(cli.seed, inputs), report.text),
        Format::Machine => {
            let doc = json!({
                "tool": "hopfact",
                "version": env!("CARGO_PKG_VERSION"),
                "seed": cli.seed,
                "inputs": inputs.files,
                "command": command,
                "ok": report.ok,
                "result": report.machine,
            });
            serde_json::to_string_pretty(&doc)? + "\n"
        }
    })
}

fn run(cli: &Cli) -> Result<bool> {
    let mut inputs = Inputs::default();
    let (name, report, dump) = match &cli.command {
        Command::Factorize { group, proper } => {
            let g = inputs.group(group, cli.cap)?;
            ("factorize", cmd_factorize(&g, *proper), None)
        }
        Command::Build {
            group,
            split,
            cocycles,
        } => {
            let g = inputs.group(group, cli.cap)?;
            let (r, d) = cmd_build(&g, split, cocycles, &mut inputs, cli.seed)?;
            ("build", r, Some(d))
        }
        Command::Irreps {
            group,
            split,
            cocycles,
        } => {
            let g = inputs.group(group, cli.cap)?;
            (
                "irreps",
                cmd_irreps(&g, split, cocycles, &mut inputs, cli.seed)?,
                None,
            )
        }
        Command::Double { group, omega } => {
            let g = inputs.group(group, cli.cap)?;
            let w = inputs.omega(&g, omega.as_ref())?;
            ("double", cmd_double(&g, &w, cli.seed)?, None)
        }
        Command::Fusion {
            group,
            omega,
            no_oracle,
        } => {
            let g = inputs.group(group, cli.cap)?;
            let w = inputs.omega(&g, omega.as_ref())?;
            ("fusion", cmd_fusion(&g, &w, cli.seed, !no_oracle)?, None)
        }
        Command::Obstruct {
            group,
            split,
            omega,
        } => {
            let g = inputs.group(group, cli.cap)?;
            let w = inputs.omega(&g, omega.as_ref())?;
            ("obstruct", cmd_obstruct(&g, split, &w, cli.seed)?, None)
        }
    };
    let rendered = render(cli, name, &inputs, &report)?;
    match (dump, &cli.out) {
        // `build` sends the dump to --out (or stdout) and the report to stdout (or stderr).
        (Some(d), Some(path)) => {
            fs::write(path, d).with_context(|| format!("writing {}", path.display()))?;
            print!("{rendered}");
        }
        (Some(d), None) => {
            eprint!("{rendered}");
            print!("{d}");
        }
        (None, Some(path)) => {
            fs::write(path, rendered).with_context(|| format!("writing {}", path.display()))?
        }
        (None, None) => print!("{rendered}"),
    }
    std::io::stdout().flush()?;
    Ok(report.ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
