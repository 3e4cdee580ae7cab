//! Batch front end: classification runs, layering reports, skeleton
//! listings, generic sampling, deformation verification, and the acceptance
//! selftest.  Every sampling verb takes `--trials`, `--seed` and `-p`; runs
//! with identical options produce byte-identical output.

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use repvar::algebra::TruncatedAlgebra;
use repvar::components::{
    classify_local_checked, generic_socle_layering, lemma_2_7_check, minimal_radsoc_candidates,
    schur_oracle, schur_root,
};
use repvar::deform::{lemma_5_2_family, step1_family, DeformationFamily};
use repvar::fp::{FieldSpec, DEFAULT_PRIME};
use repvar::layers::{enumerate_realizable, DimVector, SemisimpleSequence};
use repvar::repmod::{CheckOutcome, ModulePoint};
use repvar::selftest::{run_all, SelftestConfig};
use repvar::skeleta::{enumerate_skeleta, presentation_template, sample_module};
use repvar::{Error, Result};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "repvar",
    version,
    about = "Irreducible components of representation varieties of truncated path algebras"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct AlgebraOpt {
    /// Local algebra: number of loops R and truncation index L.
    #[arg(long, num_args = 2, value_names = ["R", "L"])]
    local: Option<Vec<usize>>,
    /// Path to an algebra JSON file.
    #[arg(long, value_name = "FILE")]
    algebra: Option<PathBuf>,
}

impl AlgebraOpt {
    fn resolve(&self) -> Result<TruncatedAlgebra> {
        match (&self.local, &self.algebra) {
            (Some(rl), None) => TruncatedAlgebra::local(rl[0], rl[1]),
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path)?;
                TruncatedAlgebra::from_json(&serde_json::from_str(&text)?)
            }
            (None, None) => Err(Error::Input(
                "an algebra is required: pass --local R L or --algebra FILE".into(),
            )),
            (Some(_), Some(_)) => Err(Error::Input(
                "--local and --algebra are mutually exclusive".into(),
            )),
        }
    }
}

#[derive(Args)]
struct SamplingOpt {
    /// Number of sampling trials.
    #[arg(long, default_value_t = 25)]
    trials: usize,
    /// Master seed; all randomness derives from it.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Prime modulus of the working field.
    #[arg(short = 'p', long = "prime", default_value_t = DEFAULT_PRIME)]
    prime: u64,
}

impl SamplingOpt {
    fn field(&self) -> Result<FieldSpec> {
        FieldSpec::new(self.prime)
    }

    fn header(&self) -> String {
        format!(
            "# p={} trials={} seed={}",
            self.prime, self.trials, self.seed
        )
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyKind {
    /// Push one basis element of the chosen layer one layer down.
    SimpleMove,
    /// Extend the deepest wide layer into a longer uniserial tail.
    TailExtension,
}

#[derive(Subcommand)]
enum Cmd {
    /// List the irreducible components of a local algebra, with sampling
    /// cross-checks (exit 1 when a cross-check disagrees).
    Components {
        /// Number of loops R and truncation index L.
        #[arg(long, num_args = 2, value_names = ["R", "L"], required = true)]
        local: Vec<usize>,
        /// Total dimension.
        #[arg(short = 'd', long = "dim")]
        dim: usize,
        #[command(flatten)]
        sampling: SamplingOpt,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate the realizable semisimple sequences for a dimension vector.
    Sequences {
        #[command(flatten)]
        algebra: AlgebraOpt,
        /// Dimension vector, e.g. "10" or "2,2,4,1".
        #[arg(short = 'd', long = "dim")]
        dim: String,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate the skeleta of a semisimple sequence as forests.
    Skeleta {
        #[command(flatten)]
        algebra: AlgebraOpt,
        /// Sequence: inline JSON "[[..],..]", a JSON file path, or bare
        /// layer dimensions "1,3,6" for local algebras.
        #[arg(long)]
        layers: String,
        #[arg(long)]
        json: bool,
    },
    /// Sample one generic module of a stratum and print it as JSON.
    Sample {
        #[command(flatten)]
        algebra: AlgebraOpt,
        #[arg(long)]
        layers: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short = 'p', long = "prime", default_value_t = DEFAULT_PRIME)]
        prime: u64,
        /// Print only the module JSON (no summary header).
        #[arg(long)]
        json: bool,
    },
    /// Report the layerings and endomorphism structure of a module file.
    Layering {
        /// Module JSON file.
        #[arg(long, value_name = "FILE")]
        module: PathBuf,
        #[arg(long, default_value_t = 25)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Sampled generic socle layering of a stratum.
    SocleGeneric {
        #[command(flatten)]
        algebra: AlgebraOpt,
        #[arg(long)]
        layers: String,
        #[command(flatten)]
        sampling: SamplingOpt,
        #[arg(long)]
        json: bool,
    },
    /// Minimal (radical, generic socle) candidate pairs for a dimension
    /// vector; each closes up to an irreducible component.
    MinimalPairs {
        #[command(flatten)]
        algebra: AlgebraOpt,
        #[arg(short = 'd', long = "dim")]
        dim: String,
        #[command(flatten)]
        sampling: SamplingOpt,
        #[arg(long)]
        json: bool,
    },
    /// Schur-root test for the generalized Kronecker quiver.
    Schur {
        /// Number of arrows.
        #[arg(short = 'r')]
        r: usize,
        #[arg(short = 'a')]
        a: usize,
        #[arg(short = 'b')]
        b: usize,
        /// Cross-validate against the endomorphism-dimension oracle
        /// (exit 1 on disagreement).
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        sampling: SamplingOpt,
    },
    /// Build a deformation family and verify its target layering at
    /// sampled parameters (exit 1 when verification fails).
    Deform {
        /// Module JSON file for the base point; alternatively sample one
        /// via --local/--algebra plus --layers.
        #[arg(long, value_name = "FILE")]
        module: Option<PathBuf>,
        #[command(flatten)]
        algebra: AlgebraOpt,
        #[arg(long)]
        layers: Option<String>,
        #[arg(long, value_enum)]
        kind: FamilyKind,
        /// The layer the construction acts on (the layer a simple leaves for
        /// simple-move, the wide layer for tail-extension).
        #[arg(long)]
        layer: usize,
        /// Number of nonzero parameters to verify at.
        #[arg(long, default_value_t = 20)]
        tsamples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short = 'p', long = "prime", default_value_t = DEFAULT_PRIME)]
        prime: u64,
    },
    /// Verify the defining relations of a module file (exit 1 on failure).
    Check {
        #[arg(long, value_name = "FILE")]
        module: PathBuf,
    },
    /// Run the full acceptance suite (exit 1 when a criterion fails).
    Selftest {
        #[command(flatten)]
        sampling: SamplingOpt,
    },
}

fn parse_dim_vector(text: &str, vertices: usize) -> Result<DimVector> {
    let entries: Vec<usize> = text
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::Input(format!("bad dimension entry '{t}'")))
        })
        .collect::<Result<_>>()?;
    if entries.len() != vertices {
        return Err(Error::Input(format!(
            "dimension vector has {} entries for {} vertices",
            entries.len(),
            vertices
        )));
    }
    Ok(DimVector(entries))
}

fn parse_layers(text: &str, alg: &TruncatedAlgebra) -> Result<SemisimpleSequence> {
    let seq = if text.trim_start().starts_with('[') {
        SemisimpleSequence::from_json(serde_json::from_str(text)?)?
    } else if std::path::Path::new(text).exists() {
        let body = std::fs::read_to_string(text)?;
        SemisimpleSequence::from_json(serde_json::from_str(&body)?)?
    } else {
        if alg.vertex_count() != 1 {
            return Err(Error::Input(
                "bare layer dimensions are only valid for one-vertex algebras; pass JSON".into(),
            ));
        }
        let dims: Vec<usize> = text
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Input(format!("bad layer entry '{t}'")))
            })
            .collect::<Result<_>>()?;
        SemisimpleSequence::local(&dims)
    };
    if seq.layers.len() != alg.truncation + 1 || seq.vertex_count() != alg.vertex_count() {
        return Err(Error::Input(format!(
            "sequence shape ({} layers, {} vertices) does not match the algebra ({} layers, {} vertices)",
            seq.layers.len(),
            seq.vertex_count(),
            alg.truncation + 1,
            alg.vertex_count()
        )));
    }
    Ok(seq)
}

fn read_module(path: &PathBuf) -> Result<ModulePoint> {
    let text = std::fs::read_to_string(path)?;
    ModulePoint::from_json(&serde_json::from_str(&text)?)
}

fn run_components(local: Vec<usize>, dim: usize, sampling: SamplingOpt, json: bool) -> Result<u8> {
    let (r, ell) = (local[0], local[1]);
    let field = sampling.field()?;
    let (components, agree) =
        classify_local_checked(r, ell, dim, sampling.trials, sampling.seed, field)?;
    if json {
        let payload = serde_json::json!({
            "p": sampling.prime,
            "trials": sampling.trials,
            "seed": sampling.seed,
            "r": r,
            "truncation": ell,
            "dim": dim,
            "components": components,
            "cross_checks_ok": agree,
        });
        println!("{}", serde_json::to_string_pretty(&payload)?);
    } else {
        println!("{}", sampling.header());
        println!("# local algebra: r={r} loops, truncation L={ell}, dimension d={dim}");
        println!(
            "{:<14} | {:<14} | thm-A | minimal-pair | schur-hint | trials",
            "S", "generic S*"
        );
        for c in &components {
            let hint = c
                .schur_hint
                .map(|l| format!("l={l}"))
                .unwrap_or_else(|| "-".into());
            println!(
                "{:<14} | {:<14} | {:<5} | {:<12} | {:<10} | {}",
                c.layers.display(),
                c.generic_socle.display(),
                if c.theorem_a { "yes" } else { "no" },
                if c.minimal_pair { "yes" } else { "no" },
                hint,
                c.trials_used
            );
            if let Some(note) = &c.note {
                println!("  note: {note}");
            }
        }
        println!(
            "# {} component(s); cross-checks {}",
            components.len(),
            if agree { "agree" } else { "DISAGREE" }
        );
    }
    Ok(if agree { 0 } else { 1 })
}

fn run_sequences(algebra: AlgebraOpt, dim: String, json: bool) -> Result<u8> {
    let alg = algebra.resolve()?;
    let d = parse_dim_vector(&dim, alg.vertex_count())?;
    let seqs = enumerate_realizable(&alg, &d)?;
    if json {
        let rows: Vec<Vec<Vec<usize>>> = seqs.iter().map(|s| s.to_json()).collect();
        println!("{}", serde_json::to_string_pretty(&rows)?);
    } else {
        println!(
            "# {} realizable sequence(s) with dimension vector {}",
            seqs.len(),
            d
        );
        for s in &seqs {
            println!("{}", s.display());
        }
    }
    Ok(0)
}

fn run_skeleta(algebra: AlgebraOpt, layers: String, json: bool) -> Result<u8> {
    let alg = algebra.resolve()?;
    let seq = parse_layers(&layers, &alg)?;
    let skeleta = enumerate_skeleta(&alg, &seq)?;
    if json {
        let rows: Vec<serde_json::Value> = skeleta
            .iter()
            .map(|sk| {
                let tpl = presentation_template(&alg, sk);
                serde_json::json!({
                    "skeleton": sk.to_json(&alg),
                    "parameters": tpl.param_count(),
                })
            })
            .collect();
        println!(
            "{}",
            serde_json::to_string_pretty(&serde_json::json!({
                "sequence": seq.to_json(),
                "skeleta": rows,
            }))?
        );
    } else {
        println!("# {} skeleton(a) for {}", skeleta.len(), seq.display());
        for (i, sk) in skeleta.iter().enumerate() {
            let tpl = presentation_template(&alg, sk);
            println!("skeleton {} (parameters N={}):", i + 1, tpl.param_count());
            print!("{}", sk.to_text(&alg));
            for (c, elig) in tpl.criticals.iter().zip(&tpl.eligible) {
                let members: Vec<String> = elig
                    .iter()
                    .map(|&k| {
                        let p = &tpl.skeleton.paths[k];
                        format!("{}*z{}", p.word.display(&alg.quiver), p.root + 1)
                    })
                    .collect();
                println!(
                    "  critical {}*z{} -> [{}]",
                    c.word.display(&alg.quiver),
                    c.root + 1,
                    members.join(", ")
                );
            }
        }
    }
    Ok(0)
}

fn run_sample(
    algebra: AlgebraOpt,
    layers: String,
    seed: u64,
    prime: u64,
    json: bool,
) -> Result<u8> {
    let alg = algebra.resolve()?;
    let seq = parse_layers(&layers, &alg)?;
    let field = FieldSpec::new(prime)?;
    let m = sample_module(&alg, &seq, field, seed)?;
    if !json {
        println!("# p={prime} seed={seed}");
        println!("# radical layering: {}", m.radical_layering().display());
        println!("# socle layering:   {}", m.socle_layering().display());
    }
    println!("{}", serde_json::to_string_pretty(&m.to_json())?);
    Ok(0)
}

fn run_layering(module: PathBuf, trials: usize, seed: u64, json: bool) -> Result<u8> {
    let m = read_module(&module)?;
    if let CheckOutcome::Violations(ws) = m.check_point() {
        let shown: Vec<String> = ws.iter().map(|w| w.display(&m.alg.quiver)).collect();
        return Err(Error::Input(format!(
            "module violates its relations: [{}]",
            shown.join(", ")
        )));
    }
    let (rad, soc) = m.radsoc_pair();
    let loewy = m.loewy_full_support();
    let lemma = lemma_2_7_check(&m);
    let end = m.end_structure()?;
    let indec = m.is_indecomposable(trials, seed)?;
    if json {
        let payload = serde_json::json!({
            "dims": m.dims.0,
            "radical_layering": rad.to_json(),
            "socle_layering": soc.to_json(),
            "full_loewy_support": loewy,
            "socle_differs_from_reversed_radical": lemma.layerings_differ,
            "simple_summand_layer": lemma.witness,
            "end_dim": end.end_dim,
            "end_top_dim": end.top_dim,
            "indecomposable": indec,
            "indecomposability_trials": trials,
        });
        println!("{}", serde_json::to_string_pretty(&payload)?);
    } else {
        println!("radical layering: {}", rad.display());
        println!("socle layering:   {}", soc.display());
        println!("full Loewy support: {loewy}");
        match lemma.witness {
            Some(rho) => println!("simple summand in a two-layer subquotient at layer {rho}"),
            None => println!("no two-layer subquotient has a simple summand"),
        }
        println!(
            "End(M): dimension {}, semisimple quotient dimension {}",
            end.end_dim, end.top_dim
        );
        println!(
            "indecomposable: {indec} (deterministic verdict, cross-checked by {trials} sampled \
             endomorphisms)"
        );
    }
    Ok(0)
}

fn run_socle_generic(
    algebra: AlgebraOpt,
    layers: String,
    sampling: SamplingOpt,
    json: bool,
) -> Result<u8> {
    let alg = algebra.resolve()?;
    let seq = parse_layers(&layers, &alg)?;
    let field = sampling.field()?;
    let soc = generic_socle_layering(&alg, &seq, sampling.trials, sampling.seed, field)?;
    if json {
        println!("{}", serde_json::to_string_pretty(&soc.to_json())?);
    } else {
        println!("{}", sampling.header());
        println!("{}", soc.display());
    }
    Ok(0)
}

fn run_minimal_pairs(
    algebra: AlgebraOpt,
    dim: String,
    sampling: SamplingOpt,
    json: bool,
) -> Result<u8> {
    let alg = algebra.resolve()?;
    let d = parse_dim_vector(&dim, alg.vertex_count())?;
    let field = sampling.field()?;
    let pairs = minimal_radsoc_candidates(&alg, &d, sampling.trials, sampling.seed, field)?;
    if json {
        println!("{}", serde_json::to_string_pretty(&pairs)?);
    } else {
        println!("{}", sampling.header());
        println!(
            "# {} minimal pair(s) for dimension vector {}",
            pairs.len(),
            d
        );
        println!("{:<30} | generic S*", "S");
        for p in &pairs {
            println!("{:<30} | {}", p.rad.display(), p.soc.display());
        }
    }
    Ok(0)
}

fn run_schur(r: usize, a: usize, b: usize, oracle: bool, sampling: SamplingOpt) -> Result<u8> {
    if r == 0 || (a, b) == (0, 0) {
        return Err(Error::Input("need r >= 1 and (a, b) != (0, 0)".into()));
    }
    let by_form = schur_root(r, a, b);
    println!(
        "({a},{b}) is {}a Schur root of the {r}-arrow Kronecker quiver",
        if by_form { "" } else { "not " }
    );
    if oracle {
        let field = sampling.field()?;
        let by_oracle = schur_oracle(r, a, b, sampling.trials, sampling.seed, field)?;
        if by_oracle == by_form {
            println!("# oracle agrees ({} trials)", sampling.trials);
        } else {
            println!("# oracle DISAGREES: closed form {by_form}, oracle {by_oracle}");
            return Ok(1);
        }
    }
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn run_deform(
    module: Option<PathBuf>,
    algebra: AlgebraOpt,
    layers: Option<String>,
    kind: FamilyKind,
    layer: usize,
    tsamples: usize,
    seed: u64,
    prime: u64,
) -> Result<u8> {
    let field = FieldSpec::new(prime)?;
    let base = match (&module, &layers) {
        (Some(path), None) => read_module(path)?,
        (None, Some(text)) => {
            let alg = algebra.resolve()?;
            let seq = parse_layers(text, &alg)?;
            sample_module(&alg, &seq, field, seed)?
        }
        _ => {
            return Err(Error::Input(
                "pass either --module FILE or an algebra with --layers".into(),
            ))
        }
    };
    let family: DeformationFamily = match kind {
        FamilyKind::SimpleMove => lemma_5_2_family(&base, layer)?,
        FamilyKind::TailExtension => step1_family(&base, layer)?,
    };
    println!("# p={prime} seed={seed} tsamples={tsamples}");
    println!(
        "base layering:   {}",
        family.base.radical_layering().display()
    );
    println!("target layering: {}", family.target.display());
    println!(
        "witness: {} at layer {}, arrow {} gains the parameter entry",
        family.witness.kind, family.witness.layer, family.witness.arrow_id
    );
    println!("  {}", family.witness.detail);
    let mut ok = family.evaluate(0) == family.base;
    println!("t=0: equals the base entrywise: {ok}");
    let (rad0, soc0) = family.base.radsoc_pair();
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
    println!("{:<12} | layering at t | descends", "t");
    for _ in 0..tsamples {
        let t = field.sample_nonzero(&mut rng);
        let point = family.evaluate(t);
        let layering = point.radical_layering();
        let (rad, soc) = point.radsoc_pair();
        let descends = rad.dominance_leq(&rad0)? && soc.dominance_leq(&soc0)?;
        let hit = layering == family.target && point.check_point().is_ok() && descends;
        ok &= hit;
        println!("{:<12} | {:<13} | {}", t, layering.display(), descends);
    }
    println!("# verification {}", if ok { "passed" } else { "FAILED" });
    Ok(if ok { 0 } else { 1 })
}

fn run_check(module: PathBuf) -> Result<u8> {
    let m = read_module(&module)?;
    match m.check_point() {
        CheckOutcome::Ok => {
            println!("ok: all length-{} words act as zero", m.alg.truncation + 1);
            Ok(0)
        }
        CheckOutcome::Violations(ws) => {
            println!("violations ({}):", ws.len());
            for w in ws {
                println!("  {}", w.display(&m.alg.quiver));
            }
            Ok(1)
        }
    }
}

fn run_selftest(sampling: SamplingOpt) -> Result<u8> {
    let cfg = SelftestConfig {
        field: sampling.field()?,
        trials: sampling.trials,
        seed: sampling.seed,
    };
    println!("{}", sampling.header());
    let results = run_all(&cfg);
    let mut all_ok = true;
    for c in &results {
        all_ok &= c.passed;
        println!(
            "criterion {:02} {} — {}: {}",
            c.id,
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.detail
        );
    }
    println!(
        "# {}/{} criteria passed",
        results.iter().filter(|c| c.passed).count(),
        results.len()
    );
    Ok(if all_ok { 0 } else { 1 })
}

fn dispatch(cli: Cli) -> Result<u8> {
    match cli.cmd {
        Cmd::Components {
            local,
            dim,
            sampling,
            json,
        } => run_components(local, dim, sampling, json),
        Cmd::Sequences { algebra, dim, json } => run_sequences(algebra, dim, json),
        Cmd::Skeleta {
            algebra,
            layers,
            json,
        } => run_skeleta(algebra, layers, json),
        Cmd::Sample {
            algebra,
            layers,
            seed,
            prime,
            json,
        } => run_sample(algebra, layers, seed, prime, json),
        Cmd::Layering {
            module,
            trials,
            seed,
            json,
        } => run_layering(module, trials, seed, json),
        Cmd::SocleGeneric {
            algebra,
            layers,
            sampling,
            json,
        } => run_socle_generic(algebra, layers, sampling, json),
        Cmd::MinimalPairs {
            algebra,
            dim,
            sampling,
            json,
        } => run_minimal_pairs(algebra, dim, sampling, json),
        Cmd::Schur {
            r,
            a,
            b,
            oracle,
            sampling,
        } => run_schur(r, a, b, oracle, sampling),
        Cmd::Deform {
            module,
            algebra,
            layers,
            kind,
            layer,
            tsamples,
            seed,
            prime,
        } => run_deform(module, algebra, layers, kind, layer, tsamples, seed, prime),
        Cmd::Check { module } => run_check(module),
        Cmd::Selftest { sampling } => run_selftest(sampling),
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Inconclusive { .. } => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
