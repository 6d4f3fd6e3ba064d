//! `malcev`: batch front end over the malcev-core checkers and pipelines.
//!
//! Reports go to standard output (or `--output`) as JSON, a one-line summary
//! goes to standard error. Exit status is 0 whenever the checks ran, whatever
//! their verdict, and 2 on unreadable or inconsistent input.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use malcev_core::algebra::Algebra;
use malcev_core::bialgebra::{
    coboundary_delta, double_malcev_report, drinfeld_double, vershinin_report,
};
use malcev_core::io::{algebra_to_json, read_algebra, read_comultiplication, read_tensor2};
use malcev_core::malcev7::{pipeline_semisimple_r, pipeline_triangular_r, tensor2_json};
use malcev_core::report::to_value;
use malcev_core::tensor::derivation_action2;
use malcev_core::yang_baxter::{
    cybe_residual, gamma_matrices, lemma1_eq2_residual, lemma1_nd_residual, um_residual_from,
    SlotVariant,
};
use malcev_core::{Error, Rational, Tensor2};

#[derive(Parser)]
#[command(
    name = "malcev",
    version,
    about = "Exact checks for Malcev algebras, Yang-Baxter tensors and Drinfeld doubles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    config: RunConfig,
}

#[derive(Args)]
struct RunConfig {
    /// Seed for the sampled identity checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Number of random triples for the sampled identity checks.
    #[arg(long, global = true, default_value_t = 200)]
    samples: usize,

    /// Which reading of the first term of the unimodular residual to use.
    #[arg(long, global = true, value_enum, default_value_t = SlotVariantArg::Statement)]
    slot_variant: SlotVariantArg,

    /// Write the JSON report here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SlotVariantArg {
    Statement,
    Proof,
}

impl From<SlotVariantArg> for SlotVariant {
    fn from(v: SlotVariantArg) -> Self {
        match v {
            SlotVariantArg::Statement => SlotVariant::Statement,
            SlotVariantArg::Proof => SlotVariant::Proof,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Triangular,
    Semisimple,
}

#[derive(Subcommand)]
enum Command {
    /// Anticommutativity, Lie and Malcev identities of an algebra.
    Identities { algebra: PathBuf },
    /// Classical Yang-Baxter residual of a tensor, with its matrix forms.
    Cybe { algebra: PathBuf, tensor: PathBuf },
    /// Builds the Drinfeld double of a comultiplication and checks it.
    Double {
        algebra: PathBuf,
        /// Tensor `r` whose coboundary `±[r, ·]` is the comultiplication.
        #[arg(requires = "coboundary", conflicts_with = "delta")]
        tensor: Option<PathBuf>,
        /// Sign of the coboundary: +1 or -1.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_sign, requires = "tensor")]
        coboundary: Option<i64>,
        /// Comultiplication file.
        #[arg(long, required_unless_present = "tensor")]
        delta: Option<PathBuf>,
        /// Write the double as an algebra file.
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Runs the triangular or semisimple pipeline on a tensor.
    Classify {
        algebra: PathBuf,
        tensor: PathBuf,
        #[arg(long, value_enum)]
        mode: Mode,
    },
    /// Basis of the tensors `l` with `[l, a] = 0` for every `a`.
    Invariants { algebra: PathBuf },
}

fn parse_sign(s: &str) -> Result<i64, String> {
    match s {
        "+1" | "1" => Ok(1),
        "-1" => Ok(-1),
        _ => Err(format!("expected +1 or -1, got {s}")),
    }
}

fn load_pair(algebra: &Path, tensor: &Path) -> Result<(Algebra, Tensor2)> {
    let alg = read_algebra(algebra)?;
    let r = read_tensor2(tensor)?;
    if r.dim() != alg.dim() {
        bail!(
            "tensor has dim {} but the algebra has dim {}",
            r.dim(),
            alg.dim()
        );
    }
    Ok((alg, r))
}

fn label_tuple(alg: &Algebra, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| alg.labels()[i].clone()).collect()
}

fn identities(cfg: &RunConfig, path: &Path) -> Result<(Value, String)> {
    let alg = read_algebra(path)?;
    let anti = alg.check_anticommutative();
    let lie = alg.check_lie();
    let malcev = match alg.check_malcev(cfg.samples, cfg.seed) {
        Ok(m) => Some(m),
        Err(Error::NotAnticommutative { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let malcev_ok = malcev.as_ref().is_some_and(|m| m.ok);
    let lie_witness = lie.witness().map(|f| {
        json!({
            "indices": f.indices,
            "labels": label_tuple(&alg, &f.indices),
            "jacobian": alg.describe(&f.jacobian),
        })
    });
    let report = json!({
        "command": "identities",
        "dim": alg.dim(),
        "anticommutative": anti.ok,
        "lie": lie.ok,
        "malcev": malcev_ok,
        "malcev_details": malcev.as_ref().map(|m| json!({
            "tuples_checked": m.tuples_checked,
            "samples_checked": m.samples_checked,
            "multilinear_ok": m.multilinear_ok,
            "sampled_ok": m.sampled_ok,
        })),
        "lie_failures": lie.failures.len(),
        "witnesses": {
            "anticommutative": anti.witness,
            "lie": lie_witness,
            "malcev": malcev.and_then(|m| m.witness).map(|w| to_value(&w)),
        },
    });
    let summary = format!(
        "identities: anticommutative={} lie={} malcev={}",
        anti.ok, lie.ok, malcev_ok
    );
    Ok((report, summary))
}

/// First basis pair `(a, b)` where the unimodular residual of `c` is nonzero.
fn unimodular_witness(
    alg: &Algebra,
    c: &malcev_core::Tensor3,
    variant: SlotVariant,
) -> Result<Option<[usize; 2]>> {
    let n = alg.dim();
    for a in 0..n {
        for b in 0..n {
            if !um_residual_from(
                alg,
                c,
                &alg.basis_element(a),
                &alg.basis_element(b),
                variant,
            )?
            .is_zero()
            {
                return Ok(Some([a, b]));
            }
        }
    }
    Ok(None)
}

fn cybe(cfg: &RunConfig, algebra: &Path, tensor: &Path) -> Result<(Value, String)> {
    let (alg, r) = load_pair(algebra, tensor)?;
    let c = cybe_residual(&alg, &r)?;
    let components: Vec<Value> = c
        .nonzero_entries()
        .into_iter()
        .map(|e| json!([e.index[0], e.index[1], e.index[2], e.value]))
        .collect();
    let gammas = gamma_matrices(&alg);
    let eq2 = lemma1_eq2_residual(&r.matrix(), &gammas)?;
    let same_zero_set = c
        .flat()
        .iter()
        .zip(&eq2.values)
        .all(|(x, y)| x.is_zero() == y.is_zero());
    let nd = lemma1_nd_residual(&r.matrix(), &gammas)?;
    let unimodular = if r.antisymmetry_witness().is_none() && alg.is_anticommutative() {
        let variant = SlotVariant::from(cfg.slot_variant);
        let witness = unimodular_witness(&alg, &c, variant)?;
        Some(json!({ "slot_variant": variant, "vanishes": witness.is_none(), "witness": witness }))
    } else {
        None
    };
    let report = json!({
        "command": "cybe",
        "dim": alg.dim(),
        "is_solution": c.is_zero(),
        "nonzero_components": components,
        "lemma1_eq2": {
            "zero": eq2.is_zero(),
            "nonzero_count": eq2.nonzero().len(),
            "same_zero_set_as_residual": same_zero_set,
        },
        "lemma1_nd": {
            "zero": nd.is_zero(),
            "det": nd.det,
            "brackets": nd.brackets,
            "values": nd.values,
        },
        "unimodular": unimodular,
    });
    let summary = format!(
        "cybe: is_solution={} nonzero_components={}",
        c.is_zero(),
        components.len()
    );
    Ok((report, summary))
}

#[allow(clippy::too_many_arguments)]
fn double(
    cfg: &RunConfig,
    algebra: &Path,
    tensor: Option<&Path>,
    coboundary: Option<i64>,
    delta_path: Option<&Path>,
    export: Option<&Path>,
) -> Result<(Value, String)> {
    let alg = read_algebra(algebra)?;
    let (delta, source, r) = match (delta_path, tensor, coboundary) {
        (Some(p), None, None) => (read_comultiplication(p)?, json!({ "delta": p }), None),
        (None, Some(t), Some(sign)) => {
            let r = read_tensor2(t)?;
            if r.dim() != alg.dim() {
                bail!(
                    "tensor has dim {} but the algebra has dim {}",
                    r.dim(),
                    alg.dim()
                );
            }
            let d = coboundary_delta(&alg, &r)?.scale(&Rational::integer(sign));
            (d, json!({ "tensor": t, "coboundary": sign }), Some(r))
        }
        _ => bail!("give either --delta FILE or a tensor file with --coboundary +1|-1"),
    };
    if delta.dim() != alg.dim() {
        bail!(
            "comultiplication has dim {} but the algebra has dim {}",
            delta.dim(),
            alg.dim()
        );
    }
    let base_malcev = match alg.check_malcev(cfg.samples, cfg.seed) {
        Ok(m) => m.ok,
        Err(Error::NotAnticommutative { .. }) => false,
        Err(e) => return Err(e.into()),
    };
    let dd = drinfeld_double(&alg, &delta)?;
    let verdict = double_malcev_report(&dd, cfg.samples, cfg.seed)?;
    let compat = vershinin_report(&alg, &delta, cfg.samples, cfg.seed)?;
    let form = dd.check_form();
    let unimodular = match &r {
        Some(r) if r.antisymmetry_witness().is_none() && alg.is_anticommutative() => {
            let variant = SlotVariant::from(cfg.slot_variant);
            let c = cybe_residual(&alg, r)?;
            let witness = unimodular_witness(&alg, &c, variant)?;
            Some(
                json!({ "slot_variant": variant, "vanishes": witness.is_none(), "witness": witness }),
            )
        }
        _ => None,
    };
    if let Some(path) = export {
        std::fs::write(path, algebra_to_json(&dd.double) + "\n")
            .with_context(|| format!("writing {}", path.display()))?;
    }
    let bialgebra = base_malcev && verdict.is_bialgebra;
    let report = json!({
        "command": "double",
        "dim": dd.dim(),
        "source": source,
        "base_malcev": base_malcev,
        "bialgebra": bialgebra,
        "double": to_value(&verdict),
        "compatibility": {
            "holds": compat.holds(),
            "agrees_with_double": compat.holds() == verdict.is_bialgebra,
            "report": to_value(&compat),
        },
        "form_q": to_value(&form),
        "unimodular": unimodular,
        "exported": export,
    });
    let summary = format!(
        "double: bialgebra={} compatibility={} form_ok={}",
        bialgebra,
        compat.holds(),
        form.ok()
    );
    Ok((report, summary))
}

fn classify(cfg: &RunConfig, algebra: &Path, tensor: &Path, mode: Mode) -> Result<(Value, String)> {
    let (alg, r) = load_pair(algebra, tensor)?;
    let (name, rep) = match mode {
        Mode::Triangular => (
            "triangular",
            pipeline_triangular_r(&alg, &r, cfg.samples, cfg.seed),
        ),
        Mode::Semisimple => (
            "semisimple",
            pipeline_semisimple_r(&alg, &r, cfg.samples, cfg.seed),
        ),
    };
    let summary = match rep.first_failure() {
        None => format!("classify ({name}): all {} stages pass", rep.stages.len()),
        Some(stage) => format!("classify ({name}): failed at {stage}"),
    };
    let report = json!({
        "command": "classify",
        "mode": name,
        "ok": rep.ok,
        "first_failure": rep.first_failure(),
        "stages": to_value(&rep.stages),
    });
    Ok((report, summary))
}

fn invariants(path: &Path) -> Result<(Value, String)> {
    let alg = read_algebra(path)?;
    let n = alg.dim();
    let space = alg.tensor_centralizer();
    let mut verified = true;
    let mut basis = Vec::new();
    for v in space.basis_vectors() {
        let l = Tensor2::from_flat(n, v.to_vec())?;
        for i in 0..n {
            verified &= derivation_action2(&alg, &l, &alg.basis_element(i))?.is_zero();
        }
        basis.push(tensor2_json(&l));
    }
    let report = json!({
        "command": "invariants",
        "dim": n,
        "invariant_dim": space.dim(),
        "verified": verified,
        "basis": basis,
    });
    Ok((
        report,
        format!("invariants: dim={} verified={verified}", space.dim()),
    ))
}

fn run(cli: Cli) -> Result<()> {
    let cfg = &cli.config;
    let (report, summary) = match &cli.command {
        Command::Identities { algebra } => identities(cfg, algebra)?,
        Command::Cybe { algebra, tensor } => cybe(cfg, algebra, tensor)?,
        Command::Double {
            algebra,
            tensor,
            coboundary,
            delta,
            export,
        } => double(
            cfg,
            algebra,
            tensor.as_deref(),
            *coboundary,
            delta.as_deref(),
            export.as_deref(),
        )?,
        Command::Classify {
            algebra,
            tensor,
            mode,
        } => classify(cfg, algebra, tensor, *mode)?,
        Command::Invariants { algebra } => invariants(algebra)?,
    };
    let text = serde_json::to_string_pretty(&report)? + "\n";
    match &cfg.output {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    eprintln!("{summary}");
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
