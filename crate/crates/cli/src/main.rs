//! `adc`: command-line front end for adc-core.
//!
//! Every command writes one JSON document (stdout, or `-o`). Exit code 0 means
//! every check passed, 1 that a check failed, 2 that the input was rejected.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use adc_core::acceptance;
use adc_core::enumerate::{enumerate_cells, enumerate_morphisms, nerve, Pins, SearchOptions};
use adc_core::io::{
    adc_to_json, bisimplicial_set_to_json, morphism_from_json, morphism_to_json, parse_adc, parse_json,
    simplicial_set_from_json, simplicial_set_to_json, to_text,
};
use adc_core::monoidal::{disk_complex, pushout_along_rigid_inclusion, JoinComplex, TensorComplex};
use adc_core::orientals::uniqueness::aw_uniqueness_oracle;
use adc_core::orientals::{
    aw_coalgebra_report, aw_diagonal, cosimplicial_image, g_phi, oriental, vertex_retraction, Side, SimplexMap,
};
use adc_core::simplicial::{
    comma_bisimplicial, homology, reduced_homology, slice_over, slice_under, std_simplex, SimplicialMap,
};
use adc_core::slice_transfer::slice_sdr_suite;
use adc_core::{AdcComplex, AdcError, AdcMorphism, BigInt, Coefficient};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "adc", version, about = "Augmented directed complexes, orientals and nerves")]
struct Cli {
    /// Highest nerve level to compute.
    #[arg(long, global = true, default_value_t = 3)]
    trunc: usize,
    /// Largest coefficient tried during enumeration.
    #[arg(long, global = true, env = "ADC_COEFF_CAP", default_value_t = 3)]
    coeff_cap: u32,
    /// Degree cap for tensor products and joins.
    #[arg(long, global = true, env = "ADC_MAX_DEGREE", default_value_t = 6)]
    max_degree: usize,
    /// Worker threads for enumeration.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Coefficient type.
    #[arg(long, global = true, value_enum, default_value_t = Coeff::I64)]
    coeff: Coeff,
    /// Output file (default: stdout).
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    /// Indented JSON, and plain-text summaries for verdicts.
    #[arg(long, global = true)]
    pretty: bool,
    /// Leave wall-clock timings out of the report.
    #[arg(long, global = true)]
    no_timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Coeff {
    I32,
    I64,
    I128,
    Bigint,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check d∘d = 0 and e∘d = 0 for a complex, or the chain-map laws for a morphism.
    Validate {
        file: PathBuf,
        /// Read the file as a morphism.
        #[arg(long)]
        morphism: bool,
    },
    /// Unitality, strong loop-freeness and the Steiner-strong verdict.
    Classify { file: PathBuf },
    /// Gray tensor product of two complexes.
    Tensor { left: PathBuf, right: PathBuf },
    /// Join of two complexes.
    Join { left: PathBuf, right: PathBuf },
    /// The disk λ(D_i).
    Disk { i: usize },
    /// Pushout of `u` along a rigid ordered inclusion `g`.
    Pushout { g: PathBuf, u: PathBuf },
    /// The oriental c(Δn).
    Oriental { n: usize },
    /// The Alexander–Whitney diagonal of c(Δn).
    Aw {
        n: usize,
        /// Also verify coassociativity, counit and naturality.
        #[arg(long)]
        check: bool,
    },
    /// g_φ for φ: [n] → [1] given by its values, e.g. `0011`.
    Gphi {
        n: usize,
        phi: String,
        #[arg(long)]
        lax: bool,
    },
    /// The retraction of c(Δm) onto its last vertex; `-o DIR` writes the maps.
    Retraction { m: usize },
    /// Cells of ν(K) of one dimension.
    Cells { file: PathBuf, dim: usize },
    /// Morphisms between two complexes.
    Hom { source: PathBuf, target: PathBuf },
    /// The truncated Street nerve of a complex.
    Nerve { file: PathBuf },
    /// c(θ) for θ: [k] → [n] given by its values, e.g. `n = 3`, `023`.
    SimplexMap { n: usize, values: String },
    /// The standard simplex Δ^m truncated at `--trunc`.
    Simplex { m: usize },
    /// The bisimplicial comma g↓h for g: X → Z, h: Y → Z.
    Comma {
        x: PathBuf,
        y: PathBuf,
        z: PathBuf,
        g: PathBuf,
        h: PathBuf,
        #[arg(long, num_args = 2, default_values_t = [1, 1])]
        caps: Vec<usize>,
    },
    /// The slice X∕z (or X\z with `--over`) of g: X → Z at the m-simplex labelled `z`.
    Slice {
        x: PathBuf,
        zset: PathBuf,
        g: PathBuf,
        m: usize,
        z: String,
        #[arg(long)]
        over: bool,
    },
    /// Integral homology of a simplicial set.
    Homology {
        file: PathBuf,
        #[arg(long)]
        up_to: Option<usize>,
        #[arg(long)]
        reduced: bool,
    },
    /// Deformation retraction of N(L)/c onto N(L)/c(m), truncated at n.
    SdrDemo {
        m: usize,
        n: usize,
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        anchor: PathBuf,
    },
    /// Bounded search for the families g_φ, up to dimension n.
    AwUniq { n: usize },
    /// Runs the acceptance criteria.
    Acceptance {
        /// Run only these criteria.
        #[arg(long)]
        only: Vec<usize>,
    },
}

/// What a command produced.
struct Outcome {
    report: Value,
    passed: Option<bool>,
    lines: Vec<String>,
    files: Vec<(PathBuf, Value)>,
}

impl Outcome {
    fn data(report: Value) -> Self {
        Self {
            report,
            passed: None,
            lines: Vec::new(),
            files: Vec::new(),
        }
    }

    fn verdict(report: Value, passed: bool) -> Self {
        Self {
            report,
            passed: Some(passed),
            lines: Vec::new(),
            files: Vec::new(),
        }
    }
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Internal(String),
}

impl From<AdcError> for Failure {
    fn from(e: AdcError) -> Self {
        match e {
            AdcError::Internal(m) => Failure::Internal(m),
            other => Failure::Input(other.to_string()),
        }
    }
}

type Res<T> = std::result::Result<T, Failure>;

fn read(path: &Path) -> Res<Value> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse_json(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_adc<C: Coefficient>(path: &Path) -> Res<Arc<AdcComplex<C>>> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse_adc(&text)
        .map(Arc::new)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_morphism<C: Coefficient>(path: &Path) -> Res<AdcMorphism<C>> {
    morphism_from_json(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_sset(path: &Path) -> Res<adc_core::simplicial::TruncatedSimplicialSet> {
    let x = simplicial_set_from_json(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let r = x.validate();
    if r.has_input_errors() {
        return Err(Failure::Input(format!("{}: {:?}", path.display(), r.input_errors)));
    }
    Ok(x)
}

fn read_smap(path: &Path) -> Res<SimplicialMap> {
    serde_json::from_value(read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn parse_phi(n: usize, s: &str) -> Res<SimplexMap> {
    let values = s
        .chars()
        .filter(|c| *c != ',' && *c != '.')
        .map(|c| c.to_digit(10).map(|d| d as usize))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Failure::Input(format!("φ = {s:?} must list its values, e.g. 0011")))?;
    if values.len() != n + 1 {
        return Err(Failure::Input(format!("φ = {s:?} needs {} values", n + 1)));
    }
    Ok(SimplexMap::new(n, 1, values)?)
}

fn action_only<C: Coefficient>(f: &AdcMorphism<C>) -> Value {
    morphism_to_json(f)["action"].clone()
}

fn run<C: Coefficient>(cli: &Cli) -> Res<Outcome> {
    let opts = SearchOptions {
        coeff_cap: cli.coeff_cap,
        jobs: cli.jobs.max(1),
    };
    let cap = cli.max_degree;
    Ok(match &cli.command {
        Command::Validate { file, morphism } => {
            if *morphism {
                let f = read_morphism::<C>(file)?;
                let r = f.validate_morphism();
                Outcome::verdict(json!({"valid": r.is_valid(), "report": r}), r.is_valid())
            } else {
                let k = read_adc::<C>(file)?;
                let r = k.validate();
                Outcome::verdict(
                    json!({"name": k.name(), "valid": r.is_valid(), "report": r}),
                    r.is_valid(),
                )
            }
        }
        Command::Classify { file } => {
            let k = read_adc::<C>(file)?;
            let r = k.validate();
            let c = k.classify_basis()?;
            let ok = r.is_valid() && c.steiner_strong;
            Outcome::verdict(
                json!({"name": k.name(), "chain_complex": r.is_valid(), "classification": c}),
                ok,
            )
        }
        Command::Tensor { left, right } => {
            let t = TensorComplex::new(read_adc::<C>(left)?, read_adc::<C>(right)?, cap)?;
            Outcome::data(adc_to_json(&t.complex))
        }
        Command::Join { left, right } => {
            let j = JoinComplex::new(read_adc::<C>(left)?, read_adc::<C>(right)?, cap)?;
            Outcome::data(adc_to_json(&j.complex))
        }
        Command::Disk { i } => Outcome::data(adc_to_json(&disk_complex::<C>(*i)?)),
        Command::Pushout { g, u } => {
            let p = pushout_along_rigid_inclusion(&read_morphism::<C>(g)?, &read_morphism::<C>(u)?)?;
            Outcome::data(json!({
                "complex": adc_to_json(&p.complex),
                "from_l": action_only(&p.from_l),
                "from_m": action_only(&p.from_m),
            }))
        }
        Command::Oriental { n } => Outcome::data(adc_to_json(&oriental::<C>(*n)?.complex)),
        Command::Aw { n, check } => {
            let o = oriental::<C>(*n)?;
            let (_, nabla) = aw_diagonal(&o)?;
            if *check {
                let r = aw_coalgebra_report::<C>(*n, *n)?;
                let ok = r.passed();
                Outcome::verdict(json!({"diagonal": morphism_to_json(&nabla), "checks": r}), ok)
            } else {
                Outcome::data(morphism_to_json(&nabla))
            }
        }
        Command::Gphi { n, phi, lax } => {
            let phi = parse_phi(*n, phi)?;
            let g = g_phi::<C>(&phi, if *lax { Side::Lax } else { Side::Oplax })?;
            Outcome::data(morphism_to_json(&g.map))
        }
        Command::Retraction { m } => {
            let v = vertex_retraction::<C>(*m)?;
            let r = v.structure.validate();
            let ok = r.passed();
            let maps = [
                ("inclusion", &v.structure.inclusion),
                ("retraction", &v.structure.retraction),
                ("homotopy", &v.structure.homotopy),
            ];
            let mut out = Outcome::verdict(json!({"m": m, "checks": r}), ok);
            if let Some(dir) = &cli.output {
                for (name, f) in maps {
                    out.files.push((dir.join(format!("{name}.json")), morphism_to_json(f)));
                }
                out.files.push((dir.join("verdict.json"), out.report.clone()));
            } else {
                for (name, f) in maps {
                    out.report[name] = morphism_to_json(f);
                }
            }
            out
        }
        Command::Cells { file, dim } => {
            let k = read_adc::<C>(file)?;
            let e = enumerate_cells(&k, *dim, opts)?;
            let mut cells: Vec<String> = e.cells.iter().map(|c| c.render(&k)).collect();
            cells.sort();
            Outcome::data(
                json!({"dimension": dim, "count": cells.len(), "cells": cells, "budget": e.budget, "warnings": e.warnings}),
            )
        }
        Command::Hom { source, target } => {
            let e = enumerate_morphisms(&read_adc::<C>(source)?, &read_adc::<C>(target)?, opts, &Pins::new())?;
            let mut maps: Vec<Value> = e.morphisms.iter().map(action_only).collect();
            maps.sort_by_key(|v| v.to_string());
            Outcome::data(json!({"count": maps.len(), "morphisms": maps, "budget": e.budget}))
        }
        Command::Nerve { file } => {
            let nv = nerve(&read_adc::<C>(file)?, cli.trunc, opts)?;
            let r = nv.set.validate();
            Outcome::verdict(
                json!({"counts": nv.set.counts(), "budget": nv.budget, "simplicial": r.is_valid(), "set": simplicial_set_to_json(&nv.set)}),
                r.is_valid(),
            )
        }
        Command::SimplexMap { n, values } => {
            let v = values
                .chars()
                .filter(|c| *c != ',' && *c != '.')
                .map(|c| c.to_digit(10).map(|d| d as usize))
                .collect::<Option<Vec<_>>>()
                .filter(|v| !v.is_empty())
                .ok_or_else(|| Failure::Input(format!("θ = {values:?} must list its values, e.g. 023")))?;
            let theta = SimplexMap::new(v.len() - 1, *n, v)?;
            Outcome::data(morphism_to_json(&cosimplicial_image::<C>(&theta)?))
        }
        Command::Simplex { m } => Outcome::data(simplicial_set_to_json(&std_simplex(*m, cli.trunc))),
        Command::Comma { x, y, z, g, h, caps } => {
            let (b, _) = comma_bisimplicial(
                &read_sset(x)?,
                &read_sset(y)?,
                &read_sset(z)?,
                &read_smap(g)?,
                &read_smap(h)?,
                (caps[0], caps[1]),
            )?;
            let r = b.validate();
            Outcome::verdict(
                json!({"bisimplicial": r.is_valid(), "set": bisimplicial_set_to_json(&b)}),
                r.is_valid(),
            )
        }
        Command::Slice { x, zset, g, m, z, over } => {
            let (xs, zs, gm) = (read_sset(x)?, read_sset(zset)?, read_smap(g)?);
            let zi = zs
                .find_label(*m, z)
                .ok_or_else(|| Failure::Input(format!("no {m}-simplex labelled {z:?}")))?;
            let s = if *over {
                slice_over(&xs, &zs, &gm, *m, zi)?
            } else {
                slice_under(&xs, &zs, &gm, *m, zi)?
            };
            let r = s.set.validate();
            Outcome::verdict(
                json!({"counts": s.set.counts(), "simplicial": r.is_valid(), "set": simplicial_set_to_json(&s.set)}),
                r.is_valid(),
            )
        }
        Command::Homology { file, up_to, reduced } => {
            let x = read_sset(file)?;
            let k = up_to.unwrap_or(x.cap.saturating_sub(1));
            let h = if *reduced {
                reduced_homology(&x, k)?
            } else {
                homology(&x, k)?
            };
            Outcome::data(json!({"groups": h.iter().map(|g| g.to_string()).collect::<Vec<_>>(), "detail": h}))
        }
        Command::SdrDemo { m, n, target, anchor } => {
            let l = read_adc::<C>(target)?;
            let c = read_morphism::<C>(anchor)?;
            if **c.target() != *l {
                return Err(Failure::Input("the anchor does not land in the target complex".into()));
            }
            let c = c.clone().with_endpoints(c.source().clone(), l)?;
            if c.source().count(0) != m + 1 {
                return Err(Failure::Input(format!(
                    "the anchor starts at a complex with {} vertices, not c(Δ{m})",
                    c.source().count(0)
                )));
            }
            let r = slice_sdr_suite(&c, *n, opts)?;
            let ok = r.passed();
            let mut v = serde_json::to_value(&r).expect("plain data");
            v["counts"] = json!({"slice": r.slice_counts, "base": r.base_counts, "pinned_hom": r.pinned_hom_counts});
            Outcome::verdict(v, ok)
        }
        Command::AwUniq { n } => {
            let r = aw_uniqueness_oracle(*n)?;
            let ok = r.passed();
            Outcome::verdict(serde_json::to_value(&r).expect("plain data"), ok)
        }
        Command::Acceptance { only } => {
            let ids: Vec<usize> = if only.is_empty() {
                (1..=acceptance::CRITERIA.len()).collect()
            } else {
                only.clone()
            };
            if let Some(bad) = ids.iter().find(|&&i| i == 0 || i > acceptance::CRITERIA.len()) {
                return Err(Failure::Input(format!("there is no criterion {bad}")));
            }
            let mut lines = Vec::new();
            let mut results = Vec::new();
            for id in ids {
                let o = acceptance::run_criterion(id, opts);
                let line = o.line();
                if !cli.pretty {
                    eprintln!("{line}");
                }
                lines.push(line);
                results.push(o);
            }
            let ok = results.iter().all(|o| o.passed);
            let mut out = Outcome::verdict(json!({"criteria": results}), ok);
            out.lines = lines;
            out
        }
    })
}

fn strip_timing(v: &mut Value) {
    match v {
        Value::Object(m) => {
            m.remove("elapsed_ms");
            m.remove("timing_ms");
            m.values_mut().for_each(strip_timing);
        }
        Value::Array(a) => a.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

fn emit(cli: &Cli, mut out: Outcome, elapsed_ms: u128) -> std::io::Result<()> {
    let mut doc = match out.passed {
        Some(p) => {
            json!({"command": command_name(&cli.command), "passed": p, "result": out.report, "timing_ms": elapsed_ms})
        }
        None => out.report,
    };
    if cli.no_timing {
        strip_timing(&mut doc);
        for (_, v) in &mut out.files {
            strip_timing(v);
        }
    }
    for (path, v) in &out.files {
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir)?;
        }
        fs::write(path, to_text(v, cli.pretty))?;
    }
    let text = if cli.pretty && !out.lines.is_empty() {
        let mut s = out.lines.join("\n");
        s.push('\n');
        s
    } else {
        to_text(&doc, cli.pretty)
    };
    match &cli.output {
        Some(p) if out.files.is_empty() => fs::write(p, text),
        _ => {
            print!("{text}");
            Ok(())
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::Classify { .. } => "classify",
        Command::Tensor { .. } => "tensor",
        Command::Join { .. } => "join",
        Command::Disk { .. } => "disk",
        Command::Pushout { .. } => "pushout",
        Command::Oriental { .. } => "oriental",
        Command::Aw { .. } => "aw",
        Command::Gphi { .. } => "gphi",
        Command::Retraction { .. } => "retraction",
        Command::Cells { .. } => "cells",
        Command::Hom { .. } => "hom",
        Command::Nerve { .. } => "nerve",
        Command::SimplexMap { .. } => "simplex-map",
        Command::Simplex { .. } => "simplex",
        Command::Comma { .. } => "comma",
        Command::Slice { .. } => "slice",
        Command::Homology { .. } => "homology",
        Command::SdrDemo { .. } => "sdr-demo",
        Command::AwUniq { .. } => "aw-uniq",
        Command::Acceptance { .. } => "acceptance",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = match cli.coeff {
        Coeff::I32 => run::<i32>(&cli),
        Coeff::I64 => run::<i64>(&cli),
        Coeff::I128 => run::<i128>(&cli),
        Coeff::Bigint => run::<BigInt>(&cli),
    };
    match result {
        Ok(out) => {
            let code = match out.passed {
                Some(false) => 1,
                _ => 0,
            };
            if let Err(e) = emit(&cli, out, start.elapsed().as_millis()) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(code)
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("internal check failed: {m}");
            ExitCode::from(1)
        }
    }
}
