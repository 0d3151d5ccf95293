//! Command definitions and dispatch. Exit-code contract: 0 success, 2 for
//! usage or validation problems, 3 for I/O failures.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use disasm_core::{
    influence_scores, random_baseline, recommend_with_influence, sensitivity_sweep,
    AssemblyBundle, DEFAULT_R_MAX, DEFAULT_SEED, DEFAULT_TRIALS,
};

use crate::heatmap::{heatmap_json, heatmap_scores, ScoreKind};
use crate::ply::{paint_ascii_ply, score_color};
use crate::reports;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags or argument values.
    Usage(String),
    /// The bundle (or a mesh) failed validation.
    Validation(String),
    /// Filesystem trouble, including missing inputs and unwritable outputs.
    Io(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Validation(_) => 2,
            CliError::Io(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Validation(m) | CliError::Io(m) => m,
        }
    }
}

impl From<disasm_core::Error> for CliError {
    fn from(e: disasm_core::Error) -> Self {
        CliError::Validation(e.to_string())
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "disasm-advisor",
    version,
    about = "Fastener-reduction advisor for robotic disassembly"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check a bundle document and list every violation.
    Validate { bundle: PathBuf },
    /// Export the per-component influence table.
    Influence {
        bundle: PathBuf,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Rank fastener-removal candidates and write the full report set.
    Recommend {
        bundle: PathBuf,
        /// Cap on fasteners removed per host group.
        #[arg(long, default_value_t = DEFAULT_R_MAX)]
        rmax: usize,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Export normalized influence scores (and optionally painted meshes).
    Heatmap {
        bundle: PathBuf,
        #[arg(long, value_enum, default_value_t = ScoreKind::Combined)]
        kind: ScoreKind,
        /// Keep only fasteners of multi-fastened host groups.
        #[arg(long)]
        fasteners_only: bool,
        /// Write vertex-colored copies of any meshes named by the bundle.
        #[arg(long)]
        paint: bool,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Run the seeded random-removal baseline.
    Baseline {
        bundle: PathBuf,
        /// Fasteners drawn per host group and trial.
        #[arg(long, default_value_t = DEFAULT_R_MAX)]
        r: usize,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Sweep the removal cap and report achievable impact magnitudes.
    Sensitivity {
        bundle: PathBuf,
        /// Inclusive cap range, e.g. 1:4.
        #[arg(long = "rmax-range", default_value = "1:4")]
        rmax_range: String,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

pub fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Validate { bundle } => cmd_validate(&bundle),
        Command::Influence { bundle, out } => cmd_influence(&bundle, &out),
        Command::Recommend { bundle, rmax, out } => cmd_recommend(&bundle, rmax, &out),
        Command::Heatmap {
            bundle,
            kind,
            fasteners_only,
            paint,
            out,
        } => cmd_heatmap(&bundle, kind, fasteners_only, paint, &out),
        Command::Baseline {
            bundle,
            r,
            trials,
            seed,
            out,
        } => cmd_baseline(&bundle, r, trials, seed, &out),
        Command::Sensitivity {
            bundle,
            rmax_range,
            out,
        } => cmd_sensitivity(&bundle, &rmax_range, &out),
    }
}

fn load_bundle(path: &Path) -> Result<AssemblyBundle, CliError> {
    let bytes = fs::read(path)
        .map_err(|e| CliError::Io(format!("cannot read bundle {}: {e}", path.display())))?;
    Ok(AssemblyBundle::from_slice(&bytes)?)
}

fn write_artifact(out_dir: &Path, name: &str, contents: &str) -> Result<(), CliError> {
    fs::create_dir_all(out_dir)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", out_dir.display())))?;
    let path = out_dir.join(name);
    fs::write(&path, contents)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
    println!("wrote {}", path.display());
    Ok(())
}

fn cmd_validate(bundle_path: &Path) -> Result<(), CliError> {
    let bundle = load_bundle(bundle_path)?;
    println!(
        "bundle ok: {} parts, {} fasteners, {} host groups",
        bundle.part_count(),
        bundle.fastener_ids().len(),
        bundle.host_groups().len()
    );
    Ok(())
}

fn cmd_influence(bundle_path: &Path, out: &Path) -> Result<(), CliError> {
    let bundle = load_bundle(bundle_path)?;
    let table = influence_scores(&bundle)?;
    write_artifact(out, "influence.csv", &reports::influence_csv(bundle.parts(), &table))?;
    write_artifact(out, "influence.json", &reports::influence_json(&table))
}

fn cmd_recommend(bundle_path: &Path, rmax: usize, out: &Path) -> Result<(), CliError> {
    if rmax < 1 {
        return Err(CliError::Usage("--rmax must be at least 1".to_string()));
    }
    let bundle = load_bundle(bundle_path)?;
    let influence = influence_scores(&bundle)?;
    let candidates = recommend_with_influence(&bundle, &influence, rmax)?;
    write_artifact(out, "candidates.csv", &reports::candidates_csv(&candidates))?;
    write_artifact(out, "candidates.md", &reports::candidates_markdown(&candidates))?;
    write_artifact(out, "candidates.json", &reports::candidates_json(&candidates))
}

fn cmd_heatmap(
    bundle_path: &Path,
    kind: ScoreKind,
    fasteners_only: bool,
    paint: bool,
    out: &Path,
) -> Result<(), CliError> {
    let bundle = load_bundle(bundle_path)?;
    let table = influence_scores(&bundle)?;
    let scores = heatmap_scores(&bundle, &table, kind, fasteners_only);
    write_artifact(out, &format!("heatmap_{}.json", kind.name()), &heatmap_json(&scores))?;
    if !paint {
        return Ok(());
    }
    if bundle.meshes().is_empty() {
        log::warn!("--paint requested but the bundle names no meshes");
        return Ok(());
    }
    // Mesh paths are resolved relative to the bundle document.
    let mesh_root = bundle_path.parent().unwrap_or_else(|| Path::new("."));
    for (&id, mesh_rel) in bundle.meshes() {
        let Some(&score) = scores.values.get(&id) else {
            continue;
        };
        let mesh_path = mesh_root.join(mesh_rel);
        let text = fs::read_to_string(&mesh_path)
            .map_err(|e| CliError::Io(format!("cannot read mesh {}: {e}", mesh_path.display())))?;
        let painted = paint_ascii_ply(&text, score_color(score)).map_err(|e| {
            CliError::Validation(format!("mesh {}: {e}", mesh_path.display()))
        })?;
        write_artifact(out, &format!("painted_part_{id}.ply"), &painted)?;
    }
    Ok(())
}

fn cmd_baseline(
    bundle_path: &Path,
    r: usize,
    trials: usize,
    seed: u64,
    out: &Path,
) -> Result<(), CliError> {
    if r < 1 {
        return Err(CliError::Usage("--r must be at least 1".to_string()));
    }
    if trials < 1 {
        return Err(CliError::Usage("--trials must be at least 1".to_string()));
    }
    let bundle = load_bundle(bundle_path)?;
    let stats = random_baseline(&bundle, r, trials, seed)?;
    write_artifact(out, "baseline.csv", &reports::baseline_csv(r, &stats))
}

fn cmd_sensitivity(bundle_path: &Path, range: &str, out: &Path) -> Result<(), CliError> {
    let r_values = parse_rmax_range(range)?;
    let bundle = load_bundle(bundle_path)?;
    let curve = sensitivity_sweep(&bundle, &r_values)?;
    write_artifact(out, "sensitivity.csv", &reports::sensitivity_csv(&curve))
}

/// Parses "A:B" into the inclusive cap list A..=B.
fn parse_rmax_range(range: &str) -> Result<Vec<usize>, CliError> {
    let usage = || {
        CliError::Usage(format!(
            "--rmax-range must look like A:B with 1 <= A <= B, got '{range}'"
        ))
    };
    let (lo, hi) = range.split_once(':').ok_or_else(usage)?;
    let lo: usize = lo.trim().parse().map_err(|_| usage())?;
    let hi: usize = hi.trim().parse().map_err(|_| usage())?;
    if lo < 1 || hi < lo {
        return Err(usage());
    }
    Ok((lo..=hi).collect())
}
