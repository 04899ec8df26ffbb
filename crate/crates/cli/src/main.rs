mod commands;
mod context;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

/// Verify and construct exact rational (Loday-type) algebras stored as JSON bundles.
#[derive(Parser, Debug)]
#[command(name = "clusteralg", version, about)]
pub struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Bundle file(s) to read objects from; names not found in them are
    /// looked up in the catalog.
    #[arg(long, global = true, value_name = "FILE")]
    pub bundle: Vec<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check named objects (default: everything in --bundle, or the whole catalog).
    Check { names: Vec<String> },
    /// Build a new object and print (or append to --out) a bundle holding it.
    Derive {
        #[command(subcommand)]
        construction: Construction,
        #[command(flatten)]
        out: DeriveOpts,
    },
    /// Classify a bilinear form (`zero` for the zero form) on an algebra.
    Classify { algebra: String, form: String },
    /// Seeded random tensor of a given parity.
    RandomTensor {
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value = "any")]
        symmetry: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Attach to this algebra and report whether the level's equation holds.
        #[arg(long)]
        algebra: Option<String>,
        #[arg(long, default_value = "r")]
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded random bilinear form of a given parity.
    RandomForm {
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value = "any")]
        symmetry: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "b")]
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The shipped catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(clap::Args, Debug, Clone)]
pub struct DeriveOpts {
    /// Skip the library's precondition checks and the final re-verification.
    #[arg(long, global = true)]
    pub no_verify: bool,
    /// Append the result to this bundle file instead of printing it.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Name of the (first) resulting object.
    #[arg(long, global = true)]
    pub name: Option<String>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Construction {
    /// Coarsening by a named projection (Assoc, HorizDend, DepthQuadri, ...).
    Project { algebra: String, target: String },
    /// Dual bimodule on V* (`regular` by default).
    DualBimodule {
        algebra: String,
        #[arg(default_value = "regular")]
        bimodule: String,
    },
    /// Restriction or embedding of a bimodule along --rule.
    Restrict {
        algebra: String,
        bimodule: String,
        #[arg(long)]
        rule: String,
    },
    /// Semidirect sum A ⋉ V.
    Semidirect { algebra: String, bimodule: String },
    /// Finer structure induced on V by an O-operator V → A.
    Induce { algebra: String, bimodule: String, map: String },
    /// Finer structure from a Rota-Baxter operator.
    RbFiner { algebra: String, map: String },
    /// Quadri-algebra from a commuting Rota-Baxter pair.
    RbPair { algebra: String, map1: String, map2: String },
    /// Octo-algebra from a commuting Rota-Baxter triple.
    RbTriple { algebra: String, map1: String, map2: String, map3: String },
    /// Compatible finer structure on A from an invertible O-operator V → A.
    Compatible { algebra: String, bimodule: String, map: String },
    /// Compatible finer structure from a nondegenerate form.
    FinerFromForm { algebra: String, form: String },
    /// The product induced on A* by a solution of the level's equation.
    DualProduct { algebra: String, tensor: String },
    /// Frobenius (level 1) or Connes (level 2) double of A and A*.
    DoubleProduct {
        algebra: String,
        dual: String,
        #[arg(long, default_value = "frobenius")]
        variant: String,
    },
    /// Canonical double, tensor solution and its form.
    CanonicalSolution {
        algebra: String,
        #[arg(long)]
        variant: String,
    },
    /// Lift of an O-operator T: V → A to a tensor in A ⋉ V*.
    Lift {
        algebra: String,
        bimodule: String,
        map: String,
        #[arg(long)]
        symmetry: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum CatalogAction {
    /// Entry names, levels and provenance.
    List,
    /// Print one entry's bundle.
    Show { name: String },
    /// Regenerate every shipped entry into a directory.
    Export {
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            // clap reports --help/--version as "errors" too
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    ExitCode::from(commands::run(cli))
}
