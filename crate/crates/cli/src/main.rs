//! `arrfree`: classify hyperplane arrangements from the command line.
//!
//! Exit codes: 0 free, 2 plus-one generated, 3 neither up to the bound,
//! 4 non-essential input, 1 any other error.

mod output;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use serde::Serialize;

use arrfree_core::arrangement::{parse_arrangement, ArrangementFile};
use arrfree_core::catalog::{self, ENTRIES};
use arrfree_core::classify::{classify_with, ClassifyOptions};
use arrfree_core::theorems::{
    addition_deletion_check, combinatorial_deletion_check, conjecture_scan, default_pool,
    division_check, free_additions, free_filtration, relative_criterion,
};
use arrfree_core::{char_poly, Arrangement, Error, Verdict};

use output::Render;

#[derive(Parser)]
#[command(
    name = "arrfree",
    version,
    about = "Freeness and plus-one generation of hyperplane arrangements over Q"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

/// An arrangement file, `-` for stdin, or `catalog:NAME[:PARAM]`.
#[derive(clap::Args)]
struct Input {
    input: String,
}

#[derive(clap::Args)]
struct Indexed {
    input: String,
    /// Index of the hyperplane (0-based, in file order).
    #[arg(long, short)]
    index: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Characteristic and Poincaré polynomials, Betti numbers.
    Chi(Input),
    /// Free, strictly plus-one generated, plus-one generated, or neither.
    Classify {
        input: String,
        /// Degree bound for generators and syzygies (default |A|).
        #[arg(long)]
        bound: Option<u32>,
        /// Last degree of the Hilbert function check (default 2|A|).
        #[arg(long)]
        hilbert_to: Option<u32>,
    },
    /// Classify A, A minus H and the restriction to H, and check the triple.
    Triple(Indexed),
    /// Write A minus H.
    Delete(Indexed),
    /// Write the restriction to H.
    Restrict(Indexed),
    /// Write the Ziegler multirestriction to H.
    Ziegler(Indexed),
    /// Search for a free filtration.
    Filtration(Input),
    /// Free additions A ∪ {L} over a candidate pool.
    FreeAdditions {
        input: String,
        /// File of extra candidate forms, added to the default pool.
        #[arg(long)]
        pool: Option<PathBuf>,
    },
    /// For each H in a free A: where |A| − |A^H| falls among the exponents.
    Scan(Input),
    /// List catalog entries, or print one as an arrangement file.
    Catalog { name: Option<String> },
}

fn load(spec: &str) -> anyhow::Result<ArrangementFile> {
    if let Some(name) = spec.strip_prefix("catalog:") {
        return Ok(ArrangementFile {
            arrangement: catalog::catalog(name)?,
            mult: None,
        });
    }
    let text = if spec == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(spec).with_context(|| format!("reading {spec}"))?
    };
    parse_arrangement(&text).with_context(|| format!("parsing {spec}"))
}

fn simple(spec: &str) -> anyhow::Result<Arrangement> {
    let f = load(spec)?;
    if f.mult.as_ref().is_some_and(|m| !m.is_simple()) {
        bail!("{spec}: this command takes a simple arrangement (no multiplicities)");
    }
    Ok(f.arrangement)
}

fn emit<T: Serialize + Render>(json: bool, value: &T) -> anyhow::Result<()> {
    if json {
        println!("{}", serde_json::to_string_pretty(value)?);
    } else {
        print!("{}", value.render());
    }
    Ok(())
}

fn verdict_code(v: Verdict) -> u8 {
    match v {
        Verdict::Free => 0,
        Verdict::StrictPOG | Verdict::POG => 2,
        Verdict::NeitherAtBound => 3,
    }
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    let json = cli.json;
    match cli.command {
        Command::Chi(Input { input }) => {
            let a = simple(&input)?;
            emit(json, &output::ChiOut::new(&a, char_poly(&a).report()))?;
        }
        Command::Classify {
            input,
            bound,
            hilbert_to,
        } => {
            let f = load(&input)?;
            if let Some(m) = f.mult.as_ref().filter(|m| !m.is_simple()) {
                let out = output::MultiOut::compute(&f.arrangement, m, bound)?;
                let code = if out.free { 0 } else { 3 };
                emit(json, &out)?;
                return Ok(code);
            }
            let rep = classify_with(&f.arrangement, ClassifyOptions { bound, hilbert_to })?;
            let code = verdict_code(rep.verdict);
            emit(json, &rep.to_json())?;
            return Ok(code);
        }
        Command::Triple(Indexed { input, index }) => {
            let a = simple(&input)?;
            let triple = addition_deletion_check(&a, index)?;
            let division = division_check(&a, index)?;
            let relative = relative_criterion(&a, index)?;
            let combinatorial = if triple.free[0] {
                Some(combinatorial_deletion_check(&a, index)?)
            } else {
                None
            };
            emit(
                json,
                &output::TripleOut {
                    triple,
                    division,
                    relative,
                    combinatorial,
                },
            )?;
        }
        Command::Delete(Indexed { input, index }) => {
            let a = simple(&input)?;
            let h = a.hyperplane(index)?.to_string();
            let del = a.delete(index)?;
            let comment = format!(
                "# deletion of H_{index}: {h}\n# chi = {}\n",
                char_poly(&del).chi()
            );
            emit(json, &output::FileOut::new(comment, &del, None))?;
        }
        Command::Restrict(Indexed { input, index }) => {
            let a = simple(&input)?;
            let r = a.restrict(index)?;
            let comment = format!(
                "# restriction to H_{index}: {}\n# preimages {:?}\n# chi = {}\n",
                a.hyperplane(index)?,
                r.preimages,
                char_poly(&r.arrangement).chi()
            );
            emit(json, &output::FileOut::new(comment, &r.arrangement, None))?;
        }
        Command::Ziegler(Indexed { input, index }) => {
            let a = simple(&input)?;
            let z = a.ziegler_restrict(index)?;
            let comment = format!(
                "# Ziegler restriction to H_{index}: {}\n# |m| = {}\n",
                a.hyperplane(index)?,
                z.mult.total()
            );
            emit(
                json,
                &output::FileOut::new(comment, &z.restricted, Some(&z.mult)),
            )?;
        }
        Command::Filtration(Input { input }) => {
            let a = simple(&input)?;
            emit(json, &free_filtration(&a)?)?;
        }
        Command::FreeAdditions { input, pool } => {
            let a = simple(&input)?;
            let mut candidates = default_pool(&a);
            if let Some(path) = pool {
                let text = std::fs::read_to_string(&path)
                    .with_context(|| format!("reading {}", path.display()))?;
                let extra = parse_arrangement(&text)
                    .with_context(|| format!("parsing {}", path.display()))?;
                if extra.arrangement.nvars() != a.nvars() {
                    bail!(
                        "pool has {} variables, arrangement has {}",
                        extra.arrangement.nvars(),
                        a.nvars()
                    );
                }
                candidates.extend(extra.arrangement.hyperplanes().iter().cloned());
            }
            emit(json, &free_additions(&a, &candidates)?)?;
        }
        Command::Scan(Input { input }) => {
            let a = simple(&input)?;
            emit(json, &conjecture_scan(&a)?)?;
        }
        Command::Catalog { name } => match name {
            None => emit(json, &output::CatalogList(ENTRIES))?,
            Some(name) => {
                let a = catalog::catalog(&name)?;
                emit(
                    json,
                    &output::FileOut::new(format!("# catalog {name}\n"), &a, None),
                )?;
            }
        },
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            let non_essential = e
                .chain()
                .any(|c| matches!(c.downcast_ref::<Error>(), Some(Error::NonEssential)));
            ExitCode::from(if non_essential { 4 } else { 1 })
        }
    }
}
