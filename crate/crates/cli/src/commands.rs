use std::fmt::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use polarcone::theorems::{
    check_pair, fixture, separate_face, Fixture, FixtureSet, Sampler, SearchBudget, Theorem,
    FIXTURE_NAMES,
};
use polarcone::{moreau_decompose, project, ConvexSet, GeomError, PolyhedralCone, Vector};

use crate::error::{CliError, EXIT_OK, EXIT_WITNESS};
use crate::format::{parse_document, to_toml, Document, ParsedFile};
use crate::render;

#[derive(Debug, Parser)]
#[command(
    name = "polarcone",
    version,
    about = "Polar cones, projections and decompositions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the polar of the first set (a cone) in both representations.
    Polar { file: PathBuf },
    /// Project a point onto the first set.
    Project {
        file: PathBuf,
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        /// Comma-separated coordinates, e.g. `--point -1,2`.
        point: Vec<f64>,
    },
    /// Split a point into its projections onto a cone and its polar.
    Decompose {
        file: PathBuf,
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        /// Comma-separated coordinates.
        point: Vec<f64>,
    },
    /// Sample a characterization on the first two sets of the file.
    Check {
        file: PathBuf,
        /// 2: projection sum, 3: orthogonal projections, 4: unique
        /// orthogonal sum, 5: unique sum.
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=5))]
        theorem: u8,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Separate a cone (first set) from the polar part orthogonal to a face
    /// (second set).
    Separate { file: PathBuf },
    /// List, run or export the built-in fixtures. Listing is the default.
    Fixtures {
        #[arg(long, conflicts_with_all = ["run", "export"])]
        list: bool,
        /// Run a fixture and compare with its recorded expectations.
        #[arg(long, value_name = "NAME")]
        run: Option<String>,
        /// Print the fixture as a set-description file.
        #[arg(long, value_name = "NAME", conflicts_with = "run")]
        export: Option<String>,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Captured result of a command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub code: i32,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output {
            stdout,
            code: EXIT_OK,
        }
    }
}

fn read(path: &Path) -> Result<ParsedFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_document(&text)
}

fn nth_set(parsed: &ParsedFile, i: usize) -> Result<&ConvexSet, CliError> {
    parsed.sets.get(i).ok_or_else(|| {
        CliError::Usage(format!(
            "the file declares {} set(s), this command needs {}",
            parsed.sets.len(),
            i + 1
        ))
    })
}

fn nth_cone(parsed: &ParsedFile, i: usize) -> Result<&PolyhedralCone, CliError> {
    nth_set(parsed, i)?.as_cone().ok_or_else(|| {
        CliError::Usage(format!(
            "set {} must be a cone (cone_rays or cone_halfspaces)",
            i + 1
        ))
    })
}

fn point(coords: &[f64], dim: usize) -> Result<Vector, CliError> {
    if coords.len() != dim {
        return Err(GeomError::DimensionMismatch {
            expected: dim,
            found: coords.len(),
        }
        .into());
    }
    Ok(Vector::new(coords.to_vec())?)
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Polar { file } => {
            let parsed = read(file)?;
            let c = nth_cone(&parsed, 0)?;
            Ok(Output::ok(format!(
                "polar cone\n{}",
                render::cone(&c.polar())
            )))
        }
        Command::Project {
            file,
            point: coords,
        } => {
            let parsed = read(file)?;
            let s = nth_set(&parsed, 0)?;
            let u = point(coords, parsed.document.dim)?;
            let p = project(s, &u)?;
            Ok(Output::ok(format!(
                "set: {}\nprojection: {}\ndistance: {}\n",
                s.kind(),
                render::vector(&p),
                render::num(p.distance(&u))
            )))
        }
        Command::Decompose {
            file,
            point: coords,
        } => {
            let parsed = read(file)?;
            let c = nth_cone(&parsed, 0)?;
            let u = point(coords, parsed.document.dim)?;
            Ok(Output::ok(render::moreau(&moreau_decompose(c, &u)?)))
        }
        Command::Check {
            file,
            theorem,
            samples,
            seed,
        } => {
            let parsed = read(file)?;
            let (e, f) = (nth_set(&parsed, 0)?, nth_set(&parsed, 1)?);
            let theorem = Theorem::from_number(*theorem).expect("range checked by the parser");
            let budget = SearchBudget {
                seed: *seed,
                ..SearchBudget::default()
            };
            let v = check_pair(theorem, e, f, &Sampler::new(*seed), *samples, &budget)?;
            let code = if v.property_holds {
                EXIT_OK
            } else {
                EXIT_WITNESS
            };
            Ok(Output {
                stdout: render::verdict(&v),
                code,
            })
        }
        Command::Separate { file } => {
            let parsed = read(file)?;
            let (c, b) = (nth_cone(&parsed, 0)?, nth_cone(&parsed, 1)?);
            Ok(Output::ok(render::separation(&separate_face(c, b)?)))
        }
        Command::Fixtures {
            run,
            export,
            samples,
            seed,
            ..
        } => match (run, export) {
            (Some(name), _) => run_fixture(&lookup(name)?, *samples, *seed),
            (None, Some(name)) => export_fixture(&lookup(name)?),
            (None, None) => {
                let mut out = String::new();
                for name in FIXTURE_NAMES {
                    writeln!(out, "{name}: {}", lookup(name)?.description).unwrap();
                }
                Ok(Output::ok(out))
            }
        },
    }
}

fn lookup(name: &str) -> Result<Fixture, CliError> {
    fixture(name).ok_or_else(|| {
        CliError::Usage(format!(
            "unknown fixture {name:?}; known fixtures: {}",
            FIXTURE_NAMES.join(", ")
        ))
    })
}

fn export_fixture(fx: &Fixture) -> Result<Output, CliError> {
    let (FixtureSet::Convex(e), FixtureSet::Convex(f)) = (&fx.e, &fx.f) else {
        return Err(CliError::Usage(format!(
            "fixture {} contains a set the file format cannot express",
            fx.name
        )));
    };
    let mut sets = vec![e, f];
    let face;
    if let Some(b) = &fx.face {
        face = ConvexSet::cone(b.clone());
        sets[1] = &face;
    }
    let doc = Document::from_sets(&sets).expect("two sets");
    Ok(Output::ok(to_toml(&doc)))
}

fn run_fixture(fx: &Fixture, samples: usize, seed: u64) -> Result<Output, CliError> {
    let budget = SearchBudget {
        seed,
        ..SearchBudget::default()
    };
    let checks = fx.run(&Sampler::new(seed), samples, &budget)?;
    let mut out = String::new();
    writeln!(out, "fixture: {}", fx.name).unwrap();
    writeln!(out, "description: {}", fx.description).unwrap();
    writeln!(out, "e: {}", fx.e.describe()).unwrap();
    writeln!(out, "f: {}", fx.f.describe()).unwrap();
    writeln!(out, "sets closed: {}", fx.sets_closed).unwrap();
    for r in &fx.face_readings {
        let tag = if r.canonical {
            "canonical"
        } else {
            "alternative"
        };
        writeln!(
            out,
            "face reading ({tag}): {} ({})",
            render::vector(&r.ray),
            r.note
        )
        .unwrap();
    }
    let mut failed = Vec::new();
    for c in &checks {
        let status = if c.passed { "ok" } else { "MISMATCH" };
        writeln!(
            out,
            "expect {}: observed {} [{status}]",
            c.expectation.label(),
            c.observed
        )
        .unwrap();
        if let Some(v) = &c.verdict {
            for line in render::verdict(v).lines() {
                writeln!(out, "  {line}").unwrap();
            }
        }
        if !c.passed {
            failed.push(c.expectation.label());
        }
    }
    if failed.is_empty() {
        Ok(Output::ok(out))
    } else {
        eprint!("{out}");
        Err(CliError::Expectation(format!(
            "{}: {}",
            fx.name,
            failed.join("; ")
        )))
    }
}
