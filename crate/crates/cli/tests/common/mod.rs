#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

use polarcone::theorems::{fixture, Expectation, FixtureSet};

pub const GOLDEN_SAMPLES: &str = "40";

pub fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_polarcone")
}

/// Runs the binary, returning (stdout, stderr, exit code).
pub fn polarcone(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(bin())
        .args(args)
        .env_remove("NO_COLOR")
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).expect("utf-8 stdout"),
        String::from_utf8(out.stderr).expect("utf-8 stderr"),
        out.status.code().expect("exit code"),
    )
}

pub fn scratch_dir() -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("polarcone-cli");
    std::fs::create_dir_all(&dir).expect("scratch dir");
    dir
}

pub fn write_scratch(name: &str, text: &str) -> PathBuf {
    let path = scratch_dir().join(name);
    std::fs::write(&path, text).expect("scratch file");
    path
}

fn record(transcript: &mut String, shown: &[&str], args: &[&str]) -> (String, i32) {
    let (stdout, _, code) = polarcone(args);
    transcript.push_str(&format!(
        "$ polarcone {}\n{stdout}exit: {code}\n\n",
        shown.join(" ")
    ));
    (stdout, code)
}

/// Everything the CLI prints for one fixture: the fixture run itself, then
/// the file-based commands on its exported description. Paths are shown by
/// file name only so the transcript does not depend on the build directory.
pub fn fixture_transcript(name: &str) -> String {
    let fx = fixture(name).expect("known fixture");
    let mut t = String::new();
    record(
        &mut t,
        &["fixtures", "--run", name, "--samples", GOLDEN_SAMPLES],
        &["fixtures", "--run", name, "--samples", GOLDEN_SAMPLES],
    );
    let (exported, code) = record(
        &mut t,
        &["fixtures", "--export", name],
        &["fixtures", "--export", name],
    );
    if code != 0 {
        return t;
    }
    let file_name = format!("{name}.toml");
    let path = write_scratch(&file_name, &exported);
    let path = path.to_str().expect("utf-8 path");
    let convex = matches!(
        (&fx.e, &fx.f),
        (FixtureSet::Convex(_), FixtureSet::Convex(_))
    );
    for exp in &fx.expectations {
        match exp {
            Expectation::Verdict(theorem, _) if convex && fx.face.is_none() => {
                let n = theorem.number().to_string();
                let args = ["check", path, "--theorem", &n, "--samples", GOLDEN_SAMPLES];
                let shown = [
                    "check",
                    &file_name,
                    "--theorem",
                    &n,
                    "--samples",
                    GOLDEN_SAMPLES,
                ];
                record(&mut t, &shown, &args);
            }
            Expectation::PolarPair(true) => {
                record(&mut t, &["polar", &file_name], &["polar", path]);
            }
            Expectation::FaceSeparation { .. } => {
                record(&mut t, &["separate", &file_name], &["separate", path]);
            }
            _ => {}
        }
    }
    t
}

pub fn golden_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.txt"))
}
