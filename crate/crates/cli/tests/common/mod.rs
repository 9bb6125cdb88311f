//! The fixed corpus of invocations whose reports are kept as golden files.

use std::path::PathBuf;
use std::process::{Command, Output};

pub const MIXTURE: &str = "mixture [(1/2, uniform), (1/2, bernoulli 3/4)]";

pub fn corpus() -> Vec<(&'static str, Vec<&'static str>)> {
    vec![
        (
            "analyze_uniform",
            vec!["analyze", "--stream", "mixed.txt", "--predictor", "uniform"],
        ),
        (
            "analyze_bernoulli_ones",
            vec![
                "analyze",
                "--stream",
                "ones.txt",
                "--predictor",
                "bernoulli 3/4",
                "--growth",
                "linear 1",
            ],
        ),
        (
            "analyze_empty",
            vec![
                "analyze",
                "--stream",
                "empty.txt",
                "--predictor",
                "dirac 01",
                "--json",
            ],
        ),
        (
            "calibrate_periodic",
            vec![
                "calibrate",
                "--stream",
                "periodic.txt",
                "--predictor",
                "bernoulli 2/3",
                "--window",
                "3/5",
                "7/10",
            ],
        ),
        (
            "calibrate_vacuous",
            vec![
                "calibrate",
                "--stream",
                "mixed.txt",
                "--predictor",
                "uniform",
                "--window",
                "3/5",
                "7/10",
                "--json",
            ],
        ),
        (
            "convert_process",
            vec![
                "convert",
                "process",
                "--predictor",
                "bernoulli 1/2",
                "--depth",
                "3",
            ],
        ),
        (
            "convert_distribution",
            vec![
                "convert",
                "distribution",
                "--process",
                "identity.tsv",
                "--depth",
                "3",
            ],
        ),
        (
            "convert_martingale",
            vec![
                "convert",
                "martingale",
                "--predictor",
                MIXTURE,
                "--depth",
                "3",
                "--json",
            ],
        ),
        (
            "convert_digit_aligned",
            vec![
                "convert",
                "digit_aligned",
                "--predictor",
                "table skewed.tsv",
                "--depth",
                "3",
            ],
        ),
        (
            "adversary_bernoulli",
            vec![
                "adversary",
                "--predictor",
                "bernoulli 3/4",
                "--length",
                "16",
            ],
        ),
    ]
}

pub fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn data_dir() -> PathBuf {
    crate_dir().join("tests").join("data")
}

pub fn golden_path(name: &str) -> PathBuf {
    crate_dir()
        .join("tests")
        .join("golden")
        .join(format!("{name}.out"))
}

/// Runs the `predict` binary inside the data directory.
pub fn predict(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_predict"))
        .args(args)
        .current_dir(data_dir())
        .output()
        .expect("predict binary runs")
}
