#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

pub fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

pub fn read_golden(name: &str) -> String {
    std::fs::read_to_string(golden(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn au(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_au"))
        .args(args)
        .env_remove("AU_CI")
        .output()
        .expect("au binary runs")
}

pub fn au_golden(args: &[&str]) -> Output {
    let args: Vec<String> = args
        .iter()
        .map(|a| {
            if a.ends_with(".json") && !a.starts_with('-') {
                golden(a).display().to_string()
            } else {
                a.to_string()
            }
        })
        .collect();
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    au(&refs)
}

pub fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

pub const CHECK_ARGS: [&str; 9] = [
    "check",
    "--suite",
    "all",
    "--frame-size",
    "4",
    "--samples",
    "200",
    "--seed",
    "7",
];
