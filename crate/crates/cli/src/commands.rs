use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use au_core::au::{au, au_oracle, AscentParams, OracleMode, WARN_FRAME_SIZE};
use au_core::axioms::suite::{run_suite, SuiteConfig, SuiteSelection};
use au_core::credal::is_consistent;
use au_core::document::{emit_bpa, parse_bpa, parse_document, Document};
use au_core::evidence::{
    is_belief_function, product_mass, project_mass, transfer as transfer_mass,
};
use au_core::{Frame, MassFunction, Partition, SubsetMask};
use serde::Serialize;

use crate::error::{CliError, EXIT_CHECK_FAILED, EXIT_INVALID};

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|error| CliError::File {
        path: path.to_owned(),
        error,
    })
}

fn load(path: &Path) -> Result<MassFunction, CliError> {
    parse_bpa(&read(path)?).map_err(|error| CliError::Document {
        path: path.to_owned(),
        error,
    })
}

fn write_output(text: &str, output: Option<&Path>) -> Result<(), CliError> {
    match output {
        Some(path) => fs::write(path, text).map_err(|error| CliError::File {
            path: path.to_owned(),
            error,
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|()| stdout.flush())
                .map_err(|error| CliError::File {
                    path: "<stdout>".into(),
                    error,
                })
        }
    }
}

/// Splits on `sep` outside parentheses, so product labels like `(a,x)` stay whole.
fn split_top_level(text: &str, sep: char) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                parts.push(&text[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    parts.push(&text[start..]);
    parts
}

fn parse_labels(text: &str) -> Vec<&str> {
    if text.trim().is_empty() {
        return Vec::new();
    }
    split_top_level(text, ',')
        .into_iter()
        .map(str::trim)
        .collect()
}

fn parse_set(frame: &Frame, text: &str, flag: &str) -> Result<SubsetMask, CliError> {
    // Projected frames have labels such as `a,b`; an exact match wins.
    if let Some(i) = frame.index_of(text.trim()) {
        return Ok(SubsetMask::singleton(i));
    }
    frame
        .subset(parse_labels(text))
        .map_err(|e| CliError::Usage(format!("{flag}: {e}")))
}

fn parse_blocks(frame: &Frame, text: &str) -> Result<Partition, CliError> {
    let groups: Vec<Vec<&str>> = split_top_level(text, '|')
        .into_iter()
        .map(parse_labels)
        .collect();
    Partition::from_labels(frame, &groups).map_err(|e| CliError::Usage(format!("--blocks: {e}")))
}

#[derive(Serialize)]
struct ArgmaxEntry<'a> {
    label: &'a str,
    p: f64,
}

#[derive(Serialize)]
struct StepEntry<'a> {
    set: Vec<&'a str>,
    ratio: f64,
}

#[derive(Serialize)]
struct ComputeReport<'a> {
    value: f64,
    argmax: Vec<ArgmaxEntry<'a>>,
    steps: Vec<StepEntry<'a>>,
}

pub fn compute(file: &Path, json: bool) -> Result<ExitCode, CliError> {
    let m = load(file)?;
    let frame = m.frame();
    if frame.len() > WARN_FRAME_SIZE {
        eprintln!(
            "au: warning: frame has {} elements; the exact computation visits 3^{} subset pairs",
            frame.len(),
            frame.len()
        );
    }
    let result = au(&m);
    let check = is_consistent(&result.argmax, &m.belief())?;
    if !check.consistent {
        return Err(CliError::Internal(format!(
            "argmax violates dominance on {} by {:e}",
            frame.display_subset(check.worst_subset),
            -check.slack
        )));
    }
    if json {
        let report = ComputeReport {
            value: result.value,
            argmax: (0..frame.len())
                .map(|i| ArgmaxEntry {
                    label: frame.label(i),
                    p: result.argmax.get(i),
                })
                .collect(),
            steps: result
                .steps
                .iter()
                .map(|s| StepEntry {
                    set: frame.subset_labels(s.set),
                    ratio: s.ratio,
                })
                .collect(),
        };
        let text = serde_json::to_string_pretty(&report).expect("report serializes");
        write_output(&format!("{text}\n"), None)?;
    } else {
        let argmax: Vec<String> = (0..frame.len())
            .map(|i| format!("{}={:.12}", frame.label(i), result.argmax.get(i)))
            .collect();
        write_output(
            &format!("{:.12}\nargmax: {}\n", result.value, argmax.join(" ")),
            None,
        )?;
    }
    Ok(ExitCode::SUCCESS)
}

pub fn validate(file: &Path) -> Result<ExitCode, CliError> {
    let text = read(file)?;
    match parse_document(&text) {
        Ok(Document::Mass(m)) => {
            println!(
                "valid: mass function with {} focal sets on {} elements",
                m.focal_count(),
                m.frame().len()
            );
            Ok(ExitCode::SUCCESS)
        }
        Ok(Document::Belief { frame, values }) => {
            match is_belief_function(&frame, &values).violation() {
                None => {
                    println!("valid: belief function on {} elements", frame.len());
                    Ok(ExitCode::SUCCESS)
                }
                Some(violation) => {
                    println!("invalid [not-a-belief-function]: {violation}");
                    Ok(ExitCode::from(EXIT_INVALID))
                }
            }
        }
        Err(error) => {
            println!("invalid [{}]: {error}", error.code());
            Ok(ExitCode::from(EXIT_INVALID))
        }
    }
}

pub fn project(file: &Path, blocks: &str, output: Option<&Path>) -> Result<ExitCode, CliError> {
    let m = load(file)?;
    let partition = parse_blocks(m.frame(), blocks)?;
    let projected = project_mass(&m, &partition)?;
    write_output(&emit_bpa(&projected), output)?;
    Ok(ExitCode::SUCCESS)
}

pub fn transfer(
    file: &Path,
    from: &str,
    to: &str,
    alpha: f64,
    output: Option<&Path>,
) -> Result<ExitCode, CliError> {
    let m = load(file)?;
    let from = parse_set(m.frame(), from, "--from-set")?;
    let to = parse_set(m.frame(), to, "--to-set")?;
    let moved = transfer_mass(&m, from, to, alpha)?;
    write_output(&emit_bpa(&moved), output)?;
    Ok(ExitCode::SUCCESS)
}

pub fn product(first: &Path, second: &Path, output: Option<&Path>) -> Result<ExitCode, CliError> {
    let (joint, _) = product_mass(&load(first)?, &load(second)?)?;
    write_output(&emit_bpa(&joint), output)?;
    Ok(ExitCode::SUCCESS)
}

fn ci_mode() -> bool {
    std::env::var("AU_CI").is_ok_and(|v| v == "1")
}

pub fn check(
    selection: SuiteSelection,
    frame_size: usize,
    samples: usize,
    seed: Option<u64>,
    json: bool,
) -> Result<ExitCode, CliError> {
    let seed = match seed {
        Some(seed) => seed,
        None if ci_mode() => {
            return Err(CliError::Usage("--seed is required when AU_CI=1".into()));
        }
        None => rand::random(),
    };
    let config = SuiteConfig {
        selection,
        frame_size,
        samples,
        seed,
    };
    let report = run_suite(au_core::au::au_value, "AU", &config)?;
    if json {
        let text = serde_json::to_string_pretty(&report).expect("report serializes");
        write_output(&format!("{text}\n"), None)?;
    } else {
        let mut text = format!(
            "suite {} on {} elements, {} samples, seed {}\n",
            report.suite, report.frame_size, report.samples, report.seed
        );
        for r in &report.reports {
            text.push_str(&format!(
                "{:<3} {:<4} margin {:>12.3e}  tol {:.0e}  cases {:>5}  {}\n",
                r.requirement.to_string(),
                if r.passed() { "pass" } else { "FAIL" },
                r.margin + 0.0,
                r.tolerance,
                r.cases,
                r.requirement.title()
            ));
        }
        text.push_str(if report.passed {
            "all requirements hold\n"
        } else {
            "some requirements fail\n"
        });
        write_output(&text, None)?;
    }
    Ok(if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_CHECK_FAILED)
    })
}

pub fn oracle(file: &Path, ascent: bool, seed: u64) -> Result<ExitCode, CliError> {
    let m = load(file)?;
    let mode = if ascent {
        OracleMode::Ascent(AscentParams {
            seed,
            ..AscentParams::default()
        })
    } else {
        OracleMode::grid()
    };
    let value = au_oracle(&m, mode)?;
    write_output(&format!("{value:.12}\n"), None)?;
    Ok(ExitCode::SUCCESS)
}
