//! Command-line front end: reads JSON documents, calls into `ritz_fibre`,
//! writes JSON documents.

pub mod args;
mod commands;
pub mod doc;

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};

use clap::Parser;
use ritz_fibre::{Error, Tolerances};
use serde_json::Value;
use thiserror::Error as ThisError;

use args::{Cli, Command};

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    Argument = 2,
    Genericity = 3,
    Numerical = 4,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Io(#[from] io::Error),
    #[error(transparent)]
    Lib(#[from] Error),
}

impl CliError {
    pub fn status(&self) -> ExitStatus {
        match self {
            CliError::Usage(_) | CliError::Parse(_) | CliError::Io(_) => ExitStatus::Argument,
            CliError::Lib(e) => match e {
                Error::Argument(_) | Error::NotRegular { .. } | Error::NoUniqueCompletion => ExitStatus::Argument,
                Error::Genericity { .. } | Error::SpectralCollision(_) => ExitStatus::Genericity,
                Error::Numerical(_) => ExitStatus::Numerical,
            },
        }
    }
}

/// Runs with the process's standard streams.
pub fn run<I, T>(argv: I) -> ExitStatus
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(argv, &mut io::stdin().lock(), &mut io::stdout().lock(), &mut io::stderr().lock())
}

/// Runs with explicit streams; `--input`/`--output` still take precedence.
pub fn run_with<I, T>(argv: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> ExitStatus
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() {
                ExitStatus::Argument
            } else {
                // --help and --version print to standard output.
                let _ = write!(stdout, "{e}");
                ExitStatus::Success
            };
        }
    };
    match execute(&cli, stdin, stdout, stderr) {
        Ok(()) => ExitStatus::Success,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.status()
        }
    }
}

fn read_input(cli: &Cli, stdin: &mut dyn Read) -> Result<Value, CliError> {
    let text = match &cli.input {
        Some(path) => fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?,
        None => {
            let mut s = String::new();
            stdin.read_to_string(&mut s)?;
            s
        }
    };
    doc::parse(&text)
}

fn execute(cli: &Cli, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    let tol = Tolerances::new(cli.tol_eig, cli.tol_coincide, cli.tol_rank)?;
    let out = match &cli.command {
        Command::Poisson { n } => commands::poisson(*n)?,
        cmd => {
            let input = read_input(cli, stdin)?;
            match cmd {
                Command::Ritz => commands::ritz(&input, &tol)?,
                Command::Check => commands::check(&input, &tol)?,
                Command::Hess => commands::hess(&input)?,
                Command::Coords => commands::coords(&input, &tol, stderr)?,
                Command::Reconstruct => commands::reconstruct_cmd(&input, &tol)?,
                Command::Flow(a) => commands::flow(&input, a, &tol)?,
                Command::Conj(a) => commands::conj(&input, a, &tol)?,
                Command::Control(a) => commands::control(&input, a, &tol)?,
                Command::Poisson { .. } => unreachable!(),
            }
        }
    };
    let mut text = serde_json::to_string_pretty(&Value::Object(out)).expect("JSON values serialize");
    text.push('\n');
    match &cli.output {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(argv: &[&str], input: &str) -> (ExitStatus, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("ritz-fibre").chain(argv.iter().copied());
        let status = run_with(argv, &mut input.as_bytes(), &mut out, &mut err);
        (status, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    const SWAP: &str = r#"{"n": 2, "entries": [[0, 1], [1, 0]]}"#;

    #[test]
    fn ritz_example() {
        let (s, out, _) = call(&["ritz"], SWAP);
        assert_eq!(s, ExitStatus::Success);
        let v: Value = serde_json::from_str(&out).unwrap();
        let r = doc::read_ritz(&v).unwrap();
        let near = |z: ritz_fibre::C64, re: f64| (z.re - re).abs() < 1e-14 && z.im.abs() < 1e-14;
        assert!(near(r.level(1)[0], 0.0));
        assert!(near(r.level(2)[0], -1.0) && near(r.level(2)[1], 1.0));
    }

    #[test]
    fn reconstruct_example() {
        let (s, out, _) = call(&["reconstruct"], r#"{"ritz": [[0], [-1, 1]], "b": [[1]]}"#);
        assert_eq!(s, ExitStatus::Success);
        let x = doc::read_matrix(&serde_json::from_str(&out).unwrap()).unwrap();
        assert!((x[(0, 1)].re - 1.0).abs() < 1e-15 && (x[(1, 0)].re - 1.0).abs() < 1e-15);
        assert!(x[(0, 0)].norm() < 1e-15 && x[(1, 1)].norm() < 1e-15);
    }

    #[test]
    fn identity_is_not_generic() {
        let (s, _, err) = call(&["coords"], r#"{"n": 2, "entries": [[1, 0], [0, 1]]}"#);
        assert_eq!(s, ExitStatus::Genericity);
        assert!(err.contains("(G2_1)"), "{err}");
    }

    #[test]
    fn help_and_usage() {
        assert_eq!(call(&["--help"], "").0, ExitStatus::Success);
        assert_eq!(call(&[], "").0, ExitStatus::Argument);
        assert_eq!(call(&["bogus"], "").0, ExitStatus::Argument);
        assert_eq!(call(&["ritz", "--tol-eig", "2"], SWAP).0, ExitStatus::Argument);
    }

    #[test]
    fn poisson_small() {
        let (s, out, _) = call(&["poisson", "--n", "3"], "");
        assert_eq!(s, ExitStatus::Success);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["pairs"], 15);
        assert_eq!(v["all_commute"], true);
        assert_eq!(call(&["poisson", "--n", "0"], "").0, ExitStatus::Argument);
    }

    #[test]
    fn exit_status_mapping() {
        let cases = [
            (Error::Argument("x".into()), ExitStatus::Argument),
            (Error::NoUniqueCompletion, ExitStatus::Argument),
            (Error::NotRegular { order: 2, nullity: 4 }, ExitStatus::Argument),
            (Error::SpectralCollision("x".into()), ExitStatus::Genericity),
            (Error::Numerical("x".into()), ExitStatus::Numerical),
        ];
        for (e, want) in cases {
            assert_eq!(CliError::Lib(e).status(), want);
        }
        assert_eq!(ExitStatus::Numerical.code(), 4);
    }
}
