//! Adapter for external SAT solvers speaking the SAT-competition output format.
//!
//! The solver is invoked as `<command> <file.cnf>`; its standard output must
//! carry an `s SATISFIABLE` / `s UNSATISFIABLE` line and, when satisfiable,
//! `v` lines with the model.

use std::io::{self, Read, Write};
use std::process::{Command, Stdio};
use std::thread;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::sat::cnf::{write_dimacs, CnfFormula};

/// Environment variable holding the default solver command.
pub const SOLVER_ENV: &str = "GOWERS_SOLVER";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolverOutcome {
    /// Model as DIMACS literals.
    Sat(Vec<i32>),
    Unsat,
}

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("{0}: command not found")]
    CommandNotFound(String),
    #[error("empty solver command")]
    EmptyCommand,
    #[error("solver I/O: {0}")]
    Io(#[from] io::Error),
    #[error("solver timed out after {elapsed_ms} ms; partial output: {partial}")]
    Timeout { elapsed_ms: u128, partial: String },
    #[error("solver exited with {code:?} without a status line; output: {output}")]
    NoStatus { code: Option<i32>, output: String },
    #[error("solver reported UNKNOWN")]
    Unknown,
    #[error("malformed value line: {0}")]
    MalformedValues(String),
}

pub fn run_external_solver(
    f: &CnfFormula,
    command: &str,
    timeout: Option<Duration>,
) -> Result<SolverOutcome, SolverError> {
    let mut words = command.split_whitespace();
    let program = words.next().ok_or(SolverError::EmptyCommand)?;
    let args: Vec<&str> = words.collect();

    let mut file = tempfile::Builder::new()
        .prefix("gowers-")
        .suffix(".cnf")
        .tempfile()?;
    file.write_all(write_dimacs(f).as_bytes())?;
    file.flush()?;

    let mut child = match Command::new(program)
        .args(&args)
        .arg(file.path())
        .stdin(Stdio::null())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
    {
        Ok(c) => c,
        Err(e) if e.kind() == io::ErrorKind::NotFound => {
            return Err(SolverError::CommandNotFound(program.to_string()))
        }
        Err(e) => return Err(e.into()),
    };
    let mut stdout = child.stdout.take().expect("stdout is piped");
    let reader = thread::spawn(move || {
        let mut buf = String::new();
        stdout.read_to_string(&mut buf).map(|_| buf)
    });

    let started = Instant::now();
    let status = loop {
        if let Some(status) = child.try_wait()? {
            break status;
        }
        if timeout.is_some_and(|t| started.elapsed() > t) {
            let _ = child.kill();
            let _ = child.wait();
            let partial = reader.join().ok().and_then(|r| r.ok()).unwrap_or_default();
            return Err(SolverError::Timeout {
                elapsed_ms: started.elapsed().as_millis(),
                partial: excerpt(&partial),
            });
        }
        thread::sleep(Duration::from_millis(2));
    };
    let output = reader
        .join()
        .map_err(|_| io::Error::other("solver output reader panicked"))??;
    parse_solver_output(&output).map_err(|e| match e {
        SolverError::NoStatus { output, .. } => SolverError::NoStatus {
            code: status.code(),
            output,
        },
        other => other,
    })
}

fn excerpt(s: &str) -> String {
    const MAX: usize = 400;
    if s.len() <= MAX {
        s.to_string()
    } else {
        let mut end = MAX;
        while !s.is_char_boundary(end) {
            end -= 1;
        }
        format!("{}…", &s[..end])
    }
}

/// Reads `s` and `v` lines from solver output.
pub fn parse_solver_output(output: &str) -> Result<SolverOutcome, SolverError> {
    let mut status: Option<&str> = None;
    let mut model = Vec::new();
    for line in output.lines() {
        let line = line.trim();
        if let Some(s) = line.strip_prefix("s ") {
            status = Some(s.trim());
        } else if let Some(vals) = line.strip_prefix('v') {
            for tok in vals.split_whitespace() {
                let lit: i32 = tok
                    .parse()
                    .map_err(|_| SolverError::MalformedValues(line.to_string()))?;
                if lit != 0 {
                    model.push(lit);
                }
            }
        }
    }
    match status {
        Some("SATISFIABLE") => Ok(SolverOutcome::Sat(model)),
        Some("UNSATISFIABLE") => Ok(SolverOutcome::Unsat),
        Some("UNKNOWN") => Err(SolverError::Unknown),
        _ => Err(SolverError::NoStatus {
            code: None,
            output: excerpt(output),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_sat_output() {
        let out = "c comment\ns SATISFIABLE\nv 1 -2\nv 3 0\n";
        assert_eq!(
            parse_solver_output(out).unwrap(),
            SolverOutcome::Sat(vec![1, -2, 3])
        );
    }

    #[test]
    fn parses_unsat_output() {
        assert_eq!(
            parse_solver_output("s UNSATISFIABLE\n").unwrap(),
            SolverOutcome::Unsat
        );
    }

    #[test]
    fn rejects_bad_output() {
        assert!(matches!(
            parse_solver_output("s SATISFIABLE\nv 1 x 0\n"),
            Err(SolverError::MalformedValues(_))
        ));
        assert!(matches!(
            parse_solver_output("nothing here\n"),
            Err(SolverError::NoStatus { .. })
        ));
        assert!(matches!(
            parse_solver_output("s UNKNOWN\n"),
            Err(SolverError::Unknown)
        ));
    }

    #[test]
    fn missing_executable() {
        let f = CnfFormula {
            num_vars: 1,
            clauses: vec![vec![1]],
            groups: vec![],
            comments: vec![],
        };
        let err = run_external_solver(&f, "definitely-not-a-solver-xyz", None).unwrap_err();
        assert!(err.to_string().contains("command not found"), "{err}");
        assert!(matches!(
            run_external_solver(&f, "   ", None),
            Err(SolverError::EmptyCommand)
        ));
    }

    #[cfg(unix)]
    #[test]
    fn shell_scripted_solvers() {
        let f = CnfFormula {
            num_vars: 1,
            clauses: vec![vec![1]],
            groups: vec![],
            comments: vec![],
        };
        let dir = tempfile::tempdir().unwrap();
        let script = dir.path().join("fake.sh");
        std::fs::write(
            &script,
            "#!/bin/sh\ngrep -q '^p cnf 1 1' \"$1\" && echo 's SATISFIABLE' && echo 'v 1 0'\n",
        )
        .unwrap();
        let cmd = format!("sh {}", script.display());
        assert_eq!(
            run_external_solver(&f, &cmd, None).unwrap(),
            SolverOutcome::Sat(vec![1])
        );

        std::fs::write(&script, "#!/bin/sh\necho 'garbage'\nexit 3\n").unwrap();
        match run_external_solver(&f, &cmd, None) {
            Err(SolverError::NoStatus { code, .. }) => assert_eq!(code, Some(3)),
            other => panic!("{other:?}"),
        }

        std::fs::write(&script, "#!/bin/sh\necho 'c thinking'\nexec sleep 5\n").unwrap();
        match run_external_solver(&f, &cmd, Some(Duration::from_millis(100))) {
            Err(SolverError::Timeout { partial, .. }) => assert!(partial.contains("thinking")),
            other => panic!("{other:?}"),
        }
    }
}
