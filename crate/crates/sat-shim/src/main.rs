//! `gowers-sat <file.cnf>`: solves a DIMACS CNF file with varisat and prints
//! the result in SAT-competition format (`s …` status, `v …` model lines).
//! Exit code 10 for satisfiable, 20 for unsatisfiable, 1 on errors.

use std::fs::File;
use std::io::{self, BufReader, Write};
use std::process::ExitCode;

use varisat::dimacs::DimacsParser;
use varisat::{Lit, Solver};

fn run(path: &str) -> Result<u8, String> {
    let file = File::open(path).map_err(|e| format!("{path}: {e}"))?;
    let formula = DimacsParser::parse(BufReader::new(file)).map_err(|e| format!("{path}: {e}"))?;
    let declared = formula.var_count();
    let mut solver = Solver::new();
    solver.add_formula(&formula);
    let sat = solver.solve().map_err(|e| e.to_string())?;

    let stdout = io::stdout();
    let mut out = stdout.lock();
    if !sat {
        writeln!(out, "s UNSATISFIABLE").map_err(|e| e.to_string())?;
        return Ok(20);
    }
    let mut values = vec![false; declared + 1];
    for lit in solver.model().unwrap_or_default() {
        let v = lit.var().to_dimacs() as usize;
        if v < values.len() {
            values[v] = lit.is_positive();
        }
    }
    writeln!(out, "s SATISFIABLE").map_err(|e| e.to_string())?;
    let lits: Vec<isize> = (1..=declared)
        .map(|v| {
            let lit = Lit::from_dimacs(v as isize);
            if values[v] {
                lit.to_dimacs()
            } else {
                (!lit).to_dimacs()
            }
        })
        .collect();
    for chunk in lits.chunks(16) {
        let line: Vec<String> = chunk.iter().map(|l| l.to_string()).collect();
        writeln!(out, "v {}", line.join(" ")).map_err(|e| e.to_string())?;
    }
    writeln!(out, "v 0").map_err(|e| e.to_string())?;
    Ok(10)
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    if args.len() != 2 {
        eprintln!("usage: gowers-sat <file.cnf>");
        return ExitCode::from(1);
    }
    match run(&args[1]) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("gowers-sat: {e}");
            println!("s UNKNOWN");
            ExitCode::from(1)
        }
    }
}
