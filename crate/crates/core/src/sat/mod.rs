//! CNF encoding of avoidance questions, DIMACS I/O, model decoding and the
//! external solver adapter.

mod cnf;
mod solver;

pub use cnf::{
    decode_model, encode_avoidance, encode_table, model_of_coloring, parse_dimacs, write_dimacs,
    ClauseGroup, ClauseTag, CnfFormula, EncodeOptions, Encoding, VarMap, DEFAULT_CLAUSE_CAP,
};
pub use solver::{
    parse_solver_output, run_external_solver, SolverError, SolverOutcome, SOLVER_ENV,
};
