//! Problem files, JSON reports and congruence diagrams.

pub mod command;
pub mod dot;
pub mod parse;
pub mod report;

pub use dot::emit_congruence_dot;
pub use parse::{parse_problem, ProblemFile};
