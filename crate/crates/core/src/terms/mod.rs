//! The Łukasiewicz term language over variables `x0, x1, …`.
//!
//! Only `0`, `¬`, `⊕` and variables are stored; `1`, `⊙`, `∨`, `∧`, `→`
//! and `⊖` are expanded on construction and re-sugared when printed.

mod ast;
mod parser;
mod presentation;

pub use ast::{chang_distance, Term};
pub use parser::parse_term;
pub use presentation::{parse_relation, Presentation};
