//! Instance generators, property verifiers, the suite runner and the
//! counterexample search.

pub mod gen;
pub mod suite;
pub mod verify;

pub use gen::{
    gen_collinear, gen_grid, gen_meeting, gen_on_flats, gen_random, gen_skew, gen_split,
    GeneratorSpec, Instance, Piece,
};
pub use suite::{
    counterexample_search, counterexample_search_with, default_suite, run_suite, Family,
    SearchRecord, SearchReport, Span, SuiteConfig, SuiteReport, Tally,
};
pub use verify::{
    verify_bcd, verify_complement, verify_conjecture, verify_dual_dimension, verify_equivalence,
    verify_inductive_bound, verify_lower_bound, verify_meeting, verify_skew_counts,
    verify_split_equiv, Checker, Property, Status, VerdictReport,
};
