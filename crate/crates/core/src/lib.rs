//! Exact q-characters of finite-dimensional representations of quantum
//! affine algebras, computed with the Frenkel-Mukhin algorithm.

pub mod cartan;
pub mod colored;
pub mod engine;
pub mod monomial;
pub mod report;
pub mod sl2;
pub mod tableaux;
pub mod traceback;

pub use cartan::{make_algebra, AlgebraSpec, CartanError, Family, WeightVector};
pub use colored::{ColoredPolynomial, ColoredTerm, ExpandError};
pub use engine::{
    run_fm, run_fm_with, EngineError, FailureReport, FmOutcome, Limits, Offender, ProcessingOrder,
    QCharacter, RunOptions, TraceEntry,
};
pub use monomial::{a_monomial, a_monomial_inverse, MonomialError, SL2Monomial, YMonomial, YVar};
pub use tableaux::{Letter, MatchReport, Shape, Tableau, TableauError};
pub use traceback::{
    find_ancestors, run_fm_modified, InjectionRecord, ModifiedRun, TracebackError,
};
