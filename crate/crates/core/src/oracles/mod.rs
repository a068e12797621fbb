//! Brute-force ground truth for the game and for offline rankings.

mod depth;
mod psi;
mod solver;
mod stv;

pub use depth::{rho_tkd_formula, tree_depth};
pub use psi::{psi_exact, psi_path_formula, SizeLimit, PSI_SIZE_LIMIT};
pub use solver::{online_rank_decision, online_rank_value, SolveError, SolveResult, Solver, DEFAULT_BUDGET};
pub use stv::{stv_class, StvClass};
