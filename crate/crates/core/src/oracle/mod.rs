//! Brute-force oracles, written independently of the main algorithms so
//! the two can cross-check each other on small instances.

mod config;
mod ideal_search;
mod isotropy_enum;
mod psolve;

pub use config::AnsatzConfig;
pub use ideal_search::oracle_ideal_search;
pub use isotropy_enum::oracle_isotropy_enum;
pub use psolve::{oracle_psolve, sufficient_degree};
