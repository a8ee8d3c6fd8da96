//! Solvers for placing obnoxious facilities on a line segment or a circle.
//!
//! Four problems are covered, each with a decision counter and an exact
//! optimizer:
//!
//! * max-size squares on a segment ([`line::count_squares`], [`line::solve_squares`])
//! * max-radius disks on a segment with a separation coefficient
//!   ([`line::count_disks`], [`line::solve_disks`])
//! * max-radius disks centered on a circle ([`circle::count_circle`],
//!   [`circle::solve_circle`])
//! * min-weight coverage with k fixed-radius disks ([`mofl::solve_mofl`])
//!
//! Supporting machinery lives in its own modules: implicit sorted-array
//! selection ([`matrix_search`]), a partially persistent segment tree
//! ([`pst`]), ring jump tables ([`ring`]), and deliberately slow reference
//! solvers ([`oracle`]).
//!
//! With the default `parallel` feature the embarrassingly parallel inner
//! loops (per-anchor ring scans, batch forbidden-region construction,
//! Monge verification, oracle restarts) run on rayon; without it every
//! code path is sequential.

pub mod circle;
pub mod geom;
pub mod line;
pub mod matrix_search;
pub mod mofl;
pub mod oracle;
pub(crate) mod par;
pub mod pst;
pub mod ring;
pub mod tol;
