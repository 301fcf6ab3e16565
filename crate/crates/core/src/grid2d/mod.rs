//! Finite-torus simulations of two reversible 2D systems and their
//! time-reversing involutions: the billiard-ball block automaton and the
//! turning-ant automaton.

mod ant;
mod billiard;
mod torus;

pub use ant::{
    ant_step, bounding_box, detect_highway, head_tail_swap, oracle_to_grid, validate_ant_grid,
    AntCell, AntError, AntOracle, AntPose, Dir, Highway, Mark, StepInfo, TurnConvention,
};
pub use billiard::{
    arrow_flip, billiard_block_rule, billiard_step, primary_arrow, validate_arrows, Arrow,
    BilliardCell, BilliardError, Partition,
};
pub use torus::TorusGrid;
