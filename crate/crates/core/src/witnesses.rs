//! Operator assignments known to satisfy the reproducibility criteria for
//! cataloged states. Used by the claim suite and as search baselines.

use num_complex::Complex64 as C64;

use crate::kernel::LocalOp;
use crate::referee::OperatorAssignment;

/// {I, sigma_x} for player 1 and {I, i sigma_y} for player 2 discriminate
/// all four Bell-pair outputs.
pub fn bell_scr_assignment() -> OperatorAssignment {
    OperatorAssignment::new(vec![
        (LocalOp::identity(), LocalOp::pauli_x()),
        (LocalOp::identity(), LocalOp::i_sigma_y()),
    ])
    .expect("constant unitaries")
}

/// {I, i sigma_y} for every player satisfies the strong criterion on the
/// cataloged GHZ state at any N.
pub fn ghz_scr_assignment(n: usize) -> OperatorAssignment {
    OperatorAssignment::uniform(n, LocalOp::identity(), LocalOp::i_sigma_y())
        .expect("constant unitaries")
}

/// |1,1> is the Bell pair (|01>+|10>)/sqrt(2); the Bell operator sets work.
pub fn dicke11_scr_assignment() -> OperatorAssignment {
    bell_scr_assignment()
}

/// i(sqrt(2) sigma_z + sigma_x)/sqrt(3): the second strategy of players 1-3
/// in the |2,2> full-discrimination assignment.
fn tilted_zx() -> LocalOp {
    let s2 = 2.0_f64.sqrt();
    let s3 = 3.0_f64.sqrt();
    LocalOp::pauli_z()
        .scale(C64::new(0.0, s2 / s3))
        .add(&LocalOp::pauli_x().scale(C64::new(0.0, 1.0 / s3)))
}

/// (sqrt(2) sigma_z + sigma_y)/sqrt(3): the second strategy of players 2-4
/// in the |2,2> majority-game assignment.
fn tilted_zy() -> LocalOp {
    let s2 = 2.0_f64.sqrt();
    let s3 = 3.0_f64.sqrt();
    LocalOp::pauli_z()
        .scale(C64::new(s2 / s3, 0.0))
        .add(&LocalOp::pauli_y().scale(C64::new(1.0 / s3, 0.0)))
}

/// Full-discrimination assignment for the balanced four-player Dicke state
/// |2,2>: first strategies all I, second strategies
/// i(sqrt(2) sigma_z + sigma_x)/sqrt(3) for players 1-3 and i sigma_y for
/// player 4.
pub fn dicke22_scr_assignment() -> OperatorAssignment {
    let id = LocalOp::identity();
    OperatorAssignment::new(vec![
        (id, tilted_zx()),
        (id, tilted_zx()),
        (id, tilted_zx()),
        (id, LocalOp::i_sigma_y()),
    ])
    .expect("constant unitaries")
}

/// Set-discrimination assignment for |2,2> under the four-player majority
/// partition: second strategies sigma_x for player 1 and
/// (sqrt(2) sigma_z + sigma_y)/sqrt(3) for players 2-4.
pub fn dicke22_majority_assignment() -> OperatorAssignment {
    let id = LocalOp::identity();
    OperatorAssignment::new(vec![
        (id, LocalOp::pauli_x()),
        (id, tilted_zy()),
        (id, tilted_zy()),
        (id, tilted_zy()),
    ])
    .expect("constant unitaries")
}
