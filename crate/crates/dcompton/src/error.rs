//! Error type shared across the crate.

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("spinor requires on-shell momentum")]
    OffShellSpinor,
    #[error("lightfront-degenerate momentum")]
    LightfrontDegenerate,
    #[error("collinear lightfront singularity")]
    CollinearSingularity,
    #[error("soft/collinear kinematics: zeroth-order regularization invalid")]
    SoftCollinear,
    #[error("positron-branch kinematics (P1.k <= 0) not supported")]
    PositronBranch,
    #[error("forward-hemisphere projection undefined")]
    ForwardHemisphere,
    #[error("density matrix is not normalized")]
    NotNormalized,
    #[error("phase grid budget exceeded")]
    GridBudget,
    #[error("config error: {0}")]
    Config(String),
}
