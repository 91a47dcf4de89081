//! Sofic approximations, group-ring arithmetic over prime fields, and the
//! rank-counting transfer argument showing that a group-ring element with a
//! right inverse has no kernel.

pub mod blocks;
pub mod corpus;
pub mod digraph;
pub mod exactfield;
pub mod groupring;
pub mod groups;
pub mod instance;
pub mod sofic;
pub mod transfer;
pub mod weiss;

pub use blocks::BlockMatrix;
pub use digraph::{DigraphError, LabeledDigraph, VertexSet};
pub use exactfield::{kernel_basis, mat_mul, rank, rational_lt, FieldError, FpMatrix, FpScalar, Rational};
pub use groupring::{support_data, GroupRingError, GroupRingKernel};
pub use groups::{CayleyBall, GroupElement, GroupError, GroupKind, GroupModel};
pub use instance::{parse_group_table, parse_instance, Directive, GroupDescriptor, Instance, InstanceError};
pub use sofic::{SoficApproximation, SoficError};
pub use transfer::{
    build_instance, choose_epsilon, run_experiment, ApproxSpec, Limits, Mode, TransferError,
    TransferInstance, TransferParams, TransferReport, Verdict,
};
pub use weiss::{weiss_select, WeissError, WeissSelection};
