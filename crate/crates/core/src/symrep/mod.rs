//! Symmetric irreducible representations `T^N_n`: occupation-number basis,
//! ladder and Cartan operators, and coherent states `|n^N_n⟩`.

mod basis;
mod operators;
mod states;

pub use basis::{basis, basis_dimension, OccupationBasis, OccupationVector};
pub use operators::{
    cartan_op, ladder_op, lift_generator, lifted_eta, lowering_op, raising_op, SparseOperator,
};
pub use states::{
    angles_to_stereo, coherent_state, direct_overlap, displaced_highest_weight, eta_coeff,
    highest_weight, overlap_closed, stereographic_state, tensor_power_oracle, RepCoherentState,
    StereoCoordinates,
};
