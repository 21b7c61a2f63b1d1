//! The group-ring relation engine for lengths n ≤ 2: PSL₂(Z) elements and
//! words, Z[PSL₂(Z)²⋊S₂] with exact normal forms, the printed relation
//! ideals, exact annihilator subspaces of V_{k₁,k₂}, the V[I_D] structure
//! with its lifting, and continued-fraction decompositions of modular
//! symbols.

pub mod cf;
pub mod groupring;
pub mod ideals;
pub mod linalg;
pub mod psl2;
pub mod subspace;

pub use cf::{continued_fraction_decomposition, path_from_cusp_to_infinity};
pub use groupring::{GroupRingElement, Perm, Term};
pub use ideals::{ideal_generators, IdealName};
pub use psl2::Psl2;
pub use subspace::{
    annihilator_subspace, e_space, exact_sequence_check, lift_to_vid, slash_action,
    vid_basis_constructive, vid_dimension, ExactSequenceReport, SubspaceBasis,
};
