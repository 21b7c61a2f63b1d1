//! Period polynomials, multiple L-values and double zeta values of level-1
//! modular forms.
//!
//! The crate computes, with exact rational arithmetic where the theory is
//! exact and with certified high-precision ball arithmetic where it is not:
//!
//! - q-expansions of Δ and of the Eisenstein series G_k / E_k ([`qseries`]),
//! - single and iterated Mellin transforms Λ(f_1,…,f_n; m_1,…,m_n) at
//!   integer points, with rigorous truncation bounds ([`mellin`]),
//! - period polynomials, Manin relations, the W_k spaces, the Petersson
//!   product from periods, the Kohnen–Zagier closed formula and the Hecke
//!   action ([`periods`]),
//! - double zeta values, their reductions at non-positive arguments, the
//!   J(α,β) rationals and the Z_g lattice sums ([`mzv`]),
//! - the group-ring relation ideals I_1, I_H, I_V, I_D, I_2 acting on
//!   two-variable polynomial spaces, with exact annihilator bases
//!   ([`relations`]),
//! - biperiod and multiperiod polynomials, shuffle and generalized Manin
//!   identities, and the closed-form evaluation of Λ(Δ,Δ;2,3)
//!   ([`biperiods`]).

pub mod exact;
pub mod highprec;
pub mod qseries;
pub mod mzv;
pub mod mellin;
pub mod periods;
pub mod relations;
pub mod biperiods;

pub use exact::Rat;
pub use highprec::{Complex, Real};
