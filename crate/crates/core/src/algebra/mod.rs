//! Group abstraction, scalar arithmetic and Shamir sharing.

mod babyjub;
mod group;
mod modp;
mod shamir;

pub use babyjub::{BabyJub, JubPoint, JubScalar};
pub use group::{product, ElementOf, FieldElement, Group, GroupElement, GroupSpec, ScalarOf};
pub use modp::{ModElement, ModScalar, SchnorrGroup, SchnorrParams, Test61, TestGroup, Tiny97, TinyGroup};
pub use shamir::{
    deal_shares, lagrange_coefficients, reconstruct, reconstruct_in_exponent, share_secret, Polynomial, Share,
};
