//! Abelian normalized bicyclic regular coverings of the quaternion hypermap.

pub mod fpgroup;
pub mod intlattice;
pub mod library;
pub mod hypermap;
pub mod operations;
pub mod census;
pub mod verify;
