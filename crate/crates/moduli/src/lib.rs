//! Exact linear algebra over Q, etale Q-algebras, a canonical-form
//! parametrization for twisted point configurations on the projective
//! line, and quaternion/Brauer obstruction machinery with verifiable
//! certificates. Everything is exact; no floating point anywhere.

pub mod brauer;
pub mod etale;
pub mod exactnum;
pub mod intfactor;
pub mod jsonio;
pub mod linal;
pub mod parametrize;
pub mod selftest;
