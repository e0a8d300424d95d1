//! Local stabilizers, SLOCC equivalence and conversion probabilities for
//! permutation-symmetric n-qubit states, via their Majorana points.
//!
//! A symmetric state `sum_k x_k D(n,k)` corresponds to the `n` roots of
//! `P(z) = sum_k (-1)^k x_k sqrt(C(n,k)) z^k` on the Riemann sphere, and an
//! invertible local operator `g^{⊗n}` acts on those roots as the Möbius map of
//! `g`. Stabilizer and equivalence questions become questions about Möbius
//! maps permuting finite point sets; every answer is checked against a dense
//! `2^n` state-vector oracle where `n` allows.
//!
//! Dense vectors use qubit 0 as the most significant bit.

pub mod cli;
pub mod error;
pub mod experiments;
pub mod majorana;
pub mod mat2;
pub mod mobius;
pub mod model;
pub mod oracle;
pub mod par;
mod roots;
pub mod slocc;
pub mod stabilizer;
pub mod statefile;

pub use error::{Error, Result};
pub use majorana::{
    apply_symmetric, degeneracy_configuration, dicke_to_polynomial, majorana_compose,
    majorana_decompose, reduced_density_matrix, RootPolynomial,
};
pub use mat2::{Mat2, C64};
pub use mobius::{FixedPoints, MobiusMap};
pub use model::{
    canonicalize_point, points_coincide, Cluster, DegeneracyConfiguration, LocalOperator,
    MajoranaSet, ProjectivePoint, SymmetricState, Tolerances,
};
pub use oracle::DenseState;
pub use par::Schedule;
pub use slocc::{connecting_operator, p_max, slocc_equivalent, ConversionReport};
pub use stabilizer::{
    certificate_from_mobius, config_precheck, decide_stabilizer, f2, f4, find_permuting_mobius,
    is_critical, m1_certificate, m2_certificate, two_qubit_stabilizer, Precheck,
    StabilizerCertificate, StabilizerVerdict,
};
