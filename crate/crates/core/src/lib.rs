//! A characteristic-`p` commutative algebra engine: polynomial arithmetic over
//! `F_p`, Buchberger's algorithm with certificates, ideal operations, lengths
//! of `Γ_m` subquotients, and the relative Hilbert–Kunz type sequences built
//! from them.

pub mod config;
pub mod error;
pub mod groebner;
pub mod ideals;
pub mod lengths;
pub mod linalg;
pub mod polyring;
pub mod sequences;
pub mod verify;

pub use config::Config;
pub use error::{Error, Result};
pub use groebner::{
    buchberger, certify_groebner, s_polynomial, Certification, GBCertificate, GroebnerBasis,
};
pub use ideals::{ideal_member, Ideal};
pub use lengths::{LengthMethod, LengthResult};
pub use polyring::{Monomial, MonomialOrder, Polynomial, PrimeField, PrimeFieldElement, Ring};
pub use sequences::{SequenceKind, SequenceReport};
pub use verify::{
    build_construction, verify_construction, verify_katzman, verify_katzman_with_config,
    ClaimReport,
};
