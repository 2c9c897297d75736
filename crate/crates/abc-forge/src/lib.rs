//! Construction and certification of Ankeny-Brauer-Chowla number fields whose
//! class group contains an element of prescribed exact order.
//!
//! The library is organized around a scanning pipeline:
//!
//! * [`exact_poly`] — exact integer/rational polynomial algebra: resultants,
//!   discriminants, factorization shapes mod p, the Dedekind maximality
//!   criterion and field discriminants.
//! * [`abc_family`] — the specialized polynomial family
//!   `(x-a_1)...(x-a_{n-1})(x-a(t)) - 1`, candidate generation and the
//!   closed-form specialized discriminant.
//! * [`real_embeddings`] — certified real-root isolation (Sturm sequences)
//!   and refinement, realizing the real embeddings of each field.
//! * [`galois_cert`] — symmetric-Galois-group certificates from factorization
//!   shapes at witness primes, plus a brute-force resolvent oracle for
//!   degrees 3 and 4.
//! * [`units_kummer`] — the logarithmic unit system and its regulator,
//!   exact p-th power testing in the ring of integers, p-saturation, and the
//!   Kummer non-degeneracy check.
//! * [`class_order`] — ideal bookkeeping, suitability assembly, order
//!   certificates for the distinguished ideal class, and a small independent
//!   class-group oracle.
//! * [`survey`] — the scanner, deduplication, exceptional census,
//!   certificate persistence and report generation.

pub mod abc_family;
pub mod class_order;
pub mod error;
pub mod exact_poly;
pub mod galois_cert;
pub mod interval;
pub mod real_embeddings;
pub mod rng;
pub mod selftest;
pub mod survey;
pub mod units_kummer;

pub use num_bigint;
pub use num_rational;

pub use abc_family::{AbcParams, TauCandidate};
pub use class_order::{ClassCertificate, SuitabilityRecord, Verdict};
pub use exact_poly::IntPoly;
pub use survey::{CensusReport, ScanConfig};
pub use units_kummer::{AlgebraicInt, NumberField, UnitSystem};
