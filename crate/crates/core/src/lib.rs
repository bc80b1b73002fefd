//! Exact-arithmetic evaluation of finite multiple harmonic sums and their
//! identities: the flat-sum ("Riemann sum") representations of harmonic and
//! star harmonic sums, skew-Schur harmonic sums with diagonally constant
//! exponents, Hoffman-type sums and their duality, and the telescoped
//! evaluation of Kawashima's nested series at integer arguments.
//!
//! Every value is an exact [`Rational`]; each family of sums comes with at
//! least two independent evaluation routes so the identities relating them
//! can be checked bit-for-bit.

pub mod arith;
pub mod chain;
pub mod index;
pub mod kawashima;
pub mod lab;
pub mod schur;
pub mod sums;

pub use arith::{binomial, det_exact, Integer, MatrixError, Rational, RationalMatrix};
pub use chain::{
    eval_chain_bruteforce, eval_chain_bruteforce_with_limit, eval_chain_dp, ChainError, ChainSpec,
    Relation, WeightKind, DEFAULT_ENUM_LIMIT,
};
pub use index::{compositions, Index, IndexError};
pub use kawashima::{kawashima_exact, kawashima_truncated, telescoped_chain, telescoping_tail, KawashimaError, KawashimaQuery};
pub use lab::{
    bench_ladder, fuzz, random_chain_case, verify_identity, BenchRow, FuzzConfig, Identity,
    IdentityReport, LabError, VerifyParams,
};
pub use schur::{
    c_n, connected_sum_z, consecutive, consecutive_pairs, d_n, rel_strict, rel_weak, schur_flat,
    schur_flat_monotone, schur_mhs, schur_mhs_diagonal, tuple_space, tuple_space_in, DiagIndex,
    ExponentSpec, Interval, IntervalTuple, SchurError, SkewDiagram,
};
pub use sums::{hoffman_h, hoffman_h_flat, mhs, mhs_flat, mhs_star, mhs_star_flat};
pub use sums::{flat_chain, hoffman_chain, hoffman_flat_chain, star_flat_chain, zeta_chain, zeta_star_chain};
