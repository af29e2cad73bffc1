//! Exact decision procedures for hyperplane sections of rank-2 Picard lattice
//! K3 surfaces.
//!
//! A Knutsen surface `S_{n,d,g}` of Picard number two has Picard lattice
//! `ZH + ZC` with Gram matrix `[[2n, d], [d, 2g-2]]`. Every hyperplane
//! section of such a surface is irreducible and reduced unless a class
//! `D = aH + bC` exists with
//!
//! ```text
//! (I)   0 < 2na + bd <= n
//! (II)  na^2 + dab + (g-1)b^2 >= -1
//! ```
//!
//! This crate decides that question three ways and cross-checks them:
//!
//! * [`brute_force_decide`] searches the inequality system directly, over a
//!   provably sufficient range of `b`;
//! * [`lemma_branch`] reduces the search to a single candidate class
//!   `a1*H +- C` selected by the residue of `d` modulo `2n`;
//! * [`closed_form_decide`] compares `g` with `(d^2 - delta^2) / 4n`, where
//!   `delta` is the distance from `d` to the nearest multiple of `2n`.
//!
//! [`decide`] runs all three and reports whether they agree, and the
//! [`survey`] module scans boxes of `(n, d, g)` triples in parallel with
//! deterministic output.
//!
//! ```
//! use k3split::{decide, SurfaceSpec};
//!
//! let spec = SurfaceSpec::new(3, 8, 4).unwrap();
//! let verdict = decide(&spec).unwrap();
//! assert!(verdict.bn_general_guaranteed);
//! assert!(verdict.agree);
//! ```
//!
//! All arithmetic is exact. Inputs are bounded by [`MAX_PARAM`], which keeps
//! every intermediate quantity inside `i128`; anything that still overflows
//! is reported as [`Error::Overflow`] instead of wrapping.

pub mod arith;
pub mod decision;
mod error;
pub mod lattice;
pub mod survey;

pub use decision::{
    bn_general, brute_force_decide, closed_form_decide, decide, delta, forced_a, genus_threshold,
    lemma_branch, search_bound, splitting_witness, Branch, LemmaBranch, Splitting, Verdict,
    Witness,
};
pub use error::{Error, Result};
pub use lattice::{DivisorClass, LatticeHealth, SurfaceSpec, MAX_PARAM};
pub use survey::{
    emit_records, emit_report, scan, scan_with, verify, verify_with, DiscrepancyReport, Format,
    GPolicy, RecordEmitter, ScanOptions, ScanRange, ScanRecord,
};
