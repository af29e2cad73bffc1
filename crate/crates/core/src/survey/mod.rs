//! Range surveys over boxes of `(n, d, g)` triples.
//!
//! Triples are generated in lexicographic order and decided in parallel one
//! bounded chunk at a time; each chunk is handed to the sink in order, so the
//! output never depends on the number of worker threads.

mod emit;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::decision::{decide, Verdict};
use crate::lattice::{SurfaceSpec, MAX_PARAM};
use crate::{Error, Result};

pub use emit::{emit_records, emit_report, Format, RecordEmitter};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GPolicy {
    /// Every `g` in `[g_min, g_max]`.
    All { g_min: i64, g_max: i64 },
    /// `g` from `0` to the largest value with `4n(g-1) < d^2`.
    HyperbolicOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRange {
    pub n_min: i64,
    pub n_max: i64,
    pub d_min: i64,
    pub d_max: i64,
    pub g_policy: GPolicy,
}

impl ScanRange {
    pub fn new(n_min: i64, n_max: i64, d_min: i64, d_max: i64, g_policy: GPolicy) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidRange(msg));
        if !(2 <= n_min && n_min <= n_max) {
            return bad(format!("need 2 <= n_min <= n_max, got [{n_min}, {n_max}]"));
        }
        if !(1 <= d_min && d_min <= d_max) {
            return bad(format!("need 1 <= d_min <= d_max, got [{d_min}, {d_max}]"));
        }
        if let GPolicy::All { g_min, g_max } = g_policy {
            if g_min < 0 || g_max < 0 {
                return bad(format!(
                    "g bounds must be nonnegative, got [{g_min}, {g_max}]"
                ));
            }
            // g_min > g_max is an empty interval, which is allowed.
            if g_max > MAX_PARAM {
                return bad(format!("g_max = {g_max} exceeds {MAX_PARAM}"));
            }
        }
        if n_max > MAX_PARAM || d_max > MAX_PARAM {
            return bad(format!("n and d are limited to {MAX_PARAM}"));
        }
        Ok(ScanRange {
            n_min,
            n_max,
            d_min,
            d_max,
            g_policy,
        })
    }

    /// Inclusive `g` interval scanned for `(n, d)`; `None` if empty.
    pub fn g_interval(&self, n: i64, d: i64) -> Option<(i64, i64)> {
        let (lo, hi) = match self.g_policy {
            GPolicy::All { g_min, g_max } => (g_min, g_max),
            GPolicy::HyperbolicOnly => (0, hyperbolic_g_max(n, d)),
        };
        (lo <= hi).then_some((lo, hi))
    }

    /// Number of triples in the box.
    pub fn cardinality(&self) -> u128 {
        let mut total = 0u128;
        for n in self.n_min..=self.n_max {
            for d in self.d_min..=self.d_max {
                if let Some((lo, hi)) = self.g_interval(n, d) {
                    total += (hi - lo) as u128 + 1;
                }
            }
        }
        total
    }

    /// All triples in lexicographic order.
    pub fn triples(&self) -> impl Iterator<Item = (i64, i64, i64)> + '_ {
        (self.n_min..=self.n_max).flat_map(move |n| {
            (self.d_min..=self.d_max).flat_map(move |d| {
                let (lo, hi) = self.g_interval(n, d).unwrap_or((1, 0));
                (lo..=hi).map(move |g| (n, d, g))
            })
        })
    }
}

/// Largest `g >= 0` with `4n(g-1) < d^2`, i.e. `g = ceil(d^2 / 4n)`.
pub fn hyperbolic_g_max(n: i64, d: i64) -> i64 {
    let d2 = i128::from(d) * i128::from(d);
    let four_n = 4 * i128::from(n);
    let g = crate::arith::ceil_div(d2, four_n);
    debug_assert!(four_n * (g - 1) < d2 && four_n * g >= d2);
    g as i64
}

/// One row of a survey. Field order is the CSV column order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub n: i64,
    pub d: i64,
    pub g: i64,
    pub delta: i64,
    pub g_min: i64,
    pub hyperbolic: bool,
    pub deg0_m2_class: bool,
    pub closed_form: bool,
    pub brute_force: bool,
    pub witness_a: Option<i64>,
    pub witness_b: Option<i64>,
    pub witness_deg: Option<i64>,
    pub witness_sq: Option<i64>,
    pub bn_general: bool,
    pub agree: bool,
}

impl ScanRecord {
    pub const COLUMNS: [&'static str; 15] = [
        "n",
        "d",
        "g",
        "delta",
        "g_min",
        "hyperbolic",
        "deg0_m2_class",
        "closed_form",
        "brute_force",
        "witness_a",
        "witness_b",
        "witness_deg",
        "witness_sq",
        "bn_general",
        "agree",
    ];

    /// True for the characterised divergence: `delta = 0`, `g = d^2 / 4n`,
    /// and a degree-0 `(-2)`-class present.
    pub fn is_delta_zero_corner(&self) -> bool {
        let d2 = i128::from(self.d) * i128::from(self.d);
        self.delta == 0 && 4 * i128::from(self.n) * i128::from(self.g) == d2 && self.deg0_m2_class
    }

    /// A disagreement that does not contradict the closed form: either the
    /// hyperbolic `delta = 0` corner, or `delta = 0` on a lattice that is not
    /// hyperbolic and hence not the Picard lattice of any K3 surface.
    pub fn is_explained_divergence(&self) -> bool {
        self.is_delta_zero_corner() || (self.delta == 0 && !self.hyperbolic)
    }
}

impl From<&Verdict> for ScanRecord {
    fn from(v: &Verdict) -> Self {
        let w = v.brute_force;
        ScanRecord {
            n: v.spec.n(),
            d: v.spec.d(),
            g: v.spec.g(),
            delta: v.delta,
            g_min: v.genus_threshold,
            hyperbolic: v.health.hyperbolic,
            deg0_m2_class: v.health.degree_zero_minus_two_class.is_some(),
            closed_form: v.closed_form,
            brute_force: w.is_some(),
            witness_a: w.map(|w| w.class.a),
            witness_b: w.map(|w| w.class.b),
            witness_deg: w.map(|w| w.degree),
            witness_sq: w.map(|w| w.square),
            bn_general: v.bn_general_guaranteed,
            agree: v.agree,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanOptions {
    /// Worker threads; `None` uses the rayon default.
    pub threads: Option<usize>,
    /// Triples decided per parallel batch. Bounds memory.
    pub chunk_size: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            threads: None,
            chunk_size: 1 << 16,
        }
    }
}

fn decide_triple((n, d, g): (i64, i64, i64)) -> Result<Verdict> {
    SurfaceSpec::new(n, d, g)
        .and_then(|spec| decide(&spec))
        .map_err(|source| Error::AtTriple {
            n,
            d,
            g,
            source: Box::new(source),
        })
}

/// Decides every triple in `range` and feeds the verdicts to `sink` in
/// lexicographic order. Stops at the first error, which is the error of the
/// smallest failing triple.
pub fn for_each_verdict<F>(range: &ScanRange, opts: &ScanOptions, mut sink: F) -> Result<()>
where
    F: FnMut(Verdict) -> Result<()>,
{
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(threads) = opts.threads {
        builder = builder.num_threads(threads);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::Io(std::io::Error::other(e)))?;

    let chunk_size = opts.chunk_size.max(1);
    let mut triples = range.triples();
    let mut batch = Vec::with_capacity(chunk_size);
    loop {
        batch.clear();
        batch.extend(triples.by_ref().take(chunk_size));
        if batch.is_empty() {
            return Ok(());
        }
        let verdicts: Vec<Result<Verdict>> =
            pool.install(|| batch.par_iter().map(|&t| decide_triple(t)).collect());
        for v in verdicts {
            sink(v?)?;
        }
    }
}

/// Streams records to `sink` in order.
pub fn scan_with<F>(range: &ScanRange, opts: &ScanOptions, mut sink: F) -> Result<()>
where
    F: FnMut(ScanRecord) -> Result<()>,
{
    for_each_verdict(range, opts, |v| sink(ScanRecord::from(&v)))
}

pub fn scan(range: &ScanRange) -> Result<Vec<ScanRecord>> {
    let mut out = Vec::new();
    scan_with(range, &ScanOptions::default(), |r| {
        out.push(r);
        Ok(())
    })?;
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscrepancyReport {
    pub total_scanned: u64,
    /// Every record with `agree = false`, in scan order.
    pub disagreements: Vec<ScanRecord>,
    pub all_at_delta_zero: bool,
    pub all_have_deg0_m2_class: bool,
}

impl DiscrepancyReport {
    fn from_disagreements(total_scanned: u64, disagreements: Vec<ScanRecord>) -> Self {
        DiscrepancyReport {
            total_scanned,
            all_at_delta_zero: disagreements.iter().all(|r| r.delta == 0),
            all_have_deg0_m2_class: disagreements.iter().all(|r| r.deg0_m2_class),
            disagreements,
        }
    }

    /// True when every disagreement is explained by `delta = 0` (see
    /// [`ScanRecord::is_explained_divergence`]). A `false` here is either a bug
    /// or a counterexample to the closed form.
    pub fn matches_delta_zero_characterization(&self) -> bool {
        self.disagreements
            .iter()
            .all(ScanRecord::is_explained_divergence)
    }
}

pub fn verify_with(range: &ScanRange, opts: &ScanOptions) -> Result<DiscrepancyReport> {
    let mut total = 0u64;
    let mut disagreements = Vec::new();
    scan_with(range, opts, |r| {
        total += 1;
        if !r.agree {
            disagreements.push(r);
        }
        Ok(())
    })?;
    Ok(DiscrepancyReport::from_disagreements(total, disagreements))
}

pub fn verify(range: &ScanRange) -> Result<DiscrepancyReport> {
    verify_with(range, &ScanOptions::default())
}
