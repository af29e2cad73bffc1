//! Decision procedures for the existence of a reducible or non-reduced
//! hyperplane section.
//!
//! Such a section exists iff some class `D = aH + bC` satisfies
//!
//! ```text
//! (I)   0 < 2na + bd <= n
//! (II)  na^2 + dab + (g-1)b^2 >= -1
//! ```
//!
//! Three routes decide this:
//!
//! * [`brute_force_decide`] walks `b` outward from `1` and solves (I) for the
//!   unique admissible `a` ([`forced_a`]), checking (II) verbatim.
//! * [`lemma_branch`] tests a single candidate `a1*H + C` or `a1*H - C`.
//! * [`closed_form_decide`] compares `g` with [`genus_threshold`].
//!
//! On a hyperbolic lattice with `delta > 0` all three agree. When `delta = 0`,
//! (I) has no solution at all, yet the closed form still answers "reducible"
//! at `g = d^2 / 4n`; that triple always carries a degree-0 `(-2)`-class, and
//! [`decide`] reports the disagreement instead of hiding it.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{ceil_div, isqrt_floor, narrow, residue};
use crate::lattice::{DivisorClass, LatticeHealth, SurfaceSpec};
use crate::{Error, Result};

/// Distance from `d` to the nearest multiple of `2n`. Always in `[0, n]`.
pub fn delta(n: i64, d: i64) -> i64 {
    debug_assert!(n >= 2 && d >= 1);
    let two_n = 2 * i128::from(n);
    let r = residue(i128::from(d), two_n);
    // min(r, 2n - r) <= n, so the cast is lossless.
    r.min(two_n - r) as i64
}

/// `(d^2 - delta^2) / 4n`.
///
/// Writing `d = 2nq + delta` or `d = 2nq - delta` gives
/// `d^2 - delta^2 = 4n(nq^2 +- q*delta)`, so the division is exact.
pub fn genus_threshold(n: i64, d: i64) -> Result<i64> {
    let d2 = i128::from(d).checked_mul(i128::from(d));
    let dl = i128::from(delta(n, d));
    let num = d2
        .and_then(|d2| d2.checked_sub(dl * dl))
        .ok_or(Error::Overflow("genus threshold"))?;
    let four_n = 4 * i128::from(n);
    debug_assert_eq!(num % four_n, 0);
    narrow(num / four_n, "genus threshold")
}

/// True iff `g >= (d^2 - delta^2) / 4n`.
pub fn closed_form_decide(spec: &SurfaceSpec) -> Result<bool> {
    Ok(spec.g() >= genus_threshold(spec.n(), spec.d())?)
}

/// Negation of [`closed_form_decide`]: a general hyperplane section is then a
/// Brill-Noether general curve.
pub fn bn_general(spec: &SurfaceSpec) -> Result<bool> {
    Ok(!closed_form_decide(spec)?)
}

/// The unique `a` with `0 < 2na + bd <= n`, if any.
///
/// With `eps = bd mod 2n` in `[0, 2n)`, the degree `2na + bd` ranges over
/// `eps + 2nZ`, and `(0, n]` contains a member of that coset iff
/// `1 <= eps <= n`. The member is `eps` itself, hit by `a = (eps - bd) / 2n`,
/// which equals `ceil(-bd / 2n)`.
pub fn forced_a(n: i64, d: i64, b: i64) -> Option<i128> {
    let two_n = 2 * i128::from(n);
    let bd = i128::from(b) * i128::from(d);
    let eps = residue(bd, two_n);
    if (1..=i128::from(n)).contains(&eps) {
        Some((eps - bd) / two_n)
    } else {
        None
    }
}

/// A solution `(a, b)` of (I) and (II).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub class: DivisorClass,
    /// `2na + bd`, in `(0, n]`.
    pub degree: i64,
    /// `D^2 >= -2`.
    pub square: i64,
    /// `2n - degree`.
    pub complement_degree: i64,
}

impl Witness {
    /// Checks (I) and (II) verbatim and builds the witness, or returns `None`
    /// if `class` is not a solution.
    pub fn check(spec: &SurfaceSpec, class: DivisorClass) -> Result<Option<Witness>> {
        let degree = spec.degree(class)?;
        if !(0 < degree && degree <= i128::from(spec.n())) {
            return Ok(None);
        }
        let half = spec.half_square(class)?;
        if half < -1 {
            return Ok(None);
        }
        Ok(Some(Witness {
            class,
            degree: narrow(degree, "witness degree")?,
            square: narrow(2 * half, "witness square")?,
            complement_degree: narrow(spec.two_n() - degree, "complement degree")?,
        }))
    }
}

/// Largest `B >= 0` with `B^2 (d^2 - 4n(g-1)) <= n^2 + 4n`.
///
/// For a solution with `b != 0`, put `eps = 2na + bd`, so `1 <= eps <= n` by
/// (I). Completing the square,
/// `4n(na^2 + dab + (g-1)b^2) = eps^2 - b^2 (d^2 - 4n(g-1))`, and (II) turns
/// into `b^2 (d^2 - 4n(g-1)) <= eps^2 + 4n <= n^2 + 4n`. On a hyperbolic
/// lattice the bracket is positive, which bounds `|b|`.
pub fn search_bound(spec: &SurfaceSpec) -> Result<i64> {
    if !spec.is_hyperbolic() {
        return Err(not_hyperbolic(spec));
    }
    let gap = -spec.discriminant();
    let n = i128::from(spec.n());
    let budget = n * n + 4 * n;
    narrow(isqrt_floor(budget / gap), "search bound")
}

fn not_hyperbolic(spec: &SurfaceSpec) -> Error {
    Error::NotHyperbolic {
        n: spec.n(),
        d: spec.d(),
        g: spec.g(),
    }
}

/// Exhaustive search for a solution of (I) and (II).
///
/// Scans `1 <= |b| <= max(B, 1)` with `B` from [`search_bound`]; `b = 0` is
/// skipped because (I) would need `0 < 2na <= n < 2n`. The first hit in the
/// order `b = 1, -1, 2, -2, ...` is returned.
pub fn brute_force_decide(spec: &SurfaceSpec) -> Result<Option<Witness>> {
    let bound = search_bound(spec)?;
    search_witness(spec, bound.max(1))
}

fn search_witness(spec: &SurfaceSpec, max_abs_b: i64) -> Result<Option<Witness>> {
    for magnitude in 1..=max_abs_b {
        for b in [magnitude, -magnitude] {
            let Some(a) = forced_a(spec.n(), spec.d(), b) else {
                continue;
            };
            let class = DivisorClass::new(narrow(a, "forced a")?, b);
            if let Some(w) = Witness::check(spec, class)? {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// `r <= n`: candidate `a1*H + C` with `a1 = ceil(-d / 2n)`.
    RLeN,
    /// `r > n`: candidate `a1*H - C` with `a1 = ceil(d / 2n)`.
    RGtN,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::RLeN => "r <= n",
            Branch::RGtN => "r > n",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaBranch {
    /// `d mod 2n`, in `[0, 2n)`.
    pub r: i64,
    pub branch: Branch,
    pub a1: i64,
    pub candidate: DivisorClass,
    /// `candidate^2 >= -2`.
    pub condition_holds: bool,
}

/// Reduces the search to the single candidate selected by `r = d mod 2n`.
/// The candidate always has degree `delta(n, d)`.
pub fn lemma_branch(spec: &SurfaceSpec) -> Result<LemmaBranch> {
    let two_n = spec.two_n();
    let d = i128::from(spec.d());
    let r = residue(d, two_n);
    let (branch, a1, b) = if r <= i128::from(spec.n()) {
        (Branch::RLeN, ceil_div(-d, two_n), 1)
    } else {
        (Branch::RGtN, ceil_div(d, two_n), -1)
    };
    let candidate = DivisorClass::new(narrow(a1, "lemma a1")?, b);
    Ok(LemmaBranch {
        r: narrow(r, "residue")?,
        branch,
        a1: candidate.a,
        candidate,
        condition_holds: spec.self_intersection(candidate)? >= -2,
    })
}

/// The two halves of `H = D + (H - D)` for a witness `D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Splitting {
    pub part: DivisorClass,
    pub part_degree: i64,
    pub complement: DivisorClass,
    pub complement_degree: i64,
}

pub fn splitting_witness(spec: &SurfaceSpec, witness: &Witness) -> Result<Splitting> {
    let complement = DivisorClass::H
        .checked_sub(witness.class)
        .ok_or(Error::Overflow("splitting complement"))?;
    let part_degree = narrow(spec.degree(witness.class)?, "splitting degree")?;
    let complement_degree = narrow(spec.degree(complement)?, "splitting degree")?;
    debug_assert_eq!(i128::from(part_degree + complement_degree), spec.two_n());
    Ok(Splitting {
        part: witness.class,
        part_degree,
        complement,
        complement_degree,
    })
}

/// Every procedure's answer for one triple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub spec: SurfaceSpec,
    pub delta: i64,
    pub genus_threshold: i64,
    /// Closed-form answer: a reducible or non-reduced section exists.
    pub closed_form: bool,
    pub brute_force: Option<Witness>,
    pub lemma: LemmaBranch,
    pub bn_general_guaranteed: bool,
    pub health: LatticeHealth,
    /// `closed_form` iff `brute_force` found a witness.
    pub agree: bool,
}

/// Runs every procedure. Disagreement is recorded in `agree`, not raised.
///
/// On a non-hyperbolic lattice the quadratic form in (II) is positive
/// semidefinite, so (II) holds for every class and the search only needs to
/// find some `b` satisfying (I). Such a `b` exists iff `delta > 0`, and then
/// `b = 1` or `b = -1` already works; the search is cut at `|b| = 1`, which
/// returns the same first witness an unbounded search would.
pub fn decide(spec: &SurfaceSpec) -> Result<Verdict> {
    let health = spec.lattice_health()?;
    let genus_threshold = genus_threshold(spec.n(), spec.d())?;
    let closed_form = spec.g() >= genus_threshold;
    let brute_force = if health.hyperbolic {
        brute_force_decide(spec)?
    } else {
        search_witness(spec, 1)?
    };
    Ok(Verdict {
        spec: *spec,
        delta: delta(spec.n(), spec.d()),
        genus_threshold,
        closed_form,
        brute_force,
        lemma: lemma_branch(spec)?,
        bn_general_guaranteed: !closed_form,
        health,
        agree: closed_form == brute_force.is_some(),
    })
}
