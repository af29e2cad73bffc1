//! The rank-2 lattice `ZH + ZC` with Gram matrix `[[2n, d], [d, 2g-2]]`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{add, mul, narrow};
use crate::{Error, Result};

/// Upper bound on each of `n`, `d`, `g`. Within it every quantity the crate
/// forms fits in `i128`.
pub const MAX_PARAM: i64 = 1_000_000_000;

/// The triple `(n, d, g)`: a K3 surface of degree `2n` in `P^{n+1}` containing
/// a smooth curve of degree `d` and genus `g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawSpec")]
pub struct SurfaceSpec {
    n: i64,
    d: i64,
    g: i64,
}

#[derive(Deserialize)]
struct RawSpec {
    n: i64,
    d: i64,
    g: i64,
}

impl TryFrom<RawSpec> for SurfaceSpec {
    type Error = Error;

    fn try_from(raw: RawSpec) -> Result<Self> {
        SurfaceSpec::new(raw.n, raw.d, raw.g)
    }
}

impl SurfaceSpec {
    /// Requires `2 <= n`, `1 <= d`, `0 <= g`, each at most [`MAX_PARAM`].
    pub fn new(n: i64, d: i64, g: i64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidSpec(format!("n must be at least 2, got {n}")));
        }
        if d < 1 {
            return Err(Error::InvalidSpec(format!("d must be at least 1, got {d}")));
        }
        if g < 0 {
            return Err(Error::InvalidSpec(format!(
                "g must be nonnegative, got {g}"
            )));
        }
        for (name, v) in [("n", n), ("d", d), ("g", g)] {
            if v > MAX_PARAM {
                return Err(Error::InvalidSpec(format!(
                    "{name} = {v} exceeds the supported bound {MAX_PARAM}"
                )));
            }
        }
        Ok(SurfaceSpec { n, d, g })
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn g(&self) -> i64 {
        self.g
    }

    /// `2n`, the degree of the surface.
    pub(crate) fn two_n(&self) -> i128 {
        2 * i128::from(self.n)
    }

    /// `C^2 = 2g - 2`.
    pub(crate) fn curve_square(&self) -> i128 {
        2 * i128::from(self.g) - 2
    }

    pub fn gram_matrix(&self) -> Result<[[i128; 2]; 2]> {
        let h2 = self.two_n();
        let hc = i128::from(self.d);
        let c2 = self.curve_square();
        Ok([[h2, hc], [hc, c2]])
    }

    /// The intersection pairing, extended bilinearly from the Gram matrix.
    pub fn pair(&self, x: DivisorClass, y: DivisorClass) -> Result<i128> {
        const WHAT: &str = "intersection pairing";
        let (a1, b1) = (i128::from(x.a), i128::from(x.b));
        let (a2, b2) = (i128::from(y.a), i128::from(y.b));
        let hh = mul(self.two_n(), mul(a1, a2, WHAT)?, WHAT)?;
        let mixed = add(mul(a1, b2, WHAT)?, mul(a2, b1, WHAT)?, WHAT)?;
        let hc = mul(i128::from(self.d), mixed, WHAT)?;
        let cc = mul(self.curve_square(), mul(b1, b2, WHAT)?, WHAT)?;
        add(add(hh, hc, WHAT)?, cc, WHAT)
    }

    /// `D.H = 2na + bd`.
    pub fn degree(&self, class: DivisorClass) -> Result<i128> {
        const WHAT: &str = "degree";
        let a = mul(self.two_n(), i128::from(class.a), WHAT)?;
        let b = mul(i128::from(self.d), i128::from(class.b), WHAT)?;
        add(a, b, WHAT)
    }

    /// `D^2 = 2(na^2 + dab + (g-1)b^2)`.
    pub fn self_intersection(&self, class: DivisorClass) -> Result<i128> {
        mul(2, self.half_square(class)?, "self-intersection")
    }

    /// `na^2 + dab + (g-1)b^2`, the left-hand side of inequality (II).
    pub fn half_square(&self, class: DivisorClass) -> Result<i128> {
        const WHAT: &str = "self-intersection";
        let (a, b) = (i128::from(class.a), i128::from(class.b));
        let aa = mul(i128::from(self.n), mul(a, a, WHAT)?, WHAT)?;
        let ab = mul(i128::from(self.d), mul(a, b, WHAT)?, WHAT)?;
        let bb = mul(i128::from(self.g) - 1, mul(b, b, WHAT)?, WHAT)?;
        add(add(aa, ab, WHAT)?, bb, WHAT)
    }

    /// Riemann-Roch on a K3: `chi(D) = 2 + D^2 / 2`.
    pub fn euler_characteristic(&self, class: DivisorClass) -> Result<i128> {
        add(2, self.half_square(class)?, "Euler characteristic")
    }

    /// `det Gram = 4n(g-1) - d^2`.
    pub fn discriminant(&self) -> i128 {
        let d = i128::from(self.d);
        4 * i128::from(self.n) * (i128::from(self.g) - 1) - d * d
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.discriminant() < 0
    }

    /// Sanity flags for the lattice. Reported, never enforced.
    pub fn lattice_health(&self) -> Result<LatticeHealth> {
        let discriminant = narrow(self.discriminant(), "discriminant")?;
        Ok(LatticeHealth {
            discriminant,
            hyperbolic: discriminant < 0,
            degree_zero_minus_two_class: self.degree_zero_minus_two_class()?,
        })
    }

    /// Classes orthogonal to `H` are the multiples of
    /// `P0 = (-d/e, 2n/e)` with `e = gcd(2n, d)`. Since `(tP0)^2 = t^2 P0^2`
    /// and `P0^2` is even, a `(-2)`-class among them exists iff `P0^2 = -2`,
    /// and then it is `P0` itself (up to sign).
    fn degree_zero_minus_two_class(&self) -> Result<Option<DivisorClass>> {
        let e = gcd(2 * self.n, self.d);
        let p0 = DivisorClass::new(-self.d / e, 2 * self.n / e);
        Ok((self.self_intersection(p0)? == -2).then_some(p0))
    }
}

impl fmt::Display for SurfaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S_{{{},{},{}}}", self.n, self.d, self.g)
    }
}

fn gcd(mut x: i64, mut y: i64) -> i64 {
    while y != 0 {
        (x, y) = (y, x % y);
    }
    x.abs()
}

/// The class `aH + bC`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DivisorClass {
    pub a: i64,
    pub b: i64,
}

impl DivisorClass {
    pub const ZERO: DivisorClass = DivisorClass { a: 0, b: 0 };
    /// The hyperplane class.
    pub const H: DivisorClass = DivisorClass { a: 1, b: 0 };
    /// The curve class.
    pub const C: DivisorClass = DivisorClass { a: 0, b: 1 };

    pub const fn new(a: i64, b: i64) -> Self {
        DivisorClass { a, b }
    }

    pub fn checked_add(self, other: DivisorClass) -> Option<DivisorClass> {
        Some(DivisorClass::new(
            self.a.checked_add(other.a)?,
            self.b.checked_add(other.b)?,
        ))
    }

    pub fn checked_sub(self, other: DivisorClass) -> Option<DivisorClass> {
        Some(DivisorClass::new(
            self.a.checked_sub(other.a)?,
            self.b.checked_sub(other.b)?,
        ))
    }

    pub fn checked_neg(self) -> Option<DivisorClass> {
        Some(DivisorClass::new(
            self.a.checked_neg()?,
            self.b.checked_neg()?,
        ))
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeHealth {
    /// `4n(g-1) - d^2`.
    pub discriminant: i64,
    /// Signature `(1,1)`, i.e. `discriminant < 0`.
    pub hyperbolic: bool,
    /// A class `P` with `P.H = 0` and `P^2 = -2`. Such a class cannot exist
    /// when `H` is very ample.
    pub degree_zero_minus_two_class: Option<DivisorClass>,
}

impl LatticeHealth {
    pub fn is_healthy(&self) -> bool {
        self.hyperbolic && self.degree_zero_minus_two_class.is_none()
    }
}
