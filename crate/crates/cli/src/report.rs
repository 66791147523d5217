//! Serialisable report types. Every rational is written as
//! `{"num": n, "den": d}` in lowest terms with `d > 0`; integers that do not
//! fit in an `i64` are written as decimal strings.

use std::str::FromStr;

use fatgin::{GinStaircase, Point2, Polytope2D};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
enum JsonInt {
    Small(i64),
    Big(String),
}

impl From<&BigInt> for JsonInt {
    fn from(n: &BigInt) -> Self {
        match n.to_i64() {
            Some(v) => JsonInt::Small(v),
            None => JsonInt::Big(n.to_string()),
        }
    }
}

impl TryFrom<JsonInt> for BigInt {
    type Error = String;

    fn try_from(v: JsonInt) -> Result<Self, String> {
        match v {
            JsonInt::Small(v) => Ok(BigInt::from(v)),
            JsonInt::Big(s) => BigInt::from_str(&s).map_err(|e| format!("bad integer {s:?}: {e}")),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRational {
    num: JsonInt,
    den: JsonInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawRational", into = "RawRational")]
pub struct Rational(pub BigRational);

impl TryFrom<RawRational> for Rational {
    type Error = String;

    fn try_from(raw: RawRational) -> Result<Self, String> {
        let num = BigInt::try_from(raw.num)?;
        let den = BigInt::try_from(raw.den)?;
        if !den.is_positive() {
            return Err(format!("denominator {den} must be positive"));
        }
        let r = BigRational::new(num.clone(), den.clone());
        if *r.numer() != num || *r.denom() != den {
            return Err(format!("{num}/{den} is not in lowest terms"));
        }
        Ok(Rational(r))
    }
}

impl From<Rational> for RawRational {
    fn from(r: Rational) -> Self {
        RawRational {
            num: JsonInt::from(r.0.numer()),
            den: JsonInt::from(r.0.denom()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl From<&Point2> for Point {
    fn from(p: &Point2) -> Self {
        Point {
            x: Rational(p.x.clone()),
            y: Rational(p.y.clone()),
        }
    }
}

pub fn points(p: &Polytope2D) -> Vec<Point> {
    p.vertices().iter().map(Point::from).collect()
}

/// `(x, y)` with exact fractions and no space, e.g. `(5/3,0)`.
pub fn point_label(p: &Point) -> String {
    format!("({},{})", p.x.0, p.y.0)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableRow {
    pub d: u64,
    pub v_d: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StaircaseBlock {
    pub alpha: u64,
    /// `lambda[i]` is the `y`-exponent paired with `x^i`.
    pub lambda: Vec<u64>,
    /// `[x-exponent, y-exponent]`, by increasing `x`.
    pub generators: Vec<[u64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl StaircaseBlock {
    pub fn new(s: &GinStaircase, seed: Option<u64>) -> Self {
        StaircaseBlock {
            alpha: s.alpha,
            lambda: s.lambda().to_vec(),
            generators: s.generators().into_iter().map(|(x, y)| [x, y]).collect(),
            seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Areas {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub newton_polytope: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scaled_polytope: Option<Rational>,
    pub limiting_shape: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Number of individual comparisons made.
    pub checked: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Verification {
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl Verification {
    pub fn new(checks: Vec<Check>) -> Self {
        Verification {
            passed: checks.iter().all(|c| c.passed),
            checks,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub l: u32,
    pub m: u64,
    pub alpha: u64,
    pub total: u64,
    pub cwl_certified: bool,
    pub generator_table: Vec<TableRow>,
    /// Present only when the generator table certifies componentwise linearity.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub staircase: Option<StaircaseBlock>,
    /// Empirical staircase from the linear-algebra oracle, for uncertified `m`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_staircase: Option<StaircaseBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub newton_polytope: Option<Vec<Point>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scaled_polytope: Option<Vec<Point>>,
    pub limiting_shape: Vec<Point>,
    pub areas: Areas,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<Verification>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Overlay {
    pub m: u64,
    pub vertices: Vec<Point>,
    pub coincides: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShapeReport {
    pub schema_version: u32,
    pub l: u32,
    pub vertices: Vec<Point>,
    pub area: Rational,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub overlay: Option<Overlay>,
}
