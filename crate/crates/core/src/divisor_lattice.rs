//! The divisor class group of the blow-up `X` of the plane at `l` collinear
//! points `p_1, ..., p_l` and one point `p_{l+1}` off their line.
//!
//! `Cl(X)` has basis `e_0` (pullback of a general line) and the exceptional
//! classes `e_1, ..., e_{l+1}`, with `e_0^2 = 1`, `e_i^2 = -1` and all mixed
//! products zero.
//!
//! A [`DivisorClass`] stores the tuple `(a_0; a_1, ..., a_{l+1})` and
//! represents `a_0 e_0 - a_1 e_1 - ... - a_{l+1} e_{l+1}`. With this sign
//! convention the fat-point class is simply `F_d = (d; m, ..., m)`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Smallest supported number of collinear points.
pub const MIN_COLLINEAR: u32 = 3;

/// The combinatorial type "l points on a line plus one point off it".
///
/// Points `1..=l` are the collinear ones, point `l + 1` is off the line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Configuration {
    l: u32,
}

impl Configuration {
    pub fn new(l: u32) -> Result<Self> {
        if l < MIN_COLLINEAR {
            return Err(Error::UnsupportedConfiguration { l });
        }
        Ok(Self { l })
    }

    /// Number of collinear points.
    pub fn l(&self) -> u32 {
        self.l
    }

    /// Total number of blown-up points, `r = l + 1`.
    pub fn num_points(&self) -> usize {
        self.l as usize + 1
    }

    /// `l (l - 1)`: symbolic powers with `m` divisible by this are the ones
    /// covered by the closed-form fast paths.
    pub fn period(&self) -> u64 {
        u64::from(self.l) * u64::from(self.l - 1)
    }

    pub fn zero(&self) -> DivisorClass {
        DivisorClass::zero(self.num_points())
    }

    /// The class `e_0` of a general line.
    pub fn e0(&self) -> DivisorClass {
        let mut class = self.zero();
        class.a0 = BigInt::one();
        class
    }

    /// The exceptional class `e_i`, `1 <= i <= l + 1`.
    pub fn exceptional(&self, i: usize) -> DivisorClass {
        assert!(
            (1..=self.num_points()).contains(&i),
            "exceptional index {i} out of range 1..={}",
            self.num_points()
        );
        let mut class = self.zero();
        class.a[i - 1] = -BigInt::one();
        class
    }

    /// `A = e_0 - e_1 - ... - e_l`, the proper transform of the line.
    pub fn collinear_line(&self) -> DivisorClass {
        let mut class = self.e0();
        for coefficient in class.a.iter_mut().take(self.l as usize) {
            *coefficient = BigInt::one();
        }
        class
    }

    /// `B_i = e_0 - e_i - e_{l+1}`, the line through `p_i` and `p_{l+1}`.
    pub fn line_through_off_point(&self, i: usize) -> DivisorClass {
        assert!(
            (1..=self.l as usize).contains(&i),
            "B_i index {i} out of range 1..={}",
            self.l
        );
        let mut class = self.e0();
        class.a[i - 1] = BigInt::one();
        class.a[self.l as usize] = BigInt::one();
        class
    }

    /// `K_X = -3 e_0 + e_1 + ... + e_{l+1}`.
    pub fn canonical_class(&self) -> DivisorClass {
        DivisorClass {
            a0: BigInt::from(-3),
            a: vec![-BigInt::one(); self.num_points()],
        }
    }

    /// `F_d = d e_0 - m (e_1 + ... + e_{l+1})`.
    pub fn fatpoint_class(&self, d: u64, m: u64) -> Result<DivisorClass> {
        if m < 1 {
            return Err(Error::InvalidInput("multiplicity m must be >= 1".into()));
        }
        Ok(DivisorClass {
            a0: BigInt::from(d),
            a: vec![BigInt::from(m); self.num_points()],
        })
    }

    /// The negative curves of `X`, in the fixed order `A, B_1..B_l, e_1..e_{l+1}`.
    pub fn neg_curves(&self) -> NegCurveSet {
        let l = self.l as usize;
        let mut curves = Vec::with_capacity(2 * l + 2);
        curves.push(NegCurve::new(
            NegCurveKind::CollinearLine,
            self.collinear_line(),
        ));
        for i in 1..=l {
            curves.push(NegCurve::new(
                NegCurveKind::LineThroughOffPoint(i),
                self.line_through_off_point(i),
            ));
        }
        for i in 1..=l + 1 {
            curves.push(NegCurve::new(
                NegCurveKind::Exceptional(i),
                self.exceptional(i),
            ));
        }
        NegCurveSet { curves }
    }

    /// Checks that `class` has the coefficient count of this configuration.
    pub fn check(&self, class: &DivisorClass) -> Result<()> {
        if class.a.len() != self.num_points() {
            return Err(Error::DimensionMismatch {
                left: class.a.len(),
                right: self.num_points(),
            });
        }
        Ok(())
    }
}

/// An element `a_0 e_0 - sum a_i e_i` of `Cl(X)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DivisorClass {
    pub a0: BigInt,
    pub a: Vec<BigInt>,
}

impl DivisorClass {
    pub fn new(a0: BigInt, a: Vec<BigInt>) -> Self {
        Self { a0, a }
    }

    pub fn from_i64(a0: i64, a: &[i64]) -> Self {
        Self {
            a0: BigInt::from(a0),
            a: a.iter().copied().map(BigInt::from).collect(),
        }
    }

    pub fn zero(num_points: usize) -> Self {
        Self {
            a0: BigInt::zero(),
            a: vec![BigInt::zero(); num_points],
        }
    }

    pub fn dim(&self) -> usize {
        self.a.len()
    }

    pub fn is_zero(&self) -> bool {
        self.a0.is_zero() && self.a.iter().all(Zero::is_zero)
    }

    /// The intersection product `x.a0 * y.a0 - sum x.a_i * y.a_i`.
    pub fn intersect(&self, other: &DivisorClass) -> Result<BigInt> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(self.intersect_unchecked(other))
    }

    pub(crate) fn intersect_unchecked(&self, other: &DivisorClass) -> BigInt {
        let mut product = &self.a0 * &other.a0;
        for (x, y) in self.a.iter().zip(&other.a) {
            product -= x * y;
        }
        product
    }

    pub fn self_intersection(&self) -> BigInt {
        self.intersect_unchecked(self)
    }

    pub fn scaled(&self, k: &BigInt) -> DivisorClass {
        DivisorClass {
            a0: &self.a0 * k,
            a: self.a.iter().map(|x| x * k).collect(),
        }
    }

    fn zip_with(&self, other: &DivisorClass, op: impl Fn(&BigInt, &BigInt) -> BigInt) -> Self {
        assert_eq!(
            self.dim(),
            other.dim(),
            "divisor classes from different configurations"
        );
        DivisorClass {
            a0: op(&self.a0, &other.a0),
            a: self.a.iter().zip(&other.a).map(|(x, y)| op(x, y)).collect(),
        }
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;

    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        self.zip_with(rhs, |x, y| x + y)
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;

    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        self.zip_with(rhs, |x, y| x - y)
    }
}

impl Add for DivisorClass {
    type Output = DivisorClass;

    fn add(self, rhs: DivisorClass) -> DivisorClass {
        &self + &rhs
    }
}

impl Sub for DivisorClass {
    type Output = DivisorClass;

    fn sub(self, rhs: DivisorClass) -> DivisorClass {
        &self - &rhs
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;

    fn neg(self) -> DivisorClass {
        DivisorClass {
            a0: -&self.a0,
            a: self.a.iter().map(|x| -x).collect(),
        }
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};", self.a0)?;
        for (i, x) in self.a.iter().enumerate() {
            let sep = if i == 0 { " " } else { ", " };
            write!(f, "{sep}{x}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NegCurveKind {
    /// `A`, the line through `p_1, ..., p_l`.
    CollinearLine,
    /// `B_i`, the line through `p_i` and `p_{l+1}`.
    LineThroughOffPoint(usize),
    /// `E_i`, the exceptional curve over `p_i`.
    Exceptional(usize),
}

impl fmt::Display for NegCurveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NegCurveKind::CollinearLine => write!(f, "A"),
            NegCurveKind::LineThroughOffPoint(i) => write!(f, "B{i}"),
            NegCurveKind::Exceptional(i) => write!(f, "E{i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NegCurve {
    pub kind: NegCurveKind,
    pub class: DivisorClass,
    pub self_intersection: BigInt,
}

impl NegCurve {
    fn new(kind: NegCurveKind, class: DivisorClass) -> Self {
        let self_intersection = class.self_intersection();
        Self {
            kind,
            class,
            self_intersection,
        }
    }
}

/// The `2l + 2` classes of irreducible curves with negative self-intersection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NegCurveSet {
    curves: Vec<NegCurve>,
}

impl NegCurveSet {
    pub fn curves(&self) -> &[NegCurve] {
        &self.curves
    }

    pub fn len(&self) -> usize {
        self.curves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, NegCurve> {
        self.curves.iter()
    }
}

impl<'a> IntoIterator for &'a NegCurveSet {
    type Item = &'a NegCurve;
    type IntoIter = std::slice::Iter<'a, NegCurve>;

    fn into_iter(self) -> Self::IntoIter {
        self.curves.iter()
    }
}
