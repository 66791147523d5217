//! The reverse-lexicographic generic initial ideal of `I^(m)` as a staircase
//! `(x^alpha, x^(alpha-1) y^lambda_(alpha-1), ..., x y^lambda_1, y^lambda_0)`,
//! its Newton polytope, and the limiting shape of the rescaled polytopes.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::generator_counter::GeneratorTable;

/// Minimal generators `x^i y^lambda_i` (`0 <= i < alpha`) plus `x^alpha`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GinStaircase {
    pub m: u64,
    pub alpha: u64,
    lambda: Vec<u64>,
}

impl GinStaircase {
    /// `lambda[i]` is the `y`-exponent of the generator with `x`-exponent `i`.
    /// A strict chain of length `alpha` ending at `>= 1` has `lambda_i >= alpha - i`,
    /// so every generator has degree at least `alpha`.
    pub fn new(m: u64, alpha: u64, lambda: Vec<u64>) -> Result<Self> {
        if alpha == 0 {
            return Err(Error::InvalidInput("staircase needs alpha >= 1".into()));
        }
        if lambda.len() as u64 != alpha {
            return Err(Error::InvalidInput(format!(
                "staircase with alpha = {alpha} needs {alpha} exponents, got {}",
                lambda.len()
            )));
        }
        if lambda.windows(2).any(|w| w[0] <= w[1]) || lambda[lambda.len() - 1] < 1 {
            return Err(Error::InvalidInput(format!(
                "staircase exponents {lambda:?} are not a strictly decreasing chain ending >= 1"
            )));
        }
        Ok(Self { m, alpha, lambda })
    }

    pub fn lambda(&self) -> &[u64] {
        &self.lambda
    }

    /// Exponent pairs `(i, lambda_i)` ordered by increasing `x`-exponent,
    /// ending with `(alpha, 0)`.
    pub fn generators(&self) -> Vec<(u64, u64)> {
        self.lambda
            .iter()
            .enumerate()
            .map(|(i, &y)| (i as u64, y))
            .chain(std::iter::once((self.alpha, 0)))
            .collect()
    }

    pub fn num_generators(&self) -> u64 {
        self.alpha + 1
    }
}

impl fmt::Display for GinStaircase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^{}", self.alpha)?;
        for (i, y) in self.lambda.iter().enumerate().rev() {
            match i {
                0 => write!(f, ", y^{y}")?,
                1 => write!(f, ", x y^{y}")?,
                _ => write!(f, ", x^{i} y^{y}")?,
            }
        }
        Ok(())
    }
}

/// Assigns the ascending generator degrees `d_0 <= ... <= d_alpha` to
/// `x^(alpha-k) y^(d_k - alpha + k)`.
pub fn build_staircase(t: &GeneratorTable) -> Result<GinStaircase> {
    if !t.cwl_certified {
        return Err(Error::Uncertified { l: t.l, m: t.m });
    }
    let degrees = t.degrees();
    if degrees.first() != Some(&t.alpha) {
        return Err(Error::Internal(format!(
            "least generator degree {:?} differs from alpha = {}",
            degrees.first(),
            t.alpha
        )));
    }
    let alpha = t.alpha;
    let mut lambda = vec![0; alpha as usize];
    for (k, &d) in degrees.iter().enumerate().skip(1) {
        let x = alpha - k as u64;
        lambda[x as usize] = d - x;
    }
    GinStaircase::new(t.m, alpha, lambda)
        .map_err(|e| Error::Internal(format!("assembled staircase is invalid: {e}")))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point2 {
    pub x: BigRational,
    pub y: BigRational,
}

impl Point2 {
    pub fn new(x: BigRational, y: BigRational) -> Self {
        Self { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Self::new(int(x), int(y))
    }

    pub fn from_fractions(x: (i64, i64), y: (i64, i64)) -> Self {
        Self::new(frac(x.0, x.1), frac(y.0, y.1))
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

fn int(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// The region above a convex boundary polyline running from `(x_max, 0)` to
/// `(0, y_max)`, closed off by the two axes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polytope2D {
    vertices: Vec<Point2>,
}

impl Polytope2D {
    /// Vertices of the boundary polyline, by decreasing `x`; the first lies on
    /// the `x`-axis and the last on the `y`-axis.
    pub fn new(vertices: Vec<Point2>) -> Result<Self> {
        let invalid = |why: &str| Err(Error::InvalidInput(format!("polytope boundary {why}")));
        if vertices.len() < 2 {
            return invalid("needs at least two vertices");
        }
        if vertices
            .iter()
            .any(|p| p.x.is_negative() || p.y.is_negative())
        {
            return invalid("has negative coordinates");
        }
        if !vertices[0].y.is_zero() || !vertices[vertices.len() - 1].x.is_zero() {
            return invalid("must run from the x-axis to the y-axis");
        }
        if vertices
            .windows(2)
            .any(|w| w[0].x <= w[1].x || w[0].y >= w[1].y)
        {
            return invalid("must have strictly decreasing x and increasing y");
        }
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    /// Slopes of the boundary segments, from the `x`-axis end to the `y`-axis end.
    pub fn edge_slopes(&self) -> Vec<BigRational> {
        self.vertices
            .windows(2)
            .map(|w| (&w[1].y - &w[0].y) / (&w[1].x - &w[0].x))
            .collect()
    }
}

impl fmt::Display for Polytope2D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, " -- ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

fn cross(o: &(BigInt, BigInt), a: &(BigInt, BigInt), b: &(BigInt, BigInt)) -> BigInt {
    (&a.0 - &o.0) * (&b.1 - &o.1) - (&a.1 - &o.1) * (&b.0 - &o.0)
}

/// Lower convex hull of the generator exponents, collinear points dropped.
pub fn newton_polytope(s: &GinStaircase) -> Polytope2D {
    // Generators sorted by increasing x: the hull runs (0, lambda_0) .. (alpha, 0).
    let mut hull: Vec<(BigInt, BigInt)> = Vec::new();
    for (x, y) in s.generators() {
        let p = (BigInt::from(x), BigInt::from(y));
        while hull.len() >= 2 {
            let turn = cross(&hull[hull.len() - 2], &hull[hull.len() - 1], &p);
            if turn.is_positive() {
                break;
            }
            hull.pop();
        }
        hull.push(p);
    }
    let vertices = hull
        .into_iter()
        .rev()
        .map(|(x, y)| Point2::new(BigRational::from_integer(x), BigRational::from_integer(y)))
        .collect();
    Polytope2D::new(vertices).expect("staircase hull is a valid boundary")
}

/// `(1/m) P`.
pub fn scaled_polytope(p: &Polytope2D, m: u64) -> Result<Polytope2D> {
    if m == 0 {
        return Err(Error::InvalidInput("scale factor m must be >= 1".into()));
    }
    let m = BigRational::from_integer(BigInt::from(m));
    let vertices = p
        .vertices
        .iter()
        .map(|v| Point2::new(&v.x / &m, &v.y / &m))
        .collect();
    Polytope2D::new(vertices)
}

/// Boundary `(2 - 1/l, 0) -- (1 - 1/(l-1), l/(l-1)) -- (0, l)`.
pub fn limiting_shape(l: u32) -> Result<Polytope2D> {
    if l < crate::divisor_lattice::MIN_COLLINEAR {
        return Err(Error::UnsupportedConfiguration { l });
    }
    let l = i64::from(l);
    Polytope2D::new(vec![
        Point2::new(int(2) - frac(1, l), int(0)),
        Point2::new(int(1) - frac(1, l - 1), frac(l, l - 1)),
        Point2::new(int(0), int(l)),
    ])
}

/// Shoelace area of the region between the axes and the boundary.
pub fn polytope_area(p: &Polytope2D) -> BigRational {
    let origin = Point2::new(BigRational::zero(), BigRational::zero());
    let ring: Vec<&Point2> = std::iter::once(&origin).chain(p.vertices.iter()).collect();
    let twice: BigRational = (0..ring.len())
        .map(|i| {
            let (a, b) = (ring[i], ring[(i + 1) % ring.len()]);
            &a.x * &b.y - &b.x * &a.y
        })
        .sum();
    twice / BigRational::from_integer(BigInt::from(2))
}

/// True when `p` lies on the closed segment `ab`.
pub fn on_segment(a: &Point2, b: &Point2, p: &Point2) -> bool {
    (&b.x - &a.x) * (&p.y - &a.y) == (&b.y - &a.y) * (&p.x - &a.x)
        && p.x >= a.x.clone().min(b.x.clone())
        && p.x <= a.x.clone().max(b.x.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divisor_lattice::Configuration;
    use crate::generator_counter::{closed_form_table, generator_table};
    use num_traits::One;
    use std::collections::BTreeMap;

    fn one_half() -> BigRational {
        BigRational::new(BigInt::one(), BigInt::from(2))
    }

    fn staircase(l: u32, m: u64) -> GinStaircase {
        let t = generator_table(&Configuration::new(l).unwrap(), m).unwrap();
        build_staircase(&t).unwrap()
    }

    #[test]
    fn staircase_l3_m6() {
        let s = staircase(3, 6);
        assert_eq!(s.alpha, 10);
        let mut descending = s.lambda().to_vec();
        descending.reverse();
        assert_eq!(descending, [2, 3, 4, 6, 7, 8, 9, 12, 15, 18]);
        assert_eq!(s.lambda()[0], 18);
        assert_eq!(s.num_generators(), 11);
    }

    #[test]
    fn linear_staircase() {
        let alpha = 5;
        let counts: BTreeMap<u64, u64> = [(alpha, 1), (alpha + 1, alpha)].into_iter().collect();
        let t = GeneratorTable::from_counts(3, 1, alpha, counts);
        let s = build_staircase(&t).unwrap();
        for i in 0..alpha {
            assert_eq!(s.lambda()[i as usize], alpha + 1 - i);
        }
    }

    #[test]
    fn uncertified_table_refused() {
        let counts: BTreeMap<u64, u64> = [(2, 1), (3, 5)].into_iter().collect();
        let t = GeneratorTable::from_counts(3, 7, 2, counts);
        assert!(!t.cwl_certified);
        assert_eq!(build_staircase(&t), Err(Error::Uncertified { l: 3, m: 7 }));
    }

    #[test]
    fn staircase_validation() {
        assert!(GinStaircase::new(1, 2, vec![3, 3]).is_err());
        assert!(GinStaircase::new(1, 2, vec![3]).is_err());
        assert!(GinStaircase::new(1, 3, vec![2, 1, 0]).is_err());
        assert!(GinStaircase::new(1, 3, vec![5, 1]).is_err());
        let s = GinStaircase::new(1, 3, vec![5, 3, 1]).unwrap();
        assert!(s.generators().iter().all(|&(x, y)| x + y >= s.alpha));
    }

    #[test]
    fn newton_polytope_l3_m6() {
        let p = newton_polytope(&staircase(3, 6));
        assert_eq!(
            p.vertices(),
            [
                Point2::from_ints(10, 0),
                Point2::from_ints(3, 9),
                Point2::from_ints(0, 18)
            ]
        );
        assert_eq!(p.edge_slopes()[1], int(-3));
    }

    #[test]
    fn degenerate_polytope() {
        let s = GinStaircase::new(1, 1, vec![1]).unwrap();
        let p = newton_polytope(&s);
        assert_eq!(
            p.vertices(),
            [Point2::from_ints(1, 0), Point2::from_ints(0, 1)]
        );
        assert_eq!(polytope_area(&p), one_half());
    }

    #[test]
    fn scaling() {
        let p = newton_polytope(&staircase(3, 6));
        let scaled = scaled_polytope(&p, 6).unwrap();
        assert_eq!(
            scaled.vertices(),
            [
                Point2::from_fractions((5, 3), (0, 1)),
                Point2::from_fractions((1, 2), (3, 2)),
                Point2::from_fractions((0, 1), (3, 1)),
            ]
        );
        assert_eq!(scaled_polytope(&p, 1).unwrap(), p);
        assert_eq!(
            scaled_polytope(&scaled_polytope(&p, 2).unwrap(), 3).unwrap(),
            scaled
        );
        assert!(scaled_polytope(&p, 0).is_err());
        assert_eq!(scaled, limiting_shape(3).unwrap());
    }

    #[test]
    fn limiting_shapes() {
        assert_eq!(
            limiting_shape(4).unwrap().vertices(),
            [
                Point2::from_fractions((7, 4), (0, 1)),
                Point2::from_fractions((2, 3), (4, 3)),
                Point2::from_fractions((0, 1), (4, 1)),
            ]
        );
        assert_eq!(polytope_area(&limiting_shape(3).unwrap()), int(2));
        assert_eq!(polytope_area(&limiting_shape(4).unwrap()), frac(5, 2));
        assert_eq!(
            limiting_shape(2),
            Err(Error::UnsupportedConfiguration { l: 2 })
        );
    }

    #[test]
    fn polytope_validation() {
        assert!(Polytope2D::new(vec![Point2::from_ints(1, 0)]).is_err());
        assert!(Polytope2D::new(vec![Point2::from_ints(1, 1), Point2::from_ints(0, 2)]).is_err());
        assert!(Polytope2D::new(vec![Point2::from_ints(1, 0), Point2::from_ints(1, 2)]).is_err());
    }

    #[test]
    fn staircase_points_lie_on_two_phases() {
        for l in 3..=5u32 {
            let c = Configuration::new(l).unwrap();
            for rho in 1..=2 {
                let m = rho * c.period();
                let t = closed_form_table(l, m).unwrap();
                let s = build_staircase(&t).unwrap();
                assert_eq!(s.num_generators(), t.total);
                let p = newton_polytope(&s);
                assert_eq!(p.vertices().len(), 3, "l={l} m={m}");
                let (a, j, b) = (&p.vertices()[0], &p.vertices()[1], &p.vertices()[2]);
                let lm = u64::from(l) * m;
                assert_eq!(j.x, int((m - m / (u64::from(l) - 1)) as i64));
                assert_eq!(&j.x + &j.y, int(2 * m as i64));
                assert_eq!(b.y, int(lm as i64));
                // First phase (degree > 2m) sits on the slope -l edge; the
                // second phase lies on or above the edge towards (alpha, 0).
                for (x, y) in s.generators() {
                    let q = Point2::from_ints(x as i64, y as i64);
                    if x + y > 2 * m {
                        assert!(on_segment(b, j, &q), "l={l} m={m} {q}");
                    } else {
                        let above = (&a.x - &j.x) * (&q.y - &j.y) - (&a.y - &j.y) * (&q.x - &j.x);
                        assert!(!above.is_negative(), "l={l} m={m} {q}");
                        assert!(q.x >= j.x, "l={l} m={m} {q}");
                    }
                }
                assert_eq!(p.edge_slopes()[1], int(-i64::from(l)));
                assert_eq!(
                    polytope_area(&scaled_polytope(&p, m).unwrap()),
                    frac(i64::from(l) + 1, 2)
                );
            }
        }
    }
}
