//! Hilbert functions and minimal-generator counts of `I^(m)`.
//!
//! `H_{I^(m)}(d) = h^0(F_d)`. The number of degree-`(d+1)` minimal generators
//! is the cokernel dimension `s(F_d, e_0)` of `I_d (x) R_1 -> I_{d+1}`, which
//! for this configuration is
//!
//! * `h^0(F_{d+1})` when `F_d` is not effective, and
//! * `h^0(F_{d+1}) - h^0(H_d + e_0)` otherwise, `H_d` the nef reduction of `F_d`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::divisor_lattice::Configuration;
use crate::error::{Error, Result};
use crate::nef_reduction::{h0, h0_of_nef, reduce_to_nef};

/// Minimal-generator counts of `I^(m)` by degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorTable {
    pub l: u32,
    pub m: u64,
    /// Least degree of a nonzero element of `I^(m)`.
    pub alpha: u64,
    /// Degree `d` to `v_d`; only nonzero counts are stored.
    pub counts: BTreeMap<u64, u64>,
    pub total: u64,
    /// `alpha == total - 1`, which certifies componentwise linearity. A
    /// false value means "uncertified", not "not componentwise linear".
    pub cwl_certified: bool,
}

impl GeneratorTable {
    pub fn from_counts(l: u32, m: u64, alpha: u64, counts: BTreeMap<u64, u64>) -> Self {
        let counts: BTreeMap<u64, u64> = counts.into_iter().filter(|&(_, v)| v > 0).collect();
        let total = counts.values().sum();
        Self {
            l,
            m,
            alpha,
            counts,
            total,
            cwl_certified: total >= 1 && alpha == total - 1,
        }
    }

    pub fn count(&self, d: u64) -> u64 {
        self.counts.get(&d).copied().unwrap_or(0)
    }

    /// Generator degrees as an ascending multiset.
    pub fn degrees(&self) -> Vec<u64> {
        self.counts
            .iter()
            .flat_map(|(&d, &v)| std::iter::repeat_n(d, v as usize))
            .collect()
    }

    pub fn max_degree(&self) -> Option<u64> {
        self.counts.keys().next_back().copied()
    }
}

/// Degrees `d >= lm` contribute no generators in degree `d + 1`.
pub fn scan_ceiling(c: &Configuration, m: u64) -> u64 {
    u64::from(c.l()) * m
}

/// `dim I^(m)_d`, the degree-`d` piece of the ideal (not of the quotient).
pub fn hilbert_function(c: &Configuration, m: u64, d: u64) -> Result<BigInt> {
    h0(c, &c.fatpoint_class(d, m)?)
}

/// `v_{d+1}(I^(m))`.
pub fn next_degree_gen_count(c: &Configuration, m: u64, d: u64) -> Result<u64> {
    let next = h0(c, &c.fatpoint_class(d + 1, m)?)?;
    let reduction = reduce_to_nef(c, &c.fatpoint_class(d, m)?)?;
    let count = match reduction.nef_class() {
        None => next,
        Some(h) => next - h0_of_nef(c, &(h + &c.e0()))?,
    };
    to_count(count, m, d + 1)
}

fn to_count(count: BigInt, m: u64, degree: u64) -> Result<u64> {
    if count.is_negative() {
        return Err(Error::Internal(format!(
            "negative generator count {count} in degree {degree} for m = {m}"
        )));
    }
    count.to_u64().ok_or_else(|| {
        Error::InvalidInput(format!("generator count {count} does not fit in 64 bits"))
    })
}

/// Scans `d = 0..=lm` and records `v_{d+1}` for each.
pub fn generator_table(c: &Configuration, m: u64) -> Result<GeneratorTable> {
    let top = scan_ceiling(c, m);
    let mut counts = BTreeMap::new();
    let mut alpha = None;
    let mut current = hilbert_function(c, m, 0)?;
    if !current.is_zero() {
        alpha = Some(0);
        counts.insert(0, to_count(current.clone(), m, 0)?);
    }
    for d in 0..=top {
        let next = hilbert_function(c, m, d + 1)?;
        if alpha.is_none() && !next.is_zero() {
            alpha = Some(d + 1);
        }
        let reduction = reduce_to_nef(c, &c.fatpoint_class(d, m)?)?;
        let count = match reduction.nef_class() {
            None => next.clone(),
            Some(h) => &next - h0_of_nef(c, &(h + &c.e0()))?,
        };
        let count = to_count(count, m, d + 1)?;
        if count > 0 {
            counts.insert(d + 1, count);
        }
        current = next;
    }
    debug_assert!(!current.is_zero());
    let alpha = alpha.ok_or_else(|| {
        Error::Internal(format!("I^({m}) has no elements up to degree {}", top + 1))
    })?;
    Ok(GeneratorTable::from_counts(c.l(), m, alpha, counts))
}

/// The generator table read off from its closed form; requires `l (l - 1) | m`.
///
/// Writing `m = rho l (l - 1)`:
///
/// * one generator in degree `2m - m/l`;
/// * `l` generators in degree `2m - m/l + 1`;
/// * `l` generators in each degree `2m - (p + w(l-1)) + 1` with either
///   `w = 0, 2 <= p <= l - 2` or `1 <= w <= rho - 1, p in {0, 2, ..., l - 2}`;
/// * `l + 1` generators in each degree `2m - w(l-1)`, `0 <= w <= rho - 1`;
/// * one generator in each degree `jm + w(l-1) + l - 1`, `2 <= j <= l - 1`,
///   `0 <= w <= rho l - 1`.
pub fn closed_form_table(l: u32, m: u64) -> Result<GeneratorTable> {
    let c = Configuration::new(l)?;
    if m == 0 || !m.is_multiple_of(c.period()) {
        return Err(Error::Precondition(format!(
            "closed form needs l(l-1) = {} to divide m = {m}",
            c.period()
        )));
    }
    let l = u64::from(l);
    let rho = m / c.period();
    let alpha = 2 * m - m / l;
    let mut counts = BTreeMap::new();
    let mut add = |degree: u64, n: u64| *counts.entry(degree).or_insert(0) += n;

    add(alpha, 1);
    add(alpha + 1, l);
    for p in 2..=l - 2 {
        add(2 * m - p + 1, l);
    }
    for w in 1..rho {
        for p in std::iter::once(0).chain(2..=l - 2) {
            add(2 * m - (p + w * (l - 1)) + 1, l);
        }
    }
    for w in 0..rho {
        add(2 * m - w * (l - 1), l + 1);
    }
    for j in 2..l {
        for w in 0..rho * l {
            add(j * m + w * (l - 1) + l - 1, 1);
        }
    }
    Ok(GeneratorTable::from_counts(c.l(), m, alpha, counts))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(l: u32) -> Configuration {
        Configuration::new(l).unwrap()
    }

    fn map(entries: &[(u64, u64)]) -> BTreeMap<u64, u64> {
        entries.iter().copied().collect()
    }

    #[test]
    fn hilbert_examples() {
        let c = cfg(3);
        assert_eq!(hilbert_function(&c, 6, 9).unwrap(), BigInt::from(0));
        assert_eq!(hilbert_function(&c, 6, 10).unwrap(), BigInt::from(1));
        assert_eq!(hilbert_function(&c, 6, 11).unwrap(), BigInt::from(6));
        assert_eq!(hilbert_function(&c, 6, 12).unwrap(), BigInt::from(16));
        assert!(hilbert_function(&c, 0, 4).is_err());
    }

    #[test]
    fn next_degree_examples() {
        let c = cfg(3);
        assert_eq!(next_degree_gen_count(&c, 6, 11).unwrap(), 4);
        assert_eq!(next_degree_gen_count(&c, 6, 9).unwrap(), 1);
        for d in 18..40 {
            assert_eq!(next_degree_gen_count(&c, 6, d).unwrap(), 0);
        }
    }

    #[test]
    fn table_l3_m6() {
        let t = generator_table(&cfg(3), 6).unwrap();
        assert_eq!(t.alpha, 10);
        assert_eq!(
            t.counts,
            map(&[(10, 1), (11, 3), (12, 4), (14, 1), (16, 1), (18, 1)])
        );
        assert_eq!(t.total, 11);
        assert!(t.cwl_certified);
        assert_eq!(t.degrees(), [10, 11, 11, 11, 12, 12, 12, 12, 14, 16, 18]);
    }

    #[test]
    fn table_l4_m12() {
        let t = generator_table(&cfg(4), 12).unwrap();
        assert_eq!(t.alpha, 21);
        assert_eq!(t.total, 22);
        assert!(t.cwl_certified);
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(
            closed_form_table(3, 6).unwrap(),
            generator_table(&cfg(3), 6).unwrap()
        );
        let t = closed_form_table(3, 12).unwrap();
        assert_eq!(t.count(24), 4);
        assert_eq!(t.count(22), 4);
        let t = closed_form_table(5, 20).unwrap();
        assert_eq!(t.alpha, 36);
        assert_eq!(t.count(36), 1);
        assert!(matches!(
            closed_form_table(3, 4),
            Err(Error::Precondition(_))
        ));
        assert!(closed_form_table(2, 2).is_err());
    }

    #[test]
    fn closed_form_matches_scan() {
        for l in 3..=5 {
            for rho in 1..=2 {
                let m = rho * cfg(l).period();
                let scan = generator_table(&cfg(l), m).unwrap();
                assert_eq!(closed_form_table(l, m).unwrap(), scan, "l={l} m={m}");
                assert!(scan.cwl_certified, "l={l} m={m}");
            }
        }
    }

    #[test]
    fn table_invariants_for_general_m() {
        for l in 3..=5 {
            let c = cfg(l);
            for m in 1..=14 {
                let t = generator_table(&c, m).unwrap();
                assert!(t.count(t.alpha) >= 1, "l={l} m={m}");
                assert_eq!(t.counts.keys().next(), Some(&t.alpha));
                assert!(t.max_degree().unwrap() <= u64::from(l) * m, "l={l} m={m}");
                for (&d, &v) in &t.counts {
                    let dim = hilbert_function(&c, m, d).unwrap();
                    assert!(BigInt::from(v) <= dim, "l={l} m={m} d={d}");
                }
            }
        }
    }

    #[test]
    fn uncertified_for_m5() {
        let t = generator_table(&cfg(3), 5).unwrap();
        assert_eq!(t.alpha + 1 == t.total, t.cwl_certified);
    }
}
