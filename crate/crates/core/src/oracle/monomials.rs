//! Monomials in `x, y, z` and the reverse lexicographic order with `x > y > z`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

/// Exponents `[x, y, z]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial(pub [u32; 3]);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn times_variable(&self, var: usize) -> Monomial {
        let mut e = self.0;
        e[var] += 1;
        Monomial(e)
    }

    /// `self / var`, if `var` divides `self`.
    pub fn divided_by_variable(&self, var: usize) -> Option<Monomial> {
        let mut e = self.0;
        e[var] = e[var].checked_sub(1)?;
        Some(Monomial(e))
    }

    /// Degree-reverse-lexicographic comparison: higher degree first, then the
    /// smaller `z` exponent wins, then the smaller `y` exponent.
    pub fn revlex_cmp(&self, other: &Monomial) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0[2].cmp(&self.0[2]))
            .then_with(|| other.0[1].cmp(&self.0[1]))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (name, &e) in ["x", "y", "z"].iter().zip(&self.0) {
            if e == 0 {
                continue;
            }
            if wrote {
                write!(f, " ")?;
            }
            if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// All monomials of one degree, largest first.
#[derive(Debug, Clone)]
pub struct MonomialOrderContext {
    degree: u32,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl MonomialOrderContext {
    pub fn new(degree: u32) -> Self {
        let mut monomials = Vec::with_capacity(((degree + 1) * (degree + 2) / 2) as usize);
        // Largest first: z exponent ascending, then y exponent ascending.
        for z in 0..=degree {
            for y in 0..=degree - z {
                monomials.push(Monomial([degree - z - y, y, z]));
            }
        }
        let index = monomials.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        Self {
            degree,
            monomials,
            index,
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    /// Index 0 is `x^d`, the last index is `z^d`.
    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}
