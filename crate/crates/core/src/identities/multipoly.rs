//! Exact polynomials in up to four variables with `i128` coefficients.

use std::collections::BTreeMap;

use crate::error::{LabError, Result};

pub const MAX_VARS: usize = 4;

/// Largest total degree any product may reach.
pub const MAX_DEGREE: u32 = 16;

type Exps = [u32; MAX_VARS];

/// Sparse polynomial; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Exps, i128>,
}

fn degree_of(e: &Exps) -> u32 {
    e.iter().sum()
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables");
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: i128) -> Self {
        Self::monomial(nvars, &[], c).expect("constants have degree zero")
    }

    /// `x_i`
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut e = [0; MAX_VARS];
        e[i] = 1;
        Self::monomial(nvars, &e[..nvars], 1).expect("degree one")
    }

    /// `c · Π x_i^{e_i}`
    pub fn monomial(nvars: usize, exps: &[u32], c: i128) -> Result<Self> {
        let mut p = Self::zero(nvars);
        if exps.len() > nvars {
            return Err(LabError::InvalidArgument(format!(
                "{} exponents for {nvars} variables",
                exps.len()
            )));
        }
        let mut e = [0; MAX_VARS];
        e[..exps.len()].copy_from_slice(exps);
        let d = degree_of(&e);
        if d > MAX_DEGREE {
            return Err(LabError::DegreeOverflow {
                degree: d,
                max: MAX_DEGREE,
            });
        }
        if c != 0 {
            p.terms.insert(e, c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(degree_of).max()
    }

    /// `(exponents, coefficient)` pairs in lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], i128)> {
        self.terms.iter().map(|(e, c)| (&e[..self.nvars], *c))
    }

    fn same_space(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(LabError::InvalidArgument(format!(
                "polynomials in {} and {} variables",
                self.nvars, other.nvars
            )));
        }
        Ok(())
    }

    fn accumulate(&mut self, e: Exps, c: i128) -> Result<()> {
        let slot = self.terms.entry(e).or_insert(0);
        *slot = slot.checked_add(c).ok_or(LabError::CoefficientOverflow)?;
        if *slot == 0 {
            self.terms.remove(&e);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_space(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.accumulate(*e, *c)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1)?)
    }

    pub fn scale(&self, s: i128) -> Result<Self> {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            out.accumulate(*e, c.checked_mul(s).ok_or(LabError::CoefficientOverflow)?)?;
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_space(other)?;
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exps = std::array::from_fn(|i| ea[i] + eb[i]);
                let d = degree_of(&e);
                if d > MAX_DEGREE {
                    return Err(LabError::DegreeOverflow {
                        degree: d,
                        max: MAX_DEGREE,
                    });
                }
                out.accumulate(e, ca.checked_mul(*cb).ok_or(LabError::CoefficientOverflow)?)?;
            }
        }
        Ok(out)
    }

    /// `∂/∂x_i`
    pub fn derivative(&self, i: usize) -> Result<Self> {
        assert!(i < self.nvars, "variable index out of range");
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut d = *e;
            d[i] -= 1;
            out.accumulate(
                d,
                c.checked_mul(e[i] as i128)
                    .ok_or(LabError::CoefficientOverflow)?,
            )?;
        }
        Ok(out)
    }

    pub fn gradient(&self) -> Result<Vec<Self>> {
        (0..self.nvars).map(|i| self.derivative(i)).collect()
    }

    pub fn laplacian(&self) -> Result<Self> {
        let mut out = Self::zero(self.nvars);
        for i in 0..self.nvars {
            out = out.add(&self.derivative(i)?.derivative(i)?)?;
        }
        Ok(out)
    }

    /// `Σ_i a_i b_i`
    pub fn dot(a: &[Self], b: &[Self]) -> Result<Self> {
        let nvars = a.first().map(|p| p.nvars).unwrap_or(0);
        let mut out = Self::zero(nvars);
        for (x, y) in a.iter().zip(b) {
            out = out.add(&x.mul(y)?)?;
        }
        Ok(out)
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                *c as f64
                    * e[..self.nvars]
                        .iter()
                        .zip(x)
                        .map(|(k, xi)| xi.powi(*k as i32))
                        .product::<f64>()
            })
            .sum()
    }
}

/// Gradient and Laplacian of a polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyCalculus {
    pub gradient: Vec<MultiPoly>,
    pub laplacian: MultiPoly,
}

pub fn poly_calculus(p: &MultiPoly) -> Result<PolyCalculus> {
    Ok(PolyCalculus {
        gradient: p.gradient()?,
        laplacian: p.laplacian()?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> MultiPoly {
        MultiPoly::var(3, i)
    }

    #[test]
    fn square_calculus() {
        let p = x(0).mul(&x(0)).unwrap();
        let c = poly_calculus(&p).unwrap();
        assert_eq!(c.gradient[0], x(0).scale(2).unwrap());
        assert!(c.gradient[1].is_zero() && c.gradient[2].is_zero());
        assert_eq!(c.laplacian, MultiPoly::constant(3, 2));
    }

    #[test]
    fn harmonic_monomial() {
        let p = x(0).mul(&x(1)).unwrap();
        assert!(p.laplacian().unwrap().is_zero());
    }

    #[test]
    fn quartic_laplacian() {
        let p = MultiPoly::monomial(3, &[4], 1).unwrap();
        assert_eq!(
            p.laplacian().unwrap(),
            MultiPoly::monomial(3, &[2], 12).unwrap()
        );
    }

    #[test]
    fn no_zero_terms_stored() {
        let p = x(0).sub(&x(0)).unwrap();
        assert!(p.is_zero());
        assert_eq!(p.terms().count(), 0);
    }

    #[test]
    fn overflow_guards() {
        let big = MultiPoly::monomial(2, &[9], 1).unwrap();
        assert!(matches!(
            big.mul(&big),
            Err(LabError::DegreeOverflow { degree: 18, .. })
        ));
        let huge = MultiPoly::constant(2, i128::MAX);
        assert!(matches!(huge.scale(2), Err(LabError::CoefficientOverflow)));
        assert!(MultiPoly::monomial(2, &[17], 1).is_err());
    }

    #[test]
    fn evaluation() {
        let p = x(0)
            .mul(&x(1))
            .unwrap()
            .add(&MultiPoly::constant(3, 3))
            .unwrap();
        assert_eq!(p.eval(&[2.0, 5.0, 7.0]), 13.0);
    }
}
