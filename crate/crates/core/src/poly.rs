//! Univariate polynomials over a finite field.
//!
//! Coefficients are stored low degree first with no trailing zeros, so the
//! zero polynomial is the empty vector and `degree()` returns `None` for it.
//! Besides ring arithmetic this module provides the two operations the rest
//! of the crate leans on: reduction modulo `x^q - x` (which preserves the
//! induced function on `F_q` while capping the degree at `q - 1`) and
//! Lagrange interpolation.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};

/// A univariate polynomial with coefficients in a single field, low degree
/// first, normalized (no trailing zero coefficients).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<FieldElement>,
}

impl UniPoly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    /// Builds a polynomial from coefficients (low degree first), stripping
    /// trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    /// Builds a polynomial from canonical element indices.
    pub fn from_indices(field: &Field, indices: &[u32]) -> Self {
        Self::from_coeffs(indices.iter().map(|&i| field.element(i)).collect())
    }

    /// The monomial `c * x^e`.
    pub fn monomial(c: FieldElement, e: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = Vec::with_capacity(e + 1);
        coeffs.resize(e, c.zero_like());
        coeffs.push(c);
        UniPoly { coeffs }
    }

    /// The constant polynomial `c`.
    pub fn constant(c: FieldElement) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// Coefficients, low degree first (empty for the zero polynomial).
    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Coefficient indices, low degree first.
    pub fn coeff_indices(&self) -> Vec<u32> {
        self.coeffs.iter().map(|c| c.index()).collect()
    }

    /// Coefficient of `x^e`, which is zero beyond the stored length.
    pub fn coeff(&self, e: usize, field: &Field) -> FieldElement {
        self.coeffs.get(e).copied().unwrap_or_else(|| field.zero())
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Leading coefficient, or `None` for the zero polynomial.
    pub fn leading(&self) -> Option<FieldElement> {
        self.coeffs.last().copied()
    }

    /// True for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Horner evaluation at `x`.
    pub fn eval(&self, field: &Field, x: FieldElement) -> FieldElement {
        let mut acc = field.zero();
        for &c in self.coeffs.iter().rev() {
            acc = field.add(field.mul(acc, x), c);
        }
        acc
    }

    /// Sum of two polynomials.
    pub fn add(&self, field: &Field, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(field.add(self.coeff(i, field), other.coeff(i, field)));
        }
        UniPoly::from_coeffs(out)
    }

    /// Difference of two polynomials.
    pub fn sub(&self, field: &Field, other: &UniPoly) -> UniPoly {
        self.add(field, &other.scale(field, field.neg(field.one())))
    }

    /// Scalar multiple.
    pub fn scale(&self, field: &Field, c: FieldElement) -> UniPoly {
        UniPoly::from_coeffs(self.coeffs.iter().map(|&a| field.mul(a, c)).collect())
    }

    /// Schoolbook product.
    pub fn mul(&self, field: &Field, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = field.add(out[i + j], field.mul(a, b));
            }
        }
        UniPoly::from_coeffs(out)
    }

    /// Reduction modulo `x^q - x`: every monomial `x^e` with `e >= q` is
    /// folded to `x^{((e - 1) mod (q - 1)) + 1}`, and the constant term is
    /// left alone. The result has degree at most `q - 1` and induces the
    /// same function on `F_q`.
    pub fn reduce_mod_qx(&self, field: &Field) -> UniPoly {
        let q = field.q() as usize;
        if self.coeffs.len() <= q {
            return self.clone();
        }
        let mut out = vec![field.zero(); q];
        for (e, &c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let target = if e == 0 || e < q {
                e
            } else {
                (e - 1) % (q - 1) + 1
            };
            out[target] = field.add(out[target], c);
        }
        UniPoly::from_coeffs(out)
    }

    /// `self^e` reduced modulo `x^q - x`, by square-and-multiply with a
    /// reduction after every product so intermediate degrees stay below
    /// `2(q - 1)`. Because the result has degree at most `q - 1` and two such
    /// polynomials inducing the same function on `F_q` are equal, the interim
    /// folding is harmless.
    pub fn pow_mod_qx(&self, field: &Field, e: u64) -> UniPoly {
        let mut acc = UniPoly::constant(field.one());
        let mut base = self.reduce_mod_qx(field);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(field, &base).reduce_mod_qx(field);
            }
            base = base.mul(field, &base).reduce_mod_qx(field);
            e >>= 1;
        }
        acc
    }

    /// Lagrange interpolation through `points`, whose abscissas must be
    /// pairwise distinct. Returns the unique polynomial of degree less than
    /// `points.len()` through them.
    pub fn interpolate(field: &Field, points: &[(FieldElement, FieldElement)]) -> Result<UniPoly> {
        let n = points.len();
        for (i, (xi, _)) in points.iter().enumerate() {
            for (xj, _) in points.iter().skip(i + 1) {
                if xi == xj {
                    return Err(Error::DuplicateAbscissa(xi.index()));
                }
            }
        }
        if n == 0 {
            return Ok(UniPoly::zero());
        }
        // Full product P(x) = prod (x - x_i), then each basis numerator is
        // P / (x - x_i) by synthetic division: O(n^2) overall.
        let mut master = vec![field.one()];
        for (xi, _) in points {
            let mut next = vec![field.zero(); master.len() + 1];
            for (d, &c) in master.iter().enumerate() {
                next[d + 1] = field.add(next[d + 1], c);
                next[d] = field.sub(next[d], field.mul(c, *xi));
            }
            master = next;
        }
        let mut acc = vec![field.zero(); n];
        for (xi, yi) in points {
            // Synthetic division of master by (x - xi): quotient of degree n-1.
            let mut quot = vec![field.zero(); n];
            let mut carry = field.zero();
            for d in (0..=n).rev() {
                let c = field.add(master[d], field.mul(carry, *xi));
                if d > 0 {
                    quot[d - 1] = c;
                }
                carry = c;
            }
            let denom = {
                let mut acc = field.one();
                for (xj, _) in points {
                    if xj != xi {
                        acc = field.mul(acc, field.sub(*xi, *xj));
                    }
                }
                acc
            };
            let w = field.mul(*yi, field.inv(denom));
            for d in 0..n {
                acc[d] = field.add(acc[d], field.mul(quot[d], w));
            }
        }
        Ok(UniPoly::from_coeffs(acc))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| match e {
                0 => format!("{}", c.index()),
                1 => format!("{}*x", c.index()),
                _ => format!("{}*x^{}", c.index(), e),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}
