//! Generalized Vandermonde determinants.
//!
//! For a univariate `f` and `k` evaluation points `(a_1, .., a_k)`, the
//! generalized Vandermonde determinant `D_f` is the determinant of the
//! `k x k` matrix whose rows are `1, x, .., x^{k-2}, f(x)` evaluated at the
//! points. It factors exactly as
//!
//! `D_f = C_f(a_1, .., a_k) * prod_{i < j} (a_j - a_i)`
//!
//! where the *companion* `C_f = sum_{i >= k-1} f_i h_{i-(k-1)}` is a
//! complete-symmetric combination built from the coefficients of `f` at
//! degree `k - 1` and above. Counting distinct-point zeros of `D_f` is
//! therefore the same as counting distinct-point zeros of `C_f`, which is
//! the fast path used throughout; the direct determinant-per-subset route is
//! kept as an independent oracle.

use crate::combin::{binomial, factorial, ColexSubsets};
use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};
use crate::matrix::Matrix;
use crate::poly::UniPoly;
use crate::symhyp::{CompleteSymPoly, CountKind, CountMethod, PointCount, DEFAULT_BUDGET};

/// The companion combination of a polynomial: zero when `deg f <= k - 2`
/// (then `D_f` vanishes identically), otherwise a complete-symmetric
/// combination of degree `deg f - (k - 1)` in `k` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Companion {
    /// `deg f <= k - 2`: the determinant vanishes for every point tuple.
    Zero,
    /// `deg f >= k - 1`: the nonzero companion combination.
    Sym(CompleteSymPoly),
}

impl Companion {
    /// Evaluates the companion at a `k`-tuple.
    pub fn eval(&self, field: &Field, xs: &[FieldElement]) -> FieldElement {
        match self {
            Companion::Zero => field.zero(),
            Companion::Sym(h) => h.eval(field, xs),
        }
    }

    /// The inner combination, if nonzero.
    pub fn as_sym(&self) -> Option<&CompleteSymPoly> {
        match self {
            Companion::Zero => None,
            Companion::Sym(h) => Some(h),
        }
    }
}

/// Builds the companion `C_f` of `f` in `k` variables: coefficients
/// `(f_{k-1}, .., f_d)` as a complete-symmetric combination, or
/// [`Companion::Zero`] when `deg f <= k - 2`.
pub fn companion(field: &Field, f: &UniPoly, k: usize) -> Companion {
    let d = match f.degree() {
        Some(d) if d >= k - 1 => d,
        _ => return Companion::Zero,
    };
    let coeffs: Vec<FieldElement> = (k - 1..=d).map(|i| f.coeff(i, field)).collect();
    Companion::Sym(CompleteSymPoly::new(k, coeffs).expect("leading coefficient of f is nonzero"))
}

/// A polynomial together with a fixed matrix size `k`, ready to evaluate
/// generalized Vandermonde determinants. The polynomial is reduced modulo
/// `x^q - x` on construction (the determinant depends only on the function).
#[derive(Clone, Debug)]
pub struct GenVanderInstance {
    field: Field,
    f: UniPoly,
    k: usize,
}

impl GenVanderInstance {
    /// Creates an instance; requires `2 <= k <= q`.
    pub fn new(field: &Field, f: UniPoly, k: usize) -> Result<Self> {
        let q = field.q() as usize;
        if k < 2 || k > q {
            return Err(Error::Hypothesis(format!(
                "matrix size k = {k} must lie in [2, q = {q}]"
            )));
        }
        Ok(GenVanderInstance {
            field: field.clone(),
            f: f.reduce_mod_qx(field),
            k,
        })
    }

    /// The (reduced) polynomial.
    pub fn poly(&self) -> &UniPoly {
        &self.f
    }

    /// The matrix size.
    pub fn k(&self) -> usize {
        self.k
    }

    /// The `k x k` matrix with rows `1, x, .., x^{k-2}, f(x)` at the given
    /// points. Panics unless exactly `k` points are supplied.
    pub fn matrix_at(&self, alphas: &[FieldElement]) -> Matrix {
        assert_eq!(alphas.len(), self.k, "need exactly k evaluation points");
        let field = &self.field;
        let k = self.k;
        let mut rows: Vec<Vec<FieldElement>> = Vec::with_capacity(k);
        let mut power = vec![field.one(); k];
        for _ in 0..k - 1 {
            rows.push(power.clone());
            for (p, &a) in power.iter_mut().zip(alphas.iter()) {
                *p = field.mul(*p, a);
            }
        }
        rows.push(alphas.iter().map(|&a| self.f.eval(field, a)).collect());
        Matrix::from_rows(rows)
    }

    /// The determinant `D_f` at the given points, by Gaussian elimination.
    pub fn det(&self, alphas: &[FieldElement]) -> FieldElement {
        self.matrix_at(alphas).det(&self.field)
    }

    /// The companion combination of this instance.
    pub fn companion(&self) -> Companion {
        companion(&self.field, &self.f, self.k)
    }

    /// Counts zeros of `D_f` over tuples of pairwise-distinct points of `S`
    /// (the whole field when `subset` is `None`), through the companion fast
    /// path. A zero companion means every tuple vanishes, giving
    /// `k! * C(|S|, k)`.
    pub fn count_zero_tuples(&self, subset: Option<&[FieldElement]>) -> Result<PointCount> {
        match self.companion() {
            Companion::Sym(h) => crate::symhyp::count_points_distinct(&h, &self.field, subset),
            Companion::Zero => {
                let s_len = match subset {
                    None => self.field.q() as usize,
                    Some(s) => s.len(),
                };
                if self.k > s_len {
                    return Err(Error::SubsetTooSmall {
                        k: self.k,
                        size: s_len,
                    });
                }
                let subsets = binomial(s_len as u64, self.k as u64).ok_or(Error::CountOverflow)?;
                let k_fact = factorial(self.k).ok_or(Error::CountOverflow)?;
                let total = subsets.checked_mul(k_fact).ok_or(Error::CountOverflow)?;
                Ok(PointCount {
                    count: u64::try_from(total).map_err(|_| Error::CountOverflow)?,
                    kind: CountKind::Distinct,
                    subset_size: s_len,
                    method: CountMethod::SubsetOrbit,
                })
            }
        }
    }

    /// Independent oracle for [`GenVanderInstance::count_zero_tuples`]:
    /// evaluates the determinant itself on every `k`-subset of `S`.
    pub fn count_zero_tuples_det(&self, subset: Option<&[FieldElement]>) -> Result<PointCount> {
        let s: Vec<FieldElement> = match subset {
            None => self.field.elements().collect(),
            Some(s) => s.to_vec(),
        };
        if self.k > s.len() {
            return Err(Error::SubsetTooSmall {
                k: self.k,
                size: s.len(),
            });
        }
        let est = binomial(s.len() as u64, self.k as u64).ok_or(Error::CountOverflow)?;
        if est > DEFAULT_BUDGET as u128 {
            return Err(Error::BudgetExceeded {
                estimated: est,
                budget: DEFAULT_BUDGET,
            });
        }
        let k_fact = factorial(self.k).ok_or(Error::CountOverflow)?;
        let mut tuple = vec![self.field.zero(); self.k];
        let mut vanishing: u128 = 0;
        for idxs in ColexSubsets::new(s.len(), self.k) {
            for (slot, &i) in tuple.iter_mut().zip(idxs.iter()) {
                *slot = s[i];
            }
            if self.det(&tuple).is_zero() {
                vanishing += 1;
            }
        }
        let total = vanishing.checked_mul(k_fact).ok_or(Error::CountOverflow)?;
        Ok(PointCount {
            count: u64::try_from(total).map_err(|_| Error::CountOverflow)?,
            kind: CountKind::Distinct,
            subset_size: s.len(),
            method: CountMethod::Naive,
        })
    }

    /// The first `k`-subset of `S` (in colex order) on which `D_f` vanishes,
    /// or `None` if no tuple of distinct points annihilates the determinant.
    /// Uses the companion fast path.
    pub fn first_vanishing_subset(
        &self,
        subset: Option<&[FieldElement]>,
    ) -> Result<Option<Vec<FieldElement>>> {
        let s: Vec<FieldElement> = match subset {
            None => self.field.elements().collect(),
            Some(s) => s.to_vec(),
        };
        if self.k > s.len() {
            return Err(Error::SubsetTooSmall {
                k: self.k,
                size: s.len(),
            });
        }
        let comp = self.companion();
        if matches!(comp, Companion::Zero) {
            return Ok(Some(s[..self.k].to_vec()));
        }
        let mut tuple = vec![self.field.zero(); self.k];
        for idxs in ColexSubsets::new(s.len(), self.k) {
            for (slot, &i) in tuple.iter_mut().zip(idxs.iter()) {
                *slot = s[i];
            }
            if comp.eval(&self.field, &tuple).is_zero() {
                return Ok(Some(tuple));
            }
        }
        Ok(None)
    }
}

/// The Vandermonde product `prod_{i < j} (a_j - a_i)`; exposed so tests can
/// verify the determinant factorization directly.
pub fn vandermonde_product(field: &Field, alphas: &[FieldElement]) -> FieldElement {
    let mut acc = field.one();
    for i in 0..alphas.len() {
        for j in i + 1..alphas.len() {
            acc = field.mul(acc, field.sub(alphas[j], alphas[i]));
        }
    }
    acc
}
