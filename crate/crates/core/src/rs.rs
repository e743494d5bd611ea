//! Reed-Solomon codes evaluated on the whole field, their extended and dual
//! extended matrices, syndrome vectors, and deep-hole classification.
//!
//! The code of dimension `dim = k - 1` has generator matrix `M` of shape
//! `dim x q`, with entry `(i, j)` equal to `a_j^i` (points enumerated in
//! canonical index order, `0^0 = 1`). A received word built from a reduced
//! polynomial `f` of degree at most `q - 1` extends `M` to the `k x (q+1)`
//! matrix `M^E_f` whose last row is `f`'s value vector and whose last column
//! is `(0, .., 0, 1)^T`. `f` is a *deep hole* exactly when appending its
//! value row keeps every maximal minor nonsingular, which by the determinant
//! factorization is decided by the companion combination on `k`-subsets.
//!
//! The dual extended matrix has rows `(a_1^i, .., a_q^i, w_i)` for
//! `i = 0 .. q - k`, where the syndrome entries are
//! `w_i = -sum_j a_j^i f(a_j)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};
use crate::matrix::Matrix;
use crate::poly::UniPoly;
use crate::vander::GenVanderInstance;

/// A Reed-Solomon code `RS_q(dim)` evaluated at every point of the field.
#[derive(Clone, Debug)]
pub struct RsCode {
    field: Field,
    dim: usize,
}

/// The syndrome vector `(w_0, .., w_{q-k})` of a received word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SyndromeVector {
    /// Entries `w_i = -sum_j a_j^i f(a_j)`, low index first.
    pub w: Vec<FieldElement>,
}

/// Outcome of deep-hole classification for a received word `beta_f`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeepHoleVerdict {
    /// True when every `k`-subset of points leaves the extended matrix MDS.
    pub is_deep_hole: bool,
    /// Degree of the reduced polynomial (`None` for the zero polynomial).
    pub f_degree: Option<usize>,
    /// True when `deg f <= k - 2`, i.e. the word is itself a codeword.
    pub is_codeword: bool,
    /// Whether the syndrome has the distinguished shape `(0, .., 0, a)`,
    /// `a != 0`.
    pub sr_form: bool,
    /// For non-deep-hole non-codewords: the colex-first `k`-subset of points
    /// on which the generalized Vandermonde determinant vanishes.
    pub witness: Option<Vec<FieldElement>>,
}

impl RsCode {
    /// Creates the code; requires `1 <= dim <= q - 1` (equivalently
    /// `2 <= k <= q` for `k = dim + 1`).
    pub fn new(field: &Field, dim: usize) -> Result<Self> {
        let q = field.q() as usize;
        if dim < 1 || dim > q - 1 {
            return Err(Error::Hypothesis(format!(
                "code dimension {dim} must lie in [1, q - 1 = {}]",
                q - 1
            )));
        }
        Ok(RsCode {
            field: field.clone(),
            dim,
        })
    }

    /// The underlying field.
    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Code dimension `k - 1`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The extended-matrix row count `k = dim + 1`.
    pub fn k(&self) -> usize {
        self.dim + 1
    }

    /// The `dim x q` generator matrix: row `i` is the `i`-th powers of all
    /// field elements in canonical order, with `0^0 = 1`.
    pub fn generator_matrix(&self) -> Matrix {
        power_matrix(&self.field, self.dim)
    }

    /// The `k x (q + 1)` extended matrix of `f`: the power rows up to
    /// `x^{k-2}`, then `f`'s value row, with last column `(0, .., 0, 1)^T`.
    /// `f` is reduced internally, so any representative may be passed.
    pub fn extended_matrix(&self, f: &UniPoly) -> Matrix {
        let field = &self.field;
        let q = field.q() as usize;
        let k = self.k();
        let fr = f.reduce_mod_qx(field);
        let pw = power_matrix(field, k - 1);
        Matrix::from_fn(k, q + 1, |i, j| {
            if j == q {
                if i == k - 1 {
                    field.one()
                } else {
                    field.zero()
                }
            } else if i == k - 1 {
                fr.eval(field, field.element(j as u32))
            } else {
                pw.at(i, j)
            }
        })
    }

    /// The syndrome vector `(w_0, .., w_{q-k})` of `f`, where
    /// `w_i = -sum_j a_j^i f(a_j)` with the `0^0 = 1` convention.
    pub fn syndrome(&self, f: &UniPoly) -> SyndromeVector {
        let field = &self.field;
        let fr = f.reduce_mod_qx(field);
        let values: Vec<FieldElement> = field.elements().map(|a| fr.eval(field, a)).collect();
        let k = self.k();
        let q = field.q() as usize;
        let mut w = Vec::with_capacity(q + 1 - k);
        let mut powers: Vec<FieldElement> = vec![field.one(); q];
        for _ in 0..=q - k {
            let mut acc = field.zero();
            for (pw, v) in powers.iter().zip(values.iter()) {
                acc = field.add(acc, field.mul(*pw, *v));
            }
            w.push(field.neg(acc));
            for (pw, a) in powers.iter_mut().zip(field.elements()) {
                *pw = field.mul(*pw, a);
            }
        }
        SyndromeVector { w }
    }

    /// The `(q + 1 - k) x (q + 1)` dual extended matrix of `f`: rows
    /// `(a_1^i, .., a_q^i, w_i)` for `i = 0 .. q - k`.
    pub fn dual_extended_matrix(&self, f: &UniPoly) -> Matrix {
        let field = &self.field;
        let q = field.q() as usize;
        let k = self.k();
        let w = self.syndrome(f).w;
        let pw = power_matrix(field, q + 1 - k);
        Matrix::from_fn(
            q + 1 - k,
            q + 1,
            |i, j| {
                if j == q {
                    w[i]
                } else {
                    pw.at(i, j)
                }
            },
        )
    }

    /// Classifies `f`'s received word. `f` is reduced internally; the
    /// classification runs through the companion combination on `k`-subsets,
    /// with the full-minor route available as an oracle via
    /// [`is_mds`] on [`RsCode::extended_matrix`].
    pub fn is_deep_hole(&self, f: &UniPoly) -> Result<DeepHoleVerdict> {
        let field = &self.field;
        let k = self.k();
        let fr = f.reduce_mod_qx(field);
        let sr_form = seroussi_roth_test(&self.syndrome(&fr));
        let f_degree = fr.degree();
        let is_codeword = f_degree.is_none_or(|d| d <= k - 2);
        if is_codeword {
            return Ok(DeepHoleVerdict {
                is_deep_hole: false,
                f_degree,
                is_codeword,
                sr_form,
                witness: None,
            });
        }
        let inst = GenVanderInstance::new(field, fr, k)?;
        let witness = inst.first_vanishing_subset(None)?;
        Ok(DeepHoleVerdict {
            is_deep_hole: witness.is_none(),
            f_degree,
            is_codeword,
            sr_form,
            witness,
        })
    }
}

/// The `rows x q` matrix of point powers: entry `(i, j) = a_j^i` over all
/// field elements in canonical order, with `0^0 = 1`.
fn power_matrix(field: &Field, rows: usize) -> Matrix {
    let q = field.q() as usize;
    let mut data: Vec<Vec<FieldElement>> = Vec::with_capacity(rows);
    let mut current = vec![field.one(); q];
    for _ in 0..rows {
        data.push(current.clone());
        for (c, a) in current.iter_mut().zip(field.elements()) {
            *c = field.mul(*c, a);
        }
    }
    Matrix::from_rows(data)
}

/// True when the matrix (with `nrows <= ncols`) has every maximal minor
/// nonsingular.
pub fn is_mds(field: &Field, m: &Matrix) -> bool {
    first_singular_cols(field, m).is_none()
}

/// The colex-first set of `nrows` columns whose minor is singular, or `None`
/// when the matrix is MDS.
pub fn first_singular_cols(field: &Field, m: &Matrix) -> Option<Vec<usize>> {
    assert!(m.nrows() <= m.ncols(), "wide matrix required");
    crate::combin::ColexSubsets::new(m.ncols(), m.nrows())
        .find(|cols| m.select_cols(cols).det(field).is_zero())
}

/// True when the syndrome has the shape `(0, .., 0, a)` with `a != 0`.
pub fn seroussi_roth_test(w: &SyndromeVector) -> bool {
    match w.w.split_last() {
        Some((last, rest)) => !last.is_zero() && rest.iter().all(|e| e.is_zero()),
        None => false,
    }
}
