//! Exact arithmetic in small finite fields `F_q`, `q = p^m <= 2^16`.
//!
//! Elements are represented canonically: the element with index `i` is the
//! polynomial over `F_p` whose coefficient of `t^j` is the `j`-th base-`p`
//! digit of `i`. Index 0 is the additive identity and index 1 the
//! multiplicative identity. For a fixed `(p, m)` the construction is fully
//! deterministic: the modulus is the monic irreducible polynomial of degree
//! `m` whose coefficient vector has the smallest base-`p` integer encoding,
//! so two fields built from the same parameters are identical table-for-table.
//!
//! Multiplication and inversion go through precomputed discrete-log tables
//! (`O(1)` per operation); addition works digitwise with fast paths for
//! characteristic 2 and for prime fields.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 16;

/// An element of a specific finite field, stored as its canonical index
/// together with the order of the field it belongs to. The order tag lets
/// arithmetic detect mixed-field operands.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    idx: u32,
    q: u32,
}

impl FieldElement {
    /// Canonical index of this element in `[0, q)`.
    #[inline]
    pub fn index(self) -> u32 {
        self.idx
    }

    /// Order of the field this element belongs to.
    #[inline]
    pub fn field_order(self) -> u32 {
        self.q
    }

    /// True for the additive identity.
    #[inline]
    pub fn is_zero(self) -> bool {
        self.idx == 0
    }

    /// The zero element of the same field (index 0 is the additive identity
    /// in every field, so this needs no table access).
    #[inline]
    pub fn zero_like(self) -> FieldElement {
        FieldElement { idx: 0, q: self.q }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#F{}", self.idx, self.q)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.idx)
    }
}

impl Serialize for FieldElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u32(self.idx)
    }
}

/// Serializable description of a field: enough to reconstruct it exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    /// Characteristic.
    pub p: u64,
    /// Extension degree.
    pub m: u32,
    /// Modulus coefficients, low degree first, length `m + 1`, monic.
    pub modulus: Vec<u32>,
}

struct FieldInner {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    /// `exp[i]` = index of `g^i` for a fixed generator `g`, length `2(q-1)`
    /// so that `exp[a + b]` needs no reduction for `a, b < q - 1`.
    exp: Vec<u32>,
    /// `log[i]` = discrete log of the element with index `i`; `log[0]` unused.
    log: Vec<u32>,
    /// Additive inverse by index.
    neg: Vec<u32>,
}

/// A finite field `F_{p^m}`. Cheap to clone (shared tables).
#[derive(Clone)]
pub struct Field {
    inner: Arc<FieldInner>,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Digits of `idx` in base `p`, low digit first, padded to length `len`.
fn digits(idx: u32, p: u32, len: usize) -> Vec<u32> {
    let mut v = Vec::with_capacity(len);
    let mut n = idx;
    for _ in 0..len {
        v.push(n % p);
        n /= p;
    }
    v
}

fn pack(digits: &[u32], p: u32) -> u32 {
    let mut acc = 0u64;
    for &d in digits.iter().rev() {
        acc = acc * p as u64 + d as u64;
    }
    acc as u32
}

/// Schoolbook product of two coefficient vectors over `F_p`, reduced by the
/// monic `modulus` of degree `m`. Used only while bootstrapping the log
/// tables; steady-state multiplication is table-based.
fn polymul_mod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let m = modulus.len() - 1;
    let mut prod = vec![0u64; 2 * m.max(1)];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai as u64 * bj as u64) % p as u64;
        }
    }
    for d in (m..2 * m.max(1)).rev() {
        let c = prod[d];
        if c != 0 {
            prod[d] = 0;
            for (i, &mi) in modulus.iter().enumerate() {
                let pos = d - m + i;
                let sub = (c * mi as u64) % p as u64;
                prod[pos] = (prod[pos] + p as u64 - sub) % p as u64;
            }
        }
    }
    prod[..m].iter().map(|&x| x as u32).collect()
}

/// True when the monic polynomial `divisor` divides the monic polynomial
/// `cand` over `F_p` (both low degree first).
fn divides(cand: &[u32], divisor: &[u32], p: u32) -> bool {
    let dd = divisor.len() - 1;
    let mut r: Vec<u64> = cand.iter().map(|&c| c as u64).collect();
    for d in (dd..cand.len()).rev() {
        let c = r[d];
        if c != 0 {
            for (i, &vi) in divisor.iter().enumerate() {
                let pos = d - dd + i;
                let sub = (c * vi as u64) % p as u64;
                r[pos] = (r[pos] + p as u64 - sub) % p as u64;
            }
        }
    }
    r.iter().all(|&x| x == 0)
}

/// True when the monic polynomial `cand` (low degree first, degree `>= 1`)
/// is irreducible over `F_p`, decided by trial division against every monic
/// polynomial of degree between 1 and half the candidate degree.
fn is_irreducible(cand: &[u32], p: u32) -> bool {
    let m = cand.len() - 1;
    for dd in 1..=m / 2 {
        let count = (p as u64).pow(dd as u32);
        for enc in 0..count {
            let mut div = digits(enc as u32, p, dd);
            div.push(1);
            if divides(cand, &div, p) {
                return false;
            }
        }
    }
    true
}

/// The canonical modulus for `F_{p^m}`: the monic irreducible polynomial of
/// degree `m` whose coefficient vector, read as a base-`p` integer with the
/// coefficient of `t^i` weighted by `p^i`, is smallest.
fn canonical_modulus(p: u32, m: u32) -> Vec<u32> {
    let count = (p as u64).pow(m);
    for enc in 0..count {
        let mut cand = digits(enc as u32, p, m as usize);
        cand.push(1);
        if is_irreducible(&cand, p) {
            return cand;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over F_p")
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl Field {
    /// Builds `F_{p^m}` with the canonical deterministic modulus.
    ///
    /// Errors when `p` is not prime, `m` is zero, or `p^m` exceeds
    /// [`MAX_ORDER`].
    pub fn new(p: u64, m: u32) -> Result<Field> {
        if m == 0 {
            return Err(Error::ZeroDegree);
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let mut q: u64 = 1;
        for _ in 0..m {
            q = q.saturating_mul(p);
            if q > MAX_ORDER {
                return Err(Error::OrderTooLarge { q, max: MAX_ORDER });
            }
        }
        let p = p as u32;
        let q = q as u32;
        let modulus = if m == 1 {
            vec![0, 1]
        } else {
            canonical_modulus(p, m)
        };

        // Bootstrap multiplication from polynomial arithmetic, find a
        // generator of the multiplicative group, then freeze log tables.
        let raw_mul = |a: u32, b: u32| -> u32 {
            let da = digits(a, p, m as usize);
            let db = digits(b, p, m as usize);
            pack(&polymul_mod(&da, &db, &modulus, p), p)
        };
        let raw_pow = |mut base: u32, mut e: u32| -> u32 {
            let mut acc = 1u32;
            while e > 0 {
                if e & 1 == 1 {
                    acc = raw_mul(acc, base);
                }
                base = raw_mul(base, base);
                e >>= 1;
            }
            acc
        };
        let factors = prime_factors(q - 1);
        let generator = (1..q)
            .find(|&g| factors.iter().all(|&r| raw_pow(g, (q - 1) / r) != 1))
            .expect("the multiplicative group of a finite field is cyclic");

        let mut exp = vec![0u32; 2 * (q as usize - 1).max(1)];
        let mut log = vec![0u32; q as usize];
        let mut acc = 1u32;
        for (i, slot) in exp.iter_mut().take(q as usize - 1).enumerate() {
            *slot = acc;
            log[acc as usize] = i as u32;
            acc = raw_mul(acc, generator);
        }
        debug_assert_eq!(acc, 1, "generator order must be q - 1");
        for i in 0..q as usize - 1 {
            exp[i + q as usize - 1] = exp[i];
        }

        let neg = (0..q)
            .map(|i| {
                let d: Vec<u32> = digits(i, p, m as usize)
                    .iter()
                    .map(|&x| (p - x) % p)
                    .collect();
                pack(&d, p)
            })
            .collect();

        Ok(Field {
            inner: Arc::new(FieldInner {
                p,
                m,
                q,
                modulus,
                exp,
                log,
                neg,
            }),
        })
    }

    /// Characteristic `p`.
    #[inline]
    pub fn p(&self) -> u32 {
        self.inner.p
    }

    /// Extension degree `m`.
    #[inline]
    pub fn m(&self) -> u32 {
        self.inner.m
    }

    /// Field order `q = p^m`.
    #[inline]
    pub fn q(&self) -> u32 {
        self.inner.q
    }

    /// Modulus coefficients, low degree first (length `m + 1`, monic).
    /// For prime fields this is the degree-1 polynomial `t`.
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    /// Serializable description sufficient to reconstruct this field.
    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.inner.p as u64,
            m: self.inner.m,
            modulus: self.inner.modulus.clone(),
        }
    }

    /// The additive identity.
    #[inline]
    pub fn zero(&self) -> FieldElement {
        FieldElement {
            idx: 0,
            q: self.inner.q,
        }
    }

    /// The multiplicative identity.
    #[inline]
    pub fn one(&self) -> FieldElement {
        FieldElement {
            idx: 1,
            q: self.inner.q,
        }
    }

    /// The element with canonical index `idx`.
    ///
    /// Panics when `idx >= q`; use [`Field::try_element`] for checked access.
    #[inline]
    pub fn element(&self, idx: u32) -> FieldElement {
        assert!(
            idx < self.inner.q,
            "element index {idx} out of range for field of order {}",
            self.inner.q
        );
        FieldElement {
            idx,
            q: self.inner.q,
        }
    }

    /// Checked variant of [`Field::element`] for validating external input.
    pub fn try_element(&self, idx: u64) -> Result<FieldElement> {
        if idx < self.inner.q as u64 {
            Ok(self.element(idx as u32))
        } else {
            Err(Error::IndexOutOfRange {
                index: idx,
                q: self.inner.q as u64,
            })
        }
    }

    /// The image of the integer `n` under the canonical map `Z -> F_q`
    /// (`n` times the multiplicative identity).
    pub fn from_int(&self, n: i64) -> FieldElement {
        let p = self.inner.p as i64;
        let r = n.rem_euclid(p) as u32;
        // Digits of the embedded value: constant digit r, rest zero.
        FieldElement {
            idx: r,
            q: self.inner.q,
        }
    }

    /// All `q` elements in canonical index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        let q = self.inner.q;
        (0..q).map(move |idx| FieldElement { idx, q })
    }

    /// Base-`p` digit vector of an element (low digit first, length `m`).
    pub fn element_digits(&self, a: FieldElement) -> Vec<u32> {
        self.check(a);
        digits(a.idx, self.inner.p, self.inner.m as usize)
    }

    #[inline]
    fn check(&self, a: FieldElement) {
        assert_eq!(
            a.q, self.inner.q,
            "mixed-field operand: element of F_{} used in F_{}",
            a.q, self.inner.q
        );
    }

    /// Addition. Panics on mixed-field operands.
    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        let inner = &*self.inner;
        let idx = if inner.p == 2 {
            a.idx ^ b.idx
        } else if inner.m == 1 {
            let s = a.idx + b.idx;
            if s >= inner.q {
                s - inner.q
            } else {
                s
            }
        } else {
            let mut acc = 0u32;
            let mut scale = 1u32;
            let (mut x, mut y) = (a.idx, b.idx);
            for _ in 0..inner.m {
                let s = (x % inner.p + y % inner.p) % inner.p;
                acc += s * scale;
                scale *= inner.p;
                x /= inner.p;
                y /= inner.p;
            }
            acc
        };
        FieldElement { idx, q: inner.q }
    }

    /// Additive inverse.
    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        self.check(a);
        FieldElement {
            idx: self.inner.neg[a.idx as usize],
            q: self.inner.q,
        }
    }

    /// Subtraction.
    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    /// Multiplication via log/antilog tables. Panics on mixed-field operands.
    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        let inner = &*self.inner;
        if a.idx == 0 || b.idx == 0 {
            return self.zero();
        }
        let l = inner.log[a.idx as usize] + inner.log[b.idx as usize];
        FieldElement {
            idx: inner.exp[l as usize],
            q: inner.q,
        }
    }

    /// Multiplicative inverse. Panics on the zero element.
    #[inline]
    pub fn inv(&self, a: FieldElement) -> FieldElement {
        self.check(a);
        assert!(a.idx != 0, "inversion of the zero element");
        let inner = &*self.inner;
        let l = (inner.q - 1) - inner.log[a.idx as usize];
        FieldElement {
            idx: inner.exp[l as usize],
            q: inner.q,
        }
    }

    /// Division. Panics when `b` is zero.
    #[inline]
    pub fn div(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.mul(a, self.inv(b))
    }

    /// Exponentiation by square-and-multiply, with `pow(a, 0) = 1` for every
    /// `a` (including zero: the `0^0 = 1` convention used by syndrome
    /// computations). Negative exponents require `a != 0` and are evaluated
    /// as powers of the inverse.
    pub fn pow(&self, a: FieldElement, e: i64) -> FieldElement {
        self.check(a);
        if e == 0 {
            return self.one();
        }
        if a.idx == 0 {
            assert!(e > 0, "negative power of the zero element");
            return self.zero();
        }
        let (mut base, mut exp) = if e < 0 {
            (self.inv(a), e.unsigned_abs())
        } else {
            (a, e as u64)
        };
        // Exponents act through the cyclic group of order q - 1.
        exp %= (self.inner.q - 1) as u64;
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Sum of `t`-th powers over the whole field, with `0^0 = 1`. Equals
    /// `-1` exactly when `t > 0` and `(q - 1) | t`, and `0` otherwise;
    /// exposed for use as an independent oracle in tests.
    pub fn power_sum(&self, t: u64) -> FieldElement {
        let mut acc = self.zero();
        for a in self.elements() {
            acc = self.add(acc, self.pow(a, t as i64));
        }
        acc
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Field(p={}, m={}, q={})",
            self.inner.p, self.inner.m, self.inner.q
        )
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.inner.p == other.inner.p && self.inner.m == other.inner.m
    }
}

impl Eq for Field {}
