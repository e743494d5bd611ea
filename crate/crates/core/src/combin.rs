//! Small combinatorial helpers shared by the counting modules: colex subset
//! enumeration, non-decreasing tuple (multiset) enumeration, and checked
//! binomial/factorial arithmetic.

/// Iterator over all `k`-subsets of `{0, .., n-1}` in colexicographic order
/// (compare the largest differing member first). Colex order is the
/// canonical order used for witness reporting, so "first vanishing subset"
/// is reproducible.
pub(crate) struct ColexSubsets {
    n: usize,
    k: usize,
    state: Option<Vec<usize>>,
}

impl ColexSubsets {
    pub(crate) fn new(n: usize, k: usize) -> Self {
        let state = if k <= n { Some((0..k).collect()) } else { None };
        ColexSubsets { n, k, state }
    }
}

impl Iterator for ColexSubsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.state.as_ref()?.clone();
        // Successor: find the least position that can advance without
        // colliding with the member above it, advance it, and reset the
        // prefix to 0..i.
        let s = self.state.as_mut().unwrap();
        let mut advanced = false;
        for i in 0..self.k {
            let ceiling = if i + 1 < self.k { s[i + 1] } else { self.n };
            if s[i] + 1 < ceiling {
                s[i] += 1;
                for (j, slot) in s.iter_mut().enumerate().take(i) {
                    *slot = j;
                }
                advanced = true;
                break;
            }
        }
        if !advanced {
            self.state = None;
        }
        Some(cur)
    }
}

/// Iterator over all non-decreasing `k`-tuples with entries in
/// `{lo, .., hi-1}`; each tuple is the sorted representative of one multiset.
pub(crate) struct NonDecreasingTuples {
    hi: usize,
    state: Option<Vec<usize>>,
}

impl NonDecreasingTuples {
    pub(crate) fn new(lo: usize, hi: usize, k: usize) -> Self {
        let state = if lo < hi && k > 0 {
            Some(vec![lo; k])
        } else {
            None
        };
        NonDecreasingTuples { hi, state }
    }
}

impl Iterator for NonDecreasingTuples {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.state.as_ref()?.clone();
        let s = self.state.as_mut().unwrap();
        let k = s.len();
        let mut i = k;
        while i > 0 {
            if s[i - 1] + 1 < self.hi {
                let v = s[i - 1] + 1;
                for slot in s.iter_mut().skip(i - 1) {
                    *slot = v;
                }
                break;
            }
            i -= 1;
        }
        if i == 0 {
            self.state = None;
        }
        Some(cur)
    }
}

/// `n!` as a u128, or `None` on overflow.
pub(crate) fn factorial(n: usize) -> Option<u128> {
    let mut acc: u128 = 1;
    for i in 2..=n as u128 {
        acc = acc.checked_mul(i)?;
    }
    Some(acc)
}

/// Binomial coefficient `C(n, k)` as a u128, or `None` on overflow.
pub(crate) fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)?;
        acc /= (i + 1) as u128;
    }
    Some(acc)
}
