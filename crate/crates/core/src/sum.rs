//! Error-free floating point helpers.
//!
//! Variation sums are evaluated *canonically*: each term is an exact
//! expansion (or a single correctly rounded double for p != 1) and the whole
//! sum is rounded once at the end. Two partitions whose sums agree in exact
//! arithmetic therefore produce the same double, and the maximum over
//! partitions is the correctly rounded true maximum. This is what allows the
//! dynamic programs to agree bit-for-bit with the brute-force oracles.

use crate::grid::Exponent;

#[inline]
pub(crate) fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

#[inline]
fn fast_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

/// Shewchuk-style accumulator returning the correctly rounded sum.
#[derive(Debug, Clone, Default)]
pub(crate) struct ExactSum {
    partials: Vec<f64>,
}

impl ExactSum {
    pub fn new() -> Self {
        ExactSum {
            partials: Vec::with_capacity(8),
        }
    }

    pub fn clear(&mut self) {
        self.partials.clear();
    }

    pub fn add(&mut self, mut x: f64) {
        let mut i = 0;
        for k in 0..self.partials.len() {
            let mut y = self.partials[k];
            if x.abs() < y.abs() {
                std::mem::swap(&mut x, &mut y);
            }
            let hi = x + y;
            let lo = y - (hi - x);
            if lo != 0.0 {
                self.partials[i] = lo;
                i += 1;
            }
            x = hi;
        }
        self.partials.truncate(i);
        self.partials.push(x);
    }

    pub fn add_term(&mut self, t: &Term) {
        for &c in t.parts() {
            self.add(c);
        }
    }

    /// Nonoverlapping expansion of the exact sum, increasing magnitude.
    pub fn partials(&self) -> &[f64] {
        &self.partials
    }

    /// Adds `c * x` exactly.
    pub fn add_product(&mut self, c: f64, x: f64) {
        let hi = c * x;
        let lo = c.mul_add(x, -hi);
        self.add(hi);
        self.add(lo);
    }

    /// Correctly rounded (half-even) value of the exact sum.
    pub fn value(&self) -> f64 {
        round_expansion(&self.partials)
    }
}

/// Round a nonoverlapping expansion (increasing magnitude) to nearest.
fn round_expansion(p: &[f64]) -> f64 {
    let mut n = p.len();
    if n == 0 {
        return 0.0;
    }
    n -= 1;
    let mut hi = p[n];
    let mut lo = 0.0;
    while n > 0 {
        let x = hi;
        let y = p[n - 1];
        n -= 1;
        hi = x + y;
        let yr = hi - x;
        lo = y - yr;
        if lo != 0.0 {
            break;
        }
    }
    if n > 0 && ((lo < 0.0 && p[n - 1] < 0.0) || (lo > 0.0 && p[n - 1] > 0.0)) {
        let y = lo * 2.0;
        let x = hi + y;
        let yr = x - hi;
        if y == yr {
            hi = x;
        }
    }
    hi
}

/// A nonnegative summand stored as an exact expansion of up to four doubles.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Term {
    parts: [f64; 4],
    len: u8,
}

impl Term {
    #[inline]
    pub fn single(x: f64) -> Self {
        Term {
            parts: [x, 0.0, 0.0, 0.0],
            len: 1,
        }
    }

    #[inline]
    pub fn parts(&self) -> &[f64] {
        &self.parts[..self.len as usize]
    }

    /// Ordinary floating point value of the term.
    #[inline]
    pub fn approx(&self) -> f64 {
        self.parts().iter().sum()
    }
}

/// `|b - a|^p` as a canonical term.
#[inline]
pub(crate) fn increment_term(a: f64, b: f64, p: Exponent) -> Term {
    if p.is_one() {
        let (s, e) = two_sum(b, -a);
        let neg = s < 0.0 || (s == 0.0 && e < 0.0);
        let (s, e) = if neg { (-s, -e) } else { (s, e) };
        if e == 0.0 {
            Term::single(s)
        } else {
            Term {
                parts: [s, e, 0.0, 0.0],
                len: 2,
            }
        }
    } else {
        Term::single(p.pow_abs(b - a))
    }
}

/// Exact expansion of `a11 - a10 - a01 + a00` (increasing magnitude) and its
/// correctly rounded value.
#[inline]
fn mixed_expansion(a11: f64, a10: f64, a01: f64, a00: f64) -> ([f64; 4], usize, f64) {
    let mut parts = [0.0f64; 4];
    let mut len = 0usize;
    for mut x in [a11, -a10, -a01, a00] {
        let mut i = 0;
        for k in 0..len {
            let mut y = parts[k];
            if x.abs() < y.abs() {
                std::mem::swap(&mut x, &mut y);
            }
            let hi = x + y;
            let lo = y - (hi - x);
            if lo != 0.0 {
                parts[i] = lo;
                i += 1;
            }
            x = hi;
        }
        parts[i] = x;
        len = i + 1;
    }
    let r = round_expansion(&parts[..len]);
    (parts, len, r)
}

/// Correctly rounded mixed difference. Independent of the orientation in
/// which the four corners are supplied (up to sign).
#[inline]
pub(crate) fn mixed_diff(a11: f64, a10: f64, a01: f64, a00: f64) -> f64 {
    // Fast path: when the plain evaluation is exact the expansion is not
    // needed. Both partial differences being exact and their difference
    // being exact is checked with two_sum error terms.
    let (d1, e1) = two_sum(a11, -a10);
    let (d0, e0) = two_sum(a01, -a00);
    if e1 == 0.0 && e0 == 0.0 {
        // d1 - d0 rounded once is the correctly rounded value.
        return d1 - d0;
    }
    mixed_expansion(a11, a10, a01, a00).2
}

/// `|a11 - a10 - a01 + a00|^p` as a canonical term.
#[inline]
pub(crate) fn mixed_term(a11: f64, a10: f64, a01: f64, a00: f64, p: Exponent) -> Term {
    if p.is_one() {
        let (mut parts, len, r) = mixed_expansion(a11, a10, a01, a00);
        if r < 0.0 {
            for c in parts[..len].iter_mut() {
                *c = -*c;
            }
        }
        // Strip zero components (only possible for an all-zero expansion).
        Term {
            parts,
            len: len as u8,
        }
    } else {
        Term::single(p.pow_abs(mixed_diff(a11, a10, a01, a00)))
    }
}

/// Double-double accumulator used inside the dynamic programs. Comparisons
/// are lexicographic on the normalized (hi, lo) pair.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    #[inline]
    pub fn add(self, x: f64) -> Dd {
        let (s, e) = two_sum(self.hi, x);
        let (hi, lo) = fast_two_sum(s, e + self.lo);
        Dd { hi, lo }
    }

    #[inline]
    pub fn add_term(self, t: &Term) -> Dd {
        let mut d = self;
        for &c in t.parts() {
            d = d.add(c);
        }
        d
    }

    #[inline]
    pub fn add_dd(self, o: Dd) -> Dd {
        self.add(o.hi).add(o.lo)
    }

    #[inline]
    pub fn gt(self, o: Dd) -> bool {
        self.hi > o.hi || (self.hi == o.hi && self.lo > o.lo)
    }
}
