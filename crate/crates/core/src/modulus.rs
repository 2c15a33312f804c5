//! Difference operators and L^p moduli of continuity on grids.
//!
//! All moduli are prefix maxima of exact circular shift norms; no
//! interpolation between grid shifts takes place, so every inequality
//! involving them can be checked exactly at grid arguments.

use crate::check::{Comparison, Summary};
use crate::error::{Error, Result};
use crate::grid::{Exponent, Grid1, Grid2, GridData};
use crate::sum::ExactSum;
use std::io::Write;

/// Rectangle-rule norm `((1/n) sum |v|^p)^{1/p}`.
pub fn lp_norm_of(values: &[f64], p: Exponent) -> f64 {
    let mut acc = ExactSum::new();
    for &v in values {
        acc.add(p.pow_abs(v));
    }
    p.root(acc.value() / values.len() as f64)
}

/// Discrete L^p norm of a grid function.
pub fn lp_norm<G: GridData>(f: &G, p: Exponent) -> f64 {
    lp_norm_of(f.samples(), p)
}

/// `max |f|`, the p = infinity variant.
pub fn sup_norm<G: GridData>(f: &G) -> f64 {
    f.max_abs()
}

/// Mean of `|x|^p` over `values`, in plain floating point (hot loops).
#[inline]
fn mean_pow(sum: f64, count: usize, p: Exponent) -> f64 {
    p.root(sum / count as f64)
}

/// `sum_j |d[(j + t) mod n] - d[j]|^p` without modulo arithmetic in the loop.
#[inline]
pub(crate) fn circular_diff_pow_sum(d: &[f64], t: usize, p: Exponent) -> f64 {
    let n = d.len();
    let t = t % n;
    let (head, tail) = (&d[..n - t], &d[n - t..]);
    let mut s = 0.0;
    if p.is_one() {
        for (a, b) in d[t..].iter().zip(head) {
            s += (a - b).abs();
        }
        for (a, b) in d[..t].iter().zip(tail) {
            s += (a - b).abs();
        }
    } else if p.value() == 2.0 {
        for (a, b) in d[t..].iter().zip(head) {
            s += (a - b) * (a - b);
        }
        for (a, b) in d[..t].iter().zip(tail) {
            s += (a - b) * (a - b);
        }
    } else {
        for (a, b) in d[t..].iter().zip(head) {
            s += p.pow_abs(a - b);
        }
        for (a, b) in d[..t].iter().zip(tail) {
            s += p.pow_abs(a - b);
        }
    }
    s
}

/// `||g(. + h) - g||_p` for the grid shift `h = shift/N`.
pub fn shift_norm_1d(g: &Grid1, shift: usize, p: Exponent) -> f64 {
    mean_pow(circular_diff_pow_sum(g.samples(), shift, p), g.len(), p)
}

/// `||f(. + a/M, . + b/N) - f||_p`.
pub fn shift_norm_2d(f: &Grid2, a: usize, b: usize, p: Exponent) -> f64 {
    let (m, n) = (f.rows(), f.cols());
    let mut s = 0.0;
    for i in 0..m {
        let (src, dst) = (f.row(i), f.row(i + a));
        for j in 0..n {
            s += p.pow_abs(dst[(j + b) % n] - src[j]);
        }
    }
    mean_pow(s, m * n, p)
}

/// `||Delta(s, t) f||_p` with `Delta(s,t)f = f(x+s,y+t) - f(x+s,y) - f(x,y+t) + f(x,y)`.
pub fn mixed_diff_norm(f: &Grid2, s: usize, t: usize, p: Exponent) -> f64 {
    let (m, n) = (f.rows(), f.cols());
    let mut d = vec![0.0; n];
    let mut sum = 0.0;
    for i in 0..m {
        for (dj, (a, b)) in d.iter_mut().zip(f.row(i + s).iter().zip(f.row(i))) {
            *dj = a - b;
        }
        sum += circular_diff_pow_sum(&d, t, p);
    }
    mean_pow(sum, m * n, p)
}

/// `omega[k] = omega(f; k/L)_p` for `k = 0..=L`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModulusTable1D {
    values: Vec<f64>,
    p: Exponent,
}

impl ModulusTable1D {
    pub fn new(values: Vec<f64>, p: Exponent) -> Self {
        ModulusTable1D { values, p }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `L`, the number of grid steps in one period.
    pub fn resolution(&self) -> usize {
        self.values.len() - 1
    }

    pub fn at(&self, k: usize) -> f64 {
        self.values[k]
    }

    pub fn p(&self) -> Exponent {
        self.p
    }

    /// CSV rows `k,value`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "k,value")?;
        for (k, v) in self.values.iter().enumerate() {
            writeln!(w, "{k},{v:?}")?;
        }
        Ok(())
    }
}

/// `omega[k][l] = omega(f; k/M, l/N)_p` for `k = 0..=M`, `l = 0..=N`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModulusTable2D {
    rows: usize,
    cols: usize,
    values: Vec<f64>,
    p: Exponent,
}

impl ModulusTable2D {
    /// `values` holds `(rows + 1) * (cols + 1)` entries, row-major.
    pub fn new(rows: usize, cols: usize, values: Vec<f64>, p: Exponent) -> Result<Self> {
        if values.len() != (rows + 1) * (cols + 1) {
            return Err(Error::Shape(format!(
                "{} values for a {}x{} modulus table",
                values.len(),
                rows + 1,
                cols + 1
            )));
        }
        Ok(ModulusTable2D {
            rows,
            cols,
            values,
            p,
        })
    }

    /// `M`.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// `N`.
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn p(&self) -> Exponent {
        self.p
    }

    #[inline]
    pub fn at(&self, k: usize, l: usize) -> f64 {
        self.values[k * (self.cols + 1) + l]
    }

    /// `omega(f; k/M, 1)` for `k = 0..=M`.
    pub fn row_slice(&self) -> ModulusTable1D {
        ModulusTable1D::new(
            (0..=self.rows).map(|k| self.at(k, self.cols)).collect(),
            self.p,
        )
    }

    /// `omega(f; 1, l/N)` for `l = 0..=N`.
    pub fn col_slice(&self) -> ModulusTable1D {
        ModulusTable1D::new(
            (0..=self.cols).map(|l| self.at(self.rows, l)).collect(),
            self.p,
        )
    }

    /// CSV rows `k,l,value`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "k,l,value")?;
        for k in 0..=self.rows {
            for l in 0..=self.cols {
                writeln!(w, "{k},{l},{:?}", self.at(k, l))?;
            }
        }
        Ok(())
    }
}

fn prefix_max(values: &mut [f64]) {
    for k in 1..values.len() {
        if values[k] < values[k - 1] {
            values[k] = values[k - 1];
        }
    }
}

/// L^p modulus of a 1D grid: prefix maximum of the shift norms.
pub fn modulus_1d(g: &Grid1, p: Exponent) -> ModulusTable1D {
    let n = g.len();
    let mut values = vec![0.0; n + 1];
    for h in 1..n {
        // ||Delta(h) g|| = ||Delta(N - h) g||.
        if h <= n - h {
            values[h] = shift_norm_1d(g, h, p);
        } else {
            values[h] = values[n - h];
        }
    }
    prefix_max(&mut values);
    ModulusTable1D::new(values, p)
}

/// Shift norms of all vector shifts, bucketed by the smallest radius
/// `k/L` (sup-norm ball, `L = max(M, N)`) that contains the shift.
fn iso_shift_buckets(f: &Grid2, p: Exponent) -> Vec<f64> {
    let (m, n) = (f.rows(), f.cols());
    let l = m.max(n);
    let mut bucket = vec![0.0f64; l + 1];
    for a in 0..m {
        for b in 0..n {
            // (a, b) and (-a, -b) give the same norm; visit one of them.
            let (ra, rb) = ((m - a) % m, (n - b) % n);
            if (ra, rb) < (a, b) {
                continue;
            }
            let (da, db) = (a.min(m - a), b.min(n - b));
            let k = (da * l).div_ceil(m).max((db * l).div_ceil(n));
            let v = shift_norm_2d(f, a, b, p);
            if v > bucket[k] {
                bucket[k] = v;
            }
        }
    }
    bucket
}

/// Isotropic modulus of a 2D grid: `omega[k]` is the largest shift norm
/// over vector shifts with `max(|h1|, |h2|) <= k/L`, `L = max(M, N)`.
pub fn modulus_iso_2d(f: &Grid2, p: Exponent) -> ModulusTable1D {
    let mut values = iso_shift_buckets(f, p);
    prefix_max(&mut values);
    ModulusTable1D::new(values, p)
}

/// Isotropic modulus at the rational radius `num/den`.
pub fn iso_modulus_at(f: &Grid2, num: usize, den: usize, p: Exponent) -> f64 {
    let (m, n) = (f.rows(), f.cols());
    let mut best = 0.0f64;
    for a in 0..m {
        let da = a.min(m - a);
        if da * den > num * m {
            continue;
        }
        for b in 0..n {
            let db = b.min(n - b);
            if db * den <= num * n {
                best = best.max(shift_norm_2d(f, a, b, p));
            }
        }
    }
    best
}

/// Default per-axis cap on the mixed modulus table.
pub const MIXED_TABLE_CAP: usize = 128;

/// Mixed modulus table, refusing grids above the default cap.
pub fn modulus_mixed(f: &Grid2, p: Exponent) -> Result<ModulusTable2D> {
    modulus_mixed_with_cap(f, p, Some(MIXED_TABLE_CAP))
}

/// Mixed modulus table; `cap = None` lifts the size limit. Cost is
/// `O((MN)^2 / 4)` using the symmetries `n(s,t) = n(M-s,t) = n(s,N-t)`.
pub fn modulus_mixed_with_cap(
    f: &Grid2,
    p: Exponent,
    cap: Option<usize>,
) -> Result<ModulusTable2D> {
    let (m, n) = (f.rows(), f.cols());
    if let Some(cap) = cap {
        if m > cap || n > cap {
            return Err(Error::CapExceeded {
                rows: m,
                cols: n,
                cap,
            });
        }
    }
    let (hm, hn) = (m / 2, n / 2);
    let mut norms = vec![0.0f64; (hm + 1) * (hn + 1)];
    let mut d = vec![0.0; n];
    for s in 1..=hm {
        let mut sums = vec![0.0f64; hn + 1];
        for i in 0..m {
            for (dj, (a, b)) in d.iter_mut().zip(f.row(i + s).iter().zip(f.row(i))) {
                *dj = a - b;
            }
            for (t, acc) in sums.iter_mut().enumerate().skip(1) {
                *acc += circular_diff_pow_sum(&d, t, p);
            }
        }
        for t in 1..=hn {
            norms[s * (hn + 1) + t] = mean_pow(sums[t], m * n, p);
        }
    }
    let full = |s: usize, t: usize| -> f64 {
        if s == 0 || t == 0 || s == m || t == n {
            return 0.0;
        }
        norms[s.min(m - s) * (hn + 1) + t.min(n - t)]
    };
    let w = n + 1;
    let mut values = vec![0.0f64; (m + 1) * w];
    for k in 0..=m {
        for l in 0..=n {
            let mut v = full(k, l);
            if k > 0 {
                v = v.max(values[(k - 1) * w + l]);
            }
            if l > 0 {
                v = v.max(values[k * w + l - 1]);
            }
            values[k * w + l] = v;
        }
    }
    ModulusTable2D::new(m, n, values, p)
}

/// Monotonicity, `omega[0] = 0`, doubling and the ratio bound
/// `omega[k1]/k1 <= 2 omega[k2]/k2` (`k2 <= k1`) for a 1D table.
pub fn table1d_invariants(t: &ModulusTable1D) -> Summary {
    let v = t.values();
    let l = t.resolution();
    let mut s = Summary::new("1d modulus table");
    s.record(v[0].abs(), 0.0, || "omega[0] = 0".into());
    for k in 0..l {
        s.record(v[k], v[k + 1], || format!("monotone at {k}"));
    }
    for k in 1..=l / 2 {
        s.record(v[2 * k], 2.0 * v[k], || format!("doubling at {k}"));
    }
    for k1 in 1..=l {
        for k2 in 1..=k1 {
            s.record(v[k1] / k1 as f64, 2.0 * v[k2] / k2 as f64, || {
                format!("ratio {k1}/{k2}")
            });
        }
    }
    s
}

/// Zero edges, monotonicity and doubling in each variable, and the ratio
/// bound in each variable for a mixed table.
pub fn table2d_invariants(t: &ModulusTable2D) -> Summary {
    let (m, n) = (t.rows(), t.cols());
    let mut s = Summary::new("mixed modulus table");
    for k in 0..=m {
        s.record(t.at(k, 0).abs(), 0.0, || format!("omega[{k}][0] = 0"));
    }
    for l in 0..=n {
        s.record(t.at(0, l).abs(), 0.0, || format!("omega[0][{l}] = 0"));
    }
    for k in 0..=m {
        for l in 0..=n {
            if k < m {
                s.record(t.at(k, l), t.at(k + 1, l), || {
                    format!("monotone in u at ({k},{l})")
                });
            }
            if l < n {
                s.record(t.at(k, l), t.at(k, l + 1), || {
                    format!("monotone in v at ({k},{l})")
                });
            }
            if 2 * k <= m {
                s.record(t.at(2 * k, l), 2.0 * t.at(k, l), || {
                    format!("doubling in u at ({k},{l})")
                });
            }
            if 2 * l <= n {
                s.record(t.at(k, 2 * l), 2.0 * t.at(k, l), || {
                    format!("doubling in v at ({k},{l})")
                });
            }
        }
    }
    for l in 1..=n {
        for k1 in 1..=m {
            for k2 in 1..=k1 {
                s.record(
                    t.at(k1, l) / k1 as f64,
                    2.0 * t.at(k2, l) / k2 as f64,
                    || format!("ratio in u {k1}/{k2} at v={l}"),
                );
            }
        }
    }
    for k in 1..=m {
        for l1 in 1..=n {
            for l2 in 1..=l1 {
                s.record(
                    t.at(k, l1) / l1 as f64,
                    2.0 * t.at(k, l2) / l2 as f64,
                    || format!("ratio in v {l1}/{l2} at u={k}"),
                );
            }
        }
    }
    s
}

/// `omega(f; u, v)_p <= V u^{1/p} v^{1/p}` at every grid argument, for a
/// value `V` of the Vitali variation.
pub fn golubov_bound(t: &ModulusTable2D, vitali: f64) -> Summary {
    let (m, n) = (t.rows(), t.cols());
    let ip = t.p().inv();
    let mut s = Summary::new("mixed modulus vs Vitali variation");
    for k in 1..=m {
        for l in 1..=n {
            let rhs = vitali * (k as f64 / m as f64).powf(ip) * (l as f64 / n as f64).powf(ip);
            s.record(t.at(k, l), rhs, || format!("({k},{l})"));
        }
    }
    s
}

/// `omega[k] <= (3/delta) * integral_0^delta ||Delta(t) g||_p dt` at every
/// grid `delta = k/N`, with the trapezoid rule over the grid shift norms.
pub fn averaged_modulus_check(g: &Grid1, p: Exponent) -> Summary {
    let n = g.len();
    let norms: Vec<f64> = (0..=n)
        .map(|h| if h == n { 0.0 } else { shift_norm_1d(g, h, p) })
        .collect();
    let table = modulus_1d(g, p);
    let mut s = Summary::new("averaged modulus");
    let mut integral_steps = 0.0; // integral in units of 1/N
    for k in 1..=n {
        integral_steps += 0.5 * (norms[k - 1] + norms[k]);
        let rhs = 3.0 * integral_steps / k as f64;
        s.record(table.at(k), rhs, || format!("delta = {k}/{n}"));
    }
    s
}

/// `Omega_p(g) <= omega(g; 1)_p <= 2 Omega_p(g)`.
pub fn omega_sandwich(g: &Grid1, p: Exponent) -> [Comparison; 2] {
    let big_omega = crate::pvar1d::omega_p_functional(g, p);
    let w1 = modulus_1d(g, p).at(g.len());
    [
        Comparison::new("Omega_p <= omega(1)", big_omega, w1),
        Comparison::new("omega(1) <= 2 Omega_p", w1, 2.0 * big_omega),
    ]
}

/// Bounds for the row difference `Delta_1(h) f = f(x + h, y) - f(x, y)`:
/// entrywise `omega(Delta_1(h) f; u, v) <= 2 min(omega(f; u, v), omega(f; |h|, v))`
/// and the isotropic analogue `omega(Delta_1(h) f; d) <= 2 min(omega(f; d), omega(f; |h|))`.
pub fn diff_modulus_bound_check(
    f: &Grid2,
    h: usize,
    p: Exponent,
    cap: Option<usize>,
) -> Result<Summary> {
    let m = f.rows();
    let h = h % m;
    let dh = h.min(m - h);
    let g = f.row_shift_diff(h);
    let (tf, tg) = (
        modulus_mixed_with_cap(f, p, cap)?,
        modulus_mixed_with_cap(&g, p, cap)?,
    );
    let mut s = Summary::new(format!("difference modulus bound, h = {h}"));
    for k in 0..=m {
        for l in 0..=f.cols() {
            let rhs = 2.0 * tf.at(k, l).min(tf.at(dh, l));
            s.record(tg.at(k, l), rhs, || format!("mixed ({k},{l})"));
        }
    }
    let (iso_f, iso_g) = (modulus_iso_2d(f, p), modulus_iso_2d(&g, p));
    let at_h = iso_modulus_at(f, dh, m, p);
    for k in 0..=iso_f.resolution() {
        let rhs = 2.0 * iso_f.at(k).min(at_h);
        s.record(iso_g.at(k), rhs, || format!("isotropic {k}"));
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{gen_product, gen_sine, gen_tent_scaled};
    use std::f64::consts::TAU;

    fn step(n: usize) -> Grid1 {
        Grid1::new((0..n).map(|k| if k < n / 2 { 1.0 } else { -1.0 }).collect()).unwrap()
    }

    #[test]
    fn norm_examples() {
        let s = gen_sine(1, 4).unwrap();
        assert!((lp_norm(&s, Exponent::TWO) - 0.5f64.sqrt()).abs() < 1e-15);
        let c = Grid1::new(vec![-3.0; 5]).unwrap();
        for p in [1.0, 1.7, 4.0] {
            assert!((lp_norm(&c, Exponent::new(p).unwrap()) - 3.0).abs() < 1e-14);
        }
        // Same number of samples per period, hence the same sample multiset.
        let a = lp_norm(&gen_sine(1, 16).unwrap(), Exponent::new(3.0).unwrap());
        let b = lp_norm(&gen_sine(4, 64).unwrap(), Exponent::new(3.0).unwrap());
        assert!((a - b).abs() < 1e-14);
    }

    #[test]
    fn mixed_norm_examples() {
        let f = Grid2::from_rows(&[vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert_eq!(mixed_diff_norm(&f, 1, 1, Exponent::ONE), 2.0);
        assert_eq!(mixed_diff_norm(&f, 0, 1, Exponent::ONE), 0.0);
        let g = gen_tent_scaled(1, 8).unwrap();
        let h = gen_sine(1, 8).unwrap();
        let f = gen_product(&g, &h);
        let p = Exponent::new(1.5).unwrap();
        for s in 0..8 {
            for t in 0..8 {
                let expect = shift_norm_1d(&g, s, p) * shift_norm_1d(&h, t, p);
                assert!((mixed_diff_norm(&f, s, t, p) - expect).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn step_modulus_p1() {
        let n = 32;
        let t = modulus_1d(&step(n), Exponent::ONE);
        for k in 0..=n / 2 {
            assert!((t.at(k) - 4.0 * k as f64 / n as f64).abs() < 1e-15);
        }
        assert!(averaged_modulus_check(&step(n), Exponent::ONE).holds(0.0));
    }

    #[test]
    fn sine_modulus_bound() {
        for n in [1usize, 2, 4] {
            for p in [1.0, 2.0, 4.0] {
                let p = Exponent::new(p).unwrap();
                let t = modulus_1d(&gen_sine(n, 64).unwrap(), p);
                for k in 0..=64 {
                    let bound = TAU * (n as f64 * k as f64 / 64.0).min(1.0);
                    assert!(t.at(k) <= bound + 1e-12);
                }
            }
        }
    }

    #[test]
    fn separable_and_constant_cases() {
        let g = Grid1::new(vec![0.3, -1.0, 2.0, 0.5, 0.1, -0.7]).unwrap();
        let f = Grid2::from_fn(6, 4, |i, _| g.samples()[i]).unwrap();
        let p = Exponent::new(1.5).unwrap();
        let (iso, one) = (modulus_iso_2d(&f, p), modulus_1d(&g, p));
        for (a, b) in iso.values().iter().zip(one.values()) {
            assert!((a - b).abs() < 1e-14);
        }
        let c = Grid2::from_fn(4, 4, |_, _| 2.0).unwrap();
        assert!(modulus_iso_2d(&c, p).values().iter().all(|&v| v == 0.0));
        let z = modulus_mixed(&c, p).unwrap();
        assert!((0..=4).all(|k| (0..=4).all(|l| z.at(k, l) == 0.0)));
    }

    #[test]
    fn product_table_factorizes() {
        let g = gen_tent_scaled(2, 8).unwrap();
        let h = gen_sine(1, 8).unwrap();
        let p = Exponent::TWO;
        let t = modulus_mixed(&gen_product(&g, &h), p).unwrap();
        let (tg, th) = (modulus_1d(&g, p), modulus_1d(&h, p));
        for k in 0..=8 {
            for l in 0..=8 {
                assert!((t.at(k, l) - tg.at(k) * th.at(l)).abs() < 1e-14);
            }
        }
        assert!(table2d_invariants(&t).holds(0.0));
    }

    #[test]
    fn cap_is_enforced() {
        let f = Grid2::zeros(130, 2).unwrap();
        assert!(matches!(
            modulus_mixed(&f, Exponent::ONE),
            Err(Error::CapExceeded { .. })
        ));
        assert!(modulus_mixed_with_cap(&f, Exponent::ONE, None).is_ok());
    }
}
