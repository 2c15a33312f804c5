//! Vitali-type p-variation over nets.
//!
//! A net is a pair of cyclic partitions, one per axis; its value is the
//! l^p norm of the mixed differences over all cells, wrap cells included.
//! At p = 1 the finest net is optimal (the triangle inequality makes every
//! refinement monotone), so the exact value is cheap. For p > 1 the module
//! offers a brute-force oracle for small grids and an alternating ascent
//! that returns a certified lower bound.

use crate::check::Comparison;
use crate::error::{Error, Result};
use crate::grid::{Exponent, Grid2};
use crate::pvar1d::{pvar, pvar_cyclic_pruned, CyclicPartition};
use crate::sum::{mixed_diff, mixed_term, Dd, ExactSum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Row partition over `[0, M)` and column partition over `[0, N)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Net {
    rows: CyclicPartition,
    cols: CyclicPartition,
}

impl Net {
    pub fn new(rows: CyclicPartition, cols: CyclicPartition) -> Self {
        Net { rows, cols }
    }

    pub fn finest(rows: usize, cols: usize) -> Self {
        Net {
            rows: CyclicPartition::full(rows),
            cols: CyclicPartition::full(cols),
        }
    }

    pub fn rows(&self) -> &CyclicPartition {
        &self.rows
    }

    pub fn cols(&self) -> &CyclicPartition {
        &self.cols
    }

    pub fn is_refined_by(&self, other: &Net) -> bool {
        self.rows.is_refined_by(&other.rows) && self.cols.is_refined_by(&other.cols)
    }
}

/// Canonical `sum |mixed difference|^p` over the cells of a net (no root).
fn net_power_sum(
    f: &Grid2,
    rows: &[usize],
    cols: &[usize],
    p: Exponent,
    acc: &mut ExactSum,
) -> f64 {
    acc.clear();
    let (r, c) = (rows.len(), cols.len());
    for a in 0..r {
        let (r0, r1) = (rows[a], rows[(a + 1) % r]);
        if r0 == r1 {
            continue;
        }
        let (top, bot) = (f.row(r1), f.row(r0));
        for b in 0..c {
            let (c0, c1) = (cols[b], cols[(b + 1) % c]);
            if c0 == c1 {
                continue;
            }
            acc.add_term(&mixed_term(top[c1], top[c0], bot[c1], bot[c0], p));
        }
    }
    acc.value()
}

/// Value of the net: `(sum |Delta f|^p)^{1/p}` over all cyclic cells.
pub fn vitali_sum(f: &Grid2, net: &Net, p: Exponent) -> Result<f64> {
    if net.rows.period() != f.rows() || net.cols.period() != f.cols() {
        return Err(Error::Shape(format!(
            "net over {}x{} applied to a {}x{} grid",
            net.rows.period(),
            net.cols.period(),
            f.rows(),
            f.cols()
        )));
    }
    let s = net_power_sum(
        f,
        net.rows.indices(),
        net.cols.indices(),
        p,
        &mut ExactSum::new(),
    );
    Ok(p.root(s))
}

/// Value of the all-indices net. Exact supremum at p = 1, a lower bound
/// otherwise.
pub fn vitali_finest(f: &Grid2, p: Exponent) -> f64 {
    vitali_sum(f, &Net::finest(f.rows(), f.cols()), p).expect("finest net matches")
}

/// Default per-axis size limit of [`vitali_oracle`].
pub const VITALI_ORACLE_LIMIT: usize = 7;

/// Brute-force maximum over all `(2^M - 1)(2^N - 1)` nets.
pub fn vitali_oracle(f: &Grid2, p: Exponent) -> Result<f64> {
    vitali_oracle_with_limit(f, p, VITALI_ORACLE_LIMIT)
}

/// [`vitali_oracle`] with a caller-chosen per-axis limit (at most 12).
pub fn vitali_oracle_with_limit(f: &Grid2, p: Exponent, limit: usize) -> Result<f64> {
    let limit = limit.min(12);
    let size = f.rows().max(f.cols());
    if size > limit {
        return Err(Error::OracleLimit { size, limit });
    }
    let (m, n) = (f.rows(), f.cols());
    let scale = crate::grid::GridData::max_abs(f);
    let slack = 1e-9 * p.pow_abs(4.0 * scale) * (m * n) as f64;
    let subsets = |k: usize| -> Vec<Vec<usize>> {
        (1u32..(1 << k))
            .map(|mask| (0..k).filter(|&i| mask & (1 << i) != 0).collect())
            .collect()
    };
    let col_sets = subsets(n);
    let mut acc = ExactSum::new();
    let mut best = 0.0f64;
    let mut best_approx = 0.0f64;
    let mut diffs: Vec<Vec<f64>> = Vec::new();
    for rows in subsets(m) {
        // Row-pair difference profiles for this row set.
        diffs.clear();
        let r = rows.len();
        for a in 0..r {
            let (r0, r1) = (rows[a], rows[(a + 1) % r]);
            if r0 != r1 {
                diffs.push(
                    f.row(r1)
                        .iter()
                        .zip(f.row(r0))
                        .map(|(x, y)| x - y)
                        .collect(),
                );
            }
        }
        if diffs.is_empty() {
            continue;
        }
        for cols in &col_sets {
            let c = cols.len();
            if c < 2 {
                continue;
            }
            let mut approx = 0.0;
            for d in &diffs {
                for b in 0..c {
                    approx += p.pow_abs(d[cols[(b + 1) % c]] - d[cols[b]]);
                }
            }
            if approx + slack >= best_approx {
                let exact = net_power_sum(f, &rows, cols, p, &mut acc);
                if exact > best {
                    best = exact;
                }
                best_approx = best_approx.max(approx);
            }
        }
    }
    Ok(p.root(best))
}

/// Settings of the alternating ascent.
#[derive(Debug, Clone, PartialEq)]
pub struct AscentConfig {
    pub max_sweeps: usize,
    /// Number of two-section starts per axis: the best nets made of two
    /// rows (resp. columns) and an optimal partition of their difference.
    pub pair_starts: usize,
    /// Extra starts from random nets.
    pub restarts: usize,
    pub seed: u64,
}

impl Default for AscentConfig {
    fn default() -> Self {
        AscentConfig {
            max_sweeps: 32,
            pair_starts: 8,
            restarts: 4,
            seed: 0,
        }
    }
}

/// Best net found by [`vitali_ascent`]. `value` is a certified lower bound
/// of the discrete supremum.
#[derive(Debug, Clone, PartialEq)]
pub struct AscentResult {
    pub value: f64,
    pub net: Net,
    /// True when the winning start stopped because a sweep brought no
    /// improvement (rather than by exhausting `max_sweeps`).
    pub converged: bool,
    /// Number of improving sweeps of the winning start.
    pub sweeps: usize,
}

/// Pair costs `cost(r, r') = sum_b |Delta f|^p` over the column chain,
/// stored as a dense symmetric matrix.
fn pair_costs(f: &Grid2, cols: &[usize], p: Exponent) -> Vec<Dd> {
    let m = f.rows();
    let c = cols.len();
    let mut cost = vec![Dd::ZERO; m * m];
    if c < 2 {
        return cost;
    }
    for r in 0..m {
        let bot = f.row(r);
        for r2 in (r + 1)..m {
            let top = f.row(r2);
            let mut s = Dd::ZERO;
            for b in 0..c {
                let (c0, c1) = (cols[b], cols[(b + 1) % c]);
                s = s.add_term(&mixed_term(top[c1], top[c0], bot[c1], bot[c0], p));
            }
            cost[r * m + r2] = s;
            cost[r2 * m + r] = s;
        }
    }
    cost
}

/// Optimal cyclic chain for a symmetric pair-cost matrix, trying every
/// anchor as the smallest chain element. Ties prefer fewer points.
fn best_cyclic_chain(cost: &[Dd], m: usize) -> Vec<usize> {
    let mut best_total = Dd::ZERO;
    let mut best_chain = vec![0usize];
    let mut best = vec![Dd::ZERO; m];
    let mut count = vec![0usize; m];
    let mut pred = vec![usize::MAX; m];
    for a in 0..m {
        best[a] = Dd::ZERO;
        count[a] = 1;
        pred[a] = usize::MAX;
        for j in (a + 1)..m {
            let mut bj = Dd::ZERO;
            let mut cj = usize::MAX;
            let mut pj = usize::MAX;
            for i in a..j {
                let cand = best[i].add_dd(cost[i * m + j]);
                let ci = count[i] + 1;
                if pj == usize::MAX || cand.gt(bj) || (cand == bj && ci < cj) {
                    bj = cand;
                    cj = ci;
                    pj = i;
                }
            }
            best[j] = bj;
            count[j] = cj;
            pred[j] = pj;
        }
        for j in (a + 1)..m {
            let total = best[j].add_dd(cost[j * m + a]);
            if total.gt(best_total) || (total == best_total && count[j] < best_chain.len()) {
                best_total = total;
                let mut chain = Vec::with_capacity(count[j]);
                let mut k = j;
                while k != a {
                    chain.push(k);
                    k = pred[k];
                }
                chain.push(a);
                chain.reverse();
                best_chain = chain;
            }
        }
    }
    best_chain
}

struct Climb {
    rows: Vec<usize>,
    cols: Vec<usize>,
    sum: f64,
    converged: bool,
    sweeps: usize,
}

fn climb(
    f: &Grid2,
    ft: &Grid2,
    rows: Vec<usize>,
    cols: Vec<usize>,
    p: Exponent,
    max_sweeps: usize,
) -> Climb {
    let mut acc = ExactSum::new();
    let mut st = Climb {
        sum: net_power_sum(f, &rows, &cols, p, &mut acc),
        rows,
        cols,
        converged: false,
        sweeps: 0,
    };
    for _ in 0..max_sweeps {
        let mut improved = false;
        let rows = best_cyclic_chain(&pair_costs(f, &st.cols, p), f.rows());
        let s = net_power_sum(f, &rows, &st.cols, p, &mut acc);
        if s > st.sum {
            st.rows = rows;
            st.sum = s;
            improved = true;
        }
        let cols = best_cyclic_chain(&pair_costs(ft, &st.rows, p), f.cols());
        let s = net_power_sum(f, &st.rows, &cols, p, &mut acc);
        if s > st.sum {
            st.cols = cols;
            st.sum = s;
            improved = true;
        }
        if !improved {
            st.converged = true;
            return st;
        }
        st.sweeps += 1;
    }
    st
}

/// The `k` best two-row nets `{r, r'} x Pi`, with `Pi` an optimal partition
/// of the difference section `f_r' - f_r`, as (rows, cols) starts.
fn pair_starts(f: &Grid2, p: Exponent, k: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let m = f.rows();
    let mut scored: Vec<(f64, usize, usize, Vec<usize>)> = Vec::new();
    for r in 0..m {
        for r2 in (r + 1)..m {
            let diff = f.row_grid(r2).sub(&f.row_grid(r)).expect("same length");
            let best = pvar_cyclic_pruned(&diff, p);
            scored.push((best.value, r, r2, best.partition.indices().to_vec()));
        }
    }
    // Stable sort keeps the enumeration order among ties.
    scored.sort_by(|a, b| b.0.partial_cmp(&a.0).expect("finite values"));
    scored
        .into_iter()
        .take(k)
        .map(|(_, r, r2, cols)| (vec![r, r2], cols))
        .collect()
}

/// Alternating coordinate ascent with the default configuration and the
/// given sweep budget.
pub fn vitali_ascent(f: &Grid2, p: Exponent, max_sweeps: usize) -> AscentResult {
    vitali_ascent_with(
        f,
        p,
        &AscentConfig {
            max_sweeps,
            ..AscentConfig::default()
        },
    )
}

/// Alternating coordinate ascent: with the columns fixed the optimal rows
/// are found exactly by the all-anchor chain DP, then the roles swap.
/// Starts from the finest net, from the offset net (even rows, odd columns),
/// from the best two-section nets of each axis and from `restarts` seeded
/// random nets; the best result wins. Because the final value is the
/// canonical sum of an actual net it never exceeds the true supremum.
pub fn vitali_ascent_with(f: &Grid2, p: Exponent, cfg: &AscentConfig) -> AscentResult {
    let (m, n) = (f.rows(), f.cols());
    let ft = f.transpose();
    let mut starts: Vec<(Vec<usize>, Vec<usize>)> = vec![
        ((0..m).collect(), (0..n).collect()),
        ((0..m).step_by(2).collect(), (1..n).step_by(2).collect()),
    ];
    if cfg.pair_starts > 0 {
        for (rows, cols) in pair_starts(f, p, cfg.pair_starts) {
            starts.push((rows, cols));
        }
        for (cols, rows) in pair_starts(&ft, p, cfg.pair_starts) {
            starts.push((rows, cols));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut random_subset = |k: usize| -> Vec<usize> {
        loop {
            let s: Vec<usize> = (0..k).filter(|_| rng.gen_bool(0.5)).collect();
            if s.len() >= 2 {
                return s;
            }
        }
    };
    for _ in 0..cfg.restarts {
        let rows = random_subset(m);
        let cols = random_subset(n);
        starts.push((rows, cols));
    }
    let mut winner: Option<Climb> = None;
    for (rows, cols) in starts {
        let c = climb(f, &ft, rows, cols, p, cfg.max_sweeps);
        if winner.as_ref().map_or(true, |w| c.sum > w.sum) {
            winner = Some(c);
        }
    }
    let w = winner.expect("at least one start");
    AscentResult {
        value: p.root(w.sum),
        net: Net::new(
            CyclicPartition::new(w.rows, m).expect("valid chain"),
            CyclicPartition::new(w.cols, n).expect("valid chain"),
        ),
        converged: w.converged,
        sweeps: w.sweeps,
    }
}

/// Best certified lower bound available for `v_p^{(2)}(f)`: the exact value
/// at p = 1, otherwise the ascent value (which includes the finest net).
pub fn vitali_lower(f: &Grid2, p: Exponent) -> f64 {
    vitali_lower_with(f, p, &AscentConfig::default())
}

/// [`vitali_lower`] with an explicit ascent configuration.
pub fn vitali_lower_with(f: &Grid2, p: Exponent, cfg: &AscentConfig) -> f64 {
    if p.is_one() {
        vitali_finest(f, p)
    } else {
        vitali_ascent_with(f, p, cfg).value
    }
}

/// The offset net `x_i = i/n`, `y_j = (j + 1/2)/n` on a square grid whose
/// size is a multiple of `2n`.
pub fn staircase_net(size: usize, n: usize) -> Result<Net> {
    if n == 0 || size % (2 * n) != 0 {
        return Err(Error::Misaligned {
            size,
            required: 2 * n.max(1),
        });
    }
    let step = size / n;
    let rows = (0..n).map(|i| i * step).collect();
    let cols = (0..n).map(|j| j * step + step / 2).collect();
    Ok(Net::new(
        CyclicPartition::new(rows, size)?,
        CyclicPartition::new(cols, size)?,
    ))
}

/// Value of the staircase function on the offset net with `n` cells per
/// axis, evaluated on a `size x size` staircase grid.
pub fn staircase_net_bound(n: usize, p: Exponent, size: usize) -> Result<f64> {
    let net = staircase_net(size, n)?;
    let f = crate::grid::gen_staircase(size)?;
    vitali_sum(&f, &net, p)
}

/// Section bounds `v_p(f_x) <= V + v_p(f_{x0})` for every row and, with the
/// roles swapped, every column.
#[derive(Debug, Clone, PartialEq)]
pub struct SectionCheck {
    pub reference_row: usize,
    pub reference_col: usize,
    /// Certified lower value used for `v_p^{(2)}(f)`.
    pub vitali_lower: f64,
    pub comparisons: Vec<Comparison>,
}

impl SectionCheck {
    pub fn min_margin(&self) -> f64 {
        self.comparisons
            .iter()
            .map(Comparison::margin)
            .fold(f64::INFINITY, f64::min)
    }
}

fn min_variation_index(f: &Grid2, p: Exponent) -> usize {
    let mut best = (0, f64::INFINITY);
    for i in 0..f.rows() {
        let v = pvar(&f.row_grid(i), p);
        if v < best.1 {
            best = (i, v);
        }
    }
    best.0
}

/// Lower bound from two-row nets `{x0, x}` crossed with an optimal column
/// partition of `f_x - f_{x0}`; each such net is worth `2^{1/p} v_p(f_x - f_{x0})`.
fn two_section_lower(f: &Grid2, x0: usize, p: Exponent) -> f64 {
    let base = f.row_grid(x0);
    let mut best = 0.0f64;
    for x in 0..f.rows() {
        if x == x0 {
            continue;
        }
        let diff = f.row_grid(x).sub(&base).expect("same length");
        let cols = pvar_cyclic_pruned(&diff, p).partition;
        let rows = CyclicPartition::new(vec![x.min(x0), x.max(x0)], f.rows()).expect("two rows");
        let v = vitali_sum(f, &Net::new(rows, cols), p).expect("net fits");
        best = best.max(v);
    }
    best
}

/// Checks the section bound against the best certified lower value of the
/// Vitali variation. `x0` defaults to the row of minimal variation; the
/// column reference is always the column of minimal variation.
pub fn hardy_section_check(f: &Grid2, p: Exponent, x0: Option<usize>) -> SectionCheck {
    let ft = f.transpose();
    let x0 = x0.unwrap_or_else(|| min_variation_index(f, p)) % f.rows();
    let y0 = min_variation_index(&ft, p);
    let lower = vitali_lower(f, p)
        .max(two_section_lower(f, x0, p))
        .max(two_section_lower(&ft, y0, p));
    let mut comparisons = Vec::with_capacity(f.rows() + f.cols());
    for (grid, reference, axis) in [(f, x0, "row"), (&ft, y0, "col")] {
        let base = pvar(&grid.row_grid(reference), p);
        for k in 0..grid.rows() {
            comparisons.push(Comparison::new(
                format!("{axis} {k}"),
                pvar(&grid.row_grid(k), p),
                lower + base,
            ));
        }
    }
    SectionCheck {
        reference_row: x0,
        reference_col: y0,
        vitali_lower: lower,
        comparisons,
    }
}

/// Mixed difference of `f` at cell `(i, j)` with grid shifts `(s, t)`.
pub fn mixed_difference(f: &Grid2, i: usize, j: usize, s: usize, t: usize) -> f64 {
    mixed_diff(
        f.at(i + s, j + t),
        f.at(i + s, j),
        f.at(i, j + t),
        f.at(i, j),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{gen_product, gen_sine, gen_staircase, gen_tent_scaled, Grid1};

    fn checker() -> Grid2 {
        Grid2::from_rows(&[vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap()
    }

    #[test]
    fn degenerate_nets_are_zero() {
        let f = gen_staircase(6).unwrap();
        let one_row = Net::new(
            CyclicPartition::new(vec![2], 6).unwrap(),
            CyclicPartition::full(6),
        );
        assert_eq!(vitali_sum(&f, &one_row, Exponent::TWO).unwrap(), 0.0);
        let one_col = Net::new(
            CyclicPartition::full(6),
            CyclicPartition::new(vec![5], 6).unwrap(),
        );
        assert_eq!(vitali_sum(&f, &one_col, Exponent::ONE).unwrap(), 0.0);
    }

    #[test]
    fn checkerboard() {
        assert_eq!(vitali_finest(&checker(), Exponent::TWO), 4.0);
        assert_eq!(vitali_oracle(&checker(), Exponent::TWO).unwrap(), 4.0);
    }

    #[test]
    fn zero_grid() {
        let z = Grid2::zeros(5, 4).unwrap();
        assert_eq!(vitali_finest(&z, Exponent::ONE), 0.0);
        assert_eq!(vitali_oracle(&z, Exponent::TWO).unwrap(), 0.0);
        assert_eq!(vitali_ascent(&z, Exponent::TWO, 8).value, 0.0);
    }

    #[test]
    fn product_factorizes() {
        let g = gen_tent_scaled(2, 4).unwrap();
        let h = gen_sine(1, 4).unwrap();
        let f = gen_product(&g, &h);
        for p in [1.0, 1.5, 2.0, 3.0] {
            let p = Exponent::new(p).unwrap();
            let expect = pvar(&g, p) * pvar(&h, p);
            let o = vitali_oracle(&f, p).unwrap();
            assert!((o - expect).abs() < 1e-12);
            assert_eq!(vitali_ascent(&f, p, 16).value, o);
        }
    }

    #[test]
    fn oracle_limit() {
        let f = Grid2::zeros(8, 3).unwrap();
        assert!(matches!(
            vitali_oracle(&f, Exponent::ONE),
            Err(Error::OracleLimit { .. })
        ));
    }

    #[test]
    fn staircase_offset_net() {
        for p in [1.0, 2.0, 3.0] {
            let p = Exponent::new(p).unwrap();
            for n in [2usize, 4, 8] {
                let v = staircase_net_bound(n, p, 2 * n).unwrap();
                assert!(v >= (n as f64).powf(p.inv()) - 1e-12);
            }
        }
        assert!(staircase_net_bound(4, Exponent::TWO, 12).is_err());
        // With one interval per axis the only cell is the wrap cell, which
        // cancels for a periodic function.
        assert_eq!(staircase_net_bound(1, Exponent::TWO, 2).unwrap(), 0.0);
    }

    #[test]
    fn sections_of_sine_product() {
        let s = gen_sine(1, 8).unwrap();
        let f = gen_product(&s, &s);
        let r = hardy_section_check(&f, Exponent::TWO, None);
        assert!(r.min_margin() >= 0.0);
        let z = Grid2::zeros(4, 4).unwrap();
        let r = hardy_section_check(&z, Exponent::TWO, None);
        assert!(r.comparisons.iter().all(|c| c.lhs == 0.0 && c.rhs == 0.0));
        let g = Grid1::new(vec![0.0, 1.0, 3.0, 1.0]).unwrap();
        assert_eq!(pvar(&g, Exponent::ONE), 6.0);
    }
}
