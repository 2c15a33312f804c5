//! Wiener p-variation of a periodic grid function.
//!
//! `v_p(g) = max over cyclic partitions (sum |g[i_{k+1}] - g[i_k]|^p)^{1/p}`,
//! where the last index wraps around to the first. The maximum is found
//! exactly by a chain DP anchored at a global maximum: inserting a point of
//! value `c >= max(a, b)` between consecutive values `a, b` never decreases
//! the sum (`|c - a|^p >= |b - a|^p`), so some optimal partition contains
//! the anchor.

use crate::error::{Error, Result};
use crate::grid::{Exponent, Grid1, GridData};
use crate::sum::{increment_term, Dd, ExactSum};

/// Strictly increasing index set over `[0, period)`, read cyclically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicPartition {
    indices: Vec<usize>,
    period: usize,
}

impl CyclicPartition {
    pub fn new(indices: Vec<usize>, period: usize) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::EmptyPartition);
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidPartition(
                "indices must strictly increase".into(),
            ));
        }
        if *indices.last().unwrap() >= period {
            return Err(Error::InvalidPartition(format!(
                "index {} out of range for period {}",
                indices.last().unwrap(),
                period
            )));
        }
        Ok(CyclicPartition { indices, period })
    }

    /// All indices `0..period`.
    pub fn full(period: usize) -> Self {
        CyclicPartition {
            indices: (0..period).collect(),
            period,
        }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// Cyclically consecutive pairs `(i_k, i_{k+1})`, the last pair being
    /// `(i_last, i_0)`. A single-point partition yields one degenerate pair.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.indices.len();
        (0..n).map(move |k| (self.indices[k], self.indices[(k + 1) % n]))
    }

    /// Is every index of `self` also in `other`?
    pub fn is_refined_by(&self, other: &CyclicPartition) -> bool {
        self.period == other.period
            && self
                .indices
                .iter()
                .all(|i| other.indices.binary_search(i).is_ok())
    }
}

/// Exact optimum of the cyclic p-variation problem.
#[derive(Debug, Clone, PartialEq)]
pub struct PvarResult {
    pub value: f64,
    pub partition: CyclicPartition,
}

/// Canonically rounded sum `sum |g[j] - g[i]|^p` over the cyclic pairs of
/// an index list (no root taken).
pub(crate) fn chain_power_sum(
    values: &[f64],
    idx: &[usize],
    p: Exponent,
    acc: &mut ExactSum,
) -> f64 {
    acc.clear();
    let n = idx.len();
    for k in 0..n {
        let (a, b) = (values[idx[k]], values[idx[(k + 1) % n]]);
        acc.add_term(&increment_term(a, b, p));
    }
    acc.value()
}

/// `(sum_k |g[i_{k+1}] - g[i_k]|^p)^{1/p}` over the cyclic partition.
pub fn pvar_sum(g: &Grid1, part: &CyclicPartition, p: Exponent) -> Result<f64> {
    if part.period() != g.len() {
        return Err(Error::Shape(format!(
            "partition period {} vs grid length {}",
            part.period(),
            g.len()
        )));
    }
    let s = chain_power_sum(g.samples(), part.indices(), p, &mut ExactSum::new());
    Ok(p.root(s))
}

/// Longest-path DP over `order` (indices into `values`, starting at the
/// anchor), including the wrap pair back to the anchor. Returns the chosen
/// indices in `order`-position form.
fn anchored_chain(values: &[f64], order: &[usize], p: Exponent) -> Vec<usize> {
    let n = order.len();
    let mut best = vec![Dd::ZERO; n];
    let mut count = vec![1usize; n];
    let mut pred = vec![usize::MAX; n];
    for j in 1..n {
        let vj = values[order[j]];
        let mut bj = Dd::ZERO;
        let mut cj = usize::MAX;
        let mut pj = usize::MAX;
        for i in 0..j {
            let cand = best[i].add_term(&increment_term(values[order[i]], vj, p));
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
    // Close the cycle. The single-anchor chain has value 0.
    let v0 = values[order[0]];
    let mut top = Dd::ZERO;
    let mut top_count = 1usize;
    let mut end = 0usize;
    for j in 1..n {
        let total = best[j].add_term(&increment_term(values[order[j]], v0, p));
        if total.gt(top) || (total == top && count[j] < top_count) {
            top = total;
            top_count = count[j];
            end = j;
        }
    }
    let mut chain = Vec::with_capacity(top_count);
    let mut j = end;
    while j != 0 {
        chain.push(j);
        j = pred[j];
    }
    chain.push(0);
    chain.reverse();
    chain
}

fn argmax_index(values: &[f64]) -> usize {
    let mut best = 0;
    for (k, &v) in values.iter().enumerate() {
        if v > values[best] {
            best = k;
        }
    }
    best
}

fn solve_on(g: &Grid1, candidates: Vec<usize>, p: Exponent) -> PvarResult {
    let values = g.samples();
    let n = values.len();
    let anchor = argmax_index(values);
    // Rotate the candidate list so that it starts at the anchor.
    let start = candidates
        .iter()
        .position(|&k| k == anchor)
        .expect("anchor is a candidate");
    let order: Vec<usize> = candidates[start..]
        .iter()
        .chain(&candidates[..start])
        .copied()
        .collect();
    let chain = anchored_chain(values, &order, p);
    let mut indices: Vec<usize> = chain.iter().map(|&k| order[k]).collect();
    indices.sort_unstable();
    let partition = CyclicPartition::new(indices, n).expect("DP yields a valid partition");
    let value = pvar_sum(g, &partition, p).expect("matching period");
    PvarResult { value, partition }
}

/// Exact p-variation and one optimal partition (ties prefer fewer points).
pub fn pvar_cyclic(g: &Grid1, p: Exponent) -> PvarResult {
    if p.is_one() {
        // Refinement never decreases a 1-variation sum: the full partition
        // is optimal.
        let partition = CyclicPartition::full(g.len());
        let value = pvar_sum(g, &partition, p).expect("matching period");
        return PvarResult { value, partition };
    }
    solve_on(g, (0..g.len()).collect(), p)
}

/// Same optimum as [`pvar_cyclic`], restricted to (non-strict) local extrema.
/// For `p >= 1` an interior point of a monotone run can always be dropped or
/// pushed to the end of its run without decreasing the sum.
pub fn pvar_cyclic_pruned(g: &Grid1, p: Exponent) -> PvarResult {
    let v = g.samples();
    let n = v.len();
    let candidates: Vec<usize> = (0..n)
        .filter(|&k| {
            let (a, b, c) = (v[(k + n - 1) % n], v[k], v[(k + 1) % n]);
            (b >= a && b >= c) || (b <= a && b <= c)
        })
        .collect();
    solve_on(g, candidates, p)
}

/// The p-variation value alone. Uses the extrema-pruned DP, which has the
/// same optimum as [`pvar_cyclic`].
pub fn pvar(g: &Grid1, p: Exponent) -> f64 {
    if p.is_one() {
        pvar_cyclic(g, p).value
    } else {
        pvar_cyclic_pruned(g, p).value
    }
}

/// Largest grid accepted by [`pvar_oracle`].
pub const PVAR_ORACLE_LIMIT: usize = 18;

/// Brute-force maximum of [`pvar_sum`] over all nonempty index subsets.
pub fn pvar_oracle(g: &Grid1, p: Exponent) -> Result<f64> {
    let n = g.len();
    if n > PVAR_ORACLE_LIMIT {
        return Err(Error::OracleLimit {
            size: n,
            limit: PVAR_ORACLE_LIMIT,
        });
    }
    let values = g.samples();
    let mut acc = ExactSum::new();
    let mut idx = Vec::with_capacity(n);
    let mut best = 0.0f64;
    let mut best_approx = 0.0f64;
    let scale = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    // Absolute slack covering the rounding error of the plain-float screen.
    let slack = 1e-9 * p.pow_abs(2.0 * scale) * n as f64;
    for mask in 1u32..(1u32 << n) {
        idx.clear();
        idx.extend((0..n).filter(|&k| mask & (1 << k) != 0));
        let m = idx.len();
        let mut approx = 0.0;
        for k in 0..m {
            approx += increment_term(values[idx[k]], values[idx[(k + 1) % m]], p).approx();
        }
        if approx + slack >= best_approx {
            let exact = chain_power_sum(values, &idx, p, &mut acc);
            if exact > best {
                best = exact;
            }
            best_approx = best_approx.max(approx);
        }
    }
    Ok(p.root(best))
}

/// `Omega_p(g) = ((1/N^2) sum_{i,j} |g[i] - g[j]|^p)^{1/p}`.
pub fn omega_p_functional(g: &Grid1, p: Exponent) -> f64 {
    let v = g.samples();
    let n = v.len();
    let mut acc = ExactSum::new();
    for i in 0..n {
        let mut row = 0.0;
        for j in 0..n {
            row += p.pow_abs(v[i] - v[j]);
        }
        acc.add(row);
    }
    p.root(acc.value() / (n * n) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{gen_sine, gen_tent_scaled};

    fn e(p: f64) -> Exponent {
        Exponent::new(p).unwrap()
    }

    #[test]
    fn sum_examples() {
        let g = Grid1::new(vec![0.0, 1.0, 0.0, 1.0]).unwrap();
        let full = CyclicPartition::full(4);
        assert_eq!(pvar_sum(&g, &full, Exponent::ONE).unwrap(), 4.0);
        assert_eq!(pvar_sum(&g, &full, Exponent::TWO).unwrap(), 2.0);
        let c = Grid1::new(vec![2.5; 5]).unwrap();
        let part = CyclicPartition::new(vec![1, 3], 5).unwrap();
        assert_eq!(pvar_sum(&c, &part, e(1.7)).unwrap(), 0.0);
        assert_eq!(CyclicPartition::new(vec![], 4), Err(Error::EmptyPartition));
        assert!(CyclicPartition::new(vec![2, 1], 4).is_err());
        assert!(CyclicPartition::new(vec![4], 4).is_err());
    }

    #[test]
    fn tent_closed_form() {
        let r = pvar_cyclic(&gen_tent_scaled(4, 64).unwrap(), Exponent::TWO);
        assert!((r.value - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn sine_closed_form() {
        for n in 1..=4usize {
            for p in [1.0, 1.5, 2.0, 3.0] {
                let g = gen_sine(n, 4 * n).unwrap();
                let expect = 2.0 * (2.0 * n as f64).powf(1.0 / p);
                assert!((pvar(&g, e(p)) - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn constant_and_oracle_examples() {
        let c = Grid1::new(vec![1.0; 7]).unwrap();
        let r = pvar_cyclic(&c, e(2.5));
        assert_eq!(r.value, 0.0);
        assert_eq!(r.partition.len(), 1);
        let g = Grid1::new(vec![0.0, 1.0, 0.0, 1.0]).unwrap();
        assert_eq!(pvar_oracle(&g, Exponent::TWO).unwrap(), 2.0);
        assert!(pvar_oracle(&Grid1::zeros(19).unwrap(), Exponent::ONE).is_err());
    }

    #[test]
    fn omega_examples() {
        let s = Grid1::new(vec![1.0, 1.0, -1.0, -1.0]).unwrap();
        assert!((omega_p_functional(&s, Exponent::TWO) - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(
            omega_p_functional(&Grid1::new(vec![3.0; 4]).unwrap(), e(1.3)),
            0.0
        );
    }
}
