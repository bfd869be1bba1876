//! Exact stationary analysis of the interface chain viewed from its leftmost
//! particle, truncated to a span cap.
//!
//! States are bit masks of particle offsets from the leftmost particle:
//! offset 0 is always occupied, the particle count is odd, and the support
//! fits in `[0, K]`. Transitions apply a shape translate, re-center at the
//! new leftmost particle, and redirect anything that leaves the span cap to
//! the single-particle state so the chain stays stochastic; the stationary
//! probability flow through those redirects is reported as the leakage.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::SiteParity;
use crate::models::RateTable;

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct TruncationParams {
    /// Span cap: supports fit in offsets `0..=span_cap`.
    pub span_cap: u32,
    /// Target on the l1 stationarity residual of the generator.
    pub residual_tol: f64,
    pub max_iterations: u64,
}

impl Default for TruncationParams {
    fn default() -> Self {
        TruncationParams {
            span_cap: 20,
            residual_tol: 1e-12,
            max_iterations: 200_000,
        }
    }
}

/// Stationary summary of the truncated chain.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TruncationReport {
    pub span_cap: u32,
    pub states: usize,
    /// Stationary mass of the single-particle state.
    pub p_single: f64,
    /// Stationary mean particle count.
    pub mean_particles: f64,
    /// `size_distribution[m]` is the stationary probability of `2m+1` particles.
    pub size_distribution: Vec<f64>,
    /// Stationary probability flow through the span-cap redirects, per unit
    /// time; bounds the distortion of the truncation.
    pub leakage_flow: f64,
    pub iterations: u64,
    pub residual: f64,
}

/// A shape translated into offset coordinates: toggle rows with read columns,
/// in integer site steps relative to the anchor.
struct OffsetMove {
    rate_class: u8,
    rows: Vec<(i64, Vec<i64>)>,
    min_col: i64,
    max_col: i64,
}

pub fn truncated_hat_analysis(
    interface_table: &RateTable,
    params: &TruncationParams,
) -> Result<TruncationReport> {
    if !interface_table.is_parity_preserving() {
        return Err(Error::TableNotParityPreserving);
    }
    let k = params.span_cap;
    if k == 0 || k > 30 {
        return Err(Error::InvalidParameter(format!(
            "span cap {k} outside the supported 1..=30"
        )));
    }
    let base = match interface_table.lattice().parity() {
        SiteParity::Whole => 0i64,
        SiteParity::Half => -1i64,
    };
    let mut rates: Vec<f64> = Vec::new();
    let mut moves: Vec<OffsetMove> = Vec::new();
    for e in interface_table.entries() {
        let class = rates.len();
        if class > u8::MAX as usize {
            return Err(Error::InvalidParameter("too many distinct rates".into()));
        }
        rates.push(e.rate);
        let rows: Vec<(i64, Vec<i64>)> = e
            .shape
            .rows()
            .map(|(r, cols)| {
                (
                    (r - base) / 2,
                    cols.iter().map(|&(_, c)| (c - base) / 2).collect(),
                )
            })
            .collect();
        let all_cols: Vec<i64> = rows.iter().flat_map(|(_, cs)| cs.iter().copied()).collect();
        moves.push(OffsetMove {
            rate_class: class as u8,
            min_col: all_cols.iter().copied().min().unwrap_or(0),
            max_col: all_cols.iter().copied().max().unwrap_or(0),
            rows,
        });
    }

    // Dense index over free bits 1..=K with even popcount.
    let free_bits = k as usize;
    let mut index: Vec<u32> = vec![u32::MAX; 1 << free_bits];
    let mut states: Vec<u32> = Vec::with_capacity(1 << (free_bits - 1));
    for m in 0..(1u32 << free_bits) {
        if m.count_ones() % 2 == 0 {
            index[m as usize] = states.len() as u32;
            states.push(m);
        }
    }
    let n_states = states.len();
    let single_idx = index[0] as usize;

    // Bias so toggles below offset 0 stay in the mask.
    let span_sites = interface_table.max_span_doubled() / 2 + 1;
    let bias = span_sites.max(1) as u32;
    assert!(k + 2 * bias + 1 < 63, "span cap leaves no headroom in a word");

    let full_mask = |free: u32| -> u64 { ((free as u64) << 1) | 1 };

    // Transitions of the single-particle state decide whether the cap is
    // usable at all.
    {
        let delta0 = full_mask(0);
        for mv in &moves {
            for target in move_targets(mv, delta0, k, bias) {
                if target.is_none() {
                    return Err(Error::SpanCapTooSmall { cap: k });
                }
            }
        }
    }

    // CSR over all states.
    let mut row_ptr: Vec<u64> = Vec::with_capacity(n_states + 1);
    let mut tgt: Vec<u32> = Vec::new();
    let mut cls: Vec<u8> = Vec::new();
    let mut exit: Vec<f64> = vec![0.0; n_states];
    let mut leak: Vec<f64> = vec![0.0; n_states];
    row_ptr.push(0);
    for (si, &free) in states.iter().enumerate() {
        let s = full_mask(free);
        for mv in &moves {
            let rate = rates[mv.rate_class as usize];
            for target in move_targets(mv, s, k, bias) {
                match target {
                    Some(t) => {
                        if t == s {
                            continue; // invisible in hat coordinates
                        }
                        let t_free = (t >> 1) as u32;
                        let ti = index[t_free as usize];
                        debug_assert_ne!(ti, u32::MAX, "targets keep odd parity");
                        tgt.push(ti);
                        cls.push(mv.rate_class);
                        exit[si] += rate;
                    }
                    None => {
                        // out of the span cap: redirect to the single state
                        tgt.push(single_idx as u32);
                        cls.push(mv.rate_class);
                        exit[si] += rate;
                        leak[si] += rate;
                    }
                }
            }
        }
        row_ptr.push(tgt.len() as u64);
    }

    let lambda = exit.iter().cloned().fold(0.0f64, f64::max);
    let mut pi = vec![0.0f64; n_states];
    pi[single_idx] = 1.0;
    let mut iterations = 0u64;
    let mut residual = 0.0f64;
    if lambda > 0.0 {
        let mut next = vec![0.0f64; n_states];
        loop {
            for x in next.iter_mut() {
                *x = 0.0;
            }
            for si in 0..n_states {
                let p = pi[si];
                if p == 0.0 {
                    continue;
                }
                next[si] += p * (1.0 - exit[si] / lambda);
                let begin = row_ptr[si] as usize;
                let end = row_ptr[si + 1] as usize;
                for e in begin..end {
                    next[tgt[e] as usize] += p * (rates[cls[e] as usize] / lambda);
                }
            }
            iterations += 1;
            let mut diff = 0.0f64;
            for (a, b) in pi.iter().zip(next.iter()) {
                diff += (a - b).abs();
            }
            std::mem::swap(&mut pi, &mut next);
            residual = lambda * diff;
            if residual < params.residual_tol || iterations >= params.max_iterations {
                break;
            }
            if iterations % 1024 == 0 {
                let total: f64 = pi.iter().sum();
                for x in pi.iter_mut() {
                    *x /= total;
                }
            }
        }
        let total: f64 = pi.iter().sum();
        for x in pi.iter_mut() {
            *x /= total;
        }
    }

    let mut mean_particles = 0.0;
    let mut size_distribution = vec![0.0; (k as usize + 2) / 2 + 1];
    let mut leakage_flow = 0.0;
    for (si, &free) in states.iter().enumerate() {
        let count = full_mask(free).count_ones() as usize;
        mean_particles += pi[si] * count as f64;
        size_distribution[(count - 1) / 2] += pi[si];
        leakage_flow += pi[si] * leak[si];
    }
    while size_distribution.last() == Some(&0.0) && size_distribution.len() > 1 {
        size_distribution.pop();
    }
    Ok(TruncationReport {
        span_cap: k,
        states: n_states,
        p_single: pi[single_idx],
        mean_particles,
        size_distribution,
        leakage_flow,
        iterations,
        residual,
    })
}

/// All active translates of one shape on the state: yields the recentered
/// full target mask, or `None` when the new support exceeds the span cap.
/// Inactive translates (no row flips) are skipped.
fn move_targets<'a>(
    mv: &'a OffsetMove,
    s: u64,
    k: u32,
    bias: u32,
) -> impl Iterator<Item = Option<u64>> + 'a {
    let p_lo = -mv.max_col;
    let p_hi = k as i64 - mv.min_col;
    (p_lo..=p_hi).filter_map(move |p| {
        let mut toggles: u64 = 0;
        let mut any = false;
        for (row, cols) in &mv.rows {
            let mut parity = false;
            for c in cols {
                let off = p + c;
                if (0..=k as i64).contains(&off) && (s >> off) & 1 == 1 {
                    parity = !parity;
                }
            }
            if parity {
                any = true;
                let pos = p + row + bias as i64;
                debug_assert!(pos >= 0);
                toggles ^= 1u64 << pos;
            }
        }
        if !any {
            return None;
        }
        let new = (s << bias) ^ toggles;
        debug_assert!(new != 0, "odd particle count cannot vanish");
        let lo = new.trailing_zeros();
        let hi = 63 - new.leading_zeros();
        if hi - lo > k {
            return Some(None);
        }
        Some(Some(new >> lo))
    })
}
