//! Exact finite-ring continuous-time Markov engine.
//!
//! A rate table expanded onto a small ring gives a generator on the full
//! state space of `2^n` bit-vectors. Transient distributions are computed by
//! uniformization with a certified Poisson tail bound, which keeps every
//! intermediate vector a probability vector. This is the desk-scale vehicle
//! for verifying the duality identities and the truncated interface chain.

mod duality;
mod truncation;

pub use duality::{check_duality, check_h_duality, DualityCheckParams, DualityReport};
pub use truncation::{truncated_hat_analysis, TruncationParams, TruncationReport};

use crate::error::{Error, Result};
use crate::lattice::SiteParity;
use crate::models::RateTable;

/// Hard cap on ring sites for exact computations (2^14 states).
pub const MAX_RING_SITES: u32 = 14;

/// A rate table expanded onto a ring of `n` sites: the `n` translates of
/// every table entry, with toggle rows and read masks resolved to ring slots.
#[derive(Clone, Debug)]
pub struct RingModel {
    n: u32,
    parity: SiteParity,
    moves: Vec<RingMove>,
}

/// One translate of one table shape, resolved on the ring.
#[derive(Clone, Debug)]
struct RingMove {
    rate: f64,
    /// (toggle bit, read mask): the toggle fires when the read parity is odd.
    rows: Vec<(u32, u32)>,
}

impl RingModel {
    pub fn new(table: &RateTable, n: u32) -> Result<RingModel> {
        let parity = table.lattice().parity();
        if n == 0 {
            return Err(Error::InvalidParameter("ring size must be positive".into()));
        }
        let span = table.max_span_doubled();
        if 2 * n as i64 <= span {
            return Err(Error::RingTooSmall {
                n,
                span: ((span + 1) / 2) as u32,
            });
        }
        let n2 = 2 * n as i64;
        let mut moves = Vec::new();
        for e in table.entries() {
            for k in 0..n as i64 {
                let mut rows = Vec::new();
                for (row, cols) in e.shape.rows() {
                    let row_slot = slot_on_ring(row + 2 * k, parity, n2);
                    let mut mask = 0u32;
                    for &(_, c) in cols {
                        mask ^= 1 << slot_on_ring(c + 2 * k, parity, n2);
                    }
                    rows.push((row_slot, mask));
                }
                moves.push(RingMove { rate: e.rate, rows });
            }
        }
        Ok(RingModel { n, parity, moves })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn parity(&self) -> SiteParity {
        self.parity
    }

    /// The state the move sends `s` to, XOR `s` (zero means the move is a
    /// no-op on `s`).
    fn flip_mask(&self, mv: &RingMove, s: u32) -> u32 {
        let mut m = 0u32;
        for &(bit, mask) in &mv.rows {
            if (s & mask).count_ones() % 2 == 1 {
                m |= 1 << bit;
            }
        }
        m
    }
}

fn slot_on_ring(doubled: i64, parity: SiteParity, n2: i64) -> u32 {
    let d = doubled.rem_euclid(n2);
    debug_assert_eq!(SiteParity::of_doubled(d), parity);
    ((d - parity.bit()) / 2) as u32
}

/// A conservative rate matrix on the full ring state space, stored sparsely.
#[derive(Clone, Debug)]
pub struct Generator {
    n_states: usize,
    /// Off-diagonal transitions per state, target-sorted with merged rates.
    rows: Vec<Vec<(u32, f64)>>,
    exit: Vec<f64>,
}

/// Expand the table on the ring and build the generator over all `2^n`
/// states: the transition from `x` to `x XOR Ax` accumulates the rate of
/// every translate with a nonzero flip.
pub fn build_generator(model: &RingModel) -> Result<Generator> {
    let n = model.n;
    if n > MAX_RING_SITES {
        return Err(Error::StateSpaceTooLarge {
            n,
            cap: MAX_RING_SITES,
        });
    }
    let n_states = 1usize << n;
    let mut rows: Vec<Vec<(u32, f64)>> = vec![Vec::new(); n_states];
    let mut exit = vec![0.0; n_states];
    for s in 0..n_states as u32 {
        let mut row: Vec<(u32, f64)> = Vec::new();
        for mv in &model.moves {
            let m = model.flip_mask(mv, s);
            if m != 0 {
                row.push((s ^ m, mv.rate));
            }
        }
        row.sort_unstable_by_key(|&(t, _)| t);
        let mut merged: Vec<(u32, f64)> = Vec::with_capacity(row.len());
        for (t, r) in row {
            match merged.last_mut() {
                Some(last) if last.0 == t => last.1 += r,
                _ => merged.push((t, r)),
            }
            exit[s as usize] += r;
        }
        rows[s as usize] = merged;
    }
    Ok(Generator {
        n_states,
        rows,
        exit,
    })
}

impl Generator {
    pub fn n_states(&self) -> usize {
        self.n_states
    }

    pub fn exit_rate(&self, s: u32) -> f64 {
        self.exit[s as usize]
    }

    pub fn transitions(&self, s: u32) -> &[(u32, f64)] {
        &self.rows[s as usize]
    }

    /// Row sums of the full matrix (diagonal is minus the exit rate); zero up
    /// to rounding for every state.
    pub fn max_row_sum_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for s in 0..self.n_states {
            let sum: f64 = self.rows[s].iter().map(|&(_, r)| r).sum();
            worst = worst.max((sum - self.exit[s]).abs());
        }
        worst
    }
}

/// A probability vector over the ring state space.
#[derive(Clone, Debug, PartialEq)]
pub struct Distribution(Vec<f64>);

impl Distribution {
    pub fn from_vec(v: Vec<f64>) -> Result<Distribution> {
        let sum: f64 = v.iter().sum();
        if v.iter().any(|&p| !(p >= 0.0) || !p.is_finite()) {
            return Err(Error::InvalidParameter(
                "distribution entries must be nonnegative".into(),
            ));
        }
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "distribution sums to {sum}, not 1"
            )));
        }
        Ok(Distribution(v))
    }

    pub fn point_mass(state: u32, n_states: usize) -> Distribution {
        let mut v = vec![0.0; n_states];
        v[state as usize] = 1.0;
        Distribution(v)
    }

    pub fn uniform(n_states: usize) -> Distribution {
        Distribution(vec![1.0 / n_states as f64; n_states])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    /// Expectation of a state functional.
    pub fn expect(&self, f: impl Fn(u32) -> f64) -> f64 {
        self.0
            .iter()
            .enumerate()
            .map(|(s, &p)| p * f(s as u32))
            .sum()
    }
}

/// Transient distribution at time `t` by uniformization: a Poisson mixture of
/// powers of the uniformized kernel, truncated once the accumulated Poisson
/// mass exceeds `1 - eps`, then renormalized. The result is within `eps` of
/// the exact distribution in total variation before renormalization.
pub fn transient(gen: &Generator, p0: &Distribution, t: f64, eps: f64) -> Result<Distribution> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::InvalidParameter(format!("time {t}")));
    }
    if !(eps > 0.0) {
        return Err(Error::InvalidParameter(format!("tolerance {eps}")));
    }
    if p0.0.len() != gen.n_states {
        return Err(Error::InvalidParameter(
            "distribution length does not match the state space".into(),
        ));
    }
    let lambda = gen.exit.iter().cloned().fold(0.0f64, f64::max);
    if t == 0.0 || lambda == 0.0 {
        return Ok(p0.clone());
    }
    let q = lambda * t;
    let mut v = p0.0.clone();
    let mut acc = vec![0.0; gen.n_states];
    let mut weight = (-q).exp();
    if weight == 0.0 {
        return Err(Error::InvalidParameter(format!(
            "uniformization rate * time = {q} is too large for a float Poisson expansion"
        )));
    }
    let mut cum = weight;
    axpy(&mut acc, weight, &v);
    let mut k = 1u64;
    let mut next = vec![0.0; gen.n_states];
    while cum < 1.0 - eps {
        // next = v * (I + Q/lambda)
        for x in next.iter_mut() {
            *x = 0.0;
        }
        for s in 0..gen.n_states {
            let vs = v[s];
            if vs == 0.0 {
                continue;
            }
            next[s] += vs * (1.0 - gen.exit[s] / lambda);
            for &(tgt, rate) in &gen.rows[s] {
                next[tgt as usize] += vs * (rate / lambda);
            }
        }
        std::mem::swap(&mut v, &mut next);
        weight *= q / k as f64;
        cum += weight;
        axpy(&mut acc, weight, &v);
        k += 1;
        if k > 1_000_000 {
            return Err(Error::InvalidParameter(
                "uniformization failed to converge".into(),
            ));
        }
    }
    let total: f64 = acc.iter().sum();
    for x in acc.iter_mut() {
        *x /= total;
    }
    Distribution::from_vec(acc)
}

fn axpy(acc: &mut [f64], a: f64, v: &[f64]) {
    for (x, &y) in acc.iter_mut().zip(v) {
        *x += a * y;
    }
}

/// Parity of the overlap of two ring states.
pub fn overlap_parity(a: u32, b: u32) -> f64 {
    ((a & b).count_ones() % 2) as f64
}
