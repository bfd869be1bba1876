//! Exact verification of the two duality identities on small rings.
//!
//! For a table X and its dual Y', expectation of the overlap parity is
//! conserved when one process runs and the other is frozen; the same holds
//! for the interface pairing of X with the dual of its interface model. Both
//! identities are checked by evolving exact transient distributions on the
//! ring from random deterministic initial pairs and comparing the two sides.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::SiteParity;
use crate::models::RateTable;

use super::{build_generator, overlap_parity, transient, Distribution, RingModel};

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct DualityCheckParams {
    pub n: u32,
    pub t: f64,
    pub eps: f64,
    pub trials: u32,
    pub seed: u64,
}

/// The outcome of one exact duality check.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DualityReport {
    pub identity: String,
    pub n: u32,
    pub t: f64,
    pub eps: f64,
    pub trials: u32,
    pub seed: u64,
    pub max_deviation: f64,
}

fn require_duality_ring(n: u32, range: u32) -> Result<()> {
    // keeps a shape and its adjoint from overlapping themselves on the ring
    if n < 4 * range + 2 {
        return Err(Error::RingTooSmallForDuality { n, range });
    }
    Ok(())
}

/// Check conservation of the overlap parity between the system and its dual:
/// for random initial pairs, evolve each side exactly and compare.
pub fn check_duality(table: &RateTable, params: &DualityCheckParams) -> Result<DualityReport> {
    require_duality_ring(params.n, table.range())?;
    let dual = table.dual();
    let gen_x = build_generator(&RingModel::new(table, params.n)?)?;
    let gen_y = build_generator(&RingModel::new(&dual, params.n)?)?;
    let n_states = gen_x.n_states();
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut max_dev = 0.0f64;
    for _ in 0..params.trials {
        let x0: u32 = rng.random_range(0..n_states as u32);
        let y0: u32 = rng.random_range(0..n_states as u32);
        let p_t = transient(&gen_x, &Distribution::point_mass(x0, n_states), params.t, params.eps)?;
        let q_t = transient(&gen_y, &Distribution::point_mass(y0, n_states), params.t, params.eps)?;
        let lhs = p_t.expect(|s| overlap_parity(s, y0));
        let rhs = q_t.expect(|s| overlap_parity(x0, s));
        max_dev = max_dev.max((lhs - rhs).abs());
    }
    Ok(DualityReport {
        identity: "dual".into(),
        n: params.n,
        t: params.t,
        eps: params.eps,
        trials: params.trials,
        seed: params.seed,
        max_deviation: max_dev,
    })
}

/// Overlap parity of the interface profile of `x` with `x_prime`, on a
/// doubled ring: `x` occupies one parity class, `x_prime` the other.
fn interface_pairing(x: u32, x_prime: u32, n: u32, parity: SiteParity) -> f64 {
    let gx = ring_grad(x, n, parity);
    let via_x = overlap_parity(gx, x_prime);
    if cfg!(debug_assertions) {
        let gxp = ring_grad(x_prime, n, parity.flipped());
        debug_assert_eq!(
            via_x,
            overlap_parity(x, gxp),
            "the two interface pairing routes must agree"
        );
    }
    via_x
}

/// Interface profile of a ring state in slot coordinates; mirrors
/// `Config::grad` for rings.
fn ring_grad(x: u32, n: u32, parity: SiteParity) -> u32 {
    let mut out = 0u32;
    for k in 0..n {
        let bit = match parity {
            SiteParity::Whole => (x >> k ^ x >> ((k + 1) % n)) & 1,
            SiteParity::Half => (x >> ((k + n - 1) % n) ^ x >> k) & 1,
        };
        out |= bit << k;
    }
    out
}

/// Check conservation of the interface pairing between the system and the
/// dual of its interface model.
pub fn check_h_duality(table: &RateTable, params: &DualityCheckParams) -> Result<DualityReport> {
    require_duality_ring(params.n, table.range())?;
    let x_prime = table.interface()?.dual();
    let parity = table.lattice().parity();
    let gen_x = build_generator(&RingModel::new(table, params.n)?)?;
    let gen_xp = build_generator(&RingModel::new(&x_prime, params.n)?)?;
    let n_states = gen_x.n_states();
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut max_dev = 0.0f64;
    for _ in 0..params.trials {
        let x0: u32 = rng.random_range(0..n_states as u32);
        let xp0: u32 = rng.random_range(0..n_states as u32);
        let p_t = transient(&gen_x, &Distribution::point_mass(x0, n_states), params.t, params.eps)?;
        let q_t = transient(
            &gen_xp,
            &Distribution::point_mass(xp0, n_states),
            params.t,
            params.eps,
        )?;
        let lhs = p_t.expect(|s| interface_pairing(s, xp0, params.n, parity));
        let rhs = q_t.expect(|s| interface_pairing(x0, s, params.n, parity));
        max_dev = max_dev.max((lhs - rhs).abs());
    }
    Ok(DualityReport {
        identity: "interface-dual".into(),
        n: params.n,
        t: params.t,
        eps: params.eps,
        trials: params.trials,
        seed: params.seed,
        max_deviation: max_dev,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::rebellious_table;

    #[test]
    fn zero_time_is_exact() {
        let table = rebellious_table(0.5).unwrap();
        let params = DualityCheckParams {
            n: 12,
            t: 0.0,
            eps: 1e-10,
            trials: 5,
            seed: 7,
        };
        let rep = check_duality(&table, &params).unwrap();
        assert_eq!(rep.max_deviation, 0.0);
        let rep = check_h_duality(&table, &params).unwrap();
        assert_eq!(rep.max_deviation, 0.0);
    }

    #[test]
    fn voter_duality_small_ring() {
        let table = rebellious_table(1.0).unwrap();
        let params = DualityCheckParams {
            n: 6,
            t: 0.7,
            eps: 1e-10,
            trials: 8,
            seed: 3,
        };
        let rep = check_duality(&table, &params).unwrap();
        assert!(rep.max_deviation <= 1e-8, "deviation {}", rep.max_deviation);
        let rep = check_h_duality(&table, &params).unwrap();
        assert!(rep.max_deviation <= 1e-8, "deviation {}", rep.max_deviation);
    }

    #[test]
    fn ring_size_rule_enforced() {
        let table = rebellious_table(0.5).unwrap();
        let params = DualityCheckParams {
            n: 8,
            t: 1.0,
            eps: 1e-10,
            trials: 1,
            seed: 0,
        };
        // rebellious has range 2, so n must be at least 10
        assert!(check_duality(&table, &params).is_err());
    }

    #[test]
    fn ring_grad_kills_constants() {
        assert_eq!(ring_grad(0b111111, 6, SiteParity::Whole), 0);
        assert_eq!(ring_grad(0, 6, SiteParity::Whole), 0);
        // a single particle has two interfaces
        assert_eq!(ring_grad(0b000100, 6, SiteParity::Whole).count_ones(), 2);
    }
}
