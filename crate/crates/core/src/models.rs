//! Rate tables for cancellative systems, the mechanical construction of dual
//! and interface tables, the named flip-rate models, and the JSON model
//! exchange format.
//!
//! A rate table is a finite list of anchored operator shapes with positive
//! rates; the system makes the transition `x -> x XOR Ax` at the shape's rate,
//! for every translate of every shape. The neutral Neuhauser-Pacala and affine
//! voter models are simulated from their flip rates only; the rebellious
//! voter model additionally has an explicit table, which is what the duality
//! machinery consumes.

use serde::{Deserialize, Serialize};

use crate::config::{parse_lattice, Config};
use crate::error::{Error, Result};
use crate::lattice::{DoubledIndex, Lattice, SiteParity};
use crate::ops::LocalOp;

/// One anchored shape with its rate per unit time (per translate).
#[derive(Clone, Debug, PartialEq)]
pub struct TableEntry {
    pub shape: LocalOp,
    pub rate: f64,
}

/// A translation-invariant, finite-range family of transition rates.
///
/// The stored range is the tight reach of the shapes (largest |row - col| in
/// site units); the range passed to [`new`](Self::new) only caps validation.
#[derive(Clone, Debug, PartialEq)]
pub struct RateTable {
    entries: Vec<TableEntry>,
    lattice: Lattice,
    range: u32,
}

impl RateTable {
    /// Validate and canonicalise: shapes are anchored, zero rates dropped,
    /// duplicate shapes merged by adding rates, entries sorted.
    pub fn new(lattice: Lattice, range: u32, entries: Vec<TableEntry>) -> Result<RateTable> {
        if lattice.is_ring() {
            return Err(Error::InvalidParameter(
                "rate tables are declared on the line; rings are a simulation-time choice".into(),
            ));
        }
        let mut canon: Vec<TableEntry> = Vec::with_capacity(entries.len());
        for e in entries {
            if !(e.rate.is_finite() && e.rate >= 0.0) {
                return Err(Error::InvalidRate(e.rate));
            }
            if e.rate == 0.0 {
                continue;
            }
            if e.shape.is_empty() {
                return Err(Error::EmptyInput("table shape"));
            }
            if e.shape.row_parity() != lattice.parity() || e.shape.col_parity() != lattice.parity()
            {
                return Err(Error::LatticeMismatch(
                    lattice,
                    Lattice::line(e.shape.row_parity()),
                ));
            }
            if e.shape.reach_doubled() > 2 * range as i64 {
                return Err(Error::RangeExceeded { range });
            }
            canon.push(TableEntry {
                shape: e.shape.anchored(),
                rate: e.rate,
            });
        }
        canon.sort_by(|a, b| a.shape.entries().cmp(b.shape.entries()));
        let mut merged: Vec<TableEntry> = Vec::with_capacity(canon.len());
        for e in canon {
            match merged.last_mut() {
                Some(last) if last.shape == e.shape => last.rate += e.rate,
                _ => merged.push(e),
            }
        }
        let tight = merged
            .iter()
            .map(|e| ((e.shape.reach_doubled() + 1) / 2) as u32)
            .max()
            .unwrap_or(0);
        Ok(RateTable {
            entries: merged,
            lattice,
            range: tight,
        })
    }

    pub fn entries(&self) -> &[TableEntry] {
        &self.entries
    }

    pub fn lattice(&self) -> Lattice {
        self.lattice
    }

    pub fn range(&self) -> u32 {
        self.range
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Every shape type-symmetric?
    pub fn is_type_symmetric(&self) -> bool {
        self.entries.iter().all(|e| e.shape.is_type_symmetric())
    }

    /// Every shape parity-preserving?
    pub fn is_parity_preserving(&self) -> bool {
        self.entries.iter().all(|e| e.shape.is_parity_preserving())
    }

    /// Largest doubled coordinate extent over the shapes.
    pub fn max_span_doubled(&self) -> i64 {
        self.entries
            .iter()
            .map(|e| e.shape.span_doubled())
            .max()
            .unwrap_or(0)
    }

    /// The dual system's table: every shape transposed. Type symmetry and
    /// parity preservation exchange roles.
    pub fn dual(&self) -> RateTable {
        let entries = self
            .entries
            .iter()
            .map(|e| TableEntry {
                shape: e.shape.adjoint(),
                rate: e.rate,
            })
            .collect();
        RateTable::new(self.lattice, self.range, entries)
            .expect("transposing shapes preserves validity")
    }

    /// The interface system's table on the opposite lattice parity. Requires
    /// a type-symmetric table; the result is parity preserving.
    pub fn interface(&self) -> Result<RateTable> {
        if !self.is_type_symmetric() {
            return Err(Error::TableNotTypeSymmetric);
        }
        let mut entries = Vec::with_capacity(self.entries.len());
        let mut cap = 0u32;
        for e in &self.entries {
            let shape = e.shape.to_interface()?;
            cap = cap.max(((shape.reach_doubled() + 1) / 2) as u32);
            entries.push(TableEntry {
                shape,
                rate: e.rate,
            });
        }
        RateTable::new(self.lattice.flipped(), cap, entries)
    }

    /// Every shape spatially reflected; rates kept.
    pub fn reflected(&self) -> RateTable {
        let entries = self
            .entries
            .iter()
            .map(|e| TableEntry {
                shape: e.shape.reflected(),
                rate: e.rate,
            })
            .collect();
        RateTable::new(self.lattice, self.range, entries)
            .expect("reflection preserves validity")
    }

    /// True when the table carries a nearest-neighbour voter move (the
    /// left-voter or right-voter shape) with positive rate.
    pub fn has_nn_voter_component(&self) -> bool {
        let p = self.lattice.parity();
        let left = voter_shape(p, VoterDirection::Left);
        let right = voter_shape(p, VoterDirection::Right);
        self.entries
            .iter()
            .any(|e| e.shape == left || e.shape == right)
    }

    /// Total rate at which a transition fired at anchor site 0 would flip
    /// that anchor's row set, summed over entries whose application to `x`
    /// is nonzero. For single-row tables this is the flip rate of site 0.
    pub fn activity_rate_at_origin(&self, x: &Config) -> Result<f64> {
        let mut total = 0.0;
        for e in &self.entries {
            if !e.shape.apply(x)?.is_zero() {
                total += e.rate;
            }
        }
        Ok(total)
    }
}

enum VoterDirection {
    Left,
    Right,
}

fn voter_shape(parity: SiteParity, dir: VoterDirection) -> LocalOp {
    let a = match parity {
        SiteParity::Whole => 0,
        SiteParity::Half => -1,
    };
    let cols = match dir {
        VoterDirection::Left => [a - 2, a],
        VoterDirection::Right => [a, a + 2],
    };
    LocalOp::new(&[(a, cols[0]), (a, cols[1])]).expect("voter shape is valid")
}

/// The four commuting systems generated by a type-symmetric table: the system
/// itself, its interface model, its dual, and the dual of the interface
/// model (equivalently, the system whose interface model is the dual).
#[derive(Clone, Debug)]
pub struct Diagram {
    pub x: RateTable,
    pub y: RateTable,
    pub x_prime: RateTable,
    pub y_prime: RateTable,
}

/// Build the commuting square from a type-symmetric table and check that it
/// closes: the interface model of the dual-of-interface system must equal the
/// dual of the original system, shape by shape and rate by rate.
pub fn diagram_closure(x: &RateTable) -> Result<Diagram> {
    let y = x.interface()?;
    let y_prime = x.dual();
    let x_prime = y.dual();
    let closed = x_prime.interface()?;
    assert_eq!(
        closed, y_prime,
        "diagram failed to close; this is an implementation bug"
    );
    Ok(Diagram {
        x: x.clone(),
        y,
        x_prime,
        y_prime,
    })
}

/// Compare two tables up to the half-site relabeling between the two lattice
/// parities: shapes (and rates) must match exactly after shifting every
/// doubled coordinate of `b` onto `a`'s parity.
pub fn tables_congruent(a: &RateTable, b: &RateTable) -> bool {
    if a.entries.len() != b.entries.len() {
        return false;
    }
    if a.lattice.parity() == b.lattice.parity() {
        return a.entries == b.entries;
    }
    let delta = anchor_row(a.lattice.parity()) - anchor_row(b.lattice.parity());
    let shifted: Vec<TableEntry> = b
        .entries
        .iter()
        .map(|e| {
            let entries: Vec<(i64, i64)> = e
                .shape
                .entries()
                .iter()
                .map(|&(r, c)| (r + delta, c + delta))
                .collect();
            TableEntry {
                shape: LocalOp::new(&entries).expect("shifted shape is valid"),
                rate: e.rate,
            }
        })
        .collect();
    a.entries == shifted
}

fn anchor_row(parity: SiteParity) -> i64 {
    match parity {
        SiteParity::Whole => 0,
        SiteParity::Half => -1,
    }
}

/// The cancellative form of the rebellious voter model: nearest-neighbour
/// voter moves at rate `alpha / 2` per side and next-nearest "rebel" moves at
/// rate `(1 - alpha) / 2` per side. Each shape flips site 0 exactly when the
/// corresponding disagreement indicator is on. Degenerate rates at
/// `alpha` 0 or 1 are dropped.
pub fn rebellious_table(alpha: f64) -> Result<RateTable> {
    if !(0.0..=1.0).contains(&alpha) || !alpha.is_finite() {
        return Err(Error::InvalidAlpha(alpha));
    }
    let voter = 0.5 * alpha;
    let rebel = 0.5 * (1.0 - alpha);
    let entries = vec![
        TableEntry {
            shape: LocalOp::new(&[(0, -4), (0, -2)])?,
            rate: rebel,
        },
        TableEntry {
            shape: LocalOp::new(&[(0, -2), (0, 0)])?,
            rate: voter,
        },
        TableEntry {
            shape: LocalOp::new(&[(0, 0), (0, 2)])?,
            rate: voter,
        },
        TableEntry {
            shape: LocalOp::new(&[(0, 2), (0, 4)])?,
            rate: rebel,
        },
    ];
    RateTable::new(Lattice::Z, 2, entries)
}

/// Named flip-rate models.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FlipKind {
    /// Neutral Neuhauser-Pacala.
    Np,
    /// Affine voter.
    Affine,
    /// Rebellious voter (fixed +-2 neighbourhood).
    Rebellious,
}

/// A model given directly by single-site flip rates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FlipRateModel {
    pub kind: FlipKind,
    pub alpha: f64,
    range: u32,
}

impl FlipRateModel {
    pub fn new(kind: FlipKind, alpha: f64, range: u32) -> Result<FlipRateModel> {
        if !(0.0..=1.0).contains(&alpha) || !alpha.is_finite() {
            return Err(Error::InvalidAlpha(alpha));
        }
        let range = match kind {
            FlipKind::Rebellious => 2,
            _ => {
                if range < 2 {
                    return Err(Error::RangeTooSmall(range));
                }
                range
            }
        };
        Ok(FlipRateModel { kind, alpha, range })
    }

    pub fn range(&self) -> u32 {
        self.range
    }

    /// Rate at which site `i` (doubled index) flips in configuration `x`.
    /// Type symmetry swaps the roles of the two types when `x(i) = 1`.
    pub fn flip_rate(&self, x: &Config, i: DoubledIndex) -> Result<f64> {
        match self.kind {
            FlipKind::Rebellious => {
                let alpha = self.alpha;
                let here = x.get(i);
                let d = |k: i64| x.get(DoubledIndex(i.0 + 2 * k));
                let i_ll = (d(-2) != d(-1)) as u8 as f64;
                let i_l = (d(-1) != here) as u8 as f64;
                let i_r = (here != d(1)) as u8 as f64;
                let i_rr = (d(1) != d(2)) as u8 as f64;
                // Same term order as the table entries so that the induced
                // rates agree bit for bit.
                Ok(0.5 * (1.0 - alpha) * i_ll
                    + 0.5 * alpha * i_l
                    + 0.5 * alpha * i_r
                    + 0.5 * (1.0 - alpha) * i_rr)
            }
            FlipKind::Np => {
                let here = x.get(i);
                let f_other = local_frequency(x, i, !here, self.range)?;
                let f_same = local_frequency(x, i, here, self.range)?;
                Ok(f_other * (f_same + self.alpha * f_other))
            }
            FlipKind::Affine => {
                let here = x.get(i);
                let f_other = local_frequency(x, i, !here, self.range)?;
                let threshold = if f_other > 0.0 { 1.0 } else { 0.0 };
                Ok(self.alpha * f_other + (1.0 - self.alpha) * threshold)
            }
        }
    }
}

/// Fraction of the `2R` sites within distance `R` of `i` (excluding `i`) that
/// carry type `tau`.
pub fn local_frequency(x: &Config, i: DoubledIndex, tau: bool, range: u32) -> Result<f64> {
    if let Some(n) = x.lattice().ring_size() {
        if n <= 2 * range {
            return Err(Error::InsufficientWindow);
        }
    }
    let mut count = 0u32;
    for k in 1..=range as i64 {
        for d in [i.0 - 2 * k, i.0 + 2 * k] {
            if x.get(DoubledIndex(d)) == tau {
                count += 1;
            }
        }
    }
    Ok(count as f64 / (2 * range) as f64)
}

/// A model in either representation.
#[derive(Clone, Debug)]
pub enum Model {
    Table(RateTable),
    Flip(FlipRateModel),
}

impl Model {
    pub fn range(&self) -> u32 {
        match self {
            Model::Table(t) => t.range(),
            Model::Flip(f) => f.range(),
        }
    }
}

/// Serialisable model description, the JSON exchange format.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ModelSpec {
    Rebellious {
        alpha: f64,
    },
    Np {
        alpha: f64,
        #[serde(rename = "R")]
        range: u32,
    },
    Affine {
        alpha: f64,
        #[serde(rename = "R")]
        range: u32,
    },
    Table {
        lattice: String,
        #[serde(rename = "R")]
        range: u32,
        entries: Vec<EntrySpec>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntrySpec {
    /// (row, column) pairs in doubled coordinates.
    pub shape: Vec<[i64; 2]>,
    pub rate: f64,
}

impl ModelSpec {
    /// Resolve to a concrete model. The rebellious model resolves to its
    /// cancellative table; the other named models to flip-rate evaluators.
    pub fn build(&self) -> Result<Model> {
        match self {
            ModelSpec::Rebellious { alpha } => Ok(Model::Table(rebellious_table(*alpha)?)),
            ModelSpec::Np { alpha, range } => Ok(Model::Flip(FlipRateModel::new(
                FlipKind::Np,
                *alpha,
                *range,
            )?)),
            ModelSpec::Affine { alpha, range } => Ok(Model::Flip(FlipRateModel::new(
                FlipKind::Affine,
                *alpha,
                *range,
            )?)),
            ModelSpec::Table {
                lattice,
                range,
                entries,
            } => {
                let lat = parse_lattice(lattice)?;
                let mut parsed = Vec::with_capacity(entries.len());
                for e in entries {
                    let pairs: Vec<(i64, i64)> = e.shape.iter().map(|&[r, c]| (r, c)).collect();
                    parsed.push(TableEntry {
                        shape: LocalOp::new(&pairs)?,
                        rate: e.rate,
                    });
                }
                Ok(Model::Table(RateTable::new(lat, *range, parsed)?))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rebellious_table_degenerate_cases() {
        let t = rebellious_table(1.0).unwrap();
        assert_eq!(t.entries().len(), 2);
        assert!(t.has_nn_voter_component());
        assert!(t.is_type_symmetric());
        let t = rebellious_table(0.0).unwrap();
        assert_eq!(t.entries().len(), 2);
        assert!(!t.has_nn_voter_component());
        let t = rebellious_table(0.6).unwrap();
        let rates: Vec<f64> = t.entries().iter().map(|e| e.rate).collect();
        assert_eq!(rates, vec![0.2, 0.3, 0.3, 0.2]);
        assert!(rebellious_table(1.5).is_err());
    }

    #[test]
    fn local_frequency_partition() {
        let x = Config::from_support(Lattice::Z, &[0, 2, 6]).unwrap();
        for i in [-2i64, 0, 4] {
            let f1 = local_frequency(&x, DoubledIndex(i), true, 2).unwrap();
            let f0 = local_frequency(&x, DoubledIndex(i), false, 2).unwrap();
            assert_eq!(f0 + f1, 1.0);
        }
        // all four neighbours of site 1 within range 2 are ones
        let x = Config::from_support(Lattice::Z, &[-2, 0, 4, 6]).unwrap();
        assert_eq!(local_frequency(&x, DoubledIndex(2), true, 2).unwrap(), 1.0);
        // exactly two of four
        let x = Config::from_support(Lattice::Z, &[0, 4]).unwrap();
        assert_eq!(local_frequency(&x, DoubledIndex(2), true, 2).unwrap(), 0.5);
    }

    #[test]
    fn flip_rate_named_cases() {
        // NP at alpha=1 reduces to the voter rate f1
        let m = FlipRateModel::new(FlipKind::Np, 1.0, 2).unwrap();
        let x = Config::from_support(Lattice::Z, &[4]).unwrap();
        let rate = m.flip_rate(&x, DoubledIndex(0)).unwrap();
        assert_eq!(rate, 0.25);
        // Affine at alpha=0 is the threshold voter
        let m = FlipRateModel::new(FlipKind::Affine, 0.0, 2).unwrap();
        let rate = m.flip_rate(&x, DoubledIndex(0)).unwrap();
        assert_eq!(rate, 1.0);
        let empty = Config::empty(Lattice::Z);
        assert_eq!(m.flip_rate(&empty, DoubledIndex(0)).unwrap(), 0.0);
        // Rebellious with one nearest-neighbour indicator active
        let m = FlipRateModel::new(FlipKind::Rebellious, 1.0, 2).unwrap();
        let x = Config::heaviside(Lattice::Z, DoubledIndex(0), false, true).unwrap();
        assert_eq!(m.flip_rate(&x, DoubledIndex(0)).unwrap(), 0.5);
        // NP / affine need range >= 2
        assert!(FlipRateModel::new(FlipKind::Np, 0.5, 1).is_err());
    }

    #[test]
    fn rebellious_flip_rate_matches_table_exactly() {
        // Exhaustive over the 2^5 local patterns and an alpha grid; the
        // table-induced flip rate of site 0 must agree bit for bit.
        for k in 0..=10u32 {
            let alpha = k as f64 / 10.0;
            let table = rebellious_table(alpha).unwrap();
            let flip = FlipRateModel::new(FlipKind::Rebellious, alpha, 2).unwrap();
            for pattern in 0..32u32 {
                let support: Vec<i64> = (0..5)
                    .filter(|b| pattern >> b & 1 == 1)
                    .map(|b| 2 * (b as i64 - 2))
                    .collect();
                let x = Config::from_support(Lattice::Z, &support).unwrap();
                let from_table = table.activity_rate_at_origin(&x).unwrap();
                let from_formula = flip.flip_rate(&x, DoubledIndex(0)).unwrap();
                assert_eq!(
                    from_table.to_bits(),
                    from_formula.to_bits(),
                    "alpha={alpha} pattern={pattern:05b}"
                );
            }
        }
    }

    #[test]
    fn dual_table_examples() {
        let voter = rebellious_table(1.0).unwrap();
        let dual = voter.dual();
        assert!(dual.is_parity_preserving());
        assert!(!dual.has_nn_voter_component());
        // involution up to re-anchoring
        assert_eq!(dual.dual(), voter);
        let empty = RateTable::new(Lattice::Z, 2, vec![]).unwrap();
        assert!(empty.dual().is_empty());
    }

    #[test]
    fn interface_table_examples() {
        let voter = rebellious_table(1.0).unwrap();
        let y = voter.interface().unwrap();
        assert_eq!(y.lattice(), Lattice::ZHalf);
        assert!(y.is_parity_preserving());
        assert_eq!(y.entries().len(), 2);
        // walking pair: each shape is a single-column hop
        for e in y.entries() {
            assert_eq!(e.shape.len(), 2);
            assert_eq!(e.rate, 0.5);
        }
        // interface then inverse recovers the original table
        let back: Vec<TableEntry> = y
            .entries()
            .iter()
            .map(|e| TableEntry {
                shape: e.shape.from_interface().unwrap(),
                rate: e.rate,
            })
            .collect();
        let back = RateTable::new(Lattice::Z, voter.range(), back).unwrap();
        assert_eq!(back, voter);
        // a non type-symmetric table is rejected
        let pp = voter.dual();
        assert!(pp.interface().is_err());
    }

    #[test]
    fn diagram_examples() {
        // rebellious: X' equals X up to spatial reflection
        for alpha in [0.3, 0.7] {
            let x = rebellious_table(alpha).unwrap();
            let d = diagram_closure(&x).unwrap();
            assert!(tables_congruent(&d.x_prime.reflected(), &d.x));
        }
        // voter: X' is again a nearest-neighbour voter table
        let d = diagram_closure(&rebellious_table(1.0).unwrap()).unwrap();
        assert!(d.x_prime.has_nn_voter_component());
        assert_eq!(d.x_prime.entries().len(), 2);
        // disagreement dynamics: interface twice gives the double-branching
        // dual, and the chain closes back onto the original table
        let dis = RateTable::new(
            Lattice::Z,
            1,
            vec![TableEntry {
                shape: LocalOp::new(&[(0, -2), (0, 2)]).unwrap(),
                rate: 1.0,
            }],
        )
        .unwrap();
        let y = dis.interface().unwrap();
        assert!(y.is_type_symmetric() && y.is_parity_preserving());
        let z = y.interface().unwrap();
        assert!(tables_congruent(&z.dual(), &dis));
        assert_eq!(y.dual(), y);
    }

    #[test]
    fn model_spec_roundtrip() {
        let spec: ModelSpec = serde_json::from_str(r#"{"kind":"rebellious","alpha":0.6}"#).unwrap();
        match spec.build().unwrap() {
            Model::Table(t) => assert_eq!(t.entries().len(), 4),
            _ => panic!("rebellious resolves to a table"),
        }
        let spec: ModelSpec = serde_json::from_str(
            r#"{"kind":"table","lattice":"Z","R":2,"entries":[{"shape":[[0,-2],[0,0]],"rate":0.5}]}"#,
        )
        .unwrap();
        match spec.build().unwrap() {
            Model::Table(t) => {
                assert_eq!(t.entries().len(), 1);
                assert!(t.has_nn_voter_component());
            }
            _ => panic!("table spec resolves to a table"),
        }
        let bad: std::result::Result<ModelSpec, _> =
            serde_json::from_str(r#"{"kind":"np","alpha":0.6}"#);
        assert!(bad.is_err(), "missing R must be rejected");
    }

    #[test]
    fn table_validation() {
        // out-of-range shape
        let err = RateTable::new(
            Lattice::Z,
            1,
            vec![TableEntry {
                shape: LocalOp::new(&[(0, -4), (0, 0)]).unwrap(),
                rate: 1.0,
            }],
        );
        assert!(err.is_err());
        // negative rate
        let err = RateTable::new(
            Lattice::Z,
            2,
            vec![TableEntry {
                shape: LocalOp::new(&[(0, -2), (0, 0)]).unwrap(),
                rate: -1.0,
            }],
        );
        assert!(err.is_err());
        // duplicates merge
        let t = RateTable::new(
            Lattice::Z,
            2,
            vec![
                TableEntry {
                    shape: LocalOp::new(&[(0, -2), (0, 0)]).unwrap(),
                    rate: 0.25,
                },
                TableEntry {
                    shape: LocalOp::new(&[(2, 0), (2, 2)]).unwrap(),
                    rate: 0.25,
                },
            ],
        )
        .unwrap();
        assert_eq!(t.entries().len(), 1);
        assert_eq!(t.entries()[0].rate, 0.5);
    }
}
