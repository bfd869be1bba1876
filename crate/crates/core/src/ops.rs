//! Finite local operators over GF(2): application to configurations,
//! adjoints, translations, the type-symmetry and parity-preservation
//! predicates, and the conjugation that carries an operator to its
//! counterpart acting on interface configurations.
//!
//! An operator is a finite set of (row, column) pairs in doubled coordinates.
//! It acts on a configuration by `Ax(i) = XOR_j A(i,j) x(j)`. All rows share
//! one lattice parity and all columns share one (possibly different) parity.

use std::fmt;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::lattice::{DoubledIndex, Lattice, SiteParity};

/// A finite GF(2) matrix given by the positions of its ones, in doubled
/// coordinates. Entries are kept sorted and deduplicated.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LocalOp {
    entries: Vec<(i64, i64)>,
    row_parity: SiteParity,
    col_parity: SiteParity,
}

impl LocalOp {
    /// Build from (row, column) pairs in doubled coordinates. Duplicated
    /// pairs cancel mod 2. Fails when rows or columns mix parities.
    pub fn new(entries: &[(i64, i64)]) -> Result<LocalOp> {
        LocalOp::with_parities(entries, SiteParity::Whole, SiteParity::Whole)
    }

    /// Like [`new`](Self::new) but with explicit parities, which only matter
    /// for the empty operator (otherwise they are inferred and checked).
    pub fn with_parities(
        entries: &[(i64, i64)],
        row_parity: SiteParity,
        col_parity: SiteParity,
    ) -> Result<LocalOp> {
        let mut es: Vec<(i64, i64)> = entries.to_vec();
        es.sort_unstable();
        // XOR semantics: an even number of copies of a pair cancels.
        let mut dedup: Vec<(i64, i64)> = Vec::with_capacity(es.len());
        for e in es {
            if dedup.last() == Some(&e) {
                dedup.pop();
            } else {
                dedup.push(e);
            }
        }
        let (rp, cp) = if let Some(&(r, c)) = dedup.first() {
            (SiteParity::of_doubled(r), SiteParity::of_doubled(c))
        } else {
            (row_parity, col_parity)
        };
        for &(r, c) in &dedup {
            if SiteParity::of_doubled(r) != rp {
                return Err(Error::MixedRowParity);
            }
            if SiteParity::of_doubled(c) != cp {
                return Err(Error::MixedColParity);
            }
        }
        Ok(LocalOp {
            entries: dedup,
            row_parity: rp,
            col_parity: cp,
        })
    }

    pub fn empty(row_parity: SiteParity, col_parity: SiteParity) -> LocalOp {
        LocalOp {
            entries: Vec::new(),
            row_parity,
            col_parity,
        }
    }

    /// Entries as sorted (row, column) doubled pairs.
    pub fn entries(&self) -> &[(i64, i64)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn row_parity(&self) -> SiteParity {
        self.row_parity
    }

    pub fn col_parity(&self) -> SiteParity {
        self.col_parity
    }

    /// Largest |row - col| over the entries, in doubled units.
    pub fn reach_doubled(&self) -> i64 {
        self.entries
            .iter()
            .map(|&(r, c)| (r - c).abs())
            .max()
            .unwrap_or(0)
    }

    /// Extent of all coordinates (rows and columns together), doubled units.
    pub fn span_doubled(&self) -> i64 {
        let coords = self
            .entries
            .iter()
            .flat_map(|&(r, c)| [r, c])
            .collect::<Vec<_>>();
        match (coords.iter().min(), coords.iter().max()) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => 0,
        }
    }

    /// Transpose: rows and columns exchanged.
    pub fn adjoint(&self) -> LocalOp {
        let entries: Vec<(i64, i64)> = self.entries.iter().map(|&(r, c)| (c, r)).collect();
        LocalOp::with_parities(&entries, self.col_parity, self.row_parity)
            .expect("transpose preserves parities")
    }

    /// Shift both coordinates by `k` lattice sites.
    pub fn translated(&self, k: i64) -> LocalOp {
        let d = 2 * k;
        LocalOp {
            entries: self.entries.iter().map(|&(r, c)| (r + d, c + d)).collect(),
            row_parity: self.row_parity,
            col_parity: self.col_parity,
        }
    }

    /// Spatial reflection about the origin, re-anchored.
    pub fn reflected(&self) -> LocalOp {
        let entries: Vec<(i64, i64)> = self.entries.iter().map(|&(r, c)| (-r, -c)).collect();
        LocalOp::with_parities(&entries, self.row_parity, self.col_parity)
            .expect("reflection preserves parities")
            .anchored()
    }

    /// The canonical representative of the translation class: the translate
    /// whose smallest row is 0 (whole-site rows) or -1 (half-site rows).
    pub fn anchored(&self) -> LocalOp {
        let Some(min_row) = self.entries.iter().map(|&(r, _)| r).min() else {
            return self.clone();
        };
        let target = match self.row_parity {
            SiteParity::Whole => 0,
            SiteParity::Half => -1,
        };
        self.translated((target - min_row) / 2)
    }

    /// Every row has an even number of entries (the operator criterion for
    /// type-symmetric dynamics).
    pub fn is_type_symmetric(&self) -> bool {
        even_group_sizes(self.entries.iter().map(|&(r, _)| r))
    }

    /// Every column has an even number of entries (the operator criterion for
    /// parity-preserving dynamics).
    pub fn is_parity_preserving(&self) -> bool {
        let mut cols: Vec<i64> = self.entries.iter().map(|&(_, c)| c).collect();
        cols.sort_unstable();
        even_group_sizes(cols.into_iter())
    }

    /// Apply to a configuration: output row `i` is the GF(2) sum of the input
    /// at the columns of row `i`. The output has finite support. On rings all
    /// indices are reduced modulo the doubled circumference.
    pub fn apply(&self, x: &Config) -> Result<Config> {
        let lat = x.lattice();
        match lat {
            Lattice::Ring { n, parity } => {
                if parity != self.col_parity {
                    return Err(Error::LatticeMismatch(lat, Lattice::line(self.col_parity)));
                }
                if 2 * n as i64 <= self.span_doubled() {
                    return Err(Error::RingTooSmall {
                        n,
                        span: ((self.span_doubled() + 1) / 2) as u32,
                    });
                }
                let out_lat = Lattice::Ring {
                    n,
                    parity: self.row_parity,
                };
                let mut support: Vec<i64> = Vec::new();
                for (row, cols) in self.rows() {
                    let mut bit = false;
                    for &(_, c) in cols {
                        bit ^= x.get(DoubledIndex(c));
                    }
                    if bit {
                        support.push(row);
                    }
                }
                Config::from_support(out_lat, &support)
            }
            _ => {
                if lat.parity() != self.col_parity {
                    return Err(Error::LatticeMismatch(lat, Lattice::line(self.col_parity)));
                }
                let out_lat = Lattice::line(self.row_parity);
                let mut support: Vec<i64> = Vec::new();
                for (row, cols) in self.rows() {
                    let mut bit = false;
                    for &(_, c) in cols {
                        bit ^= x.get(DoubledIndex(c));
                    }
                    if bit {
                        support.push(row);
                    }
                }
                Config::from_support(out_lat, &support)
            }
        }
    }

    /// Group the sorted entries by row; each item is the row index and the
    /// slice of its (row, column) entries, whose columns are sorted.
    pub fn rows(&self) -> RowIter<'_> {
        RowIter {
            entries: &self.entries,
            pos: 0,
        }
    }

    /// The operator acting on interface configurations that makes the square
    /// with the interface map commute: `grad(A x) = A.to_interface().apply(grad(x))`.
    ///
    /// Requires type symmetry; the result is parity preserving and lives on
    /// the opposite lattice parity. Computed row-wise: for each row of the
    /// composition of the interface map with `A`, the output has an entry at
    /// every column with an odd number of row elements to its right.
    pub fn to_interface(&self) -> Result<LocalOp> {
        if !self.is_type_symmetric() {
            return Err(Error::NotTypeSymmetric);
        }
        // Rows of the interface-composed matrix: row i (opposite parity)
        // is the symmetric difference of rows i-1 and i+1 of self.
        let mut m_rows: Vec<(i64, Vec<i64>)> = Vec::new();
        {
            let rows: Vec<(i64, Vec<i64>)> = self
                .rows()
                .map(|(r, cols)| (r, cols.iter().map(|&(_, c)| c).collect()))
                .collect();
            let mut out_rows: Vec<i64> = rows
                .iter()
                .flat_map(|&(r, _)| [r - 1, r + 1])
                .collect();
            out_rows.sort_unstable();
            out_rows.dedup();
            for i in out_rows {
                let above = rows.iter().find(|&&(r, _)| r == i - 1).map(|(_, c)| c);
                let below = rows.iter().find(|&&(r, _)| r == i + 1).map(|(_, c)| c);
                let cols = sym_diff(above, below);
                if !cols.is_empty() {
                    m_rows.push((i, cols));
                }
            }
        }
        let mut entries: Vec<(i64, i64)> = Vec::new();
        for (row, cols) in m_rows {
            debug_assert!(cols.len() % 2 == 0, "type symmetry keeps rows even");
            // Columns with an odd count of elements above them: the open
            // gaps (c1, c2), (c3, c4), ... on the opposite parity.
            let mut it = cols.iter();
            while let (Some(&a), Some(&b)) = (it.next(), it.next()) {
                let mut j = a + 1;
                while j < b {
                    entries.push((row, j));
                    j += 2;
                }
            }
        }
        LocalOp::with_parities(
            &entries,
            self.row_parity.flipped(),
            self.col_parity.flipped(),
        )
    }

    /// Inverse of [`to_interface`](Self::to_interface): recovers the operator
    /// on type configurations from a parity-preserving interface operator.
    pub fn from_interface(&self) -> Result<LocalOp> {
        if !self.is_parity_preserving() {
            return Err(Error::NotParityPreserving);
        }
        // For each column of self, the prefix-parity composition has entries
        // in the odd gaps of that column; combining the two neighbouring
        // columns of the interface map toggles (row, col +/- 1).
        let mut by_col: Vec<(i64, Vec<i64>)> = Vec::new();
        {
            let mut cols: Vec<(i64, i64)> = self.entries.iter().map(|&(r, c)| (c, r)).collect();
            cols.sort_unstable();
            let mut pos = 0;
            while pos < cols.len() {
                let c = cols[pos].0;
                let mut rows = Vec::new();
                while pos < cols.len() && cols[pos].0 == c {
                    rows.push(cols[pos].1);
                    pos += 1;
                }
                by_col.push((c, rows));
            }
        }
        let mut toggles: Vec<(i64, i64)> = Vec::new();
        for (col, rows) in by_col {
            debug_assert!(rows.len() % 2 == 0, "parity preservation keeps columns even");
            let mut it = rows.iter();
            while let (Some(&a), Some(&b)) = (it.next(), it.next()) {
                let mut i = a + 1;
                while i < b {
                    toggles.push((i, col - 1));
                    toggles.push((i, col + 1));
                    i += 2;
                }
            }
        }
        LocalOp::with_parities(
            &toggles,
            self.row_parity.flipped(),
            self.col_parity.flipped(),
        )
    }
}

fn sym_diff(a: Option<&Vec<i64>>, b: Option<&Vec<i64>>) -> Vec<i64> {
    match (a, b) {
        (None, None) => Vec::new(),
        (Some(v), None) | (None, Some(v)) => v.clone(),
        (Some(a), Some(b)) => {
            let mut out = Vec::with_capacity(a.len() + b.len());
            let (mut i, mut j) = (0, 0);
            while i < a.len() || j < b.len() {
                match (a.get(i), b.get(j)) {
                    (Some(&x), Some(&y)) if x == y => {
                        i += 1;
                        j += 1;
                    }
                    (Some(&x), Some(&y)) if x < y => {
                        out.push(x);
                        i += 1;
                    }
                    (Some(_), Some(&y)) => {
                        out.push(y);
                        j += 1;
                    }
                    (Some(&x), None) => {
                        out.push(x);
                        i += 1;
                    }
                    (None, Some(&y)) => {
                        out.push(y);
                        j += 1;
                    }
                    (None, None) => unreachable!(),
                }
            }
            out
        }
    }
}

fn even_group_sizes(sorted_keys: impl Iterator<Item = i64>) -> bool {
    let mut current: Option<i64> = None;
    let mut count = 0usize;
    for k in sorted_keys {
        if current == Some(k) {
            count += 1;
        } else {
            if count % 2 != 0 {
                return false;
            }
            current = Some(k);
            count = 1;
        }
    }
    count % 2 == 0
}

pub struct RowIter<'a> {
    entries: &'a [(i64, i64)],
    pos: usize,
}

impl<'a> Iterator for RowIter<'a> {
    type Item = (i64, &'a [(i64, i64)]);

    fn next(&mut self) -> Option<Self::Item> {
        if self.pos >= self.entries.len() {
            return None;
        }
        let row = self.entries[self.pos].0;
        let begin = self.pos;
        while self.pos < self.entries.len() && self.entries[self.pos].0 == row {
            self.pos += 1;
        }
        Some((row, &self.entries[begin..self.pos]))
    }
}

impl fmt::Debug for LocalOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, &(r, c)) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({}, {})", DoubledIndex(r), DoubledIndex(c))?;
        }
        write!(f, "}}")
    }
}

/// The duality pairing of a configuration with one on the opposite parity:
/// the parity of the overlap between the interfaces of `x` and the particles
/// of `x_prime`. Both defining routes are computed and must agree.
pub fn duality_parity(x: &Config, x_prime: &Config) -> Result<bool> {
    if x.lattice().flipped() != x_prime.lattice() {
        return Err(Error::LatticeMismatch(x.lattice(), x_prime.lattice()));
    }
    if !crate::config::pairing_admissible(x, x_prime) {
        return Err(Error::InadmissiblePair);
    }
    let via_x = x.grad().product(x_prime)?.parity_norm()?;
    let via_prime = x.product(&x_prime.grad())?.parity_norm()?;
    assert_eq!(via_x, via_prime, "the two duality routes must agree");
    Ok(via_x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Side;

    fn op(entries: &[(i64, i64)]) -> LocalOp {
        LocalOp::new(entries).unwrap()
    }

    /// Left voter move in doubled coordinates: site 0 copies site -1.
    fn left_voter() -> LocalOp {
        op(&[(0, -2), (0, 0)])
    }

    #[test]
    fn apply_examples() {
        let a = left_voter();
        let x = Config::from_support(Lattice::Z, &[-2]).unwrap();
        assert_eq!(a.apply(&x).unwrap(), Config::from_support(Lattice::Z, &[0]).unwrap());
        let x = Config::from_support(Lattice::Z, &[-2, 0]).unwrap();
        assert!(a.apply(&x).unwrap().is_zero());
        let zero = LocalOp::empty(SiteParity::Whole, SiteParity::Whole);
        assert!(zero.apply(&x).unwrap().is_zero());
    }

    #[test]
    fn adjoint_examples() {
        assert_eq!(left_voter().adjoint(), op(&[(-2, 0), (0, 0)]));
        let e = LocalOp::empty(SiteParity::Whole, SiteParity::Half);
        assert_eq!(e.adjoint().row_parity(), SiteParity::Half);
        assert_eq!(op(&[(1, -1)]).adjoint(), op(&[(-1, 1)]));
        assert_eq!(left_voter().adjoint().adjoint(), left_voter());
    }

    #[test]
    fn translate_examples() {
        let a = op(&[(0, 0), (0, 2)]);
        assert_eq!(a.translated(2), op(&[(4, 4), (4, 6)]));
        assert_eq!(a.translated(0), a);
        assert_eq!(a.translated(3).translated(-3), a);
    }

    #[test]
    fn predicate_examples() {
        let a = left_voter();
        assert!(a.is_type_symmetric());
        assert!(!a.is_parity_preserving());
        let b = op(&[(-1, -1), (1, -1)]);
        assert!(!b.is_type_symmetric());
        assert!(b.is_parity_preserving());
        let block = op(&[(-1, -1), (-1, 1), (1, -1), (1, 1)]);
        assert!(block.is_type_symmetric());
        assert!(block.is_parity_preserving());
    }

    #[test]
    fn interface_op_examples() {
        // Left voter -> interface particle hop
        let y = left_voter().to_interface().unwrap();
        assert_eq!(y, op(&[(-1, -1), (1, -1)]));
        assert!(y.is_parity_preserving());
        // Disagreement operator -> exclusion block
        let dis = op(&[(0, -2), (0, 2)]);
        let y = dis.to_interface().unwrap();
        assert_eq!(y, op(&[(-1, -1), (-1, 1), (1, -1), (1, 1)]));
        // Empty maps to empty
        let e = LocalOp::empty(SiteParity::Whole, SiteParity::Whole);
        assert!(e.to_interface().unwrap().is_empty());
        // Non type-symmetric input is rejected
        assert!(op(&[(0, 0)]).to_interface().is_err());
    }

    #[test]
    fn from_interface_examples() {
        let hop = op(&[(-1, -1), (1, -1)]);
        assert_eq!(hop.from_interface().unwrap(), left_voter());
        let e = LocalOp::empty(SiteParity::Half, SiteParity::Half);
        assert!(e.from_interface().unwrap().is_empty());
        let block = op(&[(-1, -1), (-1, 1), (1, 1), (1, -1)]);
        assert_eq!(block.from_interface().unwrap(), op(&[(0, -2), (0, 2)]));
        assert!(op(&[(1, -1)]).from_interface().is_err());
    }

    #[test]
    fn conjugation_identity_on_examples() {
        let a = left_voter();
        let psi_a = a.to_interface().unwrap();
        for support in [vec![0i64], vec![-2, 0, 4], vec![2, 6]] {
            let x = Config::from_support(Lattice::Z, &support).unwrap();
            let lhs = a.apply(&x).unwrap().grad();
            let rhs = psi_a.apply(&x.grad()).unwrap();
            assert_eq!(lhs, rhs);
        }
        // Also on a Heaviside state
        let h = Config::heaviside(Lattice::Z, DoubledIndex(0), false, true).unwrap();
        assert_eq!(
            a.apply(&h).unwrap().grad(),
            psi_a.apply(&h.grad()).unwrap()
        );
    }

    #[test]
    fn duality_parity_examples() {
        let x = Config::from_support(Lattice::Z, &[0]).unwrap();
        let xp = Config::from_support(Lattice::ZHalf, &[1]).unwrap();
        assert_eq!(duality_parity(&x, &xp).unwrap(), true);
        let h = Config::heaviside(Lattice::Z, DoubledIndex(0), false, true).unwrap();
        let d = Config::from_support(Lattice::ZHalf, &[-1]).unwrap();
        assert_eq!(duality_parity(&h, &d).unwrap(), true);
        let e = Config::empty(Lattice::ZHalf);
        assert_eq!(duality_parity(&h, &e).unwrap(), false);
        // Inadmissible pair is rejected
        let ones = Config::constant(Lattice::ZHalf, true);
        assert!(duality_parity(&h, &ones).is_err());
    }

    #[test]
    fn anchoring() {
        let a = op(&[(4, 2), (4, 4)]);
        assert_eq!(a.anchored(), op(&[(0, -2), (0, 0)]));
        let b = op(&[(1, -1), (1, 1)]);
        assert_eq!(b.anchored(), op(&[(-1, -3), (-1, -1)]));
    }

    #[test]
    fn ring_apply_wraps() {
        let ring = Lattice::Ring {
            n: 6,
            parity: SiteParity::Whole,
        };
        let a = op(&[(0, -2), (0, 0)]);
        // particle at site 5 is the left neighbour of site 0
        let x = Config::from_support(ring, &[10]).unwrap();
        let translated = a.translated(0); // anchored at site 0
        let out = translated.apply(&x).unwrap();
        assert_eq!(out, Config::from_support(ring, &[0]).unwrap());
        // ring too small for the operator span
        let tiny = Lattice::Ring {
            n: 1,
            parity: SiteParity::Whole,
        };
        let x = Config::from_support(tiny, &[0]).unwrap();
        assert!(a.apply(&x).is_err());
    }

    #[test]
    fn grad_inv_composes_with_ops() {
        // adjoint pairing identity on random-ish fixed cases
        let a = op(&[(0, -2), (0, 2), (2, 0), (2, 2)]);
        let x = Config::from_support(Lattice::Z, &[0, 4]).unwrap();
        let y = Config::from_support(Lattice::Z, &[-2, 0, 2]).unwrap();
        let lhs = x.product(&a.apply(&y).unwrap()).unwrap().parity_norm().unwrap();
        let rhs = a
            .adjoint()
            .apply(&x)
            .unwrap()
            .product(&y)
            .unwrap()
            .parity_norm()
            .unwrap();
        assert_eq!(lhs, rhs);
        let _ = Side::Minus; // silence unused import in this test module
    }
}
