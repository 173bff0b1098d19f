//! 32-cell cyclic elementary cellular automaton running Wolfram rule 30.

use super::seeding::fold_seed;
use crate::f2model::vector::{BitReader, BitWriter, F2Vector};

/// Cell `i` is bit `i`; its left neighbour is cell `i + 1` and its right
/// neighbour cell `i - 1`, both modulo 32. Output is the whole row after each update.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ca32 {
    cells: u32,
}

impl Ca32 {
    pub const RULE: u8 = 30;
    /// Row used when the seed scatters to no live cell.
    pub const CENTER: u32 = 1 << 16;

    pub fn from_cells(cells: u32) -> Self {
        Self {
            cells: if cells == 0 { Self::CENTER } else { cells },
        }
    }

    pub fn from_seed(seed: u64) -> Self {
        Self::from_cells(fold_seed(seed))
    }

    pub fn cells(&self) -> u32 {
        self.cells
    }

    #[inline]
    pub fn next_u32(&mut self) -> u32 {
        let c = self.cells;
        let left = c.rotate_right(1);
        let right = c.rotate_left(1);
        self.cells = left ^ (c | right);
        self.cells
    }

    pub(crate) fn pack(&self, w: &mut BitWriter) {
        w.put_u32(self.cells);
    }

    pub(crate) fn unpack(v: &F2Vector) -> Self {
        Self {
            cells: BitReader::new(v).take_u32(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Applies the Wolfram rule table cell by cell.
    fn rule_table_step(cells: u32, rule: u8) -> u32 {
        let bit = |i: i32| (cells >> (i.rem_euclid(32))) & 1;
        (0..32).fold(0, |acc, i| {
            let pattern = (bit(i + 1) << 2) | (bit(i) << 1) | bit(i - 1);
            acc | ((((rule >> pattern) & 1) as u32) << i)
        })
    }

    #[test]
    fn matches_rule_table() {
        let mut g = Ca32::from_cells(0xDEAD_BEEF);
        let mut reference = 0xDEAD_BEEF;
        for _ in 0..1000 {
            reference = rule_table_step(reference, 30);
            assert_eq!(g.next_u32(), reference);
        }
    }

    #[test]
    fn single_cell_grows_the_rule_30_triangle() {
        let mut g = Ca32::from_cells(0);
        assert_eq!(g.cells(), Ca32::CENTER);
        // Rows 1 and 2 of the classic rule-30 pattern: 111 and 11001.
        assert_eq!(g.next_u32(), 0b111 << 15);
        assert_eq!(g.next_u32(), 0b11001 << 14);
    }
}
