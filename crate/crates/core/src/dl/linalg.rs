//! Dense bit-matrix Gaussian elimination over F_2 with deterministic
//! pivoting, small enough to stay exact and reproducible.

const BITS: usize = 64;

pub(crate) struct F2Matrix {
    rows: usize,
    cols: usize,
    blocks_per_row: usize,
    data: Vec<u64>,
}

impl F2Matrix {
    pub fn new(rows: usize, cols: usize) -> F2Matrix {
        let blocks_per_row = cols.div_ceil(BITS).max(1);
        F2Matrix {
            rows,
            cols,
            blocks_per_row,
            data: vec![0; rows * blocks_per_row],
        }
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        debug_assert!(r < self.rows && c < self.cols);
        let idx = r * self.blocks_per_row + c / BITS;
        let mask = 1u64 << (c % BITS);
        if value {
            self.data[idx] |= mask;
        } else {
            self.data[idx] &= !mask;
        }
    }

    #[cfg(test)]
    pub fn get(&self, r: usize, c: usize) -> bool {
        let idx = r * self.blocks_per_row + c / BITS;
        self.data[idx] >> (c % BITS) & 1 == 1
    }

    /// Solves M x = b, free variables pinned to zero. Returns `None` when
    /// the system is inconsistent. Pivoting picks the first available row
    /// per column, so solutions are reproducible.
    pub fn solve(&self, rhs: &[bool]) -> Option<Vec<bool>> {
        assert_eq!(rhs.len(), self.rows);
        // Augmented copy: one extra block for the right-hand side.
        let width = self.blocks_per_row + 1;
        let mut aug = vec![0u64; self.rows * width];
        for r in 0..self.rows {
            aug[r * width..r * width + self.blocks_per_row].copy_from_slice(
                &self.data[r * self.blocks_per_row..(r + 1) * self.blocks_per_row],
            );
            if rhs[r] {
                aug[r * width + self.blocks_per_row] = 1;
            }
        }
        let bit =
            |aug: &[u64], r: usize, c: usize| aug[r * width + c / BITS] >> (c % BITS) & 1 == 1;

        let mut pivot_of_col: Vec<Option<usize>> = vec![None; self.cols];
        let mut next_pivot_row = 0;
        for (col, pivot_slot) in pivot_of_col.iter_mut().enumerate() {
            let Some(pivot) = (next_pivot_row..self.rows).find(|&r| bit(&aug, r, col)) else {
                continue;
            };
            for b in 0..width {
                aug.swap(next_pivot_row * width + b, pivot * width + b);
            }
            for r in 0..self.rows {
                if r != next_pivot_row && bit(&aug, r, col) {
                    for b in 0..width {
                        aug[r * width + b] ^= aug[next_pivot_row * width + b];
                    }
                }
            }
            *pivot_slot = Some(next_pivot_row);
            next_pivot_row += 1;
        }
        // Inconsistent when a zero row demands a nonzero right-hand side.
        for r in next_pivot_row..self.rows {
            let coeffs_zero = aug[r * width..r * width + self.blocks_per_row]
                .iter()
                .all(|&b| b == 0);
            if coeffs_zero && aug[r * width + self.blocks_per_row] & 1 == 1 {
                return None;
            }
        }
        let mut solution = vec![false; self.cols];
        for col in 0..self.cols {
            if let Some(r) = pivot_of_col[col] {
                solution[col] = aug[r * width + self.blocks_per_row] & 1 == 1;
            }
        }
        Some(solution)
    }

    #[cfg(test)]
    pub fn rank(&self) -> usize {
        let mut m = F2Matrix {
            rows: self.rows,
            cols: self.cols,
            blocks_per_row: self.blocks_per_row,
            data: self.data.clone(),
        };
        let mut rank = 0;
        for col in 0..m.cols {
            let Some(pivot) = (rank..m.rows).find(|&r| m.get(r, col)) else {
                continue;
            };
            for b in 0..m.blocks_per_row {
                m.data
                    .swap(rank * m.blocks_per_row + b, pivot * m.blocks_per_row + b);
            }
            for r in 0..m.rows {
                if r != rank && m.get(r, col) {
                    for b in 0..m.blocks_per_row {
                        let src = m.data[rank * m.blocks_per_row + b];
                        m.data[r * m.blocks_per_row + b] ^= src;
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_small_systems() {
        // x0 + x1 = 1, x1 = 1 -> x = (0, 1).
        let mut m = F2Matrix::new(2, 2);
        m.set(0, 0, true);
        m.set(0, 1, true);
        m.set(1, 1, true);
        assert_eq!(m.solve(&[true, true]), Some(vec![false, true]));

        // Inconsistent: x0 = 0 and x0 = 1.
        let mut m = F2Matrix::new(2, 1);
        m.set(0, 0, true);
        m.set(1, 0, true);
        assert_eq!(m.solve(&[true, false]), None);

        // Underdetermined: free variable pinned to zero.
        let mut m = F2Matrix::new(1, 2);
        m.set(0, 0, true);
        m.set(0, 1, true);
        assert_eq!(m.solve(&[true]), Some(vec![true, false]));
    }

    #[test]
    fn rank_counts_pivots() {
        let mut m = F2Matrix::new(3, 3);
        for i in 0..3 {
            m.set(i, i, true);
        }
        m.set(2, 0, true);
        assert_eq!(m.rank(), 3);

        let mut squashed = F2Matrix::new(2, 2);
        squashed.set(0, 0, true);
        squashed.set(1, 0, true);
        assert_eq!(squashed.rank(), 1);
    }

    #[test]
    fn solve_wide_matrix_across_blocks() {
        // 70 columns forces multi-block rows.
        let mut m = F2Matrix::new(2, 70);
        m.set(0, 69, true);
        m.set(1, 3, true);
        let sol = m.solve(&[true, true]).unwrap();
        assert!(sol[69] && sol[3]);
        assert_eq!(sol.iter().filter(|&&b| b).count(), 2);
    }
}
