//! Row reduction over Z_p for small dense matrices.

use crate::poly::inv_mod;

/// Reduces `rows` to reduced row echelon form in place and returns the pivot
/// columns. Zero rows end up at the bottom.
pub fn rref(rows: &mut [Vec<u32>], p: u32) -> Vec<usize> {
    let p64 = u64::from(p);
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = u64::from(inv_mod(rows[r][c], p));
        for x in rows[r].iter_mut() {
            *x = (u64::from(*x) * inv % p64) as u32;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let f = u64::from(row[c]);
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                *x = ((u64::from(*x) + p64 - f * u64::from(y) % p64) % p64) as u32;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<u32>], p: u32) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, p).len()
}

/// Indices of a maximal independent subset of `rows`, chosen greedily in
/// order.
pub fn independent_rows(rows: &[Vec<u32>], p: u32) -> Vec<usize> {
    let mut basis: Vec<Vec<u32>> = Vec::new();
    let mut keep = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let mut trial = basis.clone();
        trial.push(row.clone());
        if rank(&trial, p) == basis.len() + 1 {
            basis = trial;
            keep.push(i);
        }
    }
    keep
}

/// Basis of the right null space `{v : rows · v = 0}` of a matrix with
/// `ncols` columns.
pub fn null_space(rows: &[Vec<u32>], ncols: usize, p: u32) -> Vec<Vec<u32>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, p);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u32; ncols];
            v[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - m[r][f]) % p;
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_null_space() {
        let rows = vec![vec![1, 2, 0, 1], vec![2, 1, 0, 2], vec![0, 0, 1, 1]];
        // second row = 2 * first row mod 3
        assert_eq!(rank(&rows, 3), 2);
        assert_eq!(independent_rows(&rows, 3), vec![0, 2]);
        let ns = null_space(&rows, 4, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for row in &rows {
                let dot: u32 = row.iter().zip(v).map(|(a, b)| a * b).sum();
                assert_eq!(dot % 3, 0);
            }
        }
    }

    #[test]
    fn full_rank_square_has_trivial_null_space() {
        let rows = vec![vec![1, 0], vec![0, 1]];
        assert!(null_space(&rows, 2, 5).is_empty());
    }
}
