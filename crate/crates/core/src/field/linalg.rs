//! Dense linear algebra over Z_p, used for subfield bases and coordinate
//! changes. Matrices are row-major `Vec<Vec<u64>>`.

use crate::nt::inv_mod_prime;

/// Row-reduce in place; returns the pivot column of each nonzero row.
fn rref(rows: &mut [Vec<u64>], p: u64) -> Vec<usize> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = inv_mod_prime(rows[r][c], p).expect("pivot is nonzero");
        for v in rows[r].iter_mut() {
            *v = *v * inv % p;
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x = (*x + p - f * y % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// Basis of the right null space `{v : M v = 0}`.
pub fn kernel(mat: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let cols = mat.first().map_or(0, Vec::len);
    let mut rows = mat.to_vec();
    let pivots = rref(&mut rows, p);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; cols];
            v[f] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - rows[row][f]) % p;
            }
            v
        })
        .collect()
}

/// Solve `M v = rhs` for square `M`; `None` if `M` is singular.
pub fn solve(mat: &[Vec<u64>], rhs: &[u64], p: u64) -> Option<Vec<u64>> {
    let n = mat.len();
    let mut rows: Vec<Vec<u64>> = mat
        .iter()
        .zip(rhs)
        .map(|(row, &b)| {
            let mut r = row.clone();
            r.push(b);
            r
        })
        .collect();
    let pivots = rref(&mut rows, p);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
        return None;
    }
    Some(rows.iter().map(|r| r[n]).collect())
}
