//! Shared test oracles, kept independent of the library's own bijection and
//! enumeration code paths.

/// Enumerates all order-n height function matrices directly from their
/// defining constraints: fixed boundary and unit steps between neighbors,
/// by row-major backtracking over the interior. Used as the second,
/// independent counting path for ideal enumeration.
pub fn enumerate_height_matrices(n: usize) -> Vec<Vec<Vec<i64>>> {
    let mut grid = vec![vec![0i64; n + 1]; n + 1];
    for k in 0..=n {
        grid[0][k] = k as i64;
        grid[k][0] = k as i64;
        grid[n][k] = (n - k) as i64;
        grid[k][n] = (n - k) as i64;
    }
    let mut out = Vec::new();
    fill(&mut grid, n, 1, 1, &mut out);
    out
}

fn fill(grid: &mut Vec<Vec<i64>>, n: usize, i: usize, j: usize, out: &mut Vec<Vec<Vec<i64>>>) {
    if n == 1 || i == n {
        out.push(grid.clone());
        return;
    }
    let (ni, nj) = if j == n - 1 { (i + 1, 1) } else { (i, j + 1) };
    let up = grid[i - 1][j];
    let left = grid[i][j - 1];
    for candidate in [up - 1, up + 1] {
        if (candidate - left).abs() != 1 {
            continue;
        }
        if j + 1 == n && (candidate - grid[i][n]).abs() != 1 {
            continue;
        }
        if i + 1 == n && (candidate - grid[n][j]).abs() != 1 {
            continue;
        }
        grid[i][j] = candidate;
        fill(grid, n, ni, nj, out);
    }
    grid[i][j] = 0;
}
