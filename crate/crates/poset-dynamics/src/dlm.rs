//! The O(1) dense loop model on a semi-infinite cylinder of circumference
//! 2n: tile rows, the induced Markov chain on link patterns, its exact
//! transfer matrix, and the exact stationary distribution.
//!
//! Closed loops formed while composing a row are discarded with weight 1.
//! Every matrix entry and the stationary solve are exact rationals; the
//! Monte Carlo sampler exists only as a cross-check and never feeds a
//! verdict.

use num::{BigInt, BigRational, One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::par;
use crate::tl::{LinkBasis, LinkPattern, LinkVector};

/// One plaquette of the cylinder. Among the four edge midpoints of the unit
/// square, tile `A` joins west to north and south to east; tile `B` joins
/// north to east and west to south.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Tile {
    A,
    B,
}

/// A ring of 2n tiles added to the cylinder in one step.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TileRow(Vec<Tile>);

impl TileRow {
    pub fn new(tiles: Vec<Tile>) -> Self {
        TileRow(tiles)
    }

    /// Row from the low `2n` bits of `bits`: bit `i` set means tile `B` at
    /// position `i`.
    pub fn from_bits(n: usize, bits: u32) -> Self {
        TileRow(
            (0..2 * n)
                .map(|i| if bits >> i & 1 == 1 { Tile::B } else { Tile::A })
                .collect(),
        )
    }

    pub fn tiles(&self) -> &[Tile] {
        &self.0
    }

    pub fn count_a(&self) -> usize {
        self.0.iter().filter(|&&t| t == Tile::A).count()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Side {
    North,
    East,
    South,
    West,
}

fn arc_exit(tile: Tile, entry: Side) -> Side {
    match (tile, entry) {
        (Tile::A, Side::West) => Side::North,
        (Tile::A, Side::North) => Side::West,
        (Tile::A, Side::South) => Side::East,
        (Tile::A, Side::East) => Side::South,
        (Tile::B, Side::North) => Side::East,
        (Tile::B, Side::East) => Side::North,
        (Tile::B, Side::West) => Side::South,
        (Tile::B, Side::South) => Side::West,
    }
}

/// Composes one ring of tiles with a link pattern. Square `i` (0-based)
/// touches old endpoint `i + 1` on its north side and new endpoint `i + 1`
/// on its south side; east sides glue to the next square around the ring.
/// Closed loops are dropped. A row of all `A` tiles rotates the pattern one
/// step counterclockwise; a row with a single `B` tile acts as that rotation
/// composed with a Temperley-Lieb operator.
pub fn row_transfer(row: &TileRow, pattern: &LinkPattern) -> LinkPattern {
    let m = pattern.points();
    assert_eq!(row.0.len(), m, "row length must equal the number of endpoints");
    let traverse = |start: usize| -> usize {
        let mut square = start;
        let mut entry = Side::South;
        loop {
            let exit = arc_exit(row.0[square], entry);
            match exit {
                Side::East => {
                    square = (square + 1) % m;
                    entry = Side::West;
                }
                Side::West => {
                    square = (square + m - 1) % m;
                    entry = Side::East;
                }
                Side::North => {
                    // Through the old boundary: follow the old matching.
                    square = pattern.partner(square + 1) - 1;
                    entry = Side::North;
                }
                Side::South => return square,
            }
        }
    };

    let mut pairs = Vec::with_capacity(m / 2);
    let mut seen = vec![false; m];
    for i in 0..m {
        if seen[i] {
            continue;
        }
        let j = traverse(i);
        seen[i] = true;
        seen[j] = true;
        pairs.push((i + 1, j + 1));
    }
    LinkPattern::from_pairs(m / 2, &pairs)
        .expect("planar composition always yields a noncrossing matching")
}

/// The exact transfer matrix of the dense loop model at tile probability
/// `p`: entry `(target, source)` sums `p^{#A} (1-p)^{#B}` over all `2^{2n}`
/// tile rows carrying `source` to `target`. Columns sum to 1.
#[derive(Clone, PartialEq, Debug)]
pub struct TransferMatrix {
    n: usize,
    p: BigRational,
    dim: usize,
    entries: Vec<BigRational>,
}

pub fn transfer_matrix(n: usize, p: &BigRational) -> Result<TransferMatrix> {
    if n == 0 {
        return Err(Error::OrderTooSmall(0));
    }
    if !p.is_positive() || *p >= BigRational::one() {
        return Err(Error::ProbabilityOutOfRange(p.to_string()));
    }
    let basis = LinkBasis::new(n);
    let dim = basis.len();
    let q = BigRational::one() - p;

    // Precompute the permutation and weight of each tile row, in parallel,
    // then accumulate.
    let rows = par::map_range(0..1usize << (2 * n), |bits| {
        let row = TileRow::from_bits(n, bits as u32);
        let a = row.count_a();
        let weight = pow(p, a) * pow(&q, 2 * n - a);
        let perm: Vec<usize> = basis
            .patterns()
            .iter()
            .map(|pattern| {
                basis
                    .index_of(&row_transfer(&row, pattern))
                    .expect("row transfer lands in the basis")
            })
            .collect();
        (weight, perm)
    });

    let mut entries = vec![BigRational::zero(); dim * dim];
    for (weight, perm) in rows {
        for (source, &target) in perm.iter().enumerate() {
            let cell = &mut entries[target * dim + source];
            *cell = &*cell + &weight;
        }
    }

    let t = TransferMatrix {
        n,
        p: p.clone(),
        dim,
        entries,
    };
    debug_assert!((0..dim).all(|s| {
        (0..dim)
            .fold(BigRational::zero(), |acc, t_| acc + t.get(t_, s))
            .is_one()
    }));
    Ok(t)
}

fn pow(base: &BigRational, exp: usize) -> BigRational {
    let mut out = BigRational::one();
    for _ in 0..exp {
        out *= base;
    }
    out
}

impl TransferMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> &BigRational {
        &self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Entry at (target, source).
    pub fn get(&self, target: usize, source: usize) -> &BigRational {
        &self.entries[target * self.dim + source]
    }

    pub fn apply(&self, v: &LinkVector) -> Result<LinkVector> {
        if v.coords().len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: v.coords().len(),
            });
        }
        let coords = (0..self.dim)
            .map(|t| {
                (0..self.dim).fold(BigRational::zero(), |acc, s| acc + self.get(t, s) * v.coord(s))
            })
            .collect();
        LinkVector::new(self.n, coords)
    }

    pub fn matmul(&self, other: &TransferMatrix) -> Result<Vec<BigRational>> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let d = self.dim;
        Ok((0..d * d)
            .map(|cell| {
                let (t, s) = (cell / d, cell % d);
                (0..d).fold(BigRational::zero(), |acc, k| {
                    acc + self.get(t, k) * other.get(k, s)
                })
            })
            .collect())
    }

    /// Exact commutation test: `T(p) T(q) == T(q) T(p)`.
    pub fn commutes_with(&self, other: &TransferMatrix) -> Result<bool> {
        Ok(self.matmul(other)? == other.matmul(self)?)
    }
}

/// The unique probability vector fixed by the transfer matrix, found by
/// exact Gaussian elimination on `T - I` (never by iteration). Fails if the
/// fixed space is not one-dimensional.
pub fn stationary_distribution(t: &TransferMatrix) -> Result<LinkVector> {
    let d = t.dim();
    // Rows of T - I.
    let mut a: Vec<Vec<BigRational>> = (0..d)
        .map(|r| {
            (0..d)
                .map(|c| {
                    let mut v = t.get(r, c).clone();
                    if r == c {
                        v -= BigRational::one();
                    }
                    v
                })
                .collect()
        })
        .collect();

    // Reduced row echelon form.
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..d {
        let Some(pivot) = (row..d).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, pivot);
        let inv = a[row][col].clone();
        for c in col..d {
            a[row][c] = &a[row][c] / &inv;
        }
        for r in 0..d {
            if r != row && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for c in col..d {
                    a[r][c] = &a[r][c] - &factor * &a[row][c];
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
        if row == d {
            break;
        }
    }

    let free: Vec<usize> = (0..d).filter(|c| !pivot_cols.contains(c)).collect();
    if free.len() != 1 {
        return Err(Error::NonUniqueStationary(free.len()));
    }
    let free_col = free[0];
    let mut v = vec![BigRational::zero(); d];
    v[free_col] = BigRational::one();
    for (r, &col) in pivot_cols.iter().enumerate() {
        v[col] = -a[r][free_col].clone();
    }

    let sum = v.iter().fold(BigRational::zero(), |acc, x| acc + x);
    if sum.is_zero() {
        return Err(Error::NonUniqueStationary(0));
    }
    let normalized = v.into_iter().map(|x| x / &sum).collect();
    LinkVector::new(t.n(), normalized)
}

/// Seeded Monte Carlo sampler for the chain: runs `burn_in + samples` row
/// steps from the first basis pattern and counts visited patterns after
/// burn-in. Provided as a cross-check utility only; it uses `f64`
/// probabilities and must never back a verdict.
pub fn sample_stationary(n: usize, p: f64, burn_in: usize, samples: usize, seed: u64) -> Vec<u64> {
    let basis = LinkBasis::new(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = vec![0u64; basis.len()];
    let mut current = basis.pattern(0).clone();
    for step in 0..burn_in + samples {
        let tiles: Vec<Tile> = (0..2 * n)
            .map(|_| if rng.random_bool(p) { Tile::A } else { Tile::B })
            .collect();
        current = row_transfer(&TileRow::new(tiles), &current);
        if step >= burn_in {
            counts[basis.index_of(&current).expect("basis is closed")] += 1;
        }
    }
    counts
}

pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tl::{enumerate_link_patterns, rotate, tl_apply};

    #[test]
    fn uniform_a_row_is_rotation() {
        for n in 1..=5usize {
            let row = TileRow::new(vec![Tile::A; 2 * n]);
            for pattern in enumerate_link_patterns(n) {
                assert_eq!(row_transfer(&row, &pattern), rotate(&pattern), "n = {n}");
            }
        }
    }

    #[test]
    fn uniform_b_row_is_inverse_rotation() {
        use crate::tl::rotate_inverse;
        for n in 1..=4usize {
            let row = TileRow::new(vec![Tile::B; 2 * n]);
            for pattern in enumerate_link_patterns(n) {
                assert_eq!(row_transfer(&row, &pattern), rotate_inverse(&pattern));
            }
        }
    }

    #[test]
    fn single_defect_row_is_rotation_with_tl_operator() {
        for n in 2..=4usize {
            let patterns = enumerate_link_patterns(n);
            for pos in 0..2 * n {
                let mut tiles = vec![Tile::A; 2 * n];
                tiles[pos] = Tile::B;
                let row = TileRow::new(tiles);
                let found = (1..=2 * n).any(|j| {
                    patterns
                        .iter()
                        .all(|pi| row_transfer(&row, pi) == rotate(&tl_apply(j, pi)))
                });
                assert!(found, "n = {n}, defect at {pos}");
            }
        }
    }

    #[test]
    fn order_one_matrix_is_identity() {
        let t = transfer_matrix(1, &ratio(1, 2)).unwrap();
        assert_eq!(t.dim(), 1);
        assert!(t.get(0, 0).is_one());
    }

    #[test]
    fn order_two_half_is_doubly_stochastic() {
        let t = transfer_matrix(2, &ratio(1, 2)).unwrap();
        assert_eq!(t.dim(), 2);
        for s in 0..2 {
            let col: BigRational = (0..2).map(|r| t.get(r, s).clone()).sum();
            assert!(col.is_one());
        }
        for r in 0..2 {
            let row: BigRational = (0..2).map(|s| t.get(r, s).clone()).sum();
            assert!(row.is_one());
        }
    }

    #[test]
    fn rejects_bad_probability() {
        assert!(transfer_matrix(2, &ratio(0, 1)).is_err());
        assert!(transfer_matrix(2, &ratio(1, 1)).is_err());
        assert!(transfer_matrix(2, &ratio(3, 2)).is_err());
    }

    #[test]
    fn stationary_order_two() {
        let t = transfer_matrix(2, &ratio(1, 2)).unwrap();
        let v = stationary_distribution(&t).unwrap();
        assert_eq!(v.coords(), &[ratio(1, 2), ratio(1, 2)]);
        assert_eq!(t.apply(&v).unwrap(), v);
    }

    #[test]
    fn transfer_matrices_commute() {
        for n in 1..=3usize {
            let t1 = transfer_matrix(n, &ratio(1, 3)).unwrap();
            let t2 = transfer_matrix(n, &ratio(1, 2)).unwrap();
            assert!(t1.commutes_with(&t2).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn sampler_runs_deterministically() {
        let a = sample_stationary(2, 0.5, 100, 500, 7);
        let b = sample_stationary(2, 0.5, 100, 500, 7);
        assert_eq!(a, b);
        assert_eq!(a.iter().sum::<u64>(), 500);
    }
}
