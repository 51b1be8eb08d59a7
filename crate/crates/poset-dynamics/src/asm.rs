//! Alternating sign matrices, height function matrices, corner sum matrices,
//! the ASM poset, and the bijections between all of them.
//!
//! Indexing follows the usual conventions for these objects: ASM and corner
//! sum entries are addressed with 1-based `(i, j)` where `i` is the row, while
//! height function matrices are `(n+1) x (n+1)` and 0-based. Conversions keep
//! published tables usable as golden fixtures.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::poset::{OrderIdeal, Poset};

/// An n x n alternating sign matrix: entries in `{-1, 0, 1}`, every row and
/// column sums to 1, and the nonzero entries alternate in sign along each
/// row and column.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AsmMatrix {
    n: usize,
    entries: Vec<i8>,
}

impl AsmMatrix {
    pub fn new(rows: Vec<Vec<i8>>) -> Result<Self> {
        validate_asm(&rows)?;
        let n = rows.len();
        let entries = rows.into_iter().flatten().collect();
        Ok(AsmMatrix { n, entries })
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![0i8; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        AsmMatrix { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry `a_{i,j}` with 1-based row `i` and column `j`.
    pub fn entry(&self, i: usize, j: usize) -> i8 {
        self.entries[(i - 1) * self.n + (j - 1)]
    }

    pub fn rows(&self) -> Vec<Vec<i8>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }
}

/// Checks the three ASM conditions, reporting the first violation found.
pub fn validate_asm(rows: &[Vec<i8>]) -> Result<()> {
    let n = rows.len();
    if n == 0 {
        return Err(Error::InvalidAsm("matrix is empty".into()));
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::InvalidAsm(format!(
                "row {} has {} entries, expected {}",
                i + 1,
                row.len(),
                n
            )));
        }
        for (j, &v) in row.iter().enumerate() {
            if !(-1..=1).contains(&v) {
                return Err(Error::InvalidAsm(format!(
                    "entry ({}, {}) is {}, outside {{-1, 0, 1}}",
                    i + 1,
                    j + 1,
                    v
                )));
            }
        }
    }
    for i in 0..n {
        check_line(
            (0..n).map(|j| rows[i][j]),
            &format!("row {}", i + 1),
        )?;
        check_line(
            (0..n).map(|j| rows[j][i]),
            &format!("column {}", i + 1),
        )?;
    }
    Ok(())
}

fn check_line(line: impl Iterator<Item = i8>, what: &str) -> Result<()> {
    let mut sum = 0i32;
    let mut last_nonzero = 0i8;
    for v in line {
        sum += i32::from(v);
        if v != 0 {
            if v == last_nonzero {
                return Err(Error::InvalidAsm(format!(
                    "nonzero entries of {what} do not alternate in sign"
                )));
            }
            last_nonzero = v;
        }
    }
    if sum != 1 {
        return Err(Error::InvalidAsm(format!("{what} sums to {sum}, expected 1")));
    }
    if last_nonzero == -1 {
        return Err(Error::InvalidAsm(format!("{what} ends with -1")));
    }
    Ok(())
}

/// An order-n height function matrix: `(n+1) x (n+1)`, fixed boundary
/// `h_{0,k} = h_{k,0} = k`, `h_{n,k} = h_{k,n} = n - k`, and adjacent entries
/// in any row or column differing by exactly 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct HeightFunction {
    n: usize,
    entries: Vec<i64>,
}

impl HeightFunction {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::InvalidHeightFunction("matrix is empty".into()));
        }
        let n = rows.len() - 1;
        if n == 0 {
            return Err(Error::InvalidHeightFunction(
                "matrix must be at least 2 x 2".into(),
            ));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n + 1 {
                return Err(Error::InvalidHeightFunction(format!(
                    "row {i} has {} entries, expected {}",
                    row.len(),
                    n + 1
                )));
            }
        }
        let h = HeightFunction {
            n,
            entries: rows.into_iter().flatten().collect(),
        };
        for k in 0..=n {
            let k64 = k as i64;
            let expect = [
                (h.get(0, k), k64),
                (h.get(k, 0), k64),
                (h.get(n, k), (n - k) as i64),
                (h.get(k, n), (n - k) as i64),
            ];
            for (got, want) in expect {
                if got != want {
                    return Err(Error::InvalidHeightFunction(format!(
                        "boundary entry is {got}, expected {want} (k = {k})"
                    )));
                }
            }
        }
        for i in 0..=n {
            for j in 0..=n {
                if j < n && (h.get(i, j) - h.get(i, j + 1)).abs() != 1 {
                    return Err(Error::InvalidHeightFunction(format!(
                        "entries ({i}, {j}) and ({i}, {}) do not differ by 1",
                        j + 1
                    )));
                }
                if i < n && (h.get(i, j) - h.get(i + 1, j)).abs() != 1 {
                    return Err(Error::InvalidHeightFunction(format!(
                        "entries ({i}, {j}) and ({}, {j}) do not differ by 1",
                        i + 1
                    )));
                }
            }
        }
        Ok(h)
    }

    /// The entrywise-maximal height function `h_{i,j} = min(i+j, 2n-i-j)`,
    /// which corresponds to the empty order ideal.
    pub fn maximal(n: usize) -> Self {
        let entries = (0..=n)
            .flat_map(|i| (0..=n).map(move |j| ((i + j).min(2 * n - i - j)) as i64))
            .collect();
        HeightFunction { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry `h_{i,j}`, 0-based with `0 <= i, j <= n`.
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * (self.n + 1) + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.n + 1).map(|r| r.to_vec()).collect()
    }
}

/// An n x n corner sum matrix `c_{i,j} = sum of ASM entries in the top-left
/// `i x j` rectangle` (1-based indices).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CornerSum {
    n: usize,
    entries: Vec<i64>,
}

impl CornerSum {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidCornerSum("matrix is empty".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidCornerSum(format!(
                    "row {} has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    n
                )));
            }
        }
        let c = CornerSum {
            n,
            entries: rows.into_iter().flatten().collect(),
        };
        // Valid exactly when h_{i,j} = i + j - 2 c_{i,j} is a height function.
        corner_sum_to_height(&c).map_err(|e| Error::InvalidCornerSum(e.to_string()))?;
        Ok(c)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry `c_{i,j}` with 1-based indices.
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[(i - 1) * self.n + (j - 1)]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }
}

/// `h_{i,j} = i + j - 2 * (corner sum of the top-left i x j rectangle)`.
pub fn asm_to_height(m: &AsmMatrix) -> HeightFunction {
    let n = m.n();
    let c = asm_to_corner_sum(m);
    let mut rows = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut row = Vec::with_capacity(n + 1);
        for j in 0..=n {
            let prefix = if i == 0 || j == 0 { 0 } else { c.get(i, j) };
            row.push(i as i64 + j as i64 - 2 * prefix);
        }
        rows.push(row);
    }
    HeightFunction::new(rows).expect("a valid ASM always yields a valid height function")
}

/// Inverse of [`asm_to_height`]:
/// `a_{i,j} = (h_{i-1,j} + h_{i,j-1} - h_{i,j} - h_{i-1,j-1}) / 2`.
pub fn height_to_asm(h: &HeightFunction) -> AsmMatrix {
    let n = h.n();
    let mut rows = Vec::with_capacity(n);
    for i in 1..=n {
        let mut row = Vec::with_capacity(n);
        for j in 1..=n {
            let v = (h.get(i - 1, j) + h.get(i, j - 1) - h.get(i, j) - h.get(i - 1, j - 1)) / 2;
            row.push(v as i8);
        }
        rows.push(row);
    }
    AsmMatrix::new(rows).expect("a valid height function always yields a valid ASM")
}

pub fn asm_to_corner_sum(m: &AsmMatrix) -> CornerSum {
    let n = m.n();
    let mut entries = vec![0i64; n * n];
    for i in 1..=n {
        for j in 1..=n {
            let up = if i > 1 { entries[(i - 2) * n + (j - 1)] } else { 0 };
            let left = if j > 1 { entries[(i - 1) * n + (j - 2)] } else { 0 };
            let diag = if i > 1 && j > 1 { entries[(i - 2) * n + (j - 2)] } else { 0 };
            entries[(i - 1) * n + (j - 1)] = up + left - diag + i64::from(m.entry(i, j));
        }
    }
    CornerSum { n, entries }
}

pub fn corner_sum_to_asm(c: &CornerSum) -> Result<AsmMatrix> {
    let n = c.n();
    let mut rows = Vec::with_capacity(n);
    for i in 1..=n {
        let mut row = Vec::with_capacity(n);
        for j in 1..=n {
            let up = if i > 1 { c.get(i - 1, j) } else { 0 };
            let left = if j > 1 { c.get(i, j - 1) } else { 0 };
            let diag = if i > 1 && j > 1 { c.get(i - 1, j - 1) } else { 0 };
            let v = c.get(i, j) - up - left + diag;
            if !(-1..=1).contains(&v) {
                return Err(Error::InvalidCornerSum(format!(
                    "finite difference at ({i}, {j}) is {v}"
                )));
            }
            row.push(v as i8);
        }
        rows.push(row);
    }
    AsmMatrix::new(rows)
}

pub fn height_to_corner_sum(h: &HeightFunction) -> CornerSum {
    let n = h.n();
    let entries = (1..=n)
        .flat_map(|i| (1..=n).map(move |j| (i as i64 + j as i64 - h.get(i, j)) / 2))
        .collect();
    CornerSum { n, entries }
}

pub fn corner_sum_to_height(c: &CornerSum) -> Result<HeightFunction> {
    let n = c.n();
    let mut rows = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut row = Vec::with_capacity(n + 1);
        for j in 0..=n {
            if i == 0 || j == 0 {
                row.push((i + j) as i64);
            } else {
                row.push(i as i64 + j as i64 - 2 * c.get(i, j));
            }
        }
        rows.push(row);
    }
    HeightFunction::new(rows)
}

/// The labels of the chain `S_{i,j}`: elements `(i-1-t, j-1-t, t)` of the
/// order-n ASM poset, listed by increasing `t` (increasing rank). Requires
/// `1 <= i, j <= n-1`. The ranks of the listed elements all share one parity,
/// the parity of `n - i - j`.
pub fn chain_labels(n: usize, i: usize, j: usize) -> Result<Vec<[i64; 3]>> {
    if n < 2 || i < 1 || j < 1 || i > n - 1 || j > n - 1 {
        return Err(Error::ChainIndexOutOfRange {
            n,
            i,
            j,
            max: n.saturating_sub(1),
        });
    }
    let t_lo = (i + j).saturating_sub(n);
    let t_hi = (i - 1).min(j - 1);
    Ok((t_lo..=t_hi)
        .map(|t| [(i - 1 - t) as i64, (j - 1 - t) as i64, t as i64])
        .collect())
}

/// The order-n ASM poset: elements `(i, j, k)` with `i, j, k >= 0` and
/// `i + j + k <= n - 2`, where `(i, j, k)` covers `(i, j+1, k)`,
/// `(i, j+1, k-1)`, `(i+1, j, k)`, and `(i+1, j, k-1)` whenever those are
/// elements. Elements are indexed in lexicographic label order. Its order
/// ideals are in bijection with the n x n ASMs.
#[derive(Clone, Debug)]
pub struct AsmPoset {
    n: usize,
    poset: Poset,
    labels: Vec<[i64; 3]>,
    index: HashMap<[i64; 3], usize>,
}

impl AsmPoset {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::OrderTooSmall(0));
        }
        let mut labels = Vec::new();
        if n >= 2 {
            let bound = (n - 2) as i64;
            for i in 0..=bound {
                for j in 0..=(bound - i) {
                    for k in 0..=(bound - i - j) {
                        labels.push([i, j, k]);
                    }
                }
            }
        }
        let index: HashMap<[i64; 3], usize> = labels
            .iter()
            .enumerate()
            .map(|(idx, &l)| (l, idx))
            .collect();

        let mut covers = Vec::new();
        for (idx, &[i, j, k]) in labels.iter().enumerate() {
            for lower in [[i, j + 1, k], [i, j + 1, k - 1], [i + 1, j, k], [i + 1, j, k - 1]] {
                if let Some(&lo) = index.get(&lower) {
                    covers.push((lo, idx));
                }
            }
        }
        let poset = Poset::from_covers(labels.len(), &covers)?.with_labels(labels.clone())?;
        Ok(AsmPoset {
            n,
            poset,
            labels,
            index,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn element_count(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, idx: usize) -> [i64; 3] {
        self.labels[idx]
    }

    pub fn index_of(&self, label: [i64; 3]) -> Option<usize> {
        self.index.get(&label).copied()
    }

    /// Element indices of the chain `S_{i,j}`, by increasing `t`.
    pub fn chain(&self, i: usize, j: usize) -> Result<Vec<usize>> {
        Ok(chain_labels(self.n, i, j)?
            .into_iter()
            .map(|l| self.index[&l])
            .collect())
    }

    /// The height function of an order ideal: interior entry `h_{i,j}` is
    /// `min(i+j, 2n-i-j) - 2 |I intersect S_{i,j}|`.
    pub fn ideal_to_height(&self, ideal: OrderIdeal) -> Result<HeightFunction> {
        let ideal = self.poset.ideal_from_mask(ideal.mask())?;
        let n = self.n;
        let mut rows = HeightFunction::maximal(n).rows();
        for i in 1..n {
            for j in 1..n {
                let chain = self.chain(i, j).expect("interior index is in range");
                let ell = chain.iter().filter(|&&p| ideal.contains(p)).count() as i64;
                rows[i][j] -= 2 * ell;
            }
        }
        HeightFunction::new(rows)
            .map_err(|e| Error::InvalidHeightFunction(format!("ideal produced invalid matrix: {e}")))
    }

    /// Inverse of [`AsmPoset::ideal_to_height`]: each chain `S_{i,j}`
    /// contributes its lowest `(max - h_{i,j}) / 2` elements.
    pub fn height_to_ideal(&self, h: &HeightFunction) -> Result<OrderIdeal> {
        if h.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: h.n(),
            });
        }
        let n = self.n;
        let mut mask = 0u64;
        for i in 1..n {
            for j in 1..n {
                let max = ((i + j).min(2 * n - i - j)) as i64;
                let diff = max - h.get(i, j);
                if diff < 0 || diff % 2 != 0 {
                    return Err(Error::InvalidHeightFunction(format!(
                        "entry ({i}, {j}) exceeds its maximum or has wrong parity"
                    )));
                }
                let ell = (diff / 2) as usize;
                let chain = self.chain(i, j).expect("interior index is in range");
                if ell > chain.len() {
                    return Err(Error::InvalidHeightFunction(format!(
                        "entry ({i}, {j}) lies below the chain minimum"
                    )));
                }
                for &p in &chain[..ell] {
                    mask |= 1 << p;
                }
            }
        }
        self.poset.ideal_from_mask(mask)
    }
}

/// Full chain of bijections: ASM to order ideal of the ASM poset.
pub fn asm_to_ideal(ap: &AsmPoset, m: &AsmMatrix) -> Result<OrderIdeal> {
    if m.n() != ap.n() {
        return Err(Error::DimensionMismatch {
            expected: ap.n(),
            got: m.n(),
        });
    }
    ap.height_to_ideal(&asm_to_height(m))
}

/// Full chain of bijections: order ideal of the ASM poset to ASM.
pub fn ideal_to_asm(ap: &AsmPoset, ideal: OrderIdeal) -> Result<AsmMatrix> {
    Ok(height_to_asm(&ap.ideal_to_height(ideal)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The 4 x 4 worked example used across the documentation tables.
    pub fn worked_asm() -> AsmMatrix {
        AsmMatrix::new(vec![
            vec![0, 0, 1, 0],
            vec![1, 0, -1, 1],
            vec![0, 0, 1, 0],
            vec![0, 1, 0, 0],
        ])
        .unwrap()
    }

    pub fn worked_height_rows() -> Vec<Vec<i64>> {
        vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 2, 3, 2, 3],
            vec![2, 1, 2, 3, 2],
            vec![3, 2, 3, 2, 1],
            vec![4, 3, 2, 1, 0],
        ]
    }

    #[test]
    fn validates_small_asms() {
        assert!(AsmMatrix::new(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).is_ok());
        assert!(AsmMatrix::new(vec![vec![0, 1, 0], vec![1, -1, 1], vec![0, 1, 0]]).is_ok());
        // A row summing to zero.
        let err = validate_asm(&[vec![1, -1, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap_err();
        assert!(matches!(err, Error::InvalidAsm(_)));
        // Alternation violated.
        assert!(validate_asm(&[vec![1, 0, 1], vec![0, 1, -1], vec![0, 0, 1]]).is_err());
    }

    #[test]
    fn worked_example_height_matrix() {
        let h = asm_to_height(&worked_asm());
        assert_eq!(h.rows(), worked_height_rows());
        assert_eq!(height_to_asm(&h), worked_asm());
    }

    #[test]
    fn worked_example_corner_sum() {
        let c = asm_to_corner_sum(&worked_asm());
        assert_eq!(
            c.rows(),
            vec![
                vec![0, 0, 1, 1],
                vec![1, 1, 1, 2],
                vec![1, 1, 2, 3],
                vec![1, 2, 3, 4],
            ]
        );
        assert_eq!(corner_sum_to_asm(&c).unwrap(), worked_asm());
        assert_eq!(height_to_corner_sum(&asm_to_height(&worked_asm())), c);
    }

    #[test]
    fn identity_asm_heights() {
        for n in [1usize, 4] {
            let h = asm_to_height(&AsmMatrix::identity(n));
            for i in 0..=n {
                for j in 0..=n {
                    assert_eq!(h.get(i, j), (i as i64 - j as i64).abs());
                }
            }
        }
        let c = asm_to_corner_sum(&AsmMatrix::identity(4));
        for i in 1..=4 {
            for j in 1..=4 {
                assert_eq!(c.get(i, j), i.min(j) as i64);
            }
        }
    }

    #[test]
    fn one_by_one() {
        let m = AsmMatrix::new(vec![vec![1]]).unwrap();
        let h = asm_to_height(&m);
        assert_eq!(h.rows(), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(height_to_asm(&h), m);
    }

    #[test]
    fn asm_poset_sizes() {
        assert_eq!(AsmPoset::new(1).unwrap().element_count(), 0);
        assert_eq!(AsmPoset::new(2).unwrap().element_count(), 1);
        assert_eq!(AsmPoset::new(3).unwrap().element_count(), 4);
        assert_eq!(AsmPoset::new(4).unwrap().element_count(), 10);
        // Tetrahedral numbers C(n+1, 3), by direct triple loop.
        for n in 2..=6usize {
            let brute = (0..n - 1)
                .flat_map(|i| (0..n - 1 - i).map(move |j| n - 1 - i - j))
                .sum::<usize>();
            assert_eq!(AsmPoset::new(n).unwrap().element_count(), brute);
        }
    }

    #[test]
    fn asm_poset_ranks() {
        for n in 2..=5usize {
            let ap = AsmPoset::new(n).unwrap();
            let rk = ap.poset().rank_function().unwrap();
            for idx in 0..ap.element_count() {
                let [i, j, _] = ap.label(idx);
                assert_eq!(rk.rank(idx) as i64, (n as i64) - 2 - i - j);
            }
            assert_eq!(rk.max_rank(), n - 2);
        }
        // Maximal elements of the order-5 poset are (0, 0, k) at rank 3.
        let ap = AsmPoset::new(5).unwrap();
        let rk = ap.poset().rank_function().unwrap();
        for k in 0..=3i64 {
            let idx = ap.index_of([0, 0, k]).unwrap();
            assert_eq!(rk.rank(idx), 3);
            assert!(ap.poset().maximal_elements().contains(idx));
        }
    }

    #[test]
    fn ideal_counts_match_asm_numbers() {
        let expected = [1usize, 2, 7, 42, 429];
        for (n, &count) in (1..=5usize).zip(expected.iter()) {
            let ap = AsmPoset::new(n).unwrap();
            assert_eq!(ap.poset().ideals().len(), count, "n = {n}");
        }
    }

    #[test]
    fn chain_examples() {
        assert_eq!(chain_labels(3, 1, 1).unwrap(), vec![[0, 0, 0]]);
        assert_eq!(chain_labels(4, 2, 2).unwrap(), vec![[1, 1, 0], [0, 0, 1]]);
        assert_eq!(chain_labels(5, 2, 3).unwrap(), vec![[1, 2, 0], [0, 1, 1]]);
        assert!(chain_labels(4, 0, 2).is_err());
        assert!(chain_labels(4, 2, 4).is_err());
    }

    #[test]
    fn chains_partition_poset_with_single_rank_parity() {
        for n in 2..=5usize {
            let ap = AsmPoset::new(n).unwrap();
            let rk = ap.poset().rank_function().unwrap();
            let mut seen = vec![false; ap.element_count()];
            for i in 1..n {
                for j in 1..n {
                    let chain = ap.chain(i, j).unwrap();
                    let parity = (n + i + j) % 2;
                    for (step, &p) in chain.iter().enumerate() {
                        assert!(!seen[p]);
                        seen[p] = true;
                        assert_eq!(rk.rank(p) % 2, parity, "n={n} i={i} j={j}");
                        if step > 0 {
                            assert!(ap.poset().leq(chain[step - 1], p));
                        }
                    }
                }
            }
            assert!(seen.iter().all(|&s| s));
        }
    }

    #[test]
    fn empty_and_full_ideals_hit_extremal_heights() {
        let ap = AsmPoset::new(4).unwrap();
        let h_empty = ap.ideal_to_height(OrderIdeal::EMPTY).unwrap();
        assert_eq!(h_empty, HeightFunction::maximal(4));
        let full = ap.poset().ideal_from_mask(ap.poset().full_mask()).unwrap();
        let h_full = ap.ideal_to_height(full).unwrap();
        for i in 1..4 {
            for j in 1..4 {
                let chain_len = ap.chain(i, j).unwrap().len() as i64;
                let max = ((i + j).min(8 - i - j)) as i64;
                assert_eq!(h_full.get(i, j), max - 2 * chain_len);
            }
        }
        assert_eq!(ap.height_to_ideal(&h_empty).unwrap(), OrderIdeal::EMPTY);
        assert_eq!(ap.height_to_ideal(&h_full).unwrap(), full);
    }

    #[test]
    fn worked_example_ideal() {
        let ap = AsmPoset::new(4).unwrap();
        let h = HeightFunction::new(worked_height_rows()).unwrap();
        let ideal = ap.height_to_ideal(&h).unwrap();
        let labels: Vec<[i64; 3]> = ideal.iter().map(|p| ap.label(p)).collect();
        let mut expected = vec![[0, 2, 0], [1, 1, 0], [2, 0, 0], [1, 0, 0]];
        expected.sort();
        let mut got = labels.clone();
        got.sort();
        assert_eq!(got, expected);
        assert_eq!(ap.ideal_to_height(ideal).unwrap(), h);
        assert_eq!(ideal_to_asm(&ap, ideal).unwrap(), worked_asm());
        assert_eq!(asm_to_ideal(&ap, &worked_asm()).unwrap(), ideal);
    }

    #[test]
    fn bijection_round_trips_exhaustively() {
        for n in 1..=4usize {
            let ap = AsmPoset::new(n).unwrap();
            for ideal in ap.poset().ideals() {
                let h = ap.ideal_to_height(ideal).unwrap();
                assert_eq!(ap.height_to_ideal(&h).unwrap(), ideal);
                let m = height_to_asm(&h);
                assert_eq!(asm_to_height(&m), h);
                assert_eq!(corner_sum_to_asm(&asm_to_corner_sum(&m)).unwrap(), m);
            }
        }
    }

    #[test]
    fn toggles_move_heights_by_two() {
        use crate::toggles::toggle;
        let ap = AsmPoset::new(4).unwrap();
        for ideal in ap.poset().ideals() {
            let h = ap.ideal_to_height(ideal).unwrap();
            for p in 0..ap.element_count() {
                let toggled = toggle(ap.poset(), p, ideal);
                if toggled == ideal {
                    continue;
                }
                let h2 = ap.ideal_to_height(toggled).unwrap();
                let mut changed = Vec::new();
                for i in 1..4 {
                    for j in 1..4 {
                        let d = h2.get(i, j) - h.get(i, j);
                        if d != 0 {
                            changed.push(((i, j), d));
                        }
                    }
                }
                let removed = !toggled.contains(p);
                assert_eq!(changed.len(), 1);
                assert_eq!(changed[0].1, if removed { 2 } else { -2 });
            }
        }
    }
}
