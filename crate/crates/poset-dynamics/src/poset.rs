//! Finite posets over a dense bit-set universe, with order ideals,
//! antichains, rank functions, and exhaustive ideal enumeration.
//!
//! Elements are indices `0..len`. Subsets are 64-bit masks, so posets are
//! capped at [`MAX_ELEMENTS`] elements; construction rejects anything larger.
//! That bound comfortably covers the built-in families at desk scale.

use std::fmt;

use crate::error::{Error, Result};
use crate::par;

/// Hard cap imposed by the `u64` subset representation.
pub const MAX_ELEMENTS: usize = 64;

/// A down-closed subset of a poset, stored as a bit mask over element indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct OrderIdeal(u64);

/// A set of pairwise incomparable elements, stored as a bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Antichain(u64);

macro_rules! subset_impl {
    ($ty:ident) => {
        impl $ty {
            pub const EMPTY: $ty = $ty(0);

            /// Wraps a raw mask without validating it against any poset.
            pub fn from_mask(mask: u64) -> Self {
                $ty(mask)
            }

            pub fn mask(self) -> u64 {
                self.0
            }

            pub fn contains(self, p: usize) -> bool {
                p < 64 && self.0 & (1 << p) != 0
            }

            pub fn len(self) -> usize {
                self.0.count_ones() as usize
            }

            pub fn is_empty(self) -> bool {
                self.0 == 0
            }

            pub fn with(self, p: usize) -> Self {
                $ty(self.0 | (1 << p))
            }

            pub fn without(self, p: usize) -> Self {
                $ty(self.0 & !(1 << p))
            }

            /// Element indices in increasing order.
            pub fn iter(self) -> BitIter {
                BitIter(self.0)
            }
        }

        impl fmt::Debug for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}{{", stringify!($ty))?;
                let mut first = true;
                for p in self.iter() {
                    if !first {
                        write!(f, ",")?;
                    }
                    write!(f, "{}", p)?;
                    first = false;
                }
                write!(f, "}}")
            }
        }

        impl FromIterator<usize> for $ty {
            fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
                let mut mask = 0u64;
                for p in iter {
                    mask |= 1 << p;
                }
                $ty(mask)
            }
        }
    };
}

subset_impl!(OrderIdeal);
subset_impl!(Antichain);

/// Iterator over the set bits of a mask, lowest index first.
pub struct BitIter(pub u64);

impl Iterator for BitIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let p = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(p)
        }
    }
}

/// A finite poset given by its cover relations.
///
/// Construction recomputes the transitive closure and reduction, so callers
/// may pass any acyclic relation, redundant pairs included. The stored covers
/// are always the transitive reduction.
#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    len: usize,
    covers: Vec<(usize, usize)>,
    labels: Option<Vec<[i64; 3]>>,
    up_covers: Vec<u64>,
    down_covers: Vec<u64>,
    // Closed principal filters/ideals: up_set[p] and down_set[p] include p.
    up_set: Vec<u64>,
    down_set: Vec<u64>,
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Poset")
            .field("len", &self.len)
            .field("covers", &self.covers)
            .finish()
    }
}

impl Poset {
    /// Builds a poset on `len` elements from relation pairs `(lower, upper)`.
    ///
    /// Rejects cyclic input (with a cycle witness) and posets over
    /// [`MAX_ELEMENTS`] elements.
    pub fn from_covers(len: usize, relations: &[(usize, usize)]) -> Result<Self> {
        if len > MAX_ELEMENTS {
            return Err(Error::TooManyElements {
                size: len,
                cap: MAX_ELEMENTS,
            });
        }
        for &(a, b) in relations {
            for idx in [a, b] {
                if idx >= len {
                    return Err(Error::ElementOutOfRange { index: idx, size: len });
                }
            }
            if a == b {
                return Err(Error::CycleDetected(vec![a]));
            }
        }

        // Kahn's algorithm over the raw input edges; leftovers witness a cycle.
        let mut succ = vec![Vec::new(); len];
        let mut pred = vec![Vec::new(); len];
        let mut indegree = vec![0usize; len];
        let mut seen = std::collections::HashSet::new();
        for &(a, b) in relations {
            if seen.insert((a, b)) {
                succ[a].push(b);
                pred[b].push(a);
                indegree[b] += 1;
            }
        }
        let mut queue: Vec<usize> = (0..len).filter(|&v| indegree[v] == 0).collect();
        let mut topo = Vec::with_capacity(len);
        while let Some(v) = queue.pop() {
            topo.push(v);
            for &w in &succ[v] {
                indegree[w] -= 1;
                if indegree[w] == 0 {
                    queue.push(w);
                }
            }
        }
        if topo.len() < len {
            return Err(Error::CycleDetected(find_cycle(len, &pred, &topo)));
        }

        // Transitive closure: one pass in topological order suffices because
        // every edge goes forward in `topo`.
        let mut down_set = vec![0u64; len];
        for &v in &topo {
            down_set[v] |= 1u64 << v;
            for &w in &succ[v] {
                let d = down_set[v];
                down_set[w] |= d;
            }
        }

        let mut up_set = vec![0u64; len];
        for v in 0..len {
            for u in 0..len {
                if down_set[v] & (1 << u) != 0 {
                    up_set[u] |= 1 << v;
                }
            }
        }

        // Transitive reduction: (a, b) is a cover iff nothing sits strictly between.
        let mut covers = Vec::new();
        for a in 0..len {
            for b in BitIter(up_set[a] & !(1u64 << a)) {
                let between = up_set[a] & down_set[b] & !(1u64 << a) & !(1u64 << b);
                if between == 0 {
                    covers.push((a, b));
                }
            }
        }
        covers.sort_unstable();

        let mut up_covers = vec![0u64; len];
        let mut down_covers = vec![0u64; len];
        for &(a, b) in &covers {
            up_covers[a] |= 1 << b;
            down_covers[b] |= 1 << a;
        }

        Ok(Poset {
            len,
            covers,
            labels: None,
            up_covers,
            down_covers,
            up_set,
            down_set,
        })
    }

    /// Attaches integer-triple labels to the elements.
    pub fn with_labels(mut self, labels: Vec<[i64; 3]>) -> Result<Self> {
        if labels.len() != self.len {
            return Err(Error::DimensionMismatch {
                expected: self.len,
                got: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Cover pairs `(lower, upper)` of the transitive reduction, sorted.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn labels(&self) -> Option<&[[i64; 3]]> {
        self.labels.as_deref()
    }

    pub fn label(&self, p: usize) -> Option<[i64; 3]> {
        self.labels.as_ref().map(|l| l[p])
    }

    /// True when `a <= b` in the partial order.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up_set[a] & (1 << b) != 0
    }

    /// Mask of elements covering `p`.
    pub fn up_covers(&self, p: usize) -> u64 {
        self.up_covers[p]
    }

    /// Mask of elements covered by `p`.
    pub fn down_covers(&self, p: usize) -> u64 {
        self.down_covers[p]
    }

    /// Mask of elements `<= p`, including `p`.
    pub fn down_set(&self, p: usize) -> u64 {
        self.down_set[p]
    }

    /// Mask of elements `>= p`, including `p`.
    pub fn up_set(&self, p: usize) -> u64 {
        self.up_set[p]
    }

    pub fn minimal_elements(&self) -> Antichain {
        Antichain((0..self.len).filter(|&p| self.down_covers[p] == 0).fold(0, |m, p| m | (1 << p)))
    }

    pub fn maximal_elements(&self) -> Antichain {
        Antichain((0..self.len).filter(|&p| self.up_covers[p] == 0).fold(0, |m, p| m | (1 << p)))
    }

    /// Checks down-closure of a mask.
    pub fn is_ideal_mask(&self, mask: u64) -> bool {
        BitIter(mask).all(|p| self.down_set[p] & !mask == 0)
    }

    pub fn ideal_from_mask(&self, mask: u64) -> Result<OrderIdeal> {
        for p in BitIter(mask) {
            let missing = self.down_set[p] & !mask;
            if missing != 0 {
                return Err(Error::NotAnIdeal {
                    element: p,
                    missing: missing.trailing_zeros() as usize,
                });
            }
        }
        Ok(OrderIdeal(mask))
    }

    pub fn is_antichain_mask(&self, mask: u64) -> bool {
        BitIter(mask).all(|p| (self.up_set[p] | self.down_set[p]) & mask == 1 << p)
    }

    pub fn antichain_from_mask(&self, mask: u64) -> Result<Antichain> {
        for p in BitIter(mask) {
            let related = (self.up_set[p] | self.down_set[p]) & mask & !(1u64 << p);
            if related != 0 {
                return Err(Error::NotAnAntichain(p, related.trailing_zeros() as usize));
            }
        }
        Ok(Antichain(mask))
    }

    /// Maximal elements of the ideal `I`; always an antichain.
    pub fn ideal_max(&self, ideal: OrderIdeal) -> Result<Antichain> {
        let ideal = self.ideal_from_mask(ideal.mask())?;
        Ok(Antichain(self.ideal_max_mask(ideal.mask())))
    }

    pub(crate) fn ideal_max_mask(&self, mask: u64) -> u64 {
        BitIter(mask)
            .filter(|&p| self.up_covers[p] & mask == 0)
            .fold(0, |m, p| m | (1 << p))
    }

    /// Minimal elements of the complement of `I`; always an antichain.
    pub fn complement_min(&self, ideal: OrderIdeal) -> Result<Antichain> {
        let ideal = self.ideal_from_mask(ideal.mask())?;
        Ok(Antichain(self.complement_min_mask(ideal.mask())))
    }

    pub(crate) fn complement_min_mask(&self, mask: u64) -> u64 {
        let full = self.full_mask();
        BitIter(full & !mask)
            .filter(|&p| self.down_covers[p] & !mask == 0)
            .fold(0, |m, p| m | (1 << p))
    }

    /// The smallest ideal containing the antichain `A`.
    pub fn ideal_generated_by(&self, antichain: Antichain) -> Result<OrderIdeal> {
        let antichain = self.antichain_from_mask(antichain.mask())?;
        Ok(OrderIdeal(self.closure_mask(antichain.mask())))
    }

    pub(crate) fn closure_mask(&self, mask: u64) -> u64 {
        BitIter(mask).fold(0, |m, p| m | self.down_set[p])
    }

    pub fn full_mask(&self) -> u64 {
        if self.len == 0 {
            0
        } else {
            u64::MAX >> (64 - self.len)
        }
    }

    /// A deterministic linear extension (smallest available index first).
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut placed = 0u64;
        let mut out = Vec::with_capacity(self.len);
        while out.len() < self.len {
            let p = (0..self.len)
                .find(|&p| placed & (1 << p) == 0 && self.down_covers[p] & !placed == 0)
                .expect("acyclic poset always has a next minimal element");
            placed |= 1 << p;
            out.push(p);
        }
        out
    }

    /// Key whose numeric order equals lexicographic order of the
    /// characteristic bit-vector `(b_0, ..., b_{len-1})`.
    pub fn lex_key(&self, ideal: OrderIdeal) -> u64 {
        if self.len == 0 {
            0
        } else {
            ideal.mask().reverse_bits() >> (64 - self.len)
        }
    }

    /// All order ideals, exactly once, in lexicographic order of their
    /// characteristic bit-vectors.
    pub fn ideals(&self) -> Vec<OrderIdeal> {
        let ext = self.linear_extension();
        let mut out: Vec<u64>;

        // Split the include/exclude decision tree on a short prefix so the
        // subtrees can be enumerated independently.
        let split = ext.len().min(6);
        let mut prefixes = Vec::new();
        enumerate_rec(self, &ext, 0, split, 0, &mut prefixes);
        if prefixes.len() > 1 {
            let chunks = par::map_slice(&prefixes, |&prefix| {
                let mut acc = Vec::new();
                enumerate_rec(self, &ext, split, ext.len(), prefix, &mut acc);
                acc
            });
            out = chunks.into_iter().flatten().collect();
        } else {
            out = Vec::new();
            enumerate_rec(self, &ext, split, ext.len(), 0, &mut out);
        }

        out.sort_unstable_by_key(|&m| self.lex_key(OrderIdeal(m)));
        out.into_iter().map(OrderIdeal).collect()
    }

    /// Rank function by longest-path layering from the minimal elements.
    ///
    /// Every minimal element gets rank 0 (per connected component). Fails with
    /// two witness chains when some cover does not raise the rank by exactly 1.
    pub fn rank_function(&self) -> Result<RankFunction> {
        let ext = self.linear_extension();
        let mut ranks = vec![0usize; self.len];
        for &p in &ext {
            ranks[p] = BitIter(self.down_covers[p])
                .map(|q| ranks[q] + 1)
                .max()
                .unwrap_or(0);
        }
        for &(a, b) in &self.covers {
            if ranks[b] != ranks[a] + 1 {
                let mut chain_via_lower = self.longest_chain_to(a, &ranks);
                chain_via_lower.push(b);
                return Err(Error::NotRanked {
                    lower: a,
                    upper: b,
                    lower_rank: ranks[a],
                    upper_rank: ranks[b],
                    chain_via_lower,
                    chain_to_upper: self.longest_chain_to(b, &ranks),
                });
            }
        }
        let max_rank = ranks.iter().copied().max().unwrap_or(0);
        Ok(RankFunction { ranks, max_rank })
    }

    fn longest_chain_to(&self, p: usize, ranks: &[usize]) -> Vec<usize> {
        let mut chain = vec![p];
        let mut cur = p;
        while ranks[cur] > 0 {
            let q = BitIter(self.down_covers[cur])
                .max_by_key(|&q| ranks[q])
                .expect("non-minimal element has a lower cover");
            chain.push(q);
            cur = q;
        }
        chain.reverse();
        chain
    }

    /// The poset with all covers reversed. Labels are kept.
    pub fn dual(&self) -> Poset {
        let reversed: Vec<(usize, usize)> = self.covers.iter().map(|&(a, b)| (b, a)).collect();
        let mut dual = Poset::from_covers(self.len, &reversed)
            .expect("reversing covers of a valid poset cannot fail");
        dual.labels = self.labels.clone();
        dual
    }
}

fn enumerate_rec(poset: &Poset, ext: &[usize], from: usize, to: usize, mask: u64, out: &mut Vec<u64>) {
    if from == to {
        out.push(mask);
        return;
    }
    let p = ext[from];
    enumerate_rec(poset, ext, from + 1, to, mask, out);
    if poset.down_covers[p] & !mask == 0 {
        enumerate_rec(poset, ext, from + 1, to, mask | (1 << p), out);
    }
}

fn find_cycle(len: usize, pred: &[Vec<usize>], topo: &[usize]) -> Vec<usize> {
    let sorted: std::collections::HashSet<usize> = topo.iter().copied().collect();
    let start = (0..len).find(|v| !sorted.contains(v)).unwrap();
    // Every unsorted vertex keeps an unsorted predecessor, so walking
    // backwards stays inside the cyclic part until a vertex repeats.
    let mut path = vec![start];
    let mut seen = std::collections::HashMap::new();
    seen.insert(start, 0usize);
    let mut cur = start;
    loop {
        let next = pred[cur]
            .iter()
            .copied()
            .find(|w| !sorted.contains(w))
            .expect("unsorted vertex has an unsorted predecessor");
        if let Some(&at) = seen.get(&next) {
            let mut cycle = path[at..].to_vec();
            cycle.reverse();
            return cycle;
        }
        seen.insert(next, path.len());
        path.push(next);
        cur = next;
    }
}

/// Ranks assigned by [`Poset::rank_function`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankFunction {
    ranks: Vec<usize>,
    max_rank: usize,
}

impl RankFunction {
    pub fn rank(&self, p: usize) -> usize {
        self.ranks[p]
    }

    pub fn max_rank(&self) -> usize {
        self.max_rank
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Elements whose rank has the given parity (0 = even, 1 = odd),
    /// in increasing index order.
    pub fn parity_class(&self, parity: usize) -> Vec<usize> {
        (0..self.ranks.len())
            .filter(|&p| self.ranks[p] % 2 == parity % 2)
            .collect()
    }
}

/// The product of two chains `[a] x [b]`: elements `(x, y)` with
/// `0 <= x < a`, `0 <= y < b`, ordered componentwise. Element `(x, y)` has
/// index `x * b + y` and label `[x, y, 0]`.
pub fn chain_product(a: usize, b: usize) -> Result<Poset> {
    let len = a * b;
    let mut covers = Vec::new();
    let idx = |x: usize, y: usize| x * b + y;
    for x in 0..a {
        for y in 0..b {
            if x + 1 < a {
                covers.push((idx(x, y), idx(x + 1, y)));
            }
            if y + 1 < b {
                covers.push((idx(x, y), idx(x, y + 1)));
            }
        }
    }
    let labels = (0..a)
        .flat_map(|x| (0..b).map(move |y| [x as i64, y as i64, 0]))
        .collect();
    Poset::from_covers(len, &covers)?.with_labels(labels)
}

/// The three-element poset `a, b < c` with `a = 0`, `b = 1`, `c = 2`.
/// Toggling in the order `a, c, b` fails to be homomesic for the
/// toggleability statistic at `c`.
pub fn promotion_counterexample() -> Poset {
    Poset::from_covers(3, &[(0, 2), (1, 2)]).expect("static poset is valid")
}
