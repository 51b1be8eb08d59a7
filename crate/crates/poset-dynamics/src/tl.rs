//! Noncrossing link patterns, rotation, Temperley-Lieb operators, the FPL
//! distribution vector, and the Razumov-Stroganov identity check.

use std::collections::HashMap;

use num::{BigInt, BigRational, Zero};

use crate::asm::AsmPoset;
use crate::error::{Error, Result};
use crate::fpl;
use crate::par;

/// A noncrossing perfect matching on the points `1..=2n`, arranged on a
/// circle. Points are stored 0-based internally; the public interface is
/// 1-based.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LinkPattern {
    partners: Vec<usize>,
}

impl LinkPattern {
    /// Builds a pattern from 1-based pairs, validating that they form a
    /// noncrossing perfect matching on `2n` points.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let points = 2 * n;
        if pairs.len() != n {
            return Err(Error::InvalidLinkPattern(format!(
                "{} pairs given, expected {}",
                pairs.len(),
                n
            )));
        }
        let mut partners = vec![usize::MAX; points];
        for &(a, b) in pairs {
            if a == b || a == 0 || b == 0 || a > points || b > points {
                return Err(Error::InvalidLinkPattern(format!("bad pair ({a}, {b})")));
            }
            if partners[a - 1] != usize::MAX || partners[b - 1] != usize::MAX {
                return Err(Error::InvalidLinkPattern(format!(
                    "point {} or {} matched twice",
                    a, b
                )));
            }
            partners[a - 1] = b - 1;
            partners[b - 1] = a - 1;
        }
        let pattern = LinkPattern { partners };
        pattern.check_noncrossing()?;
        Ok(pattern)
    }

    fn from_partners(partners: Vec<usize>) -> Self {
        let pattern = LinkPattern { partners };
        debug_assert!(pattern.check_noncrossing().is_ok());
        pattern
    }

    fn check_noncrossing(&self) -> Result<()> {
        let mut stack = Vec::new();
        for i in 0..self.partners.len() {
            let j = self.partners[i];
            if j > i {
                stack.push(i);
            } else {
                match stack.pop() {
                    Some(open) if open == j => {}
                    _ => {
                        return Err(Error::InvalidLinkPattern(format!(
                            "pairs ({}, {}) cross",
                            j + 1,
                            i + 1
                        )))
                    }
                }
            }
        }
        Ok(())
    }

    /// Number of matched pairs `n`.
    pub fn half_size(&self) -> usize {
        self.partners.len() / 2
    }

    /// Number of points `2n`.
    pub fn points(&self) -> usize {
        self.partners.len()
    }

    /// Partner of the 1-based point `i`.
    pub fn partner(&self, i: usize) -> usize {
        self.partners[i - 1] + 1
    }

    /// Sorted 1-based pair list, the canonical form used for ordering.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.half_size());
        for i in 0..self.partners.len() {
            if self.partners[i] > i {
                out.push((i + 1, self.partners[i] + 1));
            }
        }
        out
    }
}

/// `Cat(n) = C(2n, n) / (n + 1)`.
pub fn catalan(n: usize) -> u64 {
    let mut c = 1u64;
    for i in 0..n as u64 {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c
}

/// All noncrossing matchings on `2n` points, sorted lexicographically by
/// their sorted pair lists. [`LinkVector`] coordinates bind to this order.
///
/// Noncrossing matchings relative to the cyclic order `1..2n` are the same
/// as linear ones, and those correspond to balanced parenthesis strings:
/// each closing point pairs with the most recent open point.
pub fn enumerate_link_patterns(n: usize) -> Vec<LinkPattern> {
    fn dyck(opens_left: usize, unclosed: usize, word: &mut Vec<bool>, out: &mut Vec<Vec<bool>>) {
        if opens_left == 0 && unclosed == 0 {
            out.push(word.clone());
            return;
        }
        if opens_left > 0 {
            word.push(true);
            dyck(opens_left - 1, unclosed + 1, word, out);
            word.pop();
        }
        if unclosed > 0 {
            word.push(false);
            dyck(opens_left, unclosed - 1, word, out);
            word.pop();
        }
    }

    let mut words = Vec::new();
    dyck(n, 0, &mut Vec::with_capacity(2 * n), &mut words);

    let mut patterns: Vec<LinkPattern> = words
        .into_iter()
        .map(|word| {
            let mut partners = vec![usize::MAX; 2 * n];
            let mut stack = Vec::new();
            for (i, open) in word.into_iter().enumerate() {
                if open {
                    stack.push(i);
                } else {
                    let j = stack.pop().expect("balanced word");
                    partners[i] = j;
                    partners[j] = i;
                }
            }
            LinkPattern::from_partners(partners)
        })
        .collect();
    patterns.sort_by_key(|p| p.pairs());
    debug_assert_eq!(patterns.len() as u64, catalan(n));
    patterns
}

/// Rotation one step counterclockwise: every point label decreases by one,
/// cyclically. An order-2n bijection on link patterns.
pub fn rotate(pattern: &LinkPattern) -> LinkPattern {
    let m = pattern.points();
    let mut partners = vec![usize::MAX; m];
    for i in 0..m {
        partners[(i + m - 1) % m] = (pattern.partners[i] + m - 1) % m;
    }
    LinkPattern::from_partners(partners)
}

/// Inverse rotation: every point label increases by one, cyclically.
pub fn rotate_inverse(pattern: &LinkPattern) -> LinkPattern {
    let m = pattern.points();
    let mut partners = vec![usize::MAX; m];
    for i in 0..m {
        partners[(i + 1) % m] = (pattern.partners[i] + 1) % m;
    }
    LinkPattern::from_partners(partners)
}

/// The Temperley-Lieb operator `e_j` for `1 <= j <= 2n`, indices cyclic so
/// `e_{2n}` joins `2n` and `1`. Acts as the identity when `j` and `j + 1`
/// are already connected; otherwise connects them and matches their former
/// partners with each other.
pub fn tl_apply(j: usize, pattern: &LinkPattern) -> LinkPattern {
    let m = pattern.points();
    assert!((1..=m).contains(&j), "operator index {j} out of 1..={m}");
    let a = j - 1;
    let b = j % m;
    if pattern.partners[a] == b {
        return pattern.clone();
    }
    let pa = pattern.partners[a];
    let pb = pattern.partners[b];
    let mut partners = pattern.partners.clone();
    partners[a] = b;
    partners[b] = a;
    partners[pa] = pb;
    partners[pb] = pa;
    LinkPattern::from_partners(partners)
}

/// The canonical pattern basis for half-size `n`, with index lookup.
pub struct LinkBasis {
    n: usize,
    patterns: Vec<LinkPattern>,
    index: HashMap<Vec<usize>, usize>,
}

impl LinkBasis {
    pub fn new(n: usize) -> Self {
        let patterns = enumerate_link_patterns(n);
        let index = patterns
            .iter()
            .enumerate()
            .map(|(i, p)| (p.partners.clone(), i))
            .collect();
        LinkBasis { n, patterns, index }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn patterns(&self) -> &[LinkPattern] {
        &self.patterns
    }

    pub fn pattern(&self, i: usize) -> &LinkPattern {
        &self.patterns[i]
    }

    pub fn index_of(&self, pattern: &LinkPattern) -> Option<usize> {
        self.index.get(&pattern.partners).copied()
    }
}

/// An exact-rational vector indexed by the canonical link-pattern order.
#[derive(Clone, PartialEq, Debug)]
pub struct LinkVector {
    n: usize,
    coords: Vec<BigRational>,
}

impl LinkVector {
    pub fn new(n: usize, coords: Vec<BigRational>) -> Result<Self> {
        let expected = catalan(n) as usize;
        if coords.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                got: coords.len(),
            });
        }
        Ok(LinkVector { n, coords })
    }

    pub fn zero(n: usize) -> Self {
        LinkVector {
            n,
            coords: vec![BigRational::zero(); catalan(n) as usize],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &BigRational {
        &self.coords[i]
    }

    pub fn sum(&self) -> BigRational {
        self.coords.iter().fold(BigRational::zero(), |a, c| a + c)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, factor: &BigRational) -> LinkVector {
        LinkVector {
            n: self.n,
            coords: self.coords.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn sub(&self, other: &LinkVector) -> Result<LinkVector> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        Ok(LinkVector {
            n: self.n,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }
}

fn big(v: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// The FPL distribution vector: coordinate at a pattern is the number of
/// order-n fully-packed loops whose link pattern equals it. Coordinates sum
/// to the number of n x n ASMs.
pub fn s_vector(n: usize) -> Result<LinkVector> {
    let basis = LinkBasis::new(n);
    let ap = AsmPoset::new(n)?;
    let ideals = ap.poset().ideals();
    let indices = par::map_slice(&ideals, |&ideal| {
        let h = ap
            .ideal_to_height(ideal)
            .expect("enumerated ideals are valid");
        let pattern =
            fpl::link_pattern(&fpl::height_to_fpl(&h)).expect("constructed grids are valid");
        basis
            .index_of(&pattern)
            .expect("every FPL link pattern is in the basis")
    });
    let mut counts = vec![0u64; basis.len()];
    for idx in indices {
        counts[idx] += 1;
    }
    LinkVector::new(n, counts.into_iter().map(big).collect())
}

/// Applies the Hamiltonian, the sum of all `2n` Temperley-Lieb operators,
/// as a pushforward: coordinate `pi` of the result accumulates `v(pi')`
/// over all `j` and `pi'` with `e_j(pi') = pi`.
pub fn hamiltonian_apply(v: &LinkVector) -> LinkVector {
    let basis = LinkBasis::new(v.n());
    hamiltonian_apply_on(&basis, v)
}

fn hamiltonian_apply_on(basis: &LinkBasis, v: &LinkVector) -> LinkVector {
    let mut coords = vec![BigRational::zero(); basis.len()];
    for j in 1..=2 * basis.n() {
        for (src, pattern) in basis.patterns().iter().enumerate() {
            let image = tl_apply(j, pattern);
            let dst = basis.index_of(&image).expect("TL operators preserve the basis");
            coords[dst] = &coords[dst] + v.coord(src);
        }
    }
    LinkVector { n: v.n(), coords }
}

/// Result of the Razumov-Stroganov identity check at order n.
#[derive(Clone, Debug)]
pub struct RsReport {
    pub n: usize,
    /// `(H - 2n) s`, exactly.
    pub residual: LinkVector,
    pub identity_holds: bool,
    /// Per pattern: the Hamiltonian image coordinate and `2n` times the FPL
    /// count, which the identity asserts to be equal.
    pub per_pattern: Vec<(BigRational, BigRational)>,
}

/// Verifies `H s = 2n s` exactly, where `s` counts FPLs by link pattern and
/// `H` sums all `2n` Temperley-Lieb operators.
pub fn rs_check(n: usize) -> Result<RsReport> {
    let basis = LinkBasis::new(n);
    let s = s_vector(n)?;
    let image = hamiltonian_apply_on(&basis, &s);
    let scaled = s.scale(&big(2 * n as u64));
    let residual = image.sub(&scaled)?;
    let per_pattern = image
        .coords()
        .iter()
        .cloned()
        .zip(scaled.coords().iter().cloned())
        .collect();
    Ok(RsReport {
        n,
        identity_holds: residual.is_zero(),
        residual,
        per_pattern,
    })
}
