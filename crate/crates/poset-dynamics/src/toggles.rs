//! Toggles, toggle words, rowmotion, gyration, and orbit machinery.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::par;
use crate::poset::{BitIter, OrderIdeal, Poset, RankFunction};

/// A sequence of element indices, applied left to right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToggleWord(Vec<usize>);

impl ToggleWord {
    pub fn new(word: Vec<usize>) -> Self {
        ToggleWord(word)
    }

    pub fn elements(&self) -> &[usize] {
        &self.0
    }

    pub fn reversed(&self) -> ToggleWord {
        let mut w = self.0.clone();
        w.reverse();
        ToggleWord(w)
    }

    pub fn validate_for(&self, poset: &Poset) -> Result<()> {
        for &p in &self.0 {
            if p >= poset.len() {
                return Err(Error::ElementOutOfRange {
                    index: p,
                    size: poset.len(),
                });
            }
        }
        Ok(())
    }
}

impl From<Vec<usize>> for ToggleWord {
    fn from(word: Vec<usize>) -> Self {
        ToggleWord(word)
    }
}

/// The toggle `t_p`: adds `p` when it is minimal in the complement, removes
/// it when it is maximal in the ideal, and otherwise leaves the ideal alone.
/// Total and an involution. `ideal` must be a valid ideal of `poset`.
pub fn toggle(poset: &Poset, p: usize, ideal: OrderIdeal) -> OrderIdeal {
    debug_assert!(p < poset.len());
    let mask = ideal.mask();
    let bit = 1u64 << p;
    if mask & bit == 0 {
        if poset.down_covers(p) & !mask == 0 {
            return OrderIdeal::from_mask(mask | bit);
        }
    } else if poset.up_covers(p) & mask == 0 {
        return OrderIdeal::from_mask(mask & !bit);
    }
    ideal
}

/// Left-to-right composition of toggles.
pub fn apply_word(poset: &Poset, word: &ToggleWord, ideal: OrderIdeal) -> Result<OrderIdeal> {
    word.validate_for(poset)?;
    Ok(word
        .elements()
        .iter()
        .fold(ideal, |acc, &p| toggle(poset, p, acc)))
}

/// Rowmotion by its antichain definition: the ideal generated by the minimal
/// elements of the complement.
pub fn rowmotion_antichain(poset: &Poset, ideal: OrderIdeal) -> OrderIdeal {
    let antichain = poset.complement_min_mask(ideal.mask());
    OrderIdeal::from_mask(poset.closure_mask(antichain))
}

/// The word realizing rowmotion: the reverse of a linear extension
/// (top of the poset first).
pub fn rowmotion_word(poset: &Poset) -> ToggleWord {
    let mut ext = poset.linear_extension();
    ext.reverse();
    ToggleWord(ext)
}

/// Rowmotion by toggling along a reversed linear extension. Agrees with
/// [`rowmotion_antichain`] on every ideal.
pub fn rowmotion_toggles(poset: &Poset, ideal: OrderIdeal) -> OrderIdeal {
    rowmotion_word(poset)
        .elements()
        .iter()
        .fold(ideal, |acc, &p| toggle(poset, p, acc))
}

/// The word realizing gyration: all even-rank elements, then all odd-rank
/// elements, each class in increasing index order. Within a parity class
/// toggles commute, so the class order does not affect the result.
pub fn gyration_word(ranks: &RankFunction) -> ToggleWord {
    let mut word = ranks.parity_class(0);
    word.extend(ranks.parity_class(1));
    ToggleWord(word)
}

/// Gyration: toggle the even ranks, then the odd ranks.
pub fn gyration(poset: &Poset, ranks: &RankFunction, ideal: OrderIdeal) -> OrderIdeal {
    gyration_word(ranks)
        .elements()
        .iter()
        .fold(ideal, |acc, &p| toggle(poset, p, acc))
}

/// The inverse of gyration: the gyration word reversed, so odd ranks first.
pub fn gyration_inverse(poset: &Poset, ranks: &RankFunction, ideal: OrderIdeal) -> OrderIdeal {
    gyration_word(ranks)
        .reversed()
        .elements()
        .iter()
        .fold(ideal, |acc, &p| toggle(poset, p, acc))
}

/// A named bijective action on `J(P)`, so orbit and homomesy machinery can
/// treat rowmotion, gyration, and arbitrary toggle words uniformly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Action {
    Rowmotion,
    Gyration,
    Word(ToggleWord),
}

impl Action {
    pub fn name(&self) -> String {
        match self {
            Action::Rowmotion => "rowmotion".into(),
            Action::Gyration => "gyration".into(),
            Action::Word(w) => {
                let parts: Vec<String> = w.elements().iter().map(|p| p.to_string()).collect();
                format!("word:{}", parts.join(","))
            }
        }
    }

    /// Resolves the action against a poset. Gyration requires the poset to
    /// be ranked; words must index valid elements.
    pub fn prepare<'a>(&self, poset: &'a Poset) -> Result<PreparedAction<'a>> {
        let kind = match self {
            Action::Rowmotion => Prepared::Antichain,
            Action::Gyration => {
                let ranks = poset.rank_function()?;
                Prepared::Word(gyration_word(&ranks).0)
            }
            Action::Word(w) => {
                w.validate_for(poset)?;
                Prepared::Word(w.0.clone())
            }
        };
        Ok(PreparedAction { poset, kind })
    }
}

enum Prepared {
    Antichain,
    Word(Vec<usize>),
}

/// An action bound to a poset, ready to step ideals.
pub struct PreparedAction<'a> {
    poset: &'a Poset,
    kind: Prepared,
}

impl PreparedAction<'_> {
    pub fn step(&self, ideal: OrderIdeal) -> OrderIdeal {
        match &self.kind {
            Prepared::Antichain => rowmotion_antichain(self.poset, ideal),
            Prepared::Word(word) => word
                .iter()
                .fold(ideal, |acc, &p| toggle(self.poset, p, acc)),
        }
    }
}

/// The cycle of a bijective action through one ideal, stored starting from
/// the lexicographically least member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    entries: Vec<OrderIdeal>,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[OrderIdeal] {
        &self.entries
    }

    pub fn iter(&self) -> std::slice::Iter<'_, OrderIdeal> {
        self.entries.iter()
    }

    pub fn contains(&self, ideal: OrderIdeal) -> bool {
        self.entries.contains(&ideal)
    }
}

/// The orbit of `start` under `action`, rotated to begin at its
/// lexicographically least ideal.
pub fn orbit(poset: &Poset, action: &Action, start: OrderIdeal) -> Result<Orbit> {
    let start = poset.ideal_from_mask(start.mask())?;
    let prepared = action.prepare(poset)?;
    let bound = poset.ideals().len();
    let mut entries = vec![start];
    let mut cur = start;
    loop {
        cur = prepared.step(cur);
        if cur == start {
            break;
        }
        entries.push(cur);
        if entries.len() > bound {
            return Err(Error::ActionNotBijective { bound });
        }
    }
    let least = (0..entries.len())
        .min_by_key(|&i| poset.lex_key(entries[i]))
        .expect("orbit is nonempty");
    entries.rotate_left(least);
    Ok(Orbit { entries })
}

/// Partitions all of `J(P)` into orbits of `action`. Orbits are listed by
/// their least member, in the canonical ideal order; each orbit starts at
/// that least member.
pub fn orbit_decomposition(poset: &Poset, action: &Action) -> Result<Vec<Orbit>> {
    let prepared = action.prepare(poset)?;
    let ideals = poset.ideals();
    let index: HashMap<u64, usize> = ideals
        .iter()
        .enumerate()
        .map(|(i, ideal)| (ideal.mask(), i))
        .collect();
    let images = par::map_slice(&ideals, |&ideal| {
        let image = prepared.step(ideal);
        *index
            .get(&image.mask())
            .expect("toggle actions map ideals to ideals")
    });

    let mut visited = vec![false; ideals.len()];
    let mut orbits = Vec::new();
    for seed in 0..ideals.len() {
        if visited[seed] {
            continue;
        }
        let mut entries = Vec::new();
        let mut cur = seed;
        while !visited[cur] {
            visited[cur] = true;
            entries.push(ideals[cur]);
            cur = images[cur];
        }
        if cur != seed {
            // The functional graph re-entered a previous cycle elsewhere,
            // which cannot happen for a bijection.
            return Err(Error::ActionNotBijective { bound: ideals.len() });
        }
        orbits.push(Orbit { entries });
    }
    Ok(orbits)
}

/// True when the two decompositions have the same multiset of orbit sizes.
pub fn orbit_size_multisets_equal(a: &[Orbit], b: &[Orbit]) -> bool {
    let mut sa: Vec<usize> = a.iter().map(Orbit::len).collect();
    let mut sb: Vec<usize> = b.iter().map(Orbit::len).collect();
    sa.sort_unstable();
    sb.sort_unstable();
    sa == sb
}

/// Elements `p` with `toggle(p, ideal) != ideal`, as a mask.
pub fn toggleable_mask(poset: &Poset, ideal: OrderIdeal) -> u64 {
    let mask = ideal.mask();
    let mut out = 0u64;
    for p in BitIter(poset.full_mask()) {
        let bit = 1u64 << p;
        let toggleable = if mask & bit == 0 {
            poset.down_covers(p) & !mask == 0
        } else {
            poset.up_covers(p) & mask == 0
        };
        if toggleable {
            out |= bit;
        }
    }
    out
}
