//! Integer statistics on order ideals, exact orbit averages, and homomesy
//! verdicts. All averages are exact rationals and every verdict is an
//! equality test; no floating point is involved anywhere.

use std::sync::Arc;

use num::{BigInt, BigRational, Zero};

use crate::error::{Error, Result};
use crate::par;
use crate::poset::{OrderIdeal, Poset};
use crate::toggles::{orbit_decomposition, Action, Orbit};

/// A named integer statistic on order ideals.
#[derive(Clone)]
pub struct Statistic {
    name: String,
    eval: Arc<dyn Fn(OrderIdeal) -> i64 + Send + Sync>,
}

impl Statistic {
    pub fn new<F>(name: impl Into<String>, eval: F) -> Self
    where
        F: Fn(OrderIdeal) -> i64 + Send + Sync + 'static,
    {
        Statistic {
            name: name.into(),
            eval: Arc::new(eval),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, ideal: OrderIdeal) -> i64 {
        (self.eval)(ideal)
    }
}

impl std::fmt::Debug for Statistic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Statistic({})", self.name)
    }
}

/// `|I|`, the number of elements in the ideal.
pub fn ideal_size() -> Statistic {
    Statistic::new("ideal-size", |ideal| ideal.len() as i64)
}

/// The size of the antichain of maximal elements of the ideal.
pub fn antichain_size(poset: &Poset) -> Statistic {
    let up_covers: Vec<u64> = (0..poset.len()).map(|p| poset.up_covers(p)).collect();
    Statistic::new("antichain-size", move |ideal| {
        let mask = ideal.mask();
        ideal
            .iter()
            .filter(|&p| up_covers[p] & mask == 0)
            .count() as i64
    })
}

/// The toggleability statistic at `p`: `+1` when `p` can be toggled into the
/// ideal, `-1` when it can be toggled out, `0` otherwise.
pub fn toggleability(poset: &Poset, p: usize) -> Result<Statistic> {
    if p >= poset.len() {
        return Err(Error::ElementOutOfRange {
            index: p,
            size: poset.len(),
        });
    }
    let bit = 1u64 << p;
    let down = poset.down_covers(p);
    let up = poset.up_covers(p);
    Ok(Statistic::new(format!("toggleability:{p}"), move |ideal| {
        let mask = ideal.mask();
        if mask & bit == 0 {
            if down & !mask == 0 {
                1
            } else {
                0
            }
        } else if up & mask == 0 {
            -1
        } else {
            0
        }
    }))
}

fn big(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// The exact mean of `statistic` over the orbit.
pub fn orbit_average(statistic: &Statistic, orbit: &Orbit) -> Result<BigRational> {
    if orbit.is_empty() {
        return Err(Error::EmptyOrbit);
    }
    let sum: i64 = orbit.iter().map(|&ideal| statistic.eval(ideal)).sum();
    Ok(big(sum) / big(orbit.len() as i64))
}

/// The outcome of a homomesy check for one (poset, action, statistic) triple.
#[derive(Clone, Debug, PartialEq)]
pub struct HomomesyReport {
    pub statistic: String,
    pub action: String,
    /// Exact per-orbit averages, paired with orbit sizes, in the canonical
    /// orbit order.
    pub orbit_averages: Vec<(BigRational, usize)>,
    /// Average of the statistic over all of `J(P)`.
    pub global_average: BigRational,
    pub homomesic: bool,
    /// The constant `c` when homomesic; equals the global average.
    pub constant: Option<BigRational>,
    /// Indices of two orbits with different averages when not homomesic.
    pub witness: Option<(usize, usize)>,
}

/// Decomposes `J(P)` into orbits of `action` and tests whether every orbit
/// average of `statistic` equals the same constant.
pub fn check_homomesy(poset: &Poset, action: &Action, statistic: &Statistic) -> Result<HomomesyReport> {
    let orbits = orbit_decomposition(poset, action)?;
    check_homomesy_on(&orbits, action, statistic)
}

/// Same verdict computed from an existing orbit decomposition.
pub fn check_homomesy_on(
    orbits: &[Orbit],
    action: &Action,
    statistic: &Statistic,
) -> Result<HomomesyReport> {
    let per_orbit: Vec<(i64, usize)> = par::map_slice(orbits, |orbit| {
        let sum: i64 = orbit.iter().map(|&ideal| statistic.eval(ideal)).sum();
        (sum, orbit.len())
    });

    let orbit_averages: Vec<(BigRational, usize)> = per_orbit
        .iter()
        .map(|&(sum, len)| (big(sum) / big(len as i64), len))
        .collect();

    let total_sum: i64 = per_orbit.iter().map(|&(s, _)| s).sum();
    let total_len: usize = per_orbit.iter().map(|&(_, l)| l).sum();
    if total_len == 0 {
        return Err(Error::EmptyOrbit);
    }
    let global_average = big(total_sum) / big(total_len as i64);

    let mut witness = None;
    for (i, (avg, _)) in orbit_averages.iter().enumerate() {
        if *avg != orbit_averages[0].0 {
            witness = Some((0, i));
            break;
        }
    }
    let homomesic = witness.is_none();

    Ok(HomomesyReport {
        statistic: statistic.name().to_string(),
        action: action.name(),
        constant: homomesic.then(|| global_average.clone()),
        orbit_averages,
        global_average,
        homomesic,
        witness,
    })
}

/// Sanity identity: the size-weighted sum of orbit averages equals the global
/// sum of the statistic.
pub fn weighted_averages_consistent(report: &HomomesyReport) -> bool {
    let weighted: BigRational = report
        .orbit_averages
        .iter()
        .map(|(avg, len)| avg * big(*len as i64))
        .fold(BigRational::zero(), |acc, x| acc + x);
    let total_len: usize = report.orbit_averages.iter().map(|&(_, l)| l).sum();
    weighted == report.global_average.clone() * big(total_len as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::promotion_counterexample;
    use crate::toggles::{orbit, ToggleWord};

    fn two_chain() -> Poset {
        Poset::from_covers(2, &[(0, 1)]).unwrap()
    }

    #[test]
    fn toggleability_examples() {
        let p = two_chain();
        let t_x = toggleability(&p, 0).unwrap();
        let t_y = toggleability(&p, 1).unwrap();
        assert_eq!(t_x.eval(OrderIdeal::EMPTY), 1);
        assert_eq!(t_x.eval(OrderIdeal::from_mask(0b01)), -1);
        assert_eq!(t_y.eval(OrderIdeal::from_mask(0b11)), -1);
        assert_eq!(t_x.eval(OrderIdeal::from_mask(0b11)), 0);
        assert!(toggleability(&p, 2).is_err());
    }

    #[test]
    fn size_statistics() {
        let p = two_chain();
        let size = ideal_size();
        let anti = antichain_size(&p);
        assert_eq!(size.eval(OrderIdeal::EMPTY), 0);
        assert_eq!(size.eval(OrderIdeal::from_mask(0b11)), 2);
        assert_eq!(anti.eval(OrderIdeal::from_mask(0b11)), 1);
        assert_eq!(anti.eval(OrderIdeal::EMPTY), 0);
    }

    #[test]
    fn orbit_average_examples() {
        let p = two_chain();
        let o = orbit(&p, &Action::Rowmotion, OrderIdeal::EMPTY).unwrap();
        let constant_one = Statistic::new("one", |_| 1);
        assert_eq!(orbit_average(&constant_one, &o).unwrap(), big(1));
        let t_x = toggleability(&p, 0).unwrap();
        assert_eq!(orbit_average(&t_x, &o).unwrap(), big(0));
        assert_eq!(orbit_average(&ideal_size(), &o).unwrap(), big(1));
    }

    #[test]
    fn toggleability_zero_mesic_under_rowmotion_and_gyration() {
        let p = promotion_counterexample();
        for action in [Action::Rowmotion, Action::Gyration] {
            for q in 0..p.len() {
                let stat = toggleability(&p, q).unwrap();
                let report = check_homomesy(&p, &action, &stat).unwrap();
                assert!(report.homomesic, "{} {:?}", q, action);
                assert_eq!(report.constant, Some(big(0)));
            }
        }
    }

    #[test]
    fn global_ideal_size_average_on_order_three() {
        // The seven ideals have sizes 0, 1, 1, 2, 3, 3, 4.
        let ap = crate::asm::AsmPoset::new(3).unwrap();
        let report = check_homomesy(ap.poset(), &Action::Rowmotion, &ideal_size()).unwrap();
        assert_eq!(report.global_average, big(2));
        assert!(weighted_averages_consistent(&report));
    }

    #[test]
    fn promotion_counterexample_not_homomesic() {
        let p = promotion_counterexample();
        let promotion = Action::Word(ToggleWord::new(vec![0, 2, 1]));
        let t_c = toggleability(&p, 2).unwrap();
        let report = check_homomesy(&p, &promotion, &t_c).unwrap();
        assert!(!report.homomesic);
        assert!(report.constant.is_none());
        assert!(report.witness.is_some());
        // Orbit averages are 1/2 (orbit {{}, {a,b}}) and -1/3.
        let mut avgs: Vec<BigRational> =
            report.orbit_averages.iter().map(|(a, _)| a.clone()).collect();
        avgs.sort();
        assert_eq!(avgs, vec![big(-1) / big(3), big(1) / big(2)]);
        assert!(weighted_averages_consistent(&report));
    }
}
