//! Serde mirror types for the stable JSON formats used by the CLI and test
//! fixtures. Rationals travel as `"num/den"` strings so reports stay exact.

use std::str::FromStr;

use num::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fpl::FplGrid;
use crate::homomesy::HomomesyReport;
use crate::poset::Poset;
use crate::tl::{LinkBasis, LinkVector};
use crate::toggles::Orbit;

/// Poset file format: `{"n": m, "covers": [[lo, hi], ...], "labels": ...}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PosetJson {
    pub n: usize,
    pub covers: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<[i64; 3]>>,
}

impl PosetJson {
    pub fn from_poset(poset: &Poset) -> Self {
        PosetJson {
            n: poset.len(),
            covers: poset.covers().to_vec(),
            labels: poset.labels().map(|l| l.to_vec()),
        }
    }

    pub fn build(&self) -> Result<Poset> {
        let poset = Poset::from_covers(self.n, &self.covers)?;
        match &self.labels {
            Some(labels) => poset.with_labels(labels.clone()),
            None => Ok(poset),
        }
    }
}

/// FPL file format: edge indicators as 0/1 matrices.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FplJson {
    pub n: usize,
    pub h_edges: Vec<Vec<u8>>,
    pub v_edges: Vec<Vec<u8>>,
}

impl FplJson {
    pub fn from_grid(grid: &FplGrid) -> Self {
        let to_bits = |rows: Vec<Vec<bool>>| {
            rows.into_iter()
                .map(|r| r.into_iter().map(u8::from).collect())
                .collect()
        };
        FplJson {
            n: grid.n(),
            h_edges: to_bits(grid.h_edge_rows()),
            v_edges: to_bits(grid.v_edge_rows()),
        }
    }

    pub fn build(&self) -> Result<FplGrid> {
        let to_bools = |rows: &[Vec<u8>]| -> Vec<Vec<bool>> {
            rows.iter()
                .map(|r| r.iter().map(|&b| b != 0).collect())
                .collect()
        };
        FplGrid::new(self.n, to_bools(&self.h_edges), to_bools(&self.v_edges))
    }
}

/// A rational rendered as `"num/den"` (or a bare integer when whole).
pub fn rational_string(r: &BigRational) -> String {
    r.to_string()
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    BigRational::from_str(s).map_err(|e| Error::ProbabilityOutOfRange(format!("{s}: {e}")))
}

/// Link vector file format, carrying the pattern order it is indexed by.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LinkVectorJson {
    pub n: usize,
    pub order: Vec<Vec<(usize, usize)>>,
    pub coords: Vec<String>,
}

impl LinkVectorJson {
    pub fn from_vector(v: &LinkVector) -> Self {
        let basis = LinkBasis::new(v.n());
        LinkVectorJson {
            n: v.n(),
            order: basis.patterns().iter().map(|p| p.pairs()).collect(),
            coords: v.coords().iter().map(rational_string).collect(),
        }
    }

    pub fn build(&self) -> Result<LinkVector> {
        let coords = self
            .coords
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()?;
        LinkVector::new(self.n, coords)
    }
}

/// An order ideal of the ASM poset, written by element labels.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IdealJson {
    pub n: usize,
    pub elements: Vec<[i64; 3]>,
}

impl IdealJson {
    pub fn from_ideal(ap: &crate::asm::AsmPoset, ideal: crate::poset::OrderIdeal) -> Self {
        IdealJson {
            n: ap.n(),
            elements: ideal.iter().map(|p| ap.label(p)).collect(),
        }
    }

    pub fn build(&self, ap: &crate::asm::AsmPoset) -> Result<crate::poset::OrderIdeal> {
        let mut mask = 0u64;
        for &label in &self.elements {
            let idx = ap.index_of(label).ok_or(Error::ElementOutOfRange {
                index: usize::MAX,
                size: ap.element_count(),
            })?;
            mask |= 1 << idx;
        }
        ap.poset().ideal_from_mask(mask)
    }
}

/// Orbit report format: each orbit as the list of ideal bit masks.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrbitsJson {
    pub action: String,
    pub orbits: Vec<Vec<u64>>,
}

impl OrbitsJson {
    pub fn from_orbits(action: &str, orbits: &[Orbit]) -> Self {
        OrbitsJson {
            action: action.to_string(),
            orbits: orbits
                .iter()
                .map(|o| o.iter().map(|i| i.mask()).collect())
                .collect(),
        }
    }
}

/// Homomesy report format.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HomomesyJson {
    pub statistic: String,
    pub action: String,
    pub orbit_averages: Vec<(String, usize)>,
    pub homomesic: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<(usize, usize)>,
}

impl HomomesyJson {
    pub fn from_report(report: &HomomesyReport) -> Self {
        HomomesyJson {
            statistic: report.statistic.clone(),
            action: report.action.clone(),
            orbit_averages: report
                .orbit_averages
                .iter()
                .map(|(avg, len)| (rational_string(avg), *len))
                .collect(),
            homomesic: report.homomesic,
            c: report.constant.as_ref().map(rational_string),
            witness: report.witness,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asm::{asm_to_height, AsmMatrix};
    use crate::fpl::height_to_fpl;
    use crate::tl::s_vector;

    #[test]
    fn poset_round_trip() {
        let poset = crate::poset::chain_product(2, 3).unwrap();
        let json = PosetJson::from_poset(&poset);
        let text = serde_json::to_string(&json).unwrap();
        let parsed: PosetJson = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed.build().unwrap(), poset);
    }

    #[test]
    fn fpl_round_trip() {
        let grid = height_to_fpl(&asm_to_height(&AsmMatrix::identity(3)));
        let json = FplJson::from_grid(&grid);
        let text = serde_json::to_string(&json).unwrap();
        let parsed: FplJson = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed.build().unwrap(), grid);
    }

    #[test]
    fn link_vector_round_trip() {
        let v = s_vector(3).unwrap();
        let json = LinkVectorJson::from_vector(&v);
        assert_eq!(json.order.len(), 5);
        let rebuilt = json.build().unwrap();
        assert_eq!(rebuilt, v);
    }

    #[test]
    fn rational_strings() {
        let half = parse_rational("1/2").unwrap();
        assert_eq!(rational_string(&half), "1/2");
        let three = parse_rational("3").unwrap();
        assert_eq!(rational_string(&three), "3");
        assert!(parse_rational("x").is_err());
    }
}
