//! Poset sources for the CLI: built-in families by name, or a JSON file.
//!
//! Family grammar: `asm:N`, `chainproduct:A,B`, `counterexample6`,
//! `random:M` (requires `--seed`). Anything else is treated as a path to a
//! poset JSON file.

use anyhow::{anyhow, bail, Context};

use poset_dynamics::io::PosetJson;
use poset_dynamics::poset::{chain_product, promotion_counterexample, Poset};
use poset_dynamics::random::{random_poset, seeded_rng};

pub struct ResolvedPoset {
    pub poset: Poset,
    pub description: String,
}

/// Desk-scale bound: `POSET_DYNAMICS_MAX_N` overrides the defaults of 5 for
/// FPL-level commands and 6 for pure ideal enumeration.
pub fn desk_cap(fpl_level: bool) -> usize {
    std::env::var("POSET_DYNAMICS_MAX_N")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(if fpl_level { 5 } else { 6 })
}

pub fn check_cap(n: usize, fpl_level: bool) -> anyhow::Result<()> {
    let cap = desk_cap(fpl_level);
    if n > cap {
        bail!(
            "order {n} exceeds the desk-scale bound {cap} (raise POSET_DYNAMICS_MAX_N to override)"
        );
    }
    Ok(())
}

pub fn resolve(source: &str, seed: Option<u64>) -> anyhow::Result<ResolvedPoset> {
    if let Some(rest) = source.strip_prefix("asm:") {
        let n: usize = rest.parse().with_context(|| format!("bad order in {source}"))?;
        check_cap(n, false)?;
        let ap = poset_dynamics::asm::AsmPoset::new(n)?;
        return Ok(ResolvedPoset {
            poset: ap.poset().clone(),
            description: format!("asm poset of order {n}"),
        });
    }
    if let Some(rest) = source.strip_prefix("chainproduct:") {
        let parts: Vec<&str> = rest.split(',').collect();
        if parts.len() != 2 {
            bail!("chainproduct takes two sizes, e.g. chainproduct:2,3");
        }
        let a: usize = parts[0].parse().context("bad chain size")?;
        let b: usize = parts[1].parse().context("bad chain size")?;
        return Ok(ResolvedPoset {
            poset: chain_product(a, b)?,
            description: format!("product of chains [{a}] x [{b}]"),
        });
    }
    if source == "counterexample6" {
        return Ok(ResolvedPoset {
            poset: promotion_counterexample(),
            description: "three-element poset a, b < c".to_string(),
        });
    }
    if let Some(rest) = source.strip_prefix("random:") {
        let m: usize = rest.parse().context("bad random poset size")?;
        let seed = seed.ok_or_else(|| anyhow!("random posets require an explicit --seed"))?;
        let mut rng = seeded_rng(seed);
        return Ok(ResolvedPoset {
            poset: random_poset(&mut rng, m),
            description: format!("random poset on {m} elements, seed {seed}"),
        });
    }
    let text = std::fs::read_to_string(source)
        .with_context(|| format!("reading poset file {source}"))?;
    let json: PosetJson = serde_json::from_str(&text).context("parsing poset JSON")?;
    Ok(ResolvedPoset {
        poset: json.build()?,
        description: format!("poset from {source}"),
    })
}
