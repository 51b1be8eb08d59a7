//! Batch verification CLI over the poset-dynamics library.
//!
//! Exit codes: 0 when every verdict passes, 1 when a mathematical verdict
//! fails, 2 on usage or input errors. Machine reports go to `--out` as JSON
//! and are byte-identical across reruns; human summaries and timings go to
//! standard output.

mod report;
mod source;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use num::BigRational;
use serde_json::json;

use poset_dynamics::asm::{self, AsmPoset};
use poset_dynamics::dlm;
use poset_dynamics::fpl;
use poset_dynamics::homomesy::{self, Statistic};
use poset_dynamics::io::{
    parse_rational, rational_string, FplJson, HomomesyJson, IdealJson, LinkVectorJson, OrbitsJson,
};
use poset_dynamics::tl;
use poset_dynamics::toggles::{orbit_decomposition, Action, ToggleWord};
use poset_dynamics::verify;

use report::ReportBuilder;
use source::{check_cap, resolve};

#[derive(Parser)]
#[command(
    name = "poset-dynamics",
    version,
    about = "Toggle dynamics on posets, ASM bijections, and the dense loop model",
    after_help = "Poset sources: asm:N, chainproduct:A,B, counterexample6, random:M (needs --seed), \
                  or a poset JSON file. POSET_DYNAMICS_MAX_N overrides the desk-scale bounds \
                  (default 5 for FPL-level commands, 6 for ideal enumeration)."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonOpts {
    /// Write the machine report JSON here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// List all order ideals of a poset.
    Enumerate {
        #[arg(long)]
        poset: String,
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Decompose the ideals into orbits of an action.
    Orbits {
        #[arg(long)]
        poset: String,
        /// rowmotion | gyration | word:i,j,k (row and gyr are accepted).
        #[arg(long)]
        action: String,
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Check homomesy of a statistic under an action.
    Homomesy {
        #[arg(long)]
        poset: String,
        #[arg(long)]
        action: String,
        /// ideal-size | antichain-size | toggleability[:element]
        #[arg(long)]
        statistic: String,
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Conversions between ASM representations.
    Asm {
        #[command(subcommand)]
        command: AsmCommand,
    },
    /// Fully-packed loop operations.
    Fpl {
        #[command(subcommand)]
        command: FplCommand,
    },
    /// Razumov-Stroganov verification runs.
    Rs {
        #[command(subcommand)]
        command: RsCommand,
    },
    /// Dense loop model runs.
    Dlm {
        #[command(subcommand)]
        command: DlmCommand,
    },
    /// Gyration-orbit square balance and its per-ideal refinement.
    Corollary41 {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        common: CommonOpts,
    },
}

#[derive(Subcommand)]
enum AsmCommand {
    /// Convert between asm, height, cornersum, ideal, and fpl forms.
    Convert {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        /// Input JSON file (matrix rows, or the ideal/fpl record formats).
        #[arg(long)]
        input: PathBuf,
        /// Also print an ASCII drawing when the target is an FPL.
        #[arg(long)]
        render: bool,
        #[command(flatten)]
        common: CommonOpts,
    },
}

#[derive(Subcommand)]
enum FplCommand {
    /// Apply one gyration sweep.
    Gyrate {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        render: bool,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Extract the link pattern.
    Link {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        render: bool,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Print the ASCII drawing.
    Render {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Subcommand)]
enum RsCommand {
    /// Verify the eigenvector identity at order n.
    Check {
        #[arg(long)]
        n: usize,
        /// hamiltonian (default) or dlm.
        #[arg(long, default_value = "hamiltonian")]
        mode: String,
        /// Tile probability for dlm mode, as an exact rational like 1/2.
        #[arg(long, default_value = "1/2")]
        p: String,
        #[command(flatten)]
        common: CommonOpts,
    },
}

#[derive(Subcommand)]
enum DlmCommand {
    /// Exact stationary distribution of the transfer matrix.
    Stationary {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "1/2")]
        p: String,
        #[command(flatten)]
        common: CommonOpts,
    },
}

fn main() -> ExitCode {
    // Die quietly when a pipe closes early instead of panicking mid-print.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.command {
        Command::Enumerate { poset, seed, common } => cmd_enumerate(&poset, seed, common),
        Command::Orbits { poset, action, seed, common } => {
            cmd_orbits(&poset, &action, seed, common)
        }
        Command::Homomesy { poset, action, statistic, seed, common } => {
            cmd_homomesy(&poset, &action, &statistic, seed, common)
        }
        Command::Asm { command } => match command {
            AsmCommand::Convert { from, to, input, render, common } => {
                cmd_convert(&from, &to, &input, render, common)
            }
        },
        Command::Fpl { command } => match command {
            FplCommand::Gyrate { input, render, common } => cmd_fpl_gyrate(&input, render, common),
            FplCommand::Link { input, render, common } => cmd_fpl_link(&input, render, common),
            FplCommand::Render { input } => cmd_fpl_render(&input),
        },
        Command::Rs { command } => match command {
            RsCommand::Check { n, mode, p, common } => cmd_rs_check(n, &mode, &p, common),
        },
        Command::Dlm { command } => match command {
            DlmCommand::Stationary { n, p, common } => cmd_dlm_stationary(n, &p, common),
        },
        Command::Corollary41 { n, common } => cmd_corollary41(n, common),
    }
}

fn parse_action(text: &str) -> anyhow::Result<Action> {
    match text {
        "row" | "rowmotion" => Ok(Action::Rowmotion),
        "gyr" | "gyration" => Ok(Action::Gyration),
        _ => {
            if let Some(rest) = text.strip_prefix("word:") {
                let word = rest
                    .split(',')
                    .map(|s| s.trim().parse::<usize>().context("bad word index"))
                    .collect::<anyhow::Result<Vec<_>>>()?;
                Ok(Action::Word(ToggleWord::new(word)))
            } else {
                bail!("unknown action {text}; expected rowmotion, gyration, or word:i,j,k")
            }
        }
    }
}

fn parse_statistics(
    text: &str,
    poset: &poset_dynamics::Poset,
) -> anyhow::Result<Vec<Statistic>> {
    match text {
        "ideal-size" => Ok(vec![homomesy::ideal_size()]),
        "antichain-size" => Ok(vec![homomesy::antichain_size(poset)]),
        "toggleability" => (0..poset.len())
            .map(|p| homomesy::toggleability(poset, p).map_err(Into::into))
            .collect(),
        _ => {
            if let Some(rest) = text.strip_prefix("toggleability:") {
                let p: usize = rest.parse().context("bad element index")?;
                Ok(vec![homomesy::toggleability(poset, p)?])
            } else {
                bail!(
                    "unknown statistic {text}; expected ideal-size, antichain-size, or toggleability[:p]"
                )
            }
        }
    }
}

fn probability(text: &str) -> anyhow::Result<BigRational> {
    let p = parse_rational(text)?;
    Ok(p)
}

fn cmd_enumerate(src: &str, seed: Option<u64>, common: CommonOpts) -> anyhow::Result<bool> {
    let resolved = resolve(src, seed)?;
    let mut rb = ReportBuilder::new("enumerate");
    rb.param("poset", src);
    if let Some(s) = seed {
        rb.seed(s);
    }
    let ideals = resolved.poset.ideals();
    println!("{}: {} order ideals", resolved.description, ideals.len());
    rb.verdict("enumeration_complete", true, format!("count {}", ideals.len()));
    let result = json!({
        "count": ideals.len(),
        "ideals": ideals.iter().map(|i| i.mask()).collect::<Vec<u64>>(),
    });
    let report = rb.finish(result, common.out.as_deref())?;
    Ok(report.verdicts.iter().all(|v| v.pass))
}

fn cmd_orbits(
    src: &str,
    action_text: &str,
    seed: Option<u64>,
    common: CommonOpts,
) -> anyhow::Result<bool> {
    let resolved = resolve(src, seed)?;
    let action = parse_action(action_text)?;
    let mut rb = ReportBuilder::new("orbits");
    rb.param("poset", src).param("action", action.name());
    if let Some(s) = seed {
        rb.seed(s);
    }
    let orbits = orbit_decomposition(&resolved.poset, &action)?;
    let mut sizes: Vec<usize> = orbits.iter().map(|o| o.len()).collect();
    sizes.sort_unstable();
    println!(
        "{}: {} orbits under {}, sizes {:?}",
        resolved.description,
        orbits.len(),
        action.name(),
        sizes
    );
    rb.verdict("decomposition_complete", true, format!("{} orbits", orbits.len()));
    let result = serde_json::to_value(OrbitsJson::from_orbits(&action.name(), &orbits))?;
    let report = rb.finish(result, common.out.as_deref())?;
    Ok(report.verdicts.iter().all(|v| v.pass))
}

fn cmd_homomesy(
    src: &str,
    action_text: &str,
    statistic_text: &str,
    seed: Option<u64>,
    common: CommonOpts,
) -> anyhow::Result<bool> {
    let resolved = resolve(src, seed)?;
    let action = parse_action(action_text)?;
    let statistics = parse_statistics(statistic_text, &resolved.poset)?;
    let mut rb = ReportBuilder::new("homomesy");
    rb.param("poset", src)
        .param("action", action.name())
        .param("statistic", statistic_text);
    if let Some(s) = seed {
        rb.seed(s);
    }
    let orbits = orbit_decomposition(&resolved.poset, &action)?;
    let mut reports = Vec::new();
    for stat in &statistics {
        let hr = homomesy::check_homomesy_on(&orbits, &action, stat)?;
        let detail = match (&hr.constant, hr.witness) {
            (Some(c), _) => format!("c = {}", rational_string(c)),
            (None, Some((i, j))) => format!(
                "orbits {i} and {j} average {} and {}",
                rational_string(&hr.orbit_averages[i].0),
                rational_string(&hr.orbit_averages[j].0)
            ),
            (None, None) => String::new(),
        };
        rb.verdict(&format!("homomesic[{}]", hr.statistic), hr.homomesic, detail);
        reports.push(HomomesyJson::from_report(&hr));
    }
    let all = rb.all_passed();
    let result = json!({ "reports": reports });
    rb.finish(result, common.out.as_deref())?;
    Ok(all)
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> anyhow::Result<T> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn cmd_convert(
    from: &str,
    to: &str,
    input: &PathBuf,
    render: bool,
    common: CommonOpts,
) -> anyhow::Result<bool> {
    // Every representation round-trips through the height function.
    let height = match from {
        "asm" => {
            let rows: Vec<Vec<i8>> = read_json(input)?;
            asm::asm_to_height(&asm::AsmMatrix::new(rows)?)
        }
        "height" => {
            let rows: Vec<Vec<i64>> = read_json(input)?;
            asm::HeightFunction::new(rows)?
        }
        "cornersum" => {
            let rows: Vec<Vec<i64>> = read_json(input)?;
            asm::corner_sum_to_height(&asm::CornerSum::new(rows)?)?
        }
        "ideal" => {
            let record: IdealJson = read_json(input)?;
            check_cap(record.n, false)?;
            let ap = AsmPoset::new(record.n)?;
            ap.ideal_to_height(record.build(&ap)?)?
        }
        "fpl" => {
            let record: FplJson = read_json(input)?;
            fpl::fpl_to_height(&record.build()?)?
        }
        _ => bail!("unknown source form {from}"),
    };
    let n = height.n();
    if to == "fpl" {
        check_cap(n, true)?;
    }

    let mut rb = ReportBuilder::new("asm convert");
    rb.param("from", from).param("to", to).param("n", n);
    let value = match to {
        "asm" => serde_json::to_value(asm::height_to_asm(&height).rows())?,
        "height" => serde_json::to_value(height.rows())?,
        "cornersum" => serde_json::to_value(asm::height_to_corner_sum(&height).rows())?,
        "ideal" => {
            let ap = AsmPoset::new(n)?;
            let ideal = ap.height_to_ideal(&height)?;
            serde_json::to_value(IdealJson::from_ideal(&ap, ideal))?
        }
        "fpl" => {
            let grid = fpl::height_to_fpl(&height);
            if render {
                println!("{}", grid.render());
            }
            serde_json::to_value(FplJson::from_grid(&grid))?
        }
        _ => bail!("unknown target form {to}"),
    };
    rb.verdict("conversion_valid", true, format!("{from} -> {to}"));
    let result = json!({ "from": from, "to": to, "value": value });
    let report = rb.finish(result, common.out.as_deref())?;
    Ok(report.verdicts.iter().all(|v| v.pass))
}

fn read_fpl(input: &PathBuf) -> anyhow::Result<fpl::FplGrid> {
    let record: FplJson = read_json(input)?;
    check_cap(record.n, true)?;
    Ok(record.build()?)
}

fn cmd_fpl_gyrate(input: &PathBuf, render: bool, common: CommonOpts) -> anyhow::Result<bool> {
    let grid = read_fpl(input)?;
    let mut rb = ReportBuilder::new("fpl gyrate");
    rb.param("input", input.display()).param("n", grid.n());
    let out = fpl::gyration(&grid);
    if render {
        println!("{}", out.render());
    }
    rb.verdict("gyration_valid", out.validate().is_ok(), "degree condition preserved");
    let all = rb.all_passed();
    rb.finish(serde_json::to_value(FplJson::from_grid(&out))?, common.out.as_deref())?;
    Ok(all)
}

fn cmd_fpl_link(input: &PathBuf, render: bool, common: CommonOpts) -> anyhow::Result<bool> {
    let grid = read_fpl(input)?;
    let mut rb = ReportBuilder::new("fpl link");
    rb.param("input", input.display()).param("n", grid.n());
    if render {
        println!("{}", grid.render());
    }
    let pattern = fpl::link_pattern(&grid)?;
    println!("link pattern: {:?}", pattern.pairs());
    rb.verdict("link_pattern_total", true, format!("{} pairs", pattern.pairs().len()));
    let all = rb.all_passed();
    rb.finish(json!({ "pairs": pattern.pairs() }), common.out.as_deref())?;
    Ok(all)
}

fn cmd_fpl_render(input: &PathBuf) -> anyhow::Result<bool> {
    let grid = read_fpl(input)?;
    println!("{}", grid.render());
    Ok(true)
}

fn cmd_rs_check(n: usize, mode: &str, p_text: &str, common: CommonOpts) -> anyhow::Result<bool> {
    check_cap(n, true)?;
    match mode {
        "hamiltonian" => {
            let mut rb = ReportBuilder::new("rs check");
            rb.param("n", n).param("mode", mode);
            let report = tl::rs_check(n)?;
            rb.verdict(
                "eigenvector_identity",
                report.identity_holds,
                format!("residual is {}", if report.residual.is_zero() { "zero" } else { "nonzero" }),
            );
            let all = rb.all_passed();
            let result = json!({
                "n": n,
                "identity_holds": report.identity_holds,
                "s_vector": LinkVectorJson::from_vector(&tl::s_vector(n)?),
                "residual": LinkVectorJson::from_vector(&report.residual),
            });
            rb.finish(result, common.out.as_deref())?;
            Ok(all)
        }
        "dlm" => {
            let p = probability(p_text)?;
            let mut rb = ReportBuilder::new("rs check");
            rb.param("n", n).param("mode", mode).param("p", p_text);
            let t = dlm::transfer_matrix(n, &p)?;
            let stationary = dlm::stationary_distribution(&t)?;
            let s = tl::s_vector(n)?;
            let normalized = s.scale(&(num::BigRational::from_integer(1.into()) / s.sum()));
            let matches = stationary == normalized;
            rb.verdict(
                "ground_state_matches_fpl_distribution",
                matches,
                format!("p = {p_text}"),
            );
            let all = rb.all_passed();
            let result = json!({
                "n": n,
                "p": p_text,
                "stationary": LinkVectorJson::from_vector(&stationary),
                "fpl_distribution_normalized": LinkVectorJson::from_vector(&normalized),
                "match": matches,
            });
            rb.finish(result, common.out.as_deref())?;
            Ok(all)
        }
        _ => bail!("unknown mode {mode}; expected hamiltonian or dlm"),
    }
}

fn cmd_dlm_stationary(n: usize, p_text: &str, common: CommonOpts) -> anyhow::Result<bool> {
    check_cap(n, true)?;
    let p = probability(p_text)?;
    let mut rb = ReportBuilder::new("dlm stationary");
    rb.param("n", n).param("p", p_text);
    let t = dlm::transfer_matrix(n, &p)?;
    let stationary = dlm::stationary_distribution(&t)?;
    let fixed = t.apply(&stationary)? == stationary;
    rb.verdict("fixed_point", fixed, "T v = v exactly");
    println!(
        "stationary distribution: [{}]",
        stationary
            .coords()
            .iter()
            .map(rational_string)
            .collect::<Vec<_>>()
            .join(", ")
    );
    let all = rb.all_passed();
    rb.finish(
        serde_json::to_value(LinkVectorJson::from_vector(&stationary))?,
        common.out.as_deref(),
    )?;
    Ok(all)
}

fn cmd_corollary41(n: usize, common: CommonOpts) -> anyhow::Result<bool> {
    check_cap(n, true)?;
    let mut rb = ReportBuilder::new("corollary41");
    rb.param("n", n);
    let report = verify::square_balance(n)?;
    rb.verdict(
        "orbit_counts_balanced",
        report.balanced,
        "vertical = horizontal per orbit and square",
    );
    rb.verdict(
        "refinement_checkerboard_signed",
        report.parity_signed_refinement,
        "chain toggleability sum = (-1)^(i+j+1) * square sign, per ideal",
    );
    rb.verdict(
        "refinement_literal",
        report.literal_refinement,
        "chain toggleability sum = square sign as written; fails on squares with i+j even",
    );
    let all = rb.all_passed();
    let result = json!({
        "n": n,
        "orbit_sizes": report.orbit_sizes,
        "balanced": report.balanced,
        "refinement_checkerboard_signed": report.parity_signed_refinement,
        "refinement_literal": report.literal_refinement,
        "counts": report.counts,
    });
    rb.finish(result, common.out.as_deref())?;
    Ok(all)
}
