//! `axiomlab`: enumerate domains, evaluate rules, check axioms, and run the
//! theorem-level verifications from the command line.

mod render;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use axiomlab_core::axioms::{check, Axiom, CheckBounds};
use axiomlab_core::prefcore::codec::{
    alternative_to_json, preference_to_json, profile_to_json, universe_to_json, ProfileFixture,
};
use axiomlab_core::prefcore::{DomainSpec, Universe, DEFAULT_ENUMERATION_CAP};
use axiomlab_core::rules::rule_by_name;
use axiomlab_core::verify::{
    independence_matrix, verify_lemma1, verify_prop1, verify_prop2, verify_remark2, verify_theorem1, verify_theorem2,
    Theorem1Options,
};

use render::{Format, Rendered};

#[derive(Parser, Debug)]
#[command(name = "axiomlab", version, about = "Bounded checks of voting-rule axioms with variable electorates")]
struct Cli {
    /// Shorthand for `--format json`.
    #[arg(long, global = true)]
    json: bool,

    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,

    /// Write the rendering here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Reserved; every computation is deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Enumeration cap: a count, or `default`.
    #[arg(long, global = true, env = "AXIOMLAB_CAP")]
    cap: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DomainArg {
    /// Every linear order.
    #[value(alias = "universal")]
    All,
    Separable,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Theorem {
    Lemma1,
    Prop1,
    Prop2,
    Remark2,
    Thm1,
    Thm2,
    Independence,
}

#[derive(clap::Args, Debug, Clone)]
struct BoundsArgs {
    #[arg(long, default_value_t = 2)]
    objects: usize,
    /// Largest base society.
    #[arg(long, default_value_t = 3)]
    nmax: usize,
    /// Most clones or newcomers added at once.
    #[arg(long, default_value_t = 2)]
    nprime: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count (and optionally list) the preferences of a domain.
    Enumerate {
        #[arg(long, value_enum, default_value_t = DomainArg::All)]
        domain: DomainArg,
        #[arg(long, default_value_t = 2)]
        objects: usize,
        /// Use labelled alternatives instead of subsets of objects.
        #[arg(long)]
        alternatives: Option<usize>,
        #[arg(long)]
        list: bool,
    },
    /// Evaluate a rule on a profile fixture.
    Eval {
        #[arg(long)]
        rule: String,
        /// JSON profile fixture.
        #[arg(long)]
        profile: PathBuf,
    },
    /// Check one axiom for one rule within bounds.
    Check {
        #[arg(long)]
        rule: String,
        #[arg(long)]
        axiom: Axiom,
        #[command(flatten)]
        bounds: BoundsArgs,
    },
    /// Run a theorem-level verification.
    Verify {
        #[arg(long, value_enum)]
        theorem: Theorem,
        #[command(flatten)]
        bounds: BoundsArgs,
        /// Wall-clock budget for the constraint search, in seconds.
        #[arg(long, default_value_t = 60)]
        budget: u64,
        /// Deepest society tried by the constraint search.
        #[arg(long, default_value_t = 4)]
        ceiling: usize,
        /// Rule for `lemma1` and `prop1`.
        #[arg(long)]
        rule: Option<String>,
        /// Alternatives for `remark2`.
        #[arg(long, default_value_t = 2)]
        alternatives: usize,
        /// Society size for `remark2`.
        #[arg(long, default_value_t = 2)]
        voters: usize,
    },
    /// The 5×5 independence table.
    Matrix {
        #[command(flatten)]
        bounds: BoundsArgs,
    },
}

fn parse_cap(raw: Option<&str>) -> Result<u64> {
    match raw.map(str::trim) {
        None | Some("default") => Ok(DEFAULT_ENUMERATION_CAP),
        Some(s) => s.parse().with_context(|| format!("cap must be a count or `default`, got `{s}`")),
    }
}

fn bounds(b: &BoundsArgs, cap: u64) -> Result<CheckBounds> {
    Ok(CheckBounds::new(b.nmax, b.nprime)?.with_cap(cap))
}

fn run(cli: &Cli) -> Result<Rendered> {
    let cap = parse_cap(cli.cap.as_deref())?;
    match &cli.command {
        Command::Enumerate { domain, objects, alternatives, list } => {
            let spec = match (domain, alternatives) {
                (DomainArg::All, Some(n)) => DomainSpec::universal(Universe::with_alternatives(*n)?),
                (DomainArg::All, None) => DomainSpec::all_subsets(*objects)?,
                (DomainArg::Separable, None) => DomainSpec::separable(*objects)?,
                (DomainArg::Separable, Some(_)) => {
                    bail!("separability needs subsets of objects, not labels")
                }
            };
            let prefs = spec.enumerate(cap)?;
            let u = spec.universe();
            let mut v = json!({ "domain": spec.name(), "universe": universe_to_json(u), "count": prefs.len() });
            if *list {
                v["preferences"] = prefs.iter().map(|p| preference_to_json(u, p)).collect();
            }
            Ok(render::enumerate(v, u, &prefs, *list))
        }
        Command::Eval { rule, profile } => {
            let text = std::fs::read_to_string(profile).with_context(|| format!("reading {}", profile.display()))?;
            let fixture = ProfileFixture::parse(&text)?;
            let u = &fixture.universe;
            let rule = rule_by_name(rule, u)?;
            let outcome = rule.evaluate(&fixture.profile)?;
            let v = json!({
                "rule": rule.name(),
                "universe": universe_to_json(u),
                "profile": profile_to_json(u, &fixture.profile),
                "outcome": alternative_to_json(u, outcome),
            });
            Ok(render::eval(v, u.name(outcome)))
        }
        Command::Check { rule, axiom, bounds: b } => {
            let u = Universe::subsets(b.objects)?;
            let rule = rule_by_name(rule, &u)?;
            let result = check(&rule, *axiom, &bounds(b, cap)?)?;
            Ok(render::check(&result))
        }
        Command::Verify { theorem, bounds: b, budget, ceiling, rule, alternatives, voters } => {
            let cb = bounds(b, cap)?;
            let needs_rule = || -> Result<_> {
                let name = rule.as_deref().context("this verification needs --rule")?;
                Ok(rule_by_name(name, &Universe::subsets(b.objects)?)?)
            };
            let report = match theorem {
                Theorem::Lemma1 => verify_lemma1(&needs_rule()?, &cb)?,
                Theorem::Prop1 => verify_prop1(&needs_rule()?, &cb)?,
                Theorem::Prop2 => verify_prop2(b.objects, &cb)?,
                Theorem::Remark2 => verify_remark2(*alternatives, *voters, cap)?,
                Theorem::Thm1 => verify_theorem1(&Theorem1Options {
                    objects: b.objects,
                    ceiling: *ceiling,
                    budget: Duration::from_secs(*budget),
                    cap,
                    ..Theorem1Options::default()
                })?,
                Theorem::Thm2 => verify_theorem2(b.objects, &cb)?,
                Theorem::Independence => independence_matrix(b.objects, &cb)?.0,
            };
            Ok(render::report(&report))
        }
        Command::Matrix { bounds: b } => {
            let (report, _) = independence_matrix(b.objects, &bounds(b, cap)?)?;
            Ok(render::report(&report))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = if cli.json { Format::Json } else { cli.format };
    let _ = cli.seed;
    match run(&cli) {
        Ok(rendered) => {
            let text = rendered.text(format);
            match &cli.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, text) {
                        eprintln!("error: writing {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::from(rendered.exit)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
