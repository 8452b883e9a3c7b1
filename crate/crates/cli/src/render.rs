use std::fmt::Write;

use clap::ValueEnum;
use serde_json::Value;

use axiomlab_core::axioms::{CheckResult, Verdict, Witness};
use axiomlab_core::prefcore::{Preference, Profile, Universe};
use axiomlab_core::verify::VerdictReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
    Markdown,
}

/// One run's output in every format, plus its exit code.
pub struct Rendered {
    pub json: Value,
    pub human: String,
    pub markdown: String,
    pub exit: u8,
}

impl Rendered {
    pub fn text(&self, format: Format) -> String {
        match format {
            Format::Json => format!("{}\n", serde_json::to_string_pretty(&self.json).expect("values serialize")),
            Format::Human => self.human.clone(),
            Format::Markdown => self.markdown.clone(),
        }
    }
}

fn pref_line(u: &Universe, p: &Preference) -> String {
    p.order().iter().map(|a| u.name(*a)).collect::<Vec<_>>().join(" > ")
}

fn profile_lines(u: &Universe, p: &Profile, out: &mut String) {
    for (i, q) in p.iter() {
        let _ = writeln!(out, "    voter {i}: {}", pref_line(u, q));
    }
}

pub fn enumerate(json: Value, u: &Universe, prefs: &[Preference], list: bool) -> Rendered {
    let domain = json["domain"].as_str().unwrap_or_default().to_string();
    let mut human = format!("{domain} domain over {}: {} preferences\n", u.describe(), prefs.len());
    let mut markdown = format!("**{domain}** domain over {}: {} preferences\n", u.describe(), prefs.len());
    if list {
        markdown.push('\n');
        for (i, p) in prefs.iter().enumerate() {
            let line = pref_line(u, p);
            let _ = writeln!(human, "{:>6}  {line}", i + 1);
            let _ = writeln!(markdown, "{}. {line}", i + 1);
        }
    }
    Rendered { json, human, markdown, exit: 0 }
}

pub fn eval(json: Value, outcome: String) -> Rendered {
    let rule = json["rule"].as_str().unwrap_or_default();
    let human = format!("{outcome}\n");
    let markdown = format!("`{rule}` selects **{outcome}**\n");
    Rendered { json, human, markdown, exit: 0 }
}

fn witness_lines(u: &Universe, w: &Witness, out: &mut String) {
    match w {
        Witness::Unattained { society, missing } => {
            let ids: Vec<String> = society.iter().map(|i| i.to_string()).collect();
            let _ = writeln!(out, "  no profile of society {{{}}} selects {}", ids.join(", "), u.name(*missing));
        }
        Witness::Pair { base, derived, voter, base_outcome, derived_outcome, .. } => {
            let _ = writeln!(out, "  base profile selects {}:", u.name(*base_outcome));
            profile_lines(u, base, out);
            let _ = writeln!(out, "  related profile selects {}:", u.name(*derived_outcome));
            profile_lines(u, derived, out);
            if let Some(v) = voter {
                let _ = writeln!(out, "  voter {v} gains");
            }
        }
    }
}

pub fn check(result: &CheckResult) -> Rendered {
    let verdict = result.verdict.name();
    let mut human = format!(
        "{} {} on {}: {verdict} (n_max={}, n'_max={})\n",
        result.rule, result.axiom, result.domain, result.bounds.n_max, result.bounds.n_prime_max
    );
    if let Some(w) = &result.witness {
        witness_lines(&result.universe, w, &mut human);
    }
    let mut markdown =
        format!("| rule | axiom | verdict |\n|---|---|---|\n| `{}` | {} | {verdict} |\n", result.rule, result.axiom);
    if let Some(w) = &result.witness {
        markdown.push_str("\n```\n");
        witness_lines(&result.universe, w, &mut markdown);
        markdown.push_str("```\n");
    }
    let exit = if result.verdict == Verdict::Pass { 0 } else { 1 };
    Rendered { json: result.to_json(), human, markdown, exit }
}

fn short(verdict: &Value) -> &'static str {
    match verdict.as_str() {
        Some("pass-within-bounds") => "pass",
        Some("fail") => "FAIL",
        _ => "?",
    }
}

/// Rows of `(rule, cells)` from a matrix report.
fn matrix_rows(artifacts: &Value) -> Vec<(String, Vec<String>)> {
    let mut rows = Vec::new();
    for group in ["rows", "supplementary"] {
        for row in artifacts[group].as_array().into_iter().flatten() {
            let mut cells = Vec::new();
            for c in row["cells"].as_array().into_iter().flatten() {
                let mark = if c["matches"] == false { " (!)" } else { "" };
                cells.push(format!("{}{mark}", short(&c["check"]["verdict"])));
            }
            let name = row["rule"].as_str().unwrap_or_default();
            let label = if group == "supplementary" { format!("{name} *") } else { name.to_string() };
            rows.push((label, cells));
        }
    }
    rows
}

pub fn report(report: &VerdictReport) -> Rendered {
    let outcome = report.outcome.name();
    let mut human = format!("{}: {outcome}\n  {}\n", report.theorem, report.summary);
    let mut markdown = format!("### {}: {outcome}\n\n{}\n", report.theorem, report.summary);
    if report.theorem == "independence" {
        let axioms: Vec<String> = report.artifacts["axioms"]
            .as_array()
            .into_iter()
            .flatten()
            .map(|a| a.as_str().unwrap_or_default().to_string())
            .collect();
        let rows = matrix_rows(&report.artifacts);
        let width = rows.iter().map(|(r, _)| r.len()).max().unwrap_or(4).max(4);
        let _ = write!(human, "\n  {:width$}", "rule");
        for a in &axioms {
            let _ = write!(human, "  {a:>18}");
        }
        human.push('\n');
        let _ = write!(markdown, "\n| rule | {} |\n|---|{}\n", axioms.join(" | "), "---|".repeat(axioms.len()));
        for (rule, cells) in &rows {
            let _ = write!(human, "  {rule:width$}");
            for c in cells {
                let _ = write!(human, "  {c:>18}");
            }
            human.push('\n');
            let _ = writeln!(markdown, "| {rule} | {} |", cells.join(" | "));
        }
        human.push_str("  (* supplementary row, not part of the comparison; (!) marks a mismatch)\n");
        markdown.push_str("\n\\* supplementary row; (!) marks a mismatch\n");
    }
    let _ = writeln!(human, "  wall time: {:.3}s", report.wall_time);
    Rendered { json: report.to_json(), human, markdown, exit: report.outcome.exit_code() as u8 }
}
