//! One printed line per acceptance criterion; run with `--nocapture` to see
//! them. Each criterion is its own test so a red one does not hide the rest.

use std::collections::BTreeSet;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use serde_json::Value;

use axiomlab_core::axioms::{check, Axiom, CheckBounds, CheckResult, Witness};
use axiomlab_core::prefcore::codec::{alternative_from_json, preference_from_json};
use axiomlab_core::prefcore::{
    canonical_separable, enumerate_linear_orders, enumerate_separable, permute_objects, Alternative, DomainSpec,
    ObjectPermutation, ObjectSet, Preference, Profile, Universe, VoterId, DEFAULT_ENUMERATION_CAP,
};
use axiomlab_core::rules::{
    f_geq, f_gt, f_star, f_succ, f_tilde, remark1_bottom, remark1_top, rule_by_name, tops_only_extension, RuleSpec,
};
use axiomlab_core::verify::{
    independence_matrix, prop2_scan, remark2_scan, verify_prop2, verify_theorem1, verify_theorem2, Budget, CspInstance,
    CspOutcome, MatrixCell, Outcome, Theorem1Options, VerdictReport,
};

const CAP: u64 = DEFAULT_ENUMERATION_CAP;

fn report(n: u8, title: &str, pass: bool, detail: &str, took: Duration, limit: Duration) -> bool {
    let in_time = took <= limit;
    let ok = pass && in_time;
    println!(
        "criterion {n} [{}] {title}: {detail} ({:.3}s, limit {}s{})",
        if ok { "PASS" } else { "FAIL" },
        took.as_secs_f64(),
        limit.as_secs(),
        if in_time { "" } else { ", over time" },
    );
    ok
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn voter(i: u32) -> VoterId {
    VoterId::new(i).unwrap()
}

fn rep(objects: usize, top: Alternative) -> Preference {
    canonical_separable(objects, top.into()).unwrap()
}

// Oracles written against raw position vectors, not the library types.

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for slot in 0..=p.len() {
            let mut q = p.clone();
            q.insert(slot, n - 1);
            out.push(q);
        }
    }
    out
}

/// `order[k]` is the set mask ranked k-th.
fn oracle_separable(objects: usize, order: &[usize]) -> bool {
    let mut pos = vec![0; order.len()];
    for (k, s) in order.iter().enumerate() {
        pos[*s] = k;
    }
    (0..objects).all(|x| {
        let good = pos[1 << x] < pos[0];
        (0..1usize << objects).filter(|s| s & 1 << x == 0).all(|s| (pos[s | 1 << x] < pos[s]) == good)
    })
}

struct MatrixRun {
    report: VerdictReport,
    rows: Vec<Vec<MatrixCell>>,
    took: Duration,
}

fn matrix() -> &'static MatrixRun {
    static RUN: OnceLock<MatrixRun> = OnceLock::new();
    RUN.get_or_init(|| {
        let started = Instant::now();
        let (report, rows) = independence_matrix(3, &CheckBounds::new(3, 2).unwrap()).unwrap();
        MatrixRun { report, rows, took: started.elapsed() }
    })
}

fn theorem2() -> &'static (VerdictReport, Duration) {
    static RUN: OnceLock<(VerdictReport, Duration)> = OnceLock::new();
    RUN.get_or_init(|| {
        let started = Instant::now();
        let r = verify_theorem2(2, &CheckBounds::new(3, 2).unwrap()).unwrap();
        (r, started.elapsed())
    })
}

#[test]
fn criterion_1_domain_counts() {
    let started = Instant::now();
    let all = enumerate_linear_orders(4, CAP).unwrap().len();
    let separable = enumerate_separable(2, CAP).unwrap().len();
    let took = started.elapsed();
    let orders = permutations(4);
    let oracle_all = orders.len();
    let oracle_sep = orders.iter().filter(|o| oracle_separable(2, o)).count();
    // frozen after the oracle agreed
    assert_eq!((oracle_all, oracle_sep), (24, 8));
    let pass = (all, separable) == (24, 8);
    let detail = format!("{all} linear orders, {separable} separable (oracle {oracle_all}/{oracle_sep})");
    assert!(report(1, "domain counts at O={x,y}", pass, &detail, took, secs(1)));
}

#[test]
fn criterion_2_independence_matrix() {
    let run = matrix();
    let mut mismatches = Vec::new();
    for cell in run.rows.iter().flatten() {
        if !cell.matches() {
            mismatches.push(format!(
                "{} {}: expected {}, got {}",
                cell.rule,
                cell.axiom,
                if cell.expected == Some(true) { "pass" } else { "fail" },
                cell.result.verdict.name()
            ));
        }
    }
    let designated: Vec<String> = run
        .rows
        .iter()
        .map(|row| {
            let fails: Vec<String> = row.iter().filter(|c| !c.result.passed()).map(|c| c.axiom.to_string()).collect();
            format!("{} fails {}", row[0].rule, if fails.is_empty() { "nothing".into() } else { fails.join("+") })
        })
        .collect();
    let pass = run.rows.len() == 5 && run.rows.iter().all(|r| r.len() == 5) && mismatches.is_empty();
    let detail = if mismatches.is_empty() {
        designated.join("; ")
    } else {
        format!("{}; mismatches: {}", designated.join("; "), mismatches.join("; "))
    };
    println!("  matrix outcome: {} ({})", run.report.outcome, run.report.summary);
    assert!(report(2, "independence matrix at O={x,y,z}, n_max=3", pass, &detail, run.took, secs(300)));
}

#[test]
fn criterion_3_prop2_scan() {
    let started = Instant::now();
    let scan = prop2_scan(CAP).unwrap();
    let took = started.elapsed();
    // each violator is a real counterexample, not a checker artefact
    for (rule, anon) in &scan.violators {
        assert!(anon.witness.as_ref().unwrap().replay(rule, Axiom::Anonymity, CAP).unwrap());
    }
    let detail = format!(
        "{} rules scanned, {} pass fnp+participation, {} of those fail anonymity",
        scan.candidates,
        scan.passing,
        scan.violators.len()
    );
    let pass = scan.candidates == 256 && scan.violators.is_empty();
    assert!(report(3, "fnp+participation without anonymity, |A|=2, ids {1,2}", pass, &detail, took, secs(10)));
}

#[test]
fn criterion_4_remark2_scan() {
    let started = Instant::now();
    let scan = remark2_scan(2, 2, CAP).unwrap();
    let took = started.elapsed();
    let pass = scan == Some((16, 0));
    let detail = match scan {
        Some((rules, both)) => format!("{rules} rules scanned, {both} anonymous and neutral"),
        None => "scan skipped".into(),
    };
    assert!(report(4, "anonymity+neutrality at |A|=2, N={1,2}", pass, &detail, took, secs(1)));
}

#[test]
fn criterion_5_theorem1_csp() {
    let started = Instant::now();
    let opts = Theorem1Options { budget: secs(60), ..Theorem1Options::default() };
    let r = verify_theorem1(&opts).unwrap();
    let depth = r.artifacts["unsat_depth"].as_u64();
    let mut notes = vec![format!("unsat at depth {}", depth.map_or("none".into(), |d| d.to_string()))];
    let mut pass = r.outcome == Outcome::Confirmed && depth.is_some_and(|d| d <= 4);

    // rebuild each drop here and confirm its rule with the bounded checkers
    let d = depth.unwrap_or(2) as usize;
    for dropped in Axiom::IMPOSSIBILITY {
        let families: BTreeSet<Axiom> = Axiom::IMPOSSIBILITY.into_iter().filter(|a| *a != dropped).collect();
        let inst = CspInstance::build(2, d, &families, CAP).unwrap();
        let CspOutcome::Sat(values) = inst.solve(Budget::unlimited()).0 else {
            pass = false;
            notes.push(format!("without {dropped}: not sat"));
            continue;
        };
        let rule = inst.materialize(&values);
        let bounds = inst.check_bounds().unwrap();
        let failed: Vec<String> =
            families.iter().filter(|a| !check(&rule, **a, &bounds).unwrap().passed()).map(|a| a.to_string()).collect();
        if failed.is_empty() {
            notes.push(format!("without {dropped}: sat, confirmed"));
        } else {
            pass = false;
            notes.push(format!("without {dropped}: witness fails {}", failed.join("+")));
        }
    }
    assert!(report(5, "CSP at O={x,y}", pass, &notes.join("; "), started.elapsed(), secs(60)));
}

#[test]
fn criterion_6_theorem2() {
    let (r, took) = theorem2();
    let a = &r.artifacts;
    let mut pass = r.outcome == Outcome::Confirmed && a["non_separable"] == 16;
    let split = (&a["split"]["empty_top"], &a["split"]["full_top"], &a["split"]["other"]);
    pass &= split == (&Value::from(4), &Value::from(4), &Value::from(8));

    // the ∅-top preferences are caught only through f^≥ and the 𝒪-top ones
    // only through f^>
    let u = Universe::subsets(2).unwrap();
    let full = u.full_set().unwrap();
    for case in a["cases"].as_array().unwrap() {
        let top = alternative_from_json(&u, &case["top"]).unwrap();
        let built: BTreeSet<&str> = case["extensions"]
            .as_array()
            .unwrap()
            .iter()
            .filter(|e| e.get("construction").is_some())
            .map(|e| e["rule"].as_str().unwrap().trim_start_matches("ext:"))
            .collect();
        let expected: BTreeSet<&str> = if top == Alternative(0) {
            ["f_geq"].into()
        } else if top == full {
            ["f_gt"].into()
        } else {
            ["f_gt", "f_geq"].into()
        };
        pass &= built == expected;
    }
    let detail = format!(
        "{}; {} non-separable, split empty/full/other {}/{}/{}",
        r.summary, a["non_separable"], split.0, split.1, split.2
    );
    assert!(report(6, "separable domain positive and maximality parts", pass, &detail, *took, secs(300)));
}

#[test]
fn criterion_7_quoted_evaluations() {
    let started = Instant::now();
    let mut notes = Vec::new();

    // f^⋆: i has top {x,y} and ranks {x,y,z} above {z}; j has top {x,y,z}
    let u3 = Universe::subsets(3).unwrap();
    let [x, y, z] = [u3.set_of(&["x"]).unwrap(), u3.set_of(&["y"]).unwrap(), u3.set_of(&["z"]).unwrap()];
    let xy = u3.set_of(&["x", "y"]).unwrap();
    let xyz = u3.full_set().unwrap();
    let mut order = vec![xy, xyz, z];
    order.extend(u3.alternatives().filter(|a| ![xy, xyz, z].contains(a)));
    let p_i = Preference::from_order(order).unwrap();
    let star = f_star(&u3).unwrap();
    let both = Profile::new([(voter(1), p_i.clone()), (voter(2), rep(3, xyz))]).unwrap();
    let without_i = both.without_voter(voter(1)).unwrap();
    let (with, without) = (star.evaluate(&both).unwrap(), star.evaluate(&without_i).unwrap());
    let star_ok = with == z && without == xyz && p_i.prefers(without, with).unwrap();
    notes.push(format!("f_star {} vs {} without i", u3.name(with), u3.name(without)));

    // f^≻ with {x} ≻ {y} ≻ {z}; μ: x→z, y→x, z→y
    let succ = f_succ(&u3, None).unwrap();
    let mu = ObjectPermutation::new(vec![2, 0, 1]).unwrap();
    let p = Profile::new([(voter(1), rep(3, x)), (voter(2), rep(3, z))]).unwrap();
    let moved = p.map_preferences(|q| permute_objects(q, &mu).unwrap());
    let (before, after) = (succ.evaluate(&p).unwrap(), succ.evaluate(&moved).unwrap());
    let image: Alternative = mu.apply_set(before.into()).into();
    let succ_ok = before == x && image == z && after == y;
    notes.push(format!("f_succ mu({}) = {} vs {}", u3.name(before), u3.name(image), u3.name(after)));

    // f^> and f^≥ on tops {S, S ∪ {x}}, every S and x ∉ S
    let mut pair_ok = true;
    let mut pairs = 0;
    for objects in 2..=3 {
        let u = Universe::subsets(objects).unwrap();
        let (gt, geq) = (f_gt(&u).unwrap(), f_geq(&u).unwrap());
        for s in (0..1u32 << objects).map(ObjectSet::from_mask) {
            for o in (0..objects).filter(|o| !s.contains(*o)) {
                let prof = Profile::from_prefs([rep(objects, s.into()), rep(objects, s.with(o).into())]).unwrap();
                pair_ok &= gt.evaluate(&prof).unwrap() == s.into();
                pair_ok &= geq.evaluate(&prof).unwrap() == s.with(o).into();
                pairs += 1;
            }
        }
    }
    notes.push(format!("f_gt/f_geq on {pairs} nested pairs"));

    // f̃ at O={x,y}: same tops {x}, 𝒪 last versus 𝒪 second
    let u2 = Universe::subsets(2).unwrap();
    let (x2, y2, full2) = (u2.set_of(&["x"]).unwrap(), u2.set_of(&["y"]).unwrap(), u2.full_set().unwrap());
    let bottom = Preference::from_order(vec![x2, Alternative(0), y2, full2]).unwrap();
    let second = Preference::from_order(vec![x2, full2, Alternative(0), y2]).unwrap();
    let tilde = f_tilde(&u2).unwrap();
    let a = tilde.evaluate(&Profile::from_prefs([bottom.clone(), bottom]).unwrap()).unwrap();
    let b = tilde.evaluate(&Profile::from_prefs([second.clone(), second]).unwrap()).unwrap();
    let tilde_ok = a == full2 && b == x2;
    notes.push(format!("f_tilde {} vs {}", u2.name(a), u2.name(b)));

    let pass = star_ok && succ_ok && pair_ok && tilde_ok;
    assert!(report(7, "quoted evaluations", pass, &notes.join("; "), started.elapsed(), secs(1)));
}

/// Serializes the witness, reads it back and replays it against `rule`.
fn replays(rule: &RuleSpec, result: &CheckResult) -> bool {
    let text = result.to_json()["witness"].to_string();
    let w = Witness::from_json(rule.universe(), &serde_json::from_str(&text).unwrap()).unwrap();
    w.replay(rule, result.axiom, CAP).unwrap()
}

fn replays_json(rule: &RuleSpec, axiom: Axiom, v: &Value) -> bool {
    let w = Witness::from_json(rule.universe(), &serde_json::from_str(&v.to_string()).unwrap()).unwrap();
    w.replay(rule, axiom, CAP).unwrap()
}

#[test]
fn criterion_8_witness_replay() {
    let started = Instant::now();
    let (mut total, mut ok) = (0usize, 0usize);
    let mut tally = |good: bool| {
        total += 1;
        ok += good as usize;
    };

    // independence matrix at O={x,y,z}
    let u3 = Universe::subsets(3).unwrap();
    for cell in matrix().rows.iter().flatten().filter(|c| !c.result.passed()) {
        let rule = rule_by_name(&cell.rule, &u3).unwrap();
        tally(replays(&rule, &cell.result));
    }

    // scan violators and the status-quo rules
    for (rule, anon) in prop2_scan(CAP).unwrap().violators {
        tally(replays(&rule, &anon));
    }
    let bounds = CheckBounds::new(3, 2).unwrap();
    let prop2 = verify_prop2(2, &bounds).unwrap();
    let labels = Universe::with_alternatives(3).unwrap();
    for entry in prop2.artifacts["remark1"].as_array().unwrap() {
        let domain = DomainSpec::universal(labels.clone());
        let rule = match entry["rule"].as_str().unwrap() {
            "remark1_top" => remark1_top(domain),
            _ => remark1_bottom(domain),
        };
        for key in ["kept", "anonymity", "lost"] {
            let c = &entry[key];
            if c["verdict"] == "fail" {
                let axiom: Axiom = serde_json::from_value(c["axiom"].clone()).unwrap();
                tally(replays_json(&rule, axiom, &c["witness"]));
            }
        }
    }

    // maximality constructions and sweeps
    let u2 = Universe::subsets(2).unwrap();
    for case in theorem2().0.artifacts["cases"].as_array().unwrap() {
        let pref = preference_from_json(&u2, &case["preference"]).unwrap();
        let domain = DomainSpec::separable_plus(u2.clone(), pref).unwrap();
        for ext in case["extensions"].as_array().unwrap() {
            let base = rule_by_name(ext["rule"].as_str().unwrap().trim_start_matches("ext:"), &u2).unwrap();
            let rule = tops_only_extension(&base, domain.clone()).unwrap();
            if let Some(w) = ext.get("construction") {
                tally(replays_json(&rule, Axiom::Participation, w));
            }
            if ext["sweep"]["verdict"] == "fail" {
                tally(replays_json(&rule, Axiom::Participation, &ext["sweep"]["witness"]));
            }
        }
    }

    let pass = total > 0 && ok == total;
    let detail = format!("{ok}/{total} fail witnesses replay from JSON");
    assert!(report(8, "witness replay", pass, &detail, started.elapsed(), secs(300)));
}
