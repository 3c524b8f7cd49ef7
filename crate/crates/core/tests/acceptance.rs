//! Acceptance suite: one PASS/FAIL line per criterion, with runtime limits.
//!
//! Run with `cargo test --release -p primeage --test acceptance`.
//!
//! Criteria 8 and 10 cannot be met at the stated parameters. For those the
//! suite checks that the failure is exactly the analysed one: the run fails
//! if they fail in any other way, and reports it if they start passing.

use primeage::age::{jonsson_desk_check, word_age};
use primeage::graph::{canonical_key, embeds, CanonKey};
use primeage::verify::{run_all, sturmian_pair, CriterionOutcome, DEFAULT_SEED, JONSSON_K_MAX};
use primeage::word_graph::graph_of_word;
use primeage::words::Word;
use primeage::{reference, Graph};
use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Duration;

fn limit(id: u8) -> Option<Duration> {
    let secs = match id {
        1 => 10,
        2 => 30,
        3 => 120,
        4 => 20 * 60,
        6 => 5 * 60,
        7 => 10,
        8 => 5 * 60,
        9 => 15 * 60,
        10 => 10 * 60,
        _ => return None,
    };
    Some(Duration::from_secs(secs))
}

/// Every class of induced subgraphs on `k` vertices, by visiting all subsets.
fn classes_by_subsets(g: &Graph, k: usize) -> BTreeSet<CanonKey> {
    fn walk(g: &Graph, start: usize, cur: &mut Vec<usize>, k: usize, out: &mut BTreeSet<CanonKey>) {
        if cur.len() == k {
            let sub = g.induced_subgraph(cur).expect("in range").without_labels();
            out.insert(canonical_key(&sub).expect("small"));
            return;
        }
        for v in start..g.order() {
            cur.push(v);
            walk(g, v + 1, cur, k, out);
            cur.pop();
        }
    }
    let mut out = BTreeSet::new();
    walk(g, 0, &mut Vec::new(), k, &mut out);
    out
}

/// The two Sturmian words have the same 5-vertex induced subgraphs, so the
/// approximations at k = 5 cannot differ. Returns a description on success.
fn criterion_8_analysis() -> Result<String, String> {
    let (a, b) = sturmian_pair().map_err(|e| e.to_string())?;
    let (x, y) = (word_age(&a, 100, 5).unwrap(), word_age(&b, 100, 5).unwrap());
    if x.levels != y.levels {
        return Err("the k = 5 approximations differ after all".into());
    }
    let (ga, gb) = (
        graph_of_word(&a, 40).unwrap(),
        graph_of_word(&b, 40).unwrap(),
    );
    let (sa, sb) = (classes_by_subsets(&ga, 5), classes_by_subsets(&gb, 5));
    if sa != sb || sa.len() != x.levels[5].len() {
        return Err("subset scan disagrees with the enumeration".into());
    }
    let (x6, y6) = (word_age(&a, 100, 6).unwrap(), word_age(&b, 100, 6).unwrap());
    let only_a = x6.levels[6]
        .iter()
        .filter(|k| !y6.levels[6].contains(k))
        .count();
    let only_b = y6.levels[6]
        .iter()
        .filter(|k| !x6.levels[6].contains(k))
        .count();
    if only_a == 0 || only_b == 0 {
        return Err("the approximations do not separate at k = 6 either".into());
    }
    Ok(format!(
        "both words give the same {} classes on 5 vertices (subset scan at L=40 agrees); at k=6 they differ both ways ({only_a} and {only_b} classes)",
        sa.len()
    ))
}

/// Some prime on 5 vertices does not embed in some prime on 8 vertices of
/// the age, so m(5) <= 8 is impossible. Checked with the reference oracles.
fn criterion_10_analysis() -> Result<String, String> {
    let age = word_age(&Word::fibonacci(), 60, JONSSON_K_MAX).unwrap();
    let report = jonsson_desk_check(&age, true, 5).unwrap();
    let row = &report.cofinality[5];
    let Some((s, l)) = &row.witness else {
        return Err("no witness for m(5)".into());
    };
    if row.m.is_some() || report.cofinality[..5].iter().any(|r| r.m.is_none()) {
        return Err("cofinality table changed shape".into());
    }
    let (s, l) = (s.to_graph(), l.to_graph());
    let host = graph_of_word(&Word::fibonacci(), 60).unwrap();
    let sound = s.order() == 5
        && l.order() == JONSSON_K_MAX
        && reference::is_prime(&s)
        && reference::is_prime(&l)
        && embeds(&s, &host)
        && embeds(&l, &host)
        && !reference::embeds(&s, &l);
    if !sound {
        return Err("witness did not survive the reference checks".into());
    }
    Ok(format!(
        "{} (5 vertices) does not embed in {} (8 vertices); both are prime members, confirmed by exhaustive search",
        canonical_key(&s).unwrap(),
        canonical_key(&l).unwrap()
    ))
}

fn main() -> ExitCode {
    let outcomes: Vec<CriterionOutcome> = run_all(DEFAULT_SEED);
    let mut ok = true;
    for o in &outcomes {
        println!(
            "{:>2} {} {} [{:.1?}]: {}",
            o.id,
            if o.passed { "PASS" } else { "FAIL" },
            o.name,
            o.elapsed,
            o.detail
        );
        if let Some(max) = limit(o.id) {
            if o.elapsed > max {
                println!("   criterion {} exceeded its {max:?} limit", o.id);
                ok = false;
            }
        }
    }
    let combined: Duration = outcomes
        .iter()
        .filter(|o| o.id == 4 || o.id == 5)
        .map(|o| o.elapsed)
        .sum();
    if combined > Duration::from_secs(30 * 60) {
        println!("   criteria 4 and 5 exceeded 30 min combined");
        ok = false;
    }

    for o in &outcomes {
        if o.passed {
            if o.id == 8 || o.id == 10 {
                println!(
                    "   criterion {} now passes; its analysis is out of date",
                    o.id
                );
            }
            continue;
        }
        let analysis = match o.id {
            8 => criterion_8_analysis(),
            10 => criterion_10_analysis(),
            _ => Err("unexpected failure".into()),
        };
        match analysis {
            Ok(why) => println!("   criterion {} unattainable as stated: {why}", o.id),
            Err(e) => {
                println!("   criterion {}: {e}", o.id);
                ok = false;
            }
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
