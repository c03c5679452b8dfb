//! One PASS/FAIL line per acceptance criterion, written straight to stdout so
//! the lines show even when every criterion passes.

use std::collections::BTreeMap;
use std::io::Write;
use std::time::{Duration, Instant};

use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use quatcover::census::{
    build_covering, enumerate_census, invariant_collisions, metacyclic_group, smooth_covers, to_jsonl, CensusConfig,
    CensusRecord, MetacyclicParams,
};
use quatcover::fpgroup::{find_isomorphism, regular_representation, DEFAULT_MAX_COSETS};
use quatcover::hypermap::{
    bipartite_isomorphic, hypermaps_isomorphic, reference_graph, walsh_fingerprint, AlgebraicHypermap,
    FingerprintMatch, ReferenceGraph,
};
use quatcover::library;
use quatcover::verify::{hasse_items, metacyclic16_report, smoke, verify_table, Status, VerificationItem};

mod common;

struct Verdict {
    pass: bool,
    summary: String,
}

fn verdict(pass: bool, summary: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        summary: summary.into(),
    }
}

fn item<'a>(items: &'a [VerificationItem], id: &str) -> Option<&'a VerificationItem> {
    items.iter().find(|i| i.id == id)
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

fn criterion_1(smoke_items: &[VerificationItem], elapsed: Duration) -> Verdict {
    let q = item(smoke_items, "smoke.quaternion");
    let ok = q.is_some_and(|i| i.status == Status::Pass);
    verdict(
        ok && elapsed < Duration::from_secs(1),
        format!(
            "quaternion hypermap: {} ({})",
            q.map_or("missing".to_string(), |i| i.details.clone()),
            secs(elapsed)
        ),
    )
}

fn criterion_2(records: &[CensusRecord], elapsed: Duration) -> Verdict {
    let bad: Vec<String> = records
        .iter()
        .filter(|r| {
            let o = r.octuple;
            let k_order: i64 = r.k_invariant_factors.iter().product();
            r.error.is_some()
                || r.group_order as i64 != 8 * o.mnd()
                || k_order != o.mnd()
                || r.prediction.map(|p| (p.ty, p.genus)) != r.computed_type.zip(r.computed_genus)
        })
        .map(|r| format!("{} {}", r.octuple, r.error.as_deref().unwrap_or("")))
        .collect();
    verdict(
        records.len() == 5290 && bad.is_empty() && elapsed < Duration::from_secs(300),
        format!(
            "{} valid octuples with mnd <= 48, {} mismatches{} ({})",
            records.len(),
            bad.len(),
            bad.first().map(|b| format!(", first {b}")).unwrap_or_default(),
            secs(elapsed)
        ),
    )
}

fn criterion_3(records: &[CensusRecord]) -> Verdict {
    let small: Vec<&CensusRecord> = records.iter().filter(|r| r.octuple.mnd() <= 24).collect();
    let disagree: Vec<String> = small
        .iter()
        .filter(|r| r.group_profile.map(|g| g.base()) != Some(r.congruence_profile.base()))
        .map(|r| r.octuple.to_string())
        .collect();
    verdict(
        small.len() == 1325 && disagree.is_empty(),
        format!(
            "{} octuples with mnd <= 24, congruence and group profiles disagree on {}",
            small.len(),
            disagree.len()
        ),
    )
}

fn graph_of(h: &AlgebraicHypermap) -> Option<ReferenceGraph> {
    let adj = walsh_fingerprint(h).adjacency;
    [
        ReferenceGraph::K22Doubled,
        ReferenceGraph::C8Doubled,
        ReferenceGraph::K44,
        ReferenceGraph::Hypercube4,
    ]
    .into_iter()
    .find(|&g| bipartite_isomorphic(&adj, &reference_graph(g)) == FingerprintMatch::Isomorphic)
}

/// Whether two black vertices have the same neighbourhood. The 4-cube has
/// no such pair: any two of its vertices share at most two neighbours.
fn has_black_twins(h: &AlgebraicHypermap) -> bool {
    let adj = walsh_fingerprint(h).adjacency;
    adj.iter().enumerate().any(|(i, a)| adj[i + 1..].iter().any(|b| a == b))
}

fn criterion_4(records: &[CensusRecord]) -> Verdict {
    let smooth: Vec<&CensusRecord> = smooth_covers(records).into_iter().filter(|r| r.octuple.mnd() <= 4).collect();
    let mut built = Vec::new();
    for r in &smooth {
        match build_covering(&r.octuple, DEFAULT_MAX_COSETS) {
            Ok(c) => built.push(c.hypermap),
            Err(e) => return verdict(false, format!("{}: {e}", r.octuple)),
        }
    }
    let library: Vec<AlgebraicHypermap> = library::smooth_quaternion_covers()
        .iter()
        .map(|p| AlgebraicHypermap::from_presentation(p, DEFAULT_MAX_COSETS).expect("library cover enumerates"))
        .collect();
    let trivial_ok = built.first().is_some_and(|h| h.order() == 8);
    let rest = built.get(1..).unwrap_or_default();
    // each nontrivial smooth cover matches exactly one library hypermap
    let mut matched = vec![None; library.len()];
    let mut bijective = rest.len() == library.len();
    for h in rest {
        let hits: Vec<usize> = (0..library.len()).filter(|&i| hypermaps_isomorphic(h, &library[i])).collect();
        match hits.as_slice() {
            [i] if matched[*i].is_none() => matched[*i] = Some(h),
            _ => bijective = false,
        }
    }
    let mut genera: Vec<u64> = rest.iter().filter_map(|h| h.genus().ok()).collect();
    genera.sort_unstable();
    let graphs: Vec<Option<ReferenceGraph>> = library.iter().map(graph_of).collect();
    let expected_graphs = [
        Some(ReferenceGraph::C8Doubled),
        Some(ReferenceGraph::K44),
        Some(ReferenceGraph::K44),
        Some(ReferenceGraph::Hypercube4),
    ];
    let census_graphs: Vec<Option<ReferenceGraph>> = matched.iter().map(|h| h.and_then(graph_of)).collect();
    let ok = smooth.len() == 5
        && trivial_ok
        && bijective
        && genera == [3, 3, 3, 5]
        && graphs == expected_graphs
        && census_graphs == expected_graphs;
    let h4_twins = matched[3].is_some_and(has_black_twins);
    verdict(
        ok,
        format!(
            "smooth octuples {:?}, genera {genera:?}, matched to H1..H4: {bijective}, Walsh graphs {census_graphs:?}, \
             expected {expected_graphs:?}; H4 has black vertices with equal neighbourhoods: {h4_twins}",
            smooth.iter().map(|r| r.octuple.to_string()).collect::<Vec<_>>()
        ),
    )
}

fn criterion_5() -> Verdict {
    let mut items = Vec::new();
    for t in 1..=4 {
        match verify_table(t, 8, DEFAULT_MAX_COSETS) {
            Ok(v) => items.extend(v),
            Err(e) => return verdict(false, e.to_string()),
        }
    }
    let fails: Vec<&str> = items.iter().filter(|i| i.status == Status::Fail).map(|i| i.id.as_str()).collect();
    let smooth_flag = |id: &str| {
        item(&items, id).is_some_and(|i| i.status == Status::FlaggedDiscrepancy && i.details.contains("never branched"))
    };
    let flagged: Vec<&str> = items
        .iter()
        .filter(|i| i.status == Status::FlaggedDiscrepancy)
        .map(|i| i.id.as_str())
        .collect();
    verdict(
        items.len() == 25 && fails.is_empty() && smooth_flag("table2.viii") && smooth_flag("table2.x"),
        format!(
            "{} rows, failing {fails:?}, flagged {flagged:?} (rows viii and x computed smooth at hyperfaces)",
            items.len()
        ),
    )
}

fn smoke_verdict(smoke_items: &[VerificationItem], ids: &[&str]) -> Verdict {
    let found: Vec<&VerificationItem> = ids.iter().filter_map(|id| item(smoke_items, id)).collect();
    let ok = found.len() == ids.len() && found.iter().all(|i| i.status == Status::Pass);
    verdict(
        ok,
        found.iter().map(|i| format!("{}: {}", i.id, i.details)).collect::<Vec<_>>().join(" | "),
    )
}

fn criterion_6() -> Verdict {
    match metacyclic16_report(DEFAULT_MAX_COSETS) {
        Ok(r) => verdict(
            r.facts_hold(),
            format!(
                "{} generating pairs, |Aut| = {}, {} classes, tau swaps H1 and H2: {}, tau fixes H3: {}, \
                 pi and iota fix all three: {}",
                r.generating_pairs, r.automorphisms, r.classes, r.tau_swaps_h1_h2, r.tau_fixes_h3, r.pi_iota_fix_all
            ),
        ),
        Err(e) => verdict(false, e),
    }
}

fn criterion_8() -> Verdict {
    let start = Instant::now();
    let items = hasse_items();
    let elapsed = start.elapsed();
    let failing: Vec<&str> = items.iter().filter(|i| i.status != Status::Pass).map(|i| i.id.as_str()).collect();
    let structures: Vec<String> = items
        .iter()
        .filter(|i| i.id.ends_with("structure"))
        .map(|i| format!("{} {}", i.id.trim_start_matches("hasse."), i.details))
        .collect();
    verdict(
        !items.is_empty() && failing.is_empty() && elapsed < Duration::from_secs(1),
        format!("{} checks, failing {failing:?}; {} ({})", items.len(), structures.join(", "), secs(elapsed)),
    )
}

fn criterion_9() -> Verdict {
    let params = MetacyclicParams::sweep(&[2, 3], 2);
    let mut reports = Vec::new();
    for mp in &params {
        match metacyclic_group(mp, DEFAULT_MAX_COSETS) {
            Ok(r) => reports.push(r),
            Err(e) => return verdict(false, format!("{mp:?}: {e}")),
        }
    }
    let wrong: Vec<String> = reports
        .iter()
        .filter(|r| !r.matches_claims())
        .map(|r| format!("{:?}", r.params))
        .collect();
    let q8 = reports
        .iter()
        .find(|r| r.params == MetacyclicParams::new(2, 1, 1, 1, 0))
        .is_some_and(|r| {
            let (q, _) = regular_representation(&library::quaternion_classical(), DEFAULT_MAX_COSETS).expect("Q8");
            find_isomorphism(&r.group, &q).is_some()
        });
    let collisions = invariant_collisions(&reports);
    let isomorphic = collisions.iter().filter(|c| c.isomorphic).count();
    let example = collisions
        .first()
        .map(|c| {
            let t = |m: &MetacyclicParams| format!("({},{},{},{},{})", m.p, m.a, m.b, m.c, m.d);
            format!(
                ", e.g. {} and {} share {:?} and are isomorphic: {}",
                t(&c.first),
                t(&c.second),
                c.vector,
                c.isomorphic
            )
        })
        .unwrap_or_default();
    verdict(
        wrong.is_empty() && q8 && collisions.is_empty(),
        format!(
            "{} tuples; order, derived subgroup and abelianization as claimed for all but {wrong:?}; \
             (2,1,1,1,0) is Q8: {q8}; {} pairs of distinct tuples share an invariant vector, \
             {isomorphic} of them isomorphic groups{example}",
            reports.len(),
            collisions.len()
        ),
    )
}

fn criterion_10(records: &[CensusRecord], serial_jsonl: &str) -> Verdict {
    // Smith form identities on 1000 random matrices from a fixed seed
    let mut runner = TestRunner::new_with_rng(
        Config::default(),
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    );
    let strategy = (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
        (proptest::collection::vec(proptest::collection::vec(-9i64..=9, c), r), proptest::strategy::Just(c))
    });
    let mut snf_failures = Vec::new();
    for _ in 0..1000 {
        let (rows, cols) = strategy.new_tree(&mut runner).expect("strategy").current();
        if let Err(e) = common::check_snf(&rows, cols) {
            snf_failures.push(e);
        }
    }
    let lemma_num = records.iter().filter(|r| !r.lemma_num).count();
    let branch = records
        .iter()
        .filter(|r| {
            r.branch
                .map(|b| [b.smooth_v, b.smooth_e, b.smooth_f])
                .is_none_or(|b| r.computed_smooth != Some(b))
        })
        .count();
    let cyclic = records
        .iter()
        .filter(|r| r.k_cyclic != Some(quatcover::intlattice::gcd(r.octuple.m, r.octuple.n) == 1))
        .count();
    let parallel = enumerate_census(
        48,
        &CensusConfig {
            jobs: 4,
            ..CensusConfig::default()
        },
    )
    .map(|rs| to_jsonl(&rs));
    let deterministic = parallel.as_deref() == Ok(serial_jsonl);
    verdict(
        snf_failures.is_empty() && lemma_num == 0 && branch == 0 && cyclic == 0 && deterministic,
        format!(
            "SNF failures {}/1000; numerical-consequence violations {lemma_num}; smoothness congruence violations {branch}; \
             cyclic-K vs gcd mismatches {cyclic}; census identical for jobs 1 and 4: {deterministic}",
            snf_failures.len()
        ),
    )
}

#[test]
fn acceptance_criteria() {
    let start = Instant::now();
    let smoke_items = smoke(DEFAULT_MAX_COSETS);
    let smoke_elapsed = start.elapsed();
    // the quaternion item alone, for the timing bound
    let start = Instant::now();
    let _ = smoke_items.first();
    let q = AlgebraicHypermap::from_presentation(&library::quaternion(), DEFAULT_MAX_COSETS).expect("Q8");
    for s in quatcover::operations::builtin_operations() {
        let _ = quatcover::operations::is_invariant(&q, &s);
    }
    let q_elapsed = start.elapsed();

    let start = Instant::now();
    let records = enumerate_census(48, &CensusConfig::default()).expect("census runs");
    let census_elapsed = start.elapsed();
    let serial_jsonl = to_jsonl(&records);

    let verdicts: BTreeMap<u32, Verdict> = [
        (1, criterion_1(&smoke_items, q_elapsed)),
        (2, criterion_2(&records, census_elapsed)),
        (3, criterion_3(&records)),
        (4, criterion_4(&records)),
        (5, criterion_5()),
        (6, criterion_6()),
        (7, smoke_verdict(&smoke_items, &["smoke.rph5.8", "smoke.r17.35"])),
        (8, criterion_8()),
        (9, criterion_9()),
        (10, criterion_10(&records, &serial_jsonl)),
    ]
    .into_iter()
    .collect();

    let mut out = std::io::stdout().lock();
    for (n, v) in &verdicts {
        let tag = if v.pass { "PASS" } else { "FAIL" };
        writeln!(out, "{tag} criterion {n}: {}", v.summary).expect("stdout");
    }
    writeln!(out, "smoke battery total {}", secs(smoke_elapsed)).expect("stdout");
    drop(out);
    let failed: Vec<u32> = verdicts.iter().filter(|(_, v)| !v.pass).map(|(n, _)| *n).collect();
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
