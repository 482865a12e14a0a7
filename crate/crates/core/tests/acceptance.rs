//! Acceptance criteria: every named property suite must agree on all of its
//! instances within its time limit. Each test prints one PASS/FAIL line.

use convexkit::suites::find_suite;

fn criterion(id: u32, suite: &str) {
    let report = find_suite(suite).expect("known suite").run();
    println!("criterion {id:>2}: {report}");
    assert!(report.passed(), "criterion {id} failed: {report}");
}

#[test]
fn c01_digital_convexity_matches_witness_form() {
    criterion(1, "dconvex-witness");
}

#[test]
fn c02_digital_covers_match_total_domination() {
    criterion(2, "dconvex-cover-tds");
}

#[test]
fn c03_bipartite_digital_2_partitions() {
    criterion(3, "bipartite-dpartition");
}

#[test]
fn c04_p3_2_partitions_are_matching_cuts() {
    criterion(4, "matching-cut");
}

#[test]
fn c05_biclique_gadget_preserves_p3_partitions() {
    criterion(5, "p3-gadget-lift");
}

#[test]
fn c06_p3_equals_p3star_on_triangle_free_graphs() {
    criterion(6, "triangle-free");
}

#[test]
fn c07_split_graph_covers_become_partitions() {
    criterion(7, "split-cover-partition");
}

#[test]
fn c08_monophonic_structure() {
    criterion(8, "mono-structure");
}

#[test]
fn c09_monophonic_2_cover_decision() {
    criterion(9, "mono-2cover");
}

#[test]
fn c10_apex_gadget_matches_clique_partitions() {
    criterion(10, "mono-gadget");
}
