//! Statistics extraction and aggregation: golden numbers for the bundled
//! datasets, consistency laws between a run and its stats, aggregate
//! arithmetic, and the CSV table shape.

mod common;

use euler_merge::{aggregate, euler_merge, run_stats, stats::to_csv, RunStats};

use common::{random_system, XorShift64};

const FIXTURES: [&str; 4] = ["movies", "hooker_keith", "twitter", "southern_women"];

fn stats_for(name: &str) -> RunStats {
    run_stats(&euler_merge(&common::load_fixture(name)))
}

#[test]
fn movie_stats_golden() {
    let s = stats_for("movies");
    assert_eq!(
        s,
        RunStats {
            n_sets: 7,
            n_zones: 15,
            planarity_merges: 0,
            concurrency_merges: 2,
            total_merges: 2,
            final_concurrency: 0,
        }
    );
}

#[test]
fn fixture_stats_goldens() {
    let expect = [
        ("hooker_keith", 5, 12, 1, 1),
        ("twitter", 13, 32, 2, 1),
        ("southern_women", 14, 22, 1, 4),
    ];
    for (name, sets, zones, planarity, concurrency) in expect {
        let s = stats_for(name);
        assert_eq!(s.n_sets, sets, "{name}: set count");
        assert_eq!(s.n_zones, zones, "{name}: nonempty zone count");
        assert_eq!(s.planarity_merges, planarity, "{name}: planarity merges");
        assert_eq!(
            s.concurrency_merges, concurrency,
            "{name}: concurrency merges"
        );
    }
}

#[test]
fn stats_agree_with_the_run_they_summarize() {
    let mut rng = XorShift64::new(0x57A7);
    for _ in 0..60 {
        let system = random_system(&mut rng, 7, 12);
        let result = euler_merge(&system);
        let s = run_stats(&result);
        assert_eq!(s.n_sets, result.initial.active().len());
        assert_eq!(s.n_zones, result.initial.nonempty_zone_count());
        assert_eq!(s.total_merges, s.planarity_merges + s.concurrency_merges);
        assert_eq!(s.total_merges, result.log.steps.len());
        assert_eq!(s.final_concurrency, 0);
        assert!(s.n_sets >= result.final_graph.active().len());
    }
}

#[test]
fn aggregate_takes_arithmetic_means() {
    let a = RunStats {
        n_sets: 4,
        n_zones: 10,
        planarity_merges: 1,
        concurrency_merges: 2,
        total_merges: 3,
        final_concurrency: 0,
    };
    let b = RunStats {
        n_sets: 8,
        n_zones: 15,
        planarity_merges: 0,
        concurrency_merges: 5,
        total_merges: 5,
        final_concurrency: 0,
    };
    let agg = aggregate(&[a, b]);
    assert_eq!(agg.mean_sets, 6.0);
    assert_eq!(agg.mean_zones, 12.5);
    assert_eq!(agg.mean_planarity, 0.5);
    assert_eq!(agg.mean_concurrency_merges, 3.5);
    assert_eq!(agg.mean_total, 4.0);
}

#[test]
#[should_panic(expected = "at least one run")]
fn aggregate_rejects_an_empty_corpus() {
    aggregate(&[]);
}

#[test]
fn csv_table_golden_for_one_run() {
    let rows = vec![("movies".to_string(), stats_for("movies"))];
    assert_eq!(
        to_csv(&rows),
        "name,n_sets,n_zones,planarity_merges,concurrency_merges,total_merges,final_concurrency\n\
         movies,7,15,0,2,2,0\n\
         mean,7.00,15.00,0.00,2.00,2.00,0.00\n"
    );
}

#[test]
fn csv_table_covers_every_run_and_matches_the_aggregate() {
    let rows: Vec<(String, RunStats)> = FIXTURES
        .iter()
        .map(|name| (name.to_string(), stats_for(name)))
        .collect();
    let csv = to_csv(&rows);
    let lines: Vec<&str> = csv.trim_end().lines().collect();
    assert_eq!(lines.len(), rows.len() + 2, "header, one row per run, mean");
    assert_eq!(
        lines[0],
        "name,n_sets,n_zones,planarity_merges,concurrency_merges,total_merges,final_concurrency"
    );
    for ((name, s), line) in rows.iter().zip(&lines[1..]) {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 7);
        assert_eq!(fields[0], name);
        assert_eq!(fields[1], s.n_sets.to_string());
        assert_eq!(fields[2], s.n_zones.to_string());
        assert_eq!(fields[3], s.planarity_merges.to_string());
        assert_eq!(fields[4], s.concurrency_merges.to_string());
        assert_eq!(fields[5], s.total_merges.to_string());
        assert_eq!(fields[6], s.final_concurrency.to_string());
    }

    let stats: Vec<RunStats> = rows.iter().map(|(_, s)| s.clone()).collect();
    let agg = aggregate(&stats);
    let mean_fields: Vec<&str> = lines.last().unwrap().split(',').collect();
    assert_eq!(mean_fields[0], "mean");
    assert_eq!(mean_fields[1], format!("{:.2}", agg.mean_sets));
    assert_eq!(mean_fields[2], format!("{:.2}", agg.mean_zones));
    assert_eq!(mean_fields[3], format!("{:.2}", agg.mean_planarity));
    assert_eq!(
        mean_fields[4],
        format!("{:.2}", agg.mean_concurrency_merges)
    );
    assert_eq!(mean_fields[5], format!("{:.2}", agg.mean_total));
}

#[test]
fn empty_table_is_just_the_header() {
    assert_eq!(
        to_csv(&[]),
        "name,n_sets,n_zones,planarity_merges,concurrency_merges,total_merges,final_concurrency\n"
    );
}
