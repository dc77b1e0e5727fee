mod common;

use std::fs;

use common::*;
use scholarnet::synthetic::{generate, seed_from_env, SyntheticConfig};
use scholarnet::InputFormat;
use tempfile::tempdir;

fn path_str(p: &std::path::Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn metrics_happy_path() {
    let dir = tempdir().unwrap();
    let input = write_input(
        dir.path(),
        "pubs.csv",
        &[
            record("p1", "J1", 12, &["A. Smith", "B. Jones"]),
            record("p2", "J1", 3, &["A. Smith", "C. Wu"]),
            record("p3", "J2", 7, &["C. Wu"]),
        ],
        InputFormat::Csv,
    );
    let out_dir = dir.path().join("out");
    let out = scholarnet(&["metrics", "--input", path_str(&input), "--out", path_str(&out_dir)]);
    assert!(out.status.success(), "{}", stderr(&out));
    let entries: Vec<_> = fs::read_dir(&out_dir).unwrap().collect();
    assert_eq!(entries.len(), 1);
    let text = fs::read_to_string(out_dir.join("metrics.csv")).unwrap();
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn missing_input_names_the_path() {
    let dir = tempdir().unwrap();
    let missing = dir.path().join("no-such-file.csv");
    let out = scholarnet(&["metrics", "--input", path_str(&missing), "--out", path_str(dir.path())]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("no-such-file.csv"), "{}", stderr(&out));
}

#[test]
fn malformed_row_is_reported_with_its_line() {
    let dir = tempdir().unwrap();
    let input = dir.path().join("bad.csv");
    let mut text = String::from("pub_id,title,year,venue,citations,authors\n");
    for i in 2..7 {
        text.push_str(&format!("p{i},T,2005,J,1,A{i}\n"));
    }
    text.push_str("p7,T,2005,J,-3,A7\n");
    fs::write(&input, text).unwrap();
    let out_dir = dir.path().join("out");
    let out = scholarnet(&["metrics", "--input", path_str(&input), "--out", path_str(&out_dir)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("line 7"), "{}", stderr(&out));
    assert!(!out_dir.join("metrics.csv").exists());
}

#[test]
fn failed_run_leaves_no_partial_output() {
    let dir = tempdir().unwrap();
    let input = dir.path().join("dup.csv");
    fs::write(
        &input,
        "pub_id,title,year,venue,citations,authors\np1,T,2005,J,1,A\np1,T,2005,J,1,B\n",
    )
    .unwrap();
    let out_dir = dir.path().join("out");
    fs::create_dir(&out_dir).unwrap();
    let out = scholarnet(&["correlate", "--input", path_str(&input), "--out", path_str(&out_dir)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("p1"));
    assert_eq!(fs::read_dir(&out_dir).unwrap().count(), 0);
}

#[test]
fn correlate_monotone_corpus() {
    let dir = tempdir().unwrap();
    let input = write_input(dir.path(), "mono.csv", &monotone_records(), InputFormat::Csv);
    let out = scholarnet(&["correlate", "--input", path_str(&input), "--out", path_str(dir.path())]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = fs::read_to_string(dir.path().join("correlations.csv")).unwrap();
    let row = text.lines().find(|l| l.starts_with("degree,citation_count,")).unwrap();
    let fields: Vec<&str> = row.split(',').collect();
    assert_eq!(fields[2].parse::<f64>().unwrap(), 1.0);
    assert_eq!(fields[3].parse::<f64>().unwrap(), 0.0);
    assert_eq!(fields[5], "true");
}

#[test]
fn correlate_needs_three_authors() {
    let dir = tempdir().unwrap();
    let input = write_input(
        dir.path(),
        "two.csv",
        &[record("p1", "J", 4, &["a", "b"])],
        InputFormat::Csv,
    );
    let out = scholarnet(&["correlate", "--input", path_str(&input), "--out", path_str(dir.path())]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("need ≥ 3 authors"), "{}", stderr(&out));
}

#[test]
fn correlate_random_corpus_rows_are_bounded() {
    let dir = tempdir().unwrap();
    let records = generate(&SyntheticConfig::new(100, 250, seed_from_env(11)));
    let input = write_input(dir.path(), "rand.jsonl", &records, InputFormat::Jsonl);
    let out = scholarnet(&["correlate", "--input", path_str(&input), "--out", path_str(dir.path())]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = fs::read_to_string(dir.path().join("correlations.csv")).unwrap();
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 14);
    for row in rows {
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields[4], "100");
        if !fields[2].is_empty() {
            assert!(fields[2].parse::<f64>().unwrap().abs() <= 1.0);
            let p: f64 = fields[3].parse().unwrap();
            assert!((0.0..=1.0).contains(&p));
        }
    }
}

#[test]
fn top_by_h_index_puts_ego_first() {
    let dir = tempdir().unwrap();
    let input = write_input(dir.path(), "t2.csv", &table2_records(), InputFormat::Csv);
    let out = scholarnet(&[
        "top",
        "--input",
        path_str(&input),
        "--by",
        "h_index",
        "--top-n",
        "3",
        "--out",
        path_str(dir.path()),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = fs::read_to_string(dir.path().join("top_h_index.csv")).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("1,ego author,"), "{}", lines[1]);
    // CA1 (h=6) then CA2/CA3 (h=5) by name
    assert!(lines[2].starts_with("2,ca1,"));
    assert!(lines[3].starts_with("3,ca2,"));
}

#[test]
fn top_venues_aggregates() {
    let dir = tempdir().unwrap();
    let input = write_input(
        dir.path(),
        "v.csv",
        &[
            record("p1", "J1", 3, &["a"]),
            record("p2", "J1", 4, &["b"]),
            record("p3", "J2", 5, &["c"]),
        ],
        InputFormat::Csv,
    );
    let out = scholarnet(&[
        "top",
        "--input",
        path_str(&input),
        "--by",
        "publications",
        "--out",
        path_str(dir.path()),
        "--out-format",
        "markdown",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = fs::read_to_string(dir.path().join("top_publications.md")).unwrap();
    assert!(text.contains("| 1 | J1 | 2 | 7 |"), "{text}");
}

#[test]
fn top_rejects_unknown_measure() {
    let dir = tempdir().unwrap();
    let input = write_input(dir.path(), "x.csv", &monotone_records(), InputFormat::Csv);
    let out = scholarnet(&[
        "top",
        "--input",
        path_str(&input),
        "--by",
        "bogus",
        "--out",
        path_str(dir.path()),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("unknown measure `bogus`"));
}

#[test]
fn top_n_must_be_positive() {
    let out = scholarnet(&["top", "--input", "x.csv", "--by", "degree", "--top-n", "0"]);
    assert!(!out.status.success());
}

#[test]
fn drop_isolates_filters_rows() {
    let dir = tempdir().unwrap();
    let input = write_input(
        dir.path(),
        "iso.csv",
        &[
            record("p1", "J", 1, &["a", "b"]),
            record("p2", "J", 1, &["solo"]),
            record("p3", "J", 1, &["c", "a"]),
        ],
        InputFormat::Csv,
    );
    let run = |extra: &[&str], sub: &str| {
        let sub_dir = dir.path().join(sub);
        let mut args = vec!["metrics", "--input", path_str(&input), "--out", path_str(&sub_dir)];
        args.extend_from_slice(extra);
        let out = scholarnet(&args);
        assert!(out.status.success(), "{}", stderr(&out));
        fs::read_to_string(sub_dir.join("metrics.csv")).unwrap().lines().count() - 1
    };
    assert_eq!(run(&[], "all"), 4);
    assert_eq!(run(&["--drop-isolates"], "dropped"), 3);
}

#[test]
fn weighted_effectiveness_flag() {
    let dir = tempdir().unwrap();
    // ego a: alters b (w=2), c (w=1), b-c tied once -> weighted effective size 7/6
    let input = write_input(
        dir.path(),
        "w.csv",
        &[
            record("p1", "J", 1, &["a", "b"]),
            record("p2", "J", 1, &["a", "b", "c"]),
        ],
        InputFormat::Csv,
    );
    let out = scholarnet(&[
        "metrics",
        "--input",
        path_str(&input),
        "--effectiveness",
        "weighted",
        "--out",
        path_str(dir.path()),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = fs::read_to_string(dir.path().join("metrics.csv")).unwrap();
    let a = text.lines().find(|l| l.starts_with("a,")).unwrap();
    let eff: f64 = a.split(',').nth(6).unwrap().parse().unwrap();
    assert!((eff - 7.0 / 6.0).abs() < 1e-12, "{a}");
}

#[test]
fn aliases_and_graph_export() {
    let dir = tempdir().unwrap();
    let input = write_input(
        dir.path(),
        "al.csv",
        &[
            record("p1", "J", 1, &["Mike Thelwall", "B"]),
            record("p2", "J", 1, &["M. Thelwall", "B"]),
        ],
        InputFormat::Csv,
    );
    let aliases = dir.path().join("aliases.csv");
    fs::write(&aliases, "from_name,to_name\nMike Thelwall,M. Thelwall\n").unwrap();
    let out = scholarnet(&[
        "graph-export",
        "--input",
        path_str(&input),
        "--aliases",
        path_str(&aliases),
        "--out",
        path_str(dir.path()),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let edges = fs::read_to_string(dir.path().join("edges.csv")).unwrap();
    assert_eq!(edges, "src,dst,weight\n0,1,2\n");
}

#[test]
fn ingest_check_summarizes_jsonl() {
    let dir = tempdir().unwrap();
    let input = write_input(dir.path(), "t2.jsonl", &table2_records(), InputFormat::Jsonl);
    let out = scholarnet(&["ingest-check", "--input", path_str(&input)]);
    assert!(out.status.success(), "{}", stderr(&out));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("authors: 8"), "{stdout}");
    assert!(stdout.contains("co-authorship edges: 7"), "{stdout}");
}

#[test]
fn json_output_format() {
    let dir = tempdir().unwrap();
    let input = write_input(dir.path(), "m.csv", &monotone_records(), InputFormat::Csv);
    let out = scholarnet(&[
        "metrics",
        "--input",
        path_str(&input),
        "--out",
        path_str(dir.path()),
        "--out-format",
        "json",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = fs::read_to_string(dir.path().join("metrics.json")).unwrap();
    assert!(text.trim_start().starts_with('['));
    assert_eq!(text.matches("\"author\"").count(), 20);
}
