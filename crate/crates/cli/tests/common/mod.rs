#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use scholarnet::ingest::write_records;
use scholarnet::{InputFormat, PublicationRecord};

pub const EGO: &str = "Ego Author";
/// Co-author h-indices and collaboration counts of the worked ego example.
pub const TABLE2_H: [u64; 7] = [6, 5, 5, 3, 3, 1, 1];
pub const TABLE2_W: [usize; 7] = [4, 3, 2, 3, 1, 2, 2];

pub fn record(id: &str, venue: &str, citations: u64, authors: &[&str]) -> PublicationRecord {
    PublicationRecord {
        pub_id: id.to_string(),
        title: format!("Paper {id}"),
        year: 2005,
        venue: venue.to_string(),
        citations,
        authors: authors.iter().map(|s| s.to_string()).collect(),
        keywords: None,
    }
}

/// An ego with seven co-authors whose h-indices and tie strengths reproduce the worked example.
///
/// Co-author `j` has `h_j` solo papers with `h_j` citations each and `w_j` uncited joint papers
/// with the ego, so its h-index is exactly `h_j`. The ego has ten solo papers with ten citations,
/// giving it the highest h-index (10) in the corpus.
pub fn table2_records() -> Vec<PublicationRecord> {
    let mut out = Vec::new();
    for i in 0..10 {
        out.push(record(&format!("ego-solo-{i}"), "J-Ego", 10, &[EGO]));
    }
    for (j, (&h, &w)) in TABLE2_H.iter().zip(&TABLE2_W).enumerate() {
        let name = format!("CA{}", j + 1);
        for i in 0..h {
            out.push(record(&format!("ca{}-solo-{i}", j + 1), "J-Solo", h, &[&name]));
        }
        for i in 0..w {
            out.push(record(&format!("ca{}-joint-{i}", j + 1), "J-Joint", 0, &[EGO, &name]));
        }
    }
    out
}

/// Paper `i` (i = 1..=5) has `i + 1` fresh authors and `10 i` citations, so every author's degree
/// is `i` and citation count `10 i`.
pub fn monotone_records() -> Vec<PublicationRecord> {
    let mut out = Vec::new();
    for i in 1..=5u64 {
        let names: Vec<String> = (0..=i).map(|k| format!("m{i}-{k}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        out.push(record(&format!("mono{i}"), "J", 10 * i, &refs));
    }
    out
}

pub fn write_input(dir: &Path, name: &str, records: &[PublicationRecord], format: InputFormat) -> PathBuf {
    let path = dir.join(name);
    let file = std::fs::File::create(&path).unwrap();
    write_records(file, records, format).unwrap();
    path
}

pub fn scholarnet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scholarnet"))
        .args(args)
        .output()
        .expect("failed to spawn scholarnet")
}

pub fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}
