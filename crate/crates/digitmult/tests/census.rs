use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use digitmult::census::{load_records, run_census, verify_records, CensusOptions, JsonRecord};
use digitmult_core::survey::{reciprocal_partner, Family, FamilySpec, Target, Verdict};
use digitmult_core::{IntPolynomial, SearchConfig};

fn options(family: Family, lo: u32, hi: u32, target: Target, out: &Path) -> CensusOptions {
    CensusOptions {
        spec: FamilySpec::new(family, lo, hi).unwrap(),
        target,
        cfg: SearchConfig { max_vertices: 2_000_000, ..SearchConfig::default() },
        threads: 2,
        timeout: None,
        out: out.to_path_buf(),
    }
}

/// File contents with every `elapsed_ms` zeroed.
fn normalized(path: &Path) -> Vec<JsonRecord> {
    load_records(path)
        .unwrap()
        .into_iter()
        .map(|mut r| {
            r.elapsed_ms = 0;
            r
        })
        .collect()
}

#[test]
fn totals_and_witnesses() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("n6.jsonl");
    let opts = options(Family::Newman, 1, 6, Target::LittlewoodMultiple, &out);
    let report = run_census(&opts).unwrap();
    let size: u64 = (1..=6).map(|d| opts.spec.size_of_degree(d)).sum();
    assert_eq!(report.summary.total(), size);
    assert_eq!(report.written as u64, size);
    assert_eq!(load_records(&out).unwrap().len() as u64, size);
    assert!(verify_records(&out, opts.target, &opts.cfg).unwrap().is_empty());
    // every Newman polynomial of degree at most 8 has a Littlewood multiple
    assert_eq!(report.summary.exists_total(), size);
}

#[test]
fn resume_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let full = dir.path().join("full.jsonl");
    let part = dir.path().join("part.jsonl");
    run_census(&options(Family::LittlewoodMonic, 1, 5, Target::NewmanMultiple, &full)).unwrap();

    let text = fs::read_to_string(&full).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    let mut f = fs::File::create(&part).unwrap();
    for l in &lines[..lines.len() / 2] {
        writeln!(f, "{l}").unwrap();
    }
    // half-written record, as left by a kill mid-write
    write!(f, "{}", &lines[lines.len() / 2][..20]).unwrap();
    drop(f);

    let mut opts = options(Family::LittlewoodMonic, 1, 5, Target::NewmanMultiple, &part);
    opts.threads = 1;
    let report = run_census(&opts).unwrap();
    assert_eq!(report.resumed, lines.len() / 2);
    assert_eq!(normalized(&part), normalized(&full));
}

#[test]
fn resume_rejects_foreign_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("other.jsonl");
    run_census(&options(Family::Newman, 1, 3, Target::LittlewoodMultiple, &out)).unwrap();
    let err = run_census(&options(Family::LittlewoodMonic, 1, 3, Target::NewmanMultiple, &out)).unwrap_err();
    assert!(err.to_string().contains("not part of this census"), "{err}");
}

#[test]
fn verdicts_respect_reciprocal_pairs() {
    let dir = tempfile::tempdir().unwrap();
    let all = dir.path().join("all.jsonl");
    let half = dir.path().join("half.jsonl");
    run_census(&options(Family::LittlewoodMonic, 1, 5, Target::NewmanMultiple, &all)).unwrap();
    let verdicts: HashMap<String, String> =
        load_records(&all).unwrap().into_iter().map(|r| (r.poly, r.verdict)).collect();
    for (poly, verdict) in &verdicts {
        let p: IntPolynomial = poly.parse().unwrap();
        let q = reciprocal_partner(&p).unwrap().to_string();
        assert_eq!(verdicts.get(&q), Some(verdict), "{poly} vs {q}");
    }

    let opts = options(Family::LittlewoodMonic, 1, 5, Target::NewmanMultiple, &half);
    let opts = CensusOptions { spec: opts.spec.dedup(true), ..opts };
    run_census(&opts).unwrap();
    let kept = load_records(&half).unwrap();
    assert!(kept.len() < verdicts.len());
    for r in &kept {
        assert_eq!(verdicts.get(&r.poly), Some(&r.verdict), "{}", r.poly);
    }
    assert!(kept.iter().any(|r| r.verdict.parse::<Verdict>().unwrap().has_multiple()));
}
