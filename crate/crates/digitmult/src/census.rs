//! Batch census over a polynomial family, written as JSON lines.
//!
//! Workers pull polynomials from the shared enumeration; a single writer
//! appends records in enumeration order, so the output only depends on the
//! inputs (apart from `elapsed_ms`). An existing output file is resumed by
//! skipping the records it already holds.

use std::collections::BTreeMap;
use std::fs::{self, File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::{mpsc, Mutex};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use digitmult_core::survey::{census_entry, enumerate, CensusRecord, CensusSummary, FamilySpec, Target, Verdict};
use digitmult_core::{IntPolynomial, SearchConfig};

use crate::files::{read_witness, write_witness, SIDECAR_MIN_DEGREE};

#[derive(Debug, Clone)]
pub struct CensusOptions {
    pub spec: FamilySpec,
    pub target: Target,
    pub cfg: SearchConfig,
    pub threads: usize,
    /// Per polynomial; `None` waits for the caps.
    pub timeout: Option<Duration>,
    pub out: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WitnessField {
    Inline(String),
    File { file: String },
}

/// One output line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonRecord {
    pub poly: String,
    pub family: String,
    pub digits: String,
    pub verdict: String,
    pub witness_degree: Option<u64>,
    pub witness: Option<WitnessField>,
    pub deg2: Option<u64>,
    pub prefilter: String,
    pub vertices: u64,
    pub final_delta: Option<f64>,
    pub elapsed_ms: u64,
    pub reason: Option<String>,
}

#[derive(Debug, Clone)]
pub struct CensusReport {
    pub summary: CensusSummary,
    /// Records found in the file before this run.
    pub resumed: usize,
    pub written: usize,
}

/// Directory holding the sidecar witnesses of `out`.
pub fn sidecar_dir(out: &Path) -> PathBuf {
    let mut name = out.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(".witnesses");
    out.with_file_name(name)
}

fn to_json(rec: &CensusRecord, index: usize, out: &Path, target: Target) -> io::Result<JsonRecord> {
    let d = target.digits();
    let witness = match &rec.witness {
        None => None,
        Some(w) if w.degree() < SIDECAR_MIN_DEGREE => Some(WitnessField::Inline(w.encode(&d))),
        Some(w) => {
            let dir = sidecar_dir(out);
            let name = format!("{index:07}.txt");
            write_witness(&dir.join(&name), w, &d)?;
            let rel = Path::new(dir.file_name().expect("named")).join(name);
            Some(WitnessField::File { file: rel.to_string_lossy().into_owned() })
        }
    };
    Ok(JsonRecord {
        poly: rec.poly.to_string(),
        family: rec.family.as_str().into(),
        digits: rec.digits.clone(),
        verdict: rec.verdict.as_str().into(),
        witness_degree: rec.witness_degree(),
        witness,
        deg2: rec.deg2,
        prefilter: rec.prefilter.into(),
        vertices: rec.vertices,
        final_delta: rec.final_delta,
        elapsed_ms: rec.elapsed_ms,
        reason: rec.reason.clone(),
    })
}

fn invalid(msg: String) -> io::Error {
    io::Error::new(io::ErrorKind::InvalidData, msg)
}

/// Complete lines of the output file. A trailing partial line, left by an
/// interrupted write, is cut off.
fn load_for_resume(path: &Path) -> io::Result<Vec<JsonRecord>> {
    if !path.exists() {
        return Ok(Vec::new());
    }
    let bytes = fs::read(path)?;
    let keep = bytes.iter().rposition(|&b| b == b'\n').map_or(0, |i| i + 1);
    if keep < bytes.len() {
        OpenOptions::new().write(true).open(path)?.set_len(keep as u64)?;
    }
    load_records(path)
}

pub fn load_records(path: &Path) -> io::Result<Vec<JsonRecord>> {
    let mut out = Vec::new();
    for (i, line) in BufReader::new(File::open(path)?).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: JsonRecord =
            serde_json::from_str(&line).map_err(|e| invalid(format!("{}:{}: {e}", path.display(), i + 1)))?;
        out.push(rec);
    }
    Ok(out)
}

/// Counts by verdict, recomputed from the file.
pub fn summarize(path: &Path) -> io::Result<CensusSummary> {
    let mut s = CensusSummary::default();
    for r in load_records(path)? {
        let v: Verdict = r.verdict.parse().map_err(|e| invalid(format!("{e}")))?;
        s.add(v);
    }
    Ok(s)
}

/// Every `exists` record whose witness does not divide out exactly, as
/// `(poly, problem)` pairs.
pub fn verify_records(path: &Path, target: Target, cfg: &SearchConfig) -> io::Result<Vec<(String, String)>> {
    let mut bad = Vec::new();
    for r in load_records(path)? {
        if r.verdict != Verdict::Exists.as_str() {
            continue;
        }
        let w = match &r.witness {
            Some(WitnessField::Inline(s)) => digitmult_core::Witness::parse(s).map_err(|e| invalid(e.to_string()))?,
            Some(WitnessField::File { file }) => read_witness(&path.with_file_name(file))?,
            None => {
                bad.push((r.poly.clone(), "no witness".into()));
                continue;
            }
        };
        let poly: IntPolynomial = r.poly.parse().map_err(|e| invalid(format!("{e}")))?;
        let rec = CensusRecord {
            poly,
            family: r.family.parse().map_err(|e| invalid(format!("{e}")))?,
            digits: r.digits.clone(),
            verdict: Verdict::Exists,
            witness: Some(w),
            deg2: r.deg2,
            prefilter: "none",
            vertices: r.vertices,
            final_delta: r.final_delta,
            elapsed_ms: r.elapsed_ms,
            reason: None,
        };
        if !rec.witness_verifies(target, cfg) {
            bad.push((r.poly.clone(), "witness is not a multiple".into()));
        }
    }
    Ok(bad)
}

/// Runs the census into `opts.out`, resuming if it already holds a prefix
/// of this census. I/O problems abort before any search starts.
pub fn run_census(opts: &CensusOptions) -> io::Result<CensusReport> {
    let done = load_for_resume(&opts.out)?;
    let mut todo = enumerate(opts.spec).enumerate();
    for (i, rec) in done.iter().enumerate() {
        match todo.next() {
            Some((_, p)) if p.to_string() == rec.poly => {}
            _ => {
                return Err(invalid(format!(
                    "{}: line {} ({}) is not part of this census",
                    opts.out.display(),
                    i + 1,
                    rec.poly
                )))
            }
        }
    }
    if let Some(dir) = opts.out.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    let mut file = OpenOptions::new().create(true).append(true).open(&opts.out)?;
    let resumed = done.len();
    let source = Mutex::new(todo);
    let threads = opts.threads.max(1);
    let (tx, rx) = mpsc::channel::<(usize, CensusRecord)>();

    let written = std::thread::scope(|scope| -> io::Result<usize> {
        for _ in 0..threads {
            let tx = tx.clone();
            let source = &source;
            scope.spawn(move || loop {
                let next = source.lock().expect("enumeration lock").next();
                let Some((i, p)) = next else { break };
                let start = Instant::now();
                let mut interrupt = || opts.timeout.is_some_and(|t| start.elapsed() >= t);
                let mut rec = census_entry(&p, opts.spec.family, opts.target, &opts.cfg, &mut interrupt);
                rec.elapsed_ms = start.elapsed().as_millis() as u64;
                if tx.send((i, rec)).is_err() {
                    break;
                }
            });
        }
        drop(tx);

        let mut pending = BTreeMap::new();
        let mut next = resumed;
        let mut written = 0;
        for (i, rec) in rx {
            pending.insert(i, rec);
            while let Some(rec) = pending.remove(&next) {
                let line = serde_json::to_string(&to_json(&rec, next, &opts.out, opts.target)?)
                    .map_err(|e| invalid(e.to_string()))?;
                writeln!(file, "{line}")?;
                file.flush()?;
                next += 1;
                written += 1;
            }
        }
        Ok(written)
    })?;

    Ok(CensusReport { summary: summarize(&opts.out)?, resumed, written })
}
