//! Roots CSV and witness files.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::Path;

use digitmult_core::roots::{export_roots, RootSystem};
use digitmult_core::{DigitSet, Witness};

/// Witnesses above this degree are written to their own file.
pub const SIDECAR_MIN_DEGREE: usize = 1024;

pub const ROOTS_HEADER: &str = "re,im,radius,mult,circle_status";

/// One line per root ball, sorted by real then imaginary part, floats with
/// 17 significant digits.
pub fn roots_csv(rs: &RootSystem) -> String {
    let mut out = String::from(ROOTS_HEADER);
    out.push('\n');
    for r in export_roots(rs) {
        writeln!(out, "{:.16e},{:.16e},{:.16e},{},{}", r.re, r.im, r.radius, r.multiplicity, r.circle_status.as_str())
            .expect("writing to a string");
    }
    out
}

pub fn write_witness(path: &Path, w: &Witness, d: &DigitSet) -> io::Result<()> {
    if let Some(dir) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    let mut s = w.encode(d);
    s.push('\n');
    fs::write(path, s)
}

pub fn read_witness(path: &Path) -> io::Result<Witness> {
    let s = fs::read_to_string(path)?;
    Witness::parse(&s).map_err(|e| io::Error::new(io::ErrorKind::InvalidData, format!("{}: {e}", path.display())))
}

/// A witness argument: the digit string itself, or `@path` to read it.
pub fn witness_arg(s: &str) -> io::Result<Witness> {
    match s.strip_prefix('@') {
        Some(p) => read_witness(Path::new(p)),
        None => Witness::parse(s).map_err(|e| io::Error::new(io::ErrorKind::InvalidInput, e.to_string())),
    }
}
