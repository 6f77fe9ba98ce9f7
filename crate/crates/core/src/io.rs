//! Text formats: `CURVE v1` for bivariate polynomials, `PARAM v1` for
//! parametrizations, and the family manifest. Numbers are printed in their
//! shortest round-trip form, so write-then-read is bit-exact.

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::familygen::{FamilyMember, MemberStatus};
use crate::paramalg::Parametrization;
use crate::poly::{BiPoly, RatFun, UniPoly};

fn parse_f64(s: &str, line: usize) -> Result<f64> {
    s.parse::<f64>().map_err(|_| Error::Parse(format!("line {line}: bad number {s:?}")))
}

fn parse_usize(s: &str, line: usize) -> Result<usize> {
    s.parse::<usize>().map_err(|_| Error::Parse(format!("line {line}: bad index {s:?}")))
}

pub fn curve_to_string(f: &BiPoly) -> String {
    let mut out = format!("CURVE v1 {} {}\n", f.degx(), f.degy());
    for (i, j, c) in f.terms() {
        out.push_str(&format!("{i} {j} {c:?}\n"));
    }
    out
}

pub fn parse_curve(text: &str) -> Result<BiPoly> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines.next().ok_or_else(|| Error::Parse("empty curve file".into()))?;
    let h: Vec<&str> = header.split_whitespace().collect();
    if h.len() != 4 || h[0] != "CURVE" || h[1] != "v1" {
        return Err(Error::Parse(format!("bad header {header:?}")));
    }
    let (dx, dy) = (parse_usize(h[2], 1)?, parse_usize(h[3], 1)?);
    let mut terms = Vec::new();
    for (n, l) in lines {
        let n = n + 1;
        let w: Vec<&str> = l.split_whitespace().collect();
        if !(3..=4).contains(&w.len()) {
            return Err(Error::Parse(format!("line {n}: expected `i j re [im]`")));
        }
        let (i, j) = (parse_usize(w[0], n)?, parse_usize(w[1], n)?);
        if i > dx || j > dy {
            return Err(Error::Parse(format!("line {n}: monomial ({i},{j}) exceeds declared degrees")));
        }
        if w.len() == 4 && parse_f64(w[3], n)? != 0.0 {
            return Err(Error::Parse(format!("line {n}: complex coefficients are not supported")));
        }
        terms.push((i, j, parse_f64(w[2], n)?));
    }
    Ok(BiPoly::from_terms(&terms))
}

fn coeff_line(label: &str, p: &UniPoly) -> String {
    let mut s = label.to_string();
    for c in p.coeffs() {
        s.push_str(&format!(" {c:?}"));
    }
    if p.is_zero() {
        s.push_str(" 0.0");
    }
    s
}

pub fn param_to_string(p: &Parametrization) -> String {
    [
        "PARAM v1".to_string(),
        coeff_line("num1", p.p1.num()),
        coeff_line("den1", p.p1.den()),
        coeff_line("num2", p.p2.num()),
        coeff_line("den2", p.p2.den()),
    ]
    .join("\n")
        + "\n"
}

pub fn parse_param(text: &str) -> Result<Parametrization> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    match lines.next() {
        Some((_, l)) if l.trim() == "PARAM v1" => {}
        _ => return Err(Error::Parse("missing `PARAM v1` header".into())),
    }
    let mut polys: [Option<UniPoly>; 4] = Default::default();
    for (n, l) in lines {
        let n = n + 1;
        let mut w = l.split_whitespace();
        let slot = match w.next() {
            Some("num1") => 0,
            Some("den1") => 1,
            Some("num2") => 2,
            Some("den2") => 3,
            other => return Err(Error::Parse(format!("line {n}: unknown label {other:?}"))),
        };
        let cs = w.map(|s| parse_f64(s, n)).collect::<Result<Vec<_>>>()?;
        polys[slot] = Some(UniPoly::new(cs));
    }
    let [Some(n1), Some(d1), Some(n2), Some(d2)] = polys else {
        return Err(Error::Parse("PARAM v1 needs num1, den1, num2 and den2".into()));
    };
    Parametrization::new(RatFun::new(n1, d1)?, RatFun::new(n2, d2)?)
}

/// One manifest row: `i j r_ij r1 r2 r3 status`.
#[derive(Clone, Debug, PartialEq)]
pub struct ManifestEntry {
    pub i: u32,
    pub j: usize,
    pub r_ij: u32,
    pub r1: u32,
    pub r2: u32,
    pub r3: u32,
    pub status: MemberStatus,
}

impl ManifestEntry {
    pub fn curve_file_name(&self) -> String {
        format!("curve_{}_{}.curve", self.i, self.j)
    }
}

pub fn manifest_to_string(members: &[FamilyMember]) -> String {
    members.iter().map(|m| m.manifest_line() + "\n").collect()
}

pub fn parse_manifest(text: &str) -> Result<Vec<ManifestEntry>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(n, l)| {
            let w: Vec<&str> = l.split_whitespace().collect();
            if w.len() != 7 {
                return Err(Error::Parse(format!("line {}: expected 7 fields", n + 1)));
            }
            let num = |s: &str| s.parse::<u32>().map_err(|_| Error::Parse(format!("line {}: bad integer {s:?}", n + 1)));
            Ok(ManifestEntry {
                i: num(w[0])?,
                j: num(w[1])? as usize,
                r_ij: num(w[2])?,
                r1: num(w[3])?,
                r2: num(w[4])?,
                r3: num(w[5])?,
                status: w[6].parse().map_err(Error::Parse)?,
            })
        })
        .collect()
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

pub fn read_curve(path: &Path) -> Result<BiPoly> {
    parse_curve(&fs::read_to_string(path)?)
}

pub fn read_param(path: &Path) -> Result<Parametrization> {
    parse_param(&fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curve_round_trip_is_exact() {
        let f = BiPoly::from_terms(&[(0, 0, 0.1), (2, 1, -1.0 / 3.0), (0, 4, 1e-300), (3, 0, 12345.678)]);
        let back = parse_curve(&curve_to_string(&f)).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn imaginary_zero_is_accepted() {
        let f = parse_curve("CURVE v1 1 1\n1 1 2.5 0\n0 0 -1\n").unwrap();
        assert_eq!(f.coeff(1, 1), 2.5);
        assert!(parse_curve("CURVE v1 1 1\n1 1 2.5 1\n").is_err());
    }

    #[test]
    fn rejects_bad_header() {
        assert!(parse_curve("CURVE v2 1 1\n").is_err());
        assert!(parse_curve("").is_err());
    }

    #[test]
    fn manifest_round_trip() {
        let text = "1 2 50 3 4 5 rational\n2 6 0 0 0 0 hypothesis_failed:eps_reducible\n";
        let m = parse_manifest(text).unwrap();
        assert_eq!(m[1].status, MemberStatus::HypothesisFailed("eps_reducible".into()));
        assert_eq!(m[0].curve_file_name(), "curve_1_2.curve");
    }
}
