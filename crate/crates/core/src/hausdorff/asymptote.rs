use serde::{Deserialize, Serialize};

use crate::epsgeo::binary_form_roots;
use crate::error::{Error, Result};
use crate::poly::BiPoly;

/// Directions closer than this (projective distance) are paired.
pub const PAIR_TOL: f64 = 1e-3;
const REAL_DIR_TOL: f64 = 1e-7;

/// The line `normal . (x, y) = offset` tangent to the curve at a real point
/// at infinity; `dir = (a, b)` is the unit direction with `a > 0` (or
/// `a = 0, b > 0`) and `normal = (-b, a)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Asymptote {
    pub dir: (f64, f64),
    pub normal: (f64, f64),
    pub offset: f64,
}

impl Asymptote {
    pub fn distance_to(&self, x: f64, y: f64) -> f64 {
        (self.normal.0 * x + self.normal.1 * y - self.offset).abs()
    }
}

/// Real asymptotes of `f` (tangents at its simple real points at infinity).
pub fn asymptotes(f: &BiPoly) -> Result<Vec<Asymptote>> {
    let d = f.total_degree();
    if d == 0 {
        return Ok(vec![]);
    }
    let fd = f.form(d);
    let fd1 = f.form(d - 1);
    let gx = fd.partial(1, 0);
    let gy = fd.partial(0, 1);
    let mut out = Vec::new();
    for (a, b) in binary_form_roots(&fd, d)? {
        let n = (a.norm_sqr() + b.norm_sqr()).sqrt();
        let (a, b) = (a / n, b / n);
        // rotate the representative so its largest entry is real
        let phase = if a.norm() >= b.norm() { a.conj() / a.norm() } else { b.conj() / b.norm() };
        let (a, b) = (a * phase, b * phase);
        if a.im.abs() > REAL_DIR_TOL || b.im.abs() > REAL_DIR_TOL {
            continue;
        }
        let (mut a, mut b) = (a.re, b.re);
        if a < 0.0 || (a == 0.0 && b < 0.0) {
            a = -a;
            b = -b;
        }
        let g = (gx.eval(a, b), gy.eval(a, b));
        let normal = (-b, a);
        let gn = g.0 * normal.0 + g.1 * normal.1;
        if gn.abs() <= 1e-12 * (1.0 + f.inf_norm()) {
            // singular point at infinity: no single tangent
            continue;
        }
        out.push(Asymptote { dir: (a, b), normal, offset: -fd1.eval(a, b) / gn });
    }
    out.sort_by(|p, q| p.dir.1.partial_cmp(&q.dir.1).unwrap());
    Ok(out)
}

/// Pairs each asymptote of `f` with the one of `fbar` in the nearest
/// direction and returns the offset gap of every pair.
pub fn paired_gaps(f: &BiPoly, fbar: &BiPoly) -> Result<Vec<f64>> {
    let la = asymptotes(f)?;
    let lb = asymptotes(fbar)?;
    if la.len() != lb.len() {
        return Err(Error::NotParallel);
    }
    let mut used = vec![false; lb.len()];
    let mut gaps = Vec::with_capacity(la.len());
    for l in &la {
        let best = lb
            .iter()
            .enumerate()
            .filter(|(k, _)| !used[*k])
            .map(|(k, m)| (k, (l.dir.0 * m.dir.1 - l.dir.1 * m.dir.0).abs()))
            .min_by(|x, y| x.1.partial_cmp(&y.1).unwrap());
        match best {
            Some((k, dist)) if dist <= PAIR_TOL => {
                used[k] = true;
                let m = &lb[k];
                let s = l.normal.0 * m.normal.0 + l.normal.1 * m.normal.1;
                gaps.push((l.offset - s.signum() * m.offset).abs());
            }
            _ => return Err(Error::NotParallel),
        }
    }
    Ok(gaps)
}

/// Largest distance between paired asymptotes; `None` when `f` has no real
/// asymptote.
pub fn eta(f: &BiPoly, fbar: &BiPoly) -> Result<Option<f64>> {
    let gaps = paired_gaps(f, fbar)?;
    Ok(gaps.into_iter().reduce(f64::max))
}
