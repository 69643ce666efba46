use std::io::Write;

use super::roots::{expand_roots, real_roots};
use super::BranchError;
use crate::lagrangian::OMEGA;
use crate::polyalg::rational::rationalize;
use crate::polyalg::MultiPoly;

/// Root-finding tolerance used while tracing.
pub const TRACE_TOL: f64 = 1e-12;

/// Relative distance within which a grid value is replaced by a short fraction.
pub const GRID_REL: f64 = 1e-14;

/// One continuous dispersion branch sampled on a grid.
#[derive(Clone, Debug, PartialEq)]
pub struct BranchTrace {
    pub id: usize,
    /// `(k, omega)` with `k` strictly increasing.
    pub samples: Vec<(f64, f64)>,
    pub model: String,
    pub b: f64,
}

impl BranchTrace {
    pub fn omega_at(&self, k: f64) -> Option<f64> {
        self.samples.iter().find(|(x, _)| *x == k).map(|(_, w)| *w)
    }

    fn predict(&self, k: f64) -> f64 {
        let n = self.samples.len();
        let pts = &self.samples[n.saturating_sub(3)..];
        // Lagrange extrapolation through up to three trailing samples.
        pts.iter()
            .enumerate()
            .map(|(i, &(xi, yi))| {
                pts.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .fold(yi, |acc, (_, &(xj, _))| acc * (k - xj) / (xi - xj))
            })
            .sum()
    }
}

/// Order-preserving partial matching of sorted predictions to sorted roots
/// that minimizes the total distance over the largest possible matching.
fn match_sorted(pred: &[f64], roots: &[f64]) -> Vec<(usize, usize)> {
    let (n, m) = (pred.len(), roots.len());
    let r = n.min(m);
    // cost[i][j][c]: best cost using pred[..i], roots[..j] with c pairs; kept to c = r only.
    let inf = f64::INFINITY;
    let mut cost = vec![vec![vec![inf; r + 1]; m + 1]; n + 1];
    for row in cost.iter_mut() {
        for cell in row.iter_mut() {
            cell[0] = 0.0;
        }
    }
    for i in 1..=n {
        for j in 1..=m {
            for c in 1..=r {
                let pair = cost[i - 1][j - 1][c - 1] + (pred[i - 1] - roots[j - 1]).abs();
                cost[i][j][c] = pair.min(cost[i - 1][j][c]).min(cost[i][j - 1][c]);
            }
        }
    }
    let mut out = Vec::with_capacity(r);
    let (mut i, mut j, mut c) = (n, m, r);
    while c > 0 {
        let here = cost[i][j][c];
        if i > 0 && cost[i - 1][j][c] == here {
            i -= 1;
        } else if j > 0 && cost[i][j - 1][c] == here {
            j -= 1;
        } else {
            out.push((i - 1, j - 1));
            i -= 1;
            j -= 1;
            c -= 1;
        }
    }
    out.reverse();
    out
}

/// Real roots in `omega` at a fixed `k`, with multiplicity.
pub fn roots_at(dispersion: &MultiPoly, kvar: &str, k: f64) -> Result<Vec<f64>, BranchError> {
    let kr = rationalize(k, GRID_REL).ok_or(BranchError::NonFinite(k))?;
    let p = dispersion.substitute(kvar, &MultiPoly::constant(kr));
    Ok(expand_roots(&real_roots(&p, OMEGA, TRACE_TOL)?))
}

/// Threads the roots in `omega` over a `k` grid into continuous branches.
pub fn trace_branches(
    dispersion: &MultiPoly,
    kvar: &str,
    kgrid: &[f64],
    model: &str,
    b: f64,
) -> Result<Vec<BranchTrace>, BranchError> {
    if kgrid.is_empty() {
        return Err(BranchError::EmptyGrid);
    }
    if kgrid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(BranchError::GridNotIncreasing);
    }
    let extra: Vec<String> = dispersion
        .used_vars()
        .into_iter()
        .filter(|v| v != kvar && v != OMEGA)
        .collect();
    if let Some(v) = extra.first() {
        return Err(BranchError::Poly(crate::PolyError::Unassigned(v.clone())));
    }
    let mut done: Vec<BranchTrace> = Vec::new();
    let mut active: Vec<BranchTrace> = Vec::new();
    let mut next_id = 0;
    for &k in kgrid {
        let roots = roots_at(dispersion, kvar, k)?;
        let mut order: Vec<usize> = (0..active.len()).collect();
        let preds: Vec<f64> = active.iter().map(|t| t.predict(k)).collect();
        order.sort_by(|&a, &b| preds[a].total_cmp(&preds[b]).then(a.cmp(&b)));
        let sorted: Vec<f64> = order.iter().map(|&i| preds[i]).collect();
        let pairs = match_sorted(&sorted, &roots);
        let mut used_root = vec![false; roots.len()];
        let mut keep = vec![false; active.len()];
        for (pi, ri) in pairs {
            let t = order[pi];
            active[t].samples.push((k, roots[ri]));
            used_root[ri] = true;
            keep[t] = true;
        }
        let mut still = Vec::new();
        for (t, kept) in active.into_iter().zip(keep) {
            if kept {
                still.push(t);
            } else {
                done.push(t);
            }
        }
        active = still;
        for (ri, used) in used_root.into_iter().enumerate() {
            if !used {
                active.push(BranchTrace {
                    id: next_id,
                    samples: vec![(k, roots[ri])],
                    model: model.to_string(),
                    b,
                });
                next_id += 1;
            }
        }
    }
    done.extend(active);
    // Renumber so that ids follow the ordering of the first sample.
    done.sort_by(|a, b| {
        a.samples[0]
            .0
            .total_cmp(&b.samples[0].0)
            .then(a.samples[0].1.total_cmp(&b.samples[0].1))
    });
    for (i, t) in done.iter_mut().enumerate() {
        t.id = i;
    }
    Ok(done)
}

/// CSV with header `k,omega,branch,b,model`, rows ordered by branch then `k`.
pub fn write_csv<W: Write>(traces: &[BranchTrace], mut out: W) -> std::io::Result<()> {
    writeln!(out, "k,omega,branch,b,model")?;
    for t in traces {
        for (k, w) in &t.samples {
            writeln!(out, "{:.16e},{:.16e},{},{},{}", k, w, t.id, t.b, t.model)?;
        }
    }
    Ok(())
}
