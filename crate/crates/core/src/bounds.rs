//! Auditing observed path lengths against the diameter upper bounds.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{Complex, Face};
use crate::error::{Error, Result};
use crate::ordering::Evaluator;
use crate::pathfinder::{
    enumerate_paths, is_nonrevisiting, path_stats, path_verdicts, DualPath, NodeBudget, StopRule,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Flags {
    pub normal: bool,
    pub pseudomanifold: bool,
    pub boundaryless: bool,
    pub flag: bool,
    pub k_banner: usize,
    pub vertex_decomposable: bool,
}

impl Flags {
    pub fn of(c: &Complex) -> Flags {
        let (pseudomanifold, boundary) = c.pseudomanifold_boundary();
        Flags {
            normal: c.is_normal(),
            pseudomanifold,
            boundaryless: pseudomanifold && boundary.is_empty(),
            flag: c.is_flag(),
            k_banner: c.bannerness(),
            vertex_decomposable: c.is_vertex_decomposable(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub value: u64,
    pub satisfied: bool,
}

/// A path longer than some bound, with everything needed to replay it.
#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub bound: String,
    pub value: u64,
    pub length: usize,
    pub complex: String,
    pub path: String,
    pub verdicts: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub d: usize,
    pub flags: Flags,
    /// Longest monotone conservative path seen towards any facet; absent when
    /// the complex is not normal.
    pub observed_max_path: Option<usize>,
    pub bounds: BTreeMap<String, BoundCheck>,
    /// Some target hit the node cap, so the observed maximum is a lower bound.
    pub partial: bool,
    pub explored: u64,
    pub violations: Vec<Violation>,
}

impl BoundReport {
    pub fn violated(&self) -> bool {
        self.bounds.values().any(|b| !b.satisfied)
    }
}

/// `n * 2^(e - 2)` rounded down, for `e >= 0`.
fn scaled(n: usize, e: usize) -> u64 {
    ((n as u64) << e) >> 2
}

pub fn larman_bound(n: usize, d: usize) -> u64 {
    scaled(n, d)
}

/// `n * 2^(d - 3)`, for pseudomanifolds without boundary of facet size at least 2.
pub fn closed_pseudomanifold_bound(n: usize, d: usize) -> u64 {
    scaled(n, d) >> 1
}

pub fn hirsch_bound(n: usize, d: usize) -> u64 {
    n.saturating_sub(d) as u64
}

pub fn banner_bound(n: usize, k: usize) -> u64 {
    scaled(n, k)
}

/// Longest path towards each target, in target order. Entries are `None`
/// where the budget ran out.
pub fn longest_per_target(c: &Complex, targets: &[Face], budget: &NodeBudget) -> Result<Vec<Option<usize>>> {
    targets
        .par_iter()
        .map(|t| {
            let ev = Evaluator::new(c, t)?;
            let mut starts = Vec::new();
            for f in c.facets() {
                starts.extend(ev.admissible_orderings(f)?);
            }
            match path_stats(&ev, &starts, StopRule::Exhausted, budget) {
                Ok(s) => Ok(Some(s.max.unwrap_or(0))),
                Err(Error::CapExceeded { .. }) => Ok(None),
                Err(e) => Err(e),
            }
        })
        .collect()
}

/// A longest path towards `target`, first in enumeration order.
pub fn longest_path(c: &Complex, target: &Face, budget: &NodeBudget) -> Result<Option<DualPath>> {
    let ev = Evaluator::new(c, target)?;
    let mut best: Option<DualPath> = None;
    for f in c.facets() {
        let e = enumerate_paths(&ev, f, StopRule::Exhausted, budget)?.complete(budget.cap())?;
        for p in e.paths {
            if best.as_ref().is_none_or(|b| p.len() > b.len()) {
                best = Some(p);
            }
        }
    }
    Ok(best)
}

pub fn audit(c: &Complex, budget: &NodeBudget) -> Result<BoundReport> {
    let flags = Flags::of(c);
    let (n, d) = (c.num_vertices(), c.facet_size());
    let before = budget.used();
    let mut report = BoundReport {
        n,
        d,
        observed_max_path: None,
        bounds: BTreeMap::new(),
        partial: false,
        explored: 0,
        violations: Vec::new(),
        flags,
    };
    if !report.flags.normal {
        return Ok(report);
    }
    let per_target = longest_per_target(c, c.facets(), budget)?;
    report.partial = per_target.iter().any(Option::is_none);
    let observed = per_target.iter().flatten().copied().max().unwrap_or(0);
    report.observed_max_path = Some(observed);
    report.explored = budget.used().saturating_sub(before);

    let mut bounds = vec![("larman", larman_bound(n, d))];
    if report.flags.boundaryless && d >= 2 {
        bounds.push(("pseudomanifold", closed_pseudomanifold_bound(n, d)));
    }
    if report.flags.flag {
        bounds.push(("hirsch", hirsch_bound(n, d)));
    }
    bounds.push(("banner", banner_bound(n, report.flags.k_banner)));

    let worst = per_target
        .iter()
        .enumerate()
        .filter_map(|(i, m)| m.map(|m| (m, i)))
        .max_by_key(|&(m, i)| (m, std::cmp::Reverse(i)));
    for (name, value) in bounds {
        let satisfied = observed as u64 <= value;
        report.bounds.insert(name.to_string(), BoundCheck { value, satisfied });
        if satisfied {
            continue;
        }
        let (_, i) = worst.expect("a violation needs an observed path");
        let witness = longest_path(c, c.facet(i), &NodeBudget::new(budget.cap()))?;
        if let Some(p) = witness {
            report.violations.push(violation(c, name, value, &p)?);
        }
    }
    Ok(report)
}

fn violation(c: &Complex, bound: &str, value: u64, p: &DualPath) -> Result<Violation> {
    let ev = Evaluator::new(c, &p.target)?;
    Ok(Violation {
        bound: bound.to_string(),
        value,
        length: p.len(),
        complex: crate::complex::emit_facet_list(c),
        path: p.render(c),
        verdicts: path_verdicts(&ev, p)?.iter().map(|v| v.render(c)).collect(),
    })
}

/// Every monotone conservative path towards a facet respects `n * 2^(k-2)`
/// with `k` the bannerness.
pub fn banner_bound_check(c: &Complex, budget: &NodeBudget) -> Result<bool> {
    let bound = banner_bound(c.num_vertices(), c.bannerness());
    let per_target = longest_per_target(c, c.facets(), budget)?;
    if per_target.iter().any(Option::is_none) {
        return Err(Error::CapExceeded { cap: budget.cap() });
    }
    Ok(per_target.into_iter().flatten().all(|m| m as u64 <= bound))
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct HirschReport {
    pub paths: u64,
    pub longest: usize,
    /// Rendered paths that revisit a vertex.
    pub revisiting: Vec<String>,
    /// Rendered paths longer than `n - d`.
    pub too_long: Vec<String>,
}

/// Enumerates every maximal monotone conservative path towards each target
/// and checks it is nonrevisiting and within `n - d`. Prefixes inherit both
/// properties, so maximal paths suffice.
pub fn hirsch_check(c: &Complex, targets: &[Face], budget: &NodeBudget) -> Result<HirschReport> {
    let limit = hirsch_bound(c.num_vertices(), c.facet_size()) as usize;
    let mut report = HirschReport::default();
    for t in targets {
        let ev = Evaluator::new(c, t)?;
        for f in c.facets() {
            let e = enumerate_paths(&ev, f, StopRule::Exhausted, budget)?.complete(budget.cap())?;
            for p in e.paths {
                report.paths += 1;
                report.longest = report.longest.max(p.len());
                if !is_nonrevisiting(&p.facet_sets()) {
                    report.revisiting.push(p.render(c));
                }
                if p.len() > limit {
                    report.too_long.push(p.render(c));
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::fixture;

    #[test]
    fn bound_values() {
        assert_eq!(larman_bound(13, 3), 26);
        assert_eq!(closed_pseudomanifold_bound(8, 2), 4);
        assert_eq!(closed_pseudomanifold_bound(17, 3), 17);
        assert_eq!(hirsch_bound(8, 3), 5);
        assert_eq!(banner_bound(8, 2), 8);
        assert_eq!(banner_bound(10, 3), 20);
    }

    #[test]
    fn simplex_audit() {
        let c = Complex::from_facets([["1", "2", "3"]]).unwrap();
        let r = audit(&c, &NodeBudget::default()).unwrap();
        assert_eq!(r.observed_max_path, Some(0));
        assert!(!r.violated());
        assert!(!r.partial);
    }

    #[test]
    fn fig3_audit() {
        let c = fixture("fig3").unwrap();
        let r = audit(&c, &NodeBudget::default()).unwrap();
        assert!(r.flags.flag && r.flags.normal);
        assert!(r.bounds["hirsch"].satisfied);
        assert!(r.observed_max_path.unwrap() <= 5);
        assert!(banner_bound_check(&c, &NodeBudget::default()).unwrap());
        let h = hirsch_check(&c, c.facets(), &NodeBudget::default()).unwrap();
        assert!(h.revisiting.is_empty() && h.too_long.is_empty());
    }

    #[test]
    fn cap_marks_partial() {
        let c = fixture("fig2").unwrap();
        let r = audit(&c, &NodeBudget::new(3)).unwrap();
        assert!(r.partial);
    }
}
