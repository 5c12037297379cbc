use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use super::{mc_successors, DualPath, StopRule};
use crate::complex::{Complex, Face};
use crate::error::{Error, Result};
use crate::ordering::{Evaluator, OrderedFacet};

pub const DEFAULT_CAP: u64 = 10_000_000;

/// Shared count of expanded search nodes with a hard ceiling.
#[derive(Debug)]
pub struct NodeBudget {
    cap: u64,
    used: AtomicU64,
}

impl NodeBudget {
    pub fn new(cap: u64) -> Self {
        NodeBudget { cap, used: AtomicU64::new(0) }
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }

    /// Counts one node; false once the cap is passed.
    pub fn tick(&self) -> bool {
        self.used.fetch_add(1, Ordering::Relaxed) < self.cap
    }

    fn charge(&self) -> Result<()> {
        if self.tick() {
            Ok(())
        } else {
            Err(Error::CapExceeded { cap: self.cap })
        }
    }
}

impl Default for NodeBudget {
    fn default() -> Self {
        NodeBudget::new(DEFAULT_CAP)
    }
}

#[derive(Clone, Debug, Default)]
pub struct Enumeration {
    pub paths: Vec<DualPath>,
    pub explored: u64,
    pub dead_ends: u64,
    pub truncated: bool,
}

impl Enumeration {
    /// Fails with `CapExceeded` if the enumeration was cut short.
    pub fn complete(self, cap: u64) -> Result<Self> {
        if self.truncated {
            Err(Error::CapExceeded { cap })
        } else {
            Ok(self)
        }
    }
}

fn check_stop(ev: &Evaluator, stop: StopRule) -> Result<()> {
    if stop == StopRule::ReachFacet && !ev.complex().is_facet(ev.target()) {
        return Err(Error::NotAFacet(ev.complex().format_face(ev.target())));
    }
    Ok(())
}

fn ends_here(ev: &Evaluator, f: &OrderedFacet, stop: StopRule) -> bool {
    match stop {
        StopRule::MeetTarget => f.set().meets(ev.target()),
        StopRule::ReachFacet => f.set() == *ev.target(),
        StopRule::Exhausted => false,
    }
}

/// All monotone conservative paths from any admissible ordering of `start`.
pub fn enumerate_paths(
    ev: &Evaluator,
    start: &Face,
    stop: StopRule,
    budget: &NodeBudget,
) -> Result<Enumeration> {
    check_stop(ev, stop)?;
    let mut out = Enumeration::default();
    let before = budget.used();
    for f0 in ev.admissible_orderings(start)? {
        let mut stack = vec![f0];
        if !walk(ev, stop, &mut stack, &mut out, budget)? {
            out.truncated = true;
            break;
        }
    }
    out.explored = budget.used().saturating_sub(before);
    Ok(out)
}

fn walk(
    ev: &Evaluator,
    stop: StopRule,
    stack: &mut Vec<OrderedFacet>,
    out: &mut Enumeration,
    budget: &NodeBudget,
) -> Result<bool> {
    let here = stack.last().unwrap().clone();
    if ends_here(ev, &here, stop) {
        out.paths.push(DualPath::new(stack.clone(), ev.target().clone()));
        return Ok(true);
    }
    if !budget.tick() {
        return Ok(false);
    }
    let next = mc_successors(ev, &here)?;
    if next.is_empty() {
        if stop == StopRule::Exhausted {
            out.paths.push(DualPath::new(stack.clone(), ev.target().clone()));
        } else {
            out.dead_ends += 1;
        }
        return Ok(true);
    }
    for g in next {
        stack.push(g);
        let go_on = walk(ev, stop, stack, out, budget)?;
        stack.pop();
        if !go_on {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Counts and length extremes of complete paths, by memoized search over
/// ordered facets rather than path by path.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PathStats {
    pub count: u64,
    pub min: Option<usize>,
    pub max: Option<usize>,
    pub dead_ends: u64,
}

impl PathStats {
    fn absorb(&mut self, child: &PathStats, shift: usize) {
        self.count = self.count.saturating_add(child.count);
        self.dead_ends = self.dead_ends.saturating_add(child.dead_ends);
        if let Some(m) = child.min {
            self.min = Some(self.min.map_or(m + shift, |x| x.min(m + shift)));
        }
        if let Some(m) = child.max {
            self.max = Some(self.max.map_or(m + shift, |x| x.max(m + shift)));
        }
    }
}

pub fn path_stats(
    ev: &Evaluator,
    starts: &[OrderedFacet],
    stop: StopRule,
    budget: &NodeBudget,
) -> Result<PathStats> {
    check_stop(ev, stop)?;
    let mut memo = HashMap::new();
    let mut total = PathStats::default();
    for s in starts {
        let st = stats_from(ev, s, stop, budget, &mut memo)?;
        total.absorb(&st, 0);
    }
    Ok(total)
}

fn stats_from(
    ev: &Evaluator,
    f: &OrderedFacet,
    stop: StopRule,
    budget: &NodeBudget,
    memo: &mut HashMap<OrderedFacet, PathStats>,
) -> Result<PathStats> {
    if let Some(s) = memo.get(f) {
        return Ok(*s);
    }
    let ended = PathStats { count: 1, min: Some(0), max: Some(0), dead_ends: 0 };
    let result = if ends_here(ev, f, stop) {
        ended
    } else {
        budget.charge()?;
        let next = mc_successors(ev, f)?;
        if next.is_empty() {
            if stop == StopRule::Exhausted {
                ended
            } else {
                PathStats { dead_ends: 1, ..PathStats::default() }
            }
        } else {
            let mut acc = PathStats::default();
            for g in &next {
                let child = stats_from(ev, g, stop, budget, memo)?;
                acc.absorb(&child, 1);
            }
            acc
        }
    };
    memo.insert(f.clone(), result);
    Ok(result)
}

/// Which target sets `maxlength` ranges over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TargetScope {
    /// Vertex sets of facets.
    Facets,
    /// Every nonempty vertex subset.
    AllSubsets,
}

impl TargetScope {
    pub fn targets(self, complex: &Complex) -> Vec<Face> {
        match self {
            TargetScope::Facets => complex.facets().to_vec(),
            TargetScope::AllSubsets => {
                let all = Face::new(complex.vertices().collect());
                all.subsets().filter(|s| !s.is_empty()).collect()
            }
        }
    }
}

/// Longest monotone conservative path over all start facets, admissible
/// start orderings and targets in scope. Paths run until no monotone
/// conservative step is left, possibly past the first facet meeting the target.
pub fn maxlength(complex: &Complex, scope: TargetScope, budget: &NodeBudget) -> Result<usize> {
    longest_over_targets(complex, scope, StopRule::Exhausted, budget)
}

/// Like [`maxlength`], but paths start disjoint from the target and stop at
/// the first facet meeting it, as combinatorial segments do.
pub fn max_segment_length(complex: &Complex, scope: TargetScope, budget: &NodeBudget) -> Result<usize> {
    longest_over_targets(complex, scope, StopRule::MeetTarget, budget)
}

fn longest_over_targets(complex: &Complex, scope: TargetScope, stop: StopRule, budget: &NodeBudget) -> Result<usize> {
    let best = scope
        .targets(complex)
        .par_iter()
        .map(|t| -> Result<usize> {
            let ev = Evaluator::new(complex, t)?;
            let mut starts = Vec::new();
            for f in complex.facets() {
                if stop == StopRule::MeetTarget && f.meets(t) {
                    continue;
                }
                starts.extend(ev.admissible_orderings(f)?);
            }
            let stats = path_stats(&ev, &starts, stop, budget)?;
            Ok(stats.max.unwrap_or(0))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(best.into_iter().max().unwrap_or(0))
}
