use std::collections::HashMap;

use serde::Serialize;

use super::enumerate::{enumerate_paths, NodeBudget};
use super::segment::segment_trace;
use super::{conservative_successors, StopRule};
use crate::complex::{Complex, Face, VertexId};
use crate::error::{Error, Result};
use crate::ordering::Evaluator;

/// Whether some choice of orderings makes the facet sequence a monotone
/// conservative path (first ordering admissible).
pub fn mc_orderable(ev: &Evaluator, facets: &[Face]) -> Result<bool> {
    let Some(first) = facets.first() else {
        return Ok(false);
    };
    let mut live = ev.admissible_orderings(first)?;
    for next in &facets[1..] {
        let mut following = Vec::new();
        for o in &live {
            let gone = o.set().difference(next);
            if gone.len() != 1 || Some(gone.vertices()[0]) != o.last() {
                continue;
            }
            let here = ev.evaluate(o).0;
            for g in ev.max_index_reorder(next, o)? {
                if ev.evaluate(&g).0 < here {
                    following.push(g);
                }
            }
        }
        following.sort();
        following.dedup();
        if following.is_empty() {
            return Ok(false);
        }
        live = following;
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub facets: Vec<Vec<String>>,
    pub segment: bool,
    pub monotone_conservative: bool,
    pub trace: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct EquivalenceReport {
    /// Simple dual paths checked whose last facet is the only one meeting the target.
    pub paths_checked: u64,
    pub segments: u64,
    pub monotone_conservative: u64,
    pub discrepancies: Vec<Discrepancy>,
    pub truncated: bool,
}

impl EquivalenceReport {
    pub fn merge(&mut self, other: EquivalenceReport) {
        self.paths_checked += other.paths_checked;
        self.segments += other.segments;
        self.monotone_conservative += other.monotone_conservative;
        self.discrepancies.extend(other.discrepancies);
        self.truncated |= other.truncated;
    }
}

/// Compares segmenthood with monotone-conservativeness on every simple dual
/// path from `start` whose last facet is its only facet meeting `target`,
/// and separately confirms every enumerated monotone conservative path is a
/// segment. `cap` bounds the number of nodes visited by each of the two searches.
pub fn equivalence_check(complex: &Complex, start: &Face, target: &Face, cap: u64) -> Result<EquivalenceReport> {
    let ev = Evaluator::new(complex, target)?;
    if !complex.is_facet(start) {
        return Err(Error::NotAFacet(complex.format_face(start)));
    }
    let mut report = EquivalenceReport::default();
    let record = |facets: &[Face], report: &mut EquivalenceReport| -> Result<()> {
        let trace = segment_trace(complex, facets, target);
        let mc = mc_orderable(&ev, facets)?;
        report.paths_checked += 1;
        report.segments += trace.holds as u64;
        report.monotone_conservative += mc as u64;
        if trace.holds != mc {
            report.discrepancies.push(Discrepancy {
                facets: facets
                    .iter()
                    .map(|f| f.iter().map(|v| complex.label(v).to_string()).collect())
                    .collect(),
                segment: trace.holds,
                monotone_conservative: mc,
                trace: trace.render(),
            });
        }
        Ok(())
    };

    let mut budget = cap;
    let mut path = vec![start.clone()];
    let mut on_path = vec![false; complex.num_facets()];
    on_path[complex.facet_id(start).unwrap()] = true;
    let complete = simple_paths(complex, target, &mut path, &mut on_path, &mut budget, &mut |p| {
        record(p, &mut report)
    })?;
    report.truncated |= !complete;

    let mc_paths = enumerate_paths(&ev, start, StopRule::MeetTarget, &NodeBudget::new(cap))?;
    report.truncated |= mc_paths.truncated;
    for p in mc_paths.paths {
        let facets = p.facet_sets();
        let simple = {
            let mut seen = facets.clone();
            seen.sort();
            seen.dedup();
            seen.len() == facets.len()
        };
        if simple {
            continue;
        }
        let trace = segment_trace(complex, &facets, target);
        report.paths_checked += 1;
        report.monotone_conservative += 1;
        report.segments += trace.holds as u64;
        if !trace.holds {
            report.discrepancies.push(Discrepancy {
                facets: facets
                    .iter()
                    .map(|f| f.iter().map(|v| complex.label(v).to_string()).collect())
                    .collect(),
                segment: false,
                monotone_conservative: true,
                trace: trace.render(),
            });
        }
    }
    Ok(report)
}

fn simple_paths(
    complex: &Complex,
    target: &Face,
    path: &mut Vec<Face>,
    on_path: &mut [bool],
    budget: &mut u64,
    visit: &mut dyn FnMut(&[Face]) -> Result<()>,
) -> Result<bool> {
    let here = path.last().unwrap().clone();
    if here.meets(target) {
        visit(path)?;
        return Ok(true);
    }
    if *budget == 0 {
        return Ok(false);
    }
    *budget -= 1;
    let id = complex.facet_id(&here).unwrap();
    for &g in complex.dual_graph().neighbors(id) {
        if on_path[g] {
            continue;
        }
        on_path[g] = true;
        path.push(complex.facet(g).clone());
        let ok = simple_paths(complex, target, path, on_path, budget, visit)?;
        path.pop();
        on_path[g] = false;
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// No vertex leaves the path and later comes back.
pub fn is_nonrevisiting(facets: &[Face]) -> bool {
    let mut spans: HashMap<VertexId, (usize, usize, usize)> = HashMap::new();
    for (i, f) in facets.iter().enumerate() {
        for v in f.iter() {
            let e = spans.entry(v).or_insert((i, i, 0));
            e.1 = i;
            e.2 += 1;
        }
    }
    spans.values().all(|&(lo, hi, n)| hi - lo + 1 == n)
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct PseudomanifoldReport {
    pub targets: u64,
    pub states: u64,
    pub steps: u64,
    /// (target, from, to) triples of conservative steps that are not monotone.
    pub counterexamples: Vec<(String, String, String)>,
}

/// Checks that every conservative step from an admissible ordered facet is
/// monotone. For facet targets every state except the target itself is used
/// (nothing is below its all-zero vector); for other targets only states
/// disjoint from the target.
pub fn conservative_implies_monotone_check(complex: &Complex, targets: &[Face]) -> Result<PseudomanifoldReport> {
    if !complex.is_pseudomanifold() {
        return Err(Error::NotPseudomanifold);
    }
    let mut report = PseudomanifoldReport::default();
    for t in targets {
        let ev = Evaluator::new(complex, t)?;
        let facet_target = complex.is_facet(t);
        report.targets += 1;
        for f in complex.facets() {
            if (facet_target && f == t) || (!facet_target && f.meets(t)) {
                continue;
            }
            for o in ev.admissible_orderings(f)? {
                report.states += 1;
                let here = ev.evaluate(&o).0;
                for g in conservative_successors(&ev, &o)? {
                    report.steps += 1;
                    if ev.evaluate(&g).0 >= here {
                        report.counterexamples.push((
                            complex.format_face(t),
                            o.display(complex),
                            g.display(complex),
                        ));
                    }
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nonrevisiting_examples() {
        let f = |v: &[u32]| Face::new(v.to_vec());
        assert!(is_nonrevisiting(&[f(&[1, 2])]));
        assert!(is_nonrevisiting(&[f(&[1, 2]), f(&[2, 3]), f(&[3, 4])]));
        assert!(!is_nonrevisiting(&[f(&[1, 2]), f(&[2, 3]), f(&[1, 3])]));
    }

    #[test]
    fn fan_is_rejected_as_pseudomanifold() {
        let c = Complex::from_facets([["1", "2"], ["1", "3"], ["1", "4"]]).unwrap();
        assert_eq!(
            conservative_implies_monotone_check(&c, &[c.face(&["4"]).unwrap()]).unwrap_err(),
            Error::NotPseudomanifold
        );
    }

    #[test]
    fn cycle_conservative_steps_are_monotone() {
        let c = Complex::from_facets([["1", "2"], ["2", "3"], ["3", "4"], ["4", "5"], ["1", "5"]]).unwrap();
        let report = conservative_implies_monotone_check(&c, c.facets()).unwrap();
        assert!(report.steps > 0);
        assert!(report.counterexamples.is_empty(), "{:?}", report.counterexamples);
    }

    #[test]
    fn fig3_equivalence() {
        let c = Complex::from_facets([
            ["a1", "a2", "a3"],
            ["a1", "a2", "a4"],
            ["a1", "a3", "a5"],
            ["a1", "a4", "a6"],
            ["a1", "a5", "a7"],
            ["a1", "a6", "a7"],
            ["a6", "a7", "a8"],
        ])
        .unwrap();
        let report = equivalence_check(&c, &c.face(&["a1", "a2", "a3"]).unwrap(), &c.face(&["a8"]).unwrap(), 100_000)
            .unwrap();
        assert!(report.paths_checked > 1);
        assert!(report.monotone_conservative >= 1);
        assert!(report.discrepancies.is_empty(), "{:?}", report.discrepancies);
    }
}
