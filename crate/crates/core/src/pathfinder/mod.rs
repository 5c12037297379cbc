//! Step semantics, path builders, enumeration and the segment checker.

mod checks;
mod enumerate;
mod segment;

use std::fmt;

use log::info;
use serde::Serialize;

use crate::complex::{Complex, Face, VertexId};
use crate::error::{Error, Result};
use crate::ordering::{DistanceVector, Evaluator, OrderedFacet};

pub use checks::{
    conservative_implies_monotone_check, equivalence_check, is_nonrevisiting, mc_orderable,
    Discrepancy, EquivalenceReport, PseudomanifoldReport,
};
pub use enumerate::{
    enumerate_paths, max_segment_length, maxlength, path_stats, Enumeration, NodeBudget, PathStats, TargetScope,
    DEFAULT_CAP,
};
pub use segment::{is_combinatorial_segment, segment_trace, SegmentNode, SegmentTrace};

/// A dual path of ordered facets with the target set it is measured against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualPath {
    pub steps: Vec<OrderedFacet>,
    pub target: Face,
}

impl DualPath {
    pub fn new(steps: Vec<OrderedFacet>, target: Face) -> Self {
        DualPath { steps, target }
    }

    /// Number of steps (one less than the number of facets).
    pub fn len(&self) -> usize {
        self.steps.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.steps.len() <= 1
    }

    pub fn first(&self) -> &OrderedFacet {
        &self.steps[0]
    }

    pub fn last(&self) -> &OrderedFacet {
        self.steps.last().unwrap()
    }

    pub fn facet_sets(&self) -> Vec<Face> {
        self.steps.iter().map(|s| s.set()).collect()
    }

    /// Checks that every facet exists and consecutive facets are adjacent.
    pub fn validate(&self, complex: &Complex) -> Result<()> {
        if self.steps.is_empty() {
            return Err(Error::InvalidParams("empty path".into()));
        }
        for s in &self.steps {
            let set = s.set();
            if set.len() != s.len() || !complex.is_facet(&set) {
                return Err(Error::NotAFacet(s.display(complex)));
            }
        }
        for w in self.steps.windows(2) {
            let (a, b) = (w[0].set(), w[1].set());
            if a.difference(&b).len() != 1 {
                return Err(Error::NotAdjacent(w[0].display(complex), w[1].display(complex)));
            }
        }
        Ok(())
    }

    /// Text form: a `target:` header, one ordered facet per line, a `length:` trailer.
    pub fn render(&self, complex: &Complex) -> String {
        let mut out = format!("target: {}\n", complex.format_face(&self.target));
        for s in &self.steps {
            out.push_str(&s.display(complex));
            out.push('\n');
        }
        out.push_str(&format!("length: {}\n", self.len()));
        out
    }

    /// Parses the output of [`DualPath::render`].
    pub fn parse(complex: &Complex, text: &str) -> Result<DualPath> {
        let mut target = None;
        let mut steps = Vec::new();
        let mut declared = None;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let err = |message: String| Error::Parse { line: i + 1, message };
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("target:") {
                target = Some(parse_face_set(complex, rest.trim()).map_err(|e| err(e.to_string()))?);
            } else if let Some(rest) = line.strip_prefix("length:") {
                declared = Some(
                    rest.trim()
                        .parse::<usize>()
                        .map_err(|e| err(format!("bad length: {e}")))?,
                );
            } else {
                steps.push(parse_ordered_facet(complex, line).map_err(|e| err(e.to_string()))?);
            }
        }
        let target = target.ok_or(Error::Parse { line: 0, message: "missing target line".into() })?;
        let path = DualPath::new(steps, target);
        path.validate(complex)?;
        if let Some(n) = declared {
            if n != path.len() {
                return Err(Error::Parse {
                    line: 0,
                    message: format!("declared length {n} but path has {}", path.len()),
                });
            }
        }
        Ok(path)
    }
}

/// Parses `{a1,a2}` into a face (vertices must exist; need not be a face).
pub fn parse_face_set(complex: &Complex, text: &str) -> Result<Face> {
    let inner = text
        .trim()
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| Error::InvalidParams(format!("expected {{...}}, got {text:?}")))?;
    let labels: Vec<&str> = inner.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    complex.face(&labels)
}

/// Parses `(a1 a4 a2)` into an ordered facet of `complex`.
pub fn parse_ordered_facet(complex: &Complex, text: &str) -> Result<OrderedFacet> {
    let inner = text
        .trim()
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| Error::InvalidParams(format!("expected (...), got {text:?}")))?;
    let labels: Vec<&str> = inner.split_whitespace().collect();
    OrderedFacet::from_labels(complex, &labels)
}

/// Diagnostics for one step of a path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepVerdict {
    pub index: usize,
    pub anchor_before: VertexId,
    pub anchor_after: VertexId,
    pub removed: VertexId,
    pub monotone: bool,
    pub conservative: bool,
    pub reason: Option<String>,
}

impl StepVerdict {
    pub fn render(&self, complex: &Complex) -> String {
        let mut s = format!(
            "index {} anchor {} -> {} removed {} monotone {} conservative {}",
            self.index,
            complex.label(self.anchor_before),
            complex.label(self.anchor_after),
            complex.label(self.removed),
            self.monotone,
            self.conservative
        );
        if let Some(r) = &self.reason {
            s.push_str(&format!(" ({r})"));
        }
        s
    }
}

/// Which facets end a path.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StopRule {
    /// The first facet meeting the target.
    MeetTarget,
    /// The target itself, which must be a facet.
    ReachFacet,
    /// A facet with no monotone conservative successor.
    Exhausted,
}

impl StopRule {
    /// `ReachFacet` when the target is a facet, `MeetTarget` otherwise.
    pub fn auto(complex: &Complex, target: &Face) -> StopRule {
        if complex.is_facet(target) {
            StopRule::ReachFacet
        } else {
            StopRule::MeetTarget
        }
    }
}

impl fmt::Display for StopRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StopRule::MeetTarget => "meet-target",
            StopRule::ReachFacet => "reach-facet",
            StopRule::Exhausted => "exhausted",
        })
    }
}

/// Judges the step `prev -> next` towards the evaluator's target.
pub fn verdict(ev: &Evaluator, prev: &OrderedFacet, next: &OrderedFacet) -> Result<StepVerdict> {
    let complex = ev.complex();
    let (prev_set, next_set) = (prev.set(), next.set());
    for (o, s) in [(prev, &prev_set), (next, &next_set)] {
        if s.len() != o.len() || !complex.is_facet(s) {
            return Err(Error::NotAFacet(o.display(complex)));
        }
    }
    let gone = prev_set.difference(&next_set);
    if gone.len() != 1 {
        return Err(Error::NotAdjacent(prev.display(complex), next.display(complex)));
    }
    let removed = gone.vertices()[0];
    let (prev_vec, _) = ev.evaluate(prev);
    let (next_vec, next_ok) = ev.evaluate(next);
    let monotone = next_vec < prev_vec;
    let index = next.common_prefix(prev);
    let mut reasons = Vec::new();
    if !monotone {
        reasons.push(format!("distance vector {next_vec} is not below {prev_vec}"));
    }
    let removed_last = prev.last() == Some(removed);
    if !removed_last {
        reasons.push(format!("removed {} is not last", complex.label(removed)));
    }
    let mut conservative = removed_last;
    if !next_ok {
        conservative = false;
        reasons.push("new ordering is not admissible".into());
    } else {
        let best = ev.max_index_reorder(&next_set, prev)?;
        let best_index = best[0].common_prefix(prev);
        if index < best_index {
            conservative = false;
            reasons.push(format!("index {index} below the maximum {best_index}"));
        }
    }
    Ok(StepVerdict {
        index,
        anchor_before: prev.anchor().unwrap(),
        anchor_after: next.anchor().unwrap(),
        removed,
        monotone,
        conservative,
        reason: if reasons.is_empty() { None } else { Some(reasons.join("; ")) },
    })
}

/// Successors of `f` reached by a conservative step, monotone or not.
pub fn conservative_successors(ev: &Evaluator, f: &OrderedFacet) -> Result<Vec<OrderedFacet>> {
    let complex = ev.complex();
    let Some(last) = f.last() else {
        return Ok(Vec::new());
    };
    let set = f.set();
    let ridge = set.without(last);
    let mut out = Vec::new();
    for g in complex.facets_containing(&ridge) {
        let g = complex.facet(g);
        if *g == set {
            continue;
        }
        out.extend(ev.max_index_reorder(g, f)?);
    }
    out.sort();
    Ok(out)
}

/// Successors of `f` reached by a monotone conservative step, sorted.
pub fn mc_successors(ev: &Evaluator, f: &OrderedFacet) -> Result<Vec<OrderedFacet>> {
    let (here, _) = ev.evaluate(f);
    let mut out = conservative_successors(ev, f)?;
    out.retain(|g| ev.evaluate(g).0 < here);
    Ok(out)
}

fn require_admissible(ev: &Evaluator, f: &OrderedFacet) -> Result<()> {
    if !ev.is_admissible(f)? {
        return Err(Error::NotAdmissible(f.display(ev.complex())));
    }
    Ok(())
}

/// Every ordered facet `g` such that `[f, g]` is monotone and conservative.
/// Requires `f` admissible and disjoint from the target.
pub fn find_conservative_steps(ev: &Evaluator, f: &OrderedFacet) -> Result<Vec<OrderedFacet>> {
    require_admissible(ev, f)?;
    if f.set().meets(ev.target()) {
        return Err(Error::InvalidParams(format!(
            "{} already meets the target",
            f.display(ev.complex())
        )));
    }
    let out = mc_successors(ev, f)?;
    if out.is_empty() {
        return Err(Error::Stuck(f.display(ev.complex())));
    }
    Ok(out)
}

/// Greedy monotone conservative path from `f0` to the first facet meeting the
/// target. Ties go to the lexicographically smallest ordering.
pub fn build_path_to_set(ev: &Evaluator, f0: &OrderedFacet) -> Result<DualPath> {
    require_admissible(ev, f0)?;
    let mut steps = vec![f0.clone()];
    loop {
        let current = steps.last().unwrap();
        if current.set().meets(ev.target()) {
            break;
        }
        let next = find_conservative_steps(ev, current)?.swap_remove(0);
        steps.push(next);
    }
    Ok(DualPath::new(steps, ev.target().clone()))
}

/// Monotone conservative path from `f0` ending exactly at `target`: reach the
/// target set, then recurse in the link of the anchor.
pub fn build_path_to_facet(complex: &Complex, f0: &OrderedFacet, target: &Face) -> Result<DualPath> {
    if !complex.is_facet(target) {
        return Err(Error::NotAFacet(complex.format_face(target)));
    }
    let ev = Evaluator::new(complex, target)?;
    let mut path = build_path_to_set(&ev, f0)?;
    let last = path.last().clone();
    if last.set() == *target {
        return Ok(path);
    }
    let common = last.set().intersection(target);
    let x = last.anchor().unwrap();
    if common.len() > 1 {
        info!(
            "facet {} meets the target in {} vertices; continuing in the link of {}",
            last.display(complex),
            common.len(),
            complex.label(x)
        );
    }
    let link = complex.link(&Face::singleton(x))?;
    let to_link = |o: &OrderedFacet| -> Result<OrderedFacet> {
        OrderedFacet::from_labels(&link, &o.labels(complex))
    };
    let link_target = link.face(
        &target
            .without(x)
            .iter()
            .map(|v| complex.label(v))
            .collect::<Vec<_>>(),
    )?;
    let sub = build_path_to_facet(&link, &to_link(&last.tail())?, &link_target)?;
    for step in sub.steps.iter().skip(1) {
        let labels = step.labels(&link);
        let mut full = vec![complex.label(x)];
        full.extend(labels);
        path.steps.push(OrderedFacet::from_labels(complex, &full)?);
    }
    Ok(path)
}

/// Every step strictly decreases the vector of distances.
pub fn is_monotone_path(ev: &Evaluator, path: &DualPath) -> Result<bool> {
    path.validate(ev.complex())?;
    let vectors: Vec<DistanceVector> = path.steps.iter().map(|s| ev.evaluate(s).0).collect();
    Ok(vectors.windows(2).all(|w| w[1] < w[0]))
}

/// The first facet is admissible and every step is conservative.
pub fn is_conservative_path(ev: &Evaluator, path: &DualPath) -> Result<bool> {
    path.validate(ev.complex())?;
    if !ev.is_admissible(path.first())? {
        return Ok(false);
    }
    for w in path.steps.windows(2) {
        if !verdict(ev, &w[0], &w[1])?.conservative {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Per-step verdicts of a path.
pub fn path_verdicts(ev: &Evaluator, path: &DualPath) -> Result<Vec<StepVerdict>> {
    path.steps.windows(2).map(|w| verdict(ev, &w[0], &w[1])).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig3() -> Complex {
        Complex::from_facets([
            ["a1", "a2", "a3"],
            ["a1", "a2", "a4"],
            ["a1", "a3", "a5"],
            ["a1", "a4", "a6"],
            ["a1", "a5", "a7"],
            ["a1", "a6", "a7"],
            ["a6", "a7", "a8"],
        ])
        .unwrap()
    }

    fn of(c: &Complex, labels: &[&str]) -> OrderedFacet {
        OrderedFacet::from_labels(c, labels).unwrap()
    }

    #[test]
    fn fig3_steps() {
        let c = fig3();
        let ev = Evaluator::new(&c, &c.face(&["a8"]).unwrap()).unwrap();
        let f = of(&c, &["a1", "a2", "a3"]);
        let cases = [
            (["a5", "a1", "a3"], true, false),
            (["a1", "a5", "a3"], true, false),
            (["a4", "a1", "a2"], true, false),
            (["a1", "a4", "a2"], true, true),
        ];
        for (g, mono, cons) in cases {
            let v = verdict(&ev, &f, &of(&c, &g)).unwrap();
            assert_eq!((v.monotone, v.conservative), (mono, cons), "{g:?}");
        }
        assert_eq!(
            find_conservative_steps(&ev, &f).unwrap(),
            vec![of(&c, &["a1", "a4", "a2"])]
        );
    }

    #[test]
    fn fan_step_is_conservative_not_monotone() {
        let c = Complex::from_facets([["1", "2"], ["1", "3"], ["1", "4"]]).unwrap();
        let ev = Evaluator::new(&c, &c.face(&["4"]).unwrap()).unwrap();
        let v = verdict(&ev, &of(&c, &["1", "2"]), &of(&c, &["1", "3"])).unwrap();
        assert!(!v.monotone);
        assert!(v.conservative);
        let path = build_path_to_set(&ev, &of(&c, &["1", "2"])).unwrap();
        assert_eq!(path.steps, vec![of(&c, &["1", "2"]), of(&c, &["4", "1"])]);
        assert!(matches!(
            build_path_to_set(&ev, &of(&c, &["2", "1"])),
            Err(Error::NotAdmissible(_))
        ));
    }

    #[test]
    fn path_complex_base_case() {
        let c = Complex::from_facets([["1", "2"], ["2", "3"]]).unwrap();
        let ev = Evaluator::new(&c, &c.face(&["3"]).unwrap()).unwrap();
        assert!(!ev.is_admissible(&of(&c, &["1", "2"])).unwrap());
        assert_eq!(
            find_conservative_steps(&ev, &of(&c, &["2", "1"])).unwrap(),
            vec![of(&c, &["3", "2"])]
        );
    }

    #[test]
    fn to_facet_ends_at_target() {
        let c = fig3();
        let target = c.face(&["a6", "a7", "a8"]).unwrap();
        let ev = Evaluator::new(&c, &target).unwrap();
        let start = ev.admissible_orderings(&c.face(&["a1", "a2", "a3"]).unwrap()).unwrap();
        let path = build_path_to_facet(&c, &start[0], &target).unwrap();
        assert_eq!(path.last().set(), target);
        assert!(is_monotone_path(&ev, &path).unwrap());
        assert!(is_conservative_path(&ev, &path).unwrap());
    }

    #[test]
    fn render_roundtrip() {
        let c = fig3();
        let ev = Evaluator::new(&c, &c.face(&["a8"]).unwrap()).unwrap();
        let path = build_path_to_set(&ev, &of(&c, &["a1", "a2", "a3"])).unwrap();
        let text = path.render(&c);
        assert!(text.starts_with("target: {a8}\n(a1 a2 a3)\n(a1 a4 a2)\n"));
        assert_eq!(DualPath::parse(&c, &text).unwrap(), path);
    }
}
