//! Direct recursive check of combinatorial segmenthood.
//!
//! Works on unordered facet sets and re-materializes each link as its own
//! complex, so it shares nothing with the evaluator used for step verdicts.

use serde::Serialize;

use super::DualPath;
use crate::complex::{Complex, ExtNat, Face, VertexId};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum SegmentNode {
    /// The first facet already meets the target and the path has no steps.
    Meets,
    /// Zero-dimensional jump from a vertex onto the target.
    Point { from: String, to: String },
    /// Anchored run up to the first facet closer to the target, then the tail.
    Split {
        anchor: String,
        distance: u32,
        k: usize,
        next_anchor: String,
        link: Box<SegmentNode>,
        tail: Box<SegmentNode>,
    },
    Failed { reason: String },
}

impl SegmentNode {
    pub fn holds(&self) -> bool {
        !matches!(self, SegmentNode::Failed { .. })
    }

    fn render_into(&self, depth: usize, out: &mut String) {
        let pad = "  ".repeat(depth);
        match self {
            SegmentNode::Meets => out.push_str(&format!("{pad}meets target\n")),
            SegmentNode::Point { from, to } => out.push_str(&format!("{pad}point {from} -> {to}\n")),
            SegmentNode::Failed { reason } => out.push_str(&format!("{pad}failed: {reason}\n")),
            SegmentNode::Split { anchor, distance, k, next_anchor, link, tail } => {
                out.push_str(&format!(
                    "{pad}anchor {anchor} at distance {distance}, closer at step {k} via {next_anchor}\n"
                ));
                out.push_str(&format!("{pad}  link of {anchor}:\n"));
                link.render_into(depth + 2, out);
                out.push_str(&format!("{pad}  tail:\n"));
                tail.render_into(depth + 2, out);
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SegmentTrace {
    pub holds: bool,
    /// Step indices where the anchor changes.
    pub split_points: Vec<usize>,
    pub root: SegmentNode,
}

impl SegmentTrace {
    pub fn render(&self) -> String {
        let mut out = format!("segment: {}\n", self.holds);
        if !self.split_points.is_empty() {
            let pts: Vec<String> = self.split_points.iter().map(|p| p.to_string()).collect();
            out.push_str(&format!("split points: {}\n", pts.join(" ")));
        }
        self.root.render_into(0, &mut out);
        out
    }
}

/// Whether the facet sequence of `path` is a combinatorial segment towards its
/// target for some choice of first anchor.
pub fn is_combinatorial_segment(complex: &Complex, path: &DualPath) -> (bool, SegmentTrace) {
    let trace = segment_trace(complex, &path.facet_sets(), &path.target);
    (trace.holds, trace)
}

pub fn segment_trace(complex: &Complex, facets: &[Face], target: &Face) -> SegmentTrace {
    let root = match structural_problem(complex, facets) {
        Some(reason) => SegmentNode::Failed { reason },
        None => check(complex, facets, target, None),
    };
    let mut split_points = Vec::new();
    let mut offset = 0;
    let mut node = &root;
    while let SegmentNode::Split { k, tail, .. } = node {
        offset += k;
        split_points.push(offset);
        node = tail;
    }
    SegmentTrace { holds: root.holds(), split_points, root }
}

fn structural_problem(complex: &Complex, facets: &[Face]) -> Option<String> {
    if facets.is_empty() {
        return Some("empty path".into());
    }
    if let Some(f) = facets.iter().find(|f| !complex.is_facet(f)) {
        return Some(format!("{} is not a facet", complex.format_face(f)));
    }
    facets
        .windows(2)
        .find(|w| w[0].difference(&w[1]).len() != 1)
        .map(|w| {
            format!(
                "{} and {} are not adjacent",
                complex.format_face(&w[0]),
                complex.format_face(&w[1])
            )
        })
}

fn fail(reason: impl Into<String>) -> SegmentNode {
    SegmentNode::Failed { reason: reason.into() }
}

fn check(complex: &Complex, facets: &[Face], target: &Face, anchor: Option<VertexId>) -> SegmentNode {
    let n = facets.len() - 1;
    let first = &facets[0];
    if let Some(x) = anchor {
        if !first.contains(x) {
            return fail(format!("anchor {} not in first facet", complex.label(x)));
        }
    }
    if target.is_empty() {
        return fail("empty target");
    }
    if first.meets(target) {
        return if n == 0 { SegmentNode::Meets } else { fail("first facet meets the target but the path continues") };
    }
    if complex.facet_size() == 1 {
        let x = first.vertices()[0];
        return if n == 1 && facets[1].is_subset(target) {
            SegmentNode::Point {
                from: complex.label(x).to_string(),
                to: complex.label(facets[1].vertices()[0]).to_string(),
            }
        } else {
            fail("zero-dimensional segment must be one jump onto the target")
        };
    }
    if let Some(i) = (0..n).find(|&i| facets[i].meets(target)) {
        return fail(format!("facet {i} meets the target before the last"));
    }
    if !facets[n].meets(target) {
        return fail("last facet does not meet the target");
    }
    let dist = complex.distances_from(target);
    let to_target = |f: &Face| -> ExtNat {
        f.iter()
            .filter_map(|v| dist[v as usize])
            .min()
            .map_or(ExtNat::Infinity, ExtNat::Finite)
    };
    let ExtNat::Finite(ell) = to_target(first) else {
        return fail("target unreachable from the first facet");
    };
    let k = (1..=n).find(|&i| to_target(&facets[i]) < ExtNat::Finite(ell)).unwrap();
    let closer: Vec<VertexId> = facets[k]
        .iter()
        .filter(|&v| dist[v as usize] == Some(ell - 1))
        .collect();
    if closer.len() != 1 {
        return fail(format!(
            "facet {k} has {} vertices at distance {} (expected exactly one)",
            closer.len(),
            ell - 1
        ));
    }
    let y = closer[0];
    let shared = facets[..=k].iter().fold(first.clone(), |acc, f| acc.intersection(f));
    let candidates: Vec<VertexId> = match anchor {
        Some(x) => vec![x],
        None => first.iter().collect(),
    };
    let mut first_failure = None;
    for x in candidates {
        if !shared.contains(x) {
            first_failure.get_or_insert_with(|| {
                fail(format!("anchor {} leaves before step {k}", complex.label(x)))
            });
            continue;
        }
        let link_node = match anchored_link(complex, &facets[..=k], x, &dist, ell) {
            Ok(node) => node,
            Err(reason) => fail(reason),
        };
        if !link_node.holds() {
            first_failure.get_or_insert(link_node);
            continue;
        }
        let tail = check(complex, &facets[k..], target, Some(y));
        if !tail.holds() {
            first_failure.get_or_insert(tail);
            continue;
        }
        return SegmentNode::Split {
            anchor: complex.label(x).to_string(),
            distance: ell,
            k,
            next_anchor: complex.label(y).to_string(),
            link: Box::new(link_node),
            tail: Box::new(tail),
        };
    }
    first_failure.unwrap_or_else(|| fail("no anchor candidate"))
}

/// Checks the run `facets` (all containing `x`) inside the link of `x`,
/// towards the neighbours of `x` one step closer to the target.
fn anchored_link(
    complex: &Complex,
    facets: &[Face],
    x: VertexId,
    dist: &[Option<u32>],
    ell: u32,
) -> Result<SegmentNode, String> {
    let link = complex.link(&Face::singleton(x)).map_err(|e| e.to_string())?;
    let translate = |f: &Face| -> Result<Face, String> {
        let labels: Vec<&str> = f.iter().filter(|&v| v != x).map(|v| complex.label(v)).collect();
        link.face(&labels).map_err(|e| e.to_string())
    };
    let closer: Vec<VertexId> = complex
        .neighbors(x)
        .iter()
        .copied()
        .filter(|&w| dist[w as usize] == Some(ell - 1))
        .collect();
    let link_target = translate(&Face::new(closer))?;
    let link_facets = facets.iter().map(translate).collect::<Result<Vec<_>, _>>()?;
    Ok(check(&link, &link_facets, &link_target, None))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fan() -> Complex {
        Complex::from_facets([["1", "2"], ["1", "3"], ["1", "4"]]).unwrap()
    }

    #[test]
    fn trivial_cases() {
        let c = fan();
        let t = c.face(&["4"]).unwrap();
        let trace = segment_trace(&c, &[c.face(&["1", "4"]).unwrap()], &t);
        assert!(trace.holds);
        let good = [c.face(&["1", "2"]).unwrap(), c.face(&["1", "4"]).unwrap()];
        assert!(segment_trace(&c, &good, &t).holds);
        let bad = [c.face(&["1", "2"]).unwrap(), c.face(&["1", "3"]).unwrap()];
        assert!(!segment_trace(&c, &bad, &t).holds);
    }

    #[test]
    fn fan_detour_is_not_a_segment() {
        let c = fan();
        let t = c.face(&["4"]).unwrap();
        let detour = [
            c.face(&["1", "2"]).unwrap(),
            c.face(&["1", "3"]).unwrap(),
            c.face(&["1", "4"]).unwrap(),
        ];
        let trace = segment_trace(&c, &detour, &t);
        assert!(!trace.holds);
        assert!(trace.render().contains("failed"));
    }

    #[test]
    fn path_graph_segment() {
        let c = Complex::from_facets([["1", "2"], ["2", "3"], ["3", "4"]]).unwrap();
        let t = c.face(&["4"]).unwrap();
        let facets = [
            c.face(&["1", "2"]).unwrap(),
            c.face(&["2", "3"]).unwrap(),
            c.face(&["3", "4"]).unwrap(),
        ];
        let trace = segment_trace(&c, &facets, &t);
        assert!(trace.holds, "{}", trace.render());
        assert_eq!(trace.split_points, vec![1, 2]);
    }
}
