//! Worked-example fixtures and the two exponential lower-bound families.

use serde::Serialize;

use crate::complex::{Complex, Face, VertexId};
use crate::constructions::{one_point_suspension_named, stack_complex_with, stellar_subdivision_named};
use crate::error::{Error, Result};
use crate::ordering::Evaluator;
use crate::pathfinder::{enumerate_paths, path_stats, NodeBudget, PathStats, StopRule};

pub const FIXTURES: [&str; 3] = ["fig2", "fig3", "fan3"];

/// Triangulated strip on two rows of six vertices, labeled so that the
/// example facets read `(a1 a2 a3)`, `(b1 b2 b3)` and `(c1 c2 c3)`; the
/// usual target is `{c1,c2}`.
fn strip() -> Result<Complex> {
    let bottom = ["a1", "a2", "b3", "b1", "d5", "c1"];
    let top = ["a3", "u2", "b2", "u4", "c2", "c3"];
    let mut facets = Vec::new();
    for i in 0..5 {
        facets.push([bottom[i], bottom[i + 1], top[i]]);
        facets.push([bottom[i + 1], top[i], top[i + 1]]);
    }
    Complex::from_facets(facets)
}

pub fn fixture(name: &str) -> Result<Complex> {
    match name {
        "fig2" => strip(),
        "fig3" => Complex::from_facets([
            ["a1", "a2", "a3"],
            ["a1", "a2", "a4"],
            ["a1", "a3", "a5"],
            ["a1", "a4", "a6"],
            ["a1", "a5", "a7"],
            ["a1", "a6", "a7"],
            ["a6", "a7", "a8"],
        ]),
        "fan3" => Complex::from_facets([["1", "2"], ["1", "3"], ["1", "4"]]),
        other => Err(Error::UnknownFixture(other.to_string())),
    }
}

/// A complex with two marked facets and a marked vertex in each.
#[derive(Clone, Debug)]
pub struct MarkedComplex {
    pub complex: Complex,
    pub f1: Face,
    pub f2: Face,
    pub x1: VertexId,
    pub x2: VertexId,
    /// Closed-form length claimed for the family.
    pub claimed_min_length: u64,
    /// Weaker floor that acceptance relies on.
    pub floor: u64,
}

/// JSON sidecar describing a generated complex.
#[derive(Clone, Debug, Serialize)]
pub struct Sidecar {
    pub kind: String,
    pub params: serde_json::Value,
    pub vertices: usize,
    pub facets: usize,
    pub facet_size: usize,
    pub f1: Option<Vec<String>>,
    pub f2: Option<Vec<String>>,
    pub x1: Option<String>,
    pub x2: Option<String>,
    pub claimed_min_length: Option<u64>,
    pub floor: Option<u64>,
    /// Shortest monotone conservative path between the marked facets, when
    /// verified by enumeration.
    pub observed_min_length: Option<u64>,
}

impl MarkedComplex {
    fn labels(&self, f: &Face) -> Vec<String> {
        f.iter().map(|v| self.complex.label(v).to_string()).collect()
    }

    pub fn sidecar(&self, kind: &str, params: serde_json::Value) -> Sidecar {
        Sidecar {
            kind: kind.to_string(),
            params,
            vertices: self.complex.num_vertices(),
            facets: self.complex.num_facets(),
            facet_size: self.complex.facet_size(),
            f1: Some(self.labels(&self.f1)),
            f2: Some(self.labels(&self.f2)),
            x1: Some(self.complex.label(self.x1).to_string()),
            x2: Some(self.complex.label(self.x2).to_string()),
            claimed_min_length: Some(self.claimed_min_length),
            floor: Some(self.floor),
            observed_min_length: None,
        }
    }
}

impl Sidecar {
    pub fn plain(kind: &str, params: serde_json::Value, complex: &Complex) -> Sidecar {
        Sidecar {
            kind: kind.to_string(),
            params,
            vertices: complex.num_vertices(),
            facets: complex.num_facets(),
            facet_size: complex.facet_size(),
            f1: None,
            f2: None,
            x1: None,
            x2: None,
            claimed_min_length: None,
            floor: None,
            observed_min_length: None,
        }
    }
}

fn padded(prefix: &str, i: usize, width: usize) -> String {
    format!("{prefix}{i:0width$}")
}

/// A path on `count` vertices with the end edges marked.
pub fn ball_base(count: usize) -> Result<MarkedComplex> {
    if count < 3 {
        return Err(Error::InvalidParams("base path needs at least 3 vertices".into()));
    }
    let width = count.to_string().len();
    let names: Vec<String> = (1..=count).map(|i| padded("p", i, width)).collect();
    let complex = Complex::from_facets(names.windows(2).map(|w| w.to_vec()))?;
    let f1 = complex.face(&[&names[0], &names[1]])?;
    let f2 = complex.face(&[&names[count - 2], &names[count - 1]])?;
    Ok(MarkedComplex {
        x1: complex.vertex(&names[0])?,
        x2: complex.vertex(&names[count - 1])?,
        f1,
        f2,
        complex,
        claimed_min_length: 0,
        floor: 0,
    })
}

/// One application of the ball step: one-point suspension at `x1`, then a
/// stack of `ceil(k/2)` and one of `floor(k/2)` facets glued onto the two
/// copies of a boundary ridge of `F2`.
pub fn ball_step(ball: &MarkedComplex, k: usize) -> Result<MarkedComplex> {
    let c = &ball.complex;
    let d = c.facet_size();
    if k < 2 * d {
        return Err(Error::InvalidParams(format!("stack total {k} below {}", 2 * d)));
    }
    let stage = d + 1;
    let (s1, s2) = (format!("s{stage}a"), format!("s{stage}b"));
    let sus = one_point_suspension_named(c, c.label(ball.x1), &s1, &s2)?;
    // boundary ridge of F2 through x2: drop the smallest other vertex
    let dropped = ball.f2.iter().find(|&v| v != ball.x2).unwrap();
    let ridge: Vec<String> = ball.f2.without(dropped).iter().map(|v| c.label(v).to_string()).collect();
    let (k1, k2) = (k.div_ceil(2), k / 2);
    let mut facets: Vec<Vec<String>> = sus.canonical_key();
    let mut far = Vec::new();
    for (copy, len, apex) in [("x", k1, &s1), ("y", k2, &s2)] {
        let name = |i: usize| -> String {
            if i == 0 {
                apex.clone()
            } else if i < d {
                ridge[i - 1].clone()
            } else {
                format!("t{stage}{copy}{i:02}")
            }
        };
        let stack = stack_complex_with(len, d, name)?;
        facets.extend(stack.canonical_key());
        let far_facet: Vec<String> = std::iter::once(name(0)).chain((len..len + d).map(name)).collect();
        far.push((far_facet, name(len + d - 1)));
    }
    let complex = Complex::from_facets(facets)?;
    let f1 = complex.face(&far[0].0)?;
    let f2 = complex.face(&far[1].0)?;
    Ok(MarkedComplex {
        x1: complex.vertex(&far[0].1)?,
        x2: complex.vertex(&far[1].1)?,
        f1,
        f2,
        complex,
        claimed_min_length: 0,
        floor: 0,
    })
}

/// Ball of facet size `d` on `n + d^2` vertices: a path on `n + 4` vertices
/// followed by `d - 2` ball steps, each with stack total twice the current
/// facet size.
pub fn exponential_ball(d: usize, n: usize) -> Result<MarkedComplex> {
    exponential_ball_stages(d, n).map(|mut v| v.pop().unwrap())
}

/// Every intermediate ball of [`exponential_ball`], base first.
pub fn exponential_ball_stages(d: usize, n: usize) -> Result<Vec<MarkedComplex>> {
    if d < 2 || n < 4 {
        return Err(Error::InvalidParams(format!("ball needs d >= 2 and N >= 4, got d={d}, N={n}")));
    }
    let mut stages = vec![ball_base(n + 4)?];
    while stages.last().unwrap().complex.facet_size() < d {
        let current = stages.last().unwrap();
        let k = 2 * current.complex.facet_size();
        stages.push(ball_step(current, k)?);
    }
    let last = stages.last_mut().unwrap();
    last.claimed_min_length = (1u64 << (d - 2)) * (n as u64 + 3);
    last.floor = (1u64 << (d - 2)) * n as u64;
    Ok(stages)
}

/// Cycle on `n` vertices marked with `F1 = {x1, a}` and `F2 = {b, x2}`, where
/// the arc from `a` to `b` avoiding `x1, x2` has `gap` edges.
pub fn sphere_base(n: usize, gap: usize) -> Result<MarkedComplex> {
    if n < 7 || gap == 0 || 2 * gap + 4 > n {
        return Err(Error::InvalidParams(format!("cycle of {n} cannot hold a gap of {gap}")));
    }
    let width = (n - 1).to_string().len();
    let names: Vec<String> = (0..n).map(|i| padded("c", i, width)).collect();
    let complex = Complex::from_facets((0..n).map(|i| [names[i].clone(), names[(i + 1) % n].clone()]))?;
    let f1 = complex.face(&[&names[0], &names[1]])?;
    let f2 = complex.face(&[&names[gap + 1], &names[gap + 2]])?;
    Ok(MarkedComplex {
        x1: complex.vertex(&names[0])?,
        x2: complex.vertex(&names[gap + 2])?,
        f1,
        f2,
        complex,
        claimed_min_length: 0,
        floor: 0,
    })
}

/// Largest gap for which every path from one marked edge towards the other
/// marked vertex runs along the short arc.
pub fn sphere_base_gap(n: usize) -> usize {
    (n - 4) / 2
}

/// One application of the sphere step: one-point suspension at `x1` with
/// vertices `u, v`; subdivide `u y`, `v y` for the neighbours `y` of `x2`;
/// then `u x2`, `v x2` (new `u', v'`); then `u u'`, `v v'` (new `x1', x2'`).
pub fn sphere_step(sphere: &MarkedComplex) -> Result<MarkedComplex> {
    let c = &sphere.complex;
    let stage = c.facet_size() + 1;
    let u = format!("s{stage}u");
    let v = format!("s{stage}v");
    let x2 = c.label(sphere.x2).to_string();
    let mut cur = one_point_suspension_named(c, c.label(sphere.x1), &u, &v)?;
    let neighbors: Vec<String> = c.neighbors(sphere.x2).iter().map(|&y| c.label(y).to_string()).collect();
    let mut on_u_side = Vec::new();
    for (i, y) in neighbors.iter().enumerate() {
        let (ui, vi) = (format!("s{stage}u{i:02}"), format!("s{stage}v{i:02}"));
        cur = stellar_subdivision_named(&cur, &cur.face(&[&u, y])?, &ui)?;
        cur = stellar_subdivision_named(&cur, &cur.face(&[&v, y])?, &vi)?;
        on_u_side.push((y.clone(), ui, vi));
    }
    let (up, vp) = (format!("s{stage}up"), format!("s{stage}vp"));
    cur = stellar_subdivision_named(&cur, &cur.face(&[&u, &x2])?, &up)?;
    cur = stellar_subdivision_named(&cur, &cur.face(&[&v, &x2])?, &vp)?;
    let (nx1, nx2) = (format!("s{stage}x1"), format!("s{stage}x2"));
    cur = stellar_subdivision_named(&cur, &cur.face(&[&u, &up])?, &nx1)?;
    cur = stellar_subdivision_named(&cur, &cur.face(&[&v, &vp])?, &nx2)?;

    let in_f2: Vec<&(String, String, String)> = on_u_side
        .iter()
        .filter(|(y, _, _)| sphere.f2.contains(c.vertex(y).unwrap()))
        .collect();
    let mut f1: Vec<&str> = vec![&u, &nx1];
    let mut f2: Vec<&str> = vec![&v, &nx2];
    for (_, ui, vi) in &in_f2 {
        f1.push(ui);
        f2.push(vi);
    }
    let complex = cur;
    let f1 = complex.face(&f1)?;
    let f2 = complex.face(&f2)?;
    for f in [&f1, &f2] {
        if !complex.is_facet(f) {
            return Err(Error::Invariant(format!("{} is not a facet", complex.format_face(f))));
        }
    }
    Ok(MarkedComplex {
        x1: complex.vertex(&nx1)?,
        x2: complex.vertex(&nx2)?,
        f1,
        f2,
        complex,
        claimed_min_length: 0,
        floor: 0,
    })
}

/// Sphere of facet size `d`: a marked cycle on `n` vertices followed by
/// `d - 2` sphere steps.
pub fn hirsch_sphere(d: usize, n: usize) -> Result<MarkedComplex> {
    hirsch_sphere_stages(d, n).map(|mut v| v.pop().unwrap())
}

pub fn hirsch_sphere_stages(d: usize, n: usize) -> Result<Vec<MarkedComplex>> {
    if d < 2 || n < 7 {
        return Err(Error::InvalidParams(format!("sphere needs d >= 2 and N >= 7, got d={d}, N={n}")));
    }
    let mut stages = vec![sphere_base(n, sphere_base_gap(n))?];
    while stages.last().unwrap().complex.facet_size() < d {
        let next = sphere_step(stages.last().unwrap())?;
        stages.push(next);
    }
    let last = stages.last_mut().unwrap();
    let scaled = if d >= 3 { (1u64 << (d - 3)) * n as u64 } else { n as u64 / 2 };
    last.claimed_min_length = scaled;
    last.floor = scaled;
    Ok(stages)
}

/// Statistics of monotone conservative paths between the marked facets.
#[derive(Clone, Debug, Serialize)]
pub struct MarkedPathReport {
    /// Paths from F1 ending at F2 with target F2.
    pub forward_facet: PathStats,
    /// Paths from F2 ending at F1 with target F1.
    pub backward_facet: PathStats,
    /// Paths from F1 towards `{x2}`, stopped at the first facet containing it.
    pub forward_vertex: PathStats,
    pub backward_vertex: PathStats,
    /// The vertex-target paths all end at the other marked facet.
    pub vertex_paths_end_at_facet: bool,
    pub explored: u64,
}

impl MarkedPathReport {
    pub fn min_length(&self) -> Option<usize> {
        [&self.forward_facet, &self.backward_facet, &self.forward_vertex, &self.backward_vertex]
            .iter()
            .filter_map(|s| s.min)
            .min()
    }
}

pub fn marked_path_report(m: &MarkedComplex, budget: &NodeBudget) -> Result<MarkedPathReport> {
    let c = &m.complex;
    let facet_stats = |from: &Face, to: &Face| -> Result<PathStats> {
        let ev = Evaluator::new(c, to)?;
        path_stats(&ev, &ev.admissible_orderings(from)?, StopRule::ReachFacet, budget)
    };
    let mut ends_ok = true;
    let mut vertex_stats = |from: &Face, x: VertexId, expected: &Face| -> Result<PathStats> {
        let ev = Evaluator::new(c, &Face::singleton(x))?;
        let starts = ev.admissible_orderings(from)?;
        let stats = path_stats(&ev, &starts, StopRule::MeetTarget, budget)?;
        if stats.count <= 10_000 {
            let e = enumerate_paths(&ev, from, StopRule::MeetTarget, budget)?;
            ends_ok &= e.paths.iter().all(|p| p.last().set() == *expected);
        } else {
            ends_ok = false;
        }
        Ok(stats)
    };
    let forward_vertex = vertex_stats(&m.f1, m.x2, &m.f2)?;
    let backward_vertex = vertex_stats(&m.f2, m.x1, &m.f1)?;
    Ok(MarkedPathReport {
        forward_facet: facet_stats(&m.f1, &m.f2)?,
        backward_facet: facet_stats(&m.f2, &m.f1)?,
        forward_vertex,
        backward_vertex,
        vertex_paths_end_at_facet: ends_ok,
        explored: budget.used(),
    })
}

/// Whether every monotone conservative path from F1 to F2 (target F2) visits
/// every facet exactly once. Fails with `CapExceeded` past the budget.
pub fn all_paths_hamiltonian(m: &MarkedComplex, budget: &NodeBudget) -> Result<bool> {
    let ev = Evaluator::new(&m.complex, &m.f2)?;
    let e = enumerate_paths(&ev, &m.f1, StopRule::ReachFacet, budget)?.complete(budget.cap())?;
    let total = m.complex.num_facets();
    Ok(!e.paths.is_empty()
        && e.paths.iter().all(|p| {
            let mut sets = p.facet_sets();
            sets.sort();
            sets.dedup();
            sets.len() == total && p.steps.len() == total
        }))
}

/// Number of shortest vertex paths between two vertices.
pub fn shortest_path_count(c: &Complex, a: VertexId, b: VertexId) -> (Option<u32>, u64) {
    let dist = c.distances_from(&Face::singleton(a));
    let Some(target) = dist[b as usize] else {
        return (None, 0);
    };
    let mut ways = vec![0u64; c.num_vertices()];
    ways[a as usize] = 1;
    let mut order: Vec<VertexId> = c.vertices().filter(|v| dist[*v as usize].is_some()).collect();
    order.sort_by_key(|v| dist[*v as usize]);
    for v in order {
        let dv = dist[v as usize].unwrap();
        for &w in c.neighbors(v) {
            if dist[w as usize] == Some(dv + 1) {
                ways[w as usize] = ways[w as usize].saturating_add(ways[v as usize]);
            }
        }
    }
    (Some(target), ways[b as usize])
}

/// Structural ball properties: each `x_i` lies only in `F_i`; pseudomanifold
/// with boundary; normal.
pub fn check_ball_structure(m: &MarkedComplex) -> Vec<String> {
    let c = &m.complex;
    let mut problems = Vec::new();
    for (x, f) in [(m.x1, &m.f1), (m.x2, &m.f2)] {
        let holders = c.facets_containing_vertex(x);
        if holders.len() != 1 || c.facet(holders[0]) != f {
            problems.push(format!("{} lies in {} facets", c.label(x), holders.len()));
        }
    }
    let (pm, boundary) = c.pseudomanifold_boundary();
    if !pm || boundary.is_empty() {
        problems.push("not a pseudomanifold with boundary".into());
    }
    if !c.is_normal() {
        problems.push("not normal".into());
    }
    problems
}

/// Structural sphere properties: closed pseudomanifold, marked vertices of
/// degree `2d - 2` at distance at least 3.
pub fn check_sphere_structure(m: &MarkedComplex) -> Vec<String> {
    let c = &m.complex;
    let d = c.facet_size();
    let mut problems = Vec::new();
    if !c.is_closed_pseudomanifold() {
        problems.push("not a pseudomanifold without boundary".into());
    }
    for x in [m.x1, m.x2] {
        if c.degree(x) != 2 * d - 2 {
            problems.push(format!("{} has degree {}, expected {}", c.label(x), c.degree(x), 2 * d - 2));
        }
    }
    if !m.f1.contains(m.x1) || !m.f2.contains(m.x2) {
        problems.push("marked vertices outside their facets".into());
    }
    let (dist, _) = shortest_path_count(c, m.x1, m.x2);
    if dist.is_none_or(|d| d < 3) {
        problems.push(format!("marked vertices at distance {dist:?}"));
    }
    problems
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_exist() {
        assert_eq!(fixture("fig2").unwrap().num_facets(), 10);
        assert_eq!(fixture("fig3").unwrap().num_facets(), 7);
        assert_eq!(fixture("fan3").unwrap().num_facets(), 3);
        assert!(matches!(fixture("fig9"), Err(Error::UnknownFixture(_))));
    }

    #[test]
    fn ball_sizes() {
        let b = exponential_ball(2, 4).unwrap();
        assert_eq!(b.complex.num_vertices(), 8);
        let b = exponential_ball(3, 4).unwrap();
        assert_eq!(b.complex.num_vertices(), 13);
        assert!(check_ball_structure(&b).is_empty(), "{:?}", check_ball_structure(&b));
        let b = exponential_ball(4, 4).unwrap();
        assert_eq!(b.complex.num_vertices(), 20);
        assert!(check_ball_structure(&b).is_empty());
    }

    #[test]
    fn sphere_sizes() {
        let s = hirsch_sphere(2, 8).unwrap();
        assert_eq!(s.complex.num_vertices(), 8);
        assert!(check_sphere_structure(&s).is_empty());
        let s = hirsch_sphere(3, 8).unwrap();
        assert_eq!(s.complex.num_vertices(), 17);
        assert!(check_sphere_structure(&s).is_empty(), "{:?}", check_sphere_structure(&s));
        let (dist, ways) = shortest_path_count(&s.complex, s.x1, s.x2);
        assert_eq!((dist, ways), (Some(3), 1));
    }
}
