//! Joins, suspensions, stellar subdivisions and stacked complexes.

use std::collections::HashSet;

use crate::complex::{Complex, Face};
use crate::error::{Error, Result};

/// Hands out labels `prefix0`, `prefix1`, ... that are not already taken.
#[derive(Clone, Debug)]
pub struct FreshLabelSource {
    prefix: String,
    counter: usize,
    taken: HashSet<String>,
}

impl FreshLabelSource {
    pub fn new(prefix: &str) -> Self {
        FreshLabelSource { prefix: prefix.to_string(), counter: 0, taken: HashSet::new() }
    }

    /// A source avoiding every label of the given complexes.
    pub fn avoiding(prefix: &str, complexes: &[&Complex]) -> Self {
        let mut s = Self::new(prefix);
        for c in complexes {
            s.reserve(c.labels().iter().cloned());
        }
        s
    }

    pub fn reserve(&mut self, labels: impl IntoIterator<Item = String>) {
        self.taken.extend(labels);
    }

    pub fn next_label(&mut self) -> String {
        loop {
            let candidate = format!("{}{}", self.prefix, self.counter);
            self.counter += 1;
            if self.taken.insert(candidate.clone()) {
                return candidate;
            }
        }
    }
}

fn label_lists(c: &Complex) -> Vec<Vec<String>> {
    c.canonical_key()
}

fn build(facets: Vec<Vec<String>>) -> Result<Complex> {
    Complex::from_facets(facets)
}

/// `{f1 ∪ f2}`; the operands must have disjoint labels.
pub fn join(c1: &Complex, c2: &Complex) -> Result<Complex> {
    let shared: Vec<&str> = c1
        .labels()
        .iter()
        .filter(|l| c2.vertex(l).is_ok())
        .map(String::as_str)
        .collect();
    if !shared.is_empty() {
        return Err(Error::LabelCollision(shared.join(",")));
    }
    if c1.is_void() {
        return Ok(c2.clone());
    }
    if c2.is_void() {
        return Ok(c1.clone());
    }
    let mut facets = Vec::new();
    for a in label_lists(c1) {
        for b in label_lists(c2) {
            facets.push(a.iter().chain(b.iter()).cloned().collect());
        }
    }
    build(facets)
}

/// Join after renaming the labels of `c2` that collide with `c1`.
pub fn join_relabel(c1: &Complex, c2: &Complex) -> Result<Complex> {
    let mut fresh = FreshLabelSource::avoiding("w", &[c1, c2]);
    let mut mapping = std::collections::HashMap::new();
    for l in c2.labels() {
        if c1.vertex(l).is_ok() {
            mapping.insert(l.clone(), fresh.next_label());
        }
    }
    let renamed: Vec<Vec<String>> = label_lists(c2)
        .into_iter()
        .map(|f| f.into_iter().map(|l| mapping.get(&l).cloned().unwrap_or(l)).collect())
        .collect();
    join(c1, &build(renamed)?)
}

/// Join with two isolated points named `north` and `south`.
pub fn suspension(c: &Complex, north: &str, south: &str) -> Result<Complex> {
    join(c, &Complex::from_facets([[north], [south]])?)
}

/// One-point suspension at `v` with fresh vertex names `w0`, `w1`, ...
pub fn one_point_suspension(c: &Complex, v: &str) -> Result<(Complex, String, String)> {
    let mut fresh = FreshLabelSource::avoiding("w", &[c]);
    let (a, b) = (fresh.next_label(), fresh.next_label());
    let out = one_point_suspension_named(c, v, &a, &b)?;
    Ok((out, a, b))
}

/// One-point suspension replacing `v` by the edge `{first, second}`.
pub fn one_point_suspension_named(c: &Complex, v: &str, first: &str, second: &str) -> Result<Complex> {
    let vid = c.vertex(v)?;
    for name in [first, second] {
        if name != v && c.vertex(name).is_ok() {
            return Err(Error::LabelCollision(name.to_string()));
        }
    }
    if first == second {
        return Err(Error::LabelCollision(first.to_string()));
    }
    let mut facets: Vec<Vec<String>> = Vec::new();
    for f in c.facets() {
        let rest: Vec<String> = f.iter().filter(|&w| w != vid).map(|w| c.label(w).to_string()).collect();
        if f.contains(vid) {
            let mut g = rest;
            g.push(first.to_string());
            g.push(second.to_string());
            facets.push(g);
        } else {
            for extra in [first, second] {
                let mut g = rest.clone();
                g.push(extra.to_string());
                facets.push(g);
            }
        }
    }
    build(facets)
}

/// Stellar subdivision of the face `f` with a new vertex named `apex`.
pub fn stellar_subdivision_named(c: &Complex, f: &Face, apex: &str) -> Result<Complex> {
    if f.is_empty() || !c.is_face(f) {
        return Err(Error::NotAFace(c.format_face(f)));
    }
    if c.vertex(apex).is_ok() {
        return Err(Error::LabelCollision(apex.to_string()));
    }
    let mut facets: Vec<Vec<String>> = Vec::new();
    for g in c.facets() {
        let labels = |h: &Face| -> Vec<String> { h.iter().map(|w| c.label(w).to_string()).collect() };
        if f.is_subset(g) {
            for w in f.iter() {
                let mut h = labels(&g.without(w));
                h.push(apex.to_string());
                facets.push(h);
            }
        } else {
            facets.push(labels(g));
        }
    }
    build(facets)
}

/// Stellar subdivision of `f` with a fresh apex label.
pub fn stellar_subdivision(c: &Complex, f: &Face) -> Result<(Complex, String)> {
    let apex = FreshLabelSource::avoiding("w", &[c]).next_label();
    Ok((stellar_subdivision_named(c, f, &apex)?, apex))
}

/// Subdivides every edge at `a`, one neighbour at a time in label order.
/// Returns the new complex and the new vertex for each original neighbour.
pub fn subdivide_all_edges_at(
    c: &Complex,
    a: &str,
    fresh: &mut FreshLabelSource,
) -> Result<(Complex, Vec<(String, String)>)> {
    let aid = c.vertex(a)?;
    fresh.reserve(c.labels().iter().cloned());
    let neighbors: Vec<String> = c.neighbors(aid).iter().map(|&w| c.label(w).to_string()).collect();
    let mut current = c.clone();
    let mut created = Vec::new();
    for b in neighbors {
        let apex = fresh.next_label();
        let edge = current.face(&[a, b.as_str()])?;
        current = stellar_subdivision_named(&current, &edge, &apex)?;
        created.push((b, apex));
    }
    let before = c.distances_from(&Face::singleton(aid));
    let after = current.distances_from(&Face::singleton(current.vertex(a)?));
    for v in c.vertices().filter(|&v| v != aid) {
        let v2 = current.vertex(c.label(v))?;
        let expected = before[v as usize].map(|d| d + 1);
        if after[v2 as usize] != expected {
            return Err(Error::Invariant(format!(
                "distance from {a} to {} changed from {:?} to {:?}",
                c.label(v),
                before[v as usize],
                after[v2 as usize]
            )));
        }
    }
    Ok((current, created))
}

/// The stacked complex `{{u, v_i, ..., v_(i+dim-1)} : i = 1..len}` with facets of
/// size `dim + 1`. Vertex `0` is `u`, vertex `i` is `v_i`; `name` labels them.
pub fn stack_complex_with(len: usize, dim: usize, name: impl Fn(usize) -> String) -> Result<Complex> {
    if len < 1 || dim < 2 {
        return Err(Error::InvalidParams(format!("stack needs length >= 1 and dimension >= 2, got {len} and {dim}")));
    }
    let facets: Vec<Vec<String>> = (1..=len)
        .map(|i| std::iter::once(name(0)).chain((i..i + dim).map(&name)).collect())
        .collect();
    build(facets)
}

/// Stacked complex labeled `u`, `v1`, `v2`, ...
pub fn stack_complex(len: usize, dim: usize) -> Result<Complex> {
    stack_complex_with(len, dim, |i| if i == 0 { "u".to_string() } else { format!("v{i}") })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complex(facets: &[&[&str]]) -> Complex {
        Complex::from_facets(facets.iter().map(|f| f.iter().copied())).unwrap()
    }

    #[test]
    fn joins() {
        let cone = join(&complex(&[&["a", "b"]]), &complex(&[&["v"]])).unwrap();
        assert_eq!(cone.canonical_key(), vec![vec!["a", "b", "v"]]);
        let e = join(&complex(&[&["a", "b"]]), &complex(&[&["c", "d"]])).unwrap();
        assert_eq!(e.num_facets(), 1);
        assert_eq!(e.facet_size(), 4);
        assert!(matches!(join(&complex(&[&["a"]]), &complex(&[&["a"]])), Err(Error::LabelCollision(_))));
        let r = join_relabel(&complex(&[&["a"]]), &complex(&[&["a"], &["b"]])).unwrap();
        assert_eq!(r.num_facets(), 2);
        let s = suspension(&complex(&[&["1", "2"], &["2", "3"]]), "n", "s").unwrap();
        assert_eq!(s.num_facets(), 4);
    }

    #[test]
    fn ops_of_point_is_edge() {
        let (c, a, b) = one_point_suspension(&complex(&[&["a"]]), "a").unwrap();
        assert_eq!(c.canonical_key(), vec![vec![a, b]]);
    }

    #[test]
    fn ops_counts() {
        let fan = complex(&[&["1", "2"], &["1", "3"], &["1", "4"]]);
        let (c, _, _) = one_point_suspension(&fan, "2").unwrap();
        assert_eq!(c.num_vertices(), fan.num_vertices() + 1);
        assert_eq!(c.facet_size(), 3);
        assert_eq!(c.num_facets(), 5);
    }

    #[test]
    fn stellar_of_simplex() {
        let s = complex(&[&["1", "2", "3"]]);
        let f = s.face(&["1", "2", "3"]).unwrap();
        let c = stellar_subdivision_named(&s, &f, "a").unwrap();
        assert_eq!(
            c.canonical_key(),
            vec![vec!["1", "2", "a"], vec!["1", "3", "a"], vec!["2", "3", "a"]]
        );
        let t = complex(&[&["1", "2"], &["2", "3"], &["1", "3"]]);
        let e = t.face(&["1", "2"]).unwrap();
        let c = stellar_subdivision_named(&t, &e, "a").unwrap();
        assert_eq!(c.num_facets(), 4);
        assert!(c.is_facet(&c.face(&["1", "a"]).unwrap()));
        assert!(c.is_facet(&c.face(&["2", "a"]).unwrap()));
    }

    #[test]
    fn edge_star_subdivision() {
        let t = complex(&[&["1", "2"], &["2", "3"], &["1", "3"]]);
        let (c, made) = subdivide_all_edges_at(&t, "1", &mut FreshLabelSource::new("n")).unwrap();
        assert_eq!(made.len(), 2);
        assert_eq!(c.num_vertices(), 5);
        let d = c.vertex_distance(&c.face(&["1"]).unwrap(), &c.face(&["2"]).unwrap()).unwrap();
        assert_eq!(d, crate::ExtNat::Finite(2));
    }

    #[test]
    fn stacks() {
        let c = stack_complex(5, 3).unwrap();
        assert_eq!((c.num_vertices(), c.num_facets()), (8, 5));
        assert_eq!(c.dual_diameter(), crate::ExtNat::Finite(4));
        let one = stack_complex(1, 2).unwrap();
        assert_eq!(one.canonical_key(), vec![vec!["u", "v1", "v2"]]);
        let c = stack_complex(3, 3).unwrap();
        let g = c.face(&["u", "v1", "v2"]).unwrap();
        let f = c.face(&["u", "v3", "v4", "v5"]).unwrap();
        assert_eq!(g.intersection(&f), c.face(&["u"]).unwrap());
        assert!(stack_complex(0, 3).is_err());
    }
}
