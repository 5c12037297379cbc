//! Ordered facets, vectors of distances and admissible orderings.
//!
//! A vector of distances is evaluated level by level: level `i` lives in the
//! link of the first `i` vertices, and carries its own target set. Each level
//! measures distances in the 1-skeleton of that link.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

use crate::complex::{Complex, ExtNat, Face, VertexId};
use crate::error::{Error, Result};

/// A facet together with a total order on its vertices. The first vertex is
/// the anchor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderedFacet(Vec<VertexId>);

impl OrderedFacet {
    pub fn new(vertices: Vec<VertexId>) -> Self {
        OrderedFacet(vertices)
    }

    pub fn from_labels<S: AsRef<str>>(complex: &Complex, labels: &[S]) -> Result<Self> {
        let vertices = labels
            .iter()
            .map(|l| complex.vertex(l.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        let of = OrderedFacet(vertices);
        if of.set().len() != of.len() || !complex.is_facet(&of.set()) {
            return Err(Error::NotAFacet(of.display(complex)));
        }
        Ok(of)
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn anchor(&self) -> Option<VertexId> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<VertexId> {
        self.0.last().copied()
    }

    pub fn set(&self) -> Face {
        Face::new(self.0.clone())
    }

    /// The ordering with its first vertex dropped.
    pub fn tail(&self) -> OrderedFacet {
        OrderedFacet(self.0.iter().skip(1).copied().collect())
    }

    /// The ordering with `v` put in front.
    pub fn prepend(&self, v: VertexId) -> OrderedFacet {
        let mut out = Vec::with_capacity(self.0.len() + 1);
        out.push(v);
        out.extend_from_slice(&self.0);
        OrderedFacet(out)
    }

    /// Length of the longest common prefix with `other`: the step index.
    pub fn common_prefix(&self, other: &OrderedFacet) -> usize {
        self.0
            .iter()
            .zip(other.0.iter())
            .take_while(|(a, b)| a == b)
            .count()
    }

    pub fn labels<'c>(&self, complex: &'c Complex) -> Vec<&'c str> {
        self.0.iter().map(|&v| complex.label(v)).collect()
    }

    /// `(a1 a4 a2)`
    pub fn display(&self, complex: &Complex) -> String {
        format!("({})", self.labels(complex).join(" "))
    }
}

/// The vector of distances of an ordered facet. Compared lexicographically,
/// with infinity above every finite entry.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DistanceVector(pub Vec<ExtNat>);

impl DistanceVector {
    pub fn entries(&self) -> &[ExtNat] {
        &self.0
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|e| e.is_finite())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == ExtNat::Finite(0))
    }
}

impl fmt::Display for DistanceVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|e| e.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

struct LinkSkeleton {
    /// Facet size of the link.
    facet_size: usize,
    adjacency: HashMap<VertexId, Vec<VertexId>>,
}

/// BFS distance of each reachable vertex.
type Layers = Rc<HashMap<VertexId, u32>>;

/// Evaluates distance vectors and admissibility against one target set,
/// caching link skeletons and BFS layers. Not shared between threads.
pub struct Evaluator<'c> {
    complex: &'c Complex,
    target: Face,
    skeletons: RefCell<HashMap<Face, Rc<LinkSkeleton>>>,
    layers: RefCell<HashMap<Face, HashMap<Face, Layers>>>,
    orderings: RefCell<HashMap<Face, Rc<Vec<OrderedFacet>>>>,
    verdicts: RefCell<HashMap<OrderedFacet, (DistanceVector, bool)>>,
}

impl<'c> Evaluator<'c> {
    pub fn new(complex: &'c Complex, target: &Face) -> Result<Self> {
        if target.is_empty() {
            return Err(Error::EmptyTarget);
        }
        if let Some(v) = target.iter().find(|&v| v as usize >= complex.num_vertices()) {
            return Err(Error::UnknownVertex(format!("#{v}")));
        }
        Ok(Evaluator {
            complex,
            target: target.clone(),
            skeletons: RefCell::new(HashMap::new()),
            layers: RefCell::new(HashMap::new()),
            orderings: RefCell::new(HashMap::new()),
            verdicts: RefCell::new(HashMap::new()),
        })
    }

    pub fn complex(&self) -> &'c Complex {
        self.complex
    }

    pub fn target(&self) -> &Face {
        &self.target
    }

    fn skeleton(&self, prefix: &Face) -> Rc<LinkSkeleton> {
        if let Some(s) = self.skeletons.borrow().get(prefix) {
            return s.clone();
        }
        let mut adjacency: HashMap<VertexId, Vec<VertexId>> = HashMap::new();
        for i in self.complex.facets_containing(prefix) {
            let rest = self.complex.facet(i).difference(prefix);
            for a in rest.iter() {
                let entry = adjacency.entry(a).or_default();
                entry.extend(rest.iter().filter(|&b| b != a));
            }
        }
        for list in adjacency.values_mut() {
            list.sort_unstable();
            list.dedup();
        }
        let skel = Rc::new(LinkSkeleton {
            facet_size: self.complex.facet_size() - prefix.len(),
            adjacency,
        });
        self.skeletons.borrow_mut().insert(prefix.clone(), skel.clone());
        skel
    }

    /// BFS layers from `target` in the 1-skeleton of the link of `prefix`.
    fn layers(&self, prefix: &Face, target: &Face) -> Rc<HashMap<VertexId, u32>> {
        if let Some(l) = self.layers.borrow().get(prefix).and_then(|m| m.get(target)) {
            return l.clone();
        }
        let skel = self.skeleton(prefix);
        let mut dist: HashMap<VertexId, u32> = HashMap::new();
        let mut frontier: Vec<VertexId> = Vec::new();
        for t in target.iter() {
            if skel.adjacency.contains_key(&t) && dist.insert(t, 0).is_none() {
                frontier.push(t);
            }
        }
        let mut level = 0;
        while !frontier.is_empty() {
            level += 1;
            let mut next = Vec::new();
            for v in frontier {
                for &w in &skel.adjacency[&v] {
                    if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(w) {
                        e.insert(level);
                        next.push(w);
                    }
                }
            }
            frontier = next;
        }
        let dist = Rc::new(dist);
        self.layers
            .borrow_mut()
            .entry(prefix.clone())
            .or_default()
            .insert(target.clone(), dist.clone());
        dist
    }

    /// `vdist(v, target)` inside the link of `prefix`.
    fn level_distance(&self, prefix: &Face, target: &Face, v: VertexId) -> ExtNat {
        if target.is_empty() {
            return ExtNat::Infinity;
        }
        let skel = self.skeleton(prefix);
        if skel.facet_size == 1 {
            return ExtNat::Finite(if target.contains(v) { 0 } else { 1 });
        }
        self.layers(prefix, target)
            .get(&v)
            .map_or(ExtNat::Infinity, |&d| ExtNat::Finite(d))
    }

    /// Target set for the link of `prefix ∪ {v}`, given the current level's
    /// target and the distance `lambda` of `v`.
    fn reduced(&self, prefix: &Face, target: &Face, v: VertexId, lambda: ExtNat) -> Face {
        let skel = self.skeleton(prefix);
        let link_vertices: &[VertexId] = skel.adjacency.get(&v).map_or(&[], |l| l.as_slice());
        if target.contains(v) {
            return link_vertices.iter().copied().filter(|&w| target.contains(w)).collect();
        }
        match lambda {
            ExtNat::Finite(l) if l > 0 => {
                let layers = self.layers(prefix, target);
                link_vertices
                    .iter()
                    .copied()
                    .filter(|w| layers.get(w) == Some(&(l - 1)))
                    .collect()
            }
            _ => Face::empty(),
        }
    }

    /// `S'` for anchor `v` at the top level.
    pub fn reduce_target(&self, v: VertexId) -> Result<Face> {
        if v as usize >= self.complex.num_vertices() {
            return Err(Error::UnknownVertex(format!("#{v}")));
        }
        let root = Face::empty();
        let lambda = self.level_distance(&root, &self.target, v);
        Ok(self.reduced(&root, &self.target, v, lambda))
    }

    fn require_facet(&self, f: &OrderedFacet) -> Result<()> {
        let set = f.set();
        if set.len() != f.len() || !self.complex.is_facet(&set) {
            return Err(Error::NotAFacet(self.complex.format_face(&set)));
        }
        Ok(())
    }

    /// Walks the levels of `f`, returning the vector and whether every level
    /// picked a closest vertex.
    fn walk(&self, f: &OrderedFacet) -> (DistanceVector, bool) {
        let mut prefix = Face::empty();
        let mut target = self.target.clone();
        let mut entries = Vec::with_capacity(f.len());
        let mut admissible = true;
        let verts = f.vertices();
        for (i, &v) in verts.iter().enumerate() {
            let lambda = self.level_distance(&prefix, &target, v);
            if admissible {
                let best = verts[i..]
                    .iter()
                    .map(|&w| self.level_distance(&prefix, &target, w))
                    .min()
                    .unwrap();
                admissible = lambda == best;
            }
            entries.push(lambda);
            if i + 1 < verts.len() {
                target = self.reduced(&prefix, &target, v, lambda);
                prefix = prefix.with(v);
            }
        }
        (DistanceVector(entries), admissible)
    }

    pub fn distance_vector(&self, f: &OrderedFacet) -> Result<DistanceVector> {
        self.require_facet(f)?;
        Ok(self.walk(f).0)
    }

    pub fn is_admissible(&self, f: &OrderedFacet) -> Result<bool> {
        self.require_facet(f)?;
        Ok(self.walk(f).1)
    }

    /// Vector and admissibility in one pass, for callers that already know `f`
    /// is a facet.
    pub(crate) fn evaluate(&self, f: &OrderedFacet) -> (DistanceVector, bool) {
        if let Some(v) = self.verdicts.borrow().get(f) {
            return v.clone();
        }
        let v = self.walk(f);
        self.verdicts.borrow_mut().insert(f.clone(), v.clone());
        v
    }

    /// Every admissible ordering of `facet`, in lexicographic order.
    pub fn admissible_orderings(&self, facet: &Face) -> Result<Vec<OrderedFacet>> {
        if !self.complex.is_facet(facet) {
            return Err(Error::NotAFacet(self.complex.format_face(facet)));
        }
        Ok(self.cached_orderings(facet).to_vec())
    }

    fn cached_orderings(&self, facet: &Face) -> Rc<Vec<OrderedFacet>> {
        if let Some(o) = self.orderings.borrow().get(facet) {
            return o.clone();
        }
        let mut out = Vec::new();
        let mut chosen = Vec::with_capacity(facet.len());
        self.branch(&Face::empty(), &self.target, facet.vertices(), &mut chosen, &mut out);
        let out = Rc::new(out);
        self.orderings.borrow_mut().insert(facet.clone(), out.clone());
        out
    }

    fn branch(
        &self,
        prefix: &Face,
        target: &Face,
        remaining: &[VertexId],
        chosen: &mut Vec<VertexId>,
        out: &mut Vec<OrderedFacet>,
    ) {
        if remaining.is_empty() {
            out.push(OrderedFacet(chosen.clone()));
            return;
        }
        let dists: Vec<ExtNat> = remaining
            .iter()
            .map(|&w| self.level_distance(prefix, target, w))
            .collect();
        let best = *dists.iter().min().unwrap();
        for (i, &v) in remaining.iter().enumerate() {
            if dists[i] != best {
                continue;
            }
            let rest: Vec<VertexId> = remaining.iter().copied().filter(|&w| w != v).collect();
            let next_target = if rest.is_empty() {
                Face::empty()
            } else {
                self.reduced(prefix, target, v, best)
            };
            chosen.push(v);
            self.branch(&prefix.with(v), &next_target, &rest, chosen, out);
            chosen.pop();
        }
    }

    /// Admissible orderings of `facet` sharing the longest prefix with `prev`.
    pub fn max_index_reorder(&self, facet: &Face, prev: &OrderedFacet) -> Result<Vec<OrderedFacet>> {
        if !self.complex.is_facet(facet) {
            return Err(Error::NotAFacet(self.complex.format_face(facet)));
        }
        let all = self.cached_orderings(facet);
        let best = all
            .iter()
            .map(|o| o.common_prefix(prev))
            .max()
            .ok_or_else(|| Error::NoAdmissibleOrdering(self.complex.format_face(facet)))?;
        Ok(all.iter().filter(|o| o.common_prefix(prev) == best).cloned().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::Complex;

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
    fn fig3_vectors() {
        let c = fig3();
        let ev = Evaluator::new(&c, &c.face(&["a8"]).unwrap()).unwrap();
        let f = of(&c, &["a1", "a2", "a3"]);
        assert_eq!(ev.distance_vector(&f).unwrap().to_string(), "(2,2,1)");
        assert!(ev.is_admissible(&f).unwrap());
        for h in [["a1", "a4", "a2"], ["a4", "a1", "a2"], ["a5", "a1", "a3"], ["a1", "a5", "a3"]] {
            let h = of(&c, &h);
            assert_eq!(ev.distance_vector(&h).unwrap().to_string(), "(2,1,1)");
            assert!(ev.is_admissible(&h).unwrap());
        }
        let a1 = c.vertex("a1").unwrap();
        assert_eq!(ev.reduce_target(a1).unwrap(), c.face(&["a6", "a7"]).unwrap());
    }

    #[test]
    fn max_index() {
        let c = fig3();
        let ev = Evaluator::new(&c, &c.face(&["a8"]).unwrap()).unwrap();
        let f = of(&c, &["a1", "a2", "a3"]);
        let best = ev.max_index_reorder(&c.face(&["a1", "a2", "a4"]).unwrap(), &f).unwrap();
        assert_eq!(best, vec![of(&c, &["a1", "a4", "a2"])]);
        let best = ev.max_index_reorder(&c.face(&["a1", "a3", "a5"]).unwrap(), &f).unwrap();
        assert_eq!(best, vec![of(&c, &["a1", "a5", "a3"])]);
    }

    #[test]
    fn singleton_facets() {
        let c = Complex::from_facets([["x"], ["y"]]).unwrap();
        let ev = Evaluator::new(&c, &c.face(&["y"]).unwrap()).unwrap();
        let x = c.face(&["x"]).unwrap();
        assert_eq!(ev.admissible_orderings(&x).unwrap(), vec![of(&c, &["x"])]);
        assert_eq!(ev.distance_vector(&of(&c, &["x"])).unwrap().to_string(), "(1)");
        let prev = of(&c, &["x"]);
        let best = ev.max_index_reorder(&c.face(&["y"]).unwrap(), &prev).unwrap();
        assert_eq!(best, vec![of(&c, &["y"])]);
    }

    #[test]
    fn empty_reduction() {
        let c = Complex::from_facets([["1", "2"], ["1", "3"], ["1", "4"]]).unwrap();
        let ev = Evaluator::new(&c, &c.face(&["1"]).unwrap()).unwrap();
        assert!(ev.reduce_target(c.vertex("1").unwrap()).unwrap().is_empty());
        let v = ev.distance_vector(&of(&c, &["1", "2"])).unwrap();
        assert_eq!(v.to_string(), "(0,inf)");
    }

    #[test]
    fn rejects_non_facets() {
        let c = fig3();
        let ev = Evaluator::new(&c, &c.face(&["a8"]).unwrap()).unwrap();
        let bad = OrderedFacet::new(vec![0, 7, 1]);
        assert!(matches!(ev.distance_vector(&bad), Err(Error::NotAFacet(_))));
        assert!(Evaluator::new(&c, &Face::empty()).is_err());
    }
}
