use std::collections::{BTreeSet, HashMap, HashSet};

use super::{deletion_facets, Complex, ExtNat, Face, VertexId};

impl Complex {
    /// Every star (the empty face's star is the whole complex) has a connected
    /// dual graph.
    pub fn is_normal(&self) -> bool {
        let d = self.facet_size();
        self.all_faces()
            .iter()
            .filter(|f| f.len() + 1 < d || f.is_empty())
            .all(|f| self.star_is_connected(f))
    }

    fn star_is_connected(&self, f: &Face) -> bool {
        let members = self.facets_containing(f);
        if members.len() <= 1 {
            return true;
        }
        let inside: HashSet<usize> = members.iter().copied().collect();
        let dist = self
            .dual_graph()
            .distances_within(members[0], |g| inside.contains(&g));
        members.iter().all(|&g| dist[g].is_some())
    }

    /// Whether every ridge lies in one or two facets, together with the
    /// ridges lying in exactly one (the boundary).
    pub fn pseudomanifold_boundary(&self) -> (bool, Vec<Face>) {
        let mut counts: HashMap<Face, usize> = HashMap::new();
        for f in self.facets() {
            for v in f.iter() {
                *counts.entry(f.without(v)).or_default() += 1;
            }
        }
        let ok = counts.values().all(|&c| c <= 2);
        let mut boundary: Vec<Face> = counts
            .into_iter()
            .filter(|&(_, c)| c == 1)
            .map(|(r, _)| r)
            .collect();
        boundary.sort();
        (ok, boundary)
    }

    pub fn is_pseudomanifold(&self) -> bool {
        self.pseudomanifold_boundary().0
    }

    /// Pseudomanifold with empty boundary.
    pub fn is_closed_pseudomanifold(&self) -> bool {
        let (ok, boundary) = self.pseudomanifold_boundary();
        ok && boundary.is_empty()
    }

    /// Vertex sets that are not faces but whose proper subsets all are.
    pub fn minimal_nonfaces(&self) -> BTreeSet<Face> {
        let mut out = BTreeSet::new();
        for f in self.all_faces() {
            if f.is_empty() {
                continue;
            }
            let candidates: Vec<VertexId> = if f.len() == 1 {
                self.vertices().filter(|&v| !f.contains(v)).collect()
            } else {
                self.common_neighbors(&f)
            };
            for v in candidates {
                let t = f.with(v);
                if self.is_face(&t) {
                    continue;
                }
                if t.iter().all(|w| self.is_face(&t.without(w))) {
                    out.insert(t);
                }
            }
        }
        out
    }

    /// All minimal nonfaces are edges.
    pub fn is_flag(&self) -> bool {
        self.minimal_nonfaces().iter().all(|f| f.len() == 2)
    }

    fn common_neighbors(&self, f: &Face) -> Vec<VertexId> {
        let mut it = f.iter();
        let Some(first) = it.next() else {
            return self.vertices().collect();
        };
        let mut common: Vec<VertexId> = self.neighbors(first).to_vec();
        for v in it {
            let nb = self.neighbors(v);
            common.retain(|w| nb.binary_search(w).is_ok());
        }
        common
    }

    /// Smallest `k >= 2` such that every critical clique with at least `k + 1`
    /// vertices is a face. A critical clique is a face plus one vertex adjacent
    /// to all of it.
    pub fn bannerness(&self) -> usize {
        let mut largest = 0;
        for f in self.all_faces() {
            if f.is_empty() {
                continue;
            }
            for v in self.common_neighbors(&f) {
                let t = f.with(v);
                if t.len() > largest && !self.is_face(&t) {
                    largest = t.len();
                }
            }
        }
        largest.max(2)
    }

    pub fn is_vertex_decomposable(&self) -> bool {
        let mut memo = HashMap::new();
        vertex_decomposable(self.facets().to_vec(), &mut memo)
    }

    /// Largest dual-graph distance between two facets.
    pub fn dual_diameter(&self) -> ExtNat {
        let graph = self.dual_graph();
        let mut best = 0;
        for f in 0..self.num_facets() {
            let dist = graph.distances_within(f, |_| true);
            for d in dist {
                match d {
                    None => return ExtNat::Infinity,
                    Some(d) => best = best.max(d as u32),
                }
            }
        }
        ExtNat::Finite(best)
    }
}

fn vertex_decomposable(mut facets: Vec<Face>, memo: &mut HashMap<Vec<Face>, bool>) -> bool {
    facets.sort();
    facets.dedup();
    if facets.len() == 1 {
        return true;
    }
    if let Some(&known) = memo.get(&facets) {
        return known;
    }
    let vertices: BTreeSet<VertexId> = facets.iter().flat_map(|f| f.iter()).collect();
    let mut result = false;
    for x in vertices {
        let shed = Face::singleton(x);
        let Some(deletion) = deletion_facets(&facets, &shed) else {
            continue;
        };
        if deletion.is_empty() {
            continue;
        }
        let link: Vec<Face> = facets
            .iter()
            .filter(|f| f.contains(x))
            .map(|f| f.without(x))
            .collect();
        if vertex_decomposable(link, memo) && vertex_decomposable(deletion, memo) {
            result = true;
            break;
        }
    }
    memo.insert(facets, result);
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complex(facets: &[&[&str]]) -> Complex {
        Complex::from_facets(facets.iter().map(|f| f.iter().copied())).unwrap()
    }

    fn hollow_triangle() -> Complex {
        complex(&[&["1", "2"], &["2", "3"], &["1", "3"]])
    }

    #[test]
    fn normality() {
        assert!(!complex(&[&["1", "2", "3"], &["1", "4", "5"]]).is_normal());
        assert!(complex(&[&["1", "2", "3"]]).is_normal());
        assert!(!complex(&[&["1", "2"], &["3", "4"]]).is_normal());
        assert!(hollow_triangle().is_normal());
    }

    #[test]
    fn pseudomanifolds() {
        let cycle = complex(&[&["1", "2"], &["2", "3"], &["3", "4"], &["4", "5"], &["1", "5"]]);
        assert_eq!(cycle.pseudomanifold_boundary(), (true, vec![]));
        let fan = complex(&[&["1", "2"], &["1", "3"], &["1", "4"]]);
        assert!(!fan.is_pseudomanifold());
        let path = complex(&[&["1", "2"], &["2", "3"]]);
        let (ok, boundary) = path.pseudomanifold_boundary();
        assert!(ok);
        assert_eq!(boundary.len(), 2);
    }

    #[test]
    fn nonfaces_and_flagness() {
        let t = hollow_triangle();
        let nf: Vec<Face> = t.minimal_nonfaces().into_iter().collect();
        assert_eq!(nf, vec![t.face(&["1", "2", "3"]).unwrap()]);
        assert!(!t.is_flag());
        let s = complex(&[&["1", "2", "3"]]);
        assert!(s.minimal_nonfaces().is_empty());
        assert!(s.is_flag());
        let square = complex(&[&["1", "2"], &["2", "3"], &["3", "4"], &["1", "4"]]);
        assert_eq!(square.minimal_nonfaces().len(), 2);
        assert!(square.is_flag());
    }

    #[test]
    fn bannerness_values() {
        assert_eq!(complex(&[&["1", "2", "3"]]).bannerness(), 2);
        let c = complex(&[&["1", "2"], &["2", "3"], &["1", "3"], &["4", "5"]]);
        assert_eq!(c.bannerness(), 3);
        let boundary_tetra = complex(&[
            &["1", "2", "3"],
            &["1", "2", "4"],
            &["1", "3", "4"],
            &["2", "3", "4"],
        ]);
        assert_eq!(boundary_tetra.bannerness(), 4);
    }

    #[test]
    fn vertex_decomposability() {
        assert!(complex(&[&["1", "2", "3"]]).is_vertex_decomposable());
        assert!(complex(&[&["1", "2"], &["1", "3"], &["1", "4"]]).is_vertex_decomposable());
        assert!(!complex(&[&["1", "2"], &["3", "4"]]).is_vertex_decomposable());
        assert!(hollow_triangle().is_vertex_decomposable());
    }

    #[test]
    fn diameters() {
        let fan = complex(&[&["1", "2"], &["1", "3"], &["1", "4"]]);
        assert_eq!(fan.dual_diameter(), ExtNat::Finite(1));
        assert_eq!(
            complex(&[&["1", "2"], &["3", "4"]]).dual_diameter(),
            ExtNat::Infinity
        );
        let path = complex(&[&["1", "2"], &["2", "3"], &["3", "4"]]);
        assert_eq!(path.dual_diameter(), ExtNat::Finite(2));
    }
}
