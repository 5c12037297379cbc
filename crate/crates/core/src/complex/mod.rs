//! Pure simplicial complexes stored as facet lists over labeled vertices.
//!
//! Vertices are identified by dense ids assigned in lexicographic order of
//! their labels, so comparing ids is the same as comparing labels. Every
//! tie-break in the crate relies on this.

mod format;
mod predicates;

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use format::{emit_facet_list, parse_facet_list};

pub type VertexId = u32;

/// Extended natural number: a finite distance or infinity.
///
/// The derived order places every finite value below `Infinity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ExtNat {
    Finite(u32),
    Infinity,
}

impl ExtNat {
    pub fn is_finite(self) -> bool {
        matches!(self, ExtNat::Finite(_))
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            ExtNat::Finite(v) => Some(v),
            ExtNat::Infinity => None,
        }
    }
}

impl From<u32> for ExtNat {
    fn from(v: u32) -> Self {
        ExtNat::Finite(v)
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Finite(v) => write!(f, "{v}"),
            ExtNat::Infinity => f.write_str("inf"),
        }
    }
}

/// A set of vertices, kept sorted and free of duplicates.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face(Vec<VertexId>);

impl Face {
    pub fn new(mut vertices: Vec<VertexId>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Face(vertices)
    }

    pub fn empty() -> Self {
        Face(Vec::new())
    }

    pub fn singleton(v: VertexId) -> Self {
        Face(vec![v])
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

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset(&self, other: &Face) -> bool {
        self.0.iter().all(|&v| other.contains(v))
    }

    pub fn meets(&self, other: &Face) -> bool {
        self.0.iter().any(|&v| other.contains(v))
    }

    pub fn intersection(&self, other: &Face) -> Face {
        Face(self.0.iter().copied().filter(|&v| other.contains(v)).collect())
    }

    pub fn difference(&self, other: &Face) -> Face {
        Face(self.0.iter().copied().filter(|&v| !other.contains(v)).collect())
    }

    pub fn union(&self, other: &Face) -> Face {
        Face::new(self.0.iter().chain(other.0.iter()).copied().collect())
    }

    pub fn without(&self, v: VertexId) -> Face {
        Face(self.0.iter().copied().filter(|&w| w != v).collect())
    }

    pub fn with(&self, v: VertexId) -> Face {
        let mut out = self.0.clone();
        if let Err(pos) = out.binary_search(&v) {
            out.insert(pos, v);
        }
        Face(out)
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.0.iter().copied()
    }

    /// All subsets of this face, the empty face included.
    pub fn subsets(&self) -> impl Iterator<Item = Face> + '_ {
        let n = self.0.len();
        (0u64..(1u64 << n)).map(move |mask| {
            Face(
                (0..n)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| self.0[i])
                    .collect(),
            )
        })
    }
}

impl FromIterator<VertexId> for Face {
    fn from_iter<I: IntoIterator<Item = VertexId>>(iter: I) -> Self {
        Face::new(iter.into_iter().collect())
    }
}

/// Facet-adjacency graph: facets are adjacent when they share all but one vertex.
#[derive(Clone, Debug)]
pub struct DualGraph {
    pub adjacency: Vec<Vec<usize>>,
}

impl DualGraph {
    pub fn neighbors(&self, facet: usize) -> &[usize] {
        &self.adjacency[facet]
    }

    /// BFS distances from `source`, restricted to facets accepted by `allowed`.
    pub fn distances_within(
        &self,
        source: usize,
        allowed: impl Fn(usize) -> bool,
    ) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.adjacency.len()];
        if !allowed(source) {
            return dist;
        }
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(f) = queue.pop_front() {
            let next = dist[f].unwrap() + 1;
            for &g in &self.adjacency[f] {
                if dist[g].is_none() && allowed(g) {
                    dist[g] = Some(next);
                    queue.push_back(g);
                }
            }
        }
        dist
    }
}

/// A pure simplicial complex given by its facets.
///
/// The complex `{∅}` (the link of a facet) is represented with facet size 0
/// and a single empty facet.
#[derive(Clone)]
pub struct Complex {
    labels: Vec<String>,
    ids: HashMap<String, VertexId>,
    facets: Vec<Face>,
    facet_index: HashMap<Face, usize>,
    facet_size: usize,
    incidence: Vec<Vec<usize>>,
    dual: OnceLock<DualGraph>,
    skeleton: OnceLock<Vec<Vec<VertexId>>>,
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Complex")
            .field("facet_size", &self.facet_size)
            .field("facets", &self.facet_strings())
            .finish()
    }
}

impl PartialEq for Complex {
    fn eq(&self, other: &Self) -> bool {
        self.canonical_key() == other.canonical_key()
    }
}

impl Eq for Complex {}

pub(crate) fn validate_label(label: &str) -> Result<()> {
    let bad = label.is_empty()
        || label
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, '{' | '}' | '(' | ')' | ',' | '#'));
    if bad {
        return Err(Error::InvalidLabel(label.to_string()));
    }
    Ok(())
}

impl Complex {
    /// Builds a complex from facets given as label lists. Repeated facets are
    /// merged; facets of differing sizes are rejected.
    pub fn from_facets<I, F, S>(facets: I) -> Result<Complex>
    where
        I: IntoIterator<Item = F>,
        F: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut raw: Vec<Vec<String>> = Vec::new();
        for facet in facets {
            let labels: Vec<String> = facet.into_iter().map(|s| s.as_ref().to_string()).collect();
            if labels.is_empty() {
                return Err(Error::InvalidFacet("empty facet".into()));
            }
            for l in &labels {
                validate_label(l)?;
            }
            let distinct: BTreeSet<&String> = labels.iter().collect();
            if distinct.len() != labels.len() {
                return Err(Error::InvalidFacet(format!(
                    "repeated vertex in {{{}}}",
                    labels.join(",")
                )));
            }
            raw.push(labels);
        }
        let first = raw.first().ok_or(Error::EmptyInput)?.len();
        if let Some(bad) = raw.iter().find(|f| f.len() != first) {
            return Err(Error::Purity {
                expected: first,
                found: bad.len(),
            });
        }
        let labels: Vec<String> = raw
            .iter()
            .flatten()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let ids: HashMap<String, VertexId> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i as VertexId))
            .collect();
        let facets = raw
            .iter()
            .map(|f| Face::new(f.iter().map(|l| ids[l]).collect()))
            .collect();
        Ok(Self::assemble(labels, facets, first))
    }

    /// The complex `{∅}`, whose only facet is the empty face.
    pub fn void() -> Complex {
        Self::assemble(Vec::new(), vec![Face::empty()], 0)
    }

    /// The simplex on the given labels.
    pub fn simplex<S: AsRef<str>>(labels: &[S]) -> Result<Complex> {
        Complex::from_facets([labels.iter().map(|s| s.as_ref())])
    }

    /// Builds a complex from facets over this complex's vertex ids, keeping
    /// only the labels that are used.
    pub(crate) fn sub_complex(&self, facets: Vec<Face>) -> Result<Complex> {
        self.relabeled(facets, |v| self.labels[v as usize].clone())
    }

    pub(crate) fn relabeled(
        &self,
        facets: Vec<Face>,
        name: impl Fn(VertexId) -> String,
    ) -> Result<Complex> {
        if facets.is_empty() {
            return Err(Error::EmptyInput);
        }
        if facets.iter().all(|f| f.is_empty()) {
            return Ok(Complex::void());
        }
        Complex::from_facets(facets.iter().map(|f| f.iter().map(&name).collect::<Vec<_>>()))
    }

    fn assemble(labels: Vec<String>, mut facets: Vec<Face>, facet_size: usize) -> Complex {
        facets.sort();
        facets.dedup();
        let ids = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i as VertexId))
            .collect();
        let facet_index = facets
            .iter()
            .enumerate()
            .map(|(i, f)| (f.clone(), i))
            .collect();
        let mut incidence = vec![Vec::new(); labels.len()];
        for (i, f) in facets.iter().enumerate() {
            for v in f.iter() {
                incidence[v as usize].push(i);
            }
        }
        Complex {
            labels,
            ids,
            facets,
            facet_index,
            facet_size,
            incidence,
            dual: OnceLock::new(),
            skeleton: OnceLock::new(),
        }
    }

    /// Number of vertices in each facet (the `d` of a `(d-1)`-complex).
    pub fn facet_size(&self) -> usize {
        self.facet_size
    }

    pub fn dimension(&self) -> isize {
        self.facet_size as isize - 1
    }

    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    pub fn is_void(&self) -> bool {
        self.facet_size == 0
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn facet(&self, index: usize) -> &Face {
        &self.facets[index]
    }

    pub fn facet_id(&self, face: &Face) -> Option<usize> {
        self.facet_index.get(face).copied()
    }

    pub fn is_facet(&self, face: &Face) -> bool {
        self.facet_index.contains_key(face)
    }

    /// Indices of the facets containing `v`.
    pub fn facets_containing_vertex(&self, v: VertexId) -> &[usize] {
        &self.incidence[v as usize]
    }

    /// Indices of the facets containing every vertex of `face`.
    pub fn facets_containing(&self, face: &Face) -> Vec<usize> {
        match face.vertices().iter().min_by_key(|&&v| self.incidence[v as usize].len()) {
            None => (0..self.facets.len()).collect(),
            Some(&v) => self.incidence[v as usize]
                .iter()
                .copied()
                .filter(|&i| face.is_subset(&self.facets[i]))
                .collect(),
        }
    }

    pub fn is_face(&self, face: &Face) -> bool {
        if face.vertices().iter().any(|&v| v as usize >= self.labels.len()) {
            return false;
        }
        !self.facets_containing(face).is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        0..self.labels.len() as VertexId
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v as usize]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex(&self, label: &str) -> Result<VertexId> {
        self.ids
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    /// Resolves a list of labels into a face (not necessarily a face of the complex).
    pub fn face<S: AsRef<str>>(&self, labels: &[S]) -> Result<Face> {
        labels.iter().map(|l| self.vertex(l.as_ref())).collect()
    }

    /// Resolves a list of labels into a facet of the complex.
    pub fn facet_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<Face> {
        let face = self.face(labels)?;
        if !self.is_facet(&face) {
            return Err(Error::NotAFacet(self.format_face(&face)));
        }
        Ok(face)
    }

    pub fn format_face(&self, face: &Face) -> String {
        let names: Vec<&str> = face.iter().map(|v| self.label(v)).collect();
        format!("{{{}}}", names.join(","))
    }

    pub fn facet_strings(&self) -> Vec<String> {
        self.facets.iter().map(|f| self.format_face(f)).collect()
    }

    /// Sorted list of sorted facet label lists; equal keys mean equal complexes.
    pub fn canonical_key(&self) -> Vec<Vec<String>> {
        let mut key: Vec<Vec<String>> = self
            .facets
            .iter()
            .map(|f| f.iter().map(|v| self.label(v).to_string()).collect())
            .collect();
        key.sort();
        key
    }

    /// Adjacency lists of the 1-skeleton, sorted by vertex id.
    pub fn skeleton(&self) -> &[Vec<VertexId>] {
        self.skeleton.get_or_init(|| {
            let mut adj: Vec<BTreeSet<VertexId>> = vec![BTreeSet::new(); self.labels.len()];
            for f in &self.facets {
                for &a in f.vertices() {
                    for &b in f.vertices() {
                        if a != b {
                            adj[a as usize].insert(b);
                        }
                    }
                }
            }
            adj.into_iter().map(|s| s.into_iter().collect()).collect()
        })
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.skeleton()[v as usize]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.neighbors(v).len()
    }

    pub fn dual_graph(&self) -> &DualGraph {
        self.dual.get_or_init(|| {
            let mut ridges: HashMap<Face, Vec<usize>> = HashMap::new();
            for (i, f) in self.facets.iter().enumerate() {
                for v in f.iter() {
                    ridges.entry(f.without(v)).or_default().push(i);
                }
            }
            let mut adjacency = vec![Vec::new(); self.facets.len()];
            for members in ridges.values() {
                for &a in members {
                    for &b in members {
                        if a != b {
                            adjacency[a].push(b);
                        }
                    }
                }
            }
            for list in &mut adjacency {
                list.sort_unstable();
                list.dedup();
            }
            DualGraph { adjacency }
        })
    }

    /// Facets sharing the ridge `facet ∖ {removed}` with `facet`.
    pub fn facets_through_ridge(&self, ridge: &Face) -> Vec<usize> {
        self.facets_containing(ridge)
    }

    fn require_face(&self, f: &Face) -> Result<()> {
        if !self.is_face(f) {
            return Err(Error::NotAFace(self.format_face_lossy(f)));
        }
        Ok(())
    }

    fn format_face_lossy(&self, f: &Face) -> String {
        let names: Vec<String> = f
            .iter()
            .map(|v| {
                self.labels
                    .get(v as usize)
                    .cloned()
                    .unwrap_or_else(|| format!("#{v}"))
            })
            .collect();
        format!("{{{}}}", names.join(","))
    }

    /// `lk_C(f) = {g : g ∪ f ∈ C, g ∩ f = ∅}` as a pure complex.
    pub fn link(&self, f: &Face) -> Result<Complex> {
        self.require_face(f)?;
        let facets = self
            .facets_containing(f)
            .into_iter()
            .map(|i| self.facets[i].difference(f))
            .collect();
        self.sub_complex(facets)
    }

    /// `st_C(f)`: the facets containing `f`.
    pub fn star(&self, f: &Face) -> Result<Complex> {
        self.require_face(f)?;
        let facets = self
            .facets_containing(f)
            .into_iter()
            .map(|i| self.facets[i].clone())
            .collect();
        self.sub_complex(facets)
    }

    /// `del_C(f)`: the faces not containing `f`. Fails when that subcomplex
    /// is not pure of the original dimension.
    pub fn deletion(&self, f: &Face) -> Result<Complex> {
        self.require_face(f)?;
        match deletion_facets(&self.facets, f) {
            Some(facets) if !facets.is_empty() => self.sub_complex(facets),
            _ => Err(Error::ImpureDeletion),
        }
    }

    /// Multi-source BFS distances in the 1-skeleton.
    pub fn distances_from(&self, sources: &Face) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.labels.len()];
        let mut queue = VecDeque::new();
        for s in sources.iter() {
            if dist[s as usize].is_none() {
                dist[s as usize] = Some(0);
                queue.push_back(s);
            }
        }
        let adj = self.skeleton();
        while let Some(v) = queue.pop_front() {
            let next = dist[v as usize].unwrap() + 1;
            for &w in &adj[v as usize] {
                if dist[w as usize].is_none() {
                    dist[w as usize] = Some(next);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// `vdist_C(S, T)`: minimum 1-skeleton distance between the two sets, with
    /// infinity for empty sets and the 0/1 convention in dimension 0.
    pub fn vertex_distance(&self, s: &Face, t: &Face) -> Result<ExtNat> {
        for v in s.iter().chain(t.iter()) {
            if v as usize >= self.labels.len() {
                return Err(Error::UnknownVertex(format!("#{v}")));
            }
        }
        if s.is_empty() || t.is_empty() {
            return Ok(ExtNat::Infinity);
        }
        if self.facet_size == 1 {
            return Ok(ExtNat::Finite(if s.meets(t) { 0 } else { 1 }));
        }
        let dist = self.distances_from(s);
        Ok(t.iter()
            .filter_map(|v| dist[v as usize])
            .min()
            .map_or(ExtNat::Infinity, ExtNat::Finite))
    }

    /// Every face of the complex, the empty face included.
    pub fn all_faces(&self) -> BTreeSet<Face> {
        let mut out = BTreeSet::new();
        for f in &self.facets {
            out.extend(f.subsets());
        }
        out
    }
}

/// Facets of the deletion of `f`, or `None` when it is not pure of the
/// original dimension.
pub(crate) fn deletion_facets(facets: &[Face], f: &Face) -> Option<Vec<Face>> {
    let kept: Vec<Face> = facets.iter().filter(|g| !f.is_subset(g)).cloned().collect();
    for g in facets.iter().filter(|g| f.is_subset(g)) {
        for &v in f.vertices() {
            let face = g.without(v);
            if !kept.iter().any(|k| face.is_subset(k)) {
                return None;
            }
        }
    }
    Some(kept)
}
