//! Seeded random complexes for property checks.
//!
//! Every generator is deterministic in its seed. Vertex labels are `v00`,
//! `v01`, ... so label order matches numeric order.

use std::collections::BTreeSet;
use std::ops::RangeInclusive;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{Complex, Face};
use crate::constructions::{one_point_suspension_named, stellar_subdivision_named};

fn name(i: usize) -> String {
    format!("v{i:02}")
}

fn from_index_sets(sets: &BTreeSet<Vec<usize>>) -> Option<Complex> {
    Complex::from_facets(sets.iter().map(|f| f.iter().map(|&i| name(i)).collect::<Vec<_>>())).ok()
}

fn next_free(c: &Complex) -> String {
    (0..).map(name).find(|l| c.vertex(l).is_err()).unwrap()
}

/// Grows a pure complex facet by facet, each new facet sharing a ridge with
/// an existing one. Not necessarily normal.
pub fn grow_pure(rng: &mut ChaCha8Rng, facet_size: usize, max_vertices: usize, facets: usize) -> Option<Complex> {
    if facet_size == 0 || max_vertices < facet_size {
        return None;
    }
    let mut sets: BTreeSet<Vec<usize>> = BTreeSet::new();
    sets.insert((0..facet_size).collect());
    let mut used = facet_size;
    let mut attempts = 0;
    while sets.len() < facets && attempts < facets * 20 {
        attempts += 1;
        let all: Vec<&Vec<usize>> = sets.iter().collect();
        let base = all[rng.gen_range(0..all.len())];
        let mut ridge = base.clone();
        ridge.remove(rng.gen_range(0..ridge.len()));
        let fresh = used < max_vertices && rng.gen_bool(0.45);
        let extra = if fresh {
            used
        } else {
            let options: Vec<usize> = (0..used).filter(|v| !base.contains(v)).collect();
            match options.choose(rng) {
                Some(&v) => v,
                None => continue,
            }
        };
        ridge.push(extra);
        ridge.sort_unstable();
        if sets.insert(ridge) && fresh {
            used += 1;
        }
    }
    from_index_sets(&sets)
}

/// `count` normal complexes with at most `max_vertices` vertices and facet
/// size in `facet_sizes`.
pub fn normal_complexes(
    seed: u64,
    count: usize,
    max_vertices: usize,
    facet_sizes: RangeInclusive<usize>,
) -> Vec<Complex> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let (lo, hi) = (*facet_sizes.start().max(&1), *facet_sizes.end().min(&max_vertices));
    assert!(lo <= hi, "no facet size fits");
    while out.len() < count {
        let d = rng.gen_range(lo..=hi);
        let facets = rng.gen_range(1..=14);
        if let Some(c) = grow_pure(&mut rng, d, max_vertices, facets) {
            if c.is_normal() {
                out.push(c);
            }
        }
    }
    out
}

/// Boundary of the simplex on `facet_size + 1` vertices.
pub fn simplex_boundary(facet_size: usize) -> Complex {
    let all: Vec<usize> = (0..=facet_size).collect();
    let sets: BTreeSet<Vec<usize>> = (0..=facet_size)
        .map(|skip| all.iter().copied().filter(|&v| v != skip).collect())
        .collect();
    from_index_sets(&sets).unwrap()
}

pub fn cycle(n: usize) -> Complex {
    let sets: BTreeSet<Vec<usize>> = (0..n)
        .map(|i| {
            let mut e = vec![i, (i + 1) % n];
            e.sort_unstable();
            e
        })
        .collect();
    from_index_sets(&sets).unwrap()
}

fn random_face(rng: &mut ChaCha8Rng, c: &Complex, min_size: usize) -> Face {
    let f = c.facets().choose(rng).unwrap();
    let mut vs = f.vertices().to_vec();
    vs.shuffle(rng);
    let size = rng.gen_range(min_size.min(vs.len())..=vs.len());
    Face::new(vs[..size].to_vec())
}

/// Random stellar subdivisions of faces of size at least `min_size` until
/// the vertex budget is used up or `steps` subdivisions are done.
fn subdivide_randomly(rng: &mut ChaCha8Rng, mut c: Complex, min_size: usize, max_vertices: usize, steps: usize) -> Complex {
    for _ in 0..steps {
        if c.num_vertices() >= max_vertices {
            break;
        }
        let f = random_face(rng, &c, min_size);
        let apex = next_free(&c);
        c = stellar_subdivision_named(&c, &f, &apex).unwrap();
    }
    c
}

/// Normal pseudomanifolds with and without boundary: cycles, subdivided
/// simplex boundaries, subdivided simplices, one-point suspensions of those.
pub fn pseudomanifolds(seed: u64, count: usize, max_vertices: usize) -> Vec<Complex> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let kind = rng.gen_range(0..4);
        let c = match kind {
            0 => cycle(rng.gen_range(3..=max_vertices.max(3))),
            1 | 2 => {
                let d = rng.gen_range(2..=4);
                if d + 1 > max_vertices {
                    continue;
                }
                let base = if kind == 1 {
                    simplex_boundary(d)
                } else {
                    Complex::simplex(&(0..d).map(name).collect::<Vec<_>>()).unwrap()
                };
                let steps = rng.gen_range(0..=max_vertices);
                subdivide_randomly(&mut rng, base, 1, max_vertices, steps)
            }
            _ => {
                let d = rng.gen_range(2..=3);
                let steps = rng.gen_range(0..=max_vertices);
                let base = subdivide_randomly(&mut rng, simplex_boundary(d), 1, max_vertices.saturating_sub(1), steps);
                let v = base.label(rng.gen_range(0..base.num_vertices() as u32)).to_string();
                let fresh = next_free(&base);
                one_point_suspension_named(&base, &v, &v, &fresh).unwrap()
            }
        };
        if c.num_vertices() <= max_vertices && c.is_pseudomanifold() && c.is_normal() {
            out.push(c);
        }
    }
    out
}

/// Clique complex of a random graph, if pure.
fn random_clique_complex(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Option<Complex> {
    let mut adj = vec![vec![false; n]; n];
    for (i, j) in (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))) {
        if rng.gen_bool(p) {
            adj[i][j] = true;
            adj[j][i] = true;
        }
    }
    let mut maximal = BTreeSet::new();
    bron_kerbosch(&adj, Vec::new(), (0..n).collect(), Vec::new(), &mut maximal);
    let size = maximal.iter().next()?.len();
    if size < 2 || maximal.iter().any(|c| c.len() != size) {
        return None;
    }
    from_index_sets(&maximal)
}

fn bron_kerbosch(adj: &[Vec<bool>], r: Vec<usize>, p: Vec<usize>, mut x: Vec<usize>, out: &mut BTreeSet<Vec<usize>>) {
    if p.is_empty() && x.is_empty() {
        out.insert(r);
        return;
    }
    let mut p = p;
    while let Some(v) = p.pop() {
        let mut r2 = r.clone();
        r2.push(v);
        r2.sort_unstable();
        let p2 = p.iter().copied().filter(|&w| adj[v][w]).collect();
        let x2 = x.iter().copied().filter(|&w| adj[v][w]).collect();
        bron_kerbosch(adj, r2, p2, x2, out);
        x.push(v);
    }
}

/// Boundary of the cross-polytope with `facet_size` axes.
pub fn cross_polytope_boundary(facet_size: usize) -> Complex {
    let sets: BTreeSet<Vec<usize>> = (0..1usize << facet_size)
        .map(|mask| (0..facet_size).map(|i| 2 * i + ((mask >> i) & 1)).collect())
        .collect();
    from_index_sets(&sets).unwrap()
}

/// Flag normal complexes: cycles, clique complexes of random graphs and
/// cross-polytope boundaries with random edge subdivisions.
pub fn flag_complexes(seed: u64, count: usize, max_vertices: usize) -> Vec<Complex> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let c = match rng.gen_range(0..4) {
            0 => cycle(rng.gen_range(4..=max_vertices.max(4))),
            1 | 2 => {
                let n = rng.gen_range(4..=max_vertices.max(4));
                let p = rng.gen_range(0.3..0.8);
                match random_clique_complex(&mut rng, n, p) {
                    Some(c) => c,
                    None => continue,
                }
            }
            _ => {
                let d = rng.gen_range(2..=3);
                if 2 * d > max_vertices {
                    continue;
                }
                let steps = rng.gen_range(0..=max_vertices - 2 * d);
                subdivide_randomly(&mut rng, cross_polytope_boundary(d), 2, max_vertices, steps)
            }
        };
        if c.num_vertices() <= max_vertices && c.is_flag() && c.is_normal() {
            out.push(c);
        }
    }
    out
}
