//! Guaranteed upper bounds on the intrinsic diameter of a surface of
//! revolution from shortest paths on an `(r, θ)` mesh graph.
//!
//! Every graph edge is the length of an actual curve on the surface, so
//! graph distances dominate true distances between nodes. Adding the
//! distance by which the node set can miss a farthest pair turns the
//! largest graph distance into an upper bound for the diameter.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

use serde::Serialize;

use crate::verification::surface::{Closure, SurfaceProfile};

/// Largest stencil offset in each direction.
pub const STENCIL_REACH: i64 = 3;
/// Stop refining when consecutive estimates differ by less than this.
pub const REFINEMENT_TOL: f64 = 0.01;

const GAUSS_NODES: [f64; 5] = [
    -0.906_179_845_938_664,
    -0.538_469_310_105_683,
    0.0,
    0.538_469_310_105_683,
    0.906_179_845_938_664,
];
const GAUSS_WEIGHTS: [f64; 5] = [
    0.236_926_885_056_189,
    0.478_628_670_499_366,
    0.568_888_888_888_889,
    0.478_628_670_499_366,
    0.236_926_885_056_189,
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeshDensity {
    pub rows: usize,
    pub columns: usize,
}

impl MeshDensity {
    /// `rows` meridian steps and enough columns that the widest circle is
    /// resolved as finely as the meridian.
    pub fn for_profile(profile: &SurfaceProfile, rows: usize) -> Self {
        let dr = profile.length / rows as f64;
        let width = profile.max_width(4 * rows);
        let columns = ((2.0 * PI * width / dr).ceil() as usize).max(8);
        Self { rows, columns }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiameterEstimate {
    /// Guaranteed upper bound: `graph_max + covering`.
    pub value: f64,
    pub graph_max: f64,
    pub covering: f64,
    pub mesh: MeshDensity,
    pub refinements: usize,
}

#[derive(Clone, Copy, PartialEq)]
struct Entry(f64, usize);

impl Eq for Entry {}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.total_cmp(&self.0).then(self.1.cmp(&other.1))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn stencil() -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for di in -STENCIL_REACH..=STENCIL_REACH {
        for dj in -STENCIL_REACH..=STENCIL_REACH {
            if (di, dj) != (0, 0) && gcd(di, dj) == 1 {
                out.push((di, dj));
            }
        }
    }
    out
}

/// Node layout: ring rows of `columns` nodes plus optional pole nodes.
struct Mesh {
    radii: Vec<f64>,
    columns: usize,
    poles: bool,
    /// adjacency lists `(target, length)`
    adjacency: Vec<Vec<(usize, f64)>>,
}

impl Mesh {
    fn ring_node(&self, row: usize, col: usize) -> usize {
        row * self.columns + col
    }

    fn ring_count(&self) -> usize {
        self.radii.len() * self.columns
    }

    fn build(profile: &SurfaceProfile, density: MeshDensity) -> Self {
        let l = profile.length;
        let n = density.rows;
        let columns = density.columns;
        let dr = l / n as f64;
        let dtheta = 2.0 * PI / columns as f64;
        let poles = profile.closure == Closure::TwoPoles;
        let radii: Vec<f64> = if poles {
            (1..n).map(|i| i as f64 * dr).collect()
        } else {
            (0..=n).map(|i| i as f64 * dr).collect()
        };
        let rows = radii.len();
        let mut mesh = Self {
            radii,
            columns,
            poles,
            adjacency: Vec::new(),
        };
        let total = mesh.ring_count() + if poles { 2 } else { 0 };
        mesh.adjacency = vec![Vec::new(); total];
        let offsets = stencil();
        // edge lengths depend on the row and the offset only
        for row in 0..rows {
            for &(di, dj) in &offsets {
                let target_row = row as i64 + di;
                if target_row < 0 || target_row >= rows as i64 {
                    continue;
                }
                let r0 = mesh.radii[row];
                let r1 = mesh.radii[target_row as usize];
                let angle = dj as f64 * dtheta;
                let length: f64 = GAUSS_NODES
                    .iter()
                    .zip(GAUSS_WEIGHTS)
                    .map(|(x, w)| {
                        let s = 0.5 * (x + 1.0);
                        let r = r0 + s * (r1 - r0);
                        let fr = profile.f(r);
                        0.5 * w * ((r1 - r0).powi(2) + (fr * angle).powi(2)).sqrt()
                    })
                    .sum();
                for col in 0..columns {
                    let target_col = (col as i64 + dj).rem_euclid(columns as i64) as usize;
                    let a = mesh.ring_node(row, col);
                    let b = mesh.ring_node(target_row as usize, target_col);
                    mesh.adjacency[a].push((b, length));
                }
            }
        }
        if poles {
            let south = mesh.ring_count();
            let north = south + 1;
            let reach = (STENCIL_REACH as usize).min(rows);
            for k in 0..reach {
                let near = k;
                let far = rows - 1 - k;
                for col in 0..columns {
                    let a = mesh.ring_node(near, col);
                    let b = mesh.ring_node(far, col);
                    let da = mesh.radii[near];
                    let db = l - mesh.radii[far];
                    mesh.adjacency[south].push((a, da));
                    mesh.adjacency[a].push((south, da));
                    mesh.adjacency[north].push((b, db));
                    mesh.adjacency[b].push((north, db));
                }
            }
        }
        mesh
    }

    fn farthest_from(&self, source: usize) -> f64 {
        let mut dist = vec![f64::INFINITY; self.adjacency.len()];
        let mut heap = BinaryHeap::new();
        dist[source] = 0.0;
        heap.push(Entry(0.0, source));
        while let Some(Entry(d, v)) = heap.pop() {
            if d > dist[v] {
                continue;
            }
            for &(w, len) in &self.adjacency[v] {
                let nd = d + len;
                if nd < dist[w] {
                    dist[w] = nd;
                    heap.push(Entry(nd, w));
                }
            }
        }
        dist.iter().copied().fold(0.0, f64::max)
    }

    /// Largest graph distance over all node pairs. Rotational symmetry
    /// makes the sources `(row, θ = 0)` and the poles sufficient.
    fn graph_diameter(&self) -> f64 {
        let mut sources: Vec<usize> = (0..self.radii.len()).map(|r| self.ring_node(r, 0)).collect();
        if self.poles {
            sources.push(self.ring_count());
            sources.push(self.ring_count() + 1);
        }
        let threads = std::thread::available_parallelism().map_or(1, |n| n.get()).min(sources.len());
        let chunk = sources.len().div_ceil(threads);
        std::thread::scope(|scope| {
            let handles: Vec<_> = sources
                .chunks(chunk)
                .map(|part| {
                    scope.spawn(move || part.iter().map(|&s| self.farthest_from(s)).fold(0.0, f64::max))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("shortest-path worker panicked"))
                .fold(0.0, f64::max)
        })
    }
}

/// Upper bound on the diameter on a single mesh.
pub fn diameter_on_mesh(profile: &SurfaceProfile, density: MeshDensity) -> DiameterEstimate {
    let mesh = Mesh::build(profile, density);
    let graph_max = mesh.graph_diameter();
    let dr = profile.length / density.rows as f64;
    let dtheta = 2.0 * PI / density.columns as f64;
    // Rotate a farthest pair so one end lies on the column θ = 0: it is
    // within dr/2 of a node along its meridian. The other end reaches a
    // node by a circle arc of length ≤ f·dθ/2 and a meridian segment ≤ dr/2.
    let covering = dr + 0.5 * profile.max_width(4 * density.rows) * dtheta;
    DiameterEstimate {
        value: graph_max + covering,
        graph_max,
        covering,
        mesh: density,
        refinements: 0,
    }
}

/// Upper bound on the diameter, doubling the mesh until two consecutive
/// bounds differ by less than [`REFINEMENT_TOL`] (at most `max_refinements`
/// doublings). The smallest bound found is returned; all of them are valid.
pub fn surface_diameter_upper(
    profile: &SurfaceProfile,
    start_rows: usize,
    max_refinements: usize,
) -> DiameterEstimate {
    let mut density = MeshDensity::for_profile(profile, start_rows);
    let mut best = diameter_on_mesh(profile, density);
    for level in 1..=max_refinements {
        density = MeshDensity::for_profile(profile, density.rows * 2);
        let next = diameter_on_mesh(profile, density);
        let change = (next.value - best.value).abs() / best.value;
        let improved = if next.value < best.value { next } else { best };
        best = DiameterEstimate {
            refinements: level,
            ..improved
        };
        if change < REFINEMENT_TOL {
            break;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stencil_is_symmetric_and_primitive() {
        let s = stencil();
        assert_eq!(s.len(), 32);
        for &(a, b) in &s {
            assert!(s.contains(&(-a, -b)));
        }
    }

    #[test]
    fn sphere_diameter() {
        for a in [0.5, 1.0, 2.0] {
            let s = SurfaceProfile::sphere(a).unwrap();
            let d = surface_diameter_upper(&s, 96, 0);
            assert!(d.value >= PI * a, "{d:?}");
            assert!(d.value <= PI * a * 1.02, "{d:?}");
        }
    }

    #[test]
    fn sphere_bound_tightens_under_refinement() {
        let s = SurfaceProfile::sphere(1.0).unwrap();
        let coarse = diameter_on_mesh(&s, MeshDensity { rows: 32, columns: 64 });
        let fine = diameter_on_mesh(&s, MeshDensity { rows: 64, columns: 128 });
        assert!(coarse.value >= PI && fine.value >= PI);
        assert!(fine.value < coarse.value);
    }

    #[test]
    fn flat_band_diameter() {
        for (c, l) in [(0.3, 2.0), (1.0, 1.0)] {
            let b = SurfaceProfile::flat_band(c, l).unwrap();
            let exact = (l * l + (PI * c).powi(2)).sqrt();
            let d = surface_diameter_upper(&b, 96, 0);
            assert!(d.value >= exact);
            assert!(d.value <= exact * 1.02, "{d:?} vs {exact}");
        }
    }

    #[test]
    fn thin_profiles_approach_their_length() {
        let t = SurfaceProfile::capsule(0.02, 1.0).unwrap();
        let d = surface_diameter_upper(&t, 64, 1);
        assert!(d.value >= 1.0 && d.value < 1.02, "{d:?}");
        let s = SurfaceProfile::thin_spheroid(0.02, 1.0).unwrap();
        let d = surface_diameter_upper(&s, 96, 0);
        assert!(d.value >= 1.0 && d.value < 1.02, "{d:?}");
    }
}
