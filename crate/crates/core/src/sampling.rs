//! Samples of the surface `Q = 0` along rays and the proximity graph on them.
//!
//! Every sample comes from a certified isolating interval of `build_p` on a
//! ray `(a t, b t, t/2)`, refined by exact bisection, then placed in the cube
//! by one of the three cyclic coordinate roles.

use std::collections::{HashMap, VecDeque};
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{rat, serde_rational, to_decimal_string, to_exact_string, Rational};
use crate::roots::{isolate_roots, refine_root};
use crate::surface::{build_p, CubePoint, RayParams};
use crate::union_find::UnionFind;

/// Radius of the ball around the umbilic removed by the ablation check.
pub const ABLATION_RADIUS: (i64, i64) = (1, 20);

/// One surface sample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaSample {
    pub point: CubePoint,
    pub ray: RayParams,
    /// Cyclic rotations applied to `(a t, b t, t/2)`.
    pub role: u8,
    #[serde(with = "serde_rational")]
    pub t: Rational,
    /// Position of the root along its ray: 0 for the first root in `(0, 1)`.
    pub sheet: u8,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OmegaSampleGraph {
    pub m: usize,
    #[serde(with = "serde_rational")]
    pub h: Rational,
    pub vertices: Vec<OmegaSample>,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Connectivity {
    pub components: usize,
    pub component_sizes: Vec<usize>,
    /// Path in the full graph between the two parts left after removing the
    /// umbilic neighbourhood, when the graph is connected.
    pub bridge_witness: Option<Vec<usize>>,
    /// Smallest distance from a witness vertex to the umbilic.
    pub witness_umbilic_distance: Option<f64>,
}

pub fn umbilic() -> CubePoint {
    CubePoint::unchecked(rat(1, 4), rat(1, 4), rat(1, 4))
}

/// Default proximity radius `3/(2m)`, three spacings of the ray grid.
pub fn default_radius(m: usize) -> Rational {
    rat(3, 2 * m as i64)
}

pub fn sample_omega(m: usize) -> Result<OmegaSampleGraph> {
    sample_omega_with_radius(m, default_radius(m))
}

/// Samples rays over the grid `(a, b) = (i/2m, j/2m)`, `1 <= i, j <= m`,
/// refines roots to `h/4` and joins samples closer than `h`.
pub fn sample_omega_with_radius(m: usize, h: Rational) -> Result<OmegaSampleGraph> {
    if m < 8 {
        return Err(Error::Domain(format!("sample grid m = {m} must be at least 8")));
    }
    let tol = &h / rat(4, 1);
    let den = 2 * m as i64;
    let rays: Vec<RayParams> = (1..=den / 2)
        .flat_map(|i| (1..=den / 2).map(move |j| (i, j)))
        .map(|(i, j)| RayParams::new(rat(i, den), rat(j, den)).expect("grid inside the square"))
        .collect();
    let per_ray: Vec<Vec<OmegaSample>> = rays.par_iter().map(|ray| ray_samples(ray, &tol)).collect::<Result<_>>()?;
    let mut vertices: Vec<OmegaSample> = per_ray.into_iter().flatten().collect();
    let mut seen = std::collections::HashSet::new();
    vertices.retain(|s| seen.insert(s.point.clone()));
    let edges = proximity_edges(&vertices, &h);
    Ok(OmegaSampleGraph { m, h, vertices, edges })
}

fn ray_samples(ray: &RayParams, tol: &Rational) -> Result<Vec<OmegaSample>> {
    let p = build_p(ray);
    let roots = isolate_roots(&p, &Rational::from_integer(0.into()), &Rational::from_integer(1.into()))?;
    let mut out = Vec::new();
    for (sheet, iv) in roots.iter().enumerate() {
        let t = refine_root(&p, iv, tol)?;
        let base = ray.point_at(&t);
        if !base.is_interior() {
            continue;
        }
        let mut point = base;
        for role in 0..3u8 {
            out.push(OmegaSample { point: point.clone(), ray: ray.clone(), role, t: t.clone(), sheet: sheet as u8 });
            point = point.rotate();
        }
    }
    Ok(out)
}

fn dist(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Pairs at Euclidean distance below `h`, found through a hash grid of cell
/// size `h`.
fn proximity_edges(vertices: &[OmegaSample], h: &Rational) -> Vec<(usize, usize)> {
    let hf = crate::rational::to_f64(h);
    let coords: Vec<[f64; 3]> = vertices.iter().map(|s| s.point.to_f64()).collect();
    let cell = |c: &[f64; 3]| c.map(|x| (x / hf).floor() as i64);
    let mut buckets: HashMap<[i64; 3], Vec<usize>> = HashMap::new();
    for (i, c) in coords.iter().enumerate() {
        buckets.entry(cell(c)).or_default().push(i);
    }
    let mut edges = Vec::new();
    for (i, c) in coords.iter().enumerate() {
        let k = cell(c);
        for dx in -1..=1 {
            for dy in -1..=1 {
                for dz in -1..=1 {
                    let Some(list) = buckets.get(&[k[0] + dx, k[1] + dy, k[2] + dz]) else {
                        continue;
                    };
                    for &j in list {
                        if j > i && dist(c, &coords[j]) < hf {
                            edges.push((i, j));
                        }
                    }
                }
            }
        }
    }
    edges.sort_unstable();
    edges
}

fn components_of(n: usize, edges: &[(usize, usize)]) -> (Vec<usize>, Vec<usize>) {
    let mut uf = UnionFind::new(n);
    for &(a, b) in edges {
        uf.union(a, b);
    }
    let mut ids = HashMap::new();
    let mut comp = vec![0; n];
    let mut sizes = Vec::new();
    for (v, slot) in comp.iter_mut().enumerate() {
        let root = uf.find(v);
        let next = ids.len();
        let id = *ids.entry(root).or_insert_with(|| {
            sizes.push(0);
            next
        });
        sizes[id] += 1;
        *slot = id;
    }
    (comp, sizes)
}

impl OmegaSampleGraph {
    /// Subgraph of the samples at distance at least `radius` from `center`.
    /// Vertex indices are renumbered.
    pub fn without_ball(&self, center: &CubePoint, radius: &Rational) -> OmegaSampleGraph {
        let c = center.to_f64();
        let r = crate::rational::to_f64(radius);
        let keep: Vec<bool> = self.vertices.iter().map(|s| dist(&s.point.to_f64(), &c) >= r).collect();
        let mut renumber = vec![usize::MAX; self.vertices.len()];
        let mut vertices = Vec::new();
        for (i, s) in self.vertices.iter().enumerate() {
            if keep[i] {
                renumber[i] = vertices.len();
                vertices.push(s.clone());
            }
        }
        let edges =
            self.edges.iter().filter(|&&(a, b)| keep[a] && keep[b]).map(|&(a, b)| (renumber[a], renumber[b])).collect();
        OmegaSampleGraph { m: self.m, h: self.h.clone(), vertices, edges }
    }

    /// Indices kept by [`OmegaSampleGraph::without_ball`], in order.
    fn kept_indices(&self, center: &CubePoint, radius: &Rational) -> Vec<usize> {
        let c = center.to_f64();
        let r = crate::rational::to_f64(radius);
        (0..self.vertices.len()).filter(|&i| dist(&self.vertices[i].point.to_f64(), &c) >= r).collect()
    }

    fn shortest_path(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut prev = vec![usize::MAX; self.vertices.len()];
        prev[from] = from;
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            if v == to {
                let mut path = vec![to];
                let mut cur = to;
                while cur != from {
                    cur = prev[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            for &w in &adj[v] {
                if prev[w] == usize::MAX {
                    prev[w] = v;
                    queue.push_back(w);
                }
            }
        }
        None
    }

    /// CSV with decimal coordinates (12 digits) and exact rational strings.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "x,y,z,x_exact,y_exact,z_exact,sheet,role")?;
        for s in &self.vertices {
            let c = s.point.coords();
            writeln!(
                w,
                "{},{},{},{},{},{},{},{}",
                to_decimal_string(c[0], 12),
                to_decimal_string(c[1], 12),
                to_decimal_string(c[2], 12),
                to_exact_string(c[0]),
                to_exact_string(c[1]),
                to_exact_string(c[2]),
                s.sheet,
                s.role
            )?;
        }
        Ok(())
    }
}

/// Component count of the proximity graph. When it is connected, the witness
/// joins the two largest parts left after removing the samples within
/// [`ABLATION_RADIUS`] of the umbilic; such a path must cross that ball.
pub fn omega_connectivity(gr: &OmegaSampleGraph) -> Connectivity {
    let n = gr.vertices.len();
    let (_, sizes) = components_of(n, &gr.edges);
    let mut out = Connectivity {
        components: sizes.len(),
        component_sizes: sizes,
        bridge_witness: None,
        witness_umbilic_distance: None,
    };
    if out.components != 1 {
        return out;
    }
    let u = umbilic();
    let radius = rat(ABLATION_RADIUS.0, ABLATION_RADIUS.1);
    let kept = gr.kept_indices(&u, &radius);
    let sub = gr.without_ball(&u, &radius);
    let (comp, sub_sizes) = components_of(sub.vertices.len(), &sub.edges);
    if sub_sizes.len() < 2 {
        return out;
    }
    let mut order: Vec<usize> = (0..sub_sizes.len()).collect();
    order.sort_by_key(|&c| std::cmp::Reverse(sub_sizes[c]));
    let uf = u.to_f64();
    let nearest = |target: usize| {
        (0..sub.vertices.len())
            .filter(|&v| comp[v] == target)
            .min_by(|&x, &y| {
                let dx = dist(&sub.vertices[x].point.to_f64(), &uf);
                let dy = dist(&sub.vertices[y].point.to_f64(), &uf);
                dx.total_cmp(&dy).then(x.cmp(&y))
            })
            .expect("nonempty component")
    };
    let (from, to) = (kept[nearest(order[0])], kept[nearest(order[1])]);
    if let Some(path) = gr.shortest_path(from, to) {
        out.witness_umbilic_distance =
            path.iter().map(|&v| dist(&gr.vertices[v].point.to_f64(), &uf)).min_by(f64::total_cmp);
        out.bridge_witness = Some(path);
    }
    out
}

/// Component count after removing the samples within `radius` of the umbilic.
pub fn ablated_components(gr: &OmegaSampleGraph, radius: &Rational) -> usize {
    let sub = gr.without_ball(&umbilic(), radius);
    if sub.vertices.is_empty() {
        return 0;
    }
    components_of(sub.vertices.len(), &sub.edges).1.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::SturmChain;

    #[test]
    fn rejects_small_grids() {
        assert!(sample_omega(7).is_err());
    }

    #[test]
    fn samples_lie_within_tolerance_of_a_root() {
        let gr = sample_omega(8).unwrap();
        assert!(!gr.vertices.is_empty());
        let tol = &gr.h / rat(4, 1);
        for s in gr.vertices.iter().step_by(7) {
            let chain = SturmChain::new(&build_p(&s.ray)).unwrap();
            let lo = &s.t - &tol;
            let hi = &s.t + &tol;
            assert!(chain.count_closed(&lo, &hi) >= 1, "no root near t = {}", s.t);
        }
    }

    #[test]
    fn single_vertex_graph_is_connected() {
        let mut gr = sample_omega(8).unwrap();
        gr.vertices.truncate(1);
        gr.edges.clear();
        assert_eq!(omega_connectivity(&gr).components, 1);
    }

    #[test]
    fn csv_has_header_and_rows() {
        let gr = sample_omega(8).unwrap();
        let mut buf = Vec::new();
        gr.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), gr.vertices.len() + 1);
        assert!(text.starts_with("x,y,z,"));
    }
}
