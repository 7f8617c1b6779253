//! Connected components of `(0, 1/2)^3 \ Omega` on an exact grid.
//!
//! Grid nodes sit at half-cell offsets `(2i + 1) / (4n)`. Two axis-neighbours
//! are joined only when `Q` has no root on the closed segment between them,
//! decided by a Sturm count rather than by comparing endpoint signs, so a
//! segment that crosses the surface twice is never taken as admissible.

use std::collections::{BTreeMap, VecDeque};

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::UniPoly;
use crate::rational::{int, rat, serde_rational, Rational};
use crate::roots::SturmChain;
use crate::surface::{eval_q, q_generic, CubePoint};
use crate::union_find::UnionFind;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSpec {
    pub n: usize,
    #[serde(with = "serde_rational")]
    pub margin: Rational,
}

impl GridSpec {
    pub fn new(n: usize) -> Result<Self> {
        if n < 4 {
            return Err(Error::Domain(format!("grid resolution {n} < 4")));
        }
        Ok(GridSpec { n, margin: rat(1, 4 * n as i64) })
    }

    pub fn node_count(&self) -> usize {
        self.n * self.n * self.n
    }

    /// Coordinate of the `i`-th node along an axis, `(2i + 1) / (4n)`.
    pub fn coordinate(&self, i: usize) -> Rational {
        rat(2 * i as i64 + 1, 4 * self.n as i64)
    }

    pub fn index(&self, i: usize, j: usize, k: usize) -> usize {
        i + self.n * (j + self.n * k)
    }

    pub fn unindex(&self, idx: usize) -> (usize, usize, usize) {
        (idx % self.n, (idx / self.n) % self.n, idx / (self.n * self.n))
    }

    pub fn point(&self, idx: usize) -> CubePoint {
        let (i, j, k) = self.unindex(idx);
        CubePoint::unchecked(self.coordinate(i), self.coordinate(j), self.coordinate(k))
    }
}

/// Root count of `Q` on a closed segment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegmentRoots {
    /// Distinct roots on `[0, 1]`.
    pub count: usize,
    pub start_on_omega: bool,
    pub end_on_omega: bool,
}

/// `Q(p0 + u (p1 - p0))` as a polynomial in `u`.
pub fn segment_polynomial(p0: &CubePoint, p1: &CubePoint) -> UniPoly {
    let lin = |a: &Rational, b: &Rational| UniPoly::linear(a.clone(), b - a);
    q_generic(&lin(&p0.a1, &p1.a1), &lin(&p0.a2, &p1.a2), &lin(&p0.a3, &p1.a3))
}

/// Distinct roots of `Q` on the closed segment `[p0, p1]`; endpoint roots are
/// counted and flagged.
pub fn segment_root_count(p0: &CubePoint, p1: &CubePoint) -> Result<SegmentRoots> {
    if p0 == p1 {
        return Err(Error::Domain("segment endpoints coincide".into()));
    }
    let q = segment_polynomial(p0, p1);
    if q.is_zero() {
        return Err(Error::SegmentInsideOmega);
    }
    let chain = SturmChain::new(&q)?;
    let (zero, one) = (Rational::zero(), int(1));
    Ok(SegmentRoots {
        count: chain.count_closed(&zero, &one),
        start_on_omega: q.eval(&zero).is_zero(),
        end_on_omega: q.eval(&one).is_zero(),
    })
}

/// An axis-aligned lattice `origin + step * (i, j, k)`, `i < dims[0]` etc.
#[derive(Clone, Debug)]
struct Lattice {
    origin: [Rational; 3],
    step: Rational,
    dims: [usize; 3],
}

/// Nodes on `Omega` and admissible `+1` edges (bit per axis) of a lattice.
struct LatticeFill {
    on_omega: Vec<bool>,
    edges: Vec<u8>,
}

impl Lattice {
    fn len(&self) -> usize {
        self.dims[0] * self.dims[1] * self.dims[2]
    }

    fn index(&self, c: [usize; 3]) -> usize {
        c[0] + self.dims[0] * (c[1] + self.dims[1] * c[2])
    }

    fn coord(&self, axis: usize, i: usize) -> Rational {
        &self.origin[axis] + &self.step * int(i as i64)
    }

    /// Exact scan of one lattice line along `axis` through the fixed
    /// coordinates `fixed` (entry `axis` ignored).
    fn scan_line(&self, axis: usize, fixed: [usize; 3]) -> (Vec<usize>, Vec<bool>, Vec<bool>) {
        let len = self.dims[axis];
        let nodes: Vec<usize> = (0..len)
            .map(|i| {
                let mut c = fixed;
                c[axis] = i;
                self.index(c)
            })
            .collect();
        let args: Vec<UniPoly> = (0..3)
            .map(|a| if a == axis { UniPoly::var() } else { UniPoly::constant(self.coord(a, fixed[a])) })
            .collect();
        let line = q_generic(&args[0], &args[1], &args[2]);
        if line.is_zero() {
            return (nodes, vec![true; len], vec![false; len.saturating_sub(1)]);
        }
        let chain = SturmChain::new(&line).expect("nonzero line polynomial");
        let coords: Vec<Rational> = (0..len).map(|i| self.coord(axis, i)).collect();
        let on: Vec<bool> = coords.iter().map(|c| chain.base().eval(c).is_zero()).collect();
        let var: Vec<usize> = coords.iter().map(|c| chain.variations(c)).collect();
        let adm = (0..len.saturating_sub(1)).map(|i| !on[i] && !on[i + 1] && var[i] == var[i + 1]).collect();
        (nodes, on, adm)
    }

    fn fill(&self) -> LatticeFill {
        let mut lines = Vec::new();
        for axis in 0..3 {
            let (u, v) = match axis {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            for a in 0..self.dims[u] {
                for b in 0..self.dims[v] {
                    let mut fixed = [0; 3];
                    fixed[u] = a;
                    fixed[v] = b;
                    lines.push((axis, fixed));
                }
            }
        }
        let scanned: Vec<_> = lines.par_iter().map(|&(axis, fixed)| (axis, self.scan_line(axis, fixed))).collect();
        let mut on_omega = vec![false; self.len()];
        let mut edges = vec![0u8; self.len()];
        for (axis, (nodes, on, adm)) in scanned {
            for (pos, &node) in nodes.iter().enumerate() {
                on_omega[node] |= on[pos];
            }
            for (pos, &ok) in adm.iter().enumerate() {
                if ok {
                    edges[nodes[pos]] |= 1 << axis;
                }
            }
        }
        LatticeFill { on_omega, edges }
    }
}

impl LatticeFill {
    fn union_find(&self, lattice: &Lattice) -> UnionFind {
        let mut uf = UnionFind::new(lattice.len());
        for idx in 0..lattice.len() {
            let c = [
                idx % lattice.dims[0],
                (idx / lattice.dims[0]) % lattice.dims[1],
                idx / (lattice.dims[0] * lattice.dims[1]),
            ];
            for axis in 0..3 {
                if self.edges[idx] & (1 << axis) != 0 {
                    let mut d = c;
                    d[axis] += 1;
                    uf.union(idx, lattice.index(d));
                }
            }
        }
        uf
    }
}

/// Component labels of the grid nodes off `Omega`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentLabeling {
    pub grid: GridSpec,
    pub component_count: usize,
    /// Component id per node, `None` for nodes with `Q = 0`.
    pub labels: Vec<Option<u32>>,
    /// One node per component (its lowest-index node).
    pub representatives: Vec<CubePoint>,
    pub component_sizes: Vec<usize>,
    /// Bit `a` set when the edge from the node to its `+1` neighbour along
    /// axis `a` is admissible.
    #[serde(default, skip_serializing)]
    pub edges: Vec<u8>,
    /// Coarse node pairs joined by a certified root-free path that is not a
    /// single axis edge.
    #[serde(default)]
    pub bridges: Vec<Bridge>,
}

/// Two coarse nodes connected by root-free segments. `factor == 1` is one
/// straight segment; larger values are axis paths on a local lattice refined
/// by `factor`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bridge {
    pub from: usize,
    pub to: usize,
    pub factor: usize,
}

/// Local refinement applied to small components after the coarse fill.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefineOptions {
    /// Components with at most this many nodes are refined.
    pub max_component_size: usize,
    /// Half-width, in coarse cells, of the refined box around a node.
    pub radius: usize,
    /// Subdivision factors tried in order.
    pub factors: Vec<usize>,
}

impl RefineOptions {
    pub fn for_grid(grid: &GridSpec) -> Self {
        RefineOptions { max_component_size: grid.n.max(grid.n * grid.n / 8), radius: 2, factors: vec![2, 4] }
    }

    pub fn disabled() -> Self {
        RefineOptions { max_component_size: 0, radius: 0, factors: Vec::new() }
    }
}

impl ComponentLabeling {
    pub fn label_of(&self, idx: usize) -> Option<u32> {
        self.labels[idx]
    }

    /// Admissible neighbours of a node.
    pub fn neighbours(&self, idx: usize) -> Vec<usize> {
        let g = &self.grid;
        let (i, j, k) = g.unindex(idx);
        let c = [i, j, k];
        let mut out = Vec::new();
        for axis in 0..3 {
            if self.edges[idx] & (1 << axis) != 0 {
                let mut d = c;
                d[axis] += 1;
                out.push(g.index(d[0], d[1], d[2]));
            }
            if c[axis] > 0 {
                let mut d = c;
                d[axis] -= 1;
                let other = g.index(d[0], d[1], d[2]);
                if self.edges[other] & (1 << axis) != 0 {
                    out.push(other);
                }
            }
        }
        for b in &self.bridges {
            if b.from == idx {
                out.push(b.to);
            } else if b.to == idx {
                out.push(b.from);
            }
        }
        out
    }

    /// Shortest chain of admissible edges between two nodes, if any.
    pub fn admissible_path(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        let mut prev = vec![usize::MAX; self.labels.len()];
        let mut queue = VecDeque::from([from]);
        prev[from] = from;
        while let Some(x) = queue.pop_front() {
            if x == to {
                let mut path = vec![to];
                let mut cur = to;
                while cur != from {
                    cur = prev[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            for y in self.neighbours(x) {
                if prev[y] == usize::MAX {
                    prev[y] = x;
                    queue.push_back(y);
                }
            }
        }
        None
    }

    /// Node index of the representative of component `id`.
    pub fn representative_index(&self, id: u32) -> usize {
        self.labels.iter().position(|l| *l == Some(id)).expect("component has a node")
    }
}

fn coarse_lattice(grid: &GridSpec) -> Lattice {
    let o = grid.coordinate(0);
    Lattice { origin: [o.clone(), o.clone(), o], step: rat(1, 2 * grid.n as i64), dims: [grid.n; 3] }
}

/// Flood fill of the grid complement of `Omega` over axis edges only.
pub fn cube_census_unrefined(grid: &GridSpec) -> ComponentLabeling {
    let lattice = coarse_lattice(grid);
    let fill = lattice.fill();
    let mut uf = fill.union_find(&lattice);
    let on_omega = fill.on_omega.clone();
    labeling_from(grid, &on_omega, fill.edges, Vec::new(), &mut uf)
}

fn labeling_from(
    grid: &GridSpec,
    on_omega: &[bool],
    edges: Vec<u8>,
    bridges: Vec<Bridge>,
    uf: &mut UnionFind,
) -> ComponentLabeling {
    let mut root_to_id: BTreeMap<usize, u32> = BTreeMap::new();
    let mut labels = vec![None; grid.node_count()];
    let mut representatives = Vec::new();
    let mut sizes: Vec<usize> = Vec::new();
    for idx in 0..grid.node_count() {
        if on_omega[idx] {
            continue;
        }
        let root = uf.find(idx);
        let next = root_to_id.len() as u32;
        let id = *root_to_id.entry(root).or_insert_with(|| {
            representatives.push(grid.point(idx));
            sizes.push(0);
            next
        });
        sizes[id as usize] += 1;
        labels[idx] = Some(id);
    }
    ComponentLabeling {
        grid: grid.clone(),
        component_count: representatives.len(),
        labels,
        representatives,
        component_sizes: sizes,
        edges,
        bridges,
    }
}

/// Tries to join `node` to a nearby coarse node of another component by one
/// straight root-free segment, nearest candidates first.
fn segment_bridge(
    grid: &GridSpec,
    node: usize,
    labels: &[Option<u32>],
    own: &dyn Fn(usize) -> bool,
    radius: usize,
) -> Option<Bridge> {
    let (i, j, k) = grid.unindex(node);
    let c = [i, j, k];
    let lo = c.map(|x| x.saturating_sub(radius));
    let hi = c.map(|x| (x + radius).min(grid.n - 1));
    let mut candidates = Vec::new();
    for ci in lo[0]..=hi[0] {
        for cj in lo[1]..=hi[1] {
            for ck in lo[2]..=hi[2] {
                let other = grid.index(ci, cj, ck);
                if labels[other].is_none() || own(other) {
                    continue;
                }
                let d2: usize = [ci, cj, ck].iter().zip(c).map(|(&a, b)| a.abs_diff(b).pow(2)).sum();
                candidates.push((d2, other));
            }
        }
    }
    candidates.sort_unstable();
    let p = grid.point(node);
    candidates.into_iter().find_map(|(_, other)| {
        let seg = segment_root_count(&p, &grid.point(other)).ok()?;
        (seg.count == 0).then_some(Bridge { from: node, to: other, factor: 1 })
    })
}

/// Tries to join `node` to a coarse node of another component through a refined
/// lattice around it. Returns the bridge on success.
fn refine_around(
    grid: &GridSpec,
    node: usize,
    labels: &[Option<u32>],
    own: &dyn Fn(usize) -> bool,
    radius: usize,
    factor: usize,
) -> Option<Bridge> {
    let (i, j, k) = grid.unindex(node);
    let c = [i, j, k];
    let lo: Vec<usize> = c.iter().map(|&x| x.saturating_sub(radius)).collect();
    let hi: Vec<usize> = c.iter().map(|&x| (x + radius).min(grid.n - 1)).collect();
    let lattice = Lattice {
        origin: [grid.coordinate(lo[0]), grid.coordinate(lo[1]), grid.coordinate(lo[2])],
        step: rat(1, (2 * grid.n * factor) as i64),
        dims: [0, 1, 2].map(|a| (hi[a] - lo[a]) * factor + 1),
    };
    let fill = lattice.fill();
    let mut uf = fill.union_find(&lattice);
    let fine = |c: [usize; 3]| lattice.index([0, 1, 2].map(|a| (c[a] - lo[a]) * factor));
    let start = fine(c);
    for ci in lo[0]..=hi[0] {
        for cj in lo[1]..=hi[1] {
            for ck in lo[2]..=hi[2] {
                let other = grid.index(ci, cj, ck);
                if labels[other].is_none() || own(other) {
                    continue;
                }
                if uf.same(start, fine([ci, cj, ck])) {
                    return Some(Bridge { from: node, to: other, factor });
                }
            }
        }
    }
    None
}

/// Flood fill of the grid complement of `Omega`, followed by local
/// refinement of small components.
pub fn cube_census(grid: &GridSpec) -> ComponentLabeling {
    cube_census_with(grid, &RefineOptions::for_grid(grid))
}

pub fn cube_census_with(grid: &GridSpec, opts: &RefineOptions) -> ComponentLabeling {
    let lattice = coarse_lattice(grid);
    let fill = lattice.fill();
    let mut uf = fill.union_find(&lattice);
    let on_omega = fill.on_omega;
    let edges = fill.edges;
    let mut bridges = Vec::new();
    loop {
        let current = labeling_from(grid, &on_omega, Vec::new(), Vec::new(), &mut uf);
        let small: Vec<u32> = (0..current.component_count as u32)
            .filter(|&id| current.component_sizes[id as usize] <= opts.max_component_size)
            .collect();
        let mut merged = false;
        for id in small {
            let members: Vec<usize> = (0..grid.node_count()).filter(|&x| current.labels[x] == Some(id)).collect();
            let own = |x: usize| current.labels[x] == Some(id);
            let found = members
                .iter()
                .find_map(|&m| segment_bridge(grid, m, &current.labels, &own, opts.radius))
                .or_else(|| {
                    opts.factors.iter().find_map(|&factor| {
                        members.iter().find_map(|&m| refine_around(grid, m, &current.labels, &own, opts.radius, factor))
                    })
                });
            if let Some(b) = found {
                if uf.union(b.from, b.to) {
                    bridges.push(b);
                    merged = true;
                }
            }
        }
        if !merged {
            break;
        }
    }
    labeling_from(grid, &on_omega, edges, bridges, &mut uf)
}

/// Label of the component containing `p`, found by joining `p` to a nearby
/// grid node with a root-free segment.
pub fn locate_component(p: &CubePoint, lab: &ComponentLabeling) -> Result<u32> {
    if eval_q(p).is_zero() {
        return Err(Error::OnSurface);
    }
    let g = &lab.grid;
    let four_n = int(4 * g.n as i64);
    let near = |x: &Rational| -> Vec<usize> {
        // Fractional node index (4n x - 1) / 2.
        let f = (x * &four_n - int(1)) / int(2);
        let lo = f.floor().to_integer();
        let lo: i64 = lo.try_into().unwrap_or(0);
        (lo - 1..=lo + 2).filter(|&i| i >= 0 && (i as usize) < g.n).map(|i| i as usize).collect()
    };
    let (ci, cj, ck) = (near(&p.a1), near(&p.a2), near(&p.a3));
    let mut candidates: Vec<(Rational, usize)> = Vec::new();
    for &i in &ci {
        for &j in &cj {
            for &k in &ck {
                let idx = g.index(i, j, k);
                if lab.labels[idx].is_none() {
                    continue;
                }
                let q = g.point(idx);
                let d = [(&q.a1 - &p.a1), (&q.a2 - &p.a2), (&q.a3 - &p.a3)]
                    .iter()
                    .fold(Rational::zero(), |acc, x| acc + x * x);
                candidates.push((d, idx));
            }
        }
    }
    candidates.sort();
    for (_, idx) in candidates {
        let node = g.point(idx);
        if node == *p {
            return Ok(lab.labels[idx].expect("labelled"));
        }
        if segment_root_count(p, &node)?.count == 0 {
            return Ok(lab.labels[idx].expect("labelled"));
        }
    }
    Err(Error::Unresolved)
}

/// The three points named as lying in distinct components:
/// `O1 = (1/6,1/6,1/6)`, `O2 = (7/15,7/15,7/15)`, `O3 = (1/6,1/4,1/3)`.
pub fn reference_points() -> [(&'static str, CubePoint); 3] {
    [
        ("O1", CubePoint::unchecked(rat(1, 6), rat(1, 6), rat(1, 6))),
        ("O2", CubePoint::unchecked(rat(7, 15), rat(7, 15), rat(7, 15))),
        ("O3", CubePoint::unchecked(rat(1, 6), rat(1, 4), rat(1, 3))),
    ]
}

/// Component ids of the reference points (errors stay per-point).
pub fn reference_labels(lab: &ComponentLabeling) -> Vec<(&'static str, Result<u32>)> {
    reference_points().into_iter().map(|(name, p)| (name, locate_component(&p, lab))).collect()
}

/// Checks that the cyclic axis relabelling `(i, j, k) -> (j, k, i)` maps the
/// partition of nodes into components onto itself.
pub fn is_rotation_equivariant(lab: &ComponentLabeling) -> bool {
    let g = &lab.grid;
    let mut forward: BTreeMap<u32, u32> = BTreeMap::new();
    let mut backward: BTreeMap<u32, u32> = BTreeMap::new();
    for idx in 0..g.node_count() {
        let (i, j, k) = g.unindex(idx);
        let rotated = g.index(j, k, i);
        match (lab.labels[idx], lab.labels[rotated]) {
            (None, None) => {}
            (Some(a), Some(b)) => {
                if *forward.entry(a).or_insert(b) != b || *backward.entry(b).or_insert(a) != a {
                    return false;
                }
            }
            _ => return false,
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> CubePoint {
        CubePoint::unchecked(rat(a.0, a.1), rat(b.0, b.1), rat(c.0, c.1))
    }

    #[test]
    fn grid_nodes_are_interior() {
        let g = GridSpec::new(4).unwrap();
        assert_eq!(g.coordinate(0), rat(1, 16));
        assert_eq!(g.coordinate(3), rat(7, 16));
        assert!(GridSpec::new(3).is_err());
        for idx in [0, 17, 63] {
            assert_eq!(g.index(g.unindex(idx).0, g.unindex(idx).1, g.unindex(idx).2), idx);
        }
    }

    #[test]
    fn segment_count_is_symmetric() {
        let a = pt((1, 6), (1, 6), (1, 6));
        let b = pt((1, 6), (1, 4), (1, 3));
        let c = pt((7, 15), (7, 15), (7, 15));
        for (p, q) in [(&a, &b), (&a, &c), (&b, &c)] {
            assert_eq!(segment_root_count(p, q).unwrap().count, segment_root_count(q, p).unwrap().count);
        }
        // Endpoints in different components.
        assert!(segment_root_count(&a, &b).unwrap().count >= 1);
    }

    #[test]
    fn segment_inside_one_component_has_no_roots() {
        let a = pt((1, 6), (1, 6), (1, 6));
        let b = pt((17, 100), (1, 6), (16, 100));
        assert_eq!(segment_root_count(&a, &b).unwrap().count, 0);
        assert!(segment_root_count(&a, &a).is_err());
    }

    #[test]
    fn line_scan_agrees_with_segment_counts() {
        let g = GridSpec::new(6).unwrap();
        for axis in 0..3 {
            for (u, v) in [(0, 0), (2, 3), (5, 1), (4, 4)] {
                let mut fixed = [u, v, u];
                fixed[axis] = 0;
                let (nodes, _, admissible) = coarse_lattice(&g).scan_line(axis, fixed);
                for pos in 0..g.n - 1 {
                    let p = g.point(nodes[pos]);
                    let q = g.point(nodes[pos + 1]);
                    let seg = segment_root_count(&p, &q).unwrap();
                    assert_eq!(admissible[pos], seg.count == 0, "axis {axis} ({u},{v}) pos {pos}");
                }
            }
        }
    }

    #[test]
    fn coarse_census_never_exceeds_three() {
        let lab = cube_census(&GridSpec::new(4).unwrap());
        assert!((1..=3).contains(&lab.component_count), "{}", lab.component_count);
        assert!(is_rotation_equivariant(&lab));
    }

    #[test]
    fn refinement_only_merges_through_root_free_segments() {
        let g = GridSpec::new(12).unwrap();
        let coarse = cube_census_unrefined(&g);
        let lab = cube_census(&g);
        assert!(coarse.component_count > 3);
        assert_eq!(lab.component_count, 3);
        for b in &lab.bridges {
            assert_eq!(b.factor, 1);
            assert_eq!(segment_root_count(&g.point(b.from), &g.point(b.to)).unwrap().count, 0);
        }
        let ids: Vec<_> = reference_labels(&lab).into_iter().map(|(_, l)| l.unwrap()).collect();
        assert!(ids[0] != ids[1] && ids[1] != ids[2] && ids[0] != ids[2]);
    }

    #[test]
    fn every_node_reaches_its_representative() {
        let lab = cube_census(&GridSpec::new(6).unwrap());
        for idx in 0..lab.grid.node_count() {
            if let Some(id) = lab.labels[idx] {
                let rep = lab.representative_index(id);
                let path = lab.admissible_path(rep, idx).expect("path inside component");
                assert!(path.iter().all(|&x| lab.labels[x] == Some(id)));
            }
        }
    }

    #[test]
    fn umbilic_cannot_be_located() {
        let lab = cube_census(&GridSpec::new(4).unwrap());
        assert_eq!(locate_component(&pt((1, 4), (1, 4), (1, 4)), &lab), Err(Error::OnSurface));
    }
}
