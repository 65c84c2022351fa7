//! Common-divisor graphs of orbit partitions: Λ(A), Θ(A) and Γ(G).

use crate::action::OrbitPartition;
use crate::brace::SkewBrace;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::group::CayleyGroup;

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// One vertex of a common-divisor graph: a nontrivial orbit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CdVertex {
    /// Index of the orbit in the originating partition.
    pub orbit_id: usize,
    pub size: usize,
}

/// The common-divisor graph of an orbit partition.  Vertices are the orbits
/// of size ≥ 2; two distinct vertices are joined when their sizes share a
/// prime factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CdGraph {
    pub vertices: Vec<CdVertex>,
    /// Edges as (i, j) with i < j, indices into `vertices`, sorted.
    pub edges: Vec<(usize, usize)>,
    /// Connected components as sorted vertex-index lists, sorted by minimum.
    pub components: Vec<Vec<usize>>,
    /// Diameter of each component (0 for a single vertex).
    pub diameters: Vec<usize>,
}

/// Orbit-size profile: ℓ(m) (λ-case) or t(m) (θ-case).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitProfile {
    /// (size, count) for sizes ≥ 2, ascending.
    pub counts: Vec<(usize, usize)>,
    /// Number of size-1 orbits.
    pub trivial_count: usize,
}

impl OrbitProfile {
    pub fn of(partition: &OrbitPartition) -> OrbitProfile {
        let mut trivial_count = 0;
        let mut counts: Vec<(usize, usize)> = Vec::new();
        for orbit in &partition.orbits {
            if orbit.len() == 1 {
                trivial_count += 1;
                continue;
            }
            match counts.iter_mut().find(|(s, _)| *s == orbit.len()) {
                Some((_, c)) => *c += 1,
                None => counts.push((orbit.len(), 1)),
            }
        }
        counts.sort_unstable();
        OrbitProfile {
            counts,
            trivial_count,
        }
    }

    /// Number of orbits of size m (m = 1 included).
    pub fn count(&self, m: usize) -> usize {
        if m == 1 {
            return self.trivial_count;
        }
        self.counts
            .iter()
            .find(|&&(s, _)| s == m)
            .map_or(0, |&(_, c)| c)
    }
}

fn adjacency(nv: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); nv];
    for &(i, j) in edges {
        adj[i].push(j);
        adj[j].push(i);
    }
    adj
}

fn bfs_distances(start: usize, adj: &[Vec<usize>]) -> Vec<Option<usize>> {
    let mut dist = vec![None; adj.len()];
    dist[start] = Some(0);
    let mut frontier = vec![start];
    let mut d = 0;
    while !frontier.is_empty() {
        d += 1;
        let mut next = Vec::new();
        for &x in &frontier {
            for &y in &adj[x] {
                if dist[y].is_none() {
                    dist[y] = Some(d);
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    dist
}

/// Build the common-divisor graph of a partition, with components and
/// per-component diameters.
pub fn common_divisor_graph(partition: &OrbitPartition) -> CdGraph {
    let vertices: Vec<CdVertex> = partition
        .orbits
        .iter()
        .enumerate()
        .filter(|(_, o)| o.len() >= 2)
        .map(|(orbit_id, o)| CdVertex {
            orbit_id,
            size: o.len(),
        })
        .collect();
    let nv = vertices.len();
    let mut edges = Vec::new();
    for i in 0..nv {
        for j in (i + 1)..nv {
            if gcd(vertices[i].size, vertices[j].size) > 1 {
                edges.push((i, j));
            }
        }
    }
    let adj = adjacency(nv, &edges);
    let mut seen = vec![false; nv];
    let mut components = Vec::new();
    let mut diameters = Vec::new();
    for s in 0..nv {
        if seen[s] {
            continue;
        }
        let dist = bfs_distances(s, &adj);
        let comp: Vec<usize> = (0..nv).filter(|&v| dist[v].is_some()).collect();
        for &v in &comp {
            seen[v] = true;
        }
        let mut diameter = 0;
        for &v in &comp {
            let d = bfs_distances(v, &adj);
            for &w in &comp {
                diameter = diameter.max(d[w].expect("same component"));
            }
        }
        components.push(comp);
        diameters.push(diameter);
    }
    CdGraph {
        vertices,
        edges,
        components,
        diameters,
    }
}

impl CdGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.vertices.iter().map(|v| v.size).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Complete graph test (every pair adjacent; empty graphs count).
    pub fn is_complete(&self) -> bool {
        let nv = self.vertices.len();
        self.edges.len() == nv * nv.saturating_sub(1) / 2
    }
}

/// Λ(A): common-divisor graph of the λ-orbits.
pub fn lambda_graph(a: &SkewBrace) -> CdGraph {
    common_divisor_graph(&a.lambda_orbits())
}

/// Θ(A): common-divisor graph of the θ-orbits.
pub fn theta_graph(a: &SkewBrace) -> CdGraph {
    common_divisor_graph(&a.theta_orbits())
}

/// Γ(G): common-divisor graph of the conjugacy classes.
pub fn gamma_graph(g: &CayleyGroup) -> CdGraph {
    common_divisor_graph(&g.conjugacy_classes())
}

// ---------------------------------------------------------------------------
// structure-only graph isomorphism
// ---------------------------------------------------------------------------

/// Iterative neighbor-color refinement; returns a stable coloring.
fn refine_colors(nv: usize, adj: &[Vec<usize>]) -> Vec<usize> {
    let mut colors: Vec<usize> = adj.iter().map(|nbrs| nbrs.len()).collect();
    loop {
        let mut signatures: Vec<(usize, Vec<usize>)> = (0..nv)
            .map(|v| {
                let mut nbr: Vec<usize> = adj[v].iter().map(|&w| colors[w]).collect();
                nbr.sort_unstable();
                (colors[v], nbr)
            })
            .collect();
        let mut palette: Vec<&(usize, Vec<usize>)> = signatures.iter().collect();
        palette.sort();
        palette.dedup();
        let recolored: Vec<usize> = signatures
            .iter()
            .map(|s| palette.binary_search(&s).expect("own signature"))
            .collect();
        if recolored == colors {
            return colors;
        }
        signatures.clear();
        colors = recolored;
    }
}

/// Decide whether two common-divisor graphs are isomorphic as abstract
/// graphs (vertex sizes are labels, not structure).  Color refinement first,
/// then backtracking over color-respecting bijections.
pub fn graphs_isomorphic(g1: &CdGraph, g2: &CdGraph, budget: &Budget) -> Result<bool> {
    let nv = g1.vertex_count();
    if nv != g2.vertex_count() || g1.edge_count() != g2.edge_count() {
        return Ok(false);
    }
    if nv == 0 {
        return Ok(true);
    }
    budget.admit_order("graphs_isomorphic", nv)?;
    let adj1 = adjacency(nv, &g1.edges);
    let adj2 = adjacency(nv, &g2.edges);
    let col1 = refine_colors(nv, &adj1);
    let col2 = refine_colors(nv, &adj2);
    let mut profile1: Vec<usize> = col1.clone();
    let mut profile2: Vec<usize> = col2.clone();
    profile1.sort_unstable();
    profile2.sort_unstable();
    if profile1 != profile2 {
        return Ok(false);
    }
    let has_edge2: Vec<Vec<bool>> = (0..nv)
        .map(|i| (0..nv).map(|j| adj2[i].contains(&j)).collect())
        .collect();
    let meter = budget.meter("graphs_isomorphic");
    struct State<'s> {
        nv: usize,
        adj1: &'s [Vec<usize>],
        has_edge2: &'s [Vec<bool>],
        col1: &'s [usize],
        col2: &'s [usize],
        map: Vec<Option<usize>>,
        used: Vec<bool>,
    }
    fn rec(s: &mut State, v: usize, meter: &crate::budget::Meter) -> Result<bool> {
        if v == s.nv {
            return Ok(true);
        }
        for w in 0..s.nv {
            if s.used[w] || s.col2[w] != s.col1[v] {
                continue;
            }
            meter.charge(1)?;
            let ok = s.adj1[v].iter().all(|&u| match s.map[u] {
                Some(mu) => s.has_edge2[w][mu],
                None => true,
            }) && (0..v).all(|u| {
                // non-adjacent mapped pairs must stay non-adjacent
                let mu = s.map[u].unwrap();
                s.adj1[v].contains(&u) || !s.has_edge2[w][mu]
            });
            if ok {
                s.map[v] = Some(w);
                s.used[w] = true;
                if rec(s, v + 1, meter)? {
                    return Ok(true);
                }
                s.map[v] = None;
                s.used[w] = false;
            }
        }
        Ok(false)
    }
    let mut state = State {
        nv,
        adj1: &adj1,
        has_edge2: &has_edge2,
        col1: &col1,
        col2: &col2,
        map: vec![None; nv],
        used: vec![false; nv],
    };
    rec(&mut state, 0, &meter)
}

// ---------------------------------------------------------------------------
// the Γ → Θ homomorphic-image property
// ---------------------------------------------------------------------------

/// Result of checking that Θ(A) contains a homomorphic image of Γ(A,+).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaImageReport {
    /// For each Γ-vertex (index into `gamma.vertices`), the Θ-vertex
    /// (index into `theta.vertices`) its conjugacy class maps into.
    pub vertex_map: Vec<usize>,
    /// Θ-vertex indices in the image, sorted.
    pub image_vertices: Vec<usize>,
    /// Distinct image edges (Θ-vertex index pairs, i < j); Γ-edges whose
    /// endpoints collapse to one Θ-vertex contribute nothing.
    pub image_edges: Vec<(usize, usize)>,
    /// Whether the image is an induced subgraph of Θ(A).
    pub induced: bool,
}

/// Verify the containment Γ(A,+) → Θ(A): the map Con(a) ↦ Θ(a) must be well
/// defined, every |Θ(a)| a multiple of the |Con(a)| it covers, and Γ-adjacent
/// classes must land on adjacent-or-equal Θ-vertices.
pub fn gamma_hom_image_check(a: &SkewBrace) -> Result<GammaImageReport> {
    let conj = a.conj_orbits();
    let theta = a.theta_orbits();
    let gamma_g = common_divisor_graph(&conj);
    let theta_g = common_divisor_graph(&theta);

    // theta-orbit index for every element
    let mut theta_of = vec![usize::MAX; a.n];
    for (oi, orbit) in theta.orbits.iter().enumerate() {
        for &x in orbit {
            theta_of[x] = oi;
        }
    }
    let mut vertex_map = Vec::with_capacity(gamma_g.vertices.len());
    for v in &gamma_g.vertices {
        let class = &conj.orbits[v.orbit_id];
        let target = theta_of[class[0]];
        if class.iter().any(|&x| theta_of[x] != target) {
            return Err(Error::Inconsistency(format!(
                "conjugacy class of {} straddles theta-orbits",
                class[0]
            )));
        }
        let theta_size = theta.orbits[target].len();
        if theta_size % class.len() != 0 {
            return Err(Error::Inconsistency(format!(
                "theta-orbit size {} is not a multiple of class size {}",
                theta_size,
                class.len()
            )));
        }
        // a nontrivial class sits inside a nontrivial theta-orbit
        let tv = theta_g
            .vertices
            .iter()
            .position(|tv| tv.orbit_id == target)
            .ok_or_else(|| {
                Error::Inconsistency("nontrivial class inside a trivial theta-orbit".into())
            })?;
        vertex_map.push(tv);
    }
    let mut image_vertices = vertex_map.clone();
    image_vertices.sort_unstable();
    image_vertices.dedup();
    let mut image_edges = Vec::new();
    for &(i, j) in &gamma_g.edges {
        let (u, v) = (vertex_map[i], vertex_map[j]);
        if u == v {
            continue;
        }
        let e = (u.min(v), u.max(v));
        if !theta_g.edges.contains(&e) {
            return Err(Error::Inconsistency(format!(
                "gamma edge ({i},{j}) maps to a non-edge of the theta graph"
            )));
        }
        if !image_edges.contains(&e) {
            image_edges.push(e);
        }
    }
    image_edges.sort_unstable();
    let induced = theta_g.edges.iter().all(|&(u, v)| {
        !(image_vertices.binary_search(&u).is_ok() && image_vertices.binary_search(&v).is_ok())
            || image_edges.contains(&(u, v))
    });
    Ok(GammaImageReport {
        vertex_map,
        image_vertices,
        image_edges,
        induced,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brace::{op_trivial_brace, trivial_brace};
    use crate::group::dihedral;

    fn graph_of_sizes(sizes: &[usize]) -> CdGraph {
        // fabricate a partition with the requested nontrivial orbit sizes
        let mut orbits = Vec::new();
        let mut next = 0;
        for &s in sizes {
            orbits.push((next..next + s).collect::<Vec<_>>());
            next += s;
        }
        common_divisor_graph(&OrbitPartition::from_classes(orbits))
    }

    #[test]
    fn empty_partition_gives_empty_graph() {
        let g = graph_of_sizes(&[]);
        assert!(g.is_empty());
        assert_eq!(g.components.len(), 0);
    }

    #[test]
    fn coprime_sizes_stay_disconnected() {
        let g = graph_of_sizes(&[2, 3]);
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.components.len(), 2);
        assert_eq!(g.diameters, vec![0, 0]);
    }

    #[test]
    fn sizes_2_2_6_form_a_triangle() {
        let g = graph_of_sizes(&[2, 2, 6]);
        assert_eq!(g.edge_count(), 3);
        assert!(g.is_complete());
        assert_eq!(g.components.len(), 1);
        assert_eq!(g.diameters, vec![1]);
    }

    #[test]
    fn path_diameter_is_counted() {
        // sizes 4, 6, 9: edges 4-6 and 6-9 only
        let g = graph_of_sizes(&[4, 6, 9]);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.diameters, vec![2]);
    }

    #[test]
    fn trivial_brace_has_empty_lambda_graph() {
        let g = lambda_graph(&trivial_brace(&dihedral(3)));
        assert!(g.is_empty());
    }

    #[test]
    fn op_trivial_s3_graphs_match_gamma() {
        let s3 = dihedral(3);
        let b = op_trivial_brace(&s3);
        let lam = lambda_graph(&b);
        let the = theta_graph(&b);
        let gam = gamma_graph(&s3);
        assert_eq!(lam.sizes(), vec![2, 3]);
        assert_eq!(lam.sizes(), the.sizes());
        assert_eq!(lam.sizes(), gam.sizes());
        assert_eq!(lam.edges, gam.edges);
        assert_eq!(the.edges, gam.edges);
    }

    #[test]
    fn isomorphism_ignores_size_labels() {
        let budget = Budget::default();
        let k2a = graph_of_sizes(&[2, 4]);
        let k2b = graph_of_sizes(&[3, 9]);
        assert!(graphs_isomorphic(&k2a, &k2b, &budget).unwrap());
        let disconnected = graph_of_sizes(&[2, 3]);
        assert!(!graphs_isomorphic(&k2a, &disconnected, &budget).unwrap());
        assert!(graphs_isomorphic(&graph_of_sizes(&[]), &graph_of_sizes(&[]), &budget).unwrap());
    }

    #[test]
    fn isomorphism_distinguishes_path_from_triangle_plus_point() {
        let budget = Budget::default();
        // path on 3 vertices vs triangle: same vertex count, different edges
        let path = graph_of_sizes(&[4, 6, 9]);
        let triangle = graph_of_sizes(&[2, 2, 6]);
        assert!(!graphs_isomorphic(&path, &triangle, &budget).unwrap());
    }

    #[test]
    fn gamma_image_of_op_trivial_brace_is_identity() {
        let b = op_trivial_brace(&dihedral(3));
        let report = gamma_hom_image_check(&b).unwrap();
        assert_eq!(report.vertex_map, vec![0, 1]);
        assert_eq!(report.image_vertices, vec![0, 1]);
        assert!(report.induced);
    }

    #[test]
    fn orbit_profile_counts_sizes() {
        let part = OrbitPartition::from_classes(vec![vec![0], vec![1, 2], vec![3, 4], vec![5, 6, 7]]);
        let prof = OrbitProfile::of(&part);
        assert_eq!(prof.trivial_count, 1);
        assert_eq!(prof.count(1), 1);
        assert_eq!(prof.count(2), 2);
        assert_eq!(prof.count(3), 1);
        assert_eq!(prof.count(6), 0);
    }
}
