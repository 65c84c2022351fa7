//! The set-theoretic Yang–Baxter solution r_A(a, b) = (λ_a(b), ρ_b(a))
//! attached to a skew brace, braid verification, the quotient solution on
//! θ-orbits, and induced subgraphs from generating subsolutions.

use crate::brace::SkewBrace;
use crate::error::{Error, Result};
use crate::graph::{common_divisor_graph, theta_graph, CdGraph};

/// A set-theoretic solution r(a, b) = (λ_a(b), ρ_b(a)) given by tables;
/// `rho[b][a]` is ρ_b(a).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionMap {
    pub n: usize,
    pub lambda: Vec<Vec<usize>>,
    pub rho: Vec<Vec<usize>>,
}

impl SolutionMap {
    pub fn r(&self, a: usize, b: usize) -> (usize, usize) {
        (self.lambda[a][b], self.rho[b][a])
    }

    /// The twist solution r(a, b) = (b, a) on k points.
    pub fn twist(k: usize) -> SolutionMap {
        let lambda: Vec<Vec<usize>> = (0..k).map(|_| (0..k).collect()).collect();
        SolutionMap {
            n: k,
            lambda: lambda.clone(),
            rho: lambda,
        }
    }

    /// Left and right non-degeneracy: every λ_a and every ρ_b is bijective.
    pub fn is_nondegenerate(&self) -> bool {
        self.lambda.iter().all(|row| crate::perm::is_permutation(row))
            && self.rho.iter().all(|row| crate::perm::is_permutation(row))
    }

    /// Bijectivity of r on pairs.
    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.n * self.n];
        for a in 0..self.n {
            for b in 0..self.n {
                let (u, v) = self.r(a, b);
                if seen[u * self.n + v] {
                    return false;
                }
                seen[u * self.n + v] = true;
            }
        }
        true
    }
}

/// The solution attached to a brace: λ from the brace action and
/// ρ_b(a) = λ_a(b)′ ∘ a ∘ b.  Bijectivity and non-degeneracy are verified on
/// construction (a failure would be an internal bug, so it panics).
pub fn solution_of(a: &SkewBrace) -> SolutionMap {
    let n = a.n;
    let mut rho = vec![vec![0; n]; n];
    for x in 0..n {
        for b in 0..n {
            rho[b][x] = a.mul(a.mul(a.cinv(a.lambda[x][b]), x), b);
        }
    }
    let s = SolutionMap {
        n,
        lambda: a.lambda.clone(),
        rho,
    };
    assert!(s.is_nondegenerate(), "r_A must be non-degenerate");
    assert!(s.is_bijective(), "r_A must be bijective");
    s
}

/// Check the braid relation (r×id)(id×r)(r×id) = (id×r)(r×id)(id×r) on all
/// triples; None means it holds, otherwise the first failing (x, y, z).
pub fn verify_ybe(s: &SolutionMap) -> Option<(usize, usize, usize)> {
    for x in 0..s.n {
        for y in 0..s.n {
            for z in 0..s.n {
                // left side: r on (x,y), then r on the middle pair, then r
                // on the first pair again
                let (a1, b1) = s.r(x, y);
                let (b2, c1) = s.r(b1, z);
                let (a2, b3) = s.r(a1, b2);
                // right side, mirrored
                let (u1, v1) = s.r(y, z);
                let (u2, w1) = s.r(x, u1);
                let (v2, w2) = s.r(w1, v1);
                if (a2, b3, c1) != (u2, v2, w2) {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

/// The quotient of r_A on θ-orbits.
pub struct TwistQuotient {
    /// projection[x] = index of the θ-orbit of x.
    pub projection: Vec<usize>,
    pub orbit_count: usize,
    /// The quotient solution (always the twist).
    pub solution: SolutionMap,
}

/// Project r_A onto θ-orbits and verify the projection is a solution
/// morphism onto the twist: λ_a(b) stays in the orbit of b and ρ_b(a) in the
/// orbit of a.
pub fn twist_quotient(a: &SkewBrace) -> Result<TwistQuotient> {
    let orbits = a.theta_orbits();
    let s = solution_of(a);
    let projection: Vec<usize> = {
        let mut proj = vec![0; a.n];
        for (i, orbit) in orbits.orbits.iter().enumerate() {
            for &x in orbit {
                proj[x] = i;
            }
        }
        proj
    };
    for x in 0..a.n {
        for b in 0..a.n {
            let (u, v) = s.r(x, b);
            if projection[u] != projection[b] || projection[v] != projection[x] {
                return Err(Error::Inconsistency(format!(
                    "r({x}, {b}) leaves the orbit pair"
                )));
            }
        }
    }
    Ok(TwistQuotient {
        projection,
        orbit_count: orbits.orbits.len(),
        solution: SolutionMap::twist(orbits.orbits.len()),
    })
}

/// Verify θ_{(x,y)}(a) = λ_{y ∘ (−λ_{y′}(x))}(ρ_{−λ_{a′∘y′}(x)}(a)) on all
/// triples.
pub fn theta_conjugation_identity_check(a: &SkewBrace) -> bool {
    let s = solution_of(a);
    for x in 0..a.n {
        for y in 0..a.n {
            let yp = a.cinv(y);
            let u = a.mul(y, a.neg(a.lambda[yp][x]));
            for t in 0..a.n {
                let w = a.neg(a.lambda[a.mul(a.cinv(t), yp)][x]);
                let rhs = a.lambda[u][s.rho[w][t]];
                if a.theta(x, y, t) != rhs {
                    return false;
                }
            }
        }
    }
    true
}

/// Closure of a subset under +, ∘, and both inverses.
fn brace_closure(a: &SkewBrace, xs: &[usize]) -> Vec<usize> {
    let mut in_set = vec![false; a.n];
    let mut frontier: Vec<usize> = Vec::new();
    for &x in xs {
        if !in_set[x] {
            in_set[x] = true;
            frontier.push(x);
        }
    }
    let mut members: Vec<usize> = frontier.clone();
    while let Some(x) = frontier.pop() {
        let mut candidates = vec![a.neg(x), a.cinv(x)];
        for &y in &members {
            candidates.extend([a.plus(x, y), a.plus(y, x), a.mul(x, y), a.mul(y, x)]);
        }
        for c in candidates {
            if !in_set[c] {
                in_set[c] = true;
                members.push(c);
                frontier.push(c);
            }
        }
    }
    members.sort_unstable();
    members
}

/// For a generating, r_A-invariant subset X: the common-divisor graph of the
/// nontrivial θ-orbits meeting X.  By the factorization result this is the
/// induced subgraph of Θ(A) on those orbits, and each such orbit lies inside
/// X; both facts are re-checked here.
pub fn generating_subsolution_graph(a: &SkewBrace, xs: &[usize]) -> Result<CdGraph> {
    if xs.iter().any(|&x| x >= a.n) {
        return Err(Error::InvalidInput("subset element out of range".into()));
    }
    let closure = brace_closure(a, xs);
    if closure.len() != a.n {
        return Err(Error::NotGenerating);
    }
    let mut in_x = vec![false; a.n];
    for &x in xs {
        in_x[x] = true;
    }
    let s = solution_of(a);
    for &x in xs {
        for &y in xs {
            let (u, v) = s.r(x, y);
            if !in_x[u] || !in_x[v] {
                return Err(Error::NotSubsolution);
            }
        }
    }
    let orbits = a.theta_orbits();
    let selected_idx: Vec<usize> = (0..orbits.orbits.len())
        .filter(|&i| orbits.orbits[i].len() >= 2 && orbits.orbits[i].iter().any(|&x| in_x[x]))
        .collect();
    for &i in &selected_idx {
        if !orbits.orbits[i].iter().all(|&x| in_x[x]) {
            return Err(Error::Inconsistency(
                "a θ-orbit meets X without lying inside it".into(),
            ));
        }
    }
    let graph = common_divisor_graph(&crate::action::OrbitPartition {
        orbits: selected_idx
            .iter()
            .map(|&i| orbits.orbits[i].clone())
            .collect(),
    });
    // cross-check against the induced subgraph of Θ(A)
    let full = theta_graph(a);
    let keep: Vec<usize> = full
        .vertices
        .iter()
        .enumerate()
        .filter(|(_, v)| selected_idx.contains(&v.orbit_id))
        .map(|(p, _)| p)
        .collect();
    let induced_edges = full
        .edges
        .iter()
        .filter(|(i, j)| keep.contains(i) && keep.contains(j))
        .count();
    if graph.edges.len() != induced_edges {
        return Err(Error::Inconsistency(
            "subsolution graph differs from the induced subgraph".into(),
        ));
    }
    Ok(graph)
}

/// All maps ψ: A → {0..k−1} that are solution morphisms from r_A to the
/// twist on k points (ψ(λ_a(b)) = ψ(b) and ψ(ρ_b(a)) = ψ(a) for all a, b).
pub fn twist_morphisms(a: &SkewBrace, k: usize) -> Vec<Vec<usize>> {
    let s = solution_of(a);
    let mut out = Vec::new();
    let mut psi = vec![0usize; a.n];
    loop {
        let ok = (0..a.n).all(|x| {
            (0..a.n).all(|b| {
                let (u, v) = s.r(x, b);
                psi[u] == psi[b] && psi[v] == psi[x]
            })
        });
        if ok {
            out.push(psi.clone());
        }
        // odometer over k^n maps
        let mut pos = 0;
        loop {
            if pos == a.n {
                return out;
            }
            psi[pos] += 1;
            if psi[pos] < k {
                break;
            }
            psi[pos] = 0;
            pos += 1;
        }
    }
}
