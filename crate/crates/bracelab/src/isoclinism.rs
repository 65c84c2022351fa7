//! Isoclinism of skew braces: commutator maps on cosets of the annihilator,
//! the (ξ, δ) witness search, and the graph- and orbit-level consequences.

use std::collections::HashMap;

use crate::brace::{for_each_brace_isomorphism, SkewBrace};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::graph::{graphs_isomorphic, lambda_graph, theta_graph};
use crate::group::{for_each_isomorphism, CayleyGroup};

/// The commutator maps φ₊(ā, b̄) = [a, b]₊ and φ⁎(ā, b̄) = a ∗ b on cosets
/// of Ann(A), with values in A′.
pub struct CommutatorMaps {
    /// Number of cosets of Ann(A).
    pub coset_count: usize,
    /// projection[x] = coset index of x.
    pub projection: Vec<usize>,
    /// Minimal representative of each coset.
    pub reps: Vec<usize>,
    pub phi_plus: Vec<Vec<usize>>,
    pub phi_star: Vec<Vec<usize>>,
}

fn comm_plus(a: &SkewBrace, x: usize, y: usize) -> usize {
    a.plus(a.plus(x, y), a.plus(a.neg(x), a.neg(y)))
}

fn coset_reps(n: usize, proj: &[usize], q: usize) -> Vec<usize> {
    let mut reps = vec![usize::MAX; q];
    for x in 0..n {
        if reps[proj[x]] == usize::MAX {
            reps[proj[x]] = x;
        }
    }
    reps
}

/// Compute both commutator maps and verify they are independent of the
/// choice of representatives.
pub fn commutator_maps(a: &SkewBrace) -> Result<CommutatorMaps> {
    let ann = a.ann();
    let (_, projection) = a.add.quotient(&ann)?;
    let q = a.n / ann.len();
    let reps = coset_reps(a.n, &projection, q);
    let mut phi_plus = vec![vec![0; q]; q];
    let mut phi_star = vec![vec![0; q]; q];
    for i in 0..q {
        for j in 0..q {
            phi_plus[i][j] = comm_plus(a, reps[i], reps[j]);
            phi_star[i][j] = a.star(reps[i], reps[j]);
        }
    }
    // well-definedness: every representative pair gives the same values
    for x in 0..a.n {
        for y in 0..a.n {
            let (i, j) = (projection[x], projection[y]);
            if comm_plus(a, x, y) != phi_plus[i][j] || a.star(x, y) != phi_star[i][j] {
                return Err(Error::Inconsistency(format!(
                    "commutator map not well-defined at ({x}, {y})"
                )));
            }
        }
    }
    let a_prime = a.a_prime();
    for row in phi_plus.iter().chain(phi_star.iter()) {
        for v in row {
            if a_prime.binary_search(v).is_err() {
                return Err(Error::Inconsistency(
                    "commutator value outside A'".into(),
                ));
            }
        }
    }
    Ok(CommutatorMaps {
        coset_count: q,
        projection,
        reps,
        phi_plus,
        phi_star,
    })
}

/// A verified isoclinism: ξ on cosets of the annihilators, δ on the
/// commutator sub-braces.
#[derive(Debug, Clone)]
pub struct IsoclinismWitness {
    /// xi[coset of A/Ann(A)] = coset of B/Ann(B), matching the minimal-
    /// representative indexing of the quotient braces.
    pub xi: Vec<usize>,
    /// (x, δ(x)) for x in A′, sorted by x.
    pub delta: Vec<(usize, usize)>,
}

/// Given ξ on the annihilator quotients, try to extend to δ: A′ → B′ that
/// makes both commutator squares commute; mirrors the forced-generator
/// construction: δ is pinned on all [x,y]₊ and x∗y values and extended
/// additively from 0.
fn extend_delta(
    a: &SkewBrace,
    b: &SkewBrace,
    reps_a: &[usize],
    reps_b: &[usize],
    xi: &[usize],
    d1: &[usize],
    d2: &[usize],
) -> Option<Vec<(usize, usize)>> {
    let q = reps_a.len();
    let mut pinned: HashMap<usize, usize> = HashMap::new();
    let mut gens: Vec<usize> = Vec::new();
    for xb in 0..q {
        for yb in 0..q {
            let (x1, y1) = (reps_a[xb], reps_a[yb]);
            let (x2, y2) = (reps_b[xi[xb]], reps_b[xi[yb]]);
            for (s, t) in [
                (comm_plus(a, x1, y1), comm_plus(b, x2, y2)),
                (a.star(x1, y1), b.star(x2, y2)),
            ] {
                match pinned.get(&s) {
                    Some(&prev) if prev != t => return None,
                    Some(_) => {}
                    None => {
                        pinned.insert(s, t);
                        gens.push(s);
                    }
                }
            }
        }
    }
    // additive closure: δ(u + g) = δ(u) + δ(g)
    let mut delta: HashMap<usize, usize> = HashMap::from([(0, pinned.get(&0).copied().unwrap_or(0))]);
    if delta[&0] != 0 {
        return None;
    }
    let mut frontier = vec![0usize];
    while let Some(u) = frontier.pop() {
        for &g in &gens {
            let v = a.plus(u, g);
            let w = b.plus(delta[&u], pinned[&g]);
            match delta.get(&v) {
                Some(&prev) if prev != w => return None,
                Some(_) => {}
                None => {
                    delta.insert(v, w);
                    frontier.push(v);
                }
            }
        }
    }
    let mut domain: Vec<usize> = delta.keys().copied().collect();
    domain.sort_unstable();
    let mut image: Vec<usize> = delta.values().copied().collect();
    image.sort_unstable();
    if domain != d1 || image != d2 {
        return None;
    }
    // δ must preserve both operations on A′
    for &x in d1 {
        for &y in d1 {
            if delta.get(&a.plus(x, y)) != Some(&b.plus(delta[&x], delta[&y]))
                || delta.get(&a.mul(x, y)) != Some(&b.mul(delta[&x], delta[&y]))
            {
                return None;
            }
        }
    }
    let mut pairs: Vec<(usize, usize)> = delta.into_iter().collect();
    pairs.sort_unstable();
    Some(pairs)
}

/// Search for an isoclinism witness (ξ, δ); None when the braces are not
/// isoclinic.
pub fn is_isoclinic(
    a: &SkewBrace,
    b: &SkewBrace,
    budget: &Budget,
) -> Result<Option<IsoclinismWitness>> {
    budget.admit_order("is_isoclinic", a.n.max(b.n))?;
    let (ann_a, ann_b) = (a.ann(), b.ann());
    let (d1, d2) = (a.a_prime(), b.a_prime());
    if a.n / ann_a.len() != b.n / ann_b.len() || d1.len() != d2.len() {
        return Ok(None);
    }
    let qa = a.quotient_brace(&ann_a)?;
    let qb = b.quotient_brace(&ann_b)?;
    let (_, proj_a) = a.add.quotient(&ann_a)?;
    let (_, proj_b) = b.add.quotient(&ann_b)?;
    let reps_a = coset_reps(a.n, &proj_a, qa.n);
    let reps_b = coset_reps(b.n, &proj_b, qb.n);
    let meter = budget.meter("is_isoclinic");
    let mut witness = None;
    for_each_brace_isomorphism(&qa, &qb, &meter, &mut |xi| {
        if let Some(delta) = extend_delta(a, b, &reps_a, &reps_b, xi, &d1, &d2) {
            witness = Some(IsoclinismWitness {
                xi: xi.to_vec(),
                delta,
            });
            return false;
        }
        true
    })?;
    Ok(witness)
}

pub fn braces_isoclinic(a: &SkewBrace, b: &SkewBrace, budget: &Budget) -> Result<bool> {
    Ok(is_isoclinic(a, b, budget)?.is_some())
}

// ---------------------------------------------------------------------------
// group isoclinism
// ---------------------------------------------------------------------------

fn group_comm(g: &CayleyGroup, x: usize, y: usize) -> usize {
    g.op[g.op[x][y]][g.op[g.inv[x]][g.inv[y]]]
}

/// Group isoclinism: an isomorphism of central quotients compatible with the
/// commutator maps, extended to an isomorphism of derived subgroups.
pub fn groups_isoclinic(g1: &CayleyGroup, g2: &CayleyGroup, budget: &Budget) -> Result<bool> {
    budget.admit_order("groups_isoclinic", g1.n.max(g2.n))?;
    let (z1, z2) = (g1.center(), g2.center());
    let (q1, p1) = g1.quotient(&z1)?;
    let (q2, p2) = g2.quotient(&z2)?;
    let (d1, d2) = (g1.derived_subgroup(), g2.derived_subgroup());
    if q1.n != q2.n || d1.len() != d2.len() {
        return Ok(false);
    }
    let reps1 = coset_reps(g1.n, &p1, q1.n);
    let reps2 = coset_reps(g2.n, &p2, q2.n);
    let meter = budget.meter("groups_isoclinic");
    let mut found = false;
    for_each_isomorphism(&q1, &q2, &meter, &mut |xi| {
        let mut pinned: HashMap<usize, usize> = HashMap::new();
        let mut gens: Vec<usize> = Vec::new();
        for xb in 0..q1.n {
            for yb in 0..q1.n {
                let s = group_comm(g1, reps1[xb], reps1[yb]);
                let t = group_comm(g2, reps2[xi[xb]], reps2[xi[yb]]);
                match pinned.get(&s) {
                    Some(&prev) if prev != t => return true,
                    Some(_) => {}
                    None => {
                        pinned.insert(s, t);
                        gens.push(s);
                    }
                }
            }
        }
        let mut delta: HashMap<usize, usize> = HashMap::from([(0, 0)]);
        let mut frontier = vec![0usize];
        while let Some(u) = frontier.pop() {
            for &g in &gens {
                let v = g1.op[u][g];
                let w = g2.op[delta[&u]][pinned[&g]];
                match delta.get(&v) {
                    Some(&prev) if prev != w => return true,
                    Some(_) => {}
                    None => {
                        delta.insert(v, w);
                        frontier.push(v);
                    }
                }
            }
        }
        let mut domain: Vec<usize> = delta.keys().copied().collect();
        domain.sort_unstable();
        let mut image: Vec<usize> = delta.values().copied().collect();
        image.sort_unstable();
        image.dedup();
        if domain != d1 || image != d2 {
            return true;
        }
        if d1
            .iter()
            .all(|&x| d1.iter().all(|&y| delta[&g1.op[x][y]] == g2.op[delta[&x]][delta[&y]]))
        {
            found = true;
            return false;
        }
        true
    })?;
    Ok(found)
}

// ---------------------------------------------------------------------------
// consequences
// ---------------------------------------------------------------------------

/// Orbit-count profile: profile[m] = number of orbits of size m.
fn orbit_count_profile(sizes: &[usize], n: usize) -> Vec<usize> {
    let mut profile = vec![0usize; n + 1];
    for &s in sizes {
        profile[s] += 1;
    }
    profile
}

/// What the theorems promise for an isoclinic pair.
#[derive(Debug, Clone)]
pub struct ConsequenceReport {
    /// |B|·ℓ_A(m) = ℓ_B(m)·|A| for every m.
    pub lambda_scaling_holds: bool,
    /// |B|·t_A(m) = t_B(m)·|A| for every m.
    pub theta_scaling_holds: bool,
    /// Set when |A| = |B|: Λ(A) ≅ Λ(B) and Θ(A) ≅ Θ(B).
    pub lambda_graphs_isomorphic: Option<bool>,
    pub theta_graphs_isomorphic: Option<bool>,
    /// Λ(A) complete ⇔ Λ(B) complete, and the same for Θ.
    pub completeness_agrees: bool,
    /// Component counts of Λ and of Θ agree.
    pub component_counts_agree: bool,
    /// (A,+) ≈ (B,+) and (A,∘) ≈ (B,∘) as groups.
    pub groups_isoclinic: bool,
}

impl ConsequenceReport {
    pub fn all_hold(&self) -> bool {
        self.lambda_scaling_holds
            && self.theta_scaling_holds
            && self.lambda_graphs_isomorphic.unwrap_or(true)
            && self.theta_graphs_isomorphic.unwrap_or(true)
            && self.completeness_agrees
            && self.component_counts_agree
            && self.groups_isoclinic
    }
}

/// Check every promised consequence of an isoclinism between A and B.
pub fn verify_isoclinism_consequences(
    a: &SkewBrace,
    b: &SkewBrace,
    budget: &Budget,
) -> Result<ConsequenceReport> {
    let scaling = |sa: &[usize], sb: &[usize]| -> bool {
        let pa = orbit_count_profile(sa, a.n);
        let pb = orbit_count_profile(sb, b.n);
        (0..=a.n.max(b.n)).all(|m| {
            let la = pa.get(m).copied().unwrap_or(0);
            let lb = pb.get(m).copied().unwrap_or(0);
            b.n * la == lb * a.n
        })
    };
    let lambda_scaling_holds = scaling(&a.lambda_orbits().sizes(), &b.lambda_orbits().sizes());
    let theta_scaling_holds = scaling(&a.theta_orbits().sizes(), &b.theta_orbits().sizes());
    let (la, lb) = (lambda_graph(a), lambda_graph(b));
    let (ta, tb) = (theta_graph(a), theta_graph(b));
    let (lambda_graphs_isomorphic, theta_graphs_isomorphic) = if a.n == b.n {
        (
            Some(graphs_isomorphic(&la, &lb, budget)?),
            Some(graphs_isomorphic(&ta, &tb, budget)?),
        )
    } else {
        (None, None)
    };
    let completeness_agrees =
        la.is_complete() == lb.is_complete() && ta.is_complete() == tb.is_complete();
    let component_counts_agree =
        la.components.len() == lb.components.len() && ta.components.len() == tb.components.len();
    let groups_isoclinic = groups_isoclinic(&a.add, &b.add, budget)?
        && groups_isoclinic(&a.circ, &b.circ, budget)?;
    Ok(ConsequenceReport {
        lambda_scaling_holds,
        theta_scaling_holds,
        lambda_graphs_isomorphic,
        theta_graphs_isomorphic,
        completeness_agrees,
        component_counts_agree,
        groups_isoclinic,
    })
}
