//! Skew braces: two group structures on one carrier, linked by the left
//! skew distributivity law a∘(b+c) = a∘b − a + a∘c.

use crate::action::OrbitPartition;
use crate::budget::{Budget, Meter};
use crate::error::{Error, Result};
use crate::group::{semidirect_product, validate_group, CayleyGroup, IsoEngine};
use crate::perm;

/// A finite skew brace on elements `0..n` with shared identity 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewBrace {
    pub n: usize,
    pub add: CayleyGroup,
    pub circ: CayleyGroup,
    /// `lambda[a][x] = −a + a∘x`; each row is an automorphism of (A,+).
    pub lambda: Vec<Vec<usize>>,
}

/// The λ-action as one permutation per element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaAction {
    pub maps: Vec<Vec<usize>>,
}

/// The θ-action of (A,+) ⋊_λ (A,∘); actor (a,b) is flattened to a·n + b.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaAction {
    pub actor_group: CayleyGroup,
    pub maps: Vec<Vec<usize>>,
}

/// Yes/no structural properties.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BraceFlags {
    pub abelian_type: bool,
    pub nilpotent_type: bool,
    pub trivial: bool,
    pub two_sided: bool,
    pub bi_skew: bool,
}

/// All structural subsets and flags of one brace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraceInvariants {
    pub fix: Vec<usize>,
    pub fix_theta: Vec<usize>,
    pub ker_lambda: Vec<usize>,
    pub soc: Vec<usize>,
    pub ann: Vec<usize>,
    pub a_squared: Vec<usize>,
    pub a_prime: Vec<usize>,
    pub left_nilpotency_class: Option<usize>,
    pub flags: BraceFlags,
}

fn find_identity(table: &[Vec<usize>]) -> Option<usize> {
    let n = table.len();
    (0..n).find(|&c| (0..n).all(|x| table[c][x] == x && table[x][c] == x))
}

/// Validate a pair of operation tables as a skew brace.  Both tables must be
/// groups with the same identity; if that identity is not 0, both are
/// relabeled together.  The compatibility law is checked on all n³ triples.
pub fn validate_brace(add_table: &[Vec<usize>], circ_table: &[Vec<usize>]) -> Result<SkewBrace> {
    if add_table.len() != circ_table.len() {
        return Err(Error::InvalidInput(
            "additive and multiplicative tables have different sizes".into(),
        ));
    }
    let add = validate_group(add_table).map_err(|e| Error::AddNotGroup(Box::new(e)))?;
    let circ = validate_group(circ_table).map_err(|e| Error::CircNotGroup(Box::new(e)))?;
    // validate_group relabels each table by swapping its own identity to 0;
    // that is only consistent if both operations share one identity.
    let e_add = find_identity(add_table).expect("validated group has an identity");
    let e_circ = find_identity(circ_table).expect("validated group has an identity");
    if e_add != e_circ {
        return Err(Error::IdentityMismatch);
    }
    let n = add.n;
    for x in 0..n {
        for y in 0..n {
            let xy = circ.op[x][y];
            for z in 0..n {
                let lhs = circ.op[x][add.op[y][z]];
                let rhs = add.op[add.op[xy][add.inv[x]]][circ.op[x][z]];
                if lhs != rhs {
                    return Err(Error::CompatibilityFailed { a: x, b: y, c: z });
                }
            }
        }
    }
    Ok(SkewBrace::from_parts(add, circ))
}

impl SkewBrace {
    /// Assemble a brace from two already-validated groups known to satisfy
    /// the compatibility law (builders and enumeration use this; arbitrary
    /// input goes through [`validate_brace`]).
    pub(crate) fn from_parts(add: CayleyGroup, circ: CayleyGroup) -> SkewBrace {
        let n = add.n;
        let lambda: Vec<Vec<usize>> = (0..n)
            .map(|a| (0..n).map(|x| add.op[add.inv[a]][circ.op[a][x]]).collect())
            .collect();
        SkewBrace {
            n,
            add,
            circ,
            lambda,
        }
    }

    pub fn plus(&self, x: usize, y: usize) -> usize {
        self.add.op[x][y]
    }

    pub fn neg(&self, x: usize) -> usize {
        self.add.inv[x]
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.circ.op[x][y]
    }

    pub fn cinv(&self, x: usize) -> usize {
        self.circ.inv[x]
    }

    /// θ_{(a,b)}(c) = a + λ_b(c) − a.
    pub fn theta(&self, a: usize, b: usize, c: usize) -> usize {
        self.plus(a, self.plus(self.lambda[b][c], self.neg(a)))
    }

    /// a ∗ b = λ_a(b) − b.
    pub fn star(&self, a: usize, b: usize) -> usize {
        self.plus(self.lambda[a][b], self.neg(b))
    }

    pub fn lambda_action(&self) -> LambdaAction {
        LambdaAction {
            maps: self.lambda.clone(),
        }
    }

    /// All n² θ-maps, actor (a,b) at index a·n + b.
    pub fn theta_maps(&self) -> Vec<Vec<usize>> {
        let n = self.n;
        let mut maps = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                maps.push((0..n).map(|c| self.theta(a, b, c)).collect());
            }
        }
        maps
    }

    /// The θ-action together with its actor group (A,+) ⋊_λ (A,∘), which is
    /// materialized as a full Cayley table of order n².
    pub fn theta_action(&self, budget: &Budget) -> Result<ThetaAction> {
        budget.admit_order("theta_action", self.n * self.n)?;
        let actor_group = semidirect_product(&self.add, &self.circ, &self.lambda)
            .map_err(|e| Error::Inconsistency(format!("lambda action is not valid: {e}")))?;
        Ok(ThetaAction {
            actor_group,
            maps: self.theta_maps(),
        })
    }

    /// λ-orbits, sorted by (size, smallest element).
    pub fn lambda_orbits(&self) -> OrbitPartition {
        OrbitPartition::from_maps(self.n, &self.lambda)
    }

    /// θ-orbits.  The θ-maps are generated by the additive conjugations
    /// (actors (a,0)) and the λ-maps (actors (0,b)), so those suffice.
    pub fn theta_orbits(&self) -> OrbitPartition {
        let n = self.n;
        let mut maps: Vec<Vec<usize>> = (0..n)
            .map(|a| (0..n).map(|c| self.add.conj(a, c)).collect())
            .collect();
        maps.extend(self.lambda.iter().cloned());
        OrbitPartition::from_maps(n, &maps)
    }

    /// Conjugacy classes of (A,+) — the orbits behind Γ((A,+)).
    pub fn conj_orbits(&self) -> OrbitPartition {
        self.add.conjugacy_classes()
    }

    pub fn fix(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&x| (0..self.n).all(|a| self.lambda[a][x] == x))
            .collect()
    }

    pub fn fix_theta(&self) -> Vec<usize> {
        let center = self.add.center();
        self.fix()
            .into_iter()
            .filter(|x| center.binary_search(x).is_ok())
            .collect()
    }

    pub fn ker_lambda(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&a| (0..self.n).all(|x| self.lambda[a][x] == x))
            .collect()
    }

    pub fn soc(&self) -> Vec<usize> {
        let center = self.add.center();
        self.ker_lambda()
            .into_iter()
            .filter(|a| center.binary_search(a).is_ok())
            .collect()
    }

    pub fn ann(&self) -> Vec<usize> {
        let circ_center = self.circ.center();
        self.soc()
            .into_iter()
            .filter(|a| circ_center.binary_search(a).is_ok())
            .collect()
    }

    pub fn additive_closure(&self, elems: &[usize]) -> Vec<usize> {
        let mut gens = elems.to_vec();
        gens.sort_unstable();
        gens.dedup();
        self.add.subgroup_gen(&gens)
    }

    /// X ∗ Y: the additive subgroup generated by {λ_x(y) − y : x∈X, y∈Y}.
    pub fn star_product(&self, xs: &[usize], ys: &[usize]) -> Vec<usize> {
        let products: Vec<usize> = xs
            .iter()
            .flat_map(|&x| ys.iter().map(move |&y| (x, y)))
            .map(|(x, y)| self.star(x, y))
            .collect();
        self.additive_closure(&products)
    }

    /// A² = A ∗ A.
    pub fn a_squared(&self) -> Vec<usize> {
        let all: Vec<usize> = (0..self.n).collect();
        self.star_product(&all, &all)
    }

    /// A′: additive subgroup generated by the additive commutators and A².
    pub fn a_prime(&self) -> Vec<usize> {
        let mut gens = self.a_squared();
        for a in 0..self.n {
            for b in 0..self.n {
                gens.push(self.plus(self.plus(a, b), self.plus(self.neg(a), self.neg(b))));
            }
        }
        self.additive_closure(&gens)
    }

    /// The chain A = A¹ ⊇ A² ⊇ … with A^{k+1} = A ∗ A^k, listed until it
    /// stabilizes (the last entry repeats nothing).
    pub fn left_chain(&self) -> Vec<Vec<usize>> {
        let all: Vec<usize> = (0..self.n).collect();
        let mut chain = vec![all.clone()];
        loop {
            let prev = chain.last().unwrap();
            let next = self.star_product(&all, prev);
            if &next == prev {
                return chain;
            }
            let done = next == [0];
            chain.push(next);
            if done {
                return chain;
            }
        }
    }

    /// Least n with A^{n+1} = {0}, or None when the chain stabilizes above
    /// {0}.  The trivial brace has class 1.
    pub fn left_nilpotency_class(&self) -> Option<usize> {
        let chain = self.left_chain();
        if chain.last().unwrap() != &[0] {
            return None;
        }
        Some(if chain.len() > 1 { chain.len() - 1 } else { 1 })
    }

    pub fn is_trivial(&self) -> bool {
        self.add.op == self.circ.op
    }

    /// Right-sided distributivity: (b+c)∘a = b∘a − a + c∘a for all triples.
    pub fn is_two_sided(&self) -> bool {
        let n = self.n;
        (0..n).all(|x| {
            (0..n).all(|y| {
                (0..n).all(|z| {
                    self.mul(self.plus(y, z), x)
                        == self.plus(self.plus(self.mul(y, x), self.neg(x)), self.mul(z, x))
                })
            })
        })
    }

    /// Whether (A,∘,+) is also a skew brace.
    pub fn is_bi_skew(&self) -> bool {
        let n = self.n;
        (0..n).all(|x| {
            (0..n).all(|y| {
                (0..n).all(|z| {
                    self.plus(x, self.mul(y, z))
                        == self.mul(self.mul(self.plus(x, y), self.cinv(x)), self.plus(x, z))
                })
            })
        })
    }

    pub fn abelian_type(&self) -> bool {
        self.add.is_abelian()
    }

    pub fn nilpotent_type(&self) -> bool {
        self.add.is_nilpotent()
    }

    pub fn invariants(&self) -> BraceInvariants {
        BraceInvariants {
            fix: self.fix(),
            fix_theta: self.fix_theta(),
            ker_lambda: self.ker_lambda(),
            soc: self.soc(),
            ann: self.ann(),
            a_squared: self.a_squared(),
            a_prime: self.a_prime(),
            left_nilpotency_class: self.left_nilpotency_class(),
            flags: BraceFlags {
                abelian_type: self.abelian_type(),
                nilpotent_type: self.nilpotent_type(),
                trivial: self.is_trivial(),
                two_sided: self.is_two_sided(),
                bi_skew: self.is_bi_skew(),
            },
        }
    }

    /// The opposite brace: a +' b = b + a, same multiplicative group.
    pub fn opposite(&self) -> SkewBrace {
        let n = self.n;
        let add_op: Vec<Vec<usize>> = (0..n)
            .map(|a| (0..n).map(|b| self.add.op[b][a]).collect())
            .collect();
        SkewBrace::from_parts(CayleyGroup::from_valid_table(add_op), self.circ.clone())
    }

    /// Check the three ideal conditions for a sorted element list, reporting
    /// the first violated one.
    pub fn check_ideal(&self, elems: &[usize]) -> Result<()> {
        if !self.add.is_subgroup(elems) {
            return Err(Error::NotIdeal(
                "subset is not an additive subgroup".into(),
            ));
        }
        if !self.add.is_normal_subgroup(elems) {
            return Err(Error::NotIdeal("subset is not normal in (A,+)".into()));
        }
        for a in 0..self.n {
            for &x in elems {
                if elems.binary_search(&self.lambda[a][x]).is_err() {
                    return Err(Error::NotIdeal(
                        "subset is not invariant under the lambda action".into(),
                    ));
                }
            }
        }
        if !self.circ.is_normal_subgroup(elems) {
            return Err(Error::NotIdeal("subset is not normal in (A,\u{2218})".into()));
        }
        Ok(())
    }

    pub fn is_ideal(&self, elems: &[usize]) -> bool {
        self.check_ideal(elems).is_ok()
    }

    /// All ideals, by filtering the additive subgroup lattice; sorted by
    /// (size, elements).
    pub fn ideals(&self) -> Vec<Vec<usize>> {
        let mut ideals: Vec<Vec<usize>> = additive_subgroups(&self.add)
            .into_iter()
            .filter(|s| self.is_ideal(s))
            .collect();
        ideals.sort_by_key(|s| (s.len(), s.clone()));
        ideals
    }

    /// Quotient brace by an ideal; coset of 0 is element 0.
    pub fn quotient_brace(&self, ideal: &[usize]) -> Result<SkewBrace> {
        self.check_ideal(ideal)?;
        let (qadd, proj) = self
            .add
            .quotient(ideal)
            .map_err(|e| Error::NotIdeal(e.to_string()))?;
        let q = qadd.n;
        // representative of each coset: its smallest element (cosets of an
        // ideal agree for + and ∘, so the induced table is well defined)
        let mut reps = vec![usize::MAX; q];
        for x in 0..self.n {
            if reps[proj[x]] == usize::MAX {
                reps[proj[x]] = x;
            }
        }
        let qcirc_table: Vec<Vec<usize>> = (0..q)
            .map(|i| (0..q).map(|j| proj[self.mul(reps[i], reps[j])]).collect())
            .collect();
        let qcirc = validate_group(&qcirc_table)
            .map_err(|e| Error::Inconsistency(format!("induced quotient circle table: {e}")))?;
        Ok(SkewBrace::from_parts(qadd, qcirc))
    }

    /// Relabel a sub-skew-brace (subset closed under both operations) as a
    /// standalone brace; element i of the result is `elems[i]`.
    pub fn sub_brace(&self, elems: &[usize]) -> Result<SkewBrace> {
        let sadd = self.add.subgroup_as_group(elems)?;
        let mut sorted = elems.to_vec();
        sorted.sort_unstable();
        if !self.circ.is_subgroup(&sorted) {
            return Err(Error::InvalidInput(
                "subset is not closed under the circle operation".into(),
            ));
        }
        let mut pos = vec![usize::MAX; self.n];
        for (i, &x) in sorted.iter().enumerate() {
            pos[x] = i;
        }
        let scirc_table: Vec<Vec<usize>> = sorted
            .iter()
            .map(|&a| sorted.iter().map(|&b| pos[self.mul(a, b)]).collect())
            .collect();
        Ok(SkewBrace::from_parts(
            sadd,
            CayleyGroup::from_valid_table(scirc_table),
        ))
    }

    /// Internal-theorem audit: λ is a homomorphism (A,∘) → Aut(A,+) and θ
    /// respects the semidirect law.  Violations mean the brace structure is
    /// corrupt.
    pub fn verify_action_axioms(&self) -> Result<()> {
        let n = self.n;
        for a in 0..n {
            if !perm::is_permutation(&self.lambda[a]) {
                return Err(Error::Inconsistency(format!("lambda_{a} is not a bijection")));
            }
            for x in 0..n {
                for y in 0..n {
                    if self.lambda[a][self.plus(x, y)]
                        != self.plus(self.lambda[a][x], self.lambda[a][y])
                    {
                        return Err(Error::Inconsistency(format!(
                            "lambda_{a} is not additive at ({x}, {y})"
                        )));
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let composed = perm::compose(&self.lambda[a], &self.lambda[b]);
                if composed != self.lambda[self.mul(a, b)] {
                    return Err(Error::Inconsistency(format!(
                        "lambda_({a}\u{2218}{b}) differs from lambda_{a}\u{2218}lambda_{b}"
                    )));
                }
            }
        }
        let maps = self.theta_maps();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        // (a,b)·(c,d) = (a + λ_b(c), b∘d) in (A,+) ⋊_λ (A,∘)
                        let e1 = self.plus(a, self.lambda[b][c]);
                        let e2 = self.mul(b, d);
                        let composed = perm::compose(&maps[a * n + b], &maps[c * n + d]);
                        if composed != maps[e1 * n + e2] {
                            return Err(Error::Inconsistency(format!(
                                "theta does not respect the semidirect law at (({a},{b}),({c},{d}))"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// All subgroups of an (arbitrary) group's subgroup lattice, via closure of
/// generator extensions; returned as sorted element lists.
pub fn additive_subgroups(g: &CayleyGroup) -> Vec<Vec<usize>> {
    let mut seen: Vec<Vec<usize>> = vec![vec![0]];
    let mut frontier: Vec<Vec<usize>> = vec![vec![0]];
    while let Some(current) = frontier.pop() {
        for x in 1..g.n {
            if current.binary_search(&x).is_ok() {
                continue;
            }
            let mut gens = current.clone();
            gens.push(x);
            let bigger = g.subgroup_gen(&gens);
            if !seen.contains(&bigger) {
                seen.push(bigger.clone());
                frontier.push(bigger);
            }
        }
    }
    seen.sort_by_key(|s| (s.len(), s.clone()));
    seen
}

/// Enumerate brace isomorphisms A → B (bijections preserving both tables);
/// `visit` returns false to stop early.
pub fn for_each_brace_isomorphism(
    a: &SkewBrace,
    b: &SkewBrace,
    meter: &Meter,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> Result<()> {
    if a.n != b.n {
        return Ok(());
    }
    let src_key: Vec<(usize, usize)> = (0..a.n)
        .map(|x| (a.add.orders[x], a.circ.orders[x]))
        .collect();
    let dst_key: Vec<(usize, usize)> = (0..b.n)
        .map(|x| (b.add.orders[x], b.circ.orders[x]))
        .collect();
    IsoEngine::new(
        a.n,
        vec![(&a.add.op, &b.add.op), (&a.circ.op, &b.circ.op)],
        src_key,
        dst_key,
    )
    .run(meter, visit)
}

/// Cheap isomorphism invariants used to screen pairs before backtracking:
/// group invariants of both operations, sizes of Fix/Soc/Ann, and the λ- and
/// θ-orbit size profiles.
fn iso_screen_key(a: &SkewBrace) -> (Vec<usize>, Vec<usize>) {
    let group_part = |g: &CayleyGroup| -> Vec<usize> {
        let mut v = vec![g.is_abelian() as usize, g.center().len()];
        v.extend(g.order_profile());
        v.extend(g.conjugacy_classes().sizes());
        v
    };
    let mut key = group_part(&a.add);
    key.extend(group_part(&a.circ));
    key.extend([a.fix().len(), a.soc().len(), a.ann().len()]);
    let mut profile = a.lambda_orbits().sizes();
    profile.push(0);
    profile.extend(a.theta_orbits().sizes());
    (key, profile)
}

/// One brace isomorphism A → B, or None.
pub fn find_brace_isomorphism(
    a: &SkewBrace,
    b: &SkewBrace,
    budget: &Budget,
) -> Result<Option<Vec<usize>>> {
    budget.admit_order("find_brace_isomorphism", a.n.max(b.n))?;
    if a.n != b.n || iso_screen_key(a) != iso_screen_key(b) {
        return Ok(None);
    }
    let meter = budget.meter("find_brace_isomorphism");
    let mut found = None;
    for_each_brace_isomorphism(a, b, &meter, &mut |image| {
        found = Some(image.to_vec());
        false
    })?;
    Ok(found)
}

pub fn braces_isomorphic(a: &SkewBrace, b: &SkewBrace, budget: &Budget) -> Result<bool> {
    Ok(find_brace_isomorphism(a, b, budget)?.is_some())
}

/// All brace automorphisms of A, sorted lexicographically.
pub fn brace_automorphisms(a: &SkewBrace, budget: &Budget) -> Result<Vec<Vec<usize>>> {
    budget.admit_order("brace_automorphisms", a.n)?;
    let meter = budget.meter("brace_automorphisms");
    let mut found = Vec::new();
    for_each_brace_isomorphism(a, a, &meter, &mut |image| {
        found.push(image.to_vec());
        true
    })?;
    found.sort_unstable();
    Ok(found)
}

/// The trivial brace on a group (both operations equal).
pub fn trivial_brace(g: &CayleyGroup) -> SkewBrace {
    SkewBrace::from_parts(g.clone(), g.clone())
}

/// The almost-trivial brace: a + b := b·a (opposite group), a ∘ b := a·b.
pub fn op_trivial_brace(g: &CayleyGroup) -> SkewBrace {
    let n = g.n;
    let add: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| g.op[b][a]).collect()).collect();
    SkewBrace::from_parts(CayleyGroup::from_valid_table(add), g.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, dihedral};

    fn z4_radical() -> SkewBrace {
        let add: Vec<Vec<usize>> = (0..4).map(|x| (0..4).map(|y| (x + y) % 4).collect()).collect();
        let circ: Vec<Vec<usize>> =
            (0..4).map(|x| (0..4).map(|y| (x + y + 2 * x * y) % 4).collect()).collect();
        validate_brace(&add, &circ).unwrap()
    }

    #[test]
    fn trivial_brace_on_z2_validates() {
        let table = vec![vec![0, 1], vec![1, 0]];
        let b = validate_brace(&table, &table).unwrap();
        assert!(b.is_trivial());
    }

    #[test]
    fn z4_radical_lambda_rows() {
        let b = z4_radical();
        assert_eq!(b.lambda[0], vec![0, 1, 2, 3]);
        assert_eq!(b.lambda[1], vec![0, 3, 2, 1]);
        assert_eq!(b.lambda[2], vec![0, 1, 2, 3]);
        assert_eq!(b.lambda[3], vec![0, 3, 2, 1]);
    }

    #[test]
    fn shifted_circle_operation_reports_identity_mismatch() {
        let add: Vec<Vec<usize>> =
            (0..4).map(|x| (0..4).map(|y| (x + y) % 4).collect()).collect();
        let circ: Vec<Vec<usize>> =
            (0..4).map(|x| (0..4).map(|y| (x + y + 1) % 4).collect()).collect();
        assert!(matches!(
            validate_brace(&add, &circ),
            Err(Error::IdentityMismatch)
        ));
    }

    #[test]
    fn broken_compatibility_is_reported_with_witness() {
        // Z/4 against a relabeled copy of itself (1 ↔ 2 swapped): both are
        // groups with identity 0, but the distributivity law breaks
        let add: Vec<Vec<usize>> =
            (0..4).map(|x| (0..4).map(|y| (x + y) % 4).collect()).collect();
        let relabeled = vec![
            vec![0, 1, 2, 3],
            vec![1, 0, 3, 2],
            vec![2, 3, 1, 0],
            vec![3, 2, 0, 1],
        ];
        match validate_brace(&add, &relabeled) {
            Err(Error::CompatibilityFailed { a, b, c }) => {
                // recheck the reported witness against the law
                let plus = |x: usize, y: usize| (x + y) % 4;
                let neg = |x: usize| (4 - x) % 4;
                let mul = |x: usize, y: usize| relabeled[x][y];
                assert_ne!(mul(a, plus(b, c)), plus(plus(mul(a, b), neg(a)), mul(a, c)));
            }
            other => panic!("expected CompatibilityFailed, got {other:?}"),
        }
    }

    #[test]
    fn op_trivial_lambda_is_conjugation() {
        let s3 = dihedral(3);
        let b = op_trivial_brace(&s3);
        for a in 0..6 {
            for x in 0..6 {
                // in (S3, ·^op, ·): λ_a(x) = a·x·a⁻¹ computed in the circle group
                let expected = b.circ.conj(a, x);
                assert_eq!(b.lambda[a][x], expected);
            }
        }
    }

    #[test]
    fn star_products_of_small_braces() {
        let triv = trivial_brace(&cyclic(4));
        assert_eq!(triv.a_squared(), vec![0]);
        let b = z4_radical();
        assert_eq!(b.a_squared(), vec![0, 2]);
    }

    #[test]
    fn left_nilpotency_classes() {
        assert_eq!(trivial_brace(&cyclic(4)).left_nilpotency_class(), Some(1));
        assert_eq!(trivial_brace(&cyclic(1)).left_nilpotency_class(), Some(1));
        assert_eq!(z4_radical().left_nilpotency_class(), Some(2));
        // op-trivial brace on S3: A*A = derived subgroup chain stabilizes
        let b = op_trivial_brace(&dihedral(3));
        assert_eq!(b.left_nilpotency_class(), None);
    }

    #[test]
    fn invariants_of_trivial_abelian_brace() {
        let b = trivial_brace(&cyclic(6));
        let inv = b.invariants();
        let all: Vec<usize> = (0..6).collect();
        assert_eq!(inv.fix, all);
        assert_eq!(inv.fix_theta, all);
        assert_eq!(inv.soc, all);
        assert_eq!(inv.ann, all);
        assert_eq!(inv.a_squared, vec![0]);
        assert_eq!(inv.a_prime, vec![0]);
        assert_eq!(inv.left_nilpotency_class, Some(1));
        assert!(inv.flags.trivial && inv.flags.two_sided && inv.flags.bi_skew);
        assert!(inv.flags.abelian_type && inv.flags.nilpotent_type);
    }

    #[test]
    fn quotient_by_whole_brace_is_trivial() {
        let b = z4_radical();
        let all: Vec<usize> = (0..4).collect();
        let q = b.quotient_brace(&all).unwrap();
        assert_eq!(q.n, 1);
    }

    #[test]
    fn quotient_by_soc_of_radical_brace() {
        let b = z4_radical();
        assert_eq!(b.soc(), vec![0, 2]);
        let q = b.quotient_brace(&[0, 2]).unwrap();
        assert_eq!(q.n, 2);
        assert!(q.is_trivial());
    }

    #[test]
    fn ideal_violations_name_the_condition() {
        let b = op_trivial_brace(&dihedral(3));
        // {0,2} is the subgroup generated by a reflection: not normal
        let err = b.check_ideal(&[0, 2]).unwrap_err();
        assert!(matches!(err, Error::NotIdeal(_)));
        // not a subgroup at all
        assert!(matches!(b.check_ideal(&[0, 1, 2]), Err(Error::NotIdeal(_))));
    }

    #[test]
    fn theta_orbits_of_op_trivial_brace_are_conjugacy_classes() {
        let b = op_trivial_brace(&dihedral(3));
        let theta = b.theta_orbits();
        let conj = b.conj_orbits();
        assert_eq!(theta.orbits, conj.orbits);
        assert_eq!(theta.sizes(), vec![1, 2, 3]);
    }

    #[test]
    fn action_axioms_hold_for_sample_braces() {
        z4_radical().verify_action_axioms().unwrap();
        op_trivial_brace(&dihedral(3)).verify_action_axioms().unwrap();
    }

    #[test]
    fn brace_automorphism_group_of_z4_radical() {
        let b = z4_radical();
        let autos = brace_automorphisms(&b, &Budget::default()).unwrap();
        // bijections fixing both tables: identity and the map x ↦ -x
        assert_eq!(autos.len(), 2);
        assert_eq!(autos[0], vec![0, 1, 2, 3]);
        assert_eq!(autos[1], vec![0, 3, 2, 1]);
    }

    #[test]
    fn opposite_brace_of_op_trivial_is_trivial() {
        let s3 = dihedral(3);
        let b = op_trivial_brace(&s3).opposite();
        assert!(b.is_trivial());
    }

    #[test]
    fn subgroup_lattice_of_klein_group() {
        let klein = crate::group::abelian(&[2, 2]);
        let subs = additive_subgroups(&klein);
        assert_eq!(subs.len(), 5);
        assert_eq!(subs[0], vec![0]);
        assert_eq!(subs[4], vec![0, 1, 2, 3]);
    }
}
