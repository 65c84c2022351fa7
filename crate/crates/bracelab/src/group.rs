//! Finite groups as dense Cayley tables with the identity pinned at index 0.

use crate::action::OrbitPartition;
use crate::budget::{Budget, Meter};
use crate::error::{Error, Result};
use crate::perm;

/// A finite group on elements `0..n` given by its full operation table.
/// Construction goes through [`validate_group`] (or the internal builders,
/// which produce tables that are groups by construction); the identity is
/// always element 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyGroup {
    pub n: usize,
    /// `op[a][b]` is the product a·b.
    pub op: Vec<Vec<usize>>,
    /// `inv[x]` is the two-sided inverse of x.
    pub inv: Vec<usize>,
    /// `orders[x]` is the least k ≥ 1 with x^k = 0.
    pub orders: Vec<usize>,
}

/// Structural facts used for type queries and isomorphism screens.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureReport {
    pub center: Vec<usize>,
    pub derived_subgroup: Vec<usize>,
    pub is_abelian: bool,
    pub is_nilpotent: bool,
}

/// Validate an operation table as a group.  If the two-sided identity sits at
/// an index other than 0 the table is relabeled (by swapping that index with
/// 0) so the returned group has identity 0.
pub fn validate_group(op_table: &[Vec<usize>]) -> Result<CayleyGroup> {
    let n = op_table.len();
    if n == 0 {
        return Err(Error::InvalidInput("empty operation table".into()));
    }
    for (i, row) in op_table.iter().enumerate() {
        if row.len() != n {
            return Err(Error::InvalidInput(format!(
                "row {i} has length {} in a table of size {n}",
                row.len()
            )));
        }
        if row.iter().any(|&x| x >= n) {
            return Err(Error::InvalidInput(format!(
                "row {i} has an entry outside 0..{n}"
            )));
        }
    }
    for i in 0..n {
        let mut row_seen = vec![false; n];
        let mut col_seen = vec![false; n];
        for j in 0..n {
            let r = op_table[i][j];
            if row_seen[r] {
                return Err(Error::NotLatinSquare { index: i });
            }
            row_seen[r] = true;
            let c = op_table[j][i];
            if col_seen[c] {
                return Err(Error::NotLatinSquare { index: i });
            }
            col_seen[c] = true;
        }
    }
    let e = (0..n)
        .find(|&c| (0..n).all(|x| op_table[c][x] == x && op_table[x][c] == x))
        .ok_or(Error::NoIdentity)?;
    let op: Vec<Vec<usize>> = if e == 0 {
        op_table.to_vec()
    } else {
        let mut tau: Vec<usize> = (0..n).collect();
        tau.swap(0, e);
        (0..n)
            .map(|a| (0..n).map(|b| tau[op_table[tau[a]][tau[b]]]).collect())
            .collect()
    };
    let mut inv = vec![0; n];
    for (x, row) in op.iter().enumerate() {
        let right = row.iter().position(|&y| y == 0).expect("latin row");
        if op[right][x] != 0 {
            return Err(Error::NoInverse { x });
        }
        inv[x] = right;
    }
    for a in 0..n {
        for b in 0..n {
            let ab = op[a][b];
            for c in 0..n {
                if op[ab][c] != op[a][op[b][c]] {
                    return Err(Error::NotAssociative { a, b, c });
                }
            }
        }
    }
    Ok(CayleyGroup::from_valid_table(op))
}

impl CayleyGroup {
    /// Wrap a table that is already known to be a group with identity 0
    /// (used by the builders below, whose outputs are groups by
    /// construction).  Only the O(n²) derived tables are computed here.
    pub(crate) fn from_valid_table(op: Vec<Vec<usize>>) -> CayleyGroup {
        let n = op.len();
        let inv: Vec<usize> = (0..n)
            .map(|x| op[x].iter().position(|&y| y == 0).expect("latin row"))
            .collect();
        let orders: Vec<usize> = (0..n)
            .map(|a| {
                let mut x = a;
                let mut k = 1;
                while x != 0 {
                    x = op[x][a];
                    k += 1;
                }
                k
            })
            .collect();
        CayleyGroup { n, op, inv, orders }
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.op[a][b]
    }

    pub fn inverse(&self, x: usize) -> usize {
        self.inv[x]
    }

    pub fn element_order(&self, x: usize) -> usize {
        self.orders[x]
    }

    /// Sorted multiset of element orders.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut p = self.orders.clone();
        p.sort_unstable();
        p
    }

    /// Conjugation g·x·g⁻¹.
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.op[self.op[g][x]][self.inv[g]]
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..a).all(|b| self.op[a][b] == self.op[b][a]))
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&z| (0..self.n).all(|x| self.op[z][x] == self.op[x][z]))
            .collect()
    }

    /// Conjugacy classes, sorted by (size, smallest element).
    pub fn conjugacy_classes(&self) -> OrbitPartition {
        let mut seen = vec![false; self.n];
        let mut classes = Vec::new();
        for x in 0..self.n {
            if seen[x] {
                continue;
            }
            let mut class = Vec::new();
            for g in 0..self.n {
                let y = self.conj(g, x);
                if !seen[y] {
                    seen[y] = true;
                    class.push(y);
                }
            }
            classes.push(class);
        }
        OrbitPartition::from_classes(classes)
    }

    /// Smallest subgroup containing `gens`, as a sorted element list.
    pub fn subgroup_gen(&self, gens: &[usize]) -> Vec<usize> {
        let mut member = vec![false; self.n];
        member[0] = true;
        let mut frontier = vec![0];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                for y in [self.op[x][g], self.op[x][self.inv[g]]] {
                    if !member[y] {
                        member[y] = true;
                        frontier.push(y);
                    }
                }
            }
        }
        (0..self.n).filter(|&x| member[x]).collect()
    }

    pub fn derived_subgroup(&self) -> Vec<usize> {
        let mut comms: Vec<usize> = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                let c = self.op[self.op[a][b]][self.op[self.inv[a]][self.inv[b]]];
                if !comms.contains(&c) {
                    comms.push(c);
                }
            }
        }
        self.subgroup_gen(&comms)
    }

    /// Whether the sorted element list is closed under the operation (and
    /// therefore a subgroup, by finiteness) and contains the identity.
    pub fn is_subgroup(&self, elems: &[usize]) -> bool {
        if elems.binary_search(&0).is_err() {
            return false;
        }
        elems
            .iter()
            .all(|&a| elems.iter().all(|&b| elems.binary_search(&self.op[a][b]).is_ok()))
    }

    /// Whether the sorted element list is a normal subgroup.
    pub fn is_normal_subgroup(&self, elems: &[usize]) -> bool {
        self.is_subgroup(elems)
            && elems
                .iter()
                .all(|&x| (0..self.n).all(|g| elems.binary_search(&self.conj(g, x)).is_ok()))
    }

    /// Quotient by a normal subgroup (given as a sorted element list).
    /// Returns the quotient group and the projection map; cosets are indexed
    /// by first appearance while scanning 0..n, so the coset of 0 is class 0.
    pub fn quotient(&self, nsub: &[usize]) -> Result<(CayleyGroup, Vec<usize>)> {
        if !self.is_normal_subgroup(nsub) {
            return Err(Error::InvalidInput(
                "subset is not a normal subgroup".into(),
            ));
        }
        let mut proj = vec![usize::MAX; self.n];
        let mut reps = Vec::new();
        for x in 0..self.n {
            if proj[x] != usize::MAX {
                continue;
            }
            let idx = reps.len();
            let mut coset: Vec<usize> = nsub.iter().map(|&k| self.op[x][k]).collect();
            coset.sort_unstable();
            reps.push(coset[0]);
            for c in coset {
                proj[c] = idx;
            }
        }
        let q = reps.len();
        let table: Vec<Vec<usize>> = (0..q)
            .map(|i| (0..q).map(|j| proj[self.op[reps[i]][reps[j]]]).collect())
            .collect();
        Ok((CayleyGroup::from_valid_table(table), proj))
    }

    /// Relabel a subgroup (sorted element list containing 0) as a standalone
    /// group; element i of the result is `elems[i]`.
    pub fn subgroup_as_group(&self, elems: &[usize]) -> Result<CayleyGroup> {
        if !self.is_subgroup(elems) {
            return Err(Error::InvalidInput("subset is not a subgroup".into()));
        }
        let mut pos = vec![usize::MAX; self.n];
        for (i, &x) in elems.iter().enumerate() {
            pos[x] = i;
        }
        let table: Vec<Vec<usize>> = elems
            .iter()
            .map(|&a| elems.iter().map(|&b| pos[self.op[a][b]]).collect())
            .collect();
        Ok(CayleyGroup::from_valid_table(table))
    }

    pub fn is_nilpotent(&self) -> bool {
        let mut g = self.clone();
        loop {
            let z = g.center();
            if z.len() == g.n {
                return true;
            }
            if z.len() == 1 {
                return false;
            }
            let (q, _) = g.quotient(&z).expect("center is normal");
            g = q;
        }
    }

    pub fn structure_queries(&self) -> StructureReport {
        StructureReport {
            center: self.center(),
            derived_subgroup: self.derived_subgroup(),
            is_abelian: self.is_abelian(),
            is_nilpotent: self.is_nilpotent(),
        }
    }
}

// ---------------------------------------------------------------------------
// builders
// ---------------------------------------------------------------------------

/// Cyclic group Z/m (m ≥ 1).
pub fn cyclic(m: usize) -> CayleyGroup {
    assert!(m >= 1, "cyclic group needs order >= 1");
    let op = (0..m).map(|a| (0..m).map(|b| (a + b) % m).collect()).collect();
    CayleyGroup::from_valid_table(op)
}

/// Direct product; pair (a, b) is flattened to `a * h.n + b`.
pub fn direct(g: &CayleyGroup, h: &CayleyGroup) -> CayleyGroup {
    let (n, m) = (g.n, h.n);
    let mut op = vec![vec![0; n * m]; n * m];
    for a1 in 0..n {
        for b1 in 0..m {
            for a2 in 0..n {
                for b2 in 0..m {
                    op[a1 * m + b1][a2 * m + b2] = g.op[a1][a2] * m + h.op[b1][b2];
                }
            }
        }
    }
    CayleyGroup::from_valid_table(op)
}

/// Abelian group Z/m₁ × ⋯ × Z/m_k; tuples flattened row-major (last
/// coordinate fastest).  The empty list gives the trivial group.
pub fn abelian(mods: &[usize]) -> CayleyGroup {
    let mut g = cyclic(1);
    for &m in mods {
        g = direct(&g, &cyclic(m));
    }
    g
}

/// Semidirect product N ⋊ H; `act[h]` is the automorphism of N applied by h,
/// as an image vector.  Pair (a, h) flattens to `a * h_group.n + h`.
pub fn semidirect_product(
    ng: &CayleyGroup,
    hg: &CayleyGroup,
    act: &[Vec<usize>],
) -> Result<CayleyGroup> {
    if act.len() != hg.n {
        return Err(Error::InvalidInput(format!(
            "action table has {} rows for a group of order {}",
            act.len(),
            hg.n
        )));
    }
    for p in act {
        if p.len() != ng.n || !perm::is_permutation(p) {
            return Err(Error::ActionNotAutomorphism);
        }
        for a in 0..ng.n {
            for b in 0..ng.n {
                if p[ng.op[a][b]] != ng.op[p[a]][p[b]] {
                    return Err(Error::ActionNotAutomorphism);
                }
            }
        }
    }
    for h1 in 0..hg.n {
        for h2 in 0..hg.n {
            let composed = perm::compose(&act[h1], &act[h2]);
            if composed != act[hg.op[h1][h2]] {
                return Err(Error::ActionNotHomomorphism);
            }
        }
    }
    let (n, m) = (ng.n, hg.n);
    let mut op = vec![vec![0; n * m]; n * m];
    for a1 in 0..n {
        for h1 in 0..m {
            for a2 in 0..n {
                for h2 in 0..m {
                    op[a1 * m + h1][a2 * m + h2] =
                        ng.op[a1][act[h1][a2]] * m + hg.op[h1][h2];
                }
            }
        }
    }
    Ok(CayleyGroup::from_valid_table(op))
}

/// Dihedral group of order 2m, as Z/m ⋊ Z/2 with the inversion action.
pub fn dihedral(m: usize) -> CayleyGroup {
    let rot = cyclic(m);
    let neg: Vec<usize> = (0..m).map(|x| (m - x) % m).collect();
    semidirect_product(&rot, &cyclic(2), &[(0..m).collect(), neg])
        .expect("inversion is an automorphism")
}

/// Dicyclic group of order 4m (m = 2 gives the quaternion group); element
/// (i, j) with i mod 2m, j mod 2 flattens to `i * 2 + j`.
pub fn dicyclic(m: usize) -> CayleyGroup {
    assert!(m >= 1);
    let n = 4 * m;
    let mut op = vec![vec![0; n]; n];
    for i in 0..2 * m {
        for j in 0..2 {
            for i2 in 0..2 * m {
                for j2 in 0..2 {
                    let (r, s) = if j == 0 {
                        ((i + i2) % (2 * m), j2)
                    } else if j2 == 0 {
                        ((i + 2 * m - i2) % (2 * m), 1)
                    } else {
                        ((i + 3 * m - i2) % (2 * m), 0)
                    };
                    op[i * 2 + j][i2 * 2 + j2] = r * 2 + s;
                }
            }
        }
    }
    CayleyGroup::from_valid_table(op)
}

fn lex_permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::new();
        for p in &out {
            for v in 0..k {
                if !p.contains(&v) {
                    let mut q = p.clone();
                    q.push(v);
                    next.push(q);
                }
            }
        }
        out = next;
    }
    out
}

fn perm_sign(p: &[usize]) -> i32 {
    let mut p = p.to_vec();
    let mut s = 1;
    for i in 0..p.len() {
        while p[i] != i {
            let j = p[i];
            p.swap(i, j);
            s = -s;
        }
    }
    s
}

pub(crate) fn permutation_group(elems: Vec<Vec<usize>>) -> CayleyGroup {
    let index = |q: &[usize]| elems.binary_search_by(|p| p.as_slice().cmp(q)).unwrap();
    let op = elems
        .iter()
        .map(|p| elems.iter().map(|q| index(&perm::compose(p, q))).collect())
        .collect();
    CayleyGroup::from_valid_table(op)
}

/// Symmetric group on k letters; elements are the permutations of 0..k in
/// lexicographic order, composed as (p·q)(i) = p(q(i)).
pub fn sym(k: usize) -> CayleyGroup {
    permutation_group(lex_permutations(k))
}

/// Alternating group on k letters (lexicographic even permutations).
pub fn alt(k: usize) -> CayleyGroup {
    permutation_group(
        lex_permutations(k)
            .into_iter()
            .filter(|p| perm_sign(p) == 1)
            .collect(),
    )
}

// ---------------------------------------------------------------------------
// isomorphisms and automorphisms
// ---------------------------------------------------------------------------

/// Generic backtracking search for bijections `0..n → 0..n` that transport a
/// family of operation tables simultaneously (one table pair for groups, the
/// add/circ pair for braces).  Candidates are pruned by a per-element key
/// (element orders) and each tentative assignment is closed under all table
/// pairs before descending.
pub(crate) struct IsoEngine<'a> {
    n: usize,
    pairs: Vec<(&'a [Vec<usize>], &'a [Vec<usize>])>,
    src_key: Vec<(usize, usize)>,
    dst_key: Vec<(usize, usize)>,
    fmap: Vec<Option<usize>>,
    used: Vec<bool>,
    dom: Vec<usize>,
}

impl<'a> IsoEngine<'a> {
    /// `pairs` lists (source table, destination table); `src_key`/`dst_key`
    /// are invariant labels a bijection must preserve.
    pub(crate) fn new(
        n: usize,
        pairs: Vec<(&'a [Vec<usize>], &'a [Vec<usize>])>,
        src_key: Vec<(usize, usize)>,
        dst_key: Vec<(usize, usize)>,
    ) -> Self {
        IsoEngine {
            n,
            pairs,
            src_key,
            dst_key,
            fmap: vec![None; n],
            used: vec![false; n],
            dom: Vec::new(),
        }
    }

    /// Run the search; `visit` returns false to stop early.
    pub(crate) fn run(
        &mut self,
        meter: &Meter,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> Result<()> {
        let mut src_sorted = self.src_key.clone();
        let mut dst_sorted = self.dst_key.clone();
        src_sorted.sort_unstable();
        dst_sorted.sort_unstable();
        if src_sorted != dst_sorted {
            return Ok(());
        }
        self.fmap[0] = Some(0);
        self.used[0] = true;
        self.dom.push(0);
        self.rec(meter, visit)?;
        Ok(())
    }

    fn rollback(&mut self, mark: usize) {
        while self.dom.len() > mark {
            let x = self.dom.pop().unwrap();
            let v = self.fmap[x].take().unwrap();
            self.used[v] = false;
        }
    }

    /// Record a → b, then propagate consequences through every table pair to
    /// a fixed point.  Returns Ok(false) on contradiction (caller rolls back).
    fn assign_and_close(&mut self, a: usize, b: usize, meter: &Meter) -> Result<bool> {
        if self.used[b] {
            return Ok(false);
        }
        self.fmap[a] = Some(b);
        self.used[b] = true;
        self.dom.push(a);
        let mut i = self.dom.len() - 1;
        while i < self.dom.len() {
            meter.charge(1)?;
            let x = self.dom[i];
            let fx = self.fmap[x].unwrap();
            let mut j = 0;
            while j < self.dom.len() {
                let y = self.dom[j];
                let fy = self.fmap[y].unwrap();
                for &(src, dst) in &self.pairs {
                    for (c, v) in [(src[x][y], dst[fx][fy]), (src[y][x], dst[fy][fx])] {
                        match self.fmap[c] {
                            Some(w) => {
                                if w != v {
                                    return Ok(false);
                                }
                            }
                            None => {
                                if self.used[v] {
                                    return Ok(false);
                                }
                                self.fmap[c] = Some(v);
                                self.used[v] = true;
                                self.dom.push(c);
                            }
                        }
                    }
                }
                j += 1;
            }
            i += 1;
        }
        Ok(true)
    }

    /// Depth-first over extensions; returns Ok(false) once `visit` stops the
    /// search.
    fn rec(&mut self, meter: &Meter, visit: &mut dyn FnMut(&[usize]) -> bool) -> Result<bool> {
        let n = self.n;
        if self.dom.len() == n {
            let image: Vec<usize> = (0..n).map(|x| self.fmap[x].unwrap()).collect();
            return Ok(visit(&image));
        }
        let a = (0..n).find(|&x| self.fmap[x].is_none()).unwrap();
        for b in 0..n {
            if self.used[b] || self.dst_key[b] != self.src_key[a] {
                continue;
            }
            meter.charge(1)?;
            let mark = self.dom.len();
            let consistent = self.assign_and_close(a, b, meter)?;
            if consistent && !self.rec(meter, visit)? {
                self.rollback(mark);
                return Ok(false);
            }
            self.rollback(mark);
        }
        Ok(true)
    }
}

/// Enumerate all isomorphisms G → H, invoking `visit` on each image vector;
/// `visit` returns false to stop early.  Backtracks on generator images with
/// element-order pruning and multiplicative-closure propagation.
pub fn for_each_isomorphism(
    g: &CayleyGroup,
    h: &CayleyGroup,
    meter: &Meter,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> Result<()> {
    if g.n != h.n {
        return Ok(());
    }
    let src_key: Vec<(usize, usize)> = g.orders.iter().map(|&o| (o, 0)).collect();
    let dst_key: Vec<(usize, usize)> = h.orders.iter().map(|&o| (o, 0)).collect();
    IsoEngine::new(g.n, vec![(&g.op, &h.op)], src_key, dst_key).run(meter, visit)
}

/// All automorphisms of G, sorted lexicographically by image vector (so the
/// identity is always first).
pub fn automorphisms(g: &CayleyGroup, budget: &Budget) -> Result<Vec<Vec<usize>>> {
    budget.admit_order("automorphisms", g.n)?;
    let meter = budget.meter("automorphisms");
    let mut found = Vec::new();
    for_each_isomorphism(g, g, &meter, &mut |image| {
        found.push(image.to_vec());
        true
    })?;
    found.sort_unstable();
    Ok(found)
}

/// One isomorphism G → H if the groups are isomorphic, else None.  Cheap
/// invariant screens run first (order, abelianness, element-order multiset,
/// center size, conjugacy-class-size multiset).
pub fn find_isomorphism(
    g: &CayleyGroup,
    h: &CayleyGroup,
    budget: &Budget,
) -> Result<Option<Vec<usize>>> {
    budget.admit_order("find_isomorphism", g.n.max(h.n))?;
    if g.n != h.n
        || g.is_abelian() != h.is_abelian()
        || g.order_profile() != h.order_profile()
        || g.center().len() != h.center().len()
        || g.conjugacy_classes().sizes() != h.conjugacy_classes().sizes()
    {
        return Ok(None);
    }
    let meter = budget.meter("find_isomorphism");
    let mut found = None;
    for_each_isomorphism(g, h, &meter, &mut |image| {
        found = Some(image.to_vec());
        false
    })?;
    Ok(found)
}

/// Whether G and H are isomorphic.
pub fn are_isomorphic(g: &CayleyGroup, h: &CayleyGroup, budget: &Budget) -> Result<bool> {
    Ok(find_isomorphism(g, h, budget)?.is_some())
}
