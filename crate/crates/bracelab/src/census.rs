//! Isomorph-free exhaustive enumeration of all skew braces of a given order.
//!
//! A skew brace with additive group G corresponds to a regular subgroup of
//! the holomorph G ⋊ Aut(G): the subgroup element sending 0 to a is the pair
//! (a, λ_a).  The enumerator searches over assignments a ↦ λ_a by
//! transversal-extension backtracking, closing each partial assignment under
//! the rule λ_a ∘ λ_b = λ_{a + λ_a(b)} and pruning on conflicts.

use std::collections::{HashMap, HashSet};
use std::time::{Duration, Instant};

use crate::brace::{validate_brace, BraceInvariants, SkewBrace};
use crate::budget::{Budget, Meter};
use crate::catalog::{
    build, is_prime, recognize_one_vertex, FamilySpec, PqTag,
};
use crate::error::{Error, Result};
use crate::graph::{lambda_graph, theta_graph, CdGraph};
use crate::group::{automorphisms, find_isomorphism, permutation_group, CayleyGroup};
use crate::groups16::groups_of_order;
use crate::perm;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Tuning knobs for the enumerator.
#[derive(Debug, Clone)]
pub struct CensusOptions {
    /// Largest order enumerable with these options (default 12; up to 16
    /// with an extended budget).
    pub max_order: usize,
    /// Split the search across threads (effective only when the crate is
    /// built with the `parallel` feature; results are identical either way).
    pub parallel: bool,
    pub budget: Budget,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            max_order: 12,
            parallel: true,
            budget: Budget::default(),
        }
    }
}

/// The holomorph Hol(G) = G ⋊ Aut(G) with its natural action on G.
pub struct Holomorph {
    /// The semidirect product; the pair (a, f) flattens to `a·|Aut G| + f`.
    pub group: CayleyGroup,
    /// Automorphism image vectors, lexicographically sorted (identity first).
    pub autos: Vec<Vec<usize>>,
    /// Index of (a, id) for each a in G.
    pub embedding: Vec<usize>,
    /// Natural action on G: element (a, f) sends x to a + f(x).
    pub point_action: Vec<Vec<usize>>,
}

/// Materialize the holomorph of G.
pub fn holomorph(g: &CayleyGroup, budget: &Budget) -> Result<Holomorph> {
    let autos = automorphisms(g, budget)?;
    let m = autos.len();
    budget.admit_order("holomorph", g.n.saturating_mul(m))?;
    let aut_group = permutation_group(autos.clone());
    let hol = crate::group::semidirect_product(g, &aut_group, &autos)?;
    let embedding = (0..g.n).map(|a| a * m).collect();
    let point_action = (0..g.n * m)
        .map(|idx| {
            let (a, f) = (idx / m, idx % m);
            (0..g.n).map(|x| g.op[a][autos[f][x]]).collect()
        })
        .collect();
    Ok(Holomorph {
        group: hol,
        autos,
        embedding,
        point_action,
    })
}

// ---------------------------------------------------------------------------
// the regular-subgroup search
// ---------------------------------------------------------------------------

struct SearchContext<'a> {
    g: &'a CayleyGroup,
    autos: &'a [Vec<usize>],
    /// comp[i·na + j] = index of autos[i] ∘ autos[j], or the lazy map below.
    comp_table: Option<Vec<u32>>,
    meter: &'a Meter,
}

/// Above this many automorphisms the composition table is computed lazily.
const COMP_TABLE_LIMIT: usize = 1024;

impl<'a> SearchContext<'a> {
    fn new(g: &'a CayleyGroup, autos: &'a [Vec<usize>], meter: &'a Meter) -> SearchContext<'a> {
        let na = autos.len();
        let comp_table = (na <= COMP_TABLE_LIMIT).then(|| {
            let index: HashMap<&[usize], u32> = autos
                .iter()
                .enumerate()
                .map(|(i, a)| (a.as_slice(), i as u32))
                .collect();
            let mut table = vec![0u32; na * na];
            for i in 0..na {
                for j in 0..na {
                    table[i * na + j] = index[perm::compose(&autos[i], &autos[j]).as_slice()];
                }
            }
            table
        });
        SearchContext {
            g,
            autos,
            comp_table,
            meter,
        }
    }
}

/// Per-branch search state; cheap to clone at each decision point.
#[derive(Clone)]
struct Branch {
    /// λ-assignment as automorphism indices; -1 for unassigned.
    alpha: Vec<i64>,
    assigned: Vec<usize>,
    /// Lazy composition cache shared down one branch (only used when the
    /// automorphism group is too large for the full table).
    lazy_comp: HashMap<(u32, u32), u32>,
}

impl Branch {
    fn start(n: usize) -> Branch {
        Branch {
            alpha: vec![-1; n],
            assigned: Vec::new(),
            lazy_comp: HashMap::new(),
        }
    }

    fn comp(&mut self, ctx: &SearchContext, i: u32, j: u32) -> u32 {
        if let Some(table) = &ctx.comp_table {
            return table[i as usize * ctx.autos.len() + j as usize];
        }
        if let Some(&v) = self.lazy_comp.get(&(i, j)) {
            return v;
        }
        let composed = perm::compose(&ctx.autos[i as usize], &ctx.autos[j as usize]);
        let v = ctx
            .autos
            .binary_search_by(|p| p.as_slice().cmp(composed.as_slice()))
            .expect("automorphisms are closed under composition") as u32;
        self.lazy_comp.insert((i, j), v);
        v
    }

    /// Assign α(x) = k and propagate λ_a ∘ λ_b = λ_{a + λ_a(b)} to a
    /// fixpoint.  Returns false on conflict.
    fn assign_and_close(&mut self, ctx: &SearchContext, x: usize, k: u32) -> Result<bool> {
        ctx.meter.charge(1)?;
        let mut queue = vec![x];
        if self.alpha[x] >= 0 {
            return Ok(self.alpha[x] == k as i64);
        }
        self.alpha[x] = k as i64;
        self.assigned.push(x);
        while let Some(u) = queue.pop() {
            for idx in 0..self.assigned.len() {
                let v = self.assigned[idx];
                for (a, b) in [(u, v), (v, u)] {
                    let fa = self.alpha[a] as u32;
                    let fb = self.alpha[b] as u32;
                    let c = ctx.g.op[a][ctx.autos[fa as usize][b]];
                    let fc = self.comp(ctx, fa, fb);
                    if self.alpha[c] < 0 {
                        self.alpha[c] = fc as i64;
                        self.assigned.push(c);
                        queue.push(c);
                    } else if self.alpha[c] != fc as i64 {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    fn circ_table(&self, ctx: &SearchContext) -> Vec<Vec<usize>> {
        let n = ctx.g.n;
        (0..n)
            .map(|a| {
                let f = &ctx.autos[self.alpha[a] as usize];
                (0..n).map(|b| ctx.g.op[a][f[b]]).collect()
            })
            .collect()
    }
}

fn explore(ctx: &SearchContext, branch: Branch, out: &mut Vec<Vec<Vec<usize>>>) -> Result<()> {
    if branch.assigned.len() == ctx.g.n {
        out.push(branch.circ_table(ctx));
        return Ok(());
    }
    let x = (0..ctx.g.n)
        .find(|&v| branch.alpha[v] < 0)
        .expect("some element is unassigned");
    for k in 0..ctx.autos.len() as u32 {
        let mut next = branch.clone();
        if next.assign_and_close(ctx, x, k)? {
            explore(ctx, next, out)?;
        }
    }
    Ok(())
}

/// All circle tables making a skew brace on the additive group `g`, before
/// deduplication.  Sorted lexicographically, so parallel and serial runs
/// produce identical output.
fn raw_circle_tables(
    g: &CayleyGroup,
    autos: &[Vec<usize>],
    meter: &Meter,
    parallel: bool,
) -> Result<Vec<Vec<Vec<usize>>>> {
    let ctx = SearchContext::new(g, autos, meter);
    let mut root = Branch::start(g.n);
    let id_idx = autos
        .binary_search_by(|p| {
            let identity: Vec<usize> = (0..g.n).collect();
            p.as_slice().cmp(identity.as_slice())
        })
        .expect("identity is an automorphism") as u32;
    if !root.assign_and_close(&ctx, 0, id_idx)? {
        return Err(Error::Inconsistency(
            "identity assignment failed to close".into(),
        ));
    }
    let mut tables = if root.assigned.len() == g.n {
        let mut out = Vec::new();
        explore(&ctx, root, &mut out)?;
        out
    } else {
        let x = (0..g.n)
            .find(|&v| root.alpha[v] < 0)
            .expect("some element is unassigned");
        let seeds: Vec<u32> = (0..autos.len() as u32).collect();
        let run_seed = |k: &u32| -> Result<Vec<Vec<Vec<usize>>>> {
            let mut local = Vec::new();
            let mut next = root.clone();
            if next.assign_and_close(&ctx, x, *k)? {
                explore(&ctx, next, &mut local)?;
            }
            Ok(local)
        };
        let per_seed: Vec<Vec<Vec<Vec<usize>>>> = run_parallel(parallel, &seeds, run_seed)?;
        per_seed.into_iter().flatten().collect()
    };
    tables.sort_unstable();
    Ok(tables)
}

#[cfg(feature = "parallel")]
fn run_parallel<T: Sync, U: Send, F>(parallel: bool, items: &[T], f: F) -> Result<Vec<U>>
where
    F: Fn(&T) -> Result<U> + Sync + Send,
{
    if parallel {
        items.par_iter().map(f).collect()
    } else {
        items.iter().map(f).collect()
    }
}

#[cfg(not(feature = "parallel"))]
fn run_parallel<T, U, F>(_parallel: bool, items: &[T], f: F) -> Result<Vec<U>>
where
    F: Fn(&T) -> Result<U>,
{
    items.iter().map(f).collect()
}

/// Keep one representative per Aut(G)-orbit of circle tables.  The input is
/// sorted and closed under relabeling, so the representative kept is the
/// lexicographically least member of each orbit.
fn dedup_by_automorphisms(
    circs: Vec<Vec<Vec<usize>>>,
    autos: &[Vec<usize>],
) -> Vec<Vec<Vec<usize>>> {
    let flatten = |t: &[Vec<usize>]| -> Vec<u16> {
        t.iter().flatten().map(|&x| x as u16).collect()
    };
    let mut seen: HashSet<Vec<u16>> = HashSet::new();
    let mut reps = Vec::new();
    for circ in circs {
        let n = circ.len();
        if seen.contains(&flatten(&circ)) {
            continue;
        }
        for f in autos {
            let finv = perm::invert(f);
            let mut relabeled = Vec::with_capacity(n * n);
            for a in 0..n {
                let row = &circ[finv[a]];
                for b in 0..n {
                    relabeled.push(f[row[finv[b]]] as u16);
                }
            }
            seen.insert(relabeled);
        }
        reps.push(circ);
    }
    reps
}

/// All skew braces with additive group `g`, one per isomorphism class.
pub fn braces_with_additive_group(
    g: &CayleyGroup,
    options: &CensusOptions,
) -> Result<Vec<SkewBrace>> {
    options.budget.admit_order("braces_with_additive_group", g.n)?;
    let autos = automorphisms(g, &options.budget)?;
    let meter = options.budget.meter("braces_with_additive_group");
    let raw = raw_circle_tables(g, &autos, &meter, options.parallel)?;
    let reps = dedup_by_automorphisms(raw, &autos);
    reps.into_iter()
        .map(|circ| validate_brace(&g.op, &circ))
        .collect()
}

// ---------------------------------------------------------------------------
// reports
// ---------------------------------------------------------------------------

/// Everything the census records about one brace.
#[derive(Debug, Clone)]
pub struct BraceSummary {
    pub additive_group: String,
    pub multiplicative_group: Option<String>,
    pub invariants: BraceInvariants,
    pub lambda: CdGraph,
    pub theta: CdGraph,
    pub family_tags: Vec<String>,
}

pub struct CensusEntry {
    pub brace: SkewBrace,
    pub summary: BraceSummary,
}

pub struct CensusReport {
    pub n: usize,
    pub entries: Vec<CensusEntry>,
    pub elapsed: Duration,
}

impl CensusReport {
    pub fn total(&self) -> usize {
        self.entries.len()
    }

    /// (additive group name, brace count) in catalog order.
    pub fn counts_by_group(&self) -> Vec<(String, usize)> {
        let mut out: Vec<(String, usize)> = Vec::new();
        for e in &self.entries {
            match out.last_mut() {
                Some((name, k)) if *name == e.summary.additive_group => *k += 1,
                _ => out.push((e.summary.additive_group.clone(), 1)),
            }
        }
        out
    }
}

/// Factor n as p·q with p > q primes and q | p − 1, if possible.
fn pq_shape(n: usize) -> Option<(usize, usize)> {
    for q in 2..n {
        if n % q == 0 {
            let p = n / q;
            if q < p && is_prime(p) && is_prime(q) && (p - 1) % q == 0 {
                return Some((p, q));
            }
            return None;
        }
    }
    None
}

fn isqrt(n: usize) -> usize {
    let mut r = (n as f64).sqrt() as usize;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Family tags that apply to a brace: trivial/almost-trivial structure, the
/// p² and pq catalogs when the order has that shape, and the one-vertex
/// families when the λ-graph is a single vertex.
pub fn family_tags(
    a: &SkewBrace,
    additive_name: &str,
    multiplicative_name: Option<&str>,
    budget: &Budget,
) -> Result<Vec<String>> {
    let mut tags = Vec::new();
    if a.is_trivial() {
        tags.push(format!("Triv({additive_name})"));
    }
    if a.opposite().is_trivial() && !a.is_trivial() {
        let name = multiplicative_name.unwrap_or("?");
        tags.push(format!("OpTriv({name})"));
    }
    let mut candidates: Vec<FamilySpec> = Vec::new();
    let r = isqrt(a.n);
    if r * r == a.n && is_prime(r) {
        candidates.extend((1..=4).map(|k| FamilySpec::P2 { p: r, k }));
    }
    if let Some((p, q)) = pq_shape(a.n) {
        use PqTag::*;
        for tag in [T1, T2, C, D] {
            candidates.push(FamilySpec::Pq {
                tag,
                p,
                q,
                g: None,
                param: None,
            });
        }
        for tag in [E, F] {
            for t in 2..=q {
                candidates.push(FamilySpec::Pq {
                    tag,
                    p,
                    q,
                    g: None,
                    param: Some(t),
                });
            }
        }
    }
    for spec in candidates {
        let member = build(&spec)?;
        if crate::brace::braces_isomorphic(a, &member, budget)? {
            tags.push(spec.to_string());
        }
    }
    match recognize_one_vertex(a, budget) {
        Ok(spec) => tags.push(spec.to_string()),
        Err(Error::NotOneVertex) | Err(Error::NoFamilyMatch(_)) => {}
        Err(e) => return Err(e),
    }
    Ok(tags)
}

fn summarize(
    a: &SkewBrace,
    additive_name: &str,
    order_groups: &[(String, CayleyGroup)],
    budget: &Budget,
) -> Result<BraceSummary> {
    let mut multiplicative_group = None;
    for (name, g) in order_groups {
        if find_isomorphism(&a.circ, g, budget)?.is_some() {
            multiplicative_group = Some(name.clone());
            break;
        }
    }
    let family_tags = family_tags(a, additive_name, multiplicative_group.as_deref(), budget)?;
    Ok(BraceSummary {
        additive_group: additive_name.to_string(),
        multiplicative_group,
        invariants: a.invariants(),
        lambda: lambda_graph(a),
        theta: theta_graph(a),
        family_tags,
    })
}

/// Sort key within one additive group: invariant profile, then the circle
/// table itself.
fn entry_key(a: &SkewBrace) -> (Vec<usize>, Vec<Vec<usize>>) {
    let inv = a.invariants();
    let profile = vec![
        a.n - inv.fix.len(),
        a.n - inv.ker_lambda.len(),
        a.n - inv.soc.len(),
        a.n - inv.ann.len(),
        inv.a_squared.len(),
        inv.a_prime.len(),
    ];
    (profile, a.circ.op.clone())
}

/// Enumerate every skew brace of order n, one per isomorphism class.
pub fn enumerate_braces(n: usize, options: &CensusOptions) -> Result<CensusReport> {
    if n == 0 || n > 16 {
        return Err(Error::UnsupportedOrder(n));
    }
    if n > options.max_order {
        return Err(Error::BudgetExceeded {
            operation: format!("enumerate_braces({n}) with max_order {}", options.max_order),
            limit: options.max_order as u64,
        });
    }
    let start = Instant::now();
    let order_groups = groups_of_order(n)?;
    let mut entries = Vec::new();
    for (name, g) in &order_groups {
        let mut braces = braces_with_additive_group(g, options)?;
        braces.sort_by_cached_key(entry_key);
        for brace in braces {
            let summary = summarize(&brace, name, &order_groups, &options.budget)?;
            entries.push(CensusEntry { brace, summary });
        }
    }
    Ok(CensusReport {
        n,
        entries,
        elapsed: start.elapsed(),
    })
}
