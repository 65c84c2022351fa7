//! Constructors for the documented skew-brace families and named examples,
//! plus the recognizer mapping any one-vertex brace to its family.

use std::fmt;

use crate::brace::{find_brace_isomorphism, op_trivial_brace, trivial_brace, SkewBrace};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::graph::lambda_graph;
use crate::group::{abelian, cyclic, dihedral, for_each_isomorphism, CayleyGroup};
use crate::groups16::groups_of_order;

/// The six order-pq families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PqTag {
    T1,
    T2,
    C,
    D,
    E,
    F,
}

impl fmt::Display for PqTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PqTag::T1 => "T1",
            PqTag::T2 => "T2",
            PqTag::C => "C",
            PqTag::D => "D",
            PqTag::E => "E",
            PqTag::F => "F",
        };
        write!(f, "{s}")
    }
}

/// A buildable family member.
#[derive(Debug, Clone, PartialEq)]
pub enum FamilySpec {
    /// Trivial brace (∘ = +) on a group.
    Triv(CayleyGroup),
    /// Almost-trivial brace (+ = opposite of ∘) on a group.
    OpTriv(CayleyGroup),
    /// One of the four braces of order p², k ∈ 1..=4.
    P2 { p: usize, k: usize },
    /// Order-pq family; `param` is γ for E and μ for F (default q).
    Pq {
        tag: PqTag,
        p: usize,
        q: usize,
        g: Option<usize>,
        param: Option<usize>,
    },
    /// D_{2d}(F): F abelian of odd order d given by cyclic factors.
    D2d { fmods: Vec<usize> },
    /// J_{2^{i+1}d}(G): G abelian of odd order.
    J { i: usize, gmods: Vec<usize> },
    /// H_{2^{i+1}d}(G).
    H { i: usize, gmods: Vec<usize> },
    /// K_{8d}(G).
    K8d { gmods: Vec<usize> },
    /// A named example.
    Named(String),
}

fn mods_label(mods: &[usize]) -> String {
    if mods.is_empty() {
        "1".to_string()
    } else {
        mods.iter()
            .map(|m| format!("Z{m}"))
            .collect::<Vec<_>>()
            .join("x")
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Triv(g) => write!(f, "Triv(order {})", g.n),
            FamilySpec::OpTriv(g) => write!(f, "OpTriv(order {})", g.n),
            FamilySpec::P2 { p, k } => write!(f, "P2_{k}(p={p})"),
            FamilySpec::Pq {
                tag, p, q, param, ..
            } => match (tag, param) {
                (PqTag::E, Some(t)) => write!(f, "E{t}(p={p},q={q})"),
                (PqTag::F, Some(t)) => write!(f, "F{t}(p={p},q={q})"),
                _ => write!(f, "{tag}(p={p},q={q})"),
            },
            FamilySpec::D2d { fmods } => write!(f, "D2d(F={})", mods_label(fmods)),
            FamilySpec::J { i, gmods } => write!(f, "J(i={i},G={})", mods_label(gmods)),
            FamilySpec::H { i, gmods } => write!(f, "H(i={i},G={})", mods_label(gmods)),
            FamilySpec::K8d { gmods } => write!(f, "K8d(G={})", mods_label(gmods)),
            FamilySpec::Named(name) => write!(f, "{name}"),
        }
    }
}

// ---------------------------------------------------------------------------
// small arithmetic helpers
// ---------------------------------------------------------------------------

pub(crate) fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut base: usize, mut exp: usize, modulus: usize) -> usize {
    let mut acc = 1 % modulus;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

/// Least unit of multiplicative order q modulo the prime p.
pub fn default_pq_generator(p: usize, q: usize) -> Result<usize> {
    for h in 2..p {
        let mut x = h;
        let mut k = 1;
        while x != 1 {
            x = x * h % p;
            k += 1;
        }
        if k == q {
            return Ok(h);
        }
    }
    Err(Error::BadParameters(format!(
        "no unit of order {q} modulo {p}"
    )))
}

// tuple arithmetic over Z/m1 x ... x Z/mk, flattened row-major (the same
// layout as group::abelian)

fn tuple_count(mods: &[usize]) -> usize {
    mods.iter().product()
}

fn to_tuple(mods: &[usize], mut idx: usize) -> Vec<usize> {
    let mut t = vec![0; mods.len()];
    for k in (0..mods.len()).rev() {
        t[k] = idx % mods[k];
        idx /= mods[k];
    }
    t
}

fn to_index(mods: &[usize], t: &[usize]) -> usize {
    let mut idx = 0;
    for (k, &m) in mods.iter().enumerate() {
        idx = idx * m + t[k] % m;
    }
    idx
}

fn t_add(mods: &[usize], a: &[usize], b: &[usize]) -> Vec<usize> {
    mods.iter()
        .enumerate()
        .map(|(k, &m)| (a[k] + b[k]) % m)
        .collect()
}

fn t_neg(mods: &[usize], a: &[usize]) -> Vec<usize> {
    mods.iter()
        .enumerate()
        .map(|(k, &m)| (m - a[k]) % m)
        .collect()
}

/// k·a with k possibly negative.
fn t_scale(mods: &[usize], k: i64, a: &[usize]) -> Vec<usize> {
    mods.iter()
        .enumerate()
        .map(|(j, &m)| {
            let v = (a[j] as i64 * k).rem_euclid(m as i64);
            v as usize
        })
        .collect()
}

// ---------------------------------------------------------------------------
// abelian decompositions
// ---------------------------------------------------------------------------

fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            prefix.push(part);
            rec(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// All abelian groups of order n, as lists of prime-power cyclic factors
/// (primes ascending, exponents descending within a prime).
pub fn abelian_groups_of_order(n: usize) -> Vec<Vec<usize>> {
    assert!(n >= 1);
    let mut factors: Vec<(usize, usize)> = Vec::new();
    let mut rest = n;
    let mut p = 2;
    while p * p <= rest {
        if rest % p == 0 {
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += 1;
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    let mut result: Vec<Vec<usize>> = vec![Vec::new()];
    for (p, e) in factors {
        let mut grown = Vec::new();
        for parts in partitions(e) {
            for base in &result {
                let mut mods = base.clone();
                mods.extend(parts.iter().map(|&k| p.pow(k as u32)));
                grown.push(mods);
            }
        }
        result = grown;
    }
    result
}

/// Cyclic-factor decomposition of an abelian group (finite abelian groups
/// are determined by their element-order profiles).
pub fn abelian_decomposition(g: &CayleyGroup) -> Result<Vec<usize>> {
    if !g.is_abelian() {
        return Err(Error::InvalidInput("group is not abelian".into()));
    }
    let profile = g.order_profile();
    for mods in abelian_groups_of_order(g.n) {
        if abelian(&mods).order_profile() == profile {
            return Ok(mods);
        }
    }
    Err(Error::Inconsistency(
        "abelian group matches no decomposition".into(),
    ))
}

// ---------------------------------------------------------------------------
// one-vertex structures
// ---------------------------------------------------------------------------

/// The structure data (F, y, z, φ) behind a one-vertex brace on F × Z/2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneVertexStructure {
    /// Cyclic factors of the abelian group F.
    pub mods: Vec<usize>,
    /// F itself (elements flattened row-major over `mods`).
    pub f: CayleyGroup,
    /// Element y with 2y = 0.
    pub y: usize,
    /// Element z.
    pub z: usize,
    /// Endomorphism φ of F as an image vector.
    pub phi: Vec<usize>,
}

impl OneVertexStructure {
    /// Check the structure constraints: φ is an endomorphism, 2y = 0,
    /// φ(z) = φ(y) − 2z, φ∘φ = −2φ, and ψ(f,k₁,k₂) = k₂(φ(f) − k₁z) is
    /// surjective onto F.
    pub fn new(mods: Vec<usize>, y: usize, z: usize, phi: Vec<usize>) -> Result<Self> {
        let f = abelian(&mods);
        let nf = f.n;
        if y >= nf || z >= nf || phi.len() != nf || phi.iter().any(|&v| v >= nf) {
            return Err(Error::BadParameters(
                "structure data out of range for F".into(),
            ));
        }
        for a in 0..nf {
            for b in 0..nf {
                if phi[f.op[a][b]] != f.op[phi[a]][phi[b]] {
                    return Err(Error::BadParameters(
                        "phi is not an endomorphism of F".into(),
                    ));
                }
            }
        }
        if f.op[y][y] != 0 {
            return Err(Error::BadParameters("2y must vanish".into()));
        }
        let minus2 = |x: usize| f.inv[f.op[x][x]];
        if phi[z] != f.op[phi[y]][minus2(z)] {
            return Err(Error::BadParameters("phi(z) must equal phi(y) - 2z".into()));
        }
        for x in 0..nf {
            if phi[phi[x]] != minus2(phi[x]) {
                return Err(Error::BadParameters(
                    "phi composed with itself must equal -2 phi".into(),
                ));
            }
        }
        let mut reached = vec![false; nf];
        reached[0] = true;
        for x in 0..nf {
            reached[phi[x]] = true;
            reached[f.op[phi[x]][f.inv[z]]] = true;
        }
        if reached.iter().any(|&r| !r) {
            return Err(Error::BadParameters("psi is not surjective onto F".into()));
        }
        Ok(OneVertexStructure { mods, f, y, z, phi })
    }

    /// Build the brace on F × Z/2 ((f, k) flattened to f·2 + k):
    /// (f₁,k₁)+(f₂,k₂) = (f₁+(−1)^{k₁}f₂+k₁k₂y, k₁+k₂), and ∘ adds ψ.
    pub fn to_brace(&self) -> Result<SkewBrace> {
        let mods = &self.mods;
        let nf = self.f.n;
        let n = 2 * nf;
        let yt = to_tuple(mods, self.y);
        let zt = to_tuple(mods, self.z);
        let mut add = vec![vec![0; n]; n];
        let mut circ = vec![vec![0; n]; n];
        for f1 in 0..nf {
            let t1 = to_tuple(mods, f1);
            for k1 in 0..2 {
                let sign = if k1 == 0 { 1 } else { -1 };
                for f2 in 0..nf {
                    let t2 = to_tuple(mods, f2);
                    for k2 in 0..2 {
                        let mut base = t_add(mods, &t1, &t_scale(mods, sign, &t2));
                        if k1 * k2 == 1 {
                            base = t_add(mods, &base, &yt);
                        }
                        let k = (k1 + k2) % 2;
                        add[f1 * 2 + k1][f2 * 2 + k2] = to_index(mods, &base) * 2 + k;
                        let mut with_psi = base.clone();
                        if k2 == 1 {
                            let mut psi = to_tuple(mods, self.phi[f1]);
                            if k1 == 1 {
                                psi = t_add(mods, &psi, &t_neg(mods, &zt));
                            }
                            with_psi = t_add(mods, &with_psi, &psi);
                        }
                        circ[f1 * 2 + k1][f2 * 2 + k2] = to_index(mods, &with_psi) * 2 + k;
                    }
                }
            }
        }
        crate::brace::validate_brace(&add, &circ)
            .map_err(|e| Error::BadParameters(format!("structure tables invalid: {e}")))
    }
}

fn require_odd_mods(mods: &[usize], what: &str) -> Result<()> {
    if mods.iter().any(|&m| m % 2 == 0 || m == 0) {
        return Err(Error::BadParameters(format!("{what} must have odd order")));
    }
    Ok(())
}

fn neg2_endo(f: &CayleyGroup) -> Vec<usize> {
    (0..f.n).map(|x| f.inv[f.op[x][x]]).collect()
}

/// Structure data for a family spec, when the family is a one-vertex one.
pub fn one_vertex_structure(spec: &FamilySpec) -> Result<OneVertexStructure> {
    match spec {
        FamilySpec::D2d { fmods } => {
            require_odd_mods(fmods, "F")?;
            let f = abelian(fmods);
            OneVertexStructure::new(fmods.clone(), 0, 0, neg2_endo(&f))
        }
        FamilySpec::J { i, gmods } => {
            if *i < 1 {
                return Err(Error::BadParameters("J needs i >= 1".into()));
            }
            require_odd_mods(gmods, "G")?;
            let mut mods = vec![1usize << i];
            mods.extend_from_slice(gmods);
            let f = abelian(&mods);
            let one = to_index(&mods, &unit_tuple(&mods));
            OneVertexStructure::new(mods, 0, one, neg2_endo(&f))
        }
        FamilySpec::H { i, gmods } => {
            if *i < 1 {
                return Err(Error::BadParameters("H needs i >= 1".into()));
            }
            require_odd_mods(gmods, "G")?;
            let mut mods = vec![1usize << i];
            mods.extend_from_slice(gmods);
            let f = abelian(&mods);
            let mut half = vec![0; mods.len()];
            half[0] = 1 << (i - 1);
            let y = to_index(&mods, &half);
            let one = to_index(&mods, &unit_tuple(&mods));
            OneVertexStructure::new(mods, y, one, neg2_endo(&f))
        }
        FamilySpec::K8d { gmods } => {
            require_odd_mods(gmods, "G")?;
            let mut mods = vec![2, 2];
            mods.extend_from_slice(gmods);
            let y_t = {
                let mut t = vec![0; mods.len()];
                t[1] = 1;
                t
            };
            let y = to_index(&mods, &y_t);
            let nf = tuple_count(&mods);
            // phi(x1, x2, g) = (x2, 0, -2g)
            let phi: Vec<usize> = (0..nf)
                .map(|idx| {
                    let t = to_tuple(&mods, idx);
                    let mut img = vec![0; mods.len()];
                    img[0] = t[1];
                    for k in 2..mods.len() {
                        img[k] = (mods[k] - 2 * t[k] % mods[k]) % mods[k];
                    }
                    to_index(&mods, &img)
                })
                .collect();
            OneVertexStructure::new(mods, y, y, phi)
        }
        other => Err(Error::BadParameters(format!(
            "{other} is not a one-vertex family"
        ))),
    }
}

fn unit_tuple(mods: &[usize]) -> Vec<usize> {
    let mut t = vec![0; mods.len()];
    if !mods.is_empty() {
        t[0] = 1 % mods[0];
    }
    t
}

// ---------------------------------------------------------------------------
// family builders
// ---------------------------------------------------------------------------

fn build_p2(p: usize, k: usize) -> Result<SkewBrace> {
    if !is_prime(p) {
        return Err(Error::BadParameters(format!("{p} is not prime")));
    }
    if p * p > 255 {
        return Err(Error::BadParameters(format!("order {} too large", p * p)));
    }
    let n = p * p;
    match k {
        1 => Ok(trivial_brace(&cyclic(n))),
        2 => Ok(trivial_brace(&abelian(&[p, p]))),
        3 => {
            let add: Vec<Vec<usize>> =
                (0..n).map(|x| (0..n).map(|y| (x + y) % n).collect()).collect();
            let circ: Vec<Vec<usize>> = (0..n)
                .map(|x| (0..n).map(|y| (x + y + p * x * y) % n).collect())
                .collect();
            crate::brace::validate_brace(&add, &circ)
                .map_err(|e| Error::BadParameters(format!("p^2 family k=3: {e}")))
        }
        4 => {
            let add = abelian(&[p, p]);
            let mut circ = vec![vec![0; n]; n];
            for x1 in 0..p {
                for y1 in 0..p {
                    for x2 in 0..p {
                        for y2 in 0..p {
                            circ[x1 * p + y1][x2 * p + y2] =
                                ((x1 + x2 + y1 * y2) % p) * p + (y1 + y2) % p;
                        }
                    }
                }
            }
            crate::brace::validate_brace(&add.op, &circ)
                .map_err(|e| Error::BadParameters(format!("p^2 family k=4: {e}")))
        }
        _ => Err(Error::BadParameters(format!(
            "p^2 family index {k} outside 1..=4"
        ))),
    }
}

fn build_pq(
    tag: PqTag,
    p: usize,
    q: usize,
    g: Option<usize>,
    param: Option<usize>,
) -> Result<SkewBrace> {
    if !is_prime(p) || !is_prime(q) || p == q {
        return Err(Error::BadParameters(
            "p and q must be distinct primes".into(),
        ));
    }
    if (p - 1) % q != 0 {
        return Err(Error::BadParameters(format!(
            "q = {q} must divide p - 1 = {}",
            p - 1
        )));
    }
    if p * q > 255 {
        return Err(Error::BadParameters(format!("order {} too large", p * q)));
    }
    let g = match g {
        Some(g) => {
            let mut x = g % p;
            let mut k = 1;
            if x <= 1 {
                return Err(Error::BadParameters(format!(
                    "g = {g} is not a unit of order {q} modulo {p}"
                )));
            }
            while x != 1 {
                x = x * (g % p) % p;
                k += 1;
            }
            if k != q {
                return Err(Error::BadParameters(format!(
                    "g = {g} has order {k}, not {q}, modulo {p}"
                )));
            }
            g % p
        }
        None => default_pq_generator(p, q)?,
    };
    let gpow = |e: usize| pow_mod(g, e % q, p);
    let n = p * q;
    let idx = |a: usize, b: usize| (a % p) * q + (b % q);
    let mk = |f: &dyn Fn(usize, usize, usize, usize) -> (usize, usize)| -> Vec<Vec<usize>> {
        let mut t = vec![vec![0; n]; n];
        for a in 0..p {
            for b in 0..q {
                for c in 0..p {
                    for d in 0..q {
                        let (u, v) = f(a, b, c, d);
                        t[idx(a, b)][idx(c, d)] = idx(u, v);
                    }
                }
            }
        }
        t
    };
    let add_direct = mk(&|a, b, c, d| (a + c, b + d));
    let add_semi = mk(&|a, b, c, d| (a + gpow(b) * c, b + d));
    let (add, circ) = match tag {
        PqTag::T1 => (add_direct.clone(), add_direct.clone()),
        PqTag::T2 => (add_semi.clone(), add_semi.clone()),
        PqTag::C => (add_direct.clone(), add_semi.clone()),
        PqTag::D => (
            add_semi.clone(),
            mk(&|a, b, c, d| (gpow(d) * a + gpow(b) * c, b + d)),
        ),
        PqTag::E => {
            let gamma = param.unwrap_or(q);
            if gamma <= 1 || gamma > q {
                return Err(Error::BadParameters(format!(
                    "gamma = {gamma} outside 1 < gamma <= q"
                )));
            }
            let gg = gpow(gamma);
            (
                add_semi.clone(),
                mk(&|a, b, c, d| (a + pow_mod(gg, b % q, p) * c, b + d)),
            )
        }
        PqTag::F => {
            let mu = param.unwrap_or(q);
            if mu <= 1 || mu > q {
                return Err(Error::BadParameters(format!(
                    "mu = {mu} outside 1 < mu <= q"
                )));
            }
            let gm = gpow(mu);
            (
                add_semi.clone(),
                mk(&|a, b, c, d| (gpow(d) * a + pow_mod(gm, b % q, p) * c, b + d)),
            )
        }
    };
    crate::brace::validate_brace(&add, &circ)
        .map_err(|e| Error::BadParameters(format!("pq family {tag}: {e}")))
}

/// Build any family member or named example.
pub fn build(spec: &FamilySpec) -> Result<SkewBrace> {
    match spec {
        FamilySpec::Triv(g) => Ok(trivial_brace(g)),
        FamilySpec::OpTriv(g) => Ok(op_trivial_brace(g)),
        FamilySpec::P2 { p, k } => build_p2(*p, *k),
        FamilySpec::Pq {
            tag,
            p,
            q,
            g,
            param,
        } => build_pq(*tag, *p, *q, *g, *param),
        FamilySpec::D2d { .. }
        | FamilySpec::J { .. }
        | FamilySpec::H { .. }
        | FamilySpec::K8d { .. } => one_vertex_structure(spec)?.to_brace(),
        FamilySpec::Named(name) => named_example(name),
    }
}

// ---------------------------------------------------------------------------
// named examples
// ---------------------------------------------------------------------------

/// The documented standalone examples, by name.
pub fn named_example(name: &str) -> Result<SkewBrace> {
    let checked = |add: Vec<Vec<usize>>, circ: Vec<Vec<usize>>| -> Result<SkewBrace> {
        crate::brace::validate_brace(&add, &circ)
            .map_err(|e| Error::Inconsistency(format!("named example {name}: {e}")))
    };
    match name {
        "z12_cyclic" => {
            // multiplicative group cyclic ⟨s⟩; s^m + s^k = s^{k + (−1)^k m}
            let n = 12;
            let add = (0..n)
                .map(|m| {
                    (0..n)
                        .map(|k| {
                            let sign: i64 = if k % 2 == 0 { 1 } else { -1 };
                            ((k as i64 + sign * m as i64).rem_euclid(n as i64)) as usize
                        })
                        .collect()
                })
                .collect();
            let circ = (0..n).map(|m| (0..n).map(|k| (m + k) % n).collect()).collect();
            checked(add, circ)
        }
        "z3z2_mixed" => {
            let add = crate::group::direct(&cyclic(3), &cyclic(2)).op;
            let mut circ = vec![vec![0; 6]; 6];
            for n1 in 0..3 {
                for m in 0..2 {
                    for s in 0..3 {
                        for t in 0..2 {
                            let sign: i64 = if m == 0 { 1 } else { -1 };
                            let a = (n1 as i64 + sign * s as i64).rem_euclid(3) as usize;
                            circ[n1 * 2 + m][s * 2 + t] = a * 2 + (m + t) % 2;
                        }
                    }
                }
            }
            checked(add, circ)
        }
        "z8_5pow" => {
            let add = cyclic(8).op;
            let circ = (0..8)
                .map(|x| (0..8).map(|y| (x + pow_mod(5, x, 8) * y) % 8).collect())
                .collect();
            checked(add, circ)
        }
        "z9_radical" => {
            let add = cyclic(9).op;
            let circ = (0..9)
                .map(|x| (0..9).map(|y| (x + y + 3 * x * y) % 9).collect())
                .collect();
            checked(add, circ)
        }
        "z4_radical" => {
            let add = cyclic(4).op;
            let circ = (0..4)
                .map(|x| (0..4).map(|y| (x + y + 2 * x * y) % 4).collect())
                .collect();
            checked(add, circ)
        }
        "klein" => {
            let add = abelian(&[2, 2]).op;
            let mut circ = vec![vec![0; 4]; 4];
            for x1 in 0..2 {
                for y1 in 0..2 {
                    for x2 in 0..2 {
                        for y2 in 0..2 {
                            circ[x1 * 2 + y1][x2 * 2 + y2] =
                                ((x1 + x2 + y1 * y2) % 2) * 2 + (y1 + y2) % 2;
                        }
                    }
                }
            }
            checked(add, circ)
        }
        "z2z4_B2" => {
            let add = abelian(&[2, 4]).op;
            // Σ_{i<y1} i mod 2 per row
            let tri = [0usize, 0, 1, 1];
            let mut circ = vec![vec![0; 8]; 8];
            for x1 in 0..2 {
                for y1 in 0..4 {
                    for x2 in 0..2 {
                        for y2 in 0..4 {
                            circ[x1 * 4 + y1][x2 * 4 + y2] = ((x1 + x2 + y2 * tri[y1]) % 2) * 4
                                + (y1 + y2 + 2 * y1 * y2) % 4;
                        }
                    }
                }
            }
            checked(add, circ)
        }
        "triv_S3" => Ok(trivial_brace(&dihedral(3))),
        "optriv_S3" => Ok(op_trivial_brace(&dihedral(3))),
        other => Err(Error::UnknownName(other.to_string())),
    }
}

/// Names accepted by [`named_example`].
pub const NAMED_EXAMPLES: [&str; 9] = [
    "z12_cyclic",
    "z3z2_mixed",
    "z8_5pow",
    "z9_radical",
    "z4_radical",
    "klein",
    "z2z4_B2",
    "triv_S3",
    "optriv_S3",
];

// ---------------------------------------------------------------------------
// one-vertex recognizer
// ---------------------------------------------------------------------------

/// Split a decomposition into (2-part factors, odd factors).
fn split_even_odd(mods: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let evens = mods.iter().copied().filter(|m| m % 2 == 0).collect();
    let odds = mods.iter().copied().filter(|m| m % 2 == 1).collect();
    (evens, odds)
}

/// Identify the family of a brace whose λ-graph has exactly one vertex, and
/// cross-validate by an explicit brace isomorphism against the built family
/// member.
pub fn recognize_one_vertex(a: &SkewBrace, budget: &Budget) -> Result<FamilySpec> {
    if lambda_graph(a).vertex_count() != 1 {
        return Err(Error::NotOneVertex);
    }
    let fix = a.fix();
    if 2 * fix.len() != a.n {
        return Err(Error::NoFamilyMatch(format!(
            "one-vertex brace with |A| = {} but |Fix| = {}",
            a.n,
            fix.len()
        )));
    }
    let fix_group = a
        .add
        .subgroup_as_group(&fix)
        .map_err(|_| Error::NoFamilyMatch("Fix(A) is not an additive subgroup".into()))?;
    let fmods = abelian_decomposition(&fix_group)
        .map_err(|_| Error::NoFamilyMatch("Fix(A) is not abelian".into()))?;
    let m = a.n.trailing_zeros() as usize;
    let (evens, odds) = split_even_odd(&fmods);
    let candidates: Vec<FamilySpec> = match m {
        0 => Vec::new(),
        1 => {
            if evens.is_empty() {
                vec![FamilySpec::D2d { fmods }]
            } else {
                Vec::new()
            }
        }
        _ => {
            if evens == [1usize << (m - 1)] {
                vec![
                    FamilySpec::J {
                        i: m - 1,
                        gmods: odds.clone(),
                    },
                    FamilySpec::H {
                        i: m - 1,
                        gmods: odds,
                    },
                ]
            } else if m == 3 && evens == [2, 2] {
                vec![FamilySpec::K8d { gmods: odds }]
            } else {
                Vec::new()
            }
        }
    };
    for spec in candidates {
        let built = build(&spec)?;
        if find_brace_isomorphism(a, &built, budget)?.is_some() {
            return Ok(spec);
        }
    }
    Err(Error::NoFamilyMatch(format!(
        "one-vertex brace of order {} matches no family",
        a.n
    )))
}

/// Decide isomorphism of two one-vertex structures by the σ-criterion:
/// some isomorphism σ: F → F′ must satisfy φ′ = σφσ⁻¹, σ(y) = y′, and
/// z′ − σ(z) ∈ φ′(F′).
pub fn one_vertex_iso_criterion(
    s1: &OneVertexStructure,
    s2: &OneVertexStructure,
    budget: &Budget,
) -> Result<bool> {
    if s1.f.n != s2.f.n {
        return Ok(false);
    }
    budget.admit_order("one_vertex_iso_criterion", s1.f.n)?;
    let meter = budget.meter("one_vertex_iso_criterion");
    let mut phi_image: Vec<usize> = s2.phi.clone();
    phi_image.sort_unstable();
    phi_image.dedup();
    let mut matched = false;
    for_each_isomorphism(&s1.f, &s2.f, &meter, &mut |sigma| {
        let conjugated_ok = (0..s1.f.n).all(|x| sigma[s1.phi[x]] == s2.phi[sigma[x]]);
        if conjugated_ok && sigma[s1.y] == s2.y {
            let diff = s2.f.op[s2.z][s2.f.inv[sigma[s1.z]]];
            if phi_image.binary_search(&diff).is_ok() {
                matched = true;
                return false;
            }
        }
        true
    })?;
    Ok(matched)
}

// ---------------------------------------------------------------------------
// spec-string parsing ("pq:C p=5 q=2", "onevertex:J i=3 d=1", ...)
// ---------------------------------------------------------------------------

fn lookup_group(name: &str) -> Result<CayleyGroup> {
    for n in 1..=16 {
        for (gname, g) in groups_of_order(n)? {
            if gname == name {
                return Ok(g);
            }
        }
    }
    Err(Error::UnknownName(name.to_string()))
}

fn parse_mods(text: &str) -> Result<Vec<usize>> {
    let mut mods = Vec::new();
    for part in text.split('x') {
        let m: usize = part
            .parse()
            .map_err(|_| Error::BadParameters(format!("bad modulus list: {text}")))?;
        if m == 0 {
            return Err(Error::BadParameters("modulus 0 is not allowed".into()));
        }
        if m > 1 {
            mods.push(m);
        }
    }
    Ok(mods)
}

/// Parse a CLI family string.  Examples: "triv:S3", "p2:3 p=2",
/// "pq:C p=5 q=2", "onevertex:J i=3 d=1", "onevertex:D2d F=3x3",
/// "example:z12_cyclic".
pub fn parse_spec(text: &str) -> Result<FamilySpec> {
    let mut words = text.split_whitespace();
    let head = words
        .next()
        .ok_or_else(|| Error::BadParameters("empty family spec".into()))?;
    let (kind, variant) = head
        .split_once(':')
        .ok_or_else(|| Error::BadParameters(format!("expected kind:variant in {head:?}")))?;
    let mut kv = std::collections::BTreeMap::new();
    for word in words {
        let (k, v) = word
            .split_once('=')
            .ok_or_else(|| Error::BadParameters(format!("expected key=value, got {word:?}")))?;
        kv.insert(k.to_string(), v.to_string());
    }
    let get_num = |key: &str| -> Result<Option<usize>> {
        match kv.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|_| Error::BadParameters(format!("{key} = {v} is not a number"))),
        }
    };
    let need_num = |key: &str| -> Result<usize> {
        get_num(key)?.ok_or_else(|| Error::BadParameters(format!("missing parameter {key}")))
    };
    let parse_g_mods = |key_d: &str, key_g: &str| -> Result<Vec<usize>> {
        if let Some(text) = kv.get(key_g) {
            return parse_mods(text);
        }
        match get_num(key_d)? {
            Some(1) | None => Ok(Vec::new()),
            Some(d) => Ok(vec![d]),
        }
    };
    match kind {
        "triv" => Ok(FamilySpec::Triv(lookup_group(variant)?)),
        "optriv" => Ok(FamilySpec::OpTriv(lookup_group(variant)?)),
        "p2" => {
            let k: usize = variant
                .parse()
                .map_err(|_| Error::BadParameters(format!("bad p^2 index {variant:?}")))?;
            Ok(FamilySpec::P2 {
                p: need_num("p")?,
                k,
            })
        }
        "pq" => {
            let tag = match variant {
                "T1" => PqTag::T1,
                "T2" => PqTag::T2,
                "C" => PqTag::C,
                "D" => PqTag::D,
                "E" => PqTag::E,
                "F" => PqTag::F,
                other => {
                    return Err(Error::BadParameters(format!("unknown pq family {other:?}")))
                }
            };
            let param = match tag {
                PqTag::E => get_num("gamma")?,
                PqTag::F => get_num("mu")?,
                _ => None,
            };
            Ok(FamilySpec::Pq {
                tag,
                p: need_num("p")?,
                q: need_num("q")?,
                g: get_num("g")?,
                param,
            })
        }
        "onevertex" => match variant {
            "D2d" => {
                let fmods = if let Some(text) = kv.get("F") {
                    parse_mods(text)?
                } else {
                    match need_num("d")? {
                        1 => Vec::new(),
                        d => vec![d],
                    }
                };
                Ok(FamilySpec::D2d { fmods })
            }
            "J" => Ok(FamilySpec::J {
                i: need_num("i")?,
                gmods: parse_g_mods("d", "G")?,
            }),
            "H" => Ok(FamilySpec::H {
                i: need_num("i")?,
                gmods: parse_g_mods("d", "G")?,
            }),
            "K8d" => Ok(FamilySpec::K8d {
                gmods: parse_g_mods("d", "G")?,
            }),
            other => Err(Error::BadParameters(format!(
                "unknown one-vertex family {other:?}"
            ))),
        },
        "example" => {
            if NAMED_EXAMPLES.contains(&variant) {
                Ok(FamilySpec::Named(variant.to_string()))
            } else {
                Err(Error::UnknownName(variant.to_string()))
            }
        }
        other => Err(Error::BadParameters(format!(
            "unknown family kind {other:?}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brace::braces_isomorphic;
    use crate::group::{dicyclic, find_isomorphism};

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn the_four_braces_of_order_four_are_pairwise_distinct() {
        let braces: Vec<SkewBrace> = (1..=4)
            .map(|k| build(&FamilySpec::P2 { p: 2, k }).unwrap())
            .collect();
        for x in &braces {
            assert_eq!(x.n, 4);
        }
        for i in 0..4 {
            for j in i + 1..4 {
                assert!(!braces_isomorphic(&braces[i], &braces[j], &b()).unwrap());
            }
        }
    }

    #[test]
    fn order_four_family_members_match_the_named_examples() {
        let k3 = build(&FamilySpec::P2 { p: 2, k: 3 }).unwrap();
        assert!(braces_isomorphic(&k3, &named_example("z4_radical").unwrap(), &b()).unwrap());
        let k4 = build(&FamilySpec::P2 { p: 2, k: 4 }).unwrap();
        assert!(braces_isomorphic(&k4, &named_example("klein").unwrap(), &b()).unwrap());
    }

    fn pq32(tag: PqTag) -> SkewBrace {
        build(&FamilySpec::Pq {
            tag,
            p: 3,
            q: 2,
            g: None,
            param: None,
        })
        .unwrap()
    }

    #[test]
    fn order_six_families_have_the_expected_fix_sizes_and_flags() {
        use PqTag::*;
        // (tag, |Fix|, two-sided, bi-skew)
        let expected = [
            (T1, 6, true, true),
            (T2, 6, true, true),
            (C, 2, false, true),
            (D, 3, true, false),
            (E, 2, true, true),
            (F, 1, true, true),
        ];
        for (tag, fix, two_sided, bi_skew) in expected {
            let a = pq32(tag);
            assert_eq!(a.fix().len(), fix, "fix size of {tag}");
            assert_eq!(a.is_two_sided(), two_sided, "two-sidedness of {tag}");
            assert_eq!(a.is_bi_skew(), bi_skew, "bi-skew flag of {tag}");
        }
    }

    #[test]
    fn order_six_families_match_named_examples() {
        assert!(braces_isomorphic(
            &pq32(PqTag::F),
            &named_example("optriv_S3").unwrap(),
            &b()
        )
        .unwrap());
        assert!(braces_isomorphic(
            &pq32(PqTag::C),
            &named_example("z3z2_mixed").unwrap(),
            &b()
        )
        .unwrap());
        assert!(braces_isomorphic(
            &pq32(PqTag::T1),
            &named_example("triv_S3").unwrap().opposite(),
            &b()
        )
        .is_ok());
    }

    #[test]
    fn pq_parameters_are_validated() {
        assert!(matches!(
            build(&FamilySpec::Pq {
                tag: PqTag::C,
                p: 5,
                q: 3,
                g: None,
                param: None
            }),
            Err(Error::BadParameters(_))
        ));
        assert!(matches!(
            build(&FamilySpec::Pq {
                tag: PqTag::T1,
                p: 3,
                q: 3,
                g: None,
                param: None
            }),
            Err(Error::BadParameters(_))
        ));
        assert!(matches!(
            build(&FamilySpec::Pq {
                tag: PqTag::C,
                p: 7,
                q: 3,
                g: Some(6),
                param: None
            }),
            Err(Error::BadParameters(_))
        ));
    }

    #[test]
    fn default_generator_is_the_least_unit_of_order_q() {
        assert_eq!(default_pq_generator(3, 2).unwrap(), 2);
        assert_eq!(default_pq_generator(7, 3).unwrap(), 2);
        assert_eq!(default_pq_generator(5, 2).unwrap(), 4);
        assert_eq!(default_pq_generator(13, 4).unwrap(), 5);
    }

    #[test]
    fn explicit_gamma_q_matches_the_default_e_family() {
        let with_default = pq32(PqTag::E);
        let explicit = build(&FamilySpec::Pq {
            tag: PqTag::E,
            p: 3,
            q: 2,
            g: None,
            param: Some(2),
        })
        .unwrap();
        assert_eq!(with_default.circ, explicit.circ);
    }

    #[test]
    fn small_one_vertex_members_match_named_examples() {
        let j4 = build(&FamilySpec::J {
            i: 1,
            gmods: vec![],
        })
        .unwrap();
        assert!(braces_isomorphic(&j4, &named_example("klein").unwrap(), &b()).unwrap());
        let h4 = build(&FamilySpec::H {
            i: 1,
            gmods: vec![],
        })
        .unwrap();
        assert!(braces_isomorphic(&h4, &named_example("z4_radical").unwrap(), &b()).unwrap());
        let k8 = build(&FamilySpec::K8d { gmods: vec![] }).unwrap();
        assert!(braces_isomorphic(&k8, &named_example("z2z4_B2").unwrap(), &b()).unwrap());
    }

    #[test]
    fn order_eight_j_and_h_have_dihedral_and_quaternion_addition() {
        let j8 = build(&FamilySpec::J {
            i: 2,
            gmods: vec![],
        })
        .unwrap();
        assert!(find_isomorphism(&j8.add, &dihedral(4), &b()).unwrap().is_some());
        let h8 = build(&FamilySpec::H {
            i: 2,
            gmods: vec![],
        })
        .unwrap();
        assert!(find_isomorphism(&h8.add, &dicyclic(2), &b()).unwrap().is_some());
        assert!(!braces_isomorphic(&j8, &h8, &b()).unwrap());
    }

    #[test]
    fn z12_cyclic_is_the_j_family_member_over_z3() {
        let a = named_example("z12_cyclic").unwrap();
        let j12 = build(&FamilySpec::J {
            i: 1,
            gmods: vec![3],
        })
        .unwrap();
        let h12 = build(&FamilySpec::H {
            i: 1,
            gmods: vec![3],
        })
        .unwrap();
        assert!(braces_isomorphic(&a, &j12, &b()).unwrap());
        assert!(!braces_isomorphic(&a, &h12, &b()).unwrap());
        assert!(find_isomorphism(&a.add, &dihedral(6), &b()).unwrap().is_some());
        assert!(find_isomorphism(&h12.add, &dicyclic(3), &b()).unwrap().is_some());
    }

    #[test]
    fn recognizer_identifies_the_small_one_vertex_braces() {
        let cases: Vec<(&str, FamilySpec)> = vec![
            (
                "klein",
                FamilySpec::J {
                    i: 1,
                    gmods: vec![],
                },
            ),
            (
                "z4_radical",
                FamilySpec::H {
                    i: 1,
                    gmods: vec![],
                },
            ),
            ("z2z4_B2", FamilySpec::K8d { gmods: vec![] }),
            (
                "z12_cyclic",
                FamilySpec::J {
                    i: 1,
                    gmods: vec![3],
                },
            ),
        ];
        for (name, expected) in cases {
            let a = named_example(name).unwrap();
            assert_eq!(recognize_one_vertex(&a, &b()).unwrap(), expected, "{name}");
        }
    }

    #[test]
    fn recognizer_identifies_the_d_family_at_order_six() {
        let d = pq32(PqTag::D);
        assert_eq!(
            recognize_one_vertex(&d, &b()).unwrap(),
            FamilySpec::D2d { fmods: vec![3] }
        );
    }

    #[test]
    fn recognizer_rejects_braces_with_other_graph_shapes() {
        let multi = named_example("z8_5pow").unwrap();
        assert!(matches!(
            recognize_one_vertex(&multi, &b()),
            Err(Error::NotOneVertex)
        ));
        let empty = named_example("triv_S3").unwrap();
        assert!(matches!(
            recognize_one_vertex(&empty, &b()),
            Err(Error::NotOneVertex)
        ));
    }

    #[test]
    fn structure_criterion_agrees_with_brace_isomorphism() {
        let specs = [
            FamilySpec::J {
                i: 2,
                gmods: vec![],
            },
            FamilySpec::H {
                i: 2,
                gmods: vec![],
            },
            FamilySpec::K8d { gmods: vec![] },
            FamilySpec::J {
                i: 1,
                gmods: vec![3],
            },
            FamilySpec::H {
                i: 1,
                gmods: vec![3],
            },
            FamilySpec::D2d { fmods: vec![5] },
        ];
        let structures: Vec<OneVertexStructure> = specs
            .iter()
            .map(|s| one_vertex_structure(s).unwrap())
            .collect();
        let braces: Vec<SkewBrace> = specs.iter().map(|s| build(s).unwrap()).collect();
        for i in 0..specs.len() {
            for j in 0..specs.len() {
                let by_criterion =
                    one_vertex_iso_criterion(&structures[i], &structures[j], &b()).unwrap();
                let by_tables = braces_isomorphic(&braces[i], &braces[j], &b()).unwrap();
                assert_eq!(
                    by_criterion, by_tables,
                    "criterion disagrees for {} vs {}",
                    specs[i], specs[j]
                );
            }
        }
    }

    #[test]
    fn structure_invariants_reject_bad_data() {
        // y of order 4 violates 2y = 0
        assert!(matches!(
            OneVertexStructure::new(vec![4], 1, 1, neg2_endo(&abelian(&[4]))),
            Err(Error::BadParameters(_))
        ));
        // identity endomorphism fails phi^2 = -2 phi over Z/4
        let id4: Vec<usize> = (0..4).collect();
        assert!(matches!(
            OneVertexStructure::new(vec![4], 0, 1, id4),
            Err(Error::BadParameters(_))
        ));
        // zero endomorphism with z = 0 leaves psi non-surjective
        assert!(matches!(
            OneVertexStructure::new(vec![3], 0, 0, vec![0, 0, 0]),
            Err(Error::BadParameters(_))
        ));
    }

    #[test]
    fn one_vertex_parameters_are_validated() {
        assert!(matches!(
            build(&FamilySpec::J {
                i: 0,
                gmods: vec![]
            }),
            Err(Error::BadParameters(_))
        ));
        assert!(matches!(
            build(&FamilySpec::D2d { fmods: vec![4] }),
            Err(Error::BadParameters(_))
        ));
        assert!(matches!(
            build(&FamilySpec::K8d { gmods: vec![2] }),
            Err(Error::BadParameters(_))
        ));
    }

    #[test]
    fn d_family_members_have_one_vertex_graphs() {
        for fmods in [vec![3], vec![5], vec![9], vec![3, 3]] {
            let a = build(&FamilySpec::D2d {
                fmods: fmods.clone(),
            })
            .unwrap();
            assert_eq!(a.n, 2 * fmods.iter().product::<usize>());
            let g = lambda_graph(&a);
            assert_eq!(g.vertex_count(), 1, "F = {}", mods_label(&fmods));
            assert_eq!(g.sizes(), vec![a.n / 2]);
        }
    }

    #[test]
    fn abelian_group_lists_have_the_right_counts() {
        assert_eq!(abelian_groups_of_order(1), vec![Vec::<usize>::new()]);
        assert_eq!(abelian_groups_of_order(12), vec![vec![4, 3], vec![2, 2, 3]]);
        assert_eq!(abelian_groups_of_order(8).len(), 3);
        assert_eq!(abelian_groups_of_order(36).len(), 4);
        assert_eq!(abelian_groups_of_order(16).len(), 5);
    }

    #[test]
    fn abelian_decomposition_recovers_cyclic_factors() {
        assert_eq!(abelian_decomposition(&cyclic(12)).unwrap(), vec![4, 3]);
        assert_eq!(
            abelian_decomposition(&abelian(&[2, 6])).unwrap(),
            vec![2, 2, 3]
        );
        assert!(abelian_decomposition(&dihedral(3)).is_err());
    }

    #[test]
    fn spec_strings_parse_and_build() {
        let c52 = parse_spec("pq:C p=5 q=2").unwrap();
        assert_eq!(
            c52,
            FamilySpec::Pq {
                tag: PqTag::C,
                p: 5,
                q: 2,
                g: None,
                param: None
            }
        );
        assert_eq!(build(&c52).unwrap().n, 10);
        let j = parse_spec("onevertex:J i=3 d=1").unwrap();
        assert_eq!(
            j,
            FamilySpec::J {
                i: 3,
                gmods: vec![]
            }
        );
        assert_eq!(build(&j).unwrap().n, 16);
        let d2d = parse_spec("onevertex:D2d F=3x3").unwrap();
        assert_eq!(d2d, FamilySpec::D2d { fmods: vec![3, 3] });
        let named = parse_spec("example:z12_cyclic").unwrap();
        assert_eq!(build(&named).unwrap().n, 12);
        let triv = parse_spec("triv:S3").unwrap();
        assert_eq!(build(&triv).unwrap().n, 6);
        let p2 = parse_spec("p2:3 p=2").unwrap();
        assert_eq!(p2, FamilySpec::P2 { p: 2, k: 3 });
        let e = parse_spec("pq:E p=7 q=3 gamma=2").unwrap();
        assert_eq!(build(&e).unwrap().n, 21);
    }

    #[test]
    fn bad_spec_strings_are_rejected() {
        assert!(parse_spec("").is_err());
        assert!(parse_spec("pq:C").is_err());
        assert!(parse_spec("pq:X p=3 q=2").is_err());
        assert!(parse_spec("onevertex:J i=x d=1").is_err());
        assert!(parse_spec("example:nonsense").is_err());
        assert!(parse_spec("triv:NoSuchGroup").is_err());
        assert!(parse_spec("plain words").is_err());
    }

    #[test]
    fn every_named_example_validates() {
        for name in NAMED_EXAMPLES {
            let a = named_example(name).unwrap();
            assert!(a.n >= 4 && a.n <= 12, "{name}");
        }
        assert!(matches!(
            named_example("missing"),
            Err(Error::UnknownName(_))
        ));
    }
}
