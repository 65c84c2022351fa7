//! Acceptance criteria, one test per criterion.
//!
//! Each test line is the pass/fail verdict for one documented criterion.
//! Failing tests print serialized witnesses describing every violation.

use std::time::{Duration, Instant};

use bracelab::budget::Budget;
use bracelab::catalog::named_example;
use bracelab::census::{enumerate_braces, CensusOptions, CensusReport};
use bracelab::graph::{gamma_hom_image_check, gamma_graph, theta_graph, OrbitProfile};
use bracelab::verify::run_suite;

fn options() -> CensusOptions {
    CensusOptions {
        max_order: 14,
        parallel: true,
        budget: Budget::default(),
    }
}

fn census(n: usize) -> CensusReport {
    enumerate_braces(n, &options()).unwrap()
}

fn assert_suite(name: &str, limit: Duration) {
    let start = Instant::now();
    let report = run_suite(name, &Budget::default()).unwrap();
    let elapsed = start.elapsed();
    assert!(report.passed(), "\n{}", report.render());
    assert!(
        elapsed < limit,
        "suite {name} took {elapsed:?}, limit {limit:?}"
    );
}

#[test]
fn criterion_01_census_counts() {
    for (n, expected) in [(4, 4), (9, 4), (6, 6), (10, 6), (14, 6)] {
        let start = Instant::now();
        let report = census(n);
        let elapsed = start.elapsed();
        assert_eq!(
            report.total(),
            expected,
            "census at order {n}: {} braces, expected {expected}",
            report.total()
        );
        assert!(
            elapsed < Duration::from_secs(10),
            "census at order {n} took {elapsed:?}"
        );
    }
}

#[test]
fn criterion_02_order6_golden_table() {
    assert_suite("order6-table", Duration::from_secs(30));
}

#[test]
fn criterion_03_pq_graph_theorem() {
    assert_suite("pq-graphs", Duration::from_secs(5));
}

#[test]
fn criterion_04_generic_bounds() {
    assert_suite("generic-graph-bounds", Duration::from_secs(60));
    assert_suite("nilpotent-diameter2", Duration::from_secs(60));
}

#[test]
fn criterion_05_two_vertex_classification() {
    // The Λ half of this classification holds.  The Θ half is asserted as
    // documented (exactly the four order-6 braces); the census finds two
    // additional order-12 braces with additive group A4, so this criterion
    // fails and the suite report below serializes the finding.
    assert_suite("two-vertex-classification", Duration::from_secs(120));
}

#[test]
fn criterion_06_one_vertex_lambda_classification() {
    assert_suite("one-vertex-lambda", Duration::from_secs(60));
}

#[test]
fn criterion_07_one_vertex_theta_classification() {
    assert_suite("one-vertex-theta", Duration::from_secs(30));
}

fn prime_power(n: usize) -> Option<(usize, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut rest = n;
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            return if rest == 1 { Some((p, e)) } else { None };
        }
        p += 1;
    }
    Some((n, 1))
}

fn counting_violations(label: &str, profile: &OrbitProfile, n: usize) -> Vec<String> {
    let mut witnesses = Vec::new();
    let fix = profile.trivial_count;

    // |H^G| divides m·c(m) for every orbit size m.
    for &(m, c) in profile
        .counts
        .iter()
        .chain(std::iter::once(&(1, profile.trivial_count)))
    {
        if fix != 0 && (m * c) % fix != 0 {
            witnesses.push(format!(
                "{label}: |fixed| = {fix} does not divide {m}·{c}"
            ));
        }
    }

    let Some((p, _)) = prime_power(n) else {
        return witnesses;
    };

    // p-braces: p−1 divides c(p^m) for m ≥ 1 and c(1)−1 at m = 0.
    if (fix - 1) % (p - 1) != 0 {
        witnesses.push(format!(
            "{label}: p−1 = {} does not divide c(1)−1 = {}",
            p - 1,
            fix - 1
        ));
    }
    for &(m, c) in &profile.counts {
        let mut rest = m;
        while rest % p == 0 {
            rest /= p;
        }
        if rest != 1 {
            witnesses.push(format!("{label}: orbit size {m} is not a power of {p}"));
            continue;
        }
        if c % (p - 1) != 0 {
            witnesses.push(format!(
                "{label}: p−1 = {} does not divide c({m}) = {c}",
                p - 1
            ));
        }
    }

    // Minimal non-trivial orbit congruence mod p(p−1).
    if let Some(&(s, c)) = profile.counts.first() {
        let modulus = p * (p - 1);
        if fix == s {
            if c % modulus != p - 1 {
                witnesses.push(format!(
                    "{label}: |fixed| = {fix} = minimal orbit size but c({s}) = {c} ≢ {} (mod {modulus})",
                    p - 1
                ));
            }
        } else if fix > s {
            if c % modulus != 0 {
                witnesses.push(format!(
                    "{label}: |fixed| = {fix} > minimal orbit size {s} but c({s}) = {c} ≢ 0 (mod {modulus})"
                ));
            }
        } else {
            witnesses.push(format!(
                "{label}: |fixed| = {fix} is smaller than the minimal orbit size {s}"
            ));
        }
    }
    witnesses
}

#[test]
fn criterion_08_counting_lemmas() {
    let mut witnesses = Vec::new();
    for n in 1..=12 {
        let report = census(n);
        for (index, entry) in report.entries.iter().enumerate() {
            let a = &entry.brace;
            let lambda = OrbitProfile::of(&a.lambda_orbits());
            let theta = OrbitProfile::of(&a.theta_orbits());
            witnesses.extend(counting_violations(
                &format!("n={n} #{index} λ"),
                &lambda,
                n,
            ));
            witnesses.extend(counting_violations(
                &format!("n={n} #{index} θ"),
                &theta,
                n,
            ));
        }
    }
    assert!(witnesses.is_empty(), "\n{}", witnesses.join("\n"));
}

#[test]
fn criterion_09_orbit_difference_spans() {
    let mut witnesses = Vec::new();
    for n in 1..=10 {
        let report = census(n);
        for (index, entry) in report.entries.iter().enumerate() {
            let a = &entry.brace;
            let span_of = |orbits: &Vec<Vec<usize>>| {
                let mut diffs = Vec::new();
                for orbit in orbits {
                    if orbit.len() < 2 {
                        continue;
                    }
                    for &u in orbit {
                        for &v in orbit {
                            diffs.push(a.plus(u, a.neg(v)));
                        }
                    }
                }
                a.additive_closure(&diffs)
            };
            let lambda_orbits = a.lambda_orbits().orbits;
            let theta_orbits = a.theta_orbits().orbits;
            let a2 = a.a_squared();
            let a_prime = a.a_prime();
            if span_of(&lambda_orbits) != a2 {
                witnesses.push(format!(
                    "n={n} #{index}: A² differs from the span of λ-orbit differences"
                ));
            }
            if span_of(&theta_orbits) != a_prime {
                witnesses.push(format!(
                    "n={n} #{index}: A′ differs from the span of θ-orbit differences"
                ));
            }
            for orbit in &lambda_orbits {
                if orbit.len() >= 2 && a2.len() < orbit.len() {
                    witnesses.push(format!(
                        "n={n} #{index}: |A²| = {} below λ-orbit size {}",
                        a2.len(),
                        orbit.len()
                    ));
                }
            }
            for orbit in &theta_orbits {
                if orbit.len() >= 2 && a_prime.len() < orbit.len() {
                    witnesses.push(format!(
                        "n={n} #{index}: |A′| = {} below θ-orbit size {}",
                        a_prime.len(),
                        orbit.len()
                    ));
                }
            }
        }
    }
    assert!(witnesses.is_empty(), "\n{}", witnesses.join("\n"));
}

#[test]
fn criterion_10_yang_baxter() {
    assert_suite("ybe", Duration::from_secs(30));
}

#[test]
fn criterion_11_z12_worked_example() {
    let a = named_example("z12_cyclic").unwrap();

    let fix = a.fix();
    assert_eq!(fix, vec![0, 2, 4, 6, 8, 10], "Fix is the even powers");
    let lambda = OrbitProfile::of(&a.lambda_orbits());
    assert_eq!(lambda.count(6), 1, "ℓ(6) = 1");
    assert_eq!(lambda.trivial_count, 6);

    let classes = a.conj_orbits();
    let sizes: Vec<usize> = classes.orbits.iter().map(Vec::len).collect();
    assert_eq!(sizes, vec![1, 1, 2, 2, 3, 3], "conjugacy class sizes");
    assert_eq!(
        classes.orbits,
        vec![
            vec![0],
            vec![6],
            vec![2, 10],
            vec![4, 8],
            vec![1, 5, 9],
            vec![3, 7, 11],
        ]
    );

    let theta_sizes: Vec<usize> = a.theta_orbits().orbits.iter().map(Vec::len).collect();
    assert_eq!(theta_sizes, vec![1, 1, 2, 2, 6], "θ-orbit sizes");

    // Γ(A,+): the two size-2 rotation classes joined, the two size-3
    // classes joined, no cross edges.
    let gamma = gamma_graph(&a.add);
    let gamma_sizes: Vec<usize> = gamma.vertices.iter().map(|v| v.size).collect();
    assert_eq!(gamma_sizes, vec![2, 2, 3, 3]);
    assert_eq!(gamma.edges, vec![(0, 1), (2, 3)]);

    // Θ(A) is a triangle.
    let theta = theta_graph(&a);
    assert_eq!(theta.vertex_count(), 3);
    assert_eq!(theta.edges, vec![(0, 1), (0, 2), (1, 2)]);

    // The homomorphic image of Γ inside Θ: both size-3 classes collapse into
    // the size-6 θ-orbit, so only the edge between the size-2 θ-orbits
    // survives, and the image is not induced (both edges into the size-6
    // vertex are missing).
    let image = gamma_hom_image_check(&a).unwrap();
    assert_eq!(image.vertex_map, vec![0, 1, 2, 2]);
    assert_eq!(image.image_vertices, vec![0, 1, 2]);
    assert_eq!(image.image_edges, vec![(0, 1)]);
    assert!(!image.induced);
}

#[test]
fn criterion_12_isoclinism() {
    let start = Instant::now();
    assert_suite("isoclinism", Duration::from_secs(60));

    // The scaling ratio between the isoclinic order-4 and order-8 braces.
    let a = named_example("z4_radical").unwrap();
    let b = named_example("z8_5pow").unwrap();
    let la = OrbitProfile::of(&a.lambda_orbits());
    let lb = OrbitProfile::of(&b.lambda_orbits());
    assert_eq!(b.n / a.n, 2);
    assert_eq!(la.count(2), 1);
    assert_eq!(lb.count(2), 2, "ℓ scales by the size ratio 2");

    assert!(start.elapsed() < Duration::from_secs(60));
}
