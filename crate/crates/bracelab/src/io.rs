//! JSON, DOT and plain-text serialization for groups, braces, graphs,
//! solutions and census reports.
//!
//! All emitters are deterministic: field order is fixed by the document
//! structs, vertices and edges keep the order of the underlying graph, and no
//! timing or environment data is embedded.

use serde::{Deserialize, Serialize};

use crate::brace::{validate_brace, SkewBrace};
use crate::census::CensusReport;
use crate::error::{Error, Result};
use crate::graph::CdGraph;
use crate::group::{validate_group, CayleyGroup};
use crate::ybe::SolutionMap;

/// Wire form of a group: row-major operation table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDoc {
    pub n: usize,
    pub op: Vec<Vec<usize>>,
}

/// Wire form of a skew brace: both operation tables plus an optional name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraceDoc {
    pub n: usize,
    pub add: Vec<Vec<usize>>,
    pub circ: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

/// Wire form of one common-divisor-graph vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexDoc {
    pub id: usize,
    pub size: usize,
}

/// Wire form of a common-divisor graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDoc {
    pub vertices: Vec<VertexDoc>,
    pub edges: Vec<(usize, usize)>,
}

/// Wire form of the solution r(a, b) = (λ_a(b), ρ_b(a)).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionDoc {
    pub n: usize,
    pub lambda: Vec<Vec<usize>>,
    pub rho: Vec<Vec<usize>>,
}

/// One census entry in a report document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusBraceDoc {
    pub index: usize,
    pub brace: BraceDoc,
    pub additive_group: String,
    pub multiplicative_group: Option<String>,
    pub fix_size: usize,
    pub soc_size: usize,
    pub ann_size: usize,
    pub a_squared_size: usize,
    pub a_prime_size: usize,
    pub left_nilpotency_class: Option<usize>,
    pub abelian_type: bool,
    pub nilpotent_type: bool,
    pub trivial: bool,
    pub two_sided: bool,
    pub bi_skew: bool,
    pub lambda_graph: GraphDoc,
    pub theta_graph: GraphDoc,
    pub family_tags: Vec<String>,
}

/// Wire form of a census report, including per-brace graph summaries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReportDoc {
    pub n: usize,
    pub total: usize,
    pub groups: Vec<GroupCountDoc>,
    pub braces: Vec<CensusBraceDoc>,
}

/// Brace count for one additive group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupCountDoc {
    pub group: String,
    pub count: usize,
}

fn parse_doc<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("JSON: {e}")))
}

fn check_table(n: usize, table: &[Vec<usize>], what: &str) -> Result<()> {
    if table.len() != n {
        return Err(Error::InvalidInput(format!(
            "{what} has {} rows but n = {n}",
            table.len()
        )));
    }
    for (i, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(Error::InvalidInput(format!(
                "{what} row {i} has length {} but n = {n}",
                row.len()
            )));
        }
        if let Some(&bad) = row.iter().find(|&&x| x >= n) {
            return Err(Error::InvalidInput(format!(
                "{what} row {i} contains {bad} >= n = {n}"
            )));
        }
    }
    Ok(())
}

pub fn group_to_json(g: &CayleyGroup) -> String {
    let doc = GroupDoc {
        n: g.n,
        op: g.op.clone(),
    };
    serde_json::to_string(&doc).expect("group serialization cannot fail")
}

/// Parse and validate a group document.  The identity of the stored table is
/// normalized to element 0.
pub fn group_from_json(text: &str) -> Result<CayleyGroup> {
    let doc: GroupDoc = parse_doc(text)?;
    check_table(doc.n, &doc.op, "op")?;
    validate_group(&doc.op)
}

pub fn brace_to_json(a: &SkewBrace, name: Option<&str>) -> String {
    let doc = BraceDoc {
        n: a.n,
        add: a.add.op.clone(),
        circ: a.circ.op.clone(),
        name: name.map(str::to_string),
    };
    serde_json::to_string(&doc).expect("brace serialization cannot fail")
}

/// Parse and validate a brace document, returning the brace and its optional
/// stored name.  The shared identity is normalized to element 0.
pub fn brace_from_json(text: &str) -> Result<(SkewBrace, Option<String>)> {
    let doc: BraceDoc = parse_doc(text)?;
    check_table(doc.n, &doc.add, "add")?;
    check_table(doc.n, &doc.circ, "circ")?;
    let brace = validate_brace(&doc.add, &doc.circ)?;
    Ok((brace, doc.name))
}

pub fn graph_doc(g: &CdGraph) -> GraphDoc {
    GraphDoc {
        vertices: g
            .vertices
            .iter()
            .map(|v| VertexDoc {
                id: v.orbit_id,
                size: v.size,
            })
            .collect(),
        edges: g.edges.clone(),
    }
}

pub fn graph_to_json(g: &CdGraph) -> String {
    serde_json::to_string(&graph_doc(g)).expect("graph serialization cannot fail")
}

/// Parse a graph document, checking that edges reference existing vertices.
pub fn graph_from_json(text: &str) -> Result<GraphDoc> {
    let doc: GraphDoc = parse_doc(text)?;
    let nv = doc.vertices.len();
    for &(i, j) in &doc.edges {
        if i >= nv || j >= nv {
            return Err(Error::InvalidInput(format!(
                "edge ({i}, {j}) references a vertex outside 0..{nv}"
            )));
        }
        if i == j {
            return Err(Error::InvalidInput(format!("loop edge at vertex {i}")));
        }
    }
    Ok(doc)
}

pub fn solution_to_json(s: &SolutionMap) -> String {
    let doc = SolutionDoc {
        n: s.n,
        lambda: s.lambda.clone(),
        rho: s.rho.clone(),
    };
    serde_json::to_string(&doc).expect("solution serialization cannot fail")
}

pub fn solution_from_json(text: &str) -> Result<SolutionMap> {
    let doc: SolutionDoc = parse_doc(text)?;
    check_table(doc.n, &doc.lambda, "lambda")?;
    check_table(doc.n, &doc.rho, "rho")?;
    Ok(SolutionMap {
        n: doc.n,
        lambda: doc.lambda,
        rho: doc.rho,
    })
}

fn dot_id(name: &str) -> String {
    let mut id: String = name
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect();
    if id.is_empty() || id.starts_with(|c: char| c.is_ascii_digit()) {
        id.insert(0, '_');
    }
    id
}

/// Render a graph in DOT format.  Vertices are labeled `O<id>(<size>)` where
/// `<id>` is the orbit's index in the originating partition.
pub fn graph_to_dot(g: &CdGraph, name: &str) -> String {
    let mut out = format!("graph {} {{\n", dot_id(name));
    for (i, v) in g.vertices.iter().enumerate() {
        out.push_str(&format!(
            "  v{i} [label=\"O{}({})\"];\n",
            v.orbit_id, v.size
        ));
    }
    for &(i, j) in &g.edges {
        out.push_str(&format!("  v{i} -- v{j};\n"));
    }
    out.push_str("}\n");
    out
}

/// Render a graph as plain text.  Graphs on at most three vertices are drawn
/// pictorially (components joined by single spaces); larger graphs get an
/// adjacency list with one `O<id>(<size>): …` line per vertex.
pub fn graph_to_ascii(g: &CdGraph) -> String {
    if g.vertices.is_empty() {
        return "(no vertices)".to_string();
    }
    if g.vertices.len() <= 3 {
        let parts: Vec<&str> = g
            .components
            .iter()
            .map(|comp| match comp.len() {
                1 => "•",
                2 => "•—•",
                _ => {
                    let in_comp = |v: usize| comp.contains(&v);
                    let e = g
                        .edges
                        .iter()
                        .filter(|&&(i, j)| in_comp(i) && in_comp(j))
                        .count();
                    if e == 3 {
                        "•—•—• (triangle)"
                    } else {
                        "•—•—•"
                    }
                }
            })
            .collect();
        return parts.join(" ");
    }
    let mut lines = Vec::with_capacity(g.vertices.len());
    for (i, v) in g.vertices.iter().enumerate() {
        let mut line = format!("O{}({}):", v.orbit_id, v.size);
        for &(a, b) in &g.edges {
            let other = if a == i {
                b
            } else if b == i {
                a
            } else {
                continue;
            };
            line.push_str(&format!(" O{}", g.vertices[other].orbit_id));
        }
        lines.push(line);
    }
    lines.join("\n")
}

pub fn census_report_doc(report: &CensusReport) -> CensusReportDoc {
    let braces = report
        .entries
        .iter()
        .enumerate()
        .map(|(index, entry)| {
            let inv = &entry.summary.invariants;
            CensusBraceDoc {
                index,
                brace: BraceDoc {
                    n: entry.brace.n,
                    add: entry.brace.add.op.clone(),
                    circ: entry.brace.circ.op.clone(),
                    name: None,
                },
                additive_group: entry.summary.additive_group.clone(),
                multiplicative_group: entry.summary.multiplicative_group.clone(),
                fix_size: inv.fix.len(),
                soc_size: inv.soc.len(),
                ann_size: inv.ann.len(),
                a_squared_size: inv.a_squared.len(),
                a_prime_size: inv.a_prime.len(),
                left_nilpotency_class: inv.left_nilpotency_class,
                abelian_type: inv.flags.abelian_type,
                nilpotent_type: inv.flags.nilpotent_type,
                trivial: inv.flags.trivial,
                two_sided: inv.flags.two_sided,
                bi_skew: inv.flags.bi_skew,
                lambda_graph: graph_doc(&entry.summary.lambda),
                theta_graph: graph_doc(&entry.summary.theta),
                family_tags: entry.summary.family_tags.clone(),
            }
        })
        .collect();
    CensusReportDoc {
        n: report.n,
        total: report.total(),
        groups: report
            .counts_by_group()
            .into_iter()
            .map(|(group, count)| GroupCountDoc { group, count })
            .collect(),
        braces,
    }
}

pub fn census_report_to_json(report: &CensusReport) -> String {
    serde_json::to_string(&census_report_doc(report))
        .expect("census report serialization cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::OrbitPartition;
    use crate::brace::trivial_brace;
    use crate::budget::Budget;
    use crate::catalog::{build, named_example, parse_spec};
    use crate::census::{enumerate_braces, CensusOptions};
    use crate::graph::{common_divisor_graph, lambda_graph, theta_graph};
    use crate::group::{cyclic, dihedral};
    use crate::ybe::solution_of;

    #[test]
    fn group_json_round_trips_and_normalizes_the_identity() {
        let g = dihedral(3);
        let back = group_from_json(&group_to_json(&g)).unwrap();
        assert_eq!(back.op, g.op);

        let shifted = r#"{"n":2,"op":[[1,0],[0,1]]}"#;
        let z2 = group_from_json(shifted).unwrap();
        assert_eq!(z2.op, vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn malformed_group_documents_are_rejected() {
        assert!(group_from_json("not json").is_err());
        assert!(group_from_json(r#"{"n":3,"op":[[0,1],[1,0]]}"#).is_err());
        assert!(group_from_json(r#"{"n":2,"op":[[0,7],[1,0]]}"#).is_err());
        assert!(group_from_json(r#"{"n":2,"op":[[0,0],[1,1]]}"#).is_err());
    }

    #[test]
    fn brace_json_round_trips_with_and_without_a_name() {
        let a = named_example("z4_radical").unwrap();
        let text = brace_to_json(&a, Some("example:z4_radical"));
        assert!(text.contains("\"n\":4"));
        let (back, name) = brace_from_json(&text).unwrap();
        assert_eq!(name.as_deref(), Some("example:z4_radical"));
        assert_eq!(back.add.op, a.add.op);
        assert_eq!(back.circ.op, a.circ.op);

        let bare = r#"{"n":2,"add":[[0,1],[1,0]],"circ":[[0,1],[1,0]]}"#;
        let (b, none) = brace_from_json(bare).unwrap();
        assert_eq!(none, None);
        assert!(b.is_trivial());
        let unnamed = brace_to_json(&b, None);
        assert!(!unnamed.contains("name"));
    }

    #[test]
    fn incompatible_tables_fail_to_parse_as_a_brace() {
        // Both tables are groups of order 4 (the circle table is Z/4
        // relabeled by the transposition (1 2)), but the compatibility law
        // fails: 2∘(1+1) = 1 while 2∘1 − 2 + 2∘1 = 0.
        let text = r#"{"n":4,
            "add":[[0,1,2,3],[1,2,3,0],[2,3,0,1],[3,0,1,2]],
            "circ":[[0,1,2,3],[1,0,3,2],[2,3,1,0],[3,2,0,1]]}"#;
        assert!(brace_from_json(text).is_err());
    }

    #[test]
    fn graph_json_uses_orbit_ids_and_index_edges() {
        let a = named_example("z9_radical").unwrap();
        let text = graph_to_json(&lambda_graph(&a));
        assert_eq!(
            text,
            r#"{"vertices":[{"id":3,"size":3},{"id":4,"size":3}],"edges":[[0,1]]}"#
        );
        let doc = graph_from_json(&text).unwrap();
        assert_eq!(doc.vertices.len(), 2);
        assert_eq!(doc.edges, vec![(0, 1)]);
        assert!(graph_from_json(r#"{"vertices":[],"edges":[[0,1]]}"#).is_err());
    }

    #[test]
    fn dot_output_for_the_z12_theta_graph_is_a_triangle() {
        let a = named_example("z12_cyclic").unwrap();
        let g = theta_graph(&a);
        let dot = graph_to_dot(&g, "theta");
        let expected = "graph theta {\n  v0 [label=\"O2(2)\"];\n  v1 [label=\"O3(2)\"];\n  v2 [label=\"O4(6)\"];\n  v0 -- v1;\n  v0 -- v2;\n  v1 -- v2;\n}\n";
        assert_eq!(dot, expected);
        assert_eq!(dot.matches("label=").count(), 3);
        assert_eq!(dot.matches(" -- ").count(), 3);
    }

    #[test]
    fn dot_graph_names_are_sanitized_to_identifiers() {
        let a = named_example("klein").unwrap();
        let dot = graph_to_dot(&lambda_graph(&a), "12 bad-name");
        assert!(dot.starts_with("graph _12_bad_name {"));
    }

    #[test]
    fn ascii_rendering_matches_the_documented_shapes() {
        let empty = lambda_graph(&trivial_brace(&cyclic(4)));
        assert_eq!(graph_to_ascii(&empty), "(no vertices)");

        let optriv = named_example("optriv_S3").unwrap();
        assert_eq!(graph_to_ascii(&lambda_graph(&optriv)), "• •");

        let z9 = named_example("z9_radical").unwrap();
        assert_eq!(graph_to_ascii(&lambda_graph(&z9)), "•—•");

        let z12 = named_example("z12_cyclic").unwrap();
        assert_eq!(graph_to_ascii(&theta_graph(&z12)), "•—•—• (triangle)");
    }

    #[test]
    fn ascii_rendering_uses_an_adjacency_list_above_three_vertices() {
        let partition = OrbitPartition {
            orbits: vec![vec![0, 1], vec![2, 3], vec![4, 5, 6], vec![7, 8, 9, 10]],
        };
        let g = common_divisor_graph(&partition);
        assert_eq!(
            graph_to_ascii(&g),
            "O0(2): O1 O3\nO1(2): O0 O3\nO2(3):\nO3(4): O0 O1"
        );
    }

    #[test]
    fn solution_json_round_trips_and_validates_ranges() {
        let s = solution_of(&named_example("z8_5pow").unwrap());
        let back = solution_from_json(&solution_to_json(&s)).unwrap();
        assert_eq!(back.lambda, s.lambda);
        assert_eq!(back.rho, s.rho);
        assert!(
            solution_from_json(r#"{"n":2,"lambda":[[0,1],[0,1]],"rho":[[0,3],[1,0]]}"#).is_err()
        );
    }

    #[test]
    fn every_catalog_spec_round_trips_through_brace_json() {
        let specs = [
            "triv:S3",
            "triv:Q8",
            "optriv:S3",
            "optriv:D8",
            "p2:1 p=2",
            "p2:2 p=2",
            "p2:3 p=2",
            "p2:4 p=2",
            "p2:3 p=3",
            "p2:4 p=3",
            "pq:T1 p=3 q=2",
            "pq:T2 p=3 q=2",
            "pq:C p=3 q=2",
            "pq:D p=3 q=2",
            "pq:E p=3 q=2",
            "pq:F p=3 q=2",
            "pq:C p=5 q=2",
            "pq:E p=7 q=3",
            "pq:E p=7 q=3 gamma=2",
            "pq:F p=7 q=3 mu=2",
            "onevertex:D2d d=3",
            "onevertex:D2d F=3x3",
            "onevertex:J i=1 d=3",
            "onevertex:J i=2 d=1",
            "onevertex:H i=1 d=3",
            "onevertex:H i=2 d=1",
            "onevertex:K8d d=1",
            "example:z12_cyclic",
            "example:z3z2_mixed",
            "example:z8_5pow",
            "example:z9_radical",
            "example:z4_radical",
            "example:klein",
            "example:z2z4_B2",
            "example:triv_S3",
            "example:optriv_S3",
        ];
        for text in specs {
            let spec = parse_spec(text).unwrap();
            let a = build(&spec).unwrap();
            let json = brace_to_json(&a, Some(&spec.to_string()));
            let (back, name) = brace_from_json(&json).unwrap();
            assert_eq!(back.add.op, a.add.op, "additive table drifted for {text}");
            assert_eq!(
                back.circ.op, a.circ.op,
                "multiplicative table drifted for {text}"
            );
            assert_eq!(name, Some(spec.to_string()));
        }
    }

    #[test]
    fn census_report_json_is_deterministic_and_complete() {
        let options = CensusOptions {
            budget: Budget::new(50_000_000),
            ..CensusOptions::default()
        };
        let report = enumerate_braces(6, &options).unwrap();
        let doc = census_report_doc(&report);
        assert_eq!(doc.n, 6);
        assert_eq!(doc.total, 6);
        assert_eq!(doc.braces.len(), 6);
        assert_eq!(
            doc.groups,
            vec![
                GroupCountDoc {
                    group: "Z6".to_string(),
                    count: 2
                },
                GroupCountDoc {
                    group: "S3".to_string(),
                    count: 4
                },
            ]
        );
        for entry in &doc.braces {
            assert!(entry.multiplicative_group.is_some());
            assert!(!entry.family_tags.is_empty());
        }
        let first = census_report_to_json(&report);
        let second = census_report_to_json(&enumerate_braces(6, &options).unwrap());
        assert_eq!(first, second);
    }
}
