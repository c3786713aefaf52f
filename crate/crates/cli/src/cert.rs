//! JSON certificates. Ids follow the input file: 1-based nodes, skew arcs as
//! signed declaring-line numbers, bidirected and matching edges 1-based.

use serde::{Deserialize, Serialize};
use skewcycle::decomposition::{Split, StrongNode, StrongPart, WeakNode};
use skewcycle::{
    Barrier, Bud, Certificate, SkewGraph, StrongAcyclicPartition, StrongDecomposition,
    StrongSeparator, Violation, Walk, WalkKind, WeakDecomposition, WeakSeparator,
};

use crate::format::{skew_arc_from_file, skew_arc_to_file, skew_node_from_file, skew_node_to_file};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum CertFile {
    /// Over skew arcs for `.ssg` inputs, over edges for `.bdg` inputs.
    RegularCircuit {
        nodes: Vec<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        arcs: Option<Vec<i64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        edges: Option<Vec<usize>>,
    },
    StrongAcyclic {
        #[serde(default, skip_serializing_if = "is_false")]
        preprocessed: bool,
        #[serde(rename = "Z")]
        z: Vec<usize>,
    },
    WeakSeparator {
        #[serde(default, skip_serializing_if = "is_false")]
        preprocessed: bool,
        #[serde(rename = "A")]
        a: Vec<usize>,
        #[serde(rename = "B")]
        b: Vec<usize>,
        #[serde(rename = "Z")]
        z: Vec<usize>,
        crossing_pair: [i64; 2],
    },
    Barrier {
        #[serde(default, skip_serializing_if = "is_false")]
        preprocessed: bool,
        #[serde(rename = "S")]
        s: Vec<usize>,
        #[serde(rename = "M")]
        m: Vec<usize>,
        buds: Vec<BudFile>,
    },
    WeakDecomposition {
        #[serde(default, skip_serializing_if = "is_false")]
        preprocessed: bool,
        tree: WeakTree,
    },
    StrongSeparator {
        #[serde(default, skip_serializing_if = "is_false")]
        preprocessed: bool,
        #[serde(rename = "A")]
        a: Vec<usize>,
        #[serde(rename = "B")]
        b: Vec<usize>,
        crossing_pair: [i64; 2],
        entries: [usize; 2],
    },
    StrongDecomposition {
        #[serde(default, skip_serializing_if = "is_false")]
        preprocessed: bool,
        tree: StrongTree,
    },
    AlternatingCircuit {
        nodes: Vec<usize>,
        edges: Vec<usize>,
    },
}

fn is_false(b: &bool) -> bool {
    !b
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BudFile {
    pub members: Vec<usize>,
    pub base_arc: i64,
}

/// A leaf has no crossing pair and no children.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeakTree {
    #[serde(rename = "Z")]
    pub z: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub crossing_pair: Option<[i64; 2]>,
    #[serde(default)]
    pub children: Vec<WeakTree>,
}

/// Children are `X1, Y1, X2, Y2, ...`, one pair per entry of `parts`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StrongTree {
    #[serde(rename = "Z")]
    pub z: Vec<usize>,
    #[serde(default)]
    pub parts: Vec<StrongPartFile>,
    #[serde(default)]
    pub children: Vec<StrongTree>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StrongPartFile {
    pub entries: [usize; 2],
    pub crossing_pair: [i64; 2],
}

impl CertFile {
    pub fn kind(&self) -> &'static str {
        match self {
            CertFile::RegularCircuit { .. } => "regular-circuit",
            CertFile::StrongAcyclic { .. } => "strong-acyclic",
            CertFile::WeakSeparator { .. } => "weak-separator",
            CertFile::Barrier { .. } => "barrier",
            CertFile::WeakDecomposition { .. } => "weak-decomposition",
            CertFile::StrongSeparator { .. } => "strong-separator",
            CertFile::StrongDecomposition { .. } => "strong-decomposition",
            CertFile::AlternatingCircuit { .. } => "alternating-circuit",
        }
    }

    /// Whether the certificate is about the preprocessed image of the input.
    pub fn preprocessed(&self) -> bool {
        match self {
            CertFile::StrongAcyclic { preprocessed, .. }
            | CertFile::WeakSeparator { preprocessed, .. }
            | CertFile::Barrier { preprocessed, .. }
            | CertFile::WeakDecomposition { preprocessed, .. }
            | CertFile::StrongSeparator { preprocessed, .. }
            | CertFile::StrongDecomposition { preprocessed, .. } => *preprocessed,
            CertFile::RegularCircuit { .. } | CertFile::AlternatingCircuit { .. } => false,
        }
    }

    pub fn set_preprocessed(mut self, value: bool) -> Self {
        match &mut self {
            CertFile::StrongAcyclic { preprocessed, .. }
            | CertFile::WeakSeparator { preprocessed, .. }
            | CertFile::Barrier { preprocessed, .. }
            | CertFile::WeakDecomposition { preprocessed, .. }
            | CertFile::StrongSeparator { preprocessed, .. }
            | CertFile::StrongDecomposition { preprocessed, .. } => *preprocessed = value,
            CertFile::RegularCircuit { .. } | CertFile::AlternatingCircuit { .. } => {}
        }
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificates serialize");
        s.push('\n');
        s
    }

    /// Parses without a nesting limit: decomposition trees can be deep.
    pub fn from_json(text: &str) -> Result<CertFile, String> {
        let mut de = serde_json::Deserializer::from_str(text);
        de.disable_recursion_limit();
        let c = CertFile::deserialize(&mut de).map_err(|e| e.to_string())?;
        de.end().map_err(|e| e.to_string())?;
        Ok(c)
    }
}

/// Maps internal skew ids to file ids.
pub struct SkewIds {
    pairs: usize,
    arc_pairs: usize,
}

impl SkewIds {
    pub fn of(g: &SkewGraph) -> Self {
        SkewIds {
            pairs: g.pair_count(),
            arc_pairs: g.arc_pair_count(),
        }
    }

    fn node(&self, x: usize) -> usize {
        skew_node_to_file(x, self.pairs)
    }

    fn set(&self, xs: &[usize]) -> Vec<usize> {
        let mut v: Vec<usize> = xs.iter().map(|&x| self.node(x)).collect();
        v.sort_unstable();
        v
    }

    fn pair(&self, c: [usize; 2]) -> [i64; 2] {
        c.map(skew_arc_to_file)
    }

    fn node_in(&self, v: usize) -> Result<usize, Violation> {
        skew_node_from_file(v, self.pairs).ok_or_else(|| {
            violation(
                "node range",
                format!("node {v} outside 1..={}", 2 * self.pairs),
            )
        })
    }

    fn set_in(&self, vs: &[usize]) -> Result<Vec<usize>, Violation> {
        let mut v = vs
            .iter()
            .map(|&x| self.node_in(x))
            .collect::<Result<Vec<_>, _>>()?;
        v.sort_unstable();
        Ok(v)
    }

    fn arc_in(&self, j: i64) -> Result<usize, Violation> {
        skew_arc_from_file(j, self.arc_pairs).ok_or_else(|| {
            violation(
                "arc range",
                format!("arc {j} outside ±1..={}", self.arc_pairs),
            )
        })
    }

    fn pair_in(&self, c: [i64; 2]) -> Result<[usize; 2], Violation> {
        Ok([self.arc_in(c[0])?, self.arc_in(c[1])?])
    }
}

fn violation(clause: &str, detail: impl Into<String>) -> Violation {
    Violation {
        clause: clause.into(),
        detail: detail.into(),
    }
}

pub fn regular_circuit(ids: &SkewIds, w: &Walk) -> CertFile {
    CertFile::RegularCircuit {
        nodes: w.nodes.iter().map(|&x| ids.node(x)).collect(),
        arcs: Some(w.arcs.iter().map(|&a| skew_arc_to_file(a)).collect()),
        edges: None,
    }
}

/// A cycle of a bidirected graph, or an alternating circuit.
pub fn edge_walk(w: &Walk) -> (Vec<usize>, Vec<usize>) {
    (
        w.nodes.iter().map(|&x| x + 1).collect(),
        w.arcs.iter().map(|&e| e + 1).collect(),
    )
}

pub fn edge_walk_in(nodes: &[usize], edges: &[usize]) -> Walk {
    // Id 0 wraps to usize::MAX and fails the walk check downstream.
    Walk {
        nodes: nodes.iter().map(|&x| x.wrapping_sub(1)).collect(),
        arcs: edges.iter().map(|&e| e.wrapping_sub(1)).collect(),
        kind: WalkKind::Cycle,
    }
}

pub fn from_certificate(ids: &SkewIds, c: &Certificate) -> CertFile {
    match c {
        Certificate::RegularCircuit(w) => regular_circuit(ids, w),
        Certificate::StrongAcyclic(p) => CertFile::StrongAcyclic {
            preprocessed: false,
            z: ids.set(&p.z),
        },
        Certificate::WeakSeparator(s) => CertFile::WeakSeparator {
            preprocessed: false,
            a: ids.set(&s.a),
            b: ids.set(&s.b),
            z: ids.set(&s.z),
            crossing_pair: ids.pair(s.crossing),
        },
        Certificate::Barrier(b) => CertFile::Barrier {
            preprocessed: false,
            s: ids.set(&b.s),
            m: ids.set(&b.m),
            buds: b
                .buds
                .iter()
                .map(|bud| BudFile {
                    members: ids.set(&bud.members),
                    base_arc: skew_arc_to_file(bud.base_arc),
                })
                .collect(),
        },
        Certificate::WeakDecomposition(d) => CertFile::WeakDecomposition {
            preprocessed: false,
            tree: weak_tree(ids, d, d.root),
        },
        Certificate::StrongSeparator(s) => CertFile::StrongSeparator {
            preprocessed: false,
            a: ids.set(&s.a),
            b: ids.set(&s.b),
            crossing_pair: ids.pair(s.crossing),
            entries: [ids.node(s.entry_a), ids.node(s.entry_b)],
        },
        Certificate::StrongDecomposition(d) => CertFile::StrongDecomposition {
            preprocessed: false,
            tree: strong_tree(ids, d, d.root),
        },
    }
}

fn weak_tree(ids: &SkewIds, d: &WeakDecomposition, i: usize) -> WeakTree {
    let node = &d.nodes[i];
    WeakTree {
        z: ids.set(&node.z),
        crossing_pair: node.split.map(|s| ids.pair(s.crossing)),
        children: node
            .split
            .map(|s| s.children.iter().map(|&c| weak_tree(ids, d, c)).collect())
            .unwrap_or_default(),
    }
}

fn strong_tree(ids: &SkewIds, d: &StrongDecomposition, i: usize) -> StrongTree {
    let node = &d.nodes[i];
    StrongTree {
        z: ids.set(&node.z),
        parts: node
            .parts
            .iter()
            .map(|p| StrongPartFile {
                entries: p.entries.map(|x| ids.node(x)),
                crossing_pair: ids.pair(p.crossing),
            })
            .collect(),
        children: node
            .parts
            .iter()
            .flat_map(|p| p.children)
            .map(|c| strong_tree(ids, d, c))
            .collect(),
    }
}

/// The library certificate named by a skew-level certificate file. Ids out
/// of range are reported as violations.
pub fn to_certificate(ids: &SkewIds, c: &CertFile) -> Result<Certificate, Violation> {
    Ok(match c {
        CertFile::RegularCircuit { nodes, arcs, .. } => {
            let arcs = arcs
                .as_ref()
                .ok_or_else(|| violation("regular circuit", "no `arcs` for a skew input"))?;
            Certificate::RegularCircuit(Walk {
                nodes: nodes
                    .iter()
                    .map(|&v| ids.node_in(v))
                    .collect::<Result<_, _>>()?,
                arcs: arcs
                    .iter()
                    .map(|&j| ids.arc_in(j))
                    .collect::<Result<_, _>>()?,
                kind: WalkKind::Cycle,
            })
        }
        CertFile::StrongAcyclic { z, .. } => {
            Certificate::StrongAcyclic(StrongAcyclicPartition { z: ids.set_in(z)? })
        }
        CertFile::WeakSeparator {
            a,
            b,
            z,
            crossing_pair,
            ..
        } => Certificate::WeakSeparator(WeakSeparator {
            a: ids.set_in(a)?,
            b: ids.set_in(b)?,
            z: ids.set_in(z)?,
            crossing: ids.pair_in(*crossing_pair)?,
        }),
        CertFile::Barrier { s, m, buds, .. } => Certificate::Barrier(Barrier {
            s: ids.set_in(s)?,
            m: ids.set_in(m)?,
            buds: buds
                .iter()
                .map(|b| {
                    Ok(Bud {
                        members: ids.set_in(&b.members)?,
                        base_arc: ids.arc_in(b.base_arc)?,
                    })
                })
                .collect::<Result<_, Violation>>()?,
        }),
        CertFile::WeakDecomposition { tree, .. } => {
            let mut nodes = Vec::new();
            weak_nodes(ids, tree, &mut nodes)?;
            Certificate::WeakDecomposition(WeakDecomposition { nodes, root: 0 })
        }
        CertFile::StrongSeparator {
            a,
            b,
            crossing_pair,
            entries,
            ..
        } => Certificate::StrongSeparator(StrongSeparator {
            a: ids.set_in(a)?,
            b: ids.set_in(b)?,
            crossing: ids.pair_in(*crossing_pair)?,
            entry_a: ids.node_in(entries[0])?,
            entry_b: ids.node_in(entries[1])?,
        }),
        CertFile::StrongDecomposition { tree, .. } => {
            let mut nodes = Vec::new();
            strong_nodes(ids, tree, &mut nodes)?;
            Certificate::StrongDecomposition(StrongDecomposition { nodes, root: 0 })
        }
        CertFile::AlternatingCircuit { .. } => {
            return Err(violation(
                "type",
                "alternating circuits need a matching input",
            ))
        }
    })
}

/// Appends the subtree in preorder and returns its index.
fn weak_nodes(ids: &SkewIds, t: &WeakTree, out: &mut Vec<WeakNode>) -> Result<usize, Violation> {
    let i = out.len();
    out.push(WeakNode {
        z: ids.set_in(&t.z)?,
        split: None,
    });
    match (&t.crossing_pair, t.children.as_slice()) {
        (None, []) => {}
        (Some(c), [x, y]) => {
            let crossing = ids.pair_in(*c)?;
            let left = weak_nodes(ids, x, out)?;
            let right = weak_nodes(ids, y, out)?;
            out[i].split = Some(Split {
                crossing,
                children: [left, right],
            });
        }
        _ => {
            return Err(violation(
                "tree",
                "a node needs either no children or a crossing pair and two children",
            ))
        }
    }
    Ok(i)
}

fn strong_nodes(
    ids: &SkewIds,
    t: &StrongTree,
    out: &mut Vec<StrongNode>,
) -> Result<usize, Violation> {
    if t.children.len() != 2 * t.parts.len() {
        return Err(violation("tree", "a node needs two children per part"));
    }
    let i = out.len();
    out.push(StrongNode {
        z: ids.set_in(&t.z)?,
        parts: Vec::new(),
    });
    for (p, kids) in t.parts.iter().zip(t.children.chunks(2)) {
        let entries = [ids.node_in(p.entries[0])?, ids.node_in(p.entries[1])?];
        let crossing = ids.pair_in(p.crossing_pair)?;
        let x = strong_nodes(ids, &kids[0], out)?;
        let y = strong_nodes(ids, &kids[1], out)?;
        out[i].parts.push(StrongPart {
            entries,
            crossing,
            children: [x, y],
        });
    }
    Ok(i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use skewcycle::oracle::fixtures::{f1, f3};
    use skewcycle::{decompose, decompose_strong, find_strong_separator, verify_certificate};

    fn round_trip(g: &SkewGraph, c: Certificate) {
        let ids = SkewIds::of(g);
        let file = from_certificate(&ids, &c);
        let back = CertFile::from_json(&file.to_json()).unwrap();
        assert_eq!(back, file);
        let c2 = to_certificate(&ids, &back).unwrap();
        verify_certificate(g, &c2).unwrap();
    }

    #[test]
    fn f1_certificates_round_trip() {
        let g = f1();
        round_trip(
            &g,
            Certificate::WeakDecomposition(decompose(&g).unwrap().tree().unwrap()),
        );
        round_trip(
            &g,
            Certificate::StrongDecomposition(decompose_strong(&g).unwrap().tree().unwrap()),
        );
        round_trip(
            &g,
            Certificate::StrongSeparator(find_strong_separator(&g).unwrap()),
        );
    }

    #[test]
    fn f3_circuit_in_file_ids() {
        let g = f3();
        let skewcycle::Decomposed::Circuit(w) = decompose(&g).unwrap() else {
            panic!("F3 has a regular circuit");
        };
        let file = regular_circuit(&SkewIds::of(&g), &w);
        let CertFile::RegularCircuit { nodes, .. } = &file else {
            unreachable!()
        };
        // u = 1 and w = 2 in file ids.
        let mut inner = nodes[1..].to_vec();
        inner.sort_unstable();
        assert_eq!(inner, vec![1, 2]);
        round_trip(&g, Certificate::RegularCircuit(w));
    }

    #[test]
    fn out_of_range_ids_are_violations() {
        let g = f1();
        let ids = SkewIds::of(&g);
        let bad = CertFile::StrongAcyclic {
            preprocessed: false,
            z: vec![9],
        };
        assert_eq!(to_certificate(&ids, &bad).unwrap_err().clause, "node range");
        let bad_tree = CertFile::WeakDecomposition {
            preprocessed: false,
            tree: WeakTree {
                z: vec![],
                crossing_pair: Some([5, -5]),
                children: vec![],
            },
        };
        assert_eq!(to_certificate(&ids, &bad_tree).unwrap_err().clause, "tree");
    }

    #[test]
    fn json_shape() {
        let file = CertFile::WeakDecomposition {
            preprocessed: false,
            tree: WeakTree {
                z: vec![],
                crossing_pair: Some([5, -5]),
                children: vec![
                    WeakTree {
                        z: vec![1],
                        crossing_pair: None,
                        children: vec![],
                    },
                    WeakTree {
                        z: vec![3],
                        crossing_pair: None,
                        children: vec![],
                    },
                ],
            },
        };
        let v: serde_json::Value = serde_json::from_str(&file.to_json()).unwrap();
        assert_eq!(v["type"], "weak-decomposition");
        assert_eq!(v["tree"]["crossing_pair"], serde_json::json!([5, -5]));
        assert_eq!(v["tree"]["children"][1]["Z"], serde_json::json!([3]));
        assert!(CertFile::from_json(r#"{"type":"strong-acyclic","Z":[],"extra":1}"#).is_err());
    }
}
