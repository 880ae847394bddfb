//! Split files, and DOT / JSON / Newick exports.
//!
//! Split file grammar:
//!
//! ```text
//! # comment
//! elements: 1 2 3 4
//! 1 2          # the split {1,2}|{3,4}
//! S14: 4 1     # named; either part may be given
//! ```
//!
//! All exporters iterate in index order only, so output is byte-identical
//! across runs.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;
use thiserror::Error;

use crate::blocks::BlockDecomposition;
use crate::buneman::BunemanGraph;
use crate::splits::{default_split_name, GroundSet, Split, SplitSystem, Subset};
use crate::trees::{BlockCutTree, TreeNode, XTree};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unknown element {0:?}")]
    UnknownElement(String),
    #[error("split part must be a proper non-empty subset")]
    ImproperSplit,
    #[error("split duplicates the one on line {previous}")]
    DuplicateSplit { previous: usize },
}

/// A parse failure at a 1-based line number.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Error, Debug)]
pub enum LoadError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Parse(#[from] ParseError),
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError {
        line,
        kind: ParseErrorKind::Syntax(msg.into()),
    }
}

fn valid_token(t: &str) -> bool {
    !t.is_empty() && !t.contains([':', '#']) && !t.chars().any(char::is_whitespace)
}

/// Parses split-file text.
pub fn parse_split_file(text: &str) -> Result<SplitSystem, ParseError> {
    let mut ground: Option<GroundSet> = None;
    let mut raw: Vec<(String, Subset)> = Vec::new();
    let mut seen: HashMap<Split, usize> = HashMap::new();
    let mut seen_names: HashMap<String, usize> = HashMap::new();
    let mut last_line = 0;

    for (k, full) in text.lines().enumerate() {
        let line = k + 1;
        last_line = line;
        let body = full.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let Some(g) = &ground else {
            let rest = body
                .strip_prefix("elements:")
                .ok_or_else(|| syntax(line, "expected header `elements: <labels>`"))?;
            let labels: Vec<&str> = rest.split_whitespace().collect();
            if let Some(bad) = labels.iter().find(|t| !valid_token(t)) {
                return Err(syntax(line, format!("invalid element label {bad:?}")));
            }
            ground = Some(GroundSet::new(labels).map_err(|e| syntax(line, e.to_string()))?);
            continue;
        };

        let (name, members) = match body.split_once(':') {
            Some((name, members)) => {
                let name = name.trim();
                if !valid_token(name) {
                    return Err(syntax(line, format!("invalid split name {name:?}")));
                }
                (Some(name.to_string()), members)
            }
            None => (None, body),
        };
        let mut bits = g.empty_subset().bits().clone();
        for t in members.split_whitespace() {
            let x = g.index_of(t).ok_or_else(|| ParseError {
                line,
                kind: ParseErrorKind::UnknownElement(t.to_string()),
            })?;
            if bits.contains(x) {
                return Err(syntax(line, format!("element {t:?} listed twice")));
            }
            bits.insert(x);
        }
        let part = Subset::from_bits(bits);
        let split = Split::new(part.clone()).map_err(|_| ParseError {
            line,
            kind: ParseErrorKind::ImproperSplit,
        })?;
        if let Some(&previous) = seen.get(&split) {
            return Err(ParseError {
                line,
                kind: ParseErrorKind::DuplicateSplit { previous },
            });
        }
        seen.insert(split, line);
        let name = name.unwrap_or_else(|| default_split_name(g, &part));
        if let Some(&prev) = seen_names.get(&name) {
            return Err(syntax(
                line,
                format!("split name {name:?} already used on line {prev}"),
            ));
        }
        seen_names.insert(name.clone(), line);
        raw.push((name, part));
    }

    let ground = ground.ok_or_else(|| syntax(last_line.max(1), "missing `elements:` header"))?;
    if raw.is_empty() {
        return Err(syntax(last_line.max(1), "no splits"));
    }
    SplitSystem::with_names(ground, raw).map_err(|e| syntax(last_line, e.to_string()))
}

pub fn load_split_file(path: impl AsRef<Path>) -> Result<SplitSystem, LoadError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(parse_split_file(&text)?)
}

/// The part written for a split: the smaller one, `A` on ties.
fn written_part(split: &Split) -> &Subset {
    if split.part_b().len() < split.part_a().len() {
        split.part_b()
    } else {
        split.part_a()
    }
}

/// Canonical split-file text. Names are written only when they differ from
/// the default name of the written part.
pub fn format_split_file(system: &SplitSystem) -> String {
    let ground = system.ground();
    let mut out = format!("elements: {}\n", ground.labels().join(" "));
    for (i, split) in system.splits().iter().enumerate() {
        let part = written_part(split);
        let members = ground.names_of(part).join(" ");
        if system.name(i) == default_split_name(ground, part) {
            writeln!(out, "{members}").unwrap();
        } else {
            writeln!(out, "{}: {members}", system.name(i)).unwrap();
        }
    }
    out
}

pub fn save_split_file(system: &SplitSystem, path: impl AsRef<Path>) -> std::io::Result<()> {
    std::fs::write(path, format_split_file(system))
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn label_list(ground: &GroundSet, xs: &[usize]) -> String {
    xs.iter()
        .map(|&x| ground.label(x))
        .collect::<Vec<_>>()
        .join(",")
}

/// `B(Σ)` as an undirected DOT graph.
pub fn graph_to_dot(g: &BunemanGraph) -> String {
    let sys = g.system();
    let ground = sys.ground();
    let mut out = String::from("graph buneman {\n");
    for v in 0..g.vertex_count() {
        let labels = g.labels_at(v);
        if labels.is_empty() {
            writeln!(out, "  v{v} [label=\"v{v}\"];").unwrap();
        } else {
            let xs = dot_escape(&label_list(ground, labels));
            writeln!(out, "  v{v} [label=\"v{v}: {xs}\", labels=\"{xs}\"];").unwrap();
        }
    }
    for e in g.edges() {
        writeln!(
            out,
            "  v{} -- v{} [type={}, label=\"{}\"];",
            e.u,
            e.v,
            e.split,
            dot_escape(sys.name(e.split))
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

#[derive(Serialize)]
struct JsonVertex {
    id: usize,
    /// Bit `i` is `1` when split `i` maps to its `B` part.
    sides: String,
    labels: Vec<String>,
}

#[derive(Serialize)]
struct JsonEdge {
    u: usize,
    v: usize,
    #[serde(rename = "type")]
    split: usize,
}

#[derive(Serialize)]
struct JsonGraph {
    vertices: Vec<JsonVertex>,
    edges: Vec<JsonEdge>,
}

/// Adjacency JSON: `{"vertices":[{"id","sides","labels"}],"edges":[{"u","v","type"}]}`.
pub fn graph_to_json(g: &BunemanGraph) -> String {
    let ground = g.system().ground();
    let doc = JsonGraph {
        vertices: (0..g.vertex_count())
            .map(|v| JsonVertex {
                id: v,
                sides: g.vertex(v).sides().to_bit_string(),
                labels: g
                    .labels_at(v)
                    .iter()
                    .map(|&x| ground.label(x).to_string())
                    .collect(),
            })
            .collect(),
        edges: g
            .edges()
            .iter()
            .map(|e| JsonEdge {
                u: e.u,
                v: e.v,
                split: e.split,
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("plain data serializes")
}

/// `T(Σ)` as DOT: boxes `b<component>` for blocks, `v<index>` for vertices.
pub fn block_cut_tree_to_dot(
    g: &BunemanGraph,
    blocks: &BlockDecomposition,
    t: &BlockCutTree,
) -> String {
    let sys = g.system();
    let ground = sys.ground();
    let node_name = |k: usize| match t.nodes[k] {
        TreeNode::Block(c) => format!("b{c}"),
        TreeNode::Vertex(v) => format!("v{v}"),
    };
    let mut out = String::from("graph block_cut_tree {\n");
    for (k, node) in t.nodes.iter().enumerate() {
        match *node {
            TreeNode::Block(c) => {
                let b = blocks
                    .block(c)
                    .expect("tree blocks come from the decomposition");
                let names: Vec<&str> = b.splits.iter().map(|&s| sys.name(s)).collect();
                writeln!(
                    out,
                    "  b{c} [shape=box, label=\"{{{}}} |V|={}\"];",
                    dot_escape(&names.join(",")),
                    b.len()
                )
                .unwrap();
            }
            TreeNode::Vertex(v) => {
                let mut attrs = Vec::new();
                if t.labels[k].is_empty() {
                    attrs.push(format!("label=\"v{v}\""));
                } else {
                    attrs.push(format!(
                        "label=\"v{v}: {}\"",
                        dot_escape(&label_list(ground, &t.labels[k]))
                    ));
                }
                if t.cut[k] {
                    attrs.push("cut=true".to_string());
                }
                writeln!(out, "  v{v} [{}];", attrs.join(", ")).unwrap();
            }
        }
    }
    for (a, b) in t.edges() {
        writeln!(out, "  {} -- {};", node_name(a), node_name(b)).unwrap();
    }
    out.push_str("}\n");
    out
}

const NEWICK_SPECIAL: &[char] = &['(', ')', '[', ']', '\'', ':', ';', ',', '+'];

fn newick_label(label: &str) -> String {
    if label.contains(NEWICK_SPECIAL) || label.chars().any(char::is_whitespace) {
        format!("'{}'", label.replace('\'', "''"))
    } else {
        label.to_string()
    }
}

/// `T_Σ` in Newick with node names. Rooted at the node holding the first
/// element; if that node is a leaf an unnamed root joins it to its neighbour.
/// Children appear in order of their smallest element.
pub fn xtree_to_newick(x: &XTree, ground: &GroundSet) -> String {
    let adj = x.adjacency();
    let name = |node: usize| {
        x.nodes[node]
            .labels
            .iter()
            .map(|&e| newick_label(ground.label(e)))
            .collect::<Vec<_>>()
            .join("+")
    };
    // Smallest element in the subtree of `node` away from `parent`.
    fn min_label(x: &XTree, adj: &[Vec<usize>], node: usize, parent: usize) -> usize {
        adj[node]
            .iter()
            .filter(|&&w| w != parent)
            .map(|&w| min_label(x, adj, w, node))
            .chain(x.nodes[node].labels.first().copied())
            .min()
            .unwrap_or(usize::MAX)
    }
    fn write(
        x: &XTree,
        adj: &[Vec<usize>],
        name: &dyn Fn(usize) -> String,
        node: usize,
        parent: usize,
        out: &mut String,
    ) {
        let mut kids: Vec<(usize, usize)> = adj[node]
            .iter()
            .filter(|&&w| w != parent)
            .map(|&w| (min_label(x, adj, w, node), w))
            .collect();
        kids.sort_unstable();
        if !kids.is_empty() {
            out.push('(');
            for (k, &(_, w)) in kids.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                write(x, adj, name, w, node, out);
            }
            out.push(')');
        }
        out.push_str(&name(node));
    }

    let mut out = String::new();
    let Some(root) = x.node_of_element(0) else {
        return ";".to_string();
    };
    if adj[root].len() == 1 {
        let other = adj[root][0];
        out.push('(');
        out.push_str(&name(root));
        out.push(',');
        write(x, &adj, &name, other, root, &mut out);
        out.push(')');
    } else {
        write(x, &adj, &name, root, usize::MAX, &mut out);
    }
    out.push(';');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::trees::xtree_of;

    #[test]
    fn sigma8_file_round_trips() {
        let sys = fixtures::sigma8();
        let text = format_split_file(&sys);
        assert!(text.starts_with("elements: 1 2 3 4 5 6 7 8\n1 3\n"));
        let back = parse_split_file(&text).unwrap();
        assert_eq!(back, sys);
        assert_eq!(format_split_file(&back), text);
    }

    #[test]
    fn complement_and_names() {
        let sys = parse_split_file("elements: a b c d\nab\n").unwrap_err();
        assert_eq!(sys.line, 2);
        assert!(matches!(sys.kind, ParseErrorKind::UnknownElement(_)));

        let sys =
            parse_split_file("# hi\n\nelements: a b c d\nc d  # same as a b\nq: a c\n").unwrap();
        assert_eq!(sys.names(), ["Scd", "q"]);
        assert!(sys.split(0).part_a().contains(0));
        let text = format_split_file(&sys);
        assert_eq!(text, "elements: a b c d\nScd: a b\nq: a c\n");
        assert_eq!(parse_split_file(&text).unwrap(), sys);
    }

    #[test]
    fn parse_errors_carry_lines() {
        let cases = [
            ("1 2\n", 1, "syntax"),
            ("elements: 1 2 3\nS:\n", 2, "improper"),
            ("elements: 1 2 3\n1 2 3\n", 2, "improper"),
            ("elements: 1 2 3\n1\n\n2 3\n", 4, "dup"),
            ("elements: 1 2 3\n1 4\n", 2, "unknown"),
            ("elements: 1 1 3\n1\n", 1, "syntax"),
            ("elements: 1 2 3\n", 1, "syntax"),
        ];
        for (text, line, kind) in cases {
            let e = parse_split_file(text).unwrap_err();
            assert_eq!(e.line, line, "{text:?}");
            let ok = match kind {
                "syntax" => matches!(e.kind, ParseErrorKind::Syntax(_)),
                "improper" => e.kind == ParseErrorKind::ImproperSplit,
                "dup" => e.kind == ParseErrorKind::DuplicateSplit { previous: 2 },
                _ => matches!(e.kind, ParseErrorKind::UnknownElement(_)),
            };
            assert!(ok, "{text:?} gave {e}");
        }
    }

    #[test]
    fn newick_shapes() {
        let sys = SplitSystem::from_labels(&["a", "b", "c"], &[&["a"]]).unwrap();
        let g = BunemanGraph::new(sys).unwrap();
        let (_, _, x) = xtree_of(&g).unwrap();
        assert_eq!(xtree_to_newick(&x, g.system().ground()), "(a,b+c);");

        let g = BunemanGraph::new(fixtures::sigma8()).unwrap();
        let (_, _, x) = xtree_of(&g).unwrap();
        assert_eq!(
            xtree_to_newick(&x, g.system().ground()),
            "(1,(2,3,(4,5,(6,7,8))));"
        );

        let g = BunemanGraph::new(fixtures::labeled_path()).unwrap();
        let (_, _, x) = xtree_of(&g).unwrap();
        assert_eq!(xtree_to_newick(&x, g.system().ground()), "(1,(3)2);");
    }

    #[test]
    fn quoting() {
        assert_eq!(newick_label("a b"), "'a b'");
        assert_eq!(newick_label("it's"), "'it''s'");
        assert_eq!(newick_label("x+y"), "'x+y'");
        assert_eq!(newick_label("x1"), "x1");
    }

    #[test]
    fn exports_are_deterministic() {
        let g = BunemanGraph::new(fixtures::sigma8()).unwrap();
        let (blocks, t, _) = xtree_of(&g).unwrap();
        let dot = graph_to_dot(&g);
        assert_eq!(dot.matches(" -- ").count(), 22);
        assert!(dot.contains("type="));
        let json: serde_json::Value = serde_json::from_str(&graph_to_json(&g)).unwrap();
        assert_eq!(json["vertices"].as_array().unwrap().len(), 16);
        assert_eq!(json["edges"].as_array().unwrap().len(), 22);
        assert!(json["edges"][0]["type"].is_u64());
        let g2 = BunemanGraph::new(fixtures::sigma8()).unwrap();
        assert_eq!(graph_to_json(&g), graph_to_json(&g2));
        let tdot = block_cut_tree_to_dot(&g, &blocks, &t);
        assert_eq!(tdot.matches(" -- ").count(), 20);
    }
}
