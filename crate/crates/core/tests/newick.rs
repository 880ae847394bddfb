//! Newick output re-parsed by a small independent reader and compared with
//! the exported X-tree up to isomorphism.

use buneman_core::io::xtree_to_newick;
use buneman_core::trees::xtree_of;
use buneman_core::{fixtures, random, BunemanGraph, SplitSystem};

#[derive(Debug, Default)]
struct Tree {
    labels: Vec<Vec<String>>,
    adj: Vec<Vec<usize>>,
}

struct Reader<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Reader<'_> {
    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn label(&mut self) -> String {
        let mut out = String::new();
        if self.eat(b'\'') {
            loop {
                match self.peek().expect("unterminated quote") {
                    b'\'' if self.s.get(self.pos + 1) == Some(&b'\'') => {
                        out.push('\'');
                        self.pos += 2;
                    }
                    b'\'' => {
                        self.pos += 1;
                        break;
                    }
                    c => {
                        out.push(c as char);
                        self.pos += 1;
                    }
                }
            }
        } else {
            while let Some(c) = self.peek() {
                if b"(),;+'".contains(&c) {
                    break;
                }
                out.push(c as char);
                self.pos += 1;
            }
        }
        out
    }

    fn names(&mut self) -> Vec<String> {
        let mut out = Vec::new();
        if matches!(self.peek(), Some(b')' | b',' | b';')) {
            return out;
        }
        out.push(self.label());
        while self.eat(b'+') {
            out.push(self.label());
        }
        out
    }

    fn node(&mut self, t: &mut Tree) -> usize {
        let id = t.labels.len();
        t.labels.push(Vec::new());
        t.adj.push(Vec::new());
        if self.eat(b'(') {
            loop {
                let kid = self.node(t);
                t.adj[id].push(kid);
                t.adj[kid].push(id);
                if !self.eat(b',') {
                    break;
                }
            }
            assert!(self.eat(b')'), "expected ')' at {}", self.pos);
        }
        t.labels[id] = self.names();
        id
    }
}

fn parse(text: &str) -> Tree {
    let mut t = Tree::default();
    let mut r = Reader {
        s: text.as_bytes(),
        pos: 0,
    };
    r.node(&mut t);
    assert!(
        r.eat(b';') && r.pos == text.len(),
        "trailing input in {text:?}"
    );
    t
}

/// Removes unlabelled degree-2 nodes, then writes the tree rooted at the
/// node holding the smallest label with sorted children.
fn canonical(mut t: Tree) -> String {
    let mut alive = vec![true; t.labels.len()];
    while let Some(k) =
        (0..t.labels.len()).find(|&k| alive[k] && t.labels[k].is_empty() && t.adj[k].len() == 2)
    {
        let (a, b) = (t.adj[k][0], t.adj[k][1]);
        t.adj[a].retain(|&w| w != k);
        t.adj[b].retain(|&w| w != k);
        t.adj[a].push(b);
        t.adj[b].push(a);
        t.adj[k].clear();
        alive[k] = false;
    }
    fn write(t: &Tree, k: usize, parent: usize) -> String {
        let mut kids: Vec<String> = t.adj[k]
            .iter()
            .filter(|&&w| w != parent)
            .map(|&w| write(t, w, k))
            .collect();
        kids.sort();
        let mut labels = t.labels[k].clone();
        labels.sort();
        format!("({}){}", kids.join(","), labels.join("+"))
    }
    let root = (0..t.labels.len())
        .filter(|&k| alive[k] && !t.labels[k].is_empty())
        .min_by_key(|&k| t.labels[k].iter().min().cloned())
        .unwrap();
    write(&t, root, usize::MAX)
}

fn round_trip(sys: SplitSystem) {
    let g = BunemanGraph::new(sys).unwrap();
    let (_, _, x) = xtree_of(&g).unwrap();
    let ground = g.system().ground();
    let text = xtree_to_newick(&x, ground);
    assert_eq!(canonical(parse(&text)), x.canonical_form(ground), "{text}");
}

#[test]
fn fixtures_reparse() {
    round_trip(fixtures::sigma8());
    round_trip(fixtures::sigma8_tree());
    round_trip(fixtures::square());
    round_trip(fixtures::labeled_path());
}

#[test]
fn companion_systems_print_identically() {
    let newick = |sys| {
        let g = BunemanGraph::new(sys).unwrap();
        let (_, _, x) = xtree_of(&g).unwrap();
        xtree_to_newick(&x, g.system().ground())
    };
    assert_eq!(newick(fixtures::sigma8()), newick(fixtures::sigma8_tree()));
}

#[test]
fn quoted_labels_reparse() {
    let sys = SplitSystem::from_labels(&["a b", "c+d", "e'f", "g"], &[&["a b", "c+d"], &["a b"]])
        .unwrap();
    let g = BunemanGraph::new(sys.clone()).unwrap();
    let (_, _, x) = xtree_of(&g).unwrap();
    let text = xtree_to_newick(&x, sys.ground());
    assert!(
        text.contains("'a b'") && text.contains("'c+d'") && text.contains("'e''f'"),
        "{text}"
    );
    round_trip(sys);
}

#[test]
fn random_systems_reparse() {
    let mut rng = random::rng(99);
    for _ in 0..150 {
        let (n, m) = random::random_shape(&mut rng, 2, 8, 7);
        round_trip(random::random_system(&mut rng, n, m));
    }
}
