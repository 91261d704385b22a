//! Simple undirected graphs, edit operations and edge-list I/O.
//!
//! Vertices are dense `0..n` indices. A [`Graph`] is immutable: every edit
//! returns a new value.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};

/// A finite, undirected, unweighted graph without self-loops or multi-edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    /// Canonical edge set: `u < v`, sorted, no duplicates.
    edges: Vec<(usize, usize)>,
    /// Sorted neighbor lists, derived from `edges`.
    adj: Vec<Vec<usize>>,
}

/// One atomic edit: insertion or deletion of an edge or of an isolated vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EditOp {
    InsertEdge(usize, usize),
    DeleteEdge(usize, usize),
    InsertIsolatedVertex,
    /// Removes `v`; the last vertex is moved into slot `v`.
    DeleteIsolatedVertex(usize),
}

/// Connected components: count plus a per-vertex component index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Components {
    pub count: usize,
    pub labels: Vec<usize>,
}

fn canonical(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Graph {
    /// Builds a graph, rejecting self-loops and out-of-range endpoints.
    /// Duplicate pairs (in either orientation) collapse to one edge.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut canon = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            canon.push(canonical(u, v));
        }
        canon.sort_unstable();
        canon.dedup();
        Ok(Self::from_canonical(n, canon))
    }

    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Self::from_canonical(n, Vec::new())
    }

    fn from_canonical(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Canonical edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Sorted neighbors of `v`. Panics if `v >= n`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.edges.binary_search(&canonical(u, v)).is_ok()
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.adj[v].len())
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    /// `2|E| / n`.
    pub fn average_degree(&self) -> Result<f64> {
        if self.n == 0 {
            return Err(Error::EmptyGraph);
        }
        Ok(2.0 * self.edges.len() as f64 / self.n as f64)
    }

    pub fn isolated_count(&self) -> usize {
        self.adj.iter().filter(|a| a.is_empty()).count()
    }

    pub fn connected_components(&self) -> Components {
        const UNSEEN: usize = usize::MAX;
        let mut labels = vec![UNSEEN; self.n];
        let mut count = 0;
        let mut stack = Vec::new();
        for start in 0..self.n {
            if labels[start] != UNSEEN {
                continue;
            }
            labels[start] = count;
            stack.push(start);
            while let Some(v) = stack.pop() {
                for &w in &self.adj[v] {
                    if labels[w] == UNSEEN {
                        labels[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        Components { count, labels }
    }

    /// Applies one edit, returning the edited graph.
    pub fn apply_edit(&self, op: EditOp) -> Result<Graph> {
        match op {
            EditOp::InsertEdge(u, v) => {
                self.check_vertex(u)?;
                self.check_vertex(v)?;
                if u == v {
                    return Err(Error::SelfLoop(u));
                }
                let e = canonical(u, v);
                match self.edges.binary_search(&e) {
                    Ok(_) => Err(Error::EdgeExists(e.0, e.1)),
                    Err(pos) => {
                        let mut edges = self.edges.clone();
                        edges.insert(pos, e);
                        Ok(Self::from_canonical(self.n, edges))
                    }
                }
            }
            EditOp::DeleteEdge(u, v) => {
                let e = canonical(u, v);
                match self.edges.binary_search(&e) {
                    Ok(pos) => {
                        let mut edges = self.edges.clone();
                        edges.remove(pos);
                        Ok(Self::from_canonical(self.n, edges))
                    }
                    Err(_) => Err(Error::EdgeMissing(e.0, e.1)),
                }
            }
            EditOp::InsertIsolatedVertex => Ok(Self::from_canonical(self.n + 1, self.edges.clone())),
            EditOp::DeleteIsolatedVertex(v) => {
                let degree = self.degree(v)?;
                if degree != 0 {
                    return Err(Error::VertexNotIsolated { vertex: v, degree });
                }
                let last = self.n - 1;
                let mut edges: Vec<_> = self
                    .edges
                    .iter()
                    .map(|&(a, b)| {
                        let a = if a == last { v } else { a };
                        let b = if b == last { v } else { b };
                        canonical(a, b)
                    })
                    .collect();
                edges.sort_unstable();
                Ok(Self::from_canonical(last, edges))
            }
        }
    }

    /// Applies a sequence of edits left to right.
    pub fn apply_edits<'a, I>(&self, ops: I) -> Result<Graph>
    where
        I: IntoIterator<Item = &'a EditOp>,
    {
        let mut g = self.clone();
        for op in ops {
            g = g.apply_edit(*op)?;
        }
        Ok(g)
    }

    /// Renames vertex `v` to `perm[v]`. `perm` must be a permutation of `0..n`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::InvalidParameter(format!(
                "permutation has length {}, graph has {} vertices",
                perm.len(),
                self.n
            )));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidParameter("not a permutation".into()));
            }
        }
        let mut edges: Vec<_> = self
            .edges
            .iter()
            .map(|&(u, v)| canonical(perm[u], perm[v]))
            .collect();
        edges.sort_unstable();
        Ok(Self::from_canonical(self.n, edges))
    }

    /// Disjoint union; `other`'s vertices are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n;
        let edges = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)))
            .collect();
        Self::from_canonical(self.n + other.n, edges)
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }
}

impl EditOp {
    /// Net change of `|E| + |V|`; always `+1` or `-1`.
    pub fn size_delta(&self) -> i64 {
        match self {
            EditOp::InsertEdge(..) | EditOp::InsertIsolatedVertex => 1,
            EditOp::DeleteEdge(..) | EditOp::DeleteIsolatedVertex(_) => -1,
        }
    }
}

fn parse_usize(tok: &str, line: usize) -> Result<usize> {
    tok.parse().map_err(|_| Error::Parse {
        line,
        message: format!("expected a nonnegative integer, found {tok:?}"),
    })
}

fn content_lines<R: BufRead>(reader: R) -> impl Iterator<Item = Result<(usize, String)>> {
    reader.lines().enumerate().filter_map(|(i, line)| match line {
        Err(e) => Some(Err(Error::Io(e))),
        Ok(line) => {
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                None
            } else {
                Some(Ok((i + 1, t.to_string())))
            }
        }
    })
}

/// Reads the `n <count>` / `u v` edge-list format.
pub fn read_edge_list<R: BufRead>(reader: R) -> Result<Graph> {
    let mut lines = content_lines(reader);
    let (hline, header) = match lines.next() {
        Some(r) => r?,
        None => {
            return Err(Error::Parse {
                line: 0,
                message: "missing \"n <count>\" header".into(),
            })
        }
    };
    let n = match header.split_whitespace().collect::<Vec<_>>()[..] {
        ["n", count] => parse_usize(count, hline)?,
        _ => {
            return Err(Error::Parse {
                line: hline,
                message: format!("expected \"n <count>\" header, found {header:?}"),
            })
        }
    };
    let mut edges = Vec::new();
    for item in lines {
        let (lineno, text) = item?;
        let toks: Vec<&str> = text.split_whitespace().collect();
        let [a, b] = toks[..] else {
            return Err(Error::Parse {
                line: lineno,
                message: format!("expected \"u v\", found {text:?}"),
            });
        };
        let (u, v) = (parse_usize(a, lineno)?, parse_usize(b, lineno)?);
        if u == v {
            return Err(Error::Parse {
                line: lineno,
                message: format!("self-loop at vertex {u}"),
            });
        }
        if u >= n || v >= n {
            return Err(Error::Parse {
                line: lineno,
                message: format!("endpoint {} out of range for n = {n}", u.max(v)),
            });
        }
        edges.push((u, v));
    }
    Graph::new(n, edges)
}

/// Reads a headerless edge list with arbitrary vertex labels.
///
/// Labels are numbered in order of first appearance; the returned vector maps
/// vertex index to original label.
pub fn read_labeled_edge_list<R: BufRead>(reader: R) -> Result<(Graph, Vec<String>)> {
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut labels = Vec::new();
    let mut edges = Vec::new();
    for item in content_lines(reader) {
        let (lineno, text) = item?;
        let toks: Vec<&str> = text.split_whitespace().collect();
        let [a, b] = toks[..] else {
            return Err(Error::Parse {
                line: lineno,
                message: format!("expected \"u v\", found {text:?}"),
            });
        };
        if a == b {
            return Err(Error::Parse {
                line: lineno,
                message: format!("self-loop at vertex {a:?}"),
            });
        }
        let mut id = |tok: &str| {
            *index.entry(tok.to_string()).or_insert_with(|| {
                labels.push(tok.to_string());
                labels.len() - 1
            })
        };
        let (u, v) = (id(a), id(b));
        edges.push((u, v));
    }
    Ok((Graph::new(labels.len(), edges)?, labels))
}

/// Reads either format: a leading `n <count>` header selects the indexed
/// format, anything else is treated as a labeled edge list.
pub fn read_any_edge_list(text: &str) -> Result<(Graph, Option<Vec<String>>)> {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'));
    let indexed = matches!(first.map(|l| l.split_whitespace().next()), Some(Some("n")) | None);
    if indexed {
        Ok((read_edge_list(text.as_bytes())?, None))
    } else {
        let (g, labels) = read_labeled_edge_list(text.as_bytes())?;
        Ok((g, Some(labels)))
    }
}

pub fn write_edge_list<W: Write>(g: &Graph, mut out: W) -> std::io::Result<()> {
    out.write_all(edge_list_string(g).as_bytes())
}

pub fn edge_list_string(g: &Graph) -> String {
    let mut s = String::with_capacity(8 + 12 * g.edge_count());
    let _ = writeln!(s, "n {}", g.n());
    for &(u, v) in g.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

/// Writes `index label` lines for a relabeled input.
pub fn write_label_map<W: Write>(labels: &[String], mut out: W) -> std::io::Result<()> {
    writeln!(out, "# index label")?;
    for (i, l) in labels.iter().enumerate() {
        writeln!(out, "{i} {l}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> Graph {
        Graph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn builds_complete_and_dedups() {
        assert_eq!(k4().edge_count(), 6);
        let g = Graph::new(3, []).unwrap();
        assert_eq!((g.n(), g.edge_count()), (3, 0));
        let g = Graph::new(2, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1)]);
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(matches!(Graph::new(2, [(1, 1)]), Err(Error::SelfLoop(1))));
        assert!(matches!(
            Graph::new(2, [(0, 2)]),
            Err(Error::VertexOutOfRange { vertex: 2, n: 2 })
        ));
    }

    #[test]
    fn degrees_and_average() {
        let g = k4();
        assert!((0..4).all(|v| g.degree(v).unwrap() == 3));
        assert!(g.degree(4).is_err());
        assert_eq!(g.average_degree().unwrap(), 3.0);
        assert_eq!(Graph::empty(3).average_degree().unwrap(), 0.0);
        assert!(matches!(Graph::empty(0).average_degree(), Err(Error::EmptyGraph)));
        let star = Graph::new(5, (1..5).map(|v| (0, v))).unwrap();
        assert!((star.average_degree().unwrap() - 1.6).abs() < 1e-15);
        assert_eq!(Graph::empty(3).degree(1).unwrap(), 0);
    }

    #[test]
    fn components() {
        assert_eq!(k4().connected_components().count, 1);
        assert_eq!(Graph::empty(3).connected_components().count, 3);
        let k3 = Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let c = k3.disjoint_union(&k3).connected_components();
        assert_eq!(c.count, 2);
        assert_eq!(c.labels, vec![0, 0, 0, 1, 1, 1]);
    }

    #[test]
    fn edits() {
        let diamond = k4().apply_edit(EditOp::DeleteEdge(2, 3)).unwrap();
        assert_eq!(diamond.edge_count(), 5);
        assert!(!diamond.has_edge(3, 2));

        let p3 = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        let g = p3.apply_edit(EditOp::InsertIsolatedVertex).unwrap();
        assert_eq!((g.n(), g.edge_count()), (4, 2));

        assert!(matches!(
            k4().apply_edit(EditOp::DeleteEdge(0, 4)),
            Err(Error::EdgeMissing(0, 4))
        ));
        assert!(matches!(
            k4().apply_edit(EditOp::InsertEdge(0, 1)),
            Err(Error::EdgeExists(0, 1))
        ));
        assert!(matches!(
            k4().apply_edit(EditOp::DeleteIsolatedVertex(0)),
            Err(Error::VertexNotIsolated { vertex: 0, degree: 3 })
        ));
    }

    #[test]
    fn delete_isolated_vertex_swaps_last_into_slot() {
        // 0 isolated, path 1-2-3
        let g = Graph::new(4, [(1, 2), (2, 3)]).unwrap();
        let h = g.apply_edit(EditOp::DeleteIsolatedVertex(0)).unwrap();
        assert_eq!(h.n(), 3);
        assert_eq!(h.edges(), &[(0, 2), (1, 2)]);
        assert_eq!(h.connected_components().count, 1);
    }

    #[test]
    fn edge_list_parsing() {
        let g = read_edge_list("n 3\n0 1\n1 2".as_bytes()).unwrap();
        assert_eq!(g, Graph::new(3, [(0, 1), (1, 2)]).unwrap());
        let g = read_edge_list("n 2\n# comment\n".as_bytes()).unwrap();
        assert_eq!((g.n(), g.edge_count()), (2, 0));
        match read_edge_list("n 2\n0 2".as_bytes()) {
            Err(Error::Parse { line: 2, message }) => assert!(message.contains("out of range")),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            read_edge_list("n 2\n1 1".as_bytes()),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            read_edge_list("# x\nn 3\n0 1 2\n".as_bytes()),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            read_edge_list("3\n".as_bytes()),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(read_edge_list("n 2\n0 x\n".as_bytes()).is_err());
    }

    #[test]
    fn labeled_ingestion() {
        let text = "# words\nalpha beta\nbeta gamma\ngamma alpha\nalpha beta\n";
        let (g, labels) = read_labeled_edge_list(text.as_bytes()).unwrap();
        assert_eq!(labels, ["alpha", "beta", "gamma"]);
        assert_eq!(g.edge_count(), 3);
        let (h, l) = read_any_edge_list(text).unwrap();
        assert_eq!((h, l.is_some()), (g, true));
        let (h, l) = read_any_edge_list("n 2\n0 1\n").unwrap();
        assert_eq!((h.edge_count(), l), (1, None));
        let mut buf = Vec::new();
        write_label_map(&labels, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "# index label\n0 alpha\n1 beta\n2 gamma\n");
    }

    #[test]
    fn writes_canonical_text() {
        let g = Graph::new(3, [(2, 1), (1, 0)]).unwrap();
        assert_eq!(edge_list_string(&g), "n 3\n0 1\n1 2\n");
    }
}
