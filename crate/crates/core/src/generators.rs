//! Deterministic graph families and seeded random models.
//!
//! Randomness comes from xoshiro256** seeded through splitmix64
//! ([`rng`]). Identical `(spec, seed)` pairs give identical edge sets within
//! one build; nothing is promised across implementations.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub type GraphRng = Xoshiro256StarStar;

/// Generator for `seed`.
pub fn rng(seed: u64) -> GraphRng {
    GraphRng::seed_from_u64(seed)
}

/// Independent substream `stream` of `seed`, obtained with xoshiro's jump
/// function (2^128 steps per jump).
pub fn rng_stream(seed: u64, stream: u32) -> GraphRng {
    let mut r = rng(seed);
    for _ in 0..stream {
        r.jump();
    }
    r
}

/// A deterministic graph family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    Complete(usize),
    CompleteBipartite(usize, usize),
    Star(usize),
    Path(usize),
    Cycle(usize),
    Hypercube(u32),
    /// `m` triangles sharing one hub; `2m + 1` vertices.
    Petal(usize),
    /// Complete rooted tree: the root has `k` children and every other
    /// internal vertex `k - 1`, down to `depth`.
    KRegularTree { k: usize, depth: u32 },
    /// First `n` vertices of the infinite `k`-regular tree in breadth-first order.
    TruncatedRegularTree { k: usize, n: usize },
    /// `C_{2m}` with every even-indexed vertex duplicated; `3m` vertices.
    DuplicatedCycle(usize),
}

/// A seeded random model.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RandomModel {
    /// `G(n, p)` with `p = avg_degree / (n - 1)`.
    ErdosRenyi { n: usize, avg_degree: f64 },
    /// Preferential attachment grown from `K_init`.
    BarabasiAlbert { n: usize, m: usize, init: usize },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RandomSpec {
    pub model: RandomModel,
    pub seed: u64,
}

/// Rule used by [`grow`] to attach new vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrowthRule {
    /// Each new vertex gets `m` distinct neighbors drawn proportionally to degree.
    PreferentialAttachment { m: usize },
    /// Each new vertex becomes a leaf of the lowest-index vertex with degree
    /// below `k` (the breadth-first frontier of a `k`-regular tree).
    LeafAttachment { k: usize },
}

/// Number of vertices of the complete `k`-regular tree of the given depth.
pub fn regular_tree_size(k: usize, depth: u32) -> usize {
    let mut total = 1usize;
    let mut level = k;
    for _ in 0..depth {
        total += level;
        level *= k - 1;
    }
    total
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

impl FamilySpec {
    pub fn vertex_count(&self) -> usize {
        match *self {
            FamilySpec::Complete(n) | FamilySpec::Star(n) | FamilySpec::Path(n) | FamilySpec::Cycle(n) => n,
            FamilySpec::CompleteBipartite(a, b) => a + b,
            FamilySpec::Hypercube(d) => 1usize << d,
            FamilySpec::Petal(m) => 2 * m + 1,
            FamilySpec::KRegularTree { k, depth } => regular_tree_size(k, depth),
            FamilySpec::TruncatedRegularTree { n, .. } => n,
            FamilySpec::DuplicatedCycle(m) => 3 * m,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            FamilySpec::Complete(n) | FamilySpec::Path(n) => n >= 1,
            FamilySpec::Star(n) => n >= 2,
            FamilySpec::Cycle(n) => n >= 3,
            FamilySpec::CompleteBipartite(a, b) => a >= 1 && b >= 1,
            FamilySpec::Hypercube(d) => (1..=30).contains(&d),
            FamilySpec::Petal(m) => m >= 1,
            FamilySpec::KRegularTree { k, depth } => k >= 2 && (1..=64).contains(&depth),
            FamilySpec::TruncatedRegularTree { k, n } => k >= 2 && n >= 1,
            FamilySpec::DuplicatedCycle(m) => m >= 2,
        };
        if ok {
            Ok(())
        } else {
            Err(invalid(format!("invalid family parameters: {self}")))
        }
    }
}

/// Builds the canonical member of a family.
pub fn generate_family(spec: FamilySpec) -> Result<Graph> {
    spec.validate()?;
    let mut edges = Vec::new();
    let n = spec.vertex_count();
    match spec {
        FamilySpec::Complete(n) => {
            for u in 0..n {
                edges.extend((u + 1..n).map(|v| (u, v)));
            }
        }
        FamilySpec::CompleteBipartite(a, b) => {
            for u in 0..a {
                edges.extend((a..a + b).map(|v| (u, v)));
            }
        }
        FamilySpec::Star(n) => edges.extend((1..n).map(|v| (0, v))),
        FamilySpec::Path(n) => edges.extend((1..n).map(|v| (v - 1, v))),
        FamilySpec::Cycle(n) => edges.extend((0..n).map(|v| (v, (v + 1) % n))),
        FamilySpec::Hypercube(d) => {
            for u in 0..n {
                for bit in 0..d {
                    let v = u ^ (1 << bit);
                    if u < v {
                        edges.push((u, v));
                    }
                }
            }
        }
        FamilySpec::Petal(m) => {
            for i in 0..m {
                let (a, b) = (2 * i + 1, 2 * i + 2);
                edges.extend([(0, a), (0, b), (a, b)]);
            }
        }
        FamilySpec::KRegularTree { k, .. } | FamilySpec::TruncatedRegularTree { k, .. } => {
            return grow(&Graph::empty(1), n, GrowthRule::LeafAttachment { k }, 0);
        }
        FamilySpec::DuplicatedCycle(m) => {
            let c = 2 * m;
            edges.extend((0..c).map(|v| (v, (v + 1) % c)));
            for j in 0..m {
                let v = 2 * j;
                let twin = c + j;
                edges.push(((v + c - 1) % c, twin));
                edges.push(((v + 1) % c, twin));
            }
        }
    }
    Graph::new(n, edges)
}

/// Erdős–Rényi `G(n, p)`: every pair, in order `(0,1), (0,2), …`, is kept
/// independently with probability `p = avg_degree / (n - 1)`.
pub fn generate_er(n: usize, avg_degree: f64, seed: u64) -> Result<Graph> {
    generate_er_with(n, avg_degree, &mut rng(seed))
}

pub fn generate_er_with<R: Rng>(n: usize, avg_degree: f64, rng: &mut R) -> Result<Graph> {
    if n == 0 {
        return Err(invalid("Erdős–Rényi graph needs n >= 1"));
    }
    if !(avg_degree >= 0.0) || avg_degree > (n - 1) as f64 {
        return Err(invalid(format!(
            "average degree {avg_degree} outside [0, n - 1] for n = {n}"
        )));
    }
    let p = if n == 1 { 0.0 } else { avg_degree / (n - 1) as f64 };
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges)
}

/// Barabási–Albert graph grown from `K_init` with `m` edges per new vertex.
pub fn generate_ba(n: usize, m: usize, init: usize, seed: u64) -> Result<Graph> {
    if m == 0 || init < m {
        return Err(invalid(format!(
            "preferential attachment needs init >= m >= 1 (m = {m}, init = {init})"
        )));
    }
    if n < init {
        return Err(invalid(format!("n = {n} is smaller than the initial size {init}")));
    }
    let seed_graph = generate_family(FamilySpec::Complete(init))?;
    grow(&seed_graph, n, GrowthRule::PreferentialAttachment { m }, seed)
}

pub fn generate_random(spec: RandomSpec) -> Result<Graph> {
    match spec.model {
        RandomModel::ErdosRenyi { n, avg_degree } => generate_er(n, avg_degree, spec.seed),
        RandomModel::BarabasiAlbert { n, m, init } => generate_ba(n, m, init, spec.seed),
    }
}

/// Extends `g` to `target_n` vertices; `g` stays the induced subgraph on its
/// original vertices.
pub fn grow(g: &Graph, target_n: usize, rule: GrowthRule, seed: u64) -> Result<Graph> {
    grow_with(g, target_n, rule, &mut rng(seed))
}

pub fn grow_with<R: Rng>(g: &Graph, target_n: usize, rule: GrowthRule, rng: &mut R) -> Result<Graph> {
    if target_n < g.n() {
        return Err(invalid(format!(
            "target size {target_n} is smaller than the current size {}",
            g.n()
        )));
    }
    let mut edges = g.edges().to_vec();
    match rule {
        GrowthRule::PreferentialAttachment { m } => {
            if m == 0 {
                return Err(invalid("preferential attachment needs m >= 1"));
            }
            // Each edge contributes both endpoints, so a uniform pick is
            // degree-proportional.
            let mut endpoints: Vec<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
            let mut targets = Vec::with_capacity(m);
            for v in g.n()..target_n {
                if m > v {
                    return Err(invalid(format!(
                        "cannot attach {m} distinct edges with only {v} existing vertices"
                    )));
                }
                targets.clear();
                while targets.len() < m {
                    let t = if endpoints.is_empty() {
                        rng.random_range(0..v)
                    } else {
                        endpoints[rng.random_range(0..endpoints.len())]
                    };
                    if !targets.contains(&t) {
                        targets.push(t);
                    }
                }
                for &t in &targets {
                    edges.push((t, v));
                    endpoints.extend([t, v]);
                }
            }
        }
        GrowthRule::LeafAttachment { k } => {
            if k < 2 {
                return Err(invalid("leaf attachment needs k >= 2"));
            }
            let mut degree = g.degrees();
            degree.resize(target_n, 0);
            let mut parent = 0;
            for v in g.n()..target_n {
                while parent < v && degree[parent] >= k {
                    parent += 1;
                }
                if parent == v {
                    // Only reachable when starting from an empty graph or a
                    // saturated one; the new vertex starts a fresh component.
                    continue;
                }
                edges.push((parent, v));
                degree[parent] += 1;
                degree[v] += 1;
            }
        }
    }
    Graph::new(target_n, edges)
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilySpec::Complete(n) => write!(f, "complete:n={n}"),
            FamilySpec::CompleteBipartite(a, b) => write!(f, "bipartite:n1={a},n2={b}"),
            FamilySpec::Star(n) => write!(f, "star:n={n}"),
            FamilySpec::Path(n) => write!(f, "path:n={n}"),
            FamilySpec::Cycle(n) => write!(f, "cycle:n={n}"),
            FamilySpec::Hypercube(d) => write!(f, "cube:d={d}"),
            FamilySpec::Petal(m) => write!(f, "petal:m={m}"),
            FamilySpec::KRegularTree { k, depth } => write!(f, "tree:k={k},depth={depth}"),
            FamilySpec::TruncatedRegularTree { k, n } => write!(f, "tree:k={k},n={n}"),
            FamilySpec::DuplicatedCycle(m) => write!(f, "dupcycle:m={m}"),
        }
    }
}

impl fmt::Display for RandomModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            RandomModel::ErdosRenyi { n, avg_degree } => write!(f, "er:n={n},avg={avg_degree}"),
            RandomModel::BarabasiAlbert { n, m, init } => write!(f, "ba:n={n},m={m},init={init}"),
        }
    }
}

/// Textual graph description: `<family>:<key>=<value>{,<key>=<value>}`.
///
/// | family      | keys               |
/// |-------------|--------------------|
/// | `complete`  | `n`                |
/// | `bipartite` | `n1`, `n2`         |
/// | `star`      | `n`                |
/// | `path`      | `n`                |
/// | `cycle`     | `n`                |
/// | `cube`      | `d`                |
/// | `petal`     | `m`                |
/// | `tree`      | `k` and one of `depth`, `n` |
/// | `dupcycle`  | `m`                |
/// | `er`        | `n`, `avg`         |
/// | `ba`        | `n`, `m`, optional `init` (default 5) |
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GraphSpec {
    Family(FamilySpec),
    Random(RandomModel),
}

impl GraphSpec {
    pub fn generate(&self, seed: u64) -> Result<Graph> {
        match *self {
            GraphSpec::Family(f) => generate_family(f),
            GraphSpec::Random(model) => generate_random(RandomSpec { model, seed }),
        }
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSpec::Family(x) => x.fmt(f),
            GraphSpec::Random(x) => x.fmt(f),
        }
    }
}

struct Params<'a> {
    src: &'a str,
    items: Vec<(&'a str, &'a str, usize)>,
    used: Vec<bool>,
}

impl<'a> Params<'a> {
    fn err(position: usize, message: impl Into<String>) -> Error {
        Error::SpecParse { position, message: message.into() }
    }

    fn parse(src: &'a str, start: usize) -> Result<Self> {
        let mut items = Vec::new();
        let body = &src[start..];
        if body.is_empty() {
            return Err(Self::err(start, "expected <key>=<value> after ':'"));
        }
        let mut offset = start;
        for part in body.split(',') {
            let Some((k, v)) = part.split_once('=') else {
                return Err(Self::err(offset, format!("expected <key>=<value>, found {part:?}")));
            };
            if k.is_empty() {
                return Err(Self::err(offset, "empty key"));
            }
            if items.iter().any(|&(seen, _, _)| seen == k) {
                return Err(Self::err(offset, format!("duplicate key {k:?}")));
            }
            items.push((k, v, offset));
            offset += part.len() + 1;
        }
        let used = vec![false; items.len()];
        Ok(Params { src, items, used })
    }

    fn raw(&mut self, key: &str) -> Option<(&'a str, usize)> {
        let i = self.items.iter().position(|&(k, _, _)| k == key)?;
        self.used[i] = true;
        let (k, v, pos) = self.items[i];
        Some((v, pos + k.len() + 1))
    }

    fn opt<T: FromStr>(&mut self, key: &str) -> Result<Option<T>> {
        match self.raw(key) {
            None => Ok(None),
            Some((v, pos)) => v
                .parse()
                .map(Some)
                .map_err(|_| Self::err(pos, format!("invalid value {v:?} for key {key:?}"))),
        }
    }

    fn req<T: FromStr>(&mut self, key: &str) -> Result<T> {
        self.opt(key)?
            .ok_or_else(|| Self::err(self.src.len(), format!("missing key {key:?}")))
    }

    fn finish(self) -> Result<()> {
        match self.used.iter().position(|u| !u) {
            Some(i) => {
                let (k, _, pos) = self.items[i];
                Err(Self::err(pos, format!("unknown key {k:?}")))
            }
            None => Ok(()),
        }
    }
}

impl FromStr for GraphSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let Some((family, _)) = s.split_once(':') else {
            return Err(Error::SpecParse {
                position: 0,
                message: "expected <family>:<key>=<value>{,<key>=<value>}".into(),
            });
        };
        let mut p = Params::parse(s, family.len() + 1)?;
        let spec = match family {
            "complete" => GraphSpec::Family(FamilySpec::Complete(p.req("n")?)),
            "bipartite" => GraphSpec::Family(FamilySpec::CompleteBipartite(p.req("n1")?, p.req("n2")?)),
            "star" => GraphSpec::Family(FamilySpec::Star(p.req("n")?)),
            "path" => GraphSpec::Family(FamilySpec::Path(p.req("n")?)),
            "cycle" => GraphSpec::Family(FamilySpec::Cycle(p.req("n")?)),
            "cube" => GraphSpec::Family(FamilySpec::Hypercube(p.req("d")?)),
            "petal" => GraphSpec::Family(FamilySpec::Petal(p.req("m")?)),
            "dupcycle" => GraphSpec::Family(FamilySpec::DuplicatedCycle(p.req("m")?)),
            "tree" => {
                let k = p.req("k")?;
                match (p.opt("depth")?, p.opt("n")?) {
                    (Some(depth), None) => GraphSpec::Family(FamilySpec::KRegularTree { k, depth }),
                    (None, Some(n)) => GraphSpec::Family(FamilySpec::TruncatedRegularTree { k, n }),
                    _ => {
                        return Err(Error::SpecParse {
                            position: family.len() + 1,
                            message: "tree needs exactly one of \"depth\" or \"n\"".into(),
                        })
                    }
                }
            }
            "er" => GraphSpec::Random(RandomModel::ErdosRenyi {
                n: p.req("n")?,
                avg_degree: p.req("avg")?,
            }),
            "ba" => GraphSpec::Random(RandomModel::BarabasiAlbert {
                n: p.req("n")?,
                m: p.req("m")?,
                init: p.opt("init")?.unwrap_or(5),
            }),
            other => {
                return Err(Error::SpecParse {
                    position: 0,
                    message: format!("unknown family {other:?}"),
                })
            }
        };
        p.finish()?;
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted_degrees(g: &Graph) -> Vec<usize> {
        let mut d = g.degrees();
        d.sort_unstable();
        d
    }

    #[test]
    fn regular_tree_sizes() {
        for (k, depth, n) in [(4, 6, 1457), (6, 5, 4687), (8, 4, 3201)] {
            assert_eq!(regular_tree_size(k, depth), n);
            // closed form 1 + k((k-1)^d - 1)/(k-2)
            let closed = 1 + k * ((k - 1).pow(depth) - 1) / (k - 2);
            assert_eq!(closed, n);
        }
        let t = generate_family(FamilySpec::KRegularTree { k: 4, depth: 6 }).unwrap();
        assert_eq!(t.n(), 1457);
        assert_eq!(t.edge_count(), 1456);
        assert_eq!(t.connected_components().count, 1);
        // every internal vertex has degree exactly k
        assert!(t.degrees().iter().all(|&d| d == 1 || d == 4));
    }

    #[test]
    fn hypercube_and_petal() {
        let q2 = generate_family(FamilySpec::Hypercube(2)).unwrap();
        assert_eq!((q2.n(), q2.edge_count()), (4, 4));
        assert_eq!(sorted_degrees(&q2), sorted_degrees(&generate_family(FamilySpec::Cycle(4)).unwrap()));
        for d in 1..=8u32 {
            let q = generate_family(FamilySpec::Hypercube(d)).unwrap();
            assert_eq!(q.edge_count(), d as usize * (1 << (d - 1)));
            assert!(q.degrees().iter().all(|&x| x == d as usize));
        }
        let p = generate_family(FamilySpec::Petal(2)).unwrap();
        assert_eq!((p.n(), p.edge_count(), p.degree(0).unwrap()), (5, 6, 4));
        assert!(generate_family(FamilySpec::Hypercube(0)).is_err());
        assert!(generate_family(FamilySpec::Petal(0)).is_err());
    }

    #[test]
    fn star_matches_bipartite() {
        let s = generate_family(FamilySpec::Star(7)).unwrap();
        let b = generate_family(FamilySpec::CompleteBipartite(1, 6)).unwrap();
        assert_eq!(s, b);
    }

    #[test]
    fn duplicated_cycle_counts() {
        for m in 2..10 {
            let g = generate_family(FamilySpec::DuplicatedCycle(m)).unwrap();
            assert_eq!((g.n(), g.edge_count()), (3 * m, 4 * m));
            // twins share the neighborhood of their original
            for j in 0..m {
                assert_eq!(g.neighbors(2 * j).to_vec(), {
                    let mut nb = vec![(2 * j + 2 * m - 1) % (2 * m), (2 * j + 1) % (2 * m)];
                    nb.sort();
                    nb
                });
                let mut twin = g.neighbors(2 * m + j).to_vec();
                twin.sort();
                let mut orig = g.neighbors(2 * j).to_vec();
                orig.sort();
                assert_eq!(twin, orig);
            }
        }
    }

    #[test]
    fn er_limits() {
        for seed in 0..5 {
            assert_eq!(generate_er(5, 4.0, seed).unwrap(), generate_family(FamilySpec::Complete(5)).unwrap());
            assert_eq!(generate_er(5, 0.0, seed).unwrap().edge_count(), 0);
        }
        assert!(generate_er(5, 4.5, 0).is_err());
        assert_eq!(generate_er(1000, 10.0, 3).unwrap(), generate_er(1000, 10.0, 3).unwrap());
    }

    #[test]
    fn er_average_degree_concentrates() {
        let g = generate_er(1000, 10.0, 42).unwrap();
        assert!((g.average_degree().unwrap() - 10.0).abs() < 1.0);
        let mean = (0..20)
            .map(|s| generate_er(1000, 10.0, s).unwrap().average_degree().unwrap())
            .sum::<f64>()
            / 20.0;
        assert!((mean - 10.0).abs() < 0.1, "mean {mean}");
    }

    #[test]
    fn ba_small_cases() {
        let k5 = generate_family(FamilySpec::Complete(5)).unwrap();
        let k6 = generate_family(FamilySpec::Complete(6)).unwrap();
        for seed in 0..5 {
            assert_eq!(generate_ba(5, 3, 5, seed).unwrap(), k5);
            assert_eq!(generate_ba(6, 5, 5, seed).unwrap(), k6);
            assert_eq!(grow(&k5, 6, GrowthRule::PreferentialAttachment { m: 5 }, seed).unwrap(), k6);
        }
        assert!(generate_ba(10, 6, 5, 0).is_err());
        assert!(generate_ba(4, 2, 5, 0).is_err());
    }

    #[test]
    fn ba_is_heavy_tailed() {
        let g = generate_ba(1000, 2, 5, 7).unwrap();
        let avg = g.average_degree().unwrap();
        let max = *g.degrees().iter().max().unwrap() as f64;
        assert!(max > 10.0 * avg, "max {max}, avg {avg}");
        assert_eq!(g.edge_count(), 10 + 2 * 995);
        // the heavy tail is not an accident of one seed
        let hits = (0..20)
            .filter(|&s| {
                let g = generate_ba(1000, 2, 5, s).unwrap();
                *g.degrees().iter().max().unwrap() as f64 > 10.0 * g.average_degree().unwrap()
            })
            .count();
        assert!(hits >= 15, "{hits}/20");
    }

    #[test]
    fn grow_rules() {
        let g = generate_ba(50, 2, 5, 1).unwrap();
        assert_eq!(grow(&g, 50, GrowthRule::PreferentialAttachment { m: 2 }, 9).unwrap(), g);
        assert!(grow(&g, 49, GrowthRule::PreferentialAttachment { m: 2 }, 9).is_err());

        let grown = grow(&g, 80, GrowthRule::PreferentialAttachment { m: 2 }, 9).unwrap();
        assert!(g.edges().iter().all(|&(u, v)| grown.has_edge(u, v)));
        assert!(grown.edges().iter().filter(|&&(u, v)| u < 50 && v < 50).count() == g.edge_count());

        let t = generate_family(FamilySpec::TruncatedRegularTree { k: 3, n: 100 }).unwrap();
        let t2 = grow(&t, 200, GrowthRule::LeafAttachment { k: 3 }, 0).unwrap();
        assert_eq!(t2.connected_components().count, 1);
        assert_eq!(t2.edge_count(), t2.n() - 1);
        assert_eq!(t2, generate_family(FamilySpec::TruncatedRegularTree { k: 3, n: 200 }).unwrap());
    }

    #[test]
    fn streams_differ() {
        let a: u64 = rng_stream(1, 0).random();
        let b: u64 = rng_stream(1, 1).random();
        let c: u64 = rng(1).random();
        assert_ne!(a, b);
        assert_eq!(a, c);
    }

    #[test]
    fn spec_grammar() {
        let cases = [
            ("complete:n=4", GraphSpec::Family(FamilySpec::Complete(4))),
            ("tree:k=4,depth=6", GraphSpec::Family(FamilySpec::KRegularTree { k: 4, depth: 6 })),
            ("tree:k=3,n=100", GraphSpec::Family(FamilySpec::TruncatedRegularTree { k: 3, n: 100 })),
            (
                "ba:n=1000,m=2,init=5",
                GraphSpec::Random(RandomModel::BarabasiAlbert { n: 1000, m: 2, init: 5 }),
            ),
            ("er:n=100,avg=4", GraphSpec::Random(RandomModel::ErdosRenyi { n: 100, avg_degree: 4.0 })),
            ("bipartite:n1=2,n2=3", GraphSpec::Family(FamilySpec::CompleteBipartite(2, 3))),
        ];
        for (text, want) in cases {
            let got: GraphSpec = text.parse().unwrap();
            assert_eq!(got, want);
            assert_eq!(got.to_string().parse::<GraphSpec>().unwrap(), want);
        }
        let pos = |s: &str| match s.parse::<GraphSpec>() {
            Err(Error::SpecParse { position, .. }) => position,
            other => panic!("{s}: {other:?}"),
        };
        assert_eq!(pos("complete:n=4,q=1"), 13);
        assert_eq!(pos("complete:n=x"), 11);
        assert_eq!(pos("hyper:n=3"), 0);
        assert_eq!(pos("complete"), 0);
        assert_eq!(pos("complete:n"), 9);
        assert!("tree:k=3".parse::<GraphSpec>().is_err());
    }
}
