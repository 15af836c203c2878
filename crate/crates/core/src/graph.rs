//! Labeled directed multigraphs, the building blocks and the Star gluing,
//! level graphs built two independent ways, diameter, exact labeled
//! equality, and DOT/JSON export.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::action::{act_word, GeneratorLabel};
use crate::algebra::{all_b_elements, Epimorphism, Params, SpinalGroup, SIZE_LIMIT};
use crate::error::{Error, Result};
use crate::words::{words_of_length, FiniteWord};

/// A directed edge carrying a generator label.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    pub label: GeneratorLabel,
}

/// A directed multigraph with generator labels; loops and parallel edges
/// allowed. Vertices carry payloads (finite words, boundary points, or any
/// displayable tag).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledMultigraph<V> {
    d: u32,
    m: usize,
    payloads: Vec<V>,
    edges: Vec<Edge>,
}

impl<V> LabeledMultigraph<V> {
    pub fn new(d: u32, m: usize) -> Self {
        LabeledMultigraph { d, m, payloads: Vec::new(), edges: Vec::new() }
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn add_vertex(&mut self, payload: V) -> usize {
        self.payloads.push(payload);
        self.payloads.len() - 1
    }

    pub fn add_edge(&mut self, src: usize, dst: usize, label: GeneratorLabel) {
        assert!(src < self.payloads.len() && dst < self.payloads.len());
        self.edges.push(Edge { src, dst, label });
    }

    pub fn vertex_count(&self) -> usize {
        self.payloads.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn payload(&self, v: usize) -> &V {
        &self.payloads[v]
    }

    pub fn payloads(&self) -> &[V] {
        &self.payloads
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn loops_at(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.src == v && e.dst == v).count()
    }

    pub fn map_payloads<W>(&self, f: impl Fn(&V) -> W) -> LabeledMultigraph<W> {
        LabeledMultigraph {
            d: self.d,
            m: self.m,
            payloads: self.payloads.iter().map(f).collect(),
            edges: self.edges.clone(),
        }
    }

    /// Adjacency lists of the underlying undirected simple graph; loops
    /// dropped, multiplicities collapsed.
    pub fn simple_adjacency(&self) -> Vec<Vec<usize>> {
        let n = self.payloads.len();
        let mut sets = vec![std::collections::BTreeSet::new(); n];
        for e in &self.edges {
            if e.src != e.dst {
                sets[e.src].insert(e.dst);
                sets[e.dst].insert(e.src);
            }
        }
        sets.into_iter().map(|s| s.into_iter().collect()).collect()
    }
}

impl<V: Eq + Hash> LabeledMultigraph<V> {
    pub fn find_vertex(&self, payload: &V) -> Option<usize> {
        self.payloads.iter().position(|p| p == payload)
    }
}

/// A multigraph with a distinguished root vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedGraph<V> {
    pub graph: LabeledMultigraph<V>,
    pub root: usize,
}

/// Interior vertices of a rooted ball: those strictly inside the radius,
/// where every generator edge is present.
pub fn interior_vertices<V>(ball: &RootedGraph<V>, radius: usize) -> Vec<usize> {
    let dist = bfs_distances(&ball.graph, ball.root);
    (0..ball.graph.vertex_count())
        .filter(|&v| dist[v].map(|x| x < radius).unwrap_or(false))
        .collect()
}

/// Undirected BFS distances from `start`; `None` for unreachable vertices.
pub fn bfs_distances<V>(graph: &LabeledMultigraph<V>, start: usize) -> Vec<Option<usize>> {
    let adj = graph.simple_adjacency();
    let mut dist = vec![None; graph.vertex_count()];
    let mut queue = VecDeque::new();
    dist[start] = Some(0);
    queue.push_back(start);
    while let Some(v) = queue.pop_front() {
        let dv = dist[v].expect("queued vertices have distances");
        for &w in &adj[v] {
            if dist[w].is_none() {
                dist[w] = Some(dv + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Single-vertex block: one vertex with a loop for every nonzero element
/// of `B`.
pub fn loop_block(params: &Params) -> LabeledMultigraph<FiniteWord> {
    let mut g = LabeledMultigraph::new(params.d(), params.m());
    let v = g.add_vertex(FiniteWord::empty(params.d()));
    for b in all_b_elements(params) {
        if !b.is_zero() {
            g.add_edge(v, v, GeneratorLabel::Spinal(b));
        }
    }
    g
}

/// Rotation block: `d` vertices with an `a^j` edge from `i` to `i+j` for
/// every `i` and every `1 <= j <= d-1`.
pub fn rotation_block(params: &Params) -> LabeledMultigraph<FiniteWord> {
    let d = params.d();
    let mut g = LabeledMultigraph::new(d, params.m());
    for i in 0..d {
        g.add_vertex(FiniteWord::new(d, vec![i]).expect("letter in range"));
    }
    for i in 0..d {
        for j in 1..d {
            g.add_edge(i as usize, ((i + j) % d) as usize, GeneratorLabel::Rooted(j));
        }
    }
    g
}

/// Spinal gluing block of an epimorphism: `d` vertices with a `b`-edge from
/// `i` to `i + pi(b)` for every nonzero `b`, so kernel elements contribute
/// loops.
pub fn spinal_block(params: &Params, pi: &Epimorphism) -> Result<LabeledMultigraph<FiniteWord>> {
    let d = params.d();
    if pi.d() != d || pi.m() != params.m() {
        return Err(Error::InvalidParameter("form does not match parameters".into()));
    }
    let mut g = LabeledMultigraph::new(d, params.m());
    for i in 0..d {
        g.add_vertex(FiniteWord::new(d, vec![i]).expect("letter in range"));
    }
    for b in all_b_elements(params) {
        if b.is_zero() {
            continue;
        }
        let j = pi.apply(&b)?;
        for i in 0..d {
            g.add_edge(i as usize, ((i + j) % d) as usize, GeneratorLabel::Spinal(b.clone()));
        }
    }
    Ok(g)
}

/// The Star gluing: `d` copies of `gamma` with all loops at `v` removed,
/// where the image of `v` in copy `i` is identified with the `i`-th vertex
/// of `lambda` and inherits `lambda`'s edges. No edges are identified. The
/// payload of copy `i` appends the letter `i`.
pub fn star(
    lambda: &LabeledMultigraph<FiniteWord>,
    gamma: &LabeledMultigraph<FiniteWord>,
    v: usize,
) -> Result<LabeledMultigraph<FiniteWord>> {
    let d = gamma.d();
    if lambda.vertex_count() != d as usize {
        return Err(Error::InvalidParameter(format!(
            "gluing block has {} vertices, expected {d}",
            lambda.vertex_count()
        )));
    }
    if lambda.d() != d {
        return Err(Error::InvalidParameter("alphabet size mismatch".into()));
    }
    if v >= gamma.vertex_count() {
        return Err(Error::InvalidParameter("glue vertex out of range".into()));
    }
    let n = gamma.vertex_count();
    let mut out = LabeledMultigraph::new(d, gamma.m());
    for i in 0..d {
        for payload in gamma.payloads() {
            out.add_vertex(payload.appended(i)?);
        }
    }
    let copy = |i: u32, original: usize| i as usize * n + original;
    for i in 0..d {
        for e in gamma.edges() {
            if e.src == v && e.dst == v {
                continue;
            }
            out.add_edge(copy(i, e.src), copy(i, e.dst), e.label.clone());
        }
    }
    for e in lambda.edges() {
        out.add_edge(copy(e.src as u32, v), copy(e.dst as u32, v), e.label.clone());
    }
    Ok(out)
}

fn check_level(d: u32, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter("level must be at least 1".into()));
    }
    let size = (d as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
    if size > SIZE_LIMIT {
        return Err(Error::SizeGuard { what: "d^n", actual: size, limit: SIZE_LIMIT });
    }
    Ok(())
}

/// The level-`n` orbital graph built directly from the action: vertices are
/// all words of length `n`, with one labeled edge per generator per vertex.
pub fn level_graph_direct(group: &SpinalGroup, n: usize) -> Result<LabeledMultigraph<FiniteWord>> {
    let d = group.d();
    check_level(d, n)?;
    let gens = group.generators();
    let mut g = LabeledMultigraph::new(d, group.m());
    let words = words_of_length(d, n);
    let index: HashMap<FiniteWord, usize> =
        words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    for w in &words {
        g.add_vertex(w.clone());
    }
    for (i, w) in words.iter().enumerate() {
        for s in &gens {
            let target = act_word(group, s, w)?;
            g.add_edge(i, index[&target], s.clone());
        }
    }
    Ok(g)
}

/// The level-`n` graph assembled recursively: the level-1 graph is the
/// rotation block with a loop per nonzero element of `B` at every vertex
/// (the literal one-vertex gluing would strip those loops, contradicting
/// the stabilizer structure of the first level), and each further level is
/// a Star of the previous one over the spinal block of the appropriate
/// epimorphism. Matches [`level_graph_direct`] edge for edge.
pub fn level_graph_recursive(
    group: &SpinalGroup,
    n: usize,
) -> Result<LabeledMultigraph<FiniteWord>> {
    let d = group.d();
    check_level(d, n)?;
    let params = group.params();
    let mut g = rotation_block(params);
    for v in 0..d as usize {
        for b in all_b_elements(params) {
            if !b.is_zero() {
                g.add_edge(v, v, GeneratorLabel::Spinal(b));
            }
        }
    }
    for level in 2..=n {
        let lambda = spinal_block(params, group.omega_at(level - 2))?;
        let mut glue_letters = vec![d - 1; level - 2];
        glue_letters.push(0);
        let glue_word = FiniteWord::new(d, glue_letters)?;
        let glue = g
            .find_vertex(&glue_word)
            .ok_or_else(|| Error::InvalidParameter("glue vertex missing".into()))?;
        g = star(&lambda, &g, glue)?;
    }
    Ok(g)
}

/// The level-`n` graph with all loops removed at `(d-1)^(n-1) 0`, and at
/// `(d-1)^n` too unless `tail_fixed`. This is the shape the level copies
/// inside boundary graphs take.
pub fn pruned_level_graph(
    group: &SpinalGroup,
    n: usize,
    tail_fixed: bool,
) -> Result<LabeledMultigraph<FiniteWord>> {
    let d = group.d();
    let mut g = level_graph_direct(group, n)?;
    let mut letters = vec![d - 1; n - 1];
    letters.push(0);
    let cut = g.find_vertex(&FiniteWord::new(d, letters)?).expect("vertex exists");
    let spine = g
        .find_vertex(&FiniteWord::repeated(d, d - 1, n)?)
        .expect("vertex exists");
    g.edges.retain(|e| {
        if e.src == e.dst {
            if e.src == cut {
                return false;
            }
            if e.src == spine && !tail_fixed {
                return false;
            }
        }
        true
    });
    Ok(g)
}

/// Maximal undirected eccentricity over all vertices; labels, directions,
/// multiplicities and loops play no role.
pub fn diameter<V>(graph: &LabeledMultigraph<V>) -> Result<usize> {
    let n = graph.vertex_count();
    if n == 0 {
        return Err(Error::InvalidParameter("empty graph".into()));
    }
    let adj = graph.simple_adjacency();
    let mut best = 0;
    let mut dist = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for start in 0..n {
        dist.iter_mut().for_each(|x| *x = usize::MAX);
        dist[start] = 0;
        queue.push_back(start);
        let mut reached = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    best = best.max(dist[w]);
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        if reached < n {
            return Err(Error::Disconnected);
        }
    }
    Ok(best)
}

/// Exact equality up to the payload-respecting vertex bijection: payload
/// sets must coincide and the edge multisets, translated to payload space,
/// must match with labels, directions and multiplicities. Payloads must be
/// unique within each graph.
pub fn equal_labeled<V: Eq + Hash + Ord + Clone + fmt::Debug>(
    g1: &LabeledMultigraph<V>,
    g2: &LabeledMultigraph<V>,
) -> bool {
    if g1.d != g2.d || g1.m != g2.m {
        return false;
    }
    if g1.vertex_count() != g2.vertex_count() || g1.edge_count() != g2.edge_count() {
        return false;
    }
    let index2: HashMap<&V, usize> =
        g2.payloads.iter().enumerate().map(|(i, p)| (p, i)).collect();
    if index2.len() != g2.vertex_count() {
        return false;
    }
    debug_assert_eq!(
        g1.payloads.iter().collect::<std::collections::HashSet<_>>().len(),
        g1.vertex_count(),
        "payloads must be unique"
    );
    if g1.payloads.iter().any(|p| !index2.contains_key(p)) {
        return false;
    }
    let translate = |g: &LabeledMultigraph<V>| {
        let mut edges: Vec<(V, V, GeneratorLabel)> = g
            .edges
            .iter()
            .map(|e| (g.payloads[e.src].clone(), g.payloads[e.dst].clone(), e.label.clone()))
            .collect();
        edges.sort();
        edges
    };
    translate(g1) == translate(g2)
}

#[derive(Serialize, Deserialize)]
struct VertexDto {
    id: usize,
    word: String,
}

#[derive(Serialize, Deserialize)]
struct EdgeDto {
    src: usize,
    dst: usize,
    label: String,
}

#[derive(Serialize, Deserialize)]
struct GraphDto {
    d: u32,
    m: usize,
    vertices: Vec<VertexDto>,
    edges: Vec<EdgeDto>,
    root: Option<usize>,
}

/// JSON form with the fixed key set `d`, `m`, `vertices` (`id`, `word`),
/// `edges` (`src`, `dst`, `label`) and `root`.
pub fn to_json<V: fmt::Display>(
    graph: &LabeledMultigraph<V>,
    root: Option<usize>,
) -> Result<String> {
    let dto = GraphDto {
        d: graph.d,
        m: graph.m,
        vertices: graph
            .payloads
            .iter()
            .enumerate()
            .map(|(id, p)| VertexDto { id, word: p.to_string() })
            .collect(),
        edges: graph
            .edges
            .iter()
            .map(|e| EdgeDto { src: e.src, dst: e.dst, label: e.label.to_string() })
            .collect(),
        root,
    };
    serde_json::to_string(&dto).map_err(|e| Error::Parse(e.to_string()))
}

/// Parses the JSON form back; payloads come back as their display strings.
pub fn from_json(s: &str) -> Result<(LabeledMultigraph<String>, Option<usize>)> {
    let dto: GraphDto = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    let mut g = LabeledMultigraph::new(dto.d, dto.m);
    for (i, v) in dto.vertices.iter().enumerate() {
        if v.id != i {
            return Err(Error::Parse(format!("vertex ids must be 0..n in order, got {}", v.id)));
        }
        g.add_vertex(v.word.clone());
    }
    for e in &dto.edges {
        if e.src >= g.vertex_count() || e.dst >= g.vertex_count() {
            return Err(Error::Parse("edge endpoint out of range".into()));
        }
        let label = GeneratorLabel::parse(&e.label)?;
        match &label {
            GeneratorLabel::Rooted(j) => {
                if *j == 0 || *j >= dto.d {
                    return Err(Error::Parse(format!("label exponent {j} out of range")));
                }
            }
            GeneratorLabel::Spinal(b) => {
                if b.coords().len() != dto.m || b.coords().iter().any(|&c| c >= dto.d) {
                    return Err(Error::Parse("label coordinates out of range".into()));
                }
            }
        }
        g.add_edge(e.src, e.dst, label);
    }
    if let Some(r) = dto.root {
        if r >= g.vertex_count() {
            return Err(Error::Parse("root out of range".into()));
        }
    }
    Ok((g, dto.root))
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// DOT form of the directed multigraph; the root, when given, is drawn
/// double-circled.
pub fn to_dot<V: fmt::Display>(graph: &LabeledMultigraph<V>, root: Option<usize>) -> String {
    let mut out = String::from("digraph schreier {\n");
    for (i, p) in graph.payloads.iter().enumerate() {
        let shape = if root == Some(i) { ", shape=doublecircle" } else { "" };
        out.push_str(&format!("  v{} [label=\"{}\"{}];\n", i, dot_escape(&p.to_string()), shape));
    }
    for e in &graph.edges {
        out.push_str(&format!(
            "  v{} -> v{} [label=\"{}\"];\n",
            e.src,
            e.dst,
            dot_escape(&e.label.to_string())
        ));
    }
    out.push_str("}\n");
    out
}
