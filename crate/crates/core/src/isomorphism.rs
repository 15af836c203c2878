//! The compatibility relation between boundary points, the explicit vertex
//! transport realizing it, labeled and unlabeled rooted isomorphism
//! deciders, and the unrooted witness search.
//!
//! Two points are compatible when their zeros sit at the same positions and
//! the words between consecutive zeros fall in the same class, where the
//! class of a zero-free word is the length of its maximal trailing run of
//! the letter `d-1`. On eventually periodic points compatibility is decided
//! exactly over one certified period window.

use std::collections::{HashMap, VecDeque};

use num_integer::Integer;

use crate::algebra::SpinalGroup;
use crate::boundary::orbit_ball;
use crate::error::{Error, Result};
use crate::graph::{LabeledMultigraph, RootedGraph};
use crate::words::{words_of_length, BoundaryPoint, FiniteWord};

/// Vertex budget for the backtracking isomorphism oracle.
pub const BACKTRACK_LIMIT: usize = 5000;

/// Decomposition of a point at its zeros: a run of leading blocks followed
/// by either a repeating cycle of blocks or a single zero-free infinite
/// tail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    /// Blocks before the repeating part, each followed by a zero.
    pub head: Vec<FiniteWord>,
    pub tail: BlockTail,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BlockTail {
    /// Infinitely many zeros: these blocks repeat forever, each followed by
    /// a zero.
    Cycle(Vec<FiniteWord>),
    /// No zeros remain: the final block is this zero-free infinite word.
    Infinite(BoundaryPoint),
}

/// Outcome of [`compatible`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatibilityVerdict {
    pub compatible: bool,
    /// Index of the first block where the structures differ.
    pub witness_index: Option<usize>,
}

/// Outcome of [`unrooted_witness`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessOutcome {
    Found(BoundaryPoint),
    /// The periodic tails disagree structurally at infinitely many
    /// positions, so no cofinal point can ever be compatible.
    NoneCertified,
    /// Nothing within the search horizon; existence beyond it is open.
    NoneWithinHorizon,
}

/// Position of the next zero at or after `from`, scanning one certified
/// window; `None` means the point has no zeros from `from` on.
fn next_zero(xi: &BoundaryPoint, from: usize) -> Option<usize> {
    let horizon = from + xi.preperiod().len() + 2 * xi.period().len();
    (from..horizon).find(|&n| xi.letter(n) == 0)
}

/// Splits a point at its zeros into the eventually periodic block
/// structure.
pub fn zero_blocks(xi: &BoundaryPoint) -> BlockDecomposition {
    let d = xi.d();
    let word = |range: std::ops::Range<usize>| {
        FiniteWord::new(d, range.map(|n| xi.letter(n)).collect()).expect("letters in range")
    };
    if xi.period().contains(&0) {
        // first zero inside the periodic regime; blocks repeat from there
        let k = xi.preperiod().len();
        let l = xi.period().len();
        let z0 = (k..k + l).find(|&n| xi.letter(n) == 0).expect("period has a zero");
        let mut head = Vec::new();
        let mut p = 0;
        while p <= z0 {
            let z = next_zero(xi, p).expect("zeros exist up to z0");
            head.push(word(p..z));
            p = z + 1;
        }
        let mut cycle = Vec::new();
        while p <= z0 + l {
            let z = next_zero(xi, p).expect("zeros repeat periodically");
            cycle.push(word(p..z));
            p = z + 1;
        }
        BlockDecomposition { head, tail: BlockTail::Cycle(cycle) }
    } else {
        // all zeros, if any, sit in the preperiod
        let last_zero = (0..xi.preperiod().len()).rev().find(|&n| xi.letter(n) == 0);
        let mut head = Vec::new();
        let mut p = 0;
        if let Some(last) = last_zero {
            while p <= last {
                let z = next_zero(xi, p).expect("zeros exist up to last");
                head.push(word(p..z));
                p = z + 1;
            }
        }
        BlockDecomposition { head, tail: BlockTail::Infinite(xi.shift(p)) }
    }
}

/// Reassembles a decomposition back into its point.
pub fn assemble_blocks(d: u32, dec: &BlockDecomposition) -> Result<BoundaryPoint> {
    let mut prefix: Vec<u32> = Vec::new();
    for block in &dec.head {
        prefix.extend_from_slice(block.letters());
        prefix.push(0);
    }
    match &dec.tail {
        BlockTail::Infinite(tail) => {
            let mut u = prefix;
            u.extend_from_slice(tail.preperiod());
            BoundaryPoint::new(d, &u, tail.period())
        }
        BlockTail::Cycle(cycle) => {
            let mut period: Vec<u32> = Vec::new();
            for block in cycle {
                period.extend_from_slice(block.letters());
                period.push(0);
            }
            BoundaryPoint::new(d, &prefix, &period)
        }
    }
}

/// Class of a zero-free word: the length of its maximal suffix of the
/// letter `d-1`; equal to the length exactly for the full run.
pub fn block_class(w: &FiniteWord) -> Result<usize> {
    if w.letters().contains(&0) {
        return Err(Error::InvalidParameter("block contains a zero".into()));
    }
    let top = w.d() - 1;
    Ok(w.letters().iter().rev().take_while(|&&l| l == top).count())
}

struct BlockScan {
    /// Block index and structural description of each scanned block.
    blocks: Vec<(usize, usize, Option<usize>)>, // (start, len, class); class None for infinite
}

/// First position where the zero patterns of two points differ, scanning
/// one shared period window, or `None` if the patterns agree everywhere.
fn first_zero_mismatch(xi: &BoundaryPoint, eta: &BoundaryPoint) -> Option<usize> {
    let k = xi.preperiod().len().max(eta.preperiod().len());
    let l = xi.period().len().lcm(&eta.period().len());
    (0..k + l).find(|&n| (xi.letter(n) == 0) != (eta.letter(n) == 0))
}

fn scan_blocks(xi: &BoundaryPoint, horizon: usize) -> BlockScan {
    let mut blocks = Vec::new();
    let mut p = 0;
    while p < horizon {
        match next_zero(xi, p) {
            Some(z) => {
                let w = FiniteWord::new(xi.d(), (p..z).map(|n| xi.letter(n)).collect())
                    .expect("letters in range");
                blocks.push((p, z - p, Some(block_class(&w).expect("zero-free"))));
                p = z + 1;
            }
            None => {
                blocks.push((p, usize::MAX, None));
                break;
            }
        }
    }
    BlockScan { blocks }
}

/// Decides compatibility exactly. Zero positions are compared over one
/// combined period window; every block starting inside the window is
/// completed and classified, which certifies all later blocks because they
/// repeat the scanned ones letter for letter.
pub fn compatible(xi: &BoundaryPoint, eta: &BoundaryPoint) -> CompatibilityVerdict {
    if let Some(n) = first_zero_mismatch(xi, eta) {
        let blocks_before = (0..n).filter(|&i| xi.letter(i) == 0).count();
        return CompatibilityVerdict { compatible: false, witness_index: Some(blocks_before) };
    }
    let k = xi.preperiod().len().max(eta.preperiod().len());
    let l = xi.period().len().lcm(&eta.period().len());
    let horizon = k + l;
    let sx = scan_blocks(xi, horizon);
    let se = scan_blocks(eta, horizon);
    // identical zero patterns give identical block layouts
    debug_assert_eq!(sx.blocks.len(), se.blocks.len());
    for (idx, (bx, be)) in sx.blocks.iter().zip(&se.blocks).enumerate() {
        debug_assert_eq!(bx.0, be.0);
        debug_assert_eq!(bx.1, be.1);
        if bx.2 != be.2 {
            return CompatibilityVerdict { compatible: false, witness_index: Some(idx) };
        }
    }
    CompatibilityVerdict { compatible: true, witness_index: None }
}

/// Letter position by which an incompatibility is visible: the first zero
/// mismatch, or the final letter of the first block whose classes differ.
pub fn witness_letter_position(xi: &BoundaryPoint, eta: &BoundaryPoint) -> Option<usize> {
    if let Some(n) = first_zero_mismatch(xi, eta) {
        return Some(n);
    }
    let verdict = compatible(xi, eta);
    let idx = verdict.witness_index?;
    let k = xi.preperiod().len().max(eta.preperiod().len());
    let l = xi.period().len().lcm(&eta.period().len());
    let scan = scan_blocks(xi, k + l);
    let (start, len, _) = scan.blocks[idx];
    Some(start + len.saturating_sub(1))
}

/// The vertex map of the canonical rooted isomorphism from the orbit of
/// `xi` to the orbit of `eta`: `xi` itself goes to `eta`; any other cofinal
/// point keeps its letters up to the discrepancy, where the letter is moved
/// through the transposition exchanging the two roots' letters, and
/// continues with `eta`'s tail.
pub fn transport(
    xi: &BoundaryPoint,
    eta: &BoundaryPoint,
    point: &BoundaryPoint,
) -> Result<BoundaryPoint> {
    let r = xi.discrepancy(point).ok_or(Error::NotCofinal)?;
    if r == 0 {
        return Ok(eta.clone());
    }
    let a = xi.letter(r - 1);
    let b = eta.letter(r - 1);
    let x = point.letter(r - 1);
    let swapped = if x == a {
        b
    } else if x == b {
        a
    } else {
        x
    };
    let mut letters: Vec<u32> = (0..r - 1).map(|n| point.letter(n)).collect();
    letters.push(swapped);
    eta.shift(r).prepended_word(&FiniteWord::new(xi.d(), letters)?)
}

fn undirected_edge_multiset<V>(graph: &LabeledMultigraph<V>) -> Vec<(usize, usize)> {
    let mut edges: Vec<(usize, usize)> = graph
        .edges()
        .iter()
        .map(|e| (e.src.min(e.dst), e.src.max(e.dst)))
        .collect();
    edges.sort_unstable();
    edges
}

/// Checks that the transport map restricted to the radius-`r` ball at `xi`
/// is a bijection onto the radius-`r` ball at `eta` preserving undirected
/// unlabeled adjacency with multiplicities and loops. The transport
/// preserves distance to the root, so truncation commutes with it and the
/// whole ball can be compared exactly.
pub fn verify_transport_ball(
    group: &SpinalGroup,
    xi: &BoundaryPoint,
    eta: &BoundaryPoint,
    radius: usize,
) -> Result<bool> {
    if !compatible(xi, eta).compatible {
        return Err(Error::NotCompatible);
    }
    let b1 = orbit_ball(group, xi, radius)?;
    let b2 = orbit_ball(group, eta, radius)?;
    if b1.graph.vertex_count() != b2.graph.vertex_count() {
        return Ok(false);
    }
    let index2: HashMap<&BoundaryPoint, usize> = b2
        .graph
        .payloads()
        .iter()
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect();
    let mut image = Vec::with_capacity(b1.graph.vertex_count());
    for p in b1.graph.payloads() {
        match index2.get(&transport(xi, eta, p)?) {
            Some(&i) => image.push(i),
            None => return Ok(false),
        }
    }
    let mut seen = vec![false; b2.graph.vertex_count()];
    for &i in &image {
        if seen[i] {
            return Ok(false);
        }
        seen[i] = true;
    }
    if image[b1.root] != b2.root {
        return Ok(false);
    }
    let mut translated: Vec<(usize, usize)> = b1
        .graph
        .edges()
        .iter()
        .map(|e| {
            let (s, t) = (image[e.src], image[e.dst]);
            (s.min(t), s.max(t))
        })
        .collect();
    translated.sort_unstable();
    Ok(translated == undirected_edge_multiset(&b2.graph))
}

/// Decides label-preserving rooted isomorphism of two deterministic
/// labeled graphs by parallel traversal from the roots. Vertices must have
/// at most one out-edge per label; both graphs must be reachable from
/// their roots along out-edges (spinal generating sets are symmetric, so
/// orbital balls always are). Truncated edges must be missing on both
/// sides at matched vertices, which is exactly agreement of equal-radius
/// balls.
pub fn labeled_rooted_iso<V1, V2>(
    g1: &RootedGraph<V1>,
    g2: &RootedGraph<V2>,
) -> Result<Option<Vec<usize>>> {
    if g1.graph.d() != g2.graph.d() || g1.graph.m() != g2.graph.m() {
        return Ok(None);
    }
    fn out_map<V>(
        g: &LabeledMultigraph<V>,
    ) -> Result<Vec<HashMap<crate::action::GeneratorLabel, usize>>> {
        let mut out = vec![HashMap::new(); g.vertex_count()];
        for e in g.edges() {
            if out[e.src].insert(e.label.clone(), e.dst).is_some() {
                return Err(Error::NondeterministicLabels);
            }
        }
        Ok(out)
    }
    let out1 = out_map(&g1.graph)?;
    let out2 = out_map(&g2.graph)?;
    if g1.graph.vertex_count() != g2.graph.vertex_count() {
        return Ok(None);
    }
    let n = g1.graph.vertex_count();
    let mut map1 = vec![usize::MAX; n];
    let mut map2 = vec![usize::MAX; n];
    map1[g1.root] = g2.root;
    map2[g2.root] = g1.root;
    let mut queue = VecDeque::new();
    queue.push_back((g1.root, g2.root));
    let mut matched = 1;
    while let Some((u, w)) = queue.pop_front() {
        if out1[u].len() != out2[w].len() {
            return Ok(None);
        }
        for (label, &u2) in &out1[u] {
            let Some(&w2) = out2[w].get(label) else {
                return Ok(None);
            };
            if map1[u2] != usize::MAX || map2[w2] != usize::MAX {
                if map1[u2] != w2 {
                    return Ok(None);
                }
            } else {
                map1[u2] = w2;
                map2[w2] = u2;
                matched += 1;
                queue.push_back((u2, w2));
            }
        }
    }
    if matched != n {
        return Ok(None);
    }
    Ok(Some(map1))
}

struct UndirectedView {
    n: usize,
    neighbors: Vec<Vec<usize>>,
    mult: HashMap<(usize, usize), usize>,
    loops: Vec<usize>,
}

impl UndirectedView {
    fn build<V>(graph: &LabeledMultigraph<V>) -> Self {
        let n = graph.vertex_count();
        let mut mult: HashMap<(usize, usize), usize> = HashMap::new();
        let mut loops = vec![0usize; n];
        for e in graph.edges() {
            if e.src == e.dst {
                loops[e.src] += 1;
            } else {
                *mult.entry((e.src.min(e.dst), e.src.max(e.dst))).or_default() += 1;
            }
        }
        let mut sets = vec![std::collections::BTreeSet::new(); n];
        for &(a, b) in mult.keys() {
            sets[a].insert(b);
            sets[b].insert(a);
        }
        let neighbors = sets.into_iter().map(|s| s.into_iter().collect()).collect();
        UndirectedView { n, neighbors, mult, loops }
    }

    fn multiplicity(&self, a: usize, b: usize) -> usize {
        *self.mult.get(&(a.min(b), a.max(b))).unwrap_or(&0)
    }
}

fn root_distances(view: &UndirectedView, root: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; view.n];
    let mut queue = VecDeque::new();
    dist[root] = 0;
    queue.push_back(root);
    while let Some(v) = queue.pop_front() {
        for &w in &view.neighbors[v] {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Joint color refinement of two graphs in one shared class-id space, so
/// resulting colors are directly comparable across the graphs. Distance to
/// the root seeds the partition (it is invariant under rooted isomorphism),
/// then neighborhoods refine it until the class count stops growing.
fn joint_refinement(
    v1: &UndirectedView,
    root1: usize,
    v2: &UndirectedView,
    root2: usize,
) -> (Vec<usize>, Vec<usize>) {
    use std::collections::BTreeMap;
    let seed = |view: &UndirectedView, root: usize| -> Vec<(usize, usize, Vec<usize>)> {
        let dist = root_distances(view, root);
        (0..view.n)
            .map(|v| {
                let mut mults: Vec<usize> =
                    view.neighbors[v].iter().map(|&w| view.multiplicity(v, w)).collect();
                mults.sort_unstable();
                (dist[v], view.loops[v], mults)
            })
            .collect()
    };
    let s1 = seed(v1, root1);
    let s2 = seed(v2, root2);
    let mut ids: BTreeMap<&(usize, usize, Vec<usize>), usize> = BTreeMap::new();
    for sig in s1.iter().chain(&s2) {
        let next = ids.len();
        ids.entry(sig).or_insert(next);
    }
    let mut c1: Vec<usize> = s1.iter().map(|s| ids[s]).collect();
    let mut c2: Vec<usize> = s2.iter().map(|s| ids[s]).collect();
    let mut classes = ids.len();
    // signature of a vertex: its class plus the sorted classes and
    // multiplicities of its neighbors
    type Signature = (usize, Vec<(usize, usize)>);
    loop {
        let step = |view: &UndirectedView, colors: &[usize]| -> Vec<Signature> {
            (0..view.n)
                .map(|v| {
                    let mut sig: Vec<(usize, usize)> = view.neighbors[v]
                        .iter()
                        .map(|&w| (colors[w], view.multiplicity(v, w)))
                        .collect();
                    sig.sort_unstable();
                    (colors[v], sig)
                })
                .collect()
        };
        let t1 = step(v1, &c1);
        let t2 = step(v2, &c2);
        let mut ids: BTreeMap<&Signature, usize> = BTreeMap::new();
        for sig in t1.iter().chain(&t2) {
            let next = ids.len();
            ids.entry(sig).or_insert(next);
        }
        // each round only splits classes, so a stable count is a fixed point
        if ids.len() == classes {
            return (c1, c2);
        }
        classes = ids.len();
        c1 = t1.iter().map(|s| ids[s]).collect();
        c2 = t2.iter().map(|s| ids[s]).collect();
    }
}

fn sorted_multiset(values: &[usize]) -> Vec<usize> {
    let mut v = values.to_vec();
    v.sort_unstable();
    v
}

/// Decides root-preserving isomorphism of the undirected unlabeled
/// multigraphs underlying two rooted graphs, preserving edge
/// multiplicities and loop counts. Color refinement seeded with the
/// distance to the root narrows candidates; backtracking settles the rest.
/// Completely independent of the transport map.
pub fn unlabeled_rooted_iso<V1, V2>(
    g1: &RootedGraph<V1>,
    g2: &RootedGraph<V2>,
) -> Result<Option<Vec<usize>>> {
    let n = g1.graph.vertex_count();
    if n.max(g2.graph.vertex_count()) > BACKTRACK_LIMIT {
        return Err(Error::SizeGuard {
            what: "backtracking vertices",
            actual: n.max(g2.graph.vertex_count()) as u64,
            limit: BACKTRACK_LIMIT as u64,
        });
    }
    if n != g2.graph.vertex_count() || g1.graph.edge_count() != g2.graph.edge_count() {
        return Ok(None);
    }
    let v1 = UndirectedView::build(&g1.graph);
    let v2 = UndirectedView::build(&g2.graph);
    let (c1, c2) = joint_refinement(&v1, g1.root, &v2, g2.root);
    if sorted_multiset(&c1) != sorted_multiset(&c2) {
        return Ok(None);
    }
    if c1[g1.root] != c2[g2.root] {
        return Ok(None);
    }
    // candidate pools by color
    let mut pool: HashMap<usize, Vec<usize>> = HashMap::new();
    for (w, &c) in c2.iter().enumerate() {
        pool.entry(c).or_default().push(w);
    }
    // order: BFS from the root keeps the mapped part connected
    let order = {
        let mut order = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        seen[g1.root] = true;
        queue.push_back(g1.root);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &v1.neighbors[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        // unreachable vertices, if any, go last
        for (v, &reached) in seen.iter().enumerate() {
            if !reached {
                order.push(v);
            }
        }
        order
    };

    struct Search<'a> {
        v1: &'a UndirectedView,
        v2: &'a UndirectedView,
        c1: &'a [usize],
        c2: &'a [usize],
        pool: &'a HashMap<usize, Vec<usize>>,
        order: &'a [usize],
        map: Vec<usize>,
        used: Vec<bool>,
        root_pair: (usize, usize),
    }

    impl Search<'_> {
        fn consistent(&self, v: usize, w: usize) -> bool {
            if self.c1[v] != self.c2[w] || self.v1.loops[v] != self.v2.loops[w] {
                return false;
            }
            let mut mapped_neighbors = 0;
            for &u in &self.v1.neighbors[v] {
                if self.map[u] != usize::MAX {
                    mapped_neighbors += 1;
                    if self.v1.multiplicity(v, u) != self.v2.multiplicity(w, self.map[u]) {
                        return false;
                    }
                }
            }
            let mut mapped_neighbors_w = 0;
            for &x in &self.v2.neighbors[w] {
                if self.used[x] {
                    mapped_neighbors_w += 1;
                }
            }
            mapped_neighbors == mapped_neighbors_w
        }

        fn solve(&mut self, depth: usize) -> bool {
            if depth == self.order.len() {
                return true;
            }
            let v = self.order[depth];
            if v == self.root_pair.0 {
                let w = self.root_pair.1;
                if !self.used[w] && self.consistent(v, w) {
                    self.map[v] = w;
                    self.used[w] = true;
                    if self.solve(depth + 1) {
                        return true;
                    }
                    self.map[v] = usize::MAX;
                    self.used[w] = false;
                }
                return false;
            }
            for &w in &self.pool[&self.c1[v]] {
                if !self.used[w] && self.consistent(v, w) {
                    self.map[v] = w;
                    self.used[w] = true;
                    if self.solve(depth + 1) {
                        return true;
                    }
                    self.map[v] = usize::MAX;
                    self.used[w] = false;
                }
            }
            false
        }
    }

    let mut search = Search {
        v1: &v1,
        v2: &v2,
        c1: &c1,
        c2: &c2,
        pool: &pool,
        order: &order,
        map: vec![usize::MAX; n],
        used: vec![false; n],
        root_pair: (g1.root, g2.root),
    };
    if search.solve(0) {
        Ok(Some(search.map))
    } else {
        Ok(None)
    }
}

/// Whether the periodic regimes of two points disagree structurally, which
/// rules out compatibility with every cofinal modification of the second.
fn tails_incompatible_forever(xi: &BoundaryPoint, eta: &BoundaryPoint) -> bool {
    let k = xi.preperiod().len().max(eta.preperiod().len());
    let l = xi.period().len().lcm(&eta.period().len());
    let base = k + l;
    // zero-pattern disagreement inside one periodic window recurs forever
    if (base..base + l).any(|n| (xi.letter(n) == 0) != (eta.letter(n) == 0)) {
        return true;
    }
    // identical zero patterns: compare classes of blocks starting inside
    // the window; each repeats every l letters
    let mut p = base;
    while p < base + l {
        match (next_zero(xi, p), next_zero(eta, p)) {
            (Some(z1), Some(z2)) => {
                if z1 != z2 {
                    return true;
                }
                let w1 = FiniteWord::new(xi.d(), (p..z1).map(|n| xi.letter(n)).collect())
                    .expect("letters in range");
                let w2 = FiniteWord::new(eta.d(), (p..z2).map(|n| eta.letter(n)).collect())
                    .expect("letters in range");
                let (c1, c2) = (block_class(&w1), block_class(&w2));
                if c1.expect("zero-free") != c2.expect("zero-free") {
                    return true;
                }
                p = z1 + 1;
            }
            (None, None) => return false,
            _ => return true,
        }
    }
    false
}

/// Searches the cofinality class of `eta` for a point compatible with
/// `xi`, rewriting the first `k` letters for `k` ascending and candidate
/// words in lexicographic order. A certified negative means the periodic
/// tails mismatch at infinitely many positions, so no witness exists at
/// any horizon.
pub fn unrooted_witness(
    xi: &BoundaryPoint,
    eta: &BoundaryPoint,
    k_max: usize,
) -> Result<WitnessOutcome> {
    let d = xi.d();
    if (d as u64).checked_pow(k_max as u32).map(|s| s > crate::algebra::SIZE_LIMIT).unwrap_or(true)
    {
        return Err(Error::SizeGuard {
            what: "d^k_max",
            actual: u64::MAX,
            limit: crate::algebra::SIZE_LIMIT,
        });
    }
    for k in 0..=k_max {
        let tail = eta.shift(k);
        for w in words_of_length(d, k) {
            let candidate = tail.prepended_word(&w)?;
            if compatible(xi, &candidate).compatible {
                return Ok(WitnessOutcome::Found(candidate));
            }
        }
    }
    if tails_incompatible_forever(xi, eta) {
        Ok(WitnessOutcome::NoneCertified)
    } else {
        Ok(WitnessOutcome::NoneWithinHorizon)
    }
}
