//! Finite balls of the infinite orbital graphs, their level-copy and
//! spinal-block structure, ends classification, and the non-orbital limit
//! graphs.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::action::{act_point, fixed_by_all, GeneratorLabel};
use crate::algebra::{all_b_elements, Epimorphism, SpinalGroup, SIZE_LIMIT};
use crate::error::{Error, Result};
use crate::graph::{bfs_distances, LabeledMultigraph, RootedGraph};
use crate::words::{words_of_length, BoundaryPoint, FiniteWord};

/// Number of ends of an orbital graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ends {
    One,
    Two,
}

impl Ends {
    pub fn count(self) -> usize {
        match self {
            Ends::One => 1,
            Ends::Two => 2,
        }
    }
}

fn guard_vertices(count: usize) -> Result<()> {
    if count as u64 > SIZE_LIMIT {
        return Err(Error::SizeGuard {
            what: "ball vertices",
            actual: count as u64,
            limit: SIZE_LIMIT,
        });
    }
    Ok(())
}

type BallParts<T> = (Vec<T>, Vec<(usize, usize, GeneratorLabel)>, Vec<usize>);

/// Generic two-phase ball builder: BFS collects every vertex within the
/// radius, then all edges between collected vertices are added, loops
/// included. `neighbors` must enumerate one target per generator.
fn build_ball<T, F>(root: T, radius: usize, neighbors: F) -> Result<BallParts<T>>
where
    T: Clone + Eq + std::hash::Hash,
    F: Fn(&T) -> Result<Vec<(GeneratorLabel, T)>>,
{
    let mut index: HashMap<T, usize> = HashMap::new();
    let mut payloads = Vec::new();
    let mut dist = Vec::new();
    index.insert(root.clone(), 0);
    payloads.push(root);
    dist.push(0);
    let mut queue = VecDeque::new();
    queue.push_back(0usize);
    while let Some(v) = queue.pop_front() {
        if dist[v] == radius {
            continue;
        }
        let next = dist[v] + 1;
        let current = payloads[v].clone();
        for (_, target) in neighbors(&current)? {
            if !index.contains_key(&target) {
                let id = payloads.len();
                index.insert(target.clone(), id);
                payloads.push(target);
                dist.push(next);
                guard_vertices(payloads.len())?;
                queue.push_back(id);
            }
        }
    }
    let mut edges = Vec::new();
    for (v, payload) in payloads.iter().enumerate() {
        for (label, target) in neighbors(payload)? {
            if let Some(&w) = index.get(&target) {
                edges.push((v, w, label));
            }
        }
    }
    Ok((payloads, edges, dist))
}

/// The radius-`r` ball of the orbital graph rooted at `xi`: every boundary
/// point within graph distance `r`, with all generator edges (loops
/// included) between collected points.
pub fn orbit_ball(
    group: &SpinalGroup,
    xi: &BoundaryPoint,
    radius: usize,
) -> Result<RootedGraph<BoundaryPoint>> {
    if xi.d() != group.d() {
        return Err(Error::InvalidParameter("alphabet size mismatch".into()));
    }
    let gens = group.generators();
    let neighbors = |p: &BoundaryPoint| -> Result<Vec<(GeneratorLabel, BoundaryPoint)>> {
        gens.iter()
            .map(|s| Ok((s.clone(), act_point(group, s, p)?)))
            .collect()
    };
    let (payloads, edges, _) = build_ball(xi.clone(), radius, neighbors)?;
    let mut graph = LabeledMultigraph::new(group.d(), group.m());
    for p in payloads {
        graph.add_vertex(p);
    }
    for (src, dst, label) in edges {
        graph.add_edge(src, dst, label);
    }
    Ok(RootedGraph { graph, root: 0 })
}

fn level_copy_points(
    group: &SpinalGroup,
    xi: &BoundaryPoint,
    n: usize,
) -> Result<Vec<BoundaryPoint>> {
    let tail = xi.shift(n);
    words_of_length(group.d(), n)
        .iter()
        .map(|w| tail.prepended_word(w))
        .collect()
}

/// The level-`n` copy around `xi` inside its orbital graph: the subgraph
/// induced on the `d^n` points sharing the tail `σ^n(xi)`, with all loops
/// removed at `(d-1)^(n-1) 0 σ^n(xi)`, and at `(d-1)^n σ^n(xi)` too unless
/// the tail is fixed by every spinal element. Rooted at `xi`.
pub fn level_copy(
    group: &SpinalGroup,
    xi: &BoundaryPoint,
    n: usize,
) -> Result<RootedGraph<BoundaryPoint>> {
    let d = group.d();
    if xi.d() != d {
        return Err(Error::InvalidParameter("alphabet size mismatch".into()));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("level must be at least 1".into()));
    }
    let size = (d as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
    if size > SIZE_LIMIT {
        return Err(Error::SizeGuard { what: "d^n", actual: size, limit: SIZE_LIMIT });
    }
    let tail = xi.shift(n);
    let points = level_copy_points(group, xi, n)?;
    let index: HashMap<&BoundaryPoint, usize> =
        points.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut graph = LabeledMultigraph::new(d, group.m());
    for p in &points {
        graph.add_vertex(p.clone());
    }
    let gens = group.generators();
    let mut cut_letters = vec![d - 1; n - 1];
    cut_letters.push(0);
    let cut = tail.prepended_word(&FiniteWord::new(d, cut_letters)?)?;
    let spine_vertex = tail.prepended_word(&FiniteWord::repeated(d, d - 1, n)?)?;
    let keep_spine_loops = fixed_by_all(group, &tail);
    for (i, p) in points.iter().enumerate() {
        for s in &gens {
            let target = act_point(group, s, p)?;
            if let Some(&j) = index.get(&target) {
                if i == j && (*p == cut || (*p == spine_vertex && !keep_spine_loops)) {
                    continue;
                }
                graph.add_edge(i, j, s.clone());
            }
        }
    }
    let root = index[xi];
    Ok(RootedGraph { graph, root })
}

/// The `d`-vertex spinal block `(d-1)^n 0 X σ^(n+2)(xi)` inside the orbital
/// graph, carrying only spinal edges.
pub fn spinal_block_at(
    group: &SpinalGroup,
    xi: &BoundaryPoint,
    n: usize,
) -> Result<LabeledMultigraph<BoundaryPoint>> {
    let d = group.d();
    if xi.d() != d {
        return Err(Error::InvalidParameter("alphabet size mismatch".into()));
    }
    let tail = xi.shift(n + 2);
    let mut points = Vec::new();
    for i in 0..d {
        let mut letters = vec![d - 1; n];
        letters.push(0);
        letters.push(i);
        points.push(tail.prepended_word(&FiniteWord::new(d, letters)?)?);
    }
    let index: HashMap<&BoundaryPoint, usize> =
        points.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut graph = LabeledMultigraph::new(d, group.m());
    for p in &points {
        graph.add_vertex(p.clone());
    }
    for (i, p) in points.iter().enumerate() {
        for b in all_b_elements(group.params()) {
            if b.is_zero() {
                continue;
            }
            let label = GeneratorLabel::Spinal(b.clone());
            let target = act_point(group, &label, p)?;
            if let Some(&j) = index.get(&target) {
                graph.add_edge(i, j, label);
            }
        }
    }
    Ok(graph)
}

/// Checks the two vertex-set identities tying unions of balls around a
/// spinal block to level copies: the union of radius `2^(n+1)-1` balls is
/// the level-(n+2) copy, and for `k <= n` the union of radius `2^k-1` balls
/// is `X^k (d-1)^(n-k) 0 X σ^(n+2)(xi)`.
pub fn verify_ball_identities(group: &SpinalGroup, xi: &BoundaryPoint, n: usize) -> Result<bool> {
    let d = group.d();
    let block = spinal_block_at(group, xi, n)?;
    let centers: Vec<BoundaryPoint> = block.payloads().to_vec();
    let tail = xi.shift(n + 2);

    let union_of_balls = |radius: usize| -> Result<BTreeSet<BoundaryPoint>> {
        let mut set = BTreeSet::new();
        for c in &centers {
            let ball = orbit_ball(group, c, radius)?;
            set.extend(ball.graph.payloads().iter().cloned());
        }
        Ok(set)
    };

    let expected_delta: BTreeSet<BoundaryPoint> =
        level_copy_points(group, xi, n + 2)?.into_iter().collect();
    if union_of_balls((1 << (n + 1)) - 1)? != expected_delta {
        return Ok(false);
    }

    for k in 0..=n {
        let mut expected = BTreeSet::new();
        for w in words_of_length(d, k) {
            for i in 0..d {
                let mut letters = w.letters().to_vec();
                letters.extend(vec![d - 1; n - k]);
                letters.push(0);
                letters.push(i);
                expected.insert(tail.prepended_word(&FiniteWord::new(d, letters)?)?);
            }
        }
        if union_of_balls((1 << k) - 1)? != expected {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Closed-form ends classification: two ends exactly when the periodic tail
/// uses only the letters `{0, d-1}` and the point is not cofinal with the
/// spine. For `d = 2` this reduces to one end exactly on the cofinality
/// class of the spine. Depends only on the degree, not on the rank or the
/// epimorphism sequence.
pub fn ends(group: &SpinalGroup, xi: &BoundaryPoint) -> Ends {
    debug_assert_eq!(group.d(), xi.d());
    let d = xi.d();
    let period = xi.period();
    let tail_in_edge_letters = period.iter().all(|&l| l == 0 || l == d - 1);
    let cofinal_with_spine = period == [d - 1];
    if tail_in_edge_letters && !cofinal_with_spine {
        Ends::Two
    } else {
        Ends::One
    }
}

/// Empirical ends oracle: the number of connected components of the
/// radius-`big` ball minus the radius-`small` ball that reach distance
/// exactly `big` from the root.
pub fn annulus_components(
    group: &SpinalGroup,
    xi: &BoundaryPoint,
    small: usize,
    big: usize,
) -> Result<usize> {
    if small >= big {
        return Err(Error::InvalidParameter("inner radius must be below outer".into()));
    }
    let ball = orbit_ball(group, xi, big)?;
    let dist = bfs_distances(&ball.graph, ball.root);
    let n = ball.graph.vertex_count();
    let keep: Vec<bool> = (0..n)
        .map(|v| dist[v].map(|x| x > small).unwrap_or(false))
        .collect();
    let adj = ball.graph.simple_adjacency();
    let mut component = vec![usize::MAX; n];
    let mut count = 0;
    for start in 0..n {
        if !keep[start] || component[start] != usize::MAX {
            continue;
        }
        let id = count;
        count += 1;
        let mut queue = VecDeque::new();
        component[start] = id;
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if keep[w] && component[w] == usize::MAX {
                    component[w] = id;
                    queue.push_back(w);
                }
            }
        }
    }
    let mut reaches_rim = vec![false; count];
    for v in 0..n {
        if keep[v] && dist[v] == Some(big) {
            reaches_rim[component[v]] = true;
        }
    }
    Ok(reaches_rim.iter().filter(|&&x| x).count())
}

/// A vertex of a limit graph: a boundary point together with a sheet index
/// of the `d`-fold cover.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoverVertex {
    pub point: BoundaryPoint,
    pub sheet: u32,
}

impl fmt::Display for CoverVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}", self.point, self.sheet)
    }
}

/// The radius-`r` ball of the limit graph of `pi`, rooted at the spine on
/// sheet `0`.
///
/// The limit graph has vertex set `Cof((d-1)^∞) × X`. Away from the spine
/// every generator acts on the point and keeps the sheet. At the spine the
/// rotations act on the point, while a spinal element `b` stays at the
/// spine and adds `pi(b)` to the sheet, so the spine copies carry the
/// spinal gluing block of `pi` instead of loops.
///
/// `pi` must recur infinitely often, i.e. appear in the period; the
/// construction does not apply to the degree-2 rank-1 group.
pub fn limit_graph_ball(
    group: &SpinalGroup,
    pi: &Epimorphism,
    radius: usize,
) -> Result<RootedGraph<CoverVertex>> {
    let d = group.d();
    if d == 2 && group.m() == 1 {
        return Err(Error::Unsupported(
            "limit graphs are not defined for the degree-2 rank-1 group".into(),
        ));
    }
    if !group.omega().period().contains(pi) {
        return Err(Error::NotRecurrent);
    }
    let spine = BoundaryPoint::spine(d);
    let gens = group.generators();
    let neighbors = |cv: &CoverVertex| -> Result<Vec<(GeneratorLabel, CoverVertex)>> {
        let mut out = Vec::with_capacity(gens.len());
        for s in &gens {
            let target = if cv.point == spine {
                match s {
                    GeneratorLabel::Rooted(j) => CoverVertex {
                        point: crate::action::act_rooted_point(*j, &cv.point),
                        sheet: cv.sheet,
                    },
                    GeneratorLabel::Spinal(b) => CoverVertex {
                        point: spine.clone(),
                        sheet: (cv.sheet + pi.apply(b)?) % d,
                    },
                }
            } else {
                CoverVertex { point: act_point(group, s, &cv.point)?, sheet: cv.sheet }
            };
            out.push((s.clone(), target));
        }
        Ok(out)
    };
    let root = CoverVertex { point: spine.clone(), sheet: 0 };
    let (payloads, edges, _) = build_ball(root, radius, neighbors)?;
    let mut graph = LabeledMultigraph::new(d, group.m());
    for p in payloads {
        graph.add_vertex(p);
    }
    for (src, dst, label) in edges {
        graph.add_edge(src, dst, label);
    }
    Ok(RootedGraph { graph, root: 0 })
}

/// Whether the map from boundary points to rooted graphs is continuous at
/// the point: everywhere except the cofinality class of the spine.
pub fn schreier_map_continuous_at(xi: &BoundaryPoint) -> bool {
    xi.period() != [xi.d() - 1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{dihedral, fabrykowski_gupta, grigorchuk};
    use crate::graph::{equal_labeled, pruned_level_graph};

    fn pt(d: u32, s: &str) -> BoundaryPoint {
        BoundaryPoint::parse(d, s).unwrap()
    }

    #[test]
    fn radius_zero_ball_is_the_root_with_loops() {
        let fg = fabrykowski_gupta();
        let ball = orbit_ball(&fg, &pt(3, "1(0)"), 0).unwrap();
        assert_eq!(ball.graph.vertex_count(), 1);
        // the root is fixed by both spinal generators
        assert_eq!(ball.graph.loops_at(0), 2);
    }

    #[test]
    fn radius_one_ball_of_the_zero_ray() {
        let fg = fabrykowski_gupta();
        let ball = orbit_ball(&fg, &pt(3, "(0)"), 1).unwrap();
        let mut points: Vec<String> =
            ball.graph.payloads().iter().map(|p| p.to_string()).collect();
        points.sort();
        // neighbors: two rotations and the two spinal images 01(0), 02(0)
        assert_eq!(points, vec!["(0)", "01(0)", "02(0)", "1(0)", "2(0)"]);
    }

    #[test]
    fn radius_one_ball_of_a_fixed_root() {
        let fg = fabrykowski_gupta();
        let ball = orbit_ball(&fg, &pt(3, "1(0)"), 1).unwrap();
        assert_eq!(ball.graph.vertex_count(), 3);
        assert_eq!(ball.graph.loops_at(ball.root), 2);
    }

    #[test]
    fn balls_nest_exactly() {
        let fg = fabrykowski_gupta();
        let xi = pt(3, "(0)");
        let small = orbit_ball(&fg, &xi, 2).unwrap();
        let big = orbit_ball(&fg, &xi, 4).unwrap();
        let dist = bfs_distances(&big.graph, big.root);
        // vertices within 2 in the big ball are exactly the small ball
        let mut inner: Vec<&BoundaryPoint> = big
            .graph
            .payloads()
            .iter()
            .enumerate()
            .filter(|(v, _)| dist[*v].unwrap() <= 2)
            .map(|(_, p)| p)
            .collect();
        inner.sort();
        let mut small_points: Vec<&BoundaryPoint> = small.graph.payloads().iter().collect();
        small_points.sort();
        assert_eq!(inner, small_points);
        // and the induced edges agree: count edges of big between inner vertices
        let inner_set: std::collections::HashSet<usize> = (0..big.graph.vertex_count())
            .filter(|&v| dist[v].unwrap() <= 2)
            .collect();
        let big_inner_edges = big
            .graph
            .edges()
            .iter()
            .filter(|e| inner_set.contains(&e.src) && inner_set.contains(&e.dst))
            .count();
        assert_eq!(big_inner_edges, small.graph.edge_count());
    }

    #[test]
    fn orbit_reaches_every_nearby_cofinal_point() {
        // the prefix rewrites of xi up to length k all lie within graph
        // distance 2^k - 1, and the orbit never leaves the cofinality class
        let fg = fabrykowski_gupta();
        let xi = pt(3, "21(0)");
        let k = 3usize;
        let ball = orbit_ball(&fg, &xi, (1 << k) - 1).unwrap();
        let tail = xi.shift(k);
        for w in words_of_length(3, k) {
            let target = tail.prepended_word(&w).unwrap();
            assert!(
                ball.graph.find_vertex(&target).is_some(),
                "missing rewrite {target}"
            );
        }
        for p in ball.graph.payloads() {
            assert!(p.is_cofinal_with(&xi), "left the class: {p}");
        }
    }

    #[test]
    fn level_copy_matches_pruned_level_graph() {
        let fg = fabrykowski_gupta();
        for (xi, n) in [(pt(3, "(0)"), 2), (pt(3, "1(2)"), 3), (pt(3, "20(1)"), 2)] {
            let copy = level_copy(&fg, &xi, n).unwrap();
            let tail_fixed = fixed_by_all(&fg, &xi.shift(n));
            let pruned = pruned_level_graph(&fg, n, tail_fixed).unwrap();
            let mapped = copy.graph.map_payloads(|p| p.prefix(n));
            assert!(equal_labeled(&mapped, &pruned), "xi={xi} n={n}");
        }
    }

    #[test]
    fn level_copy_position_depends_on_prefix() {
        let fg = fabrykowski_gupta();
        let xi = pt(3, "01(2)");
        let copy = level_copy(&fg, &xi, 2).unwrap();
        assert_eq!(copy.graph.payload(copy.root), &xi);
        assert_eq!(copy.graph.vertex_count(), 9);
    }

    #[test]
    fn spinal_block_matches_the_block_graph() {
        let fg = fabrykowski_gupta();
        let xi = pt(3, "(0)");
        for n in 0..3 {
            let block = spinal_block_at(&fg, &xi, n).unwrap();
            assert_eq!(block.vertex_count(), 3);
            assert!(block
                .edges()
                .iter()
                .all(|e| matches!(e.label, GeneratorLabel::Spinal(_))));
            // same shape as the abstract spinal gluing block
            let abstract_block =
                crate::graph::spinal_block(fg.params(), fg.omega_at(n)).unwrap();
            let mapped = block.map_payloads(|p| {
                crate::words::FiniteWord::new(3, vec![p.letter(n + 1)]).unwrap()
            });
            assert!(equal_labeled(&mapped, &abstract_block));
        }
    }

    #[test]
    fn ball_identities_hold_for_small_levels() {
        let fg = fabrykowski_gupta();
        assert!(verify_ball_identities(&fg, &pt(3, "(0)"), 1).unwrap());
        let grig = grigorchuk();
        assert!(verify_ball_identities(&grig, &pt(2, "(0)"), 2).unwrap());
    }

    #[test]
    fn ends_classification_examples() {
        let fg = fabrykowski_gupta();
        assert_eq!(ends(&fg, &pt(3, "(2)")), Ends::One);
        assert_eq!(ends(&fg, &pt(3, "(0)")), Ends::Two);
        assert_eq!(ends(&fg, &pt(3, "(1)")), Ends::One);
        let dh = dihedral();
        assert_eq!(ends(&dh, &pt(2, "(1)")), Ends::One);
        assert_eq!(ends(&dh, &pt(2, "(0)")), Ends::Two);
    }

    #[test]
    fn annulus_oracle_examples() {
        let fg = fabrykowski_gupta();
        assert_eq!(annulus_components(&fg, &pt(3, "(0)"), 3, 12).unwrap(), 2);
        assert_eq!(annulus_components(&fg, &pt(3, "(2)"), 3, 12).unwrap(), 1);
        let dh = dihedral();
        assert_eq!(annulus_components(&dh, &pt(2, "(0)"), 1, 8).unwrap(), 2);
    }

    #[test]
    fn limit_ball_root_block() {
        let fg = fabrykowski_gupta();
        let pi = fg.omega_at(0).clone();
        let ball = limit_graph_ball(&fg, &pi, 0).unwrap();
        assert_eq!(ball.graph.vertex_count(), 1);
        // trivial kernel: both spinal generators move the sheet
        assert_eq!(ball.graph.loops_at(0), 0);

        let ball1 = limit_graph_ball(&fg, &pi, 1).unwrap();
        let spine_sheets = ball1
            .graph
            .payloads()
            .iter()
            .filter(|cv| cv.point == BoundaryPoint::spine(3))
            .count();
        assert_eq!(spine_sheets, 3);
    }

    #[test]
    fn limit_ball_root_block_with_kernel() {
        // rank two: the root keeps a loop for each nonzero kernel element
        let alpha = Epimorphism::new(3, vec![1, 0]).unwrap();
        let rho = crate::algebra::AutB::new(3, vec![vec![0, 1], vec![1, 0]]).unwrap();
        let group = crate::algebra::sunic(3, 2, alpha, rho).unwrap();
        let pi = group.omega_at(0).clone();
        let ball = limit_graph_ball(&group, &pi, 0).unwrap();
        assert_eq!(ball.graph.vertex_count(), 1);
        assert_eq!(ball.graph.loops_at(0), 2);
    }

    #[test]
    fn limit_ball_rejects_bad_inputs() {
        let dh = dihedral();
        let pi = dh.omega_at(0).clone();
        assert!(matches!(
            limit_graph_ball(&dh, &pi, 1),
            Err(Error::Unsupported(_))
        ));
        let fg = fabrykowski_gupta();
        let absent = Epimorphism::new(3, vec![2]).unwrap();
        assert!(matches!(
            limit_graph_ball(&fg, &absent, 1),
            Err(Error::NotRecurrent)
        ));
    }

    #[test]
    fn limit_ball_is_a_cover() {
        let fg = fabrykowski_gupta();
        let pi = fg.omega_at(0).clone();
        let ball = limit_graph_ball(&fg, &pi, 6).unwrap();
        let dist = bfs_distances(&ball.graph, ball.root);
        // deep inside the ball every point appears on all three sheets
        let mut multiplicity: HashMap<&BoundaryPoint, usize> = HashMap::new();
        for (v, cv) in ball.graph.payloads().iter().enumerate() {
            if dist[v].unwrap() + 3 <= 6 {
                *multiplicity.entry(&cv.point).or_default() += 1;
            }
        }
        for (point, seen) in multiplicity {
            let full = ball
                .graph
                .payloads()
                .iter()
                .filter(|cv| &cv.point == point)
                .count();
            assert!(full >= seen);
            assert_eq!(full.min(3), 3, "point {point} missing sheets");
        }
    }

    #[test]
    fn continuity_examples() {
        assert!(schreier_map_continuous_at(&pt(3, "(0)")));
        assert!(!schreier_map_continuous_at(&pt(2, "(1)")));
        assert!(!schreier_map_continuous_at(&pt(3, "01(2)")));
    }
}
