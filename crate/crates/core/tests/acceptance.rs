//! End-to-end acceptance checks. Each test prints one PASS/FAIL line (run
//! with `cargo test --test acceptance -- --nocapture` to see them).

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spinal_core::{
    annulus_components, assemble_blocks, block_class, compatible, diameter, dihedral, ends,
    equal_labeled, fabrykowski_gupta, fixed_by_all, grigorchuk, grigorchuk_p, interior_vertices,
    labeled_rooted_iso, level_copy, level_graph_direct, level_graph_recursive, limit_graph_ball,
    orbit_ball, preset, pruned_level_graph, sunic, unlabeled_rooted_iso, verify_ball_identities,
    verify_transport_ball, witness_letter_position, zero_blocks, AutB, BlockDecomposition,
    BlockTail, BoundaryPoint, Ends, Epimorphism, Error, FiniteWord, GeneratorLabel,
    OmegaSequence, Params, PresetArgs, PSymbol, SpinalGroup,
};

fn sunic5() -> SpinalGroup {
    preset("sunic", &PresetArgs { p: Some(5), m: Some(1), ..PresetArgs::default() })
        .expect("preset is valid")
}

fn presets() -> Vec<(&'static str, SpinalGroup, usize)> {
    vec![
        ("dihedral", dihedral(), 10),
        ("grigorchuk", grigorchuk(), 8),
        ("fabrykowski-gupta", fabrykowski_gupta(), 6),
        ("sunic p=5 m=1", sunic5(), 4),
    ]
}

fn pt(d: u32, s: &str) -> BoundaryPoint {
    BoundaryPoint::parse(d, s).unwrap()
}

fn fw(d: u32, s: &str) -> FiniteWord {
    FiniteWord::parse(d, s).unwrap()
}

fn random_point(rng: &mut ChaCha8Rng, d: u32, max_pre: usize, max_per: usize) -> BoundaryPoint {
    let pre_len = rng.gen_range(0..=max_pre);
    let per_len = rng.gen_range(1..=max_per);
    let pre: Vec<u32> = (0..pre_len).map(|_| rng.gen_range(0..d)).collect();
    let per: Vec<u32> = (0..per_len).map(|_| rng.gen_range(0..d)).collect();
    BoundaryPoint::new(d, &pre, &per).unwrap()
}

fn random_block_in_class(rng: &mut ChaCha8Rng, d: u32, len: usize, class: usize) -> FiniteWord {
    let mut letters = Vec::with_capacity(len);
    if class == len {
        letters.extend(std::iter::repeat_n(d - 1, len));
    } else {
        for _ in 0..len - class - 1 {
            letters.push(rng.gen_range(1..d));
        }
        letters.push(rng.gen_range(1..d - 1));
        letters.extend(std::iter::repeat_n(d - 1, class));
    }
    FiniteWord::new(d, letters).unwrap()
}

fn random_compatible(rng: &mut ChaCha8Rng, xi: &BoundaryPoint) -> BoundaryPoint {
    let d = xi.d();
    let dec = zero_blocks(xi);
    let redraw = |rng: &mut ChaCha8Rng, w: &FiniteWord| {
        let class = block_class(w).unwrap();
        random_block_in_class(rng, d, w.len(), class)
    };
    let head = dec.head.iter().map(|w| redraw(rng, w)).collect();
    let tail = match &dec.tail {
        BlockTail::Cycle(cycle) => {
            BlockTail::Cycle(cycle.iter().map(|w| redraw(rng, w)).collect())
        }
        BlockTail::Infinite(_) => {
            let pre: Vec<u32> = (0..rng.gen_range(0..3)).map(|_| rng.gen_range(1..d)).collect();
            let per: Vec<u32> = (0..rng.gen_range(1..4)).map(|_| rng.gen_range(1..d)).collect();
            BlockTail::Infinite(BoundaryPoint::new(d, &pre, &per).unwrap())
        }
    };
    assemble_blocks(d, &BlockDecomposition { head, tail }).unwrap()
}

fn report(name: &str, pass: bool) {
    println!("acceptance {name}: {}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "acceptance criterion failed: {name}");
}

#[test]
fn criterion_01_recursion_matches_direct_construction() {
    let mut pass = true;
    for (name, group, max_n) in presets() {
        for n in 1..=max_n {
            let clock = Instant::now();
            let direct = level_graph_direct(&group, n).unwrap();
            let recursive = level_graph_recursive(&group, n).unwrap();
            let equal = equal_labeled(&direct, &recursive);
            let elapsed = clock.elapsed();
            if !equal || elapsed.as_secs() >= 10 {
                eprintln!("{name} n={n}: equal={equal} elapsed={elapsed:?}");
                pass = false;
            }
        }
    }
    report("1 recursion (direct vs block gluing)", pass);
}

#[test]
fn criterion_02_diameter_law() {
    let mut pass = true;
    for (name, group, max_n) in presets() {
        for n in 1..=max_n {
            let g = level_graph_direct(&group, n).unwrap();
            let got = diameter(&g).unwrap();
            if got != (1 << n) - 1 {
                eprintln!("{name} n={n}: diameter {got}");
                pass = false;
            }
        }
    }
    report("2 diameter law 2^n - 1", pass);
}

#[test]
fn criterion_03_golden_figures() {
    let mut pass = true;

    // degree-2 rank-2 level 3: a path in this exact vertex order with the
    // full complement of spinal loops at both endpoints
    let grig = grigorchuk();
    let g = level_graph_direct(&grig, 3).unwrap();
    pass &= g.vertex_count() == 8;
    let order = ["110", "010", "000", "100", "101", "001", "011", "111"];
    let idx: Vec<usize> = order.iter().map(|s| g.find_vertex(&fw(2, s)).unwrap()).collect();
    let adj = g.simple_adjacency();
    for w in idx.windows(2) {
        pass &= adj[w[0]].contains(&w[1]);
    }
    pass &= adj[idx[0]].len() == 1 && adj[idx[7]].len() == 1;
    for &v in &idx[1..7] {
        pass &= adj[v].len() == 2;
    }
    pass &= g.loops_at(idx[0]) == 3 && g.loops_at(idx[7]) == 3;

    // degree-3 rank-1 level 3: 27 vertices; 27 rotation-adjacent vertex
    // pairs (nine triangles); four spinal triangles and loops elsewhere
    let fg = fabrykowski_gupta();
    let g3 = level_graph_direct(&fg, 3).unwrap();
    pass &= g3.vertex_count() == 27;
    let mut a_pairs = std::collections::BTreeSet::new();
    let mut spinal_loops = 0usize;
    let mut spinal_moves = 0usize;
    for e in g3.edges() {
        match e.label {
            GeneratorLabel::Rooted(_) => {
                if e.src != e.dst {
                    a_pairs.insert((e.src.min(e.dst), e.src.max(e.dst)));
                }
            }
            GeneratorLabel::Spinal(_) => {
                if e.src == e.dst {
                    spinal_loops += 1;
                } else {
                    spinal_moves += 1;
                }
            }
        }
    }
    pass &= a_pairs.len() == 27;
    pass &= spinal_loops == 30 && spinal_moves == 24;

    // degree-5 rank-1 level 2: five rotation blocks (complete graphs on
    // five vertices) glued along one spinal pentagon block, with the full
    // complement of loops everywhere else
    let p5 = level_graph_direct(&sunic5(), 2).unwrap();
    pass &= p5.vertex_count() == 25;
    let mut a5 = std::collections::BTreeSet::new();
    let mut b5 = std::collections::BTreeSet::new();
    let mut loops5 = 0usize;
    for e in p5.edges() {
        let pair = (e.src.min(e.dst), e.src.max(e.dst));
        match e.label {
            GeneratorLabel::Rooted(_) => {
                if e.src != e.dst {
                    a5.insert(pair);
                }
            }
            GeneratorLabel::Spinal(_) => {
                if e.src == e.dst {
                    loops5 += 1;
                } else {
                    b5.insert(pair);
                }
            }
        }
    }
    pass &= a5.len() == 50 && b5.len() == 10 && loops5 == 80;

    report("3 golden figures (level-3 path, gasket, pentagon level)", pass);
}

#[test]
fn criterion_04_level_copies_match_pruned_level_graphs() {
    let mut pass = true;
    for (name, group, _) in presets() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x04);
        let d = group.d();
        let max_n = 5;
        for _ in 0..20 {
            let xi = random_point(&mut rng, d, 3, 3);
            let n = rng.gen_range(1..=max_n);
            let copy = level_copy(&group, &xi, n).unwrap();
            let mapped = copy.graph.map_payloads(|p| p.prefix(n));
            let tail_fixed = fixed_by_all(&group, &xi.shift(n));
            let pruned = pruned_level_graph(&group, n, tail_fixed).unwrap();
            if !equal_labeled(&mapped, &pruned) {
                eprintln!("{name}: xi={xi} n={n}");
                pass = false;
            }
        }
    }
    report("4 level copies match pruned level graphs", pass);
}

#[test]
fn criterion_05_ball_identities() {
    let mut pass = true;
    for (name, group, _) in presets() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x05);
        let d = group.d();
        let max_n = 4;
        for _ in 0..10 {
            let xi = random_point(&mut rng, d, 3, 3);
            for n in 0..=max_n {
                if !verify_ball_identities(&group, &xi, n).unwrap() {
                    eprintln!("{name}: xi={xi} n={n}");
                    pass = false;
                }
            }
        }
    }
    report("5 ball identities around spinal blocks", pass);
}

/// Empirical end count for points with short preperiods and periods. At
/// fixed inner radius the annulus component count is nonincreasing in the
/// outer radius, with plateaus as long as the deepest bounded fragment
/// outside the inner ball, and converges to the number of unbounded
/// components there; that number climbs to the number of ends as the inner
/// radius grows. For preperiod and period length at most two the fragments
/// die within distance ≈30 and the ends separate by inner radius 4, so the
/// larger of the radius-3 and radius-4 readings, each taken only when
/// stable across outer radii 8 apart, settles the count.
fn stabilized_annulus(group: &SpinalGroup, xi: &BoundaryPoint) -> Option<usize> {
    let mut reading: Option<usize> = None;
    for small in [3usize, 4] {
        let near = annulus_components(group, xi, small, small + 32).unwrap();
        let far = annulus_components(group, xi, small, small + 40).unwrap();
        if near == far {
            reading = Some(reading.map_or(near, |b: usize| b.max(near)));
        }
    }
    reading
}

#[test]
fn criterion_06_ends_classification_and_annulus_oracle() {
    let mut pass = true;
    let fg = fabrykowski_gupta();
    pass &= ends(&fg, &pt(3, "(2)")) == Ends::One;
    pass &= ends(&fg, &pt(3, "(0)")) == Ends::Two;

    let groups = [(2u32, grigorchuk()), (3, fabrykowski_gupta()), (5, sunic5())];
    let mut rng = ChaCha8Rng::seed_from_u64(0x06);
    let mut tested = 0;
    for (d, group) in &groups {
        for i in 0..7 {
            let xi = if i % 3 == 0 {
                // force a candidate two-ended tail over {0, d-1}
                let per: Vec<u32> =
                    (0..rng.gen_range(1..3)).map(|_| (d - 1) * rng.gen_range(0..2)).collect();
                let pre: Vec<u32> =
                    (0..rng.gen_range(0..3)).map(|_| rng.gen_range(0..*d)).collect();
                BoundaryPoint::new(*d, &pre, &per).unwrap()
            } else {
                random_point(&mut rng, *d, 2, 2)
            };
            tested += 1;
            let expected = ends(group, &xi).count();
            match stabilized_annulus(group, &xi) {
                Some(got) if got == expected => {}
                other => {
                    eprintln!("d={d} xi={xi}: annulus {other:?}, ends {expected}");
                    pass = false;
                }
            }
        }
    }
    pass &= tested >= 20;

    // longer periods push the merge of the two local branches very deep;
    // the oracle still stabilizes to the closed form once the outer radius
    // clears the plateau (measured ≈55 and ≈128 for these two)
    for (xi, merge_clear) in [(pt(3, "2(201)"), 67), (pt(3, "(012)"), 131)] {
        let expected = ends(&fg, &xi).count();
        let near = annulus_components(&fg, &xi, 3, merge_clear).unwrap();
        let far = annulus_components(&fg, &xi, 3, merge_clear + 8).unwrap();
        if near != far || near != expected {
            eprintln!("deep point {xi}: annulus {near}/{far}, ends {expected}");
            pass = false;
        }
    }
    report("6 ends classification and annulus oracle", pass);
}

#[test]
fn criterion_07_isomorphism_equivalence() {
    let mut pass = true;
    for (d, group) in [(3u32, fabrykowski_gupta()), (5, sunic5())] {
        let mut rng = ChaCha8Rng::seed_from_u64(0x07 + d as u64);
        let mut pairs = 0;
        let mut oracle_forward = 0;
        while pairs < 100 {
            let xi = random_point(&mut rng, d, 3, 3);
            let eta = if rng.gen_bool(0.5) {
                random_compatible(&mut rng, &xi)
            } else {
                random_point(&mut rng, d, 3, 3)
            };
            pairs += 1;
            if compatible(&xi, &eta).compatible {
                for r in [7usize, 15, 31] {
                    if !verify_transport_ball(&group, &xi, &eta, r).unwrap() {
                        eprintln!("d={d} transport failed: {xi} vs {eta} at r={r}");
                        pass = false;
                    }
                }
                // the independent oracle confirms a few of the transports
                if oracle_forward < 5 {
                    oracle_forward += 1;
                    let b1 = orbit_ball(&group, &xi, 7).unwrap();
                    let b2 = orbit_ball(&group, &eta, 7).unwrap();
                    if unlabeled_rooted_iso(&b1, &b2).unwrap().is_none() {
                        eprintln!("d={d} oracle rejected compatible pair {xi} vs {eta}");
                        pass = false;
                    }
                }
            } else if witness_letter_position(&xi, &eta).map(|p| p <= 2).unwrap_or(false) {
                let mut falsified = false;
                for r in [7usize, 15, 31] {
                    let b1 = orbit_ball(&group, &xi, r).unwrap();
                    let b2 = orbit_ball(&group, &eta, r).unwrap();
                    match unlabeled_rooted_iso(&b1, &b2) {
                        Ok(None) => {
                            falsified = true;
                            break;
                        }
                        Ok(Some(_)) => {}
                        Err(Error::SizeGuard { .. }) => break,
                        Err(other) => panic!("{other}"),
                    }
                }
                if !falsified {
                    eprintln!("d={d} oracle kept {xi} vs {eta} isomorphic through r=31");
                    pass = false;
                }
            }
        }
    }
    report("7 rooted isomorphism iff compatibility", pass);
}

#[test]
fn criterion_08_common_prefix_bound() {
    let mut pass = true;
    for (d, group) in [(3u32, fabrykowski_gupta()), (5, sunic5())] {
        let mut rng = ChaCha8Rng::seed_from_u64(0x08 + d as u64);
        let mut isomorphic_seen = 0;
        for i in 0..40 {
            let xi = random_point(&mut rng, d, 3, 3);
            let eta = match i % 3 {
                // same point far out: balls agree, prefixes agree
                0 => {
                    let k = rng.gen_range(5..9);
                    let changed = rng.gen_range(0..d);
                    xi.shift(k).prepended_word(&xi.prefix(k)).unwrap().with_letter(40, changed).unwrap()
                }
                1 => random_compatible(&mut rng, &xi),
                _ => random_point(&mut rng, d, 3, 3),
            };
            for r in [4usize, 8, 16] {
                let b1 = orbit_ball(&group, &xi, r).unwrap();
                let b2 = orbit_ball(&group, &eta, r).unwrap();
                if labeled_rooted_iso(&b1, &b2).unwrap().is_some() {
                    isomorphic_seen += 1;
                    let k = (r as f64).log2().floor() as usize;
                    if xi.prefix(k) != eta.prefix(k) {
                        eprintln!("d={d} r={r}: {xi} vs {eta} isomorphic, prefixes differ");
                        pass = false;
                    }
                }
            }
        }
        pass &= isomorphic_seen > 0;
    }
    report("8 labeled-isomorphic balls share prefixes", pass);
}

#[test]
fn criterion_09_limit_graph_convergence() {
    let mut pass = true;
    let fg = fabrykowski_gupta();
    let pi = fg.omega_at(0).clone();
    let limit = limit_graph_ball(&fg, &pi, 7).unwrap();
    let mut previous: Option<spinal_core::RootedGraph<BoundaryPoint>> = None;
    for k in [5usize, 6, 7, 8] {
        let mut letters = vec![2u32; k];
        letters.push(0);
        let xi = BoundaryPoint::new(3, &letters, &[0]).unwrap();
        let ball = orbit_ball(&fg, &xi, 7).unwrap();
        if labeled_rooted_iso(&ball, &limit).unwrap().is_none() {
            eprintln!("k={k}: ball differs from the limit ball");
            pass = false;
        }
        if let Some(prev) = &previous {
            if labeled_rooted_iso(prev, &ball).unwrap().is_none() {
                eprintln!("k={k}: ball differs from the previous one");
                pass = false;
            }
        }
        previous = Some(ball);
    }
    report("9 limit graph convergence", pass);
}

#[test]
fn criterion_10_binary_line_structure() {
    let grig = grigorchuk();
    let ball = orbit_ball(&grig, &pt(2, "(0)"), 10).unwrap();
    let mut pass = true;
    let mut mult: std::collections::HashMap<(usize, usize), usize> =
        std::collections::HashMap::new();
    let mut loops = vec![0usize; ball.graph.vertex_count()];
    for e in ball.graph.edges() {
        if e.src == e.dst {
            loops[e.src] += 1;
        } else {
            *mult.entry((e.src.min(e.dst), e.src.max(e.dst))).or_default() += 1;
        }
    }
    let interior = interior_vertices(&ball, 10);
    pass &= !interior.is_empty();
    for v in interior {
        if loops[v] != 1 {
            pass = false;
        }
        // every generator is an involution, so an undirected edge appears as
        // an inverse pair of directed edges
        let mut mults: Vec<usize> = mult
            .iter()
            .filter(|((a, b), _)| *a == v || *b == v)
            .map(|(_, &c)| {
                assert_eq!(c % 2, 0);
                c / 2
            })
            .collect();
        mults.sort_unstable();
        if mults != vec![1, 2] {
            eprintln!("vertex {v}: neighbor multiplicities {mults:?}");
            pass = false;
        }
    }
    report("10 binary orbital graphs are decorated lines", pass);
}

#[test]
fn criterion_11_self_similarity_detection() {
    let mut pass = true;
    for group in [grigorchuk(), fabrykowski_gupta(), dihedral(), sunic5()] {
        pass &= group.detect_self_similar().unwrap().is_some();
    }
    // further instances of the parametric construction
    let sunic_p3m2 = sunic(
        3,
        2,
        Epimorphism::new(3, vec![1, 0]).unwrap(),
        AutB::new(3, vec![vec![0, 1], vec![1, 0]]).unwrap(),
    )
    .unwrap();
    pass &= sunic_p3m2.detect_self_similar().unwrap().is_some();
    let sunic_grig = sunic(
        2,
        2,
        Epimorphism::new(2, vec![0, 1]).unwrap(),
        AutB::new(2, vec![vec![1, 1], vec![1, 0]]).unwrap(),
    )
    .unwrap();
    pass &= sunic_grig.detect_self_similar().unwrap().is_some();

    // a stuttered period admits no generating automorphism
    let params = Params::new(2, 2).unwrap();
    let pi01 = Epimorphism::new(2, vec![0, 1]).unwrap();
    let pi10 = Epimorphism::new(2, vec![1, 0]).unwrap();
    let pi11 = Epimorphism::new(2, vec![1, 1]).unwrap();
    let stuttered = SpinalGroup::new(
        params,
        OmegaSequence::validate(&params, vec![], vec![pi01.clone(), pi01, pi10, pi11]).unwrap(),
    );
    pass &= stuttered.detect_self_similar().unwrap().is_none();

    report("11 self-similarity detection", pass);
}

#[test]
fn criterion_12_sequence_validator() {
    let mut pass = true;
    // every preset revalidates from its own description
    for (_, group, _) in presets() {
        pass &= SpinalGroup::parse_spec(&group.to_string()).is_ok();
    }
    pass &= grigorchuk_p(3, &[], &[PSymbol::PiI(0), PSymbol::PiI(1), PSymbol::Pi]).is_ok();
    match SpinalGroup::parse_spec("d=2;m=2;pre=[];per=[(0,1)]") {
        Err(Error::NotFaithful { index: 0 }) => {}
        other => {
            eprintln!("constant sequence produced {other:?}");
            pass = false;
        }
    }
    report("12 sequence validator", pass);
}
