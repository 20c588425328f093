//! Named small graphs used across tests, benches, and the docs.

use crate::graph::Graph;

fn build(vertices: Vec<String>, edges: Vec<(String, String)>) -> Graph {
    let v: Vec<&str> = vertices.iter().map(|s| s.as_str()).collect();
    let e: Vec<(&str, &str)> = edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    Graph::new(&v, &e).expect("gallery graphs are valid")
}

/// The path on two vertices, the smallest graph with a difference-1 colouring.
pub fn p2() -> Graph {
    Graph::new(&["u", "v"], &[("u", "v")]).unwrap()
}

/// Cycle v1..vn.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3);
    let vertices: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    let edges: Vec<(String, String)> = (0..n)
        .map(|i| (vertices[i].clone(), vertices[(i + 1) % n].clone()))
        .collect();
    build(vertices, edges)
}

/// Complete bipartite graph on parts u1..un, v1..vn.
pub fn complete_bipartite(n: usize) -> Graph {
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for i in 1..=n {
        vertices.push(format!("u{i}"));
        vertices.push(format!("v{i}"));
    }
    for i in 1..=n {
        for j in 1..=n {
            edges.push((format!("u{i}"), format!("v{j}")));
        }
    }
    build(vertices, edges)
}

pub fn k33() -> Graph {
    complete_bipartite(3)
}

/// Two adjacent centres `A` and `B` with `a` and `b` pendant leaves. The
/// (2, 2) double-star is colourable; the (4, 4) one passes every necessary
/// condition yet has no difference-1 colouring.
pub fn double_star(a: usize, b: usize) -> Graph {
    let mut vertices = vec!["A".to_string(), "B".to_string()];
    let mut edges = vec![("A".to_string(), "B".to_string())];
    for i in 1..=a {
        vertices.push(format!("a{i}"));
        edges.push(("A".to_string(), format!("a{i}")));
    }
    for i in 1..=b {
        vertices.push(format!("b{i}"));
        edges.push(("B".to_string(), format!("b{i}")));
    }
    build(vertices, edges)
}

/// C4 on p1..p4 with a pendant leaf on every cycle vertex. Has exactly two
/// difference-1 colourings.
pub fn pinwheel() -> Graph {
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for i in 1..=4 {
        vertices.push(format!("p{i}"));
        vertices.push(format!("lp{i}"));
        edges.push((format!("p{i}"), format!("lp{i}")));
    }
    for i in 1..=4 {
        let j = i % 4 + 1;
        edges.push((format!("p{i}"), format!("p{j}")));
    }
    build(vertices, edges)
}

/// Two 4-cycles sharing the junction `j`, a pendant leaf on `j` and on every
/// other cycle vertex. Has exactly four difference-1 colourings.
pub fn bowtie() -> Graph {
    let mut vertices = vec!["j".to_string(), "lj".to_string()];
    let mut edges = vec![("j".to_string(), "lj".to_string())];
    for ring in ["p", "q"] {
        for i in 1..=3 {
            vertices.push(format!("{ring}{i}"));
            vertices.push(format!("l{ring}{i}"));
            edges.push((format!("{ring}{i}"), format!("l{ring}{i}")));
        }
        edges.push(("j".to_string(), format!("{ring}1")));
        edges.push((format!("{ring}1"), format!("{ring}2")));
        edges.push((format!("{ring}2"), format!("{ring}3")));
        edges.push((format!("{ring}3"), "j".to_string()));
    }
    build(vertices, edges)
}

/// Theta graph: junctions `u`, `v` joined by three paths of length three,
/// with a stabilizing leaf on every interior vertex.
pub fn theta() -> Graph {
    let mut vertices = vec!["u".to_string(), "v".to_string()];
    let mut edges = Vec::new();
    for path in ["a", "b", "c"] {
        let first = format!("{path}1");
        let second = format!("{path}2");
        vertices.push(first.clone());
        vertices.push(second.clone());
        vertices.push(format!("l{path}1"));
        vertices.push(format!("l{path}2"));
        edges.push(("u".to_string(), first.clone()));
        edges.push((first.clone(), second.clone()));
        edges.push((second.clone(), "v".to_string()));
        edges.push((first, format!("l{path}1")));
        edges.push((second, format!("l{path}2")));
    }
    build(vertices, edges)
}

/// A graph whose unique-up-to-mirror difference-1 colourings both force
/// incompatible betweenness requirements, so neither is configurable:
/// vertices `A`, `B` each adjacent to `X`, `Y`, `Z`; pendant leaves on `X`
/// and `Y`; a twig on `Z`.
pub fn betweenness_conflict() -> Graph {
    build(
        vec![
            "A".into(),
            "B".into(),
            "X".into(),
            "Y".into(),
            "Z".into(),
            "lx".into(),
            "ly".into(),
            "t".into(),
            "t1".into(),
            "t2".into(),
        ],
        vec![
            ("A".into(), "X".into()),
            ("A".into(), "Y".into()),
            ("A".into(), "Z".into()),
            ("B".into(), "X".into()),
            ("B".into(), "Y".into()),
            ("B".into(), "Z".into()),
            ("X".into(), "lx".into()),
            ("Y".into(), "ly".into()),
            ("Z".into(), "t".into()),
            ("t".into(), "t1".into()),
            ("t".into(), "t2".into()),
        ],
    )
}

/// Bowtie variant where the leaf at `j` is replaced by a twig and both
/// cycles' opposite vertices carry twigs. The forced weights at `j` would sum
/// to -5, but the shape is already unbalanced (13 against 7), so validation
/// rejects it first.
pub fn double_twig_bowtie() -> Graph {
    let mut vertices = vec!["j".to_string(), "tj".to_string(), "tj1".to_string(), "tj2".to_string()];
    let mut edges = vec![
        ("j".to_string(), "tj".to_string()),
        ("tj".to_string(), "tj1".to_string()),
        ("tj".to_string(), "tj2".to_string()),
    ];
    for ring in ["p", "q"] {
        for i in 1..=3 {
            vertices.push(format!("{ring}{i}"));
        }
        // Leaves keep the side vertices odd; the middle vertex gets a twig.
        for i in [1, 3] {
            vertices.push(format!("l{ring}{i}"));
            edges.push((format!("{ring}{i}"), format!("l{ring}{i}")));
        }
        for suffix in ["", "1", "2"] {
            vertices.push(format!("t{ring}{suffix}"));
        }
        edges.push((format!("{ring}2"), format!("t{ring}")));
        edges.push((format!("t{ring}"), format!("t{ring}1")));
        edges.push((format!("t{ring}"), format!("t{ring}2")));
        edges.push(("j".to_string(), format!("{ring}1")));
        edges.push((format!("{ring}1"), format!("{ring}2")));
        edges.push((format!("{ring}2"), format!("{ring}3")));
        edges.push((format!("{ring}3"), "j".to_string()));
    }
    build(vertices, edges)
}

/// Balanced, all-odd-degree graph whose weight assignment fails: two
/// junctions whose ring limbs end in twig-type vertices, joined by a path
/// through a twig-type vertex, so each junction starts its own assignment
/// iteration and each accumulates incident weight 3.
pub fn junction_sum_violator() -> Graph {
    let mut vertices = vec!["j1".to_string(), "j2".to_string(), "k1".to_string(), "k2".to_string()];
    let mut edges = vec![
        ("j1".to_string(), "k1".to_string()),
        ("j1".to_string(), "k2".to_string()),
    ];
    // Two C6 rings, each with a twig opposite the junction and leaves on the
    // other ring vertices.
    for (junction, ring) in [("j1", "r"), ("j2", "s")] {
        for i in 1..=5 {
            vertices.push(format!("{ring}{i}"));
        }
        edges.push((junction.to_string(), format!("{ring}1")));
        for i in 1..=4 {
            edges.push((format!("{ring}{i}"), format!("{ring}{}", i + 1)));
        }
        edges.push((format!("{ring}5"), junction.to_string()));
        for i in [1, 2, 4, 5] {
            vertices.push(format!("l{ring}{i}"));
            edges.push((format!("{ring}{i}"), format!("l{ring}{i}")));
        }
        for s in ["b", "b1", "b2"] {
            vertices.push(format!("{ring}{s}"));
        }
        edges.push((format!("{ring}3"), format!("{ring}b")));
        edges.push((format!("{ring}b"), format!("{ring}b1")));
        edges.push((format!("{ring}b"), format!("{ring}b2")));
    }
    // Skeleton path j1-x-t-a-b-j2 with a twig at t and leaves at x, a, b.
    for v in ["x", "t", "a", "b"] {
        vertices.push(v.to_string());
    }
    edges.push(("j1".to_string(), "x".to_string()));
    edges.push(("x".to_string(), "t".to_string()));
    edges.push(("t".to_string(), "a".to_string()));
    edges.push(("a".to_string(), "b".to_string()));
    edges.push(("b".to_string(), "j2".to_string()));
    for v in ["x", "a", "b"] {
        vertices.push(format!("l{v}"));
        edges.push((v.to_string(), format!("l{v}")));
    }
    for s in ["tb", "tb1", "tb2"] {
        vertices.push(s.to_string());
    }
    edges.push(("t".to_string(), "tb".to_string()));
    edges.push(("tb".to_string(), "tb1".to_string()));
    edges.push(("tb".to_string(), "tb2".to_string()));
    build(vertices, edges)
}

/// A non-cactus graph whose junction sums are all one yet whose single
/// common cycle class (a 2-connected, non-cycle block) admits no exact
/// degree-constrained subgraph: two squares sharing the edge a1-b1, with
/// three pendant leaves on each of the four outer corners. The triples force
/// both their class edges red, overloading b1; the weight assignment parks
/// the obstruction as a surplus 3 on a1-b1.
pub fn domino_with_triples() -> Graph {
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for side in ["a", "b"] {
        for i in 1..=3 {
            vertices.push(format!("{side}{i}"));
        }
    }
    for (x, y) in [
        ("a1", "b1"),
        ("a1", "b2"),
        ("a1", "b3"),
        ("a2", "b1"),
        ("a2", "b2"),
        ("a3", "b1"),
        ("a3", "b3"),
    ] {
        edges.push((x.to_string(), y.to_string()));
    }
    for corner in ["a2", "a3", "b2", "b3"] {
        for k in 1..=3 {
            let leaf = format!("l{corner}{k}");
            vertices.push(leaf.clone());
            edges.push((corner.to_string(), leaf));
        }
    }
    build(vertices, edges)
}

/// A cactus whose weight assignment succeeds at every junction yet whose
/// surplus weights cannot be redistributed: a C8 ring `j1 a1 j2 a2 j3 a3 j4
/// a4` whose junctions each carry a pendant, leaf-stabilized C4; twigs at
/// `j1`, `j2` and three pendant leaves at each of `j3`, `j4` put class sums
/// +2, +2, -2, -2 around the ring at odd spacing.
pub fn surplus_parity_ring() -> Graph {
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for i in 1..=4 {
        vertices.push(format!("j{i}"));
        vertices.push(format!("a{i}"));
        vertices.push(format!("la{i}"));
        edges.push((format!("a{i}"), format!("la{i}")));
    }
    for i in 1..=4u32 {
        let j = i % 4 + 1;
        edges.push((format!("j{i}"), format!("a{i}")));
        edges.push((format!("a{i}"), format!("j{j}")));
    }
    // Pendant C4 with stabilizing leaves at each junction.
    for i in 1..=4 {
        for s in ["x", "y", "z"] {
            vertices.push(format!("j{i}{s}"));
            vertices.push(format!("j{i}{s}l"));
            edges.push((format!("j{i}{s}"), format!("j{i}{s}l")));
        }
        edges.push((format!("j{i}"), format!("j{i}x")));
        edges.push((format!("j{i}x"), format!("j{i}y")));
        edges.push((format!("j{i}y"), format!("j{i}z")));
        edges.push((format!("j{i}z"), format!("j{i}")));
    }
    // Local trees: twigs at j1, j2; three leaves at j3, j4.
    for i in [1, 2] {
        for s in ["t", "t1", "t2"] {
            vertices.push(format!("j{i}{s}"));
        }
        edges.push((format!("j{i}"), format!("j{i}t")));
        edges.push((format!("j{i}t"), format!("j{i}t1")));
        edges.push((format!("j{i}t"), format!("j{i}t2")));
    }
    for i in [3, 4] {
        for k in 1..=3 {
            vertices.push(format!("j{i}leaf{k}"));
            edges.push((format!("j{i}"), format!("j{i}leaf{k}")));
        }
    }
    build(vertices, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gallery_graphs_are_well_formed() {
        for (name, g) in [
            ("p2", p2()),
            ("c6", cycle(6)),
            ("k33", k33()),
            ("double_star", double_star(2, 2)),
            ("pinwheel", pinwheel()),
            ("bowtie", bowtie()),
            ("theta", theta()),
            ("betweenness", betweenness_conflict()),
            ("double_twig_bowtie", double_twig_bowtie()),
            ("domino_with_triples", domino_with_triples()),
            ("junction_sum_violator", junction_sum_violator()),
            ("surplus_parity_ring", surplus_parity_ring()),
        ] {
            assert!(g.is_connected(), "{name} should be connected");
            assert!(g.bipartition().is_ok(), "{name} should be bipartite");
        }
    }

    #[test]
    fn necessary_conditions_of_key_instances() {
        assert!(double_star(4, 4).validate_candidate().all_pass());
        assert!(pinwheel().validate_candidate().all_pass());
        assert!(bowtie().validate_candidate().all_pass());
        assert!(theta().validate_candidate().all_pass());
        assert!(k33().validate_candidate().all_pass());
        assert!(betweenness_conflict().validate_candidate().all_pass());
        assert!(junction_sum_violator().validate_candidate().all_pass());
        assert!(domino_with_triples().validate_candidate().all_pass());
        assert!(surplus_parity_ring().validate_candidate().all_pass());
        // The double twig bowtie satisfies the degree condition but is
        // unbalanced, so validation already rules it out.
        let report = double_twig_bowtie().validate_candidate();
        assert!(report.all_degrees_odd && report.bipartite && !report.balanced);
        assert!(!cycle(6).validate_candidate().all_degrees_odd);
    }
}
