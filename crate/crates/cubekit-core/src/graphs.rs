//! Finite undirected graphs (loops permitted behind a flag) and the set
//! systems they induce: neighbourhoods, closed neighbourhoods, cliques and
//! independent sets, plus the half-graph decomposition of graphs whose
//! neighbourhood system is well-graded.

use std::collections::HashMap;

use crate::caps::Caps;
use crate::classify::{classify, ClassKind};
use crate::error::{CoreError, Result};
use crate::one_inclusion::is_well_graded;
use crate::set_system::{Member, SetSystem, MAX_DOMAIN};
use crate::shattering::{is_extremal, is_maximum};

/// Undirected graph over at most 64 named vertices, adjacency kept as
/// symmetric bit rows. Loops are stored separately and only when the graph
/// was created loop-permitting.
///
/// Equality compares vertices, edges and loops; whether loops were permitted
/// at construction does not affect it.
#[derive(Debug, Clone)]
pub struct Graph {
    vertices: Vec<String>,
    adj: Vec<u64>,
    loops: u64,
    loops_allowed: bool,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Graph) -> bool {
        self.vertices == other.vertices && self.adj == other.adj && self.loops == other.loops
    }
}

impl Eq for Graph {}

impl Graph {
    pub fn new(vertices: Vec<String>, loops_allowed: bool) -> Result<Graph> {
        if vertices.is_empty() {
            return Err(CoreError::EmptyGraph);
        }
        if vertices.len() > MAX_DOMAIN {
            return Err(CoreError::VertexCapExceeded {
                size: vertices.len(),
                cap: MAX_DOMAIN,
            });
        }
        let mut seen = HashMap::new();
        for (i, name) in vertices.iter().enumerate() {
            if seen.insert(name.clone(), i).is_some() {
                return Err(CoreError::DuplicateName(name.clone()));
            }
        }
        let n = vertices.len();
        Ok(Graph {
            vertices,
            adj: vec![0; n],
            loops: 0,
            loops_allowed,
        })
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u == v {
            return Err(CoreError::EdgeIsLoop(self.vertices[u].clone()));
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        Ok(())
    }

    pub fn add_loop(&mut self, v: usize) -> Result<()> {
        if !self.loops_allowed {
            return Err(CoreError::LoopsNotSupported);
        }
        self.loops |= 1 << v;
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_id(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|n| n == name)
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|row| row.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.vertices.len() {
            for v in u + 1..self.vertices.len() {
                if self.adjacent(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn has_loop(&self, v: usize) -> bool {
        self.loops >> v & 1 == 1
    }

    pub fn loops_allowed(&self) -> bool {
        self.loops_allowed
    }

    pub fn is_loopless(&self) -> bool {
        self.loops == 0
    }

    pub fn loop_vertices(&self) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&v| self.has_loop(v))
            .collect()
    }

    /// Open neighbourhood as a vertex mask; a loop puts the vertex into its
    /// own neighbourhood.
    pub fn neighbourhood(&self, v: usize) -> u64 {
        self.adj[v] | (self.loops & 1 << v)
    }

    /// Closed neighbourhood `N[v] = N(v) + v`.
    pub fn closed_neighbourhood(&self, v: usize) -> u64 {
        self.neighbourhood(v) | 1 << v
    }

    pub fn is_isolated(&self, v: usize) -> bool {
        self.neighbourhood(v) == 0
    }

    pub fn is_fully_connected(&self, v: usize) -> bool {
        let everyone_else = full_mask(self.vertex_count()) & !(1u64 << v);
        self.adj[v] & everyone_else == everyone_else
    }

    pub fn is_complete(&self) -> bool {
        (0..self.vertex_count()).all(|v| self.is_fully_connected(v))
    }
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn mask_to_member(mask: u64) -> Member {
    Member::from_bits(mask)
}

/// The neighbourhood-set system: domain is the vertex set, family the
/// distinct open neighbourhoods.
pub fn neighbourhood_system(g: &Graph) -> SetSystem {
    let family = (0..g.vertex_count())
        .map(|v| mask_to_member(g.neighbourhood(v)))
        .collect();
    SetSystem::new_dedup(g.vertices.clone(), family).expect("graphs have nonempty vertex sets")
}

/// The closed-neighbourhood-set system.
pub fn closed_neighbourhood_system(g: &Graph) -> SetSystem {
    let family = (0..g.vertex_count())
        .map(|v| mask_to_member(g.closed_neighbourhood(v)))
        .collect();
    SetSystem::new_dedup(g.vertices.clone(), family).expect("graphs have nonempty vertex sets")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwinFlags {
    pub twin_free: bool,
    pub closed_twin_free: bool,
    pub semi_twin_free: bool,
    pub semi_closed_twin_free: bool,
}

/// Literal evaluation of the twin conditions: twins share an open
/// neighbourhood, closed twins a closed one. Semi-twin-free allows twins
/// only when both are isolated; semi-closed-twin-free allows closed twins
/// only when both are fully connected.
pub fn twin_analysis(g: &Graph) -> TwinFlags {
    let n = g.vertex_count();
    let mut flags = TwinFlags {
        twin_free: true,
        closed_twin_free: true,
        semi_twin_free: true,
        semi_closed_twin_free: true,
    };
    for u in 0..n {
        for v in u + 1..n {
            if g.neighbourhood(u) == g.neighbourhood(v) {
                flags.twin_free = false;
                if !(g.is_isolated(u) && g.is_isolated(v)) {
                    flags.semi_twin_free = false;
                }
            }
            if g.closed_neighbourhood(u) == g.closed_neighbourhood(v) {
                flags.closed_twin_free = false;
                if !(g.is_fully_connected(u) && g.is_fully_connected(v)) {
                    flags.semi_closed_twin_free = false;
                }
            }
        }
    }
    flags
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HalfGraphOrientation {
    /// `a_i ~ b_j` exactly when `i <= j`.
    Leq,
    /// `a_i ~ b_j` exactly when `i >= j`.
    Geq,
}

/// The half-graph of order `n`: parts `a_1..a_n` and `b_1..b_n` with the
/// triangular adjacency pattern of the chosen orientation.
pub fn make_half_graph(n: usize, orientation: HalfGraphOrientation) -> Result<Graph> {
    if n == 0 {
        return Err(CoreError::EmptyGraph);
    }
    let names: Vec<String> = (1..=n)
        .map(|i| format!("a{i}"))
        .chain((1..=n).map(|i| format!("b{i}")))
        .collect();
    let mut g = Graph::new(names, false)?;
    for i in 1..=n {
        for j in 1..=n {
            let connect = match orientation {
                HalfGraphOrientation::Leq => i <= j,
                HalfGraphOrientation::Geq => i >= j,
            };
            if connect {
                g.add_edge(i - 1, n + j - 1)?;
            }
        }
    }
    Ok(g)
}

/// The co-half-graph of order `n`: `a_i ~ b_j` for `i > j`, plus complete
/// graphs on each side, and nothing else. Equals the complement of the
/// half-graph of the same order; this is cross-checked in debug builds.
pub fn make_co_half_graph(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(CoreError::EmptyGraph);
    }
    let names: Vec<String> = (1..=n)
        .map(|i| format!("a{i}"))
        .chain((1..=n).map(|i| format!("b{i}")))
        .collect();
    let mut g = Graph::new(names, false)?;
    for i in 1..=n {
        for j in 1..=n {
            if i > j {
                g.add_edge(i - 1, n + j - 1)?;
            }
            if i < j {
                g.add_edge(i - 1, j - 1)?;
                g.add_edge(n + i - 1, n + j - 1)?;
            }
        }
    }
    debug_assert_eq!(
        g,
        graph_complement(&make_half_graph(n, HalfGraphOrientation::Leq)?)?
    );
    Ok(g)
}

/// Disjoint union of two graphs plus every edge between them. Vertex names
/// must not clash.
pub fn between_full_union(g1: &Graph, g2: &Graph) -> Result<Graph> {
    let names: Vec<String> = g1
        .vertices
        .iter()
        .chain(g2.vertices.iter())
        .cloned()
        .collect();
    let mut g = Graph::new(names, g1.loops_allowed || g2.loops_allowed)?;
    let off = g1.vertex_count();
    for (u, v) in g1.edges() {
        g.add_edge(u, v)?;
    }
    for (u, v) in g2.edges() {
        g.add_edge(off + u, off + v)?;
    }
    for v in g1.loop_vertices() {
        g.add_loop(v)?;
    }
    for v in g2.loop_vertices() {
        g.add_loop(off + v)?;
    }
    for u in 0..g1.vertex_count() {
        for v in 0..g2.vertex_count() {
            g.add_edge(u, off + v)?;
        }
    }
    Ok(g)
}

/// Complement on the same vertex set; defined for loopless graphs only.
pub fn graph_complement(g: &Graph) -> Result<Graph> {
    if !g.is_loopless() {
        return Err(CoreError::LoopsNotSupported);
    }
    let mut out = Graph::new(g.vertices.clone(), false)?;
    for u in 0..g.vertex_count() {
        for v in u + 1..g.vertex_count() {
            if !g.adjacent(u, v) {
                out.add_edge(u, v)?;
            }
        }
    }
    Ok(out)
}

/// One disjoint half-graph of a decomposition, already normalized to the
/// `a_i ~ b_j` for `i <= j` convention.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfGraphPair {
    pub a_side: Vec<usize>,
    pub b_side: Vec<usize>,
}

impl HalfGraphPair {
    pub fn order(&self) -> usize {
        self.a_side.len()
    }
}

/// Witness that a graph is a disjoint union of half-graphs together with a
/// nonempty set of isolated vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfGraphDecomposition {
    pub pairs: Vec<HalfGraphPair>,
    pub isolated: Vec<usize>,
}

impl HalfGraphDecomposition {
    /// Rebuild the witnessed graph on the vertex names of `template`.
    pub fn reassemble(&self, template: &Graph) -> Result<Graph> {
        let mut g = Graph::new(template.vertices.clone(), false)?;
        for pair in &self.pairs {
            let n = pair.order();
            for i in 0..n {
                for j in i..n {
                    g.add_edge(pair.a_side[i], pair.b_side[j])?;
                }
            }
        }
        Ok(g)
    }
}

/// If the neighbourhood system of the loopless graph is well-graded, return
/// the half-graph decomposition that witnesses its structure, reading the
/// pairing off the wings of the (necessarily upward-starlike) neighbourhood
/// system. Returns `None` when the neighbourhood system is not well-graded.
pub fn decompose_neighbourhood_wg(g: &Graph) -> Result<Option<HalfGraphDecomposition>> {
    if !g.is_loopless() {
        return Err(CoreError::LoopsNotSupported);
    }
    let ns = neighbourhood_system(g);
    if !is_well_graded(&ns) {
        return Ok(None);
    }
    let isolated: Vec<usize> = (0..g.vertex_count())
        .filter(|&v| g.is_isolated(v))
        .collect();
    let bug = |msg: String| CoreError::InvariantViolation(msg);
    if isolated.is_empty() {
        return Err(bug(
            "a well-graded neighbourhood system forces isolated vertices".into(),
        ));
    }
    let mut pairs = Vec::new();
    if isolated.len() < g.vertex_count() {
        let classification = classify(&ns);
        if classification.kind != ClassKind::UpwardStarlike {
            return Err(bug(format!(
                "expected an upward-starlike neighbourhood system, found {}",
                classification.kind.as_str()
            )));
        }
        // the vertex whose neighbourhood realizes a given nonempty member is
        // unique: non-isolated twins would contradict well-gradedness
        let vertex_with_neighbourhood = |m: Member| -> Result<usize> {
            let hits: Vec<usize> = (0..g.vertex_count())
                .filter(|&v| g.neighbourhood(v) == m.bits())
                .collect();
            match hits.as_slice() {
                [v] => Ok(*v),
                _ => Err(bug(format!(
                    "{} vertices share a nonempty neighbourhood",
                    hits.len()
                ))),
            }
        };
        let mut consumed: Vec<Member> = Vec::new();
        for wing in &classification.wings {
            if consumed.contains(wing.members.last().unwrap()) {
                continue;
            }
            let n = wing.members.len();
            // wing members are nested neighbourhoods; b_i realizes the i-th
            let mut b_side = Vec::with_capacity(n);
            let mut a_side = Vec::with_capacity(n);
            let mut prev = Member::EMPTY;
            for &member in &wing.members {
                let added = member.difference(prev);
                if added.len() != 1 {
                    return Err(bug("wing members do not grow one element at a time".into()));
                }
                a_side.push(added.iter().next().unwrap().0);
                b_side.push(vertex_with_neighbourhood(member)?);
                prev = member;
            }
            // the partner wing consists of the neighbourhoods of the a side,
            // which must descend as {b_i..b_n} masks
            for i in 0..n {
                let expect: u64 = b_side[i..].iter().map(|&v| 1u64 << v).sum();
                if g.neighbourhood(a_side[i]) != expect {
                    return Err(bug(format!(
                        "vertex {} does not close a half-graph pattern",
                        g.vertices[a_side[i]]
                    )));
                }
                consumed.push(mask_to_member(g.neighbourhood(a_side[i])));
            }
            consumed.push(*wing.members.last().unwrap());
            pairs.push(HalfGraphPair { a_side, b_side });
        }
    }
    let decomposition = HalfGraphDecomposition { pairs, isolated };
    let mut covered: u64 = decomposition.isolated.iter().map(|&v| 1u64 << v).sum();
    for pair in &decomposition.pairs {
        for &v in pair.a_side.iter().chain(pair.b_side.iter()) {
            if covered >> v & 1 == 1 {
                return Err(bug("decomposition parts overlap".into()));
            }
            covered |= 1 << v;
        }
    }
    if covered != full_mask(g.vertex_count()) {
        return Err(bug("decomposition does not cover the vertex set".into()));
    }
    if decomposition.reassemble(g)? != *g {
        return Err(bug(
            "decomposition does not reassemble to the input graph".into()
        ));
    }
    Ok(Some(decomposition))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NeighbourhoodFlags {
    pub nwg: bool,
    pub next: bool,
    pub nmax: bool,
    pub cnwg: bool,
    pub cnext: bool,
    pub cnmax: bool,
}

/// Well-graded / extremal / maximum for the neighbourhood and the
/// closed-neighbourhood systems, each computed from first principles.
/// For loopless graphs, debug builds cross-check the equivalences with the
/// complement reduction `N[v] = complement of the complement-graph N(v)`.
pub fn neighbourhood_flags(g: &Graph, caps: &Caps) -> Result<NeighbourhoodFlags> {
    let ns = neighbourhood_system(g);
    let cns = closed_neighbourhood_system(g);
    let flags = NeighbourhoodFlags {
        nwg: is_well_graded(&ns),
        next: is_extremal(&ns, caps)?,
        nmax: is_maximum(&ns, caps)?,
        cnwg: is_well_graded(&cns),
        cnext: is_extremal(&cns, caps)?,
        cnmax: is_maximum(&cns, caps)?,
    };
    #[cfg(debug_assertions)]
    if g.is_loopless() {
        debug_assert_eq!(flags.nwg, flags.next);
        debug_assert_eq!(flags.cnwg, flags.cnext);
        let complement = graph_complement(g)?;
        let cn_via_complement = neighbourhood_system(&complement).complement_family();
        debug_assert_eq!(flags.cnwg, is_well_graded(&cn_via_complement));
        debug_assert_eq!(flags.cnmax, g.is_complete());
    }
    Ok(flags)
}

fn clique_family(adjacency: &[u64], n: usize) -> Vec<Member> {
    let mut family = vec![Member::EMPTY];
    // extend each clique only by higher-indexed common neighbours, so every
    // clique is produced exactly once
    fn extend(v: usize, clique: u64, candidates: u64, adjacency: &[u64], out: &mut Vec<Member>) {
        let clique = clique | 1 << v;
        out.push(Member::from_bits(clique));
        let mut rest = candidates & adjacency[v] & !((1u64 << v) | ((1u64 << v) - 1));
        while rest != 0 {
            let w = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            extend(w, clique, candidates & adjacency[v], adjacency, out);
        }
    }
    for v in 0..n {
        extend(v, 0, full_mask(n), adjacency, &mut family);
    }
    family
}

fn assert_down_closed(s: &SetSystem) {
    debug_assert!(s
        .family()
        .iter()
        .all(|&m| { m.iter().all(|e| s.contains_member(m.without(e))) }));
}

/// All cliques of the graph, including the empty set and every singleton.
/// Down-closed, hence extremal, with VC-dimension the clique number.
pub fn clique_system(g: &Graph, caps: &Caps) -> Result<SetSystem> {
    if g.vertex_count() > caps.max_vertices {
        return Err(CoreError::VertexCapExceeded {
            size: g.vertex_count(),
            cap: caps.max_vertices,
        });
    }
    let s = SetSystem::new(g.vertices.clone(), clique_family(&g.adj, g.vertex_count()))?;
    assert_down_closed(&s);
    Ok(s)
}

/// All independent sets, including the empty set and every singleton.
pub fn independent_set_system(g: &Graph, caps: &Caps) -> Result<SetSystem> {
    if g.vertex_count() > caps.max_vertices {
        return Err(CoreError::VertexCapExceeded {
            size: g.vertex_count(),
            cap: caps.max_vertices,
        });
    }
    let n = g.vertex_count();
    let non_adj: Vec<u64> = (0..n)
        .map(|v| full_mask(n) & !g.adj[v] & !(1u64 << v))
        .collect();
    let s = SetSystem::new(g.vertices.clone(), clique_family(&non_adj, n))?;
    assert_down_closed(&s);
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        let names = (1..=n).map(|i| format!("v{i}")).collect();
        let mut g = Graph::new(names, false).unwrap();
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    fn isolated(n: usize) -> Graph {
        Graph::new((1..=n).map(|i| format!("v{i}")).collect(), false).unwrap()
    }

    #[test]
    fn construction_and_loops() {
        let mut g = Graph::new(vec!["a".into(), "b".into()], false).unwrap();
        assert!(matches!(g.add_edge(0, 0), Err(CoreError::EdgeIsLoop(_))));
        assert!(matches!(g.add_loop(0), Err(CoreError::LoopsNotSupported)));
        g.add_edge(0, 1).unwrap();
        assert_eq!(g.edge_count(), 1);

        let mut loopy = Graph::new(vec!["a".into(), "b".into()], true).unwrap();
        loopy.add_loop(0).unwrap();
        assert!(loopy.has_loop(0));
        assert!(matches!(
            graph_complement(&loopy),
            Err(CoreError::LoopsNotSupported)
        ));
        assert!(matches!(
            decompose_neighbourhood_wg(&loopy),
            Err(CoreError::LoopsNotSupported)
        ));
    }

    #[test]
    fn neighbourhood_systems() {
        let h1 = make_half_graph(1, HalfGraphOrientation::Leq).unwrap();
        let ns = neighbourhood_system(&h1);
        assert_eq!(ns.family_size(), 2);
        assert!(ns.family().iter().all(|m| m.len() == 1));

        let k3 = complete(3);
        let cns = closed_neighbourhood_system(&k3);
        assert_eq!(cns.family_size(), 1);
        assert_eq!(cns.family()[0], cns.domain_mask());

        // half-graph of order 2 with one isolated vertex
        let h2 = make_half_graph(2, HalfGraphOrientation::Leq).unwrap();
        let mut names: Vec<String> = h2.vertex_names().to_vec();
        names.push("z".into());
        let mut g = Graph::new(names, false).unwrap();
        for (u, v) in h2.edges() {
            g.add_edge(u, v).unwrap();
        }
        let ns = neighbourhood_system(&g);
        assert_eq!(ns.family_size(), 5);
        let rendered: Vec<String> = ns.family().iter().map(|&m| ns.render_member(m)).collect();
        assert_eq!(rendered, vec!["{}", "{a1}", "{b2}", "{a1,a2}", "{b1,b2}"]);
    }

    #[test]
    fn twin_flags() {
        let two = isolated(2);
        let flags = twin_analysis(&two);
        assert!(!flags.twin_free);
        assert!(flags.semi_twin_free);

        let k2 = complete(2);
        let flags = twin_analysis(&k2);
        assert!(!flags.closed_twin_free);
        assert!(flags.semi_closed_twin_free);
        assert!(flags.twin_free);
    }

    #[test]
    fn half_graph_shapes() {
        let h5 = make_half_graph(5, HalfGraphOrientation::Leq).unwrap();
        assert_eq!(h5.vertex_count(), 10);
        assert_eq!(h5.edge_count(), 15);
        let geq = make_half_graph(5, HalfGraphOrientation::Geq).unwrap();
        assert_eq!(geq.edge_count(), 15);

        let co1 = make_co_half_graph(1).unwrap();
        assert_eq!(co1.vertex_count(), 2);
        assert_eq!(co1.edge_count(), 0);

        let h3 = make_half_graph(3, HalfGraphOrientation::Leq).unwrap();
        let complement = graph_complement(&h3).unwrap();
        assert_eq!(complement, make_co_half_graph(3).unwrap());
        assert_eq!(graph_complement(&complement).unwrap(), h3);
    }

    #[test]
    fn decomposition_examples() {
        // three isolated vertices: zero pairs
        let d = decompose_neighbourhood_wg(&isolated(3)).unwrap().unwrap();
        assert!(d.pairs.is_empty());
        assert_eq!(d.isolated.len(), 3);

        // half-graph of order 5 plus one isolated vertex
        let h5 = make_half_graph(5, HalfGraphOrientation::Leq).unwrap();
        let mut names: Vec<String> = h5.vertex_names().to_vec();
        names.push("z".into());
        let mut g = Graph::new(names, false).unwrap();
        for (u, v) in h5.edges() {
            g.add_edge(u, v).unwrap();
        }
        let d = decompose_neighbourhood_wg(&g).unwrap().unwrap();
        assert_eq!(d.pairs.len(), 1);
        assert_eq!(d.pairs[0].order(), 5);
        assert_eq!(d.isolated.len(), 1);
        assert_eq!(d.reassemble(&g).unwrap(), g);

        // a bare half-graph, no isolated vertices: not neighbourhood-WG
        let h2 = make_half_graph(2, HalfGraphOrientation::Leq).unwrap();
        assert!(decompose_neighbourhood_wg(&h2).unwrap().is_none());
    }

    #[test]
    fn flag_examples() {
        let caps = Caps::default();
        let k4 = complete(4);
        let flags = neighbourhood_flags(&k4, &caps).unwrap();
        assert!(flags.cnmax);
        assert!(flags.cnwg && flags.cnext);

        let two = isolated(2);
        let flags = neighbourhood_flags(&two, &caps).unwrap();
        assert!(flags.nmax && flags.nwg && flags.next);

        // half-graph of order 2 with an isolated vertex: well-graded and
        // extremal but not maximum
        let h2 = make_half_graph(2, HalfGraphOrientation::Leq).unwrap();
        let mut names: Vec<String> = h2.vertex_names().to_vec();
        names.push("z".into());
        let mut g = Graph::new(names, false).unwrap();
        for (u, v) in h2.edges() {
            g.add_edge(u, v).unwrap();
        }
        let flags = neighbourhood_flags(&g, &caps).unwrap();
        assert!(flags.nwg && flags.next && !flags.nmax);
    }

    #[test]
    fn clique_and_independent_systems() {
        let caps = Caps::default();
        let k3 = complete(3);
        let cs = clique_system(&k3, &caps).unwrap();
        assert_eq!(cs.family_size(), 8);

        // path on three vertices
        let mut p3 = isolated(3);
        p3.add_edge(0, 1).unwrap();
        p3.add_edge(1, 2).unwrap();
        let cs = clique_system(&p3, &caps).unwrap();
        let rendered: Vec<String> = cs.family().iter().map(|&m| cs.render_member(m)).collect();
        assert_eq!(
            rendered,
            vec!["{}", "{v1}", "{v2}", "{v3}", "{v1,v2}", "{v2,v3}"]
        );
        let is = independent_set_system(&p3, &caps).unwrap();
        assert_eq!(is.family_size(), 5);

        let tiny = Caps {
            max_vertices: 2,
            ..Caps::default()
        };
        assert!(matches!(
            clique_system(&k3, &tiny),
            Err(CoreError::VertexCapExceeded { .. })
        ));
    }

    #[test]
    fn between_full_union_shapes() {
        let co2 = make_co_half_graph(2).unwrap();
        let mut k1 = Graph::new(vec!["c1".into()], false).unwrap();
        let g = between_full_union(&co2, &k1).unwrap();
        assert_eq!(g.vertex_count(), 5);
        // co-half-graph(2) has 3 edges, plus 4 cross edges
        assert_eq!(g.edge_count(), 7);
        k1.add_edge(0, 0).unwrap_err();
    }
}
