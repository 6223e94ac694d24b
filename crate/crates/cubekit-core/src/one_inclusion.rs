//! The labelled directed one-inclusion graph of a set system: one vertex per
//! family member, an edge `v_A -> v_B` labelled `b` whenever `B = A + {b}`.

use std::collections::VecDeque;

use crate::error::{CoreError, Result};
use crate::set_system::{ElementId, Member, SetSystem};

/// A directed edge of the one-inclusion graph. The target member is always
/// the source member plus the labelling element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    pub label: ElementId,
}

/// Immutable one-inclusion graph. Vertices appear in family order, so vertex
/// `i` carries `st(i) = family[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneInclusionGraph {
    domain: Vec<String>,
    verts: Vec<Member>,
    edges: Vec<Edge>,
    // per vertex: (edge index, other endpoint, outgoing?)
    adj: Vec<Vec<(usize, usize, bool)>>,
}

/// Pairwise undirected distances; `None` marks a disconnected pair.
#[derive(Debug, Clone)]
pub struct DistanceTable {
    d: Vec<Vec<Option<u32>>>,
}

impl DistanceTable {
    pub fn get(&self, i: usize, j: usize) -> Option<u32> {
        self.d[i][j]
    }

    pub fn size(&self) -> usize {
        self.d.len()
    }

    #[cfg(debug_assertions)]
    fn check_metric(&self) {
        let n = self.d.len();
        for i in 0..n {
            debug_assert_eq!(self.d[i][i], Some(0));
            for j in 0..n {
                debug_assert_eq!(self.d[i][j], self.d[j][i]);
                for k in 0..n {
                    if let (Some(ij), Some(jk)) = (self.d[i][j], self.d[j][k]) {
                        if let Some(ik) = self.d[i][k] {
                            debug_assert!(ik <= ij + jk);
                        }
                    }
                }
            }
        }
    }
}

pub fn build_graph(s: &SetSystem) -> OneInclusionGraph {
    let verts: Vec<Member> = s.family().to_vec();
    let n = verts.len();
    let mut edges = Vec::new();
    let mut adj = vec![Vec::new(); n];
    for a in 0..n {
        for b in 0..n {
            let extra = verts[b].difference(verts[a]);
            if verts[a].is_subset_of(verts[b]) && extra.len() == 1 {
                let label = extra.iter().next().unwrap();
                let idx = edges.len();
                edges.push(Edge {
                    source: a,
                    target: b,
                    label,
                });
                adj[a].push((idx, b, true));
                adj[b].push((idx, a, false));
            }
        }
    }
    OneInclusionGraph {
        domain: s.domain_names().to_vec(),
        verts,
        edges,
        adj,
    }
}

impl OneInclusionGraph {
    pub fn vertex_count(&self) -> usize {
        self.verts.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn st(&self, v: usize) -> Member {
        self.verts[v]
    }

    pub fn domain_names(&self) -> &[String] {
        &self.domain
    }

    pub fn label_name(&self, e: ElementId) -> &str {
        &self.domain[e.0]
    }

    pub fn vertex_of(&self, m: Member) -> Option<usize> {
        self.verts.iter().position(|&v| v == m)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.adj[v].iter().filter(|&&(_, _, out)| !out).count()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.adj[v].iter().filter(|&&(_, _, out)| out).count()
    }

    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().map(|&(_, w, _)| w)
    }

    /// BFS distances from one vertex on the undirected view.
    pub fn distances_from(&self, start: usize) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.verts.len()];
        let mut queue = VecDeque::new();
        dist[start] = Some(0);
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            let dv = dist[v].unwrap();
            for &(_, w, _) in &self.adj[v] {
                if dist[w].is_none() {
                    dist[w] = Some(dv + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn distance_table(&self) -> DistanceTable {
        let d = (0..self.verts.len())
            .map(|v| self.distances_from(v))
            .collect();
        let table = DistanceTable { d };
        #[cfg(debug_assertions)]
        table.check_metric();
        table
    }

    pub fn is_connected(&self) -> bool {
        if self.verts.is_empty() {
            return true;
        }
        self.distances_from(0).iter().all(|d| d.is_some())
    }

    /// Connected with `|E| = |V| - 1`: a tree on the undirected view.
    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.edges.len() + 1 == self.verts.len()
    }

    pub fn labels_all_distinct(&self) -> bool {
        let mut seen = 0u64;
        for e in &self.edges {
            let bit = 1u64 << e.label.0;
            if seen & bit != 0 {
                return false;
            }
            seen |= bit;
        }
        true
    }

    /// Distinct labels appearing on edges, as a domain mask.
    pub fn label_mask(&self) -> Member {
        self.edges
            .iter()
            .fold(Member::EMPTY, |m, e| m.union(Member::singleton(e.label)))
    }

    /// Every edge with the given label. Errors when the element labels no
    /// edge at all. Cross-checks that the labelled edges are exactly the cut
    /// between the vertices whose member contains the element and the rest,
    /// directed into the containing side, and that both sides induce
    /// connected subgraphs whenever the system is well-graded.
    pub fn cut_set(&self, a: ElementId) -> Result<Vec<Edge>> {
        let labelled: Vec<Edge> = self
            .edges
            .iter()
            .copied()
            .filter(|e| e.label == a)
            .collect();
        if labelled.is_empty() {
            return Err(CoreError::NotEssential(self.label_name(a).to_string()));
        }
        let side: Vec<bool> = self.verts.iter().map(|m| m.contains(a)).collect();
        let mut crossing: Vec<Edge> = self
            .edges
            .iter()
            .copied()
            .filter(|e| side[e.source] != side[e.target])
            .collect();
        crossing.sort_by_key(|e| (e.source, e.target));
        let mut sorted = labelled.clone();
        sorted.sort_by_key(|e| (e.source, e.target));
        if sorted != crossing {
            return Err(CoreError::InvariantViolation(format!(
                "edges labelled {} differ from the cut they should form",
                self.label_name(a)
            )));
        }
        if labelled.iter().any(|e| side[e.source] || !side[e.target]) {
            return Err(CoreError::InvariantViolation(format!(
                "an edge labelled {} is not directed into the containing side",
                self.label_name(a)
            )));
        }
        if self.is_well_graded() {
            for keep in [true, false] {
                if !self.side_connected(&side, keep) {
                    return Err(CoreError::InvariantViolation(format!(
                        "cut side for {} is disconnected in a well-graded system",
                        self.label_name(a)
                    )));
                }
            }
        }
        Ok(labelled)
    }

    fn side_connected(&self, side: &[bool], keep: bool) -> bool {
        let members: Vec<usize> = (0..self.verts.len()).filter(|&v| side[v] == keep).collect();
        let Some(&start) = members.first() else {
            return true;
        };
        let mut seen = vec![false; self.verts.len()];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        let mut reached = 1;
        while let Some(v) = queue.pop_front() {
            for &(_, w, _) in &self.adj[v] {
                if side[w] == keep && !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        reached == members.len()
    }

    /// `below(U)`: vertices whose member is contained in the member of some
    /// vertex of `U`.
    pub fn below(&self, u: &[usize]) -> Result<Vec<usize>> {
        if u.is_empty() {
            return Err(CoreError::EmptyVertexSet);
        }
        Ok((0..self.verts.len())
            .filter(|&v| u.iter().any(|&w| self.verts[v].is_subset_of(self.verts[w])))
            .collect())
    }

    /// Union of the members carried by `U`.
    pub fn st_union(&self, u: &[usize]) -> Result<Member> {
        if u.is_empty() {
            return Err(CoreError::EmptyVertexSet);
        }
        Ok(u.iter().fold(Member::EMPTY, |m, &v| m.union(self.verts[v])))
    }

    /// Reverse every edge. The result is the one-inclusion graph of the
    /// complement family, so vertex payloads are complemented and the vertex
    /// order re-canonicalized; in debug builds the result is checked against
    /// a fresh build from the complemented system.
    pub fn reverse(&self) -> OneInclusionGraph {
        let full = Member::full(self.domain.len());
        let mut order: Vec<usize> = (0..self.verts.len()).collect();
        let complemented: Vec<Member> = self.verts.iter().map(|&m| full.difference(m)).collect();
        order.sort_by_key(|&v| complemented[v].canonical_key());
        let mut position = vec![0usize; order.len()];
        for (new_idx, &old) in order.iter().enumerate() {
            position[old] = new_idx;
        }
        let verts: Vec<Member> = order.iter().map(|&v| complemented[v]).collect();
        let mut edges: Vec<Edge> = self
            .edges
            .iter()
            .map(|e| Edge {
                source: position[e.target],
                target: position[e.source],
                label: e.label,
            })
            .collect();
        edges.sort_by_key(|e| (e.source, e.target));
        let mut adj = vec![Vec::new(); verts.len()];
        for (idx, e) in edges.iter().enumerate() {
            adj[e.source].push((idx, e.target, true));
            adj[e.target].push((idx, e.source, false));
        }
        let reversed = OneInclusionGraph {
            domain: self.domain.clone(),
            verts,
            edges,
            adj,
        };
        #[cfg(debug_assertions)]
        {
            let rebuilt = build_graph(
                &SetSystem::new(self.domain.clone(), complemented)
                    .expect("complement preserves the invariants"),
            );
            debug_assert_eq!(reversed.verts, rebuilt.verts);
            debug_assert_eq!(reversed.edges, rebuilt.edges);
        }
        reversed
    }

    /// Distance criterion for well-gradedness: the undirected graph distance
    /// between any two vertices equals the Hamming distance of their members.
    /// Disconnected pairs fail it.
    pub fn is_well_graded(&self) -> bool {
        let n = self.verts.len();
        for i in 0..n {
            let dist = self.distances_from(i);
            for (j, d) in dist.iter().enumerate().skip(i + 1) {
                match d {
                    Some(d) if *d as usize == self.verts[i].hamming(self.verts[j]) => {}
                    _ => return false,
                }
            }
        }
        true
    }

    /// Two-colourable by member parity; holds for every one-inclusion graph.
    pub fn is_bipartite_by_parity(&self) -> bool {
        self.edges
            .iter()
            .all(|e| self.verts[e.source].len() % 2 != self.verts[e.target].len() % 2)
    }

    /// DOT rendering with directed labelled edges. Vertex names are the
    /// member's element list, the empty member printed as `{}`.
    pub fn to_dot(&self) -> String {
        let name = |m: Member| {
            let parts: Vec<&str> = m.iter().map(|e| self.domain[e.0].as_str()).collect();
            format!("{{{}}}", parts.join(","))
        };
        let mut out = String::from("digraph one_inclusion {\n");
        for &v in &self.verts {
            out.push_str(&format!("  \"{}\";\n", name(v)));
        }
        for e in &self.edges {
            out.push_str(&format!(
                "  \"{}\" -> \"{}\" [label=\"{}\"];\n",
                name(self.verts[e.source]),
                name(self.verts[e.target]),
                self.label_name(e.label)
            ));
        }
        out.push_str("}\n");
        out
    }
}

/// Well-gradedness via the distance criterion, with a debug cross-check
/// against the midpoint characterization.
pub fn is_well_graded(s: &SetSystem) -> bool {
    let result = build_graph(s).is_well_graded();
    debug_assert_eq!(result, midpoint_characterization(s));
    result
}

/// Independent characterization of well-gradedness: for every pair of
/// members at Hamming distance at least two there is a third member strictly
/// between them (`A & B <= C <= A | B`, `C != A`, `C != B`).
pub fn midpoint_characterization(s: &SetSystem) -> bool {
    let family = s.family();
    for (i, &a) in family.iter().enumerate() {
        for &b in &family[i + 1..] {
            if a.hamming(b) < 2 {
                continue;
            }
            let lower = a.intersection(b);
            let upper = a.union(b);
            let found = family
                .iter()
                .any(|&c| c != a && c != b && lower.is_subset_of(c) && c.is_subset_of(upper));
            if !found {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain3() -> SetSystem {
        SetSystem::from_names(&["1", "2"], &[&[], &["1"], &["1", "2"]]).unwrap()
    }

    fn semitree_13() -> SetSystem {
        SetSystem::from_names(
            &["a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k", "l"],
            &[
                &["a"],
                &["a", "b"],
                &["a", "b", "c"],
                &["a", "c"],
                &["a", "c", "e"],
                &["a", "c", "e", "f"],
                &["a", "c", "e", "g"],
                &["a", "h"],
                &["a", "b", "c", "d"],
                &["a", "b", "i"],
                &["a", "b", "j"],
                &["a", "b", "j", "k"],
                &["a", "b", "j", "l"],
            ],
        )
        .unwrap()
    }

    #[test]
    fn chain_builds_a_one_way_path() {
        let g = build_graph(&chain3());
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 2);
        let labels: Vec<&str> = g.edges().iter().map(|e| g.label_name(e.label)).collect();
        assert_eq!(labels, ["1", "2"]);
        assert!(g.is_well_graded());
        assert!(g.is_bipartite_by_parity());
    }

    #[test]
    fn hamming_two_members_stay_disconnected() {
        let s = SetSystem::from_names(&["1", "2"], &[&["1"], &["2"]]).unwrap();
        let g = build_graph(&s);
        assert_eq!(g.edge_count(), 0);
        assert!(!is_well_graded(&s));
        assert!(g.distance_table().get(0, 1).is_none());
    }

    #[test]
    fn semitree_13_graph_shape() {
        let s = semitree_13();
        let g = build_graph(&s);
        assert_eq!(g.vertex_count(), 13);
        assert_eq!(g.edge_count(), 13);
        assert!(is_well_graded(&s));
    }

    #[test]
    fn cut_set_examples() {
        let g = build_graph(&chain3());
        let two = ElementId(1);
        let cut = g.cut_set(two).unwrap();
        assert_eq!(cut.len(), 1);
        assert_eq!(g.st(cut[0].source).len(), 1);
        assert_eq!(g.st(cut[0].target).len(), 2);

        let s = semitree_13();
        let g = build_graph(&s);
        let b = s.element_id("b").unwrap();
        let cut = g.cut_set(b).unwrap();
        assert_eq!(cut.len(), 2);

        // a labels no edge: it never enters or leaves a member along an edge
        let a = s.element_id("a").unwrap();
        assert!(matches!(g.cut_set(a), Err(CoreError::NotEssential(_))));
    }

    #[test]
    fn below_and_st_union() {
        let g = build_graph(&chain3());
        let v_empty = g.vertex_of(Member::EMPTY).unwrap();
        assert_eq!(g.below(&[v_empty]).unwrap(), vec![v_empty]);
        assert_eq!(g.st_union(&[v_empty]).unwrap(), Member::EMPTY);
        let top = g.vertex_of(Member::from_bits(0b11)).unwrap();
        assert_eq!(g.below(&[top]).unwrap().len(), 3);
        assert!(matches!(g.below(&[]), Err(CoreError::EmptyVertexSet)));
    }

    #[test]
    fn below_bounds_after_flipping_the_semitree() {
        // flip the thirteen-member family so its bottom member becomes the
        // empty set, then inspect below() at the image of the cycle's top
        let s = semitree_13();
        let bottom = s.member_from_names(&["a"]).unwrap();
        let flipped = s.flip(bottom, Member::EMPTY).unwrap();
        assert_eq!(flipped.additionality(), 2);
        let g = build_graph(&flipped);
        let bc = flipped.member_from_names(&["b", "c"]).unwrap();
        let v = g.vertex_of(bc).unwrap();
        let below = g.below(&[v]).unwrap();
        let st = g.st_union(&[v]).unwrap();
        // the cycle sits under {b,c}: exactly the upper bound |st(U)| + 2
        assert_eq!(st.len(), 2);
        assert_eq!(below.len(), 4);
        for u in 1..(1u32 << g.vertex_count().min(8)) {
            let set: Vec<usize> =
                (0..g.vertex_count().min(8)).filter(|&i| u >> i & 1 == 1).collect();
            let b = g.below(&set).unwrap().len();
            let width = g.st_union(&set).unwrap().len();
            assert!(width + 1 <= b && b <= width + 2);
        }
    }

    #[test]
    fn reverse_is_the_complement_graph_and_involutive() {
        let s = chain3();
        let g = build_graph(&s);
        let r = g.reverse();
        assert_eq!(r, build_graph(&s.complement_family()));
        assert_eq!(r.reverse(), g);
    }

    #[test]
    fn dot_output_is_stable() {
        let g = build_graph(&chain3());
        let dot = g.to_dot();
        assert!(dot.starts_with("digraph one_inclusion {"));
        assert!(dot.contains("\"{}\" -> \"{1}\" [label=\"1\"];"));
        assert!(dot.contains("\"{1}\" -> \"{1,2}\" [label=\"2\"];"));
    }
}
