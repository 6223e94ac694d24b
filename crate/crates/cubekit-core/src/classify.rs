//! Structural recognizers for one-inclusion graphs: full chains, starlike
//! systems, trees with distinct labels, and semitrees.

use crate::caps::Caps;
use crate::duality::dual;
use crate::error::{CoreError, Result};
use crate::one_inclusion::{build_graph, is_well_graded, OneInclusionGraph};
use crate::set_system::{ElementId, Member, SetSystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassKind {
    FullChain,
    UpwardStarlike,
    DownwardStarlike,
    TreeDistinctLabels,
    Semitree,
    Other,
}

impl ClassKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ClassKind::FullChain => "full-chain",
            ClassKind::UpwardStarlike => "upward-starlike",
            ClassKind::DownwardStarlike => "downward-starlike",
            ClassKind::TreeDistinctLabels => "tree-distinct-labels",
            ClassKind::Semitree => "semitree",
            ClassKind::Other => "other",
        }
    }
}

/// A wing of a starlike system: the members along one maximal directed path
/// anchored at the centre (centre excluded), plus the edge labels used on
/// the way, which are exactly the elements the wing touches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Wing {
    pub members: Vec<Member>,
    pub labels: Member,
}

/// The four cycle vertices of a semitree in cyclic order, and the two labels
/// carried by its opposite edge pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SemitreeWitness {
    pub cycle: [usize; 4],
    pub labels: (ElementId, ElementId),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassWitness {
    Chain { order: Vec<Member> },
    Cycle(SemitreeWitness),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub kind: ClassKind,
    pub wings: Vec<Wing>,
    pub witness: Option<ClassWitness>,
}

/// Is the family totally ordered by inclusion with single-element steps?
/// A one-member family is a chain of length one.
pub fn full_chain_order(s: &SetSystem) -> Option<Vec<Member>> {
    // the canonical family order sorts by cardinality already
    let family = s.family();
    for w in family.windows(2) {
        if !(w[0].is_subset_of(w[1]) && w[1].len() == w[0].len() + 1) {
            return None;
        }
    }
    Some(family.to_vec())
}

pub fn is_full_chain(s: &SetSystem) -> bool {
    full_chain_order(s).is_some()
}

/// Underlying undirected graph is a tree and no edge label repeats.
pub fn is_tree_distinct_labels(s: &SetSystem) -> bool {
    let g = build_graph(s);
    g.is_tree() && g.labels_all_distinct()
}

fn has_root_at_empty(g: &OneInclusionGraph) -> Option<usize> {
    g.vertex_of(Member::EMPTY)
}

/// Tree, distinct labels, rooted at the empty member, every edge directed
/// away from the root.
fn is_uniformly_directed_rooted_tree(g: &OneInclusionGraph) -> bool {
    if !(g.is_tree() && g.labels_all_distinct()) {
        return false;
    }
    let Some(root) = has_root_at_empty(g) else {
        return false;
    };
    let depth = g.distances_from(root);
    g.edges()
        .iter()
        .all(|e| depth[e.target] == depth[e.source].map(|d| d + 1))
}

/// Evaluates the rooted-tree criterion on the system flipped so that the
/// member `d` lands on the empty set.
pub fn is_uniformly_directed_rooted_tree_after_flip(s: &SetSystem, d: Member) -> Result<bool> {
    let flipped = s.flip(d, Member::EMPTY)?;
    Ok(is_uniformly_directed_rooted_tree(&build_graph(&flipped)))
}

/// Strip leaves until only the cycle remains; `None` unless the graph is
/// connected and unicyclic with a cycle of length four.
fn four_cycle_core(g: &OneInclusionGraph) -> Option<[usize; 4]> {
    let n = g.vertex_count();
    if !g.is_connected() || g.edge_count() != n {
        return None;
    }
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut alive = vec![true; n];
    let mut queue: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    while let Some(v) = queue.pop() {
        alive[v] = false;
        for w in g.neighbours(v) {
            if alive[w] {
                degree[w] -= 1;
                if degree[w] == 1 {
                    queue.push(w);
                }
            }
        }
    }
    let core: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    if core.len() != 4 || core.iter().any(|&v| degree[v] != 2) {
        return None;
    }
    // order the four cycle vertices by walking
    let start = core[0];
    let mut order = vec![start];
    let mut prev = usize::MAX;
    while order.len() < 4 {
        let cur = *order.last().unwrap();
        let next = g
            .neighbours(cur)
            .find(|&w| alive[w] && w != prev && !order.contains(&w))?;
        prev = cur;
        order.push(next);
    }
    // must close up
    let last = *order.last().unwrap();
    if g.neighbours(last).filter(|&w| w == start).count() == 0 {
        return None;
    }
    Some([order[0], order[1], order[2], order[3]])
}

/// Semitree: connected, a unique cycle which is a four-cycle whose opposite
/// edges carry equal labels and parallel directions (the two pairs distinct),
/// and all labels outside the cycle distinct and disjoint from the cycle's.
pub fn is_semitree(g: &OneInclusionGraph) -> Option<SemitreeWitness> {
    let cycle = four_cycle_core(g)?;
    let on_cycle = |v: usize| cycle.contains(&v);
    // locate the four cycle edges in traversal order
    let mut cycle_edges = Vec::with_capacity(4);
    for i in 0..4 {
        let (u, v) = (cycle[i], cycle[(i + 1) % 4]);
        let e = g
            .edges()
            .iter()
            .find(|e| (e.source, e.target) == (u, v) || (e.source, e.target) == (v, u))?;
        // forward = true when the edge is directed along the traversal
        cycle_edges.push((e.label, e.source == u));
    }
    let (lab01, fwd01) = cycle_edges[0];
    let (lab12, fwd12) = cycle_edges[1];
    let (lab23, fwd23) = cycle_edges[2];
    let (lab30, fwd30) = cycle_edges[3];
    // opposite pairs: parallel directions are anti-aligned in traversal order
    if lab01 != lab23 || lab12 != lab30 || lab01 == lab12 {
        return None;
    }
    if fwd01 == fwd23 || fwd12 == fwd30 {
        return None;
    }
    // labels outside the cycle: distinct, and disjoint from the cycle labels
    let mut seen = Member::singleton(lab01).union(Member::singleton(lab12));
    for e in g.edges() {
        if on_cycle(e.source) && on_cycle(e.target) {
            continue;
        }
        let bit = Member::singleton(e.label);
        if !bit.intersection(seen).is_empty() {
            return None;
        }
        seen = seen.union(bit);
    }
    Some(SemitreeWitness {
        cycle,
        labels: (lab01, lab12),
    })
}

/// Semitree whose edges are all directed away from a single vertex, or a
/// bare four-cycle. Every vertex is tried as the root.
pub fn is_uniformly_directed_semitree(g: &OneInclusionGraph) -> bool {
    let Some(_) = is_semitree(g) else {
        return false;
    };
    if g.vertex_count() == 4 {
        return true;
    }
    (0..g.vertex_count()).any(|o| {
        let d = g.distances_from(o);
        g.edges()
            .iter()
            .all(|e| d[e.target] == d[e.source].map(|x| x + 1))
    })
}

/// Is `v` a source (every edge directed away from it, distance-wise) or a
/// sink? Only meaningful on connected graphs.
fn source_sink_status(g: &OneInclusionGraph, v: usize) -> (bool, bool) {
    let d = g.distances_from(v);
    let mut source = true;
    let mut sink = true;
    for e in g.edges() {
        match (d[e.source], d[e.target]) {
            (Some(a), Some(b)) if a < b => sink = false,
            (Some(a), Some(b)) if a > b => source = false,
            _ => return (false, false),
        }
    }
    (source, sink)
}

/// Sources and sinks of a connected graph; exposed for the uniqueness check
/// in the verification harness.
pub fn sources_and_sinks(g: &OneInclusionGraph) -> (Vec<usize>, Vec<usize>) {
    let mut sources = Vec::new();
    let mut sinks = Vec::new();
    for v in 0..g.vertex_count() {
        let (source, sink) = source_sink_status(g, v);
        if source {
            sources.push(v);
        }
        if sink {
            sinks.push(v);
        }
    }
    (sources, sinks)
}

fn extract_wings(g: &OneInclusionGraph, centre: usize) -> Vec<Wing> {
    let mut wings = Vec::new();
    for first in g.neighbours(centre).collect::<Vec<_>>() {
        let mut members = Vec::new();
        let mut labels = Member::EMPTY;
        let mut prev = centre;
        let mut cur = first;
        loop {
            let label = g
                .edges()
                .iter()
                .find(|e| {
                    (e.source, e.target) == (prev, cur) || (e.source, e.target) == (cur, prev)
                })
                .expect("walked along an edge")
                .label;
            labels = labels.union(Member::singleton(label));
            members.push(g.st(cur));
            match g.neighbours(cur).find(|&w| w != prev) {
                Some(next) => {
                    prev = cur;
                    cur = next;
                }
                None => break,
            }
        }
        wings.push(Wing { members, labels });
    }
    wings
}

/// Starlike tree anchored at the given centre: tree, distinct labels, centre
/// of degree at least two which is a source or a sink, all other degrees at
/// most two. Returns the wings on success.
fn starlike_at(g: &OneInclusionGraph, centre: usize, want_source: bool) -> Option<Vec<Wing>> {
    if !(g.is_tree() && g.labels_all_distinct()) {
        return None;
    }
    if g.degree(centre) < 2 {
        return None;
    }
    if (0..g.vertex_count()).any(|v| v != centre && g.degree(v) > 2) {
        return None;
    }
    let (source, sink) = source_sink_status(g, centre);
    if !(want_source && source || !want_source && sink) {
        return None;
    }
    let wings = extract_wings(g, centre);
    debug_assert!({
        let mut all = Member::EMPTY;
        wings.iter().all(|w| {
            let fresh = w.labels.intersection(all).is_empty();
            all = all.union(w.labels);
            fresh
        })
    });
    Some(wings)
}

/// Upward-starlike: starlike with the empty member as centre and source, and
/// some domain element lying in no member.
pub fn upward_starlike_wings(s: &SetSystem, g: &OneInclusionGraph) -> Option<Vec<Wing>> {
    let centre = has_root_at_empty(g)?;
    if s.union_mask() == s.domain_mask() {
        return None;
    }
    starlike_at(g, centre, true)
}

/// Downward-starlike: starlike with the full member as centre and sink, and
/// some domain element lying in every member.
pub fn downward_starlike_wings(s: &SetSystem, g: &OneInclusionGraph) -> Option<Vec<Wing>> {
    let centre = g.vertex_of(s.domain_mask())?;
    if s.intersection_mask().is_empty() && s.domain_size() > 0 {
        return None;
    }
    starlike_at(g, centre, false)
}

/// Structural verdict in fixed priority order: full-chain, upward-starlike,
/// downward-starlike, tree with distinct labels, semitree, other.
pub fn classify(s: &SetSystem) -> Classification {
    if let Some(order) = full_chain_order(s) {
        return Classification {
            kind: ClassKind::FullChain,
            wings: Vec::new(),
            witness: Some(ClassWitness::Chain { order }),
        };
    }
    let g = build_graph(s);
    if let Some(wings) = upward_starlike_wings(s, &g) {
        return Classification {
            kind: ClassKind::UpwardStarlike,
            wings,
            witness: None,
        };
    }
    if let Some(wings) = downward_starlike_wings(s, &g) {
        return Classification {
            kind: ClassKind::DownwardStarlike,
            wings,
            witness: None,
        };
    }
    if g.is_tree() && g.labels_all_distinct() {
        return Classification {
            kind: ClassKind::TreeDistinctLabels,
            wings: Vec::new(),
            witness: None,
        };
    }
    if let Some(witness) = is_semitree(&g) {
        return Classification {
            kind: ClassKind::Semitree,
            wings: Vec::new(),
            witness: Some(ClassWitness::Cycle(witness)),
        };
    }
    Classification {
        kind: ClassKind::Other,
        wings: Vec::new(),
        witness: None,
    }
}

/// Both routes of the main duality verdict: computes well-gradedness of the
/// system and of its dual directly, checks the result against the structural
/// classification, and returns it. A disagreement would be a bug.
pub fn verdict_self_and_dual(s: &SetSystem, _caps: &Caps) -> Result<bool> {
    let direct = is_well_graded(s) && is_well_graded(&dual(s)?.system);
    let kind = classify(s).kind;
    let structural = matches!(
        kind,
        ClassKind::FullChain | ClassKind::UpwardStarlike | ClassKind::DownwardStarlike
    );
    if direct != structural {
        return Err(CoreError::InvariantViolation(format!(
            "self-and-dual well-gradedness ({direct}) disagrees with the classification ({})",
            kind.as_str()
        )));
    }
    Ok(direct)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(domain: &[&str], members: &[&[&str]]) -> SetSystem {
        SetSystem::from_names(domain, members).unwrap()
    }

    fn semitree_13() -> SetSystem {
        sys(
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
    }

    #[test]
    fn tree_with_distinct_labels() {
        assert!(is_tree_distinct_labels(&sys(
            &["1", "2", "3"],
            &[&["1"], &["1", "2"], &["1", "3"]]
        )));
        assert!(!is_tree_distinct_labels(&semitree_13()));
        assert!(!is_tree_distinct_labels(&sys(
            &["1", "2"],
            &[&[], &["1"], &["2"], &["1", "2"]]
        )));
    }

    #[test]
    fn rooted_tree_after_flip() {
        let s = sys(&["1", "2", "3"], &[&["1"], &["1", "2"], &["1", "3"]]);
        let d = s.member_from_names(&["1"]).unwrap();
        assert!(is_uniformly_directed_rooted_tree_after_flip(&s, d).unwrap());

        let chain = sys(&["1", "2"], &[&[], &["1"], &["1", "2"]]);
        assert!(is_uniformly_directed_rooted_tree_after_flip(&chain, Member::EMPTY).unwrap());

        assert!(matches!(
            is_uniformly_directed_rooted_tree_after_flip(&s, Member::EMPTY),
            Err(CoreError::MemberNotInFamily(_))
        ));
    }

    #[test]
    fn semitree_recognition() {
        let s = semitree_13();
        let g = build_graph(&s);
        let witness = is_semitree(&g).expect("semitree");
        let cycle_members: Vec<String> = witness
            .cycle
            .iter()
            .map(|&v| s.render_member(g.st(v)))
            .collect();
        let mut sorted = cycle_members.clone();
        sorted.sort();
        assert_eq!(sorted, vec!["{a,b,c}", "{a,b}", "{a,c}", "{a}"]);
        let labels = [
            g.label_name(witness.labels.0).to_string(),
            g.label_name(witness.labels.1).to_string(),
        ];
        let mut labels = labels.to_vec();
        labels.sort();
        assert_eq!(labels, vec!["b", "c"]);
        assert!(is_uniformly_directed_semitree(&g));

        // a tree has no cycle
        let t = sys(&["1", "2", "3"], &[&["1"], &["1", "2"], &["1", "3"]]);
        assert!(is_semitree(&build_graph(&t)).is_none());

        // the bare four-cycle of the power set on two elements
        let p2 = sys(&["1", "2"], &[&[], &["1"], &["2"], &["1", "2"]]);
        let g = build_graph(&p2);
        assert!(is_semitree(&g).is_some());
        assert!(is_uniformly_directed_semitree(&g));
    }

    #[test]
    fn classify_examples() {
        let star = sys(&["1", "2", "3"], &[&[], &["1"], &["2"]]);
        let c = classify(&star);
        assert_eq!(c.kind, ClassKind::UpwardStarlike);
        assert_eq!(c.wings.len(), 2);
        assert!(c.wings.iter().all(|w| w.members.len() == 1));

        let chain = sys(&["1", "2"], &[&[], &["1"], &["1", "2"]]);
        assert_eq!(classify(&chain).kind, ClassKind::FullChain);

        let tree = sys(&["1", "2", "3"], &[&["1"], &["1", "2"], &["1", "3"]]);
        assert_eq!(classify(&tree).kind, ClassKind::TreeDistinctLabels);

        assert_eq!(classify(&semitree_13()).kind, ClassKind::Semitree);

        let single = sys(&["1"], &[&["1"]]);
        assert_eq!(classify(&single).kind, ClassKind::FullChain);

        // no element outside the union, so the star is not upward-starlike
        let cramped = sys(&["1", "2"], &[&[], &["1"], &["2"]]);
        assert_eq!(classify(&cramped).kind, ClassKind::TreeDistinctLabels);
    }

    #[test]
    fn downward_starlike_is_the_complement_of_upward() {
        let star = sys(&["1", "2", "3"], &[&[], &["1"], &["2"]]);
        let down = star.complement_family();
        assert_eq!(classify(&down).kind, ClassKind::DownwardStarlike);
    }

    #[test]
    fn verdict_examples() {
        let caps = Caps::default();
        let chain = sys(
            &["1", "2", "3"],
            &[&[], &["1"], &["1", "2"], &["1", "2", "3"]],
        );
        assert!(verdict_self_and_dual(&chain, &caps).unwrap());

        let tree = sys(&["1", "2", "3"], &[&["1"], &["1", "2"], &["1", "3"]]);
        assert!(!verdict_self_and_dual(&tree, &caps).unwrap());

        assert!(!verdict_self_and_dual(&semitree_13(), &caps).unwrap());
    }
}
