//! Report assembly: one schema-stable JSON document per analyzed input.

use serde::Serialize;
use serde_json::Value;

use cubekit_core::classify::{classify, ClassWitness, Classification};
use cubekit_core::duality::{classify_dual_properties, DualPropertyFlags};
use cubekit_core::error::{CoreError, Result};
use cubekit_core::graphs::{
    clique_system, decompose_neighbourhood_wg, independent_set_system, neighbourhood_flags,
    neighbourhood_system, twin_analysis, Graph, HalfGraphDecomposition,
};
use cubekit_core::json::{graph_to_json, system_to_json};
use cubekit_core::one_inclusion::{build_graph, midpoint_characterization};
use cubekit_core::set_system::SetSystem;
use cubekit_core::shattering::{is_extremal, is_maximum, shatter_report};
use cubekit_core::Caps;

pub const REPORT_SCHEMA: &str = "cubekit/report/1";

#[derive(Debug, Clone, Copy)]
pub struct ReportOptions {
    pub caps: Caps,
    /// Re-derive key predicates through their independent second routes and
    /// fail with an invariant violation on disagreement.
    pub strict: bool,
}

#[derive(Serialize)]
pub struct Report {
    schema: &'static str,
    input: Value,
    counts: Counts,
    flags: Flags,
    classification: ClassificationJson,
    graph: Option<GraphBlock>,
    decomposition: Option<DecompositionJson>,
}

#[derive(Serialize)]
struct Counts {
    domain: usize,
    family: usize,
    essential: usize,
    additionality: i64,
    vc_dim: usize,
    shattered: usize,
    strongly_shattered: usize,
    edges: usize,
}

#[derive(Serialize)]
struct Flags {
    well_graded: bool,
    extremal: bool,
    maximum: bool,
    dual_well_graded: Option<bool>,
    ess_dual_well_graded: Option<bool>,
    self_dual: Option<bool>,
    almost_self_dual: Option<bool>,
    self_and_dual_well_graded: Option<bool>,
    self_and_ess_dual_well_graded: Option<bool>,
    self_and_dual_extremal: Option<bool>,
    self_and_dual_maximum: Option<bool>,
}

#[derive(Serialize)]
pub struct ClassificationJson {
    kind: &'static str,
    wings: Vec<WingJson>,
    witness: Option<Value>,
}

#[derive(Serialize)]
struct WingJson {
    length: usize,
    labels: Vec<String>,
    members: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct GraphBlock {
    vertices: usize,
    edges: usize,
    loops: usize,
    twins: TwinsJson,
    neighbourhood: NeighbourhoodJson,
    /// Absent when the vertex count exceeds the enumeration cap.
    cliques: Option<CliquesJson>,
}

#[derive(Serialize)]
struct CliquesJson {
    clique_number: usize,
    independence_number: usize,
    clique_system_members: usize,
    independent_system_members: usize,
}

#[derive(Serialize)]
struct TwinsJson {
    twin_free: bool,
    closed_twin_free: bool,
    semi_twin_free: bool,
    semi_closed_twin_free: bool,
}

#[derive(Serialize)]
struct NeighbourhoodJson {
    well_graded: bool,
    extremal: bool,
    maximum: bool,
    closed_well_graded: bool,
    closed_extremal: bool,
    closed_maximum: bool,
}

#[derive(Serialize)]
pub struct DecompositionJson {
    pairs: Vec<PairJson>,
    isolated: Vec<String>,
}

#[derive(Serialize)]
struct PairJson {
    order: usize,
    a_side: Vec<String>,
    b_side: Vec<String>,
}

fn member_names(s: &SetSystem, m: cubekit_core::Member) -> Vec<String> {
    m.iter().map(|e| s.element_name(e).to_string()).collect()
}

pub fn classification_json(s: &SetSystem, c: &Classification) -> ClassificationJson {
    let g = build_graph(s);
    let wings = c
        .wings
        .iter()
        .map(|w| WingJson {
            length: w.members.len(),
            labels: member_names(s, w.labels),
            members: w.members.iter().map(|&m| member_names(s, m)).collect(),
        })
        .collect();
    let witness = c.witness.as_ref().map(|w| match w {
        ClassWitness::Chain { order } => serde_json::json!({
            "chain": order.iter().map(|&m| member_names(s, m)).collect::<Vec<_>>(),
        }),
        ClassWitness::Cycle(cycle) => serde_json::json!({
            "cycle": cycle.cycle.iter().map(|&v| member_names(s, g.st(v))).collect::<Vec<_>>(),
            "labels": [
                s.element_name(cycle.labels.0),
                s.element_name(cycle.labels.1),
            ],
        }),
    });
    ClassificationJson {
        kind: c.kind.as_str(),
        wings,
        witness,
    }
}

fn dual_flags(s: &SetSystem, caps: &Caps) -> Result<Option<DualPropertyFlags>> {
    match classify_dual_properties(s, caps) {
        Ok(flags) => Ok(Some(flags)),
        Err(CoreError::EmptyDomainDual) => Ok(None),
        Err(e) => Err(e),
    }
}

fn assemble(
    s: &SetSystem,
    input: Value,
    graph_block: Option<GraphBlock>,
    decomposition: Option<DecompositionJson>,
    opts: &ReportOptions,
) -> Result<Report> {
    let caps = &opts.caps;
    let g = build_graph(s);
    let shatter = shatter_report(s, caps)?;
    let wg = g.is_well_graded();
    let extremal = is_extremal(s, caps)?;
    let maximum = is_maximum(s, caps)?;
    let duals = dual_flags(s, caps)?;
    let classification = classify(s);

    let counts = Counts {
        domain: s.domain_size(),
        family: s.family_size(),
        essential: s.essential_mask().len(),
        additionality: s.additionality(),
        vc_dim: shatter.vc_dim,
        shattered: shatter.shattered.len(),
        strongly_shattered: shatter.strongly_shattered.len(),
        edges: g.edge_count(),
    };
    let flags = Flags {
        well_graded: wg,
        extremal,
        maximum,
        dual_well_graded: duals.map(|d| d.dual_wg),
        ess_dual_well_graded: duals.and_then(|d| d.ess_dual_wg),
        self_dual: duals.and_then(|d| d.self_dual),
        almost_self_dual: duals.and_then(|d| d.almost_self_dual),
        self_and_dual_well_graded: duals.map(|d| d.self_and_dual_wg),
        self_and_ess_dual_well_graded: duals.and_then(|d| d.self_and_ess_dual_wg),
        self_and_dual_extremal: duals.map(|d| d.self_and_dual_extremal),
        self_and_dual_maximum: duals.map(|d| d.self_and_dual_maximum),
    };

    if opts.strict {
        strict_validation(s, &counts, &flags)?;
    }

    Ok(Report {
        schema: REPORT_SCHEMA,
        input,
        counts,
        flags,
        classification: classification_json(s, &classification),
        graph: graph_block,
        decomposition,
    })
}

/// Independent re-derivations of the report relations: sandwich, the size
/// bounds for well-graded systems, the class inclusions, and the midpoint
/// route to well-gradedness.
#[allow(clippy::int_plus_one)]
fn strict_validation(s: &SetSystem, counts: &Counts, flags: &Flags) -> Result<()> {
    let bug = |msg: &str| Err(CoreError::InvariantViolation(msg.to_string()));
    if !(counts.strongly_shattered <= counts.family && counts.family <= counts.shattered) {
        return bug("sandwich inequalities fail in the report");
    }
    if flags.well_graded != midpoint_characterization(s) {
        return bug("distance and midpoint well-gradedness disagree");
    }
    if flags.well_graded && counts.additionality < 1 {
        return bug("well-graded system reported with non-positive additionality");
    }
    if flags.well_graded && !(counts.essential as i64 + 1 <= counts.family as i64) {
        return bug("well-graded system below the essential-domain size bound");
    }
    if flags.well_graded && counts.family > counts.edges + 1 {
        return bug("well-graded system above the edge-count size bound");
    }
    if flags.maximum && !flags.extremal {
        return bug("maximum system reported as non-extremal");
    }
    if flags.extremal && !flags.well_graded {
        return bug("extremal system reported as non-well-graded");
    }
    Ok(())
}

pub fn system_report(s: &SetSystem, opts: &ReportOptions) -> Result<Report> {
    assemble(s, system_to_json(s), None, None, opts)
}

fn cliques_block(g: &Graph, caps: &Caps) -> Result<Option<CliquesJson>> {
    let clique = match clique_system(g, caps) {
        Ok(s) => s,
        Err(CoreError::VertexCapExceeded { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    let independent = independent_set_system(g, caps)?;
    // both systems are down-closed, so the largest member size is the
    // clique number and the independence number respectively
    let largest = |s: &SetSystem| s.family().iter().map(|m| m.len()).max().unwrap_or(0);
    Ok(Some(CliquesJson {
        clique_number: largest(&clique),
        independence_number: largest(&independent),
        clique_system_members: clique.family_size(),
        independent_system_members: independent.family_size(),
    }))
}

pub fn graph_report(g: &Graph, opts: &ReportOptions) -> Result<Report> {
    let ns = neighbourhood_system(g);
    let twins = twin_analysis(g);
    let nf = neighbourhood_flags(g, &opts.caps)?;
    let block = GraphBlock {
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        loops: g.loop_vertices().len(),
        twins: TwinsJson {
            twin_free: twins.twin_free,
            closed_twin_free: twins.closed_twin_free,
            semi_twin_free: twins.semi_twin_free,
            semi_closed_twin_free: twins.semi_closed_twin_free,
        },
        neighbourhood: NeighbourhoodJson {
            well_graded: nf.nwg,
            extremal: nf.next,
            maximum: nf.nmax,
            closed_well_graded: nf.cnwg,
            closed_extremal: nf.cnext,
            closed_maximum: nf.cnmax,
        },
        cliques: cliques_block(g, &opts.caps)?,
    };
    let decomposition = if g.is_loopless() {
        decompose_neighbourhood_wg(g)?.map(|d| decomposition_json(g, &d))
    } else {
        None
    };
    assemble(&ns, graph_to_json(g), Some(block), decomposition, opts)
}

pub fn decomposition_json(g: &Graph, d: &HalfGraphDecomposition) -> DecompositionJson {
    let name = |v: usize| g.vertex_names()[v].clone();
    DecompositionJson {
        pairs: d
            .pairs
            .iter()
            .map(|p| PairJson {
                order: p.order(),
                a_side: p.a_side.iter().map(|&v| name(v)).collect(),
                b_side: p.b_side.iter().map(|&v| name(v)).collect(),
            })
            .collect(),
        isolated: d.isolated.iter().map(|&v| name(v)).collect(),
    }
}
