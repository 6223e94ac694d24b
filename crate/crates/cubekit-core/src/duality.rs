//! Dual systems: the domain of the dual has one point per family member, and
//! each element `x` of the original domain contributes the member
//! `A_x = { y_A : x in A }`, with identical members collapsed.

use crate::caps::Caps;
use crate::error::{CoreError, Result};
use crate::one_inclusion::is_well_graded;
use crate::set_system::{ElementId, Member, SetSystem};
use crate::shattering::{is_extremal, is_maximum};

/// A dual system together with the map recording which member of the dual
/// each original element produced (elements with equal columns merge).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualSystem {
    pub system: SetSystem,
    /// For each element of the original domain, its member `A_x` as a mask
    /// over the dual domain (bit `i` = family member `i` of the original).
    pub member_of_element: Vec<Member>,
}

/// Predicate flags computed from first principles on the dual side.
///
/// The essential-dual flags are `None` when the system has no essential
/// elements (exactly the single-member families), where the essential dual
/// is undefined. The isomorphism-backed flags are `None` when the search
/// would exceed the isomorphism cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DualPropertyFlags {
    pub dual_wg: bool,
    pub ess_dual_wg: Option<bool>,
    pub self_dual: Option<bool>,
    pub almost_self_dual: Option<bool>,
    pub self_and_dual_wg: bool,
    pub self_and_ess_dual_wg: Option<bool>,
    pub self_and_dual_extremal: bool,
    pub self_and_dual_maximum: bool,
}

fn dual_domain_names(s: &SetSystem) -> Vec<String> {
    s.family()
        .iter()
        .map(|&m| format!("y_{}", s.render_member(m)))
        .collect()
}

fn member_columns(s: &SetSystem) -> Vec<Member> {
    (0..s.domain_size())
        .map(|i| {
            let x = ElementId(i);
            let mut col = Member::EMPTY;
            for (k, m) in s.family().iter().enumerate() {
                if m.contains(x) {
                    col = col.with(ElementId(k));
                }
            }
            col
        })
        .collect()
}

/// The dual system. Rejected over an empty domain, where the dual family
/// would be empty.
pub fn dual(s: &SetSystem) -> Result<DualSystem> {
    if s.domain_size() == 0 {
        return Err(CoreError::EmptyDomainDual);
    }
    let columns = member_columns(s);
    let system = SetSystem::new_dedup(dual_domain_names(s), columns.clone())?;
    debug_assert!(system.family_size() <= s.essential_mask().len() + 2);
    Ok(DualSystem {
        system,
        member_of_element: columns,
    })
}

/// The essential dual: only the members `A_x` for essential `x` survive.
pub fn ess_dual(s: &SetSystem) -> Result<DualSystem> {
    let ess = s.essential_mask();
    if ess.is_empty() {
        return Err(CoreError::NoEssentialElements);
    }
    let columns = member_columns(s);
    let kept: Vec<Member> = ess.iter().map(|e| columns[e.0]).collect();
    let system = SetSystem::new_dedup(dual_domain_names(s), kept)?;
    Ok(DualSystem {
        system,
        member_of_element: columns,
    })
}

/// The second dual is always isomorphic to the purification; exposed as an
/// oracle assertion for the test suites.
pub fn second_dual_is_purification(s: &SetSystem, caps: &Caps) -> Result<bool> {
    let dd = dual(&dual(s)?.system)?;
    Ok(dd.system.is_isomorphic(&s.purify(), caps)?.is_some())
}

/// Counts `r = |{empty, X} intersect family|` and
/// `r' = |{A : ess(X) subset of A, or A disjoint from ess(X)}|`.
pub fn r_values(s: &SetSystem) -> (usize, usize) {
    let full = s.domain_mask();
    let mut r = 0;
    if s.contains_member(Member::EMPTY) {
        r += 1;
    }
    if !full.is_empty() && s.contains_member(full) {
        r += 1;
    }
    if full.is_empty() {
        // the empty set and the whole domain coincide
        r = 1;
    }
    let ess = s.essential_mask();
    let r_prime = s
        .family()
        .iter()
        .filter(|&&a| ess.is_subset_of(a) || a.intersection(ess).is_empty())
        .count();
    (r, r_prime)
}

pub fn classify_dual_properties(s: &SetSystem, caps: &Caps) -> Result<DualPropertyFlags> {
    let d = dual(s)?;
    let self_wg = is_well_graded(s);
    let dual_wg = is_well_graded(&d.system);
    let capped_iso = |a: &SetSystem, b: &SetSystem| match a.is_isomorphic(b, caps) {
        Ok(witness) => Ok(Some(witness.is_some())),
        Err(CoreError::DomainTooLarge { .. }) => Ok(None),
        Err(e) => Err(e),
    };
    let self_dual = capped_iso(s, &d.system)?;
    let almost_self_dual = capped_iso(&s.purify(), &d.system)?;
    debug_assert!(self_dual != Some(true) || almost_self_dual == Some(true));
    let self_and_dual_extremal = is_extremal(s, caps)? && is_extremal(&d.system, caps)?;
    let self_and_dual_maximum = is_maximum(s, caps)? && is_maximum(&d.system, caps)?;
    let (ess_dual_wg, self_and_ess_dual_wg) = if s.essential_mask().is_empty() {
        (None, None)
    } else {
        let e = ess_dual(s)?;
        let wg = is_well_graded(&e.system);
        (Some(wg), Some(self_wg && wg))
    };
    Ok(DualPropertyFlags {
        dual_wg,
        ess_dual_wg,
        self_dual,
        almost_self_dual,
        self_and_dual_wg: self_wg && dual_wg,
        self_and_ess_dual_wg,
        self_and_dual_extremal,
        self_and_dual_maximum,
    })
}
