//! Shattering, strong shattering, VC-dimension, and the maximum/extremal
//! predicates. All of these enumerate every subset of the domain, so they
//! are guarded by `Caps::max_domain`.

use crate::caps::Caps;
use crate::error::{CoreError, Result};
use crate::set_system::{Member, SetSystem};

/// The shattered and strongly shattered subsets of the domain.
///
/// A subset `Y` is shattered when the trace on `Y` is the full power set of
/// `Y`; it is strongly shattered when the family contains a whole translated
/// cube `{Z + T : Z subset of Y}` for some tag `T` disjoint from `Y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShatterReport {
    pub shattered: Vec<Member>,
    pub strongly_shattered: Vec<Member>,
    pub vc_dim: usize,
}

fn check_cap(s: &SetSystem, caps: &Caps) -> Result<()> {
    if s.domain_size() > caps.max_domain {
        return Err(CoreError::DomainTooLarge {
            size: s.domain_size(),
            cap: caps.max_domain,
        });
    }
    Ok(())
}

/// Is `y` shattered: does the family trace to all `2^|y|` subsets of `y`?
fn shatters(s: &SetSystem, y: Member) -> bool {
    s.trace_size(y) == 1 << y.len()
}

/// Is `y` strongly shattered: grouping members by their restriction outside
/// `y`, some group is a full coset of the `y`-cube. Members are distinct, so
/// a group of size `2^|y|` is exactly such a coset.
fn strongly_shatters(s: &SetSystem, y: Member) -> bool {
    let mut outside: Vec<u64> = s.family().iter().map(|m| m.difference(y).bits()).collect();
    outside.sort_unstable();
    let target = 1usize << y.len();
    let mut run = 1;
    for w in outside.windows(2) {
        if w[0] == w[1] {
            run += 1;
            if run == target {
                return true;
            }
        } else {
            run = 1;
        }
    }
    run == target
}

pub fn shatter_report(s: &SetSystem, caps: &Caps) -> Result<ShatterReport> {
    check_cap(s, caps)?;
    let n = s.domain_size();
    let mut shattered = Vec::new();
    let mut strongly = Vec::new();
    let mut vc_dim = 0;
    for bits in 0..(1u64 << n) {
        let y = Member::from_bits(bits);
        if shatters(s, y) {
            vc_dim = vc_dim.max(y.len());
            shattered.push(y);
            if strongly_shatters(s, y) {
                strongly.push(y);
            }
        } else {
            debug_assert!(!strongly_shatters(s, y));
        }
    }
    shattered.sort_by_key(|m| m.canonical_key());
    strongly.sort_by_key(|m| m.canonical_key());
    #[cfg(debug_assertions)]
    {
        let down_closed = |list: &[Member]| {
            list.iter()
                .all(|&y| y.iter().all(|e| list.contains(&y.without(e))))
        };
        debug_assert!(down_closed(&shattered));
        debug_assert!(down_closed(&strongly));
        debug_assert!(strongly.iter().all(|y| shattered.contains(y)));
    }
    Ok(ShatterReport {
        shattered,
        strongly_shattered: strongly,
        vc_dim,
    })
}

pub fn vc_dimension(s: &SetSystem, caps: &Caps) -> Result<usize> {
    check_cap(s, caps)?;
    let n = s.domain_size();
    let mut vc = 0;
    for bits in 0..(1u64 << n) {
        let y = Member::from_bits(bits);
        if y.len() > vc && shatters(s, y) {
            vc = y.len();
        }
    }
    Ok(vc)
}

fn binomial_partial_sum(m: usize, d: usize) -> u128 {
    let mut sum = 0u128;
    let mut c = 1u128;
    for i in 0..=d.min(m) {
        if i > 0 {
            c = c * (m as u128 - i as u128 + 1) / i as u128;
        }
        sum += c;
    }
    sum
}

/// A system is maximum when the trace on every subset of the domain meets
/// the binomial bound with equality at the system's VC-dimension.
pub fn is_maximum(s: &SetSystem, caps: &Caps) -> Result<bool> {
    check_cap(s, caps)?;
    let d = vc_dimension(s, caps)?;
    let n = s.domain_size();
    for bits in 0..(1u64 << n) {
        let y = Member::from_bits(bits);
        if s.trace_size(y) as u128 != binomial_partial_sum(y.len(), d) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A system is extremal when the shattered and strongly shattered collections
/// coincide. In debug builds this is cross-checked against the equivalent
/// cardinality criterion `|family| = |shattered|`.
pub fn is_extremal(s: &SetSystem, caps: &Caps) -> Result<bool> {
    let report = shatter_report(s, caps)?;
    let extremal = report.shattered == report.strongly_shattered;
    debug_assert_eq!(extremal, s.family_size() == report.shattered.len());
    debug_assert_eq!(extremal, s.family_size() == report.strongly_shattered.len());
    Ok(extremal)
}

/// Returns `(|ssht|, |family|, |sht|)` and verifies the sandwich inequalities
/// `|ssht| <= |family| <= |sht|`. A violation is an implementation bug, never
/// a valid outcome.
pub fn check_sandwich(s: &SetSystem, caps: &Caps) -> Result<(usize, usize, usize)> {
    let report = shatter_report(s, caps)?;
    let triple = (
        report.strongly_shattered.len(),
        s.family_size(),
        report.shattered.len(),
    );
    if !(triple.0 <= triple.1 && triple.1 <= triple.2) {
        return Err(CoreError::InvariantViolation(format!(
            "sandwich inequalities failed: {triple:?}"
        )));
    }
    Ok(triple)
}

/// Largest binomial-bound value `sum_{i<=d} C(|Y|,i)` that any trace of the
/// system may attain; exposed for the verification harness.
pub fn sauer_shelah_bound(y_size: usize, vc_dim: usize) -> u128 {
    binomial_partial_sum(y_size, vc_dim)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn full_cube_shatters_everything() {
        let s = SetSystem::from_names(&["1", "2"], &[&[], &["1"], &["2"], &["1", "2"]]).unwrap();
        let r = shatter_report(&s, &caps()).unwrap();
        assert_eq!(r.shattered.len(), 4);
        assert_eq!(r.strongly_shattered.len(), 4);
        assert_eq!(r.vc_dim, 2);
        assert_eq!(check_sandwich(&s, &caps()).unwrap(), (4, 4, 4));
    }

    #[test]
    fn empty_and_full_pair() {
        // { {}, X } on two elements: singletons shattered, the pair not;
        // only the empty set is strongly shattered.
        let s = SetSystem::from_names(&["1", "2"], &[&[], &["1", "2"]]).unwrap();
        let r = shatter_report(&s, &caps()).unwrap();
        assert_eq!(r.vc_dim, 1);
        assert_eq!(r.shattered.len(), 3);
        assert_eq!(r.strongly_shattered, vec![Member::EMPTY]);
        assert_eq!(check_sandwich(&s, &caps()).unwrap(), (1, 2, 3));
        assert!(!is_extremal(&s, &caps()).unwrap());
        assert!(!is_maximum(&s, &caps()).unwrap());
    }

    #[test]
    fn tree_family_is_extremal_not_maximum() {
        let s =
            SetSystem::from_names(&["1", "2", "3"], &[&["1"], &["1", "2"], &["1", "3"]]).unwrap();
        let (a, f, b) = check_sandwich(&s, &caps()).unwrap();
        assert_eq!((a, f, b), (3, 3, 3));
        assert!(is_extremal(&s, &caps()).unwrap());
        assert!(!is_maximum(&s, &caps()).unwrap());
    }

    #[test]
    fn complete_chain_is_maximum() {
        let s = SetSystem::from_names(
            &["1", "2", "3"],
            &[&[], &["1"], &["1", "2"], &["1", "2", "3"]],
        )
        .unwrap();
        assert!(is_maximum(&s, &caps()).unwrap());
        assert!(is_extremal(&s, &caps()).unwrap());
    }

    #[test]
    fn single_member_family_has_vc_zero() {
        let s = SetSystem::from_names(&["1", "2"], &[&["1"]]).unwrap();
        assert_eq!(vc_dimension(&s, &caps()).unwrap(), 0);
        assert!(is_maximum(&s, &caps()).unwrap());
    }

    #[test]
    fn cap_is_enforced() {
        let s = SetSystem::from_names(&["1"], &[&[]]).unwrap();
        let tiny = Caps {
            max_domain: 0,
            ..Caps::default()
        };
        assert!(matches!(
            shatter_report(&s, &tiny),
            Err(CoreError::DomainTooLarge { .. })
        ));
    }

    #[test]
    fn binomial_sums() {
        assert_eq!(binomial_partial_sum(3, 1), 4);
        assert_eq!(binomial_partial_sum(12, 2), 79);
        assert_eq!(binomial_partial_sum(4, 4), 16);
        assert_eq!(binomial_partial_sum(2, 5), 4);
    }
}
