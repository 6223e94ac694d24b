//! Property tests over randomly sampled systems, complementing the
//! exhaustive sweeps in the acceptance suite with larger domains.

use proptest::prelude::*;

use cubekit_core::one_inclusion::midpoint_characterization;
use cubekit_core::set_system::{ElementId, Member, SetSystem};
use cubekit_core::shattering::{check_sandwich, vc_dimension};
use cubekit_core::Caps;

fn arb_system() -> impl Strategy<Value = SetSystem> {
    (0usize..=6).prop_flat_map(|n| {
        let max = 1u64 << n;
        let largest_family = (max as usize).min(24);
        proptest::collection::btree_set(0..max, 1..=largest_family).prop_map(move |members| {
            let domain: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
            let family = members.into_iter().map(Member::from_bits).collect();
            SetSystem::new(domain, family).unwrap()
        })
    })
}

/// The same system with its domain order reversed and elements renamed.
fn relabelled(s: &SetSystem) -> SetSystem {
    let n = s.domain_size();
    let domain: Vec<String> = (0..n).map(|i| format!("z{i}")).collect();
    let family = s
        .family()
        .iter()
        .map(|m| {
            let mut out = Member::EMPTY;
            for e in m.iter() {
                out = out.with(ElementId(n - 1 - e.0));
            }
            out
        })
        .collect();
    SetSystem::new(domain, family).unwrap()
}

proptest! {
    #[test]
    fn complement_is_an_involution(s in arb_system()) {
        let c = s.complement_family();
        prop_assert_eq!(c.complement_family(), s.clone());
        prop_assert_eq!(c.essential_mask(), s.essential_mask());
    }

    #[test]
    fn flips_preserve_the_core_quantities(s in arb_system()) {
        let caps = Caps::default();
        let vc = vc_dimension(&s, &caps).unwrap();
        for &a in s.family() {
            let f = s.flip(a, Member::EMPTY).unwrap();
            prop_assert!(f.contains_member(Member::EMPTY));
            prop_assert_eq!(f.essential_mask(), s.essential_mask());
            prop_assert_eq!(f.additionality(), s.additionality());
            prop_assert_eq!(vc_dimension(&f, &caps).unwrap(), vc);
        }
    }

    #[test]
    fn purify_is_idempotent(s in arb_system()) {
        let p = s.purify();
        prop_assert_eq!(p.purify(), p.clone());
        prop_assert_eq!(p.family_size(), s.family_size());
    }

    #[test]
    fn trace_on_the_full_domain_is_the_identity(s in arb_system()) {
        prop_assert_eq!(s.trace(s.domain_mask()).unwrap(), s.clone());
        let e = s.trace(Member::EMPTY).unwrap();
        prop_assert_eq!(e.family_size(), 1);
    }

    #[test]
    fn sandwich_inequalities_hold(s in arb_system()) {
        let (ssht, f, sht) = check_sandwich(&s, &Caps::default()).unwrap();
        prop_assert!(ssht <= f && f <= sht);
    }

    #[test]
    fn isomorphism_is_reflexive_and_witnessed(s in arb_system()) {
        let caps = Caps::default();
        let id = s.is_isomorphic(&s, &caps).unwrap();
        prop_assert!(id.is_some());

        let t = relabelled(&s);
        let witness = s.is_isomorphic(&t, &caps).unwrap();
        prop_assert!(witness.is_some());
        let witness = witness.unwrap();
        // the witness really carries the family onto the other family
        let mut mapped: Vec<Member> = s
            .family()
            .iter()
            .map(|m| {
                let mut out = Member::EMPTY;
                for e in m.iter() {
                    out = out.with(ElementId(witness[e.0]));
                }
                out
            })
            .collect();
        mapped.sort_by_key(|m| m.canonical_key());
        prop_assert_eq!(mapped.as_slice(), t.family());
        // and the relation is symmetric and transitive along this triple
        prop_assert!(t.is_isomorphic(&s, &caps).unwrap().is_some());
        let u = relabelled(&t);
        prop_assert!(t.is_isomorphic(&u, &caps).unwrap().is_some());
        prop_assert!(s.is_isomorphic(&u, &caps).unwrap().is_some());
    }

    #[test]
    fn midpoint_and_distance_criteria_agree(s in arb_system()) {
        let by_graph = cubekit_core::one_inclusion::build_graph(&s).is_well_graded();
        prop_assert_eq!(by_graph, midpoint_characterization(&s));
    }
}
