//! Shared fixtures for the benchmarks.

use cubekit_core::set_system::{Member, SetSystem};

/// The full power set on `n` elements; the densest well-graded family.
pub fn power_set(n: usize) -> SetSystem {
    let domain: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let family = (0..(1u64 << n)).map(Member::from_bits).collect();
    SetSystem::new(domain, family).unwrap()
}

/// A complete chain from the empty set to the full domain.
pub fn chain(n: usize) -> SetSystem {
    let domain: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let family = (0..=n).map(Member::full).collect();
    SetSystem::new(domain, family).unwrap()
}
