//! Finite set systems: a domain of named elements together with a nonempty
//! family of distinct subsets, stored as bit-vectors.

use std::collections::HashMap;
use std::fmt;

use crate::error::{CoreError, Result};

/// Hard width limit of the bit-vector representation.
pub const MAX_DOMAIN: usize = 64;

/// Index of an element within a system's domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementId(pub usize);

/// A member of a family: a subset of the domain as a 64-bit mask.
///
/// Bit `i` set means the element with index `i` belongs to the member. A
/// member is only meaningful relative to the system whose domain indexed it.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Member(u64);

impl Member {
    pub const EMPTY: Member = Member(0);

    pub fn from_bits(bits: u64) -> Member {
        Member(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(e: ElementId) -> Member {
        Member(1 << e.0)
    }

    pub fn full(width: usize) -> Member {
        debug_assert!(width <= MAX_DOMAIN);
        if width == MAX_DOMAIN {
            Member(u64::MAX)
        } else {
            Member((1u64 << width) - 1)
        }
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, e: ElementId) -> bool {
        self.0 >> e.0 & 1 == 1
    }

    pub fn with(self, e: ElementId) -> Member {
        Member(self.0 | 1 << e.0)
    }

    pub fn without(self, e: ElementId) -> Member {
        Member(self.0 & !(1 << e.0))
    }

    pub fn union(self, other: Member) -> Member {
        Member(self.0 | other.0)
    }

    pub fn intersection(self, other: Member) -> Member {
        Member(self.0 & other.0)
    }

    pub fn difference(self, other: Member) -> Member {
        Member(self.0 & !other.0)
    }

    pub fn symmetric_difference(self, other: Member) -> Member {
        Member(self.0 ^ other.0)
    }

    pub fn is_subset_of(self, other: Member) -> bool {
        self.0 & !other.0 == 0
    }

    /// Hamming distance `|A \u{25b3} B|`.
    pub fn hamming(self, other: Member) -> usize {
        (self.0 ^ other.0).count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = ElementId> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(ElementId(i))
            }
        })
    }

    /// Key for the canonical family order: cardinality first, bit pattern second.
    pub fn canonical_key(self) -> (usize, u64) {
        (self.len(), self.0)
    }
}

impl fmt::Debug for Member {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Member({:b})", self.0)
    }
}

/// A finite set system: an ordered domain of named elements and a nonempty
/// family of distinct subsets.
///
/// The family is kept in canonical order (by cardinality, then bit pattern),
/// so two systems that are equal as labelled objects compare equal with `==`.
/// Values are immutable after construction.
#[derive(Clone, PartialEq, Eq)]
pub struct SetSystem {
    domain: Vec<String>,
    family: Vec<Member>,
}

impl SetSystem {
    /// Build a system, validating every invariant. Duplicate members are a
    /// hard error rather than a silent dedup.
    pub fn new(domain: Vec<String>, mut family: Vec<Member>) -> Result<SetSystem> {
        if domain.len() > MAX_DOMAIN {
            return Err(CoreError::DomainTooLarge {
                size: domain.len(),
                cap: MAX_DOMAIN,
            });
        }
        let mut seen = HashMap::new();
        for (i, name) in domain.iter().enumerate() {
            if seen.insert(name.clone(), i).is_some() {
                return Err(CoreError::DuplicateName(name.clone()));
            }
        }
        if family.is_empty() {
            return Err(CoreError::EmptyFamily);
        }
        let full = Member::full(domain.len());
        for m in &family {
            if !m.is_subset_of(full) {
                return Err(CoreError::MemberOutsideDomain(format!("{:#x}", m.bits())));
            }
        }
        family.sort_by_key(|m| m.canonical_key());
        for w in family.windows(2) {
            if w[0] == w[1] {
                return Err(CoreError::DuplicateMember(render_member(&domain, w[0])));
            }
        }
        Ok(SetSystem { domain, family })
    }

    /// Like `new` but with duplicates collapsed; used where an operation is
    /// defined to produce a set of members (traces, duals, neighbourhoods).
    pub(crate) fn new_dedup(domain: Vec<String>, mut family: Vec<Member>) -> Result<SetSystem> {
        family.sort_by_key(|m| m.canonical_key());
        family.dedup();
        SetSystem::new(domain, family)
    }

    /// Convenience constructor from string names.
    pub fn from_names(domain: &[&str], members: &[&[&str]]) -> Result<SetSystem> {
        let domain: Vec<String> = domain.iter().map(|s| s.to_string()).collect();
        let mut index = HashMap::new();
        for (i, name) in domain.iter().enumerate() {
            index.insert(name.as_str(), i);
        }
        if index.len() != domain.len() {
            // let `new` produce the precise duplicate-name error
            return SetSystem::new(domain, vec![Member::EMPTY]);
        }
        let mut family = Vec::with_capacity(members.len());
        for member in members {
            let mut m = Member::EMPTY;
            for name in *member {
                let i = *index
                    .get(name)
                    .ok_or_else(|| CoreError::UnknownElement(name.to_string()))?;
                m = m.with(ElementId(i));
            }
            family.push(m);
        }
        SetSystem::new(domain, family)
    }

    pub fn domain_size(&self) -> usize {
        self.domain.len()
    }

    pub fn domain_names(&self) -> &[String] {
        &self.domain
    }

    pub fn family(&self) -> &[Member] {
        &self.family
    }

    pub fn family_size(&self) -> usize {
        self.family.len()
    }

    pub fn domain_mask(&self) -> Member {
        Member::full(self.domain.len())
    }

    pub fn element_name(&self, e: ElementId) -> &str {
        &self.domain[e.0]
    }

    pub fn element_id(&self, name: &str) -> Option<ElementId> {
        self.domain.iter().position(|n| n == name).map(ElementId)
    }

    pub fn contains_member(&self, m: Member) -> bool {
        self.family
            .binary_search_by_key(&m.canonical_key(), |x| x.canonical_key())
            .is_ok()
    }

    /// Build a member mask from element names of this system's domain.
    pub fn member_from_names(&self, names: &[&str]) -> Result<Member> {
        let mut m = Member::EMPTY;
        for name in names {
            let id = self
                .element_id(name)
                .ok_or_else(|| CoreError::UnknownElement(name.to_string()))?;
            m = m.with(id);
        }
        Ok(m)
    }

    /// Render a member as its sorted element-name list, `{}` for the empty set.
    pub fn render_member(&self, m: Member) -> String {
        render_member(&self.domain, m)
    }

    /// Union of all members.
    pub fn union_mask(&self) -> Member {
        self.family.iter().fold(Member::EMPTY, |a, &m| a.union(m))
    }

    /// Intersection of all members.
    pub fn intersection_mask(&self) -> Member {
        self.family
            .iter()
            .fold(self.domain_mask(), |a, &m| a.intersection(m))
    }

    /// The essential elements: those that lie in some member and outside some
    /// other member, i.e. exactly the singletons shattered by the family.
    pub fn essential_mask(&self) -> Member {
        self.union_mask().difference(self.intersection_mask())
    }

    pub fn essential_domain(&self) -> Vec<ElementId> {
        self.essential_mask().iter().collect()
    }

    /// `|family| - |essential domain|`; can be zero or negative for families
    /// that are not well-graded.
    pub fn additionality(&self) -> i64 {
        self.family.len() as i64 - self.essential_mask().len() as i64
    }

    /// Trace of the system on `y`: domain restricted to `y`, members
    /// intersected with `y`, duplicates collapsed.
    pub fn trace(&self, y: Member) -> Result<SetSystem> {
        if !y.is_subset_of(self.domain_mask()) {
            return Err(CoreError::MemberOutsideDomain(format!("{:#x}", y.bits())));
        }
        let kept: Vec<ElementId> = y.iter().collect();
        let domain: Vec<String> = kept.iter().map(|&e| self.domain[e.0].clone()).collect();
        let family = self
            .family
            .iter()
            .map(|&m| {
                let mut packed = Member::EMPTY;
                for (new_idx, &e) in kept.iter().enumerate() {
                    if m.contains(e) {
                        packed = packed.with(ElementId(new_idx));
                    }
                }
                packed
            })
            .collect();
        SetSystem::new_dedup(domain, family)
    }

    /// Number of distinct traces on `y`, without building the traced system.
    pub fn trace_size(&self, y: Member) -> usize {
        let mut seen: Vec<u64> = self
            .family
            .iter()
            .map(|m| m.intersection(y).bits())
            .collect();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    /// Replace every member by its complement within the domain. Involutive.
    pub fn complement_family(&self) -> SetSystem {
        let full = self.domain_mask();
        let family = self.family.iter().map(|&m| full.difference(m)).collect();
        SetSystem::new(self.domain.clone(), family).expect("complement preserves the invariants")
    }

    /// Flip operation: XOR every member with `a \u{25b3} b`, which moves the
    /// family member `a` onto `b`. Preserves the family size, all Hamming
    /// distances, the essential domain and the shattered sets.
    pub fn flip(&self, a: Member, b: Member) -> Result<SetSystem> {
        if !self.contains_member(a) {
            return Err(CoreError::MemberNotInFamily(self.render_member(a)));
        }
        if !b.is_subset_of(self.domain_mask()) {
            return Err(CoreError::MemberOutsideDomain(format!("{:#x}", b.bits())));
        }
        let delta = a.symmetric_difference(b);
        let family = self
            .family
            .iter()
            .map(|&m| m.symmetric_difference(delta))
            .collect();
        SetSystem::new(self.domain.clone(), family)
    }

    /// Partition of the domain by the same-membership-type relation:
    /// `x ~ y` when every member contains either both or neither. Classes
    /// are ordered by their first element.
    pub fn purification_classes(&self) -> Vec<Vec<ElementId>> {
        let mut classes: Vec<Vec<ElementId>> = Vec::new();
        let mut sig_index: HashMap<Vec<u64>, usize> = HashMap::new();
        for i in 0..self.domain.len() {
            let mut sig = vec![0u64; self.family.len().div_ceil(64)];
            for (k, m) in self.family.iter().enumerate() {
                if m.contains(ElementId(i)) {
                    sig[k / 64] |= 1 << (k % 64);
                }
            }
            let next = classes.len();
            let class = *sig_index.entry(sig).or_insert(next);
            if class == next {
                classes.push(Vec::new());
            }
            classes[class].push(ElementId(i));
        }
        classes
    }

    /// Quotient the domain by the same-membership-type relation. One
    /// representative per class (the first in domain order) survives.
    /// Idempotent.
    pub fn purify(&self) -> SetSystem {
        let classes = self.purification_classes();
        let reps: Vec<ElementId> = classes.iter().map(|c| c[0]).collect();
        let domain: Vec<String> = reps.iter().map(|&e| self.domain[e.0].clone()).collect();
        let family: Vec<Member> = self
            .family
            .iter()
            .map(|&m| {
                let mut packed = Member::EMPTY;
                for (class, &rep) in reps.iter().enumerate() {
                    if m.contains(rep) {
                        packed = packed.with(ElementId(class));
                    }
                }
                packed
            })
            .collect();
        SetSystem::new_dedup(domain, family).expect("purification yields a valid system")
    }

    /// Search for a domain bijection carrying one family onto the other.
    /// Returns the witness mapping (index in `self` to index in `other`) when
    /// the systems are isomorphic. Backtracking with membership-count
    /// pruning; the cap applies only when a search is actually needed, so
    /// mismatched sizes answer `None` at any scale.
    pub fn is_isomorphic(
        &self,
        other: &SetSystem,
        caps: &crate::caps::Caps,
    ) -> Result<Option<Vec<usize>>> {
        let n = self.domain.len();
        if n != other.domain.len() || self.family.len() != other.family.len() {
            return Ok(None);
        }
        if n > caps.max_iso_domain {
            return Err(CoreError::DomainTooLarge {
                size: n,
                cap: caps.max_iso_domain,
            });
        }
        let count =
            |s: &SetSystem, i: usize| s.family.iter().filter(|m| m.contains(ElementId(i))).count();
        let self_counts: Vec<usize> = (0..n).map(|i| count(self, i)).collect();
        let other_counts: Vec<usize> = (0..n).map(|i| count(other, i)).collect();
        {
            let mut a = self_counts.clone();
            let mut b = other_counts.clone();
            a.sort_unstable();
            b.sort_unstable();
            if a != b {
                return Ok(None);
            }
        }
        // family cardinality profile must also match
        {
            let profile = |s: &SetSystem| {
                let mut sizes: Vec<usize> = s.family.iter().map(|m| m.len()).collect();
                sizes.sort_unstable();
                sizes
            };
            if profile(self) != profile(other) {
                return Ok(None);
            }
        }

        struct Search<'a> {
            a: &'a SetSystem,
            b: &'a SetSystem,
            self_counts: Vec<usize>,
            other_counts: Vec<usize>,
            mapping: Vec<usize>,
            used: Vec<bool>,
        }
        impl Search<'_> {
            fn backtrack(&mut self, pos: usize) -> bool {
                let n = self.mapping.len();
                if pos == n {
                    let mut mapped: Vec<Member> = self
                        .a
                        .family
                        .iter()
                        .map(|m| {
                            let mut out = Member::EMPTY;
                            for e in m.iter() {
                                out = out.with(ElementId(self.mapping[e.0]));
                            }
                            out
                        })
                        .collect();
                    mapped.sort_by_key(|m| m.canonical_key());
                    return mapped == self.b.family;
                }
                for target in 0..n {
                    if self.used[target] || self.self_counts[pos] != self.other_counts[target] {
                        continue;
                    }
                    self.mapping[pos] = target;
                    self.used[target] = true;
                    if self.backtrack(pos + 1) {
                        return true;
                    }
                    self.used[target] = false;
                    self.mapping[pos] = usize::MAX;
                }
                false
            }
        }
        let mut search = Search {
            a: self,
            b: other,
            self_counts,
            other_counts,
            mapping: vec![usize::MAX; n],
            used: vec![false; n],
        };
        if search.backtrack(0) {
            Ok(Some(search.mapping))
        } else {
            Ok(None)
        }
    }
}

impl fmt::Debug for SetSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let members: Vec<String> = self.family.iter().map(|&m| self.render_member(m)).collect();
        write!(
            f,
            "SetSystem(domain={:?}, family=[{}])",
            self.domain,
            members.join(", ")
        )
    }
}

fn render_member(domain: &[String], m: Member) -> String {
    let names: Vec<&str> = m.iter().map(|e| domain[e.0].as_str()).collect();
    format!("{{{}}}", names.join(","))
}
