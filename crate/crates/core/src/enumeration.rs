//! Enumeration of weak factorization systems and model structures on a
//! finite category.
//!
//! The right class of any weak factorization system is an intersection of
//! single-morphism right orthogonals, so candidate right classes are drawn
//! from the intersection closure of those orthogonals rather than from all
//! subsets. Candidate model structures are ordered pairs of weak
//! factorization systems with nested left classes; their weak equivalences
//! are forced (composites of lower-left then upper-right) and the remaining
//! axioms are checked directly. Rejected candidates are kept, with a
//! witness for the failed check.

use crate::fincat::{FiniteCategory, MorId, MorphismClass};
use crate::lifting::LiftingTable;
use std::collections::BTreeSet;
use std::fmt;

/// A weak factorization system: two classes determining each other as
/// orthogonals, with every morphism factoring left-then-right.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Wfs {
    pub left: MorphismClass,
    pub right: MorphismClass,
}

/// A model structure, with its two constituent weak factorization systems
/// recoverable as `(acyclic cofibrations, fibrations)` and
/// `(cofibrations, acyclic fibrations)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModelStructure {
    pub cofibrations: MorphismClass,
    pub fibrations: MorphismClass,
    pub weak_equivalences: MorphismClass,
}

impl ModelStructure {
    pub fn acyclic_cofibrations(&self) -> MorphismClass {
        self.cofibrations.intersection(&self.weak_equivalences)
    }

    pub fn acyclic_fibrations(&self) -> MorphismClass {
        self.fibrations.intersection(&self.weak_equivalences)
    }
}

/// A composable pair violating two-out-of-three: exactly two of
/// `{first, second, second ∘ first}` lie in the class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwoOfThreeViolation {
    pub first: MorId,
    pub second: MorId,
}

/// Why a candidate pair of weak factorization systems is not a model
/// structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RejectionReason {
    AcyclicCofibrations { witness: MorId },
    AcyclicFibrations { witness: MorId },
    TwoOfThree(TwoOfThreeViolation),
}

impl fmt::Display for RejectionReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RejectionReason::AcyclicCofibrations { witness } => {
                write!(f, "acyclic cofibrations mismatch at morphism {witness}")
            }
            RejectionReason::AcyclicFibrations { witness } => {
                write!(f, "acyclic fibrations mismatch at morphism {witness}")
            }
            RejectionReason::TwoOfThree(v) => {
                write!(f, "two-of-three fails at composable pair ({}, {})", v.first, v.second)
            }
        }
    }
}

/// A rejected candidate pair, with the weak equivalences computed for it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RejectedCandidate {
    pub lower: Wfs,
    pub upper: Wfs,
    pub computed_w: MorphismClass,
    pub reason: RejectionReason,
}

/// The intersection closure of the single-morphism right orthogonals
/// together with the full morphism class, sorted canonically.
pub fn closed_right_classes(cat: &FiniteCategory) -> Vec<MorphismClass> {
    closed_right_classes_from(cat, &LiftingTable::compute(cat))
}

fn closed_right_classes_from(cat: &FiniteCategory, table: &LiftingTable) -> Vec<MorphismClass> {
    let n = cat.morphism_count();
    let mut closed: BTreeSet<MorphismClass> = BTreeSet::new();
    closed.insert(MorphismClass::full(n));
    for m in cat.morphism_ids() {
        let singleton = MorphismClass::from_members(n, [m]);
        closed.insert(table.right_orthogonal(&singleton));
    }
    loop {
        let mut fresh = Vec::new();
        for a in &closed {
            for b in &closed {
                let meet = a.intersection(b);
                if !closed.contains(&meet) {
                    fresh.push(meet);
                }
            }
        }
        if fresh.is_empty() {
            break;
        }
        closed.extend(fresh);
    }
    closed.into_iter().collect()
}

/// Whether `m` factors as a member of `left` followed by a member of
/// `right`.
fn factors_through(
    cat: &FiniteCategory,
    m: MorId,
    left: &MorphismClass,
    right: &MorphismClass,
) -> bool {
    left.iter().filter(|&l| cat.src(l) == cat.src(m)).any(|l| {
        cat.hom(cat.dst(l), cat.dst(m))
            .iter()
            .any(|&r| right.contains(r) && cat.then(l, r) == Some(m))
    })
}

/// All weak factorization systems on the category, sorted by the bit
/// pattern of the left class.
pub fn enumerate_wfs(cat: &FiniteCategory) -> Vec<Wfs> {
    let table = LiftingTable::compute(cat);
    let mut out = Vec::new();
    for right in closed_right_classes_from(cat, &table) {
        let left = table.left_orthogonal(&right);
        if table.right_orthogonal(&left) != right {
            continue;
        }
        if !cat.morphism_ids().all(|m| factors_through(cat, m, &left, &right)) {
            continue;
        }
        out.push(Wfs { left, right });
    }
    out.sort();
    out
}

/// Checks two-out-of-three for `w`: whenever two of `{f, g, g ∘ f}` lie in
/// `w`, so does the third. Returns the first violating composable pair.
pub fn two_of_three(cat: &FiniteCategory, w: &MorphismClass) -> Result<(), TwoOfThreeViolation> {
    for (first, second) in cat.composable_pairs() {
        let composite = cat.then(first, second).expect("composable");
        let members = [first, second, composite].iter().filter(|&&m| w.contains(m)).count();
        if members == 2 {
            return Err(TwoOfThreeViolation { first, second });
        }
    }
    Ok(())
}

/// All model structures on the category, plus the rejection log.
pub fn enumerate_model_structures(
    cat: &FiniteCategory,
) -> (Vec<ModelStructure>, Vec<RejectedCandidate>) {
    let wfs = enumerate_wfs(cat);
    let mut accepted = Vec::new();
    let mut rejected = Vec::new();
    for lower in &wfs {
        for upper in &wfs {
            if !lower.left.is_subset(&upper.left) {
                continue;
            }
            let w = composite_class(cat, &lower.left, &upper.right);
            let reason = if upper.left.intersection(&w) != lower.left {
                Some(RejectionReason::AcyclicCofibrations {
                    witness: first_difference(&upper.left.intersection(&w), &lower.left),
                })
            } else if lower.right.intersection(&w) != upper.right {
                Some(RejectionReason::AcyclicFibrations {
                    witness: first_difference(&lower.right.intersection(&w), &upper.right),
                })
            } else {
                two_of_three(cat, &w).err().map(RejectionReason::TwoOfThree)
            };
            match reason {
                None => accepted.push(ModelStructure {
                    cofibrations: upper.left.clone(),
                    fibrations: lower.right.clone(),
                    weak_equivalences: w,
                }),
                Some(reason) => rejected.push(RejectedCandidate {
                    lower: lower.clone(),
                    upper: upper.clone(),
                    computed_w: w,
                    reason,
                }),
            }
        }
    }
    accepted.sort();
    (accepted, rejected)
}

/// The class of composites `r ∘ l` with `l` in `left` and `r` in `right`.
pub fn composite_class(
    cat: &FiniteCategory,
    left: &MorphismClass,
    right: &MorphismClass,
) -> MorphismClass {
    let mut out = MorphismClass::empty(cat.morphism_count());
    for l in left.iter() {
        for r in right.iter() {
            if let Some(c) = cat.then(l, r) {
                out.insert(c);
            }
        }
    }
    out
}

fn first_difference(a: &MorphismClass, b: &MorphismClass) -> MorId {
    a.iter()
        .find(|m| !b.contains(*m))
        .or_else(|| b.iter().find(|m| !a.contains(*m)))
        .expect("classes differ")
}

/// Cover edges of the poset of weak factorization systems ordered by
/// inclusion of left classes.
pub fn wfs_hasse(wfs: &[Wfs]) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for (i, a) in wfs.iter().enumerate() {
        for (j, b) in wfs.iter().enumerate() {
            if i == j || a.left == b.left || !a.left.is_subset(&b.left) {
                continue;
            }
            let covered = wfs.iter().enumerate().any(|(k, c)| {
                k != i
                    && k != j
                    && a.left.is_subset(&c.left)
                    && c.left != a.left
                    && c.left.is_subset(&b.left)
                    && c.left != b.left
            });
            if !covered {
                edges.push((i, j));
            }
        }
    }
    edges
}

/// Searches for a morphism outside `class` that is a retract of a member,
/// witnessing failure of retract closure in the arrow category.
pub fn retract_closure_violation(
    cat: &FiniteCategory,
    class: &MorphismClass,
) -> Option<(MorId, MorId)> {
    for g in class.iter() {
        for f in cat.morphism_ids().filter(|m| !class.contains(*m)) {
            if is_retract_of(cat, f, g) {
                return Some((f, g));
            }
        }
    }
    None
}

/// Whether `f` is a retract of `g` in the arrow category: there are maps of
/// arrows `f -> g -> f` composing to the identity on `f`.
fn is_retract_of(cat: &FiniteCategory, f: MorId, g: MorId) -> bool {
    let (fs, fd) = (cat.src(f), cat.dst(f));
    let (gs, gd) = (cat.src(g), cat.dst(g));
    for &i0 in cat.hom(fs, gs) {
        for &p0 in cat.hom(gs, fs) {
            if cat.then(i0, p0) != Some(cat.identity(fs)) {
                continue;
            }
            for &i1 in cat.hom(fd, gd) {
                if cat.then(f, i1) != cat.then(i0, g) {
                    continue;
                }
                for &p1 in cat.hom(gd, fd) {
                    if cat.then(i1, p1) == Some(cat.identity(fd))
                        && cat.then(g, p1) == cat.then(p0, f)
                    {
                        return true;
                    }
                }
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{chain_poset, discrete, set_skeleton, MorId, ObjId};

    #[test]
    fn terminal_category_has_one_wfs_and_one_model_structure() {
        let cat = chain_poset(0);
        let wfs = enumerate_wfs(&cat);
        assert_eq!(wfs.len(), 1);
        let (ms, _) = enumerate_model_structures(&cat);
        assert_eq!(ms.len(), 1);
    }

    #[test]
    fn discrete_two_objects() {
        let cat = discrete(2);
        assert_eq!(closed_right_classes(&cat), vec![MorphismClass::full(2)]);
        assert_eq!(enumerate_wfs(&cat).len(), 1);
        assert_eq!(enumerate_model_structures(&cat).0.len(), 1);
    }

    #[test]
    fn walking_arrow_classification() {
        let cat = chain_poset(1);
        let n = cat.morphism_count();
        let ids = cat.identity_class();
        let all = MorphismClass::full(n);
        let wfs = enumerate_wfs(&cat);
        assert_eq!(
            wfs,
            vec![
                Wfs { left: ids.clone(), right: all.clone() },
                Wfs { left: all.clone(), right: ids.clone() },
            ]
        );
        let (ms, rejected) = enumerate_model_structures(&cat);
        assert_eq!(ms.len(), 3);
        assert!(rejected.is_empty());
        assert!(ms.contains(&ModelStructure {
            cofibrations: all.clone(),
            fibrations: all.clone(),
            weak_equivalences: ids.clone(),
        }));
    }

    #[test]
    fn closure_is_intersection_closed() {
        let cat = chain_poset(2);
        let classes = closed_right_classes(&cat);
        for a in &classes {
            for b in &classes {
                assert!(classes.contains(&a.intersection(b)));
            }
        }
    }

    #[test]
    fn wfs_left_and_right_meet_in_isos() {
        for cat in [chain_poset(2), set_skeleton(2).category] {
            let isos = cat.iso_class();
            for wfs in enumerate_wfs(&cat) {
                assert_eq!(wfs.left.intersection(&wfs.right), isos);
            }
        }
    }

    #[test]
    fn wfs_classes_are_retract_closed() {
        let cat = chain_poset(2);
        for wfs in enumerate_wfs(&cat) {
            assert_eq!(retract_closure_violation(&cat, &wfs.left), None);
            assert_eq!(retract_closure_violation(&cat, &wfs.right), None);
        }
    }

    #[test]
    fn two_of_three_accepts_everything_and_isos() {
        let cat = set_skeleton(2).category;
        assert!(two_of_three(&cat, &MorphismClass::full(cat.morphism_count())).is_ok());
        assert!(two_of_three(&cat, &cat.iso_class()).is_ok());
    }

    #[test]
    fn two_of_three_witness_in_small_skeleton() {
        // Surjections together with the maps out of the empty set fail
        // two-of-three: a split injection composes with its retraction to an
        // identity.
        let skel = set_skeleton(2);
        let cat = &skel.category;
        let mut w = MorphismClass::empty(cat.morphism_count());
        for m in cat.morphism_ids() {
            let surjective = (0..cat.dst(m).0).all(|y| skel.functions[m.0].contains(&y));
            if surjective || cat.src(m) == ObjId(0) {
                w.insert(m);
            }
        }
        let violation = two_of_three(cat, &w).unwrap_err();
        let composite = cat.then(violation.first, violation.second).unwrap();
        let in_w = [violation.first, violation.second, composite]
            .iter()
            .filter(|&&m| w.contains(m))
            .count();
        assert_eq!(in_w, 2);
    }

    #[test]
    fn model_structures_recompose_weak_equivalences() {
        let cat = chain_poset(2);
        let (structures, _) = enumerate_model_structures(&cat);
        assert!(!structures.is_empty());
        for ms in structures {
            let recomputed =
                composite_class(&cat, &ms.acyclic_cofibrations(), &ms.acyclic_fibrations());
            assert_eq!(recomputed, ms.weak_equivalences);
            assert!(two_of_three(&cat, &ms.weak_equivalences).is_ok());
        }
    }

    #[test]
    fn hasse_of_single_wfs_is_empty() {
        let wfs = enumerate_wfs(&chain_poset(0));
        assert!(wfs_hasse(&wfs).is_empty());
    }

    #[test]
    fn retract_detection_sees_identity_retracts() {
        // In the walking arrow the identity of 0 is a retract of itself but
        // not of the arrow.
        let cat = chain_poset(1);
        let arrow = cat.hom(ObjId(0), ObjId(1))[0];
        assert!(!is_retract_of(&cat, arrow, cat.identity(ObjId(0))));
        assert!(is_retract_of(&cat, arrow, arrow));
    }

    #[test]
    fn composite_class_of_walking_arrow() {
        let cat = chain_poset(1);
        let ids = cat.identity_class();
        let composites = composite_class(&cat, &ids, &ids);
        assert_eq!(composites, ids);
    }
}
