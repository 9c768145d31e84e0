//! Quillen adjunctions and equivalences between the model structures on
//! sets, and the homotopy-category labels of their weak equivalence classes.
//!
//! Every colimit-preserving endofunctor of sets is a product with a fixed
//! set `A`, and its effect on archetypes depends only on whether `A` is
//! empty, a singleton, or bigger. Product with a non-empty set and its right
//! adjoint both fix every archetype, so adjunction checks reduce to class
//! inclusions; the empty `A` collapses everything and is kept behind a flag
//! because it degenerates the equivalence graph.

use crate::archetypes::{ArchModelStructure, ArchetypeClass, ArchetypeFlags, ArchetypeSystem, SystemKind};
use std::collections::VecDeque;

/// Cardinality class of the set `A` in the left adjoint `A x (-)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CardinalityClass {
    Zero,
    One,
    Many,
}

/// A candidate left Quillen functor `A x (-)`, classified by the size of
/// `A`; the direction is given by the source/target arguments of the
/// checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LeftAdjointSpec {
    pub card: CardinalityClass,
}

/// The three homotopy categories arising from model structures on sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HomotopyCategoryLabel {
    /// The terminal category.
    Minus2Types,
    /// The walking arrow: empty versus non-empty.
    Minus1Types,
    /// Sets themselves.
    ZeroTypes,
}

impl HomotopyCategoryLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            HomotopyCategoryLabel::Minus2Types => "(-2)-types",
            HomotopyCategoryLabel::Minus1Types => "(-1)-types",
            HomotopyCategoryLabel::ZeroTypes => "0-types",
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum QuillenError {
    #[error("weak equivalence class outside the classification")]
    UnclassifiedWeakEquivalences,
    #[error("not a Quillen adjunction")]
    NotQuillenAdjunction,
    #[error("expected the set archetype system")]
    NotSetSystem,
}

fn require_set(sys: &ArchetypeSystem) -> Result<(), QuillenError> {
    if sys.kind() == SystemKind::Set {
        Ok(())
    } else {
        Err(QuillenError::NotSetSystem)
    }
}

fn iso_empty_index(sys: &ArchetypeSystem) -> usize {
    sys.index_of_flags(&ArchetypeFlags::Set { injective: true, surjective: true, domain_empty: true })
        .expect("set universe has the empty identity")
}

fn iso_nonempty_index(sys: &ArchetypeSystem) -> usize {
    sys.index_of_flags(&ArchetypeFlags::Set { injective: true, surjective: true, domain_empty: false })
        .expect("set universe has non-empty bijections")
}

/// Archetype of `A x f` for `f` of the given archetype. For empty `A` the
/// product is the empty identity; otherwise the archetype is unchanged
/// (injectivity, surjectivity and domain emptiness all pass through the
/// product with a non-empty set).
pub fn left_action(sys: &ArchetypeSystem, card: CardinalityClass, archetype: usize) -> usize {
    match card {
        CardinalityClass::Zero => iso_empty_index(sys),
        CardinalityClass::One | CardinalityClass::Many => archetype,
    }
}

/// Archetype of `hom(A, f)`. For empty `A` every hom-set is a singleton, so
/// the result is the identity of a one-point set; otherwise the archetype is
/// unchanged (post-composition with `f` on `A`-tuples collides or misses
/// exactly when `f` does).
pub fn right_action(sys: &ArchetypeSystem, card: CardinalityClass, archetype: usize) -> usize {
    match card {
        CardinalityClass::Zero => iso_nonempty_index(sys),
        CardinalityClass::One | CardinalityClass::Many => archetype,
    }
}

fn maps_into(
    sys: &ArchetypeSystem,
    action: impl Fn(usize) -> usize,
    source: &ArchetypeClass,
    target: &ArchetypeClass,
) -> bool {
    let _ = sys;
    source.iter().all(|t| target.contains(action(t)))
}

/// Whether `A x (-)` (for `A` in the spec's cardinality class) is a left
/// Quillen functor from `source` to `target`: it sends cofibrations into
/// cofibrations while its right adjoint sends fibrations back into
/// fibrations.
pub fn is_quillen_adjunction(
    sys: &ArchetypeSystem,
    spec: LeftAdjointSpec,
    source: &ArchModelStructure,
    target: &ArchModelStructure,
) -> Result<bool, QuillenError> {
    require_set(sys)?;
    Ok(maps_into(sys, |t| left_action(sys, spec.card, t), &source.cofibrations, &target.cofibrations)
        && maps_into(sys, |t| right_action(sys, spec.card, t), &target.fibrations, &source.fibrations))
}

/// The equivalent adjunction condition through acyclic classes: the left
/// adjoint preserves acyclic cofibrations and the right adjoint preserves
/// acyclic fibrations. Checked separately in tests against
/// [`is_quillen_adjunction`].
pub fn is_quillen_adjunction_acyclic(
    sys: &ArchetypeSystem,
    spec: LeftAdjointSpec,
    source: &ArchModelStructure,
    target: &ArchModelStructure,
) -> Result<bool, QuillenError> {
    require_set(sys)?;
    Ok(maps_into(
        sys,
        |t| left_action(sys, spec.card, t),
        &source.acyclic_cofibrations(),
        &target.acyclic_cofibrations(),
    ) && maps_into(
        sys,
        |t| right_action(sys, spec.card, t),
        &target.acyclic_fibrations(),
        &source.acyclic_fibrations(),
    ))
}

/// Homotopy-category label of a weak equivalence class from the set
/// classification.
pub fn homotopy_label(
    sys: &ArchetypeSystem,
    w: &ArchetypeClass,
) -> Result<HomotopyCategoryLabel, QuillenError> {
    require_set(sys)?;
    let empty_inclusions = sys.class_where(|f| {
        matches!(f, ArchetypeFlags::Set { domain_empty: true, surjective: false, .. })
    });
    if *w == sys.full_class() {
        Ok(HomotopyCategoryLabel::Minus2Types)
    } else if *w == empty_inclusions.complement() {
        Ok(HomotopyCategoryLabel::Minus1Types)
    } else if *w == sys.isos() {
        Ok(HomotopyCategoryLabel::ZeroTypes)
    } else {
        Err(QuillenError::UnclassifiedWeakEquivalences)
    }
}

/// Whether a Quillen adjunction is a Quillen equivalence: the weak
/// equivalence classes agree and the induced functor on the (known, labeled)
/// homotopy category is an equivalence. On the terminal category anything
/// is an equivalence; on the walking arrow the empty and non-empty object
/// classes must not collapse, which needs `A` non-empty; on sets the functor
/// `A x (-)` is an equivalence only for singleton `A`.
pub fn is_quillen_equivalence(
    sys: &ArchetypeSystem,
    spec: LeftAdjointSpec,
    source: &ArchModelStructure,
    target: &ArchModelStructure,
) -> Result<bool, QuillenError> {
    if !is_quillen_adjunction(sys, spec, source, target)? {
        return Err(QuillenError::NotQuillenAdjunction);
    }
    if source.weak_equivalences != target.weak_equivalences {
        return Ok(false);
    }
    let label = homotopy_label(sys, &source.weak_equivalences)?;
    Ok(match label {
        HomotopyCategoryLabel::Minus2Types => true,
        HomotopyCategoryLabel::Minus1Types => spec.card != CardinalityClass::Zero,
        HomotopyCategoryLabel::ZeroTypes => spec.card == CardinalityClass::One,
    })
}

/// A pair of model structures with the same weak equivalences, and the
/// length of the shortest zigzag of Quillen equivalences connecting them
/// (`None` if disconnected).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SameWPair {
    pub first: usize,
    pub second: usize,
    pub zigzag_length: Option<usize>,
}

/// The direct-equivalence graph over a family of model structures.
#[derive(Debug, Clone)]
pub struct EquivalenceGraph {
    /// Whether the empty left adjoint participated.
    pub include_empty: bool,
    /// Unordered pairs `(i, j)`, `i < j`, joined by a direct Quillen
    /// equivalence for some admissible spec, in either direction.
    pub edges: Vec<(usize, usize)>,
    /// Connected components, each sorted, ordered by size descending then
    /// by smallest member.
    pub components: Vec<Vec<usize>>,
    /// Zigzag distances for all same-weak-equivalence pairs.
    pub same_w_pairs: Vec<SameWPair>,
}

/// Builds the graph of direct Quillen equivalences over the given model
/// structures. `A` ranges over singletons and larger sets, plus the empty
/// set when `include_empty` is set.
pub fn equivalence_graph(
    sys: &ArchetypeSystem,
    structures: &[ArchModelStructure],
    include_empty: bool,
) -> Result<EquivalenceGraph, QuillenError> {
    require_set(sys)?;
    let mut cards = vec![CardinalityClass::One, CardinalityClass::Many];
    if include_empty {
        cards.push(CardinalityClass::Zero);
    }
    let n = structures.len();
    let mut edges = Vec::new();
    let mut adjacency = vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            let direct = cards.iter().any(|&card| {
                let spec = LeftAdjointSpec { card };
                [(i, j), (j, i)].into_iter().any(|(s, t)| {
                    matches!(
                        is_quillen_equivalence(sys, spec, &structures[s], &structures[t]),
                        Ok(true)
                    )
                })
            });
            if direct {
                edges.push((i, j));
                adjacency[i].push(j);
                adjacency[j].push(i);
            }
        }
    }
    let distances = |start: usize| -> Vec<Option<usize>> {
        let mut dist = vec![None; n];
        dist[start] = Some(0);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in &adjacency[v] {
                if dist[w].is_none() {
                    dist[w] = Some(dist[v].unwrap() + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    };
    let mut seen = vec![false; n];
    let mut components = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut component: Vec<usize> =
            distances(start).iter().enumerate().filter(|(_, d)| d.is_some()).map(|(i, _)| i).collect();
        component.sort();
        for &v in &component {
            seen[v] = true;
        }
        components.push(component);
    }
    components.sort_by_key(|c| (std::cmp::Reverse(c.len()), c[0]));
    let mut same_w_pairs = Vec::new();
    for i in 0..n {
        let dist = distances(i);
        for j in i + 1..n {
            if structures[i].weak_equivalences == structures[j].weak_equivalences {
                same_w_pairs.push(SameWPair { first: i, second: j, zigzag_length: dist[j] });
            }
        }
    }
    Ok(EquivalenceGraph { include_empty, edges, components, same_w_pairs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::archetypes::{enumerate_model_structures, set_system};

    fn fixtures() -> (ArchetypeSystem, Vec<ArchModelStructure>) {
        let sys = set_system().expect("embedded tables");
        let (structures, _) = enumerate_model_structures(&sys);
        (sys, structures)
    }

    fn find(
        sys: &ArchetypeSystem,
        structures: &[ArchModelStructure],
        c: &[&str],
        f: &[&str],
    ) -> ArchModelStructure {
        let c = sys.class_of_names(c).unwrap();
        let f = sys.class_of_names(f).unwrap();
        *structures
            .iter()
            .find(|m| m.cofibrations == c && m.fibrations == f)
            .expect("structure present")
    }

    #[test]
    fn singleton_action_is_identity() {
        let (sys, _) = fixtures();
        for t in 0..sys.size() {
            assert_eq!(left_action(&sys, CardinalityClass::One, t), t);
            assert_eq!(left_action(&sys, CardinalityClass::Many, t), t);
            assert_eq!(right_action(&sys, CardinalityClass::Many, t), t);
        }
    }

    #[test]
    fn empty_action_collapses() {
        let (sys, _) = fixtures();
        let gen = sys.index_of_name("gen").unwrap();
        assert_eq!(left_action(&sys, CardinalityClass::Zero, gen), sys.index_of_name("iso_empty").unwrap());
        assert_eq!(right_action(&sys, CardinalityClass::Zero, gen), sys.index_of_name("iso").unwrap());
    }

    #[test]
    fn identity_adjunction_between_comparable_structures() {
        let (sys, structures) = fixtures();
        let source = find(&sys, &structures, &["iso_empty", "iso", "mono_empty", "mono"], &["iso_empty", "iso", "epi", "mono_empty"]);
        let target = find(
            &sys,
            &structures,
            &["epi", "gen", "iso", "iso_empty", "mono", "mono_empty"],
            &["iso_empty", "iso", "mono_empty"],
        );
        let spec = LeftAdjointSpec { card: CardinalityClass::One };
        assert_eq!(is_quillen_adjunction(&sys, spec, &source, &target), Ok(true));
        assert_eq!(is_quillen_equivalence(&sys, spec, &source, &target), Ok(true));
    }

    #[test]
    fn surjections_do_not_include_into_injections() {
        let (sys, structures) = fixtures();
        let source = find(&sys, &structures, &["iso_empty", "iso", "epi"], &["iso_empty", "iso", "mono_empty", "mono"]);
        let target = find(&sys, &structures, &["iso_empty", "iso", "mono_empty", "mono"], &["iso_empty", "iso", "epi"]);
        let spec = LeftAdjointSpec { card: CardinalityClass::Many };
        assert_eq!(is_quillen_adjunction(&sys, spec, &source, &target), Ok(false));
    }

    #[test]
    fn empty_domain_inclusion_blocks_adjunction() {
        let (sys, structures) = fixtures();
        let source = find(&sys, &structures, &["iso_empty", "iso", "mono_empty", "mono"], &["iso_empty", "iso", "epi"]);
        let target = find(
            &sys,
            &structures,
            &["iso_empty", "iso", "mono", "epi", "gen"],
            &["iso_empty", "iso", "mono_empty"],
        );
        let spec = LeftAdjointSpec { card: CardinalityClass::Many };
        assert_eq!(is_quillen_adjunction(&sys, spec, &source, &target), Ok(false));
    }

    #[test]
    fn adjunction_conditions_agree() {
        let (sys, structures) = fixtures();
        for card in [CardinalityClass::Zero, CardinalityClass::One, CardinalityClass::Many] {
            let spec = LeftAdjointSpec { card };
            for s in &structures {
                for t in &structures {
                    assert_eq!(
                        is_quillen_adjunction(&sys, spec, s, t),
                        is_quillen_adjunction_acyclic(&sys, spec, s, t),
                    );
                }
            }
        }
    }

    #[test]
    fn labels_of_the_three_weak_equivalence_classes() {
        let (sys, _) = fixtures();
        assert_eq!(homotopy_label(&sys, &sys.full_class()), Ok(HomotopyCategoryLabel::Minus2Types));
        let minus1 = sys.class_of_names(&["iso_empty", "iso", "mono", "epi", "gen"]).unwrap();
        assert_eq!(homotopy_label(&sys, &minus1), Ok(HomotopyCategoryLabel::Minus1Types));
        assert_eq!(homotopy_label(&sys, &sys.isos()), Ok(HomotopyCategoryLabel::ZeroTypes));
        let junk = sys.class_of_names(&["epi"]).unwrap();
        assert_eq!(homotopy_label(&sys, &junk), Err(QuillenError::UnclassifiedWeakEquivalences));
    }

    #[test]
    fn different_weak_equivalences_are_never_equivalent() {
        let (sys, structures) = fixtures();
        let spec = LeftAdjointSpec { card: CardinalityClass::One };
        for s in &structures {
            for t in &structures {
                if s.weak_equivalences != t.weak_equivalences {
                    if let Ok(v) = is_quillen_equivalence(&sys, spec, s, t) {
                        assert!(!v);
                    }
                }
            }
        }
    }

    #[test]
    fn empty_adjoint_is_not_an_equivalence_on_the_walking_arrow_classes() {
        let (sys, structures) = fixtures();
        let minus1: Vec<_> = structures
            .iter()
            .filter(|m| homotopy_label(&sys, &m.weak_equivalences) == Ok(HomotopyCategoryLabel::Minus1Types))
            .collect();
        assert_eq!(minus1.len(), 2);
        let spec = LeftAdjointSpec { card: CardinalityClass::Zero };
        assert_eq!(is_quillen_equivalence(&sys, spec, minus1[0], minus1[1]), Ok(false));
    }
}
