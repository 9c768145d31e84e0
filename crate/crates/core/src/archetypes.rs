//! The symbolic engine: finitely many morphism archetypes with lifting,
//! composition and factorization tables.
//!
//! An archetype is an equivalence class of morphisms (such as "injective,
//! not surjective, empty domain") coarse enough that lifting, composition
//! and factorization behaviour depend only on the class. Three systems are
//! shipped: sets, pointed sets and vector spaces over F2. The lifting rule
//! for sets is a closed formula; everything else is derived by the
//! exhaustive scans in [`crate::oracle`] and checked in as data files under
//! `tables/`, guarded by content hashes.

use crate::tables::{DerivedTables, TableError};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Which ambient category a system models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SystemKind {
    Set,
    Pointed,
    Vect,
}

impl fmt::Display for SystemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SystemKind::Set => write!(f, "set"),
            SystemKind::Pointed => write!(f, "pointed"),
            SystemKind::Vect => write!(f, "vect"),
        }
    }
}

/// Predicate flags of an archetype; the shape depends on the system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ArchetypeFlags {
    Set { injective: bool, surjective: bool, domain_empty: bool },
    Pointed { surjective: bool, fiber_trivial: bool, injective_off: bool },
    Vect { mono: bool, epi: bool },
}

impl ArchetypeFlags {
    /// Whether morphisms of this archetype are isomorphisms.
    pub fn is_iso(&self) -> bool {
        match *self {
            ArchetypeFlags::Set { injective, surjective, .. } => injective && surjective,
            ArchetypeFlags::Pointed { surjective, fiber_trivial, injective_off } => {
                surjective && fiber_trivial && injective_off
            }
            ArchetypeFlags::Vect { mono, epi } => mono && epi,
        }
    }
}

/// A named archetype.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Archetype {
    pub name: String,
    pub flags: ArchetypeFlags,
}

fn arch(name: &str, flags: ArchetypeFlags) -> Archetype {
    Archetype { name: name.to_string(), flags }
}

/// The archetypes of functions between sets, in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SetArchetype {
    /// The map from the empty set to itself.
    IsoEmpty,
    /// Bijections between non-empty sets.
    Iso,
    /// Maps from the empty set to a non-empty set.
    MonoEmpty,
    /// Injective, not surjective, non-empty domain.
    Mono,
    /// Surjective, not injective.
    Epi,
    /// Neither injective nor surjective.
    Gen,
}

impl SetArchetype {
    pub fn classify(injective: bool, surjective: bool, domain_empty: bool) -> Self {
        match (injective, surjective, domain_empty) {
            (true, true, true) => SetArchetype::IsoEmpty,
            (true, true, false) => SetArchetype::Iso,
            (true, false, true) => SetArchetype::MonoEmpty,
            (true, false, false) => SetArchetype::Mono,
            (false, true, false) => SetArchetype::Epi,
            (false, false, false) => SetArchetype::Gen,
            _ => unreachable!("maps out of the empty set are injective"),
        }
    }

    /// Index in the canonical set universe.
    pub fn index(self) -> usize {
        self as usize
    }
}

/// The canonical universe of each system: every realizable flag combination,
/// in the order used by all tables and bitmasks.
pub fn canonical_universe(kind: SystemKind) -> Vec<Archetype> {
    use ArchetypeFlags as F;
    match kind {
        SystemKind::Set => vec![
            arch("iso_empty", F::Set { injective: true, surjective: true, domain_empty: true }),
            arch("iso", F::Set { injective: true, surjective: true, domain_empty: false }),
            arch("mono_empty", F::Set { injective: true, surjective: false, domain_empty: true }),
            arch("mono", F::Set { injective: true, surjective: false, domain_empty: false }),
            arch("epi", F::Set { injective: false, surjective: true, domain_empty: false }),
            arch("gen", F::Set { injective: false, surjective: false, domain_empty: false }),
        ],
        SystemKind::Pointed => vec![
            arch("iso", F::Pointed { surjective: true, fiber_trivial: true, injective_off: true }),
            arch("epi_off", F::Pointed { surjective: true, fiber_trivial: true, injective_off: false }),
            arch("epi_base", F::Pointed { surjective: true, fiber_trivial: false, injective_off: true }),
            arch("epi_both", F::Pointed { surjective: true, fiber_trivial: false, injective_off: false }),
            arch("mono", F::Pointed { surjective: false, fiber_trivial: true, injective_off: true }),
            arch("gen_off", F::Pointed { surjective: false, fiber_trivial: true, injective_off: false }),
            arch("gen_base", F::Pointed { surjective: false, fiber_trivial: false, injective_off: true }),
            arch("gen_both", F::Pointed { surjective: false, fiber_trivial: false, injective_off: false }),
        ],
        SystemKind::Vect => vec![
            arch("iso", F::Vect { mono: true, epi: true }),
            arch("mono", F::Vect { mono: true, epi: false }),
            arch("epi", F::Vect { mono: false, epi: true }),
            arch("gen", F::Vect { mono: false, epi: false }),
        ],
    }
}

/// Lifting rule for functions between sets: the left map lifts against the
/// right map exactly when the left domain is non-empty while the right one
/// is empty, or at least one of the two is injective and at least one is
/// surjective.
pub fn set_lifts_rule(left: &ArchetypeFlags, right: &ArchetypeFlags) -> bool {
    let (li, ls, le) = match *left {
        ArchetypeFlags::Set { injective, surjective, domain_empty } => (injective, surjective, domain_empty),
        _ => panic!("set lifting rule applied to non-set flags"),
    };
    let (ri, rs, re) = match *right {
        ArchetypeFlags::Set { injective, surjective, domain_empty } => (injective, surjective, domain_empty),
        _ => panic!("set lifting rule applied to non-set flags"),
    };
    (!le && re) || ((li || ri) && (ls || rs))
}

/// A subset of a system's archetype universe, as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArchetypeClass {
    bits: u16,
    len: u8,
}

impl ArchetypeClass {
    pub fn empty(len: usize) -> Self {
        ArchetypeClass { bits: 0, len: len as u8 }
    }

    pub fn full(len: usize) -> Self {
        ArchetypeClass { bits: ((1u32 << len) - 1) as u16, len: len as u8 }
    }

    pub fn from_bits(len: usize, bits: u16) -> Self {
        ArchetypeClass { bits, len: len as u8 }
    }

    pub fn bits(&self) -> u16 {
        self.bits
    }

    pub fn universe_len(&self) -> usize {
        self.len as usize
    }

    pub fn insert(&mut self, idx: usize) {
        self.bits |= 1 << idx;
    }

    pub fn contains(&self, idx: usize) -> bool {
        self.bits >> idx & 1 == 1
    }

    pub fn union(&self, other: &Self) -> Self {
        ArchetypeClass { bits: self.bits | other.bits, len: self.len }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        ArchetypeClass { bits: self.bits & other.bits, len: self.len }
    }

    pub fn complement(&self) -> Self {
        ArchetypeClass { bits: !self.bits & ((1u32 << self.len) - 1) as u16, len: self.len }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len as usize).filter(move |&i| self.contains(i))
    }
}

/// A weak factorization system over an archetype universe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct ArchWfs {
    pub left: ArchetypeClass,
    pub right: ArchetypeClass,
}

/// A model structure over an archetype universe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct ArchModelStructure {
    pub cofibrations: ArchetypeClass,
    pub fibrations: ArchetypeClass,
    pub weak_equivalences: ArchetypeClass,
}

impl ArchModelStructure {
    pub fn acyclic_cofibrations(&self) -> ArchetypeClass {
        self.cofibrations.intersection(&self.weak_equivalences)
    }

    pub fn acyclic_fibrations(&self) -> ArchetypeClass {
        self.fibrations.intersection(&self.weak_equivalences)
    }
}

/// A composable triple witnessing a two-out-of-three failure: `second`
/// after `first` can compose to `composite`, and exactly two of the three
/// lie in the offending class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArchTriple {
    pub first: usize,
    pub second: usize,
    pub composite: usize,
}

/// Why a candidate pair of weak factorization systems was not a model
/// structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArchRejectionReason {
    /// The lower left class is not the acyclic part of the upper one.
    AcyclicCofibrations { witness: usize },
    /// The upper right class is not the acyclic part of the lower one.
    AcyclicFibrations { witness: usize },
    TwoOfThree(ArchTriple),
}

/// One rejected candidate, with the weak equivalences computed for it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArchRejection {
    pub lower: ArchWfs,
    pub upper: ArchWfs,
    pub computed_w: ArchetypeClass,
    pub reason: ArchRejectionReason,
}

/// Errors constructing an [`ArchetypeSystem`] from checked-in tables.
#[derive(Debug, thiserror::Error)]
pub enum SystemError {
    #[error("derived tables missing or stale: {0}")]
    Table(#[from] TableError),
    #[error("derived tables are for system `{got}`, expected `{expected}`")]
    WrongKind { expected: SystemKind, got: SystemKind },
    #[error("derived tables universe does not match the canonical universe")]
    UniverseMismatch,
    #[error("derived tables stale: lifting table disagrees with the set lifting rule at ({left}, {right})")]
    LiftsRuleMismatch { left: String, right: String },
    #[error("invalid system: {0}")]
    Invariant(String),
}

/// A finite universe of morphism archetypes together with its lifting,
/// composition and factorization tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArchetypeSystem {
    kind: SystemKind,
    universe: Vec<Archetype>,
    /// `lifts[l]` is the class of archetypes the left archetype `l` lifts
    /// against.
    lifts: Vec<ArchetypeClass>,
    /// `comp[a][b]` is the class of archetypes realized by some composable
    /// pair (first `a`, then `b`). Existential: one witness suffices.
    comp: Vec<Vec<ArchetypeClass>>,
    /// `fact[t]` lists the pairs `(a, b)` such that every morphism of
    /// archetype `t` factors as an `a`-morphism followed by a `b`-morphism.
    /// Universal: every instance must factor.
    fact: Vec<Vec<(usize, usize)>>,
    /// Instance-size bound the tables were derived at.
    bound: u32,
}

impl ArchetypeSystem {
    pub fn from_tables(tables: &DerivedTables) -> Result<Self, SystemError> {
        let universe = canonical_universe(tables.kind);
        if tables.resolve_universe()? != universe {
            return Err(SystemError::UniverseMismatch);
        }
        let n = universe.len();
        let lifts = tables.resolve_lifts()?;
        let comp = tables.resolve_comp()?;
        let fact = tables.resolve_fact()?;
        let sys = ArchetypeSystem {
            kind: tables.kind,
            universe,
            lifts: lifts.iter().map(|&bits| ArchetypeClass::from_bits(n, bits)).collect(),
            comp: comp
                .iter()
                .map(|row| row.iter().map(|&bits| ArchetypeClass::from_bits(n, bits)).collect())
                .collect(),
            fact,
            bound: tables.bound,
        };
        sys.validate()?;
        Ok(sys)
    }

    pub fn kind(&self) -> SystemKind {
        self.kind
    }

    pub fn size(&self) -> usize {
        self.universe.len()
    }

    pub fn universe(&self) -> &[Archetype] {
        &self.universe
    }

    pub fn archetype(&self, idx: usize) -> &Archetype {
        &self.universe[idx]
    }

    pub fn derivation_bound(&self) -> u32 {
        self.bound
    }

    pub fn index_of_flags(&self, flags: &ArchetypeFlags) -> Option<usize> {
        self.universe.iter().position(|a| a.flags == *flags)
    }

    pub fn index_of_name(&self, name: &str) -> Option<usize> {
        self.universe.iter().position(|a| a.name == name)
    }

    pub fn lifts(&self, left: usize, right: usize) -> bool {
        self.lifts[left].contains(right)
    }

    pub fn composites(&self, first: usize, second: usize) -> ArchetypeClass {
        self.comp[first][second]
    }

    pub fn factorizations(&self, target: usize) -> &[(usize, usize)] {
        &self.fact[target]
    }

    pub fn empty_class(&self) -> ArchetypeClass {
        ArchetypeClass::empty(self.size())
    }

    pub fn full_class(&self) -> ArchetypeClass {
        ArchetypeClass::full(self.size())
    }

    pub fn class_where(&self, pred: impl Fn(&ArchetypeFlags) -> bool) -> ArchetypeClass {
        let mut class = self.empty_class();
        for (i, a) in self.universe.iter().enumerate() {
            if pred(&a.flags) {
                class.insert(i);
            }
        }
        class
    }

    /// The class of isomorphism archetypes.
    pub fn isos(&self) -> ArchetypeClass {
        self.class_where(|f| f.is_iso())
    }

    pub fn class_of_names(&self, names: &[&str]) -> Option<ArchetypeClass> {
        let mut class = self.empty_class();
        for name in names {
            class.insert(self.index_of_name(name)?);
        }
        Some(class)
    }

    /// Member names of a class, sorted lexicographically.
    pub fn class_names(&self, class: &ArchetypeClass) -> Vec<String> {
        let mut names: Vec<String> = class.iter().map(|i| self.universe[i].name.clone()).collect();
        names.sort();
        names
    }

    /// Everything with the right lifting property against all of `class`.
    pub fn right_orthogonal(&self, class: &ArchetypeClass) -> ArchetypeClass {
        let mut out = self.full_class();
        for l in class.iter() {
            out = out.intersection(&self.lifts[l]);
        }
        out
    }

    /// Everything with the left lifting property against all of `class`.
    pub fn left_orthogonal(&self, class: &ArchetypeClass) -> ArchetypeClass {
        self.class_where_index(|l| class.is_subset(&self.lifts[l]))
    }

    fn class_where_index(&self, pred: impl Fn(usize) -> bool) -> ArchetypeClass {
        let mut class = self.empty_class();
        for i in 0..self.size() {
            if pred(i) {
                class.insert(i);
            }
        }
        class
    }

    /// Both orthogonals of a class.
    pub fn orthogonals(&self, class: &ArchetypeClass) -> (ArchetypeClass, ArchetypeClass) {
        (self.left_orthogonal(class), self.right_orthogonal(class))
    }

    /// Whether every archetype admits a factorization with left part in `l`
    /// and right part in `r`.
    pub fn factorization_holds(&self, l: &ArchetypeClass, r: &ArchetypeClass) -> bool {
        (0..self.size()).all(|t| {
            self.fact[t].iter().any(|&(a, b)| l.contains(a) && r.contains(b))
        })
    }

    /// The class of archetypes realized as a composite of a member of
    /// `first` followed by a member of `second`.
    pub fn composite_class(&self, first: &ArchetypeClass, second: &ArchetypeClass) -> ArchetypeClass {
        let mut out = self.empty_class();
        for a in first.iter() {
            for b in second.iter() {
                out = out.union(&self.comp[a][b]);
            }
        }
        out
    }

    /// Checks the two-out-of-three property of `w` against the composition
    /// relation, returning the first realizable violating triple.
    pub fn two_of_three(&self, w: &ArchetypeClass) -> Result<(), ArchTriple> {
        for first in 0..self.size() {
            for second in 0..self.size() {
                for composite in self.comp[first][second].iter() {
                    let members = [first, second, composite]
                        .iter()
                        .filter(|&&x| w.contains(x))
                        .count();
                    if members == 2 {
                        return Err(ArchTriple { first, second, composite });
                    }
                }
            }
        }
        Ok(())
    }

    /// Structural sanity checks on the tables.
    fn validate(&self) -> Result<(), SystemError> {
        let n = self.size();
        let isos = self.isos();
        for i in isos.iter() {
            for x in 0..n {
                if !self.lifts(i, x) || !self.lifts(x, i) {
                    return Err(SystemError::Invariant(format!(
                        "iso archetype `{}` must lift against everything",
                        self.universe[i].name
                    )));
                }
            }
        }
        for t in 0..n {
            if self.fact[t].is_empty() {
                return Err(SystemError::Invariant(format!(
                    "archetype `{}` has no factorizations",
                    self.universe[t].name
                )));
            }
        }
        for a in 0..n {
            let mut via_isos = self.empty_class();
            for i in isos.iter() {
                let left = self.comp[a][i];
                let right = self.comp[i][a];
                let singleton = ArchetypeClass::from_bits(n, 1 << a);
                if !left.is_subset(&singleton) || !right.is_subset(&singleton) {
                    return Err(SystemError::Invariant(format!(
                        "composing `{}` with an iso must not change the archetype",
                        self.universe[a].name
                    )));
                }
                via_isos = via_isos.union(&left).union(&right);
            }
            if !via_isos.contains(a) {
                return Err(SystemError::Invariant(format!(
                    "archetype `{}` composes with no iso archetype",
                    self.universe[a].name
                )));
            }
        }
        Ok(())
    }
}

/// All weak factorization systems over the universe: pairs `(l, r)` fixed by
/// the orthogonality Galois connection for which the factorization table
/// covers every archetype. Sorted by the bit pattern of the left class.
pub fn enumerate_wfs(sys: &ArchetypeSystem) -> Vec<ArchWfs> {
    let n = sys.size();
    let mut out = Vec::new();
    for bits in 0..(1u32 << n) {
        let right = ArchetypeClass::from_bits(n, bits as u16);
        let left = sys.left_orthogonal(&right);
        if sys.right_orthogonal(&left) != right {
            continue;
        }
        if !sys.factorization_holds(&left, &right) {
            continue;
        }
        out.push(ArchWfs { left, right });
    }
    out.sort();
    out
}

/// All model structures over the universe, plus the log of rejected
/// candidate pairs. For each ordered pair of weak factorization systems
/// `(l1, r1) <= (l2, r2)` the weak equivalences are computed as the
/// composites `r2 ∘ l1`, and the candidate is kept when `l1 = l2 ∩ w`,
/// `r2 = r1 ∩ w` and `w` satisfies two-out-of-three.
pub fn enumerate_model_structures(
    sys: &ArchetypeSystem,
) -> (Vec<ArchModelStructure>, Vec<ArchRejection>) {
    let wfs = enumerate_wfs(sys);
    let mut accepted = Vec::new();
    let mut rejected = Vec::new();
    for lower in &wfs {
        for upper in &wfs {
            if !lower.left.is_subset(&upper.left) {
                continue;
            }
            let w = sys.composite_class(&lower.left, &upper.right);
            let reason = if upper.left.intersection(&w) != lower.left {
                let diff = upper.left.intersection(&w).bits() ^ lower.left.bits();
                Some(ArchRejectionReason::AcyclicCofibrations {
                    witness: diff.trailing_zeros() as usize,
                })
            } else if lower.right.intersection(&w) != upper.right {
                let diff = lower.right.intersection(&w).bits() ^ upper.right.bits();
                Some(ArchRejectionReason::AcyclicFibrations {
                    witness: diff.trailing_zeros() as usize,
                })
            } else {
                sys.two_of_three(&w).err().map(ArchRejectionReason::TwoOfThree)
            };
            match reason {
                None => accepted.push(ArchModelStructure {
                    cofibrations: upper.left,
                    fibrations: lower.right,
                    weak_equivalences: w,
                }),
                Some(reason) => rejected.push(ArchRejection {
                    lower: *lower,
                    upper: *upper,
                    computed_w: w,
                    reason,
                }),
            }
        }
    }
    accepted.sort();
    (accepted, rejected)
}

/// Cover edges of the poset of weak factorization systems ordered by
/// inclusion of left classes. Edges point from the smaller to the larger.
pub fn wfs_hasse(wfs: &[ArchWfs]) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for (i, a) in wfs.iter().enumerate() {
        for (j, b) in wfs.iter().enumerate() {
            if i == j || !a.left.is_subset(&b.left) {
                continue;
            }
            let covered = wfs.iter().enumerate().any(|(k, c)| {
                k != i
                    && k != j
                    && a.left.is_subset(&c.left)
                    && c.left.is_subset(&b.left)
            });
            if !covered {
                edges.push((i, j));
            }
        }
    }
    edges
}

/// Display label for a class: the traditional name when the class is one of
/// the named ones, otherwise the sorted member list.
pub fn class_label(sys: &ArchetypeSystem, class: &ArchetypeClass) -> String {
    for (candidate, label) in named_classes(sys) {
        if candidate == *class {
            return label;
        }
    }
    format!("{{{}}}", sys.class_names(class).join(","))
}

/// The named classes of each system, as (class, label) pairs. Earlier
/// entries win when classes coincide.
pub fn named_classes(sys: &ArchetypeSystem) -> Vec<(ArchetypeClass, String)> {
    use ArchetypeFlags as F;
    let mut out = Vec::new();
    let mut push = |class: ArchetypeClass, label: &str| out.push((class, label.to_string()));
    match sys.kind() {
        SystemKind::Set => {
            let inj = sys.class_where(|f| matches!(f, F::Set { injective: true, .. }));
            let surj = sys.class_where(|f| matches!(f, F::Set { surjective: true, .. }));
            let empty = sys.class_where(|f| matches!(f, F::Set { domain_empty: true, .. }));
            let inj_empty = inj.intersection(&empty).intersection(&sys.isos().complement());
            push(sys.isos(), "bij");
            push(inj, "inj");
            push(surj, "surj");
            push(sys.full_class(), "any");
            push(surj.union(&inj_empty), "surj∪inj_∅");
            push(sys.isos().union(&inj_empty), "bij∪inj_∅");
            push(inj.intersection(&inj_empty.complement()), "inj_{≠∅}∪{id_∅}");
            push(inj_empty.complement(), "any_{≠∅}∪{id_∅}");
            push(inj_empty, "inj_∅");
        }
        SystemKind::Pointed => {
            let surj = sys.class_where(|f| matches!(f, F::Pointed { surjective: true, .. }));
            let fiber = sys.class_where(|f| matches!(f, F::Pointed { fiber_trivial: true, .. }));
            let off = sys.class_where(|f| matches!(f, F::Pointed { injective_off: true, .. }));
            push(sys.isos(), "bij");
            push(fiber.intersection(&off), "inj");
            push(surj, "surj");
            push(sys.full_class(), "any");
            push(fiber, "inj_*");
            push(off, "inj_{≠*}");
            push(surj.intersection(&fiber), "surj∩inj_*");
            push(surj.intersection(&off), "surj∩inj_{≠*}");
        }
        SystemKind::Vect => {
            push(sys.isos(), "iso");
            push(sys.class_where(|f| matches!(f, F::Vect { mono: true, .. })), "mon");
            push(sys.class_where(|f| matches!(f, F::Vect { epi: true, .. })), "epi");
            push(sys.full_class(), "hom");
        }
    }
    out
}

/// Homotopy-category column of the classification tables, determined by the
/// weak equivalence class. `None` for classes outside the classification.
pub fn homotopy_table_label(sys: &ArchetypeSystem, w: &ArchetypeClass) -> Option<&'static str> {
    let isos = sys.isos();
    match sys.kind() {
        SystemKind::Set => {
            let empty_incl = sys.class_where(|f| {
                matches!(f, ArchetypeFlags::Set { domain_empty: true, surjective: false, .. })
            });
            if *w == sys.full_class() {
                Some("(-2)-types")
            } else if *w == empty_incl.complement() {
                Some("(-1)-types")
            } else if *w == isos {
                Some("0-types")
            } else {
                None
            }
        }
        SystemKind::Pointed => {
            if *w == sys.full_class() {
                Some("(-2)-types")
            } else if *w == isos {
                Some("pointed 0-types")
            } else {
                None
            }
        }
        SystemKind::Vect => {
            if *w == sys.full_class() {
                Some("0")
            } else if *w == isos {
                Some("Vect")
            } else {
                None
            }
        }
    }
}

const SET_TABLES: &str = include_str!("../tables/set.toml");
const POINTED_TABLES: &str = include_str!("../tables/pointed.toml");
const VECT_TABLES: &str = include_str!("../tables/vect.toml");

/// Raw text of the checked-in table file for a system.
pub fn embedded_table_text(kind: SystemKind) -> &'static str {
    match kind {
        SystemKind::Set => SET_TABLES,
        SystemKind::Pointed => POINTED_TABLES,
        SystemKind::Vect => VECT_TABLES,
    }
}

fn system_from_embedded(kind: SystemKind) -> Result<ArchetypeSystem, SystemError> {
    let tables = DerivedTables::parse_verified(embedded_table_text(kind))?;
    if tables.kind != kind {
        return Err(SystemError::WrongKind { expected: kind, got: tables.kind });
    }
    ArchetypeSystem::from_tables(&tables)
}

/// The six-archetype system for functions between sets. The lifting table is
/// required to agree with [`set_lifts_rule`]; composition and factorization
/// come from the checked-in derived tables.
pub fn set_system() -> Result<ArchetypeSystem, SystemError> {
    let sys = system_from_embedded(SystemKind::Set)?;
    for (l, left) in sys.universe.iter().enumerate() {
        for (r, right) in sys.universe.iter().enumerate() {
            if sys.lifts(l, r) != set_lifts_rule(&left.flags, &right.flags) {
                return Err(SystemError::LiftsRuleMismatch {
                    left: left.name.clone(),
                    right: right.name.clone(),
                });
            }
        }
    }
    Ok(sys)
}

/// The eight-archetype system for pointed sets, fully scan-derived.
pub fn pointed_system() -> Result<ArchetypeSystem, SystemError> {
    system_from_embedded(SystemKind::Pointed)
}

/// The four-archetype system for vector spaces over F2, fully scan-derived.
pub fn vect_system() -> Result<ArchetypeSystem, SystemError> {
    system_from_embedded(SystemKind::Vect)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_archetype_classification_is_total_on_realizable_flags() {
        assert_eq!(SetArchetype::classify(true, true, true), SetArchetype::IsoEmpty);
        assert_eq!(SetArchetype::classify(false, false, false), SetArchetype::Gen);
        assert_eq!(SetArchetype::classify(true, false, true), SetArchetype::MonoEmpty);
    }

    #[test]
    fn set_lifts_rule_spot_checks() {
        let u = canonical_universe(SystemKind::Set);
        let by_name = |n: &str| u.iter().find(|a| a.name == n).unwrap().flags;
        // Neither injective nor surjective on either side: no lift.
        assert!(!set_lifts_rule(&by_name("gen"), &by_name("gen")));
        // Non-empty domain on the left, empty on the right: always lifts.
        assert!(set_lifts_rule(&by_name("gen"), &by_name("mono_empty")));
        // Isomorphisms lift against everything.
        for a in &u {
            assert!(set_lifts_rule(&by_name("iso"), &a.flags));
            assert!(set_lifts_rule(&a.flags, &by_name("iso")));
        }
    }

    #[test]
    fn class_bit_ops() {
        let mut a = ArchetypeClass::empty(6);
        a.insert(0);
        a.insert(3);
        let b = ArchetypeClass::from_bits(6, 0b001001);
        assert_eq!(a, b);
        assert_eq!(a.complement().bits(), 0b110110);
        assert!(a.is_subset(&ArchetypeClass::full(6)));
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![0, 3]);
    }
}
