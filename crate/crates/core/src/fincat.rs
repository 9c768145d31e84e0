//! Finite categories with fully materialized composition tables, and the
//! stock categories the engine is exercised on.
//!
//! Objects and morphisms are identified by dense indices assigned in input
//! order, so a class of morphisms is a bit vector and every engine pass is a
//! table walk. Categories are immutable once built; sharing them across
//! parallel workers is safe.

use crate::archetypes::SetArchetype;
use std::collections::HashMap;
use std::fmt;

/// Index of an object in its category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjId(pub usize);

/// Index of a morphism in its category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MorId(pub usize);

impl fmt::Display for ObjId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for MorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A morphism record: name plus endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    pub name: String,
    pub src: ObjId,
    pub dst: ObjId,
}

/// A finite category: objects, morphisms, identities and a total
/// composition table on composable pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteCategory {
    object_names: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<MorId>,
    /// Dense |Mor| x |Mor| table; `table[f * n + g]` is `g ∘ f` when
    /// `dst(f) = src(g)` and `None` otherwise.
    table: Vec<Option<MorId>>,
    /// `hom[a][b]` lists the morphisms a -> b in index order.
    hom: Vec<Vec<Vec<MorId>>>,
}

/// A violation of the category axioms, reported by [`FiniteCategory::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    MissingComposite { first: MorId, second: MorId },
    NotComposable { first: MorId, second: MorId },
    CompositeEndpoints { first: MorId, second: MorId, got: MorId },
    IdentityEndpoints { object: ObjId },
    IdentityLaw { identity: MorId, morphism: MorId },
    Associativity { first: MorId, second: MorId, third: MorId },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MissingComposite { first, second } => {
                write!(f, "no composite defined for pair ({first}, {second})")
            }
            Violation::NotComposable { first, second } => {
                write!(f, "composite defined for non-composable pair ({first}, {second})")
            }
            Violation::CompositeEndpoints { first, second, got } => {
                write!(f, "composite of ({first}, {second}) has wrong endpoints: {got}")
            }
            Violation::IdentityEndpoints { object } => {
                write!(f, "identity of object {object} is not an endomorphism")
            }
            Violation::IdentityLaw { identity, morphism } => {
                write!(f, "identity law fails at ({identity}, {morphism})")
            }
            Violation::Associativity { first, second, third } => {
                write!(f, "associativity fails at triple ({first}, {second}, {third})")
            }
        }
    }
}

impl FiniteCategory {
    /// Assembles a category from parts. `compositions` maps composable pairs
    /// `(f, g)` (with `dst f = src g`) to `g ∘ f`; pairs may appear at most
    /// once and no pair may be missing. The result is not validated beyond
    /// table shape; call [`FiniteCategory::validate`].
    pub fn new(
        object_names: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<MorId>,
        compositions: &[(MorId, MorId, MorId)],
    ) -> Self {
        let n = morphisms.len();
        let mut table = vec![None; n * n];
        for &(first, second, composite) in compositions {
            table[first.0 * n + second.0] = Some(composite);
        }
        let mut hom = vec![vec![Vec::new(); object_names.len()]; object_names.len()];
        for (i, m) in morphisms.iter().enumerate() {
            hom[m.src.0][m.dst.0].push(MorId(i));
        }
        FiniteCategory { object_names, morphisms, identities, table, hom }
    }

    pub fn object_count(&self) -> usize {
        self.object_names.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjId> {
        (0..self.object_names.len()).map(ObjId)
    }

    pub fn morphism_ids(&self) -> impl Iterator<Item = MorId> {
        (0..self.morphisms.len()).map(MorId)
    }

    pub fn object_name(&self, o: ObjId) -> &str {
        &self.object_names[o.0]
    }

    pub fn morphism(&self, m: MorId) -> &Morphism {
        &self.morphisms[m.0]
    }

    pub fn morphism_name(&self, m: MorId) -> &str {
        &self.morphisms[m.0].name
    }

    pub fn src(&self, m: MorId) -> ObjId {
        self.morphisms[m.0].src
    }

    pub fn dst(&self, m: MorId) -> ObjId {
        self.morphisms[m.0].dst
    }

    pub fn identity(&self, o: ObjId) -> MorId {
        self.identities[o.0]
    }

    pub fn is_identity(&self, m: MorId) -> bool {
        self.identities[self.src(m).0] == m
    }

    /// Composite `second ∘ first` when the pair is composable.
    pub fn then(&self, first: MorId, second: MorId) -> Option<MorId> {
        self.table[first.0 * self.morphisms.len() + second.0]
    }

    /// Morphisms from `a` to `b`, in index order.
    pub fn hom(&self, a: ObjId, b: ObjId) -> &[MorId] {
        &self.hom[a.0][b.0]
    }

    /// All composable pairs `(f, g)` with `dst f = src g`.
    pub fn composable_pairs(&self) -> impl Iterator<Item = (MorId, MorId)> + '_ {
        self.morphism_ids().flat_map(move |f| {
            self.morphism_ids()
                .filter(move |&g| self.dst(f) == self.src(g))
                .map(move |g| (f, g))
        })
    }

    /// `true` when `m` has a two-sided inverse.
    pub fn is_iso(&self, m: MorId) -> bool {
        let (a, b) = (self.src(m), self.dst(m));
        self.hom(b, a).iter().any(|&inv| {
            self.then(m, inv) == Some(self.identity(a)) && self.then(inv, m) == Some(self.identity(b))
        })
    }

    /// The class of all isomorphisms.
    pub fn iso_class(&self) -> MorphismClass {
        let mut class = MorphismClass::empty(self.morphism_count());
        for m in self.morphism_ids() {
            if self.is_iso(m) {
                class.insert(m);
            }
        }
        class
    }

    /// The class of all identities.
    pub fn identity_class(&self) -> MorphismClass {
        let mut class = MorphismClass::empty(self.morphism_count());
        for &id in &self.identities {
            class.insert(id);
        }
        class
    }

    /// Checks every category axiom, returning all violations found.
    pub fn validate(&self) -> Vec<Violation> {
        let mut violations = Vec::new();
        for f in self.morphism_ids() {
            for g in self.morphism_ids() {
                let composable = self.dst(f) == self.src(g);
                match self.then(f, g) {
                    None if composable => violations.push(Violation::MissingComposite { first: f, second: g }),
                    Some(_) if !composable => violations.push(Violation::NotComposable { first: f, second: g }),
                    Some(h) if composable => {
                        if self.src(h) != self.src(f) || self.dst(h) != self.dst(g) {
                            violations.push(Violation::CompositeEndpoints { first: f, second: g, got: h });
                        }
                    }
                    _ => {}
                }
            }
        }
        for o in self.objects() {
            let id = self.identity(o);
            if self.src(id) != o || self.dst(id) != o {
                violations.push(Violation::IdentityEndpoints { object: o });
                continue;
            }
            for m in self.morphism_ids() {
                if self.src(m) == o && self.then(id, m) != Some(m) {
                    violations.push(Violation::IdentityLaw { identity: id, morphism: m });
                }
                if self.dst(m) == o && self.then(m, id) != Some(m) {
                    violations.push(Violation::IdentityLaw { identity: id, morphism: m });
                }
            }
        }
        for f in self.morphism_ids() {
            for g in self.hom_from(self.dst(f)) {
                let fg = match self.then(f, g) {
                    Some(h) => h,
                    None => continue,
                };
                for h in self.hom_from(self.dst(g)) {
                    let gh = match self.then(g, h) {
                        Some(x) => x,
                        None => continue,
                    };
                    if self.then(fg, h) != self.then(f, gh) {
                        violations.push(Violation::Associativity { first: f, second: g, third: h });
                    }
                }
            }
        }
        violations
    }

    fn hom_from(&self, a: ObjId) -> impl Iterator<Item = MorId> + '_ {
        self.hom[a.0].iter().flatten().copied()
    }
}

/// A subset of a category's morphisms, stored as a bit vector indexed by
/// morphism id. The derived [`Ord`] compares bit patterns numerically, which
/// is the canonical output order everywhere in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MorphismClass {
    len: usize,
    bits: Vec<u64>,
}

impl MorphismClass {
    pub fn empty(len: usize) -> Self {
        MorphismClass { len, bits: vec![0; len.div_ceil(64)] }
    }

    pub fn full(len: usize) -> Self {
        let mut class = Self::empty(len);
        for i in 0..len {
            class.insert(MorId(i));
        }
        class
    }

    pub fn from_members(len: usize, members: impl IntoIterator<Item = MorId>) -> Self {
        let mut class = Self::empty(len);
        for m in members {
            class.insert(m);
        }
        class
    }

    pub fn universe_len(&self) -> usize {
        self.len
    }

    pub fn insert(&mut self, m: MorId) {
        debug_assert!(m.0 < self.len);
        self.bits[m.0 / 64] |= 1 << (m.0 % 64);
    }

    pub fn remove(&mut self, m: MorId) {
        self.bits[m.0 / 64] &= !(1 << (m.0 % 64));
    }

    pub fn contains(&self, m: MorId) -> bool {
        m.0 < self.len && self.bits[m.0 / 64] >> (m.0 % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&b| b == 0)
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = MorId> + '_ {
        (0..self.len).map(MorId).filter(move |&m| self.contains(m))
    }

    fn zip_with(&self, other: &Self, op: impl Fn(u64, u64) -> u64) -> Self {
        assert_eq!(self.len, other.len, "classes over different categories");
        MorphismClass {
            len: self.len,
            bits: self.bits.iter().zip(&other.bits).map(|(&a, &b)| op(a, b)).collect(),
        }
    }
}

impl Ord for MorphismClass {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.bits.iter().rev().cmp(other.bits.iter().rev())
    }
}

impl PartialOrd for MorphismClass {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// The poset `0 < 1 < ... < n` as a category: one morphism `i -> j` for each
/// `i <= j`, composition forced.
pub fn chain_poset(n: usize) -> FiniteCategory {
    let object_names: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
    let mut morphisms = Vec::new();
    let mut index = HashMap::new();
    for i in 0..=n {
        for j in i..=n {
            index.insert((i, j), MorId(morphisms.len()));
            let name = if i == j { format!("id_{i}") } else { format!("le_{i}_{j}") };
            morphisms.push(Morphism { name, src: ObjId(i), dst: ObjId(j) });
        }
    }
    let identities = (0..=n).map(|i| index[&(i, i)]).collect();
    let mut compositions = Vec::new();
    for (&(i, j), &f) in &index {
        for (&(j2, k), &g) in &index {
            if j == j2 {
                compositions.push((f, g, index[&(i, k)]));
            }
        }
    }
    FiniteCategory::new(object_names, morphisms, identities, &compositions)
}

/// The discrete category on `n` objects (identities only).
pub fn discrete(n: usize) -> FiniteCategory {
    let object_names = (0..n).map(|i| format!("x{i}")).collect();
    let morphisms = (0..n)
        .map(|i| Morphism { name: format!("id_x{i}"), src: ObjId(i), dst: ObjId(i) })
        .collect();
    let identities: Vec<MorId> = (0..n).map(MorId).collect();
    let compositions: Vec<_> = (0..n).map(|i| (MorId(i), MorId(i), MorId(i))).collect();
    FiniteCategory::new(object_names, morphisms, identities, &compositions)
}

/// Product category: pairs of objects, pairs of morphisms, componentwise
/// composition.
pub fn product(c1: &FiniteCategory, c2: &FiniteCategory) -> FiniteCategory {
    let object_names: Vec<String> = c1
        .objects()
        .flat_map(|a| c2.objects().map(move |b| (a, b)))
        .map(|(a, b)| format!("({},{})", c1.object_name(a), c2.object_name(b)))
        .collect();
    let obj = |a: ObjId, b: ObjId| ObjId(a.0 * c2.object_count() + b.0);
    let mor = |f: MorId, g: MorId| MorId(f.0 * c2.morphism_count() + g.0);
    let mut morphisms = Vec::new();
    for f in c1.morphism_ids() {
        for g in c2.morphism_ids() {
            morphisms.push(Morphism {
                name: format!("({},{})", c1.morphism_name(f), c2.morphism_name(g)),
                src: obj(c1.src(f), c2.src(g)),
                dst: obj(c1.dst(f), c2.dst(g)),
            });
        }
    }
    let identities = c1
        .objects()
        .flat_map(|a| c2.objects().map(move |b| (a, b)))
        .map(|(a, b)| mor(c1.identity(a), c2.identity(b)))
        .collect();
    let mut compositions = Vec::new();
    for (f1, g1) in c1.composable_pairs() {
        let h1 = c1.then(f1, g1).unwrap();
        for (f2, g2) in c2.composable_pairs() {
            let h2 = c2.then(f2, g2).unwrap();
            compositions.push((mor(f1, f2), mor(g1, g2), mor(h1, h2)));
        }
    }
    FiniteCategory::new(object_names, morphisms, identities, &compositions)
}

/// The opposite category: same objects and morphism ids, endpoints swapped,
/// composition reversed. Applying it twice gives back the original.
pub fn opposite(cat: &FiniteCategory) -> FiniteCategory {
    let morphisms = cat
        .morphism_ids()
        .map(|m| Morphism {
            name: cat.morphism_name(m).to_string(),
            src: cat.dst(m),
            dst: cat.src(m),
        })
        .collect();
    let compositions: Vec<_> = cat
        .composable_pairs()
        .map(|(f, g)| (g, f, cat.then(f, g).unwrap()))
        .collect();
    FiniteCategory::new(
        cat.objects().map(|o| cat.object_name(o).to_string()).collect(),
        morphisms,
        cat.objects().map(|o| cat.identity(o)).collect(),
        &compositions,
    )
}

/// A finite stand-in for the category of sets: one object per cardinality
/// `0..=max_card` and all functions between the canonical sets, each tagged
/// with its archetype.
pub struct SetSkeleton {
    pub category: FiniteCategory,
    /// Value vector of each morphism (parallel to morphism ids).
    pub functions: Vec<Vec<usize>>,
    /// Archetype tag of each morphism.
    pub archetypes: Vec<SetArchetype>,
}

pub fn set_skeleton(max_card: usize) -> SetSkeleton {
    let object_names: Vec<String> = (0..=max_card).map(|c| c.to_string()).collect();
    let mut morphisms = Vec::new();
    let mut functions: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    let mut index: HashMap<(usize, usize, Vec<usize>), MorId> = HashMap::new();
    let mut identities = vec![MorId(0); max_card + 1];
    for a in 0..=max_card {
        for b in 0..=max_card {
            for values in functions_between(a, b) {
                let id = MorId(morphisms.len());
                let is_identity = a == b && values.iter().copied().eq(0..a);
                let name = if is_identity {
                    identities[a] = id;
                    format!("id_{a}")
                } else {
                    format!("map_{a}_{b}_{}", rank_of(&values, b))
                };
                morphisms.push(Morphism { name, src: ObjId(a), dst: ObjId(b) });
                index.insert((a, b, values.clone()), id);
                functions.push((a, b, values));
            }
        }
    }
    let mut compositions = Vec::new();
    for (f, &(a, b, ref fv)) in functions.iter().enumerate() {
        for (g, &(b2, c, ref gv)) in functions.iter().enumerate() {
            if b == b2 {
                let composed: Vec<usize> = fv.iter().map(|&x| gv[x]).collect();
                compositions.push((MorId(f), MorId(g), index[&(a, c, composed)]));
            }
        }
    }
    let category = FiniteCategory::new(object_names, morphisms, identities, &compositions);
    let archetypes = functions
        .iter()
        .map(|&(a, b, ref values)| {
            let injective = is_injective(values);
            let surjective = is_surjective(values, b);
            SetArchetype::classify(injective, surjective, a == 0)
        })
        .collect();
    SetSkeleton { category, functions: functions.into_iter().map(|(_, _, v)| v).collect(), archetypes }
}

fn is_injective(values: &[usize]) -> bool {
    let mut seen = std::collections::HashSet::new();
    values.iter().all(|v| seen.insert(v))
}

fn is_surjective(values: &[usize], codomain: usize) -> bool {
    (0..codomain).all(|y| values.contains(&y))
}

/// All functions `{0..a} -> {0..b}` as value vectors, in lexicographic order.
/// For `a > 0, b = 0` there are none; for `a = 0` there is exactly one.
pub fn functions_between(a: usize, b: usize) -> Vec<Vec<usize>> {
    if a == 0 {
        return vec![Vec::new()];
    }
    if b == 0 {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(b.pow(a as u32));
    let mut current = vec![0; a];
    loop {
        out.push(current.clone());
        let mut pos = a;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            current[pos] += 1;
            if current[pos] < b {
                break;
            }
            current[pos] = 0;
        }
    }
}

fn rank_of(values: &[usize], base: usize) -> usize {
    values.iter().fold(0, |acc, &v| acc * base.max(1) + v)
}
