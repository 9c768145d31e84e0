//! Exhaustive small-instance ground truth.
//!
//! Everything here decides by enumeration: lifting verdicts quantify over
//! every commuting square and search every candidate filler; the derived
//! composition/factorization tables come from scanning all composable pairs
//! and all bounded factorizations; micro categories are classified by
//! checking the definitions over all subsets. The symbolic engine in
//! [`crate::archetypes`] is only trusted because these scans agree with it.

use crate::archetypes::{canonical_universe, ArchetypeFlags, ArchetypeSystem, SystemKind};
use crate::enumeration::{ModelStructure, Wfs};
use crate::fincat::{functions_between, FiniteCategory, MorphismClass};
use crate::lifting::{filler, filler_conditions, LiftingSquare, SetFunction};
use crate::tables::DerivedTables;
use rayon::prelude::*;
use std::collections::HashMap;
use std::fmt;

/// Families of concrete morphism instances the oracle can enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InstanceKind {
    SetMaps,
    PointedMaps,
    LinearMapsF2,
}

impl InstanceKind {
    pub fn system_kind(self) -> SystemKind {
        match self {
            InstanceKind::SetMaps => SystemKind::Set,
            InstanceKind::PointedMaps => SystemKind::Pointed,
            InstanceKind::LinearMapsF2 => SystemKind::Vect,
        }
    }

    /// Smallest meaningful bound: pointed sets and vector spaces have no
    /// empty objects to speak of, sets do.
    pub fn min_bound(self) -> u32 {
        match self {
            InstanceKind::SetMaps => 0,
            _ => 1,
        }
    }

    /// Largest bound instance enumeration accepts.
    pub fn instance_limit(self) -> u32 {
        match self {
            InstanceKind::SetMaps => 4,
            InstanceKind::PointedMaps => 5,
            InstanceKind::LinearMapsF2 => 3,
        }
    }

    /// Largest bound the quadratic lifting scans accept.
    pub fn lifting_scan_limit(self) -> u32 {
        match self {
            InstanceKind::SetMaps => 3,
            InstanceKind::PointedMaps => 4,
            InstanceKind::LinearMapsF2 => 2,
        }
    }

    /// Largest bound table derivation accepts.
    pub fn derive_limit(self) -> u32 {
        match self {
            InstanceKind::SetMaps => 4,
            InstanceKind::PointedMaps => 4,
            InstanceKind::LinearMapsF2 => 2,
        }
    }
}

impl fmt::Display for InstanceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InstanceKind::SetMaps => write!(f, "set maps"),
            InstanceKind::PointedMaps => write!(f, "pointed maps"),
            InstanceKind::LinearMapsF2 => write!(f, "F2-linear maps"),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum OracleError {
    #[error("bound {bound} too large for {kind} (limit {limit})")]
    BoundTooLarge { kind: InstanceKind, bound: u32, limit: u32 },
    #[error("bound {bound} too small for {kind}")]
    BoundTooSmall { kind: InstanceKind, bound: u32 },
    #[error("instances of different kinds cannot be compared")]
    KindMismatch,
    #[error("category too large for brute force: {morphisms} morphisms (cap {cap})")]
    CategoryTooLarge { morphisms: usize, cap: usize },
    #[error("non-uniform lifting detected: {0} archetype pair(s) with disagreeing instances")]
    NonUniformLifting(usize),
    #[error("archetype `{name}` has no instances within bound {bound}")]
    UnrealizedArchetype { name: String, bound: u32 },
}

/// A pointed map between canonical pointed sets `({0..n}, 0)`; the basepoint
/// is element 0 and is preserved.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointedMap {
    codomain: usize,
    values: Vec<usize>,
}

impl PointedMap {
    pub fn new(codomain: usize, values: Vec<usize>) -> Option<Self> {
        if values.is_empty() || codomain == 0 || values[0] != 0 || values.iter().any(|&v| v >= codomain)
        {
            return None;
        }
        Some(PointedMap { codomain, values })
    }

    pub fn identity(n: usize) -> Self {
        PointedMap { codomain: n, values: (0..n).collect() }
    }

    pub fn domain(&self) -> usize {
        self.values.len()
    }

    pub fn codomain(&self) -> usize {
        self.codomain
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// `g ∘ self`, when composable.
    pub fn then(&self, g: &PointedMap) -> Option<PointedMap> {
        if self.codomain != g.domain() {
            return None;
        }
        Some(PointedMap {
            codomain: g.codomain,
            values: self.values.iter().map(|&x| g.values[x]).collect(),
        })
    }

    pub fn is_surjective(&self) -> bool {
        (0..self.codomain).all(|y| self.values.contains(&y))
    }

    /// The fiber over the basepoint is just the basepoint.
    pub fn fiber_trivial(&self) -> bool {
        self.values.iter().skip(1).all(|&v| v != 0)
    }

    /// Injective away from the basepoint fiber.
    pub fn injective_off(&self) -> bool {
        let mut seen = vec![false; self.codomain];
        for &v in &self.values {
            if v != 0 {
                if seen[v] {
                    return false;
                }
                seen[v] = true;
            }
        }
        true
    }
}

impl fmt::Display for PointedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "{}->{}[{}]", self.values.len(), self.codomain, parts.join(","))
    }
}

/// A matrix over F2, stored column-wise as row bitmasks. Represents a linear
/// map from a `cols`-dimensional to a `rows`-dimensional space.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MatF2 {
    rows: usize,
    cols: usize,
    col_bits: Vec<u16>,
}

impl MatF2 {
    pub fn new(rows: usize, cols: usize, col_bits: Vec<u16>) -> Option<Self> {
        let mask = (1u32 << rows) as u16 - 1;
        if col_bits.len() != cols || col_bits.iter().any(|&c| c & !mask != 0) {
            return None;
        }
        Some(MatF2 { rows, cols, col_bits })
    }

    /// Decodes the matrix with the given index in the lexicographic
    /// enumeration of all `rows x cols` matrices.
    pub fn from_index(rows: usize, cols: usize, index: u64) -> Self {
        let mask = ((1u64 << rows) - 1) as u16;
        let col_bits = (0..cols).map(|j| ((index >> (j * rows)) as u16) & mask).collect();
        MatF2 { rows, cols, col_bits }
    }

    pub fn identity(n: usize) -> Self {
        MatF2 { rows: n, cols: n, col_bits: (0..n).map(|i| 1 << i).collect() }
    }

    pub fn domain_dim(&self) -> usize {
        self.cols
    }

    pub fn codomain_dim(&self) -> usize {
        self.rows
    }

    /// Image of a coordinate vector given as a bitmask.
    fn apply(&self, v: u16) -> u16 {
        let mut out = 0;
        for (j, &col) in self.col_bits.iter().enumerate() {
            if v >> j & 1 == 1 {
                out ^= col;
            }
        }
        out
    }

    /// `g ∘ self`, when composable.
    pub fn then(&self, g: &MatF2) -> Option<MatF2> {
        if self.rows != g.cols {
            return None;
        }
        Some(MatF2 {
            rows: g.rows,
            cols: self.cols,
            col_bits: self.col_bits.iter().map(|&c| g.apply(c)).collect(),
        })
    }

    pub fn rank(&self) -> usize {
        let mut pivots: Vec<u16> = Vec::new();
        for &col in &self.col_bits {
            let mut v = col;
            for &p in &pivots {
                let lead = 1 << (15 - p.leading_zeros());
                if v & lead != 0 {
                    v ^= p;
                }
            }
            if v != 0 {
                pivots.push(v);
            }
        }
        pivots.len()
    }

    pub fn is_mono(&self) -> bool {
        self.rank() == self.cols
    }

    pub fn is_epi(&self) -> bool {
        self.rank() == self.rows
    }
}

impl fmt::Display for MatF2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.col_bits.iter().map(|c| format!("{c:0width$b}", width = self.rows)).collect();
        write!(f, "{}x{}[{}]", self.rows, self.cols, parts.join(","))
    }
}

/// One concrete morphism instance, tagged by family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instance {
    Set(SetFunction),
    Pointed(PointedMap),
    Linear(MatF2),
}

impl Instance {
    pub fn kind(&self) -> InstanceKind {
        match self {
            Instance::Set(_) => InstanceKind::SetMaps,
            Instance::Pointed(_) => InstanceKind::PointedMaps,
            Instance::Linear(_) => InstanceKind::LinearMapsF2,
        }
    }

    pub fn flags(&self) -> ArchetypeFlags {
        match self {
            Instance::Set(f) => ArchetypeFlags::Set {
                injective: f.is_injective(),
                surjective: f.is_surjective(),
                domain_empty: f.domain_empty(),
            },
            Instance::Pointed(f) => ArchetypeFlags::Pointed {
                surjective: f.is_surjective(),
                fiber_trivial: f.fiber_trivial(),
                injective_off: f.injective_off(),
            },
            Instance::Linear(f) => ArchetypeFlags::Vect { mono: f.is_mono(), epi: f.is_epi() },
        }
    }

    /// Name of the instance's archetype in the canonical universe.
    pub fn archetype_name(&self) -> String {
        let flags = self.flags();
        canonical_universe(self.kind().system_kind())
            .into_iter()
            .find(|a| a.flags == flags)
            .map(|a| a.name)
            .expect("every realizable flag combination is in the canonical universe")
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Instance::Set(m) => write!(f, "{m}"),
            Instance::Pointed(m) => write!(f, "{m}"),
            Instance::Linear(m) => write!(f, "{m}"),
        }
    }
}

// ---------------------------------------------------------------------------
// Instance families

trait MapFamily {
    type Map: Clone + PartialEq + Send + Sync;

    const KIND: InstanceKind;

    fn objects(bound: u32) -> Vec<usize>;
    fn hom(a: usize, b: usize) -> Vec<Self::Map>;
    fn src(f: &Self::Map) -> usize;
    fn dst(f: &Self::Map) -> usize;
    /// `second ∘ first`; the pair must be composable.
    fn compose(first: &Self::Map, second: &Self::Map) -> Self::Map;
    fn flags(f: &Self::Map) -> ArchetypeFlags;
    fn wrap(f: Self::Map) -> Instance;
    /// Whether some `r` with `r ∘ l = f` has the given flags.
    fn completion_exists(l: &Self::Map, f: &Self::Map, want: &ArchetypeFlags) -> bool;
}

struct SetFamily;
struct PointedFamily;
struct LinearFamily;

impl MapFamily for SetFamily {
    type Map = SetFunction;

    const KIND: InstanceKind = InstanceKind::SetMaps;

    fn objects(bound: u32) -> Vec<usize> {
        (0..=bound as usize).collect()
    }

    fn hom(a: usize, b: usize) -> Vec<SetFunction> {
        functions_between(a, b)
            .into_iter()
            .map(|values| SetFunction::new(b, values).expect("enumerated in range"))
            .collect()
    }

    fn src(f: &SetFunction) -> usize {
        f.domain()
    }

    fn dst(f: &SetFunction) -> usize {
        f.codomain()
    }

    fn compose(first: &SetFunction, second: &SetFunction) -> SetFunction {
        first.then(second).expect("composable")
    }

    fn flags(f: &SetFunction) -> ArchetypeFlags {
        Instance::Set(f.clone()).flags()
    }

    fn wrap(f: SetFunction) -> Instance {
        Instance::Set(f)
    }

    fn completion_exists(l: &SetFunction, f: &SetFunction, want: &ArchetypeFlags) -> bool {
        completion_exists_tabular(
            l.values(),
            Self::dst(l),
            f.values(),
            Self::dst(f),
            0,
            |values, codomain| {
                Self::flags(&SetFunction::new(codomain, values.to_vec()).expect("in range")) == *want
            },
        )
    }
}

impl MapFamily for PointedFamily {
    type Map = PointedMap;

    const KIND: InstanceKind = InstanceKind::PointedMaps;

    fn objects(bound: u32) -> Vec<usize> {
        (1..=bound as usize).collect()
    }

    fn hom(a: usize, b: usize) -> Vec<PointedMap> {
        // Basepoint fixed; remaining a-1 slots range over the codomain.
        functions_between(a - 1, b)
            .into_iter()
            .map(|rest| {
                let mut values = Vec::with_capacity(a);
                values.push(0);
                values.extend(rest);
                PointedMap::new(b, values).expect("enumerated in range")
            })
            .collect()
    }

    fn src(f: &PointedMap) -> usize {
        f.domain()
    }

    fn dst(f: &PointedMap) -> usize {
        f.codomain()
    }

    fn compose(first: &PointedMap, second: &PointedMap) -> PointedMap {
        first.then(second).expect("composable")
    }

    fn flags(f: &PointedMap) -> ArchetypeFlags {
        Instance::Pointed(f.clone()).flags()
    }

    fn wrap(f: PointedMap) -> Instance {
        Instance::Pointed(f)
    }

    fn completion_exists(l: &PointedMap, f: &PointedMap, want: &ArchetypeFlags) -> bool {
        // Position 0 is in the image of l, so completions stay pointed.
        completion_exists_tabular(l.values(), Self::dst(l), f.values(), Self::dst(f), 0, |values, codomain| {
            Self::flags(&PointedMap::new(codomain, values.to_vec()).expect("in range")) == *want
        })
    }
}

impl MapFamily for LinearFamily {
    type Map = MatF2;

    const KIND: InstanceKind = InstanceKind::LinearMapsF2;

    fn objects(bound: u32) -> Vec<usize> {
        (0..=bound as usize).collect()
    }

    fn hom(n: usize, m: usize) -> Vec<MatF2> {
        (0..1u64 << (m * n)).map(|idx| MatF2::from_index(m, n, idx)).collect()
    }

    fn src(f: &MatF2) -> usize {
        f.domain_dim()
    }

    fn dst(f: &MatF2) -> usize {
        f.codomain_dim()
    }

    fn compose(first: &MatF2, second: &MatF2) -> MatF2 {
        first.then(second).expect("composable")
    }

    fn flags(f: &MatF2) -> ArchetypeFlags {
        Instance::Linear(f.clone()).flags()
    }

    fn wrap(f: MatF2) -> Instance {
        Instance::Linear(f)
    }

    fn completion_exists(l: &MatF2, f: &MatF2, want: &ArchetypeFlags) -> bool {
        // Small dimensions: enumerate every candidate r outright.
        for r in Self::hom(Self::dst(l), Self::dst(f)) {
            if Self::flags(&r) == *want && l.then(&r).as_ref() == Some(f) {
                return true;
            }
        }
        false
    }
}

/// Shared completion search for the pointwise families: `r` is forced on the
/// image of `l` and free elsewhere. `fixed_zero` positions below this index
/// are pinned to themselves by the family (unused for plain sets).
fn completion_exists_tabular(
    l_values: &[usize],
    middle: usize,
    f_values: &[usize],
    codomain: usize,
    _fixed_zero: usize,
    accepts: impl Fn(&[usize], usize) -> bool,
) -> bool {
    let mut partial: Vec<Option<usize>> = vec![None; middle];
    for (x, &pos) in l_values.iter().enumerate() {
        match partial[pos] {
            Some(v) if v != f_values[x] => return false,
            _ => partial[pos] = Some(f_values[x]),
        }
    }
    let free: Vec<usize> = (0..middle).filter(|&p| partial[p].is_none()).collect();
    if codomain == 0 && !free.is_empty() {
        return false;
    }
    let mut values: Vec<usize> = partial.iter().map(|v| v.unwrap_or(0)).collect();
    let mut counter = vec![0usize; free.len()];
    loop {
        for (slot, &pos) in counter.iter().zip(&free) {
            values[pos] = *slot;
        }
        if accepts(&values, codomain) {
            return true;
        }
        let mut i = 0;
        loop {
            if i == counter.len() {
                return false;
            }
            counter[i] += 1;
            if counter[i] < codomain {
                break;
            }
            counter[i] = 0;
            i += 1;
        }
    }
}

fn hom_cache<F: MapFamily>(objects: &[usize]) -> HashMap<(usize, usize), Vec<F::Map>> {
    let mut cache = HashMap::new();
    for &a in objects {
        for &b in objects {
            cache.insert((a, b), F::hom(a, b));
        }
    }
    cache
}

fn all_maps<F: MapFamily>(bound: u32) -> Vec<F::Map> {
    let objects = F::objects(bound);
    let mut out = Vec::new();
    for &a in &objects {
        for &b in &objects {
            out.extend(F::hom(a, b));
        }
    }
    out
}

/// Every morphism between canonical objects up to the bound, tagged with its
/// archetype flags via [`Instance::flags`].
pub fn instances(kind: InstanceKind, bound: u32) -> Result<Vec<Instance>, OracleError> {
    check_bound(kind, bound, kind.instance_limit())?;
    Ok(match kind {
        InstanceKind::SetMaps => all_maps::<SetFamily>(bound).into_iter().map(Instance::Set).collect(),
        InstanceKind::PointedMaps => {
            all_maps::<PointedFamily>(bound).into_iter().map(Instance::Pointed).collect()
        }
        InstanceKind::LinearMapsF2 => {
            all_maps::<LinearFamily>(bound).into_iter().map(Instance::Linear).collect()
        }
    })
}

fn check_bound(kind: InstanceKind, bound: u32, limit: u32) -> Result<(), OracleError> {
    if bound < kind.min_bound() {
        return Err(OracleError::BoundTooSmall { kind, bound });
    }
    if bound > limit {
        return Err(OracleError::BoundTooLarge { kind, bound, limit });
    }
    Ok(())
}

/// Exact lifting verdict for a concrete pair: every commuting square is
/// enumerated and every candidate filler in the full hom-set is tried.
fn lifts_exhaustive<F: MapFamily>(
    left: &F::Map,
    right: &F::Map,
    homs: &HashMap<(usize, usize), Vec<F::Map>>,
) -> bool {
    let tops = &homs[&(F::src(left), F::src(right))];
    let bottoms = &homs[&(F::dst(left), F::dst(right))];
    let diagonals = &homs[&(F::dst(left), F::src(right))];
    for top in tops {
        let around = F::compose(top, right);
        for bottom in bottoms {
            if around != F::compose(left, bottom) {
                continue;
            }
            let solvable = diagonals.iter().any(|lift| {
                F::compose(left, lift) == *top && F::compose(lift, right) == *bottom
            });
            if !solvable {
                return false;
            }
        }
    }
    true
}

/// Exact lifting verdict for two instances of the same kind.
pub fn lifts_bruteforce(left: &Instance, right: &Instance) -> Result<bool, OracleError> {
    match (left, right) {
        (Instance::Set(l), Instance::Set(r)) => {
            let bound = [l.domain(), l.codomain(), r.domain(), r.codomain()].into_iter().max().unwrap();
            let homs = hom_cache::<SetFamily>(&SetFamily::objects(bound as u32));
            Ok(lifts_exhaustive::<SetFamily>(l, r, &homs))
        }
        (Instance::Pointed(l), Instance::Pointed(r)) => {
            let bound = [l.domain(), l.codomain(), r.domain(), r.codomain()].into_iter().max().unwrap();
            let homs = hom_cache::<PointedFamily>(&PointedFamily::objects(bound as u32));
            Ok(lifts_exhaustive::<PointedFamily>(l, r, &homs))
        }
        (Instance::Linear(l), Instance::Linear(r)) => {
            let bound = [l.domain_dim(), l.codomain_dim(), r.domain_dim(), r.codomain_dim()]
                .into_iter()
                .max()
                .unwrap();
            let homs = hom_cache::<LinearFamily>(&LinearFamily::objects(bound as u32));
            Ok(lifts_exhaustive::<LinearFamily>(l, r, &homs))
        }
        _ => Err(OracleError::KindMismatch),
    }
}

/// Result of scanning all instance pairs, bucketed into classes by a caller
/// supplied classifier.
#[derive(Debug, Clone)]
pub struct LiftScan {
    pub pairs_scanned: usize,
    /// `verdicts[l][r]` is the common verdict of all pairs in the bucket,
    /// `None` when the bucket is empty or (see `conflicts`) mixed.
    pub verdicts: Vec<Vec<Option<bool>>>,
    /// A sample pair per bucket.
    pub witnesses: Vec<Vec<Option<(String, String)>>>,
    pub conflicts: Vec<LiftConflict>,
}

/// A class pair whose instances disagree on lifting.
#[derive(Debug, Clone)]
pub struct LiftConflict {
    pub left_class: usize,
    pub right_class: usize,
    pub lifting_pair: (String, String),
    pub non_lifting_pair: (String, String),
}

fn scan_lifting_generic<F: MapFamily>(
    bound: u32,
    class_count: usize,
    classify: &(dyn Fn(&Instance) -> usize + Sync),
) -> LiftScan {
    let maps = all_maps::<F>(bound);
    let homs = hom_cache::<F>(&F::objects(bound));
    let classes: Vec<usize> = maps.iter().map(|m| classify(&F::wrap(m.clone()))).collect();
    let n = maps.len();
    let verdicts: Vec<bool> = (0..n * n)
        .into_par_iter()
        .map(|idx| lifts_exhaustive::<F>(&maps[idx / n], &maps[idx % n], &homs))
        .collect();
    let mut cell_verdicts = vec![vec![None; class_count]; class_count];
    let mut witnesses = vec![vec![None; class_count]; class_count];
    let mut conflict_cells: Vec<(usize, usize, (String, String))> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let (ci, cj) = (classes[i], classes[j]);
            let verdict = verdicts[i * n + j];
            let describe = || (F::wrap(maps[i].clone()).to_string(), F::wrap(maps[j].clone()).to_string());
            match cell_verdicts[ci][cj] {
                None => {
                    cell_verdicts[ci][cj] = Some(verdict);
                    witnesses[ci][cj] = Some(describe());
                }
                Some(prev) if prev != verdict => {
                    if !conflict_cells.iter().any(|(a, b, _)| (*a, *b) == (ci, cj)) {
                        conflict_cells.push((ci, cj, describe()));
                    }
                }
                Some(_) => {}
            }
        }
    }
    let conflicts = conflict_cells
        .into_iter()
        .map(|(ci, cj, other)| {
            let first = witnesses[ci][cj].clone().expect("bucket has a witness");
            let first_verdict = cell_verdicts[ci][cj].expect("bucket has a verdict");
            let (lifting_pair, non_lifting_pair) =
                if first_verdict { (first, other) } else { (other, first) };
            cell_verdicts[ci][cj] = None;
            LiftConflict { left_class: ci, right_class: cj, lifting_pair, non_lifting_pair }
        })
        .collect();
    LiftScan { pairs_scanned: n * n, verdicts: cell_verdicts, witnesses, conflicts }
}

/// Scans every ordered pair of instances within the bound, bucketing
/// verdicts by an arbitrary classifier. Exposed so coarse (deliberately
/// wrong) classifications can be shown to produce conflicts.
pub fn scan_lifting_classes(
    kind: InstanceKind,
    bound: u32,
    class_count: usize,
    classify: &(dyn Fn(&Instance) -> usize + Sync),
) -> Result<LiftScan, OracleError> {
    check_bound(kind, bound, kind.lifting_scan_limit())?;
    Ok(match kind {
        InstanceKind::SetMaps => scan_lifting_generic::<SetFamily>(bound, class_count, classify),
        InstanceKind::PointedMaps => scan_lifting_generic::<PointedFamily>(bound, class_count, classify),
        InstanceKind::LinearMapsF2 => scan_lifting_generic::<LinearFamily>(bound, class_count, classify),
    })
}

/// One archetype pair where the system's lifting table disagrees with the
/// scan.
#[derive(Debug, Clone)]
pub struct PredicateMismatch {
    pub left: String,
    pub right: String,
    pub predicted: bool,
    pub observed: bool,
    pub witness: (String, String),
}

/// Report of checking a system's lifting table against brute force.
#[derive(Debug, Clone)]
pub struct FidelityReport {
    pub pairs_scanned: usize,
    pub mismatches: Vec<PredicateMismatch>,
    pub non_uniform: Vec<LiftConflict>,
}

impl FidelityReport {
    pub fn clean(&self) -> bool {
        self.mismatches.is_empty() && self.non_uniform.is_empty()
    }
}

/// Checks the archetype-level lifting table of `sys` against exhaustive
/// lifting over all instance pairs within `bound`.
pub fn verify_lifting_predicate(
    sys: &ArchetypeSystem,
    bound: u32,
) -> Result<FidelityReport, OracleError> {
    let kind = instance_kind_for(sys.kind());
    let classify = |inst: &Instance| {
        sys.index_of_flags(&inst.flags()).expect("canonical universe covers all instances")
    };
    let scan = scan_lifting_classes(kind, bound, sys.size(), &classify)?;
    let mut mismatches = Vec::new();
    for l in 0..sys.size() {
        for r in 0..sys.size() {
            if let Some(observed) = scan.verdicts[l][r] {
                let predicted = sys.lifts(l, r);
                if predicted != observed {
                    mismatches.push(PredicateMismatch {
                        left: sys.archetype(l).name.clone(),
                        right: sys.archetype(r).name.clone(),
                        predicted,
                        observed,
                        witness: scan.witnesses[l][r].clone().expect("non-empty bucket"),
                    });
                }
            }
        }
    }
    Ok(FidelityReport {
        pairs_scanned: scan.pairs_scanned,
        mismatches,
        non_uniform: scan.conflicts,
    })
}

fn instance_kind_for(kind: SystemKind) -> InstanceKind {
    match kind {
        SystemKind::Set => InstanceKind::SetMaps,
        SystemKind::Pointed => InstanceKind::PointedMaps,
        SystemKind::Vect => InstanceKind::LinearMapsF2,
    }
}

/// Derives the lifting matrix over the canonical universe by scanning, or
/// fails if some archetype pair is non-uniform or unrealized.
pub fn derive_lifts_table(kind: InstanceKind, bound: u32) -> Result<Vec<u16>, OracleError> {
    let universe = canonical_universe(kind.system_kind());
    let classify = |inst: &Instance| {
        let flags = inst.flags();
        universe.iter().position(|a| a.flags == flags).expect("canonical universe is total")
    };
    let scan = scan_lifting_classes(kind, bound, universe.len(), &classify)?;
    if !scan.conflicts.is_empty() {
        return Err(OracleError::NonUniformLifting(scan.conflicts.len()));
    }
    let mut rows = vec![0u16; universe.len()];
    for (l, row) in scan.verdicts.iter().enumerate() {
        for (r, verdict) in row.iter().enumerate() {
            match verdict {
                Some(true) => rows[l] |= 1 << r,
                Some(false) => {}
                None => {
                    let name = universe[if row.iter().all(Option::is_none) { l } else { r }].name.clone();
                    return Err(OracleError::UnrealizedArchetype { name, bound });
                }
            }
        }
    }
    Ok(rows)
}

/// Derives the composition relation: for each archetype pair, the archetypes
/// realized by some composable instance pair within the bound.
pub fn derive_comp_table(kind: InstanceKind, bound: u32) -> Result<Vec<Vec<u16>>, OracleError> {
    check_bound(kind, bound, kind.derive_limit())?;
    Ok(match kind {
        InstanceKind::SetMaps => derive_comp_generic::<SetFamily>(bound),
        InstanceKind::PointedMaps => derive_comp_generic::<PointedFamily>(bound),
        InstanceKind::LinearMapsF2 => derive_comp_generic::<LinearFamily>(bound),
    })
}

fn derive_comp_generic<F: MapFamily>(bound: u32) -> Vec<Vec<u16>> {
    let universe = canonical_universe(F::KIND.system_kind());
    let class_of = |flags: &ArchetypeFlags| universe.iter().position(|a| a.flags == *flags).unwrap();
    let maps = all_maps::<F>(bound);
    let mut comp = vec![vec![0u16; universe.len()]; universe.len()];
    for f in &maps {
        for g in &maps {
            if F::dst(f) == F::src(g) {
                let composite = F::compose(f, g);
                comp[class_of(&F::flags(f))][class_of(&F::flags(g))] |=
                    1 << class_of(&F::flags(&composite));
            }
        }
    }
    comp
}

/// Derives the universal factorization relation: for each archetype, the
/// pairs `(a, b)` such that every instance within the bound factors as an
/// `a`-morphism into a middle object of size at most `2 * bound` followed by
/// a `b`-morphism.
pub fn derive_fact_table(kind: InstanceKind, bound: u32) -> Result<Vec<Vec<(usize, usize)>>, OracleError> {
    check_bound(kind, bound, kind.derive_limit())?;
    Ok(match kind {
        InstanceKind::SetMaps => derive_fact_generic::<SetFamily>(bound),
        InstanceKind::PointedMaps => derive_fact_generic::<PointedFamily>(bound),
        InstanceKind::LinearMapsF2 => derive_fact_generic::<LinearFamily>(bound),
    })
}

fn derive_fact_generic<F: MapFamily>(bound: u32) -> Vec<Vec<(usize, usize)>> {
    let universe = canonical_universe(F::KIND.system_kind());
    let n = universe.len();
    let class_of = |flags: &ArchetypeFlags| universe.iter().position(|a| a.flags == *flags).unwrap();
    let middles = F::objects(2 * bound);
    let homs = hom_cache::<F>(&middles);
    let maps = all_maps::<F>(bound);
    let mut fact: Vec<Vec<(usize, usize)>> = (0..n)
        .map(|_| (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect())
        .collect();
    for f in &maps {
        let target = class_of(&F::flags(f));
        let candidates = std::mem::take(&mut fact[target]);
        fact[target] = candidates
            .into_par_iter()
            .filter(|&(a, b)| {
                middles.iter().any(|&m| {
                    homs[&(F::src(f), m)]
                        .iter()
                        .filter(|l| F::flags(l) == universe[a].flags)
                        .any(|l| F::completion_exists(l, f, &universe[b].flags))
                })
            })
            .collect();
    }
    fact
}

/// Everything `derive-tables` produces for one system: relations at the
/// requested bound, plus a stability probe one bound lower.
pub fn derive_tables(kind: InstanceKind, bound: u32) -> Result<DerivedTables, OracleError> {
    check_bound(kind, bound, kind.derive_limit())?;
    let lifts_bound = bound.min(kind.lifting_scan_limit());
    let lifts = derive_lifts_table(kind, lifts_bound)?;
    let comp = derive_comp_table(kind, bound)?;
    let fact = derive_fact_table(kind, bound)?;
    let stable_from = if bound > kind.min_bound() + 1 {
        let prev = bound - 1;
        let prev_lifts = derive_lifts_table(kind, prev.min(kind.lifting_scan_limit()));
        let prev_comp = derive_comp_table(kind, prev);
        let prev_fact = derive_fact_table(kind, prev);
        match (prev_lifts, prev_comp, prev_fact) {
            (Ok(l), Ok(c), Ok(f)) if l == lifts && c == comp && f == fact => Some(prev),
            _ => None,
        }
    } else {
        None
    };
    Ok(DerivedTables::from_relations(
        kind.system_kind(),
        bound,
        2 * bound,
        stable_from,
        canonical_universe(kind.system_kind()),
        &lifts,
        &comp,
        &fact,
    ))
}

/// Report of checking the filler characterization against filler search on
/// every commuting square of set functions within the bound.
#[derive(Debug, Clone)]
pub struct FillerReport {
    pub squares_scanned: usize,
    pub mismatches: Vec<String>,
}

/// For every commuting square of functions between sets of size at most
/// `bound`: the two characterization conditions hold together exactly when a
/// brute-force search over all candidate diagonals finds a filler, and any
/// filler built from the characterization actually fills.
pub fn verify_filler_characterization(bound: u32) -> Result<FillerReport, OracleError> {
    check_bound(InstanceKind::SetMaps, bound, InstanceKind::SetMaps.instance_limit())?;
    let homs = hom_cache::<SetFamily>(&SetFamily::objects(bound));
    let sizes: Vec<usize> = (0..=bound as usize).collect();
    let mut squares_scanned = 0usize;
    let mut mismatches = Vec::new();
    for &a in &sizes {
        for &b in &sizes {
            for &x in &sizes {
                for &y in &sizes {
                    for left in &homs[&(a, b)] {
                        for right in &homs[&(x, y)] {
                            for top in &homs[&(a, x)] {
                                let around = top.then(right).expect("composable");
                                for bottom in &homs[&(b, y)] {
                                    if around != left.then(bottom).expect("composable") {
                                        continue;
                                    }
                                    squares_scanned += 1;
                                    let square = LiftingSquare::new(
                                        left.clone(),
                                        right.clone(),
                                        top.clone(),
                                        bottom.clone(),
                                    )
                                    .expect("commutes");
                                    let (c1, c2) = filler_conditions(&square);
                                    let found = homs[&(b, x)].iter().any(|lift| {
                                        left.then(lift).as_ref() == Some(top)
                                            && lift.then(right).as_ref() == Some(bottom)
                                    });
                                    if (c1 && c2) != found {
                                        mismatches.push(format!(
                                            "square left={left} right={right} top={top} bottom={bottom}: conditions=({c1},{c2}) search={found}"
                                        ));
                                    }
                                    if let Some(lift) = filler(&square) {
                                        let fills = left.then(&lift).as_ref() == Some(top)
                                            && lift.then(right).as_ref() == Some(bottom);
                                        if !fills {
                                            mismatches.push(format!(
                                                "constructed filler does not fill: left={left} right={right} top={top} bottom={bottom} lift={lift}"
                                            ));
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(FillerReport { squares_scanned, mismatches })
}

// ---------------------------------------------------------------------------
// Definition-level brute force for micro categories

/// Classifies a small category by definition-level brute force: right
/// classes range over all subsets of morphisms, weak equivalence candidates
/// over all subsets, and every axiom is checked directly. Lifting verdicts
/// are recomputed here rather than taken from [`crate::lifting`].
pub fn bruteforce_wfs_and_ms(
    cat: &FiniteCategory,
    cap: usize,
) -> Result<(Vec<Wfs>, Vec<ModelStructure>), OracleError> {
    let n = cat.morphism_count();
    if n > cap || n > 24 {
        return Err(OracleError::CategoryTooLarge { morphisms: n, cap: cap.min(24) });
    }
    // Pairwise lifting by direct search over squares and diagonals.
    let mut lift_rows = vec![0u32; n];
    for l in cat.morphism_ids() {
        for r in cat.morphism_ids() {
            let tops = cat.hom(cat.src(l), cat.src(r));
            let bottoms = cat.hom(cat.dst(l), cat.dst(r));
            let diagonals = cat.hom(cat.dst(l), cat.src(r));
            let ok = tops.iter().all(|&top| {
                bottoms
                    .iter()
                    .filter(|&&bottom| cat.then(top, r) == cat.then(l, bottom))
                    .all(|&bottom| {
                        diagonals.iter().any(|&d| {
                            cat.then(l, d) == Some(top) && cat.then(d, r) == Some(bottom)
                        })
                    })
            });
            if ok {
                lift_rows[l.0] |= 1 << r.0;
            }
        }
    }
    let full = (1u32 << n) - 1;
    let right_orth = |mask: u32| -> u32 {
        (0..n).filter(|&l| mask >> l & 1 == 1).fold(full, |acc, l| acc & lift_rows[l])
    };
    let left_orth = |mask: u32| -> u32 {
        (0..n).filter(|&l| mask & !lift_rows[l] == 0).fold(0, |acc, l| acc | 1 << l)
    };
    // All factorizations of each morphism.
    let mut factorization: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (f, g) in cat.composable_pairs() {
        let h = cat.then(f, g).expect("composable");
        factorization[h.0].push((f.0, g.0));
    }
    let factors_ok = |l_mask: u32, r_mask: u32| {
        factorization
            .iter()
            .all(|pairs| pairs.iter().any(|&(l, r)| l_mask >> l & 1 == 1 && r_mask >> r & 1 == 1))
    };

    let mut wfs_masks = Vec::new();
    for right in 0..=full {
        let left = left_orth(right);
        if right_orth(left) == right && factors_ok(left, right) {
            wfs_masks.push((left, right));
        }
    }
    wfs_masks.sort();

    let composable: Vec<(usize, usize, usize)> = cat
        .composable_pairs()
        .map(|(f, g)| (f.0, g.0, cat.then(f, g).expect("composable").0))
        .collect();
    let two_of_three_ok = |w: u32| {
        composable.iter().all(|&(f, g, h)| {
            let members = (w >> f & 1) + (w >> g & 1) + (w >> h & 1);
            members != 2
        })
    };

    let mut ms_masks = Vec::new();
    for w in 0..=full {
        if !two_of_three_ok(w) {
            continue;
        }
        for &(la, ra) in &wfs_masks {
            for &(lb, rb) in &wfs_masks {
                if lb & w == la && ra & w == rb {
                    ms_masks.push((lb, ra, w));
                }
            }
        }
    }
    ms_masks.sort();
    ms_masks.dedup();

    let to_class = |mask: u32| {
        MorphismClass::from_members(n, (0..n).filter(|&i| mask >> i & 1 == 1).map(crate::fincat::MorId))
    };
    let wfs = wfs_masks
        .into_iter()
        .map(|(l, r)| Wfs { left: to_class(l), right: to_class(r) })
        .collect();
    let ms = ms_masks
        .into_iter()
        .map(|(c, f, w)| ModelStructure {
            cofibrations: to_class(c),
            fibrations: to_class(f),
            weak_equivalences: to_class(w),
        })
        .collect();
    Ok((wfs, ms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::chain_poset;

    #[test]
    fn instance_counts_at_small_bounds() {
        // Sets of size <= 1: the empty map, {} -> {0}, and the identity
        // of {0}; there is no map {0} -> {}.
        assert_eq!(instances(InstanceKind::SetMaps, 1).unwrap().len(), 3);
        assert_eq!(instances(InstanceKind::PointedMaps, 1).unwrap().len(), 1);
        // F2 matrices of shapes 0x0, 0x1, 1x0 and 1x1.
        assert_eq!(instances(InstanceKind::LinearMapsF2, 1).unwrap().len(), 5);
    }

    #[test]
    fn instance_counts_grow_as_expected() {
        assert_eq!(instances(InstanceKind::SetMaps, 2).unwrap().len(), 11);
        assert_eq!(instances(InstanceKind::SetMaps, 3).unwrap().len(), 60);
        // Pointed maps (A,0) -> (B,0): b^(a-1) each.
        assert_eq!(instances(InstanceKind::PointedMaps, 2).unwrap().len(), 1 + 1 + 2 + 1);
    }

    #[test]
    fn bounds_are_enforced() {
        assert!(matches!(
            instances(InstanceKind::SetMaps, 9),
            Err(OracleError::BoundTooLarge { .. })
        ));
        assert!(matches!(
            instances(InstanceKind::PointedMaps, 0),
            Err(OracleError::BoundTooSmall { .. })
        ));
    }

    #[test]
    fn kind_mismatch_is_an_error() {
        let set = instances(InstanceKind::SetMaps, 1).unwrap();
        let pointed = instances(InstanceKind::PointedMaps, 1).unwrap();
        assert!(matches!(lifts_bruteforce(&set[0], &pointed[0]), Err(OracleError::KindMismatch)));
    }

    #[test]
    fn identity_lifts_against_itself() {
        let id = Instance::Set(SetFunction::identity(1));
        assert_eq!(lifts_bruteforce(&id, &id).unwrap(), true);
    }

    #[test]
    fn collapse_does_not_lift_against_itself() {
        let collapse = Instance::Set(SetFunction::new(1, vec![0, 0]).unwrap());
        assert_eq!(lifts_bruteforce(&collapse, &collapse).unwrap(), false);
    }

    #[test]
    fn mono_lifts_against_empty_inclusion() {
        // Left: {0} -> {0,1} picking 1 of 2 points; right: {} -> {0}. The
        // left domain is non-empty while the right one is empty.
        let left = Instance::Set(SetFunction::new(2, vec![0]).unwrap());
        let right = Instance::Set(SetFunction::new(1, vec![]).unwrap());
        assert_eq!(lifts_bruteforce(&left, &right).unwrap(), true);
    }

    #[test]
    fn pointed_map_flags() {
        let m = PointedMap::new(2, vec![0, 1, 1]).unwrap();
        assert!(m.is_surjective());
        assert!(m.fiber_trivial());
        assert!(!m.injective_off());
    }

    #[test]
    fn matf2_rank_and_flags() {
        assert!(MatF2::identity(2).is_mono());
        assert!(MatF2::identity(2).is_epi());
        let zero = MatF2::new(1, 1, vec![0]).unwrap();
        assert!(!zero.is_mono());
        assert!(!zero.is_epi());
        let inclusion = MatF2::new(2, 1, vec![0b01]).unwrap();
        assert!(inclusion.is_mono());
        assert!(!inclusion.is_epi());
    }

    #[test]
    fn linear_lifting_monos_against_epis_both_ways() {
        let mono = Instance::Linear(MatF2::new(2, 1, vec![0b01]).unwrap());
        let epi = Instance::Linear(MatF2::new(1, 2, vec![1, 0]).unwrap());
        assert_eq!(lifts_bruteforce(&mono, &epi).unwrap(), true);
        assert_eq!(lifts_bruteforce(&epi, &mono).unwrap(), true);
        assert_eq!(lifts_bruteforce(&mono, &mono).unwrap(), false);
        assert_eq!(lifts_bruteforce(&epi, &epi).unwrap(), false);
    }

    #[test]
    fn comp_table_spot_checks() {
        let universe = canonical_universe(SystemKind::Set);
        let idx = |name: &str| universe.iter().position(|a| a.name == name).unwrap();
        let comp = derive_comp_table(InstanceKind::SetMaps, 3).unwrap();
        assert_eq!(comp[idx("iso")][idx("iso")], 1 << idx("iso"));
        // Collapse then include: always neither injective nor surjective.
        assert_eq!(comp[idx("epi")][idx("mono")], 1 << idx("gen"));
        // Include then collapse realizes all four non-empty archetypes.
        let expected = (1 << idx("iso")) | (1 << idx("mono")) | (1 << idx("epi")) | (1 << idx("gen"));
        assert_eq!(comp[idx("mono")][idx("epi")], expected);
    }

    #[test]
    fn fact_table_spot_checks() {
        let universe = canonical_universe(SystemKind::Set);
        let idx = |name: &str| universe.iter().position(|a| a.name == name).unwrap();
        let fact = derive_fact_table(InstanceKind::SetMaps, 3).unwrap();
        // Image factorization: collapse onto the image, then include.
        assert!(fact[idx("gen")].contains(&(idx("epi"), idx("mono"))));
        // Inclusion into a disjoint union, then fold.
        assert!(fact[idx("gen")].contains(&(idx("mono"), idx("epi"))));
        // Identity padding on either side.
        assert!(fact[idx("gen")].contains(&(idx("iso"), idx("gen"))));
        assert!(fact[idx("gen")].contains(&(idx("gen"), idx("iso"))));
        // The empty inclusion factors as the empty identity then itself.
        assert!(fact[idx("mono_empty")].contains(&(idx("iso_empty"), idx("mono_empty"))));
        // But never as an empty inclusion followed by a non-surjection
        // when the codomain is a singleton.
        assert!(!fact[idx("mono_empty")].contains(&(idx("mono_empty"), idx("mono"))));
    }

    #[test]
    fn filler_characterization_matches_search_at_bound_two() {
        let report = verify_filler_characterization(2).unwrap();
        assert!(report.squares_scanned > 0);
        assert_eq!(report.mismatches, Vec::<String>::new());
    }

    #[test]
    fn bruteforce_rejects_large_categories() {
        let cat = crate::fincat::set_skeleton(3).category;
        assert!(matches!(
            bruteforce_wfs_and_ms(&cat, 12),
            Err(OracleError::CategoryTooLarge { .. })
        ));
    }

    #[test]
    fn bruteforce_micro_counts() {
        let (wfs, ms) = bruteforce_wfs_and_ms(&chain_poset(0), 12).unwrap();
        assert_eq!((wfs.len(), ms.len()), (1, 1));
        let (wfs, ms) = bruteforce_wfs_and_ms(&crate::fincat::discrete(2), 12).unwrap();
        assert_eq!((wfs.len(), ms.len()), (1, 1));
        let (wfs, ms) = bruteforce_wfs_and_ms(&chain_poset(1), 12).unwrap();
        assert_eq!((wfs.len(), ms.len()), (2, 3));
    }
}
