//! Lifting problems: concrete fillers for squares of finite functions, and
//! exhaustive lifting decisions over a [`FiniteCategory`].
//!
//! A lifting problem is a commuting square with a left map `left: A -> B`, a
//! right map `right: X -> Y`, a top map `A -> X` and a bottom map `B -> Y`;
//! a filler is a diagonal `B -> X` making both triangles commute. For
//! functions between sets a filler exists exactly when the top map collapses
//! every non-empty fiber of the left map and every point in the image of the
//! bottom map has a non-empty fiber under the right map; [`filler`] builds
//! the witness from that characterization. Over a category the engine just
//! searches hom-sets.

use crate::fincat::{FiniteCategory, MorId, MorphismClass};
use rayon::prelude::*;
use std::fmt;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum FunctionError {
    #[error("value {value} out of range for codomain of size {codomain}")]
    ValueOutOfRange { value: usize, codomain: usize },
}

/// A total function between canonical finite sets `{0..domain}` and
/// `{0..codomain}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SetFunction {
    domain: usize,
    codomain: usize,
    values: Vec<usize>,
}

impl SetFunction {
    pub fn new(codomain: usize, values: Vec<usize>) -> Result<Self, FunctionError> {
        for &v in &values {
            if v >= codomain {
                return Err(FunctionError::ValueOutOfRange { value: v, codomain });
            }
        }
        Ok(SetFunction { domain: values.len(), codomain, values })
    }

    pub fn identity(n: usize) -> Self {
        SetFunction { domain: n, codomain: n, values: (0..n).collect() }
    }

    pub fn domain(&self) -> usize {
        self.domain
    }

    pub fn codomain(&self) -> usize {
        self.codomain
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, x: usize) -> usize {
        self.values[x]
    }

    /// `g ∘ self`, when `self.codomain == g.domain`.
    pub fn then(&self, g: &SetFunction) -> Option<SetFunction> {
        if self.codomain != g.domain {
            return None;
        }
        Some(SetFunction {
            domain: self.domain,
            codomain: g.codomain,
            values: self.values.iter().map(|&x| g.values[x]).collect(),
        })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.codomain];
        self.values.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.codomain];
        for &v in &self.values {
            seen[v] = true;
        }
        seen.into_iter().all(|b| b)
    }

    pub fn domain_empty(&self) -> bool {
        self.domain == 0
    }

    fn fiber(&self, y: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.domain).filter(move |&x| self.values[x] == y)
    }
}

impl fmt::Display for SetFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.domain, self.codomain)?;
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SquareError {
    #[error("square sides do not share endpoints")]
    EndpointMismatch,
    #[error("not a commuting square")]
    NotCommuting,
}

/// A commuting square of finite functions. Constructed through
/// [`LiftingSquare::new`], which enforces commutativity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftingSquare {
    left: SetFunction,
    right: SetFunction,
    top: SetFunction,
    bottom: SetFunction,
}

impl LiftingSquare {
    pub fn new(
        left: SetFunction,
        right: SetFunction,
        top: SetFunction,
        bottom: SetFunction,
    ) -> Result<Self, SquareError> {
        if top.domain != left.domain
            || top.codomain != right.domain
            || bottom.domain != left.codomain
            || bottom.codomain != right.codomain
        {
            return Err(SquareError::EndpointMismatch);
        }
        if top.then(&right) != left.then(&bottom) {
            return Err(SquareError::NotCommuting);
        }
        Ok(LiftingSquare { left, right, top, bottom })
    }

    pub fn left(&self) -> &SetFunction {
        &self.left
    }

    pub fn right(&self) -> &SetFunction {
        &self.right
    }

    pub fn top(&self) -> &SetFunction {
        &self.top
    }

    pub fn bottom(&self) -> &SetFunction {
        &self.bottom
    }
}

/// The two conditions characterizing solvable squares of finite functions:
/// the top map collapses each non-empty fiber of the left map to a single
/// point, and every point in the image of the bottom map has a non-empty
/// fiber under the right map. A filler exists exactly when both hold.
pub fn filler_conditions(square: &LiftingSquare) -> (bool, bool) {
    let collapses = (0..square.left.codomain).all(|b| {
        let mut images = square.left.fiber(b).map(|a| square.top.apply(a));
        match images.next() {
            None => true,
            Some(first) => images.all(|i| i == first),
        }
    });
    let fibers_hit = (0..square.left.codomain).all(|b| {
        let y = square.bottom.apply(b);
        square.right.fiber(y).next().is_some()
    });
    (collapses, fibers_hit)
}

/// Builds the filler when one exists. Points with a non-empty left fiber go
/// to the collapsed image; for an empty fiber the least preimage of the
/// bottom value under the right map is chosen, so the result is
/// deterministic.
pub fn filler(square: &LiftingSquare) -> Option<SetFunction> {
    let (collapses, fibers_hit) = filler_conditions(square);
    if !collapses || !fibers_hit {
        return None;
    }
    let values = (0..square.left.codomain)
        .map(|b| match square.left.fiber(b).next() {
            Some(a) => square.top.apply(a),
            None => {
                let y = square.bottom.apply(b);
                square.right.fiber(y).next().expect("image point with empty fiber")
            }
        })
        .collect();
    let lift = SetFunction { domain: square.left.codomain, codomain: square.right.domain, values };
    debug_assert_eq!(square.left.then(&lift).as_ref(), Some(&square.top));
    debug_assert_eq!(lift.then(&square.right).as_ref(), Some(&square.bottom));
    Some(lift)
}

/// A square in a category, as four morphism ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CatSquare {
    pub left: MorId,
    pub right: MorId,
    pub top: MorId,
    pub bottom: MorId,
}

/// Whether a commuting square admits a filler, by searching the hom-set from
/// the left codomain to the right domain.
pub fn has_filler(cat: &FiniteCategory, square: &CatSquare) -> Result<bool, SquareError> {
    let CatSquare { left, right, top, bottom } = *square;
    if cat.src(top) != cat.src(left)
        || cat.dst(top) != cat.src(right)
        || cat.src(bottom) != cat.dst(left)
        || cat.dst(bottom) != cat.dst(right)
    {
        return Err(SquareError::EndpointMismatch);
    }
    if cat.then(top, right) != cat.then(left, bottom) {
        return Err(SquareError::NotCommuting);
    }
    Ok(cat
        .hom(cat.dst(left), cat.src(right))
        .iter()
        .any(|&lift| cat.then(left, lift) == Some(top) && cat.then(lift, right) == Some(bottom)))
}

/// Whether `left` has the left lifting property against `right`: every
/// commuting square with these two sides has a filler. Vacuously true when
/// no square exists.
pub fn lifts(cat: &FiniteCategory, left: MorId, right: MorId) -> bool {
    let tops = cat.hom(cat.src(left), cat.src(right));
    let bottoms = cat.hom(cat.dst(left), cat.dst(right));
    tops.iter().all(|&top| {
        bottoms
            .iter()
            .filter(|&&bottom| cat.then(top, right) == cat.then(left, bottom))
            .all(|&bottom| {
                has_filler(cat, &CatSquare { left, right, top, bottom }).unwrap_or(false)
            })
    })
}

/// The full pairwise lifting relation of a category, computed once and
/// reused by the enumeration passes.
#[derive(Debug, Clone)]
pub struct LiftingTable {
    rows: Vec<MorphismClass>,
}

impl LiftingTable {
    pub fn compute(cat: &FiniteCategory) -> Self {
        let n = cat.morphism_count();
        let rows = (0..n)
            .into_par_iter()
            .map(|l| {
                MorphismClass::from_members(
                    n,
                    (0..n).map(MorId).filter(|&r| lifts(cat, MorId(l), r)),
                )
            })
            .collect();
        LiftingTable { rows }
    }

    pub fn lifts(&self, left: MorId, right: MorId) -> bool {
        self.rows[left.0].contains(right)
    }

    /// Morphisms with the right lifting property against every member of
    /// `class`. The empty class yields everything.
    pub fn right_orthogonal(&self, class: &MorphismClass) -> MorphismClass {
        let n = self.rows.len();
        let mut out = MorphismClass::full(n);
        for l in class.iter() {
            out = out.intersection(&self.rows[l.0]);
        }
        out
    }

    /// Morphisms with the left lifting property against every member of
    /// `class`.
    pub fn left_orthogonal(&self, class: &MorphismClass) -> MorphismClass {
        let n = self.rows.len();
        MorphismClass::from_members(
            n,
            (0..n).map(MorId).filter(|&l| class.is_subset(&self.rows[l.0])),
        )
    }
}

/// One-shot right orthogonal of a class.
pub fn right_orthogonal(cat: &FiniteCategory, class: &MorphismClass) -> MorphismClass {
    LiftingTable::compute(cat).right_orthogonal(class)
}

/// One-shot left orthogonal of a class.
pub fn left_orthogonal(cat: &FiniteCategory, class: &MorphismClass) -> MorphismClass {
    LiftingTable::compute(cat).left_orthogonal(class)
}
