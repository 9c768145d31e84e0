//! The category file format: a TOML document with `objects`, `morphisms`,
//! `identities` and a `composition` list covering every composable pair
//! exactly once. Parse and validation problems are reported with line and
//! column positions where the offending entry sits in the source.

use crate::fincat::{FiniteCategory, MorId, Morphism, ObjId, Violation};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use toml::Spanned;

/// A problem in a category file, with a source position when one is known.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatFileError {
    pub message: String,
    pub line: Option<usize>,
    pub column: Option<usize>,
}

impl fmt::Display for CatFileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.line, self.column) {
            (Some(l), Some(c)) => write!(f, "{}:{}: {}", l, c, self.message),
            _ => write!(f, "{}", self.message),
        }
    }
}

impl std::error::Error for CatFileError {}

#[derive(Debug, Deserialize)]
struct RawCategory {
    objects: Vec<Spanned<String>>,
    #[serde(default)]
    morphisms: Vec<RawMorphism>,
    #[serde(default)]
    identities: BTreeMap<String, Spanned<String>>,
    #[serde(default)]
    composition: Vec<RawComposition>,
}

#[derive(Debug, Deserialize)]
struct RawMorphism {
    name: Spanned<String>,
    src: Spanned<String>,
    dst: Spanned<String>,
}

#[derive(Debug, Deserialize)]
struct RawComposition {
    first: Spanned<String>,
    then: Spanned<String>,
    equals: Spanned<String>,
}

struct Positions<'a> {
    source: &'a str,
}

impl<'a> Positions<'a> {
    fn locate(&self, byte: usize) -> (usize, usize) {
        let prefix = &self.source[..byte.min(self.source.len())];
        let line = prefix.matches('\n').count() + 1;
        let column = byte - prefix.rfind('\n').map(|p| p + 1).unwrap_or(0) + 1;
        (line, column)
    }

    fn error(&self, spanned_start: usize, message: String) -> CatFileError {
        let (line, column) = self.locate(spanned_start);
        CatFileError { message, line: Some(line), column: Some(column) }
    }
}

fn bare_error(message: String) -> CatFileError {
    CatFileError { message, line: None, column: None }
}

/// Parses and validates a category file. All detected problems are
/// returned together.
pub fn parse_category(source: &str) -> Result<FiniteCategory, Vec<CatFileError>> {
    let raw: RawCategory = toml::from_str(source).map_err(|e| {
        let (line, column) = e
            .span()
            .map(|span| Positions { source }.locate(span.start))
            .map(|(l, c)| (Some(l), Some(c)))
            .unwrap_or((None, None));
        vec![CatFileError { message: format!("parse error: {}", e.message()), line, column }]
    })?;
    let pos = Positions { source };
    let mut errors = Vec::new();

    let mut object_ids: HashMap<&str, ObjId> = HashMap::new();
    for (i, name) in raw.objects.iter().enumerate() {
        if object_ids.insert(name.get_ref(), ObjId(i)).is_some() {
            errors.push(pos.error(name.span().start, format!("duplicate object `{}`", name.get_ref())));
        }
    }

    let mut morphism_ids: HashMap<&str, MorId> = HashMap::new();
    let mut morphisms = Vec::new();
    for (i, m) in raw.morphisms.iter().enumerate() {
        if morphism_ids.insert(m.name.get_ref(), MorId(i)).is_some() {
            errors.push(pos.error(m.name.span().start, format!("duplicate morphism `{}`", m.name.get_ref())));
        }
        let src = object_ids.get(m.src.get_ref().as_str()).copied().unwrap_or_else(|| {
            errors.push(pos.error(m.src.span().start, format!("unknown object `{}`", m.src.get_ref())));
            ObjId(0)
        });
        let dst = object_ids.get(m.dst.get_ref().as_str()).copied().unwrap_or_else(|| {
            errors.push(pos.error(m.dst.span().start, format!("unknown object `{}`", m.dst.get_ref())));
            ObjId(0)
        });
        morphisms.push(Morphism { name: m.name.get_ref().clone(), src, dst });
    }

    let mut identities = vec![None; raw.objects.len()];
    for (object, morphism) in &raw.identities {
        let Some(&obj) = object_ids.get(object.as_str()) else {
            errors.push(pos.error(morphism.span().start, format!("identity for unknown object `{object}`")));
            continue;
        };
        match morphism_ids.get(morphism.get_ref().as_str()) {
            Some(&m) => identities[obj.0] = Some(m),
            None => errors.push(pos.error(
                morphism.span().start,
                format!("identity of `{object}` is an unknown morphism `{}`", morphism.get_ref()),
            )),
        }
    }
    for (i, id) in identities.iter().enumerate() {
        if id.is_none() && i < raw.objects.len() {
            errors.push(bare_error(format!("object `{}` has no identity", raw.objects[i].get_ref())));
        }
    }

    let mut compositions = Vec::new();
    let mut comp_spans: HashMap<(MorId, MorId), usize> = HashMap::new();
    for entry in &raw.composition {
        let lookup = |s: &Spanned<String>| {
            morphism_ids.get(s.get_ref().as_str()).copied().ok_or_else(|| {
                pos.error(s.span().start, format!("unknown morphism `{}`", s.get_ref()))
            })
        };
        let (first, then, equals) = match (lookup(&entry.first), lookup(&entry.then), lookup(&entry.equals)) {
            (Ok(a), Ok(b), Ok(c)) => (a, b, c),
            (a, b, c) => {
                errors.extend([a.err(), b.err(), c.err()].into_iter().flatten());
                continue;
            }
        };
        if comp_spans.insert((first, then), entry.first.span().start).is_some() {
            errors.push(pos.error(
                entry.first.span().start,
                format!(
                    "composable pair (`{}`, `{}`) listed more than once",
                    entry.first.get_ref(),
                    entry.then.get_ref()
                ),
            ));
            continue;
        }
        compositions.push((first, then, equals));
    }

    if !errors.is_empty() {
        return Err(errors);
    }

    let identities: Vec<MorId> = identities.into_iter().map(|id| id.expect("checked")).collect();
    let cat = FiniteCategory::new(
        raw.objects.into_iter().map(Spanned::into_inner).collect(),
        morphisms,
        identities,
        &compositions,
    );
    let violations = cat.validate();
    if violations.is_empty() {
        return Ok(cat);
    }
    let errors = violations
        .into_iter()
        .map(|v| {
            let span = match &v {
                Violation::NotComposable { first, second }
                | Violation::CompositeEndpoints { first, second, .. }
                | Violation::IdentityLaw { identity: first, morphism: second } => comp_spans
                    .get(&(*first, *second))
                    .or_else(|| comp_spans.get(&(*second, *first)))
                    .copied(),
                _ => None,
            };
            match span {
                Some(start) => pos.error(start, format!("invalid category: {v}")),
                None => bare_error(format!("invalid category: {v}")),
            }
        })
        .collect();
    Err(errors)
}

#[derive(Debug, Serialize)]
struct WriteCategory<'a> {
    objects: Vec<&'a str>,
    morphisms: Vec<WriteMorphism<'a>>,
    identities: BTreeMap<&'a str, &'a str>,
    composition: Vec<WriteComposition<'a>>,
}

#[derive(Debug, Serialize)]
struct WriteMorphism<'a> {
    name: &'a str,
    src: &'a str,
    dst: &'a str,
}

#[derive(Debug, Serialize)]
struct WriteComposition<'a> {
    first: &'a str,
    then: &'a str,
    equals: &'a str,
}

/// Serializes a category in the file format, listing every composable pair
/// exactly once in morphism-index order.
pub fn write_category(cat: &FiniteCategory) -> String {
    let doc = WriteCategory {
        objects: cat.objects().map(|o| cat.object_name(o)).collect(),
        morphisms: cat
            .morphism_ids()
            .map(|m| WriteMorphism {
                name: cat.morphism_name(m),
                src: cat.object_name(cat.src(m)),
                dst: cat.object_name(cat.dst(m)),
            })
            .collect(),
        identities: cat
            .objects()
            .map(|o| (cat.object_name(o), cat.morphism_name(cat.identity(o))))
            .collect(),
        composition: cat
            .composable_pairs()
            .map(|(f, g)| WriteComposition {
                first: cat.morphism_name(f),
                then: cat.morphism_name(g),
                equals: cat.morphism_name(cat.then(f, g).expect("composable")),
            })
            .collect(),
    };
    toml::to_string(&doc).expect("category serializes")
}
