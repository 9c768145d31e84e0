//! On-disk format for derived archetype tables.
//!
//! A table file is a TOML document carrying the archetype universe, the
//! lifting matrix, the composition relation and the factorization relation
//! of one system, together with the derivation bounds and a content hash.
//! The hash is computed over the canonical re-serialization of the payload,
//! so files survive reformatting but not edits.

use crate::archetypes::{Archetype, ArchetypeFlags, SystemKind};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Debug, thiserror::Error)]
pub enum TableError {
    #[error("table file does not parse: {0}")]
    Parse(String),
    #[error("table file content hash mismatch (expected {expected}, computed {actual})")]
    HashMismatch { expected: String, actual: String },
    #[error("table file references unknown archetype `{0}`")]
    UnknownArchetype(String),
    #[error("table file is malformed: {0}")]
    Malformed(String),
}

/// One entry of the composition relation: the archetypes realized by some
/// composable pair (`first`, then `then`). Pairs with no composable
/// instances are omitted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompEntry {
    pub first: String,
    pub then: String,
    pub composites: Vec<String>,
}

/// One entry of the factorization relation: every instance of `target`
/// factors as a `pairs[i][0]`-morphism followed by a `pairs[i][1]`-morphism.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactEntry {
    pub target: String,
    pub pairs: Vec<(String, String)>,
}

/// The payload of a derived-table file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivedTables {
    pub kind: SystemKind,
    /// Largest instance size (cardinality or dimension) scanned.
    pub bound: u32,
    /// Largest middle object size searched for factorizations.
    pub middle_limit: u32,
    /// Smaller bound producing identical relations, when the derivation
    /// was stable; absent when re-derivation at `bound - 1` differs or
    /// does not cover the universe.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stable_from: Option<u32>,
    /// Lifting matrix rows, one string of `0`/`1` per left archetype, in
    /// universe order.
    pub lifts: Vec<String>,
    pub universe: Vec<Archetype>,
    pub comp: Vec<CompEntry>,
    pub fact: Vec<FactEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
struct TableFile {
    hash: String,
    #[serde(flatten)]
    payload: DerivedTables,
}

impl DerivedTables {
    /// Canonical serialization of the payload; input to the content hash.
    pub fn canonical_text(&self) -> String {
        toml::to_string(self).expect("derived tables serialize")
    }

    pub fn content_hash(&self) -> String {
        let digest = Sha256::digest(self.canonical_text().as_bytes());
        let mut out = String::with_capacity(71);
        out.push_str("sha256:");
        for byte in digest {
            out.push_str(&format!("{byte:02x}"));
        }
        out
    }

    /// Full file text: payload plus content hash.
    pub fn to_file_string(&self) -> String {
        format!("hash = \"{}\"\n{}", self.content_hash(), self.canonical_text())
    }

    /// Parses a table file and verifies its content hash.
    pub fn parse_verified(text: &str) -> Result<Self, TableError> {
        let file: TableFile = toml::from_str(text).map_err(|e| TableError::Parse(e.to_string()))?;
        let actual = file.payload.content_hash();
        if actual != file.hash {
            return Err(TableError::HashMismatch { expected: file.hash, actual });
        }
        Ok(file.payload)
    }

    fn index_of(&self, name: &str) -> Result<usize, TableError> {
        self.universe
            .iter()
            .position(|a| a.name == name)
            .ok_or_else(|| TableError::UnknownArchetype(name.to_string()))
    }

    /// The universe with flags, as declared in the file.
    pub fn resolve_universe(&self) -> Result<Vec<Archetype>, TableError> {
        let mut seen = std::collections::HashSet::new();
        for a in &self.universe {
            if !seen.insert(&a.name) {
                return Err(TableError::Malformed(format!("duplicate archetype `{}`", a.name)));
            }
        }
        Ok(self.universe.clone())
    }

    /// Lifting matrix as row bitmasks in universe order.
    pub fn resolve_lifts(&self) -> Result<Vec<u16>, TableError> {
        let n = self.universe.len();
        if self.lifts.len() != n {
            return Err(TableError::Malformed(format!(
                "lifting matrix has {} rows for {} archetypes",
                self.lifts.len(),
                n
            )));
        }
        self.lifts
            .iter()
            .map(|row| {
                if row.len() != n || !row.chars().all(|c| c == '0' || c == '1') {
                    return Err(TableError::Malformed(format!("bad lifting row `{row}`")));
                }
                Ok(row
                    .chars()
                    .enumerate()
                    .fold(0u16, |acc, (i, c)| if c == '1' { acc | 1 << i } else { acc }))
            })
            .collect()
    }

    /// Composition relation as an n x n matrix of composite bitmasks.
    pub fn resolve_comp(&self) -> Result<Vec<Vec<u16>>, TableError> {
        let n = self.universe.len();
        let mut out = vec![vec![0u16; n]; n];
        for entry in &self.comp {
            let first = self.index_of(&entry.first)?;
            let then = self.index_of(&entry.then)?;
            for name in &entry.composites {
                out[first][then] |= 1 << self.index_of(name)?;
            }
        }
        Ok(out)
    }

    /// Factorization relation as sorted pair lists per target archetype.
    pub fn resolve_fact(&self) -> Result<Vec<Vec<(usize, usize)>>, TableError> {
        let n = self.universe.len();
        let mut out = vec![Vec::new(); n];
        for entry in &self.fact {
            let target = self.index_of(&entry.target)?;
            for (a, b) in &entry.pairs {
                out[target].push((self.index_of(a)?, self.index_of(b)?));
            }
        }
        for row in &mut out {
            row.sort();
            row.dedup();
        }
        Ok(out)
    }

    /// Builds the payload from resolved relations over a universe.
    pub fn from_relations(
        kind: SystemKind,
        bound: u32,
        middle_limit: u32,
        stable_from: Option<u32>,
        universe: Vec<Archetype>,
        lifts: &[u16],
        comp: &[Vec<u16>],
        fact: &[Vec<(usize, usize)>],
    ) -> Self {
        let n = universe.len();
        let name = |i: usize| universe[i].name.clone();
        let lifts_rows = lifts
            .iter()
            .map(|row| (0..n).map(|i| if row >> i & 1 == 1 { '1' } else { '0' }).collect())
            .collect();
        let mut comp_entries = Vec::new();
        for (a, row) in comp.iter().enumerate() {
            for (b, &bits) in row.iter().enumerate() {
                if bits != 0 {
                    comp_entries.push(CompEntry {
                        first: name(a),
                        then: name(b),
                        composites: (0..n).filter(|i| bits >> i & 1 == 1).map(name).collect(),
                    });
                }
            }
        }
        let fact_entries = fact
            .iter()
            .enumerate()
            .map(|(t, pairs)| FactEntry {
                target: name(t),
                pairs: pairs.iter().map(|&(a, b)| (name(a), name(b))).collect(),
            })
            .collect();
        DerivedTables {
            kind,
            bound,
            middle_limit,
            stable_from,
            lifts: lifts_rows,
            universe,
            comp: comp_entries,
            fact: fact_entries,
        }
    }

    /// The derived relations only, ignoring derivation metadata. Two
    /// derivations at different bounds are interchangeable when these agree.
    pub fn semantic_view(&self) -> (SystemKind, &[Archetype], &[String], &[CompEntry], &[FactEntry]) {
        (self.kind, &self.universe, &self.lifts, &self.comp, &self.fact)
    }
}

/// Mirror of flag names for error messages and generic display.
pub fn flag_summary(flags: &ArchetypeFlags) -> String {
    match flags {
        ArchetypeFlags::Set { injective, surjective, domain_empty } => {
            format!("injective={injective} surjective={surjective} domain_empty={domain_empty}")
        }
        ArchetypeFlags::Pointed { surjective, fiber_trivial, injective_off } => {
            format!("surjective={surjective} fiber_trivial={fiber_trivial} injective_off={injective_off}")
        }
        ArchetypeFlags::Vect { mono, epi } => format!("mono={mono} epi={epi}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::archetypes::canonical_universe;

    fn sample() -> DerivedTables {
        let universe = canonical_universe(SystemKind::Vect);
        let lifts = vec![0b1111, 0b0101, 0b0011, 0b0001];
        let comp = vec![vec![0b0001; 4]; 4];
        let fact = vec![vec![(0, 0)], vec![(0, 1)], vec![(2, 0)], vec![(1, 2)]];
        DerivedTables::from_relations(SystemKind::Vect, 2, 4, None, universe, &lifts, &comp, &fact)
    }

    #[test]
    fn file_round_trip_preserves_payload() {
        let tables = sample();
        let text = tables.to_file_string();
        let parsed = DerivedTables::parse_verified(&text).unwrap();
        assert_eq!(parsed, tables);
    }

    #[test]
    fn tampering_is_detected() {
        let text = sample().to_file_string();
        let tampered = text.replace("bound = 2", "bound = 3");
        match DerivedTables::parse_verified(&tampered) {
            Err(TableError::HashMismatch { .. }) => {}
            other => panic!("expected hash mismatch, got {other:?}"),
        }
    }

    #[test]
    fn resolution_round_trips() {
        let tables = sample();
        assert_eq!(tables.resolve_lifts().unwrap(), vec![0b1111, 0b0101, 0b0011, 0b0001]);
        assert_eq!(tables.resolve_comp().unwrap()[3][2], 0b0001);
        assert_eq!(tables.resolve_fact().unwrap()[3], vec![(1, 2)]);
    }
}
