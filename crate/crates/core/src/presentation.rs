//! Basic algebras `KQ/I` given by a quiver with relations over GF(p).
//!
//! Paths are written in traversal order: `[a1, a2, …, ak]` walks `a1` first.
//! Its matrix in a representation is the right-to-left product
//! `M_ak · … · M_a2 · M_a1`.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{FieldError, PrimeField};

/// Hard limit on quiver size.
pub const MAX_QUIVER_ITEMS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("field modulus: {0}")]
    Field(#[from] FieldError),
    #[error("duplicate vertex name {0:?}")]
    DuplicateVertex(String),
    #[error("duplicate arrow name {0:?}")]
    DuplicateArrow(String),
    #[error("arrow {arrow:?}: unknown vertex {vertex:?}")]
    UnknownVertex { arrow: String, vertex: String },
    #[error("relation {relation}, term {term}: unknown arrow {name:?}")]
    UnknownArrow { relation: usize, term: usize, name: String },
    #[error("relation {relation}, term {term}: relations need paths of length >= 2")]
    PathTooShort { relation: usize, term: usize },
    #[error("relation {relation}, term {term}: non-composable path at position {position}")]
    NonComposable {
        relation: usize,
        term: usize,
        position: usize,
    },
    #[error("relation {relation}, term {term}: terms are not parallel")]
    NonParallel { relation: usize, term: usize },
    #[error("quiver too large: {0} items (limit 64)")]
    TooLarge(usize),
    #[error("cannot combine presentations over GF({0}) and GF({1})")]
    FieldMismatch(u32, u32),
}

impl PresentationError {
    /// Stable machine-readable code for each failure class.
    pub fn code(&self) -> &'static str {
        match self {
            PresentationError::Json { .. } => "malformed-json",
            PresentationError::Field(FieldError::NotPrime(_)) => "not-prime",
            PresentationError::Field(FieldError::TooLarge(_)) => "modulus-too-large",
            PresentationError::DuplicateVertex(_) => "duplicate-vertex",
            PresentationError::DuplicateArrow(_) => "duplicate-arrow",
            PresentationError::UnknownVertex { .. } => "unknown-vertex",
            PresentationError::UnknownArrow { .. } => "unknown-arrow",
            PresentationError::PathTooShort { .. } => "path-too-short",
            PresentationError::NonComposable { .. } => "non-composable-path",
            PresentationError::NonParallel { .. } => "non-parallel-relation",
            PresentationError::TooLarge(_) => "quiver-too-large",
            PresentationError::FieldMismatch(..) => "field-mismatch",
        }
    }
}

impl From<serde_json::Error> for PresentationError {
    fn from(e: serde_json::Error) -> Self {
        PresentationError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

// ---- on-disk format ----

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub p: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowSpec {
    pub name: String,
    pub from: String,
    pub to: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub coeff: i64,
    pub path: Vec<String>,
}

/// The JSON algebra-spec file, field order matching the canonical layout.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub field: FieldSpec,
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowSpec>,
    #[serde(default)]
    pub relations: Vec<Vec<TermSpec>>,
}

// ---- validated model ----

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// Arrows ending at `v`, in declaration order.
    pub fn arrows_into(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows
            .iter()
            .enumerate()
            .filter(move |(_, a)| a.target == v)
            .map(|(i, _)| i)
    }

    /// True when there is no oriented cycle (loops included).
    pub fn is_acyclic(&self) -> bool {
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for a in self.arrows.iter().filter(|a| a.source == v) {
                indeg[a.target] -= 1;
                if indeg[a.target] == 0 {
                    stack.push(a.target);
                }
            }
        }
        seen == n
    }
}

/// One term `coeff · path` of a relation. `path` holds arrow indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: u32,
    pub path: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    pub terms: Vec<Term>,
}

impl Relation {
    /// A single-term relation, i.e. a path declared zero.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Largest arrow index mentioned.
    pub(crate) fn max_arrow(&self) -> Option<usize> {
        self.terms.iter().flat_map(|t| t.path.iter().copied()).max()
    }
}

/// A validated basic algebra `KQ/I` over GF(p).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlgebraPresentation {
    field: PrimeField,
    quiver: Quiver,
    relations: Vec<Relation>,
}

/// Outcome of [`AlgebraPresentation::path_nilpotency_bound`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NilpotencyBound {
    /// Every path of this length lies in the ideal.
    Certified(usize),
    /// No certificate of length at most the given limit.
    Exceeds(usize),
}

impl NilpotencyBound {
    pub fn certified(self) -> Option<usize> {
        match self {
            NilpotencyBound::Certified(l) => Some(l),
            NilpotencyBound::Exceeds(_) => None,
        }
    }
}

fn validate_relations(
    field: PrimeField,
    quiver: &Quiver,
    raw: &[Vec<TermSpec>],
    offset: usize,
) -> Result<Vec<Relation>, PresentationError> {
    let mut out = Vec::new();
    for (ri, rel) in raw.iter().enumerate() {
        let relation = ri + offset;
        let mut ends: Option<(usize, usize)> = None;
        // merge repeated paths, keeping first-appearance order
        let mut merged: Vec<Term> = Vec::new();
        for (ti, term) in rel.iter().enumerate() {
            if term.path.len() < 2 {
                return Err(PresentationError::PathTooShort { relation, term: ti });
            }
            let mut path = Vec::with_capacity(term.path.len());
            for name in &term.path {
                let idx = quiver
                    .arrow_index(name)
                    .ok_or_else(|| PresentationError::UnknownArrow {
                        relation,
                        term: ti,
                        name: name.clone(),
                    })?;
                path.push(idx);
            }
            for (pos, w) in path.windows(2).enumerate() {
                if quiver.arrows[w[0]].target != quiver.arrows[w[1]].source {
                    return Err(PresentationError::NonComposable {
                        relation,
                        term: ti,
                        position: pos + 1,
                    });
                }
            }
            let here = (
                quiver.arrows[path[0]].source,
                quiver.arrows[*path.last().unwrap()].target,
            );
            match ends {
                None => ends = Some(here),
                Some(e) if e != here => return Err(PresentationError::NonParallel { relation, term: ti }),
                _ => {}
            }
            let coeff = field.reduce(term.coeff);
            match merged.iter_mut().find(|t| t.path == path) {
                Some(t) => t.coeff = field.add(t.coeff, coeff),
                None => merged.push(Term { coeff, path }),
            }
        }
        merged.retain(|t| t.coeff != 0);
        if !merged.is_empty() {
            out.push(Relation { terms: merged });
        }
    }
    Ok(out)
}

impl AlgebraPresentation {
    /// Validates and normalizes a spec.
    pub fn from_spec(spec: &AlgebraSpec) -> Result<Self, PresentationError> {
        let field = PrimeField::new(spec.field.p)?;
        if spec.vertices.len() > MAX_QUIVER_ITEMS {
            return Err(PresentationError::TooLarge(spec.vertices.len()));
        }
        if spec.arrows.len() > MAX_QUIVER_ITEMS {
            return Err(PresentationError::TooLarge(spec.arrows.len()));
        }
        let mut seen = HashSet::new();
        for v in &spec.vertices {
            if !seen.insert(v.as_str()) {
                return Err(PresentationError::DuplicateVertex(v.clone()));
            }
        }
        let index: HashMap<&str, usize> = spec.vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let mut names = HashSet::new();
        let mut arrows = Vec::with_capacity(spec.arrows.len());
        for a in &spec.arrows {
            if !names.insert(a.name.as_str()) {
                return Err(PresentationError::DuplicateArrow(a.name.clone()));
            }
            let lookup = |v: &String| {
                index
                    .get(v.as_str())
                    .copied()
                    .ok_or_else(|| PresentationError::UnknownVertex {
                        arrow: a.name.clone(),
                        vertex: v.clone(),
                    })
            };
            arrows.push(Arrow {
                name: a.name.clone(),
                source: lookup(&a.from)?,
                target: lookup(&a.to)?,
            });
        }
        let quiver = Quiver {
            vertices: spec.vertices.clone(),
            arrows,
        };
        let relations = validate_relations(field, &quiver, &spec.relations, 0)?;
        Ok(AlgebraPresentation {
            field,
            quiver,
            relations,
        })
    }

    /// Parses the JSON algebra-spec format.
    pub fn parse_spec(text: &str) -> Result<Self, PresentationError> {
        let spec: AlgebraSpec = serde_json::from_str(text)?;
        Self::from_spec(&spec)
    }

    pub fn to_spec(&self) -> AlgebraSpec {
        let arrow_name = |i: usize| self.quiver.arrows[i].name.clone();
        AlgebraSpec {
            field: FieldSpec {
                p: self.field.modulus() as u64,
            },
            vertices: self.quiver.vertices.clone(),
            arrows: self
                .quiver
                .arrows
                .iter()
                .map(|a| ArrowSpec {
                    name: a.name.clone(),
                    from: self.quiver.vertices[a.source].clone(),
                    to: self.quiver.vertices[a.target].clone(),
                })
                .collect(),
            relations: self
                .relations
                .iter()
                .map(|r| {
                    r.terms
                        .iter()
                        .map(|t| TermSpec {
                            coeff: t.coeff as i64,
                            path: t.path.iter().map(|&i| arrow_name(i)).collect(),
                        })
                        .collect()
                })
                .collect(),
        }
    }

    /// Canonical JSON text of the spec (declaration order, two-space indent).
    pub fn serialize(&self) -> String {
        serde_json::to_string_pretty(&self.to_spec()).expect("spec serializes")
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    /// Same algebra over a different prime field. Coefficients are re-reduced.
    pub fn with_field(&self, p: u64) -> Result<Self, PresentationError> {
        let mut spec = self.to_spec();
        spec.field.p = p;
        Self::from_spec(&spec)
    }

    /// Smallest `L <= limit` such that every path of length `L` contains a
    /// monomial relation as a subpath. Non-monomial relations never help.
    pub fn path_nilpotency_bound(&self, limit: usize) -> NilpotencyBound {
        let monomials: Vec<&[usize]> = self
            .relations
            .iter()
            .filter(|r| r.is_monomial())
            .map(|r| r.terms[0].path.as_slice())
            .collect();
        let window = monomials.iter().map(|p| p.len() - 1).max().unwrap_or(1).max(1);
        let killed = |path: &[usize]| monomials.iter().any(|m| path.ends_with(m));

        // Surviving paths, collapsed to their last `window` arrows: later
        // pruning only ever looks at that suffix.
        let mut frontier: Vec<Vec<usize>> = (0..self.quiver.arrows.len()).map(|a| vec![a]).collect();
        let mut len = 1;
        loop {
            if frontier.is_empty() {
                return NilpotencyBound::Certified(len);
            }
            if len >= limit {
                return NilpotencyBound::Exceeds(limit);
            }
            let mut next = Vec::new();
            let mut seen = HashSet::new();
            for path in &frontier {
                let end = self.quiver.arrows[*path.last().unwrap()].target;
                for (a, arrow) in self.quiver.arrows.iter().enumerate() {
                    if arrow.source != end {
                        continue;
                    }
                    let mut ext = path.clone();
                    ext.push(a);
                    if killed(&ext) {
                        continue;
                    }
                    if ext.len() > window {
                        ext.drain(..ext.len() - window);
                    }
                    if seen.insert(ext.clone()) {
                        next.push(ext);
                    }
                }
            }
            frontier = next;
            len += 1;
        }
    }

    /// `J² = 0`: every path of length 2 is killed by a monomial relation.
    pub fn is_radical_square_zero(&self) -> bool {
        matches!(self.path_nilpotency_bound(2), NilpotencyBound::Certified(l) if l <= 2)
    }

    /// Presentation of `self × other` on the disjoint union of the quivers.
    /// Clashing names from `other` get the suffix `#2` (repeated until unique).
    pub fn disjoint_union(&self, other: &AlgebraPresentation) -> Result<Self, PresentationError> {
        if self.field != other.field {
            return Err(PresentationError::FieldMismatch(
                self.field.modulus(),
                other.field.modulus(),
            ));
        }
        let fresh = |taken: &HashSet<String>, name: &str| {
            let mut n = name.to_string();
            while taken.contains(&n) {
                n.push_str("#2");
            }
            n
        };
        let mut spec = self.to_spec();
        let ospec = other.to_spec();

        let mut taken: HashSet<String> = spec.vertices.iter().cloned().collect();
        let mut vmap = BTreeMap::new();
        for v in &ospec.vertices {
            let n = fresh(&taken, v);
            taken.insert(n.clone());
            vmap.insert(v.clone(), n.clone());
            spec.vertices.push(n);
        }
        let mut taken: HashSet<String> = spec.arrows.iter().map(|a| a.name.clone()).collect();
        let mut amap = BTreeMap::new();
        for a in &ospec.arrows {
            let n = fresh(&taken, &a.name);
            taken.insert(n.clone());
            amap.insert(a.name.clone(), n.clone());
            spec.arrows.push(ArrowSpec {
                name: n,
                from: vmap[&a.from].clone(),
                to: vmap[&a.to].clone(),
            });
        }
        for rel in &ospec.relations {
            spec.relations.push(
                rel.iter()
                    .map(|t| TermSpec {
                        coeff: t.coeff,
                        path: t.path.iter().map(|a| amap[a].clone()).collect(),
                    })
                    .collect(),
            );
        }
        Self::from_spec(&spec)
    }

    /// Quotient presentation with `extra` appended to the relations.
    pub fn add_relations(&self, extra: &[Vec<TermSpec>]) -> Result<Self, PresentationError> {
        let added = validate_relations(self.field, &self.quiver, extra, self.relations.len())?;
        let mut out = self.clone();
        out.relations.extend(added);
        Ok(out)
    }

    /// Sum over vertices of `dim(t(a))·dim(s(a))` for a dimension vector.
    pub fn entry_count(&self, dims: &[usize]) -> usize {
        self.quiver.arrows.iter().map(|a| dims[a.target] * dims[a.source]).sum()
    }
}

/// One relation term `coeff · path`, arrows named in traversal order.
pub fn term(coeff: i64, path: &[&str]) -> TermSpec {
    TermSpec {
        coeff,
        path: path.iter().map(|s| s.to_string()).collect(),
    }
}

/// Small named presentations used throughout tests, docs and the CLI fixtures.
pub mod zoo {
    use super::*;

    fn build(
        p: u64,
        vertices: &[&str],
        arrows: &[(&str, &str, &str)],
        rels: Vec<Vec<TermSpec>>,
    ) -> AlgebraPresentation {
        let spec = AlgebraSpec {
            field: FieldSpec { p },
            vertices: vertices.iter().map(|s| s.to_string()).collect(),
            arrows: arrows
                .iter()
                .map(|(n, f, t)| ArrowSpec {
                    name: n.to_string(),
                    from: f.to_string(),
                    to: t.to_string(),
                })
                .collect(),
            relations: rels,
        };
        AlgebraPresentation::from_spec(&spec).expect("zoo presentation is valid")
    }

    /// Two-cycle `a: 1→2`, `b: 2→1` with `ab = ba = 0`.
    pub fn two_cycle(p: u64) -> AlgebraPresentation {
        build(
            p,
            &["1", "2"],
            &[("a", "1", "2"), ("b", "2", "1")],
            vec![vec![term(1, &["a", "b"])], vec![term(1, &["b", "a"])]],
        )
    }

    /// One vertex with a loop `x` and `x^k = 0`. `k = 0` means no relation.
    pub fn truncated_loop(p: u64, k: usize) -> AlgebraPresentation {
        let rels = if k == 0 {
            vec![]
        } else {
            let path: Vec<&str> = vec!["x"; k];
            vec![vec![term(1, &path)]]
        };
        build(p, &["1"], &[("x", "1", "1")], rels)
    }

    /// Two vertices with two parallel arrows `a, b: 1→2`.
    pub fn kronecker(p: u64) -> AlgebraPresentation {
        build(p, &["1", "2"], &[("a", "1", "2"), ("b", "1", "2")], vec![])
    }

    /// Single arrow `a: 1→2`.
    pub fn a2(p: u64) -> AlgebraPresentation {
        build(p, &["1", "2"], &[("a", "1", "2")], vec![])
    }

    pub fn single_vertex(p: u64) -> AlgebraPresentation {
        build(p, &["1"], &[], vec![])
    }

    /// Oriented `n`-cycle `x_i: i → i+1` with every path of length `kill` set to zero.
    pub fn cycle(p: u64, n: usize, kill: usize) -> AlgebraPresentation {
        let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let arrows: Vec<(String, String, String)> = (0..n)
            .map(|i| (format!("x{}", i + 1), names[i].clone(), names[(i + 1) % n].clone()))
            .collect();
        let rels = (0..n)
            .map(|start| {
                let path: Vec<String> = (0..kill).map(|k| arrows[(start + k) % n].0.clone()).collect();
                vec![TermSpec { coeff: 1, path }]
            })
            .collect();
        let vref: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let aref: Vec<(&str, &str, &str)> = arrows
            .iter()
            .map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str()))
            .collect();
        build(p, &vref, &aref, rels)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWO_CYCLE: &str = r#"{
      "field": {"p": 2},
      "vertices": ["1","2"],
      "arrows": [{"name":"a","from":"1","to":"2"}, {"name":"b","from":"2","to":"1"}],
      "relations": [ [{"coeff":1,"path":["a","b"]}], [{"coeff":1,"path":["b","a"]}] ]
    }"#;

    #[test]
    fn parse_two_cycle() {
        let a = AlgebraPresentation::parse_spec(TWO_CYCLE).unwrap();
        assert_eq!(a.quiver().vertex_count(), 2);
        assert_eq!(a.quiver().arrow_count(), 2);
        assert_eq!(a.relations().len(), 2);
        assert_eq!(a, zoo::two_cycle(2));
    }

    #[test]
    fn parse_semisimple() {
        let a = AlgebraPresentation::parse_spec(r#"{"field":{"p":3},"vertices":["1"],"arrows":[],"relations":[]}"#)
            .unwrap();
        assert_eq!(a.quiver().vertex_count(), 1);
        assert!(a.relations().is_empty());
    }

    #[test]
    fn parse_errors_are_distinct() {
        let non_composable = r#"{"field":{"p":2},"vertices":["1","2"],
            "arrows":[{"name":"a","from":"1","to":"2"}],
            "relations":[[{"coeff":1,"path":["a","a"]}]]}"#;
        let e = AlgebraPresentation::parse_spec(non_composable).unwrap_err();
        assert_eq!(e.code(), "non-composable-path");
        assert_eq!(
            e,
            PresentationError::NonComposable {
                relation: 0,
                term: 0,
                position: 1
            }
        );

        let e = AlgebraPresentation::parse_spec("{").unwrap_err();
        assert_eq!(e.code(), "malformed-json");

        let e = AlgebraPresentation::parse_spec(&TWO_CYCLE.replace("\"p\": 2", "\"p\": 4")).unwrap_err();
        assert_eq!(e.code(), "not-prime");

        let e = AlgebraPresentation::parse_spec(&TWO_CYCLE.replace("\"to\":\"1\"", "\"to\":\"9\"")).unwrap_err();
        assert_eq!(e.code(), "unknown-vertex");

        let e = AlgebraPresentation::parse_spec(&TWO_CYCLE.replace("[\"b\",\"a\"]", "[\"b\",\"c\"]")).unwrap_err();
        assert_eq!(e.code(), "unknown-arrow");

        let nonpar = r#"{"field":{"p":2},"vertices":["1","2"],
            "arrows":[{"name":"a","from":"1","to":"2"},{"name":"b","from":"2","to":"1"}],
            "relations":[[{"coeff":1,"path":["a","b"]},{"coeff":1,"path":["b","a"]}]]}"#;
        assert_eq!(
            AlgebraPresentation::parse_spec(nonpar).unwrap_err().code(),
            "non-parallel-relation"
        );
    }

    #[test]
    fn normalization_reduces_and_drops_zero_terms() {
        let spec = r#"{"field":{"p":3},"vertices":["1"],
            "arrows":[{"name":"x","from":"1","to":"1"},{"name":"y","from":"1","to":"1"}],
            "relations":[[{"coeff":4,"path":["x","y"]},{"coeff":-3,"path":["y","x"]}],
                         [{"coeff":3,"path":["x","x"]}]]}"#;
        let a = AlgebraPresentation::parse_spec(spec).unwrap();
        assert_eq!(a.relations().len(), 1);
        assert_eq!(
            a.relations()[0].terms,
            vec![Term {
                coeff: 1,
                path: vec![0, 1]
            }]
        );
    }

    #[test]
    fn serialize_round_trip_is_canonical() {
        let a = zoo::two_cycle(2);
        let text = a.serialize();
        assert_eq!(AlgebraPresentation::parse_spec(&text).unwrap(), a);
        let fields: Vec<usize> = ["\"field\"", "\"vertices\"", "\"arrows\"", "\"relations\""]
            .iter()
            .map(|k| text.find(k).unwrap())
            .collect();
        assert!(fields.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn nilpotency_bounds() {
        assert_eq!(
            zoo::two_cycle(2).path_nilpotency_bound(5),
            NilpotencyBound::Certified(2)
        );
        assert_eq!(
            zoo::truncated_loop(2, 3).path_nilpotency_bound(5),
            NilpotencyBound::Certified(3)
        );
        assert_eq!(
            zoo::truncated_loop(2, 0).path_nilpotency_bound(5),
            NilpotencyBound::Exceeds(5)
        );
        assert_eq!(
            zoo::kronecker(2).path_nilpotency_bound(5),
            NilpotencyBound::Certified(2)
        );
        assert_eq!(
            zoo::single_vertex(2).path_nilpotency_bound(5),
            NilpotencyBound::Certified(1)
        );
        assert_eq!(
            zoo::cycle(2, 3, 3).path_nilpotency_bound(5),
            NilpotencyBound::Certified(3)
        );
        // a free 2-loop quiver grows exponentially but the suffix collapse keeps it cheap
        let free = AlgebraPresentation::parse_spec(
            r#"{"field":{"p":2},"vertices":["1"],"arrows":[{"name":"x","from":"1","to":"1"},{"name":"y","from":"1","to":"1"}]}"#,
        )
        .unwrap();
        assert_eq!(free.path_nilpotency_bound(64), NilpotencyBound::Exceeds(64));
    }

    #[test]
    fn non_monomial_relations_do_not_certify() {
        let a = zoo::truncated_loop(2, 0)
            .add_relations(&[vec![term(1, &["x", "x"]), term(1, &["x", "x", "x"])]])
            .unwrap();
        assert_eq!(a.path_nilpotency_bound(6), NilpotencyBound::Exceeds(6));
    }

    #[test]
    fn radical_square_zero() {
        assert!(zoo::two_cycle(2).is_radical_square_zero());
        assert!(!zoo::truncated_loop(2, 3).is_radical_square_zero());
        assert!(zoo::a2(2).is_radical_square_zero());
        assert!(zoo::single_vertex(2).is_radical_square_zero());
        assert!(zoo::cycle(2, 3, 2).is_radical_square_zero());
    }

    #[test]
    fn disjoint_union_examples() {
        let u = zoo::truncated_loop(2, 2)
            .disjoint_union(&zoo::truncated_loop(2, 2))
            .unwrap();
        assert_eq!(u.quiver().vertices(), &["1".to_string(), "1#2".to_string()]);
        assert_eq!(u.quiver().arrow_count(), 2);
        assert_eq!(u.relations().len(), 2);
        assert_eq!(u.quiver().arrows()[1].name, "x#2");
        assert_eq!(u.relations()[1].terms[0].path, vec![1, 1]);

        let empty = AlgebraPresentation::parse_spec(r#"{"field":{"p":2},"vertices":[],"arrows":[]}"#).unwrap();
        assert_eq!(zoo::two_cycle(2).disjoint_union(&empty).unwrap(), zoo::two_cycle(2));

        let u = zoo::two_cycle(2).disjoint_union(&zoo::single_vertex(2)).unwrap();
        assert_eq!(u.quiver().vertex_count(), 3);
        assert_eq!(u.quiver().arrow_count(), 2);

        assert_eq!(
            zoo::two_cycle(2).disjoint_union(&zoo::two_cycle(3)).unwrap_err().code(),
            "field-mismatch"
        );
    }

    #[test]
    fn add_relations_examples() {
        let e = zoo::kronecker(2).add_relations(&[vec![term(1, &["b"])]]).unwrap_err();
        assert_eq!(e.code(), "path-too-short");

        let a = zoo::truncated_loop(2, 3)
            .add_relations(&[vec![term(1, &["x", "x"])]])
            .unwrap();
        assert_eq!(a.relations().len(), 2);
        assert_eq!(a.path_nilpotency_bound(5), NilpotencyBound::Certified(2));

        let a = zoo::two_cycle(2).add_relations(&[vec![term(1, &["a", "b"])]]).unwrap();
        assert_eq!(a.relations().len(), 3);
        assert!(a.is_radical_square_zero());
    }

    #[test]
    fn acyclicity() {
        assert!(zoo::kronecker(2).quiver().is_acyclic());
        assert!(zoo::a2(2).quiver().is_acyclic());
        assert!(!zoo::two_cycle(2).quiver().is_acyclic());
        assert!(!zoo::truncated_loop(2, 2).quiver().is_acyclic());
    }
}
