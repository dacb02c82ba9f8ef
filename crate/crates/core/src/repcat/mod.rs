//! Representations of a presentation and their categorical data: hom and
//! endomorphism spaces, indecomposability, isomorphism, composition series.

mod hom;
mod search;
mod series;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::field::{FieldMatrix, MatrixError, Subspace};
use crate::presentation::AlgebraPresentation;

pub use hom::{end_algebra, hom_space, EndAlgebra, HomSpace, Morphism};
pub use search::{
    are_isomorphic, decompose, is_indecomposable, Decomposition, Indecomposability, IsoResult, SearchConfig, Split,
    DEFAULT_SEED,
};
pub use series::{composition_series, radical, radical_filtration, CompositionSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("expected {expected} vertex dimensions, found {found}")]
    VertexCount { expected: usize, found: usize },
    #[error("expected {expected} arrow matrices, found {found}")]
    ArrowCount { expected: usize, found: usize },
    #[error("arrow {arrow:?}: expected a {expected:?} matrix, found {found:?}")]
    Shape {
        arrow: String,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("matrix over the wrong field")]
    FieldMismatch,
    #[error("relation {0} does not vanish")]
    RelationViolated(usize),
    #[error("zero module")]
    ZeroModule,
    #[error("not admissible: the radical filtration stalls at a nonzero subrepresentation")]
    NotAdmissible,
    #[error("representations have different dimension vectors")]
    DimMismatch,
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("unknown arrow {0:?}")]
    UnknownArrow(String),
    #[error("malformed representation JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// A representation: one vector space `GF(p)^dim(v)` per vertex and one
/// `dim(t(a)) × dim(s(a))` matrix per arrow, annihilating every relation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Representation {
    dims: Vec<usize>,
    mats: Vec<FieldMatrix>,
}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Representation")
            .field("dims", &self.dims)
            .field("mats", &self.mats.iter().map(|m| m.to_rows()).collect::<Vec<_>>())
            .finish()
    }
}

/// Composition-factor multiplicities, ordered by vertex declaration.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CompVector(pub Vec<usize>);

impl CompVector {
    pub fn length(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for CompVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}

fn check_shapes(alg: &AlgebraPresentation, dims: &[usize], mats: &[FieldMatrix]) -> Result<(), RepError> {
    let q = alg.quiver();
    if dims.len() != q.vertex_count() {
        return Err(RepError::VertexCount {
            expected: q.vertex_count(),
            found: dims.len(),
        });
    }
    if mats.len() != q.arrow_count() {
        return Err(RepError::ArrowCount {
            expected: q.arrow_count(),
            found: mats.len(),
        });
    }
    for (a, m) in q.arrows().iter().zip(mats) {
        if m.field() != alg.field() {
            return Err(RepError::FieldMismatch);
        }
        let expected = (dims[a.target], dims[a.source]);
        if m.shape() != expected {
            return Err(RepError::Shape {
                arrow: a.name.clone(),
                expected,
                found: m.shape(),
            });
        }
    }
    Ok(())
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RepFile {
    #[serde(default)]
    dims: BTreeMap<String, usize>,
    #[serde(default)]
    mats: BTreeMap<String, Vec<Vec<i64>>>,
}

impl Representation {
    /// Validates shapes and relations.
    pub fn new(alg: &AlgebraPresentation, dims: Vec<usize>, mats: Vec<FieldMatrix>) -> Result<Self, RepError> {
        check_shapes(alg, &dims, &mats)?;
        let rep = Representation { dims, mats };
        if let Some(r) = rep.first_violated_relation(alg) {
            return Err(RepError::RelationViolated(r));
        }
        Ok(rep)
    }

    pub(crate) fn from_parts_unchecked(dims: Vec<usize>, mats: Vec<FieldMatrix>) -> Self {
        Representation { dims, mats }
    }

    pub(crate) fn mats_mut(&mut self) -> &mut [FieldMatrix] {
        &mut self.mats
    }

    /// Builds from nested integer rows, one entry per arrow in declaration order.
    pub fn from_rows(alg: &AlgebraPresentation, dims: &[usize], mats: &[Vec<Vec<i64>>]) -> Result<Self, RepError> {
        let q = alg.quiver();
        if dims.len() != q.vertex_count() {
            return Err(RepError::VertexCount {
                expected: q.vertex_count(),
                found: dims.len(),
            });
        }
        if mats.len() != q.arrow_count() {
            return Err(RepError::ArrowCount {
                expected: q.arrow_count(),
                found: mats.len(),
            });
        }
        let f = alg.field();
        let mut out = Vec::with_capacity(mats.len());
        for (a, rows) in q.arrows().iter().zip(mats) {
            let c = dims[a.source];
            let m = if rows.is_empty() {
                FieldMatrix::zeros(f, 0, c)
            } else {
                FieldMatrix::from_rows(f, rows)?
            };
            out.push(m);
        }
        Self::new(alg, dims.to_vec(), out)
    }

    /// The zero representation with the given dimension vector.
    pub fn zero(alg: &AlgebraPresentation, dims: &[usize]) -> Self {
        let f = alg.field();
        let mats = alg
            .quiver()
            .arrows()
            .iter()
            .map(|a| FieldMatrix::zeros(f, dims[a.target], dims[a.source]))
            .collect();
        Representation {
            dims: dims.to_vec(),
            mats,
        }
    }

    /// The simple representation concentrated at vertex `v`.
    pub fn simple(alg: &AlgebraPresentation, v: usize) -> Self {
        let mut dims = vec![0; alg.quiver().vertex_count()];
        dims[v] = 1;
        Self::zero(alg, &dims)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn mats(&self) -> &[FieldMatrix] {
        &self.mats
    }

    pub fn mat(&self, arrow: usize) -> &FieldMatrix {
        &self.mats[arrow]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// Concatenated matrix entries in arrow order; the enumeration order key.
    pub fn entry_key(&self) -> Vec<u32> {
        self.mats.iter().flat_map(|m| m.entries().iter().copied()).collect()
    }

    /// Matrix of a path given in traversal order.
    pub fn path_matrix(&self, alg: &AlgebraPresentation, path: &[usize]) -> FieldMatrix {
        let arrows = alg.quiver().arrows();
        let start = arrows[path[0]].source;
        let mut acc = FieldMatrix::identity(alg.field(), self.dims[start]);
        for &a in path {
            acc = self.mats[a].mul_unchecked(&acc);
        }
        acc
    }

    fn relation_value(&self, alg: &AlgebraPresentation, rel: usize) -> FieldMatrix {
        let f = alg.field();
        let relation = &alg.relations()[rel];
        let arrows = alg.quiver().arrows();
        let first = &relation.terms[0].path;
        let (s, t) = (arrows[first[0]].source, arrows[*first.last().unwrap()].target);
        let mut sum = FieldMatrix::zeros(f, self.dims[t], self.dims[s]);
        for term in &relation.terms {
            let pm = self.path_matrix(alg, &term.path).scale(term.coeff);
            sum = sum.add(&pm).expect("parallel terms share a shape");
        }
        sum
    }

    pub(crate) fn relation_holds(&self, alg: &AlgebraPresentation, rel: usize) -> bool {
        self.relation_value(alg, rel).is_zero()
    }

    fn first_violated_relation(&self, alg: &AlgebraPresentation) -> Option<usize> {
        (0..alg.relations().len()).find(|&r| !self.relation_holds(alg, r))
    }

    /// Reads the representation JSON format. Missing vertices have dimension
    /// 0 and missing arrows are zero maps.
    pub fn from_json(alg: &AlgebraPresentation, text: &str) -> Result<Self, RepError> {
        let file: RepFile = serde_json::from_str(text).map_err(|e| RepError::Json(e.to_string()))?;
        let q = alg.quiver();
        let mut dims = vec![0; q.vertex_count()];
        for (name, d) in &file.dims {
            let v = q
                .vertex_index(name)
                .ok_or_else(|| RepError::UnknownVertex(name.clone()))?;
            dims[v] = *d;
        }
        for name in file.mats.keys() {
            if q.arrow_index(name).is_none() {
                return Err(RepError::UnknownArrow(name.clone()));
            }
        }
        let mats: Vec<Vec<Vec<i64>>> = q
            .arrows()
            .iter()
            .map(|a| {
                file.mats
                    .get(&a.name)
                    .cloned()
                    .unwrap_or_else(|| vec![vec![0; dims[a.source]]; dims[a.target]])
            })
            .collect();
        Self::from_rows(alg, &dims, &mats)
    }

    /// JSON value in the representation file format (keys sorted).
    pub fn to_json(&self, alg: &AlgebraPresentation) -> Value {
        let q = alg.quiver();
        let mut dims = serde_json::Map::new();
        for (v, name) in q.vertices().iter().enumerate() {
            dims.insert(name.clone(), Value::from(self.dims[v]));
        }
        let mut mats = serde_json::Map::new();
        for (a, arrow) in q.arrows().iter().enumerate() {
            mats.insert(
                arrow.name.clone(),
                serde_json::to_value(self.mats[a].to_rows()).unwrap(),
            );
        }
        let mut obj = serde_json::Map::new();
        obj.insert("dims".into(), Value::Object(dims));
        obj.insert("mats".into(), Value::Object(mats));
        Value::Object(obj)
    }
}

/// True iff every relation evaluates to the zero matrix.
pub fn evaluate_relations(alg: &AlgebraPresentation, m: &Representation) -> bool {
    m.first_violated_relation(alg).is_none()
}

/// Composition-factor vector. For admissible presentations the simples are
/// the vertex simples, so the multiplicities are the vertex dimensions; the
/// composition series tests cross-check this.
pub fn comp_vector(m: &Representation) -> CompVector {
    CompVector(m.dims.clone())
}

/// Block-diagonal direct sum.
pub fn direct_sum(m: &Representation, n: &Representation) -> Representation {
    let dims = m.dims.iter().zip(&n.dims).map(|(a, b)| a + b).collect();
    let mats = m.mats.iter().zip(&n.mats).map(|(a, b)| a.block_diag(b)).collect();
    Representation { dims, mats }
}

/// Transports `m` along invertible vertex maps `g`: `M'_a = g_t · M_a · g_s⁻¹`.
pub fn change_basis(
    alg: &AlgebraPresentation,
    m: &Representation,
    g: &[FieldMatrix],
) -> Result<Representation, RepError> {
    let inverses = g.iter().map(|x| x.invert()).collect::<Result<Vec<_>, _>>()?;
    let mats = alg
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, arrow)| {
            g[arrow.target]
                .mul_unchecked(&m.mats[a])
                .mul_unchecked(&inverses[arrow.source])
        })
        .collect();
    Ok(Representation {
        dims: m.dims.clone(),
        mats,
    })
}

/// True when the per-vertex subspaces are closed under every arrow map.
pub fn is_subrepresentation(alg: &AlgebraPresentation, m: &Representation, sub: &[Subspace]) -> bool {
    alg.quiver().arrows().iter().enumerate().all(|(a, arrow)| {
        let img = m.mats[a].mul_unchecked(sub[arrow.source].basis());
        (0..img.cols()).all(|c| sub[arrow.target].contains(&img.column_vec(c)))
    })
}

/// The subrepresentation on `sub`, written in the subspaces' echelon bases.
pub fn restrict(alg: &AlgebraPresentation, m: &Representation, sub: &[Subspace]) -> Option<Representation> {
    let mats = alg
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, arrow)| {
            let img = m.mats[a].mul_unchecked(sub[arrow.source].basis());
            sub[arrow.target].coordinates_of_columns(&img)
        })
        .collect::<Option<Vec<_>>>()?;
    Some(Representation {
        dims: sub.iter().map(Subspace::dim).collect(),
        mats,
    })
}

/// The quotient `m / sub`, written in complement coordinates.
pub fn quotient(alg: &AlgebraPresentation, m: &Representation, sub: &[Subspace]) -> Representation {
    let q: Vec<FieldMatrix> = sub.iter().map(Subspace::quotient_map).collect();
    let s: Vec<FieldMatrix> = sub.iter().map(Subspace::complement_section).collect();
    let mats = alg
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, arrow)| {
            q[arrow.target]
                .mul_unchecked(&m.mats[a])
                .mul_unchecked(&s[arrow.source])
        })
        .collect();
    Representation {
        dims: sub.iter().map(|x| x.ambient() - x.dim()).collect(),
        mats,
    }
}
