use crate::field::{FieldMatrix, PrimeField};
use crate::presentation::AlgebraPresentation;

use super::Representation;

/// A morphism of representations: one linear map per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub maps: Vec<FieldMatrix>,
}

impl Morphism {
    pub fn identity(field: PrimeField, dims: &[usize]) -> Self {
        Morphism {
            maps: dims.iter().map(|&d| FieldMatrix::identity(field, d)).collect(),
        }
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Morphism) -> Morphism {
        Morphism {
            maps: self
                .maps
                .iter()
                .zip(&other.maps)
                .map(|(a, b)| a.mul_unchecked(b))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(FieldMatrix::is_zero)
    }

    /// Invertible at every vertex.
    pub fn is_iso(&self) -> bool {
        self.maps.iter().all(FieldMatrix::is_invertible)
    }

    /// Checks `h_t · M_a = N_a · h_s` for every arrow.
    pub fn intertwines(&self, alg: &AlgebraPresentation, m: &Representation, n: &Representation) -> bool {
        alg.quiver().arrows().iter().enumerate().all(|(a, arrow)| {
            self.maps[arrow.target].mul_unchecked(m.mat(a)) == n.mat(a).mul_unchecked(&self.maps[arrow.source])
        })
    }
}

/// `Hom(M, N)` as the solution space of the intertwining system.
#[derive(Debug, Clone)]
pub struct HomSpace {
    field: PrimeField,
    source_dims: Vec<usize>,
    target_dims: Vec<usize>,
    offsets: Vec<usize>,
    unknowns: usize,
    flat_basis: Vec<Vec<u32>>,
    free: Vec<usize>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.flat_basis.len()
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    fn unflatten(&self, flat: &[u32]) -> Morphism {
        let maps = self
            .source_dims
            .iter()
            .zip(&self.target_dims)
            .zip(&self.offsets)
            .map(|((&dm, &dn), &off)| FieldMatrix::from_raw(self.field, dn, dm, flat[off..off + dn * dm].to_vec()))
            .collect();
        Morphism { maps }
    }

    fn flatten(&self, h: &Morphism) -> Vec<u32> {
        h.maps.iter().flat_map(|m| m.entries().iter().copied()).collect()
    }

    pub fn basis(&self) -> Vec<Morphism> {
        self.flat_basis.iter().map(|v| self.unflatten(v)).collect()
    }

    pub fn basis_element(&self, k: usize) -> Morphism {
        self.unflatten(&self.flat_basis[k])
    }

    /// `Σ coeffs[k] · basis[k]`.
    pub fn combine(&self, coeffs: &[u32]) -> Morphism {
        let f = self.field;
        let mut flat = vec![0u32; self.unknowns];
        for (c, b) in coeffs.iter().zip(&self.flat_basis) {
            if *c == 0 {
                continue;
            }
            for (slot, &v) in flat.iter_mut().zip(b) {
                *slot = f.add(*slot, f.mul(*c, v));
            }
        }
        self.unflatten(&flat)
    }

    /// Coordinates of a morphism in this basis. The basis has the identity
    /// pattern on the free columns, so coordinates are read off directly.
    pub fn coordinates(&self, h: &Morphism) -> Vec<u32> {
        let flat = self.flatten(h);
        self.free.iter().map(|&c| flat[c]).collect()
    }
}

/// Solves the linear system `h_t·M_a − N_a·h_s = 0` for all arrows.
pub fn hom_space(alg: &AlgebraPresentation, m: &Representation, n: &Representation) -> HomSpace {
    let f = alg.field();
    let q = alg.quiver();
    let dm = m.dims();
    let dn = n.dims();
    let mut offsets = Vec::with_capacity(dm.len());
    let mut total = 0;
    for v in 0..dm.len() {
        offsets.push(total);
        total += dn[v] * dm[v];
    }
    let var = |v: usize, r: usize, c: usize| offsets[v] + r * dm[v] + c;

    let eq_count: usize = q.arrows().iter().map(|a| dn[a.target] * dm[a.source]).sum();
    let mut system = FieldMatrix::zeros(f, eq_count, total);
    let mut row = 0;
    for (ai, a) in q.arrows().iter().enumerate() {
        let (s, t) = (a.source, a.target);
        let ma = m.mat(ai);
        let na = n.mat(ai);
        for r in 0..dn[t] {
            for c in 0..dm[s] {
                // (h_t · M_a)[r][c] = Σ_k h_t[r][k] · M_a[k][c]
                for k in 0..dm[t] {
                    let coef = ma.get(k, c);
                    if coef != 0 {
                        let col = var(t, r, k);
                        system.set(row, col, f.add(system.get(row, col), coef));
                    }
                }
                // − (N_a · h_s)[r][c] = − Σ_k N_a[r][k] · h_s[k][c]
                for k in 0..dn[s] {
                    let coef = na.get(r, k);
                    if coef != 0 {
                        let col = var(s, k, c);
                        system.set(row, col, f.sub(system.get(row, col), coef));
                    }
                }
                row += 1;
            }
        }
    }
    let (flat_basis, free) = system.nullspace_with_free();
    HomSpace {
        field: f,
        source_dims: dm.to_vec(),
        target_dims: dn.to_vec(),
        offsets,
        unknowns: total,
        flat_basis,
        free,
    }
}

/// `End(M)` with structure constants: `table[i][j]` holds the coordinates of
/// `basis[i] ∘ basis[j]`.
#[derive(Debug, Clone)]
pub struct EndAlgebra {
    pub space: HomSpace,
    pub table: Vec<Vec<Vec<u32>>>,
}

impl EndAlgebra {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}

pub fn end_algebra(alg: &AlgebraPresentation, m: &Representation) -> EndAlgebra {
    let space = hom_space(alg, m, m);
    let basis = space.basis();
    let table = basis
        .iter()
        .map(|x| basis.iter().map(|y| space.coordinates(&x.compose(y))).collect())
        .collect();
    EndAlgebra { space, table }
}
