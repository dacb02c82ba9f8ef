//! Searches inside hom/end spaces: splitting idempotents, isomorphisms,
//! Krull–Schmidt decomposition.
//!
//! Small spaces (`p^dim ≤ 2^exhaustive_log2`) are scanned completely and the
//! answer is exact. Larger spaces fall back to a seeded pseudorandom search.
//! A witness found by the fallback is still conclusive; a failed fallback
//! search is reported with `certain: false`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::{FieldMatrix, PrimeField, Subspace};
use crate::presentation::AlgebraPresentation;

use super::hom::{hom_space, HomSpace, Morphism};
use super::{restrict, RepError, Representation};

pub const DEFAULT_SEED: u64 = 0xC0FFEE;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    /// Exhaustive scan while `p^dim ≤ 2^exhaustive_log2`.
    pub exhaustive_log2: u32,
    pub seed: u64,
    /// Pseudorandom trials once the space is too large to scan.
    pub trials: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            exhaustive_log2: 20,
            seed: DEFAULT_SEED,
            trials: 4096,
        }
    }
}

impl SearchConfig {
    fn exhaustive(&self, field: PrimeField, dim: usize) -> bool {
        let limit = 1u128 << self.exhaustive_log2.min(100);
        (field.modulus() as u128)
            .checked_pow(dim as u32)
            .is_some_and(|n| n <= limit)
    }

    fn rng(&self, reps: &[&Representation]) -> ChaCha8Rng {
        // FNV-1a over the inputs keeps each stream independent of call order
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        let mut feed = |x: u64| {
            h ^= x;
            h = h.wrapping_mul(0x0100_0000_01b3);
        };
        for r in reps {
            r.dims().iter().for_each(|&d| feed(d as u64));
            r.entry_key().iter().for_each(|&v| feed(v as u64));
            feed(u64::MAX);
        }
        ChaCha8Rng::seed_from_u64(self.seed ^ h)
    }
}

/// Visits coefficient vectors: basis vectors first, then either the whole
/// space in lexicographic order or `trials` pseudorandom vectors. Stops when
/// `visit` returns `Some`. The flag is true when the scan was complete.
fn scan_space<T>(
    space: &HomSpace,
    cfg: &SearchConfig,
    reps: &[&Representation],
    mut visit: impl FnMut(&Morphism) -> Option<T>,
) -> (Option<T>, bool) {
    let d = space.dim();
    let f = space.field();
    for k in 0..d {
        if let Some(t) = visit(&space.basis_element(k)) {
            return (Some(t), true);
        }
    }
    if cfg.exhaustive(f, d) {
        let p = f.modulus();
        let mut coeffs = vec![0u32; d];
        loop {
            // odometer, last coordinate fastest
            let mut i = d;
            loop {
                if i == 0 {
                    return (None, true);
                }
                i -= 1;
                coeffs[i] += 1;
                if coeffs[i] < p {
                    break;
                }
                coeffs[i] = 0;
            }
            if coeffs.iter().filter(|&&c| c != 0).count() == 1 && coeffs.contains(&1) {
                continue; // plain basis vector, already visited
            }
            if let Some(t) = visit(&space.combine(&coeffs)) {
                return (Some(t), true);
            }
        }
    } else {
        let mut rng = cfg.rng(reps);
        let p = f.modulus();
        for _ in 0..cfg.trials {
            let coeffs: Vec<u32> = (0..d).map(|_| rng.gen_range(0..p)).collect();
            if let Some(t) = visit(&space.combine(&coeffs)) {
                return (Some(t), false);
            }
        }
        (None, false)
    }
}

/// A splitting `M ≅ im(e) ⊕ ker(e)` from a nontrivial idempotent `e`.
#[derive(Debug, Clone)]
pub struct Split {
    pub idempotent: Morphism,
    pub image_basis: Vec<Subspace>,
    pub kernel_basis: Vec<Subspace>,
    pub image: Representation,
    pub kernel: Representation,
}

#[derive(Debug, Clone)]
pub enum Indecomposability {
    Indecomposable {
        /// False when the pseudorandom fallback ran out of trials.
        certain: bool,
        end_dim: usize,
    },
    Decomposable(Box<Split>),
}

impl Indecomposability {
    pub fn is_indecomposable(&self) -> bool {
        matches!(self, Indecomposability::Indecomposable { .. })
    }

    pub fn is_certain(&self) -> bool {
        match self {
            Indecomposability::Indecomposable { certain, .. } => *certain,
            Indecomposability::Decomposable(_) => true,
        }
    }
}

/// Fitting decomposition along `x`: with `n = max dim`, `M = im(x^n) ⊕ ker(x^n)`.
/// Returns a split unless `x` is nilpotent or invertible.
fn fitting_split(alg: &AlgebraPresentation, m: &Representation, x: &Morphism) -> Option<Split> {
    let f = alg.field();
    let n = m.dims().iter().copied().max().unwrap_or(0) as u64;
    let powers: Vec<FieldMatrix> = x.maps.iter().map(|a| a.pow(n).expect("square")).collect();
    let ranks: Vec<usize> = powers.iter().map(FieldMatrix::rank).collect();
    let r: usize = ranks.iter().sum();
    if r == 0 || r == m.total_dim() {
        return None;
    }
    let image_basis: Vec<Subspace> = powers.iter().map(FieldMatrix::column_space).collect();
    let kernel_basis: Vec<Subspace> = powers
        .iter()
        .map(|y| {
            let cols = y.nullspace_basis();
            let mut k = FieldMatrix::zeros(f, y.cols(), cols.len());
            for (j, v) in cols.iter().enumerate() {
                for (i, &e) in v.iter().enumerate() {
                    k.set(i, j, e);
                }
            }
            Subspace::span(&k)
        })
        .collect();
    let idempotent = Morphism {
        maps: image_basis
            .iter()
            .zip(&kernel_basis)
            .map(|(im, ker)| {
                let d = im.ambient();
                let basis = FieldMatrix::hstack(f, d, &[im.basis(), ker.basis()]);
                let mut diag = FieldMatrix::zeros(f, d, d);
                for i in 0..im.dim() {
                    diag.set(i, i, 1);
                }
                basis
                    .mul_unchecked(&diag)
                    .mul_unchecked(&basis.invert().expect("Fitting complement"))
            })
            .collect(),
    };
    let image = restrict(alg, m, &image_basis).expect("image of an endomorphism is a subrepresentation");
    let kernel = restrict(alg, m, &kernel_basis).expect("kernel of an endomorphism is a subrepresentation");
    Some(Split {
        idempotent,
        image_basis,
        kernel_basis,
        image,
        kernel,
    })
}

/// Decides whether `M` has a nontrivial idempotent endomorphism.
pub fn is_indecomposable(
    alg: &AlgebraPresentation,
    m: &Representation,
    cfg: &SearchConfig,
) -> Result<Indecomposability, RepError> {
    if m.is_zero() {
        return Err(RepError::ZeroModule);
    }
    let end = hom_space(alg, m, m);
    let end_dim = end.dim();
    if end_dim == 1 {
        return Ok(Indecomposability::Indecomposable { certain: true, end_dim });
    }
    let (split, complete) = scan_space(&end, cfg, &[m], |x| fitting_split(alg, m, x));
    Ok(match split {
        Some(s) => Indecomposability::Decomposable(Box::new(s)),
        None => Indecomposability::Indecomposable {
            certain: complete,
            end_dim,
        },
    })
}

#[derive(Debug, Clone)]
pub enum IsoResult {
    Isomorphic(Morphism),
    NotIsomorphic { certain: bool },
}

impl IsoResult {
    pub fn is_iso(&self) -> bool {
        matches!(self, IsoResult::Isomorphic(_))
    }

    pub fn is_certain(&self) -> bool {
        match self {
            IsoResult::Isomorphic(_) => true,
            IsoResult::NotIsomorphic { certain } => *certain,
        }
    }
}

/// Looks for a hom `M → N` invertible at every vertex.
pub fn are_isomorphic(
    alg: &AlgebraPresentation,
    m: &Representation,
    n: &Representation,
    cfg: &SearchConfig,
) -> IsoResult {
    if m.dims() != n.dims() {
        return IsoResult::NotIsomorphic { certain: true };
    }
    let hom = hom_space(alg, m, n);
    if hom.dim() == 0 {
        return if m.is_zero() {
            IsoResult::Isomorphic(Morphism::identity(alg.field(), m.dims()))
        } else {
            IsoResult::NotIsomorphic { certain: true }
        };
    }
    let (found, complete) = scan_space(&hom, cfg, &[m, n], |h| {
        // witnesses are verified by exact inversion
        let ok = h.maps.iter().all(|x| x.invert().is_ok());
        ok.then(|| h.clone())
    });
    match found {
        Some(h) => IsoResult::Isomorphic(h),
        None => IsoResult::NotIsomorphic { certain: complete },
    }
}

#[derive(Debug, Clone)]
pub struct Decomposition {
    pub summands: Vec<Representation>,
    /// False if any summand's indecomposability came from an exhausted fallback.
    pub certain: bool,
}

/// Splits repeatedly until every summand is indecomposable.
pub fn decompose(alg: &AlgebraPresentation, m: &Representation, cfg: &SearchConfig) -> Decomposition {
    let mut work = vec![m.clone()];
    let mut summands = Vec::new();
    let mut certain = true;
    while let Some(x) = work.pop() {
        if x.is_zero() {
            continue;
        }
        match is_indecomposable(alg, &x, cfg).expect("nonzero") {
            Indecomposability::Indecomposable { certain: c, .. } => {
                certain &= c;
                summands.push(x);
            }
            Indecomposability::Decomposable(split) => {
                work.push(split.kernel);
                work.push(split.image);
            }
        }
    }
    Decomposition { summands, certain }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::zoo;
    use crate::repcat::{change_basis, direct_sum, tests::rep, CompVector};

    fn cfg() -> SearchConfig {
        SearchConfig::default()
    }

    #[test]
    fn indecomposability_examples() {
        let a = zoo::two_cycle(2);
        let p1 = rep(&a, &[1, 1], &[&[&[1]], &[&[0]]]);
        let p2 = rep(&a, &[1, 1], &[&[&[0]], &[&[1]]]);
        let r = is_indecomposable(&a, &p1, &cfg()).unwrap();
        assert!(r.is_indecomposable() && r.is_certain());

        let sum = direct_sum(&p1, &p2);
        match is_indecomposable(&a, &sum, &cfg()).unwrap() {
            Indecomposability::Decomposable(split) => {
                let e = &split.idempotent;
                assert!(e.intertwines(&a, &sum, &sum));
                assert_eq!(e.compose(e), *e);
                assert!(!e.is_zero());
                assert!(!e.is_iso());
                assert_eq!(split.image.total_dim() + split.kernel.total_dim(), 4);
            }
            other => panic!("expected a split, got {other:?}"),
        }

        let k = zoo::kronecker(2);
        let m = rep(&k, &[1, 1], &[&[&[1]], &[&[1]]]);
        match is_indecomposable(&k, &m, &cfg()).unwrap() {
            Indecomposability::Indecomposable { certain, end_dim } => {
                assert!(certain);
                assert_eq!(end_dim, 1);
            }
            _ => panic!("Kronecker (1,1) is indecomposable"),
        }

        assert_eq!(
            is_indecomposable(&a, &Representation::zero(&a, &[0, 0]), &cfg()).unwrap_err(),
            RepError::ZeroModule
        );
    }

    #[test]
    fn jordan_blocks_are_indecomposable_over_gf3() {
        let l = zoo::truncated_loop(3, 3);
        let j3 = rep(&l, &[3], &[&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]]]);
        let r = is_indecomposable(&l, &j3, &cfg()).unwrap();
        assert!(r.is_indecomposable() && r.is_certain());
        let j2j1 = rep(&l, &[3], &[&[&[0, 0, 0], &[1, 0, 0], &[0, 0, 0]]]);
        assert!(!is_indecomposable(&l, &j2j1, &cfg()).unwrap().is_indecomposable());
    }

    #[test]
    fn isomorphism_examples() {
        let a = zoo::two_cycle(2);
        let p1 = rep(&a, &[1, 1], &[&[&[1]], &[&[0]]]);
        let p2 = rep(&a, &[1, 1], &[&[&[0]], &[&[1]]]);
        let r = are_isomorphic(&a, &p1, &p2, &cfg());
        assert!(!r.is_iso() && r.is_certain());

        match are_isomorphic(&a, &p1, &p1, &cfg()) {
            IsoResult::Isomorphic(h) => assert_eq!(h, Morphism::identity(a.field(), &[1, 1])),
            _ => panic!("M ≅ M"),
        }

        let k = zoo::kronecker(2);
        let x = rep(&k, &[1, 1], &[&[&[1]], &[&[0]]]);
        let y = rep(&k, &[1, 1], &[&[&[0]], &[&[1]]]);
        assert!(!are_isomorphic(&k, &x, &y, &cfg()).is_iso());
    }

    #[test]
    fn isomorphism_after_basis_change() {
        let k = zoo::kronecker(3);
        let f = k.field();
        let m = rep(&k, &[2, 2], &[&[&[1, 0], &[0, 1]], &[&[2, 1], &[0, 2]]]);
        let g = vec![
            FieldMatrix::from_rows(f, &[[1i64, 2], [0, 1]]).unwrap(),
            FieldMatrix::from_rows(f, &[[0i64, 1], [1, 1]]).unwrap(),
        ];
        let n = change_basis(&k, &m, &g).unwrap();
        match are_isomorphic(&k, &m, &n, &cfg()) {
            IsoResult::Isomorphic(h) => assert!(h.intertwines(&k, &m, &n) && h.is_iso()),
            _ => panic!("basis change is an isomorphism"),
        }
    }

    #[test]
    fn decompose_examples() {
        let a = zoo::two_cycle(2);
        let p1 = rep(&a, &[1, 1], &[&[&[1]], &[&[0]]]);
        let p2 = rep(&a, &[1, 1], &[&[&[0]], &[&[1]]]);
        let s1 = Representation::simple(&a, 0);
        let m = direct_sum(&direct_sum(&p1, &p2), &s1);
        let d = decompose(&a, &m, &cfg());
        assert!(d.certain);
        assert_eq!(d.summands.len(), 3);
        for target in [&p1, &p2, &s1] {
            let hits = d
                .summands
                .iter()
                .filter(|s| are_isomorphic(&a, s, target, &cfg()).is_iso())
                .count();
            assert_eq!(hits, 1);
        }

        let d = decompose(&a, &p1, &cfg());
        assert_eq!(d.summands, vec![p1.clone()]);
        assert!(decompose(&a, &Representation::zero(&a, &[0, 0]), &cfg())
            .summands
            .is_empty());
    }

    #[test]
    fn fallback_split_is_conclusive() {
        // End of the zero rep at (4) over GF(3) has 3^16 elements: past the scan limit
        let l = zoo::truncated_loop(3, 2);
        let z = Representation::zero(&l, &[4]);
        let r = is_indecomposable(&l, &z, &cfg()).unwrap();
        assert!(!r.is_indecomposable());
        let d = decompose(&l, &z, &cfg());
        assert_eq!(d.summands.len(), 4);
        assert!(d.certain);
        assert!(d
            .summands
            .iter()
            .all(|s| super::super::comp_vector(s) == CompVector(vec![1])));
    }
}
