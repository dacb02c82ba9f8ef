//! The separated quiver of a radical-square-zero algebra and the functor
//! `F(M) = (M/JM, JM, f)` into its representations, plus a bounded
//! verification that `F` behaves as a stable equivalence on enumerated data.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use crate::classify::{
    check_admissible, classify_in_pool, dimvecs_up_to, ClassifyConfig, ClassifyError, IsoClassTable, Skipped, Verdict,
};
use crate::field::{FieldMatrix, Subspace};
use crate::presentation::{AlgebraPresentation, AlgebraSpec, ArrowSpec, FieldSpec, PresentationError};
use crate::repcat::{are_isomorphic, is_indecomposable, CompVector, Morphism, Representation};

/// Cap on witnesses recorded per check.
const MAX_WITNESSES: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeparatedError {
    #[error("radical square not zero")]
    NotRadicalSquareZero,
    #[error("separated quiver: {0}")]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
}

/// `Γ`: vertices `V ⊔ V'`, each arrow `a: i → j` becomes `a: i → j'`.
#[derive(Debug, Clone)]
pub struct SeparatedPresentation {
    pub gamma: AlgebraPresentation,
    /// Original vertex `v` ↦ (unprimed index, primed index) in `gamma`.
    pub vertex_map: Vec<(usize, usize)>,
}

impl SeparatedPresentation {
    fn original_count(&self) -> usize {
        self.vertex_map.len()
    }
}

pub fn separated_presentation(alg: &AlgebraPresentation) -> Result<SeparatedPresentation, SeparatedError> {
    if !alg.is_radical_square_zero() {
        return Err(SeparatedError::NotRadicalSquareZero);
    }
    let q = alg.quiver();
    let names = q.vertices();
    let primed = |v: usize| format!("{}'", names[v]);
    let mut vertices: Vec<String> = names.to_vec();
    vertices.extend((0..names.len()).map(primed));
    let arrows = q
        .arrows()
        .iter()
        .map(|a| ArrowSpec {
            name: a.name.clone(),
            from: names[a.source].clone(),
            to: primed(a.target),
        })
        .collect();
    let spec = AlgebraSpec {
        field: FieldSpec {
            p: alg.field().modulus() as u64,
        },
        vertices,
        arrows,
        relations: Vec::new(),
    };
    let n = names.len();
    Ok(SeparatedPresentation {
        gamma: AlgebraPresentation::from_spec(&spec)?,
        vertex_map: (0..n).map(|v| (v, n + v)).collect(),
    })
}

/// `F(M)` together with the basis data used to build it.
#[derive(Debug, Clone)]
pub struct FunctorImage {
    pub image: Representation,
    /// `(JM)_v` in column-echelon form.
    pub radical: Vec<Subspace>,
    /// `M_v → (M/JM)_v` in complement coordinates.
    pub top_maps: Vec<FieldMatrix>,
    /// A section `(M/JM)_v → M_v` of the quotient map.
    pub top_sections: Vec<FieldMatrix>,
}

#[allow(non_snake_case)]
pub fn apply_F(sep: &SeparatedPresentation, alg: &AlgebraPresentation, m: &Representation) -> FunctorImage {
    let f = alg.field();
    let q = alg.quiver();
    let n = sep.original_count();
    let radical: Vec<Subspace> = (0..n)
        .map(|v| {
            let incoming: Vec<&FieldMatrix> = q.arrows_into(v).map(|a| m.mat(a)).collect();
            Subspace::span(&FieldMatrix::hstack(f, m.dims()[v], &incoming))
        })
        .collect();
    let top_maps: Vec<FieldMatrix> = radical.iter().map(Subspace::quotient_map).collect();
    let top_sections: Vec<FieldMatrix> = radical.iter().map(Subspace::complement_section).collect();

    let mut dims: Vec<usize> = top_maps.iter().map(FieldMatrix::rows).collect();
    dims.extend(radical.iter().map(Subspace::dim));
    let mats = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, arrow)| {
            let lifted = m.mat(a).mul_unchecked(&top_sections[arrow.source]);
            radical[arrow.target]
                .coordinates_of_columns(&lifted)
                .expect("arrow images lie in the radical")
        })
        .collect();
    FunctorImage {
        image: Representation::from_parts_unchecked(dims, mats),
        radical,
        top_maps,
        top_sections,
    }
}

/// `F(g)` for `g: M → N`: the induced map on tops and the restriction to radicals.
#[allow(non_snake_case)]
pub fn apply_F_morphism(fm: &FunctorImage, fn_: &FunctorImage, g: &Morphism) -> Morphism {
    let tops = g
        .maps
        .iter()
        .enumerate()
        .map(|(v, gv)| fn_.top_maps[v].mul_unchecked(&gv.mul_unchecked(&fm.top_sections[v])));
    let rads = g.maps.iter().enumerate().map(|(v, gv)| {
        fn_.radical[v]
            .coordinates_of_columns(&gv.mul_unchecked(fm.radical[v].basis()))
            .expect("morphisms preserve the radical")
    });
    Morphism {
        maps: tops.collect::<Vec<_>>().into_iter().chain(rads).collect(),
    }
}

/// Full row rank of the stacked incoming maps at every primed vertex.
pub fn phi_is_epi(sep: &SeparatedPresentation, x: &Representation) -> bool {
    let g = &sep.gamma;
    sep.vertex_map.iter().all(|&(_, pv)| {
        let incoming: Vec<&FieldMatrix> = g.quiver().arrows_into(pv).map(|a| x.mat(a)).collect();
        FieldMatrix::hstack(g.field(), x.dims()[pv], &incoming).rank() == x.dims()[pv]
    })
}

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub pass: bool,
    /// The check only covers data up to the length bound.
    pub bounded: bool,
    pub checked: usize,
    pub witnesses: Vec<Value>,
}

impl CheckResult {
    fn new(name: &'static str, bounded: bool) -> Self {
        CheckResult {
            name,
            pass: true,
            bounded,
            checked: 0,
            witnesses: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> Value) {
        self.checked += 1;
        if !ok {
            self.pass = false;
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(witness());
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct SeparatedReport {
    pub bound: usize,
    pub p: u32,
    pub seed: u64,
    pub verdict: Verdict,
    pub checks: Vec<CheckResult>,
    pub lambda_classes: usize,
    pub gamma_classes: usize,
    pub lambda_skipped: Vec<Skipped>,
    pub gamma_skipped: Vec<Skipped>,
    pub probabilistic: bool,
    pub gamma: AlgebraPresentation,
}

impl SeparatedReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

struct MemberOutcome {
    length: bool,
    epi: bool,
    indecomposable: bool,
    iso_to_class: Option<bool>,
    certain: bool,
    image: Representation,
}

/// Enumerates indecomposables on both sides up to `bound` and checks that `F`
/// preserves indecomposability and length, reflects isomorphism, hits every
/// Γ-indecomposable with epi structure map, and misses only primed simples.
pub fn verify_separated(
    alg: &AlgebraPresentation,
    bound: usize,
    cfg: &ClassifyConfig,
) -> Result<SeparatedReport, SeparatedError> {
    let sep = separated_presentation(alg)?;
    check_admissible(alg)?;
    let pool = cfg.pool()?;
    let search = cfg.search;
    let gamma = &sep.gamma;
    let n = sep.original_count();

    let mut indec = CheckResult::new("indecomposability", false);
    let mut iso = CheckResult::new("isomorphism", false);
    let mut epi = CheckResult::new("epi-image", true);
    let mut non_epi = CheckResult::new("non-epi-simple", false);
    let mut length = CheckResult::new("length", false);
    let mut probabilistic = false;
    let mut lambda_skipped = Vec::new();
    let mut lambda_classes = 0;
    let mut images: BTreeMap<Vec<usize>, Vec<Representation>> = BTreeMap::new();

    for dv in dimvecs_up_to(n, bound) {
        let (table, members): (IsoClassTable, _) = match classify_in_pool(alg, &dv, cfg, &pool, true) {
            Ok(r) => r,
            Err(ClassifyError::Budget { dimvec, entries, .. }) => {
                lambda_skipped.push(Skipped { dimvec, entries });
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        probabilistic |= !table.certain;
        lambda_classes += table.count();
        let rep_images: Vec<Representation> = table
            .representatives
            .iter()
            .map(|r| apply_F(&sep, alg, r).image)
            .collect();

        let outcomes: Vec<MemberOutcome> = pool.install(|| {
            members
                .par_iter()
                .map(|mem| {
                    let fm = apply_F(&sep, alg, &mem.rep).image;
                    let ind = is_indecomposable(gamma, &fm, &search).expect("length is preserved");
                    let mut certain = ind.is_certain();
                    let iso_to_class = mem.class.map(|c| {
                        let r = are_isomorphic(gamma, &fm, &rep_images[c], &search);
                        certain &= r.is_certain();
                        r.is_iso()
                    });
                    MemberOutcome {
                        length: fm.total_dim() == mem.rep.total_dim(),
                        epi: phi_is_epi(&sep, &fm),
                        indecomposable: ind.is_indecomposable() == mem.class.is_some(),
                        iso_to_class,
                        certain,
                        image: fm,
                    }
                })
                .collect()
        });

        for (mem, out) in members.iter().zip(&outcomes) {
            probabilistic |= !out.certain;
            let witness = || json!({"lambda": mem.rep.to_json(alg), "gamma": out.image.to_json(gamma)});
            length.record(out.length, witness);
            indec.record(out.indecomposable, witness);
            epi.record(out.epi, witness);
            if let Some(ok) = out.iso_to_class {
                iso.record(ok, witness);
            }
        }
        for i in 0..rep_images.len() {
            for j in i + 1..rep_images.len() {
                let r = are_isomorphic(gamma, &rep_images[i], &rep_images[j], &search);
                probabilistic |= !r.is_certain();
                iso.record(!r.is_iso(), || {
                    json!({
                        "lambda": [table.representatives[i].to_json(alg), table.representatives[j].to_json(alg)],
                        "gamma": [rep_images[i].to_json(gamma), rep_images[j].to_json(gamma)],
                    })
                });
            }
        }
        images.insert(dv, rep_images);
    }

    let skipped_lambda: Vec<&[usize]> = lambda_skipped.iter().map(|s| s.dimvec.as_slice()).collect();
    let mut gamma_skipped = Vec::new();
    let mut gamma_classes = 0;
    for gdv in dimvecs_up_to(2 * n, bound) {
        let table = match classify_in_pool(gamma, &gdv, cfg, &pool, false) {
            Ok((t, _)) => t,
            Err(ClassifyError::Budget { dimvec, entries, .. }) => {
                gamma_skipped.push(Skipped { dimvec, entries });
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        probabilistic |= !table.certain;
        gamma_classes += table.count();
        let lambda_dv: Vec<usize> = (0..n).map(|v| gdv[v] + gdv[n + v]).collect();
        for x in &table.representatives {
            let witness = || json!({"gamma": x.to_json(gamma)});
            if phi_is_epi(&sep, x) {
                if skipped_lambda.contains(&lambda_dv.as_slice()) {
                    continue;
                }
                let candidates = images.get(&lambda_dv).map(Vec::as_slice).unwrap_or(&[]);
                let hit = candidates.iter().any(|y| {
                    let r = are_isomorphic(gamma, x, y, &search);
                    probabilistic |= !r.is_certain();
                    r.is_iso()
                });
                epi.record(hit, witness);
            } else {
                let primed_simple = x.total_dim() == 1 && (n..2 * n).any(|v| x.dims()[v] == 1);
                non_epi.record(primed_simple, witness);
            }
        }
    }

    let checks = vec![indec, iso, epi, non_epi, length];
    let verdict = if !checks.iter().all(|c| c.pass) {
        Verdict::Fails
    } else if probabilistic || !lambda_skipped.is_empty() || !gamma_skipped.is_empty() {
        Verdict::Inconclusive
    } else {
        Verdict::HoldsUpToBound
    };
    Ok(SeparatedReport {
        bound,
        p: alg.field().modulus(),
        seed: search.seed,
        verdict,
        checks,
        lambda_classes,
        gamma_classes,
        lambda_skipped,
        gamma_skipped,
        probabilistic,
        gamma: sep.gamma,
    })
}

/// `(dim (M/JM)_v …, dim (JM)_v …)`.
pub fn expected_image_vector(fi: &FunctorImage) -> CompVector {
    let mut v: Vec<usize> = fi.top_maps.iter().map(FieldMatrix::rows).collect();
    v.extend(fi.radical.iter().map(Subspace::dim));
    CompVector(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::zoo;
    use crate::repcat::{are_isomorphic, comp_vector, direct_sum, hom_space, tests::rep};

    #[test]
    fn gamma_examples() {
        let s = separated_presentation(&zoo::two_cycle(2)).unwrap();
        let q = s.gamma.quiver();
        assert_eq!(q.vertices(), ["1", "2", "1'", "2'"]);
        let ends: Vec<(usize, usize)> = q.arrows().iter().map(|a| (a.source, a.target)).collect();
        assert_eq!(ends, vec![(0, 3), (1, 2)]);
        assert!(s.gamma.relations().is_empty());
        assert!(s.gamma.is_radical_square_zero());

        let s = separated_presentation(&zoo::single_vertex(2)).unwrap();
        assert_eq!(s.gamma.quiver().vertices(), ["1", "1'"]);
        assert_eq!(s.gamma.quiver().arrow_count(), 0);

        let s = separated_presentation(&zoo::truncated_loop(2, 2)).unwrap();
        let a = &s.gamma.quiver().arrows()[0];
        assert_eq!((a.source, a.target), (0, 1));
        assert_eq!(s.vertex_map, vec![(0, 1)]);
    }

    #[test]
    fn rejects_nonzero_radical_square() {
        let e = separated_presentation(&zoo::truncated_loop(2, 3)).unwrap_err();
        assert_eq!(e, SeparatedError::NotRadicalSquareZero);
        assert_eq!(e.to_string(), "radical square not zero");
    }

    #[test]
    fn functor_examples() {
        let a = zoo::two_cycle(2);
        let s = separated_presentation(&a).unwrap();
        let p1 = rep(&a, &[1, 1], &[&[&[1]], &[&[0]]]);
        let f = apply_F(&s, &a, &p1);
        assert_eq!(f.image.dims(), &[1, 0, 0, 1]);
        assert_eq!(f.image.mat(0).to_rows(), vec![vec![1]]);
        assert!(f.image.mat(1).is_zero());
        assert!(phi_is_epi(&s, &f.image));

        let s1 = Representation::simple(&a, 0);
        assert_eq!(apply_F(&s, &a, &s1).image, Representation::simple(&s.gamma, 0));

        let s2 = Representation::simple(&a, 1);
        let sum = apply_F(&s, &a, &direct_sum(&p1, &s2)).image;
        let parts = direct_sum(&f.image, &apply_F(&s, &a, &s2).image);
        assert!(are_isomorphic(&s.gamma, &sum, &parts, &Default::default()).is_iso());
    }

    #[test]
    fn epi_examples() {
        let s = separated_presentation(&zoo::two_cycle(2)).unwrap();
        assert!(!phi_is_epi(&s, &Representation::simple(&s.gamma, 3)));
        assert!(phi_is_epi(&s, &Representation::zero(&s.gamma, &[0, 0, 0, 0])));
    }

    #[test]
    fn image_vector_bookkeeping() {
        let a = zoo::cycle(3, 3, 2);
        let s = separated_presentation(&a).unwrap();
        let m = Representation::from_rows(
            &a,
            &[2, 1, 1],
            &[vec![vec![1, 0]], vec![vec![0]], vec![vec![0], vec![1]]],
        )
        .unwrap();
        let f = apply_F(&s, &a, &m);
        assert_eq!(comp_vector(&f.image), expected_image_vector(&f));
        assert_eq!(f.image.total_dim(), m.total_dim());
        assert_eq!(comp_vector(&f.image).0, vec![1, 0, 1, 1, 1, 0]);
    }

    #[test]
    fn morphisms_map_to_morphisms() {
        let a = zoo::two_cycle(3);
        let s = separated_presentation(&a).unwrap();
        // P1 ⊕ S1
        let m = Representation::from_rows(&a, &[2, 1], &[vec![vec![1, 0]], vec![vec![0], vec![0]]]).unwrap();
        let n = rep(&a, &[1, 1], &[&[&[1]], &[&[0]]]);
        let (fm, fn_) = (apply_F(&s, &a, &m), apply_F(&s, &a, &n));
        let h = hom_space(&a, &m, &n);
        assert!(h.dim() > 0);
        for g in h.basis() {
            assert!(apply_F_morphism(&fm, &fn_, &g).intertwines(&s.gamma, &fm.image, &fn_.image));
        }
        let id = Morphism::identity(a.field(), m.dims());
        assert_eq!(
            apply_F_morphism(&fm, &fm, &id),
            Morphism::identity(a.field(), fm.image.dims())
        );
    }

    #[test]
    fn verification_on_small_examples() {
        let cfg = ClassifyConfig::default();
        let r = verify_separated(&zoo::two_cycle(2), 3, &cfg).unwrap();
        assert!(r.all_pass(), "{:?}", r.checks);
        assert_eq!(r.verdict, Verdict::HoldsUpToBound);
        assert_eq!(r.lambda_classes, 4);

        let r = verify_separated(&zoo::truncated_loop(2, 2), 3, &cfg).unwrap();
        assert!(r.all_pass());
        assert_eq!(r.gamma_classes, 3);
    }

    #[test]
    fn verification_needs_radical_square_zero() {
        let a = zoo::a2(2).add_relations(&[]).unwrap();
        assert!(verify_separated(&a, 2, &ClassifyConfig::default()).is_ok());
        let long = zoo::cycle(2, 3, 3);
        assert_eq!(
            verify_separated(&long, 2, &ClassifyConfig::default()).unwrap_err(),
            SeparatedError::NotRadicalSquareZero
        );
    }
}
