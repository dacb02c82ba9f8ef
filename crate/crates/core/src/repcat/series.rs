use crate::field::{FieldMatrix, Subspace};
use crate::presentation::AlgebraPresentation;

use super::{RepError, Representation};

/// `J·U`: at each vertex `j`, the sum of `M_a(U_s(a))` over arrows into `j`.
pub fn radical(alg: &AlgebraPresentation, m: &Representation, sub: &[Subspace]) -> Vec<Subspace> {
    let f = alg.field();
    let q = alg.quiver();
    (0..q.vertex_count())
        .map(|v| {
            let images: Vec<FieldMatrix> = q
                .arrows_into(v)
                .map(|a| m.mat(a).mul_unchecked(sub[q.arrows()[a].source].basis()))
                .collect();
            let refs: Vec<&FieldMatrix> = images.iter().collect();
            Subspace::span(&FieldMatrix::hstack(f, m.dims()[v], &refs))
        })
        .collect()
}

/// `M ⊇ JM ⊇ J²M ⊇ … ⊇ 0`, starting with `M` and ending with `0`.
pub fn radical_filtration(alg: &AlgebraPresentation, m: &Representation) -> Result<Vec<Vec<Subspace>>, RepError> {
    let f = alg.field();
    let mut layers = vec![m.dims().iter().map(|&d| Subspace::full(f, d)).collect::<Vec<_>>()];
    loop {
        let last = layers.last().unwrap();
        let total: usize = last.iter().map(Subspace::dim).sum();
        if total == 0 {
            return Ok(layers);
        }
        let next = radical(alg, m, last);
        let next_total: usize = next.iter().map(Subspace::dim).sum();
        if next_total == total {
            return Err(RepError::NotAdmissible);
        }
        layers.push(next);
    }
}

/// A maximal chain of subrepresentations `0 = chain[0] ⊂ … ⊂ chain[l] = M`.
/// `factors[k]` is the vertex of the simple quotient `chain[k+1] / chain[k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionSeries {
    pub chain: Vec<Vec<Subspace>>,
    pub factors: Vec<usize>,
}

impl CompositionSeries {
    pub fn length(&self) -> usize {
        self.factors.len()
    }

    /// Multiplicity of each vertex simple among the factors.
    pub fn multiplicities(&self, vertices: usize) -> Vec<usize> {
        let mut out = vec![0; vertices];
        for &v in &self.factors {
            out[v] += 1;
        }
        out
    }
}

/// Refines the radical filtration one dimension at a time. Inside each
/// semisimple layer vertices are taken in declaration order and vectors in
/// echelon order.
pub fn composition_series(alg: &AlgebraPresentation, m: &Representation) -> Result<CompositionSeries, RepError> {
    let layers = radical_filtration(alg, m)?;
    let mut current = layers.last().unwrap().clone();
    let mut chain = vec![current.clone()];
    let mut factors = Vec::new();
    for layer in layers.iter().rev().skip(1) {
        for (v, space) in layer.iter().enumerate() {
            let basis = space.basis();
            for c in 0..basis.cols() {
                let col = basis.column_vec(c);
                if current[v].contains(&col) {
                    continue;
                }
                let single = FieldMatrix::column(alg.field(), &col);
                current[v] = current[v].join(&Subspace::span(&single));
                chain.push(current.clone());
                factors.push(v);
            }
        }
    }
    Ok(CompositionSeries { chain, factors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::zoo;
    use crate::repcat::{comp_vector, is_subrepresentation, tests::rep};

    #[test]
    fn two_dim_top_over_a2() {
        // (V, W, φ) with dim V = 2, dim W = 1 and φ ≠ 0 on the arrow 1 → 2
        let a = zoo::a2(2);
        let m = rep(&a, &[2, 1], &[&[&[1, 0]]]);
        let s = composition_series(&a, &m).unwrap();
        assert_eq!(s.length(), 3);
        assert_eq!(s.factors, vec![1, 0, 0]);
        for link in &s.chain {
            assert!(is_subrepresentation(&a, &m, link));
        }
        assert_eq!(s.multiplicities(2), comp_vector(&m).0);
    }

    #[test]
    fn simple_series() {
        let a = zoo::two_cycle(2);
        let s1 = Representation::simple(&a, 0);
        let s = composition_series(&a, &s1).unwrap();
        assert_eq!(s.factors, vec![0]);
        assert_eq!(s.chain.len(), 2);
        assert_eq!(s.chain[0][0].dim(), 0);
        assert_eq!(s.chain[1][0].dim(), 1);
    }

    #[test]
    fn jordan_block_series() {
        let l = zoo::truncated_loop(2, 2);
        let j2 = rep(&l, &[2], &[&[&[0, 0], &[1, 0]]]);
        let s = composition_series(&l, &j2).unwrap();
        assert_eq!(s.length(), 2);
        // the middle term is the socle, spanned by e2
        assert_eq!(s.chain[1][0].basis().column_vec(0), vec![0, 1]);

        let l3 = zoo::truncated_loop(2, 3);
        let j3 = rep(&l3, &[3], &[&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]]]);
        let layers = radical_filtration(&l3, &j3).unwrap();
        let dims: Vec<usize> = layers.iter().map(|l| l[0].dim()).collect();
        assert_eq!(dims, vec![3, 2, 1, 0]);
    }

    #[test]
    fn non_nilpotent_action_is_rejected() {
        let free = zoo::truncated_loop(2, 0);
        let m = rep(&free, &[1], &[&[&[1]]]);
        assert_eq!(composition_series(&free, &m).unwrap_err(), RepError::NotAdmissible);
    }

    #[test]
    fn radical_square_zero_reps_have_zero_second_radical() {
        let a = zoo::two_cycle(3);
        let m = rep(&a, &[2, 1], &[&[&[1, 2]], &[&[0], &[0]]]);
        let layers = radical_filtration(&a, &m).unwrap();
        assert!(layers.len() <= 3);
    }
}
