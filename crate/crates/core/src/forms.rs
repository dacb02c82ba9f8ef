//! Integer quadratic forms attached to a bimodule of shape `(a, b)`:
//! `q(X,Y) = f1·X² + f2·Y² − m·XY`, the triangular matrix `((a, −ab), (0, b))`,
//! the finite-type test `ab ≤ 3`, null vectors and the defect for `ab = 4`.

use thiserror::Error;

/// Null vectors are searched among primitive vectors with entries up to this.
pub const NULL_SEARCH_LIMIT: u64 = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormsError {
    #[error("{name} must be a positive integer")]
    NonPositive { name: &'static str },
    #[error("defect defined only for ab=4 (got a={a}, b={b})")]
    DefectUndefined { a: u64, b: u64 },
}

/// The two side dimensions of a bimodule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BimoduleShape {
    pub a: u64,
    pub b: u64,
}

impl BimoduleShape {
    pub fn new(a: u64, b: u64) -> Result<Self, FormsError> {
        if a == 0 {
            return Err(FormsError::NonPositive { name: "a" });
        }
        if b == 0 {
            return Err(FormsError::NonPositive { name: "b" });
        }
        Ok(BimoduleShape { a, b })
    }

    /// The form with these centre degrees when the bookkeeping
    /// `a·f2 = b·f1 = m` works out.
    pub fn consistent_spec(&self, f1: u64, f2: u64) -> Option<FormSpec> {
        let m = self.a * f2;
        (f1 > 0 && f2 > 0 && m == self.b * f1).then_some(FormSpec { f1, f2, m })
    }
}

/// Coefficients of `q(X,Y) = f1·X² + f2·Y² − m·XY`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FormSpec {
    pub f1: u64,
    pub f2: u64,
    pub m: u64,
}

impl FormSpec {
    pub fn new(f1: u64, f2: u64, m: u64) -> Result<Self, FormsError> {
        for (name, v) in [("f1", f1), ("f2", f2), ("m", m)] {
            if v == 0 {
                return Err(FormsError::NonPositive { name });
            }
        }
        Ok(FormSpec { f1, f2, m })
    }
}

pub fn eval_q(spec: &FormSpec, x: i64, y: i64) -> i64 {
    spec.f1 as i64 * x * x + spec.f2 as i64 * y * y - spec.m as i64 * x * y
}

pub fn tilde_matrix(shape: &BimoduleShape) -> [[i64; 2]; 2] {
    let (a, b) = (shape.a as i64, shape.b as i64);
    [[a, -a * b], [0, b]]
}

/// `(x, y) · T · (x, y)ᵀ` for the triangular matrix.
pub fn eval_tilde(shape: &BimoduleShape, x: i64, y: i64) -> i64 {
    let t = tilde_matrix(shape);
    t[0][0] * x * x + (t[0][1] + t[1][0]) * x * y + t[1][1] * y * y
}

pub fn is_finite_type(shape: &BimoduleShape) -> bool {
    shape.a * shape.b <= 3
}

/// Discriminant test for the binary form.
pub fn is_positive_definite(spec: &FormSpec) -> bool {
    (spec.m as u128).pow(2) < 4 * spec.f1 as u128 * spec.f2 as u128
}

/// A vector with non-positive form value, and whether it was found in the
/// swapped orientation `q(y, x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NullVector {
    pub vector: (u64, u64),
    pub swapped: bool,
    pub value: i64,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn scan(q: impl Fn(i64, i64) -> i64) -> Option<NullVector> {
    for x in 0..=NULL_SEARCH_LIMIT {
        for y in 0..=NULL_SEARCH_LIMIT {
            if gcd(x, y) != 1 {
                continue;
            }
            let (xi, yi) = (x as i64, y as i64);
            for (swapped, value) in [(false, q(xi, yi)), (true, q(yi, xi))] {
                if value <= 0 {
                    return Some(NullVector {
                        vector: (x, y),
                        swapped,
                        value,
                    });
                }
            }
        }
    }
    None
}

/// First primitive nonnegative vector (lexicographic) on which the
/// triangular form is `≤ 0` in either orientation.
pub fn find_null_vector(shape: &BimoduleShape) -> Option<NullVector> {
    scan(|x, y| eval_tilde(shape, x, y))
}

pub fn find_null_vector_spec(spec: &FormSpec) -> Option<NullVector> {
    scan(|x, y| eval_q(spec, x, y))
}

/// `d1 − d2` for shape (2,2); `2·d1 − d2` for (1,4) and (4,1).
pub fn defect(shape: &BimoduleShape, dimvec: (i64, i64)) -> Result<i64, FormsError> {
    let (lo, hi) = (shape.a.min(shape.b), shape.a.max(shape.b));
    match (lo, hi) {
        (2, 2) => Ok(dimvec.0 - dimvec.1),
        (1, 4) => Ok(2 * dimvec.0 - dimvec.1),
        _ => Err(FormsError::DefectUndefined { a: shape.a, b: shape.b }),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpeciesVerdict {
    Pass,
    /// Index of the first pair whose dimension product is at least 4.
    Fail(usize),
}

pub fn species_criterion(pairs: &[(u64, u64)]) -> SpeciesVerdict {
    pairs
        .iter()
        .position(|&(l, r)| l * r >= 4)
        .map_or(SpeciesVerdict::Pass, SpeciesVerdict::Fail)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn shape(a: u64, b: u64) -> BimoduleShape {
        BimoduleShape::new(a, b).unwrap()
    }

    fn spec(f1: u64, f2: u64, m: u64) -> FormSpec {
        FormSpec::new(f1, f2, m).unwrap()
    }

    fn box_oracle(s: &FormSpec) -> bool {
        const B: i64 = 50;
        (-B..=B).all(|x| (-B..=B).all(|y| (x, y) == (0, 0) || eval_q(s, x, y) > 0))
    }

    #[test]
    fn eval_examples() {
        assert_eq!(eval_q(&spec(2, 2, 4), 1, 1), 0);
        assert_eq!(eval_q(&spec(3, 5, 7), 0, 0), 0);
        assert_eq!(eval_q(&spec(1, 1, 1), 2, 3), 7);
    }

    #[test]
    fn tilde_examples() {
        assert_eq!(tilde_matrix(&shape(2, 2)), [[2, -4], [0, 2]]);
        assert_eq!(tilde_matrix(&shape(1, 1)), [[1, -1], [0, 1]]);
        assert_eq!(tilde_matrix(&shape(4, 1)), [[4, -4], [0, 1]]);
    }

    #[test]
    fn finite_type_examples() {
        assert!(is_finite_type(&shape(1, 3)));
        assert!(!is_finite_type(&shape(2, 2)));
        assert!(is_finite_type(&shape(1, 1)));
    }

    #[test]
    fn definiteness_examples() {
        assert!(is_positive_definite(&spec(1, 1, 1)));
        assert!(box_oracle(&spec(1, 1, 1)));
        assert!(!is_positive_definite(&spec(2, 2, 4)));
        assert!(!is_positive_definite(&spec(1, 4, 4)));
        assert_eq!(eval_q(&spec(1, 4, 4), 2, 1), 0);
    }

    #[test]
    fn null_vector_examples() {
        assert_eq!(find_null_vector(&shape(2, 2)).unwrap().vector, (1, 1));
        let n = find_null_vector(&shape(4, 1)).unwrap();
        assert_eq!((n.vector, n.swapped, n.value), ((1, 2), false, 0));
        let n = find_null_vector(&shape(1, 4)).unwrap();
        assert_eq!((n.vector, n.swapped, n.value), ((1, 2), true, 0));
        // the unswapped matrix orientation gives q(1,2) = 9 for (1,4)
        assert_eq!(eval_tilde(&shape(1, 4), 1, 2), 9);
        assert_eq!(find_null_vector(&shape(1, 2)), None);
    }

    #[test]
    fn defect_examples() {
        assert_eq!(defect(&shape(2, 2), (1, 1)), Ok(0));
        assert_eq!(defect(&shape(1, 4), (1, 2)), Ok(0));
        assert_eq!(defect(&shape(2, 2), (2, 1)), Ok(1));
        assert_eq!(
            defect(&shape(1, 3), (1, 1)),
            Err(FormsError::DefectUndefined { a: 1, b: 3 })
        );
        assert_eq!(
            FormsError::DefectUndefined { a: 1, b: 3 }.to_string(),
            "defect defined only for ab=4 (got a=1, b=3)"
        );
    }

    #[test]
    fn species_examples() {
        assert_eq!(species_criterion(&[(1, 1), (1, 3)]), SpeciesVerdict::Pass);
        assert_eq!(species_criterion(&[(1, 1), (2, 2)]), SpeciesVerdict::Fail(1));
        assert_eq!(species_criterion(&[]), SpeciesVerdict::Pass);
    }

    #[test]
    fn zero_inputs_are_rejected() {
        assert!(BimoduleShape::new(0, 1).is_err());
        assert!(FormSpec::new(1, 0, 1).is_err());
    }

    #[test]
    fn consistent_pairings_agree() {
        for a in 1..=6 {
            for b in 1..=6 {
                let sh = shape(a, b);
                for f1 in 1..=4 {
                    for f2 in 1..=4 {
                        let Some(s) = sh.consistent_spec(f1, f2) else { continue };
                        assert_eq!(s.m * s.m, a * b * f1 * f2);
                        let pd = is_positive_definite(&s);
                        assert_eq!(pd, is_finite_type(&sh), "{sh:?} {s:?}");
                        assert_eq!(pd, box_oracle(&s), "{s:?}");
                        assert_eq!(find_null_vector_spec(&s).is_none(), pd, "{s:?}");
                        assert_eq!(find_null_vector(&sh).is_none(), is_finite_type(&sh));
                        // a·q(x,y) = f1·q̃(x,y)
                        for x in -4..=4 {
                            for y in -4..=4 {
                                assert_eq!(a as i64 * eval_q(&s, x, y), f1 as i64 * eval_tilde(&sh, x, y));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn symmetrized_matrix_agrees() {
        for (f1, f2, m) in [(1, 1, 1), (2, 2, 4), (1, 4, 4), (3, 2, 5)] {
            let s = spec(f1, f2, m);
            let (f1, f2, m) = (f1 as i64, f2 as i64, m as i64);
            for x in -5..=5 {
                for y in -5..=5 {
                    let twice = 2 * f1 * x * x - 2 * m * x * y + 2 * f2 * y * y;
                    assert_eq!(twice, 2 * eval_q(&s, x, y));
                    if m % 2 == 0 {
                        assert_eq!(f1 * x * x - m * x * y + f2 * y * y, eval_q(&s, x, y));
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn defect_vanishes_on_diagonal_and_is_additive(n in 0i64..1000, u in (-50i64..50, -50i64..50), v in (-50i64..50, -50i64..50)) {
            let s22 = shape(2, 2);
            prop_assert_eq!(defect(&s22, (n, n)).unwrap(), 0);
            for sh in [s22, shape(1, 4), shape(4, 1)] {
                let sum = (u.0 + v.0, u.1 + v.1);
                prop_assert_eq!(defect(&sh, sum).unwrap(), defect(&sh, u).unwrap() + defect(&sh, v).unwrap());
            }
        }

        #[test]
        fn discriminant_matches_box_oracle(f1 in 1u64..12, f2 in 1u64..12, m in 1u64..20) {
            let s = spec(f1, f2, m);
            prop_assert_eq!(is_positive_definite(&s), box_oracle(&s));
        }
    }
}
