//! Exhaustive enumeration of representations with a fixed dimension vector,
//! classification of the indecomposables up to isomorphism, and the bounded
//! check that indecomposables are determined by their composition factors.

use rayon::prelude::*;
use rayon::ThreadPool;
use thiserror::Error;

use crate::field::FieldMatrix;
use crate::presentation::AlgebraPresentation;
use crate::repcat::{
    are_isomorphic, is_indecomposable, CompVector, Indecomposability, IsoResult, Representation, SearchConfig,
};

/// Nilpotency certificates are searched up to this path length.
pub const NILPOTENCY_SEARCH_LIMIT: usize = 64;

const CHUNK: usize = 2048;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("enumeration budget exceeded at {dimvec}: {p}^{entries} assignments > 2^{budget_log2}")]
    Budget {
        dimvec: CompVector,
        entries: usize,
        p: u32,
        budget_log2: u32,
    },
    #[error("dimension vector has {found} entries, quiver has {expected} vertices")]
    DimvecLength { expected: usize, found: usize },
    #[error("not admissible: the quiver has oriented cycles and no monomial nilpotency certificate up to length {0}")]
    NotAdmissible(usize),
    #[error("thread pool: {0}")]
    ThreadPool(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassifyConfig {
    /// Enumerate only while `p^entries ≤ 2^budget_log2`.
    pub budget_log2: u32,
    pub threads: usize,
    pub search: SearchConfig,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        ClassifyConfig {
            budget_log2: 24,
            threads: 1,
            search: SearchConfig::default(),
        }
    }
}

impl ClassifyConfig {
    pub(crate) fn pool(&self) -> Result<ThreadPool, ClassifyError> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.threads.max(1))
            .build()
            .map_err(|e| ClassifyError::ThreadPool(e.to_string()))
    }
}

fn within_budget(p: u32, entries: usize, budget_log2: u32) -> bool {
    let limit = 1u128 << budget_log2.min(127);
    u32::try_from(entries)
        .ok()
        .and_then(|e| (p as u128).checked_pow(e))
        .is_some_and(|n| n <= limit)
}

/// Lexicographic stream of every matrix tuple satisfying the relations.
/// Arrow 0 is the most significant; inside a matrix, row-major with the last
/// entry varying fastest. Relations are checked as soon as all of their
/// arrows are assigned.
pub struct RepEnumerator<'a> {
    alg: &'a AlgebraPresentation,
    current: Representation,
    checks: Vec<Vec<usize>>,
    assigned: usize,
    started: bool,
    done: bool,
}

impl<'a> RepEnumerator<'a> {
    fn increment(&mut self, k: usize) -> bool {
        let p = self.alg.field().modulus();
        let m: &mut FieldMatrix = &mut self.current.mats_mut()[k];
        let (rows, cols) = m.shape();
        for idx in (0..rows * cols).rev() {
            let (r, c) = (idx / cols, idx % cols);
            let v = m.get(r, c) + 1;
            if v < p {
                m.set(r, c, v);
                return true;
            }
            m.set(r, c, 0);
        }
        false
    }

    /// Moves to the next candidate at arrow `k` or earlier.
    fn backtrack(&mut self, mut k: usize) -> bool {
        loop {
            if self.increment(k) {
                self.assigned = k;
                return true;
            }
            if k == 0 {
                return false;
            }
            k -= 1;
        }
    }

    fn level_ok(&self, k: usize) -> bool {
        self.checks[k].iter().all(|&r| self.current.relation_holds(self.alg, r))
    }
}

impl Iterator for RepEnumerator<'_> {
    type Item = Representation;

    fn next(&mut self) -> Option<Representation> {
        if self.done {
            return None;
        }
        let n = self.checks.len();
        if !self.started {
            self.started = true;
        } else if n == 0 || !self.backtrack(n - 1) {
            self.done = true;
            return None;
        }
        loop {
            if self.assigned == n {
                return Some(self.current.clone());
            }
            if self.level_ok(self.assigned) {
                self.assigned += 1;
            } else if !self.backtrack(self.assigned) {
                self.done = true;
                return None;
            }
        }
    }
}

pub fn enumerate_reps<'a>(
    alg: &'a AlgebraPresentation,
    dimvec: &[usize],
    budget_log2: u32,
) -> Result<RepEnumerator<'a>, ClassifyError> {
    let nv = alg.quiver().vertex_count();
    if dimvec.len() != nv {
        return Err(ClassifyError::DimvecLength {
            expected: nv,
            found: dimvec.len(),
        });
    }
    let entries = alg.entry_count(dimvec);
    let p = alg.field().modulus();
    if !within_budget(p, entries, budget_log2) {
        return Err(ClassifyError::Budget {
            dimvec: CompVector(dimvec.to_vec()),
            entries,
            p,
            budget_log2,
        });
    }
    let mut checks = vec![Vec::new(); alg.quiver().arrow_count()];
    for (r, rel) in alg.relations().iter().enumerate() {
        if let Some(k) = rel.max_arrow() {
            checks[k].push(r);
        }
    }
    Ok(RepEnumerator {
        alg,
        current: Representation::zero(alg, dimvec),
        checks,
        assigned: 0,
        started: false,
        done: false,
    })
}

/// Isomorphism classes of indecomposables with one dimension vector.
#[derive(Debug, Clone)]
pub struct IsoClassTable {
    pub dimvec: CompVector,
    /// Lexicographically least member of each class, in discovery order.
    pub representatives: Vec<Representation>,
    /// Number of enumerated matrix tuples in each class.
    pub class_sizes: Vec<usize>,
    /// All tuples enumerated for this dimension vector.
    pub enumerated: usize,
    /// False if any indecomposability or non-isomorphism verdict came from
    /// an exhausted pseudorandom search.
    pub certain: bool,
}

impl IsoClassTable {
    pub fn count(&self) -> usize {
        self.representatives.len()
    }
}

/// An enumerated tuple with its class index (`None` when decomposable).
#[derive(Debug, Clone)]
pub struct Member {
    pub rep: Representation,
    pub class: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Signature {
    end_dim: usize,
    ranks: Vec<usize>,
}

fn match_class(
    alg: &AlgebraPresentation,
    rep: &Representation,
    sig: &Signature,
    reps: &[Representation],
    sigs: &[Signature],
    offset: usize,
    cfg: &SearchConfig,
) -> (Option<usize>, bool) {
    let mut certain = true;
    for (i, (r, s)) in reps.iter().zip(sigs).enumerate() {
        if s != sig {
            continue;
        }
        match are_isomorphic(alg, rep, r, cfg) {
            IsoResult::Isomorphic(_) => return (Some(offset + i), certain),
            IsoResult::NotIsomorphic { certain: c } => certain &= c,
        }
    }
    (None, certain)
}

pub(crate) fn classify_in_pool(
    alg: &AlgebraPresentation,
    dimvec: &[usize],
    cfg: &ClassifyConfig,
    pool: &ThreadPool,
    keep_members: bool,
) -> Result<(IsoClassTable, Vec<Member>), ClassifyError> {
    let mut stream = enumerate_reps(alg, dimvec, cfg.budget_log2)?;
    let mut table = IsoClassTable {
        dimvec: CompVector(dimvec.to_vec()),
        representatives: Vec::new(),
        class_sizes: Vec::new(),
        enumerated: 0,
        certain: true,
    };
    let mut sigs: Vec<Signature> = Vec::new();
    let mut members = Vec::new();
    let is_zero = dimvec.iter().all(|&d| d == 0);
    let search = cfg.search;

    loop {
        let chunk: Vec<Representation> = stream.by_ref().take(CHUNK).collect();
        if chunk.is_empty() {
            break;
        }
        table.enumerated += chunk.len();

        let info: Vec<Option<(Signature, bool)>> = pool.install(|| {
            chunk
                .par_iter()
                .map(|r| {
                    if is_zero {
                        return None;
                    }
                    match is_indecomposable(alg, r, &search).expect("nonzero") {
                        Indecomposability::Indecomposable { certain, end_dim } => Some((
                            Signature {
                                end_dim,
                                ranks: r.mats().iter().map(FieldMatrix::rank).collect(),
                            },
                            certain,
                        )),
                        Indecomposability::Decomposable(_) => None,
                    }
                })
                .collect()
        });

        let known = table.representatives.len();
        let early: Vec<Option<(Option<usize>, bool)>> = pool.install(|| {
            chunk
                .par_iter()
                .zip(&info)
                .map(|(r, i)| {
                    i.as_ref()
                        .map(|(sig, _)| match_class(alg, r, sig, &table.representatives, &sigs, 0, &search))
                })
                .collect()
        });

        for ((rep, i), e) in chunk.into_iter().zip(info).zip(early) {
            let class = match (i, e) {
                (Some((sig, c_ind)), Some((found, c_iso))) => {
                    table.certain &= c_ind && c_iso;
                    let found = found.or_else(|| {
                        let (f, c) = match_class(
                            alg,
                            &rep,
                            &sig,
                            &table.representatives[known..],
                            &sigs[known..],
                            known,
                            &search,
                        );
                        table.certain &= c;
                        f
                    });
                    Some(match found {
                        Some(idx) => {
                            table.class_sizes[idx] += 1;
                            idx
                        }
                        None => {
                            table.representatives.push(rep.clone());
                            table.class_sizes.push(1);
                            sigs.push(sig);
                            table.representatives.len() - 1
                        }
                    })
                }
                _ => None,
            };
            if keep_members {
                members.push(Member { rep, class });
            }
        }
    }
    Ok((table, members))
}

/// Buckets the enumerated indecomposables into isomorphism classes.
pub fn classify_indecomposables(
    alg: &AlgebraPresentation,
    dimvec: &[usize],
    cfg: &ClassifyConfig,
) -> Result<IsoClassTable, ClassifyError> {
    let pool = cfg.pool()?;
    Ok(classify_in_pool(alg, dimvec, cfg, &pool, false)?.0)
}

/// Dimension vectors with entry sum in `1..=bound`, by length, and inside a
/// length with earlier vertices carrying more weight first.
pub fn dimvecs_up_to(vertices: usize, bound: usize) -> Vec<Vec<usize>> {
    fn fill(rest: usize, slots: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 1 {
            prefix.push(rest);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in (0..=rest).rev() {
            prefix.push(first);
            fill(rest - first, slots - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if vertices == 0 {
        return out;
    }
    for n in 1..=bound {
        fill(n, vertices, &mut Vec::new(), &mut out);
    }
    out
}

/// Acyclic quiver, or monomial relations that kill every long path.
pub fn check_admissible(alg: &AlgebraPresentation) -> Result<(), ClassifyError> {
    if alg.quiver().is_acyclic() || alg.path_nilpotency_bound(NILPOTENCY_SEARCH_LIMIT).certified().is_some() {
        Ok(())
    } else {
        Err(ClassifyError::NotAdmissible(NILPOTENCY_SEARCH_LIMIT))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    HoldsUpToBound,
    Fails,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::HoldsUpToBound => "holds-up-to-bound",
            Verdict::Fails => "fails",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

/// A composition-factor vector carrying two or more non-isomorphic indecomposables.
#[derive(Debug, Clone)]
pub struct Violation {
    pub dimvec: CompVector,
    pub reps: Vec<Representation>,
    pub certain: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountRow {
    pub dimvec: CompVector,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Skipped {
    pub dimvec: CompVector,
    pub entries: usize,
}

#[derive(Debug, Clone)]
pub struct XReport {
    pub bound: usize,
    pub p: u32,
    pub seed: u64,
    pub verdict: Verdict,
    pub violations: Vec<Violation>,
    pub counts: Vec<CountRow>,
    pub skipped: Vec<Skipped>,
    pub probabilistic: bool,
    pub tables: Vec<IsoClassTable>,
}

impl XReport {
    pub fn total_classes(&self) -> usize {
        self.counts.iter().map(|r| r.count).sum()
    }
}

/// Classifies every dimension vector up to `bound` and reports composition
/// vectors that carry more than one indecomposable.
pub fn check_property_x(
    alg: &AlgebraPresentation,
    bound: usize,
    cfg: &ClassifyConfig,
) -> Result<XReport, ClassifyError> {
    check_admissible(alg)?;
    let pool = cfg.pool()?;
    let mut tables = Vec::new();
    let mut skipped = Vec::new();
    for dv in dimvecs_up_to(alg.quiver().vertex_count(), bound) {
        match classify_in_pool(alg, &dv, cfg, &pool, false) {
            Ok((t, _)) => tables.push(t),
            Err(ClassifyError::Budget { dimvec, entries, .. }) => skipped.push(Skipped { dimvec, entries }),
            Err(e) => return Err(e),
        }
    }
    Ok(assemble_report(alg, bound, cfg, tables, skipped))
}

fn assemble_report(
    alg: &AlgebraPresentation,
    bound: usize,
    cfg: &ClassifyConfig,
    tables: Vec<IsoClassTable>,
    skipped: Vec<Skipped>,
) -> XReport {
    let probabilistic = tables.iter().any(|t| !t.certain);
    let counts = tables
        .iter()
        .map(|t| CountRow {
            dimvec: t.dimvec.clone(),
            count: t.count(),
        })
        .collect();
    let mut violations: Vec<Violation> = tables
        .iter()
        .filter(|t| t.count() >= 2)
        .map(|t| Violation {
            dimvec: t.dimvec.clone(),
            reps: t.representatives.clone(),
            certain: t.certain,
        })
        .collect();
    violations.sort_by(|a, b| a.dimvec.cmp(&b.dimvec));
    let verdict = if violations.iter().any(|v| v.certain) {
        Verdict::Fails
    } else if probabilistic || !skipped.is_empty() {
        Verdict::Inconclusive
    } else {
        Verdict::HoldsUpToBound
    };
    XReport {
        bound,
        p: alg.field().modulus(),
        seed: cfg.search.seed,
        verdict,
        violations,
        counts,
        skipped,
        probabilistic,
        tables,
    }
}

/// Per-dimension-vector class counts up to `bound`.
pub fn count_table(alg: &AlgebraPresentation, bound: usize, cfg: &ClassifyConfig) -> Result<XReport, ClassifyError> {
    check_property_x(alg, bound, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::zoo;

    fn cfg() -> ClassifyConfig {
        ClassifyConfig::default()
    }

    #[test]
    fn enumeration_counts() {
        let k = zoo::kronecker(2);
        assert_eq!(enumerate_reps(&k, &[1, 1], 24).unwrap().count(), 4);

        let a = zoo::two_cycle(2);
        let keys: Vec<Vec<u32>> = enumerate_reps(&a, &[1, 1], 24)
            .unwrap()
            .map(|r| r.entry_key())
            .collect();
        assert_eq!(keys, vec![vec![0, 0], vec![0, 1], vec![1, 0]]);

        let zero: Vec<Representation> = enumerate_reps(&a, &[0, 0], 24).unwrap().collect();
        assert_eq!(zero, vec![Representation::zero(&a, &[0, 0])]);

        let v = zoo::single_vertex(2);
        assert_eq!(enumerate_reps(&v, &[3], 24).unwrap().count(), 1);
    }

    #[test]
    fn enumeration_matches_brute_force_filter() {
        // nilpotent 3x3 matrices over GF(2) with x^2 = 0: brute-force count
        let l = zoo::truncated_loop(2, 2);
        let f = l.field();
        let mut brute = 0;
        for bits in 0u32..512 {
            let e: Vec<i64> = (0..9).map(|i| ((bits >> (8 - i)) & 1) as i64).collect();
            let m = FieldMatrix::from_entries(f, 3, 3, &e);
            if m.matmul(&m).unwrap().is_zero() {
                brute += 1;
            }
        }
        let reps: Vec<Representation> = enumerate_reps(&l, &[3], 24).unwrap().collect();
        assert_eq!(reps.len(), brute);
        let keys: Vec<Vec<u32>> = reps.iter().map(Representation::entry_key).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn budget_is_enforced() {
        let k = zoo::kronecker(2);
        let e = enumerate_reps(&k, &[3, 3], 10).err().unwrap();
        assert_eq!(
            e,
            ClassifyError::Budget {
                dimvec: CompVector(vec![3, 3]),
                entries: 18,
                p: 2,
                budget_log2: 10
            }
        );
    }

    #[test]
    fn classification_examples() {
        let a = zoo::two_cycle(2);
        let t = classify_indecomposables(&a, &[1, 1], &cfg()).unwrap();
        assert_eq!(t.count(), 2);
        assert!(t.certain);

        let t = classify_indecomposables(&zoo::kronecker(2), &[1, 1], &cfg()).unwrap();
        assert_eq!(t.count(), 3);
        assert_eq!(t.class_sizes, vec![1, 1, 1]);

        let t = classify_indecomposables(&zoo::kronecker(3), &[1, 1], &cfg()).unwrap();
        assert_eq!(t.count(), 4);
        assert_eq!(t.class_sizes.iter().sum::<usize>(), 8);
    }

    #[test]
    fn dimvec_generation() {
        assert_eq!(
            dimvecs_up_to(2, 2),
            vec![vec![1, 0], vec![0, 1], vec![2, 0], vec![1, 1], vec![0, 2]]
        );
        assert_eq!(dimvecs_up_to(3, 4).len(), 3 + 6 + 10 + 15);
    }

    #[test]
    fn property_x_examples() {
        let r = check_property_x(&zoo::truncated_loop(2, 2), 4, &cfg()).unwrap();
        assert_eq!(r.verdict, Verdict::HoldsUpToBound);
        let counts: Vec<usize> = r.counts.iter().map(|c| c.count).collect();
        assert_eq!(counts, vec![1, 1, 0, 0]);

        let r = check_property_x(&zoo::two_cycle(2), 4, &cfg()).unwrap();
        assert_eq!(r.verdict, Verdict::Fails);
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].dimvec, CompVector(vec![1, 1]));

        let r = check_property_x(&zoo::kronecker(2), 2, &cfg()).unwrap();
        assert_eq!(r.verdict, Verdict::Fails);
        assert_eq!(r.violations[0].reps.len(), 3);
    }

    #[test]
    fn count_table_examples() {
        let r = count_table(&zoo::two_cycle(2), 4, &cfg()).unwrap();
        for row in &r.counts {
            let expected = match row.dimvec.as_slice() {
                [1, 0] | [0, 1] => 1,
                [1, 1] => 2,
                _ => 0,
            };
            assert_eq!(row.count, expected, "{}", row.dimvec);
        }
        let r = count_table(&zoo::cycle(2, 3, 3), 3, &cfg()).unwrap();
        let row = r.counts.iter().find(|c| c.dimvec.as_slice() == [1, 1, 1]).unwrap();
        assert_eq!(row.count, 3);

        let r = count_table(&zoo::single_vertex(2), 3, &cfg()).unwrap();
        let counts: Vec<usize> = r.counts.iter().map(|c| c.count).collect();
        assert_eq!(counts, vec![1, 0, 0]);
    }

    #[test]
    fn unadmissible_presentation_is_rejected() {
        let free = zoo::truncated_loop(2, 0);
        assert_eq!(
            check_property_x(&free, 2, &cfg()).unwrap_err(),
            ClassifyError::NotAdmissible(NILPOTENCY_SEARCH_LIMIT)
        );
    }

    #[test]
    fn budget_skips_make_report_inconclusive() {
        let c = ClassifyConfig {
            budget_log2: 10,
            ..cfg()
        };
        // (4,4)-type entries exceed 2^10 while small ones stay inside
        let r = check_property_x(&zoo::a2(2), 8, &c).unwrap();
        assert!(!r.skipped.is_empty());
        assert_eq!(r.verdict, Verdict::Inconclusive);
    }
}
