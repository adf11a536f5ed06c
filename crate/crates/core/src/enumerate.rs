//! Exhaustive search over all optimal-length linear index codes of small
//! problems, and their classification by worst-case transmission count.

use crate::code::IndexCode;
use crate::codegen::{construct, decoding_plan, transmission_counts};
use crate::error::{Error, Result};
use crate::field::{unit, PrimeField};
use crate::problem::IndexCodingProblem;
use itertools::Itertools;
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::fmt::Write;

/// Largest number of subsets a single enumeration may visit.
pub const MAX_SUBSETS: u128 = 200_000_000;

/// Largest `n` the exhaustive search accepts for a field.
pub fn max_messages(field: PrimeField) -> usize {
    match field.order() {
        2 => 6,
        _ => 4,
    }
}

fn check_size(problem: &IndexCodingProblem) -> Result<()> {
    let bound = max_messages(problem.field());
    if problem.n() > bound {
        return Err(Error::Infeasible(format!(
            "exhaustive search over {} supports n <= {bound}, got n = {}",
            problem.field(),
            problem.n()
        )));
    }
    Ok(())
}

/// Nonzero vectors of `F_q^n` with leading coefficient 1, in ascending order
/// of their base-`q` value with `x_1` least significant.
pub fn candidate_vectors(field: PrimeField, n: usize) -> Vec<Vec<u8>> {
    let q = field.order() as u64;
    (1..q.pow(n as u32))
        .map(|mut value| {
            (0..n)
                .map(|_| {
                    let d = (value % q) as u8;
                    value /= q;
                    d
                })
                .collect::<Vec<u8>>()
        })
        .filter(|v| field.is_normalized(v))
        .collect()
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Per-demand generator sets: the receiver's side information unit vectors
/// and the demanded unit vector.
struct DemandCheck {
    side: Vec<Vec<u8>>,
    target: Vec<u8>,
}

impl DemandCheck {
    fn all(problem: &IndexCodingProblem) -> Vec<Self> {
        let n = problem.n();
        problem
            .demands()
            .into_iter()
            .map(|d| DemandCheck {
                side: problem.receiver(d.receiver).knows.iter().map(|&k| unit(n, k)).collect(),
                target: unit(n, d.message),
            })
            .collect()
    }

    fn satisfied(&self, field: PrimeField, codewords: &[&[u8]]) -> bool {
        let gens: Vec<&[u8]> = self
            .side
            .iter()
            .map(|v| v.as_slice())
            .chain(codewords.iter().copied())
            .collect();
        field.in_span(&gens, &self.target)
    }
}

/// Candidate vectors and the index sets into them that decode.
type Subsets = (Vec<Vec<u8>>, Vec<Vec<usize>>);

fn decodable_subsets(problem: &IndexCodingProblem, length: usize) -> Result<Subsets> {
    check_size(problem)?;
    let field = problem.field();
    let cands = candidate_vectors(field, problem.n());
    let total = binomial(cands.len(), length);
    if total > MAX_SUBSETS {
        return Err(Error::Infeasible(format!(
            "{total} subsets of size {length} exceed the search bound {MAX_SUBSETS}"
        )));
    }
    let checks = DemandCheck::all(problem);
    if length == 0 {
        let ok = checks.iter().all(|c| c.satisfied(field, &[]));
        return Ok((cands, if ok { vec![vec![]] } else { vec![] }));
    }
    let k = cands.len();
    let found: Vec<Vec<Vec<usize>>> = (0..k)
        .into_par_iter()
        .map(|first| {
            ((first + 1)..k)
                .combinations(length - 1)
                .map(|rest| {
                    let mut s = Vec::with_capacity(length);
                    s.push(first);
                    s.extend(rest);
                    s
                })
                .filter(|s| {
                    let vs: Vec<&[u8]> = s.iter().map(|&i| cands[i].as_slice()).collect();
                    checks.iter().all(|c| c.satisfied(field, &vs))
                })
                .collect()
        })
        .collect();
    Ok((cands, found.into_iter().flatten().collect()))
}

/// Every unordered set of `length` distinct normalized codewords that lets
/// each receiver decode each demand, in lexicographic order of candidate
/// indices.
pub fn enumerate_optimal_codes(problem: &IndexCodingProblem, length: usize) -> Result<Vec<IndexCode>> {
    let (cands, subsets) = decodable_subsets(problem, length)?;
    subsets
        .into_iter()
        .map(|s| {
            IndexCode::from_vectors(
                problem.field(),
                problem.n(),
                s.into_iter().map(|i| cands[i].clone()).collect(),
            )
        })
        .collect()
}

/// Smallest length for which some linear code exists, found by search.
pub fn optimal_length_by_search(problem: &IndexCodingProblem) -> Result<usize> {
    check_size(problem)?;
    for length in 0..=problem.n() {
        if !decodable_subsets(problem, length)?.1.is_empty() {
            return Ok(length);
        }
    }
    // Sending every message uncoded always works.
    unreachable!("the identity code decodes every demand")
}

/// Optimal linear code length: the pruning formula for single-uniprior
/// problems, exhaustive search otherwise.
pub fn optimal_length(problem: &IndexCodingProblem) -> Result<usize> {
    if problem.is_single_uniprior() {
        Ok(construct(problem)?.optimal_length())
    } else {
        optimal_length_by_search(problem)
    }
}

/// One enumerated code with its per-demand transmission counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifiedCode {
    pub code: IndexCode,
    /// In demand order.
    pub counts: Vec<usize>,
    pub max: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    /// `max count -> number of codes`.
    pub histogram: BTreeMap<usize, usize>,
    pub rows: Vec<ClassifiedCode>,
    /// `(receiver, message)` column labels, 0-based.
    pub demands: Vec<(usize, usize)>,
}

impl Classification {
    /// Smallest worst-case count over all codes.
    pub fn best_max(&self) -> Option<usize> {
        self.histogram.keys().next().copied()
    }

    /// CSV with one row per code: index, hex codewords, per-demand counts
    /// and the maximum.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("index,codewords");
        for &(r, d) in &self.demands {
            let _ = write!(s, ",R{}x{}", r + 1, d + 1);
        }
        s.push_str(",max\n");
        for (i, row) in self.rows.iter().enumerate() {
            let words = row.code.vectors().map(|v| row.code.hex_vector(v)).join(" ");
            let _ = write!(s, "{},{words}", i + 1);
            for c in &row.counts {
                let _ = write!(s, ",{c}");
            }
            let _ = writeln!(s, ",{}", row.max);
        }
        s
    }

    /// Summary such as `28 codes; max-count histogram {2:12, 3:16}`.
    pub fn summary(&self) -> String {
        let hist = self.histogram.iter().map(|(k, v)| format!("{k}:{v}")).join(", ");
        let noun = if self.rows.len() == 1 { "code" } else { "codes" };
        format!("{} {noun}; max-count histogram {{{hist}}}", self.rows.len())
    }
}

/// Computes decoding plans for every code and tallies their maxima.
pub fn classify_codes(
    problem: &IndexCodingProblem,
    codes: impl IntoIterator<Item = IndexCode>,
) -> Result<Classification> {
    let codes: Vec<IndexCode> = codes.into_iter().collect();
    let rows = codes
        .into_par_iter()
        .map(|code| {
            let t = transmission_counts(&decoding_plan(&code, problem)?);
            Ok(ClassifiedCode {
                counts: t.counts.values().copied().collect(),
                max: t.max,
                code,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut histogram = BTreeMap::new();
    for r in &rows {
        *histogram.entry(r.max).or_insert(0) += 1;
    }
    Ok(Classification {
        histogram,
        rows,
        demands: problem.demands().iter().map(|d| (d.receiver, d.message)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn three_user() -> IndexCodingProblem {
        IndexCodingProblem::single_uniprior(PrimeField::F2, vec![vec![1, 2], vec![0], vec![0, 1]]).unwrap()
    }

    fn cycle(n: usize) -> IndexCodingProblem {
        IndexCodingProblem::single_uniprior(PrimeField::F2, (0..n).map(|i| vec![(i + 1) % n]).collect()).unwrap()
    }

    #[test]
    fn candidates_are_ordered_and_normalized() {
        let c = candidate_vectors(PrimeField::F2, 3);
        assert_eq!(c.len(), 7);
        assert_eq!(c[0], vec![1, 0, 0]);
        assert_eq!(c[2], vec![1, 1, 0]);
        let t = candidate_vectors(PrimeField::F3, 3);
        assert_eq!(t.len(), 13);
        assert!(t.iter().all(|v| PrimeField::F3.is_normalized(v)));
    }

    #[test]
    fn three_user_has_three_codes() {
        let p = three_user();
        assert_eq!(optimal_length(&p).unwrap(), 2);
        assert_eq!(optimal_length_by_search(&p).unwrap(), 2);
        let codes = enumerate_optimal_codes(&p, 2).unwrap();
        let shown: Vec<String> = codes.iter().map(|c| c.to_string()).collect();
        assert_eq!(shown, ["{x1+x2, x1+x3}", "{x1+x2, x2+x3}", "{x1+x3, x2+x3}"]);
        assert!(enumerate_optimal_codes(&p, 1).unwrap().is_empty());
    }

    #[test]
    fn four_cycle_histogram() {
        let p = cycle(4);
        assert_eq!(optimal_length(&p).unwrap(), 3);
        let class = classify_codes(&p, enumerate_optimal_codes(&p, 3).unwrap()).unwrap();
        assert_eq!(class.rows.len(), 28);
        assert_eq!(class.histogram, BTreeMap::from([(2, 12), (3, 16)]));
        assert_eq!(class.summary(), "28 codes; max-count histogram {2:12, 3:16}");
        assert_eq!(class.best_max(), Some(2));
    }

    #[test]
    fn construction_is_among_the_best() {
        for p in [three_user(), cycle(4), cycle(5)] {
            let built = construct(&p).unwrap().code;
            let n = built.len();
            let class = classify_codes(&p, enumerate_optimal_codes(&p, n).unwrap()).unwrap();
            let row = class
                .rows
                .iter()
                .find(|r| r.code.canonical_vectors() == built.canonical_vectors())
                .expect("constructed code is enumerated");
            assert_eq!(Some(row.max), class.best_max());
        }
    }

    #[test]
    fn single_demand_single_code() {
        let p = IndexCodingProblem::new(PrimeField::F2, 1, vec![crate::problem::Receiver::new([0], [])]).unwrap();
        assert_eq!(optimal_length(&p).unwrap(), 1);
        let class = classify_codes(&p, enumerate_optimal_codes(&p, 1).unwrap()).unwrap();
        assert_eq!(class.histogram, BTreeMap::from([(1, 1)]));
    }

    #[test]
    fn no_demands_needs_nothing() {
        let p = IndexCodingProblem::single_uniprior(PrimeField::F2, vec![vec![], vec![]]).unwrap();
        assert_eq!(optimal_length(&p).unwrap(), 0);
        assert_eq!(optimal_length_by_search(&p).unwrap(), 0);
    }

    #[test]
    fn formula_matches_search_on_small_instances() {
        let probs = [
            vec![vec![1], vec![2], vec![]],
            vec![vec![1, 2], vec![], vec![]],
            vec![vec![1], vec![0], vec![3], vec![2]],
            vec![vec![1, 3], vec![2], vec![0], vec![1, 2]],
            vec![vec![1], vec![2], vec![0], vec![0]],
        ];
        for wants in probs {
            let p = IndexCodingProblem::single_uniprior(PrimeField::F2, wants.clone()).unwrap();
            assert_eq!(
                optimal_length(&p).unwrap(),
                optimal_length_by_search(&p).unwrap(),
                "{wants:?}"
            );
        }
    }

    #[test]
    fn ternary_swap() {
        let p = IndexCodingProblem::single_uniprior(PrimeField::F3, vec![vec![1], vec![0]]).unwrap();
        let codes = enumerate_optimal_codes(&p, 1).unwrap();
        // x1 + x2 and x1 + 2x2 both work.
        assert_eq!(codes.len(), 2);
    }

    #[test]
    fn oversize_is_infeasible() {
        let p = cycle(7);
        assert!(matches!(enumerate_optimal_codes(&p, 6), Err(Error::Infeasible(_))));
        assert_eq!(optimal_length(&p).unwrap(), 6);
    }

    #[test]
    fn csv_layout() {
        let p = three_user();
        let class = classify_codes(&p, enumerate_optimal_codes(&p, 2).unwrap()).unwrap();
        let csv = class.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("index,codewords,R1x2,R1x3,R2x1,R3x1,R3x2,max"));
        assert_eq!(lines.next(), Some("1,3 5,1,1,1,1,2,2"));
        assert_eq!(csv.lines().count(), 4);
    }
}
