//! Per-demand decoding rules with the fewest transmissions.

use crate::code::{combination, IndexCode};
use crate::error::{Error, Result};
use crate::field::{unit, PrimeField};
use crate::problem::IndexCodingProblem;
use itertools::Itertools;
use std::collections::BTreeMap;
use std::fmt;

/// Largest code length the subset search accepts.
pub const MAX_PLAN_LENGTH: usize = 20;

/// How one receiver recovers one demanded message:
/// `x_demand = sum side_info + sum terms`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanEntry {
    pub receiver: usize,
    pub demand: usize,
    /// `(message, coefficient)` over the receiver's side information, nonzero
    /// coefficients only.
    pub side_info: Vec<(usize, u8)>,
    /// `(transmission index, coefficient)`, all coefficients nonzero.
    pub terms: Vec<(usize, u8)>,
}

impl PlanEntry {
    /// Number of transmissions combined.
    pub fn count(&self) -> usize {
        self.terms.len()
    }

    /// Applies the rule to (possibly corrupted) received transmissions, using
    /// the true side-information values.
    pub fn recover(&self, field: PrimeField, messages: &[u8], received: &[u8]) -> u8 {
        let mut acc = 0;
        for &(m, c) in &self.side_info {
            acc = field.add(acc, field.mul(c, messages[m]));
        }
        for &(t, c) in &self.terms {
            acc = field.add(acc, field.mul(c, received[t]));
        }
        acc
    }

    /// Expression such as `x1+c2+c3`.
    pub fn expression(&self) -> String {
        combination(
            self.side_info
                .iter()
                .map(|&(m, c)| (format!("x{}", m + 1), c))
                .chain(self.terms.iter().map(|&(t, c)| (format!("c{}", t + 1), c))),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodingPlan {
    pub field: PrimeField,
    /// Ordered by receiver, then demanded message.
    pub entries: Vec<PlanEntry>,
}

impl DecodingPlan {
    /// Table of `receiver,demand,count,expression` rows (1-based).
    pub fn to_table(&self) -> String {
        let mut s = String::from("receiver,demand,count,decoding\n");
        for e in &self.entries {
            s.push_str(&format!(
                "R{},x{},{},{}\n",
                e.receiver + 1,
                e.demand + 1,
                e.count(),
                e.expression()
            ));
        }
        s
    }
}

impl fmt::Display for DecodingPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            writeln!(f, "R{}  x{} = {}", e.receiver + 1, e.demand + 1, e.expression())?;
        }
        Ok(())
    }
}

/// For every demand, finds a decoding rule that combines the fewest
/// transmissions with the receiver's side information.
///
/// Subsets are tried by increasing size in lexicographic order; the first
/// solvable one is returned.
pub fn decoding_plan(code: &IndexCode, problem: &IndexCodingProblem) -> Result<DecodingPlan> {
    if code.n() != problem.n() || code.field() != problem.field() {
        return Err(Error::InvalidCode(format!(
            "code is over {} with n = {}, problem is over {} with n = {}",
            code.field(),
            code.n(),
            problem.field(),
            problem.n()
        )));
    }
    if code.len() > MAX_PLAN_LENGTH {
        return Err(Error::Infeasible(format!(
            "code length {} exceeds the decoding search bound {MAX_PLAN_LENGTH}",
            code.len()
        )));
    }
    let field = code.field();
    let n = code.n();
    let vectors: Vec<&[u8]> = code.vectors().collect();
    let mut entries = Vec::with_capacity(problem.demand_count());
    for d in problem.demands() {
        let known: Vec<usize> = problem.receiver(d.receiver).knows.iter().copied().collect();
        let side: Vec<Vec<u8>> = known.iter().map(|&k| unit(n, k)).collect();
        let target = unit(n, d.message);
        let solve = |subset: &[usize]| -> Option<Vec<u8>> {
            let gens: Vec<&[u8]> = side
                .iter()
                .map(|v| v.as_slice())
                .chain(subset.iter().map(|&t| vectors[t]))
                .collect();
            field.solve(&gens, &target)
        };
        let all: Vec<usize> = (0..code.len()).collect();
        if solve(&all).is_none() {
            return Err(Error::NotDecodable {
                receiver: d.receiver + 1,
                message: d.message + 1,
            });
        }
        let found = (1..=code.len())
            .flat_map(|size| (0..code.len()).combinations(size))
            .find_map(|subset| solve(&subset).map(|x| (subset, x)));
        let (subset, x) = found.expect("full set is solvable");
        let (side_coef, term_coef) = x.split_at(known.len());
        entries.push(PlanEntry {
            receiver: d.receiver,
            demand: d.message,
            side_info: known
                .iter()
                .zip(side_coef)
                .filter(|(_, &c)| c != 0)
                .map(|(&m, &c)| (m, c))
                .collect(),
            terms: subset.into_iter().zip(term_coef.iter().copied()).collect(),
        });
    }
    Ok(DecodingPlan { field, entries })
}

/// Transmission counts per demand and their maximum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    /// `(receiver, demand) -> count`.
    pub counts: BTreeMap<(usize, usize), usize>,
    pub max: usize,
}

impl CountTable {
    /// Counts of one receiver in ascending demand order.
    pub fn receiver_counts(&self, receiver: usize) -> Vec<usize> {
        self.counts
            .range((receiver, 0)..(receiver + 1, 0))
            .map(|(_, &c)| c)
            .collect()
    }

    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }
}

pub fn transmission_counts(plan: &DecodingPlan) -> CountTable {
    let counts: BTreeMap<(usize, usize), usize> = plan
        .entries
        .iter()
        .map(|e| ((e.receiver, e.demand), e.count()))
        .collect();
    let max = counts.values().copied().max().unwrap_or(0);
    CountTable { counts, max }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::problem::IndexCodingProblem;

    fn nine_user() -> IndexCodingProblem {
        let mut wants: Vec<Vec<usize>> = (0..9).map(|i| vec![(i + 2) % 9]).collect();
        wants[0].push(1);
        wants[1].push(2);
        IndexCodingProblem::single_uniprior(PrimeField::F2, wants).unwrap()
    }

    fn star_code(n: usize, center: usize) -> IndexCode {
        let vectors = (0..n)
            .filter(|&j| j != center)
            .map(|j| {
                let mut v = vec![0; n];
                v[center] = 1;
                v[j] = 1;
                v
            })
            .collect();
        IndexCode::from_vectors(PrimeField::F2, n, vectors).unwrap()
    }

    #[test]
    fn star_code_plan_for_receiver_three() {
        let plan = decoding_plan(&star_code(9, 0), &nine_user()).unwrap();
        let e = plan.entries.iter().find(|e| e.receiver == 2 && e.demand == 4).unwrap();
        assert_eq!(e.expression(), "x3+c2+c4");
        assert_eq!(e.count(), 2);
        let t = transmission_counts(&plan);
        assert_eq!(t.receiver_counts(0), vec![1, 1]);
        assert_eq!(t.receiver_counts(1), vec![2, 2]);
        assert_eq!(t.receiver_counts(7), vec![1]);
        assert_eq!(t.max, 2);
    }

    #[test]
    fn uncoded_message_is_one_transmission() {
        let p = IndexCodingProblem::single_uniprior(PrimeField::F2, vec![vec![1], vec![]]).unwrap();
        let code = IndexCode::from_vectors(PrimeField::F2, 2, vec![vec![0, 1]]).unwrap();
        let plan = decoding_plan(&code, &p).unwrap();
        assert_eq!(plan.entries[0].count(), 1);
        assert!(plan.entries[0].side_info.is_empty());
        assert_eq!(transmission_counts(&plan).max, 1);
    }

    #[test]
    fn path_code_needs_three_for_wraparound() {
        let p =
            IndexCodingProblem::single_uniprior(PrimeField::F2, (0..4).map(|i| vec![(i + 1) % 4]).collect()).unwrap();
        let code = IndexCode::from_vectors(
            PrimeField::F2,
            4,
            vec![vec![1, 1, 0, 0], vec![0, 1, 1, 0], vec![0, 0, 1, 1]],
        )
        .unwrap();
        let t = transmission_counts(&decoding_plan(&code, &p).unwrap());
        let row: Vec<usize> = (0..4).flat_map(|r| t.receiver_counts(r)).collect();
        assert_eq!(row, vec![1, 1, 1, 3]);
    }

    #[test]
    fn undecodable_demand_is_reported() {
        let p = IndexCodingProblem::single_uniprior(PrimeField::F2, vec![vec![1], vec![0]]).unwrap();
        let code = IndexCode::from_vectors(PrimeField::F2, 2, vec![vec![1, 0]]).unwrap();
        assert!(matches!(
            decoding_plan(&code, &p),
            Err(Error::NotDecodable {
                receiver: 1,
                message: 2
            })
        ));
    }

    #[test]
    fn f3_signed_decoding() {
        // c1 = x1 - x2 over F_3; R_2 knows x2 and wants x1.
        let p = IndexCodingProblem::single_uniprior(PrimeField::F3, vec![vec![1], vec![0]]).unwrap();
        let code = IndexCode::from_vectors(PrimeField::F3, 2, vec![vec![1, 2]]).unwrap();
        let plan = decoding_plan(&code, &p).unwrap();
        for e in &plan.entries {
            for x1 in 0..3 {
                for x2 in 0..3 {
                    let msgs = [x1, x2];
                    assert_eq!(e.recover(PrimeField::F3, &msgs, &code.encode(&msgs)), msgs[e.demand]);
                }
            }
        }
        assert_eq!(plan.entries[0].expression(), "x1+2c1");
    }

    #[test]
    fn rejects_long_codes() {
        let n = 21;
        let p = IndexCodingProblem::single_uniprior(PrimeField::F2, (0..n).map(|_| vec![]).collect()).unwrap();
        let code = IndexCode::from_vectors(PrimeField::F2, n, (0..n).map(|i| unit(n, i)).collect()).unwrap();
        assert!(matches!(decoding_plan(&code, &p), Err(Error::Infeasible(_))));
    }
}
