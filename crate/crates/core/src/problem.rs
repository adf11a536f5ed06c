//! Index coding problems: receivers with want-sets and side information.
//!
//! Indices are 0-based in memory and 1-based in every external format.

use crate::error::{Error, Result};
use crate::field::PrimeField;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt::Write as _;

/// Upper bound on message and receiver counts accepted from files.
pub const MAX_PARTICIPANTS: usize = 1024;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Receiver {
    pub wants: BTreeSet<usize>,
    pub knows: BTreeSet<usize>,
}

impl Receiver {
    pub fn new(wants: impl IntoIterator<Item = usize>, knows: impl IntoIterator<Item = usize>) -> Self {
        Receiver {
            wants: wants.into_iter().collect(),
            knows: knows.into_iter().collect(),
        }
    }
}

/// One demanded message at one receiver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Demand {
    pub receiver: usize,
    pub message: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexCodingProblem {
    field: PrimeField,
    n: usize,
    receivers: Vec<Receiver>,
}

impl IndexCodingProblem {
    pub fn new(field: PrimeField, n: usize, receivers: Vec<Receiver>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidProblem("message count must be positive".into()));
        }
        if receivers.is_empty() {
            return Err(Error::InvalidProblem("at least one receiver is required".into()));
        }
        for (i, r) in receivers.iter().enumerate() {
            for (set, name) in [(&r.wants, "wants"), (&r.knows, "knows")] {
                if let Some(&bad) = set.iter().find(|&&x| x >= n) {
                    return Err(Error::IndexOutOfRange {
                        context: format!("receiver {} {name}", i + 1),
                        index: bad as i64 + 1,
                        bound: n,
                    });
                }
            }
            if let Some(&x) = r.wants.intersection(&r.knows).next() {
                return Err(Error::WantKnownOverlap {
                    receiver: i + 1,
                    message: x + 1,
                });
            }
        }
        Ok(IndexCodingProblem { field, n, receivers })
    }

    /// Single-uniprior problem where receiver `i` knows `x_i` and wants the
    /// listed messages (0-based).
    pub fn single_uniprior(field: PrimeField, wants: Vec<Vec<usize>>) -> Result<Self> {
        let receivers = wants
            .into_iter()
            .enumerate()
            .map(|(i, w)| Receiver::new(w, [i]))
            .collect::<Vec<_>>();
        Self::new(field, receivers.len(), receivers)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Message count.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Receiver count.
    pub fn m(&self) -> usize {
        self.receivers.len()
    }

    pub fn receivers(&self) -> &[Receiver] {
        &self.receivers
    }

    pub fn receiver(&self, i: usize) -> &Receiver {
        &self.receivers[i]
    }

    /// Every receiver knows exactly one message and no two receivers know the
    /// same one.
    pub fn is_single_uniprior(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.receivers
            .iter()
            .all(|r| r.knows.len() == 1 && seen.insert(*r.knows.first().unwrap()))
    }

    /// The single known message of receiver `i` (single-uniprior problems).
    pub fn known_message(&self, i: usize) -> Option<usize> {
        let k = &self.receivers[i].knows;
        (k.len() == 1).then(|| *k.first().unwrap())
    }

    /// All demands ordered by receiver, then by message index.
    pub fn demands(&self) -> Vec<Demand> {
        self.receivers
            .iter()
            .enumerate()
            .flat_map(|(i, r)| {
                r.wants.iter().map(move |&m| Demand {
                    receiver: i,
                    message: m,
                })
            })
            .collect()
    }

    pub fn demand_count(&self) -> usize {
        self.receivers.iter().map(|r| r.wants.len()).sum()
    }

    /// Parses the TOML problem format.
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let doc: ProblemDoc = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        doc.into_problem()
    }

    pub fn to_toml_string(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "q = {}", self.field.order());
        let _ = writeln!(s, "n = {}", self.n);
        for (i, r) in self.receivers.iter().enumerate() {
            let list = |set: &BTreeSet<usize>| set.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(", ");
            let _ = writeln!(
                s,
                "\n[[receivers]]\nid = {}\nwants = [{}]\nknows = [{}]",
                i + 1,
                list(&r.wants),
                list(&r.knows)
            );
        }
        s
    }
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct ProblemDoc {
    q: i64,
    n: i64,
    receivers: Vec<ReceiverDoc>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct ReceiverDoc {
    id: i64,
    wants: Vec<i64>,
    knows: Vec<i64>,
}

impl ProblemDoc {
    fn into_problem(self) -> Result<IndexCodingProblem> {
        let field = PrimeField::new(self.q)?;
        if self.n < 1 || self.n as u64 > MAX_PARTICIPANTS as u64 {
            return Err(Error::InvalidProblem(format!(
                "n = {} outside 1..={MAX_PARTICIPANTS}",
                self.n
            )));
        }
        let n = self.n as usize;
        let m = self.receivers.len();
        if m == 0 || m > MAX_PARTICIPANTS {
            return Err(Error::InvalidProblem(format!(
                "receiver count {m} outside 1..={MAX_PARTICIPANTS}"
            )));
        }
        let mut slots: Vec<Option<Receiver>> = vec![None; m];
        for doc in self.receivers {
            if doc.id < 1 || doc.id as u64 > m as u64 {
                return Err(Error::IndexOutOfRange {
                    context: "receiver id".into(),
                    index: doc.id,
                    bound: m,
                });
            }
            let slot = &mut slots[doc.id as usize - 1];
            if slot.is_some() {
                return Err(Error::InvalidProblem(format!("duplicate receiver id {}", doc.id)));
            }
            let to_set = |list: &[i64], what: &str| -> Result<BTreeSet<usize>> {
                let mut set = BTreeSet::new();
                for &x in list {
                    if x < 1 || x as u64 > n as u64 {
                        return Err(Error::IndexOutOfRange {
                            context: format!("receiver {} {what}", doc.id),
                            index: x,
                            bound: n,
                        });
                    }
                    if !set.insert(x as usize - 1) {
                        return Err(Error::InvalidProblem(format!(
                            "receiver {} lists message {x} twice in {what}",
                            doc.id
                        )));
                    }
                }
                Ok(set)
            };
            *slot = Some(Receiver {
                wants: to_set(&doc.wants, "wants")?,
                knows: to_set(&doc.knows, "knows")?,
            });
        }
        // ids are in 1..=m and distinct, so every slot is filled.
        let receivers = slots.into_iter().map(|r| r.expect("all ids present")).collect();
        IndexCodingProblem::new(field, n, receivers)
    }
}

/// Result of reducing a single-uniprior problem to one with `n = m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareReduction {
    /// Square problem in which receiver `i` knows message `i`.
    pub problem: IndexCodingProblem,
    /// Original indices of messages nobody knows but somebody wants; these
    /// are sent uncoded.
    pub direct_messages: Vec<usize>,
    /// Original message index of each vertex of the square problem.
    pub vertex_message: Vec<usize>,
    /// Message count of the original problem.
    pub original_n: usize,
}

/// Extracts unknown messages and relabels the rest so that receiver `i`
/// knows message `i`.
///
/// Messages that are neither known nor wanted by any receiver are dropped.
pub fn reduce_to_square(problem: &IndexCodingProblem) -> Result<SquareReduction> {
    if !problem.is_single_uniprior() {
        return Err(Error::NotSingleUniprior(
            "every receiver must know exactly one message, all distinct".into(),
        ));
    }
    let m = problem.m();
    let vertex_message: Vec<usize> = (0..m).map(|i| problem.known_message(i).unwrap()).collect();
    let mut vertex_of = vec![None; problem.n()];
    for (v, &msg) in vertex_message.iter().enumerate() {
        vertex_of[msg] = Some(v);
    }
    let mut direct = BTreeSet::new();
    let receivers = problem
        .receivers()
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut wants = BTreeSet::new();
            for &w in &r.wants {
                match vertex_of[w] {
                    Some(v) => {
                        wants.insert(v);
                    }
                    None => {
                        direct.insert(w);
                    }
                }
            }
            Receiver {
                wants,
                knows: BTreeSet::from([i]),
            }
        })
        .collect();
    Ok(SquareReduction {
        problem: IndexCodingProblem::new(problem.field(), m, receivers)?,
        direct_messages: direct.into_iter().collect(),
        vertex_message,
        original_n: problem.n(),
    })
}
