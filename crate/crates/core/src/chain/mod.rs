//! Zigzag-chain sums: one evaluation engine for every linear-shape sum in
//! the crate.
//!
//! A [`ChainSpec`] is a sequence of summation variables, each ranging over
//! `[1, N-1]`, with a per-variable weight factor and an order relation
//! between consecutive variables. [`eval_chain_dp`] computes the exact sum
//! with a prefix/suffix-accumulation sweep (O(N * length) big-integer
//! operations); [`eval_chain_bruteforce`] enumerates assignments and serves
//! as the oracle.

use crate::arith::{binomial, Integer, Rational};
use num::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

mod residue;

/// Weight factor contributed by one variable `n` of a chain at level `N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightKind {
    /// `1 / n^e`
    Reciprocal(u32),
    /// `1 / (N - n)`
    ReciprocalComplement,
    /// `(-1)^(n-1) * C(N-1, n) / n^e`; legal only on the final variable.
    SignedBinomial(u32),
    /// constant 1
    Unit,
}

/// Order relation between a variable and its successor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Lt,
    Le,
    Gt,
    Ge,
}

impl Relation {
    /// The relation read right-to-left, for chain reversal.
    pub fn flipped(self) -> Self {
        match self {
            Relation::Lt => Relation::Gt,
            Relation::Le => Relation::Ge,
            Relation::Gt => Relation::Lt,
            Relation::Ge => Relation::Le,
        }
    }

    pub fn holds(self, a: u32, b: u32) -> bool {
        match self {
            Relation::Lt => a < b,
            Relation::Le => a <= b,
            Relation::Gt => a > b,
            Relation::Ge => a >= b,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ChainError {
    #[error("chain level must be at least 1")]
    LevelZero,
    #[error("{relations} relations do not fit {variables} variables")]
    RelationCount { variables: usize, relations: usize },
    #[error("signed binomial weight is allowed only on the final variable")]
    InvalidSpec,
    #[error("chain length {len} exceeds the enumeration limit {limit}")]
    TooLarge { len: usize, limit: usize },
}

/// A chain of `L` variables over `[1, N-1]` with `L-1` consecutive-variable
/// relations. `L = 0` encodes the empty product (value 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainSpec {
    level: u32,
    weights: Vec<WeightKind>,
    relations: Vec<Relation>,
}

impl ChainSpec {
    pub fn new(
        level: u32,
        weights: Vec<WeightKind>,
        relations: Vec<Relation>,
    ) -> Result<Self, ChainError> {
        if level == 0 {
            return Err(ChainError::LevelZero);
        }
        if relations.len() != weights.len().saturating_sub(1) {
            return Err(ChainError::RelationCount {
                variables: weights.len(),
                relations: relations.len(),
            });
        }
        Ok(Self {
            level,
            weights,
            relations,
        })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[WeightKind] {
        &self.weights
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    /// The same set of assignments read right-to-left: variables reversed,
    /// relations reversed and flipped.
    pub fn reversed(&self) -> Self {
        let mut weights = self.weights.clone();
        weights.reverse();
        let mut relations: Vec<Relation> = self.relations.iter().map(|r| r.flipped()).collect();
        relations.reverse();
        Self {
            level: self.level,
            weights,
            relations,
        }
    }

    fn validate(&self) -> Result<(), ChainError> {
        let last = self.weights.len().saturating_sub(1);
        for (t, w) in self.weights.iter().enumerate() {
            if matches!(w, WeightKind::SignedBinomial(_)) && t != last {
                return Err(ChainError::InvalidSpec);
            }
        }
        Ok(())
    }

    /// Weight factor of value `v` at position `t`, as a reduced rational.
    fn weight_value(&self, t: usize, v: u32) -> Rational {
        let one = Integer::one();
        match self.weights[t] {
            WeightKind::Reciprocal(e) => {
                Rational::new(one, Integer::from(v).pow(e))
            }
            WeightKind::ReciprocalComplement => {
                Rational::new(one, Integer::from(self.level - v))
            }
            WeightKind::SignedBinomial(e) => {
                let mut num = binomial(self.level as u64 - 1, v as i64);
                if v % 2 == 0 {
                    num = -num;
                }
                Rational::new(num, Integer::from(v).pow(e))
            }
            WeightKind::Unit => Rational::one(),
        }
    }
}

pub const DEFAULT_ENUM_LIMIT: usize = 8;

/// Exact value of the chain sum by a dynamic-programming sweep.
///
/// The sweep keeps, for every candidate value of the current variable, the
/// sum over all valid prefixes. All layer values share the common
/// denominator `lcm(1..N-1)^e`, so the inner loop works on integers; the
/// single rational reduction happens at the end. Above a size threshold the
/// same sweep runs over word-size prime fields instead (see [`residue`]),
/// which avoids quadratic big-integer growth while staying exact.
pub fn eval_chain_dp(spec: &ChainSpec) -> Result<Rational, ChainError> {
    spec.validate()?;
    let len = spec.len();
    if len == 0 {
        return Ok(Rational::one());
    }
    let n = spec.level;
    if n == 1 {
        // the variable range [1, 0] is empty
        return Ok(Rational::zero());
    }
    let domain = (n - 1) as usize;

    // lam = lcm(1..N-1); lam / v is an integer for every v in range.
    let mut lam = Integer::one();
    for v in 1..=domain as u64 {
        lam = num::integer::lcm(lam, Integer::from(v));
    }

    let total_exponent: u64 = spec
        .weights
        .iter()
        .map(|w| match w {
            WeightKind::Reciprocal(e) | WeightKind::SignedBinomial(e) => *e as u64,
            WeightKind::ReciprocalComplement => 1,
            WeightKind::Unit => 0,
        })
        .sum();
    if domain >= 1024 && total_exponent >= 4 {
        return Ok(residue::eval_chain_residue(spec, &lam, total_exponent));
    }
    Ok(eval_chain_bigint(spec, &lam))
}

/// The big-integer form of the sweep; layer values are numerators over the
/// running common denominator.
fn eval_chain_bigint(spec: &ChainSpec, lam: &Integer) -> Rational {
    let n = spec.level;
    let len = spec.len();
    let domain = (n - 1) as usize;
    let cofactors: Vec<Integer> = (1..=domain as u64).map(|v| lam / Integer::from(v)).collect();

    // numerator multiplier and per-layer denominator for each weight kind
    let layer_scale = |w: WeightKind| -> Integer {
        match w {
            WeightKind::Reciprocal(e) | WeightKind::SignedBinomial(e) => lam.clone().pow(e),
            WeightKind::ReciprocalComplement => lam.clone(),
            WeightKind::Unit => Integer::one(),
        }
    };
    let signed_binomials = |e: u32| -> Vec<Integer> {
        // C(N-1, v) built incrementally, sign (-1)^(v-1), scaled by (lam/v)^e
        let mut out = Vec::with_capacity(domain);
        let mut c = Integer::one();
        for v in 1..=domain as u64 {
            c = c * Integer::from(n as u64 - v) / Integer::from(v);
            let mut m = &c * cofactors[v as usize - 1].clone().pow(e);
            if v % 2 == 0 {
                m = -m;
            }
            out.push(m);
        }
        out
    };
    let multipliers = |w: WeightKind| -> Vec<Integer> {
        match w {
            WeightKind::Reciprocal(1) => cofactors.clone(),
            WeightKind::Reciprocal(e) => cofactors.iter().map(|c| c.clone().pow(e)).collect(),
            WeightKind::ReciprocalComplement => (0..domain).map(|i| cofactors[domain - 1 - i].clone()).collect(),
            WeightKind::SignedBinomial(e) => signed_binomials(e),
            WeightKind::Unit => vec![Integer::one(); domain],
        }
    };

    let mut scale = layer_scale(spec.weights[0]);
    let mut layer: Vec<Integer> = multipliers(spec.weights[0]);
    for t in 1..len {
        // pass 1: replace each slot with the prefix/suffix sum of the
        // previous layer dictated by the relation
        match spec.relations[t - 1] {
            Relation::Le => {
                let mut run = Integer::zero();
                for v in 0..domain {
                    run += std::mem::take(&mut layer[v]);
                    layer[v] = run.clone();
                }
            }
            Relation::Lt => {
                let mut run = Integer::zero();
                for v in 0..domain {
                    let old = std::mem::replace(&mut layer[v], run.clone());
                    run += old;
                }
            }
            Relation::Ge => {
                let mut run = Integer::zero();
                for v in (0..domain).rev() {
                    run += std::mem::take(&mut layer[v]);
                    layer[v] = run.clone();
                }
            }
            Relation::Gt => {
                let mut run = Integer::zero();
                for v in (0..domain).rev() {
                    let old = std::mem::replace(&mut layer[v], run.clone());
                    run += old;
                }
            }
        }
        // pass 2: multiply in this layer's weight numerators
        let mult = multipliers(spec.weights[t]);
        if domain >= 512 {
            layer
                .par_iter_mut()
                .zip(mult.par_iter())
                .for_each(|(x, m)| *x *= m);
        } else {
            for (x, m) in layer.iter_mut().zip(mult.iter()) {
                *x *= m;
            }
        }
        scale *= layer_scale(spec.weights[t]);
    }

    let total: Integer = layer.into_iter().sum();
    Rational::new(total, scale)
}

/// Exact value of the chain sum by nested enumeration, bounded by
/// [`DEFAULT_ENUM_LIMIT`] variables.
pub fn eval_chain_bruteforce(spec: &ChainSpec) -> Result<Rational, ChainError> {
    eval_chain_bruteforce_with_limit(spec, DEFAULT_ENUM_LIMIT)
}

/// As [`eval_chain_bruteforce`] with an explicit variable-count limit.
pub fn eval_chain_bruteforce_with_limit(
    spec: &ChainSpec,
    limit: usize,
) -> Result<Rational, ChainError> {
    spec.validate()?;
    if spec.len() > limit {
        return Err(ChainError::TooLarge {
            len: spec.len(),
            limit,
        });
    }
    if spec.is_empty() {
        return Ok(Rational::one());
    }

    fn recurse(spec: &ChainSpec, t: usize, prev: u32, partial: &Rational, total: &mut Rational) {
        for v in 1..spec.level {
            if t > 0 && !spec.relations[t - 1].holds(prev, v) {
                continue;
            }
            let here = partial * spec.weight_value(t, v);
            if t + 1 == spec.len() {
                *total += here;
            } else {
                recurse(spec, t + 1, v, &here, total);
            }
        }
    }

    let mut total = Rational::zero();
    recurse(spec, 0, 0, &Rational::one(), &mut total);
    Ok(total)
}
