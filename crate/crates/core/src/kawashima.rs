//! Exact evaluation of the nested Kawashima series at integer arguments.
//!
//! The series attached to an index, taken at `z = N - 1`, is an infinite
//! nested sum. Processing its variables innermost-out, each step is one of
//! two reciprocal-difference transformations (one for weak within-block
//! bounds, one for strict between-block bounds), and every step trades the
//! infinite variable for a finite one in `[1, N-1]`. The pipeline therefore
//! compiles the series into a finite zigzag [`ChainSpec`], which the chain
//! engine evaluates exactly. A truncated evaluator with a proven tail bound
//! provides an independent numeric check.

use crate::arith::{rat, Integer, Rational};
use crate::chain::{eval_chain_dp, ChainSpec, Relation, WeightKind};
use crate::index::Index;
use num::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum KawashimaError {
    #[error("the empty index has no Kawashima series")]
    EmptyIndex,
    #[error("level must be at least 1")]
    LevelZero,
}

/// An evaluation request: the series of the reversed index at `z = N - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KawashimaQuery {
    index: Index,
    level: u32,
}

impl KawashimaQuery {
    pub fn new(index: Index, level: u32) -> Result<Self, KawashimaError> {
        if index.is_empty() {
            return Err(KawashimaError::EmptyIndex);
        }
        if level == 0 {
            return Err(KawashimaError::LevelZero);
        }
        Ok(Self { index, level })
    }

    pub fn index(&self) -> &Index {
        &self.index
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// `z = N - 1`.
    pub fn argument(&self) -> u32 {
        self.level - 1
    }
}

/// Exact value of `sum_{m >= first} (1/(m+shift) - 1/(m+shift+delta))`,
/// which telescopes to the finite sum `sum_{j=0}^{delta-1} 1/(first+shift+j)`.
pub fn telescoping_tail(first: u64, shift: u64, delta: u64) -> Rational {
    let mut acc = Rational::zero();
    for j in 0..delta {
        acc += Rational::new(Integer::one(), Integer::from(first + shift + j));
    }
    acc
}

/// The finite chain produced by the transformation pipeline.
///
/// Variables of the series for the reversed index are consumed from the
/// innermost outward. The state after each step is a difference of two
/// reciprocals in the next-outer variable; a weak (within-block) bound
/// applies the transformation that emits a `1/n`-weighted variable below
/// the previous one, a strict (between-block) bound emits a
/// `1/(N-n)`-weighted variable above it, and the final telescope emits one
/// more `1/(N-n)` variable.
pub fn telescoped_chain(query: &KawashimaQuery) -> ChainSpec {
    let reversed = query.index().reversed();
    let mut block_of = Vec::new();
    for (block, &part) in reversed.parts().iter().enumerate() {
        for _ in 0..part {
            block_of.push(block);
        }
    }
    let len = block_of.len();
    let mut weights = Vec::with_capacity(len);
    let mut relations = Vec::with_capacity(len.saturating_sub(1));
    for u in (2..=len).rev() {
        if block_of[u - 1] == block_of[u - 2] {
            // within-block step: emitted variable sits below the previous one
            weights.push(WeightKind::Reciprocal(1));
            relations.push(Relation::Ge);
        } else {
            weights.push(WeightKind::ReciprocalComplement);
            relations.push(Relation::Le);
        }
    }
    weights.push(WeightKind::ReciprocalComplement);
    ChainSpec::new(query.level(), weights, relations).expect("consistent construction")
}

/// Exact value of the series at `z = N - 1` through the telescoping
/// pipeline. Agrees with both the star sum and its flat form.
pub fn kawashima_exact(query: &KawashimaQuery) -> Rational {
    eval_chain_dp(&telescoped_chain(query)).expect("valid spec")
}

/// Partial sum of the series over all terms whose largest variable is at
/// most `cap`, plus a proven upper bound on the dropped tail.
///
/// The bound: a term with largest variable `m` is at most `z/m^2` times a
/// product bounded by `H_m^(w-1)`, so the tail is at most
/// `z * sum_{m > cap} H_m^(w-1) / m^2`. With `H_m <= 1 + ln m` and an
/// integral comparison (the integrand decreases once `ln m >= (w-3)/2`)
/// this is at most `z * (e/M) * (w-1)! * sum_{j<w} (1+ln M)^j / j!`.
/// Rational upper bounds stand in for `e` and `ln M`; below the
/// monotonicity threshold the initial tail segment is added exactly.
pub fn kawashima_truncated(query: &KawashimaQuery, cap: u32) -> (Rational, Rational) {
    assert!(cap >= 1, "truncation point must be positive");
    let z = query.argument() as u64;
    if z == 0 {
        // every kernel factor vanishes
        return (Rational::zero(), Rational::zero());
    }
    let partial = truncated_partial(query, cap, z);
    let weight = query.index().weight();
    (partial, tail_bound(z, weight, cap as u64))
}

fn truncated_partial(query: &KawashimaQuery, cap: u32, z: u64) -> Rational {
    let reversed = query.index().reversed();
    let parts = reversed.parts();
    // per-slot weights of the series for the reversed index
    enum Slot {
        Shifted,   // 1/(v+z)
        BlockEnd,  // 1/v
        Kernel,    // 1/v - 1/(v+z)
    }
    let mut slots = Vec::new();
    let mut strict_before = Vec::new();
    for (block, &part) in parts.iter().enumerate() {
        for s in 1..=part {
            strict_before.push(s == 1 && block > 0);
            if s < part {
                slots.push(Slot::Shifted);
            } else if block + 1 < parts.len() {
                slots.push(Slot::BlockEnd);
            } else {
                slots.push(Slot::Kernel);
            }
        }
    }

    let weight_of = |slot: &Slot, v: u64| -> Rational {
        match slot {
            Slot::Shifted => Rational::new(Integer::one(), Integer::from(v + z)),
            Slot::BlockEnd => Rational::new(Integer::one(), Integer::from(v)),
            Slot::Kernel => Rational::new(Integer::from(z), Integer::from(v * (v + z))),
        }
    };

    let cap = cap as usize;
    let mut layer: Vec<Rational> = (1..=cap as u64)
        .map(|v| weight_of(&slots[0], v))
        .collect();
    for (t, slot) in slots.iter().enumerate().skip(1) {
        let mut run = Rational::zero();
        if strict_before[t] {
            for x in layer.iter_mut() {
                let old = std::mem::replace(x, run.clone());
                run += old;
            }
        } else {
            for x in layer.iter_mut() {
                run += std::mem::take(x);
                *x = run.clone();
            }
        }
        for (v, x) in layer.iter_mut().enumerate() {
            *x *= weight_of(slot, v as u64 + 1);
        }
    }
    layer.into_iter().sum()
}

/// `ceil(log2 m)` and `floor(log2 m)` for `m >= 1`.
fn log2_bounds(m: u64) -> (u64, u64) {
    let floor = 63 - m.leading_zeros() as u64;
    let ceil = if m.is_power_of_two() { floor } else { floor + 1 };
    (ceil, floor)
}

fn factorial(n: u64) -> Integer {
    (1..=n).fold(Integer::one(), |acc, i| acc * Integer::from(i))
}

fn tail_bound(z: u64, weight: u64, cap: u64) -> Rational {
    // rational bounds: e <= 27183/10000, ln 2 in [693147, 693148] / 10^6
    let e_up = rat(27183, 10000);
    let ln2_up = rat(693148, 1_000_000);
    let ln2_low = rat(693147, 1_000_000);

    let formula = |m: u64| -> Rational {
        let (ceil, _) = log2_bounds(m);
        let ln_up = &ln2_up * Rational::from(Integer::from(ceil));
        let base = Rational::one() + ln_up;
        let mut series = Rational::zero();
        let mut power = Rational::one();
        for j in 0..weight {
            series += &power / Rational::from(factorial(j));
            power *= &base;
        }
        Rational::from(Integer::from(z)) * &e_up / Rational::from(Integer::from(m))
            * Rational::from(factorial(weight - 1))
            * series
    };
    // the integral comparison needs the integrand decreasing from cap on:
    // ln cap >= (weight - 3) / 2
    let decreasing_from = |m: u64| -> bool {
        let (_, floor) = log2_bounds(m);
        &ln2_low * Rational::from(Integer::from(2 * floor))
            >= Rational::from(Integer::from(weight as i64 - 3))
    };

    if decreasing_from(cap) {
        return formula(cap);
    }
    // prepend the exact segment z * H_t^(w-1) / t^2 up to the threshold
    let mut pivot = cap;
    while !decreasing_from(pivot) {
        pivot *= 2;
    }
    let mut harmonic = Rational::zero();
    for t in 1..=cap {
        harmonic += Rational::new(Integer::one(), Integer::from(t));
    }
    let mut segment = Rational::zero();
    for t in cap + 1..=pivot {
        harmonic += Rational::new(Integer::one(), Integer::from(t));
        let mut term = Rational::from(Integer::from(z));
        for _ in 0..weight - 1 {
            term *= &harmonic;
        }
        term /= Rational::from(Integer::from(t * t));
        segment += term;
    }
    segment + formula(pivot)
}
