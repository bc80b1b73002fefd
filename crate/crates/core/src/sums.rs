//! The six linear sums, as chain builders plus their exact evaluation:
//! harmonic and star harmonic sums, both flat ("Riemann sum") forms,
//! Hoffman-type sums and the flat Hoffman form.

use crate::arith::Rational;
use crate::chain::{eval_chain_dp, ChainSpec, Relation, WeightKind};
use crate::index::{Index, IndexError};

/// `0 < m_1 < ... < m_r < N` with weights `1/m_i^{k_i}`.
pub fn zeta_chain(k: &Index, level: u32) -> ChainSpec {
    ordered_chain(k, level, Relation::Lt)
}

/// `0 < m_1 <= ... <= m_r < N` with weights `1/m_i^{k_i}`.
pub fn zeta_star_chain(k: &Index, level: u32) -> ChainSpec {
    ordered_chain(k, level, Relation::Le)
}

fn ordered_chain(k: &Index, level: u32, rel: Relation) -> ChainSpec {
    let weights = k
        .parts()
        .iter()
        .map(|&p| WeightKind::Reciprocal(p))
        .collect::<Vec<_>>();
    let relations = vec![rel; k.depth().saturating_sub(1)];
    ChainSpec::new(level, weights, relations).expect("consistent construction")
}

/// Flat form of the harmonic sum: per-part blocks `n_{i1} <= ... <= n_{ik_i}`
/// joined by strict `<`, weighted `1/((N-n_{i1}) n_{i2} ... n_{ik_i})`.
pub fn flat_chain(k: &Index, level: u32) -> ChainSpec {
    let mut weights = Vec::new();
    let mut relations = Vec::new();
    for (i, &part) in k.parts().iter().enumerate() {
        if i > 0 {
            relations.push(Relation::Lt);
        }
        weights.push(WeightKind::ReciprocalComplement);
        for _ in 1..part {
            relations.push(Relation::Le);
            weights.push(WeightKind::Reciprocal(1));
        }
    }
    ChainSpec::new(level, weights, relations).expect("consistent construction")
}

/// Flat form of the star sum. Blocks are emitted last-first so that the
/// cross-block constraint `n_{(i-1)1} <= n_{ik_i}` turns the chain into a
/// zigzag: within a block `<=`, and `>=` from a block's last slot to the
/// previous block's first slot.
pub fn star_flat_chain(k: &Index, level: u32) -> ChainSpec {
    star_flat_zigzag(k, level, WeightKind::ReciprocalComplement)
}

/// Flat form of the Hoffman sum: the same zigzag as [`star_flat_chain`],
/// except the final block (emitted first) is weighted `1/(n_{r1}...n_{rk_r})`.
pub fn hoffman_flat_chain(k: &Index, level: u32) -> ChainSpec {
    star_flat_zigzag(k, level, WeightKind::Reciprocal(1))
}

fn star_flat_zigzag(k: &Index, level: u32, last_block_head: WeightKind) -> ChainSpec {
    let mut weights = Vec::new();
    let mut relations = Vec::new();
    for (emitted, &part) in k.parts().iter().rev().enumerate() {
        if emitted > 0 {
            relations.push(Relation::Ge);
        }
        weights.push(if emitted == 0 {
            last_block_head
        } else {
            WeightKind::ReciprocalComplement
        });
        for _ in 1..part {
            relations.push(Relation::Le);
            weights.push(WeightKind::Reciprocal(1));
        }
    }
    ChainSpec::new(level, weights, relations).expect("consistent construction")
}

/// `1 <= m_1 <= ... <= m_r < N`, weights `1/m_i^{k_i}` with the extra factor
/// `(-1)^(m_r - 1) C(N-1, m_r)` on the last variable.
pub fn hoffman_chain(k: &Index, level: u32) -> ChainSpec {
    let depth = k.depth();
    let weights = k
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            if i + 1 == depth {
                WeightKind::SignedBinomial(p)
            } else {
                WeightKind::Reciprocal(p)
            }
        })
        .collect::<Vec<_>>();
    let relations = vec![Relation::Le; depth.saturating_sub(1)];
    ChainSpec::new(level, weights, relations).expect("consistent construction")
}

/// Multiple harmonic sum truncated below `level`; 1 on the empty index.
pub fn mhs(k: &Index, level: u32) -> Rational {
    eval_chain_dp(&zeta_chain(k, level)).expect("valid spec")
}

/// Star harmonic sum truncated below `level`; 1 on the empty index.
pub fn mhs_star(k: &Index, level: u32) -> Rational {
    eval_chain_dp(&zeta_star_chain(k, level)).expect("valid spec")
}

/// Flat form of [`mhs`]; equal to it at every level.
pub fn mhs_flat(k: &Index, level: u32) -> Rational {
    eval_chain_dp(&flat_chain(k, level)).expect("valid spec")
}

/// Flat form of [`mhs_star`]; equal to it at every level.
pub fn mhs_star_flat(k: &Index, level: u32) -> Rational {
    eval_chain_dp(&star_flat_chain(k, level)).expect("valid spec")
}

/// Hoffman-type sum; rejects the empty index.
pub fn hoffman_h(k: &Index, level: u32) -> Result<Rational, IndexError> {
    if k.is_empty() {
        return Err(IndexError::Empty);
    }
    Ok(eval_chain_dp(&hoffman_chain(k, level)).expect("valid spec"))
}

/// Flat form of [`hoffman_h`]; rejects the empty index.
pub fn hoffman_h_flat(k: &Index, level: u32) -> Result<Rational, IndexError> {
    if k.is_empty() {
        return Err(IndexError::Empty);
    }
    Ok(eval_chain_dp(&hoffman_flat_chain(k, level)).expect("valid spec"))
}
