//! Shared corpus enumerators and a seeded generator for the acceptance and
//! integration suites.

use mzv_core::{compositions, DiagIndex, ExponentSpec, Index, SkewDiagram};
use std::collections::HashSet;

/// SplitMix64; explicit constants so every suite draws the same streams on
/// every platform.
pub struct TestRng {
    state: u64,
}

impl TestRng {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }
}

/// Every index of weight at most `max_weight`, the empty index included.
pub fn indices_up_to(max_weight: u32) -> Vec<Index> {
    (0..=max_weight).flat_map(compositions).collect()
}

fn partitions_in_box(rows: usize, cols: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    fn rec(prefix: &mut Vec<u32>, maxv: u32, rows: usize, out: &mut Vec<Vec<u32>>) {
        if prefix.len() >= rows {
            return;
        }
        for v in (1..=maxv).rev() {
            prefix.push(v);
            out.push(prefix.clone());
            rec(prefix, v, rows, out);
            prefix.pop();
        }
    }
    rec(&mut Vec::new(), cols, rows, &mut out);
    out
}

fn sub_partitions(lambda: &[u32]) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    fn rec(i: usize, maxv: u32, lambda: &[u32], prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == lambda.len() {
            out.push(prefix.clone());
            return;
        }
        for v in (0..=maxv.min(lambda[i])).rev() {
            prefix.push(v);
            rec(i + 1, v, lambda, prefix, out);
            prefix.pop();
        }
    }
    rec(0, u32::MAX, lambda, &mut Vec::new(), &mut out);
    out
}

fn normalized_cells(diagram: &SkewDiagram) -> Vec<(u32, u32)> {
    let cells = diagram.cells();
    let min_i = cells.iter().map(|c| c.0).min().unwrap();
    let min_j = cells.iter().map(|c| c.1).min().unwrap();
    let mut normalized: Vec<(u32, u32)> = cells
        .iter()
        .map(|&(i, j)| (i - min_i, j - min_j))
        .collect();
    normalized.sort_unstable();
    normalized
}

fn is_connected(cells: &[(u32, u32)]) -> bool {
    let set: HashSet<(i64, i64)> = cells.iter().map(|&(i, j)| (i as i64, j as i64)).collect();
    let mut seen = HashSet::new();
    let start = *set.iter().next().expect("non-empty");
    let mut stack = vec![start];
    seen.insert(start);
    while let Some((i, j)) = stack.pop() {
        for next in [(i + 1, j), (i - 1, j), (i, j + 1), (i, j - 1)] {
            if set.contains(&next) && seen.insert(next) {
                stack.push(next);
            }
        }
    }
    seen.len() == set.len()
}

/// All connected skew diagrams with 1..=`max_cells` cells inside a
/// `box_size` x `box_size` box and diagonals no longer than `max_diag`,
/// deduplicated up to translation, plus `extra_disconnected` evenly spaced
/// disconnected shapes from the same scan. Disconnected shapes factor into
/// products of their components, so a sample suffices for them.
pub fn skew_corpus(
    max_cells: usize,
    box_size: u32,
    max_diag: usize,
    extra_disconnected: usize,
) -> Vec<SkewDiagram> {
    let mut connected = Vec::new();
    let mut disconnected = Vec::new();
    let mut seen = HashSet::new();
    for lambda in partitions_in_box(box_size as usize, box_size) {
        if lambda.is_empty() {
            continue;
        }
        for mu in sub_partitions(&lambda) {
            let Ok(diagram) = SkewDiagram::new(lambda.clone(), mu) else {
                continue;
            };
            let cells = diagram.cell_count();
            if cells == 0 || cells > max_cells || diagram.max_diagonal_len() > max_diag {
                continue;
            }
            if !seen.insert(normalized_cells(&diagram)) {
                continue;
            }
            if is_connected(&diagram.cells()) {
                connected.push(diagram);
            } else {
                disconnected.push(diagram);
            }
        }
    }
    if extra_disconnected > 0 && !disconnected.is_empty() {
        let step = (disconnected.len() / extra_disconnected).max(1);
        connected.extend(
            disconnected
                .into_iter()
                .step_by(step)
                .take(extra_disconnected),
        );
    }
    connected
}

/// Exponent assignments for a diagram with parts bounded by `max_exponent`:
/// the full cross product when the diagram has at most three diagonals,
/// otherwise every uniform map plus `sampled` seeded mixed maps.
pub fn exponent_corpus(
    diagram: &SkewDiagram,
    max_exponent: u32,
    sampled: usize,
    rng: &mut TestRng,
) -> Vec<ExponentSpec> {
    let diagonals: Vec<i64> = diagram.diagonals().iter().map(|&(p, _)| p).collect();
    let count = diagonals.len();
    if count <= 3 {
        let mut out = Vec::new();
        let mut current = vec![1u32; count];
        loop {
            out.push(ExponentSpec::PerDiagonal(
                diagonals.iter().copied().zip(current.iter().copied()).collect(),
            ));
            let mut pos = count;
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                if current[pos] < max_exponent {
                    current[pos] += 1;
                    for slot in current.iter_mut().skip(pos + 1) {
                        *slot = 1;
                    }
                    break;
                }
            }
        }
    }
    let mut out: Vec<ExponentSpec> = (1..=max_exponent).map(ExponentSpec::Uniform).collect();
    for _ in 0..sampled {
        out.push(ExponentSpec::PerDiagonal(
            diagonals
                .iter()
                .map(|&p| (p, 1 + rng.below(max_exponent as u64) as u32))
                .collect(),
        ));
    }
    out
}

pub fn diag_index(diagram: &SkewDiagram, spec: &ExponentSpec) -> DiagIndex {
    DiagIndex::new(diagram.clone(), spec).expect("corpus exponents are valid")
}
