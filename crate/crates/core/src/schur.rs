//! Skew Young diagrams with diagonally constant exponents, semi-standard
//! tableau sums, their diagonal rewriting, the flat form, and the connected
//! sum interpolating between the two.
//!
//! A diagram is split into diagonals `p = i - j`; each non-empty diagonal
//! maps to an interval `J_p` of column indices, and adjacent intervals form
//! a "consecutive pair". Tuples indexed by these intervals are compared by
//! the relations [`rel_strict`] and [`rel_weak`], and the binomial-ratio
//! kernel `C_N` with its determinant extension `D_N` connects the tableau
//! sum to the flat sum one diagonal at a time.

use crate::arith::{binomial, det_exact, Integer, Rational, RationalMatrix};
use num::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SchurError {
    #[error("invalid skew shape: {0}")]
    InvalidShape(String),
    #[error("intervals do not form a consecutive pair")]
    NotConsecutive,
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("invalid exponent specification: {0}")]
    InvalidExponent(String),
    #[error("cannot parse `{0}`")]
    Parse(String),
}

/// An integer interval `[lo, hi]`; empty when `lo > hi` (normalized to
/// `[1, 0]`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: i64,
    hi: i64,
}

impl Interval {
    pub fn new(lo: i64, hi: i64) -> Self {
        if lo > hi {
            Self::empty()
        } else {
            Self { lo, hi }
        }
    }

    pub fn empty() -> Self {
        Self { lo: 1, hi: 0 }
    }

    pub fn singleton(j: i64) -> Self {
        Self { lo: j, hi: j }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn len(&self) -> usize {
        if self.is_empty() {
            0
        } else {
            (self.hi - self.lo + 1) as usize
        }
    }

    pub fn contains(&self, j: i64) -> bool {
        self.lo <= j && j <= self.hi
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }

    fn union(&self, other: &Interval) -> Interval {
        match (self.is_empty(), other.is_empty()) {
            (true, true) => Interval::empty(),
            (true, false) => *other,
            (false, true) => *self,
            (false, false) => Interval::new(self.lo.min(other.lo), self.hi.max(other.hi)),
        }
    }
}

/// Whether `(j, j')` is a consecutive pair: `j'` equals `j`, optionally
/// extended by one on the left and/or with its last element removed. An
/// empty `j` pairs with the empty interval or any singleton.
pub fn consecutive(j: Interval, j_next: Interval) -> bool {
    if j.is_empty() {
        return j_next.len() <= 1;
    }
    let candidates = [
        j,
        Interval::new(j.lo, j.hi - 1),
        Interval::new(j.lo - 1, j.hi),
        Interval::new(j.lo - 1, j.hi - 1),
    ];
    candidates.contains(&j_next)
}

/// A tuple of integers indexed by an interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalTuple {
    interval: Interval,
    values: Vec<i64>,
}

impl IntervalTuple {
    pub fn new(interval: Interval, values: Vec<i64>) -> Result<Self, SchurError> {
        if values.len() != interval.len() {
            return Err(SchurError::InvalidShape(format!(
                "{} values on an interval of length {}",
                values.len(),
                interval.len()
            )));
        }
        Ok(Self { interval, values })
    }

    pub fn empty() -> Self {
        Self {
            interval: Interval::empty(),
            values: Vec::new(),
        }
    }

    pub fn interval(&self) -> Interval {
        self.interval
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn get(&self, j: i64) -> i64 {
        self.values[(j - self.interval.lo) as usize]
    }

    /// Product of the entries; 1 for the empty tuple.
    pub fn product(&self) -> Integer {
        self.values
            .iter()
            .fold(Integer::one(), |acc, &v| acc * Integer::from(v))
    }

    /// Componentwise `N - v`.
    pub fn complement(&self, level: u32) -> Self {
        Self {
            interval: self.interval,
            values: self.values.iter().map(|&v| level as i64 - v).collect(),
        }
    }

    /// Componentwise `v - 1`.
    pub fn minus_one(&self) -> Self {
        Self {
            interval: self.interval,
            values: self.values.iter().map(|&v| v - 1).collect(),
        }
    }

    pub fn is_nondecreasing(&self) -> bool {
        self.values.windows(2).all(|w| w[0] <= w[1])
    }
}

/// The relation `m ◁ n` between tuples on a consecutive pair: strict `<` on
/// shared positions, `n_{j-1} <= m_j` on shifted ones. Vacuously true when
/// no condition applies.
pub fn rel_strict(m: &IntervalTuple, n: &IntervalTuple) -> Result<bool, SchurError> {
    rel(m, n, true)
}

/// The relation `m ⊴ n`: weak `<=` on shared positions, strict
/// `n_{j-1} < m_j` on shifted ones. Note this is not "`◁` or equal";
/// instead `m ◁ n` iff `m ⊴ n - 1`.
pub fn rel_weak(m: &IntervalTuple, n: &IntervalTuple) -> Result<bool, SchurError> {
    rel(m, n, false)
}

fn rel(m: &IntervalTuple, n: &IntervalTuple, strict: bool) -> Result<bool, SchurError> {
    if !consecutive(m.interval, n.interval) {
        return Err(SchurError::NotConsecutive);
    }
    for j in m.interval.iter() {
        if n.interval.contains(j) {
            let ok = if strict {
                m.get(j) < n.get(j)
            } else {
                m.get(j) <= n.get(j)
            };
            if !ok {
                return Ok(false);
            }
        }
        if n.interval.contains(j - 1) {
            let ok = if strict {
                n.get(j - 1) <= m.get(j)
            } else {
                n.get(j - 1) < m.get(j)
            };
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A skew Young diagram `lambda/mu`: cells `(i, j)` with
/// `mu_i < j <= lambda_i`, rows and columns 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewDiagram {
    lambda: Vec<u32>,
    mu: Vec<u32>,
}

impl SkewDiagram {
    pub fn new(lambda: Vec<u32>, mut mu: Vec<u32>) -> Result<Self, SchurError> {
        if mu.len() > lambda.len() {
            if mu[lambda.len()..].iter().any(|&x| x != 0) {
                return Err(SchurError::InvalidShape(
                    "mu has more rows than lambda".to_string(),
                ));
            }
            mu.truncate(lambda.len());
        }
        mu.resize(lambda.len(), 0);
        if lambda.windows(2).any(|w| w[0] < w[1]) {
            return Err(SchurError::InvalidShape(
                "lambda must be weakly decreasing".to_string(),
            ));
        }
        if mu.windows(2).any(|w| w[0] < w[1]) {
            return Err(SchurError::InvalidShape(
                "mu must be weakly decreasing".to_string(),
            ));
        }
        if lambda.iter().zip(mu.iter()).any(|(&l, &m)| m > l) {
            return Err(SchurError::InvalidShape(
                "mu must fit inside lambda".to_string(),
            ));
        }
        let diagram = Self { lambda, mu };
        // guard: adjacent diagonals must form consecutive pairs, including
        // the empty boundary diagonals
        if let Some((p0, p1)) = diagram.diagonal_range() {
            for p in p0 - 1..=p1 {
                if !consecutive(diagram.interval_on(p), diagram.interval_on(p + 1)) {
                    return Err(SchurError::NotConsecutive);
                }
            }
        }
        Ok(diagram)
    }

    pub fn lambda(&self) -> &[u32] {
        &self.lambda
    }

    pub fn mu(&self) -> &[u32] {
        &self.mu
    }

    /// Cells `(i, j)`, 1-based, in row-major order.
    pub fn cells(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for (row, (&l, &m)) in self.lambda.iter().zip(self.mu.iter()).enumerate() {
            for j in m + 1..=l {
                out.push((row as u32 + 1, j));
            }
        }
        out
    }

    pub fn cell_count(&self) -> usize {
        self.lambda
            .iter()
            .zip(self.mu.iter())
            .map(|(&l, &m)| (l - m) as usize)
            .sum()
    }

    pub fn contains(&self, i: u32, j: u32) -> bool {
        if i == 0 || i as usize > self.lambda.len() {
            return false;
        }
        let row = i as usize - 1;
        self.mu[row] < j && j <= self.lambda[row]
    }

    /// Column interval `J_p` of the diagonal `i - j = p`.
    pub fn interval_on(&self, p: i64) -> Interval {
        let mut lo = i64::MAX;
        let mut hi = i64::MIN;
        for (row, (&l, &m)) in self.lambda.iter().zip(self.mu.iter()).enumerate() {
            let i = row as i64 + 1;
            let j = i - p;
            if j > m as i64 && j <= l as i64 {
                lo = lo.min(j);
                hi = hi.max(j);
            }
        }
        if lo > hi {
            Interval::empty()
        } else {
            Interval::new(lo, hi)
        }
    }

    /// `(p0, p1)`: the smallest and largest `p` with a non-empty diagonal.
    pub fn diagonal_range(&self) -> Option<(i64, i64)> {
        let cells = self.cells();
        let ps = cells.iter().map(|&(i, j)| i as i64 - j as i64);
        let p0 = ps.clone().min()?;
        let p1 = cells.iter().map(|&(i, j)| i as i64 - j as i64).max()?;
        Some((p0, p1))
    }

    /// Non-empty diagonals `(p, J_p)` in increasing `p`.
    pub fn diagonals(&self) -> Vec<(i64, Interval)> {
        let Some((p0, p1)) = self.diagonal_range() else {
            return Vec::new();
        };
        (p0..=p1)
            .map(|p| (p, self.interval_on(p)))
            .filter(|(_, j)| !j.is_empty())
            .collect()
    }

    pub fn max_diagonal_len(&self) -> usize {
        self.diagonals()
            .iter()
            .map(|(_, j)| j.len())
            .max()
            .unwrap_or(0)
    }
}

impl FromStr for SkewDiagram {
    type Err = SchurError;

    /// Parses `"lambda=a1,a2,...;mu=b1,b2,..."`; the `mu=` clause may be
    /// omitted for a straight shape.
    fn from_str(s: &str) -> Result<Self, SchurError> {
        let mut lambda = None;
        let mut mu = Vec::new();
        for clause in s.split(';') {
            let clause = clause.trim();
            if clause.is_empty() {
                continue;
            }
            let (name, values) = clause
                .split_once('=')
                .ok_or_else(|| SchurError::Parse(clause.to_string()))?;
            let parsed: Result<Vec<u32>, _> = values
                .split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|t| t.trim().parse::<u32>())
                .collect();
            let parsed = parsed.map_err(|_| SchurError::Parse(values.to_string()))?;
            match name.trim() {
                "lambda" => lambda = Some(parsed),
                "mu" => mu = parsed,
                other => return Err(SchurError::Parse(other.to_string())),
            }
        }
        let lambda = lambda.ok_or_else(|| SchurError::Parse("missing lambda=".to_string()))?;
        SkewDiagram::new(lambda, mu)
    }
}

impl fmt::Display for SkewDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u32]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "lambda={}", join(&self.lambda))?;
        if self.mu.iter().any(|&m| m != 0) {
            write!(f, ";mu={}", join(&self.mu))?;
        }
        Ok(())
    }
}

/// Exponent assignment for a diagram's diagonals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExponentSpec {
    /// one exponent for every non-empty diagonal
    Uniform(u32),
    /// explicit `p -> k` entries; unnamed diagonals default to 1
    PerDiagonal(Vec<(i64, u32)>),
}

impl FromStr for ExponentSpec {
    type Err = SchurError;

    /// Parses either a single integer or a list `"p0:k,p1:k,..."`.
    fn from_str(s: &str) -> Result<Self, SchurError> {
        let s = s.trim();
        if let Ok(k) = s.parse::<u32>() {
            return Ok(ExponentSpec::Uniform(k));
        }
        let mut entries = Vec::new();
        for item in s.split(',') {
            let (p, k) = item
                .split_once(':')
                .ok_or_else(|| SchurError::Parse(item.to_string()))?;
            let p: i64 = p
                .trim()
                .parse()
                .map_err(|_| SchurError::Parse(item.to_string()))?;
            let k: u32 = k
                .trim()
                .parse()
                .map_err(|_| SchurError::Parse(item.to_string()))?;
            entries.push((p, k));
        }
        Ok(ExponentSpec::PerDiagonal(entries))
    }
}

/// A skew diagram together with a diagonally constant exponent `k_p` for
/// each diagonal; `k_p = 1` on empty diagonals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagIndex {
    diagram: SkewDiagram,
    p0: i64,
    exponents: Vec<u32>,
}

impl DiagIndex {
    pub fn new(diagram: SkewDiagram, spec: &ExponentSpec) -> Result<Self, SchurError> {
        let range = diagram.diagonal_range();
        let (p0, p1) = match range {
            Some(r) => r,
            None => {
                return Ok(Self {
                    diagram,
                    p0: 0,
                    exponents: Vec::new(),
                })
            }
        };
        let mut exponents = vec![1u32; (p1 - p0 + 1) as usize];
        match spec {
            ExponentSpec::Uniform(k) => {
                if *k == 0 {
                    return Err(SchurError::InvalidExponent("exponent 0".to_string()));
                }
                for p in p0..=p1 {
                    if !diagram.interval_on(p).is_empty() {
                        exponents[(p - p0) as usize] = *k;
                    }
                }
            }
            ExponentSpec::PerDiagonal(entries) => {
                let mut map = BTreeMap::new();
                for &(p, k) in entries {
                    if k == 0 {
                        return Err(SchurError::InvalidExponent("exponent 0".to_string()));
                    }
                    if p < p0 || p > p1 {
                        return Err(SchurError::InvalidExponent(format!(
                            "diagonal {p} outside [{p0}, {p1}]"
                        )));
                    }
                    map.insert(p, k);
                }
                for (&p, &k) in &map {
                    // the convention pins k_p = 1 on empty diagonals
                    if !diagram.interval_on(p).is_empty() {
                        exponents[(p - p0) as usize] = k;
                    }
                }
            }
        }
        Ok(Self {
            diagram,
            p0,
            exponents,
        })
    }

    pub fn uniform(diagram: SkewDiagram, k: u32) -> Result<Self, SchurError> {
        Self::new(diagram, &ExponentSpec::Uniform(k))
    }

    pub fn diagram(&self) -> &SkewDiagram {
        &self.diagram
    }

    /// `k_p`; 1 outside the diagonal range and on empty diagonals.
    pub fn exponent(&self, p: i64) -> u32 {
        let idx = p - self.p0;
        if idx < 0 || idx as usize >= self.exponents.len() {
            return 1;
        }
        self.exponents[idx as usize]
    }

    pub fn exponents_text(&self) -> String {
        self.diagram
            .diagonals()
            .iter()
            .map(|(p, _)| format!("{p}:{}", self.exponent(*p)))
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// `C_N(m, n) = C(n, m) / C(N-1, m)` for `0 <= m, n <= N-1`.
pub fn c_n(level: u32, m: i64, n: i64) -> Result<Rational, SchurError> {
    let top = level as i64 - 1;
    if m < 0 || n < 0 || m > top || n > top {
        return Err(SchurError::OutOfRange(format!(
            "C_N arguments ({m}, {n}) outside [0, {top}]"
        )));
    }
    Ok(Rational::new(
        binomial(n as u64, m),
        binomial(top as u64, m),
    ))
}

/// Determinant connector `D_N(m, n)`: pad `m` with 0 off its interval and
/// `n` with `N-1` off its interval over the union, then take
/// `det(C_N(m_j1, n_j2))`. Equals 1 when either interval is empty.
pub fn d_n(level: u32, m: &IntervalTuple, n: &IntervalTuple) -> Result<Rational, SchurError> {
    if !consecutive(m.interval(), n.interval()) {
        return Err(SchurError::NotConsecutive);
    }
    let top = level as i64 - 1;
    for t in [m, n] {
        if t.values().iter().any(|&v| v < 0 || v > top) {
            return Err(SchurError::OutOfRange(format!(
                "tuple entry outside [0, {top}]"
            )));
        }
    }
    let union = m.interval().union(&n.interval());
    let js: Vec<i64> = union.iter().collect();
    let padded_m = |j: i64| if m.interval().contains(j) { m.get(j) } else { 0 };
    let padded_n = |j: i64| {
        if n.interval().contains(j) {
            n.get(j)
        } else {
            top
        }
    };
    let matrix = RationalMatrix::from_fn(js.len(), js.len(), |r, c| {
        c_n(level, padded_m(js[r]), padded_n(js[c])).expect("entries validated")
    });
    Ok(det_exact(&matrix).expect("square by construction"))
}

/// All tuples over `interval` with entries in `[lo, hi]`. The empty
/// interval has exactly one tuple (the empty one).
pub fn tuple_space_in(interval: Interval, lo: i64, hi: i64) -> Vec<IntervalTuple> {
    let len = interval.len();
    if len == 0 {
        return vec![IntervalTuple::empty()];
    }
    if lo > hi {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut current = vec![lo; len];
    loop {
        out.push(IntervalTuple::new(interval, current.clone()).expect("matching length"));
        let mut pos = len;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if current[pos] < hi {
                current[pos] += 1;
                for slot in current.iter_mut().skip(pos + 1) {
                    *slot = lo;
                }
                break;
            }
        }
    }
}

/// All tuples over `interval` with entries in `[1, level-1]`.
pub fn tuple_space(interval: Interval, level: u32) -> Vec<IntervalTuple> {
    tuple_space_in(interval, 1, level as i64 - 1)
}

/// Representatives, up to translation, of the consecutive interval pairs
/// whose union has at most `max_union_len` elements. The first interval
/// always starts at 1.
pub fn consecutive_pairs(max_union_len: usize) -> Vec<(Interval, Interval)> {
    let mut out = Vec::new();
    let mut firsts = vec![Interval::empty()];
    for hi in 1..=max_union_len as i64 {
        firsts.push(Interval::new(1, hi));
    }
    for j in firsts {
        let candidates = if j.is_empty() {
            vec![Interval::empty(), Interval::singleton(1)]
        } else {
            vec![
                j,
                Interval::new(j.lo(), j.hi() - 1),
                Interval::new(j.lo() - 1, j.hi()),
                Interval::new(j.lo() - 1, j.hi() - 1),
            ]
        };
        for c in candidates {
            if j.union(&c).len() <= max_union_len && !out.contains(&(j, c)) {
                out.push((j, c));
            }
        }
    }
    out
}

fn reciprocal_power(t: &IntervalTuple, e: u32) -> Rational {
    Rational::new(Integer::one(), t.product().pow(e))
}

/// Schur harmonic sum over semi-standard tableaux with entries below
/// `level`: rows weakly increasing, columns strictly increasing, cell
/// `(i, j)` weighted `1/m_{ij}^{k_{i-j}}`. 1 on the empty diagram.
pub fn schur_mhs(ki: &DiagIndex, level: u32) -> Rational {
    let cells = ki.diagram().cells();
    if cells.is_empty() {
        return Rational::one();
    }
    if level <= 1 {
        return Rational::zero();
    }

    fn recurse(
        ki: &DiagIndex,
        cells: &[(u32, u32)],
        level: u32,
        values: &mut Vec<u32>,
        partial: &Rational,
        total: &mut Rational,
    ) {
        let idx = values.len();
        if idx == cells.len() {
            *total += partial;
            return;
        }
        let (i, j) = cells[idx];
        let mut lb = 1;
        // left neighbour: row weakly increasing
        if let Some(s) = cells[..idx].iter().position(|&c| c == (i, j - 1)) {
            lb = lb.max(values[s]);
        }
        // upper neighbour: column strictly increasing
        if let Some(s) = cells[..idx].iter().position(|&c| c == (i - 1, j)) {
            lb = lb.max(values[s] + 1);
        }
        let e = ki.exponent(i as i64 - j as i64);
        for v in lb..level {
            let weight = Rational::new(Integer::one(), Integer::from(v).pow(e));
            values.push(v);
            recurse(ki, cells, level, values, &(partial * weight), total);
            values.pop();
        }
    }

    let mut total = Rational::zero();
    recurse(
        ki,
        &cells,
        level,
        &mut Vec::with_capacity(cells.len()),
        &Rational::one(),
        &mut total,
    );
    total
}

/// The tableau sum rewritten over diagonals: chains of interval tuples
/// `m_{p0} ◁ ... ◁ m_{p1}` weighted `1/Π(m_p)^{k_p}`. Same value as
/// [`schur_mhs`], different evaluation route.
pub fn schur_mhs_diagonal(ki: &DiagIndex, level: u32) -> Rational {
    let Some((p0, p1)) = ki.diagram().diagonal_range() else {
        return Rational::one();
    };
    let mut table: Vec<(IntervalTuple, Rational)> = tuple_space(ki.diagram().interval_on(p0), level)
        .into_iter()
        .map(|t| {
            let w = reciprocal_power(&t, ki.exponent(p0));
            (t, w)
        })
        .collect();
    for p in p0 + 1..=p1 {
        let e = ki.exponent(p);
        table = tuple_space(ki.diagram().interval_on(p), level)
            .into_iter()
            .map(|n| {
                let mut acc = Rational::zero();
                for (m, val) in &table {
                    if rel_strict(m, &n).expect("adjacent diagonals are consecutive") {
                        acc += val;
                    }
                }
                acc *= reciprocal_power(&n, e);
                (n, acc)
            })
            .collect();
    }
    table.into_iter().map(|(_, v)| v).sum()
}

/// One layer step of the flat sum: diagonal `p`, layer `l` in `1..=k_p`.
#[derive(Clone, Copy, Debug)]
struct FlatStep {
    p: i64,
    layer: u32,
}

fn flat_steps(ki: &DiagIndex, p_from: i64, p1: i64) -> Vec<FlatStep> {
    let mut out = Vec::new();
    for p in p_from..=p1 {
        for layer in 1..=ki.exponent(p) {
            out.push(FlatStep { p, layer });
        }
    }
    out
}

fn flat_weight(step: FlatStep, t: &IntervalTuple, level: u32) -> Rational {
    if step.layer == 1 {
        Rational::new(Integer::one(), t.complement(level).product())
    } else {
        Rational::new(Integer::one(), t.product())
    }
}

/// Relation into the tuple occupying `step`: layers above the first chain
/// by `⊴` within a diagonal, first layers chain by `◁` across diagonals.
fn flat_related(step: FlatStep, m: &IntervalTuple, n: &IntervalTuple) -> bool {
    let r = if step.layer > 1 {
        rel_weak(m, n)
    } else {
        rel_strict(m, n)
    };
    r.expect("adjacent intervals are consecutive")
}

/// Flat form of the Schur sum: for each diagonal `p`, `k_p` layers of
/// tuples chained by `⊴`, with `◁` across diagonals; layer 1 weighted by
/// the complement product. Tuples carry no internal monotonicity
/// constraint. Equals [`schur_mhs`] on every diagonally constant index.
pub fn schur_flat(ki: &DiagIndex, level: u32) -> Rational {
    flat_sum(ki, level, |_| true)
}

/// [`schur_flat`] with every layer tuple restricted to non-decreasing
/// entries. This is a diagnostic, not one of the defined sums: comparing it
/// with [`schur_flat`] shows whether non-monotone tuples ever contribute.
///
/// They never do. The definition places no monotonicity constraint on the
/// tuples, but on a valid skew shape the shifted clause `n_{j-1} < m_j`
/// combines with the shared clause `m_j <= n_j` to force every reachable
/// tuple to increase strictly along its interval, starting from the
/// singleton extreme diagonal.
pub fn schur_flat_monotone(ki: &DiagIndex, level: u32) -> Rational {
    flat_sum(ki, level, IntervalTuple::is_nondecreasing)
}

fn flat_sum<F: Fn(&IntervalTuple) -> bool>(ki: &DiagIndex, level: u32, keep: F) -> Rational {
    let Some((p0, p1)) = ki.diagram().diagonal_range() else {
        return Rational::one();
    };
    let steps = flat_steps(ki, p0, p1);
    let mut table: Vec<(IntervalTuple, Rational)> = Vec::new();
    for (s, step) in steps.iter().enumerate() {
        let space: Vec<IntervalTuple> = tuple_space(ki.diagram().interval_on(step.p), level)
            .into_iter()
            .filter(|t| keep(t))
            .collect();
        table = space
            .into_iter()
            .map(|n| {
                let mut acc = if s == 0 {
                    Rational::one()
                } else {
                    let mut sum = Rational::zero();
                    for (m, val) in &table {
                        if flat_related(*step, m, &n) {
                            sum += val;
                        }
                    }
                    sum
                };
                acc *= flat_weight(*step, &n, level);
                (n, acc)
            })
            .collect();
    }
    table.into_iter().map(|(_, v)| v).sum()
}

/// The connected sum `Z(k; q)`: tableau-style diagonals up to `q`, flat
/// layers beyond `q`, joined by the connector `D_N(m_q, n_{q+1}^{(1)} - 1)`.
///
/// `Z(k; p1)` is the tableau sum, `Z(k; p0 - 1)` the flat sum, and the
/// value is constant over the whole range `q in [p0 - 1, p1]`.
pub fn connected_sum_z(ki: &DiagIndex, level: u32, q: i64) -> Result<Rational, SchurError> {
    let Some((p0, p1)) = ki.diagram().diagonal_range() else {
        return Err(SchurError::OutOfRange(
            "empty diagram has no connected sum".to_string(),
        ));
    };
    if q < p0 - 1 || q > p1 {
        return Err(SchurError::OutOfRange(format!(
            "q = {q} outside [{}, {p1}]",
            p0 - 1
        )));
    }

    // left: chains m_{p0} ◁ ... ◁ m_q with tableau weights
    let mut left: Vec<(IntervalTuple, Rational)> = vec![(IntervalTuple::empty(), Rational::one())];
    for p in p0..=q {
        let e = ki.exponent(p);
        left = tuple_space(ki.diagram().interval_on(p), level)
            .into_iter()
            .map(|n| {
                let mut acc = Rational::zero();
                for (m, val) in &left {
                    let related = if p == p0 {
                        true // the empty boundary tuple relates to everything
                    } else {
                        rel_strict(m, &n).expect("adjacent diagonals are consecutive")
                    };
                    if related {
                        acc += val;
                    }
                }
                acc *= reciprocal_power(&n, e);
                (n, acc)
            })
            .collect();
    }

    // right: flat layers from (q+1, 1) to (p1, k_{p1}), accumulated backwards
    let steps = flat_steps(ki, q + 1, p1);
    let mut right: Vec<(IntervalTuple, Rational)> = vec![(IntervalTuple::empty(), Rational::one())];
    for (s, step) in steps.iter().enumerate().rev() {
        let last = s + 1 == steps.len();
        right = tuple_space(ki.diagram().interval_on(step.p), level)
            .into_iter()
            .map(|m| {
                let mut acc = if last {
                    Rational::one()
                } else {
                    let next = steps[s + 1];
                    let mut sum = Rational::zero();
                    for (n, val) in &right {
                        if flat_related(next, &m, n) {
                            sum += val;
                        }
                    }
                    sum
                };
                acc *= flat_weight(*step, &m, level);
                (m, acc)
            })
            .collect();
    }

    // connector: D_N(m_q, n_{q+1}^(1) - 1)
    let mut total = Rational::zero();
    for (m, lval) in &left {
        for (n, rval) in &right {
            let connector = d_n(level, m, &n.minus_one())?;
            total += lval * connector * rval;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::index::Index;
    use crate::sums::{mhs, mhs_flat, mhs_star, mhs_star_flat};

    fn diagram(lambda: &[u32], mu: &[u32]) -> SkewDiagram {
        SkewDiagram::new(lambda.to_vec(), mu.to_vec()).unwrap()
    }

    fn tup(lo: i64, values: &[i64]) -> IntervalTuple {
        IntervalTuple::new(
            Interval::new(lo, lo + values.len() as i64 - 1),
            values.to_vec(),
        )
        .unwrap()
    }

    #[test]
    fn diagonals_of_basic_shapes() {
        // single column of 3 cells
        let col = diagram(&[1, 1, 1], &[]);
        assert_eq!(
            col.diagonals(),
            vec![
                (0, Interval::singleton(1)),
                (1, Interval::singleton(1)),
                (2, Interval::singleton(1))
            ]
        );
        // single row of 3 cells
        let row = diagram(&[3], &[]);
        assert_eq!(
            row.diagonals(),
            vec![
                (-2, Interval::singleton(3)),
                (-1, Interval::singleton(2)),
                (0, Interval::singleton(1))
            ]
        );
        // 2x2 square
        let square = diagram(&[2, 2], &[]);
        assert_eq!(
            square.diagonals(),
            vec![
                (-1, Interval::singleton(2)),
                (0, Interval::new(1, 2)),
                (1, Interval::singleton(1))
            ]
        );
    }

    #[test]
    fn shape_validation() {
        assert!(SkewDiagram::new(vec![1, 2], vec![]).is_err());
        assert!(SkewDiagram::new(vec![2, 2], vec![0, 1]).is_err());
        assert!(SkewDiagram::new(vec![2], vec![3]).is_err());
        // disconnected but valid
        let d = diagram(&[3, 1], &[2, 0]);
        assert_eq!(d.cell_count(), 2);
        assert_eq!(d.diagonal_range(), Some((-2, 1)));
        assert!(d.interval_on(0).is_empty());
    }

    #[test]
    fn parse_round_trip() {
        let d: SkewDiagram = "lambda=3,2;mu=1".parse().unwrap();
        assert_eq!(d, diagram(&[3, 2], &[1, 0]));
        assert_eq!(d.to_string(), "lambda=3,2;mu=1,0");
        let plain: SkewDiagram = "lambda=2,2".parse().unwrap();
        assert_eq!(plain.to_string(), "lambda=2,2");
        assert!("mu=1".parse::<SkewDiagram>().is_err());
        assert!("lambda=a".parse::<SkewDiagram>().is_err());
    }

    #[test]
    fn consecutive_pair_predicate() {
        let j = Interval::new(1, 2);
        assert!(consecutive(j, j));
        assert!(consecutive(j, Interval::singleton(1)));
        assert!(consecutive(j, Interval::new(0, 2)));
        assert!(consecutive(j, Interval::new(0, 1)));
        assert!(!consecutive(j, Interval::new(2, 3)));
        assert!(!consecutive(j, Interval::empty()));
        assert!(consecutive(Interval::singleton(5), Interval::empty()));
        assert!(consecutive(Interval::empty(), Interval::singleton(7)));
        assert!(consecutive(Interval::empty(), Interval::empty()));
        assert!(!consecutive(Interval::empty(), Interval::new(1, 2)));
    }

    #[test]
    fn relations_on_singletons() {
        // same position: strict < for ◁, weak <= for ⊴
        let m = tup(1, &[2]);
        let n = tup(1, &[3]);
        assert!(rel_strict(&m, &n).unwrap());
        assert!(rel_weak(&m, &n).unwrap());
        assert!(!rel_strict(&n, &n.clone()).unwrap());
        assert!(rel_weak(&n, &n.clone()).unwrap());
        // shifted position: n_{j-1} <= m_j for ◁, strict < for ⊴
        let shifted = tup(0, &[2]);
        assert!(rel_strict(&m, &shifted).unwrap());
        assert!(!rel_weak(&m, &shifted).unwrap());
        // vacuous when one side is empty
        assert!(rel_strict(&IntervalTuple::empty(), &m).unwrap());
        assert!(rel_weak(&m.clone(), &IntervalTuple::empty()).unwrap());
        // non-consecutive pairs are rejected
        assert_eq!(
            rel_strict(&tup(1, &[1, 2]), &tup(4, &[1, 2])).unwrap_err(),
            SchurError::NotConsecutive
        );
    }

    #[test]
    fn strict_equals_weak_of_decrement() {
        for level in 2..=6u32 {
            for (ja, jb) in [
                (Interval::new(1, 2), Interval::new(1, 2)),
                (Interval::new(1, 2), Interval::new(0, 2)),
                (Interval::new(1, 3), Interval::new(0, 2)),
                (Interval::new(1, 1), Interval::new(0, 0)),
            ] {
                for m in tuple_space(ja, level) {
                    for n in tuple_space(jb, level) {
                        assert_eq!(
                            rel_strict(&m, &n).unwrap(),
                            rel_weak(&m, &n.minus_one()).unwrap(),
                            "m = {m:?}, n = {n:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn exponent_resolution() {
        let d = diagram(&[2, 2], &[]);
        let ki = DiagIndex::new(d.clone(), &"1:3,0:2".parse().unwrap()).unwrap();
        assert_eq!(ki.exponent(-1), 1);
        assert_eq!(ki.exponent(0), 2);
        assert_eq!(ki.exponent(1), 3);
        assert_eq!(ki.exponent(99), 1);
        assert!(DiagIndex::new(d.clone(), &ExponentSpec::Uniform(0)).is_err());
        assert!(DiagIndex::new(d, &ExponentSpec::PerDiagonal(vec![(9, 2)])).is_err());
    }

    #[test]
    fn column_and_row_specialize() {
        for level in 1..=7u32 {
            // column with exponents (2, 1, 3) top to bottom
            let col = diagram(&[1, 1, 1], &[]);
            let ki = DiagIndex::new(
                col,
                &ExponentSpec::PerDiagonal(vec![(0, 2), (1, 1), (2, 3)]),
            )
            .unwrap();
            let k = Index::new(vec![2, 1, 3]).unwrap();
            assert_eq!(schur_mhs(&ki, level), mhs(&k, level));
            assert_eq!(schur_mhs_diagonal(&ki, level), mhs(&k, level));
            assert_eq!(schur_flat(&ki, level), mhs_flat(&k, level));

            // row with exponents (2, 1, 3) left to right maps to p = 0, -1, -2
            let row = diagram(&[3], &[]);
            let ki = DiagIndex::new(
                row,
                &ExponentSpec::PerDiagonal(vec![(0, 2), (-1, 1), (-2, 3)]),
            )
            .unwrap();
            assert_eq!(schur_mhs(&ki, level), mhs_star(&k, level));
            assert_eq!(schur_mhs_diagonal(&ki, level), mhs_star(&k, level));
            assert_eq!(schur_flat(&ki, level), mhs_star_flat(&k, level));
        }
    }

    #[test]
    fn square_all_ones_at_level_three() {
        let ki = DiagIndex::uniform(diagram(&[2, 2], &[]), 1).unwrap();
        // unique tableau: rows (1,1), (2,2)
        assert_eq!(schur_mhs(&ki, 3), rat(1, 4));
        assert_eq!(schur_mhs_diagonal(&ki, 3), rat(1, 4));
        assert_eq!(schur_flat(&ki, 3), rat(1, 4));
    }

    #[test]
    fn empty_diagram_is_one() {
        let ki = DiagIndex::uniform(diagram(&[], &[]), 1).unwrap();
        assert_eq!(schur_mhs(&ki, 5), Rational::one());
        assert_eq!(schur_mhs_diagonal(&ki, 5), Rational::one());
        assert_eq!(schur_flat(&ki, 5), Rational::one());
        assert!(connected_sum_z(&ki, 5, 0).is_err());
    }

    #[test]
    fn kernel_values() {
        for level in 2..=6u32 {
            let top = level as i64 - 1;
            for n in 0..=top {
                assert_eq!(c_n(level, 0, n).unwrap(), Rational::one());
            }
            for m in 0..=top {
                assert_eq!(c_n(level, m, top).unwrap(), Rational::one());
                for n in 0..m {
                    assert_eq!(c_n(level, m, n).unwrap(), Rational::zero());
                }
            }
        }
        assert_eq!(c_n(4, 1, 2).unwrap(), rat(2, 3));
        assert!(c_n(4, 4, 1).is_err());
        assert!(c_n(4, 1, -1).is_err());
    }

    #[test]
    fn connector_values() {
        // either side empty: value 1
        let m = tup(1, &[2]);
        assert_eq!(
            d_n(4, &m, &IntervalTuple::empty()).unwrap(),
            Rational::one()
        );
        assert_eq!(
            d_n(4, &IntervalTuple::empty(), &m).unwrap(),
            Rational::one()
        );
        assert_eq!(
            d_n(4, &IntervalTuple::empty(), &IntervalTuple::empty()).unwrap(),
            Rational::one()
        );
        // singletons reduce to the kernel
        for a in 1..4 {
            for b in 1..4 {
                assert_eq!(
                    d_n(4, &tup(1, &[a]), &tup(1, &[b])).unwrap(),
                    c_n(4, a, b).unwrap()
                );
            }
        }
        // 2x2 determinant against the direct formula
        let m = tup(1, &[1, 2]);
        let n = tup(1, &[2, 3]);
        let expected = c_n(4, 1, 2).unwrap() * c_n(4, 2, 3).unwrap()
            - c_n(4, 1, 3).unwrap() * c_n(4, 2, 2).unwrap();
        assert_eq!(d_n(4, &m, &n).unwrap(), expected);
        // mismatched intervals are rejected
        assert_eq!(
            d_n(4, &tup(1, &[1, 2]), &tup(5, &[1])).unwrap_err(),
            SchurError::NotConsecutive
        );
    }

    #[test]
    fn schur_theorem_small() {
        let shapes = vec![
            diagram(&[2, 2], &[]),
            diagram(&[3, 2], &[1, 0]),
            diagram(&[2, 1], &[]),
            diagram(&[3, 1], &[2, 0]),
            diagram(&[2, 2, 1], &[1, 0, 0]),
        ];
        for shape in shapes {
            for k in 1..=2u32 {
                let ki = DiagIndex::uniform(shape.clone(), k).unwrap();
                for level in 1..=5u32 {
                    let a = schur_mhs(&ki, level);
                    assert_eq!(a, schur_mhs_diagonal(&ki, level), "diagonal: {shape} k={k} N={level}");
                    assert_eq!(a, schur_flat(&ki, level), "flat: {shape} k={k} N={level}");
                }
            }
        }
    }

    #[test]
    fn telescoping_chain_small() {
        let ki = DiagIndex::uniform(diagram(&[2, 2], &[]), 1).unwrap();
        let level = 4;
        let expected = schur_mhs(&ki, level);
        let (p0, p1) = ki.diagram().diagonal_range().unwrap();
        for q in p0 - 1..=p1 {
            assert_eq!(
                connected_sum_z(&ki, level, q).unwrap(),
                expected,
                "Z breaks at q = {q}"
            );
        }
        assert_eq!(connected_sum_z(&ki, level, p1).unwrap(), schur_mhs(&ki, level));
        assert_eq!(
            connected_sum_z(&ki, level, p0 - 1).unwrap(),
            schur_flat(&ki, level)
        );
        assert!(connected_sum_z(&ki, level, p1 + 1).is_err());
        assert!(connected_sum_z(&ki, level, p0 - 2).is_err());
    }

    /// Although the flat sum's definition allows arbitrary layer tuples,
    /// the inter-tuple relations force strict monotonicity, so restricting
    /// to non-decreasing tuples never changes the value.
    #[test]
    fn nonmonotone_tuples_never_contribute() {
        for lambda_mu in [(vec![2u32, 2], vec![]), (vec![3, 2], vec![1, 0])] {
            let shape = SkewDiagram::new(lambda_mu.0, lambda_mu.1).unwrap();
            for k in 1..=3u32 {
                let ki = DiagIndex::uniform(shape.clone(), k).unwrap();
                for level in 2..=5u32 {
                    let full = schur_flat(&ki, level);
                    assert_eq!(full, schur_flat_monotone(&ki, level));
                    assert_eq!(full, schur_mhs(&ki, level));
                }
            }
        }
    }

    #[test]
    fn lemma_cn_small() {
        for level in 2..=8u32 {
            let top = level as i64 - 1;
            // (1/m)(C(m,n') - C(m,n)) = sum_{b=n+1}^{n'} C(m,b)/b
            for m in 1..=top {
                for n in 0..=top {
                    for n2 in n..=top {
                        let lhs = (c_n(level, m, n2).unwrap() - c_n(level, m, n).unwrap())
                            / Rational::from(Integer::from(m));
                        let mut rhs = Rational::zero();
                        for b in n + 1..=n2 {
                            rhs += c_n(level, m, b).unwrap() / Rational::from(Integer::from(b));
                        }
                        assert_eq!(lhs, rhs, "lemma 1 fails at N={level} m={m} n={n} n'={n2}");
                    }
                }
            }
            // sum_{a=m+1}^{m'} C(a,n)/n = (C(m,n-1) - C(m',n-1))/(N-n)
            for m in 0..=top {
                for m2 in m..=top {
                    for n in 1..=top {
                        let mut lhs = Rational::zero();
                        for a in m + 1..=m2 {
                            lhs += c_n(level, a, n).unwrap() / Rational::from(Integer::from(n));
                        }
                        let rhs = (c_n(level, m, n - 1).unwrap() - c_n(level, m2, n - 1).unwrap())
                            / Rational::from(Integer::from(level as i64 - n));
                        assert_eq!(lhs, rhs, "lemma 2 fails at N={level} m={m} m'={m2} n={n}");
                    }
                }
            }
        }
    }

    fn nondecreasing(tuples: Vec<IntervalTuple>) -> Vec<IntervalTuple> {
        tuples
            .into_iter()
            .filter(IntervalTuple::is_nondecreasing)
            .collect()
    }

    fn tuple_space_with_zero(interval: Interval, level: u32) -> Vec<IntervalTuple> {
        tuple_space_in(interval, 0, level as i64 - 1)
    }

    #[test]
    fn lemma_dn_small() {
        for level in 2..=4u32 {
            for (j, j2) in consecutive_pairs(3) {
                // (1/Π(m)) D(m,n) = Σ_{b ⊴ n} D(m,b)/Π(b)
                for m in nondecreasing(tuple_space(j, level)) {
                    for n in nondecreasing(tuple_space_with_zero(j2, level)) {
                        let lhs = d_n(level, &m, &n).unwrap()
                            / Rational::from(m.product());
                        let mut rhs = Rational::zero();
                        for b in tuple_space(j, level) {
                            if rel_weak(&b, &n).unwrap() {
                                rhs += d_n(level, &m, &b).unwrap()
                                    / Rational::from(b.product());
                            }
                        }
                        assert_eq!(lhs, rhs, "D lemma 1 fails: N={level} m={m:?} n={n:?}");
                    }
                }
                // Σ_{m ◁ a} D(a,n)/Π(n) = D(m, n-1)/Π(N-n)
                for m in nondecreasing(tuple_space_with_zero(j, level)) {
                    for n in nondecreasing(tuple_space(j2, level)) {
                        let mut lhs = Rational::zero();
                        for a in tuple_space(j2, level) {
                            if rel_strict(&m, &a).unwrap() {
                                lhs += d_n(level, &a, &n).unwrap()
                                    / Rational::from(n.product());
                            }
                        }
                        let rhs = d_n(level, &m, &n.minus_one()).unwrap()
                            / Rational::from(n.complement(level).product());
                        assert_eq!(lhs, rhs, "D lemma 2 fails: N={level} m={m:?} n={n:?}");
                    }
                }
            }
        }
    }
}
