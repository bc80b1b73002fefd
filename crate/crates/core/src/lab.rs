//! Identity verifiers, the seeded fuzzer, and the evaluator benchmark: the
//! library side of the command-line lab.
//!
//! Every verifier evaluates the two sides of one identity through distinct
//! module entry points and compares them exactly. Fuzz reports serialize as
//! one JSON object per line; timings are kept out of the serialized form so
//! identical seeds give byte-identical output.

use crate::arith::Rational;
use crate::chain::{
    eval_chain_bruteforce_with_limit, eval_chain_dp, ChainError, ChainSpec, Relation, WeightKind,
};
use crate::index::Index;
use crate::kawashima::{kawashima_exact, telescoping_tail, KawashimaError, KawashimaQuery};
use crate::schur::{
    c_n, connected_sum_z, consecutive_pairs, d_n, rel_strict, rel_weak, schur_flat, schur_mhs,
    schur_mhs_diagonal, tuple_space, tuple_space_in, DiagIndex, ExponentSpec, IntervalTuple,
    SchurError, SkewDiagram,
};
use crate::sums::{hoffman_h, hoffman_h_flat, mhs, mhs_flat, mhs_star, mhs_star_flat};
use num::{One, Zero};
use serde::Serialize;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LabError {
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("identity `{identity}` needs the `{param}` parameter")]
    MissingParam {
        identity: Identity,
        param: &'static str,
    },
    #[error("identity `{0}` needs a non-empty index")]
    EmptyIndex(Identity),
    #[error(transparent)]
    Schur(#[from] SchurError),
    #[error(transparent)]
    Kawashima(#[from] KawashimaError),
    #[error(transparent)]
    Chain(#[from] ChainError),
}

/// The named identities the lab can check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Identity {
    Msw,
    MswStar,
    Antipode,
    AntipodeFlat,
    Schur,
    ZChain,
    Hoffman,
    HFlat,
    Kawashima,
    KawashimaFlat,
    LemmaCn,
    LemmaDn,
    Trans1,
    Trans2,
}

impl Identity {
    pub const ALL: [Identity; 14] = [
        Identity::Msw,
        Identity::MswStar,
        Identity::Antipode,
        Identity::AntipodeFlat,
        Identity::Schur,
        Identity::ZChain,
        Identity::Hoffman,
        Identity::HFlat,
        Identity::Kawashima,
        Identity::KawashimaFlat,
        Identity::LemmaCn,
        Identity::LemmaDn,
        Identity::Trans1,
        Identity::Trans2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Msw => "msw",
            Identity::MswStar => "msw_star",
            Identity::Antipode => "antipode",
            Identity::AntipodeFlat => "antipode_flat",
            Identity::Schur => "schur",
            Identity::ZChain => "z_chain",
            Identity::Hoffman => "hoffman",
            Identity::HFlat => "h_flat",
            Identity::Kawashima => "kawashima",
            Identity::KawashimaFlat => "kawashima_flat",
            Identity::LemmaCn => "lemma_cn",
            Identity::LemmaDn => "lemma_dn",
            Identity::Trans1 => "trans1",
            Identity::Trans2 => "trans2",
        }
    }

    /// The module entry points evaluating the two sides; they must differ.
    pub fn routes(self) -> (&'static str, &'static str) {
        match self {
            Identity::Msw => ("sums::mhs", "sums::mhs_flat"),
            Identity::MswStar => ("sums::mhs_star", "sums::mhs_star_flat"),
            Identity::Antipode => ("sums::mhs * sums::mhs_star", "zero"),
            Identity::AntipodeFlat => ("sums::mhs_flat * sums::mhs_star_flat", "zero"),
            Identity::Schur => ("schur::schur_mhs", "schur::schur_flat"),
            Identity::ZChain => ("schur::connected_sum_z(p1)", "schur::connected_sum_z(p0-1)"),
            Identity::Hoffman => ("sums::mhs_star of the dual", "sums::hoffman_h"),
            Identity::HFlat => ("sums::hoffman_h", "sums::hoffman_h_flat"),
            Identity::Kawashima => ("kawashima::kawashima_exact", "sums::mhs_star"),
            Identity::KawashimaFlat => ("kawashima::kawashima_exact", "sums::mhs_star_flat"),
            Identity::LemmaCn => ("schur::c_n difference", "schur::c_n kernel sum"),
            Identity::LemmaDn => ("schur::d_n difference", "schur::d_n kernel sum"),
            Identity::Trans1 => ("kawashima::telescoping_tail", "schur-free reciprocal sum"),
            Identity::Trans2 => ("kawashima::telescoping_tail", "complement reciprocal sum"),
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self, LabError> {
        Identity::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| LabError::UnknownIdentity(s.to_string()))
    }
}

/// Parameters accepted by [`verify_identity`]; which ones are required
/// depends on the identity.
#[derive(Clone, Debug, Default)]
pub struct VerifyParams {
    pub index: Option<Index>,
    pub diagram: Option<SkewDiagram>,
    pub exponents: Option<ExponentSpec>,
    pub level: u32,
    pub q: Option<i64>,
}

/// Outcome of one identity check. `pass` means the two sides agree
/// exactly. The elapsed time stays out of the JSON so that seeded runs are
/// byte-reproducible.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub identity: String,
    pub params: String,
    pub left: String,
    pub right: String,
    pub pass: bool,
    #[serde(skip)]
    pub elapsed_ms: f64,
}

impl IdentityReport {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

fn require_index(identity: Identity, params: &VerifyParams) -> Result<Index, LabError> {
    params.index.clone().ok_or(LabError::MissingParam {
        identity,
        param: "index",
    })
}

fn require_nonempty_index(identity: Identity, params: &VerifyParams) -> Result<Index, LabError> {
    let k = require_index(identity, params)?;
    if k.is_empty() {
        return Err(LabError::EmptyIndex(identity));
    }
    Ok(k)
}

fn require_diag_index(identity: Identity, params: &VerifyParams) -> Result<DiagIndex, LabError> {
    let diagram = params.diagram.clone().ok_or(LabError::MissingParam {
        identity,
        param: "diagram",
    })?;
    let exponents = params
        .exponents
        .clone()
        .unwrap_or(ExponentSpec::Uniform(1));
    Ok(DiagIndex::new(diagram, &exponents)?)
}

/// Alternating antipode convolution; zero for every non-empty index.
fn antipode_sum<F, G>(k: &Index, plain: F, star: G) -> Rational
where
    F: Fn(&Index) -> Rational,
    G: Fn(&Index) -> Rational,
{
    let parts = k.parts();
    let mut acc = Rational::zero();
    for i in 0..=parts.len() {
        let head = Index::new(parts[..i].to_vec()).expect("positive parts");
        let tail = Index::new(parts[i..].iter().rev().copied().collect()).expect("positive parts");
        let term = plain(&head) * star(&tail);
        if i % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Evaluate both sides of `identity` independently and compare exactly.
///
/// For the lemma and transformation identities the check sweeps the whole
/// parameter space at the given level; `left`/`right` then report the sums
/// of the two sides over the sweep while `pass` requires every single case
/// to match.
pub fn verify_identity(identity: Identity, params: &VerifyParams) -> Result<IdentityReport, LabError> {
    let start = Instant::now();
    let level = params.level;
    let mut param_text = Vec::new();
    let (left, right, pass) = match identity {
        Identity::Msw => {
            let k = require_index(identity, params)?;
            param_text.push(format!("index={k}"));
            let l = mhs(&k, level);
            let r = mhs_flat(&k, level);
            let pass = l == r;
            (l, r, pass)
        }
        Identity::MswStar => {
            let k = require_index(identity, params)?;
            param_text.push(format!("index={k}"));
            let l = mhs_star(&k, level);
            let r = mhs_star_flat(&k, level);
            let pass = l == r;
            (l, r, pass)
        }
        Identity::Antipode => {
            let k = require_nonempty_index(identity, params)?;
            param_text.push(format!("index={k}"));
            let l = antipode_sum(&k, |a| mhs(a, level), |a| mhs_star(a, level));
            let pass = l.is_zero();
            (l, Rational::zero(), pass)
        }
        Identity::AntipodeFlat => {
            let k = require_nonempty_index(identity, params)?;
            param_text.push(format!("index={k}"));
            let l = antipode_sum(&k, |a| mhs_flat(a, level), |a| mhs_star_flat(a, level));
            let pass = l.is_zero();
            (l, Rational::zero(), pass)
        }
        Identity::Schur => {
            let ki = require_diag_index(identity, params)?;
            param_text.push(format!("diagram={}", ki.diagram()));
            param_text.push(format!("exponents={}", ki.exponents_text()));
            let tableau = schur_mhs(&ki, level);
            let diagonal = schur_mhs_diagonal(&ki, level);
            let flat = schur_flat(&ki, level);
            let pass = tableau == diagonal && tableau == flat;
            (tableau, flat, pass)
        }
        Identity::ZChain => {
            let ki = require_diag_index(identity, params)?;
            param_text.push(format!("diagram={}", ki.diagram()));
            param_text.push(format!("exponents={}", ki.exponents_text()));
            let (p0, p1) = ki.diagram().diagonal_range().ok_or(SchurError::OutOfRange(
                "empty diagram has no connected sum".to_string(),
            ))?;
            match params.q {
                Some(q) => {
                    param_text.push(format!("q={q}"));
                    let l = connected_sum_z(&ki, level, q)?;
                    let r = connected_sum_z(&ki, level, q - 1)?;
                    let pass = l == r;
                    (l, r, pass)
                }
                None => {
                    let values: Result<Vec<Rational>, SchurError> = (p0 - 1..=p1)
                        .map(|q| connected_sum_z(&ki, level, q))
                        .collect();
                    let values = values?;
                    let pass = values.windows(2).all(|w| w[0] == w[1]);
                    let l = values.last().expect("range non-empty").clone();
                    let r = values.first().expect("range non-empty").clone();
                    (l, r, pass)
                }
            }
        }
        Identity::Hoffman => {
            let k = require_nonempty_index(identity, params)?;
            param_text.push(format!("index={k}"));
            let dual = k.hoffman_dual().expect("non-empty");
            let l = mhs_star(&dual, level);
            let r = hoffman_h(&k, level).expect("non-empty");
            let pass = l == r;
            (l, r, pass)
        }
        Identity::HFlat => {
            let k = require_nonempty_index(identity, params)?;
            param_text.push(format!("index={k}"));
            let l = hoffman_h(&k, level).expect("non-empty");
            let r = hoffman_h_flat(&k, level).expect("non-empty");
            let pass = l == r;
            (l, r, pass)
        }
        Identity::Kawashima => {
            let k = require_nonempty_index(identity, params)?;
            param_text.push(format!("index={k}"));
            let q = KawashimaQuery::new(k.clone(), level)?;
            let l = kawashima_exact(&q);
            let r = mhs_star(&k, level);
            let pass = l == r;
            (l, r, pass)
        }
        Identity::KawashimaFlat => {
            let k = require_nonempty_index(identity, params)?;
            param_text.push(format!("index={k}"));
            let q = KawashimaQuery::new(k.clone(), level)?;
            let l = kawashima_exact(&q);
            let r = mhs_star_flat(&k, level);
            let pass = l == r;
            (l, r, pass)
        }
        Identity::LemmaCn => verify_lemma_cn(level)?,
        Identity::LemmaDn => verify_lemma_dn(level)?,
        Identity::Trans1 => verify_trans(level, true),
        Identity::Trans2 => verify_trans(level, false),
    };
    param_text.push(format!("N={level}"));
    Ok(IdentityReport {
        identity: identity.name().to_string(),
        params: param_text.join(" "),
        left: left.to_string(),
        right: right.to_string(),
        pass,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

/// Both kernel lemmas, swept exhaustively at the given level.
fn verify_lemma_cn(level: u32) -> Result<(Rational, Rational, bool), LabError> {
    let top = level as i64 - 1;
    let mut left = Rational::zero();
    let mut right = Rational::zero();
    let mut pass = true;
    let int = |x: i64| Rational::from(crate::arith::Integer::from(x));
    for m in 1..=top {
        for n in 0..=top {
            for n2 in n..=top {
                let l = (c_n(level, m, n2)? - c_n(level, m, n)?) / int(m);
                let mut r = Rational::zero();
                for b in n + 1..=n2 {
                    r += c_n(level, m, b)? / int(b);
                }
                pass &= l == r;
                left += l;
                right += r;
            }
        }
    }
    for m in 0..=top {
        for m2 in m..=top {
            for n in 1..=top {
                let mut l = Rational::zero();
                for a in m + 1..=m2 {
                    l += c_n(level, a, n)? / int(n);
                }
                let r = (c_n(level, m, n - 1)? - c_n(level, m2, n - 1)?) / int(level as i64 - n);
                pass &= l == r;
                left += l;
                right += r;
            }
        }
    }
    Ok((left, right, pass))
}

/// Both determinant lemmas, swept over consecutive pairs with union length
/// at most 3 and non-decreasing tuples at the given level.
fn verify_lemma_dn(level: u32) -> Result<(Rational, Rational, bool), LabError> {
    let mut left = Rational::zero();
    let mut right = Rational::zero();
    let mut pass = true;
    let top = level as i64 - 1;
    let rational = |x: crate::arith::Integer| Rational::from(x);
    for (j, j2) in consecutive_pairs(3) {
        for m in tuple_space(j, level)
            .into_iter()
            .filter(IntervalTuple::is_nondecreasing)
        {
            for n in tuple_space_in(j2, 0, top)
                .into_iter()
                .filter(IntervalTuple::is_nondecreasing)
            {
                let l = d_n(level, &m, &n)? / rational(m.product());
                let mut r = Rational::zero();
                for b in tuple_space(j, level) {
                    if rel_weak(&b, &n)? {
                        r += d_n(level, &m, &b)? / rational(b.product());
                    }
                }
                pass &= l == r;
                left += l;
                right += r;
            }
        }
        for m in tuple_space_in(j, 0, top)
            .into_iter()
            .filter(IntervalTuple::is_nondecreasing)
        {
            for n in tuple_space(j2, level)
                .into_iter()
                .filter(IntervalTuple::is_nondecreasing)
            {
                let mut l = Rational::zero();
                for a in tuple_space(j2, level) {
                    if rel_strict(&m, &a)? {
                        l += d_n(level, &a, &n)? / rational(n.product());
                    }
                }
                let r = d_n(level, &m, &n.minus_one())? / rational(n.complement(level).product());
                pass &= l == r;
                left += l;
                right += r;
            }
        }
    }
    Ok((left, right, pass))
}

/// The two reciprocal-difference transformations, swept exhaustively: the
/// telescoped infinite part against the middle sum, and the middle sum
/// against the pulled-apart finite form.
fn verify_trans(level: u32, within_block: bool) -> (Rational, Rational, bool) {
    let n = level as u64;
    let mut left = Rational::zero();
    let mut right = Rational::zero();
    let mut pass = true;
    let recip = |x: u64| Rational::new(crate::arith::Integer::one(), crate::arith::Integer::from(x));
    for m_prime in 1..=2 * n.max(1) {
        for n1 in 1..n {
            for n2 in n1..n {
                let delta = n2 - n1 + 1;
                let (telescoped, outer) = if within_block {
                    (
                        telescoping_tail(m_prime, n - 1 - n2, delta) * recip(m_prime + n - 1),
                        recip(m_prime + n - 1),
                    )
                } else {
                    (
                        telescoping_tail(m_prime + 1, n - 1 - n2, delta) * recip(m_prime),
                        recip(m_prime),
                    )
                };
                let mut middle = Rational::zero();
                let mut finite = Rational::zero();
                for t in n1..=n2 {
                    if within_block {
                        middle += &outer * recip(m_prime + n - 1 - t);
                        finite += (recip(m_prime + n - 1 - t) - &outer) * recip(t);
                    } else {
                        middle += &outer * recip(m_prime + n - t);
                        finite += (&outer - recip(m_prime + n - t)) * recip(n - t);
                    }
                }
                pass &= telescoped == middle && middle == finite;
                left += telescoped;
                right += finite;
            }
        }
    }
    (left, right, pass)
}

/// Deterministic 64-bit generator with explicit constants, so seeded runs
/// reproduce across platforms.
struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform-ish draw below `n`; the modulo bias is irrelevant for test
    /// case generation.
    fn below(&mut self, n: u64) -> u64 {
        debug_assert!(n > 0);
        self.next_u64() % n
    }
}

/// Bounds and seed for [`fuzz`]. Identical configs give byte-identical
/// report streams.
#[derive(Clone, Debug)]
pub struct FuzzConfig {
    pub seed: u64,
    pub trials: u32,
    pub max_weight: u32,
    pub max_depth: u32,
    pub max_level: u32,
    pub max_cells: u32,
    pub max_diag_len: u32,
    pub max_exponent: u32,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        Self {
            seed: 1,
            trials: 100,
            max_weight: 6,
            max_depth: 4,
            max_level: 10,
            max_cells: 6,
            max_diag_len: 2,
            max_exponent: 3,
        }
    }
}

fn random_index(rng: &mut SplitMix64, cfg: &FuzzConfig, allow_empty: bool) -> Index {
    let depth = if allow_empty {
        rng.below(cfg.max_depth as u64 + 1)
    } else {
        1 + rng.below(cfg.max_depth.max(1) as u64)
    };
    let mut parts = Vec::new();
    for _ in 0..depth {
        // geometric-ish part size capped at max_exponent
        let mut part = 1u32;
        while part < cfg.max_exponent && rng.below(2) == 1 {
            part += 1;
        }
        parts.push(part);
    }
    while parts.iter().map(|&p| p as u64).sum::<u64>() > cfg.max_weight as u64 {
        parts.pop();
    }
    if parts.is_empty() && !allow_empty {
        parts.push(1);
    }
    Index::new(parts).expect("positive parts")
}

fn random_level(rng: &mut SplitMix64, cfg: &FuzzConfig) -> u32 {
    1 + rng.below(cfg.max_level.max(1) as u64) as u32
}

fn random_diagram(rng: &mut SplitMix64, cfg: &FuzzConfig) -> SkewDiagram {
    for _ in 0..64 {
        let rows = 1 + rng.below(4);
        let mut lambda = Vec::with_capacity(rows as usize);
        let mut prev = 1 + rng.below(6) as u32;
        for _ in 0..rows {
            prev = 1 + rng.below(prev as u64) as u32;
            lambda.push(prev);
        }
        let mut mu = Vec::with_capacity(rows as usize);
        let mut cap = u32::MAX;
        for &l in &lambda {
            let m = rng.below(l as u64) as u32;
            let m = m.min(cap);
            mu.push(m);
            cap = m;
        }
        if let Ok(diagram) = SkewDiagram::new(lambda, mu) {
            let cells = diagram.cell_count();
            if cells >= 1
                && cells <= cfg.max_cells as usize
                && diagram.max_diagonal_len() <= cfg.max_diag_len as usize
            {
                return diagram;
            }
        }
    }
    SkewDiagram::new(vec![1], vec![]).expect("single cell is valid")
}

fn random_exponents(rng: &mut SplitMix64, cfg: &FuzzConfig, diagram: &SkewDiagram) -> ExponentSpec {
    let entries = diagram
        .diagonals()
        .into_iter()
        .map(|(p, _)| (p, 1 + rng.below(cfg.max_exponent.max(1) as u64) as u32))
        .collect();
    ExponentSpec::PerDiagonal(entries)
}

/// Run `cfg.trials` random identity checks. The draw sequence depends only
/// on the seed and bounds, so two runs with the same config produce
/// byte-identical reports.
pub fn fuzz(cfg: &FuzzConfig) -> Vec<IdentityReport> {
    let mut rng = SplitMix64::new(cfg.seed);
    let mut reports = Vec::with_capacity(cfg.trials as usize);
    for _ in 0..cfg.trials {
        let identity = Identity::ALL[rng.below(Identity::ALL.len() as u64) as usize];
        let mut params = VerifyParams {
            level: random_level(&mut rng, cfg),
            ..VerifyParams::default()
        };
        match identity {
            Identity::Msw | Identity::MswStar => {
                params.index = Some(random_index(&mut rng, cfg, true));
            }
            Identity::Antipode
            | Identity::AntipodeFlat
            | Identity::Hoffman
            | Identity::HFlat
            | Identity::Kawashima
            | Identity::KawashimaFlat => {
                params.index = Some(random_index(&mut rng, cfg, false));
            }
            Identity::Schur | Identity::ZChain => {
                let diagram = random_diagram(&mut rng, cfg);
                params.exponents = Some(random_exponents(&mut rng, cfg, &diagram));
                if identity == Identity::ZChain {
                    let (p0, p1) = diagram.diagonal_range().expect("non-empty diagram");
                    let q = p0 - 1 + rng.below((p1 - p0 + 2) as u64) as i64;
                    params.q = Some(q).filter(|&q| q >= p0);
                }
                params.diagram = Some(diagram);
            }
            Identity::LemmaCn | Identity::Trans1 | Identity::Trans2 => {
                params.level = 2 + rng.below(cfg.max_level.max(3) as u64 - 1) as u32;
            }
            Identity::LemmaDn => {
                // the sweep is cubic in the level on both tuple sides
                params.level = 2 + rng.below(cfg.max_level.clamp(3, 6) as u64 - 1) as u32;
            }
        }
        let report = verify_identity(identity, &params).expect("fuzz generates valid parameters");
        reports.push(report);
    }
    reports
}

/// One timing row of the evaluator benchmark.
#[derive(Clone, Debug, Serialize)]
pub struct BenchRow {
    pub evaluator: String,
    pub weight: u32,
    pub level: u32,
    pub millis: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
}

impl BenchRow {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("row serializes")
    }
}

/// Brute force runs only when the variable count passes the enumeration
/// limit and the assignment count stays this side of absurd.
const BRUTE_ASSIGNMENT_CAP: f64 = 2e6;

/// Wall-clock ladder comparing the sweep against brute-force enumeration
/// on flat chains of single-part indices.
pub fn bench_ladder(max_weight: u32, max_level: u32, enum_limit: usize) -> Vec<BenchRow> {
    let weights: Vec<u32> = [2u32, 4, 8, 12, 16, 20]
        .into_iter()
        .filter(|&w| w <= max_weight)
        .collect();
    let levels: Vec<u32> = [10u32, 100, 1000, 5000]
        .into_iter()
        .filter(|&n| n <= max_level)
        .collect();
    let mut rows = Vec::new();
    for &weight in &weights {
        for &level in &levels {
            let spec = crate::sums::flat_chain(&Index::single(weight), level);
            rows.push(timed_row("dp", weight, level, || {
                eval_chain_dp(&spec).map_err(LabError::from)
            }));
            let assignments = ((level.max(2) - 1) as f64).powi(spec.len() as i32);
            if assignments > BRUTE_ASSIGNMENT_CAP {
                rows.push(skipped_row("bruteforce", weight, level));
            } else {
                match timed_fallible_row("bruteforce", weight, level, || {
                    eval_chain_bruteforce_with_limit(&spec, enum_limit)
                }) {
                    Some(row) => rows.push(row),
                    None => rows.push(skipped_row("bruteforce", weight, level)),
                }
            }
        }
    }
    rows
}

fn timed_row<F: FnOnce() -> Result<Rational, LabError>>(
    evaluator: &str,
    weight: u32,
    level: u32,
    f: F,
) -> BenchRow {
    let start = Instant::now();
    let value = f().expect("dp evaluation succeeds");
    BenchRow {
        evaluator: evaluator.to_string(),
        weight,
        level,
        millis: start.elapsed().as_secs_f64() * 1e3,
        value: Some(value.to_string()),
        skipped: None,
    }
}

fn timed_fallible_row<F: FnOnce() -> Result<Rational, ChainError>>(
    evaluator: &str,
    weight: u32,
    level: u32,
    f: F,
) -> Option<BenchRow> {
    let start = Instant::now();
    match f() {
        Ok(value) => Some(BenchRow {
            evaluator: evaluator.to_string(),
            weight,
            level,
            millis: start.elapsed().as_secs_f64() * 1e3,
            value: Some(value.to_string()),
            skipped: None,
        }),
        Err(ChainError::TooLarge { .. }) => None,
        Err(other) => panic!("unexpected bench failure: {other}"),
    }
}

fn skipped_row(evaluator: &str, weight: u32, level: u32) -> BenchRow {
    BenchRow {
        evaluator: evaluator.to_string(),
        weight,
        level,
        millis: 0.0,
        value: None,
        skipped: Some("bound".to_string()),
    }
}

/// Compare the chain evaluators on one random seeded chain; used by the
/// oracle-equivalence suite.
pub fn random_chain_case(seed: u64) -> (ChainSpec, Rational, Rational) {
    let mut rng = SplitMix64::new(seed);
    let level = 2 + rng.below(9) as u32;
    let len = 1 + rng.below(5) as usize;
    let mut weights = Vec::with_capacity(len);
    for slot in 0..len {
        weights.push(match rng.below(4) {
            0 => WeightKind::Reciprocal(1 + rng.below(3) as u32),
            1 => WeightKind::ReciprocalComplement,
            2 => WeightKind::Unit,
            _ if slot + 1 == len => WeightKind::SignedBinomial(rng.below(3) as u32),
            _ => WeightKind::Reciprocal(1),
        });
    }
    let relations = (1..len)
        .map(|_| match rng.below(4) {
            0 => Relation::Lt,
            1 => Relation::Le,
            2 => Relation::Gt,
            _ => Relation::Ge,
        })
        .collect();
    let spec = ChainSpec::new(level, weights, relations).expect("consistent construction");
    let dp = eval_chain_dp(&spec).expect("valid spec");
    let brute = eval_chain_bruteforce_with_limit(&spec, 8).expect("within limit");
    (spec, dp, brute)
}
