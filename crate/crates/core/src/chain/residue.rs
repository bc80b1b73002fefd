//! Residue-number-system fast path for the chain sweep.
//!
//! For large levels the exact numerators reach hundreds of thousands of
//! bits and big-integer multiplication dominates. This module runs the same
//! prefix/suffix sweep over enough word-size prime fields to pin the scaled
//! numerator down exactly, then reconstructs it by the Chinese remainder
//! theorem. The output is identical to the big-integer sweep; tests compare
//! the two paths directly.

use super::{ChainSpec, Relation, WeightKind};
use crate::arith::{Integer, Rational};
use num::{One, Zero};
use rayon::prelude::*;
use std::sync::{Mutex, OnceLock};

/// Montgomery arithmetic modulo an odd prime `p < 2^63`.
#[derive(Clone, Copy)]
struct Mont {
    p: u64,
    /// `-p^{-1} mod 2^64`
    neg_inv: u64,
    /// `2^128 mod p`, for conversion into Montgomery form
    r2: u64,
    /// `2^64 mod p`, the Montgomery image of 1
    one: u64,
}

impl Mont {
    fn new(p: u64) -> Self {
        // Newton iteration doubles the number of correct low bits
        let mut inv = p;
        for _ in 0..5 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r = (u64::MAX % p + 1) % p;
        let r2 = (r as u128 * r as u128 % p as u128) as u64;
        Self {
            p,
            neg_inv: inv.wrapping_neg(),
            r2,
            one: r,
        }
    }

    #[inline]
    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.neg_inv);
        let u = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    #[inline]
    fn mul(&self, a: u64, b: u64) -> u64 {
        self.redc(a as u128 * b as u128)
    }

    #[inline]
    fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    fn to_mont(&self, a: u64) -> u64 {
        self.mul(a % self.p, self.r2)
    }

    fn from_mont(&self, a: u64) -> u64 {
        self.redc(a as u128)
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = self.one;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero Montgomery-form element, via Fermat.
    fn inv(&self, a: u64) -> u64 {
        self.pow(a, self.p - 2)
    }
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    (a as u128 * b as u128 % p as u128) as u64
}

fn powmod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, valid for all `n < 2^64` with this base set.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % q == 0 {
            return n == q;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

const PRIME_BASE: u64 = 1 << 62;

/// Shared, extend-on-demand pool of 62-bit primes.
fn primes(count: usize) -> Vec<u64> {
    static POOL: OnceLock<Mutex<Vec<u64>>> = OnceLock::new();
    let pool = POOL.get_or_init(|| Mutex::new(Vec::new()));
    let mut guard = pool.lock().expect("prime pool lock");
    while guard.len() < count {
        let start = guard.last().map_or(PRIME_BASE + 1, |&p| p + 2);
        // candidates come in batches so the primality tests can run in parallel
        let batch: Vec<u64> = (0..8192u64).map(|i| start + 2 * i).collect();
        let found: Vec<u64> = batch.into_par_iter().filter(|&c| is_prime(c)).collect();
        guard.extend(found);
    }
    guard[..count].to_vec()
}

/// One sweep of the chain DP in the field of `p` elements.
///
/// Returns `(sum of final-layer values) * scale mod p` in ordinary form,
/// where `scale` is the common denominator `lam^total_exponent`.
fn sweep_mod(spec: &ChainSpec, lam_mod: u64, total_exponent: u64, p: u64) -> u64 {
    let md = Mont::new(p);
    let n = spec.level() as u64;
    let domain = (n - 1) as usize;

    // inverses of 1..N-1 in Montgomery form, by batch inversion
    let mut prefix = Vec::with_capacity(domain + 1);
    prefix.push(md.one);
    for v in 1..=domain as u64 {
        let m = md.to_mont(v);
        let last = *prefix.last().expect("nonempty");
        prefix.push(md.mul(last, m));
    }
    let mut running = md.inv(prefix[domain]);
    let mut inv = vec![0u64; domain + 1];
    for v in (1..=domain as u64).rev() {
        inv[v as usize] = md.mul(running, prefix[v as usize - 1]);
        running = md.mul(running, md.to_mont(v));
    }

    let multiplier = |kind: WeightKind, v: usize| -> u64 {
        match kind {
            WeightKind::Reciprocal(e) => {
                let mut acc = md.one;
                for _ in 0..e {
                    acc = md.mul(acc, inv[v]);
                }
                acc
            }
            WeightKind::ReciprocalComplement => inv[n as usize - v],
            WeightKind::Unit => md.one,
            WeightKind::SignedBinomial(_) => unreachable!("handled per layer"),
        }
    };

    let apply_layer = |layer: &mut Vec<u64>, kind: WeightKind| {
        if let WeightKind::SignedBinomial(e) = kind {
            // C(N-1, v) built incrementally; sign (-1)^(v-1)
            let mut c = md.one;
            for v in 1..=domain as u64 {
                c = md.mul(c, md.to_mont(n - v));
                c = md.mul(c, inv[v as usize]);
                let mut m = c;
                for _ in 0..e {
                    m = md.mul(m, inv[v as usize]);
                }
                if v % 2 == 0 && m != 0 {
                    m = p - m;
                }
                layer[v as usize - 1] = md.mul(layer[v as usize - 1], m);
            }
        } else {
            for v in 1..=domain {
                layer[v - 1] = md.mul(layer[v - 1], multiplier(kind, v));
            }
        }
    };

    let mut layer = vec![md.one; domain];
    apply_layer(&mut layer, spec.weights()[0]);
    for t in 1..spec.len() {
        match spec.relations()[t - 1] {
            Relation::Le => {
                let mut run = 0u64;
                for x in layer.iter_mut() {
                    run = md.add(run, *x);
                    *x = run;
                }
            }
            Relation::Lt => {
                let mut run = 0u64;
                for x in layer.iter_mut() {
                    let old = std::mem::replace(x, run);
                    run = md.add(run, old);
                }
            }
            Relation::Ge => {
                let mut run = 0u64;
                for x in layer.iter_mut().rev() {
                    run = md.add(run, *x);
                    *x = run;
                }
            }
            Relation::Gt => {
                let mut run = 0u64;
                for x in layer.iter_mut().rev() {
                    let old = std::mem::replace(x, run);
                    run = md.add(run, old);
                }
            }
        }
        apply_layer(&mut layer, spec.weights()[t]);
    }

    let mut total = 0u64;
    for x in layer {
        total = md.add(total, x);
    }
    let scale = md.pow(md.to_mont(lam_mod), total_exponent);
    md.from_mont(md.mul(total, scale))
}

fn inv_mod_u64(a: u64, p: u64) -> u64 {
    // extended Euclid on i128
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1);
    ((s0 % p as i128 + p as i128) % p as i128) as u64
}

/// Exact chain evaluation through residue sweeps and CRT reconstruction.
///
/// `lam` must be `lcm(1..N-1)` and `total_exponent` the sum of the per-layer
/// denominator exponents, so that `value * lam^total_exponent` is an integer.
pub(super) fn eval_chain_residue(spec: &ChainSpec, lam: &Integer, total_exponent: u64) -> Rational {
    let n = spec.level() as u64;

    // bound on the scaled numerator: lam^E * N^(L+1), plus 2^(N-1) per
    // signed-binomial layer, plus sign and safety margin
    let mut bound_bits = lam.bits() * total_exponent + (spec.len() as u64 + 1) * (64 - n.leading_zeros() as u64);
    if spec
        .weights()
        .iter()
        .any(|w| matches!(w, WeightKind::SignedBinomial(_)))
    {
        bound_bits += n;
    }
    bound_bits += 64;
    let count = (bound_bits / 61 + 2) as usize;

    let moduli = primes(count);
    let residues: Vec<u64> = moduli
        .par_iter()
        .map(|&p| sweep_mod(spec, (lam % Integer::from(p)).try_into().expect("residue fits"), total_exponent, p))
        .collect();

    // incremental CRT, then map into the symmetric range for the sign
    let mut x = Integer::zero();
    let mut modulus = Integer::one();
    for (&r, &p) in residues.iter().zip(moduli.iter()) {
        let x_mod: u64 = (&x % Integer::from(p)).try_into().expect("residue fits");
        let delta = (r + p - x_mod) % p;
        let m_mod: u64 = (&modulus % Integer::from(p)).try_into().expect("residue fits");
        let t = mulmod(delta, inv_mod_u64(m_mod, p), p);
        x += &modulus * Integer::from(t);
        modulus *= Integer::from(p);
    }
    if &x * 2u32 > modulus {
        x -= &modulus;
    }

    let scale = lam.pow(u32::try_from(total_exponent).expect("exponent fits"));
    Rational::new(x, scale)
}
