//! Segmented sieves over `[lo, hi)` producing `tau(n) mod m`, `omega(n)` and
//! squarefree flags, plus the enumerators and exact counting functions built
//! on top of them.
//!
//! Each odd prime `p <= sqrt(hi - 1)` makes two passes: one over multiples of
//! `p` (assume exponent 1: multiply the residue by 2) and one over multiples of
//! `p^2`, which recovers the true exponent `e` by division and corrects the
//! residue by `(e + 1) / 2` (2 is a unit since `m` is odd). The prime 2 is
//! handled with `trailing_zeros`. A running product of the found prime powers
//! reveals the single leftover prime above `sqrt(hi - 1)`, if any.

mod counts;
mod dump;
mod powerful;

pub use counts::{count_aq, count_c, count_m, count_m_with, squarefree_count, tau_histogram};
pub(crate) use counts::{m_from_histogram, squarefree_omega_histogram};
pub use dump::{DUMP_MAGIC, DUMP_VERSION};
pub use powerful::{enumerate_powerful, enumerate_qm, powerful_count, PowerfulEntry, QmEntry, DEFAULT_ENUMERATION_CAP};

use rayon::prelude::*;

use crate::arith::check_odd_modulus;
use crate::error::{Error, Result};

/// Largest exclusive upper bound accepted by the sieves (`N <= 10^9`).
pub const MAX_SIEVE_HI: u64 = 1_000_000_001;
pub const DEFAULT_SEGMENT_BITS: u32 = 22;
/// Environment variable overriding [`DEFAULT_SEGMENT_BITS`].
pub const SEGMENT_BITS_ENV: &str = "DIVEXP_SEGMENT_BITS";
const MIN_SEGMENT_BITS: u32 = 8;
const MAX_SEGMENT_BITS: u32 = 28;
/// Histogram width for `omega`; `omega(n) <= 9` for `n <= 10^9`.
pub(crate) const OMEGA_SLOTS: usize = 16;

/// Segment sizing and parallelism for range scans.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SieveConfig {
    /// Segments hold `2^segment_bits` integers; also the memory budget of one
    /// [`sieve_range`] call.
    pub segment_bits: u32,
    pub threads: usize,
}

impl Default for SieveConfig {
    fn default() -> Self {
        Self { segment_bits: DEFAULT_SEGMENT_BITS, threads: 1 }
    }
}

impl SieveConfig {
    pub fn new(segment_bits: u32, threads: usize) -> Result<Self> {
        if !(MIN_SEGMENT_BITS..=MAX_SEGMENT_BITS).contains(&segment_bits) {
            return Err(Error::Invalid(format!(
                "segment bits must lie in {MIN_SEGMENT_BITS}..={MAX_SEGMENT_BITS}, got {segment_bits}"
            )));
        }
        if threads == 0 {
            return Err(Error::Invalid("thread count must be positive".into()));
        }
        Ok(Self { segment_bits, threads })
    }

    /// Default configuration with the segment size taken from
    /// `DIVEXP_SEGMENT_BITS` when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(SEGMENT_BITS_ENV) {
            Ok(v) => {
                let bits = v
                    .trim()
                    .parse()
                    .map_err(|_| Error::Invalid(format!("{SEGMENT_BITS_ENV}={v} is not an integer")))?;
                Self::new(bits, 1)
            }
            Err(_) => Ok(Self::default()),
        }
    }

    pub fn with_threads(self, threads: usize) -> Result<Self> {
        Self::new(self.segment_bits, threads)
    }

    pub fn segment_len(&self) -> u64 {
        1 << self.segment_bits
    }
}

/// Per-integer `tau(n) mod m`, stored in the narrowest word that holds `m - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TauResidues {
    U8(Vec<u8>),
    U16(Vec<u16>),
    U32(Vec<u32>),
}

impl TauResidues {
    pub fn get(&self, idx: usize) -> u32 {
        match self {
            TauResidues::U8(v) => u32::from(v[idx]),
            TauResidues::U16(v) => u32::from(v[idx]),
            TauResidues::U32(v) => v[idx],
        }
    }

    pub fn len(&self) -> usize {
        match self {
            TauResidues::U8(v) => v.len(),
            TauResidues::U16(v) => v.len(),
            TauResidues::U32(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Bytes per stored residue.
    pub fn width(&self) -> usize {
        match self {
            TauResidues::U8(_) => 1,
            TauResidues::U16(_) => 2,
            TauResidues::U32(_) => 4,
        }
    }

    pub fn histogram(&self, m: u32) -> Vec<u64> {
        let mut h = vec![0u64; m as usize];
        match self {
            TauResidues::U8(v) => v.iter().for_each(|&r| h[r as usize] += 1),
            TauResidues::U16(v) => v.iter().for_each(|&r| h[r as usize] += 1),
            TauResidues::U32(v) => v.iter().for_each(|&r| h[r as usize] += 1),
        }
        h
    }
}

/// Sieved data for every `n` in `[lo, hi)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SieveSegment {
    pub lo: u64,
    pub hi: u64,
    pub m: u32,
    pub tau_mod: TauResidues,
    pub omega: Vec<u8>,
    pub squarefree: Vec<bool>,
}

impl SieveSegment {
    pub fn len(&self) -> usize {
        (self.hi - self.lo) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.hi == self.lo
    }

    fn index(&self, n: u64) -> usize {
        assert!((self.lo..self.hi).contains(&n), "{n} outside [{}, {})", self.lo, self.hi);
        (n - self.lo) as usize
    }

    pub fn tau_mod_at(&self, n: u64) -> u32 {
        self.tau_mod.get(self.index(n))
    }

    pub fn omega_at(&self, n: u64) -> u32 {
        u32::from(self.omega[self.index(n)])
    }

    pub fn is_squarefree(&self, n: u64) -> bool {
        self.squarefree[self.index(n)]
    }
}

/// Sieves `[lo, hi)` for `tau mod m`, `omega` and squarefreeness, using the
/// segment budget from [`SieveConfig::from_env`].
pub fn sieve_range(lo: u64, hi: u64, m: u64) -> Result<SieveSegment> {
    sieve_range_with(lo, hi, m, &SieveConfig::from_env()?)
}

pub fn sieve_range_with(lo: u64, hi: u64, m: u64, cfg: &SieveConfig) -> Result<SieveSegment> {
    check_range(lo, hi)?;
    check_odd_modulus(m)?;
    let m32 = u32::try_from(m).map_err(|_| Error::BadModulus(m))?;
    if hi - lo > cfg.segment_len() {
        return Err(Error::SegmentTooLarge { len: hi - lo, budget: cfg.segment_len() });
    }
    let primes = primes_up_to(isqrt(hi - 1));
    let (tau_mod, omega, squarefree) = if m32 <= 1 << 8 {
        let k = sieve_kernel::<u8, true, true>(lo, hi, m32, &primes);
        (TauResidues::U8(k.tau), k.omega, k.squarefree)
    } else if m32 <= 1 << 16 {
        let k = sieve_kernel::<u16, true, true>(lo, hi, m32, &primes);
        (TauResidues::U16(k.tau), k.omega, k.squarefree)
    } else {
        let k = sieve_kernel::<u32, true, true>(lo, hi, m32, &primes);
        (TauResidues::U32(k.tau), k.omega, k.squarefree)
    };
    Ok(SieveSegment { lo, hi, m: m32, tau_mod, omega, squarefree })
}

pub(crate) fn check_range(lo: u64, hi: u64) -> Result<()> {
    if lo == 0 || hi <= lo {
        return Err(Error::EmptyRange { lo, hi });
    }
    if hi > MAX_SIEVE_HI {
        return Err(Error::RangeLimit { lo, hi, limit: MAX_SIEVE_HI });
    }
    Ok(())
}

pub(crate) trait Residue: Copy + Send + Sync {
    fn from_u32(x: u32) -> Self;
    fn to_u32(self) -> u32;
}

macro_rules! residue_word {
    ($($t:ty),*) => {$(
        impl Residue for $t {
            #[inline]
            fn from_u32(x: u32) -> Self {
                x as $t
            }
            #[inline]
            fn to_u32(self) -> u32 {
                u32::from(self)
            }
        }
    )*};
}
residue_word!(u8, u16, u32);

pub(crate) struct KernelOutput<R> {
    pub tau: Vec<R>,
    pub omega: Vec<u8>,
    pub squarefree: Vec<bool>,
}

/// Core segment sieve. `primes` must contain every prime up to `sqrt(hi - 1)`;
/// larger entries are ignored. With `TAU = false` the `m` argument is unused
/// and `tau` comes back empty; with `AUX = false` so do `omega` and `squarefree`.
pub(crate) fn sieve_kernel<R: Residue, const TAU: bool, const AUX: bool>(
    lo: u64,
    hi: u64,
    m: u32,
    primes: &[u32],
) -> KernelOutput<R> {
    let len = (hi - lo) as usize;
    let m64 = u64::from(m);
    let mut tau: Vec<R> = if TAU { vec![R::from_u32(1 % m); len] } else { Vec::new() };
    let mut omega = if AUX { vec![0u8; len] } else { Vec::new() };
    let mut squarefree = if AUX { vec![true; len] } else { Vec::new() };
    let mut found = vec![1u32; len];
    let inv2 = m64.div_ceil(2);

    let mul = |r: R, f: u64| R::from_u32((u64::from(r.to_u32()) * f % m64) as u32);
    let double = |r: R| {
        let d = 2 * u64::from(r.to_u32());
        R::from_u32(if d >= m64 { d - m64 } else { d } as u32)
    };

    // p = 2
    let mut idx = (lo & 1) as usize;
    while idx < len {
        let n = lo + idx as u64;
        let e = n.trailing_zeros();
        if TAU {
            tau[idx] = mul(tau[idx], u64::from(e) + 1);
        }
        if AUX {
            omega[idx] += 1;
            if e > 1 {
                squarefree[idx] = false;
            }
        }
        found[idx] = 1 << e;
        idx += 2;
    }

    for &p in primes.iter().skip_while(|&&p| p == 2) {
        let p64 = u64::from(p);
        if p64 * p64 >= hi {
            break;
        }
        let step = p as usize;
        let mut idx = first_multiple_offset(lo, p64);
        while idx < len {
            if TAU {
                tau[idx] = double(tau[idx]);
            }
            if AUX {
                omega[idx] += 1;
            }
            found[idx] *= p;
            idx += step;
        }

        let p2 = p64 * p64;
        let mut idx = first_multiple_offset(lo, p2);
        while idx < len {
            let mut rest = (lo + idx as u64) / p2;
            let mut e = 2u64;
            let mut extra = p;
            while rest.is_multiple_of(p64) {
                rest /= p64;
                e += 1;
                extra *= p;
            }
            if TAU {
                tau[idx] = mul(tau[idx], (e + 1) % m64 * inv2 % m64);
            }
            if AUX {
                squarefree[idx] = false;
            }
            found[idx] *= extra;
            idx += p2 as usize;
        }
    }

    for (idx, &f) in found.iter().enumerate() {
        if u64::from(f) != lo + idx as u64 {
            if TAU {
                tau[idx] = double(tau[idx]);
            }
            if AUX {
                omega[idx] += 1;
            }
        }
    }
    KernelOutput { tau, omega, squarefree }
}

fn first_multiple_offset(lo: u64, d: u64) -> usize {
    (lo.div_ceil(d) * d - lo) as usize
}

/// Primes `<= limit` by a plain sieve of Eratosthenes.
pub fn primes_up_to(limit: u64) -> Vec<u32> {
    let limit = limit as usize;
    if limit < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    for i in 2..=limit {
        if !composite[i] {
            primes.push(i as u32);
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

pub(crate) fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Scans `[1, max(checkpoints)]` in segments and returns, for every checkpoint
/// `c`, the elementwise sum of `per_piece` over pieces covering `[1, c]`.
///
/// Pieces never straddle a checkpoint, run on `cfg.threads` workers, and are
/// merged in index order; with integer histograms the result is independent
/// of the thread count.
pub(crate) fn cumulative_scan<F>(checkpoints: &[u64], cfg: &SieveConfig, per_piece: F) -> Result<Vec<Vec<u64>>>
where
    F: Fn(u64, u64, &[u32]) -> Vec<u64> + Sync,
{
    if checkpoints.is_empty() {
        return Ok(Vec::new());
    }
    if checkpoints.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::GridNotAscending);
    }
    let last = *checkpoints.last().unwrap();
    check_range(1, last + 1)?;
    if checkpoints[0] == 0 {
        return Err(Error::Zero);
    }

    let seg = cfg.segment_len();
    let mut pieces = Vec::new();
    let mut ends = Vec::new();
    let mut lo = 1;
    for &c in checkpoints {
        while lo <= c {
            let hi = (lo + seg).min(c + 1);
            pieces.push((lo, hi));
            lo = hi;
        }
        ends.push(pieces.len());
    }

    let primes = primes_up_to(isqrt(last));
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| Error::Invalid(format!("thread pool: {e}")))?;
    let partial: Vec<Vec<u64>> =
        pool.install(|| pieces.par_iter().map(|&(lo, hi)| per_piece(lo, hi, &primes)).collect());

    let mut out = Vec::with_capacity(checkpoints.len());
    let mut acc: Vec<u64> = Vec::new();
    let mut next = 0;
    for end in ends {
        for h in &partial[next..end] {
            if acc.len() < h.len() {
                acc.resize(h.len(), 0);
            }
            acc.iter_mut().zip(h).for_each(|(a, b)| *a += b);
        }
        next = end;
        out.push(acc.clone());
    }
    Ok(out)
}
