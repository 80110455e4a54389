//! Exact-rational bound calculus: the a_k/b_k tables, g_k values, the
//! walk-count recursion, the q' parameter search, badness certificates for
//! dense near-regular graphs, the local-lemma girth threshold, and the
//! large-girth corollary arithmetic.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Multiplier for the q' search cap: the search stops at `64 * t * t`.
pub const QPRIME_CAP_FACTOR: u32 = 64;

/// Search cap for the smallest odd prime power in the girth-badness arithmetic.
pub const PRIME_POWER_SEARCH_CAP: u128 = 1 << 64;

/// Upper rational bound for 4e, so that every accepted k in `lll_min_k`
/// satisfies the true inequality.
pub fn four_e_upper() -> BigRational {
    // 4e = 10.8731273138...; 1087313/100000 = 10.87313 exceeds it
    BigRational::new(BigInt::from(1_087_313), BigInt::from(100_000))
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn pow2_recip(exp: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << exp)
}

/// The parameters a bound evaluation runs under: the walk length `t`, the
/// regularity slack `c`, and q = 2^(-q') with p = 1 - q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundParams {
    pub t: u32,
    pub c: u32,
    pub q_prime: u32,
    pub q: BigRational,
    pub p: BigRational,
}

impl BoundParams {
    /// q' >= 2 keeps q inside the open interval (0, 1/2).
    pub fn new(t: u32, c: u32, q_prime: u32) -> Result<Self> {
        if t < 1 || c < 1 {
            return Err(Error::validation("t and c must be positive"));
        }
        if q_prime < 2 {
            return Err(Error::validation("q' must be at least 2 so that q < 1/2"));
        }
        let q = pow2_recip(q_prime);
        let p = BigRational::one() - &q;
        Ok(BoundParams {
            t,
            c,
            q_prime,
            q,
            p,
        })
    }
}

/// The first `t` entries of the two label-threshold sequences, 1-indexed
/// through the accessors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeqTable {
    a: Vec<BigRational>,
    b: Vec<BigRational>,
}

impl SeqTable {
    pub fn a(&self, k: u32) -> &BigRational {
        &self.a[k as usize - 1]
    }

    pub fn b(&self, k: u32) -> &BigRational {
        &self.b[k as usize - 1]
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (u32, &BigRational, &BigRational)> {
        self.a
            .iter()
            .zip(&self.b)
            .enumerate()
            .map(|(i, (a, b))| (i as u32 + 1, a, b))
    }
}

/// a_1 = 1, b_1 = 0, and for k > 1
///   a_k = q p^(k-2) a_(k-1) + 2 q^2 p^(k-3)
///   b_k = q^2 p^(k-2) a_(k-1) + q p^(k-1) b_(k-1) + q^2 p^(k-3),
/// all in exact arithmetic. At k = 2 the exponent k-3 = -1 is evaluated as
/// division by p.
pub fn ab_sequences(t: u32, params: &BoundParams) -> SeqTable {
    assert!(t >= 1, "sequence length must be positive");
    let q = &params.q;
    let p = &params.p;
    let q2 = q * q;
    let mut a = vec![BigRational::one()];
    let mut b = vec![BigRational::zero()];
    for k in 2..=t {
        let pk2 = p.pow(k as i32 - 2);
        let pk3 = p.pow(k as i32 - 3);
        let pk1 = p.pow(k as i32 - 1);
        let prev_a = a[k as usize - 2].clone();
        let prev_b = b[k as usize - 2].clone();
        a.push(q * &pk2 * &prev_a + rat(2) * &q2 * &pk3);
        b.push(&q2 * &pk2 * &prev_a + q * &pk1 * &prev_b + &q2 * &pk3);
    }
    SeqTable { a, b }
}

/// g_k(n, m, delta) = a_k m delta^(k-1) - b_k n delta^k.
pub fn g_value(
    n: &BigRational,
    m: &BigRational,
    delta: &BigRational,
    k: u32,
    params: &BoundParams,
) -> BigRational {
    assert!(k >= 1, "k must be positive");
    let table = ab_sequences(k, params);
    table.a(k) * m * delta.pow(k as i32 - 1) - table.b(k) * n * delta.pow(k as i32)
}

/// Residual of the displayed recursion
///   g_k(n,m,delta) = q delta g_(k-1)(n, m - q n delta, p delta)
///                    - q^2 p^(k-3) delta^(k-1) (n delta - 2m),
/// which must be exactly zero for every rational input.
pub fn recursion_identity_residual(
    n: &BigRational,
    m: &BigRational,
    delta: &BigRational,
    k: u32,
    params: &BoundParams,
) -> Result<BigRational> {
    if k < 2 {
        return Err(Error::validation("the recursion identity needs k >= 2"));
    }
    let (q, p) = (&params.q, &params.p);
    let lhs = g_value(n, m, delta, k, params);
    let inner_m = m - q * n * delta;
    let inner_delta = p * delta;
    let rhs = q * delta * g_value(n, &inner_m, &inner_delta, k - 1, params)
        - q * q * p.pow(k as i32 - 3) * delta.pow(k as i32 - 1) * (n * delta - rat(2) * m);
    Ok(lhs - rhs)
}

/// Unroll the walk-count recursion
///   f_k(n,m,delta) >= a [ f_(k-1)(n, m - a n, delta - a)
///                         - (n delta - 2m) a (delta - a)^(k-3) ]
/// with base f_1 = m, one scheduled `a` per level (first entry applies at
/// level `k`), clamping every level at zero since counts are nonnegative.
pub fn walk_count_lower_bound(
    n: u64,
    m: u64,
    delta: u64,
    schedule: &[u64],
    k: u32,
) -> Result<BigRational> {
    if k < 1 {
        return Err(Error::validation("k must be positive"));
    }
    if schedule.len() != k as usize - 1 {
        return Err(Error::validation(format!(
            "schedule must supply k - 1 = {} entries, got {}",
            k - 1,
            schedule.len()
        )));
    }
    let n_big = BigInt::from(n);
    fn unroll(
        n: &BigInt,
        m: BigInt,
        delta: u64,
        schedule: &[u64],
        level: u32,
    ) -> Result<BigRational> {
        if level == 1 {
            let count = if m.is_negative() { BigInt::zero() } else { m };
            return Ok(BigRational::from_integer(count));
        }
        let a = schedule[0];
        if a < 1 || 2 * a > delta {
            return Err(Error::validation(format!(
                "scheduled a = {a} violates 1 <= a <= delta/2 at delta = {delta}"
            )));
        }
        let inner = unroll(
            n,
            &m - BigInt::from(a) * n,
            delta - a,
            &schedule[1..],
            level - 1,
        )?;
        let surplus = BigRational::from_integer(n * BigInt::from(delta) - BigInt::from(2) * &m);
        let correction = surplus
            * BigRational::from_integer(BigInt::from(a))
            * BigRational::from_integer(BigInt::from(delta - a)).pow(level as i32 - 3);
        let value = BigRational::from_integer(BigInt::from(a)) * (inner - correction);
        Ok(if value.is_negative() {
            BigRational::zero()
        } else {
            value
        })
    }
    unroll(&n_big, BigInt::from(m), delta, schedule, k)
}

/// Smallest q' >= 2 with a_t - 4c b_t > 0 at q = 2^(-q'), searched up to the
/// safety cap `64 t^2`.
pub fn find_q_prime(t: u32, c: u32) -> Result<BoundParams> {
    find_q_prime_capped(t, c, QPRIME_CAP_FACTOR.saturating_mul(t).saturating_mul(t))
}

/// The ratio a_t / b_t tends to t for t = 3 and to 2 for t >= 4 as q shrinks,
/// so for t >= 3 the condition a_t - 4c b_t > 0 is never met and the search
/// reports the cap instead of looping forever.
pub fn find_q_prime_capped(t: u32, c: u32, cap: u32) -> Result<BoundParams> {
    if t < 1 || c < 1 {
        return Err(Error::validation("t and c must be positive"));
    }
    for q_prime in 2..=cap.max(2) {
        let params = BoundParams::new(t, c, q_prime)?;
        let table = ab_sequences(t, &params);
        if table.a(t) - rat(4) * rat(c as i64) * table.b(t) > BigRational::zero() {
            return Ok(params);
        }
    }
    Err(Error::QPrimeCapExceeded { t, c, cap })
}

/// alpha_t = a_t/4 - c b_t and epsilon(t, c) = min{ c^(t-1) alpha_t, 2^(-q' t^2) },
/// both exact, at the parameters `find_q_prime` returns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsilonResult {
    pub params: BoundParams,
    pub alpha: BigRational,
    pub epsilon: BigRational,
}

pub fn epsilon(t: u32, c: u32) -> Result<EpsilonResult> {
    epsilon_capped(t, c, QPRIME_CAP_FACTOR.saturating_mul(t).saturating_mul(t))
}

/// Same as [`epsilon`] with an explicit q' search cap.
pub fn epsilon_capped(t: u32, c: u32, cap: u32) -> Result<EpsilonResult> {
    let params = find_q_prime_capped(t, c, cap)?;
    let table = ab_sequences(t, &params);
    let alpha = table.a(t) / rat(4) - rat(c as i64) * table.b(t);
    let scaled = BigRational::from_integer(BigInt::from(c).pow(t - 1)) * &alpha;
    let tail = pow2_recip(params.q_prime * t * t);
    let epsilon = scaled.min(tail);
    Ok(EpsilonResult {
        params,
        alpha,
        epsilon,
    })
}

/// The arithmetic trace behind a badness certificate: the dyadic rounding
/// r = 2^(r') of the average degree and the chain of exact checks the proof
/// performs at m = nr/4, delta = cr.
#[derive(Clone, Debug)]
pub struct CertTrace {
    pub r_prime: i64,
    pub r: BigRational,
    /// r > 2^(q' t), which forces the integrality conditions below.
    pub r_exceeds_pow: bool,
    /// q p^i c r for i = 0..t-2, with an exact integrality flag each.
    pub integrality: Vec<(BigRational, bool)>,
    pub g_value: BigRational,
    pub n_squared: BigRational,
    pub g_exceeds_n_squared: bool,
}

/// Certificate that every edge-labelling of an n-vertex graph with average
/// degree `dbar` and maximum degree `delta <= c dbar` has two nice t-walks
/// with equal ordered endpoints, hence that the graph is bad.
#[derive(Clone, Debug)]
pub struct BadnessCertificate {
    pub n: u64,
    pub dbar: BigRational,
    pub delta: u64,
    pub epsilon: EpsilonResult,
    /// delta <= c dbar.
    pub degree_ok: bool,
    /// epsilon(t, c) dbar^t > n.
    pub size_ok: bool,
    pub applies: bool,
    pub trace: Option<CertTrace>,
}

/// Smallest integer e with 2^e >= x, for x > 0.
fn ceil_log2(x: &BigRational) -> i64 {
    assert!(x.is_positive());
    let mut e: i64 = 0;
    let mut power = BigRational::one();
    if &power >= x {
        // walk down until 2^(e-1) < x
        loop {
            let half = &power / rat(2);
            if &half < x {
                return e;
            }
            power = half;
            e -= 1;
        }
    }
    while &power < x {
        power *= rat(2);
        e += 1;
    }
    e
}

fn pow2_rat(e: i64) -> BigRational {
    if e >= 0 {
        BigRational::from_integer(BigInt::one() << e as u32)
    } else {
        BigRational::new(BigInt::one(), BigInt::one() << (-e) as u32)
    }
}

pub fn certify_badness(
    n: u64,
    dbar: &BigRational,
    delta: u64,
    t: u32,
    c: u32,
) -> Result<BadnessCertificate> {
    if n < 1 {
        return Err(Error::validation("n must be positive"));
    }
    let eps = epsilon(t, c)?;
    let n_rat = BigRational::from_integer(BigInt::from(n));
    let degree_ok = BigRational::from_integer(BigInt::from(delta)) <= rat(c as i64) * dbar;
    let size_ok = &eps.epsilon * dbar.pow(t as i32) > n_rat;
    let applies = degree_ok && size_ok;

    let trace = if dbar.is_positive() {
        let r_prime = ceil_log2(dbar);
        let r = pow2_rat(r_prime);
        let r_exceeds_pow = r > pow2_rat((eps.params.q_prime * t) as i64);
        let (q, p) = (&eps.params.q, &eps.params.p);
        let scaled_delta = rat(c as i64) * &r;
        let mut integrality = Vec::new();
        for i in 0..t.saturating_sub(1) {
            let value = q * p.pow(i as i32) * &scaled_delta;
            let is_int = value.is_integer();
            integrality.push((value, is_int));
        }
        let m_sub = &n_rat * &r / rat(4);
        let g_val = g_value(&n_rat, &m_sub, &scaled_delta, t, &eps.params);
        let n_squared = &n_rat * &n_rat;
        let g_exceeds_n_squared = g_val > n_squared;
        Some(CertTrace {
            r_prime,
            r,
            r_exceeds_pow,
            integrality,
            g_value: g_val,
            n_squared,
            g_exceeds_n_squared,
        })
    } else {
        None
    };

    Ok(BadnessCertificate {
        n,
        dbar: dbar.clone(),
        delta,
        epsilon: eps,
        degree_ok,
        size_ok,
        applies,
        trace,
    })
}

/// Smallest k >= 2 with 4e k^2 (delta - 1)^(k-1) < k!, using the rational
/// upper bound for 4e; any accepted k satisfies the true inequality. A graph
/// with maximum degree at most `delta` and girth at least `2k` is good.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LllThreshold {
    pub k: u32,
    pub girth_threshold: u32,
}

pub fn lll_min_k(delta: u32) -> LllThreshold {
    assert!(delta >= 1, "delta must be positive");
    let bound = four_e_upper();
    let mut factorial = BigInt::from(2); // 2!
    let mut k: u32 = 2;
    loop {
        let lhs = &bound
            * BigRational::from_integer(BigInt::from(k) * BigInt::from(k))
            * BigRational::from_integer(BigInt::from(delta as i64 - 1).pow(k - 1));
        if lhs < BigRational::from_integer(factorial.clone()) {
            return LllThreshold {
                k,
                girth_threshold: 2 * k,
            };
        }
        k += 1;
        factorial *= BigInt::from(k);
    }
}

/// Outcome of the odd-prime-power search in the girth-badness arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrimePowerSearch {
    Found(u64),
    AboveSearchCap,
}

/// Parameters witnessing a bad graph of a requested girth g:
/// g in {3, 4} is covered by K3 and K2,3 directly; for g >= 5 the walk
/// length is t = floor(3g/4) + 1 and a d-regular girth-g graph on at most
/// 2 d^(3g/4 - 1) vertices is bad for any odd prime power
/// d > 2/epsilon(t, 1).
#[derive(Clone, Debug)]
pub struct GirthBadnessParams {
    pub girth: u32,
    pub special_case: bool,
    pub t: Option<u32>,
    pub epsilon: Option<EpsilonResult>,
    /// Set when the q' search for epsilon(t, 1) hit its cap, which is the
    /// standing outcome for every t >= 3 (see `find_q_prime_capped`).
    pub q_prime_cap_hit: bool,
    /// 2 / epsilon(t, 1), exact.
    pub threshold: Option<BigRational>,
    pub d_min: Option<PrimePowerSearch>,
    /// Exact check of 2 d^(3g/4 - 1) < epsilon(t, 1) d^t at d = d_min,
    /// compared with both sides raised to the fourth power.
    pub witness_inequality_holds: Option<bool>,
}

pub fn girth_badness_params(girth: u32) -> Result<GirthBadnessParams> {
    let t = 3 * girth / 4 + 1;
    girth_badness_params_capped(girth, QPRIME_CAP_FACTOR.saturating_mul(t).saturating_mul(t))
}

/// Same as [`girth_badness_params`] with an explicit q' search cap for the
/// epsilon(t, 1) evaluation.
pub fn girth_badness_params_capped(girth: u32, q_prime_cap: u32) -> Result<GirthBadnessParams> {
    if girth < 3 {
        return Err(Error::validation("girth must be at least 3"));
    }
    if girth <= 4 {
        return Ok(GirthBadnessParams {
            girth,
            special_case: true,
            t: None,
            epsilon: None,
            q_prime_cap_hit: false,
            threshold: None,
            d_min: None,
            witness_inequality_holds: None,
        });
    }
    let t = 3 * girth / 4 + 1; // smallest integer exceeding 3g/4
    let eps = match epsilon_capped(t, 1, q_prime_cap) {
        Ok(e) => e,
        Err(Error::QPrimeCapExceeded { .. }) => {
            return Ok(GirthBadnessParams {
                girth,
                special_case: false,
                t: Some(t),
                epsilon: None,
                q_prime_cap_hit: true,
                threshold: None,
                d_min: None,
                witness_inequality_holds: None,
            })
        }
        Err(e) => return Err(e),
    };
    let threshold = rat(2) / &eps.epsilon;
    let cap = BigRational::from_integer(BigInt::from(PRIME_POWER_SEARCH_CAP));
    let d_min = if threshold < cap {
        let start = threshold.floor().to_integer();
        let mut d: u64 = 0;
        let mut x = u128::try_from(&start).unwrap_or(0).saturating_add(1);
        if x % 2 == 0 {
            x += 1;
        }
        while x < PRIME_POWER_SEARCH_CAP {
            if is_odd_prime_power(x as u64) {
                d = x as u64;
                break;
            }
            x += 2;
        }
        if d > 0 {
            PrimePowerSearch::Found(d)
        } else {
            PrimePowerSearch::AboveSearchCap
        }
    } else {
        PrimePowerSearch::AboveSearchCap
    };
    let witness_inequality_holds = match d_min {
        PrimePowerSearch::Found(d) => {
            // 2 d^(3g/4 - 1) < eps d^t  <=>  16 d^(3g - 4) < eps^4 d^(4t)
            let d_rat = BigRational::from_integer(BigInt::from(d));
            let lhs = rat(16) * d_rat.pow(3 * girth as i32 - 4);
            let rhs = eps.epsilon.pow(4) * d_rat.pow(4 * t as i32);
            Some(lhs < rhs)
        }
        PrimePowerSearch::AboveSearchCap => None,
    };
    Ok(GirthBadnessParams {
        girth,
        special_case: false,
        t: Some(t),
        epsilon: Some(eps),
        q_prime_cap_hit: false,
        threshold: Some(threshold),
        d_min: Some(d_min),
        witness_inequality_holds,
    })
}

/// Deterministic Miller-Rabin for u64.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut base: u64, mut exp: u64| {
        let mut acc = 1u64;
        base %= n;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            exp >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// n = p^e for some odd prime p and e >= 1.
fn is_odd_prime_power(n: u64) -> bool {
    if n < 3 || n.is_multiple_of(2) {
        return false;
    }
    if is_prime_u64(n) {
        return true;
    }
    for e in 2..=40u32 {
        let root = (n as f64).powf(1.0 / e as f64).round() as u64;
        for p in root.saturating_sub(1)..=root + 1 {
            if p >= 2 && p.checked_pow(e) == Some(n) && is_prime_u64(p) {
                return true;
            }
        }
        if 2u64.checked_pow(e).is_none() || 3u64.checked_pow(e).is_none_or(|v| v > n) {
            break;
        }
    }
    false
}
