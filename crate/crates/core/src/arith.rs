//! Exact integer primitives over arbitrary-precision integers: roots,
//! perfect-power tests, primality, factorization, gcd, and p-adic valuations.
//!
//! Everything downstream builds on these. All functions are pure and
//! thread-safe; results are exact at any size (no floating point anywhere).

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;

use crate::error::{Error, Result};

/// Primes up to the default trial-division bound, sieved once.
static SMALL_PRIMES: Lazy<Vec<u64>> = Lazy::new(|| sieve_primes(10_000));

/// Largest input for which the 13-prime Miller-Rabin base set is a proven
/// deterministic primality test (Sorenson & Webster).
static MR_DETERMINISTIC_LIMIT: Lazy<BigUint> =
    Lazy::new(|| BigUint::parse_bytes(b"3317044064679887385961981", 10).unwrap());

const MR_DETERMINISTIC_BASES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Bitmasks of quadratic residues mod 64, 63, 65 and 11. Testing these knocks
/// out the vast majority of non-squares before the full integer sqrt.
static SQUARE_MASKS: Lazy<(u64, u64, u128, u16)> = Lazy::new(|| {
    let (mut m64, mut m63, mut m65, mut m11) = (0u64, 0u64, 0u128, 0u16);
    for i in 0u64..65 {
        m64 |= 1 << (i * i % 64);
        m63 |= 1 << (i * i % 63);
        m65 |= 1 << (i * i % 65);
        m11 |= 1 << (i * i % 11);
    }
    (m64, m63, m65, m11)
});

fn sieve_primes(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

fn trial_primes(limit: u64) -> std::borrow::Cow<'static, [u64]> {
    if limit == 10_000 {
        std::borrow::Cow::Borrowed(&SMALL_PRIMES)
    } else {
        std::borrow::Cow::Owned(sieve_primes(limit))
    }
}

/// Floor of the square root, by integer Newton iteration from an over-estimate.
///
/// Returns the unique `r` with `r^2 <= n < (r+1)^2`.
pub fn isqrt(n: &BigUint) -> BigUint {
    if n <= &BigUint::one() {
        return n.clone();
    }
    // 2^ceil(bits/2) > sqrt(n); the iteration decreases strictly until it
    // reaches the floor, where it stalls.
    let mut x = BigUint::one() << (n.bits().div_ceil(2) as usize);
    loop {
        let next = (&x + n / &x) >> 1;
        if next >= x {
            return x;
        }
        x = next;
    }
}

/// Floor of the cube root. Newton iteration with an exact final correction.
pub fn icbrt(n: &BigUint) -> BigUint {
    if n <= &BigUint::one() {
        return n.clone();
    }
    let mut x = BigUint::one() << ((n.bits() / 3 + 1) as usize);
    loop {
        let x2 = &x * &x;
        let next = ((&x << 1) + n / x2) / 3u32;
        if next >= x {
            break;
        }
        x = next;
    }
    // Integer Newton can land one off for cubes; pin the floor exactly.
    while &x * &x * &x > *n {
        x -= 1u32;
    }
    while {
        let y = &x + 1u32;
        &y * &y * &y <= *n
    } {
        x += 1u32;
    }
    x
}

/// `Some(r)` iff `n = r^2`.
pub fn is_perfect_square(n: &BigUint) -> Option<BigUint> {
    let (m64, m63, m65, m11) = *SQUARE_MASKS;
    // One division gives the residue mod 64*63*65*11.
    let r = (n % 2_882_880u32).to_u64().unwrap();
    if (m64 >> (r % 64)) & 1 == 0
        || (m63 >> (r % 63)) & 1 == 0
        || (m65 >> (r % 65)) as u64 & 1 == 0
        || (m11 >> (r % 11)) & 1 == 0
    {
        return None;
    }
    let root = isqrt(n);
    (&root * &root == *n).then_some(root)
}

/// `Some(r)` iff `n = r^3`.
pub fn is_perfect_cube(n: &BigUint) -> Option<BigUint> {
    let root = icbrt(n);
    (&root * &root * &root == *n).then_some(root)
}

/// Greatest common divisor of two integers; `gcd(0, 0) = 0`.
pub fn gcd(a: &BigInt, b: &BigInt) -> BigUint {
    a.gcd(b).to_biguint().unwrap()
}

/// The exponent k with `p^k || n`, i.e. `p^k | n` but `p^(k+1)` does not.
///
/// Errors if `p` is not prime. Requires `n >= 1`.
pub fn padic_valuation(p: &BigUint, n: &BigUint) -> Result<u32> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p.clone()));
    }
    assert!(!n.is_zero(), "padic_valuation requires n >= 1");
    let mut k = 0u32;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return Ok(k);
        }
        m = q;
        k += 1;
    }
}

/// Primality test: deterministic Miller-Rabin with the 13-prime base set for
/// inputs below ~3.3e24, and 40 strong-probable-prime rounds plus one strong
/// Lucas test above it (no composite is known to pass that combination).
pub fn is_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if n < &two {
        return false;
    }
    for &p in SMALL_PRIMES.iter().take(60) {
        let p = BigUint::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    // n is odd and > 281^2 would be needed for the trial stage to prove
    // primality, so run Miller-Rabin.
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap();
    let d = &n_minus_1 >> s;
    if n < &MR_DETERMINISTIC_LIMIT {
        MR_DETERMINISTIC_BASES
            .iter()
            .all(|&b| sprp(n, &n_minus_1, &d, s, b))
    } else {
        if is_perfect_square(n).is_some() {
            return false;
        }
        SMALL_PRIMES
            .iter()
            .take(40)
            .all(|&b| sprp(n, &n_minus_1, &d, s, b as u32))
            && strong_lucas_prp(n)
    }
}

/// One strong-probable-prime round: n-1 = 2^s * d with d odd.
fn sprp(n: &BigUint, n_minus_1: &BigUint, d: &BigUint, s: u64, base: u32) -> bool {
    let mut x = BigUint::from(base).modpow(d, n);
    if x.is_one() || x == *n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = &x * &x % n;
        if x == *n_minus_1 {
            return true;
        }
        if x.is_one() {
            return false;
        }
    }
    false
}

/// Jacobi symbol (a/n) for odd positive n.
fn jacobi(a: &BigInt, n: &BigUint) -> i32 {
    let n_int = BigInt::from(n.clone());
    let mut a = a.mod_floor(&n_int).to_biguint().unwrap();
    let mut n = n.clone();
    let mut t = 1i32;
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = (&n % 8u32).to_u64().unwrap();
            if r == 3 || r == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % 4u32).to_u64().unwrap() == 3 && (&n % 4u32).to_u64().unwrap() == 3 {
            t = -t;
        }
        a %= &n;
    }
    if n.is_one() {
        t
    } else {
        0
    }
}

/// Strong Lucas probable-prime test with Selfridge's parameter choice.
/// Callers must have rejected even inputs, small-prime multiples, and perfect
/// squares (the D search does not terminate on squares).
fn strong_lucas_prp(n: &BigUint) -> bool {
    let n_int = BigInt::from(n.clone());
    // First D in 5, -7, 9, -11, ... with (D/n) = -1.
    let mut d = BigInt::from(5);
    loop {
        match jacobi(&d, n) {
            -1 => break,
            0 => return d.magnitude() == n,
            _ => {
                d = if d.is_positive() {
                    -(d + 2u32)
                } else {
                    -(d - 2u32)
                };
            }
        }
    }
    // P = 1, Q = (1 - D) / 4.
    let q = (BigInt::one() - &d) / 4;
    let modn = |v: &BigInt| v.mod_floor(&n_int);
    let halve = |v: &BigInt| -> BigInt {
        // Division by 2 mod odd n.
        if v.is_even() {
            v >> 1
        } else {
            (v + &n_int) >> 1
        }
    };

    // n + 1 = 2^s * m with m odd; compute U_m, V_m, Q^m by a binary ladder.
    let n_plus_1 = n + 1u32;
    let s = n_plus_1.trailing_zeros().unwrap();
    let m = &n_plus_1 >> s;

    let mut u = BigInt::one();
    let mut v = BigInt::one(); // V_1 = P = 1
    let mut qk = modn(&q);
    for i in (0..m.bits() - 1).rev() {
        // Index doubling.
        u = modn(&(&u * &v));
        v = modn(&(&v * &v - 2 * &qk));
        qk = modn(&(&qk * &qk));
        if m.bit(i) {
            // Index + 1 (P = 1).
            let u_next = halve(&modn(&(&u + &v)));
            let v_next = halve(&modn(&(&d * &u + &v)));
            u = modn(&u_next);
            v = modn(&v_next);
            qk = modn(&(&qk * &q));
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = modn(&(&v * &v - 2 * &qk));
        qk = modn(&(&qk * &qk));
        if v.is_zero() {
            return true;
        }
    }
    false
}

/// A complete prime factorization: primes strictly increasing, every exponent
/// at least 1, and the product reconstructs the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    n: BigUint,
    factors: Vec<(BigUint, u32)>,
}

impl Factorization {
    /// The factored integer.
    pub fn n(&self) -> &BigUint {
        &self.n
    }

    /// `(prime, exponent)` pairs, primes strictly increasing. Empty for n = 1.
    pub fn factors(&self) -> &[(BigUint, u32)] {
        &self.factors
    }

    /// Recomputes the product of `prime^exponent`.
    pub fn product(&self) -> BigUint {
        self.factors
            .iter()
            .fold(BigUint::one(), |acc, (p, e)| acc * p.pow(*e))
    }

    /// The exponent of `p`, zero if `p` does not divide n.
    pub fn valuation(&self, p: &BigUint) -> u32 {
        self.factors
            .iter()
            .find(|(q, _)| q == p)
            .map_or(0, |(_, e)| *e)
    }

    /// Primes whose exponent is odd, ascending.
    pub fn odd_exponent_primes(&self) -> Vec<BigUint> {
        self.factors
            .iter()
            .filter(|(_, e)| e % 2 == 1)
            .map(|(p, _)| p.clone())
            .collect()
    }

    /// True iff every exponent is even.
    pub fn is_square(&self) -> bool {
        self.factors.iter().all(|(_, e)| e % 2 == 0)
    }

    /// True iff every exponent is exactly 1.
    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, e)| *e == 1)
    }
}

impl std::fmt::Display for Factorization {
    /// Renders as `2^3 * 3^2 * 7`; the empty factorization of 1 renders as `1`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(p, e)| {
                if *e == 1 {
                    p.to_string()
                } else {
                    format!("{p}^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" * "))
    }
}

/// Budgets for `factorize_with`. Exceeding the rho budget yields an
/// `Unfactored` error naming the stuck cofactor, never a wrong answer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorConfig {
    /// Trial-divide by all primes up to this bound.
    pub trial_limit: u64,
    /// Iterations per Brent-rho run.
    pub rho_budget: u64,
    /// Distinct polynomial offsets to try before giving up.
    pub rho_restarts: u32,
}

impl Default for FactorConfig {
    fn default() -> Self {
        FactorConfig {
            trial_limit: 10_000,
            rho_budget: 1 << 20,
            rho_restarts: 8,
        }
    }
}

impl FactorConfig {
    /// The same configuration with the rho budget multiplied by `factor`.
    pub fn scaled(&self, factor: u64) -> Self {
        FactorConfig {
            rho_budget: self.rho_budget.saturating_mul(factor),
            ..self.clone()
        }
    }
}

/// Complete prime factorization with default budgets.
pub fn factorize(n: &BigUint) -> Result<Factorization> {
    factorize_with(n, &FactorConfig::default())
}

/// Complete prime factorization: trial division, then Brent's rho with
/// restarts on the remaining cofactor. Requires `n >= 1`.
pub fn factorize_with(n: &BigUint, cfg: &FactorConfig) -> Result<Factorization> {
    assert!(!n.is_zero(), "factorize requires n >= 1");
    let mut counts: BTreeMap<BigUint, u32> = BTreeMap::new();
    let mut m = n.clone();
    for &p in trial_primes(cfg.trial_limit).iter() {
        if m.is_one() {
            break;
        }
        let pp = BigUint::from(p);
        if &pp * &pp > m {
            break;
        }
        while (&m % &pp).is_zero() {
            m /= &pp;
            *counts.entry(pp.clone()).or_default() += 1;
        }
    }
    // Whatever remains has no prime factor <= trial_limit (or is prime).
    let mut stack = Vec::new();
    if !m.is_one() {
        stack.push(m);
    }
    while let Some(c) = stack.pop() {
        if is_prime(&c) {
            *counts.entry(c).or_default() += 1;
            continue;
        }
        // Perfect powers split for free and are common in a^2 b^3 inputs.
        if let Some(r) = is_perfect_square(&c) {
            stack.push(r.clone());
            stack.push(r);
            continue;
        }
        if let Some(r) = is_perfect_cube(&c) {
            stack.push(r.clone());
            stack.push(r.clone());
            stack.push(r);
            continue;
        }
        match brent_rho(&c, cfg) {
            Some(divisor) => {
                stack.push(&c / &divisor);
                stack.push(divisor);
            }
            None => {
                return Err(Error::Unfactored {
                    n: n.clone(),
                    cofactor: c,
                })
            }
        }
    }
    Ok(Factorization {
        n: n.clone(),
        factors: counts.into_iter().collect(),
    })
}

/// A nontrivial divisor of the odd composite `n`, or None if every restart
/// exhausts its budget.
fn brent_rho(n: &BigUint, cfg: &FactorConfig) -> Option<BigUint> {
    if let Some(n64) = n.to_u64() {
        for c in 1..=cfg.rho_restarts as u64 {
            if let Some(d) = brent_rho_u64(n64, c, cfg.rho_budget) {
                return Some(BigUint::from(d));
            }
        }
        return None;
    }
    for c in 1..=cfg.rho_restarts as u64 {
        if let Some(d) = brent_rho_big(n, c, cfg.rho_budget) {
            return Some(d);
        }
    }
    None
}

fn mulmod_u64(a: u64, b: u64, n: u64) -> u64 {
    (a as u128 * b as u128 % n as u128) as u64
}

fn brent_rho_u64(n: u64, c: u64, budget: u64) -> Option<u64> {
    let step = |y: u64| (mulmod_u64(y, y, n) + c) % n;
    let mut y = 2u64;
    let (mut g, mut r, mut q) = (1u64, 1u64, 1u64);
    let (mut x, mut ys) = (y, y);
    let m = 128u64;
    let mut iters = 0u64;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = step(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..m.min(r - k) {
                y = step(y);
                q = mulmod_u64(q, x.abs_diff(y), n);
            }
            g = q.gcd(&n);
            k += m;
            iters += m;
            if iters > budget {
                return None;
            }
        }
        r *= 2;
    }
    if g == n {
        // The batched gcd overshot; walk the saved segment one step at a time.
        loop {
            ys = step(ys);
            g = x.abs_diff(ys).gcd(&n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

fn brent_rho_big(n: &BigUint, c: u64, budget: u64) -> Option<BigUint> {
    let c = BigUint::from(c);
    let one = BigUint::one();
    let step = |y: &BigUint| (y * y + &c) % n;
    let abs_diff = |a: &BigUint, b: &BigUint| if a > b { a - b } else { b - a };
    let mut y = BigUint::from(2u32);
    let (mut g, mut r, mut q) = (one.clone(), 1u64, one.clone());
    let (mut x, mut ys) = (y.clone(), y.clone());
    let m = 128u64;
    let mut iters = 0u64;
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = step(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            for _ in 0..m.min(r - k) {
                y = step(&y);
                q = q * abs_diff(&x, &y) % n;
            }
            g = q.gcd(n);
            k += m;
            iters += m;
            if iters > budget {
                return None;
            }
        }
        r *= 2;
    }
    if g == *n {
        loop {
            ys = step(&ys);
            g = abs_diff(&x, &ys).gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    (g != *n).then_some(g)
}
