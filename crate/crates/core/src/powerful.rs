//! Powerful (squareful) numbers: every prime dividing n must divide it at
//! least twice. Provides the predicate, the canonical a^2 b^3 decomposition,
//! an ascending streaming enumeration, maximal consecutive-run detection, and
//! the infinite family of consecutive pairs coming from x^2 - 2y^2 = 1.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

use num_bigint::BigUint;
use num_traits::One;

use crate::arith::{factorize_with, icbrt, FactorConfig};
use crate::error::{Error, Result};
use crate::pell;

/// The unique representation n = a^2 * b^3 with b squarefree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerfulForm {
    pub a: BigUint,
    pub b: BigUint,
    pub n: BigUint,
}

/// A maximal block of consecutive powerful numbers: start, start+1, ...,
/// start+length-1 are all powerful, and the neighbors on both sides are not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsecutiveRun {
    pub start: BigUint,
    pub length: u64,
}

/// True iff every prime exponent of n is at least 2; 1 is powerful.
pub fn is_powerful(n: &BigUint) -> Result<bool> {
    is_powerful_with(n, &FactorConfig::default())
}

pub fn is_powerful_with(n: &BigUint, cfg: &FactorConfig) -> Result<bool> {
    let f = factorize_with(n, cfg)?;
    Ok(f.factors().iter().all(|(_, e)| *e >= 2))
}

/// True iff no prime divides n twice.
pub fn is_squarefree(n: &BigUint) -> Result<bool> {
    Ok(factorize_with(n, &FactorConfig::default())?.is_squarefree())
}

/// The unique (a, b) with n = a^2 * b^3 and b squarefree.
pub fn powerful_decomposition(n: &BigUint) -> Result<PowerfulForm> {
    powerful_decomposition_with(n, &FactorConfig::default())
}

pub fn powerful_decomposition_with(n: &BigUint, cfg: &FactorConfig) -> Result<PowerfulForm> {
    let f = factorize_with(n, cfg)?;
    if f.factors().iter().any(|(_, e)| *e < 2) {
        return Err(Error::NotPowerful(n.clone()));
    }
    let mut a = BigUint::one();
    let mut b = BigUint::one();
    for (p, e) in f.factors() {
        if e % 2 == 0 {
            a *= p.pow(e / 2);
        } else {
            // Odd exponent >= 3: p^e = p^3 * p^(e-3) with e-3 even.
            b *= p;
            a *= p.pow((e - 3) / 2);
        }
    }
    Ok(PowerfulForm {
        a,
        b,
        n: n.clone(),
    })
}

/// Ascending stream of exactly the powerful numbers <= limit.
///
/// Candidates are generated as a^2 * b^3 over squarefree b, merged through a
/// priority queue, so no element is ever factorized and limits of 10^12 and
/// beyond stream in O(sqrt(limit)) work without materializing anything.
pub fn enumerate_powerful(limit: &BigUint) -> PowerfulIter {
    let mut heap = BinaryHeap::new();
    let mut b = BigUint::one();
    let b_max = icbrt(limit);
    while b <= b_max {
        let squarefree = factorize_with(&b, &FactorConfig::default())
            .map(|f| f.is_squarefree())
            .expect("cube root of the limit is within factorization range");
        if squarefree {
            let b3 = &b * &b * &b;
            heap.push(Reverse(HeapEntry {
                value: b3.clone(),
                a: BigUint::one(),
                b_cubed: b3,
            }));
        }
        b += 1u32;
    }
    PowerfulIter {
        heap,
        limit: limit.clone(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct HeapEntry {
    value: BigUint,
    a: BigUint,
    b_cubed: BigUint,
}

/// Iterator over powerful numbers in ascending order; see
/// [`enumerate_powerful`].
#[derive(Debug, Clone)]
pub struct PowerfulIter {
    heap: BinaryHeap<Reverse<HeapEntry>>,
    limit: BigUint,
}

impl Iterator for PowerfulIter {
    type Item = BigUint;

    fn next(&mut self) -> Option<BigUint> {
        let Reverse(entry) = self.heap.pop()?;
        let a_next = &entry.a + 1u32;
        let value_next = &a_next * &a_next * &entry.b_cubed;
        if value_next <= self.limit {
            self.heap.push(Reverse(HeapEntry {
                value: value_next,
                a: a_next,
                b_cubed: entry.b_cubed,
            }));
        }
        Some(entry.value)
    }
}

/// All maximal runs of consecutive powerful numbers that start at or below
/// `limit` and have at least `min_length` elements, ascending by start.
///
/// A run whose elements reach `limit` is extended past it by direct
/// factorization so the reported length is the true maximal one.
pub fn find_consecutive_runs(limit: &BigUint, min_length: u64) -> Result<Vec<ConsecutiveRun>> {
    assert!(min_length >= 2, "runs of length < 2 are just single numbers");
    let mut runs = Vec::new();
    let mut current: Option<(BigUint, u64, BigUint)> = None; // (start, len, last)
    for v in enumerate_powerful(limit) {
        current = Some(match current.take() {
            Some((start, len, last)) if &last + 1u32 == v => (start, len + 1, v),
            Some((start, len, _)) => {
                if len >= min_length {
                    runs.push(ConsecutiveRun { start, length: len });
                }
                (v.clone(), 1, v)
            }
            None => (v.clone(), 1, v),
        });
    }
    if let Some((start, mut len, mut last)) = current {
        if last == *limit {
            // The final run touches the limit; keep extending by predicate so
            // maximality holds on both sides.
            loop {
                let next = &last + 1u32;
                if is_powerful(&next)? {
                    len += 1;
                    last = next;
                } else {
                    break;
                }
            }
        }
        if len >= min_length {
            runs.push(ConsecutiveRun { start, length: len });
        }
    }
    Ok(runs)
}

/// The first `count` consecutive powerful pairs (2y^2, x^2) arising from the
/// solutions of x^2 - 2y^2 = 1; y is always even, which is what makes 2y^2
/// powerful.
pub fn pairs_from_pell(count: usize) -> Vec<(BigUint, BigUint)> {
    pell::solutions(&BigUint::from(2u32))
        .expect("2 is not a perfect square")
        .take(count)
        .map(|s| (BigUint::from(2u32) * &s.y * &s.y, &s.x * &s.x))
        .collect()
}

/// The primes whose exponent in n is odd, ascending.
pub fn odd_valuation_primes(n: &BigUint) -> Result<BTreeSet<BigUint>> {
    let f = factorize_with(n, &FactorConfig::default())?;
    Ok(f.odd_exponent_primes().into_iter().collect())
}

/// `Some(p)` iff n = p^3 * y^2 for a prime p and some y >= 1; equivalently
/// p is the only prime of odd exponent and that exponent is at least 3.
pub fn as_prime_cube_times_square(n: &BigUint) -> Result<Option<BigUint>> {
    as_prime_cube_times_square_with(n, &FactorConfig::default())
}

pub fn as_prime_cube_times_square_with(
    n: &BigUint,
    cfg: &FactorConfig,
) -> Result<Option<BigUint>> {
    let f = factorize_with(n, cfg)?;
    let odd = f.odd_exponent_primes();
    Ok(match odd.as_slice() {
        [p] if f.valuation(p) >= 3 => Some(p.clone()),
        _ => None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    /// Trial-division powerful test, independent of arith::factorize.
    fn oracle_is_powerful(n: u64) -> bool {
        let mut m = n;
        let mut p = 2u64;
        while p * p <= m {
            if m.is_multiple_of(p) {
                let mut e = 0;
                while m.is_multiple_of(p) {
                    m /= p;
                    e += 1;
                }
                if e < 2 {
                    return false;
                }
            }
            p += 1;
        }
        m == 1
    }

    #[test]
    fn is_powerful_examples() {
        assert!(is_powerful(&big(8)).unwrap());
        assert!(!is_powerful(&big(7)).unwrap());
        assert!(is_powerful(&big(1)).unwrap());
    }

    #[test]
    fn decomposition_examples() {
        let f = powerful_decomposition(&big(72)).unwrap();
        assert_eq!((f.a, f.b), (big(3), big(2)));
        let f = powerful_decomposition(&big(1)).unwrap();
        assert_eq!((f.a, f.b), (big(1), big(1)));
        let f = powerful_decomposition(&big(12167)).unwrap();
        assert_eq!((f.a, f.b), (big(1), big(23)));
        assert!(matches!(
            powerful_decomposition(&big(12)),
            Err(Error::NotPowerful(_))
        ));
    }

    #[test]
    fn enumerate_small_limits() {
        let got: Vec<_> = enumerate_powerful(&big(10)).collect();
        assert_eq!(got, vec![big(1), big(4), big(8), big(9)]);
        let got: Vec<_> = enumerate_powerful(&big(1)).collect();
        assert_eq!(got, vec![big(1)]);
    }

    #[test]
    fn enumerate_matches_oracle_to_100() {
        let got: Vec<_> = enumerate_powerful(&big(100))
            .map(|v| v.to_u64().unwrap())
            .collect();
        let expected: Vec<_> = (1..=100u64).filter(|&n| oracle_is_powerful(n)).collect();
        assert_eq!(got, expected);
        assert_eq!(got.len(), 14);
        assert_eq!(&got[12..], &[81, 100]);
    }

    #[test]
    fn runs_to_300() {
        let runs = find_consecutive_runs(&big(300), 2).unwrap();
        let starts: Vec<_> = runs.iter().map(|r| r.start.to_u64().unwrap()).collect();
        assert_eq!(starts, vec![8, 288]);
        assert!(runs.iter().all(|r| r.length == 2));
    }

    #[test]
    fn runs_below_8_are_empty() {
        assert!(find_consecutive_runs(&big(7), 2).unwrap().is_empty());
    }

    #[test]
    fn run_touching_the_limit_is_extended() {
        // 288 is powerful and 289 = 17^2 lies past the limit; the run must
        // still be reported maximal.
        let runs = find_consecutive_runs(&big(288), 2).unwrap();
        assert_eq!(runs.len(), 2);
        assert_eq!(runs[1].start, big(288));
        assert_eq!(runs[1].length, 2);
    }

    #[test]
    fn run_maximality_neighbors_not_powerful() {
        for run in find_consecutive_runs(&big(100_000), 2).unwrap() {
            let start = run.start.to_u64().unwrap();
            let end = start + run.length - 1;
            assert!(!oracle_is_powerful(start - 1));
            assert!(!oracle_is_powerful(end + 1));
            for v in start..=end {
                assert!(oracle_is_powerful(v));
            }
        }
    }

    #[test]
    fn pell_pairs() {
        let pairs = pairs_from_pell(2);
        assert_eq!(pairs[0], (big(8), big(9)));
        assert_eq!(pairs[1], (big(288), big(289)));
        for (m, m1) in &pairs {
            assert_eq!(m + 1u32, *m1);
        }
    }

    #[test]
    fn odd_valuation_examples() {
        let set = odd_valuation_primes(&big(72)).unwrap();
        assert_eq!(set.into_iter().collect::<Vec<_>>(), vec![big(2)]);
        assert!(odd_valuation_primes(&big(36)).unwrap().is_empty());
        let set = odd_valuation_primes(&big(7)).unwrap();
        assert_eq!(set.into_iter().collect::<Vec<_>>(), vec![big(7)]);
    }

    #[test]
    fn prime_cube_times_square_examples() {
        assert_eq!(as_prime_cube_times_square(&big(8)).unwrap(), Some(big(2)));
        assert_eq!(as_prime_cube_times_square(&big(7)).unwrap(), None);
        // 200 = 2^3 * 5^2.
        assert_eq!(as_prime_cube_times_square(&big(200)).unwrap(), Some(big(2)));
        // 32 = 2^5 = 2^3 * 2^2 qualifies; 16 = 2^4 does not (even exponent).
        assert_eq!(as_prime_cube_times_square(&big(32)).unwrap(), Some(big(2)));
        assert_eq!(as_prime_cube_times_square(&big(16)).unwrap(), None);
    }
}
