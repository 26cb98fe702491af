//! Pell and generalized Pell equations.
//!
//! Fundamental solutions come from the continued-fraction expansion of sqrt(D)
//! (period-parity rule), class representatives of x^2 - D y^2 = N from the
//! classical bounded search, and full solution sets from unit multiplication,
//! streamed in ascending order. The second-order recurrences satisfied by the
//! coordinate sequences live here too.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::arith::{is_perfect_square, isqrt};
use crate::error::{Error, Result};

/// Continued fraction of sqrt(D): integer part `a0` and the minimal periodic
/// block of partial quotients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CfExpansion {
    pub a0: BigUint,
    pub period: Vec<BigUint>,
}

/// One positive solution of a (generalized) Pell equation, with its 1-based
/// position inside its solution class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PellSolution {
    pub x: BigUint,
    pub y: BigUint,
    pub index: u64,
}

/// Continued-fraction expansion of sqrt(D) for non-square D >= 2.
pub fn cf_sqrt(d: &BigUint) -> Result<CfExpansion> {
    let a0 = isqrt(d);
    if &a0 * &a0 == *d {
        return Err(Error::SquareDiscriminant(d.clone()));
    }
    // PQa recurrence; the period closes at the first denominator equal to 1.
    let mut m = BigUint::zero();
    let mut den = BigUint::one();
    let mut a = a0.clone();
    let mut period = Vec::new();
    loop {
        let m_next = &den * &a - &m;
        let den_next = (d - &m_next * &m_next) / &den;
        let a_next = (&a0 + &m_next) / &den_next;
        period.push(a_next.clone());
        m = m_next;
        den = den_next;
        a = a_next;
        if den.is_one() {
            return Ok(CfExpansion { a0, period });
        }
    }
}

/// Minimal positive solution of x^2 - D y^2 = 1, from the convergent at the
/// end of the (first or doubled) continued-fraction period.
pub fn fundamental_solution(d: &BigUint) -> Result<PellSolution> {
    let cf = cf_sqrt(d)?;
    let len = cf.period.len();
    let (mut p_prev, mut p) = (BigUint::one(), cf.a0.clone());
    let (mut q_prev, mut q) = (BigUint::zero(), BigUint::one());
    for a in cf.period.iter().take(len - 1) {
        let p_next = a * &p + &p_prev;
        let q_next = a * &q + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
    }
    let (x, y) = if len % 2 == 0 {
        (p, q)
    } else {
        // Odd period: the convergent solves x^2 - D y^2 = -1; square it.
        (&p * &p + d * &q * &q, BigUint::from(2u32) * &p * &q)
    };
    debug_assert_eq!(&x * &x, d * &y * &y + 1u32);
    Ok(PellSolution { x, y, index: 1 })
}

/// All positive solutions of x^2 - D y^2 = 1, ascending. Successive solutions
/// satisfy a_k = 2*x1*a_(k-1) - a_(k-2) on both coordinates.
pub fn solutions(d: &BigUint) -> Result<PellStream> {
    let f = fundamental_solution(d)?;
    Ok(PellStream {
        d: d.clone(),
        x1: f.x.clone(),
        y1: f.y.clone(),
        next: (f.x, f.y),
        index: 0,
    })
}

/// Infinite ascending stream over the solutions of x^2 - D y^2 = 1.
#[derive(Debug, Clone)]
pub struct PellStream {
    d: BigUint,
    x1: BigUint,
    y1: BigUint,
    next: (BigUint, BigUint),
    index: u64,
}

impl Iterator for PellStream {
    type Item = PellSolution;

    fn next(&mut self) -> Option<PellSolution> {
        self.index += 1;
        let (x, y) = self.next.clone();
        self.next = (
            &x * &self.x1 + &self.d * &y * &self.y1,
            &x * &self.y1 + &y * &self.x1,
        );
        Some(PellSolution {
            x,
            y,
            index: self.index,
        })
    }
}

/// A generalized Pell equation x^2 - D y^2 = N with its fundamental unit and
/// one minimal positive representative per solution class.
#[derive(Debug, Clone)]
pub struct PellEquation {
    d: BigUint,
    n: BigInt,
    fundamental: (BigUint, BigUint),
    base: Vec<(BigUint, BigUint)>,
}

impl PellEquation {
    /// Builds the equation with the default class-search ceiling.
    pub fn new(d: &BigUint, n: &BigInt) -> Result<Self> {
        Self::with_ceiling(d, n, 1_000_000)
    }

    /// Builds the equation, refusing class searches that would scan more than
    /// `ceiling` candidate y values.
    pub fn with_ceiling(d: &BigUint, n: &BigInt, ceiling: u64) -> Result<Self> {
        if n.is_zero() {
            return Err(Error::InvalidArgument("N must be nonzero".into()));
        }
        let unit = fundamental_solution(d)?;
        let (x1, y1) = (BigInt::from(unit.x), BigInt::from(unit.y));
        let d_int = BigInt::from(d.clone());
        let n_abs = n.magnitude();

        // Every class has a representative with |y| in the classical interval;
        // scan a superset of it. For N > 0 that is
        //   y <= y1 * sqrt(N (x1+1) / (2D))  union  y <= y1 * sqrt(N / (2(x1+1)))
        // and for N < 0
        //   y <= y1 * sqrt(|N| (x1-1) / (2D))  union  y <= y1 * sqrt(|N| / (2(x1-1))).
        // Over-scanning is harmless: extras fall into already-found classes.
        let y1_sq = (&y1 * &y1).to_biguint().unwrap();
        let shift = if n.is_positive() {
            (&x1 + 1u32).to_biguint().unwrap()
        } else {
            (&x1 - 1u32).to_biguint().unwrap()
        };
        let t_wide = &y1_sq * n_abs * &shift / (BigUint::from(2u32) * d);
        let t_tight = &y1_sq * n_abs / (BigUint::from(2u32) * &shift);
        let y_max = isqrt(&t_wide.max(t_tight)) + 1u32;
        if y_max > BigUint::from(ceiling) {
            return Err(Error::SearchBoundExceeded {
                bound: y_max,
                ceiling,
            });
        }

        let mut reps: Vec<(BigInt, BigInt)> = Vec::new();
        let mut y = BigInt::zero();
        while y.magnitude() <= &y_max {
            let rhs = n + &d_int * &y * &y;
            if !rhs.is_negative() {
                if let Some(x) = is_perfect_square(rhs.magnitude()) {
                    let x = BigInt::from(x);
                    let mut candidates = vec![(x.clone(), y.clone())];
                    if !x.is_zero() {
                        candidates.push((-&x, y.clone()));
                    }
                    for cand in candidates {
                        if !reps.iter().any(|r| same_class(r, &cand, &d_int, n)) {
                            reps.push(cand);
                        }
                    }
                }
            }
            y += 1;
        }

        let mut base: Vec<(BigUint, BigUint)> = reps
            .into_iter()
            .map(|r| min_positive_member(r, &d_int, &x1, &y1))
            .collect();
        base.sort();
        base.dedup();
        Ok(PellEquation {
            d: d.clone(),
            n: n.clone(),
            fundamental: (
                x1.to_biguint().unwrap(),
                y1.to_biguint().unwrap(),
            ),
            base,
        })
    }

    pub fn d(&self) -> &BigUint {
        &self.d
    }

    pub fn n(&self) -> &BigInt {
        &self.n
    }

    /// Minimal positive solution of x^2 - D y^2 = 1.
    pub fn fundamental_unit(&self) -> (&BigUint, &BigUint) {
        (&self.fundamental.0, &self.fundamental.1)
    }

    /// Minimal positive representative of each solution class, ascending.
    /// Empty when the equation has no solutions.
    pub fn base_solutions(&self) -> Vec<PellSolution> {
        self.base
            .iter()
            .map(|(x, y)| PellSolution {
                x: x.clone(),
                y: y.clone(),
                index: 1,
            })
            .collect()
    }

    /// All positive solutions merged ascending across classes (by x, ties by
    /// y). Each solution carries its index within its own class.
    pub fn solutions(&self) -> GeneralStream {
        let mut heap = BinaryHeap::new();
        for (class, (x, y)) in self.base.iter().enumerate() {
            heap.push(Reverse(StreamEntry {
                x: x.clone(),
                y: y.clone(),
                class,
                index: 1,
            }));
        }
        GeneralStream {
            d: self.d.clone(),
            x1: self.fundamental.0.clone(),
            y1: self.fundamental.1.clone(),
            heap,
        }
    }
}

/// Nagell's class-equivalence test: (x, y) ~ (x', y') iff N divides both
/// x x' - D y y' and x y' - x' y.
fn same_class(a: &(BigInt, BigInt), b: &(BigInt, BigInt), d: &BigInt, n: &BigInt) -> bool {
    let p = &a.0 * &b.0 - d * &a.1 * &b.1;
    let q = &a.0 * &b.1 - &b.0 * &a.1;
    (p % n).is_zero() && (q % n).is_zero()
}

/// The unique member of the class of (x, y) with both coordinates positive
/// and minimal. Multiplication by the fundamental unit walks the class chain
/// up; by its inverse, down.
fn min_positive_member(
    (mut x, mut y): (BigInt, BigInt),
    d: &BigInt,
    x1: &BigInt,
    y1: &BigInt,
) -> (BigUint, BigUint) {
    // Work with the chain member of positive value x + y*sqrt(D); (x, y) and
    // (-x, -y) are in the same class.
    let negative_value = if !x.is_negative() && !y.is_negative() {
        false
    } else if !x.is_positive() && !y.is_positive() {
        true
    } else {
        // Mixed signs: the sign of x + y*sqrt(D) follows from x^2 vs D y^2.
        let bigger_radical = &x * &x < d * &y * &y;
        if y.is_positive() {
            !bigger_radical
        } else {
            bigger_radical
        }
    };
    if negative_value {
        x = -x;
        y = -y;
    }
    // Ascend until both coordinates are positive...
    while !(x.is_positive() && y.is_positive()) {
        let xn = &x * x1 + d * &y * y1;
        let yn = &x * y1 + &y * x1;
        x = xn;
        y = yn;
    }
    // ...then descend while they stay positive.
    loop {
        let xd = &x * x1 - d * &y * y1;
        let yd = &y * x1 - &x * y1;
        if xd.is_positive() && yd.is_positive() {
            x = xd;
            y = yd;
        } else {
            break;
        }
    }
    (x.to_biguint().unwrap(), y.to_biguint().unwrap())
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct StreamEntry {
    x: BigUint,
    y: BigUint,
    class: usize,
    index: u64,
}

/// Ascending merged stream over all positive solutions of a generalized Pell
/// equation. Empty when the equation has none.
#[derive(Debug, Clone)]
pub struct GeneralStream {
    d: BigUint,
    x1: BigUint,
    y1: BigUint,
    heap: BinaryHeap<Reverse<StreamEntry>>,
}

impl Iterator for GeneralStream {
    type Item = PellSolution;

    fn next(&mut self) -> Option<PellSolution> {
        let Reverse(entry) = self.heap.pop()?;
        let successor = StreamEntry {
            x: &entry.x * &self.x1 + &self.d * &entry.y * &self.y1,
            y: &entry.x * &self.y1 + &entry.y * &self.x1,
            class: entry.class,
            index: entry.index + 1,
        };
        self.heap.push(Reverse(successor));
        Some(PellSolution {
            x: entry.x,
            y: entry.y,
            index: entry.index,
        })
    }
}

/// Minimal positive class representatives of x^2 - D y^2 = N.
pub fn base_solutions(d: &BigUint, n: &BigInt) -> Result<Vec<PellSolution>> {
    Ok(PellEquation::new(d, n)?.base_solutions())
}

/// All positive solutions of x^2 - D y^2 = N, merged ascending.
pub fn general_solutions(d: &BigUint, n: &BigInt) -> Result<GeneralStream> {
    Ok(PellEquation::new(d, n)?.solutions())
}

/// Second-order linear recurrence a_k = c*a_(k-1) - d*a_(k-2) with seeds
/// a_1 = s1, a_2 = s2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recurrence2 {
    pub c: BigInt,
    pub d: BigInt,
    pub s1: BigInt,
    pub s2: BigInt,
}

impl Recurrence2 {
    pub fn new(
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
        s1: impl Into<BigInt>,
        s2: impl Into<BigInt>,
    ) -> Self {
        Recurrence2 {
            c: c.into(),
            d: d.into(),
            s1: s1.into(),
            s2: s2.into(),
        }
    }

    /// Sufficient condition for strict monotone growth: s2 > s1 > 0 and
    /// c >= d + 1 >= 2. Then a_k = a_(k-1) + d(a_(k-1) - a_(k-2)) + (c-d-1)a_(k-1)
    /// exceeds a_(k-1) by induction.
    pub fn strictly_increasing(&self) -> bool {
        self.s2 > self.s1
            && self.s1.is_positive()
            && self.d >= BigInt::one()
            && self.c > self.d
    }

    /// The k-th term (k >= 1), computed by exact iteration.
    pub fn term(&self, k: u64) -> BigInt {
        assert!(k >= 1, "terms are 1-indexed");
        self.iter().nth(k as usize - 1).unwrap()
    }

    /// Infinite iterator over a_1, a_2, a_3, ...
    pub fn iter(&self) -> RecurrenceIter {
        RecurrenceIter {
            c: self.c.clone(),
            d: self.d.clone(),
            window: (self.s1.clone(), self.s2.clone()),
        }
    }

    /// The index k with a_k = v, if any. Requires the strictly-increasing
    /// certificate, which guarantees termination once terms pass v.
    pub fn contains(&self, v: &BigInt) -> Result<Option<u64>> {
        if !self.strictly_increasing() {
            return Err(Error::NotMonotonic);
        }
        for (i, a) in self.iter().enumerate() {
            if a == *v {
                return Ok(Some(i as u64 + 1));
            }
            if a > *v {
                return Ok(None);
            }
        }
        unreachable!("strictly increasing sequences are unbounded")
    }
}

/// Iterator state for [`Recurrence2::iter`].
#[derive(Debug, Clone)]
pub struct RecurrenceIter {
    c: BigInt,
    d: BigInt,
    window: (BigInt, BigInt),
}

impl Iterator for RecurrenceIter {
    type Item = BigInt;

    fn next(&mut self) -> Option<BigInt> {
        let next = &self.c * &self.window.1 - &self.d * &self.window.0;
        let out = std::mem::replace(&mut self.window.0, std::mem::replace(&mut self.window.1, next));
        Some(out)
    }
}
