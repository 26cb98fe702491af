//! Python bindings for the squareful library. Python integers convert to and
//! from bignums natively, so every operation works at arbitrary precision.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use squareful::curves::{IntegralPoint, QuarticCurve, WeierstrassCurve};
use squareful::harness::{self, HarnessConfig};
use squareful::pell::{self, PellEquation, Recurrence2};
use squareful::{arith, powerful};

fn err(e: squareful::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Floor of the integer square root.
#[pyfunction]
fn isqrt(n: BigUint) -> BigUint {
    arith::isqrt(&n)
}

/// The square root of n if n is a perfect square, else None.
#[pyfunction]
fn is_perfect_square(n: BigUint) -> Option<BigUint> {
    arith::is_perfect_square(&n)
}

/// The cube root of n if n is a perfect cube, else None.
#[pyfunction]
fn is_perfect_cube(n: BigUint) -> Option<BigUint> {
    arith::is_perfect_cube(&n)
}

/// Primality test (deterministic below ~3.3e24).
#[pyfunction]
fn is_prime(n: BigUint) -> bool {
    arith::is_prime(&n)
}

/// The exponent k with p^k exactly dividing n; p must be prime.
#[pyfunction]
fn padic_valuation(p: BigUint, n: BigUint) -> PyResult<u32> {
    arith::padic_valuation(&p, &n).map_err(err)
}

/// Complete prime factorization as a list of (prime, exponent) pairs.
#[pyfunction]
fn factorize(n: BigUint) -> PyResult<Vec<(BigUint, u32)>> {
    Ok(arith::factorize(&n).map_err(err)?.factors().to_vec())
}

/// Greatest common divisor; gcd(0, 0) = 0.
#[pyfunction]
fn gcd(a: BigInt, b: BigInt) -> BigUint {
    arith::gcd(&a, &b)
}

/// True iff every prime exponent of n is at least 2.
#[pyfunction]
fn is_powerful(n: BigUint) -> PyResult<bool> {
    powerful::is_powerful(&n).map_err(err)
}

/// The unique (a, b) with n = a^2 * b^3 and b squarefree.
#[pyfunction]
fn powerful_decomposition(n: BigUint) -> PyResult<(BigUint, BigUint)> {
    let f = powerful::powerful_decomposition(&n).map_err(err)?;
    Ok((f.a, f.b))
}

/// All powerful numbers up to limit, ascending.
#[pyfunction]
fn enumerate_powerful(limit: BigUint) -> Vec<BigUint> {
    powerful::enumerate_powerful(&limit).collect()
}

/// Maximal consecutive powerful runs up to limit as (start, length) pairs.
#[pyfunction]
#[pyo3(signature = (limit, min_length = 2))]
fn consecutive_runs(limit: BigUint, min_length: u64) -> PyResult<Vec<(BigUint, u64)>> {
    if min_length < 2 {
        return Err(PyValueError::new_err("min_length must be at least 2"));
    }
    Ok(powerful::find_consecutive_runs(&limit, min_length)
        .map_err(err)?
        .into_iter()
        .map(|r| (r.start, r.length))
        .collect())
}

/// The first `count` consecutive powerful pairs (2y^2, x^2) from
/// x^2 - 2y^2 = 1.
#[pyfunction]
fn pairs_from_pell(count: usize) -> Vec<(BigUint, BigUint)> {
    powerful::pairs_from_pell(count)
}

/// The primes of odd exponent in n, ascending.
#[pyfunction]
fn odd_valuation_primes(n: BigUint) -> PyResult<Vec<BigUint>> {
    Ok(powerful::odd_valuation_primes(&n)
        .map_err(err)?
        .into_iter()
        .collect())
}

/// The prime p if n = p^3 * y^2, else None.
#[pyfunction]
fn as_prime_cube_times_square(n: BigUint) -> PyResult<Option<BigUint>> {
    powerful::as_prime_cube_times_square(&n).map_err(err)
}

/// Continued fraction of sqrt(d): (integer part, periodic partial quotients).
#[pyfunction]
fn cf_sqrt(d: BigUint) -> PyResult<(BigUint, Vec<BigUint>)> {
    let cf = pell::cf_sqrt(&d).map_err(err)?;
    Ok((cf.a0, cf.period))
}

/// Minimal positive solution of x^2 - d y^2 = 1.
#[pyfunction]
fn pell_fundamental(d: BigUint) -> PyResult<(BigUint, BigUint)> {
    let f = pell::fundamental_solution(&d).map_err(err)?;
    Ok((f.x, f.y))
}

/// The first `count` solutions of x^2 - d y^2 = 1, ascending.
#[pyfunction]
fn pell_solutions(d: BigUint, count: usize) -> PyResult<Vec<(BigUint, BigUint)>> {
    Ok(pell::solutions(&d)
        .map_err(err)?
        .take(count)
        .map(|s| (s.x, s.y))
        .collect())
}

/// Minimal positive class representatives of x^2 - d y^2 = n.
#[pyfunction]
fn pell_base_solutions(d: BigUint, n: BigInt) -> PyResult<Vec<(BigUint, BigUint)>> {
    Ok(PellEquation::new(&d, &n)
        .map_err(err)?
        .base_solutions()
        .into_iter()
        .map(|s| (s.x, s.y))
        .collect())
}

/// The first `count` positive solutions of x^2 - d y^2 = n, merged ascending
/// across classes, as (x, y, index-within-class) triples.
#[pyfunction]
fn pell_general_solutions(
    d: BigUint,
    n: BigInt,
    count: usize,
) -> PyResult<Vec<(BigUint, BigUint, u64)>> {
    Ok(pell::general_solutions(&d, &n)
        .map_err(err)?
        .take(count)
        .map(|s| (s.x, s.y, s.index))
        .collect())
}

/// The first `count` terms of a_k = c a_(k-1) - d a_(k-2), seeds s1, s2.
#[pyfunction]
fn recurrence_terms(c: BigInt, d: BigInt, s1: BigInt, s2: BigInt, count: usize) -> Vec<BigInt> {
    Recurrence2::new(c, d, s1, s2).iter().take(count).collect()
}

/// The 1-based index of v in the recurrence, or None. The recurrence must be
/// certified strictly increasing (s2 > s1 > 0, c >= d + 1 >= 2).
#[pyfunction]
fn recurrence_contains(
    c: BigInt,
    d: BigInt,
    s1: BigInt,
    s2: BigInt,
    v: BigInt,
) -> PyResult<Option<u64>> {
    Recurrence2::new(c, d, s1, s2).contains(&v).map_err(err)
}

/// Coefficients (A, B, C) of the Weierstrass model Y^2 = X^3 + A X^2 + B X + C
/// attached to the quartic y^2 = a x^4 + c x^2 + e.
#[pyfunction]
fn quartic_to_weierstrass(a: BigInt, c: BigInt, e: BigInt) -> PyResult<(BigInt, BigInt, BigInt)> {
    if a == BigInt::from(0) {
        return Err(PyValueError::new_err("a must be nonzero"));
    }
    let w = squareful::curves::quartic_to_weierstrass(&QuarticCurve::new(a, c, e));
    Ok((w.a2, w.a4, w.a6))
}

/// Pushes the quartic point (x, y), x != 0, to (a x^2, a x y) on the
/// transformed curve.
#[pyfunction]
fn quartic_push_point(
    a: BigInt,
    c: BigInt,
    e: BigInt,
    x: BigInt,
    y: BigInt,
) -> PyResult<(BigInt, BigInt)> {
    if a == BigInt::from(0) {
        return Err(PyValueError::new_err("a must be nonzero"));
    }
    let p = squareful::curves::push_point(&QuarticCurve::new(a, c, e), &x, &y).map_err(err)?;
    Ok((p.x, p.y))
}

/// Recovers the positive quartic x from a transformed point, if it exists.
#[pyfunction]
fn quartic_pull_x(a: BigInt, c: BigInt, e: BigInt, px: BigInt, py: BigInt) -> PyResult<Option<BigUint>> {
    if a == BigInt::from(0) {
        return Err(PyValueError::new_err("a must be nonzero"));
    }
    Ok(squareful::curves::pull_x(
        &QuarticCurve::new(a, c, e),
        &IntegralPoint { x: px, y: py },
    ))
}

/// All integral points with |X| <= bound on Y^2 = X^3 + A X^2 + B X + C.
#[pyfunction]
fn integral_points(a2: BigInt, a4: BigInt, a6: BigInt, bound: BigUint) -> Vec<(BigInt, BigInt)> {
    squareful::curves::integral_points_bounded(&WeierstrassCurve::new(a2, a4, a6), &bound)
        .into_iter()
        .map(|p| (p.x, p.y))
        .collect()
}

/// The registry of curves with known-complete integral point lists:
/// ((A, B, C), points, provenance) triples.
#[pyfunction]
#[allow(clippy::type_complexity)]
fn known_curves() -> Vec<((BigInt, BigInt, BigInt), Vec<(BigInt, BigInt)>, String)> {
    squareful::curves::known_curves()
        .into_iter()
        .map(|k| {
            (
                (k.curve.a2, k.curve.a4, k.curve.a6),
                k.points.into_iter().map(|p| (p.x, p.y)).collect(),
                k.provenance.to_string(),
            )
        })
        .collect()
}

/// Result of a verification suite.
#[pyclass(name = "VerificationReport")]
struct PyReport {
    inner: harness::VerificationReport,
}

#[pymethods]
impl PyReport {
    #[getter]
    fn suite(&self) -> String {
        self.inner.suite.clone()
    }

    #[getter]
    fn range(&self) -> (BigUint, BigUint) {
        (self.inner.lo.clone(), self.inner.hi.clone())
    }

    #[getter]
    fn examined(&self) -> u64 {
        self.inner.examined
    }

    #[getter]
    fn counterexamples(&self) -> Vec<String> {
        self.inner.counterexamples.clone()
    }

    #[getter]
    fn incomplete(&self) -> Vec<BigUint> {
        self.inner.incomplete.clone()
    }

    #[getter]
    fn tallies(&self) -> BTreeMap<String, u64> {
        self.inner.tallies.clone()
    }

    #[getter]
    fn observations(&self) -> Vec<(String, BigUint)> {
        self.inner.observations.clone()
    }

    #[getter]
    fn notes(&self) -> Vec<String> {
        self.inner.notes.clone()
    }

    #[getter]
    fn verified(&self) -> bool {
        self.inner.verified()
    }

    #[getter]
    fn elapsed_ms(&self) -> u64 {
        self.inner.elapsed.as_millis() as u64
    }

    fn __repr__(&self) -> String {
        format!(
            "VerificationReport(suite='{}', examined={}, counterexamples={}, verified={})",
            self.inner.suite,
            self.inner.examined,
            self.inner.counterexamples.len(),
            self.inner.verified()
        )
    }
}

fn wrap(r: harness::VerificationReport) -> PyReport {
    PyReport { inner: r }
}

/// Search [2, max] for x with both x^3 - 1 = p^3 y^2 and x^3 + 1 = q^3 z^2.
#[pyfunction]
fn verify_theorem(max: u64) -> PyResult<PyReport> {
    if max < 2 {
        return Err(PyValueError::new_err("max must be at least 2"));
    }
    Ok(wrap(harness::verify_theorem(max, &HarnessConfig::default())))
}

/// Search [1, max] for x with 64 x^6 - 1 = p^3 q^3 y^2.
#[pyfunction]
fn verify_corollary(max: u64) -> PyResult<PyReport> {
    if max < 1 {
        return Err(PyValueError::new_err("max must be at least 1"));
    }
    Ok(wrap(harness::verify_corollary(max, &HarnessConfig::default())))
}

/// Square-gap and exact-3-valuation checks over [1, max].
#[pyfunction]
fn check_lemmas(max: u64) -> PyResult<PyReport> {
    if max < 3 {
        return Err(PyValueError::new_err("max must be at least 3"));
    }
    Ok(wrap(harness::check_lemma_suite(max)))
}

/// The gcd identity checks over [1, max].
#[pyfunction]
fn check_gcds(max: u64) -> PyResult<PyReport> {
    if max < 2 {
        return Err(PyValueError::new_err("max must be at least 2"));
    }
    Ok(wrap(harness::check_gcd_identities(max)))
}

/// Recurrence identity and collision checks up to index kmax.
#[pyfunction]
fn check_collision(kmax: u64) -> PyResult<PyReport> {
    if kmax < 2 {
        return Err(PyValueError::new_err("kmax must be at least 2"));
    }
    Ok(wrap(harness::check_sequence_collision(kmax)))
}

/// Scan powerful numbers up to limit for runs of length >= 3.
#[pyfunction]
fn scan_triples(limit: BigUint) -> PyReport {
    wrap(harness::find_triples_scan(&limit))
}

/// Check the curve registry against the bounded searcher.
#[pyfunction]
fn check_curves(bound: BigUint) -> PyReport {
    wrap(harness::check_curve_registry(&bound))
}

/// Case-analysis trace for one candidate: returns (residue, predicates,
/// verdict, detail) where predicates are (name, instance, holds) triples.
#[pyfunction]
fn trace_case(x: BigUint) -> PyResult<(u8, Vec<(String, String, bool)>, String, String)> {
    if x < BigUint::from(2u32) {
        return Err(PyValueError::new_err("x must be at least 2"));
    }
    let t = harness::trace_case(&x, &HarnessConfig::default()).map_err(err)?;
    let verdict = match &t.verdict {
        harness::Verdict::HypothesisFails => "hypothesis fails".to_string(),
        harness::Verdict::ContradictionReached(id) => format!("contradiction: {id}"),
    };
    Ok((
        t.residue,
        t.predicates
            .into_iter()
            .map(|p| (p.name.to_string(), p.instance, p.holds))
            .collect(),
        verdict,
        t.detail,
    ))
}

#[pymodule]
fn squareful_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyReport>()?;
    m.add_function(wrap_pyfunction!(isqrt, m)?)?;
    m.add_function(wrap_pyfunction!(is_perfect_square, m)?)?;
    m.add_function(wrap_pyfunction!(is_perfect_cube, m)?)?;
    m.add_function(wrap_pyfunction!(is_prime, m)?)?;
    m.add_function(wrap_pyfunction!(padic_valuation, m)?)?;
    m.add_function(wrap_pyfunction!(factorize, m)?)?;
    m.add_function(wrap_pyfunction!(gcd, m)?)?;
    m.add_function(wrap_pyfunction!(is_powerful, m)?)?;
    m.add_function(wrap_pyfunction!(powerful_decomposition, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_powerful, m)?)?;
    m.add_function(wrap_pyfunction!(consecutive_runs, m)?)?;
    m.add_function(wrap_pyfunction!(pairs_from_pell, m)?)?;
    m.add_function(wrap_pyfunction!(odd_valuation_primes, m)?)?;
    m.add_function(wrap_pyfunction!(as_prime_cube_times_square, m)?)?;
    m.add_function(wrap_pyfunction!(cf_sqrt, m)?)?;
    m.add_function(wrap_pyfunction!(pell_fundamental, m)?)?;
    m.add_function(wrap_pyfunction!(pell_solutions, m)?)?;
    m.add_function(wrap_pyfunction!(pell_base_solutions, m)?)?;
    m.add_function(wrap_pyfunction!(pell_general_solutions, m)?)?;
    m.add_function(wrap_pyfunction!(recurrence_terms, m)?)?;
    m.add_function(wrap_pyfunction!(recurrence_contains, m)?)?;
    m.add_function(wrap_pyfunction!(quartic_to_weierstrass, m)?)?;
    m.add_function(wrap_pyfunction!(quartic_push_point, m)?)?;
    m.add_function(wrap_pyfunction!(quartic_pull_x, m)?)?;
    m.add_function(wrap_pyfunction!(integral_points, m)?)?;
    m.add_function(wrap_pyfunction!(known_curves, m)?)?;
    m.add_function(wrap_pyfunction!(verify_theorem, m)?)?;
    m.add_function(wrap_pyfunction!(verify_corollary, m)?)?;
    m.add_function(wrap_pyfunction!(check_lemmas, m)?)?;
    m.add_function(wrap_pyfunction!(check_gcds, m)?)?;
    m.add_function(wrap_pyfunction!(check_collision, m)?)?;
    m.add_function(wrap_pyfunction!(scan_triples, m)?)?;
    m.add_function(wrap_pyfunction!(check_curves, m)?)?;
    m.add_function(wrap_pyfunction!(trace_case, m)?)?;
    Ok(())
}
