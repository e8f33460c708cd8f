"""Special functions, quadrature, Laplace inversion and scalar search.

Everything here is a pure function of its arguments. The array-valued
routines broadcast over numpy inputs so that callers can evaluate a whole
grid of points in one call.
"""

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ArgumentError, DomainError, NumericError

logger = logging.getLogger(__name__)

# Lanczos approximation, g = 7, nine coefficients.
_LANCZOS_G = 7
_LANCZOS_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

SERIES_TOL = 1e-15
SERIES_MAX_TERMS = 200
# Largest real argument the power series is used for.
SERIES_REAL_LIMIT = 50.0
# Complex arguments beyond this modulus go to the continued fraction.
SERIES_COMPLEX_LIMIT = 4.0

_CF_TINY = 1e-300
_CF_EPS = 1e-15
_CF_MAX_ITER = 2000

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0  # ~0.618

_erfc = np.frompyfunc(math.erfc, 1, 1)


@dataclass(frozen=True)
class InversionConfig:
    """Parameters of the trapezoidal/Euler Laplace inversion.

    The discretization error is about ``exp(-error_exponent)``; the
    contour abscissa is ``error_exponent / (2y)``.
    """

    error_exponent: float = 18.4
    partial_sums: int = 38
    euler_terms: int = 11

    def __post_init__(self):
        if not self.error_exponent > 0:
            raise ArgumentError(f"error_exponent must be positive, got {self.error_exponent}")
        if self.euler_terms < 1 or self.partial_sums < self.euler_terms:
            raise ArgumentError(
                f"need partial_sums >= euler_terms >= 1, got "
                f"{self.partial_sums} and {self.euler_terms}"
            )


@dataclass(frozen=True)
class QuadratureConfig:
    """Gauss-Legendre settings for integrals over (0, 1).

    With ``verify`` set, every integral is also computed with twice the
    nodes and a warning is logged when the two disagree by more than
    ``rel_tol``.
    """

    node_count: int = 64
    rel_tol: float = 1e-6
    verify: bool = False

    def __post_init__(self):
        if self.node_count < 2:
            raise ArgumentError(f"node_count must be >= 2, got {self.node_count}")
        if not 0 < self.rel_tol < 1:
            raise ArgumentError(f"rel_tol must be in (0, 1), got {self.rel_tol}")


def _is_pole(x: float) -> bool:
    return x <= 0 and x == math.floor(x)


def gamma_fn(x: float) -> float:
    """Complete Gamma function (Lanczos, reflection below 1/2)."""
    x = float(x)
    if _is_pole(x):
        raise DomainError(f"Gamma function has a pole at {x}")
    if x < 0.5:
        return math.pi / (math.sin(math.pi * x) * gamma_fn(1.0 - x))
    x -= 1.0
    acc = _LANCZOS_COEFFS[0]
    for i, coeff in enumerate(_LANCZOS_COEFFS[1:], start=1):
        acc += coeff / (x + i)
    t = x + _LANCZOS_G + 0.5
    return math.sqrt(2.0 * math.pi) * t ** (x + 0.5) * math.exp(-t) * acc


def _upper_gamma_cf(a: float, z: np.ndarray) -> np.ndarray:
    """Continued-fraction factor h with Gamma(a, z) = exp(-z) z**a h.

    Modified Lentz evaluation; valid off the negative real axis and fast
    for |z| of a few units and more.
    """
    b = z + 1.0 - a
    c = np.full_like(z, 1.0 / _CF_TINY)
    d = 1.0 / b
    h = d.copy()
    for i in range(1, _CF_MAX_ITER + 1):
        an = -i * (i - a)
        b = b + 2.0
        d = an * d + b
        d = np.where(np.abs(d) < _CF_TINY, _CF_TINY, d)
        c = b + an / c
        c = np.where(np.abs(c) < _CF_TINY, _CF_TINY, c)
        d = 1.0 / d
        delta = d * c
        h = h * delta
        if np.all(np.abs(delta - 1.0) < _CF_EPS):
            return h
    bad = z.flat[int(np.argmax(np.abs(delta - 1.0)))]
    raise NumericError("incomplete gamma continued fraction did not converge", where=bad)


def _gamma_star_series(alpha: float, z: np.ndarray) -> np.ndarray:
    term = np.full_like(z, 1.0 / gamma_fn(alpha + 1.0))
    total = term.copy()
    for k in range(1, SERIES_MAX_TERMS):
        term = term * z / (alpha + k)
        total = total + term
        if np.all(np.abs(term) <= SERIES_TOL * np.abs(total)):
            break
    return np.exp(-z) * total


def gamma_star(alpha: float, z):
    """Modified lower incomplete gamma z**-alpha gamma(alpha, z) / Gamma(alpha).

    Evaluated by the entire series exp(-z) sum z**k / Gamma(alpha+k+1)
    for real z <= 50 and complex |z| <= 4; elsewhere through the upper
    incomplete gamma continued fraction. Accepts scalars or arrays,
    real or complex.
    """
    if _is_pole(alpha) and alpha != 0:
        raise DomainError(f"gamma_star is undefined for negative integer alpha={alpha}")
    scalar = np.ndim(z) == 0
    z = np.asarray(z)
    z = z.astype(complex if np.iscomplexobj(z) else float)
    if not np.iscomplexobj(z) and np.any(z < 0):
        raise DomainError("gamma_star needs z >= 0 for real arguments")

    out = np.empty_like(z)
    modulus = np.abs(z)
    series = (modulus <= SERIES_COMPLEX_LIMIT) | (
        (np.imag(z) == 0) & (np.real(z) <= SERIES_REAL_LIMIT)
    )
    if np.any(series):
        out[series] = _gamma_star_series(alpha, z[series])
    if np.any(~series):
        far = z[~series]
        if alpha == 0:
            out[~series] = 1.0
        else:
            h = _upper_gamma_cf(alpha, far)
            out[~series] = far ** (-alpha) - np.exp(-far) * h / gamma_fn(alpha)
    if scalar:
        return out.item()
    return out


def std_normal_cdf(x):
    """Standard Gaussian CDF via the complementary error function."""
    if np.ndim(x) == 0:
        return 0.5 * math.erfc(-float(x) / math.sqrt(2.0))
    x = np.asarray(x, dtype=float)
    return 0.5 * _erfc(-x / math.sqrt(2.0)).astype(float)


@lru_cache(maxsize=16)
def _euler_weights(m: int) -> np.ndarray:
    return np.array([math.comb(m, j) for j in range(m + 1)], dtype=float) / 2.0**m


def invert_laplace_ccdf(transform: Callable, y, cfg: InversionConfig | None = None):
    """Recover a complementary CDF at ``y`` from its Laplace transform.

    Trapezoidal rule on the cosine form of the Bromwich integral, step
    pi/(2y) and abscissa A/(2y), with Euler summation over the last
    ``euler_terms`` of ``partial_sums`` partial sums.

    ``transform`` receives an array of complex abscissae of shape
    ``y.shape + (terms,)`` and must broadcast over it. The result has the
    shape of ``y`` and is clamped to [0, 1].
    """
    cfg = cfg or InversionConfig()
    scalar = np.ndim(y) == 0
    y = np.asarray(y, dtype=float)
    if np.any(y <= 0):
        raise ArgumentError("invert_laplace_ccdf needs y > 0")

    n, m, a = cfg.partial_sums, cfg.euler_terms, cfg.error_exponent
    k = np.arange(n + m + 1)
    z = (a + 2j * math.pi * k) / (2.0 * y[..., None])
    values = np.asarray(transform(z))
    finite = np.isfinite(values)
    if not np.all(finite):
        bad = np.broadcast_to(z, values.shape)[~finite].flat[0]
        raise NumericError("Laplace transform returned a non-finite value", where=complex(bad))

    signs = np.where(k % 2 == 0, 1.0, -1.0)
    signs[0] = 0.5
    partial = np.cumsum(signs * values.real, axis=-1)
    partial = partial * (math.exp(a / 2.0) / y[..., None])
    result = partial[..., n:] @ _euler_weights(m)
    result = np.clip(result, 0.0, 1.0)
    if scalar:
        return float(result)
    return result


@lru_cache(maxsize=16)
def _unit_gauss_legendre(node_count: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(node_count)
    return (x + 1.0) / 2.0, w / 2.0


def _gauss_legendre(f: Callable, node_count: int):
    nodes, weights = _unit_gauss_legendre(node_count)
    values = np.asarray(f(nodes))
    finite = np.isfinite(values)
    if not np.all(finite):
        idx = np.argwhere(~finite)[0]
        raise NumericError("integrand is not finite", where=float(nodes[idx[-1]]))
    return values @ weights


def integrate_unit_interval(f: Callable, cfg: QuadratureConfig | None = None):
    """Fixed-order Gauss-Legendre integral of ``f`` over (0, 1).

    ``f`` is called once with the full node array and must return values
    whose last axis runs over the nodes; leading axes are integrated
    independently (so one call can integrate a family of integrands).
    """
    cfg = cfg or QuadratureConfig()
    result = _gauss_legendre(f, cfg.node_count)
    if cfg.verify:
        fine = _gauss_legendre(f, 2 * cfg.node_count)
        delta = np.max(np.abs(fine - result) / np.maximum(np.abs(fine), 1.0))
        logger.debug("quadrature self-check: %d vs %d nodes, delta %.3g",
                     cfg.node_count, 2 * cfg.node_count, delta)
        if delta > cfg.rel_tol:
            logger.warning("quadrature with %d nodes off by %.3g (rel_tol %.3g)",
                           cfg.node_count, delta, cfg.rel_tol)
        result = fine
    if np.ndim(result) == 0:
        return float(result)
    return result


def maximize_scalar(
    f: Callable[[float], float], lo: float, hi: float, tol: float = 1e-8
) -> tuple[float, float]:
    """Golden-section search for the maximum of a unimodal ``f`` on [lo, hi].

    Returns ``(argmax, max)``.
    """
    if not lo < hi:
        raise ArgumentError(f"need lo < hi, got [{lo}, {hi}]")
    if not tol > 0:
        raise ArgumentError(f"tol must be positive, got {tol}")

    x1 = hi - GOLDEN * (hi - lo)
    x2 = lo + GOLDEN * (hi - lo)
    f1, f2 = f(x1), f(x2)
    while hi - lo > tol:
        if f1 > f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - GOLDEN * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + GOLDEN * (hi - lo)
            f2 = f(x2)
    best = (lo + hi) / 2.0
    return best, f(best)
