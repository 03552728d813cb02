"""Numerical kernels: Gauss-Chebyshev quadrature, regularized incomplete
gamma and beta functions, and integer composition utilities.

Everything here is self-contained on purpose: the runtime depends only on
numpy, and the test suite cross-checks these kernels against scipy.
"""

import math
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Iterator

import numpy as np


class ConvergenceError(RuntimeError):
    """An iterative kernel exhausted its iteration budget."""


@dataclass(frozen=True)
class ChebyshevRule:
    """Gauss-Chebyshev rule of the first kind on [-1, 1].

    Nodes are ``cos((2k - 1) pi / (2 order))`` for k = 1..order.  The
    weights already include the ``sqrt(1 - t^2)`` factor that converts the
    Chebyshev weight into a plain integral, so
    ``integrate(f, a, b) = (b - a)/2 * sum(weights * f(mapped_nodes))``
    approximates ``int_a^b f``.  The rule integrates
    ``sqrt(1 - t^2) * p(t)`` exactly for polynomials ``p`` up to degree
    ``2 order - 1``; for generic smooth integrands the error decays like
    ``order^-2``.
    """

    order: int
    nodes: np.ndarray
    weights: np.ndarray

    def mapped_nodes(self, a: float, b: float) -> np.ndarray:
        """Affine image of the nodes on [a, b]."""
        return 0.5 * (b - a) * self.nodes + 0.5 * (b + a)

    def integrate(self, f, a: float, b: float) -> float:
        """Approximate ``int_a^b f(t) dt`` for a vectorized integrand."""
        values = f(self.mapped_nodes(a, b))
        return 0.5 * (b - a) * float(np.dot(self.weights, values))


def chebyshev_rule(order: int) -> ChebyshevRule:
    """Build the first-kind rule with ``order`` nodes."""
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order}")
    k = np.arange(1, order + 1, dtype=float)
    nodes = np.cos((2.0 * k - 1.0) * math.pi / (2.0 * order))
    weights = (math.pi / order) * np.sqrt(1.0 - nodes * nodes)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return ChebyshevRule(order=order, nodes=nodes, weights=weights)


def regularized_upper_gamma(m: int, x):
    """Q(m, x) = Gamma(m, x) / Gamma(m) for integer order ``m >= 1``.

    For integer order the regularized upper incomplete gamma function is
    the finite Erlang sum ``exp(-x) sum_{i<m} x^i / i!``, evaluated here
    with a running product so it is stable and vectorizes over ``x``.
    """
    if not isinstance(m, (int, np.integer)) or isinstance(m, bool) or m < 1:
        raise ValueError(f"m must be a positive integer, got {m!r}")
    x_arr = np.asarray(x, dtype=float)
    if np.any(x_arr < 0.0):
        raise ValueError("x must be nonnegative")
    term = np.ones_like(x_arr)
    total = np.ones_like(x_arr)
    for i in range(1, m):
        term = term * x_arr / i
        total = total + term
    out = np.exp(-x_arr) * total
    out = np.clip(out, 0.0, 1.0)
    return float(out) if np.isscalar(x) or x_arr.ndim == 0 else out


def regularized_lower_gamma(m: int, x):
    """P(m, x) = 1 - Q(m, x)."""
    return 1.0 - regularized_upper_gamma(m, x)


def _betacf(x: float, a: float, b: float, tol: float, max_iter: int) -> float:
    # Continued fraction for the incomplete beta function, modified
    # Lentz recurrence (Numerical Recipes 6.4).
    tiny = 1e-300
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < tiny:
        d = tiny
    d = 1.0 / d
    h = d
    for i in range(1, max_iter + 1):
        m2 = 2 * i
        aa = i * (b - i) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        h *= d * c
        aa = -(a + i) * (qab + i) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < tol:
            return h
    raise ConvergenceError(
        f"incomplete beta continued fraction did not converge for x={x}, a={a}, b={b}"
    )


def regularized_incomplete_beta(
    x: float, a: float, b: float, tol: float = 1e-12, max_iter: int = 300
) -> float:
    """I_x(a, b), the regularized incomplete beta function.

    Uses the continued fraction with the symmetry switch at
    ``x = (a + 1) / (a + b + 2)`` so the fraction always converges fast;
    raises ConvergenceError if the iteration budget runs out.
    """
    if not (a > 0.0 and b > 0.0):
        raise ValueError(f"shape parameters must be positive, got a={a}, b={b}")
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x must lie in [0, 1], got {x}")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    log_front = (
        math.lgamma(a + b)
        - math.lgamma(a)
        - math.lgamma(b)
        + a * math.log(x)
        + b * math.log1p(-x)
    )
    front = math.exp(log_front)
    if x < (a + 1.0) / (a + b + 2.0):
        value = front * _betacf(x, a, b, tol, max_iter) / a
    else:
        value = 1.0 - front * _betacf(1.0 - x, b, a, tol, max_iter) / b
    return min(max(value, 0.0), 1.0)


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Yield every tuple of ``parts`` nonnegative integers summing to ``total``.

    Deterministic order; there are C(total + parts - 1, parts - 1) of them.
    """
    if total < 0 or parts < 1:
        raise ValueError(f"need total >= 0 and parts >= 1, got {total}, {parts}")
    for cut in combinations_with_replacement(range(total + 1), parts - 1):
        bounds = (0,) + cut + (total,)
        yield tuple(bounds[i + 1] - bounds[i] for i in range(parts))


def multinomial(total: int, parts: tuple[int, ...]) -> int:
    """Exact multinomial coefficient ``total! / prod(parts!)``."""
    if any(p < 0 for p in parts):
        raise ValueError(f"parts must be nonnegative, got {parts}")
    if sum(parts) != total:
        raise ValueError(f"parts {parts} do not sum to {total}")
    out = math.factorial(total)
    for p in parts:
        out //= math.factorial(p)
    return out
