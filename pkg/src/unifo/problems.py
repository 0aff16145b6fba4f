"""Problem abstraction: smooth oracle, simple convex term, feasible set.

A composite problem is ``minimize f(x) + X(x) over x in S`` where ``f`` is
smooth (possibly nonconvex) and supplies value and gradient in one call,
``X`` is a simple convex term (zero or a weighted l1 norm), and ``S`` is a
simple closed convex set (whole space, Euclidean ball, or box).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

__all__ = [
    "SmoothOracle",
    "CountingOracle",
    "CompositeTerm",
    "FeasibleSet",
    "CompositeProblem",
    "gamma_sequence",
    "finite_diff_gradient",
]


@dataclass(frozen=True)
class SmoothOracle:
    """Smooth term of the objective: one call returns (value, gradient).

    Parameters
    ----------
    dim : int
        Dimension of the domain.
    fn : callable
        ``fn(x) -> (float, ndarray)`` returning the value and the gradient
        at ``x``. Must be pure and deterministic.
    lipschitz_estimate : float, optional
        An upper estimate of the gradient's Lipschitz constant, if known.
    holder_exponent : float, optional
        Exponent ``nu in [0, 1]`` of gradient Hoelder continuity, if known.
    holder_constant : float, optional
        The matching Hoelder constant, if known.
    """

    dim: int
    fn: Callable[[np.ndarray], tuple[float, np.ndarray]]
    lipschitz_estimate: Optional[float] = None
    holder_exponent: Optional[float] = None
    holder_constant: Optional[float] = None

    def __post_init__(self):
        if self.dim <= 0:
            raise ValueError(f"oracle dimension must be positive, got {self.dim}")
        if self.lipschitz_estimate is not None and self.lipschitz_estimate <= 0:
            raise ValueError("lipschitz_estimate must be positive")
        if self.holder_exponent is not None and not 0.0 <= self.holder_exponent <= 1.0:
            raise ValueError("holder_exponent must lie in [0, 1]")

    def eval(self, x: np.ndarray) -> tuple[float, np.ndarray]:
        """Return ``(f(x), f'(x))``."""
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dim,):
            raise ValueError(f"expected point of shape ({self.dim},), got {x.shape}")
        value, grad = self.fn(x)
        grad = np.asarray(grad, dtype=float)
        if grad.shape != (self.dim,):
            raise ValueError(
                f"oracle returned gradient of shape {grad.shape}, expected ({self.dim},)"
            )
        return float(value), grad


class CountingOracle:
    """Per-run mutable wrapper counting oracle evaluations.

    The wrapped :class:`SmoothOracle` stays immutable and shareable; each
    solver run owns one counter.
    """

    def __init__(self, oracle: SmoothOracle):
        self.inner = oracle
        self.calls = 0

    @property
    def dim(self) -> int:
        return self.inner.dim

    def eval(self, x: np.ndarray) -> tuple[float, np.ndarray]:
        self.calls += 1
        return self.inner.eval(x)


@dataclass(frozen=True)
class CompositeTerm:
    """Simple convex term X: either identically zero or ``w * ||x||_1``."""

    kind: str  # "zero" | "l1"
    weight: float = 0.0

    def __post_init__(self):
        if self.kind not in ("zero", "l1"):
            raise ValueError(f"unsupported composite term {self.kind!r}")
        if self.kind == "l1" and self.weight < 0:
            raise ValueError("l1 weight must be nonnegative")

    @staticmethod
    def zero() -> "CompositeTerm":
        return CompositeTerm("zero")

    @staticmethod
    def l1(weight: float) -> "CompositeTerm":
        return CompositeTerm("l1", float(weight))

    @property
    def is_zero(self) -> bool:
        return self.kind == "zero"

    def value(self, x: np.ndarray) -> float:
        if self.kind == "zero":
            return 0.0
        return self.weight * float(np.abs(x).sum())

    def subgradient(self, x: np.ndarray) -> np.ndarray:
        """A subgradient at ``x`` (sign vector scaled by the weight; 0 at 0)."""
        if self.kind == "zero":
            return np.zeros_like(x)
        return self.weight * np.sign(x)


@dataclass(frozen=True)
class FeasibleSet:
    """Closed convex feasible set: whole space, Euclidean ball, or box."""

    kind: str  # "whole_space" | "ball" | "box"
    center: Optional[np.ndarray] = None
    radius: float = 0.0
    lower: Optional[np.ndarray] = None
    upper: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.kind == "whole_space":
            return
        if self.kind == "ball":
            if self.center is None or self.radius <= 0:
                raise ValueError("ball needs a center and a strictly positive radius")
            object.__setattr__(self, "center", np.asarray(self.center, dtype=float))
        elif self.kind == "box":
            if self.lower is None or self.upper is None:
                raise ValueError("box needs lower and upper bounds")
            lo = np.asarray(self.lower, dtype=float)
            hi = np.asarray(self.upper, dtype=float)
            if lo.shape != hi.shape or np.any(lo > hi):
                raise ValueError("box requires lower <= upper componentwise")
            object.__setattr__(self, "lower", lo)
            object.__setattr__(self, "upper", hi)
        else:
            raise ValueError(f"unsupported feasible set {self.kind!r}")

    @staticmethod
    def whole_space() -> "FeasibleSet":
        return FeasibleSet("whole_space")

    @staticmethod
    def ball(center: np.ndarray, radius: float) -> "FeasibleSet":
        return FeasibleSet("ball", center=np.asarray(center, dtype=float), radius=float(radius))

    @staticmethod
    def box(lower: np.ndarray, upper: np.ndarray) -> "FeasibleSet":
        return FeasibleSet("box", lower=lower, upper=upper)

    def project(self, x: np.ndarray) -> np.ndarray:
        """Euclidean projection onto the set."""
        if self.kind == "whole_space":
            return x
        if self.kind == "ball":
            d = x - self.center
            nrm = float(np.linalg.norm(d))
            if nrm <= self.radius:
                return x
            return self.center + (self.radius / nrm) * d
        return np.clip(x, self.lower, self.upper)

    def contains(self, x: np.ndarray, tol: float = 1e-9) -> bool:
        if self.kind == "whole_space":
            return True
        if self.kind == "ball":
            return float(np.linalg.norm(x - self.center)) <= self.radius + tol
        return bool(np.all(x >= self.lower - tol) and np.all(x <= self.upper + tol))


@dataclass(frozen=True)
class CompositeProblem:
    """Composite minimization problem: oracle + convex term + feasible set."""

    oracle: SmoothOracle
    composite: CompositeTerm = field(default_factory=CompositeTerm.zero)
    set: FeasibleSet = field(default_factory=FeasibleSet.whole_space)

    def __post_init__(self):
        n = self.oracle.dim
        s = self.set
        if s.kind == "ball" and s.center.shape != (n,):
            raise ValueError("ball center dimension does not match oracle")
        if s.kind == "box" and s.lower.shape != (n,):
            raise ValueError("box bound dimension does not match oracle")

    @property
    def dim(self) -> int:
        return self.oracle.dim

    def objective(self, x: np.ndarray) -> float:
        """Full objective f(x) + X(x)."""
        value, _ = self.oracle.eval(x)
        return value + self.composite.value(x)

    def gradient(self, x: np.ndarray) -> np.ndarray:
        """Gradient of the smooth part only; the convex term is never differentiated."""
        _, grad = self.oracle.eval(x)
        return grad

    def value_and_grad(self, x: np.ndarray) -> tuple[float, np.ndarray]:
        """Smooth value and gradient from a single oracle call."""
        return self.oracle.eval(x)


def gamma_sequence(alphas, K: int | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Cumulative damping products of a momentum-weight sequence.

    Given weights ``alpha_1 = 1`` and ``alpha_k in (0, 1)`` for ``k >= 2``,
    returns ``(alphas, gammas)`` with ``gamma_1 = 1`` and
    ``gamma_k = (1 - alpha_k) * gamma_{k-1}``.

    ``alphas`` may be a sequence or a callable ``k -> alpha_k`` (1-based), in
    which case ``K`` is required.
    """
    if callable(alphas):
        if K is None:
            raise ValueError("K is required when alphas is a callable")
        alphas = [alphas(k) for k in range(1, K + 1)]
    a = np.asarray(list(alphas), dtype=float)
    if K is not None:
        a = a[:K]
    if a.size == 0:
        raise ValueError("need at least one weight")
    if a[0] != 1.0:
        raise ValueError("alpha_1 must equal 1")
    if a.size > 1 and (np.any(a[1:] <= 0.0) or np.any(a[1:] >= 1.0)):
        raise ValueError("alpha_k must lie in (0, 1) for k >= 2")
    g = np.empty_like(a)
    g[0] = 1.0
    for k in range(1, a.size):
        g[k] = (1.0 - a[k]) * g[k - 1]
    return a, g


def finite_diff_gradient(oracle, x: np.ndarray, h: float) -> np.ndarray:
    """Central finite-difference gradient, one coordinate pair per entry.

    Test-oracle utility: ``(f(x + h e_i) - f(x - h e_i)) / (2h)``. Works with
    any object exposing ``eval(x) -> (value, grad)``.
    """
    if h <= 0:
        raise ValueError("h must be positive")
    x = np.asarray(x, dtype=float)
    g = np.empty_like(x)
    for i in range(x.size):
        e = np.zeros_like(x)
        e[i] = h
        fp, _ = oracle.eval(x + e)
        fm, _ = oracle.eval(x - e)
        g[i] = (fp - fm) / (2.0 * h)
    return g
