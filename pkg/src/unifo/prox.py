"""Proximal subproblems with closed-form solutions.

``prox_step`` solves ``argmin_u <g, u> + ||u - center||^2 / (2 tau) + X(u)``
over the feasible set; ``scaled_prox_step`` generalizes the quadratic to a
``G``-weighted norm for identity, diagonal, or limited-memory quasi-Newton
scalings.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exceptions import CapabilityError
from .problems import CompositeTerm, FeasibleSet

__all__ = ["soft_threshold", "prox_step", "ScalingMatrix", "scaled_prox_step"]


def soft_threshold(v: np.ndarray, t) -> np.ndarray:
    """Componentwise shrinkage: ``sign(v) * max(|v| - t, 0)``."""
    return np.sign(v) * np.maximum(np.abs(v) - t, 0.0)


def prox_step(
    g: np.ndarray,
    center: np.ndarray,
    stepsize: float,
    composite: CompositeTerm,
    feasible_set: FeasibleSet,
) -> np.ndarray:
    """Exact minimizer of ``<g,u> + ||u - center||^2/(2*stepsize) + X(u)`` over the set.

    Supported combinations: (whole space, any composite), (box, any
    composite), (ball, zero composite). Ball with an l1 term has no closed
    form and raises :class:`CapabilityError`.
    """
    if stepsize <= 0:
        raise ValueError("stepsize must be positive")
    point = center - stepsize * g
    if composite.is_zero:
        return feasible_set.project(point)
    if feasible_set.kind == "whole_space":
        return soft_threshold(point, stepsize * composite.weight)
    if feasible_set.kind == "box":
        # separable: clamp the 1-D unconstrained minimizer per coordinate
        return np.clip(
            soft_threshold(point, stepsize * composite.weight),
            feasible_set.lower,
            feasible_set.upper,
        )
    raise CapabilityError(
        f"no closed-form prox for set {feasible_set.kind!r} with composite {composite.kind!r}"
    )


@dataclass(frozen=True)
class ScalingMatrix:
    """Positive-definite scaling for the descent subproblem.

    Variants: identity, diagonal with entries ``>= sigma_floor``, or a
    limited-memory quasi-Newton (BFGS) matrix built from displacement /
    gradient-difference pairs. The quasi-Newton variant only combines with a
    whole-space set and a zero composite term (the step then reduces to
    ``center - beta * H g`` with ``H`` the two-loop inverse).
    """

    kind: str = "identity"  # "identity" | "diagonal" | "lbfgs"
    diag: np.ndarray | None = None
    pairs: tuple = ()  # ((s, y), ...) oldest first
    memory: int = 5
    sigma_floor: float = 0.5

    def __post_init__(self):
        if self.kind not in ("identity", "diagonal", "lbfgs"):
            raise ValueError(f"unsupported scaling {self.kind!r}")
        if not 0.0 < self.sigma_floor < 1.0:
            raise ValueError("sigma_floor must lie in (0, 1)")
        if self.kind == "diagonal":
            d = np.asarray(self.diag, dtype=float)
            if np.any(d < self.sigma_floor):
                raise ValueError("diagonal entries must be >= sigma_floor")
            object.__setattr__(self, "diag", d)

    @staticmethod
    def identity(sigma_floor: float = 0.5) -> "ScalingMatrix":
        return ScalingMatrix("identity", sigma_floor=sigma_floor)

    @staticmethod
    def diagonal(diag: np.ndarray, sigma_floor: float = 0.5) -> "ScalingMatrix":
        return ScalingMatrix("diagonal", diag=diag, sigma_floor=sigma_floor)

    @staticmethod
    def lbfgs(pairs, memory: int = 5, sigma_floor: float = 0.5) -> "ScalingMatrix":
        kept = tuple(pairs)[-memory:]
        return ScalingMatrix("lbfgs", pairs=kept, memory=memory, sigma_floor=sigma_floor)

    def push_pair(self, s: np.ndarray, y: np.ndarray) -> "ScalingMatrix":
        """New scaling with (s, y) appended; skips pairs without positive curvature."""
        if self.kind != "lbfgs":
            return self
        sy = float(np.dot(s, y))
        if sy <= 1e-12 * float(np.linalg.norm(s) * np.linalg.norm(y)):
            return self
        return ScalingMatrix.lbfgs(
            self.pairs + ((np.array(s, dtype=float), np.array(y, dtype=float)),),
            memory=self.memory,
            sigma_floor=self.sigma_floor,
        )

    def inverse_apply(self, g: np.ndarray) -> np.ndarray:
        """``G^{-1} g``; for the lbfgs variant this is the two-loop recursion."""
        if self.kind == "identity":
            return g
        if self.kind == "diagonal":
            return g / self.diag
        if not self.pairs:
            return g
        q = g.copy()
        coeffs = []
        rhos = [1.0 / float(np.dot(y, s)) for s, y in self.pairs]
        for (s, y), rho in zip(reversed(self.pairs), reversed(rhos)):
            a = rho * float(np.dot(s, q))
            q -= a * y
            coeffs.append(a)
        coeffs.reverse()
        s_last, y_last = self.pairs[-1]
        gamma = float(np.dot(s_last, y_last)) / float(np.dot(y_last, y_last))
        r = gamma * q
        for (s, y), rho, a in zip(self.pairs, rhos, coeffs):
            b = rho * float(np.dot(y, r))
            r += (a - b) * s
        return r


def scaled_prox_step(
    g: np.ndarray,
    center: np.ndarray,
    stepsize: float,
    scaling: ScalingMatrix,
    composite: CompositeTerm,
    feasible_set: FeasibleSet,
) -> np.ndarray:
    """Exact minimizer of ``<g,u> + ||u - center||_G^2/(2*stepsize) + X(u)`` over the set.

    Identity scaling delegates to :func:`prox_step`. Diagonal scaling keeps
    the problem separable (whole space or box, any composite). The
    quasi-Newton scaling requires whole space and zero composite.
    """
    if stepsize <= 0:
        raise ValueError("stepsize must be positive")
    if scaling.kind == "identity":
        return prox_step(g, center, stepsize, composite, feasible_set)
    if scaling.kind == "diagonal":
        if feasible_set.kind == "ball":
            raise CapabilityError("diagonal scaling over a ball is not separable")
        point = center - stepsize * g / scaling.diag
        if not composite.is_zero:
            point = soft_threshold(point, stepsize * composite.weight / scaling.diag)
        if feasible_set.kind == "box":
            point = np.clip(point, feasible_set.lower, feasible_set.upper)
        return point
    # lbfgs
    if feasible_set.kind != "whole_space" or not composite.is_zero:
        raise CapabilityError(
            "quasi-Newton scaling requires a whole-space set and zero composite term"
        )
    return center - stepsize * scaling.inverse_apply(g)
