"""Deterministic integer-coordinate samplers.

Coordinates are integers in [-5, 5]; invertible blocks are resampled until
|det| >= 1, and rank or pivot constraints are enforced by rejection.  The
blocks that get inverted downstream are also kept well conditioned (inverse
entries bounded), so that roundoff stays far below the 1e-9 comparison
tolerance.  Streams are derived from numpy's SeedSequence, so a fixed
(seed, path) yields the same values on every platform; independent
per-trial streams keep randomized suites order-independent.
"""

from __future__ import annotations

import numpy as np

from .core import Dims, DoubleVelocity, Velocity
from .groups import JetGroupElement, PrincipalJetElement
from .linalg import ChartError, inf_norm, numerical_rank, pivot_rows, swap_last2
from .oracle import BiPolyMap, PolyMap

COORD_LOW, COORD_HIGH = -5, 5
INVERSE_BOUND = 8.0

GEN_KINDS = ("velocity", "double", "group", "principal",
             "semiholonomic", "holonomic", "vertical")


def rng_from(seed: int, *path: int) -> np.random.Generator:
    return np.random.default_rng([int(seed), *(int(p) for p in path)])


def ints(rng: np.random.Generator, *shape: int) -> np.ndarray:
    return rng.integers(COORD_LOW, COORD_HIGH + 1, size=shape).astype(float)


def _tame(block: np.ndarray) -> bool:
    """Invertible with |det| >= 1 and a small inverse."""
    if abs(round(float(np.linalg.det(block)))) < 1:
        return False
    return inf_norm(np.linalg.inv(block)) <= INVERSE_BOUND


def invertible_matrix(rng: np.random.Generator, m: int) -> np.ndarray:
    while True:
        A = ints(rng, m, m)
        if _tame(A):
            return A


def full_rank_matrix(rng: np.random.Generator, n: int, m: int) -> np.ndarray:
    while True:
        U = ints(rng, n, m)
        if numerical_rank(U) != m:
            continue
        if _tame(U[list(pivot_rows([U], m)), :]):
            return U


def symmetric_mixed(rng: np.random.Generator, n: int, m: int) -> np.ndarray:
    """Integer n x m x m array symmetric in its last two slots."""
    T = ints(rng, n, m, m)
    out = T.copy()
    for i in range(m):
        for j in range(i + 1, m):
            out[:, j, i] = out[:, i, j]
    return out


def skew_mixed(rng: np.random.Generator, n: int, m: int) -> np.ndarray:
    upper = np.triu(np.ones((m, m)), k=1) * ints(rng, n, m, m)
    return upper - swap_last2(upper)


def velocity(rng: np.random.Generator, dims: Dims) -> Velocity:
    return Velocity(dims, ints(rng, dims.n), full_rank_matrix(rng, dims.n, dims.m))


def raw_double(rng: np.random.Generator, dims: Dims) -> DoubleVelocity:
    """Unconstrained double velocity (no regularity, no chart)."""
    n, m = dims.n, dims.m
    return DoubleVelocity(dims, ints(rng, n), ints(rng, n, m),
                          ints(rng, n, m), ints(rng, n, m, m))


def double(rng: np.random.Generator, dims: Dims) -> DoubleVelocity:
    """A chart-admissible double velocity: some pivot set works for both
    linear parts."""
    n, m = dims.n, dims.m
    while True:
        Ui = ints(rng, n, m)
        Uo = ints(rng, n, m)
        try:
            I = list(pivot_rows([Ui, Uo], m))
        except ChartError:
            continue
        if _tame(Ui[I, :]) and _tame(Uo[I, :]):
            return DoubleVelocity(dims, ints(rng, n), Ui, Uo, ints(rng, n, m, m))


def inner_regular_double(rng: np.random.Generator, dims: Dims) -> DoubleVelocity:
    n, m = dims.n, dims.m
    return DoubleVelocity(dims, ints(rng, n), full_rank_matrix(rng, n, m),
                          ints(rng, n, m), ints(rng, n, m, m))


def semiholonomic_double(rng: np.random.Generator, dims: Dims) -> DoubleVelocity:
    n, m = dims.n, dims.m
    U = full_rank_matrix(rng, n, m)
    return DoubleVelocity(dims, ints(rng, n), U, U, ints(rng, n, m, m))


def holonomic_double(rng: np.random.Generator, dims: Dims) -> DoubleVelocity:
    n, m = dims.n, dims.m
    U = full_rank_matrix(rng, n, m)
    return DoubleVelocity(dims, ints(rng, n), U, U, symmetric_mixed(rng, n, m))


def vertical_double(rng: np.random.Generator, dims: Dims) -> DoubleVelocity:
    n, m = dims.n, dims.m
    return DoubleVelocity(dims, ints(rng, n), full_rank_matrix(rng, n, m),
                          np.zeros((n, m)), ints(rng, n, m, m))


def group_element(rng: np.random.Generator, m: int) -> JetGroupElement:
    return JetGroupElement(m, invertible_matrix(rng, m))


def principal_element(rng: np.random.Generator, m: int) -> PrincipalJetElement:
    return PrincipalJetElement(m, invertible_matrix(rng, m),
                               invertible_matrix(rng, m), ints(rng, m, m, m))


def semiholonomic_element(rng: np.random.Generator, m: int) -> PrincipalJetElement:
    A = invertible_matrix(rng, m)
    return PrincipalJetElement(m, A, A, ints(rng, m, m, m))


def holonomic_element(rng: np.random.Generator, m: int) -> PrincipalJetElement:
    A = invertible_matrix(rng, m)
    return PrincipalJetElement(m, A, A, symmetric_mixed(rng, m, m))


def curvature_element(rng: np.random.Generator, m: int) -> PrincipalJetElement:
    A = invertible_matrix(rng, m)
    return PrincipalJetElement(m, A, A, skew_mixed(rng, m, m))


def polymap(rng: np.random.Generator, dims: Dims) -> PolyMap:
    return PolyMap(dims, ints(rng, dims.n), ints(rng, dims.n, dims.m),
                   symmetric_mixed(rng, dims.n, dims.m))


def origin_polymap(rng: np.random.Generator, m: int) -> PolyMap:
    """Origin-preserving self-map with invertible linear part."""
    return PolyMap(Dims(m, m), np.zeros(m), invertible_matrix(rng, m),
                   symmetric_mixed(rng, m, m))


def bipolymap(rng: np.random.Generator, dims: Dims) -> BiPolyMap:
    return BiPolyMap(dims, ints(rng, dims.n), ints(rng, dims.n, dims.m),
                     ints(rng, dims.n, dims.m), ints(rng, dims.n, dims.m, dims.m))


def generate(kind: str, m: int, n: int, rng: np.random.Generator):
    """Sampler dispatch for the gen command."""
    if kind == "group":
        return group_element(rng, m)
    if kind == "principal":
        return principal_element(rng, m)
    dims = Dims(m, n)
    if kind == "velocity":
        return velocity(rng, dims)
    if kind == "double":
        return double(rng, dims)
    if kind == "semiholonomic":
        return semiholonomic_double(rng, dims)
    if kind == "holonomic":
        return holonomic_double(rng, dims)
    if kind == "vertical":
        return vertical_double(rng, dims)
    raise ValueError(f"unknown kind {kind!r}; choose from {', '.join(GEN_KINDS)}")
