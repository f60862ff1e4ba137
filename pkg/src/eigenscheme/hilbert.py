"""Hilbert functions by staircase counting and Jordan types from component data."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence

from .eigenideal import JordanSpec
from .errors import InconsistencyError, InsufficientSampleError, InvalidArgumentError, ValidationError
from .groebner import GroebnerBasis, buchberger
from .jordanstruct import ComponentReport, LambdaSet
from .qpoly import GREVLEX

DEFAULT_TMAX = 8
TMAX_CAP = 16

# A JordanTypeEstimate is an ordinary JordanSpec.
JordanTypeEstimate = JordanSpec


@dataclass(frozen=True)
class HilbertSample:
    """Values H(0), ..., H(t_max) of a Hilbert function."""

    values: tuple

    def __post_init__(self):
        values = tuple(int(v) for v in self.values)
        if len(values) < 5:
            raise InvalidArgumentError("a Hilbert sample needs t_max >= 4")
        if any(v < 0 for v in values):
            raise ValidationError("Hilbert function values are non-negative")
        object.__setattr__(self, "values", values)

    @property
    def t_max(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, t):
        return self.values[t]

    def to_data(self) -> list:
        return list(self.values)


def _leading_monomials(I) -> tuple:
    if isinstance(I, GroebnerBasis):
        if I.order != GREVLEX:
            I = buchberger(I.ideal(), GREVLEX)
        gb = I
    else:
        if not I.is_homogeneous():
            raise ValidationError("Hilbert functions need a homogeneous ideal")
        gb = buchberger(I, GREVLEX)
    return gb.ring.nvars, tuple(gb.leading_monomials())


def staircase_counts(nvars: int, leading: Sequence[tuple], t_max: int) -> list:
    """Number of standard monomials in each degree 0..t_max.

    Standard monomials of degree t are grown from those of degree t-1 by a
    variable of index at least the largest one present, so each appears once.
    Only generators involving the new variable need to be checked.
    """
    if any(not any(m) for m in leading):
        return [0] * (t_max + 1)
    by_var = [[m for m in leading if m[v]] for v in range(nvars)]
    counts = [1]
    layer = [((0,) * nvars, 0)]
    for _ in range(t_max):
        nxt = []
        for mono, last in layer:
            for v in range(last, nvars):
                m = list(mono)
                m[v] += 1
                m = tuple(m)
                if any(all(a >= b for a, b in zip(m, g)) for g in by_var[v]):
                    continue
                nxt.append((m, v))
        layer = nxt
        counts.append(len(layer))
    return counts


def hilbert_function(I, t_max: int = DEFAULT_TMAX) -> HilbertSample:
    """H(t) = number of degree-t monomials outside the grevlex initial ideal."""
    if t_max < 4:
        raise InvalidArgumentError("t_max must be at least 4")
    nvars, leading = _leading_monomials(I)
    return HilbertSample(tuple(staircase_counts(nvars, leading, t_max)))


def closed_form(spec, j: int, t: int) -> int:
    """r_j * C(t + k_1 + ... + k_j - 1, t)."""
    L = spec if isinstance(spec, LambdaSet) else LambdaSet.of(spec)
    L.check_j(j)
    if t < 0:
        raise InvalidArgumentError("t must be non-negative")
    return L.r(j) * math.comb(t + L.k_sum(j) - 1, t)


def _differences(values: list) -> list:
    return [b - a for a, b in zip(values, values[1:])]


def dim_degree(sample: HilbertSample) -> tuple:
    """(dimension, degree) of the Hilbert polynomial read off the sample tail.

    The dimension is the least d such that the last d + 3 values fit a
    polynomial of degree d; the degree is the constant d-th difference there.
    An eventually zero sample gives (-1, 0).
    """
    vals = list(sample.values)
    if vals[-1] == 0 and vals[-2] == 0:
        return -1, 0
    for d in range(0, len(vals) - 2):
        tail = vals[-(d + 3):]
        diffs = tail
        for _ in range(d):
            diffs = _differences(diffs)
        # diffs now holds three consecutive d-th differences
        if diffs[0] == diffs[1] == diffs[2] and diffs[0] != 0:
            return d, diffs[0]
    raise InsufficientSampleError(
        f"Hilbert sample up to t={sample.t_max} has no polynomial tail; raise t_max")


def measure(I, t_max: int = DEFAULT_TMAX, cap: int = TMAX_CAP) -> tuple:
    """``(dimension, degree, sample)``, raising t_max by 4 up to ``cap`` if needed."""
    nvars, leading = _leading_monomials(I)
    t = t_max
    while True:
        sample = HilbertSample(tuple(staircase_counts(nvars, leading, t)))
        try:
            d, deg = dim_degree(sample)
            return d, deg, sample
        except InsufficientSampleError:
            if t >= cap:
                raise
            t = min(t + 4, cap)


def measured_report(report: ComponentReport, t_max: int = DEFAULT_TMAX) -> ComponentReport:
    """Copy of ``report`` whose dimension and degree come from its Hilbert function."""
    d, deg, _ = measure(report.generators, t_max)
    return replace(report, dimension=d, degree=deg, hilbert_coeffs=(deg, d + 1))


def reconstruct_jordan(reports: Sequence[ComponentReport], size: int | None = None) -> JordanSpec:
    """Jordan type from per-component (dimension, degree) data.

    Within an eigenvalue the components sorted by decreasing degree give
    r_j = degree_j, k_1 = dim_1 + 1 and k_j = dim_j - dim_(j-1).
    Eigenvalues keep their order of first appearance.
    """
    if not reports:
        raise InconsistencyError("no components to reconstruct from")
    groups: dict = {}
    for rep in reports:
        groups.setdefault(Fraction(rep.eigenvalue), []).append(rep)
    eigen = []
    for lam, reps in groups.items():
        reps = sorted(reps, key=lambda rp: -rp.degree)
        blocks = []
        prev_dim = -1
        prev_deg = None
        for rp in reps:
            if rp.degree < 1 or (prev_deg is not None and rp.degree >= prev_deg):
                raise InconsistencyError(
                    f"eigenvalue {lam}: component degrees must be positive and distinct")
            k = rp.dimension - prev_dim
            if k < 1:
                raise InconsistencyError(
                    f"eigenvalue {lam}: dimensions {[r.dimension for r in reps]} "
                    "are not strictly increasing")
            blocks.append((rp.degree, k))
            prev_dim, prev_deg = rp.dimension, rp.degree
        eigen.append((lam, tuple(blocks)))
    spec = JordanSpec(tuple(eigen))
    if size is None:
        size = reports[0].generators.ring.nvars
    if spec.size != size:
        raise InconsistencyError(
            f"recovered blocks cover {spec.size} coordinates, expected {size}")
    return spec

