"""Classical exact linear algebra, used as an independent check on the ideals.

Nothing here touches Groebner bases: characteristic polynomials come from
Faddeev-LeVerrier, Jordan types from rank sequences of ``(A - lambda I)^k``
and eigenspaces from exact row reduction.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .eigenideal import JordanSpec
from .errors import DegenerateSampleError, DimensionError, InvalidArgumentError, UnsupportedFieldError
from .matrix import QMatrix, bareiss_det
from .qpoly import Polynomial, Ring

ENTRY_RANGE = (-9, 9)


@dataclass(frozen=True)
class CharPoly:
    """Monic det(tI - A); ``coeffs[k]`` is the coefficient of t^k."""

    coeffs: tuple

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, t) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __str__(self):
        ring = Ring(("t",))
        return str(Polynomial(ring, {(k,): c for k, c in enumerate(self.coeffs)}))


@dataclass(frozen=True)
class RankProfile:
    """Ranks of (A - lambda I)^k for k = 0..r."""

    eigenvalue: Fraction
    ranks: tuple

    def blocks(self) -> tuple:
        """(size, count) pairs with sizes descending."""
        rk = self.ranks
        at_least = [rk[k - 1] - rk[k] for k in range(1, len(rk))]  # blocks of size >= k
        at_least.append(0)
        out = []
        for k in range(len(at_least) - 1, 0, -1):
            exact = at_least[k - 1] - at_least[k]
            if exact:
                out.append((k, exact))
        return tuple(out)


def _faddeev_leverrier(M: list, n: int, zero, one, div_int) -> list:
    """Coefficients (ascending) of det(tI - M) for entries in any Q-algebra."""
    c = [zero] * (n + 1)
    c[n] = one
    Mk = [[zero] * n for _ in range(n)]
    for k in range(1, n + 1):
        prod = [[sum((M[i][l] * Mk[l][j] for l in range(n)), zero) for j in range(n)]
                for i in range(n)]
        for i in range(n):
            prod[i][i] = prod[i][i] + c[n - k + 1]
        Mk = prod
        AMk = [[sum((M[i][l] * Mk[l][j] for l in range(n)), zero) for j in range(n)]
               for i in range(n)]
        trace = sum((AMk[i][i] for i in range(n)), zero)
        c[n - k] = -div_int(trace, k)
    return c


def char_poly(A: QMatrix) -> CharPoly:
    if not A.is_square:
        raise DimensionError("characteristic polynomial of a non-square matrix")
    n = A.rows
    coeffs = _faddeev_leverrier([list(r) for r in A.entries], n, Fraction(0), Fraction(1),
                                lambda x, k: x / k)
    return CharPoly(tuple(coeffs))


def _divisors(n: int) -> list:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _deflate(coeffs: list, root: Fraction) -> list:
    """Synthetic division by (t - root); coeffs ascending, remainder must be 0."""
    n = len(coeffs) - 1
    out = [Fraction(0)] * n
    acc = Fraction(0)
    for k in range(n, 0, -1):
        acc = acc * root + coeffs[k]
        out[k - 1] = acc
    return out


def rational_roots(coeffs: Sequence[Fraction]) -> tuple:
    """Rational roots with multiplicity, and the leftover factor (ascending)."""
    coeffs = [Fraction(c) for c in coeffs]
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    roots: dict = {}
    while len(coeffs) > 1 and coeffs[0] == 0:
        roots[Fraction(0)] = roots.get(Fraction(0), 0) + 1
        coeffs = coeffs[1:]
    if len(coeffs) > 1:
        denom = math.lcm(*(c.denominator for c in coeffs))
        ints = [int(c * denom) for c in coeffs]
        cands = sorted({Fraction(s * p, q) for p in _divisors(ints[0])
                        for q in _divisors(ints[-1]) for s in (1, -1)})
        for cand in cands:
            while len(coeffs) > 1 and CharPoly(tuple(coeffs))(cand) == 0:
                roots[cand] = roots.get(cand, 0) + 1
                coeffs = _deflate(coeffs, cand)
    return sorted(roots.items()), coeffs


def rational_spectrum(A: QMatrix) -> list:
    """Eigenvalues with algebraic multiplicities, ascending.

    Raises UnsupportedFieldError when the characteristic polynomial does not
    split over the rationals.
    """
    cp = char_poly(A)
    roots, rest = rational_roots(cp.coeffs)
    if len(rest) > 1:
        factor = CharPoly(tuple(c / rest[-1] for c in rest))
        raise UnsupportedFieldError(
            f"characteristic polynomial {cp} does not split over Q; "
            f"irreducible part {factor}", factor=str(factor))
    return roots


def _shifted(A: QMatrix, lam) -> QMatrix:
    return A - QMatrix.identity(A.rows).scale(lam)


def rank_profile(A: QMatrix, lam) -> RankProfile:
    N = _shifted(A, lam)
    ranks = [A.rows]
    P = QMatrix.identity(A.rows)
    for _ in range(A.rows):
        P = P @ N
        ranks.append(P.rank())
    return RankProfile(Fraction(lam), tuple(ranks))


def jordan_type_oracle(A: QMatrix) -> JordanSpec:
    """Jordan type from the rank sequences, eigenvalues ascending."""
    spectrum = rational_spectrum(A)
    return JordanSpec(tuple((lam, rank_profile(A, lam).blocks()) for lam, _ in spectrum))


def eigenspaces(A: QMatrix) -> dict:
    return {lam: _shifted(A, lam).kernel() for lam, _ in rational_spectrum(A)}


def generalized_eigenspaces(A: QMatrix) -> dict:
    """Kernels of (A - lambda I)^r with r the matrix size."""
    return {lam: (_shifted(A, lam) ** A.rows).kernel() for lam, _ in rational_spectrum(A)}


def diagonalizable_oracle(A: QMatrix) -> bool:
    return sum(len(v) for v in eigenspaces(A).values()) == A.rows


def _rank_of(vectors: list) -> int:
    return QMatrix.from_rows(vectors).rank() if vectors else 0


def jordan_basis(A: QMatrix, spec: JordanSpec | None = None) -> tuple:
    """``(spec, C)`` with ``C^-1 A C == jordan_matrix(spec)``.

    Columns of C are Jordan chains ``N^(s-1) v, ..., N v, v`` with
    ``N = A - lambda I``, laid out in the block order of ``jordan_matrix``.
    """
    spec = spec or jordan_type_oracle(A)
    n = A.rows
    columns = []
    for lam, blocks in spec.eigenvalues:
        N = _shifted(A, lam)
        powers = [QMatrix.identity(n)]
        for _ in range(blocks[0][0]):
            powers.append(powers[-1] @ N)
        tops = []  # (vector, size), larger sizes first
        for size, count in blocks:
            level = list(powers[size - 1].kernel())
            level += [powers[t - size].apply(w) for w, t in tops]
            rank = _rank_of(level)
            picked = 0
            for v in powers[size].kernel():
                if picked == count:
                    break
                if _rank_of(level + [v]) > rank:
                    level.append(v)
                    rank += 1
                    tops.append((v, size))
                    picked += 1
            if picked != count:
                raise InvalidArgumentError(
                    f"Jordan type {blocks} for eigenvalue {lam} does not match the matrix")
        for v, size in tops:
            chain = [powers[size - 1 - d].apply(v) for d in range(size)]
            columns.extend(chain)
    if len(columns) != n:
        raise InvalidArgumentError("Jordan type does not account for the whole space")
    C = QMatrix.from_rows(columns).transpose()
    return spec, C


# -- discriminant degree along a pencil ---------------------------------------

def _pencil_char_poly(B: QMatrix, C: QMatrix) -> list:
    ring = Ring(("s",))
    s = ring.gen(0)
    n = B.rows
    M = [[ring.const(B[i, j]) + s.scale(C[i, j]) for j in range(n)] for i in range(n)]
    return _faddeev_leverrier(M, n, ring.zero(), ring.one(),
                              lambda x, k: x.scale(Fraction(1, k)))


def sylvester_matrix(p: Sequence, q: Sequence, zero) -> list:
    """Sylvester matrix of two polynomials given by ascending coefficient lists."""
    m, n = len(p) - 1, len(q) - 1
    size = m + n
    rows = []
    for shift in range(n):
        row = [zero] * size
        for k, c in enumerate(reversed(p)):
            row[shift + k] = c
        rows.append(row)
    for shift in range(m):
        row = [zero] * size
        for k, c in enumerate(reversed(q)):
            row[shift + k] = c
        rows.append(row)
    return rows


def pencil_discriminant(B: QMatrix, C: QMatrix) -> Polynomial:
    """disc_t of det(tI - (B + sC)) as a polynomial in s."""
    if not (B.is_square and C.is_square and B.shape == C.shape):
        raise DimensionError("pencil needs two square matrices of the same size")
    n = B.rows
    p = _pencil_char_poly(B, C)
    ring = p[0].ring
    if n == 1:
        return ring.one()
    dp = [p[k].scale(k) for k in range(1, n + 1)]
    syl = sylvester_matrix(p, dp, ring.zero())
    res = bareiss_det(syl, lambda a, b: a.exact_div(b), ring.zero(), ring.one())
    # p is monic in t, so disc = (-1)^(n(n-1)/2) * Res(p, p')
    return res if (n * (n - 1) // 2) % 2 == 0 else -res


def random_pencil(r: int, seed: int) -> tuple:
    """Two r x r integer matrices with entries uniform in -9..9.

    The generator is Python's Mersenne Twister (``random.Random(seed)``);
    B is drawn first, then C, both row-major.
    """
    if not 0 <= seed < 2 ** 64:
        raise InvalidArgumentError("seed must be an unsigned 64-bit integer")
    rng = random.Random(seed)
    lo, hi = ENTRY_RANGE

    def draw():
        return QMatrix.from_rows([[rng.randint(lo, hi) for _ in range(r)] for _ in range(r)])

    B = draw()
    C = draw()
    return B, C


def discriminant_degree(B: QMatrix, C: QMatrix) -> int:
    disc = pencil_discriminant(B, C)
    if not disc:
        raise DegenerateSampleError(
            "discriminant vanishes identically along the pencil; draw another seed")
    return disc.total_degree()


def discriminant_degree_experiment(r: int, seed: int) -> int:
    """Degree in s of the discriminant of the characteristic polynomial of B + sC."""
    if r < 2:
        raise InvalidArgumentError("the experiment needs r >= 2")
    B, C = random_pencil(r, seed)
    try:
        return discriminant_degree(B, C)
    except DegenerateSampleError as exc:
        raise DegenerateSampleError(f"seed {seed}: {exc}") from None
