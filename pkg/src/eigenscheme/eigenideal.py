"""Eigenscheme ideals of square matrices, Jordan matrices and similarity transport.

The ideal of a matrix ``A`` is generated by the 2x2 minors of the r x 2
matrix ``(A x | x)``, emitted as ``(Ax)_i x_j - (Ax)_j x_i`` for i < j.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DimensionError, InvalidArgumentError, ValidationError
from .groebner import Ideal
from .matrix import QMatrix
from .qpoly import Polynomial, Ring, linear_form


@dataclass(frozen=True)
class JordanSpec:
    """Jordan type: ``((lambda, ((r_1, k_1), (r_2, k_2), ...)), ...)``.

    Sizes r_j are strictly decreasing within an eigenvalue; k_j counts the
    blocks of size r_j. Eigenvalues keep the listed order, which fixes the
    order of the variable blocks.
    """

    eigenvalues: tuple

    def __post_init__(self):
        norm = []
        for entry in self.eigenvalues:
            try:
                lam, blocks = entry
                blocks = tuple((int(r), int(k)) for r, k in blocks)
            except (TypeError, ValueError) as exc:
                raise ValidationError(f"malformed eigenvalue entry {entry!r}") from exc
            norm.append((Fraction(lam), blocks))
        norm = tuple(norm)
        object.__setattr__(self, "eigenvalues", norm)
        if not norm:
            raise ValidationError("a Jordan spec needs at least one eigenvalue")
        lams = [lam for lam, _ in norm]
        if len(set(lams)) != len(lams):
            raise ValidationError(f"eigenvalues must be distinct, got {lams}")
        for lam, blocks in norm:
            if not blocks:
                raise ValidationError(f"eigenvalue {lam} has no blocks")
            sizes = [r for r, _ in blocks]
            if any(r < 1 for r in sizes) or any(k < 1 for _, k in blocks):
                raise ValidationError(f"block sizes and multiplicities must be positive: {blocks}")
            if any(a <= b for a, b in zip(sizes, sizes[1:])):
                raise ValidationError(f"block sizes must be strictly decreasing: {sizes}")

    @classmethod
    def single(cls, lam, blocks: Sequence) -> JordanSpec:
        return cls(((lam, tuple(blocks)),))

    @property
    def size(self) -> int:
        return sum(self.xi(i) for i in range(len(self.eigenvalues)))

    def xi(self, i: int) -> int:
        """Dimension of the generalized eigenspace of the i-th eigenvalue."""
        return sum(r * k for r, k in self.eigenvalues[i][1])

    def offsets(self) -> list:
        out, acc = [], 0
        for i in range(len(self.eigenvalues)):
            out.append(acc)
            acc += self.xi(i)
        return out

    def canonical(self) -> JordanSpec:
        return JordanSpec(tuple(sorted(self.eigenvalues, key=lambda e: e[0])))

    def is_diagonal(self) -> bool:
        return all(blocks == ((1, blocks[0][1]),) for _, blocks in self.eigenvalues)

    def to_data(self) -> list:
        return [{"lambda": _fstr(lam), "blocks": [[r, k] for r, k in blocks]}
                for lam, blocks in self.eigenvalues]

    @classmethod
    def from_data(cls, data) -> JordanSpec:
        try:
            return cls(tuple((Fraction(str(e["lambda"])), tuple(tuple(b) for b in e["blocks"]))
                             for e in data))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"malformed Jordan spec data: {exc}") from exc


def _fstr(c: Fraction) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def matrix_ring(n: int) -> Ring:
    return Ring.flat(n)


def eigenscheme_ideal(A: QMatrix, ring: Ring | None = None) -> Ideal:
    """Ideal of the 2x2 minors of ``(A x | x)``."""
    if not A.is_square:
        raise DimensionError(f"eigenscheme of a non-square {A.rows}x{A.cols} matrix")
    r = A.rows
    ring = ring or matrix_ring(r)
    if ring.nvars != r:
        raise DimensionError("ring size does not match the matrix")
    xs = ring.gens()
    Ax = [linear_form(ring, A.row(i)) for i in range(r)]
    gens = []
    for i in range(r):
        for j in range(i + 1, r):
            gens.append(Ax[i] * xs[j] - Ax[j] * xs[i])
    return Ideal(ring, tuple(gens))


def jordan_block(lam, r: int) -> QMatrix:
    lam = Fraction(lam)
    return QMatrix(r, r, tuple(
        tuple(lam if i == j else (1 if j == i + 1 else 0) for j in range(r)) for i in range(r)))


def direct_sum(A: QMatrix, B: QMatrix) -> QMatrix:
    r, c = A.rows + B.rows, A.cols + B.cols
    rows = [list(row) + [0] * B.cols for row in A.entries]
    rows += [[0] * A.cols + list(row) for row in B.entries]
    return QMatrix(r, c, tuple(tuple(row) for row in rows))


def jordan_matrix(spec: JordanSpec) -> QMatrix:
    """Block-diagonal Jordan matrix: eigenvalues in listed order, sizes descending."""
    M = QMatrix(0, 0, ())
    for lam, blocks in spec.eigenvalues:
        for r, k in blocks:
            for _ in range(k):
                M = direct_sum(M, jordan_block(lam, r))
    return M


def transport(I: Ideal, C: QMatrix) -> Ideal:
    """Pull an ideal back along ``x -> C x``.

    Convention: if ``A = C^-1 B C`` then
    ``transport(eigenscheme_ideal(B), C) == eigenscheme_ideal(A)``, because
    ``B C x ^ C x = C A x ^ C x`` is the image of ``A x ^ x`` under the
    invertible map wedge^2 C. Consequently
    ``transport(transport(I, C), D) == transport(I, C @ D)``.
    """
    n = I.ring.nvars
    if C.shape != (n, n):
        raise DimensionError(f"need a {n}x{n} change of coordinates, got {C.shape}")
    if C.rank() != n:
        raise InvalidArgumentError("change of coordinates is singular")
    images = [linear_form(I.ring, C.row(i)) for i in range(n)]
    return Ideal(I.ring, tuple(g.substitute(images) for g in I.generators))


def transport_poly(p: Polynomial, C: QMatrix) -> Polynomial:
    ring = p.ring
    return p.substitute([linear_form(ring, C.row(i)) for i in range(ring.nvars)])
