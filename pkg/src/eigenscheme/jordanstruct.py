"""Closed-form Groebner bases and primary decompositions for Jordan matrices.

For a single eigenvalue with blocks ``k_1 J_{r_1} + ... + k_l J_{r_l}``
(r_1 > ... > r_l) the variables are indexed by triples (i1, i2, i3): block
size class, copy, row. The triples are ordered so that (1,1,1) is the
largest, and flat variable x1 is (1,1,1), x2 is (1,1,2), and so on. This
matches the row order of :func:`~eigenscheme.eigenideal.jordan_matrix`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import total_ordering
from typing import Optional

from . import oracle
from .eigenideal import JordanSpec, _fstr, eigenscheme_ideal, transport
from .errors import InconsistencyError, InvalidArgumentError
from .groebner import (GroebnerBasis, Ideal, buchberger, ideal_equal, interreduce,
                       intersect_all, member, variable_ideal)
from .matrix import QMatrix, span_complement
from .qpoly import GREVLEX, Polynomial, Ring, linear_form, parse_poly


@total_ordering
@dataclass(frozen=True)
class LambdaIndex:
    """Index (i1, i2, i3); a smaller tuple is a *larger* index."""

    i1: int
    i2: int
    i3: int

    def __lt__(self, other):
        if not isinstance(other, LambdaIndex):
            return NotImplemented
        return (self.i1, self.i2, self.i3) > (other.i1, other.i2, other.i3)

    def shifted(self, d: int) -> LambdaIndex:
        return LambdaIndex(self.i1, self.i2, self.i3 + d)

    @property
    def plus(self) -> LambdaIndex:
        return self.shifted(1)

    @property
    def minus(self) -> LambdaIndex:
        return self.shifted(-1)

    @property
    def head(self) -> LambdaIndex:
        """(i1, i2, 1): the first row of the same block."""
        return LambdaIndex(self.i1, self.i2, 1)

    def __str__(self):
        return f"({self.i1},{self.i2},{self.i3})"


class LambdaSet:
    """The index set of one eigenvalue's Jordan matrix and its polynomial ring."""

    def __init__(self, blocks):
        blocks = tuple((int(r), int(k)) for r, k in blocks)
        # reuse JordanSpec validation for the block list
        JordanSpec.single(0, blocks)
        self.blocks = blocks
        self.sizes = tuple(r for r, _ in blocks)
        self.mults = tuple(k for _, k in blocks)
        self.ell = len(blocks)
        self.indices = [LambdaIndex(a + 1, b + 1, c + 1)
                        for a, (r, k) in enumerate(blocks)
                        for b in range(k) for c in range(r)]
        self.position = {idx: n for n, idx in enumerate(self.indices)}
        self.ring = Ring.flat(len(self.indices))

    @classmethod
    def of(cls, spec: JordanSpec) -> LambdaSet:
        if len(spec.eigenvalues) != 1:
            raise InvalidArgumentError("expected a single-eigenvalue Jordan spec")
        return cls(spec.eigenvalues[0][1])

    def __len__(self):
        return len(self.indices)

    def __contains__(self, idx):
        return idx in self.position

    def r(self, i1: int) -> int:
        return self.sizes[i1 - 1]

    def k(self, i1: int) -> int:
        return self.mults[i1 - 1]

    def x(self, idx: LambdaIndex) -> Polynomial:
        return self.ring.gen(self.position[idx])

    def validate(self, idx: LambdaIndex):
        if idx not in self.position:
            raise InvalidArgumentError(f"{idx} is not an index of this Jordan type")

    def k_sum(self, j: int) -> int:
        return sum(self.mults[:j])

    def lambda_j(self, j: int) -> list:
        return [i for i in self.indices if i.i1 <= j]

    def lambda_j1(self, j: int) -> list:
        rj = self.r(j)
        return [i for i in self.indices if i.i1 <= j and i.i3 >= rj + 1]

    def lambda_j2(self, j: int) -> list:
        return [i for i in self.indices if i.i1 > j]

    def theta(self, j: int) -> list:
        return [i for i in self.indices if i.i1 <= j and i.i3 == 1]

    def check_j(self, j: int):
        if not 1 <= j <= self.ell:
            raise InvalidArgumentError(f"component index {j} outside 1..{self.ell}")


class GammaClass(enum.Enum):
    GAMMA1 = "Gamma1"
    GAMMA2 = "Gamma2"
    GAMMA3 = "Gamma3"
    GAMMA4 = "Gamma4"
    ZERO = "zero"


def _classify(L: LambdaSet, i: LambdaIndex, j: LambdaIndex) -> GammaClass:
    ri, rj = L.r(i.i1), L.r(j.i1)
    i_open, j_open = i.i3 < ri, j.i3 < rj
    if i_open and j_open:
        return GammaClass.GAMMA1 if i.i3 + j.i3 >= rj + 1 else GammaClass.GAMMA2
    if i_open:
        return GammaClass.GAMMA3
    if j_open:
        return GammaClass.GAMMA4
    return GammaClass.ZERO


def gamma_classify(spec, i: LambdaIndex, j: LambdaIndex):
    """Class of the pair (i, j) and the (i, j)-minor of ``(J x | x)``."""
    L = spec if isinstance(spec, LambdaSet) else LambdaSet.of(spec)
    L.validate(i)
    L.validate(j)
    if not i > j:
        raise InvalidArgumentError(f"need i > j in the index order, got {i}, {j}")
    cls = _classify(L, i, j)
    x = L.x
    if cls in (GammaClass.GAMMA1, GammaClass.GAMMA2):
        minor = x(i.plus) * x(j) - x(i) * x(j.plus)
    elif cls is GammaClass.GAMMA3:
        minor = x(i.plus) * x(j)
    elif cls is GammaClass.GAMMA4:
        minor = -(x(i) * x(j.plus))
    else:
        minor = L.ring.zero()
    return cls, minor


def gamma_pairs(L: LambdaSet):
    """All pairs (i, j) with i > j together with their class."""
    for a, i in enumerate(L.indices):
        for j in L.indices[a + 1:]:
            yield i, j, _classify(L, i, j)


def _dedup(polys):
    seen, out = set(), []
    for p in polys:
        if p not in seen:
            seen.add(p)
            out.append(p)
    return out


def basis_H(spec) -> list:
    """The generating set H = H1 u H2 u H3 u H4 (a non-reduced Groebner basis)."""
    L = spec if isinstance(spec, LambdaSet) else LambdaSet.of(spec)
    x = L.x
    out = []
    for i, j, cls in gamma_pairs(L):
        if cls in (GammaClass.GAMMA1, GammaClass.GAMMA2):
            out.append(x(i.plus) * x(j) - x(i) * x(j.plus))
        elif cls is GammaClass.GAMMA3:
            out.append(x(i.plus) * x(j))
        elif cls is GammaClass.GAMMA4:
            out.append(x(i) * x(j.plus))
    return _dedup(out)


def _sorted_basis(ring: Ring, polys) -> GroebnerBasis:
    key = GREVLEX.key
    polys = sorted(_dedup(polys), key=lambda p: key(p.leading_monomial(GREVLEX)))
    return GroebnerBasis(ring, GREVLEX, tuple(polys), reduced=True)


def basis_G(spec) -> GroebnerBasis:
    """Reduced grevlex basis: monomials x(i+)x(j) over Gamma1 u Gamma3 and
    binomials x(i+)x(j) - x(i1,i2,1)x(j1,j2,i3+j3) over Gamma2."""
    L = spec if isinstance(spec, LambdaSet) else LambdaSet.of(spec)
    x = L.x
    out = []
    for i, j, cls in gamma_pairs(L):
        if cls in (GammaClass.GAMMA1, GammaClass.GAMMA3):
            out.append(x(i.plus) * x(j))
        elif cls is GammaClass.GAMMA2:
            j_star = LambdaIndex(j.i1, j.i2, i.i3 + j.i3)
            out.append(x(i.plus) * x(j) - x(i.head) * x(j_star))
    return _sorted_basis(L.ring, out)


def ideal_single(spec) -> Ideal:
    """I_lambda as the ideal generated by the closed-form set G."""
    L = spec if isinstance(spec, LambdaSet) else LambdaSet.of(spec)
    return Ideal(L.ring, basis_G(L).elements)


def initial_ideal_generators(spec) -> list:
    """Monomials x(i+)x(j) over Gamma1 u Gamma2 u Gamma3."""
    L = spec if isinstance(spec, LambdaSet) else LambdaSet.of(spec)
    x = L.x
    return _dedup(x(i.plus) * x(j) for i, j, cls in gamma_pairs(L)
                  if cls in (GammaClass.GAMMA1, GammaClass.GAMMA2, GammaClass.GAMMA3))


@dataclass(frozen=True)
class ComponentReport:
    """One primary component together with its radical and Hilbert data."""

    eigenvalue: Fraction
    j: int
    generators: Ideal
    radical: Ideal
    dimension: int
    degree: int
    hilbert_coeffs: tuple
    block: int = 0  # position of the eigenvalue in the spec

    def to_data(self) -> dict:
        return {
            "lambda": _fstr(self.eigenvalue),
            "j": self.j,
            "generators": [str(g) for g in self.generators.generators],
            "radical": [str(g) for g in self.radical.generators],
            "dimension": self.dimension,
            "degree": self.degree,
        }

    @classmethod
    def from_data(cls, data: dict, ring: Ring) -> ComponentReport:
        gens = Ideal(ring, tuple(parse_poly(s, ring) for s in data["generators"]))
        rad = Ideal(ring, tuple(parse_poly(s, ring) for s in data["radical"]))
        dim, deg = int(data["dimension"]), int(data["degree"])
        return cls(Fraction(str(data["lambda"])), int(data["j"]), gens, rad, dim, deg,
                   (deg, dim + 1))


def component_variables(L: LambdaSet, j: int) -> list:
    """Indices in Lambda_{j,1} u Lambda_{j,2}: the variables added to I_lambda."""
    L.check_j(j)
    extra = set(L.lambda_j1(j)) | set(L.lambda_j2(j))
    return [i for i in L.indices if i in extra]


def radical_variables(L: LambdaSet, j: int) -> list:
    theta = set(L.theta(j))
    return [i for i in L.indices if i not in theta]


def component_ideal(spec, j: int) -> Ideal:
    """q_{lambda,j} = I_lambda + <x(i) : i in Lambda_{j,1} u Lambda_{j,2}>."""
    L = spec if isinstance(spec, LambdaSet) else LambdaSet.of(spec)
    extra = tuple(L.x(i) for i in component_variables(L, j))
    return Ideal(L.ring, basis_G(L).elements + extra)


def components_single(spec: JordanSpec, lam=None) -> list:
    """The l primary components of I_lambda, one report per block size."""
    L = LambdaSet.of(spec)
    if lam is None:
        lam = spec.eigenvalues[0][0]
    out = []
    for j in range(1, L.ell + 1):
        rad = variable_ideal(L.ring, (L.position[i] for i in radical_variables(L, j)))
        ksum = L.k_sum(j)
        out.append(ComponentReport(Fraction(lam), j, component_ideal(L, j), rad,
                                   ksum - 1, L.r(j), (L.r(j), ksum)))
    return out


def component_gb(spec, j: int) -> GroebnerBasis:
    """G u G'_j, interreduced into the reduced grevlex basis of q_{lambda,j}."""
    L = spec if isinstance(spec, LambdaSet) else LambdaSet.of(spec)
    extra = [L.x(i) for i in component_variables(L, j)]
    return interreduce(list(basis_G(L).elements) + extra, GREVLEX, L.ring)


@dataclass(frozen=True)
class Witness:
    """Cellularity witness for one variable modulo a component."""

    kind: str  # "nonzerodivisor" or "nilpotent"
    exponent: Optional[int] = None
    candidate: Optional[int] = None

    @property
    def matches_candidate(self) -> Optional[bool]:
        if self.kind != "nilpotent" or self.candidate is None:
            return None
        return self.exponent == self.candidate


def nilpotency_candidate(L: LambdaSet, idx: LambdaIndex) -> Optional[int]:
    """Exponent suggested by the combinatorial sketch for x(idx)^N in I_lambda.

    Returns ``None`` when the sketch gives no usable (positive) exponent.
    """
    r, s = L.r(idx.i1), idx.i3
    if s == 1:
        return None
    if 2 * s >= r + 2:
        return 2
    beta = (r - 2 * s + 1) // (s - 1)
    return beta if beta >= 1 else None


def cellular_witnesses(spec, j: int, cap: Optional[int] = None) -> dict:
    """Map each index to a nonzerodivisor or nilpotent witness modulo q_{lambda,j}.

    Nilpotency exponents are the minimal N with x^N in q_{lambda,j}, found by
    membership search starting at the candidate exponent (capped at 2r).
    """
    L = spec if isinstance(spec, LambdaSet) else LambdaSet.of(spec)
    L.check_j(j)
    q = component_ideal(L, j)
    cap = cap or 2 * len(L)
    theta = set(L.theta(j))
    forced = set(component_variables(L, j))
    out = {}
    for idx in L.indices:
        if idx in theta:
            out[idx] = Witness("nonzerodivisor")
            continue
        if idx in forced:
            out[idx] = Witness("nilpotent", 1, 1)
            continue
        cand = nilpotency_candidate(L, idx)
        x = L.x(idx)
        n = min(cand or 2, cap)
        if member(x ** n, q):
            while n > 1 and member(x ** (n - 1), q):
                n -= 1
        else:
            while not member(x ** n, q):
                n += 1
                if n > cap:
                    raise RuntimeError(f"x{idx} not nilpotent below exponent {cap}")
        out[idx] = Witness("nilpotent", n, cand)
    return out


# -- two or more eigenvalues --------------------------------------------------

def _omega(r: int, s: int) -> list:
    return [(a, b) for a in range(r) for b in range(s)]


def phi_matrix(A: QMatrix, B: QMatrix) -> QMatrix:
    """Coordinates of the bidegree (1,1) minors ``A[a,:]x y_b - B[b,:]y x_a``
    in the basis x_i y_j, rows and columns ordered (1,1), (1,2), ..."""
    if not (A.is_square and B.is_square):
        raise InvalidArgumentError("phi_matrix needs square matrices")
    omega = _omega(A.rows, B.rows)
    rows = []
    for a, b in omega:
        row = []
        for i, j in omega:
            if (a, b) == (i, j):
                row.append(A[a, a] - B[b, b])
            elif i == a:
                row.append(-B[b, j])
            elif j == b:
                row.append(A[a, i])
            else:
                row.append(0)
        rows.append(row)
    n = len(omega)
    return QMatrix(n, n, tuple(tuple(r) for r in rows))


def splits(A: QMatrix, B: QMatrix) -> bool:
    """Whether Phi has full rank rs, so I_{A+B} = <L_A, y> n <L_B, x>."""
    return phi_matrix(A, B).rank() == A.rows * B.rows


def split_components(A: QMatrix, B: QMatrix) -> tuple:
    """The two ideals <L_A, y_1..y_s> and <L_B, x_1..x_r> in r+s variables."""
    r, s = A.rows, B.rows
    ring = Ring.flat(r + s)
    IA = eigenscheme_ideal(A)
    IB = eigenscheme_ideal(B)
    left = [g.embed(ring, range(r)) for g in IA.generators] + [ring.gen(r + b) for b in range(s)]
    right = [g.embed(ring, range(r, r + s)) for g in IB.generators] + [ring.gen(a) for a in range(r)]
    return Ideal(ring, tuple(left)), Ideal(ring, tuple(right))


def decompose_general(spec: JordanSpec) -> list:
    """Irredundant primary decomposition of the ideal of ``jordan_matrix(spec)``.

    Component (i, j) is q_{lambda_i, j} placed on the i-th variable block plus
    all variables of the other blocks.
    """
    n = spec.size
    ring = Ring.flat(n)
    offsets = spec.offsets()
    out = []
    for e, (lam, blocks) in enumerate(spec.eigenvalues):
        L = LambdaSet(blocks)
        off = offsets[e]
        local = list(range(off, off + len(L)))
        others = [v for v in range(n) if v < off or v >= off + len(L)]
        p = [ring.gen(v) for v in others]
        for rep in components_single(JordanSpec.single(lam, blocks)):
            gens = tuple(g.embed(ring, local) for g in rep.generators.generators) + tuple(p)
            rad = tuple(g.embed(ring, local) for g in rep.radical.generators) + tuple(p)
            out.append(ComponentReport(Fraction(lam), rep.j, Ideal(ring, gens), Ideal(ring, rad),
                                       rep.dimension, rep.degree, rep.hilbert_coeffs, e))
    return out


def generalized_eigenspace_forms(spec: JordanSpec, e: int) -> list:
    """Coefficient vectors of the variables generating p_e."""
    n = spec.size
    off = spec.offsets()[e]
    xi = spec.xi(e)
    return [tuple(Fraction(int(v == w)) for w in range(n))
            for v in range(n) if v < off or v >= off + xi]


def diagonalizable_via_ideal(A: QMatrix) -> bool:
    """Whether ``I_A`` is radical, tested against the intersection of the
    eigenspaces' linear ideals (the radical when the spectrum is rational)."""
    spectrum = oracle.rational_spectrum(A)  # raises UnsupportedFieldError
    ring = Ring.flat(A.rows)
    IA = eigenscheme_ideal(A, ring)
    spaces = oracle.eigenspaces(A)
    pieces = []
    for lam, _ in spectrum:
        forms = span_complement(spaces[lam], A.rows)
        pieces.append(Ideal(ring, tuple(linear_form(ring, f) for f in forms)))
    candidate = intersect_all(pieces)
    return ideal_equal(IA, candidate)


# -- single block curvilinear structure ----------------------------------------

def hankel_minors(r: int, columns: Optional[int] = None) -> Ideal:
    """2x2 minors of [[x1 .. x_r], [x2 .. x_r, 0]] restricted to the first
    ``columns`` columns (all by default)."""
    ring = Ring.flat(r)
    xs = ring.gens()
    c = r if columns is None else columns
    top = xs[:c]
    bottom = (xs[1:] + [ring.zero()])[:c]
    gens = [top[a] * bottom[b] - top[b] * bottom[a] for a in range(c) for b in range(a + 1, c)]
    return Ideal(ring, tuple(gens))



# -- matrices that are not in Jordan form --------------------------------------

def _canonical(I: Ideal) -> Ideal:
    return buchberger(I).ideal()


def decompose_matrix(A: QMatrix, verify: bool = True) -> tuple:
    """``(spec, C, reports)`` for a matrix with rational spectrum.

    With ``C^-1 A C = J`` from the oracle, the components of ``I_J`` are
    pulled back along ``C^-1`` and returned as reduced Groebner bases. When
    ``verify`` is set their intersection is checked against ``I_A``.
    """
    spec, C = oracle.jordan_basis(A)
    Cinv = C.inverse()
    reports = []
    for rep in decompose_general(spec):
        reports.append(replace(rep,
                               generators=_canonical(transport(rep.generators, Cinv)),
                               radical=_canonical(transport(rep.radical, Cinv))))
    if verify:
        meet = intersect_all([rep.generators for rep in reports])
        if not ideal_equal(meet, eigenscheme_ideal(A)):
            raise InconsistencyError("components do not intersect to the eigenscheme ideal")
    return spec, C, reports
