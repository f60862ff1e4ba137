"""Buchberger's algorithm and the ideal operations built on it.

The engine works on raw ``{monomial: Fraction}`` dicts and converts back to
:class:`~eigenscheme.qpoly.Polynomial` at the boundary. Pairs are chosen by
the normal strategy (smallest lcm first) and pruned with the Gebauer-Moeller
installation of Buchberger's coprime and chain criteria.

Intersection and saturation use one auxiliary variable and an elimination
order, so everything runs on the same engine.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import DimensionError, GroebnerCapError, InvalidArgumentError
from .qpoly import GREVLEX, MonomialOrder, Polynomial, Ring, format_poly

DEFAULT_MAX_PAIRS = 5000


@dataclass(frozen=True)
class Ideal:
    """An ideal given by generators; zero generators are dropped."""

    ring: Ring
    generators: tuple = ()

    def __post_init__(self):
        gens = []
        for g in self.generators:
            if g.ring != self.ring:
                raise DimensionError(
                    f"generator {g} lives in {g.ring.names}, not {self.ring.names}"
                )
            if g:
                gens.append(g)
        object.__setattr__(self, "generators", tuple(gens))

    def is_zero(self) -> bool:
        return not self.generators

    def __add__(self, other: Ideal) -> Ideal:
        if other.ring != self.ring:
            raise DimensionError("ring mismatch in ideal sum")
        return Ideal(self.ring, self.generators + other.generators)

    def __mul__(self, other: Ideal) -> Ideal:
        if other.ring != self.ring:
            raise DimensionError("ring mismatch in ideal product")
        return Ideal(self.ring, tuple(f * g for f in self.generators for g in other.generators))

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def __str__(self):
        return "<" + ", ".join(map(str, self.generators)) + ">"


def unit_ideal(ring: Ring) -> Ideal:
    return Ideal(ring, (ring.one(),))


def variable_ideal(ring: Ring, indices: Iterable[int]) -> Ideal:
    return Ideal(ring, tuple(ring.gen(i) for i in sorted(set(indices))))


@dataclass(frozen=True)
class GroebnerBasis:
    """A Groebner basis; reduced bases are sorted by ascending leading monomial."""

    ring: Ring
    order: MonomialOrder
    elements: tuple
    reduced: bool = False

    def ideal(self) -> Ideal:
        return Ideal(self.ring, self.elements)

    def leading_monomials(self) -> list:
        return [g.leading_monomial(self.order) for g in self.elements]

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def lines(self) -> list:
        return [format_poly(g, self.order) for g in self.elements]


# -- raw engine -------------------------------------------------------------

def _divides(a, b):
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _coprime(a, b):
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


class _Basis:
    """Raw polynomials with cached leading data, indexed by insertion."""

    def __init__(self, key):
        self.key = key
        self.polys = []
        self.lms = []

    def add(self, p: dict) -> int:
        lm = max(p, key=self.key)
        c = p[lm]
        if c != 1:
            p = {m: v / c for m, v in p.items()}
        self.polys.append(p)
        self.lms.append(lm)
        return len(self.polys) - 1


def _normal_form(f: dict, polys, lms, active, key) -> dict:
    """Fully reduce ``f`` by the monic polynomials ``polys[i]`` for i in active."""
    f = dict(f)
    rem = {}
    while f:
        m = max(f, key=key)
        c = f[m]
        for i in active:
            lm = lms[i]
            if _divides(lm, m):
                shift = tuple(y - x for x, y in zip(lm, m))
                for gm, gc in polys[i].items():
                    t = tuple(a + b for a, b in zip(gm, shift))
                    v = f.get(t, 0) - c * gc
                    if v:
                        f[t] = v
                    else:
                        del f[t]
                break
        else:
            rem[m] = c
            del f[m]
    return rem


def _spoly(p, lp, q, lq):
    lcm = _lcm(lp, lq)
    sp = tuple(a - b for a, b in zip(lcm, lp))
    sq = tuple(a - b for a, b in zip(lcm, lq))
    out = {}
    for m, c in p.items():
        out[tuple(a + b for a, b in zip(m, sp))] = c
    for m, c in q.items():
        t = tuple(a + b for a, b in zip(m, sq))
        v = out.get(t, 0) - c
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return out


def _update(basis: _Basis, G: list, B: list, h: int):
    """Gebauer-Moeller update of the working basis G and pair list B with h."""
    lms = basis.lms
    lh = lms[h]
    C = [(g, _lcm(lh, lms[g])) for g in G]
    D = []
    while C:
        g1, l1 = C.pop()
        if _coprime(lh, lms[g1]) or not any(_divides(l2, l1) for _, l2 in C + D):
            D.append((g1, l1))
    E = [(h, g, l) for g, l in D if not _coprime(lh, lms[g])]
    B_new = []
    for g1, g2, l in B:
        if _divides(lh, l) and _lcm(lms[g1], lh) != l and _lcm(lh, lms[g2]) != l:
            continue
        B_new.append((g1, g2, l))
    B_new.extend(E)
    G_new = [g for g in G if not _divides(lh, lms[g])]
    G_new.append(h)
    return G_new, B_new


def _interreduce(basis: _Basis, G: list, key) -> list:
    """Reduced basis (monic, minimal, fully reduced) as raw dicts sorted ascending."""
    lms = basis.lms
    G = [g for g in G if not any(h != g and _divides(lms[h], lms[g]) for h in G)]
    G.sort(key=lambda g: key(lms[g]))
    out = []
    for g in G:
        others = [h for h in G if h != g]
        tail = dict(basis.polys[g])
        lm = lms[g]
        lc = tail.pop(lm)
        red = _normal_form(tail, basis.polys, lms, others, key)
        red[lm] = lc
        out.append({m: v / lc for m, v in red.items()})
    return out


def _buchberger_raw(gens, key, max_pairs):
    basis = _Basis(key)
    G: list = []
    B: list = []
    # seed with generators in ascending order of leading monomial
    for f in sorted(gens, key=lambda p: key(max(p, key=key))):
        f = _normal_form(f, basis.polys, basis.lms, G, key)
        if f:
            h = basis.add(f)
            G, B = _update(basis, G, B, h)
    processed = 0
    while B:
        # normal strategy: smallest lcm first; index tie-break keeps runs deterministic
        best = min(range(len(B)), key=lambda k: (key(B[k][2]), B[k][0], B[k][1]))
        g1, g2, _ = B.pop(best)
        processed += 1
        if processed > max_pairs:
            raise GroebnerCapError(
                f"Buchberger aborted after {max_pairs} S-pairs; raise max_pairs to continue"
            )
        s = _spoly(basis.polys[g1], basis.lms[g1], basis.polys[g2], basis.lms[g2])
        h = _normal_form(s, basis.polys, basis.lms, G, key)
        if h:
            idx = basis.add(h)
            G, B = _update(basis, G, B, idx)
    return _interreduce(basis, G, key)


@lru_cache(maxsize=4096)
def _cached_gb(ring: Ring, gens: frozenset, order: MonomialOrder, max_pairs: int):
    raw = [g._terms for g in gens]
    reduced = _buchberger_raw(raw, order.key, max_pairs)
    return tuple(Polynomial._raw(ring, p) for p in reduced)


# -- public API ---------------------------------------------------------------

def _as_ideal(I) -> Ideal:
    if isinstance(I, Ideal):
        return I
    if isinstance(I, GroebnerBasis):
        return I.ideal()
    raise TypeError(f"expected an Ideal, got {type(I).__name__}")


def buchberger(I: Ideal, order: MonomialOrder = GREVLEX,
               max_pairs: int = DEFAULT_MAX_PAIRS) -> GroebnerBasis:
    """The reduced Groebner basis of ``I``; unique for the pair (ideal, order)."""
    I = _as_ideal(I)
    elements = _cached_gb(I.ring, frozenset(I.generators), order, max_pairs)
    return GroebnerBasis(I.ring, order, elements, reduced=True)


def interreduce(polys: Sequence[Polynomial], order: MonomialOrder = GREVLEX,
                ring: Ring | None = None) -> GroebnerBasis:
    """Auto-reduce ``polys`` without adding S-polynomials.

    The result is the reduced Groebner basis when ``polys`` already is a
    Groebner basis; it is flagged ``reduced`` only in that sense.
    """
    polys = [p for p in polys if p]
    if not polys:
        if ring is None:
            raise InvalidArgumentError("nothing to interreduce and no ring given")
        return GroebnerBasis(ring, order, (), reduced=True)
    ring = ring or polys[0].ring
    basis = _Basis(order.key)
    for p in polys:
        if p.ring != ring:
            raise DimensionError("ring mismatch in interreduce")
        basis.add(p._terms)
    active = list(range(len(basis.polys)))
    # drop exact duplicates of leading monomials, keeping the first
    seen, G = set(), []
    for g in active:
        if basis.lms[g] not in seen:
            seen.add(basis.lms[g])
            G.append(g)
    raw = _interreduce(basis, G, order.key)
    return GroebnerBasis(ring, order, tuple(Polynomial._raw(ring, p) for p in raw), reduced=True)


def reduce(f: Polynomial, G: Sequence[Polynomial], order: MonomialOrder = GREVLEX) -> Polynomial:
    """Normal form of ``f`` under division by ``G`` (need not be a Groebner basis)."""
    if isinstance(G, GroebnerBasis):
        order = G.order
        G = G.elements
    for g in G:
        if g.ring != f.ring:
            raise DimensionError("ring mismatch in reduce")
    basis = _Basis(order.key)
    for g in G:
        if g:
            basis.add(g._terms)
    active = list(range(len(basis.polys)))
    rem = _normal_form(f._terms, basis.polys, basis.lms, active, order.key)
    return Polynomial._raw(f.ring, rem)


def member(f: Polynomial, I: Ideal, order: MonomialOrder = GREVLEX) -> bool:
    I = _as_ideal(I)
    if f.ring != I.ring:
        raise DimensionError("ring mismatch in member")
    if not f:
        return True
    return not reduce(f, buchberger(I, order))


def contains(I: Ideal, J: Ideal) -> bool:
    """Whether ``J`` is a subset of ``I``."""
    G = buchberger(_as_ideal(I))
    return all(not reduce(g, G) for g in _as_ideal(J).generators)


def ideal_equal(I: Ideal, J: Ideal, order: MonomialOrder = GREVLEX) -> bool:
    I, J = _as_ideal(I), _as_ideal(J)
    if I.ring != J.ring:
        raise DimensionError("ring mismatch in ideal_equal")
    return buchberger(I, order).elements == buchberger(J, order).elements


def eliminate(I: Ideal, k: int, max_pairs: int = DEFAULT_MAX_PAIRS) -> Ideal:
    """``I`` intersected with the subring of all but the first ``k`` variables.

    The result lives in the ring of the remaining variables and its generators
    form a reduced grevlex Groebner basis there.
    """
    I = _as_ideal(I)
    ring = I.ring
    sub = Ring(ring.names[k:])
    order = MonomialOrder.elimination(k)
    gb = buchberger(I, order, max_pairs)
    kept = []
    for g in gb.elements:
        if all(not any(m[:k]) for m in g._terms):
            kept.append(Polynomial._raw(sub, {m[k:]: c for m, c in g._terms.items()}))
    return Ideal(sub, tuple(kept))


def _aux_ring(ring: Ring, stem: str) -> Ring:
    name = stem
    while name in ring.names:
        name += "_"
    return ring.extend([name])


def _lift(ring: Ring, big: Ring, p: Polynomial) -> Polynomial:
    return p.embed(big, range(1, ring.nvars + 1))


def intersect(I: Ideal, J: Ideal, max_pairs: int = DEFAULT_MAX_PAIRS) -> Ideal:
    """``I`` intersected with ``J``, via elimination of t from <t*I, (1-t)*J>."""
    I, J = _as_ideal(I), _as_ideal(J)
    if I.ring != J.ring:
        raise DimensionError("ring mismatch in intersect")
    ring = I.ring
    if I.is_zero() or J.is_zero():
        return Ideal(ring, ())
    big = _aux_ring(ring, "t")
    t = big.gen(0)
    gens = [t * _lift(ring, big, f) for f in I.generators]
    gens += [(1 - t) * _lift(ring, big, g) for g in J.generators]
    return eliminate(Ideal(big, tuple(gens)), 1, max_pairs)


def intersect_all(ideals: Sequence[Ideal], max_pairs: int = DEFAULT_MAX_PAIRS) -> Ideal:
    ideals = list(ideals)
    if not ideals:
        raise InvalidArgumentError("need at least one ideal to intersect")
    acc = ideals[0]
    for J in ideals[1:]:
        acc = intersect(acc, J, max_pairs)
    return acc


def colon(I: Ideal, f: Polynomial, max_pairs: int = DEFAULT_MAX_PAIRS) -> Ideal:
    """Ideal quotient ``I : f``, computed as ``(I n <f>) / f``."""
    I = _as_ideal(I)
    if f.ring != I.ring:
        raise DimensionError("ring mismatch in colon")
    if not f:
        raise InvalidArgumentError("quotient by the zero polynomial")
    meet = intersect(I, Ideal(I.ring, (f,)), max_pairs)
    return Ideal(I.ring, tuple(g.exact_div(f) for g in meet.generators))


def colon_sat(I: Ideal, f: Polynomial, max_pairs: int = DEFAULT_MAX_PAIRS) -> Ideal:
    """Saturation ``I : f^oo`` via elimination of y from <I, 1 - y*f>."""
    I = _as_ideal(I)
    if f.ring != I.ring:
        raise DimensionError("ring mismatch in colon_sat")
    if not f:
        raise InvalidArgumentError("cannot saturate with respect to the zero polynomial")
    ring = I.ring
    big = _aux_ring(ring, "y")
    y = big.gen(0)
    gens = [_lift(ring, big, g) for g in I.generators]
    gens.append(1 - y * _lift(ring, big, f))
    return eliminate(Ideal(big, tuple(gens)), 1, max_pairs)


def saturate_irrelevant(I: Ideal, max_pairs: int = DEFAULT_MAX_PAIRS) -> Ideal:
    """``I : m^oo`` for the ideal m of all variables, as an intersection of
    the saturations by each single variable."""
    I = _as_ideal(I)
    ring = I.ring
    if I.is_zero():
        return I
    parts = [colon_sat(I, x, max_pairs) for x in ring.gens()]
    return intersect_all(parts, max_pairs)


def linear_part(I: Ideal) -> list:
    """Degree-one elements of the reduced grevlex basis of ``I``."""
    return [g for g in buchberger(I).elements if g.total_degree() == 1]
