"""Acceptance criteria 1-8.

Each test carries ``@pytest.mark.acceptance(n)``; conftest prints one
PASS/FAIL line per criterion at the end of the run. Runtime bounds are
asserted on a cold Groebner cache.
"""

import io
import json
import random
import time

import pytest

from eigenscheme import cli, oracle
from eigenscheme.eigenideal import JordanSpec, direct_sum, eigenscheme_ideal, jordan_matrix
from eigenscheme.formats import format_matrix
from eigenscheme.groebner import (Ideal, _cached_gb, buchberger, ideal_equal, intersect,
                                  linear_part, saturate_irrelevant)
from eigenscheme.hilbert import closed_form, hilbert_function, measured_report, reconstruct_jordan
from eigenscheme.jordanstruct import (LambdaSet, basis_G, component_ideal, decompose_general,
                                      decompose_matrix, diagonalizable_via_ideal, ideal_single,
                                      phi_matrix, split_components)
from eigenscheme.matrix import QMatrix
from eigenscheme.qpoly import Ring

from support import multi_lattice, random_spec, single_lattice, unimodular


@pytest.fixture
def clock():
    _cached_gb.cache_clear()
    start = time.perf_counter()
    return lambda: time.perf_counter() - start


def ring_gens(n):
    ring = Ring.flat(n)
    return ring, ring.gens()


# -- 1. worked examples ----------------------------------------------------------

@pytest.mark.acceptance(1)
def test_first_worked_matrix(clock):
    A = QMatrix.from_rows([[4, 0, 1], [2, 3, 2], [1, 0, 4]])
    ring, (x1, x2, x3) = ring_gens(3)
    left, right = Ideal(ring, (x1 + x3,)), Ideal(ring, (x2 - 2 * x3, x1 - x3))
    assert ideal_equal(eigenscheme_ideal(A), intersect(left, right))
    _, _, reps = decompose_matrix(A)
    assert ideal_equal(reps[0].generators, left)
    assert ideal_equal(reps[1].generators, right)
    assert clock() < 1


@pytest.mark.acceptance(1)
def test_second_worked_matrix(clock):
    A = QMatrix.from_rows([[2, 1, 1], [0, 1, 1], [0, 0, 1]])
    ring, (x1, x2, x3) = ring_gens(3)
    left, right = Ideal(ring, (x1 + x2 + 2 * x3, x3 ** 2)), Ideal(ring, (x2, x3))
    assert ideal_equal(eigenscheme_ideal(A), intersect(left, right))
    _, _, reps = decompose_matrix(A)
    assert ideal_equal(reps[0].generators, left)
    assert ideal_equal(reps[1].generators, right)
    assert clock() < 1


@pytest.mark.acceptance(1)
def test_direct_sum_example(clock):
    A = QMatrix.from_rows([[-1, 4], [-1, 3]])
    B = QMatrix.from_rows([[-7, 9], [-4, 5]])
    phi = phi_matrix(A, B)
    assert phi == QMatrix.from_rows([[6, -9, 4, 0], [4, -6, 0, 4], [-1, 0, 10, -9],
                                     [0, -1, 4, -2]])
    assert phi.det() == 16
    ring, (x1, x2, y1, y2) = ring_gens(4)
    left = Ideal(ring, ((-x1 + 2 * x2) ** 2, y1, y2))
    right = Ideal(ring, ((2 * y1 - 3 * y2) ** 2, x1, x2))
    assert ideal_equal(eigenscheme_ideal(direct_sum(A, B)), intersect(left, right))
    L_A, L_B = split_components(A, B)
    assert ideal_equal(L_A, left) and ideal_equal(L_B, right)
    assert clock() < 1


# -- 2. closed-form Groebner basis ------------------------------------------------

@pytest.mark.acceptance(2)
def test_closed_form_groebner_basis(clock):
    specs = single_lattice()
    assert len(specs) == 78
    for spec in specs:
        engine = buchberger(eigenscheme_ideal(jordan_matrix(spec)))
        assert basis_G(spec).elements == engine.elements, spec
    assert clock() < 60


# -- 3. decomposition identity and irredundancy ---------------------------------

def check_decomposition(spec):
    comps = [r.generators for r in decompose_general(spec)]
    target = eigenscheme_ideal(jordan_matrix(spec))
    m = len(comps)
    prefix = [comps[0]]
    for q in comps[1:]:
        prefix.append(intersect(prefix[-1], q))
    assert ideal_equal(prefix[-1], target), spec
    if m == 1:
        return
    suffix = [None] * m
    suffix[-1] = comps[-1]
    for i in range(m - 2, -1, -1):
        suffix[i] = intersect(comps[i], suffix[i + 1])
    for i in range(m):
        if i == 0:
            others = suffix[1]
        elif i == m - 1:
            others = prefix[m - 2]
        else:
            others = intersect(prefix[i - 1], suffix[i + 1])
        assert not ideal_equal(others, target), (spec, i)


@pytest.mark.acceptance(3)
def test_decomposition_identity(clock):
    specs = single_lattice() + multi_lattice(9)
    for spec in specs:
        check_decomposition(spec)
    assert clock() < 300


# -- 4. Hilbert closed form -------------------------------------------------------

@pytest.mark.acceptance(4)
def test_hilbert_closed_form():
    for spec in single_lattice():
        L = LambdaSet.of(spec)
        for j in range(1, L.ell + 1):
            h = hilbert_function(component_ideal(spec, j), 8)
            for t in range(1, 9):
                assert h[t] == closed_form(spec, j, t), (spec, j, t)


# -- 5. Jordan roundtrip ----------------------------------------------------------

@pytest.mark.acceptance(5)
def test_jordan_roundtrip_specs():
    rng = random.Random(2024)
    for _ in range(50):
        spec = random_spec(rng, max_size=9)
        reports = decompose_general(spec)
        assert reconstruct_jordan(reports) == spec
        # dimensions and degrees measured from Hilbert functions give the same answer
        assert reconstruct_jordan([measured_report(r) for r in reports]) == spec


@pytest.mark.acceptance(5)
def test_jordan_verb_on_conjugates(tmp_path):
    rng = random.Random(77)
    for k in range(50):
        spec = random_spec(rng, max_size=9)
        C = unimodular(rng, spec.size)
        A = C @ jordan_matrix(spec) @ C.inverse()
        path = tmp_path / f"m{k}.txt"
        path.write_text(format_matrix(A))
        out, err = io.StringIO(), io.StringIO()
        code = cli.main(["jordan", "--matrix", str(path), "--format", "json"], out, err)
        assert code == 0, err.getvalue()
        data = json.loads(out.getvalue())
        assert data["agree"]
        assert JordanSpec.from_data(data["oracle"]) == spec.canonical()


# -- 6. diagonalizability ---------------------------------------------------------

def diagonalizability_corpus(rng):
    corpus = []
    while len(corpus) < 50:
        n = rng.randint(2, 6)
        lams = [rng.randint(-3, 3) for _ in range(n)]
        counts = {lam: lams.count(lam) for lam in lams}
        spec = JordanSpec(tuple((lam, ((1, k),)) for lam, k in counts.items()))
        corpus.append((spec, True))
    while len(corpus) < 100:
        spec = random_spec(rng, max_size=6)
        if not spec.is_diagonal():
            corpus.append((spec, False))
    out = []
    for spec, diag in corpus:
        C = unimodular(rng, spec.size)
        out.append((C @ jordan_matrix(spec) @ C.inverse(), diag))
    return out


@pytest.mark.acceptance(6)
def test_diagonalizability_equivalence():
    corpus = diagonalizability_corpus(random.Random(606))
    assert sum(1 for _, d in corpus if d) == 50 and len(corpus) == 100
    for A, diag in corpus:
        assert oracle.diagonalizable_oracle(A) == diag
        assert diagonalizable_via_ideal(A) == diag


# -- 7. discriminant degree -------------------------------------------------------

@pytest.mark.acceptance(7)
def test_discriminant_degree(clock):
    for r in (2, 3, 4, 5):
        for seed in range(100, 105):
            assert oracle.discriminant_degree_experiment(r, seed) == r * (r - 1), (r, seed)
    assert clock() < 120


# -- 8. non-degeneracy ------------------------------------------------------------

@pytest.mark.acceptance(8)
def test_non_degeneracy():
    for spec in single_lattice():
        if spec.eigenvalues[0][1][0][0] < 2:
            continue
        assert linear_part(saturate_irrelevant(ideal_single(spec))) == [], spec
