"""Spec lattices and random generators shared by the test modules."""

import itertools
import random

from eigenscheme.eigenideal import JordanSpec
from eigenscheme.matrix import QMatrix


def block_lists(max_size, max_ell=3, max_k=3, max_r=5):
    """Block lists ((r_1, k_1), ...) with r strictly decreasing."""
    out = []
    for ell in range(1, max_ell + 1):
        for sizes in itertools.combinations(range(max_r, 0, -1), ell):
            for mults in itertools.product(range(1, max_k + 1), repeat=ell):
                blocks = tuple(zip(sizes, mults))
                if sum(r * k for r, k in blocks) <= max_size:
                    out.append(blocks)
    return out


def single_lattice():
    """Single-eigenvalue specs with l <= 3, k_j <= 3, r_j <= 5, size <= 10."""
    return [JordanSpec.single(0, b) for b in block_lists(10)]


def multi_lattice(max_size=9):
    """Specs with two or three eigenvalues and total size <= max_size.

    The ideal only sees which block list goes with which variable block, so
    block lists are taken as multisets and the eigenvalues fixed to 0, 1, 2.
    """
    lists = block_lists(max_size)
    size = lambda b: sum(r * k for r, k in b)  # noqa: E731
    out = []
    for n in (2, 3):
        for combo in itertools.combinations_with_replacement(lists, n):
            if sum(map(size, combo)) <= max_size:
                out.append(JordanSpec(tuple((lam, b) for lam, b in enumerate(combo))))
    return out


def random_spec(rng: random.Random, max_size=9, eigen_range=(-3, 3)) -> JordanSpec:
    while True:
        n = rng.randint(1, 3)
        lams = rng.sample(range(eigen_range[0], eigen_range[1] + 1), n)
        eig = []
        for lam in lams:
            ell = rng.randint(1, 2)
            sizes = sorted(rng.sample(range(1, 5), ell), reverse=True)
            eig.append((lam, tuple((r, rng.randint(1, 2)) for r in sizes)))
        spec = JordanSpec(tuple(eig))
        if spec.size <= max_size:
            return spec


def unimodular(rng: random.Random, n: int) -> QMatrix:
    """Integer matrix of determinant 1 with small entries."""
    U = [[int(i == j) if i >= j else rng.randint(-1, 1) for j in range(n)] for i in range(n)]
    L = [[int(i == j) if i <= j else rng.randint(-1, 1) for j in range(n)] for i in range(n)]
    return QMatrix.from_rows(U) @ QMatrix.from_rows(L)
