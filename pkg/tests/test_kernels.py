"""The compiled and pure-Python kernels must agree bit for bit."""
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyperdet import _backend, _kernels_py
from oracles import cofactor_det

BIG = 1 << 200


def square(size, elements):
    return st.lists(st.lists(elements, min_size=size, max_size=size), min_size=size, max_size=size)


matrices = st.integers(0, 7).flatmap(lambda m: square(m, st.integers(-20, 20)))
big_matrices = st.integers(1, 5).flatmap(lambda m: square(m, st.integers(-BIG, BIG)))


@given(matrices)
def test_backends_agree_small(rows):
    results = {name: mod.bareiss_det(rows) for name, mod in _backend.available_backends().items()}
    assert len(set(results.values())) == 1


@given(big_matrices)
def test_backends_agree_beyond_machine_words(rows):
    results = {name: mod.bareiss_det(rows) for name, mod in _backend.available_backends().items()}
    assert len(set(results.values())) == 1
    if len(rows) <= 3:
        assert results["python"] == cofactor_det(rows)


def test_kernel_against_cofactor(kernels):
    rng = random.Random(11)
    for _ in range(100):
        m = rng.randint(1, 5)
        rows = [[rng.randint(-9, 9) for _ in range(m)] for _ in range(m)]
        assert kernels.bareiss_det(rows) == cofactor_det(rows)


def test_kernel_edge_cases(kernels):
    assert kernels.bareiss_det([]) == 1
    assert kernels.bareiss_det([[0, 1], [1, 0]]) == -1  # needs a pivot swap
    assert kernels.bareiss_det([[0, 0], [5, 7]]) == 0
    assert kernels.bareiss_det([[1, 2, 3], [2, 4, 6], [1, 0, 1]]) == 0
    assert kernels.bareiss_det([[-(1 << 70)]]) == -(1 << 70)


@pytest.mark.parametrize("p", [2, 3, 10007, 1000003, (1 << 61) - 1])
def test_mod_p_kernels_agree(kernels, p):
    rng = random.Random(p)
    for _ in range(30):
        m = rng.randint(0, 9)
        rows = [[rng.randint(-50, 50) for _ in range(m)] for _ in range(m)]
        exact = _kernels_py.bareiss_det(rows) % p
        reduced = [[x % p for x in r] for r in rows]
        assert kernels.det_mod_p(reduced, p) == exact


def test_selected_backend_reported():
    assert _backend.BACKEND in ("compiled", "python")
    assert _backend.bareiss_det is _backend.available_backends()[_backend.BACKEND].bareiss_det
