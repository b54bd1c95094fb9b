from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, strategies as st

import oracles
from mdslab.code import (
    classify,
    code_from_generator,
    codewords,
    min_distance,
    schur_square,
    weight_distribution,
)
from mdslab.constructions import EvalConfig, egrs, esgrs, grs, roth_lempel
from mdslab.equiv import (
    _backtrack,
    apply_monomial,
    equivalent_to_some_grs,
    invariants,
    monomial_equivalent,
    square_code_distinguisher,
)
from mdslab.errors import ShapeMismatch
from mdslab.field import field_from_q, field_new
from mdslab.matrix import Matrix

F3, F7, F11 = field_new(3), field_new(7), field_new(11)


@st.composite
def codes_and_maps(draw):
    F = draw(st.sampled_from([field_new(3), field_new(5), field_new(7), field_from_q(4), field_new(11)]))
    n = draw(st.integers(3, 6))
    k = draw(st.integers(1, n - 1))
    rows = draw(st.lists(st.lists(st.integers(0, F.q - 1), min_size=n, max_size=n), min_size=k, max_size=k))
    if not any(any(r) for r in rows):
        rows[0][0] = 1
    C = code_from_generator(Matrix.from_rows(F, rows))
    perm = draw(st.permutations(range(n)))
    scale = draw(st.lists(st.integers(1, F.q - 1), min_size=n, max_size=n))
    return C, perm, scale


def _check_witness(A, B, w):
    assert w.found
    assert apply_monomial(A, w.perm, w.scale) == B


def test_reflexive_identity_witness():
    C = esgrs(EvalConfig.make(F11, (3, 4, 5, 6, 7)), 3)
    w = monomial_equivalent(C, C)
    assert w.found and w.perm == tuple(range(6)) and set(w.scale) == {1}


def test_shape_mismatch():
    A = grs(EvalConfig.make(F7, (1, 2, 3, 4)), 2)
    B = grs(EvalConfig.make(F7, (1, 2, 3, 4, 5)), 2)
    with pytest.raises(ShapeMismatch):
        monomial_equivalent(A, B)


@given(codes_and_maps())
def test_random_monomial_images_are_found(case):
    C, perm, scale = case
    D = apply_monomial(C, perm, scale)
    assert invariants(C) == invariants(D)
    w = monomial_equivalent(C, D)
    _check_witness(C, D, w)
    back = monomial_equivalent(D, C)
    _check_witness(D, C, back)
    # preserved quantities on every witness
    assert classify(C).tag == classify(D).tag
    assert weight_distribution(C) == weight_distribution(D)
    assert min_distance(schur_square(C)) == min_distance(schur_square(D))


@given(codes_and_maps())
def test_backtracking_alone_finds_witness(case):
    C, perm, scale = case
    if C.n > 5:
        return
    D = apply_monomial(C, perm, scale)
    _check_witness(C, D, _backtrack(C, D))


def test_verdicts_match_exhaustive_oracle():
    ref = oracles.Gf(3)
    rng = np.random.default_rng(7)
    checked = 0
    for _ in range(30):
        A = code_from_generator(Matrix.from_rows(F3, rng.integers(0, 3, (2, 4)).tolist()))
        B = code_from_generator(Matrix.from_rows(F3, rng.integers(0, 3, (2, 4)).tolist()))
        if A.k != B.k:
            continue
        sa = {tuple(map(int, r)) for r in codewords(A)}
        sb = {tuple(map(int, r)) for r in codewords(B)}
        assert monomial_equivalent(A, B).found == oracles.monomially_equivalent(ref, sa, sb, 4)
        checked += 1
    assert checked >= 10


def test_worked_example_rl_equivalence():
    cfg = EvalConfig.make(F11, (3, 4, 5, 6, 7))
    C = esgrs(cfg, 3)
    from mdslab.extend import row_extension

    branch1 = row_extension(C, (7, 10, 5, 5, 1, 4))
    w = monomial_equivalent(branch1, roth_lempel(F11, (3, 4, 5, 6, 7), 4, 0))
    _check_witness(branch1, roth_lempel(F11, (3, 4, 5, 6, 7), 4, 0), w)
    c1 = row_extension(C, (7, 10, 5, 5, 1, 1))
    assert not any(monomial_equivalent(c1, roth_lempel(F11, (3, 4, 5, 6, 7), 4, d)).found for d in range(11))


def test_grs_detection():
    C = esgrs(EvalConfig.make(F11, (3, 4, 5, 6, 7)), 3)
    assert equivalent_to_some_grs(C) is None
    G = grs(EvalConfig.make(F7, (1, 3, 4, 6, 0), (2, 5, 1, 1, 3)), 3)
    H = apply_monomial(G, (4, 2, 0, 1, 3), (1, 6, 2, 3, 5))
    w = equivalent_to_some_grs(H)
    assert w is not None and w.note.startswith("GRS")
    E = egrs(EvalConfig.make(F7, (1, 2, 4, 5)), 2)
    w = equivalent_to_some_grs(E)
    assert w is not None


def test_square_code_distinguisher_examples():
    F = field_from_q(8)
    cfg = EvalConfig.make(F, list(F.elements()))
    assert square_code_distinguisher(esgrs(cfg, 6)) == 1
    assert square_code_distinguisher(egrs(cfg, 6)) >= 2
    rep = code_from_generator(Matrix.from_rows(F11, [[1] * 5]))
    assert min_distance(schur_square(rep)) == 5
    # the dual of a repetition code squares to the whole space
    assert square_code_distinguisher(rep) == 1
