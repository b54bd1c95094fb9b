from __future__ import annotations

import math
import warnings

import numpy as np
import pytest
from hypothesis import given, strategies as st

from mdslab.code import (
    Tag,
    classify,
    code_from_generator,
    dual,
    min_distance,
    shorten,
    span,
)
from mdslab.constructions import EvalConfig, esgrs, roth_lempel
from mdslab.covering import build_syndrome_table, enumerate_deep_holes
from mdslab.criteria import candidate_vector, class1_poly
from mdslab.equiv import monomial_equivalent
from mdslab.errors import BadDimension, LengthMismatch, NotNmds
from mdslab.extend import (
    HypothesisWarning,
    algorithm1,
    dual_path_extend,
    extend_by_deep_hole,
    mkz_check,
    mkz_cost_bound,
    row_extension,
    second_kind_extend,
    second_kind_parity,
)
from mdslab.field import Poly, field_new
from mdslab.matrix import Matrix

F2, F7, F11 = field_new(2), field_new(7), field_new(11)
HAMMING = [[int(c) for c in r] for r in ("10000111", "01001011", "00101101", "00011110")]
S4 = (3, 4, 5, 6, 7)


def test_counterexample_warns_and_builds():
    C = code_from_generator(Matrix.from_rows(F2, HAMMING))
    with pytest.warns(HypothesisWarning):
        res = extend_by_deep_hole(C, (0, 1, 1, 1, 0, 1, 0, 0))
    assert (res.extended.n, res.extended.k, res.extended_class.d) == (9, 5, 3)
    assert res.extended_class.tag == Tag.OTHER
    assert res.rho == 2 and res.error_distance == 2 and not res.nongrs_inherited
    with pytest.raises(LengthMismatch):
        extend_by_deep_hole(C, (1, 0))


def test_worked_example_extension():
    C = esgrs(EvalConfig.make(F11, S4), 3)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        res = extend_by_deep_hole(C, (7, 10, 5, 5, 1, 4))
    assert (res.extended.n, res.extended.k, res.extended_class.d) == (7, 4, 4)
    assert res.extended_class.tag == Tag.MDS and res.tag_preserved
    assert shorten(res.extended, 6) == C


def test_nmds_family_extension():
    cfg = EvalConfig.make(F7, (0, 1, 2, 3, 4))
    C = esgrs(cfg, 3)
    assert classify(C).tag == Tag.NMDS
    f = Poly(F7, (1, 2, 0, 5))
    vec = candidate_vector(cfg, class1_poly(F7, 3, 2, f), 5)  # u = f_k: always deep
    res = extend_by_deep_hole(C, vec)
    n, k = 5, 3
    assert (res.extended.n, res.extended.k, res.extended_class.d) == (n + 2, k + 1, n - k + 1)
    assert res.extended_class.tag == Tag.NMDS


def test_not_deep_hole_warns():
    C = esgrs(EvalConfig.make(F11, S4), 3)
    with pytest.warns(HypothesisWarning, match="not a deep hole"):
        extend_by_deep_hole(C, (0, 0, 0, 0, 0, 1))


def test_second_kind_zero_vector():
    C = esgrs(EvalConfig.make(F11, S4), 3)
    E = second_kind_extend(C, (0,) * 6)
    assert E.gen.a[:, -1].tolist() == [0, 0, 0] and shorten(E, 6) == C


def test_second_kind_parity_shape():
    C = esgrs(EvalConfig.make(F7, (0, 1, 2, 3, 4)), 3)
    rng = np.random.default_rng(1)
    for _ in range(10):
        u = rng.integers(0, 7, 6)
        H = second_kind_parity(C, u)
        assert dual(second_kind_extend(C, u)) == code_from_generator(H)


def test_mkz_examples():
    C = esgrs(EvalConfig.make(F7, (0, 1, 2, 3, 4)), 3)
    rep = mkz_check(C, (0,) * 6)
    assert not rep.cond1 and rep.early_exit and not rep.verdict
    with pytest.raises(NotNmds):
        mkz_check(esgrs(EvalConfig.make(F11, S4), 3), (0,) * 6)


def test_mkz_dimension_guard():
    # [4,1,3] over GF(3) is NMDS but k = 1 is outside the criterion's range
    C = code_from_generator(Matrix.from_rows(field_new(3), [[1, 1, 1, 0]]))
    assert classify(C).tag == Tag.NMDS
    with pytest.raises(BadDimension):
        mkz_check(C, (1, 0, 0, 0))


def test_mkz_cost_bound_examples():
    assert mkz_cost_bound(6, 3, 7) == 7 ** 6 * (72 + 882)
    assert mkz_cost_bound(6, 3, 7, exhaustive=False) == 954
    assert mkz_cost_bound(8, 2, 5, exhaustive=False) == 1 * 2 * 1 + 5 * 8 * 2
    primal = mkz_cost_bound(10, 7, 3, exhaustive=False)
    dual_b = mkz_cost_bound(10, 7, 3, dual_path=True, exhaustive=False)
    assert dual_b < primal
    assert dual_b == math.comb(10, 9) * 3 * 4 + 3 ** 2 * 10 * 3


def _example4_alg1(**kw):
    cfg = EvalConfig.make(F11, S4)
    return list(algorithm1(cfg, 3, 10 ** 6, g_kp1_values=[0], g_km1_values=[3], f_values=[(7, 10, 4)], **kw))


def test_algorithm1_worked_example_branches():
    out = _example4_alg1()
    rows = {r.u_scalar: r for r in out}
    assert set(rows) == {1, 3, 4, 8}
    assert rows[4].branch == 1 and rows[4].bottom_row == (7, 10, 5, 5, 1, 4, 1)
    assert {rows[u].branch for u in (1, 3, 8)} == {2}
    for r in out:
        ec = r.result.extended_class
        assert (r.result.extended.n, r.result.extended.k, ec.d, ec.tag) == (7, 4, 4, Tag.MDS)
    assert monomial_equivalent(rows[4].result.extended, roth_lempel(F11, S4, 4, 0)).found


def test_algorithm1_branch3():
    cfg = EvalConfig.make(F11, S4)
    out = list(algorithm1(cfg, 3, 10 ** 6, g_kp1_values=[2], g_km1_values=[8], f_values=[(2, 5, 3)]))
    rows = {r.u_scalar: r for r in out}
    assert rows[0].bottom_row == (2, 7, 4, 7, 1, 0, 1)
    assert rows[0].branch == 3 and 4 not in rows


def test_algorithm1_budget_and_determinism():
    cfg = EvalConfig.make(F11, S4)
    assert list(algorithm1(cfg, 3, 0)) == []
    kw = dict(g_kp1_values=[0, 1, 2], verify=False)
    a = [r.to_json() for r in algorithm1(cfg, 3, 3000, seed=5, **kw)]
    b = [r.to_json() for r in algorithm1(cfg, 3, 3000, seed=5, **kw)]
    assert a == b and a
    c = [r.to_json() for r in algorithm1(cfg, 3, 3000, seed=6, **kw)]
    assert a != c


def test_algorithm1_nmds_config():
    cfg = EvalConfig.make(F7, (0, 1, 2, 3, 4))
    out = list(algorithm1(cfg, 3, 4000, seed=0, g_km1_values=range(1, 7)))
    assert out
    for r in out:
        ec = r.result.extended_class
        assert ec.tag == Tag.NMDS and ec.d == 3 and r.advertised == Tag.NMDS


def test_algorithm1_outputs_match_exhaustive_deep_holes():
    """Every accepted candidate is a deep hole and the extension round-trips."""
    cfg = EvalConfig.make(F7, (0, 1, 2, 4, 5))
    C = esgrs(cfg, 3)
    T = build_syndrome_table(C)
    for r in algorithm1(cfg, 3, 3000, seed=2, g_km1_values=range(1, 7)):
        assert T.leader_weight[T.keys(np.array(r.result.u))[0]] == T.rho
        assert shorten(r.result.extended, C.n) == C


@given(st.data())
def test_dual_path_equivalent_to_row_extension(data):
    S = tuple(data.draw(st.lists(st.integers(0, 10), min_size=5, max_size=6, unique=True)))
    v = tuple(data.draw(st.lists(st.integers(1, 10), min_size=len(S), max_size=len(S))))
    C = esgrs(EvalConfig.make(F11, S, v), 3)
    holes = enumerate_deep_holes(C, limit=50)
    u = holes[data.draw(st.integers(0, len(holes) - 1))].vector
    A = dual_path_extend(C, u)
    B = extend_by_deep_hole(C, u).extended
    w = monomial_equivalent(A, B)
    assert w.found


def test_row_extension_is_span_of_block_matrix():
    C = esgrs(EvalConfig.make(F11, S4), 3)
    u = (7, 10, 5, 5, 1, 4)
    G = np.hstack([C.gen.a, np.zeros((3, 1), dtype=np.int64)])
    want = span(F11, np.vstack([G, np.array(u + (1,))[None, :]]), 7)
    assert row_extension(C, u) == want
    assert min_distance(want) == 4
