"""Growing codes by one length and one dimension.

Three routes are provided:

* ``extend_by_deep_hole``: the code generated by ``[[G, 0], [u, 1]]``;
* ``second_kind_extend``: append the coordinate ``<c, u>`` to every codeword,
  i.e. the generator ``[G | G u^T]``; the dual path
  ``dual(second_kind_extend(dual(C), u))`` matches the first route up to
  the sign of the last coordinate;
* ``mkz_check``: a column/hyperplane test deciding when the second-kind
  extension of an NMDS code stays NMDS, with a field-operation counter.

``algorithm1`` walks the polynomial parameter grid of an ESGRS code and
emits the extended codes that the closed-form deep-hole tests accept.
"""

from __future__ import annotations

import itertools
import math
import random
import warnings
from collections import OrderedDict
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .code import (
    CodeClass,
    LinearCode,
    Tag,
    classify,
    dual,
    message_block,
    parity_check,
    shorten,
    span,
)
from .constructions import EvalConfig, esgrs, is_zero_sum_free
from .covering import build_syndrome_table, error_distance
from .criteria import (
    _sums_cached,
    candidate_vector,
    class1_delta,
    forbidden_set,
)
from .errors import BadDimension, LengthMismatch, MismatchDetected, NotNmds, TooLarge
from .field import Poly
from .matrix import Matrix, nullspace_array, rank_array


class HypothesisWarning(UserWarning):
    """The base code or vector does not meet the extension theorem's assumptions."""


def _vector(C: LinearCode, u) -> np.ndarray:
    v = np.asarray(u if isinstance(u, np.ndarray) else C.field.coerce_all(u), dtype=np.int64)
    if v.ndim != 1 or v.size != C.n:
        raise LengthMismatch(f"vector of length {v.size} for a length-{C.n} code")
    return v


# -- row extension ---------------------------------------------------------------

@dataclass(frozen=True)
class ExtensionResult:
    base: LinearCode
    u: tuple[int, ...]
    extended: LinearCode
    base_class: CodeClass | None
    extended_class: CodeClass | None
    nongrs_inherited: bool
    rho: int | None = None
    error_distance: int | None = None

    @property
    def tag_preserved(self) -> bool:
        if self.base_class is None or self.extended_class is None:
            raise ValueError("classes were not computed")
        return self.base_class.tag == self.extended_class.tag


def row_extension(C: LinearCode, u) -> LinearCode:
    """The code generated by [[G, 0], [u, 1]]."""
    v = _vector(C, u)
    G = np.hstack([C.gen.a, np.zeros((C.k, 1), dtype=np.int64)])
    bottom = np.concatenate([v, [1]])[None, :]
    return span(C.field, np.vstack([G, bottom]), C.n + 1)


def extend_by_deep_hole(C: LinearCode, u, check: bool = True) -> ExtensionResult:
    """Extend C by the row (u, 1) and classify both codes.

    When ``check`` is set and a syndrome table is affordable, the covering
    radius and d(u, C) are computed; a :class:`HypothesisWarning` is issued if
    rho != n - k or u is not a deep hole, and the code is built anyway.
    """
    v = _vector(C, u)
    ext = row_extension(C, v)
    if shorten(ext, C.n) != C:
        raise MismatchDetected("shortening the extension at the new coordinate did not give back C")
    rho = dist = None
    hyp = False
    if check:
        try:
            T = build_syndrome_table(C)
        except TooLarge:
            warnings.warn("syndrome table too large; extension hypotheses not checked", HypothesisWarning, stacklevel=2)
        else:
            rho, dist = T.rho, error_distance(T, v)
            hyp = rho == C.n - C.k and dist == rho
            if rho != C.n - C.k:
                warnings.warn(
                    f"covering radius {rho} differs from n-k = {C.n - C.k}; class may not be preserved",
                    HypothesisWarning,
                    stacklevel=2,
                )
            elif dist != rho:
                warnings.warn(f"u is at distance {dist} < rho = {rho}, not a deep hole", HypothesisWarning, stacklevel=2)
    return ExtensionResult(C, tuple(int(x) for x in v), ext, classify(C), classify(ext), hyp, rho, dist)


# -- second-kind extension ----------------------------------------------------------

def second_kind_extend(C: LinearCode, u) -> LinearCode:
    """Append c_{n+1} = sum c_i u_i; generator [G | G u^T]."""
    v = _vector(C, u)
    w = C.field.matmul(C.gen.a, v[:, None]) if C.k else np.zeros((0, 1), dtype=np.int64)
    return span(C.field, np.hstack([C.gen.a, w]), C.n + 1)


def second_kind_parity(C: LinearCode, u) -> Matrix:
    """[[H, 0], [u, -1]], a parity-check matrix of the second-kind extension."""
    v = _vector(C, u)
    F = C.field
    H = parity_check(C).a
    top = np.hstack([H, np.zeros((H.shape[0], 1), dtype=np.int64)])
    bottom = np.concatenate([v, [F.neg(1)]])[None, :]
    return Matrix(F, np.vstack([top, bottom]))


def dual_path_extend(C: LinearCode, u) -> LinearCode:
    """dual(second_kind_extend(dual(C), u)), generated by [[G, 0], [u, -1]]."""
    return dual(second_kind_extend(dual(C), u))


# -- MKZ criterion --------------------------------------------------------------------

@dataclass(frozen=True)
class MkzReport:
    cond1: bool
    cond2: bool
    ops_count: int
    verdict: bool
    early_exit: bool = False


_MKZ_CACHE: "OrderedDict[tuple, tuple[bool, bool, int, bool]]" = OrderedDict()
_MKZ_CACHE_SIZE = 1 << 16


def _mkz_from_w(C: LinearCode, w: np.ndarray) -> tuple[bool, bool, int, bool]:
    """(cond1, cond2, ops, early_exit) for w = G u^T."""
    F, n, k = C.field, C.n, C.k
    G = C.gen.a
    ops = [0]
    if not np.any(w):
        return False, False, 0, True
    cond1 = True
    wc = w[:, None]
    for sub in itertools.combinations(range(n), k - 2):
        block = np.hstack([G[:, list(sub)], wc])
        if rank_array(F, block, ops) != k - 1:
            cond1 = False
            break
    # nonzero v with <v, w> = 0: all combinations of a hyperplane basis
    B = nullspace_array(F, w[None, :])
    q = F.q
    coeffs = message_block(q, k - 1, 1, q ** (k - 1))
    V = F.matmul(coeffs, B)
    ops[0] += V.shape[0] * k * (2 * (k - 1) - 1)
    prods = F.matmul(V, G)
    ops[0] += V.shape[0] * n * (2 * k - 1)
    hits = np.count_nonzero(prods == 0, axis=1)
    cond2 = bool(hits.max() <= k - 1) if hits.size else True
    return cond1, cond2, ops[0], False


def mkz_check(C: LinearCode, u) -> MkzReport:
    """Decide whether the second-kind extension of the NMDS code C by u is NMDS.

    cond1: any k-2 columns of G together with w = G u^T are independent.
    cond2: for every nonzero v with <v, w> = 0, at most k-1 columns of G lie
    on the hyperplane v^perp.  Both depend on u only through w, so results
    are memoized per (code, w).
    """
    v = _vector(C, u)
    if classify(C).tag != Tag.NMDS:
        raise NotNmds(f"{C.params()} is not NMDS")
    k, n = C.k, C.n
    if not 2 <= k <= n - 2:
        raise BadDimension(f"need 2 <= k <= n-2, got k={k}, n={n}")
    F = C.field
    w = F.matmul(C.gen.a, v[:, None])[:, 0]
    w_ops = k * (2 * n - 1)
    key = (C, w.tobytes())
    hit = _MKZ_CACHE.get(key)
    if hit is None:
        hit = _mkz_from_w(C, w)
        _MKZ_CACHE[key] = hit
        if len(_MKZ_CACHE) > _MKZ_CACHE_SIZE:
            _MKZ_CACHE.popitem(last=False)
    c1, c2, ops, early = hit
    return MkzReport(c1, c2, ops + w_ops, c1 and c2, early)


def mkz_cost_bound(n: int, k: int, q: int, dual_path: bool = False, exhaustive: bool = True) -> int:
    """Bracketed cost of the MKZ verification, times q^n for the exhaustive search.

    Primal: C(n, k-2) k (k-1)^2 + q^(k-1) n k.
    Dual path: C(n, k+2) (n-k) (n-k-1)^2 + q^(n-k-1) n (n-k).
    """
    if dual_path:
        r = n - k
        inner = math.comb(n, k + 2) * r * (r - 1) ** 2 + q ** (r - 1) * n * r
    else:
        inner = math.comb(n, k - 2) * k * (k - 1) ** 2 + q ** (k - 1) * n * k
    return inner * q ** n if exhaustive else inner


# -- Algorithm 1 ------------------------------------------------------------------------

@dataclass(frozen=True)
class Alg1Result:
    """One accepted grid point of the ESGRS extension search."""

    branch: int
    g_kp1: int
    g_km1: int
    f: tuple[int, ...]
    u_scalar: int
    delta: int | None
    result: ExtensionResult
    advertised: Tag
    advertised_d: int

    @property
    def bottom_row(self) -> tuple[int, ...]:
        return self.result.u + (1,)

    def to_json(self) -> dict:
        ext = self.result.extended
        ec = self.result.extended_class
        return {
            "branch": self.branch,
            "g_kp1": self.g_kp1,
            "g_km1": self.g_km1,
            "f": list(self.f),
            "u_scalar": self.u_scalar,
            "delta": self.delta,
            "bottom_row": list(self.bottom_row),
            "n": ext.n,
            "k": ext.k,
            "d": ec.d if ec else None,
            "class": ec.tag.value if ec else None,
            "advertised": self.advertised.value,
        }


def _axis(values: Sequence[int], fixed: Iterable[int] | None, rng: random.Random | None) -> list[int]:
    vals = list(values) if fixed is None else [int(x) for x in fixed]
    if rng is not None:
        rng.shuffle(vals)
    return vals


def algorithm1(
    cfg: EvalConfig,
    k: int,
    budget: int,
    *,
    seed: int | None = None,
    g_kp1_values: Iterable[int] | None = None,
    g_km1_values: Iterable[int] | None = None,
    f_values: Iterable[Sequence[int]] | None = None,
    u_values: Iterable[int] | None = None,
    verify: bool = True,
) -> Iterator[Alg1Result]:
    """Walk (g_{k+1}, g_{k-1}, f, u) and yield every accepted extension.

    ``budget`` caps the number of grid points examined.  ``f`` is given by
    its coefficients (f_0, ..., f_{k-2}, f_k).  Without ``seed`` the grid is
    visited in ascending order of each coordinate (g_{k+1} outermost); with a
    seed each axis is shuffled reproducibly.  The value filters restrict an
    axis to the listed values.  With ``verify`` every output is classified and
    checked against the advertised class, raising MismatchDetected on failure.
    """
    F = cfg.field
    C = esgrs(cfg, k)
    zsf = is_zero_sum_free(F, cfg.S, k)
    adv_tag = Tag.MDS if zsf else Tag.NMDS
    n = cfg.n
    adv_d = n - k + 2 if zsf else n - k + 1
    sums = _sums_cached(F, cfg.S, k)
    rng = random.Random(seed) if seed is not None else None
    elems = list(F.elements())
    ax_gp = _axis(elems, g_kp1_values, rng)
    ax_gm = _axis(elems, g_km1_values, rng)
    if f_values is None:
        ax_f = [tuple(t) for t in itertools.product(elems, repeat=k)]
    else:
        ax_f = [tuple(int(c) for c in t) for t in f_values]
        for t in ax_f:
            if len(t) != k:
                raise LengthMismatch(f"f needs {k} coefficients (f_0..f_{k-2}, f_k)")
    if rng is not None:
        rng.shuffle(ax_f)
    ax_u = _axis(elems, u_values, rng)
    steps = 0
    for gp in ax_gp:
        for gm in ax_gm:
            for fc in ax_f:
                f_k = fc[-1]
                for u in ax_u:
                    if steps >= budget:
                        return
                    steps += 1
                    branch, delta = _branch(F, cfg, k, gp, gm, f_k, u, sums)
                    if not branch:
                        continue
                    terms = {i: fc[i] for i in range(k - 1)}
                    terms[k] = f_k
                    terms[k - 1] = gm
                    terms[k + 1] = gp
                    g = Poly.from_terms(F, terms)
                    vec = candidate_vector(cfg, g, u)
                    ext = row_extension(C, vec)
                    if verify:
                        res = extend_by_deep_hole(C, vec, check=False)
                        ec = res.extended_class
                        if ec.tag != adv_tag or ec.d != adv_d or ext.k != k + 1:
                            raise MismatchDetected(
                                f"branch {branch} output {ec} differs from advertised {adv_tag.value} d={adv_d}"
                            )
                    else:
                        res = ExtensionResult(C, tuple(vec), ext, None, None, True)
                    yield Alg1Result(branch, gp, gm, fc, u, delta, res, adv_tag, adv_d)


def _branch(F, cfg: EvalConfig, k: int, gp: int, gm: int, f_k: int, u: int, sums) -> tuple[int, int | None]:
    """Which of the three acceptance branches fires (0 for none) and the delta used."""
    if gp == 0:
        if gm == 0:
            return 0, None
        delta = class1_delta(F, gm, f_k, u)
        if delta is None:
            return 1, None
        return (2, delta) if delta not in sums else (0, delta)
    c = F.sub(u, f_k)
    return (3, None) if gm not in forbidden_set(cfg, k, gp, c).L else (0, None)
