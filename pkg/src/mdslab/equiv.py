"""Monomial equivalence of small codes and non-GRS certification.

Two codes are monomially equivalent when one maps onto the other by a
coordinate permutation combined with nonzero coordinate scalings (field
automorphisms are not used).  A witness ``(perm, scale)`` means: for every
codeword ``a`` of A, the vector ``b`` with ``b[perm[j]] = scale[j] * a[j]``
is a codeword of B.

The search normalises a projective frame.  Pick k+1 columns of A's
generator in general position; there is a unique (up to scalar) matrix N_A
sending them to e_1, ..., e_k and the all-ones vector.  For every ordered
(k+1)-tuple of B's columns in general position build N_B the same way.  The
codes are equivalent through that frame iff the multisets of projective
points of N_A G_A and N_B G_B coincide.  Codes without such a frame fall back
to backtracking over column bijections.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .code import (
    LinearCode,
    dual,
    min_distance,
    schur_square,
    span,
    weight_distribution,
    hull_dimension,
    MAX_CODEWORDS,
)
from .constructions import EvalConfig, egrs, grs
from .errors import ShapeMismatch, TooLarge, guard
from .field import FieldSpec
from .matrix import nullspace_array, rank_array, solve_array

MAX_FRAMES = 10 ** 7
MAX_NODES = 10 ** 6


@dataclass(frozen=True)
class EquivWitness:
    perm: tuple[int, ...]
    scale: tuple[int, ...]
    found: bool
    note: str = ""

    @classmethod
    def none(cls, note: str = "") -> "EquivWitness":
        return cls((), (), False, note)

    def __bool__(self) -> bool:
        return self.found


def apply_monomial(C: LinearCode, perm: Sequence[int], scale: Sequence[int]) -> LinearCode:
    """The image code {b : b[perm[j]] = scale[j] a[j], a in C}."""
    F = C.field
    if sorted(perm) != list(range(C.n)) or len(scale) != C.n:
        raise ShapeMismatch("perm must be a permutation of the coordinates and scale must have length n")
    if any(F.coerce(s) == 0 for s in scale):
        raise ShapeMismatch("scalings must be nonzero")
    G = F.vmul(C.gen.a, np.array(scale, dtype=np.int64)[None, :])
    out = np.zeros_like(G)
    out[:, list(perm)] = G
    return span(F, out, C.n)


# -- invariants -------------------------------------------------------------------

def _safe(fn, *args):
    try:
        return fn(*args)
    except TooLarge:
        return None


def _wd(C: LinearCode):
    return tuple(weight_distribution(C)) if C.q ** C.k <= MAX_CODEWORDS // 10 else None


# cheapest first; each maps a code to a value preserved by monomial maps
INVARIANTS = (
    ("square_dim", lambda C: schur_square(C).k),
    ("dual_square_dim", lambda C: schur_square(dual(C)).k),
    ("hull_dim", lambda C: hull_dimension(C) if C.q <= 3 else None),
    ("weights", _wd),
    ("square_d", lambda C: _safe(min_distance, schur_square(C))),
    ("dual_square_d", lambda C: _safe(min_distance, schur_square(dual(C)))),
)


def invariant(C: LinearCode, name: str):
    """One named invariant, cached on the code (None when unaffordable)."""
    key = "inv:" + name
    if key not in C._cache:
        fn = dict(INVARIANTS)[name]
        C._cache[key] = fn(C)
    return C._cache[key]


def invariants(C: LinearCode) -> tuple:
    """All fast-rejection invariants.

    The hull dimension only counts for q <= 3: there every nonzero scalar
    squares to 1, while for larger q a diagonal scaling can change the hull.
    """
    return tuple(invariant(C, name) for name, _ in INVARIANTS)


def invariants_differ(A: LinearCode, B: LinearCode) -> bool:
    for name, _ in INVARIANTS:
        x, y = invariant(A, name), invariant(B, name)
        if x is not None and y is not None and x != y:
            return True
    return False


# -- projective frame machinery ------------------------------------------------------

def _normalize_points(F: FieldSpec, M: np.ndarray) -> np.ndarray:
    """Scale each column so its first nonzero entry is 1 (zero columns stay 0)."""
    M = np.asarray(M, dtype=np.int64)
    nz = M != 0
    has = nz.any(axis=0)
    first = np.argmax(nz, axis=0)
    lead = M[first, np.arange(M.shape[1])]
    lead = np.where(has, lead, 1)
    return F.vmul(M, F.vinv(lead)[None, :])


def _frame_matrix(F: FieldSpec, G: np.ndarray, tup: Sequence[int]) -> np.ndarray | None:
    """N with N G[:, tup[:k]] ~ e_i and N G[:, tup[k]] = 1, or None if not in general position."""
    k = G.shape[0]
    X = G[:, list(tup[:k])]
    Xinv = solve_array(F, X, np.eye(k, dtype=np.int64))
    if Xinv is None or rank_array(F, X) < k:
        return None
    c = F.matmul(Xinv, G[:, [tup[k]]])[:, 0]
    if np.any(c == 0):
        return None
    return F.vmul(F.vinv(c)[:, None], Xinv)


def _point_keys(F: FieldSpec, P: np.ndarray) -> list[tuple[int, ...]]:
    return [tuple(col) for col in P.T.tolist()]


def _first_frame(F: FieldSpec, G: np.ndarray) -> tuple[tuple[int, ...], np.ndarray] | None:
    k, n = G.shape
    for tup in itertools.combinations(range(n), k + 1):
        N = _frame_matrix(F, G, tup)
        if N is not None:
            return tup, N
    return None


def _witness_from_match(
    F: FieldSpec, PA: np.ndarray, PB: np.ndarray, NA: np.ndarray, NB: np.ndarray, GA: np.ndarray, GB: np.ndarray
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Pair equal projective points and read off the scalings."""
    n = GA.shape[1]
    pool: dict[tuple[int, ...], list[int]] = {}
    for j, key in enumerate(_point_keys(F, PB)):
        pool.setdefault(key, []).append(j)
    perm = [0] * n
    for j, key in enumerate(_point_keys(F, PA)):
        perm[j] = pool[key].pop()
    # M = NB^{-1} NA maps A's columns to multiples of B's: M a_j = mu_j b_perm(j)
    k = GA.shape[0]
    NBinv = solve_array(F, NB, np.eye(k, dtype=np.int64))
    MA = F.matmul(F.matmul(NBinv, NA), GA)
    scale = []
    for j in range(n):
        b = GB[:, perm[j]]
        i = int(np.flatnonzero(b)[0])
        mu = F.div(int(MA[i, j]), int(b[i]))
        scale.append(F.inv(mu))
    return tuple(perm), tuple(scale)


def _frame_search(A: LinearCode, B: LinearCode) -> EquivWitness | None:
    """Returns a witness, EquivWitness.none(), or None when A has no frame."""
    F, k, n = A.field, A.k, A.n
    GA, GB = A.gen.a, B.gen.a
    if np.any(~GA.any(axis=0)) or np.any(~GB.any(axis=0)):
        return None
    fa = _first_frame(F, GA)
    if fa is None:
        return None
    _, NA = fa
    PA = _normalize_points(F, F.matmul(NA, GA))
    target = sorted(_point_keys(F, PA))
    guard("frame tuples", math.perm(n, k + 1), MAX_FRAMES)
    for tup in itertools.permutations(range(n), k + 1):
        NB = _frame_matrix(F, GB, tup)
        if NB is None:
            continue
        PB = _normalize_points(F, F.matmul(NB, GB))
        if sorted(_point_keys(F, PB)) != target:
            continue
        perm, scale = _witness_from_match(F, PA, PB, NA, NB, GA, GB)
        if apply_monomial(A, perm, scale) == B:
            return EquivWitness(perm, scale, True, "frame")
    return EquivWitness.none("frame search exhausted")


# -- backtracking fallback ------------------------------------------------------------

def _scalings_for(F: FieldSpec, GA: np.ndarray, GB: np.ndarray, perm: Sequence[int]) -> tuple[int, ...] | None:
    """Nonzero lambda with M GA[:, j] = lambda_j GB[:, perm[j]] for some M, if any."""
    k, n = GA.shape
    # unknowns: M (row-major, k*k) then lambda (n); equations k*n
    rows = []
    for j in range(n):
        a = GA[:, j]
        b = GB[:, perm[j]]
        for i in range(k):
            r = np.zeros(k * k + n, dtype=np.int64)
            r[i * k:(i + 1) * k] = a
            r[k * k + j] = F.neg(int(b[i]))
            rows.append(r)
    basis = nullspace_array(F, np.array(rows, dtype=np.int64))
    if basis.shape[0] == 0:
        return None
    lam_basis = basis[:, k * k:]
    t = lam_basis.shape[0]
    guard("nullspace combinations", F.q ** t, 10 ** 5)
    for idx in range(1, F.q ** t):
        coeffs = np.array([(idx // F.q ** s) % F.q for s in range(t)], dtype=np.int64)
        lam = F.matmul(coeffs[None, :], lam_basis)[0]
        if np.all(lam != 0):
            return tuple(int(x) for x in lam)
    return None


def _backtrack(A: LinearCode, B: LinearCode) -> EquivWitness:
    F, k, n = A.field, A.k, A.n
    GA, GB = A.gen.a, B.gen.a
    ka = [tuple(c) for c in _normalize_points(F, GA).T.tolist()]
    kb = [tuple(c) for c in _normalize_points(F, GB).T.tolist()]
    zero_a = [not any(c) for c in ka]
    zero_b = [not any(c) for c in kb]
    nodes = [0]
    perm: list[int] = []
    used = [False] * n

    def rec(j: int) -> EquivWitness | None:
        nodes[0] += 1
        if nodes[0] > MAX_NODES:
            raise TooLarge("backtracking nodes", nodes[0], MAX_NODES)
        if j == n:
            lam = _scalings_for(F, GA, GB, perm)
            if lam is None:
                return None
            scale = tuple(F.inv(x) for x in lam)
            if apply_monomial(A, perm, scale) == B:
                return EquivWitness(tuple(perm), scale, True, "backtrack")
            return None
        for t in range(n):
            if used[t] or zero_a[j] != zero_b[t]:
                continue
            # a column repeated projectively in A must stay repeated in B
            ok = all((ka[i] == ka[j]) == (kb[perm[i]] == kb[t]) for i in range(j))
            if not ok:
                continue
            cols_a = list(range(j + 1))
            cols_b = perm + [t]
            if rank_array(F, GA[:, cols_a]) != rank_array(F, GB[:, cols_b]):
                continue
            used[t] = True
            perm.append(t)
            got = rec(j + 1)
            if got is not None:
                return got
            perm.pop()
            used[t] = False
        return None

    got = rec(0)
    return got if got is not None else EquivWitness.none("backtracking exhausted")


# -- public API -------------------------------------------------------------------------

def monomial_equivalent(A: LinearCode, B: LinearCode, use_invariants: bool = True) -> EquivWitness:
    """Search for a monomial map taking A onto B."""
    if A.field != B.field or A.n != B.n or A.k != B.k:
        raise ShapeMismatch(f"{A!r} and {B!r} have different parameters")
    if A == B:
        return EquivWitness(tuple(range(A.n)), (1,) * A.n, True, "identical")
    if A.k == 0 or A.k == A.n:
        return EquivWitness(tuple(range(A.n)), (1,) * A.n, True, "trivial")
    if use_invariants and invariants_differ(A, B):
        return EquivWitness.none("invariants differ")
    got = _frame_search(A, B)
    if got is not None:
        return got
    return _backtrack(A, B)


def _grs_candidates(F: FieldSpec, n: int, k: int) -> Iterator[tuple[str, tuple[int, ...], LinearCode]]:
    if n <= F.q:
        for S in itertools.combinations(F.elements(), n):
            yield "GRS", S, grs(EvalConfig.make(F, S), k)
    if 1 <= n - 1 <= F.q and k <= n - 1:
        for S in itertools.combinations(F.elements(), n - 1):
            yield "EGRS", S, egrs(EvalConfig.make(F, S), k)


def equivalent_to_some_grs(C: LinearCode) -> EquivWitness | None:
    """First GRS or EGRS code (all-ones multipliers) monomially equivalent to C, else None.

    Multipliers can be fixed to 1 because GRS_k(S, v) is the image of
    GRS_k(S, 1) under the diagonal scaling by v, and likewise for EGRS.
    """
    F, n, k = C.field, C.n, C.k
    total = (math.comb(F.q, n) if n <= F.q else 0) + (math.comb(F.q, n - 1) if n - 1 <= F.q else 0)
    guard("GRS candidates", total * math.perm(n, k + 1), MAX_FRAMES * 100)
    for kind, S, cand in _grs_candidates(F, n, k):
        w = monomial_equivalent(cand, C)
        if w.found:
            return EquivWitness(w.perm, w.scale, True, f"{kind} S={list(S)}")
    return None


def square_code_distinguisher(C: LinearCode) -> int:
    """Minimum distance of the Schur square of the dual of C."""
    return min_distance(schur_square(dual(C)))
