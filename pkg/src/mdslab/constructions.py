"""GRS-family constructions and the subset-sum predicates behind their MDS status."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .code import CodeClass, LinearCode, Tag, span
from .errors import BadDimension, BadInput, guard
from .field import ElementLike, FieldSpec

MAX_SUBSETS = 10 ** 7


@dataclass(frozen=True)
class EvalConfig:
    """Ordered evaluation points S = (a_1..a_n) with nonzero multipliers v."""

    field: FieldSpec
    S: tuple[int, ...]
    v: tuple[int, ...]

    def __post_init__(self):
        if len(self.S) != len(self.v):
            raise BadInput(f"|S|={len(self.S)} but |v|={len(self.v)}")
        if len(set(self.S)) != len(self.S):
            raise BadInput("evaluation points must be distinct")
        if any(x == 0 for x in self.v):
            raise BadInput("multipliers must be nonzero")
        if len(self.S) > self.field.q:
            raise BadInput("more evaluation points than field elements")

    @classmethod
    def make(cls, field: FieldSpec, S: Sequence[ElementLike], v: Sequence[ElementLike] | int | None = None) -> "EvalConfig":
        """``v`` may be omitted or given as the integer 1 for the all-ones vector."""
        pts = tuple(field.coerce_all(S))
        if v is None or (isinstance(v, int) and v == 1):
            mult = (1,) * len(pts)
        else:
            mult = tuple(field.coerce_all(v))
        return cls(field, pts, mult)

    @property
    def n(self) -> int:
        return len(self.S)


def _power_rows(cfg: EvalConfig, exponents: Sequence[int]) -> np.ndarray:
    F = cfg.field
    rows = []
    for e in exponents:
        rows.append([F.mul(vi, F.pow(a, e) if e else 1) for a, vi in zip(cfg.S, cfg.v)])
    return np.array(rows, dtype=np.int64).reshape(len(exponents), cfg.n)


def _unit_col(k: int, i: int, value: int = 1) -> np.ndarray:
    col = np.zeros((k, 1), dtype=np.int64)
    col[i, 0] = value
    return col


def grs(cfg: EvalConfig, k: int) -> LinearCode:
    """GRS_k(S, v): rows v * a^j for j < k."""
    if not 1 <= k <= cfg.n:
        raise BadDimension(f"GRS needs 1 <= k <= n, got k={k}, n={cfg.n}")
    return span(cfg.field, _power_rows(cfg, range(k)), cfg.n)


def egrs(cfg: EvalConfig, k: int) -> LinearCode:
    """GRS_k(S, v, inf): the GRS generator with the column e_k appended."""
    if not 1 <= k <= cfg.n:
        raise BadDimension(f"EGRS needs 1 <= k <= n, got k={k}, n={cfg.n}")
    G = np.hstack([_power_rows(cfg, range(k)), _unit_col(k, k - 1)])
    return span(cfg.field, G, cfg.n + 1)


def esgrs_generator(cfg: EvalConfig, k: int) -> np.ndarray:
    if not 3 <= k <= cfg.n - 2:
        raise BadDimension(f"ESGRS needs 3 <= k <= n-2, got k={k}, n={cfg.n}")
    exps = list(range(k - 1)) + [k]
    return np.hstack([_power_rows(cfg, exps), _unit_col(k, k - 1)])


def esgrs(cfg: EvalConfig, k: int) -> LinearCode:
    """The [n+1, k] extended subcode evaluating polynomials with no x^(k-1) term."""
    return span(cfg.field, esgrs_generator(cfg, k), cfg.n + 1)


def roth_lempel_generator(F: FieldSpec, S: Sequence[int], k: int, delta: int) -> np.ndarray:
    n = len(S)
    if not 3 <= k <= n <= F.q:
        raise BadDimension(f"Roth-Lempel needs 3 <= k <= n <= q, got k={k}, n={n}, q={F.q}")
    base = _power_rows(EvalConfig.make(F, S), range(k))
    extra = np.zeros((k, 2), dtype=np.int64)
    extra[k - 1, 0] = 1
    extra[k - 2, 1] = 1
    extra[k - 1, 1] = F.coerce(delta)
    return np.hstack([base, extra])


def roth_lempel(F: FieldSpec, S: Sequence[ElementLike], k: int, delta: ElementLike) -> LinearCode:
    """RL_{k,delta}(S), an [n+2, k] code."""
    pts = F.coerce_all(S)
    return span(F, roth_lempel_generator(F, pts, k, F.coerce(delta)), len(pts) + 2)


# -- subset-sum predicates ----------------------------------------------------------

def subset_sums(F: FieldSpec, S: Sequence[int], k: int) -> set[int]:
    """All values taken by sums of k distinct members of S."""
    n = len(S)
    if not 0 <= k <= n:
        return set()
    guard("k-subsets", math.comb(n, k), MAX_SUBSETS)
    if F.is_prime:
        p = F.p
        return {sum(c) % p for c in itertools.combinations(S, k)}
    return {F.sum(c) for c in itertools.combinations(S, k)}


def is_nk_delta_set(F: FieldSpec, S: Sequence[ElementLike], k: int, delta: ElementLike) -> bool:
    """True iff no k-subset of S sums to delta."""
    pts = F.coerce_all(S)
    if len(set(pts)) != len(pts):
        raise BadInput("S must consist of distinct elements")
    if not 1 <= k <= len(pts):
        raise BadDimension(f"need 1 <= k <= |S|, got k={k}")
    return F.coerce(delta) not in subset_sums(F, pts, k)


def is_zero_sum_free(F: FieldSpec, S: Sequence[ElementLike], k: int) -> bool:
    return is_nk_delta_set(F, S, k, 0)


def delta_values(F: FieldSpec, S: Sequence[ElementLike], k: int) -> list[int]:
    """Every delta for which S is an (n, k, delta)-set, ascending."""
    sums = subset_sums(F, F.coerce_all(S), k)
    return [x for x in F.elements() if x not in sums]


def esgrs_classify(cfg: EvalConfig, k: int) -> CodeClass:
    """Classification of the ESGRS code read off the zero-sum predicate."""
    if not 3 <= k <= cfg.n - 2:
        raise BadDimension(f"ESGRS needs 3 <= k <= n-2, got k={k}, n={cfg.n}")
    n = cfg.n
    if is_zero_sum_free(cfg.field, cfg.S, k):
        return CodeClass(Tag.MDS, n - k + 2, k + 1)
    return CodeClass(Tag.NMDS, n - k + 1, k)
