"""Covering radius, error distance and deep holes from a complete syndrome table."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from .code import LinearCode, iter_codeword_blocks, message_block, parity_check
from .errors import LengthMismatch, guard
from .matrix import Matrix

MAX_SYNDROMES = 10 ** 7
MAX_VECTORS = 10 ** 8

CRITERIA = ("definition", "mds-extension", "class1", "class2")


@dataclass(frozen=True, eq=False)
class SyndromeTable:
    """Minimal coset weight (and one leader) for every syndrome.

    Syndromes are keyed by their radix-q integer encoding
    ``sum(s[i] * q**i)`` so the table is a dense array of length q^(n-k).
    """

    code: LinearCode
    parity: Matrix
    leader_weight: np.ndarray
    leaders: np.ndarray

    @property
    def rho(self) -> int:
        return int(self.leader_weight.max())

    def __len__(self) -> int:
        return self.leader_weight.size

    def keys(self, vectors: np.ndarray) -> np.ndarray:
        return syndrome_keys(self.code, self.parity.a, vectors)

    def weight_of(self, syndrome) -> int:
        s = np.asarray(syndrome, dtype=np.int64)
        return int(self.leader_weight[int(s @ _radix(self.code.q, s.size))])


@dataclass(frozen=True)
class DeepHoleReport:
    vector: tuple[int, ...]
    error_distance: int
    rho: int
    is_deep_hole: bool
    criterion: str = "definition"
    degenerate: bool = False


def _radix(q: int, r: int) -> np.ndarray:
    return q ** np.arange(r, dtype=np.int64)


def syndrome_keys(C: LinearCode, H: np.ndarray, vectors: np.ndarray) -> np.ndarray:
    v = np.asarray(vectors, dtype=np.int64).reshape(-1, C.n)
    r = H.shape[0]
    if r == 0:
        return np.zeros(v.shape[0], dtype=np.int64)
    s = C.field.matmul(v, H.T)
    return s @ _radix(C.q, r)


def build_syndrome_table(C: LinearCode) -> SyndromeTable:
    """Fill the table shell by shell in increasing weight.

    Within a shell, each support is handled in one vectorized step over all
    (q-1)^w nonzero value patterns.  The first weight at which a syndrome
    appears is its coset weight because shells are visited in weight order.
    """
    cached = C._cache.get("syndrome_table")
    if cached is not None:
        return cached
    q, n = C.q, C.n
    H = parity_check(C)
    r = H.rows
    total = q ** r
    guard("syndrome table", total, MAX_SYNDROMES)
    weight = np.full(total, -1, dtype=np.int16)
    leaders = np.zeros((total, n), dtype=np.int8 if q <= 127 else np.int64)
    weight[0] = 0
    seen = 1
    Ha = H.a
    radix = _radix(q, r)
    w = 0
    while seen < total:
        w += 1
        if w > n:
            raise AssertionError("syndrome table incomplete after all weights")
        patterns = message_block(q - 1, w, 0, (q - 1) ** w) + 1
        for supp in itertools.combinations(range(n), w):
            cols = list(supp)
            s = C.field.matmul(patterns, Ha[:, cols].T)
            keys = s @ radix
            fresh_keys, first = np.unique(keys, return_index=True)
            mask = weight[fresh_keys] < 0
            if not mask.any():
                continue
            fk = fresh_keys[mask]
            weight[fk] = w
            rows = np.zeros((fk.size, n), dtype=leaders.dtype)
            rows[:, cols] = patterns[first[mask]]
            leaders[fk] = rows
            seen += fk.size
            if seen == total:
                break
    weight.setflags(write=False)
    table = SyndromeTable(C, H, weight, leaders)
    C._cache["syndrome_table"] = table
    return table


def _as_vector(C: LinearCode, u) -> np.ndarray:
    v = np.asarray(u if isinstance(u, np.ndarray) else C.field.coerce_all(u), dtype=np.int64)
    if v.ndim != 1 or v.size != C.n:
        raise LengthMismatch(f"vector of length {v.size} for a length-{C.n} code")
    return v


def error_distance(T: SyndromeTable, u) -> int:
    """d(u, C): the coset weight of u's syndrome."""
    v = _as_vector(T.code, u)
    return int(T.leader_weight[T.keys(v)[0]])


def error_distances(T: SyndromeTable, vectors: np.ndarray) -> np.ndarray:
    """Vectorized d(u, C) for each row of ``vectors``."""
    v = np.asarray(vectors, dtype=np.int64)
    if v.ndim != 2 or v.shape[1] != T.code.n:
        raise LengthMismatch(f"expected rows of length {T.code.n}")
    return T.leader_weight[T.keys(v)].astype(np.int64)


def covering_radius(C: LinearCode) -> int:
    return build_syndrome_table(C).rho


def deep_hole_mask(C: LinearCode, vectors: np.ndarray) -> np.ndarray:
    T = build_syndrome_table(C)
    return error_distances(T, vectors) == T.rho


def iter_deep_holes(C: LinearCode) -> Iterator[np.ndarray]:
    """Every deep hole, coset by coset (syndrome-key order), then by codeword."""
    T = build_syndrome_table(C)
    deep = np.flatnonzero(T.leader_weight == T.rho)
    for key in deep:
        leader = T.leaders[key].astype(np.int64)
        for block in iter_codeword_blocks(C):
            yield from C.field.vadd(block, leader[None, :])


def enumerate_deep_holes(
    C: LinearCode,
    limit: int | None = None,
    candidates: Iterable | None = None,
) -> list[DeepHoleReport]:
    """Deep holes of C as reports, optionally capped at ``limit``.

    With ``candidates`` only those vectors are examined (and kept when deep);
    otherwise the whole deep-hole set is walked via coset leaders.
    """
    T = build_syndrome_table(C)
    rho = T.rho
    degenerate = C.k == C.n
    out: list[DeepHoleReport] = []
    if candidates is not None:
        for u in candidates:
            v = _as_vector(C, u)
            d = error_distance(T, v)
            if d == rho:
                out.append(DeepHoleReport(tuple(int(x) for x in v), d, rho, True, degenerate=degenerate))
                if limit is not None and len(out) >= limit:
                    break
        return out
    if limit is None:
        n_deep = int(np.count_nonzero(T.leader_weight == rho))
        guard("deep-hole enumeration", n_deep * C.q ** C.k, MAX_VECTORS)
    for v in iter_deep_holes(C):
        if limit is not None and len(out) >= limit:
            break
        out.append(DeepHoleReport(tuple(int(x) for x in v), rho, rho, True, degenerate=degenerate))
    return out


def count_deep_holes(C: LinearCode) -> int:
    T = build_syndrome_table(C)
    return int(np.count_nonzero(T.leader_weight == T.rho)) * C.q ** C.k


def report_for(C: LinearCode, u, criterion: str = "definition") -> DeepHoleReport:
    T = build_syndrome_table(C)
    v = _as_vector(C, u)
    d = error_distance(T, v)
    return DeepHoleReport(tuple(int(x) for x in v), d, T.rho, d == T.rho, criterion, C.k == C.n)
