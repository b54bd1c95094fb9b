"""Linear codes: canonical generators, duality, distances, MDS/NMDS tests.

A code is identified by the RREF of its generator matrix, so two
:class:`LinearCode` objects compare equal exactly when they span the same
subspace.  Minimum distances and weight distributions come from full
message-space enumeration, guarded by :data:`MAX_CODEWORDS`.
"""

from __future__ import annotations

import enum
import itertools
import math
import os
import re
from collections import OrderedDict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Iterator, Sequence

import numpy as np

from .errors import BadInput, IndexOutOfRange, LengthMismatch, ZeroMatrix, guard
from .field import FieldSpec, parse_field_token
from .matrix import Matrix, rank_array, rref_array

MAX_CODEWORDS = 10 ** 8
MAX_SUBSETS = 10 ** 6
CHUNK = 1 << 15
ENUM_PREFERRED = 10 ** 4


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get("MDSLAB_THREADS", "1")))
    except ValueError:
        return 1


@dataclass(frozen=True, eq=False)
class LinearCode:
    """An [n, k] code over ``field`` held by its RREF generator matrix."""

    gen: Matrix
    n: int
    k: int
    _cache: dict = dc_field(default_factory=dict, repr=False)

    @property
    def field(self) -> FieldSpec:
        return self.gen.field

    @property
    def q(self) -> int:
        return self.field.q

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearCode):
            return NotImplemented
        return self.n == other.n and self.gen == other.gen

    def __hash__(self) -> int:
        return hash((self.n, self.gen))

    def __repr__(self) -> str:
        return f"LinearCode([{self.n},{self.k}]_{self.q})"

    def params(self) -> str:
        d = self._cache.get("d")
        return f"[{self.n},{self.k}{',' + str(d) if d is not None else ''}]_{self.q}"


def _from_rref(F: FieldSpec, r: np.ndarray, pivots: list[int], n: int) -> LinearCode:
    k = len(pivots)
    return LinearCode(Matrix(F, r[:k] if k else np.zeros((0, n), dtype=np.int64)), n, k)


def zero_code(F: FieldSpec, n: int) -> LinearCode:
    return LinearCode(Matrix(F, np.zeros((0, n), dtype=np.int64)), n, 0)


def full_code(F: FieldSpec, n: int) -> LinearCode:
    return LinearCode(Matrix.identity(F, n), n, n)


def code_from_generator(M: Matrix) -> LinearCode:
    """Row-reduce ``M`` to its canonical basis; k = rank(M)."""
    if M.rows == 0 or not np.any(M.a):
        raise ZeroMatrix("generator matrix is zero")
    r, piv = rref_array(M.field, M.a)
    return _from_rref(M.field, r, piv, M.cols)


def span(F: FieldSpec, rows: np.ndarray, n: int) -> LinearCode:
    """Like code_from_generator but returns the zero code for zero input."""
    rows = np.asarray(rows, dtype=np.int64).reshape(-1, n)
    if rows.shape[0] == 0 or not np.any(rows):
        return zero_code(F, n)
    r, piv = rref_array(F, rows)
    return _from_rref(F, r, piv, n)


def generator_pivots(C: LinearCode) -> list[int]:
    piv = C._cache.get("pivots")
    if piv is None:
        a = C.gen.a
        piv = [int(np.flatnonzero(a[i])[0]) for i in range(C.k)]
        C._cache["pivots"] = piv
    return piv


def dual(C: LinearCode) -> LinearCode:
    """The [n, n-k] dual code."""
    cached = C._cache.get("dual")
    if cached is not None:
        return cached
    F, n, k = C.field, C.n, C.k
    if k == 0:
        D = full_code(F, n)
    elif k == n:
        D = zero_code(F, n)
    else:
        piv = generator_pivots(C)
        free = [c for c in range(n) if c not in set(piv)]
        G = C.gen.a
        H = np.zeros((n - k, n), dtype=np.int64)
        H[:, free] = np.eye(n - k, dtype=np.int64)
        H[:, piv] = F.vneg(G[:, free].T)
        D = span(F, H, n)
    D._cache["dual"] = C
    C._cache["dual"] = D
    return D


def parity_check(C: LinearCode) -> Matrix:
    return dual(C).gen


def contains(C: LinearCode, vectors) -> np.ndarray | bool:
    """Membership test via the parity-check matrix (rows of ``vectors``)."""
    v = np.asarray(vectors, dtype=np.int64)
    single = v.ndim == 1
    v = v.reshape(-1, C.n)
    H = parity_check(C).a
    if H.shape[0] == 0:
        out = np.ones(v.shape[0], dtype=bool)
    else:
        out = ~np.any(C.field.matmul(v, H.T), axis=1)
    return bool(out[0]) if single else out


# -- enumeration -----------------------------------------------------------------

def message_block(q: int, k: int, start: int, stop: int) -> np.ndarray:
    """Messages with integer indices in [start, stop) as base-q digit rows."""
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.empty((idx.size, k), dtype=np.int64)
    for j in range(k - 1, -1, -1):
        out[:, j] = idx % q
        idx //= q
    return out


def all_vectors(q: int, n: int) -> np.ndarray:
    return message_block(q, n, 0, q ** n)


def iter_codeword_blocks(C: LinearCode, chunk: int = CHUNK) -> Iterator[np.ndarray]:
    total = C.q ** C.k
    for start in range(0, total, chunk):
        msgs = message_block(C.q, C.k, start, min(total, start + chunk))
        yield C.field.matmul(msgs, C.gen.a) if C.k else np.zeros((1, C.n), dtype=np.int64)


def codewords(C: LinearCode) -> np.ndarray:
    guard("codeword enumeration", C.q ** C.k, MAX_CODEWORDS // 10)
    return np.vstack(list(iter_codeword_blocks(C)))


def _weights_block(C: LinearCode, start: int, stop: int) -> np.ndarray:
    msgs = message_block(C.q, C.k, start, stop)
    words = C.field.matmul(msgs, C.gen.a)
    return np.count_nonzero(words, axis=1)


def _block_ranges(total: int, chunk: int) -> list[tuple[int, int]]:
    return [(s, min(total, s + chunk)) for s in range(0, total, chunk)]


def weight_distribution(C: LinearCode, threads: int | None = None) -> list[int]:
    """A_0..A_n; sums to q^k."""
    cached = C._cache.get("wd")
    if cached is not None:
        return list(cached)
    total = C.q ** C.k
    guard("weight enumeration", total, MAX_CODEWORDS)
    counts = np.zeros(C.n + 1, dtype=np.int64)
    if C.k == 0:
        counts[0] = 1
    else:
        ranges = _block_ranges(total, CHUNK)
        threads = threads or default_threads()

        def work(rg):
            return np.bincount(_weights_block(C, *rg), minlength=C.n + 1)

        if threads > 1 and len(ranges) > 1:
            with ThreadPoolExecutor(threads) as ex:
                for part in ex.map(work, ranges):
                    counts += part
        else:
            for rg in ranges:
                counts += work(rg)
    wd = counts.tolist()
    C._cache["wd"] = tuple(wd)
    return wd


def _column_search_cost(C: LinearCode) -> int:
    r = C.n - C.k
    return sum(math.comb(C.n, w) for w in range(1, r + 2))


def min_distance_by_columns(C: LinearCode) -> int:
    """Smallest number of linearly dependent parity-check columns.

    Exact like enumeration, and much cheaper when q^k is large but the
    redundancy n - k is small.
    """
    if C.k == 0:
        return C.n + 1
    guard("parity-check column subsets", _column_search_cost(C), MAX_SUBSETS * 10)
    H = parity_check(C).a
    r = H.shape[0]
    if r == 0:
        return 1
    for w in range(1, r + 2):
        for sub in itertools.combinations(range(C.n), w):
            if rank_array(C.field, H[:, list(sub)]) < w:
                return w
    raise AssertionError("Singleton bound violated")


def min_distance(C: LinearCode, threads: int | None = None) -> int:
    """Minimum weight over nonzero codewords (n + 1 for the zero code).

    Message-space enumeration is the default; when q^k is large and the
    parity-check column search is markedly cheaper, that search is used.
    """
    cached = C._cache.get("d")
    if cached is not None:
        return cached
    if C.k == 0:
        d = C.n + 1
    elif "wd" not in C._cache and C.q ** C.k > ENUM_PREFERRED and _column_search_cost(C) * 50 < C.q ** C.k:
        d = min_distance_by_columns(C)
    else:
        wd = weight_distribution(C, threads)
        d = next(w for w in range(1, C.n + 1) if wd[w])
    C._cache["d"] = d
    return d


# -- classification ----------------------------------------------------------------

class Tag(str, enum.Enum):
    MDS = "MDS"
    NMDS = "NMDS"
    OTHER = "OTHER"


@dataclass(frozen=True)
class CodeClass:
    tag: Tag
    d: int
    d_dual: int

    def __str__(self) -> str:
        return f"{self.tag.value}(d={self.d}, d_dual={self.d_dual})"


_CLASSIFY_CACHE: "OrderedDict[LinearCode, CodeClass]" = OrderedDict()
_CLASSIFY_CACHE_SIZE = 1 << 14


def classify(C: LinearCode) -> CodeClass:
    """MDS if d = n-k+1; NMDS if d = n-k and d(dual) = k; else OTHER."""
    hit = _CLASSIFY_CACHE.get(C)
    if hit is not None:
        _CLASSIFY_CACHE.move_to_end(C)
        return hit
    d = min_distance(C)
    d_dual = min_distance(dual(C))
    if d == C.n - C.k + 1:
        tag = Tag.MDS
    elif d == C.n - C.k and d_dual == C.k:
        tag = Tag.NMDS
    else:
        tag = Tag.OTHER
    out = CodeClass(tag, d, d_dual)
    _CLASSIFY_CACHE[C] = out
    if len(_CLASSIFY_CACHE) > _CLASSIFY_CACHE_SIZE:
        _CLASSIFY_CACHE.popitem(last=False)
    return out


def _subsets_guard(n: int, r: int) -> None:
    guard("column subsets", math.comb(n, r) if 0 <= r <= n else 0, MAX_SUBSETS)


def _all_subsets_full_rank(C: LinearCode, r: int, want: int) -> bool:
    """Every r-subset of generator columns has rank ``want``."""
    if r > C.n or r <= 0:
        return True
    _subsets_guard(C.n, r)
    G = C.gen.a
    return all(rank_array(C.field, G[:, list(s)]) == want for s in itertools.combinations(range(C.n), r))


def is_mds_by_columns(C: LinearCode) -> bool:
    """Every k columns of the generator are linearly independent."""
    if C.k == 0:
        return True
    return _all_subsets_full_rank(C, C.k, C.k)


def is_nmds_by_columns(C: LinearCode) -> bool:
    """Column criteria: all (k-1)-sets independent, some k-set dependent,
    all (k+1)-sets of full rank k."""
    k, n = C.k, C.n
    if k == 0 or k > n:
        return False
    if not _all_subsets_full_rank(C, k - 1, k - 1):
        return False
    _subsets_guard(n, k)
    G = C.gen.a
    if all(rank_array(C.field, G[:, list(s)]) == k for s in itertools.combinations(range(n), k)):
        return False
    if k + 1 > n:
        return False
    return _all_subsets_full_rank(C, k + 1, k)


# -- derived codes ------------------------------------------------------------------

def _check_index(C: LinearCode, i: int) -> None:
    if not 0 <= i < C.n:
        raise IndexOutOfRange(f"coordinate {i} not in [0, {C.n})")


def puncture(C: LinearCode, i: int) -> LinearCode:
    """Delete coordinate i from every codeword."""
    _check_index(C, i)
    return span(C.field, np.delete(C.gen.a, i, axis=1), C.n - 1)


def shorten(C: LinearCode, i: int) -> LinearCode:
    """Codewords vanishing at i, with coordinate i removed."""
    _check_index(C, i)
    F = C.field
    G = np.array(C.gen.a)
    col = G[:, i]
    nz = np.flatnonzero(col)
    if nz.size:
        r0 = int(nz[0])
        others = nz[1:]
        if others.size:
            f = F.vmul(G[others, i], F.inv(int(G[r0, i])))
            G[others] = F.vsub(G[others], F.vmul(f[:, None], G[r0][None, :]))
        G = np.delete(G, r0, axis=0)
    return span(F, np.delete(G, i, axis=1), C.n - 1)


def schur_square(C: LinearCode) -> LinearCode:
    """Span of the coordinatewise products of all pairs of generator rows."""
    G = C.gen.a
    F = C.field
    rows = [F.vmul(G[i], G[j]) for i in range(C.k) for j in range(i, C.k)]
    return span(F, np.array(rows).reshape(-1, C.n), C.n)


def append_row(C: LinearCode, u) -> LinearCode:
    u = np.asarray(C.field.coerce_all(u) if not isinstance(u, np.ndarray) else u, dtype=np.int64)
    if u.size != C.n:
        raise LengthMismatch(f"vector of length {u.size} for a length-{C.n} code")
    return span(C.field, np.vstack([C.gen.a, u[None, :]]), C.n)


def hull_dimension(C: LinearCode) -> int:
    D = dual(C)
    both = np.vstack([C.gen.a, D.gen.a])
    return C.k + D.k - rank_array(C.field, both) if both.size else 0


# -- text format ---------------------------------------------------------------------

def code_to_text(C: LinearCode) -> str:
    head = f"field={C.field.token} n={C.n} k={C.k}"
    return head + ("\n" + C.gen.to_text() if C.k else "") + "\n"


_HEAD_RE = re.compile(r"^field=(GF\([^)]*\))\s+n=(\d+)\s+k=(\d+)\s*$")


def code_from_text(text: str) -> LinearCode:
    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    if not lines:
        raise BadInput("empty code file")
    mt = _HEAD_RE.match(lines[0].strip())
    if not mt:
        raise BadInput(f"bad code file header {lines[0]!r}")
    F = parse_field_token(mt.group(1))
    n, k = int(mt.group(2)), int(mt.group(3))
    if k == 0:
        return zero_code(F, n)
    M = Matrix.from_text(F, "\n".join(lines[1:]))
    if M.cols != n:
        raise BadInput(f"header says n={n} but rows have {M.cols} entries")
    C = code_from_generator(M)
    if C.k != k:
        raise BadInput(f"header says k={k} but the generator has rank {C.k}")
    return C


def vector_str(v: Sequence[int]) -> str:
    return "(" + ",".join(str(int(x)) for x in v) + ")"
