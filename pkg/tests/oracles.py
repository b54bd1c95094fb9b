"""Brute-force reference implementations used to derive and check expected values.

Nothing here imports mdslab: arithmetic, rank, determinants, distances and
covering radii are recomputed from first principles so that agreement with
the library is meaningful.
"""

from __future__ import annotations

import itertools
from typing import Sequence

import numpy as np


class Gf:
    """GF(p^m) with elements encoded as sum c_i p^i; schoolbook polynomial arithmetic."""

    def __init__(self, p: int, modulus: Sequence[int] = ()):
        self.p = p
        self.mod = list(modulus)
        self.m = len(self.mod) - 1 if self.mod else 1
        self.q = p ** self.m

    def digits(self, x: int) -> list[int]:
        out = []
        for _ in range(self.m):
            out.append(x % self.p)
            x //= self.p
        return out

    def enc(self, d: Sequence[int]) -> int:
        return sum(c * self.p ** i for i, c in enumerate(d))

    def add(self, a: int, b: int) -> int:
        return self.enc([(x + y) % self.p for x, y in zip(self.digits(a), self.digits(b))])

    def neg(self, a: int) -> int:
        return self.enc([(-x) % self.p for x in self.digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return a * b % self.p
        x, y = self.digits(a), self.digits(b)
        prod = [0] * (2 * self.m - 1)
        for i, c in enumerate(x):
            for j, d in enumerate(y):
                prod[i + j] = (prod[i + j] + c * d) % self.p
        for top in range(len(prod) - 1, self.m - 1, -1):
            c = prod[top]
            if c:
                for i, mc in enumerate(self.mod):
                    prod[top - self.m + i] = (prod[top - self.m + i] - c * mc) % self.p
        return self.enc(prod[: self.m])

    def inv(self, a: int) -> int:
        for b in range(1, self.q):
            if self.mul(a, b) == 1:
                return b
        raise ZeroDivisionError

    def elements(self) -> range:
        return range(self.q)


def det(F: Gf, M: Sequence[Sequence[int]]) -> int:
    """Leibniz expansion."""
    n = len(M)
    total = 0
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = 1
        for i in range(n):
            term = F.mul(term, M[i][perm[i]])
        total = F.add(total, term if inv % 2 == 0 else F.neg(term))
    return total


def span_set(F: Gf, rows: Sequence[Sequence[int]]) -> set[tuple[int, ...]]:
    """Every linear combination of ``rows``."""
    n = len(rows[0]) if rows else 0
    out = set()
    for coeffs in itertools.product(F.elements(), repeat=len(rows)):
        v = [0] * n
        for c, r in zip(coeffs, rows):
            if c:
                v = [F.add(x, F.mul(c, y)) for x, y in zip(v, r)]
        out.add(tuple(v))
    return out


def rank(F: Gf, rows: Sequence[Sequence[int]]) -> int:
    size = len(span_set(F, rows))
    r = 0
    while F.q ** r < size:
        r += 1
    return r


def codewords(F: Gf, rows: Sequence[Sequence[int]]) -> np.ndarray:
    return np.array(sorted(span_set(F, rows)), dtype=np.int64)


def min_distance(F: Gf, rows: Sequence[Sequence[int]]) -> int:
    cw = codewords(F, rows)
    w = np.count_nonzero(cw, axis=1)
    w = w[w > 0]
    return int(w.min()) if w.size else len(rows[0]) + 1


def distances_to_code(cw: np.ndarray, U: np.ndarray, chunk: int = 4096) -> np.ndarray:
    """Hamming distance from each row of U to the nearest row of cw."""
    out = np.empty(U.shape[0], dtype=np.int64)
    for s in range(0, U.shape[0], chunk):
        block = U[s : s + chunk]
        d = (block[:, None, :] != cw[None, :, :]).sum(axis=2)
        out[s : s + chunk] = d.min(axis=1)
    return out


def all_vectors(q: int, n: int) -> np.ndarray:
    return np.array(list(itertools.product(range(q), repeat=n)), dtype=np.int64)


def covering_radius(F: Gf, rows: Sequence[Sequence[int]]) -> int:
    cw = codewords(F, rows)
    return int(distances_to_code(cw, all_vectors(F.q, cw.shape[1])).max())


def dual_set(F: Gf, code: set, n: int) -> set[tuple[int, ...]]:
    """All vectors orthogonal to every word of ``code``."""
    out = set()
    words = list(code)
    for v in itertools.product(F.elements(), repeat=n):
        ok = True
        for c in words:
            s = 0
            for x, y in zip(v, c):
                s = F.add(s, F.mul(x, y))
            if s:
                ok = False
                break
        if ok:
            out.add(v)
    return out


def subset_sums(F: Gf, S: Sequence[int], k: int) -> set[int]:
    out = set()
    for sub in itertools.combinations(S, k):
        s = 0
        for a in sub:
            s = F.add(s, a)
        out.add(s)
    return out


def elementary_symmetric(F: Gf, S: Sequence[int], i: int) -> int:
    if i < 0 or i > len(S):
        return 0
    total = 0
    for sub in itertools.combinations(S, i):
        t = 1
        for a in sub:
            t = F.mul(t, a)
        total = F.add(total, t)
    return total


def monomially_equivalent(F: Gf, A: set, B: set, n: int) -> bool:
    """Exhaust permutations and nonzero scalings (tiny n and q only)."""
    if len(A) != len(B):
        return False
    nz = range(1, F.q)
    for perm in itertools.permutations(range(n)):
        for scale in itertools.product(nz, repeat=n):
            img = set()
            for c in A:
                b = [0] * n
                for j in range(n):
                    b[perm[j]] = F.mul(scale[j], c[j])
                img.add(tuple(b))
            if img == B:
                return True
    return False
