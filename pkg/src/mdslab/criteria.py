"""Closed-form deep-hole tests for ESGRS codes.

Candidates have the shape ``(v_1 g(a_1), ..., v_n g(a_n), u)`` where ``u``
stands for the product of the last entries of the two vectors being
star-multiplied; only that product ever matters, so it is passed as one
scalar ``u_scalar``.  Two shapes of ``g`` are handled:

* class 1: ``g = g_{k-1} x^{k-1} + f`` with ``g_{k-1} != 0``;
* class 2: ``g = g_{k+1} x^{k+1} + g_{k-1} x^{k-1} + f`` with ``g_{k+1} != 0``;

where ``f`` has no ``x^{k-1}`` term and degree at most k.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .code import LinearCode, append_row, is_mds_by_columns
from .constructions import EvalConfig, subset_sums
from .errors import BadInput, LengthMismatch, MismatchDetected, PartitionViolation, guard
from .field import ElementLike, FieldElement, FieldSpec, Poly, vk_member
from .matrix import _infer_field, det_array, solve_array, vandermonde

MAX_SUBSETS = 10 ** 7


# -- symmetric functions and Vandermonde minors ---------------------------------

def _sigma_all(F: FieldSpec, S: Sequence[int]) -> list[int]:
    """[sigma_0, ..., sigma_|S|] by the product expansion of prod (1 + a x)."""
    e = [1] + [0] * len(S)
    for a in S:
        for j in range(len(e) - 1, 0, -1):
            e[j] = F.add(e[j], F.mul(a, e[j - 1]))
    return e


def sigma(i: int, S: Sequence[ElementLike], field: FieldSpec | None = None) -> FieldElement:
    """The i-th elementary symmetric function of S (0 outside 0..|S|)."""
    F = _infer_field(field, S)
    pts = F.coerce_all(S)
    if i < 0 or i > len(pts):
        return FieldElement(F, 0)
    return FieldElement(F, _sigma_all(F, pts)[i])


def _vandermonde_product(F: FieldSpec, pts: Sequence[int]) -> int:
    out = 1
    for i, j in itertools.combinations(range(len(pts)), 2):
        out = F.mul(out, F.sub(pts[j], pts[i]))
    return out


def gen_vandermonde_det(
    S: Sequence[ElementLike], exponents: Sequence[int], field: FieldSpec | None = None
) -> FieldElement:
    """det(a_j^{t_i}) computed directly and through the sigma factorization.

    The exponents t_1 < ... < t_s must start at 0; with m - 1 = max(t), the
    missing exponents r_1 < ... < r_s' in {0..m-1} index the sigma matrix
    ``[sigma_{s - r_l + i}]``.  Both routes must agree.
    """
    F = _infer_field(field, S)
    pts = F.coerce_all(S)
    t = sorted(exponents)
    s = len(pts)
    if len(t) != s or len(set(t)) != s:
        raise PartitionViolation(f"need {s} distinct exponents, got {list(exponents)}")
    if s == 0:
        return FieldElement(F, 1)
    if t[0] != 0:
        raise PartitionViolation("the exponent set must contain 0")
    m = t[-1] + 1
    missing = [r for r in range(m) if r not in set(t)]
    raw = det_array(F, vandermonde(F, pts, t).a)
    e = _sigma_all(F, pts)

    def sig(i: int) -> int:
        return e[i] if 0 <= i <= s else 0

    sp = len(missing)
    if sp:
        M = np.array([[sig(s - r + i) for r in missing] for i in range(sp)], dtype=np.int64)
        sdet = det_array(F, M)
    else:
        sdet = 1
    factored = F.mul(_vandermonde_product(F, pts), sdet)
    if raw != factored:
        raise MismatchDetected(f"raw determinant {raw} != factored form {factored}")
    return FieldElement(F, raw)


# -- polynomial filters --------------------------------------------------------------

def vk_filter(gprime: Poly, k: int) -> bool:
    """True iff g' lies outside V_k, which every deep-hole polynomial must."""
    return not vk_member(gprime, k)


def class1_poly(F: FieldSpec, k: int, g_km1: ElementLike, f: Poly) -> Poly:
    return Poly.from_terms(F, {k - 1: g_km1}) + f


def class2_poly(F: FieldSpec, k: int, g_kp1: ElementLike, g_km1: ElementLike, f: Poly) -> Poly:
    return Poly.from_terms(F, {k + 1: g_kp1, k - 1: g_km1}) + f


def candidate_vector(cfg: EvalConfig, g: Poly, u_scalar: ElementLike) -> list[int]:
    """(v_1 g(a_1), ..., v_n g(a_n), u_scalar)."""
    F = cfg.field
    vals = g.eval_many(cfg.S)
    return [F.mul(vi, y) for vi, y in zip(cfg.v, vals)] + [F.coerce(u_scalar)]


def _check_f(f: Poly, k: int) -> None:
    if not vk_member(f, k):
        raise BadInput("f must have degree <= k and no x^(k-1) term")


# -- class 1 --------------------------------------------------------------------------

def class1_delta(F: FieldSpec, g_km1: int, f_k: int, u_scalar: int) -> int | None:
    """g_{k-1} (u - f_k)^{-1}, or None when u = f_k."""
    c = F.sub(u_scalar, f_k)
    return None if c == 0 else F.div(g_km1, c)


def class1_is_deep_hole(
    cfg: EvalConfig, k: int, g_km1: ElementLike, f: Poly, u_scalar: ElementLike
) -> bool:
    F = cfg.field
    g1 = F.coerce(g_km1)
    if g1 == 0:
        raise BadInput("class 1 needs g_{k-1} != 0")
    _check_f(f, k)
    delta = class1_delta(F, g1, f.coeff(k), F.coerce(u_scalar))
    if delta is None:
        return True
    return delta not in _sums_cached(F, cfg.S, k)


@lru_cache(maxsize=4096)
def _sums_cached(F: FieldSpec, S: tuple[int, ...], k: int) -> frozenset[int]:
    return frozenset(subset_sums(F, S, k))


# -- class 2 --------------------------------------------------------------------------

@dataclass(frozen=True)
class ForbiddenSet:
    L1: frozenset[int]
    L2: frozenset[int]
    bound: int

    @property
    def L(self) -> frozenset[int]:
        return self.L1 | self.L2

    def admissible(self, F: FieldSpec) -> list[int]:
        bad = self.L
        return [x for x in F.elements() if x not in bad]


@lru_cache(maxsize=4096)
def _sigma12_tables(F: FieldSpec, S: tuple[int, ...], r: int) -> tuple[tuple[int, int], ...]:
    """(sigma_1, sigma_2) for every r-subset of S, deduplicated."""
    guard("subsets", math.comb(len(S), r) if r <= len(S) else 0, MAX_SUBSETS)
    out = set()
    for sub in itertools.combinations(S, r):
        e = _sigma_all(F, sub)
        out.add((e[1] if r >= 1 else 0, e[2] if r >= 2 else 0))
    return tuple(sorted(out))


def _forbidden(F: FieldSpec, S: tuple[int, ...], k: int, g_kp1: int, c: int) -> ForbiddenSet:
    L1 = set()
    for s1, s2 in _sigma12_tables(F, S, k):
        L1.add(F.add(F.mul(g_kp1, F.sub(s2, F.mul(s1, s1))), F.mul(c, s1)))
    L2 = set()
    if k + 1 <= len(S):
        for _, s2 in _sigma12_tables(F, S, k + 1):
            L2.add(F.mul(g_kp1, s2))
    return ForbiddenSet(frozenset(L1), frozenset(L2), math.comb(len(S) + 1, k + 1))


def forbidden_set(
    cfg: EvalConfig, k: int, g_kp1: ElementLike, c: ElementLike, allow_zero: bool = False
) -> ForbiddenSet:
    """Values of g_{k-1} that spoil the class-2 candidate, for c = u - f_k.

    ``allow_zero`` permits the formal substitution g_{k+1} = 0, under which the
    set collapses to {0} together with {c sigma_1(S_k)}.
    """
    F = cfg.field
    g = F.coerce(g_kp1)
    if g == 0 and not allow_zero:
        raise BadInput("class 2 needs g_{k+1} != 0")
    return _forbidden(F, cfg.S, k, g, F.coerce(c))


def class2_is_deep_hole(
    cfg: EvalConfig,
    k: int,
    g_kp1: ElementLike,
    g_km1: ElementLike,
    f: Poly,
    u_scalar: ElementLike,
) -> bool:
    F = cfg.field
    if F.coerce(g_kp1) == 0:
        raise BadInput("class 2 needs g_{k+1} != 0")
    _check_f(f, k)
    c = F.sub(F.coerce(u_scalar), f.coeff(k))
    return F.coerce(g_km1) not in forbidden_set(cfg, k, g_kp1, c).L


# -- the row-extension test -----------------------------------------------------------

def mds_extension_deep_hole_test(C: LinearCode, u) -> bool:
    """True iff appending u as a row gives an MDS code of dimension k+1."""
    vec = C.field.coerce_all(u) if not isinstance(u, np.ndarray) else u
    if len(vec) != C.n:
        raise LengthMismatch(f"vector of length {len(vec)} for a length-{C.n} code")
    Cu = append_row(C, vec)
    if Cu.k != C.k + 1:
        return False
    return is_mds_by_columns(Cu)


@dataclass(frozen=True, eq=False)
class ExtensionMinors:
    """For each (k+1)-set T of columns, the cofactors of a bottom row u_T.

    det([G_T; u_T]) = cof_T . u_T, so the MDS test for many u at once is a
    handful of small matrix products.
    """

    code: LinearCode
    subsets: np.ndarray
    cofactors: np.ndarray

    def all_nonzero(self, U: np.ndarray) -> np.ndarray:
        F = self.code.field
        U = np.asarray(U, dtype=np.int64)
        ok = np.ones(U.shape[0], dtype=bool)
        for T, cof in zip(self.subsets, self.cofactors):
            d = F.matmul(U[:, T], cof[:, None])[:, 0]
            ok &= d != 0
        return ok


def extension_minors(C: LinearCode) -> ExtensionMinors:
    cached = C._cache.get("ext_minors")
    if cached is not None:
        return cached
    F, k, n = C.field, C.k, C.n
    guard("column subsets", math.comb(n, k + 1), MAX_SUBSETS)
    G = C.gen.a
    subsets, cofs = [], []
    for T in itertools.combinations(range(n), k + 1):
        block = G[:, list(T)]
        cof = []
        for j in range(k + 1):
            minor = det_array(F, np.delete(block, j, axis=1)) if k else 1
            cof.append(minor if (k + j) % 2 == 0 else F.neg(minor))
        subsets.append(T)
        cofs.append(cof)
    out = ExtensionMinors(C, np.array(subsets, dtype=np.int64), np.array(cofs, dtype=np.int64))
    C._cache["ext_minors"] = out
    return out


def mds_extension_mask(C: LinearCode, U: np.ndarray) -> np.ndarray:
    """Vectorized mds_extension_deep_hole_test over the rows of U."""
    U = np.asarray(U, dtype=np.int64)
    if U.ndim != 2 or U.shape[1] != C.n:
        raise LengthMismatch(f"expected rows of length {C.n}")
    if C.k + 1 > C.n:
        return np.zeros(U.shape[0], dtype=bool)
    return extension_minors(C).all_nonzero(U)


# -- decomposing arbitrary candidates --------------------------------------------------

@dataclass(frozen=True)
class Shape:
    """Coefficients of the interpolating polynomial of a candidate vector."""

    coeffs: tuple[int, ...]
    u_scalar: int

    def split(self, F: FieldSpec, k: int) -> tuple[int, int, Poly, bool]:
        """(g_{k+1}, g_{k-1}, f, other) where ``other`` flags terms outside both classes."""
        c = list(self.coeffs) + [0] * (k + 2)
        g_kp1, g_km1 = c[k + 1], c[k - 1]
        fterms = {i: c[i] for i in list(range(k - 1)) + [k]}
        other = any(c[i] for i in range(k + 2, len(self.coeffs)))
        return g_kp1, g_km1, Poly.from_terms(F, fterms), other


def interpolation_matrix(cfg: EvalConfig) -> np.ndarray:
    """M with coeffs = M @ (y_i / v_i): inverse of the n x n Vandermonde matrix."""
    F = cfg.field
    V = vandermonde(F, cfg.S, range(cfg.n)).a.T  # V[i, j] = a_i^j
    sol = solve_array(F, V, np.eye(cfg.n, dtype=np.int64))
    if sol is None:
        raise BadInput("evaluation points are not distinct")
    return sol


def interpolate(cfg: EvalConfig, U: np.ndarray) -> np.ndarray:
    """Coefficient rows (length n) of the polynomials behind candidate rows U."""
    F = cfg.field
    U = np.asarray(U, dtype=np.int64)
    vinv = F.vinv(np.array(cfg.v, dtype=np.int64))
    Y = F.vmul(U[:, : cfg.n], vinv[None, :])
    return F.matmul(Y, interpolation_matrix(cfg).T)
