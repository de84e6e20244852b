"""Skeletal modular-tensor-category data.

A category is presented by fusion multiplicities N, F-symbols, R-symbols
and twists over an ordered label set with label 0 the tensor unit.  All
scalars are complex floats; every check is numerical against the
category tolerance.

Conventions (fixed once, used by every module):

* ``Fmat(i,j,k,l)`` is the matrix expanding the left-fused splitting
  trees of Hom(U_l, (U_i U_j) U_k), indexed by (m, al, be), in the
  right-fused trees indexed by (n, ga, de).
* ``Rmat(i,j,k)`` expands c_{i,j} applied to an (i,j)-splitting vertex
  of U_k in the (j,i)-splitting vertices.
* Unit vertices are strict: F with a unit index is the identity matrix
  and R with a unit index is 1.
"""

import json
import numpy as np

from . import _kernels
from .backend import HAS_NUMBA


class CategoryError(Exception):
    """Invalid category data."""


class SchemaError(CategoryError):
    """Malformed category document."""


class CategoryData:
    def __init__(self, rank, dual, N, theta, f_block, r_block,
                 labels=None, tolerance=1e-9, name="category"):
        self.rank = int(rank)
        self.dual = tuple(int(d) for d in dual)
        self.N = np.asarray(N, dtype=np.int64)
        self.theta = np.asarray(theta, dtype=np.complex128)
        self.labels = list(labels) if labels is not None else [str(i) for i in range(rank)]
        self.tolerance = float(tolerance)
        self.name = name
        self._f_block = f_block
        self._r_block = r_block
        self._fmat_cache = {}
        self._finv_cache = {}
        self._rmat_cache = {}
        self._rinv_cache = {}
        self._derived = None
        # engine-level caches (trees, coercions, duality) live here too
        self.caches = {}
        self._basic_sanity()

    def _basic_sanity(self):
        r = self.rank
        if self.N.shape != (r, r, r):
            raise SchemaError("N tensor has wrong shape")
        if len(self.dual) != r or len(self.theta) != r or len(self.labels) != r:
            raise SchemaError("dual/theta/labels length mismatch")
        if sorted(self.dual) != list(range(r)):
            raise SchemaError("dual is not a permutation")
        for i in range(r):
            if self.dual[self.dual[i]] != i:
                raise CategoryError("dual is not an involution")
        if self.dual[0] != 0:
            raise CategoryError("dual does not fix the unit")
        if (self.N < 0).any():
            raise SchemaError("negative fusion multiplicity")

    # -- basis enumerations -------------------------------------------------

    def left_pairs(self, i, j, k, l):
        """Left-fused index triples (m, al, be) of Hom(U_l, (U_i U_j) U_k)."""
        N = self.N
        return [
            (m, a, b)
            for m in range(self.rank)
            for a in range(N[i, j, m])
            for b in range(N[m, k, l])
        ]

    def right_pairs(self, i, j, k, l):
        """Right-fused index triples (n, ga, de)."""
        N = self.N
        return [
            (n, c, d)
            for n in range(self.rank)
            for c in range(N[j, k, n])
            for d in range(N[i, n, l])
        ]

    # -- symbol access ------------------------------------------------------

    def Fmat(self, i, j, k, l):
        key = (i, j, k, l)
        m = self._fmat_cache.get(key)
        if m is None:
            m = self._f_block(i, j, k, l)
            self._fmat_cache[key] = m
        return m

    def Finv(self, i, j, k, l):
        key = (i, j, k, l)
        m = self._finv_cache.get(key)
        if m is None:
            f = self.Fmat(i, j, k, l)
            m = np.linalg.inv(f) if f.size else f.reshape(f.shape[1], f.shape[0])
            self._finv_cache[key] = m
        return m

    def Rmat(self, i, j, k):
        key = (i, j, k)
        m = self._rmat_cache.get(key)
        if m is None:
            m = self._r_block(i, j, k)
            self._rmat_cache[key] = m
        return m

    def Rinv(self, i, j, k):
        """Inverse braiding: expands c_{j,i}^{-1} on an (i,j)-vertex in (j,i)-vertices."""
        key = (i, j, k)
        m = self._rinv_cache.get(key)
        if m is None:
            r = self.Rmat(j, i, k)
            m = np.linalg.inv(r) if r.size else np.zeros((self.N[i, j, k], self.N[j, i, k]), dtype=complex)
            self._rinv_cache[key] = m
        return m

    # -- derived data ---------------------------------------------------------

    def derive(self):
        if self._derived is None:
            self._derived = DerivedData(self)
        return self._derived

    @property
    def dims(self):
        return self.derive().dims

    @property
    def global_dim(self):
        return self.derive().global_dim

    def max_mult(self):
        return max(1, int(self.N.max()))

    def dense_tensors(self):
        """Dense (N, F, R) in the kernel layout."""
        r, M = self.rank, self.max_mult()
        F = np.zeros((r, r, r, r, r, r, M, M, M, M), dtype=np.complex128)
        R = np.zeros((r, r, r, M, M), dtype=np.complex128)
        for i in range(r):
            for j in range(r):
                for k in range(r):
                    rm = self.Rmat(i, j, k)
                    if rm.size:
                        R[i, j, k, : rm.shape[0], : rm.shape[1]] = rm
                    for l in range(r):
                        lp = self.left_pairs(i, j, k, l)
                        rp = self.right_pairs(i, j, k, l)
                        if not lp or not rp:
                            continue
                        fm = self.Fmat(i, j, k, l)
                        for a, (m, al, be) in enumerate(lp):
                            for b, (n, ga, de) in enumerate(rp):
                                F[i, j, k, l, m, n, al, be, ga, de] = fm[a, b]
        return self.N.copy(), F, R

    def __repr__(self):
        return f"CategoryData({self.name!r}, rank={self.rank})"


class DerivedData:
    """Quantum dimensions, global dimension and the (unnormalised) s-matrix."""

    def __init__(self, cat):
        r = cat.rank
        dims = np.zeros(r, dtype=np.complex128)
        for i in range(r):
            ib = cat.dual[i]
            # zig-zag normalisation entry: both fused channels at the unit
            lp = cat.left_pairs(i, ib, i, i)
            rp = cat.right_pairs(i, ib, i, i)
            li = next(p for p, (m, _, _) in enumerate(lp) if m == 0)
            ri = next(p for p, (n, _, _) in enumerate(rp) if n == 0)
            kappa = cat.Fmat(i, ib, i, i)[li, ri]
            dims[i] = cat.theta[i] * cat.Rmat(i, ib, 0)[0, 0] / kappa
        self.dims = dims
        self.global_dim = complex(np.sum(dims**2))
        self.sqrt_dim = complex(np.sqrt(self.global_dim))
        th = cat.theta
        s = np.zeros((r, r), dtype=np.complex128)
        for i in range(r):
            for j in range(r):
                s[i, j] = sum(
                    cat.N[i, j, k] * (th[k] / (th[i] * th[j])) * dims[k] for k in range(r)
                )
        self.s = s
        self.S = s / self.sqrt_dim


# ---------------------------------------------------------------------------
# construction of plain (table-backed) categories


def _unit_f(cat_N, rank, i, j, k, l, left, right):
    # strict unit gauge: the two bases coincide, F is the identity
    n = len(left)
    assert n == len(right)
    return np.eye(n, dtype=np.complex128)


def make_category(rank, dual, N, theta, F_entries, R_entries,
                  labels=None, tolerance=1e-9, name="category",
                  f_default="id"):
    """Build a table-backed category.

    F_entries: dict (i,j,k,l,m,n,al,be,ga,de) -> complex for non-unit keys.
    R_entries: dict (i,j,k,al,be) -> complex for non-unit keys.
    Keys (i,j,k,l) with no entries default to the identity matrix when
    f_default == 'id', otherwise to zero.
    """
    N = np.asarray(N, dtype=np.int64)
    touched = set()
    for (i, j, k, l, *_rest) in F_entries:
        touched.add((i, j, k, l))

    def f_block(i, j, k, l):
        left = [
            (m, a, b) for m in range(rank) for a in range(N[i, j, m]) for b in range(N[m, k, l])
        ]
        right = [
            (n, c, d) for n in range(rank) for c in range(N[j, k, n]) for d in range(N[i, n, l])
        ]
        if 0 in (i, j, k):
            return np.eye(len(left), dtype=np.complex128)
        mat = np.zeros((len(left), len(right)), dtype=np.complex128)
        if (i, j, k, l) not in touched:
            if f_default == "id" and len(left) == len(right):
                return np.eye(len(left), dtype=np.complex128)
            return mat
        for a, (m, al, be) in enumerate(left):
            for b, (n, ga, de) in enumerate(right):
                mat[a, b] = F_entries.get((i, j, k, l, m, n, al, be, ga, de), 0.0)
        return mat

    r_touched = set()
    for (i, j, k, *_rest) in R_entries:
        r_touched.add((i, j, k))

    def r_block(i, j, k):
        ni, nj = N[i, j, k], N[j, i, k]
        if 0 in (i, j):
            return np.eye(ni, dtype=np.complex128) if ni == nj else np.zeros((ni, nj), complex)
        mat = np.zeros((ni, nj), dtype=np.complex128)
        if (i, j, k) not in r_touched:
            return np.eye(ni, dtype=np.complex128) if ni == nj else mat
        for a in range(ni):
            for b in range(nj):
                mat[a, b] = R_entries.get((i, j, k, a, b), 0.0)
        return mat

    return CategoryData(rank, dual, N, theta, f_block, r_block,
                        labels=labels, tolerance=tolerance, name=name)


# ---------------------------------------------------------------------------
# loading / saving


def _c(v):
    if isinstance(v, (list, tuple)):
        return complex(v[0], v[1])
    return complex(v)


def load_category(doc):
    """Build a CategoryData from a document dict or a JSON file path."""
    if isinstance(doc, str):
        with open(doc) as fh:
            doc = json.load(fh)
    if not isinstance(doc, dict):
        raise SchemaError("category document must be a JSON object")
    try:
        rank = int(doc["rank"])
        dual = [int(x) for x in doc["dual"]]
        theta = [_c(t) for t in doc.get("theta", [[1.0, 0.0]] * rank)]
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad category document: {exc}") from None
    if "R" not in doc or "theta" not in doc:
        raise SchemaError("missing R/theta data: braiding-free documents are not "
                          "accepted for modular-tensor-category workflows")
    N = np.zeros((rank, rank, rank), dtype=np.int64)
    for ent in doc.get("N", []):
        i, j, k, v = ent
        if not (0 <= i < rank and 0 <= j < rank and 0 <= k < rank):
            raise SchemaError(f"N index out of range: {ent}")
        N[i, j, k] = int(v)
    F_entries = {}
    for ent in doc.get("F", []):
        idx, val = ent
        if len(idx) == 6:
            i, j, k, l, m, n = idx
            key = (i, j, k, l, m, n, 0, 0, 0, 0)
        elif len(idx) == 10:
            key = tuple(idx)
        else:
            raise SchemaError(f"bad F key: {idx}")
        if not all(0 <= x < rank for x in key[:6]):
            raise SchemaError(f"F index out of range: {idx}")
        F_entries[key] = _c(val)
    R_entries = {}
    for ent in doc.get("R", []):
        idx, val = ent
        if len(idx) == 3:
            key = (idx[0], idx[1], idx[2], 0, 0)
        elif len(idx) == 5:
            key = tuple(idx)
        else:
            raise SchemaError(f"bad R key: {idx}")
        if not all(0 <= x < rank for x in key[:3]):
            raise SchemaError(f"R index out of range: {idx}")
        R_entries[key] = _c(val)
    cat = make_category(
        rank,
        dual,
        N,
        theta,
        F_entries,
        R_entries,
        labels=doc.get("labels"),
        tolerance=float(doc.get("tolerance", 1e-9)),
        name=doc.get("name", "category"),
        f_default=doc.get("F_default", "id"),
    )
    cat.doc_dims = [_c(d) for d in doc["dims"]] if "dims" in doc else None
    cat.doc_s = ([[_c(v) for v in row] for row in doc["s"]]) if "s" in doc else None
    return cat


# ---------------------------------------------------------------------------
# validation


class CheckEntry:
    def __init__(self, name, residual, passed, note=""):
        self.name = name
        self.residual = float(residual)
        self.passed = bool(passed)
        self.note = note

    def __repr__(self):
        status = "ok" if self.passed else "FAIL"
        return f"{self.name}: residual={self.residual:.3e} [{status}]"


class ValidationReport:
    def __init__(self, entries, tolerance):
        self.entries = entries
        self.tolerance = tolerance

    @property
    def passed(self):
        return all(e.passed for e in self.entries)

    @property
    def max_residual(self):
        return max((e.residual for e in self.entries), default=0.0)

    def entry(self, name):
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    def lines(self):
        out = [repr(e) for e in self.entries]
        out.append(f"verdict: {'PASS' if self.passed else 'FAIL'}")
        return out

    def __str__(self):
        return "\n".join(self.lines())


def validate_category(cat, backend=None):
    """Check the defining axioms numerically; failures are report entries."""
    tol = cat.tolerance
    entries = []

    def add(name, residual, note=""):
        entries.append(CheckEntry(name, residual, residual < tol, note))

    r = cat.rank
    N = cat.N
    res = 0
    for i in range(r):
        for j in range(r):
            res = max(res, abs(N[0, i, j] - (1 if i == j else 0)))
            res = max(res, abs(N[i, 0, j] - (1 if i == j else 0)))
    add("unit-fusion", res)
    res = 0
    for i in range(r):
        for j in range(r):
            res = max(res, abs(N[i, j, 0] - (1 if j == cat.dual[i] else 0)))
    add("dual-fusion", res)
    add("theta-unit", abs(cat.theta[0] - 1.0))
    add("theta-modulus", max(abs(abs(t) - 1.0) for t in cat.theta))

    # strict-unit gauge on F
    res = 0.0
    for i in range(r):
        for j in range(r):
            for k in range(r):
                if 0 not in (i, j, k):
                    continue
                for l in range(r):
                    f = cat.Fmat(i, j, k, l)
                    if f.size:
                        res = max(res, float(np.abs(f - np.eye(f.shape[0])).max()))
    add("f-unit-gauge", res)

    Nd, F, R = cat.dense_tensors()
    add("pentagon", _kernels.pentagon_residual(Nd, F, force_backend=backend))
    Finv = _kernels.finv_dense(Nd, F)
    res = 0.0
    for i in range(r):
        for j in range(r):
            for k in range(r):
                for l in range(r):
                    lp = cat.left_pairs(i, j, k, l)
                    if not lp:
                        continue
                    fm = np.array([[F[i, j, k, l, m, n, a, b, c, d]
                                    for (n, c, d) in cat.right_pairs(i, j, k, l)]
                                   for (m, a, b) in lp])
                    fi = np.array([[Finv[i, j, k, l, n, c, d, m, a, b]
                                    for (m, a, b) in lp]
                                   for (n, c, d) in cat.right_pairs(i, j, k, l)])
                    if fm.size:
                        res = max(res, float(np.abs(fm @ fi - np.eye(fm.shape[0])).max()))
    add("f-invertibility", res)
    add("hexagon-braiding", _kernels.hexagon_residual(Nd, F, Finv, R, force_backend=backend))
    Rrev = np.zeros_like(R)
    for i in range(r):
        for j in range(r):
            for k in range(r):
                m = cat.Rinv(i, j, k)
                if m.size:
                    Rrev[i, j, k, : m.shape[0], : m.shape[1]] = m
    add("hexagon-inverse-braiding",
        _kernels.hexagon_residual(Nd, F, Finv, Rrev, force_backend=backend))

    der = cat.derive()
    dims = der.dims
    res = 0.0
    for i in range(r):
        tr = sum(dims[k] * np.trace(cat.Rmat(i, i, k)) for k in range(r) if N[i, i, k])
        res = max(res, abs(cat.theta[i] * dims[i] - tr))
    add("twist-consistency", res)

    target = np.zeros((r, r), dtype=complex)
    for i in range(r):
        target[i, cat.dual[i]] = der.global_dim
    add("s-invertibility", float(np.abs(der.s @ der.s - target).max()))

    if getattr(cat, "doc_dims", None) is not None:
        add("dims-crosscheck", float(np.abs(dims - np.asarray(cat.doc_dims)).max()))
    if getattr(cat, "doc_s", None) is not None:
        add("s-crosscheck", float(np.abs(der.s - np.asarray(cat.doc_s)).max()))

    return ValidationReport(entries, tol)


# ---------------------------------------------------------------------------
# reversal and Deligne product


def reverse_category(cat):
    """Invert braiding and twist (the category C_- of the same fusion data)."""

    def r_block(i, j, k):
        return cat.Rinv(i, j, k)

    rev = CategoryData(
        cat.rank,
        cat.dual,
        cat.N,
        1.0 / cat.theta,
        cat.Fmat,  # F data is shared, only braiding and twist flip
        r_block,
        labels=cat.labels,
        tolerance=cat.tolerance,
        name=cat.name + "_rev",
    )
    rev.base = cat
    return rev


def product_category(a, b):
    """Deligne product: labels are pairs, all data factorises."""
    ra, rb = a.rank, b.rank
    rank = ra * rb

    def flat(i1, i2):
        return i1 * rb + i2

    def split(i):
        return divmod(i, rb)

    dual = [flat(a.dual[i1], b.dual[i2]) for i1 in range(ra) for i2 in range(rb)]
    N = np.zeros((rank, rank, rank), dtype=np.int64)
    for i in range(rank):
        i1, i2 = split(i)
        for j in range(rank):
            j1, j2 = split(j)
            for k in range(rank):
                k1, k2 = split(k)
                N[i, j, k] = a.N[i1, j1, k1] * b.N[i2, j2, k2]
    theta = np.array(
        [a.theta[i1] * b.theta[i2] for i1 in range(ra) for i2 in range(rb)],
        dtype=np.complex128,
    )
    labels = [f"{a.labels[i1]}.{b.labels[i2]}" for i1 in range(ra) for i2 in range(rb)]

    def f_block(i, j, k, l):
        i1, i2 = split(i)
        j1, j2 = split(j)
        k1, k2 = split(k)
        l1, l2 = split(l)
        F1 = a.Fmat(i1, j1, k1, l1)
        F2 = b.Fmat(i2, j2, k2, l2)
        lp1 = {t: p for p, t in enumerate(a.left_pairs(i1, j1, k1, l1))}
        rp1 = {t: p for p, t in enumerate(a.right_pairs(i1, j1, k1, l1))}
        lp2 = {t: p for p, t in enumerate(b.left_pairs(i2, j2, k2, l2))}
        rp2 = {t: p for p, t in enumerate(b.right_pairs(i2, j2, k2, l2))}
        left = [
            (m, al, be)
            for m in range(rank)
            for al in range(N[i, j, m])
            for be in range(N[m, k, l])
        ]
        right = [
            (n, ga, de)
            for n in range(rank)
            for ga in range(N[j, k, n])
            for de in range(N[i, n, l])
        ]
        mat = np.zeros((len(left), len(right)), dtype=np.complex128)
        for p, (m, al, be) in enumerate(left):
            m1, m2 = split(m)
            a1, a2 = divmod(al, b.N[i2, j2, m2])
            b1, b2 = divmod(be, b.N[m2, k2, l2])
            for q, (n, ga, de) in enumerate(right):
                n1, n2 = split(n)
                c1, c2 = divmod(ga, b.N[j2, k2, n2])
                d1, d2 = divmod(de, b.N[i2, n2, l2])
                mat[p, q] = F1[lp1[(m1, a1, b1)], rp1[(n1, c1, d1)]] * F2[lp2[(m2, a2, b2)], rp2[(n2, c2, d2)]]
        return mat

    def r_block(i, j, k):
        i1, i2 = split(i)
        j1, j2 = split(j)
        k1, k2 = split(k)
        R1 = a.Rmat(i1, j1, k1)
        R2 = b.Rmat(i2, j2, k2)
        ni, nj = N[i, j, k], N[j, i, k]
        mat = np.zeros((ni, nj), dtype=np.complex128)
        for al in range(ni):
            a1, a2 = divmod(al, b.N[i2, j2, k2])
            for be in range(nj):
                b1, b2 = divmod(be, b.N[j2, i2, k2])
                mat[al, be] = R1[a1, b1] * R2[a2, b2]
        return mat

    prod = CategoryData(
        rank, dual, N, theta, f_block, r_block,
        labels=labels,
        tolerance=max(a.tolerance, b.tolerance),
        name=f"{a.name}*{b.name}",
    )
    prod.factors = (a, b)
    prod.flat_label = flat
    prod.split_label = split
    return prod


def double_category(cat):
    """C boxtimes C_-: the ambient category of full centres."""
    return product_category(cat, reverse_category(cat))
