"""The tensor functor T and its two-sided adjoint R.

T sends a pair object of C (x) C_- to the tensor product of its two
components in C; R sends A to the sum over simples of
(A (x) U_i^dual) x U_i.  Pair objects are words over pair labels whose
component words are padded with unit components, so splitting spaces
factorise on the nose and Deligne-factorised morphisms are ordinary
engine morphisms.
"""

import numpy as np

from . import engine as E
from .category import double_category
from .engine import (
    Mor, Obj, UNIT, b_basis, b_cobasis, braiding, coerce_obj,
    direct_sum_mor, duality_word, eye, is_leaf, is_unit, leaf, leaf_obj,
    node, tensor_mor, tensor_obj, trees, tree_pos, unit_obj, word_obj,
    zero_mor,
)


class _TreeMismatch(Exception):
    pass


def incl(X, s):
    """Inclusion of the s-th summand of a direct sum."""
    w = X.summands[s]
    src = Obj(X.cat, (w,))
    blocks = {}
    for k in src.sectors():
        m = np.zeros((X.dim(k), src.dim(k)), dtype=complex)
        off = X.offsets(k)[s]
        m[off : off + src.dim(k), :] = np.eye(src.dim(k))
        blocks[k] = m
    return Mor(src, X, blocks)


def proj(X, s):
    """Projection onto the s-th summand."""
    w = X.summands[s]
    tgt = Obj(X.cat, (w,))
    blocks = {}
    for k in tgt.sectors():
        m = np.zeros((tgt.dim(k), X.dim(k)), dtype=complex)
        off = X.offsets(k)[s]
        m[:, off : off + tgt.dim(k)] = np.eye(tgt.dim(k))
        blocks[k] = m
    return Mor(X, tgt, blocks)


class FunctorContext:
    """Base category C, the product C (x) C_-, and the (T, R) machinery."""

    def __init__(self, cat):
        self.cat = cat
        self.prod = double_category(cat)
        self.rev = self.prod.factors[1]
        self.der = cat.derive()
        self.dim = self.der.global_dim
        self.sqrt_dim = self.der.sqrt_dim
        self._deligne = {}

    # -- label and word embeddings ----------------------------------------

    def flat(self, i, j):
        return self.prod.flat_label(i, j)

    def split(self, k):
        return self.prod.split_label(k)

    def embed_word(self, w, side):
        if is_unit(w):
            return UNIT
        if is_leaf(w):
            lab = self.flat(w[1], 0) if side == 0 else self.flat(0, w[1])
            return ("L", lab, w[2])
        return node(self.embed_word(w[1], side), self.embed_word(w[2], side))

    def pair_word(self, wl, wr):
        return node(self.embed_word(wl, 0), self.embed_word(wr, 1))

    def embed_obj(self, X, side):
        return Obj(self.prod, tuple(self.embed_word(w, side) for w in X.summands))

    def embed_mor(self, f, side):
        src = self.embed_obj(f.src, side)
        tgt = self.embed_obj(f.tgt, side)
        key = (lambda k: self.flat(k, 0)) if side == 0 else (lambda k: self.flat(0, k))
        return Mor(src, tgt, {key(k): m for k, m in f.blocks.items()})

    def pair_obj(self, X, Y):
        return tensor_obj(self.embed_obj(X, 0), self.embed_obj(Y, 1))

    def pair_mor(self, f, g):
        """Deligne-factorised morphism f x g between pair objects."""
        return tensor_mor(self.embed_mor(f, 0), self.embed_mor(g, 1))

    # -- projections of product words --------------------------------------

    def project_word(self, w, side):
        if is_unit(w):
            return UNIT
        if is_leaf(w):
            return ("L", self.split(w[1])[side], w[2])
        return node(self.project_word(w[1], side), self.project_word(w[2], side))

    def _mult2(self, i2, j2, k2):
        n = int(self.rev.N[i2, j2, k2])
        return n if n else 1

    def _split_tree(self, t, k):
        if t[0] in ("U", "F"):
            return t, t
        _, i, j, al, lt, rt = t
        i1, i2 = self.split(i)
        j1, j2 = self.split(j)
        k1, k2 = self.split(k)
        a1, a2 = divmod(al, self._mult2(i2, j2, k2))
        l1, l2 = self._split_tree(lt, i)
        r1, r2 = self._split_tree(rt, j)
        return ("V", i1, j1, a1, l1, r1), ("V", i2, j2, a2, l2, r2)

    def _combine_tree(self, tl, tr, k1, k2):
        if tl[0] in ("U", "F"):
            if tl[0] != tr[0]:
                raise _TreeMismatch
            return tl
        if tr[0] in ("U", "F"):
            raise _TreeMismatch
        _, i1, j1, a1, l1, r1 = tl
        _, i2, j2, a2, l2, r2 = tr
        al = a1 * self._mult2(i2, j2, k2) + a2
        return ("V", self.flat(i1, i2), self.flat(j1, j2), al,
                self._combine_tree(l1, l2, i1, i2),
                self._combine_tree(r1, r2, j1, j2))

    def _embed_tree(self, t, side):
        if t[0] in ("U", "F"):
            return t
        _, i, j, al, lt, rt = t
        fi = self.flat(i, 0) if side == 0 else self.flat(0, i)
        fj = self.flat(j, 0) if side == 0 else self.flat(0, j)
        return ("V", fi, fj, al, self._embed_tree(lt, side), self._embed_tree(rt, side))

    def deligne_iso(self, w):
        """Permutation iso from a product word onto its padded pair form."""
        got = self._deligne.get(w)
        if got is not None:
            return got
        pl = self.project_word(w, 0)
        pr = self.project_word(w, 1)
        pw = self.pair_word(pl, pr)
        src = Obj(self.prod, (w,))
        tgt = Obj(self.prod, (pw,))
        blocks = {}
        for k in range(self.prod.rank):
            ts = trees(self.prod, w, k)
            if not ts:
                continue
            k1, k2 = self.split(k)
            tp = tree_pos(self.prod, pw, k)
            m = np.zeros((len(tp), len(ts)), dtype=complex)
            for col, t in enumerate(ts):
                tl, tr = self._split_tree(t, k)
                pt = ("V", self.flat(k1, 0), self.flat(0, k2), 0,
                      self._embed_tree(tl, 0), self._embed_tree(tr, 1))
                m[tp[pt], col] = 1.0
            blocks[k] = m
        out = Mor(src, tgt, blocks)
        self._deligne[w] = out
        return out

    def deligne_iso_inv(self, w):
        d = self.deligne_iso(w)
        return Mor(d.tgt, d.src, {k: m.T for k, m in d.blocks.items()})

    # -- the functor T ------------------------------------------------------

    def T_word(self, w):
        if is_unit(w):
            return UNIT
        return node(self.project_word(w, 0), self.project_word(w, 1))

    def T_obj(self, M):
        assert M.cat is self.prod, "T expects an object of the product category"
        return Obj(self.cat, tuple(self.T_word(w) for w in M.summands))

    def T_mor(self, f):
        assert f.cat is self.prod
        src = self.T_obj(f.src)
        tgt = self.T_obj(f.tgt)
        blocks = {}
        for k in range(self.cat.rank):
            if src.dim(k) == 0 or tgt.dim(k) == 0:
                continue
            m = np.zeros((tgt.dim(k), src.dim(k)), dtype=complex)
            for si, ws in enumerate(f.src.summands):
                for ti, wt in enumerate(f.tgt.summands):
                    self._t_block(f, k, si, ws, ti, wt, src, tgt, m)
            if m.any():
                blocks[k] = m
        return Mor(src, tgt, blocks)

    def _t_block(self, f, k, si, ws, ti, wt, src, tgt, m):
        cat, prod = self.cat, self.prod
        tws, twt = self.T_word(ws), self.T_word(wt)
        spos = tree_pos(cat, tws, k)
        tpos = tree_pos(cat, twt, k)
        if not spos or not tpos:
            return
        for tt, row in tpos.items():
            if tt[0] != "V":
                # unit word: only the empty tree at the unit sector
                kp = self.flat(0, 0)
                blk = f.blocks.get(kp)
                if blk is None:
                    continue
                for ts, col in spos.items():
                    if ts[0] != "V":
                        m[tgt.offsets(k)[ti] + row, src.offsets(k)[si] + col] += blk[
                            f.tgt.offsets(kp)[ti], f.src.offsets(kp)[si]
                        ]
                continue
            _, k1t, k2t, at, ltt, rtt = tt
            kp = self.flat(k1t, k2t)
            blk = f.blocks.get(kp)
            if blk is None:
                continue
            try:
                wtree = self._combine_tree(ltt, rtt, k1t, k2t)
            except _TreeMismatch:
                continue
            rp = tree_pos(prod, wt, kp).get(wtree)
            if rp is None:
                continue
            for ts, col in spos.items():
                if ts[0] != "V":
                    continue
                _, k1s, k2s, as_, lts, rts = ts
                if (k1s, k2s, as_) != (k1t, k2t, at):
                    continue
                try:
                    stree = self._combine_tree(lts, rts, k1s, k2s)
                except _TreeMismatch:
                    continue
                cp = tree_pos(prod, ws, kp).get(stree)
                if cp is None:
                    continue
                m[tgt.offsets(k)[ti] + row, src.offsets(k)[si] + col] += blk[
                    f.tgt.offsets(kp)[ti] + rp, f.src.offsets(kp)[si] + cp
                ]

    # -- the functor R ------------------------------------------------------

    def R_word(self, w, i):
        return self.pair_word(node(w, leaf(i, True)), leaf(i))

    def R_obj(self, A):
        assert A.cat is self.cat, "R expects an object of the base category"
        summands = []
        for i in range(self.cat.rank):
            for w in A.summands:
                summands.append(self.R_word(w, i))
        return Obj(self.prod, tuple(summands))

    def R_mor(self, f):
        assert f.cat is self.cat
        mors = []
        for i in range(self.cat.rank):
            li = leaf_obj(self.cat, i)
            lid = leaf_obj(self.cat, i, dual=True)
            mors.append(self.pair_mor(tensor_mor(f, eye(lid)), eye(li)))
        g = direct_sum_mor(mors)
        src, tgt = self.R_obj(f.src), self.R_obj(f.tgt)
        return coerce_obj(g.tgt, tgt) @ g @ coerce_obj(src, g.src)


# ---------------------------------------------------------------------------
# adjunction data

def delta_hat(ctx, M):
    """Unit of <T,R>: M -> RT(M), built from splitting bases and coevaluation."""
    cat, prod = ctx.cat, ctx.prod
    RTM = ctx.R_obj(ctx.T_obj(M))
    nm = len(M.summands)
    total = zero_mor(M, RTM)
    for s, w in enumerate(M.summands):
        pl = ctx.project_word(w, 0)
        pr = ctx.project_word(w, 1)
        Pl, Pr = word_obj(cat, pl), word_obj(cat, pr)
        dl = ctx.deligne_iso(w)
        for i in range(cat.rank):
            if Pr.dim(i) == 0:
                continue
            lid = leaf_obj(cat, i, dual=True)
            d, b, dt, bt = duality_word(cat, leaf(i))
            cols = b_basis(Pr, i)
            rows = b_cobasis(Pr, i)
            tgt_idx = i * nm + s
            tgt_word = Obj(prod, (RTM.summands[tgt_idx],))
            for a in range(len(cols)):
                left = (
                    tensor_mor(tensor_mor(eye(Pl), cols[a]), eye(lid))
                    @ tensor_mor(eye(Pl), b)
                    @ coerce_obj(Pl, tensor_obj(Pl, unit_obj(cat)))
                )
                comp = ctx.pair_mor(left, rows[a]) @ dl
                term = incl(RTM, tgt_idx) @ coerce_obj(comp.tgt, tgt_word) @ comp @ proj(M, s)
                total = total + term
    return total


def rho_hat(ctx, A):
    """Counit of <T,R>: TR(A) -> A, capping the dual pair."""
    cat = ctx.cat
    TRA = ctx.T_obj(ctx.R_obj(A))
    na = len(A.summands)
    total = zero_mor(TRA, A)
    for i in range(cat.rank):
        d, b, dt, bt = duality_word(cat, leaf(i))
        for s, w in enumerate(A.summands):
            src_idx = i * na + s
            W = word_obj(cat, w)
            comp = tensor_mor(eye(W), d)
            comp = coerce_obj(comp.tgt, W) @ comp
            src_word = Obj(cat, (TRA.summands[src_idx],))
            term = incl(A, s) @ comp @ coerce_obj(src_word, comp.src) @ proj(TRA, src_idx)
            total = total + term
    return total


def rho_check(ctx, M):
    """RT(M) -> M, carrying the Dim C / dim U_i factors."""
    cat, prod = ctx.cat, ctx.prod
    RTM = ctx.R_obj(ctx.T_obj(M))
    nm = len(M.summands)
    dims = ctx.der.dims
    total = zero_mor(RTM, M)
    for s, w in enumerate(M.summands):
        pl = ctx.project_word(w, 0)
        pr = ctx.project_word(w, 1)
        Pl, Pr = word_obj(cat, pl), word_obj(cat, pr)
        dli = ctx.deligne_iso_inv(w)
        for i in range(cat.rank):
            if Pr.dim(i) == 0:
                continue
            lid = leaf_obj(cat, i, dual=True)
            d, b, dt, bt = duality_word(cat, leaf(i))
            cols = b_basis(Pr, i)
            rows = b_cobasis(Pr, i)
            src_idx = i * nm + s
            src_word = Obj(prod, (RTM.summands[src_idx],))
            for a in range(len(cols)):
                left = (
                    tensor_mor(eye(Pl), dt)
                    @ tensor_mor(tensor_mor(eye(Pl), rows[a]), eye(lid))
                )
                left = coerce_obj(left.tgt, Pl) @ left
                comp = ctx.pair_mor(left, cols[a])
                term = (ctx.dim / dims[i]) * (
                    incl(M, s) @ dli @ comp @ coerce_obj(src_word, comp.src) @ proj(RTM, src_idx)
                )
                total = total + term
    return total


def delta_check(ctx, A):
    """A -> TR(A), carrying the dim U_i / Dim C factors."""
    cat = ctx.cat
    TRA = ctx.T_obj(ctx.R_obj(A))
    na = len(A.summands)
    dims = ctx.der.dims
    total = zero_mor(A, TRA)
    for i in range(cat.rank):
        d, b, dt, bt = duality_word(cat, leaf(i))
        for s, w in enumerate(A.summands):
            tgt_idx = i * na + s
            W = word_obj(cat, w)
            comp = tensor_mor(eye(W), bt) @ coerce_obj(W, tensor_obj(W, unit_obj(cat)))
            tgt_word = Obj(cat, (TRA.summands[tgt_idx],))
            term = (dims[i] / ctx.dim) * (
                incl(TRA, tgt_idx) @ coerce_obj(comp.tgt, tgt_word) @ comp @ proj(A, s)
            )
            total = total + term
    return total


# ---------------------------------------------------------------------------
# hom-space bijections of the two adjunctions

def hat_chi(ctx, f, M):
    """Hom(T(M), A) -> Hom(M, R(A))."""
    return ctx.R_mor(f) @ delta_hat(ctx, M)


def hat_chi_inv(ctx, g, A):
    """Hom(M, R(A)) -> Hom(T(M), A)."""
    return rho_hat(ctx, A) @ ctx.T_mor(g)


def check_chi(ctx, g, M):
    """Hom(A, T(M)) -> Hom(R(A), M)."""
    return rho_check(ctx, M) @ ctx.R_mor(g)


def check_chi_inv(ctx, h, A):
    """Hom(R(A), M) -> Hom(A, T(M))."""
    return ctx.T_mor(h) @ delta_check(ctx, A)


# ---------------------------------------------------------------------------
# tensor / lax / colax structure maps

def phi2_T(ctx, M1, M2):
    """T(M1) (x) T(M2) -> T(M1 (x) M2): the middle inverse braiding."""
    cat = ctx.cat
    flat = []
    for w1 in M1.summands:
        for w2 in M2.summands:
            U = word_obj(cat, ctx.project_word(w1, 0))
            V = word_obj(cat, ctx.project_word(w1, 1))
            W = word_obj(cat, ctx.project_word(w2, 0))
            X = word_obj(cat, ctx.project_word(w2, 1))
            mid = braiding(V, W, inverse=True)
            flat.append(tensor_mor(tensor_mor(eye(U), mid), eye(X)))
    g = direct_sum_mor(flat)
    src = tensor_obj(ctx.T_obj(M1), ctx.T_obj(M2))
    tgt = ctx.T_obj(tensor_obj(M1, M2))
    return coerce_obj(g.tgt, tgt) @ g @ coerce_obj(src, g.src)


def psi2_T(ctx, M1, M2):
    """T(M1 (x) M2) -> T(M1) (x) T(M2): inverse of phi2_T."""
    cat = ctx.cat
    flat = []
    for w1 in M1.summands:
        for w2 in M2.summands:
            U = word_obj(cat, ctx.project_word(w1, 0))
            V = word_obj(cat, ctx.project_word(w1, 1))
            W = word_obj(cat, ctx.project_word(w2, 0))
            X = word_obj(cat, ctx.project_word(w2, 1))
            mid = braiding(W, V)
            flat.append(tensor_mor(tensor_mor(eye(U), mid), eye(X)))
    g = direct_sum_mor(flat)
    src = ctx.T_obj(tensor_obj(M1, M2))
    tgt = tensor_obj(ctx.T_obj(M1), ctx.T_obj(M2))
    return coerce_obj(g.tgt, tgt) @ g @ coerce_obj(src, g.src)


def phi2_R(ctx, A, B):
    """R(A) (x) R(B) -> R(A (x) B)."""
    RA, RB = ctx.R_obj(A), ctx.R_obj(B)
    M = tensor_obj(RA, RB)
    f = tensor_mor(rho_hat(ctx, A), rho_hat(ctx, B)) @ psi2_T(ctx, RA, RB)
    return ctx.R_mor(f) @ delta_hat(ctx, M)


def psi2_R(ctx, A, B):
    """R(A (x) B) -> R(A) (x) R(B)."""
    RA, RB = ctx.R_obj(A), ctx.R_obj(B)
    M = tensor_obj(RA, RB)
    g = phi2_T(ctx, RA, RB) @ tensor_mor(delta_check(ctx, A), delta_check(ctx, B))
    return rho_check(ctx, M) @ ctx.R_mor(g)


def phi0_R(ctx):
    """1x1 -> R(1): the unit-summand inclusion."""
    R1 = ctx.R_obj(unit_obj(ctx.cat))
    one_p = unit_obj(ctx.prod)
    w0 = Obj(ctx.prod, (R1.summands[0],))
    return incl(R1, 0) @ coerce_obj(one_p, w0)


def psi0_R(ctx):
    """R(1) -> 1x1: Dim C times the unit-summand projection."""
    return rho_check(ctx, unit_obj(ctx.prod))
