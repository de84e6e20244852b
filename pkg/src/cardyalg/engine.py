"""Objects and morphisms of a skeletal category.

An object expression is a formal direct sum of parenthesized tensor
words over simple labels; a word leaf may carry a dual marker (the leaf
is realized as the dual label together with the category's duality
normalisation).  A morphism is stored sector by sector: for each simple
label k a complex matrix between the splitting spaces Hom(U_k, source)
and Hom(U_k, target).

Splitting bases are ordered fusion trees of the word's shape; any
rebracketing is an explicit invertible coercion built from F-moves, and
unit leaves are stripped through the strict-unit gauge.
"""

import numpy as np

# ---------------------------------------------------------------------------
# words

UNIT = ("1",)


def leaf(i, dual=False):
    return ("L", int(i), bool(dual))


def node(l, r):
    return ("N", l, r)


def is_unit(w):
    return w == UNIT


def is_leaf(w):
    return w[0] == "L"


def realized(cat, w):
    """Simple label realizing a leaf."""
    return cat.dual[w[1]] if w[2] else w[1]


def flatten(cat, w):
    """Realized labels of the non-unit leaves, in order."""
    if is_unit(w):
        return ()
    if is_leaf(w):
        r = realized(cat, w)
        return () if r == 0 else (r,)
    return flatten(cat, w[1]) + flatten(cat, w[2])


def dual_word(w):
    if is_unit(w):
        return UNIT
    if is_leaf(w):
        return ("L", w[1], not w[2])
    return node(dual_word(w[2]), dual_word(w[1]))


def word_str(cat, w):
    if is_unit(w):
        return "1"
    if is_leaf(w):
        name = cat.labels[w[1]]
        return name + ("'" if w[2] else "")
    return f"({word_str(cat, w[1])}*{word_str(cat, w[2])})"


# ---------------------------------------------------------------------------
# splitting trees

def trees(cat, w, k):
    """Ordered fusion-tree basis of Hom(U_k, w)."""
    cache = cat.caches.setdefault("trees", {})
    key = (w, k)
    out = cache.get(key)
    if out is not None:
        return out
    if is_unit(w):
        out = (("U",),) if k == 0 else ()
    elif is_leaf(w):
        out = (("F",),) if realized(cat, w) == k else ()
    else:
        acc = []
        r = cat.rank
        L, R = w[1], w[2]
        for i in range(r):
            tl = trees(cat, L, i)
            if not tl:
                continue
            for j in range(r):
                nv = cat.N[i, j, k]
                if nv == 0:
                    continue
                tr_ = trees(cat, R, j)
                if not tr_:
                    continue
                for a in range(nv):
                    for x in tl:
                        for y in tr_:
                            acc.append(("V", i, j, a, x, y))
        out = tuple(acc)
    cache[key] = out
    return out


def tree_pos(cat, w, k):
    cache = cat.caches.setdefault("tree_pos", {})
    key = (w, k)
    out = cache.get(key)
    if out is None:
        out = {t: p for p, t in enumerate(trees(cat, w, k))}
        cache[key] = out
    return out


def word_dim(cat, w, k):
    return len(trees(cat, w, k))


def word_segments(cat, w, k):
    """For a node word: [(i, j, nv, nl, nr, start)] segment table at sector k."""
    cache = cat.caches.setdefault("segments", {})
    key = (w, k)
    out = cache.get(key)
    if out is not None:
        return out
    segs = []
    pos = 0
    r = cat.rank
    L, R = w[1], w[2]
    for i in range(r):
        nl = word_dim(cat, L, i)
        if nl == 0:
            continue
        for j in range(r):
            nv = int(cat.N[i, j, k])
            if nv == 0:
                continue
            nr = word_dim(cat, R, j)
            if nr == 0:
                continue
            segs.append((i, j, nv, nl, nr, pos))
            pos += nv * nl * nr
    cache[key] = segs
    return segs


# ---------------------------------------------------------------------------
# word-level transforms (blocks: dict k -> matrix trees(src,k) -> trees(tgt,k))

def _id_transform(cat, w):
    return {k: np.eye(word_dim(cat, w, k), dtype=complex)
            for k in range(cat.rank) if word_dim(cat, w, k)}


def _lift_pair(cat, w_src, w_tgt, TL, TR):
    """Blocks of (TL x TR) from node(Lsrc,Rsrc) to node(Ltgt,Rtgt)."""
    out = {}
    for k in range(cat.rank):
        ssegs = word_segments(cat, w_src, k)
        if not ssegs:
            continue
        tsegs = {(i, j): (nv, nl, nr, st) for (i, j, nv, nl, nr, st) in word_segments(cat, w_tgt, k)}
        m = np.zeros((word_dim(cat, w_tgt, k), word_dim(cat, w_src, k)), dtype=complex)
        for (i, j, nv, nl, nr, st) in ssegs:
            if (i, j) not in tsegs:
                continue
            tv, tl, tr_, tst = tsegs[(i, j)]
            bl = TL.get(i)
            br = TR.get(j)
            if bl is None or br is None:
                continue
            sub = np.kron(np.eye(nv, dtype=complex), np.kron(bl, br))
            m[tst : tst + tv * tl * tr_, st : st + nv * nl * nr] = sub
        out[k] = m
    return out


def _strip(cat, w):
    """Remove unit leaves; returns (word, transform blocks)."""
    cache = cat.caches.setdefault("strip", {})
    got = cache.get(w)
    if got is not None:
        return got
    if is_unit(w):
        res = (UNIT, _id_transform(cat, w))
    elif is_leaf(w):
        if realized(cat, w) == 0:
            res = (UNIT, {0: np.eye(1, dtype=complex)})
        else:
            res = (w, _id_transform(cat, w))
    else:
        L, R = w[1], w[2]
        Ls, TL = _strip(cat, L)
        Rs, TR = _strip(cat, R)
        mid = node(Ls, Rs)
        T = _lift_pair(cat, w, mid, TL, TR)
        if is_unit(Ls) and is_unit(Rs):
            T2 = {}
            if 0 in T:
                T2[0] = T[0]  # node(1,1) has the single tree (0,0)-vertex
            res = (UNIT, T2)
        elif is_unit(Ls):
            # trees ('V',0,k,0,U,rt) -> rt, order preserved
            res = (Rs, T)
        elif is_unit(Rs):
            res = (Ls, T)
        else:
            res = (mid, T)
    cache[w] = res
    return res


def _rotate_root(cat, w):
    """Coercion X(YZ) -> (XY)Z at the root; returns (word, blocks)."""
    L, R = w[1], w[2]
    assert not is_leaf(R) and not is_unit(R)
    Y, Z = R[1], R[2]
    tgt = node(node(L, Y), Z)
    out = {}
    for k in range(cat.rank):
        src_trees = trees(cat, w, k)
        if not src_trees:
            continue
        tpos = tree_pos(cat, tgt, k)
        m = np.zeros((len(tpos), len(src_trees)), dtype=complex)
        for col, t in enumerate(src_trees):
            _, a, q, de, tX, inner = t
            _, b, c, ga, tY, tZ = inner
            finv = cat.Finv(a, b, c, k)
            rpos = {tr: p for p, tr in enumerate(cat.right_pairs(a, b, c, k))}
            lprs = cat.left_pairs(a, b, c, k)
            row_src = rpos[(q, ga, de)]
            for p, (mm, al, be) in enumerate(lprs):
                coef = finv[row_src, p]
                if coef == 0:
                    continue
                tt = ("V", mm, c, be, ("V", a, b, al, tX, tY), tZ)
                m[tpos[tt], col] += coef
        out[k] = m
    return tgt, out


def _compose_T(T2, T1):
    out = {}
    for k, m2 in T2.items():
        m1 = T1.get(k)
        if m1 is not None:
            out[k] = m2 @ m1
    return out


def _comb(cat, w):
    """Left-comb normal form of a unit-free word; returns (word, blocks)."""
    cache = cat.caches.setdefault("comb", {})
    got = cache.get(w)
    if got is not None:
        return got
    if is_unit(w) or is_leaf(w):
        res = (w, _id_transform(cat, w))
    else:
        L, R = w[1], w[2]
        Lc, TL = _comb(cat, L)
        Rc, TR = _comb(cat, R)
        cur = node(Lc, Rc)
        T = _lift_pair(cat, w, cur, TL, TR)
        while not (is_leaf(cur[2]) or is_unit(cur[2])):
            cur2, Trot = _rotate_root(cat, cur)
            T = _compose_T(Trot, T)
            # re-comb the new left child, then lift
            lc2, Tl2 = _comb(cat, cur2[1])
            cur = node(lc2, cur2[2])
            T = _compose_T(_lift_pair(cat, cur2, cur, Tl2, _id_transform(cat, cur2[2])), T)
        res = (cur, T)
    cache[w] = res
    return res


def word_coerce(cat, w1, w2):
    """Blocks of the canonical isomorphism w1 -> w2 (same non-unit leaves)."""
    cache = cat.caches.setdefault("coerce", {})
    key = (w1, w2)
    got = cache.get(key)
    if got is not None:
        return got
    if flatten(cat, w1) != flatten(cat, w2):
        raise ValueError(
            f"words are not coercible: {word_str(cat, w1)} vs {word_str(cat, w2)}"
        )
    w1s, S1 = _strip(cat, w1)
    w2s, S2 = _strip(cat, w2)
    c1, C1 = _comb(cat, w1s)
    c2, C2 = _comb(cat, w2s)
    assert c1 == c2
    A = _compose_T(C1, S1)
    B = _compose_T(C2, S2)
    out = {}
    for k, m in A.items():
        b = B.get(k)
        if b is None:
            continue
        out[k] = np.linalg.solve(b, m) if b.size else m
    cache[key] = out
    return out


# ---------------------------------------------------------------------------
# object expressions

class Obj:
    """Formal direct sum of words over a fixed category."""

    __slots__ = ("cat", "summands", "_dims", "_offsets")

    def __init__(self, cat, summands):
        self.cat = cat
        self.summands = tuple(summands)
        self._dims = {}
        self._offsets = {}

    def dim(self, k):
        d = self._dims.get(k)
        if d is None:
            d = sum(word_dim(self.cat, w, k) for w in self.summands)
            self._dims[k] = d
        return d

    def offsets(self, k):
        off = self._offsets.get(k)
        if off is None:
            off = []
            pos = 0
            for w in self.summands:
                off.append(pos)
                pos += word_dim(self.cat, w, k)
            self._offsets[k] = off
        return off

    def sectors(self):
        return [k for k in range(self.cat.rank) if self.dim(k)]

    def total_dim(self):
        """Quantum dimension of the underlying object."""
        d = self.cat.derive().dims
        return complex(sum(self.dim(k) * d[k] for k in self.sectors()))

    def mult_vector(self):
        return [self.dim(k) for k in range(self.cat.rank)]

    def __eq__(self, other):
        return isinstance(other, Obj) and self.cat is other.cat and self.summands == other.summands

    def __hash__(self):
        return hash((id(self.cat), self.summands))

    def __repr__(self):
        if not self.summands:
            return "Obj(0)"
        return "Obj(" + " + ".join(word_str(self.cat, w) for w in self.summands) + ")"


def unit_obj(cat):
    return Obj(cat, (UNIT,))


def leaf_obj(cat, i, dual=False):
    return Obj(cat, (leaf(i, dual),))


def word_obj(cat, w):
    return Obj(cat, (w,))


def sum_obj(cat, objs):
    summands = []
    for o in objs:
        summands.extend(o.summands)
    return Obj(cat, summands)


def dual_obj(X):
    return Obj(X.cat, tuple(dual_word(w) for w in X.summands))


def tensor_obj(X, Y):
    return Obj(X.cat, tuple(node(x, y) for x in X.summands for y in Y.summands))


def simples_obj(cat, mults):
    """Object from a multiplicity vector over the simple labels."""
    summands = []
    for i, n in enumerate(mults):
        summands.extend([leaf(i)] * int(n))
    return Obj(cat, summands)


# ---------------------------------------------------------------------------
# morphisms

class Mor:
    __slots__ = ("cat", "src", "tgt", "blocks")

    def __init__(self, src, tgt, blocks):
        assert src.cat is tgt.cat
        self.cat = src.cat
        self.src = src
        self.tgt = tgt
        self.blocks = {}
        for k, m in blocks.items():
            m = np.asarray(m, dtype=complex)
            if m.size:
                assert m.shape == (tgt.dim(k), src.dim(k)), (
                    k, m.shape, tgt.dim(k), src.dim(k))
                self.blocks[k] = m

    def block(self, k):
        m = self.blocks.get(k)
        if m is None:
            m = np.zeros((self.tgt.dim(k), self.src.dim(k)), dtype=complex)
        return m

    def norm(self):
        return max((float(np.abs(m).max()) for m in self.blocks.values() if m.size), default=0.0)

    def __add__(self, other):
        assert self.src == other.src and self.tgt == other.tgt
        out = {k: self.block(k) + other.block(k)
               for k in set(self.blocks) | set(other.blocks)}
        return Mor(self.src, self.tgt, out)

    def __sub__(self, other):
        return self + (-1.0) * other

    def __rmul__(self, scalar):
        return Mor(self.src, self.tgt, {k: scalar * m for k, m in self.blocks.items()})

    def __matmul__(self, other):
        return compose(self, other)

    def scalar(self):
        """Value of an endomorphism of the unit."""
        b = self.block(0)
        return complex(b[0, 0]) if b.size else 0.0

    def __repr__(self):
        return f"Mor({self.src!r} -> {self.tgt!r})"


def eye(X):
    return Mor(X, X, {k: np.eye(X.dim(k), dtype=complex) for k in X.sectors()})


def zero_mor(X, Y):
    return Mor(X, Y, {})


def coerce_obj(X, Y):
    """Canonical isomorphism between expressions with matching summand leaves."""
    if X == Y:
        return eye(X)
    if len(X.summands) != len(Y.summands):
        raise ValueError("coercion needs equal summand counts")
    cat = X.cat
    blocks = {}
    for k in range(cat.rank):
        if X.dim(k) == 0 and Y.dim(k) == 0:
            continue
        m = np.zeros((Y.dim(k), X.dim(k)), dtype=complex)
        xo, yo = X.offsets(k), Y.offsets(k)
        for s, (wx, wy) in enumerate(zip(X.summands, Y.summands)):
            sub = word_coerce(cat, wx, wy).get(k)
            if sub is not None and sub.size:
                m[yo[s] : yo[s] + sub.shape[0], xo[s] : xo[s] + sub.shape[1]] = sub
        blocks[k] = m
    return Mor(X, Y, blocks)


def compose(g, f):
    """g after f, coercing f.tgt to g.src when the bracketing differs."""
    if f.tgt != g.src:
        f = coerce_obj(f.tgt, g.src) @ f
    out = {}
    for k in g.blocks:
        mf = f.blocks.get(k)
        if mf is not None:
            out[k] = g.blocks[k] @ mf
    return Mor(f.src, g.tgt, out)


def compose_many(*mors):
    out = mors[0]
    for m in mors[1:]:
        out = out @ m
    return out


def tensor_mor(f, g):
    """Tensor product, blocks assembled through the pair decomposition."""
    cat = f.cat
    src = tensor_obj(f.src, g.src)
    tgt = tensor_obj(f.tgt, g.tgt)
    blocks = {}
    ns_g = len(g.src.summands)
    nt_g = len(g.tgt.summands)
    for k in range(cat.rank):
        if src.dim(k) == 0 or tgt.dim(k) == 0:
            continue
        m = np.zeros((tgt.dim(k), src.dim(k)), dtype=complex)
        so, to = src.offsets(k), tgt.offsets(k)
        for si, ws1 in enumerate(f.src.summands):
            for sj, ws2 in enumerate(g.src.summands):
                s_pair = si * ns_g + sj
                wsrc = src.summands[s_pair]
                ssegs = word_segments(cat, wsrc, k)
                if not ssegs:
                    continue
                for ti, wt1 in enumerate(f.tgt.summands):
                    for tj, wt2 in enumerate(g.tgt.summands):
                        t_pair = ti * nt_g + tj
                        wtgt = tgt.summands[t_pair]
                        tsegs = {(i, j): (nv, nl, nr, st)
                                 for (i, j, nv, nl, nr, st) in word_segments(cat, wtgt, k)}
                        for (i, j, nv, nl, nr, st) in ssegs:
                            if (i, j) not in tsegs:
                                continue
                            fi = f.blocks.get(i)
                            gj = g.blocks.get(j)
                            if fi is None or gj is None:
                                continue
                            fo_s = f.src.offsets(i)[si]
                            fo_t = f.tgt.offsets(i)[ti]
                            go_s = g.src.offsets(j)[sj]
                            go_t = g.tgt.offsets(j)[tj]
                            tv, tl, tr_, tst = tsegs[(i, j)]
                            fsub = fi[fo_t : fo_t + tl, fo_s : fo_s + nl]
                            gsub = gj[go_t : go_t + tr_, go_s : go_s + nr]
                            if not fsub.any() or not gsub.any():
                                continue
                            sub = np.kron(np.eye(nv, dtype=complex), np.kron(fsub, gsub))
                            m[to[t_pair] + tst : to[t_pair] + tst + nv * tl * tr_,
                              so[s_pair] + st : so[s_pair] + st + nv * nl * nr] += sub
        if m.any():
            blocks[k] = m
    return Mor(src, tgt, blocks)


def tensor_many(*mors):
    out = mors[0]
    for m in mors[1:]:
        out = tensor_mor(out, m)
    return out


def direct_sum_mor(mors):
    """Block-diagonal morphism between the concatenated expressions."""
    cat = mors[0].cat
    src = sum_obj(cat, [m.src for m in mors])
    tgt = sum_obj(cat, [m.tgt for m in mors])
    blocks = {}
    for k in range(cat.rank):
        if src.dim(k) == 0 or tgt.dim(k) == 0:
            continue
        m = np.zeros((tgt.dim(k), src.dim(k)), dtype=complex)
        rs = cs = 0
        for f in mors:
            b = f.block(k)
            if b.size:
                m[rs : rs + b.shape[0], cs : cs + b.shape[1]] = b
            rs += f.tgt.dim(k)
            cs += f.src.dim(k)
        blocks[k] = m
    return Mor(src, tgt, blocks)


def mor_residual(f, g):
    """Max-abs block difference, after coercing g onto f's endpoints."""
    if f.src != g.src:
        g = g @ coerce_obj(f.src, g.src)
    if f.tgt != g.tgt:
        g = coerce_obj(g.tgt, f.tgt) @ g
    return max(
        (float(np.abs(f.block(k) - g.block(k)).max())
         for k in set(f.blocks) | set(g.blocks)),
        default=0.0,
    )


def random_morphism(X, Y, seed):
    rng = np.random.default_rng(seed)
    blocks = {}
    for k in range(X.cat.rank):
        dx, dy = X.dim(k), Y.dim(k)
        if dx and dy:
            blocks[k] = rng.standard_normal((dy, dx)) + 1j * rng.standard_normal((dy, dx))
    return Mor(X, Y, blocks)


# ---------------------------------------------------------------------------
# braiding, twist, duality, traces

def braiding(X, Y, inverse=False):
    """c_{X,Y}: X Y -> Y X;  with inverse=True the morphism (c_{Y,X})^{-1}."""
    cat = X.cat
    src = tensor_obj(X, Y)
    tgt = tensor_obj(Y, X)
    nsY = len(Y.summands)
    nsX = len(X.summands)
    blocks = {}
    for k in range(cat.rank):
        if src.dim(k) == 0:
            continue
        m = np.zeros((tgt.dim(k), src.dim(k)), dtype=complex)
        so, to = src.offsets(k), tgt.offsets(k)
        for a, wx in enumerate(X.summands):
            for b, wy in enumerate(Y.summands):
                s_pair = a * nsY + b
                t_pair = b * nsX + a
                wsrc = src.summands[s_pair]
                wtgt = tgt.summands[t_pair]
                tsegs = {(lj, li): (nv, nl, nr, st)
                         for (lj, li, nv, nl, nr, st) in word_segments(cat, wtgt, k)}
                for (i, j, nv, nl, nr, st) in word_segments(cat, wsrc, k):
                    if (j, i) not in tsegs:
                        continue
                    R = cat.Rinv(i, j, k) if inverse else cat.Rmat(i, j, k)
                    tv, tl, tr_, tst = tsegs[(j, i)]
                    # source index (al, xt, yt) -> target (be, yt, xt);
                    # target segment has left dim tl = nr, right dim tr_ = nl
                    for al in range(nv):
                        for be in range(tv):
                            coef = R[al, be]
                            if coef == 0:
                                continue
                            for xt in range(nl):
                                rows = to[t_pair] + tst + be * tl * tr_ + np.arange(nr) * tr_ + xt
                                cols = so[s_pair] + st + al * nl * nr + xt * nr + np.arange(nr)
                                m[rows, cols] += coef
        blocks[k] = m
    return Mor(src, tgt, blocks)


def twist_mor(X):
    """Ribbon twist: theta_k on every sector."""
    th = X.cat.theta
    return Mor(X, X, {k: th[k] * np.eye(X.dim(k), dtype=complex) for k in X.sectors()})


def _leaf_duality(cat, w):
    """(d, b, dt, bt) for a leaf word, as block data."""
    i = realized(cat, w)
    ib = cat.dual[i]
    lw = ("L", i, False) if not w[2] else w
    # normalisation: b = the splitting vertex, d = gamma * fusion vertex,
    # gamma fixed by the zig-zag scalar (an F-entry in the strict gauge)
    lp = cat.left_pairs(i, ib, i, i)
    rp = cat.right_pairs(i, ib, i, i)
    li = next(p for p, (m, _, _) in enumerate(lp) if m == 0)
    ri = next(p for p, (n, _, _) in enumerate(rp) if n == 0)
    kappa = cat.Fmat(i, ib, i, i)[li, ri]
    gamma = 1.0 / kappa
    return i, ib, gamma


def duality_word(cat, w):
    """Duality morphisms (d, b, dt, bt) of a word.

    d : w^ (x) w -> 1,  b : 1 -> w (x) w^,
    dt: w (x) w^ -> 1,  bt: 1 -> w^ (x) w.
    """
    cache = cat.caches.setdefault("duality", {})
    got = cache.get(w)
    if got is not None:
        return got
    wd = dual_word(w)
    X = word_obj(cat, w)
    Xd = word_obj(cat, wd)
    one = unit_obj(cat)
    if is_unit(w):
        m = eye(one)
        res = (m, m, m, m)
    elif is_leaf(w):
        i = realized(cat, w)
        ib = cat.dual[i]
        if not w[2]:
            gi = _leaf_duality(cat, ("L", i, False))[2]
            # b: single splitting tree of (i, ibar) at the unit
            tb = trees(cat, node(w, wd), 0)
            bblk = np.zeros((len(tb), 1), dtype=complex)
            bblk[tree_pos(cat, node(w, wd), 0)[("V", i, ib, 0, ("F",), ("F",))], 0] = 1.0
            b = Mor(one, tensor_obj(X, Xd), {0: bblk})
            td = trees(cat, node(wd, w), 0)
            dblk = np.zeros((1, len(td)), dtype=complex)
            dblk[0, tree_pos(cat, node(wd, w), 0)[("V", ib, i, 0, ("F",), ("F",))]] = gi
            d = Mor(tensor_obj(Xd, X), one, {0: dblk})
            th = cat.theta[i]
            dt = d @ braiding(X, Xd) @ tensor_mor(th * eye(X), eye(Xd))
            bt = tensor_mor(eye(Xd), th * eye(X)) @ braiding(X, Xd) @ b
            res = (d, b, dt, bt)
        else:
            # the dual marker swaps the two dualities of the plain leaf
            dp, bp, dtp, btp = duality_word(cat, ("L", i, False))
            res = (dtp, btp, dp, bp)
    else:
        L, R = w[1], w[2]
        dL, bL, dtL, btL = duality_word(cat, L)
        dR, bR, dtR, btR = duality_word(cat, R)
        Lo, Ro = word_obj(cat, L), word_obj(cat, R)
        Ld, Rd = word_obj(cat, dual_word(L)), word_obj(cat, dual_word(R))
        # d: (R^ L^)(L R) -> 1 pairs the inner L first, then the outer R
        d = dR @ tensor_many(eye(Rd), dL, eye(Ro))
        d = d @ coerce_obj(tensor_obj(Xd, X), d.src)
        b = tensor_many(eye(Lo), bR, eye(Ld)) @ bL
        b = coerce_obj(b.tgt, tensor_obj(X, Xd)) @ b
        dt = dtL @ tensor_many(eye(Lo), dtR, eye(Ld))
        dt = dt @ coerce_obj(tensor_obj(X, Xd), dt.src)
        bt = tensor_many(eye(Rd), btL, eye(Ro)) @ btR
        bt = coerce_obj(bt.tgt, tensor_obj(Xd, X)) @ bt
        res = (d, b, dt, bt)
    cache[w] = res
    return res


def duality_obj(X):
    """Duality morphisms of a direct sum: diagonal assembly over summands."""
    cat = X.cat
    Xd = dual_obj(X)
    one = unit_obj(cat)
    src_d = tensor_obj(Xd, X)
    src_dt = tensor_obj(X, Xd)
    n = len(X.summands)
    d_blocks, b_blocks, dt_blocks, bt_blocks = {}, {}, {}, {}
    for s, w in enumerate(X.summands):
        dw, bw, dtw, btw = duality_word(cat, w)
        # diagonal pair position of summand s in the tensor grids
        for k in dw.blocks:
            m = d_blocks.setdefault(k, np.zeros((1, src_d.dim(k)), dtype=complex))
            off = src_d.offsets(k)[s * n + s]
            m[:, off : off + dw.blocks[k].shape[1]] += dw.blocks[k]
        for k in dtw.blocks:
            m = dt_blocks.setdefault(k, np.zeros((1, src_dt.dim(k)), dtype=complex))
            off = src_dt.offsets(k)[s * n + s]
            m[:, off : off + dtw.blocks[k].shape[1]] += dtw.blocks[k]
        for k in bw.blocks:
            m = b_blocks.setdefault(k, np.zeros((src_dt.dim(k), 1), dtype=complex))
            off = src_dt.offsets(k)[s * n + s]
            m[off : off + bw.blocks[k].shape[0], :] += bw.blocks[k]
        for k in btw.blocks:
            m = bt_blocks.setdefault(k, np.zeros((src_d.dim(k), 1), dtype=complex))
            off = src_d.offsets(k)[s * n + s]
            m[off : off + btw.blocks[k].shape[0], :] += btw.blocks[k]
    d = Mor(src_d, one, d_blocks)
    b = Mor(one, src_dt, b_blocks)
    dt = Mor(src_dt, one, dt_blocks)
    bt = Mor(one, src_d, bt_blocks)
    return d, b, dt, bt


def trace(f):
    """Quantum trace of an endomorphism."""
    if f.src != f.tgt:
        f = coerce_obj(f.tgt, f.src) @ f
    d = f.cat.derive().dims
    return complex(sum(np.trace(m) * d[k] for k, m in f.blocks.items()))


def ptrace_right(f, X, Xp, Y):
    """Partial quantum trace over the right factor Y of f: X Y -> Xp Y."""
    dY, bY, dtY, btY = duality_obj(Y)
    Yd = dual_obj(Y)
    res = tensor_mor(eye(Xp), dtY) @ tensor_mor(f, eye(Yd)) @ tensor_mor(eye(X), bY)
    res = coerce_obj(res.tgt, Xp) @ res @ coerce_obj(X, res.src)
    return res


def reorder_summands(X, perm):
    """Iso X -> Obj with summands permuted: new[i] = old[perm[i]]."""
    cat = X.cat
    tgt = Obj(cat, tuple(X.summands[p] for p in perm))
    blocks = {}
    for k in X.sectors():
        m = np.zeros((tgt.dim(k), X.dim(k)), dtype=complex)
        xo, to = X.offsets(k), tgt.offsets(k)
        for new, old in enumerate(perm):
            d = word_dim(cat, X.summands[old], k)
            if d:
                m[to[new] : to[new] + d, xo[old] : xo[old] + d] = np.eye(d)
        blocks[k] = m
    return Mor(X, tgt, blocks)


def b_basis(X, k):
    """Splitting basis morphisms U_k -> X (columns of the identity)."""
    src = leaf_obj(X.cat, k)
    out = []
    for a in range(X.dim(k)):
        col = np.zeros((X.dim(k), 1), dtype=complex)
        col[a, 0] = 1.0
        out.append(Mor(src, X, {k: col}))
    return out


def b_cobasis(X, k):
    """Dual functionals X -> U_k (rows of the identity)."""
    tgt = leaf_obj(X.cat, k)
    out = []
    for a in range(X.dim(k)):
        row = np.zeros((1, X.dim(k)), dtype=complex)
        row[0, a] = 1.0
        out.append(Mor(X, tgt, {k: row}))
    return out


def dims_via_duality(cat):
    """Left and right dimensions of every simple from the engine itself."""
    out = []
    for i in range(cat.rank):
        d, b, dt, bt = duality_word(cat, leaf(i))
        out.append((complex((d @ bt).scalar()), complex((dt @ b).scalar())))
    return out
