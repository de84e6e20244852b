"""Algebra objects in a skeletal category: predicates, the star map,
idempotent splitting, left centres and algebra decomposition."""

import numpy as np

from .engine import (
    Mor, b_basis, braiding, coerce_obj, dual_obj, duality_obj, eye,
    mor_residual, simples_obj, tensor_mor, tensor_obj, trace, unit_obj,
    zero_mor,
)


class AlgebraError(Exception):
    pass


class AlgebraObj:
    """An object with multiplication and unit, optionally Frobenius."""

    def __init__(self, obj, m, eta, delta=None, eps=None, name="A"):
        self.obj = obj
        self.cat = obj.cat
        self.m = m
        self.eta = eta
        self.delta = delta
        self.eps = eps
        self.name = name

    @property
    def is_frobenius_candidate(self):
        return self.delta is not None and self.eps is not None

    def dim(self):
        return trace(eye(self.obj))

    def __repr__(self):
        return f"AlgebraObj({self.name}, {self.obj!r})"


def unit_algebra(cat):
    one = unit_obj(cat)
    i = eye(one)
    return AlgebraObj(one, i @ i, i, delta=i, eps=i, name="1")


# ---------------------------------------------------------------------------
# reports

class Flag:
    def __init__(self, name, residual, tol, applicable=True):
        self.name = name
        self.residual = float(residual)
        self.applicable = applicable
        self.holds = applicable and self.residual < tol

    def __repr__(self):
        if not self.applicable:
            return f"{self.name}: n/a"
        return f"{self.name}: {'YES' if self.holds else 'NO'} (residual {self.residual:.3e})"


class FrobeniusReport:
    def __init__(self, tol):
        self.tol = tol
        self.flags = {}
        self.zeta = None
        self.xi = None
        self.endo_dim = None

    def add(self, name, residual, applicable=True):
        self.flags[name] = Flag(name, residual, self.tol, applicable)

    def __getitem__(self, name):
        return self.flags[name]

    def holds(self, name):
        return self.flags[name].holds

    def lines(self):
        out = [repr(f) for f in self.flags.values()]
        if self.zeta is not None:
            out.append(f"zeta: {self.zeta:.6g}")
        if self.xi is not None:
            out.append(f"xi: {self.xi:.6g}")
        if self.endo_dim is not None:
            out.append(f"bimodule-endomorphisms: {self.endo_dim}")
        return out

    def __str__(self):
        return "\n".join(self.lines())


def _scalar_coefficient(f):
    """Best lambda with f ~ lambda*id, plus the deviation."""
    num = sum(np.trace(m) for m in f.blocks.values())
    den = sum(f.src.dim(k) for k in f.blocks) or 1
    lam = complex(num / den)
    dev = mor_residual(f, lam * eye(f.src))
    return lam, dev


# ---------------------------------------------------------------------------
# algebra / Frobenius checks

def check_algebra(A, tol=None):
    """Associativity and unit residuals."""
    tol = tol if tol is not None else A.cat.tolerance
    rep = FrobeniusReport(tol)
    m, eta, X = A.m, A.eta, A.obj
    assoc_l = m @ tensor_mor(m, eye(X))
    assoc_r = m @ tensor_mor(eye(X), m)
    rep.add("associative", mor_residual(assoc_l, assoc_r))
    ul = m @ tensor_mor(eta, eye(X)) @ coerce_obj(X, tensor_obj(unit_obj(A.cat), X))
    ur = m @ tensor_mor(eye(X), eta) @ coerce_obj(X, tensor_obj(X, unit_obj(A.cat)))
    rep.add("unital", max(mor_residual(ul, eye(X)), mor_residual(ur, eye(X))))
    return rep


def frobenius_report(A, tol=None, simple_via_endos=True):
    """All predicate flags of the algebra, with residuals."""
    tol = tol if tol is not None else A.cat.tolerance
    rep = check_algebra(A, tol)
    m, eta, X = A.m, A.eta, A.obj
    one = unit_obj(A.cat)
    rep.add("haploid", abs(X.dim(0) - 1))
    rep.add("commutative", mor_residual(m @ braiding(X, X), m))
    if not A.is_frobenius_candidate:
        for name in ("coassociative", "counital", "frobenius", "special",
                     "normalised_special", "symmetric"):
            rep.add(name, np.inf, applicable=False)
    else:
        d, e = A.delta, A.eps
        rep.add("coassociative",
                mor_residual(tensor_mor(d, eye(X)) @ d, tensor_mor(eye(X), d) @ d))
        cl = coerce_obj(tensor_obj(one, X), X) @ tensor_mor(e, eye(X)) @ d
        cr = coerce_obj(tensor_obj(X, one), X) @ tensor_mor(eye(X), e) @ d
        rep.add("counital", max(mor_residual(cl, eye(X)), mor_residual(cr, eye(X))))
        f1 = tensor_mor(eye(X), m) @ tensor_mor(d, eye(X))
        f2 = d @ m
        f3 = tensor_mor(m, eye(X)) @ tensor_mor(eye(X), d)
        rep.add("frobenius", max(mor_residual(f1, f2), mor_residual(f3, f2)))
        zeta, zres = _scalar_coefficient(m @ d)
        xi = (e @ eta).scalar()
        rep.zeta = zeta
        rep.xi = complex(xi)
        special_res = zres if abs(zeta) > tol and abs(xi) > tol else np.inf
        rep.add("special", special_res)
        rep.add("normalised_special", max(special_res, abs(zeta - 1.0)))
        # symmetric: the two canonical maps A -> A^dual coincide
        Xd = dual_obj(X)
        dd, bb, dt, bt = duality_obj(X)
        em = e @ m
        phi = tensor_mor(em, eye(Xd)) @ tensor_mor(eye(X), bb) @ coerce_obj(X, tensor_obj(X, one))
        phi = coerce_obj(phi.tgt, Xd) @ phi
        phip = tensor_mor(eye(Xd), em) @ tensor_mor(bt, eye(X)) @ coerce_obj(X, tensor_obj(one, X))
        phip = coerce_obj(phip.tgt, Xd) @ phip
        rep.add("symmetric", mor_residual(phi, phip))
    if simple_via_endos:
        endos = bimodule_endos(A)
        rep.endo_dim = len(endos)
        rep.add("absolutely_simple", abs(len(endos) - 1))
        rep.add("simple", abs(len(endos) - 1))
    return rep


# ---------------------------------------------------------------------------
# the star map

def star(f, A, B):
    """f^* : B -> A for f : A -> B between Frobenius algebras."""
    if not (A.is_frobenius_candidate and B.is_frobenius_candidate):
        raise AlgebraError("star needs Frobenius data on both algebras")
    one = unit_obj(A.cat)
    Xa, Xb = A.obj, B.obj
    s1 = tensor_mor(eye(Xb), A.delta @ A.eta) @ coerce_obj(Xb, tensor_obj(Xb, one))
    s2 = tensor_mor(eye(Xb), tensor_mor(f, eye(Xa)))
    s3 = tensor_mor(B.eps @ B.m, eye(Xa))
    out = s3 @ s2 @ s1
    return coerce_obj(out.tgt, Xa) @ out


# ---------------------------------------------------------------------------
# left-centre projector

def P_left(A):
    """m o c_{A,A} o Delta, the projector-like map onto the left centre."""
    if not A.is_frobenius_candidate:
        raise AlgebraError("P_left needs Frobenius data")
    return A.m @ braiding(A.obj, A.obj) @ A.delta


def zeta_of(A, tol=None):
    tol = tol if tol is not None else A.cat.tolerance
    zeta, res = _scalar_coefficient(A.m @ A.delta)
    if res > tol * 100 or abs(zeta) < tol:
        raise AlgebraError("algebra is not special: m o Delta is not a nonzero scalar")
    return zeta


# ---------------------------------------------------------------------------
# idempotent splitting

def split_idempotent(p, tol=None):
    """Split p = e o r with r o e = id; image read off sector by sector."""
    tol = tol if tol is not None else p.cat.tolerance
    if mor_residual(p @ p, p) > tol * 100:
        raise AlgebraError("morphism is not idempotent")
    cat = p.cat
    X = p.src
    ranks = [0] * cat.rank
    e_blocks, r_blocks = {}, {}
    for k in range(cat.rank):
        blk = p.block(k)
        if blk.size == 0:
            continue
        u, s, vh = np.linalg.svd(blk)
        rk = int(np.sum(s > tol * max(1.0, s[0] if s.size else 0.0)))
        ranks[k] = rk
        if rk:
            E = u[:, :rk]
            e_blocks[k] = E
            r_blocks[k] = E.conj().T @ blk
    img = simples_obj(cat, ranks)
    e = Mor(img, X, e_blocks)
    rr = Mor(X, img, r_blocks)
    return img, e, rr


def left_centre(A, tol=None):
    """(C_l(A), embedding): image of the normalised left projector."""
    tol = tol if tol is not None else A.cat.tolerance
    zeta = zeta_of(A, tol)
    P = (1.0 / zeta) * P_left(A)
    img, e, r = split_idempotent(P, tol)
    return img, e, r


# ---------------------------------------------------------------------------
# bimodule endomorphisms and decomposition

def hom_basis(X, Y):
    """Elementary-matrix basis of Hom(X, Y)."""
    out = []
    for k in range(X.cat.rank):
        dx, dy = X.dim(k), Y.dim(k)
        for i in range(dy):
            for j in range(dx):
                m = np.zeros((dy, dx), dtype=complex)
                m[i, j] = 1.0
                out.append(Mor(X, Y, {k: m}))
    return out


def _vectorize(f, sectors):
    return np.concatenate([f.block(k).ravel() for k in sectors]) if sectors else np.zeros(0)


def bimodule_endos(A, tol=None):
    """Basis of the A-bimodule endomorphisms of A, solved sector by sector."""
    tol = tol if tol is not None else A.cat.tolerance
    X, m = A.obj, A.m
    basis = hom_basis(X, X)
    if not basis:
        return []
    all_k = list(range(A.cat.rank))
    rows = []
    idX = eye(X)
    for f in basis:
        left = f @ m - m @ tensor_mor(idX, f)
        right = f @ m - m @ tensor_mor(f, idX)
        rows.append(np.concatenate([_vectorize(left, all_k), _vectorize(right, all_k)]))
    M = np.array(rows).T
    if M.size == 0:
        coeffs = np.eye(len(basis))
    else:
        u, s, vh = np.linalg.svd(M)
        ns = [vh[i].conj() for i in range(len(basis))
              if i >= len(s) or s[i] < tol * max(1.0, s[0])]
        coeffs = np.array(ns)
    out = []
    for c in coeffs:
        f = zero_mor(X, X)
        for ci, b in zip(c, basis):
            if abs(ci) > 0:
                f = f + ci * b
        out.append(f)
    return out


def is_simple(A, tol=None):
    return len(bimodule_endos(A, tol)) == 1


def _restrict_algebra(A, img, e, r, name):
    m_i = r @ A.m @ tensor_mor(e, e)
    eta_i = r @ A.eta
    delta_i = tensor_mor(r, r) @ A.delta @ e if A.delta is not None else None
    eps_i = A.eps @ e if A.eps is not None else None
    return AlgebraObj(img, m_i, eta_i, delta=delta_i, eps=eps_i, name=name)


def decompose_algebra(A, tol=None, max_seeds=8):
    """Split A into indecomposable algebra summands via central idempotents.

    Uses eigenprojectors of a generic element of the commutative
    bimodule-endomorphism algebra; retries with fresh seeds if the
    element is defective.
    """
    tol = tol if tol is not None else A.cat.tolerance
    endos = bimodule_endos(A, tol)
    X = A.obj
    if len(endos) <= 1:
        i = eye(X)
        return [(A, i, i)]
    for seed in range(max_seeds):
        rng = np.random.default_rng(1000 + seed)
        c = rng.standard_normal(len(endos))
        g = zero_mor(X, X)
        for ci, f in zip(c, endos):
            g = g + ci * f
        evs = np.concatenate([np.linalg.eigvals(g.block(k)) for k in X.sectors()])
        groups = []
        for ev in evs:
            for grp in groups:
                if abs(ev - grp[0]) < 1e-7 * max(1.0, np.abs(evs).max()):
                    grp.append(ev)
                    break
            else:
                groups.append([ev])
        lams = [np.mean(grp) for grp in groups]
        projs = []
        ok = True
        for li, lam in enumerate(lams):
            P = eye(X)
            for mj, mu in enumerate(lams):
                if mj == li:
                    continue
                P = (1.0 / (lam - mu)) * (P @ (g - mu * eye(X)))
            if mor_residual(P @ P, P) > 1e-7:
                ok = False
                break
            projs.append(P)
        if not ok:
            continue
        total = projs[0]
        for P in projs[1:]:
            total = total + P
        if mor_residual(total, eye(X)) > 1e-7:
            continue
        out = []
        for idx, P in enumerate(projs):
            img, e, r = split_idempotent(P, tol)
            out.append((_restrict_algebra(A, img, e, r, f"{A.name}[{idx}]"), e, r))
        return out
    raise AlgebraError("no generic element found for the decomposition")


# ---------------------------------------------------------------------------
# Frobenius structure from a counit

def frobenius_from_counit(A, eps, tol=None):
    """Comultiplication from a nondegenerate invariant pairing eps o m."""
    tol = tol if tol is not None else A.cat.tolerance
    X = A.obj
    one = unit_obj(A.cat)
    kappa = eps @ A.m  # X (x) X -> 1
    XX = tensor_obj(X, X)
    cols = b_basis(XX, 0)
    if not cols:
        raise AlgebraError("degenerate pairing: no invariant vectors")
    sectors = sorted(X.sectors())
    mats = []
    for g in cols:
        L = tensor_mor(kappa, eye(X)) @ tensor_mor(eye(X), g) @ coerce_obj(X, tensor_obj(X, one))
        L = coerce_obj(L.tgt, X) @ L
        mats.append(_vectorize(L, sectors))
    Mt = np.array(mats).T
    idv = _vectorize(eye(X), sectors)
    sol, res, rank, sv = np.linalg.lstsq(Mt, idv, rcond=None)
    if np.linalg.norm(Mt @ sol - idv) > 1e-8:
        raise AlgebraError("degenerate pairing: no copairing solves the zig-zag")
    gamma = zero_mor(one, XX)
    for ci, g in zip(sol, cols):
        gamma = gamma + ci * g
    delta = tensor_mor(A.m, eye(X)) @ tensor_mor(eye(X), gamma) @ coerce_obj(X, tensor_obj(X, one))
    delta = coerce_obj(delta.tgt, XX) @ delta
    return delta


# ---------------------------------------------------------------------------
# tensor product algebras

def tensor_algebra(A, B):
    """A (x) B with the inverse-braiding multiplication."""
    Xa, Xb = A.obj, B.obj
    X = tensor_obj(Xa, Xb)
    mid = braiding(Xb, Xa, inverse=True)  # (c_{A,B})^{-1} : B (x) A -> A (x) B
    m = tensor_mor(A.m, B.m) @ tensor_mor(tensor_mor(eye(Xa), mid), eye(Xb))
    m = m @ coerce_obj(tensor_obj(X, X), m.src)
    m = coerce_obj(m.tgt, X) @ m
    one = unit_obj(A.cat)
    eta = tensor_mor(A.eta, B.eta) @ coerce_obj(one, tensor_obj(one, one))
    eta = coerce_obj(eta.tgt, X) @ eta
    delta = eps = None
    if A.is_frobenius_candidate and B.is_frobenius_candidate:
        midc = braiding(Xa, Xb)  # c_{A,B} : A (x) B -> B (x) A
        delta = tensor_mor(tensor_mor(eye(Xa), midc), eye(Xb)) @ tensor_mor(A.delta, B.delta)
        delta = coerce_obj(delta.tgt, tensor_obj(X, X)) @ delta @ coerce_obj(X, delta.src)
        eps = tensor_mor(A.eps, B.eps)
        eps = coerce_obj(eps.tgt, one) @ eps @ coerce_obj(X, eps.src)
    return AlgebraObj(X, m, eta, delta=delta, eps=eps, name=f"{A.name}(x){B.name}")
