"""Hot validation kernels over dense fusion data.

Dense layouts (r = rank, M = max fusion multiplicity):

    N[i,j,k]                        int64   (r,r,r)
    F[i,j,k,l,m,n,al,be,ga,de]      complex (r,r,r,r,r,r,M,M,M,M)
    Finv[i,j,k,l,n,ga,de,m,al,be]   complex (r,r,r,r,r,M,M,r,M,M)
    R[i,j,k,al,be]                  complex (r,r,r,M,M)

F[i,j,k,l] is the change of basis from the left-fused tree basis
(m,al,be) of Hom(U_l, (U_i U_j) U_k) to the right-fused basis (n,ga,de)
of Hom(U_l, U_i (U_j U_k)); Finv is its matrix inverse, zero-padded.
R[i,j,k] maps (i,j)-vertex indices to (j,i)-vertex indices under the
braiding c_{i,j}.

Entries outside the admissible multiplicity ranges are zero.
"""

import numpy as np

from .backend import HAS_NUMBA, njit


def finv_dense(N, F):
    """Invert every admissible F-matrix, scattering into the Finv layout."""
    r = N.shape[0]
    M = F.shape[6]
    Finv = np.zeros((r, r, r, r, r, M, M, r, M, M), dtype=np.complex128)
    for i in range(r):
        for j in range(r):
            for k in range(r):
                for l in range(r):
                    left = [
                        (m, a, b)
                        for m in range(r)
                        for a in range(N[i, j, m])
                        for b in range(N[m, k, l])
                    ]
                    right = [
                        (n, c, d)
                        for n in range(r)
                        for c in range(N[j, k, n])
                        for d in range(N[i, n, l])
                    ]
                    if not left or not right:
                        continue
                    mat = np.array(
                        [[F[i, j, k, l, m, n, a, b, c, d] for (n, c, d) in right] for (m, a, b) in left]
                    )
                    try:
                        inv = np.linalg.inv(mat)
                    except np.linalg.LinAlgError:
                        # degenerate data; validation reports it via f-invertibility
                        inv = np.linalg.pinv(mat)
                    for p, (n, c, d) in enumerate(right):
                        for q, (m, a, b) in enumerate(left):
                            Finv[i, j, k, l, n, c, d, m, a, b] = inv[p, q]
    return Finv


# ---------------------------------------------------------------------------
# pentagon

def _pentagon_py(N, F):
    r = N.shape[0]
    worst = 0.0
    for a in range(r):
        for b in range(r):
            for c in range(r):
                for d in range(r):
                    for e in range(r):
                        for f in range(r):
                            if N[a, b, f] == 0:
                                continue
                            for g in range(r):
                                if N[f, c, g] == 0 or N[g, d, e] == 0:
                                    continue
                                for p in range(r):
                                    if N[c, d, p] == 0:
                                        continue
                                    for q in range(r):
                                        if N[b, p, q] == 0 or N[a, q, e] == 0:
                                            continue
                                        for al in range(N[a, b, f]):
                                            for be in range(N[f, c, g]):
                                                for mu in range(N[g, d, e]):
                                                    for ta in range(N[c, d, p]):
                                                        for si in range(N[b, p, q]):
                                                            for nu in range(N[a, q, e]):
                                                                lhs = 0j
                                                                for ro in range(N[f, p, e]):
                                                                    lhs += (
                                                                        F[f, c, d, e, g, p, be, mu, ta, ro]
                                                                        * F[a, b, p, e, f, q, al, ro, si, nu]
                                                                    )
                                                                rhs = 0j
                                                                for h in range(r):
                                                                    n1 = N[b, c, h]
                                                                    n2 = N[a, h, g]
                                                                    n3 = N[h, d, q]
                                                                    if n1 == 0 or n2 == 0 or n3 == 0:
                                                                        continue
                                                                    for ga in range(n1):
                                                                        for b2 in range(n2):
                                                                            for de in range(n3):
                                                                                rhs += (
                                                                                    F[a, b, c, g, f, h, al, be, ga, b2]
                                                                                    * F[a, h, d, e, g, q, b2, mu, de, nu]
                                                                                    * F[b, c, d, q, h, p, ga, de, ta, si]
                                                                                )
                                                                diff = abs(lhs - rhs)
                                                                if diff > worst:
                                                                    worst = diff
    return worst


def _pentagon_numpy(N, F):
    # einsum over zero-padded dense tensors; padding keeps both sides exact
    if F.shape[6] != 1:
        return _pentagon_py(N, F)
    Fs = np.ascontiguousarray(F[..., 0, 0, 0, 0])
    r = N.shape[0]
    worst = 0.0
    for a in range(r):
        for b in range(r):
            for c in range(r):
                for d in range(r):
                    A = Fs[:, c, d, :, :, :]      # (f,e,g,p)
                    B = Fs[a, b, :, :, :, :]      # (p,e,f,q)
                    lhs = np.einsum("fegp,pefq->efgpq", A, B, optimize=True)
                    C1 = Fs[a, b, c]              # (g,f,h)
                    C2 = Fs[a, :, d, :, :, :]     # (h,e,g,q)
                    C3 = Fs[b, c, d]              # (q,h,p)
                    rhs = np.einsum("gfh,hegq,qhp->efgpq", C1, C2, C3, optimize=True)
                    diff = np.abs(lhs - rhs).max()
                    if diff > worst:
                        worst = diff
    return float(worst)


@njit(cache=False)
def _pentagon_nb(N, F):  # pragma: no cover - exercised via backend dispatch
    r = N.shape[0]
    worst = 0.0
    for a in range(r):
        for b in range(r):
            for c in range(r):
                for d in range(r):
                    for e in range(r):
                        for f in range(r):
                            if N[a, b, f] == 0:
                                continue
                            for g in range(r):
                                if N[f, c, g] == 0 or N[g, d, e] == 0:
                                    continue
                                for p in range(r):
                                    if N[c, d, p] == 0:
                                        continue
                                    for q in range(r):
                                        if N[b, p, q] == 0 or N[a, q, e] == 0:
                                            continue
                                        for al in range(N[a, b, f]):
                                            for be in range(N[f, c, g]):
                                                for mu in range(N[g, d, e]):
                                                    for ta in range(N[c, d, p]):
                                                        for si in range(N[b, p, q]):
                                                            for nu in range(N[a, q, e]):
                                                                lhs = 0j
                                                                for ro in range(N[f, p, e]):
                                                                    lhs += (
                                                                        F[f, c, d, e, g, p, be, mu, ta, ro]
                                                                        * F[a, b, p, e, f, q, al, ro, si, nu]
                                                                    )
                                                                rhs = 0j
                                                                for h in range(r):
                                                                    n1 = N[b, c, h]
                                                                    n2 = N[a, h, g]
                                                                    n3 = N[h, d, q]
                                                                    if n1 == 0 or n2 == 0 or n3 == 0:
                                                                        continue
                                                                    for ga in range(n1):
                                                                        for b2 in range(n2):
                                                                            for de in range(n3):
                                                                                rhs += (
                                                                                    F[a, b, c, g, f, h, al, be, ga, b2]
                                                                                    * F[a, h, d, e, g, q, b2, mu, de, nu]
                                                                                    * F[b, c, d, q, h, p, ga, de, ta, si]
                                                                                )
                                                                diff = abs(lhs - rhs)
                                                                if diff > worst:
                                                                    worst = diff
    return worst


# ---------------------------------------------------------------------------
# hexagon

def _hexagon_py(N, F, Finv, R):
    r = N.shape[0]
    worst = 0.0
    for a in range(r):
        for b in range(r):
            for c in range(r):
                for e in range(r):
                    # bases: rows (n,ga,de) of a(bc); cols (n2,g2,d2) of (bc)a
                    for n in range(r):
                        if N[b, c, n] == 0 or N[a, n, e] == 0:
                            continue
                        for n2 in range(r):
                            if N[b, c, n2] == 0 or N[n2, a, e] == 0:
                                continue
                            for ga in range(N[b, c, n]):
                                for de in range(N[a, n, e]):
                                    for g2 in range(N[b, c, n2]):
                                        for d2 in range(N[n2, a, e]):
                                            lhs = 0j
                                            if n == n2 and ga == g2:
                                                lhs = R[a, n, e, de, d2]
                                            rhs = 0j
                                            for m in range(r):
                                                if N[a, b, m] == 0 or N[b, a, m] == 0 or N[m, c, e] == 0:
                                                    continue
                                                for q in range(r):
                                                    if N[a, c, q] == 0 or N[c, a, q] == 0 or N[b, q, e] == 0:
                                                        continue
                                                    for al in range(N[a, b, m]):
                                                        for a2 in range(N[b, a, m]):
                                                            for be in range(N[m, c, e]):
                                                                for ro in range(N[a, c, q]):
                                                                    for r2 in range(N[c, a, q]):
                                                                        for si in range(N[b, q, e]):
                                                                            rhs += (
                                                                                Finv[a, b, c, e, n, ga, de, m, al, be]
                                                                                * R[a, b, m, al, a2]
                                                                                * F[b, a, c, e, m, q, a2, be, ro, si]
                                                                                * R[a, c, q, ro, r2]
                                                                                * Finv[b, c, a, e, q, r2, si, n2, g2, d2]
                                                                            )

                                            diff = abs(lhs - rhs)
                                            if diff > worst:
                                                worst = diff
    return worst


def _hexagon_numpy(N, F, Finv, R):
    r = N.shape[0]
    worst = 0.0
    for a in range(r):
        for b in range(r):
            for c in range(r):
                for e in range(r):
                    T1 = Finv[a, b, c, e]
                    T3 = F[b, a, c, e]
                    T5 = Finv[b, c, a, e]
                    rhs = np.einsum(
                        "ngdmxb,mxX,mqXbrs,qrR,qRsNGD->ngdNGD",
                        T1,
                        R[a, b],
                        T3,
                        R[a, c],
                        T5,
                        optimize=True,
                    )
                    lhs = np.zeros_like(rhs)
                    M = R.shape[3]
                    for n in range(r):
                        if N[b, c, n] == 0 or N[a, n, e] == 0 or N[n, a, e] == 0:
                            continue
                        for ga in range(N[b, c, n]):
                            lhs[n, ga, :, n, ga, :] = R[a, n, e]
                    diff = np.abs(lhs - rhs).max()
                    if diff > worst:
                        worst = diff
    return float(worst)


@njit(cache=False)
def _hexagon_nb(N, F, Finv, R):  # pragma: no cover - exercised via backend dispatch
    r = N.shape[0]
    worst = 0.0
    for a in range(r):
        for b in range(r):
            for c in range(r):
                for e in range(r):
                    for n in range(r):
                        if N[b, c, n] == 0 or N[a, n, e] == 0:
                            continue
                        for n2 in range(r):
                            if N[b, c, n2] == 0 or N[n2, a, e] == 0:
                                continue
                            for ga in range(N[b, c, n]):
                                for de in range(N[a, n, e]):
                                    for g2 in range(N[b, c, n2]):
                                        for d2 in range(N[n2, a, e]):
                                            lhs = 0j
                                            if n == n2 and ga == g2:
                                                lhs = R[a, n, e, de, d2]
                                            rhs = 0j
                                            for m in range(r):
                                                if N[a, b, m] == 0 or N[b, a, m] == 0 or N[m, c, e] == 0:
                                                    continue
                                                for q in range(r):
                                                    if N[a, c, q] == 0 or N[c, a, q] == 0 or N[b, q, e] == 0:
                                                        continue
                                                    for al in range(N[a, b, m]):
                                                        for a2 in range(N[b, a, m]):
                                                            for be in range(N[m, c, e]):
                                                                for ro in range(N[a, c, q]):
                                                                    for r2 in range(N[c, a, q]):
                                                                        for si in range(N[b, q, e]):
                                                                            rhs += (
                                                                                Finv[a, b, c, e, n, ga, de, m, al, be]
                                                                                * R[a, b, m, al, a2]
                                                                                * F[b, a, c, e, m, q, a2, be, ro, si]
                                                                                * R[a, c, q, ro, r2]
                                                                                * Finv[b, c, a, e, q, r2, si, n2, g2, d2]
                                                                            )
                                            diff = abs(lhs - rhs)
                                            if diff > worst:
                                                worst = diff
    return worst


def pentagon_residual(N, F, force_backend=None):
    """Max deviation between the two recoupling paths on four strands."""
    backend = force_backend or ("numba" if HAS_NUMBA else "numpy")
    if backend == "numba" and HAS_NUMBA:
        return float(_pentagon_nb(N, F))
    return float(_pentagon_numpy(N, F))


def hexagon_residual(N, F, Finv, R, force_backend=None):
    """Max deviation between braiding a strand directly and via F-moves."""
    backend = force_backend or ("numba" if HAS_NUMBA else "numpy")
    if backend == "numba" and HAS_NUMBA:
        return float(_hexagon_nb(N, F, Finv, R))
    return float(_hexagon_numpy(N, F, Finv, R))
