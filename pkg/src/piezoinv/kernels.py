"""Hot batch kernels, each in a numba and a pure-numpy flavour.

The public names (``rotate3``, ``group_batch``, ``invariants_batch``) are
bound to the numba versions unless ``PIEZOINV_DISABLE_NUMBA`` is set. Both
flavours stay importable under ``*_numba`` / ``*_numpy`` for the benchmark
and the parity tests.

Array conventions: batches lead, so an order-3 batch is ``(n, 3, 3, 3)``.
Matrix slots are ordered B, D, F, G, H and vector slots u, v, w, c.
"""

import numpy as np

from ._accel import USE_NUMBA, njit

# invariant program opcodes
OP_TRACE = 0
OP_DOT = 1
OP_EPS = 2
OP_TRIPLE = 3
OP_I2 = 4
OP_I10 = 5

MAT_SLOTS = "BDFGH"
VEC_SLOTS = "uvwc"


# --------------------------------------------------------------------------
# rotation of third-order tensors


def rotate3_numpy(g, T):
    return np.einsum("nir,njs,nkt,nrst->nijk", g, g, g, T, optimize=True)


@njit
def rotate3_numba(g, T):
    n = T.shape[0]
    out = np.zeros((n, 3, 3, 3))
    tmp1 = np.zeros((3, 3, 3))
    tmp2 = np.zeros((3, 3, 3))
    for b in range(n):
        # contract one index at a time: 3 * 81 multiply-adds instead of 729
        for i in range(3):
            for s in range(3):
                for t in range(3):
                    acc = 0.0
                    for r in range(3):
                        acc += g[b, i, r] * T[b, r, s, t]
                    tmp1[i, s, t] = acc
        for i in range(3):
            for j in range(3):
                for t in range(3):
                    acc = 0.0
                    for s in range(3):
                        acc += g[b, j, s] * tmp1[i, s, t]
                    tmp2[i, j, t] = acc
        for i in range(3):
            for j in range(3):
                for k in range(3):
                    acc = 0.0
                    for t in range(3):
                        acc += g[b, k, t] * tmp2[i, j, t]
                    out[b, i, j, k] = acc
    return out


# --------------------------------------------------------------------------
# intermediate tensors B, c, F, G, E from (A, u, v, D)

_EPS = np.zeros((3, 3, 3))
for _i, _j, _k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
    _EPS[_i, _j, _k] = 1.0
    _EPS[_i, _k, _j] = -1.0


def group_batch_numpy(A, u, v, D):
    B = np.einsum("nikl,njkl->nij", A, A)
    c = np.einsum("nijk,njk->ni", A, B)
    F = np.einsum("nijk,nk->nij", A, u)
    G = np.einsum("nijk,nk->nij", A, v)
    E = np.einsum("nikl,jml,nkm->nij", A, _EPS, D, optimize=True)
    return B, c, F, G, E


@njit
def group_batch_numba(A, u, v, D):
    n = A.shape[0]
    B = np.zeros((n, 3, 3))
    c = np.zeros((n, 3))
    F = np.zeros((n, 3, 3))
    G = np.zeros((n, 3, 3))
    E = np.zeros((n, 3, 3))
    # (j, m, l) -> eps_jml, expanded once
    eps = np.zeros((3, 3, 3))
    eps[0, 1, 2] = 1.0
    eps[1, 2, 0] = 1.0
    eps[2, 0, 1] = 1.0
    eps[0, 2, 1] = -1.0
    eps[2, 1, 0] = -1.0
    eps[1, 0, 2] = -1.0
    for b in range(n):
        for i in range(3):
            for j in range(3):
                acc = 0.0
                for k in range(3):
                    for l in range(3):
                        acc += A[b, i, k, l] * A[b, j, k, l]
                B[b, i, j] = acc
        for i in range(3):
            acc = 0.0
            for j in range(3):
                for k in range(3):
                    acc += A[b, i, j, k] * B[b, j, k]
            c[b, i] = acc
        for i in range(3):
            for j in range(3):
                fu = 0.0
                gv = 0.0
                for k in range(3):
                    fu += A[b, i, j, k] * u[b, k]
                    gv += A[b, i, j, k] * v[b, k]
                F[b, i, j] = fu
                G[b, i, j] = gv
        for i in range(3):
            for j in range(3):
                acc = 0.0
                for k in range(3):
                    for m in range(3):
                        dkm = D[b, k, m]
                        if dkm == 0.0:
                            continue
                        for l in range(3):
                            e = eps[j, m, l]
                            if e != 0.0:
                                acc += A[b, i, k, l] * e * dkm
                E[b, i, j] = acc
    return B, c, F, G, E


# --------------------------------------------------------------------------
# table-driven invariant evaluation
#
# A program is (chains, terms, code):
#   chains[q] = (prefix, m): product C_q = C_prefix @ M_m, or M_m when prefix < 0;
#               prefixes always precede their extensions
#   terms[t]  = (q, x): vector C_q @ x_x, or x_x when q < 0
#   code[k]   = (op, a0, a1, a2) with operands
#               TRACE (q)  DOT (t, t)  EPS (x, q)  TRIPLE (t, t, t)  I2, I10 ()
# so every shared product is formed once per sample.


def invariants_batch_numpy(A, mats, vecs, chains, terms, code):
    n = mats.shape[0]
    C = np.empty((chains.shape[0], n, 3, 3))
    for q in range(chains.shape[0]):
        pre, m = chains[q]
        C[q] = mats[:, m] if pre < 0 else C[pre] @ mats[:, m]
    T = np.empty((terms.shape[0], n, 3))
    for t in range(terms.shape[0]):
        q, x = terms[t]
        T[t] = vecs[:, x] if q < 0 else np.einsum("nij,nj->ni", C[q], vecs[:, x])
    out = np.empty((n, code.shape[0]))
    op = code[:, 0]
    for kind in (OP_TRACE, OP_DOT, OP_EPS, OP_TRIPLE, OP_I2, OP_I10):
        ks = np.flatnonzero(op == kind)
        if ks.size == 0:
            continue
        a = code[ks, 1:]
        if kind == OP_TRACE:
            val = np.trace(C[a[:, 0]], axis1=2, axis2=3)
        elif kind == OP_DOT:
            val = np.einsum("kni,kni->kn", T[a[:, 0]], T[a[:, 1]])
        elif kind == OP_EPS:
            x = vecs[:, a[:, 0]].transpose(1, 0, 2)
            val = np.einsum("kni,ijl,knjl->kn", x, _EPS, C[a[:, 1]])
        elif kind == OP_TRIPLE:
            val = np.linalg.det(np.stack([T[a[:, 0]], T[a[:, 1]], T[a[:, 2]]], axis=-1))
        elif kind == OP_I2:
            val = np.broadcast_to(np.einsum("nijk,nijk->n", A, A), (ks.size, n))
        else:
            c = vecs[:, 3]
            val = np.broadcast_to(np.einsum("nijk,ni,nj,nk->n", A, c, c, c), (ks.size, n))
        out[:, ks] = val.T
    if np.any((op < OP_TRACE) | (op > OP_I10)):
        raise ValueError("unknown opcode in program")
    return out


@njit
def invariants_batch_numba(A, mats, vecs, chains, terms, code):
    n = mats.shape[0]
    nc, nt, nk = chains.shape[0], terms.shape[0], code.shape[0]
    out = np.empty((n, nk))
    C = np.empty((nc, 3, 3))
    T = np.empty((nt, 3))
    for b in range(n):
        for q in range(nc):
            pre, m = chains[q, 0], chains[q, 1]
            if pre < 0:
                for i in range(3):
                    for j in range(3):
                        C[q, i, j] = mats[b, m, i, j]
            else:
                for i in range(3):
                    for j in range(3):
                        C[q, i, j] = (C[pre, i, 0] * mats[b, m, 0, j] + C[pre, i, 1] * mats[b, m, 1, j]
                                      + C[pre, i, 2] * mats[b, m, 2, j])
        for t in range(nt):
            q, x = terms[t, 0], terms[t, 1]
            if q < 0:
                for i in range(3):
                    T[t, i] = vecs[b, x, i]
            else:
                for i in range(3):
                    T[t, i] = C[q, i, 0] * vecs[b, x, 0] + C[q, i, 1] * vecs[b, x, 1] + C[q, i, 2] * vecs[b, x, 2]
        for k in range(nk):
            op, a0, a1, a2 = code[k, 0], code[k, 1], code[k, 2], code[k, 3]
            val = 0.0
            if op == OP_TRACE:
                val = C[a0, 0, 0] + C[a0, 1, 1] + C[a0, 2, 2]
            elif op == OP_DOT:
                val = T[a0, 0] * T[a1, 0] + T[a0, 1] * T[a1, 1] + T[a0, 2] * T[a1, 2]
            elif op == OP_EPS:
                val = (
                    vecs[b, a0, 0] * (C[a1, 1, 2] - C[a1, 2, 1])
                    + vecs[b, a0, 1] * (C[a1, 2, 0] - C[a1, 0, 2])
                    + vecs[b, a0, 2] * (C[a1, 0, 1] - C[a1, 1, 0])
                )
            elif op == OP_TRIPLE:
                val = (
                    T[a0, 0] * (T[a1, 1] * T[a2, 2] - T[a1, 2] * T[a2, 1])
                    - T[a0, 1] * (T[a1, 0] * T[a2, 2] - T[a1, 2] * T[a2, 0])
                    + T[a0, 2] * (T[a1, 0] * T[a2, 1] - T[a1, 1] * T[a2, 0])
                )
            elif op == OP_I2:
                for i in range(3):
                    for j in range(3):
                        for l in range(3):
                            val += A[b, i, j, l] * A[b, i, j, l]
            elif op == OP_I10:
                for i in range(3):
                    for j in range(3):
                        for l in range(3):
                            val += A[b, i, j, l] * vecs[b, 3, i] * vecs[b, 3, j] * vecs[b, 3, l]
            out[b, k] = val
    return out


if USE_NUMBA:
    rotate3 = rotate3_numba
    group_batch = group_batch_numba
    invariants_batch = invariants_batch_numba
else:
    rotate3 = rotate3_numpy
    group_batch = group_batch_numpy
    invariants_batch = invariants_batch_numpy
