"""The nine intermediate tensors (B, c, F, G, H, w, D, u, v) and helpers for E, K."""

from dataclasses import dataclass

import numpy as np

from . import kernels
from .decomposition import HarmonicParts
from .tensor_core import (
    DELTA,
    Harm2,
    SymMat3,
    eps_bracket,
    eps_vec,
    register_rotation,
    rotate,
)


@dataclass(frozen=True, eq=False)
class IntermediateGroup:
    """B (symmetric), c, F, G, H (harmonic), w, plus the carried D, u, v.

    E is not stored: it is recovered as ``H - eps w`` (see :attr:`E`).
    """

    B: SymMat3
    c: np.ndarray
    F: Harm2
    G: Harm2
    H: Harm2
    w: np.ndarray
    D: Harm2
    u: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        for name in ("c", "w", "u", "v"):
            arr = np.array(getattr(self, name), dtype=float)
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    @property
    def E(self) -> np.ndarray:
        return self.H.full - eps_vec(self.w)

    @property
    def K(self) -> SymMat3:
        return k_from_b(self.B)

    @property
    def I2(self) -> float:
        return float(np.trace(self.B.full))

    @property
    def I4(self) -> float:
        B = self.B.full
        return float(np.sum(B * B))

    def mats(self) -> dict:
        return {"B": self.B.full, "D": self.D.full, "F": self.F.full,
                "G": self.G.full, "H": self.H.full}

    def vecs(self) -> dict:
        return {"u": self.u, "v": self.v, "w": self.w, "c": self.c}


@register_rotation
def _(grp: IntermediateGroup, g):
    return IntermediateGroup(
        B=rotate(g, grp.B), c=rotate(g, grp.c), F=rotate(g, grp.F), G=rotate(g, grp.G),
        H=rotate(g, grp.H), w=rotate(g, grp.w), D=rotate(g, grp.D), u=rotate(g, grp.u),
        v=rotate(g, grp.v),
    )


def split_e(E):
    """Split E into (H, w) with H symmetric traceless and E = H - eps w."""
    E = np.asarray(E, dtype=float)
    w = -0.5 * eps_bracket(E)
    H = E + eps_vec(w)
    return H, w


def e_tensor(A, D) -> np.ndarray:
    """E_ij = A_ikl eps_jml D_km, from full arrays."""
    A = np.ascontiguousarray(A, dtype=float)[None]
    D = np.ascontiguousarray(D, dtype=float)[None]
    zero = np.zeros((1, 3))
    return kernels.group_batch(A, zero, zero, D)[4][0]


def compute_group(h: HarmonicParts) -> IntermediateGroup:
    A = np.ascontiguousarray(h.A.full)[None]
    B, c, F, G, E = kernels.group_batch(A, h.u[None], h.v[None], np.ascontiguousarray(h.D.full)[None])
    H, w = split_e(E[0])
    return IntermediateGroup(
        B=SymMat3.from_full(B[0]), c=c[0], F=Harm2.from_full(F[0]), G=Harm2.from_full(G[0]),
        H=Harm2.from_full(H), w=w, D=h.D, u=h.u, v=h.v,
    )


def k_from_b(B) -> SymMat3:
    """K = 2B^2 - I2 B - (2 I4 - I2^2)/3 I, which equals A_ijk c_k."""
    B = B.full if isinstance(B, SymMat3) else np.asarray(B, dtype=float)
    i2 = np.trace(B)
    i4 = np.sum(B * B)
    return SymMat3.from_full(2.0 * B @ B - i2 * B - (2.0 * i4 - i2 * i2) / 3.0 * DELTA)


def group_batch(A, u, v, D):
    """Batch intermediates as full arrays: dict of B, c, F, G, H, w, D, u, v."""
    A = np.ascontiguousarray(A, dtype=float)
    u = np.ascontiguousarray(u, dtype=float)
    v = np.ascontiguousarray(v, dtype=float)
    D = np.ascontiguousarray(D, dtype=float)
    B, c, F, G, E = kernels.group_batch(A, u, v, D)
    w = -0.5 * np.einsum("ijk,njk->ni", kernels._EPS, E)
    H = E + np.einsum("ijk,nk->nij", kernels._EPS, w)
    H = 0.5 * (H + H.transpose(0, 2, 1))
    return {"B": B, "c": c, "F": F, "G": G, "H": H, "w": w, "D": D, "u": u, "v": v}
