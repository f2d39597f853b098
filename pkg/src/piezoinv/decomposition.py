"""Harmonic decomposition Piez -> H3 + H1 + H2 + H1 and its inverse."""

from dataclasses import dataclass

import numpy as np

from .tensor_core import (
    DELTA,
    EPS,
    Harm2,
    Harm3,
    PiezoTensor,
    as_full3,
    check_piezo_symmetry,
    register_rotation,
    rotate,
)


@dataclass(frozen=True, eq=False)
class HarmonicParts:
    """Irreducible pieces (A, u, D, v) of a piezoelectric tensor."""

    A: Harm3
    u: np.ndarray
    D: Harm2
    v: np.ndarray

    def __post_init__(self):
        for name in ("u", "v"):
            arr = np.array(getattr(self, name), dtype=float)
            if arr.shape != (3,):
                raise ValueError(f"{name} must be a 3-vector, got shape {arr.shape}")
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    @classmethod
    def zero(cls) -> "HarmonicParts":
        return cls(Harm3.zero(), np.zeros(3), Harm2.zero(), np.zeros(3))

    def scaled(self, s: float) -> "HarmonicParts":
        return HarmonicParts(Harm3(s * self.A.comps), s * self.u, Harm2(s * self.D.comps), s * self.v)

    def as_vector(self) -> np.ndarray:
        """Flat (7 + 3 + 5 + 3) component vector, handy for comparisons."""
        return np.concatenate([self.A.comps, self.u, self.D.comps, self.v])


@register_rotation
def _(h: HarmonicParts, g):
    return HarmonicParts(rotate(g, h.A), rotate(g, h.u), rotate(g, h.D), rotate(g, h.v))


def decompose(P, diagnostics: bool = False):
    """Split ``P`` into its harmonic parts.

    Parameters
    ----------
    P : PiezoTensor or array_like
        Full (3, 3, 3) array symmetric in the last two indices, or the
        compact (3, 6) layout.
    diagnostics : bool
        Also return the intermediate arrays ``N`` (traceless, asymmetric) and
        ``S`` (totally symmetric) in a dict.

    Returns
    -------
    HarmonicParts, or (HarmonicParts, dict) when ``diagnostics`` is set.
    """
    P = as_full3(P)
    check_piezo_symmetry(P, tol=1e-10)
    N = np.einsum("klj,lki->ij", EPS, P)
    S = P - (np.einsum("jil,kl->ijk", EPS, N) + np.einsum("kil,jl->ijk", EPS, N)) / 3.0
    v = np.einsum("ijk,ij->k", EPS, N)
    D = N - 0.5 * np.einsum("ijk,k->ij", EPS, v)
    u = np.einsum("iik->k", S)
    A = S - (np.einsum("i,jk->ijk", u, DELTA) + np.einsum("j,ik->ijk", u, DELTA)
             + np.einsum("k,ij->ijk", u, DELTA)) / 5.0
    parts = HarmonicParts(Harm3.from_full(A), u, Harm2.from_full(D), v)
    if diagnostics:
        return parts, {"N": N, "S": S}
    return parts


def summands(h: HarmonicParts):
    """The four full-array terms whose sum is the recomposed tensor."""
    D = h.D.full
    u, v = h.u, h.v
    t_a = np.array(h.A.full)
    t_d = (np.einsum("ilk,lj->ijk", EPS, D) + np.einsum("ilj,lk->ijk", EPS, D)) / 3.0
    t_u = (np.einsum("ij,k->ijk", DELTA, u) + np.einsum("ik,j->ijk", DELTA, u)
           + np.einsum("jk,i->ijk", DELTA, u)) / 5.0
    t_v = (np.einsum("ijl,lkm,m->ijk", EPS, EPS, v)
           + np.einsum("ilk,lmj,m->ijk", EPS, EPS, v)) / 6.0
    return t_a, t_d, t_u, t_v


def recompose(h: HarmonicParts) -> PiezoTensor:
    P = sum(summands(h))
    # symmetric by construction; a failure here means corrupted parts
    check_piezo_symmetry(P, tol=1e-12)
    return PiezoTensor.from_full(P)


def decompose_batch(P: np.ndarray):
    """Vectorised decomposition of an ``(n, 3, 3, 3)`` stack.

    Returns full arrays ``(A, u, D, v)`` with shapes (n,3,3,3), (n,3),
    (n,3,3), (n,3).
    """
    P = np.asarray(P, dtype=float)
    N = np.einsum("klj,nlki->nij", EPS, P)
    S = P - (np.einsum("jil,nkl->nijk", EPS, N) + np.einsum("kil,njl->nijk", EPS, N)) / 3.0
    v = np.einsum("ijk,nij->nk", EPS, N)
    D = N - 0.5 * np.einsum("ijk,nk->nij", EPS, v)
    D = 0.5 * (D + D.transpose(0, 2, 1))
    u = np.einsum("niik->nk", S)
    A = S - (np.einsum("ni,jk->nijk", u, DELTA) + np.einsum("nj,ik->nijk", u, DELTA)
             + np.einsum("nk,ij->nijk", u, DELTA)) / 5.0
    return A, u, D, v
