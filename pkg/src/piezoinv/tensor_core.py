"""Fixed-size 3D tensor algebra.

Storage types keep only independent components; ``.full`` expands them into
plain numpy arrays. Vectors are plain ``(3,)`` arrays. Index conventions
follow the usual 1-based physics notation in names and docstrings, 0-based
in code.
"""

from dataclasses import dataclass
from functools import cached_property, singledispatch

import numpy as np

from . import kernels

EPS = kernels._EPS.copy()
EPS.flags.writeable = False
DELTA = np.eye(3)
DELTA.flags.writeable = False

# column order of the compact 3x6 piezoelectric layout: 11, 22, 33, 23, 13, 12
VOIGT_PAIRS = ((0, 0), (1, 1), (2, 2), (1, 2), (0, 2), (0, 1))

ATOL = 1e-13


def levi_civita(i: int, j: int, k: int) -> int:
    """Levi-Civita symbol with 1-based indices."""
    for idx in (i, j, k):
        if idx not in (1, 2, 3):
            raise ValueError(f"index {idx!r} out of range 1..3")
    if (i, j, k) in ((1, 2, 3), (2, 3, 1), (3, 1, 2)):
        return 1
    if (i, j, k) in ((1, 3, 2), (2, 1, 3), (3, 2, 1)):
        return -1
    return 0


def rel_close(a, b, rtol: float, atol: float = ATOL) -> bool:
    """Norm-scaled comparison: ||a - b|| <= max(rtol * max(||a||, ||b||), atol)."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    scale = max(np.linalg.norm(a), np.linalg.norm(b))
    return bool(np.linalg.norm(a - b) <= max(rtol * scale, atol))


def _ro(arr):
    arr.flags.writeable = False
    return arr


def _frozen(x, shape):
    arr = np.array(x, dtype=float)
    if arr.shape != shape:
        raise ValueError(f"expected shape {shape}, got {arr.shape}")
    arr.flags.writeable = False
    return arr


# --------------------------------------------------------------------------
# storage types


@dataclass(frozen=True, eq=False)
class SymMat3:
    """Symmetric 3x3 matrix stored as (M11, M22, M33, M23, M13, M12)."""

    comps: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "comps", _frozen(self.comps, (6,)))

    @classmethod
    def from_full(cls, M) -> "SymMat3":
        M = np.asarray(M, dtype=float)
        S = 0.5 * (M + M.T)
        return cls([S[i, j] for i, j in VOIGT_PAIRS])

    @cached_property
    def full(self) -> np.ndarray:
        M = np.empty((3, 3))
        for x, (i, j) in zip(self.comps, VOIGT_PAIRS):
            M[i, j] = M[j, i] = x
        return _ro(M)

    def __repr__(self):
        return f"SymMat3({self.comps.tolist()})"


@dataclass(frozen=True, eq=False)
class Harm2:
    """Symmetric traceless 3x3 matrix stored as (M11, M22, M23, M13, M12)."""

    comps: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "comps", _frozen(self.comps, (5,)))

    @classmethod
    def from_full(cls, M) -> "Harm2":
        M = np.asarray(M, dtype=float)
        S = 0.5 * (M + M.T)
        S = S - np.trace(S) / 3.0 * DELTA
        return cls([S[0, 0], S[1, 1], S[1, 2], S[0, 2], S[0, 1]])

    @classmethod
    def zero(cls) -> "Harm2":
        return cls(np.zeros(5))

    @cached_property
    def full(self) -> np.ndarray:
        m11, m22, m23, m13, m12 = self.comps
        return _ro(np.array(
            [[m11, m12, m13], [m12, m22, m23], [m13, m23, -m11 - m22]]
        ))

    def __repr__(self):
        return f"Harm2({self.comps.tolist()})"


@dataclass(frozen=True, eq=False)
class SkewMat3:
    """Skew-symmetric 3x3 matrix stored as (W23, W13, W12)."""

    comps: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "comps", _frozen(self.comps, (3,)))

    @classmethod
    def from_full(cls, W) -> "SkewMat3":
        W = np.asarray(W, dtype=float)
        K = 0.5 * (W - W.T)
        return cls([K[1, 2], K[0, 2], K[0, 1]])

    @cached_property
    def full(self) -> np.ndarray:
        w23, w13, w12 = self.comps
        return _ro(np.array([[0.0, w12, w13], [-w12, 0.0, w23], [-w13, -w23, 0.0]]))


# independent entries of a harmonic third-order tensor, in storage order
HARM3_LABELS = ("A111", "A122", "A112", "A222", "A113", "A223", "A123")


def _harm3_full(a111, a122, a112, a222, a113, a223, a123):
    A = np.empty((3, 3, 3))
    a133 = -a111 - a122
    a233 = -a112 - a222
    a333 = -a113 - a223
    vals = {
        (0, 0, 0): a111, (0, 1, 1): a122, (0, 0, 1): a112, (1, 1, 1): a222,
        (0, 0, 2): a113, (1, 1, 2): a223, (0, 1, 2): a123, (0, 2, 2): a133,
        (1, 2, 2): a233, (2, 2, 2): a333,
    }
    for (i, j, k), x in vals.items():
        for p in ((i, j, k), (i, k, j), (j, i, k), (j, k, i), (k, i, j), (k, j, i)):
            A[p] = x
    return A


@dataclass(frozen=True, eq=False)
class Harm3:
    """Totally symmetric traceless third-order tensor.

    Stored as (A111, A122, A112, A222, A113, A223, A123); the remaining
    entries follow from symmetry and the trace conditions.
    """

    comps: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "comps", _frozen(self.comps, (7,)))

    @classmethod
    def from_full(cls, T) -> "Harm3":
        """Project an arbitrary third-order array onto H3 and store it."""
        T = np.asarray(T, dtype=float)
        S = sum(T.transpose(p) for p in _PERMS) / 6.0
        tr = np.einsum("iik->k", S)
        S = S - (np.einsum("i,jk->ijk", tr, DELTA) + np.einsum("j,ik->ijk", tr, DELTA)
                 + np.einsum("k,ij->ijk", tr, DELTA)) / 5.0
        return cls([S[0, 0, 0], S[0, 1, 1], S[0, 0, 1], S[1, 1, 1], S[0, 0, 2],
                    S[1, 1, 2], S[0, 1, 2]])

    @classmethod
    def zero(cls) -> "Harm3":
        return cls(np.zeros(7))

    @cached_property
    def full(self) -> np.ndarray:
        return _ro(_harm3_full(*self.comps))

    def __getitem__(self, label: str) -> float:
        return float(self.comps[HARM3_LABELS.index(label)])

    def __repr__(self):
        return f"Harm3({self.comps.tolist()})"


_PERMS = ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0))


@dataclass(frozen=True, eq=False)
class PiezoTensor:
    """Third-order tensor symmetric in its last two indices (18 entries).

    ``compact[i, a]`` holds P_{i,jk} with (jk) the a-th pair of
    :data:`VOIGT_PAIRS`.
    """

    compact: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "compact", _frozen(self.compact, (3, 6)))

    @classmethod
    def from_full(cls, P, tol: float = 1e-12) -> "PiezoTensor":
        P = np.asarray(P, dtype=float)
        if P.shape != (3, 3, 3):
            raise ValueError(f"expected shape (3, 3, 3), got {P.shape}")
        check_piezo_symmetry(P, tol)
        return cls([[P[i, j, k] for j, k in VOIGT_PAIRS] for i in range(3)])

    @classmethod
    def zero(cls) -> "PiezoTensor":
        return cls(np.zeros((3, 6)))

    @cached_property
    def full(self) -> np.ndarray:
        P = np.empty((3, 3, 3))
        for a, (j, k) in enumerate(VOIGT_PAIRS):
            P[:, j, k] = self.compact[:, a]
            P[:, k, j] = self.compact[:, a]
        return _ro(P)

    def norm(self) -> float:
        return float(np.linalg.norm(self.full))

    def __repr__(self):
        return f"PiezoTensor({self.compact.tolist()})"


def check_piezo_symmetry(P, tol: float = 1e-12) -> None:
    """Raise ``ValueError`` if P_ijk != P_ikj beyond ``tol`` (norm-relative)."""
    P = np.asarray(P, dtype=float)
    scale = max(np.abs(P).max(), 1.0)
    diff = np.abs(P - P.transpose(0, 2, 1))
    if diff.max() > tol * scale:
        i, j, k = np.unravel_index(np.argmax(diff), diff.shape)
        raise ValueError(
            f"symmetry violation: P[{i + 1}][{j + 1}][{k + 1}] = {P[i, j, k]!r} "
            f"but P[{i + 1}][{k + 1}][{j + 1}] = {P[i, k, j]!r}"
        )


def as_full3(P) -> np.ndarray:
    """Full (3,3,3) array from a PiezoTensor, Harm3, compact (3,6) or full array."""
    if isinstance(P, (PiezoTensor, Harm3)):
        return P.full
    arr = np.asarray(P, dtype=float)
    if arr.shape == (3, 6):
        return PiezoTensor(arr).full
    if arr.shape != (3, 3, 3):
        raise ValueError(f"cannot interpret shape {arr.shape} as a piezoelectric tensor")
    return arr


def as_piezo(P) -> PiezoTensor:
    if isinstance(P, PiezoTensor):
        return P
    return PiezoTensor.from_full(as_full3(P))


# --------------------------------------------------------------------------
# rotations


def check_rotation(g, tol: float = 1e-12) -> np.ndarray:
    g = np.asarray(g, dtype=float)
    if g.shape != (3, 3):
        raise ValueError(f"rotation must be 3x3, got {g.shape}")
    if not np.all(np.isfinite(g)):
        raise ValueError("rotation has non-finite entries")
    if np.abs(g.T @ g - DELTA).max() > tol or abs(np.linalg.det(g) - 1.0) > tol:
        raise ValueError("not a proper rotation (g^T g != I or det g != 1)")
    return g


def quat_to_matrix(q) -> np.ndarray:
    """Rotation matrix of a quaternion (w, x, y, z); normalised first."""
    w, x, y, z = np.asarray(q, dtype=float) / np.linalg.norm(q)
    return np.array([
        [1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)],
        [2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)],
        [2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)],
    ])


def random_rotation(seed=None) -> np.ndarray:
    """Haar-uniform rotation from a normalised 4D Gaussian draw.

    ``seed`` may be an int or a ``numpy.random.Generator``.
    """
    rng = np.random.default_rng(seed)
    return quat_to_matrix(rng.standard_normal(4))


def random_rotations(n: int, seed=None) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return np.stack([quat_to_matrix(q) for q in rng.standard_normal((n, 4))])


def axis_rotation(axis: int, theta: float) -> np.ndarray:
    """Right-handed rotation by ``theta`` about coordinate axis 0, 1 or 2."""
    c, s = np.cos(theta), np.sin(theta)
    i, j = [k for k in range(3) if k != axis]
    g = np.eye(3)
    g[i, i] = c
    g[i, j] = -s
    g[j, i] = s
    g[j, j] = c
    return g


def g_theta(theta: float) -> np.ndarray:
    """Rotation in the 2-3 plane, fixing e1."""
    return axis_rotation(0, theta)


def rotate(g, T):
    """Apply the SO(3) action T'_ijk = g_ir g_js g_kt T_rst at T's own order.

    Structured types come back as the same type; other modules register
    their containers with :func:`register_rotation`.
    """
    return _rotate(T, g)


@singledispatch
def _rotate(T, g):
    raise TypeError(f"cannot rotate object of type {type(T).__name__}")


register_rotation = _rotate.register


@_rotate.register
def _(T: np.ndarray, g):
    g = np.asarray(g, dtype=float)
    if T.ndim == 1:
        return g @ T
    if T.ndim == 2:
        return g @ T @ g.T
    if T.ndim == 3:
        return kernels.rotate3(g[None], np.ascontiguousarray(T, dtype=float)[None])[0]
    raise ValueError(f"unsupported tensor order {T.ndim}")


@_rotate.register
def _(T: SymMat3, g):
    return SymMat3.from_full(rotate(g, T.full))


@_rotate.register
def _(T: Harm2, g):
    return Harm2.from_full(rotate(g, T.full))


@_rotate.register
def _(T: SkewMat3, g):
    return SkewMat3.from_full(rotate(g, T.full))


@_rotate.register
def _(T: Harm3, g):
    return Harm3.from_full(rotate(g, T.full))


@_rotate.register
def _(T: PiezoTensor, g):
    return PiezoTensor.from_full(rotate(g, T.full), tol=1e-10)


# --------------------------------------------------------------------------
# Levi-Civita helpers


def eps_vec(v) -> np.ndarray:
    """(eps v)_ij = eps_ijk v_k."""
    return np.einsum("ijk,k->ij", EPS, np.asarray(v, dtype=float))


def eps_bracket(M) -> np.ndarray:
    """eps[M]_i = eps_ijk M_jk; vanishes on symmetric M."""
    if isinstance(M, (SymMat3, Harm2, SkewMat3)):
        M = M.full
    return np.einsum("ijk,jk->i", EPS, np.asarray(M, dtype=float))


def skew_of_axial(v) -> SkewMat3:
    """W = -eps v."""
    return SkewMat3.from_full(-eps_vec(v))


def axial_of_skew(W) -> np.ndarray:
    """v = -1/2 eps[W]; inverse of :func:`skew_of_axial`."""
    return -0.5 * eps_bracket(W)


def triple_product(u, v, w) -> float:
    """[u, v, w] = v . (eps u) w, evaluated literally.

    With this convention [e1, e2, e3] = +1, i.e. it equals det[u | v | w].
    """
    return float(np.asarray(v) @ eps_vec(u) @ np.asarray(w))


# --------------------------------------------------------------------------
# residual-symmetry patterns


def d0() -> np.ndarray:
    """-2 e1e1 + e2e2 + e3e3, fixed by every rotation about e1."""
    return np.diag([-2.0, 1.0, 1.0])


def d1(alpha: float, beta: float, gamma: float) -> Harm3:
    """Harmonic cubic pattern whose (alpha, beta) rotate by 3*theta about e1."""
    # A111 = -2g, A122 = g, A112 = 0, A222 = alpha, A113 = 0, A223 = beta, A123 = 0
    return Harm3([-2.0 * gamma, gamma, 0.0, alpha, 0.0, beta, 0.0])
