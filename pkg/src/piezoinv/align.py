"""Numerical SO(3) alignment: min over g of ||rotate(g, P1) - P2||_F.

Used as an oracle independent of the case tree. Local least-squares runs
over a rotation-vector chart start from half Haar-random rotations and half
a fixed super-Fibonacci grid on the unit quaternions.
"""

import numpy as np
from scipy.optimize import least_squares
from scipy.spatial.transform import Rotation

from .tensor_core import as_full3, quat_to_matrix, random_rotations

_PHI = np.sqrt(2.0)
_PSI = 1.533751168755204288


def super_fibonacci(n: int) -> np.ndarray:
    """``n`` well-spread unit quaternions (w, x, y, z)."""
    i = np.arange(n) + 0.5
    s = i / n
    r = np.sqrt(s)
    R = np.sqrt(1.0 - s)
    a = 2 * np.pi * i / _PHI
    b = 2 * np.pi * i / _PSI
    return np.stack([r * np.sin(a), r * np.cos(a), R * np.sin(b), R * np.cos(b)], axis=1)


def _residual(omega, g0, T1, T2):
    g = Rotation.from_rotvec(omega).as_matrix() @ g0
    return (np.einsum("ia,jb,kc,abc->ijk", g, g, g, T1) - T2).ravel()


def align(P1, P2, starts: int = 32, seed: int = 0, tol: float = 1e-12):
    """Best rotation taking ``P1`` onto ``P2``.

    Parameters
    ----------
    P1, P2 : PiezoTensor or array_like
    starts : int
        Number of local runs (at least 1).
    seed : int
        Seed for the random half of the starts; fixed seed means fixed output.
    tol : float
        Stop early once the residual drops below ``tol * max(||P1||, ||P2||)``.

    Returns
    -------
    (g, residual) : (ndarray, float)
        ``residual = ||rotate(g, P1) - P2||_F``.
    """
    if starts < 1:
        raise ValueError("starts must be >= 1")
    T1, T2 = as_full3(P1), as_full3(P2)
    scale = max(np.linalg.norm(T1), np.linalg.norm(T2), 1e-300)
    n_rand = starts // 2
    inits = [np.eye(3)]
    if n_rand:
        inits += list(random_rotations(n_rand, seed))
    inits += [quat_to_matrix(q) for q in super_fibonacci(starts - n_rand)]
    inits = inits[:starts]
    best_g, best_r = np.eye(3), np.linalg.norm(T1 - T2)
    for g0 in inits:
        sol = least_squares(_residual, np.zeros(3), args=(g0, T1, T2), method="lm",
                            xtol=1e-15, ftol=1e-15, gtol=1e-15)
        g = Rotation.from_rotvec(sol.x).as_matrix() @ g0
        r = float(np.linalg.norm(_residual(np.zeros(3), g, T1, T2)))
        if r < best_r:
            best_g, best_r = g, r
        if best_r < tol * scale:
            break
    return best_g, best_r
