"""Random tensors and degenerate fixtures shared by the test modules."""

import numpy as np
from scipy.optimize import least_squares

from piezoinv import HarmonicParts, Harm2, Harm3, compute_group, d0, d1, recompose


def random_piezo(rng, unit=True):
    P = rng.standard_normal((3, 3, 3))
    P = 0.5 * (P + P.transpose(0, 2, 1))
    return P / np.linalg.norm(P) if unit else P


def random_sym3(rng):
    T = rng.standard_normal((3, 3, 3))
    perms = ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0))
    return sum(T.transpose(p) for p in perms) / 6.0


def build(A, u=(0, 0, 0), D=None, v=(0, 0, 0)):
    """Full P from harmonic parts given as loose arrays."""
    D = Harm2.zero() if D is None else Harm2.from_full(D)
    return recompose(HarmonicParts(A, np.asarray(u, float), D, np.asarray(v, float))).full


def group_of(A, u=(0, 0, 0), D=None, v=(0, 0, 0)):
    D = Harm2.zero() if D is None else Harm2.from_full(D)
    return compute_group(HarmonicParts(A, np.asarray(u, float), D, np.asarray(v, float)))


def isotropic_block(a111, a122, a112, a113, a123):
    """A with B22 = B33 and B23 = 0, given its first five entries."""
    M = np.array([[a113, -a112], [a112, a113]])
    rhs = np.array([2 * a111 * a123 - 2 * a112 * a113, -a111 ** 2 - 2 * a111 * a122 - a113 ** 2])
    a222, a223 = np.linalg.solve(M, rhs)
    return Harm3([a111, a122, a112, a222, a113, a223, a123])


def _c_along_e1_isotropic():
    def res(x):
        c = group_of(isotropic_block(x[0], x[1], 0.5, 0.3, x[2])).c
        return c[1:]
    sol = least_squares(res, [1.0, 0.2, 0.1], xtol=1e-15, ftol=1e-15, gtol=1e-15)
    return isotropic_block(sol.x[0], sol.x[1], 0.5, 0.3, sol.x[2])


def case_fixtures():
    """One tensor per case-tree leaf, keyed by the expected tag."""
    rng = np.random.default_rng(11)
    A7 = Harm3(rng.standard_normal(7))
    c7 = group_of(A7).c
    b = 0.75
    return {
        "ZERO": build(Harm3.zero(), u=(0.3, -0.2, 0.5), D=np.diag([1.0, -0.4, -0.6])),
        "I": random_piezo(rng),
        "II.1.1": build(A7, u=c7 / np.linalg.norm(c7)),
        "II.1.2.1": build(_c_along_e1_isotropic()),
        "II.1.2.2.1": build(d1(0.0, 0.0, 1.0)),
        "II.1.2.2.2": build(d1(0.8, -0.3, 0.0), u=(1.0, 0.0, 0.0)),
        "II.2.1": build(d1(1.0, 0.5, 0.0)),
        "II.2.2": build(Harm3([np.sqrt(2 * b / 3), -np.sqrt(b / 6), 0, np.sqrt(b / 3), 0, 0, 0])),
        "III.A": build(A7, D=np.diag([1.0, 2.0, -3.0])),
        "III.B.1": build(A7, D=d0()),
        "III.B.2.1": build(isotropic_block(0.4, -0.7, 0.9, -0.2, 0.3), D=0.5 * d0()),
        "III.B.2.2.1": build(d1(0.3, 0.4, 1.0), D=d0(), u=(0.5, 0.0, 0.0)),
        "III.B.2.2.2": build(d1(0.3, 0.4, 0.0), D=-0.7 * d0()),
    }
