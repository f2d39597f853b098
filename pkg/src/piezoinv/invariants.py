"""The 260-invariant hemitropic functional basis and related generators.

Every basis entry is an expression tree over the intermediate group, parsed
from the transcription in :mod:`piezoinv._table`. Formula ids are stable and
part of the public contract; they are built from the notation:

========================  =====================
entry                     id
========================  =====================
``I2``                    ``d2_I2``
``tr H2B``                ``d6_tr_H2B``
``u.Dv``                  ``d3_u_Dv``
``u.e[DH]``               ``d4_u_eps_DH``
``[u,v,Hu]``              ``d5_t_u_v_Hu``
========================  =====================

The leading ``d<n>`` is the polynomial degree in the entries of P.
"""

import re
from collections import Counter
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import kernels
from ._table import DEGREE_COUNTS, HARMONIC_ENTRIES, SYMMETRIC_ENTRIES, TABLE
from .decomposition import HarmonicParts, decompose, decompose_batch
from .intermediates import compute_group, group_batch
from .tensor_core import EPS, Harm2, Harm3, as_full3

# polynomial degree of each building block in the entries of P
WEIGHTS = {"A": 1, "u": 1, "v": 1, "D": 1, "B": 2, "F": 2, "G": 2, "H": 2, "w": 2, "c": 3}


def _chain_str(mats):
    out, i = [], 0
    while i < len(mats):
        j = i
        while j < len(mats) and mats[j] == mats[i]:
            j += 1
        out.append(mats[i] + (str(j - i) if j - i > 1 else ""))
        i = j
    return "".join(out)


def _chain_product(env, mats):
    M = np.eye(3)
    for m in mats:
        M = M @ env[m]
    return M


@dataclass(frozen=True)
class Term:
    """The vector M1 M2 ... Mk x (k may be zero)."""

    mats: tuple
    vec: str

    @property
    def degree(self):
        return sum(WEIGHTS[m] for m in self.mats) + WEIGHTS[self.vec]

    def evaluate(self, env):
        return _chain_product(env, self.mats) @ env[self.vec]

    def __str__(self):
        return _chain_str(self.mats) + self.vec


@dataclass(frozen=True)
class Trace:
    mats: tuple

    @property
    def degree(self):
        return sum(WEIGHTS[m] for m in self.mats)

    def evaluate(self, env):
        return float(np.trace(_chain_product(env, self.mats)))

    def key(self):
        return "tr_" + _chain_str(self.mats)


@dataclass(frozen=True)
class Dot:
    left: Term
    right: Term

    @property
    def degree(self):
        return self.left.degree + self.right.degree

    def evaluate(self, env):
        return float(self.left.evaluate(env) @ self.right.evaluate(env))

    def key(self):
        return f"{self.left}_{self.right}"


@dataclass(frozen=True)
class EpsDot:
    """x . eps[M1 M2 ...]."""

    vec: str
    mats: tuple

    @property
    def degree(self):
        return WEIGHTS[self.vec] + sum(WEIGHTS[m] for m in self.mats)

    def evaluate(self, env):
        M = _chain_product(env, self.mats)
        return float(env[self.vec] @ np.einsum("ijk,jk->i", EPS, M))

    def key(self):
        return f"{self.vec}_eps_{_chain_str(self.mats)}"


@dataclass(frozen=True)
class Triple:
    """[a, b, c] = b . (eps a) c = det[a | b | c]."""

    terms: tuple

    @property
    def degree(self):
        return sum(t.degree for t in self.terms)

    def evaluate(self, env):
        a, b, c = (t.evaluate(env) for t in self.terms)
        return float(b @ np.einsum("ijk,k->ij", EPS, a) @ c)

    def key(self):
        return "t_" + "_".join(str(t) for t in self.terms)


@dataclass(frozen=True)
class Named:
    """I2 = A_ijk A_ijk and I10 = A_ijk c_i c_j c_k, read directly off A."""

    name: str

    @property
    def degree(self):
        return {"I2": 2, "I10": 10}[self.name]

    def evaluate(self, env):
        A = env["A"]
        if self.name == "I2":
            return float(np.sum(A * A))
        c = env["c"]
        return float(np.einsum("ijk,i,j,k->", A, c, c, c))

    def key(self):
        return self.name


_TOKEN = re.compile(r"([BDFGH])(\d*)")


def _parse_chain(s):
    if not s:
        return ()
    mats = []
    pos = 0
    for m in _TOKEN.finditer(s):
        if m.start() != pos:
            raise ValueError(f"bad matrix chain {s!r}")
        mats.extend(m.group(1) * int(m.group(2) or 1))
        pos = m.end()
    if pos != len(s):
        raise ValueError(f"bad matrix chain {s!r}")
    return tuple(mats)


def _parse_term(s):
    s = s.strip()
    if not s or s[-1] not in "uvwc":
        raise ValueError(f"bad vector term {s!r}")
    return Term(_parse_chain(s[:-1]), s[-1])


def parse_entry(text: str):
    """Parse one table entry into an expression tree."""
    s = text.strip()
    if s in ("I2", "I10"):
        return Named(s)
    if s == "I4":
        return Trace(("B", "B"))
    if s == "I6":
        return Dot(Term((), "c"), Term((), "c"))
    if s.startswith("tr "):
        return Trace(_parse_chain(s[3:].strip()))
    if s.startswith("["):
        if not s.endswith("]"):
            raise ValueError(f"bad triple {s!r}")
        parts = s[1:-1].split(",")
        if len(parts) != 3:
            raise ValueError(f"bad triple {s!r}")
        return Triple(tuple(_parse_term(p) for p in parts))
    m = re.fullmatch(r"([uvwc])\.e\[([BDFGH0-9]+)\]", s)
    if m:
        return EpsDot(m.group(1), _parse_chain(m.group(2)))
    m = re.fullmatch(r"([uvwc])\.([BDFGH0-9]*[uvwc])", s)
    if m:
        return Dot(Term((), m.group(1)), _parse_term(m.group(2)))
    raise ValueError(f"cannot parse invariant {text!r}")


@dataclass(frozen=True)
class Invariant:
    id: str
    label: str
    degree: int
    expr: object


def _formula_id(label, expr, degree):
    if label in ("I2", "I4", "I6", "I10"):
        return f"d{degree}_{label}"
    return f"d{degree}_{expr.key()}"


def _build_registry():
    out = []
    for listed_degree, row in TABLE.items():
        for label in (x.strip() for x in row.split(";")):
            expr = parse_entry(label)
            if expr.degree != listed_degree:
                raise AssertionError(
                    f"{label!r} has weight {expr.degree} but sits in degree {listed_degree}"
                )
            out.append(Invariant(_formula_id(label, expr, expr.degree), label, expr.degree, expr))
    ids = [inv.id for inv in out]
    if len(set(ids)) != len(ids):
        dup = [k for k, n in Counter(ids).items() if n > 1]
        raise AssertionError(f"duplicate formula ids {dup}")
    return tuple(out)


BASIS = _build_registry()
IDS = tuple(inv.id for inv in BASIS)
DEGREES = np.array([inv.degree for inv in BASIS])
_INDEX = {inv.id: k for k, inv in enumerate(BASIS)}
_LABEL_INDEX = {inv.label: k for k, inv in enumerate(BASIS)}

HARMONIC_INDEX = tuple(_LABEL_INDEX[x] for x in HARMONIC_ENTRIES)
SYMMETRIC_INDEX = tuple(_LABEL_INDEX[x] for x in SYMMETRIC_ENTRIES)


def index_of(formula_id: str) -> int:
    return _INDEX[formula_id]


def index_of_label(label: str) -> int:
    return _LABEL_INDEX[label]


def _compile(basis):
    """Lower the basis to a (chains, terms, code) program for the kernels."""
    chains, terms = {}, {}

    def chain(mats):
        if not mats:
            return -1
        if mats not in chains:
            pre = chain(mats[:-1])
            chains[mats] = (len(chains), pre, kernels.MAT_SLOTS.index(mats[-1]))
        return chains[mats][0]

    def term(t):
        key = (tuple(t.mats), t.vec)
        if key not in terms:
            q = chain(tuple(t.mats))
            terms[key] = (len(terms), q, kernels.VEC_SLOTS.index(t.vec))
        return terms[key][0]

    code = np.full((len(basis), 4), -1, dtype=np.int64)
    for k, inv in enumerate(basis):
        e = inv.expr
        if isinstance(e, Trace):
            code[k, :2] = kernels.OP_TRACE, chain(tuple(e.mats))
        elif isinstance(e, Dot):
            code[k, :3] = kernels.OP_DOT, term(e.left), term(e.right)
        elif isinstance(e, EpsDot):
            code[k, :3] = kernels.OP_EPS, kernels.VEC_SLOTS.index(e.vec), chain(tuple(e.mats))
        elif isinstance(e, Triple):
            code[k] = (kernels.OP_TRIPLE, *(term(t) for t in e.terms))
        elif isinstance(e, Named):
            code[k, 0] = kernels.OP_I2 if e.name == "I2" else kernels.OP_I10
        else:
            raise TypeError(type(e))
    ch = np.array([v[1:] for v in sorted(chains.values())], dtype=np.int64).reshape(-1, 2)
    tm = np.array([v[1:] for v in sorted(terms.values())], dtype=np.int64).reshape(-1, 2)
    return ch, tm, code


PROGRAM = _compile(BASIS)


@dataclass(frozen=True, eq=False)
class InvariantVector:
    """Values of the 260 basis invariants, aligned with :data:`IDS`."""

    values: np.ndarray

    @property
    def ids(self):
        return IDS

    @property
    def degrees(self):
        return DEGREES

    def __len__(self):
        return len(self.values)

    def __getitem__(self, formula_id: str) -> float:
        return float(self.values[_INDEX[formula_id]])

    def as_dict(self) -> dict:
        return {k: float(x) for k, x in zip(IDS, self.values)}


def degree_table() -> dict:
    """Number of basis invariants per degree, counted from the registry."""
    return dict(sorted(Counter(int(d) for d in DEGREES).items()))


def _stack_group(grp):
    mats = np.stack([grp[m] for m in kernels.MAT_SLOTS], axis=1)
    vecs = np.stack([grp[x] for x in kernels.VEC_SLOTS], axis=1)
    return np.ascontiguousarray(mats), np.ascontiguousarray(vecs)


def _evaluate_group_arrays(A, grp):
    mats, vecs = _stack_group(grp)
    return kernels.invariants_batch(np.ascontiguousarray(A), mats, vecs, *PROGRAM)


def evaluate_parts(h: HarmonicParts) -> InvariantVector:
    grp = compute_group(h)
    full = {k: v[None] for k, v in grp.mats().items()}
    full.update({k: v[None] for k, v in grp.vecs().items()})
    return InvariantVector(_evaluate_group_arrays(h.A.full[None], full)[0])


def evaluate_basis(P) -> InvariantVector:
    """All 260 invariants of a single tensor."""
    return evaluate_parts(decompose(P))


def evaluate_basis_batch(Ps) -> np.ndarray:
    """Invariants of an ``(n, 3, 3, 3)`` stack (or list of tensors) as (n, 260)."""
    if isinstance(Ps, np.ndarray) and Ps.ndim == 4:
        arr = Ps.astype(float)
    else:
        arr = np.stack([as_full3(P) for P in Ps])
    A, u, D, v = decompose_batch(arr)
    grp = group_batch(A, u, v, D)
    return _evaluate_group_arrays(A, grp)


def special_basis_harmonic(A) -> np.ndarray:
    """I2, I4, I6, I10 and [c, Bc, B^2 c] of a harmonic cubic tensor."""
    if not isinstance(A, Harm3):
        A = Harm3.from_full(A)
    h = HarmonicParts(A, np.zeros(3), Harm2.zero(), np.zeros(3))
    grp = compute_group(h)
    env = {**grp.mats(), **grp.vecs(), "A": A.full}
    return np.array([BASIS[k].expr.evaluate(env) for k in HARMONIC_INDEX])


def special_basis_symmetric(P, tol: float = 1e-12) -> np.ndarray:
    """The 20 listed invariants of a totally symmetric third-order tensor."""
    T = as_full3(P)
    scale = max(np.abs(T).max(), 1.0)
    for perm in ((1, 0, 2), (2, 1, 0)):
        if np.abs(T - T.transpose(perm)).max() > tol * scale:
            raise ValueError("tensor is not totally symmetric")
    h = decompose(T)
    grp = compute_group(h)
    env = {**grp.mats(), **grp.vecs(), "A": h.A.full}
    return np.array([BASIS[k].expr.evaluate(env) for k in SYMMETRIC_INDEX])


# --------------------------------------------------------------------------
# generic generator for symmetric second-order tensors and vectors


def smith_templates(vec_names, mat_names):
    """Enumerate (id, expr) over every generator template.

    Pairs and triples respect index order (alpha < beta < gamma and
    mu < nu < sigma). Entries that vanish identically for particular inputs
    (e.g. the trace of a traceless tensor) are kept; nothing is pruned.
    """
    V, M = list(vec_names), list(mat_names)
    T = lambda mats, x: Term(tuple(mats), x)  # noqa: E731
    out = []
    for a in V:
        out.append((f"{a}.{a}", Dot(T((), a), T((), a))))
    for a, b in combinations(V, 2):
        out.append((f"{a}.{b}", Dot(T((), a), T((), b))))
    for a, b, c in combinations(V, 3):
        out.append((f"[{a},{b},{c}]", Triple((T((), a), T((), b), T((), c)))))
    for m in M:
        out.append((f"tr {m}", Trace((m,))))
        out.append((f"tr {m}^2", Trace((m, m))))
        out.append((f"tr {m}^3", Trace((m, m, m))))
    for m, n in combinations(M, 2):
        out.append((f"tr {m}{n}", Trace((m, n))))
        out.append((f"tr {m}^2{n}", Trace((m, m, n))))
        out.append((f"tr {m}{n}^2", Trace((m, n, n))))
        out.append((f"tr {m}^2{n}^2", Trace((m, m, n, n))))
    for m, n, s in combinations(M, 3):
        out.append((f"tr {m}{n}{s}", Trace((m, n, s))))
    for a in V:
        for m in M:
            out.append((f"{a}.{m}{a}", Dot(T((), a), T((m,), a))))
            out.append((f"{a}.{m}^2{a}", Dot(T((), a), T((m, m), a))))
            out.append((f"[{a},{m}{a},{m}^2{a}]", Triple((T((), a), T((m,), a), T((m, m), a)))))
    for a in V:
        for m, n in combinations(M, 2):
            out.append((f"{a}.e[{m}{n}]", EpsDot(a, (m, n))))
            out.append((f"{a}.e[{m}^2{n}]", EpsDot(a, (m, m, n))))
            out.append((f"{a}.e[{m}{n}^2]", EpsDot(a, (m, n, n))))
            out.append((f"[{a},{m}{a},{n}{a}]", Triple((T((), a), T((m,), a), T((n,), a)))))
    for a, b in combinations(V, 2):
        for m in M:
            out.append((f"{a}.{m}{b}", Dot(T((), a), T((m,), b))))
            out.append((f"[{a},{b},{m}{a}]", Triple((T((), a), T((), b), T((m,), a)))))
            out.append((f"[{a},{b},{m}{b}]", Triple((T((), a), T((), b), T((m,), b)))))
    return out


def evaluate_smith_generator(vectors, sym_tensors):
    """Evaluate every generator template on the given vectors and tensors.

    ``vectors`` and ``sym_tensors`` are non-empty lists (named v1.., A1..) or
    dicts mapping names to arrays. Returns a list of ``(formula_id, value)``
    in a fixed order.
    """
    if not len(vectors) or not len(sym_tensors):
        raise ValueError("need at least one vector and one symmetric tensor")
    if not isinstance(vectors, dict):
        vectors = {f"v{i + 1}": x for i, x in enumerate(vectors)}
    if not isinstance(sym_tensors, dict):
        sym_tensors = {f"A{i + 1}": x for i, x in enumerate(sym_tensors)}
    env = {k: np.asarray(x, dtype=float) for k, x in vectors.items()}
    for k, x in sym_tensors.items():
        x = getattr(x, "full", x)
        env[k] = np.asarray(x, dtype=float)
    return [(fid, expr.evaluate(env)) for fid, expr in smith_templates(vectors, sym_tensors)]


def smith_count(n_vectors: int, n_tensors: int) -> int:
    """Closed-form size of the template enumeration."""
    p, m = n_vectors, n_tensors
    c2 = lambda k: k * (k - 1) // 2  # noqa: E731
    c3 = lambda k: k * (k - 1) * (k - 2) // 6  # noqa: E731
    return (p + c2(p) + c3(p) + 3 * m + 4 * c2(m) + c3(m)
            + 3 * p * m + 4 * p * c2(m) + 3 * c2(p) * m)
