import re

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from piezoinv import invariants as inv
from piezoinv.invariants import (
    BASIS, DEGREES, IDS, Dot, EpsDot, Named, Trace, Triple, degree_table, evaluate_basis,
    evaluate_basis_batch, evaluate_smith_generator, parse_entry, smith_count,
    special_basis_harmonic, special_basis_symmetric,
)
from piezoinv.tensor_core import Harm3, random_rotation, rotate

from helpers import random_piezo, random_sym3

seeds = st.integers(0, 2 ** 32 - 1)


def test_census():
    t = degree_table()
    assert t == {2: 5, 3: 7, 4: 27, 5: 35, 6: 65, 7: 54, 8: 23, 9: 23, 10: 10, 12: 5, 13: 5, 15: 1}
    assert len(BASIS) == 260
    assert sum(v for d, v in t.items() if d % 2) == 125
    assert sum(v for d, v in t.items() if d % 2 == 0) == 135


def test_ids_unique_and_well_formed():
    assert len(set(IDS)) == 260
    for fid, d in zip(IDS, DEGREES):
        assert re.fullmatch(r"d\d+_[A-Za-z0-9_]+", fid)
        assert fid.startswith(f"d{d}_")
    for fid in ("d6_tr_H2B", "d3_u_Dv", "d4_u_eps_DH", "d5_t_u_v_Hu", "d2_I2", "d15_t_c_Bc_B2c"):
        assert fid in IDS


@pytest.mark.parametrize("text, kind, degree", [
    ("I2", Named, 2), ("I4", Trace, 4), ("I6", Dot, 6), ("I10", Named, 10),
    ("tr D2H", Trace, 4), ("u.D2v", Dot, 4), ("u.e[DH]", EpsDot, 4),
    ("[u,Dw,Bc]", Triple, 9), ("c.c", Dot, 6), ("[c,Bc,B2c]", Triple, 15),
])
def test_parse_entry(text, kind, degree):
    e = parse_entry(text)
    assert isinstance(e, kind)
    assert e.degree == degree


@pytest.mark.parametrize("bad", ["", "tr", "u.Xv", "[u,v]", "u.e[D", "q.u", "tr Dq"])
def test_parse_entry_rejects(bad):
    with pytest.raises(ValueError):
        parse_entry(bad)


def test_named_invariants():
    P = random_piezo(np.random.default_rng(3))
    vals = evaluate_basis(P)
    h = inv.decompose(P)
    grp = inv.compute_group(h)
    assert np.isclose(vals["d2_I2"], np.sum(h.A.full ** 2))
    assert np.isclose(vals["d4_I4"], grp.I4)
    assert np.isclose(vals["d6_I6"], grp.c @ grp.c)
    assert np.isclose(vals["d10_I10"], np.einsum("ijk,i,j,k->", h.A.full, grp.c, grp.c, grp.c))
    assert np.isclose(vals["d2_u_u"], h.u @ h.u)
    assert len(vals) == 260 and len(vals.as_dict()) == 260


@given(seeds)
def test_rotation_invariance(seed):
    r = np.random.default_rng(seed)
    P = random_piezo(r)
    a = evaluate_basis(P).values
    b = evaluate_basis(rotate(random_rotation(r), P)).values
    assert np.max(np.abs(a - b)) < 1e-12


def test_odd_degree_flip_under_inversion(rng):
    # -I is improper; it acts on a third-order tensor as P -> -P
    P = random_piezo(rng)
    a, b = evaluate_basis(P).values, evaluate_basis(-P).values
    assert np.allclose(b, a * (-1.0) ** DEGREES, atol=1e-14)


def test_batch_matches_single(rng):
    P = np.stack([random_piezo(rng) for _ in range(5)])
    out = evaluate_basis_batch(P)
    for k in range(5):
        assert np.allclose(out[k], evaluate_basis(P[k]).values, rtol=1e-12, atol=1e-15)
    assert np.allclose(evaluate_basis_batch(list(P)), out)


def test_structured_and_tree_evaluation_agree(rng):
    P = random_piezo(rng)
    h = inv.decompose(P)
    grp = inv.compute_group(h)
    env = {**grp.mats(), **grp.vecs(), "A": h.A.full}
    direct = np.array([b.expr.evaluate(env) for b in BASIS])
    assert np.allclose(direct, evaluate_basis(P).values, atol=1e-14)


def test_harmonic_special_basis(rng):
    A = Harm3.from_full(rng.standard_normal((3, 3, 3)))
    five = special_basis_harmonic(A)
    full = evaluate_basis(A.full).values
    idx = [inv.index_of(k) for k in ("d2_I2", "d4_I4", "d6_I6", "d10_I10", "d15_t_c_Bc_B2c")]
    assert np.allclose(five, full[idx])
    assert np.all(np.abs(five) > 1e-8)


def test_symmetric_special_basis(rng):
    S = random_sym3(rng)
    twenty = special_basis_symmetric(S)
    assert twenty.shape == (20,)
    assert np.allclose(twenty, evaluate_basis(S).values[list(inv.SYMMETRIC_INDEX)])
    with pytest.raises(ValueError):
        special_basis_symmetric(random_piezo(rng))


def test_smith_generator_count_and_invariance(rng):
    vecs = [rng.standard_normal(3) for _ in range(4)]
    mats = []
    for _ in range(5):
        M = rng.standard_normal((3, 3))
        mats.append(M + M.T)
    out = evaluate_smith_generator(vecs, mats)
    assert len(out) == smith_count(4, 5) == 389
    assert len({k for k, _ in out}) == len(out)
    g = random_rotation(rng)
    rot = evaluate_smith_generator([g @ v for v in vecs], [g @ M @ g.T for M in mats])
    assert np.allclose([x for _, x in out], [x for _, x in rot], rtol=1e-10, atol=1e-10)


def test_smith_generator_named_inputs(rng):
    out = dict(evaluate_smith_generator({"u": [1.0, 0, 0]}, {"B": np.diag([1.0, 2.0, 3.0])}))
    assert out["u.u"] == 1.0 and out["tr B"] == 6.0 and out["u.Bu"] == 1.0
    with pytest.raises(ValueError):
        evaluate_smith_generator([], [np.eye(3)])


def test_matches_summation_oracle(rng):
    import oracle

    labels = [b.label for b in BASIS]
    for _ in range(10):
        P = random_piezo(rng)
        ref = np.array(oracle.all_values(P, labels))
        assert np.abs(ref - evaluate_basis(P).values).max() < 1e-11
