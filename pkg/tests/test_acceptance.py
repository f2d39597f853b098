"""Acceptance criteria, one test each, at the stated tolerances.

Every test prints a PASS/FAIL line through the ``report`` fixture; the lines
are collected again in the terminal summary.
"""

import time

import numpy as np

import oracle
from piezoinv import Harm3, d0, d1, decompose, evaluate_basis, random_rotation, recompose, rotate
from piezoinv.align import align
from piezoinv.canonical import (
    CaseTag, ResultantClass, canonicalize, recover_A, resultant_certificate, resultant_factored,
    sylvester_resultant,
)
from piezoinv.decomposition import summands
from piezoinv.intermediates import compute_group, k_from_b
from piezoinv.invariants import (
    BASIS, DEGREES, HARMONIC_INDEX, IDS, SYMMETRIC_INDEX, degree_table, evaluate_basis_batch,
)

from helpers import build, case_fixtures, group_of, random_piezo, random_sym3


def scaled(vals, norm):
    return np.abs(vals) / norm ** DEGREES


def test_c01_census(report):
    t0 = time.perf_counter()
    table = degree_table()
    want = {2: 5, 3: 7, 4: 27, 5: 35, 6: 65, 7: 54, 8: 23, 9: 23, 10: 10, 12: 5, 13: 5, 15: 1}
    odd = sum(v for d, v in table.items() if d % 2)
    even = sum(v for d, v in table.items() if d % 2 == 0)
    dt = time.perf_counter() - t0
    ok = table == want and len(IDS) == 260 and (odd, even) == (125, 135) and dt < 1.0
    report("C1 basis census", ok, f"total {len(IDS)}, odd {odd}, even {even}, {dt * 1e3:.1f} ms")
    assert ok


def test_c02_invariance(report):
    rng = np.random.default_rng(2)
    t0 = time.perf_counter()
    P = np.stack([random_piezo(rng) for _ in range(200)])
    base = evaluate_basis_batch(P)
    worst = 0.0
    for _ in range(5):
        g = np.stack([random_rotation(rng) for _ in range(200)])
        Q = np.einsum("nia,njb,nkc,nabc->nijk", g, g, g, P)
        worst = max(worst, float(np.max(np.abs(evaluate_basis_batch(Q) - base))))
    dt = time.perf_counter() - t0
    ok = worst <= 1e-8 and dt <= 10.0
    report("C2 hemitropic invariance", ok, f"max scaled gap {worst:.2e}, {dt:.2f} s")
    assert ok


def test_c03_homogeneity(report):
    rng = np.random.default_rng(3)
    worst = 0.0
    for _ in range(100):
        P = random_piezo(rng)
        base = evaluate_basis(P).values
        for lam in (2.0, -1.0, 0.5):
            got = evaluate_basis(lam * P).values
            gap = np.abs(got - lam ** DEGREES * base) / np.abs(lam) ** DEGREES
            worst = max(worst, float(gap.max()))
    ok = worst <= 1e-9
    report("C3 homogeneity and degree labels", ok, f"max relative gap {worst:.2e}")
    assert ok


def test_c04_roundtrip(report):
    rng = np.random.default_rng(4)
    rt, orth = 0.0, 0.0
    for _ in range(1000):
        P = rng.standard_normal((3, 3, 3))
        P = 0.5 * (P + P.transpose(0, 2, 1))
        h = decompose(P)
        rt = max(rt, float(np.abs(recompose(h).full - P).max() / np.abs(P).max()))
        t = summands(h)
        n = np.linalg.norm(P) ** 2
        for i in range(4):
            for j in range(i + 1, 4):
                orth = max(orth, abs(float(np.sum(t[i] * t[j]))) / n)
    ok = rt <= 1e-12 and orth <= 1e-11
    report("C4 decomposition round-trip", ok, f"round-trip {rt:.2e}, orthogonality {orth:.2e}")
    assert ok


def test_c05_k_identity(report):
    rng = np.random.default_rng(5)
    worst = 0.0
    for _ in range(1000):
        A = Harm3(rng.standard_normal(7))
        A = Harm3(A.comps / np.linalg.norm(A.full))
        grp = group_of(A)
        K = np.einsum("ijk,k->ij", A.full, grp.c)
        worst = max(worst, float(np.abs(K - k_from_b(grp.B.full).full).max()))
    fixture = np.allclose(k_from_b(np.diag([6.0, 2.0, 2.0])).full, np.diag([16.0, -8.0, -8.0]), atol=1e-12)
    ok = worst <= 1e-10 and fixture
    report("C5 K identity", ok, f"max gap {worst:.2e} on unit A, diag(6,2,2) fixture {fixture}")
    assert ok


def test_c06_separation(report):
    rng = np.random.default_rng(6)
    t0 = time.perf_counter()
    inv_gap, align_gap, fails = 0.0, 0.0, 0
    for _ in range(500):
        P = random_piezo(rng)
        Q = rotate(random_rotation(rng), P)
        try:
            a, b = canonicalize(P), canonicalize(Q)
        except ValueError:
            fails += 1
            continue
        inv_gap = max(inv_gap, float(scaled(evaluate_basis(a.recompose()).values - evaluate_basis(P).values, 1.0).max()))
        _, r = align(b.recompose(), a.recompose(), starts=32)
        align_gap = max(align_gap, r / np.linalg.norm(P))
    dt = time.perf_counter() - t0
    ok = fails == 0 and inv_gap <= 1e-7 and align_gap <= 1e-6 and dt <= 120
    report("C6 separation and reconstruction", ok,
           f"failures {fails}, invariant gap {inv_gap:.2e}, align residual {align_gap:.2e}, {dt:.1f} s")
    assert ok


def test_c07_case_tree(report):
    reached = set()
    for tag, P in case_fixtures().items():
        for k in range(3):
            cf = canonicalize(rotate(random_rotation(100 + k), P))
            if cf.tag is CaseTag(tag) and cf.error < 1e-9:
                reached.add(cf.tag)
    b11 = 0.9
    a111 = np.sqrt(2 * b11 / 3)
    got = recover_A(group_of(Harm3([a111, -a111 / 2, 0, np.sqrt(b11 / 3), 0, 0, 0])), "II.2.2")
    closed = max(abs(got["A111"] - np.sqrt(2 * b11 / 3)), abs(got["A222"] - np.sqrt(b11 / 3)),
                 abs(got["A122"] + np.sqrt(b11 / 6)))
    classes = [resultant_certificate(np.diag(x)) for x in ((1.0, 1, 1), (0.0, 1, 1), (1.0, 2, 3))]
    want = [ResultantClass.TRIPLE_EIGENVALUE, ResultantClass.ZERO_PLUS_DOUBLE, ResultantClass.VIOLATION]
    syl = abs(sylvester_resultant(3.0, 2.0) - resultant_factored(3.0, 2.0))
    ok = reached == set(CaseTag) and closed <= 1e-10 and classes == want and syl < 1e-12
    missing = sorted(t.value for t in set(CaseTag) - reached)
    report("C7 case-tree coverage", ok,
           f"{len(reached)}/{len(CaseTag)} tags, missing {missing}, closed form {closed:.1e}, resultant {[c.value for c in classes]}")
    assert ok


def test_c08a_harmonic_specialization(report):
    rng = np.random.default_rng(8)
    others = np.setdiff1d(np.arange(len(IDS)), HARMONIC_INDEX)
    worst, smallest = 0.0, np.inf
    for _ in range(50):
        A = Harm3(rng.standard_normal(7))
        P = A.full / np.linalg.norm(A.full)
        s = scaled(evaluate_basis(P).values, 1.0)
        worst = max(worst, float(s[others].max()))
        smallest = min(smallest, float(s[list(HARMONIC_INDEX)].min()))
    degs = sorted(int(DEGREES[k]) for k in HARMONIC_INDEX)
    ok = worst <= 1e-10 and smallest > 1e-10 and degs == [2, 4, 6, 10, 15]
    report("C8a harmonic specialization", ok, f"others max {worst:.1e}, listed min {smallest:.1e}, degrees {degs}")
    assert ok


def test_c08b_symmetric_specialization(report):
    rng = np.random.default_rng(9)
    peak = np.zeros(len(IDS))
    for _ in range(50):
        S = random_sym3(rng)
        S /= np.linalg.norm(S)
        peak = np.maximum(peak, scaled(evaluate_basis(S).values, 1.0))
    nonzero = set(np.flatnonzero(peak > 1e-10).tolist())
    listed = set(SYMMETRIC_INDEX)
    extra = sorted(BASIS[k].label for k in nonzero - listed)
    missing = sorted(BASIS[k].label for k in listed - nonzero)
    ok = nonzero == listed
    report("C8b symmetric specialization", ok,
           f"{len(nonzero)} generically nonzero vs {len(listed)} listed; extra {extra}, missing {missing}")
    assert ok, f"extra nonzero entries {extra}, missing {missing}"


def test_c09_residual_convention(report):
    rng = np.random.default_rng(10)
    inv_gap, conv_gap, seen = 0.0, 0.0, set()
    for delta, gamma, zeta, u1, v1 in ((0.8, 0.6, 0.0, 0.0, 0.0), (1.3, 0.0, 0.0, 0.7, 0.0),
                                       (0.5, 1.1, 0.4, 0.3, -0.2), (0.9, 0.0, -0.6, 0.0, 0.0)):
        ref = None
        for th in rng.uniform(0, 2 * np.pi, 20):
            a, b = np.sqrt(delta) * np.cos(th), np.sqrt(delta) * np.sin(th)
            P = build(d1(a, b, gamma), u=(u1, 0, 0), D=zeta * d0(), v=(v1, 0, 0))
            vals = evaluate_basis(P).values
            ref = vals if ref is None else ref
            inv_gap = max(inv_gap, float(np.max(np.abs(vals - ref) / np.maximum(np.abs(ref), np.linalg.norm(P) ** DEGREES))))
            cf = canonicalize(P)
            seen.add(cf.tag.value)
            conv_gap = max(conv_gap, abs(cf.recovered_A["A222"] - np.sqrt(delta)), abs(cf.recovered_A["A223"]))
    ok = inv_gap <= 1e-9 and conv_gap <= 1e-8
    report("C9 residual-symmetry convention", ok,
           f"invariant gap {inv_gap:.1e}, (A222, A223) gap {conv_gap:.1e}, tags {sorted(seen)}")
    assert ok


def test_c10_dual_path(report):
    rng = np.random.default_rng(11)
    labels = [b.label for b in BASIS]
    worst = 0.0
    for _ in range(100):
        P = random_piezo(rng)
        ref = np.array(oracle.all_values(P, labels))
        worst = max(worst, float(np.abs(ref - evaluate_basis(P).values).max()))
    ok = worst <= 1e-11
    report("C10 dual-path oracle", ok, f"max gap {worst:.2e} over 100 tensors")
    assert ok
