"""Smoke test for the equimatch_py extension module.

Build and install first:

    pip install --no-build-isolation -e crates/python
    python python/smoke_test.py
"""

from fractions import Fraction

import equimatch_py as em


def test_poincare():
    s = em.poincare(3)
    assert s["conf"] == [1, 0, 3, 0, 2]
    assert s["flag"] == [1, 0, 2, 0, 2, 0, 1]
    assert s["psi"] == [0, 0, 1]
    assert em.poincare_grassmann(1, 2) == [1, 0, 1, 0, 1]


def test_permutations():
    p = em.Permutation([2, 3, 1])
    assert p.compose(p.inverse()) == em.Permutation.identity(3)
    assert p.sign() == 1
    assert p.cycle_type() == [3]


def test_matching_matrix():
    m = em.matching_matrix(2)
    assert m.shape == (2, 2)
    assert m.entry(0, 0) == [Fraction(1)]
    assert m.entry(1, 1) == [Fraction(2)]

    m = em.matching_matrix(3, em.Conventions(metric="monomial"))
    coeff, degree = m.det()
    assert coeff != 0 and degree == 2
    c = m.cokernel()
    assert c["exponents"] == [0, 0, 0, 0, 0, 1]
    assert c["series"] == c["psi"] == [0, 0, 1]
    assert m.check_equivariance() == 6


def test_identity_labels_fail():
    try:
        em.matching_matrix(3, em.Conventions(label="identity"))
    except em.EquimatchError:
        return
    raise AssertionError("identity labels should not give a polynomial matrix")


def test_ktheory():
    assert em.k_matching_matrix(2).is_identity()
    k = em.k_matching_matrix(3)
    r = k.det_ratio()
    assert r["fully_cyclotomic"]
    assert r["factors"] == {1: 2, 2: 2, 4: 3}
    assert k.within_spin_bound() and not k.within_rotation_bound()


def test_map():
    lines, diag = em.atiyah_flag([[0, 0, 0], [0.3, -0.2, 1.0], [1.0, 0.5, -0.4]])
    assert diag["polar_residual"] < 1e-12
    for i, u in enumerate(lines):
        for j, v in enumerate(lines):
            ip = sum(a.conjugate() * b for a, b in zip(u, v))
            assert abs(ip - (1 if i == j else 0)) < 1e-12
    r = em.map_suite(4, samples=20, seed=7)
    assert r["permutation"] < 1e-8 and r["rotation"] < 1e-8
    flags = [f for _, f, _ in em.calibrate(3)]
    assert len(set(flags)) == 6
    em.matching_matrix_with_bijection(3, flags)


def test_grassmann():
    assert em.component_count(2, 2) == (6, 6)
    assert em.grassmann_line_det(4) != 0
    chars = em.graded_characters(3, "flag")
    totals = {}
    for row in chars.values():
        for p, mult in row.items():
            totals[p] = totals.get(p, 0) + mult
    assert totals == {"(3)": 1, "(2,1)": 2, "(1,1,1)": 1}


if __name__ == "__main__":
    tests = [(name, f) for name, f in sorted(globals().items()) if name.startswith("test_")]
    for name, f in tests:
        f()
        print(f"{name}: ok")
    print(f"{len(tests)} passed")
