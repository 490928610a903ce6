"""Flat quotients: shells, multiplicities, Betti numbers, fixture pairs."""

import itertools
import math
from fractions import Fraction

import numpy as np
import pytest

from curvspec import ratlinalg as rl
from curvspec.errors import IntegralityError, InvariantViolation
from curvspec.flat import (
    BieberbachGroup,
    Lattice,
    betti,
    compare,
    d_lambda,
    e_mu_gamma,
    fixtures,
    is_orientable,
    klein_pair,
    n_sigma_multiplicity,
    shells,
    spectrum,
    tau_equivalent,
)


def _torus(n: int) -> BieberbachGroup:
    ident = rl.identity(n)
    return BieberbachGroup(Lattice(ident), ((ident, (0,) * n),))


# ---------------------------------------------------------------- lattices


def test_dual_of_integer_lattice():
    lat = Lattice(rl.identity(3))
    assert lat.dual_basis() == rl.identity(3)


def test_dual_of_rectangular_lattice():
    lat = Lattice(((1, 0), (0, 2)))
    assert lat.dual_basis() == ((1, 0), (0, Fraction(1, 2)))
    double_dual = Lattice(lat.dual_basis()).dual_basis()
    assert double_dual == lat.basis


def test_dual_pairing_is_exact():
    basis = ((Fraction(1, 3), 2), (5, Fraction(7, 2)))
    lat = Lattice(basis)
    dual = lat.dual_basis()
    for i in range(2):
        for j in range(2):
            dot = sum(basis[i][k] * dual[j][k] for k in range(2))
            assert dot == (1 if i == j else 0)


def test_lattice_membership_and_reduction():
    lat = Lattice(((1, 0), (0, 2)))
    assert lat.contains((3, -4))
    assert not lat.contains((0, 1))
    assert lat.reduce((Fraction(5, 2), 3)) == (Fraction(1, 2), 1)


# ---------------------------------------------------------------- shells


def test_shells_of_square_lattice():
    sh = shells(Lattice(rl.identity(2)), 2)
    assert set(sh) == {0, 1, 2}
    assert sh[Fraction(0)] == ((0, 0),)
    assert sorted(sh[Fraction(1)]) == [(-1, 0), (0, -1), (0, 1), (1, 0)]
    assert len(sh[Fraction(2)]) == 4


def test_shells_of_z8():
    sh = shells(Lattice(rl.identity(8)), 2)
    assert len(sh[Fraction(1)]) == 16
    assert len(sh[Fraction(2)]) == 112


def test_shells_are_symmetric_under_negation():
    lat = Lattice(((1, Fraction(1, 2)), (0, Fraction(1, 2))))
    for mu, vecs in shells(lat, 3).items():
        assert mu >= 0
        for v in vecs:
            assert tuple(-c for c in v) in vecs


def test_shells_match_brute_force_on_skew_lattice():
    # shells() reports vectors of the dual of its argument
    lat = Lattice(((1, 0), (Fraction(1, 2), Fraction(3, 2))))
    dual_rows = lat.dual_basis()
    mu_max = Fraction(5)
    got = shells(lat, mu_max)
    brute: dict[Fraction, set] = {}
    span = 12
    for a in range(-span, span + 1):
        for b in range(-span, span + 1):
            v = tuple(a * dual_rows[0][i] + b * dual_rows[1][i] for i in range(2))
            norm = sum(c * c for c in v)
            if norm <= mu_max:
                brute.setdefault(norm, set()).add(v)
    assert {mu: set(vs) for mu, vs in got.items()} == brute


# ---------------------------------------------------------------- invariants


def test_rejects_non_orthogonal_rotation():
    bad = ((1, 1), (0, 1))
    with pytest.raises(InvariantViolation):
        BieberbachGroup(
            Lattice(rl.identity(2)),
            ((rl.identity(2), (0, 0)), (bad, (0, 0))),
        )


def test_rejects_rotation_not_preserving_lattice():
    lat = Lattice(((1, 0), (0, 2)))
    swap = ((0, 1), (1, 0))
    with pytest.raises(InvariantViolation):
        BieberbachGroup(lat, ((rl.identity(2), (0, 0)), (swap, (0, 0))))


def test_rejects_missing_identity_coset():
    refl = ((1, 0), (0, -1))
    with pytest.raises(InvariantViolation):
        BieberbachGroup(Lattice(rl.identity(2)), ((refl, (0, 0)),))


def test_rejects_unclosed_coset_system():
    rot90 = ((0, 1), (-1, 0))
    with pytest.raises(InvariantViolation):
        BieberbachGroup(
            Lattice(rl.identity(2)),
            ((rl.identity(2), (0, 0)), (rot90, (0, 0))),
        )


def test_rejects_torsion():
    refl = ((1, 0), (0, -1))
    # reflection with no offset along its fixed axis has fixed points
    with pytest.raises(InvariantViolation):
        BieberbachGroup(
            Lattice(rl.identity(2)),
            ((rl.identity(2), (0, 0)), (refl, (0, Fraction(1, 2)))),
        )


def test_klein_group_passes_all_invariants():
    ka, kb = klein_pair()
    assert ka.holonomy_order == 2 and kb.holonomy_order == 2
    assert not is_orientable(ka) and not is_orientable(kb)


def test_fixture_names_and_orientability():
    table = fixtures()
    assert sorted(table) == [
        "flat4_a", "flat4_b", "flat4_m24", "flat4_m25",
        "flat8_a", "flat8_b", "flat8_c", "flat8_d",
        "klein_a", "klein_b",
    ]
    for name, group in table.items():
        assert is_orientable(group) == (not name.startswith("klein"))


# ---------------------------------------------------------------- phase sums


def test_phase_sum_at_identity_counts_the_shell():
    g = fixtures()["flat8_a"]
    ident_index = next(
        i for i, (b, _) in enumerate(g.cosets) if b == rl.identity(8)
    )
    assert e_mu_gamma(g, ident_index, 1) == pytest.approx(16)
    assert e_mu_gamma(g, ident_index, 2) == pytest.approx(112)


def test_phase_sums_of_the_order_four_holonomy():
    g = fixtures()["flat8_a"]
    # identify cosets by the order of their rotation part
    by_order = {}
    for i, (b, _) in enumerate(g.cosets):
        power, order = b, 1
        while power != rl.identity(8):
            power = rl.mat_mul(power, b)
            order += 1
        by_order.setdefault(order, []).append(i)
    (gen_a, gen_b) = by_order[4]
    (square,) = by_order[2]
    vals = sorted(
        (round(e_mu_gamma(g, i, 1).real) for i in (gen_a, gen_b))
    )
    assert vals == [2, 2]
    assert e_mu_gamma(g, square, 1) == pytest.approx(4)


# ---------------------------------------------------------------- multiplicity


def test_torus_multiplicities_factor():
    t2 = _torus(2)
    sh = shells(t2.lattice, 4)
    for p in range(3):
        for mu, vecs in sh.items():
            if mu == 0:
                continue
            assert d_lambda(t2, p, mu) == math.comb(2, p) * len(vecs)


def test_eight_dimensional_pair_anchor_multiplicities():
    table = fixtures()
    ga, gb = table["flat8_a"], table["flat8_b"]
    assert d_lambda(ga, 0, 1) == 6
    assert d_lambda(gb, 0, 1) == 4
    assert d_lambda(ga, 4, 1) == 284
    assert d_lambda(gb, 4, 1) == 288


def test_klein_pair_smallest_eigenvalue():
    ka, kb = klein_pair(c=2)
    quarter = Fraction(1, 4)
    assert d_lambda(ka, 0, quarter) == 1
    assert d_lambda(kb, 0, quarter) == 0


def test_four_dimensional_pair_first_eigenvalue():
    table = fixtures()
    assert d_lambda(table["flat4_a"], 0, 1) == 4
    assert d_lambda(table["flat4_b"], 0, 1) == 3


# ---------------------------------------------------------------- betti


def test_betti_examples():
    t3 = _torus(3)
    for p in range(4):
        assert betti(t3, p) == math.comb(3, p)
    ka, _ = klein_pair()
    assert [betti(ka, p) for p in range(3)] == [1, 1, 0]
    for group in fixtures().values():
        assert betti(group, 0) == 1


def test_euler_characteristic_vanishes():
    for group in fixtures().values():
        chi = sum((-1) ** p * betti(group, p) for p in range(group.n + 1))
        assert chi == 0


# ---------------------------------------------------------------- spectra


def test_spectrum_includes_betti_at_zero_and_drops_zero_entries():
    g = fixtures()["flat4_m24"]
    for p in range(5):
        spec = spectrum(g, p, 2).entries
        assert spec[Fraction(0)] == betti(g, p)
        assert all(d > 0 for mu, d in spec.items() if mu > 0)


def test_four_dimensional_zz2_pair_pattern():
    table = fixtures()
    a, b = table["flat4_m24"], table["flat4_m25"]
    agree = {p: compare(a, b, p, 3).isospectral for p in range(5)}
    assert agree == {0: False, 1: True, 2: False, 3: True, 4: False}


def test_eight_dimensional_pair_pattern():
    table = fixtures()
    a, b = table["flat8_a"], table["flat8_b"]
    agree = {p: compare(a, b, p, 2).isospectral for p in range(9)}
    assert agree == {p: p not in (0, 4, 8) for p in range(9)}


def test_poincare_duality_on_orientable_fixtures():
    for name, group in fixtures().items():
        if not is_orientable(group):
            continue
        n = group.n
        for p in range(n // 2 + 1):
            assert spectrum(group, p, 2).entries == spectrum(group, n - p, 2).entries


def test_compare_rejects_dimension_mismatch():
    ka, _ = klein_pair()
    with pytest.raises(ValueError):
        compare(ka, fixtures()["flat4_a"], 0, 1)


# ---------------------------------------------------------------- telescoping


def test_torus_telescoped_multiplicities():
    t2 = _torus(2)
    assert n_sigma_multiplicity(t2, 0, 1) == 4
    assert n_sigma_multiplicity(t2, 1, 1) == 4  # 8 - 4
    assert n_sigma_multiplicity(t2, 2, 1) == 0  # 4 - 8 + 4


def test_top_degree_telescoping_vanishes():
    for group in fixtures().values():
        for mu in shells(group.lattice, 2):
            if mu == 0:
                continue
            assert n_sigma_multiplicity(group, group.n, mu) == 0


def test_telescoping_consistency():
    # d(p) = n_sigma(p) + n_sigma(p-1) at every positive shell
    for name in ("klein_a", "flat4_m24", "flat8_a"):
        group = fixtures()[name]
        for mu in shells(group.lattice, 2):
            if mu == 0:
                continue
            for p in range(group.n + 1):
                lower = n_sigma_multiplicity(group, p - 1, mu) if p else 0
                assert d_lambda(group, p, mu) == (
                    n_sigma_multiplicity(group, p, mu) + lower
                )


def test_n_sigma_multiplicity_rejects_zero_shell():
    with pytest.raises(ValueError):
        n_sigma_multiplicity(_torus(2), 0, 0)


# ---------------------------------------------------------------- tau


def test_tau_equivalent_reflexive():
    g = fixtures()["flat4_m24"]
    for p in range(5):
        assert tau_equivalent(g, g, p, 2)


def test_klein_pair_is_one_isospectral_but_not_tau_one_equivalent():
    ka, kb = klein_pair()
    assert compare(ka, kb, 1, 2).isospectral
    assert not compare(ka, kb, 0, 2).isospectral
    assert not tau_equivalent(ka, kb, 1, 2)


def test_eight_dimensional_pair_never_tau_equivalent():
    table = fixtures()
    a, b = table["flat8_a"], table["flat8_b"]
    assert not any(tau_equivalent(a, b, p, 2) for p in range(9))


def test_tau_biconditional_with_cumulative_isospectrality():
    # equivalent data: tau_q-equivalence for all q <= p is the same as
    # q-isospectrality for all q <= p (at one cutoff)
    table = fixtures()
    same_dim_pairs = [
        (g1, g2)
        for name1, g1 in table.items()
        for name2, g2 in table.items()
        if name1 < name2 and g1.n == g2.n
    ]
    for g1, g2 in same_dim_pairs:
        for p in range(g1.n + 1):
            iso_up_to_p = all(compare(g1, g2, q, 2).isospectral for q in range(p + 1))
            tau_up_to_p = all(tau_equivalent(g1, g2, q, 2) for q in range(p + 1))
            assert iso_up_to_p == tau_up_to_p


# ---------------------------------------------------------------- oracle


def _minor(b_float: np.ndarray, rows, cols) -> float:
    if len(rows) == 0:
        return 1.0
    return float(np.linalg.det(b_float[np.ix_(rows, cols)]))


def _invariant_form_count(group: BieberbachGroup, p: int, mu) -> int:
    """Independent multiplicity oracle: count Fourier modes of vector-valued
    forms on the torus fixed by every holonomy coset, via a dense
    linear-algebra rank computation."""
    mu = Fraction(mu)
    shell = shells(group.lattice, mu).get(mu, ())
    if not shell:
        return 0
    n = group.n
    combos = list(itertools.combinations(range(n), p))
    index = {
        (v, c): i for i, (v, c) in enumerate(itertools.product(shell, combos))
    }
    dim = len(index)
    blocks = []
    for b, t in group.cosets:
        if b == rl.identity(n):
            continue
        bt = rl.transpose(b)
        b_float = np.array([[float(x) for x in row] for row in b])
        mat = np.zeros((dim, dim), dtype=complex)
        for v in shell:
            w = rl.mat_vec(bt, v)
            phase = complex(
                math.cos(2 * math.pi * float(rl.dot(v, t))),
                math.sin(2 * math.pi * float(rl.dot(v, t))),
            )
            for ci, c in enumerate(combos):
                for cj, cc in enumerate(combos):
                    val = phase * _minor(b_float, c, cc)
                    if val != 0:
                        mat[index[(w, cc)], index[(v, c)]] += val
        blocks.append(mat - np.eye(dim))
    if not blocks:
        return dim
    stacked = np.vstack(blocks)
    return dim - np.linalg.matrix_rank(stacked, tol=1e-9)


def test_oracle_agrees_on_two_dimensional_fixtures():
    ka, kb = klein_pair(c=2)
    t2 = _torus(2)
    for group in (ka, kb, t2):
        for mu in shells(group.lattice, 2):
            if mu == 0:
                continue
            for p in range(3):
                assert d_lambda(group, p, mu) == _invariant_form_count(group, p, mu)


def test_oracle_agrees_on_four_dimensional_pair():
    table = fixtures()
    for name in ("flat4_a", "flat4_b"):
        group = table[name]
        for p in range(5):
            assert d_lambda(group, p, 1) == _invariant_form_count(group, p, 1)


# ---------------------------------------------------------------- integrality


def test_all_fixture_multiplicities_are_integral():
    # d_lambda raises IntegralityError when the phase average strays from an
    # integer; a clean sweep certifies every multiplicity in range
    for group in fixtures().values():
        for p in range(group.n + 1):
            for mu in shells(group.lattice, 4):
                if mu == 0:
                    continue
                val = d_lambda(group, p, mu)
                assert isinstance(val, int) and val >= 0
