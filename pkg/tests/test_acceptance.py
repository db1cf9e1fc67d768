"""Acceptance suite: one test per criterion, exact tolerances, desk scale.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one PASS line per
criterion.  Every comparison is exact equality of truncated series; nothing
is approximate.
"""
import random
import time

from novitor.complexes import (
    algebraic_mapping_torus,
    base_change,
    torsion,
    tower_check,
    validate_complex,
)
from novitor.descent import (
    DescentSystem,
    delta_p_matrix,
    torsion_closed_form,
    torsion_generic,
    verify_instance,
    xi_map,
)
from novitor.instances import bundled_instance_names, load_bundled_instance
from novitor.matrices import Matrix, det_bareiss
from novitor.morse import novikov_tower
from novitor.polynomial import LaurentPolynomial
from novitor.series import (
    INT,
    RAT,
    TruncatedSeries,
    exp_eta,
    is_integral,
    log_series,
    series_invert,
)
from novitor.zeta import (
    PrimeOrbit,
    cat_map_oracle,
    eta_from_lefschetz_numbers,
    orbit_set_from_primes,
    zeta_from_descent,
    zeta_from_homology,
    zeta_from_orbits,
    zeta_from_primes,
)

from conftest import random_acyclic_complex, random_chain_self_map, star_family_descent

t = LaurentPolynomial.t()


def _report(name, started):
    print(f"PASS {name} ({time.perf_counter() - started:.2f}s)")


def test_criterion_1_zeta_four_way_agreement():
    started = time.perf_counter()
    rng = random.Random(101)
    for _ in range(200):
        primes = [
            PrimeOrbit(rng.randint(1, 5), rng.choice((1, -1)), rng.choice((1, -1)))
            for _ in range(rng.randint(0, 6))
        ]
        via_orbits = zeta_from_orbits(orbit_set_from_primes(primes, 16), 16)
        via_primes = zeta_from_primes(primes, 16)
        assert via_orbits == via_primes
        assert is_integral(via_orbits)
    assert time.perf_counter() - started < 5.0
    _report("criterion 1: zeta four-way agreement (200 prime sets, mod t^16)", started)


def test_criterion_2_cat_map_chain():
    started = time.perf_counter()
    for a in ([[2, 1], [1, 1]], [[3, 1], [2, 1]]):
        counts = cat_map_oracle(a, 8)
        power = Matrix.identity(2, 1)
        am = Matrix(a)
        for k in range(1, 9):
            power = power * am
            trace = power.data[0][0] + power.data[1][1]
            # sum over degrees of (-1)^i tr(h_i^k) with h = (1, A, 1)
            assert counts[k - 1] == 2 - trace
        z = exp_eta(eta_from_lefschetz_numbers(counts), 9)
        assert z == zeta_from_homology([[[1]], am, [[1]]], 9)
    assert time.perf_counter() - started < 10.0
    _report("criterion 2: fixed-point counts match homological zeta (k <= 8, mod t^9)", started)


def test_criterion_3_mapping_torus_identity():
    started = time.perf_counter()
    rng = random.Random(103)
    for _ in range(100):
        hs = []
        for _ in range(rng.randint(1, 4)):
            n = rng.randint(0, 4)
            hs.append(Matrix([[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)]))
        torus = algebraic_mapping_torus(hs)
        expected = TruncatedSeries.one(INT, 16)
        for k, h in enumerate(hs):
            if h.nrows == 0:
                continue
            block = Matrix(
                [
                    [(1 if i == j else 0) - t * h.data[i][j] for j in range(h.nrows)]
                    for i in range(h.nrows)
                ]
            )
            d = TruncatedSeries.from_polynomial(
                det_bareiss(block, LaurentPolynomial.one()), INT
            ).truncate(16)
            expected = expected * d if k % 2 == 0 else expected * series_invert(d)
        if torus.total_rank == 0:
            assert expected == TruncatedSeries.one(INT, 16)
            continue
        res = torsion(base_change(torus, "mod", order=16), 16)
        assert res.witt.series == expected
    assert time.perf_counter() - started < 10.0
    _report("criterion 3: mapping-torus torsion equals det product (100 maps, mod t^16)", started)


def _bounded_descent(rng):
    """Chain-self-map descent system with every rank <= 3 and deg(H) <= 2."""
    from conftest import random_zt_complex

    while True:
        r = random_zt_complex(rng, degrees=3, max_pieces=2, n_ops=4, mixing="constant")
        if all(r.rank(k) <= 3 for k in r.degrees()):
            break
    h = random_chain_self_map(rng, r)
    from novitor.complexes import zero_complex

    return DescentSystem(
        r_complex=r, nv_complex=zero_complex("Z[t]"), h_maps=h, sigma1={}, n_data=32
    )


def test_criterion_4_closed_form_torsion_lemma():
    started = time.perf_counter()
    rng = random.Random(104)
    for _ in range(100):
        system = _bounded_descent(rng)
        generic = torsion_generic(system, 12).witt.series
        closed = torsion_closed_form(system, 12).series
        assert generic == closed
    # star blocks move freely subject to d^2 = 0; torsion must not move
    for _instance in range(10):
        make, free = star_family_descent(rng)
        reference = None
        variations = [
            [LaurentPolynomial([rng.randint(-2, 2) for _ in range(3)]) for _ in range(free)]
            for _ in range(2)
        ]
        for row in variations:
            value = torsion_generic(make(row), 12).witt.series
            closed = torsion_closed_form(make(row), 12).series
            assert value == closed
            if reference is None:
                reference = value
            assert value == reference
    assert time.perf_counter() - started < 30.0
    _report(
        "criterion 4: generic torsion equals closed form (100 systems, mod t^12; "
        "star blocks inert, 20 variations on 10 systems)",
        started,
    )


def test_criterion_5_instance_pipeline():
    started = time.perf_counter()
    circle = load_bundled_instance("circle")
    rep = verify_instance(circle, 16)
    assert rep.passed
    assert rep.torsion_series == TruncatedSeries.one(INT, 16)
    assert rep.zeta_inverse == TruncatedSeries.one(RAT, 16)
    for name in bundled_instance_names():
        inst = load_bundled_instance(name)
        rep = verify_instance(inst, 16)
        assert rep.passed, name
        if inst.descent is not None:
            closed = torsion_closed_form(inst.descent, 16)
            zl = zeta_from_descent(
                [inst.descent.h(k) for k in range(inst.descent.r_complex.top_degree + 1)],
                16,
            )
            assert closed.series * zl == TruncatedSeries.one(INT, 16)
    assert time.perf_counter() - started < 5.0
    _report("criterion 5: bundled instances verify torsion = 1/zeta (mod t^16)", started)


def test_criterion_6_structural_invariants():
    started = time.perf_counter()
    for name in bundled_instance_names():
        inst = load_bundled_instance(name)
        assert inst.validate().ok
        nov = inst.novikov_complex(16)
        assert validate_complex(nov).ok
        assert tower_check(novikov_tower(nov, 8)).ok
        if inst.simplicial is not None:
            assert inst.first_iso_check()
            assert inst.euler_check()
        if inst.descent is not None:
            xi = xi_map(inst.descent, 16)
            for k in range(inst.descent.nv_complex.top_degree + 1):
                if inst.descent.nv_complex.rank(k) == 0:
                    continue
                for n in range(1, 17):
                    assert xi.matrix(k).map(lambda s: s.truncate(n)) == delta_p_matrix(
                        inst.descent, k, n
                    )
    assert time.perf_counter() - started < 10.0
    _report("criterion 6: structural invariants on all bundled instances (n <= 16)", started)


def test_criterion_7_algebra_kernel():
    started = time.perf_counter()
    rng = random.Random(107)
    for _ in range(100):
        coeffs = [1] + [rng.randint(-9, 9) for _ in range(31)]
        w = TruncatedSeries(INT, coeffs, 0, 32)
        assert exp_eta(log_series(w, 32), 32) == w
    from novitor.errors import NormalizationImpossible

    for _ in range(100):
        c = random_acyclic_complex(rng, degrees=3, pieces=2)
        try:
            first = torsion(c, 12, strategy="first")
            last = torsion(c, 12, strategy="last")
        except NormalizationImpossible:
            continue  # non-unimodular raw torsion: normalization refuses either way
        assert first.witt.series == last.witt.series
    assert time.perf_counter() - started < 10.0
    _report(
        "criterion 7: exp/log round-trip (100 series, mod t^32) and "
        "contraction-independent torsion (100 complexes)",
        started,
    )
