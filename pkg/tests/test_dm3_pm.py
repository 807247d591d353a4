import pytest
from hypothesis import given, settings, strategies as st

from ethsched import dm3_pm as dm, sat_core, sat_prime as sp
from ethsched.instance import Schedule, verify_schedule_loads


def triangulated(seed, m, n=6, single_cycle=False):
    return sp.triangulate_for_pm(sp.random_sat_prime(n, seed, single_cycle), m)


def test_zeta():
    assert [dm.zeta(i) for i in range(1, 7)] == [2, 3, 1, 5, 6, 4]


def test_element_and_match_counts():
    T = triangulated(1, 1)
    D = dm.sat_prime_to_3dm(T)
    n = T.n
    assert len(D.W) == 2 * n and len(D.Y) == n and len(D.X) == len(T.c1) + n
    assert len(D.ids("T1")) == 2 * n and len(D.ids("T3")) == 2 * n
    assert len(D.ids("T2")) == sum(len(c) for c in T.c1)


def test_requires_triangles():
    S = sp.random_sat_prime(6, 2)
    with pytest.raises(sp.SatPrimeError):
        dm.sat_prime_to_3dm(S)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_sat_iff_cover(seed):
    S = sp.random_sat_prime(6, seed, single_cycle=seed % 2 == 0)
    D = dm.sat_prime_to_3dm(sp.triangulate_for_pm(S, 1))
    cover = dm.brute_force_exact_cover(D)
    model = sp.solve_sat_prime(S)
    assert (cover is None) == (model is None)
    if cover is not None:
        assert dm.is_exact_cover(D, cover)


def test_unsat_has_no_cover():
    # one C2 cycle forces all values equal; an all-positive and an
    # all-negative clause then cannot both hold
    S = sp.SatPrimeInstance(6, ((1, 2, 3), (-4, -5, -6)), tuple((v, v % 6 + 1) for v in range(1, 7)),
                            sp.VariableMap(6, tuple(range(1, 7))))
    assert sat_core.brute_force_sat(sp.to_cnf(S)) is None
    assert dm.brute_force_exact_cover(dm.sat_prime_to_3dm(sp.triangulate_for_pm(S, 1))) is None


def test_cover_assignment_roundtrip():
    T = triangulated(4, 1)
    A = sp.solve_sat_prime(T)
    D = dm.sat_prime_to_3dm(T)
    cover = dm.assignment_to_cover(D, T, A)
    assert dm.cover_to_assignment(D, cover) == A


def test_cover_to_assignment_rejects_non_cover():
    T = triangulated(4, 1)
    D = dm.sat_prime_to_3dm(T)
    with pytest.raises(dm.PmError):
        dm.cover_to_assignment(D, [1, 2])


def test_text_roundtrips():
    D = dm.sat_prime_to_3dm(triangulated(2, 2))
    assert dm.parse_3dm(dm.write_3dm(D)) == D
    assert dm.parse_cover(dm.write_cover([3, 5, 8])) == [3, 5, 8]
    with pytest.raises(dm.PmError):
        dm.parse_3dm("T1:\n2 w1\n")


@pytest.mark.parametrize("m", [1, 2, 3])
def test_coloring_is_proper(m):
    D = dm.sat_prime_to_3dm(triangulated(5, m))
    alloc = dm.allocate_bits(D, m)
    assert not dm.check_coloring(D, alloc)
    assert all(c <= m for c in alloc.class_sizes().values())
    bits = [alloc.f[e] for e in D.elements]
    assert min(bits) >= 1 and max(bits) <= alloc.B
    for e in D.elements:
        assert alloc.element_at(alloc.f[e], alloc.g[e]) == e


def test_digit_decompose():
    assert dm.digit_decompose(5 * 32 ** 2 + 7, 32, 3) == [7, 0, 5, 0]
    with pytest.raises(dm.PmError):
        dm.digit_decompose(32 ** 4, 32, 3)


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
def test_bands(m):
    b = dm.coefficient_bands(m)
    assert b["dummy"] == (6 * m ** 3,) * 2
    assert dm.bands_disjoint(m)


def pm_setup(seed, m):
    T = triangulated(seed, m)
    A = sp.solve_sat_prime(T)
    D = dm.sat_prime_to_3dm(T)
    red = dm.reduce_to_pm(D, m)
    return T, A, D, red, dm.forward_schedule_pm(red, dm.assignment_to_cover(D, T, A))


@pytest.mark.parametrize("m", [1, 2, 3])
def test_forward_and_extract(m):
    T, A, D, red, sched = pm_setup(8, m)
    rep = verify_schedule_loads(red.instance, sched, red.T)
    assert rep.ok
    assert red.T == 6 * m ** 3 * sum(red.alpha ** i for i in range(1, red.alloc.B + 1))
    assert dm.no_carry_ok(red)
    cover = dm.extract_cover_pm(red, sched)
    assert dm.cover_to_assignment(D, cover) == A
    assert red.instance.machines == m + 1


def test_alpha_is_power_of_two_above_bound():
    for m in (1, 2, 3):
        red = pm_setup(3, m)[3]
        a = red.alpha
        assert a & (a - 1) == 0 and a > 24 * m ** 4 and a > max(red.bit_sums)
        assert a // 2 <= max(24 * m ** 4, max(red.bit_sums))


def test_moved_cover_job_caught():
    T, A, D, red, sched = pm_setup(8, 2)
    syms = red.instance.symbols
    j = next(j for j, s in enumerate(syms, start=1) if s.startswith("CJ") and sched.machine_of[j - 1] <= 2)
    mo = list(sched.machine_of)
    mo[j - 1] = 3
    with pytest.raises(dm.PmExtractionError) as err:
        dm.extract_cover_pm(red, Schedule(3, mo), check_loads=False)
    assert err.value.check == "digit_sum" and err.value.machine == sched.machine_of[j - 1]
    with pytest.raises(dm.PmExtractionError) as err:
        dm.extract_cover_pm(red, Schedule(3, mo))
    assert err.value.check == "loads"


def test_audit_report_lines():
    T, A, D, red, sched = pm_setup(8, 1)
    assert dm.pm_audit_report(red, sched).ok
