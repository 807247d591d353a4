"""
Constant machine counts through exact cover
===========================================

A triangulated 3SAT' instance becomes a 3DM' exact-cover instance. Its
matches are written as base-alpha numbers so that m machines with load T
exist exactly when the cover does; one more machine takes the huge job.
"""

from ethsched import dm3_pm, sat_prime
from ethsched.instance import verify_schedule_loads

S = sat_prime.random_sat_prime(6, seed=3)
print(sat_prime.write_sat_prime(S))

for m in (1, 2, 3):
    T = sat_prime.triangulate_for_pm(S, m)
    D = dm3_pm.sat_prime_to_3dm(T)
    red = dm3_pm.reduce_to_pm(D, m)
    print(f"m={m}: groups={T.n // 3} elements={len(D.elements)} matches={len(D.matches)} "
          f"B={red.alloc.B} alpha={red.alpha} max bit sum={max(red.bit_sums)}")
    print("   bands", dm3_pm.coefficient_bands(m), "disjoint:", dm3_pm.bands_disjoint(m))

    A = sat_prime.solve_sat_prime(T)
    cover = dm3_pm.assignment_to_cover(D, T, A)
    sched = dm3_pm.forward_schedule_pm(red, cover)
    print("   loads all T:", verify_schedule_loads(red.instance, sched, red.T).ok)
    back = dm3_pm.extract_cover_pm(red, sched)
    print("   cover recovered:", back == cover, "T has", len(str(red.T)), "digits")

# small unsatisfiable case: one cycle forces equal values
U = sat_prime.SatPrimeInstance(6, ((1, 2, 3), (-4, -5, -6)), tuple((v, v % 6 + 1) for v in range(1, 7)),
                               sat_prime.VariableMap(6, tuple(range(1, 7))))
D = dm3_pm.sat_prime_to_3dm(sat_prime.triangulate_for_pm(U, 1))
print("unsatisfiable instance has a cover:", dm3_pm.brute_force_exact_cover(D) is not None)
