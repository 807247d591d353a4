"""
From 3-CNF to the 3SAT' normal form
===================================

Every occurrence of a variable gets its own copy. The copies of one
variable are chained by two-literal implications that close into a cycle,
so they all take the same value in any model.
"""

from ethsched import sat_core, sat_prime

F = sat_core.parse_dimacs("""p cnf 4 3
1 -2 3 0
-1 2 4 0
2 -3 0
""")
print(F)

S = sat_prime.to_sat_prime(F)
print(sat_prime.write_sat_prime(S))

# the short clause (2 v -3) got one padding literal, held false by a small gadget
print("copies of each original variable:", S.origin.forward)

# the reference solver collapses the cycles before enumerating
model = sat_prime.solve_sat_prime(S)
print("3SAT' model lifted back:", sat_prime.lift_assignment(S, model))
print("satisfies F:", sat_core.satisfies(F, sat_prime.lift_assignment(S, model)))

# padding for delta = 1/2 renumbers the C1 triples and adds dummy triples
P = sat_prime.pad_and_reindex(S, "1/2")
print("n =", S.n, "-> padded n' =", P.n)
