"""
Exact makespan on small instances
=================================

The load-vector dynamic program, brute force and LPT side by side, and the
growth of the DP state space with the number of jobs.
"""

import random

from ethsched import solvers

jobs = [3, 3, 2, 2, 2]
print("dp   ", solvers.dp_min_makespan(jobs, 2)[:2])
print("brute", solvers.brute_min_makespan(jobs, 2))
print("lpt  ", solvers.lpt_schedule(jobs, 2))

rng = random.Random(0)
for nj in (6, 9, 12, 15):
    jobs = [rng.randint(1, 60) for _ in range(nj)]
    span, _, tel = solvers.dp_min_makespan(jobs, 3, workers=2)
    print(f"{nj:3d} jobs: makespan {span:4d}  max states {tel.max_states:6d}  reference {tel.reference:6.1f}")

# the cap turns runaway state growth into an error
try:
    solvers.dp_min_makespan(list(range(1, 30)), 5, cap=10 ** 4)
except solvers.StateCapExceeded as exc:
    print("stopped:", exc)
