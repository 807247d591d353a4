"""Fine-grained hardness reductions for makespan scheduling.

Reductions from 3SAT to P||Cmax (with a sub-exponential number of
machines) and to Pm||Cmax (through an exact-cover problem), with
certificate checkers in both directions and small reference solvers.
"""

__version__ = "0.1.0"
