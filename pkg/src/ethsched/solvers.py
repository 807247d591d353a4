"""Exact and heuristic makespan solvers used as oracles for small instances.

The dynamic program enumerates sorted machine-load vectors job by job
(largest first), keeps one parent pointer per state and backtracks to a
schedule. It is exact but its state count can grow like (1 + sum p)^m, so a
hard cap stops runaway runs.
"""

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field


class StateCapExceeded(RuntimeError):
    pass


DEFAULT_STATE_CAP = 5 * 10 ** 7


def state_cap():
    raw = os.environ.get("ETH_SCHED_STATE_CAP")
    return int(raw) if raw else DEFAULT_STATE_CAP


@dataclass
class Telemetry:
    layer_sizes: list = field(default_factory=list)
    jobs: int = 0
    machines: int = 0
    encoding_bits: int = 0

    @property
    def max_states(self):
        return max(self.layer_sizes, default=1)

    @property
    def reference(self):
        """sqrt(m |I| log m) + m log |I| for the encoding length |I| in bits."""
        m, size = self.machines, max(self.encoding_bits, 2)
        return math.sqrt(m * size * math.log2(max(m, 2))) + m * math.log2(size)

    def trivial_cap(self, total):
        return (1 + total) ** self.machines

    def lines(self):
        rows = [("jobs", self.jobs), ("machines", self.machines), ("encoding_bits", self.encoding_bits),
                ("max_states", self.max_states), ("reference", f"{self.reference:.3f}")]
        rows += [(f"layer_{k}", s) for k, s in enumerate(self.layer_sizes)]
        return [f"stat {name} {value}" for name, value in rows]


def _expand(chunk, p, ub):
    """Children of a slice of states, in deterministic order."""
    out = []
    for state in chunk:
        last = None
        for slot, load in enumerate(state):
            if load == last:
                continue  # equal loads give the same sorted child
            last = load
            new = load + p
            if ub is not None and new > ub:
                continue
            child = tuple(sorted(state[:slot] + (new,) + state[slot + 1:]))
            out.append((child, state, slot))
    return out


def dp_min_makespan(jobs, m, ub=None, workers=1, cap=None):
    """Exact minimum makespan. Returns (makespan, machine_of, telemetry).

    ``machine_of[j]`` is the 1-based machine of ``jobs[j]``. With ``workers``
    > 1 each layer is expanded in parallel chunks; merging keeps the first
    parent in chunk order so results do not depend on the worker count.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if any(p < 0 for p in jobs):
        raise ValueError("job sizes must be non-negative")
    cap = state_cap() if cap is None else cap
    order = sorted(range(len(jobs)), key=lambda j: (-jobs[j], j))
    tel = Telemetry(jobs=len(jobs), machines=m,
                    encoding_bits=sum(max(p, 1).bit_length() for p in jobs) + m.bit_length())
    layer = {tuple([0] * m): None}
    parents = []
    tel.layer_sizes.append(1)
    pool = ThreadPoolExecutor(workers) if workers > 1 else None
    try:
        for j in order:
            p = jobs[j]
            states = sorted(layer)
            if pool:
                size = max(1, -(-len(states) // workers))
                chunks = [states[i:i + size] for i in range(0, len(states), size)]
                parts = list(pool.map(lambda c: _expand(c, p, ub), chunks))
            else:
                parts = [_expand(states, p, ub)]
            nxt = {}
            for part in parts:
                for child, parent, slot in part:
                    if child not in nxt:
                        nxt[child] = (parent, slot)
            if not nxt:
                raise ValueError("upper bound below every schedule")
            if len(nxt) > cap:
                raise StateCapExceeded(f"{len(nxt)} states exceed cap {cap}")
            parents.append(nxt)
            layer = nxt
            tel.layer_sizes.append(len(nxt))
    finally:
        if pool:
            pool.shutdown()
    best = min(layer, key=lambda s: (max(s), s))
    slots = []
    state = best
    for depth in range(len(order) - 1, -1, -1):
        state, slot = parents[depth][state]
        slots.append(slot)
    slots.reverse()
    # replay: position k of the sorted (load, machine) list is parent slot k
    machines = [(0, k) for k in range(m)]
    machine_of = [0] * len(jobs)
    for j, slot in zip(order, slots):
        load, k = machines[slot]
        machines[slot] = (load + jobs[j], k)
        machines.sort()
        machine_of[j] = k + 1
    return max(best), machine_of, tel


BRUTE_JOB_LIMIT = 12
BRUTE_MACHINE_LIMIT = 4


def brute_min_makespan(jobs, m):
    """Exhaustive search with job 0 pinned to machine 1.

    Branches whose partial makespan already reaches the best found are cut,
    which keeps the search exact.
    """
    if len(jobs) > BRUTE_JOB_LIMIT or m > BRUTE_MACHINE_LIMIT:
        raise ValueError(f"brute force limited to {BRUTE_JOB_LIMIT} jobs and {BRUTE_MACHINE_LIMIT} machines")
    if not jobs:
        return 0, []
    n = len(jobs)
    loads = [0] * m
    cur = [0] * n
    best = [sum(jobs) + 1, None]

    def go(j, span):
        if span >= best[0]:
            return
        if j == n:
            best[0], best[1] = span, [k + 1 for k in cur]
            return
        for k in range(m if j else 1):
            loads[k] += jobs[j]
            cur[j] = k
            go(j + 1, max(span, loads[k]))
            loads[k] -= jobs[j]

    go(0, 0)
    return best[0], best[1]


def lpt_schedule(jobs, m):
    """Longest processing time first; ties go to the lower machine id."""
    loads = [0] * m
    machine_of = [0] * len(jobs)
    for j in sorted(range(len(jobs)), key=lambda j: (-jobs[j], j)):
        k = min(range(m), key=lambda i: (loads[i], i))
        loads[k] += jobs[j]
        machine_of[j] = k + 1
    return max(loads, default=0), machine_of
