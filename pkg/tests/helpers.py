"""Shared builders for the test-suite."""

import dataclasses
import random

from ethsched import pcmax_certify as pc
from ethsched import pcmax_reduce as pr
from ethsched import sat_core, sat_prime
from ethsched.instance import Schedule
from ethsched.pcmax_reduce import Agent, DummyJob, Huge, TruthJob, Var


def satisfiable_formulas(count, seed, lo=5, hi=12):
    """``count`` random satisfiable 3-CNFs with their first model."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        nv = rng.randint(lo, hi)
        nc = rng.randint(nv, 4 * nv)
        F = sat_core.random_3sat(nv, nc, rng.randrange(10 ** 9))
        model = sat_core.brute_force_sat(F)
        if model is not None:
            out.append((F, model))
    return out


def pcmax_pipeline(F, model, delta):
    S = sat_prime.to_sat_prime(F)
    P = sat_prime.pad_and_reindex(S, delta)
    red = pr.reduce_to_pcmax(P, delta)
    A = sat_prime.push_assignment(P, model)
    return red, A, pc.build_forward_schedule(red, A)


def job_index(red):
    return {s: j for j, s in enumerate(red.instance.symbols, start=1)}


def swap_jobs(sched, a, b):
    mo = list(sched.machine_of)
    mo[a - 1], mo[b - 1] = mo[b - 1], mo[a - 1]
    return Schedule(sched.machines, mo)


def move_to_front(sched, machine):
    """Relabel so ``machine`` becomes machine 1."""
    perm = {m: m for m in range(1, sched.machines + 1)}
    perm[machine], perm[1] = 1, machine
    return sched.relabel(perm)


def with_symbols(red, swaps):
    syms = list(red.instance.symbols)
    for a, b in swaps:
        syms[a - 1], syms[b - 1] = syms[b - 1], syms[a - 1]
    return dataclasses.replace(red, instance=dataclasses.replace(red.instance, symbols=syms))


# ------------------------------------------------------------ fault builders
# Each returns (reduction, schedule) with exactly one planted defect.

def fault_composition(red, A, sched):
    idx = job_index(red)
    dummy = idx[next(s for s in red.instance.symbols if isinstance(s, DummyJob))]
    mo = list(sched.machine_of)
    mo[dummy - 1] = 1
    return red, Schedule(sched.machines, mo)


def fault_term_sums(red, A, sched):
    on = sched.jobs_on()
    syms = red.instance.symbols

    def dummy_on(variant, big):
        for j, s in enumerate(syms, start=1):
            if isinstance(s, Huge) and s.variant == variant:
                d = [k for k in on[j] if isinstance(syms[k - 1], DummyJob) and syms[k - 1].big == big]
                if d:
                    return d[0]
        return None

    for big in (False, True):
        a, b = dummy_on("vardummy", big), dummy_on("varclause", not big)
        if a and b:
            return red, swap_jobs(sched, a, b)
    raise AssertionError("no dummy pair with different sizes")


def fault_well_canceled(red, A, sched):
    part, L, n = red.partition, red.params.L, red.params.n
    idx = job_index(red)
    val = lambda i: bool(A[i - 1])
    for i in range(1, n + 1):
        tau = part.f[L][i]
        lo = [v for v in range(1, n + 1) if part.f[L][v] == tau - 1 and val(v) == val(i)]
        hi = [v for v in range(1, n + 1) if part.f[L][v] == tau + 1 and val(v) == val(i)]
        if lo and hi:
            break
    else:
        raise AssertionError("partition too small for this fault")
    t = val(i)
    target = idx[Huge("varagent", i, sign="+")]
    s1 = swap_jobs(sched, idx[Var(i, 2, t)], idx[Var(lo[0], 2, t)])
    s2 = swap_jobs(s1, idx[Agent(i, L - 1, "+", not t)], idx[Agent(hi[0], L - 1, "+", not t)])
    return red, move_to_front(s2, sched.machine_of[target - 1])


def fault_satisfied(red, A, sched):
    part, L, n = red.partition, red.params.L, red.params.n
    idx = job_index(red)
    for i in range(1, n + 1):
        for k in range(i + 1, n + 1):
            if part.f[L][i] == part.f[L][k] and A[i - 1] == A[k - 1]:
                t = bool(A[i - 1])
                return red, swap_jobs(sched, idx[Var(i, 2, t)], idx[Var(k, 2, t)])
    raise AssertionError("no pair in a shared group")


def fault_truth_benevolent(red, A, sched):
    idx = job_index(red)
    return with_symbols(red, [(idx[Var(1, 1, True)], idx[Var(1, 1, False)])]), sched


def fault_read_assignment(red, A, sched):
    idx = job_index(red)
    return with_symbols(red, [(idx[TruthJob("c", 1, True)], idx[TruthJob("d", 1, True)])]), sched


def fault_satisfies_formula(red, A, sched):
    S = red.S
    clause = tuple(v if not A[v - 1] else -v for v in (abs(l) for l in S.c1[0]))
    S2 = dataclasses.replace(S, c1=(clause,) + S.c1[1:])
    return dataclasses.replace(red, S=S2), sched


FAULTS = {
    "composition": fault_composition,
    "term_sums": fault_term_sums,
    "well_canceled": fault_well_canceled,
    "satisfied": fault_satisfied,
    "truth_benevolent": fault_truth_benevolent,
    "read_assignment": fault_read_assignment,
    "satisfies_formula": fault_satisfies_formula,
}


def caught_by(red, sched):
    """Name of the check that rejects the schedule, or None."""
    try:
        pc.extract_assignment(red, sched, check_loads=False)
    except pc.ExtractionError as exc:
        return exc.check
    return None
