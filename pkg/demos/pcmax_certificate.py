"""
A perfect schedule as a satisfiability certificate
==================================================

The reduced P||Cmax instance has target makespan K = 10^5 r. A model of the
formula yields a schedule with every load exactly K, and the audits read a
model back from any such schedule.
"""

from ethsched import pcmax_certify, pcmax_reduce, sat_core, sat_prime
from ethsched.instance import verify_schedule_loads

F = sat_core.random_3sat(6, 10, seed=1)
model = sat_core.brute_force_sat(F)
print("model:", sat_core.format_assignment(model), end="")

P = sat_prime.pad_and_reindex(sat_prime.to_sat_prime(F), "1/2")
red = pcmax_reduce.reduce_to_pcmax(P, "1/2")
p = red.params
print(f"n'={p.n} machines={p.machines} jobs={red.instance.num_jobs} x={p.x} r={p.r} K={p.K}")

# a few jobs with their symbols
for j in (1, 2, 200, red.instance.num_jobs):
    print(j, red.instance.size(j), red.instance.symbol(j))

# each size decodes back to its family without looking at the symbol
print(pcmax_reduce.classify_job(red.instance.size(200), p))

print(pcmax_reduce.audit_instance(red).text(), end="")

sched = pcmax_certify.build_forward_schedule(red, sat_prime.push_assignment(P, model))
print("all loads equal K:", verify_schedule_loads(red.instance, sched, p.K).ok)

ex = pcmax_certify.extract_assignment(red, sched)
print(ex.report.text(), end="")
print("read back:", sat_core.format_assignment(sat_prime.lift_assignment(P, ex.assignment)), end="")

# a schedule that only looks balanced in total is rejected machine by machine
mo = list(sched.machine_of)
mo[0], mo[1] = mo[1], mo[0]
bad = pcmax_certify.audit_schedule(red, type(sched)(sched.machines, mo))
print(bad.text(), end="")
