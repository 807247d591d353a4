import random

import pytest

from ethsched import pcmax_certify as pc, sat_core, sat_prime as sp
from ethsched.instance import verify_schedule_loads

from helpers import FAULTS, caught_by, pcmax_pipeline, satisfiable_formulas, swap_jobs


@pytest.fixture(scope="module", params=["1/2", "1/3"])
def setup(request):
    F, model = satisfiable_formulas(1, seed=7)[0]
    return (F,) + pcmax_pipeline(F, model, request.param)


def test_forward_loads_exact(setup):
    F, red, A, sched = setup
    rep = verify_schedule_loads(red.instance, sched, red.params.K)
    assert rep.ok and rep.makespan == red.params.K


def test_extract_returns_same_model(setup):
    F, red, A, sched = setup
    ex = pc.extract_assignment(red, sched)
    assert ex.assignment == A
    assert sat_core.satisfies(F, sp.lift_assignment(red.S, ex.assignment))
    assert ex.report.ok and [c.name for c in ex.report.checks][-1] == "satisfies_formula"


def test_extract_independent_of_machine_labels(setup):
    F, red, A, sched = setup
    perm = list(range(1, sched.machines + 1))
    random.Random(1).shuffle(perm)
    moved = sched.relabel({m: perm[m - 1] for m in range(1, sched.machines + 1)})
    assert pc.extract_assignment(red, moved).assignment == A


@pytest.mark.parametrize("check", list(FAULTS))
def test_fault_caught_by_its_audit(setup, check):
    F, red, A, sched = setup
    assert caught_by(*FAULTS[check](red, A, sched)) == check


def test_fault_reports_machine(setup):
    F, red, A, sched = setup
    bad_red, bad = FAULTS["well_canceled"](red, A, sched)
    with pytest.raises(pc.ExtractionError) as err:
        pc.extract_assignment(bad_red, bad, check_loads=False)
    assert err.value.machine == 1 and err.value.jobs


def test_any_swap_breaks_loads(setup):
    F, red, A, sched = setup
    rng = random.Random(3)
    for _ in range(20):
        a, b = rng.sample(range(1, red.instance.num_jobs + 1), 2)
        if sched.machine_of[a - 1] == sched.machine_of[b - 1] or red.instance.size(a) == red.instance.size(b):
            continue
        with pytest.raises(pc.ExtractionError) as err:
            pc.extract_assignment(red, swap_jobs(sched, a, b))
        assert err.value.check == "loads"


def test_audit_schedule_report(setup):
    F, red, A, sched = setup
    assert pc.audit_schedule(red, sched).ok
    bad_red, bad = FAULTS["composition"](red, A, sched)
    rep = pc.audit_schedule(bad_red, bad)
    assert rep.failed() == ["loads", "composition"]
    assert rep.get("composition").machine == 1
    assert rep.text().splitlines()[0].startswith("FAIL loads")


def test_forward_rejects_non_model(setup):
    F, red, A, sched = setup
    flipped = (not A[0],) + A[1:]
    with pytest.raises(pc.ForwardError):
        pc.build_forward_schedule(red, flipped)


def test_each_model_gives_its_own_schedule():
    F = sat_core.CnfFormula(3, ((1, 2, 3),))
    seen = set()
    for model in [(True, False, False), (False, True, False), (True, True, True)]:
        red, A, sched = pcmax_pipeline(F, model, "1/2")
        ex = pc.extract_assignment(red, sched)
        assert sp.lift_assignment(red.S, ex.assignment) == model
        seen.add(tuple(sched.machine_of))
    assert len(seen) == 3
