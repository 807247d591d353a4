import pytest

from ethsched import instance as ins
from ethsched.pcmax_reduce import parse_symbol


def test_instance_roundtrip():
    inst = ins.SchedulingInstance(2, [5, 7, 1], ["a", "b c", ""], 13)
    text = ins.write_instance(inst)
    assert text == "p sched 2 3 13\n1 5 #a\n2 7 #b c\n3 1\n"
    assert ins.parse_instance(text) == inst


def test_instance_with_symbol_parser():
    text = "p sched 1 1 -\n1 9 #V i=1 k=2 T\n"
    inst = ins.parse_instance(text, parse_symbol)
    assert inst.target is None and str(inst.symbol(1)) == "V i=1 k=2 T"


@pytest.mark.parametrize("text", [
    "1 5\n",
    "p sched 2 2 -\n1 5\n",
    "p sched 2 1 -\n1 -5\n",
    "p sched 2 2 -\n1 5\n1 6\n",
    "p sched 2 1\n1 5\n",
])
def test_instance_errors(text):
    with pytest.raises(ins.FormatError):
        ins.parse_instance(text)


def test_schedule_roundtrip_and_loads():
    s = ins.Schedule(2, [1, 2, 2])
    assert ins.parse_schedule(ins.write_schedule(s)) == s
    assert s.loads([5, 7, 1]) == [5, 8]
    assert s.jobs_on() == {1: [1], 2: [2, 3]}
    inst = ins.SchedulingInstance(2, [5, 7, 1], None, 8)
    rep = ins.verify_schedule_loads(inst, s)
    assert rep.deviations == {1: -3} and rep.makespan == 8 and not rep.ok


def test_schedule_shape():
    inst = ins.SchedulingInstance(2, [1, 1], None, None)
    with pytest.raises(ValueError):
        ins.check_schedule_shape(inst, ins.Schedule(2, [1, 3]))
    with pytest.raises(ValueError):
        ins.check_schedule_shape(inst, ins.Schedule(3, [1, 1]))


def test_report_lines():
    rep = ins.AuditReport()
    rep.add("a", True)
    rep.add("b", False, 4, "oops")
    assert rep.text() == "PASS a\nFAIL b 4 oops\n"
    assert rep.failed() == ["b"] and not rep.ok
