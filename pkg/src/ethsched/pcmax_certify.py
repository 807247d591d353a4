"""Certificates for the P||Cmax reduction.

Forward: a model of the 3SAT' instance becomes a schedule in which every
machine has load exactly K. Backward: a schedule with all loads K is
audited machine by machine and a model is read off the truth-assignment
jobs.
"""

from collections import Counter
from dataclasses import dataclass

from .instance import AuditReport, Schedule, verify_schedule_loads
from .pcmax_reduce import (Agent, ClauseJob, DummyJob, Huge, TruthJob, Var,
                           c1_polarity, classify_job)
from .sat_prime import check_sat_prime


class ForwardError(ValueError):
    pass


def _companions(S, A, L):
    """Companion symbols of every huge job under model ``A`` (dummies left
    as placeholders ``("dummy", big)``)."""
    pol = c1_polarity(S)
    val = lambda i: bool(A[i - 1])
    out = {}
    for i in range(1, S.n + 1):
        t = val(i)
        out[Huge("varagent", i, sign="+")] = [Var(i, 2, t), Agent(i, L - 1, "+", not t)]
        out[Huge("varagent", i, sign="-")] = [Var(i, 4, not t), Agent(i, L - 1, "-", t)]
        for j in range(1, L - 1):
            out[Huge("layerdec", i, j=j, sign="+")] = [Agent(i, j, "+", not t), Agent(i, j + 1, "+", t)]
            out[Huge("layerdec", i, j=j, sign="-")] = [Agent(i, j, "-", t), Agent(i, j + 1, "-", not t)]
        out[Huge("varassign", i, pair="ac")] = [Var(i, 1, not t), TruthJob("a", i, not t), TruthJob("c", i, not t)]
        out[Huge("varassign", i, pair="bd")] = [Var(i, 2, not t), TruthJob("b", i, not t), TruthJob("d", i, not t)]
        out[Huge("varassign", i, pair="ad")] = [Var(i, 3, t), TruthJob("a", i, t), TruthJob("d", i, t)]
        out[Huge("varassign", i, pair="bc")] = [Var(i, 4, t), TruthJob("b", i, t), TruthJob("c", i, t)]
        left_pos, left_neg = Var(i, 1, t), Var(i, 3, not t)
        in_clause, spare = (left_pos, left_neg) if pol[i] else (left_neg, left_pos)
        out[Huge("vardummy", i, sign="-" if pol[i] else "+")] = [spare, ("dummy", spare.truth)]
        out[("clausevar", i)] = in_clause
    for i, k in S.c2:
        out[Huge("agentagent", i, k=k)] = [Agent(i, 1, "+", val(i)), Agent(k, 1, "-", not val(k))]
    for t_idx, clause in enumerate(S.c1):
        j = 3 * t_idx + 1
        winner = next((l for l in sorted(clause, key=abs) if val(abs(l)) == (l > 0)), None)
        if winner is None:
            raise ForwardError(f"C1 clause {t_idx + 1} is not satisfied")
        copy = 1
        for lit in clause:
            i = abs(lit)
            v = out.pop(("clausevar", i))
            h = Huge("varclause", i, j=j, sign="+" if lit > 0 else "-")
            if lit == winner:
                out[h] = [v, ClauseJob(j, True), ("dummy", False)]
            else:
                out[h] = [v, ClauseJob(j, False, copy), ("dummy", v.truth)]
                copy += 1
    return out


def build_forward_schedule(red, A):
    """Schedule of load exactly K on every machine from a model ``A`` of S."""
    S, inst = red.S, red.instance
    bad = check_sat_prime(S, A)
    if bad:
        raise ForwardError("assignment is not a model: " + bad[0])
    comp = _companions(S, A, red.params.L)
    index = {s: j for j, s in enumerate(inst.symbols, start=1)}
    pools = {False: [], True: []}
    for j, s in enumerate(inst.symbols, start=1):
        if isinstance(s, DummyJob):
            pools[s.big].append(j)
    machine_of = [0] * inst.num_jobs
    for j, s in enumerate(inst.symbols, start=1):
        if not isinstance(s, Huge):
            continue
        machine_of[j - 1] = j  # huge jobs come first, machine id = job id
        for c in comp[s]:
            cj = pools[c[1]].pop() if isinstance(c, tuple) else index[c]
            if machine_of[cj - 1]:
                raise ForwardError(f"job {inst.symbols[cj - 1]} placed twice")
            machine_of[cj - 1] = j
    if 0 in machine_of:
        missing = machine_of.index(0) + 1
        raise ForwardError(f"job {inst.symbols[missing - 1]} left unplaced")
    sched = Schedule(inst.machines, machine_of)
    rep = verify_schedule_loads(inst, sched)
    if not rep.ok:
        m, d = next(iter(rep.deviations.items()))
        raise ForwardError(f"machine {m} load off by {d}")
    return sched


# ----------------------------------------------------------------- backward

CHECKS = ("composition", "term_sums", "well_canceled", "satisfied", "truth_benevolent")


class ExtractionError(ValueError):
    def __init__(self, check, machine=None, jobs=(), detail=""):
        self.check = check
        self.machine = machine
        self.jobs = tuple(jobs)
        self.detail = detail
        where = f" on machine {machine}" if machine is not None else ""
        super().__init__(f"{check} failed{where}: {detail}")


@dataclass
class MachineView:
    machine: int
    jobs: list
    classes: list
    symbols: list

    @property
    def huge_pos(self):
        return [p for p, c in enumerate(self.classes) if c.family == "huge"]


def _key(jc):
    d = jc.info
    if jc.family == "variable":
        return ("variable", d["k"])
    if jc.family == "agent":
        return ("agent", d["layer"], d["sign"])
    if jc.family == "truth":
        return ("truth", d["kind"])
    return (jc.family,)


def _expected_keys(info, L):
    v = info["variant"]
    s = info.get("sign")
    if v == "varagent":
        return [("variable", 2 if s == "+" else 4), ("agent", L - 1, s)]
    if v == "layerdec":
        return [("agent", info["j"], s), ("agent", info["j"] + 1, s)]
    if v == "agentagent":
        return [("agent", 1, "+"), ("agent", 1, "-")]
    if v == "varclause":
        return [("clause",), ("variable", 1 if s == "+" else 3), ("dummy",)]
    if v == "vardummy":
        return [("variable", 1 if s == "+" else 3), ("dummy",)]
    kind = {"ac": 1, "bd": 2, "ad": 3, "bc": 4}[info["pair"]]
    return [("variable", kind), ("truth", info["pair"][0]), ("truth", info["pair"][1])]


def _term_pattern(info, L):
    """Per level k: 'R' regular (2*tau), 'S' singular (tau) or '0'."""
    v = info["variant"]
    if v == "varagent":
        return {k: ("R" if k == L else "0") for k in range(2, L + 1)}
    if v == "layerdec":
        j = info["j"]
        return {k: ("R" if k >= j + 2 else "S" if k == j + 1 else "0") for k in range(2, L + 1)}
    if v == "agentagent":
        return {k: "R" for k in range(2, L + 1)}
    return {k: ("S" if k == L else "0") for k in range(2, L + 1)}


def check_composition(view, params):
    hp = view.huge_pos
    if len(hp) != 1:
        return f"{len(hp)} huge jobs"
    h = view.classes[hp[0]]
    got = Counter(_key(c) for p, c in enumerate(view.classes) if p != hp[0])
    want = Counter(_expected_keys(h.info, params.L))
    if got != want:
        return f"companions {sorted(got.elements())} expected {sorted(want.elements())}"
    return None


def check_term_sums(view, params):
    rsum = sum(c.rc for c in view.classes)
    if rsum != 10 ** 5:
        return f"r-coefficients sum to {rsum}"
    for k in range(2, params.L + 1):
        s = sum(c.xc.get(k, 0) for c in view.classes)
        if s:
            return f"x^{k} coefficients sum to {s}"
    return None


def check_well_canceled(view, params):
    hp = view.huge_pos[0]
    h = view.classes[hp]
    others = [c for p, c in enumerate(view.classes) if p != hp]
    for k, kind in _term_pattern(h.info, params.L).items():
        need = -h.xc.get(k, 0)
        vals = sorted(v for v in (c.xc.get(k, 0) for c in others) if v)
        if kind == "R":
            ok = need % 2 == 0 and vals == [need // 2, need // 2]
        elif kind == "S":
            ok = vals == [need]
        else:
            ok = need == 0 and not vals
        if not ok:
            return f"x^{k}: gap {need} ({kind}) filled by {vals}"
    return None


def _sym_index(s):
    if isinstance(s, ClauseJob):
        return s.j
    return s.i


def check_satisfied(view, params):
    hp = view.huge_pos[0]
    h = view.symbols[hp]
    others = [s for p, s in enumerate(view.symbols) if p != hp]
    if h.variant == "agentagent":
        for s in others:
            want = h.i if s.sign == "+" else h.k
            if s.i != want:
                return f"{s} does not belong to {h}"
        return None
    for s in others:
        if isinstance(s, DummyJob):
            continue
        want = h.j if isinstance(s, ClauseJob) else h.i
        if _sym_index(s) != want:
            return f"{s} does not belong to {h}"
    return None


def check_truth_benevolent(view, params):
    hp = view.huge_pos[0]
    h = view.symbols[hp]
    others = [s for p, s in enumerate(view.symbols) if p != hp and not isinstance(s, DummyJob)]
    truths = [s.truth for s in others]
    if h.variant in ("varagent", "layerdec", "agentagent"):
        ok = sorted(truths) == [False, True]
    elif h.variant == "varclause":
        v = next(s for s in others if isinstance(s, Var))
        u = next(s for s in others if isinstance(s, ClauseJob))
        ok = (v.truth, u.truth) != (False, True)
    elif h.variant == "varassign":
        ok = len(set(truths)) == 1
    else:
        ok = True
    return None if ok else "pattern " + " ".join(str(s) for s in others)


AUDIT_FUNCS = {
    "composition": check_composition,
    "term_sums": check_term_sums,
    "well_canceled": check_well_canceled,
    "satisfied": check_satisfied,
    "truth_benevolent": check_truth_benevolent,
}


def machine_views(red, sched):
    inst, params = red.instance, red.params
    views = {}
    for m, jobs in sched.jobs_on().items():
        views[m] = MachineView(m, jobs, [classify_job(inst.size(j), params) for j in jobs],
                               [inst.symbol(j) for j in jobs])
    return views


def audit_machine(view, params):
    """First failing check on one machine as ``(check, detail)`` or None."""
    for name in CHECKS:
        msg = AUDIT_FUNCS[name](view, params)
        if msg:
            return name, msg
    return None


def read_assignment(red, sched):
    """z_i is true iff a_i^T shares a machine with d_i^T (gap 'ad')."""
    inst = red.instance
    index = {s: j for j, s in enumerate(inst.symbols, start=1)}
    on = sched.jobs_on()
    values = []
    for i in range(1, red.S.n + 1):
        m = sched.machine_of[index[TruthJob("a", i, True)] - 1]
        mates = [inst.symbol(j) for j in on[m]]
        huge = [s for s in mates if isinstance(s, Huge)]
        if len(huge) != 1 or huge[0].variant != "varassign" or huge[0].i != i or huge[0].pair not in ("ac", "ad"):
            raise ExtractionError("read_assignment", m, detail=f"a_{i}^T is not on a_{i}'s assignment gap")
        partner = "c" if huge[0].pair == "ac" else "d"
        if TruthJob(partner, i, True) not in mates:
            raise ExtractionError("read_assignment", m, detail=f"a_{i}^T without {partner}_{i}^T")
        values.append(huge[0].pair == "ad")
    return tuple(values)


@dataclass
class Extraction:
    assignment: tuple
    report: AuditReport


def extract_assignment(red, sched, check_loads=True):
    """Audit a schedule and read a model of S from it.

    Per-machine checks run in the order of CHECKS; the reported failure is
    the first failing check on the lowest-numbered failing machine. Pass
    ``check_loads=False`` to audit schedules that are not perfect.
    """
    rep = AuditReport()
    if check_loads:
        lr = verify_schedule_loads(red.instance, sched, red.params.K)
        if not lr.ok:
            m, d = next(iter(lr.deviations.items()))
            raise ExtractionError("loads", m, detail=f"load differs from K by {d}")
        rep.add("loads", True)
    views = machine_views(red, sched)
    for m in sorted(views):
        fail = audit_machine(views[m], red.params)
        if fail:
            raise ExtractionError(fail[0], m, views[m].jobs, fail[1])
    for name in CHECKS:
        rep.add(name, True)
    A = read_assignment(red, sched)
    rep.add("read_assignment", True)
    bad = check_sat_prime(red.S, A)
    if bad:
        raise ExtractionError("satisfies_formula", detail=bad[0])
    rep.add("satisfies_formula", True)
    return Extraction(A, rep)


def audit_schedule(red, sched):
    """Full report: every check with its first failing machine (no early exit)."""
    rep = AuditReport()
    lr = verify_schedule_loads(red.instance, sched, red.params.K)
    bad = sorted(lr.deviations)
    rep.add("loads", not bad, bad[0] if bad else None)
    views = machine_views(red, sched)
    first = {}
    for m in sorted(views):
        # later checks assume the machine passed the earlier ones
        for name in CHECKS:
            msg = AUDIT_FUNCS[name](views[m], red.params)
            if msg:
                first.setdefault(name, (m, msg))
                break
    for name in CHECKS:
        if name in first:
            rep.add(name, False, first[name][0], first[name][1])
        else:
            rep.add(name, True)
    if not first:
        try:
            A = read_assignment(red, sched)
            rep.add("read_assignment", True)
            msgs = check_sat_prime(red.S, A)
            rep.add("satisfies_formula", not msgs, detail=msgs[0] if msgs else "")
        except ExtractionError as exc:
            rep.add(exc.check, False, exc.machine, exc.detail)
    return rep
