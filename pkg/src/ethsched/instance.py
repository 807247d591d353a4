"""Scheduling instances and schedules shared by both reductions and the
solvers, with their text formats.

Job ids and machine ids are 1-based everywhere.
"""

from dataclasses import dataclass, field


class FormatError(ValueError):
    pass


@dataclass
class SchedulingInstance:
    machines: int
    sizes: list
    symbols: list = field(default_factory=list)
    target: int = None

    def __post_init__(self):
        if not self.symbols:
            self.symbols = [""] * len(self.sizes)
        if len(self.symbols) != len(self.sizes):
            raise ValueError("one symbol per job required")

    @property
    def num_jobs(self):
        return len(self.sizes)

    def size(self, job_id):
        return self.sizes[job_id - 1]

    def symbol(self, job_id):
        return self.symbols[job_id - 1]

    def index_by_symbol(self):
        return {str(s): j for j, s in enumerate(self.symbols, start=1)}


def write_instance(inst):
    target = "-" if inst.target is None else str(inst.target)
    out = [f"p sched {inst.machines} {inst.num_jobs} {target}"]
    for j, (size, sym) in enumerate(zip(inst.sizes, inst.symbols), start=1):
        out.append(f"{j} {size} #{sym}" if str(sym) else f"{j} {size}")
    return "\n".join(out) + "\n"


def parse_instance(text, symbol_parser=None):
    header = None
    rows = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c "):
            continue
        if line.startswith("p "):
            parts = line.split()
            if len(parts) != 5 or parts[1] != "sched":
                raise FormatError(f"line {lineno}: malformed header")
            header = (int(parts[2]), int(parts[3]), None if parts[4] == "-" else int(parts[4]))
            continue
        body, _, sym = line.partition("#")
        parts = body.split()
        if len(parts) != 2:
            raise FormatError(f"line {lineno}: expected '<job-id> <size> [#symbol]'")
        jid, size = int(parts[0]), int(parts[1])
        if size < 0:
            raise FormatError(f"line {lineno}: negative size")
        if jid in rows:
            raise FormatError(f"line {lineno}: duplicate job id {jid}")
        sym = sym.strip()
        rows[jid] = (size, symbol_parser(sym) if (symbol_parser and sym) else sym)
    if header is None:
        raise FormatError("missing header")
    machines, njobs, target = header
    if sorted(rows) != list(range(1, njobs + 1)):
        raise FormatError(f"job ids must be exactly 1..{njobs}")
    return SchedulingInstance(machines, [rows[j][0] for j in range(1, njobs + 1)],
                              [rows[j][1] for j in range(1, njobs + 1)], target)


@dataclass
class Schedule:
    """``machine_of[j - 1]`` is the machine of job ``j``."""
    machines: int
    machine_of: list

    def jobs_on(self):
        out = {m: [] for m in range(1, self.machines + 1)}
        for j, m in enumerate(self.machine_of, start=1):
            out[m].append(j)
        return out

    def loads(self, sizes):
        loads = [0] * self.machines
        for j, m in enumerate(self.machine_of):
            loads[m - 1] += sizes[j]
        return loads

    def relabel(self, perm):
        """Rename machine ``m`` to ``perm[m]``."""
        return Schedule(self.machines, [perm[m] for m in self.machine_of])


def check_schedule_shape(inst, sched):
    if sched.machines != inst.machines:
        raise ValueError(f"schedule has {sched.machines} machines, instance has {inst.machines}")
    if len(sched.machine_of) != inst.num_jobs:
        raise ValueError(f"schedule covers {len(sched.machine_of)} jobs, instance has {inst.num_jobs}")
    for j, m in enumerate(sched.machine_of, start=1):
        if not 1 <= m <= inst.machines:
            raise ValueError(f"job {j} placed on machine {m} outside 1..{inst.machines}")


def write_schedule(sched):
    out = [f"p assign {sched.machines} {len(sched.machine_of)}"]
    out.extend(f"{j} {m}" for j, m in enumerate(sched.machine_of, start=1))
    return "\n".join(out) + "\n"


def parse_schedule(text):
    header = None
    rows = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "p":
            if len(parts) != 4 or parts[1] != "assign":
                raise FormatError(f"line {lineno}: malformed header")
            header = (int(parts[2]), int(parts[3]))
            continue
        if len(parts) != 2:
            raise FormatError(f"line {lineno}: expected '<job-id> <machine-id>'")
        jid, mid = int(parts[0]), int(parts[1])
        if jid in rows:
            raise FormatError(f"line {lineno}: job {jid} assigned twice")
        rows[jid] = mid
    if header is None:
        raise FormatError("missing header")
    machines, njobs = header
    if sorted(rows) != list(range(1, njobs + 1)):
        raise FormatError(f"schedule must assign exactly jobs 1..{njobs}")
    return Schedule(machines, [rows[j] for j in range(1, njobs + 1)])


@dataclass
class LoadReport:
    loads: list
    target: int

    @property
    def deviations(self):
        return {m: load - self.target for m, load in enumerate(self.loads, start=1) if load != self.target}

    @property
    def ok(self):
        return not self.deviations

    @property
    def makespan(self):
        return max(self.loads, default=0)


def verify_schedule_loads(inst, sched, target=None):
    check_schedule_shape(inst, sched)
    target = inst.target if target is None else target
    return LoadReport(sched.loads(inst.sizes), target)


@dataclass
class CheckResult:
    name: str
    ok: bool
    machine: int = None
    detail: str = ""

    def line(self):
        parts = ["PASS" if self.ok else "FAIL", self.name]
        if self.machine is not None:
            parts.append(str(self.machine))
        if self.detail:
            parts.append(self.detail)
        return " ".join(parts)


@dataclass
class AuditReport:
    checks: list = field(default_factory=list)

    def add(self, name, ok, machine=None, detail=""):
        self.checks.append(CheckResult(name, ok, machine, detail))

    @property
    def ok(self):
        return all(c.ok for c in self.checks)

    def get(self, name):
        return next(c for c in self.checks if c.name == name)

    def failed(self):
        return [c.name for c in self.checks if not c.ok]

    def text(self):
        return "\n".join(c.line() for c in self.checks) + "\n"
