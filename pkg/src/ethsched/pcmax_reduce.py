"""3SAT' -> P||Cmax with about n/delta machines.

Sizes are exact Python integers. With ``L = 1/delta`` and ``P = 2**(L+7)``
every job is a polynomial in ``r`` and ``x`` whose terms occupy separate
"bands", so the symbol of a job can be decoded from its size alone
(:func:`classify_job`). See FORMULA_NOTES.md for the exact formulas.
"""

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .instance import AuditReport, SchedulingInstance
from .sat_prime import integer_root, parse_delta, validate


class ReductionError(ValueError):
    pass


@dataclass(frozen=True)
class ReductionParams:
    n: int
    delta: Fraction
    L: int
    root: int
    x: int
    r: int
    K: int
    machines: int

    @property
    def P(self):
        return 2 ** (self.L + 7)

    @property
    def cL(self):
        # constant offset shared by variable jobs
        return 2 ** (self.L + 6)


def params_for(n, delta, require_div3=True):
    delta = parse_delta(delta)
    L = delta.denominator
    root = integer_root(n, L)
    if root is None or root < 1:
        raise ReductionError(f"n**delta is not an integer for n={n}, delta={delta}")
    if require_div3 and n % 3:
        raise ReductionError(f"n={n} is not divisible by 3")
    r = 2 ** (3 * L + 9) * n * root
    return ReductionParams(n=n, delta=delta, L=L, root=root, x=4 * root, r=r,
                           K=10 ** 5 * r, machines=2 * L * n + 5 * n)


def build_params(S, delta):
    return params_for(S.n, delta)


# ---------------------------------------------------------------- partition

@dataclass
class LayerPartition:
    """Layered grouping of the C2 clauses.

    ``f[k][i]`` (2 <= k <= L) and ``g[j][i]`` (1 <= j <= L-1) are the group
    index and rank of the positive literal ``z_i``; ``fb``/``gb`` do the same
    for negative literals. Lists are indexed by variable (slot 0 unused).
    """
    L: int
    root: int
    f: dict
    g: dict
    fb: dict
    gb: dict


def build_partition(S, params):
    n, L, root = params.n, params.L, params.root
    if len(S.c2) != n:
        raise ReductionError("C2 must have exactly n clauses")
    f = {k: [0] * (n + 1) for k in range(2, L + 1)}
    fb = {k: [0] * (n + 1) for k in range(2, L + 1)}
    g = {j: [0] * (n + 1) for j in range(1, L)}
    gb = {j: [0] * (n + 1) for j in range(1, L)}

    def split(clauses, layer):
        if layer == L:
            return
        size = len(clauses) // root
        for k in range(root):
            grp = clauses[k * size:(k + 1) * size]
            for rank, i in enumerate(sorted(c[0] for c in grp), start=1):
                f[L - layer + 1][i] = k + 1
                g[L - layer][i] = rank
            for rank, h in enumerate(sorted(c[1] for c in grp), start=1):
                fb[L - layer + 1][h] = k + 1
                gb[L - layer][h] = rank
            split(grp, layer + 1)

    split(sorted(S.c2), 1)
    return LayerPartition(L, root, f, g, fb, gb)


def check_partition(S, part):
    """Assert the structural facts the reduction relies on.

    Returns a list of problems (empty when all hold): value ranges, equal
    group indices across each C2 clause, rank monotonicity inside groups and
    equal multiplicities of every group index.
    """
    L, root = part.L, part.root
    n = len(part.f[L]) - 1
    bad = []
    for k in range(2, L + 1):
        for tab, name in ((part.f, "f"), (part.fb, "fb")):
            vals = tab[k][1:]
            if not all(1 <= v <= root for v in vals):
                bad.append(f"{name}_{k} out of range")
            counts = Counter(vals)
            if set(counts.values()) != {n // root}:
                bad.append(f"{name}_{k} multiplicities {sorted(set(counts.values()))}")
    for j in range(1, L):
        for tab, name in ((part.g, "g"), (part.gb, "gb")):
            if not all(1 <= v <= root ** j for v in tab[j][1:]):
                bad.append(f"{name}_{j} out of range")
    for i, h in S.c2:
        for k in range(2, L + 1):
            if part.f[k][i] != part.fb[k][h]:
                bad.append(f"clause ({i},{h}) splits at layer {k}")
    for tab_f, tab_g, name in ((part.f, part.g, "pos"), (part.fb, part.gb, "neg")):
        for depth in range(1, L):
            # variables sharing f_L..f_{L-depth+1} must have increasing g_{L-depth}
            key = lambda i: tuple(tab_f[k][i] for k in range(L, L - depth, -1))
            buckets = {}
            for i in range(1, n + 1):
                buckets.setdefault(key(i), []).append(i)
            for members in buckets.values():
                ranks = [tab_g[L - depth][i] for i in members]
                if ranks != sorted(ranks) or len(set(ranks)) != len(ranks):
                    bad.append(f"{name} ranks not monotone at depth {depth}")
                    break
    return bad


# ------------------------------------------------------------------ symbols

def _tf(b):
    return "T" if b else "F"


@dataclass(frozen=True)
class Var:
    i: int
    k: int
    truth: bool

    def __str__(self):
        return f"V i={self.i} k={self.k} {_tf(self.truth)}"


@dataclass(frozen=True)
class Agent:
    i: int
    layer: int
    sign: str
    truth: bool

    def __str__(self):
        return f"AG i={self.i} j={self.layer} {self.sign} {_tf(self.truth)}"


@dataclass(frozen=True)
class TruthJob:
    kind: str
    i: int
    truth: bool

    def __str__(self):
        return f"TA {self.kind} i={self.i} {_tf(self.truth)}"


@dataclass(frozen=True)
class ClauseJob:
    j: int
    truth: bool
    copy: int = 0

    def __str__(self):
        return f"CL j={self.j} T" if self.truth else f"CL j={self.j} F {self.copy}"


@dataclass(frozen=True)
class DummyJob:
    big: bool
    ordinal: int

    def __str__(self):
        return f"DU {1002 if self.big else 1000}r {self.ordinal}"


@dataclass(frozen=True)
class Huge:
    """Gap job. ``variant`` is one of varagent, layerdec, agentagent,
    varclause, vardummy, varassign."""
    variant: str
    i: int
    j: int = 0
    k: int = 0
    sign: str = ""
    pair: str = ""

    def __str__(self):
        v = self.variant
        if v == "varagent":
            return f"HG varagent i={self.i} {self.sign}"
        if v == "layerdec":
            return f"HG layerdec i={self.i} j={self.j} {self.sign}"
        if v == "agentagent":
            return f"HG agentagent i={self.i} k={self.k}"
        if v == "varclause":
            return f"HG varclause j={self.j} i={self.i} {self.sign}"
        if v == "vardummy":
            return f"HG vardummy i={self.i} {self.sign}"
        return f"HG varassign i={self.i} {self.pair}"


HUGE_ORDER = ("varagent", "layerdec", "agentagent", "varclause", "vardummy", "varassign")
ASSIGN_PAIRS = ("ac", "bd", "ad", "bc")
# variable-job kind and constant used by each variable-assignment gap
ASSIGN_INFO = {"ac": (1, 25), "bd": (2, 98), "ad": (3, 75), "bc": (4, 52)}


def parse_symbol(text):
    t = text.split()
    kv = {p.split("=")[0]: int(p.split("=")[1]) for p in t if "=" in p}
    try:
        if t[0] == "V":
            return Var(kv["i"], kv["k"], t[3] == "T")
        if t[0] == "AG":
            return Agent(kv["i"], kv["j"], t[3], t[4] == "T")
        if t[0] == "TA":
            return TruthJob(t[1], kv["i"], t[3] == "T")
        if t[0] == "CL":
            return ClauseJob(kv["j"], t[2] == "T", 0 if t[2] == "T" else int(t[3]))
        if t[0] == "DU":
            return DummyJob(t[1] == "1002r", int(t[2]))
        if t[0] == "HG":
            v = t[1]
            if v == "varagent":
                return Huge(v, kv["i"], sign=t[3])
            if v == "layerdec":
                return Huge(v, kv["i"], j=kv["j"], sign=t[4])
            if v == "agentagent":
                return Huge(v, kv["i"], k=kv["k"])
            if v == "varclause":
                return Huge(v, kv["i"], j=kv["j"], sign=t[4])
            if v == "vardummy":
                return Huge(v, kv["i"], sign=t[3])
            if v == "varassign":
                return Huge(v, kv["i"], pair=t[3])
    except (IndexError, KeyError, ValueError):
        pass
    raise ValueError(f"unrecognised job symbol {text!r}")


# -------------------------------------------------------------------- sizes

def agent_poly(part, params, i, layer, sign):
    """x-polynomial of an agent job: (coefficients {k: c}, low part)."""
    f, g = (part.f, part.g) if sign == "+" else (part.fb, part.gb)
    coef = {k: f[k][i] for k in range(layer + 1, params.L + 1)}
    low = g[layer][i]
    if sign == "-" and layer == 1:
        low *= params.x
    return coef, low


def _poly(coef, x):
    return sum(c * x ** k for k, c in coef.items())


def job_size(sym, params, part, S=None):
    r, x, P, L, K, cL = params.r, params.x, params.P, params.L, params.K, params.cL
    if isinstance(sym, Var):
        f = part.f[L][sym.i] if sym.k <= 2 else part.fb[L][sym.i]
        t = r + P * (f * x ** L + sym.i) + cL + sym.k
        return t if sym.truth else t + 2 * r
    if isinstance(sym, Agent):
        coef, low = agent_poly(part, params, sym.i, sym.layer, sym.sign)
        t = r + P * (_poly(coef, x) + low) + 2 ** (sym.layer + 6) + (8 if sym.sign == "+" else 16)
        return t if sym.truth else t + 2 * r
    if isinstance(sym, TruthJob):
        base, off = {"a": (11, 8), "b": (11, 32), "c": (101, 16), "d": (101, 64)}[sym.kind]
        fval = base * r + 2 ** 7 * sym.i + off
        return fval + r if sym.truth else fval
    if isinstance(sym, ClauseJob):
        return (10004 if sym.truth else 10002) * r + 2 ** (L + 9) * sym.j
    if isinstance(sym, DummyJob):
        return (1002 if sym.big else 1000) * r
    if isinstance(sym, Huge):
        return K - _huge_gap(sym, params, part)
    raise TypeError(sym)


def _huge_gap(h, params, part):
    r, x, P, L, cL = params.r, params.x, params.P, params.L, params.cL
    i = h.i
    if h.variant == "varagent":
        if h.sign == "+":
            top, low = part.f[L][i], part.g[L - 1][i]
            const = 10
        else:
            top, low = part.fb[L][i], part.gb[L - 1][i] * (x if L - 1 == 1 else 1)
            const = 20
        return 4 * r + P * (2 * top * x ** L + i + low) + cL + 2 ** (L + 5) + const
    if h.variant == "layerdec":
        j = h.j
        f, g = (part.f, part.g) if h.sign == "+" else (part.fb, part.gb)
        high = 2 * sum(f[k][i] * x ** k for k in range(j + 2, L + 1))
        gj = g[j][i] * (x if (h.sign == "-" and j == 1) else 1)
        poly = high + f[j + 1][i] * x ** (j + 1) + g[j + 1][i] + gj
        return 4 * r + P * poly + 2 ** (j + 7) + 2 ** (j + 6) + (16 if h.sign == "+" else 32)
    if h.variant == "agentagent":
        k = h.k
        poly = 2 * sum(part.f[l][i] * x ** l for l in range(2, L + 1)) + part.gb[1][k] * x + part.g[1][i]
        return 4 * r + P * poly + 2 ** 8 + 24
    if h.variant == "varclause":
        top = part.f[L][i] if h.sign == "+" else part.fb[L][i]
        return 11005 * r + P * top * x ** L + 2 ** (L + 9) * h.j + P * i + cL + (1 if h.sign == "+" else 3)
    if h.variant == "vardummy":
        top = part.f[L][i] if h.sign == "+" else part.fb[L][i]
        return 1003 * r + P * top * x ** L + P * i + cL + (1 if h.sign == "+" else 3)
    if h.variant == "varassign":
        kind, const = ASSIGN_INFO[h.pair]
        top = part.f[L][i] if kind <= 2 else part.fb[L][i]
        return 115 * r + P * (top * x ** L + i) + cL + 2 ** 8 * i + const
    raise ValueError(h.variant)


# ------------------------------------------------------------------- roster

def c1_polarity(S):
    """Map variable -> True when its C1 occurrence is positive."""
    return {abs(l): l > 0 for c in S.c1 for l in c}


def job_roster(S, params):
    """All job symbols in instance order: huge jobs first, grouped by variant."""
    n, L = params.n, params.L
    pol = c1_polarity(S)
    huge = []
    for i in range(1, n + 1):
        huge += [Huge("varagent", i, sign="+"), Huge("varagent", i, sign="-")]
    for i in range(1, n + 1):
        for j in range(1, L - 1):
            huge += [Huge("layerdec", i, j=j, sign="+"), Huge("layerdec", i, j=j, sign="-")]
    for i, k in sorted(S.c2):
        huge.append(Huge("agentagent", i, k=k))
    for t, clause in enumerate(S.c1):
        j = 3 * t + 1
        for lit in clause:
            huge.append(Huge("varclause", abs(lit), j=j, sign="+" if lit > 0 else "-"))
    for i in range(1, n + 1):
        huge.append(Huge("vardummy", i, sign="-" if pol[i] else "+"))
    for i in range(1, n + 1):
        huge += [Huge("varassign", i, pair=p) for p in ASSIGN_PAIRS]
    rest = []
    for i in range(1, n + 1):
        for k in range(1, 5):
            rest += [Var(i, k, True), Var(i, k, False)]
    for i in range(1, n + 1):
        for layer in range(1, L):
            for sign in "+-":
                rest += [Agent(i, layer, sign, True), Agent(i, layer, sign, False)]
    for i in range(1, n + 1):
        for kind in "abcd":
            rest += [TruthJob(kind, i, True), TruthJob(kind, i, False)]
    for t in range(len(S.c1)):
        j = 3 * t + 1
        rest += [ClauseJob(j, True), ClauseJob(j, False, 1), ClauseJob(j, False, 2)]
    small = n + n // 3
    for o in range(1, small + 1):
        rest.append(DummyJob(False, o))
    for o in range(1, 2 * n - small + 1):
        rest.append(DummyJob(True, o))
    return huge + rest


def expected_counts(n, L):
    return {
        "variable": 8 * n,
        "agent": 4 * (L - 1) * n,
        "truth": 8 * n,
        "clause": n,
        "dummy": 2 * n,
        "huge": 2 * L * n + 5 * n,
    }


def family(sym):
    return {Var: "variable", Agent: "agent", TruthJob: "truth", ClauseJob: "clause",
            DummyJob: "dummy", Huge: "huge"}[type(sym)]


@dataclass
class PcmaxReduction:
    S: object
    params: ReductionParams
    partition: LayerPartition
    instance: SchedulingInstance


def _check_aligned(S):
    for t, clause in enumerate(S.c1):
        if sorted(abs(l) for l in clause) != [3 * t + 1, 3 * t + 2, 3 * t + 3]:
            raise ReductionError("C1 clauses must cover consecutive triples; run pad_and_reindex first")


def reduce_to_pcmax(S, delta):
    validate(S, triples=True)
    params = build_params(S, delta)
    _check_aligned(S)
    part = build_partition(S, params)
    syms = job_roster(S, params)
    sizes = [job_size(s, params, part) for s in syms]
    inst = SchedulingInstance(params.machines, sizes, syms, params.K)
    return PcmaxReduction(S, params, part, inst)


# ----------------------------------------------------------------- decoding

@dataclass
class JobClass:
    """Decoded size: ``size == rc*r + sum(P * c * x**k) + rest``.

    ``info`` holds family-specific fields (``i``, ``k``, ``truth``, ...).
    For huge jobs ``rc`` is ``10**5 - c`` and the other terms are negative.
    """
    family: str
    info: dict
    rc: int
    xc: dict
    rest: int

    def small_r(self, params):
        return sum(params.P * c * params.x ** k for k, c in self.xc.items()) + self.rest

    def small_x(self, j, params):
        return sum(params.P * c * params.x ** k for k, c in self.xc.items() if k < j) + self.rest


class DecodeError(ValueError):
    pass


def _digits(Q, x, hi, lo):
    coef = {}
    for k in range(hi, lo - 1, -1):
        coef[k], Q = divmod(Q, x ** k)
    return coef, Q


def classify_job(size, params):
    r, x, P, L, K, cL = params.r, params.x, params.P, params.L, params.K, params.cL
    if size > K // 2:
        gap = K - size
        c, s = divmod(gap, r)
        rc = 10 ** 5 - c
        if c == 4:
            const, Q = s % P, s // P
            info = None
            if const == cL + 2 ** (L + 5) + 10:
                info = {"variant": "varagent", "sign": "+"}
            elif const == cL + 2 ** (L + 5) + 20:
                info = {"variant": "varagent", "sign": "-"}
            elif const == 2 ** 8 + 24:
                info = {"variant": "agentagent"}
            else:
                for j in range(1, L - 1):
                    if const == 2 ** (j + 7) + 2 ** (j + 6) + 16:
                        info = {"variant": "layerdec", "j": j, "sign": "+"}
                    elif const == 2 ** (j + 7) + 2 ** (j + 6) + 32:
                        info = {"variant": "layerdec", "j": j, "sign": "-"}
            if info is None:
                raise DecodeError(f"no gap family with constant {const}")
            coef, low = _digits(Q, x, L, 2)
            return JobClass("huge", info, rc, {k: -v for k, v in coef.items()}, -(P * low + const))
        if c in (11005, 1003):
            const, Q = s % P, s // P
            if const not in (cL + 1, cL + 3):
                raise DecodeError(f"bad constant {const} for r-coefficient {c}")
            sign = "+" if const == cL + 1 else "-"
            top, t = divmod(Q, x ** L)
            info = {"variant": "varclause" if c == 11005 else "vardummy", "sign": sign}
            if c == 11005:
                j, off = divmod(t, 5)
                if off > 2 or j % 3 != 1:
                    raise DecodeError("clause/variable index pair not decodable")
                info.update(j=j, i=j + off)
            else:
                info["i"] = t
            return JobClass("huge", info, rc, {L: -top}, -(s - P * top * x ** L))
        if c == 115:
            pair = {25: "ac", 98: "bd", 75: "ad", 52: "bc"}.get(s % 256)
            if pair is None:
                raise DecodeError("unknown variable-assignment constant")
            T, rem = divmod(s - cL - ASSIGN_INFO[pair][1], 256)
            base = 2 ** (L - 1)
            top, t = divmod(T, base * x ** L)
            i, rem2 = divmod(t, base + 1)
            if rem or rem2:
                raise DecodeError("variable-assignment gap not decodable")
            info = {"variant": "varassign", "pair": pair, "i": i}
            return JobClass("huge", info, rc, {L: -top}, -(s - P * top * x ** L))
        raise DecodeError(f"no huge family with r-coefficient {c}")
    q, s = divmod(size, r)
    if q in (1, 3):
        truth = q == 1
        const, Q = s % P, s // P
        if cL + 1 <= const <= cL + 4:
            top, i = divmod(Q, x ** L)
            return JobClass("variable", {"k": const - cL, "i": i, "truth": truth}, q, {L: top}, s - P * top * x ** L)
        for layer in range(1, L):
            for sign, off in (("+", 8), ("-", 16)):
                if const == 2 ** (layer + 6) + off:
                    coef, low = _digits(Q, x, L, layer + 1)
                    info = {"layer": layer, "sign": sign, "truth": truth, "g": low}
                    if sign == "-" and layer == 1:
                        if low % x:
                            raise DecodeError("layer-1 negative agent low part not a multiple of x")
                        info["g"] = low // x
                    return JobClass("agent", info, q, coef, P * low + const)
        raise DecodeError(f"no variable/agent constant {const}")
    if q in (11, 12, 101, 102):
        i, off = divmod(s, 2 ** 7)
        kind = {(11, 8): "a", (11, 32): "b", (101, 16): "c", (101, 64): "d"}.get((q - (q in (12, 102)), off))
        if kind is None:
            raise DecodeError("bad truth-assignment residue")
        return JobClass("truth", {"kind": kind, "i": i, "truth": q in (12, 102)}, q, {}, s)
    if q in (10002, 10004):
        j, rem = divmod(s, 2 ** (L + 9))
        if rem:
            raise DecodeError("clause job residue")
        return JobClass("clause", {"j": j, "truth": q == 10004}, q, {}, s)
    if q in (1000, 1002) and s == 0:
        return JobClass("dummy", {"big": q == 1002}, q, {}, 0)
    raise DecodeError(f"no job family with r-coefficient {q}")


def _matches(sym, jc, part, params):
    """Does the decoded class agree with the annotated symbol?"""
    if family(sym) != jc.family:
        return False
    d = jc.info
    L = params.L
    if isinstance(sym, Var):
        f = part.f[L][sym.i] if sym.k <= 2 else part.fb[L][sym.i]
        return (d["i"], d["k"], d["truth"], jc.xc[L]) == (sym.i, sym.k, sym.truth, f)
    if isinstance(sym, Agent):
        coef, low = agent_poly(part, params, sym.i, sym.layer, sym.sign)
        return (d["layer"], d["sign"], d["truth"]) == (sym.layer, sym.sign, sym.truth) and \
            all(jc.xc.get(k, 0) == coef.get(k, 0) for k in range(2, L + 1))
    if isinstance(sym, TruthJob):
        return (d["kind"], d["i"], d["truth"]) == (sym.kind, sym.i, sym.truth)
    if isinstance(sym, ClauseJob):
        return (d["j"], d["truth"]) == (sym.j, sym.truth)
    if isinstance(sym, DummyJob):
        return d["big"] == sym.big
    if d["variant"] != sym.variant:
        return False
    if sym.variant in ("varclause", "vardummy", "varassign"):
        return d["i"] == sym.i and d.get("j", sym.j) == sym.j and \
            d.get("sign", sym.sign) == sym.sign and d.get("pair", sym.pair) == sym.pair
    return d.get("sign", sym.sign) == sym.sign and d.get("j", sym.j) == sym.j


def audit_instance(red):
    """Structural audit of a reduced instance. Returns an AuditReport whose
    checks are: counts, distinct_sizes, decode, small_xj_bound,
    small_r_bound, total."""
    params, part, inst = red.params, red.partition, red.instance
    rep = AuditReport()
    fams = Counter(family(s) for s in inst.symbols)
    exp = expected_counts(params.n, params.L)
    rep.add("counts", dict(fams) == exp, detail="" if dict(fams) == exp else f"{dict(fams)} != {exp}")

    dup = {}
    for j, (size, sym) in enumerate(zip(inst.sizes, inst.symbols), start=1):
        # interchangeable copies may share a size
        if isinstance(sym, ClauseJob) and not sym.truth:
            key = ("CL", sym.j)
        elif isinstance(sym, DummyJob):
            key = ("DU", sym.big)
        else:
            key = ("job", j)
        dup.setdefault(size, set()).add(key)
    clash = [s for s, owners in dup.items() if len(owners) > 1]
    rep.add("distinct_sizes", not clash, detail=f"{len(clash)} shared sizes" if clash else "")

    classes = []
    bad_decode = None
    for j, (size, sym) in enumerate(zip(inst.sizes, inst.symbols), start=1):
        try:
            jc = classify_job(size, params)
        except DecodeError as exc:
            jc = None
            bad_decode = bad_decode or f"job {j} {sym}: {exc}"
        if jc is not None and not _matches(sym, jc, part, params):
            bad_decode = bad_decode or f"job {j} decodes as {jc.family} {jc.info}, annotated {sym}"
        classes.append(jc)
    rep.add("decode", bad_decode is None, detail=bad_decode or "")

    P, x, r = params.P, params.x, params.r
    worst_x = None
    worst_r = None
    for j, (jc, sym) in enumerate(zip(classes, inst.symbols), start=1):
        if jc is None:
            continue
        huge = jc.family == "huge"
        if huge or jc.family in ("variable", "agent"):
            lim = Fraction(3, 4) if huge else Fraction(3, 8)
            for k in range(2, params.L + 1):
                v = jc.small_x(k, params)
                ok = (v < 0 and -v < lim * P * x ** k) if huge else (0 < v < lim * P * x ** k)
                if not ok and worst_x is None:
                    worst_x = f"job {j} {sym} small-x^{k} {v} vs {lim}*P*x^{k}"
        v = jc.small_r(params)
        ok = (v < 0 and -v < Fraction(r, 2)) if huge else (0 <= v < Fraction(r, 4))
        if not ok:
            ratio = abs(Fraction(v, r))
            if worst_r is None or ratio > worst_r[0]:
                worst_r = (ratio, f"job {j} {sym} |small-r|/r = {float(ratio):.4f}")
    rep.add("small_xj_bound", worst_x is None, detail=worst_x or "")
    rep.add("small_r_bound", worst_r is None, detail=worst_r[1] if worst_r else "")

    total = sum(inst.sizes)
    rep.add("total", total == params.machines * params.K,
            detail="" if total == params.machines * params.K else f"sum {total} != {params.machines}*K")
    return rep
