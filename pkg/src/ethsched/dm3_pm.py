"""Triangulated 3SAT' -> exact-cover 3DM' -> Pm||Cmax with m+1 machines.

Jobs are written in base ``alpha`` (a power of two). Every element owns one
digit position ("bit") and a small weight ``g``; a match job puts ``g`` of
each of its elements on their bits and a cover job tops one bit up to
``6m^3``. Machines 1..m each collect one block of the cover, machine m+1
holds the single huge job plus the unused match jobs.
"""

from collections import Counter
from dataclasses import dataclass

from .instance import AuditReport, Schedule, SchedulingInstance, verify_schedule_loads
from .sat_prime import SatPrimeError, validate


class PmError(ValueError):
    pass


# --------------------------------------------------------------------- 3DM'

@dataclass
class Dm3Instance:
    W: list
    X: list
    Y: list
    matches: list   # (kind, elements) in id order, ids are 1-based

    def match(self, mid):
        return self.matches[mid - 1]

    def ids(self, kind):
        return [mid for mid, (k, _) in enumerate(self.matches, start=1) if k == kind]

    @property
    def elements(self):
        return self.W + self.X + self.Y


def zeta(i):
    """Cyclic successor inside the triangle block containing ``i``."""
    base = 3 * ((i - 1) // 3)
    return base + (i - base) % 3 + 1


def check_triangulated(S):
    validate(S)
    groups = S.n // 3
    want = []
    for k in range(groups):
        a = 3 * k
        want += [(a + 1, a + 2), (a + 2, a + 3), (a + 3, a + 1)]
    if S.n % 3 or sorted(S.c2) != sorted(want):
        raise SatPrimeError("C2 must consist of the triangles (3k+1,3k+2),(3k+2,3k+3),(3k+3,3k+1)")


def sat_prime_to_3dm(S):
    check_triangulated(S)
    n = S.n
    W = []
    for i in range(1, n + 1):
        W += [f"w{i}", f"wb{i}"]
    X = [f"s{j}" for j in range(1, len(S.c1) + 1)] + [f"a{i}" for i in range(1, n + 1)]
    Y = [f"b{i}" for i in range(1, n + 1)]
    matches = []
    for i in range(1, n + 1):
        matches += [("T1", (f"w{i}",)), ("T1", (f"wb{i}",))]
    for j, clause in enumerate(S.c1, start=1):
        for lit in clause:
            w = f"w{lit}" if lit > 0 else f"wb{-lit}"
            matches.append(("T2", (w, f"s{j}")))
    for i in range(1, n + 1):
        matches.append(("T3", (f"w{i}", f"a{i}", f"b{i}")))
        matches.append(("T3", (f"wb{i}", f"a{i}", f"b{zeta(i)}")))
    return Dm3Instance(W, X, Y, matches)


def is_exact_cover(D, cover):
    seen = Counter(e for mid in cover for e in D.match(mid)[1])
    return len(set(cover)) == len(cover) and set(seen) == set(D.elements) and set(seen.values()) == {1}


def assignment_to_cover(D, S, A):
    """Exact cover from a model: true groups take the w-bar triples, false
    groups the w triples; each C1 clause takes the T2 match of its
    smallest-index true literal; T1 singletons cover what is left."""
    from .sat_prime import check_sat_prime
    bad = check_sat_prime(S, A)
    if bad:
        raise PmError("assignment is not a model: " + bad[0])
    id_of = {m: mid for mid, m in enumerate(D.matches, start=1)}
    cover = []
    used = set()
    for i in range(1, S.n + 1):
        if A[i - 1]:
            m = ("T3", (f"wb{i}", f"a{i}", f"b{zeta(i)}"))
        else:
            m = ("T3", (f"w{i}", f"a{i}", f"b{i}"))
        cover.append(id_of[m])
        used.update(m[1])
    for j, clause in enumerate(S.c1, start=1):
        lit = min((l for l in clause if bool(A[abs(l) - 1]) == (l > 0)), key=abs)
        w = f"w{lit}" if lit > 0 else f"wb{-lit}"
        cover.append(id_of[("T2", (w, f"s{j}"))])
        used.add(w)
    for w in D.W:
        if w not in used:
            cover.append(id_of[("T1", (w,))])
    cover.sort()
    if not is_exact_cover(D, cover):
        raise PmError("internal error: constructed cover is not exact")
    return cover


def cover_to_assignment(D, cover):
    if not is_exact_cover(D, cover):
        raise PmError("not an exact cover")
    n = len(D.Y)
    bar = set()
    for mid in cover:
        kind, els = D.match(mid)
        if kind == "T3" and els[0].startswith("wb"):
            bar.add(int(els[0][2:]))
    A = tuple(i in bar for i in range(1, n + 1))
    for k in range(n // 3):
        if len({A[3 * k], A[3 * k + 1], A[3 * k + 2]}) != 1:
            raise PmError(f"triangle {k + 1} mixes w and w-bar triples")
    return A


MATCH_LIMIT = 90


def brute_force_exact_cover(D):
    """Backtracking over the most constrained uncovered element. Returns the
    first exact cover found (sorted match ids) or None."""
    if len(D.matches) > MATCH_LIMIT:
        raise ValueError(f"brute force limited to {MATCH_LIMIT} matches, got {len(D.matches)}")
    by_elem = {e: [] for e in D.elements}
    for mid, (_, els) in enumerate(D.matches, start=1):
        for e in els:
            by_elem[e].append(mid)
    covered = set()
    chosen = []

    def solve():
        if len(covered) == len(by_elem):
            return True
        best = None
        for e, ms in by_elem.items():
            if e in covered:
                continue
            opts = [mid for mid in ms if not covered.intersection(D.match(mid)[1])]
            if best is None or len(opts) < len(best[1]):
                best = (e, opts)
                if not opts:
                    return False
        for mid in best[1]:
            els = D.match(mid)[1]
            covered.update(els)
            chosen.append(mid)
            if solve():
                return True
            chosen.pop()
            covered.difference_update(els)
        return False

    return sorted(chosen) if solve() else None


def write_3dm(D):
    out = ["W: " + " ".join(D.W), "X: " + " ".join(D.X), "Y: " + " ".join(D.Y)]
    for kind in ("T1", "T2", "T3"):
        out.append(f"{kind}:")
        for mid in D.ids(kind):
            out.append(f"{mid} " + " ".join(D.match(mid)[1]))
    return "\n".join(out) + "\n"


def parse_3dm(text):
    sets = {}
    matches = {}
    section = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        head, colon, rest = line.partition(":")
        if colon and head in ("W", "X", "Y", "T1", "T2", "T3"):
            section = head
            if head in ("W", "X", "Y"):
                sets[head] = rest.split()
            continue
        if section not in ("T1", "T2", "T3"):
            raise PmError(f"unexpected line {line!r}")
        parts = line.split()
        matches[int(parts[0])] = (section, tuple(parts[1:]))
    if sorted(matches) != list(range(1, len(matches) + 1)):
        raise PmError("match ids must be 1..N")
    return Dm3Instance(sets.get("W", []), sets.get("X", []), sets.get("Y", []),
                       [matches[i] for i in range(1, len(matches) + 1)])


def write_cover(cover):
    return "".join(f"{mid}\n" for mid in cover)


def parse_cover(text):
    return [int(t) for t in text.split()]


# ----------------------------------------------------------- bit allocation

@dataclass
class BitAllocation:
    m: int
    q: int
    f: dict      # element -> bit
    g: dict      # element -> weight
    color: dict  # s-element -> color (1-based)
    tau: int

    @property
    def B(self):
        return 12 * self.q + self.tau

    def class_sizes(self):
        return Counter(self.color.values())

    def element_at(self, bit, weight):
        """Inverse of (f, g); None when no element matches."""
        return self._inverse.get((bit, weight))

    def __post_init__(self):
        self._inverse = {(self.f[e], self.g[e]): e for e in self.f}


def _block(i, q):
    return (i - 1) // (3 * q)


def allocate_bits(D, m):
    n = len(D.Y)
    if n % (3 * m):
        raise PmError(f"{n // 3} groups are not divisible by m={m}")
    q = n // (3 * m)
    f, g = {}, {}
    for i in range(1, n + 1):
        k = _block(i, q)
        pos = i - 3 * k * q
        for name, off in (("b", 0), ("a", 3), ("w", 6), ("wb", 9)):
            f[f"{name}{i}"] = off * q + pos
            g[f"{name}{i}"] = m + k
    blocks = {}
    for kind, els in D.matches:
        if kind == "T2":
            w, s = els
            blocks.setdefault(s, set()).add(_block(int(w.lstrip("wb")), q))
    color = {}
    members = {}
    for s in [x for x in D.X if x.startswith("s")]:
        mine = blocks.get(s, set())
        c = 1
        while True:
            cls = members.get(c, [])
            if len(cls) < m and not any(blocks.get(o, set()) & mine for o in cls):
                break
            c += 1
        members.setdefault(c, []).append(s)
        color[s] = c
        f[s] = 12 * q + c
        g[s] = m + len(members[c]) - 1
    return BitAllocation(m, q, f, g, color, max(members, default=0))


def check_coloring(D, alloc):
    """Problems with the coloring: shared W-blocks inside a class or class size > m."""
    q, m = alloc.q, alloc.m
    blocks = {}
    for kind, els in D.matches:
        if kind == "T2":
            blocks.setdefault(els[1], set()).add(_block(int(els[0].lstrip("wb")), q))
    bad = []
    by_color = {}
    for s, c in alloc.color.items():
        by_color.setdefault(c, []).append(s)
    for c, ss in by_color.items():
        if len(ss) > m:
            bad.append(f"color {c} has {len(ss)} members")
        for x in range(len(ss)):
            for y in range(x + 1, len(ss)):
                if blocks.get(ss[x], set()) & blocks.get(ss[y], set()):
                    bad.append(f"{ss[x]} and {ss[y]} share a block but have color {c}")
    return bad


# ----------------------------------------------------------------- Pm jobs

def digit_decompose(size, alpha, B):
    if size < 0 or size >= alpha ** (B + 1):
        raise PmError(f"size out of range for {B + 1} base-{alpha} digits")
    out = []
    for _ in range(B + 1):
        size, d = divmod(size, alpha)
        out.append(d)
    return out


@dataclass
class PmReduction:
    D: Dm3Instance
    alloc: BitAllocation
    alpha: int
    T: int
    instance: SchedulingInstance
    bit_sums: list

    @property
    def m(self):
        return self.alloc.m


def _weighted(pairs, alpha):
    return sum(c * alpha ** b for b, c in pairs)


def reduce_to_pm(D, m):
    alloc = allocate_bits(D, m)
    B = alloc.B
    big = 6 * m ** 3
    syms = []
    digit_rows = []  # list of {bit: coefficient}
    for mid, (_, els) in enumerate(D.matches, start=1):
        row = Counter()
        for e in els:
            row[alloc.f[e]] += alloc.g[e]
        syms.append(f"MJ {mid}")
        digit_rows.append(row)
    for e in D.elements:
        syms.append(f"CJ {e}")
        digit_rows.append({alloc.f[e]: big - alloc.g[e]})
    sizes_by_color = alloc.class_sizes()
    for t in range(1, alloc.tau + 1):
        for o in range(1, m - sizes_by_color[t] + 1):
            syms.append(f"DJ {t} {o}")
            digit_rows.append({12 * alloc.q + t: big})
    bit_sums = [0] * (B + 1)
    for row in digit_rows:
        for b, c in row.items():
            bit_sums[b] += c
    need = max(24 * m ** 4, max(bit_sums))
    alpha = 2
    while alpha <= need:
        alpha *= 2
    T = big * sum(alpha ** i for i in range(1, B + 1))
    sizes = [_weighted(row.items(), alpha) for row in digit_rows]
    huge = (m + 1) * T - sum(sizes)
    if huge <= 0:
        raise PmError("huge job would be non-positive")
    inst = SchedulingInstance(m + 1, [huge] + sizes, ["HG"] + syms, T)
    return PmReduction(D, alloc, alpha, T, inst, bit_sums)


def no_carry_ok(red):
    return max(red.bit_sums) < red.alpha


def coefficient_bands(m):
    big = 6 * m ** 3
    return {"match": (m, 2 * m - 1), "cover": (big - 2 * m + 1, big - m), "dummy": (big, big)}


def bands_disjoint(m):
    spans = sorted(coefficient_bands(m).values())
    return all(a[1] < b[0] for a, b in zip(spans, spans[1:]))


def forward_schedule_pm(red, cover):
    D, alloc, inst = red.D, red.alloc, red.instance
    if not is_exact_cover(D, cover):
        raise PmError("not an exact cover")
    m, q = alloc.m, alloc.q
    job = {s: j for j, s in enumerate(inst.symbols, start=1)}
    machine_of = [0] * inst.num_jobs
    machine_of[job["HG"] - 1] = m + 1
    colors_on = {k: set() for k in range(1, m + 1)}
    in_cover = set(cover)
    for mid in range(1, len(D.matches) + 1):
        if mid not in in_cover:
            machine_of[job[f"MJ {mid}"] - 1] = m + 1
            continue
        els = D.match(mid)[1]
        w = els[0]
        k = _block(int(w.lstrip("wb")), q) + 1
        machine_of[job[f"MJ {mid}"] - 1] = k
        for e in els:
            machine_of[job[f"CJ {e}"] - 1] = k
            if e in alloc.color:
                colors_on[k].add(alloc.color[e])
    sizes_by_color = alloc.class_sizes()
    for t in range(1, alloc.tau + 1):
        lacking = [k for k in range(1, m + 1) if t not in colors_on[k]]
        if len(lacking) != m - sizes_by_color[t]:
            raise PmError(f"color {t} appears twice on one machine")
        for o, k in enumerate(lacking, start=1):
            machine_of[job[f"DJ {t} {o}"] - 1] = k
    sched = Schedule(m + 1, machine_of)
    rep = verify_schedule_loads(inst, sched)
    if not rep.ok:
        raise PmError(f"forward schedule loads off: {rep.deviations}")
    return sched


class PmExtractionError(ValueError):
    def __init__(self, check, machine=None, detail=""):
        self.check, self.machine, self.detail = check, machine, detail
        super().__init__(f"{check} failed" + (f" on machine {machine}" if machine else "") + f": {detail}")


def _classify_digits(digits, m):
    nz = {b: c for b, c in enumerate(digits) if c}
    big = 6 * m ** 3
    bands = coefficient_bands(m)
    if len(nz) == 1:
        (b, c), = nz.items()
        if c == big:
            return "dummy", nz
        lo, hi = bands["cover"]
        if lo <= c <= hi:
            return "cover", nz
    lo, hi = bands["match"]
    if 1 <= len(nz) <= 3 and all(lo <= c <= hi for c in nz.values()):
        return "match", nz
    return "other", nz


def extract_cover_pm(red, sched, check_loads=True):
    """Digit audit of a Pm schedule; returns the exact cover it encodes."""
    inst, alloc, alpha = red.instance, red.alloc, red.alpha
    m, B, big = alloc.m, alloc.B, 6 * alloc.m ** 3
    if check_loads:
        lr = verify_schedule_loads(inst, sched)
        if not lr.ok:
            mm = next(iter(lr.deviations))
            raise PmExtractionError("loads", mm, "load differs from T")
    if not no_carry_ok(red):
        raise PmExtractionError("no_carry", detail="per-bit sums reach alpha")
    decoded = {}
    for j in range(1, inst.num_jobs + 1):
        try:
            decoded[j] = _classify_digits(digit_decompose(inst.size(j), alpha, B), m)
        except PmError:
            raise PmExtractionError("digit_range", sched.machine_of[j - 1], f"job {j} exceeds {B + 1} digits") from None
    others = [j for j, (kind, _) in decoded.items() if kind == "other"]
    if len(others) != 1:
        raise PmExtractionError("huge_unique", detail=f"{len(others)} jobs outside the coefficient bands")
    huge_machine = sched.machine_of[others[0] - 1]
    cover = []
    for k, jobs in sorted(sched.jobs_on().items()):
        if k == huge_machine:
            continue
        per_bit = {b: [] for b in range(0, B + 1)}
        for j in jobs:
            kind, nz = decoded[j]
            for b, c in nz.items():
                per_bit[b].append((kind, c, j))
        for b, items in per_bit.items():
            total = sum(c for _, c, _ in items)
            want = big if 1 <= b <= B else 0
            if total != want:
                raise PmExtractionError("digit_sum", k, f"bit {b} sums to {total}, expected {want}")
            if not items:
                continue
            kinds = sorted(kind for kind, _, _ in items)
            if kinds == ["dummy"]:
                continue
            if kinds != ["cover", "match"]:
                raise PmExtractionError("bit_composition", k, f"bit {b} holds {kinds}")
            cover_c = next(c for kind, c, _ in items if kind == "cover")
            match_c = next(c for kind, c, _ in items if kind == "match")
            if alloc.element_at(b, big - cover_c) is None or match_c != big - cover_c:
                raise PmExtractionError("bit_composition", k, f"bit {b} cover/match weights disagree")
        for j in jobs:
            if decoded[j][0] == "match":
                sym = inst.symbol(j)
                mid = int(sym.split()[1])
                els = red.D.match(mid)[1]
                got = sorted(alloc.element_at(b, c) or "?" for b, c in decoded[j][1].items())
                if got != sorted(els):
                    raise PmExtractionError("match_provenance", k, f"{sym} decodes to {got}")
                cover.append(mid)
    cover.sort()
    if not is_exact_cover(red.D, cover):
        raise PmExtractionError("exact_cover", detail="selected matches do not form an exact cover")
    return cover


def pm_audit_report(red, sched):
    rep = AuditReport()
    rep.add("no_carry", no_carry_ok(red), detail=f"max bit sum {max(red.bit_sums)} alpha {red.alpha}")
    rep.add("bands_disjoint", bands_disjoint(red.m))
    try:
        extract_cover_pm(red, sched)
        rep.add("extract", True)
    except PmExtractionError as exc:
        rep.add(exc.check, False, exc.machine, exc.detail)
    return rep
