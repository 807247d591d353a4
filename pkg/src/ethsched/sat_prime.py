"""3SAT' instances: every variable occurs once in a C1 clause and once with
each polarity in the two-literal C2 clauses.

A C2 clause is stored as a pair ``(i, k)`` meaning ``(z_i v -z_k)``. Because
each variable is the first entry of exactly one pair and the second entry
of exactly one pair, the C2 implications form disjoint directed cycles and
any model gives equal values along a cycle.
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .sat_core import CnfFormula, check_assignment


@dataclass(frozen=True)
class VariableMap:
    """Links the variables of a transformed instance to an original CNF.

    ``backward[v - 1]`` is the original variable behind new variable ``v``
    or 0 for a dummy. ``forward[z]`` lists the new variables replacing
    original variable ``z`` (possibly empty when ``z`` never occurs).
    """
    num_orig: int
    backward: tuple

    @property
    def forward(self):
        fw = {z: [] for z in range(1, self.num_orig + 1)}
        for v, z in enumerate(self.backward, start=1):
            if z:
                fw[z].append(v)
        return {z: tuple(vs) for z, vs in fw.items()}

    def compose(self, parent_of):
        """Map built from ``parent_of[v - 1]``, an index into this map (0 = dummy)."""
        return VariableMap(self.num_orig, tuple(self.backward[p - 1] if p else 0 for p in parent_of))


@dataclass(frozen=True)
class SatPrimeInstance:
    n: int
    c1: tuple
    c2: tuple
    origin: VariableMap = field(compare=False)

    def __post_init__(self):
        object.__setattr__(self, "c1", tuple(tuple(c) for c in self.c1))
        object.__setattr__(self, "c2", tuple(tuple(p) for p in self.c2))

    def c1_slot(self):
        """Map variable -> (clause index, literal) of its unique C1 occurrence."""
        return {abs(l): (ci, l) for ci, c in enumerate(self.c1) for l in c}


class SatPrimeError(ValueError):
    pass


def validate(S, triples=False):
    """Raise SatPrimeError unless every variable occurs exactly three times
    in the required pattern."""
    in_c1 = [0] * (S.n + 1)
    pos = [0] * (S.n + 1)
    neg = [0] * (S.n + 1)
    for ci, clause in enumerate(S.c1):
        if triples and len(clause) != 3:
            raise SatPrimeError(f"C1 clause {ci + 1} has width {len(clause)}, expected 3")
        if not 2 <= len(clause) <= 3:
            raise SatPrimeError(f"C1 clause {ci + 1} has width {len(clause)}")
        for lit in clause:
            if lit == 0 or abs(lit) > S.n:
                raise SatPrimeError(f"literal {lit} out of range")
            in_c1[abs(lit)] += 1
    for i, k in S.c2:
        if not (1 <= i <= S.n and 1 <= k <= S.n):
            raise SatPrimeError(f"C2 pair ({i}, {k}) out of range")
        pos[i] += 1
        neg[k] += 1
    for v in range(1, S.n + 1):
        if (in_c1[v], pos[v], neg[v]) != (1, 1, 1):
            raise SatPrimeError(
                f"variable {v} occurs {in_c1[v]}x in C1, {pos[v]}x positive and {neg[v]}x negative in C2")
    if len(S.origin.backward) != S.n:
        raise SatPrimeError("variable map length does not match n")


def _cycle_pairs(vs):
    if len(vs) == 1:
        return [(vs[0], vs[0])]
    return [(vs[t], vs[(t + 1) % len(vs)]) for t in range(len(vs))]


def to_sat_prime(F):
    """Occurrence-splitting transform of a CNF with clause width <= 3.

    Variable ``3t + s + 1`` is slot ``s`` of clause ``t``, so C1 clause ``t``
    always covers three consecutive indices. A variable with ``d`` occurrences
    becomes ``d`` new variables tied by a C2 cycle (a single occurrence gets
    the pair ``(z, z)``). Short clauses are filled with dummy literals that
    a gadget forces to false: the dummies share a C2 cycle with three fresh
    variables whose C1 clause is all-negative.
    """
    backward = []
    c1 = []
    orig_occ = {z: [] for z in range(1, F.num_vars + 1)}
    gadgets = []
    for clause in F.clauses:
        lits = []
        pads = []
        for lit in clause:
            v = len(backward) + 1
            backward.append(abs(lit))
            orig_occ[abs(lit)].append(v)
            lits.append(v if lit > 0 else -v)
        for _ in range(3 - len(clause)):
            v = len(backward) + 1
            backward.append(0)
            pads.append(v)
            lits.append(v)
        c1.append(tuple(lits))
        if pads:
            gadgets.append(pads)
    c2 = []
    for z in range(1, F.num_vars + 1):
        if orig_occ[z]:
            c2.extend(_cycle_pairs(orig_occ[z]))
    for pads in gadgets:
        base = len(backward)
        forcing = [base + 1, base + 2, base + 3]
        backward.extend([0, 0, 0])
        c1.append(tuple(-v for v in forcing))
        c2.extend(_cycle_pairs(pads + forcing))
    S = SatPrimeInstance(len(backward), tuple(c1), tuple(c2), VariableMap(F.num_vars, tuple(backward)))
    validate(S, triples=True)
    return S


def random_sat_prime(n, seed, single_cycle=False):
    """Seeded random 3SAT' instance on ``n`` variables (``3 | n``).

    C1 takes consecutive triples with random signs, C2 follows the cycles of
    a random permutation. ``single_cycle`` ties all variables into one cycle,
    which makes unsatisfiable instances common.
    """
    if n < 3 or n % 3:
        raise SatPrimeError("n must be a positive multiple of 3")
    rng = random.Random(seed)
    c1 = [tuple(v if rng.random() < 0.5 else -v for v in range(t, t + 3)) for t in range(1, n + 1, 3)]
    order = list(range(1, n + 1))
    rng.shuffle(order)
    if single_cycle:
        c2 = _cycle_pairs(order)
    else:
        succ = dict(zip(range(1, n + 1), order))
        c2 = [(v, succ[v]) for v in range(1, n + 1)]
    return SatPrimeInstance(n, tuple(c1), tuple(c2), VariableMap(n, tuple(range(1, n + 1))))


def parse_delta(text):
    """Accept ``1/k`` (or a Fraction) and return ``Fraction(1, k)`` with k >= 2."""
    d = Fraction(text) if not isinstance(text, Fraction) else text
    if d <= 0 or d.numerator != 1 or d.denominator < 2:
        raise ValueError(f"delta must be 1/k with integer k >= 2, got {text}")
    return d


def integer_root(n, k):
    """Exact integer k-th root of n, or None."""
    if n < 0:
        return None
    lo, hi = 0, 1
    while hi ** k <= n:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if mid ** k < n:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo ** k == n else None


def padded_size(n, delta):
    """Smallest n' >= n with 3 | n' and n'**delta integral."""
    L = parse_delta(delta).denominator
    s = 3
    while s ** L < n:
        s += 3
    return s ** L


def _add_dummy_triple(c1, c2, backward):
    a = len(backward) + 1
    backward.extend([0, 0, 0])
    c1.append((a, a + 1, a + 2))
    c2.extend([(a, a + 1), (a + 1, a + 2), (a + 2, a)])


def pad_and_reindex(S, delta):
    """Renumber so C1 clause ``t`` covers ``3t+1..3t+3`` and pad with dummy
    triples until ``n'`` is divisible by 3 and ``n'**delta`` is integral."""
    validate(S, triples=True)
    new_of = {}
    parent = []
    c1 = []
    for clause in S.c1:
        lits = []
        for lit in clause:
            v = len(parent) + 1
            new_of[abs(lit)] = v
            parent.append(abs(lit))
            lits.append(v if lit > 0 else -v)
        c1.append(tuple(lits))
    c2 = [(new_of[i], new_of[k]) for i, k in S.c2]
    target = padded_size(S.n, delta)
    while len(parent) < target:
        _add_dummy_triple(c1, c2, parent)
    out = SatPrimeInstance(len(parent), tuple(c1), tuple(c2), S.origin.compose(parent))
    validate(out, triples=True)
    return out


def triangulate_for_pm(S, m):
    """Split every variable into a triangle ``3k+1, 3k+2, 3k+3``.

    The C1 occurrence of old variable ``k+1`` moves to ``3k+1``, its positive
    C2 occurrence to ``3k+2`` and its negative one to ``3k+3``. Old C2 pairs
    become two-literal C1 clauses; the new C2 is exactly the triangles
    ``(3k+1, 3k+2), (3k+2, 3k+3), (3k+3, 3k+1)``. Dummy groups (a positive C1
    triple plus a triangle) are appended until the group count is a positive
    multiple of ``m``.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    validate(S)
    parent = []
    for v in range(1, S.n + 1):
        parent.extend([v, v, v])
    c1 = []
    for clause in S.c1:
        c1.append(tuple((3 * (abs(l) - 1) + 1) * (1 if l > 0 else -1) for l in clause))
    for i, k in S.c2:
        c1.append((3 * (i - 1) + 2, -(3 * (k - 1) + 3)))
    groups = S.n
    while groups == 0 or groups % m:
        base = 3 * groups
        c1.append((base + 1, base + 2, base + 3))
        parent.extend([0, 0, 0])
        groups += 1
    c2 = []
    for g in range(groups):
        a = 3 * g
        c2.extend([(a + 1, a + 2), (a + 2, a + 3), (a + 3, a + 1)])
    out = SatPrimeInstance(3 * groups, tuple(c1), tuple(c2), S.origin.compose(parent))
    validate(out)
    return out


def to_cnf(S):
    """Plain CNF view. A self pair ``(z, z)`` is a tautology and is dropped."""
    clauses = list(S.c1)
    clauses.extend((i, -k) for i, k in S.c2 if i != k)
    return CnfFormula(S.n, tuple(clauses))


def check_sat_prime(S, assignment):
    """Return a list of violation strings (empty when ``assignment`` is a model
    in which every C2 clause has exactly one true literal)."""
    bad = []
    for ci, clause in enumerate(S.c1):
        if not any(assignment[abs(l) - 1] == (l > 0) for l in clause):
            bad.append(f"C1 clause {ci + 1} unsatisfied")
    for i, k in S.c2:
        a, b = assignment[i - 1], not assignment[k - 1]
        if i != k and a == b:
            bad.append(f"C2 clause ({i}, {k}) has {int(a) + int(b)} true literals")
    return bad


def cycle_classes(S):
    """Union-find over C2 pairs; returns list of variable classes sorted by minimum."""
    parent = list(range(S.n + 1))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for i, k in S.c2:
        ri, rk = find(i), find(k)
        if ri != rk:
            parent[max(ri, rk)] = min(ri, rk)
    classes = {}
    for v in range(1, S.n + 1):
        classes.setdefault(find(v), []).append(v)
    return [classes[r] for r in sorted(classes)]


def solve_sat_prime(S, limit=22):
    """Reference solver: collapse C2 cycles, then enumerate class values
    True-first. Returns a model or None."""
    classes = cycle_classes(S)
    if len(classes) > limit:
        raise ValueError(f"{len(classes)} cycle classes exceed the limit {limit}")
    cls_of = {}
    for idx, cl in enumerate(classes):
        for v in cl:
            cls_of[v] = idx
    clauses = [[(cls_of[abs(l)], l > 0) for l in c] for c in S.c1]
    k = len(classes)
    for code in range((1 << k) - 1, -1, -1):
        vals = [bool(code >> (k - 1 - c) & 1) for c in range(k)]
        if all(any(vals[c] == s for c, s in cl) for cl in clauses):
            return tuple(vals[cls_of[v]] for v in range(1, S.n + 1))
    return None


def lift_assignment(S, assignment):
    """Map a model of ``S`` back to the original CNF variables.

    An original variable takes the value of its first replacement; one that
    never occurred is set to False.
    """
    out = []
    fw = S.origin.forward
    for z in range(1, S.origin.num_orig + 1):
        vs = fw[z]
        out.append(bool(assignment[vs[0] - 1]) if vs else False)
    return tuple(out)


def push_assignment(S, orig_assignment):
    """Model of ``S`` induced by a model of the original CNF.

    Dummy cycle classes that share C1 clauses are solved together, trying
    True before False, so padding triples come out true and forcing gadgets
    false.
    """
    values = [None] * S.n
    for v, z in enumerate(S.origin.backward, start=1):
        if z:
            values[v - 1] = bool(orig_assignment[z - 1])
    open_classes = [cl for cl in cycle_classes(S) if values[cl[0] - 1] is None]
    cls_of = {v: idx for idx, cl in enumerate(open_classes) for v in cl}
    # link open classes that meet in a C1 clause
    link = list(range(len(open_classes)))

    def root(a):
        while link[a] != a:
            a = link[a]
        return a

    touching = {}
    for clause in S.c1:
        ids = sorted({cls_of[abs(l)] for l in clause if abs(l) in cls_of})
        for a in ids[1:]:
            link[root(a)] = root(ids[0])
        for a in ids:
            touching.setdefault(a, []).append(clause)
    comps = {}
    for idx in range(len(open_classes)):
        comps.setdefault(root(idx), []).append(idx)
    for comp in comps.values():
        if len(comp) > 20:
            raise SatPrimeError(f"dummy component of {len(comp)} classes is too large")
        clauses = {c for idx in comp for c in touching.get(idx, [])}
        k = len(comp)
        for code in range((1 << k) - 1, -1, -1):
            for pos, idx in enumerate(comp):
                for v in open_classes[idx]:
                    values[v - 1] = bool(code >> (k - 1 - pos) & 1)
            if all(any(values[abs(l) - 1] == (l > 0) for l in c) for c in clauses):
                break
    return tuple(bool(v) for v in values)


def write_sat_prime(S):
    lines = [f"p satprime {S.n}", f"c orig-vars {S.origin.num_orig}"]
    for clause in S.c1:
        lines.append("c1 " + " ".join(str(l) for l in clause))
    for i, k in S.c2:
        lines.append(f"c2 {i} {k}")
    for v, z in enumerate(S.origin.backward, start=1):
        lines.append(f"map {v} {z}")
    return "\n".join(lines) + "\n"


def parse_sat_prime(text):
    n = None
    num_orig = None
    c1, c2 = [], []
    backward = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if not parts:
            continue
        try:
            if parts[0] == "p":
                if len(parts) != 3 or parts[1] != "satprime":
                    raise SatPrimeError(f"line {lineno}: malformed header")
                n = int(parts[2])
            elif parts[0] == "c" and len(parts) == 3 and parts[1] == "orig-vars":
                num_orig = int(parts[2])
            elif parts[0] == "c":
                continue
            elif parts[0] == "c1":
                c1.append(tuple(int(t) for t in parts[1:]))
            elif parts[0] == "c2":
                if len(parts) != 3:
                    raise SatPrimeError(f"line {lineno}: c2 needs two indices")
                c2.append((int(parts[1]), int(parts[2])))
            elif parts[0] == "map":
                backward[int(parts[1])] = int(parts[2])
            else:
                raise SatPrimeError(f"line {lineno}: unknown record {parts[0]!r}")
        except ValueError as exc:
            if isinstance(exc, SatPrimeError):
                raise
            raise SatPrimeError(f"line {lineno}: {exc}") from None
    if n is None:
        raise SatPrimeError("missing header")
    back = tuple(backward.get(v, 0) for v in range(1, n + 1))
    if num_orig is None:
        num_orig = max(back, default=0)
    S = SatPrimeInstance(n, tuple(c1), tuple(c2), VariableMap(num_orig, back))
    validate(S)
    return S
