"""CNF formulas: DIMACS I/O, assignment checking, a brute-force oracle and
a seeded random generator.

Literals are signed 1-based integers. A formula keeps every clause as a
tuple of at most three distinct literals.
"""

import random
from dataclasses import dataclass


class CnfError(ValueError):
    """Raised for malformed DIMACS input or an invalid formula."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: tuple

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in self.clauses))
        for idx, clause in enumerate(self.clauses):
            _check_clause(clause, self.num_vars, None, idx)

    @property
    def num_clauses(self):
        return len(self.clauses)

    def occurrences(self):
        """Map variable -> list of (clause index, slot, sign) in clause order."""
        occ = {v: [] for v in range(1, self.num_vars + 1)}
        for ci, clause in enumerate(self.clauses):
            for slot, lit in enumerate(clause):
                occ[abs(lit)].append((ci, slot, lit > 0))
        return occ


def _check_clause(clause, num_vars, line, idx):
    if not clause:
        raise CnfError(f"clause {idx + 1} is empty", line)
    if len(clause) > 3:
        raise CnfError(f"clause {idx + 1} has width {len(clause)} > 3", line)
    seen = set()
    for lit in clause:
        if lit == 0 or abs(lit) > num_vars:
            raise CnfError(f"literal {lit} out of range 1..{num_vars}", line)
        if -lit in seen:
            raise CnfError(f"clause {idx + 1} is a tautology", line)
        if lit in seen:
            raise CnfError(f"clause {idx + 1} repeats literal {lit}", line)
        seen.add(lit)


def make_formula(num_vars, clauses):
    """Build a formula, dropping repeated literals inside a clause."""
    cleaned = []
    for clause in clauses:
        out = []
        for lit in clause:
            if lit not in out:
                out.append(lit)
        cleaned.append(tuple(out))
    return CnfFormula(num_vars, tuple(cleaned))


def parse_dimacs(text):
    """Parse DIMACS CNF text.

    Comment lines (``c ...``) and ``%`` end markers are skipped. Clauses may
    span several lines; each ends with ``0``. Repeated literals inside a
    clause are collapsed, tautologies are rejected.
    """
    num_vars = num_clauses = None
    clauses = []
    current = []
    start_line = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            parts = line.split()
            if num_vars is not None:
                raise CnfError("duplicate header", lineno)
            if len(parts) != 4 or parts[1] != "cnf":
                raise CnfError(f"malformed header {line!r}", lineno)
            try:
                num_vars, num_clauses = int(parts[2]), int(parts[3])
            except ValueError:
                raise CnfError(f"malformed header {line!r}", lineno) from None
            if num_vars < 0 or num_clauses < 0:
                raise CnfError("negative counts in header", lineno)
            continue
        if num_vars is None:
            raise CnfError("clause before header", lineno)
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise CnfError(f"bad token {tok!r}", lineno) from None
            if lit == 0:
                clause = []
                for x in current:
                    if x not in clause:
                        clause.append(x)
                _check_clause(clause, num_vars, start_line, len(clauses))
                clauses.append(tuple(clause))
                current = []
                start_line = None
                continue
            if abs(lit) > num_vars:
                raise CnfError(f"literal {lit} out of range 1..{num_vars}", lineno)
            if start_line is None:
                start_line = lineno
            current.append(lit)
    if num_vars is None:
        raise CnfError("missing header")
    if current:
        raise CnfError("last clause is not terminated by 0", start_line)
    if len(clauses) != num_clauses:
        raise CnfError(f"header declares {num_clauses} clauses, found {len(clauses)}")
    return CnfFormula(num_vars, tuple(clauses))


def write_dimacs(formula):
    lines = [f"p cnf {formula.num_vars} {formula.num_clauses}"]
    for clause in formula.clauses:
        lines.append(" ".join(str(l) for l in clause) + " 0")
    return "\n".join(lines) + "\n"


def check_assignment(formula, assignment):
    """Return per-clause counts of true literals.

    ``assignment`` is a sequence of booleans indexed from 0 (variable 1 is
    ``assignment[0]``).
    """
    if len(assignment) != formula.num_vars:
        raise ValueError(f"assignment has {len(assignment)} values, formula has {formula.num_vars} variables")
    counts = []
    for clause in formula.clauses:
        counts.append(sum(1 for lit in clause if assignment[abs(lit) - 1] == (lit > 0)))
    return counts


def satisfies(formula, assignment):
    return all(c > 0 for c in check_assignment(formula, assignment))


BRUTE_FORCE_LIMIT = 26


def brute_force_sat(formula):
    """Exhaustive search, returns the lexicographically first model or None.

    The order puts True before False for variable 1, then variable 2, and so
    on, so for ``(1 v -2) & (2)`` the answer is ``(True, True)``.
    """
    n = formula.num_vars
    if n > BRUTE_FORCE_LIMIT:
        raise ValueError(f"brute force limited to {BRUTE_FORCE_LIMIT} variables, got {n}")
    # each clause as (positive mask, negative mask) over bit (n - v)
    masks = []
    for clause in formula.clauses:
        pos = neg = 0
        for lit in clause:
            bit = 1 << (n - abs(lit))
            if lit > 0:
                pos |= bit
            else:
                neg |= bit
        masks.append((pos, neg))
    full = (1 << n) - 1
    # counting down from all-ones visits True-first lexicographic order
    for code in range(full, -1, -1):
        inv = full ^ code
        if all((code & p) or (inv & q) for p, q in masks):
            return tuple(bool(code >> (n - v) & 1) for v in range(1, n + 1))
    return None


def random_3sat(num_vars, num_clauses, seed):
    """Uniform random 3-CNF, three distinct variables per clause."""
    if num_vars < 3:
        raise ValueError("need at least 3 variables")
    rng = random.Random(seed)
    clauses = []
    for _ in range(num_clauses):
        vs = rng.sample(range(1, num_vars + 1), 3)
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in vs))
    return CnfFormula(num_vars, tuple(clauses))


def format_assignment(assignment):
    lits = [str(i) if val else str(-i) for i, val in enumerate(assignment, start=1)]
    return "v " + " ".join(lits + ["0"]) + "\n"


def parse_assignment(text, num_vars=None):
    """Parse ``v <lit> ... 0`` lines. Missing variables raise ValueError."""
    values = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] != "v":
            raise ValueError(f"expected 'v' line, got {line!r}")
        for tok in parts[1:]:
            lit = int(tok)
            if lit == 0:
                continue
            values[abs(lit)] = lit > 0
    if num_vars is None:
        num_vars = max(values, default=0)
    missing = [v for v in range(1, num_vars + 1) if v not in values]
    if missing:
        raise ValueError(f"assignment misses variables {missing[:5]}")
    return tuple(values[v] for v in range(1, num_vars + 1))
