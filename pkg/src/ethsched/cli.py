"""Command-line entry point: ``ethsched <subcommand> ...``.

Data goes to stdout (or ``-o``), diagnostics to stderr. Exit status is 0 on
success, 1 when an audit or certificate check fails and 2 on usage or input
errors.
"""

import argparse
import sys

from . import dm3_pm, instance, pcmax_certify, pcmax_reduce, sat_core, sat_prime, solvers


class UsageError(Exception):
    pass


class AuditFailure(Exception):
    pass


def _read(path):
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _emit(args, text):
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _header_kind(text):
    for line in text.splitlines():
        parts = line.split()
        if parts and parts[0] == "p" and len(parts) > 1:
            return parts[1]
    return None


def load_sat_prime(path):
    """Read either DIMACS CNF (transformed on the fly) or a 3SAT' file."""
    text = _read(path)
    kind = _header_kind(text)
    if kind == "cnf":
        F = sat_core.parse_dimacs(text)
        return F, sat_prime.to_sat_prime(F)
    if kind == "satprime":
        return None, sat_prime.parse_sat_prime(text)
    raise UsageError(f"{path}: expected a 'p cnf' or 'p satprime' header")


def _delta(text):
    try:
        return sat_prime.parse_delta(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"delta must look like 1/k with k >= 2, got {text!r}")


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _pcmax_reduction(path, delta):
    F, S = load_sat_prime(path)
    P = sat_prime.pad_and_reindex(S, delta)
    return F, P, pcmax_reduce.reduce_to_pcmax(P, delta)


def _pm_reduction(path, m):
    F, S = load_sat_prime(path)
    T = sat_prime.triangulate_for_pm(S, m)
    D = dm3_pm.sat_prime_to_3dm(T)
    return F, T, D, dm3_pm.reduce_to_pm(D, m)


def _orig_assignment(path, S):
    return sat_core.parse_assignment(_read(path), S.origin.num_orig)


# ----------------------------------------------------------------- commands

def cmd_gen(args):
    F = sat_core.random_3sat(args.vars, args.clauses, args.seed)
    _emit(args, sat_core.write_dimacs(F))


def cmd_satprime(args):
    F = sat_core.parse_dimacs(_read(args.input))
    S = sat_prime.to_sat_prime(F)
    if args.pad_delta:
        S = sat_prime.pad_and_reindex(S, args.pad_delta)
    if args.triangulate_m:
        S = sat_prime.triangulate_for_pm(S, args.triangulate_m)
    _emit(args, sat_prime.write_sat_prime(S))


def cmd_reduce_pcmax(args):
    _, _, red = _pcmax_reduction(args.input, args.delta)
    _emit(args, instance.write_instance(red.instance))


def cmd_certify_pcmax(args):
    F, P, red = _pcmax_reduction(args.input, args.delta)
    if args.forward:
        A = sat_prime.push_assignment(P, _orig_assignment(args.forward, P))
        try:
            sched = pcmax_certify.build_forward_schedule(red, A)
        except pcmax_certify.ForwardError as exc:
            raise AuditFailure(f"forward: {exc}") from None
        _emit(args, instance.write_schedule(sched))
        return
    sched = instance.parse_schedule(_read(args.extract))
    try:
        ex = pcmax_certify.extract_assignment(red, sched)
    except pcmax_certify.ExtractionError as exc:
        where = f" {exc.machine}" if exc.machine is not None else ""
        sys.stdout.write(f"FAIL {exc.check}{where} {exc.detail}\n")
        raise AuditFailure(str(exc)) from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    orig = sat_prime.lift_assignment(P, ex.assignment)
    if F is not None and not sat_core.satisfies(F, orig):
        raise AuditFailure("extracted assignment does not satisfy the input CNF")
    _emit(args, ex.report.text() + sat_core.format_assignment(orig))


def cmd_to_3dm(args):
    _, S = load_sat_prime(args.input)
    T = sat_prime.triangulate_for_pm(S, args.m)
    _emit(args, dm3_pm.write_3dm(dm3_pm.sat_prime_to_3dm(T)))


def cmd_reduce_pm(args):
    _, _, _, red = _pm_reduction(args.input, args.m)
    _emit(args, instance.write_instance(red.instance))


def cmd_certify_pm(args):
    F, T, D, red = _pm_reduction(args.input, args.m)
    if args.forward:
        A = sat_prime.push_assignment(T, _orig_assignment(args.forward, T))
        try:
            cover = dm3_pm.assignment_to_cover(D, T, A)
        except dm3_pm.PmError as exc:
            raise AuditFailure(str(exc)) from None
        _emit(args, instance.write_schedule(dm3_pm.forward_schedule_pm(red, cover)))
        return
    sched = instance.parse_schedule(_read(args.extract))
    try:
        instance.check_schedule_shape(red.instance, sched)
        cover = dm3_pm.extract_cover_pm(red, sched)
    except dm3_pm.PmExtractionError as exc:
        sys.stdout.write(f"FAIL {exc.check}" + (f" {exc.machine}" if exc.machine else "") + f" {exc.detail}\n")
        raise AuditFailure(str(exc)) from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    A = dm3_pm.cover_to_assignment(D, cover)
    orig = sat_prime.lift_assignment(T, A)
    if F is not None and not sat_core.satisfies(F, orig):
        raise AuditFailure("extracted assignment does not satisfy the input CNF")
    _emit(args, "PASS extract\n" + dm3_pm.write_cover(cover) + sat_core.format_assignment(orig))


def cmd_solve(args):
    inst = instance.parse_instance(_read(args.input))
    m = args.m or inst.machines
    jobs = inst.sizes
    lines = []
    if args.brute:
        span, sched = solvers.brute_min_makespan(jobs, m)
    elif args.lpt:
        span, sched = solvers.lpt_schedule(jobs, m)
    else:
        cap = args.state_cap
        try:
            span, sched, tel = solvers.dp_min_makespan(jobs, m, ub=args.ub, workers=args.workers, cap=cap)
        except solvers.StateCapExceeded as exc:
            raise AuditFailure(str(exc)) from None
        lines = tel.lines()
    out = [f"makespan {span}"] + lines
    out.append(instance.write_schedule(instance.Schedule(m, sched)).rstrip("\n"))
    _emit(args, "\n".join(out) + "\n")


def cmd_roundtrip(args):
    F = sat_core.parse_dimacs(_read(args.input))
    model = sat_core.brute_force_sat(F)
    if model is None:
        raise AuditFailure("input formula is unsatisfiable, nothing to certify")
    S = sat_prime.to_sat_prime(F)
    if args.m:
        T = sat_prime.triangulate_for_pm(S, args.m)
        D = dm3_pm.sat_prime_to_3dm(T)
        red = dm3_pm.reduce_to_pm(D, args.m)
        cover = dm3_pm.assignment_to_cover(D, T, sat_prime.push_assignment(T, model))
        sched = dm3_pm.forward_schedule_pm(red, cover)
        try:
            back = dm3_pm.cover_to_assignment(D, dm3_pm.extract_cover_pm(red, sched))
        except dm3_pm.PmExtractionError as exc:
            raise AuditFailure(str(exc)) from None
        if not sat_core.satisfies(F, sat_prime.lift_assignment(T, back)):
            raise AuditFailure("extracted assignment does not satisfy the input")
        sys.stdout.write(f"ROUNDTRIP PASS pm n={T.n} m={args.m} T={red.T}\n")
        return
    P = sat_prime.pad_and_reindex(S, args.delta)
    red = pcmax_reduce.reduce_to_pcmax(P, args.delta)
    try:
        sched = pcmax_certify.build_forward_schedule(red, sat_prime.push_assignment(P, model))
        ex = pcmax_certify.extract_assignment(red, sched)
    except (pcmax_certify.ForwardError, pcmax_certify.ExtractionError) as exc:
        raise AuditFailure(str(exc)) from None
    if not sat_core.satisfies(F, sat_prime.lift_assignment(P, ex.assignment)):
        raise AuditFailure("extracted assignment does not satisfy the input")
    sys.stdout.write(f"ROUNDTRIP PASS n={P.n} delta={args.delta} K={red.params.K}\n")


def cmd_audit(args):
    if args.m:
        _, _, _, red = _pm_reduction(args.input, args.m)
        rep = instance.AuditReport()
        rep.add("no_carry", dm3_pm.no_carry_ok(red))
        rep.add("bands_disjoint", dm3_pm.bands_disjoint(args.m))
        if args.schedule:
            rep.checks += dm3_pm.pm_audit_report(red, instance.parse_schedule(_read(args.schedule))).checks[2:]
    else:
        _, _, red = _pcmax_reduction(args.input, args.delta)
        rep = pcmax_reduce.audit_instance(red)
        if args.schedule:
            sched = instance.parse_schedule(_read(args.schedule))
            try:
                instance.check_schedule_shape(red.instance, sched)
            except ValueError as exc:
                raise UsageError(str(exc)) from None
            rep.checks += pcmax_certify.audit_schedule(red, sched).checks
    _emit(args, rep.text())
    if not rep.ok:
        raise AuditFailure("audit failed: " + ", ".join(rep.failed()))


# ------------------------------------------------------------------- parser

def build_parser():
    p = argparse.ArgumentParser(prog="ethsched", description="Hardness reductions for makespan scheduling.")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, func, help_text):
        sp = sub.add_parser(name, help=help_text, description=help_text)
        sp.set_defaults(func=func)
        return sp

    def out(sp):
        sp.add_argument("-o", "--output", help="write data here instead of stdout")

    sp = add("gen", cmd_gen, "Generate a seeded random 3-CNF in DIMACS format.")
    sp.add_argument("--vars", type=int, required=True)
    sp.add_argument("--clauses", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    out(sp)

    sp = add("satprime", cmd_satprime,
             "Turn a CNF into a 3SAT' instance (each variable once in C1, once per polarity in C2); "
             "optionally pad it for the P||Cmax reduction or triangulate it for the Pm||Cmax reduction.")
    sp.add_argument("input")
    sp.add_argument("--pad-delta", type=_delta, help="pad to n' with 3 | n' and integral n'^delta")
    sp.add_argument("--triangulate-m", type=_positive, help="split variables into triangles, groups divisible by m")
    out(sp)

    sp = add("reduce-pcmax", cmd_reduce_pcmax,
             "Reduce a CNF or 3SAT' instance to P||Cmax with 2n/delta+5n machines and target K.")
    sp.add_argument("input")
    sp.add_argument("--delta", type=_delta, required=True)
    out(sp)

    sp = add("certify-pcmax", cmd_certify_pcmax,
             "Build a load-K schedule from a satisfying assignment (--forward), or audit a schedule and "
             "read a satisfying assignment from it (--extract).")
    sp.add_argument("input")
    sp.add_argument("--delta", type=_delta, required=True)
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--forward", metavar="ASSIGNMENT")
    g.add_argument("--extract", metavar="SCHEDULE")
    out(sp)

    sp = add("to-3dm", cmd_to_3dm, "Reduce a CNF or 3SAT' instance to the exact-cover problem 3DM'.")
    sp.add_argument("input")
    sp.add_argument("--m", type=_positive, required=True)
    out(sp)

    sp = add("reduce-pm", cmd_reduce_pm,
             "Reduce a CNF or 3SAT' instance (through 3DM') to Pm||Cmax with m+1 machines.")
    sp.add_argument("input")
    sp.add_argument("--m", type=_positive, required=True)
    out(sp)

    sp = add("certify-pm", cmd_certify_pm,
             "Forward schedule from an assignment, or digit-audit a Pm||Cmax schedule and read the exact cover.")
    sp.add_argument("input")
    sp.add_argument("--m", type=_positive, required=True)
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--forward", metavar="ASSIGNMENT")
    g.add_argument("--extract", metavar="SCHEDULE")
    out(sp)

    sp = add("solve", cmd_solve, "Solve a small scheduling instance exactly (DP, brute force) or with LPT.")
    sp.add_argument("input")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--dp", action="store_true", help="load-vector dynamic program (default)")
    g.add_argument("--brute", action="store_true")
    g.add_argument("--lpt", action="store_true")
    sp.add_argument("--m", type=_positive, help="override the machine count of the file")
    sp.add_argument("--ub", type=int, help="prune DP states above this makespan")
    sp.add_argument("--workers", type=_positive, default=1)
    sp.add_argument("--state-cap", type=_positive, default=None)
    out(sp)

    sp = add("roundtrip", cmd_roundtrip,
             "End-to-end check on a satisfiable CNF: reduce, build the forward certificate, extract, verify.")
    sp.add_argument("input")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--delta", type=_delta)
    g.add_argument("--m", type=_positive, help="use the Pm||Cmax pipeline instead")

    sp = add("audit", cmd_audit,
             "Audit a reduced instance (and optionally a schedule); prints PASS/FAIL lines.")
    sp.add_argument("input")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--delta", type=_delta)
    g.add_argument("--m", type=_positive)
    sp.add_argument("--schedule")
    out(sp)
    return p


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args)
    except AuditFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (UsageError, sat_core.CnfError, sat_prime.SatPrimeError, instance.FormatError,
            pcmax_reduce.ReductionError, dm3_pm.PmError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
