"""Command-line front end.

Exit codes: 0 success, 2 verification failure, 3 unsolved or diagnostic,
4 usage error.  ``--json`` switches every subcommand to a single
deterministic JSON document on stdout; timings only appear in text reports.
"""

import argparse
import json
import os
import re
import signal
import sys
from contextlib import contextmanager
from fractions import Fraction

from . import __version__
from . import corpus as corpus_mod
from . import expr as ex
from . import qseries
from .admissibility import ZeroQ, admissibility_polynomial, solve
from .contiguity import ParamVector, ShiftVector, decomposition, order2_recurrence
from .gamma_synthesis import ClausenShapeMismatch, SeriesDiverges, clausen_square, synthesize
from .numerics import DEFAULT_PREC, certify
from .records import IdentityRecord
from .telescoping import (
    HyperTermFamily,
    NoRecurrenceFound,
    NotProper,
    TelescopingTimeout,
    numeric_shadow,
    recurrence_record,
    zeilberger,
)

EXIT_OK = 0
EXIT_FAILED = 2
EXIT_UNSOLVED = 3
EXIT_USAGE = 4

ENV_PREC = "GAMMAEVAL_PREC"
ENV_ORDER = "GAMMAEVAL_ORDER"
ENV_MAX_ORDER = "GAMMAEVAL_MAX_ORDER"
ENV_TIMEOUT = "GAMMAEVAL_TIMEOUT"

DEFAULT_TIMEOUT = 30.0
DEFAULT_MAX_ORDER = 3


class UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _env_number(name, kind, fallback):
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return fallback
    try:
        return kind(raw)
    except ValueError:
        raise UsageError(f"environment variable {name}={raw!r} is not a valid {kind.__name__}")


def _shift(text):
    try:
        return ShiftVector.parse(text)
    except (TypeError, ValueError) as err:
        raise argparse.ArgumentTypeError(str(err))


def _rational(text):
    try:
        return ex.parse_rational(text)
    except Exception as err:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r} ({err})")


def _rational_list(text):
    return [_rational(p) for p in text.replace(";", ",").split(",") if p.strip()]


def _common_flags(parser, suppress):
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument("--prec", type=int, default=default, metavar="BITS",
                        help=f"working precision in bits (default {DEFAULT_PREC}, env {ENV_PREC})")
    parser.add_argument("--order", type=int, default=default, metavar="N",
                        help=f"q-series truncation order (default {qseries.DEFAULT_ORDER}, env {ENV_ORDER})")
    parser.add_argument("--timeout", type=float, default=default, metavar="SECONDS",
                        help=f"time limit per shift or run (default {DEFAULT_TIMEOUT:g}, env {ENV_TIMEOUT}; 0 disables)")
    parser.add_argument("--json", action="store_true", default=argparse.SUPPRESS if suppress else False,
                        help="emit one JSON document instead of a text report")


def build_parser():
    parser = _ArgumentParser(prog="gammaeval", description="Gamma evaluations of hypergeometric series.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _common_flags(parser, suppress=False)
    common = _ArgumentParser(add_help=False)
    _common_flags(common, suppress=True)
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_ArgumentParser)
    sub.required = True

    p = sub.add_parser("derive", parents=[common], help="contiguous decomposition and admissibility polynomial")
    p.add_argument("--shift", type=_shift, required=True, metavar="K,L,M")
    p.add_argument("--family", metavar="A0,B0,C0", help="base point; also print the order-2 recurrence")
    p.add_argument("--z", type=_rational, metavar="P/Q", help="argument for --family (symbolic if omitted)")

    p = sub.add_parser("find", parents=[common], help="admissible families for one or more shifts")
    p.add_argument("--shift", type=_shift, action="append", required=True, metavar="K,L,M")
    p.add_argument("--z0-hints", type=_rational_list, metavar="Z[,Z...]", help="z0 values to try directly")
    p.add_argument("--height", type=int, default=12, help="height bound for 2-3-5 smooth z0 candidates")

    p = sub.add_parser("closed-form", parents=[common], help="gamma closed form for an admissible family")
    p.add_argument("--shift", type=_shift, required=True, metavar="K,L,M")
    p.add_argument("--family", type=int, default=1, metavar="INDEX", help="1-based index into the find output")
    p.add_argument("--z0-hints", type=_rational_list, metavar="Z[,Z...]")
    p.add_argument("--points", type=_rational_list, metavar="T[,T...]", help="certification points")
    p.add_argument("--clausen", action="store_true", help="also emit the Clausen square")

    p = sub.add_parser("recurrence", parents=[common], help="creative telescoping in t for a term family")
    p.add_argument("--upper", required=True, metavar="U1,U2,...", help="upper parameters, linear in t")
    p.add_argument("--lower", required=True, metavar="L1,...", help="lower parameters, linear in t (n! is implicit)")
    p.add_argument("--z", default="1", metavar="P/Q", help="argument; 'z' keeps it symbolic")
    p.add_argument("--max-order", type=int, default=None, metavar="R",
                   help=f"largest order tried (default {DEFAULT_MAX_ORDER}, env {ENV_MAX_ORDER})")

    p = sub.add_parser("verify", parents=[common], help="numerically certify an identity record")
    p.add_argument("--identity", required=True, metavar="FILE|corpus:NAME")
    p.add_argument("--points", type=_rational_list, metavar="T[,T...]")

    p = sub.add_parser("qverify", parents=[common], help="verify a q-series identity coefficientwise")
    p.add_argument("--identity", required=True, metavar="NAME|FILE")
    p.add_argument("--specialize", metavar="X=V[,Y=W]", help="rational values for some of a, b, c, d")

    p = sub.add_parser("corpus", parents=[common], help="run or list the shipped identity corpus")
    p.add_argument("--filter", default="*", metavar="PATTERN", help="glob over entry names, e.g. 'q-*'")
    p.add_argument("--status", choices=("certified", "derived", "failed"))
    p.add_argument("--list", action="store_true", help="list entries without running them")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    return parser


class Settings:
    def __init__(self, args):
        self.json = bool(getattr(args, "json", False))
        prec = getattr(args, "prec", None)
        self.prec = prec if prec is not None else _env_number(ENV_PREC, int, DEFAULT_PREC)
        order = getattr(args, "order", None)
        self.order = order if order is not None else _env_number(ENV_ORDER, int, qseries.DEFAULT_ORDER)
        timeout = getattr(args, "timeout", None)
        self.timeout = timeout if timeout is not None else _env_number(ENV_TIMEOUT, float, DEFAULT_TIMEOUT)
        if self.prec < 32:
            raise UsageError("--prec must be at least 32 bits")
        if self.order < 1:
            raise UsageError("--order must be positive")


@contextmanager
def time_limit(seconds):
    """Raise TelescopingTimeout after ``seconds`` of wall time (POSIX main thread only)."""
    usable = seconds and seconds > 0 and hasattr(signal, "SIGALRM")
    if usable:
        try:
            previous = signal.signal(signal.SIGALRM, _alarm)
        except ValueError:  # not in the main thread
            usable = False
    if not usable:
        yield
        return
    signal.setitimer(signal.ITIMER_REAL, seconds)
    try:
        yield
    finally:
        signal.setitimer(signal.ITIMER_REAL, 0)
        signal.signal(signal.SIGALRM, previous)


def _alarm(signum, frame):
    raise TelescopingTimeout("time limit reached")


def _dump(payload):
    return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False)


class Output:
    def __init__(self, settings, stream=None):
        self.settings = settings
        self.stream = stream or sys.stdout

    def emit(self, payload, text):
        print(_dump(payload) if self.settings.json else text, file=self.stream)


# ---------------------------------------------------------------------------
# subcommands


def cmd_derive(args, settings, out):
    shift = args.shift
    dec = decomposition(shift)
    payload = {"shift": list(shift), "R": str(dec.R), "Q": str(dec.Q)}
    lines = [f"shift {shift}", f"  R = {dec.R}", f"  Q = {dec.Q}"]
    try:
        poly = admissibility_polynomial(shift)
        payload["admissibility"] = {f"t^{i}": str(c) for i, c in enumerate(poly.coefficients)}
        lines.append("  admissibility polynomial (coefficient of t^i):")
        lines += [f"    t^{i}: {c}" for i, c in enumerate(poly.coefficients)]
    except ZeroQ:
        payload["admissibility"] = None
        payload["diagnostic"] = "degenerate shift"
        lines.append("  Q vanishes identically: degenerate shift")
    if args.family:
        base = [ex.parse_rational(x) for x in args.family.split(",")]
        if len(base) != 3:
            raise UsageError("--family expects A0,B0,C0")
        family = ParamVector.family(tuple(base), shift)
        rec = order2_recurrence(shift, family, args.z)
        payload["recurrence"] = {"coefficients": [str(p) for p in rec.coefficients], "shifts": list(rec.shifts)}
        lines.append(f"  recurrence for a={family.a}, b={family.b}, c={family.c}, z={args.z if args.z is not None else 'z'}:")
        lines.append(f"    {rec}")
    out.emit(payload, "\n".join(lines))
    return EXIT_OK


def _solve_one(shift, hints, height, timeout):
    if shift.is_zero():
        return [{"shift": list(shift), "status": "unsolved", "diagnostic": "degenerate shift"}], True
    try:
        with time_limit(timeout):
            result = solve(shift, z0_hints=hints, height_bound=height)
    except ZeroQ:
        return [{"shift": list(shift), "status": "unsolved", "diagnostic": "degenerate shift"}], True
    except TelescopingTimeout:
        return [{"shift": list(shift), "status": "unsolved", "diagnostic": f"timed out after {timeout:g} s"}], True
    rows = [f.to_json() for f in result.families]
    for branch in result.unsolved:
        rows.append({"shift": list(shift), "status": "unsolved", "diagnostic": branch["reason"],
                     "branch": {k: v for k, v in branch.items() if k != "reason"}})
    return rows, not result.families


def cmd_find(args, settings, out):
    rows, lines, any_found, all_ok = [], [], False, True
    for shift in sorted(set(args.shift), key=lambda s: tuple(s)):
        found, empty = _solve_one(shift, args.z0_hints, args.height, settings.timeout)
        rows += found
        any_found = any_found or not empty
        lines.append(f"shift {shift}:")
        index = 0
        for row in found:
            if row["status"] == "solved":
                index += 1
                lines.append(f"  [{index}] z0={row['z0']}  a0={row['a0']}  b0={row['b0']}  c0={row['c0']}")
            else:
                all_ok = False
                extra = f"  {row['branch']}" if "branch" in row else ""
                lines.append(f"  unsolved: {row['diagnostic']}{extra}")
        if empty:
            lines.append("  no admissible family found")
    out.emit(rows, "\n".join(lines))
    return EXIT_OK if any_found else EXIT_UNSOLVED


def cmd_closed_form(args, settings, out):
    if args.shift.is_zero():
        out.emit({"shift": [0, 0, 0], "diagnostic": "degenerate shift"}, "degenerate shift (0,0,0)")
        return EXIT_UNSOLVED
    with time_limit(settings.timeout):
        families = solve(args.shift, z0_hints=args.z0_hints).families
    if not families:
        out.emit({"shift": list(args.shift), "diagnostic": "no admissible family"}, "no admissible family found")
        return EXIT_UNSOLVED
    if not 1 <= args.family <= len(families):
        raise UsageError(f"--family must be between 1 and {len(families)}")
    family = families[args.family - 1]
    kwargs = {"prec": settings.prec}
    if args.points:
        kwargs["points"] = args.points
    try:
        evaluation = synthesize(family, **kwargs)
    except SeriesDiverges as err:
        out.emit({"family": family.to_json(), "diagnostic": str(err)}, f"diagnostic: {err}")
        return EXIT_UNSOLVED
    payload = evaluation.to_json()
    lines = [evaluation.render(), "", evaluation.certification.report(), "", evaluation.record.dumps()]
    status = EXIT_OK if evaluation.certified else EXIT_FAILED
    if args.clausen:
        try:
            square = clausen_square(evaluation)
        except ClausenShapeMismatch as err:
            payload["clausen"] = {"diagnostic": str(err)}
            lines.append(f"\nClausen square not applicable: {err}")
            status = max(status, EXIT_UNSOLVED) if status == EXIT_OK else status
        else:
            cert = certify(square, points=args.points or [0, Fraction(1, 4), Fraction(1, 2), 1], prec=settings.prec)
            payload["clausen"] = {"record": square.to_json(), "certification": cert.to_json()}
            lines += ["", "Clausen square:", square.render(), cert.report()]
            if not cert.passed:
                status = EXIT_FAILED
    out.emit(payload, "\n".join(lines))
    return status


def _params_list(text):
    return [p.strip() for p in text.replace(";", ",").split(",") if p.strip()]


def cmd_recurrence(args, settings, out):
    max_order = args.max_order if args.max_order is not None else _env_number(ENV_MAX_ORDER, int, DEFAULT_MAX_ORDER)
    try:
        term = HyperTermFamily(_params_list(args.upper), _params_list(args.lower), args.z)
    except (NotProper, ex.ParseError) as err:
        raise UsageError(str(err))
    try:
        with time_limit(settings.timeout):
            run = zeilberger(term, max_order=max_order)
    except NoRecurrenceFound as err:
        out.emit({"diagnostic": str(err)}, f"no recurrence: {err}")
        return EXIT_UNSOLVED
    except TelescopingTimeout as err:
        out.emit({"diagnostic": f"timed out: {err}"}, f"timed out after {settings.timeout:g} s")
        return EXIT_UNSOLVED
    rec = run.recurrence
    lines = [f"order {run.order} (orders {list(run.infeasible_orders) or 'none'} infeasible)", f"  {rec}"]
    lines.append(f"  certificate: B(t,n) = R(t,n) * A(t{rec.certificate.base_shift:+d}, n) with")
    lines.append(f"    R = {rec.certificate.multiplier}")
    if run.p1_vanishes:
        lines.append("  p1 vanishes: first-order relation for the step t -> t+2")
    if term.z_value is not None:
        record = recurrence_record(term, rec)
        payload = record.to_json()
        payload["params"]["infeasible_orders"] = list(run.infeasible_orders)
        payload["params"]["p1_vanishes"] = run.p1_vanishes
        shadow = numeric_shadow(term, rec, prec=settings.prec)
        for t, res, ok in shadow:
            if res is None:
                lines.append(f"  numeric check t={t}: skipped (series not summable)")
            else:
                lines.append(f"  numeric check t={t}: residual {float(res):.3g} {'ok' if ok else 'FAIL'}")
        failed = any(ok is False for _, _, ok in shadow)
    else:
        payload = {"family": term.to_json(), "coefficients": [str(p) for p in rec.coefficients],
                   "shifts": list(rec.shifts), "multiplier": str(rec.certificate.multiplier),
                   "infeasible_orders": list(run.infeasible_orders)}
        failed = False
    out.emit(payload, "\n".join(lines))
    return EXIT_FAILED if failed else EXIT_OK


def _load_identity(ref):
    try:
        return corpus_mod.resolve(ref)
    except corpus_mod.UnknownEntry:
        raise UsageError(f"no identity file or corpus entry named {ref!r}")
    except (ValueError, KeyError) as err:
        raise UsageError(f"malformed identity record {ref!r}: {err}")


def cmd_verify(args, settings, out):
    record = _load_identity(args.identity)
    if record.kind == "q-identity":
        result = qseries.certify_q_record(record, settings.order if getattr(args, "order", None) else None)
    else:
        result = certify(record, points=args.points, prec=settings.prec)
    payload = {"name": record.name, "kind": record.kind, "certification": result.to_json()}
    text = f"{record.name or args.identity}: {record.render()}\n{result.report()}"
    out.emit(payload, text)
    return EXIT_OK if result.passed else EXIT_FAILED


def _specializations(text):
    if not text:
        return {}
    env = {}
    for part in text.split(","):
        name, _, value = part.partition("=")
        name = name.strip()
        if name not in qseries.PARAMS or not value:
            raise UsageError(f"bad specialization {part!r}; expected e.g. b=1/3")
        env[name] = ex.parse_rational(value)
    return env


def cmd_qverify(args, settings, out):
    env = _specializations(args.specialize)
    if args.identity in qseries.BUILTIN_IDENTITIES:
        lhs, rhs = qseries.BUILTIN_IDENTITIES[args.identity]
        name, index = args.identity, "k"
    else:
        record = _load_identity(args.identity)
        if record.kind != "q-identity":
            raise UsageError(f"{args.identity!r} is a {record.kind} record, not a q-identity")
        lhs, rhs = record.lhs, record.rhs
        name, index = record.name or args.identity, record.params.get("index", "k")
    try:
        result = qseries.verify_q_identity(lhs, rhs, settings.order, index=index, name=name, env=env)
    except (qseries.NonTruncatable, qseries.NonTerminatingOrder, qseries.QSyntaxError) as err:
        out.emit({"name": name, "diagnostic": str(err)}, f"{name}: {err}")
        return EXIT_UNSOLVED
    out.emit(result.to_json(), result.report())
    return EXIT_OK if result.ok else EXIT_FAILED


def cmd_corpus(args, settings, out):
    if args.list:
        records = corpus_mod.select(args.filter, args.status)
        payload = [{"name": r.name, "kind": r.kind, "status": r.status, "source": r.source} for r in records]
        lines = [f"corpus version {corpus_mod.VERSION}, {len(records)} entries"]
        lines += [f"  {r.name:<30} {r.kind:<17} {r.status:<10} {r.source}" for r in records]
        out.emit(payload, "\n".join(lines))
        return EXIT_OK
    rows = corpus_mod.run(args.filter, args.status, prec=settings.prec, jobs=max(1, args.jobs))
    payload = [r.to_json() for r in rows]
    bad = [r for r in rows if not r.consistent]
    summary = f"{len(rows)} entries, {len(rows) - len(bad)} as recorded, {len(bad)} unexpected"
    out.emit(payload, corpus_mod.table(rows) + "\n" + summary)
    return EXIT_FAILED if bad else EXIT_OK


COMMANDS = {
    "derive": cmd_derive,
    "find": cmd_find,
    "closed-form": cmd_closed_form,
    "recurrence": cmd_recurrence,
    "verify": cmd_verify,
    "qverify": cmd_qverify,
    "corpus": cmd_corpus,
}


_NEGATIVE_VALUE = re.compile(r"-\d[\d/.,]*")


def _attach_negative_values(argv):
    """Turn ``--z -1/8`` into ``--z=-1/8`` so argparse does not read the value as a flag."""
    out = []
    for token in argv:
        if out and _NEGATIVE_VALUE.fullmatch(token) and out[-1].startswith("--") and "=" not in out[-1]:
            out[-1] = f"{out[-1]}={token}"
        else:
            out.append(token)
    return out


def main(argv=None, stdout=None, stderr=None):
    stderr = stderr or sys.stderr
    argv = _attach_negative_values(sys.argv[1:] if argv is None else list(argv))
    try:
        args = build_parser().parse_args(argv)
        settings = Settings(args)
        return COMMANDS[args.command](args, settings, Output(settings, stdout))
    except UsageError as err:
        print(f"usage error: {err}", file=stderr)
        return EXIT_USAGE
    except SystemExit as err:  # --help / --version
        return EXIT_OK if not err.code else EXIT_USAGE
    except (ex.ParseError, ValueError) as err:
        print(f"usage error: {err}", file=stderr)
        return EXIT_USAGE
    except Exception as err:  # diagnostics, never a traceback
        print(f"diagnostic: {type(err).__name__}: {err}", file=stderr)
        return EXIT_UNSOLVED


if __name__ == "__main__":
    sys.exit(main())
