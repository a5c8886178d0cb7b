"""The shipped identity corpus: one JSON record per file, keyed by name."""

import fnmatch
import json
import time
from fractions import Fraction
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import mpmath

from .numerics import DEFAULT_PREC, certify
from .records import IdentityRecord

VERSION = 1


class UnknownEntry(KeyError):
    pass


def corpus_dir():
    return Path(str(resources.files("gammaeval") / "corpus"))


def names():
    return sorted(p.stem for p in corpus_dir().glob("*.json"))


def load(name):
    path = corpus_dir() / f"{name}.json"
    if not path.exists():
        raise UnknownEntry(name)
    with open(path) as fh:
        data = json.load(fh)
    data.setdefault("name", name)
    return IdentityRecord.from_json(data)


def resolve(ref):
    """``corpus:NAME``, a bare corpus name, or a path to a JSON record."""
    if ref.startswith("corpus:"):
        return load(ref[len("corpus:"):])
    path = Path(ref)
    if path.exists():
        with open(path) as fh:
            return IdentityRecord.from_json(json.load(fh))
    if ref in names():
        return load(ref)
    raise UnknownEntry(ref)


def select(pattern="*", status=None):
    out = []
    for n in names():
        if not fnmatch.fnmatchcase(n, pattern or "*"):
            continue
        rec = load(n)
        if status and rec.status != status:
            continue
        out.append(rec)
    return out


@dataclass(frozen=True)
class CorpusRow:
    name: str
    kind: str
    expected: str
    outcome: str
    worst: str
    seconds: float

    @property
    def consistent(self):
        """A recorded ``failed`` entry must still fail; anything else must pass."""
        return (self.outcome == "fail") == (self.expected == "failed")

    def to_json(self):
        return {"name": self.name, "kind": self.kind, "status": self.expected,
                "outcome": self.outcome, "worst": self.worst, "consistent": self.consistent}


def _worst_text(result):
    if result.__class__.__name__ == "QVerification":
        return "exact" if result.ok else f"q^{result.discrepancy.order}"
    worst = result.worst
    if worst is None:
        return "-"
    return mpmath.nstr(mpmath.mpf(worst.residual.numerator) / worst.residual.denominator, 3) \
        if isinstance(worst.residual, Fraction) else mpmath.nstr(worst.residual, 3)


def check_entry(record, prec=DEFAULT_PREC):
    start = time.monotonic()
    result = certify(record, prec=prec)
    elapsed = time.monotonic() - start
    outcome = "pass" if result.passed else "fail"
    return CorpusRow(record.name, record.kind, record.status, outcome, _worst_text(result), elapsed)


def _check_named(args):
    name, prec = args
    return check_entry(load(name), prec)


def run(pattern="*", status=None, prec=DEFAULT_PREC, jobs=1):
    """Certify every matching entry; rows come back sorted by name."""
    records = select(pattern, status)
    if jobs > 1 and len(records) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_check_named, [(r.name, prec) for r in records]))
    else:
        rows = [check_entry(r, prec) for r in records]
    return sorted(rows, key=lambda r: r.name)


def table(rows, timings=True):
    head = f"{'name':<30} {'kind':<17} {'status':<10} {'outcome':<8} {'worst':<10}"
    lines = [head + (" seconds" if timings else ""), "-" * (len(head) + (8 if timings else 0))]
    for r in rows:
        line = f"{r.name:<30} {r.kind:<17} {r.expected:<10} {r.outcome:<8} {r.worst:<10}"
        if timings:
            line += f" {r.seconds:7.2f}"
        if not r.consistent:
            line += "  <-- unexpected"
        lines.append(line)
    return "\n".join(lines)
