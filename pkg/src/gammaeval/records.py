"""Identity records: two expression trees plus metadata, with a JSON encoding."""

import json
from dataclasses import dataclass, field

from . import expr as ex

KINDS = ("gamma-eval", "recurrence", "q-identity", "numeric-constant")
STATUSES = ("certified", "derived", "failed", "unchecked")


@dataclass(frozen=True)
class IdentityRecord:
    kind: str
    lhs: ex.Expr
    rhs: ex.Expr
    params: dict = field(default_factory=dict)
    provenance: tuple = ()
    name: str = ""
    source: str = ""
    status: str = "unchecked"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown identity kind {self.kind!r}")
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        object.__setattr__(self, "lhs", ex.parse(self.lhs))
        object.__setattr__(self, "rhs", ex.parse(self.rhs))
        object.__setattr__(self, "provenance", tuple(self.provenance))

    def __hash__(self):
        return hash((self.kind, self.lhs, self.rhs, self.name))

    def with_status(self, status):
        return IdentityRecord(self.kind, self.lhs, self.rhs, dict(self.params), self.provenance,
                              self.name, self.source, status)

    def to_json(self):
        out = {
            "kind": self.kind,
            "lhs": ex.to_text(self.lhs),
            "rhs": ex.to_text(self.rhs),
            "params": self.params,
            "source": self.source,
            "status": self.status,
        }
        if self.name:
            out["name"] = self.name
        if self.provenance:
            out["provenance"] = list(self.provenance)
        return out

    def dumps(self):
        return json.dumps(self.to_json(), indent=2, sort_keys=True, ensure_ascii=False)

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        return cls(
            kind=data["kind"],
            lhs=data["lhs"],
            rhs=data["rhs"],
            params=dict(data.get("params", {})),
            provenance=tuple(data.get("provenance", ())),
            name=data.get("name", ""),
            source=data.get("source", ""),
            status=data.get("status", "unchecked"),
        )

    def render(self):
        return f"{ex.to_text(self.lhs)} = {ex.to_text(self.rhs)}"


def load(path):
    with open(path) as fh:
        return IdentityRecord.from_json(json.load(fh))
