"""JSON report envelope and payload codecs.

Every payload type round-trips: ``decode(kind, encode(x)) == x``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import __version__
from .criterion import Verdict
from .cyclotomic import CyclotomicInt
from .monomials import Monomial
from .witnesses import Lemma2Result, PrimeCertificate


@dataclass
class MatrixResult:
    group: str
    labels: list[Monomial]
    orbit_sizes: list[int]
    entries: list[list[int]]
    determinant: int
    prime_factors: list[int] | None

    def to_dict(self) -> dict:
        return {
            "group": self.group,
            "size": len(self.entries),
            "labels": [m.to_list() for m in self.labels],
            "label_display": [str(m) for m in self.labels],
            "orbit_sizes": list(self.orbit_sizes),
            "entries": [list(r) for r in self.entries],
            "determinant": self.determinant,
            "prime_factors": self.prime_factors,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "MatrixResult":
        return cls(
            d["group"],
            [Monomial.from_list(m) for m in d["labels"]],
            list(d["orbit_sizes"]),
            [list(r) for r in d["entries"]],
            d["determinant"],
            d["prime_factors"],
        )


@dataclass
class WitnessResult:
    group: str
    case: str
    params: dict
    monomial: Monomial
    degree: int
    weight: list[int]
    coefficient: CyclotomicInt

    @property
    def vanishes(self) -> bool:
        return self.coefficient.is_zero()

    def to_dict(self) -> dict:
        return {
            "group": self.group,
            "case": self.case,
            "params": dict(self.params),
            "monomial": self.monomial.to_list(),
            "display": str(self.monomial),
            "degree": self.degree,
            "weight": list(self.weight),
            "coefficient": self.coefficient.to_dict(),
            "vanishes": self.vanishes,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "WitnessResult":
        return cls(
            d["group"],
            d["case"],
            dict(d["params"]),
            Monomial.from_list(d["monomial"]),
            int(d["degree"]),
            list(d["weight"]),
            CyclotomicInt.from_dict(d["coefficient"]),
        )


@dataclass
class SweepRow:
    group: str
    order: int
    verdict: str
    expected: str
    witness: Monomial | None = None
    witness_source: str | None = None

    @property
    def conforms(self) -> bool:
        return self.verdict == self.expected

    def to_dict(self) -> dict:
        d = {
            "group": self.group,
            "order": self.order,
            "verdict": self.verdict,
            "expected": self.expected,
            "conforms": self.conforms,
        }
        if self.witness is not None:
            d["witness"] = self.witness.to_list()
            d["witness_source"] = self.witness_source
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "SweepRow":
        w = d.get("witness")
        return cls(
            d["group"],
            d["order"],
            d["verdict"],
            d["expected"],
            Monomial.from_list(w) if w is not None else None,
            d.get("witness_source"),
        )


@dataclass
class SweepResult:
    max_order: int
    rows: list[SweepRow] = field(default_factory=list)

    @property
    def conforms(self) -> bool:
        return all(r.conforms for r in self.rows)

    def to_dict(self) -> dict:
        return {
            "max_order": self.max_order,
            "rows": [r.to_dict() for r in self.rows],
            "conforms": self.conforms,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SweepResult":
        return cls(d["max_order"], [SweepRow.from_dict(r) for r in d["rows"]])


@dataclass
class CertificateBatch:
    p: int
    certificates: list[PrimeCertificate]

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "count": len(self.certificates),
            "all_ok": all(c.ok for c in self.certificates),
            "certificates": [c.to_dict() for c in self.certificates],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CertificateBatch":
        return cls(d["p"], [PrimeCertificate.from_dict(c) for c in d["certificates"]])


PAYLOADS = {
    "matrix": MatrixResult,
    "verdict": Verdict,
    "witness": WitnessResult,
    "certificates": CertificateBatch,
    "lemma2": Lemma2Result,
    "sweep": SweepResult,
}


def encode(obj) -> dict:
    return obj.to_dict()


def decode(kind: str, d: dict):
    return PAYLOADS[kind].from_dict(d)


@dataclass
class RunReport:
    command: list[str]
    payload_type: str
    payload: dict
    group: str | None = None
    representation: str | None = None
    duration_s: float = 0.0
    version: str = __version__

    def to_dict(self) -> dict:
        return {
            "tool": "nql",
            "version": self.version,
            "command": list(self.command),
            "group": self.group,
            "representation": self.representation,
            "payload_type": self.payload_type,
            "payload": self.payload,
            "duration_s": self.duration_s,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "RunReport":
        d = json.loads(text)
        return cls(
            command=d["command"],
            payload_type=d["payload_type"],
            payload=d["payload"],
            group=d["group"],
            representation=d["representation"],
            duration_s=d["duration_s"],
            version=d["version"],
        )

    def decoded(self):
        return decode(self.payload_type, self.payload)
