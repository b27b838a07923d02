"""Check bookkeeping: named exact checks assembled into reports.

A check records the verified law as a formula string, a pass / fail /
sample-verified status and the first counterexample witness when it
fails.  Reports serialize to JSON with a stable schema; ordering is the
definition order of the checks, independent of how they were executed.
"""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

SCHEMA_VERSION = 1


class HypothesisFailure(Exception):
    """A constructor precondition failed; names the violated identity."""

    def __init__(self, identity: str, witness=None):
        self.identity = identity
        self.witness = witness
        msg = f"hypothesis failed: {identity}"
        if witness is not None:
            msg += f" (witness {witness})"
        super().__init__(msg)


class CrossCheckError(Exception):
    """Two provably equal computations disagreed: a structure bug."""


class ConversionError(Exception):
    """A functional slot conversion phi(_ a) <-> phi(b _) has no solution."""


@dataclass
class Check:
    name: str
    law: str
    ok: bool
    sample: bool = False           # True when verified on a window only
    witness: Optional[str] = None
    seconds: float = 0.0

    @property
    def status(self) -> str:
        if not self.ok:
            return "fail"
        return "sample-verified" if self.sample else "pass"

    def as_dict(self, with_timing=True):
        d = {"name": self.name, "law": self.law, "status": self.status}
        if self.witness is not None:
            d["witness"] = self.witness
        if with_timing:
            d["seconds"] = round(self.seconds, 6)
        return d


@dataclass
class Report:
    title: str
    checks: list = field(default_factory=list)

    def add(self, name: str, law: str, ok: bool, sample=False, witness=None,
            seconds=0.0):
        self.checks.append(Check(name, law, bool(ok), sample,
                                 None if witness is None else str(witness),
                                 seconds))

    def run(self, name: str, law: str, fn: Callable, sample=False):
        """Execute ``fn`` -> (ok, witness) or bool, timing it."""
        t0 = time.perf_counter()
        out = fn()
        dt = time.perf_counter() - t0
        if isinstance(out, tuple):
            ok, witness = out
        else:
            ok, witness = out, None
        self.add(name, law, ok, sample=sample, witness=witness, seconds=dt)
        return ok

    def extend(self, other: "Report", prefix: str = ""):
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.law, c.ok, c.sample,
                                     c.witness, c.seconds))

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def failures(self) -> list:
        return [c for c in self.checks if not c.ok]

    def first_failure(self) -> Optional[Check]:
        fs = self.failures
        return fs[0] if fs else None

    def as_dict(self, with_timing=True):
        return {
            "schema": SCHEMA_VERSION,
            "title": self.title,
            "passed": self.passed,
            "checks": [c.as_dict(with_timing) for c in self.checks],
        }

    def summary(self) -> str:
        lines = [f"== {self.title}"]
        for c in self.checks:
            lines.append(f"  [{c.status:>15}] {c.name}: {c.law}"
                         + (f"  !! {c.witness}" if c.witness and not c.ok else ""))
        return "\n".join(lines)


def fingerprint(data) -> str:
    """Canonical hash of a parsed instance description."""
    blob = json.dumps(data, sort_keys=True, default=str).encode()
    return hashlib.sha256(blob).hexdigest()[:16]
