"""Machine-readable run reports.

The JSON emitted on stdout is byte-identical across runs with the same
inputs and seed: no timestamps or timings go into it (wall-clock timings
appear only in the stderr summary).
"""

from __future__ import annotations

import json
import sys
import time
from dataclasses import dataclass, field

ARTIFACT_VERSION = "0.1.0"

__all__ = ["Report", "CheckRecord", "ARTIFACT_VERSION"]


@dataclass
class CheckRecord:
    name: str
    verdict: str                 # "pass" | "fail" | "skip"
    witness: object = None
    timing: float = 0.0          # seconds; stderr summary only

    def as_json(self) -> dict:
        out = {"name": self.name, "verdict": self.verdict}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class Report:
    command: str
    instance: str | None = None
    seed: int | None = None
    checks: list[CheckRecord] = field(default_factory=list)

    def start(self) -> float:
        return time.perf_counter()

    def add(self, name: str, ok: bool, witness=None, *, skip: bool = False,
            t0: float | None = None) -> bool:
        dt = 0.0 if t0 is None else time.perf_counter() - t0
        verdict = "skip" if skip else ("pass" if ok else "fail")
        self.checks.append(CheckRecord(name, verdict, _plain(witness), dt))
        return ok

    @property
    def status(self) -> str:
        return "pass" if all(c.verdict != "fail" for c in self.checks) \
            else "findings"

    @property
    def exit_code(self) -> int:
        return 0 if self.status == "pass" else 1

    def to_json(self) -> str:
        doc = {
            "version": ARTIFACT_VERSION,
            "command": self.command,
            "instance": self.instance,
            "seed": self.seed,
            "checks": [c.as_json() for c in self.checks],
            "status": self.status,
        }
        return json.dumps(doc, sort_keys=True, indent=2)

    def emit(self, out=None, err=None) -> int:
        out = out if out is not None else sys.stdout
        err = err if err is not None else sys.stderr
        print(self.to_json(), file=out)
        n_fail = sum(c.verdict == "fail" for c in self.checks)
        for c in self.checks:
            mark = {"pass": "ok  ", "fail": "FAIL", "skip": "skip"}[c.verdict]
            extra = f"  [{c.timing:.2f}s]" if c.timing >= 0.005 else ""
            wit = f"  witness={c.witness}" if c.verdict == "fail" else ""
            print(f"  {mark} {c.name}{extra}{wit}", file=err)
        print(f"{self.command}: {self.status} "
              f"({len(self.checks)} checks, {n_fail} findings)", file=err)
        return self.exit_code


def _plain(obj):
    """Reduce a witness to JSON-safe plain data."""
    if obj is None or isinstance(obj, (bool, int, float, str)):
        return obj
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    return repr(obj)
