"""Run configuration, check records, and report serialization.

Reports serialize to JSON (schema 1) with floats in Python's shortest
round-trip form, and to CSV with 17 significant digits; both re-parse to
the exact double. Value fields are bitwise reproducible across runs with
the same config; only the wall-clock duration varies.
"""
import csv
import io
import json
import math
from dataclasses import dataclass, field

from .errors import ConfigError

SCHEMA_VERSION = 1

COMMANDS = (
    "frames",
    "wasserstein",
    "decay",
    "markov",
    "dpp",
    "gaussian",
    "translate",
    "kl",
    "verify-all",
)

DEFAULT_TOLERANCES = {
    "z_max": 4.0,          # acceptance band for Monte-Carlo z-scores
    "exact_rel": 1e-12,    # relative slack for exact pointwise identities
    "tol_ineq": 1e-10,     # slack for inequality checks
    "tv_max": 0.02,        # sampler-vs-oracle total variation cap
}

CSV_COLUMNS = ("name", "value", "target", "std_error", "z_score", "pass")


@dataclass(frozen=True)
class ExperimentConfig:
    command: str
    seed: int = 0
    samples: int = 100_000
    dim: int = 32
    tolerances: dict = field(default_factory=dict)
    inputs: tuple = ()
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if self.seed < 0:
            raise ConfigError("seed must be nonnegative")
        if self.samples < 1:
            raise ConfigError("samples must be positive")
        if self.dim < 1:
            raise ConfigError("dim must be positive")
        for key in self.tolerances:
            if key not in DEFAULT_TOLERANCES:
                raise ConfigError(
                    f"unknown tolerance {key!r}; known: {sorted(DEFAULT_TOLERANCES)}"
                )

    def tolerance(self, name: str) -> float:
        return float(self.tolerances.get(name, DEFAULT_TOLERANCES[name]))

    @classmethod
    def from_dict(cls, doc: dict) -> "ExperimentConfig":
        """Strict parse: unknown fields are rejected."""
        if not isinstance(doc, dict):
            raise ConfigError("config must be a JSON object")
        known = {"command", "seed", "samples", "dim", "tolerances", "inputs", "options"}
        unknown = set(doc) - known
        if unknown:
            raise ConfigError(f"unknown config fields: {sorted(unknown)}")
        if "command" not in doc:
            raise ConfigError('config needs a "command" field')
        return cls(
            command=doc["command"],
            seed=int(doc.get("seed", 0)),
            samples=int(doc.get("samples", 100_000)),
            dim=int(doc.get("dim", 32)),
            tolerances=dict(doc.get("tolerances", {})),
            inputs=tuple(doc.get("inputs", ())),
            options=dict(doc.get("options", {})),
        )

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "seed": self.seed,
            "samples": self.samples,
            "dim": self.dim,
            "tolerances": dict(self.tolerances),
            "inputs": list(self.inputs),
            "options": {k: _jsonable(v) for k, v in self.options.items()},
        }


def _jsonable(v):
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if hasattr(v, "tolist"):
        return v.tolist()
    return v


@dataclass(frozen=True)
class CheckRecord:
    """One verified quantity: value vs target, with MC error bars when
    the check is statistical (NaN std_error/z_score marks exact checks)."""

    name: str
    value: float
    target: float
    std_error: float
    z_score: float
    passed: bool

    def to_dict(self) -> dict:
        # non-finite statistics (exact checks) serialize as JSON null
        def num(v):
            return v if math.isfinite(v) else None

        return {
            "name": self.name,
            "value": num(self.value),
            "target": num(self.target),
            "std_error": num(self.std_error),
            "z_score": num(self.z_score),
            "pass": self.passed,
        }


def exact_record(name: str, value: float, target: float, tol: float) -> CheckRecord:
    """Record for a deterministic identity: pass iff |value - target| <= tol."""
    return CheckRecord(
        name=name,
        value=float(value),
        target=float(target),
        std_error=math.nan,
        z_score=math.nan,
        passed=abs(float(value) - float(target)) <= tol,
    )


def bound_record(name: str, value: float, bound: float) -> CheckRecord:
    """Record for a one-sided check: pass iff value <= bound."""
    return CheckRecord(
        name=name,
        value=float(value),
        target=float(bound),
        std_error=math.nan,
        z_score=math.nan,
        passed=float(value) <= float(bound),
    )


def mc_record(name: str, est, z_max: float) -> CheckRecord:
    """Record for a Monte-Carlo estimate: pass iff |z| <= z_max."""
    return CheckRecord(
        name=name,
        value=est.value,
        target=est.target,
        std_error=est.std_error,
        z_score=est.z_score,
        passed=abs(est.z_score) <= z_max,
    )


@dataclass
class Report:
    command: str
    config: dict
    records: list
    overall_pass: bool
    duration_s: float
    extras: dict = field(default_factory=dict)
    schema: int = SCHEMA_VERSION

    def to_dict(self) -> dict:
        doc = {
            "schema": self.schema,
            "command": self.command,
            "config": self.config,
            "records": [r.to_dict() for r in self.records],
            "overall_pass": self.overall_pass,
            "duration_s": self.duration_s,
        }
        if self.extras:
            doc["extras"] = self.extras
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def payload_json(self) -> str:
        """Deterministic part only (no duration), for reproducibility
        comparisons."""
        doc = self.to_dict()
        del doc["duration_s"]
        return json.dumps(doc)


def build_report(
    command: str, config: ExperimentConfig, records, duration_s: float, extras=None
) -> Report:
    records = list(records)
    return Report(
        command=command,
        config=config.to_dict(),
        records=records,
        overall_pass=all(r.passed for r in records),
        duration_s=duration_s,
        extras=dict(extras or {}),
    )


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def report_csv_text(report: Report) -> str:
    """Fixed-column CSV of the check records."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in report.records:
        writer.writerow(
            [r.name, _fmt(r.value), _fmt(r.target), _fmt(r.std_error), _fmt(r.z_score),
             "true" if r.passed else "false"]
        )
    return buf.getvalue()


def emit_csv(report: Report, path) -> None:
    with open(path, "w") as fh:
        fh.write(report_csv_text(report))


def parse_csv_records(text: str):
    """Re-parse a report CSV; numeric fields recover the exact doubles."""
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if tuple(header) != CSV_COLUMNS:
        raise ConfigError(f"unexpected CSV header {header}")
    out = []
    for row in reader:
        out.append(
            CheckRecord(
                name=row[0],
                value=float(row[1]),
                target=float(row[2]),
                std_error=float(row[3]),
                z_score=float(row[4]),
                passed=row[5] == "true",
            )
        )
    return out
