"""Verification reports: formula value vs oracle value, case by case."""
import json
import math
from dataclasses import dataclass, field

CHECKS = ("abs", "le", "ge")


def case_passes(formula, oracle, tol, check="abs"):
    if check == "abs":
        return abs(formula - oracle) <= tol
    if check == "le":
        return formula <= oracle + tol
    if check == "ge":
        return formula >= oracle - tol
    raise ValueError(f"unknown check {check!r}")


def _clean(x):
    if isinstance(x, dict):
        return {str(k): _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    if hasattr(x, "tolist"):
        return x.tolist()
    return x


@dataclass
class VerificationReport:
    suite: str
    seed: int = 0
    cases: list = field(default_factory=list)
    wall_time_s: float = None
    min_pass_fraction: float = 1.0
    children: list = field(default_factory=list)

    def add(self, inputs, formula_value, oracle_value, tolerance, check="abs"):
        formula_value = float(formula_value)
        oracle_value = float(oracle_value)
        tolerance = float(tolerance)
        ok = case_passes(formula_value, oracle_value, tolerance, check)
        self.cases.append({
            "inputs": _clean(inputs),
            "formula_value": formula_value,
            "oracle_value": oracle_value,
            "tolerance": tolerance,
            "check": check,
            "pass": bool(ok),
        })
        return ok

    @property
    def n_passed(self):
        return sum(c["pass"] for c in self.cases)

    @property
    def own_passed(self):
        if not self.cases:
            return True
        return self.n_passed >= math.ceil(self.min_pass_fraction * len(self.cases) - 1e-9)

    @property
    def passed(self):
        return self.own_passed and all(c.passed for c in self.children)

    def summary(self):
        rows = [(self.suite, self.n_passed, len(self.cases), self.min_pass_fraction, self.own_passed)]
        for child in self.children:
            rows.extend(child.summary())
        return rows

    def to_dict(self):
        return {
            "suite": self.suite,
            "seed": self.seed,
            "passed": self.passed,
            "min_pass_fraction": self.min_pass_fraction,
            "cases": self.cases,
            "children": [c.to_dict() for c in self.children],
            "wall_time_s": self.wall_time_s,
        }

    @classmethod
    def from_dict(cls, d):
        return cls(
            suite=d["suite"],
            seed=d["seed"],
            cases=[dict(c) for c in d["cases"]],
            wall_time_s=d.get("wall_time_s"),
            min_pass_fraction=d.get("min_pass_fraction", 1.0),
            children=[cls.from_dict(c) for c in d.get("children", [])],
        )

    def to_json(self, indent=2):
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    def iter_cases(self):
        for c in self.cases:
            yield self.suite, c
        for child in self.children:
            yield from child.iter_cases()
