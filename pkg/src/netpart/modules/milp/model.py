from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Mapping

import numpy as np

from src.netpart.exception import InputError


class VarKind(str, Enum):
    BINARY = "binary"
    CONTINUOUS = "continuous"


class Sense(str, Enum):
    LE = "<="
    EQ = "="
    GE = ">="


@dataclass(frozen=True)
class Variable:
    name: str
    kind: VarKind
    lb: float
    ub: float
    obj: float = 0.0


@dataclass(frozen=True)
class Constraint:
    coefficients: Mapping[int, float]
    sense: Sense
    rhs: float
    name: str = ""

    def activity(self, values) -> float:
        return sum(coef * float(values[k]) for k, coef in self.coefficients.items())

    def violation(self, values) -> float:
        """Amount by which `values` violates the row (<= 0 when satisfied)."""
        lhs = self.activity(values)
        if self.sense is Sense.LE:
            return lhs - self.rhs
        if self.sense is Sense.GE:
            return self.rhs - lhs
        return abs(lhs - self.rhs)


@dataclass(frozen=True)
class StandardForm:
    """Dense arrays of a model: rows A x (sense) b, bounds, costs."""
    A: np.ndarray
    senses: tuple[Sense, ...]
    b: np.ndarray
    c: np.ndarray
    lb: np.ndarray
    ub: np.ndarray
    offset: float


@dataclass
class MipModel:
    """Minimization model over binary and bounded continuous variables."""
    name: str = "model"
    variables: list[Variable] = field(default_factory=list)
    constraints: list[Constraint] = field(default_factory=list)
    objective_offset: float = 0.0

    def add_variable(self, name: str, kind: VarKind = VarKind.CONTINUOUS,
                     lb: float = 0.0, ub: float = 1.0, obj: float = 0.0) -> int:
        if kind is VarKind.BINARY:
            lb, ub = 0.0, 1.0
        if not (math.isfinite(lb) and math.isfinite(ub)):
            raise InputError(f"variable {name} needs finite bounds, got [{lb}, {ub}]")
        if lb > ub:
            raise InputError(f"variable {name} has empty bounds [{lb}, {ub}]")
        self.variables.append(Variable(name, kind, float(lb), float(ub), float(obj)))
        return len(self.variables) - 1

    def add_constraint(self, coefficients: Mapping[int, float], sense: Sense, rhs: float,
                       name: str = "") -> int:
        merged: dict[int, float] = {}
        for k, coef in coefficients.items():
            if not 0 <= k < len(self.variables):
                raise InputError(f"constraint {name} references unknown variable {k}")
            if coef != 0.0:
                merged[k] = merged.get(k, 0.0) + float(coef)
        self.constraints.append(Constraint(merged, Sense(sense), float(rhs), name))
        return len(self.constraints) - 1

    def set_objective(self, k: int, coefficient: float) -> None:
        self.variables[k] = replace(self.variables[k], obj=float(coefficient))

    def fix(self, k: int, value: float) -> None:
        self.variables[k] = replace(self.variables[k], lb=float(value), ub=float(value))

    @property
    def num_variables(self) -> int:
        return len(self.variables)

    @property
    def num_constraints(self) -> int:
        return len(self.constraints)

    @property
    def binary_indices(self) -> np.ndarray:
        return np.array([k for k, v in enumerate(self.variables) if v.kind is VarKind.BINARY], dtype=int)

    def copy(self) -> "MipModel":
        return MipModel(self.name, list(self.variables), list(self.constraints), self.objective_offset)

    def objective_value(self, values) -> float:
        return self.objective_offset + sum(v.obj * float(values[k]) for k, v in enumerate(self.variables))

    def to_standard_form(self) -> StandardForm:
        n, m = len(self.variables), len(self.constraints)
        A = np.zeros((m, n))
        for i, row in enumerate(self.constraints):
            for k, coef in row.coefficients.items():
                A[i, k] = coef
        return StandardForm(
            A=A,
            senses=tuple(row.sense for row in self.constraints),
            b=np.array([row.rhs for row in self.constraints], dtype=float),
            c=np.array([v.obj for v in self.variables], dtype=float),
            lb=np.array([v.lb for v in self.variables], dtype=float),
            ub=np.array([v.ub for v in self.variables], dtype=float),
            offset=self.objective_offset,
        )


def append_rows(form: StandardForm, rows: list[Constraint]) -> StandardForm:
    if not rows:
        return form
    extra = np.zeros((len(rows), form.A.shape[1]))
    for i, row in enumerate(rows):
        for k, coef in row.coefficients.items():
            extra[i, k] = coef
    return StandardForm(
        A=np.vstack([form.A, extra]),
        senses=form.senses + tuple(row.sense for row in rows),
        b=np.concatenate([form.b, [row.rhs for row in rows]]),
        c=form.c, lb=form.lb, ub=form.ub, offset=form.offset,
    )


def _term(coef: float, name: str) -> str:
    sign = "-" if coef < 0 else "+"
    mag = abs(coef)
    return f"{sign} {name}" if mag == 1.0 else f"{sign} {mag:g} {name}"


def dump_lp(model: MipModel) -> str:
    """LP-file-like text for debugging; not a compatibility promise."""
    lines = [f"\\ {model.name}", "Minimize"]
    terms = [_term(v.obj, v.name) for v in model.variables if v.obj != 0.0]
    if model.objective_offset:
        terms.append(f"{'+' if model.objective_offset >= 0 else '-'} {abs(model.objective_offset):g}")
    lines.append(" obj: " + (" ".join(terms) if terms else "0"))
    lines.append("Subject To")
    for i, row in enumerate(model.constraints):
        body = " ".join(_term(c, model.variables[k].name) for k, c in sorted(row.coefficients.items()))
        lines.append(f" {row.name or f'r{i}'}: {body or '0'} {row.sense.value} {row.rhs:g}")
    lines.append("Bounds")
    for v in model.variables:
        if v.kind is VarKind.CONTINUOUS:
            lines.append(f" {v.lb:g} <= {v.name} <= {v.ub:g}")
    binaries = [v.name for v in model.variables if v.kind is VarKind.BINARY]
    if binaries:
        lines.append("Binaries")
        lines.append(" " + " ".join(binaries))
    lines.append("End")
    return "\n".join(lines) + "\n"
