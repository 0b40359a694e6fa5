"""Evaluation of law terms and statements on a poset with a star table."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Optional

from ..order import (
    Poset,
    PosetError,
    eq1,
    eq2,
    le1,
    le2,
    lower_cone,
    max_of,
    min_of,
    pointwise_le,
    upper_cone,
)
from ..pseudo import NoBottom, StarTable
from .syntax import (
    And,
    Cone,
    Const,
    Extremal,
    Implies,
    Not,
    Or,
    Rel,
    Star,
    Statement,
    Term,
    Var,
    free_vars,
)


class UnboundVariable(PosetError):
    pass


class NoTop(PosetError):
    pass


class StarUnavailable(PosetError):
    pass


def eval_term(P: Poset, T: Optional[StarTable], env: Mapping[str, int], t: Term) -> int:
    """Denotation of ``t`` as an element bitmask."""
    if isinstance(t, Var):
        try:
            return 1 << env[t.name]
        except KeyError:
            raise UnboundVariable(t.name) from None
    if isinstance(t, Const):
        if t.value == 0:
            if P.bottom is None:
                raise NoBottom(P.name)
            return 1 << P.bottom
        if P.top is None:
            raise NoTop(P.name)
        return 1 << P.top
    if isinstance(t, Star):
        if T is None:
            raise StarUnavailable("term uses * but no star table was given")
        return T.image(eval_term(P, T, env, t.arg))
    if isinstance(t, Cone):
        union = 0
        for a in t.args:
            union |= eval_term(P, T, env, a)
        return lower_cone(P, union) if t.op == "L" else upper_cone(P, union)
    if isinstance(t, Extremal):
        inner = eval_term(P, T, env, t.arg)
        return max_of(P, inner) if t.op == "Max" else min_of(P, inner)
    raise TypeError(t)


_RELATIONS = {
    "=": lambda P, A, B: A == B,
    "=1": eq1,
    "=2": eq2,
    "<=": pointwise_le,
    "<=1": le1,
    "<=2": le2,
    "sub": lambda P, A, B: A & ~B == 0,
}


def _eval(P, T, env, s: Statement) -> tuple[bool, Optional[tuple[int, int]]]:
    """Truth value plus the sides of the atom that decided it."""
    if isinstance(s, Rel):
        lhs = eval_term(P, T, env, s.lhs)
        rhs = eval_term(P, T, env, s.rhs)
        return _RELATIONS[s.op](P, lhs, rhs), (lhs, rhs)
    if isinstance(s, Not):
        ok, sides = _eval(P, T, env, s.arg)
        return not ok, sides
    if isinstance(s, And):
        sides = None
        for a in s.args:
            ok, sides = _eval(P, T, env, a)
            if not ok:
                return False, sides
        return True, sides
    if isinstance(s, Or):
        sides = None
        for a in s.args:
            ok, sides = _eval(P, T, env, a)
            if ok:
                return True, sides
        return False, sides
    if isinstance(s, Implies):
        ok, sides = _eval(P, T, env, s.lhs)
        if not ok:
            return True, sides
        return _eval(P, T, env, s.rhs)
    raise TypeError(s)


def eval_statement(P: Poset, T: Optional[StarTable], env: Mapping[str, int], s: Statement) -> bool:
    return _eval(P, T, env, s)[0]


@dataclass(frozen=True)
class CheckResult:
    holds: bool
    checked: int
    counterexample: Optional[dict[str, int]] = None
    lhs: Optional[int] = None
    rhs: Optional[int] = None

    def render(self, P: Poset) -> str:
        if self.holds:
            return f"HOLDS checked={self.checked}"
        at = ",".join(f"{v}={P.labels[e]}" for v, e in self.counterexample.items())
        return f"FAILS at {at} lhs={P.fmt(self.lhs)} rhs={P.fmt(self.rhs)}"


def statement_vars(s: Statement) -> list[str]:
    return sorted(free_vars(s))


def check_statement(P: Poset, T: Optional[StarTable], s: Statement) -> CheckResult:
    """Evaluate ``s`` under every assignment, lexicographically; stop at the first failure."""
    names = statement_vars(s)
    checked = 0
    for values in itertools.product(range(P.n), repeat=len(names)):
        env = dict(zip(names, values))
        checked += 1
        ok, sides = _eval(P, T, env, s)
        if not ok:
            lhs, rhs = sides
            return CheckResult(False, checked, env, lhs, rhs)
    return CheckResult(True, checked)


def check_at(P: Poset, T: Optional[StarTable], s: Statement, env: Mapping[str, int]) -> CheckResult:
    """Evaluate ``s`` under one given assignment."""
    missing = [v for v in statement_vars(s) if v not in env]
    if missing:
        raise UnboundVariable(", ".join(missing))
    env = {v: env[v] for v in statement_vars(s)}
    ok, sides = _eval(P, T, env, s)
    if ok:
        return CheckResult(True, 1)
    return CheckResult(False, 1, env, *sides)
