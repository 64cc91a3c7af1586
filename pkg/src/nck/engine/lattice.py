"""Monotone value domains for the invariants, with provenance bookkeeping.

Each invariant starts as "any value" and rules may only shrink its domain.
A domain is the set of finite values in ``[lo, hi]`` (optionally intersected
with an explicit finite set) plus possibly infinity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from ..values import Unknown

INF = math.inf
SLOTS = ("N", "N_sharp", "MCC", "MC", "R")
# Nielsen numbers and the component minimum are always finite for closed domains
FINITE_SLOTS = ("N", "N_sharp", "MCC")


class InputContradiction(ValueError):
    """The supplied data and assertions cannot all hold."""


class InternalInconsistency(RuntimeError):
    """Rules derived conflicting values from unconditional data: a bug."""


@dataclass(frozen=True)
class Dom:
    lo: int = 0
    hi: float = INF
    choices: frozenset | None = None
    inf_ok: bool = True

    def _finite_values(self):
        if self.choices is not None:
            return sorted(v for v in self.choices if self.lo <= v <= self.hi)
        if self.hi == INF:
            return None
        return list(range(self.lo, int(self.hi) + 1))

    def is_empty(self) -> bool:
        vals = self._finite_values()
        return vals == [] and not self.inf_ok

    def value(self):
        vals = self._finite_values()
        if vals is None:
            return None
        if len(vals) == 1 and not self.inf_ok:
            return vals[0]
        if not vals and self.inf_ok:
            return INF
        return None

    def min_value(self):
        vals = self._finite_values()
        if vals is None:
            return self.lo
        return vals[0] if vals else INF

    def max_value(self):
        """Largest possible value, infinity included."""
        if self.inf_ok:
            return INF
        vals = self._finite_values()
        if vals is None:
            return INF
        return vals[-1] if vals else -1

    def max_finite(self):
        vals = self._finite_values()
        if vals is None:
            return INF
        return vals[-1] if vals else -1

    def normalize(self) -> Dom:
        vals = self._finite_values()
        if vals is None:
            return self
        if not vals:
            return Dom(0, -1, frozenset(), self.inf_ok)
        choices = frozenset(vals) if self.choices is not None else None
        if choices is not None and len(vals) == vals[-1] - vals[0] + 1:
            choices = None
        return Dom(vals[0], vals[-1], choices, self.inf_ok)

    def at_most(self, k) -> Dom:
        """Finite and ``<= k`` (``k`` infinite only removes nothing)."""
        if k == INF:
            return self
        return Dom(self.lo, min(self.hi, k), self.choices, False).normalize()

    def finite_at_most(self, k) -> Dom:
        """Finite values are ``<= k``; infinity stays allowed."""
        if k == INF:
            return self
        return Dom(self.lo, min(self.hi, k), self.choices, self.inf_ok).normalize()

    def at_least(self, k) -> Dom:
        if k == INF:
            return Dom(0, -1, frozenset(), self.inf_ok)
        return Dom(max(self.lo, k), self.hi, self.choices, self.inf_ok).normalize()

    def one_of(self, values) -> Dom:
        values = set(values)
        finite = frozenset(v for v in values if v != INF)
        choices = finite if self.choices is None else self.choices & finite
        return Dom(self.lo, self.hi, choices, self.inf_ok and INF in values).normalize()

    def equal(self, v) -> Dom:
        return self.one_of({v})

    def finite(self) -> Dom:
        return Dom(self.lo, self.hi, self.choices, False).normalize()

    def describe(self) -> str:
        vals = self._finite_values()
        parts = []
        if vals is None:
            parts.append(f"at least {self.lo}")
        elif vals:
            if self.choices is not None or len(vals) <= 2:
                parts.append("one of {" + ", ".join(map(str, vals)) + "}")
            else:
                parts.append(f"between {vals[0]} and {vals[-1]}")
        if self.inf_ok and vals is not None:
            parts.append("or infinite")
        return " ".join(parts) if parts else "no value"


@dataclass
class Firing:
    rule: str
    ref: str
    conditional_on: frozenset = frozenset()


@dataclass
class State:
    """Current domains plus the trail of rules that narrowed them."""

    doms: dict = field(default_factory=lambda: {s: Dom(inf_ok=s not in FINITE_SLOTS) for s in SLOTS})
    sources: dict = field(default_factory=lambda: {s: frozenset() for s in SLOTS})
    reasons: dict = field(default_factory=dict)
    firings: list = field(default_factory=list)
    changed: bool = False

    def narrow(self, slot: str, op: str, arg, rule, sources=frozenset(), assumptions=frozenset()):
        """Apply ``Dom.<op>(arg)`` to ``slot`` on behalf of ``rule``.

        ``sources`` are user inputs the conclusion depends on (used to
        classify conflicts); ``assumptions`` are the subset that are unverified
        hypotheses and make the conclusion conditional.
        """
        old = self.doms[slot]
        fn = getattr(old, op)
        new = fn() if arg is None else fn(arg)
        if new == old:
            return
        involved = self.sources[slot] | frozenset(sources) | frozenset(assumptions)
        if new.is_empty():
            detail = (f"rule '{rule.id}' requires {slot} {op.replace('_', ' ')} {_fmt(arg)}, "
                      f"but it is already {old.describe()}")
            if involved:
                raise InputContradiction(f"{detail} (inputs involved: {', '.join(sorted(involved))})")
            raise InternalInconsistency(detail)
        self.doms[slot] = new
        self.sources[slot] = involved
        self.changed = True
        self._record(rule, assumptions)

    def _record(self, rule, assumptions):
        for f in self.firings:
            if f.rule == rule.id:
                f.conditional_on = f.conditional_on | frozenset(assumptions)
                return
        self.firings.append(Firing(rule.id, rule.ref, frozenset(assumptions)))

    def value(self, slot):
        return self.doms[slot].value()

    def known(self, slot) -> bool:
        return self.value(slot) is not None

    def note(self, slot: str, reason: str):
        self.reasons.setdefault(slot, reason)

    def result(self, slot):
        v = self.value(slot)
        if v is not None:
            return v
        dom = self.doms[slot]
        reason = self.reasons.get(slot)
        bounds = dom.describe()
        if reason:
            return Unknown(f"{reason}; {bounds}" if bounds != "at least 0" else reason)
        return Unknown(f"no applicable rule determines it; {bounds}")


def _fmt(arg) -> str:
    if arg is None:
        return ""
    if isinstance(arg, (set, frozenset)):
        return "{" + ", ".join(sorted("infinite" if v == INF else str(v) for v in arg)) + "}"
    return "infinite" if arg == INF else str(arg)
