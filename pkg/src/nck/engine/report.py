"""The engine's output record and its JSON form."""

from __future__ import annotations

import json
from dataclasses import dataclass, replace

from ..values import INF, Unknown, Value, format_value, value_from_json, value_to_json

REPORT_SLOTS = ("N", "N_sharp", "MCC", "MC")


@dataclass(frozen=True)
class InvariantReport:
    """Values of N, N#, MCC, MC and the Reidemeister count, with provenance.

    ``provenance`` lists ``(rule id, statement)`` pairs in firing order;
    ``conditional_on`` lists the user assertions that some conclusion used.
    """

    N: Value
    N_sharp: Value
    MCC: Value
    MC: Value
    reidemeister: Value
    provenance: tuple = ()
    conditional_on: tuple = ()
    table_version: str = ""

    def values(self) -> dict:
        return {s: getattr(self, s) for s in REPORT_SLOTS}

    def to_json(self) -> dict:
        out = {s: value_to_json(getattr(self, s)) for s in REPORT_SLOTS}
        out["reidemeister"] = value_to_json(self.reidemeister)
        out["provenance"] = [{"rule": r, "paper_ref": ref} for r, ref in self.provenance]
        out["conditional_on"] = list(self.conditional_on)
        out["table_version"] = self.table_version
        return out

    def dumps(self) -> str:
        """Canonical JSON text: stable key order, so equal reports give equal bytes."""
        return json.dumps(self.to_json(), sort_keys=True, indent=2)

    @classmethod
    def from_json(cls, obj: dict) -> InvariantReport:
        return cls(
            N=value_from_json(obj["N"]),
            N_sharp=value_from_json(obj["N_sharp"]),
            MCC=value_from_json(obj["MCC"]),
            MC=value_from_json(obj["MC"]),
            reidemeister=value_from_json(obj["reidemeister"]),
            provenance=tuple((p["rule"], p["paper_ref"]) for p in obj.get("provenance", [])),
            conditional_on=tuple(obj.get("conditional_on", [])),
            table_version=obj.get("table_version", ""),
        )

    @classmethod
    def loads(cls, text: str) -> InvariantReport:
        return cls.from_json(json.loads(text))

    def format_text(self) -> str:
        lines = [f"{label:<13} {format_value(getattr(self, s))}"
                 for s, label in (("N", "N"), ("N_sharp", "N#"), ("MCC", "MCC"), ("MC", "MC"))]
        lines.append(f"{'Reidemeister':<13} {format_value(self.reidemeister)}")
        if self.conditional_on:
            lines.append("conditional on: " + ", ".join(self.conditional_on))
        lines.append(f"table version: {self.table_version}")
        if self.provenance:
            lines.append("rules:")
            lines.extend(f"  {r}: {ref}" for r, ref in self.provenance)
        return "\n".join(lines)


def _times(d, v):
    if isinstance(v, Unknown):
        return v
    if v == 0:
        return 0
    return INF if d == INF or v == INF else d * v


def covering_transfer(lifted: InvariantReport, d, pair: str) -> InvariantReport:
    """Pass from a problem lifted to a connected ``d``-fold covering back down.

    Root pairs multiply the Nielsen numbers by ``d`` (with infinity times 0
    equal to 0); self pairs keep them. The component and point minima only
    obey lower bounds, so they are reported as such unless the bound is
    already infinite.
    """
    if pair not in ("root", "self"):
        raise ValueError("covering transfer applies to root and self-coincidence pairs only")
    if not (d == INF or (isinstance(d, int) and d >= 1)):
        raise ValueError("covering degree must be a positive integer or infinite")
    factor = d if pair == "root" else 1
    N = _times(factor, lifted.N)
    N_sharp = _times(factor, lifted.N_sharp)
    lower = _times(factor, lifted.MC)
    if lower == INF:
        MC = INF
    elif isinstance(lower, Unknown):
        MC = Unknown("lifted MC is not known")
    else:
        MC = Unknown(f"only the lower bound MC >= {lower} transfers from the covering")
    MCC = Unknown("MCC does not transfer from the covering without further hypotheses")
    prov = lifted.provenance + (
        ("covering.transfer",
         "root case: N# and N multiply by the covering degree; self case: they are unchanged; "
         "MC only satisfies MC(f, *) >= d MC(lift) and MC(f, f) >= MC(lift)"),)
    return replace(lifted, N=N, N_sharp=N_sharp, MCC=MCC, MC=MC,
                   reidemeister=Unknown("not transferred"), provenance=prov)
