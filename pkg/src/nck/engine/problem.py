"""Coincidence problems: manifolds, map data and asserted hypotheses, parsed from JSON."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

from ..abelian import FgAbGroup, IntMatrix
from ..fpgroups import FpGroup, PresentationError, abelianization, todd_coxeter
from ..values import Unknown


class ProblemError(ValueError):
    """Invalid problem input; ``field`` names the offending JSON path."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


PAIR_KINDS = ("general", "root", "self")
FIELDS = {"R": 1, "C": 2, "H": 4}
TARGET_FACTS = (
    "fibration_with_section",       # total space of a Serre fibration with a section, positive-dim fiber and base
    "fibers_over_infinite_pi1",     # fibers over a manifold with infinite fundamental group
    "nontrivial_covering_total_space",
    "pi1_abelian",
)
ASSERT_KEYS = ("omega_sharp_nonzero", "omega_tilde_nonzero", "not_coincidence_producing", "x_m_vanishes")
MAP_KEYS = (
    "difference", "difference_af2", "f1", "f2", "h1", "h1_f1", "h1_f2", "pi1_f1", "pi1_f2",
    "degrees", "index_vector", "f1_homotopic_f2", "f1_homotopic_af2", "class_is_zero",
    "nielsen_number",
)


def _torus_group(n: int) -> FpGroup:
    gens = tuple(f"x{i + 1}" for i in range(n))
    rels = tuple((i + 1, j + 1, -(i + 1), -(j + 1)) for i in range(n) for j in range(i + 1, n))
    return FpGroup(gens, rels)


def _product_group(groups: list[FpGroup]) -> FpGroup:
    gens, rels, offsets = [], [], []
    for k, G in enumerate(groups):
        off = len(gens)
        offsets.append(off)
        gens.extend(f"{g}_{k + 1}" for g in G.generators)
        rels.extend(tuple(x + off if x > 0 else x - off for x in r) for r in G.relators)
    for a in range(len(groups)):
        for b in range(a + 1, len(groups)):
            for i in range(groups[a].ngens):
                for j in range(groups[b].ngens):
                    x, y = offsets[a] + i + 1, offsets[b] + j + 1
                    rels.append((x, y, -x, -y))
    return FpGroup(tuple(gens), tuple(rels))


@dataclass(frozen=True)
class Target:
    """The target manifold ``N``."""

    kind: str
    dim: int
    compact: bool = True
    euler: int | None = None
    pi1: FpGroup | None = None
    pi1_order: int | float | None = None
    facts: frozenset = frozenset()
    group_order: int | None = None      # space forms: #G
    factors: tuple = ()
    field: str | None = None

    @property
    def is_circle(self) -> bool:
        return self.kind == "circle"

    @property
    def is_sphere(self) -> bool:
        return self.kind == "sphere"

    def space_form(self) -> tuple[int, int] | None:
        """``(n, #G)`` when the target is a space form ``S^n / G`` other than a sphere or circle."""
        if self.kind == "space_form":
            return self.dim, self.group_order
        if self.kind == "projective" and self.field == "R":
            return self.dim, 2
        return None

    def is_product(self) -> bool:
        return self.kind in ("product", "torus") and len([f for f in self.factors if f.dim > 0]) >= 2

    def to_json(self) -> dict:
        out: dict[str, Any] = {"kind": self.kind}
        if self.kind in ("sphere", "space_form", "torus", "generic"):
            out["n"] = self.dim
        if self.kind == "space_form":
            out["order"] = self.group_order
            if self.pi1 is not None:
                out["pi1"] = str(self.pi1)
        if self.kind == "projective":
            out["field"] = self.field
            out["n"] = self.dim // FIELDS[self.field]
        if self.kind == "product":
            out["factors"] = [f.to_json() for f in self.factors]
        if self.kind == "generic":
            out["compact"] = self.compact
            out["euler"] = self.euler
            if self.pi1 is not None:
                out["pi1"] = str(self.pi1)
            if self.pi1_order is not None and self.pi1 is None:
                out["pi1_order"] = "infinite" if self.pi1_order == math.inf else self.pi1_order
            out["facts"] = sorted(self.facts)
        return out


@dataclass(frozen=True)
class Domain:
    """The source manifold ``M`` (closed and connected)."""

    kind: str
    dim: int
    h1: FgAbGroup | None = None
    pi1: FpGroup | None = None
    base: Target | None = None

    @property
    def is_sphere(self) -> bool:
        return self.kind == "sphere"

    def to_json(self) -> dict:
        out: dict[str, Any] = {"kind": self.kind, "m": self.dim}
        if self.kind == "product_with_sphere":
            out["base"] = self.base.to_json()
        if self.kind == "generic":
            if self.h1 is not None:
                out["h1"] = self.h1.to_dict()
            if self.pi1 is not None:
                out["pi1"] = str(self.pi1)
        return out


@dataclass(frozen=True)
class Problem:
    domain: Domain
    target: Target
    pair: str = "general"
    map_data: dict = field(default_factory=dict)
    assertions: dict = field(default_factory=dict)

    @property
    def m(self) -> int:
        return self.domain.dim

    @property
    def n(self) -> int:
        return self.target.dim

    def to_json(self) -> dict:
        return {"domain": self.domain.to_json(), "target": self.target.to_json(), "pair": self.pair,
                "map_data": dict(self.map_data), "assert": dict(self.assertions)}

    def swapped(self) -> Problem:
        """The problem for ``(f_2, f_1)``; only meaningful for general pairs."""
        md = dict(self.map_data)
        for a, b in (("f1", "f2"), ("h1_f1", "h1_f2"), ("pi1_f1", "pi1_f2")):
            if a in md or b in md:
                md[a], md[b] = md.get(b), md.get(a)
                for k in (a, b):
                    if md[k] is None:
                        del md[k]
        if "degrees" in md:
            md["degrees"] = list(reversed(md["degrees"]))
        if "difference" in md:
            md["difference"] = [-x for x in md["difference"]]
        if "h1" in md:
            md["h1"] = str(-_matrix("map_data.h1", md["h1"]))
        md.pop("difference_af2", None)
        md.pop("f1_homotopic_af2", None)
        asserts = dict(self.assertions)
        if isinstance(asserts.get("not_coincidence_producing"), list):
            asserts["not_coincidence_producing"] = list(reversed(asserts["not_coincidence_producing"]))
        return Problem(self.domain, self.target, self.pair, md, asserts)


# ---------------------------------------------------------------- parsing


def _obj(where, v) -> dict:
    if not isinstance(v, dict):
        raise ProblemError(where, "expected an object")
    return v


def _int(where, v, lo=None) -> int:
    if not isinstance(v, int) or isinstance(v, bool):
        raise ProblemError(where, f"expected an integer, found {v!r}")
    if lo is not None and v < lo:
        raise ProblemError(where, f"must be at least {lo}, found {v}")
    return v


def _bool(where, v) -> bool:
    if not isinstance(v, bool):
        raise ProblemError(where, f"expected true or false, found {v!r}")
    return v


def _reject_unknown(where, obj, allowed):
    extra = sorted(set(obj) - set(allowed))
    if extra:
        raise ProblemError(f"{where}.{extra[0]}", f"unknown key (allowed: {', '.join(sorted(allowed))})")


def _presentation(where, v) -> FpGroup:
    if not isinstance(v, str):
        raise ProblemError(where, "expected a presentation string like 'gens: a; rels: a^5'")
    try:
        return FpGroup.parse(v)
    except PresentationError as exc:
        raise ProblemError(where, str(exc)) from exc


def _matrix(where, v) -> IntMatrix:
    try:
        if isinstance(v, str):
            return IntMatrix.parse(v)
        if isinstance(v, list) and v and all(isinstance(r, list) for r in v):
            return IntMatrix.from_rows(v)
        if isinstance(v, list) and all(isinstance(x, int) for x in v):
            return IntMatrix.from_rows([v], len(v))
    except (ValueError, TypeError) as exc:
        raise ProblemError(where, f"bad integer matrix: {exc}") from exc
    raise ProblemError(where, "expected a matrix as 'a b; c d' or a list of rows")


def _group_order(G: FpGroup) -> int | float | None:
    table = todd_coxeter(G, [], 10 ** 5)
    if table.complete:
        return table.cosets
    if abelianization(G).free_rank:
        return math.inf
    return None


def parse_target(obj, where="target") -> Target:
    obj = _obj(where, obj)
    kind = obj.get("kind")
    if kind == "circle":
        _reject_unknown(where, obj, {"kind"})
        return Target("circle", 1, True, 0, FpGroup(("t",)), math.inf)
    if kind == "sphere":
        _reject_unknown(where, obj, {"kind", "n"})
        n = _int(f"{where}.n", obj.get("n"), 1)
        if n == 1:
            return parse_target({"kind": "circle"}, where)
        return Target("sphere", n, True, 1 + (-1) ** n, FpGroup(()), 1)
    if kind == "torus":
        _reject_unknown(where, obj, {"kind", "n"})
        n = _int(f"{where}.n", obj.get("n"), 1)
        if n == 1:
            return parse_target({"kind": "circle"}, where)
        circle = parse_target({"kind": "circle"})
        return Target("torus", n, True, 0, _torus_group(n), math.inf, factors=(circle,) * n)
    if kind == "space_form":
        _reject_unknown(where, obj, {"kind", "n", "order", "pi1"})
        n = _int(f"{where}.n", obj.get("n"), 1)
        G = _presentation(f"{where}.pi1", obj["pi1"]) if "pi1" in obj else None
        order = obj.get("order")
        if order is not None:
            order = _int(f"{where}.order", order, 1)
        if G is not None:
            computed = _group_order(G)
            if computed is None or computed == math.inf:
                raise ProblemError(f"{where}.pi1", "space-form groups must be finite; enumeration did not close")
            if order is not None and order != computed:
                raise ProblemError(f"{where}.order", f"declared order {order} but the presentation has order {computed}")
            order = computed
        if order is None:
            raise ProblemError(where, "space_form needs 'order' or 'pi1'")
        if n == 1:
            # S^1 / G is again a circle
            return parse_target({"kind": "circle"}, where)
        if n % 2 == 0 and order > 2:
            raise ProblemError(f"{where}.order", "an even-dimensional sphere only admits free actions of groups of order <= 2")
        if G is None and order == 1:
            G = FpGroup(())
        if G is None and order == 2:
            G = FpGroup.cyclic(2)
        euler = 0 if n % 2 else 2 // order
        return Target("space_form", n, True, euler, G, order, group_order=order)
    if kind == "projective":
        _reject_unknown(where, obj, {"kind", "field", "n"})
        fld = obj.get("field")
        if fld not in FIELDS:
            raise ProblemError(f"{where}.field", f"expected one of R, C, H, found {fld!r}")
        k = _int(f"{where}.n", obj.get("n"), 1)
        dim = k * FIELDS[fld]
        if k == 1:
            return parse_target({"kind": "sphere", "n": dim}, where)
        if fld == "R":
            return Target("projective", dim, True, 1 if k % 2 == 0 else 0, FpGroup.cyclic(2), 2, field="R")
        return Target("projective", dim, True, k + 1, FpGroup(()), 1, field=fld)
    if kind == "product":
        _reject_unknown(where, obj, {"kind", "factors"})
        raw = obj.get("factors")
        if not isinstance(raw, list) or len(raw) < 2:
            raise ProblemError(f"{where}.factors", "expected a list of at least two factor manifolds")
        factors = tuple(parse_target(f, f"{where}.factors[{i}]") for i, f in enumerate(raw))
        euler = None if any(f.euler is None for f in factors) else math.prod(f.euler for f in factors)
        groups = [f.pi1 for f in factors]
        pi1 = _product_group(groups) if all(g is not None for g in groups) else None
        orders = [f.pi1_order for f in factors]
        order = None if any(o is None for o in orders) else math.prod(orders)
        return Target("product", sum(f.dim for f in factors), all(f.compact for f in factors), euler,
                      pi1, order, factors=factors)
    if kind == "generic":
        _reject_unknown(where, obj, {"kind", "n", "pi1", "pi1_order", "compact", "euler", "facts"})
        n = _int(f"{where}.n", obj.get("n"), 1)
        compact = _bool(f"{where}.compact", obj.get("compact", True))
        euler = obj.get("euler")
        if euler is not None:
            euler = _int(f"{where}.euler", euler)
            if not compact:
                raise ProblemError(f"{where}.euler", "only closed manifolds carry an Euler number here")
        G = _presentation(f"{where}.pi1", obj["pi1"]) if "pi1" in obj else None
        order = _group_order(G) if G is not None else None
        if "pi1_order" in obj:
            raw_order = obj["pi1_order"]
            declared = math.inf if raw_order == "infinite" else _int(f"{where}.pi1_order", raw_order, 1)
            if order is not None and order != declared:
                raise ProblemError(f"{where}.pi1_order", f"declared {raw_order} but the presentation gives {order}")
            order = declared
        facts = obj.get("facts", [])
        if not isinstance(facts, list):
            raise ProblemError(f"{where}.facts", "expected a list")
        for i, f in enumerate(facts):
            if f not in TARGET_FACTS:
                raise ProblemError(f"{where}.facts[{i}]", f"unknown fact {f!r} (known: {', '.join(TARGET_FACTS)})")
        return Target("generic", n, compact, euler, G, order, frozenset(facts))
    raise ProblemError(f"{where}.kind", f"unknown target kind {kind!r}")


def parse_domain(obj, where="domain") -> Domain:
    obj = _obj(where, obj)
    kind = obj.get("kind")
    if kind == "sphere":
        _reject_unknown(where, obj, {"kind", "m"})
        m = _int(f"{where}.m", obj.get("m"), 1)
        if m == 1:
            return Domain("sphere", 1, FgAbGroup(1), FpGroup(("s",)))
        return Domain("sphere", m, FgAbGroup(), FpGroup(()))
    if kind == "torus":
        _reject_unknown(where, obj, {"kind", "m"})
        m = _int(f"{where}.m", obj.get("m"), 1)
        return Domain("torus", m, FgAbGroup(m), _torus_group(m))
    if kind == "product_with_sphere":
        _reject_unknown(where, obj, {"kind", "m", "base"})
        m = _int(f"{where}.m", obj.get("m"), 1)
        base = parse_target(obj.get("base"), f"{where}.base")
        if m <= base.dim:
            raise ProblemError(f"{where}.m", f"total dimension must exceed the base dimension {base.dim}")
        if not base.compact:
            raise ProblemError(f"{where}.base", "the domain must be closed, so its base must be compact")
        pi1, h1 = base.pi1, None
        if pi1 is not None:
            if m - base.dim == 1:
                pi1 = _product_group([pi1, FpGroup(("s",))])
            h1 = abelianization(pi1)
        return Domain("product_with_sphere", m, h1, pi1, base)
    if kind == "generic":
        _reject_unknown(where, obj, {"kind", "m", "h1", "pi1"})
        m = _int(f"{where}.m", obj.get("m"), 1)
        pi1 = _presentation(f"{where}.pi1", obj["pi1"]) if "pi1" in obj else None
        h1 = None
        if "h1" in obj:
            h = _obj(f"{where}.h1", obj["h1"])
            try:
                h1 = FgAbGroup(_int(f"{where}.h1.free_rank", h.get("free_rank", 0), 0), tuple(h.get("torsion", [])))
            except ValueError as exc:
                raise ProblemError(f"{where}.h1.torsion", str(exc)) from exc
            if pi1 is not None and abelianization(pi1) != h1:
                raise ProblemError(f"{where}.h1", f"does not match the abelianized fundamental group {abelianization(pi1)}")
        elif pi1 is not None:
            h1 = abelianization(pi1)
        return Domain("generic", m, h1, pi1)
    raise ProblemError(f"{where}.kind", f"unknown domain kind {kind!r}")


def _check_map_data(md: dict, domain: Domain, target: Target, pair: str) -> dict:
    where = "map_data"
    _reject_unknown(where, md, MAP_KEYS)
    out = dict(md)
    for key in ("f1_homotopic_f2", "f1_homotopic_af2", "class_is_zero"):
        if key in md:
            _bool(f"{where}.{key}", md[key])
    for key in ("difference", "difference_af2", "f1", "f2"):
        if key in md:
            v = md[key]
            if not isinstance(v, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in v):
                raise ProblemError(f"{where}.{key}", "expected a list of integer coordinates")
    if "degrees" in md:
        v = md["degrees"]
        if not (isinstance(v, list) and len(v) == 2 and all(isinstance(x, int) for x in v)):
            raise ProblemError(f"{where}.degrees", "expected two integers [d1, d2]")
    if "nielsen_number" in md:
        _int(f"{where}.nielsen_number", md["nielsen_number"], 0)
    for key in ("h1", "h1_f1", "h1_f2"):
        if key in md:
            M = _matrix(f"{where}.{key}", md[key])
            if domain.h1 is not None and M.cols != domain.h1.ngens:
                raise ProblemError(f"{where}.{key}", f"has {M.cols} columns but H_1 of the domain has {domain.h1.ngens} generators")
    for key in ("pi1_f1", "pi1_f2"):
        if key in md:
            v = md[key]
            if not isinstance(v, list) or not all(isinstance(w, str) for w in v):
                raise ProblemError(f"{where}.{key}", "expected a list of words, one per domain generator")
            if domain.pi1 is None or target.pi1 is None:
                raise ProblemError(f"{where}.{key}", "needs presentations of both fundamental groups")
            if len(v) != domain.pi1.ngens:
                raise ProblemError(f"{where}.{key}", f"{len(v)} images for {domain.pi1.ngens} domain generators")
            for i, w in enumerate(v):
                try:
                    target.pi1.word(w)
                except PresentationError as exc:
                    raise ProblemError(f"{where}.{key}[{i}]", str(exc)) from exc
    if "index_vector" in md:
        v = md["index_vector"]
        if not isinstance(v, list) or not all(isinstance(e, list) for e in v):
            raise ProblemError(f"{where}.index_vector", "expected a list of coordinate vectors, one per element of pi_1(N)")
    if pair == "root":
        for key in ("f2", "h1_f2", "pi1_f2"):
            if key in md:
                raise ProblemError(f"{where}.{key}", "the second map is constant in the root case")
    if pair == "self":
        for key in ("f2", "h1_f2", "pi1_f2", "difference", "difference_af2", "h1"):
            if key in md:
                raise ProblemError(f"{where}.{key}", "not meaningful for a self-coincidence pair")
        if md.get("f1_homotopic_f2") is False:
            raise ProblemError(f"{where}.f1_homotopic_f2", "a self-coincidence pair is homotopic by definition")
    return out


def _check_assertions(a: dict) -> dict:
    where = "assert"
    _reject_unknown(where, a, ASSERT_KEYS)
    for key in ("omega_sharp_nonzero", "omega_tilde_nonzero", "x_m_vanishes"):
        if key in a and a[key] is not None:
            _bool(f"{where}.{key}", a[key])
    if "not_coincidence_producing" in a:
        v = a["not_coincidence_producing"]
        if isinstance(v, bool):
            v = [v, v]
        if not (isinstance(v, list) and len(v) == 2 and all(x is None or isinstance(x, bool) for x in v)):
            raise ProblemError(f"{where}.not_coincidence_producing", "expected a boolean or a pair [f1, f2]")
    return {k: v for k, v in a.items() if v is not None}


def parse_problem(obj) -> Problem:
    """Validate a problem document and build a :class:`Problem`."""
    obj = _obj("problem", obj)
    _reject_unknown("problem", obj, {"domain", "target", "pair", "map_data", "assert", "name"})
    if "domain" not in obj:
        raise ProblemError("domain", "missing")
    if "target" not in obj:
        raise ProblemError("target", "missing")
    domain = parse_domain(obj["domain"])
    target = parse_target(obj["target"])
    pair = obj.get("pair", "general")
    if pair not in PAIR_KINDS:
        raise ProblemError("pair", f"expected one of {', '.join(PAIR_KINDS)}, found {pair!r}")
    md = _check_map_data(_obj("map_data", obj.get("map_data", {})), domain, target, pair)
    asserts = _check_assertions(_obj("assert", obj.get("assert", {})))
    return Problem(domain, target, pair, md, asserts)


def pi1_order(target: Target) -> int | float | Unknown:
    if target.pi1_order is not None:
        return target.pi1_order
    return Unknown("order of the fundamental group of the target is not known")
