"""The rule base: each rule narrows invariant domains when its hypotheses hold."""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Callable

from ..abelian import IntMatrix, image_index
from ..fpgroups import FiniteGroupTable, format_word, realize_finite, subgroup_index, twisted_orbit_count
from ..spheres import SphereTable
from ..values import Unknown
from .lattice import INF, InputContradiction, State
from .problem import Problem, ProblemError

FOUR = ("N", "N_sharp", "MCC", "MC")
ASSUMPTION_PREFIXES = ("assert.", "map_data.nielsen_number")


@dataclass(frozen=True)
class Rule:
    id: str
    ref: str
    fn: Callable


RULES: list[Rule] = []


def rule(rule_id: str, ref: str):
    def deco(fn):
        RULES.append(Rule(rule_id, ref, fn))
        return fn
    return deco


def _split(sources):
    sources = frozenset(sources)
    return sources, frozenset(s for s in sources if s.startswith(ASSUMPTION_PREFIXES))


# ------------------------------------------------------------------ context


class Context:
    """Derived facts about a problem, computed lazily and cached."""

    def __init__(self, problem: Problem, table: SphereTable, budget: int):
        self.p = problem
        self.table = table
        self.budget = budget
        self.md = problem.map_data
        self.asserts = problem.assertions
        self._cache: dict = {}

    @property
    def m(self):
        return self.p.m

    @property
    def n(self):
        return self.p.n

    def cached(fn):  # noqa: N805
        @functools.wraps(fn)
        def wrapper(self, *args):
            key = (fn.__name__,) + args
            if key not in self._cache:
                self._cache[key] = fn(self, *args)
            return self._cache[key]
        return wrapper

    # -- fundamental groups

    @cached
    def pi1_order(self):
        o = self.p.target.pi1_order
        return Unknown("order of the target's fundamental group is not known") if o is None else o

    @cached
    def pi1_table(self) -> FiniteGroupTable | Unknown:
        G = self.p.target.pi1
        if G is None:
            return Unknown("no presentation of the target's fundamental group")
        if self.pi1_order() == INF:
            return Unknown("the target's fundamental group is infinite")
        return realize_finite(G, self.budget)

    @cached
    def pi1_abelian(self) -> bool | None:
        t = self.p.target
        if "pi1_abelian" in t.facts or t.kind in ("circle", "torus", "sphere"):
            return True
        if t.pi1 is not None and t.pi1.ngens <= 1:
            return True
        T = self.pi1_table()
        if isinstance(T, FiniteGroupTable):
            return T.is_abelian()
        return None

    # -- map classes

    def _sphere_group(self):
        g = self.table.pi(self.m, self.n)
        return g

    def _coords(self, key):
        g = self._sphere_group()
        if isinstance(g, Unknown):
            raise ProblemError(f"map_data.{key}", f"pi_{self.m}(S^{self.n}) is outside the table range")
        v = self.md[key]
        if len(v) != g.ngens:
            raise ProblemError(f"map_data.{key}",
                               f"expected {g.ngens} coordinates for pi_{self.m}(S^{self.n}) = {g}, found {len(v)}")
        return g, g.reduce(v)

    @cached
    def sphere_difference(self):
        """Lifted class of ``[f1] - [f2]`` in ``pi_m(S^n)`` with its sources, or ``(None, ())``."""
        if not self.p.domain.is_sphere or self.m < 1:
            return None, frozenset()
        g = self._sphere_group()
        votes = []
        if "difference" in self.md:
            votes.append((self._coords("difference")[1], "map_data.difference"))
        if "f1" in self.md and (self.p.pair == "root" or "f2" in self.md):
            gg, a = self._coords("f1")
            b = self._coords("f2")[1] if "f2" in self.md else (0,) * gg.ngens
            votes.append((gg.add(a, gg.neg(b)), "map_data.f1"))
        if "degrees" in self.md and self.m == self.n and not isinstance(g, Unknown):
            d1, d2 = self.md["degrees"]
            votes.append(((d1 - d2,), "map_data.degrees"))
        if self.p.pair == "self" and not isinstance(g, Unknown):
            votes.append(((0,) * g.ngens, "pair"))
        if self.p.pair == "root" and "class_is_zero" in self.md and self.md["class_is_zero"] \
                and not isinstance(g, Unknown):
            votes.append(((0,) * g.ngens, "map_data.class_is_zero"))
        return _agree(votes, "the class of [f1] - [f2]")

    @cached
    def h1_difference(self):
        """``f1* - f2*`` on ``H_1`` as an integer matrix, with sources."""
        md = self.md
        votes = []
        if "h1" in md:
            votes.append((_matrix(md["h1"]), "map_data.h1"))
        if "h1_f1" in md and (self.p.pair == "root" or "h1_f2" in md):
            A = _matrix(md["h1_f1"])
            B = _matrix(md["h1_f2"]) if "h1_f2" in md else IntMatrix.zeros(A.rows, A.cols)
            if (A.rows, A.cols) != (B.rows, B.cols):
                raise ProblemError("map_data.h1_f2", "shape differs from map_data.h1_f1")
            votes.append((A - B, "map_data.h1_f1"))
        if "degrees" in md and self.p.target.is_circle and self.m == 1:
            d1, d2 = md["degrees"]
            votes.append((IntMatrix.from_rows([[d1 - d2]]), "map_data.degrees"))
        h1 = self.p.domain.h1
        if h1 is not None and h1.ngens == 0 and self.p.target.kind in ("circle", "torus"):
            votes.append((IntMatrix.zeros(self.n, 0), "domain"))
        if self.p.pair == "self" and h1 is not None and self.p.target.kind in ("circle", "torus"):
            votes.append((IntMatrix.zeros(self.n, h1.ngens), "pair"))
        if votes and self.p.target.kind in ("circle", "torus"):
            for M, src in votes:
                if M.rows != self.n:
                    raise ProblemError(src, f"expected {self.n} rows (rank of H_1 of the target)")
        value, sources = _agree(votes, "the induced map f1* - f2* on H_1")
        if value is not None and h1 is not None:
            f = h1.free_rank
            for j in range(f, value.cols):
                if any(value.column(j)):
                    raise InputContradiction(
                        f"{', '.join(sorted(sources))}: a homomorphism into the free group H_1(N) "
                        f"must vanish on the torsion generator {j} of H_1(M)")
        return value, sources

    @cached
    def homotopic(self):
        """Whether ``f1 ~ f2``, from every source that decides it; disagreement is a contradiction."""
        votes = []
        if self.p.pair == "self":
            votes.append((True, "pair"))
        if "f1_homotopic_f2" in self.md:
            votes.append((self.md["f1_homotopic_f2"], "map_data.f1_homotopic_f2"))
        if self.p.pair == "root" and "class_is_zero" in self.md:
            votes.append((self.md["class_is_zero"], "map_data.class_is_zero"))
        t = self.p.target
        classes_free = t.kind == "sphere" or (t.space_form() is not None and t.dim % 2 == 1)
        if self.p.domain.is_sphere and classes_free:
            diff, src = self.sphere_difference()
            if diff is not None:
                votes.append((not any(diff), ",".join(sorted(src))))
        if t.kind in ("circle", "torus"):
            D, src = self.h1_difference()
            if D is not None:
                votes.append((D.is_zero(), ",".join(sorted(src))))
        value, sources = _agree(votes, "whether f1 ~ f2")
        return value, sources

    @cached
    def af2_difference(self):
        """``[f1] - [a o f2]`` in ``pi_m(S^n)`` for sphere targets (``a`` antipodal)."""
        if self.p.target.kind != "sphere" or not self.p.domain.is_sphere:
            return None, frozenset()
        n, m = self.n, self.m
        votes = []
        if "difference_af2" in self.md:
            votes.append((self._coords("difference_af2")[1], "map_data.difference_af2"))
        g = self._sphere_group()
        if not isinstance(g, Unknown):
            if n % 2 == 1 or self.p.pair == "root":
                # a ~ id for odd n; a o const is constant
                diff, src = self.sphere_difference()
                if diff is not None:
                    votes.append((diff, ",".join(sorted(src))))
            elif "f1" in self.md and "f2" in self.md:
                a = self._coords("f1")[1]
                b = self._coords("f2")[1]
                # a_* is negation on suspension classes (right composition with a suspension is additive)
                if m == n or self.table.class_in_image_of_E(b, m, n, "all") is True:
                    votes.append((g.add(a, b), "map_data.f1"))
            elif "degrees" in self.md and m == n:
                d1, d2 = self.md["degrees"]
                votes.append(((d1 + d2,), "map_data.degrees"))
            elif self.p.pair == "self" and "f1" in self.md and (
                    m == n or self.table.class_in_image_of_E(self._coords("f1")[1], m, n, "all") is True):
                a = self._coords("f1")[1]
                votes.append((g.add(a, a), "map_data.f1"))
        return _agree(votes, "the class of [f1] - [a f2]")

    @cached
    def af2_homotopic(self):
        votes = []
        if "f1_homotopic_af2" in self.md:
            votes.append((self.md["f1_homotopic_af2"], "map_data.f1_homotopic_af2"))
        diff, src = self.af2_difference()
        if diff is not None:
            votes.append((not any(diff), ",".join(sorted(src))))
        if self.n % 2 == 1:
            h, hsrc = self.homotopic()
            if h is not None:
                votes.append((h, ",".join(sorted(hsrc))))
        return _agree(votes, "whether f1 ~ a f2")

    # -- hypotheses

    def asserted(self, key):
        v = self.asserts.get(key)
        return v, (frozenset({f"assert.{key}"}) if v is not None else frozenset())

    @cached
    def not_coincidence_producing(self, i: int):
        """Whether ``f_i`` is known not to be coincidence producing, with sources."""
        t = self.p.target
        if self.p.pair == "root" and i == 2:
            return True, frozenset()
        if not t.compact or t.euler == 0 or t.kind == "sphere" or "nontrivial_covering_total_space" in t.facts:
            return True, frozenset()
        raw = self.asserts.get("not_coincidence_producing")
        if raw is not None:
            if isinstance(raw, bool):
                raw = [raw, raw]
            if self.p.pair == "self":
                v = raw[0] if raw[0] is not None else raw[1]
            else:
                v = raw[i - 1]
            if v is not None:
                return v, frozenset({"assert.not_coincidence_producing"})
        return None, frozenset()

    def some_map_not_coincidence_producing(self):
        for i in (1, 2):
            v, src = self.not_coincidence_producing(i)
            if v:
                return True, src
        return None, frozenset()

    @cached
    def x_m_vanishes(self):
        """True when a vanishing criterion for ``X_m(N)`` applies; otherwise ``None``."""
        t, m, n = self.p.target, self.m, self.n
        derived = (
            m <= 2 * n - 3 or n <= 2 or m <= 3 or not t.compact
            or t.kind in ("sphere", "projective", "circle")
            or "fibration_with_section" in t.facts or t.is_product()
            or "fibers_over_infinite_pi1" in t.facts
            or (t.space_form() is not None and n >= 2)
        )
        v, src = self.asserted("x_m_vanishes")
        if derived:
            if v is False:
                raise InputContradiction(
                    "assert.x_m_vanishes: asserted false, but a vanishing criterion applies to this target")
            return True, frozenset()
        if v:
            return True, src
        return None, frozenset()

    # -- Reidemeister data

    @cached
    def root_index(self):
        """``b(f, *) = [pi_1(N) : f_*(pi_1(M))]`` as int, inf or Unknown."""
        t, d = self.p.target, self.p.domain
        order = self.pi1_order()
        if order == 1:
            return 1
        if d.pi1 is not None and d.pi1.ngens == 0:
            return order
        if "pi1_f1" in self.md:
            G = t.pi1
            return subgroup_index(G, [G.word(w) for w in self.md["pi1_f1"]], self.budget)
        if t.kind in ("circle", "torus") and "h1_f1" in self.md:
            return image_index(_matrix(self.md["h1_f1"]))
        if t.kind in ("circle", "torus") and "h1" in self.md:
            return image_index(_matrix(self.md["h1"]))
        if "degrees" in self.md and t.is_circle and self.m == 1:
            return image_index(IntMatrix.from_rows([[self.md["degrees"][0]]]))
        return Unknown("needs the induced map on fundamental groups (map_data.pi1_f1)")

    @cached
    def reidemeister(self):
        """``#pi_0 E(f1, f2)``, the number of Reidemeister classes."""
        t, d, md = self.p.target, self.p.domain, self.md
        order = self.pi1_order()
        if order == 1:
            return 1
        if self.p.pair == "root":
            return self.root_index()
        if d.pi1 is not None and d.pi1.ngens == 0:
            return order
        if t.kind in ("circle", "torus"):
            D, _ = self.h1_difference()
            if D is not None:
                return image_index(D)
            return Unknown("needs the induced maps on H_1 (map_data.h1, or h1_f1 and h1_f2)")
        T = self.pi1_table()
        if isinstance(T, FiniteGroupTable):
            pairs = self._pi1_pairs(T)
            if pairs is not None:
                return twisted_orbit_count(T, pairs)
            if self.p.pair == "self" and self.pi1_abelian():
                return T.order
            return Unknown("needs the induced maps on fundamental groups (map_data.pi1_f1, pi1_f2)")
        if isinstance(order, Unknown):
            return order
        return Unknown("Reidemeister classes of infinite non-abelian groups are not decided")

    def _pi1_pairs(self, T: FiniteGroupTable):
        md, G = self.md, self.p.target.pi1
        if "pi1_f1" not in md:
            return None
        im1 = self._images(T, "pi1_f1")
        if self.p.pair == "self":
            im2 = im1
        elif "pi1_f2" in md:
            im2 = self._images(T, "pi1_f2")
        else:
            return None
        return list(zip(im1, im2))

    def _images(self, T: FiniteGroupTable, key: str) -> list[int]:
        """Generator images in ``T``, checked against the domain relators."""
        G, D = self.p.target.pi1, self.p.domain.pi1
        images = [T.evaluate(G.word(w)) for w in self.md[key]]
        for rel in D.relators:
            g = T.identity
            for x in rel:
                e = images[abs(x) - 1]
                g = T.mul(g, e if x > 0 else T.inv[e])
            if g != T.identity:
                raise ProblemError(f"map_data.{key}",
                                   f"the domain relator {format_word(rel, D.generators)} does not map to the identity")
        return images


def _matrix(v) -> IntMatrix:
    if isinstance(v, str):
        return IntMatrix.parse(v)
    if v and isinstance(v[0], list):
        return IntMatrix.from_rows(v)
    return IntMatrix.from_rows([v], len(v))


def _agree(votes, what):
    if not votes:
        return None, frozenset()
    values = {v for v, _ in votes}
    sources = frozenset(s for _, src in votes for s in src.split(",") if s and s not in ("pair", "domain"))
    if len(values) > 1:
        detail = "; ".join(f"{src or 'structure'} gives {v}" for v, src in votes)
        raise InputContradiction(f"inconsistent data for {what}: {detail}")
    return votes[0][0], sources


# ------------------------------------------------------------------ helpers


def set_all(st: State, r: Rule, value, sources=frozenset()):
    src, assumed = _split(sources)
    for s in FOUR:
        st.narrow(s, "equal", value, r, src, assumed)


def put(st: State, slot, op, arg, r: Rule, sources=frozenset()):
    src, assumed = _split(sources)
    st.narrow(slot, op, arg, r, src, assumed)


def tie(st: State, slots, r: Rule, sources=frozenset()):
    """Make the given slots equal by intersecting their domains."""
    src, assumed = _split(sources)
    for a in slots:
        for b in slots:
            if a == b:
                continue
            da = st.doms[a]
            extra = st.sources[a]
            if not da.inf_ok:
                st.narrow(b, "finite", None, r, src | extra, assumed)
            st.narrow(b, "at_least", da.lo, r, src | extra, assumed)
            if da.max_finite() != INF:
                st.narrow(b, "finite_at_most", da.max_finite(), r, src | extra, assumed)
            if da.choices is not None:
                vals = set(da.choices) | ({INF} if da.inf_ok else set())
                st.narrow(b, "one_of", vals, r, src | extra, assumed)


# ------------------------------------------------------------------ rules
# Rules run in order of their ids; the solver repeats the pass until nothing changes.


@rule("chain.inequalities",
      "0 <= N <= N# <= MCC <= MC; MCC is at most #pi_0 E when n != 2; "
      "MC is at most #pi_0 E or infinite when (m, n) != (2, 2)")
def _chain(ctx: Context, st: State, r: Rule):
    order = ["N", "N_sharp", "MCC", "MC"]
    for a, b in zip(order, order[1:]):
        src = st.sources[a] | st.sources[b]
        put(st, b, "at_least", st.doms[a].min_value(), r, src)
        put(st, a, "at_most", st.doms[b].max_value(), r, src) if a != "MCC" or not st.doms[b].inf_ok else None
    # MCC = 0 means the pair is loose, so MC = 0 as well
    if st.value("MCC") == 0:
        put(st, "MC", "equal", 0, r, st.sources["MCC"])
    R = st.value("R")
    if R is not None and R != INF:
        src = st.sources["R"]
        if ctx.n != 2:
            put(st, "MCC", "at_most", R, r, src | st.sources["MCC"])
        if (ctx.m, ctx.n) != (2, 2):
            put(st, "MC", "finite_at_most", R, r, src | st.sources["MC"])


@rule("circle.image_index",
      "circle target: (f1* - f2*)(H_1(M)) = N# . H_1(S^1); all invariants vanish if f1 ~ f2; "
      "otherwise N = N# = MCC = #pi_0 E and MC = N for m = 1, infinite for m >= 2")
def _circle(ctx: Context, st: State, r: Rule):
    if not ctx.p.target.is_circle:
        return
    D, src = ctx.h1_difference()
    if D is None:
        h, hsrc = ctx.homotopic()
        if h:
            set_all(st, r, 0, hsrc)
        return
    idx = image_index(D)
    if idx == INF:
        set_all(st, r, 0, src)
        put(st, "R", "equal", INF, r, src)
        return
    for s in ("N", "N_sharp", "MCC", "R"):
        put(st, s, "equal", idx, r, src)
    put(st, "MC", "equal", idx if ctx.m == 1 else INF, r, src)


@rule("dimension.below_target",
      "m < n: a generic pair has no coincidences, so every invariant vanishes")
def _dimension(ctx: Context, st: State, r: Rule):
    if ctx.m < ctx.n:
        set_all(st, r, 0)


@rule("loose.sphere_domain_targets",
      "sphere domains: every pair is loose if N is not compact, if N != S^1 has infinite "
      "fundamental group, or if N is a product of positive-dimensional manifolds")
def _loose_targets(ctx: Context, st: State, r: Rule):
    if not ctx.p.domain.is_sphere:
        return
    t = ctx.p.target
    if (not t.compact or (ctx.pi1_order() == INF and not t.is_circle) or t.is_product()
            or ("fibers_over_infinite_pi1" in t.facts and ctx.m >= 2)):
        set_all(st, r, 0)


@rule("nielsen.equal_dimension",
      "m = n: the two Nielsen numbers agree with the classical Nielsen number")
def _equal_dimension(ctx: Context, st: State, r: Rule):
    if ctx.m == ctx.n:
        tie(st, ("N", "N_sharp"), r)


@rule("omega_sharp.nonzero",
      "if omega# != 0 (root, self, or sphere domain with a map that is not coincidence producing) "
      "then N# = #pi_0 E; for n != 2 also MCC = N#, and MC = N# whenever MC is finite")
def _omega_nonzero(ctx: Context, st: State, r: Rule):
    v, src = ctx.asserted("omega_sharp_nonzero")
    if v is not True:
        return
    put(st, "MCC", "at_least", 1, r, src)
    if ctx.p.pair == "root":
        b = ctx.root_index()
    elif ctx.p.pair == "self":
        b = 1
    elif ctx.p.domain.is_sphere:
        ncp, nsrc = ctx.some_map_not_coincidence_producing()
        if not ncp:
            return
        src = src | nsrc
        b = ctx.reidemeister()
    else:
        return
    if isinstance(b, Unknown) or b == INF:
        return
    put(st, "N_sharp", "equal", b, r, src)
    if ctx.n != 2:
        put(st, "MCC", "equal", b, r, src)
        put(st, "MC", "one_of", {b, INF}, r, src)


@rule("omega_sharp.vanishes",
      "omega# = 0 leaves no essential class, so N# = 0 (the converse is not used)")
def _omega_zero(ctx: Context, st: State, r: Rule):
    v, src = ctx.asserted("omega_sharp_nonzero")
    if v is False:
        put(st, "N_sharp", "equal", 0, r, src)


@rule("omega_tilde.nonzero",
      "if the stabilized invariant is nonzero (root, self, or sphere domain) then N = N#")
def _omega_tilde(ctx: Context, st: State, r: Rule):
    v, src = ctx.asserted("omega_tilde_nonzero")
    if v is True and (ctx.p.pair in ("root", "self") or ctx.p.domain.is_sphere):
        put(st, "N", "at_least", 1, r, src)
        tie(st, ("N", "N_sharp"), r, src)


@rule("reidemeister.count",
      "Reidemeister set: pi_1(N) modulo alpha ~ f1*(g) alpha f2*(g)^-1; "
      "in the root case its size is the index of f_*(pi_1(M)) in pi_1(N)")
def _reidemeister(ctx: Context, st: State, r: Rule):
    R = ctx.reidemeister()
    if isinstance(R, Unknown):
        st.note("R", R.reason)
        return
    sources = frozenset()
    if ctx.p.target.kind in ("circle", "torus"):
        sources = ctx.h1_difference()[1]
    put(st, "R", "equal", R, r, sources)


@rule("root.index",
      "root case: b = index of f_*(pi_1(M)) in pi_1(N); an infinite index or a noncompact "
      "target makes (f, *) loose; N# and N take only the values 0 and b")
def _root(ctx: Context, st: State, r: Rule):
    if ctx.p.pair != "root":
        return
    if not ctx.p.target.compact:
        set_all(st, r, 0)
        return
    b = ctx.root_index()
    if isinstance(b, Unknown):
        for s in ("N", "N_sharp", "MCC", "MC", "R"):
            st.note(s, b.reason)
        return
    if b == INF:
        set_all(st, r, 0)
        return
    put(st, "N_sharp", "one_of", {0, b}, r)
    put(st, "N", "one_of", {0, b}, r)


@rule("self.bounds",
      "self-coincidence: C(f, f) = M is connected so MCC <= 1, and N#, N take only the values 0 and 1")
def _self_bounds(ctx: Context, st: State, r: Rule):
    if ctx.p.pair != "self":
        return
    put(st, "MCC", "at_most", 1, r)
    put(st, "N_sharp", "one_of", {0, 1}, r)
    put(st, "N", "one_of", {0, 1}, r)


@rule("self.nowhere_zero_field",
      "self-coincidence into a target with a nowhere vanishing vector field "
      "(not compact, or Euler number 0) is loose")
def _self_loose(ctx: Context, st: State, r: Rule):
    t = ctx.p.target
    if ctx.p.pair == "self" and (not t.compact or t.euler == 0):
        set_all(st, r, 0)


@rule("self.projection_product",
      "projection N x S^k -> N with N closed, Euler number nonzero and commutative nontrivial "
      "fundamental group: N = N# = MCC = 1 and MC is infinite")
def _projection(ctx: Context, st: State, r: Rule):
    d, t = ctx.p.domain, ctx.p.target
    if ctx.p.pair != "self" or d.kind != "product_with_sphere":
        return
    if d.base.to_json() != t.to_json():
        return
    if not t.compact or not t.euler:
        return
    order = ctx.pi1_order()
    if isinstance(order, Unknown) or order == 1 or not ctx.pi1_abelian():
        return
    for s in ("N", "N_sharp", "MCC"):
        put(st, s, "equal", 1, r)
    put(st, "MC", "equal", INF, r)


@rule("self.sphere_domain_vanishing",
      "sphere domain, self pair: omega#(f, f) = 0 if pi_1(N) has a nontrivial proper subgroup, "
      "or if pi_1(N) != 0 and f is not coincidence producing; then N# = N = 0")
def _self_sphere(ctx: Context, st: State, r: Rule):
    if ctx.p.pair != "self" or not ctx.p.domain.is_sphere:
        return
    order = ctx.pi1_order()
    if isinstance(order, Unknown) or order == 1:
        return
    if order == INF or not _is_prime(order):
        put(st, "N_sharp", "equal", 0, r)
        return
    ncp, src = ctx.not_coincidence_producing(1)
    if ncp:
        put(st, "N_sharp", "equal", 0, r, src)


@rule("space_form.table",
      "odd-dimensional space form S^n/G, sphere domain: MCC = N# = 0 if f1 ~ f2 or m < n, #G if "
      "f1 !~ f2 and m > 1")
def _space_form(ctx: Context, st: State, r: Rule):
    sf = ctx.p.target.space_form()
    if sf is None or not ctx.p.domain.is_sphere or ctx.m < ctx.n:
        return
    n, order = sf
    if n % 2 == 0:
        for s in FOUR:
            st.note(s, "even-dimensional space-form targets are not covered by the closed-form rule")
        return
    h, hsrc = ctx.homotopic()
    if h is None:
        for s in FOUR:
            st.note(s, "needs the lifted class of [f1] - [f2] or a homotopy flag")
        return
    if h:
        set_all(st, r, 0, hsrc)
        return
    if ctx.m <= 1:
        return
    put(st, "N_sharp", "equal", order, r, hsrc)
    put(st, "MCC", "equal", order, r, hsrc)


@rule("space_form.mc_finiteness",
      "odd-dimensional space form S^n/G with n >= 3, sphere domain, f1 !~ f2: MC is finite "
      "(and then equals #G) exactly when the lifted difference lies in E(ker h) for #G >= 3, "
      "in E(pi_{m-1}(S^{n-1})) for #G <= 2")
def _space_form_mc(ctx: Context, st: State, r: Rule):
    sf = ctx.p.target.space_form()
    if sf is None or not ctx.p.domain.is_sphere or ctx.m < ctx.n:
        return
    n, order = sf
    if n % 2 == 0 or n < 3:
        return
    h, hsrc = ctx.homotopic()
    if h is not False:
        return
    diff, dsrc = ctx.sphere_difference()
    restrict = "all" if order <= 2 else "ker_h"
    inside = _membership(ctx, diff, restrict, "the lifted class of [f1] - [f2]")
    if isinstance(inside, Unknown):
        st.note("MC", inside.reason)
        return
    put(st, "MC", "equal", order if inside else INF, r, dsrc | hsrc)


@rule("sphere_target.antipodal",
      "sphere target: MCC = N# = 0 if f1 ~ a f2 (a antipodal), otherwise #pi_0 E (1 for n >= 2); "
      "MC <= 1 when [f1] - [a f2] lies in the suspension image and infinite otherwise")
def _sphere_target(ctx: Context, st: State, r: Rule):
    t = ctx.p.target
    if t.kind != "sphere" or not ctx.p.domain.is_sphere or ctx.m < ctx.n:
        return
    h, hsrc = ctx.af2_homotopic()
    if h is None:
        for s in FOUR:
            st.note(s, "needs [f1] - [a f2]: give f1 and f2, difference_af2, or f1_homotopic_af2")
        return
    if h:
        set_all(st, r, 0, hsrc)
        return
    put(st, "N_sharp", "equal", 1, r, hsrc)
    put(st, "MCC", "equal", 1, r, hsrc)
    diff, dsrc = ctx.af2_difference()
    inside = _membership(ctx, diff, "all", "the class of [f1] - [a f2]")
    if isinstance(inside, Unknown):
        st.note("MC", inside.reason)
        return
    put(st, "MC", "equal", 1 if inside else INF, r, dsrc | hsrc)


@rule("supplied.nielsen_number", "a Nielsen number N supplied with the problem")
def _supplied(ctx: Context, st: State, r: Rule):
    if "nielsen_number" in ctx.md:
        put(st, "N", "equal", ctx.md["nielsen_number"], r, {"map_data.nielsen_number"})


@rule("suspension.finite_mc_injective",
      "(m, n) != (2, 2), sphere domain, MC finite and E: pi_{m-1}(S^{n-1}) -> pi_m(S^n) injective: "
      "N# = MCC = MC <= #pi_1(N)")
def _finite_mc(ctx: Context, st: State, r: Rule):
    if not ctx.p.domain.is_sphere or (ctx.m, ctx.n) == (2, 2) or ctx.m < 1 or ctx.n < 1:
        return
    if st.doms["MC"].inf_ok:
        return
    inj = ctx.table.suspension_injective(ctx.m - 1, ctx.n - 1)
    if inj is not True:
        return
    src = st.sources["MC"]
    tie(st, ("N_sharp", "MCC", "MC"), r, src)
    order = ctx.pi1_order()
    if not isinstance(order, Unknown):
        put(st, "MC", "at_most", order, r, src)


@rule("suspension.index_vector",
      "E: pi_{m-1}(S^{n-1}) -> pi_m(S^n) injective: MC = N# = #{A in pi_1(N) : ind_A != 0}")
def _index_vector(ctx: Context, st: State, r: Rule):
    if "index_vector" not in ctx.md or not ctx.p.domain.is_sphere or ctx.m < 2 or ctx.n < 2:
        return
    vec = ctx.md["index_vector"]
    order = ctx.pi1_order()
    if isinstance(order, Unknown) or order == INF:
        st.note("MC", "index vectors need a finite fundamental group of known order")
        return
    if len(vec) != order:
        raise ProblemError("map_data.index_vector", f"expected {order} entries (one per element of pi_1(N)), found {len(vec)}")
    g = ctx.table.pi(ctx.m - 1, ctx.n - 1)
    if isinstance(g, Unknown):
        st.note("MC", g.reason)
        return
    for i, e in enumerate(vec):
        if len(e) != g.ngens:
            raise ProblemError(f"map_data.index_vector[{i}]",
                               f"expected {g.ngens} coordinates in pi_{ctx.m - 1}(S^{ctx.n - 1}) = {g}")
    inj = ctx.table.suspension_injective(ctx.m - 1, ctx.n - 1)
    if inj is not True:
        st.note("MC", "the suspension is not known to be injective here")
        return
    count = sum(1 for e in vec if not g.is_zero(e))
    src = {"map_data.index_vector"}
    for s in ("N_sharp", "MCC", "MC"):
        put(st, s, "equal", count, r, src)


@rule("suspension.trivial_source",
      "if pi_{m-1}(S^{n-1}) = 0 then a finite MC must be 0")
def _trivial_pi(ctx: Context, st: State, r: Rule):
    if ctx.m < 1 or ctx.n < 1:
        return
    g = ctx.table.pi(ctx.m - 1, ctx.n - 1)
    if not isinstance(g, Unknown) and g.is_trivial():
        put(st, "MC", "one_of", {0, INF}, r)


@rule("wecken.equal_dimension",
      "Wecken: for m = n != 2, N = N# = MCC = MC")
def _wecken(ctx: Context, st: State, r: Rule):
    if ctx.m == ctx.n != 2:
        put(st, "MC", "finite", None, r)
        tie(st, FOUR, r)


@rule("x_m.loose",
      "when X_m(N) = 0, a sphere-domain pair is loose if omega# = 0 and one map is not "
      "coincidence producing")
def _x_m(ctx: Context, st: State, r: Rule):
    if not ctx.p.domain.is_sphere:
        return
    v, src = ctx.asserted("omega_sharp_nonzero")
    if v is not False:
        return
    x, xsrc = ctx.x_m_vanishes()
    ncp, nsrc = ctx.some_map_not_coincidence_producing()
    if x and ncp:
        set_all(st, r, 0, src | xsrc | nsrc)


def _membership(ctx: Context, diff, restrict: str, what: str):
    """Whether a nonzero class lies in the suspension image.

    Without coordinates the answer is still forced when the image subgroup
    is trivial (never) or everything (always).
    """
    if diff is not None:
        return ctx.table.class_in_image_of_E(diff, ctx.m, ctx.n, restrict)
    image = ctx.table.image_of_E(ctx.m, ctx.n, restrict)
    if isinstance(image, Unknown):
        return image
    if image.is_trivial():
        return False
    if image.is_everything():
        return True
    return Unknown(f"needs {what} in pi_{ctx.m}(S^{ctx.n}) to test the suspension image")


def _is_prime(k: int) -> bool:
    if k < 2:
        return False
    return all(k % p for p in range(2, math.isqrt(k) + 1))


def rules_in_order() -> list[Rule]:
    return sorted(RULES, key=lambda r: r.id)
