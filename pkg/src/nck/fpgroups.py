"""
Finitely presented groups: words, Todd-Coxeter coset enumeration,
abelianization, subgroup indices and twisted conjugacy classes.

Words are tuples of nonzero ints: generator ``i`` (0-based) is ``i + 1`` and
its inverse is ``-(i + 1)``. The text form is whitespace-separated generator
names with optional exponents, e.g. ``"a b a^-1 b^-1"`` or ``"(a b)^3"``.

>>> G = FpGroup.parse("gens: x, y; rels: x^4, x^2 y^-2, y^-1 x y x")
>>> todd_coxeter(G, []).cosets
8
>>> abelianization(G)
FgAbGroup(free_rank=0, torsion=(2, 2))
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Sequence

from .abelian import INF, FgAbGroup, IntMatrix, cokernel, image_index
from .values import Unknown

Word = tuple[int, ...]

DEFAULT_MAX_COSETS = 10 ** 6


class PresentationError(ValueError):
    """A word or presentation that does not parse."""


def free_reduce(word: Sequence[int]) -> Word:
    out: list[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def invert(word: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(word))


def cyclic_reduce(word: Sequence[int]) -> Word:
    w = list(free_reduce(word))
    while len(w) > 1 and w[0] == -w[-1]:
        w = w[1:-1]
    return tuple(w)


_TOKEN = re.compile(r"\s*(\(|\)|\^\s*\{?\s*-?\s*\d+\s*\}?|[A-Za-z_][A-Za-z0-9_']*|1)")


def parse_word(text: str, generators: Sequence[str]) -> Word:
    """Parse ``text`` into a freely reduced word over ``generators``.

    Adjacent names may be written without spaces when that is unambiguous
    (the longest declared name wins), so ``"ab"`` means ``a b`` unless ``ab``
    is itself a generator. ``1`` and the empty string denote the identity.
    """
    index = {g: i + 1 for i, g in enumerate(generators)}
    names = sorted(generators, key=len, reverse=True)
    text = text.strip()
    # each level is a list of atoms; an atom is a list of letters
    stack: list[list[list[int]]] = [[]]
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise PresentationError(f"cannot parse word {text!r} at position {pos}")
        tok, pos = m.group(1), m.end()
        atoms = stack[-1]
        if tok == "(":
            stack.append([])
        elif tok == ")":
            if len(stack) == 1:
                raise PresentationError(f"unbalanced ')' in {text!r}")
            group = stack.pop()
            stack[-1].append([x for a in group if a for x in a])
        elif tok.startswith("^"):
            if not atoms or atoms[-1] is None:
                raise PresentationError(f"exponent without a base in {text!r}")
            e = int(re.sub(r"[\s^{}]", "", tok))
            base = atoms[-1]
            atoms[-1] = base * e if e >= 0 else list(invert(base)) * (-e)
            atoms.append(None)  # blocks a second exponent on the same atom
        elif tok == "1":
            atoms.append([])
        else:
            rest = tok
            while rest:
                for g in names:
                    if rest.startswith(g):
                        atoms.append([index[g]])
                        rest = rest[len(g):]
                        break
                else:
                    raise PresentationError(
                        f"unknown generator in {tok!r} (declared: {', '.join(generators)})")
    if len(stack) != 1:
        raise PresentationError(f"unbalanced '(' in {text!r}")
    return free_reduce([x for a in stack[0] if a for x in a])


def format_word(word: Sequence[int], generators: Sequence[str]) -> str:
    if not word:
        return "1"
    parts, i = [], 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        name, e = generators[abs(word[i]) - 1], (j - i) * (1 if word[i] > 0 else -1)
        parts.append(name if e == 1 else f"{name}^{e}")
        i = j
    return " ".join(parts)


@dataclass(frozen=True)
class FpGroup:
    """A finite presentation ``<generators | relators>``."""

    generators: tuple[str, ...]
    relators: tuple[Word, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        if len(set(self.generators)) != len(self.generators):
            raise PresentationError("duplicate generator names")
        n = len(self.generators)
        rels = []
        for r in self.relators:
            for x in r:
                if not isinstance(x, int) or x == 0 or abs(x) > n:
                    raise PresentationError(f"relator {r} uses an undeclared generator")
            r = free_reduce(r)
            if r:
                rels.append(r)
        object.__setattr__(self, "relators", tuple(rels))

    @classmethod
    def parse(cls, text: str) -> FpGroup:
        """Parse ``"gens: a, b; rels: a^4, a^2 b^-2"``."""
        sections = _sections(text)
        if "gens" not in sections:
            raise PresentationError(f"presentation {text!r} has no 'gens:' section")
        gens = [g.strip() for g in sections["gens"].split(",") if g.strip()]
        rels = [parse_word(w, gens) for w in _split_words(sections.get("rels", ""))]
        return cls(tuple(gens), tuple(rels))

    @classmethod
    def cyclic(cls, n: int, name: str = "g") -> FpGroup:
        return cls((name,), ((1,) * n,) if n else ())

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def word(self, text: str) -> Word:
        return parse_word(text, self.generators)

    def words(self, text: str) -> list[Word]:
        return [self.word(w) for w in _split_words(text)]

    def exponent_matrix(self) -> IntMatrix:
        """Rows are generators, columns are relators, entries exponent sums."""
        cols = [exponent_vector(r, self.ngens) for r in self.relators]
        return IntMatrix.from_columns(cols, self.ngens)

    def __str__(self):
        rels = ", ".join(format_word(r, self.generators) for r in self.relators)
        return f"gens: {', '.join(self.generators)}; rels: {rels}"


def _sections(text: str) -> dict[str, str]:
    out = {}
    for part in text.split(";"):
        if not part.strip():
            continue
        if ":" not in part:
            raise PresentationError(f"section {part.strip()!r} lacks a 'key:' prefix")
        key, _, value = part.partition(":")
        out[key.strip().lower()] = value
    return out


def _split_words(text: str) -> list[str]:
    return [w for w in (s.strip() for s in text.split(",")) if w]


def exponent_vector(word: Sequence[int], ngens: int) -> list[int]:
    v = [0] * ngens
    for x in word:
        v[abs(x) - 1] += 1 if x > 0 else -1
    return v


@dataclass(frozen=True)
class GroupHom:
    """A homomorphism between presented groups, by images of generators."""

    source: FpGroup
    target: FpGroup
    images: tuple[Word, ...]

    def __post_init__(self):
        if len(self.images) != self.source.ngens:
            raise PresentationError(
                f"{len(self.images)} generator images given, source has {self.source.ngens} generators")
        object.__setattr__(self, "images", tuple(free_reduce(w) for w in self.images))

    def apply(self, word: Sequence[int]) -> Word:
        out: list[int] = []
        for x in word:
            img = self.images[abs(x) - 1]
            out.extend(img if x > 0 else invert(img))
        return free_reduce(out)


# --------------------------------------------------------------------------
# Todd-Coxeter


@dataclass(frozen=True)
class CosetTable:
    """Right action of the group on the cosets of a subgroup.

    ``action[c][j]`` is the image of coset ``c`` under column ``j``; column
    ``2 i`` is generator ``i`` and ``2 i + 1`` its inverse. Coset 0 is the
    subgroup itself. For an overflowed enumeration ``action`` is empty.
    """

    cosets: int
    action: tuple[tuple[int, ...], ...]
    complete: bool

    @property
    def status(self) -> str:
        return "complete" if self.complete else "overflow"

    def act(self, coset: int, word: Sequence[int]) -> int:
        for x in word:
            coset = self.action[coset][_col(x)]
        return coset


def _col(x: int) -> int:
    return 2 * (abs(x) - 1) + (x < 0)


class _Overflow(Exception):
    pass


class _Enumerator:
    """HLT coset enumeration with union-find coincidence processing."""

    def __init__(self, ngens: int, max_cosets: int):
        self.ncols = 2 * ngens
        self.table: list[list[int | None]] = [[None] * self.ncols]
        self.parent = [0]
        self.live = 1
        self.max_cosets = max_cosets

    def find(self, c: int) -> int:
        p = self.parent
        root = c
        while p[root] != root:
            root = p[root]
        while p[c] != root:
            p[c], c = root, p[c]
        return root

    def define(self, c: int, col: int) -> int:
        if self.live >= self.max_cosets:
            raise _Overflow
        d = len(self.table)
        self.table.append([None] * self.ncols)
        self.parent.append(d)
        self.live += 1
        self.table[c][col] = d
        self.table[d][col ^ 1] = c
        return d

    def _merge(self, a: int, b: int, queue: list[int]):
        a, b = self.find(a), self.find(b)
        if a == b:
            return
        if a > b:
            a, b = b, a
        self.parent[b] = a
        self.live -= 1
        queue.append(b)

    def coincidence(self, a: int, b: int):
        queue: list[int] = []
        self._merge(a, b, queue)
        i = 0
        table = self.table
        while i < len(queue):
            e = queue[i]
            i += 1
            for col in range(self.ncols):
                f = table[e][col]
                if f is None:
                    continue
                table[f][col ^ 1] = None
                e1, f1 = self.find(e), self.find(f)
                if table[e1][col] is not None:
                    self._merge(f1, table[e1][col], queue)
                elif table[f1][col ^ 1] is not None:
                    self._merge(e1, table[f1][col ^ 1], queue)
                else:
                    table[e1][col] = f1
                    table[f1][col ^ 1] = e1

    def scan_and_fill(self, c: int, cols: Sequence[int]):
        table = self.table
        f, b = c, c
        i, j = 0, len(cols) - 1
        while True:
            while i <= j and table[f][cols[i]] is not None:
                f = table[f][cols[i]]
                i += 1
            if i > j:
                if f != c:
                    self.coincidence(f, c)
                return
            while j >= i and table[b][cols[j] ^ 1] is not None:
                b = table[b][cols[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                table[f][cols[i]] = b
                table[b][cols[i] ^ 1] = f
                return
            self.define(f, cols[i])

    def is_live(self, c: int) -> bool:
        return self.parent[c] == c


def todd_coxeter(G: FpGroup, subgroup_gens: Sequence[Sequence[int]],
                 max_cosets: int = DEFAULT_MAX_COSETS) -> CosetTable:
    """Enumerate the cosets of ``<subgroup_gens>`` in ``G``.

    Returns an overflowed table when more than ``max_cosets`` cosets would be
    alive at once.
    """
    if max_cosets < 1:
        raise ValueError("max_cosets must be at least 1")
    en = _Enumerator(G.ngens, max_cosets)
    rel_cols = [[_col(x) for x in cyclic_reduce(r)] for r in G.relators]
    rel_cols = [r for r in rel_cols if r]
    try:
        for w in subgroup_gens:
            w = free_reduce(w)
            if w:
                en.scan_and_fill(0, [_col(x) for x in w])
        c = 0
        while c < len(en.table):
            for r in rel_cols:
                if not en.is_live(c):
                    break
                en.scan_and_fill(c, r)
            if en.is_live(c):
                for col in range(en.ncols):
                    if en.table[c][col] is None:
                        en.define(c, col)
            c += 1
    except _Overflow:
        return CosetTable(0, (), False)
    return _standardize(en)


def _standardize(en: _Enumerator) -> CosetTable:
    """Renumber live cosets in breadth-first order from coset 0."""
    order = {0: 0}
    queue = [0]
    for c in queue:
        for col in range(en.ncols):
            d = en.find(en.table[c][col])
            if d not in order:
                order[d] = len(queue)
                queue.append(d)
    action = tuple(tuple(order[en.find(en.table[c][col])] for col in range(en.ncols)) for c in queue)
    return CosetTable(len(queue), action, True)


def abelianization(G: FpGroup) -> FgAbGroup:
    return cokernel(G.exponent_matrix())


def abelianized_index(G: FpGroup, H_gens: Sequence[Sequence[int]]) -> int | float:
    """Index of the image of ``<H_gens>`` in the abelianization of ``G``.

    This is a lower bound for ``[G : H]``; an infinite value certifies an
    infinite index.
    """
    cols = [exponent_vector(w, G.ngens) for w in H_gens]
    A = IntMatrix.from_columns(cols, G.ngens).hstack(G.exponent_matrix())
    return image_index(A)


def subgroup_index(G: FpGroup, H_gens: Sequence[Sequence[int]],
                   budget: int = DEFAULT_MAX_COSETS) -> int | float | Unknown:
    """``[G : <H_gens>]`` as an int, ``math.inf``, or ``Unknown``.

    Infinity is only reported through the abelianized certificate, so it is
    never wrong; an enumeration that runs out of budget gives ``Unknown``.
    """
    if abelianized_index(G, H_gens) == INF:
        return INF
    table = todd_coxeter(G, H_gens, budget)
    if table.complete:
        return table.cosets
    return Unknown(f"coset enumeration budget of {budget} cosets exhausted")


# --------------------------------------------------------------------------
# finite groups as multiplication tables


@dataclass(frozen=True)
class FiniteGroupTable:
    """A finite group by its multiplication table.

    ``generators`` optionally records which elements the presentation
    generators became, and ``words`` a word for every element, so presented
    data can be evaluated in the table.
    """

    order: int
    mult: tuple[tuple[int, ...], ...]
    inv: tuple[int, ...]
    identity: int = 0
    generators: tuple[int, ...] = ()
    words: tuple[Word, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if len(self.mult) != self.order or any(len(r) != self.order for r in self.mult):
            raise ValueError("multiplication table is not order x order")
        if len(self.inv) != self.order:
            raise ValueError("inverse map has the wrong length")

    def mul(self, a: int, b: int) -> int:
        return self.mult[a][b]

    def evaluate(self, word: Sequence[int]) -> int:
        if not self.generators:
            raise ValueError("table carries no generator elements")
        g = self.identity
        for x in word:
            e = self.generators[abs(x) - 1]
            g = self.mult[g][e if x > 0 else self.inv[e]]
        return g

    def is_abelian(self) -> bool:
        m = self.mult
        return all(m[a][b] == m[b][a] for a in range(self.order) for b in range(a))

    def validate(self):
        """Check the group axioms exhaustively; raise ``ValueError`` if broken."""
        import numpy as np

        n, e = self.order, self.identity
        M = np.array(self.mult, dtype=np.int64)
        idx = np.arange(n)
        if not (M[e] == idx).all() or not (M[:, e] == idx).all():
            raise ValueError(f"{e} is not a two-sided identity")
        inv = np.array(self.inv)
        if not (M[idx, inv] == e).all() or not (M[inv, idx] == e).all():
            raise ValueError("inverse map is wrong")
        for a in range(n):
            # (a b) c == a (b c) for all b, c
            lhs = M[M[a]]
            rhs = M[a][M]
            if not (lhs == rhs).all():
                b, c = map(int, np.argwhere(lhs != rhs)[0])
                raise ValueError(f"associativity fails at ({a}, {b}, {c})")

    def subgroup_generated(self, elems: Sequence[int]) -> set[int]:
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            g = frontier.pop()
            for s in elems:
                h = self.mult[g][s]
                if h not in seen:
                    seen.add(h)
                    frontier.append(h)
        return seen


def realize_finite(G: FpGroup, budget: int = DEFAULT_MAX_COSETS) -> FiniteGroupTable | Unknown:
    """Regular representation of ``G`` from the coset table of the trivial subgroup."""
    table = todd_coxeter(G, [], budget)
    if not table.complete:
        return Unknown(f"coset enumeration of {G} exceeded {budget} cosets")
    n = table.cosets
    # a word for each element along a spanning tree from the identity
    words: list[Word | None] = [None] * n
    words[0] = ()
    queue = [0]
    for c in queue:
        for gi in range(G.ngens):
            for sign in (1, -1):
                d = table.action[c][_col(sign * (gi + 1))]
                if words[d] is None:
                    words[d] = words[c] + (sign * (gi + 1),)
                    queue.append(d)
    # element j acts on cosets by right multiplication; (i * j) = i . g_j
    perms = []
    for w in words:
        perms.append([table.act(c, w) for c in range(n)])
    mult = tuple(tuple(perms[j][i] for j in range(n)) for i in range(n))
    inv = [0] * n
    for i in range(n):
        inv[i] = mult[i].index(0)
    gens = tuple(table.action[0][2 * i] for i in range(G.ngens))
    return FiniteGroupTable(n, mult, tuple(inv), 0, gens, tuple(words))


class HomomorphismError(ValueError):
    """A map between group tables that does not respect multiplication."""


def check_homomorphism(G: FiniteGroupTable, phi: Sequence[int], H: FiniteGroupTable | None = None):
    H = G if H is None else H
    if len(phi) != G.order:
        raise HomomorphismError(f"map has {len(phi)} entries, group has order {G.order}")
    for x in phi:
        if not 0 <= x < H.order:
            raise HomomorphismError(f"map value {x} is not an element of the target")
    for a in range(G.order):
        for b in range(G.order):
            if phi[G.mult[a][b]] != H.mult[phi[a]][phi[b]]:
                raise HomomorphismError(
                    f"not a homomorphism at the pair ({a}, {b}): phi({a}*{b}) = {phi[G.mult[a][b]]} "
                    f"but phi({a})*phi({b}) = {H.mult[phi[a]][phi[b]]}")


def endomorphism_from_images(G: FiniteGroupTable, images: Sequence[int]) -> list[int]:
    """Extend generator images to a full element array (unchecked)."""
    if not G.words:
        raise ValueError("table carries no element words")
    if len(images) != len(G.generators):
        raise ValueError(f"{len(images)} images for {len(G.generators)} generators")
    out = []
    for w in G.words:
        g = G.identity
        for x in w:
            e = images[abs(x) - 1]
            g = G.mult[g][e if x > 0 else G.inv[e]]
        out.append(g)
    return out


def twisted_orbit_count(G: FiniteGroupTable, pairs: Sequence[tuple[int, int]]) -> int:
    """Orbits of ``alpha -> a alpha b^-1`` over the given ``(a, b)`` pairs."""
    parent = list(range(G.order))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    classes = G.order
    for a, b in pairs:
        binv = G.inv[b]
        for alpha in range(G.order):
            beta = G.mult[G.mult[a][alpha]][binv]
            ra, rb = find(alpha), find(beta)
            if ra != rb:
                parent[rb] = ra
                classes -= 1
    return classes


def reidemeister_count(G: FiniteGroupTable, phi1: Sequence[int], phi2: Sequence[int]) -> int:
    """Number of twisted conjugacy classes ``alpha ~ phi1(g) alpha phi2(g)^-1``."""
    check_homomorphism(G, phi1)
    check_homomorphism(G, phi2)
    return twisted_orbit_count(G, [(phi1[g], phi2[g]) for g in range(G.order)])
