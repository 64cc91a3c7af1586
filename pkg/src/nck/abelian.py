"""
Exact integer linear algebra for finitely generated abelian groups.

Everything here works on Python ints, so no entry can overflow. The central
tool is the Smith normal form, from which image indices, cokernels, integer
kernels and subgroup membership all follow:

>>> S, U, V = smith_normal_form(IntMatrix.from_rows([[2, 0], [0, 3]]))
>>> S.to_rows()
[[1, 0], [0, 6]]
>>> cokernel(IntMatrix.from_rows([[2, 0], [0, 3]]))
FgAbGroup(free_rank=0, torsion=(6,))
>>> image_index(IntMatrix.from_rows([[2, 1], [0, 2]]))
4
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

INF = math.inf


@dataclass(frozen=True)
class IntMatrix:
    """An integer matrix stored row-major.

    Matrices with zero rows or zero columns are allowed; they show up as
    homomorphisms from or into the trivial group.
    """

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries for a "
                f"{self.rows}x{self.cols} matrix, got {len(self.entries)}")
        for e in self.entries:
            if not isinstance(e, int) or isinstance(e, bool):
                raise TypeError(f"matrix entries must be ints, got {e!r}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged matrix rows")
        return cls(len(rows), cols, tuple(int(x) for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> IntMatrix:
        columns = [list(c) for c in columns]
        for c in columns:
            if len(c) != rows:
                raise ValueError(f"column {c} does not have {rows} entries")
        return cls.from_rows([[c[i] for c in columns] for i in range(rows)], len(columns))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def diagonal(cls, diag: Sequence[int], rows: int | None = None, cols: int | None = None) -> IntMatrix:
        rows = len(diag) if rows is None else rows
        cols = len(diag) if cols is None else cols
        out = [[0] * cols for _ in range(rows)]
        for i, d in enumerate(diag):
            out[i][i] = d
        return cls.from_rows(out, cols)

    @classmethod
    def parse(cls, text: str) -> IntMatrix:
        """Parse the inline syntax ``"a b; c d"`` (rows split on ``;``)."""
        rows = [r.split() for r in text.strip().split(";")]
        rows = [r for r in rows if r]
        try:
            return cls.from_rows([[int(x) for x in r] for r in rows])
        except ValueError as exc:
            raise ValueError(f"bad matrix {text!r}: {exc}") from None

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(self[i, j] for i in range(self.rows))

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> IntMatrix:
        return IntMatrix.from_columns(self.to_rows(), self.cols) if self.rows else IntMatrix.zeros(self.cols, 0)

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        a, b = self.to_rows(), other.to_rows()
        out = [[sum(a[i][k] * b[k][j] for k in range(self.cols)) for j in range(other.cols)]
               for i in range(self.rows)]
        return IntMatrix.from_rows(out, other.cols)

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.cols:
            raise ValueError(f"vector of length {len(v)} does not fit a {self.rows}x{self.cols} matrix")
        return tuple(sum(self[i, j] * v[j] for j in range(self.cols)) for i in range(self.rows))

    def __add__(self, other: IntMatrix) -> IntMatrix:
        self._same_shape(other)
        return IntMatrix(self.rows, self.cols, tuple(x + y for x, y in zip(self.entries, other.entries)))

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        self._same_shape(other)
        return IntMatrix(self.rows, self.cols, tuple(x - y for x, y in zip(self.entries, other.entries)))

    def __neg__(self) -> IntMatrix:
        return IntMatrix(self.rows, self.cols, tuple(-x for x in self.entries))

    def _same_shape(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("matrix shapes differ")

    def hstack(self, other: IntMatrix) -> IntMatrix:
        if self.rows != other.rows:
            raise ValueError("hstack needs equal row counts")
        a, b = self.to_rows(), other.to_rows()
        return IntMatrix.from_rows([x + y for x, y in zip(a, b)], self.cols + other.cols)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = self.to_rows()
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def __str__(self):
        return "; ".join(" ".join(str(x) for x in r) for r in self.to_rows())


def _as_matrix(A) -> IntMatrix:
    return A if isinstance(A, IntMatrix) else IntMatrix.from_rows(A)


def smith_normal_form(A) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(S, U, V)`` with ``S == U @ A @ V`` in Smith normal form.

    ``U`` and ``V`` are unimodular. The diagonal of ``S`` is nonnegative and
    each entry divides the next; zeros come last.
    """
    A = _as_matrix(A)
    m, n = A.rows, A.cols
    S = A.to_rows()
    U = IntMatrix.identity(m).to_rows()
    V = IntMatrix.identity(n).to_rows()

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (S, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        for M in (S, U):
            rd, rs = M[dst], M[src]
            for k in range(len(rd)):
                rd[k] += q * rs[k]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for M in (S, V):
            for row in M:
                row[dst] += q * row[src]

    for t in range(min(m, n)):
        # smallest nonzero pivot in the trailing block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if S[i][j] and (best is None or abs(S[i][j]) < abs(S[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            p = S[t][t]
            clean = True
            for i in range(t + 1, m):
                if S[i][t]:
                    add_row(i, t, -(S[i][t] // p))
                    clean = clean and S[i][t] == 0
            for j in range(t + 1, n):
                if S[t][j]:
                    add_col(j, t, -(S[t][j] // p))
                    clean = clean and S[t][j] == 0
            if not clean:
                # a remainder smaller than the pivot survived: move it in
                cand = [(abs(S[i][t]), i, t) for i in range(t + 1, m) if S[i][t]]
                cand += [(abs(S[t][j]), t, j) for j in range(t + 1, n) if S[t][j]]
                _, i, j = min(cand)
                if j == t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if S[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if S[t][t] < 0:
            for M in (S, U):
                M[t] = [-x for x in M[t]]
    return IntMatrix.from_rows(S, n), IntMatrix.from_rows(U, m), IntMatrix.from_rows(V, n)


def smith_diagonal(A) -> list[int]:
    """The nonzero invariant factors of ``A``."""
    S, _, _ = smith_normal_form(A)
    return [S[i, i] for i in range(min(S.rows, S.cols)) if S[i, i]]


def image_index(A) -> int | float:
    """Index of ``im A`` in ``Z^rows``; ``math.inf`` when the rank is short."""
    A = _as_matrix(A)
    diag = smith_diagonal(A)
    if len(diag) < A.rows:
        return INF
    return math.prod(diag)


@dataclass(frozen=True)
class FgAbGroup:
    """``Z^free_rank + Z/d_1 + ... + Z/d_k`` with ``d_1 | d_2 | ... | d_k``.

    Element coordinates list the free part first, then the torsion part in the
    order of ``torsion``.
    """

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(self.torsion))
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        for d in self.torsion:
            if d < 2:
                raise ValueError(f"torsion coefficient {d} is not >= 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"divisibility chain broken: {a} does not divide {b}")

    @classmethod
    def from_invariants(cls, free_rank: int, coefficients: Iterable[int]) -> FgAbGroup:
        """Normalize an arbitrary list of cyclic orders (``0`` means ``Z``)."""
        coefficients = [abs(c) for c in coefficients]
        free = free_rank + coefficients.count(0)
        finite = cokernel(IntMatrix.diagonal([c for c in coefficients if c]))
        return cls(free, finite.torsion)

    @classmethod
    def cyclic(cls, d: int) -> FgAbGroup:
        if d == 0:
            return cls(1)
        return cls(0, (d,) if d > 1 else ())

    @property
    def ngens(self) -> int:
        return self.free_rank + len(self.torsion)

    def order(self) -> int | float:
        return INF if self.free_rank else math.prod(self.torsion)

    def is_trivial(self) -> bool:
        return self.ngens == 0

    def moduli(self) -> tuple[int, ...]:
        """Per-coordinate modulus, ``0`` for free coordinates."""
        return (0,) * self.free_rank + self.torsion

    def reduce(self, v: Sequence[int]) -> tuple[int, ...]:
        self._check(v)
        return tuple(x % d if d else x for x, d in zip(v, self.moduli()))

    def is_zero(self, v: Sequence[int]) -> bool:
        return not any(self.reduce(v))

    def add(self, v: Sequence[int], w: Sequence[int]) -> tuple[int, ...]:
        return self.reduce([a + b for a, b in zip(self.reduce(v), self.reduce(w))])

    def neg(self, v: Sequence[int]) -> tuple[int, ...]:
        return self.reduce([-a for a in v])

    def relation_matrix(self) -> IntMatrix:
        """Columns ``d_i e_i`` spanning the relations of the torsion part."""
        cols = []
        for i, d in enumerate(self.torsion):
            c = [0] * self.ngens
            c[self.free_rank + i] = d
            cols.append(c)
        return IntMatrix.from_columns(cols, self.ngens)

    def elements(self) -> Iterable[tuple[int, ...]]:
        """All elements of a finite group, in lexicographic coordinate order."""
        if self.free_rank:
            raise ValueError("cannot enumerate an infinite group")
        from itertools import product
        return product(*(range(d) for d in self.torsion))

    def _check(self, v):
        if len(v) != self.ngens:
            raise ValueError(f"vector {tuple(v)} has length {len(v)}, group {self} needs {self.ngens}")

    def to_dict(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    @classmethod
    def from_dict(cls, d: dict) -> FgAbGroup:
        return cls(int(d.get("free_rank", 0)), tuple(int(x) for x in d.get("torsion", ())))

    def __str__(self):
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


def cokernel(A) -> FgAbGroup:
    """``Z^rows / im A`` in invariant-factor form."""
    A = _as_matrix(A)
    diag = smith_diagonal(A)
    return FgAbGroup(A.rows - len(diag), tuple(d for d in diag if d > 1))


def integer_kernel(A) -> list[tuple[int, ...]]:
    """A basis of ``{x in Z^cols : A x = 0}``."""
    A = _as_matrix(A)
    S, _, V = smith_normal_form(A)
    rank = sum(1 for i in range(min(S.rows, S.cols)) if S[i, i])
    return [V.column(j) for j in range(rank, A.cols)]


def solve_integer(A, b: Sequence[int]) -> tuple[int, ...] | None:
    """Some integer ``x`` with ``A x = b``, or ``None`` if there is none."""
    A = _as_matrix(A)
    if len(b) != A.rows:
        raise ValueError(f"right-hand side has length {len(b)}, expected {A.rows}")
    S, U, V = smith_normal_form(A)
    c = U.apply(b)
    y = [0] * A.cols
    for i in range(A.rows):
        s = S[i, i] if i < min(S.rows, S.cols) else 0
        if s:
            if c[i] % s:
                return None
            y[i] = c[i] // s
        elif c[i]:
            return None
    return V.apply(y)


@dataclass(frozen=True)
class SubgroupDesc:
    """The subgroup of ``ambient`` generated by coordinate vectors."""

    ambient: FgAbGroup
    generators: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        gens = tuple(self.ambient.reduce(g) for g in self.generators)
        object.__setattr__(self, "generators", gens)

    def generator_matrix(self) -> IntMatrix:
        return IntMatrix.from_columns(self.generators, self.ambient.ngens)

    def is_trivial(self) -> bool:
        return all(not any(g) for g in self.generators)

    def is_everything(self) -> bool:
        A = self.generator_matrix().hstack(self.ambient.relation_matrix())
        return image_index(A) == 1

    def order(self) -> int | float:
        """Order of the subgroup."""
        f = self.ambient.free_rank
        if any(any(g[:f]) for g in self.generators):
            return INF
        torsion = FgAbGroup(0, self.ambient.torsion)
        gens = IntMatrix.from_columns([g[f:] for g in self.generators], torsion.ngens)
        return torsion.order() // image_index(gens.hstack(torsion.relation_matrix()))

    def to_dict(self) -> dict:
        return {"ambient": self.ambient.to_dict(), "generators": [list(g) for g in self.generators]}


def in_subgroup(v: Sequence[int], H: SubgroupDesc) -> bool:
    """Whether ``v`` lies in ``H`` (solved through the Smith normal form)."""
    H.ambient._check(v)
    A = H.generator_matrix().hstack(H.ambient.relation_matrix())
    return solve_integer(A, list(v)) is not None


@dataclass(frozen=True)
class AbelianHom:
    """A homomorphism ``source -> target`` given in coordinates.

    Column ``j`` of ``matrix`` is the image of the ``j``-th source generator.
    """

    source: FgAbGroup
    target: FgAbGroup
    matrix: IntMatrix

    def __post_init__(self):
        if (self.matrix.rows, self.matrix.cols) != (self.target.ngens, self.source.ngens):
            raise ValueError(
                f"matrix is {self.matrix.rows}x{self.matrix.cols}, expected "
                f"{self.target.ngens}x{self.source.ngens} for {self.source} -> {self.target}")
        rel = SubgroupDesc(self.target)
        f = self.source.free_rank
        for i, d in enumerate(self.source.torsion):
            col = self.matrix.column(f + i)
            if not in_subgroup([d * x for x in col], rel):
                raise ValueError(
                    f"not well defined: generator {f + i} has order {d} but its image "
                    f"{self.target.reduce(col)} does not")

    def __call__(self, v: Sequence[int]) -> tuple[int, ...]:
        return self.target.reduce(self.matrix.apply(self.source.reduce(v)))

    def image(self) -> SubgroupDesc:
        return SubgroupDesc(self.target, tuple(self.matrix.columns()))

    def kernel(self) -> SubgroupDesc:
        """Generators of the kernel, as a subgroup of the source."""
        rel = self.target.relation_matrix()
        big = self.matrix.hstack(rel)
        gens = [k[:self.source.ngens] for k in integer_kernel(big)]
        return SubgroupDesc(self.source, tuple(gens))

    def is_injective(self) -> bool:
        src_rel = SubgroupDesc(self.source)
        return all(in_subgroup(g, src_rel) for g in self.kernel().generators)

    def is_surjective(self) -> bool:
        return self.image().is_everything()
