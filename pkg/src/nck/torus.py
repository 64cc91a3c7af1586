"""Brute-force coincidence data for affine maps of tori.

A pair of self-maps of ``T^n = R^n / Z^n`` is given by integer matrices
``A`` and ``B`` and a rational translation ``t``: ``f1(x) = A x`` and
``f2(x) = B x + t``. Coincidences are the solutions of
``(A - B) x = t (mod Z^n)``. There are ``|det(A - B)|`` of them when the
determinant is nonzero, each its own Nielsen class.

>>> inst = TorusInstance.from_text("1 1; 0 1", "-1 0; -1 -1")
>>> coincidence_set(inst).count
3
>>> nielsen_data(inst).class_count
3
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .abelian import IntMatrix, cokernel, smith_normal_form


class DegenerateInstance(ValueError):
    """``det(A - B) = 0``: the coincidence set is positive dimensional."""


def _frac_mod1(x) -> Fraction:
    x = Fraction(x)
    return x - (x.numerator // x.denominator)


@dataclass(frozen=True)
class TorusInstance:
    A: IntMatrix
    B: IntMatrix
    translation: tuple

    def __post_init__(self):
        n = self.A.rows
        if self.A.cols != n or (self.B.rows, self.B.cols) != (n, n):
            raise ValueError("A and B must be square matrices of the same size")
        if len(self.translation) != n:
            raise ValueError(f"translation needs {n} coordinates, found {len(self.translation)}")
        object.__setattr__(self, "translation", tuple(_frac_mod1(t) for t in self.translation))

    @classmethod
    def from_text(cls, A: str, B: str, t: str | Sequence | None = None) -> TorusInstance:
        """Build from ``"a b; c d"`` matrices and a translation like ``"1/2 0"``."""
        Am, Bm = IntMatrix.parse(A), IntMatrix.parse(B)
        if t is None:
            t = [0] * Am.rows
        elif isinstance(t, str):
            t = [Fraction(x) for x in t.replace(",", " ").split()]
        return cls(Am, Bm, tuple(t))

    @property
    def n(self) -> int:
        return self.A.rows

    @property
    def difference(self) -> IntMatrix:
        return self.A - self.B

    def to_json(self) -> dict:
        return {"A": self.A.to_rows(), "B": self.B.to_rows(),
                "translation": [str(t) for t in self.translation]}


@dataclass(frozen=True)
class CoincidenceSet:
    degenerate: bool
    points: tuple = ()

    @property
    def count(self) -> int:
        return len(self.points)

    def to_json(self) -> dict:
        if self.degenerate:
            return {"status": "degenerate"}
        return {"status": "nondegenerate", "count": self.count,
                "points": [[str(c) for c in p] for p in self.points]}


@dataclass(frozen=True)
class NielsenData:
    class_count: int
    indices: tuple

    @property
    def nielsen_number(self) -> int:
        return sum(1 for i in self.indices if i != 0)

    def to_json(self) -> dict:
        return {"class_count": self.class_count, "indices": list(self.indices),
                "nielsen_number": self.nielsen_number}


def coincidence_set(inst: TorusInstance) -> CoincidenceSet:
    """Solve ``(A - B) x = t (mod Z^n)`` through the Smith normal form."""
    D = inst.difference
    if D.det() == 0:
        return CoincidenceSet(True)
    S, U, V = smith_normal_form(D)
    n = inst.n
    # U D V = S; with x = V y the system becomes S y = U t (mod Z^n)
    Ut = [sum(U[i, j] * inst.translation[j] for j in range(n)) for i in range(n)]
    choices = [[(Ut[i] + k) / S[i, i] for k in range(S[i, i])] for i in range(n)]
    points = set()
    for y in itertools.product(*choices):
        points.add(tuple(_frac_mod1(sum(V[i, j] * y[j] for j in range(n))) for i in range(n)))
    return CoincidenceSet(False, tuple(sorted(points)))


def brute_force_points(inst: TorusInstance) -> CoincidenceSet:
    """Independent enumeration: ``x = (A - B)^{-1} (t + z)`` over a box of lattice shifts ``z``.

    Shifts in ``[0, |det|)^n`` meet every class of ``Z^n / (A - B) Z^n``
    because ``|det| Z^n`` lies inside ``(A - B) Z^n``.
    """
    D = inst.difference
    d = D.det()
    if d == 0:
        return CoincidenceSet(True)
    n = inst.n
    inv = _rational_inverse(D)
    points = set()
    for z in itertools.product(range(abs(d)), repeat=n):
        rhs = [inst.translation[i] + z[i] for i in range(n)]
        points.add(tuple(_frac_mod1(sum(inv[i][j] * rhs[j] for j in range(n))) for i in range(n)))
    return CoincidenceSet(False, tuple(sorted(points)))


def _rational_inverse(D: IntMatrix) -> list[list[Fraction]]:
    n = D.rows
    M = [[Fraction(D[i, j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for c in range(n):
        p = next(r for r in range(c, n) if M[r][c] != 0)
        M[c], M[p] = M[p], M[c]
        piv = M[c][c]
        M[c] = [x / piv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                q = M[r][c]
                M[r] = [a - q * b for a, b in zip(M[r], M[c])]
    return [row[n:] for row in M]


def nielsen_data(inst: TorusInstance) -> NielsenData:
    """Reidemeister classes and coincidence indices of a nondegenerate instance."""
    D = inst.difference
    d = D.det()
    if d == 0:
        raise DegenerateInstance("det(A - B) = 0: the coincidence set is not isolated")
    classes = cokernel(D).order()
    sign = 1 if d > 0 else -1
    points = coincidence_set(inst)
    return NielsenData(int(classes), tuple(sign for _ in points.points))
