"""
Homotopy groups of spheres, suspension homomorphisms and Hopf-Hilton kernels.

The bundled table covers ``pi_m(S^n)`` for ``1 <= n <= 10`` and
``n <= m <= n + 7``. Groups outside that range are reported as ``Unknown``
unless they vanish for dimensional reasons.

>>> T = default_table()
>>> str(T.pi(16, 9))
'Z/240'
>>> T.suspension(3, 2).is_surjective
True
>>> T.class_in_image_of_E((1,), 4, 3, "ker_h")
False
"""

from __future__ import annotations

import functools
import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .abelian import AbelianHom, FgAbGroup, IntMatrix, SubgroupDesc, in_subgroup
from .values import Unknown

SCHEMA = 1
TABLE_ENV = "NCK_TABLES"
BUNDLED = Path(__file__).with_name("data") / "sphere_tables.json"

DERIVATIONS = ("explicit", "double-suspension")


class TableError(ValueError):
    """A table file that violates the format or a mathematical invariant."""


@dataclass(frozen=True)
class SphereGroupEntry:
    m: int
    n: int
    group: FgAbGroup
    generator_labels: tuple[str, ...] = ()
    provenance: str = ""


@dataclass(frozen=True)
class SuspensionEntry:
    """``E: pi_m(S^n) -> pi_{m+1}(S^{n+1})`` in the tables' bases."""

    m: int
    n: int
    hom: AbelianHom
    provenance: str = ""

    @property
    def matrix(self) -> IntMatrix:
        return self.hom.matrix

    @property
    def is_injective(self) -> bool:
        return self.hom.is_injective()

    @property
    def is_surjective(self) -> bool:
        return self.hom.is_surjective()


@dataclass(frozen=True)
class HopfKernelEntry:
    """``ker h`` as a subgroup of ``pi_{m-1}(S^{n-1})``."""

    m: int
    n: int
    kernel: SubgroupDesc
    derivation: str
    provenance: str = ""


def freudenthal_injective(m: int, n: int) -> bool:
    """Whether ``E`` out of ``pi_m(S^n)`` is injective for dimensional reasons."""
    return m < 2 * n - 1 or n == 1


def _trivial(m: int, n: int) -> bool:
    return m < n or (n == 0 and m >= 1) or (n == 1 and m >= 2)


class SphereTable:
    """An immutable, validated table of sphere data."""

    def __init__(self, doc: dict, source: str = "<memory>"):
        self.source = source
        self._groups: dict[tuple[int, int], SphereGroupEntry] = {}
        self._susp: dict[tuple[int, int], SuspensionEntry] = {}
        self._kerh: dict[tuple[int, int], HopfKernelEntry] = {}
        self._load(doc)

    # ------------------------------------------------------------------ load

    @classmethod
    def from_file(cls, path: str | os.PathLike) -> SphereTable:
        path = Path(path)
        try:
            doc = json.loads(path.read_text())
        except OSError as exc:
            raise TableError(f"{path}: cannot read table file: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise TableError(f"{path}: invalid JSON: {exc}") from exc
        return cls(doc, str(path))

    def _load(self, doc):
        if not isinstance(doc, dict):
            raise TableError("table: top level must be an object")
        if doc.get("schema") != SCHEMA:
            raise TableError(f"schema: expected {SCHEMA}, found {doc.get('schema')!r}")
        self.version = str(doc.get("version", "unversioned"))
        for key in ("groups", "suspensions", "hopf_kernels"):
            if not isinstance(doc.get(key, []), list):
                raise TableError(f"{key}: must be a list")
        for i, rec in enumerate(doc.get("groups", [])):
            self._load_group(f"groups[{i}]", rec)
        for i, rec in enumerate(doc.get("suspensions", [])):
            self._load_suspension(f"suspensions[{i}]", rec)
        for i, rec in enumerate(doc.get("hopf_kernels", [])):
            self._load_kernel(f"hopf_kernels[{i}]", rec)

    @staticmethod
    def _dims(where, rec):
        if not isinstance(rec, dict):
            raise TableError(f"{where}: must be an object")
        for key in ("m", "n"):
            v = rec.get(key)
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise TableError(f"{where}.{key}: expected a nonnegative integer, found {v!r}")
        return rec["m"], rec["n"]

    def _load_group(self, where, rec):
        m, n = self._dims(where, rec)
        free = rec.get("free_rank")
        if not isinstance(free, int) or free < 0:
            raise TableError(f"{where}.free_rank: expected a nonnegative integer, found {free!r}")
        torsion = rec.get("torsion", [])
        if not isinstance(torsion, list) or not all(isinstance(d, int) for d in torsion):
            raise TableError(f"{where}.torsion: expected a list of integers")
        try:
            group = FgAbGroup(free, tuple(torsion))
        except ValueError as exc:
            raise TableError(f"{where}.torsion: {exc}") from exc
        if m < n and not group.is_trivial():
            raise TableError(f"{where}: pi_{m}(S^{n}) must be trivial since m < n, found {group}")
        if m == n and group != FgAbGroup(1):
            raise TableError(f"{where}: pi_{m}(S^{m}) must be Z, found {group}")
        labels = rec.get("labels", [])
        if labels and len(labels) != group.ngens:
            raise TableError(f"{where}.labels: {len(labels)} labels for {group.ngens} generators")
        if (m, n) in self._groups:
            raise TableError(f"{where}: duplicate entry for pi_{m}(S^{n})")
        self._groups[(m, n)] = SphereGroupEntry(m, n, group, tuple(labels), str(rec.get("provenance", "")))

    def _load_suspension(self, where, rec):
        m, n = self._dims(where, rec)
        src, tgt = self.pi(m, n), self.pi(m + 1, n + 1)
        if isinstance(src, Unknown) or isinstance(tgt, Unknown):
            raise TableError(f"{where}: suspension out of pi_{m}(S^{n}) needs both endpoint groups")
        rows = rec.get("matrix")
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            raise TableError(f"{where}.matrix: expected a list of rows")
        if len(rows) != tgt.ngens or any(len(r) != src.ngens for r in rows):
            shape = f"{len(rows)}x{len(rows[0]) if rows else 0}"
            raise TableError(
                f"{where}.matrix: dimension mismatch, found {shape} but "
                f"{src} -> {tgt} needs {tgt.ngens}x{src.ngens}")
        try:
            hom = AbelianHom(src, tgt, IntMatrix.from_rows(rows, src.ngens))
        except (ValueError, TypeError) as exc:
            raise TableError(f"{where}.matrix: {exc}") from exc
        if freudenthal_injective(m, n) and not hom.is_injective():
            raise TableError(
                f"{where}.matrix: E out of pi_{m}(S^{n}) must be injective in the Freudenthal range")
        if m <= 2 * n - 1 and not hom.is_surjective():
            raise TableError(
                f"{where}.matrix: E out of pi_{m}(S^{n}) must be surjective in the Freudenthal range")
        if (m, n) in self._susp:
            raise TableError(f"{where}: duplicate suspension entry for pi_{m}(S^{n})")
        self._susp[(m, n)] = SuspensionEntry(m, n, hom, str(rec.get("provenance", "")))

    def _load_kernel(self, where, rec):
        m, n = self._dims(where, rec)
        if n < 1 or m < 1:
            raise TableError(f"{where}: ker h needs m, n >= 1")
        ambient = self.pi(m - 1, n - 1)
        if isinstance(ambient, Unknown):
            raise TableError(f"{where}: pi_{m - 1}(S^{n - 1}) is not in the table")
        derivation = rec.get("derivation")
        if derivation not in DERIVATIONS:
            raise TableError(f"{where}.derivation: expected one of {DERIVATIONS}, found {derivation!r}")
        gens = rec.get("generators", [])
        if not isinstance(gens, list):
            raise TableError(f"{where}.generators: expected a list of coordinate vectors")
        for j, g in enumerate(gens):
            if not isinstance(g, list) or len(g) != ambient.ngens:
                raise TableError(
                    f"{where}.generators[{j}]: expected {ambient.ngens} coordinates in {ambient}")
            if tuple(g) != ambient.reduce(g):
                raise TableError(f"{where}.generators[{j}]: torsion coordinates not reduced in {ambient}")
        kernel = SubgroupDesc(ambient, tuple(tuple(g) for g in gens))
        if derivation == "double-suspension":
            if m > 3 * n - 6:
                raise TableError(
                    f"{where}.derivation: double-suspension description needs m <= 3n - 6, "
                    f"but m = {m}, n = {n}")
            image = self._suspension_image(m - 2, n - 2)
            if isinstance(image, Unknown):
                raise TableError(f"{where}: suspension out of pi_{m - 2}(S^{n - 2}) unavailable")
            if not _same_subgroup(kernel, image):
                raise TableError(f"{where}.generators: do not span the image of the suspension")
        if (m, n) in self._kerh:
            raise TableError(f"{where}: duplicate kernel entry for ({m}, {n})")
        self._kerh[(m, n)] = HopfKernelEntry(m, n, kernel, derivation, str(rec.get("provenance", "")))

    # --------------------------------------------------------------- queries

    def pi(self, m: int, n: int) -> FgAbGroup | Unknown:
        """``pi_m(S^n)``."""
        if m < 0 or n < 0:
            raise ValueError("dimensions must be nonnegative")
        if _trivial(m, n):
            return FgAbGroup()
        entry = self._groups.get((m, n))
        if entry is None:
            return Unknown(f"pi_{m}(S^{n}) is outside the table range")
        return entry.group

    def group_entry(self, m: int, n: int) -> SphereGroupEntry | Unknown:
        g = self.pi(m, n)
        if isinstance(g, Unknown):
            return g
        entry = self._groups.get((m, n))
        if entry is None:
            return SphereGroupEntry(m, n, g, (), "vanishes for dimensional reasons")
        return entry

    def suspension(self, m: int, n: int) -> SuspensionEntry | Unknown:
        """``E: pi_m(S^n) -> pi_{m+1}(S^{n+1})``."""
        entry = self._susp.get((m, n))
        if entry is not None:
            return entry
        src, tgt = self.pi(m, n), self.pi(m + 1, n + 1)
        if isinstance(src, Unknown):
            return src
        if isinstance(tgt, Unknown):
            return tgt
        if src.is_trivial() or tgt.is_trivial():
            hom = AbelianHom(src, tgt, IntMatrix.zeros(tgt.ngens, src.ngens))
            return SuspensionEntry(m, n, hom, "an endpoint group is trivial")
        return Unknown(f"no suspension data for pi_{m}(S^{n})")

    def suspension_injective(self, m: int, n: int) -> bool | Unknown:
        entry = self.suspension(m, n)
        if isinstance(entry, SuspensionEntry):
            return entry.is_injective
        if freudenthal_injective(m, n):
            return True
        return entry

    def _suspension_image(self, m: int, n: int) -> SubgroupDesc | Unknown:
        entry = self.suspension(m, n)
        if isinstance(entry, Unknown):
            return entry
        return entry.hom.image()

    def ker_h(self, m: int, n: int) -> HopfKernelEntry | Unknown:
        """The kernel of the total Hopf-Hilton homomorphism on ``pi_{m-1}(S^{n-1})``."""
        if m < 1 or n < 1:
            return Unknown("ker h needs m, n >= 1")
        entry = self._kerh.get((m, n))
        if entry is not None:
            return entry
        ambient = self.pi(m - 1, n - 1)
        if isinstance(ambient, Unknown):
            return ambient
        if ambient.is_trivial():
            return HopfKernelEntry(m, n, SubgroupDesc(ambient), "explicit", "the ambient group is trivial")
        if n >= 3 and m <= 3 * n - 6:
            image = self._suspension_image(m - 2, n - 2)
            if isinstance(image, Unknown):
                return image
            return HopfKernelEntry(m, n, image, "double-suspension",
                                   "ker h is the image of the suspension in this range")
        return Unknown(f"ker h at (m, n) = ({m}, {n}) is neither stored nor in the range m <= 3n - 6")

    def class_in_image_of_E(self, v: Sequence[int], m: int, n: int,
                            restrict_to: str = "all") -> bool | Unknown:
        """Whether ``v`` in ``pi_m(S^n)`` lies in ``E(pi_{m-1}(S^{n-1}))``,
        or in ``E(ker h)`` when ``restrict_to == "ker_h"``."""
        if restrict_to not in ("all", "ker_h"):
            raise ValueError(f"restrict_to must be 'all' or 'ker_h', not {restrict_to!r}")
        target = self.pi(m, n)
        if isinstance(target, Unknown):
            return target
        v = tuple(v)
        if len(v) != target.ngens:
            raise ValueError(f"class has {len(v)} coordinates but pi_{m}(S^{n}) = {target} has {target.ngens}")
        if target.is_zero(v):
            return True
        image = self.image_of_E(m, n, restrict_to)
        if isinstance(image, Unknown):
            return image
        return in_subgroup(v, image)

    def image_of_E(self, m: int, n: int, restrict_to: str = "all") -> SubgroupDesc | Unknown:
        """``E(pi_{m-1}(S^{n-1}))`` or ``E(ker h)`` as a subgroup of ``pi_m(S^n)``."""
        if restrict_to not in ("all", "ker_h"):
            raise ValueError(f"restrict_to must be 'all' or 'ker_h', not {restrict_to!r}")
        target = self.pi(m, n)
        if isinstance(target, Unknown):
            return target
        if m < 1 or n < 1:
            return SubgroupDesc(target, ())
        entry = self.suspension(m - 1, n - 1)
        if isinstance(entry, Unknown):
            return entry
        if restrict_to == "all":
            return entry.hom.image()
        kernel = self.ker_h(m, n)
        if isinstance(kernel, Unknown):
            return kernel
        return SubgroupDesc(target, tuple(entry.hom(g) for g in kernel.kernel.generators))


def _same_subgroup(H: SubgroupDesc, K: SubgroupDesc) -> bool:
    return (all(in_subgroup(g, K) for g in H.generators)
            and all(in_subgroup(g, H) for g in K.generators))


def table_path() -> Path:
    override = os.environ.get(TABLE_ENV)
    return Path(override) if override else BUNDLED


@functools.lru_cache(maxsize=8)
def _load_cached(path: str, mtime: float) -> SphereTable:
    return SphereTable.from_file(path)


def default_table() -> SphereTable:
    """The table at ``$NCK_TABLES`` if set, else the bundled one."""
    path = table_path()
    try:
        mtime = path.stat().st_mtime
    except OSError as exc:
        raise TableError(f"{path}: cannot read table file: {exc}") from exc
    return _load_cached(str(path), mtime)
