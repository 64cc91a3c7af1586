"""Acceptance criteria 1-9. Each test records one PASS/FAIL line, printed after the run.

Run on its own with ``pytest tests/test_acceptance.py`` or ``python3 tests/test_acceptance.py``.
"""

import itertools
import math
import random
import re

import pytest

from acceptance_log import RESULTS, record
from corruptions import CORRUPTIONS, bundled_doc, corrupted
from group_catalog import CATALOG, endomorphisms
from nck.abelian import FgAbGroup, IntMatrix, cokernel
from nck.engine import covering_transfer, solve
from nck.fpgroups import FpGroup, realize_finite, reidemeister_count, subgroup_index
from nck.spheres import SphereTable, TableError, default_table
from nck.torus import TorusInstance, brute_force_points, coincidence_set
from nck.values import INF, Unknown

TABLE = default_table()
Q8 = "gens: x, y; rels: x^4, x^2 y^-2, y^-1 x y x"


def presentation(order):
    return Q8 if order == 8 else f"gens: a; rels: a^{order}"


def known(v):
    return not isinstance(v, Unknown)


def check(number, title, failures, detail=""):
    ok = not failures
    record(number, title, ok, detail if ok else failures[0])
    assert ok, failures[:5]


# 1 -------------------------------------------------------------------------------------------


def test_criterion_1_lens_root_table():
    failures = []
    for order in (1, 2, 3, 5, 8):
        target = {"kind": "space_form", "n": 3, "pi1": presentation(order)}
        for cls in (0, 1):
            r = solve({"domain": {"kind": "sphere", "m": 4}, "target": target, "pair": "root",
                       "map_data": {"f1": [cls]}})
            if cls == 0:
                want = (0, 0, 0)
            else:
                want = (order, order, order if order <= 2 else INF)
            got = (r.N_sharp, r.MCC, r.MC)
            if got != want:
                failures.append(f"#G={order}, [f]={cls}: got {got}, want {want}")
    check(1, "root maps S^4 -> S^3/G: MC = inf (#G >= 3), #G (#G <= 2), 0 for [f] = 0", failures,
          "#G in {1, 2, 3, 5, 8}")


# 2 -------------------------------------------------------------------------------------------


def test_criterion_2_space_form_table():
    failures = []
    cases = 0
    for n in (3, 5, 7):
        for order in (1, 2, 3, 4, 5, 6, 8):
            if order == 8 and n % 4 != 3:
                continue
            target = {"kind": "space_form", "n": n, "pi1": presentation(order)}
            for m in range(2, n + 6):
                g = TABLE.pi(m, n)
                if isinstance(g, Unknown):
                    continue
                options = [("homotopic", {"f1_homotopic_f2": True})]
                if not g.is_trivial():
                    v = [0] * g.ngens
                    v[-1] = 1
                    options.append(("nonzero", {"difference": v}))
                for label, md in options:
                    r = solve({"domain": {"kind": "sphere", "m": m}, "target": target, "map_data": md})
                    zero = label == "homotopic" or m < n
                    want = 0 if zero else order
                    cases += 1
                    if (r.N_sharp, r.MCC) != (want, want):
                        failures.append(f"n={n} #G={order} m={m} {label}: got {(r.N_sharp, r.MCC)}, want {want}")
    rng = random.Random(2)
    pairs = set()
    while len(pairs) < 10:
        pairs.add((rng.randint(-9, 9), rng.randint(-9, 9)))
    for d1, d2 in sorted(pairs):
        r = solve({"domain": {"kind": "sphere", "m": 1},
                   "target": {"kind": "circle"},
                   "map_data": {"degrees": [d1, d2]}})
        cases += 1
        if (r.N_sharp, r.MCC) != (abs(d1 - d2), abs(d1 - d2)):
            failures.append(f"m=1 degrees {d1}, {d2}: got {(r.N_sharp, r.MCC)}")
    check(2, "odd space forms: MCC = N# = 0 iff f1 ~ f2 or m < n, else #G; m = 1 gives |d1 - d2|",
          failures, f"{cases} cases")


# 3 -------------------------------------------------------------------------------------------


def residue_index(a, b):
    """Index of aZ + bZ in Z by enumerating residues modulo a nonzero member."""
    if a == 0 and b == 0:
        return INF
    M = abs(a) or abs(b)
    reached = {0}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for s in (a, b):
            y = (x + s) % M
            if y not in reached:
                reached.add(y)
                frontier.append(y)
    return M // len(reached)


def test_criterion_3_circle_targets():
    failures = []
    for a, b in itertools.product(range(-6, 7), repeat=2):
        want = residue_index(a, b)
        for m, domain in ((2, {"kind": "torus", "m": 2}),
                          (4, {"kind": "generic", "m": 4, "h1": {"free_rank": 2, "torsion": []}})):
            r = solve({"domain": domain, "target": {"kind": "circle"}, "map_data": {"h1": [[a, b]]}})
            if want == INF:
                expect = (0, 0, 0, 0)
            else:
                expect = (want, want, want, INF)
            got = (r.N, r.N_sharp, r.MCC, r.MC)
            if got != expect:
                failures.append(f"m={m} difference ({a}, {b}): got {got}, want {expect}")
    check(3, "circle targets: N# = MCC = image index on H_1, MC = inf for m >= 2", failures,
          "169 difference vectors x 2 domains")


# 4 -------------------------------------------------------------------------------------------


def test_criterion_4_torus_oracle():
    failures = []
    count = 0
    zero = IntMatrix.zeros(2, 2)
    for e in itertools.product(range(-3, 4), repeat=4):
        D = IntMatrix.from_rows([e[:2], e[2:]])
        det = D.det()
        if det == 0:
            continue
        count += 1
        inst = TorusInstance(D, zero, (0, 0))
        got = (coincidence_set(inst).count, brute_force_points(inst).count, cokernel(D).order())
        if got != (abs(det),) * 3:
            failures.append(f"difference {D.to_rows()}: counts {got}, |det| = {abs(det)}")
    for d1, d2 in itertools.product(range(-6, 7), repeat=2):
        if d1 == d2:
            continue
        oracle = coincidence_set(TorusInstance.from_text(str(d1), str(d2))).count
        r = solve({"domain": {"kind": "sphere", "m": 1}, "target": {"kind": "circle"},
                   "map_data": {"degrees": [d1, d2]}})
        if (r.N, r.N_sharp, r.MCC, r.MC) != (oracle,) * 4:
            failures.append(f"circle degrees {d1}, {d2}: engine {(r.N, r.N_sharp, r.MCC, r.MC)}, oracle {oracle}")
    check(4, "torus oracle: points = |det| = Reidemeister count; circle engine values all equal", failures,
          f"{count} nondegenerate 2x2 differences")


# 5 -------------------------------------------------------------------------------------------


def test_criterion_5_root_reidemeister_vs_index():
    failures = []
    total = 0
    for name, (text, order) in sorted(CATALOG.items()):
        G = FpGroup.parse(text)
        T = realize_finite(G)
        if T.order != order:
            failures.append(f"{name}: realized order {T.order}, expected {order}")
            continue
        trivial = [T.identity] * T.order
        for images, phi in endomorphisms(G, T):
            total += 1
            a = reidemeister_count(T, phi, trivial)
            b = subgroup_index(G, [T.words[x] for x in images])
            if a != b:
                failures.append(f"{name} images {images}: Reidemeister {a}, index {b}")
    check(5, "Reidemeister count with trivial second map = coset index of the image", failures,
          f"{len(CATALOG)} groups, {total} endomorphisms")


# 6 -------------------------------------------------------------------------------------------


def random_problem(rng):
    kind = rng.randrange(8)
    if kind == 0:
        r = rng.randint(1, 3)
        return {"domain": {"kind": "torus", "m": r}, "target": {"kind": "circle"},
                "map_data": {"h1": [[rng.randint(-5, 5) for _ in range(r)]]}}
    if kind in (1, 2):
        n = rng.choice([3, 5])
        m = rng.randint(n - 1, n + 6)
        order = rng.randint(1, 7)
        target = {"kind": "space_form", "n": n, "pi1": presentation(order)}
        g = TABLE.pi(m, n)
        if isinstance(g, Unknown):
            return {"domain": {"kind": "sphere", "m": m}, "target": target}
        v = [rng.randrange(d) if d else rng.randint(-3, 3) for d in [0] * g.free_rank + list(g.torsion)]
        if kind == 1:
            return {"domain": {"kind": "sphere", "m": m}, "target": target, "pair": "root", "map_data": {"f1": v}}
        return {"domain": {"kind": "sphere", "m": m}, "target": target, "map_data": {"difference": v}}
    if kind == 3:
        n = rng.randint(2, 8)
        m = rng.randint(max(1, n - 1), n + 6)
        g = TABLE.pi(m, n)
        if isinstance(g, Unknown) or n == 1:
            return {"domain": {"kind": "sphere", "m": m}, "target": {"kind": "sphere", "n": n}}

        def cls():
            return [rng.randrange(d) if d else rng.randint(-3, 3) for d in [0] * g.free_rank + list(g.torsion)]
        return {"domain": {"kind": "sphere", "m": m}, "target": {"kind": "sphere", "n": n},
                "map_data": {"difference_af2": cls()}}
    if kind == 4:
        targets = [{"kind": "projective", "field": "R", "n": 2}, {"kind": "torus", "n": 2},
                   {"kind": "generic", "n": 4, "euler": 2, "pi1": presentation(rng.randint(1, 6))},
                   {"kind": "sphere", "n": 4}, {"kind": "generic", "n": 3, "compact": False}]
        t = rng.choice(targets)
        domain = rng.choice([{"kind": "sphere", "m": rng.randint(1, 9)}, {"kind": "torus", "m": rng.randint(1, 4)}])
        if t["kind"] == "projective" and rng.random() < 0.5:
            domain = {"kind": "product_with_sphere", "base": t, "m": rng.randint(3, 6)}
        return {"domain": domain, "target": t, "pair": "self"}
    if kind == 5:
        k = rng.randint(1, 12)
        e = rng.randint(0, 11)
        return {"domain": {"kind": "generic", "m": rng.randint(4, 9), "pi1": "gens: x; rels:"},
                "target": {"kind": "generic", "n": 4, "euler": 2, "pi1": f"gens: a; rels: a^{k}"},
                "pair": "root", "map_data": {"pi1_f1": [f"a^{e}"]},
                "assert": {"omega_sharp_nonzero": True} if rng.random() < 0.5 else {}}
    if kind == 6:
        D = [[rng.randint(-3, 3) for _ in range(3)] for _ in range(3)]
        det = IntMatrix.from_rows(D).det()
        return {"domain": {"kind": "torus", "m": 3}, "target": {"kind": "torus", "n": 3},
                "map_data": {"h1": D, "nielsen_number": abs(det)}}
    order = rng.randint(1, 6)
    return {"domain": {"kind": "sphere", "m": 3}, "target": {"kind": "space_form", "n": 3, "pi1": presentation(order)},
            "map_data": {"index_vector": [[rng.choice([0, 0, 1, 2])] for _ in range(order)]}}


def test_criterion_6_inequality_chain():
    rng = random.Random(6)
    failures = []
    full = 0
    for i in range(1000):
        p = random_problem(rng)
        try:
            r = solve(p)
        except Exception as exc:  # a valid problem must solve
            failures.append(f"problem {i} {p}: {type(exc).__name__}: {exc}")
            continue
        vals = [r.N, r.N_sharp, r.MCC, r.MC]
        if all(known(v) for v in vals):
            full += 1
            if not (0 <= vals[0] <= vals[1] <= vals[2] <= vals[3]):
                failures.append(f"problem {i}: chain violated {vals}")
        n = p["target"].get("n", 1)
        if n != 2 and known(r.MCC) and known(r.reidemeister) and r.MCC > r.reidemeister:
            failures.append(f"problem {i}: MCC {r.MCC} > Reidemeister {r.reidemeister}")
    check(6, "0 <= N <= N# <= MCC <= MC and MCC <= #Reidemeister (n != 2) on random problems", failures,
          f"1000 problems, {full} fully known")


# 7 -------------------------------------------------------------------------------------------


def test_criterion_7_covering_transfer():
    failures = []
    lifted = solve({"domain": {"kind": "sphere", "m": 4}, "target": {"kind": "sphere", "n": 3}, "pair": "root",
                    "map_data": {"f1": [1]}})
    if lifted.N_sharp != 1:
        failures.append(f"lifted N# is {lifted.N_sharp}, expected 1")
    for d in (2, 3, 5):
        down = covering_transfer(lifted, d, "root")
        direct = solve({"domain": {"kind": "sphere", "m": 4},
                        "target": {"kind": "space_form", "n": 3, "pi1": presentation(d)},
                        "pair": "root", "map_data": {"f1": [1]}})
        if not (down.N_sharp == d == direct.N_sharp):
            failures.append(f"d={d}: transferred {down.N_sharp}, direct {direct.N_sharp}")
        selfed = covering_transfer(lifted, d, "self")
        if selfed.N_sharp != lifted.N_sharp:
            failures.append(f"d={d}: self transfer changed N# to {selfed.N_sharp}")
    check(7, "covering transfer: root N# multiplies by d, self N# unchanged", failures, "d in {2, 3, 5}")


# 8 -------------------------------------------------------------------------------------------


def test_criterion_8_subadditivity():
    rng = random.Random(8)
    failures = []
    done = 0
    while done < 100:
        n = rng.choice([3, 5])
        m = rng.randint(n, n + 7)
        g = TABLE.pi(m, n)
        if isinstance(g, Unknown) or g.is_trivial():
            continue
        order = rng.randint(1, 7)
        target = {"kind": "space_form", "n": n, "pi1": presentation(order)}

        def cls():
            return [rng.randrange(d) if d else rng.randint(-4, 4) for d in [0] * g.free_rank + list(g.torsion)]
        a, b = cls(), cls()
        total = list(g.add(a, b))

        def run(v):
            return solve({"domain": {"kind": "sphere", "m": m}, "target": target, "map_data": {"difference": v}})
        ra, rb, rs = run(a), run(b), run(total)
        done += 1
        for slot in ("N", "N_sharp", "MCC", "MC"):
            x, y, s = getattr(ra, slot), getattr(rb, slot), getattr(rs, slot)
            if known(x) and known(y) and known(s) and s > x + y:
                failures.append(f"m={m} n={n} #G={order} {a}+{b}: {slot} {s} > {x} + {y}")
    check(8, "subadditivity over sums of difference classes", failures, "100 random pairs")


# 9 -------------------------------------------------------------------------------------------


def test_criterion_9_table_integrity():
    failures = []
    try:
        SphereTable(bundled_doc())
    except TableError as exc:
        failures.append(f"bundled table rejected: {exc}")
    for name in sorted(CORRUPTIONS):
        doc, pattern = corrupted(name)
        try:
            SphereTable(doc)
            failures.append(f"corruption '{name}' accepted")
        except TableError as exc:
            if not re.search(pattern, str(exc)):
                failures.append(f"corruption '{name}': diagnostic {exc!s} does not match {pattern}")
    cited = {(3, 2): FgAbGroup(1), (4, 3): FgAbGroup(0, (2,)), (16, 9): FgAbGroup(0, (240,))}
    for (m, n), want in cited.items():
        if TABLE.pi(m, n) != want:
            failures.append(f"pi_{m}(S^{n}) = {TABLE.pi(m, n)}, expected {want}")
    check(9, "table integrity: bundled table loads, five corruptions rejected, cited groups exact", failures,
          f"{len(CORRUPTIONS)} corruptions")


if __name__ == "__main__":
    import sys

    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                pass
    for number in sorted(RESULTS):
        title, ok, detail = RESULTS[number]
        print(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}  ({detail})")
    sys.exit(0 if all(ok for _, ok, _ in RESULTS.values()) else 1)
