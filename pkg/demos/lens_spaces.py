"""Coincidences of maps from spheres into odd-dimensional spherical space forms.

Walks through root pairs S^4 -> S^3/G for several groups G, then shows how the
answer changes when the lifted difference class is zero or nonzero.

    python3 demos/lens_spaces.py
"""

from nck import solve
from nck.values import format_value

GROUPS = {
    "trivial": "gens: a; rels: a",
    "Z/2": "gens: a; rels: a^2",
    "Z/3": "gens: a; rels: a^3",
    "Z/5": "gens: a; rels: a^5",
    "Q8": "gens: x, y; rels: x^4, x^2 y^-2, y^-1 x y x",
}


def row(label, report):
    cells = [format_value(getattr(report, s)).split(" (")[0] for s in ("N", "N_sharp", "MCC", "MC")]
    print(f"{label:<28}" + "".join(f"{c:>10}" for c in cells))


def main():
    print(f"{'root pair S^4 -> S^3/G':<28}" + "".join(f"{h:>10}" for h in ("N", "N#", "MCC", "MC")))
    for name, pres in GROUPS.items():
        target = {"kind": "space_form", "n": 3, "pi1": pres}
        for cls in (1, 0):
            report = solve({"domain": {"kind": "sphere", "m": 4}, "target": target,
                            "pair": "root", "map_data": {"f1": [cls]}})
            row(f"G = {name}, [f] = {cls}", report)
    print()
    print("For #G <= 2 a nonzero class is realized with exactly #G coincidence points;")
    print("for larger groups the points cannot be made finite, though #G path components suffice.")
    print()
    report = solve({"domain": {"kind": "sphere", "m": 5},
                    "target": {"kind": "space_form", "n": 3, "pi1": GROUPS["Z/5"]},
                    "map_data": {"difference": [1]}})
    print("pair S^5 -> S^3/Z5 with nonzero lifted difference:")
    print(report.format_text())


if __name__ == "__main__":
    main()
