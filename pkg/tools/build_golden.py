"""Write src/nck/data/golden.json: hand-derived expectations for worked examples.

Every expected value below is written out by hand from the closed-form case
tables, never produced by running the engine.

    python3 tools/build_golden.py
"""

import json
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "src" / "nck" / "data" / "golden.json"

INF = "infinite"
UNKNOWN = {"unknown": "any"}


def fin(k):
    return {"finite": k}


def four(n, ns, mcc, mc):
    return {"N": n, "N_sharp": ns, "MCC": mcc, "MC": mc}


def zeros():
    return four(fin(0), fin(0), fin(0), fin(0))


GROUPS = {
    1: "gens: a; rels: a",
    2: "gens: a; rels: a^2",
    3: "gens: a; rels: a^3",
    5: "gens: a; rels: a^5",
    8: "gens: x, y; rels: x^4, x^2 y^-2, y^-1 x y x",
}


def lens_root(order, cls):
    return {"domain": {"kind": "sphere", "m": 4},
            "target": {"kind": "space_form", "n": 3, "pi1": GROUPS[order]},
            "pair": "root", "map_data": {"f1": [cls]}}


def cases():
    out = []
    # root maps S^4 -> S^3/G: MC = #G for #G <= 2, infinite for #G >= 3, all zero for [f] = 0
    for order in GROUPS:
        mc = fin(order) if order <= 2 else INF
        out.append({"name": f"lens root m=4 order {order} nonzero",
                    "problem": lens_root(order, 1),
                    "expected": {"N_sharp": fin(order), "MCC": fin(order), "MC": mc,
                                 "reidemeister": fin(order)}})
        out.append({"name": f"lens root m=4 order {order} zero",
                    "problem": lens_root(order, 0), "expected": zeros()})
    out.append({"name": "lens root class_is_zero false, order 5",
                "problem": {"domain": {"kind": "sphere", "m": 4},
                            "target": {"kind": "space_form", "n": 3, "pi1": GROUPS[5]},
                            "pair": "root", "map_data": {"class_is_zero": False}},
                "expected": {"N": UNKNOWN, "N_sharp": fin(5), "MCC": fin(5), "MC": INF}})
    # general pairs S^5 -> S^3/Z5 with nonzero lifted difference in pi_5(S^3) = Z/2
    out.append({"name": "space form m=5 order 5 nonzero difference",
                "problem": {"domain": {"kind": "sphere", "m": 5},
                            "target": {"kind": "space_form", "n": 3, "pi1": GROUPS[5]},
                            "map_data": {"difference": [1]}},
                "expected": {"N_sharp": fin(5), "MCC": fin(5), "MC": INF}})
    out.append({"name": "space form homotopic pair",
                "problem": {"domain": {"kind": "sphere", "m": 6},
                            "target": {"kind": "space_form", "n": 3, "pi1": GROUPS[3]},
                            "map_data": {"f1_homotopic_f2": True}},
                "expected": zeros()})
    out.append({"name": "even-dimensional space form is left open",
                "problem": {"domain": {"kind": "sphere", "m": 3},
                            "target": {"kind": "projective", "field": "R", "n": 2},
                            "map_data": {"f1_homotopic_f2": False}},
                "expected": {"N_sharp": UNKNOWN, "MCC": UNKNOWN}})
    # circle targets
    out.append({"name": "circle degrees 5 and 2",
                "problem": {"domain": {"kind": "sphere", "m": 1}, "target": {"kind": "circle"},
                            "map_data": {"degrees": [5, 2]}},
                "expected": four(fin(3), fin(3), fin(3), fin(3)) | {"reidemeister": fin(3)}})
    out.append({"name": "circle target, H_1 = Z^2, difference (6, 4)",
                "problem": {"domain": {"kind": "torus", "m": 2}, "target": {"kind": "circle"},
                            "map_data": {"h1": [[6, 4]]}},
                "expected": four(fin(2), fin(2), fin(2), INF)})
    out.append({"name": "circle target, m >= 2, difference (2, 0)",
                "problem": {"domain": {"kind": "generic", "m": 3, "h1": {"free_rank": 2, "torsion": []}},
                            "target": {"kind": "circle"}, "map_data": {"h1": [[2, 0]]}},
                "expected": four(fin(2), fin(2), fin(2), INF)})
    out.append({"name": "circle target, zero difference",
                "problem": {"domain": {"kind": "torus", "m": 2}, "target": {"kind": "circle"},
                            "map_data": {"h1": [[0, 0]]}},
                "expected": zeros() | {"reidemeister": INF}})
    # sphere targets
    out.append({"name": "sphere target, f1 ~ a f2",
                "problem": {"domain": {"kind": "sphere", "m": 4}, "target": {"kind": "sphere", "n": 3},
                            "map_data": {"f1_homotopic_af2": True}},
                "expected": zeros()})
    out.append({"name": "sphere target m=n=1 degrees 4 and 1",
                "problem": {"domain": {"kind": "sphere", "m": 1}, "target": {"kind": "sphere", "n": 1},
                            "map_data": {"degrees": [4, 1]}},
                "expected": {"N_sharp": fin(3), "MCC": fin(3)}})
    out.append({"name": "sphere target m=4 n=3 generator difference",
                "problem": {"domain": {"kind": "sphere", "m": 4}, "target": {"kind": "sphere", "n": 3},
                            "map_data": {"difference_af2": [1]}},
                "expected": {"N_sharp": fin(1), "MCC": fin(1), "MC": fin(1)}})
    out.append({"name": "sphere target m=4 n=2 outside the suspension image",
                "problem": {"domain": {"kind": "sphere", "m": 4}, "target": {"kind": "sphere", "n": 2},
                            "map_data": {"f1": [1], "f2": [0]}},
                "expected": {"N_sharp": fin(1), "MCC": fin(1), "MC": INF}})
    # self-coincidence
    rp2 = {"kind": "projective", "field": "R", "n": 2}
    out.append({"name": "projection RP^2 x S^3 -> RP^2",
                "problem": {"domain": {"kind": "product_with_sphere", "base": rp2, "m": 5},
                            "target": rp2, "pair": "self"},
                "expected": four(fin(1), fin(1), fin(1), INF)})
    out.append({"name": "self pair into a torus",
                "problem": {"domain": {"kind": "sphere", "m": 5}, "target": {"kind": "torus", "n": 2},
                            "pair": "self"},
                "expected": zeros()})
    out.append({"name": "self pair into a noncompact target",
                "problem": {"domain": {"kind": "torus", "m": 3},
                            "target": {"kind": "generic", "n": 2, "compact": False}, "pair": "self"},
                "expected": zeros()})
    out.append({"name": "self pair, sphere domain, pi_1 = Z/4",
                "problem": {"domain": {"kind": "sphere", "m": 6},
                            "target": {"kind": "generic", "n": 4, "euler": 2, "pi1": "gens: a; rels: a^4"},
                            "pair": "self"},
                "expected": {"N": fin(0), "N_sharp": fin(0)}})
    # root case
    out.append({"name": "root, index 2 in Z/6, omega# nonzero asserted",
                "problem": {"domain": {"kind": "generic", "m": 6, "pi1": "gens: x; rels:"},
                            "target": {"kind": "generic", "n": 4, "euler": 1, "pi1": "gens: a; rels: a^6"},
                            "pair": "root", "map_data": {"pi1_f1": ["a^2"]},
                            "assert": {"omega_sharp_nonzero": True}},
                "expected": {"N_sharp": fin(2), "MCC": fin(2), "reidemeister": fin(2),
                             "conditional_on": ["assert.omega_sharp_nonzero"]}})
    out.append({"name": "root, infinite index in a free group",
                "problem": {"domain": {"kind": "generic", "m": 5, "pi1": "gens: x; rels:"},
                            "target": {"kind": "generic", "n": 3, "pi1": "gens: a, b; rels:"},
                            "pair": "root", "map_data": {"pi1_f1": ["a"]}},
                "expected": zeros() | {"reidemeister": INF}})
    out.append({"name": "root, noncompact target",
                "problem": {"domain": {"kind": "sphere", "m": 5},
                            "target": {"kind": "generic", "n": 3, "compact": False}, "pair": "root"},
                "expected": zeros()})
    # loose sphere-domain targets
    out.append({"name": "sphere domain, target with infinite fundamental group",
                "problem": {"domain": {"kind": "sphere", "m": 5},
                            "target": {"kind": "generic", "n": 3, "pi1": "gens: a; rels:"},
                            "map_data": {"f1_homotopic_f2": False}},
                "expected": zeros()})
    out.append({"name": "sphere domain, product target",
                "problem": {"domain": {"kind": "sphere", "m": 5},
                            "target": {"kind": "product", "factors": [{"kind": "sphere", "n": 2},
                                                                      {"kind": "sphere", "n": 2}]}},
                "expected": zeros()})
    # equal dimensions
    out.append({"name": "torus T^3 with supplied Nielsen number 3",
                "problem": {"domain": {"kind": "torus", "m": 3}, "target": {"kind": "torus", "n": 3},
                            "map_data": {"nielsen_number": 3}},
                "expected": four(fin(3), fin(3), fin(3), fin(3))
                | {"conditional_on": ["map_data.nielsen_number"]}})
    out.append({"name": "index vector over Z/2, m = n = 3",
                "problem": {"domain": {"kind": "sphere", "m": 3},
                            "target": {"kind": "space_form", "n": 3, "pi1": GROUPS[2]},
                            "map_data": {"index_vector": [[1], [0]]}},
                "expected": four(fin(1), fin(1), fin(1), fin(1))})
    out.append({"name": "dimension below the target",
                "problem": {"domain": {"kind": "sphere", "m": 2}, "target": {"kind": "sphere", "n": 5}},
                "expected": zeros()})
    return out


def main():
    OUT.write_text(json.dumps({"schema": 1, "cases": cases()}, indent=2) + "\n")
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
