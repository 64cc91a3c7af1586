"""Regenerate src/nck/data/sphere_tables.json from the literal data below.

Run from the repository root: ``python3 tools/build_sphere_table.py``.
"""

import json
from pathlib import Path

TODA = "Toda, Composition Methods in Homotopy Groups of Spheres (1962), tables of pi_{n+k}(S^n)"
VERSION = "2026.1"


def group(n, k):
    """(free_rank, torsion, labels) for pi_{n+k}(S^n), n >= 2, 0 <= k <= 7."""
    if k == 0:
        return (1, [], [f"iota_{n}"])
    if k == 1:
        return (1, [], ["eta_2"]) if n == 2 else (0, [2], [f"eta_{n}"])
    if k == 2:
        return (0, [2], [f"eta_{n}^2"])
    if k == 3:
        if n == 2:
            return (0, [2], ["eta_2^3"])
        if n == 3:
            return (0, [12], ["nu'"])
        if n == 4:
            return (1, [12], ["nu_4", "E nu'"])
        return (0, [24], [f"nu_{n}"])
    if k == 4:
        return {2: (0, [12], ["eta_2 nu'"]), 3: (0, [2], ["nu' eta_6"]),
                4: (0, [2, 2], ["nu_4 eta_7", "E nu' eta_7"]),
                5: (0, [2], ["nu_5 eta_8"])}.get(n, (0, [], []))
    if k == 5:
        return {2: (0, [2], ["eta_2 nu' eta_6"]), 3: (0, [2], ["nu' eta_6^2"]),
                4: (0, [2, 2], ["nu_4 eta_7^2", "E nu' eta_7^2"]), 5: (0, [2], ["nu_5 eta_8^2"]),
                6: (1, [], ["[iota_6, iota_6]"])}.get(n, (0, [], []))
    if k == 6:
        if n == 2:
            return (0, [2], ["eta_2 nu' eta_6^2"])
        if n == 3:
            return (0, [3], ["alpha_1(3) alpha_1(6)"])
        if n == 4:
            return (0, [3, 24], ["E alpha_1(3) alpha_1(6)", "nu_4 nu_7"])
        return (0, [2], [f"nu_{n}^2"])
    if k == 7:
        return {2: (0, [3], ["eta_2 alpha_1(3) alpha_1(6)"]), 3: (0, [15], ["alpha_2(3) + alpha_1(3)[5]"]),
                4: (0, [15], ["E (alpha_2(3) + alpha_1(3)[5])"]), 5: (0, [30], ["sigma'''"]),
                6: (0, [60], ["sigma''"]), 7: (0, [120], ["sigma'"]),
                8: (1, [120], ["sigma_8", "E sigma'"])}.get(n, (0, [240], [f"sigma_{n}"]))
    raise ValueError(k)


# E: pi_{n+k}(S^n) -> pi_{n+k+1}(S^{n+1}) keyed by (n, k); columns are source generators.
# Pairs missing here are isomorphisms of cyclic groups with matrix [[1]].
SUSPENSIONS = {
    (2, 1): [[1]], (2, 3): [[6]], (2, 4): [[0]], (2, 5): [[0]], (2, 6): [[0]], (2, 7): [[0]],
    (3, 3): [[0], [1]], (3, 4): [[0], [1]], (3, 5): [[0], [1]], (3, 6): [[1], [0]],
    (4, 3): [[1, 2]], (4, 4): [[1, 0]], (4, 5): [[1, 0]], (4, 6): [[0, 1]], (4, 7): [[2]],
    (5, 5): [[0]], (5, 7): [[2]], (6, 7): [[2]], (7, 7): [[0], [1]], (8, 7): [[1, 2]],
}


def nontrivial(g):
    return g[0] + len(g[1]) > 0


def build():
    groups = [{"m": 1, "n": 1, "free_rank": 1, "torsion": [], "labels": ["iota_1"],
               "provenance": "degree: pi_1(S^1) = Z"}]
    for n in range(2, 11):
        for k in range(8):
            f, t, lab = group(n, k)
            groups.append({"m": n + k, "n": n, "free_rank": f, "torsion": t, "labels": lab,
                           "provenance": "degree: pi_n(S^n) = Z" if k == 0 else TODA})
    suspensions = [{"m": 1, "n": 1, "matrix": [[1]], "provenance": "suspension preserves degree"}]
    for n in range(2, 10):
        for k in range(8):
            src, tgt = group(n, k), group(n + 1, k)
            if not (nontrivial(src) and nontrivial(tgt)):
                continue
            mat = SUSPENSIONS.get((n, k))
            if mat is None:
                assert src[:2] == tgt[:2] and src[0] + len(src[1]) == 1, (n, k)
                mat = [[1]]
            if n == 2 and k == 1:
                prov = "the Hopf map eta_2 suspends to the generator eta_3"
            elif k == 0:
                prov = "suspension preserves degree"
            elif n + k < 2 * n - 1:
                prov = "Freudenthal: isomorphism in the stable range; " + TODA
            else:
                prov = TODA
            suspensions.append({"m": n + k, "n": n, "matrix": mat, "provenance": prov})
    kernels = [{"m": m, "n": 3, "generators": [], "derivation": "explicit",
                "provenance": "h: pi_q(S^2) -> pi_q(S^3) is an isomorphism for q >= 3 "
                              "since Omega S^2 ~ S^1 x Omega S^3"}
               for m in range(4, 11)]
    return {"schema": 1, "version": VERSION, "groups": groups,
            "suspensions": suspensions, "hopf_kernels": kernels}


if __name__ == "__main__":
    out = Path(__file__).resolve().parents[1] / "src" / "nck" / "data" / "sphere_tables.json"
    out.write_text(json.dumps(build(), indent=1) + "\n")
    print(f"wrote {out}")
