"""Maps into the circle: the image of the difference on H_1 decides everything.

    python3 demos/circle_targets.py
"""

from nck import solve
from nck.values import format_value


def main():
    print("T^2 -> S^1, difference on H_1 given by a row vector")
    for vec in ([6, 4], [3, 5], [0, 7], [0, 0]):
        r = solve({"domain": {"kind": "torus", "m": 2}, "target": {"kind": "circle"},
                   "map_data": {"h1": [vec]}})
        print(f"  {str(vec):<10} N# = {format_value(r.N_sharp):<4} MCC = {format_value(r.MCC):<4} "
              f"MC = {format_value(r.MC)}")
    print("S^1 -> S^1 by degrees: every minimum equals |d1 - d2|")
    for d1, d2 in ((5, 2), (-3, 4), (1, 1)):
        r = solve({"domain": {"kind": "sphere", "m": 1}, "target": {"kind": "circle"},
                   "map_data": {"degrees": [d1, d2]}})
        print(f"  degrees {d1:>2}, {d2:>2}: MC = {format_value(r.MC)}")


if __name__ == "__main__":
    main()
