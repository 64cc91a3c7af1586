"""Affine maps of the 2-torus: count coincidences directly and compare with the algebra.

    python3 demos/torus_oracle.py
"""

from nck.abelian import cokernel
from nck.torus import TorusInstance, brute_force_points, coincidence_set, nielsen_data


def main():
    cases = [("2 1; 1 1", "0 0; 0 0", "0 0"),
             ("1 1; 0 1", "-1 0; -1 -1", "1/2 1/3"),
             ("3 0; 0 2", "1 0; 0 1", "0 1/2"),
             ("1 0; 0 1", "1 0; 0 1", "0 0")]
    for A, B, t in cases:
        inst = TorusInstance.from_text(A, B, t)
        points = coincidence_set(inst)
        print(f"A = [{A}], B = [{B}], t = ({t})")
        if points.degenerate:
            print("  det(A - B) = 0: coincidences are not isolated")
            continue
        check = brute_force_points(inst)
        data = nielsen_data(inst)
        print(f"  det(A - B) = {inst.difference.det()}, points = {points.count}, "
              f"independent enumeration agrees: {check.points == points.points}")
        print(f"  cokernel of A - B: {cokernel(inst.difference)}, Nielsen number {data.nielsen_number}")


if __name__ == "__main__":
    main()
