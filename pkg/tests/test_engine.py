import json
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nck.engine import (InputContradiction, InvariantReport, ProblemError, covering_transfer,
                        parse_problem, solve)
from nck.engine.rules import Context
from nck.spheres import default_table
from nck.values import INF, Unknown

LENS = {n: f"gens: a; rels: a^{n}" for n in range(1, 10)}


def sphere(m):
    return {"kind": "sphere", "m": m}


def lens(order, n=3):
    return {"kind": "space_form", "n": n, "pi1": LENS[order]}


def values(r):
    return (r.N, r.N_sharp, r.MCC, r.MC)


def unknown(v):
    return isinstance(v, Unknown)


# ---------------------------------------------------------------- headline examples


def test_lens_root_nonzero_class():
    r = solve({"domain": sphere(4), "target": lens(5), "pair": "root", "map_data": {"class_is_zero": False}})
    assert (r.N_sharp, r.MCC, r.MC) == (5, 5, INF)
    assert unknown(r.N)


def test_sphere_target_antipodal_homotopic():
    r = solve({"domain": sphere(6), "target": {"kind": "sphere", "n": 4}, "map_data": {"f1_homotopic_af2": True}})
    assert values(r) == (0, 0, 0, 0)


def test_circle_target_difference():
    r = solve({"domain": {"kind": "generic", "m": 3, "h1": {"free_rank": 2, "torsion": []}},
               "target": {"kind": "circle"}, "map_data": {"h1": [[2, 0]]}})
    assert values(r) == (2, 2, 2, INF)


def test_projection_self_coincidence():
    rp2 = {"kind": "projective", "field": "R", "n": 2}
    r = solve({"domain": {"kind": "product_with_sphere", "base": rp2, "m": 4}, "target": rp2, "pair": "self"})
    assert values(r) == (1, 1, 1, INF)


@pytest.mark.parametrize("target", [{"kind": "torus", "n": 2}, {"kind": "generic", "n": 3, "compact": False},
                                    {"kind": "generic", "n": 4, "euler": 0}, lens(3)])
def test_self_pairs_with_nowhere_zero_field(target):
    r = solve({"domain": sphere(7), "target": target, "pair": "self"})
    assert values(r) == (0, 0, 0, 0)


# ---------------------------------------------------------------- circle rule


def test_circle_degrees():
    r = solve({"domain": sphere(1), "target": {"kind": "circle"}, "map_data": {"degrees": [5, 2]}})
    assert values(r) == (3, 3, 3, 3)


def test_circle_zero_difference():
    r = solve({"domain": {"kind": "torus", "m": 3}, "target": {"kind": "circle"}, "map_data": {"h1": [[0, 0, 0]]}})
    assert values(r) == (0, 0, 0, 0) and r.reidemeister == INF


def test_circle_gcd():
    r = solve({"domain": {"kind": "torus", "m": 2}, "target": {"kind": "circle"}, "map_data": {"h1": [[6, 4]]}})
    assert (r.N_sharp, r.MCC, r.MC) == (2, 2, INF)


def test_circle_torsion_column_must_vanish():
    with pytest.raises(InputContradiction, match="torsion"):
        solve({"domain": {"kind": "generic", "m": 2, "h1": {"free_rank": 1, "torsion": [2]}},
               "target": {"kind": "circle"}, "map_data": {"h1": [[1, 1]]}})


# ---------------------------------------------------------------- root rule


def test_root_omega_sharp_conditional():
    r = solve({"domain": {"kind": "generic", "m": 7, "pi1": "gens: x; rels:"},
               "target": {"kind": "generic", "n": 4, "pi1": "gens: a; rels: a^6", "euler": 2},
               "pair": "root", "map_data": {"pi1_f1": ["a^2"]}, "assert": {"omega_sharp_nonzero": True}})
    assert (r.N_sharp, r.MCC, r.reidemeister) == (2, 2, 2)
    assert r.conditional_on == ("assert.omega_sharp_nonzero",)
    assert unknown(r.MC)


def test_root_infinite_index():
    r = solve({"domain": {"kind": "generic", "m": 5, "pi1": "gens: x; rels:"},
               "target": {"kind": "generic", "n": 3, "pi1": "gens: a, b; rels:"},
               "pair": "root", "map_data": {"pi1_f1": ["a"]}})
    assert values(r) == (0, 0, 0, 0)


def test_root_noncompact():
    r = solve({"domain": sphere(5), "target": {"kind": "generic", "n": 3, "compact": False}, "pair": "root"})
    assert values(r) == (0, 0, 0, 0)


def test_root_budget_unknown_propagates():
    p = {"domain": {"kind": "generic", "m": 5, "pi1": "gens: x; rels:"},
         "target": {"kind": "generic", "n": 3, "pi1": "gens: a, b; rels: a^2, b^3"},
         "pair": "root", "map_data": {"pi1_f1": ["a b"]}}
    r = solve(p, budget=100)
    assert unknown(r.reidemeister) and "budget" in r.reidemeister.reason
    assert unknown(r.N_sharp) and "budget" in r.N_sharp.reason


# ---------------------------------------------------------------- space forms


@pytest.mark.parametrize("order,mc", [(2, 2), (3, INF)])
def test_space_form_mc(order, mc):
    r = solve({"domain": sphere(4), "target": lens(order), "map_data": {"difference": [1]}})
    assert (r.N_sharp, r.MCC, r.MC) == (order, order, mc)


def test_space_form_homotopic():
    r = solve({"domain": sphere(5), "target": lens(7), "map_data": {"f1_homotopic_f2": True}})
    assert values(r) == (0, 0, 0, 0)


def test_even_space_form_left_open():
    r = solve({"domain": sphere(5), "target": {"kind": "projective", "field": "R", "n": 4},
               "map_data": {"f1_homotopic_f2": False}})
    assert unknown(r.N_sharp) and "even-dimensional" in r.N_sharp.reason


def test_space_form_with_even_n_needs_small_group():
    with pytest.raises(ProblemError, match="target"):
        parse_problem({"domain": sphere(5), "target": {"kind": "space_form", "n": 4, "pi1": LENS[3]}})


def test_contradiction_homotopic_but_omega_nonzero():
    with pytest.raises(InputContradiction, match="omega_sharp_nonzero"):
        solve({"domain": sphere(4), "target": lens(5), "pair": "root",
               "map_data": {"class_is_zero": True}, "assert": {"omega_sharp_nonzero": True}})


def test_contradiction_between_flags_and_coordinates():
    with pytest.raises(InputContradiction, match="f1_homotopic_f2"):
        solve({"domain": sphere(4), "target": lens(3), "map_data": {"difference": [1], "f1_homotopic_f2": True}})


# ---------------------------------------------------------------- sphere targets


def test_sphere_target_mc_one():
    r = solve({"domain": sphere(4), "target": {"kind": "sphere", "n": 3}, "map_data": {"difference_af2": [1]}})
    assert (r.N_sharp, r.MCC, r.MC) == (1, 1, 1)


def test_sphere_target_degrees_one_dimensional():
    r = solve({"domain": sphere(1), "target": {"kind": "sphere", "n": 1}, "map_data": {"degrees": [4, 1]}})
    assert (r.N_sharp, r.MCC) == (3, 3)


def test_sphere_target_even_n_uses_sum():
    # n = 2 even, m = 2: [a f2] = -[f2], so [f1] - [a f2] = d1 + d2
    r = solve({"domain": sphere(2), "target": {"kind": "sphere", "n": 2}, "map_data": {"degrees": [1, -1]}})
    assert (r.N_sharp, r.MCC, r.MC) == (0, 0, 0)
    r = solve({"domain": sphere(2), "target": {"kind": "sphere", "n": 2}, "map_data": {"degrees": [1, 1]}})
    assert (r.N_sharp, r.MCC) == (1, 1)


# ---------------------------------------------------------------- other rules


def test_wecken_declines_in_dimension_two():
    r = solve({"domain": {"kind": "torus", "m": 2}, "target": {"kind": "torus", "n": 2},
               "map_data": {"nielsen_number": 3}})
    assert r.N == 3 and unknown(r.MC)
    assert not any(rule == "wecken.equal_dimension" for rule, _ in r.provenance)


def test_wecken_propagates():
    r = solve({"domain": {"kind": "torus", "m": 3}, "target": {"kind": "torus", "n": 3},
               "map_data": {"nielsen_number": 3}})
    assert values(r) == (3, 3, 3, 3)
    assert "map_data.nielsen_number" in r.conditional_on


def test_trivial_suspension_source_gives_dichotomy():
    # pi_4(S^1) = 0, so a finite MC would have to vanish
    r = solve({"domain": {"kind": "generic", "m": 5, "h1": {"free_rank": 0, "torsion": []}},
               "target": {"kind": "generic", "n": 2, "euler": 2}, "map_data": {}})
    assert unknown(r.MC) and "infinite" in r.MC.reason
    assert any(rule == "suspension.trivial_source" for rule, _ in r.provenance)


def test_loose_targets():
    for target in [{"kind": "generic", "n": 3, "pi1": "gens: a; rels:"},
                   {"kind": "product", "factors": [{"kind": "sphere", "n": 2}, {"kind": "sphere", "n": 3}]},
                   {"kind": "generic", "n": 3, "compact": False}]:
        r = solve({"domain": sphere(6), "target": target})
        assert values(r) == (0, 0, 0, 0), target


def test_x_m_checklist():
    table = default_table()

    def xm(target, m):
        return Context(parse_problem({"domain": sphere(m), "target": target}), table, 1000).x_m_vanishes()[0]

    assert xm({"kind": "sphere", "n": 3}, 9) is True
    assert xm({"kind": "generic", "n": 5, "euler": 2}, 7) is True           # m <= 2n - 3
    assert xm({"kind": "generic", "n": 4, "euler": 2}, 8) is None           # m = 2n, nothing applies
    assert xm({"kind": "generic", "n": 4, "euler": 2, "facts": ["fibration_with_section"]}, 8) is True


def test_x_m_loose_conditional():
    r = solve({"domain": sphere(7), "target": {"kind": "generic", "n": 5, "euler": 2},
               "assert": {"omega_sharp_nonzero": False, "not_coincidence_producing": [True, None]}})
    assert values(r) == (0, 0, 0, 0)
    assert set(r.conditional_on) == {"assert.omega_sharp_nonzero", "assert.not_coincidence_producing"}


def test_index_vector_count():
    r = solve({"domain": sphere(3), "target": lens(3), "map_data": {"index_vector": [[1], [0], [2]]}})
    assert (r.N_sharp, r.MCC, r.MC) == (2, 2, 2)
    with pytest.raises(ProblemError, match="index_vector"):
        solve({"domain": sphere(3), "target": lens(3), "map_data": {"index_vector": [[1], [0]]}})


def test_self_sphere_domain_composite_group():
    r = solve({"domain": sphere(6), "target": {"kind": "generic", "n": 4, "euler": 2, "pi1": LENS[4]},
               "pair": "self"})
    assert (r.N, r.N_sharp) == (0, 0)


def test_reidemeister_general_finite_target():
    # S3 target, identity versus trivial induced maps from a free group on two generators
    p = {"domain": {"kind": "generic", "m": 6, "pi1": "gens: x, y; rels:"},
         "target": {"kind": "generic", "n": 3, "euler": 0, "pi1": "gens: r, s; rels: r^3, s^2, s r s^-1 r"},
         "map_data": {"pi1_f1": ["r", "s"], "pi1_f2": ["r", "s"]}}
    assert solve(p).reidemeister == 3
    p["map_data"]["pi1_f2"] = ["1", "1"]
    assert solve(p).reidemeister == 1


def test_pi1_images_must_respect_relators():
    p = {"domain": {"kind": "generic", "m": 6, "pi1": "gens: x; rels: x^2"},
         "target": {"kind": "generic", "n": 3, "euler": 0, "pi1": "gens: a; rels: a^3"},
         "map_data": {"pi1_f1": ["a"], "pi1_f2": ["1"]}}
    with pytest.raises(ProblemError, match="pi1_f1"):
        solve(p)


# ---------------------------------------------------------------- input validation


@pytest.mark.parametrize("problem,field", [
    ({"target": {"kind": "circle"}}, "domain"),
    ({"domain": sphere(2), "target": {"kind": "blob"}}, "target.kind"),
    ({"domain": sphere(2), "target": {"kind": "circle"}, "pair": "odd"}, "pair"),
    ({"domain": sphere(2), "target": {"kind": "circle"}, "map_data": {"colour": 1}}, "map_data"),
    ({"domain": sphere(4), "target": lens(3), "pair": "root", "map_data": {"f2": [1]}}, "map_data.f2"),
    ({"domain": sphere(4), "target": lens(3), "map_data": {"f1": [1, 0], "f2": [0, 0]}}, "map_data.f1"),
])
def test_problem_errors_name_the_field(problem, field):
    with pytest.raises(ProblemError) as info:
        solve(problem)
    assert info.value.field.startswith(field)


# ---------------------------------------------------------------- reports


def test_report_round_trip_and_determinism():
    p = {"domain": sphere(4), "target": lens(5), "pair": "root", "map_data": {"class_is_zero": False}}
    a, b = solve(p), solve(p)
    assert a.dumps() == b.dumps()
    assert InvariantReport.loads(a.dumps()) == a
    assert json.loads(a.dumps())["MC"] == "infinite"


def test_covering_transfer():
    lifted = solve({"domain": sphere(4), "target": {"kind": "sphere", "n": 3}, "pair": "root",
                    "map_data": {"f1": [1]}})
    assert lifted.N_sharp == 1
    for d in (2, 3, 5):
        assert covering_transfer(lifted, d, "root").N_sharp == d
        assert covering_transfer(lifted, d, "self").N_sharp == 1
    zero = solve({"domain": sphere(4), "target": {"kind": "sphere", "n": 3}, "pair": "root",
                  "map_data": {"f1": [0]}})
    assert covering_transfer(zero, math.inf, "root").N_sharp == 0


# ---------------------------------------------------------------- properties


circle_problems = st.builds(
    lambda r, row: {"domain": {"kind": "torus", "m": r}, "target": {"kind": "circle"},
                    "map_data": {"h1_f1": [row[:r]], "h1_f2": [[0] * r]}},
    st.integers(1, 3), st.lists(st.integers(-5, 5), min_size=3, max_size=3))

lens_problems = st.builds(
    lambda m, order, c, pair: {"domain": sphere(m), "target": lens(order), "pair": pair,
                               "map_data": {"f1": [c]} if pair == "root" else {"difference": [c]}},
    st.sampled_from([4, 5, 6]), st.sampled_from([1, 2, 3, 5]), st.integers(0, 3), st.sampled_from(["root", "general"]))


@settings(max_examples=80, deadline=None)
@given(st.one_of(circle_problems, lens_problems))
def test_swap_symmetry(p):
    if p.get("pair") == "root":
        return
    prob = parse_problem(p)
    a, b = solve(prob), solve(prob.swapped())
    assert (a.N, a.N_sharp) == (b.N, b.N_sharp)


@pytest.mark.parametrize("values, message", [
    ((2, 1, 1, 1), "chain"),
    ((0, 0, 0, -1), "negative"),
    ((0, 0, math.inf, math.inf), "infinite"),
])
def test_check_report_rejects_broken_reports(values, message):
    from nck.engine import InternalInconsistency, InvariantReport, check_report, parse_problem
    problem = parse_problem({"domain": {"kind": "sphere", "m": 4}, "target": {"kind": "sphere", "n": 3}})
    report = InvariantReport(*values, reidemeister=1)
    with pytest.raises(InternalInconsistency, match=message):
        check_report(report, problem)


def test_check_report_root_dichotomy():
    from nck.engine import InternalInconsistency, InvariantReport, check_report, parse_problem
    problem = parse_problem({"domain": {"kind": "sphere", "m": 4},
                             "target": {"kind": "space_form", "n": 3, "pi1": "gens: a; rels: a^5"},
                             "pair": "root"})
    with pytest.raises(InternalInconsistency, match="neither"):
        check_report(InvariantReport(2, 2, 2, 2, reidemeister=5), problem)
    check_report(InvariantReport(5, 5, 5, math.inf, reidemeister=5), problem)
