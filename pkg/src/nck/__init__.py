"""Exact computation of the coincidence invariants N, N#, MCC and MC."""

from .abelian import FgAbGroup, IntMatrix, SubgroupDesc, cokernel, image_index, in_subgroup, smith_normal_form
from .engine import InvariantReport, covering_transfer, parse_problem, solve
from .fpgroups import FpGroup, abelianization, realize_finite, reidemeister_count, subgroup_index, todd_coxeter
from .spheres import SphereTable, default_table
from .torus import TorusInstance, coincidence_set, nielsen_data
from .values import INF, Unknown

__version__ = "0.1.0"

__all__ = [
    "FgAbGroup", "FpGroup", "INF", "IntMatrix", "InvariantReport", "SphereTable", "SubgroupDesc",
    "TorusInstance", "Unknown", "abelianization", "cokernel", "coincidence_set", "covering_transfer",
    "default_table", "image_index", "in_subgroup", "nielsen_data", "parse_problem", "realize_finite",
    "reidemeister_count", "smith_normal_form", "solve", "subgroup_index", "todd_coxeter",
]
