"""mqvkit - multiplicative quiver varieties, Stokes data and DS problems."""

from .blocklinalg import ClassSpec, GradedSpace, build_phi_chain, gauss_gram
from .config import FIBER_TOL, load_run_config
from .dsolver import DSInstance, ds_criterion, ds_cross_validate, ds_search
from .exceptions import MqvError
from .graph import ColouredQuiver, build_complete_kpartite, parse_spec, render_spec
from .kacmoody import Params, RootVector, classify_roots, is_generic
from .representation import GraphRep, in_fiber, is_irreducible, moment_map
from .schemas import CheckResult, DSRecord, Reading, RunConfig, Verdict
from .stokes import emit_readings, fuse, splay, tame_to_stokes
from .suites import SUITES

__all__ = [
    "ColouredQuiver",
    "build_complete_kpartite",
    "parse_spec",
    "render_spec",
    "RootVector",
    "Params",
    "classify_roots",
    "is_generic",
    "GradedSpace",
    "ClassSpec",
    "build_phi_chain",
    "gauss_gram",
    "GraphRep",
    "moment_map",
    "in_fiber",
    "is_irreducible",
    "splay",
    "fuse",
    "tame_to_stokes",
    "emit_readings",
    "DSInstance",
    "ds_criterion",
    "ds_search",
    "ds_cross_validate",
    "SUITES",
    "RunConfig",
    "CheckResult",
    "DSRecord",
    "Reading",
    "Verdict",
    "MqvError",
    "FIBER_TOL",
    "load_run_config",
]
