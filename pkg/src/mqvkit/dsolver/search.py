"""Numerical witness search for graphical Deligne-Simpson problems.

The unknowns are the core maps and, for each core node with a non-scalar
class, a k_i in GL(V_i). With M_i the representative of C_i realised by its
leg, the residual is

    g_i(v) - k_i M_i k_i^{-1},   v_- v_+ = w_+ g(v) w_-,

minimised by Levenberg-Marquardt from random complex starting points. A
converged point is lifted to the supernova graph through the leg maps
(k_i a_1, b_1 k_i^{-1}, a_2, b_2, ...) and verified independently: moment
fiber, irreducibility and the class of every g_i.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import logfire
import numpy as np
import scipy.linalg

from ..blocklinalg.jordan import numeric_jordan
from ..blocklinalg.numerics import norm
from ..config import (
    DEFAULT_SEED,
    DS_ITERATIONS,
    DS_RESTARTS,
    FD_STEP,
    FIBER_TOL,
    LM_CONVERGED,
    LM_LAMBDA_ACCEPT,
    LM_LAMBDA_INIT,
    LM_LAMBDA_MAX,
    LM_LAMBDA_REJECT,
    WITNESS_STABILITY_RTOL,
)
from ..exceptions import MqvError, NotInvertibleError
from ..representation.moment import fiber_residual, moment_map
from ..representation.rep import GraphRep
from ..representation.stability import algebra_dimension, is_irreducible
from ..schemas import SearchOutcome
from ..stokes.legs import LegClass, leg_of, leg_to_class
from .instance import DSInstance


@dataclass
class RestartResult:
    """Final state of one restart."""

    index: int
    z: np.ndarray
    residual: float
    iterations: int
    witness: GraphRep | None = None
    reason: str = ""


@dataclass
class SearchResult:
    """Outcome of ``ds_search``."""

    outcome: SearchOutcome
    residual: float
    seed: int
    witness: GraphRep | None = None
    core_rep: GraphRep | None = None
    restart: int | None = None
    restarts: list[RestartResult] = field(default_factory=list)


def _complex(m: np.ndarray) -> np.ndarray:
    return np.asarray(m, dtype=complex)


class _Problem:
    """Packing of the unknowns and the residual for one instance."""

    def __init__(self, inst: DSInstance):
        self.inst = inst
        self.template = GraphRep.zero(inst.core, inst.core_dims)
        self.n_maps = self.template.coordinate_count()
        self.legs: dict[str, LegClass] = {}
        self.targets: dict[str, np.ndarray] = {}
        self.k_nodes: list[str] = []
        for node in inst.core.nodes:
            leg = leg_of(inst.quiver, node, inst.d, inst.q)
            realised = leg_to_class(leg)
            self.legs[node] = realised
            self.targets[node] = _complex(realised.M)
            if len(leg.dims) > 1 and leg.dims[0] > 0:
                self.k_nodes.append(node)
        self.size = self.n_maps + sum(self.inst.core_dims[n] ** 2 for n in self.k_nodes)

    def unpack(self, z: np.ndarray) -> tuple[GraphRep, dict[str, np.ndarray]]:
        rep = self.template.with_vector(z[: self.n_maps])
        ks = {}
        start = self.n_maps
        for node in self.k_nodes:
            d = self.inst.core_dims[node]
            ks[node] = z[start : start + d * d].reshape(d, d)
            start += d * d
        return rep, ks

    def initial(self, rng: np.random.Generator) -> np.ndarray:
        return (
            rng.standard_normal(self.size) + 1j * rng.standard_normal(self.size)
        ) / np.sqrt(2)

    def residual(self, z: np.ndarray) -> np.ndarray | None:
        """Stacked g_i - k_i M_i k_i^{-1}; None outside the big cell."""
        rep, ks = self.unpack(z)
        try:
            mu = moment_map(rep).mu
        except NotInvertibleError:
            return None
        parts = []
        for node in self.inst.core.nodes:
            target = self.targets[node]
            if node in ks:
                k = ks[node]
                try:
                    target = k @ target @ scipy.linalg.inv(k)
                except (np.linalg.LinAlgError, ValueError):
                    return None
            parts.append((_complex(mu[node]) - target).ravel())
        return np.concatenate(parts) if parts else np.zeros(0, dtype=complex)

    def jacobian(self, z: np.ndarray) -> np.ndarray | None:
        """Central differences of the holomorphic residual."""
        h = FD_STEP * max(1.0, float(np.max(np.abs(z), initial=0.0)))
        columns = []
        for k in range(z.size):
            shift = np.zeros_like(z)
            shift[k] = h
            forward = self.residual(z + shift)
            backward = self.residual(z - shift)
            if forward is None or backward is None:
                return None
            columns.append((forward - backward) / (2 * h))
        return np.column_stack(columns)

    def lift(self, z: np.ndarray) -> tuple[GraphRep, GraphRep]:
        """(supernova representation, core representation) of a point."""
        core_rep, ks = self.unpack(z)
        dims = self.inst.d.as_dict()
        maps = dict(core_rep.maps)
        layout = self.inst.quiver.supernova
        for node in self.inst.core.nodes:
            chain = layout.chain(node).nodes
            realised = self.legs[node]
            k = ks.get(node)
            for p, (a, b) in enumerate(zip(realised.a, realised.b, strict=True)):
                a, b = _complex(a), _complex(b)
                if p == 0 and k is not None:
                    a, b = k @ a, b @ scipy.linalg.inv(k)
                maps[(chain[p], chain[p + 1])] = a
                maps[(chain[p + 1], chain[p])] = b
        return GraphRep(self.inst.quiver, dims, maps), core_rep


def balance_rep(rep: GraphRep, sweeps: int = 20) -> GraphRep:
    """Rescale each V_i so incoming and outgoing maps have equal weight.

    The rescaling is an element of H, so moment values at scalar fibers and
    irreducibility are unchanged.
    """
    for _ in range(sweeps):
        changed = False
        for node in rep.quiver.nodes:
            dim = rep.dims[node]
            if dim == 0:
                continue
            into = sum(norm(m) ** 2 for (h, _), m in rep.maps.items() if h == node)
            out = sum(norm(m) ** 2 for (_, t), m in rep.maps.items() if t == node)
            if into == 0 or out == 0:
                continue
            factor = (out / into) ** 0.25
            if abs(factor - 1) > 1e-3:
                changed = True
                rep = rep.conjugated({node: factor * np.eye(dim, dtype=complex)})
        if not changed:
            break
    return rep


def verify_witness(
    inst: DSInstance, rep: GraphRep, core_rep: GraphRep, tol: float = FIBER_TOL
) -> tuple[bool, float, str]:
    """Check a candidate in the fiber, irreducible, and with g_i in C_i.

    Returns:
        (passed, fiber residual, reason for failure or "").
    """
    residual = fiber_residual(rep, inst.q)
    if not residual < tol:
        return False, residual, "not in fiber"
    try:
        balanced = balance_rep(rep)
        n = balanced.total
        if not is_irreducible(balanced):
            return False, residual, "reducible"
        if algebra_dimension(balanced, WITNESS_STABILITY_RTOL) != n * n:
            return False, residual, "near a reducible point"
        mu = moment_map(core_rep).mu
        for node in inst.core.nodes:
            spec = inst.classes[node]
            found = numeric_jordan(_complex(mu[node]), markers=spec.eigenvalues)
            if not found.matches(spec):
                return False, residual, f"class at {node} is {found.describe()}"
    except MqvError as e:
        return False, residual, f"{type(e).__name__}: {e}"
    return True, residual, ""


def _run_restart(
    problem: _Problem,
    index: int,
    seed_seq: np.random.SeedSequence,
    iterations: int,
    tol: float,
) -> RestartResult:
    rng = np.random.default_rng(seed_seq)
    z = problem.initial(rng)
    r = problem.residual(z)
    if r is None:
        return RestartResult(index, z, float("inf"), 0, reason="start outside big cell")
    cost = float(np.vdot(r, r).real)
    lam = LM_LAMBDA_INIT
    it = 0
    for it in range(1, iterations + 1):
        if np.sqrt(cost) < LM_CONVERGED or z.size == 0 or lam > LM_LAMBDA_MAX:
            break
        jac = problem.jacobian(z)
        if jac is None:
            break
        normal = jac.conj().T @ jac
        gradient = jac.conj().T @ r
        damping = lam * np.diag(np.maximum(np.diag(normal).real, 1e-12))
        try:
            step = scipy.linalg.solve(normal + damping, -gradient, assume_a="pos")
        except (np.linalg.LinAlgError, ValueError):
            lam *= LM_LAMBDA_REJECT
            continue
        trial = problem.residual(z + step)
        trial_cost = np.inf if trial is None else float(np.vdot(trial, trial).real)
        if trial_cost < cost:
            z, r, cost = z + step, trial, trial_cost
            lam *= LM_LAMBDA_ACCEPT
        else:
            lam *= LM_LAMBDA_REJECT
    result = RestartResult(index, z, float(np.sqrt(cost)), it)
    if result.residual < np.sqrt(tol):
        rep, core_rep = problem.lift(z)
        ok, residual, reason = verify_witness(problem.inst, rep, core_rep, tol)
        result.residual = residual
        result.reason = reason
        if ok:
            result.witness = rep
    else:
        result.reason = "not converged"
    return result


@logfire.instrument("ds_search")
def ds_search(
    inst: DSInstance,
    restarts: int = DS_RESTARTS,
    iterations: int = DS_ITERATIONS,
    seed: int = DEFAULT_SEED,
    tol: float = FIBER_TOL,
    workers: int = 1,
) -> SearchResult:
    """Look for an irreducible representation solving the instance.

    Restarts are independent (each owns a generator spawned from ``seed``) and
    may run on ``workers`` threads; the verified witness with the lowest
    residual wins, ties going to the lower restart index. Exhausting the
    budget returns ``none-found``, which is not a proof of nonexistence.

    Args:
        inst: The instance.
        restarts: Number of random starting points.
        iterations: Levenberg-Marquardt iterations per restart.
        seed: Seed for the starting points.
        tol: Fiber tolerance for accepting a witness.
        workers: Number of threads.

    Returns:
        SearchResult; ``residual`` is the best residual over all restarts.
    """
    problem = _Problem(inst)
    children = np.random.SeedSequence(seed).spawn(restarts)

    def run(index: int) -> RestartResult:
        return _run_restart(problem, index, children[index], iterations, tol)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, range(restarts)))
    else:
        results = [run(index) for index in range(restarts)]

    best = min(results, key=lambda r: (r.residual, r.index), default=None)
    found = [r for r in results if r.witness is not None]
    if found:
        winner = min(found, key=lambda r: (r.residual, r.index))
        _, core_rep = problem.lift(winner.z)
        logfire.info(
            "DS witness found",
            instance=inst.instance_id,
            restart=winner.index,
            residual=winner.residual,
        )
        return SearchResult(
            SearchOutcome.WITNESS,
            winner.residual,
            seed,
            witness=winner.witness,
            core_rep=core_rep,
            restart=winner.index,
            restarts=results,
        )
    residual = best.residual if best is not None else float("inf")
    logfire.info(
        "DS search exhausted",
        instance=inst.instance_id,
        residual=residual,
        reasons=sorted({r.reason for r in results}),
    )
    return SearchResult(SearchOutcome.NONE_FOUND, residual, seed, restarts=results)
