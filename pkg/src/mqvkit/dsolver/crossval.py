"""Compare the criterion with the witness search over a family of instances."""

import json
from collections.abc import Sequence

import logfire
import numpy as np

from ..config import DEFAULT_SEED, DS_ITERATIONS, DS_RESTARTS, FIBER_TOL
from ..exceptions import ConjectureCounterexampleError
from ..graph.spec_format import GraphSpec, render_spec
from ..schemas import DSRecord, SearchOutcome, Verdict
from .criterion import ds_criterion
from .instance import DSInstance
from .search import SearchResult, ds_search


def agreement_of(verdict: Verdict, outcome: SearchOutcome) -> str:
    """agree, inconclusive or counterexample for a verdict and a search outcome."""
    if verdict is Verdict.SOLVABLE and outcome is SearchOutcome.WITNESS:
        return "agree"
    if verdict is Verdict.UNSOLVABLE and outcome is SearchOutcome.NONE_FOUND:
        return "agree"
    if verdict is Verdict.UNSOLVABLE and outcome is SearchOutcome.WITNESS:
        return "counterexample"
    return "inconclusive"


def witness_document(inst: DSInstance, search: SearchResult) -> str:
    """A graph-spec document holding the instance and its witness."""
    spec = GraphSpec(
        name=inst.instance_id,
        core=inst.core,
        classes=dict(inst.classes),
        markings=dict(inst.markings),
        dims=dict(inst.core_dims),
    )
    if search.core_rep is not None:
        spec.maps = {
            key: np.asarray(m, dtype=complex) for key, m in search.core_rep.maps.items()
        }
    header = json.dumps({"seed": search.seed, "restart": search.restart})
    return f"% {header}\n{render_spec(spec)}"


@logfire.instrument("ds_cross_validate")
def ds_cross_validate(
    family: Sequence[DSInstance],
    restarts: int = DS_RESTARTS,
    iterations: int = DS_ITERATIONS,
    seed: int = DEFAULT_SEED,
    tol: float = FIBER_TOL,
    workers: int = 1,
) -> list[DSRecord]:
    """Run the criterion and the search on every instance.

    A (predicted-solvable, none-found) pair is recorded as inconclusive. A
    verified witness for a predicted-unsolvable instance aborts the run.

    Returns:
        One DSRecord per instance, in input order.

    Raises:
        ConjectureCounterexampleError: With the instance id, seed and a
            graph-spec artifact reproducing the witness.
    """
    records = []
    for inst in family:
        criterion = ds_criterion(inst)
        search = ds_search(inst, restarts, iterations, seed, tol, workers)
        agreement = agreement_of(criterion.verdict, search.outcome)
        record = DSRecord(
            instance_id=inst.instance_id,
            verdict=criterion.verdict,
            search=search.outcome,
            residual=search.residual,
            seed=seed,
            certificate=criterion.certificate,
            agreement=agreement,
        )
        if agreement == "counterexample":
            artifact = witness_document(inst, search)
            logfire.error(
                "Criterion contradicted by a verified witness",
                instance=inst.instance_id,
                seed=seed,
                certificate=criterion.certificate,
                artifact=artifact,
            )
            raise ConjectureCounterexampleError(inst.instance_id, seed, artifact)
        if agreement == "inconclusive":
            logfire.warn(
                "Criterion and search disagree",
                instance=inst.instance_id,
                verdict=criterion.verdict.value,
                search=search.outcome.value,
            )
        records.append(record)
    agree = sum(1 for r in records if r.agreement == "agree")
    logfire.info("DS cross-validation", instances=len(records), agree=agree)
    return records
