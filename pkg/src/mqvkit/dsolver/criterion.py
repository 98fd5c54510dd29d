"""The root-theoretic criterion for graphical Deligne-Simpson problems.

An instance is predicted solvable when d is a positive root, q^d = 1, and every
nontrivial decomposition d = d_1 + d_2 + ... into positive roots with
q^{d_k} = 1 satisfies Delta(d) > Delta(d_1) + Delta(d_2) + ..., where
Delta(d) = 2 - (d, d).
"""

from dataclasses import dataclass, field

import logfire

from ..graph.quiver import ColouredQuiver
from ..kacmoody.classify import classify_roots, expected_dimension, is_positive_root
from ..kacmoody.roots import Params, RootVector
from ..scalars import format_scalar, is_one
from ..schemas import Verdict
from .instance import DSInstance


@dataclass
class CriterionResult:
    """Verdict with the reason and the decompositions that were examined."""

    verdict: Verdict
    certificate: str
    delta: int
    decompositions: int = 0
    violating: list[RootVector] = field(default_factory=list)


def _describe(parts: list[RootVector]) -> str:
    return " + ".join(p.describe() for p in parts)


def _decompositions(target: RootVector, roots: list[RootVector], start: int = 0):
    """Multisets of ``roots[start:]`` (in index order) summing to ``target``."""
    if target.is_zero():
        yield []
        return
    for k in range(start, len(roots)):
        beta = roots[k]
        if not beta.fits_in(target):
            continue
        for rest in _decompositions(target - beta, roots, k):
            yield [beta, *rest]


def criterion_for(
    quiver: ColouredQuiver, q: Params, d: RootVector, limit: int | None = None
) -> CriterionResult:
    """Evaluate the criterion for (q, d) on a supernova graph.

    Args:
        quiver: Supernova graph.
        q: Parameters.
        d: Dimension vector.
        limit: Stop after this many decompositions (the verdict is then
            undecided unless a violation was already found).

    Returns:
        CriterionResult. Float parameters give ``undecided`` when some
        q^alpha needed for the verdict falls in the float ambiguity band.
    """
    delta = expected_dimension(d, quiver)
    if not is_positive_root(d, quiver):
        return CriterionResult(Verdict.UNSOLVABLE, "d is not a positive root", delta)
    total = is_one(q.power(d))
    if total is None:
        return CriterionResult(Verdict.UNDECIDED, "q^d=1 undecided", delta)
    if not total:
        return CriterionResult(
            Verdict.UNSOLVABLE, f"q^d≠1 (q^d={format_scalar(q.power(d))})", delta
        )

    system = classify_roots(quiver, d)
    roots: list[RootVector] = []
    uncertain: set[RootVector] = set()
    for beta in system.real + system.imaginary:
        if beta == d:
            continue
        verdict = is_one(q.power(beta))
        if verdict is False:
            continue
        roots.append(beta)
        if verdict is None:
            uncertain.add(beta)

    count = 0
    undecided: list[RootVector] | None = None
    for parts in _decompositions(d, roots):
        if len(parts) < 2:
            continue
        count += 1
        if sum(expected_dimension(p, quiver) for p in parts) >= delta:
            if any(p in uncertain for p in parts):
                undecided = undecided or parts
                continue
            logfire.debug("Criterion violated", d=d.describe(), parts=_describe(parts))
            return CriterionResult(
                Verdict.UNSOLVABLE,
                f"Delta(d)={delta} <= sum over {_describe(parts)}",
                delta,
                count,
                parts,
            )
        if limit is not None and count >= limit:
            return CriterionResult(
                Verdict.UNDECIDED, f"stopped after {count} decompositions", delta, count
            )
    if undecided is not None:
        return CriterionResult(
            Verdict.UNDECIDED,
            f"q^alpha=1 undecided for {_describe(undecided)}",
            delta,
            count,
            undecided,
        )
    return CriterionResult(
        Verdict.SOLVABLE, f"{count} decompositions checked", delta, count
    )


def ds_criterion(inst: DSInstance, limit: int | None = None) -> CriterionResult:
    """The criterion for an instance's supernova data."""
    result = criterion_for(inst.quiver, inst.q, inst.d, limit)
    logfire.info(
        "DS criterion",
        instance=inst.instance_id,
        verdict=result.verdict.value,
        certificate=result.certificate,
    )
    return result
