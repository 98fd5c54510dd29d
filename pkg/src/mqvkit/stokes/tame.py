"""From tame character data (T_1, ..., T_m) to Stokes data (h, u_+, u_-).

Each T_i is factored as 1 + b_i a_i with a_i: V -> W_i surjective and
b_i: W_i -> V injective, d_i = rank(T_i - 1). Stacking

    A = (a_i T_{i-1} ... T_1)_i : V -> W,   B = (b_i)_i : W -> V

gives T_m ... T_1 = 1 + BA, and the phi-chain of (x, y) = (B, A) has
yhat^i = a_i, so hu_+ - u_- = [a_i b_j] and 1 + AB = u_-^{-1} h u_+.
"""

from collections.abc import Sequence
from dataclasses import dataclass, field

import logfire
import numpy as np
import scipy.linalg

from ..blocklinalg.grading import GradedSpace
from ..blocklinalg.jordan import ClassSpec, jordan_child, numeric_jordan
from ..blocklinalg.numerics import inv, is_invertible, norm, numerical_rank, sigma_ratio
from ..blocklinalg.phi_chain import build_phi_chain, gauss_gram
from ..exceptions import DegenerateTupleError, SingularMatrixError
from ..graph.quiver import build_complete_kpartite
from ..representation.rep import GraphRep
from ..scalars import to_complex


@dataclass
class TameTuple:
    """Invertible matrices T_1, ..., T_m on V, with an optional target class."""

    T: list[np.ndarray]
    target: ClassSpec | None = None

    def __post_init__(self) -> None:
        """Check the matrices are square, of one size and invertible."""
        if not self.T:
            raise ValueError("A tame tuple needs at least one matrix")
        self.T = [np.asarray(t, dtype=complex) for t in self.T]
        n = self.T[0].shape[0]
        for k, t in enumerate(self.T):
            if t.shape != (n, n):
                raise ValueError(f"T_{k + 1} has shape {t.shape}, expected {(n, n)}")
            if not is_invertible(t):
                raise SingularMatrixError(f"T_{k + 1}", sigma_ratio(t))

    @property
    def n(self) -> int:
        """Dimension of V."""
        return self.T[0].shape[0]

    @property
    def m(self) -> int:
        """Number of matrices."""
        return len(self.T)

    def product(self) -> np.ndarray:
        """T_m ... T_1."""
        out = np.eye(self.n, dtype=complex)
        for t in self.T:
            out = t @ out
        return out


@dataclass
class TameStokes:
    """Stokes data of a tame tuple together with the consistency report."""

    dims: tuple[int, ...]
    a: list[np.ndarray]
    b: list[np.ndarray]
    A: np.ndarray
    B: np.ndarray
    h: np.ndarray
    u_plus: np.ndarray
    u_minus: np.ndarray
    S1: np.ndarray
    S2: np.ndarray
    stokes_class: ClassSpec
    product_class: ClassSpec
    relation: str
    relation_ok: bool
    residuals: dict[str, float] = field(default_factory=dict)

    @property
    def grading(self) -> GradedSpace:
        """Grading W = W_1 + ... + W_m."""
        return GradedSpace.from_dims(self.dims)

    def max_residual(self) -> float:
        """Largest reconstruction residual."""
        return max(self.residuals.values(), default=0.0)


def factor_unipotent_part(t: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Write t = 1 + b a through the singular value decomposition of t - 1.

    a = Sigma^{1/2} V^* (first d rows) and b = U Sigma^{1/2} (first d columns),
    with d the numerical rank of t - 1.

    Raises:
        AmbiguousRankError: If the rank of t - 1 is ill-conditioned.
    """
    e = t - np.eye(t.shape[0])
    d = numerical_rank(e)
    u, s, vh = scipy.linalg.svd(e)
    root = np.sqrt(s[:d])
    a = root[:, None] * vh[:d, :]
    b = u[:, :d] * root[None, :]
    return a, b


def _same_away_from_one(left: ClassSpec, right: ClassSpec) -> bool:
    def away(spec: ClassSpec) -> ClassSpec:
        kept = [item for item in spec.eigen_data if abs(to_complex(item[0]) - 1) > 1e-6]
        return ClassSpec(tuple(kept))

    return away(left).matches(away(right))


def _relation(  # noqa: N803
    A: np.ndarray, B: np.ndarray, stokes_class: ClassSpec, product_class: ClassSpec
) -> tuple[str, bool]:
    """Compare 1 + AB (on W) and 1 + BA (on V) by the Jordan parent/child rule."""
    total, n = A.shape
    rank_a = numerical_rank(A, strict=False)
    rank_b = numerical_rank(B, strict=False)
    if rank_a == n and rank_b == n:
        return "1+AB parent", jordan_child(stokes_class).matches(product_class)
    if rank_b == total and rank_a == total:
        return "1+BA parent", jordan_child(product_class).matches(stokes_class)
    return "eigenvalues away from 1", _same_away_from_one(stokes_class, product_class)


@logfire.instrument("tame_to_stokes")
def tame_to_stokes(t: TameTuple) -> TameStokes:
    """Build (h, u_+, u_-, A, B) from a tame tuple and check the classes.

    Returns:
        TameStokes with residuals of 1 + AB = u_-^{-1} h u_+ and
        T_m ... T_1 = 1 + BA, the Jordan data of both sides and whether
        they satisfy the parent/child rule.

    Raises:
        AmbiguousRankError: If some rank(T_i - 1) is ill-conditioned.
        DegenerateTupleError: If every T_i is the identity.
    """
    factors = [factor_unipotent_part(ti) for ti in t.T]
    a = [f[0] for f in factors]
    b = [f[1] for f in factors]
    dims = tuple(ai.shape[0] for ai in a)
    if sum(dims) == 0:
        raise DegenerateTupleError(dims)

    rows = []
    running = np.eye(t.n, dtype=complex)
    for ai, ti in zip(a, t.T, strict=True):
        rows.append(ai @ running)
        running = ti @ running
    A = np.concatenate(rows, axis=0)
    B = np.concatenate(b, axis=1)

    grading = GradedSpace.from_dims(dims)
    chain = build_phi_chain(B, A, grading)
    gg = gauss_gram(chain)
    h_inv = inv(gg.h)
    s1 = gg.u_plus
    s2 = h_inv @ inv(gg.u_minus) @ gg.h

    one_ab = chain.one_plus_yx()
    one_ba = chain.one_plus_xy()
    product = t.product()
    residuals = {
        "stokes": norm(one_ab - inv(gg.u_minus) @ gg.h @ gg.u_plus)
        / max(1.0, norm(one_ab)),
        "product": norm(product - one_ba) / max(1.0, norm(product)),
        "hS2S1": norm(gg.h @ s2 @ s1 - one_ab) / max(1.0, norm(one_ab)),
    }
    stokes_class = numeric_jordan(gg.h @ s2 @ s1, markers=(1,))
    product_class = numeric_jordan(one_ba, markers=(1,))
    relation, relation_ok = _relation(A, B, stokes_class, product_class)
    if t.target is not None and not t.target.matches(product_class):
        logfire.warn(
            "Product class differs from target",
            target=t.target.describe(),
            found=product_class.describe(),
        )
    logfire.info(
        "Tame to Stokes",
        dims=dims,
        residual=max(residuals.values()),
        relation=relation,
        relation_ok=relation_ok,
    )
    return TameStokes(
        dims=dims,
        a=a,
        b=b,
        A=A,
        B=B,
        h=gg.h,
        u_plus=gg.u_plus,
        u_minus=gg.u_minus,
        S1=s1,
        S2=s2,
        stokes_class=stokes_class,
        product_class=product_class,
        relation=relation,
        relation_ok=relation_ok,
        residuals=residuals,
    )


def tame_star_rep(result: TameStokes) -> GraphRep:
    """The star-graph representation V <-> W_i given by (a_i, b_i).

    It is irreducible exactly when the T_i = 1 + b_i a_i have no common
    proper invariant subspace.
    """
    leaves = [f"W{i + 1}" for i in range(len(result.dims))]
    quiver = build_complete_kpartite([["V"], leaves], name="star")
    n = result.B.shape[0]
    dims = {"V": n, **dict(zip(leaves, result.dims, strict=True))}
    maps = {}
    for leaf, ai, bi in zip(leaves, result.a, result.b, strict=True):
        maps[("V", leaf)] = bi
        maps[(leaf, "V")] = ai
    return GraphRep(quiver, dims, maps)


def random_tame_tuple(
    n: int, dims: Sequence[int], rng: np.random.Generator, scale: float = 0.7
) -> TameTuple:
    """T_i = 1 + b_i a_i with Gaussian b_i (n x d_i) and a_i (d_i x n)."""
    out = []
    for d in dims:
        b = scale * (rng.standard_normal((n, d)) + 1j * rng.standard_normal((n, d)))
        a = scale * (rng.standard_normal((d, n)) + 1j * rng.standard_normal((d, n)))
        out.append(np.eye(n, dtype=complex) + b @ a)
    return TameTuple(out)
