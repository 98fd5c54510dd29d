"""Pydantic models for run configuration and reports."""

from enum import Enum
from pathlib import Path

from pydantic import BaseModel, Field


class ArithmeticMode(str, Enum):
    """How scalars read from input files are represented."""

    FLOAT = "float"
    RATIONAL = "rational"


class Verdict(str, Enum):
    """Outcome of the root-theoretic Deligne-Simpson criterion."""

    SOLVABLE = "predicted-solvable"
    UNSOLVABLE = "predicted-unsolvable"
    UNDECIDED = "undecided"


class SearchOutcome(str, Enum):
    """Outcome of the numerical witness search."""

    WITNESS = "witness"
    NONE_FOUND = "none-found"
    NOT_RUN = "not-run"


class RunConfig(BaseModel):
    """Global settings shared by every CLI command."""

    seed: int = Field(default=0, description="Seed for all random draws")
    tol: float = Field(default=1e-8, gt=0, description="Residual tolerance")
    mode: ArithmeticMode = Field(
        default=ArithmeticMode.FLOAT, description="Scalar arithmetic mode"
    )
    output: Path | None = Field(
        default=None, description="Append machine lines to this file as well"
    )


class CheckResult(BaseModel):
    """Result of one property check."""

    name: str = Field(description="Check identifier")
    residual: float = Field(description="Largest residual observed")
    passed: bool = Field(description="True if every sample met the tolerance")
    samples: int = Field(default=1, description="Number of samples evaluated")
    detail: str = Field(default="", description="Free-form diagnostic")

    def machine_line(self) -> str:
        """Render the parseable report line."""
        return f"CHECK {self.name} residual={self.residual:.3e} pass={self.passed}"


class DSRecord(BaseModel):
    """Criterion verdict and search result for one Deligne-Simpson instance."""

    instance_id: str = Field(description="Stable instance identifier")
    verdict: Verdict = Field(description="Criterion verdict")
    search: SearchOutcome = Field(description="Search outcome")
    residual: float = Field(description="Best residual reached by the search")
    seed: int = Field(description="Seed used by the search")
    certificate: str = Field(default="", description="Why the verdict was reached")
    agreement: str = Field(
        default="agree", description="agree, inconclusive or counterexample"
    )

    def machine_line(self) -> str:
        """Render the parseable report line."""
        return (
            f"DS {self.instance_id} verdict={self.verdict.value} "
            f"search={self.search.value} residual={self.residual:.3e} "
            f"seed={self.seed}"
        )


class Reading(BaseModel):
    """One row of the readings dictionary for a supernova graph."""

    label: str = Field(description="'generic' or the part it is read through")
    rank: int = Field(description="Rank of the wild character variety bundle")
    m: int = Field(description="Number of tame poles")
    h_factors: list[int] = Field(description="Dimensions of the GL factors of H(Q)")
    classes: dict[str, str] = Field(description="Conjugacy class per core node")
    n_a: int = Field(description="Number of distinct eigenvalues of A")
    n_t: list[int] = Field(description="Number of T-eigenvalues per remaining part")
    empty: bool = Field(default=False, description="Reading forced empty")
    note: str = Field(default="", description="Reason for emptiness, if any")
