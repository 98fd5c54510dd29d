"""Typer CLI for mqvkit."""

import inspect
from pathlib import Path

import logfire
import typer
from dotenv import load_dotenv
from rich.console import Console
from rich.table import Table

from .config import DS_ITERATIONS, DS_RESTARTS, load_run_config
from .dsolver import (
    DSInstance,
    ds_criterion,
    ds_cross_validate,
    ds_search,
    interval,
    scalar_family,
    triangle,
)
from .dsolver.crossval import agreement_of, witness_document
from .exceptions import ConjectureCounterexampleError, MqvError
from .graph.legs import Leg, attach_legs
from .graph.quiver import ColouredQuiver
from .graph.spec_format import GraphSpec, parse_spec, render_spec
from .kacmoody import (
    Params,
    RootVector,
    cartan_matrix,
    classify_roots,
    expected_dimension,
    is_generic,
    reflect_sequence,
)
from .schemas import CheckResult, DSRecord, RunConfig, SearchOutcome
from .stokes.readings import emit_readings
from .suites import SUITES

# Load environment variables from .env file
load_dotenv()

# Configure logfire (no console output so stdout stays machine-readable)
logfire.configure(console=False, send_to_logfire=False)

app = typer.Typer(
    name="mqvkit",
    help="Multiplicative quiver varieties: graphs, roots, Stokes data and DS problems",
)
graph_app = typer.Typer(help="Inspect and normalise graph-spec documents")
roots_app = typer.Typer(help="Kac-Moody root combinatorics for (q, d)")
ds_app = typer.Typer(help="Graphical Deligne-Simpson problems")
app.add_typer(graph_app, name="graph")
app.add_typer(roots_app, name="roots")
app.add_typer(ds_app, name="ds")

console = Console(stderr=True)

SpecFile = typer.Argument(..., exists=True, dir_okay=False, help="Graph-spec file")


@app.callback()
def configure(
    ctx: typer.Context,
    seed: int | None = typer.Option(None, "--seed", "-s", help="Random seed"),
    tol: float | None = typer.Option(None, "--tol", "-t", help="Fiber tolerance"),
    mode: str | None = typer.Option(
        None, "--mode", "-m", help="Scalar arithmetic: float or rational"
    ),
    output: Path | None = typer.Option(
        None, "--output", "-o", help="Also append machine lines to this file"
    ),
) -> None:
    """Global settings; the environment supplies anything not given here."""
    try:
        ctx.obj = load_run_config(seed, tol, mode, str(output) if output else None)
    except ValueError as e:
        typer.echo(f"Error: {e}", err=True)
        raise typer.Exit(2) from e


def _config(ctx: typer.Context) -> RunConfig:
    if ctx.obj is None:
        ctx.obj = load_run_config()
    return ctx.obj


def _emit(config: RunConfig, line: str) -> None:
    typer.echo(line)
    if config.output is not None:
        with config.output.open("a") as f:
            f.write(line + "\n")


def _load(config: RunConfig, path: Path) -> GraphSpec:
    try:
        return parse_spec(path.read_text(), config.mode)
    except MqvError as e:
        typer.echo(f"Error: {path}: {e}", err=True)
        raise typer.Exit(2) from e


def _supernova_data(spec: GraphSpec) -> tuple[ColouredQuiver, RootVector, Params]:
    """Attach length-zero legs when the document has none."""
    dims = spec.dimension_vector()
    params = spec.parameter_vector()
    quiver = spec.quiver
    if quiver.supernova is None:
        legs = {n: Leg((dims[n],), (params[n],)) for n in spec.core.nodes}
        quiver = attach_legs(spec.core, legs)
    return (
        quiver,
        RootVector.from_mapping(quiver, dims),
        Params.from_mapping(quiver, params),
    )


def _qd(spec: GraphSpec) -> tuple[RootVector, Params]:
    quiver = spec.quiver
    return (
        RootVector.from_mapping(quiver, spec.dimension_vector()),
        Params.from_mapping(quiver, spec.parameter_vector()),
    )


def _instance(config: RunConfig, path: Path) -> DSInstance:
    spec = _load(config, path)
    try:
        return DSInstance.from_spec(spec, path.stem)
    except MqvError as e:
        typer.echo(f"Error: {path}: {e}", err=True)
        raise typer.Exit(2) from e


@graph_app.command("info")
def graph_info(ctx: typer.Context, path: Path = SpecFile) -> None:
    """Print nodes, colours, the Cartan matrix and the supernova layout."""
    config = _config(ctx)
    spec = _load(config, path)
    quiver = spec.quiver

    table = Table(title=quiver.name or path.stem)
    table.add_column("colour")
    table.add_column("parts")
    for block in quiver.blocks:
        parts = " | ".join(" ".join(p) for p in block.parts)
        table.add_row(str(block.colour), parts)
    console.print(table)

    cartan = cartan_matrix(quiver)
    console.print("Cartan matrix (" + " ".join(quiver.nodes) + "):")
    for row in cartan:
        console.print("  " + " ".join(f"{int(c):3d}" for c in row))
    layout = quiver.supernova
    if layout is not None:
        for chain in layout.legs:
            console.print(f"  leg {chain.core_node}: {chain.leg.describe()}")

    _emit(
        config,
        f"GRAPH {quiver.name or path.stem} nodes={len(quiver.nodes)} "
        f"edges={len(quiver.edges)} colours={len(quiver.colours)} "
        f"supernova={layout is not None}",
    )


@graph_app.command("build")
def graph_build(ctx: typer.Context, path: Path = SpecFile) -> None:
    """Parse a document and print it back in normal form."""
    config = _config(ctx)
    typer.echo(render_spec(_load(config, path)), nl=False)


@graph_app.command("fission")
def graph_fission(ctx: typer.Context, path: Path = SpecFile) -> None:
    """Print the fission graph of the document's irregular type."""
    config = _config(ctx)
    spec = _load(config, path)
    if spec.irregular_type is None:
        typer.echo(f"Error: {path} has no Irregular Type section", err=True)
        raise typer.Exit(2)
    quiver = spec.core
    table = Table(title=f"Fission graph {quiver.name}")
    table.add_column("edge")
    table.add_column("dims")
    dims = spec.irregular_type.dims
    for edge in quiver.edges:
        table.add_row(
            f"{edge.first} - {edge.second}", f"{dims[edge.first]}, {dims[edge.second]}"
        )
    console.print(table)
    _emit(
        config,
        f"FISSION {quiver.name or path.stem} nodes={len(quiver.nodes)} "
        f"edges={len(quiver.edges)} parts={len(quiver.blocks[0].parts)}",
    )


@roots_app.command("classify")
def roots_classify(
    ctx: typer.Context,
    path: Path = SpecFile,
    bound: int = typer.Option(2, "--bound", "-b", help="Largest coordinate"),
) -> None:
    """Enumerate real and imaginary positive roots in a box."""
    config = _config(ctx)
    spec = _load(config, path)
    system = classify_roots(spec.quiver, bound)
    table = Table(title=f"Positive roots, coordinates <= {bound}")
    table.add_column("root")
    table.add_column("kind")
    table.add_column("2-(b,b)", justify="right")
    for kind, roots in (("real", system.real), ("imaginary", system.imaginary)):
        for beta in roots:
            table.add_row(
                beta.describe(), kind, str(expected_dimension(beta, spec.quiver))
            )
    console.print(table)
    _emit(
        config,
        f"ROOTS bound={bound} real={len(system.real)} "
        f"imaginary={len(system.imaginary)}",
    )


@roots_app.command("reflect")
def roots_reflect(
    ctx: typer.Context,
    path: Path = SpecFile,
    nodes: list[str] = typer.Argument(..., help="Nodes to reflect at, in order"),
) -> None:
    """Apply (r_i, s_i) at each node in turn and print the new (q, d)."""
    config = _config(ctx)
    spec = _load(config, path)
    try:
        d, q = _qd(spec)
        d, q = reflect_sequence(nodes, d, q, spec.quiver)
    except MqvError as e:
        typer.echo(f"Error: {e}", err=True)
        raise typer.Exit(2) from e
    _emit(config, f"REFLECT {','.join(nodes)} q={q.describe()} d={d.describe()}")


@roots_app.command("generic")
def roots_generic(ctx: typer.Context, path: Path = SpecFile) -> None:
    """Check q^alpha != 1 for every alpha in R_+(d)."""
    config = _config(ctx)
    spec = _load(config, path)
    d, q = _qd(spec)
    result = is_generic(q, d, spec.quiver)
    status = {True: "generic", False: "not-generic", None: "undecided"}[
        result.generic
    ]
    witness = result.witness.describe() if result.witness is not None else "-"
    if result.witness is not None:
        console.print(f"q^alpha = 1 fails or is undecided at {witness}")
    _emit(
        config,
        f"GENERIC {status} witness={witness} candidates={len(result.candidates)}",
    )


@roots_app.command("dim")
def roots_dim(ctx: typer.Context, path: Path = SpecFile) -> None:
    """Print the expected dimension 2 - (d, d)."""
    config = _config(ctx)
    spec = _load(config, path)
    d, _ = _qd(spec)
    _emit(config, f"DIM d={d.describe()} expected={expected_dimension(d, spec.quiver)}")


def _check_table(results: list[CheckResult]) -> Table:
    table = Table(title="Checks")
    table.add_column("check")
    table.add_column("samples", justify="right")
    table.add_column("residual", justify="right")
    table.add_column("result")
    for r in results:
        mark = "[green]pass[/green]" if r.passed else "[red]FAIL[/red]"
        table.add_row(r.name, str(r.samples), f"{r.residual:.3e}", mark)
    return table


@app.command()
def verify(
    ctx: typer.Context,
    suites: list[str] = typer.Argument(
        None, help=f"Suites to run: {', '.join(SUITES)} (default: all)"
    ),
    samples: int | None = typer.Option(
        None, "--samples", "-n", help="Samples per suite"
    ),
) -> None:
    """Run property suites; exit 1 if any residual exceeds its tolerance."""
    config = _config(ctx)
    names = suites or list(SUITES)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        typer.echo(f"Error: unknown suites {unknown}", err=True)
        raise typer.Exit(2)

    results: list[CheckResult] = []
    for name in names:
        suite = SUITES[name]
        kwargs: dict[str, int] = {"seed": config.seed}
        if samples is not None and "samples" in inspect.signature(suite).parameters:
            kwargs["samples"] = samples
        for result in suite(**kwargs):
            results.append(result)
            _emit(config, result.machine_line())
    console.print(_check_table(results))
    if not all(r.passed for r in results):
        raise typer.Exit(1)


def _ds_table(records: list[DSRecord]) -> Table:
    table = Table(title="Deligne-Simpson")
    table.add_column("instance")
    table.add_column("criterion")
    table.add_column("search")
    table.add_column("residual", justify="right")
    table.add_column("agreement")
    for r in records:
        table.add_row(
            r.instance_id,
            r.verdict.value,
            r.search.value,
            f"{r.residual:.3e}",
            r.agreement,
        )
    return table


@ds_app.command("criterion")
def ds_criterion_cmd(ctx: typer.Context, path: Path = SpecFile) -> None:
    """Evaluate the root-theoretic criterion for an instance."""
    config = _config(ctx)
    inst = _instance(config, path)
    result = ds_criterion(inst)
    console.print(
        f"{inst.instance_id}: {result.certificate} "
        f"(delta={result.delta}, decompositions={result.decompositions})"
    )
    record = DSRecord(
        instance_id=inst.instance_id,
        verdict=result.verdict,
        search=SearchOutcome.NOT_RUN,
        residual=float("nan"),
        seed=config.seed,
        certificate=result.certificate,
        agreement="inconclusive",
    )
    _emit(config, record.machine_line())


@ds_app.command("search")
def ds_search_cmd(
    ctx: typer.Context,
    path: Path = SpecFile,
    restarts: int = typer.Option(DS_RESTARTS, "--restarts", "-r", help="Restarts"),
    iterations: int = typer.Option(
        DS_ITERATIONS, "--iterations", "-i", help="Iterations per restart"
    ),
    workers: int = typer.Option(1, "--workers", "-w", help="Worker threads"),
    witness: Path | None = typer.Option(
        None, "--witness", help="Write the witness as a graph-spec document"
    ),
) -> None:
    """Search numerically for an irreducible solution; exit 1 on a contradiction."""
    config = _config(ctx)
    inst = _instance(config, path)
    criterion = ds_criterion(inst)
    result = ds_search(
        inst, restarts, iterations, config.seed, config.tol, workers=workers
    )
    if witness is not None and result.outcome is SearchOutcome.WITNESS:
        witness.write_text(witness_document(inst, result))
        console.print(f"Witness written to {witness}")
    record = DSRecord(
        instance_id=inst.instance_id,
        verdict=criterion.verdict,
        search=result.outcome,
        residual=result.residual,
        seed=config.seed,
        certificate=criterion.certificate,
        agreement=agreement_of(criterion.verdict, result.outcome),
    )
    _emit(config, record.machine_line())
    console.print(_ds_table([record]))
    if record.agreement == "counterexample":
        raise typer.Exit(1)


FAMILIES = {"interval": interval, "triangle": triangle}


@ds_app.command("crossval")
def ds_crossval_cmd(
    ctx: typer.Context,
    paths: list[Path] = typer.Argument(None, help="Instance files"),
    family: list[str] = typer.Option(
        [], "--family", "-f", help="Built-in family: interval or triangle"
    ),
    max_total: int = typer.Option(3, "--max-total", help="Largest sum of d_i"),
    restarts: int = typer.Option(DS_RESTARTS, "--restarts", "-r", help="Restarts"),
    iterations: int = typer.Option(
        DS_ITERATIONS, "--iterations", "-i", help="Iterations per restart"
    ),
    workers: int = typer.Option(1, "--workers", "-w", help="Worker threads"),
) -> None:
    """Compare criterion and search; exit 1 on a counterexample."""
    config = _config(ctx)
    instances = [_instance(config, p) for p in paths or []]
    for name in family:
        if name not in FAMILIES:
            typer.echo(f"Error: unknown family {name!r}", err=True)
            raise typer.Exit(2)
        instances.extend(scalar_family(FAMILIES[name](), max_total, config.seed))
    if not instances:
        typer.echo("Error: give instance files or --family", err=True)
        raise typer.Exit(2)
    try:
        records = ds_cross_validate(
            instances, restarts, iterations, config.seed, config.tol, workers
        )
    except ConjectureCounterexampleError as e:
        typer.echo(f"Counterexample at {e.instance_id} (seed {e.seed})", err=True)
        typer.echo(e.artifact, err=True)
        raise typer.Exit(1) from e
    for record in records:
        _emit(config, record.machine_line())
    console.print(_ds_table(records))


@app.command()
def readings(ctx: typer.Context, path: Path = SpecFile) -> None:
    """Tabulate the wild character variety readings of a supernova graph."""
    config = _config(ctx)
    spec = _load(config, path)
    try:
        quiver, d, q = _supernova_data(spec)
        rows = emit_readings(quiver, q, d)
    except MqvError as e:
        typer.echo(f"Error: {e}", err=True)
        raise typer.Exit(2) from e

    table = Table(title=f"Readings of {spec.name or path.stem}")
    for column in ("reading", "rank", "m", "H(Q)", "classes", "#A", "#T"):
        table.add_column(column)
    for r in rows:
        classes = "; ".join(f"{k}={v}" for k, v in r.classes.items())
        table.add_row(
            r.label,
            str(r.rank),
            str(r.m),
            " x ".join(f"GL{n}" for n in r.h_factors),
            "[red]empty[/red]" if r.empty else classes,
            str(r.n_a),
            ",".join(str(t) for t in r.n_t),
        )
        _emit(
            config,
            f"READING {r.label.replace(' ', '-')} rank={r.rank} m={r.m} "
            f"empty={r.empty}",
        )
    console.print(table)


def main() -> None:
    """Entry point for the CLI."""
    app()


if __name__ == "__main__":
    main()
