"""Graph-spec documents: a markdown-style text format for quivers and data.

A document has a ``# name`` title followed by ``## Section`` blocks. Blank
lines and lines starting with ``%`` are ignored. Recognised sections::

    ## Nodes
    1 2 3                         node names, space separated

    ## Colours
    0: 1 | 2 | 3                  colour: parts separated by '|'

    ## Colour Order
    1: 0 2                        node: colours in cyclic order

    ## Irregular Type
    A=0: a T=0 dim=1; b T=1 dim=1 one line per A-eigenspace

    ## Legs
    1: dims=2 1; params=2 3/2     leg glued to a core node

    ## Dimensions
    1: 1

    ## Parameters
    1: 2

    ## Classes
    1: 2:(1) 3:(1)                eigenvalue:(partition) per eigenvalue

    ## Markings
    1: 2, 3

    ## Representation
    1<-2:                         block for the map V_2 -> V_1
    1 0
    0 1

Either ``Colours`` or ``Irregular Type`` defines the core. With ``Legs`` the
quiver is the supernova graph obtained by gluing the legs onto the core.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from ..blocklinalg.jordan import ClassSpec
from ..exceptions import MqvError, SpecParseError
from ..scalars import Scalar, format_scalar, is_exact, parse_scalar, to_complex
from ..schemas import ArithmeticMode
from .fission import EigenNode, IrregularPart, IrregularType, fission_graph
from .legs import Leg, attach_legs, leg_node_name
from .quiver import ColourBlock, ColouredQuiver

SECTION_ORDER = [
    "Nodes",
    "Colours",
    "Colour Order",
    "Irregular Type",
    "Legs",
    "Dimensions",
    "Parameters",
    "Classes",
    "Markings",
    "Representation",
]

Line = tuple[int, str]


@dataclass
class GraphSpec:
    """Parsed contents of a graph-spec document."""

    name: str
    core: ColouredQuiver
    legs: dict[str, Leg] = field(default_factory=dict)
    irregular_type: IrregularType | None = None
    dims: dict[str, int] = field(default_factory=dict)
    params: dict[str, Scalar] = field(default_factory=dict)
    classes: dict[str, ClassSpec] = field(default_factory=dict)
    markings: dict[str, tuple[Scalar, ...]] = field(default_factory=dict)
    maps: dict[tuple[str, str], np.ndarray] = field(default_factory=dict)

    @cached_property
    def quiver(self) -> ColouredQuiver:
        """The core, or the supernova graph when legs are given."""
        if not self.legs:
            return self.core
        return attach_legs(self.core, self.legs)

    def dimension_vector(self) -> dict[str, int]:
        """Dimension per node: leg data first, explicit Dimensions override."""
        out = {node: 0 for node in self.quiver.nodes}
        if self.irregular_type is not None:
            out.update(self.irregular_type.dims)
        for core_node, leg in self.legs.items():
            for position, dim in enumerate(leg.dims, start=1):
                out[leg_node_name(core_node, position)] = dim
        out.update(self.dims)
        return out

    def parameter_vector(self) -> dict[str, Scalar]:
        """Parameter per node: leg data first, explicit Parameters override."""
        out: dict[str, Scalar] = {node: 1 for node in self.quiver.nodes}
        for core_node, leg in self.legs.items():
            for position, q in enumerate(leg.params, start=1):
                out[leg_node_name(core_node, position)] = q
        out.update(self.params)
        return out


def _split_sections(text: str) -> tuple[str, dict[str, list[Line]], dict[str, int]]:
    title = ""
    sections: dict[str, list[Line]] = {}
    starts: dict[str, int] = {}
    current: str | None = None
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip()
        if line.startswith("# ") and not title and current is None:
            title = line[2:].strip()
            continue
        if line.startswith("## "):
            current = line[3:].strip()
            if current not in SECTION_ORDER:
                raise SpecParseError(f"Unknown section {current!r}", lineno, 4)
            if current in sections:
                raise SpecParseError(f"Section {current!r} repeated", lineno, 4)
            sections[current] = []
            starts[current] = lineno
            continue
        stripped = line.strip()
        if not stripped or stripped.startswith("%"):
            continue
        if current is None:
            raise SpecParseError("Content outside any section", lineno, 1)
        sections[current].append((lineno, line))
    return title, sections, starts


def _column(line: str, token: str) -> int:
    pos = line.find(token)
    return pos + 1 if pos >= 0 else 1


def _keyed(entry: Line) -> tuple[str, str]:
    lineno, line = entry
    if ":" not in line:
        raise SpecParseError("Expected 'key: value'", lineno, 1)
    key, value = line.split(":", 1)
    key = key.strip()
    if not key:
        raise SpecParseError("Empty key", lineno, 1)
    return key, value.strip()


def _scalar(entry: Line, token: str, mode: ArithmeticMode) -> Scalar:
    try:
        return parse_scalar(token, mode)
    except ValueError as e:
        raise SpecParseError(str(e), entry[0], _column(entry[1], token)) from e


def _integer(entry: Line, token: str) -> int:
    try:
        return int(token)
    except ValueError as e:
        raise SpecParseError(
            f"Expected an integer, got {token!r}", entry[0], _column(entry[1], token)
        ) from e


def _parse_colours(entries: list[Line]) -> list[ColourBlock]:
    blocks = []
    for entry in entries:
        key, value = _keyed(entry)
        colour = _integer(entry, key)
        parts = tuple(tuple(part.split()) for part in value.split("|"))
        blocks.append(ColourBlock(colour, parts))
    return blocks


def _parse_colour_order(entries: list[Line]) -> dict[str, tuple[int, ...]]:
    out = {}
    for entry in entries:
        key, value = _keyed(entry)
        out[key] = tuple(_integer(entry, token) for token in value.split())
    return out


def _parse_irregular_type(entries: list[Line]) -> IrregularType:
    parts = []
    for entry in entries:
        key, value = _keyed(entry)
        if not key.startswith("A="):
            raise SpecParseError("Expected 'A=<eigenvalue>:'", entry[0], 1)
        a_eig = to_complex(_scalar(entry, key[2:], ArithmeticMode.FLOAT))
        nodes = []
        for chunk in value.split(";"):
            tokens = chunk.split()
            if not tokens:
                continue
            name, t_eig, dim = tokens[0], 0j, 1
            for token in tokens[1:]:
                if token.startswith("T="):
                    t_eig = to_complex(_scalar(entry, token[2:], ArithmeticMode.FLOAT))
                elif token.startswith("dim="):
                    dim = _integer(entry, token[4:])
                else:
                    raise SpecParseError(
                        f"Unexpected token {token!r}",
                        entry[0],
                        _column(entry[1], token),
                    )
            nodes.append(EigenNode(name, t_eig, dim))
        parts.append(IrregularPart(a_eig, tuple(nodes)))
    return IrregularType(tuple(parts))


def _parse_legs(entries: list[Line], mode: ArithmeticMode) -> dict[str, Leg]:
    legs = {}
    for entry in entries:
        key, value = _keyed(entry)
        fields: dict[str, list[str]] = {}
        for chunk in value.split(";"):
            if "=" not in chunk:
                raise SpecParseError(
                    "Expected 'dims=...; params=...'",
                    entry[0],
                    _column(entry[1], chunk),
                )
            name, body = chunk.split("=", 1)
            fields[name.strip()] = body.split()
        if set(fields) != {"dims", "params"}:
            raise SpecParseError("Leg needs exactly dims and params", entry[0], 1)
        dims = tuple(_integer(entry, t) for t in fields["dims"])
        params = tuple(_scalar(entry, t, mode) for t in fields["params"])
        try:
            legs[key] = Leg(dims, params)
        except MqvError as e:
            raise SpecParseError(str(e), entry[0], 1) from e
    return legs


def _parse_class(entry: Line, value: str, mode: ArithmeticMode) -> ClassSpec:
    data = []
    for token in value.split():
        if ":(" not in token or not token.endswith(")"):
            raise SpecParseError(
                f"Expected 'eigenvalue:(partition)', got {token!r}",
                entry[0],
                _column(entry[1], token),
            )
        eig, parts = token.rsplit(":(", 1)
        partition = tuple(_integer(entry, p) for p in parts[:-1].split(",") if p)
        data.append((_scalar(entry, eig, mode), partition))
    try:
        return ClassSpec(tuple(data))
    except MqvError as e:
        raise SpecParseError(str(e), entry[0], 1) from e


def _parse_matrix_rows(rows: list[Line], mode: ArithmeticMode) -> np.ndarray:
    values = [[_scalar(entry, t, mode) for t in entry[1].split()] for entry in rows]
    widths = {len(row) for row in values}
    if len(widths) > 1:
        raise SpecParseError("Ragged matrix rows", rows[0][0], 1)
    exact = mode == ArithmeticMode.RATIONAL and all(
        is_exact(v) for row in values for v in row
    )
    return np.array(values, dtype=object if exact else complex)


def _parse_representation(
    entries: list[Line], mode: ArithmeticMode
) -> dict[tuple[str, str], np.ndarray]:
    maps: dict[tuple[str, str], np.ndarray] = {}
    header: tuple[str, str] | None = None
    rows: list[Line] = []

    def flush() -> None:
        if header is not None:
            maps[header] = _parse_matrix_rows(rows, mode) if rows else np.zeros((0, 0))

    for entry in entries:
        line = entry[1].strip()
        if line.endswith(":") and "<-" in line:
            flush()
            head, tail = (s.strip() for s in line[:-1].split("<-", 1))
            if (head, tail) in maps:
                raise SpecParseError(f"Map {head}<-{tail} given twice", entry[0], 1)
            header, rows = (head, tail), []
        elif header is None:
            raise SpecParseError(
                "Matrix rows before any 'head<-tail:' line", entry[0], 1
            )
        else:
            rows.append(entry)
    flush()
    return maps


def _build_core(
    title: str,
    sections: dict[str, list[Line]],
    starts: dict[str, int],
) -> tuple[ColouredQuiver, IrregularType | None]:
    if "Irregular Type" in sections:
        irregular = _parse_irregular_type(sections["Irregular Type"])
        return fission_graph(irregular, name=title), irregular
    if "Colours" not in sections and "Nodes" not in sections:
        raise SpecParseError("Need a Nodes, Colours or Irregular Type section", 1, 1)
    blocks = _parse_colours(sections.get("Colours", []))
    if "Nodes" in sections:
        nodes = tuple(t for _, line in sections["Nodes"] for t in line.split())
    else:
        nodes = tuple(dict.fromkeys(n for b in blocks for n in b.nodes))
    orders = _parse_colour_order(sections.get("Colour Order", []))
    colour_order: tuple[tuple[str, tuple[int, ...]], ...] = ()
    if orders:
        colour_order = tuple(
            (
                node,
                orders.get(
                    node, tuple(sorted(b.colour for b in blocks if node in b.nodes))
                ),
            )
            for node in nodes
        )
    try:
        quiver = ColouredQuiver(nodes, tuple(blocks), colour_order, name=title)
    except MqvError as e:
        raise SpecParseError(str(e), starts.get("Colours", 1), 1) from e
    return quiver, None


def parse_spec(text: str, mode: ArithmeticMode = ArithmeticMode.RATIONAL) -> GraphSpec:
    """Parse a graph-spec document.

    Args:
        text: Document text.
        mode: Scalar arithmetic for parameters, classes and matrices.

    Returns:
        GraphSpec with every section present in the document.

    Raises:
        SpecParseError: On malformed input, with line and column.
    """
    title, sections, starts = _split_sections(text)
    core, irregular = _build_core(title, sections, starts)
    spec = GraphSpec(name=title, core=core, irregular_type=irregular)

    if "Legs" in sections:
        spec.legs = _parse_legs(sections["Legs"], mode)
    for entry in sections.get("Dimensions", []):
        key, value = _keyed(entry)
        spec.dims[key] = _integer(entry, value)
    for entry in sections.get("Parameters", []):
        key, value = _keyed(entry)
        spec.params[key] = _scalar(entry, value, mode)
    for entry in sections.get("Classes", []):
        key, value = _keyed(entry)
        spec.classes[key] = _parse_class(entry, value, mode)
    for entry in sections.get("Markings", []):
        key, value = _keyed(entry)
        spec.markings[key] = tuple(
            _scalar(entry, t.strip(), mode) for t in value.split(",") if t.strip()
        )
    if "Representation" in sections:
        spec.maps = _parse_representation(sections["Representation"], mode)

    if spec.legs:
        missing = [n for n in core.nodes if n not in spec.legs]
        for node in missing:
            spec.legs[node] = Leg(
                (spec.dims.get(node, 0),), (spec.params.get(node, 1),)
            )
        try:
            spec.quiver  # noqa: B018
        except MqvError as e:
            raise SpecParseError(str(e), starts["Legs"], 1) from e

    known = set(spec.quiver.nodes)
    for section in ("Dimensions", "Parameters", "Classes", "Markings"):
        for entry in sections.get(section, []):
            key, _ = _keyed(entry)
            if key not in known:
                raise SpecParseError(f"Unknown node {key!r} in {section}", entry[0], 1)
    return spec


def _render_entry(value: Scalar) -> str:
    if is_exact(value):
        return str(value).replace(" ", "")
    c = complex(value)
    if c.imag == 0:
        return repr(c.real)
    sign = "+" if c.imag >= 0 else "-"
    return f"{c.real!r}{sign}{abs(c.imag)!r}*I"


def render_spec(spec: GraphSpec) -> str:
    """Render a GraphSpec back to document text.

    ``parse_spec(render_spec(s))`` reproduces the quiver, legs and all data
    sections of ``s``.
    """
    sections: dict[str, str] = {}
    core = spec.core
    if spec.irregular_type is not None:
        sections["Irregular Type"] = "\n".join(
            f"A={format_scalar(part.a_eig)}: "
            + "; ".join(
                f"{n.name} T={format_scalar(n.t_eig)} dim={n.dim}" for n in part.nodes
            )
            for part in spec.irregular_type.parts
        )
    else:
        sections["Nodes"] = " ".join(core.nodes)
        if core.blocks:
            sections["Colours"] = "\n".join(
                f"{b.colour}: " + " | ".join(" ".join(p) for p in b.parts)
                for b in core.blocks
            )
        sections["Colour Order"] = "\n".join(
            f"{node}: {' '.join(str(c) for c in order)}"
            for node, order in core.colour_order
            if len(order) > 1
        )
    if spec.legs:
        sections["Legs"] = "\n".join(
            f"{node}: dims={' '.join(str(d) for d in spec.legs[node].dims)}; "
            f"params={' '.join(_render_entry(q) for q in spec.legs[node].params)}"
            for node in core.nodes
        )
    if spec.dims:
        sections["Dimensions"] = "\n".join(f"{k}: {v}" for k, v in spec.dims.items())
    if spec.params:
        sections["Parameters"] = "\n".join(
            f"{k}: {_render_entry(v)}" for k, v in spec.params.items()
        )
    if spec.classes:
        sections["Classes"] = "\n".join(
            f"{k}: "
            + " ".join(
                f"{_render_entry(v)}:({','.join(str(p) for p in parts)})"
                for v, parts in c.eigen_data
            )
            for k, c in spec.classes.items()
        )
    if spec.markings:
        sections["Markings"] = "\n".join(
            f"{k}: {', '.join(_render_entry(v) for v in m)}"
            for k, m in spec.markings.items()
        )
    if spec.maps:
        blocks = []
        for (head, tail), matrix in spec.maps.items():
            rows = [" ".join(_render_entry(v) for v in row) for row in matrix]
            blocks.append("\n".join([f"{head}<-{tail}:", *rows]))
        sections["Representation"] = "\n".join(blocks)

    parts = [f"# {spec.name}"]
    for name in SECTION_ORDER:
        if sections.get(name):
            parts.append("")
            parts.append(f"## {name}")
            parts.append(sections[name])
    return "\n".join(parts) + "\n"
