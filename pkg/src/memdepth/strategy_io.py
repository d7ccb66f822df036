"""File formats, the builtin strategy catalog, lookup conversion, DOT export.

Machine files are JSON with explicit transition records; lookup files are
JSON tables from opponent-move windows to responses.  Parsing is strict:
structural problems raise :class:`FormatError` with a location, semantic
problems surface the machine-validation error for the offending record.
Serialization is canonical, so equal machines produce byte-equal files.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib.resources import files
from itertools import product

from .depth import Depth, INFINITE
from .fsm import Fsm, validate
from .memits import MemitGraph, MemitPairGraph


class FormatError(Exception):
    """The file text does not match the expected shape."""


class UnknownStrategyError(Exception):
    """No catalog entry has the requested name or alias."""


class UnsupportedTableError(Exception):
    """The lookup table needs information this converter does not model."""


# ---------------------------------------------------------------------------
# Machine files


_REQUIRED_FSM_FIELDS = ("inputs", "outputs", "states", "initial_state", "transitions")


def _load_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(
            f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc


def _require_string_list(document, field: str) -> None:
    value = document[field]
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise FormatError(f'"{field}" must be a list of strings')


def parse_fsm(text: str) -> Fsm:
    """Parse one machine file; see the package README for the format."""
    document = _load_json(text)
    if not isinstance(document, dict):
        raise FormatError("machine file must contain a JSON object")
    for field in _REQUIRED_FSM_FIELDS:
        if field not in document:
            raise FormatError(f'machine file is missing the "{field}" field')
    for field in ("inputs", "outputs", "states"):
        _require_string_list(document, field)
    if not isinstance(document["initial_state"], str):
        raise FormatError('"initial_state" must be a string')
    if not isinstance(document["transitions"], list):
        raise FormatError('"transitions" must be a list')
    for record in document["transitions"]:
        if not isinstance(record, dict):
            raise FormatError(f"transition record {record!r} must be an object")
        for field in ("from", "input", "to", "output"):
            if not isinstance(record.get(field), str):
                raise FormatError(
                    f'transition record {record!r} needs a string "{field}" field'
                )
    if "initial_action" in document and not isinstance(document["initial_action"], str):
        raise FormatError('"initial_action" must be a string when present')
    if "name" in document and not isinstance(document["name"], str):
        raise FormatError('"name" must be a string when present')
    return validate(document)


def serialize_fsm(fsm: Fsm) -> str:
    """Render a machine to its canonical file text (stable field order)."""
    document = {
        "name": fsm.name,
        "inputs": list(fsm.inputs),
        "outputs": list(fsm.outputs),
        "states": list(fsm.states),
        "initial_state": fsm.initial_state,
    }
    if fsm.initial_action is not None:
        document["initial_action"] = fsm.initial_action
    document["transitions"] = [
        {"from": state, "input": symbol, "to": nxt, "output": response}
        for state, symbol, nxt, response in fsm.iter_transitions()
    ]
    return json.dumps(document, indent=2) + "\n"


# ---------------------------------------------------------------------------
# Lookup tables


MAX_WINDOW_LENGTH = 16

EMPTY_WINDOW_STATE = "_"


@dataclass(frozen=True)
class LookupTable:
    """A table from the opponent's last ``window_length`` moves to a response.

    The window includes the opponent's current-turn move: a table of
    window length n reacts to the present move plus the n-1 moves before
    it.  Tables that also consult the strategy's own past moves are out
    of scope and rejected at parse time.
    """

    name: str
    window_length: int
    mapping: dict

    @property
    def symbols(self) -> tuple[str, ...]:
        """The move alphabet, inferred from the window keys."""
        return tuple(sorted({ch for key in self.mapping for ch in key}))


def parse_lookup(text: str) -> LookupTable:
    """Parse one lookup file; see the package README for the format."""
    document = _load_json(text)
    if not isinstance(document, dict):
        raise FormatError("lookup file must contain a JSON object")
    if document.get("uses_own_history"):
        raise UnsupportedTableError(
            "lookup tables that consult the strategy's own past moves are not supported"
        )
    if "window_length" not in document or "mapping" not in document:
        raise FormatError('lookup file needs "window_length" and "mapping" fields')
    n = document["window_length"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise FormatError('"window_length" must be a positive integer')
    if n > MAX_WINDOW_LENGTH:
        raise FormatError(
            f'"window_length" above {MAX_WINDOW_LENGTH} is refused'
            " (the converted machine would be astronomically large)"
        )
    mapping = document["mapping"]
    if not isinstance(mapping, dict) or not mapping:
        raise FormatError('"mapping" must be a non-empty object')
    name = document.get("name", "lookup")
    if not isinstance(name, str):
        raise FormatError('"name" must be a string when present')

    symbols = set()
    for window, response in mapping.items():
        if not isinstance(window, str) or len(window) != n:
            raise FormatError(
                f"window {window!r} does not have the declared length {n}"
            )
        if not isinstance(response, str) or len(response) != 1:
            raise FormatError(
                f"response for window {window!r} must be a single symbol"
            )
        symbols.update(window)
    for window, response in mapping.items():
        if response not in symbols:
            raise FormatError(
                f"response {response!r} for window {window!r} is not a move symbol"
            )
    for combo in product(sorted(symbols), repeat=n):
        window = "".join(combo)
        if window not in mapping:
            raise FormatError(f"mapping is missing window {window!r}")
    if len(mapping) != len(symbols) ** n:
        extra = sorted(set(mapping) - {"".join(c) for c in product(sorted(symbols), repeat=n)})
        raise FormatError(f"mapping has unexpected windows: {extra}")

    return LookupTable(name=name, window_length=n, mapping=dict(mapping))


def _window_state(window: str) -> str:
    return window if window else EMPTY_WINDOW_STATE


def lookup_to_fsm(table: LookupTable, initial_window: str | None = None) -> Fsm:
    """Unroll a lookup table into the machine that plays it.

    States remember the last ``window_length - 1`` opponent moves; reading
    the current move completes the window, emits the table's response, and
    shifts the remembered suffix.  The zero-length memory state is named
    ``"_"``.  The initial state defaults to the all-C window (or the
    lexicographically first symbol when C is not in the alphabet).
    """
    symbols = table.symbols
    n = table.window_length
    if initial_window is None:
        fill = "C" if "C" in symbols else symbols[0]
        initial_window = fill * (n - 1)
    if len(initial_window) != n - 1 or any(ch not in symbols for ch in initial_window):
        raise ValueError(
            f"initial window {initial_window!r} must be {n - 1} moves over {symbols}"
        )

    windows = ["".join(c) for c in product(symbols, repeat=n - 1)]
    transitions = [
        {
            "from": _window_state(window),
            "input": move,
            "to": _window_state((window + move)[1:]),
            "output": table.mapping[window + move],
        }
        for window in windows
        for move in symbols
    ]
    return validate(
        {
            "name": table.name,
            "inputs": list(symbols),
            "outputs": list(symbols),
            "states": [_window_state(w) for w in windows],
            "initial_state": _window_state(initial_window),
            "transitions": transitions,
        }
    )


# ---------------------------------------------------------------------------
# Builtin catalog


@dataclass(frozen=True)
class CatalogEntry:
    """One shipped strategy with its known memory-depth.

    ``provenance`` is ``"builtin"`` for machines defined by this package's
    own documentation and ``"axelrod"`` for machines transcribed by hand
    from the open-source Axelrod strategy library.
    """

    name: str
    machine: Fsm
    expected_depth: Depth
    provenance: str
    aliases: tuple[str, ...] = ()
    description: str = ""


# name -> (kind, expected depth, provenance, aliases, description)
_CATALOG = {
    "fortress3-paper-4state": (
        "machine",
        Depth.finite(3),
        "builtin",
        ("fortress3",),
        "Four-state Fortress-3: defects until the opponent cooperates three times in a row, then cooperates.",
    ),
    "infinite-2state": (
        "machine",
        INFINITE,
        "builtin",
        ("infinite",),
        "Two-state machine whose C responses never reveal which state it is in.",
    ),
    "tft-2state": (
        "machine",
        Depth.finite(1),
        "builtin",
        ("tft",),
        "Two-state Tit-For-Tat: echoes the opponent's current move.",
    ),
    "fortress3-lookup": (
        "lookup",
        Depth.finite(3),
        "builtin",
        (),
        "Window-3 lookup table (defect unless the last three opponent moves were D,D,D), unrolled to four states.",
    ),
    "fortress3-axelrod": (
        "machine",
        Depth.finite(2),
        "axelrod",
        (),
        "Three-state Fortress-3 as shipped by the Axelrod library.",
    ),
    "fortress4-axelrod": (
        "machine",
        Depth.finite(3),
        "axelrod",
        (),
        "Four-state Fortress-4 as shipped by the Axelrod library.",
    ),
    "pun1": (
        "machine",
        INFINITE,
        "axelrod",
        (),
        "Two-state punisher from the Axelrod library; reacts to defection only on alternate rounds.",
    ),
}

_ALIASES = {
    alias: name for name, meta in _CATALOG.items() for alias in meta[3]
}


def _read_data(kind: str, name: str) -> str:
    folder = "lookups" if kind == "lookup" else "machines"
    return (files("memdepth") / "data" / folder / f"{name}.json").read_text("utf-8")


@lru_cache(maxsize=None)
def builtin(name: str) -> CatalogEntry:
    """Fetch one catalog entry by canonical name or alias."""
    canonical = _ALIASES.get(name, name)
    if canonical not in _CATALOG:
        known = ", ".join(sorted(_CATALOG))
        raise UnknownStrategyError(f"unknown strategy {name!r} (catalog: {known})")
    kind, expected, provenance, aliases, description = _CATALOG[canonical]
    text = _read_data(kind, canonical)
    machine = lookup_to_fsm(parse_lookup(text)) if kind == "lookup" else parse_fsm(text)
    return CatalogEntry(
        name=canonical,
        machine=machine,
        expected_depth=expected,
        provenance=provenance,
        aliases=aliases,
        description=description,
    )


def builtin_lookup(name: str) -> LookupTable:
    """Fetch a catalog entry's raw lookup table (not its unrolled machine)."""
    canonical = _ALIASES.get(name, name)
    meta = _CATALOG.get(canonical)
    if meta is None or meta[0] != "lookup":
        raise UnknownStrategyError(f"{name!r} is not a catalog lookup table")
    return parse_lookup(_read_data("lookup", canonical))


def catalog_entries() -> tuple[CatalogEntry, ...]:
    """All catalog entries, sorted by name."""
    return tuple(builtin(name) for name in sorted(_CATALOG))


# ---------------------------------------------------------------------------
# DOT export


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _memit_id(memit) -> str:
    return f"{memit.in_action}·{memit.state}·{memit.out_action}"


def _pair_id(pair) -> str:
    lo, hi = pair.states
    return f"{pair.in_action}·{{{lo},{hi}}}·{pair.out_action}"


def _render_digraph(graph_name: str, node_lines, edge_lines) -> str:
    body = [f"digraph {graph_name} {{"]
    body.extend(f"  {line}" for line in node_lines)
    body.extend(f"  {line}" for line in edge_lines)
    body.append("}")
    return "\n".join(body) + "\n"


def export_dot(obj) -> str:
    """Render a machine, memit graph, or memit-pair graph as DOT text.

    Output is deterministic: nodes and edges appear in sorted order, so
    the same object always produces byte-identical text.  Machine edges
    are labeled ``input/output``; memit nodes ``a·STATE·b``; pair nodes
    ``a·{X,Y}·b``.
    """
    if isinstance(obj, Fsm):
        nodes = [f"{_quote(s)} [label={_quote(s)}];" for s in obj.states]
        edges = [
            f"{_quote(state)} -> {_quote(nxt)} [label={_quote(f'{symbol}/{response}')}];"
            for state, symbol, nxt, response in obj.iter_transitions()
        ]
        return _render_digraph("fsm", nodes, edges)
    if isinstance(obj, MemitGraph):
        ordered = sorted(obj.nodes)
        nodes = [f"{_quote(_memit_id(m))} [label={_quote(_memit_id(m))}];" for m in ordered]
        edges = [
            f"{_quote(_memit_id(src))} -> {_quote(_memit_id(dst))};"
            for src in ordered
            for dst in sorted(obj.successors(src))
        ]
        return _render_digraph("memits", nodes, edges)
    if isinstance(obj, MemitPairGraph):
        ordered = sorted(obj.nodes)
        nodes = [f"{_quote(_pair_id(p))} [label={_quote(_pair_id(p))}];" for p in ordered]
        edges = [
            f"{_quote(_pair_id(src))} -> {_quote(_pair_id(dst))};"
            for src in ordered
            for dst in sorted(obj.successors(src))
        ]
        return _render_digraph("memit_pairs", nodes, edges)
    raise TypeError(f"cannot export {type(obj).__name__} as DOT")
