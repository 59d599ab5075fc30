"""Reading and writing matrix sets (``.json``) and automata (``.paut``)."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Union

from .automata import PartialAutomaton
from .boolmat import MatrixSet
from .errors import ParseError

Instance = Union[MatrixSet, PartialAutomaton]


def dumps_matrix_set(s: MatrixSet) -> str:
    return json.dumps(s.to_dict()) + "\n"


def loads_matrix_set(text: str) -> MatrixSet:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ParseError("expected a JSON object with 'n' and 'matrices'")
    return MatrixSet.from_dict(data)


def dumps_automaton(a: PartialAutomaton) -> str:
    return a.to_text()


def loads_automaton(text: str) -> PartialAutomaton:
    return PartialAutomaton.from_text(text)


def dumps(obj: Instance) -> str:
    if isinstance(obj, MatrixSet):
        return dumps_matrix_set(obj)
    return dumps_automaton(obj)


def suffix_for(obj: Instance) -> str:
    return ".json" if isinstance(obj, MatrixSet) else ".paut"


def load_matrix_set(path: str | Path) -> MatrixSet:
    return loads_matrix_set(Path(path).read_text())


def load_automaton(path: str | Path) -> PartialAutomaton:
    return loads_automaton(Path(path).read_text())


def load(path: str | Path) -> Instance:
    path = Path(path)
    if path.suffix == ".json":
        return load_matrix_set(path)
    if path.suffix == ".paut":
        return load_automaton(path)
    raise ParseError(f"unknown file type {path.suffix!r}; expected .json or .paut")


def save(obj: Instance, path: str | Path) -> None:
    Path(path).write_text(dumps(obj))
