"""Builtin presentations and the JSON group-definition file format."""

from __future__ import annotations

import json
from functools import lru_cache
from pathlib import Path
from typing import Sequence

from . import lattice as L
from .core import Cocycle, LatticeAction, VAPresentation
from .errors import MalformedInputError, UnknownGroupError
from .finite import FiniteGroup, cyclic, direct_product, trivial_group

FILE_SCHEMA = "vabelian.group/1"


def _mat_pow(M: L.Mat, k: int) -> L.Mat:
    out = L.identity(len(M))
    for _ in range(k):
        out = L.mat_mul(out, M)
    return out


def cyclic_extension(name: str, M: Sequence[Sequence[int]], k: int, v: Sequence[int] | None = None) -> VAPresentation:
    """Z^n extended by Z/k whose generator t acts by M with t^k = v (v must be M-fixed).

    Elements of Z/k are 0..k-1 and the cocycle is c(i, j) = v when i + j >= k.
    """
    M = tuple(tuple(int(x) for x in row) for row in M)
    n = len(M)
    v = tuple(v) if v is not None else (0,) * n
    z = (0,) * n
    mats = tuple(_mat_pow(M, i) for i in range(k))
    table = tuple(tuple(v if i + j >= k else z for j in range(k)) for i in range(k))
    return VAPresentation(n, cyclic(k), LatticeAction(n, mats), Cocycle(n, table), name).validate()


def trivial_extension(name: str, n: int, Q: FiniteGroup) -> VAPresentation:
    mats = tuple(L.identity(n) for _ in range(Q.order))
    return VAPresentation(n, Q, LatticeAction(n, mats), Cocycle.zero(n, Q.order), name).validate()


def _pmm() -> VAPresentation:
    Q = direct_product(cyclic(2), cyclic(2), "Z/2xZ/2")
    # index g*2 + h: g flips x, h flips y
    mats = tuple(((1 - 2 * (x // 2), 0), (0, 1 - 2 * (x % 2))) for x in range(4))
    return VAPresentation(2, Q, LatticeAction(2, mats), Cocycle.zero(2, 4), "pmm").validate()


_BUILDERS = {
    "Z": lambda: trivial_extension("Z", 1, trivial_group()),
    "Z2": lambda: trivial_extension("Z2", 2, trivial_group()),
    "Z3": lambda: trivial_extension("Z3", 3, trivial_group()),
    "Dinf": lambda: cyclic_extension("Dinf", [[-1]], 2),
    "twistedZ": lambda: cyclic_extension("twistedZ", [[1]], 2, [1]),
    "ZxZ2": lambda: trivial_extension("ZxZ2", 1, cyclic(2)),
    "ZxZ3": lambda: trivial_extension("ZxZ3", 1, cyclic(3)),
    "ZxZ4": lambda: trivial_extension("ZxZ4", 1, cyclic(4)),
    "ZxZ6": lambda: trivial_extension("ZxZ6", 1, cyclic(6)),
    "Z_Z4sign": lambda: cyclic_extension("Z_Z4sign", [[-1]], 4),
    "p1": lambda: trivial_extension("p1", 2, trivial_group()),
    "p2": lambda: cyclic_extension("p2", [[-1, 0], [0, -1]], 2),
    "p3": lambda: cyclic_extension("p3", [[0, -1], [1, -1]], 3),
    "p4": lambda: cyclic_extension("p4", [[0, -1], [1, 0]], 4),
    "p6": lambda: cyclic_extension("p6", [[1, -1], [1, 0]], 6),
    "pm": lambda: cyclic_extension("pm", [[1, 0], [0, -1]], 2),
    "pg": lambda: cyclic_extension("pg", [[1, 0], [0, -1]], 2, [1, 0]),
    "cm": lambda: cyclic_extension("cm", [[0, 1], [1, 0]], 2),
    "pmm": _pmm,
}

CATALOG = tuple(_BUILDERS)


@lru_cache(maxsize=None)
def builtin(name: str) -> VAPresentation:
    try:
        return _BUILDERS[name]()
    except KeyError:
        raise UnknownGroupError(f"unknown builtin group {name!r}; known: {', '.join(CATALOG)}") from None


# ---------------------------------------------------------------- group files


def presentation_from_dict(data: dict, validate: bool = True) -> VAPresentation:
    try:
        n = int(data["rank"])
        table = data["Q"]
        Q = FiniteGroup.from_table(table, data.get("Q_name", "Q"))
        mats = tuple(tuple(tuple(int(x) for x in row) for row in M) for M in data["action"])
        if n == 0:
            mats = tuple(() for _ in mats)
        raw = data.get("cocycle")
        if raw is None:
            coc = Cocycle.zero(n, Q.order)
        else:
            coc = Cocycle(n, tuple(tuple(tuple(int(x) for x in v) for v in row) for row in raw))
    except (KeyError, TypeError) as exc:
        raise MalformedInputError(f"group file is missing or mistypes a field: {exc}") from None
    P = VAPresentation(n, Q, LatticeAction(n, mats), coc, str(data.get("name", "")))
    return P.validate() if validate else P


def presentation_to_dict(P: VAPresentation) -> dict:
    return {
        "schema": FILE_SCHEMA,
        "name": P.name,
        "rank": P.rank,
        "Q": [list(row) for row in P.Q.mul],
        "action": [[list(row) for row in M] for M in P.action.mats],
        "cocycle": [[list(v) for v in row] for row in P.cocycle.table],
    }


def load_group_file(path: str | Path, validate: bool = True) -> VAPresentation:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise MalformedInputError(f"{path}: not valid JSON ({exc})") from None
    if not isinstance(data, dict):
        raise MalformedInputError(f"{path}: top level must be an object")
    data.setdefault("name", Path(path).stem)
    return presentation_from_dict(data, validate)


def save_group_file(P: VAPresentation, path: str | Path) -> None:
    Path(path).write_text(json.dumps(presentation_to_dict(P), indent=1) + "\n")


def resolve(source: str) -> VAPresentation:
    """A builtin name, or a path to a group file."""
    if source in _BUILDERS:
        return builtin(source)
    if Path(source).exists():
        return load_group_file(source)
    raise UnknownGroupError(f"{source!r} is neither a builtin group nor an existing file")
