"""Library of named systems and its JSON file format.

File layout (UTF-8, 1-based basis indices)::

    {"version": 1,
     "systems": [{"name": "G51", "dim": 5,
                  "table": [[[[1, 1.0]], [[2, 1.0]], ...], ...]}]}

``table[i][j]`` is the list of ``[k, c]`` pairs of the cell ``e_i * e_j``.
An optional ``"unit_index"`` per system is checked against the table.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path

from .core import HnsDef, cyclic_group_algebra
from .errors import (
    CatalogParseError,
    CatalogValidationError,
    HnsError,
    NotFoundError,
)

FORMAT_VERSION = 1
ENV_VAR = "HCS_CATALOG"


def _block_table(dim: int, products: dict[tuple[int, int], list[tuple[int, float]]]):
    return [[products.get((i, j), []) for j in range(1, dim + 1)] for i in range(1, dim + 1)]


def _complex_block(a: int, b: int) -> dict:
    # a acts as the block's 1, b as its imaginary unit
    return {
        (a, a): [(a, 1.0)],
        (a, b): [(b, 1.0)],
        (b, a): [(b, 1.0)],
        (b, b): [(a, -1.0)],
    }


def builtin_systems() -> list[HnsDef]:
    """G47, G51 and the direct-sum systems they are compared with.

    ``R+R+C`` keeps ``e2 * e2 = e3`` exactly as tabulated, which makes it
    neither unital nor associative; ``R+R+C_corrected`` uses ``e2 * e2 = e2``.
    """
    rrc = {(1, 1): [(1, 1.0)], (2, 2): [(3, 1.0)], **_complex_block(3, 4)}
    rrc_fixed = {(1, 1): [(1, 1.0)], (2, 2): [(2, 1.0)], **_complex_block(3, 4)}
    wc = {
        (1, 1): [(1, 1.0)],
        (1, 2): [(2, 1.0)],
        (2, 1): [(2, 1.0)],
        (2, 2): [(1, 1.0)],
        **_complex_block(3, 4),
    }
    rcc = {(1, 1): [(1, 1.0)], **_complex_block(2, 3), **_complex_block(4, 5)}
    return [
        cyclic_group_algebra(4),
        cyclic_group_algebra(5),
        HnsDef("R+R+C", 4, _block_table(4, rrc)),
        HnsDef("R+R+C_corrected", 4, _block_table(4, rrc_fixed)),
        HnsDef("W+C", 4, _block_table(4, wc)),
        HnsDef("R+C+C", 5, _block_table(5, rcc)),
    ]


@dataclass(frozen=True)
class Catalog:
    version: int
    systems: tuple[HnsDef, ...]

    def __post_init__(self):
        object.__setattr__(self, "systems", tuple(self.systems))
        seen = set()
        for hns in self.systems:
            if hns.name in seen:
                raise CatalogValidationError(f"duplicate system name {hns.name!r}")
            seen.add(hns.name)

    def names(self) -> list[str]:
        return [h.name for h in self.systems]

    def merged(self, other: Catalog) -> Catalog:
        """Systems of ``self`` followed by those of ``other``; same names are replaced."""
        incoming = {h.name: h for h in other.systems}
        kept = [incoming.pop(h.name, h) for h in self.systems]
        return Catalog(self.version, kept + list(incoming.values()))


def builtin_catalog() -> Catalog:
    return Catalog(FORMAT_VERSION, builtin_systems())


def search(catalog: Catalog, name: str) -> HnsDef:
    """Exact, case-sensitive lookup by name."""
    for hns in catalog.systems:
        if hns.name == name:
            return hns
    raise NotFoundError(f"no system named {name!r}; available: {', '.join(catalog.names())}")


def system_to_dict(hns: HnsDef) -> dict:
    return {
        "name": hns.name,
        "dim": hns.dim,
        "table": [[[[k, c] for k, c in cell] for cell in row] for row in hns.table],
    }


def to_dict(catalog: Catalog) -> dict:
    return {"version": catalog.version, "systems": [system_to_dict(h) for h in catalog.systems]}


def _system_from_dict(idx: int, raw) -> HnsDef:
    where = f"systems[{idx}]"
    if not isinstance(raw, dict):
        raise CatalogValidationError(f"{where}: expected an object, got {type(raw).__name__}")
    name = raw.get("name")
    if not isinstance(name, str) or not name:
        raise CatalogValidationError(f"{where}: 'name' must be a non-empty string")
    where = f"system {name!r}"
    for key in ("dim", "table"):
        if key not in raw:
            raise CatalogValidationError(f"{where}: missing field {key!r}")
    dim = raw["dim"]
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise CatalogValidationError(f"{where}: 'dim' must be a positive integer, got {dim!r}")
    table = raw["table"]
    if not isinstance(table, list) or not all(isinstance(row, list) for row in table):
        raise CatalogValidationError(f"{where}: 'table' must be a list of rows")
    for i, row in enumerate(table, start=1):
        for j, cell in enumerate(row, start=1):
            if not isinstance(cell, list) or not all(isinstance(p, list) and len(p) == 2 for p in cell):
                raise CatalogValidationError(f"{where}: cell ({i},{j}) must be a list of [k, c] pairs")
    unit_index = raw.get("unit_index")
    try:
        return HnsDef(name, dim, table, unit_index=unit_index)
    except HnsError as exc:
        raise CatalogValidationError(f"{where}: {exc}") from exc


def from_dict(data) -> Catalog:
    if not isinstance(data, dict):
        raise CatalogValidationError("top level must be an object with 'version' and 'systems'")
    version = data.get("version")
    if version != FORMAT_VERSION or isinstance(version, bool):
        raise CatalogValidationError(f"unsupported catalog version {version!r} (expected {FORMAT_VERSION})")
    systems = data.get("systems")
    if not isinstance(systems, list):
        raise CatalogValidationError("'systems' must be a list")
    return Catalog(version, [_system_from_dict(i, s) for i, s in enumerate(systems)])


def loads(text: str, source: str = "<string>") -> Catalog:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CatalogParseError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    return from_dict(data)


def dumps(catalog: Catalog) -> str:
    return json.dumps(to_dict(catalog), indent=1, ensure_ascii=False) + "\n"


def load(path) -> Catalog:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise CatalogParseError(f"{path}: not valid UTF-8 ({exc.reason})") from exc
    return loads(text, str(path))


def save(catalog: Catalog, path) -> None:
    """Write the whole file atomically (temp file in the same directory, then rename)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=path.name + ".", suffix=".tmp", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(dumps(catalog))
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def default_path() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path.home() / ".hnsexp" / "catalog.json"


def user_catalog(path=None) -> Catalog:
    """Built-ins merged with the systems stored at ``path`` (if the file exists)."""
    path = Path(path) if path is not None else default_path()
    base = builtin_catalog()
    if path.exists():
        base = base.merged(load(path))
    return base
