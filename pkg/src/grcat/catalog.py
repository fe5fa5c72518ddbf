"""Bundled catalog of the 42 groups of order at most 16.

Each group is stored as one JSON file under ``data/catalog`` in the
multiplication-table format. The constructions below are the source of those
files; ``python -m grcat.catalog`` rewrites them.
"""

from __future__ import annotations

import json
import sys
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Callable

from .groups import (FiniteGroup, cyclic_group, direct_product, make_group, metacyclic_group,
                     permutation_group, semidirect_product, trivial_group)


def _dihedral(n: int) -> FiniteGroup:
    return metacyclic_group(n, 2, n - 1)


def _prod(*gs: FiniteGroup) -> FiniteGroup:
    out = gs[0]
    for g in gs[1:]:
        out = direct_product(out, g)
    return out


def _c4c2_by_c2(shift_into_c4: bool) -> FiniteGroup:
    """(C4 x C2) x| C2. The C2 acts by (i, j) -> (i, i + j), or by (i, j) -> (i + 2j, j)."""
    n = direct_product(cyclic_group(4), cyclic_group(2))  # (i, j) at index 2i + j
    if shift_into_c4:
        aut = tuple(2 * ((i + 2 * j) % 4) + j for i in range(4) for j in range(2))
    else:
        aut = tuple(2 * i + (i + j) % 2 for i in range(4) for j in range(2))
    return semidirect_product(n, cyclic_group(2), [tuple(range(8)), aut])


C = cyclic_group

CONSTRUCTIONS: dict[str, Callable[[], FiniteGroup]] = {
    "C1": trivial_group,
    "C2": lambda: C(2),
    "C3": lambda: C(3),
    "C4": lambda: C(4),
    "C2xC2": lambda: _prod(C(2), C(2)),
    "C5": lambda: C(5),
    "C6": lambda: C(6),
    "S3": lambda: permutation_group([[1, 2, 0], [1, 0, 2]], 3),
    "C7": lambda: C(7),
    "C8": lambda: C(8),
    "C4xC2": lambda: _prod(C(4), C(2)),
    "C2xC2xC2": lambda: _prod(C(2), C(2), C(2)),
    "D4": lambda: _dihedral(4),
    "Q8": lambda: metacyclic_group(4, 2, 3, 2),
    "C9": lambda: C(9),
    "C3xC3": lambda: _prod(C(3), C(3)),
    "C10": lambda: C(10),
    "D5": lambda: _dihedral(5),
    "C11": lambda: C(11),
    "C12": lambda: C(12),
    "C6xC2": lambda: _prod(C(6), C(2)),
    "A4": lambda: permutation_group([[1, 2, 0, 3], [1, 0, 3, 2]], 4),
    "D6": lambda: _dihedral(6),
    "Dic3": lambda: metacyclic_group(6, 2, 5, 3),
    "C13": lambda: C(13),
    "C14": lambda: C(14),
    "D7": lambda: _dihedral(7),
    "C15": lambda: C(15),
    "C16": lambda: C(16),
    "C4xC4": lambda: _prod(C(4), C(4)),
    "(C4xC2):C2": lambda: _c4c2_by_c2(False),
    "C4:C4": lambda: metacyclic_group(4, 4, 3),
    "C8xC2": lambda: _prod(C(8), C(2)),
    "M16": lambda: metacyclic_group(8, 2, 5),
    "D8": lambda: _dihedral(8),
    "QD16": lambda: metacyclic_group(8, 2, 3),
    "Q16": lambda: metacyclic_group(8, 2, 7, 4),
    "C4xC2xC2": lambda: _prod(C(4), C(2), C(2)),
    "D4xC2": lambda: _prod(_dihedral(4), C(2)),
    "Q8xC2": lambda: _prod(metacyclic_group(4, 2, 3, 2), C(2)),
    "C4oD4": lambda: _c4c2_by_c2(True),
    "C2^4": lambda: _prod(C(2), C(2), C(2), C(2)),
}


def _file_name(index: int, name: str, order: int) -> str:
    slug = name.replace(":", "_by_").replace("(", "").replace(")", "").replace("^", "e")
    return f"{order:02d}_{index:02d}_{slug}.json"


def group_to_json(name: str, g: FiniteGroup) -> dict:
    return {"name": name, "names": list(g.names), "table": [list(r) for r in g.table]}


def write_catalog(directory: Path) -> list[Path]:
    directory.mkdir(parents=True, exist_ok=True)
    for old in directory.glob("*.json"):
        old.unlink()
    paths = []
    for i, (name, build) in enumerate(CONSTRUCTIONS.items()):
        g = build()
        path = directory / _file_name(i, name, g.order)
        path.write_text(json.dumps(group_to_json(name, g), indent=2, sort_keys=True) + "\n")
        paths.append(path)
    return paths


def catalog_dir() -> Path:
    return Path(str(resources.files("grcat") / "data" / "catalog"))


@lru_cache(maxsize=1)
def _load_all() -> tuple[tuple[str, FiniteGroup], ...]:
    out = []
    for path in sorted(catalog_dir().glob("*.json")):
        data = json.loads(path.read_text())
        out.append((data["name"], make_group(data["names"], data["table"])))
    out.sort(key=lambda item: (item[1].order, list(CONSTRUCTIONS).index(item[0])
                               if item[0] in CONSTRUCTIONS else len(CONSTRUCTIONS)))
    return tuple(out)


def load_catalog(max_order: int = 16) -> list[tuple[str, FiniteGroup]]:
    """(name, group) for every bundled group of order at most ``max_order``, by order."""
    return [(n, g) for n, g in _load_all() if g.order <= max_order]


def catalog_group(name: str) -> FiniteGroup:
    for n, g in _load_all():
        if n == name:
            return g
    raise KeyError(f"no catalog group named {name!r}")


def identify(g: FiniteGroup) -> list[str]:
    """Names of the catalog groups isomorphic to g."""
    from .groups import are_isomorphic

    return [n for n, h in load_catalog(16) if h.order == g.order and are_isomorphic(g, h)]


if __name__ == "__main__":
    target = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).parent / "data" / "catalog"
    for p in write_catalog(target):
        print(p.name)
