"""JSON file formats for every user-facing object.

One object per file. Any nested object may be written inline, as
``{"$ref": "relative/path.json"}`` (resolved against the referring file), or
for groups as ``{"$catalog": "Q8"}``. A top-level ``"kind"`` names the object
type; without it the kind is inferred from the keys. ``dumps`` writes the
canonical form: everything inline, sorted keys, two-space indent.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .abelian import AbelianHom, FiniteAbelianGroup
from .catalog import catalog_group
from .cochains import Cochain
from .errors import GrcatError, ParseError
from .extension import AbstractKernel, make_kernel
from .functors import FunctorData
from .groups import FiniteGroup, GroupHom, make_group, permutation_group
from .grtype import GrType
from .modules import PiModule, make_module

KINDS = ("group", "abelian_group", "module", "cochain", "grtype", "functor", "kernel")


def infer_kind(data: dict) -> str:
    if "kind" in data:
        if data["kind"] not in KINDS:
            raise ParseError(f"unknown kind {data['kind']!r}")
        return data["kind"]
    keys = set(data)
    if "$catalog" in keys or "table" in keys or "permutation_generators" in keys:
        return "group"
    if "invariant_factors" in keys:
        return "abelian_group"
    if "psi" in keys:
        return "kernel"
    if "phi" in keys:
        return "functor"
    if "xi" in keys:
        return "grtype"
    if "degree" in keys:
        return "cochain"
    if "carrier" in keys:
        return "module"
    raise ParseError(f"cannot tell what kind of object has keys {sorted(keys)}")


@dataclass
class Workspace:
    """Registry of loaded objects, keyed by resolved path; resolves references."""

    objects: dict = field(default_factory=dict)

    def load(self, path: str | Path, kind: str | None = None):
        path = Path(path).resolve()
        key = (str(path), kind)
        if key not in self.objects:
            try:
                text = path.read_text()
            except OSError as exc:
                raise ParseError(f"{path}: {exc.strerror}") from exc
            data = parse_text(text, str(path))
            self.objects[key] = self.build(data, kind, path.parent)
        return self.objects[key]

    def loads(self, text: str, kind: str | None = None, base: Path | None = None):
        return self.build(parse_text(text, "<string>"), kind, base or Path.cwd())

    # dispatch --------------------------------------------------------------
    def build(self, data: Any, kind: str | None, base: Path, context: dict | None = None):
        if isinstance(data, dict) and "$ref" in data:
            return self.load(base / data["$ref"], kind)
        if not isinstance(data, dict):
            raise ParseError(f"expected an object for {kind or 'value'}, got {type(data).__name__}")
        found = infer_kind(data) if kind is None or "kind" in data else kind
        if kind is not None and found != kind:
            raise ParseError(f"expected a {kind}, found a {found}")
        try:
            return getattr(self, f"_{found}")(data, base, context or {})
        except KeyError as exc:
            raise ParseError(f"{found}: missing field {exc.args[0]!r}") from None
        except (TypeError, ValueError) as exc:
            if isinstance(exc, GrcatError):
                raise
            raise ParseError(f"{found}: {exc}") from None

    def _group(self, d, base, ctx) -> FiniteGroup:
        if "$catalog" in d:
            try:
                return catalog_group(d["$catalog"])
            except KeyError as exc:
                raise ParseError(str(exc.args[0])) from None
        if "permutation_generators" in d:
            return permutation_group(d["permutation_generators"], int(d["degree"]))
        table = d["table"]
        names = d.get("names") or [str(i) for i in range(len(table))]
        return make_group(names, table)

    def _abelian_group(self, d, base, ctx) -> FiniteAbelianGroup:
        return FiniteAbelianGroup(tuple(int(v) for v in d["invariant_factors"]))

    def _module(self, d, base, ctx) -> PiModule:
        g = self.build(d["group"], "group", base)
        a = self.build(d["carrier"], "abelian_group", base)
        action = {int(x): v for x, v in d.get("action", {}).items()}
        for x in g.elements:
            action.setdefault(x, [a.basis(j) for j in range(a.rank)])
        return make_module(g, a, action)

    def _cochain(self, d, base, ctx) -> Cochain:
        m = self.build(d["module"], "module", base) if "module" in d else ctx.get("module")
        if m is None:
            raise ParseError("cochain: missing field 'module'")
        n = int(d["degree"])
        entries = {}
        for key, v in d.get("values", {}).items():
            args = tuple(int(s) for s in key.split(",")) if key.strip() else ()
            entries[args] = v
        return Cochain.from_dict(m, n, entries)

    def _grtype(self, d, base, ctx) -> GrType:
        m = self.build(d["module"], "module", base)
        xi = self.build(d["xi"], "cochain", base, {"module": m}) if "xi" in d else Cochain.zero(m, 3)
        return GrType(m, xi.over(m) if xi.module != m else xi)

    def _functor(self, d, base, ctx) -> FunctorData:
        from .modules import pullback_module

        src = self.build(d["source"], "grtype", base)
        tgt = self.build(d["target"], "grtype", base)
        phi = GroupHom(src.pi, tgt.pi, tuple(int(v) for v in d["phi"]))
        f = AbelianHom(src.carrier, tgt.carrier, tuple(tuple(v) for v in d["f"]))
        F = FunctorData(src, tgt, phi, f)
        if d.get("g") is not None:
            m = pullback_module(phi, tgt.module)
            g = self.build(d["g"], "cochain", base, {"module": m})
            F = F.with_g(g)
        return F

    def _kernel(self, d, base, ctx) -> AbstractKernel:
        pi = self.build(d["pi"], "group", base)
        g = self.build(d["g"], "group", base)
        name = d["g"].get("$catalog", "") if isinstance(d["g"], dict) else ""
        return make_kernel(pi, g, d["psi"], d.get("name", name))


def parse_text(text: str, where: str = "<string>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{where}: line {exc.lineno}, column {exc.colno}: {exc.msg}",
                         (exc.lineno, exc.colno)) from None


def load(path: str | Path, kind: str | None = None):
    return Workspace().load(path, kind)


def loads(text: str, kind: str | None = None):
    return Workspace().loads(text, kind)


# dumping -------------------------------------------------------------------------

def to_data(obj) -> dict:
    """Canonical structured form with every reference inlined."""
    if isinstance(obj, FiniteGroup):
        return {"kind": "group", "names": list(obj.names), "table": [list(r) for r in obj.table]}
    if isinstance(obj, FiniteAbelianGroup):
        return {"kind": "abelian_group", "invariant_factors": list(obj.invariant_factors)}
    if isinstance(obj, PiModule):
        e = obj.group.identity
        action = {str(x): [list(v) for v in obj.images[x]] for x in obj.group.elements if x != e}
        return {"kind": "module", "group": to_data(obj.group), "carrier": to_data(obj.carrier), "action": action}
    if isinstance(obj, Cochain):
        return {"kind": "cochain", "degree": obj.degree, "module": to_data(obj.module),
                "values": cochain_values(obj)}
    if isinstance(obj, GrType):
        return {"kind": "grtype", "module": to_data(obj.module),
                "xi": {"kind": "cochain", "degree": 3, "values": cochain_values(obj.xi)}}
    if isinstance(obj, FunctorData):
        out = {"kind": "functor", "source": to_data(obj.source), "target": to_data(obj.target),
               "phi": list(obj.phi.image), "f": [list(v) for v in obj.f.images]}
        if obj.g is not None:
            out["g"] = {"kind": "cochain", "degree": 2, "values": cochain_values(obj.g)}
        return out
    if isinstance(obj, AbstractKernel):
        out = {"kind": "kernel", "pi": to_data(obj.pi), "g": to_data(obj.g), "psi": list(obj.psi.image)}
        if obj.name:
            out["name"] = obj.name
        return out
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def cochain_values(c: Cochain) -> dict:
    return {",".join(map(str, args)): list(v) for args, v in c.items()}


def dumps(obj) -> str:
    return json.dumps(to_data(obj), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def dump(obj, path: str | Path) -> None:
    Path(path).write_text(dumps(obj))


__all__ = ["Workspace", "load", "loads", "dumps", "dump", "to_data", "infer_kind", "parse_text", "KINDS"]
