"""Reading and writing action spec files (JSON, schema-checked)."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import jsonschema

from .action import ActionSpec, Curve, Principal
from .errors import DomainError, SpecFormatError
from .funcfield import MPoly, PolyFp, RatFunc

_PRINCIPAL = {
    "type": "object",
    "properties": {
        "kind": {"const": "principal"},
        "p": {"type": "integer", "minimum": 2},
        "mult": {"type": "integer", "minimum": 1},
    },
    "required": ["kind", "p"],
    "additionalProperties": False,
}

_CURVE = {
    "type": "object",
    "properties": {
        "kind": {"const": "curve"},
        "p": {"type": "integer", "minimum": 2},
        "images": {"type": "array", "items": {"type": "string"}, "minItems": 1},
        "inverted": {"type": "array", "items": {"type": "string"}},
        "mult": {"type": "integer", "minimum": 1},
        "defining_poly": {"type": "string"},
    },
    "required": ["kind", "p", "images"],
    "additionalProperties": False,
}

SCHEMA = {
    "type": "object",
    "properties": {
        "description": {"type": "string"},
        "d": {"type": "integer", "minimum": 1, "maximum": 3},
        "suspended": {"type": "boolean"},
        "components": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["kind"],
                "if": {"properties": {"kind": {"const": "principal"}}},
                "then": _PRINCIPAL,
                "else": _CURVE,
            },
        },
    },
    "required": ["d", "components"],
    "additionalProperties": False,
}

BUILTIN = ("fullshift2", "ledrappier", "ledrappier3", "mixed", "point", "principal2", "pshift", "pshift_rational", "pshift_w3")


@dataclass(frozen=True)
class LoadedSpec:
    spec: ActionSpec
    sha256: str
    source: str


def _where(err: jsonschema.ValidationError) -> str:
    return "/" + "/".join(str(x) for x in err.absolute_path)


def spec_from_dict(data) -> ActionSpec:
    """Validate against :data:`SCHEMA` and build the spec."""
    errors = sorted(jsonschema.Draft202012Validator(SCHEMA).iter_errors(data), key=lambda e: list(e.absolute_path))
    if errors:
        e = errors[0]
        raise SpecFormatError(f"spec invalid at {_where(e)}: {e.message}")
    d = data["d"]
    suspended = data.get("suspended", False)
    comps = []
    for i, c in enumerate(data["components"]):
        try:
            comps.append(_component(c))
        except DomainError as exc:
            raise SpecFormatError(f"spec invalid at /components/{i}: {exc}") from None
    return ActionSpec(d, comps, suspended)


def _component(c: dict):
    p = c["p"]
    if c["kind"] == "principal":
        return Principal(p, c.get("mult", 1))
    images = tuple(RatFunc.parse(s, p) for s in c["images"])
    inverted = tuple(PolyFp.parse(s, p) for s in c.get("inverted", []))
    f = c.get("defining_poly")
    poly = MPoly.parse(f, p, len(images)) if f is not None else None
    return Curve(p, images, inverted, c.get("mult", 1), poly)


def load_spec(name_or_path: str) -> LoadedSpec:
    """Load a spec file, or a builtin by name (``ledrappier`` or ``ledrappier.json``)."""
    path = Path(name_or_path)
    if path.is_file():
        raw = path.read_bytes()
        source = str(path)
    else:
        stem = path.name[:-5] if path.name.endswith(".json") else path.name
        if stem not in BUILTIN:
            raise FileNotFoundError(f"no spec file {name_or_path!r} and no builtin named {stem!r}")
        raw = resources.files("algzeta.specs").joinpath(f"{stem}.json").read_bytes()
        source = f"builtin:{stem}"
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise SpecFormatError(f"{source}: not JSON ({exc.msg} at line {exc.lineno} column {exc.colno})") from None
    return LoadedSpec(spec_from_dict(data), hashlib.sha256(raw).hexdigest(), source)


def spec_to_dict(spec: ActionSpec) -> dict:
    comps = []
    for c in spec.components:
        if isinstance(c, Principal):
            comps.append({"kind": "principal", "p": c.p, "mult": c.mult})
        else:
            item = {
                "kind": "curve",
                "p": c.p,
                "images": [str(r) for r in c.images],
                "inverted": [str(g) for g in c.inverted],
                "mult": c.mult,
            }
            if c.defining_poly is not None:
                item["defining_poly"] = str(c.defining_poly)
            comps.append(item)
    return {"d": spec.d, "suspended": spec.suspended, "components": comps}
