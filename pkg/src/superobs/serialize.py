"""Canonical JSON for groups, modules, cochains and reports.

Serialization is byte-stable: keys are sorted, separators are compact and
every Q/Z value is a reduced fraction ``{"num": n, "den": d}``.  A cochain is

    {"group": G, "coeff": "QZ" | "Z" | module, "degree": n,
     "values": {"i1|i2|...": value, ...}}

listing only the nonzero values on non-identity tuples.
"""

import hashlib
import json

from .cochain import INT_COEFF, QZ_COEFF, Cochain, CochainError, ModuleCoeff
from .grp import FinGroup, GModule, GroupError, group_from_invariants
from .qzlin import QZ

__all__ = [
    "SerializationError",
    "canonical_dumps",
    "input_hash",
    "to_jsonable",
    "group_to_json",
    "group_from_json",
    "module_from_json",
    "coeff_from_json",
    "cochain_to_json",
    "cochain_from_json",
]


class SerializationError(ValueError):
    """Malformed JSON descriptor."""


def to_jsonable(obj):
    """Recursively convert QZ values, tuples and objects with ``to_json``."""
    if isinstance(obj, QZ):
        return obj.to_json()
    if hasattr(obj, "to_json") and not isinstance(obj, type):
        return to_jsonable(obj.to_json())
    if isinstance(obj, dict):
        return {str(k) if not isinstance(k, tuple) else "|".join(map(str, k)): to_jsonable(v)
                for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    return obj


def canonical_dumps(obj, indent=None):
    data = to_jsonable(obj)
    if indent is None:
        return json.dumps(data, sort_keys=True, separators=(",", ":"))
    return json.dumps(data, sort_keys=True, indent=indent)


def input_hash(obj):
    """sha256 of the canonical serialization."""
    return hashlib.sha256(canonical_dumps(obj).encode()).hexdigest()


def group_to_json(G):
    return G.to_json()


def group_from_json(data):
    try:
        if "invariants" in data:
            return group_from_invariants([int(d) for d in data["invariants"]])
        if "table" in data:
            return FinGroup([[int(x) for x in row] for row in data["table"]])
    except (GroupError, TypeError, ValueError) as exc:
        raise SerializationError(f"bad group descriptor: {exc}") from None
    raise SerializationError("group descriptor needs 'invariants' or 'table'")


def module_from_json(G, data):
    """{"invariants": [...], "action": [per g: [per generator: residues]]}."""
    if not isinstance(data, dict) or "invariants" not in data:
        raise SerializationError("module descriptor needs 'invariants'")
    M = group_from_invariants([int(d) for d in data["invariants"]])
    try:
        if data.get("action") is None:
            return GModule.trivial_module(G, M)
        action = data["action"]
        if len(action) != G.order:
            raise SerializationError("module action needs one entry per group element")
        return GModule.from_generator_images(G, M, action)
    except GroupError as exc:
        raise SerializationError(f"bad module: {exc}") from None


def coeff_from_json(G, data):
    if data == "QZ":
        return QZ_COEFF
    if data == "Z":
        return INT_COEFF
    return ModuleCoeff(module_from_json(G, data))


def cochain_to_json(f):
    f = f.materialize()
    vals = {"|".join(map(str, t)): f.coeff.value_to_json(v) for t, v in f.items()}
    return {"group": f.G.to_json(), "coeff": f.coeff.to_json(), "degree": f.degree,
            "values": vals}


def cochain_from_json(data, G=None):
    """Parse a cochain descriptor (``G`` overrides the embedded group)."""
    try:
        if G is None:
            G = group_from_json(data["group"])
        coeff = coeff_from_json(G, data.get("coeff", "QZ"))
        n = int(data["degree"])
        values = {}
        for key, v in data.get("values", {}).items():
            tup = tuple(int(t) for t in str(key).split("|"))
            if any(not 0 <= t < G.order for t in tup):
                raise SerializationError(f"tuple {tup} out of range")
            values[tup] = coeff.value_from_json(v)
        return Cochain(G, coeff, n, values)
    except (KeyError, TypeError, ValueError, CochainError, GroupError) as exc:
        if isinstance(exc, SerializationError):
            raise
        raise SerializationError(f"bad cochain descriptor: {exc}") from None
