"""Configuration ingestion, text syntax for specs, and artifact emission.

The config format is a flat tree: ``section:`` headers at column zero with
``key = value`` lines beneath; a file whose first non-blank character is
``{`` is read as JSON with the same section/key structure.  CSV artifacts are
UTF-8 with a header row and rationals printed ``p/q``; JSON artifacts carry a
``schema_version`` field and render rationals as strings.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from pathlib import Path

from .errors import ConfigError
from .families import (
    FamilySpec,
    MaxPowerSpec,
    PowerSpec,
    ProductSpec,
    SaturationSpec,
    SymbolicSpec,
    TableSpec,
    ValuationSpec,
)
from .lattice import AmbientRing, parse_ideal

SCHEMA_VERSION = 1


# -- value formatting ---------------------------------------------------------


def format_rational(x) -> str:
    """Rationals as p/q, integers plain."""
    f = Fraction(x)
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def json_ready(value):
    """Recursively convert rationals and tuples for JSON emission."""
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, bool) or isinstance(value, (int, str)) or value is None:
        return value
    if isinstance(value, float):
        return round(value, 12)
    if isinstance(value, dict):
        return {str(k): json_ready(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [json_ready(v) for v in value]
    return str(value)


def render_csv(header: list[str], rows: list[list]) -> str:
    lines = [",".join(header)]
    for row in rows:
        cells = []
        for cell in row:
            if isinstance(cell, Fraction):
                cells.append(format_rational(cell))
            elif isinstance(cell, float):
                cells.append(f"{cell:.12g}")
            else:
                cells.append(str(cell))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def render_json(command: str, params: dict, results: dict) -> str:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "tool": "monolim",
        "command": command,
        "params": json_ready(params),
        "results": json_ready(results),
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


# -- config files -------------------------------------------------------------


def parse_config(text: str) -> dict:
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"bad JSON config: {exc}") from exc
        if not isinstance(doc, dict):
            raise ConfigError("JSON config must be an object")
        return doc
    tree: dict = {}
    section = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        if not line.startswith((" ", "\t")) and line.endswith(":"):
            section = line[:-1].strip()
            tree.setdefault(section, {})
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        if section is None:
            raise ConfigError(f"line {lineno}: key outside any section")
        tree[section][key] = value
    return tree


def ring_from_config(value: str) -> AmbientRing:
    names = tuple(v.strip() for v in value.split(",") if v.strip())
    if not names:
        raise ConfigError("empty ring variable list")
    return AmbientRing(len(names), names)


# -- family spec text syntax ---------------------------------------------------


def _split_top(text: str, sep: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def parse_family_spec(ring: AmbientRing, text: str) -> FamilySpec:
    """Parse specs like ``power(x^2, x*y)`` or ``valuation(2,1 >= 2)``."""
    text = text.strip()
    if "(" not in text or not text.endswith(")"):
        raise ConfigError(f"bad family spec {text!r}")
    head, body = text.split("(", 1)
    head = head.strip().lower()
    body = body[:-1]
    try:
        if head == "power":
            return PowerSpec(parse_ideal(ring, body))
        if head == "maxpower":
            kind = body.strip().lower()
            if kind in ("sigma", "log"):
                return MaxPowerSpec(ring, kind)
            if kind.startswith("table:"):
                exps = tuple(int(v) for v in kind[len("table:"):].split(",") if v.strip())
                return MaxPowerSpec(ring, "table", exps)
            raise ConfigError(f"unknown maxpower kind {kind!r}")
        if head == "valuation":
            constraints = []
            for part in _split_top(body, ";"):
                if ">=" not in part:
                    raise ConfigError(f"valuation constraint needs '>=': {part!r}")
                lhs, rhs = part.split(">=", 1)
                lhs = lhs.strip().removeprefix("(").removesuffix(")")
                weights = tuple(Fraction(w.strip()) for w in lhs.split(","))
                constraints.append((weights, Fraction(rhs.strip())))
            return ValuationSpec.make(ring, constraints)
        if head == "symbolic":
            first, second = _split_top(body, ";")
            return SymbolicSpec(parse_ideal(ring, first), parse_ideal(ring, second))
        if head == "saturation":
            return SaturationSpec(parse_ideal(ring, body))
        if head == "product":
            first, second = _split_top(body, ";")
            return ProductSpec(parse_family_spec(ring, first),
                               parse_family_spec(ring, second))
        if head == "table":
            ideals = tuple(parse_ideal(ring, part.strip())
                           for part in body.split("|"))
            return TableSpec(ideals)
    except ConfigError:
        raise
    except Exception as exc:
        raise ConfigError(f"bad family spec {text!r}: {exc}") from exc
    raise ConfigError(f"unknown family constructor {head!r}")


def parse_region_spec(dim: int, text: str):
    """Halfspace list like ``2,1 >= 2; 1,2 >= 2``."""
    from .convex import region
    halfspaces = []
    for part in text.split(";"):
        if ">=" not in part:
            raise ConfigError(f"region halfspace needs '>=': {part!r}")
        lhs, rhs = part.split(">=", 1)
        normal = tuple(Fraction(w.strip()) for w in lhs.strip().split(","))
        if len(normal) != dim:
            raise ConfigError("halfspace normal has wrong length")
        halfspaces.append((normal, Fraction(rhs.strip())))
    return region(dim, halfspaces)


def parse_module_spec(ring: AmbientRing, text: str):
    """Free-module components separated by ``|``: ``x^2, x*y | 1``."""
    from .lattice import MonomialModule
    comps = [parse_ideal(ring, part.strip()) for part in text.split("|")]
    return MonomialModule.from_components(ring, comps)


# -- result cache --------------------------------------------------------------


class ResultCache:
    """Content-addressed store: (family label, n) -> canonical ideal + length.

    Hits must be bit-identical to recomputation; entries store the canonical
    ideal text and the exact length (or "INFINITE").
    """

    def __init__(self, root):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    def _path(self, label: str, n: int) -> Path:
        digest = hashlib.sha256(f"{label}|n={n}".encode()).hexdigest()
        return self.root / f"{digest}.json"

    def get(self, label: str, n: int) -> dict | None:
        path = self._path(label, n)
        if not path.exists():
            return None
        return json.loads(path.read_text())

    def put(self, label: str, n: int, ideal_text: str, length) -> None:
        payload = {
            "ideal": ideal_text,
            "length": "INFINITE" if length == float("inf") else length,
            "n": n,
        }
        self._path(label, n).write_text(json.dumps(payload, sort_keys=True))


def cached_member_row(family, n: int, cache: ResultCache | None):
    """(ideal text, length) for I_n, going through the cache when present."""
    from .lattice import INFINITE, format_ideal
    label = family.label()
    if cache is not None:
        hit = cache.get(label, n)
        if hit is not None:
            length = INFINITE if hit["length"] == "INFINITE" else hit["length"]
            return hit["ideal"], length
    text = format_ideal(family.member_ideal(n))
    length = family.length(n)
    if cache is not None:
        cache.put(label, n, text, length)
    return text, length
