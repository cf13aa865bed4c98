"""JSON schema for exact configurations.

Rationals are strings "p/q" in lowest terms with q > 0, complex numbers are
[re, im] pairs and vectors are {"u": [..], "v": [..]}. A file holds either
{"points": [...]} or {"diffs": [...]}. Floating-point literals are refused.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path

from .errors import FloatLiteralRejected, NonCanonicalRational, ParseError
from .exact import DiffConfig, GaussianRational, LightConeVector, PointConfig

_RATIONAL = re.compile(r"^(-?)(0|[1-9][0-9]*)/([1-9][0-9]*)$")
_FLOAT_TOKEN = re.compile(r"-?(?:0|[1-9][0-9]*)(?:\.[0-9]+(?:[eE][+-]?[0-9]+)?|[eE][+-]?[0-9]+)")


def format_rational(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text) -> Fraction:
    if not isinstance(text, str):
        raise ParseError(f"rational must be a \"p/q\" string, got {text!r}")
    mt = _RATIONAL.match(text)
    if mt is None:
        raise ParseError(f"malformed rational {text!r}")
    sign, p, q = mt.groups()
    if sign and p == "0":
        raise NonCanonicalRational(f"{text!r}: zero carries no sign (use \"0/1\")")
    value = Fraction(int(sign + p), int(q))
    if value.numerator != int(sign + p) or value.denominator != int(q):
        raise NonCanonicalRational(f"{text!r} is not in lowest terms (canonical: \"{format_rational(value)}\")")
    return value


def complex_to_json(z: GaussianRational) -> list[str]:
    return [format_rational(z.re), format_rational(z.im)]


def complex_from_json(data) -> GaussianRational:
    if not (isinstance(data, list) and len(data) == 2):
        raise ParseError(f"complex value must be a [re, im] pair, got {data!r}")
    return GaussianRational(parse_rational(data[0]), parse_rational(data[1]))


def vector_to_json(vec: LightConeVector) -> dict:
    return {"u": complex_to_json(vec.u), "v": complex_to_json(vec.v)}


def vector_from_json(data) -> LightConeVector:
    if not (isinstance(data, dict) and set(data) == {"u", "v"}):
        raise ParseError(f"vector must be an object with keys u and v, got {data!r}")
    return LightConeVector(complex_from_json(data["u"]), complex_from_json(data["v"]))


def point_config_to_json(cfg: PointConfig) -> dict:
    return {"points": [vector_to_json(p) for p in cfg.points]}


def diff_config_to_json(cfg: DiffConfig) -> dict:
    return {"diffs": [vector_to_json(d) for d in cfg.diffs]}


def config_to_json(cfg) -> dict:
    if isinstance(cfg, PointConfig):
        return point_config_to_json(cfg)
    return diff_config_to_json(cfg)


def _reject_float(token: str):
    raise FloatLiteralRejected(f"floating-point literal {token} is not allowed; use \"p/q\" strings")


def _position(text: str, index: int) -> tuple[int, int]:
    line = text.count("\n", 0, index) + 1
    col = index - (text.rfind("\n", 0, index) + 1) + 1
    return line, col


def loads_config(text: str):
    """Parse a configuration document into a PointConfig or DiffConfig."""
    try:
        data = json.loads(text, parse_float=_reject_float)
    except FloatLiteralRejected as exc:
        mt = _FLOAT_TOKEN.search(text)
        line, col = _position(text, mt.start()) if mt else (None, None)
        raise FloatLiteralRejected(str(exc), line, col) from None
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    return config_from_json(data)


def config_from_json(data):
    if not isinstance(data, dict) or len(data) != 1 or not ({"points", "diffs"} & set(data)):
        raise ParseError('top level must be {"points": [...]} or {"diffs": [...]}')
    key = next(iter(data))
    items = data[key]
    if not isinstance(items, list):
        raise ParseError(f"{key} must be a list")
    vecs = tuple(vector_from_json(x) for x in items)
    if key == "points":
        if not vecs:
            raise ParseError("points list is empty")
        return PointConfig(vecs)
    return DiffConfig(vecs)


def load_config(path) -> PointConfig | DiffConfig:
    return loads_config(Path(path).read_text(encoding="utf-8"))


def canonical_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
