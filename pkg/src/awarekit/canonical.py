"""Canonical JSON serialization and filter projection.

Every equality test in the validator compares canonical text, so the
serialization must be a bijection on finite JSON values: keys sorted
lexicographically, no insignificant whitespace, floats in shortest
round-trip form, integers bare.
"""

from __future__ import annotations

import copy
import json
import math
from dataclasses import dataclass
from typing import Any

from .errors import NonFiniteNumber

# Canonical text is plain ``str``; the alias marks intent in signatures.
CanonicalJson = str


def _check_tree(value: Any) -> None:
    if value is None or isinstance(value, (bool, str, int)):
        return
    if isinstance(value, float):
        if not math.isfinite(value):
            raise NonFiniteNumber(f"non-finite number in tree: {value!r}")
        return
    if isinstance(value, (list, tuple)):
        for item in value:
            _check_tree(item)
        return
    if isinstance(value, dict):
        for key, item in value.items():
            if not isinstance(key, str):
                raise TypeError(f"object keys must be strings, got {type(key).__name__}")
            _check_tree(item)
        return
    raise TypeError(f"value of type {type(value).__name__} is not JSON-representable")


def canonicalize(tree: Any) -> CanonicalJson:
    """Serialize a JSON value to its unique canonical text."""
    _check_tree(tree)
    return json.dumps(tree, sort_keys=True, separators=(",", ":"),
                      ensure_ascii=False, allow_nan=False)


def parse(text: CanonicalJson) -> Any:
    """Inverse of canonicalize (also accepts non-canonical JSON text)."""
    return json.loads(text)


def pretty(text: CanonicalJson) -> str:
    """Multi-line rendering of canonical text, for reports and the cockpit."""
    return json.dumps(parse(text), sort_keys=True, indent=2, ensure_ascii=False)


@dataclass(frozen=True)
class FilterSpec:
    """A projection of a JSON tree onto a set of dot-separated key paths."""

    paths: frozenset[str]

    def __post_init__(self) -> None:
        if not self.paths:
            raise ValueError("FilterSpec needs at least one path")
        for path in self.paths:
            segments = path.split(".")
            if not all(segments):
                raise ValueError(f"invalid filter path: {path!r}")
        object.__setattr__(self, "paths", frozenset(self.paths))

    @classmethod
    def of(cls, *paths: str) -> "FilterSpec":
        return cls(frozenset(paths))

    def sorted_paths(self) -> list[str]:
        return sorted(self.paths)


def _lookup(tree: Any, segments: list[str]) -> tuple[bool, Any]:
    node = tree
    for seg in segments:
        if not isinstance(node, dict) or seg not in node:
            return False, None
        node = node[seg]
    return True, node


def apply_filter(spec: FilterSpec, tree: Any) -> CanonicalJson:
    """Project ``tree`` onto the filter's paths and canonicalize the result.

    Paths absent from the tree are simply omitted; the projection of a tree
    that matches nothing is ``{}``. Shorter paths are applied first so that a
    path capturing a whole subtree subsumes its descendants.
    """
    out: dict[str, Any] = {}
    for path in sorted(spec.paths, key=lambda p: (p.count("."), p)):
        segments = path.split(".")
        found, value = _lookup(tree, segments)
        if not found:
            continue
        node = out
        ok = True
        for seg in segments[:-1]:
            nxt = node.get(seg)
            if nxt is None and seg not in node:
                nxt = node[seg] = {}
            if not isinstance(nxt, dict):
                ok = False  # an ancestor path already captured a leaf here
                break
            node = nxt
        if ok:
            node.setdefault(segments[-1], copy.deepcopy(value))
    return canonicalize(out)
