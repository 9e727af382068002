"""Replayable computation trails.

A certificate is an ordered list of named polynomials.  Each entry records how
it was obtained from earlier entries (or from the map), so the whole trail can
be recomputed from scratch and compared exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .core.multipoly import MultiPoly
from .core.resultant import resultant
from .core.upoly import UniPoly
from .cyclotomic import cyclotomic_poly, min_poly_cos


@dataclass(frozen=True)
class Entry:
    name: str
    op: str  # input | resultant | factor | cos_minpoly | cyclotomic | value
    args: tuple
    value: MultiPoly

    def to_dict(self):
        return {"name": self.name, "op": self.op, "args": [str(a) for a in self.args], "value": str(self.value)}


@dataclass
class Certificate:
    entries: list = field(default_factory=list)

    def add(self, name, op, args, value):
        if isinstance(value, UniPoly):
            value = value.to_multi()
        elif not isinstance(value, MultiPoly):
            value = MultiPoly.const(value)
        self.entries.append(Entry(name, op, tuple(args), value))
        return value

    def get(self, name) -> MultiPoly:
        for e in self.entries:
            if e.name == name:
                return e.value
        raise KeyError(name)

    def names(self):
        return [e.name for e in self.entries]

    def to_list(self):
        return [e.to_dict() for e in self.entries]

    @classmethod
    def from_list(cls, items):
        from .dynmap.parse import parse_expr

        cert = cls()
        for it in items:
            rf = parse_expr(it["value"])
            if not rf.is_polynomial():
                raise ValueError(f"certificate entry {it['name']} is not a polynomial")
            val = rf.num.scale(Fraction(1) / Fraction(rf.den.const_value()))
            args = tuple(int(a) if a.lstrip("-").isdigit() else a for a in it["args"])
            cert.entries.append(Entry(it["name"], it["op"], args, val))
        return cert

    def replay(self, inputs=None):
        """Recompute every derived entry; returns the list of names that do not match."""
        inputs = inputs or {}
        env = {}
        bad = []
        for e in self.entries:
            if e.op == "input":
                got = inputs.get(e.name, e.value)
            elif e.op == "resultant":
                a, b, var = e.args
                got = resultant(env[a], env[b], var)
            elif e.op == "factor":
                parent = env[e.args[0]]
                ok = not e.value.is_zero() and e.value.divides(parent)
                got = e.value if ok else None
            elif e.op == "cos_minpoly":
                p, var = e.args
                got = min_poly_cos(int(p), var).poly.to_multi()
            elif e.op == "cyclotomic":
                p, var = e.args
                got = cyclotomic_poly(int(p), var).to_multi()
            elif e.op == "primitive":
                got = env[e.args[0]].primitive()
            elif e.op == "value":
                got = e.value
            else:
                raise ValueError(f"unknown certificate operation {e.op!r}")
            if got is None or not _same(got, e.value):
                bad.append(e.name)
            env[e.name] = e.value
        return bad


def _same(a: MultiPoly, b: MultiPoly) -> bool:
    return (a - b).is_zero()
