"""Analyze every bundled map and print its verdict."""

import time

from resint.corpus import MAPS
from resint.dynmap.rmap import RationalMap
from resint.obstruction import analyze

for name in sorted(MAPS):
    f = RationalMap.parse(MAPS[name])
    t0 = time.perf_counter()
    try:
        v = analyze(f)
        out = f"{v.kind.value}: {v.reason}"
        if v.params:
            out += f" params={[str(p) for p in v.params]}"
        if v.indices:
            out += f" indices={list(v.indices)}"
    except Exception as exc:
        out = f"error: {type(exc).__name__}: {exc}"
    print(f"{name:<14} {time.perf_counter() - t0:6.2f}s  {out}")
