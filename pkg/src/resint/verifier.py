"""Checks that candidate rational functions are first integrals of a map, and whether they are independent."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .core.multipoly import MultiPoly
from .dynmap.parse import parse_expr
from .dynmap.ratfunc import PoleError, RationalFunction
from .dynmap.rmap import RationalMap


@dataclass(frozen=True)
class CandidateIntegral:
    value: RationalFunction
    source: str = ""

    @classmethod
    def parse(cls, text: str, f: RationalMap) -> "CandidateIntegral":
        rf = parse_expr(text, f.universe, f.universe)
        return cls(rf.reduced().with_vars(f.universe), text)

    def __post_init__(self):
        if self.value.den.is_zero():
            raise ValueError("candidate has a zero denominator")

    def __str__(self):
        return self.source or str(self.value)


def _as_candidate(R, f):
    if isinstance(R, CandidateIntegral):
        return R
    if isinstance(R, str):
        return CandidateIntegral.parse(R, f)
    return CandidateIntegral(R.reduced().with_vars(f.universe))


@dataclass
class VerificationResult:
    holds: bool
    residual: MultiPoly

    def __bool__(self):
        return self.holds


def pullback(f: RationalMap, R: RationalFunction) -> RationalFunction:
    """R composed with f, reduced."""
    universe = f.universe
    mapping = {v: c.with_vars(universe) for v, c in zip(f.state_vars, f.components)}
    return R.with_vars(universe).subs(mapping).reduced().with_vars(universe)


def verify_first_integral(f: RationalMap, R) -> VerificationResult:
    """R(f(x)) == R(x) identically; the residual is Num(R o f) Den(R) - Num(R) Den(R o f)."""
    R = _as_candidate(R, f).value.with_vars(f.universe)
    Rf = pullback(f, R)
    residual = Rf.num * R.den - R.num * Rf.den
    return VerificationResult(residual.is_zero(), residual)


# independence -------------------------------------------------------------------------------------------


def _det(M):
    """Determinant of a square matrix of Fractions by exact elimination."""
    M = [list(r) for r in M]
    n = len(M)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det *= M[c][c]
        for r in range(c + 1, n):
            q = M[r][c] / M[c][c]
            if q:
                M[r] = [a - q * b for a, b in zip(M[r], M[c])]
    return det


def _sym_det(M):
    n = len(M)
    if n == 1:
        return M[0][0]
    total = RationalFunction(MultiPoly.const(0, M[0][0].vars))
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * _sym_det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total.reduced()


def _maximal_minors(m, n):
    from itertools import combinations

    return list(combinations(range(n), m))


@dataclass
class IndependenceResult:
    independent: bool
    label: str  # independent | dependent | probably dependent
    witness: dict | None = None
    seed: int = 0
    attempts: int = 0
    columns: tuple = ()

    def __bool__(self):
        return self.independent

    def to_dict(self):
        return {
            "independent": self.independent,
            "label": self.label,
            "witness": {k: str(v) for k, v in (self.witness or {}).items()},
            "seed": self.seed,
            "attempts": self.attempts,
            "columns": list(self.columns),
        }


def _random_rational(rng, bound=1000):
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def functional_independence(f: RationalMap, candidates, seed=0, retries=20) -> IndependenceResult:
    """Full rank of the Jacobian of the candidates w.r.t. the state variables, at a random rational point."""
    cands = [_as_candidate(R, f).value.with_vars(f.universe) for R in candidates]
    if not cands:
        raise ValueError("need at least one candidate")
    m, n = len(cands), f.n
    if m > n:
        return IndependenceResult(False, "dependent", seed=seed)
    J = [[c.diff(v) for v in f.state_vars] for c in cands]
    minors = _maximal_minors(m, n)
    rng = random.Random(seed)
    attempts = 0
    while attempts < retries:
        point = {v: _random_rational(rng) for v in f.universe}
        try:
            vals = [[e.evaluate(point) for e in row] for row in J]
        except PoleError:
            continue  # redraws do not count against the budget
        attempts += 1
        for cols in minors:
            if _det([[row[j] for j in cols] for row in vals]) != 0:
                return IndependenceResult(True, "independent", point, seed, attempts, cols)
    if m <= 3:
        for cols in minors:
            d = _sym_det([[row[j] for j in cols] for row in J])
            if not d.is_zero():
                return IndependenceResult(True, "independent", None, seed, attempts, cols)
        return IndependenceResult(False, "dependent", seed=seed, attempts=attempts)
    return IndependenceResult(False, "probably dependent", seed=seed, attempts=attempts)


# orbits ------------------------------------------------------------------------------------------------------


@dataclass
class OrbitReport:
    max_deviation: float
    steps: int
    escaped_at: int | None = None
    deviations: list = field(default_factory=list)

    def to_dict(self):
        return {"max_deviation": self.max_deviation, "steps": self.steps, "escaped_at": self.escaped_at}


def _float_eval(rf: RationalFunction, env):
    d = rf.den.evaluate(env)
    if d == 0:
        raise PoleError("denominator vanishes")
    return rf.num.evaluate(env) / d


def orbit_invariance_numeric(f: RationalMap, R, start, steps, params=None, exact=False) -> OrbitReport:
    """max_k |R(x_k) - R(x_0)| along the orbit of start; exact=True iterates in rational arithmetic."""
    R = _as_candidate(R, f).value
    params = {k: Fraction(v) for k, v in (params or {}).items()}
    conv = Fraction if exact else float
    pvals = {k: conv(v) for k, v in params.items()}
    x = tuple(conv(Fraction(c)) for c in start)

    def env(pt):
        e = dict(zip(f.state_vars, pt))
        e.update(pvals)
        return e

    try:
        r0 = _float_eval(R, env(x))
    except PoleError:
        return OrbitReport(math.inf, 0, 0)
    devs = []
    for k in range(1, steps + 1):
        try:
            x = tuple(_float_eval(c, env(x)) for c in f.components)
            rk = _float_eval(R, env(x))
        except (PoleError, ZeroDivisionError):
            return OrbitReport(float(max(devs, default=0)), k - 1, k, devs)
        devs.append(abs(rk - r0))
    return OrbitReport(float(max(devs, default=0)), steps, None, devs)
