"""Golden suite: every worked example, recomputed and compared with stored values."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .core.multipoly import MultiPoly
from .core.resultant import resultant
from .core.upoly import UniPoly, poly_sqrt
from .corpus import INTEGRALS, MAPS, PERIODS
from .cyclotomic import cyclotomic_poly, indices_with_cos_degree_at_most, min_poly_cos, totient
from .dynmap.rmap import RationalMap
from .obstruction import (
    ParamConstraint,
    analyze,
    eigen_eliminant,
    monomial_sweep,
    fast_path_rational_fp,
    parametric_candidates,
    planar_pipeline,
    distinct_cos_battery,
    two_integral_classification,
)
from .resonance import integral_bound
from .verifier import functional_independence, verify_first_integral


def _up_to_scalar(p: MultiPoly) -> str:
    """Canonical text for p modulo nonzero rational scalars."""
    q = p.primitive()
    if q.lc() < 0:
        q = -q
    return str(q)


def _g_cos_tables():
    out = [str(min_poly_cos(p).poly) for p in (5, 7, 9, 14, 18)]
    out += [str(list(indices_with_cos_degree_at_most(m).indices)) for m in (1, 2, 3)]
    return out


def _g_mm_identity():
    bad = []
    for p in range(3, 51):
        x = MultiPoly.var("x", ("x", "v"))
        v = MultiPoly.var("v", ("x", "v"))
        r = UniPoly.from_multi(resultant(cyclotomic_poly(p).to_multi(("x", "v")), x * x - 2 * x * v + 1, "x"), "v")
        s = poly_sqrt(r)
        if s is None or s.degree != totient(p) // 2:
            bad.append(p)
    return [f"failures={bad}"]


def _g_xy_family():
    f = RationalMap.parse(MAPS["xy_family"])
    v = analyze(f, ParamConstraint.parse("a > 9/8"))
    return [v.kind.value, str([str(a) for a in v.params])]


def _g_xy_family_fixed():
    f = RationalMap.parse(MAPS["xy_family"]).specialize({"a": Fraction(7, 4)})
    return [analyze(f).kind.value, fast_path_rational_fp(Fraction(3, 2), Fraction(7, 8)).kind.value]


def _planar_cubic():
    f = RationalMap.parse(MAPS["planar_cubic"])
    (fp,) = f.real_fixed_points()
    return f, fp


def _g_conc_eliminants():
    f, _ = _planar_cubic()
    el = f.eliminate_fixed_points()
    return [_up_to_scalar(el.T1.drop_unused()), _up_to_scalar(el.T3.drop_unused())]


def _g_conc_certificate():
    f, fp = _planar_cubic()
    v = planar_pipeline(f, fp)
    sel = v.certificate.get("U_sel")
    nonzero = all(
        not e.value.is_zero() for e in v.certificate.entries if e.name.startswith("Res(U_sel")
    )
    count = sum(1 for e in v.certificate.entries if e.name.startswith("Res(U_sel"))
    return [_up_to_scalar(sel), f"resultants={count}", f"all_nonzero={nonzero}", v.kind.value]


def _g_battery():
    return sorted((str(p) for p in distinct_cos_battery(3, "x")), key=lambda t: (len(t), t))


def _todd():
    f = RationalMap.parse(MAPS["todd"])
    P, info = eigen_eliminant(f)
    return f, P, info


def _g_todd_p4():
    _, P, _ = _todd()
    return [_up_to_scalar(P)]


def _g_todd_resultants():
    _, P, info = _todd()
    P = P.primitive()
    if P.lc() < 0:
        P = -P
    _, _, res = parametric_candidates(P, info["mu"], "a")
    return [f"Phi_{p}: {res[p]}" for p in (3, 8, 10)]


def _g_todd_candidates():
    f, P, info = _todd()
    cands, _, _ = parametric_candidates(P, info["mu"], "a")
    v = analyze(f)
    return [str(sorted(str(c) for c in cands)), v.kind.value, str([str(a) for a in v.params])]


def _g_monomial():
    return [str(monomial_sweep(6))]


def _g_two_integrals():
    return [
        str(two_integral_classification(b, c).possible)
        for b, c in ((2, 1), (-2, 1), (0, -1), (0, 2), (1, 1), (3, 1))
    ]


def _g_periodic():
    rng = random.Random(7)
    out = []
    for name, k in sorted(PERIODS.items()):
        f = RationalMap.parse(MAPS[name])
        good = 0
        for _ in range(10):
            pt = (Fraction(rng.randint(1, 99), rng.randint(1, 99)), Fraction(rng.randint(1, 99), rng.randint(1, 99)))
            orbit = f.iterate(pt, k)
            first = next(j for j in range(1, k + 1) if orbit[j] == pt)
            good += first == k
        out.append(f"{name}: period {k} on {good}/10")
    return out


def _g_integrals():
    out = []
    for name in ("lyness", "f6", "todd", "four_dim"):
        f = RationalMap.parse(MAPS[name])
        oks = [verify_first_integral(f, H).holds for H in INTEGRALS[name]]
        line = f"{name}: {oks}"
        if len(INTEGRALS[name]) > 1:
            line += " " + functional_independence(f, INTEGRALS[name]).label
        out.append(line)
    neg = verify_first_integral(RationalMap.parse(MAPS["doubling"]), "x")
    out.append(f"doubling: {neg.holds} residual {neg.residual}")
    return out


def _g_primes():
    f = RationalMap.parse(MAPS["diag235"])
    return [f"bound={integral_bound(f, (0, 0, 0)).bound}", analyze(f).kind.value]


def _g_rotation():
    return [analyze(RationalMap.parse(MAPS["rotation"])).kind.value]


@dataclass(frozen=True)
class GoldenCheck:
    name: str
    compute: object
    golden: tuple
    note: str = ""


CHECKS = (
    GoldenCheck("cos_tables", _g_cos_tables, (
        "4*x^2 + 2*x - 1", "8*x^3 + 4*x^2 - 4*x - 1", "8*x^3 - 6*x + 1", "8*x^3 - 4*x^2 - 4*x + 1",
        "8*x^3 - 6*x - 1", "[1, 2, 3, 4, 6]", "[1, 2, 3, 4, 5, 6, 8, 10, 12]",
        "[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 14, 18]")),
    GoldenCheck("cos_square_identity", _g_mm_identity, ("failures=[]",)),
    GoldenCheck("xy_family", _g_xy_family, ("CandidateParams", "['3/2', '2', '9/4', '9/2']")),
    GoldenCheck("xy_family_a_7_4", _g_xy_family_fixed, ("Excluded", "Excluded")),
    GoldenCheck("planar_cubic_eliminants", _g_conc_eliminants, (
        "y^5 - 5*y^4 + y^3 - y^2", "x^5 - 5*x^4 + 2*x^3 - 6*x^2 + x - 1")),
    GoldenCheck("planar_cubic_certificate", _g_conc_certificate, (
        "5833*v^3 + 16607*v^2 + 15650*v + 4874", "resultants=13", "all_nonzero=True", "Excluded")),
    GoldenCheck("cos_battery", _g_battery, (
        "x", "x + 1", "x - 1", "2*x + 1", "2*x - 1", "2*x^2 - 1", "4*x^2 - 3", "4*x^2 + 2*x - 1",
        "4*x^2 - 2*x - 1", "8*x^3 - 6*x + 1", "8*x^3 - 6*x - 1", "8*x^3 + 4*x^2 - 4*x - 1",
        "8*x^3 - 4*x^2 - 4*x + 1")),
    GoldenCheck("todd_p4", _g_todd_p4, ("a*mu^4 - 2*a*mu^3 + 3*a*mu^2 + 2*mu^3 - 2*a*mu - 3*mu^2 + a + 2*mu",)),
    GoldenCheck("todd_resultants", _g_todd_resultants, (
        "Phi_3: 16*a^2 - 40*a + 25", "Phi_8: a^4 - 4*a^3 + 6*a^2 - 4*a + 1",
        "Phi_10: a^4 - 2*a^3 - a^2 + 2*a + 1"),
        "Phi_8 gives (a-1)^4 exactly, not (a-1)^2"),
    GoldenCheck("todd_candidates", _g_todd_candidates, (
        "['-1', '1', '3', '5/4', '7/9']", "CandidateParams", "['-1', '1']")),
    GoldenCheck("monomial_sweep", _g_monomial, ("[(-1, -2), (-1, -1), (-1, 0), (-1, 1), (-1, 2), (1, 0)]",)),
    GoldenCheck("two_integral_classification", _g_two_integrals, ("True", "True", "True", "False", "True", "False")),
    GoldenCheck("periodic_maps", _g_periodic, (
        "f3: period 2 on 10/10", "f4: period 3 on 10/10", "f5: period 4 on 10/10", "f6: period 6 on 10/10")),
    GoldenCheck("first_integrals", _g_integrals, (
        "lyness: [True]", "f6: [True, True] independent", "todd: [True, True] independent", "four_dim: [True]",
        "doubling: False residual -x + y")),
    GoldenCheck("prime_eigenvalues", _g_primes, ("bound=0", "Excluded")),
    GoldenCheck("modulus_one", _g_rotation, ("Inconclusive",)),
)


@dataclass
class CheckResult:
    name: str
    passed: bool
    value: list
    golden: list
    first_difference: int | None
    note: str = ""

    def to_dict(self):
        return {
            "name": self.name,
            "passed": self.passed,
            "value": self.value,
            "golden": self.golden,
            "first_difference": self.first_difference,
            "note": self.note,
        }


def run_suite(only=None, corrupt=None):
    """Run the golden checks; ``corrupt`` names a check whose golden value is deliberately altered."""
    results = []
    for chk in CHECKS:
        if only and chk.name not in only:
            continue
        golden = list(chk.golden)
        if corrupt == chk.name:
            golden[0] = golden[0] + " [corrupted]"
        try:
            value = [str(x) for x in chk.compute()]
        except Exception as exc:  # a crash is a failed check, reported by name
            value = [f"error: {type(exc).__name__}: {exc}"]
        diff = None
        for i in range(max(len(value), len(golden))):
            a = value[i] if i < len(value) else None
            b = golden[i] if i < len(golden) else None
            if a != b:
                diff = i
                break
        results.append(CheckResult(chk.name, diff is None, value, golden, diff, chk.note))
    return results
