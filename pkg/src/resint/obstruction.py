"""Decision pipelines: cyclotomic resultant obstructions to meromorphic first integrals.

Planar maps use the trace/determinant route (v = T^2/(2D) - 1 must be a cosine of a
rational angle); maps in higher dimension use the eigenvalue eliminant P(mu), whose
roots must be roots of unity when n independent integrals exist.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from .certificate import Certificate
from .core.factor import factor_uni_bounded
from .core.mgcd import content_in, mgcd, prem
from .core.multipoly import MultiPoly
from .core.numfield import NFElement, RealNumberField
from .core.realroots import sturm_isolate
from .core.resultant import resultant
from .core.upoly import UniPoly, gcd_uni, rational_roots
from .cyclotomic import (
    cos_degree,
    cyclotomic_poly,
    indices_with_cos_degree_at_most,
    indices_with_totient_at_most,
    is_cyclotomic_product,
    min_poly_cos,
    rational_cos_values,
)
from .dynmap.ratfunc import PoleError
from .dynmap.rmap import ContinuumError, FixedPoint, RationalMap, eliminate_planar
from .resonance import cos_order


class Kind(str, Enum):
    EXCLUDED = "Excluded"
    CANDIDATE_PARAMS = "CandidateParams"
    CANDIDATE_INDICES = "CandidateIndices"
    INCONCLUSIVE = "Inconclusive"


@dataclass
class PipelineOptions:
    degree_budget: int = 6
    elimination_order: str = "xy"  # "xy": eliminate y then x in U; "yx": the other way
    full_route: bool = True  # also compute the unreduced U_k as a cross-check
    eigen_symbol: str = "mu"
    cos_symbol: str = "v"


@dataclass
class FixedPointReport:
    point: str
    approx: tuple
    checks: dict = field(default_factory=dict)
    T: str = ""
    D: str = ""
    v: str = ""

    def to_dict(self):
        return {
            "point": self.point,
            "approx": [format(a, ".12g") for a in self.approx],
            "checks": dict(self.checks),
            "T": self.T,
            "D": self.D,
            "v": self.v,
        }


@dataclass
class ObstructionVerdict:
    kind: Kind
    reason: str = ""
    params: tuple = ()  # candidate parameter values (Fractions)
    indices: tuple = ()  # candidate cyclotomic indices p
    certificate: Certificate = field(default_factory=Certificate)
    fixed_points: list = field(default_factory=list)
    annotations: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    @property
    def excluded(self):
        return self.kind is Kind.EXCLUDED

    def to_dict(self, with_certificate=False):
        d = {
            "kind": self.kind.value,
            "reason": self.reason,
            "params": [str(p) for p in self.params],
            "indices": list(self.indices),
            "annotations": {str(k): v for k, v in self.annotations.items()},
            "fixed_points": [fp.to_dict() for fp in self.fixed_points],
            "details": self.details,
        }
        if with_certificate:
            d["certificate"] = self.certificate.to_list()
        return d


def _fresh(name, taken):
    while name in taken:
        name += "_"
    return name


# sign conditions --------------------------------------------------------------------------------


def _sign(x):
    if isinstance(x, NFElement):
        return x.sign()
    return (x > 0) - (x < 0)


def _is_zero(x):
    return x.is_zero() if isinstance(x, NFElement) else x == 0


def _render(x):
    if isinstance(x, NFElement):
        return f"{x.reduced()} (~{float(x):.10g})"
    return str(Fraction(x))


def hypothesis_checks(T, D):
    """Certified signs of T^2 - 4D and D - 1 (exact rational or number-field arithmetic)."""
    disc = T * T - 4 * D
    return {"sign(T^2-4D)": _sign(disc), "D==1": _is_zero(D - 1), "D==0": _is_zero(D)}


def _hypothesis_failure(checks):
    if checks["D==0"]:
        return "Jacobian is singular at the fixed point"
    if checks["sign(T^2-4D)"] >= 0:
        return "eigenvalues are not a complex conjugate pair (T^2 - 4D >= 0)"
    if checks["D==1"]:
        return "eigenvalues have modulus one (D = 1)"
    return None


# battery ------------------------------------------------------------------------------------------


def cos_battery_polys(k, var="v"):
    """The distinct minimal polynomials of cos(2*pi*n/p) of degree <= k, one per p."""
    out = []
    for p in indices_with_cos_degree_at_most(k).indices:
        out.append((p, min_poly_cos(p, var).poly))
    return out


def distinct_cos_battery(k=3, var="x"):
    """Battery polynomials with repeats dropped, in order of first appearance."""
    seen = []
    for p, m in cos_battery_polys(k, var):
        if m not in seen:
            seen.append(m)
    return seen


def run_battery(U: UniPoly, cert: Certificate, name: str, var: str):
    """Res_var(U, V_p) for every p with deg V_p <= deg U; returns the p's where it vanishes."""
    hits = []
    values = {}
    for p, Vp in cos_battery_polys(max(U.degree, 1), var):
        vname = f"V_{p}"
        if vname not in cert.names():
            cert.add(vname, "cos_minpoly", (p, var), Vp)
        r = resultant(U.to_multi(), Vp.to_multi(), var)
        cert.add(f"Res({name},{vname})", "resultant", (name, vname, var), r)
        val = r.const_value() if not r.is_zero() else 0
        values[p] = val
        if val == 0:
            hits.append(p)
    return hits, values


# planar pipeline ------------------------------------------------------------------------------------


def planar_polys(f: RationalMap, v="v"):
    """S1, S2, the char-poly data and W(x, y, v) with the common denominator factor removed."""
    sys = f.fixed_point_system()
    cp = f.char_poly()
    vars_ = f.universe + (v,)
    T1, T2 = cp.T.num.with_vars(vars_), cp.T.den.with_vars(vars_)
    D1, D2 = cp.D.num.with_vars(vars_), cp.D.den.with_vars(vars_)
    a = T1 * T1 * D2
    b = T2 * T2 * D1
    # T and D are reduced, so the denominator part of gcd(a, b) is gcd(D2, T2^2); it never vanishes at a fixed point
    g = mgcd(D2, T2 * T2)
    if not g.is_const() and not a.is_zero() and not b.is_zero():
        a, b = a.divexact(g), b.divexact(g)
    vv = MultiPoly.var(v, vars_)
    W = a - (vv + 1) * b.scale(2)
    return sys.equations[0].with_vars(vars_), sys.equations[1].with_vars(vars_), cp, W


def _factor_vanishing_at(poly: UniPoly, value, budget):
    """Irreducible-or-unsplit factors of poly that vanish at value (rational or NFElement)."""
    fac = factor_uni_bounded(poly, budget)
    out = []
    for fct in fac.factors:
        g = fct.poly
        val = 0
        for c in reversed(g.coeffs):
            val = val * value + c
        if _is_zero(val):
            out.append(fct)
    return out


def planar_pipeline(f: RationalMap, fp: FixedPoint, options: PipelineOptions | None = None) -> ObstructionVerdict:
    """Cyclotomic obstruction at one real fixed point of a parameter-free planar map."""
    opt = options or PipelineOptions()
    if f.n != 2 or f.params:
        raise ValueError("planar_pipeline needs a parameter-free planar map")
    x, y = f.state_vars
    v = _fresh(opt.cos_symbol, f.universe)
    cert = Certificate()
    cp = f.char_poly()
    T = fp.evaluate(cp.T)
    D = fp.evaluate(cp.D)
    checks = hypothesis_checks(T, D)
    report = FixedPointReport(fp.describe(), fp.approx(), checks, _render(T), _render(D))
    fail = _hypothesis_failure(checks)
    if fail:
        return ObstructionVerdict(Kind.INCONCLUSIVE, f"hypothesis: {fail}", fixed_points=[report])
    vhat = T * T / (2 * D) - 1
    report.v = _render(vhat)

    S1, S2, _, W = planar_polys(f, v)
    cert.add("S1", "input", (), S1)
    cert.add("S2", "input", (), S2)
    cert.add("W", "input", (), W)
    el = eliminate_planar(f.fixed_point_system())
    cert.add("T1", "resultant", ("S1", "S2", x), el.T1.with_vars(S1.vars))
    cert.add("T3", "resultant", ("S1", "S2", y), el.T3.with_vars(S1.vars))
    xhat, yhat = fp.coords
    V1s = _factor_vanishing_at(UniPoly.from_multi(el.T1.drop_unused(), y), yhat, opt.degree_budget)
    V3s = _factor_vanishing_at(UniPoly.from_multi(el.T3.drop_unused(), x), xhat, opt.degree_budget)
    if len(V1s) != 1 or len(V3s) != 1:
        return ObstructionVerdict(Kind.INCONCLUSIVE, "could not isolate the eliminant factors at the fixed point",
                                  certificate=cert, fixed_points=[report])
    V1 = V1s[0].poly.primitive()
    V3 = V3s[0].poly.primitive()
    cert.add("V1", "factor", ("T1",), V1.to_multi())
    cert.add("V3", "factor", ("T3",), V3.to_multi())
    if opt.elimination_order == "xy":
        A = resultant(W, V1.to_multi(), y)
        cert.add("R1", "resultant", ("W", "V1", y), A)
        U = resultant(A, V3.to_multi(), x)
        cert.add("U", "resultant", ("R1", "V3", x), U)
    else:
        A = resultant(W, V3.to_multi(), x)
        cert.add("R1", "resultant", ("W", "V3", x), A)
        U = resultant(A, V1.to_multi(), y)
        cert.add("U", "resultant", ("R1", "V1", y), U)
    if U.is_zero():
        return ObstructionVerdict(Kind.INCONCLUSIVE, "degenerate elimination: U vanishes identically",
                                  certificate=cert, fixed_points=[report])
    Uu = UniPoly.from_multi(U.drop_unused(), v)
    selected = _factor_vanishing_at(Uu, vhat, opt.degree_budget)
    if not selected:
        raise ArithmeticError("no factor of U vanishes at v; this contradicts the elimination")
    indices = set()
    values = {}
    sel_polys = []
    for i, fct in enumerate(selected):
        name = "U_sel" if len(selected) == 1 else f"U_sel{i}"
        g = fct.poly.primitive()
        sel_polys.append(g)
        cert.add(name, "factor", ("U",), g.to_multi())
        hits, vals = run_battery(g, cert, name, v)
        indices.update(hits)
        values[name] = {str(p): str(val) for p, val in vals.items()}
    details = {
        "selected_factors": [str(g) for g in sel_polys],
        "U_degree": Uu.degree,
        "battery": values,
        "battery_size": len(next(iter(values.values()))) if values else 0,
    }
    # refined indices must be among the candidates of the unreduced route
    if opt.full_route:
        full = full_route(f, yhat, v, opt.degree_budget)
        details["full_route"] = full.to_dict()
        if full.covers_point and not indices <= full.indices:
            raise ArithmeticError("refined candidate indices are not contained in the full-route candidates")
    if not indices:
        return ObstructionVerdict(Kind.EXCLUDED, "all cyclotomic resultants are nonzero", certificate=cert,
                                  fixed_points=[report], details=details)
    return ObstructionVerdict(Kind.CANDIDATE_INDICES, "some resultant vanishes", indices=tuple(sorted(indices)),
                              certificate=cert, fixed_points=[report], details=details)


@dataclass
class FullRoute:
    """U_k from the unreduced three-equation system and the p's whose V_p shares a root with it."""

    degree: int
    indices: set
    dropped: list  # factors of T1 sharing a whole curve with Res_x(S1, W); they carry no v-information
    covers_point: bool

    def to_dict(self):
        return {"U_k_degree": self.degree, "indices": sorted(self.indices), "dropped_T1_factors": self.dropped,
                "covers_fixed_point": self.covers_point}


def full_route(f: RationalMap, yhat=None, v="v", degree_budget=6) -> FullRoute:
    """U_k = Res_y(T1(y), Res_x(S1, W)), skipping factors of T1 along which the resultant vanishes identically."""
    x, y = f.state_vars
    S1, S2, _, W = planar_polys(f, v)
    T1 = UniPoly.from_multi(resultant(S1, S2, x).drop_unused(), y)
    T2 = resultant(S1, W, x)
    Uk = MultiPoly.const(1, T2.vars)
    dropped = []
    covers = yhat is None
    for fct in factor_uni_bounded(T1, degree_budget).factors:
        r = resultant(fct.poly.to_multi(T2.vars), T2, y)
        if r.is_zero():
            dropped.append(str(fct.poly))
            continue
        if yhat is not None and not covers:
            val = 0
            for c in reversed(fct.poly.coeffs):
                val = val * yhat + c
            covers = _is_zero(val)
        Uk = Uk * r
    Uu = UniPoly.from_multi(Uk.drop_unused(), v)
    hits = set()
    for p in indices_with_cos_degree_at_most(max(Uu.degree, 1)).indices:
        if gcd_uni(Uu, min_poly_cos(p, v).poly).degree > 0:
            hits.add(p)
    return FullRoute(Uu.degree, hits, dropped, covers)


# fast paths --------------------------------------------------------------------------------------------


def ratio_index(r) -> int | None:
    """p with T^2/D = 2 + 2 cos(2 pi n / p), or None."""
    return cos_order(r * Fraction(1, 2) - 1)


def fast_path_rational_fp(T, D) -> ObstructionVerdict:
    """Rational fixed point: a first integral forces T^2/D into {0, 1, 2, 3, 4}."""
    T, D = Fraction(T), Fraction(D)
    checks = hypothesis_checks(T, D)
    fail = _hypothesis_failure(checks)
    if fail:
        return ObstructionVerdict(Kind.INCONCLUSIVE, f"hypothesis: {fail}", annotations={"checks": checks})
    r = T * T / D
    allowed = sorted(2 + 2 * c for c in rational_cos_values().values())
    p = ratio_index(r)
    det = {"T^2/D": str(r), "allowed": [str(a) for a in allowed]}
    if p is None:
        return ObstructionVerdict(Kind.EXCLUDED, f"T^2/D = {r} is not in {{0,1,2,3,4}}", details=det)
    return ObstructionVerdict(Kind.CANDIDATE_INDICES, f"T^2/D = {r}", indices=(p,), details=det)


def quadratic_field(s) -> RealNumberField:
    """Q(sqrt(s)) for a positive rational non-square s, generator = the positive root."""
    s = Fraction(s)
    if s <= 0:
        raise ValueError("s must be positive")
    m = UniPoly([-s, 0, 1], "t")
    roots = sturm_isolate(m)
    if len(roots) != 2 or roots[1].is_rational:
        raise ValueError("s must not be a rational square")
    return RealNumberField(roots[1], "t")


def fast_path_quadratic_fp(T, D) -> ObstructionVerdict:
    """Fixed point in Q(sqrt s): T^2/D must be one of the eight quadratic surds 2 + 2 cos(2 pi n/p)."""
    if not isinstance(T, NFElement) and not isinstance(D, NFElement):
        raise ValueError("T and D must be number-field elements of a quadratic field")
    K = T.field if isinstance(T, NFElement) else D.field
    if K.degree != 2:
        raise ValueError("the field must be quadratic")
    checks = hypothesis_checks(T, D)
    fail = _hypothesis_failure(checks)
    if fail:
        return ObstructionVerdict(Kind.INCONCLUSIVE, f"hypothesis: {fail}", annotations={"checks": checks})
    r = T * T / D
    det = {"T^2/D": str(r.reduced()), "approx": f"{float(r):.12g}"}
    hits = []
    for p in (5, 8, 10, 12):
        M = min_poly_cos(p).poly
        w = r * Fraction(1, 2) - 1
        val = 0
        for c in reversed(M.coeffs):
            val = val * w + c
        if _is_zero(val):
            hits.append(p)
    if not hits:
        return ObstructionVerdict(Kind.EXCLUDED, "T^2/D avoids the eight quadratic values", details=det)
    return ObstructionVerdict(Kind.CANDIDATE_INDICES, "T^2/D is one of the quadratic values", indices=tuple(hits),
                              details=det)


def quadratic_targets():
    """The eight quadratic values of T^2/D, each as (p, minimal polynomial of T^2/D)."""
    out = []
    for p in indices_with_cos_degree_at_most(2).indices:
        if cos_degree(p) != 2:
            continue
        M = min_poly_cos(p, "r").poly
        # substitute v = r/2 - 1 and clear denominators
        sub = M.compose(UniPoly([-1, Fraction(1, 2)], "r"))
        out.append((p, sub.primitive()))
    return out


# two-integral classification ------------------------------------------------------------------------


@dataclass(frozen=True)
class TwoIntegralVerdict:
    possible: bool
    reason: str


def two_integral_classification(b, c) -> TwoIntegralVerdict:
    """Char poly mu^2 + b mu + c at a real fixed point; can two independent integrals exist?"""
    b, c = Fraction(b), Fraction(c)
    p = UniPoly([c, b, 1], "mu")
    if c == 0:
        return TwoIntegralVerdict(False, "zero eigenvalue")
    if b * b - 4 * c < 0:
        if c != 1:
            return TwoIntegralVerdict(False, "complex eigenvalues need c = 1")
        t = is_cyclotomic_product(p)
        if t.is_product:
            return TwoIntegralVerdict(True, f"cyclotomic {t.witness}")
        return TwoIntegralVerdict(False, "complex eigenvalues are not roots of unity")
    roots = rational_roots(p)
    if sum(roots.values()) == 2 and all(r in (1, -1) for r in roots):
        return TwoIntegralVerdict(True, f"real eigenvalues {sorted(roots)}")
    return TwoIntegralVerdict(False, "real eigenvalues other than +-1")


def monomial_map(p: int, q: int) -> RationalMap:
    return RationalMap.parse(f"vars x,y; f = (y, x^({p})*y^({q}))")


def monomial_sweep(radius=6):
    """(p, q) with |p|, |q| <= radius, p != 0, for which the map (y, x^p y^q) passes the two-integral test."""
    out = []
    for p in range(-radius, radius + 1):
        if p == 0:
            continue
        for q in range(-radius, radius + 1):
            f = monomial_map(p, q)
            env = {"x": 1, "y": 1}
            J = [[Fraction(e.evaluate(env)) for e in row] for row in f.jacobian()]
            tr = J[0][0] + J[1][1]
            det = J[0][0] * J[1][1] - J[0][1] * J[1][0]
            if two_integral_classification(-tr, det).possible:
                out.append((p, q))
    return out


# parametric planar ------------------------------------------------------------------------------------


_REL = re.compile(r"^\s*([A-Za-z_][A-Za-z_0-9]*)\s*(>=|<=|!=|==|=|>|<)\s*(-?\d+(?:/\d+)?)\s*$")


@dataclass(frozen=True)
class ParamConstraint:
    param: str
    op: str
    value: Fraction

    @classmethod
    def parse(cls, text: str) -> "ParamConstraint":
        m = _REL.match(text)
        if not m:
            raise ValueError(f"cannot parse constraint {text!r}; expected e.g. 'a > 9/8'")
        op = "==" if m.group(2) == "=" else m.group(2)
        return cls(m.group(1), op, Fraction(m.group(3)))

    def holds(self, a) -> bool:
        a = Fraction(a)
        return {
            ">": a > self.value,
            ">=": a >= self.value,
            "<": a < self.value,
            "<=": a <= self.value,
            "==": a == self.value,
            "!=": a != self.value,
        }[self.op]

    def __str__(self):
        return f"{self.param} {self.op} {self.value}"


def _probe_values(k):
    base = [Fraction(37, 11), Fraction(-53, 7), Fraction(101, 13), Fraction(-29, 17)]
    return base[:k]


def parametric_rational_fixed_points(f: RationalMap):
    """Rational points that are fixed for every parameter value (found by specialization, confirmed symbolically)."""
    common = None
    for val in _probe_values(2):
        g = f.specialize({p: val for p in f.params})
        try:
            pts = set(g.rational_fixed_points())
        except ContinuumError:
            pts = set()
        common = pts if common is None else common & pts
    sys = f.fixed_point_system()
    out = []
    for pt in sorted(common or ()):
        env = dict(zip(f.state_vars, pt))
        if all(s.subs(env).is_zero() for s in sys.equations) and all(
            not q.subs(env).is_zero() for q in sys.denominators
        ):
            out.append(pt)
    return out


def _real_roots_uni(p: UniPoly):
    """Rational roots exactly, the others as 12-digit approximations."""
    if p.degree <= 0:
        return []
    rats = rational_roots(p)
    out = list(rats)
    for r in rats:
        p = p.divexact(UniPoly([-r, 1], p.var) ** rats[r])
    if p.degree > 0:
        out += [r.approx(12) for r in sturm_isolate(p)]
    return sorted(out)


def parametric_planar(f: RationalMap, constraint: ParamConstraint | None = None, options=None) -> ObstructionVerdict:
    """One-parameter planar family at its parameter-free rational fixed points."""
    if f.n != 2 or len(f.params) != 1:
        raise ValueError("parametric_planar needs a planar map with exactly one parameter")
    (a,) = f.params
    if constraint is not None and constraint.param != a:
        raise ValueError(f"constraint is on {constraint.param!r}, the parameter is {a!r}")
    cp = f.char_poly()
    cert = Certificate()
    reports = []
    candidate_sets = []
    annotations = {}
    details = {}
    for pt in parametric_rational_fixed_points(f):
        env = dict(zip(f.state_vars, pt))
        T = cp.T.subs(env).reduced()
        D = cp.D.subs(env).reduced()
        label = "(" + ", ".join(str(c) for c in pt) + ")"
        rep = FixedPointReport(label, tuple(float(c) for c in pt), {}, str(T), str(D))
        reports.append(rep)
        if D.is_zero():
            rep.checks["D==0"] = True
            annotations[label] = "Jacobian singular for every parameter value; no condition"
            continue
        cert.add(f"T{label}", "value", (), T.num)
        disc = (T * T - 4 * D).reduced()
        disc_num = UniPoly.from_multi((disc.num * disc.den).drop_unused(), a) if not disc.is_zero() else None
        cands = {}
        notes = {}
        # T^2 = c D with c = 2 + 2 cos(2 pi / p) rational
        for p, cosv in sorted(rational_cos_values().items()):
            c = 2 + 2 * cosv
            N = (T * T - D * c).reduced().num
            name = f"N_{c}{label}"
            cert.add(name, "value", (), N)
            if N.is_zero():
                notes[f"c={c}"] = "T^2 - cD vanishes identically: every parameter value is a candidate"
                continue
            Nu = UniPoly.from_multi(N.drop_unused(), a) if not N.is_const() else None
            if Nu is None:
                continue
            for r in rational_roots(Nu):
                cands.setdefault(r, []).append(f"T^2/D={c} (p={p})")
        # D = 1 means |mu| = 1: outside the hypothesis, kept as candidate
        Dm1 = (D - 1).reduced().num
        if not Dm1.is_zero() and not Dm1.is_const():
            for r in rational_roots(UniPoly.from_multi(Dm1.drop_unused(), a)):
                cands.setdefault(r, []).append("D=1: Inconclusive (modulus one)")
        kept = {}
        for r, why in cands.items():
            if constraint is not None and not constraint.holds(r):
                continue
            try:
                dv = D.evaluate({a: r}) if D.free_vars() else D.const_value()
                Tv = T.evaluate({a: r}) if T.free_vars() else T.const_value()
            except PoleError:
                kept[r] = why + ["pole of T or D: Inconclusive"]
                continue
            if Tv * Tv - 4 * dv >= 0:
                why = why + ["T^2-4D >= 0 here: Inconclusive"]
            kept[r] = why
        # where does the hypothesis fail inside the admitted region?
        bad_region = []
        if disc_num is not None:
            for val in _real_roots_uni(disc_num):
                if constraint is None or constraint.holds(val):
                    bad_region.append(f"T^2-4D changes sign near {float(val):.6g}")
        if bad_region:
            notes["hypothesis"] = bad_region
        candidate_sets.append(set(kept))
        details[label] = {"candidates": {str(r): w for r, w in sorted(kept.items())}, "notes": notes}
    if not candidate_sets:
        return ObstructionVerdict(Kind.INCONCLUSIVE, "no parameter-free fixed point satisfies the hypotheses",
                                  fixed_points=reports, annotations=annotations, details=details, certificate=cert)
    final = set.intersection(*candidate_sets)
    return ObstructionVerdict(Kind.CANDIDATE_PARAMS if final else Kind.EXCLUDED,
                              f"candidate {a} values" + (f" under {constraint}" if constraint else ""),
                              params=tuple(sorted(final)), fixed_points=reports, annotations=annotations,
                              details=details, certificate=cert)


# n-dimensional pipeline ---------------------------------------------------------------------------------


def _linear_substitution(eqs, state_vars):
    """Solve equations linear in a state variable with constant coefficient; returns (eqs, mapping)."""
    mapping = {}
    eqs = [e for e in eqs if not e.is_zero()]
    changed = True
    while changed:
        changed = False
        for i, e in enumerate(eqs):
            for v in state_vars:
                if v in mapping or e.degree(v) != 1:
                    continue
                c = e.lc_in(v)
                if not c.is_const():
                    continue
                rest = e - c * MultiPoly.var(v, e.vars)
                sol = rest.scale(-Fraction(1) / Fraction(c.const_value()))
                sol = sol.with_vars(e.vars)
                mapping = {k: m.subs({v: sol}) for k, m in mapping.items()}
                mapping[v] = sol
                eqs = [o.subs({v: sol}) for j, o in enumerate(eqs) if j != i]
                eqs = [o for o in eqs if not o.is_zero()]
                changed = True
                break
            if changed:
                break
    return eqs, mapping


def _strip_mu_cyclotomics(R: MultiPoly, mu: str):
    """Remove cyclotomic factors Phi_d(mu) that divide R exactly."""
    removed = []
    deg = R.degree(mu)
    for d in indices_with_totient_at_most(max(deg, 1)):
        phi = cyclotomic_poly(d, mu).to_multi(R.vars)
        while R.degree(mu) >= phi.degree(mu) and phi.divides(R):
            R = R.divexact(phi)
            removed.append(d)
    return R, removed


class NoFixedPoints(ValueError):
    pass


def eigen_eliminant(f: RationalMap, options=None):
    """P(mu) with params: a nonzero polynomial vanishing at every eigenvalue at every fixed point.

    Returns (P, info) where info lists the removed unit-root factors, the
    parameter content that was divided out and the intermediate polynomials.
    """
    opt = options or PipelineOptions()
    mu = _fresh(opt.eigen_symbol, f.universe)
    sys = f.fixed_point_system()
    cp = f.char_poly(mu)
    vars_ = f.universe + (mu,)
    eqs = [e.with_vars(vars_) for e in sys.equations]
    R = cp.R.with_vars(vars_)
    dens = [q.with_vars(vars_) for q in sys.denominators]
    info = {"mu": mu, "removed_unit_roots": [], "content": None, "substitutions": {}}
    if all(e.is_zero() for e in eqs):
        raise ContinuumError("every point is fixed")
    eqs, mapping = _linear_substitution(eqs, f.state_vars)
    info["substitutions"] = {k: str(v) for k, v in mapping.items()}
    if mapping:
        R = R.subs(mapping).with_vars(vars_) if R.vars else R
        dens = [q.subs(mapping).with_vars(vars_) for q in dens]
        eqs = [e.with_vars(vars_) for e in eqs]
    remaining = [v for v in f.state_vars if v not in mapping]
    if any(e.free_vars() and not set(e.free_vars()) & set(remaining) for e in eqs):
        # conditions on parameters alone: only special parameter values have fixed points
        info["parameter_conditions"] = [str(e) for e in eqs if not set(e.free_vars()) & set(remaining)]
    eqs = [e for e in eqs if set(e.free_vars()) & set(remaining)]
    if remaining and not eqs:
        raise ContinuumError(f"fixed points form a continuum in {remaining}")
    if len(remaining) == 1 and len(eqs) >= 1:
        (xv,) = remaining
        e = eqs[0]
        for o in eqs[1:]:
            e = mgcd(e, o)
        for q in dens:
            g = mgcd(e, q)
            while g.degree(xv) > 0:
                e = e.divexact(g)
                g = mgcd(e, q)
        if e.degree(xv) <= 0:
            raise NoFixedPoints("every solution of the fixed-point equation is a pole")
        info["fixed_point_equation"] = str(e)
        R = prem(R, e, xv)
        R, removed = _strip_mu_cyclotomics(R, mu)
        info["removed_unit_roots"] = removed
        info["reduced_charpoly"] = str(R)
        P = resultant(e, R, xv) if R.degree(xv) > 0 else R ** e.degree(xv)
    elif remaining:
        R, removed = _strip_mu_cyclotomics(R, mu)
        info["removed_unit_roots"] = removed
        from .dynmap.rmap import eliminate_to

        P = eliminate_to(eqs + [R], keep=[mu] + list(f.params), order=remaining)
        if P is None:
            raise ContinuumError("elimination collapsed to zero")
    else:
        R, removed = _strip_mu_cyclotomics(R, mu)
        info["removed_unit_roots"] = removed
        P = R
    if P.is_zero():
        raise ContinuumError("eigenvalue eliminant vanishes identically")
    cont = content_in(P, mu)
    if not cont.is_const():
        info["content"] = str(cont.primitive())
        P = P.divexact(cont)
    P = P.primitive().drop_unused()
    info["P"] = str(P)
    return P, info


def parametric_candidates(P: MultiPoly, mu: str, param: str, cert: Certificate | None = None):
    """Parameter values where P shares a root with some Phi_p of degree <= deg P.

    Returns (candidates dict value -> list of p, flagged p's where the resultant vanishes identically,
    per-p resultants).
    """
    cert = cert if cert is not None else Certificate()
    k = P.degree(mu)
    cands, flagged, res = {}, [], {}
    if "P" not in cert.names():
        cert.add("P", "value", (), P)
    for p in indices_with_totient_at_most(k):
        phi = cyclotomic_poly(p, mu).to_multi(P.vars)
        cert.add(f"Phi_{p}", "cyclotomic", (p, mu), phi)
        r = resultant(P, phi, mu)
        cert.add(f"Res(P,Phi_{p})", "resultant", ("P", f"Phi_{p}", mu), r)
        res[p] = r
        if r.is_zero():
            flagged.append(p)
            continue
        if r.is_const():
            continue
        for root in rational_roots(UniPoly.from_multi(r.drop_unused(), param)):
            cands.setdefault(root, []).append(p)
    return cands, flagged, res


def _specialize_P(P: MultiPoly, mu, param, value) -> UniPoly:
    return UniPoly.from_multi(P.subs({param: value}).drop_unused(), mu)


def ndim_pipeline(f: RationalMap, options=None, _depth=0) -> ObstructionVerdict:
    """Necessary condition for n independent integrals: every eigenvalue at every fixed point is a root of unity."""
    opt = options or PipelineOptions()
    cert = Certificate()
    try:
        P, info = eigen_eliminant(f, opt)
    except ContinuumError as exc:
        return ObstructionVerdict(Kind.INCONCLUSIVE, f"continuum of fixed points: {exc}")
    except NoFixedPoints as exc:
        return ObstructionVerdict(Kind.INCONCLUSIVE, f"no fixed points: {exc}")
    mu = info["mu"]
    details = {"eliminant": info}
    if not P.free_vars() or P.is_const():
        return ObstructionVerdict(Kind.INCONCLUSIVE, "no fixed points", details=details)
    content = None
    if info.get("content"):
        from .dynmap.parse import parse_expr

        content = parse_expr(info["content"]).num
    live = set(P.free_vars()) | (set(content.free_vars()) if content is not None else set())
    params = [p for p in f.params if p in live]
    cert.add("P", "value", (), P)
    if not params:
        Pu = UniPoly.from_multi(P, mu)
        hits = []
        battery = {}
        for j in indices_with_totient_at_most(max(Pu.degree, 1)):
            phi = cyclotomic_poly(j, mu)
            cert.add(f"Phi_{j}", "cyclotomic", (j, mu), phi)
            r = resultant(P, phi.to_multi(), mu)
            cert.add(f"Res(P,Phi_{j})", "resultant", ("P", f"Phi_{j}", mu), r)
            val = r.const_value() if not r.is_zero() else 0
            battery[str(j)] = str(val)
            if val == 0:
                hits.append(j)
        details["battery"] = battery
        cyc = is_cyclotomic_product(Pu)
        details["all_roots_of_unity"] = cyc.is_product
        if not hits:
            return ObstructionVerdict(Kind.EXCLUDED, "no cyclotomic polynomial shares a root with P",
                                      certificate=cert, details=details)
        return ObstructionVerdict(Kind.CANDIDATE_INDICES, "some cyclotomic resultant vanishes", indices=tuple(hits),
                                  certificate=cert, details=details)
    if len(params) > 1:
        return ObstructionVerdict(Kind.INCONCLUSIVE, "more than one parameter survives elimination",
                                  certificate=cert, details=details)
    (a,) = params
    cands, flagged, res = parametric_candidates(P, mu, a, cert)
    details["resultants"] = {str(p): str(r) for p, r in res.items()}
    details["candidates"] = {str(r): ps for r, ps in sorted(cands.items())}
    if flagged:
        details["all_values_for_p"] = flagged
    # degenerate parameter values: leading coefficient or divided-out content vanishes
    degenerate = set()
    lc = P.lc_in(mu)
    if not lc.is_const():
        degenerate |= set(rational_roots(UniPoly.from_multi(lc.drop_unused(), a)))
    if content is not None and not content.is_const():
        degenerate |= set(rational_roots(UniPoly.from_multi(content.drop_unused(), a)))
    details["degenerate_values"] = [str(d) for d in sorted(degenerate)]
    survivors = []
    filt = {}
    for r in sorted(set(cands)):
        Pr = _specialize_P(P, mu, a, r)
        if Pr.degree < P.degree(mu):
            degenerate.add(r)
            continue
        t = is_cyclotomic_product(Pr)
        filt[str(r)] = {"all_roots_of_unity": t.is_product, "witness": list(t.witness), "reason": t.reason}
        if t.is_product:
            survivors.append(r)
    confirm = {}
    if _depth == 0:
        for r in sorted(degenerate | set(survivors)):
            try:
                g = f.specialize({a: r})
            except PoleError:
                confirm[str(r)] = "specialization has a vanishing denominator"
                continue
            sub = ndim_pipeline(g, opt, _depth + 1)
            confirm[str(r)] = sub.kind.value
            if r in degenerate and r not in survivors and sub.kind is not Kind.EXCLUDED:
                survivors.append(r)
            if r in survivors and sub.kind is Kind.EXCLUDED:
                survivors.remove(r)
    details["filter"] = filt
    details["specialized_reruns"] = confirm
    survivors = tuple(sorted(set(survivors)))
    kind = Kind.CANDIDATE_PARAMS if survivors else Kind.EXCLUDED
    return ObstructionVerdict(kind, f"candidate {a} values", params=survivors, certificate=cert, details=details)


# dispatch ---------------------------------------------------------------------------------------------------


def analyze_planar(f: RationalMap, options=None) -> ObstructionVerdict:
    """Run the planar obstruction at every real fixed point; one Excluded point excludes the map."""
    opt = options or PipelineOptions()
    try:
        fps = f.real_fixed_points(opt.degree_budget)
    except ContinuumError as exc:
        return ObstructionVerdict(Kind.INCONCLUSIVE, f"continuum of fixed points: {exc}")
    if not fps:
        return ObstructionVerdict(Kind.INCONCLUSIVE, "no real fixed points")
    verdicts = []
    for fp in fps:
        cp = f.char_poly()
        if fp.is_rational():
            try:
                T = fp.evaluate(cp.T).rational_value()
                D = fp.evaluate(cp.D).rational_value()
            except PoleError:
                continue
            fast = fast_path_rational_fp(T, D)
            full = planar_pipeline(f, fp, opt)
            if fast.kind is not Kind.INCONCLUSIVE and (fast.kind is Kind.EXCLUDED) != (full.kind is Kind.EXCLUDED):
                raise ArithmeticError("fast path and planar pipeline disagree")
            full.details["fast_path"] = fast.to_dict()
            verdicts.append(full)
        else:
            verdicts.append(planar_pipeline(f, fp, opt))
    reports = [r for v in verdicts for r in v.fixed_points]
    for v in verdicts:
        if v.kind is Kind.EXCLUDED:
            return ObstructionVerdict(Kind.EXCLUDED, v.reason, certificate=v.certificate, fixed_points=reports,
                                      details={"per_fixed_point": [x.to_dict() for x in verdicts]})
    idx = sorted({i for v in verdicts for i in v.indices})
    kind = Kind.CANDIDATE_INDICES if idx else Kind.INCONCLUSIVE
    reason = "resultants vanish at every analyzable fixed point" if idx else "no fixed point satisfies the hypotheses"
    return ObstructionVerdict(kind, reason, indices=tuple(idx), fixed_points=reports,
                              details={"per_fixed_point": [x.to_dict() for x in verdicts]})


def analyze(f: RationalMap, constraint: ParamConstraint | None = None, options=None) -> ObstructionVerdict:
    if f.n == 2 and not f.params:
        return analyze_planar(f, options)
    if f.n == 2 and len(f.params) == 1:
        return parametric_planar(f, constraint, options)
    v = ndim_pipeline(f, options)
    if constraint is not None and v.kind is Kind.CANDIDATE_PARAMS:
        kept = tuple(p for p in v.params if constraint.holds(p))
        v = ObstructionVerdict(Kind.CANDIDATE_PARAMS if kept else Kind.EXCLUDED, v.reason + f" under {constraint}",
                               params=kept, certificate=v.certificate, details=v.details)
    return v
