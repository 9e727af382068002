"""Rational maps: Jacobians, characteristic data, fixed points, composition."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..core.factor import factor_uni_bounded
from ..core.mgcd import mgcd
from ..core.multipoly import MultiPoly
from ..core.numfield import NFElement, RealNumberField, nf_poly_gcd
from ..core.realroots import sturm_isolate
from ..core.resultant import det_bareiss, resultant
from ..core.upoly import UniPoly, rational_roots
from .parse import parse_source
from .ratfunc import PoleError, RationalFunction


def _lcm(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    if a.is_const():
        return b
    if b.is_const():
        return a
    return (a * b).divexact(mgcd(a, b))


@dataclass(frozen=True)
class CharPolyData:
    """Trace/determinant (planar case) and R(x, mu) = Num(det(mu*I - Df(x)))."""

    mu: str
    R: MultiPoly
    T: RationalFunction | None = None
    D: RationalFunction | None = None

    @property
    def T1(self):
        return self.T.num

    @property
    def T2(self):
        return self.T.den

    @property
    def D1(self):
        return self.D.num

    @property
    def D2(self):
        return self.D.den


@dataclass(frozen=True)
class FixedPointSystem:
    state_vars: tuple
    params: tuple
    equations: tuple  # S_i
    denominators: tuple  # Q_i, must not vanish at admitted solutions

    @property
    def is_degenerate(self):
        return all(s.is_zero() for s in self.equations)


@dataclass(frozen=True)
class Eliminants:
    """Univariate eliminants of a planar fixed-point system."""

    T1: MultiPoly  # Res_x(S1, S2), in the second variable
    T3: MultiPoly  # Res_y(S1, S2), in the first variable
    continuum: bool


@dataclass
class FixedPoint:
    """A real fixed point whose coordinates all live in one field Q(alpha)."""

    field: RealNumberField
    coords: tuple
    names: tuple

    def is_rational(self):
        return all(c.is_rational() for c in self.coords)

    def rational_coords(self):
        return tuple(Fraction(c.rational_value()) for c in self.coords)

    def env(self):
        return dict(zip(self.names, self.coords))

    def evaluate(self, rf: RationalFunction) -> NFElement:
        e = self.env()
        num = rf.num.evaluate(e)
        den = rf.den.evaluate(e)
        num, den = self.field(num), self.field(den)
        if den.is_zero():
            raise PoleError(f"{rf.den} vanishes at the fixed point")
        return num / den

    def approx(self):
        return tuple(float(c) for c in self.coords)

    def sort_key(self):
        return tuple(float(c) for c in self.coords)

    def describe(self):
        if self.is_rational():
            return "(" + ", ".join(str(c) for c in self.rational_coords()) + ")"
        a = self.field.alpha
        coords = ", ".join(str(c.reduced()) for c in self.coords)
        return f"({coords}) with {self.field.name} = root of {a.minpoly} in [{a.lo}, {a.hi}]"


class ContinuumError(ValueError):
    """The fixed-point system does not isolate its solutions."""


@dataclass(frozen=True)
class RationalMap:
    state_vars: tuple
    params: tuple
    components: tuple

    def __post_init__(self):
        if len(self.components) != len(self.state_vars):
            raise ValueError("component count must equal the number of state variables")
        declared = set(self.state_vars) | set(self.params)
        for c in self.components:
            extra = set(c.free_vars()) - declared
            if extra:
                raise ValueError(f"undeclared variables {sorted(extra)}")

    # construction -------------------------------------------------------------------
    @classmethod
    def parse(cls, text: str) -> "RationalMap":
        src = parse_source(text)
        return cls(src.state_vars, src.params, src.components)

    @classmethod
    def from_components(cls, state_vars, components, params=()):
        from .parse import parse_expr

        universe = tuple(state_vars) + tuple(params)
        comps = []
        for c in components:
            if isinstance(c, str):
                c = parse_expr(c, universe)
            comps.append(c.reduced().with_vars(universe))
        return cls(tuple(state_vars), tuple(params), tuple(comps))

    @property
    def n(self):
        return len(self.state_vars)

    @property
    def universe(self):
        return self.state_vars + self.params

    def render(self) -> str:
        head = f"vars {', '.join(self.state_vars)};"
        if self.params:
            head += f" params {', '.join(self.params)};"
        return f"{head} f = ({', '.join(str(c) for c in self.components)})"

    __str__ = render

    def specialize(self, values) -> "RationalMap":
        """Fix some parameters to rational values."""
        values = {k: Fraction(v) for k, v in values.items()}
        params = tuple(p for p in self.params if p not in values)
        universe = self.state_vars + params
        comps = []
        for c in self.components:
            try:
                s = c.subs(values)
            except ZeroDivisionError:
                s = None
            if s is None or s.den.is_zero():
                raise PoleError(f"denominator of {c} vanishes at {values}")
            comps.append(s.reduced().with_vars(universe))
        return RationalMap(self.state_vars, params, tuple(comps))

    # calculus ---------------------------------------------------------------------------
    def jacobian(self):
        return [[c.diff(v) for v in self.state_vars] for c in self.components]

    def char_poly(self, mu: str = "mu") -> CharPolyData:
        if mu in self.universe:
            raise ValueError(f"eigenvalue symbol {mu!r} clashes with a map variable")
        J = self.jacobian()
        n = self.n
        vars_ = self.universe + (mu,)
        m = MultiPoly.var(mu, vars_)
        rows = []
        scale = MultiPoly.const(1, vars_)
        for i in range(n):
            L = MultiPoly.const(1, vars_)
            for e in J[i]:
                L = _lcm(L, e.den.with_vars(vars_))
            row = []
            for j in range(n):
                e = J[i][j]
                entry = -(e.num.with_vars(vars_) * L.divexact(e.den.with_vars(vars_)))
                if i == j:
                    entry = entry + m * L
                row.append(entry)
            rows.append(row)
            scale = scale * L
        det = RationalFunction(det_bareiss(rows), scale)
        R = det.num
        T = D = None
        if n == 2:
            T = (J[0][0] + J[1][1]).reduced()
            D = (J[0][0] * J[1][1] - J[0][1] * J[1][0]).reduced()
        return CharPolyData(mu, R, T, D)

    # fixed points -----------------------------------------------------------------------
    def fixed_point_system(self) -> FixedPointSystem:
        eqs, dens = [], []
        for v, c in zip(self.state_vars, self.components):
            x = MultiPoly.var(v, self.universe)
            eqs.append(c.num - x * c.den)
            dens.append(c.den)
        return FixedPointSystem(self.state_vars, self.params, tuple(eqs), tuple(dens))

    def eliminate_fixed_points(self) -> Eliminants:
        return eliminate_planar(self.fixed_point_system())

    def real_fixed_points(self, degree_budget=6):
        """All real fixed points, exactly, for a parameter-free planar map."""
        if self.params:
            raise ValueError("real_fixed_points needs a parameter-free map")
        if self.n != 2:
            raise ValueError("real_fixed_points is planar; use rational_fixed_points in higher dimension")
        return planar_real_fixed_points(self.fixed_point_system(), degree_budget)

    def rational_fixed_points(self):
        if self.params:
            raise ValueError("rational_fixed_points needs a parameter-free map")
        sys = self.fixed_point_system()
        sols = _rational_solutions(list(sys.equations), list(self.state_vars), {})
        out = []
        for s in sols:
            env = {v: s[v] for v in self.state_vars}
            if all(q.evaluate(env) != 0 for q in sys.denominators):
                out.append(tuple(s[v] for v in self.state_vars))
        return sorted(set(out))

    # evaluation ---------------------------------------------------------------------------
    def evaluate(self, point, params=None):
        env = dict(zip(self.state_vars, point))
        if params:
            env.update(params)
        missing = [p for p in self.params if p not in env]
        if missing:
            raise ValueError(f"parameters {missing} need values")
        return tuple(c.evaluate(env) for c in self.components)

    def iterate(self, point, steps, params=None):
        orbit = [tuple(point)]
        for _ in range(steps):
            orbit.append(self.evaluate(orbit[-1], params))
        return orbit

    def compose(self, other: "RationalMap") -> "RationalMap":
        """self after other: x -> self(other(x))."""
        if self.state_vars != other.state_vars:
            raise ValueError("state variables differ")
        params = self.params + tuple(p for p in other.params if p not in self.params)
        universe = self.state_vars + params
        mapping = {v: c.with_vars(universe) for v, c in zip(self.state_vars, other.components)}
        comps = tuple(c.with_vars(universe).subs(mapping).reduced().with_vars(universe) for c in self.components)
        return RationalMap(self.state_vars, params, comps)

    def power(self, k: int) -> "RationalMap":
        if k < 1:
            raise ValueError("k must be >= 1")
        out = self
        for _ in range(k - 1):
            out = self.compose(out)
        return out

    def is_identity(self) -> bool:
        return all(
            c == RationalFunction(MultiPoly.var(v, self.universe)) for v, c in zip(self.state_vars, self.components)
        )


# elimination ----------------------------------------------------------------------------------


def eliminate_planar(sys: FixedPointSystem) -> Eliminants:
    if len(sys.state_vars) != 2:
        raise ValueError("planar elimination needs two state variables")
    x, y = sys.state_vars
    S1, S2 = sys.equations
    if S1.is_zero() or S2.is_zero():
        zero = MultiPoly.const(0, S1.vars)
        return Eliminants(zero, zero, True)
    T1 = resultant(S1, S2, x)
    T3 = resultant(S1, S2, y)
    return Eliminants(T1, T3, T1.is_zero() or T3.is_zero())


def _univariate_in(p: MultiPoly, var: str) -> UniPoly:
    return UniPoly.from_multi(p, var)


def _nf_coeffs(field: RealNumberField, p: MultiPoly, fixed_var, value: NFElement, var):
    """Coefficients in ``var`` of p with ``fixed_var`` := value, as NFElements."""
    out = []
    for c in p.coeffs_in(var):
        u = UniPoly.from_multi(c, fixed_var) if not c.is_zero() else UniPoly([], field.name)
        out.append(field(u.compose(value.poly) if u.degree >= 0 else u))
    return out


def _solve_other(field, alpha_el, sys, known, other):
    S = sys.equations
    cs = [_nf_coeffs(field, s, known, alpha_el, other) for s in S]
    g = []
    for c in cs:
        g = nf_poly_gcd(g, c) if g else [e for e in c]
        if g and len(g) == 1:
            break
    return g


def planar_real_fixed_points(sys: FixedPointSystem, degree_budget=6):
    """Exact real fixed points (x, y) with both coordinates in Q(alpha)."""
    x, y = sys.state_vars
    el = eliminate_planar(sys)
    if el.continuum:
        raise ContinuumError("the fixed-point equations do not have isolated solutions")
    points = []
    unresolved = []
    for var, other, elim in ((x, y, el.T3), (y, x, el.T1)):
        points, unresolved = [], []
        u = _univariate_in(elim, var)
        for f in factor_uni_bounded(u, degree_budget).factors:
            for root in sturm_isolate(f.poly):
                field = RealNumberField(root)
                a = field.gen()
                g = _solve_other(field, a, sys, var, other)
                if not g:
                    unresolved.append(root)
                    continue
                deg = len(g) - 1
                if deg == 0:
                    continue  # spurious root of the eliminant
                if deg > 1:
                    unresolved.append(root)
                    continue
                b = -g[0]
                coords = (a, b) if var == x else (b, a)
                env = {x: coords[0], y: coords[1]}
                if any(field(q.evaluate(env)).is_zero() for q in sys.denominators):
                    continue
                points.append(FixedPoint(field, coords, (x, y)))
        if not unresolved:
            break
    if unresolved:
        raise ArithmeticError("some fixed points do not have both coordinates in a common simple extension")
    points.sort(key=FixedPoint.sort_key)
    return points


def eliminate_to(polys, keep, order=None):
    """Successive resultants: a nonzero polynomial in ``keep`` vars implied by polys = 0.

    Returns None if every chain collapses to zero.
    """
    polys = [p for p in polys if not p.is_zero()]
    free = set()
    for p in polys:
        free |= set(p.free_vars())
    todo = [v for v in (order or sorted(free)) if v in free and v not in keep]
    for v in todo:
        with_v = [p for p in polys if p.degree(v) > 0]
        without = [p for p in polys if p.degree(v) <= 0]
        if not with_v:
            continue
        with_v.sort(key=lambda p: (p.degree(v), len(p.terms)))
        pivot = with_v[0]
        new = []
        for p in with_v[1:]:
            r = resultant(pivot, p, v)
            if not r.is_zero():
                new.append(r.primitive())
        polys = without + new
        if not polys:
            return None
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        return None
    polys.sort(key=lambda p: (p.total_degree(), len(p.terms)))
    return polys[0]


def _rational_solutions(eqs, vars_, assigned):
    """All rational solutions of a zero-dimensional polynomial system."""
    eqs = [e.subs(assigned) if assigned else e for e in eqs]
    eqs = [e for e in eqs if not e.is_zero()]
    if any(e.is_const() for e in eqs):
        return []
    remaining = [v for v in vars_ if v not in assigned]
    if not remaining:
        return [dict(assigned)]
    v = remaining[0]
    E = eliminate_to(eqs, [v], order=remaining[1:])
    if E is None or (E.is_zero()):
        raise ContinuumError("fixed points are not isolated")
    E = E.drop_unused()
    if E.is_const():
        return []
    out = []
    for r in sorted(rational_roots(UniPoly.from_multi(E, v))):
        out.extend(_rational_solutions(eqs, vars_, {**assigned, v: r}))
    return out
