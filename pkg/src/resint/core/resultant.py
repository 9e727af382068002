"""Resultants by Sylvester matrices and fraction-free determinants."""

from __future__ import annotations

from fractions import Fraction

from .multipoly import MultiPoly
from .upoly import UniPoly


def det_bareiss(matrix):
    """Determinant of a square matrix of MultiPolys by Bareiss elimination."""
    n = len(matrix)
    if n == 0:
        return MultiPoly.const(1)
    m = [list(row) for row in matrix]
    sign = 1
    prev = None
    for k in range(n - 1):
        if m[k][k].is_zero():
            for i in range(k + 1, n):
                if not m[i][k].is_zero():
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return MultiPoly.const(0, m[0][0].vars)
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                val = pivot * m[i][j] - m[i][k] * m[k][j]
                if prev is not None:
                    val = val.divexact(prev)
                m[i][j] = val
            m[i][k] = MultiPoly.const(0, pivot.vars)
        prev = pivot
    d = m[n - 1][n - 1]
    return -d if sign < 0 else d


def sylvester_matrix(p: MultiPoly, q: MultiPoly, var: str):
    a = list(reversed(p.coeffs_in(var)))
    b = list(reversed(q.coeffs_in(var)))
    m, n = len(a) - 1, len(b) - 1
    zero = MultiPoly.const(0, p.vars)
    size = m + n
    rows = []
    for i in range(n):
        rows.append([zero] * i + a + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + b + [zero] * (size - n - 1 - i))
    return rows


def _reduce_mod_const_lc(p: MultiPoly, q: MultiPoly, var: str):
    """Remainder of p modulo q in ``var`` where q's leading coefficient is a nonzero scalar."""
    qc = q.coeffs_in(var)
    d = len(qc) - 1
    inv = Fraction(1) / Fraction(qc[-1].const_value())
    pc = list(p.coeffs_in(var))
    for i in range(len(pc) - 1, d - 1, -1):
        t = pc[i]
        if t.is_zero():
            continue
        t = t.scale(inv)
        for j in range(d + 1):
            if not qc[j].is_zero():
                pc[i - d + j] = pc[i - d + j] - t * qc[j]
    return pc[:d]


def _companion_resultant(p: MultiPoly, q: MultiPoly, var: str):
    """Res(p, q) when lc_var(q) is a nonzero scalar: norm of p in the algebra mod q."""
    dp, dq = p.degree(var), q.degree(var)
    qc = q.coeffs_in(var)
    lcq = qc[-1].const_value()
    r = _reduce_mod_const_lc(p, q, var)
    r = r + [MultiPoly.const(0, p.vars)] * (dq - len(r))
    # column j = coordinates of r * var^j modulo q
    cols = []
    cur = list(r)
    inv = Fraction(1) / Fraction(lcq)
    monic = [c.scale(inv) for c in qc]
    for _ in range(dq):
        cols.append(cur)
        top = cur[-1]
        shifted = [MultiPoly.const(0, p.vars)] + cur[:-1]
        if not top.is_zero():
            shifted = [s - top * monic[i] for i, s in enumerate(shifted)]
        cur = shifted
    mat = [[cols[j][i] for j in range(dq)] for i in range(dq)]
    det = det_bareiss(mat)
    factor = Fraction(lcq) ** dp
    if (dp * dq) % 2:
        factor = -factor
    return det.scale(factor)


def resultant(p: MultiPoly, q: MultiPoly, var: str, method: str = "auto") -> MultiPoly:
    """Sylvester resultant Res_var(p, q).

    ``method`` is ``"auto"``, ``"sylvester"`` or ``"companion"``; all agree
    exactly.  The companion route is used when one operand has a scalar
    leading coefficient in ``var``.
    """
    if isinstance(p, UniPoly):
        p = p.to_multi()
    if isinstance(q, UniPoly):
        q = q.to_multi()
    p, q = p._align(q)
    if var not in p.vars:
        p = p.with_vars(p.vars + (var,))
        q = q.with_vars(p.vars)
    if p.is_zero() or q.is_zero():
        raise ValueError("resultant of a zero polynomial")
    dp, dq = p.degree(var), q.degree(var)
    if dp == 0:
        return p ** dq
    if dq == 0:
        return q ** dp
    if method in ("auto", "companion"):
        lq = q.lc_in(var)
        lp = p.lc_in(var)
        q_ok = lq.is_const()
        p_ok = lp.is_const()
        if q_ok and (not p_ok or dq <= dp):
            return _companion_resultant(p, q, var)
        if p_ok:
            r = _companion_resultant(q, p, var)
            return -r if (dp * dq) % 2 else r
        if method == "companion":
            raise ValueError("companion method needs a scalar leading coefficient")
    return det_bareiss(sylvester_matrix(p, q, var))


def resultant_uni(p: UniPoly, q: UniPoly):
    """Resultant of two parameter-free univariate polynomials, as a rational."""
    r = resultant(p.to_multi(), q.rename(p.var).to_multi(), p.var)
    return r.const_value() if not r.is_zero() else 0
