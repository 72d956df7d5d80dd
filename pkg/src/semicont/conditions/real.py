"""Decision procedures for piecewise functions on the real line.

Near x each side lies in one piece, so a side is described by its limit l
and how values approach it (constant, from above, from below).  Two
thresholds drive most checks:

* ``w`` is dominated near x (some U has w <= f on U) iff w <= f(x), w <= l on
  constant and from-above sides, and w < l on from-below sides;
* ``w`` is strictly dominated near x (some U has w < f on U) iff w < f(x),
  w < l on constant and from-below sides, and w <= l on from-above sides.

Both sets of w are down-closed, so quantifying over image values reduces to
interval queries on the exact image.  Decreasing nets converging to x can
only run along constant or from-above sides; strictly decreasing ones only
along from-above sides.  The real line is first countable, so sequential
conditions coincide with their net/filter counterparts.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil

from ..extreal import NEG_INF, POS_INF, ExtReal, strictly_between
from ..piecewise import PiecewiseFn, PointAnalysis, SideKind, SideProfile, analyze_point
from .catalog import Condition, GlobalOnlyCondition, Verdict

C = Condition
CONST, ABOVE, BELOW = SideKind.CONSTANT, SideKind.FROM_ABOVE, SideKind.FROM_BELOW


@dataclass(frozen=True)
class Threshold:
    """The set {w : w < value} when strict, {w : w <= value} otherwise."""

    value: ExtReal
    strict: bool

    def admits(self, w: ExtReal) -> bool:
        return w < self.value if self.strict else w <= self.value


def _tightest(items: list[Threshold]) -> Threshold:
    lo = min(t.value for t in items)
    return Threshold(lo, any(t.strict for t in items if t.value == lo))


def dominated_threshold(pa: PointAnalysis) -> Threshold:
    items = [Threshold(pa.value, False)]
    for s in pa.sides:
        items.append(Threshold(s.limit, s.kind == BELOW))
    return _tightest(items)


def strictly_dominated_threshold(pa: PointAnalysis) -> Threshold:
    items = [Threshold(pa.value, True)]
    for s in pa.sides:
        items.append(Threshold(s.limit, s.kind != ABOVE))
    return _tightest(items)


def _decreasing_sides(pa: PointAnalysis, strict: bool = False) -> list[SideProfile]:
    kinds = (ABOVE,) if strict else (CONST, ABOVE)
    return [s for s in pa.sides if s.kind in kinds]


def _seq(s: SideProfile, x) -> str:
    return s.approach_sequence(x)


def _note(cond: Condition, base: str) -> str:
    cp = cond.info.counterpart
    if cond.info.style == "sequence" and cp is not None:
        return f"{base}; equals {cp} since the real line is first countable"
    return base


class RealContext:
    """Per-function cache of the image and point analyses."""

    def __init__(self, fn: PiecewiseFn):
        self.fn = fn
        self.image = fn.image
        self.m, self.m_attained = self.image.infimum()
        self._cache: dict = {}

    def point(self, x) -> PointAnalysis:
        pa = self._cache.get(x)
        if pa is None:
            pa = self._cache[x] = analyze_point(self.fn, x)
        return pa


def check_at_real(cond: Condition, fn: PiecewiseFn, x, ctx: RealContext | None = None) -> Verdict:
    if cond.global_only:
        raise GlobalOnlyCondition(f"{cond} is a global condition; use check_global")
    ctx = ctx or RealContext(fn)
    pa = ctx.point(x)
    v, lim, img, m = pa.value, pa.liminf, ctx.image, ctx.m
    x = pa.x
    note = "one-sided limit reduction"
    if pa.isolated:
        note = "isolated point: the liminf equals f(x)"

    if cond in (C.LSC, C.SLSC):
        bad = [s for s in pa.sides if s.limit < v]
        if bad:
            s = bad[0]
            return Verdict(False, f"{_seq(s, x)}: f(x_n) -> {s.limit} < f({x}) = {v}", _note(cond, note))
        return Verdict(True, None, _note(cond, note))

    if cond in (C.LPC, C.SLPC, C.LQC, C.SLQC):
        strict = cond in (C.LPC, C.SLPC)
        if lim < v and img.meets(lim, strict, v, False):
            w = img.sample_in(lim, strict, v, False)
            return Verdict(False, f"y with f(y) = {w} < f({x}) = {v}, but the liminf at {x} is {lim}", _note(cond, note))
        return Verdict(True, None, _note(cond, note))

    if cond in (C.WLC, C.SWLC, C.PLC, C.SPLC):
        t = dominated_threshold(pa)
        top, top_closed = v, False
        partner = None
        if cond in (C.PLC, C.SPLC):
            partner = img.predecessor(v)
            if partner is not None:
                top = partner
        # failing w: those not admitted by t, i.e. w >= t.value (strict) or w > t.value
        if t.value < top and img.meets(t.value, t.strict, top, top_closed):
            w = img.sample_in(t.value, t.strict, top, top_closed)
            return Verdict(False, f"y with f(y) = {w} < f({x}) = {v}: every neighbourhood has values below {w}", _note(cond, note))
        extra = f"; (y, {x}) with f(y) = {partner} is a jump point" if partner is not None else ""
        return Verdict(True, None, _note(cond, note + extra))

    if cond in (C.SM, C.LM, C.LSCA, C.DSC, C.SDSC):
        strict = cond in (C.DSC, C.SDSC)
        bad = [s for s in _decreasing_sides(pa, strict) if s.limit < v]
        if bad:
            s = bad[0]
            kind = "strictly decreasing" if s.kind == ABOVE else "constant"
            return Verdict(False, f"{_seq(s, x)}: f(x_n) {kind} to {s.limit} < f({x}) = {v}", _note(cond, note))
        return Verdict(True, None, _note(cond, note))

    if cond in (C.RGI, C.ISLSC):
        if v == m or lim > m:
            return Verdict(True, None, _note(cond, note))
        s = next(s for s in pa.sides if s.limit == m)
        return Verdict(False, f"minimizing sequence {_seq(s, x)} with f(x_n) -> {m} = inf f < f({x}) = {v}", _note(cond, note))

    if cond in (C.QRGI, C.SQRGI):
        if v == m:
            return Verdict(True, "x is a minimizer", _note(cond, note))
        if any(s.kind == CONST and s.limit == m for s in pa.sides):
            return Verdict(True, "minimizers accumulate at x", _note(cond, note))
        if lim > m:
            return Verdict(True, None, _note(cond, note))
        s = next(s for s in pa.sides if s.limit == m)
        return Verdict(
            False,
            f"minimizing sequence {_seq(s, x)} converges to {x}, and a neighbourhood of {x} misses argmin",
            _note(cond, note),
        )

    if cond in (C.BLSCA, C.BSLSCA):
        bad = [s for s in _decreasing_sides(pa) if s.limit == m]
        if v == m or not bad:
            cands = [s.limit for s in _decreasing_sides(pa) if s.limit < v]
            a = strictly_between(m, min(cands)) if cands and v != m else POS_INF
            return Verdict(True, f"a={a}", _note(cond, note))
        s = bad[0]
        return Verdict(False, f"for every a > {m}: {_seq(s, x)} has decreasing values <= a tending to {m} < f({x}) = {v}", _note(cond, note))

    if cond in (C.TLC, C.STLC):
        if v == m:
            return Verdict(True, "x is a minimizer", _note(cond, note))
        t = strictly_dominated_threshold(pa)
        w = img.sample_in(NEG_INF, False, t.value, not t.strict)
        if w is not None:
            return Verdict(True, f"y with f(y) = {w}", _note(cond, note))
        s = next((s for s in pa.sides if s.limit == t.value), None)
        wit = f"{_seq(s, x)} is minimizing; no f(y) stays strictly below f(x_n)" if s else None
        return Verdict(False, wit, _note(cond, note))

    if cond in (C.TWLC, C.STWLC):
        t = dominated_threshold(pa)
        w = img.sample_in(NEG_INF, False, t.value, not t.strict)
        if w is not None:
            return Verdict(True, f"y with f(y) = {w}", _note(cond, note))
        s = next((s for s in pa.sides if s.limit == t.value), None)
        wit = f"{_seq(s, x)} has f(x_n) -> inf f = {m}, which is not attained" if s else None
        return Verdict(False, wit, _note(cond, note))

    raise AssertionError(cond)


# --------------------------------------------------------------------------
# Global checks
# --------------------------------------------------------------------------


def _tail_note(fn: PiecewiseFn) -> str:
    if fn.staircase is None:
        return ""
    return f"; integers beyond {fn.staircase.n_max} behave like {fn.staircase.n_max}"


def check_global_real(cond: Condition, fn: PiecewiseFn, ctx: RealContext | None = None) -> Verdict:
    ctx = ctx or RealContext(fn)
    if cond.global_only:
        return _uniform(cond, fn, ctx)
    for x in fn.critical_points():
        ver = check_at_real(cond, fn, x, ctx)
        if not ver.holds:
            return Verdict(False, f"at x={x}: {ver.witness}" if ver.witness else f"at x={x}", ver.note)
    return Verdict(True, None, _note(cond, "holds at all breakpoints and one interior point per piece" + _tail_note(fn)))


def bad_side_limits(fn: PiecewiseFn, ctx: RealContext) -> list[tuple[ExtReal, object, SideProfile]]:
    """Limits l < f(x) along constant or from-above sides, over the critical points."""
    out = []
    for x in fn.critical_points():
        pa = ctx.point(x)
        for s in _decreasing_sides(pa):
            if s.limit < pa.value:
                out.append((s.limit, x, s))
    return out


def uniform_infimum(fn: PiecewiseFn, ctx: RealContext | None = None) -> ExtReal:
    """Infimum of the limits of decreasing approaches that undercut f(x), over all x."""
    ctx = ctx or RealContext(fn)
    vals = [b[0] for b in bad_side_limits(fn, ctx)]
    if fn.staircase is not None:
        # at x = n the right side is constant 1/(n+1) < 1/n; these tend to 0
        vals.append(ExtReal(0))
    return min(vals) if vals else POS_INF


def uniform_violation(fn: PiecewiseFn, a: ExtReal, ctx: RealContext | None = None):
    """A point and approach violating the uniform condition for the threshold a, or None."""
    ctx = ctx or RealContext(fn)
    a = ExtReal.of(a)
    for lim, x, s in bad_side_limits(fn, ctx):
        if lim < a or (s.kind == CONST and lim <= a):
            return x, _seq(s, x)
    st = fn.staircase
    if st is not None and a > 0:
        # smallest n >= start with 1/(n+1) <= a
        n = max(st.start, ceil(1 / a.fraction) - 1) if a.is_finite else st.start
        if fn.in_domain(n):
            return n, f"x_k = {n} + 1/(2k) with constant value 1/{n + 1} <= {a} < f({n}) = 1/{n}"
    return None


def _uniform(cond: Condition, fn: PiecewiseFn, ctx: RealContext) -> Verdict:
    m = ctx.m
    inf_bad = uniform_infimum(fn, ctx)
    note = _note(cond, "threshold between inf f and the lowest undercutting approach")
    if m == POS_INF or inf_bad > m:
        a = POS_INF if inf_bad == POS_INF else strictly_between(m, inf_bad)
        return Verdict(True, f"a={a}", note)
    probe = strictly_between(m, POS_INF) if m.is_finite else ExtReal(0)
    viol = uniform_violation(fn, probe, ctx)
    wit = f"for every a > {m} some decreasing approach undercuts f; e.g. a={probe}: at x={viol[0]}, {viol[1]}" if viol else None
    return Verdict(False, wit, note)


# --------------------------------------------------------------------------
# Hypothesis atoms
# --------------------------------------------------------------------------


def min_seq_at(fn: PiecewiseFn, x, ctx: RealContext | None = None) -> bool:
    ctx = ctx or RealContext(fn)
    return ctx.point(x).liminf == ctx.m
