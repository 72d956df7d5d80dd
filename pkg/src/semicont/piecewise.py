"""Piecewise constant/affine functions on finite unions of real intervals.

All arithmetic is exact.  Near any point, each side of the point lies in a
single piece, so local behaviour is captured by one affine expression per
side; this is what :func:`analyze_point` reports.

An optional staircase region ``(n0 - 1, +inf)`` carries the value ``1/n`` on
``(n - 1, n]``.  It has infinitely many breakpoints; verdicts at the
integers beyond a truncation ``n_max`` are inferred from the one at
``n_max``, which is sound provided no other value of the function lies in
``(0, 1/n_max]`` (checked on construction).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor
from typing import Iterable, Sequence

from .extreal import NEG_INF, POS_INF, ExtReal, Number, parse_extreal, strictly_between


class DomainError(ValueError):
    """Raised for points outside the domain of a function."""


# --------------------------------------------------------------------------
# Intervals
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Interval:
    lo: ExtReal
    hi: ExtReal
    lo_closed: bool
    hi_closed: bool

    def __post_init__(self):
        object.__setattr__(self, "lo", ExtReal.of(self.lo))
        object.__setattr__(self, "hi", ExtReal.of(self.hi))
        if (self.lo_closed and not self.lo.is_finite) or (self.hi_closed and not self.hi.is_finite):
            raise ValueError("infinite endpoints must be open")
        if self.is_empty:
            raise ValueError(f"empty interval {self}")

    @classmethod
    def point(cls, x: Number) -> "Interval":
        return cls(ExtReal.of(x), ExtReal.of(x), True, True)

    @property
    def is_empty(self) -> bool:
        if self.lo < self.hi:
            return False
        return not (self.lo == self.hi and self.lo_closed and self.hi_closed)

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def contains(self, x: Number) -> bool:
        x = ExtReal.of(x)
        above = self.lo < x or (self.lo_closed and x == self.lo)
        below = x < self.hi or (self.hi_closed and x == self.hi)
        return above and below

    def interior_point(self) -> Fraction:
        """Some point strictly inside; only for non-degenerate intervals."""
        if self.is_point:
            raise ValueError("a single point has no interior")
        lo, hi = self.lo, self.hi
        if lo.is_finite and hi.is_finite:
            return (lo.fraction + hi.fraction) / 2
        if lo.is_finite:
            return lo.fraction + 1
        if hi.is_finite:
            return hi.fraction - 1
        return Fraction(0)

    def __str__(self) -> str:
        if self.is_point:
            return "{" + str(self.lo) + "}"
        return f"{'[' if self.lo_closed else '('}{self.lo},{self.hi}{']' if self.hi_closed else ')'}"


_INTERVAL_RE = re.compile(r"^\s*([\[(])\s*([^,]+?)\s*,\s*([^,]+?)\s*([\])])\s*$")
_POINT_RE = re.compile(r"^\s*\{\s*([^,{}]+?)\s*\}\s*$")


def parse_interval(text: str) -> Interval:
    """Read ``"(-1,2]"``, ``"[0,+inf)"`` or a single point ``"{1}"``."""
    m = _POINT_RE.match(text)
    if m:
        return Interval.point(parse_extreal(m.group(1)))
    m = _INTERVAL_RE.match(text)
    if not m:
        raise ValueError(f"not an interval: {text!r}")
    return Interval(parse_extreal(m.group(2)), parse_extreal(m.group(3)), m.group(1) == "[", m.group(4) == "]")


def _lo_key(iv: Interval):
    # Sort by lower endpoint; a closed endpoint starts before an open one.
    return (iv.lo, 0 if iv.lo_closed else 1)


def merge_intervals(intervals: Iterable[Interval]) -> list[Interval]:
    """Union as a sorted list of maximal disjoint intervals."""
    ivs = sorted(intervals, key=_lo_key)
    out: list[Interval] = []
    for iv in ivs:
        if out:
            last = out[-1]
            touches = iv.lo < last.hi or (iv.lo == last.hi and (iv.lo_closed or last.hi_closed))
            if touches:
                if iv.hi > last.hi or (iv.hi == last.hi and iv.hi_closed and not last.hi_closed):
                    out[-1] = Interval(last.lo, iv.hi, last.lo_closed, iv.hi_closed)
                continue
        out.append(iv)
    return out


def _overlap(a: Interval, b: Interval) -> bool:
    lo, lo_c = (a.lo, a.lo_closed) if _lo_key(a) >= _lo_key(b) else (b.lo, b.lo_closed)
    if a.hi < b.hi or (a.hi == b.hi and not a.hi_closed):
        hi, hi_c = a.hi, a.hi_closed
    else:
        hi, hi_c = b.hi, b.hi_closed
    return lo < hi or (lo == hi and lo_c and hi_c)


# --------------------------------------------------------------------------
# Expressions and pieces
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Affine:
    """``slope * x + intercept``; a constant when the slope is zero."""

    slope: Fraction
    intercept: Fraction

    def __post_init__(self):
        object.__setattr__(self, "slope", Fraction(self.slope))
        object.__setattr__(self, "intercept", Fraction(self.intercept))

    @classmethod
    def constant(cls, c: Number) -> "Affine":
        return cls(Fraction(0), ExtReal.of(c).fraction)

    def at(self, x: Fraction) -> Fraction:
        return self.slope * x + self.intercept

    def at_ext(self, x: ExtReal) -> ExtReal:
        if x.is_finite:
            return ExtReal(self.at(x.fraction))
        if self.slope == 0:
            return ExtReal(self.intercept)
        positive = (self.slope > 0) == (x > 0)
        return POS_INF if positive else NEG_INF

    def __str__(self) -> str:
        if self.slope == 0:
            return str(self.intercept)
        if self.intercept == 0:
            return f"{self.slope}*x"
        return f"{self.slope}*x + {self.intercept}"


@dataclass(frozen=True)
class Piece:
    interval: Interval
    expr: Affine


@dataclass(frozen=True)
class Staircase:
    """Value ``1/n`` on ``(n - 1, n]`` for every integer ``n >= start``."""

    start: int = 1
    n_max: int = 50

    def __post_init__(self):
        if self.start < 1:
            raise ValueError("staircase must start at n >= 1")
        if self.n_max < self.start:
            raise ValueError("n_max must be at least the start index")

    @property
    def region(self) -> Interval:
        return Interval(ExtReal(self.start - 1), POS_INF, False, False)

    @staticmethod
    def step_of(x: Fraction) -> int:
        return ceil(x)


# --------------------------------------------------------------------------
# Image descriptions
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Span:
    lo: ExtReal
    hi: ExtReal
    lo_closed: bool
    hi_closed: bool

    def meets(self, lo: ExtReal, lo_closed: bool, hi: ExtReal, hi_closed: bool) -> bool:
        if self.lo > lo or (self.lo == lo and not self.lo_closed):
            a, a_c = self.lo, self.lo_closed
        else:
            a, a_c = lo, lo_closed
        if self.hi < hi or (self.hi == hi and not self.hi_closed):
            b, b_c = self.hi, self.hi_closed
        else:
            b, b_c = hi, hi_closed
        return a < b or (a == b and a_c and b_c)

    def __str__(self) -> str:
        if self.lo == self.hi:
            return "{" + str(self.lo) + "}"
        return f"{'[' if self.lo_closed else '('}{self.lo},{self.hi}{']' if self.hi_closed else ')'}"


@dataclass(frozen=True)
class Jump:
    lo: ExtReal
    hi: ExtReal

    def __str__(self) -> str:
        return f"({self.lo},{self.hi})"


@dataclass(frozen=True)
class JumpList:
    jumps: tuple[Jump, ...]
    complete: bool  # False when a reciprocal family makes the list infinite

    def __iter__(self):
        return iter(self.jumps)

    def __len__(self) -> int:
        return len(self.jumps)


@dataclass(frozen=True)
class ImageDescription:
    """The exact range: disjoint spans plus, optionally, ``{1/n : n >= reciprocal_from}``."""

    spans: tuple[Span, ...]
    reciprocal_from: int | None = None
    listing_limit: int = 50

    # -- family helpers ------------------------------------------------------

    def _family_range(self, lo, lo_closed, hi, hi_closed) -> tuple[int, float | int] | None:
        n0 = self.reciprocal_from
        if n0 is None:
            return None
        # smallest n with 1/n below hi
        if hi == POS_INF:
            first = n0
        elif hi <= 0:
            return None
        else:
            inv = 1 / hi.fraction
            first = ceil(inv) if hi_closed else floor(inv) + 1
        first = max(first, n0)
        # largest n with 1/n above lo
        if lo <= 0:
            last: float | int = float("inf")
        elif lo == POS_INF:
            return None
        else:
            inv = 1 / lo.fraction
            last = floor(inv) if lo_closed else ceil(inv) - 1
        if first > last:
            return None
        return first, last

    def _family_meets(self, lo, lo_closed, hi, hi_closed) -> bool:
        return self._family_range(lo, lo_closed, hi, hi_closed) is not None

    # -- queries --------------------------------------------------------------

    def meets(self, lo: Number, lo_closed: bool, hi: Number, hi_closed: bool) -> bool:
        """Does the image intersect the interval with the given endpoints?"""
        lo, hi = ExtReal.of(lo), ExtReal.of(hi)
        if hi < lo or (hi == lo and not (lo_closed and hi_closed)):
            return False
        return any(s.meets(lo, lo_closed, hi, hi_closed) for s in self.spans) or self._family_meets(
            lo, lo_closed, hi, hi_closed
        )

    def contains(self, v: Number) -> bool:
        v = ExtReal.of(v)
        return self.meets(v, True, v, True)

    def sample_in(self, lo: Number, lo_closed: bool, hi: Number, hi_closed: bool) -> ExtReal | None:
        """The smallest-looking image value in the interval (deterministic), or None."""
        lo, hi = ExtReal.of(lo), ExtReal.of(hi)
        found = []
        for s in self.spans:
            if not s.meets(lo, lo_closed, hi, hi_closed):
                continue
            if s.lo > lo or (s.lo == lo and not s.lo_closed):
                a, a_c = s.lo, s.lo_closed
            else:
                a, a_c = lo, lo_closed
            if s.hi < hi or (s.hi == hi and not s.hi_closed):
                b = s.hi
            else:
                b = hi
            if a_c:
                found.append(a)
            elif b == a:
                found.append(a)
            else:
                found.append(strictly_between(a, b))
        rng = self._family_range(lo, lo_closed, hi, hi_closed)
        if rng is not None:
            last = rng[1]
            n = rng[0] if last == float("inf") else int(last)
            found.append(ExtReal(Fraction(1, n)))
        return min(found) if found else None

    def infimum(self) -> tuple[ExtReal, bool]:
        """Global infimum and whether it is attained."""
        cands = [(s.lo, s.lo_closed) for s in self.spans]
        if self.reciprocal_from is not None:
            cands.append((ExtReal(0), False))
        best = min(c[0] for c in cands)
        return best, any(c[0] == best and c[1] for c in cands)

    def sup_below(self, v: Number) -> tuple[ExtReal, bool] | None:
        """Supremum of image ∩ (-inf, v) and whether it is attained; None if empty."""
        v = ExtReal.of(v)
        cands = []
        for s in self.spans:
            if s.lo < v:
                if s.hi < v:
                    cands.append((s.hi, s.hi_closed))
                else:
                    cands.append((v, False))
        n0 = self.reciprocal_from
        if n0 is not None and v > 0:
            top = Fraction(1, n0)
            if v > top:
                cands.append((ExtReal(top), True))
            else:
                n = floor(1 / v.fraction) + 1
                cands.append((ExtReal(Fraction(1, n)), True))
        if not cands:
            return None
        best = max(c[0] for c in cands)
        return best, any(c[0] == best and c[1] for c in cands)

    def inf_above(self, v: Number) -> tuple[ExtReal, bool] | None:
        """Infimum of image ∩ (v, +inf) and whether it is attained; None if empty."""
        v = ExtReal.of(v)
        cands = []
        for s in self.spans:
            if s.hi > v:
                if s.lo > v:
                    cands.append((s.lo, s.lo_closed))
                else:
                    cands.append((v, False))
        n0 = self.reciprocal_from
        if n0 is not None and v < Fraction(1, n0):
            if v < 0:
                cands.append((ExtReal(0), False))
            elif v == 0:
                cands.append((ExtReal(0), False))
            else:
                n = ceil(1 / v.fraction) - 1
                cands.append((ExtReal(Fraction(1, n)), True))
        if not cands:
            return None
        best = min(c[0] for c in cands)
        return best, any(c[0] == best and c[1] for c in cands)

    def predecessor(self, v: Number) -> ExtReal | None:
        """The largest image value below ``v`` when it exists (then it forms a jump with v)."""
        sb = self.sup_below(v)
        if sb is None or not sb[1]:
            return None
        return sb[0]

    def successor(self, v: Number) -> ExtReal | None:
        ia = self.inf_above(v)
        if ia is None or not ia[1]:
            return None
        return ia[0]

    def has_jump_at_value(self, v: Number) -> bool:
        """Is ``v`` an endpoint of some jump?  (v must be an image value.)"""
        return self.predecessor(v) is not None or self.successor(v) is not None

    def jumps(self) -> JumpList:
        """Maximal gaps whose endpoints are both image values.

        With a reciprocal family the jumps are infinite; the listing keeps the
        ones above ``1/listing_limit`` and reports itself incomplete.
        """
        atoms: list[Span] = list(self.spans)
        n0 = self.reciprocal_from
        if n0 is not None:
            limit = max(self.listing_limit, n0)
            for n in range(n0, limit + 2):
                q = ExtReal(Fraction(1, n))
                atoms.append(Span(q, q, True, True))
        atoms.sort(key=lambda s: (s.lo, 0 if s.lo_closed else 1))
        found = []
        for a, b in zip(atoms, atoms[1:]):
            if not (a.hi_closed and b.lo_closed and a.hi < b.lo):
                continue
            if self.meets(a.hi, False, b.lo, False):
                continue
            found.append(Jump(a.hi, b.lo))
        found = sorted(set(found), key=lambda j: j.lo)
        return JumpList(tuple(found), complete=n0 is None)

    def __str__(self) -> str:
        parts = [str(s) for s in self.spans]
        if self.reciprocal_from is not None:
            parts.append(f"{{1/n : n >= {self.reciprocal_from}}}")
        return " ∪ ".join(parts)


def _spans_from(intervals: Iterable[Interval]) -> tuple[Span, ...]:
    merged = merge_intervals(intervals)
    return tuple(Span(iv.lo, iv.hi, iv.lo_closed, iv.hi_closed) for iv in merged)


# --------------------------------------------------------------------------
# The function
# --------------------------------------------------------------------------


class SideKind:
    CONSTANT = "constant"
    FROM_ABOVE = "from-above"
    FROM_BELOW = "from-below"


@dataclass(frozen=True)
class SideProfile:
    """Behaviour of f on one side of a point, arbitrarily close to it.

    ``kind`` says how the values approach the side limit: constant, strictly
    decreasing towards it (from above) or strictly increasing (from below).
    ``reach`` is a distance such that the whole one-sided interval of that
    length lies in the same piece.
    """

    side: str  # "left" or "right"
    limit: ExtReal
    kind: str
    expr: Affine
    reach: Fraction

    def approach_sequence(self, x: Fraction) -> str:
        """Human-readable sequence approaching x along this side."""
        d = min(self.reach, Fraction(1))
        sign = "-" if self.side == "left" else "+"
        step = "1/n" if d == 1 else f"{d}/n"
        return f"x_n = {x} {sign} {step}"

    def point_at(self, x: Fraction, n: int) -> Fraction:
        d = min(self.reach, Fraction(1))
        return x - d / n if self.side == "left" else x + d / n


@dataclass(frozen=True)
class PointAnalysis:
    x: Fraction
    value: ExtReal
    left: SideProfile | None
    right: SideProfile | None
    liminf: ExtReal
    liminf_attained: bool

    @property
    def sides(self) -> tuple[SideProfile, ...]:
        return tuple(s for s in (self.left, self.right) if s is not None)

    @property
    def left_liminf(self) -> ExtReal:
        return self.left.limit if self.left else POS_INF

    @property
    def right_liminf(self) -> ExtReal:
        return self.right.limit if self.right else POS_INF

    @property
    def isolated(self) -> bool:
        return self.left is None and self.right is None


@dataclass(frozen=True)
class PiecewiseFn:
    domain: tuple[Interval, ...]
    pieces: tuple[Piece, ...]
    staircase: Staircase | None = None
    name: str = ""
    _image: ImageDescription = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "domain", tuple(merge_intervals(self.domain)))
        object.__setattr__(self, "pieces", tuple(sorted(self.pieces, key=lambda p: _lo_key(p.interval))))
        if not self.domain:
            raise ValueError("empty domain")
        regions = [p.interval for p in self.pieces]
        if self.staircase is not None:
            regions.append(self.staircase.region)
        regions.sort(key=_lo_key)
        for a, b in zip(regions, regions[1:]):
            if _overlap(a, b):
                raise ValueError(f"pieces {a} and {b} overlap")
        covered = merge_intervals(regions)
        if [str(i) for i in covered] != [str(i) for i in self.domain]:
            raise ValueError(
                "pieces do not partition the domain: pieces cover "
                + " ∪ ".join(map(str, covered))
                + ", domain is "
                + " ∪ ".join(map(str, self.domain))
            )
        object.__setattr__(self, "_image", self._compute_image())
        if self.staircase is not None:
            cutoff = ExtReal(Fraction(1, self.staircase.n_max))
            for span in self._piece_spans():
                if span.meets(ExtReal(0), False, cutoff, True):
                    raise ValueError("piece values fall in (0, 1/n_max]; raise the staircase n_max")

    # -- evaluation -----------------------------------------------------------

    def in_domain(self, x: Number) -> bool:
        return any(iv.contains(x) for iv in self.domain)

    def _piece_containing(self, x: Fraction) -> Piece | None:
        for p in self.pieces:
            if p.interval.contains(x):
                return p
        return None

    def _in_staircase(self, x: Fraction) -> bool:
        return self.staircase is not None and self.staircase.region.contains(x)

    def __call__(self, x: Number) -> ExtReal:
        return self.value(x)

    def value(self, x: Number) -> ExtReal:
        x = _as_fraction(x)
        p = self._piece_containing(x)
        if p is not None:
            return ExtReal(p.expr.at(x))
        if self._in_staircase(x):
            return ExtReal(Fraction(1, Staircase.step_of(x)))
        raise DomainError(f"{x} is outside the domain")

    def _side(self, x: Fraction, side: str) -> SideProfile | None:
        left = side == "left"
        for p in self.pieces:
            iv = p.interval
            if iv.is_point:
                continue
            if left and iv.lo < x <= iv.hi:
                return _profile(side, x, p.expr, _gap(iv.lo, x))
            if not left and iv.lo <= x < iv.hi:
                return _profile(side, x, p.expr, _gap(x, iv.hi))
        st = self.staircase
        if st is not None:
            lo = ExtReal(st.start - 1)
            if left and x > lo:
                n = Staircase.step_of(x)
                return _profile(side, x, Affine.constant(Fraction(1, n)), x - max(Fraction(n - 1), lo.fraction))
            if not left and x >= lo:
                n = floor(x) + 1
                return _profile(side, x, Affine.constant(Fraction(1, n)), Fraction(n) - x)
        return None

    # -- structure ------------------------------------------------------------

    def _piece_spans(self) -> list[Span]:
        out = []
        for p in self.pieces:
            iv, e = p.interval, p.expr
            a, b = e.at_ext(iv.lo), e.at_ext(iv.hi)
            if e.slope == 0:
                out.append(Span(a, a, True, True))
            elif e.slope > 0:
                out.append(Span(a, b, iv.lo_closed, iv.hi_closed))
            else:
                out.append(Span(b, a, iv.hi_closed, iv.lo_closed))
        return out

    def _compute_image(self) -> ImageDescription:
        spans = self._piece_spans()
        ivs = []
        for s in spans:
            if s.lo == s.hi:
                ivs.append(Interval.point(s.lo))
            else:
                ivs.append(Interval(s.lo, s.hi, s.lo_closed, s.hi_closed))
        rec = self.staircase.start if self.staircase else None
        limit = self.staircase.n_max if self.staircase else 50
        return ImageDescription(_spans_from(ivs), rec, limit)

    @property
    def image(self) -> ImageDescription:
        return self._image

    def breakpoints(self) -> list[Fraction]:
        """Finite endpoints of pieces and domain components that lie in the domain."""
        pts = set()
        for p in self.pieces:
            for e in (p.interval.lo, p.interval.hi):
                if e.is_finite and self.in_domain(e.fraction):
                    pts.add(e.fraction)
        for iv in self.domain:
            for e in (iv.lo, iv.hi):
                if e.is_finite and self.in_domain(e.fraction):
                    pts.add(e.fraction)
        st = self.staircase
        if st is not None:
            for n in range(st.start - 1, st.n_max + 1):
                if self.in_domain(n):
                    pts.add(Fraction(n))
        return sorted(pts)

    def interior_samples(self) -> list[Fraction]:
        """One point strictly inside each non-degenerate piece (and staircase step)."""
        out = [p.interval.interior_point() for p in self.pieces if not p.interval.is_point]
        st = self.staircase
        if st is not None:
            out += [Fraction(2 * n - 1, 2) for n in range(st.start, st.n_max + 1)]
        return sorted(set(out))

    def critical_points(self) -> list[Fraction]:
        return sorted(set(self.breakpoints()) | set(self.interior_samples()))

    def describe(self) -> str:
        parts = [f"{p.expr} on {p.interval}" for p in self.pieces]
        if self.staircase:
            parts.append(f"1/n on (n-1,n] for n >= {self.staircase.start}")
        return "; ".join(parts)


def _profile(side: str, x: Fraction, expr: Affine, reach: Fraction) -> SideProfile:
    limit = ExtReal(expr.at(x))
    if expr.slope == 0:
        kind = SideKind.CONSTANT
    elif (expr.slope < 0) == (side == "left"):
        # left side, negative slope: values fall as y rises to x
        kind = SideKind.FROM_ABOVE
    else:
        kind = SideKind.FROM_BELOW
    return SideProfile(side, limit, kind, expr, reach)


def _gap(a, b) -> Fraction:
    # Distance b - a, with an unbounded gap capped at 1 (only used for witness points).
    a, b = ExtReal.of(a), ExtReal.of(b)
    if a.is_finite and b.is_finite:
        return b.fraction - a.fraction
    return Fraction(1)


def _as_fraction(x: Number) -> Fraction:
    if isinstance(x, ExtReal):
        return x.fraction
    if isinstance(x, str):
        return parse_extreal(x).fraction
    return Fraction(x)


# --------------------------------------------------------------------------
# Operations
# --------------------------------------------------------------------------


def analyze_point(fn: PiecewiseFn, x: Number) -> PointAnalysis:
    """One-sided limits, approach profiles and the (non-punctured) liminf at x."""
    x = _as_fraction(x)
    if not fn.in_domain(x):
        raise DomainError(f"{x} is outside the domain")
    v = fn.value(x)
    left, right = fn._side(x, "left"), fn._side(x, "right")
    sides = [s for s in (left, right) if s is not None]
    lim = min([v] + [s.limit for s in sides])
    # Values approaching from below stay under their limit on every
    # neighbourhood, so that limit is never the infimum of a neighbourhood.
    attained = not any(s.kind == SideKind.FROM_BELOW and s.limit == lim for s in sides)
    return PointAnalysis(x, v, left, right, lim, attained)


def image_of(fn: PiecewiseFn) -> ImageDescription:
    return fn.image


def jumps_of(fn: PiecewiseFn) -> JumpList:
    return fn.image.jumps()


def min_seq_converging_to(fn: PiecewiseFn, x: Number) -> bool:
    """Whether some minimizing sequence converges to x.

    On the real line this is exactly ``liminf_{y->x} f(y) = inf f``.
    """
    pa = analyze_point(fn, x)
    return pa.liminf == fn.image.infimum()[0]


def piecewise(domain: Sequence[str] | str, pieces: Sequence[tuple[str, Number] | tuple[str, Number, Number]],
              staircase: Staircase | None = None, name: str = "") -> PiecewiseFn:
    """Convenience constructor: pieces are (interval, c) or (interval, slope, intercept)."""
    if isinstance(domain, str):
        domain = [domain]
    built = []
    for spec in pieces:
        iv = parse_interval(spec[0])
        if len(spec) == 2:
            expr = Affine.constant(spec[1])
        else:
            expr = Affine(ExtReal.of(spec[1]).fraction, ExtReal.of(spec[2]).fraction)
        built.append(Piece(iv, expr))
    return PiecewiseFn(tuple(parse_interval(d) for d in domain), tuple(built), staircase, name)

