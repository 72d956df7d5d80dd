"""Exact extended reals and finitely presented value sequences.

Finite values are :class:`fractions.Fraction`; nothing in this module ever
rounds.  ``ExtReal`` adds the two infinities with the usual total order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from math import floor
from typing import Iterable, Iterator, Sequence, Union

Number = Union[int, Fraction, str, "ExtReal"]


@total_ordering
class ExtReal:
    """A value in R ∪ {-inf, +inf}; immutable and hashable."""

    __slots__ = ("_inf", "_q")

    def __init__(self, value: Union[int, Fraction, str] = 0):
        if isinstance(value, str):
            other = parse_extreal(value)
            self._inf, self._q = other._inf, other._q
            return
        if isinstance(value, float):
            raise TypeError("floats are not accepted; use a Fraction or a string")
        self._inf = 0
        self._q = Fraction(value)

    @classmethod
    def _infinity(cls, sign: int) -> "ExtReal":
        obj = cls.__new__(cls)
        obj._inf = sign
        obj._q = Fraction(0)
        return obj

    @classmethod
    def of(cls, value: Number) -> "ExtReal":
        if isinstance(value, ExtReal):
            return value
        return cls(value)

    @property
    def is_finite(self) -> bool:
        return self._inf == 0

    @property
    def fraction(self) -> Fraction:
        if self._inf:
            raise ValueError(f"{self} has no finite value")
        return self._q

    def _key(self) -> tuple[int, Fraction]:
        return (self._inf, self._q)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExtReal):
            try:
                other = ExtReal.of(other)  # type: ignore[arg-type]
            except (TypeError, ValueError):
                return NotImplemented
        return self._key() == other._key()

    def __lt__(self, other: Number) -> bool:
        return self._key() < ExtReal.of(other)._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __neg__(self) -> "ExtReal":
        if self._inf:
            return ExtReal._infinity(-self._inf)
        return ExtReal(-self._q)

    def __add__(self, other: Number) -> "ExtReal":
        other = ExtReal.of(other)
        if self._inf and other._inf and self._inf != other._inf:
            raise ArithmeticError("-inf + inf is undefined")
        if self._inf:
            return self
        if other._inf:
            return other
        return ExtReal(self._q + other._q)

    __radd__ = __add__

    def __sub__(self, other: Number) -> "ExtReal":
        return self + (-ExtReal.of(other))

    def __rsub__(self, other: Number) -> "ExtReal":
        return ExtReal.of(other) - self

    def __repr__(self) -> str:
        return f"ExtReal({str(self)!r})"

    def __str__(self) -> str:
        if self._inf < 0:
            return "-inf"
        if self._inf > 0:
            return "+inf"
        return str(self._q)


NEG_INF = ExtReal._infinity(-1)
POS_INF = ExtReal._infinity(1)


def parse_extreal(text: Union[str, int, Fraction, ExtReal]) -> ExtReal:
    """Parse ``"p/q"``, a decimal string, an integer, or ``"-inf"``/``"+inf"``."""
    if isinstance(text, ExtReal):
        return text
    if isinstance(text, (int, Fraction)) and not isinstance(text, bool):
        return ExtReal(text)
    if not isinstance(text, str):
        raise TypeError(f"cannot read an extended real from {text!r}")
    s = text.strip().lower()
    if s in ("-inf", "-infinity", "-oo"):
        return NEG_INF
    if s in ("+inf", "inf", "+infinity", "infinity", "+oo", "oo"):
        return POS_INF
    try:
        # Fraction accepts "p/q" and decimal strings exactly.
        return ExtReal(Fraction(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not an extended-real literal: {text!r}") from exc


def compare(a: Number, b: Number) -> int:
    """Return -1, 0 or 1 as ``a`` is below, equal to, or above ``b``."""
    a, b = ExtReal.of(a), ExtReal.of(b)
    return (a > b) - (a < b)


def inf_of(values: Iterable[Number]) -> ExtReal:
    """Least element of a nonempty finite set."""
    vals = [ExtReal.of(v) for v in values]
    if not vals:
        raise ValueError("inf_of needs a nonempty set; use inf_or_top for the +inf convention")
    return min(vals)


def inf_or_top(values: Iterable[Number]) -> ExtReal:
    """Infimum with the empty-set convention inf(∅) = +inf."""
    vals = [ExtReal.of(v) for v in values]
    return min(vals) if vals else POS_INF


def sup_or_bottom(values: Iterable[Number]) -> ExtReal:
    vals = [ExtReal.of(v) for v in values]
    return max(vals) if vals else NEG_INF


def strictly_between(lo: ExtReal, hi: ExtReal) -> ExtReal:
    """Some value ``t`` with ``lo < t < hi``; the midpoint when both are finite."""
    if not lo < hi:
        raise ValueError(f"empty interval ({lo}, {hi})")
    if lo.is_finite and hi.is_finite:
        return ExtReal((lo.fraction + hi.fraction) / 2)
    if lo.is_finite:
        return ExtReal(lo.fraction + 1)
    if hi.is_finite:
        return ExtReal(hi.fraction - 1)
    return ExtReal(0)


def is_decreasing(values: Sequence[Number]) -> bool:
    """Non-strict: every later term is <= every earlier one."""
    vals = [ExtReal.of(v) for v in values]
    return all(b <= a for a, b in zip(vals, vals[1:]))


def is_strictly_decreasing(values: Sequence[Number]) -> bool:
    vals = [ExtReal.of(v) for v in values]
    return all(b < a for a, b in zip(vals, vals[1:]))


# --------------------------------------------------------------------------
# Value sequences
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Hyperbola:
    """The family ``k -> a + b / (c*k + d)`` for k = 0, 1, 2, ...

    ``c`` and ``d`` must be positive so every denominator is positive; the
    family tends to ``a`` (from above when b > 0, from below when b < 0).
    """

    a: Fraction
    b: Fraction
    c: Fraction = Fraction(1)
    d: Fraction = Fraction(1)

    def __post_init__(self):
        for name in ("a", "b", "c", "d"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.c <= 0 or self.d <= 0:
            raise ValueError("hyperbola needs c > 0 and d > 0")

    def at(self, k: int) -> Fraction:
        return self.a + self.b / (self.c * k + self.d)

    def shifted(self) -> "Hyperbola":
        """The family k -> self.at(k + 1)."""
        return Hyperbola(self.a, self.b, self.c, self.c + self.d)


def _nonneg_on_naturals(alpha: Fraction, beta: Fraction, gamma: Fraction, strict: bool) -> bool:
    """Decide ``alpha*k^2 + beta*k + gamma >= 0`` (or ``> 0``) for all integers k >= 0."""

    def ok(k: int) -> bool:
        p = alpha * k * k + beta * k + gamma
        return p > 0 if strict else p >= 0

    if alpha < 0:
        return False
    if alpha == 0:
        if beta < 0:
            return False
        return ok(0)
    vertex = -beta / (2 * alpha)
    candidates = {0}
    if vertex > 0:
        candidates |= {floor(vertex), floor(vertex) + 1}
    return all(ok(k) for k in candidates)


def _dominates(h1: Hyperbola, h2: Hyperbola, strict: bool) -> bool:
    """Decide h1(k) >= h2(k) (or >) for every k >= 0."""
    # Multiply through by the positive denominators (c1 k + d1)(c2 k + d2).
    da = h1.a - h2.a
    alpha = da * h1.c * h2.c
    beta = da * (h1.c * h2.d + h1.d * h2.c) + h1.b * h2.c - h2.b * h1.c
    gamma = da * h1.d * h2.d + h1.b * h2.d - h2.b * h1.d
    return _nonneg_on_naturals(alpha, beta, gamma, strict)


@dataclass(frozen=True)
class ValueSequence:
    """An infinite sequence of extended reals with a finite presentation.

    The terms are ``prefix`` followed by a tail that is either a repeated
    ``cycle`` (eventually periodic; eventually constant when the cycle has
    length one) or a round-robin interleaving of hyperbola ``families``.
    """

    prefix: tuple[ExtReal, ...] = ()
    cycle: tuple[ExtReal, ...] = ()
    families: tuple[Hyperbola, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(ExtReal.of(v) for v in self.prefix))
        object.__setattr__(self, "cycle", tuple(ExtReal.of(v) for v in self.cycle))
        object.__setattr__(self, "families", tuple(self.families))
        if bool(self.cycle) == bool(self.families):
            raise ValueError("exactly one of cycle or families must be given")

    @classmethod
    def constant(cls, value: Number) -> "ValueSequence":
        return cls(cycle=(ExtReal.of(value),))

    @classmethod
    def periodic(cls, prefix: Iterable[Number], cycle: Iterable[Number]) -> "ValueSequence":
        return cls(prefix=tuple(prefix), cycle=tuple(cycle))

    @classmethod
    def interleaved(cls, prefix: Iterable[Number], families: Iterable[Hyperbola]) -> "ValueSequence":
        return cls(prefix=tuple(prefix), families=tuple(families))

    def term(self, n: int) -> ExtReal:
        if n < 0:
            raise IndexError(n)
        if n < len(self.prefix):
            return self.prefix[n]
        m = n - len(self.prefix)
        if self.cycle:
            return self.cycle[m % len(self.cycle)]
        r = len(self.families)
        return ExtReal(self.families[m % r].at(m // r))

    def take(self, count: int) -> list[ExtReal]:
        return [self.term(n) for n in range(count)]

    def __iter__(self) -> Iterator[ExtReal]:
        n = 0
        while True:
            yield self.term(n)
            n += 1

    # -- limits -------------------------------------------------------------

    def limit(self) -> ExtReal | None:
        """The limit, or ``None`` when the sequence does not converge."""
        tails = self._tail_limits()
        return tails[0] if len(set(tails)) == 1 else None

    def liminf(self) -> ExtReal:
        return min(self._tail_limits())

    def _tail_limits(self) -> list[ExtReal]:
        if self.cycle:
            return list(self.cycle)
        return [ExtReal(h.a) for h in self.families]

    def infimum(self) -> ExtReal:
        """Exact infimum over all terms."""
        if self.cycle:
            return min(self.prefix + self.cycle)
        cands = list(self.prefix)
        for h in self.families:
            # b > 0 decreases towards a; b <= 0 is smallest at k = 0.
            cands.append(ExtReal(h.a) if h.b > 0 else ExtReal(h.at(0)))
        return min(cands)

    def converges_to_infimum(self) -> bool:
        lim = self.limit()
        return lim is not None and lim == self.infimum()

    # -- monotonicity -------------------------------------------------------

    def is_decreasing(self) -> bool:
        return self._monotone(strict=False)

    def is_strictly_decreasing(self) -> bool:
        return self._monotone(strict=True)

    def _monotone(self, strict: bool) -> bool:
        check = is_strictly_decreasing if strict else is_decreasing
        if self.cycle:
            if strict:
                # A periodic tail repeats a value, so it is never strict.
                return False
            if len(set(self.cycle)) != 1:
                return False
            return check(list(self.prefix) + [self.cycle[0]])
        first = ExtReal(self.families[0].at(0))
        if not check(list(self.prefix) + [first]):
            return False
        fams = self.families
        r = len(fams)
        for j in range(r):
            nxt = fams[j + 1] if j + 1 < r else fams[0].shifted()
            if not _dominates(fams[j], nxt, strict):
                return False
        return True


class PreconditionViolation(ValueError):
    """Raised when a sequence does not converge to its own infimum."""


@dataclass(frozen=True)
class EventuallyConstant:
    """All terms from ``start`` on equal ``value``, the infimum."""

    start: int
    value: ExtReal


@dataclass(frozen=True)
class DecreasingSubsequence:
    """A strictly increasing index map with strictly decreasing values.

    Indices are produced lazily by a greedy scan: start at the first term
    above the infimum, then repeatedly take the next index whose value is
    strictly below the last one taken.
    """

    sequence: ValueSequence

    def indices(self, count: int) -> list[int]:
        seq = self.sequence
        floor_value = seq.infimum()
        out: list[int] = []
        n = 0
        last: ExtReal | None = None
        while len(out) < count:
            val = seq.term(n)
            if val > floor_value and (last is None or val < last):
                out.append(n)
                last = val
            n += 1
        return out

    def values(self, count: int) -> list[ExtReal]:
        return [self.sequence.term(i) for i in self.indices(count)]


def extract_decreasing(seq: ValueSequence) -> EventuallyConstant | DecreasingSubsequence:
    """Split a sequence converging to its infimum into the two possible cases.

    Either the sequence is eventually constant at its infimum, or it has a
    strictly decreasing subsequence (returned as a lazy index map).
    """
    if not seq.converges_to_infimum():
        raise PreconditionViolation("sequence does not converge to its infimum")
    inf_value = seq.infimum()
    if seq.cycle:
        # Converging periodic tail means a constant cycle equal to the infimum.
        start = len(seq.prefix)
        while start > 0 and seq.prefix[start - 1] == inf_value:
            start -= 1
        return EventuallyConstant(start, inf_value)
    if all(h.b == 0 for h in seq.families):
        start = len(seq.prefix)
        while start > 0 and seq.prefix[start - 1] == inf_value:
            start -= 1
        return EventuallyConstant(start, inf_value)
    return DecreasingSubsequence(seq)
