"""Finite topological spaces and functions on them.

Subsets of the point set are handled internally as bitmasks over the point
index; the public surface speaks in frozensets of point names.

Every finite space is first countable: the minimal open neighbourhood of a
point (the intersection of all opens containing it) is a one-element
neighbourhood base.  Hence ``sup_{O in N(x)} inf_O f`` is attained at the
minimal neighbourhood, and a sequence converges to ``x`` exactly when it is
eventually inside that neighbourhood.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator, Mapping, Sequence

from .extreal import ExtReal, Number

DEFAULT_LABELS = "abcde"


class UnknownPoint(KeyError):
    pass


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    message: str = ""
    pair: tuple[frozenset, frozenset] | None = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class FiniteSpace:
    """A finite point set with a family of open sets."""

    points: tuple[str, ...]
    opens: frozenset[frozenset[str]]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)
    _masks: tuple = field(init=False, repr=False, compare=False, hash=False)
    _nbhd: tuple = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        points = tuple(self.points)
        if len(set(points)) != len(points):
            raise ValueError("duplicate point names")
        object.__setattr__(self, "points", points)
        opens = frozenset(frozenset(o) for o in self.opens)
        object.__setattr__(self, "opens", opens)
        index = {p: i for i, p in enumerate(points)}
        object.__setattr__(self, "_index", index)
        masks = []
        for o in opens:
            unknown = set(o) - set(index)
            if unknown:
                raise ValueError(f"open set mentions unknown points {sorted(unknown)}")
            masks.append(sum(1 << index[p] for p in o))
        masks.sort(key=lambda m: (_popcount(m), m))
        object.__setattr__(self, "_masks", tuple(masks))
        full = (1 << len(points)) - 1
        nbhd = []
        for i in range(len(points)):
            acc = full
            for m in masks:
                if m >> i & 1:
                    acc &= m
            nbhd.append(acc)
        object.__setattr__(self, "_nbhd", tuple(nbhd))

    @classmethod
    def from_masks(cls, n: int, masks: Iterable[int], labels: Sequence[str] | None = None) -> "FiniteSpace":
        labels = tuple(labels or DEFAULT_LABELS[:n])
        opens = [frozenset(labels[i] for i in range(n) if m >> i & 1) for m in masks]
        return cls(labels, frozenset(opens))

    @property
    def size(self) -> int:
        return len(self.points)

    @property
    def open_masks(self) -> tuple[int, ...]:
        return self._masks

    def index(self, x: str) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise UnknownPoint(x) from None

    def names(self, mask: int) -> frozenset[str]:
        return frozenset(p for i, p in enumerate(self.points) if mask >> i & 1)

    def mask(self, subset: Iterable[str]) -> int:
        return sum(1 << self.index(p) for p in subset)

    def nbhd_mask(self, i: int) -> int:
        return self._nbhd[i]

    def opens_containing(self, x: str) -> list[frozenset[str]]:
        i = self.index(x)
        return [self.names(m) for m in self._masks if m >> i & 1]

    def is_open(self, subset: Iterable[str]) -> bool:
        return self.mask(subset) in set(self._masks)

    def is_closed(self, subset: Iterable[str]) -> bool:
        full = (1 << self.size) - 1
        return (full & ~self.mask(subset)) in set(self._masks)

    def closure(self, subset: Iterable[str]) -> frozenset[str]:
        """Points whose every open neighbourhood meets ``subset``."""
        target = self.mask(subset)
        return frozenset(p for i, p in enumerate(self.points) if self._nbhd[i] & target)

    def canonical_key(self) -> tuple[int, ...]:
        return self._masks

    def __str__(self) -> str:
        fam = ", ".join("{" + ",".join(sorted(self.names(m), key=self.index)) + "}" for m in self._masks)
        return f"FiniteSpace(points=[{','.join(self.points)}], opens=[{fam}])"


def validate(space: FiniteSpace) -> ValidationReport:
    """Check the topology axioms; report the first failing pair of opens."""
    masks = space.open_masks
    present = set(masks)
    full = (1 << space.size) - 1
    if 0 not in present:
        return ValidationReport(False, "the empty set is not open")
    if full not in present:
        return ValidationReport(False, "the whole space is not open")
    for i, a in enumerate(masks):
        for b in masks[i + 1:]:
            pair = (space.names(a), space.names(b))
            if a | b not in present:
                return ValidationReport(False, f"union of {_fmt(space, a)} and {_fmt(space, b)} is not open", pair)
            if a & b not in present:
                return ValidationReport(False, f"intersection of {_fmt(space, a)} and {_fmt(space, b)} is not open", pair)
    return ValidationReport(True, "ok")


def _fmt(space: FiniteSpace, mask: int) -> str:
    return "{" + ",".join(p for i, p in enumerate(space.points) if mask >> i & 1) + "}"


def min_nbhd(space: FiniteSpace, x: str) -> frozenset[str]:
    """Intersection of all opens containing ``x``."""
    return space.names(space.nbhd_mask(space.index(x)))


# --------------------------------------------------------------------------
# Point sequences
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class PointSequence:
    """An eventually periodic sequence of points: ``prefix`` then ``cycle`` repeated."""

    prefix: tuple[str, ...]
    cycle: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))
        object.__setattr__(self, "cycle", tuple(self.cycle))
        if not self.cycle:
            raise ValueError("cycle must be nonempty")

    @classmethod
    def constant(cls, x: str) -> "PointSequence":
        return cls((), (x,))

    def term(self, n: int) -> str:
        if n < len(self.prefix):
            return self.prefix[n]
        return self.cycle[(n - len(self.prefix)) % len(self.cycle)]

    @property
    def tail_set(self) -> frozenset[str]:
        return frozenset(self.cycle)

    def __str__(self) -> str:
        pre = ",".join(self.prefix)
        cyc = ",".join(self.cycle)
        return f"({pre + ';' if pre else ''}({cyc})^inf)"


def converges(space: FiniteSpace, seq: PointSequence, x: str) -> bool:
    """True iff the sequence is eventually inside the minimal neighbourhood of ``x``."""
    nb = space.nbhd_mask(space.index(x))
    return space.mask(seq.tail_set) & ~nb == 0


def converges_direct(space: FiniteSpace, seq: PointSequence, x: str) -> bool:
    """Same question answered by quantifying over every open set containing ``x``."""
    tail = space.mask(seq.tail_set)
    i = space.index(x)
    return all(tail & ~o == 0 for o in space.open_masks if o >> i & 1)


# --------------------------------------------------------------------------
# Models
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class FiniteModel:
    """A function from a finite space into the extended reals."""

    space: FiniteSpace
    values: tuple[ExtReal, ...]

    def __post_init__(self):
        vals = self.values
        if isinstance(vals, Mapping):
            missing = [p for p in self.space.points if p not in vals]
            if missing:
                raise ValueError(f"no value given for points {missing}")
            extra = set(vals) - set(self.space.points)
            if extra:
                raise ValueError(f"values given for unknown points {sorted(extra)}")
            vals = tuple(ExtReal.of(vals[p]) for p in self.space.points)
        else:
            vals = tuple(ExtReal.of(v) for v in vals)
        if len(vals) != self.space.size:
            raise ValueError("values must be total on the points")
        object.__setattr__(self, "values", vals)

    @classmethod
    def of(cls, space: FiniteSpace, values: Mapping[str, Number] | Sequence[Number]) -> "FiniteModel":
        return cls(space, values)  # type: ignore[arg-type]

    def f(self, x: str) -> ExtReal:
        return self.values[self.space.index(x)]

    def infimum(self) -> ExtReal:
        return min(self.values)

    def argmin(self) -> frozenset[str]:
        m = self.infimum()
        return frozenset(p for p, v in zip(self.space.points, self.values) if v == m)

    def image(self) -> list[ExtReal]:
        return sorted(set(self.values))

    def level_set(self, lam: Number) -> frozenset[str]:
        lam = ExtReal.of(lam)
        return frozenset(p for p, v in zip(self.space.points, self.values) if v <= lam)

    def __str__(self) -> str:
        vals = ", ".join(f"{p}={v}" for p, v in zip(self.space.points, self.values))
        return f"{self.space} f: {vals}"


def liminf_at(model: FiniteModel, x: str) -> ExtReal:
    """``sup_{O in N(x)} inf_O f``, the infimum over the minimal neighbourhood.

    The neighbourhood includes ``x`` itself, so the result never exceeds f(x).
    """
    space = model.space
    nb = space.nbhd_mask(space.index(x))
    return min(v for i, v in enumerate(model.values) if nb >> i & 1)


def liminf_direct(model: FiniteModel, x: str) -> ExtReal:
    """The same quantity evaluated as a sup over all open neighbourhoods."""
    space = model.space
    i = space.index(x)
    best = None
    for o in space.open_masks:
        if o >> i & 1:
            inner = min(v for j, v in enumerate(model.values) if o >> j & 1)
            best = inner if best is None or inner > best else best
    assert best is not None
    return best


# --------------------------------------------------------------------------
# Enumeration
# --------------------------------------------------------------------------

KNOWN_COUNTS = {1: 1, 2: 4, 3: 29, 4: 355, 5: 6942}


def _preorders(n: int) -> list[tuple[int, ...]]:
    """All preorders on range(n) as up-set masks: up[i] = {j : i <= j}.

    Built one point at a time: the new point p chooses which old points lie
    below it (a down-closed set D) and above it (an up-closed set U) subject
    to transitivity through p, i.e. every d in D is below every u in U.
    """
    if n == 0:
        return [()]
    out = []
    for up in _preorders(n - 1):
        k = n - 1
        down_of = [sum(1 << i for i in range(k) if up[i] >> j & 1) for j in range(k)]
        p = 1 << k
        for dmask in range(1 << k):
            # D down-closed: everything below a member of D is in D.
            if any(dmask >> j & 1 and down_of[j] & ~dmask for j in range(k)):
                continue
            for umask in range(1 << k):
                if any(umask >> j & 1 and up[j] & ~umask for j in range(k)):
                    continue
                if any(dmask >> d & 1 and umask & ~up[d] for d in range(k)):
                    continue
                new = []
                for i in range(k):
                    m = up[i]
                    if dmask >> i & 1:
                        m |= p | umask
                    new.append(m)
                new.append(p | umask)
                out.append(tuple(new))
    return out


def _opens_of_preorder(n: int, up: Sequence[int]) -> list[int]:
    """Up-closed subsets, i.e. the Alexandrov opens of the preorder."""
    return [s for s in range(1 << n) if all(not (s >> i & 1) or up[i] & ~s == 0 for i in range(n))]


def enumerate_spaces(n: int, labels: Sequence[str] | None = None) -> Iterator[FiniteSpace]:
    """Every topology on ``n`` labelled points, each exactly once, in a fixed order."""
    if not 1 <= n <= 5:
        raise ValueError("enumeration supports 1 <= n <= 5 points")
    families = sorted(tuple(_opens_of_preorder(n, up)) for up in _preorders(n))
    keyed = sorted(families, key=lambda fam: (len(fam), fam))
    for fam in keyed:
        yield FiniteSpace.from_masks(n, fam, labels)


def enumerate_spaces_bruteforce(n: int) -> list[FiniteSpace]:
    """Filter all candidate families containing ∅ and X through the axioms."""
    if not 1 <= n <= 4:
        raise ValueError("brute force is limited to n <= 4")
    full = (1 << n) - 1
    middle = list(range(1, full))
    out = []
    for choice in product((False, True), repeat=len(middle)):
        fam = [0, full] + [s for s, keep in zip(middle, choice) if keep]
        if full == 0:
            fam = [0]
        present = set(fam)
        if all(a | b in present and a & b in present for a in fam for b in fam):
            out.append(FiniteSpace.from_masks(n, sorted(present)))
    return out
