"""The 27 lower-semicontinuity-type conditions and their metadata."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class Condition(str, Enum):
    LSC = "LSC"
    SLSC = "SLSC"
    LPC = "LPC"
    SLPC = "SLPC"
    WLC = "WLC"
    SWLC = "SWLC"
    LQC = "LQC"
    SLQC = "SLQC"
    PLC = "PLC"
    SPLC = "SPLC"
    SM = "SM"
    LM = "LM"
    LSCA = "LSCA"
    DSC = "DSC"
    SDSC = "SDSC"
    RGI = "RGI"
    ISLSC = "ISLSC"
    QRGI = "QRGI"
    SQRGI = "SQRGI"
    UBLSCA = "UBLSCA"
    UBSLSCA = "UBSLSCA"
    BLSCA = "BLSCA"
    BSLSCA = "BSLSCA"
    TLC = "TLC"
    STLC = "STLC"
    TWLC = "TWLC"
    STWLC = "STWLC"

    def __str__(self) -> str:
        return self.value

    @property
    def info(self) -> "ConditionInfo":
        return CATALOG[self]

    @property
    def global_only(self) -> bool:
        return CATALOG[self].global_only

    @property
    def bit(self) -> int:
        return _BITS[self]


@dataclass(frozen=True)
class ConditionInfo:
    name: str  # full name
    style: str  # "filter", "net" or "sequence"
    definition: str  # one-line statement of the definition at x
    counterpart: "Condition | None" = None  # equivalent under first countability
    global_only: bool = False


C = Condition

CATALOG: dict[Condition, ConditionInfo] = {
    C.LSC: ConditionInfo("lower semi-continuous", "filter", "f(x) <= liminf_{y->x} f(y)"),
    C.SLSC: ConditionInfo(
        "sequentially lower semi-continuous", "sequence", "for all x_n -> x: f(x) <= liminf f(x_n)", C.LSC
    ),
    C.LPC: ConditionInfo(
        "lower pseudo-continuous", "filter", "for all y with f(y) < f(x): f(y) < liminf_{z->x} f(z)"
    ),
    C.SLPC: ConditionInfo(
        "sequentially lower pseudo-continuous",
        "sequence",
        "for all y with f(y) < f(x), all x_n -> x: f(y) < liminf f(x_n)",
        C.LPC,
    ),
    C.WLC: ConditionInfo(
        "weakly lower continuous", "filter", "for all y with f(y) < f(x) there is U in N(x) with f(y) <= inf_U f"
    ),
    C.SWLC: ConditionInfo(
        "sequentially weakly lower continuous",
        "sequence",
        "for all y with f(y) < f(x), all x_n -> x: eventually f(y) <= f(x_n)",
        C.WLC,
    ),
    C.LQC: ConditionInfo(
        "lower quasi-continuous", "filter", "for all y with f(y) < f(x): f(y) <= liminf_{z->x} f(z)"
    ),
    C.SLQC: ConditionInfo(
        "sequentially lower quasi-continuous",
        "sequence",
        "for all y with f(y) < f(x), all x_n -> x: f(y) <= liminf f(x_n)",
        C.LQC,
    ),
    C.PLC: ConditionInfo(
        "partially lower continuous",
        "filter",
        "for all y with f(y) < f(x), (x,y) not a jump point: some U in N(x) has f(y) <= inf_U f",
    ),
    C.SPLC: ConditionInfo(
        "sequentially partially lower continuous",
        "sequence",
        "for all y with f(y) < f(x), (x,y) not a jump point, all x_n -> x: eventually f(y) <= f(x_n)",
        C.PLC,
    ),
    C.SM: ConditionInfo("submonotone", "net", "for all x_a -> x with f(x_a) decreasing: f(x) <= f(x_a) for all a"),
    C.LM: ConditionInfo(
        "lower monotone", "sequence", "for all x_n -> x with f(x_n) decreasing: f(x) <= f(x_n) for all n", C.SM
    ),
    C.LSCA: ConditionInfo(
        "lower semi-continuous from above",
        "sequence",
        "for all x_n -> x with f(x_n) decreasing: f(x) <= lim f(x_n)",
        C.SM,
    ),
    C.DSC: ConditionInfo(
        "decreasing semi-continuous", "net", "for all x_a -> x with f(x_a) strictly decreasing: f(x) <= lim f(x_a)"
    ),
    C.SDSC: ConditionInfo(
        "sequentially decreasing semi-continuous",
        "sequence",
        "for all x_n -> x with f(x_n) strictly decreasing: f(x) <= lim f(x_n)",
        C.DSC,
    ),
    C.RGI: ConditionInfo(
        "regular global infimum", "filter", "f(x) = inf f, or some U in N(x) has inf f < inf_U f"
    ),
    C.ISLSC: ConditionInfo(
        "inf-sequentially lower semi-continuous",
        "sequence",
        "f(x) = inf f, or no minimizing sequence converges to x",
        C.RGI,
    ),
    C.QRGI: ConditionInfo(
        "quasi-regular global infimum",
        "filter",
        "every V in N(x) has inf f in f(V), or some U in N(x) has inf_U f > inf f",
    ),
    C.SQRGI: ConditionInfo(
        "sequentially quasi-regular global infimum",
        "sequence",
        "no minimizing sequence converges to x, or some sequence in argmin converges to x",
        C.QRGI,
    ),
    C.UBLSCA: ConditionInfo(
        "uniformly below lower semi-continuous from above",
        "net",
        "some a in (inf f, +inf] such that for all x and all x_a -> x with f(x_a) decreasing and <= a: "
        "f(x) <= lim f(x_a)",
        global_only=True,
    ),
    C.UBSLSCA: ConditionInfo(
        "uniformly below sequentially lower semi-continuous from above",
        "sequence",
        "some a in (inf f, +inf] such that for all x and all x_n -> x with f(x_n) decreasing and <= a: "
        "f(x) <= lim f(x_n)",
        C.UBLSCA,
        global_only=True,
    ),
    C.BLSCA: ConditionInfo(
        "below lower semi-continuous from above",
        "net",
        "some a in (inf f, +inf] such that all x_a -> x with f(x_a) decreasing and <= a have f(x) <= lim f(x_a)",
    ),
    C.BSLSCA: ConditionInfo(
        "below sequentially lower semi-continuous from above",
        "sequence",
        "some a in (inf f, +inf] such that all x_n -> x with f(x_n) decreasing and <= a have f(x) <= lim f(x_n)",
        C.BLSCA,
    ),
    C.TLC: ConditionInfo(
        "transfer lower continuous",
        "filter",
        "f(x) = inf f, or some y and U in N(x) have f(y) < f(z) for all z in U",
    ),
    C.STLC: ConditionInfo(
        "sequentially transfer lower continuous",
        "sequence",
        "f(x) = inf f, or some y has, for all x_n -> x, eventually f(y) < f(x_n)",
        C.TLC,
    ),
    C.TWLC: ConditionInfo(
        "transfer weakly lower continuous", "filter", "some y and U in N(x) have f(y) <= inf_U f"
    ),
    C.STWLC: ConditionInfo(
        "sequentially transfer weakly lower continuous",
        "sequence",
        "some y has f(y) <= liminf f(x_n) for all x_n -> x",
        C.TWLC,
    ),
}

ORDER: tuple[Condition, ...] = tuple(Condition)
POINTWISE: tuple[Condition, ...] = tuple(c for c in ORDER if not CATALOG[c].global_only)
GLOBAL_ONLY: tuple[Condition, ...] = tuple(c for c in ORDER if CATALOG[c].global_only)
ALL_MASK = (1 << len(ORDER)) - 1
_BITS = {c: 1 << i for i, c in enumerate(ORDER)}


class UnknownCondition(KeyError):
    pass


class GlobalOnlyCondition(ValueError):
    """A condition without a pointwise meaning was checked at a point."""


def parse_condition(name: str | Condition) -> Condition:
    if isinstance(name, Condition):
        return name
    try:
        return Condition(name.strip().upper())
    except ValueError:
        raise UnknownCondition(f"unknown condition {name!r}") from None


def mask_of(conds) -> int:
    m = 0
    for c in conds:
        m |= parse_condition(c).bit
    return m


def conditions_in(mask: int) -> list[Condition]:
    return [c for i, c in enumerate(ORDER) if mask >> i & 1]


@dataclass(frozen=True)
class Verdict:
    """Outcome of one check: whether it holds, a certificate, and how it was decided."""

    holds: bool
    witness: str | None = None
    note: str = ""

    def __bool__(self) -> bool:
        return self.holds


class Atom(str, Enum):
    """Hypotheses that guard implications."""

    N1 = "N1"  # first countable
    NO_JUMP = "no-jump"  # no jump at x (pointwise) / no jumps at all (global)
    CONV_MIN_SEQ = "conv-min-seq"  # a minimizing sequence converges (to x, pointwise)
    CONV_MIN_NET = "conv-min-net"  # a minimizing net converges (to x, pointwise)
    EMPTY_ARGMIN = "empty-argmin"

    def __str__(self) -> str:
        return self.value


_ATOM_ALIASES = {
    "n1": Atom.N1,
    "first-countable": Atom.N1,
    "no-jump": Atom.NO_JUMP,
    "no-jumps": Atom.NO_JUMP,
    "no-jump-at-x": Atom.NO_JUMP,
    "conv-min-seq": Atom.CONV_MIN_SEQ,
    "conv-min-net": Atom.CONV_MIN_NET,
    "empty-argmin": Atom.EMPTY_ARGMIN,
}


class UnknownAtom(KeyError):
    pass


def parse_atom(name: str | Atom) -> Atom:
    if isinstance(name, Atom):
        return name
    try:
        return _ATOM_ALIASES[name.strip().lower()]
    except KeyError:
        raise UnknownAtom(f"unknown hypothesis atom {name!r}") from None


def parse_atoms(names) -> frozenset[Atom]:
    return frozenset(parse_atom(n) for n in names)
