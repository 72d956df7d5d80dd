"""Equivalent characterizations, each computed independently of the checker.

On finite spaces the net quantifiers range over the same presentable
sequences as the literal oracle; neighbourhood quantifiers range over all
open sets.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..extreal import ExtReal
from ..piecewise import PiecewiseFn, analyze_point
from ..topology import FiniteModel, liminf_at
from .catalog import Condition, Verdict
from .finite import model_masks
from .literal import _sequences
from .real import check_global_real


@dataclass(frozen=True)
class CharacterizationCheck:
    """The definition and an equivalent characterization, evaluated separately."""

    definition: bool
    characterization: bool
    detail: str = ""

    @property
    def agree(self) -> bool:
        return self.definition == self.characterization


def _opens_at(model: FiniteModel, i: int) -> list[int]:
    return [o for o in model.space.open_masks if o >> i & 1]


def _inf_over(model: FiniteModel, o: int):
    return min(v for j, v in enumerate(model.values) if o >> j & 1)


def _nets_at(model: FiniteModel, i: int):
    return _sequences(model.space.open_masks, model.space.size)[i]


def check_twlc_equivalences(model: FiniteModel, x: str) -> tuple[bool, bool, bool, bool]:
    """The four equivalent forms of TWLC at x:

    1. some y and neighbourhood U with f(y) <= inf_U f;
    2. some y with f(y) <= liminf_{z->x} f(z);
    3. some y with f(y) <= liminf f(x_a) for every net x_a -> x;
    4. every net x_a -> x admits some y with f(y) <= liminf f(x_a).
    """
    i = model.space.index(x)
    vals = model.values
    opens = _opens_at(model, i)
    nets = _nets_at(model, i)
    net_liminfs = [min(vals[c] for c in cyc) for _, cyc in nets]
    lim = liminf_at(model, x)
    one = any(y <= _inf_over(model, o) for y in vals for o in opens)
    two = any(y <= lim for y in vals)
    three = any(all(y <= nl for nl in net_liminfs) for y in vals)
    four = all(any(y <= nl for y in vals) for nl in net_liminfs)
    return one, two, three, four


def check_lpc_levelsets(model: FiniteModel) -> CharacterizationCheck:
    """LPC at every point versus: every level set lev_{<= lam}, lam in f(X), is closed."""
    pts, _ = model_masks(model)
    lpc = all(mk & Condition.LPC.bit for mk in pts)
    bad = None
    for lam in model.image():
        lev = model.level_set(lam)
        if not model.space.is_closed(lev):
            bad = lam
            break
    detail = "" if bad is None else f"level set at {bad} is not closed"
    return CharacterizationCheck(lpc, bad is None, detail)


def _minimizing_net_to(model: FiniteModel, i: int) -> bool:
    m = model.infimum()
    for _, cyc in _nets_at(model, i):
        if {model.values[c] for c in cyc} == {m}:
            return True
    return False


def _argmin_net_to(model: FiniteModel, i: int) -> bool:
    m = model.infimum()
    vals = model.values
    for pre, cyc in _nets_at(model, i):
        if (pre is None or vals[pre] == m) and all(vals[c] == m for c in cyc):
            return True
    return False


def check_rgi_char(model: FiniteModel, x: str) -> CharacterizationCheck:
    """RGI at x versus: f(x) = inf f, or no minimizing net converges to x."""
    i = model.space.index(x)
    m = model.infimum()
    v = model.values[i]
    definition = v == m or any(m < _inf_over(model, o) for o in _opens_at(model, i))
    char = v == m or not _minimizing_net_to(model, i)
    return CharacterizationCheck(definition, char)


def check_qrgi_char(model: FiniteModel, x: str) -> CharacterizationCheck:
    """QRGI at x versus: no minimizing net converges to x, or a net in argmin does.

    Clause (a) of the definition is read as "x lies in the closure of argmin".
    """
    i = model.space.index(x)
    m = model.infimum()
    in_closure = x in model.space.closure(model.argmin())
    definition = in_closure or any(_inf_over(model, o) > m for o in _opens_at(model, i))
    char = not _minimizing_net_to(model, i) or _argmin_net_to(model, i)
    return CharacterizationCheck(definition, char)


# --------------------------------------------------------------------------
# Piecewise: PLC through jumps
# --------------------------------------------------------------------------


def _side_ok_bound(side, x) -> tuple[ExtReal, bool]:
    """Values w such that f >= w on a one-sided neighbourhood of x.

    Solves the half-line containment {z : s*z + b >= w} ⊇ (x - d, x) (or
    (x, x + d)) for small d.  Returns (c, strict) meaning w < c or w <= c.
    """
    e = side.expr
    c = ExtReal(e.at(x))
    if e.slope == 0:
        return c, False
    # boundary case w = c puts the half-line endpoint z0 exactly at x
    z0 = (c.fraction - e.intercept) / e.slope
    up = e.slope > 0  # the half-line is [z0, +inf) when rising, (-inf, z0] otherwise
    if side.side == "left":
        contained = z0 < x if up else x <= z0
    else:
        contained = z0 <= x if up else x < z0
    return c, not contained


def check_plc_jump_char(fn: PiecewiseFn) -> CharacterizationCheck:
    """PLC everywhere versus: countably many jumps, and for all x, y with f(y) < f(x)
    and (x, y) not a jump point, some neighbourhood of x has f >= f(y) on it.

    The jump side uses the listed jumps of the image rather than predecessor
    queries; the neighbourhood side solves half-line containments per piece.
    """
    definition = check_global_real(Condition.PLC, fn).holds
    jumps = fn.image.jumps()
    countable = True  # finitely many, or one reciprocal family
    partners = {}
    for j in jumps:
        partners.setdefault(j.hi, []).append(j.lo)
    img = fn.image
    failure = None
    for x in fn.critical_points():
        pa = analyze_point(fn, x)
        v = pa.value
        bounds = [(v, False)] + [_side_ok_bound(s, x) for s in pa.sides]
        c = min(b[0] for b in bounds)
        strict = any(b[1] for b in bounds if b[0] == c)
        if not c < v:
            continue
        # failing w lie in [c, v) (strict) or (c, v), minus jump partners of v
        excluded = sorted(p for p in partners.get(v, []) if p >= c)
        cuts = [c] + excluded + [v]
        lo_closed = strict
        for a, b in zip(cuts, cuts[1:]):
            if a < b and img.meets(a, lo_closed, b, False):
                failure = (x, a, b)
                break
            lo_closed = False
        if failure:
            break
    char = countable and failure is None
    detail = "" if failure is None else f"at x={failure[0]}: image meets ({failure[1]},{failure[2]})"
    return CharacterizationCheck(definition, char, detail)


def plc_verdict(fn: PiecewiseFn) -> Verdict:
    res = check_plc_jump_char(fn)
    return Verdict(res.characterization, res.detail or None, "jump characterization")


__all__ = [
    "CharacterizationCheck",
    "check_lpc_levelsets",
    "check_plc_jump_char",
    "check_qrgi_char",
    "check_rgi_char",
    "check_twlc_equivalences",
    "plc_verdict",
]
