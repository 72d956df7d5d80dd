"""Reduced decision procedures on finite spaces.

Every point x has a minimal open neighbourhood N(x).  Write v = f(x),
L = min f over N(x) (the liminf at x), m = min f, and p, p2 for the first
and second image values below v.  Because constant sequences at points of
N(x) converge to x, and eventually periodic sequences are eventually inside
N(x), each definition collapses to a comparison:

    LSC SLSC SM LM LSCA        v <= L
    LPC SLPC                   p < L        (or no smaller value)
    WLC SWLC LQC SLQC          p <= L
    PLC SPLC                   p2 <= L      ((x,y) with f(y) = p is a jump point)
    DSC SDSC                   always       (a finite image has no non-trivial
                                             strictly decreasing net)
    RGI ISLSC BLSCA BSLSCA
    TLC STLC                   v = m or L > m
    QRGI SQRGI TWLC STWLC      L >= m       (always: the minimum is attained)
    UBLSCA UBSLSCA (global)    RGI at every point, with a between m and the
                               next image value

The everywhere +inf function satisfies every condition (taken as the
degenerate branch; the threshold range (inf f, +inf] is then read as {+inf}).

The liminf is injectable so that faults can be planted for oracle tests.
"""

from __future__ import annotations

from typing import Callable, Sequence

from ..extreal import POS_INF, ExtReal, strictly_between
from ..topology import FiniteModel, liminf_at
from .catalog import (
    ALL_MASK,
    GlobalOnlyCondition,
    Condition,
    Verdict,
    mask_of,
)

C = Condition

GROUP_LSC = mask_of([C.LSC, C.SLSC, C.SM, C.LM, C.LSCA])
GROUP_LPC = mask_of([C.LPC, C.SLPC])
GROUP_WLC = mask_of([C.WLC, C.SWLC, C.LQC, C.SLQC])
GROUP_PLC = mask_of([C.PLC, C.SPLC])
GROUP_RGI = mask_of([C.RGI, C.ISLSC, C.BLSCA, C.BSLSCA, C.TLC, C.STLC])
GROUP_QRGI = mask_of([C.QRGI, C.SQRGI])
GROUP_TWLC = mask_of([C.TWLC, C.STWLC])
ALWAYS = mask_of([C.DSC, C.SDSC])
UNIFORM = mask_of([C.UBLSCA, C.UBSLSCA])
POINTWISE_MASK = ALL_MASK & ~UNIFORM

LiminfFn = Callable[[FiniteModel, str], ExtReal]


def verdict_masks(values: Sequence, liminfs: Sequence, all_top: bool = False) -> tuple[list[int], int]:
    """Per-point bitmasks of holding pointwise conditions, and the global mask.

    ``values`` may be any totally ordered stand-ins (ranks work as well as
    ExtReals); only order matters.  ``all_top`` flags the everywhere +inf
    function.
    """
    n = len(values)
    if all_top:
        return [POINTWISE_MASK] * n, ALL_MASK
    image = sorted(set(values))
    pos = {w: i for i, w in enumerate(image)}
    m = image[0]
    out = []
    glob = POINTWISE_MASK
    for v, lim in zip(values, liminfs):
        k = pos[v]
        p = image[k - 1] if k >= 1 else None
        p2 = image[k - 2] if k >= 2 else None
        mask = ALWAYS
        if v <= lim:
            mask |= GROUP_LSC
        if p is None or p < lim:
            mask |= GROUP_LPC
        if p is None or p <= lim:
            mask |= GROUP_WLC
        if p2 is None or p2 <= lim:
            mask |= GROUP_PLC
        if v == m or lim > m:
            mask |= GROUP_RGI
        if lim >= m:
            mask |= GROUP_QRGI | GROUP_TWLC
        out.append(mask)
        glob &= mask
    if all(mk & C.RGI.bit for mk in out):
        glob |= UNIFORM
    return out, glob


def _is_all_top(model: FiniteModel) -> bool:
    return all(v == POS_INF for v in model.values)


def model_masks(model: FiniteModel, liminf: LiminfFn | None = None) -> tuple[list[int], int]:
    lf = liminf or liminf_at
    lims = [lf(model, p) for p in model.space.points]
    return verdict_masks(model.values, lims, _is_all_top(model))


# --------------------------------------------------------------------------
# Verdicts with witnesses
# --------------------------------------------------------------------------


def uniform_threshold(model: FiniteModel) -> ExtReal:
    """The threshold a used for the below/uniform conditions: just above the minimum."""
    image = model.image()
    if len(image) == 1:
        return POS_INF
    return strictly_between(image[0], image[1])


class _Ctx:
    def __init__(self, model: FiniteModel, liminf: LiminfFn | None):
        self.model = model
        self.space = model.space
        lf = liminf or liminf_at
        self.lims = [lf(model, p) for p in model.space.points]
        self.image = model.image()
        self.m = self.image[0]
        self.all_top = _is_all_top(model)
        self.masks, self.glob = verdict_masks(model.values, self.lims, self.all_top)

    def nbhd(self, i: int) -> list[int]:
        nb = self.space.nbhd_mask(i)
        return [j for j in range(self.space.size) if nb >> j & 1]

    def name(self, i: int) -> str:
        return self.space.points[i]

    def first_with(self, value: ExtReal, among: Sequence[int] | None = None) -> int:
        idx = range(self.space.size) if among is None else among
        return next(j for j in idx if self.model.values[j] == value)

    def below(self, i: int, k: int) -> ExtReal | None:
        v = self.model.values[i]
        smaller = [w for w in self.image if w < v]
        return smaller[-k] if len(smaller) >= k else None


def _note(cond: Condition, base: str) -> str:
    cp = cond.info.counterpart
    if cond.info.style == "sequence" and cp is not None:
        return f"{base}; equals {cp} since finite spaces are first countable"
    return base


def check_at_finite(cond: Condition, model: FiniteModel, x: str, liminf: LiminfFn | None = None) -> Verdict:
    if cond.global_only:
        raise GlobalOnlyCondition(f"{cond} is a global condition; use check_global")
    ctx = _Ctx(model, liminf)
    i = model.space.index(x)
    return _verdict_at(cond, ctx, i)


def _verdict_at(cond: Condition, ctx: _Ctx, i: int) -> Verdict:
    model = ctx.model
    holds = bool(ctx.masks[i] & cond.bit)
    v, lim, m = model.values[i], ctx.lims[i], ctx.m
    x = ctx.name(i)
    nb = ctx.nbhd(i)
    note = "minimal-neighbourhood reduction"
    if ctx.all_top:
        return Verdict(True, None, "f is identically +inf: holds trivially")
    witness = None
    if cond in (C.LSC, C.SLSC, C.SM, C.LM, C.LSCA):
        if not holds:
            j = ctx.first_with(lim, nb)
            witness = (
                f"y={ctx.name(j)} lies in every neighbourhood of {x} with f(y)={lim} < f({x})={v}; "
                f"constant sequence ({ctx.name(j)}, {ctx.name(j)}, ...)"
            )
    elif cond in (C.LPC, C.SLPC, C.WLC, C.SWLC, C.LQC, C.SLQC, C.PLC, C.SPLC):
        k = 2 if cond in (C.PLC, C.SPLC) else 1
        w = ctx.below(i, k)
        if not holds and w is not None:
            y = ctx.first_with(w)
            z = ctx.first_with(lim, nb)
            witness = (
                f"y={ctx.name(y)} with f(y)={w} < f({x})={v}, but z={ctx.name(z)} "
                f"in every neighbourhood of {x} has f(z)={lim}"
            )
    elif cond in (C.DSC, C.SDSC):
        note = "finite image: no non-trivial strictly decreasing net exists"
    elif cond in (C.RGI, C.ISLSC, C.BLSCA, C.BSLSCA, C.TLC, C.STLC):
        if holds:
            if cond in (C.BLSCA, C.BSLSCA):
                witness = f"a={uniform_threshold(model)}"
            elif cond in (C.TLC, C.STLC) and v != m:
                witness = f"y={ctx.name(ctx.first_with(m))}, U={_fmt(ctx, nb)}"
        else:
            j = ctx.first_with(m, nb)
            witness = (
                f"minimizer {ctx.name(j)} lies in every neighbourhood of {x} while f({x})={v} > inf f={m}; "
                f"constant minimizing sequence ({ctx.name(j)}, ...)"
            )
    elif cond in (C.QRGI, C.SQRGI, C.TWLC, C.STWLC):
        note = "minimal-neighbourhood reduction; the minimum is attained"
        if cond in (C.TWLC, C.STWLC) and holds:
            witness = f"y={ctx.name(ctx.first_with(m))}, U={_fmt(ctx, nb)}"
    return Verdict(holds, witness, _note(cond, note))


def _fmt(ctx: _Ctx, idx: Sequence[int]) -> str:
    return "{" + ",".join(ctx.name(j) for j in idx) + "}"


def check_global_finite(cond: Condition, model: FiniteModel, liminf: LiminfFn | None = None) -> Verdict:
    ctx = _Ctx(model, liminf)
    if ctx.all_top:
        return Verdict(True, None, "f is identically +inf: holds trivially")
    if cond.global_only:
        holds = bool(ctx.glob & cond.bit)
        if holds:
            return Verdict(True, f"a={uniform_threshold(model)}", _note(cond, "threshold just above the minimum"))
        i = next(k for k, mk in enumerate(ctx.masks) if not mk & C.RGI.bit)
        bad = _verdict_at(C.BLSCA, ctx, i)
        return Verdict(False, f"at {ctx.name(i)}: {bad.witness}", _note(cond, "fails for every a > inf f"))
    for i in range(model.space.size):
        if not ctx.masks[i] & cond.bit:
            pv = _verdict_at(cond, ctx, i)
            w = f"at {ctx.name(i)}" + (f": {pv.witness}" if pv.witness else "")
            return Verdict(False, w, pv.note)
    return Verdict(True, None, _note(cond, "holds at every point"))


def punctured_liminf(model: FiniteModel, x: str) -> ExtReal:
    """Fault model: infimum over the minimal neighbourhood with x removed."""
    space = model.space
    i = space.index(x)
    nb = space.nbhd_mask(i) & ~(1 << i)
    vals = [v for j, v in enumerate(model.values) if nb >> j & 1]
    return min(vals) if vals else POS_INF


def isolated_liminf(model: FiniteModel, x: str) -> ExtReal:
    """Fault model: ignore the neighbours altogether."""
    return model.f(x)
