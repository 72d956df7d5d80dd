"""Brute-force evaluation of the definitions on finite spaces.

Nothing here uses minimal neighbourhoods.  Neighbourhood quantifiers range
over every open set containing the point, the liminf is the sup over those
opens of the inf, jumps are read off the image, and sequence/net
quantifiers range over the eventually periodic sequences with a prefix of
length at most one and a cycle of length at most the number of points.
Convergence is tested against every open neighbourhood.

These presentable sequences are the quantifier domain for both the net and
the sequence forms.  A sequence with a repeating tail is never strictly
decreasing, which is how the strictly-decreasing conditions come out.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

from ..extreal import POS_INF, strictly_between
from ..topology import FiniteModel, FiniteSpace
from .catalog import ALL_MASK, ORDER, Condition

C = Condition


@lru_cache(maxsize=None)
def _sequences(opens: tuple[int, ...], n: int) -> tuple[tuple[tuple[int | None, tuple[int, ...]], ...], ...]:
    """Per point, the presentable sequences converging to it, as (prefix, cycle).

    Sequences are deduplicated on (prefix point, set of cycle points), which
    determines every quantity the definitions look at.
    """
    per_point = []
    for x in range(n):
        nbhds = [o for o in opens if o >> x & 1]
        seen = {}
        for length in range(1, n + 1):
            for cyc in product(range(n), repeat=length):
                cmask = 0
                for c in cyc:
                    cmask |= 1 << c
                if not all(cmask & o == cmask for o in nbhds):
                    continue
                for pre in [None, *range(n)]:
                    key = (pre, cmask)
                    if key not in seen:
                        seen[key] = (pre, cyc)
        per_point.append(tuple(seen.values()))
    return tuple(per_point)


def _terms(vals, pre, cyc, count):
    seq = ([] if pre is None else [vals[pre]]) + [vals[c] for c in cyc] * (count // len(cyc) + 2)
    return seq[:count]


def _is_decreasing(vals, pre, cyc) -> bool:
    t = _terms(vals, pre, cyc, 1 + 2 * len(cyc))
    return all(b <= a for a, b in zip(t, t[1:]))


def _is_strictly_decreasing(vals, pre, cyc) -> bool:
    t = _terms(vals, pre, cyc, 1 + 2 * len(cyc))
    return all(b < a for a, b in zip(t, t[1:]))


def _limit(vals, cyc):
    cv = {vals[c] for c in cyc}
    return next(iter(cv)) if len(cv) == 1 else None


def literal_masks(model: FiniteModel) -> tuple[list[int], int]:
    """Per-point masks of pointwise conditions and the global mask, by brute force."""
    space: FiniteSpace = model.space
    n = space.size
    vals = model.values
    opens = space.open_masks
    seqs = _sequences(opens, n)
    image = sorted(set(vals))
    m = image[0]

    def is_jump(p, q):
        return p < q and p in image and q in image and not any(p < w < q for w in vals)

    def jump_point(i, j):
        return is_jump(vals[i], vals[j]) or is_jump(vals[j], vals[i])

    # thresholds a in (inf f, +inf]; for f = +inf everywhere the range is read as {+inf}
    cands = set(image) | {POS_INF}
    for a, b in zip(image, image[1:]):
        cands.add(strictly_between(a, b))
    thresholds = sorted(a for a in cands if a > m) or [POS_INF]

    def inf_over(o):
        return min(vals[j] for j in range(n) if o >> j & 1)

    def minimizing(pre, cyc):
        return _limit(vals, cyc) == m

    def below_lsca(x, a, seq_list):
        # every decreasing sequence with all terms <= a has f(x) <= its limit
        for pre, cyc in seq_list:
            if not _is_decreasing(vals, pre, cyc):
                continue
            if any(t > a for t in _terms(vals, pre, cyc, 1 + len(cyc))):
                continue
            if not vals[x] <= _limit(vals, cyc):
                return False
        return True

    point_masks = []
    for x in range(n):
        v = vals[x]
        nbhds = [o for o in opens if o >> x & 1]
        sq = seqs[x]
        lim_inf = max(inf_over(o) for o in nbhds)
        cyc_min = [min(vals[c] for c in cyc) for _, cyc in sq]
        smaller = [y for y in range(n) if vals[y] < v]
        non_jump = [y for y in smaller if not jump_point(x, y)]
        r = {}
        r[C.LSC] = v <= lim_inf
        r[C.SLSC] = all(v <= cm for cm in cyc_min)
        r[C.LPC] = all(vals[y] < lim_inf for y in smaller)
        r[C.SLPC] = all(vals[y] < cm for y in smaller for cm in cyc_min)
        r[C.WLC] = all(any(vals[y] <= inf_over(o) for o in nbhds) for y in smaller)
        r[C.SWLC] = all(vals[y] <= cm for y in smaller for cm in cyc_min)
        r[C.LQC] = all(vals[y] <= lim_inf for y in smaller)
        r[C.SLQC] = r[C.SWLC]
        r[C.PLC] = all(any(vals[y] <= inf_over(o) for o in nbhds) for y in non_jump)
        r[C.SPLC] = all(vals[y] <= cm for y in non_jump for cm in cyc_min)
        dec = [(pre, cyc) for pre, cyc in sq if _is_decreasing(vals, pre, cyc)]
        r[C.SM] = all(v <= t for pre, cyc in dec for t in _terms(vals, pre, cyc, 1 + len(cyc)))
        r[C.LM] = r[C.SM]
        r[C.LSCA] = all(v <= _limit(vals, cyc) for _, cyc in dec)
        strict = [(pre, cyc) for pre, cyc in sq if _is_strictly_decreasing(vals, pre, cyc)]
        r[C.DSC] = all(v <= _limit(vals, cyc) for _, cyc in strict)
        r[C.SDSC] = r[C.DSC]
        min_seq_to_x = any(minimizing(pre, cyc) for pre, cyc in sq)
        r[C.RGI] = v == m or any(m < inf_over(o) for o in nbhds)
        r[C.ISLSC] = v == m or not min_seq_to_x
        r[C.QRGI] = all(any(vals[j] == m for j in range(n) if o >> j & 1) for o in nbhds) or any(
            inf_over(o) > m for o in nbhds
        )
        in_argmin = any(
            (pre is None or vals[pre] == m) and all(vals[c] == m for c in cyc) for pre, cyc in sq
        )
        r[C.SQRGI] = not min_seq_to_x or in_argmin
        r[C.BLSCA] = any(below_lsca(x, a, sq) for a in thresholds)
        r[C.BSLSCA] = r[C.BLSCA]
        r[C.TLC] = v == m or any(all(vals[y] < vals[z] for z in range(n) if o >> z & 1) for y in range(n) for o in nbhds)
        r[C.STLC] = v == m or any(all(vals[y] < cm for cm in cyc_min) for y in range(n))
        r[C.TWLC] = any(vals[y] <= inf_over(o) for y in range(n) for o in nbhds)
        r[C.STWLC] = any(all(vals[y] <= cm for cm in cyc_min) for y in range(n))
        mask = 0
        for c, ok in r.items():
            if ok:
                mask |= c.bit
        point_masks.append(mask)

    glob = ALL_MASK
    for mk in point_masks:
        glob &= mk | C.UBLSCA.bit | C.UBSLSCA.bit
    uniform = any(all(below_lsca(x, a, seqs[x]) for x in range(n)) for a in thresholds)
    if not uniform:
        glob &= ~(C.UBLSCA.bit | C.UBSLSCA.bit)
    return point_masks, glob


def literal_verdict(cond: Condition, model: FiniteModel, x: str | None = None) -> bool:
    pts, glob = literal_masks(model)
    if x is None:
        return bool(glob & cond.bit)
    return bool(pts[model.space.index(x)] & cond.bit)


__all__ = ["literal_masks", "literal_verdict", "ORDER"]
