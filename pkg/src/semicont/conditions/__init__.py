"""Checking the conditions on finite models and piecewise real functions."""

from __future__ import annotations

from ..piecewise import PiecewiseFn
from ..topology import FiniteModel, liminf_at
from .catalog import (
    ALL_MASK,
    CATALOG,
    GLOBAL_ONLY,
    ORDER,
    POINTWISE,
    Atom,
    Condition,
    ConditionInfo,
    GlobalOnlyCondition,
    UnknownAtom,
    UnknownCondition,
    Verdict,
    conditions_in,
    mask_of,
    parse_atom,
    parse_atoms,
    parse_condition,
)
from .finite import check_at_finite, check_global_finite
from .real import RealContext, check_at_real, check_global_real, min_seq_at

Model = FiniteModel | PiecewiseFn


def check_at(cond: Condition | str, model: Model, x) -> Verdict:
    """Decide ``cond`` at the point ``x``."""
    cond = parse_condition(cond)
    if isinstance(model, FiniteModel):
        return check_at_finite(cond, model, x)
    if isinstance(model, PiecewiseFn):
        return check_at_real(cond, model, x)
    raise TypeError(f"unsupported model type {type(model).__name__}")


def check_global(cond: Condition | str, model: Model) -> Verdict:
    """Decide ``cond`` for the function as a whole."""
    cond = parse_condition(cond)
    if isinstance(model, FiniteModel):
        return check_global_finite(cond, model)
    if isinstance(model, PiecewiseFn):
        return check_global_real(cond, model)
    raise TypeError(f"unsupported model type {type(model).__name__}")


def points_of(model: Model) -> list:
    """Points at which a report is produced: every point, or the critical points."""
    if isinstance(model, FiniteModel):
        return list(model.space.points)
    return model.critical_points()


def point_atoms(model: Model, x) -> frozenset[Atom]:
    """Hypothesis atoms satisfied by the model at x."""
    atoms = {Atom.N1}
    if isinstance(model, FiniteModel):
        image = model.image()
        if len(image) == 1:
            atoms.add(Atom.NO_JUMP)
        if liminf_at(model, x) == image[0]:
            atoms |= {Atom.CONV_MIN_SEQ, Atom.CONV_MIN_NET}
        return frozenset(atoms)
    ctx = RealContext(model)
    v = ctx.point(x).value
    if not model.image.has_jump_at_value(v):
        atoms.add(Atom.NO_JUMP)
    if min_seq_at(model, x, ctx):
        atoms |= {Atom.CONV_MIN_SEQ, Atom.CONV_MIN_NET}
    if not ctx.m_attained:
        atoms.add(Atom.EMPTY_ARGMIN)
    return frozenset(atoms)


def global_atoms(model: Model) -> frozenset[Atom]:
    """Hypothesis atoms satisfied by the model as a whole."""
    atoms = {Atom.N1}
    if isinstance(model, FiniteModel):
        atoms |= {Atom.CONV_MIN_SEQ, Atom.CONV_MIN_NET}
        if len(model.image()) == 1:
            atoms.add(Atom.NO_JUMP)
        return frozenset(atoms)
    ctx = RealContext(model)
    if len(model.image.jumps()) == 0:
        atoms.add(Atom.NO_JUMP)
    if any(min_seq_at(model, x, ctx) for x in model.critical_points()):
        atoms |= {Atom.CONV_MIN_SEQ, Atom.CONV_MIN_NET}
    if not ctx.m_attained:
        atoms.add(Atom.EMPTY_ARGMIN)
    return frozenset(atoms)


__all__ = [
    "ALL_MASK",
    "CATALOG",
    "GLOBAL_ONLY",
    "ORDER",
    "POINTWISE",
    "Atom",
    "Condition",
    "ConditionInfo",
    "GlobalOnlyCondition",
    "UnknownAtom",
    "UnknownCondition",
    "Verdict",
    "check_at",
    "check_global",
    "conditions_in",
    "global_atoms",
    "mask_of",
    "parse_atom",
    "parse_atoms",
    "parse_condition",
    "point_atoms",
    "points_of",
]
