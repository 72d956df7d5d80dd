"""Exhaustive sweeps over small finite models.

A sweep visits every topology on at most ``n_max`` labelled points and every
function from the points into a finite grid of extended reals.  For each
model it evaluates all 27 conditions with the reduced checker and records:

* violations of seeded edges whose guards the model satisfies (checking
  every usable edge is the same as checking every derivation, since a
  closed-under-edges verdict set is closed under paths);
* separation witnesses: the first model in which A holds and B fails;
* exceptions to the attainment characterizations (finite spaces are
  compact): TWLC everywhere iff argmin is nonempty, TLC everywhere iff
  argmin is closed and nonempty.

The reduced verdicts depend only on the order of the values, so results are
cached per (topology, rank pattern).  Work is split per topology and merged
by index, so the outcome does not depend on the number of workers.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from .conditions.catalog import ORDER, Atom, Condition, conditions_in
from .conditions.finite import model_masks, verdict_masks
from .conditions.literal import literal_masks
from .conditions.propositions import (
    check_lpc_levelsets,
    check_qrgi_char,
    check_rgi_char,
    check_twlc_equivalences,
)
from .extreal import POS_INF, ExtReal, parse_extreal
from .graph import ImplicationGraph, Scope, load_graph
from .topology import FiniteModel, enumerate_spaces

DEFAULT_GRID = ("-inf", "-1", "0", "1", "+inf")
C = Condition


def parse_grid(items: Sequence) -> tuple[ExtReal, ...]:
    vals = sorted({parse_extreal(str(v)) for v in items})
    if not vals:
        raise ValueError("the value grid must be nonempty")
    return tuple(vals)


def model_id(n: int, t: int, f: int) -> str:
    return f"n{n}-t{t}-f{f}"


def describe_model(model: FiniteModel) -> str:
    sp = model.space
    opens = sorted(sp.open_masks, key=lambda m: (bin(m).count("1"), m))
    fam = ",".join("{" + "".join(p for i, p in enumerate(sp.points) if m >> i & 1) + "}" for m in opens)
    vals = " ".join(f"{p}={v}" for p, v in zip(sp.points, model.values))
    return f"opens {fam}; f: {vals}"


@dataclass(frozen=True)
class Witness:
    model: str  # model id
    point: str | None  # None for a global separation
    text: str  # opens and values

    def __str__(self) -> str:
        where = "" if self.point is None else f" at {self.point}"
        return f"{self.model}{where} ({self.text})"


@dataclass(frozen=True)
class EdgeViolation:
    edge: str
    scope: Scope
    witness: Witness


@dataclass
class SweepReport:
    n_max: int
    grid: tuple[ExtReal, ...]
    topologies: int = 0
    models: int = 0
    points: int = 0
    edge_checks: int = 0
    violations: list[EdgeViolation] = field(default_factory=list)
    pointwise_sep: dict[tuple[Condition, Condition], Witness] = field(default_factory=dict)
    global_sep: dict[tuple[Condition, Condition], Witness] = field(default_factory=dict)
    twlc_exceptions: list[str] = field(default_factory=list)
    tlc_exceptions: list[str] = field(default_factory=list)

    @property
    def clean(self) -> bool:
        return not (self.violations or self.twlc_exceptions or self.tlc_exceptions)

    def separated(self, a, b, scope: Scope | str = Scope.POINTWISE) -> Witness | None:
        table = self.pointwise_sep if Scope(scope) is Scope.POINTWISE else self.global_sep
        return table.get((Condition(a), Condition(b)))

    def to_text(self, graph: ImplicationGraph | None = None) -> str:
        """Tabular report: pair, derivable without hypotheses, witness or none; then a summary."""
        graph = graph or load_graph()
        grid = ", ".join(str(g) for g in self.grid)
        lines = [f"# sweep n_max={self.n_max} grid={{{grid}}}"]
        for scope, table in ((Scope.POINTWISE, self.pointwise_sep), (Scope.GLOBAL, self.global_sep)):
            conds = [c for c in ORDER if scope is Scope.GLOBAL or not c.global_only]
            lines.append(f"## {scope} separations")
            lines.append("pair\tderivable\twitness")
            for a in conds:
                reach = graph.closure([a], (), scope)
                for b in conds:
                    if a == b:
                        continue
                    w = table.get((a, b))
                    derivable = b in reach
                    cell = str(w) if w else "none"
                    if not w and not derivable:
                        cell += f" [{_finite_reason(graph, a, b, scope)}]"
                    lines.append(f"{a}->{b}\t{'yes' if derivable else 'no'}\t{cell}")
        lines.append("## summary")
        lines.append(f"topologies\t{self.topologies}")
        lines.append(f"models\t{self.models}")
        lines.append(f"points\t{self.points}")
        lines.append(f"edge checks\t{self.edge_checks}")
        lines.append(f"edge violations\t{len(self.violations)}")
        for v in self.violations[:20]:
            lines.append(f"  violated {v.scope} {v.edge}: {v.witness}")
        lines.append(f"pointwise separations\t{len(self.pointwise_sep)}")
        lines.append(f"global separations\t{len(self.global_sep)}")
        lines.append(f"TWLC-attainment exceptions\t{len(self.twlc_exceptions)}")
        lines.append(f"TLC-attainment exceptions\t{len(self.tlc_exceptions)}")
        return "\n".join(lines) + "\n"


def _finite_reason(graph: ImplicationGraph, a, b, scope: Scope) -> str:
    """Why no finite model separates a non-derivable pair, where the diagram says."""
    if b in graph.closure([a], {Atom.N1}, scope):
        return "finite spaces are first countable"
    if b in graph.closure([a], {Atom.N1, Atom.CONV_MIN_SEQ, Atom.CONV_MIN_NET}, scope):
        return "on a finite space the minimum is attained and a minimizing sequence converges"
    return "finite collapse: constant sequences at neighbours converge and finite images admit no strictly decreasing sequence"


# --------------------------------------------------------------------------
# One topology
# --------------------------------------------------------------------------


def _usable(graph: ImplicationGraph, scope: Scope, atoms: frozenset[Atom]):
    return [(e.label(), e.source.bit, e.target.bit) for e in graph.edges_in(scope) if e.guard.satisfied(atoms)]


@dataclass
class _Partial:
    models: int = 0
    points: int = 0
    edge_checks: int = 0
    violations: list = field(default_factory=list)
    point_masks: dict = field(default_factory=dict)  # mask -> first Witness
    global_masks: dict = field(default_factory=dict)
    twlc_exceptions: list = field(default_factory=list)
    tlc_exceptions: list = field(default_factory=list)


def _sweep_space(args) -> _Partial:
    n, t, space, grid, edge_text = args
    graph = load_graph(edge_text)
    nb = [space.nbhd_mask(i) for i in range(n)]
    members = [[j for j in range(n) if nb[i] >> j & 1] for i in range(n)]
    opens = set(space.open_masks)
    full = (1 << n) - 1
    top = len(grid) - 1 if grid[-1] == POS_INF else None
    usable_cache: dict = {}
    verdict_cache: dict = {}
    part = _Partial()

    def usable(scope, atoms):
        key = (scope, atoms)
        if key not in usable_cache:
            usable_cache[key] = _usable(graph, scope, atoms)
        return usable_cache[key]

    for f, ranks in enumerate(product(range(len(grid)), repeat=n)):
        part.models += 1
        part.points += n
        all_top = top is not None and all(r == top for r in ranks)
        levels = sorted(set(ranks))
        key = (tuple(levels.index(r) for r in ranks), all_top)  # only the order matters
        hit = verdict_cache.get(key)
        mid = model_id(n, t, f)
        if hit is None:
            dense = key[0]
            lims = [min(dense[j] for j in members[i]) for i in range(n)]
            masks, glob = verdict_masks(dense, lims, all_top)
            single = len(levels) == 1
            base = {Atom.N1} | ({Atom.NO_JUMP} if single else set())
            patoms = [frozenset(base | ({Atom.CONV_MIN_SEQ, Atom.CONV_MIN_NET} if lims[i] == 0 else set())) for i in range(n)]
            gatoms = frozenset(base | {Atom.CONV_MIN_SEQ, Atom.CONV_MIN_NET})
            argmin = sum(1 << i for i in range(n) if dense[i] == 0)
            hit = verdict_cache[key] = (masks, glob, patoms, gatoms, argmin)
        masks, glob, patoms, gatoms, argmin = hit

        def witness(point=None):
            model = FiniteModel(space, tuple(grid[r] for r in ranks))
            return Witness(mid, point, describe_model(model))

        for i in range(n):
            edges = usable(Scope.POINTWISE, patoms[i])
            part.edge_checks += len(edges)
            mk = masks[i]
            for label, sb, tb in edges:
                if mk & sb and not mk & tb:
                    part.violations.append(EdgeViolation(label, Scope.POINTWISE, witness(space.points[i])))
            if mk not in part.point_masks:
                part.point_masks[mk] = witness(space.points[i])
        edges = usable(Scope.GLOBAL, gatoms)
        part.edge_checks += len(edges)
        for label, sb, tb in edges:
            if glob & sb and not glob & tb:
                part.violations.append(EdgeViolation(label, Scope.GLOBAL, witness()))
        if glob not in part.global_masks:
            part.global_masks[glob] = witness()

        # attainment: argmin is never empty on a finite space
        if bool(glob & C.TWLC.bit) != (argmin != 0):
            part.twlc_exceptions.append(mid)
        closed = (full & ~argmin) in opens
        if bool(glob & C.TLC.bit) != (argmin != 0 and closed):
            part.tlc_exceptions.append(mid)
    return part


def _separations(mask_witnesses: dict, conds) -> dict:
    out = {}
    for mk, w in sorted(mask_witnesses.items(), key=lambda kv: _order_key(kv[1])):
        holding = [c for c in conds if mk & c.bit]
        failing = [c for c in conds if not mk & c.bit]
        for a in holding:
            for b in failing:
                out.setdefault((a, b), w)
    return dict(sorted(out.items(), key=lambda kv: (ORDER.index(kv[0][0]), ORDER.index(kv[0][1]))))


def _order_key(w: Witness):
    n, t, f = (int(s[1:]) for s in w.model.split("-"))
    return (n, t, f, w.point or "")


def _work_items(n_max: int, grid, edge_text):
    items = []
    for n in range(1, n_max + 1):
        for t, space in enumerate(enumerate_spaces(n)):
            items.append((n, t, space, grid, edge_text))
    return items


def sweep(
    n_max: int = 4,
    grid: Sequence = DEFAULT_GRID,
    workers: int = 1,
    graph_text: str | None = None,
) -> SweepReport:
    """Sweep every finite model with at most ``n_max`` points and values in ``grid``."""
    if not 1 <= n_max <= 4:
        raise ValueError("n_max must be between 1 and 4")
    grid = parse_grid(grid)
    if graph_text is None:
        from ._data import data_text

        graph_text = data_text("edges.txt")
    items = _work_items(n_max, grid, graph_text)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_sweep_space, items, chunksize=4))
    else:
        parts = [_sweep_space(it) for it in items]

    rep = SweepReport(n_max, grid, topologies=len(items))
    point_masks: dict = {}
    global_masks: dict = {}
    for p in parts:  # item order, so the first witness wins
        rep.models += p.models
        rep.points += p.points
        rep.edge_checks += p.edge_checks
        rep.violations.extend(p.violations)
        rep.twlc_exceptions.extend(p.twlc_exceptions)
        rep.tlc_exceptions.extend(p.tlc_exceptions)
        for mk, w in p.point_masks.items():
            point_masks.setdefault(mk, w)
        for mk, w in p.global_masks.items():
            global_masks.setdefault(mk, w)
    pointwise = [c for c in ORDER if not c.global_only]
    rep.pointwise_sep = _separations(point_masks, pointwise)
    rep.global_sep = _separations(global_masks, ORDER)
    return rep


# --------------------------------------------------------------------------
# Oracle cross-validation and characterization suites
# --------------------------------------------------------------------------


def all_models(n_max: int, grid: Sequence):
    """Yield (model id, model) for every finite model up to n_max points."""
    grid = parse_grid(grid)
    for n in range(1, n_max + 1):
        for t, space in enumerate(enumerate_spaces(n)):
            for f, vals in enumerate(product(grid, repeat=n)):
                yield model_id(n, t, f), FiniteModel(space, vals)


@dataclass(frozen=True)
class Mismatch:
    model: str
    text: str
    condition: Condition
    point: str | None
    reduced: bool
    literal: bool


@dataclass
class CrossReport:
    n_max: int
    grid: tuple[ExtReal, ...]
    models: int = 0
    comparisons: int = 0
    mismatches: list[Mismatch] = field(default_factory=list)

    @property
    def clean(self) -> bool:
        return not self.mismatches

    def to_text(self, limit: int = 20) -> str:
        grid = ", ".join(str(g) for g in self.grid)
        lines = [
            f"# cross-validation n_max={self.n_max} grid={{{grid}}}",
            f"models\t{self.models}",
            f"comparisons\t{self.comparisons}",
            f"mismatches\t{len(self.mismatches)}",
        ]
        for mm in self.mismatches[:limit]:
            where = "global" if mm.point is None else f"at {mm.point}"
            lines.append(f"  {mm.model} {mm.condition} {where}: reduced={mm.reduced} literal={mm.literal} ({mm.text})")
        return "\n".join(lines) + "\n"


def cross_validate(n_max: int = 3, grid: Sequence = DEFAULT_GRID, liminf=None) -> CrossReport:
    """Compare the reduced checker with literal evaluation of the definitions.

    ``liminf`` replaces the liminf used by the reduced checker, for planting faults.
    """
    if not 1 <= n_max <= 3:
        raise ValueError("n_max must be between 1 and 3")
    rep = CrossReport(n_max, parse_grid(grid))
    pointwise = [c for c in ORDER if not c.global_only]
    for mid, model in all_models(n_max, grid):
        rep.models += 1
        red_pts, red_glob = model_masks(model, liminf)
        lit_pts, lit_glob = literal_masks(model)
        for i, p in enumerate(model.space.points):
            rep.comparisons += len(pointwise)
            diff = red_pts[i] ^ lit_pts[i]
            for c in conditions_in(diff):
                rep.mismatches.append(Mismatch(mid, describe_model(model), c, p, bool(red_pts[i] & c.bit), bool(lit_pts[i] & c.bit)))
        rep.comparisons += len(ORDER)
        for c in conditions_in(red_glob ^ lit_glob):
            rep.mismatches.append(Mismatch(mid, describe_model(model), c, None, bool(red_glob & c.bit), bool(lit_glob & c.bit)))
    return rep


@dataclass
class PropositionReport:
    models: int = 0
    checks: dict[str, int] = field(default_factory=dict)
    disagreements: list[tuple[str, str, str | None]] = field(default_factory=list)  # (suite, model id, point)

    @property
    def clean(self) -> bool:
        return not self.disagreements


def proposition_sweep(n_max: int = 3, grid: Sequence = DEFAULT_GRID) -> PropositionReport:
    """Run the characterization suites over every finite model up to n_max points."""
    rep = PropositionReport()
    for suite in ("twlc-equivalences", "lpc-levelsets", "rgi-char", "qrgi-char"):
        rep.checks[suite] = 0
    for mid, model in all_models(n_max, grid):
        rep.models += 1
        rep.checks["lpc-levelsets"] += 1
        if not check_lpc_levelsets(model).agree:
            rep.disagreements.append(("lpc-levelsets", mid, None))
        for p in model.space.points:
            for suite, fn in (("rgi-char", check_rgi_char), ("qrgi-char", check_qrgi_char)):
                rep.checks[suite] += 1
                if not fn(model, p).agree:
                    rep.disagreements.append((suite, mid, p))
            rep.checks["twlc-equivalences"] += 1
            if len(set(check_twlc_equivalences(model, p))) != 1:
                rep.disagreements.append(("twlc-equivalences", mid, p))
    return rep


__all__ = [
    "DEFAULT_GRID",
    "CrossReport",
    "EdgeViolation",
    "Mismatch",
    "PropositionReport",
    "SweepReport",
    "Witness",
    "all_models",
    "cross_validate",
    "describe_model",
    "parse_grid",
    "proposition_sweep",
    "sweep",
]
