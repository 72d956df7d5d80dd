"""Guarded implication graph over the 27 conditions.

Edges are loaded from a plain text table.  A guard is a disjunction of
conjunctions of hypothesis atoms; an edge is usable when some conjunction is
contained in the active hypotheses.  Queries are breadth-first searches over
usable edges, so a returned path is a shortest one.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Protocol

from ._data import data_text
from .conditions.catalog import (
    ORDER,
    Atom,
    Condition,
    GlobalOnlyCondition,
    parse_atom,
    parse_atoms,
    parse_condition,
)


class Scope(str, Enum):
    POINTWISE = "pointwise"
    GLOBAL = "global"

    def __str__(self) -> str:
        return self.value


def parse_scope(s: "Scope | str") -> Scope:
    if isinstance(s, Scope):
        return s
    try:
        return Scope(s.strip().lower())
    except ValueError:
        raise ValueError(f"unknown scope {s!r}; expected pointwise or global") from None


class TableError(ValueError):
    """A malformed line in an edge or literature table."""


@dataclass(frozen=True)
class Guard:
    """Disjunction of conjunctions of atoms.  ``Guard(())`` never fires; use NONE."""

    terms: tuple[frozenset[Atom], ...]

    @classmethod
    def parse(cls, text: str) -> "Guard":
        text = text.strip()
        if text in ("", "-"):
            return NONE
        terms = []
        for alt in text.split(" or "):
            terms.append(frozenset(parse_atom(a) for a in alt.split("+")))
        return cls(tuple(sorted(terms, key=_term_key)))

    @property
    def unguarded(self) -> bool:
        return frozenset() in self.terms

    @property
    def atoms(self) -> frozenset[Atom]:
        out: frozenset[Atom] = frozenset()
        for t in self.terms:
            out |= t
        return out

    def satisfied(self, hyps: Iterable[Atom]) -> bool:
        hyps = frozenset(hyps)
        return any(t <= hyps for t in self.terms)

    def label(self) -> str:
        if self.unguarded:
            return ""
        return " or ".join("+".join(sorted(a.value for a in t)) for t in self.terms)

    def __str__(self) -> str:
        return self.label() or "-"


def _term_key(t: frozenset[Atom]):
    return (len(t), sorted(a.value for a in t))


NONE = Guard((frozenset(),))


@dataclass(frozen=True)
class Edge:
    source: Condition
    target: Condition
    guard: Guard
    scope: Scope
    provenance: str
    literature: tuple[int, ...] = ()  # matching literature items

    def label(self) -> str:
        g = self.guard.label()
        return f"{self.source} -> {self.target}" + (f" [{g}]" if g else "")


@dataclass(frozen=True)
class LiteratureItem:
    item: int
    kind: str  # "implies" or "refutes"
    source: Condition
    target: Condition
    guard: Guard
    scope: Scope
    citation: str


def _rows(text: str, ncols: int, what: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        cols = [c.strip() for c in line.split("|")]
        if len(cols) != ncols:
            raise TableError(f"{what} line {lineno}: expected {ncols} columns, got {len(cols)}")
        yield lineno, cols


def parse_edges(text: str) -> list[Edge]:
    """Read an edge table: ``source | target | guard | scope | provenance``."""
    edges = []
    for lineno, (src, tgt, guard, scope, prov) in _rows(text, 5, "edge table"):
        try:
            s, t, g = parse_condition(src), parse_condition(tgt), Guard.parse(guard)
            scopes = list(Scope) if scope.lower() == "both" else [parse_scope(scope)]
        except (KeyError, ValueError) as exc:
            raise TableError(f"edge table line {lineno}: {exc}") from None
        if not prov:
            raise TableError(f"edge table line {lineno}: missing provenance")
        for sc in scopes:
            if sc is Scope.POINTWISE and (s.global_only or t.global_only):
                raise TableError(f"edge table line {lineno}: {s} -> {t} cannot be pointwise")
            edges.append(Edge(s, t, g, sc, prov))
    return edges


def parse_literature(text: str) -> list[LiteratureItem]:
    items = []
    for lineno, (num, kind, src, tgt, guard, scope, cite) in _rows(text, 7, "literature table"):
        if kind not in ("implies", "refutes"):
            raise TableError(f"literature line {lineno}: unknown kind {kind!r}")
        try:
            items.append(
                LiteratureItem(
                    int(num), kind, parse_condition(src), parse_condition(tgt), Guard.parse(guard), parse_scope(scope), cite
                )
            )
        except (KeyError, ValueError) as exc:
            raise TableError(f"literature line {lineno}: {exc}") from None
    return items


def load_literature() -> list[LiteratureItem]:
    return parse_literature(data_text("literature.txt"))


# --------------------------------------------------------------------------
# Derivations
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Derivation:
    source: Condition
    target: Condition
    hypotheses: frozenset[Atom]
    scope: Scope
    steps: tuple[Edge, ...]

    derivable = True

    @property
    def guard_record(self) -> list[tuple[Edge, str]]:
        """Each step with the guard alternative that enabled it ("" when unguarded)."""
        out = []
        for e in self.steps:
            used = next(t for t in e.guard.terms if t <= self.hypotheses)
            out.append((e, "+".join(sorted(a.value for a in used))))
        return out

    def replay(self) -> bool:
        """Check the path composes and every guard holds, without the search."""
        at = self.source
        for e in self.steps:
            if e.source != at or e.scope != self.scope or not e.guard.satisfied(self.hypotheses):
                return False
            at = e.target
        return at == self.target

    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class NotDerivable:
    source: Condition
    target: Condition
    hypotheses: frozenset[Atom]
    scope: Scope
    refutation: object | None = None  # a corpus record

    derivable = False

    def __bool__(self) -> bool:
        return False


class Refutation(Protocol):
    """What the graph needs from a counterexample record."""

    id: str
    context: frozenset[Atom]  # hypothesis atoms the record's model satisfies

    @property
    def holds_set(self) -> frozenset[Condition]: ...

    @property
    def fails_set(self) -> frozenset[Condition]: ...


# --------------------------------------------------------------------------
# The graph
# --------------------------------------------------------------------------


@dataclass
class ImplicationGraph:
    edges: list[Edge]
    literature: list[LiteratureItem] = field(default_factory=list)

    def __post_init__(self):
        tagged = []
        for e in self.edges:
            items = tuple(
                it.item
                for it in self.literature
                if it.kind == "implies" and (it.source, it.target) == (e.source, e.target) and it.guard == e.guard
            )
            tagged.append(Edge(e.source, e.target, e.guard, e.scope, e.provenance, items) if items else e)
        self.edges = sorted(tagged, key=_edge_key)
        self._out: dict[tuple[Scope, Condition], list[Edge]] = {}
        self._in: dict[tuple[Scope, Condition], list[Edge]] = {}
        for e in self.edges:
            self._out.setdefault((e.scope, e.source), []).append(e)
            self._in.setdefault((e.scope, e.target), []).append(e)

    def edges_in(self, scope: Scope | str) -> list[Edge]:
        scope = parse_scope(scope)
        return [e for e in self.edges if e.scope is scope]

    def with_edges(self, extra: Iterable[Edge]) -> "ImplicationGraph":
        return ImplicationGraph(list(self.edges) + list(extra), self.literature)

    def without(self, pred) -> "ImplicationGraph":
        return ImplicationGraph([e for e in self.edges if not pred(e)], self.literature)

    # --- search ----------------------------------------------------------

    def _walk(self, starts, hyps, scope, forward=True):
        index = self._out if forward else self._in
        parent: dict[Condition, Edge | None] = {s: None for s in starts}
        queue = deque(starts)
        while queue:
            c = queue.popleft()
            for e in index.get((scope, c), ()):
                nxt = e.target if forward else e.source
                if nxt not in parent and e.guard.satisfied(hyps):
                    parent[nxt] = e
                    queue.append(nxt)
        return parent

    def closure(self, sources, hypotheses=(), scope: Scope | str = Scope.POINTWISE) -> frozenset[Condition]:
        """Every condition derivable from the given ones (themselves included)."""
        scope = parse_scope(scope)
        starts = _starts(sources, scope)
        return frozenset(self._walk(starts, parse_atoms(hypotheses), scope))

    def ancestors(self, targets, hypotheses=(), scope: Scope | str = Scope.POINTWISE) -> frozenset[Condition]:
        """Every condition from which one of the targets is derivable."""
        scope = parse_scope(scope)
        starts = _starts(targets, scope)
        return frozenset(self._walk(starts, parse_atoms(hypotheses), scope, forward=False))

    def implies(
        self,
        source,
        target,
        hypotheses=(),
        scope: Scope | str = Scope.POINTWISE,
        refutations: Iterable[Refutation] = (),
    ) -> Derivation | NotDerivable:
        scope = parse_scope(scope)
        src, tgt = _starts([source], scope)[0], _starts([target], scope)[0]
        hyps = parse_atoms(hypotheses)
        parent = self._walk([src], hyps, scope)
        if tgt in parent:
            steps = []
            at = tgt
            while parent[at] is not None:
                e = parent[at]
                steps.append(e)
                at = e.source
            return Derivation(src, tgt, hyps, scope, tuple(reversed(steps)))
        ref = self.find_refutation(src, tgt, hyps, scope, refutations)
        return NotDerivable(src, tgt, hyps, scope, ref)

    def covers(self, record: Refutation, source, target, hypotheses=(), scope=Scope.GLOBAL) -> bool:
        """Whether the record's model shows that source does not imply target.

        The model satisfies every condition derivable from its holding ones and
        fails every condition from which a failing one is derivable, using the
        atoms the model satisfies.
        """
        scope = parse_scope(scope)
        hyps = parse_atoms(hypotheses)
        if not hyps <= record.context:
            return False
        if scope is Scope.POINTWISE and (source.global_only or target.global_only):
            return False
        holds = self.closure(_in_scope(record.holds_set, scope), record.context, scope)
        if source not in holds:
            return False
        fails = self.ancestors(_in_scope(record.fails_set, scope), record.context, scope)
        return target in fails

    def find_refutation(self, source, target, hypotheses, scope, refutations: Iterable[Refutation]):
        refutations = sorted(refutations, key=lambda r: r.id)
        exact = [r for r in refutations if source in r.holds_set and target in r.fails_set]
        for r in exact + [r for r in refutations if r not in exact]:
            if self.covers(r, source, target, hypotheses, scope):
                return r
        return None

    # --- export ----------------------------------------------------------

    def export_dot(self, scope: Scope | str = Scope.POINTWISE, hypotheses=()) -> str:
        """DOT digraph; edges whose guard the hypotheses do not satisfy are dashed."""
        scope = parse_scope(scope)
        hyps = parse_atoms(hypotheses)
        hyp_text = ", ".join(sorted(a.value for a in hyps)) or "none"
        lines = [f'digraph "{scope}" {{', f'  label="{scope} implications; hypotheses: {hyp_text}";', "  node [shape=box];"]
        for c in sorted(ORDER, key=lambda c: c.value):
            lines.append(f'  "{c}";')
        for e in sorted(self.edges_in(scope), key=lambda e: (e.source.value, e.target.value, e.guard.label())):
            attrs = []
            if not e.guard.unguarded:
                attrs.append(f'label="{e.guard.label()}"')
            if not e.guard.satisfied(hyps):
                attrs.append("style=dashed")
            tail = f" [{', '.join(attrs)}]" if attrs else ""
            lines.append(f'  "{e.source}" -> "{e.target}"{tail};')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _edge_key(e: Edge):
    return (e.scope.value, ORDER.index(e.source), ORDER.index(e.target), e.guard.label())


def _starts(conds, scope: Scope) -> list[Condition]:
    out = []
    for c in conds:
        c = parse_condition(c)
        if scope is Scope.POINTWISE and c.global_only:
            raise GlobalOnlyCondition(f"{c} has no pointwise meaning; use the global scope")
        out.append(c)
    return out


def _in_scope(conds, scope: Scope):
    return [c for c in conds if scope is Scope.GLOBAL or not c.global_only]


def seed_edges(scope: Scope | str | None = None) -> list[Edge]:
    """The shipped edge table, optionally restricted to one scope."""
    g = load_graph()
    return g.edges if scope is None else g.edges_in(scope)


def load_graph(edge_text: str | None = None) -> ImplicationGraph:
    text = data_text("edges.txt") if edge_text is None else edge_text
    return ImplicationGraph(parse_edges(text), load_literature())


# --------------------------------------------------------------------------
# Consistency audit
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    record: str
    source: Condition
    target: Condition
    scope: Scope
    derivation: Derivation


@dataclass(frozen=True)
class AuditReport:
    violations: tuple[Violation, ...]
    gaps: tuple[tuple[Condition, Condition], ...]
    unsupported: tuple[LiteratureItem, ...]  # literature implications the graph cannot derive
    pairs: int
    derivable: int
    covered: int

    @property
    def clean(self) -> bool:
        return not (self.violations or self.gaps or self.unsupported)


def audit_consistency(graph: ImplicationGraph, records: Iterable[Refutation]) -> AuditReport:
    """Soundness against the records, and coverage of the unguarded global diagram."""
    records = sorted(records, key=lambda r: r.id)
    violations = []
    for r in records:
        for scope in Scope:
            holds = _in_scope(r.holds_set, scope)
            derived = graph.closure(holds, r.context, scope)
            for t in sorted(_in_scope(r.fails_set, scope), key=ORDER.index):
                if t in derived:
                    src = next(s for s in sorted(holds, key=ORDER.index) if t in graph.closure([s], r.context, scope))
                    d = graph.implies(src, t, r.context, scope)
                    violations.append(Violation(r.id, src, t, scope, d))

    # coverage: per record, the pairs it separates under no hypotheses
    separated = set()
    for r in records:
        holds = graph.closure(r.holds_set, r.context, Scope.GLOBAL)
        fails = graph.ancestors(r.fails_set, r.context, Scope.GLOBAL)
        separated |= {(a, b) for a in holds for b in fails}
    gaps, derivable, covered = [], 0, 0
    for a in ORDER:
        reach = graph.closure([a], (), Scope.GLOBAL)
        for b in ORDER:
            if a == b:
                continue
            if b in reach:
                derivable += 1
            elif (a, b) in separated:
                covered += 1
            else:
                gaps.append((a, b))

    unsupported = [
        it
        for it in graph.literature
        if it.kind == "implies" and not _literature_derivable(graph, it)
    ]
    return AuditReport(
        tuple(violations), tuple(gaps), tuple(unsupported), len(ORDER) * (len(ORDER) - 1), derivable, covered
    )


def _literature_derivable(graph: ImplicationGraph, it: LiteratureItem) -> bool:
    # a guarded item is checked under each of its alternatives
    return all(graph.implies(it.source, it.target, term, it.scope).derivable for term in it.guard.terms)


__all__ = [
    "NONE",
    "AuditReport",
    "Derivation",
    "Edge",
    "Guard",
    "ImplicationGraph",
    "LiteratureItem",
    "NotDerivable",
    "Scope",
    "TableError",
    "Violation",
    "audit_consistency",
    "load_graph",
    "load_literature",
    "parse_edges",
    "parse_literature",
    "parse_scope",
    "seed_edges",
]
