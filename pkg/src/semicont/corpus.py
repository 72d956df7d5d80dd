"""Counterexample records and their verification.

Machine-checked records carry a model and expected verdicts that the
checkers must reproduce.  Cited records describe models on spaces
that are not executed here (countable complement, quotient, weak and
product topologies) and carry only the refuted pairs.  Literature
non-implications become cited records on load.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import yaml

from ._data import data_text
from .conditions import check_at, check_global, parse_atoms, parse_condition
from .conditions.catalog import Atom, Condition
from .conditions.real import uniform_violation
from .extreal import ExtReal
from .formats import ModelFormatError, model_from_dict, number
from .graph import load_literature
from .piecewise import PiecewiseFn
from .topology import FiniteModel

MACHINE = "machine-checked"
CITED = "paper-cited"
TIERS = (MACHINE, CITED)


class CorpusError(ValueError):
    """A malformed record."""


class NotExecutable(ValueError):
    """Verification was requested for a record without a model."""


@dataclass(frozen=True)
class Expectation:
    condition: Condition
    point: object  # None for a global verdict
    holds: bool
    witness: str | None = None  # fragment the reported witness must contain

    def describe(self) -> str:
        where = "global" if self.point is None else f"at {self.point}"
        return f"{self.condition} {where} {'holds' if self.holds else 'fails'}"


@dataclass(frozen=True)
class CounterexampleRecord:
    id: str
    tier: str
    refutes: tuple[tuple[Condition, Condition], ...]
    context: frozenset[Atom]
    provenance: str
    model: FiniteModel | PiecewiseFn | None = None
    expected: tuple[Expectation, ...] = ()
    citation: str = ""
    doc: str = ""
    uniform_grid: int = 0  # check the uniform-threshold failure for a = 1/k, k <= this
    literature_item: int | None = None

    @property
    def holds_set(self) -> frozenset[Condition]:
        out = {a for a, _ in self.refutes}
        out |= {e.condition for e in self.expected if e.point is None and e.holds}
        return frozenset(out)

    @property
    def fails_set(self) -> frozenset[Condition]:
        out = {b for _, b in self.refutes}
        out |= {e.condition for e in self.expected if not e.holds}
        return frozenset(out)

    @property
    def sources(self) -> frozenset[Condition]:
        return frozenset(a for a, _ in self.refutes)

    @property
    def targets(self) -> frozenset[Condition]:
        return frozenset(b for _, b in self.refutes)


@dataclass(frozen=True)
class Outcome:
    expectation: Expectation
    ok: bool
    detail: str


@dataclass(frozen=True)
class VerifyReport:
    record: str
    outcomes: tuple[Outcome, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(o.ok for o in self.outcomes)


# --------------------------------------------------------------------------
# Loading
# --------------------------------------------------------------------------


def _point(model, raw, where):
    if raw == "global":
        return None
    if isinstance(model, FiniteModel):
        return str(raw)
    n = number(raw, where)
    if not n.is_finite:
        raise CorpusError(f"{where}: points must be finite")
    return n.fraction


def record_from_dict(data: dict) -> CounterexampleRecord:
    rid = str(data.get("id", "?"))
    where = f"record {rid}"
    tier = data.get("tier")
    if tier not in TIERS:
        raise CorpusError(f"{where}: tier must be one of {TIERS}")
    try:
        refutes = tuple((parse_condition(a), parse_condition(b)) for a, b in data.get("refutes") or [])
        context = parse_atoms(data.get("context") or [])
    except (KeyError, ValueError, TypeError) as exc:
        raise CorpusError(f"{where}: {exc}") from None
    if not refutes:
        raise CorpusError(f"{where}: a record refutes at least one pair")
    model = None
    expected = []
    if tier == MACHINE:
        if "model" not in data or not data.get("expected"):
            raise CorpusError(f"{where}: machine-checked records need a model and expected verdicts")
        try:
            model = model_from_dict(data["model"], f"{where}.model")
        except ModelFormatError as exc:
            raise CorpusError(str(exc)) from None
        for i, row in enumerate(data["expected"]):
            loc = f"{where}.expected[{i}]"
            if not isinstance(row, list) or len(row) not in (3, 4) or not isinstance(row[2], bool):
                raise CorpusError(f"{loc}: expected [condition, point or global, true/false, witness?]")
            try:
                cond = parse_condition(row[0])
            except KeyError as exc:
                raise CorpusError(f"{loc}: {exc}") from None
            expected.append(Expectation(cond, _point(model, row[1], loc), row[2], row[3] if len(row) == 4 else None))
        holds = {e.condition for e in expected if e.point is None and e.holds}
        fails = {e.condition for e in expected if not e.holds}
        for a, b in refutes:
            if a not in holds or b not in fails:
                raise CorpusError(f"{where}: expected verdicts must show {a} holding and {b} failing")
    return CounterexampleRecord(
        rid,
        tier,
        refutes,
        context,
        str(data.get("provenance", "")),
        model,
        tuple(expected),
        str(data.get("citation", "")),
        " ".join(str(data.get("doc", "")).split()),
        int(data.get("uniform_grid", 0)),
    )


def literature_records() -> list[CounterexampleRecord]:
    out = []
    for it in load_literature():
        if it.kind != "refutes":
            continue
        out.append(
            CounterexampleRecord(
                f"LIT-{it.item:02d}",
                CITED,
                ((it.source, it.target),),
                frozenset(),
                f"literature item {it.item}: some f is {it.source} but not {it.target}",
                citation=it.citation,
                literature_item=it.item,
            )
        )
    return out


def parse_corpus(text: str) -> list[CounterexampleRecord]:
    data = yaml.safe_load(text) or []
    if not isinstance(data, list):
        raise CorpusError("a corpus file is a list of records")
    records = [record_from_dict(d) for d in data]
    seen = set()
    for r in records:
        if r.id in seen:
            raise CorpusError(f"duplicate record id {r.id}")
        seen.add(r.id)
    return records


def load_corpus(extra_text: str | None = None) -> list[CounterexampleRecord]:
    """Shipped records, literature records, and optionally user records."""
    records = parse_corpus(data_text("corpus.yaml")) + literature_records()
    if extra_text:
        records += parse_corpus(extra_text)
    ids = [r.id for r in records]
    if len(set(ids)) != len(ids):
        raise CorpusError("record ids must be unique across the corpus")
    return sorted(records, key=lambda r: r.id)


def list_records(
    records=None,
    tier: str | None = None,
    source=None,
    target=None,
    provenance: str | None = None,
) -> list[CounterexampleRecord]:
    """Filter records.  ``provenance`` matches "literature" or a substring of the provenance text."""
    records = load_corpus() if records is None else records
    out = []
    for r in records:
        if tier and r.tier != tier:
            continue
        if source and parse_condition(source) not in r.sources:
            continue
        if target and parse_condition(target) not in r.targets:
            continue
        if provenance:
            if provenance.lower() == "literature":
                if r.literature_item is None:
                    continue
            elif provenance.lower() not in r.provenance.lower():
                continue
        out.append(r)
    return out


# --------------------------------------------------------------------------
# Verification
# --------------------------------------------------------------------------


def verify(record: CounterexampleRecord) -> VerifyReport:
    """Reproduce every expected verdict of a machine-checked record."""
    if record.tier != MACHINE or record.model is None:
        raise NotExecutable(f"{record.id} is {record.tier}; it has no model to check")
    outcomes = []
    for e in record.expected:
        v = check_global(e.condition, record.model) if e.point is None else check_at(e.condition, record.model, e.point)
        ok = v.holds == e.holds
        detail = f"got {'holds' if v.holds else 'fails'}"
        if v.witness:
            detail += f"; {v.witness}"
        if ok and e.witness is not None and e.witness not in (v.witness or ""):
            ok = False
            detail += f"; witness does not mention {e.witness!r}"
        outcomes.append(Outcome(e, ok, detail))
    if record.uniform_grid:
        outcomes.extend(_uniform_grid(record))
    return VerifyReport(record.id, tuple(outcomes))


def _uniform_grid(record: CounterexampleRecord) -> list[Outcome]:
    # every threshold a = 1/k must admit a violating point and approach
    fn = record.model
    misses = []
    for k in range(1, record.uniform_grid + 1):
        a = ExtReal(Fraction(1, k))
        if uniform_violation(fn, a) is None:
            misses.append(k)
    exp = Expectation(Condition.UBSLSCA, None, False, None)
    if misses:
        return [Outcome(exp, False, f"no violation found for a = 1/k with k in {misses}")]
    return [Outcome(exp, True, f"a violation exists for every a = 1/k, k <= {record.uniform_grid}")]


def verify_all(records=None) -> list[VerifyReport]:
    records = load_corpus() if records is None else records
    return [verify(r) for r in records if r.tier == MACHINE]


__all__ = [
    "CITED",
    "MACHINE",
    "CorpusError",
    "CounterexampleRecord",
    "Expectation",
    "NotExecutable",
    "Outcome",
    "VerifyReport",
    "list_records",
    "literature_records",
    "load_corpus",
    "parse_corpus",
    "record_from_dict",
    "verify",
    "verify_all",
]
