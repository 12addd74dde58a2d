"""Classification of every normalized choice and the derived count tables."""
from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

from .core import (
    CLASS_ORDER,
    ChoiceFunction,
    GroundSet,
    TournamentClass,
    classify_tournament,
    enumerate_normalized,
)
from .deciders import DECIDERS, HEADLINE_MODELS, MODELS, ModeDisagreement, ModelVerdict, decide
from .replay import replay

CSV_COLUMNS = ("index", "compact", "class") + MODELS


@dataclass(frozen=True)
class CensusRecord:
    index: int
    choice: ChoiceFunction
    tournament: TournamentClass | None
    verdicts: dict[str, ModelVerdict]

    @property
    def compact(self) -> str:
        return self.choice.compact()

    def holds(self, model: str) -> bool:
        return self.verdicts[model].holds


@dataclass(frozen=True)
class CountTable:
    n: int
    total: int
    counts: dict[str, int]
    by_class: dict[str, tuple[int, ...]] = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"n": self.n, "total": self.total, "counts": dict(self.counts)}
        if self.by_class:
            out["class_order"] = [str(k) for k in CLASS_ORDER]
            out["by_class"] = {m: list(v) for m, v in self.by_class.items()}
        return out

    def format_table(self) -> str:
        ordered = [m for m in HEADLINE_MODELS if m in self.counts]
        ordered += [m for m in self.counts if m not in ordered]
        width = max(len(m) for m in ordered)
        lines = [f"n={self.n}  non-isomorphic choices: {self.total}"]
        lines.append("  ".join(m.upper().rjust(max(len(m), 3)) for m in ordered))
        lines.append("  ".join(str(self.counts[m]).rjust(max(len(m), 3)) for m in ordered))
        if self.by_class:
            lines.append("")
            lines.append("per tournament class (" + ", ".join(str(k) for k in CLASS_ORDER) + "):")
            for m in ordered:
                if m in self.by_class:
                    lines.append(f"  {m.ljust(width)}  {self.by_class[m]}")
        return "\n".join(lines)


def classify_choice(
    index: int, c: ChoiceFunction, models: Sequence[str], modes: Mapping[str, str] | None = None
) -> CensusRecord:
    modes = modes or {}
    tournament = classify_tournament(c) if c.n == 4 else None
    return CensusRecord(index, c, tournament, {m: decide(c, m, modes.get(m)) for m in models})


def _classify_chunk(args) -> list[CensusRecord]:
    g, models, modes, start, stop = args
    out = []
    for i, c in enumerate(enumerate_normalized(g)):
        if i >= stop:
            break
        if i >= start:
            out.append(classify_choice(i, c, models, modes))
    return out


def run_census(
    g: GroundSet,
    models: Iterable[str] = MODELS,
    jobs: int = 1,
    modes: Mapping[str, str] | None = None,
) -> tuple[list[CensusRecord], CountTable]:
    """Classify every normalized choice on ``g`` under ``models``.

    ``modes`` selects a formulation for the models that have several
    (``rsm``, ``cla``).  With ``jobs > 1`` the enumeration is split into
    contiguous index ranges handled by worker processes; records come back in
    enumeration order either way.
    """
    models = tuple(models)
    unknown = set(models) - set(DECIDERS)
    if unknown:
        raise ValueError(f"unknown models: {sorted(unknown)}")
    models = tuple(m for m in MODELS if m in set(models))
    modes = dict(modes or {})
    if jobs <= 1:
        records = [
            classify_choice(i, c, models, modes) for i, c in enumerate(enumerate_normalized(g))
        ]
    else:
        total = sum(1 for _ in enumerate_normalized(g))
        step = -(-total // jobs)
        chunks = [(g, models, modes, s, min(s + step, total)) for s in range(0, total, step)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = [r for part in pool.map(_classify_chunk, chunks) for r in part]
        records.sort(key=lambda r: r.index)
    return records, count_table(records, g.n, models)


def count_table(records: Sequence[CensusRecord], n: int, models: Sequence[str]) -> CountTable:
    counts = {m: sum(r.holds(m) for r in records) for m in models}
    by_class = {}
    if n == 4:
        by_class = {m: class_breakdown(records, m) for m in models}
    return CountTable(n=n, total=len(records), counts=counts, by_class=by_class)


def class_breakdown(records: Sequence[CensusRecord], model: str) -> tuple[int, ...]:
    """Holders of ``model`` per tournament class, in ``CLASS_ORDER``."""
    return tuple(
        sum(1 for r in records if r.tournament is k and r.holds(model)) for k in CLASS_ORDER
    )


# -- audits ------------------------------------------------------------------

Flags = dict[str, bool]


def _implies(premise: str, conclusion: str) -> tuple[str, tuple[str, ...], Callable[[Flags], bool]]:
    return (
        f"{premise} => {conclusion}",
        (premise, conclusion),
        lambda f: not f[premise] or f[conclusion],
    )


IMPLICATIONS = [
    *(_implies("rationalizable", m) for m in HEADLINE_MODELS),
    _implies("lr", "rgt"),
    _implies("rgt", "sr"),
    _implies("rsm", "sr"),
    _implies("cls", "sr"),
    _implies("sqb", "sr"),
    _implies("sr", "ac"),
    _implies("rsm", "wwarp"),
    _implies("rsm", "gamma"),
    ("wwarp & gamma => rsm", ("wwarp", "gamma", "rsm"),
     lambda f: not (f["wwarp"] and f["gamma"]) or f["rsm"]),
    _implies("rsm", "ec"),
    _implies("ec", "rsm"),
    _implies("rgt", "ws"),
    _implies("rgt", "dc"),
    ("ws & dc => rgt", ("ws", "dc", "rgt"), lambda f: not (f["ws"] and f["dc"]) or f["rgt"]),
    _implies("esqb", "sqb"),
    _implies("wsqb", "sqb"),
    ("sqb => esqb | wsqb", ("sqb", "esqb", "wsqb"),
     lambda f: not f["sqb"] or f["esqb"] or f["wsqb"]),
]


@dataclass
class AuditReport:
    violations: list[tuple[int, str]] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    checked: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "checked": self.checked,
            "violations": [{"index": i, "check": label} for i, label in self.violations],
            "notes": self.notes,
        }


def verify_implications(records: Sequence[CensusRecord]) -> AuditReport:
    report = AuditReport()
    if not records:
        return report
    present = set(records[0].verdicts)
    active = [(label, fn) for label, needed, fn in IMPLICATIONS if set(needed) <= present]
    report.checked = [label for label, _ in active]
    for r in records:
        flags = {m: v.holds for m, v in r.verdicts.items()}
        for label, fn in active:
            if not fn(flags):
                report.violations.append((r.index, label))
    if {"sr", "cls"} <= present:
        sr = sum(r.holds("sr") for r in records)
        cls = sum(r.holds("cls") for r in records)
        if sr == cls and records[0].choice.n == 4:
            report.notes.append(f"expected equality on four items: SR = CLS = {sr}")
    return report


def audit_modes(records: Sequence[CensusRecord]) -> list[tuple[int, str, str]]:
    """Records where equivalent RSM or CLA formulations disagree."""
    problems = []
    for r in records:
        for model in ("rsm", "cla"):
            try:
                decide(r.choice, model, "all")
            except ModeDisagreement as exc:
                problems.append((r.index, model, str(exc)))
    return problems


def audit_witnesses(records: Sequence[CensusRecord]) -> list[tuple[int, str]]:
    return [
        (r.index, m)
        for r in records
        for m, v in r.verdicts.items()
        if not replay(r.choice, v)
    ]


WWARP_CASES = ("I", "II", "III", "IV")


def wwarp_failure_census(records: Sequence[CensusRecord]) -> dict[str, dict[str, int]]:
    """Group four-item records by how many of c(ab), c(ad), c(ae) equal a.

    Case I is exactly one, II exactly two, III all three, IV none.
    """
    by_hits = {1: "I", 2: "II", 3: "III", 0: "IV"}
    out = {case: {"choices": 0, "failures": 0} for case in WWARP_CASES}
    for r in records:
        c = r.choice
        if c.n != 4:
            raise ValueError("the WWARP case split is defined for four items")
        hits = sum(c(0b0001 | (1 << y)) == 0 for y in (1, 2, 3))
        case = out[by_hits[hits]]
        case["choices"] += 1
        case["failures"] += not r.holds("wwarp")
    return out


# -- output ------------------------------------------------------------------

def census_csv(records: Sequence[CensusRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in records:
        row = [r.index, r.compact, str(r.tournament) if r.tournament else ""]
        row += [int(r.holds(m)) if m in r.verdicts else "" for m in MODELS]
        writer.writerow(row)
    return buf.getvalue()

