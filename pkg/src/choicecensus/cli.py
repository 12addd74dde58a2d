"""Command-line interface: ``choice-census <command> [options]``.

Commands
    census      classify every normalized choice and print the count table
    classify    verdicts of one choice under the selected models
    witness     the witness (or counterexample) behind each verdict, as JSON
    switches    the switches of a choice, with their base menus
    canon       greedy or lexicographically minimal canonical form
    iso         isomorphism test between two choices (exit 3 when negative)
    export-dot  the binary-choice tournament as a DOT digraph

A CHOICE argument is a path to a JSON choice object, ``-`` for stdin,
``fixture:NAME`` for a bundled example, or ``compact:a.a.e.b.b.d.a.b.d.b.b``.

Exit codes: 0 success, 1 input error, 2 internal consistency failure,
3 negative isomorphism result.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .census import (
    audit_modes,
    audit_witnesses,
    census_csv,
    run_census,
    verify_implications,
)
from .core import (
    ChoiceFormatError,
    ChoiceFunction,
    GroundSet,
    canonicalize_greedy,
    canonicalize_min,
    classify_tournament,
    is_isomorphic,
    pair_edges,
    parse_choice,
    parse_compact,
)
from .deciders import (
    CLA_MODES,
    HEADLINE_MODELS,
    MODELS,
    RSM_MODES,
    ModeDisagreement,
    decide,
    list_switches,
)
from .fixtures import load_fixture

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_CONSISTENCY = 2
EXIT_NOT_ISOMORPHIC = 3

# Reserved for interface compatibility; nothing here is random.
SEEDLESS_ENV = "CHOICE_CENSUS_SEEDLESS"

MODE_CHOICES = {"rsm": RSM_MODES, "cla": CLA_MODES}


class InputError(Exception):
    """Bad command line or unreadable input; maps to exit code 1."""


@dataclass
class CliConfig:
    command: str
    n: int = 4
    models: tuple[str, ...] = MODELS
    inputs: tuple[str, ...] = ()
    output: str | None = None
    fmt: str = "table"
    modes: dict[str, str] = field(default_factory=dict)
    jobs: int = 1
    check: bool = False
    witness: bool = False
    method: str = "greedy"

    def __post_init__(self):
        if self.n not in (2, 3, 4):
            raise InputError(f"--n must be 2, 3 or 4, got {self.n}")
        if self.jobs < 1:
            raise InputError("--jobs must be at least 1")
        unknown = [m for m in self.models if m not in MODELS]
        if unknown:
            raise InputError(f"unknown model(s): {', '.join(unknown)}")


# -- argument parsing --------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def parse_models(text: str) -> tuple[str, ...]:
    if text in ("all", ""):
        return MODELS
    if text == "headline":
        return HEADLINE_MODELS
    return tuple(dict.fromkeys(m.strip().lower() for m in text.split(",") if m.strip()))


def parse_modes(values: list[str] | None) -> dict[str, str]:
    """``--mode rsm=axiom``, ``--mode direct`` (model inferred) or ``--mode all``."""
    modes: dict[str, str] = {}
    for value in values or []:
        if "=" in value:
            model, mode = (s.strip() for s in value.split("=", 1))
            if model not in MODE_CHOICES:
                raise InputError(f"model {model!r} has no alternative modes")
            if mode not in MODE_CHOICES[model]:
                raise InputError(f"unknown {model} mode {mode!r}")
            modes[model] = mode
            continue
        owners = [m for m, allowed in MODE_CHOICES.items() if value in allowed]
        if not owners:
            raise InputError(f"unknown mode {value!r}")
        for model in owners:
            modes[model] = value
    return modes


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=4, help="number of items (2-4)")
    common.add_argument(
        "--models", default="all",
        help="comma-separated model names, 'all' or 'headline' (default: all)",
    )
    common.add_argument("--format", dest="fmt", default="table",
                        choices=("table", "json", "csv", "dot"))
    common.add_argument("--output", "-o", help="write to this file instead of stdout")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for census")
    common.add_argument("--check", action="store_true",
                        help="run the consistency audits; exit 2 on any violation")
    common.add_argument("--mode", action="append", metavar="[MODEL=]MODE",
                        help="formulation for rsm (axiom|ec|schedule|all) or cla "
                             "(direct|per_menu|order|all); repeatable")

    parser = _Parser(
        prog="choice-census",
        description="Census of choice functions under bounded-rationality models.",
        epilog=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("census", parents=[common], help="classify all normalized choices")

    p = sub.add_parser("classify", parents=[common], help="verdicts for one choice")
    p.add_argument("choice")
    p.add_argument("--witness", action="store_true", help="include witnesses")

    p = sub.add_parser("witness", parents=[common], help="witnesses for one choice")
    p.add_argument("choice")

    p = sub.add_parser("switches", parents=[common], help="list switches")
    p.add_argument("choice")

    p = sub.add_parser("canon", parents=[common], help="canonical form")
    p.add_argument("choice")
    p.add_argument("--method", choices=("greedy", "min"), default="greedy")

    p = sub.add_parser("iso", parents=[common], help="isomorphism test")
    p.add_argument("choice")
    p.add_argument("other")

    p = sub.add_parser("export-dot", parents=[common], help="tournament as DOT")
    p.add_argument("choice")
    return parser


def config_from_args(args: argparse.Namespace) -> CliConfig:
    inputs = tuple(x for x in (getattr(args, "choice", None), getattr(args, "other", None)) if x)
    return CliConfig(
        command=args.command,
        n=args.n,
        models=parse_models(args.models),
        inputs=inputs,
        output=args.output,
        fmt=args.fmt,
        modes=parse_modes(args.mode),
        jobs=args.jobs,
        check=args.check,
        witness=getattr(args, "witness", False),
        method=getattr(args, "method", "greedy"),
    )


# -- input/output ------------------------------------------------------------

def load_choice(source: str) -> ChoiceFunction:
    try:
        if source.startswith("fixture:"):
            return load_fixture(source.split(":", 1)[1])
        if source.startswith("compact:"):
            return parse_compact(source.split(":", 1)[1])
        if source == "-":
            return parse_choice(sys.stdin.read())
        return parse_choice(Path(source).read_text())
    except KeyError as exc:
        raise InputError(exc.args[0]) from None
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc.strerror}") from None
    except ValueError as exc:
        raise InputError(f"{source}: {exc}") from None


def emit(config: CliConfig, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if config.output:
        try:
            Path(config.output).write_text(text)
        except OSError as exc:
            raise InputError(f"cannot write {config.output}: {exc.strerror}") from None
    else:
        sys.stdout.write(text)


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2)


def _require_format(config: CliConfig, allowed: tuple[str, ...]) -> None:
    if config.fmt not in allowed:
        raise InputError(f"{config.command} supports --format {'|'.join(allowed)}")


# -- commands ----------------------------------------------------------------

def cmd_census(config: CliConfig) -> int:
    _require_format(config, ("table", "json", "csv"))
    g = GroundSet.of_size(config.n)
    records, table = run_census(g, config.models, jobs=config.jobs, modes=config.modes)

    problems: list[str] = []
    if config.check:
        report = verify_implications(records)
        problems += [f"implication {label} fails at #{i}" for i, label in report.violations]
        problems += [f"{model} modes disagree at #{i}: {msg}" for i, model, msg in audit_modes(records)]
        problems += [f"{model} witness does not replay at #{i}" for i, model in audit_witnesses(records)]
        for note in report.notes:
            print(f"note: {note}", file=sys.stderr)

    if config.fmt == "csv":
        emit(config, census_csv(records))
    elif config.fmt == "json":
        emit(config, _dumps(table.to_json()))
    else:
        emit(config, table.format_table())

    if problems:
        for line in problems:
            print(f"check failed: {line}", file=sys.stderr)
        return EXIT_CONSISTENCY
    if config.check:
        print(f"check passed: {len(records)} choices", file=sys.stderr)
    return EXIT_OK


def _verdicts(config: CliConfig, c: ChoiceFunction):
    return {m: decide(c, m, config.modes.get(m)) for m in config.models}


def cmd_classify(config: CliConfig) -> int:
    _require_format(config, ("table", "json"))
    c = load_choice(config.inputs[0])
    verdicts = _verdicts(config, c)
    if config.fmt == "json":
        out = {"choice": c.compact(), "verdicts": {}}
        for m, v in verdicts.items():
            out["verdicts"][m] = v.to_json(c.ground) if config.witness else v.holds
        emit(config, _dumps(out))
        return EXIT_OK
    width = max(len(m) for m in verdicts)
    lines = [f"choice {c.compact()}"]
    for m, v in verdicts.items():
        line = f"  {m.ljust(width)}  {'yes' if v.holds else 'no'}"
        if config.witness:
            detail = v.to_json(c.ground)
            extra = detail["witness"] if v.holds else detail["counterexample"]
            if extra is not None:
                line += "  " + json.dumps(extra, separators=(",", ":"))
        lines.append(line)
    emit(config, "\n".join(lines))
    return EXIT_OK


def cmd_witness(config: CliConfig) -> int:
    c = load_choice(config.inputs[0])
    verdicts = _verdicts(config, c)
    out = {"choice": c.compact(), "verdicts": {m: v.to_json(c.ground) for m, v in verdicts.items()}}
    emit(config, _dumps(out))
    return EXIT_OK


def cmd_switches(config: CliConfig) -> int:
    _require_format(config, ("table", "json"))
    c = load_choice(config.inputs[0])
    switches = list_switches(c)
    if config.fmt == "json":
        emit(config, _dumps([s.to_json(c.ground) for s in switches]))
        return EXIT_OK
    g = c.ground
    lines = [f"{len(switches)} switch(es) in {c.compact()}"]
    for s in switches:
        lines.append(
            f"  ({g.label(s.before)}, {g.label(s.after)}, {g.label(s.removed)})"
            f"  base menu {g.menu_label(s.base_menu)}"
        )
    emit(config, "\n".join(lines))
    return EXIT_OK


def cmd_canon(config: CliConfig) -> int:
    _require_format(config, ("table", "json"))
    c = load_choice(config.inputs[0])
    if config.method == "greedy":
        canon, perm = canonicalize_greedy(c)
        relabel = perm.describe(c.ground)
    else:
        canon = canonicalize_min(c)
        relabel = is_isomorphic(c, canon)[1].describe(c.ground)
    if config.fmt == "json":
        emit(config, _dumps({"method": config.method, "canonical": canon.compact(),
                             "relabeling": relabel}))
    else:
        arrows = ", ".join(f"{k}->{v}" for k, v in relabel.items())
        emit(config, f"{canon.compact()}\nrelabeling: {arrows}")
    return EXIT_OK


def cmd_iso(config: CliConfig) -> int:
    _require_format(config, ("table", "json"))
    c, c2 = (load_choice(s) for s in config.inputs)
    if c.n != c2.n:
        raise InputError("choices have different numbers of items")
    same, perm = is_isomorphic(c, c2)
    relabel = perm.describe(c.ground) if same else None
    if config.fmt == "json":
        emit(config, _dumps({"isomorphic": same, "relabeling": relabel}))
    elif same:
        emit(config, "isomorphic: " + ", ".join(f"{k}->{v}" for k, v in relabel.items()))
    else:
        emit(config, "not isomorphic")
    return EXIT_OK if same else EXIT_NOT_ISOMORPHIC


def tournament_dot(c: ChoiceFunction) -> str:
    """The binary-choice tournament; edges point from winner to loser."""
    g = c.ground
    tag = str(classify_tournament(c)) if c.n == 4 else "unclassified"
    lines = [
        "digraph tournament {",
        f"  // class: {tag}",
        f"  // choice: {c.compact()}",
    ]
    lines += [f"  {g.label(x)};" for x in range(c.n)]
    lines += [f"  {g.label(w)} -> {g.label(l)};" for w, l in pair_edges(c)]
    lines.append("}")
    return "\n".join(lines)


def cmd_export_dot(config: CliConfig) -> int:
    _require_format(config, ("table", "dot"))
    emit(config, tournament_dot(load_choice(config.inputs[0])))
    return EXIT_OK


COMMANDS = {
    "census": cmd_census,
    "classify": cmd_classify,
    "witness": cmd_witness,
    "switches": cmd_switches,
    "canon": cmd_canon,
    "iso": cmd_iso,
    "export-dot": cmd_export_dot,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = config_from_args(args)
        return COMMANDS[config.command](config)
    except InputError as exc:
        print(f"choice-census: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ChoiceFormatError as exc:
        print(f"choice-census: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ModeDisagreement as exc:
        print(f"choice-census: consistency failure: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY


if __name__ == "__main__":
    sys.exit(main())
