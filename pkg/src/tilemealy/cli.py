"""Command-line front end.

Every command builds one JSON-serializable report; ``--format text`` prints the
same report as ``key: value`` lines.  Exit codes: 0 success, 1 negative answer
or failed check, 2 input error, 3 budget exhausted.
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass, field

from tilemealy import __version__
from tilemealy._kernels import CapExceeded
from tilemealy.mealy import MealyError, ParseError, format_automaton, parse_automaton
from tilemealy.reduction import (Budgets, NotNWDeterministic, PreconditionError, add_sink,
                                 build_reduction, semidecide, verify_claim, verify_lemma1)
from tilemealy.render import tiling_svg
from tilemealy.semigroup import Budget, enumerate_semigroup, order_search
from tilemealy.tiles import (find_torus_tiling, is_nw_deterministic, least_untileable_n,
                             parse_tileset, tile_rectangle, tiling_from_json, validate_tiling)

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3
DEFAULT_SEED = 20130101


def _default_budget() -> int | None:
    raw = os.environ.get("TILEMEALY_DEFAULT_BUDGET")
    if raw is None:
        return None
    value = int(raw)
    if value < 1:
        raise ValueError("TILEMEALY_DEFAULT_BUDGET must be positive")
    return value


@dataclass
class RunConfig:
    command: str
    inputs: list = field(default_factory=list)
    max_elements: int = 10_000
    max_power_states: int = 100_000
    node_budget: int = 1_000_000
    max_n: int = 8
    max_px: int = 6
    max_py: int = 6
    L: int | None = None
    M: int = 4
    N: int = 4
    seed: int = DEFAULT_SEED
    json_path: str | None = None
    svg_path: str | None = None
    format: str = "json"

    def __post_init__(self):
        for name in ("max_elements", "max_power_states", "node_budget", "max_px", "max_py"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.max_n < 0:
            raise ValueError("max_n must be nonnegative")


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def _tileset(path):
    try:
        return parse_tileset(_read(path))
    except ParseError as exc:
        raise InputError(f"{path}: {exc}") from None


def _automaton(path):
    try:
        return parse_automaton(_read(path))
    except (ParseError, MealyError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _state_word(machine, text: str) -> list[str]:
    word = [s for s in re.split(r"[\s,]+", text.strip()) if s]
    if not word:
        raise InputError("state word must be nonempty")
    for s in word:
        if s not in machine.states:
            raise InputError(f"unknown state {s!r}")
    return word


def _emit_svg(cfg, tileset, tiling):
    if cfg.svg_path and tiling is not None:
        with open(cfg.svg_path, "w", encoding="utf-8") as fh:
            fh.write(tiling_svg(tileset, tiling))


# -- commands: each returns (report, exit code) ------------------------------------

def cmd_nw_check(cfg):
    ts = _tileset(cfg.inputs[0])
    clash = is_nw_deterministic(ts)
    if clash:
        return {"command": "nw-check", "nw_deterministic": False, "conflict": list(clash)}, EXIT_NO
    return {"command": "nw-check", "nw_deterministic": True}, EXIT_OK


def cmd_tile(cfg):
    ts = _tileset(cfg.inputs[0])
    width, height = cfg.inputs[1], cfg.inputs[2]
    if width < 1 or height < 1:
        raise InputError("rectangle dimensions must be >= 1")
    res = tile_rectangle(ts, width, height, cfg.node_budget)
    _emit_svg(cfg, ts, res.tiling)
    report = {"command": "tile", "width": width, "height": height, **res.to_json()}
    return report, EXIT_BUDGET if res.status == "budget_exceeded" else EXIT_OK


def cmd_torus(cfg):
    ts = _tileset(cfg.inputs[0])
    res = find_torus_tiling(ts, cfg.max_px, cfg.max_py, cfg.node_budget)
    _emit_svg(cfg, ts, res.tiling)
    report = {"command": "torus", "max_px": cfg.max_px, "max_py": cfg.max_py, **res.to_json()}
    return report, EXIT_BUDGET if res.status == "budget_exceeded" else EXIT_OK


def cmd_least_n(cfg):
    ts = _tileset(cfg.inputs[0])
    res = least_untileable_n(ts, cfg.max_n, cfg.node_budget)
    report = {"command": "least-n", "max_n": cfg.max_n, **res.to_json()}
    return report, EXIT_BUDGET if res.status == "budget_exceeded" else EXIT_OK


def cmd_reduce(cfg, out_path=None, sink=False):
    ts = _tileset(cfg.inputs[0])
    try:
        red = build_reduction(ts)
    except NotNWDeterministic as exc:
        return {"command": "reduce", "error": str(exc), "conflict": list(exc.pair)}, EXIT_NO
    machine = add_sink(red) if sink else red.machine
    text = format_automaton(machine)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
        return {"command": "reduce", "output": out_path, "states": list(machine.states),
                "alphabet": list(machine.alphabet)}, EXIT_OK
    return text, EXIT_OK


def _budget(cfg):
    return Budget(max_elements=cfg.max_elements, max_power_states=cfg.max_power_states)


def cmd_enumerate(cfg):
    m = _automaton(cfg.inputs[0])
    verdict = enumerate_semigroup(m, _budget(cfg))
    report = {"command": "enumerate", **verdict.to_json()}
    return report, EXIT_OK if verdict.verdict == "finite" else EXIT_BUDGET


def cmd_order(cfg):
    m = _automaton(cfg.inputs[0])
    f, g = _state_word(m, cfg.inputs[1]), _state_word(m, cfg.inputs[2])
    try:
        res = order_search(m, f, g, max(cfg.max_n, 1), _budget(cfg))
    except CapExceeded:
        return {"command": "order", "f": f, "g": g, "status": "budget_exceeded"}, EXIT_BUDGET
    report = {"command": "order", "f": f, "g": g, "max_n": max(cfg.max_n, 1), **res.to_json()}
    return report, EXIT_OK if res.n is not None else EXIT_NO


def _nw_reduction(ts):
    try:
        return build_reduction(ts)
    except NotNWDeterministic as exc:
        raise InputError(str(exc)) from None


def cmd_verify_lemma1(cfg):
    ts = _tileset(cfg.inputs[0])
    red = _nw_reduction(ts)
    search = find_torus_tiling(ts, cfg.max_px, cfg.max_py, cfg.node_budget)
    if search.status != "found":
        return {"command": "verify-lemma1", "status": "unknown", "torus_search": search.to_json()}, EXIT_BUDGET
    report = verify_lemma1(red, search.tiling, cfg.M, cfg.N, cfg.L, _budget(cfg))
    report = {"command": "verify-lemma1", "torus": search.tiling.to_json(), **report}
    return report, EXIT_OK if report["pass"] else EXIT_NO


def cmd_verify_claim(cfg, mode="exhaustive", samples=10_000):
    ts = _tileset(cfg.inputs[0])
    red = _nw_reduction(ts)
    least = least_untileable_n(ts, cfg.max_n, cfg.node_budget)
    if least.status != "found":
        return {"command": "verify-claim", "status": "unknown", "least_n": least.to_json()}, EXIT_BUDGET
    L = cfg.L if cfg.L is not None else 3
    try:
        report = verify_claim(red, least.n, L, mode=mode, count=samples, seed=cfg.seed,
                              node_budget=cfg.node_budget)
    except PreconditionError as exc:
        return {"command": "verify-claim", "status": "error", "error": str(exc)}, EXIT_INPUT
    report = {"command": "verify-claim", "least_n": least.to_json(), **report}
    return report, EXIT_OK if report["pass"] else EXIT_NO


def cmd_semidecide(cfg):
    ts = _tileset(cfg.inputs[0])
    red_check = is_nw_deterministic(ts)
    if red_check:
        raise InputError(f"tile set is not NW-deterministic: {red_check[0]!r}, {red_check[1]!r}")
    budgets = Budgets(node_budget=cfg.node_budget, max_n=max(cfg.max_n, 1), max_px=cfg.max_px,
                      max_py=cfg.max_py, max_elements=cfg.max_elements,
                      max_power_states=cfg.max_power_states, lemma_m=max(cfg.M, 1),
                      lemma_n=max(cfg.N, 1))
    report = {"command": "semidecide", **semidecide(ts, budgets)}
    return report, EXIT_BUDGET if report["status"] == "unknown" else EXIT_OK


def cmd_render(cfg):
    ts = _tileset(cfg.inputs[0])
    try:
        data = json.loads(_read(cfg.inputs[1]))
    except json.JSONDecodeError as exc:
        raise InputError(f"{cfg.inputs[1]}: {exc}") from None
    # accept either a bare tiling or a tile/torus report holding one
    data = data.get("tiling", data) or {}
    if "rows" not in data:
        raise InputError("no tiling found in JSON input")
    tiling = tiling_from_json(data)
    violations = validate_tiling(ts, tiling)
    svg = tiling_svg(ts, tiling)
    if cfg.svg_path:
        with open(cfg.svg_path, "w", encoding="utf-8") as fh:
            fh.write(svg)
    report = {"command": "render", "svg": cfg.svg_path, "valid": not violations,
              "violations": [v.to_json() for v in violations]}
    return report, EXIT_OK


# -- argument parsing ---------------------------------------------------------------

def _common(p, defaults):
    p.add_argument("--budget-elements", type=int, default=defaults["elements"], dest="max_elements")
    p.add_argument("--budget-power-states", type=int, default=100_000, dest="max_power_states")
    p.add_argument("--budget-nodes", type=int, default=defaults["nodes"], dest="node_budget")
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--max-px", type=int, default=6)
    p.add_argument("--max-py", type=int, default=6)
    p.add_argument("--prefix-len", type=int, default=None, dest="L")
    p.add_argument("-M", type=int, default=4)
    p.add_argument("-N", type=int, default=4)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--json", default=None, dest="json_path", metavar="PATH")
    p.add_argument("--svg", default=None, dest="svg_path", metavar="PATH")
    p.add_argument("--format", choices=("json", "text"), default="json")


def build_parser(defaults=None) -> argparse.ArgumentParser:
    defaults = defaults or {"elements": 10_000, "nodes": 1_000_000}
    parser = argparse.ArgumentParser(prog="tilemealy", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_):
        p = sub.add_parser(name, help=help_)
        _common(p, defaults)
        return p

    add("nw-check", "check NW-determinism").add_argument("tileset")
    p = add("tile", "tile a rectangle")
    p.add_argument("tileset")
    p.add_argument("width", type=int)
    p.add_argument("height", type=int)
    p = add("torus", "search periodic tilings")
    p.add_argument("tileset")
    p.add_argument("--max", nargs=2, type=int, metavar=("PX", "PY"), default=None)
    add("least-n", "least n with an untileable (n+1)^2 square").add_argument("tileset")
    p = add("reduce", "write the Mealy automaton of a tile set")
    p.add_argument("tileset")
    p.add_argument("-o", "--output", default=None)
    p.add_argument("--sink", action="store_true", help="add the constant-bottom state c")
    add("enumerate", "enumerate the automaton semigroup").add_argument("automaton")
    p = add("order", "least n with f^n = g")
    p.add_argument("automaton")
    p.add_argument("f")
    p.add_argument("g")
    add("verify-lemma1", "check the diagonal-shift identity on a periodic tiling").add_argument("tileset")
    p = add("verify-claim", "check bottom tails past an untileable square")
    p.add_argument("tileset")
    p.add_argument("--mode", choices=("exhaustive", "sample"), default="exhaustive")
    p.add_argument("--samples", type=int, default=10_000)
    add("semidecide", "search both certificates").add_argument("tileset")
    p = add("render", "render a tiling JSON as SVG")
    p.add_argument("tileset")
    p.add_argument("tiling")
    return parser


def _text(report, prefix="") -> list[str]:
    lines = []
    for key, value in report.items():
        if isinstance(value, dict):
            lines += _text(value, f"{prefix}{key}.")
        else:
            lines.append(f"{prefix}{key}: {json.dumps(value) if isinstance(value, list) else value}")
    return lines


def dumps(report) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def main(argv=None) -> int:
    try:
        env_budget = _default_budget()
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    defaults = {"elements": env_budget or 10_000, "nodes": env_budget or 1_000_000}
    args = build_parser(defaults).parse_args(argv)
    inputs = []
    for name in ("tileset", "automaton", "width", "height", "f", "g", "tiling"):
        if hasattr(args, name):
            inputs.append(getattr(args, name))
    if args.command == "torus" and args.max:
        args.max_px, args.max_py = args.max
    try:
        cfg = RunConfig(args.command, inputs, args.max_elements, args.max_power_states,
                        args.node_budget, args.max_n, args.max_px, args.max_py, args.L, args.M,
                        args.N, args.seed, args.json_path, args.svg_path, args.format)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    commands = {
        "nw-check": cmd_nw_check, "tile": cmd_tile, "torus": cmd_torus, "least-n": cmd_least_n,
        "enumerate": cmd_enumerate, "order": cmd_order, "verify-lemma1": cmd_verify_lemma1,
        "semidecide": cmd_semidecide, "render": cmd_render,
        "reduce": lambda c: cmd_reduce(c, args.output, args.sink),
        "verify-claim": lambda c: cmd_verify_claim(c, args.mode, args.samples),
    }
    try:
        report, code = commands[args.command](cfg)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if isinstance(report, str):  # reduce without -o writes the automaton itself
        sys.stdout.write(report)
        return code
    text = dumps(report)
    if cfg.json_path:
        with open(cfg.json_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    sys.stdout.write(text if cfg.format == "json" else "\n".join(_text(report)) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
