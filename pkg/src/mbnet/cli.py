"""Command-line entry point.

Every subcommand takes one network, given as a path to a JSON document or
as a builtin name (``mbnet list`` shows them).  Machine-readable results go
to standard output, notes and summaries to standard error.

Exit codes: 0 success, 1 usage or input error, 2 a prediction disagrees
with the simulation.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Callable, Sequence

from . import cases, named
from .core import (BooleanNetwork, GpbnNetwork, GpbnState, InvalidStateError, MemoryNetwork,
                   expand_seed)
from .dynamics import (DEFAULT_MAX_STATES, DiscreteSystem, StateSpaceTooLarge, find_attractors,
                       state_space_size)
from .netio import (SchemaError, export_csv, export_dot, load_network, report_json,
                    save_network)
from .size2 import delay_phase_space, dt_grid, rule, validate_class
from .size2.rules import RuleId
from .transforms import gpbn_to_mbn, mbn_to_bn

EXIT_OK, EXIT_ERROR, EXIT_MISMATCH = 0, 1, 2


class CliError(Exception):
    pass


BUILTINS: dict[str, tuple[str, Callable[[], object]]] = {
    "flip": ("two-node BN, f1 = f2 = x1 & !x2", named.flip_bn),
    "flip-mbn": ("flip with delays (2,1)", named.flip_mbn),
    "flip-gpbn": ("flip as a gene/protein network, delays (2,1)", named.flip_gpbn),
    "chain3": ("three-node positive disjunctive BN (x2, x1|x3, x2)", named.disjunctive_chain),
    "lambda": ("phage lambda cI/cro BN", cases.lambda_bn),
    "lambda-reduced": ("lambda BN rebuilt from the three-level model", cases.lambda_boolean_reduction),
    "c1": ("Arabidopsis C1 = (AG, AP1)", cases.arabidopsis_c1),
    "c2": ("Arabidopsis C2 = (AP3, BFU, PI)", cases.arabidopsis_c2),
    "abc": ("Arabidopsis C1 x C2, five nodes", cases.arabidopsis_abc),
}


def _ints(text: str, what: str) -> tuple[int, ...]:
    try:
        vals = tuple(int(p) for p in text.replace(";", ",").split(",") if p.strip() != "")
    except ValueError:
        raise CliError(f"{what} must be comma-separated integers, got {text!r}") from None
    if not vals:
        raise CliError(f"{what} is empty")
    return vals


def resolve_network(source: str):
    """A network from a file path, a builtin name or a rule id like ``[6,00]``."""
    if os.path.exists(source):
        with open(source, "rb") as fh:
            return load_network(fh.read())
    if source in BUILTINS:
        return BUILTINS[source][1]()
    if source.lstrip().startswith("["):
        try:
            return rule(RuleId.parse(source))
        except ValueError as exc:
            raise CliError(str(exc)) from None
    raise CliError(f"no such file or builtin network: {source!r} (see 'mbnet list')")


def with_delays(model, dt: tuple[int, ...] | None):
    if dt is None:
        return model
    if isinstance(model, GpbnNetwork):
        return GpbnNetwork(model.gene_functions, dt, model.names)
    bn = model.bn if isinstance(model, MemoryNetwork) else model
    if len(dt) != bn.n:
        raise CliError(f"--dt has {len(dt)} entries for {bn.n} nodes")
    return MemoryNetwork(bn, dt)


def as_system(model) -> DiscreteSystem:
    if isinstance(model, GpbnNetwork):
        return DiscreteSystem.from_gpbn(model)
    if isinstance(model, BooleanNetwork):
        return DiscreteSystem.from_bn(model)
    return DiscreteSystem.from_mbn(model)


def _load(args):
    dt = _ints(args.dt, "--dt") if getattr(args, "dt", None) else None
    return with_delays(resolve_network(args.net), dt)


def _check_budget(model, limit: int):
    size = model.state_count if not isinstance(model, BooleanNetwork) else 1 << model.n
    if size > limit:
        raise StateSpaceTooLarge(size, limit)


def _emit(text: str):
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _note(text: str):
    sys.stderr.write(text + "\n")


# --- step / trace ------------------------------------------------------------

def _starts(model, args) -> list[int]:
    system = as_system(model)
    if (args.init is None) == (args.seed is None):
        raise CliError("give exactly one of --init or --seed")
    if args.init is not None:
        vals = _ints(args.init, "--init")
        if isinstance(model, GpbnNetwork):
            N = model.N
            if len(vals) != 2 * N:
                raise CliError(f"--init for a GPBN takes {N} genes then {N} protein counters")
            state = GpbnState(vals[:N], vals[N:])
        else:
            state = vals
        return [system.encode(state)]
    bits = _ints(args.seed, "--seed")
    if isinstance(model, GpbnNetwork):
        raise CliError("--seed applies to BN and MBN inputs")
    dt = model.dt if isinstance(model, MemoryNetwork) else (1,) * model.n
    if len(bits) != len(dt):
        raise CliError(f"--seed has {len(bits)} entries for {len(dt)} nodes")
    try:
        seeds = expand_seed(bits, dt, enumerate_all=args.enumerate_initial_delays)
    except ValueError as exc:
        raise InvalidStateError(str(exc)) from None
    return [system.encode(d) for d in seeds]


def cmd_trace(args, steps: int | None = None) -> int:
    model = _load(args)
    system = as_system(model)
    n = args.steps if steps is None else steps
    if n < 0:
        raise CliError("--steps must be >= 0")
    for k in _starts(model, args):
        path = [k]
        for _ in range(n):
            k = system.successor(k)
            path.append(k)
        _emit(" ".join(system.label(j) for j in path))
    return EXIT_OK


def cmd_step(args) -> int:
    model = _load(args)
    system = as_system(model)
    for k in _starts(model, args):
        _emit(system.label(system.successor(k)))
    return EXIT_OK


# --- attractors --------------------------------------------------------------

def cmd_attractors(args) -> int:
    model = _load(args)
    _check_budget(model, args.max_states)
    rep = find_attractors(as_system(model), max_states=args.max_states, threads=args.threads)
    if args.format == "json":
        _emit(json.dumps(report_json(rep), indent=2))
    elif args.format == "csv":
        _emit(export_csv(rep))
    else:
        _emit(export_dot(rep, name=args.net if args.net in BUILTINS else "transitions"))
    s = rep.summary()
    _note(f"{s['states']} states, {s['fixed_points']} fixed points, "
          f"{s['limit_cycles']} limit cycles, max transient {s['max_transient']}")
    return EXIT_OK


# --- convert -----------------------------------------------------------------

def cmd_convert(args) -> int:
    model = _load(args)
    if args.to == "mbn":
        if isinstance(model, GpbnNetwork):
            out = gpbn_to_mbn(model)
        elif isinstance(model, BooleanNetwork):
            out = model.with_delays()
        else:
            out = model
        meta = {"converted_from": _kind(model)}
    else:
        if isinstance(model, BooleanNetwork):
            out, meta = model, {"converted_from": "bn"}
        else:
            M = gpbn_to_mbn(model) if isinstance(model, GpbnNetwork) else model
            if sum(M.dt) > 24:
                raise CliError(f"expanded network would have {sum(M.dt)} nodes, above 24")
            emap = mbn_to_bn(M)
            out = emap.target
            meta = {"converted_from": _kind(model),
                    "chains": {M.names[v]: [out.names[i] for i in ch]
                               for v, ch in enumerate(emap.chains())}}
    sys.stdout.write(save_network(out, meta).decode("utf-8"))
    return EXIT_OK


def _kind(model) -> str:
    if isinstance(model, GpbnNetwork):
        return "gpbn"
    return "mbn" if isinstance(model, MemoryNetwork) else "bn"


# --- classify2 / sweep ---------------------------------------------------------

def cmd_classify2(args) -> int:
    try:
        rep = validate_class(args.cls, args.grid, args.grid)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    if args.format == "csv":
        _emit(export_csv(rep))
    else:
        _emit(json.dumps(rep.as_dict(), indent=2))
    meta = rep.metadata()
    _note(f"class {meta['class']}: {len(rep.rules)} rules, {rep.cells} delay cells, "
          f"{sum(meta['configurations_checked'].values())} configurations, "
          f"{meta['mismatches']} mismatches")
    return EXIT_OK if rep.ok else EXIT_MISMATCH


def cmd_sweep(args) -> int:
    model = resolve_network(args.net)
    if isinstance(model, GpbnNetwork):
        model = gpbn_to_mbn(model)
    F = model.bn if isinstance(model, MemoryNetwork) else model
    tops = _ints(args.dt_grid, "--dt-grid")
    if len(tops) == 1:
        tops = tops * F.n
    try:
        grid = dt_grid(F.n, list(tops))
    except ValueError as exc:
        raise CliError(str(exc)) from None
    for dt in grid:
        if state_space_size(dt) > args.max_states:
            raise StateSpaceTooLarge(state_space_size(dt), args.max_states)
    cells = delay_phase_space(F, grid=grid, max_states=args.max_states)
    _emit(export_csv(cells))
    _note(f"{len(cells)} delay vectors, "
          f"{sum(1 for c in cells if c.cycle_lengths)} with a limit cycle")
    return EXIT_OK


# --- case studies ------------------------------------------------------------

def _fmt_states(states) -> str:
    return " ".join("(" + ",".join(map(str, s)) + ")" for s in states)


def _case_lambda(dt) -> tuple[list[tuple[str, str]], bool]:
    if len(dt) != 2:
        raise CliError("lambda takes --dt cI,cro")
    rep = find_attractors(DiscreteSystem.from_mbn(cases.lambda_mbn(dt)))
    pred = cases.predict_lambda(*dt)
    fps = sorted(rep.decoded_fixed_points())
    cycles = [rep.states(a) for a in range(len(rep.attractors)) if rep.attractors[a].size > 1]
    has = bool(cycles)
    per_ok = all(pred.classify(*rep.system.decode(k)) ==
                 ("LC" if rep.attractors[rep.labels[k]].size > 1 else "FP")
                 for k in range(rep.system.state_count))
    ok = fps == pred.fixed_points and has == pred.limit_cycle and per_ok
    lines = [
        ("network", "lambda"), ("dt", ",".join(map(str, dt))),
        ("states", str(rep.system.size)),
        ("fixed points", _fmt_states(fps)),
        ("limit cycles", str(len(cycles))),
        ("cycle lengths", " ".join(str(len(c)) for c in cycles) or "-"),
        ("LC exists", str(has).lower()),
        ("predicted fixed points", _fmt_states(pred.fixed_points)),
        ("predicted LC exists", str(pred.limit_cycle).lower()),
        ("initial conditions agree", str(per_ok).lower()),
    ]
    if pred.cycle_note:
        lines.append(("length convention", pred.cycle_note))
    return lines, ok


def _case_arabidopsis(dt) -> tuple[list[tuple[str, str]], bool]:
    if len(dt) == 3:
        M = MemoryNetwork(cases.arabidopsis_c2(), dt)
        rep = find_attractors(DiscreteSystem.from_mbn(M))
        pred = cases.predict_c2(*dt)
        fps = sorted(rep.decoded_fixed_points())
        lengths = [c.size for c in rep.limit_cycles]
        ok = (fps == sorted(pred.fixed_points) and bool(lengths) == pred.limit_cycle
              and all(n == 2 for n in lengths) and len(lengths) <= 1)
        lines = [("network", "c2"), ("predicted case", pred.anchor.split(": ", 1)[1])]
    elif len(dt) == 5:
        M = MemoryNetwork(cases.arabidopsis_abc(), dt)
        rep = find_attractors(DiscreteSystem.from_mbn(M))
        fps = sorted(rep.decoded_fixed_points())
        expected = sorted(cases.abc_fixed_points(dt))
        lengths = [c.size for c in rep.limit_cycles]
        c1_cycle = dt[0] == dt[1]
        c2_cycle = cases.predict_c2(*dt[2:]).limit_cycle
        ok = fps == expected and bool(lengths) == (c1_cycle or c2_cycle)
        lines = [("network", "abc"), ("predicted fixed points", _fmt_states(expected))]
    else:
        raise CliError("arabidopsis takes --dt AP3,BFU,PI or AG,AP1,AP3,BFU,PI")
    cycles = [rep.states(a) for a in range(len(rep.attractors)) if rep.attractors[a].size > 1]
    lines += [
        ("dt", ",".join(map(str, dt))),
        ("states", str(rep.system.size)),
        ("fixed points", _fmt_states(fps)),
        ("limit cycles", str(len(cycles))),
        ("cycle lengths", " ".join(str(len(c)) for c in cycles) or "-"),
        ("LC exists", str(bool(cycles)).lower()),
    ]
    return lines, ok


def cmd_case(args) -> int:
    dt = _ints(args.dt, "--dt")
    if min(dt) < 1:
        raise CliError("delays must be >= 1")
    lines, ok = (_case_lambda if args.name == "lambda" else _case_arabidopsis)(dt)
    lines.append(("check", "pass" if ok else "FAIL"))
    if args.format == "json":
        _emit(json.dumps(dict(lines), indent=2))
    else:
        _emit("\n".join(f"{k}: {v}" for k, v in lines))
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_list(args) -> int:
    for name, (desc, _) in BUILTINS.items():
        _emit(f"{name:16s}{desc}")
    _emit(f"{'[k,x,...]':16s}two-node catalogue rule, e.g. [6,00] or [4,01,11]")
    return EXIT_OK


# --- parser ------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="mbnet", description="Boolean networks with firing memory.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def net(sp, delays=True):
        sp.add_argument("net", help="JSON document path, builtin name or rule id")
        if delays:
            sp.add_argument("--dt", help="delay vector, e.g. 2,1 (turns a BN into an MBN)")

    def init(sp):
        sp.add_argument("--init", help="counter configuration, e.g. 2,0 (GPBN: genes then proteins)")
        sp.add_argument("--seed", help="Boolean seed; active nodes start at full delay")
        sp.add_argument("--enumerate-initial-delays", action="store_true",
                        help="with --seed, use every counter 1..dt for active nodes")

    def budget(sp):
        sp.add_argument("--max-states", type=int, default=DEFAULT_MAX_STATES)
        sp.add_argument("--threads", type=int, default=1)

    sp = sub.add_parser("step", help="one update")
    net(sp)
    init(sp)
    sp.set_defaults(func=cmd_step)

    sp = sub.add_parser("trace", help="print a trajectory")
    net(sp)
    init(sp)
    sp.add_argument("--steps", type=int, default=10)
    sp.set_defaults(func=cmd_trace)

    sp = sub.add_parser("attractors", help="full attractor landscape")
    net(sp)
    budget(sp)
    sp.add_argument("--format", choices=("json", "csv", "dot"), default="json")
    sp.set_defaults(func=cmd_attractors)

    sp = sub.add_parser("convert", help="rewrite as an MBN or an expanded BN")
    net(sp)
    sp.add_argument("--to", choices=("mbn", "bn"), required=True)
    sp.set_defaults(func=cmd_convert)

    sp = sub.add_parser("classify2", help="check a two-node class against simulation")
    sp.add_argument("--class", dest="cls", default="00", help="fixed-point class, e.g. 00 or 01,11")
    sp.add_argument("--grid", type=int, default=6, help="delays 1..GRID for both nodes")
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.add_argument("--threads", type=int, default=1)
    sp.set_defaults(func=cmd_classify2)

    sp = sub.add_parser("sweep", help="landscape over a delay grid (CSV)")
    net(sp, delays=False)
    sp.add_argument("--dt-grid", required=True, help="upper delay bound, one value or one per node")
    budget(sp)
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("case", help="case-study landscape and prediction check")
    sp.add_argument("name", choices=("lambda", "arabidopsis"))
    sp.add_argument("--dt", required=True)
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_case)

    sp = sub.add_parser("list", help="builtin networks")
    sp.set_defaults(func=cmd_list)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "threads", 1) < 1:
        _note("mbnet: error: --threads must be >= 1")
        return EXIT_ERROR
    try:
        return args.func(args)
    except StateSpaceTooLarge as exc:
        _note(f"mbnet: error: {exc} (raise --max-states to allow it)")
    except (CliError, SchemaError, InvalidStateError, ValueError) as exc:
        _note(f"mbnet: error: {exc}")
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
