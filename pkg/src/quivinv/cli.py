"""Command-line frontend.

Subcommands: ``generators``, ``kernel``, ``present``, ``verify``, and
``example-a1`` (runs the full pipeline on the bundled two-vertex example).
Output is plain text by default or deterministic JSON with ``--format json``.
Exit codes: 0 success, 1 verification/comparison failure, 2 input error,
3 resource budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from importlib import resources
from typing import Optional, Sequence

from .groebner import BudgetExceededError, ComputeBudget, Ideal, ideal_equal
from .invariants import lusztig_generators, rep_ideal
from .kernel import kernel_generators, present_invariant_ring
from .polyring import RingError
from .quiver import Presentation, QuiverError, path_from_word
from .quiverfile import load_presentation, parse_presentation
from .verification import run_verification

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3


@dataclass(frozen=True)
class RunConfig:
    """One resolved CLI invocation."""

    subcommand: str
    file: Optional[str] = None
    frozen_override: Optional[str] = None
    max_len: int = 2
    max_u: int = 1
    max_w: int = 1
    select: Optional[str] = None
    compare: Optional[str] = None
    seed: int = 0
    format: str = "text"
    budget_steps: Optional[int] = None
    mutate: bool = False

    def __post_init__(self):
        for bound in (self.max_len, self.max_u, self.max_w):
            if bound < 0:
                raise QuiverError("bounds must be nonnegative")
        if self.budget_steps is not None and self.budget_steps < 0:
            raise QuiverError("budget must be nonnegative")

    @property
    def budget(self) -> Optional[ComputeBudget]:
        if self.budget_steps is None:
            return None
        return ComputeBudget(max_steps=self.budget_steps)

    def load(self) -> Presentation:
        pres = load_presentation(self.file)
        if self.frozen_override is not None:
            members = [v for v in self.frozen_override.split(",") if v != ""]
            pres = pres.with_frozen(members)
        return pres

    def selection(self, pres: Presentation):
        if self.select is None:
            return None
        return [path_from_word(pres.quiver, w) for w in self.select.split(",") if w]


def _data_text(name: str) -> str:
    return resources.files("quivinv").joinpath("data").joinpath(name).read_text("utf-8")


def _emit(cfg: RunConfig, payload: dict, text_lines: list[str]):
    if cfg.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def cmd_generators(cfg: RunConfig) -> int:
    pres = cfg.load()
    gens = lusztig_generators(pres, cfg.max_len, cfg.selection(pres))
    payload = {
        "command": "generators",
        "K": sorted(pres.frozen_vertices),
        "max_len": cfg.max_len,
        "count": len(gens),
        "generators": gens.to_jsonable(),
    }
    _emit(cfg, payload, [f"{e.label} = {e.polynomial}" for e in gens])
    return EXIT_OK


def cmd_kernel(cfg: RunConfig) -> int:
    pres = cfg.load()
    kernel = kernel_generators(pres, cfg.max_u, cfg.max_w)
    payload = {
        "command": "kernel",
        "K": sorted(pres.frozen_vertices),
        "max_u": cfg.max_u,
        "max_w": cfg.max_w,
        "count": len(kernel),
        "generators": [k.to_jsonable() for k in kernel],
    }
    _emit(cfg, payload, [f"{k.label} = {k.polynomial}" for k in kernel])
    return EXIT_OK


def _compare_against(ip, compare_text: str) -> bool:
    ring = ip.fresh_ring
    polys = []
    for line in compare_text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            polys.append(ring.parse(line))
    return ideal_equal(ip.elimination_ideal, Ideal(ring, polys))


def cmd_present(cfg: RunConfig) -> int:
    pres = cfg.load()
    ip = present_invariant_ring(pres, cfg.max_len, cfg.selection(pres), cfg.budget)
    payload = {
        "command": "present",
        "K": sorted(pres.frozen_vertices),
        "max_len": cfg.max_len,
        **ip.to_jsonable(),
    }
    lines = [f"{var} = {entry.label}" for var, entry in ip.dictionary]
    lines.append(f"elimination ideal ({len(ip.elimination_ideal.generators)} generators):")
    lines.extend(f"  {p}" for p in ip.elimination_ideal.generators)
    equal = None
    if cfg.compare:
        with open(cfg.compare, "r", encoding="utf-8") as fh:
            equal = _compare_against(ip, fh.read())
        payload["compare"] = {"file": cfg.compare, "equal": equal}
        lines.append(f"compare: {'equal' if equal else 'NOT EQUAL'}")
    _emit(cfg, payload, lines)
    return EXIT_OK if equal in (None, True) else EXIT_VERIFY


def cmd_verify(cfg: RunConfig) -> int:
    pres = cfg.load()
    report = run_verification(
        pres,
        seed=cfg.seed,
        max_len=cfg.max_len,
        max_u=cfg.max_u,
        max_w=cfg.max_w,
        budget=cfg.budget,
        mutate=cfg.mutate,
    )
    payload = {"command": "verify", **report.to_jsonable()}
    lines = [
        f"{'PASS' if c.passed else 'FAIL'} {c.name} ({c.trials} trials)"
        + (f" witness={json.dumps(c.witness, sort_keys=True)}" if c.witness else "")
        for c in report.checks
    ]
    lines.append(f"seed {report.seed}: {'all checks passed' if report.passed else 'FAILED'}")
    _emit(cfg, payload, lines)
    return EXIT_OK if report.passed else EXIT_VERIFY


def cmd_example_a1(cfg: RunConfig) -> int:
    pres = parse_presentation(_data_text("a1_preprojective.quiver"))
    budget = cfg.budget
    selection = [path_from_word(pres.quiver, w) for w in ("ec", "fc", "fd")]

    ideal = rep_ideal(pres)
    gens = lusztig_generators(pres, 2, selection)
    kernel_free = kernel_generators(pres.with_frozen([]), 0, 0)
    kernel = kernel_generators(pres, 1, 1)
    ip = present_invariant_ring(pres, 2, selection, budget)
    compare_equal = _compare_against(ip, _data_text("paper13.txt"))
    report = run_verification(pres, seed=cfg.seed, budget=budget)

    payload = {
        "command": "example-a1",
        "presentation": {
            "vertices": list(pres.quiver.vertices),
            "arrows": [[a.name, a.tail, a.head] for a in pres.quiver.arrows],
            "dims": {v: d for v, d in pres.dims.entries},
            "K": sorted(pres.frozen_vertices),
            "relations": {r.name: str(r.element) for r in pres.relations},
        },
        "representation_ideal": [str(g) for g in ideal.generators],
        "generators": gens.to_jsonable(),
        "kernel_unfrozen": [k.to_jsonable() for k in kernel_free],
        "kernel": [k.to_jsonable() for k in kernel],
        "invariant_presentation": ip.to_jsonable(),
        "compare_with_reference": compare_equal,
        "verification": report.to_jsonable(),
    }
    print(json.dumps(payload, indent=2, sort_keys=True))
    if not compare_equal:
        return EXIT_VERIFY
    return EXIT_OK if report.passed else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quivinv",
        description="Invariant-ring generators and relations for quivers with relations.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, with_file=True):
        if with_file:
            p.add_argument("file", help="quiver presentation file")
            p.add_argument("--K", default=None, help="override the frozen vertex set (comma list; empty for none)")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--budget", type=int, default=None, help="reduction-step cap for the basis engine")
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("generators", help="invariant-ring generators up to a length bound")
    common(p)
    p.add_argument("--max-len", type=int, default=2, dest="max_len")
    p.add_argument("--select", default=None, help="comma list of path words to keep")
    p.set_defaults(func=cmd_generators)

    p = sub.add_parser("kernel", help="generators of the restriction-map kernel")
    common(p)
    p.add_argument("--max-u", type=int, default=1, dest="max_u")
    p.add_argument("--max-w", type=int, default=1, dest="max_w")
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("present", help="present the invariant ring by elimination")
    common(p)
    p.add_argument("--max-len", type=int, default=2, dest="max_len")
    p.add_argument("--select", default=None, help="comma list of path words to keep")
    p.add_argument("--compare", default=None, help="file of reference generators to compare against")
    p.set_defaults(func=cmd_present)

    p = sub.add_parser("verify", help="run the seeded verification suite")
    common(p)
    p.add_argument("--max-len", type=int, default=2, dest="max_len")
    p.add_argument("--max-u", type=int, default=1, dest="max_u")
    p.add_argument("--max-w", type=int, default=1, dest="max_w")
    p.add_argument("--mutate", action="store_true", help="flip one relation coefficient (must fail)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("example-a1", help="run the bundled worked example end to end")
    common(p, with_file=False)
    p.set_defaults(func=cmd_example_a1)

    return parser


def _config_from(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        subcommand=args.subcommand,
        file=getattr(args, "file", None),
        frozen_override=getattr(args, "K", None),
        max_len=getattr(args, "max_len", 2),
        max_u=getattr(args, "max_u", 1),
        max_w=getattr(args, "max_w", 1),
        select=getattr(args, "select", None),
        compare=getattr(args, "compare", None),
        seed=args.seed,
        format=args.format,
        budget_steps=args.budget,
        mutate=getattr(args, "mutate", False),
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(_config_from(args))
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (QuiverError, RingError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
