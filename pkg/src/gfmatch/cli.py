"""Command line interface: ``gfm match | viz | reps | gen | bench``.

Exit codes: 0 when at least one match is reported (or the command
succeeded), 1 when a match run finds nothing, 2 on any error.  Options may
also come from a ``--config`` file of ``key = value`` lines (TOML syntax);
command-line flags take precedence.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Sequence

from . import __version__
from .baseline import SUBSTRING, WHOLE, amir_nor_match, oracle_match
from .bench import (
    ALGORITHMS,
    PRESETS,
    InstanceSpec,
    gen_instance,
    run_suite,
    write_csv,
)
from .core import MatchPartition, SymbolString, intern
from .decompose import match_decomposed, plan_decomposition
from .errors import GFMError, TimedOut
from .matcher import FULL, PRUNED, MatcherConfig, match
from .repindex import build_suffix_tree, dump_repetitions, extract_repetitions, split_repetitions

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

log = logging.getLogger("gfmatch")

PATTERN_LETTERS = "ABCDEFGHIJKLMNOPQRSTUVWXYZ"
TEXT_LETTERS = "abcdefghijklmnopqrstuvwxyz"


class UsageError(GFMError):
    pass


# --- input ---------------------------------------------------------------------


def tokenize(raw: str, mode: str) -> list[str]:
    if mode == "split":
        return raw.split()
    return list(raw.rstrip("\r\n"))


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def read_instance(path: str, tokens: str) -> tuple[SymbolString, SymbolString]:
    """Two-line instance file: pattern tokens, then text tokens."""
    lines = _read(path).splitlines()
    if len(lines) < 2:
        raise UsageError(f"{path}: expected two lines (pattern, text)")
    return intern(tokenize(lines[0], tokens)), intern(tokenize(lines[1], tokens))


def write_instance(path: Path, p: Sequence[int], t: Sequence[int]) -> str:
    """Write an instance file; single characters when both alphabets fit, else split tokens."""
    if max(p) < len(PATTERN_LETTERS) and max(t) < len(TEXT_LETTERS):
        body = "".join(PATTERN_LETTERS[s] for s in p) + "\n" + "".join(TEXT_LETTERS[s] for s in t) + "\n"
        kind = "chars"
    else:
        body = " ".join(f"P{s}" for s in p) + "\n" + " ".join(f"t{s}" for s in t) + "\n"
        kind = "split"
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(body)
    return kind


def load_inputs(args) -> tuple[SymbolString, SymbolString]:
    if getattr(args, "instance", None):
        return read_instance(args.instance, args.tokens)
    raw_p = _read(args.pattern_file) if getattr(args, "pattern_file", None) else getattr(args, "pattern", None)
    raw_t = _read(args.text_file) if args.text_file else args.text
    if raw_t == "-":
        raw_t = sys.stdin.read()
    if raw_t is None:
        raise UsageError("no text given (use -t, --text-file or --instance)")
    t_tokens = tokenize(raw_t, args.tokens)
    if not t_tokens:
        raise UsageError("empty text")
    if raw_p is None:
        return None, intern(t_tokens)
    p_tokens = tokenize(raw_p, args.tokens)
    if not p_tokens:
        raise UsageError("empty pattern")
    return intern(p_tokens), intern(t_tokens)


# --- config ----------------------------------------------------------------------


def load_config(path: str) -> dict:
    try:
        data = tomllib.loads(_read(path))
    except tomllib.TOMLDecodeError as exc:
        raise UsageError(f"{path}: {exc}") from None
    return {key.replace("-", "_"): value for key, value in data.items()}


def _int_list(value) -> list[int]:
    if isinstance(value, (list, tuple)):
        return [int(v) for v in value]
    if isinstance(value, int):
        return [value]
    out = []
    for part in str(value).split(","):
        if "-" in part.strip()[1:]:
            lo, hi = part.split("-")
            out.extend(range(int(lo), int(hi) + 1))
        elif part.strip():
            out.append(int(part))
    return out


# --- match -----------------------------------------------------------------------


def matcher_config(args) -> MatcherConfig:
    return MatcherConfig(
        mode=WHOLE if args.whole else SUBSTRING,
        completeness=args.completeness,
        max_split_rounds=args.max_split_rounds,
        max_matches=None if args.all else args.max_matches,
        deadline=None if args.timeout_ms is None else args.timeout_ms / 1000.0,
        all_gap_splits=args.all_gap_splits,
    )


def solve(p: SymbolString, t: SymbolString, algo: str, cfg: MatcherConfig, decompose: bool = False):
    if algo == "heuristic":
        if decompose:
            return match_decomposed(p, t, plan_decomposition(p), cfg)
        return match(p, t, cfg)
    if algo == "baseline":
        found = amir_nor_match(p, t, cfg.mode, deadline=cfg.deadline)
    elif algo == "oracle":
        found = oracle_match(p, t, cfg.mode)
    elif algo == "auto":
        from .portfolio import first_finisher

        winner, found = first_finisher(p.symbols, t.symbols, cfg)
        log.info("portfolio winner: %s", winner)
    else:
        raise UsageError(f"unknown algorithm {algo!r}")
    return found if cfg.max_matches is None else found[:cfg.max_matches]


def _render_piece(t: SymbolString, piece, tokens: str) -> str:
    return t.render(piece, sep=" " if tokens == "split" else "")


def format_matches(p: SymbolString, t: SymbolString, found: Sequence[MatchPartition], tokens: str) -> str:
    lines = []
    for mp in found:
        pieces = [_render_piece(t, piece, tokens) for piece in mp.pieces(t)]
        lines.append(f"{mp.start}  {'|'.join(pieces)}")
        for sym, piece in mp.mapping(p, t).items():
            lines.append(f"    {p.tokens[sym]} = {_render_piece(t, piece, tokens)}")
    return "".join(line + "\n" for line in lines)


def matches_json(p: SymbolString, t: SymbolString, found: Sequence[MatchPartition]) -> str:
    rows = []
    for mp in found:
        rows.append({
            "start": mp.start,
            "boundaries": list(mp.boundaries),
            "pieces": [[str(t.tokens[x]) for x in piece] for piece in mp.pieces(t)],
            "mapping": {str(p.tokens[s]): [str(t.tokens[x]) for x in piece] for s, piece in mp.mapping(p, t).items()},
        })
    if not rows:
        return "[]\n"
    return "[\n" + ",\n".join(json.dumps(r, ensure_ascii=False) for r in rows) + "\n]\n"


def cmd_match(args) -> int:
    p, t = load_inputs(args)
    if p is None:
        raise UsageError("no pattern given (use -p, --pattern-file or --instance)")
    cfg = matcher_config(args)
    timed_out = False
    try:
        found = solve(p, t, args.algo, cfg, args.decompose)
    except TimedOut as exc:
        found, timed_out = exc.partial, True
    if args.json:
        sys.stdout.write(matches_json(p, t, found))
    else:
        sys.stdout.write(format_matches(p, t, found, args.tokens))
    if timed_out:
        print(f"gfm: timed out; {len(found)} partial result(s) shown", file=sys.stderr)
    return 0 if found else 1


# --- viz / reps ---------------------------------------------------------------


def cmd_viz(args) -> int:
    from .viz import arc_diagram_svg

    p, t = load_inputs(args)
    found: list = []
    if p is not None and not args.no_matches:
        try:
            found = solve(p, t, args.algo, matcher_config(args), args.decompose)
        except TimedOut as exc:
            found = exc.partial
    markers = _int_list(args.markers) if args.markers else []
    if args.block:
        markers = list(range(0, len(t) + 1, args.block))
    svg = arc_diagram_svg(t, found, pattern=p, markers=markers)
    if args.output and args.output != "-":
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(svg)
    else:
        sys.stdout.write(svg)
    return 0


def cmd_reps(args) -> int:
    _, t = load_inputs(args)
    st = build_suffix_tree(t)
    reps = extract_repetitions(st, pruned=args.pruned)
    if args.split_rounds:
        reps = split_repetitions(reps, args.split_rounds, st)
    sys.stdout.write(dump_repetitions(reps))
    return 0


# --- gen / bench -----------------------------------------------------------------


def _specs_from_args(args) -> tuple[list[InstanceSpec], str]:
    if args.preset:
        maker, mode = PRESETS[args.preset]
        kwargs = {"seed": args.seed}
        if args.count is not None:
            kwargs["count"] = args.count
        return maker(**kwargs), args.mode or mode
    count = args.count if args.count is not None else 1
    text_sigmas = _int_list(args.text_sigma)
    pat_sigmas = _int_list(args.pat_sigma)
    if not text_sigmas or not pat_sigmas:
        raise UsageError("text_sigma and pat_sigma must be non-empty")
    cells = [(ts, ps) for ts in text_sigmas for ps in pat_sigmas]
    text_seed = args.seed if args.fixed_text else None
    specs = [
        InstanceSpec(args.text_len, cells[i % len(cells)][0], args.pat_len, cells[i % len(cells)][1],
                     seed=args.seed * 1_000_003 + i, text_seed=text_seed)
        for i in range(count)
    ]
    for spec in specs[:len(cells)]:
        gen_instance(spec)
    return specs, args.mode or SUBSTRING


def cmd_gen(args) -> int:
    specs, _ = _specs_from_args(args)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    manifest = ["file,seed,text_len,text_sigma,pat_len,pat_sigma,tokens"]
    width = max(4, len(str(len(specs) - 1)))
    for i, spec in enumerate(specs):
        p, t = gen_instance(spec)
        name = f"instance_{i:0{width}d}.txt"
        kind = write_instance(out / name, p, t)
        manifest.append(f"{name},{spec.seed},{len(t)},{spec.text_alphabet},{len(p)},{spec.pattern_alphabet},{kind}")
    (out / "manifest.csv").write_text("\n".join(manifest) + "\n", encoding="utf-8")
    print(f"wrote {len(specs)} instances to {out}", file=sys.stderr)
    return 0


def cmd_bench(args) -> int:
    specs, mode = _specs_from_args(args)
    algorithms = args.algorithms
    if isinstance(algorithms, str):
        algorithms = [a.strip() for a in algorithms.split(",") if a.strip()]
    unknown = set(algorithms) - set(ALGORITHMS)
    if unknown:
        raise UsageError(f"unknown algorithms: {', '.join(sorted(unknown))}")
    cutoff = args.cutoff_ms / 1000.0
    records = run_suite(specs, algorithms, cutoff=cutoff, mode=mode, max_matches=args.max_matches,
                        warmup=args.warmup)
    if args.out and args.out != "-":
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            write_csv(records, fh)
    else:
        write_csv(records, sys.stdout)
    plot_path = args.plot
    if plot_path is None and args.out and args.out != "-":
        plot_path = str(Path(args.out).with_suffix(".png"))
    if plot_path:
        from .plotting import plot_records

        kind = "alphabet" if args.preset == "fig3" or len(set(s.pattern_alphabet for s in specs)) > 1 else "repetitions"
        plot_records(records, plot_path, kind=kind, cutoff_ms=args.cutoff_ms)
    return 0


# --- parser ------------------------------------------------------------------------


def _add_inputs(sp, need_pattern: bool = True) -> None:
    g = sp.add_argument_group("input")
    if need_pattern:
        g.add_argument("-p", "--pattern", help="pattern, inline")
        g.add_argument("--pattern-file", help="read the pattern from a file")
    g.add_argument("-t", "--text", help="text, inline ('-' reads stdin)")
    g.add_argument("--text-file", help="read the text from a file ('-' for stdin)")
    g.add_argument("--instance", help="two-line instance file (pattern, text)")
    g.add_argument("--tokens", choices=("chars", "split"), default="chars",
                   help="single characters or whitespace-separated tokens")


def _add_matching(sp) -> None:
    g = sp.add_argument_group("matching")
    g.add_argument("--whole", action="store_true", help="match the whole text (default: substrings)")
    g.add_argument("--algo", choices=("heuristic", "baseline", "oracle", "auto"), default="heuristic")
    g.add_argument("--completeness", choices=(PRUNED, FULL), default=PRUNED)
    g.add_argument("--max-split-rounds", type=int, default=None)
    lim = g.add_mutually_exclusive_group()
    lim.add_argument("--all", action="store_true", help="report every match (default)")
    lim.add_argument("--max-matches", type=int, default=None)
    g.add_argument("--all-gap-splits", action="store_true", help="enumerate every placement of the pieces")
    g.add_argument("--timeout-ms", type=int, default=None)
    g.add_argument("--decompose", action="store_true", help="use pattern decomposition when a plan exists")


def _add_suite(sp) -> None:
    sp.add_argument("--preset", choices=sorted(PRESETS))
    sp.add_argument("--count", type=int, default=None, help="number of instances")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--text-len", type=int, default=200)
    sp.add_argument("--text-sigma", default="4", help="text alphabet sizes, e.g. 4,8 or 4-16")
    sp.add_argument("--pat-len", type=int, default=5)
    sp.add_argument("--pat-sigma", default="3", help="pattern alphabet sizes")
    sp.add_argument("--fixed-text", action="store_true", help="use one text for every instance")
    sp.add_argument("--mode", choices=(WHOLE, SUBSTRING), default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gfm", description="Generalized function matching toolkit.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    config = argparse.ArgumentParser(add_help=False)
    config.add_argument("--config", help="key = value options file (TOML syntax); flags win")

    sp = sub.add_parser("match", parents=[config], help="find pattern matches")
    _add_inputs(sp)
    _add_matching(sp)
    sp.add_argument("--json", action="store_true", help="machine-readable output")
    sp.set_defaults(func=cmd_match)

    sp = sub.add_parser("viz", parents=[config], help="arc diagram of repetitions and matches (SVG)")
    _add_inputs(sp)
    _add_matching(sp)
    sp.add_argument("-o", "--output", help="SVG file (default stdout)")
    sp.add_argument("--markers", help="comma-separated positions to mark on the axis")
    sp.add_argument("--block", type=int, default=None, help="mark every N positions")
    sp.add_argument("--no-matches", action="store_true")
    sp.set_defaults(func=cmd_viz)

    sp = sub.add_parser("reps", parents=[config], help="dump the repetition list (length, occ, positions)")
    _add_inputs(sp, need_pattern=False)
    sp.add_argument("--pruned", action="store_true")
    sp.add_argument("--split-rounds", type=int, default=0)
    sp.set_defaults(func=cmd_reps)

    sp = sub.add_parser("gen", parents=[config], help="write random benchmark instances")
    _add_suite(sp)
    sp.add_argument("--out-dir", default="instances")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("bench", parents=[config], help="time algorithms and write CSV (plus a figure)")
    _add_suite(sp)
    sp.add_argument("--algorithms", default="heuristic,baseline")
    sp.add_argument("--cutoff-ms", type=float, default=1000.0)
    sp.add_argument("--max-matches", type=int, default=None)
    sp.add_argument("--no-warmup", dest="warmup", action="store_false")
    sp.add_argument("--out", help="CSV file (default stdout)")
    sp.add_argument("--plot", help="figure file (.png, .svg, .pdf); defaults next to --out")
    sp.set_defaults(func=cmd_bench)
    return parser


def _apply_config(parser: argparse.ArgumentParser, argv) -> argparse.Namespace:
    args = parser.parse_args(argv)
    if not args.config:
        return args
    values = load_config(args.config)
    sub = parser._subparsers._group_actions[0].choices[args.command]
    known = {a.dest for a in sub._actions}
    unknown = set(values) - known
    if unknown:
        raise UsageError(f"{args.config}: unknown keys {', '.join(sorted(unknown))}")
    sub.set_defaults(**values)
    return parser.parse_args(argv)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = _apply_config(parser, argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            format="gfm: %(message)s")
        return args.func(args)
    except (GFMError, OSError, ValueError) as exc:
        print(f"gfm: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
