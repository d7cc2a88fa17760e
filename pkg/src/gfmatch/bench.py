"""Random instance generation and timed head-to-head runs.

Records are written as CSV with the columns in :data:`CSV_COLUMNS`.  Cells
run sequentially; the cutoff is cooperative, so a timed-out cell may run
slightly past it.
"""

from __future__ import annotations

import csv
import logging
import random
import statistics
import time
from collections import Counter
from dataclasses import asdict, dataclass, fields, replace
from itertools import product
from typing import Callable, Iterable, Sequence, TextIO

from .baseline import SUBSTRING, WHOLE, amir_nor_match
from .core import canonical
from .errors import GFMError, InvalidSpec, TimedOut
from .matcher import MatcherConfig, match
from .repindex import repetition_count

log = logging.getLogger(__name__)

CSV_COLUMNS = (
    "instance_id", "seed", "text_len", "text_sigma", "pat_len", "pat_sigma",
    "rep_count", "algorithm", "mode", "time_ms", "timed_out", "matches",
)
HEURISTIC, BASELINE, PORTFOLIO = "heuristic", "baseline", "portfolio"

_ENUMERATION_LIMIT = 200_000
_REJECTION_TRIES = 100_000


@dataclass(frozen=True)
class InstanceSpec:
    text_len: int
    text_alphabet: int
    pattern_len: int
    pattern_alphabet: int
    seed: int = 0
    constrained: bool = True
    text_seed: int | None = None


def is_constrained(p: Sequence) -> bool:
    """First and last symbols repeat; no two adjacent symbols are both singletons."""
    if not p:
        return False
    counts = Counter(p)
    if counts[p[0]] < 2 or counts[p[-1]] < 2:
        return False
    return not any(counts[a] == 1 and counts[b] == 1 for a, b in zip(p, p[1:]))


def constrained_patterns(length: int, sigma: int, constrained: bool = True) -> list[tuple[int, ...]]:
    """All patterns of the given shape using exactly ``sigma`` symbols, up to isomorphism."""
    found = {
        canonical(s)
        for s in product(range(sigma), repeat=length)
        if len(set(s)) == sigma and (not constrained or is_constrained(s))
    }
    return sorted(found)


def _check_spec(spec: InstanceSpec) -> None:
    if spec.text_len < 1 or spec.text_alphabet < 1:
        raise InvalidSpec("text length and alphabet must be positive")
    if not 1 <= spec.pattern_alphabet <= spec.pattern_len:
        raise InvalidSpec(
            f"pattern alphabet {spec.pattern_alphabet} must be between 1 and the pattern length {spec.pattern_len}"
        )
    if spec.pattern_alphabet ** spec.pattern_len <= _ENUMERATION_LIMIT and not constrained_patterns(
        spec.pattern_len, spec.pattern_alphabet, spec.constrained
    ):
        raise InvalidSpec(
            f"no pattern of length {spec.pattern_len} over {spec.pattern_alphabet} symbols meets the constraints"
        )


def gen_instance(spec: InstanceSpec) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Seeded ``(pattern, text)``; the text is i.i.d. uniform, the pattern is
    drawn uniformly from the admissible patterns by rejection and returned in
    canonical form."""
    _check_spec(spec)
    pat_rng = random.Random(f"pattern:{spec.seed}")
    text_seed = spec.seed if spec.text_seed is None else spec.text_seed
    text_rng = random.Random(f"text:{text_seed}")
    text = tuple(text_rng.randrange(spec.text_alphabet) for _ in range(spec.text_len))
    k, m = spec.pattern_alphabet, spec.pattern_len
    for _ in range(_REJECTION_TRIES):
        cand = [pat_rng.randrange(k) for _ in range(m)]
        if len(set(cand)) == k and (not spec.constrained or is_constrained(cand)):
            return canonical(cand), text
    raise InvalidSpec("rejection sampling found no admissible pattern")


def fig2_specs(count: int = 500, seed: int = 0, text_alphabets: Sequence[int] = range(4, 17)) -> list[InstanceSpec]:
    """|p|=5, |Σ_p|=3, |t|=200, text alphabet cycling over ``text_alphabets``."""
    alphabets = list(text_alphabets)
    return [
        InstanceSpec(200, alphabets[i % len(alphabets)], 5, 3, seed=seed * 1_000_003 + i)
        for i in range(count)
    ]


def fixed_text_seed(length: int = 200, sigma: int = 16, target_reps: int = 70, seed: int = 0,
                    tries: int = 2000) -> int:
    """First text seed from ``seed`` whose text has ``target_reps`` repetitions."""
    for s in range(seed, seed + tries):
        rng = random.Random(f"text:{s}")
        text = [rng.randrange(sigma) for _ in range(length)]
        if repetition_count(text) == target_reps:
            return s
    return seed


def fig3_specs(count: int = 500, seed: int = 0, pattern_alphabets: Sequence[int] = (2, 3, 4)) -> list[InstanceSpec]:
    """One fixed text (|t|=200, |Σ_t|=16), |p|=6, pattern alphabet cycling."""
    text_seed = fixed_text_seed(seed=seed)
    alphabets = list(pattern_alphabets)
    return [
        InstanceSpec(200, 16, 6, alphabets[i % len(alphabets)], seed=seed * 1_000_003 + i, text_seed=text_seed)
        for i in range(count)
    ]


PRESETS: dict[str, tuple[Callable[..., list[InstanceSpec]], str]] = {
    "fig2": (fig2_specs, SUBSTRING),
    "fig3": (fig3_specs, WHOLE),
}


@dataclass(frozen=True)
class BenchRecord:
    instance_id: int
    seed: int
    text_len: int
    text_sigma: int
    pat_len: int
    pat_sigma: int
    rep_count: int
    algorithm: str
    mode: str
    time_ms: float
    timed_out: bool
    matches: int


def _heuristic(p, t, mode, cutoff, max_matches):
    return match(p, t, MatcherConfig(mode=mode, max_matches=max_matches, deadline=cutoff))


def _baseline(p, t, mode, cutoff, max_matches):
    found = amir_nor_match(p, t, mode, deadline=cutoff)
    return found if max_matches is None else found[:max_matches]


ALGORITHMS: dict[str, Callable] = {HEURISTIC: _heuristic, BASELINE: _baseline}


def _timed(fn, p, t, mode, cutoff, max_matches) -> tuple[float, bool, int]:
    start = time.perf_counter()
    try:
        found = fn(p, t, mode, cutoff, max_matches)
        timed_out, count = False, len(found)
    except TimedOut as exc:
        timed_out, count = True, len(exc.partial)
    except GFMError as exc:
        log.warning("cell failed: %s", exc)
        timed_out, count = False, -1
    return (time.perf_counter() - start) * 1000.0, timed_out, count


def mode_label(mode: str, max_matches: int | None) -> str:
    if max_matches is None:
        return f"{mode}:all"
    return f"{mode}:first" if max_matches == 1 else f"{mode}:top{max_matches}"


def run_suite(
    specs: Iterable[InstanceSpec],
    algorithms: Sequence[str] = (HEURISTIC, BASELINE),
    cutoff: float = 1.0,
    mode: str = SUBSTRING,
    max_matches: int | None = None,
    warmup: bool = True,
    progress: Callable[[int], None] | None = None,
) -> list[BenchRecord]:
    """Time every (instance, algorithm) cell once under ``cutoff`` seconds.

    With ``warmup`` each cell is run once beforehand and that run discarded.
    When both real algorithms run, a ``portfolio`` row records the faster one.
    """
    if not algorithms:
        raise InvalidSpec("at least one algorithm is required")
    unknown = set(algorithms) - set(ALGORITHMS)
    if unknown:
        raise InvalidSpec(f"unknown algorithms: {sorted(unknown)}")
    label = mode_label(mode, max_matches)
    records: list[BenchRecord] = []
    for iid, spec in enumerate(specs):
        p, t = gen_instance(spec)
        base = dict(
            instance_id=iid, seed=spec.seed, text_len=len(t), text_sigma=spec.text_alphabet,
            pat_len=len(p), pat_sigma=spec.pattern_alphabet, rep_count=repetition_count(t), mode=label,
        )
        row = {}
        for name in sorted(algorithms):
            fn = ALGORITHMS[name]
            if warmup:
                _timed(fn, p, t, mode, cutoff, max_matches)
            ms, timed_out, count = _timed(fn, p, t, mode, cutoff, max_matches)
            row[name] = BenchRecord(algorithm=name, time_ms=ms, timed_out=timed_out, matches=count, **base)
        if HEURISTIC in row and BASELINE in row:
            best = min(row[HEURISTIC], row[BASELINE], key=lambda r: r.time_ms)
            row[PORTFOLIO] = replace(
                best, algorithm=PORTFOLIO,
                timed_out=row[HEURISTIC].timed_out and row[BASELINE].timed_out,
            )
        records.extend(row[name] for name in sorted(row))
        if progress is not None:
            progress(iid)
    records.sort(key=lambda r: (r.instance_id, r.algorithm))
    return records


def write_csv(records: Iterable[BenchRecord], stream: TextIO) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in records:
        row = asdict(r)
        row["time_ms"] = f"{r.time_ms:.3f}"
        row["timed_out"] = int(r.timed_out)
        writer.writerow([row[c] for c in CSV_COLUMNS])


def read_csv(stream: TextIO) -> list[BenchRecord]:
    types = {f.name: f.type for f in fields(BenchRecord)}
    out = []
    for row in csv.DictReader(stream):
        kw = {}
        for name, value in row.items():
            kind = types[name]
            if kind == "int":
                kw[name] = int(value)
            elif kind == "float":
                kw[name] = float(value)
            elif kind == "bool":
                kw[name] = value not in ("0", "False", "false", "")
            else:
                kw[name] = value
        out.append(BenchRecord(**kw))
    return out


def times(records: Iterable[BenchRecord], algorithm: str) -> list[BenchRecord]:
    return [r for r in records if r.algorithm == algorithm]


def repetition_time_correlation(records: Iterable[BenchRecord], algorithm: str = HEURISTIC) -> float:
    """Spearman correlation between text repetition count and running time."""
    from scipy.stats import spearmanr

    rows = times(records, algorithm)
    rho = spearmanr([r.rep_count for r in rows], [r.time_ms for r in rows]).statistic
    return float(rho)


def median_time_by(records: Iterable[BenchRecord], algorithm: str, key: str) -> dict[int, float]:
    groups: dict[int, list[float]] = {}
    for r in times(records, algorithm):
        groups.setdefault(getattr(r, key), []).append(r.time_ms)
    return {k: statistics.median(v) for k, v in sorted(groups.items())}
