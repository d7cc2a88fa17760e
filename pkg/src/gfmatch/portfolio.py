"""Run the heuristic and the Amir-Nor baseline side by side; keep the first answer."""

from __future__ import annotations

import multiprocessing as mp
import queue
import sys
from typing import Sequence

from .baseline import amir_nor_match
from .core import MatchPartition
from .errors import GFMError, TimedOut
from .matcher import MatcherConfig, match


def _worker(name, p, t, cfg, out):
    try:
        if name == "heuristic":
            found = match(p, t, cfg)
        else:
            found = amir_nor_match(p, t, cfg.mode, deadline=cfg.deadline)
            if cfg.max_matches is not None:
                found = found[:cfg.max_matches]
        out.put((name, "ok", [(m.start, m.boundaries) for m in found]))
    except TimedOut as exc:
        out.put((name, "timeout", [(m.start, m.boundaries) for m in exc.partial]))
    except GFMError as exc:
        out.put((name, "error", str(exc)))


def first_finisher(p: Sequence[int], t: Sequence[int], cfg: MatcherConfig) -> tuple[str, list[MatchPartition]]:
    """Return ``(winner, partitions)`` from whichever algorithm completes first.

    A run that fails or times out only wins if the other one does too.
    """
    ctx = mp.get_context("fork") if sys.platform.startswith("linux") else mp.get_context()
    out = ctx.Queue()
    procs = [ctx.Process(target=_worker, args=(name, tuple(p), tuple(t), cfg, out), daemon=True)
             for name in ("heuristic", "baseline")]
    for proc in procs:
        proc.start()
    fallback = None
    try:
        for _ in procs:
            while True:
                try:
                    name, status, payload = out.get(timeout=0.05)
                    break
                except queue.Empty:
                    if not any(proc.is_alive() for proc in procs) and out.empty():
                        raise GFMError("portfolio workers exited without a result") from None
            if status == "ok":
                return name, [MatchPartition(s, tuple(b)) for s, b in payload]
            if fallback is None:
                fallback = (name, status, payload)
    finally:
        for proc in procs:
            if proc.is_alive():
                proc.terminate()
            proc.join()
    name, status, payload = fallback
    if status == "timeout":
        raise TimedOut([MatchPartition(s, tuple(b)) for s, b in payload])
    raise GFMError(payload)
