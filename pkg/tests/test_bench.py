import io
import itertools

import pytest

from gfmatch.baseline import SUBSTRING, WHOLE
from gfmatch.bench import (
    BASELINE,
    CSV_COLUMNS,
    HEURISTIC,
    PORTFOLIO,
    InstanceSpec,
    constrained_patterns,
    fig2_specs,
    fig3_specs,
    gen_instance,
    is_constrained,
    median_time_by,
    read_csv,
    repetition_time_correlation,
    run_suite,
    write_csv,
)
from gfmatch.core import canonical
from gfmatch.errors import InvalidSpec
from gfmatch.repindex import repetition_count


def brute_census(length, sigma):
    return {
        canonical(s) for s in itertools.product(range(sigma), repeat=length)
        if len(set(s)) == sigma and is_constrained(s)
    }


def test_census_five_three():
    assert len(constrained_patterns(5, 3)) == 10
    assert set(constrained_patterns(5, 3)) == brute_census(5, 3)


def test_census_small_cases():
    assert constrained_patterns(2, 1) == [(0, 0)]
    assert constrained_patterns(2, 2) == []
    assert len(constrained_patterns(5, 3, constrained=False)) == 25


def test_is_constrained():
    assert is_constrained("ABABCDCDEFEFGG")
    assert is_constrained("aba")
    assert not is_constrained("abca")
    assert not is_constrained("abb")


def test_generator_reaches_every_pattern():
    seen = {gen_instance(InstanceSpec(10, 3, 5, 3, seed=s))[0] for s in range(600)}
    assert seen == set(constrained_patterns(5, 3))


def test_generator_deterministic_and_uniform_text():
    spec = InstanceSpec(200, 4, 5, 3, seed=11)
    assert gen_instance(spec) == gen_instance(spec)
    _, t = gen_instance(spec)
    assert len(t) == 200 and set(t) <= set(range(4))
    assert gen_instance(InstanceSpec(200, 4, 5, 3, seed=12)) != gen_instance(spec)


def test_pattern_length_two_is_aa():
    assert gen_instance(InstanceSpec(5, 2, 2, 1))[0] == (0, 0)
    with pytest.raises(InvalidSpec):
        gen_instance(InstanceSpec(5, 2, 2, 3))
    with pytest.raises(InvalidSpec):
        gen_instance(InstanceSpec(5, 2, 2, 2))
    with pytest.raises(InvalidSpec):
        gen_instance(InstanceSpec(0, 2, 2, 1))


def test_presets_shape():
    f2 = fig2_specs()
    assert len(f2) == 500
    assert {s.text_alphabet for s in f2} == set(range(4, 17))
    assert {(s.text_len, s.pattern_len, s.pattern_alphabet) for s in f2} == {(200, 5, 3)}
    f3 = fig3_specs(count=9)
    texts = {gen_instance(s)[1] for s in f3}
    assert len(texts) == 1
    assert {s.pattern_alphabet for s in f3} == {2, 3, 4}
    assert repetition_count(next(iter(texts))) == 70


def test_fig2_repetition_band():
    counts = [repetition_count(gen_instance(s)[1]) for s in fig2_specs(count=52)]
    assert 40 <= min(counts) and max(counts) <= 160
    assert 60 <= sorted(counts)[len(counts) // 2] <= 130


def test_run_suite_records():
    specs = [InstanceSpec(40, 3, 4, 2, seed=s) for s in range(4)]
    records = run_suite(specs, [HEURISTIC, BASELINE], cutoff=1.0, mode=SUBSTRING, warmup=False)
    assert len(records) == 12
    assert [(r.instance_id, r.algorithm) for r in records] == sorted((r.instance_id, r.algorithm) for r in records)
    by = {}
    for r in records:
        by.setdefault(r.instance_id, {})[r.algorithm] = r
    for row in by.values():
        assert row[PORTFOLIO].time_ms == min(row[HEURISTIC].time_ms, row[BASELINE].time_ms)
        assert row[PORTFOLIO].mode == "substring:all"
        assert row[HEURISTIC].matches <= row[BASELINE].matches


def test_run_suite_edge_cases():
    assert run_suite([], [HEURISTIC]) == []
    with pytest.raises(InvalidSpec):
        run_suite([], [])
    with pytest.raises(InvalidSpec):
        run_suite([], ["nope"])


def test_timeout_recorded():
    spec = InstanceSpec(400, 2, 8, 4, seed=1)
    (rec,) = run_suite([spec], [BASELINE], cutoff=0.02, mode=SUBSTRING, warmup=False)
    assert rec.timed_out and rec.time_ms >= 20.0


def test_csv_roundtrip():
    specs = [InstanceSpec(30, 3, 4, 2, seed=s) for s in range(2)]
    records = run_suite(specs, [HEURISTIC, BASELINE], mode=WHOLE, warmup=False)
    buf = io.StringIO()
    write_csv(records, buf)
    text = buf.getvalue()
    assert text.splitlines()[0] == ",".join(CSV_COLUMNS)
    assert "\r" not in text
    back = read_csv(io.StringIO(text))
    assert [(r.instance_id, r.algorithm, r.matches, r.timed_out) for r in back] == [
        (r.instance_id, r.algorithm, r.matches, r.timed_out) for r in records]
    assert all(abs(a.time_ms - b.time_ms) < 1e-3 for a, b in zip(back, records))


def test_analysis_helpers():
    specs = [InstanceSpec(60, s % 4 + 2, 5, 3, seed=s) for s in range(12)]
    records = run_suite(specs, [HEURISTIC], mode=SUBSTRING, warmup=False)
    rho = repetition_time_correlation(records)
    assert -1.0 <= rho <= 1.0
    med = median_time_by(records, HEURISTIC, "text_sigma")
    assert sorted(med) == [2, 3, 4, 5]
