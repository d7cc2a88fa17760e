from hypothesis import given, settings, strategies as st

from gfmatch.baseline import SUBSTRING, WHOLE
from gfmatch.core import as_symbols, intern, verify
from gfmatch.decompose import INWARD, LEFT_TO_RIGHT, match_decomposed, plan_decomposition, split_points
from gfmatch.matcher import FULL, MatcherConfig, match

EXACT = dict(completeness=FULL, all_gap_splits=True)
SONNET = "ABABCDCDEFEFGG"


def sonnet_text(blocks: int, word_len: int = 1):
    """Concatenated rhyme blocks over fresh tokens; returns (text, block edges)."""
    out = []
    for b in range(blocks):
        out.extend(f"{b}:{c}:{i}" for c in SONNET for i in range(word_len))
    return intern(out), list(range(0, len(out) + 1, len(SONNET) * word_len))


def test_sonnet_plan():
    p = intern(SONNET)
    plan = plan_decomposition(p)
    assert plan.kind == LEFT_TO_RIGHT
    assert [p.tokens[q[0]] for q in plan.pieces] == ["A", "C", "E", "G"]
    assert [len(q) for q in plan.pieces] == [4, 4, 4, 2]


def test_inward_and_none():
    plan = plan_decomposition(intern("abba"))
    assert plan.kind == INWARD and plan.pieces == ((0,), (1, 1), (0,))
    assert plan_decomposition(intern("abab")) is None
    assert plan_decomposition(intern("aa")) is None


@given(st.lists(st.integers(0, 3), min_size=2, max_size=10))
def test_plan_invariants(p):
    p = tuple(p)
    plan = plan_decomposition(p)
    if plan is None:
        return
    assert sum(plan.pieces, ()) == p
    if plan.kind == LEFT_TO_RIGHT:
        alphabets = [set(q) for q in plan.pieces]
        for i, a in enumerate(alphabets):
            for b in alphabets[i + 1:]:
                assert not a & b
        # maximal: any other cut splits a symbol across sides
        cuts = set(split_points(p))
        for k in range(1, len(p)):
            if k not in cuts:
                assert set(p[:k]) & set(p[k:])
    else:
        q, inner, r = plan.pieces
        assert q and inner and r
        assert not set(inner) & (set(q) | set(r))


def test_abba_inward_match():
    p, t = intern("abba"), intern("xzzx")
    found = match_decomposed(p, t, plan_decomposition(p), MatcherConfig())
    assert [mp.boundaries for mp in found] == [(0, 1, 2, 3, 4)]


def test_degenerate_plan_is_direct():
    p, t = intern("abab"), intern("xyxyxy")
    cfg = MatcherConfig(mode=SUBSTRING)
    assert match_decomposed(p, t, None, cfg) == match(p, t, cfg)


def test_sonnet_text_block_matches_agree():
    p = intern(SONNET)
    t, edges = sonnet_text(4, word_len=2)
    blocks = set(zip(edges, edges[1:]))
    cfg = MatcherConfig(mode=SUBSTRING)

    def aligned(found):
        return sorted(mp for mp in found if (mp.start, mp.end) in blocks)

    direct = aligned(match(p, t, cfg))
    assert aligned(match_decomposed(p, t, plan_decomposition(p), cfg)) == direct
    assert len(direct) == 4


def test_sonnet_text_full_mode_equal():
    p = intern(SONNET)
    t, _ = sonnet_text(2)
    cfg = MatcherConfig(mode=SUBSTRING, **EXACT)
    assert match_decomposed(p, t, plan_decomposition(p), cfg) == match(p, t, cfg)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=2, max_size=6), st.lists(st.integers(0, 2), min_size=1, max_size=11),
       st.sampled_from([WHOLE, SUBSTRING]))
def test_decomposed_equals_direct(p, t, mode):
    plan = plan_decomposition(p)
    if plan is None:
        return
    cfg = MatcherConfig(mode=mode, **EXACT)
    got = match_decomposed(p, t, plan, cfg)
    assert got == match(p, t, cfg)
    assert all(verify(as_symbols(p), t, mp) for mp in got)
