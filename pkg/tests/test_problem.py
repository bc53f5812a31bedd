import logging

import pytest

from stallings.problem import findings_log, problem_probe, problem_search
from stallings.subgroup import from_generators, trivial_subgroup


def test_probe_examples(ab, z2_z3_kernels, deltas):
    hit = problem_probe(*z2_z3_kernels)
    assert hit is not None and hit.ranks == (2, 3, 6, 1) and not hit.negative
    # 8 != 15, so the theorem pair does not meet the hypothesis
    assert problem_probe(*deltas) is None
    assert problem_probe(from_generators(ab, ["ab", "bA"]), trivial_subgroup(ab)) is None


def test_negative_candidates_are_flagged():
    from stallings.problem import ProblemFinding

    assert ProblemFinding(2, 3, 6, 2).negative
    assert not ProblemFinding(2, 3, 6, 1).negative


def test_search_rejects_bad_arguments():
    with pytest.raises(ValueError):
        problem_search(1, 0)
    with pytest.raises(ValueError):
        problem_search(1, 5, num_letters=0)


def test_search_is_deterministic():
    a = problem_search(7, 200)
    b = problem_search(7, 200)
    assert a == b
    assert [f.trial for f in a] == sorted(f.trial for f in a)
    for f in a:
        assert f.r_meet == f.r1 * f.r2 > 0


def test_search_findings_satisfy_hypothesis(ab):
    for f in problem_search(3, 150):
        h1, h2 = from_generators(ab, list(f.gens1)), from_generators(ab, list(f.gens2))
        assert problem_probe(h1, h2).ranks == f.ranks


def test_workers_do_not_change_results():
    one = problem_search(11, 120)
    two = problem_search(11, 120, workers=2)
    assert findings_log(one, 11, 120) == findings_log(two, 11, 120)


def test_log_format():
    found = problem_search(42, 100)
    text = findings_log(found, 42, 100)
    lines = text.splitlines()
    assert lines[0].startswith("# problem-search seed=42 trials=100")
    assert lines[0].endswith(f"findings={len(found)}")
    assert len(lines) == 1 + len(found)
    for line in lines[1:]:
        assert len(line.split("\t")) == 8


def test_probe_logs_warning_for_negative_pair(ab, caplog, monkeypatch):
    import stallings.problem as problem

    monkeypatch.setattr(problem, "join", lambda *hs: from_generators(ab, ["aa", "bb", "ab"]))
    with caplog.at_level(logging.WARNING, logger="stallings.problem"):
        problem.problem_probe(from_generators(ab, ["aa", "b"]), from_generators(ab, ["a", "b"]))
    assert "NEGATIVE" in caplog.text
