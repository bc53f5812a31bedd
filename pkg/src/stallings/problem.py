"""Search harness for the open question: does r̄(H1 ∩ H2) = r̄(H1) r̄(H2) > 0
force r̄(<H1, H2>) = 1?

Pairs are drawn from the seeded random-subgroup model.  Each trial gets its
own generator seeded by ``(seed, trial)``, so logs do not depend on how
trials are split across workers.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .graph import Alphabet
from .io import format_finding
from .subgroup import Subgroup, from_generators, intersect, join, random_generators, _check_alphabets
from .words import Word

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ProblemFinding:
    r1: int
    r2: int
    r_meet: int
    r_join: int
    seed: int | None = None
    trial: int | None = None
    gens1: tuple[Word, ...] = ()
    gens2: tuple[Word, ...] = ()

    @property
    def negative(self) -> bool:
        """True when this pair would answer the question in the negative."""
        return self.r_join > 1

    @property
    def ranks(self) -> tuple[int, int, int, int]:
        return self.r1, self.r2, self.r_meet, self.r_join


def problem_probe(h1: Subgroup, h2: Subgroup) -> ProblemFinding | None:
    """Report the join rank when the pair meets the hypothesis, else None."""
    _check_alphabets(h1, h2)
    r1, r2 = h1.reduced_rank, h2.reduced_rank
    if r1 * r2 == 0:
        return None
    r_meet = intersect(h1, h2).reduced_rank
    if r_meet != r1 * r2:
        return None
    finding = ProblemFinding(r1, r2, r_meet, join(h1, h2).reduced_rank)
    if finding.negative:
        log.warning("NEGATIVE ANSWER CANDIDATE: ranks %s with r̄(join) = %d", finding.ranks[:3], finding.r_join)
    return finding


def _run_trials(seed: int, trials: list[int], num_letters: int, max_gens: int, max_length: int):
    alphabet = Alphabet("abcdefghijklmnopqrstuvwxyz"[:num_letters])
    found = []
    for t in trials:
        rng = np.random.default_rng([seed, t])
        g1 = random_generators(rng, num_letters, max_gens, max_length)
        g2 = random_generators(rng, num_letters, max_gens, max_length)
        hit = problem_probe(from_generators(alphabet, g1), from_generators(alphabet, g2))
        if hit is not None:
            found.append(
                ProblemFinding(*hit.ranks, seed=seed, trial=t, gens1=tuple(g1), gens2=tuple(g2))
            )
    return found


def problem_search(
    seed: int,
    trials: int,
    num_letters: int = 2,
    max_gens: int = 3,
    max_length: int = 12,
    workers: int = 1,
) -> list[ProblemFinding]:
    """Run ``trials`` seeded random pairs; return the hypothesis-meeting ones in trial order."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if not 1 <= num_letters <= 26:
        raise ValueError("num_letters must be in 1..26")
    if workers <= 1:
        return _run_trials(seed, list(range(trials)), num_letters, max_gens, max_length)
    shards = [list(range(i, trials, workers)) for i in range(workers)]
    with ProcessPoolExecutor(workers) as pool:
        parts = pool.map(
            _run_trials,
            [seed] * workers,
            shards,
            [num_letters] * workers,
            [max_gens] * workers,
            [max_length] * workers,
        )
        found = [f for part in parts for f in part]
    return sorted(found, key=lambda f: f.trial)


def findings_log(
    findings: list[ProblemFinding],
    seed: int,
    trials: int,
    num_letters: int = 2,
    max_gens: int = 3,
    max_length: int = 12,
) -> str:
    alphabet = Alphabet("abcdefghijklmnopqrstuvwxyz"[:num_letters])
    lines = [
        f"# problem-search seed={seed} trials={trials} letters={num_letters} "
        f"max_gens={max_gens} max_length={max_length} findings={len(findings)}"
    ]
    for f in findings:
        lines.append(format_finding(alphabet, f.seed, f.trial, list(f.gens1), list(f.gens2), f.ranks))
    return "\n".join(lines) + "\n"
