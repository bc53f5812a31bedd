import itertools
import random
from math import gcd

import pytest

from stallings.constructions import (
    GAMMA_ALPHABET,
    GammaParams,
    VerificationError,
    build_example,
    build_gamma,
    certificate_c1,
    certificate_c2,
    exponent_sums_vanish,
    gamma_base,
    recognize_gamma,
    verify_example,
    verify_theorem,
)
from stallings.graph import Alphabet, canonical_form, connected_components, core, is_folded
from stallings.subgroup import (
    contains,
    free_group,
    from_generators,
    intersect,
    join,
    pullback,
    trivial_subgroup,
)

from helpers import closed_reduced_paths


def cycle_letters(h):
    return {x: sum(1 for *_, c in h.graph.edges() if c == GAMMA_ALPHABET.code(x)) for x in "abcde"}


def test_gamma_params_validation():
    with pytest.raises(ValueError):
        GammaParams(1, 3, 2, 1)  # m < l
    with pytest.raises(ValueError):
        GammaParams(2, 1, 3, 2, (0,), (0, 0))
    with pytest.raises(ValueError):
        GammaParams(2, 1, 3, 2, (0,), (0, 1), degree3=True)
    with pytest.raises(ValueError):
        GammaParams(1, 1, 1, 1, degree3=True)
    p = GammaParams(11, 2, 5, 3)
    assert p.d_attach == (0, 1) and p.e_attach == (2, 3, 4)
    assert GammaParams(1, 1, 1, 1).e_attach == (0,)


def test_build_gamma_smallest():
    h = build_gamma(GammaParams(1, 1, 1, 1, (0,), (0,)))
    assert h.graph.degree(h.graph.basepoint) == 4
    assert h.reduced_rank == 2
    assert h == gamma_base()


def test_build_gamma_theorem_graphs():
    h1 = build_gamma(GammaParams(7, 1, 3, 2, (0,), (1, 2)))
    assert h1.reduced_rank == 3
    assert [cycle_letters(h1)[x] for x in "abc"] == [7, 21, 14]
    h2 = build_gamma(GammaParams(11, 2, 5, 3, (0, 1), (2, 3, 4)))
    assert h2.reduced_rank == 5
    assert [cycle_letters(h2)[x] for x in "abc"] == [22, 55, 33]


@pytest.mark.parametrize("k,l,m,n", [(1, 1, 1, 1), (2, 1, 2, 2), (3, 2, 4, 1), (5, 3, 3, 3), (4, 2, 6, 3)])
def test_build_gamma_invariants(k, l, m, n):
    h = build_gamma(GammaParams(k, l, m, n))
    assert is_folded(h.graph)
    assert core(h.graph).num_vertices == h.graph.num_vertices
    assert h.reduced_rank == l + n
    base = gamma_base()
    for w in h.generators():
        assert contains(base, w)
    assert recognize_gamma(h.graph) == GammaParams(k, l, m, n)


def test_gamma_base():
    g = gamma_base()
    assert (g.rank, g.reduced_rank) == (3, 2)
    assert contains(g, "daD")
    assert g == from_generators(GAMMA_ALPHABET, ["b", "daD", "ecE"])


def test_theorem_pair(deltas):
    d1, d2 = deltas
    assert (d1.reduced_rank, d2.reduced_rank) == (3, 5)
    for x in "abc":
        assert gcd(cycle_letters(d1)[x], cycle_letters(d2)[x]) == 1
    base = gamma_base()
    for h in deltas:
        assert all(contains(base, w) for w in h.generators())
        # every phase vertex has degree 3, everything else degree 2
        degrees = sorted(h.graph.degree(v) for v in h.graph.vertices)
        assert set(degrees) == {2, 3}
    assert sum(d1.graph.degree(v) == 3 for v in d1.graph.vertices) == 6
    assert sum(d2.graph.degree(v) == 3 for v in d2.graph.vertices) == 10


def test_verify_theorem():
    res = verify_theorem()
    assert res.ok
    rep = res.inequality
    assert (rep.r1, rep.r2, rep.r_meet, rep.r_join) == (3, 5, 8, 2)
    assert (rep.lhs, rep.rhs) == (16, 15)
    assert res.pullback_components == 1 and res.minus_chi == 8
    assert res.pullback_shape.cycle_lengths == (154, 1155, 462)
    assert (res.pullback_shape.l, res.pullback_shape.n) == (2, 6)


def test_pullback_canonically_equals_gamma_77(deltas):
    psi = core(pullback(*deltas))
    params = recognize_gamma(psi)
    assert (params.k, params.l, params.m, params.n) == (77, 2, 15, 6)
    assert canonical_form(psi, rooted=False) == canonical_form(build_gamma(params).graph, rooted=False)


def test_attachment_choice_does_not_matter():
    # all 6 degree-3 attachments for Δ1, a sample of the 120 for Δ2
    d1_choices = [((p[0],), p[1:]) for p in itertools.permutations(range(3))]
    d2_choices = [((p[0], p[1]), p[2:]) for p in itertools.permutations(range(5))]
    rng = random.Random(77)
    for d1, e1 in d1_choices:
        for d2, e2 in rng.sample(d2_choices, 4):
            res = verify_theorem(strict=False, d1=d1, e1=e1, d2=d2, e2=e2)
            assert res.ok, res.failures


def test_certificate_c1(deltas, ab):
    cert = certificate_c1(*deltas)
    assert cert.verdict
    assert len(cert.checked_pairs) == 16
    rose = free_group(ab)
    assert certificate_c1(rose, rose).verdict and certificate_c1(rose, rose).checked_pairs == ()
    bad = certificate_c1(gamma_base(), trivial_subgroup(GAMMA_ALPHABET))
    assert not bad.verdict


def test_certificate_c1_witnesses_map_correctly(deltas):
    psi = core(pullback(*deltas))
    names = {psi.names[w]: w for w in psi.vertices}
    for side, v, witness in certificate_c1(*deltas).checked_pairs:
        assert witness[side - 1] == v
        assert psi.degree(names[witness]) == 3


def test_certificate_c2(deltas):
    cert = certificate_c2(*deltas, 7, 11, "abc")
    assert cert.verified == (True, True) and cert.join_identified and cert.certified
    # swapping the moduli breaks it
    assert certificate_c2(*deltas, 11, 7, "abc").verified == (False, False)


def test_certificate_c2_trivial_cases():
    A = Alphabet("a")
    rose = free_group(A)
    cert = certificate_c2(rose, rose, 7, 7, "a")
    assert cert.verified == (False, False) and not cert.certified
    h = build_gamma(GammaParams(3, 1, 2, 1))
    for m in (2, 5, 13):
        assert exponent_sums_vanish(h, m, ())


@pytest.mark.parametrize("side,modulus", [(0, 7), (1, 11)])
def test_c2_potentials_match_cycle_enumeration(deltas, side, modulus):
    h = deltas[side]
    g = h.graph
    A = g.alphabet
    weight = {A.code(x): 1 for x in "abc"} | {A.code(x, -1): -1 for x in "abc"}
    paths = closed_reduced_paths(g, 80)
    assert paths
    for p in paths:
        assert sum(weight.get(g.label(d), 0) for d in p) % modulus == 0
    assert exponent_sums_vanish(h, modulus, "abc")


def test_build_example_ranks():
    h0, h1, h2 = build_example(1)
    assert h2 == h0
    _, _, h2 = build_example(2)
    assert (h2.graph.num_vertices, h2.graph.num_edges, h2.reduced_rank) == (4, 9, 5)
    h0, h1, h2 = build_example(3)
    assert (h0.reduced_rank, h1.reduced_rank, h2.reduced_rank) == (2, 3, 8)


def test_build_example_rejects_non_coprime():
    from stallings.constructions import cyclic_preset

    with pytest.raises(ValueError):
        build_example(2, cyclic_preset(2), cyclic_preset(4))


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_example_extended_join_rank(k):
    res = verify_example(k, strict=False)
    assert res.extended_join == free_group(res.extended_join.alphabet)
    assert res.extended_join_rank == k


def test_verify_example_k1_passes():
    res = verify_example(1)
    assert (res.total, res.product, res.extended_join_rank) == (6, 6, 1)


def test_verify_example_reports_double_coset_mismatch_for_k2():
    # r̄(H1, H2) = k r̄(H0) r̄(H1) here, not r̄(H1) r̄(H2); see test_inequalities for the brute-force check
    res = verify_example(2, strict=False)
    assert (res.r1, res.r2, res.total, res.product) == (3, 5, 12, 15)
    assert res.failures and "12" in res.failures[0]
    with pytest.raises(VerificationError):
        verify_example(2)


def test_recognize_gamma_rejects_other_graphs(ab):
    assert recognize_gamma(from_generators(ab, ["ab"]).graph) is None
    assert recognize_gamma(from_generators(GAMMA_ALPHABET, ["b", "dAD"]).graph) is None


def test_intersection_of_theorem_pair_is_the_cored_pullback(deltas):
    psi = core(pullback(*deltas))
    (comp,) = connected_components(psi)
    assert canonical_form(comp) == canonical_form(intersect(*deltas).graph)
    assert join(*deltas) == gamma_base()
