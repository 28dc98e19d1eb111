"""Knowledge of manipulation, dominance over information sets, maximin."""

import itertools
import random

import pytest

from epivote import (
    Election,
    EmptySet,
    KnowledgeProfile,
    Plurality,
    classify,
    dominant_manipulation_of_infoset,
    hypercube,
    is_manipulation,
    knows_manipulation,
    make_model,
    min_candidate,
    pessimistic_manipulation,
    pref,
    profile,
    random_model,
)

E2 = Election(("a", "b", "c"), 2)
F = Plurality(pref("b>a>c"))


def two_state_models():
    """All models where voter 2 confuses two states, voter 1 does not.

    Voter 2's own ranking must be constant on her block; voter 1's ranking
    varies freely between the states. 6*6*6 = 216 models.
    """
    for p1a, p1b, q in itertools.product(E2.orders(), repeat=3):
        m = make_model(
            E2,
            ["s", "t"],
            {"s": profile(p1a.as_text(), q.as_text()),
             "t": profile(p1b.as_text(), q.as_text())},
            partitions={2: [["s", "t"]]},
            tiebreak=pref("b>a>c"),
        )
        yield m


def test_min_candidate():
    assert min_candidate(pref("c>b>a"), ["a", "c"]) == "a"
    assert min_candidate(pref("a>b>c"), ["b"]) == "b"
    assert min_candidate(pref("a>b>c"), ["a", "b", "c"]) == "c"
    with pytest.raises(EmptySet):
        min_candidate(pref("a>b>c"), [])


def test_singleton_infoset_collapses_all_notions(known_opposed):
    kp = KnowledgeProfile(known_opposed, "s")
    actual = known_opposed.profile_at("s")
    dicto, _ = knows_manipulation(kp, F, 2, "de_dicto")
    re_, re_alts = knows_manipulation(kp, F, 2, "de_re")
    assert dicto and re_
    for alt in E2.orders():
        fires = is_manipulation(F, E2, actual, 2, alt)
        assert dominant_manipulation_of_infoset(kp, F, 2, alt) == fires
        assert pessimistic_manipulation(kp, F, 2, alt) == fires
        assert (alt in re_alts) == fires


def test_hidden_flip_voter2_is_pessimistic_not_dominant(hidden_flip):
    """The two-state doubt model: b is the safe vote, not a dominant one.

    Against the opposed profile a b-ballot strictly helps voter 2; against
    the aligned profile it strictly hurts (c would have won outright). So
    no dominance, but the maximin comparison favours b: worst sincere
    outcome a, worst b-outcome b.
    """
    for point in ("t", "u"):
        kp = KnowledgeProfile(hidden_flip, point)
        for alt in (pref("b>c>a"), pref("b>a>c")):
            assert not dominant_manipulation_of_infoset(kp, F, 2, alt)
            assert pessimistic_manipulation(kp, F, 2, alt)
        assert not knows_manipulation(kp, F, 2, "de_dicto")[0]
        assert not knows_manipulation(kp, F, 2, "de_re")[0]
        report = classify(kp, F, 2)
        assert report.kind == "pessimistic"
        assert {a.top for a in report.pessimistic_alts} == {"b"}


def test_voter1_report_at_the_point(hidden_flip):
    kp = KnowledgeProfile(hidden_flip, "t")
    report = classify(kp, F, 1)
    # voter 1's top already wins at t and she knows the state exactly
    assert report.kind == "none"
    assert report.manipulation_alts == ()


def test_de_dicto_implies_de_re_for_three_candidate_plurality():
    """Exhaustive scan: plurality over 3 candidates never separates the modes.

    The sincere ballot already tops the voter's favourite, so a profile
    whose sincere winner is her middle candidate admits no manipulation at
    all, and profiles whose sincere winner is her worst are all improved by
    the same middle-topping ballot. Separating de dicto from de re needs a
    different rule (or a fourth candidate); with plurality the two modes
    coincide on every one of these models.
    """
    separations = 0
    dictos = 0
    for m in two_state_models():
        kp = KnowledgeProfile(m, "s")
        dicto, _ = knows_manipulation(kp, F, 2, "de_dicto")
        re_, _ = knows_manipulation(kp, F, 2, "de_re")
        if dicto:
            dictos += 1
            if not re_:
                separations += 1
    assert separations == 0
    assert dictos > 0  # the scan is not vacuous


def test_dominant_without_manipulation_found_by_search():
    """Dominance may owe its strict clause to a non-actual profile."""
    hits = []
    for m in two_state_models():
        kp = KnowledgeProfile(m, "s")
        actual = m.profile_at("s")
        for alt in E2.orders():
            if dominant_manipulation_of_infoset(kp, F, 2, alt) and not (
                is_manipulation(F, E2, actual, 2, alt)
            ):
                hits.append((m, alt))
    assert hits, "expected a dominant-but-not-manipulation witness"


def test_dominant_without_de_dicto_found_by_search():
    hits = []
    for m in two_state_models():
        kp = KnowledgeProfile(m, "s")
        has_dominant = any(
            dominant_manipulation_of_infoset(kp, F, 2, alt)
            for alt in E2.orders()
        )
        if has_dominant and not knows_manipulation(kp, F, 2, "de_dicto")[0]:
            hits.append(m)
    assert hits, "expected dominance without de dicto knowledge"


def test_dominant_is_constant_across_infoset():
    """A voter cannot learn dominance by moving inside her own block."""
    rng = random.Random(7)
    for _ in range(150):
        m = random_model(rng, tiebreak=pref("b>a>c"))
        for i in m.election.voters:
            for block in m.blocks(i):
                verdicts = {
                    tuple(
                        dominant_manipulation_of_infoset(
                            KnowledgeProfile(m, s), F, i, alt
                        )
                        for alt in m.election.orders()
                    )
                    for s in block
                }
                assert len(verdicts) == 1


def test_de_re_witness_is_dominant():
    """A ballot known to manipulate everywhere in the block also dominates."""
    rng = random.Random(11)
    checked = 0
    for _ in range(300):
        m = random_model(rng, tiebreak=pref("b>a>c"))
        for s in m.states:
            kp = KnowledgeProfile(m, s)
            for i in m.election.voters:
                ok, alts = knows_manipulation(kp, F, i, "de_re")
                if not ok:
                    continue
                for alt in alts:
                    checked += 1
                    assert dominant_manipulation_of_infoset(kp, F, i, alt)
    assert checked > 0


def test_hypercube_kills_knowledge_of_manipulation():
    m = hypercube(E2, tiebreak=pref("b>a>c"))
    rule = Plurality(pref("b>a>c"))
    for s in m.states[:6]:
        kp = KnowledgeProfile(m, s)
        for i in (1, 2):
            assert not knows_manipulation(kp, rule, i, "de_dicto")[0]
            assert not knows_manipulation(kp, rule, i, "de_re")[0]
            # pessimistic or dominant labels may still fire on the hypercube;
            # only the knowledge labels are ruled out
            assert classify(kp, rule, i).kind not in (
                "knows_de_re", "knows_de_dicto"
            )
