"""Manipulation under uncertainty: what a voter knows she can do.

All notions here are relative to a knowledge profile (model + actual state).
The voter's information set fixes a set of profiles she considers possible;
her own preference is constant across it, so "she prefers" is unambiguous.
Deviations are judged against the others voting sincerely in each considered
profile, which is what separates this module from the conditional-games view
where deviations are judged against a strategy profile.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .model import KnowledgeProfile, Preference, Profile, Voter
from .rules import VotingRule, is_manipulation


def min_candidate(p: Preference, cs) -> str:
    """The p-worst candidate in a nonempty collection."""
    return p.worst_of(cs)


def knows_manipulation(
    kp: KnowledgeProfile, F: VotingRule, i: Voter, mode: str = "de_dicto"
):
    """Does voter i know she has a manipulation, de dicto or de re?

    de_dicto: in every profile she considers possible there is some ballot
    that strictly helps her there (the ballot may differ per profile).
    de_re: one single ballot strictly helps her in every considered profile.

    Returns (verdict, witnesses); witnesses are per-profile ballot lists for
    de_dicto, and the list of uniformly-working ballots for de_re.
    """
    e = kp.election
    considered = kp.model.profiles_of(kp.information_set(i))
    alts = e.orders()
    if mode == "de_dicto":
        witnesses: dict[Profile, tuple[Preference, ...]] = {}
        for p in considered:
            working = tuple(
                alt for alt in alts if is_manipulation(F, e, p, i, alt)
            )
            if not working:
                return False, {}
            witnesses[p] = working
        return True, witnesses
    if mode == "de_re":
        uniform = tuple(
            alt
            for alt in alts
            if all(is_manipulation(F, e, p, i, alt) for p in considered)
        )
        return bool(uniform), uniform
    raise ValueError(f"mode must be de_dicto or de_re, not {mode!r}")


def dominant_manipulation_of_infoset(
    kp: KnowledgeProfile, F: VotingRule, i: Voter, alt: Preference
) -> bool:
    """Weakly improves on sincerity across the whole information set.

    For every considered profile, casting alt does at least as well for i as
    everyone (including i) voting sincerely there, and for at least one
    considered profile it does strictly better.
    """
    e = kp.election
    truth = kp.model.profile_at(kp.point).pref(i)
    strict = False
    for p in kp.model.profiles_of(kp.information_set(i)):
        deviated = F.winner(e, p.replace(i, alt))
        sincere = F.winner(e, p)
        if truth.prefers(sincere, deviated):
            return False
        if truth.prefers(deviated, sincere):
            strict = True
    return strict


def pessimistic_manipulation(
    kp: KnowledgeProfile, F: VotingRule, i: Voter, alt: Preference
) -> bool:
    """Maximin improvement: alt's worst considered outcome beats sincerity's.

    Worst is taken with i's true preference over the outcomes of the
    considered profiles, others sincere in each.
    """
    e = kp.election
    truth = kp.model.profile_at(kp.point).pref(i)
    considered = kp.model.profiles_of(kp.information_set(i))
    sincere_worst = truth.worst_of(F.winner(e, p) for p in considered)
    deviated_worst = truth.worst_of(
        F.winner(e, p.replace(i, alt)) for p in considered
    )
    return truth.prefers(deviated_worst, sincere_worst)


# Strongest label first; classify() reports the first one that applies.
KIND_ORDER = (
    "knows_de_re",
    "knows_de_dicto",
    "dominant_of_infoset",
    "pessimistic",
    "has_manipulation",
    "none",
)


@dataclass(frozen=True)
class ManipulationReport:
    """Everything classify() established about one voter at the point."""

    voter: Voter
    kind: str
    has_manipulation: bool
    knows_de_dicto: bool
    knows_de_re: bool
    manipulation_alts: tuple[Preference, ...]
    dominant_alts: tuple[Preference, ...]
    pessimistic_alts: tuple[Preference, ...]
    de_re_alts: tuple[Preference, ...]
    de_dicto_witnesses: dict = field(default_factory=dict, compare=False)


def classify(kp: KnowledgeProfile, F: VotingRule, i: Voter) -> ManipulationReport:
    """Run every manipulation notion for voter i and label the strongest."""
    e = kp.election
    actual = kp.truth()
    manipulation_alts = tuple(
        alt for alt in e.orders() if is_manipulation(F, e, actual, i, alt)
    )
    dominant_alts = tuple(
        alt
        for alt in e.orders()
        if dominant_manipulation_of_infoset(kp, F, i, alt)
    )
    pessimistic_alts = tuple(
        alt for alt in e.orders() if pessimistic_manipulation(kp, F, i, alt)
    )
    de_dicto, dicto_witnesses = knows_manipulation(kp, F, i, "de_dicto")
    de_re, re_alts = knows_manipulation(kp, F, i, "de_re")
    flags = {
        "knows_de_re": de_re,
        "knows_de_dicto": de_dicto,
        "dominant_of_infoset": bool(dominant_alts),
        "pessimistic": bool(pessimistic_alts),
        "has_manipulation": bool(manipulation_alts),
        "none": True,
    }
    kind = next(k for k in KIND_ORDER if flags[k])
    return ManipulationReport(
        voter=i,
        kind=kind,
        has_manipulation=bool(manipulation_alts),
        knows_de_dicto=de_dicto,
        knows_de_re=de_re,
        manipulation_alts=manipulation_alts,
        dominant_alts=dominant_alts,
        pessimistic_alts=pessimistic_alts,
        de_re_alts=tuple(re_alts) if de_re else (),
        de_dicto_witnesses=dicto_witnesses if de_dicto else {},
    )
