"""Core data model: elections, preferences, profiles, and profile models.

A profile model is an S5 Kripke structure whose states are labeled with vote
profiles and whose accessibility relations are stored as partitions (blocks of
states a voter cannot tell apart). Every voter always knows her own
preference, so within any block of voter i the i-th preference is constant;
``validate_model`` enforces this and the other structural invariants.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import (
    DanglingState,
    EmptySet,
    OwnPreferenceViolation,
    PartitionError,
    SizeLimit,
    UnknownState,
)

Candidate = str
Voter = int

# An information set is a block of the voter's partition: the states she
# considers possible, in file order.
InformationSet = tuple[str, ...]

DEFAULT_MAX_STATES = 10**6


@dataclass(frozen=True)
class Election:
    """Candidates in file order plus the number of voters (named 1..n)."""

    candidates: tuple[Candidate, ...]
    num_voters: int

    def __post_init__(self):
        if not self.candidates:
            raise EmptySet("an election needs at least one candidate")
        if len(set(self.candidates)) != len(self.candidates):
            raise ValueError("duplicate candidate names")
        if self.num_voters < 1:
            raise EmptySet("an election needs at least one voter")

    @property
    def voters(self) -> range:
        return range(1, self.num_voters + 1)

    def orders(self) -> list["Preference"]:
        """All linear orders over the candidates, in permutation order."""
        return [Preference(p) for p in itertools.permutations(self.candidates)]

    def all_profiles(self, max_profiles: int = DEFAULT_MAX_STATES) -> list["Profile"]:
        """Every assignment of a linear order to each voter: (m!)^n profiles."""
        total = _factorial(len(self.candidates)) ** self.num_voters
        if total > max_profiles:
            raise SizeLimit(
                f"{total} profiles exceed the cap of {max_profiles}"
            )
        orders = self.orders()
        return [
            Profile(combo)
            for combo in itertools.product(orders, repeat=self.num_voters)
        ]


def _factorial(k: int) -> int:
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


@dataclass(frozen=True)
class Preference:
    """A strict linear order over candidates, best first."""

    order: tuple[Candidate, ...]

    def __post_init__(self):
        if len(set(self.order)) != len(self.order):
            raise ValueError(f"order repeats a candidate: {self.order}")

    @property
    def top(self) -> Candidate:
        return self.order[0]

    def rank_value(self, c: Candidate) -> int:
        """m-1 for the favourite down to 0 for the least preferred."""
        return len(self.order) - 1 - self.order.index(c)

    def prefers(self, a: Candidate, b: Candidate) -> bool:
        """Strictly prefers a to b. False when a == b."""
        return self.order.index(a) < self.order.index(b)

    def worst_of(self, cs) -> Candidate:
        """The least preferred element of a nonempty candidate collection."""
        items = list(cs)
        if not items:
            raise EmptySet("worst_of needs at least one candidate")
        return min(items, key=self.rank_value)

    def as_text(self) -> str:
        return ">".join(self.order)


def pref(text: str) -> Preference:
    """Parse 'a>b>c' into a Preference. Convenience for tests and fixtures."""
    return Preference(tuple(part.strip() for part in text.split(">")))


@dataclass(frozen=True)
class Profile:
    """One preference per voter; index 0 belongs to voter 1."""

    prefs: tuple[Preference, ...]

    def pref(self, voter: Voter) -> Preference:
        return self.prefs[voter - 1]

    def replace(self, voter: Voter, p: Preference) -> "Profile":
        items = list(self.prefs)
        items[voter - 1] = p
        return Profile(tuple(items))

    def tops(self) -> tuple[Candidate, ...]:
        return tuple(p.top for p in self.prefs)

    def as_text(self) -> str:
        return " ; ".join(
            f"{i + 1}: {p.as_text()}" for i, p in enumerate(self.prefs)
        )


def profile(*orders: str) -> Profile:
    """profile('a>b>c', 'c>b>a') -> Profile for voters 1, 2."""
    return Profile(tuple(pref(o) for o in orders))


@dataclass(frozen=True)
class ProfileModel:
    """States with vote-profile valuations and one partition per voter.

    ``partitions[i-1]`` lists voter i's blocks; blocks and their members are
    kept in file order (block order = order of each block's first state).
    ``tiebreak`` and ``point`` are optional at this layer: rules that need a
    tie-breaking order and pointed operations check for them at use time.
    """

    election: Election
    states: tuple[str, ...]
    profiles: tuple[Profile, ...]
    partitions: tuple[tuple[InformationSet, ...], ...]
    tiebreak: Preference | None = None
    point: str | None = None

    def index(self, state: str) -> int:
        try:
            return self.states.index(state)
        except ValueError:
            raise UnknownState(f"no state named {state!r}") from None

    def profile_at(self, state: str) -> Profile:
        return self.profiles[self.index(state)]

    def blocks(self, voter: Voter) -> tuple[InformationSet, ...]:
        return self.partitions[voter - 1]

    def block_of(self, voter: Voter, state: str) -> InformationSet:
        self.index(state)
        for block in self.blocks(voter):
            if state in block:
                return block
        raise PartitionError(
            f"voter {voter}'s partition does not cover state {state!r}"
        )

    def profiles_of(self, block: InformationSet) -> list[Profile]:
        """Distinct profiles labelling the block's states, first-seen order."""
        seen: list[Profile] = []
        for s in block:
            p = self.profile_at(s)
            if p not in seen:
                seen.append(p)
        return seen

    def pointed(self) -> "KnowledgeProfile":
        if self.point is None:
            raise UnknownState("model has no designated point")
        return KnowledgeProfile(self, self.point)

    def at(self, state: str) -> "KnowledgeProfile":
        return KnowledgeProfile(self, state)


@dataclass(frozen=True)
class KnowledgeProfile:
    """A profile model with a designated actual state."""

    model: ProfileModel
    point: str

    def __post_init__(self):
        self.model.index(self.point)

    @property
    def election(self) -> Election:
        return self.model.election

    def truth(self) -> Profile:
        return self.model.profile_at(self.point)

    def information_set(self, voter: Voter) -> InformationSet:
        return self.model.block_of(voter, self.point)


def make_model(
    election: Election,
    states,
    profiles,
    partitions=None,
    tiebreak: Preference | None = None,
    point: str | None = None,
) -> ProfileModel:
    """Build a ProfileModel with canonical block ordering.

    ``profiles`` maps state -> Profile (dict) or is a sequence aligned with
    ``states``. ``partitions`` maps voter -> iterable of state-iterables;
    omitted voters (or a None value) get all-singleton partitions.
    """
    states = tuple(states)
    if isinstance(profiles, dict):
        missing = [s for s in states if s not in profiles]
        if missing:
            raise DanglingState(f"no valuation for state(s) {missing}")
        profs = tuple(profiles[s] for s in states)
    else:
        profs = tuple(profiles)
        if len(profs) != len(states):
            raise DanglingState("profiles sequence does not match states")
    order = {s: k for k, s in enumerate(states)}
    parts = []
    raw = partitions or {}
    for voter in election.voters:
        given = raw.get(voter)
        if given is None:
            parts.append(tuple((s,) for s in states))
            continue
        blocks = []
        for blk in given:
            members = tuple(sorted(blk, key=lambda s: _state_index(order, s)))
            blocks.append(members)
        blocks.sort(key=lambda b: order[b[0]])
        parts.append(tuple(blocks))
    return ProfileModel(
        election=election,
        states=states,
        profiles=profs,
        partitions=tuple(parts),
        tiebreak=tiebreak,
        point=point,
    )


def _state_index(order: dict[str, int], s: str) -> int:
    if s not in order:
        raise UnknownState(f"block member {s!r} is not a state")
    return order[s]


def validate_model(m: ProfileModel) -> None:
    """Check every invariant; raise the first violation found.

    Raises DanglingState, PartitionError, OwnPreferenceViolation, or
    UnknownState. Returning normally means the model is well formed.
    """
    validate_structure(m)
    for voter in m.election.voters:
        for block in m.blocks(voter):
            anchor = m.profile_at(block[0]).pref(voter)
            for s in block[1:]:
                if m.profile_at(s).pref(voter) != anchor:
                    raise OwnPreferenceViolation(voter, block[0], s)


def validate_structure(m: ProfileModel) -> None:
    """Everything validate_model checks except the own-preference condition.

    The axiom checker runs on models that may violate own-preference (that is
    what it reports), but it still needs real partitions and a total valuation.
    """
    if not m.states:
        raise EmptySet("a model needs at least one state")
    if len(set(m.states)) != len(m.states):
        raise PartitionError("duplicate state names")
    if len(m.profiles) != len(m.states):
        raise DanglingState("valuation does not cover every state")
    cset = set(m.election.candidates)
    for s, p in zip(m.states, m.profiles):
        if len(p.prefs) != m.election.num_voters:
            raise DanglingState(
                f"state {s!r} ranks {len(p.prefs)} voters, "
                f"expected {m.election.num_voters}"
            )
        for i, r in enumerate(p.prefs, start=1):
            if set(r.order) != cset or len(r.order) != len(cset):
                raise DanglingState(
                    f"state {s!r}, voter {i}: order {r.as_text()} does not "
                    f"rank every candidate exactly once"
                )
    if len(m.partitions) != m.election.num_voters:
        raise PartitionError("need one partition per voter")
    for voter in m.election.voters:
        seen: dict[str, InformationSet] = {}
        for block in m.blocks(voter):
            if not block:
                raise PartitionError(f"voter {voter} has an empty block")
            for s in block:
                if s not in m.states:
                    raise UnknownState(
                        f"voter {voter}'s partition mentions unknown state {s!r}"
                    )
                if s in seen:
                    raise PartitionError(
                        f"voter {voter}: state {s!r} appears in two blocks"
                    )
                seen[s] = block
        if len(seen) != len(m.states):
            missing = [s for s in m.states if s not in seen]
            raise PartitionError(
                f"voter {voter}'s partition misses state(s) {missing}"
            )
    if m.tiebreak is not None and (
        set(m.tiebreak.order) != cset or len(m.tiebreak.order) != len(cset)
    ):
        raise DanglingState("tiebreak order must rank every candidate once")
    if m.point is not None and m.point not in m.states:
        raise UnknownState(f"point {m.point!r} is not a state")


def restrict(m: ProfileModel, keep) -> ProfileModel:
    """Submodel on the given states, in original order.

    The valuation is cut down and every partition block is intersected with
    the kept states; blocks that lose all members disappear. The point is
    kept if it survives, dropped to None otherwise. Raises EmptySet when no
    state survives (models must be nonempty).
    """
    keep_set = set(keep)
    states = tuple(s for s in m.states if s in keep_set)
    if not states:
        raise EmptySet("restriction keeps no state")
    profiles = tuple(m.profile_at(s) for s in states)
    order = {s: k for k, s in enumerate(states)}
    partitions = []
    for voter in m.election.voters:
        blocks = []
        for block in m.blocks(voter):
            cut = tuple(s for s in block if s in keep_set)
            if cut:
                blocks.append(cut)
        blocks.sort(key=lambda b: order[b[0]])
        partitions.append(tuple(blocks))
    return ProfileModel(
        election=m.election,
        states=states,
        profiles=profiles,
        partitions=tuple(partitions),
        tiebreak=m.tiebreak,
        point=m.point if m.point in keep_set else None,
    )


def hypercube(
    election: Election,
    tiebreak: Preference | None = None,
    max_states: int = DEFAULT_MAX_STATES,
) -> ProfileModel:
    """The model of total mutual ignorance: one state per possible profile.

    Each voter knows exactly her own preference, so her blocks group the
    (m!)^n states by her component. Raises SizeLimit when the state count
    would exceed ``max_states``.
    """
    profiles = election.all_profiles(max_profiles=max_states)
    states = tuple(_hypercube_label(p) for p in profiles)
    partitions: dict[Voter, list[list[str]]] = {}
    for voter in election.voters:
        groups: dict[Preference, list[str]] = {}
        for s, p in zip(states, profiles):
            groups.setdefault(p.pref(voter), []).append(s)
        partitions[voter] = list(groups.values())
    return make_model(
        election, states, dict(zip(states, profiles)),
        partitions=partitions, tiebreak=tiebreak,
    )


def _hypercube_label(p: Profile) -> str:
    parts = []
    for r in p.prefs:
        if all(len(c) == 1 for c in r.order):
            parts.append("".join(r.order))
        else:
            parts.append("-".join(r.order))
    return "_".join(parts)
