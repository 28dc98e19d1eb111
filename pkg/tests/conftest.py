import pathlib

import pytest

from epivote import (
    And,
    Announce,
    CompAtom,
    Know,
    Not,
    Plurality,
    PrefAtom,
    ProfileAtom,
    WinsAtom,
    load_model,
    pref,
)

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


def fixture_path(name: str) -> str:
    return str(FIXTURES / f"{name}.model")


def random_formula(rng, e, depth=3):
    """A random formula over e, announcement and K operators included."""
    if depth == 0 or rng.random() < 0.3:
        kind = rng.randrange(4)
        if kind == 0:
            return ProfileAtom(rng.choice(e.all_profiles()))
        if kind == 1:
            return PrefAtom(rng.choice(list(e.voters)), rng.choice(e.orders()))
        if kind == 2:
            a, b = rng.sample(list(e.candidates), 2)
            return CompAtom(rng.choice(list(e.voters)), a, b)
        return WinsAtom(rng.choice(list(e.candidates)))
    kind = rng.randrange(4)
    if kind == 0:
        return Not(random_formula(rng, e, depth - 1))
    if kind == 1:
        return And(
            random_formula(rng, e, depth - 1), random_formula(rng, e, depth - 1)
        )
    if kind == 2:
        return Know(rng.choice(list(e.voters)), random_formula(rng, e, depth - 1))
    return Announce(
        random_formula(rng, e, depth - 1), random_formula(rng, e, depth - 1)
    )


@pytest.fixture(scope="session")
def rule():
    return Plurality(pref("b>a>c"))


@pytest.fixture(scope="session")
def known_opposed():
    return load_model(fixture_path("known-opposed"))


@pytest.fixture(scope="session")
def known_aligned():
    return load_model(fixture_path("known-aligned"))


@pytest.fixture(scope="session")
def hidden_flip():
    return load_model(fixture_path("hidden-flip"))


@pytest.fixture(scope="session")
def nested_doubt():
    return load_model(fixture_path("nested-doubt"))


@pytest.fixture(scope="session")
def mutual_doubt():
    return load_model(fixture_path("mutual-doubt"))


@pytest.fixture(scope="session")
def all_fixture_models(known_opposed, known_aligned, hidden_flip,
                       nested_doubt, mutual_doubt):
    return {
        "known-opposed": known_opposed,
        "known-aligned": known_aligned,
        "hidden-flip": hidden_flip,
        "nested-doubt": nested_doubt,
        "mutual-doubt": mutual_doubt,
    }
