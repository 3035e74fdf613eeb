import pytest
from hypothesis import HealthCheck, settings

from lazyvote import Profile, backend, instances

settings.register_profile(
    "suite",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # jit compilation happens here, outside any timed assertion
    backend.warmup()


@pytest.fixture
def demo_profile() -> Profile:
    """Four voters, three candidates, two equilibrium outcomes."""
    return instances.two_equilibrium_profile()


def trio(kind: str) -> Profile:
    """The rock-paper-scissors rankings ABC / BCA / CAB, one archetype."""
    rows = tuple(
        instances.three_candidate_utilities(
            instances.ranking_from_letters(r), kind
        )
        for r in ("ABC", "BCA", "CAB")
    )
    return Profile(3, rows, ("A", "B", "C"))


def seven_voter_profile() -> Profile:
    """3x ACB, 2x BCA, 2x CBA, all preferring first/third ties to the middle."""
    rows = []
    for letters, copies in (("ACB", 3), ("BCA", 2), ("CBA", 2)):
        u = instances.three_candidate_utilities(
            instances.ranking_from_letters(letters), "top-bottom"
        )
        rows.extend([u] * copies)
    return Profile(3, tuple(rows), ("A", "B", "C"))


def mixed_four_profile() -> Profile:
    """ACB, BCA, BCA, CAB where only the third prefers first/third ties."""
    voters = (("ACB", "centrist"), ("BCA", "centrist"), ("BCA", "top-bottom"),
              ("CAB", "centrist"))
    rows = tuple(
        instances.three_candidate_utilities(
            instances.ranking_from_letters(letters), kind
        )
        for letters, kind in voters
    )
    return Profile(3, rows, ("A", "B", "C"))
