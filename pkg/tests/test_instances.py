import itertools
import random
from fractions import Fraction

import pytest

from lazyvote import (
    BoundExceeded,
    Profile,
    ProfileError,
    X3cInstance,
    expected_utility,
    find_pne,
    instances,
    rank_to_utilities,
    random_profile,
    three_candidate_utilities,
    two_candidate_profile,
    validate_profile,
    x3c_reduce,
    x3c_solve_bruteforce,
    x3c_thickness,
)

rl = instances.ranking_from_letters


class TestRankToUtilities:
    def test_three_candidates(self):
        assert rank_to_utilities(rl("ABC")) == (16, 4, 1)

    def test_two_candidates_reversed(self):
        assert rank_to_utilities(rl("BA")) == (1, 3)

    def test_permuted_placement(self):
        assert rank_to_utilities(rl("CAB")) == (4, 1, 16)

    def test_outputs_validate(self):
        for m in range(1, 7):
            for ranking in itertools.permutations(range(m)):
                p = Profile(m, (rank_to_utilities(ranking),))
                assert validate_profile(p).ok

    def test_rejects_non_permutations(self):
        with pytest.raises(ProfileError):
            rank_to_utilities((0, 0, 1))

    def test_prefers_ties_over_second_favorite_alone(self):
        # among any candidate subset, the full tie beats the voter's
        # second-favorite member winning outright
        for m in range(2, 7):
            u = rank_to_utilities(tuple(range(m)))
            for size in range(2, m + 1):
                for subset in itertools.combinations(range(m), size):
                    members = sorted(subset, key=lambda j: -u[j])
                    second = members[1]
                    tie_value = expected_utility(u, frozenset(subset))
                    assert tie_value > u[second]


class TestThreeCandidateArchetypes:
    def test_first_third_tie_fan(self):
        u = three_candidate_utilities(rl("ACB"), "top-bottom")
        assert u == (8, 2, 3)
        assert Fraction(u[0] + u[1], 2) > u[2]  # tie {A,B} beats C alone

    def test_centrist(self):
        u = three_candidate_utilities(rl("BCA"), "centrist")
        assert u == (1, 8, 5)
        assert Fraction(u[1] + u[0], 2) < u[2]  # tie {B,A} loses to C alone

    def test_base_pattern(self):
        assert three_candidate_utilities(rl("ABC"), "top-bottom") == (8, 3, 2)

    def test_patterns_validate(self):
        for letters in map("".join, itertools.permutations("ABC")):
            for kind in ("top-bottom", "centrist"):
                u = three_candidate_utilities(rl(letters), kind)
                assert validate_profile(Profile(3, (u,))).ok

    def test_rejects_unknown_kind(self):
        with pytest.raises(ProfileError):
            three_candidate_utilities(rl("ABC"), "moderate")


class TestRandomProfile:
    def test_deterministic_per_seed(self):
        assert random_profile(3, 2, 7) == random_profile(3, 2, 7)
        assert random_profile(3, 2, 7) != random_profile(3, 2, 8)

    def test_always_valid(self):
        for seed in range(20):
            p = random_profile(4, 3, seed)
            assert validate_profile(p).ok

    def test_rows_are_power_permutations(self):
        p = random_profile(4, 3, 123)
        for u in p.utilities:
            assert sorted(u) == [1, 4, 16]


class TestTwoCandidateProfile:
    def test_types_map_to_favorites(self):
        p = two_candidate_profile("AB")
        assert p.utilities == ((3, 1), (1, 3))

    def test_rejects_unknown_type(self):
        with pytest.raises(ProfileError):
            two_candidate_profile("AX")


class TestX3cBasics:
    def test_single_set_thickness(self):
        assert x3c_thickness(X3cInstance(3, ((0, 1, 2),))) == (1, 1, 1)

    def test_mixed_thickness(self):
        x = X3cInstance(6, ((0, 1, 2), (0, 1, 3), (3, 4, 5)))
        assert x3c_thickness(x) == (2, 2, 1, 2, 1, 1)

    def test_rejects_duplicates_and_bad_sets(self):
        with pytest.raises(ProfileError):
            X3cInstance(6, ((0, 1, 2), (2, 1, 0)))
        with pytest.raises(ProfileError):
            X3cInstance(6, ((0, 1),))
        with pytest.raises(ProfileError):
            X3cInstance(6, ((0, 1, 9),))
        with pytest.raises(ProfileError):
            X3cInstance(7, ((0, 1, 2),))

    def test_bruteforce_decisions(self):
        assert x3c_solve_bruteforce(X3cInstance(3, ((0, 1, 2),)))
        assert x3c_solve_bruteforce(
            X3cInstance(6, ((0, 1, 2), (0, 1, 3), (3, 4, 5)))
        )
        assert not x3c_solve_bruteforce(X3cInstance(6, ((0, 1, 2), (0, 1, 3))))

    def test_bruteforce_bounds(self):
        big = X3cInstance(15, tuple((i, i + 1, i + 2) for i in range(0, 15, 3)))
        with pytest.raises(BoundExceeded):
            x3c_solve_bruteforce(big)


class TestReduction:
    def test_sizes_and_top_votes(self):
        x = X3cInstance(6, ((0, 1, 2), (0, 1, 3), (3, 4, 5)))
        red = x3c_reduce(x)
        p = red.profile
        assert (p.m, p.n) == (9, 21)
        assert not red.shortcut and not red.gadget_added
        assert red.d_candidates == range(0, 6)
        assert red.e_candidates == range(6, 9)
        tops = [0] * p.m
        for u in p.utilities:
            tops[max(range(p.m), key=lambda j: u[j])] += 1
        assert tops[:6] == [2] * 6
        assert tops[6:] == [3] * 3

    def test_thickness_renumbering_is_non_increasing(self):
        x = X3cInstance(6, ((0, 1, 2), (0, 1, 3), (3, 4, 5)))
        red = x3c_reduce(x)
        f = x3c_thickness(x)
        ordered = [f[g] for g in red.renumbering]
        assert ordered == sorted(ordered, reverse=True)

    def test_everywhere_thin_instances_shortcut(self):
        red = x3c_reduce(X3cInstance(3, ((0, 1, 2),)))
        assert red.shortcut
        assert red.profile == instances.two_equilibrium_profile()
        assert find_pne(red.profile) is not None

    def test_uniform_thick_instances_get_the_extra_set(self):
        x = X3cInstance(6, ((0, 1, 2), (3, 4, 5), (0, 3, 4), (1, 2, 5)))
        assert set(x3c_thickness(x)) == {2}
        red = x3c_reduce(x)
        assert red.gadget_added and not red.shortcut
        assert (red.profile.m, red.profile.n) == (14, 33)
        # the three fresh elements sort last (thickness 1, stable on labels)
        assert red.renumbering[-3:] == (6, 7, 8)

    def test_profiles_validate(self):
        x = X3cInstance(6, ((0, 1, 2), (0, 1, 3), (3, 4, 5)))
        assert validate_profile(x3c_reduce(x).profile).ok

    def test_reduction_soundness_small(self):
        rng = random.Random(99)
        all_sets = list(itertools.combinations(range(6), 3))
        for _ in range(12):
            sets = tuple(rng.sample(all_sets, rng.randint(2, 4)))
            x = X3cInstance(6, sets)
            has_cover = x3c_solve_bruteforce(x)
            witness = find_pne(x3c_reduce(x).profile)
            assert (witness is not None) == has_cover
