import random
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sixsplit.abelian import FgAbGroup
from sixsplit.errors import HiltonMilnorError, NotCatalogued
from sixsplit.hilton import basic_products, lyndon_words, pi_wedge
from sixsplit.spaces import Moore, Sphere, Wedge, connectivity, parse, to_text

from oracles import as_pair, brute_lyndon, is_lyndon, necklace_count, pi6_sigma_m5_expected


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_lyndon_words_match_brute_force(k):
    words = list(lyndon_words(k, 5))
    assert words == brute_lyndon(k, 5)
    for n in range(1, 6):
        assert sum(1 for w in words if len(w) == n) == necklace_count(k, n)


def test_lyndon_degenerate_inputs():
    assert list(lyndon_words(0, 3)) == []
    assert list(lyndon_words(3, 0)) == []


def test_single_letter():
    bps = basic_products([Sphere(3)], 20)
    assert [bp.word for bp in bps] == [(0,)]


def test_two_letters_weight_three():
    bps = basic_products([Sphere(3), Sphere(3)], 7)
    assert sorted(bp.label() for bp in bps) == sorted(["a", "b", "ab", "aab", "abb"])
    assert all(is_lyndon(bp.word) for bp in bps)


def test_non_suspension_letter_rejected():
    with pytest.raises(HiltonMilnorError):
        basic_products([parse("CA1"), Sphere(3)], 6)


def _sigma_m5(b, torsion):
    parts = ["S3"] * b + ["S5"] * b
    parts += [f"P4({p**r})" for p, r in torsion] + [f"P5({p**r})" for p, r in torsion]
    return parse(" v ".join(parts)) if parts else Wedge(())


def _kind(atom):
    return "S" + str(atom.n) if isinstance(atom, Sphere) else "P" + str(atom.n)


def test_sigma_m5_weight_two_families():
    b, torsion = 2, [(3, 1), (3, 2), (5, 1)]
    x = _sigma_m5(b, torsion)
    letters = list(x.summands)
    bps = [bp for bp in basic_products(letters, 6) if bp.weight == 2]
    fams = Counter(tuple(_kind(letters[i]) for i in bp.word) for bp in bps)
    c = len(torsion)
    assert fams == Counter({
        ("S3", "S3"): b * (b - 1) // 2,
        ("S3", "P4"): b * c,
        ("S3", "P5"): b * c,
        ("P4", "P4"): c * (c - 1) // 2,
        ("P4", "P5"): c * c,
    })
    assert not any(bp.weight > 2 for bp in basic_products(letters, 6))


def test_truncation_sound():
    letters = list(_sigma_m5(2, [(3, 1), (7, 1)]).summands)
    kept = {bp.word for bp in basic_products(letters, 6)}
    big = basic_products(letters, 12)
    for bp in big:
        if bp.word not in kept:
            assert connectivity(bp.smash) >= 6


def test_pi6_s3_wedge_s3():
    res = pi_wedge("S3 v S3", 6)
    assert res.group == FgAbGroup(0, ((3, 1), (3, 1)))
    by_weight = {bp.weight: g.group for bp, g in res.summands}
    # [S3, S3] lands in pi_6(S5) = 0; weight 3 is S7, truncated as 6-connected
    assert sorted(by_weight) == [1, 2]
    assert by_weight[2].is_trivial


def test_single_summand_is_table_value():
    assert pi_wedge("P4(27)", 6).group == FgAbGroup(0, ((3, 1), (3, 3)))


def test_provenance_labels():
    res = pi_wedge("S3 v P5(9)", 6)
    labels = {bp.label(res.letter_names): str(g) for bp, g in res.summands}
    assert labels["[S3, P5(9)]"] == "Z/9"


def test_not_catalogued_names_the_smash():
    with pytest.raises(NotCatalogued, match="smash"):
        pi_wedge("S3 v S3", 8)


@pytest.mark.parametrize("seed", range(20))
def test_sigma_m5_matches_expected(seed):
    rng = random.Random(seed)
    b = rng.randint(0, 3)
    torsion = [(rng.choice([3, 5, 7]), rng.randint(1, 3)) for _ in range(rng.randint(0, 3))]
    if b == 0 and not torsion:
        return
    got = pi_wedge(_sigma_m5(b, torsion), 6).group
    assert as_pair(got) == pi6_sigma_m5_expected(b, torsion)


@given(st.permutations(["S3", "S5", "P4(9)", "P5(3)", "P4(5)"]))
@settings(max_examples=30, deadline=None)
def test_letter_order_does_not_matter(order):
    got = pi_wedge(" v ".join(order), 6).group
    assert got == pi_wedge("S3 v S5 v P4(9) v P5(3) v P4(5)", 6).group


def test_normalized_smash_of_moore_pair():
    res = pi_wedge("P4(9) v P5(27)", 6)
    smashes = {to_text(bp.normalized) for bp, _ in res.summands if bp.weight == 2}
    assert smashes == {"P7(9) v P8(9)"}
