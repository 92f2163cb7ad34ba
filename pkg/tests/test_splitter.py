import random
from collections import Counter

import pytest

from sixsplit.abelian import FgAbGroup
from sixsplit.errors import InvariantError
from sixsplit.spaces import ConeIotaAlpha1, OpaqueCell, dimension, homology_of, to_text
from sixsplit.splitter import (
    complement_cells,
    homology_table,
    reduced_homology,
    skeleton_data,
    split_suspension,
    splitting_report,
    suspension_of_y_included,
    validate,
)

from oracles import as_pair, random_invariants, table_homology, theorem_summands


def doc(b=0, d=0, torsion=(), kind="trivial", indices=(), **extra):
    out = {
        "b": b,
        "d": d,
        "torsion": [{"p": p, "r": r} for p, r in torsion],
        "p1_action": {"type": kind, "indices": list(indices)},
    }
    out.update(extra)
    return out


def split_text(d):
    return to_text(split_suspension(validate(d)))


# ---------------------------------------------------------------- theorem examples


def test_minimal_case_a():
    assert split_text(doc()) == "S7"


def test_case_a_example():
    got = split_text(doc(2, 1, [(3, 2), (5, 1)]))
    assert got == "S3 v S3 v S4 v S4 v S5 v S5 v S7 v P4(5) v P4(9) v P5(5) v P5(9)"


def test_case_b_example():
    assert split_text(doc(1, 0, kind="free")) == "SCP3"


def test_case_c_example():
    assert split_text(doc(0, 0, [(3, 1)], "torsion", [0])) == "P5(3) v CIA(1)"


def test_case_c_picks_largest_cited_exponent():
    inv = validate(doc(0, 0, [(3, 1), (3, 3), (3, 2)], "torsion", [0, 2]))
    atoms = split_suspension(inv).summands
    assert ConeIotaAlpha1(2) in atoms
    # the uncited Z/27 keeps its P4, the absorbed Z/9 loses it
    assert "P4(27)" in to_text(split_suspension(inv))
    assert "P4(9)" not in to_text(split_suspension(inv))


def test_case_c_ties_use_first_position():
    inv = validate(doc(0, 0, [(3, 2), (3, 2)], "torsion", [0, 1]))
    assert inv.cbar == 0
    assert to_text(split_suspension(inv)) == "P4(9) v P5(9) v P5(9) v CIA(2)"


# ---------------------------------------------------------------- validation


def test_two_primary_torsion_dropped_with_warning():
    inv = validate(doc(1, 0, [(2, 3), (3, 1)]))
    assert inv.torsion == ((3, 1),)
    assert any("Z/8" in w for w in inv.warnings)
    rep = splitting_report(inv)
    assert any("odd" in c for c in rep.citations)


def test_p1_mod_3_shortcut():
    raw = {"b": 1, "d": 0, "torsion": [], "p1_mod_3": 0}
    assert validate(raw).case == "A"


@pytest.mark.parametrize(
    "raw, match",
    [
        (doc(-1), "non-negative"),
        (doc(0, -2), "non-negative"),
        (doc(0, 0, [(5, 1)], "free"), "H\\^2\\(M; Z/3\\) = 0"),
        (doc(0, 0, [(5, 1)], "torsion", [0]), "H\\^2\\(M; Z/3\\) = 0"),
        (doc(1, 0, [(3, 1), (5, 1)], "torsion", [1]), "must cite 3-torsion"),
        (doc(1, 0, [(3, 1)], "torsion", [4]), "out of range"),
        (doc(1, 0, [(2, 1), (3, 1)], "torsion", [0]), "2-primary"),
        (doc(1, 0, [(4, 1)]), "not prime"),
        (doc(1, 0, [(3, 0)]), "exponent"),
        (doc(1, 0, [(3, 1)], "trivial", [0]), "cannot cite"),
        (doc(1, 0, [(3, 1)], "torsion", []), "at least one"),
        ({"b": 1, "d": 0, "torsion": []}, "missing p1_action"),
        ({"b": 1, "d": 0, "torsion": [], "p1_mod_3": 2}, "free or torsion"),
        (doc(1, 0, p1_mod_3=1), "contradicts"),
        (doc(1, 0, p1_mod_3=5), "0, 1 or 2"),
    ],
)
def test_validation_errors(raw, match):
    with pytest.raises(InvariantError, match=match) as info:
        validate(raw)
    assert info.value.citation


def test_free_and_torsion_defaults_to_case_b():
    inv = validate(doc(1, 0, [(3, 1)], "free", [0]))
    assert inv.case == "B"
    assert any("case B" in w for w in inv.warnings)


def test_validate_is_idempotent():
    inv = validate(doc(2, 1, [(5, 1), (3, 2), (2, 1)], "torsion", [1]))
    assert validate(inv) == inv
    assert validate(inv.to_document()) == inv


# ---------------------------------------------------------------- properties


def test_homology_table_rendering():
    h = homology_table(validate(doc(2, 1, [(3, 2)])))
    assert [str(g) for g in h] == ["Z", "0", "Z^2 + Z/9", "Z^2 + Z/9", "Z^2", "0", "Z"]
    assert reduced_homology(validate(doc()))[0].is_trivial


@pytest.mark.parametrize("seed", range(40))
def test_random_invariants_split(seed):
    rng = random.Random(seed)
    raw = random_invariants(rng)
    inv = validate(raw)
    wedge = split_suspension(inv)
    # summand multiset straight from the case formulas
    assert Counter(str(a) for a in wedge.summands) == theorem_summands(raw)
    # exactly one 7-dimensional atom
    assert sum(1 for a in wedge.summands if dimension(a) == 7) == 1
    # suspension isomorphism against the table
    h = homology_of(wedge)
    want = table_homology(raw)
    for n in range(7):
        assert as_pair(h[n + 1]) == want[n]
    assert suspension_of_y_included(inv)


@pytest.mark.parametrize("seed", range(20))
def test_reordering_torsion_is_harmless(seed):
    rng = random.Random(100 + seed)
    raw = random_invariants(rng, max_c=4)
    perm = list(range(len(raw["torsion"])))
    rng.shuffle(perm)
    shuffled = dict(raw)
    shuffled["torsion"] = [raw["torsion"][i] for i in perm]
    where = {old: new for new, old in enumerate(perm)}
    shuffled["p1_action"] = {
        "type": raw["p1_action"]["type"],
        "indices": [where[i] for i in raw["p1_action"]["indices"]],
    }
    assert split_suspension(validate(shuffled)) == split_suspension(validate(raw))


# ---------------------------------------------------------------- skeleton data


def test_skeleton_case_a_free():
    sk = skeleton_data(validate(doc(2, 1)))
    assert to_text(sk.Y) == "S2 v S2 v S3 v S3"
    assert to_text(sk.C_j) == "S4 v S4 v S6"
    assert sk.cj_resolved


def test_skeleton_case_b():
    sk = skeleton_data(validate(doc(2, 1, [(5, 1)], "free")))
    assert to_text(sk.Y) == "S2 v S3 v S3 v P3(5)"
    assert to_text(skeleton_data(validate(doc(2, 1, kind="free"))).C_j) == "S4 v OPQ:C'[2,4,6]"


def test_skeleton_case_a_cyclic():
    sk = skeleton_data(validate(doc(2, 0, [(3, 1), (5, 2)])))
    assert to_text(sk.C_j) == "S4 v OPQ:C''(75)[3,4,4,6]"
    assert to_text(sk.X) == "S2 v S2 v P3(3) v P3(25)"


def test_skeleton_opaque_when_hypotheses_fail():
    sk = skeleton_data(validate(doc(1, 0, [(3, 1), (3, 2)])))
    assert not sk.cj_resolved
    assert "cyclic" in sk.note
    (atom,) = sk.C_j.summands
    assert isinstance(atom, OpaqueCell)
    assert atom.cells == complement_cells(validate(doc(1, 0, [(3, 1), (3, 2)])))


@pytest.mark.parametrize("seed", range(30))
def test_skeleton_cells_match_complement(seed):
    inv = validate(random_invariants(random.Random(500 + seed)))
    sk = skeleton_data(inv)
    cells = sorted(c for a in sk.C_j.summands for c in a.cells)
    if inv.c <= 1:
        assert tuple(cells) == complement_cells(inv)
    else:
        # P(m) for cyclic m = p^r q^s uses one Moore space where the
        # complement lists one per prime; away from 2 they agree
        assert cells[-1] == 6 and cells.count(6) == 1
    assert all(dimension(a) <= 3 for a in sk.Y.summands)


def test_torsion_group_property():
    assert validate(doc(0, 0, [(3, 2), (5, 1)])).torsion_group == FgAbGroup(0, ((3, 2), (5, 1)))
