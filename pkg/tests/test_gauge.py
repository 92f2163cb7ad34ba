import random
from collections import Counter

import pytest

from sixsplit.abelian import FgAbGroup
from sixsplit.errors import NotComputable, UnsupportedBundle
from sixsplit.gauge import (
    FactorProduct,
    LieAtom,
    Loop,
    MapStar,
    MooreLoop,
    OpaqueGauge,
    apply_wedge_rule,
    classify_su_bundles,
    factor_for_atom,
    gauge_su,
    gauge_trivial,
    pi_factor,
    pi_factors,
)
from sixsplit.spaces import ConeIotaAlpha1, Moore, SigmaCP3, Sphere, Wedge, parse
from sixsplit.splitter import split_suspension, validate

from oracles import add, as_pair, group, pi_su, pi_su_mod, random_invariants


def inv(b=0, d=0, torsion=(), kind="trivial", indices=()):
    return validate({
        "b": b,
        "d": d,
        "torsion": [{"p": p, "r": r} for p, r in torsion],
        "p1_action": {"type": kind, "indices": list(indices)},
    })


def test_trivial_bundle_minimal():
    assert str(gauge_trivial(inv(), "G")) == "G x Omega^6 G"


def test_trivial_bundle_case_c_has_cone_factor():
    prod = gauge_trivial(inv(1, 0, [(3, 1)], "torsion", [0]), "G")
    assert str(prod.factors[-1]) == "Map*(C_(iota o alpha1)(3^1), G)"
    assert MooreLoop(3, 3, "G") not in prod.factors
    assert MooreLoop(4, 3, "G") in prod.factors


def test_trivial_bundle_case_b_has_cp3_factor():
    prod = gauge_trivial(inv(1, 0, kind="free"), "G")
    assert str(prod) == "G x Map*(CP3, G)"


def test_factor_for_atom():
    assert factor_for_atom(Sphere(4), "G") == Loop(3, "G")
    assert factor_for_atom(Moore(5, 9), "G") == MooreLoop(4, 9, "G")
    assert factor_for_atom(SigmaCP3(), "G") == MapStar("CP3", "G")
    assert factor_for_atom(ConeIotaAlpha1(2), "G") == MapStar("C_(iota o alpha1)(3^2)", "G")
    with pytest.raises(NotComputable):
        factor_for_atom(parse("CA1"), "G")


def test_factor_invariants():
    with pytest.raises(ValueError):
        Loop(0, "G")
    with pytest.raises(ValueError):
        MooreLoop(3, 1, "G")


@pytest.mark.parametrize("seed", range(30))
def test_atom_factor_bijection(seed):
    m = validate(random_invariants(random.Random(seed)))
    prod = gauge_trivial(m, "G")
    loops = Counter(f for f in prod.factors if not isinstance(f, LieAtom))
    atoms = Counter(factor_for_atom(a, "G") for a in split_suspension(m).summands)
    assert loops == atoms
    assert sum(isinstance(f, LieAtom) for f in prod.factors) == 1


def test_classify_bundles():
    h4, h6 = classify_su_bundles(inv(2, 1, [(3, 2), (2, 1)]), 3)
    assert h4 == FgAbGroup(2, ((3, 2),))
    assert h6 == FgAbGroup.free(1)
    assert classify_su_bundles(inv(), 5) == (FgAbGroup(), FgAbGroup.free(1))
    with pytest.raises(UnsupportedBundle) as info:
        classify_su_bundles(inv(), 2)
    assert "Lemma 5.2" in info.value.citation


def test_su_bundle_free_torsion():
    prod = gauge_su(inv(2, 1), 4, 5)
    assert str(prod) == (
        "G_(c2=0,c3=5)(S6, SU(4)) x Omega^2 SU(4) x Omega^2 SU(4) x Omega^3 SU(4) x Omega^3 SU(4)"
        " x Omega^4 SU(4) x Omega^4 SU(4)"
    )


def test_su_bundle_cyclic_torsion():
    prod = gauge_su(inv(2, 1, [(3, 2)]), 4, 5)
    kinds = Counter(str(f) for f in prod.factors)
    assert kinds["Omega^4 SU(4)"] == 1
    assert kinds["Omega^2 SU(4)"] == 2
    assert kinds["Omega^3 SU(4){9}"] == 1
    assert kinds["Omega^3 SU(4)"] == 2
    assert str(prod.factors[0]) == "G_(c2=0,c3=5)(OPQ:C''(9)[3,4,4,6], SU(4))"


def test_su_bundle_errors():
    with pytest.raises(UnsupportedBundle):
        gauge_su(inv(), 2, 1)
    with pytest.raises(UnsupportedBundle):
        gauge_su(inv(1), 3, 1, c2=[1])


def test_wedge_rule_idempotent_and_exhaustive():
    base = Wedge((Sphere(4), Sphere(4), Sphere(6)))
    prod = FactorProduct((OpaqueGauge(base, "SU(3)", 0, 2), Loop(2, "SU(3)")))
    once = apply_wedge_rule(prod)
    assert apply_wedge_rule(once) == once
    (opaque,) = [f for f in once.factors if isinstance(f, OpaqueGauge)]
    assert Sphere(4) not in opaque.base.summands
    assert Counter(once.factors)[Loop(4, "SU(3)")] == 2


@pytest.mark.parametrize("seed", range(20))
def test_refinement_leaves_no_four_spheres(seed):
    m = validate(random_invariants(random.Random(seed)))
    raw = gauge_su(m, 5, 1, refine=False)
    refined = apply_wedge_rule(raw)
    assert refined == gauge_su(m, 5, 1)
    assert apply_wedge_rule(refined) == refined
    for f in refined.factors:
        if isinstance(f, OpaqueGauge):
            assert Sphere(4) not in f.base.summands


def test_pi_examples():
    assert pi_factor(Loop(3, "SU(4)"), 2).resolved == FgAbGroup.free(1)
    assert pi_factor(MooreLoop(3, 9, "SU(3)"), 2).resolved == FgAbGroup.cyclic(9)
    assert pi_factor(LieAtom("SU(3)"), 2).resolved == FgAbGroup()


def test_pi_refuses_opaque_factors():
    with pytest.raises(NotComputable) as info:
        pi_factors(gauge_su(inv(1), 4, 1), 1)
    assert any("G_(c2=0" in f for f in info.value.factors)
    with pytest.raises(NotComputable):
        pi_factor(LieAtom("Sp(2)"), 1)


@pytest.mark.parametrize("n", [3, 4, 6])
def test_stable_range_guard(n):
    for k in range(0, 2 * n + 2):
        for i in range(0, 2 * n + 2):
            f = LieAtom(f"SU({n})") if k == 0 else Loop(k, f"SU({n})")
            if i + k <= 2 * n - 1:
                pi_factor(f, i)
            else:
                with pytest.raises(NotComputable):
                    pi_factor(f, i)


def test_pi_case_a_su6_against_oracle():
    m = inv(2, 1, [(3, 2), (5, 1)])
    prod = gauge_trivial(m, "SU(6)")
    for i in range(4):
        want = group()
        for f in prod.factors:
            k = 0 if isinstance(f, LieAtom) else f.k
            if isinstance(f, MooreLoop):
                want = add(want, pi_su_mod(6, i + k, f.m))
            else:
                want = add(want, pi_su(6, i + k))
        got = pi_factors(prod, i)
        assert got.is_exact
        assert as_pair(got.resolved) == want


def test_json_lists_citations():
    doc = gauge_trivial(inv(1), "G").to_json()
    assert doc["case"] == "A"
    assert all(f["citation"] for f in doc["factors"])
    assert {f["kind"] for f in doc["factors"]} == {"LieAtom", "Loop"}
