"""Two-local models, pair witnesses, and the adversary helpers."""

import random

import pytest

from skewlie.errors import PreconditionError, SkewlieError
from skewlie.lie import apply_lie_derivation
from skewlie.matrices import pair_list, random_skew, s_unit, zero_skew
from skewlie.reconstruct import BasisImageTable, assemble_generator
from skewlie.rings import PrimeField, Rationals
from skewlie.twolocal import (
    ASSOC,
    LIE,
    TwoLocalModel,
    check_two_local,
    derangement,
    find_pair_witness,
    generator_agreement,
    model_from_json,
    tamper_basis_image,
    tamper_point,
    to_associative_model,
    to_lie_model,
)

Q = Rationals()
G3 = PrimeField(3)
G5 = PrimeField(5)


def test_inner_model_maps_by_derivation():
    rng = random.Random(40)
    a = random_skew(G5, 4, rng)
    model = TwoLocalModel.inner(a)
    x = random_skew(G5, 4, rng)
    assert model.map(x) == apply_lie_derivation(a, x)
    assert model.form == LIE
    # the packaged witness oracle always answers with a itself
    assert model.witness(x, x) == a


def test_find_pair_witness_frozen():
    """For x = s_13 with image 3 s_23 over GF(5) and the zero pair, the
    deterministic witness is exactly s_12 (free slots zeroed)."""
    x = s_unit(G5, 4, 1, 3)
    dx = s_unit(G5, 4, 2, 3).scale(3)
    w = find_pair_witness(x, dx, zero_skew(G5, 4), zero_skew(G5, 4))
    assert w == s_unit(G5, 4, 1, 2)


def test_find_pair_witness_substitutes():
    rng = random.Random(41)
    for _ in range(20):
        a = random_skew(G3, 4, rng)
        x = random_skew(G3, 4, rng)
        y = random_skew(G3, 4, rng)
        dx = apply_lie_derivation(a, x)
        dy = apply_lie_derivation(a, y)
        w = find_pair_witness(x, dx, y, dy)
        assert w is not None
        assert apply_lie_derivation(w, x) == dx
        assert apply_lie_derivation(w, y) == dy


def test_find_pair_witness_none_when_impossible():
    # s_12 can never be its own image: the image's (1,2) slot is always 0
    x = s_unit(G5, 4, 1, 2)
    assert find_pair_witness(x, x, zero_skew(G5, 4), zero_skew(G5, 4)) is None


def test_find_pair_witness_deterministic():
    rng = random.Random(42)
    a = random_skew(G5, 4, rng)
    x = random_skew(G5, 4, rng)
    dx = apply_lie_derivation(a, x)
    z = zero_skew(G5, 4)
    w1 = find_pair_witness(x, dx, z, z)
    w2 = find_pair_witness(x, dx, z, z)
    assert w1 == w2


def test_check_two_local_inner_clean():
    a = random_skew(G3, 4, random.Random(43))
    model = TwoLocalModel.inner(a)
    report = check_two_local(model, 30, 7)
    assert report["pairs_checked"] == 30
    assert report["failures"] == []
    assert report["oracle_failures"] == []
    assert report["oracle_checked"] == 30


def test_check_two_local_budget_zero_warns():
    model = TwoLocalModel.inner(zero_skew(G3, 4))
    report = check_two_local(model, 0, 7)
    assert report["pairs_checked"] == 0
    assert "vacuous" in report["warning"]


def test_tabulated_model_and_domain():
    ring, n = G3, 4
    a = random_skew(ring, n, random.Random(44))
    basis = [s_unit(ring, n, i, j) for i, j in pair_list(n)]
    pairs = [(x, apply_lie_derivation(a, x)) for x in basis]
    model = TwoLocalModel.tabulated(ring, n, pairs)
    assert model.domain is not None
    assert model.map(basis[0]) == pairs[0][1]
    with pytest.raises(SkewlieError):
        model.map(random_skew(ring, n, random.Random(0)))  # outside the table
    report = check_two_local(model, 100, 0)
    assert report["failures"] == []


def test_tabulated_tamper_point_breaks_two_locality():
    """Adding delta at one input makes the pair (s_pq, x0) unwitnessable
    whenever delta's (p,q) slot is nonzero."""
    ring, n = G3, 4
    rng = random.Random(45)
    a = random_skew(ring, n, rng)
    x0 = random_skew(ring, n, rng)
    delta = s_unit(ring, n, 1, 3)  # nonzero exactly at (1,3)
    model = TwoLocalModel.inner(a)
    bad = tamper_point(model, x0, delta)
    assert bad.map(x0) == apply_lie_derivation(a, x0).add(delta)
    s13 = s_unit(ring, n, 1, 3)
    w = find_pair_witness(s13, bad.map(s13), x0, bad.map(x0))
    assert w is None or not bad.pair_equations_hold(w, s13, x0)


def test_pair_equations_hold():
    rng = random.Random(46)
    a = random_skew(G5, 4, rng)
    model = TwoLocalModel.inner(a)
    x = random_skew(G5, 4, rng)
    y = random_skew(G5, 4, rng)
    assert model.pair_equations_hold(a, x, y)
    assert not model.pair_equations_hold(a.add(s_unit(G5, 4, 1, 2)), s_unit(G5, 4, 1, 3), y)


def test_from_basis_images_extends_additively():
    ring, n = G3, 4
    a = random_skew(ring, n, random.Random(47))
    table = BasisImageTable.from_generator(a)
    model = TwoLocalModel.from_basis_images(table)
    x = random_skew(ring, n, random.Random(48))
    # additive extension of a derivation's basis images is the derivation
    assert model.map(x) == apply_lie_derivation(a, x)
    assert model.basis_images().images == table.images


def test_generator_agreement_holds():
    """Two generators with the same image on s_ij agree along rows and
    columns i, j away from the pair."""
    rng = random.Random(49)
    for ring, n in ((G3, 4), (G5, 5), (Q, 4)):
        for _ in range(25):
            a = random_skew(ring, n, rng)
            b = random_skew(ring, n, rng)
            pairs = pair_list(n)
            i, j = pairs[rng.randrange(len(pairs))]
            # copy rows/cols i and j of a into b so the images match
            upper = list(b.upper)
            from skewlie.matrices import packed_index

            for p, q in pairs:
                if p in (i, j) or q in (i, j):
                    upper[packed_index(n, p, q)] = a.entry(p, q)
            b = type(b)(ring, n, upper)
            assert generator_agreement(a, b, i, j)


def test_generator_agreement_precondition():
    a = s_unit(G3, 4, 1, 3)
    b = zero_skew(G3, 4)
    # images on s_12 differ, the precondition must be enforced
    with pytest.raises(PreconditionError):
        generator_agreement(a, b, 1, 2)


def test_transfer_round_trip():
    rng = random.Random(50)
    a = random_skew(G5, 4, rng)
    model = TwoLocalModel.inner(a)
    assoc = to_associative_model(model)
    assert assoc.form == ASSOC
    back = to_lie_model(assoc)
    assert back.form == LIE
    x = random_skew(G5, 4, rng)
    y = random_skew(G5, 4, rng)
    # the transferred witness generates the same map in the other form
    assert back.witness(x, y) == model.witness(x, y)
    assert back.map(x) == model.map(x)


def test_transfer_form_guards():
    model = TwoLocalModel.inner(zero_skew(G3, 4))
    with pytest.raises(SkewlieError):
        to_lie_model(model)  # already lie form
    assoc = to_associative_model(model)
    with pytest.raises(SkewlieError):
        to_associative_model(assoc)


def test_tamper_basis_image_validation():
    a = random_skew(G3, 4, random.Random(51))
    table = BasisImageTable.from_generator(a)
    with pytest.raises(ValueError):
        tamper_basis_image(table, 1, 2, 3, 3, 1)
    with pytest.raises(ValueError):
        tamper_basis_image(table, 1, 2, 4, 2, 1)


def test_tamper_then_reconstruct_fails():
    a = random_skew(G3, 4, random.Random(52))
    table = BasisImageTable.from_generator(a)
    bad = tamper_basis_image(table, 2, 3, 1, 4, 2)
    assert not assemble_generator(bad).ok


def test_derangement_has_no_fixed_points():
    rng = random.Random(53)
    for count in (2, 3, 5, 10, 40):
        for _ in range(10):
            perm = derangement(count, rng)
            assert sorted(perm) == list(range(count))
            assert all(perm[k] != k for k in range(count))
    with pytest.raises(ValueError):
        derangement(1, rng)


def test_model_json_round_trip_inner():
    a = random_skew(G5, 4, random.Random(54))
    model = TwoLocalModel.inner(a)
    obj = model.to_json()
    again = model_from_json(G5, obj)
    x = random_skew(G5, 4, random.Random(55))
    assert again.map(x) == model.map(x)


def test_model_json_round_trip_tabulated():
    ring, n = G3, 4
    a = random_skew(ring, n, random.Random(56))
    basis = [s_unit(ring, n, i, j) for i, j in pair_list(n)]
    pairs = [(x, apply_lie_derivation(a, x)) for x in basis]
    model = TwoLocalModel.tabulated(ring, n, pairs)
    again = model_from_json(ring, model.to_json())
    assert again.domain is not None
    assert len(again.domain) == len(basis)
    for x in basis:
        assert again.map(x) == model.map(x)
