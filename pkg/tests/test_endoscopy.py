import random
from fractions import Fraction

import pytest

from gspin.characters import AlphaClass, CharacterGroup, TRIVIAL_CLASS
from gspin.dualgroups import DualElement, sample_gsp4, sample_gso4
from gspin.exactlin import ExactMatrix, frac
from gspin.endoscopy import (
    FROBENIUS_GSO4,
    FROBENIUS_H2,
    FROBENIUS_RANK1,
    catalog,
    ordinary_centralizer_basis,
    recover_alpha,
    restriction_diagrams_commute,
    S_H1,
    theta_s_fixed,
    twisted_centralizer_basis,
    verify_centralizer,
)


ALPHA = AlphaClass("alpha")


def test_catalog_families_for_twisted_space():
    data = catalog("twisted_gl4", [ALPHA])
    names = [d.name for d in data]
    assert names == ["gspin5", "gspin4^1", "gspin4^alpha", "rank1^alpha"]
    families = {n.split("^")[0] for n in names}
    assert families == {"gspin5", "gspin4", "rank1"}  # three families
    by_name = {d.name: d for d in data}
    assert by_name["gspin5"].s.g == ExactMatrix.identity(4)
    assert by_name["gspin4^alpha"].s.g == ExactMatrix.diagonal([-1, -1, 1, 1])
    assert by_name["rank1^alpha"].s.g == ExactMatrix.diagonal([-1, 1, 1, 1])
    assert by_name["gspin4^alpha"].frobenius_image == FROBENIUS_GSO4
    assert by_name["rank1^alpha"].frobenius_image == FROBENIUS_RANK1
    assert by_name["gspin5"].stabilisation_constant == 1


def test_catalog_gspin5():
    (h1,) = catalog("gspin5")
    assert h1.stabilisation_constant == Fraction(1, 4)
    assert h1.expected_centralizer_dim == 7
    assert not h1.twisted


def test_catalog_gspin4():
    (h2,) = catalog("gspin4", [ALPHA])
    assert h2.expected_centralizer_dim == 3
    assert h2.frobenius_image == FROBENIUS_H2
    assert catalog("gspin4") == []


def test_catalog_rejects_unknown_ambient():
    with pytest.raises(ValueError):
        catalog("nonsense")


def test_twisted_centralizer_dimensions():
    assert len(twisted_centralizer_basis(ExactMatrix.identity(4))) == 11
    assert len(twisted_centralizer_basis(ExactMatrix.diagonal([-1, -1, 1, 1]))) == 7
    assert len(twisted_centralizer_basis(ExactMatrix.diagonal([-1, 1, 1, 1]))) == 5


def test_ordinary_centralizer_dimensions():
    from gspin.dualgroups import GSO4_GRAM, THETA_J

    assert len(ordinary_centralizer_basis(S_H1, THETA_J)) == 7
    assert len(ordinary_centralizer_basis(ExactMatrix.diagonal([1, -1, -1, 1]), GSO4_GRAM)) == 3
    # unconstrained s: the full similitude Lie algebras
    assert len(ordinary_centralizer_basis(ExactMatrix.identity(4), THETA_J)) == 11
    assert len(ordinary_centralizer_basis(ExactMatrix.identity(4), GSO4_GRAM)) == 7


def test_every_catalog_entry_passes_verification():
    for ambient, classes in (
        ("twisted_gl4", [ALPHA]),
        ("gspin5", []),
        ("gspin4", [ALPHA]),
    ):
        for d in catalog(ambient, classes):
            report = verify_centralizer(d, seed=7)
            assert report.ok, report.message()


def test_frobenius_images_are_involutions():
    for m in (FROBENIUS_GSO4, FROBENIUS_RANK1, FROBENIUS_H2):
        assert m * m == ExactMatrix.identity(4)


def test_theta_s_fixedness_of_gsp4_and_gso4_samples():
    rng = random.Random(2)
    for _ in range(5):
        e = sample_gsp4(rng, frac(rng.randint(1, 4)))
        assert theta_s_fixed(ExactMatrix.identity(4), e)
    for _ in range(5):
        e = sample_gso4(rng)
        assert theta_s_fixed(ExactMatrix.diagonal([-1, -1, 1, 1]), e)


def test_rank1_member_shape():
    # diag(x1, M, x2) with x1 x2 = det M is fixed for the rank-one s-element
    m = ExactMatrix([[2, 1], [3, 4]])
    x1 = frac(2)
    g = ExactMatrix(
        [
            [x1, 0, 0, 0],
            [0, 2, 1, 0],
            [0, 3, 4, 0],
            [0, 0, 0, m.det() / x1],
        ]
    )
    assert theta_s_fixed(ExactMatrix.diagonal([-1, 1, 1, 1]), DualElement(g, m.det()))
    # breaking the constraint x1 x2 = det M loses fixedness
    bad = ExactMatrix(
        [
            [x1, 0, 0, 0],
            [0, 2, 1, 0],
            [0, 3, 4, 0],
            [0, 0, 0, 1],
        ]
    )
    assert not theta_s_fixed(ExactMatrix.diagonal([-1, 1, 1, 1]), DualElement(bad, m.det()))


def test_verification_catches_corrupted_matrix():
    (h1,) = catalog("gspin5")
    from dataclasses import replace

    corrupted = replace(h1, s=DualElement(ExactMatrix.diagonal([1, 1, -1, 1]), 1))
    assert not verify_centralizer(corrupted).ok


def test_recover_alpha():
    g = ExactMatrix.diagonal([2, 3, 4, 6])
    # det = 144 = 12^2
    assert recover_alpha((g, frac(12)), ALPHA) == TRIVIAL_CLASS
    assert recover_alpha((g, frac(5)), ALPHA) == ALPHA
    # images of symplectic-similitude elements are always split
    rng = random.Random(13)
    for _ in range(5):
        e = sample_gsp4(rng, frac(rng.randint(1, 4)))
        assert recover_alpha((e.g, e.x), ALPHA) == TRIVIAL_CLASS
    # GSO4 members are split as well
    for _ in range(5):
        e = sample_gso4(rng)
        assert recover_alpha((e.g, e.x), ALPHA) == TRIVIAL_CLASS


def test_restriction_diagrams_commute():
    report = restriction_diagrams_commute(seed=0, samples=20)
    assert report.ok, report.message()
    # determinism: same seed, same verdict
    again = restriction_diagrams_commute(seed=0, samples=20)
    assert report == again
