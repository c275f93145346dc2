import pytest

from gspin.dualgroups import DualElement
from gspin.exactlin import ExactMatrix
from gspin.restriction import (
    BoundedParameterDescriptor,
    PacketMember,
    SignGroup,
    SignGroupCharacter,
    component_sign_group,
    gso4_shape_catalog,
    packet_members,
    project_parameter,
    restrict_gso4,
    restrict_member,
    restriction_count_identity,
    shape_catalog,
)


def test_sign_group_basics():
    g = SignGroup(("a", "b"), [frozenset(), frozenset({"a", "b"})])
    assert g.order == 2 and g.rank == 1
    chars = g.characters()
    assert len(chars) == 2
    nontrivial = [c for c in chars if c.evaluate(frozenset({"a", "b"})) == -1]
    assert len(nontrivial) == 1
    with pytest.raises(ValueError):
        SignGroup(("a",), [frozenset({"a"})])  # missing identity


def test_shape_ranks_upstairs():
    cat = shape_catalog()
    for name, expected in (
        ("irreducible", 0),
        ("two_two_generic", 1),
        ("two_two_dihedral", 1),
        ("principal_series", 0),
    ):
        proj = project_parameter(cat[name])
        assert proj.s_group.group.rank == expected, name


def test_downstairs_ranks():
    cat = shape_catalog()
    proj = project_parameter(cat["two_two_generic"])
    assert proj.s_group_prime.group.rank == 1
    proj = project_parameter(cat["two_two_dihedral"])
    assert proj.s_group_prime.group.rank == 2
    proj = project_parameter(cat["irreducible"])
    assert proj.s_group_prime.group.rank == 0
    proj = project_parameter(cat["principal_series"])
    assert proj.s_group_prime.group.rank == 0


def test_embedding_is_injective_where_defined():
    cat = shape_catalog()
    for name in ("two_two_generic", "two_two_dihedral"):
        proj = project_parameter(cat[name])
        assert proj.embedded_s is not None and proj.embedded_s != frozenset()


def test_restrict_member_trivial_group_gets_everything():
    cat = shape_catalog()
    proj = project_parameter(cat["irreducible"])
    (member,) = packet_members(cat["irreducible"])
    out = restrict_member(member, proj)
    assert out == frozenset(proj.s_group_prime.group.characters())


def test_restrict_member_sign_split():
    cat = shape_catalog()
    phi = cat["two_two_dihedral"]
    proj = project_parameter(phi)
    plus, minus = packet_members(phi)
    out_plus = restrict_member(plus, proj)
    out_minus = restrict_member(minus, proj)
    assert len(out_plus) == len(out_minus) == 2  # half of the four characters
    assert not (out_plus & out_minus)
    for ch in out_plus:
        assert ch.evaluate(proj.embedded_s) == 1
    for ch in out_minus:
        assert ch.evaluate(proj.embedded_s) == -1


def test_restrict_member_wrong_parent():
    cat = shape_catalog()
    proj = project_parameter(cat["two_two_generic"])
    foreign = packet_members(cat["irreducible"])[0]
    with pytest.raises(ValueError):
        restrict_member(foreign, proj)


def test_count_identity_all_shapes():
    cat = shape_catalog()
    for name, phi in cat.items():
        report = restriction_count_identity(project_parameter(phi))
        assert report.ok, report.message()
        assert sum(report.packet_sizes) == report.dual_size


def test_degenerate_generators_rejected():
    phi = BoundedParameterDescriptor(
        "identity-only", (DualElement(ExactMatrix.identity(4), 1),), 0
    )
    with pytest.raises(ValueError):
        project_parameter(phi)


def test_declared_rank_mismatch_rejected():
    cat = shape_catalog()
    wrong = BoundedParameterDescriptor("irreducible", cat["irreducible"].generators, 1)
    with pytest.raises(ValueError):
        project_parameter(wrong)


def test_gso4_restriction_generic_singleton():
    cat = gso4_shape_catalog()
    group, chars = restrict_gso4(cat["gso4_generic"])
    assert group.group.rank == 0
    assert len(chars) == 1


def test_gso4_restriction_dihedral_full_dual():
    cat = gso4_shape_catalog()
    group, chars = restrict_gso4(cat["gso4_dihedral_pair"])
    assert group.group.rank == 1
    assert len(chars) == 2
    assert chars == frozenset(group.group.characters())


def test_gso4_rejects_unequal_determinants():
    from gspin.restriction import PairParameterDescriptor

    bad = PairParameterDescriptor(
        "bad", ((ExactMatrix.diagonal([2, 3]), ExactMatrix.diagonal([2, 4])),)
    )
    with pytest.raises(ValueError):
        restrict_gso4(bad)
