import pytest

from iwlab.characters import (
    brauer_decompose,
    character_table,
    elementary_subgroups,
    induce,
    is_elementary,
    is_elementary_for,
    resum_induced,
)
from iwlab.groups import (
    SubgroupDesc,
    abelian_group,
    alternating_group,
    cyclic_group,
    dihedral_group,
    quaternion_group,
    symmetric_group,
)
from iwlab.padic import PrecisionContext

CTX = PrecisionContext(p=3, cap_N=20, cap_D=12)


def test_cyclic_groups_are_elementary():
    assert is_elementary_for(cyclic_group(6).subgroup(range(6)).as_group, 2)
    assert is_elementary(cyclic_group(15))


def test_s3_elementary_subgroups_for_2():
    g = symmetric_group(3)
    subs = elementary_subgroups(g, 2)
    orders = sorted(s.order for s in subs)
    # C_3 qualifies as (cyclic of order 3) x (trivial 2-group)
    assert orders == [1, 2, 3]


def test_klein_four_elementary_subgroups_for_3():
    g = abelian_group(2, 2)
    subs = elementary_subgroups(g, 3)
    # only the cyclic subgroups: 1, three C_2 (V_4 itself is not cyclic x 3-group)
    assert sorted(s.order for s in subs) == [1, 2, 2, 2]


def test_s4_is_not_elementary_but_sylows_are():
    g = symmetric_group(4)
    assert not is_elementary(g)
    d4 = next(s for s in g.subgroup_classes if len(s) == 8)
    assert is_elementary(SubgroupDesc(g, d4).as_group)


def test_brauer_linear_character_of_elementary_group():
    g = cyclic_group(6)
    table = character_table(g, CTX)
    chi = table[-1]
    decomp = brauer_decompose(chi)
    assert len(decomp) == 1
    z, sub, lam = decomp[0]
    assert z == 1 and sub.order == 6
    assert induce(lam, sub).equals(chi)


def test_brauer_s3_two_dimensional():
    g = symmetric_group(3)
    table = character_table(g, CTX)
    two = next(ch for ch in table if ch.degree_int() == 2)
    decomp = brauer_decompose(two)
    assert len(decomp) == 1
    z, sub, lam = decomp[0]
    assert z == 1
    assert sub.order == 3  # a nontrivial linear character of C_3
    assert lam.degree_int() == 1
    assert not all(v.equals(CTX.one()) for v in lam.values)
    ind = induce(lam, sub)
    assert [ind.values[k].coeffs[0] for k in range(3)] == [2, 0, -1]
    assert resum_induced(decomp, g, CTX).equals(two)


@pytest.mark.parametrize(
    "group_factory",
    [
        lambda: cyclic_group(4),
        lambda: abelian_group(2, 2),
        lambda: symmetric_group(3),
        quaternion_group,
        lambda: dihedral_group(4),
        lambda: alternating_group(4),
        lambda: symmetric_group(4),
    ],
)
def test_brauer_resums_exactly(group_factory):
    g = group_factory()
    table = character_table(g, CTX)
    for chi in table:
        decomp = brauer_decompose(chi)
        assert resum_induced(decomp, g, CTX).equals(chi)
        for z, _sub, lam in decomp:
            assert isinstance(z, int) and z != 0
            assert lam.degree_int() == 1


def test_brauer_q8_two_dimensional():
    g = quaternion_group()
    table = character_table(g, CTX)
    two = next(ch for ch in table if ch.degree_int() == 2)
    decomp = brauer_decompose(two)
    assert resum_induced(decomp, g, CTX).equals(two)
