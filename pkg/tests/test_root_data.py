import math

import pytest

from bunmotive.errors import InvalidType, LimitExceeded
from bunmotive.poly import Poly
from bunmotive.root_data import (
    Cocharacter,
    affine_bfs,
    affine_poincare,
    build_root_datum,
    cartan_matrix,
    classify_irreducible,
    degree_table,
    dominant_cochars_upto,
    pairing,
    pairing_2rho,
    parabolic_coset_poincare,
    parse_group,
    shipped_types,
    validate_degree_table,
    weyl_enumerate,
    weyl_poincare,
)

t = Poly.var(0)


def series(coeffs):
    return sum((c * t**k for k, c in enumerate(coeffs)), Poly())


def test_basic_data():
    a1 = build_root_datum("A", 1)
    assert (a1.degrees, a1.dim_G, a1.pi1_order) == ((2,), 3, 1)
    assert build_root_datum("A", 2, "adjoint").pi1_order == 3
    g2 = build_root_datum("G", 2)
    assert (g2.degrees, g2.dim_G, g2.num_positive_roots) == ((2, 6), 14, 6)


@pytest.mark.parametrize(
    "group, pi1",
    [("D4-adjoint", 4), ("E6-adjoint", 3), ("E7-adjoint", 2), ("E8-adjoint", 1), ("B3-adjoint", 2), ("C4-adjoint", 2), ("A4-adjoint", 5)],
)
def test_adjoint_fundamental_groups(group, pi1):
    assert parse_group(group).pi1_order == pi1


def test_parse_group_grammar():
    rd = parse_group("A1xB2-adjoint")
    assert rd.label == "A1-scxB2-adjoint"
    assert rd.dim_G == 3 + 10
    assert rd.isogeny == "mixed"
    assert parse_group("a2-ad").label == "A2-adjoint"
    for bad in ("Z9", "A0", "B1", "D3", "E5", "G3", "A2-half", ""):
        with pytest.raises(InvalidType):
            parse_group(bad)


def test_cartan_conventions():
    assert cartan_matrix("B", 2) == ((2, -1), (-2, 2))
    assert cartan_matrix("C", 2) == ((2, -2), (-1, 2))
    assert cartan_matrix("G", 2) == ((2, -3), (-1, 2))


def test_classification_of_cartan_matrices():
    for typ, rank in (("E", 6), ("B", 6), ("C", 6), ("D", 6), ("A", 6), ("C", 3), ("F", 4), ("G", 2)):
        assert classify_irreducible(cartan_matrix(typ, rank)) == (typ, rank)
    assert classify_irreducible(cartan_matrix("C", 2)) == ("B", 2)


def test_weyl_group_enumeration():
    assert weyl_enumerate(build_root_datum("A", 1)).length_distribution() == 1 + t
    a2 = weyl_enumerate(build_root_datum("A", 2))
    assert len(a2) == 6
    assert a2.length_distribution() == series([1, 2, 2, 1])
    b2 = weyl_enumerate(build_root_datum("B", 2))
    assert len(b2) == 8
    assert max(b2.length_distribution().terms)[0] == 4
    with pytest.raises(LimitExceeded):
        weyl_enumerate(build_root_datum("E", 8), limit=1000)


def test_weyl_poincare_examples():
    assert weyl_poincare(build_root_datum("A", 1)) == 1 + t
    assert weyl_poincare(build_root_datum("A", 2), "bfs") == series([1, 2, 2, 1])
    assert weyl_poincare(build_root_datum("G", 2), "bfs") == series([1, 2, 2, 2, 2, 2, 1])


@pytest.mark.parametrize("typ, rank", [("A", 3), ("B", 3), ("C", 3), ("D", 4), ("F", 4), ("G", 2)])
def test_weyl_poincare_methods_agree(typ, rank):
    rd = build_root_datum(typ, rank)
    assert weyl_poincare(rd, "bfs") == weyl_poincare(rd, "formula")


def test_degree_tables_for_all_shipped_types_up_to_rank_6():
    for typ, rank in shipped_types(6):
        rd = build_root_datum(typ, rank)
        assert all(validate_degree_table(rd).values()), (typ, rank)
        assert math.prod(degree_table(typ, rank)) == rd.weyl_order_formula()


def test_parabolic_coset_poincare():
    a2 = build_root_datum("A", 2)
    assert parabolic_coset_poincare(a2, Cocharacter((1, 1))) == series([1, 2, 2, 1])
    assert parabolic_coset_poincare(a2, Cocharacter((0, 3))) == series([1, 1, 1])
    assert parabolic_coset_poincare(a2, Cocharacter((0, 0))) == 1
    for typ, rank, lam in (("B", 3, (0, 1, 0)), ("F", 4, (1, 0, 0, 2)), ("E", 6, (0, 0, 0, 0, 0, 1))):
        rd = build_root_datum(typ, rank)
        lam = Cocharacter(lam)
        assert parabolic_coset_poincare(rd, lam, "bfs") == parabolic_coset_poincare(rd, lam, "formula")


def test_dominant_cocharacters():
    a1 = build_root_datum("A", 1)
    cs = dominant_cochars_upto(a1, 6)
    assert [pairing_2rho(a1, c) for c in cs] == [0, 2, 4, 6]
    assert cs[1] == Cocharacter.from_coroots(a1, (1,))
    assert dominant_cochars_upto(build_root_datum("B", 3), 0) == [Cocharacter((0, 0, 0))]
    a2 = build_root_datum("A", 2)
    assert dominant_cochars_upto(a2, 4) == [Cocharacter((0, 0)), Cocharacter.from_coroots(a2, (1, 1))]
    # the coweight lattice adds the fundamental coweights
    assert Cocharacter((1, 0)) in dominant_cochars_upto(build_root_datum("A", 2, "adjoint"), 4)


def test_pairings():
    a1, a2 = build_root_datum("A", 1), build_root_datum("A", 2)
    assert pairing(a1, Cocharacter.from_coroots(a1, (1,)), (1,)) == 2
    assert pairing(a2, Cocharacter.from_coroots(a2, (1, 0)), (0, 1)) == -1
    assert pairing(a2, Cocharacter((0, 0)), (3, 5)) == 0


def test_affine_poincare_examples():
    a1 = build_root_datum("A", 1)
    assert affine_bfs(a1, 5) == series([1, 2, 2, 2, 2, 2])
    assert affine_poincare(a1, "formula", 5) == series([1, 2, 2, 2, 2, 2])
    a2 = build_root_datum("A", 2)
    assert affine_poincare(a2, "formula", 3) == series([1, 3, 6, 9])
    assert affine_bfs(a2, 3) == series([1, 3, 6, 9])


@pytest.mark.parametrize("group", ["A1", "A2", "A3", "B2", "B3", "C3", "G2", "A1xA1"])
def test_affine_bfs_matches_formula(group):
    rd = parse_group(group)
    assert affine_bfs(rd, 14) == affine_poincare(rd, "formula", 14)


def test_root_datum_json():
    data = build_root_datum("B", 2, "adjoint").to_json_obj()
    assert data["degrees"] == [2, 4]
    assert data["pi1_order"] == 2
