import pytest

from flowering.lps import (
    BadCongruence,
    ProjectiveLinearGroup,
    SingularMatrix,
    legendre,
    lps_generators,
    projective_canonicalize,
    quaternion_solutions,
    sqrt_minus_one,
)
from flowering.rim import graph_diameter
from flowering.analysis import is_bipartite


def test_canonicalize_examples():
    assert projective_canonicalize([[2, 0], [0, 2]], 5) == (1, 0, 0, 1)
    assert projective_canonicalize([[0, 3], [1, 0]], 5) == (0, 1, 2, 0)
    with pytest.raises(SingularMatrix):
        projective_canonicalize([[1, 1], [2, 2]], 5)


def test_legendre_and_sqrt():
    squares = {x * x % 13 for x in range(1, 13)}
    assert all(legendre(a, 13) == (1 if a in squares else -1) for a in range(1, 13))
    assert legendre(5, 13) == -1
    i = sqrt_minus_one(13)
    assert i * i % 13 == 12


def test_quaternions():
    sols = quaternion_solutions(5)
    assert len(sols) == 6
    assert all(sum(x * x for x in s) == 5 for s in sols)


def test_group_orders():
    assert len(ProjectiveLinearGroup(5).elements()) == 4 * 5 * 6
    assert len(ProjectiveLinearGroup(5, special=True).elements()) == 4 * 5 * 6 // 2


@pytest.mark.parametrize("p, q", [(3, 13), (5, 7), (5, 5), (5, 3)])
def test_bad_parameters(p, q):
    with pytest.raises(BadCongruence):
        lps_generators(p, q)


def test_lps_5_13(lps_5_13):
    group, gens, cay = lps_5_13
    assert group.name == "PGL2(F_13)"
    assert cay.rim.vertex_count == 12 * 13 * 14 == 2184
    assert cay.rim.arity == 6 and gens.n == 6
    assert cay.rim.petal_count == 0
    assert is_bipartite(cay.rim)
    assert graph_diameter(cay.rim) == 7
    assert [group.order_of(s) for s in gens.base] == [12, 12, 12]


def test_lps_psl_case():
    group, gens = lps_generators(13, 17)
    assert legendre(13, 17) == 1 and group.special
    assert group.order() == 16 * 17 * 18 // 2
    assert gens.n == 14


def test_generators_are_inverse_closed(lps_5_13):
    group, gens, _ = lps_5_13
    sym = set(gens.symmetric)
    assert all(group.inv(s) in sym for s in sym)
