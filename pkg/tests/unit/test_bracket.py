"""
Unit tests for bracket.py

Fixed examples, the double bracket on generators and the randomized identities
(antisymmetry, Jacobi, d_P squared, closed formulas) of the necklace bracket.
"""

import random
from itertools import product

import pytest

from double_poisson.bracket import (
    differential_dP,
    double_bracket_of_pair,
    double_jacobiator,
    evaluate_vector_field,
    generator_brackets,
    is_double_antisymmetric,
    is_poisson_tensor,
    kontsevich_bracket,
)
from double_poisson.exceptions import (
    InputFormatError,
    MixedQuiverError,
    NonHomogeneousError,
    NotATensorError,
)
from double_poisson.finalg import catalogue_2dim
from double_poisson.ncalg import NCPoly, Path, TensorElem, tensor_mu
from double_poisson.necklace import PolyField, enumerate_basis
from double_poisson.quiver import free_quiver

PLANE = free_quiver(("x", "y"))
LOOPS = free_quiver(("a", "b", "c", "d", "e"))
VERTEX = PLANE.vertices[0]


def nc(*labels):
    return NCPoly.monomial(PLANE, labels)


def tensor(*terms):
    return TensorElem(
        PLANE,
        [((Path.of(PLANE.words(l), VERTEX), Path.of(PLANE.words(r), VERTEX)), c) for c, l, r in terms],
    )


def poisson_tensors():
    tensors = [entry.tensor for entry in catalogue_2dim()]
    tensors.append(PolyField.from_word(PLANE, ["x", "*x", "x", "*y"]))
    tensors.append(PolyField.from_word(PLANE, ["y", "*x", "y", "*y"]))
    return tensors


class TestKontsevichBracket:
    """Test the necklace bracket on fixed inputs."""

    def test_linear_tensors_first_term(self):
        """{a*b*c, d*e*a} = d*e*b*c"""
        w1 = PolyField.from_word(LOOPS, ["a", "*b", "*c"])
        w2 = PolyField.from_word(LOOPS, ["d", "*e", "*a"])

        assert kontsevich_bracket(w1, w2) == PolyField.from_word(LOOPS, ["d", "*e", "*b", "*c"])

    def test_linear_tensors_third_term(self):
        """{a*b*c, b*d*e} = -a*d*e*c"""
        w1 = PolyField.from_word(LOOPS, ["a", "*b", "*c"])
        w2 = PolyField.from_word(LOOPS, ["b", "*d", "*e"])

        assert kontsevich_bracket(w1, w2) == PolyField.from_word(LOOPS, ["a", "*d", "*e", "*c"], -1)

    def test_unrelated_arrows_commute(self):
        w1 = PolyField.from_word(LOOPS, ["a", "*b", "*c"])
        w2 = PolyField.from_word(LOOPS, ["d", "*e", "*e", "d"])

        assert not kontsevich_bracket(w1, w2)

    def test_p0_on_xy(self, P0, field):
        """{x*x*x, xy} = (yx - xy) d/dx"""
        expected = field((1, ["y", "x", "*x"]), (-1, ["x", "y", "*x"]))

        assert kontsevich_bracket(P0, field((1, ["x", "y"]))) == expected

    def test_mixed_quivers(self, P0):
        with pytest.raises(MixedQuiverError):
            kontsevich_bracket(P0, PolyField.from_word(LOOPS, ["a"]))

    def test_bidegree_of_output(self, P1):
        """stars and weights add, minus one each."""
        out = kontsevich_bracket(P1, PolyField.from_word(PLANE, ["x", "y"]))

        assert out
        assert {n.bidegree for n, _ in out.items()} == {(1, 2)}


class TestDifferential:
    """Test d_P = {P, -}."""

    def test_constants_are_cocycles(self, P1, quadratic):
        one = PolyField.from_word(PLANE, [])

        assert not differential_dP(P1, one)
        assert not differential_dP(quadratic, one)

    def test_p1_on_x(self, P1, field):
        """d_P1(x) = -y d/dy"""
        assert differential_dP(P1, field((1, ["x"]))) == field((-1, ["y", "*y"]))

    def test_p0_on_x_squared(self, P0, field):
        assert not differential_dP(P0, field((1, ["x", "x"])))

    def test_quadratic_on_generators(self, quadratic, field):
        """d(y) = x^2 d/dx and d(x) = -x^2 d/dy for x*x x*y"""
        assert differential_dP(quadratic, field((1, ["y"]))) == field((1, ["x", "x", "*x"]))
        assert differential_dP(quadratic, field((1, ["x"]))) == field((-1, ["x", "x", "*y"]))

    @pytest.mark.property
    def test_square_is_zero(self):
        """d_P(d_P(b)) = 0 on every basis necklace of small bidegree."""
        for P in poisson_tensors():
            for k, w in product(range(2), range(5)):
                for necklace in enumerate_basis(PLANE, k, w):
                    b = PolyField.of_necklace(PLANE, necklace)
                    assert not differential_dP(P, differential_dP(P, b)), (P, necklace)

    @pytest.mark.property
    def test_closed_formula_for_p0(self, P0):
        """d_P0(f) = Σ over x in f = u x v of (vux - xvu) d/dx."""
        rng = random.Random(7)
        for _ in range(30):
            labels = [rng.choice("xy") for _ in range(rng.randint(1, 7))]
            expected = PolyField(PLANE)
            for i, label in enumerate(labels):
                if label != "x":
                    continue
                u, v = labels[:i], labels[i + 1 :]
                expected = expected + PolyField.from_word(PLANE, v + u + ["x", "*x"])
                expected = expected - PolyField.from_word(PLANE, ["x"] + v + u + ["*x"])
            assert differential_dP(P0, PolyField.from_word(PLANE, labels)) == expected


class TestPoissonTensors:
    """Test {P, P} = 0."""

    def test_catalogue_tensors(self):
        for entry in catalogue_2dim():
            assert is_poisson_tensor(entry.tensor).is_poisson, entry.name

    def test_quadratic_tensors(self, quadratic, field):
        assert is_poisson_tensor(quadratic).is_poisson
        assert is_poisson_tensor(field((1, ["y", "*x", "y", "*y"]))).is_poisson

    def test_non_associative_linear_tensor(self, field):
        """x*x*y comes from x·y = x, which is not associative."""
        check = is_poisson_tensor(field((1, ["x", "*x", "*y"])))

        assert not check.is_poisson
        assert check.obstruction
        assert check.to_dict()["is_poisson"] is False

    def test_rejects_wrong_star_degree(self, field):
        with pytest.raises(NotATensorError):
            is_poisson_tensor(field((1, ["x", "*x"])))


class TestDoubleBrackets:
    """Test the double bracket induced by a tensor."""

    def test_quadratic_generators(self, quadratic):
        """<<x, y>> = x⊗x, <<x, x>> = <<y, y>> = 0"""
        assert double_bracket_of_pair(quadratic, nc("x"), nc("y")) == tensor((1, ["x"], ["x"]))
        assert not double_bracket_of_pair(quadratic, nc("x"), nc("x"))
        assert not double_bracket_of_pair(quadratic, nc("y"), nc("y"))

    def test_linear_brackets_follow_structure_constants(self):
        """<<x_i, x_j>> = Σ c_ij^k x_k⊗1 - c_ji^k 1⊗x_k"""
        for entry in catalogue_2dim():
            c = entry.constants
            for i, j in product(range(2), repeat=2):
                terms = []
                for k in range(2):
                    terms.append((c.c[i][j][k], [c.names[k]], []))
                    terms.append((-c.c[j][i][k], [], [c.names[k]]))
                got = double_bracket_of_pair(entry.tensor, nc(c.names[i]), nc(c.names[j]))
                assert got == tensor(*terms), (entry.name, i, j)

    def test_generator_table(self, quadratic):
        table = generator_brackets(quadratic)

        assert table[("x", "y")] == tensor((1, ["x"], ["x"]))
        assert table[("y", "x")] == tensor((-1, ["x"], ["x"]))

    def test_leibniz_in_second_argument(self, quadratic):
        """<<x, y^2>> = y·<<x,y>> + <<x,y>>·y for the outer structure."""
        expected = tensor((1, ["y", "x"], ["x"]), (1, ["x"], ["x", "y"]))

        assert double_bracket_of_pair(quadratic, nc("x"), nc("y", "y")) == expected

    def test_antisymmetry(self):
        words = [("x",), ("y",), ("x", "y"), ("y", "y", "x")]
        for P in poisson_tensors():
            for a, b in product(words, repeat=2):
                assert is_double_antisymmetric(P, nc(*a), nc(*b))

    def test_star_arguments_rejected(self, quadratic):
        with pytest.raises(InputFormatError):
            double_bracket_of_pair(quadratic, NCPoly.generator(PLANE, "*x"), nc("y"))

    def test_double_jacobi_vanishes_for_poisson_tensors(self):
        generators = [nc("x"), nc("y")]
        for P in poisson_tensors():
            for a, b, c in product(generators, repeat=3):
                assert not double_jacobiator(P, a, b, c)

    def test_double_jacobi_detects_non_associativity(self, field):
        P = field((1, ["x", "*x", "*y"]))

        assert double_jacobiator(P, nc("x"), nc("y"), nc("y"))

    @pytest.mark.property
    def test_compatible_with_necklace_bracket(self):
        """{P, a}(b) = -μ<<a, b>> for random a, b of degree at most 3."""
        rng = random.Random(11)

        def draw():
            return [(rng.randint(-2, 2), [rng.choice("xy") for _ in range(rng.randint(0, 3))]) for _ in range(2)]

        for P in poisson_tensors():
            for _ in range(15):
                a_terms, b_terms = draw(), draw()
                a = sum((NCPoly.monomial(PLANE, w, c) for c, w in a_terms), NCPoly(PLANE))
                b = sum((NCPoly.monomial(PLANE, w, c) for c, w in b_terms), NCPoly(PLANE))
                vector_field = kontsevich_bracket(P, PolyField.from_words(PLANE, a_terms))
                lhs = evaluate_vector_field(vector_field, b)
                assert lhs == -tensor_mu(double_bracket_of_pair(P, a, b)), (P, a_terms, b_terms)


class TestVectorFields:
    """Test the action of star-degree 1 necklaces."""

    def test_substitution(self, field):
        """y d/dx sends x^2 to yx + xy."""
        v = field((1, ["y", "*x"]))

        assert evaluate_vector_field(v, nc("x", "x")) == nc("y", "x") + nc("x", "y")

    def test_rejects_tensors(self, P0):
        with pytest.raises(NonHomogeneousError):
            evaluate_vector_field(P0, nc("x"))


@pytest.mark.property
class TestLieIdentities:
    """Graded antisymmetry and Jacobi on random necklaces."""

    def _sample(self, rng, count, max_weight):
        pool = [
            necklace
            for stars in range(3)
            for weight in range(max_weight + 1)
            for necklace in enumerate_basis(PLANE, stars, weight)
        ]
        return [PolyField.of_necklace(PLANE, rng.choice(pool)) for _ in range(count)]

    def test_graded_antisymmetry(self):
        """{a, b} = -(-1)^((s_a - 1)(s_b - 1)) {b, a}"""
        rng = random.Random(11)
        for _ in range(40):
            a, b = self._sample(rng, 2, 2)
            s_a, s_b = a.star_degrees()[0], b.star_degrees()[0]
            sign = -1 if ((s_a - 1) * (s_b - 1)) % 2 else 1
            assert kontsevich_bracket(a, b) == kontsevich_bracket(b, a) * (-sign)

    def test_graded_jacobi(self):
        """{a, {b, c}} = {{a, b}, c} + (-1)^((s_a - 1)(s_b - 1)) {b, {a, c}}"""
        rng = random.Random(13)
        for _ in range(25):
            a, b, c = self._sample(rng, 3, 1)
            s_a, s_b = a.star_degrees()[0], b.star_degrees()[0]
            sign = -1 if ((s_a - 1) * (s_b - 1)) % 2 else 1
            lhs = kontsevich_bracket(a, kontsevich_bracket(b, c))
            rhs = kontsevich_bracket(kontsevich_bracket(a, b), c) + kontsevich_bracket(
                b, kontsevich_bracket(a, c)
            ) * sign
            assert lhs == rhs
