from collections import Counter
from unittest import TestCase

import numpy as np

from hermcodes.forms import (
    HERMITIAN_LABELS,
    QUADRIC_LABELS,
    DegenerateFormError,
    FormShapeError,
    HermitianForm,
    QuadraticForm,
    ZeroFormError,
    algebraic_rank,
    classification_census,
    classify,
    cone_count,
    degenerate_hermitian_count,
    hyperplane_section_checks,
    is_tangent,
    iterate_forms,
    nondegenerate_quadric_count,
    phi,
    rank,
    section_class,
    variety_points,
    vertex,
)
from hermcodes.gf_arith import make_field
from hermcodes.proj_space import ProjectiveSpace


class CountsTestCase(TestCase):
    """Test the point counts of the classification tables."""

    def test_phi(self):
        """Test the nonsingular hermitian varieties over GF(4)."""
        self.assertListEqual([phi(n, 2) for n in range(5)], [0, 3, 9, 45, 165])
        self.assertEqual(phi(4, 3), 2440)

    def test_degenerate_hermitian(self):
        """Test cones reduce to their base for full rank."""
        self.assertEqual(degenerate_hermitian_count(4, 5, 2), 165)
        self.assertEqual(degenerate_hermitian_count(1, 1, 2), 1)

        # plane section of rank 2: t + 1 concurrent lines
        self.assertEqual(degenerate_hermitian_count(2, 2, 2), 13)

    def test_quadrics(self):
        """Test the nondegenerate quadrics and their cones."""
        q = 3
        self.assertEqual(nondegenerate_quadric_count(5, "parabolic", q), 40)
        self.assertEqual(nondegenerate_quadric_count(4, "hyperbolic", q), 16)
        self.assertEqual(nondegenerate_quadric_count(4, "elliptic", q), 10)
        self.assertEqual(nondegenerate_quadric_count(2, "elliptic", q), 0)

        # cone with a point vertex over H3 in PG(4, 3)
        self.assertEqual(cone_count(4, 4, 16, q), 49)


class QuadraticFormTestCase(TestCase):
    """Test the quadratic forms."""

    def setUp(self):
        self.field = make_field(3)

    def test_from_vector(self):
        """Test the upper triangular order of the coefficients."""
        form = QuadraticForm.from_vector([1, 2, 0, 0, 1, 0], 2, self.field)

        self.assertListEqual(form.matrix.tolist(), [[1, 2, 0], [0, 0, 1], [0, 0, 0]])
        terms = {(0, 0): 1, (1, 0): 2, (1, 2): 1}
        self.assertEqual(form, QuadraticForm.from_terms(terms, 2, self.field))

    def test_from_linear_product(self):
        """Test the product of two linear forms."""
        form = QuadraticForm.from_linear_product(
            [1, 1, 0, 0], [0, 0, 1, 1], self.field
        )
        expected = QuadraticForm.from_terms(
            {(0, 2): 1, (0, 3): 1, (1, 2): 1, (1, 3): 1}, 3, self.field
        )

        self.assertEqual(form, expected)

        square = QuadraticForm.from_linear_product([1, 1], [1, 1], self.field)
        self.assertListEqual(square.coefficient_vector().tolist(), [1, 2, 1])

    def test_evaluate(self):
        """Test evaluation at points."""
        form = QuadraticForm.from_terms({(0, 1): 1, (2, 2): 1}, 2, self.field)

        self.assertListEqual(
            form.evaluate(np.array([[1, 1, 0], [1, 2, 1], [0, 0, 1]])).tolist(),
            [1, 0, 1],
        )

    def test_proportional(self):
        """Test scalar multiples."""
        form = QuadraticForm.from_terms({(0, 1): 1, (2, 2): 1}, 2, self.field)
        double = QuadraticForm.from_terms({(0, 1): 2, (2, 2): 2}, 2, self.field)
        other = QuadraticForm.from_terms({(0, 1): 1, (2, 2): 2}, 2, self.field)

        self.assertTrue(form.is_proportional(double))
        self.assertFalse(form.is_proportional(other))

    def test_restrict(self):
        """Test the restriction to the plane x3 = 0."""
        form = QuadraticForm.from_terms({(0, 1): 1, (2, 3): 1}, 3, self.field)
        section = form.restrict(np.eye(4, dtype=np.int64)[:3])

        self.assertEqual(
            section, QuadraticForm.from_terms({(0, 1): 1}, 2, self.field)
        )

    def test_invalid(self):
        """Test invalid coefficients."""
        with self.assertRaises(FormShapeError):
            QuadraticForm.from_vector([1, 0, 0], 2, self.field)

        with self.assertRaises(FormShapeError):
            QuadraticForm(1, self.field, [[0, 0], [1, 0]])

        with self.assertRaises(FormShapeError):
            QuadraticForm(2, self.field, np.zeros((2, 2)))


class HermitianFormTestCase(TestCase):
    """Test the hermitian forms."""

    def setUp(self):
        self.field = make_field(2, 2)

    def test_from_upper(self):
        """Test the lower triangle is filled by conjugation."""
        form = HermitianForm.from_upper([1, 2, 0], 1, self.field)

        self.assertListEqual(form.matrix.tolist(), [[1, 2], [3, 0]])

    def test_not_hermitian(self):
        """Test a matrix which is not hermitian."""
        with self.assertRaises(FormShapeError):
            HermitianForm(1, self.field, [[1, 2], [2, 0]])

        # diagonal entries must lie in GF(2)
        with self.assertRaises(FormShapeError):
            HermitianForm.diagonal([2, 1], self.field)

    def test_evaluate(self):
        """Test the values lie in the subfield."""
        form = HermitianForm.from_upper([1, 2, 0, 1, 3, 1], 2, self.field)
        values = form.evaluate(ProjectiveSpace(2, self.field).coords)

        self.assertTrue(set(values.tolist()) <= {0, 1})

    def test_curve(self):
        """Test the hermitian curve of PG(2, 4) has 9 points."""
        form = HermitianForm.diagonal([1, 1, 1], self.field)

        self.assertEqual(len(variety_points(form)), 9)
        self.assertEqual(algebraic_rank(form), 3)


class VertexTestCase(TestCase):
    """Test the vertex and the rank of varieties."""

    def test_cone(self):
        """Test the line vertex of x0x1 + x2^2 in PG(4, 3)."""
        field = make_field(3)
        form = QuadraticForm.from_terms({(0, 1): 1, (2, 2): 1}, 4, field)
        space = ProjectiveSpace(4, field)
        singular = vertex(form, space)

        self.assertEqual(singular.dim, 1)
        self.assertEqual(rank(form, space), 3)
        self.assertEqual(algebraic_rank(form), 3)
        point = space.span([space.index_of((0, 0, 0, 1, 0))])
        self.assertTrue(singular.contains(point))

    def test_nondegenerate(self):
        """Test a nondegenerate conic has no vertex."""
        field = make_field(2)
        form = QuadraticForm.from_terms({(0, 1): 1, (2, 2): 1}, 2, field)

        self.assertEqual(vertex(form).dim, -1)
        self.assertEqual(algebraic_rank(form), 3)

    def test_characteristic_two_square(self):
        """Test x0^2 in characteristic 2 has rank 1."""
        field = make_field(2)
        form = QuadraticForm.from_terms({(0, 0): 1}, 2, field)

        self.assertEqual(algebraic_rank(form), 1)
        self.assertEqual(rank(form), 1)

    def test_zero_form(self):
        """Test the zero form defines no variety."""
        field = make_field(3)

        with self.assertRaises(ZeroFormError):
            variety_points(QuadraticForm(2, field, np.zeros((3, 3))))


class ClassifyTestCase(TestCase):
    """Test the classification of varieties."""

    def test_parabolic(self):
        """Test the parabolic quadric of PG(4, 3)."""
        field = make_field(3)
        form = QuadraticForm.from_vector(
            [0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1], 4, field
        )
        variety_class = classify(form)

        self.assertEqual(
            variety_class.describe(), "parabolic P₄: rank 5 parabolic, 40 points, g=1"
        )
        self.assertFalse(variety_class.degenerate)

    def test_cones(self):
        """Test the cones of PG(4, 3)."""
        field = make_field(3)
        space = ProjectiveSpace(4, field)

        hyperbolic = QuadraticForm.from_terms({(0, 1): 1, (2, 3): 1}, 4, field)
        elliptic = QuadraticForm.from_terms(
            {(0, 1): 1, (2, 2): 1, (3, 3): 1}, 4, field
        )
        pair = QuadraticForm.from_terms({(0, 1): 1}, 4, field)

        self.assertEqual(classify(hyperbolic, space).label, "cone Π₀H₃")
        self.assertEqual(classify(hyperbolic, space).cardinality, 49)
        self.assertEqual(classify(elliptic, space).label, "cone Π₀E₃")
        self.assertEqual(classify(elliptic, space).projective_index, 1)
        self.assertEqual(classify(pair, space).label, "pair of hyperplanes Π₂H₁")
        self.assertEqual(classify(pair, space).projective_index, 3)

    def test_hermitian(self):
        """Test the hermitian varieties of PG(3, 4)."""
        field = make_field(2, 2)
        space = ProjectiveSpace(3, field)

        surface = classify(HermitianForm.diagonal([1, 1, 1, 1], field), space)
        cone = classify(HermitianForm.diagonal([1, 1, 1, 0], field), space)

        self.assertEqual(surface.label, "non-singular hermitian surface U₃")
        self.assertEqual(surface.cardinality, 45)
        self.assertEqual(surface.projective_index, 1)
        self.assertEqual(cone.label, "cone Π₀U₂")
        self.assertEqual(cone.cardinality, 37)

    def test_dimension(self):
        """Test classification is refused above dimension 4."""
        field = make_field(2)
        form = QuadraticForm.from_terms({(0, 1): 1}, 5, field)

        with self.assertRaises(FormShapeError):
            classify(form)

    def test_census(self):
        """Test every conic of PG(2, 2) and hermitian pair of PG(1, 4) classifies."""
        census = classification_census("quadric", 2, make_field(2))

        self.assertEqual(sum(census.values()), 63)
        conics = {label for key, label in QUADRIC_LABELS.items() if key[0] == 2}
        self.assertTrue(set(census) <= conics)

        census = classification_census("hermitian", 1, make_field(2, 2))

        self.assertEqual(
            census, Counter({"repeated point Π₀U₀": 5, "t+1 points U₁": 10})
        )
        self.assertTrue(set(census) <= set(HERMITIAN_LABELS.values()))

    def test_sampled_forms(self):
        """Test sampled forms are reproducible."""
        field = make_field(3)
        first = list(iterate_forms("quadric", 3, field, samples=5, seed=1))
        second = list(iterate_forms("quadric", 3, field, samples=5, seed=1))

        self.assertEqual(len(first), 5)
        self.assertListEqual(first, second)


class SectionTestCase(TestCase):
    """Test sections and tangency."""

    def setUp(self):
        self.field = make_field(2, 2)
        self.space = ProjectiveSpace(3, self.field)
        self.surface = HermitianForm.diagonal([1, 1, 1, 1], self.field)

    def test_tangent(self):
        """Test the tangent plane at (1, 1, 0, 0)."""
        tangent = self.space.hyperplane([1, 1, 0, 0])
        secant = self.space.hyperplane([1, 0, 0, 0])

        self.assertTrue(is_tangent(tangent, self.surface))
        self.assertFalse(is_tangent(secant, self.surface))
        self.assertEqual(
            section_class(self.surface, tangent).label, "t+1 concurrent lines Π₀U₁"
        )
        self.assertEqual(section_class(self.surface, secant).cardinality, 9)

    def test_tangent_degenerate(self):
        """Test tangency needs a nondegenerate variety."""
        cone = HermitianForm.diagonal([1, 1, 1, 0], self.field)

        with self.assertRaises(DegenerateFormError):
            is_tangent(self.space.hyperplane([1, 0, 0, 0]), cone)

    def test_entire_flat(self):
        """Test a plane contained in a quadric."""
        field = make_field(3)
        space = ProjectiveSpace(3, field)
        form = QuadraticForm.from_terms({(0, 1): 1}, 3, field)
        section = section_class(form, space.hyperplane([1, 0, 0, 0]))

        self.assertEqual(section.label, "entire flat")
        self.assertEqual(section.rank, 0)
        self.assertEqual(section.cardinality, 13)

    def test_section_checks(self):
        """Test the hyperplane section invariants hold for every plane."""
        checks = [
            check
            for equation in self.space.coords[:12]
            for check in hyperplane_section_checks(
                self.surface, self.space.hyperplane(equation)
            )
        ]

        self.assertEqual(len(checks), 12)
        self.assertTrue(all(check.passed for check in checks))

    def test_quadric_section_checks(self):
        """Test the section invariants of the parabolic quadric of PG(4, 3)."""
        field = make_field(3)
        space = ProjectiveSpace(4, field)
        form = QuadraticForm.from_terms({(0, 1): 1, (2, 3): 1, (4, 4): 1}, 4, field)
        variety_class = classify(form, space)

        for equation in space.coords[::10]:
            checks = hyperplane_section_checks(
                form, space.hyperplane(equation), variety_class
            )
            self.assertTrue(all(check.passed for check in checks))
