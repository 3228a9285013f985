import itertools
from unittest import TestCase

import numpy as np

from hermcodes.gf_arith import (
    ORDER_CAP,
    ConjugationError,
    FieldParameterError,
    FieldZeroDivisionError,
    field_from_order,
    is_irreducible,
    is_prime,
    make_field,
    smallest_irreducible,
)


class PolynomialTestCase(TestCase):
    """Test the polynomial helpers behind the field model."""

    def test_is_prime(self):
        """Test the primality test on small integers."""
        self.assertListEqual(
            [number for number in range(20) if is_prime(number)],
            [2, 3, 5, 7, 11, 13, 17, 19],
        )

    def test_is_irreducible(self):
        """Test irreducibility of small polynomials."""
        self.assertTrue(is_irreducible([1, 1, 1], 2))
        self.assertFalse(is_irreducible([1, 0, 1], 2))
        self.assertTrue(is_irreducible([1, 0, 1], 3))

    def test_smallest_irreducible(self):
        """Test the modulus is the smallest irreducible from the constant term."""
        self.assertEqual(smallest_irreducible(2, 2), (1, 1, 1))
        self.assertEqual(smallest_irreducible(3, 2), (1, 0, 1))
        self.assertEqual(smallest_irreducible(2, 3), (1, 0, 1, 1))


class FieldModelTestCase(TestCase):
    """Test the deterministic model of the fields."""

    def test_gf4(self):
        """Test the elements of GF(4)."""
        field = make_field(2, 2)

        self.assertEqual((field.q, field.t), (4, 2))
        self.assertEqual(field.primitive, 2)
        self.assertEqual(field.mul(2, 3), 1)
        self.assertEqual(field.conjugate(2), 3)

    def test_gf9(self):
        """Test the modulus and primitive element of GF(9)."""
        field = make_field(3, 2)

        self.assertEqual(field.modulus, (1, 0, 1))
        self.assertEqual(field.primitive, 4)
        self.assertEqual(field.subfield(), [0, 1, 2])

    def test_prime_field(self):
        """Test a prime field is the integers modulo p."""
        field = make_field(5)

        for a, b in itertools.product(range(5), repeat=2):
            self.assertEqual(field.add(a, b), (a + b) % 5)
            self.assertEqual(field.mul(a, b), (a * b) % 5)

    def test_cache(self):
        """Test fields are created once per parameters."""
        self.assertIs(make_field(3, 2), make_field(3, 2))
        self.assertEqual(make_field(3, 2), field_from_order(9))
        self.assertNotEqual(make_field(3), make_field(3, 2))


class FieldAxiomsTestCase(TestCase):
    """Test the field axioms in small fields of both characteristics."""

    def test_axioms(self):
        """Test inverses and distributivity."""
        for field in (make_field(2, 3), make_field(3, 2), make_field(2, 2)):
            for a in range(1, field.q):
                self.assertEqual(field.mul(a, field.inv(a)), 1)
                self.assertEqual(field.add(a, field.neg(a)), 0)

            for a, b, c in itertools.product(range(field.q), repeat=3):
                self.assertEqual(
                    field.mul(a, field.add(b, c)),
                    field.add(field.mul(a, b), field.mul(a, c)),
                )

    def test_power(self):
        """Test powers, negative ones included."""
        field = make_field(3, 2)

        self.assertEqual(field.power(4, 8), 1)
        self.assertEqual(field.power(4, -1), field.inv(4))
        self.assertEqual(field.power(0, 0), 1)
        self.assertEqual(field.power(0, 3), 0)

    def test_zero_division(self):
        """Test zero has no inverse."""
        field = make_field(3, 2)

        with self.assertRaises(FieldZeroDivisionError):
            field.inv(0)

        with self.assertRaises(ZeroDivisionError):
            field.power(0, -1)

    def test_square_roots(self):
        """Test the squares of odd and even characteristic."""
        self.assertEqual(len(make_field(3, 2).square_roots), 5)
        self.assertEqual(len(make_field(2, 3).square_roots), 8)

        field = make_field(3, 2)
        for a in range(field.q):
            root = field.sqrt(a)
            if root is not None:
                self.assertEqual(field.mul(root, root), a)


class ConjugationTestCase(TestCase):
    """Test the conjugation of the fields of square order."""

    def test_conjugation(self):
        """Test conjugation is an involutive automorphism."""
        field = make_field(3, 2)

        for a, b in itertools.product(range(field.q), repeat=2):
            self.assertEqual(
                field.conjugate(field.mul(a, b)),
                field.mul(field.conjugate(a), field.conjugate(b)),
            )

        for a in range(field.q):
            self.assertEqual(field.conjugate(field.conjugate(a)), a)
            self.assertIn(field.norm(a), field.subfield())
            self.assertIn(field.trace(a), field.subfield())

    def test_odd_degree(self):
        """Test a field of odd degree has no conjugation."""
        with self.assertRaises(ConjugationError):
            make_field(3).conjugate(1)

        with self.assertRaises(ConjugationError):
            make_field(2, 3).subfield()


class VectorizedTestCase(TestCase):
    """Test the vectorized operations agree with the scalar ones."""

    def test_agree(self):
        """Test all pairs of elements."""
        for field in (make_field(3, 2), make_field(2, 3)):
            a, b = np.meshgrid(np.arange(field.q), np.arange(field.q))
            a, b = a.ravel(), b.ravel()

            self.assertListEqual(
                field.vadd(a, b).tolist(),
                [field.add(int(x), int(y)) for x, y in zip(a, b)],
            )
            self.assertListEqual(
                field.vmul(a, b).tolist(),
                [field.mul(int(x), int(y)) for x, y in zip(a, b)],
            )
            self.assertListEqual(
                field.vsub(a, b).tolist(),
                [field.sub(int(x), int(y)) for x, y in zip(a, b)],
            )
            self.assertListEqual(
                field.vinv(np.arange(1, field.q)).tolist(),
                [field.inv(x) for x in range(1, field.q)],
            )

    def test_digits(self):
        """Test the digit expansion."""
        field = make_field(3, 2)
        elements = np.arange(field.q)

        self.assertListEqual(field.to_digits(5).tolist(), [2, 1])
        self.assertListEqual(
            field.from_digits(field.to_digits(elements)).tolist(), elements.tolist()
        )


class LinearAlgebraTestCase(TestCase):
    """Test the linear algebra over the fields."""

    def test_matmul(self):
        """Test the matrix product against the scalar formula."""
        field = make_field(3, 2)
        generator = np.random.default_rng(0)
        left = generator.integers(0, field.q, size=(4, 3))
        right = generator.integers(0, field.q, size=(3, 5))

        product = field.matmul(left, right)
        for i, j in itertools.product(range(4), range(5)):
            value = 0
            for k in range(3):
                value = field.add(
                    value, field.mul(int(left[i, k]), int(right[k, j]))
                )

            self.assertEqual(product[i, j], value)

    def test_rank_and_nullspace(self):
        """Test the null space is orthogonal and of the right dimension."""
        field = make_field(2, 2)
        matrix = np.array([[1, 2, 3, 0], [2, 3, 1, 0], [0, 0, 0, 1]])

        # the second row is twice the first one
        self.assertEqual(field.rank(matrix), 2)

        kernel = field.nullspace(matrix)
        self.assertEqual(kernel.shape, (2, 4))
        self.assertFalse(field.matmul(matrix, kernel.T).any())

    def test_rref(self):
        """Test the reduced row echelon form."""
        field = make_field(3)
        reduced, pivots = field.rref([[0, 2, 1], [1, 1, 1]])

        self.assertListEqual(pivots, [0, 1])
        self.assertListEqual(reduced.tolist(), [[1, 0, 2], [0, 1, 2]])

    def test_empty_rank(self):
        """Test the rank of an empty matrix."""
        self.assertEqual(make_field(2).rank(np.zeros((0, 3))), 0)


class FieldParametersTestCase(TestCase):
    """Test the invalid field parameters."""

    def test_not_prime(self):
        """Test a composite characteristic."""
        with self.assertRaisesRegex(FieldParameterError, "not prime"):
            make_field(4)

    def test_degree(self):
        """Test a null degree."""
        with self.assertRaisesRegex(FieldParameterError, "positive"):
            make_field(2, 0)

    def test_cap(self):
        """Test an order above the cap."""
        self.assertEqual(ORDER_CAP, 2**16)

        with self.assertRaisesRegex(FieldParameterError, "above the cap"):
            make_field(2, 17)

    def test_order(self):
        """Test orders that are not prime powers."""
        self.assertEqual(repr(field_from_order(8)), "GF(8)")

        for order in (1, 6, 12):
            with self.assertRaises(ValueError):
                field_from_order(order)
