"""Finite field arithmetic module.

This module gives the class `Field` that performs exact arithmetic in the
finite field GF(p^e). Elements are plain integers in [0, q) encoding the
coefficients of a polynomial residue in base p (constant coefficient first).
The field model is deterministic: the modulus is the lexicographically
smallest monic irreducible polynomial of degree e (coefficients compared from
the constant term) and the primitive element is the smallest generator of the
multiplicative group.

>>> field = make_field(2, 2)
>>> field.q, field.t
(4, 2)
>>> field.mul(2, 3)
1
>>> field.conjugate(2)
3

Scalar methods work on Python integers. The methods prefixed with `v` work on
numpy arrays and broadcast like numpy operators:

>>> import numpy as np
>>> field.vmul(np.array([1, 2, 3]), 2)
array([2, 3, 1])

The field also carries the linear algebra needed by the rest of the package:
reduced row echelon form, rank, null space and matrix product. The matrix
product expands elements into their GF(p) digits, so that it is computed by an
integer matrix product modulo p:

>>> field.matmul(np.array([[1, 2]]), np.array([[3], [1]]))
array([[1]])

The function `field_from_order` recovers the characteristic and the degree of a
prime power:

>>> field_from_order(9)
GF(9)
"""

import itertools
import logging
import math
from functools import cached_property, lru_cache

import numpy as np

from hermcodes.exceptions import HermcodesError

# desk-scale cap on the order of the field
ORDER_CAP = 2**16

# above this order, vectorized addition and multiplication do not use tables
TABLE_CAP = 2**8

logger = logging.getLogger(__name__)


def is_prime(number):
    """Tell if an integer is a prime number.

    Args:
        number (int): Integer to test.

    Returns:
        bool: True if the number is prime.
    """
    if number < 2:
        return False

    return all(number % divisor for divisor in range(2, math.isqrt(number) + 1))


def _trim(poly):
    poly = list(poly)
    while poly and poly[-1] == 0:
        poly.pop()

    return poly


def _poly_mod(dividend, divisor, p):
    """Remainder of the division of two polynomials over GF(p).

    Polynomials are sequences of coefficients, constant term first.
    """
    remainder = _trim(dividend)
    divisor = _trim(divisor)
    inverse_lead = pow(divisor[-1], p - 2, p)

    while len(remainder) >= len(divisor):
        factor = remainder[-1] * inverse_lead % p
        shift = len(remainder) - len(divisor)
        for index, coefficient in enumerate(divisor):
            remainder[shift + index] = (
                remainder[shift + index] - factor * coefficient
            ) % p

        remainder = _trim(remainder)

    return remainder


def _poly_mul(left, right, p):
    product = [0] * (len(left) + len(right) - 1)
    for i, a in enumerate(left):
        if a == 0:
            continue

        for j, b in enumerate(right):
            product[i + j] = (product[i + j] + a * b) % p

    return product


def is_irreducible(poly, p):
    """Tell if a polynomial over GF(p) is irreducible.

    The test divides by every monic polynomial of degree at most half the
    degree of the tested polynomial.

    Args:
        poly (list of int): Coefficients, constant term first. The leading
            coefficient must be nonzero.
        p (int): Characteristic.

    Returns:
        bool: True if the polynomial has no factor of positive degree lower
        than its own.
    """
    degree = len(_trim(poly)) - 1
    for factor_degree in range(1, degree // 2 + 1):
        for coefficients in itertools.product(range(p), repeat=factor_degree):
            if not _poly_mod(poly, list(coefficients) + [1], p):
                return False

    return True


def smallest_irreducible(p, e):
    """Give the lexicographically smallest monic irreducible polynomial.

    Coefficients are compared from the constant term.

    Args:
        p (int): Characteristic.
        e (int): Degree.

    Returns:
        tuple of int: Coefficients of the polynomial, constant term first.
    """
    for coefficients in itertools.product(range(p), repeat=e):
        candidate = list(coefficients) + [1]
        if is_irreducible(candidate, p):
            return tuple(candidate)

    # there is always an irreducible polynomial of any degree
    raise AssertionError("No irreducible polynomial found")


class Field:
    """Finite field GF(p^e).

    Use `make_field` to get an instance, as it caches fields by parameters.
    The field is immutable after construction and can be shared between
    threads.

    Attributes:
        p (int): Characteristic.
        e (int): Degree over the prime field.
        q (int): Order of the field.
        t (int): Square root of the order when `e` is even, None otherwise.
        modulus (tuple of int): Coefficients of the modulus, constant term
            first.
        primitive (int): Generator of the multiplicative group.
        exp (numpy.ndarray): Antilog table, `exp[i]` is the i-th power of the
            primitive element, for i in [0, q - 1).
        log (numpy.ndarray): Log table, `log[0]` is -1.

    Args:
        p (int): Characteristic, must be prime.
        e (int): Degree, must be positive.

    Raises:
        FieldParameterError: If the parameters are invalid or the order is
            above the cap.
    """

    def __init__(self, p, e):
        if not is_prime(p):
            raise FieldParameterError("Characteristic {} is not prime".format(p))

        if e < 1:
            raise FieldParameterError("Degree must be positive, got {}".format(e))

        if p**e > ORDER_CAP:
            raise FieldParameterError(
                "Order {}^{} is above the cap {}".format(p, e, ORDER_CAP)
            )

        self.p = p
        self.e = e
        self.q = p**e
        self.t = p ** (e // 2) if e % 2 == 0 else None
        self.modulus = smallest_irreducible(p, e)
        self.primitive, self.exp = self._find_primitive()
        self.log = np.full(self.q, -1, dtype=np.int64)
        self.log[self.exp] = np.arange(self.q - 1)

        # weights of the base-p digits of an element
        self.digit_weights = p ** np.arange(e, dtype=np.int64)

        logger.debug(
            "Created GF(%i) with modulus %s and primitive element %i",
            self.q,
            self.modulus,
            self.primitive,
        )

    def __repr__(self):
        return "GF({})".format(self.q)

    def __eq__(self, other):
        return isinstance(other, Field) and (self.p, self.e) == (other.p, other.e)

    def __hash__(self):
        return hash((self.p, self.e))

    def _to_poly(self, value):
        return [(value // self.p**i) % self.p for i in range(self.e)]

    def _from_poly(self, poly):
        return sum(c * self.p**i for i, c in enumerate(poly))

    def _slow_mul(self, a, b):
        product = _poly_mul(self._to_poly(a), self._to_poly(b), self.p)
        return self._from_poly(_poly_mod(product, self.modulus, self.p))

    def _find_primitive(self):
        """Find the smallest generator of the multiplicative group.

        Returns:
            tuple: The generator and its table of powers.
        """
        for candidate in range(1, self.q):
            powers = [1]
            value = candidate
            while value != 1:
                powers.append(value)
                value = self._slow_mul(value, candidate)

            if len(powers) == self.q - 1:
                return candidate, np.array(powers, dtype=np.int64)

        raise AssertionError("No primitive element found")

    @property
    def characteristic_two(self):
        """bool: True if the characteristic is 2."""
        return self.p == 2

    def elements(self):
        """Give all the elements of the field in increasing order.

        Returns:
            range: The elements.
        """
        return range(self.q)

    # scalar arithmetic

    def add(self, a, b):
        if self.p == 2:
            return a ^ b

        result, weight = 0, 1
        while a or b:
            result += ((a + b) % self.p) * weight
            a //= self.p
            b //= self.p
            weight *= self.p

        return result

    def neg(self, a):
        if self.p == 2:
            return a

        result, weight = 0, 1
        while a:
            result += (-a % self.p) * weight
            a //= self.p
            weight *= self.p

        return result

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0

        return int(self.exp[(self.log[a] + self.log[b]) % (self.q - 1)])

    def inv(self, a):
        """Give the multiplicative inverse of an element.

        Raises:
            FieldZeroDivisionError: If the element is zero.
        """
        if a == 0:
            raise FieldZeroDivisionError("Zero has no inverse in {}".format(self))

        return int(self.exp[-self.log[a] % (self.q - 1)])

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def power(self, a, exponent):
        """Raise an element to an integer power.

        Negative exponents are accepted for nonzero elements.
        """
        if a == 0:
            if exponent < 0:
                raise FieldZeroDivisionError("Zero has no inverse in {}".format(self))

            return 0 if exponent else 1

        return int(self.exp[(int(self.log[a]) * exponent) % (self.q - 1)])

    def _check_conjugation(self):
        if self.t is None:
            raise ConjugationError(
                "{} has odd degree {}, it has no conjugation".format(self, self.e)
            )

    def conjugate(self, a):
        """Give the conjugate x^t of an element of GF(t^2).

        Raises:
            ConjugationError: If the degree of the field is odd.
        """
        self._check_conjugation()
        return self.power(a, self.t)

    def norm(self, a):
        """Give the norm x^(t+1) of an element, which lies in GF(t)."""
        self._check_conjugation()
        return self.power(a, self.t + 1)

    def trace(self, a):
        """Give the relative trace x + x^t of an element, which lies in GF(t)."""
        return self.add(a, self.conjugate(a))

    def subfield(self):
        """Give the elements fixed by conjugation, that is GF(t).

        Returns:
            list of int: The t elements of the subfield.
        """
        self._check_conjugation()
        return [a for a in self.elements() if self.conjugate(a) == a]

    @cached_property
    def square_roots(self):
        """dict: Smallest square root of every square of the field."""
        roots = {}
        for a in reversed(self.elements()):
            roots[self.mul(a, a)] = a

        return roots

    def sqrt(self, a):
        """Give a square root of an element.

        Returns:
            int: The smallest square root, or None if the element is not a
            square.
        """
        return self.square_roots.get(a)

    def is_square(self, a):
        return a in self.square_roots

    # vectorized arithmetic

    def to_digits(self, values):
        """Expand elements into their base-p digits.

        Args:
            values (numpy.ndarray): Elements.

        Returns:
            numpy.ndarray: Digits, with an extra last axis of size e.
        """
        values = np.asarray(values, dtype=np.int64)
        return (values[..., None] // self.digit_weights) % self.p

    def from_digits(self, digits):
        """Gather base-p digits into elements.

        Args:
            digits (numpy.ndarray): Digits, along the last axis.

        Returns:
            numpy.ndarray: Elements.
        """
        return (np.asarray(digits, dtype=np.int64) * self.digit_weights).sum(axis=-1)

    @cached_property
    def add_table(self):
        """numpy.ndarray: Addition table, for fields of order up to the cap."""
        elements = np.arange(self.q, dtype=np.int64)
        return self._digit_add(elements[:, None], elements[None, :])

    @cached_property
    def mul_table(self):
        """numpy.ndarray: Multiplication table, for fields of order up to the cap."""
        elements = np.arange(self.q, dtype=np.int64)
        return self._log_mul(elements[:, None], elements[None, :])

    @cached_property
    def inv_table(self):
        """numpy.ndarray: Inverse table, zero being mapped to zero."""
        table = np.zeros(self.q, dtype=np.int64)
        table[1:] = self.exp[-self.log[1:] % (self.q - 1)]
        return table

    @cached_property
    def neg_table(self):
        """numpy.ndarray: Opposite table."""
        return self.from_digits(-self.to_digits(np.arange(self.q)) % self.p)

    def _digit_add(self, a, b):
        if self.p == 2:
            return np.bitwise_xor(a, b)

        return self.from_digits((self.to_digits(a) + self.to_digits(b)) % self.p)

    def _log_mul(self, a, b):
        a, b = np.broadcast_arrays(
            np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        )
        product = self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, product)

    def vadd(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return np.bitwise_xor(a, b)

        if self.q <= TABLE_CAP:
            return self.add_table[a, b]

        return self._digit_add(a, b)

    def vneg(self, a):
        return self.neg_table[np.asarray(a, dtype=np.int64)]

    def vsub(self, a, b):
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b):
        if self.q <= TABLE_CAP:
            return self.mul_table[
                np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
            ]

        return self._log_mul(a, b)

    def vinv(self, a):
        return self.inv_table[np.asarray(a, dtype=np.int64)]

    def vpower(self, a, exponent):
        a = np.asarray(a, dtype=np.int64)
        if exponent == 0:
            return np.ones_like(a)

        powered = self.exp[(self.log[a] * exponent) % (self.q - 1)]
        return np.where(a == 0, 0, powered)

    def vconjugate(self, a):
        self._check_conjugation()
        return self.vpower(a, self.t)

    # linear algebra

    def rref(self, matrix):
        """Compute the reduced row echelon form of a matrix.

        Args:
            matrix (array-like): Matrix of elements.

        Returns:
            tuple: The nonzero rows of the reduced matrix (numpy.ndarray) and
            the list of pivot columns.
        """
        reduced = np.array(matrix, dtype=np.int64, ndmin=2)
        rows, columns = reduced.shape
        pivots = []
        row = 0
        for column in range(columns):
            if row == rows:
                break

            candidates = np.nonzero(reduced[row:, column])[0]
            if candidates.size == 0:
                continue

            pivot_row = row + int(candidates[0])
            if pivot_row != row:
                reduced[[row, pivot_row]] = reduced[[pivot_row, row]]

            reduced[row] = self.vmul(reduced[row], self.inv(int(reduced[row, column])))

            # eliminate the column from every other row at once
            factors = reduced[:, column].copy()
            factors[row] = 0
            reduced = self.vsub(reduced, self.vmul(factors[:, None], reduced[row]))

            pivots.append(column)
            row += 1

        return reduced[:row], pivots

    def rank(self, matrix):
        if np.size(matrix) == 0:
            return 0

        return len(self.rref(matrix)[1])

    def nullspace(self, matrix):
        """Give a basis of the right null space of a matrix.

        Args:
            matrix (array-like): Matrix of elements with c columns.

        Returns:
            numpy.ndarray: Basis vectors as rows, shape (c - rank, c).
        """
        matrix = np.array(matrix, dtype=np.int64, ndmin=2)
        columns = matrix.shape[1]
        reduced, pivots = self.rref(matrix)
        free = [column for column in range(columns) if column not in pivots]
        basis = np.zeros((len(free), columns), dtype=np.int64)
        for index, column in enumerate(free):
            basis[index, column] = 1
            for row, pivot in enumerate(pivots):
                basis[index, pivot] = self.neg(int(reduced[row, column]))

        return basis

    def matmul_digits(self, left, right):
        """Multiply two matrices and give the digits of the product.

        The left matrix is expanded into GF(p) digits and the right matrix is
        multiplied by each element of the additive basis, so that the product
        is an integer matrix product reduced modulo p.

        Args:
            left (numpy.ndarray): Matrix of shape (a, k).
            right (numpy.ndarray): Matrix of shape (k, b).

        Returns:
            numpy.ndarray: Digits of the product, shape (a, b, e).
        """
        left = np.asarray(left, dtype=np.int64)
        right = np.asarray(right, dtype=np.int64)
        a, k = left.shape
        b = right.shape[1]

        left_digits = self.to_digits(left).reshape(a, k * self.e)

        # basis element p^s times every entry of the right matrix
        scaled = self.vmul(self.digit_weights[None, :, None], right[:, None, :])
        right_digits = self.to_digits(scaled).reshape(k * self.e, b * self.e)

        # sums of k e (p - 1)^2 at most, exact in floating point
        product = left_digits.astype(np.float64) @ right_digits.astype(np.float64)
        return (product.astype(np.int64) % self.p).reshape(a, b, self.e)

    def matmul(self, left, right):
        return self.from_digits(self.matmul_digits(left, right))


@lru_cache(maxsize=None)
def make_field(p, e=1):
    """Create the field GF(p^e).

    Fields are cached, so that the same object is returned for the same
    parameters.

    Args:
        p (int): Characteristic.
        e (int): Degree.

    Returns:
        Field: The field.
    """
    return Field(p, e)


def field_from_order(q):
    """Create the field of a given order.

    Args:
        q (int): Order, must be a prime power.

    Returns:
        Field: The field.

    Raises:
        FieldParameterError: If the order is not a prime power.
    """
    if q < 2:
        raise FieldParameterError("Order {} is not a prime power".format(q))

    p = next(divisor for divisor in range(2, q + 1) if q % divisor == 0)
    e = 0
    rest = q
    while rest % p == 0:
        rest //= p
        e += 1

    if rest != 1:
        raise FieldParameterError("Order {} is not a prime power".format(q))

    return make_field(p, e)


class FieldError(HermcodesError):
    """Generic error raised by field arithmetic."""


class FieldParameterError(FieldError, ValueError):
    """Invalid field parameters."""


class FieldZeroDivisionError(FieldError, ZeroDivisionError):
    """Inversion of zero."""


class ConjugationError(FieldError):
    """Conjugation requested in a field of odd degree."""
