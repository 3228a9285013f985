"""Quadratic and hermitian forms module.

This module gives the two kinds of forms the package works with:

* `QuadraticForm`, f(x) = sum of a_ij x_i x_j over i <= j, stored as an upper
  triangular matrix;
* `HermitianForm`, f(x) = sum of h_ij x_i conj(x_j), stored as a hermitian
  matrix over GF(t^2).

>>> from hermcodes.gf_arith import make_field
>>> from hermcodes.proj_space import ProjectiveSpace
>>> field = make_field(3)
>>> form = QuadraticForm.from_vector(
...     [0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1], 4, field
... )
>>> space = ProjectiveSpace(4, field)
>>> len(variety_points(form, space))
40
>>> classify(form, space).describe()
'parabolic P₄: rank 5 parabolic, 40 points, g=1'

The rank of a variety is read from its vertex, the set of points P of the
variety such that every line joining P to a point of the variety lies in it.
The vertex is computed by brute force over the points, which does not depend
on the characteristic. Classification then resolves the type of the base of
the cone by counting its points, and looks the result up in the tables of
quadrics and hermitian varieties of dimension at most 4. A classification
whose predicted cardinality differs from the counted one is a bug and raises
`UnclassifiableFormError`.

Forms restrict to flats in intrinsic coordinates, which gives the sections
used by the tangency test and by the hyperplane section checks.
"""

import itertools
import logging
from collections import Counter
from dataclasses import dataclass
from typing import Optional

import numpy as np

from hermcodes.exceptions import HermcodesError
from hermcodes.proj_space import Flat, PointSet, ProjectiveSpace, pi

# memory budget of one block of the vertex computation, in coordinates
VERTEX_BLOCK = 2**22

logger = logging.getLogger(__name__)


def phi(n, t):
    """Give the number of points of the nonsingular hermitian variety of PG(n, t^2).

    Args:
        n (int): Dimension.
        t (int): Square root of the order of the field.

    Returns:
        int: [t^(n+1) - (-1)^(n+1)] [t^n - (-1)^n] / (t^2 - 1).
    """
    return (t ** (n + 1) - (-1) ** (n + 1)) * (t**n - (-1) ** n) // (t**2 - 1)


def degenerate_hermitian_count(n, r, t):
    """Give the number of points of a hermitian variety of rank r in PG(n, t^2).

    Such a variety is a cone with a vertex of dimension n - r over a
    nonsingular hermitian variety of PG(r - 1, t^2).

    Args:
        n (int): Dimension.
        r (int): Rank, in [1, n + 1].
        t (int): Square root of the order of the field.

    Returns:
        int: (t^2 - 1) pi_(n-r) Phi(r-1) + pi_(n-r) + Phi(r-1).
    """
    vertex = pi(n - r, t**2)
    base = phi(r - 1, t)
    return (t**2 - 1) * vertex * base + vertex + base


def nondegenerate_quadric_count(r, type_tag, q):
    """Give the number of points of a nondegenerate quadric of PG(r - 1, q).

    Args:
        r (int): Number of variables.
        type_tag (str): One of "parabolic", "hyperbolic" or "elliptic".
        q (int): Order of the field.

    Returns:
        int: Number of points.
    """
    m = r // 2
    if type_tag == "parabolic":
        return pi(r - 2, q)

    if type_tag == "hyperbolic":
        return (q**m - 1) * (q ** (m - 1) + 1) // (q - 1)

    return (q**m + 1) * (q ** (m - 1) - 1) // (q - 1)


def cone_count(n, r, base_count, q):
    """Give the number of points of a cone of PG(n, q) over a base of PG(r - 1, q)."""
    return q ** (n - r + 1) * base_count + pi(n - r, q)


@dataclass(frozen=True)
class VarietyClass:
    """Class of a quadric or of a hermitian variety.

    Attributes:
        kind (str): "quadric" or "hermitian".
        n (int): Dimension of the ambient space.
        rank (int): Rank, 0 for a section equal to its whole flat.
        projective_index (int): Largest dimension of a flat in the variety.
        label (str): Row name in the classification tables.
        cardinality (int): Predicted number of points.
        type_tag (str): For quadrics, type of the base of the cone.
    """

    kind: str
    n: int
    rank: int
    projective_index: int
    label: str
    cardinality: int
    type_tag: Optional[str] = None

    @property
    def degenerate(self):
        return self.rank < self.n + 1

    def describe(self):
        kind = self.type_tag if self.kind == "quadric" else "hermitian"
        return "{}: rank {} {}, {} points, g={}".format(
            self.label, self.rank, kind, self.cardinality, self.projective_index
        )

    def as_dict(self):
        return {
            "kind": self.kind,
            "n": self.n,
            "rank": self.rank,
            "projective_index": self.projective_index,
            "label": self.label,
            "cardinality": self.cardinality,
            "type_tag": self.type_tag,
        }


QUADRIC_LABELS = {
    (0, 1, "parabolic"): "empty P₀",
    (1, 1, "parabolic"): "repeated point Π₀P₀",
    (1, 2, "hyperbolic"): "pair of points H₁",
    (1, 2, "elliptic"): "empty E₁",
    (2, 1, "parabolic"): "repeated line Π₁P₀",
    (2, 2, "hyperbolic"): "pair of lines Π₀H₁",
    (2, 2, "elliptic"): "point Π₀E₁",
    (2, 3, "parabolic"): "conic P₂",
    (3, 1, "parabolic"): "repeated plane Π₂P₀",
    (3, 2, "hyperbolic"): "pair of planes Π₁H₁",
    (3, 2, "elliptic"): "line Π₁E₁",
    (3, 3, "parabolic"): "quadric cone Π₀P₂",
    (3, 4, "hyperbolic"): "hyperbolic quadric H₃",
    (3, 4, "elliptic"): "elliptic quadric E₃",
    (4, 1, "parabolic"): "repeated hyperplane Π₃P₀",
    (4, 2, "hyperbolic"): "pair of hyperplanes Π₂H₁",
    (4, 2, "elliptic"): "plane Π₂E₁",
    (4, 3, "parabolic"): "cone Π₁P₂",
    (4, 4, "hyperbolic"): "cone Π₀H₃",
    (4, 4, "elliptic"): "cone Π₀E₃",
    (4, 5, "parabolic"): "parabolic P₄",
}

HERMITIAN_LABELS = {
    (0, 1): "empty U₀",
    (1, 1): "repeated point Π₀U₀",
    (1, 2): "t+1 points U₁",
    (2, 1): "repeated line Π₁U₀",
    (2, 2): "t+1 concurrent lines Π₀U₁",
    (2, 3): "non-singular hermitian curve U₂",
    (3, 1): "repeated plane Π₂U₀",
    (3, 2): "t+1 collinear planes Π₁U₁",
    (3, 3): "cone Π₀U₂",
    (3, 4): "non-singular hermitian surface U₃",
    (4, 1): "repeated hyperplane Π₃U₀",
    (4, 2): "t+1 hyperplanes through a plane Π₂U₁",
    (4, 3): "cone Π₁U₂",
    (4, 4): "cone Π₀U₃",
    (4, 5): "non-singular hermitian variety U₄",
}

MAX_DIMENSION = 4


def quadric_projective_index(n, r, type_tag):
    if type_tag == "parabolic":
        base = (r - 3) // 2

    elif type_tag == "hyperbolic":
        base = r // 2 - 1

    else:
        base = r // 2 - 2

    return n - r + 1 + base


def hermitian_projective_index(n, r):
    return n - r + 1 + (r - 2) // 2


class Form:
    """Base class of the forms.

    Attributes:
        n (int): Dimension of the ambient projective space.
        field (hermcodes.gf_arith.Field): Field of the coefficients.
        matrix (numpy.ndarray): Coefficient matrix, shape (n + 1, n + 1).
    """

    kind = None

    def __init__(self, n, field, matrix):
        self.n = n
        self.field = field
        self.matrix = np.array(matrix, dtype=np.int64)
        if self.matrix.shape != (n + 1, n + 1):
            raise FormShapeError(
                "Expected a {0}x{0} matrix, got shape {1}".format(
                    n + 1, self.matrix.shape
                )
            )

        self._zero_sets = {}

    def __eq__(self, other):
        return (
            type(self) is type(other)
            and self.field == other.field
            and np.array_equal(self.matrix, other.matrix)
        )

    def __hash__(self):
        return hash((self.kind, self.field, self.matrix.tobytes()))

    def is_zero(self):
        return not self.matrix.any()

    def evaluate(self, coords):
        raise NotImplementedError()

    def restrict(self, basis):
        raise NotImplementedError()

    def zero_set(self, space):
        """Give the zero set of the form in a projective space.

        The result is cached by space.
        """
        key = id(space)
        if key not in self._zero_sets:
            self._zero_sets[key] = (
                space,
                PointSet(self.evaluate(space.coords) == 0),
            )

        return self._zero_sets[key][1]


class QuadraticForm(Form):
    """Quadratic form f(x) = sum over i <= j of a_ij x_i x_j.

    Args:
        n (int): Dimension of the ambient projective space.
        field (hermcodes.gf_arith.Field): Field of the coefficients.
        matrix (array-like): Upper triangular coefficient matrix. Entries
            below the diagonal must be zero.
    """

    kind = "quadric"

    def __init__(self, n, field, matrix):
        super().__init__(n, field, matrix)
        if np.tril(self.matrix, -1).any():
            raise FormShapeError("Quadratic form matrix must be upper triangular")

    def __repr__(self):
        return "QuadraticForm(n={}, {}, {})".format(
            self.n, self.field, self.coefficient_vector().tolist()
        )

    @staticmethod
    def vector_length(n):
        return (n + 1) * (n + 2) // 2

    @classmethod
    def from_vector(cls, vector, n, field):
        """Create a form from its coefficients in upper triangular order.

        The order is a_00, a_01, ..., a_0n, a_11, a_12, ..., a_nn.

        Raises:
            FormShapeError: If the vector has the wrong length.
        """
        vector = np.asarray(vector, dtype=np.int64)
        if vector.shape != (cls.vector_length(n),):
            raise FormShapeError(
                "Expected {} coefficients for n={}, got {}".format(
                    cls.vector_length(n), n, vector.size
                )
            )

        matrix = np.zeros((n + 1, n + 1), dtype=np.int64)
        matrix[np.triu_indices(n + 1)] = vector
        return cls(n, field, matrix)

    @classmethod
    def from_terms(cls, terms, n, field):
        """Create a form from a mapping of (i, j) to coefficients."""
        matrix = np.zeros((n + 1, n + 1), dtype=np.int64)
        for (i, j), coefficient in terms.items():
            i, j = min(i, j), max(i, j)
            matrix[i, j] = field.add(int(matrix[i, j]), coefficient)

        return cls(n, field, matrix)

    @classmethod
    def from_linear_product(cls, first, second, field):
        """Create the product of two linear forms.

        Args:
            first (array-like): Coefficients of the first linear form.
            second (array-like): Coefficients of the second linear form.
            field (hermcodes.gf_arith.Field): Field of the coefficients.

        Returns:
            QuadraticForm: The product.
        """
        first = np.asarray(first, dtype=np.int64)
        second = np.asarray(second, dtype=np.int64)
        outer = field.vmul(first[:, None], second[None, :])
        matrix = np.triu(field.vadd(outer, outer.T), 1)
        np.fill_diagonal(matrix, np.diagonal(outer))
        return cls(len(first) - 1, field, matrix)

    def coefficient_vector(self):
        return self.matrix[np.triu_indices(self.n + 1)]

    def evaluate(self, coords):
        """Evaluate the form at points.

        Args:
            coords (numpy.ndarray): Coordinates as rows.

        Returns:
            numpy.ndarray: Values, one per row.
        """
        coords = np.asarray(coords, dtype=np.int64)
        values = np.zeros(coords.shape[:-1], dtype=np.int64)
        for i, j in zip(*np.nonzero(self.matrix)):
            monomial = self.field.vmul(coords[..., i], coords[..., j])
            values = self.field.vadd(
                values, self.field.vmul(int(self.matrix[i, j]), monomial)
            )

        return values

    def restrict(self, basis):
        """Rewrite the form in the coordinates of a flat.

        A point y of the flat is sum of y_k basis_k, the restricted form is
        f(y basis).

        Args:
            basis (numpy.ndarray): Basis vectors of the flat, as rows.

        Returns:
            QuadraticForm: The restricted form, in len(basis) variables.
        """
        basis = np.asarray(basis, dtype=np.int64)
        product = self.field.matmul(
            self.field.matmul(basis, self.matrix), basis.T
        )
        matrix = np.triu(self.field.vadd(product, product.T), 1)
        np.fill_diagonal(matrix, np.diagonal(product))
        return QuadraticForm(basis.shape[0] - 1, self.field, matrix)

    def is_proportional(self, other):
        """Tell if another form is a nonzero scalar multiple of this one."""
        mine = self.coefficient_vector()
        theirs = other.coefficient_vector()
        support = np.flatnonzero(mine)
        if support.size == 0 or not np.array_equal(support, np.flatnonzero(theirs)):
            return False

        ratio = self.field.div(int(theirs[support[0]]), int(mine[support[0]]))
        return np.array_equal(self.field.vmul(mine, ratio), theirs)


class HermitianForm(Form):
    """Hermitian form f(x) = sum of h_ij x_i conj(x_j) over GF(t^2).

    Args:
        n (int): Dimension of the ambient projective space.
        field (hermcodes.gf_arith.Field): Field of order t^2.
        matrix (array-like): Hermitian matrix, h_ji = conj(h_ij).

    Raises:
        FormShapeError: If the matrix is not hermitian.
    """

    kind = "hermitian"

    def __init__(self, n, field, matrix):
        super().__init__(n, field, matrix)
        if not np.array_equal(self.matrix.T, field.vconjugate(self.matrix)):
            raise FormShapeError("Hermitian form matrix must be hermitian")

    def __repr__(self):
        return "HermitianForm(n={}, {}, {})".format(
            self.n, self.field, self.matrix.tolist()
        )

    @classmethod
    def from_upper(cls, vector, n, field):
        """Create a form from its upper triangular entries.

        The lower triangle is filled by conjugation. Diagonal entries must lie
        in GF(t).
        """
        vector = np.asarray(vector, dtype=np.int64)
        if vector.shape != (QuadraticForm.vector_length(n),):
            raise FormShapeError(
                "Expected {} coefficients for n={}, got {}".format(
                    QuadraticForm.vector_length(n), n, vector.size
                )
            )

        matrix = np.zeros((n + 1, n + 1), dtype=np.int64)
        matrix[np.triu_indices(n + 1)] = vector
        lower = np.tril_indices(n + 1, -1)
        matrix[lower] = field.vconjugate(matrix.T[lower])
        return cls(n, field, matrix)

    @classmethod
    def diagonal(cls, entries, field):
        """Create the diagonal form sum of d_i x_i^(t+1)."""
        return cls(len(entries) - 1, field, np.diag(entries))

    def upper_vector(self):
        return self.matrix[np.triu_indices(self.n + 1)]

    def evaluate(self, coords):
        coords = np.asarray(coords, dtype=np.int64)
        field = self.field
        conjugates = field.vconjugate(coords)
        values = np.zeros(coords.shape[:-1], dtype=np.int64)
        for i, j in zip(*np.nonzero(self.matrix)):
            if i > j:
                continue

            term = field.vmul(
                int(self.matrix[i, j]),
                field.vmul(coords[..., i], conjugates[..., j]),
            )
            if i < j:
                # the (j, i) term is the conjugate of the (i, j) one
                term = field.vadd(term, field.vconjugate(term))

            values = field.vadd(values, term)

        return values

    def restrict(self, basis):
        basis = np.asarray(basis, dtype=np.int64)
        field = self.field
        product = field.matmul(
            field.matmul(basis, self.matrix), field.vconjugate(basis).T
        )
        return HermitianForm(basis.shape[0] - 1, field, product)


def _space_for(form, space):
    if space is None:
        return ProjectiveSpace(form.n, form.field)

    return space


def variety_points(form, space=None):
    """Give the zero set of a nonzero form.

    Args:
        form (Form): The form.
        space (hermcodes.proj_space.ProjectiveSpace): Ambient space, created
            if not given.

    Returns:
        hermcodes.proj_space.PointSet: Points where the form vanishes.

    Raises:
        ZeroFormError: If the form is zero.
    """
    if form.is_zero():
        raise ZeroFormError("The zero form defines no variety")

    return form.zero_set(_space_for(form, space))


def cone_points(form, space=None):
    """Give the points of the variety joined to it by lines of the variety.

    Args:
        form (Form): Nonzero form.
        space (hermcodes.proj_space.ProjectiveSpace): Ambient space.

    Returns:
        numpy.ndarray: Indices of the vertex points.
    """
    space = _space_for(form, space)
    zeros = variety_points(form, space)
    indices = zeros.indices
    count = len(indices)
    if count == 0:
        return indices

    field = space.field
    coords = space.coords[indices]
    lambdas = np.arange(field.q, dtype=np.int64)
    shifts = field.vmul(lambdas[:, None], coords[:, None, :])

    # line PD is made of P and the points D + lambda P
    block = max(1, VERTEX_BLOCK // (count * field.q * (space.n + 1)))
    is_cone = np.zeros(count, dtype=bool)
    for start in range(0, count, block):
        stop = min(start + block, count)
        vectors = field.vadd(coords[None, :, None, :], shifts[start:stop, None, :, :])
        lines = space.indices_of(vectors)
        contained = zeros.mask[lines].all(axis=2)
        contained[np.arange(stop - start), np.arange(start, stop)] = True
        is_cone[start:stop] = contained.all(axis=1)

    return indices[is_cone]


def vertex(form, space=None):
    """Give the vertex of a variety.

    Args:
        form (Form): Nonzero form.
        space (hermcodes.proj_space.ProjectiveSpace): Ambient space.

    Returns:
        hermcodes.proj_space.Flat: The vertex, of dimension -1 when empty.
    """
    space = _space_for(form, space)
    points = cone_points(form, space)
    if points.size == 0:
        return Flat(np.zeros((0, form.n + 1), dtype=np.int64), form.field)

    return Flat(space.coords[points], form.field)


def rank(form, space=None):
    """Give the rank of a variety from its vertex."""
    return form.n - vertex(form, space).dim


def quadric_radical(form):
    """Give the vector radical of a quadratic form.

    The radical is the subspace of vectors v with f(v) = 0 and
    f(u + v) = f(u) for all u.

    Args:
        form (QuadraticForm): The form.

    Returns:
        numpy.ndarray: Basis of the radical, as rows.
    """
    field = form.field
    polar = field.vadd(form.matrix, form.matrix.T)
    kernel = field.nullspace(polar)
    if kernel.shape[0] == 0 or field.p != 2:
        return kernel

    # in characteristic 2, f is semilinear on the kernel of the polar form
    roots = [field.sqrt(int(value)) for value in form.evaluate(kernel)]
    if not any(roots):
        return kernel

    combinations = field.nullspace([roots])
    if combinations.shape[0] == 0:
        return combinations

    return field.matmul(combinations, kernel)


def algebraic_rank(form):
    """Give the rank of a form from linear algebra.

    For a hermitian form this is the rank of its matrix, for a quadratic form
    the codimension of its vector radical.
    """
    if form.kind == "hermitian":
        return form.field.rank(form.matrix)

    return form.n + 1 - quadric_radical(form).shape[0]


def complement_basis(vertex_flat, n, field):
    """Give standard basis vectors completing the vertex to the whole space."""
    chosen = [row for row in vertex_flat.basis]
    complement = []
    identity = np.eye(n + 1, dtype=np.int64)
    for vector in identity:
        candidate = chosen + [vector]
        if field.rank(np.array(candidate)) == len(candidate):
            chosen.append(vector)
            complement.append(vector)

    return np.array(complement, dtype=np.int64)


def classify(form, space=None):
    """Classify a variety against the tables of quadrics and hermitian varieties.

    Args:
        form (Form): Nonzero form in dimension at most 4.
        space (hermcodes.proj_space.ProjectiveSpace): Ambient space.

    Returns:
        VarietyClass: The class of the variety.

    Raises:
        ZeroFormError: If the form is zero.
        FormShapeError: If the dimension is above 4.
        UnclassifiableFormError: If the variety matches no row of the tables.
    """
    if form.n > MAX_DIMENSION:
        raise FormShapeError(
            "Classification is available up to dimension {}, got {}".format(
                MAX_DIMENSION, form.n
            )
        )

    space = _space_for(form, space)
    count = variety_points(form, space).cardinality
    vertex_flat = vertex(form, space)
    r = form.n - vertex_flat.dim

    if form.kind == "hermitian":
        variety_class = _classify_hermitian(form, r)

    else:
        variety_class = _classify_quadric(form, vertex_flat, r)

    if variety_class.cardinality != count:
        raise UnclassifiableFormError(
            "Form {} classified as '{}' with {} points, but has {} points".format(
                form, variety_class.label, variety_class.cardinality, count
            )
        )

    return variety_class


def _classify_hermitian(form, r):
    label = HERMITIAN_LABELS.get((form.n, r))
    if label is None:
        raise UnclassifiableFormError(
            "No hermitian row for n={} and rank {}".format(form.n, r)
        )

    return VarietyClass(
        kind="hermitian",
        n=form.n,
        rank=r,
        projective_index=hermitian_projective_index(form.n, r),
        label=label,
        cardinality=degenerate_hermitian_count(form.n, r, form.field.t),
    )


def _classify_quadric(form, vertex_flat, r):
    field = form.field
    q = field.q

    # the base of the cone lives on a complement of the vertex
    base = form.restrict(complement_basis(vertex_flat, form.n, field))
    base_count = base.zero_set(ProjectiveSpace(r - 1, field)).cardinality

    if r % 2:
        type_tag = "parabolic"

    else:
        type_tag = next(
            (
                tag
                for tag in ("hyperbolic", "elliptic")
                if nondegenerate_quadric_count(r, tag, q) == base_count
            ),
            None,
        )

    label = QUADRIC_LABELS.get((form.n, r, type_tag))
    if label is None:
        raise UnclassifiableFormError(
            "No quadric row for n={}, rank {} and a base of {} points".format(
                form.n, r, base_count
            )
        )

    return VarietyClass(
        kind="quadric",
        n=form.n,
        rank=r,
        projective_index=quadric_projective_index(form.n, r, type_tag),
        label=label,
        cardinality=cone_count(
            form.n, r, nondegenerate_quadric_count(r, type_tag, q), q
        ),
        type_tag=type_tag,
    )


def section_form(form, flat):
    """Give the restriction of a form to a flat."""
    return form.restrict(flat.basis)


def section_class(form, flat):
    """Classify the section of a variety by a flat.

    A flat contained in the variety gives a class of rank 0 labelled "entire
    flat".

    Args:
        form (Form): The form.
        flat (hermcodes.proj_space.Flat): The flat, of dimension at most 4.

    Returns:
        VarietyClass: Class of the section, in the intrinsic coordinates of
        the flat.
    """
    section = section_form(form, flat)
    if section.is_zero():
        return VarietyClass(
            kind=form.kind,
            n=flat.dim,
            rank=0,
            projective_index=flat.dim,
            label="entire flat",
            cardinality=pi(flat.dim, form.field.q),
        )

    return classify(section)


def is_tangent(hyperplane, form):
    """Tell if a hyperplane is tangent to a nondegenerate variety.

    Args:
        hyperplane (hermcodes.proj_space.Flat): Hyperplane.
        form (Form): Nondegenerate form.

    Returns:
        bool: True if the restriction of the form to the hyperplane is
        degenerate.

    Raises:
        DegenerateFormError: If the form is degenerate.
    """
    if algebraic_rank(form) < form.n + 1:
        raise DegenerateFormError("Tangency is defined for nondegenerate varieties")

    section = section_form(form, hyperplane)
    return section.is_zero() or algebraic_rank(section) < form.n


@dataclass(frozen=True)
class SectionCheck:
    """Outcome of a hyperplane section invariant.

    Attributes:
        name (str): Name of the invariant.
        passed (bool): True if the invariant holds.
        detail (str): Ranks and types involved.
    """

    name: str
    passed: bool
    detail: str


def hyperplane_section_checks(form, hyperplane, variety_class=None):
    """Check the hyperplane section invariants of a variety.

    * degenerate quadric of rank r: the section has rank r, r - 1 or r - 2;
    * nondegenerate quadric: a tangent section has rank n - 1 and the type of
      the quadric, a non-tangent section is nondegenerate;
    * nondegenerate hermitian variety: a non-tangent section is nondegenerate,
      a tangent section has rank n - 1 and a single point as vertex.

    Args:
        form (Form): Nonzero form of dimension at most 4.
        hyperplane (hermcodes.proj_space.Flat): Hyperplane.
        variety_class (VarietyClass): Class of the form, computed if not
            given.

    Returns:
        list of SectionCheck: The checks that apply.
    """
    variety_class = variety_class or classify(form)
    section = section_class(form, hyperplane)
    n = form.n
    r = variety_class.rank
    detail = "variety rank {} ({}), section rank {} ({})".format(
        r, variety_class.label, section.rank, section.label
    )
    checks = []

    if form.kind == "quadric":
        if variety_class.degenerate:
            checks.append(
                SectionCheck(
                    "degenerate section rank", section.rank in (r, r - 1, r - 2), detail
                )
            )

        else:
            tangent = section.rank < n
            checks.append(
                SectionCheck(
                    "nondegenerate section rank", section.rank in (n - 1, n), detail
                )
            )
            if tangent:
                checks.append(
                    SectionCheck(
                        "tangent section type",
                        section.type_tag == variety_class.type_tag,
                        detail,
                    )
                )

    elif not variety_class.degenerate:
        if section.rank == n:
            checks.append(SectionCheck("hermitian non-tangent section", True, detail))

        else:
            singular = vertex(section_form(form, hyperplane))
            checks.append(
                SectionCheck(
                    "hermitian tangent section",
                    section.rank == n - 1 and singular.dim == 0,
                    detail,
                )
            )

    return checks


def quadric_vectors(n, field):
    """Give the space of coefficient vectors of quadratic forms in n + 1 variables.

    Forms up to a nonzero scalar are the points of this projective space.
    """
    return ProjectiveSpace(QuadraticForm.vector_length(n) - 1, field)


def hermitian_parameters(n, field):
    """Give the radices of the parameters of the hermitian forms of dimension n.

    The parameters are the upper triangular entries, diagonal entries being
    indices into GF(t).
    """
    return [
        field.t if i == j else field.q
        for i, j in zip(*np.triu_indices(n + 1))
    ]


def hermitian_from_parameters(parameters, n, field):
    subfield = field.subfield()
    upper = [
        subfield[value] if i == j else value
        for value, (i, j) in zip(parameters, zip(*np.triu_indices(n + 1)))
    ]
    return HermitianForm.from_upper(upper, n, field)


def _is_canonical_hermitian(form, scalars):
    """Tell if a hermitian form is the smallest of its scalar class."""
    vector = tuple(form.upper_vector().tolist())
    for scalar in scalars:
        scaled = tuple(form.field.vmul(form.upper_vector(), scalar).tolist())
        if scaled < vector:
            return False

    return True


def iterate_forms(kind, n, field, samples=None, seed=0):
    """Iterate over nonzero forms, one per scalar class or sampled at random.

    Args:
        kind (str): "quadric" or "hermitian".
        n (int): Dimension.
        field (hermcodes.gf_arith.Field): Field of the coefficients.
        samples (int): Number of random forms, all classes if None.
        seed (int): Seed of the random generator.

    Yields:
        Form: Nonzero forms.
    """
    generator = np.random.default_rng(seed)
    if kind == "quadric":
        vectors = quadric_vectors(n, field)
        if samples is None:
            indices = range(len(vectors))

        else:
            indices = generator.integers(0, len(vectors), size=samples).tolist()

        for index in indices:
            yield QuadraticForm.from_vector(vectors.points_at([index])[0], n, field)

        return

    radices = hermitian_parameters(n, field)
    scalars = [value for value in field.subfield() if value not in (0, 1)]
    if samples is None:
        parameter_iterator = itertools.product(*[range(radix) for radix in radices])

    else:
        parameter_iterator = (
            [int(generator.integers(0, radix)) for radix in radices]
            for _ in range(samples)
        )

    for parameters in parameter_iterator:
        if not any(parameters):
            continue

        form = hermitian_from_parameters(parameters, n, field)
        if samples is None and not _is_canonical_hermitian(form, scalars):
            continue

        yield form


def classification_census(kind, n, field, samples=None, seed=0):
    """Classify many forms and count them by label.

    Every classification checks its predicted cardinality against the counted
    one, so that a census over all forms checks the tables.

    Args:
        kind (str): "quadric" or "hermitian".
        n (int): Dimension, at most 4.
        field (hermcodes.gf_arith.Field): Field of the coefficients.
        samples (int): Number of random forms, all scalar classes if None.
        seed (int): Seed of the random generator.

    Returns:
        collections.Counter: Number of forms per label.
    """
    space = ProjectiveSpace(n, field)
    census = Counter()
    for form in iterate_forms(kind, n, field, samples, seed):
        census[classify(form, space).label] += 1

    logger.info(
        "Classified %i %s forms of PG(%i, %i)",
        sum(census.values()),
        kind,
        n,
        field.q,
    )
    return census


class FormError(HermcodesError):
    """Generic error raised by forms."""


class FormShapeError(FormError, ValueError):
    """Invalid coefficients for a form."""


class ZeroFormError(FormError, ValueError):
    """Variety requested for the zero form."""


class DegenerateFormError(FormError, ValueError):
    """Nondegenerate form expected."""


class UnclassifiableFormError(RuntimeError):
    """Form matching no row of the classification tables.

    Every form must classify, so this error is a bug and hence does not
    inherit from HermcodesError.
    """
