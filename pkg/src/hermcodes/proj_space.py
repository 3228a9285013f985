"""Finite projective space module.

This module enumerates the points of the projective space PG(n, q) in a
canonical order. A point is given by its coordinates in canonical form: the
first nonzero coordinate is 1. Points are ordered by their number of leading
zeros, then lexicographically on the remaining coordinates, which gives the
partition of the space into affine parts W_0, W_1, ..., W_n:

>>> from hermcodes.gf_arith import make_field
>>> space = ProjectiveSpace(2, make_field(2))
>>> len(space)
7
>>> space.coords[:3].tolist()
[[1, 0, 0], [1, 0, 1], [1, 1, 0]]

The index of a canonical point is computed arithmetically, so that the space
never needs a lookup table:

>>> space.index_of((0, 1, 1))
5

Subsets of points are stored as `PointSet` objects, boolean masks over the
point indices. Linear subspaces are stored as `Flat` objects, by a basis in
reduced row echelon form, and are materialized into point sets on demand:

>>> line = space.line_through(0, 5)
>>> line.dim, len(line.points(space))
(1, 3)
"""

import logging
from functools import cached_property

import numpy as np

from hermcodes.exceptions import HermcodesError

logger = logging.getLogger(__name__)


def pi(n, q):
    """Give the number of points of PG(n, q).

    By convention, PG(-1, q) is empty.

    Args:
        n (int): Dimension, at least -1.
        q (int): Order of the field.

    Returns:
        int: (q^(n+1) - 1) / (q - 1).
    """
    return sum(q**i for i in range(n + 1))


class PointSet:
    """Set of points of a projective space.

    Args:
        mask (numpy.ndarray): Boolean mask over the point indices.

    Attributes:
        mask (numpy.ndarray): Boolean mask over the point indices. It must not
            be modified.
    """

    def __init__(self, mask):
        self.mask = np.asarray(mask, dtype=bool)

    @classmethod
    def from_indices(cls, indices, size):
        mask = np.zeros(size, dtype=bool)
        mask[np.asarray(indices, dtype=np.int64)] = True
        return cls(mask)

    @cached_property
    def cardinality(self):
        """int: Number of points in the set."""
        return int(np.count_nonzero(self.mask))

    @cached_property
    def indices(self):
        """numpy.ndarray: Indices of the points in increasing order."""
        return np.flatnonzero(self.mask)

    def __len__(self):
        return self.cardinality

    def __contains__(self, index):
        return bool(self.mask[index])

    def __iter__(self):
        return iter(self.indices.tolist())

    def __and__(self, other):
        return PointSet(self.mask & other.mask)

    def __or__(self, other):
        return PointSet(self.mask | other.mask)

    def __sub__(self, other):
        return PointSet(self.mask & ~other.mask)

    def __eq__(self, other):
        return isinstance(other, PointSet) and np.array_equal(self.mask, other.mask)

    def __hash__(self):
        return hash(self.mask.tobytes())

    def issubset(self, other):
        return not np.any(self.mask & ~other.mask)

    def __repr__(self):
        return "PointSet({} points)".format(self.cardinality)


class Flat:
    """Linear subspace of a projective space.

    The basis is stored in reduced row echelon form, hence two flats are equal
    if and only if their bases are equal.

    Args:
        basis (array-like): Spanning vectors, as rows.
        field (hermcodes.gf_arith.Field): Field of the coordinates.

    Attributes:
        basis (numpy.ndarray): Basis in reduced row echelon form, shape
            (dim + 1, n + 1).
        dim (int): Projective dimension, -1 for the empty flat.
        field (hermcodes.gf_arith.Field): Field of the coordinates.
    """

    def __init__(self, basis, field):
        basis = np.array(basis, dtype=np.int64, ndmin=2)
        self.field = field
        if basis.size == 0:
            self.basis = basis.reshape(0, basis.shape[-1])

        else:
            self.basis = field.rref(basis)[0]

        self.dim = self.basis.shape[0] - 1
        self._points = None

    @classmethod
    def from_equations(cls, equations, field):
        """Create the flat of the common zeros of linear forms.

        Args:
            equations (array-like): Coefficients of the linear forms, as rows.
            field (hermcodes.gf_arith.Field): Field of the coordinates.

        Returns:
            Flat: The flat.
        """
        return cls(field.nullspace(equations), field)

    @cached_property
    def equations(self):
        """numpy.ndarray: Linear forms whose common zeros are the flat."""
        return self.field.nullspace(self.basis)

    @property
    def ambient_dim(self):
        return self.basis.shape[1] - 1

    def __eq__(self, other):
        return isinstance(other, Flat) and np.array_equal(self.basis, other.basis)

    def __hash__(self):
        return hash((self.basis.shape, self.basis.tobytes()))

    def __repr__(self):
        return "Flat(dim={}, basis={})".format(self.dim, self.basis.tolist())

    def points(self, space):
        """Materialize the flat as a set of points.

        The result is cached.

        Args:
            space (ProjectiveSpace): Ambient space.

        Returns:
            PointSet: Points of the flat.
        """
        if self._points is None:
            if self.dim < 0:
                self._points = PointSet(np.zeros(len(space), dtype=bool))

            else:
                combinations = ProjectiveSpace(self.dim, self.field).coords
                vectors = self.field.matmul(combinations, self.basis)
                self._points = PointSet.from_indices(
                    space.indices_of(vectors), len(space)
                )

        return self._points

    def contains(self, other):
        """Tell if another flat is included in this one."""
        stacked = np.vstack([self.basis, other.basis])
        return self.field.rank(stacked) == self.dim + 1

    def meet(self, other):
        """Give the intersection with another flat."""
        return Flat.from_equations(
            np.vstack([self.equations, other.equations]), self.field
        )

    def join(self, other):
        """Give the smallest flat containing this one and another one."""
        return Flat(np.vstack([self.basis, other.basis]), self.field)


class ProjectiveSpace:
    """Projective space PG(n, q) with its points in canonical order.

    Args:
        n (int): Dimension.
        field (hermcodes.gf_arith.Field): Field of the coordinates.

    Attributes:
        n (int): Dimension.
        field (hermcodes.gf_arith.Field): Field of the coordinates.
        offsets (numpy.ndarray): Index of the first point with i leading
            zeros, for i in [0, n + 1].
        weights (numpy.ndarray): Positional weights q^(n - j) of the
            coordinates.
    """

    HYPERPLANE_CHUNK = 256

    def __init__(self, n, field):
        if n < 0:
            raise SpaceDimensionError("Dimension must be nonnegative, got {}".format(n))

        self.n = n
        self.field = field
        q = field.q
        self.weights = q ** np.arange(n, -1, -1, dtype=np.int64)
        self.offsets = np.concatenate([[0], np.cumsum(self.weights)]).astype(np.int64)

    def __len__(self):
        return pi(self.n, self.field.q)

    def __repr__(self):
        return "PG({}, {})".format(self.n, self.field.q)

    @cached_property
    def coords(self):
        """numpy.ndarray: Canonical coordinates of all points, in order."""
        logger.debug("Enumerating the points of %s", self)
        return self.points_slice(0, len(self))

    def points_slice(self, start, stop):
        """Give the canonical coordinates of a range of points.

        Args:
            start (int): First index.
            stop (int): Index after the last one.

        Returns:
            numpy.ndarray: Coordinates, shape (stop - start, n + 1).
        """
        return self.points_at(np.arange(start, stop, dtype=np.int64))

    def points_at(self, indices):
        """Give the canonical coordinates of points by index.

        Args:
            indices (numpy.ndarray): Point indices.

        Returns:
            numpy.ndarray: Coordinates, one row per index.
        """
        indices = np.asarray(indices, dtype=np.int64)
        leading = np.searchsorted(self.offsets, indices, side="right") - 1
        remainder = indices - self.offsets[leading]

        # the digits of the remainder give the coordinates after the leading 1
        coords = (remainder[:, None] // self.weights) % self.field.q
        coords[np.arange(len(indices)), leading] = 1
        return coords

    def normalize(self, vectors):
        """Scale nonzero vectors to their canonical form.

        Args:
            vectors (numpy.ndarray): Nonzero vectors as rows.

        Returns:
            tuple: Canonical vectors (numpy.ndarray) and the position of their
            leading coordinate (numpy.ndarray).
        """
        vectors = np.array(vectors, dtype=np.int64, ndmin=2)
        leading = np.argmax(vectors != 0, axis=-1)
        lead_values = np.take_along_axis(vectors, leading[..., None], axis=-1)
        canonical = self.field.vmul(vectors, self.field.vinv(lead_values))
        return canonical, leading

    def indices_of(self, vectors):
        """Give the indices of the points spanned by nonzero vectors.

        Args:
            vectors (numpy.ndarray): Vectors along the last axis, any leading
                shape.

        Returns:
            numpy.ndarray: Point indices, with the leading shape of the input.
        """
        vectors = np.asarray(vectors, dtype=np.int64)
        shape = vectors.shape[:-1]
        canonical, leading = self.normalize(vectors.reshape(-1, self.n + 1))
        after = np.arange(self.n + 1) > leading[:, None]
        indices = self.offsets[leading] + (canonical * self.weights * after).sum(-1)
        return indices.reshape(shape)

    def index_of(self, vector):
        """Give the index of the point spanned by a nonzero vector.

        Raises:
            SpaceDimensionError: If the vector is zero.
        """
        vector = np.asarray(vector, dtype=np.int64)
        if not vector.any():
            raise SpaceDimensionError("The zero vector spans no point")

        return int(self.indices_of(vector[None, :])[0])

    def point_set(self, indices):
        return PointSet.from_indices(indices, len(self))

    @cached_property
    def full(self):
        """PointSet: All the points of the space."""
        return PointSet(np.ones(len(self), dtype=bool))

    def line_through(self, first, second):
        """Give the line through two distinct points given by index.

        Raises:
            SpaceDimensionError: If the points are equal.
        """
        if first == second:
            raise SpaceDimensionError("A line needs two distinct points")

        return Flat(self.coords[[first, second]], self.field)

    def span(self, indices):
        """Give the flat spanned by points given by index."""
        return Flat(self.coords[list(indices)], self.field)

    def hyperplane(self, equation):
        """Give the hyperplane of the zeros of a nonzero linear form."""
        return Flat.from_equations([equation], self.field)

    def line_points(self, first, others):
        """Give the points of the lines joining a point to other points.

        Args:
            first (int): Index of the common point.
            others (numpy.ndarray): Indices of the other points, all distinct
                from the first one.

        Returns:
            numpy.ndarray: Point indices of shape (len(others), q), the line
            joining `first` to `others[i]` being `first` plus row i.
        """
        lambdas = np.arange(self.field.q, dtype=np.int64)
        base = self.coords[first]
        vectors = self.field.vadd(
            self.coords[others][:, None, :],
            self.field.vmul(lambdas[None, :, None], base[None, None, :]),
        )
        return self.indices_of(vectors)

    def lines_in_set(self, point_set):
        """Give all the lines entirely contained in a set of points.

        Each line is listed once, lines sorted by their point indices.

        Args:
            point_set (PointSet): Set of points.

        Returns:
            list of Flat: Lines contained in the set.
        """
        indices = point_set.indices
        keys = []
        for position, first in enumerate(indices[:-1]):
            others = indices[position + 1 :]
            lines = self.line_points(first, others)

            # a line is kept from its two smallest points only
            keep = point_set.mask[lines].all(axis=1) & (lines.min(axis=1) == others)
            for row in lines[keep]:
                keys.append((int(first),) + tuple(sorted(row.tolist())))

        keys.sort()
        lines = []
        for key in keys:
            line = self.span(key[:2])
            line._points = self.point_set(key)
            lines.append(line)

        return lines

    @cached_property
    def line_table(self):
        """numpy.ndarray: Point indices of all the lines, one sorted row each.

        Rows are sorted, so that row i is the i-th line of `lines_in_set`
        applied to the whole space.
        """
        logger.debug("Enumerating the lines of %s", self)
        rows = [line.points(self).indices for line in self.lines_in_set(self.full)]
        return np.array(rows, dtype=np.int64).reshape(-1, self.field.q + 1)

    def count_lines(self, masks):
        """Count the lines contained in several sets of points at once.

        Args:
            masks (numpy.ndarray): Boolean masks over the points, one row per
                set.

        Returns:
            numpy.ndarray: Number of lines contained in each set.
        """
        masks = np.asarray(masks, dtype=bool)
        return masks[:, self.line_table].all(axis=2).sum(axis=1)

    def lines_through_point(self, point_set, point):
        """Count the lines of a set through one of its points.

        Args:
            point_set (PointSet): Set of points.
            point (int): Index of a point of the set.

        Returns:
            int: Number of lines through the point contained in the set.
        """
        others = point_set.indices[point_set.indices != point]
        if others.size == 0:
            return 0

        lines = self.line_points(point, others)
        contained = point_set.mask[lines].all(axis=1)

        # each contained line is seen once per point other than `point`
        return int(np.count_nonzero(contained)) // self.field.q

    def hyperplanes_through(self, flat):
        """Give the q + 1 hyperplanes through a flat of codimension 2.

        Args:
            flat (Flat): Flat of dimension n - 2.

        Returns:
            list of Flat: The hyperplanes, in the canonical order of their
            equations.

        Raises:
            SpaceDimensionError: If the flat has the wrong dimension.
        """
        if flat.dim != self.n - 2:
            raise SpaceDimensionError(
                "Expected a flat of dimension {}, got {}".format(self.n - 2, flat.dim)
            )

        # the equations of the hyperplanes form a line of the dual space
        pencil = ProjectiveSpace(1, self.field).coords
        equations = self.field.matmul(pencil, flat.equations)
        canonical, _ = self.normalize(equations)
        order = np.lexsort(canonical.T[::-1])
        return [self.hyperplane(equation) for equation in canonical[order]]

    def dual_hyperplanes(self):
        """Give the equations of all the hyperplanes of the space.

        Returns:
            numpy.ndarray: Canonical equations, in the order of the points of
            the dual space.
        """
        return self.coords

    @cached_property
    def hyperplane_masks(self):
        """numpy.ndarray: Boolean incidence matrix hyperplanes times points.

        Row i is the hyperplane whose equation is the i-th canonical point.
        """
        masks = np.empty((len(self), len(self)), dtype=bool)
        for start in range(0, len(self), self.HYPERPLANE_CHUNK):
            stop = start + self.HYPERPLANE_CHUNK
            masks[start:stop] = (
                self.field.matmul(self.coords[start:stop], self.coords.T) == 0
            )

        return masks

    def planes_through_line(self, line):
        """Give the planes through a line in a space of dimension 3 or 4.

        Args:
            line (Flat): A line.

        Returns:
            list of Flat: The planes containing the line, in the order of
            their first point outside the line.
        """
        outside = np.flatnonzero(~line.points(self).mask)
        planes = {}
        covered = np.zeros(len(self), dtype=bool)
        for point in outside:
            if covered[point]:
                continue

            plane = line.join(Flat(self.coords[point], self.field))
            covered |= plane.points(self).mask
            planes[plane.basis.tobytes()] = plane

        return list(planes.values())


class SpaceDimensionError(HermcodesError, ValueError):
    """Invalid dimension for a projective space operation."""
