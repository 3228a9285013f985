"""Intersection module.

This module counts the points of X ∩ Q for a variety X and a quadric Q, and
checks the counts against the bounds known for X of dimension 4:

>>> from hermcodes.gf_arith import make_field
>>> from hermcodes.forms import QuadraticForm
>>> field = make_field(3)
>>> x = QuadraticForm.from_terms({(0, 1): 1, (2, 3): 1, (4, 4): 1}, 4, field)
>>> q = QuadraticForm.from_linear_product([1, 1, 0, 0, 0], [0, 0, 1, 1, 0], field)
>>> report = intersection_count(x, q)
>>> report.count, report.bound_checked, report.attained
(28, 'parabolic', True)

`max_intersection_scan` evaluates every form of a given degree up to a
scalar, or a sample of them, on the points of X only, and gives the largest
count with a histogram of all counts. Forms vanishing on all of X are counted
in the histogram but left out of the maximum.

The censuses of PG(3, q) fix a quadric or the hermitian surface, run over
every quadric of a given type and count the points and the lines of the
intersections, against the caps known for each number of lines.
"""

import logging
import math
from collections import Counter
from dataclasses import dataclass, field as dataclass_field
from typing import List, Optional

import numpy as np

from hermcodes.codes import BoundHypothesisError, MonomialBasis
from hermcodes.exceptions import HermcodesError
from hermcodes.forms import (
    FormShapeError,
    QuadraticForm,
    classify,
    is_tangent,
    quadric_radical,
    quadric_vectors,
    section_form,
    variety_points,
)
from hermcodes.progress_bar import null_bar
from hermcodes.proj_space import Flat, ProjectiveSpace, pi
from hermcodes.safe_workers import run_shards

# cap on the number of forms of an exhaustive scan
SCAN_CAP = 10**9

# memory budget of one block of evaluations, in digits
SCAN_BLOCK = 2**22

ARGMAX_CAP = 10000
CHUNK_SIZE = 2**16

logger = logging.getLogger(__name__)


def leep_schueller_bound(n, q):
    """Give the bound on |Q1 ∩ Q2| for two quadrics of PG(n, q) of pair order n + 1.

    The bound holds for n even, at least 4.

    Raises:
        BoundHypothesisError: If n is odd or below 4.
    """
    if n < 4 or n % 2:
        raise BoundHypothesisError(
            "The bound needs an even dimension of at least 4, got {}".format(n)
        )

    numerator = (
        2 * q ** (n - 1) - q ** (n - 2) + q ** ((n + 2) // 2) - q ** (n // 2) - 1
    )
    return numerator // (q - 1)


def parabolic_bound(q):
    return 2 * q**2 + 3 * q + 1


def rank3_values(q):
    """Give the largest count and the bound on the others for X of rank 3."""
    return 4 * q**2 + q + 1, 3 * q**2 + q + 1


def rank4_g2_values(q):
    """Give the largest count and the bound on the others for X of rank 4, g = 2."""
    return 4 * q**2 + 1, 3 * q**2 + q + 1


def rank4_g1_bound(q):
    return 3 * q**2 + q + 1


def lachaud_quadric_bound(q):
    return 4 * (q**2 + q + 1)


def lachaud_hermitian_bound(t):
    q = t**2
    return 2 * (t + 1) * (q**2 + q + 1)


def hermitian_intersection_values(t):
    """Give the five largest counts of X ∩ Q for X non-singular in PG(4, t^2).

    The fifth value is the largest for t above 3 only.
    """
    return [
        2 * t**5 + t**3 + 2 * t**2 + 1,
        2 * t**5 + t**3 + t**2 + 1,
        2 * t**5 + 2 * t**2 + 1,
        2 * t**5 + t**2 + 1,
        2 * t**5 - t**3 + 2 * t**2 + 1,
    ]


def hermitian_section_counts(t):
    """Give the counts of non-tangent and tangent hyperplane sections of U₄."""
    return t**5 + t**3 + t**2 + 1, t**5 + t**2 + 1


def plane_pencil_bound(t):
    """Give the bound for a quadric through the planes of a pencil, X being U₄."""
    return t**5 + t**4 + t**3 + 2 * t**2 + 1


def cone_lift_count(m0, l, q):
    """Give the count of two cones with a common vertex of dimension l - 1.

    The base quadrics meet in m0 points of a complement of the vertex.

    Raises:
        IntersectParameterError: If m0 is negative or l not positive.
    """
    if m0 < 0 or l < 1:
        raise IntersectParameterError(
            "Expected m0 >= 0 and l >= 1, got m0={} and l={}".format(m0, l)
        )

    return m0 * q**l + pi(l - 1, q)


def applicable_bound(variety_class, q):
    """Give the bound a quadric section of a variety of PG(4, q) is checked against.

    Args:
        variety_class (hermcodes.forms.VarietyClass): Class of X.
        q (int): Order of the field.

    Returns:
        tuple: Name and value of the bound, or (None, None).
    """
    if variety_class is None or variety_class.n != 4:
        return None, None

    label = variety_class.label
    if label == "parabolic P₄":
        return "parabolic", parabolic_bound(q)

    if label == "cone Π₁P₂":
        return "rank 3 cone", rank3_values(q)[0]

    if label == "cone Π₀H₃":
        return "rank 4 cone, g=2", rank4_g2_values(q)[0]

    if label == "cone Π₀E₃":
        return "rank 4 cone, g=1", rank4_g1_bound(q)

    if label == "non-singular hermitian variety U₄":
        t = math.isqrt(q)
        return "hermitian", hermitian_intersection_values(t)[0]

    return None, None


def pair_order(first, second):
    """Give the least number of variables needed to write two quadratic forms.

    It is n + 1 minus the dimension of the intersection of the radicals.

    Raises:
        FormShapeError: If the forms are not quadratic forms of the same
            dimension.
    """
    if first.kind != "quadric" or second.kind != "quadric" or first.n != second.n:
        raise FormShapeError("Pair order needs two quadratic forms of same dimension")

    field = first.field
    radicals = [quadric_radical(first), quadric_radical(second)]
    dims = [radical.shape[0] for radical in radicals]
    if 0 in dims:
        return first.n + 1

    common = dims[0] + dims[1] - field.rank(np.vstack(radicals))
    return first.n + 1 - common


@dataclass
class IntersectionReport:
    """Points of X ∩ Q.

    Attributes:
        count (int): Number of points.
        lines (list of hermcodes.proj_space.Flat): Lines contained in X ∩ Q.
        order_w (int): Pair order of X and Q, None if X is hermitian.
        bound_checked (str): Name of the bound the count is checked against,
            None if none applies.
        bound_value (int): Value of the bound.
        attained (bool): True if the count equals the bound.
        within_bound (bool): True if the count does not exceed the bound.
    """

    count: int
    lines: List[Flat] = dataclass_field(default_factory=list)
    order_w: Optional[int] = None
    bound_checked: Optional[str] = None
    bound_value: Optional[int] = None
    attained: bool = False
    within_bound: bool = True

    def as_dict(self):
        return {
            "count": self.count,
            "lines": len(self.lines),
            "order_w": self.order_w,
            "bound_checked": self.bound_checked,
            "bound_value": self.bound_value,
            "attained": self.attained,
            "within_bound": self.within_bound,
        }


def intersection_count(variety, quadric, space=None, census_lines=True, x_class=None):
    """Count the points of X ∩ Q.

    The count is checked against the bound of the class of X, unless Q
    vanishes on all of X.

    Args:
        variety (hermcodes.forms.Form): Nonzero form of X.
        quadric (hermcodes.forms.QuadraticForm): Nonzero quadratic form of Q.
        space (hermcodes.proj_space.ProjectiveSpace): Ambient space.
        census_lines (bool): If True, list the lines of X ∩ Q.
        x_class (hermcodes.forms.VarietyClass): Class of X, computed if not
            given and the dimension is at most 4.

    Returns:
        IntersectionReport: The report.
    """
    space = space or ProjectiveSpace(variety.n, variety.field)
    x_points = variety_points(variety, space)
    points = x_points & variety_points(quadric, space)
    lines = space.lines_in_set(points) if census_lines else []

    order = None
    if variety.kind == "quadric":
        order = pair_order(variety, quadric)

    report = IntersectionReport(count=points.cardinality, lines=lines, order_w=order)
    if points.cardinality == x_points.cardinality:
        return report

    if x_class is None and variety.n == 4:
        x_class = classify(variety, space)

    name, value = applicable_bound(x_class, space.field.q)
    if name is not None:
        report.bound_checked = name
        report.bound_value = value
        report.attained = report.count == value
        report.within_bound = report.count <= value

    return report


@dataclass
class ScanResult:
    """Outcome of a scan of forms against a variety.

    Attributes:
        size (int): Number of points of X.
        degree (int): Degree of the scanned forms.
        q (int): Order of the field.
        mode (str): "exhaustive" or "sampled".
        forms_scanned (int): Number of forms evaluated.
        histogram (numpy.ndarray): Number of forms per count, for counts in
            [0, size].
        max_count (int): Largest count of a form not vanishing on all of X,
            None if there is none.
        argmax (numpy.ndarray): Coefficient vectors of forms reaching the
            largest count, capped.
        argmax_total (int): Number of forms reaching the largest count.
        kernel_forms (int): Number of forms vanishing on all of X.
        threshold (int): Count above which forms are kept, None if unused.
        above (numpy.ndarray): Coefficient vectors of forms not vanishing on
            all of X with a count above the threshold, capped.
        above_total (int): Number of such forms.
        seed (int): Seed of the sampled mode.
    """

    size: int
    degree: int
    q: int
    mode: str
    forms_scanned: int
    histogram: np.ndarray
    max_count: Optional[int]
    argmax: np.ndarray
    argmax_total: int
    kernel_forms: int
    threshold: Optional[int] = None
    above: Optional[np.ndarray] = None
    above_total: int = 0
    seed: int = 0

    def values(self):
        """Give the counts reached by forms not vanishing on all of X."""
        histogram = self.histogram.copy()
        histogram[self.size] -= self.kernel_forms
        return np.flatnonzero(histogram).tolist()

    def gap(self, low, high):
        """Give the counts reached strictly between two values."""
        return [value for value in self.values() if low < value < high]

    def rows(self):
        """Give the (count, multiplicity) rows of the histogram."""
        return [
            (int(count), int(self.histogram[count]))
            for count in np.flatnonzero(self.histogram)
        ]

    def as_dict(self):
        return {
            "size": self.size,
            "degree": self.degree,
            "q": self.q,
            "mode": self.mode,
            "seed": self.seed,
            "forms_scanned": self.forms_scanned,
            "max_count": self.max_count,
            "argmax_total": self.argmax_total,
            "kernel_forms": self.kernel_forms,
            "threshold": self.threshold,
            "above_total": self.above_total,
        }


@dataclass
class _ChunkResult:
    histogram: np.ndarray
    best: int
    argmax: np.ndarray
    argmax_total: int
    above: np.ndarray
    above_total: int
    kernel_forms: int


class _ScanChunks:
    """Evaluation of chunks of forms on the points of X."""

    def __init__(self, forms_space, monomials, mode, seed, cap, threshold):
        self.forms_space = forms_space
        self.field = forms_space.field
        self.monomials = monomials
        self.mode = mode
        self.seed = seed
        self.cap = cap
        self.threshold = threshold

    def coefficients(self, shard):
        if self.mode == "exhaustive":
            start, stop = shard
            return self.forms_space.points_slice(start, stop)

        index, size = shard
        generator = np.random.default_rng([self.seed, index])
        indices = generator.integers(0, len(self.forms_space), size=size)
        return self.forms_space.points_at(indices)

    def counts(self, coefficients):
        size, _ = self.monomials.shape
        block = max(1, SCAN_BLOCK // (size * self.field.e))
        counts = np.empty(coefficients.shape[0], dtype=np.int64)
        for start in range(0, coefficients.shape[0], block):
            digits = self.field.matmul_digits(
                coefficients[start : start + block], self.monomials.T
            )
            counts[start : start + block] = np.count_nonzero(
                ~digits.any(axis=2), axis=1
            )

        return counts

    def __call__(self, shard):
        coefficients = self.coefficients(shard)
        counts = self.counts(coefficients)
        size = self.monomials.shape[0]

        kernel = counts == size
        masked = np.where(kernel, -1, counts)
        best = int(masked.max()) if masked.size else -1
        attaining = np.flatnonzero(masked == best) if best >= 0 else np.empty(0, int)

        if self.threshold is None:
            above = np.empty(0, dtype=np.int64)

        else:
            above = np.flatnonzero(masked > self.threshold)

        return _ChunkResult(
            histogram=np.bincount(counts, minlength=size + 1),
            best=best,
            argmax=coefficients[attaining[: self.cap]],
            argmax_total=len(attaining),
            above=coefficients[above[: self.cap]],
            above_total=len(above),
            kernel_forms=int(np.count_nonzero(kernel)),
        )


def max_intersection_scan(
    variety,
    space=None,
    h=2,
    mode="exhaustive",
    samples=None,
    seed=0,
    threads=1,
    chunk_size=CHUNK_SIZE,
    argmax_cap=ARGMAX_CAP,
    threshold=None,
    bar=null_bar,
):
    """Scan forms of degree h against a variety.

    Forms are the points of the projective space of their coefficients, that
    is one per scalar class. They are evaluated on the points of X only.

    The result does not depend on the number of threads.

    Args:
        variety (hermcodes.forms.Form): Nonzero form of X.
        space (hermcodes.proj_space.ProjectiveSpace): Ambient space.
        h (int): Degree of the scanned forms.
        mode (str): "exhaustive" or "sampled".
        samples (int): Number of random forms of the sampled mode.
        seed (int): Seed of the sampled mode.
        threads (int): Number of threads, 0 for one per CPU.
        chunk_size (int): Number of forms per shard.
        argmax_cap (int): Number of attaining forms kept.
        threshold (int): If given, keep the forms with a larger count.
        bar (callable): Progress bar.

    Returns:
        ScanResult: The result.

    Raises:
        ScanCapError: If the exhaustive mode is above the cap.
        ScanModeError: If the mode is unknown or a sample size is missing.
    """
    space = space or ProjectiveSpace(variety.n, variety.field)
    field = space.field
    points = variety_points(variety, space)
    basis = MonomialBasis(variety.n, h)
    monomials = basis.evaluate(space.coords[points.indices], field)
    forms_space = ProjectiveSpace(len(basis) - 1, field)
    total = len(forms_space)

    if mode == "exhaustive":
        if total > SCAN_CAP:
            raise ScanCapError(
                "Exhaustive scan of ({0}^{1} - 1)/({0} - 1) = {2} forms is above "
                "the cap {3}, use the sampled mode".format(
                    field.q, len(basis), total, SCAN_CAP
                )
            )

        shards = [
            (start, min(start + chunk_size, total))
            for start in range(0, total, chunk_size)
        ]
        scanned = total
        text = "Scanning {} forms of degree {} against {} points".format(
            total, h, points.cardinality
        )

    elif mode == "sampled":
        if not samples or samples < 1:
            raise ScanModeError("The sampled mode needs a positive sample size")

        shards = [
            (index, min(chunk_size, samples - start))
            for index, start in enumerate(range(0, samples, chunk_size))
        ]
        scanned = samples
        text = "Sampling {} forms of degree {} against {} points".format(
            samples, h, points.cardinality
        )

    else:
        raise ScanModeError("Unknown scan mode '{}'".format(mode))

    chunks = _ScanChunks(forms_space, monomials, mode, seed, argmax_cap, threshold)
    results = run_shards(chunks, shards, threads=threads, bar=bar, text=text)

    best = max(result.best for result in results)
    winners = [result for result in results if result.best == best and best >= 0]
    empty = np.empty((0, len(basis)), dtype=np.int64)
    scan = ScanResult(
        size=points.cardinality,
        degree=h,
        q=field.q,
        mode=mode,
        seed=seed if mode == "sampled" else 0,
        forms_scanned=scanned,
        histogram=sum(result.histogram for result in results),
        max_count=best if best >= 0 else None,
        argmax=np.vstack([empty] + [result.argmax for result in winners])[:argmax_cap],
        argmax_total=sum(result.argmax_total for result in winners),
        kernel_forms=sum(result.kernel_forms for result in results),
        threshold=threshold,
        above=np.vstack([empty] + [result.above for result in results])[:argmax_cap],
        above_total=sum(result.above_total for result in results),
    )
    logger.info(
        "Scanned %i forms: largest count %s reached by %i forms",
        scanned,
        scan.max_count,
        scan.argmax_total,
    )
    return scan


@dataclass(frozen=True)
class BoundCheck:
    """Outcome of a bound checked on a scan.

    Attributes:
        name (str): Name of the bound.
        passed (bool): True if the scan agrees with the bound.
        detail (str): Values involved.
    """

    name: str
    passed: bool
    detail: str

    def as_dict(self):
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


def check_scan_bounds(scan, variety_class):
    """Check a quadric scan against the bounds of the class of X.

    Args:
        scan (ScanResult): Scan of the quadrics against X.
        variety_class (hermcodes.forms.VarietyClass): Class of X, in PG(4, q).

    Returns:
        list of BoundCheck: The checks that apply.
    """
    q = scan.q
    label = variety_class.label
    largest = scan.max_count if scan.max_count is not None else 0
    checks = []

    def check(name, passed, detail):
        checks.append(BoundCheck(name, bool(passed), detail))

    if label == "parabolic P₄":
        bound = parabolic_bound(q)
        check(
            "parabolic bound",
            largest <= bound,
            "max {} against 2q²+3q+1 = {}".format(largest, bound),
        )

    elif label in ("cone Π₁P₂", "cone Π₀H₃"):
        if label == "cone Π₁P₂":
            top, bound = rank3_values(q)
            name = "rank 3 cone"

        else:
            top, bound = rank4_g2_values(q)
            name = "rank 4 cone, g=2"

        # forms vanishing on all of X are left out of the maximum
        if top < scan.size:
            check(
                name + " maximum",
                largest == top,
                "max {} against {}".format(largest, top),
            )

        else:
            logger.info(
                "%s maximum %i covers the %i points of X, not checked",
                name,
                top,
                scan.size,
            )

        gap = scan.gap(bound, top)
        check(
            name + " gap",
            not gap,
            "counts strictly between {} and {}: {}".format(bound, top, gap),
        )

    elif label == "cone Π₀E₃":
        bound = rank4_g1_bound(q)
        check(
            "rank 4 cone, g=1 bound",
            largest <= bound,
            "max {} against 3q²+q+1 = {}".format(largest, bound),
        )

    elif label == "non-singular hermitian variety U₄":
        t = math.isqrt(q)
        values = hermitian_intersection_values(t)
        check(
            "hermitian bound",
            largest <= values[0],
            "max {} against 2t⁵+t³+2t²+1 = {}".format(largest, values[0]),
        )
        if scan.mode == "exhaustive":
            top = sorted(scan.values(), reverse=True)[:4]
            check(
                "hermitian four largest counts",
                top == values[:4],
                "counts {} against {}".format(top, values[:4]),
            )

    if variety_class.kind == "quadric" and label in (
        "cone Π₁P₂",
        "cone Π₀H₃",
        "cone Π₀E₃",
    ):
        bound = lachaud_quadric_bound(q)
        check(
            "earlier quadric bound",
            largest <= bound,
            "max {} against 4(q²+q+1) = {}".format(largest, bound),
        )

    return checks


@dataclass
class PairOrderReport:
    """Pair orders of the forms of a scan above the general bound.

    Attributes:
        bound (int): The general bound 3q²+q+1.
        checked (int): Number of forms checked.
        total (int): Number of forms above the bound in the scan.
        violations (list): Coefficient vectors of forms of pair order 5.
    """

    bound: int
    checked: int
    total: int
    violations: list

    @property
    def passed(self):
        return not self.violations

    @property
    def complete(self):
        return self.checked == self.total

    def as_dict(self):
        return {
            "bound": self.bound,
            "checked": self.checked,
            "total": self.total,
            "complete": self.complete,
            "passed": self.passed,
            "violations": [list(vector) for vector in self.violations],
        }


def leep_schueller_check(scan, variety):
    """Check that forms with a count above 3q²+q+1 have a pair order below 5.

    Args:
        scan (ScanResult): Quadric scan run with the threshold 3q²+q+1.
        variety (hermcodes.forms.QuadraticForm): Quadric X of PG(4, q).

    Returns:
        PairOrderReport: The report.

    Raises:
        IntersectParameterError: If the scan was run without this threshold.
    """
    bound = leep_schueller_bound(variety.n, scan.q)
    if scan.threshold != bound:
        raise IntersectParameterError(
            "The scan must keep the forms above {}, got threshold {}".format(
                bound, scan.threshold
            )
        )

    violations = []
    for vector in scan.above:
        form = QuadraticForm.from_vector(vector, variety.n, variety.field)
        if pair_order(variety, form) == variety.n + 1:
            violations.append(tuple(vector.tolist()))

    if violations:
        logger.warning(
            "Found %i forms of full pair order above %i", len(violations), bound
        )

    return PairOrderReport(
        bound=bound,
        checked=len(scan.above),
        total=scan.above_total,
        violations=violations,
    )


def same_section(first, second, hyperplane):
    """Tell if two forms have proportional sections by a hyperplane."""
    first_section = section_form(first, hyperplane)
    second_section = section_form(second, hyperplane)
    if first_section.is_zero() or second_section.is_zero():
        return first_section.is_zero() and second_section.is_zero()

    return first_section.is_proportional(second_section)


def equal_section_hyperplanes(first, second, flat, space):
    """Give the hyperplanes through a flat of codimension 2 where two quadrics agree.

    For two distinct nondegenerate quadrics, there are at most two of them.

    Returns:
        list of hermcodes.proj_space.Flat: The hyperplanes.
    """
    return [
        hyperplane
        for hyperplane in space.hyperplanes_through(flat)
        if same_section(first, second, hyperplane)
    ]


def tangent_hyperplanes_through(variety, flat, space):
    """Give the hyperplanes through a flat of codimension 2 tangent to a variety.

    When the flat is the plane of two secant lines of a nondegenerate quadric
    of PG(4, q), there is exactly one of them.
    """
    return [
        hyperplane
        for hyperplane in space.hyperplanes_through(flat)
        if is_tangent(hyperplane, variety)
    ]


def common_planes(point_set, space):
    """Give the planes contained in a set of points.

    Args:
        point_set (hermcodes.proj_space.PointSet): Set of points.
        space (hermcodes.proj_space.ProjectiveSpace): Ambient space.

    Returns:
        list of hermcodes.proj_space.Flat: The planes, sorted by basis.
    """
    planes = {}
    for line in space.lines_in_set(point_set):
        covered = line.points(space).mask.copy()
        for point in point_set.indices:
            if covered[point]:
                continue

            plane = line.join(Flat(space.coords[point], space.field))
            plane_points = plane.points(space)
            covered |= plane_points.mask
            if plane_points.issubset(point_set):
                planes.setdefault(plane.basis.tobytes(), plane)

    return sorted(planes.values(), key=lambda plane: plane.basis.ravel().tolist())


# caps on the points of two quadrics of PG(3, q) sharing a number of lines
QUADRIC_PAIR_CAPS = {
    frozenset(["hyperbolic", "cone"]): lambda q: {2: 3 * q, 1: 2 * q + 1},
    frozenset(["cone"]): lambda q: {4: 4 * q + 1, 2: 3 * q, 1: 2 * q + 1},
    frozenset(["hyperbolic"]): lambda q: {4: 4 * q, 2: 3 * q + 1, 1: 2 * (q + 1)},
}

# caps on the points of U₃ and a quadric of PG(3, t^2) sharing lines
HERMITIAN_QUADRIC_CAPS = {
    "cone": lambda t: {2: t**3 + 2 * t**2 - t + 1, 1: t**3 + t**2 + 1},
    "hyperbolic": lambda t: {
        3: 2 * t**3 + t**2 + 1,
        2: t**3 + 3 * t**2 - t + 1,
        1: t**3 + 2 * t**2 + 1,
    },
}

PG3_TYPES = ("hyperbolic", "cone")


@dataclass
class PairCensus:
    """Census of the intersections of a fixed variety with quadrics of PG(3, q).

    Attributes:
        variety (str): Label of the fixed variety.
        other_type (str): Type of the scanned quadrics.
        q (int): Order of the field.
        quadrics (int): Number of quadrics of that type, other than the fixed
            one.
        counts (collections.Counter): Number of quadrics per (lines, points).
        caps (dict): Cap on the points per number of lines.
        open_top (bool): If True, the largest capped number of lines also caps
            every larger number.
        violations (list): (lines, points, coefficients) over their cap.
    """

    variety: str
    other_type: str
    q: int
    quadrics: int = 0
    counts: Counter = dataclass_field(default_factory=Counter)
    caps: dict = dataclass_field(default_factory=dict)
    open_top: bool = False
    violations: list = dataclass_field(default_factory=list)

    @property
    def passed(self):
        return not self.violations

    def cap_for(self, lines):
        """Give the cap on the points for a number of lines, None if uncapped."""
        top = max(self.caps)
        if self.open_top and lines > top:
            return self.caps[top]

        return self.caps.get(lines)

    def uncapped(self):
        """Give the observed (lines, points) with no cap for their lines."""
        return sorted(
            key for key in self.counts if key[0] and self.cap_for(key[0]) is None
        )

    def rows(self):
        return [
            (lines, points, self.counts[lines, points])
            for lines, points in sorted(self.counts)
        ]

    def as_dict(self):
        return {
            "variety": self.variety,
            "other_type": self.other_type,
            "q": self.q,
            "quadrics": self.quadrics,
            "caps": {str(lines): cap for lines, cap in sorted(self.caps.items())},
            "open_top": self.open_top,
            "uncapped": [list(key) for key in self.uncapped()],
            "passed": self.passed,
            "violations": [
                [lines, points, list(vector)]
                for lines, points, vector in self.violations
            ],
        }


def _pg3_type(other_type, sizes, lines, q):
    if other_type == "hyperbolic":
        return sizes == (q + 1) ** 2

    return (sizes == q**2 + q + 1) & (lines == q + 1)


def _pg3_class_type(variety_class):
    if variety_class.label == "hyperbolic quadric H₃":
        return "hyperbolic"

    if variety_class.label == "quadric cone Π₀P₂":
        return "cone"

    return None


@dataclass
class _CensusChunk:
    coefficients: np.ndarray
    points: np.ndarray
    contained: np.ndarray


def _pg3_census_chunks(x_mask, other_type, space, chunk_size):
    """Give the quadrics of a type meeting a fixed set, chunk after chunk."""
    field = space.field
    q = field.q
    forms = quadric_vectors(3, field)
    monomials = MonomialBasis(3, 2).evaluate(space.coords, field)
    for start in range(0, len(forms), chunk_size):
        coefficients = forms.points_slice(start, min(start + chunk_size, len(forms)))
        masks = ~field.matmul_digits(coefficients, monomials.T).any(axis=2)
        selected = _pg3_type(other_type, masks.sum(axis=1), space.count_lines(masks), q)
        selected &= ~(masks == x_mask).all(axis=1)
        common = masks[selected] & x_mask
        yield _CensusChunk(
            coefficients=coefficients[selected],
            points=common.sum(axis=1),
            contained=common[:, space.line_table].all(axis=2),
        )


def _check_space(variety, space):
    if variety.n != 3:
        raise FormShapeError("Censuses are run in PG(3, q), got n={}".format(variety.n))

    return space or ProjectiveSpace(3, variety.field)


def _check_type(other_type):
    if other_type not in PG3_TYPES:
        raise IntersectParameterError(
            "Unknown quadric type '{}', expected one of {}".format(
                other_type, ", ".join(PG3_TYPES)
            )
        )


def quadric_pair_census(variety, other_type, space=None, chunk_size=4096):
    """Count points and lines of a quadric of PG(3, q) against every quadric of a type.

    Args:
        variety (hermcodes.forms.QuadraticForm): Hyperbolic quadric or quadric
            cone of PG(3, q).
        other_type (str): "hyperbolic" or "cone".
        space (hermcodes.proj_space.ProjectiveSpace): The space PG(3, q).
        chunk_size (int): Number of forms evaluated at once.

    Returns:
        PairCensus: The census.
    """
    space = _check_space(variety, space)
    _check_type(other_type)
    variety_class = classify(variety, space)
    x_type = _pg3_class_type(variety_class)
    if x_type is None:
        raise IntersectParameterError(
            "Expected a hyperbolic quadric or a cone, got '{}'".format(
                variety_class.label
            )
        )

    q = space.field.q
    census = PairCensus(
        variety=variety_class.label,
        other_type=other_type,
        q=q,
        caps=QUADRIC_PAIR_CAPS[frozenset([x_type, other_type])](q),
    )
    x_mask = variety_points(variety, space).mask
    for chunk in _pg3_census_chunks(x_mask, other_type, space, chunk_size):
        lines = chunk.contained.sum(axis=1)
        _record(census, chunk, lines)

    logger.info(
        "Census of %s against %i %s quadrics: %i violations",
        census.variety,
        census.quadrics,
        other_type,
        len(census.violations),
    )
    return census


def _regulus_count(contained, meets):
    """Give the largest number of pairwise skew lines among contained lines."""
    lines = np.flatnonzero(contained)
    if lines.size < 2:
        return lines.size

    first = lines[0]
    skew = np.count_nonzero(~meets[first, lines[1:]]) + 1
    return max(skew, lines.size - skew)


def hermitian_quadric_census(variety, other_type, space=None, chunk_size=4096):
    """Count points and lines of U₃ against every quadric of a type.

    For hyperbolic quadrics, lines are counted in one regulus: the largest
    set of pairwise skew contained lines.

    Args:
        variety (hermcodes.forms.HermitianForm): Non-singular hermitian
            surface of PG(3, t^2).
        other_type (str): "hyperbolic" or "cone".
        space (hermcodes.proj_space.ProjectiveSpace): The space PG(3, t^2).
        chunk_size (int): Number of forms evaluated at once.

    Returns:
        PairCensus: The census.
    """
    space = _check_space(variety, space)
    _check_type(other_type)
    variety_class = classify(variety, space)
    if variety_class.label != "non-singular hermitian surface U₃":
        raise IntersectParameterError(
            "Expected the non-singular hermitian surface, got '{}'".format(
                variety_class.label
            )
        )

    t = space.field.t
    census = PairCensus(
        variety=variety_class.label,
        other_type=other_type,
        q=space.field.q,
        caps=HERMITIAN_QUADRIC_CAPS[other_type](t),
        open_top=other_type == "hyperbolic",
    )

    incidence = np.zeros((len(space.line_table), len(space)), dtype=np.int64)
    np.put_along_axis(incidence, space.line_table, 1, axis=1)
    meets = (incidence @ incidence.T) > 0

    x_mask = variety_points(variety, space).mask
    for chunk in _pg3_census_chunks(x_mask, other_type, space, chunk_size):
        if other_type == "hyperbolic":
            lines = np.array(
                [_regulus_count(row, meets) for row in chunk.contained],
                dtype=np.int64,
            )

        else:
            lines = chunk.contained.sum(axis=1)

        _record(census, chunk, lines)

    logger.info(
        "Census of %s against %i %s quadrics: %i violations",
        census.variety,
        census.quadrics,
        other_type,
        len(census.violations),
    )
    return census


def _record(census, chunk, lines):
    census.quadrics += len(lines)
    census.counts.update(zip(lines.tolist(), chunk.points.tolist()))
    for row, (count, points) in enumerate(zip(lines.tolist(), chunk.points.tolist())):
        cap = census.cap_for(count)
        if cap is not None and points > cap:
            census.violations.append(
                (count, points, tuple(chunk.coefficients[row].tolist()))
            )


class IntersectError(HermcodesError):
    """Generic error raised by intersection counts."""


class IntersectParameterError(IntersectError, ValueError):
    """Invalid parameters for an intersection operation."""


class ScanCapError(IntersectError):
    """Exhaustive scan above the cap."""


class ScanModeError(IntersectError, ValueError):
    """Invalid scan mode."""
