"""Geometry of low weight codewords.

A codeword of C_2(X) is the evaluation of a quadratic form f on the points
of X, and its weight is |X| - |X ∩ Z(f)|. This module maps codewords back to
quadrics and checks the configurations claimed for the smallest weights.

`classify_config` describes a quadric Q relative to X: the structure of Q
from its class and, when Q is a pair of hyperplanes, the two hyperplanes
recovered by factoring, their tangency to X and the section of X by the
plane they share.

>>> from hermcodes.gf_arith import make_field
>>> from hermcodes.presets import make_preset
>>> field = make_field(2, 2)
>>> x = make_preset("hermitian4", field)
>>> q = QuadraticForm.from_linear_product([1, 0, 0, 0, 0], [0, 1, 0, 0, 0], field)
>>> config = classify_config(q, x)
>>> config.structure, config.tangent, config.plane_section.cardinality
('pair_of_hyperplanes', (False, False), 9)

`verify_weight_theorems` runs the configuration predicates on the
representatives of a weight spectrum. Forms giving the same codeword differ
by a form vanishing on X, so a representative passes when one form of its
coset passes.

`construct_pair_configurations` builds the pairs of hyperplanes of the
hermitian configurations directly, and the two conjecture campaigns
confront the maximum number of points of X ∩ Z(f) and the weights of pairs
of hyperplanes with exhaustive computations.
"""

import logging
import math
from dataclasses import dataclass, field as dataclass_field
from typing import Dict, List, Optional

import numpy as np

from hermcodes.codes import (
    BoundHypothesisError,
    MonomialBasis,
    expected_parameters,
    hermitian_code_weights,
)
from hermcodes.exceptions import HermcodesError
from hermcodes.forms import (
    QuadraticForm,
    algebraic_rank,
    classify,
    complement_basis,
    degenerate_hermitian_count,
    is_tangent,
    phi,
    section_class,
    variety_points,
    vertex,
)
from hermcodes.intersect import (
    BoundCheck,
    common_planes,
    hermitian_section_counts,
    intersection_count,
    max_intersection_scan,
    tangent_hyperplanes_through,
)
from hermcodes.progress_bar import null_bar
from hermcodes.proj_space import Flat, ProjectiveSpace
from hermcodes.safe_workers import run_shards
from hermcodes.utils import truncate_message

PASS = "pass"
FAIL = "fail"
REPORT = "report"

# number of attaining forms of a scan whose configuration is classified
ATTAINING_CHECKED = 64

# rows of the incidence matrix hyperplanes times points multiplied at once
PAIR_CHUNK = 256

logger = logging.getLogger(__name__)


@dataclass
class QuadricConfig:
    """Configuration of a quadric Q relative to a variety X.

    Attributes:
        structure (str): One of "pair_of_hyperplanes", "rank3_pencil",
            "rank4_cone", "nondegenerate", "repeated_hyperplane" or "other".
        quadric_class (hermcodes.forms.VarietyClass): Class of Q.
        hyperplanes (tuple): Canonical equations of the two hyperplanes of a
            pair, in canonical order.
        tangent (tuple): Tangency of each hyperplane to X, None if X is
            degenerate.
        section_labels (tuple): Labels of the sections of X by each
            hyperplane.
        plane_section (hermcodes.forms.VarietyClass): Class of the section of
            X by the flat shared by the hyperplanes.
        lines_with_x (int): Number of lines of X ∩ Q, None if not counted.
        round_trip (bool): True if the product of the recovered hyperplanes
            is proportional to Q.
    """

    structure: str
    quadric_class: object
    hyperplanes: Optional[tuple] = None
    tangent: Optional[tuple] = None
    section_labels: Optional[tuple] = None
    plane_section: Optional[object] = None
    lines_with_x: Optional[int] = None
    round_trip: Optional[bool] = None

    @property
    def is_pair(self):
        return self.structure == "pair_of_hyperplanes"

    def as_dict(self):
        return {
            "structure": self.structure,
            "quadric_class": self.quadric_class.label,
            "hyperplanes": (
                [list(equation) for equation in self.hyperplanes]
                if self.hyperplanes is not None
                else None
            ),
            "tangent": list(self.tangent) if self.tangent is not None else None,
            "section_labels": (
                list(self.section_labels) if self.section_labels is not None else None
            ),
            "plane_section": (
                self.plane_section.label if self.plane_section is not None else None
            ),
            "lines_with_x": self.lines_with_x,
            "round_trip": self.round_trip,
        }


def quadric_structure(quadric_class):
    """Give the structure name of a quadric from its class."""
    if quadric_class.rank == 1:
        return "repeated_hyperplane"

    if quadric_class.rank == 2 and quadric_class.type_tag == "hyperbolic":
        return "pair_of_hyperplanes"

    if not quadric_class.degenerate:
        return "nondegenerate"

    if quadric_class.n == 4 and quadric_class.rank == 3:
        return "rank3_pencil"

    if quadric_class.n == 4 and quadric_class.rank == 4:
        return "rank4_cone"

    return "other"


def split_hyperplanes(quadric, space=None):
    """Factor a quadric made of two distinct hyperplanes.

    The form restricted to a complement of the vertex is a binary form with
    two projective roots. Each root spans with the vertex one hyperplane.

    Args:
        quadric (hermcodes.forms.QuadraticForm): Form of a pair of
            hyperplanes.
        space (hermcodes.proj_space.ProjectiveSpace): Ambient space.

    Returns:
        list of numpy.ndarray: Canonical equations of the two hyperplanes, in
        canonical order.

    Raises:
        NotAPairError: If the quadric is not a pair of distinct hyperplanes.
    """
    space = space or ProjectiveSpace(quadric.n, quadric.field)
    field = quadric.field
    vertex_flat = vertex(quadric, space)
    if vertex_flat.dim != quadric.n - 2:
        raise NotAPairError(
            "Quadric {} has a vertex of dimension {}".format(quadric, vertex_flat.dim)
        )

    complement = complement_basis(vertex_flat, quadric.n, field)
    binary = quadric.restrict(complement)
    line = ProjectiveSpace(1, field)
    roots = line.coords[binary.evaluate(line.coords) == 0]
    if len(roots) != 2:
        raise NotAPairError(
            "Quadric {} has {} roots off its vertex".format(quadric, len(roots))
        )

    equations = []
    for root in roots:
        point = field.matmul(root[None, :], complement)
        hyperplane = vertex_flat.join(Flat(point, field))
        canonical, _ = space.normalize(hyperplane.equations)
        equations.append(canonical[0])

    return sorted(equations, key=lambda equation: equation.tolist())


def classify_config(quadric, variety, space=None, census_lines=False, x_class=None):
    """Describe a quadric relative to a variety.

    Args:
        quadric (hermcodes.forms.QuadraticForm): Nonzero quadratic form of Q.
        variety (hermcodes.forms.Form): Nonzero form of X.
        space (hermcodes.proj_space.ProjectiveSpace): Ambient space.
        census_lines (bool): If True, count the lines of X ∩ Q.
        x_class (hermcodes.forms.VarietyClass): Class of X, used to tell if
            tangency applies. Computed from the rank of X if not given.

    Returns:
        QuadricConfig: The configuration.
    """
    space = space or ProjectiveSpace(variety.n, variety.field)
    quadric_class = classify(quadric, space)
    config = QuadricConfig(quadric_structure(quadric_class), quadric_class)

    if census_lines:
        points = variety_points(variety, space) & variety_points(quadric, space)
        config.lines_with_x = len(space.lines_in_set(points))

    if not config.is_pair:
        return config

    first, second = split_hyperplanes(quadric, space)
    config.hyperplanes = (tuple(first.tolist()), tuple(second.tolist()))
    config.round_trip = QuadraticForm.from_linear_product(
        first, second, space.field
    ).is_proportional(quadric)

    hyperplanes = [space.hyperplane(first), space.hyperplane(second)]
    if x_class is not None:
        nondegenerate = not x_class.degenerate

    else:
        nondegenerate = algebraic_rank(variety) == variety.n + 1

    if nondegenerate:
        config.tangent = tuple(is_tangent(plane, variety) for plane in hyperplanes)

    config.section_labels = tuple(
        section_class(variety, plane).label for plane in hyperplanes
    )
    config.plane_section = section_class(variety, hyperplanes[0].meet(hyperplanes[1]))
    return config


@dataclass
class ConfigContext:
    """Variety a configuration predicate is evaluated against."""

    variety: object
    space: ProjectiveSpace
    x_points: object
    x_class: object


def _hermitian_predicate(allowed):
    """Create a predicate on the tangency and the plane section rank of a pair.

    Args:
        allowed (set): Pairs of sorted tangency flags and plane section rank.
    """

    def predicate(config, context):
        if not config.is_pair or config.tangent is None:
            return FAIL

        key = (tuple(sorted(config.tangent)), config.plane_section.rank)
        return PASS if key in allowed else FAIL

    return predicate


def _pencil_planes(quadric, space):
    """Give the planes of a rank 3 quadric of PG(4, q) through its vertex line."""
    q_points = variety_points(quadric, space)
    return [
        plane
        for plane in space.planes_through_line(vertex(quadric, space))
        if plane.points(space).issubset(q_points)
    ]


def _secant_line_detail(quadric, context):
    """Give the line census of X ∩ Q and the tangent hyperplanes of two lines."""
    space = context.space
    lines = space.lines_in_set(context.x_points & variety_points(quadric, space))
    detail = {"lines": len(lines)}
    for position, first in enumerate(lines):
        for second in lines[position + 1 :]:
            if first.meet(second).dim < 0:
                continue

            plane = first.join(second)
            detail["tangent_hyperplanes"] = len(
                tangent_hyperplanes_through(context.variety, plane, space)
            )
            return detail

    return detail


def _parabolic_predicate(config, context, quadric):
    if config.is_pair:
        conic = config.plane_section.label == "conic P₂"
        return PASS if config.tangent == (False, False) and conic else FAIL

    if config.quadric_class.label == "cone Π₁P₂":
        planes = _pencil_planes(quadric, context.space)
        lines = [
            len(
                context.space.lines_in_set(
                    plane.points(context.space) & context.x_points
                )
            )
            for plane in planes
        ]
        if len(planes) == context.space.field.q + 1 and all(
            count == 2 for count in lines
        ):
            return PASS

        return FAIL

    if config.structure == "nondegenerate":
        return REPORT

    return FAIL


def _cone_predicate(plane_label, cone_label):
    """Create the predicate of a degenerate X of PG(4, q).

    The quadric is either a pair of hyperplanes cutting pairs of planes on X
    whose shared plane meets X in the given section, or a cone of the given
    class sharing four planes with X.
    """

    def predicate(config, context, quadric):
        if config.is_pair:
            sections = config.section_labels == ("pair of planes Π₁H₁",) * 2
            if sections and config.plane_section.label == plane_label:
                return PASS

            return FAIL

        if config.quadric_class.label == cone_label:
            shared = context.x_points & variety_points(quadric, context.space)
            if len(common_planes(shared, context.space)) == 4:
                return PASS

        return FAIL

    return predicate


def _with_quadric(predicate):
    return lambda config, context, quadric: predicate(config, context)


@dataclass(frozen=True)
class WeightTheorem:
    """Configuration claimed for the codewords of a weight.

    Attributes:
        name (str): Name of the claim.
        weight (int): Weight, None for the minimum distance of the spectrum.
        predicate (callable): Function of a `QuadricConfig`, a
            `ConfigContext` and the quadric, giving PASS, FAIL or REPORT.
        report_only (bool): True if the claim does not apply and outcomes are
            only recorded.
    """

    name: str
    weight: Optional[int]
    predicate: object
    report_only: bool = False


def weight_theorems(x_class, q):
    """Give the configuration claims for a class of X of PG(4, q).

    Args:
        x_class (hermcodes.forms.VarietyClass): Class of X.
        q (int): Order of the field.

    Returns:
        list of WeightTheorem: The claims, empty if none is known.
    """
    label = x_class.label
    if label == "non-singular hermitian variety U₄":
        t = math.isqrt(q)
        weights = hermitian_code_weights(t)
        allowed = [
            {((False, False), 3)},
            {((False, False), 2)},
            {((False, True), 3)},
            {((False, True), 2), ((True, True), 1)},
            {((True, True), 3)},
        ]
        names = [
            "minimum weight",
            "second weight",
            "third weight",
            "fourth weight",
            "fifth weight",
        ]
        return [
            WeightTheorem(
                name,
                weight,
                _with_quadric(_hermitian_predicate(keys)),
                report_only=name == "fifth weight" and t <= 3,
            )
            for name, weight, keys in zip(names, weights, allowed)
        ]

    if label == "parabolic P₄":
        return [WeightTheorem("minimum weight", None, _parabolic_predicate)]

    if label == "cone Π₁P₂":
        return [
            WeightTheorem(
                "minimum weight",
                None,
                _cone_predicate("repeated line Π₁P₀", "cone Π₁P₂"),
            )
        ]

    if label == "cone Π₀H₃":
        return [
            WeightTheorem(
                "minimum weight",
                None,
                _cone_predicate("pair of lines Π₀H₁", "cone Π₀H₃"),
            )
        ]

    return []


@dataclass
class TheoremCheck:
    """Outcome of a configuration claim on the representatives of a weight.

    Attributes:
        name (str): Name of the claim.
        weight (int): Weight checked.
        checked (int): Number of representatives.
        passed (int): Number of representatives passing.
        reported (list of dict): Representatives only recorded.
        failures (list of dict): Witnesses of the failures.
        report_only (bool): True if outcomes are only recorded.
    """

    name: str
    weight: int
    checked: int = 0
    passed: int = 0
    reported: List[dict] = dataclass_field(default_factory=list)
    failures: List[dict] = dataclass_field(default_factory=list)
    report_only: bool = False

    @property
    def status(self):
        if self.checked == 0:
            return "ABSENT"

        if self.report_only:
            return "REPORTED"

        if self.failures:
            return "FAILED"

        if self.passed == 0:
            return "REPORTED"

        return "PASSED"

    def as_dict(self):
        return {
            "name": self.name,
            "weight": self.weight,
            "status": self.status,
            "checked": self.checked,
            "passed": self.passed,
            "report_only": self.report_only,
            "reported": self.reported,
            "failures": self.failures,
        }


@dataclass
class WeightTheoremReport:
    """Verification of the weights of a code against the known results.

    Attributes:
        label (str): Class of X.
        q (int): Order of the field.
        complete (bool): True if the spectrum is exhaustive.
        parameters (hermcodes.codes.CodeParameters): Known parameters, None
            if unknown.
        observed (dict): Observed length, dimension and minimum distance.
        mismatches (list of str): Differences with the known parameters.
        first_weights (list of int): Five smallest observed weights.
        checks (list of hermcodes.intersect.BoundCheck): Checks on the
            weights themselves.
        theorems (list of TheoremCheck): Configuration claims.
    """

    label: str
    q: int
    complete: bool
    parameters: Optional[object]
    observed: Dict[str, int]
    mismatches: List[str]
    first_weights: List[int]
    checks: List[BoundCheck] = dataclass_field(default_factory=list)
    theorems: List[TheoremCheck] = dataclass_field(default_factory=list)

    @property
    def status(self):
        """str: "FAILED" if a claim that applies does not hold, "PASSED" else."""
        if self.mismatches and not (self.parameters and self.parameters.degenerate):
            return "FAILED"

        if not all(check.passed for check in self.checks):
            return "FAILED"

        for theorem in self.theorems:
            if theorem.status == "FAILED":
                return "FAILED"

            if theorem.status == "ABSENT" and self.complete and not theorem.report_only:
                return "FAILED"

        return "PASSED"

    def as_dict(self):
        return {
            "label": self.label,
            "q": self.q,
            "status": self.status,
            "complete": self.complete,
            "parameters": self.parameters.as_dict() if self.parameters else None,
            "observed": self.observed,
            "mismatches": self.mismatches,
            "first_weights": self.first_weights,
            "checks": [check.as_dict() for check in self.checks],
            "theorems": [theorem.as_dict() for theorem in self.theorems],
        }


class _TheoremShard:
    """Check the representatives of one weight against one claim."""

    def __init__(self, code, context, representatives):
        self.code = code
        self.context = context
        self.representatives = representatives

    def __call__(self, shard):
        theorem, weight = shard
        code = self.code
        context = self.context
        check = TheoremCheck(theorem.name, weight, report_only=theorem.report_only)
        for message in self.representatives.get(weight, []):
            check.checked += 1
            form = code.message_form(message)
            count = intersection_count(
                context.variety,
                form,
                context.space,
                census_lines=False,
                x_class=context.x_class,
            ).count
            witness = {"message": list(message), "form": truncate_message(repr(form))}
            if code.length - count != weight:
                witness["reason"] = "weight {} instead of {}".format(
                    code.length - count, weight
                )
                check.failures.append(witness)
                continue

            outcome, config, member = self._best_outcome(
                theorem, code.coset_forms(message)
            )
            witness["config"] = config.as_dict()
            if outcome == PASS:
                check.passed += 1

            elif outcome == REPORT:
                witness.update(_secant_line_detail(member, context))
                check.reported.append(witness)

            else:
                witness["reason"] = "configuration"
                check.failures.append(witness)

        return check

    def _best_outcome(self, theorem, forms):
        """Give the best outcome over the forms of a coset.

        Returns:
            tuple: Outcome, configuration and form giving it.
        """
        context = self.context
        best = None
        for form in forms:
            config = classify_config(
                form, context.variety, context.space, x_class=context.x_class
            )
            outcome = theorem.predicate(config, context, form)
            if outcome == PASS:
                return outcome, config, form

            if best is None or (outcome == REPORT and best[0] == FAIL):
                best = (outcome, config, form)

        return best


def verify_weight_theorems(code, spectrum, threads=1, bar=null_bar):
    """Check a weight spectrum against the known results on its code.

    The observed parameters are compared with the known ones. For X
    hermitian, the first four observed weights must be the first four weights
    of the formulas. The representatives of each claimed weight are then
    classified, each one after checking its weight by a direct count.

    Args:
        code (hermcodes.codes.FunctionalCode): Code of degree 2 of X in
            PG(4, q).
        spectrum (hermcodes.codes.WeightSpectrum): Spectrum of the code, with
            representatives.
        threads (int): Number of threads, 0 for one per CPU.
        bar (callable): Progress bar.

    Returns:
        WeightTheoremReport: The report.
    """
    space = code.space
    q = code.q
    x_class = classify(code.variety, space)
    context = ConfigContext(
        code.variety, space, variety_points(code.variety, space), x_class
    )
    parameters = expected_parameters(x_class, q, code.h)
    observed = {
        "length": code.length,
        "dimension": code.dimension,
        "distance": spectrum.min_distance,
    }
    mismatches = []
    if parameters is not None:
        mismatches = parameters.mismatches(
            code.length, code.dimension, spectrum.min_distance
        )

    for mismatch in mismatches:
        logger.warning("Code of %s: %s", x_class.label, mismatch)

    report = WeightTheoremReport(
        label=x_class.label,
        q=q,
        complete=spectrum.is_complete(),
        parameters=parameters,
        observed=observed,
        mismatches=mismatches,
        first_weights=spectrum.first_weights(5),
    )

    if x_class.label == "non-singular hermitian variety U₄" and report.complete:
        expected = hermitian_code_weights(math.isqrt(q))[:4]
        report.checks.append(
            BoundCheck(
                "first four weights",
                spectrum.first_weights(4) == expected,
                "observed {}, formulas {}".format(spectrum.first_weights(4), expected),
            )
        )

    shards = [
        (theorem, spectrum.min_distance if theorem.weight is None else theorem.weight)
        for theorem in weight_theorems(x_class, q)
    ]
    if shards:
        report.theorems = run_shards(
            _TheoremShard(code, context, spectrum.representatives),
            shards,
            threads=threads,
            bar=bar,
            text="Classifying representatives",
        )

    for theorem in report.theorems:
        logger.info(
            "%s (weight %i): %s, %i of %i passed",
            theorem.name,
            theorem.weight,
            theorem.status,
            theorem.passed,
            theorem.checked,
        )

    return report


# hermitian pair configurations: name, weight index, tangency of the two
# hyperplanes and rank of the plane section
PAIR_CONFIGURATIONS = [
    ("minimum weight", 0, (False, False), 3),
    ("second weight", 1, (False, False), 2),
    ("third weight", 2, (False, True), 3),
    ("fourth weight, tangent plane", 3, (False, True), 2),
    ("fourth weight, single line", 3, (True, True), 1),
    ("fifth weight", 4, (True, True), 3),
]


@dataclass
class ConstructedPair:
    """Pair of hyperplanes built for a hermitian configuration.

    Attributes:
        name (str): Name of the configuration.
        expected_weight (int): Weight given by the formulas.
        found (bool): True if a pair with the configuration exists.
        hyperplanes (tuple): Canonical equations of the hyperplanes.
        weight (int): Weight of the codeword of their product.
        config (QuadricConfig): Configuration of their product.
        config_matches (bool): True if the classified configuration is the
            one the pair was built for.
    """

    name: str
    expected_weight: int
    found: bool = False
    hyperplanes: Optional[tuple] = None
    weight: Optional[int] = None
    config: Optional[QuadricConfig] = None
    config_matches: bool = False

    @property
    def passed(self):
        return (
            self.found and self.config_matches and self.weight == self.expected_weight
        )

    def as_dict(self):
        return {
            "name": self.name,
            "expected_weight": self.expected_weight,
            "found": self.found,
            "passed": self.passed,
            "config_matches": self.config_matches,
            "hyperplanes": (
                [list(equation) for equation in self.hyperplanes]
                if self.hyperplanes is not None
                else None
            ),
            "weight": self.weight,
            "config": self.config.as_dict() if self.config is not None else None,
        }


def construct_pair_configurations(variety, space=None):
    """Build a pair of hyperplanes for every hermitian configuration.

    The first hyperplane is the first tangent or non-tangent hyperplane in
    canonical order, the second one is the first hyperplane whose section
    and plane section have the sizes of the configuration. The weight of the
    product is then counted directly.

    Args:
        variety (hermcodes.forms.HermitianForm): Non-singular hermitian form
            of PG(4, t^2).
        space (hermcodes.proj_space.ProjectiveSpace): Ambient space.

    Returns:
        list of ConstructedPair: One per configuration.
    """
    space = space or ProjectiveSpace(variety.n, variety.field)
    field = space.field
    t = field.t
    x_class = classify(variety, space)
    if x_class.label != "non-singular hermitian variety U₄":
        raise ConfigurationError(
            "Pair constructions need a non-singular hermitian variety of PG(4, t^2)"
        )

    x_points = variety_points(variety, space)
    masks = space.hyperplane_masks[:, x_points.indices]
    sections = masks.sum(axis=1)
    non_tangent, tangent = hermitian_section_counts(t)
    plane_counts = {3: phi(2, t), 2: degenerate_hermitian_count(2, 2, t), 1: t**2 + 1}
    weights = hermitian_code_weights(t)
    equations = space.dual_hyperplanes()
    context = ConfigContext(variety, space, x_points, x_class)

    constructed = []
    for name, index, flags, plane_rank in PAIR_CONFIGURATIONS:
        pair = ConstructedPair(name, weights[index])
        constructed.append(pair)
        first = int(np.argmax(sections == (tangent if flags[0] else non_tangent)))
        wanted = (sections == (tangent if flags[1] else non_tangent)) & (
            masks[:, masks[first]].sum(axis=1) == plane_counts[plane_rank]
        )
        wanted[first] = False
        if not wanted.any():
            logger.warning("No pair of hyperplanes for the %s configuration", name)
            continue

        second = int(np.argmax(wanted))
        quadric = QuadraticForm.from_linear_product(
            equations[first], equations[second], field
        )
        count = intersection_count(
            variety, quadric, space, census_lines=False, x_class=x_class
        ).count
        pair.found = True
        pair.hyperplanes = (
            tuple(equations[first].tolist()),
            tuple(equations[second].tolist()),
        )
        pair.weight = x_points.cardinality - count
        pair.config = classify_config(quadric, variety, space, x_class=x_class)

        predicate = _hermitian_predicate({(tuple(sorted(flags)), plane_rank)})
        pair.config_matches = predicate(pair.config, context) == PASS
        if not pair.config_matches:
            logger.warning(
                "Pair built for the %s configuration classifies as %s",
                name,
                pair.config.as_dict(),
            )

        logger.info(
            "%s: weight %i, formula %i", name, pair.weight, pair.expected_weight
        )

    return constructed


@dataclass
class ConjectureReport:
    """Evidence gathered on a conjecture.

    Attributes:
        name (str): Name of the conjecture.
        parameters (dict): Parameters of the campaign.
        checks (list of hermcodes.intersect.BoundCheck): Predicates checked.
        evidence (dict): Values observed.
    """

    name: str
    parameters: Dict[str, object]
    checks: List[BoundCheck] = dataclass_field(default_factory=list)
    evidence: Dict[str, object] = dataclass_field(default_factory=dict)

    @property
    def status(self):
        """str: "CONSISTENT" if every predicate holds, "VIOLATED" else."""
        if all(check.passed for check in self.checks):
            return "CONSISTENT"

        return "VIOLATED"

    def check(self, name):
        """Give a check by name."""
        return next(check for check in self.checks if check.name == name)

    def as_dict(self):
        return {
            "name": self.name,
            "status": self.status,
            "parameters": self.parameters,
            "checks": [check.as_dict() for check in self.checks],
            "evidence": self.evidence,
        }


def conjecture_one_bound(h, t):
    """Give the conjectured bound h(t^5 + t^2) + t^3 + 1 on |X ∩ Z(f)|."""
    return h * (t**5 + t**2) + t**3 + 1


def conjecture_one(
    variety,
    degrees=(1, 2),
    space=None,
    threads=1,
    chunk_size=None,
    argmax_cap=None,
    bar=null_bar,
):
    """Confront the maximum of |X ∩ Z(f)| with the conjectured bound.

    For each degree h, every form of degree h up to a scalar is evaluated on
    X non-singular of PG(4, t^2). The largest count must not exceed
    h(t^5 + t^2) + t^3 + 1, and the first attaining forms must be h
    non-tangent hyperplanes whose shared plane meets X in a non-singular
    curve.

    Args:
        variety (hermcodes.forms.HermitianForm): Non-singular hermitian form
            of PG(4, t^2).
        degrees (tuple of int): Degrees h, at most t.
        space (hermcodes.proj_space.ProjectiveSpace): Ambient space.
        threads (int): Number of threads, 0 for one per CPU.
        chunk_size (int): Number of forms per scan shard.
        argmax_cap (int): Number of attaining forms kept by the scans.
        bar (callable): Progress bar.

    Returns:
        ConjectureReport: The report.

    Raises:
        hermcodes.codes.BoundHypothesisError: If a degree exceeds t.
        hermcodes.intersect.ScanCapError: If a scan is out of reach.
    """
    space = space or ProjectiveSpace(variety.n, variety.field)
    t = space.field.t
    for h in degrees:
        if h > t:
            raise BoundHypothesisError(
                "The conjecture is stated for h <= t = {}, got {}".format(t, h)
            )

    report = ConjectureReport(
        "bound on forms of degree h", {"t": t, "degrees": list(degrees)}
    )
    x_class = classify(variety, space)
    context = ConfigContext(variety, space, variety_points(variety, space), x_class)
    options = {}
    if chunk_size is not None:
        options["chunk_size"] = chunk_size

    if argmax_cap is not None:
        options["argmax_cap"] = argmax_cap

    for h in degrees:
        bound = conjecture_one_bound(h, t)
        scan = max_intersection_scan(
            variety, space, h=h, threads=threads, bar=bar, **options
        )
        report.evidence["h={}".format(h)] = {
            "max_count": scan.max_count,
            "bound": bound,
            "argmax_total": scan.argmax_total,
            "forms_scanned": scan.forms_scanned,
            "histogram": scan.rows(),
        }
        report.checks.append(
            BoundCheck(
                "h={} bound".format(h),
                scan.max_count is not None and scan.max_count <= bound,
                "max {} against {}".format(scan.max_count, bound),
            )
        )

        # attaining configurations are known for hyperplanes and quadrics only
        if h > 2:
            continue

        attaining = scan.argmax[:ATTAINING_CHECKED]
        failures = [
            coefficients.tolist()
            for coefficients in attaining
            if not _attaining_configuration(coefficients, h, context)
        ]
        report.checks.append(
            BoundCheck(
                "h={} attaining configuration".format(h),
                not failures,
                "{} of {} attaining forms checked, failing: {}".format(
                    len(attaining), scan.argmax_total, failures[:4]
                ),
            )
        )

    logger.info("Bound on forms of degree h: %s", report.status)
    return report


def _attaining_configuration(coefficients, h, context):
    space = context.space
    if h == 1:
        return not is_tangent(space.hyperplane(coefficients), context.variety)

    quadric = MonomialBasis(space.n, 2).quadratic_form(coefficients, space.field)
    config = classify_config(
        quadric, context.variety, space, x_class=context.x_class
    )
    return _hermitian_predicate({((False, False), 3)})(config, context) == PASS


@dataclass
class _PairChunk:
    weights: Dict[int, int]
    witnesses: Dict[int, tuple]
    minimum_pairs: int
    minimum_bad: List[tuple]


class _PairShard:
    """Weights of the pairs of hyperplanes with a first hyperplane in a range."""

    def __init__(
        self, masks, sections, tangent, size, minimum, both_tangent, flat_count
    ):
        self.masks = masks
        self.sections = sections
        self.tangent = tangent
        self.size = size
        self.minimum = minimum
        self.both_tangent = both_tangent
        self.flat_count = flat_count

    def __call__(self, shard):
        start, stop = shard
        masks = self.masks
        shared = np.rint(masks[start:stop] @ masks.T).astype(np.int64)
        first = np.arange(start, stop)[:, None]
        second = np.arange(masks.shape[0])[None, :]
        upper = second > first
        weights = self.size - (
            self.sections[start:stop, None] + self.sections[None, :] - shared
        )

        values, counts = np.unique(weights[upper], return_counts=True)
        witnesses = {}
        for value in values:
            rows, columns = np.nonzero(upper & (weights == value))
            witnesses[int(value)] = (int(rows[0]) + start, int(columns[0]))

        rows, columns = np.nonzero(upper & (weights == self.minimum))
        rows = rows + start
        good = (
            (self.tangent[rows] == self.both_tangent)
            & (self.tangent[columns] == self.both_tangent)
            & (shared[rows - start, columns] == self.flat_count)
        )
        bad = [
            (int(row), int(column))
            for row, column in zip(rows[~good][:4], columns[~good][:4])
        ]
        return _PairChunk(
            weights=dict(zip(values.tolist(), counts.tolist())),
            witnesses=witnesses,
            minimum_pairs=int(rows.size),
            minimum_bad=bad,
        )


def conjecture_two(code, spectrum, threads=1, bar=null_bar):
    """Confront the weights of pairs of hyperplanes with a weight spectrum.

    X is non-singular hermitian of PG(N, t^2). Every pair of distinct
    hyperplanes gives a codeword of C_2(X), of weight
    |X| - |X ∩ H1| - |X ∩ H2| + |X ∩ H1 ∩ H2|. Three predicates are checked:

    * each of the first five weights is the weight of a pair;
    * pairs of minimum weight have their shared flat meeting X in a
      non-singular variety, and are both non-tangent for N even and both
      tangent for N odd. When the spectrum is exhaustive, the minimum weight
      codewords must all come from such pairs;
    * no pair gives a weight beyond the fifth.

    Args:
        code (hermcodes.codes.FunctionalCode): Code of degree 2 of X.
        spectrum (hermcodes.codes.WeightSpectrum): Its spectrum.
        threads (int): Number of threads, 0 for one per CPU.
        bar (callable): Progress bar.

    Returns:
        ConjectureReport: The report.
    """
    variety = code.variety
    space = code.space
    n = space.n
    t = space.field.t
    x_class = classify(variety, space)
    if variety.kind != "hermitian" or x_class.degenerate or t is None:
        raise ConfigurationError("Pairs of hyperplanes need a non-singular hermitian X")

    masks = space.hyperplane_masks[:, code.points.indices].astype(np.float64)
    sections = masks.sum(axis=1).astype(np.int64)
    tangent = sections != phi(n - 1, t)
    minimum = spectrum.min_distance
    shard_function = _PairShard(
        masks, sections, tangent, code.length, minimum, n % 2 == 1, phi(n - 2, t)
    )

    total = len(space)
    shards = [
        (start, min(start + PAIR_CHUNK, total)) for start in range(0, total, PAIR_CHUNK)
    ]
    chunks = run_shards(
        shard_function, shards, threads=threads, bar=bar, text="Weighing pairs"
    )

    pair_weights = {}
    witnesses = {}
    minimum_pairs = 0
    minimum_bad = []
    for chunk in chunks:
        for weight, count in chunk.weights.items():
            pair_weights[weight] = pair_weights.get(weight, 0) + count

        for weight, witness in chunk.witnesses.items():
            witnesses.setdefault(weight, witness)

        minimum_pairs += chunk.minimum_pairs
        minimum_bad.extend(chunk.minimum_bad)

    equations = space.dual_hyperplanes()
    first_five = spectrum.first_weights(5)
    report = ConjectureReport(
        "weights of pairs of hyperplanes",
        {"t": t, "N": n, "mode": spectrum.mode},
        evidence={
            "first_weights": first_five,
            "pair_weights": sorted(pair_weights),
            "pairs_per_weight": {
                str(weight): pair_weights[weight] for weight in sorted(pair_weights)
            },
            "witnesses": {
                str(weight): [equations[index].tolist() for index in witnesses[weight]]
                for weight in sorted(witnesses)
            },
            "minimum_weight_pairs": minimum_pairs,
        },
    )

    missing = [weight for weight in first_five if weight not in pair_weights]
    report.checks.append(
        BoundCheck(
            "first weights from pairs",
            not missing,
            "weights without a pair: {}".format(missing),
        )
    )

    report.checks.append(
        BoundCheck(
            "minimum weight pairs",
            minimum_pairs > 0 and not minimum_bad,
            "{} pairs of weight {}, {} {}, failing: {}".format(
                minimum_pairs,
                minimum,
                "both tangent" if n % 2 else "both non-tangent",
                "expected",
                [
                    [equations[index].tolist() for index in pair]
                    for pair in minimum_bad[:4]
                ],
            ),
        )
    )

    if spectrum.is_complete():
        multiplicity = spectrum.multiplicities.get(minimum, 0)
        from_pairs = (space.field.q - 1) * minimum_pairs
        report.checks.append(
            BoundCheck(
                "minimum weight only from pairs",
                multiplicity == from_pairs,
                "{} codewords of weight {}, {} from pairs".format(
                    multiplicity, minimum, from_pairs
                ),
            )
        )

    beyond = [weight for weight in sorted(pair_weights) if weight not in first_five]
    report.checks.append(
        BoundCheck(
            "no pair beyond the fifth weight",
            not beyond,
            "pair weights outside the first five: {}".format(beyond),
        )
    )

    logger.info("Weights of pairs of hyperplanes: %s", report.status)
    return report


class ConfigurationError(HermcodesError):
    """Generic error raised by configuration classification."""


class NotAPairError(ConfigurationError, ValueError):
    """Quadric that is not a pair of distinct hyperplanes."""
