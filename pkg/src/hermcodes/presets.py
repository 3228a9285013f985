"""Named varieties and textual form syntax.

Presets give the varieties the package studies by name. Each preset builds a
form for a given field:

>>> from hermcodes.gf_arith import make_field
>>> make_preset("rank4g2cone4", make_field(3))
QuadraticForm(n=4, GF(3), [0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0])

The quadric presets are:

* parabolic4: x0x1 + x2x3 + x4^2, parabolic quadric of PG(4, q);
* rank3cone4: x0x1 + x2^2, cone with a line as vertex over a conic;
* rank4g2cone4: x0x1 + x2x3, cone with a point as vertex over a hyperbolic
  quadric;
* rank4g1cone4: x0x1 + x2^2 + b x2x3 + c x3^2, cone with a point as vertex
  over an elliptic quadric, (b, c) being the smallest pair for which
  y^2 + by + c has no root;
* hyperbolic-pair: x0x1, pair of hyperplanes of PG(4, q);
* repeated-hyperplane: x0^2;
* hyperbolic3, elliptic3, cone3: the quadrics of PG(3, q) of the same shapes;
* conic2: x0x1 + x2^2 in PG(2, q).

The hermitian presets hermitian4, hermitian3 and hermitian2 are the diagonal
forms sum of x_i^(t+1) in PG(4, t^2), PG(3, t^2) and PG(2, t^2).

Forms can also be given as a comma separated list of coefficients, in upper
triangular row-major order (a_00, a_01, ..., a_0n, a_11, ...):

>>> parse_form("1,0,0,0,0,0", "quadric", 2, make_field(2))
QuadraticForm(n=2, GF(2), [1, 0, 0, 0, 0, 0])
"""

import logging
from dataclasses import dataclass
from typing import Callable

from hermcodes.exceptions import HermcodesError
from hermcodes.forms import FormShapeError, HermitianForm, QuadraticForm

logger = logging.getLogger(__name__)


def nonsplit_binary(field):
    """Give the smallest (b, c) such that y^2 + by + c has no root in the field.

    Returns:
        tuple of int: Coefficients b and c.
    """
    for b in field.elements():
        for c in field.elements():
            if all(
                field.add(field.add(field.mul(y, y), field.mul(b, y)), c)
                for y in field.elements()
            ):
                return b, c

    raise AssertionError("Every field has an irreducible quadratic")


def _quadric(terms, n):
    def build(field):
        return QuadraticForm.from_terms(terms, n, field)

    return build


def _elliptic(n):
    """Build x0x1 + (x2^2 + b x2x3 + c x3^2) in n + 1 variables."""

    def build(field):
        b, c = nonsplit_binary(field)
        return QuadraticForm.from_terms(
            {(0, 1): 1, (2, 2): 1, (2, 3): b, (3, 3): c}, n, field
        )

    return build


def _hermitian(n):
    def build(field):
        return HermitianForm.diagonal([1] * (n + 1), field)

    return build


@dataclass(frozen=True)
class Preset:
    """Named variety.

    Attributes:
        name (str): Name of the preset.
        kind (str): "quadric" or "hermitian".
        n (int): Dimension of the ambient space.
        build (callable): Function creating the form from a field.
        description (str): Short description.
    """

    name: str
    kind: str
    n: int
    build: Callable
    description: str


PRESETS = {
    preset.name: preset
    for preset in [
        Preset(
            "parabolic4",
            "quadric",
            4,
            _quadric({(0, 1): 1, (2, 3): 1, (4, 4): 1}, 4),
            "parabolic quadric P₄",
        ),
        Preset(
            "rank3cone4",
            "quadric",
            4,
            _quadric({(0, 1): 1, (2, 2): 1}, 4),
            "cone Π₁P₂",
        ),
        Preset(
            "rank4g2cone4",
            "quadric",
            4,
            _quadric({(0, 1): 1, (2, 3): 1}, 4),
            "cone Π₀H₃",
        ),
        Preset("rank4g1cone4", "quadric", 4, _elliptic(4), "cone Π₀E₃"),
        Preset(
            "hyperbolic-pair",
            "quadric",
            4,
            _quadric({(0, 1): 1}, 4),
            "pair of hyperplanes Π₂H₁",
        ),
        Preset(
            "repeated-hyperplane",
            "quadric",
            4,
            _quadric({(0, 0): 1}, 4),
            "repeated hyperplane Π₃P₀",
        ),
        Preset(
            "hyperbolic3",
            "quadric",
            3,
            _quadric({(0, 1): 1, (2, 3): 1}, 3),
            "hyperbolic quadric H₃",
        ),
        Preset("elliptic3", "quadric", 3, _elliptic(3), "elliptic quadric E₃"),
        Preset(
            "cone3",
            "quadric",
            3,
            _quadric({(0, 1): 1, (2, 2): 1}, 3),
            "quadric cone Π₀P₂",
        ),
        Preset(
            "conic2",
            "quadric",
            2,
            _quadric({(0, 1): 1, (2, 2): 1}, 2),
            "conic P₂",
        ),
        Preset("hermitian4", "hermitian", 4, _hermitian(4), "hermitian variety U₄"),
        Preset("hermitian3", "hermitian", 3, _hermitian(3), "hermitian surface U₃"),
        Preset("hermitian2", "hermitian", 2, _hermitian(2), "hermitian curve U₂"),
    ]
}


def get_preset(name):
    """Give a preset by name.

    Raises:
        UnknownPresetError: If there is no such preset.
    """
    try:
        return PRESETS[name]

    except KeyError as error:
        raise UnknownPresetError(
            "Unknown preset '{}', available presets: {}".format(
                name, ", ".join(PRESETS)
            )
        ) from error


def make_preset(name, field):
    """Build the form of a preset.

    Args:
        name (str): Name of the preset.
        field (hermcodes.gf_arith.Field): Field of the coefficients.

    Returns:
        hermcodes.forms.Form: The form.

    Raises:
        UnknownPresetError: If there is no such preset.
        PresetFieldError: If a hermitian preset is asked over a field of odd
            degree.
    """
    preset = get_preset(name)
    if preset.kind == "hermitian" and field.t is None:
        raise PresetFieldError(
            "Preset '{}' needs a field of square order, got {}".format(name, field)
        )

    logger.debug("Building preset '%s' over %s", name, field)
    return preset.build(field)


def parse_form(text, kind, n, field):
    """Parse a form from its coefficient list.

    Args:
        text (str): Comma separated coefficients in upper triangular row-major
            order, each an element code in [0, q).
        kind (str): "quadric" or "hermitian".
        n (int): Dimension of the ambient space.
        field (hermcodes.gf_arith.Field): Field of the coefficients.

    Returns:
        hermcodes.forms.Form: The form.

    Raises:
        FormParseError: If the list is malformed.
    """
    try:
        coefficients = [int(item) for item in text.split(",")]

    except ValueError as error:
        raise FormParseError(
            "Malformed coefficient list '{}'".format(text)
        ) from error

    invalid = [value for value in coefficients if not 0 <= value < field.q]
    if invalid:
        raise FormParseError(
            "Coefficients {} are not elements of {}".format(invalid, field)
        )

    try:
        if kind == "hermitian":
            return HermitianForm.from_upper(coefficients, n, field)

        return QuadraticForm.from_vector(coefficients, n, field)

    except FormShapeError as error:
        raise FormParseError(str(error)) from error


def format_form(form):
    """Give the coefficient list of a form, in the syntax of `parse_form`."""
    if form.kind == "hermitian":
        vector = form.upper_vector()

    else:
        vector = form.coefficient_vector()

    return ",".join(str(value) for value in vector.tolist())


class PresetError(HermcodesError):
    """Generic error raised for presets and form parsing."""


class UnknownPresetError(PresetError, LookupError):
    """No preset with the given name."""


class PresetFieldError(PresetError, ValueError):
    """Preset unavailable over the given field."""


class FormParseError(PresetError, ValueError):
    """Malformed coefficient list."""
