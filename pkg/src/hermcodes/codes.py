"""Functional codes module.

The functional code C_h(X) of a variety X evaluates the forms of degree h at
the canonical coordinates of the points of X. Its length is the number of
points of X, its dimension the number of monomials of degree h minus the
dimension of the kernel of the evaluation map, that is of the space of forms
vanishing on the whole of X.

>>> from hermcodes.gf_arith import make_field
>>> from hermcodes.presets import make_preset
>>> code = build_code(make_preset("parabolic4", make_field(3)), 2)
>>> code.length, code.dimension, code.kernel_dim
(40, 14, 1)

The weight of the codeword of a message m is the number of points of X
outside the zero set of the form f_m whose coefficients on the pivot
monomials are m. `weight_spectrum` enumerates all the messages, or a sample
of them, and counts codewords by weight:

>>> spectrum = weight_spectrum(code)
>>> spectrum.min_distance
12

The exhaustive enumeration splits each message into high and low digits. The
codewords of all the low digits form a precomputed block, the high digits run
in reflected Gray order so that each step adds one scaled generator row to
the block. Codewords are packed: bit slices for characteristic 2, where
addition is a XOR and the weight a popcount, and digit planes otherwise. The
message space is split into q shards by the leading high digit, run by a
`hermcodes.safe_workers.ShardPool`.
"""

import itertools
import logging
import math
from dataclasses import dataclass, field as dataclass_field
from typing import Dict, List, Optional

import numpy as np

from hermcodes.exceptions import HermcodesError
from hermcodes.forms import QuadraticForm, variety_points
from hermcodes.progress_bar import null_bar
from hermcodes.proj_space import ProjectiveSpace, pi
from hermcodes.safe_workers import run_shards
from hermcodes.utils import truncate_message

# cap on the number of codewords of an exhaustive spectrum
SPECTRUM_CAP = 2 * 10**9

# cap on the number of codewords of the precomputed block
BLOCK_CAP = 2**16

# number of sampled messages per shard
SAMPLE_CHUNK = 2**16

REPRESENTATIVES = 64

POPCOUNT = np.array([bin(value).count("1") for value in range(256)], dtype=np.int64)

logger = logging.getLogger(__name__)


class MonomialBasis:
    """Monomials of degree h in n + 1 variables.

    Monomials are sorted in decreasing lexicographic order of their exponents,
    which for h = 2 is the upper triangular order of the quadratic forms.

    Args:
        n (int): Dimension of the projective space.
        h (int): Degree.

    Attributes:
        n (int): Dimension of the projective space.
        h (int): Degree.
        variables (list of tuple): Variable indices of each monomial, with
            repetitions, in increasing order.
        exponents (numpy.ndarray): Exponent vectors, one row per monomial.
    """

    def __init__(self, n, h):
        self.n = n
        self.h = h
        self.variables = list(itertools.combinations_with_replacement(range(n + 1), h))
        self.exponents = np.zeros((len(self.variables), n + 1), dtype=np.int64)
        for row, variables in enumerate(self.variables):
            for variable in variables:
                self.exponents[row, variable] += 1

    def __len__(self):
        return len(self.variables)

    def __repr__(self):
        return "MonomialBasis(n={}, h={})".format(self.n, self.h)

    def evaluate(self, coords, field):
        """Evaluate every monomial at points.

        Args:
            coords (numpy.ndarray): Coordinates as rows.
            field (hermcodes.gf_arith.Field): Field of the coordinates.

        Returns:
            numpy.ndarray: Values, one row per point and one column per
            monomial.
        """
        coords = np.asarray(coords, dtype=np.int64)
        values = np.ones((coords.shape[0], len(self)), dtype=np.int64)
        for column, variables in enumerate(self.variables):
            for variable in variables:
                values[:, column] = field.vmul(values[:, column], coords[:, variable])

        return values

    def names(self):
        """Give the name of every monomial, as x0x1 or x2^2."""
        names = []
        for exponents in self.exponents:
            factors = [
                "x{}".format(variable) + ("^{}".format(power) if power > 1 else "")
                for variable, power in enumerate(exponents)
                if power
            ]
            names.append("".join(factors))

        return names

    def describe(self, coefficients):
        """Write a form from its coefficients on the basis.

        >>> MonomialBasis(2, 2).describe([0, 1, 0, 0, 0, 2])
        'x0x1 + 2x2^2'
        """
        terms = [
            (str(coefficient) if coefficient != 1 else "") + name
            for coefficient, name in zip(coefficients, self.names())
            if coefficient
        ]
        return " + ".join(terms) or "0"

    def quadratic_form(self, coefficients, field):
        """Give the quadratic form of coefficients on a basis of degree 2."""
        assert self.h == 2, "Only degree 2 coefficients make a quadratic form"
        return QuadraticForm.from_vector(coefficients, self.n, field)


class FunctionalCode:
    """Functional code C_h(X).

    Use `build_code` to create it.

    Attributes:
        variety (hermcodes.forms.Form): The variety X.
        h (int): Degree of the evaluated forms.
        space (hermcodes.proj_space.ProjectiveSpace): Ambient space.
        points (hermcodes.proj_space.PointSet): Points of X, whose increasing
            order is the coordinate order of the code.
        basis (MonomialBasis): Monomials of degree h.
        evaluation (numpy.ndarray): Values of every monomial at every point,
            one row per monomial.
        pivots (list of int): Monomials whose rows form the generator matrix.
        kernel (numpy.ndarray): Coefficient vectors of a basis of the forms
            vanishing on X, as rows.
    """

    def __init__(self, variety, h, space, points, basis, evaluation, pivots, kernel):
        self.variety = variety
        self.h = h
        self.space = space
        self.points = points
        self.basis = basis
        self.evaluation = evaluation
        self.pivots = pivots
        self.kernel = kernel

    def __repr__(self):
        return "FunctionalCode([{}, {}] over {})".format(
            self.length, self.dimension, self.field
        )

    @property
    def field(self):
        return self.space.field

    @property
    def q(self):
        return self.space.field.q

    @property
    def length(self):
        return self.points.cardinality

    @property
    def dimension(self):
        return len(self.pivots)

    @property
    def kernel_dim(self):
        return self.kernel.shape[0]

    @property
    def generator(self):
        """numpy.ndarray: Generator matrix, one row per pivot monomial."""
        return self.evaluation[self.pivots]

    def encode(self, messages):
        """Give the codewords of messages.

        Args:
            messages (numpy.ndarray): Messages as rows of k elements.

        Returns:
            numpy.ndarray: Codewords as rows.
        """
        messages = np.array(messages, dtype=np.int64, ndmin=2)
        return self.field.matmul(messages, self.generator)

    def weight(self, message):
        return int(np.count_nonzero(self.encode(message)))

    def message_coefficients(self, message):
        """Give the coefficients on the monomial basis of the form of a message."""
        coefficients = np.zeros(len(self.basis), dtype=np.int64)
        coefficients[self.pivots] = np.asarray(message, dtype=np.int64)
        return coefficients

    def message_form(self, message):
        """Give the quadratic form f_m of a message of a code of degree 2."""
        return self.basis.quadratic_form(self.message_coefficients(message), self.field)

    def coset_coefficients(self, message):
        """Give the coefficients of every form with the same codeword as a message.

        These are f_m plus any combination of the kernel forms, q^kernel_dim
        forms in all.

        Returns:
            numpy.ndarray: Coefficient vectors as rows, f_m first.
        """
        coefficients = self.message_coefficients(message)
        if self.kernel_dim == 0:
            return coefficients[None, :]

        combinations = np.array(
            list(itertools.product(range(self.q), repeat=self.kernel_dim)),
            dtype=np.int64,
        )
        shifts = self.field.matmul(combinations, self.kernel)
        return self.field.vadd(coefficients[None, :], shifts)

    def coset_forms(self, message):
        """Give the quadratic forms of `coset_coefficients`."""
        return [
            self.basis.quadratic_form(coefficients, self.field)
            for coefficients in self.coset_coefficients(message)
        ]


def build_code(variety, h, space=None):
    """Build the functional code of a variety.

    Args:
        variety (hermcodes.forms.Form): Nonzero form defining X.
        h (int): Degree of the evaluated forms, at least 1.
        space (hermcodes.proj_space.ProjectiveSpace): Ambient space, created
            if not given.

    Returns:
        FunctionalCode: The code.

    Raises:
        CodeParameterError: If the degree is not positive or X has no point.
    """
    if h < 1:
        raise CodeParameterError("Degree must be positive, got {}".format(h))

    space = space or ProjectiveSpace(variety.n, variety.field)
    field = space.field
    points = variety_points(variety, space)
    if points.cardinality == 0:
        raise CodeParameterError(
            "The variety {} has no point".format(truncate_message(repr(variety)))
        )

    basis = MonomialBasis(variety.n, h)
    evaluation = basis.evaluate(space.coords[points.indices], field).T
    _, pivots = field.rref(evaluation.T)
    kernel = field.nullspace(evaluation.T)

    logger.info(
        "Built C_%i(X) of length %i and dimension %i over %s",
        h,
        points.cardinality,
        len(pivots),
        field,
    )
    if kernel.shape[0]:
        logger.info(
            "The evaluation map has a kernel of dimension %i", kernel.shape[0]
        )

    return FunctionalCode(variety, h, space, points, basis, evaluation, pivots, kernel)


def message_id(message, q):
    """Give the integer of a message, its first element being the most significant.

    >>> message_id((1, 0, 2), 3)
    11
    """
    value = 0
    for digit in message:
        value = value * q + int(digit)

    return value


def gray_digits(index, size, q):
    """Give the index-th word of the reflected q-ary Gray code.

    Consecutive words differ in exactly one digit.

    >>> [gray_digits(index, 2, 3) for index in range(4)]
    [[0, 0], [0, 1], [0, 2], [1, 2]]
    """
    digits = [(index // q ** (size - 1 - position)) % q for position in range(size)]
    gray = []
    reflected = False
    for digit in digits:
        value = q - 1 - digit if reflected else digit
        gray.append(value)
        reflected ^= value % 2 == 1

    return gray


class SymbolPacker:
    """Packed representation of codewords.

    In characteristic 2, a codeword is stored as e bit slices of its symbols,
    packed in bytes: addition is a XOR and the weight is the popcount of the
    union of the slices. Otherwise a codeword is stored as its base-p digits,
    added modulo p.

    Packed codewords may have leading axes, the packed axes being last.

    Args:
        field (hermcodes.gf_arith.Field): Field of the symbols.
        length (int): Number of symbols of a codeword.
    """

    def __init__(self, field, length):
        self.field = field
        self.length = length
        self.dtype = np.uint8 if 2 * (field.p - 1) <= 255 else np.uint32

    @property
    def sliced(self):
        return self.field.p == 2

    def pack(self, symbols):
        digits = self.field.to_digits(symbols)
        if self.sliced:
            return np.packbits(
                np.moveaxis(digits, -1, -2).astype(np.uint8), axis=-1, bitorder="little"
            )

        return digits.astype(self.dtype)

    def add(self, first, second):
        if self.sliced:
            return np.bitwise_xor(first, second)

        return (first + second) % self.dtype(self.field.p)

    def weights(self, packed):
        if self.sliced:
            union = np.bitwise_or.reduce(packed, axis=-2)
            return POPCOUNT[union].sum(axis=-1)

        return np.count_nonzero(packed.any(axis=-1), axis=-1)


@dataclass
class WeightSpectrum:
    """Weight distribution of a code.

    Attributes:
        length (int): Length of the code.
        dimension (int): Dimension of the code.
        q (int): Order of the field.
        mode (str): "exhaustive" or "sampled".
        multiplicities (dict): Number of nonzero codewords per weight. In the
            sampled mode, number of sampled codewords per weight.
        representatives (dict): First messages met per weight, as tuples.
        samples (int): Number of sampled messages, None when exhaustive.
        seed (int): Seed of the sampled mode.
    """

    length: int
    dimension: int
    q: int
    mode: str
    multiplicities: Dict[int, int]
    representatives: Dict[int, List[tuple]] = dataclass_field(default_factory=dict)
    samples: Optional[int] = None
    seed: int = 0

    @property
    def total(self):
        return sum(self.multiplicities.values())

    @property
    def weights(self):
        return sorted(self.multiplicities)

    @property
    def min_distance(self):
        return self.weights[0]

    def first_weights(self, count):
        return self.weights[:count]

    def is_complete(self):
        """Tell if every nonzero codeword is counted."""
        return self.total == self.q**self.dimension - 1

    def scalar_orbits(self):
        """Tell if every multiplicity is a multiple of q - 1."""
        return all(
            multiplicity % (self.q - 1) == 0
            for multiplicity in self.multiplicities.values()
        )

    def rows(self):
        """Give the (weight, multiplicity) rows, by increasing weight."""
        return [(weight, self.multiplicities[weight]) for weight in self.weights]

    def as_dict(self):
        return {
            "length": self.length,
            "dimension": self.dimension,
            "q": self.q,
            "mode": self.mode,
            "samples": self.samples,
            "seed": self.seed,
            "multiplicities": {
                str(weight): multiplicity for weight, multiplicity in self.rows()
            },
            "representatives": {
                str(weight): [list(message) for message in messages]
                for weight, messages in sorted(self.representatives.items())
            },
        }

    @classmethod
    def from_dict(cls, data):
        return cls(
            length=data["length"],
            dimension=data["dimension"],
            q=data["q"],
            mode=data["mode"],
            samples=data["samples"],
            seed=data["seed"],
            multiplicities={
                int(weight): multiplicity
                for weight, multiplicity in data["multiplicities"].items()
            },
            representatives={
                int(weight): [tuple(message) for message in messages]
                for weight, messages in data["representatives"].items()
            },
        )


def _block_size(q, k):
    """Give the number of low digits whose codewords fit in the block."""
    size = 0
    while size < k and q ** (size + 1) <= BLOCK_CAP:
        size += 1

    return size


def _all_messages(q, size):
    """Give every message of a given size, in increasing order of integer."""
    indices = np.arange(q**size, dtype=np.int64)
    powers = q ** np.arange(size - 1, -1, -1, dtype=np.int64)
    return (indices[:, None] // powers) % q


class _Collector:
    """Histogram and capped representative lists of one shard."""

    def __init__(self, length, cap):
        self.histogram = np.zeros(length + 1, dtype=np.int64)
        self.representatives = {}
        self.cap = cap
        self.needed = np.ones(length + 1, dtype=bool)
        self.needed[0] = False
        if cap == 0:
            self.needed[:] = False

    def add(self, weights, message_of):
        self.histogram += np.bincount(weights, minlength=len(self.histogram))
        for position in np.flatnonzero(self.needed[weights]):
            weight = int(weights[position])
            if not self.needed[weight]:
                continue

            messages = self.representatives.setdefault(weight, [])
            messages.append(message_of(position))
            if len(messages) == self.cap:
                self.needed[weight] = False


class _GrayShards:
    """Exhaustive traversal of the messages, one shard per leading digit."""

    def __init__(self, code, cap):
        self.field = code.field
        self.q = code.q
        self.k = code.dimension
        self.length = code.length
        self.cap = cap
        self.low = _block_size(self.q, self.k)
        self.packer = SymbolPacker(self.field, self.length)

        generator = code.generator
        high_count = self.k - self.low
        self.low_messages = _all_messages(self.q, self.low)
        self.block = self.packer.pack(
            self.field.matmul(self.low_messages, generator[high_count:])
        )

        # every scalar multiple of every high row, packed
        scalars = np.arange(self.q, dtype=np.int64)
        self.scaled = self.packer.pack(
            self.field.vmul(scalars[None, :, None], generator[:high_count, None, :])
        )
        self.zero = self.packer.pack(np.zeros(self.length, dtype=np.int64))

    def shards(self):
        if self.k == self.low:
            return [None]

        return list(range(self.q))

    def __call__(self, leading):
        collector = _Collector(self.length, self.cap)
        if leading is None:
            high, current, free = [], self.zero, 0

        else:
            free = self.k - self.low - 1
            high = [leading] + [0] * free
            current = self.scaled[0, leading]

        for step in range(self.q**free):
            if step:
                gray = gray_digits(step, free, self.q)
                position = next(
                    index for index in range(free) if gray[index] != high[1 + index]
                )
                delta = self.field.sub(gray[position], high[1 + position])
                current = self.packer.add(current, self.scaled[1 + position, delta])
                high[1 + position] = gray[position]

            weights = self.packer.weights(self.packer.add(self.block, current))
            prefix = tuple(high)
            collector.add(
                weights,
                lambda row: prefix + tuple(self.low_messages[row].tolist()),
            )

        return collector


class _SampledShards:
    """Random messages, drawn per shard from a seeded generator."""

    def __init__(self, code, cap, samples, seed):
        self.code = code
        self.cap = cap
        self.samples = samples
        self.seed = seed

    def shards(self):
        return [
            (index, min(SAMPLE_CHUNK, self.samples - start))
            for index, start in enumerate(range(0, self.samples, SAMPLE_CHUNK))
        ]

    def __call__(self, shard):
        index, size = shard
        generator = np.random.default_rng([self.seed, index])
        messages = generator.integers(
            0, self.code.q, size=(size, self.code.dimension), dtype=np.int64
        )
        messages = messages[messages.any(axis=1)]
        weights = np.count_nonzero(self.code.encode(messages), axis=1)
        collector = _Collector(self.code.length, self.cap)
        collector.add(weights, lambda row: tuple(messages[row].tolist()))
        return collector


def weight_spectrum(
    code,
    mode="exhaustive",
    samples=None,
    seed=0,
    threads=1,
    representatives=REPRESENTATIVES,
    bar=null_bar,
):
    """Compute the weight distribution of a code.

    The result does not depend on the number of threads: shards are merged in
    order and representatives are the first messages met in that order.

    Args:
        code (FunctionalCode): The code.
        mode (str): "exhaustive" for every message, "sampled" for random
            messages.
        samples (int): Number of random messages of the sampled mode.
        seed (int): Seed of the sampled mode.
        threads (int): Number of threads, 0 for one per CPU.
        representatives (int): Number of messages kept per weight.
        bar (callable): Progress bar.

    Returns:
        WeightSpectrum: The spectrum, without the zero codeword.

    Raises:
        SpectrumCapError: If the exhaustive mode is above the cap.
        SpectrumModeError: If the mode is unknown or a sample size is missing.
    """
    q = code.q
    k = code.dimension
    if mode == "exhaustive":
        if q**k > SPECTRUM_CAP:
            raise SpectrumCapError(
                "Exhaustive spectrum of {}^{} = {} codewords is above the cap {}, "
                "use the sampled mode".format(q, k, q**k, SPECTRUM_CAP)
            )

        traversal = _GrayShards(code, representatives)
        text = "Enumerating {}^{} codewords of {}".format(q, k, code)

    elif mode == "sampled":
        if not samples or samples < 1:
            raise SpectrumModeError("The sampled mode needs a positive sample size")

        traversal = _SampledShards(code, representatives, samples, seed)
        text = "Sampling {} codewords of {}".format(samples, code)

    else:
        raise SpectrumModeError("Unknown spectrum mode '{}'".format(mode))

    collectors = run_shards(
        traversal, traversal.shards(), threads=threads, bar=bar, text=text
    )

    histogram = sum(collector.histogram for collector in collectors)
    if mode == "exhaustive" and histogram[0] != 1:
        raise SpectrumConsistencyError(
            "Found {} codewords of weight 0 in {}".format(histogram[0], code)
        )

    merged = {}
    for collector in collectors:
        for weight, messages in collector.representatives.items():
            kept = merged.setdefault(weight, [])
            kept.extend(messages[: representatives - len(kept)])

    weights = np.flatnonzero(histogram[1:]) + 1
    multiplicities = {int(weight): int(histogram[weight]) for weight in weights}
    logger.info(
        "Spectrum of %s: %i weights, minimum distance %i",
        code,
        len(multiplicities),
        min(multiplicities),
    )

    return WeightSpectrum(
        length=code.length,
        dimension=k,
        q=q,
        mode=mode,
        multiplicities=multiplicities,
        representatives=merged,
        samples=samples if mode == "sampled" else None,
        seed=seed if mode == "sampled" else 0,
    )


def min_distance(spectrum):
    return spectrum.min_distance


def top_weights(spectrum, count):
    """Give the smallest weights of a spectrum with their representatives.

    Args:
        spectrum (WeightSpectrum): The spectrum.
        count (int): Number of weights.

    Returns:
        list of tuple: Weight and list of messages, by increasing weight.
    """
    return [
        (weight, spectrum.representatives.get(weight, []))
        for weight in spectrum.first_weights(count)
    ]


def serre_sorensen_bound(h, m, q):
    """Give the bound h q^(m-1) + pi_(m-2) on the zeros of a form of degree h.

    It holds for a nonzero form of degree h <= q in PG(m, q).

    Raises:
        BoundHypothesisError: If h > q.
    """
    if h > q:
        raise BoundHypothesisError(
            "The bound on forms of degree {} needs h <= q = {}".format(h, q)
        )

    return h * q ** (m - 1) + pi(m - 2, q)


def hermitian_code_weights(t):
    """Give the five smallest weights of C_2(X), X non-singular in PG(4, t^2).

    The fifth one is the weight of a pair of tangent hyperplanes whose plane
    meets X in a non-singular curve. It is the fifth smallest weight for t
    above 3 only.

    >>> hermitian_code_weights(2)
    [84, 88, 92, 96, 100]
    """
    base = t**7 - t**5
    return [
        base - t**3 - t**2,
        base - t**3,
        base - t**2,
        base,
        base + t**3 - t**2,
    ]


@dataclass(frozen=True)
class CodeParameters:
    """Known parameters [n, k, d] of a functional code.

    Attributes:
        length (int): Length n.
        dimension (int): Dimension k.
        distance (int): Minimum distance d, or its lower bound.
        distance_is_bound (bool): True if only d >= distance is known.
    """

    length: int
    dimension: int
    distance: int
    distance_is_bound: bool = False

    @property
    def degenerate(self):
        """bool: True if the distance formula gives no information."""
        return self.distance <= 0

    def mismatches(self, length, dimension, distance):
        """Compare with observed parameters.

        Returns:
            list of str: Description of every difference.
        """
        found = []
        if length != self.length:
            found.append("length {} instead of {}".format(length, self.length))

        if dimension != self.dimension:
            found.append("dimension {} instead of {}".format(dimension, self.dimension))

        if self.distance_is_bound:
            if distance < self.distance:
                found.append("distance {} below {}".format(distance, self.distance))

        elif distance != self.distance:
            found.append("distance {} instead of {}".format(distance, self.distance))

        return found

    def as_dict(self):
        return {
            "length": self.length,
            "dimension": self.dimension,
            "distance": self.distance,
            "distance_is_bound": self.distance_is_bound,
            "degenerate": self.degenerate,
        }


def expected_parameters(variety_class, q, h=2):
    """Give the known parameters of C_h(X) for a class of X in PG(4, q).

    Args:
        variety_class (hermcodes.forms.VarietyClass): Class of X.
        q (int): Order of the field.
        h (int): Degree.

    Returns:
        CodeParameters: The parameters, None if unknown.
    """
    if h != 2 or variety_class.n != 4:
        return None

    label = variety_class.label
    if label == "parabolic P₄":
        return CodeParameters((q + 1) * (q**2 + 1), 14, q**3 - q**2 - 2 * q)

    if label == "cone Π₁P₂":
        return CodeParameters(q**3 + q**2 + q + 1, 14, q**3 - 3 * q**2)

    if label == "cone Π₀H₃":
        return CodeParameters(q**3 + 2 * q**2 + q + 1, 14, q**3 - 2 * q**2 + q)

    if label == "cone Π₀E₃":
        return CodeParameters(q**3 + q + 1, 14, q**3 - 3 * q**2, True)

    if label == "non-singular hermitian variety U₄":
        t = math.isqrt(q)
        return CodeParameters(
            (t**2 + 1) * (t**5 + 1), 15, hermitian_code_weights(t)[0]
        )

    return None


class CodeError(HermcodesError):
    """Generic error raised by codes."""


class CodeParameterError(CodeError, ValueError):
    """Invalid parameters for a functional code."""


class SpectrumCapError(CodeError):
    """Exhaustive spectrum above the cap."""


class SpectrumModeError(CodeError, ValueError):
    """Invalid spectrum mode."""


class BoundHypothesisError(CodeError):
    """Bound asked outside of its hypotheses."""


class SpectrumConsistencyError(RuntimeError):
    """Exhaustive spectrum not counting the zero codeword exactly once.

    The generator matrix has full rank, so this error is a bug and hence does
    not inherit from HermcodesError.
    """
