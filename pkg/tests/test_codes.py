import itertools
from unittest import TestCase
from unittest.mock import patch

import numpy as np

from hermcodes.codes import (
    BoundHypothesisError,
    CodeParameterError,
    CodeParameters,
    MonomialBasis,
    SpectrumCapError,
    SpectrumModeError,
    SymbolPacker,
    WeightSpectrum,
    build_code,
    expected_parameters,
    gray_digits,
    hermitian_code_weights,
    message_id,
    serre_sorensen_bound,
    top_weights,
    weight_spectrum,
)
from hermcodes.forms import QuadraticForm, classify
from hermcodes.gf_arith import make_field
from hermcodes.presets import make_preset


class MonomialBasisTestCase(TestCase):
    """Test the monomials of a degree."""

    def test_names(self):
        """Test the order of the quadratic monomials."""
        basis = MonomialBasis(2, 2)

        self.assertListEqual(
            basis.names(), ["x0^2", "x0x1", "x0x2", "x1^2", "x1x2", "x2^2"]
        )
        self.assertEqual(basis.describe([0, 1, 0, 0, 0, 2]), "x0x1 + 2x2^2")
        self.assertEqual(basis.describe([0] * 6), "0")

    def test_size(self):
        """Test the number of monomials."""
        self.assertEqual(len(MonomialBasis(4, 2)), 15)
        self.assertEqual(len(MonomialBasis(4, 3)), 35)

    def test_evaluate(self):
        """Test monomials agree with the quadratic forms."""
        field = make_field(3)
        basis = MonomialBasis(2, 2)
        coords = np.array([[1, 2, 0], [1, 1, 2], [0, 1, 1]])
        coefficients = np.array([1, 2, 0, 1, 1, 2])

        values = field.matmul(basis.evaluate(coords, field), coefficients[:, None])
        form = basis.quadratic_form(coefficients, field)

        self.assertListEqual(values.ravel().tolist(), form.evaluate(coords).tolist())


class GrayDigitsTestCase(TestCase):
    """Test the reflected Gray code."""

    def test_adjacent(self):
        """Test consecutive words differ in one digit and all words appear."""
        for q, size in ((2, 4), (3, 3), (4, 2)):
            words = [gray_digits(index, size, q) for index in range(q**size)]

            self.assertEqual(len({tuple(word) for word in words}), q**size)
            for first, second in zip(words, words[1:]):
                self.assertEqual(sum(a != b for a, b in zip(first, second)), 1)

    def test_message_id(self):
        """Test the integer of a message."""
        self.assertEqual(message_id((1, 0, 2), 3), 11)
        self.assertEqual(message_id((), 3), 0)


class SymbolPackerTestCase(TestCase):
    """Test the packed codewords."""

    def test_weights(self):
        """Test packed addition and weights against plain arithmetic."""
        generator = np.random.default_rng(2)
        for field in (make_field(2, 2), make_field(3), make_field(5)):
            packer = SymbolPacker(field, 21)
            first = generator.integers(0, field.q, size=(4, 21))
            second = generator.integers(0, field.q, size=(4, 21))

            packed = packer.add(packer.pack(first), packer.pack(second))
            expected = np.count_nonzero(field.vadd(first, second), axis=1)

            self.assertEqual(packer.sliced, field.p == 2)
            self.assertListEqual(packer.weights(packed).tolist(), expected.tolist())


class BuildCodeTestCase(TestCase):
    """Test the functional codes."""

    def test_parabolic(self):
        """Test the length and dimension of C_2(P₄) over GF(3)."""
        code = build_code(make_preset("parabolic4", make_field(3)), 2)

        self.assertEqual((code.length, code.dimension, code.kernel_dim), (40, 14, 1))
        self.assertEqual(code.generator.shape, (14, 40))
        self.assertEqual(repr(code), "FunctionalCode([40, 14] over GF(3))")

    def test_hermitian(self):
        """Test the evaluation map of U₄ over GF(4) is injective."""
        code = build_code(make_preset("hermitian4", make_field(2, 2)), 2)

        self.assertEqual((code.length, code.dimension, code.kernel_dim), (165, 15, 0))
        self.assertListEqual(code.pivots, list(range(15)))

    def test_coset(self):
        """Test every form of a coset has the codeword of its message."""
        field = make_field(2)
        code = build_code(make_preset("conic2", field), 2)
        message = [1] + [0] * (code.dimension - 1)
        coset = code.coset_coefficients(message)
        points = code.space.coords[code.points.indices]
        values = field.matmul(code.basis.evaluate(points, field), coset.T).T

        self.assertEqual(code.kernel_dim, 3)
        self.assertEqual(coset.shape[0], 8)
        for row in values:
            self.assertListEqual(row.tolist(), code.encode(message)[0].tolist())

        self.assertEqual(len(code.coset_forms(message)), 8)

    def test_invalid(self):
        """Test a null degree and an empty variety."""
        field = make_field(2)
        empty = QuadraticForm.from_terms({(0, 0): 1, (0, 1): 1, (1, 1): 1}, 1, field)

        with self.assertRaises(CodeParameterError):
            build_code(make_preset("conic2", field), 0)

        with self.assertRaisesRegex(CodeParameterError, "no point"):
            build_code(empty, 2)


class WeightSpectrumTestCase(TestCase):
    """Test the enumeration of the weights."""

    @classmethod
    def setUpClass(cls):
        cls.code = build_code(make_preset("parabolic4", make_field(3)), 2)
        cls.spectrum = weight_spectrum(cls.code, threads=2, representatives=4)

    def test_parabolic(self):
        """Test the exhaustive spectrum of C_2(P₄) over GF(3)."""
        spectrum = self.spectrum

        self.assertEqual(spectrum.min_distance, 12)
        self.assertEqual(spectrum.total, 3**14 - 1)
        self.assertTrue(spectrum.is_complete())
        self.assertTrue(spectrum.scalar_orbits())

        parameters = expected_parameters(classify(self.code.variety), 3)
        self.assertListEqual(parameters.mismatches(40, 14, spectrum.min_distance), [])

    def test_representatives(self):
        """Test representatives have the weight they are stored under."""
        for weight, messages in top_weights(self.spectrum, 3):
            self.assertLessEqual(len(messages), 4)
            for message in messages:
                self.assertEqual(self.code.weight(message), weight)

    def test_gray_shards(self):
        """Test the spectrum does not depend on the block nor the threads."""
        code = build_code(make_preset("hyperbolic3", make_field(2)), 2)
        reference = weight_spectrum(code)

        with patch("hermcodes.codes.BLOCK_CAP", 2**4):
            single = weight_spectrum(code, threads=1)
            multiple = weight_spectrum(code, threads=3)

        self.assertEqual(code.dimension, 9)
        self.assertDictEqual(single.multiplicities, reference.multiplicities)
        self.assertDictEqual(single.multiplicities, multiple.multiplicities)
        self.assertDictEqual(single.representatives, multiple.representatives)
        for weight, messages in single.representatives.items():
            for message in messages:
                self.assertEqual(code.weight(message), weight)

    def test_sampled(self):
        """Test the sampled mode is reproducible."""
        first = weight_spectrum(self.code, mode="sampled", samples=500, seed=3)
        second = weight_spectrum(self.code, mode="sampled", samples=500, seed=3)

        self.assertEqual(first.mode, "sampled")
        self.assertEqual((first.samples, first.seed), (500, 3))
        self.assertLessEqual(first.total, 500)
        self.assertFalse(first.is_complete())
        self.assertDictEqual(first.multiplicities, second.multiplicities)
        self.assertGreaterEqual(first.min_distance, 12)

    def test_modes(self):
        """Test the invalid modes and the cap."""
        with self.assertRaises(SpectrumModeError):
            weight_spectrum(self.code, mode="sampled")

        with self.assertRaises(SpectrumModeError):
            weight_spectrum(self.code, mode="random")

        with patch("hermcodes.codes.SPECTRUM_CAP", 1000):
            with self.assertRaisesRegex(SpectrumCapError, "sampled mode"):
                weight_spectrum(self.code)

    def test_dict(self):
        """Test a spectrum is stored as a dictionary."""
        data = self.spectrum.as_dict()

        self.assertEqual(data["multiplicities"]["12"], self.spectrum.multiplicities[12])
        self.assertEqual(WeightSpectrum.from_dict(data), self.spectrum)


class FormulasTestCase(TestCase):
    """Test the closed formulas on the codes."""

    def test_serre_sorensen(self):
        """Test the bound on the zeros of a form in PG(4, 4)."""
        self.assertEqual(serre_sorensen_bound(2, 4, 4), 149)
        self.assertEqual(serre_sorensen_bound(1, 4, 4), 85)

        with self.assertRaises(BoundHypothesisError):
            serre_sorensen_bound(3, 4, 2)

    def test_hermitian_weights(self):
        """Test the five smallest weights of C_2(U₄)."""
        self.assertListEqual(hermitian_code_weights(2), [84, 88, 92, 96, 100])
        self.assertListEqual(
            hermitian_code_weights(3), [1908, 1917, 1935, 1944, 1962]
        )

    def test_expected_parameters(self):
        """Test the known parameters over GF(4)."""
        field = make_field(2, 2)
        hermitian = classify(make_preset("hermitian4", field))
        parameters = expected_parameters(hermitian, 4)

        self.assertEqual(parameters, CodeParameters(165, 15, 84))
        self.assertIsNone(expected_parameters(hermitian, 4, h=3))

    def test_mismatches(self):
        """Test the comparison with observed parameters."""
        exact = CodeParameters(40, 14, 12)
        bound = CodeParameters(31, 14, 0, True)

        self.assertListEqual(exact.mismatches(40, 14, 12), [])
        self.assertListEqual(
            exact.mismatches(40, 13, 11),
            ["dimension 13 instead of 14", "distance 11 instead of 12"],
        )
        self.assertListEqual(bound.mismatches(31, 14, 5), [])
        self.assertTrue(bound.degenerate)

    def test_orbits(self):
        """Test multiplicities are checked against scalar orbits."""
        spectrum = WeightSpectrum(4, 2, 3, "exhaustive", {2: 4, 3: 4})
        odd = WeightSpectrum(4, 2, 3, "exhaustive", {2: 3, 3: 5})

        self.assertTrue(spectrum.scalar_orbits())
        self.assertTrue(spectrum.is_complete())
        self.assertFalse(odd.scalar_orbits())
        self.assertListEqual(list(itertools.chain(*spectrum.rows())), [2, 4, 3, 4])
