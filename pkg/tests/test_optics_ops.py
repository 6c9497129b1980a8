import math

import numpy as np
import pytest
import scipy.linalg

from optical_hqc.engine.fock_core import (Op, StateVector, make_space,
                                          number_op)
from optical_hqc.engine.optics_ops import (FactorKind, ModelKind, ModelSpec,
                                           beam_splitter, composite_w,
                                           displacement, expm_antihermitian,
                                           expm_skew, expm_with_derivative,
                                           squeeze, two_mode_squeeze,
                                           vacuum_frame)
from optical_hqc.utils.converters import unitarity_defect
from optical_hqc.utils.exceptions import (ContractViolationError,
                                          InvalidArgumentError,
                                          ModelMismatchError,
                                          ResourceBudgetError,
                                          UnknownCoordinateError)
from tests.helpers import random_point


def test_displacement_makes_coherent_state():
    space = make_space(1, 30)
    alpha = 0.3 + 0.2j
    state = displacement(space, 1, alpha).apply(StateVector.basis(space, (0,)))
    for n in range(8):
        expected = math.exp(-abs(alpha) ** 2 / 2) * alpha**n / math.sqrt(math.factorial(n))
        assert state.amplitude((n,)) == pytest.approx(expected, abs=1e-10)


def test_squeeze_vacuum_amplitudes():
    space = make_space(1, 40)
    beta = 0.3 * np.exp(0.7j)
    r = abs(beta)
    state = squeeze(space, 1, beta).apply(StateVector.basis(space, (0,)))
    assert state.amplitude((0,)) == pytest.approx(1 / math.sqrt(math.cosh(r)), abs=1e-9)
    expected_2 = np.exp(0.7j) * math.tanh(r) / (math.sqrt(2) * math.sqrt(math.cosh(r)))
    assert state.amplitude((2,)) == pytest.approx(expected_2, abs=1e-9)
    assert state.amplitude((1,)) == 0


def test_beam_splitter_rotates_single_photon():
    space = make_space(2, 4)
    theta, phi = 0.4, 0.3
    state = beam_splitter(space, 1, 2, theta * np.exp(1j * phi)).apply(
        StateVector.basis(space, (0, 1))
    )
    assert state.amplitude((0, 1)) == pytest.approx(math.cos(theta), abs=1e-12)
    assert state.amplitude((1, 0)) == pytest.approx(np.exp(1j * phi) * math.sin(theta), abs=1e-12)


def test_two_mode_squeeze_pairs_photons():
    space = make_space(2, 20)
    mu = 0.3 * np.exp(-0.5j)
    r = abs(mu)
    state = two_mode_squeeze(space, 1, 2, mu).apply(StateVector.basis(space, (0, 0)))
    assert state.amplitude((0, 0)) == pytest.approx(1 / math.cosh(r), abs=1e-9)
    assert state.amplitude((1, 1)) == pytest.approx(
        np.exp(-0.5j) * math.tanh(r) / math.cosh(r), abs=1e-9
    )
    assert state.amplitude((1, 0)) == 0


def test_two_mode_operators_need_distinct_modes():
    space = make_space(2, 4)
    with pytest.raises(InvalidArgumentError):
        beam_splitter(space, 1, 1, 0.1)
    with pytest.raises(InvalidArgumentError):
        two_mode_squeeze(space, 2, 3, 0.1)


def test_composite_w_is_unitary(rng):
    spec = ModelSpec.two_qubit(cutoff=8)
    for _ in range(3):
        w = composite_w(spec, random_point(spec, rng))
        assert unitarity_defect(w.entries) < 1e-10


def test_composite_w_factor_order():
    spec = ModelSpec.two_qubit(cutoff=6)
    space = spec.space
    alpha, beta = 0.2 - 0.1j, 0.15 + 0.05j

    only_alpha = spec.point({"alpha1_re": alpha.real, "alpha1_im": alpha.imag})
    np.testing.assert_array_equal(
        composite_w(spec, only_alpha).entries, displacement(space, 1, alpha).entries
    )

    both = spec.point(
        {"alpha1_re": alpha.real, "alpha1_im": alpha.imag, "beta1_re": beta.real, "beta1_im": beta.imag}
    )
    expected = displacement(space, 1, alpha) @ squeeze(space, 1, beta)
    np.testing.assert_allclose(composite_w(spec, both).entries, expected.entries, atol=1e-14)

    np.testing.assert_array_equal(composite_w(spec, spec.origin()).entries, np.eye(space.dim))


def test_two_qubit_coordinates():
    spec = ModelSpec.two_qubit(cutoff=4)
    assert spec.parameter_names == ("alpha1", "beta1", "lambda1", "mu1", "alpha2", "beta2")
    assert spec.n_coordinates == 12
    assert spec.coordinate_names[:3] == ("alpha1_re", "alpha1_im", "beta1_re")
    assert spec.coordinate_index("lambda1_re") == 4
    assert spec.coordinate_index(11) == 11
    assert [f.modes for f in spec.factors] == [(1,), (1,), (1, 2), (1, 2), (2,), (2,)]
    with pytest.raises(UnknownCoordinateError):
        spec.coordinate_index("mu7_re")
    with pytest.raises(UnknownCoordinateError):
        spec.coordinate_index(12)


def test_n_qubit_factor_table():
    spec = ModelSpec.n_qubit(3, cutoff=3)
    assert spec.n_coordinates == 2 * (4 * 3 - 2)
    assert spec.parameter_names == (
        "alpha1", "beta1", "lambda1", "mu1",
        "alpha2", "beta2", "lambda2", "mu2",
        "alpha3", "beta3",
    )
    pairs = [f.modes for f in spec.factors if f.kind == FactorKind.BEAM_SPLITTER]
    assert pairs == [(1, 3), (2, 3)]
    assert spec.m == 8


def test_n_qubit_two_matches_preset_factors():
    assert ModelSpec.n_qubit(2, 4).factors == ModelSpec.two_qubit(4).factors


def test_single_mode_model():
    spec = ModelSpec.single_mode(cutoff=5)
    assert spec.parameter_names == ("alpha1", "beta1")
    assert spec.m == 2


def test_model_constraints():
    with pytest.raises(InvalidArgumentError):
        ModelSpec(ModelKind.TWO_QUBIT, 3, 4)
    with pytest.raises(InvalidArgumentError):
        ModelSpec(ModelKind.N_QUBIT, 0, 4)
    with pytest.raises(ResourceBudgetError):
        ModelSpec.two_qubit(cutoff=100)


def test_points_are_tied_to_their_model():
    two = ModelSpec.two_qubit(cutoff=4)
    three = ModelSpec.n_qubit(3, cutoff=3)
    with pytest.raises(ModelMismatchError):
        composite_w(two, three.origin())
    with pytest.raises(ModelMismatchError):
        two.point_from_coords(np.zeros(5))
    point = two.point({"mu1_im": 0.25})
    assert point.value(3) == 0.25j
    assert point.as_dict(two)["mu1_im"] == 0.25


def test_vacuum_frame_columns():
    spec = ModelSpec.two_qubit(cutoff=3)
    frame = vacuum_frame(spec)
    assert frame.m == 4
    assert frame.gram_defect() == 0.0
    hot = [int(np.flatnonzero(frame.columns[:, k])[0]) for k in range(4)]
    assert hot == [spec.space.index(o) for o in [(0, 0), (0, 1), (1, 0), (1, 1)]]


def test_expm_skew_rejects_hermitian_input():
    with pytest.raises(ContractViolationError):
        expm_skew(np.array([[1.0, 0.0], [0.0, 2.0]], dtype=complex))
    np.testing.assert_array_equal(expm_skew(np.zeros((3, 3), dtype=complex)), np.eye(3))


def test_expm_with_derivative_matches_finite_differences(rng):
    x = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
    generator = 0.3 * (x - x.conj().T)
    direction = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))

    unitary, derivative = expm_with_derivative(generator, direction)
    np.testing.assert_allclose(unitary, scipy.linalg.expm(generator), atol=1e-13)

    h = 1e-3

    def f(t):
        return scipy.linalg.expm(generator + t * direction)

    fd = (-f(2 * h) + 8 * f(h) - 8 * f(-h) + f(-2 * h)) / (12 * h)
    np.testing.assert_allclose(derivative, fd, atol=1e-8)


def test_expm_with_derivative_at_zero_generator():
    direction = np.array([[0, 1], [-1, 0]], dtype=complex)
    unitary, derivative = expm_with_derivative(np.zeros((2, 2), dtype=complex), direction)
    np.testing.assert_array_equal(unitary, np.eye(2))
    np.testing.assert_array_equal(derivative, direction)


def test_expm_antihermitian_of_number_phase():
    space = make_space(1, 4)
    flip = expm_antihermitian(number_op(space, 1) * (1j * np.pi))
    np.testing.assert_allclose(flip.entries, np.diag([1, -1, 1, -1]), atol=1e-12)


def test_expm_antihermitian_matches_eigendecomposition(rng):
    space = make_space(1, 6)
    x = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
    hermitian = 0.5 * (x + x.conj().T)
    values, vectors = np.linalg.eigh(hermitian)
    expected = vectors @ np.diag(np.exp(1j * values)) @ vectors.conj().T

    unitary = expm_antihermitian(Op(space, 1j * hermitian))
    np.testing.assert_allclose(unitary.entries, expected, atol=1e-11)
    assert unitarity_defect(unitary.entries) < 1e-12


def test_displacement_vacuum_overlap_and_adjoint():
    space = make_space(1, 48)
    assert displacement(space, 1, 1.0).entries[0, 0] == pytest.approx(math.exp(-0.5), abs=1e-10)

    small = make_space(1, 20)
    alpha = 0.4 - 0.25j
    np.testing.assert_allclose(
        displacement(small, 1, alpha).dagger().entries,
        displacement(small, 1, -alpha).entries,
        atol=1e-12,
    )


@pytest.mark.parametrize(
    "alpha, alpha_prime",
    [(0.5, 0.5j), (0.3 - 0.2j, -0.4 + 0.1j), (0.5j, -0.35 - 0.35j)],
)
def test_displacements_compose_up_to_phase(alpha, alpha_prime):
    space = make_space(1, 48)
    product = displacement(space, 1, alpha) @ displacement(space, 1, alpha_prime)
    combined = displacement(space, 1, alpha + alpha_prime)
    assert abs(product.entries[0, 0]) == pytest.approx(abs(combined.entries[0, 0]), abs=1e-8)


def test_two_mode_operators_conserve_their_numbers_exactly():
    space = make_space(2, 6)
    total = number_op(space, 1) + number_op(space, 2)
    difference = number_op(space, 1) - number_op(space, 2)

    u = beam_splitter(space, 1, 2, 0.4 + 0.3j).entries
    v = two_mode_squeeze(space, 1, 2, -0.2 + 0.35j).entries
    assert not (u @ total.entries - total.entries @ u).any()
    assert not (v @ difference.entries - difference.entries @ v).any()


def test_low_matrix_elements_converge_in_cutoff():
    values = {"alpha1_re": 0.4, "alpha1_im": -0.3, "beta1_im": 0.3}
    blocks = []
    for cutoff in (24, 48):
        spec = ModelSpec.single_mode(cutoff)
        blocks.append(composite_w(spec, spec.point(values)).entries[:3, :3])
    assert np.max(np.abs(blocks[0] - blocks[1])) < 1e-8
