import itertools
import math

import numpy as np
import pytest

from optical_hqc.engine.fock_core import (AlgebraKind, Op, StateVector,
                                          annihilator, apply_local,
                                          commutator, creator, embed,
                                          make_space, number_op,
                                          protected_projector, schwinger_su2,
                                          schwinger_su11, weyl_generator)
from optical_hqc.engine.optics_ops import FactorKind, local_raising
from optical_hqc.utils.exceptions import (InvalidArgumentError,
                                          ResourceBudgetError,
                                          SpaceMismatchError)


def restricted(op, projector):
    return projector.entries @ op.entries @ projector.entries


def test_make_space_dimensions():
    space = make_space(2, 5)
    assert space.dim == 25
    assert space.shape == (5, 5)


def test_make_space_rejects_bad_arguments():
    with pytest.raises(InvalidArgumentError):
        make_space(0, 4)
    with pytest.raises(InvalidArgumentError):
        make_space(2, 1)


def test_make_space_enforces_budget():
    with pytest.raises(ResourceBudgetError, match="8000"):
        make_space(3, 20)
    assert make_space(3, 20, dim_budget=10000).dim == 8000


def test_index_is_row_major_with_mode_one_most_significant():
    space = make_space(2, 4)
    assert space.index((1, 2)) == 6
    assert space.occupation(6) == (1, 2)
    assert [tuple(row) for row in space.occupations()[:5]] == [
        (0, 0), (0, 1), (0, 2), (0, 3), (1, 0)
    ]
    with pytest.raises(InvalidArgumentError):
        space.index((4, 0))


def test_ladder_operators_on_basis_states():
    space = make_space(1, 6)
    a = annihilator(space, 1)
    a_dag = creator(space, 1)

    lowered = a.apply(StateVector.basis(space, (3,)))
    assert lowered.amplitude((2,)) == pytest.approx(math.sqrt(3))
    assert lowered.norm() == pytest.approx(math.sqrt(3))

    raised = a_dag.apply(StateVector.basis(space, (2,)))
    assert raised.amplitude((3,)) == pytest.approx(math.sqrt(3))

    # the creation operator annihilates the top level
    assert a_dag.apply(StateVector.basis(space, (5,))).norm() == 0.0


def test_creator_is_exact_adjoint():
    space = make_space(2, 5)
    for mode in (1, 2):
        np.testing.assert_array_equal(
            creator(space, mode).entries, annihilator(space, mode).entries.conj().T
        )


def test_number_operator_is_exact_integer_diagonal():
    space = make_space(2, 4)
    n2 = number_op(space, 2)
    np.testing.assert_array_equal(np.diag(n2.entries).real, space.occupations()[:, 1])
    assert np.count_nonzero(n2.entries - np.diag(np.diag(n2.entries))) == 0


def test_canonical_commutator_on_protected_subspace():
    space = make_space(2, 16)
    keep = protected_projector(space, margin=1)
    identity = Op.identity(space)
    for mode in (1, 2):
        a = annihilator(space, mode)
        defect = restricted(commutator(a, a.dagger()) - identity, keep)
        assert np.max(np.abs(defect)) <= 1e-12
    cross = commutator(annihilator(space, 1), creator(space, 2))
    assert np.max(np.abs(cross.entries)) <= 1e-12


def test_truncated_commutator_fails_only_at_top_level():
    space = make_space(1, 6)
    a = annihilator(space, 1)
    expected = np.eye(6)
    expected[-1, -1] = -5.0
    np.testing.assert_allclose(commutator(a, a.dagger()).entries, expected, atol=1e-12)


def test_su2_relations():
    space = make_space(2, 16)
    keep = protected_projector(space, margin=1)
    j_plus, j_minus, j_3 = schwinger_su2(space)

    np.testing.assert_allclose(commutator(j_3, j_plus).entries, j_plus.entries, atol=1e-12)
    np.testing.assert_allclose(commutator(j_3, j_minus).entries, -j_minus.entries, atol=1e-12)
    defect = restricted(commutator(j_plus, j_minus) - 2 * j_3, keep)
    assert np.max(np.abs(defect)) <= 1e-12


def test_su11_relations():
    space = make_space(2, 16)
    keep = protected_projector(space, margin=1)
    k_plus, k_minus, k_3 = schwinger_su11(space)

    np.testing.assert_allclose(commutator(k_3, k_plus).entries, k_plus.entries, atol=1e-12)
    np.testing.assert_allclose(commutator(k_3, k_minus).entries, -k_minus.entries, atol=1e-12)
    defect = restricted(commutator(k_minus, k_plus) - 2 * k_3, keep)
    assert np.max(np.abs(defect)) <= 1e-12


def test_schwinger_needs_distinct_modes():
    space = make_space(2, 4)
    with pytest.raises(InvalidArgumentError):
        schwinger_su2(space, 1, 1)


@pytest.mark.parametrize(
    "n_modes, cutoff, algebra",
    [
        (2, 16, AlgebraKind.U_N),
        (3, 5, AlgebraKind.U_N),
        (2, 16, AlgebraKind.U_N1_1),
        (3, 5, AlgebraKind.U_N1_1),
    ],
)
def test_weyl_generator_relations(n_modes, cutoff, algebra):
    """[E_ij, E_kl] = g_jk E_il - g_il E_kj with g = 1 for u(n) and diag(1..1, -1) for u(n-1,1)"""
    space = make_space(n_modes, cutoff)
    keep = protected_projector(space, margin=2)
    metric = [1.0] * n_modes
    if algebra == AlgebraKind.U_N1_1:
        metric[-1] = -1.0
    modes = range(1, n_modes + 1)
    generators = {
        (i, j): weyl_generator(space, i, j, algebra) for i in modes for j in modes
    }
    zero = np.zeros((space.dim, space.dim), dtype=complex)

    for (i, j), (k, l) in itertools.product(generators, repeat=2):
        lhs = commutator(generators[(i, j)], generators[(k, l)]).entries
        rhs = zero.copy()
        if j == k:
            rhs += metric[j - 1] * generators[(i, l)].entries
        if i == l:
            rhs -= metric[i - 1] * generators[(k, j)].entries
        defect = keep.entries @ (lhs - rhs) @ keep.entries
        assert np.max(np.abs(defect)) <= 1e-12, (i, j, k, l)


def test_weyl_generator_matches_schwinger():
    space = make_space(2, 6)
    j_plus, _, _ = schwinger_su2(space)
    np.testing.assert_array_equal(weyl_generator(space, 1, 2).entries, j_plus.entries)
    k_plus, _, _ = schwinger_su11(space)
    np.testing.assert_array_equal(
        weyl_generator(space, 1, 2, AlgebraKind.U_N1_1).entries, k_plus.entries
    )


def test_embed_matches_kron_placement():
    space = make_space(3, 4)
    lowering = np.diag(np.sqrt(np.arange(1, 4)), k=1).astype(complex)
    np.testing.assert_allclose(
        embed(space, (2,), lowering).entries, annihilator(space, 2).entries, atol=1e-14
    )

    # non-adjacent pair, local tensor order (1, 3)
    local = local_raising(FactorKind.BEAM_SPLITTER, 2, 4)
    expected = creator(space, 1) @ annihilator(space, 3)
    np.testing.assert_allclose(embed(space, (1, 3), local).entries, expected.entries, atol=1e-14)

    # reversed order swaps the roles of the modes
    swapped = creator(space, 3) @ annihilator(space, 1)
    np.testing.assert_allclose(embed(space, (3, 1), local).entries, swapped.entries, atol=1e-14)


def test_apply_local_agrees_with_full_operator(rng):
    space = make_space(2, 5)
    columns = rng.standard_normal((space.dim, 3)) + 1j * rng.standard_normal((space.dim, 3))
    local = local_raising(FactorKind.TWO_MODE_SQUEEZE, 2, 5)
    full = creator(space, 1) @ creator(space, 2)
    np.testing.assert_allclose(
        apply_local(space, (1, 2), local, columns), full.entries @ columns, atol=1e-13
    )


def test_protected_projector_sectors():
    space = make_space(2, 5)
    assert np.trace(protected_projector(space, 1).entries).real == 16
    assert np.trace(protected_projector(space, 0, max_total=2).entries).real == 6
    with pytest.raises(InvalidArgumentError):
        protected_projector(space, 5)


def test_operators_on_different_spaces_do_not_mix():
    a = annihilator(make_space(1, 4), 1)
    b = annihilator(make_space(1, 5), 1)
    with pytest.raises(SpaceMismatchError):
        a @ b
    with pytest.raises(SpaceMismatchError):
        a.apply(StateVector.basis(make_space(1, 5), (0,)))


def test_mode_out_of_range():
    with pytest.raises(InvalidArgumentError):
        annihilator(make_space(2, 4), 3)


def test_operators_of_different_modes_commute():
    space = make_space(3, 5)
    for i, j in itertools.combinations((1, 2, 3), 2):
        lowering = commutator(annihilator(space, i), annihilator(space, j))
        raising = commutator(creator(space, i), creator(space, j))
        assert np.max(np.abs(lowering.entries)) <= 1e-12
        assert np.max(np.abs(raising.entries)) <= 1e-12
