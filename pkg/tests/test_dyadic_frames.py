import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from stabinv import frames
from stabinv.dyadic import DyadicOmega, SQRT2_INV
from stabinv.frames import BRAS, COMMUTATION, ELEMENTARY, Elementary, frame_code

W = cmath.exp(1j * math.pi / 4)

dyadics = st.builds(
    DyadicOmega,
    st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5), st.integers(-4, 6),
)


@given(dyadics, dyadics)
def test_arithmetic_matches_complex(x, y):
    assert cmath.isclose(complex(x + y), complex(x) + complex(y), abs_tol=1e-9)
    assert cmath.isclose(complex(x * y), complex(x) * complex(y), abs_tol=1e-9)
    assert cmath.isclose(complex(x - y), complex(x) - complex(y), abs_tol=1e-9)
    assert cmath.isclose(complex(x.conjugate()), complex(x).conjugate(), abs_tol=1e-9)


@given(dyadics, dyadics)
def test_equality_is_value_equality(x, y):
    same = cmath.isclose(complex(x), complex(y), abs_tol=1e-9)
    assert (x == y) == same
    if same:
        assert hash(x) == hash(y)


def test_canonical_representation():
    # 2 * 2^(-2/2) and sqrt2 * 2^(-1/2) are both 1
    assert DyadicOmega(2, 0, 0, 0, 2) == DyadicOmega(1)
    assert DyadicOmega(1, 0, 1, 0, 0) * SQRT2_INV == DyadicOmega(1, 0, 1, 0, 1)
    assert (SQRT2_INV * SQRT2_INV).to_tuple() == DyadicOmega(1, 0, 0, 0, 2).to_tuple()
    assert DyadicOmega.from_tuple(DyadicOmega(3, 1, 0, 2, 5).to_tuple()) == DyadicOmega(3, 1, 0, 2, 5)


@pytest.mark.parametrize("m", range(8))
@pytest.mark.parametrize("half", [-3, 0, 1, 6])
def test_omega_power_and_magnitude(m, half):
    v = DyadicOmega.omega_power(m, half)
    assert cmath.isclose(complex(v), W ** m * 2 ** (-half / 2))
    assert v.as_omega_power() == (m, half) or half < 0
    assert v.magnitude_log2() == Fraction(-half, 2)


def test_magnitude_rejects_irrational():
    with pytest.raises(ValueError):
        DyadicOmega(1, 1).magnitude_log2()
    assert DyadicOmega(0).magnitude_log2() is None


def test_elementary_matrices():
    mats = {k: frames.to_numpy(v) for k, v in ELEMENTARY.items()}
    sz = np.diag([1, -1])
    sy = np.array([[0, -1j], [1j, 0]])
    assert np.allclose(mats[Elementary.Sz], sz)
    for kind, gen in (
        (Elementary.SqrtMinusIZ, -1j * sz), (Elementary.SqrtPlusIZ, 1j * sz),
        (Elementary.SqrtMinusIY, -1j * sy), (Elementary.SqrtPlusIY, 1j * sy),
    ):
        u = mats[kind]
        assert np.allclose(u @ u, gen)
        assert np.allclose(u.conj().T @ u, np.eye(2))


def test_bras_are_eigenbras():
    paulis = {"x": np.array([[0, 1], [1, 0]]), "y": np.array([[0, -1j], [1j, 0]]), "z": np.diag([1, -1])}
    for basis in "xyz":
        for sign in (1, -1):
            bra = frames.to_numpy(BRAS[frame_code(basis, sign)])
            assert np.allclose(bra @ paulis[basis], sign * bra)
            assert np.isclose(np.linalg.norm(bra), 1)


def test_commutation_table_against_matrices():
    assert len(COMMUTATION) == 30
    for (basis, sign, tag), (nb, ns) in COMMUTATION.items():
        row = frames.to_numpy(BRAS[frame_code(basis, sign)]) @ frames.to_numpy(ELEMENTARY[tag])
        target = frames.to_numpy(BRAS[frame_code(nb, ns)])
        ratio = row[np.argmax(np.abs(row))] / target[np.argmax(np.abs(row))]
        assert np.allclose(row, ratio * target)
        assert np.isclose(abs(ratio), 1)


def test_kernel_tables_match_literal():
    for (basis, sign, tag), target in COMMUTATION.items():
        code = frames.NEXT_STATE[frame_code(basis, sign), tag]
        assert frames.frame_label(int(code)) == target
        phase = frames.NEXT_PHASE[frame_code(basis, sign), tag]
        row = frames.row_times(BRAS[frame_code(basis, sign)], ELEMENTARY[tag])
        want = tuple(DyadicOmega.omega_power(int(phase)) * b for b in BRAS[code])
        assert row == want
    assert list(frames.ISO_ZERO) == [0, 1, 0, 0, 0, 0]
    with pytest.raises(ValueError):
        frames.NEXT_STATE[0, 0] = 3
