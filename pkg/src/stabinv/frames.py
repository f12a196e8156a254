"""Single-qubit data for the projector engine.

The five elementary byproduct unitaries, the Pauli eigenbras, and the
commutation table ``P_{j,s} U = U P_{j',s'}``. Lookup tables used by the
kernels are derived here from exact 2x2 products and checked against the
literal table at import.
"""

import enum

import numpy as np

from .dyadic import DyadicOmega

_W = DyadicOmega.omega_power
_H = DyadicOmega(1, 0, 0, 0, 1)  # 1/sqrt2


class Elementary(enum.IntEnum):
    """Byproduct unitaries; the integer value is the kernel tag code."""

    Sz = 0
    SqrtMinusIZ = 1  # (-i sigma_z)^(1/2)
    SqrtPlusIZ = 2  # (i sigma_z)^(1/2)
    SqrtMinusIY = 3  # (-i sigma_y)^(1/2)
    SqrtPlusIY = 4  # (i sigma_y)^(1/2)


BASES = ("x", "y", "z")


def frame_code(basis, sign):
    """Encode ``(basis, sign)`` with sign +1/-1 as 0..5 (x+, x-, y+, y-, z+, z-)."""
    return 2 * BASES.index(basis) + (0 if sign > 0 else 1)


def frame_label(code):
    return BASES[code // 2], (1 if code % 2 == 0 else -1)


_ZERO = DyadicOmega(0)
_ONE = DyadicOmega(1)

ELEMENTARY = {
    Elementary.Sz: ((_ONE, _ZERO), (_ZERO, -_ONE)),
    Elementary.SqrtMinusIZ: ((_W(7), _ZERO), (_ZERO, _W(1))),
    Elementary.SqrtPlusIZ: ((_W(1), _ZERO), (_ZERO, _W(7))),
    Elementary.SqrtMinusIY: ((_H, -_H), (_H, _H)),
    Elementary.SqrtPlusIY: ((_H, _H), (-_H, _H)),
}

# rows are the bras <x+|, <x-|, <y+|, <y-|, <z+|, <z-|
BRAS = (
    (_H, _H),
    (_H, -_H),
    (_H, _W(6) * _H),
    (_H, _W(2) * _H),
    (_ONE, _ZERO),
    (_ZERO, _ONE),
)

PLUS_KET = (_H, _H)

# literal commutation table: (basis, sign, tag) -> (basis', sign')
COMMUTATION = {}
for _s in (1, -1):
    COMMUTATION.update({
        ("x", _s, Elementary.Sz): ("x", -_s),
        ("y", _s, Elementary.Sz): ("y", -_s),
        ("z", _s, Elementary.Sz): ("z", _s),
        ("x", _s, Elementary.SqrtMinusIZ): ("y", -_s),
        ("y", _s, Elementary.SqrtMinusIZ): ("x", _s),
        ("z", _s, Elementary.SqrtMinusIZ): ("z", _s),
        ("x", _s, Elementary.SqrtPlusIY): ("z", -_s),
        ("y", _s, Elementary.SqrtPlusIY): ("y", _s),
        ("z", _s, Elementary.SqrtPlusIY): ("x", _s),
        ("x", _s, Elementary.SqrtMinusIY): ("z", _s),
        ("y", _s, Elementary.SqrtMinusIY): ("y", _s),
        ("z", _s, Elementary.SqrtMinusIY): ("x", -_s),
        ("x", _s, Elementary.SqrtPlusIZ): ("y", _s),
        ("y", _s, Elementary.SqrtPlusIZ): ("x", -_s),
        ("z", _s, Elementary.SqrtPlusIZ): ("z", _s),
    })


def row_times(row, u):
    """Row vector times 2x2 matrix over DyadicOmega."""
    return (row[0] * u[0][0] + row[1] * u[1][0], row[0] * u[0][1] + row[1] * u[1][1])


def matmul2(u, v):
    return tuple(
        tuple(u[i][0] * v[0][j] + u[i][1] * v[1][j] for j in range(2)) for i in range(2)
    )


def bra_ket(row, ket):
    return row[0] * ket[0] + row[1] * ket[1]


def _match_bra(row):
    """Find ``(code, m)`` with ``row == omega**m * BRAS[code]``."""
    for code, bra in enumerate(BRAS):
        for m in range(8):
            w = _W(m)
            if row[0] == w * bra[0] and row[1] == w * bra[1]:
                return code, m
    raise AssertionError(f"{row} is not a scaled Pauli eigenbra")


def _build_tables():
    next_state = np.zeros((6, 5), dtype=np.int8)
    next_phase = np.zeros((6, 5), dtype=np.int8)
    for code, bra in enumerate(BRAS):
        for tag in Elementary:
            new, m = _match_bra(row_times(bra, ELEMENTARY[tag]))
            next_state[code, tag] = new
            next_phase[code, tag] = m
    iso_zero = np.zeros(6, dtype=np.int8)
    iso_phase = np.zeros(6, dtype=np.int8)
    iso_half = np.zeros(6, dtype=np.int8)
    for code, bra in enumerate(BRAS):
        amp = bra_ket(bra, PLUS_KET)
        if amp.is_zero():
            iso_zero[code] = 1
            continue
        m, half = amp.as_omega_power()
        iso_phase[code] = m
        iso_half[code] = half
    return next_state, next_phase, iso_zero, iso_phase, iso_half


def _check_against_literal(next_state):
    assert len(COMMUTATION) == 30
    for (basis, sign, tag), target in COMMUTATION.items():
        got = frame_label(int(next_state[frame_code(basis, sign), tag]))
        if got != target:
            raise AssertionError(f"commutation mismatch at {(basis, sign, tag.name)}: {got} vs {target}")


NEXT_STATE, NEXT_PHASE, ISO_ZERO, ISO_PHASE, ISO_HALF = _build_tables()
_check_against_literal(NEXT_STATE)
for _t in (NEXT_STATE, NEXT_PHASE, ISO_ZERO, ISO_PHASE, ISO_HALF):
    _t.flags.writeable = False


def to_numpy(u):
    """Complex numpy copy of a 2x2 DyadicOmega matrix (or a length-2 vector)."""
    return np.array([[complex(x) for x in r] for r in u]) if isinstance(u[0], tuple) else np.array([complex(x) for x in u])
