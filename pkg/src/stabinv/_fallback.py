"""Pure-Python/numpy implementations of the hot kernels.

Same signatures and in-place semantics as the compiled ``_kernels`` module.
Rows are bit-packed little-endian into ``uint64`` words: bit ``c`` of a row
lives in word ``c >> 6`` at position ``c & 63``.
"""

import numpy as np

NAME = "python"

_ONE = np.uint64(1)


def _bit(c):
    return np.uint64(1) << np.uint64(c & 63)


def row_indices(row):
    """Indices of set bits in a packed row, ascending."""
    bits = np.unpackbits(row.view(np.uint8), bitorder="little")
    return np.flatnonzero(bits)


def rref(words, ncols):
    """Reduce ``words`` in place to reduced row echelon form over GF(2).

    Pivot rule: leftmost nonzero column, first available row at or below the
    current pivot row. Returns the list of pivot columns; pivot ``i`` sits in
    row ``i``.
    """
    nrows = words.shape[0]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        col = (words[:, c >> 6] >> np.uint64(c & 63)) & _ONE
        below = np.flatnonzero(col[r:])
        if below.size == 0:
            continue
        p = r + int(below[0])
        if p != r:
            words[[r, p]] = words[[p, r]]
            col[[r, p]] = col[[p, r]]
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            words[hit] ^= words[r]
        pivots.append(c)
        r += 1
    return pivots


def local_complement(adj, a):
    """Toggle every edge among the neighbours of ``a`` (in place)."""
    nbrs = row_indices(adj[a])
    if nbrs.size < 2:
        return
    adj[nbrs] ^= adj[a]
    # each neighbour b just xor-ed itself into its own row; clear the diagonal
    adj[nbrs, nbrs >> 6] ^= np.left_shift(_ONE, (nbrs & 63).astype(np.uint64))


def delete_vertex(adj, a):
    adj[a] = 0
    adj[:, a >> 6] &= ~_bit(a)


def _degrees(adj):
    return np.bitwise_count(adj).sum(axis=1)


def projector_sweep(adj, alive, order, b0_mode, seed,
                    next_state, next_phase, iso_zero, iso_phase, iso_half):
    """Contract every vertex of the graph state in ``adj`` with <+|.

    ``adj`` and ``alive`` are consumed (modified in place). Each vertex
    carries a bra frame: the Pauli eigenbra <j,s| that the original <+| has
    been conjugated into by the byproduct unitaries applied so far. Frame
    codes: 0 x+, 1 x-, 2 y+, 3 y-, 4 z+, 5 z-. Tag codes: 0 sigma_z,
    1 (-i sigma_z)^1/2, 2 (i sigma_z)^1/2, 3 (-i sigma_y)^1/2,
    4 (i sigma_y)^1/2.

    Returns ``(is_zero, omega_exponent mod 8, half_powers)`` with the
    amplitude equal to omega**omega_exponent * 2**(-half_powers/2).
    """
    n = adj.shape[0]
    frame = np.zeros(n, dtype=np.int64)
    omega = 0
    half = 0
    rng = np.random.default_rng(seed) if b0_mode == 1 else None
    alive = alive.astype(bool, copy=True)
    remaining = int(alive.sum())
    step = 0
    while remaining:
        if len(order):
            a = int(order[step])
            if not alive[a]:
                raise ValueError(f"vertex {a} repeated or absent in order")
        else:
            deg = _degrees(adj)
            deg = np.where(alive, deg, np.iinfo(np.int64).max)
            a = int(np.argmin(deg))
        step += 1
        f = int(frame[a])
        nbrs = row_indices(adj[a])
        if nbrs.size == 0:
            if iso_zero[f]:
                return True, 0, 0
            omega += int(iso_phase[f])
            half += int(iso_half[f])
        else:
            half += 1
            basis, sign = divmod(f, 2)
            if basis == 2:
                delete_vertex(adj, a)
                if sign:
                    omega += _fold(frame, nbrs, 0, next_state, next_phase)
            elif basis == 1:
                omega += (-1 if sign else 1) * (nbrs.size - 1)
                local_complement(adj, a)
                delete_vertex(adj, a)
                omega += _fold(frame, nbrs, 2 if sign else 1, next_state, next_phase)
            else:
                b0 = int(nbrs[rng.integers(nbrs.size)]) if b0_mode == 1 else int(nbrs[0])
                nb0 = row_indices(adj[b0])
                if sign:
                    zs = np.setdiff1d(nb0, nbrs)
                    zs = zs[zs != a]
                else:
                    zs = np.setdiff1d(nbrs, nb0)
                    zs = zs[zs != b0]
                local_complement(adj, b0)
                local_complement(adj, a)
                local_complement(adj, b0)
                delete_vertex(adj, a)
                omega += _fold(frame, np.array([b0]), 3 if sign else 4, next_state, next_phase)
                if zs.size:
                    omega += _fold(frame, zs, 0, next_state, next_phase)
        alive[a] = False
        remaining -= 1
    return False, omega % 8, half


def _fold(frame, verts, tag, next_state, next_phase):
    """Push the bra frames of ``verts`` through one byproduct ``tag``."""
    old = frame[verts]
    frame[verts] = next_state[old, tag]
    return int(next_phase[old, tag].sum())
