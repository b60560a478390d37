"""Exact separable character transform over Z[zeta_N].

A value in Z[zeta_N] is a length-N coefficient vector; multiplying by
``zeta_N^r`` is a cyclic roll by ``r``. The transform is applied one
coordinate axis at a time, so a group of order ``n`` costs ``n * sum(s_i)``
rolls instead of ``n^2`` products. No floating point is involved.
"""

from __future__ import annotations

import numpy as np

from .cyclotomic import common_order, norm_squared_batch, reduce_coeffs
from .errors import InvalidParameterError, InvariantViolation
from .groups import Group


def character_transform(group: Group, coeffs: np.ndarray, N: int, sign: int = -1) -> np.ndarray:
    """``out[v] = sum_x coeffs[x] * zeta^(sign * <v, x>)`` for every ``v`` in ``group``.

    ``coeffs`` has shape ``(group.size, N)``; ``<v, x> = sum_i v_i x_i / s_i`` as a
    fraction of a full turn, so each ``s_i`` must divide ``N``.
    """
    if any(N % s for s in group.orders):
        raise InvalidParameterError(f"ring order {N} is not a multiple of {group.orders}")
    arr = np.asarray(coeffs).reshape(group.orders + (N,))
    for axis, s in enumerate(group.orders):
        step = N // s
        a = np.moveaxis(arr, axis, 0)
        out = np.zeros_like(a)
        for k in range(s):
            for j in range(s):
                out[k] += np.roll(a[j], (sign * step * j * k) % N, axis=-1)
        arr = np.moveaxis(out, 0, axis)
    return arr.reshape(group.size, N)


def one_hot(exponents: np.ndarray, N: int) -> np.ndarray:
    out = np.zeros((len(exponents), N), dtype=np.int64)
    out[np.arange(len(exponents)), np.asarray(exponents) % N] = 1
    return out


def spectrum_fast(group: Group, values: np.ndarray, h: int) -> tuple[int, np.ndarray]:
    """``|sum_x zeta_h^f(x) zeta^(-<v,x>)|^2`` for every ``v``, as ``(N, reduced)``.

    ``reduced[v]`` holds the coordinates modulo Phi_N (length ``phi(N)``).
    """
    N = common_order(h, *group.orders)
    F = character_transform(group, one_hot(np.asarray(values) * (N // h), N), N, sign=-1)
    return N, reduce_coeffs(norm_squared_batch(F), N)


def autocorrelation_fast(group: Group, values: np.ndarray, h: int) -> tuple[int, np.ndarray]:
    """All periodic autocorrelations via the squared spectrum.

    Returns ``(N, coeffs)`` with ``coeffs[w]`` the reduced coordinates of
    ``AC(w)`` in Z[zeta_N], zero padded to length ``N``.
    """
    N = common_order(h, *group.orders)
    F = character_transform(group, one_hot(np.asarray(values) * (N // h), N), N, sign=-1)
    back = reduce_coeffs(character_transform(group, norm_squared_batch(F), N, sign=-1), N)
    if np.any(back % group.size):
        raise InvariantViolation("inverse transform is not divisible by the group order")
    out = np.zeros((group.size, N), dtype=np.int64)
    out[:, : back.shape[-1]] = back // group.size
    return N, out
