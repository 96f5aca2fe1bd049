"""Unitary DFT between the y-grid and the xi-grid.

Discretises ``g_hat(xi) = (2 pi)**-0.5 * int g(y) exp(-i xi y) dy`` with the
rectangle rule on ``y_j = -L + j dy``.  Since ``xi_k y_j = -pi k + 2 pi k j / N``
the offset of the grid contributes the phase ``exp(i xi_k L) = (-1)**k``.
Frequencies are stored in ascending order ``k = -N/2 .. N/2 - 1``.
With ``dy * dxi = 2 pi / N`` both directions are exact inverses and the
rectangle-rule norms agree (discrete Plancherel).
"""
import numpy as np

_SQRT_2PI = np.sqrt(2.0 * np.pi)


def _phase(n):
    k = np.arange(-n // 2, n // 2)
    return np.where(k % 2, -1.0, 1.0)


def forward(v, grid):
    n = grid.n_points
    return (grid.dy / _SQRT_2PI) * _phase(n) * np.fft.fftshift(np.fft.fft(v))


def inverse(F, grid):
    n = grid.n_points
    return (n * grid.dxi / _SQRT_2PI) * np.fft.ifft(np.fft.ifftshift(_phase(n) * F))
