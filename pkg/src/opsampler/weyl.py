"""Weyl calculus on the finite phase space Z_L x Z_L.

The quantization map between phase-space functions (L x L complex arrays
indexed ``F[x, omega]``) and Hilbert-Schmidt operators, together with its
relatives: cross-Wigner distributions, the symplectic Fourier transform on
the full phase space, the phase-weighted trace transform and the
short-time Fourier transform.

Normalization conventions, fixed once so that every map below is exactly
unitary or self-inverse:

* ``cross_wigner`` / ``weyl_symbol``: plain sum over the chord variable t
  with a global factor L**-0.5,

      a_S(x, omega) = L**-0.5 * sum_t S[x + c*t, x - c*t] * exp(-2*pi*i*omega*t/L)

  where c = (L+1)//2 is the inverse of 2 mod L.  With this choice
  ``<S, T>_HS == <weyl_symbol(S), weyl_symbol(T)>`` holds exactly.
* ``symplectic_ft``: factor 1/L, making it self-inverse and unitary.
* ``fourier_wigner``: factor L**-0.5 together with the half-phase
  ``exp(-2*pi*i*c*x*omega/L)``.  The sign of the half-phase is the one for
  which ``fourier_wigner(S) == symplectic_ft(weyl_symbol(S))`` identically
  (the opposite sign breaks that identity); it is frozen here and covered
  by tests.

DFT lengths never exceed L, so ``numpy.fft`` is used for the inner sums;
the results agree with direct summation to machine precision.
"""

from __future__ import annotations

import numpy as np

from .core import (
    _as_operator,
    _as_signal,
    _char,
    _reduce_point,
    half_inverse,
    translate_operator,
)

__all__ = [
    "cross_wigner",
    "weyl_symbol",
    "weyl_transform",
    "symplectic_ft",
    "fourier_wigner",
    "stft",
    "translate_phase",
    "translation_covariance_check",
]


def _as_phase_function(F) -> np.ndarray:
    F = np.asarray(F, dtype=complex)
    if F.ndim != 2 or F.shape[0] != F.shape[1]:
        raise ValueError(f"phase-space function must be a square array, got shape {F.shape}")
    return F


def cross_wigner(psi, phi) -> np.ndarray:
    """Cross-Wigner distribution of two signals.

    W(psi, phi)(x, omega) =
        L**-0.5 * sum_t psi(x + c*t) * conj(phi(x - c*t)) * exp(-2*pi*i*omega*t/L)

    with c the inverse of 2 mod L.  Equals the Weyl symbol of the rank-one
    operator psi (x) phi, and satisfies the Moyal identity
    <W(psi1, phi1), W(psi2, phi2)> = <psi1, psi2> * conj(<phi1, phi2>).
    """
    psi = _as_signal(psi)
    phi = _as_signal(phi)
    if psi.shape != phi.shape:
        raise ValueError(f"size mismatch: {psi.shape} vs {phi.shape}")
    L = psi.shape[0]
    c = half_inverse(L)
    x = np.arange(L)[:, None]
    t = np.arange(L)[None, :]
    g = psi[(x + c * t) % L] * np.conj(phi[(x - c * t) % L])
    return np.fft.fft(g, axis=1) / np.sqrt(L)


def weyl_symbol(S) -> np.ndarray:
    """Weyl symbol of a Hilbert-Schmidt operator.

    a_S(x, omega) = L**-0.5 * sum_t S[x + c*t, x - c*t] * exp(-2*pi*i*omega*t/L).

    Unitary from operators (HS inner product) onto phase-space functions;
    ``weyl_transform`` is its exact inverse.
    """
    S = _as_operator(S)
    L = S.shape[0]
    c = half_inverse(L)
    x = np.arange(L)[:, None]
    t = np.arange(L)[None, :]
    g = S[(x + c * t) % L, (x - c * t) % L]
    return np.fft.fft(g, axis=1) / np.sqrt(L)


def weyl_transform(F) -> np.ndarray:
    """Operator with the given Weyl symbol (exact inverse of weyl_symbol).

    Kernel: out[u, v] = L**-0.5 * sum_omega F(c*(u+v), omega) * exp(2*pi*i*omega*(u-v)/L).
    """
    F = _as_phase_function(F)
    L = F.shape[0]
    c = half_inverse(L)
    g = np.sqrt(L) * np.fft.ifft(F, axis=1)
    u = np.arange(L)[:, None]
    v = np.arange(L)[None, :]
    return g[(c * (u + v)) % L, (u - v) % L]


def symplectic_ft(F) -> np.ndarray:
    """Symplectic Fourier transform on the full phase space.

    out(z) = (1/L) * sum_{z'} F(z') * exp(-2*pi*i*sigma(z, z')/L)

    with sigma(z, z') = omega*x' - omega'*x.  Self-inverse and unitary.
    """
    F = _as_phase_function(F)
    # (1/L) sum_{x'} e^{-2 pi i omega x'/L} [ sum_{omega'} F(x',omega') e^{+2 pi i omega' x/L} ]
    # inner bracket = L * ifft over omega'; outer sum = fft over x'; 1/L cancels the L.
    return np.fft.fft(np.fft.ifft(F, axis=1), axis=0).T


def fourier_wigner(S) -> np.ndarray:
    """Phase-weighted trace transform of an operator.

    out(x, omega) = L**-0.5 * exp(-2*pi*i*c*x*omega/L) * tr(pi(-z) S),
    where tr(pi(-z) S) = sum_t exp(-2*pi*i*omega*t/L) * S[t + x, t].

    Coincides exactly with ``symplectic_ft(weyl_symbol(S))``.
    """
    S = _as_operator(S)
    L = S.shape[0]
    c = half_inverse(L)
    x = np.arange(L)[:, None]
    t = np.arange(L)[None, :]
    d = S[(t + x) % L, t]
    trp = np.fft.fft(d, axis=1)
    half = _char(-c * np.outer(np.arange(L), np.arange(L)), L)
    return half * trp / np.sqrt(L)


def stft(phi, psi) -> np.ndarray:
    """Short-time Fourier transform of ``phi`` with window ``psi``.

    out(x, omega) = <phi, pi(z) psi> = sum_t phi(t) * conj(psi(t - x)) * exp(-2*pi*i*omega*t/L).
    """
    phi = _as_signal(phi)
    psi = _as_signal(psi)
    if psi.shape != phi.shape:
        raise ValueError(f"size mismatch: {phi.shape} vs {psi.shape}")
    L = phi.shape[0]
    x = np.arange(L)[:, None]
    t = np.arange(L)[None, :]
    m = phi[None, :] * np.conj(psi[(t - x) % L])
    return np.fft.fft(m, axis=1)


def translate_phase(z, F) -> np.ndarray:
    """Translate a phase-space function: out(w) = F(w - z)."""
    F = _as_phase_function(F)
    L = F.shape[0]
    x, w = _reduce_point(z, L)
    return np.roll(F, (x, w), axis=(0, 1))


def translation_covariance_check(F, z) -> float:
    """HS-norm residual of the covariance identity at the point z.

    Quantizing a translated symbol must agree with translating the
    quantized operator; returns
    ``|| weyl_transform(translate_phase(z, F)) - alpha_z(weyl_transform(F)) ||``.
    """
    F = _as_phase_function(F)
    direct = weyl_transform(translate_phase(z, F))
    conjugated = translate_operator(z, weyl_transform(F))
    return float(np.linalg.norm(direct - conjugated))
