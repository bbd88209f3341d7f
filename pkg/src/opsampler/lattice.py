"""Separable lattices in Z_L x Z_L and harmonic analysis on them.

A lattice is the subgroup ``Lambda = a*Z_L x b*Z_L`` for divisors a, b of
L.  Its points are enumerated row-major over the index pair (j, k) with
j in [0, L/a) and k in [0, L/b), i.e. the i-th point is
``(a*j mod L, b*k mod L)`` with ``i = j*(L/b) + k``.  Sequences on the
lattice are flat complex vectors in that enumeration; the order is part
of the on-disk format.

The adjoint (annihilator) lattice is ``(L/b)*Z_L x (L/a)*Z_L``: exactly
the points whose symplectic pairing with every lattice point vanishes
mod L.  The dual grid, the coset representatives of the quotient of the
phase space by the adjoint lattice, is the rectangle
``{(x, omega): 0 <= x < L/b, 0 <= omega < L/a}`` enumerated row-major;
its size equals the lattice size.

The symplectic Fourier series

    F(xi) = sum_lambda c(lambda) * exp(2*pi*i*sigma(lambda, z_xi)/L)

is computed by direct summation against a cached character matrix (the
grids involved are small); it satisfies the Parseval identity
``sum_xi |F(xi)|^2 = |Lambda| * sum_lambda |c(lambda)|^2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .core import validate_mod_size

__all__ = [
    "Lattice",
    "adjoint_lattice",
    "symplectic_series",
    "inverse_symplectic_series",
    "lattice_convolve",
    "involution",
    "translate_seq",
    "periodize_sq",
]


@dataclass(frozen=True)
class Lattice:
    """The separable lattice a*Z_L x b*Z_L with a | L and b | L."""

    L: int
    a: int
    b: int

    def __post_init__(self):
        validate_mod_size(self.L)
        for name in ("a", "b"):
            step = getattr(self, name)
            if not (1 <= step <= self.L) or self.L % step != 0:
                raise ValueError(f"lattice step {name}={step} must divide L={self.L}")

    @property
    def n_rows(self) -> int:
        """Number of distinct first coordinates, L/a."""
        return self.L // self.a

    @property
    def n_cols(self) -> int:
        """Number of distinct second coordinates, L/b."""
        return self.L // self.b

    @property
    def size(self) -> int:
        return self.n_rows * self.n_cols

    @cached_property
    def points(self) -> np.ndarray:
        """(size, 2) integer array of lattice points, canonical order."""
        j = np.arange(self.n_rows)
        k = np.arange(self.n_cols)
        xs = (self.a * j)[:, None] % self.L
        ws = (self.b * k)[None, :] % self.L
        pts = np.stack(np.broadcast_arrays(xs, ws), axis=-1)
        return pts.reshape(-1, 2)

    @cached_property
    def dual_points(self) -> np.ndarray:
        """(size, 2) coset representatives (x, omega), x < L/b, omega < L/a."""
        xs = np.arange(self.n_cols)
        ws = np.arange(self.n_rows)
        pts = np.stack(np.broadcast_arrays(xs[:, None], ws[None, :]), axis=-1)
        return pts.reshape(-1, 2)

    @cached_property
    def adjoint(self) -> "Lattice":
        return Lattice(self.L, self.L // self.b, self.L // self.a)

    def index_of(self, point) -> int:
        """Flat index of a lattice point; raises if the point is not in the lattice."""
        x, w = int(point[0]) % self.L, int(point[1]) % self.L
        if x % self.a != 0 or w % self.b != 0:
            raise ValueError(f"point ({x}, {w}) is not in the lattice {self.a}Z x {self.b}Z mod {self.L}")
        return (x // self.a) * self.n_cols + (w // self.b)

    @cached_property
    def _characters(self) -> np.ndarray:
        """(size, size) matrix exp(2*pi*i*sigma(lambda_i, z_xi)/L), row = xi."""
        lam = self.points
        dual = self.dual_points
        sig = (np.outer(dual[:, 0], lam[:, 1]) - np.outer(dual[:, 1], lam[:, 0])) % self.L
        return np.exp(2j * np.pi * sig / self.L)

    @cached_property
    def _sub_index(self) -> np.ndarray:
        """sub_index[i, i2] = flat index of lambda_i - lambda_i2."""
        j = np.arange(self.n_rows)
        k = np.arange(self.n_cols)
        dj = (j[:, None] - j[None, :]) % self.n_rows
        dk = (k[:, None] - k[None, :]) % self.n_cols
        return (dj[:, None, :, None] * self.n_cols + dk[None, :, None, :]).reshape(self.size, self.size)

    @cached_property
    def _neg_index(self) -> np.ndarray:
        """neg_index[i] = flat index of -lambda_i."""
        j = (-np.arange(self.n_rows)) % self.n_rows
        k = (-np.arange(self.n_cols)) % self.n_cols
        return (j[:, None] * self.n_cols + k[None, :]).reshape(-1)


def adjoint_lattice(lat: Lattice) -> Lattice:
    """The annihilator lattice (L/b)*Z_L x (L/a)*Z_L."""
    return lat.adjoint


def _as_seq(c, lat: Lattice) -> np.ndarray:
    c = np.asarray(c, dtype=complex)
    if c.shape != (lat.size,):
        raise ValueError(f"lattice sequence must have length {lat.size}, got shape {c.shape}")
    return c


def symplectic_series(c, lat: Lattice) -> np.ndarray:
    """Symplectic Fourier series of ``c``, evaluated on the dual grid."""
    return lat._characters @ _as_seq(c, lat)


def inverse_symplectic_series(F, lat: Lattice) -> np.ndarray:
    """Exact inverse of ``symplectic_series``.

    c(lambda) = (1/|Lambda|) * sum_xi F(xi) * exp(-2*pi*i*sigma(lambda, z_xi)/L).
    """
    F = _as_seq(F, lat)
    return lat._characters.conj().T @ F / lat.size


def lattice_convolve(c, d, lat: Lattice) -> np.ndarray:
    """Group convolution (c * d)(lambda) = sum_mu c(mu) d(lambda - mu).

    Diagonalized by the symplectic series: the series of the convolution
    is the pointwise product of the series.
    """
    c = _as_seq(c, lat)
    d = _as_seq(d, lat)
    return d[lat._sub_index] @ c


def involution(c, lat: Lattice) -> np.ndarray:
    """out(lambda) = conj(c(-lambda)); conjugates the symplectic series."""
    c = _as_seq(c, lat)
    return np.conj(c[lat._neg_index])


def translate_seq(point, c, lat: Lattice) -> np.ndarray:
    """out(lambda) = c(lambda - point); ``point`` must lie in the lattice."""
    c = _as_seq(c, lat)
    idx = lat.index_of(point)
    j0, k0 = divmod(idx, lat.n_cols)
    grid = c.reshape(lat.n_rows, lat.n_cols)
    return np.roll(grid, (j0, k0), axis=(0, 1)).reshape(-1)


def periodize_sq(F, lat: Lattice) -> np.ndarray:
    """Adjoint-lattice periodization of |F|^2, on the dual grid.

    out(xi) = (1/|Lambda|) * sum_{mu in adjoint} |F(z_xi + mu)|^2.
    Nonnegative; strictly positive everywhere exactly when the lattice
    translates of the operator behind F form a Riesz sequence.
    """
    F = np.asarray(F, dtype=complex)
    if F.shape != (lat.L, lat.L):
        raise ValueError(f"expected an {lat.L} x {lat.L} phase-space array, got {F.shape}")
    mu = lat.adjoint.points
    pts = (lat.dual_points[:, None, :] + mu[None, :, :]) % lat.L
    vals = F[pts[..., 0], pts[..., 1]]
    return (np.abs(vals) ** 2).sum(axis=1) / lat.size
