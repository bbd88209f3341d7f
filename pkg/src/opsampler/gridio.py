"""CSV export formats for phase-space diagnostics.

Three row layouts, all with 17-significant-digit floats:

* full phase-space grids (Weyl symbols, trace transforms):
  header ``x,omega,re,im``, rows row-major in (x, omega);
* dual-grid scalars (periodizations): header ``xi_index,value``;
* transfer matrices: header ``xi_index,m,n,re,im``, rows ordered by
  xi, then m, then n (0-based channel indices).
"""

from __future__ import annotations

import numpy as np

from .report import format_float

__all__ = ["write_phase_grid", "read_phase_grid", "write_dual_values", "write_transfer"]


def write_phase_grid(path, F) -> None:
    F = np.asarray(F, dtype=complex)
    L = F.shape[0]
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("x,omega,re,im\n")
        for x in range(L):
            for w in range(L):
                v = F[x, w]
                fh.write(f"{x},{w},{format_float(v.real)},{format_float(v.imag)}\n")


def read_phase_grid(path, L: int) -> np.ndarray:
    out = np.zeros((L, L), dtype=complex)
    seen = 0
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip()
        if header != "x,omega,re,im":
            raise ValueError(f"unexpected header {header!r} in {path}")
        for line in fh:
            xs, ws, re, im = line.strip().split(",")
            out[int(xs), int(ws)] = float(re) + 1j * float(im)
            seen += 1
    if seen != L * L:
        raise ValueError(f"expected {L * L} rows in {path}, found {seen}")
    return out


def write_dual_values(path, values) -> None:
    values = np.asarray(values, dtype=float)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("xi_index,value\n")
        for i, v in enumerate(values):
            fh.write(f"{i},{format_float(v)}\n")


def write_transfer(path, values) -> None:
    """values: (size, M, N) complex array of per-dual-index matrices."""
    values = np.asarray(values, dtype=complex)
    size, M, N = values.shape
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("xi_index,m,n,re,im\n")
        for xi in range(size):
            for m in range(M):
                for n in range(N):
                    v = values[xi, m, n]
                    fh.write(f"{xi},{m},{n},{format_float(v.real)},{format_float(v.imag)}\n")
