"""Average sampling and reconstruction pipelines for operator subspaces.

The subspace under study is spanned by the lattice translates
``alpha_lambda(S_n)`` of N generator operators.  Its elements are
synthesized from coefficient sequences; sampling an element T against M
averaging operators produces the sequences

    s_m(lambda) = <T, alpha_lambda(Q_m)>_HS,

which equal the convolution system ``A * c`` with filter entries
``A[m, n](lambda) = <symbol(S_n), translate(lambda) symbol(Q_m)>``.
Whenever that system is a frame, left-inverting its transfer matrix
yields reconstruction operators ``H_m`` in the generator span such that

    T = sum_m sum_lambda s_m(lambda) * alpha_lambda(H_m)

recovers every T in the subspace exactly.  For M == N the H_m are unique
(the left inverse is the inverse) and their own samples interpolate the
delta pattern; for M > N the family of left inverses, hence of valid
reconstructor sets, is parametrized by a free transfer matrix C.

Two evaluation routes exist throughout: sums of translated operators, and
sums of translated Weyl symbols quantized once at the end.  Both agree to
machine precision (translation covariance is exact in this model); the
symbol route is used here, the operator route serves as the oracle in the
test suite.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import check_operator, hs_norm, translate_operator
from .errors import SingularTransfer
from .frames import (
    DEFAULT_TOL_FACTOR,
    ConvolutionMatrix,
    FrameReport,
    TransferMatrix,
    dual_sequences,
    frame_bounds,
    gram_matrix_bounds,
    left_inverse_family,
    single_gen_condition,
    transfer_matrix,
)
from .lattice import Lattice, inverse_symplectic_series, symplectic_series
from .weyl import fourier_wigner, symplectic_ft, weyl_symbol, weyl_transform

__all__ = [
    "GeneratorSet",
    "AveragerSet",
    "Reconstructor",
    "synthesize_element",
    "average_samples",
    "sample_filter_matrix",
    "build_reconstructor_single",
    "build_reconstructor_multi",
    "reconstruct",
    "operator_convolve",
    "seq_operator_convolve",
    "interpolation_check",
    "whiten_generator",
    "relative_error",
]


def _check_same_size(A, B):
    if A.shape != B.shape:
        raise ValueError(f"size mismatch: {A.shape} vs {B.shape}")


@dataclass(frozen=True)
class GeneratorSet:
    """N generator operators over a lattice, with cached Weyl symbols."""

    ops: np.ndarray          # (N, L, L)
    lattice: Lattice
    symbols: np.ndarray      # (N, L, L)
    riesz: FrameReport

    @staticmethod
    def build(ops, lattice: Lattice, tol_factor: float = DEFAULT_TOL_FACTOR) -> "GeneratorSet":
        ops = _stack_ops(ops, lattice.L)
        symbols = np.stack([weyl_symbol(op) for op in ops])
        riesz = gram_matrix_bounds(ops, lattice, tol_factor)
        return GeneratorSet(ops, lattice, symbols, riesz)

    @property
    def n(self) -> int:
        return self.ops.shape[0]


@dataclass(frozen=True)
class AveragerSet:
    """M averaging operators over a lattice, with cached Weyl symbols."""

    ops: np.ndarray          # (M, L, L)
    lattice: Lattice
    symbols: np.ndarray

    @staticmethod
    def build(ops, lattice: Lattice) -> "AveragerSet":
        ops = _stack_ops(ops, lattice.L)
        return AveragerSet(ops, lattice, np.stack([weyl_symbol(op) for op in ops]))

    @property
    def m(self) -> int:
        return self.ops.shape[0]


@dataclass(frozen=True)
class Reconstructor:
    """Reconstruction operators H_m plus the left inverse they came from."""

    ops: np.ndarray          # (M, L, L)
    symbols: np.ndarray      # (M, L, L)
    lattice: Lattice
    left_inverse: TransferMatrix
    system_report: FrameReport

    @property
    def m(self) -> int:
        return self.ops.shape[0]


def _stack_ops(ops, L: int) -> np.ndarray:
    arr = np.stack([np.asarray(op, dtype=complex) for op in ops])
    if arr.ndim != 3 or arr.shape[1:] != (L, L):
        raise ValueError(f"expected operators of shape ({L}, {L}), got {arr.shape[1:]}")
    return arr


def _as_coeffs(c, n: int, size: int) -> np.ndarray:
    c = np.asarray(c, dtype=complex)
    if c.ndim == 1:
        c = c[None, :]
    if c.shape != (n, size):
        raise ValueError(f"expected ({n}, {size}) coefficient array, got {c.shape}")
    return c


def _lattice_correlate(F, G, lat: Lattice) -> np.ndarray:
    """seq(i) = <F, translate(lambda_i) G> over the phase-space grid."""
    out = np.empty(lat.size, dtype=complex)
    for i, (x, w) in enumerate(lat.points):
        out[i] = np.vdot(np.roll(G, (x, w), axis=(0, 1)), F)
    return out


def _spread_symbol(c, symbol, lat: Lattice, out=None) -> np.ndarray:
    """Accumulate sum_i c(i) * translate(lambda_i) symbol."""
    if out is None:
        out = np.zeros((lat.L, lat.L), dtype=complex)
    for i, (x, w) in enumerate(lat.points):
        if c[i] != 0:
            out += c[i] * np.roll(symbol, (x, w), axis=(0, 1))
    return out


def synthesize_element(c, gens: GeneratorSet) -> np.ndarray:
    """Element of the generator span with coefficients c: sum c_n(lambda) alpha_lambda(S_n)."""
    c = _as_coeffs(c, gens.n, gens.lattice.size)
    h = np.zeros((gens.lattice.L, gens.lattice.L), dtype=complex)
    for n in range(gens.n):
        _spread_symbol(c[n], gens.symbols[n], gens.lattice, out=h)
    return weyl_transform(h)


def average_samples(T, avg: AveragerSet) -> np.ndarray:
    """Samples s[m, i] = <T, alpha_{lambda_i}(Q_m)>_HS, shape (M, size)."""
    T = np.asarray(T, dtype=complex)
    _check_same_size(T, avg.ops[0])
    aT = weyl_symbol(T)
    return np.stack([_lattice_correlate(aT, sym, avg.lattice) for sym in avg.symbols])


def sample_filter_matrix(gens: GeneratorSet, avg: AveragerSet) -> ConvolutionMatrix:
    """The M x N filter system A[m, n](lambda) = <symbol(S_n), translate(lambda) symbol(Q_m)>.

    Sampling a synthesized element is the same as applying this system to
    its coefficients: average_samples(synthesize_element(c)) == A * c.
    """
    if gens.lattice != avg.lattice:
        raise ValueError("generator and averager sets must share a lattice")
    lat = gens.lattice
    seqs = np.empty((avg.m, gens.n, lat.size), dtype=complex)
    for m in range(avg.m):
        for n in range(gens.n):
            seqs[m, n] = _lattice_correlate(gens.symbols[n], avg.symbols[m], lat)
    return ConvolutionMatrix(lat, seqs)


def build_reconstructor_single(gens: GeneratorSet, q,
                               tol_factor: float = DEFAULT_TOL_FACTOR) -> Reconstructor:
    """Single-generator reconstruction from a scalar filter sequence q.

    Requires the series of q to be zero-free on the dual grid; the dual
    filter p has series 1/series(q), and the reconstruction operator is
    the quantization of sum_lambda p(lambda) translate(lambda) symbol(S).
    """
    if gens.n != 1:
        raise ValueError(f"single-generator path needs exactly one generator, got {gens.n}")
    lat = gens.lattice
    report = single_gen_condition(q, lat, tol_factor)
    if not report.passed:
        raise SingularTransfer(
            f"filter series has a zero at dual index {report.witnesses[0]} "
            f"(min modulus {report.alpha:.3e})",
            witness_xi=report.witnesses[0], witness_point=report.witness_points[0])
    Fq = symplectic_series(np.asarray(q, dtype=complex), lat)
    p = inverse_symplectic_series(1.0 / Fq, lat)
    h = _spread_symbol(p, gens.symbols[0], lat)
    H = weyl_transform(h)
    left = TransferMatrix(lat, (1.0 / Fq)[:, None, None])
    return Reconstructor(H[None, :, :], h[None, :, :], lat, left, report)


def build_reconstructor_multi(gens: GeneratorSet, A: ConvolutionMatrix,
                              C: TransferMatrix | None = None,
                              tol_factor: float = DEFAULT_TOL_FACTOR) -> Reconstructor:
    """Reconstruction operators for a sampling system A (M >= N).

    Left-inverts the transfer matrix (Moore-Penrose for C = None, else the
    C-parametrized member), pulls the dual sequences back to the lattice
    and quantizes sum_n sum_lambda B[n, m](lambda) translate(lambda) symbol(S_n)
    into the m-th reconstruction operator.  Refuses when the system is not
    a frame.
    """
    if A.m < gens.n:
        raise ValueError(f"need at least as many averagers as generators, got M={A.m} < N={gens.n}")
    if A.n != gens.n:
        raise ValueError(f"system has {A.n} input channels but there are {gens.n} generators")
    lat = gens.lattice
    That = transfer_matrix(A)
    report = frame_bounds(That, tol_factor)
    if not report.passed:
        raise SingularTransfer(
            f"sampling system is not a frame: lower bound {report.alpha:.3e} at "
            f"dual index {report.witnesses[0]}",
            witness_xi=report.witnesses[0], witness_point=report.witness_points[0])
    Bhat = left_inverse_family(That, C, tol_factor)
    B = dual_sequences(Bhat)
    symbols = np.zeros((A.m, lat.L, lat.L), dtype=complex)
    for m in range(A.m):
        for n in range(gens.n):
            _spread_symbol(B.seqs[n, m], gens.symbols[n], lat, out=symbols[m])
    ops = np.stack([weyl_transform(h) for h in symbols])
    return Reconstructor(ops, symbols, lat, Bhat, report)


def reconstruct(samples, rec: Reconstructor) -> np.ndarray:
    """Synthesis sum_m sum_lambda s[m](lambda) alpha_lambda(H_m)."""
    s = _as_coeffs(samples, rec.m, rec.lattice.size)
    h = np.zeros((rec.lattice.L, rec.lattice.L), dtype=complex)
    for m in range(rec.m):
        _spread_symbol(s[m], rec.symbols[m], rec.lattice, out=h)
    return weyl_transform(h)


def operator_convolve(S, T) -> np.ndarray:
    """Operator convolution as a phase-space function.

    out(z) = tr(S * alpha_z(T_check)) with T_check the parity conjugation
    of T.  Restricted to lattice points this reproduces average samples:
    <T, alpha_lambda(Q)> = (T conv Q_tilde)(lambda) where Q_tilde is the
    parity conjugation of the adjoint of Q.
    """
    S = np.asarray(S, dtype=complex)
    T = np.asarray(T, dtype=complex)
    _check_same_size(S, T)
    L = S.shape[0]
    Tc = check_operator(T)
    out = np.empty((L, L), dtype=complex)
    St = S.T.copy()
    for x in range(L):
        for w in range(L):
            out[x, w] = np.sum(St * translate_operator((x, w), Tc))
    return out


def seq_operator_convolve(c, S, lat: Lattice) -> np.ndarray:
    """sum_lambda c(lambda) alpha_lambda(S); the span of all such sums is
    the sampling subspace of S."""
    c = np.asarray(c, dtype=complex)
    if c.shape != (lat.size,):
        raise ValueError(f"expected a sequence of length {lat.size}, got {c.shape}")
    S = np.asarray(S, dtype=complex)
    out = np.zeros_like(S)
    for i, (x, w) in enumerate(lat.points):
        if c[i] != 0:
            out += c[i] * translate_operator((x, w), S)
    return out


def interpolation_check(rec: Reconstructor, avg: AveragerSet, tol: float = 1e-9):
    """Check the square-system interpolation pattern of the reconstructors.

    For M == N the samples of each H_n must be the delta pattern
    delta_{n,n'} delta_{lambda,0}.  Returns (passed, max_deviation).
    """
    if rec.m != avg.m:
        raise ValueError(f"reconstructor has {rec.m} channels but averager has {avg.m}")
    n_gens = rec.left_inverse.m
    if rec.m != n_gens:
        raise ValueError(f"interpolation pattern needs a square system, got M={rec.m}, N={n_gens}")
    dev = 0.0
    for n in range(rec.m):
        s = average_samples(rec.ops[n], avg)
        expect = np.zeros_like(s)
        expect[n, 0] = 1.0
        dev = max(dev, float(np.abs(s - expect).max()))
    return dev <= tol, dev


def whiten_generator(S, lat: Lattice, tol_factor: float = DEFAULT_TOL_FACTOR) -> np.ndarray:
    """Generator whose lattice translates are exactly orthonormal.

    Divides the phase-weighted trace transform of S pointwise by the
    square root of |Lattice| times its adjoint-lattice periodization, then
    maps back to an operator.  Refuses when the periodization has a zero
    (the translates of S are not a Riesz sequence).
    """
    S = np.asarray(S, dtype=complex)
    A = fourier_wigner(S)
    mu = lat.adjoint.points
    power = np.zeros((lat.L, lat.L))
    sq = np.abs(A) ** 2
    for x, w in mu:
        power += np.roll(sq, (-x, -w), axis=(0, 1))
    pmin, pmax = float(power.min()), float(power.max())
    if pmin <= tol_factor * pmax:
        flat = int(np.argmin(power))
        z = (flat // lat.L, flat % lat.L)
        xi = _dual_index_of(z, lat)
        raise SingularTransfer(
            f"cannot whiten: periodized spectrum vanishes near dual index {xi}",
            witness_xi=xi, witness_point=_dual_point_of(xi, lat))
    white = A / np.sqrt(lat.size * power)
    return weyl_transform(symplectic_ft(white))


def _dual_index_of(z, lat: Lattice) -> int:
    x = int(z[0]) % lat.n_cols
    w = int(z[1]) % lat.n_rows
    return x * lat.n_rows + w


def _dual_point_of(xi: int, lat: Lattice) -> tuple[int, int]:
    return (int(lat.dual_points[xi, 0]), int(lat.dual_points[xi, 1]))


def relative_error(T_rec, T) -> float:
    """Relative HS-norm reconstruction error."""
    return float(np.linalg.norm(np.asarray(T_rec) - np.asarray(T)) / hs_norm(T))
