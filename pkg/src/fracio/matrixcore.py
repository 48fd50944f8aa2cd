"""Small dense real-matrix arithmetic with complex eigendecomposition and
Frobenius-Perron analysis.

Everything is implemented in-repo and sized for n <= 16: LU with partial
pivoting for inversion and solving, balanced Hessenberg reduction plus
shifted QR iteration for eigenvalues, inverse iteration with Rayleigh
refinement for eigenvectors, and power iteration for the Perron pair.
numpy supplies array storage only, not solvers.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegenerateSpectrumError,
    DimensionError,
    NonConvergenceError,
    NonDominantError,
    NotNonnegativeError,
    SingularMatrixError,
)

SINGULARITY_RTOL = 1e-12       # |det| < rtol * max|entry|**n flags singular
EIG_SEPARATION_RTOL = 1e-8     # closer eigenvalues count as degenerate
EIG_RESIDUAL_RTOL = 1e-9       # ||M v - lam v|| <= rtol * ||M||
_QR_MAX_SWEEPS_PER_EV = 60


@dataclass(frozen=True)
class EigenPair:
    """Eigenvalue with its unit-norm eigenvector (phase fixed so the
    largest-modulus component is real positive)."""

    value: complex
    vector: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class SpectralData:
    """Eigenpairs of one matrix together with the Perron data of a
    companion nonnegative matrix."""

    pairs: list[EigenPair]
    perron_value: float
    perron_vector: np.ndarray

    @property
    def values(self) -> np.ndarray:
        return np.array([p.value for p in self.pairs])


def as_square_matrix(M) -> np.ndarray:
    A = np.asarray(M, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] < 1:
        raise DimensionError(f"expected a square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix entries must be finite")
    return A


def _lu_factor(A: np.ndarray):
    """Partial-pivoting LU in place; returns (LU, pivots, det)."""
    n = A.shape[0]
    lu = A.copy()
    piv = np.arange(n)
    det = 1.0 + 0.0j if np.iscomplexobj(lu) else 1.0
    for k in range(n):
        p = k + int(np.argmax(np.abs(lu[k:, k])))
        if p != k:
            lu[[k, p]] = lu[[p, k]]
            piv[[k, p]] = piv[[p, k]]
            det = -det
        pivot = lu[k, k]
        det *= pivot
        if pivot == 0:
            continue
        lu[k + 1:, k] /= pivot
        lu[k + 1:, k + 1:] -= np.outer(lu[k + 1:, k], lu[k, k + 1:])
    return lu, piv, det


def _lu_solve(lu, piv, b):
    x = np.asarray(b, dtype=lu.dtype)[piv].copy()
    n = lu.shape[0]
    for k in range(1, n):
        x[k] -= lu[k, :k] @ x[:k]
    for k in range(n - 1, -1, -1):
        x[k] = (x[k] - lu[k, k + 1:] @ x[k + 1:]) / lu[k, k]
    return x


def det(M) -> float:
    A = as_square_matrix(M)
    _, _, d = _lu_factor(A)
    return float(d)


def _singularity_floor(A: np.ndarray) -> float:
    peak = float(np.max(np.abs(A)))
    return SINGULARITY_RTOL * peak ** A.shape[0]


def solve(M, b):
    """Solve M x = b (real or complex), rejecting singular systems."""
    A = np.asarray(M)
    work = A.astype(complex) if np.iscomplexobj(A) else A.astype(float)
    lu, piv, d = _lu_factor(work)
    floor = SINGULARITY_RTOL * max(float(np.max(np.abs(A))), 1e-300) ** A.shape[0]
    if abs(d) <= floor:
        raise SingularMatrixError(f"singular system (|det|={abs(d):.3e})", det=abs(d))
    return _lu_solve(lu, piv, b)


def invert(M) -> np.ndarray:
    """Matrix inverse via LU; raises SingularMatrixError carrying the
    determinant magnitude when below the scale-aware tolerance."""
    A = as_square_matrix(M)
    lu, piv, d = _lu_factor(A)
    if abs(d) <= _singularity_floor(A):
        raise SingularMatrixError(
            f"matrix is singular to working precision (|det|={abs(d):.3e})",
            det=abs(d),
        )
    n = A.shape[0]
    inv = np.empty_like(A)
    eye = np.eye(n)
    for j in range(n):
        inv[:, j] = _lu_solve(lu, piv, eye[:, j])
    return inv


def _balance(A: np.ndarray) -> np.ndarray:
    """Parlett-Reinsch balancing (radix-2 diagonal similarity)."""
    B = A.copy()
    n = B.shape[0]
    for _ in range(32):
        done = True
        for i in range(n):
            r = float(np.sum(np.abs(B[i, :]))) - abs(B[i, i])
            c = float(np.sum(np.abs(B[:, i]))) - abs(B[i, i])
            if r == 0.0 or c == 0.0:
                continue
            f = 1.0
            while c < r / 2.0:
                c *= 2.0
                r /= 2.0
                f *= 2.0
            while c > r * 2.0:
                c /= 2.0
                r *= 2.0
                f /= 2.0
            if f != 1.0:
                done = False
                B[i, :] /= f
                B[:, i] *= f
        if done:
            break
    return B


def _hessenberg(A: np.ndarray) -> np.ndarray:
    """Householder reduction to upper Hessenberg form."""
    H = A.copy()
    n = H.shape[0]
    for k in range(n - 2):
        x = H[k + 1:, k].copy()
        norm_x = math.sqrt(float(np.dot(x, x)))
        if norm_x == 0.0:
            continue
        v = x.copy()
        v[0] += math.copysign(norm_x, x[0] if x[0] != 0 else 1.0)
        vn = math.sqrt(float(np.dot(v, v)))
        if vn == 0.0:
            continue
        v /= vn
        H[k + 1:, k:] -= 2.0 * np.outer(v, v @ H[k + 1:, k:])
        H[:, k + 1:] -= 2.0 * np.outer(H[:, k + 1:] @ v, v)
    return H


def _wilkinson_shift(a, b, c, d):
    """Eigenvalue of [[a,b],[c,d]] closest to d."""
    tr = a + d
    disc = cmath.sqrt((a - d) * (a - d) + 4.0 * b * c)
    r1 = (tr + disc) / 2.0
    r2 = (tr - disc) / 2.0
    return r1 if abs(r1 - d) < abs(r2 - d) else r2


def _qr_eigenvalues(H: np.ndarray) -> list[complex]:
    """Complex single-shift QR with deflation on an upper Hessenberg
    matrix (Givens-based sweeps)."""
    A = H.astype(complex).copy()
    n = A.shape[0]
    scale = max(float(np.max(np.abs(A))), 1e-300)
    tol = 1e-15
    evs: list[complex] = []
    hi = n
    sweeps = 0
    budget = _QR_MAX_SWEEPS_PER_EV * n
    while hi > 0:
        if hi == 1:
            evs.append(complex(A[0, 0]))
            break
        k = hi - 1
        if abs(A[k, k - 1]) <= tol * (abs(A[k - 1, k - 1]) + abs(A[k, k])) + 1e-300:
            evs.append(complex(A[k, k]))
            hi -= 1
            continue
        lo = k
        while lo > 0 and abs(A[lo, lo - 1]) > tol * (abs(A[lo - 1, lo - 1]) + abs(A[lo, lo])):
            lo -= 1
        sweeps += 1
        if sweeps > budget:
            raise NonConvergenceError("QR iteration failed to converge")
        if sweeps % 17 == 0:
            # exceptional shift to break stalls on symmetric spectra
            mu = A[hi - 1, hi - 1] + 1.5 * abs(A[hi - 1, hi - 2])
        else:
            mu = _wilkinson_shift(
                A[hi - 2, hi - 2], A[hi - 2, hi - 1], A[hi - 1, hi - 2], A[hi - 1, hi - 1]
            )
        blk = A[lo:hi, lo:hi]
        m = hi - lo
        for i in range(m):
            blk[i, i] -= mu
        rots = []
        for i in range(m - 1):
            a_, b_ = blk[i, i], blk[i + 1, i]
            r = math.hypot(abs(a_), abs(b_))
            if r == 0.0:
                c_, s_ = complex(1.0), complex(0.0)
            else:
                c_, s_ = a_ / r, b_ / r
            rots.append((c_, s_))
            top = blk[i, i:].copy()
            bot = blk[i + 1, i:].copy()
            blk[i, i:] = np.conj(c_) * top + np.conj(s_) * bot
            blk[i + 1, i:] = -s_ * top + c_ * bot
        for i, (c_, s_) in enumerate(rots):
            left = blk[: i + 2, i].copy()
            right = blk[: i + 2, i + 1].copy()
            blk[: i + 2, i] = left * c_ + right * s_
            blk[: i + 2, i + 1] = -left * np.conj(s_) + right * np.conj(c_)
        for i in range(m):
            blk[i, i] += mu
    return evs


def _pair_conjugates(evs: list[complex], scale: float) -> list[complex]:
    """Snap a real matrix's spectrum to exact conjugate symmetry."""
    tol = 1e-10 * max(scale, 1.0)
    out: list[complex] = []
    pool = list(evs)
    while pool:
        lam = pool.pop(0)
        if abs(lam.imag) <= tol:
            out.append(complex(lam.real, 0.0))
            continue
        best_i, best_d = None, math.inf
        for i, other in enumerate(pool):
            d = abs(other - lam.conjugate())
            if d < best_d:
                best_i, best_d = i, d
        if best_i is None or best_d > 1e-6 * max(scale, abs(lam)):
            out.append(lam)  # unpaired; refinement settles it
            continue
        partner = pool.pop(best_i)
        merged = (lam + partner.conjugate()) / 2.0
        if merged.imag < 0:
            merged = merged.conjugate()
        out.append(merged)
        out.append(merged.conjugate())
    return out


def _inverse_iteration(A: np.ndarray, lam: complex, seed_shift: int = 0):
    """Refine one eigenpair by shifted inverse iteration with Rayleigh
    updates; returns (value, unit vector, residual)."""
    n = A.shape[0]
    Ac = A.astype(complex)
    scale = max(float(np.max(np.abs(A))), 1e-300)
    if seed_shift:
        rng = np.random.default_rng(12345 + seed_shift)
        v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    else:
        v = np.ones(n, dtype=complex)
    v /= math.sqrt(float(np.vdot(v, v).real))
    mu = complex(lam)
    shift = mu
    residual = math.inf
    eye = np.eye(n)
    for it in range(12):
        lu, piv, _ = _lu_factor(Ac - shift * eye)
        for k in range(n):
            # inverse iteration wants near-singular systems; keep pivots usable
            if abs(lu[k, k]) < 1e-300:
                lu[k, k] = 1e-300
        w = _lu_solve(lu, piv, v)
        mx = float(np.max(np.abs(w)))
        if not math.isfinite(mx) or mx == 0.0:
            # solve blew past float range: nudge the shift off the exact
            # eigenvalue and retry
            shift = mu + (1e-11 * (it + 1)) * scale
            continue
        w = w / mx  # max-normalize first so the 2-norm cannot overflow
        v = w / _vec_norm(w)
        mu_new = complex(np.vdot(v, Ac @ v))
        residual = _vec_norm(Ac @ v - mu_new * v)
        mu = mu_new
        shift = mu
        if residual <= 0.25 * EIG_RESIDUAL_RTOL * scale:
            break
    return mu, v, residual


def _vec_norm(v) -> float:
    return math.sqrt(float(np.vdot(v, v).real))


def _fix_phase(v: np.ndarray) -> np.ndarray:
    i = int(np.argmax(np.abs(v)))
    pivot = v[i]
    if pivot == 0:
        return v
    return v * (pivot.conjugate() / abs(pivot))


def eig(M) -> list[EigenPair]:
    """Full complex eigendecomposition of a real square matrix.

    Eigenpairs come back sorted by descending real part, conjugate pairs
    adjacent with the positive imaginary part first. Raises
    DegenerateSpectrumError when two eigenvalues are closer than the
    separation tolerance: the modal expansions downstream assume simple
    eigenvalues.
    """
    A = as_square_matrix(M)
    n = A.shape[0]
    scale = max(float(np.max(np.abs(A))), 1e-300)
    if n == 1:
        return [EigenPair(complex(A[0, 0]), np.array([1.0 + 0.0j]))]
    raw = _pair_conjugates(_qr_eigenvalues(_hessenberg(_balance(A))), scale)

    refined: dict[int, tuple[complex, np.ndarray]] = {}
    for idx, lam in enumerate(raw):
        if lam.imag < 0:
            continue  # conjugate partner fills this slot below
        mu, v, residual = _inverse_iteration(A, lam)
        if residual > EIG_RESIDUAL_RTOL * scale:
            mu, v, residual = _inverse_iteration(A, lam, seed_shift=idx + 1)
        if residual > EIG_RESIDUAL_RTOL * scale:
            raise NonConvergenceError(
                f"eigenpair refinement stalled at residual {residual:.3e}"
            )
        if abs(mu.imag) <= 1e-10 * max(scale, abs(mu)):
            mu = complex(mu.real, 0.0)
        refined[idx] = (mu, _fix_phase(v))
    for idx, lam in enumerate(raw):
        if idx in refined:
            continue
        partner = None
        for j, (mu, v) in refined.items():
            if j != idx and mu.imag > 0 and abs(raw[j] - lam.conjugate()) <= 1e-6 * max(scale, abs(lam)):
                partner = (mu, v)
                break
        if partner is None:
            mu, v, _ = _inverse_iteration(A, lam)
            refined[idx] = (mu, _fix_phase(v))
        else:
            refined[idx] = (partner[0].conjugate(), _fix_phase(np.conj(partner[1])))

    values = [refined[i][0] for i in range(len(raw))]
    for i in range(len(values)):
        for j in range(i + 1, len(values)):
            gap = abs(values[i] - values[j])
            ref = max(abs(values[i]), abs(values[j]), 1e-30 * scale)
            if gap < EIG_SEPARATION_RTOL * ref:
                raise DegenerateSpectrumError(
                    f"eigenvalues {values[i]:.12g} and {values[j]:.12g} are "
                    f"closer than the separation tolerance"
                )
    pairs = [EigenPair(refined[i][0], refined[i][1]) for i in range(len(raw))]
    pairs.sort(key=lambda p: (-p.value.real, -p.value.imag))
    return pairs


def perron(M) -> tuple[float, np.ndarray]:
    """Frobenius-Perron number and nonnegative eigenvector (scaled to unit
    sum) of a nonnegative matrix, via power iteration."""
    A = as_square_matrix(M)
    low = float(np.min(A))
    if low < -1e-12:
        raise NotNonnegativeError(f"matrix has negative entries (min {low:.3e})")
    if low < 0.0:
        warnings.warn(
            f"clipping tiny negative entries (min {low:.3e}) for Perron analysis",
            stacklevel=2,
        )
        A = np.clip(A, 0.0, None)
    n = A.shape[0]
    v = np.ones(n) / n
    s_prev = 0.0
    converged = False
    for _ in range(20_000):
        w = A @ v
        s = float(np.sum(np.abs(w)))
        if s == 0.0:
            raise NonDominantError("matrix maps the positive cone to zero")
        v = w / s
        if abs(s - s_prev) <= 1e-15 * max(s, 1.0):
            converged = True
            break
        s_prev = s
    if not converged:
        raise NonDominantError(
            "power iteration did not settle; the modulus-maximal eigenvalue "
            "is not a simple positive real one"
        )
    s = float(v @ (A @ v) / (v @ v))  # Rayleigh polish
    v = np.clip(v, 0.0, None)
    v = v / float(np.sum(v))
    if s <= 0.0:
        raise NonDominantError(f"dominant eigenvalue {s:.3e} is not positive")
    return s, v


def char_poly_coefficients(M) -> np.ndarray:
    """Monic characteristic polynomial coefficients via Faddeev-LeVerrier
    (index 0 is the leading one, descending powers)."""
    A = as_square_matrix(M)
    n = A.shape[0]
    coeffs = np.zeros(n + 1)
    coeffs[0] = 1.0
    Mk = np.zeros_like(A)
    eye = np.eye(n)
    for k in range(1, n + 1):
        Mk = A @ Mk + coeffs[k - 1] * eye
        coeffs[k] = -float(np.trace(A @ Mk)) / k
    return coeffs


def char_poly_roots(M) -> list[complex]:
    """Characteristic-polynomial roots by an independent path: closed form
    for n <= 2, companion-matrix eigenvalues above."""
    A = as_square_matrix(M)
    n = A.shape[0]
    if n > 16:
        raise DimensionError("char_poly_roots is sized for n <= 16")
    if n == 1:
        return [complex(A[0, 0])]
    if n == 2:
        tr = float(A[0, 0] + A[1, 1])
        dt = float(A[0, 0] * A[1, 1] - A[0, 1] * A[1, 0])
        disc = cmath.sqrt(tr * tr - 4.0 * dt)
        if abs(disc) == 0.0:
            roots = [complex(tr / 2.0), complex(tr / 2.0)]
        else:
            # stable form: no cancellation in the smaller root
            q = -0.5 * (tr + disc) if tr * disc.real >= 0 else -0.5 * (tr - disc)
            if q == 0:
                roots = [complex(0.0), complex(tr)]
            else:
                roots = [complex(-q), complex(dt) / -q]
    else:
        c = char_poly_coefficients(A)
        comp = np.zeros((n, n))
        comp[0, :] = -c[1:]
        comp[1:, : n - 1] += np.eye(n - 1)
        roots = _pair_conjugates(
            _qr_eigenvalues(_hessenberg(_balance(comp))),
            max(float(np.max(np.abs(comp))), 1e-300),
        )
    roots.sort(key=lambda z: (-z.real, -z.imag))
    return roots


def spectral_data(M, nonnegative_companion=None) -> SpectralData:
    """Eigenpairs of M plus the Perron pair of a companion nonnegative
    matrix (defaults to M itself)."""
    pairs = eig(M)
    target = M if nonnegative_companion is None else nonnegative_companion
    s, v = perron(target)
    return SpectralData(pairs=pairs, perron_value=s, perron_vector=v)
