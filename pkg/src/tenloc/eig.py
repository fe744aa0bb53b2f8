"""Numerical tensor eigenpairs.

An eigenpair of an order-m tensor is a scalar/vector pair with
``A x^{m-1} = lambda * x^[m-1]`` componentwise, where ``x^[k]`` is the
componentwise k-th power.  Two independent solvers are provided: Newton
iteration on the defining polynomial system from random starts, and a
shifted power iteration for the extreme real eigenvalues of even-order
symmetric real tensors.  Both are best-effort; neither promises to
enumerate the full spectrum.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .tensor import Tensor, is_symmetric, row_radius

__all__ = [
    "EigenPair",
    "apply",
    "newton_eigenpairs",
    "power_vector",
    "shifted_power_extreme",
]

_DEDUP_TOL = 1e-6
_POWER_SEED = 1787569  # fixed: the signature takes no seed, output must be stable


@dataclass(frozen=True, eq=False)
class EigenPair:
    """One computed eigenpair.

    ``vector`` is canonical: unit max-norm with the largest-modulus component
    real and positive.  ``residual`` is the max-norm of
    ``A x^{m-1} - value * x^[m-1]`` for the canonical vector.  ``kind`` is
    ``"h_real"`` when both the value and the vector are real (to rounding),
    else ``"general"``.
    """

    value: complex
    vector: np.ndarray
    residual: float
    kind: str


def power_vector(x, k: int) -> np.ndarray:
    """Componentwise k-th power ``x^[k]``."""
    if k < 1:
        raise ValueError(f"power must be at least 1, got {k}")
    return np.asarray(x) ** k


class _Contraction:
    """Flattened entry arrays for vectorized apply/Jacobian evaluation."""

    def __init__(self, t: Tensor):
        rows = []
        suffixes = []
        values = []
        for idx, value in t.items():  # lexicographic, fixes summation order
            rows.append(idx[0] - 1)
            suffixes.append([c - 1 for c in idx[1:]])
            values.append(value)
        k = len(values)
        self.rows = np.asarray(rows, dtype=np.intp)
        self.suffixes = (
            np.asarray(suffixes, dtype=np.intp)
            if k
            else np.empty((0, t.order - 1), dtype=np.intp)
        )
        self.values = np.asarray(values, dtype=np.complex128)
        self.real_values = (
            self.values.real.copy() if np.all(self.values.imag == 0.0) else None
        )


def _contraction(t: Tensor) -> _Contraction:
    cache = t._contraction
    if cache is None:
        cache = _Contraction(t)
        t._contraction = cache
    return cache


def apply(t: Tensor, x) -> np.ndarray:
    """The contraction ``A x^{m-1}``: component i sums
    ``a[i, i2, ..., im] * x[i2] * ... * x[im]`` over all suffix tuples."""
    x = np.asarray(x, dtype=np.complex128)
    if x.shape != (t.dim,):
        raise ValueError(f"vector has shape {x.shape}, expected ({t.dim},)")
    c = _contraction(t)
    out = np.zeros(t.dim, dtype=np.complex128)
    if c.values.size:
        np.add.at(out, c.rows, c.values * np.prod(x[c.suffixes], axis=1))
    return out


def _apply_real(t: Tensor, x: np.ndarray, sign: float) -> np.ndarray:
    """Real fast path for ``sign * A x^{m-1}`` (real tensor, real x)."""
    c = _contraction(t)
    out = np.zeros(t.dim, dtype=np.float64)
    if c.values.size:
        np.add.at(
            out, c.rows, (sign * c.real_values) * np.prod(x[c.suffixes], axis=1)
        )
    return out


def _jacobian(t: Tensor, x: np.ndarray) -> np.ndarray:
    """Jacobian of ``A x^{m-1}``: explicit sum over slot positions, so no
    symmetry assumption is needed."""
    c = _contraction(t)
    n = t.dim
    J = np.zeros((n, n), dtype=np.complex128)
    if not c.values.size:
        return J
    P = x[c.suffixes]  # (k, m-1)
    k, s = P.shape
    loo = np.ones_like(P)
    if s > 1:
        acc = np.ones(k, dtype=P.dtype)
        for col in range(1, s):
            acc = acc * P[:, col - 1]
            loo[:, col] = acc
        acc = np.ones(k, dtype=P.dtype)
        for col in range(s - 2, -1, -1):
            acc = acc * P[:, col + 1]
            loo[:, col] *= acc
    contrib = c.values[:, None] * loo
    np.add.at(J, (np.repeat(c.rows, s), c.suffixes.ravel()), contrib.ravel())
    return J


def _canonical_pair(t: Tensor, lam: complex, x: np.ndarray) -> EigenPair | None:
    mags = np.abs(x)
    k = int(np.argmax(mags))
    if mags[k] == 0.0 or not np.all(np.isfinite(x)) or not np.isfinite(lam):
        return None
    xc = x / x[k]
    resid = apply(t, xc) - lam * xc ** (t.order - 1)
    residual = float(np.max(np.abs(resid)))
    real = (
        abs(lam.imag) <= 1e-8 * (1.0 + abs(lam))
        and float(np.max(np.abs(xc.imag))) <= 1e-8
    )
    return EigenPair(
        value=complex(lam),
        vector=xc,
        residual=residual,
        kind="h_real" if real else "general",
    )


def newton_eigenpairs(
    t: Tensor,
    num_starts: int = 30,
    seed: int = 0,
    tol: float = 1e-10,
    max_iter: int = 60,
) -> list[EigenPair]:
    """Eigenpairs found by Newton iteration from random starts.

    Each start solves the n+1 equations ``A x^{m-1} - lambda x^[m-1] = 0``
    and ``conj(u) . x = 1`` for a fixed random affine chart vector ``u``;
    the chart keeps the system square and holomorphic.  Start ``k`` draws
    its initial vector from a generator seeded with ``seed + k``, so runs
    are reproducible and starts are independent.  Converged pairs
    (canonical residual below ``tol``) are deduplicated by eigenvalue
    within 1e-6 and returned sorted by (Re, Im).  Best effort only: an
    empty result is legal.
    """
    n, m = t.dim, t.order
    base = np.random.default_rng(seed)
    u = base.standard_normal(n) + 1j * base.standard_normal(n)
    candidates: list[EigenPair] = []
    for k in range(num_starts):
        rng = np.random.default_rng(seed + k)
        x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        chart = np.vdot(u, x)
        if abs(chart) < 1e-12:
            continue
        x = x / chart
        w = x ** (m - 1)
        y = apply(t, x)
        lam = np.vdot(w, y) / np.vdot(w, w)
        converged = False
        for _ in range(max_iter):
            w = x ** (m - 1)
            F = np.empty(n + 1, dtype=np.complex128)
            F[:n] = apply(t, x) - lam * w
            F[n] = np.vdot(u, x) - 1.0
            fnorm = float(np.max(np.abs(F)))
            if not np.isfinite(fnorm):
                break
            if fnorm < 1e-13 * (1.0 + abs(lam)):
                converged = True
                break
            J = np.zeros((n + 1, n + 1), dtype=np.complex128)
            J[:n, :n] = _jacobian(t, x)
            J[:n, :n] -= np.diag((m - 1) * lam * x ** (m - 2))
            J[:n, n] = -w
            J[n, :n] = np.conj(u)
            try:
                step = np.linalg.solve(J, -F)
            except np.linalg.LinAlgError:
                break
            x = x + step[:n]
            lam = lam + step[n]
        if not converged:
            continue
        pair = _canonical_pair(t, lam, x)
        if pair is not None and pair.residual < tol:
            candidates.append(pair)
    candidates.sort(key=lambda p: p.residual)
    kept: list[EigenPair] = []
    for pair in candidates:
        if all(abs(pair.value - q.value) > _DEDUP_TOL for q in kept):
            kept.append(pair)
    kept.sort(key=lambda p: (p.value.real, p.value.imag))
    return kept


def shifted_power_extreme(
    t: Tensor,
    want: str = "smallest",
    shift: float | str = "auto",
    tol: float = 1e-10,
    max_iter: int = 10_000,
    num_starts: int = 12,
) -> EigenPair:
    """Extreme real eigenpair of an even-order symmetric real tensor.

    Runs a shifted power iteration: ``y = B x^{m-1} + shift * x^[m-1]``,
    then ``x <- normalize(y^[1/(m-1)])`` (odd root, sign preserving, since
    m is even).  Fixed points solve the eigen equation for ``B`` with the
    shift subtracted out exactly.  The smallest eigenvalue is computed as
    the negated largest of ``-A``, which carries the same eigenvectors.
    ``shift="auto"`` uses ``1 + sum_i r_i + max_i |a_ii...i|``, large enough
    to make the update a small, monotone step in practice.  The best
    converged pair over ``num_starts`` deterministic restarts is returned.
    """
    if want not in ("largest", "smallest"):
        raise ValueError(f"want must be 'largest' or 'smallest', got {want!r}")
    if t.order % 2:
        raise ValueError("extreme eigenpair iteration requires even order")
    if not t.is_real:
        raise ValueError("extreme eigenpair iteration requires real entries")
    if not is_symmetric(t):
        raise ValueError("extreme eigenpair iteration requires a symmetric tensor")
    n, m = t.dim, t.order
    diag = np.array([v.real for v in t.diagonal()])
    if shift == "auto":
        alpha = 1.0 + sum(row_radius(t, i) for i in range(1, n + 1))
        alpha += float(np.max(np.abs(diag))) if n else 0.0
    else:
        alpha = float(shift)
    sign = 1.0 if want == "largest" else -1.0
    root = 1.0 / (m - 1)
    best: tuple[float, float, np.ndarray] | None = None  # (lam_A, resid, x)
    for start in range(num_starts):
        rng = np.random.default_rng(_POWER_SEED + start)
        x = rng.standard_normal(n)
        norm = float(np.linalg.norm(x))
        if norm == 0.0:
            continue
        x = x / norm
        for _ in range(max_iter):
            y = _apply_real(t, x, sign)  # B x^{m-1}
            w = x ** (m - 1)
            lam_b = float(w @ y) / float(w @ w)
            scale = float(np.max(np.abs(x))) ** (m - 1)
            resid = float(np.max(np.abs(y - lam_b * w))) / scale
            if resid < tol:
                lam_a = sign * lam_b
                if (
                    best is None
                    or (want == "largest" and lam_a > best[0])
                    or (want == "smallest" and lam_a < best[0])
                ):
                    best = (lam_a, resid, x.copy())
                break
            z = y + alpha * w
            x_new = np.sign(z) * np.abs(z) ** root
            norm = float(np.linalg.norm(x_new))
            if norm == 0.0 or not np.isfinite(norm):
                break
            x = x_new / norm
    if best is None:
        raise RuntimeError(
            f"power iteration did not converge from any of {num_starts} starts"
        )
    lam_a, _, x = best
    pair = _canonical_pair(t, complex(lam_a), x.astype(np.complex128))
    assert pair is not None
    return EigenPair(
        value=pair.value, vector=pair.vector, residual=pair.residual, kind="h_real"
    )
