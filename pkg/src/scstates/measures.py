"""Entanglement measures for SC states.

Negativity, realignment, and relative entropy all reduce to N x N
arithmetic on the coefficient matrix.  Concurrence of mixed states is
handled by closed forms where they exist (rank one, or N = 2) and by a
convex-roof minimizer otherwise; the minimizer only ever evaluates valid
ensemble decompositions, so its result is always a true upper bound.
"""

import enum
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .errors import EigenConvergenceError
from .separability import realignment_norm
from .states import SCState, new_sc_state

#: Eigenvalues of the coefficient matrix below this count as zero when
#: determining rank (matches the spectral-ensemble drop threshold).
RANK_TOL = 1e-12

#: Eigenvalues/populations below this are treated as exact zeros in
#: entropy sums (0 * log 0 = 0 convention).
LOG_CLAMP = 1e-15


def negativity(state: SCState) -> float:
    """Negativity: half the absolute sum of off-diagonal coefficients.

    Equals (trace norm of the partial transpose - 1)/2 and also
    (realignment_norm - 1)/2.  Ranges over [0, (N-1)/2]; zero exactly on
    separable states, maximal only for the uniform GHZ coefficient matrix.
    """
    a = state.a
    off = np.abs(a).sum() - np.abs(np.diagonal(a)).sum()
    return float(0.5 * off)


def _pure_overlap_sum(amplitudes: np.ndarray) -> float:
    """1 - sum_m |c_m|^4, the linear-entropy core of the pure formulas."""
    p = np.abs(np.asarray(amplitudes)) ** 2
    return float(max(p.sum() ** 2 - (p**2).sum(), 0.0))


def concurrence_pure_bipartite(psi) -> float:
    """Pure-state concurrence sqrt(2(1 - Tr rho_1^2)) across any 1|rest cut.

    Accepts a PureSCState or a bare amplitude vector.  For SC pure states
    the single-party reduction is diag(|c_m|^2), so the trace purity is
    sum |c_m|^4 regardless of which party is singled out.
    """
    amplitudes = getattr(psi, "amplitudes", psi)
    return float(np.sqrt(2.0 * _pure_overlap_sum(amplitudes)))


def concurrence_pure_multipartite(psi) -> float:
    """Generalized k-party pure concurrence sqrt(k(1 - sum|c_m|^4)).

    All k single-party reductions of a pure SC state are the same
    diagonal matrix, so the k bipartite contributions are equal and the
    generalized measure is sqrt(k) times the shared linear entropy root.
    Range [0, sqrt(k(1 - 1/N))].
    """
    k = psi.parties
    return float(np.sqrt(k * _pure_overlap_sum(psi.amplitudes)))


class ConcurrenceMethod(str, enum.Enum):
    """How the `exact` field of a ConcurrenceReport was (or wasn't) obtained."""

    PURE_CLOSED_FORM = "pure_closed_form"
    QUBIT_CLOSED_FORM = "qubit_closed_form"
    BOUNDS_ONLY = "bounds_only"
    ROOF_OPTIMIZER = "roof_optimizer"


@dataclass(frozen=True, eq=False)
class ConcurrenceReport:
    """Concurrence bounds, an exact value when available, and provenance.

    Invariants: 0 <= lower <= upper, and lower <= exact <= upper when
    exact is present (up to 1e-9 optimizer dust, which is clamped away
    when the roof value lands a few ulp under the lower bound).
    """

    lower: float
    upper: float
    exact: Optional[float]
    method: ConcurrenceMethod
    roof_trace: Optional[tuple] = None


class RoofResult(NamedTuple):
    value: float
    trace: tuple
    converged: bool


def _coeff_rank(a: np.ndarray) -> int:
    vals = np.linalg.eigvalsh(a)
    return int((vals > RANK_TOL).sum())


def roof_optimizer(
    state: SCState,
    restarts: int = 16,
    max_iter: int = 2000,
    seed=None,
    *,
    multipartite: bool = False,
) -> RoofResult:
    """Minimize the average pure concurrence over ensemble decompositions.

    Every decomposition a = sum_i c_i c_i^dagger is parametrized through a
    left isometry mixing the spectral vectors: with B the rank x N matrix
    of sqrt(eigenvalue)-scaled eigenvectors, the rows of C = U B (U any
    L x rank isometry) form a valid unnormalized ensemble, and every
    ensemble of size L arises this way.  The average concurrence is then

        f(C) = sum_i w * sqrt(S_i),   S_i = sum_{m<n} |C_im C_in|^2,

    with w = 2 for the bipartite objective and w = sqrt(2k) for the
    k-party one (the probabilities cancel into the unnormalized rows).

    Minimization is derivative-free: adaptive-step coordinate descent over
    Givens-style directions (plane rotation or phase rotation of a row
    pair of C — both preserve the isometry, hence the decomposition),
    ensemble sizes swept from rank to 2*rank with ``restarts`` starts
    each, combined by taking the minimum.  Each start is capped at
    ``max_iter`` coordinate attempts and declared converged after 50
    consecutive attempts without an improvement of at least 1e-10.

    Returns the best value, a trace of (attempt index, value) global
    improvements, and whether every start converged before its cap.
    Non-convergence is not an error; the best value found still upper
    bounds the true convex roof.
    """
    a = state.a
    n = state.dim
    weight = np.sqrt(2.0 * state.parties) if multipartite else 2.0
    vals, vecs = np.linalg.eigh(a)
    keep = vals > RANK_TOL
    rank = int(keep.sum())
    if rank == 0:
        raise ValueError("coefficient matrix has no spectral weight")
    b = (vecs[:, keep] * np.sqrt(vals[keep])).T  # rank x N, rows sum back to a

    def row_terms(rows: np.ndarray) -> np.ndarray:
        p2 = np.abs(rows) ** 2
        s = 0.5 * (p2.sum(axis=1) ** 2 - (p2**2).sum(axis=1))
        return weight * np.sqrt(np.maximum(s, 0.0))

    rng = np.random.default_rng(seed)
    best = np.inf
    trace = []
    attempts = 0
    all_converged = True

    for size in range(rank, 2 * rank + 1):
        for start in range(restarts):
            if start == 0:
                ct = np.vstack([b, np.zeros((size - rank, n), dtype=complex)])
            else:
                g = rng.standard_normal((size, rank)) + 1j * rng.standard_normal(
                    (size, rank)
                )
                q, _ = np.linalg.qr(g)
                ct = q @ b
            terms = row_terms(ct)
            f = float(terms.sum())
            if f < best - 1e-14:
                best = f
                trace.append((attempts, f))

            directions = [
                (i, j, kind)
                for i in range(size)
                for j in range(i + 1, size)
                for kind in (0, 1)
            ]
            steps = {d: 0.3 for d in directions}
            stall = 0
            local_attempts = 0
            while directions and local_attempts < max_iter and stall < 50:
                for direction in directions:
                    if local_attempts >= max_iter or stall >= 50:
                        break
                    local_attempts += 1
                    attempts += 1
                    i, j, kind = direction
                    h = steps[direction]
                    c, s = np.cos(h), np.sin(h)
                    ri, rj = ct[i], ct[j]
                    old = terms[i] + terms[j]
                    moved = None
                    for sgn in (s, -s):
                        if kind == 0:
                            ni = c * ri - sgn * rj
                            nj = sgn * ri + c * rj
                        else:
                            ni = c * ri - 1j * sgn * rj
                            nj = -1j * sgn * ri + c * rj
                        cand = row_terms(np.vstack([ni, nj]))
                        df = float(cand.sum()) - old
                        if moved is None or df < moved[0]:
                            moved = (df, ni, nj, cand)
                    df, ni, nj, cand = moved
                    if f + df < f - 1e-14:
                        ct[i], ct[j] = ni, nj
                        terms[i], terms[j] = cand[0], cand[1]
                        f += df
                        steps[direction] = min(h * 1.5, 1.5)
                        stall = 0 if -df >= 1e-10 else stall + 1
                        if f < best - 1e-14:
                            best = f
                            trace.append((attempts, f))
                    else:
                        steps[direction] = max(h * 0.5, 1e-8)
                        stall += 1
            if directions and stall < 50:
                all_converged = False

            # guard against accumulated drift: re-evaluate exactly and
            # confirm the rows still reconstruct the coefficient matrix
            resid = np.abs(ct.T @ ct.conj() - a).max()
            if resid > 1e-9:
                raise RuntimeError(
                    f"ensemble decomposition drifted (residual {resid:.3e})"
                )
            f = float(row_terms(ct).sum())
            if f < best:
                best = f
                trace.append((attempts, f))

    return RoofResult(value=float(best), trace=tuple(trace), converged=all_converged)


def concurrence(
    state: SCState,
    *,
    roof: bool = False,
    restarts: int = 16,
    max_iter: int = 2000,
    seed=None,
) -> ConcurrenceReport:
    """Concurrence report: closed form when available, bounds otherwise.

    lower is (2 sqrt(2) / sqrt(N(N-1))) times the negativity; upper is
    sqrt(2(1 - 1/N)), improved by the roof optimizer when requested.
    exact is filled by the pure closed form for rank-one states and by
    2|a_01| for N = 2 (the lower bound is attained there: the moduli
    matrix [[a_00, |a_01|], [|a_01|, a_11]] is doubly nonnegative, so a
    shared-relative-phase rank-one decomposition achieving it exists).
    """
    a = state.a
    n = state.dim
    neg = negativity(state)
    lower = float(2.0 * np.sqrt(2.0) / np.sqrt(n * (n - 1)) * neg)
    upper = float(np.sqrt(2.0 * (1.0 - 1.0 / n)))
    roof_trace = None

    exact = None
    if _coeff_rank(a) == 1:
        vals, vecs = np.linalg.eigh(a)
        exact = concurrence_pure_bipartite(vecs[:, -1] * np.sqrt(vals[-1]))
        method = ConcurrenceMethod.PURE_CLOSED_FORM
    elif n == 2:
        exact = float(2.0 * abs(a[0, 1]))
        method = ConcurrenceMethod.QUBIT_CLOSED_FORM
    elif roof:
        method = ConcurrenceMethod.ROOF_OPTIMIZER
    else:
        method = ConcurrenceMethod.BOUNDS_ONLY

    if roof:
        result = roof_optimizer(state, restarts=restarts, max_iter=max_iter, seed=seed)
        upper = min(upper, result.value)
        roof_trace = result.trace

    # the optimizer may land a few ulp below the true value; the exact
    # value and lower bound are valid upper-bound floors, so clamp
    floor = max(lower, exact if exact is not None else 0.0)
    upper = max(upper, floor)
    return ConcurrenceReport(
        lower=lower, upper=upper, exact=exact, method=method, roof_trace=roof_trace
    )


@dataclass(frozen=True, eq=False)
class OptimalSeparable:
    """The closest separable state: the diagonal part of the coefficients.

    Dropping every off-diagonal a_mn minimizes the relative entropy over
    all fully separable states, and the result is PPT by construction.
    """

    diag: np.ndarray

    def as_sc_state(self, parties: int) -> SCState:
        return new_sc_state(parties, self.diag.size, np.diag(self.diag))


def optimal_separable(state: SCState) -> OptimalSeparable:
    d = np.diagonal(state.a).real.copy()
    d.flags.writeable = False
    return OptimalSeparable(diag=d)


def relative_entropy(state: SCState, log_base: float = 2.0) -> float:
    """Relative entropy of entanglement, via the N x N shortcut.

    Equals S(rho || sigma*) with sigma* the diagonal part of the state:
    sum_i lambda_i log lambda_i - sum_m a_mm log a_mm, where lambda_i are
    the coefficient-matrix eigenvalues.  Terms with weight <= 1e-15 are
    dropped (0 log 0 = 0); the result is clamped at 0 against rounding.
    """
    a = state.a
    try:
        vals = np.linalg.eigvalsh(a)
    except np.linalg.LinAlgError as exc:
        raise EigenConvergenceError(
            f"eigendecomposition of the coefficient matrix failed: {exc}"
        ) from exc
    diag = np.diagonal(a).real

    def plogp(p: np.ndarray) -> float:
        p = p[p > LOG_CLAMP]
        return float((p * np.log(p)).sum())

    value = (plogp(vals) - plogp(diag)) / np.log(log_base)
    return max(value, 0.0)
