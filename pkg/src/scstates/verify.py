"""Cross-validation suite: closed forms vs the dense oracle.

Each residual function recomputes one closed-form quantity by brute force
on the explicit N^k x N^k matrices (dense construction + the internal
Jacobi eigensolver, never the fast path) and returns the absolute
disagreement.  ``run_suite`` aggregates them over random states into the
JSON summary used by the command-line ``oracle-verify``.
"""

import numpy as np

from . import measures, oracle, separability, slocc
from .oracle import DEFAULT_SIZE_GUARD
from .states import SCState, random_pure_sc_state, random_sc_state

#: Checks compared at a looser tolerance than the rest of the suite
#: (logarithms amplify eigenvalue dust near the support boundary).
RELATIVE_ENTROPY_TOL_FLOOR = 1e-8


def _all_proper_subsets(parties: int):
    full = range(1, parties + 1)
    for mask in range(1, 2**parties - 1):
        yield [p for p in full if mask & (1 << (p - 1))]


def pt_spectrum_residual(state: SCState, *, size_guard: int = DEFAULT_SIZE_GUARD) -> float:
    """Closed-form PT spectrum vs dense eigenvalues, over ALL proper subsets."""
    rho = oracle.dense_from_sc(state, size_guard=size_guard)
    dims = [state.dim] * state.parties
    expected = separability.pt_spectrum(state).eigenvalues()
    worst = 0.0
    for subset in _all_proper_subsets(state.parties):
        pt = oracle.partial_transpose(rho, subset, dims)
        vals, _ = oracle.hermitian_eigen(pt)
        worst = max(worst, float(np.abs(vals - expected).max()))
    return worst


def realignment_residual(state: SCState, *, size_guard: int = DEFAULT_SIZE_GUARD) -> float:
    """Sum-of-moduli closed form vs trace norm of the realigned dense matrix."""
    rho = oracle.dense_from_sc(state, size_guard=size_guard)
    n, k = state.dim, state.parties
    r = oracle.realign(rho, n, n ** (k - 1))
    dense = oracle.trace_norm(r)
    return abs(dense - separability.realignment_norm(state))


def negativity_residual(state: SCState, *, size_guard: int = DEFAULT_SIZE_GUARD) -> float:
    """Closed-form negativity vs (trace norm of the dense PT - 1)/2."""
    rho = oracle.dense_from_sc(state, size_guard=size_guard)
    dims = [state.dim] * state.parties
    pt = oracle.partial_transpose(rho, [1], dims)
    dense = 0.5 * (oracle.trace_norm(pt) - 1.0)
    return abs(dense - measures.negativity(state))


def relative_entropy_residual(
    state: SCState, log_base: float = 2.0, *, size_guard: int = DEFAULT_SIZE_GUARD
) -> float:
    """N x N relative-entropy shortcut vs the dense two-matrix computation."""
    rho = oracle.dense_from_sc(state, size_guard=size_guard)
    sigma_state = measures.optimal_separable(state).as_sc_state(state.parties)
    sigma = oracle.dense_from_sc(sigma_state, size_guard=size_guard)
    dense = oracle.relative_entropy_dense(rho, sigma, log_base)
    return abs(dense - measures.relative_entropy(state, log_base))


def state_spectrum_residual(state: SCState, *, size_guard: int = DEFAULT_SIZE_GUARD) -> float:
    """Dense spectrum of rho vs coefficient-matrix spectrum plus padding zeros."""
    rho = oracle.dense_from_sc(state, size_guard=size_guard)
    vals, _ = oracle.hermitian_eigen(rho)
    small = np.linalg.eigvalsh(state.a)
    expected = np.sort(np.concatenate([small, np.zeros(vals.size - small.size)]))
    return float(np.abs(vals - expected).max())


def random_product_mixture(parties: int, dim: int, rng, max_components: int = 4):
    """A random fully separable density source: mixture of product pure states.

    Returns (weights, vectors) with each vector a full product-state
    amplitude vector of length dim**parties; the implied density matrix
    sum_i w_i |v_i><v_i| is separable by construction.
    """
    count = int(rng.integers(1, max_components + 1))
    weights = rng.dirichlet(np.ones(count))
    vectors = []
    for _ in range(count):
        v = np.ones(1, dtype=complex)
        for _ in range(parties):
            local = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
            local /= np.linalg.norm(local)
            v = np.kron(v, local)
        vectors.append(v)
    return weights, vectors


def _mixture_expectation(w: separability.Witness, weights, vectors) -> float:
    """Tr[W sigma] through the sparse terms; no dense sigma is built."""
    total = 0.0 + 0.0j
    for r, c, v in w.terms:
        entry = sum(
            wt * vec[c] * np.conj(vec[r]) for wt, vec in zip(weights, vectors)
        )
        total += v * entry
    return float(total.real)


def witness_residuals(
    state: SCState,
    rng,
    separable_samples: int = 500,
    *,
    size_guard: int = DEFAULT_SIZE_GUARD,
):
    """(closed-vs-dense residual on Tr[W rho], min Tr[W sigma] over samples).

    The first number compares both evaluation routes against the exact
    target -sum_{m<n}|a_mn|; the second must stay >= -tol for the witness
    to be valid on separable states.
    """
    w = separability.build_witness(state)
    target = -float(
        sum(abs(state.a[m, j]) for m, j in w.source_pairs)
    )
    closed = separability.witness_expectation(w, state)
    rho = oracle.dense_from_sc(state, size_guard=size_guard)
    dense = float(np.trace(w.to_dense(size_guard=size_guard) @ rho).real)
    residual = max(abs(closed - target), abs(dense - target))
    worst_separable = np.inf
    for _ in range(separable_samples):
        weights, vectors = random_product_mixture(state.parties, state.dim, rng)
        worst_separable = min(
            worst_separable, _mixture_expectation(w, weights, vectors)
        )
    return residual, float(worst_separable)


def _default_splits(parties: int):
    return sorted({1, max(1, parties // 2)})


def bloch_residuals(
    state: SCState,
    splits=None,
    *,
    tol: float = 1e-9,
    size_guard: int = DEFAULT_SIZE_GUARD,
) -> float:
    """Bloch-decomposition structure checks across bipartitions.

    Verifies the SC structural zeros (off-diagonal-generator components
    of both local vectors and the mixed correlation blocks), rebuilds the
    dense state from the expansion, and demands the corner-block
    separability verdict match the off-diagonal test.  Disagreement on
    the verdict returns infinity; otherwise the worst numeric residual.
    """
    if splits is None:
        splits = _default_splits(state.parties)
    sep = separability.is_fully_separable(state, tol)
    rho = oracle.dense_from_sc(state, size_guard=size_guard)
    worst = 0.0
    for split in splits:
        b = separability.bloch_decomposition(state, split, size_guard=size_guard)
        m = state.dim**split
        r_dim = state.dim ** (state.parties - split)
        worst = max(worst, float(np.abs(b.r[m - 1 :]).max(initial=0.0)))
        worst = max(worst, float(np.abs(b.s[r_dim - 1 :]).max(initial=0.0)))
        worst = max(worst, float(np.abs(b.t[: m - 1, r_dim - 1 :]).max(initial=0.0)))
        worst = max(worst, float(np.abs(b.t[m - 1 :, : r_dim - 1]).max(initial=0.0)))
        if separability.check_corollary2(b, tol) != sep:
            return float("inf")

        gens_a = oracle.su_generators(m)
        gens_b = oracle.su_generators(r_dim)
        rec = np.einsum("ac,bd->abcd", np.eye(m, dtype=complex), np.eye(r_dim))
        rec += np.einsum("i,iac,bd->abcd", b.r, gens_a, np.eye(r_dim))
        rec += np.einsum("j,ac,jbd->abcd", b.s, np.eye(m, dtype=complex), gens_b)
        rec += np.einsum("ij,iac,jbd->abcd", b.t, gens_a, gens_b)
        rec = rec.reshape(rho.shape) / (m * r_dim)
        worst = max(worst, float(np.abs(rec - rho).max()))
    return worst


def slocc_residual(psi) -> float:
    """Uniformity of the filtered state: moduli at 1/sqrt(t), one global phase.

    Also requires the filter to preserve the support and the class label;
    any structural mismatch returns infinity.
    """
    cls = slocc.classify_pure(psi)
    f = slocc.build_filter(psi)
    out = slocc.apply_filter(f, psi)
    if slocc.classify_pure(out).t != cls.t:
        return float("inf")
    on = np.abs(psi.amplitudes) > slocc.SUPPORT_TOL
    if not np.array_equal(on, np.abs(out.amplitudes) > slocc.SUPPORT_TOL):
        return float("inf")
    z = out.amplitudes[on] * np.sqrt(cls.t)
    worst = float(np.abs(np.abs(z) - 1.0).max())
    worst = max(worst, float(np.abs(z - z[0]).max()))
    return worst


def separability_votes(
    state: SCState,
    *,
    tol: float = 1e-9,
    splits=None,
    size_guard: int = DEFAULT_SIZE_GUARD,
) -> dict:
    """The four independent separability verdicts, for agreement tests."""
    if splits is None:
        splits = _default_splits(state.parties)
    corner = all(
        separability.check_corollary2(
            separability.bloch_decomposition(state, s, size_guard=size_guard), tol
        )
        for s in splits
    )
    return {
        "off_diagonal": separability.is_fully_separable(state, tol),
        "realignment": abs(separability.realignment_norm(state) - 1.0) <= tol,
        "bloch_corner": corner,
        "pt_nonnegative": separability.pt_spectrum(state).min_eigenvalue() >= -tol,
    }


def run_suite(
    parties: int,
    dim: int,
    samples: int = 50,
    seed=0,
    tol: float = 1e-9,
    *,
    size_guard: int = DEFAULT_SIZE_GUARD,
    separable_samples: int = 500,
) -> dict:
    """Full closed-form-vs-oracle validation on random states.

    Runs every residual check on ``samples`` Ginibre states (plus the
    SLOCC filter check on as many random pure states) and returns a
    JSON-able summary with per-check worst residuals and verdicts.  The
    relative-entropy comparison passes at max(tol, 1e-8); everything
    else at ``tol``.
    """
    oracle.check_size_guard(dim**parties, size_guard)
    rng = np.random.default_rng(seed)
    names = [
        "pt_spectrum",
        "realignment",
        "negativity",
        "relative_entropy",
        "state_spectrum",
        "witness",
        "bloch",
        "slocc",
    ]
    worst = {name: 0.0 for name in names}
    worst_separable = np.inf

    for _ in range(samples):
        state = random_sc_state(parties, dim, rng)
        worst["pt_spectrum"] = max(
            worst["pt_spectrum"], pt_spectrum_residual(state, size_guard=size_guard)
        )
        worst["realignment"] = max(
            worst["realignment"], realignment_residual(state, size_guard=size_guard)
        )
        worst["negativity"] = max(
            worst["negativity"], negativity_residual(state, size_guard=size_guard)
        )
        worst["relative_entropy"] = max(
            worst["relative_entropy"],
            relative_entropy_residual(state, size_guard=size_guard),
        )
        worst["state_spectrum"] = max(
            worst["state_spectrum"],
            state_spectrum_residual(state, size_guard=size_guard),
        )
        w_res, w_sep = witness_residuals(
            state, rng, separable_samples, size_guard=size_guard
        )
        worst["witness"] = max(worst["witness"], w_res)
        worst_separable = min(worst_separable, w_sep)
        worst["bloch"] = max(
            worst["bloch"], bloch_residuals(state, tol=tol, size_guard=size_guard)
        )
        support = int(rng.integers(2, dim + 1))
        psi = random_pure_sc_state(parties, dim, rng, support_size=support)
        worst["slocc"] = max(worst["slocc"], slocc_residual(psi))

    checks = {}
    for name in names:
        check_tol = tol
        if name == "relative_entropy":
            check_tol = max(tol, RELATIVE_ENTROPY_TOL_FLOOR)
        entry = {
            "max_residual": float(worst[name]),
            "tol": check_tol,
            "pass": bool(worst[name] <= check_tol),
        }
        if name == "witness":
            entry["min_separable_expectation"] = float(worst_separable)
            entry["pass"] = bool(entry["pass"] and worst_separable >= -tol)
        checks[name] = entry

    return {
        "k": parties,
        "N": dim,
        "samples": samples,
        "seed": seed if isinstance(seed, int) else None,
        "tol": tol,
        "checks": checks,
        "pass": all(entry["pass"] for entry in checks.values()),
    }
