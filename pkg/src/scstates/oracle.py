"""Dense brute-force linear algebra used to cross-check every closed form.

Everything here works on explicit N^k x N^k arrays and deliberately avoids
LAPACK-backed decompositions: the eigensolver is a hand-written cyclic
complex Jacobi, so results verified against this module come from a code
path independent of the closed-form implementations (which use
``numpy.linalg`` on the small N x N coefficient matrix where they need
eigenvalues at all).

Multi-index convention, fixed project-wide: basis states of k parties are
flattened row-major with party 1 most significant, i.e. ``|i_1 ... i_k>``
maps to ``((i_1*N + i_2)*N + ...)*N + i_k``.
"""

import numpy as np

from .errors import EigenConvergenceError, NotHermitianError, NotPSDError, SizeGuardError
from .states import PureSCState, SCState

#: Largest total dimension N^k any dense-path operation will construct.
#: 4096-dimensional Jacobi runs already take hours, so the default fence
#: sits just below that (a 6-party 4-level system is refused).
DEFAULT_SIZE_GUARD = 4095


def check_size_guard(dim_total: int, size_guard: int = DEFAULT_SIZE_GUARD) -> None:
    """Raise :class:`SizeGuardError` if a dense construction would be too large."""
    if dim_total > size_guard:
        raise SizeGuardError(
            f"dense dimension {dim_total} exceeds the size guard {size_guard}; "
            f"raise the guard explicitly (or via SC_SIZE_GUARD for the CLI) "
            f"if you really want this"
        )


def repeated_basis_index(level: int, parties: int, dim: int) -> int:
    """Flat index of |m m ... m> (k repetitions of digit m, base N)."""
    idx = 0
    for _ in range(parties):
        idx = idx * dim + level
    return idx


def normalize_party_subset(subset, parties: int, *, proper: bool = False) -> tuple:
    """Validate a 1-based party subset; returns it sorted and deduplicated."""
    idx = sorted(set(int(p) for p in subset))
    if not idx:
        raise ValueError("party subset must be nonempty")
    if idx[0] < 1 or idx[-1] > parties:
        raise ValueError(f"party indices must lie in [1, {parties}], got {idx}")
    if proper and len(idx) == parties:
        raise ValueError("party subset must be a proper subset for partial transposition")
    return tuple(idx)


def dense_from_sc(state: SCState, *, size_guard: int = DEFAULT_SIZE_GUARD) -> np.ndarray:
    """Explicit N^k x N^k density matrix of an SC state.

    Entry a_mn sits at (row, col) = (m repeated k times, n repeated k times)
    in the flat basis; all other entries vanish.
    """
    n, k = state.dim, state.parties
    total = n**k
    check_size_guard(total, size_guard)
    rho = np.zeros((total, total), dtype=complex)
    idx = [repeated_basis_index(m, k, n) for m in range(n)]
    rho[np.ix_(idx, idx)] = state.a
    return rho


def dense_pure(psi: PureSCState, *, size_guard: int = DEFAULT_SIZE_GUARD) -> np.ndarray:
    """Explicit state vector (length N^k) of a pure SC state."""
    n, k = psi.dim, psi.parties
    total = n**k
    check_size_guard(total, size_guard)
    vec = np.zeros(total, dtype=complex)
    for m in range(n):
        vec[repeated_basis_index(m, k, n)] = psi.amplitudes[m]
    return vec


def partial_transpose(m: np.ndarray, subset, dims) -> np.ndarray:
    """Transpose the row/column indices of the parties in ``subset``.

    ``dims`` lists the local dimension of each party in order; ``subset``
    holds 1-based party indices and must be a nonempty proper subset.
    The operation is involutive and trace-preserving.
    """
    dims = tuple(int(d) for d in dims)
    k = len(dims)
    total = int(np.prod(dims))
    if m.shape != (total, total):
        raise ValueError(
            f"matrix shape {m.shape} does not match party dimensions {dims} "
            f"(product {total})"
        )
    subset = normalize_party_subset(subset, k, proper=True)
    tensor = m.reshape(dims + dims)
    axes = list(range(2 * k))
    for p in subset:
        axes[p - 1], axes[k + p - 1] = axes[k + p - 1], axes[p - 1]
    return tensor.transpose(axes).reshape(total, total)


def hermitian_eigen(
    m: np.ndarray,
    tol: float = 1e-10,
    *,
    max_sweeps: int = 100,
    conv_tol: float = 1e-12,
):
    """Diagonalize a Hermitian matrix by cyclic complex Jacobi rotations.

    Sweeps zero out one off-diagonal entry at a time with a unitary 2x2
    rotation until the off-diagonal Frobenius norm falls below
    ``conv_tol`` times the matrix norm (at most ``max_sweeps`` sweeps).

    Returns ``(values, vectors)`` with eigenvalues ascending and matching
    eigenvector columns; reconstruction ``V diag(w) V^dag`` and column
    orthonormality hold to well below 1e-9 for desk-scale matrices.

    Parameters
    ----------
    m : array
        Square matrix, Hermitian within ``tol`` (checked).
    tol : float
        Largest allowed |m - m^dag| entry.
    """
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"matrix must be square, got shape {a.shape}")
    defect = float(np.abs(a - a.conj().T).max()) if a.size else 0.0
    if defect > tol:
        raise NotHermitianError(
            f"matrix is not Hermitian: worst defect {defect:.3e} exceeds {tol:.1e}",
            violation=defect,
        )
    n = a.shape[0]
    a = (a + a.conj().T) / 2.0
    v = np.eye(n, dtype=complex)
    norm = float(np.linalg.norm(a))
    if norm == 0.0 or n == 1:
        vals = np.real(np.diagonal(a)).copy()
        order = np.argsort(vals, kind="stable")
        return vals[order], v[:, order]

    converged = False
    for _ in range(max_sweeps):
        off = np.linalg.norm(a - np.diag(np.diagonal(a)))
        if off <= conv_tol * norm:
            converged = True
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                b = a[p, q]
                ab = abs(b)
                if ab == 0.0:
                    continue
                phase = b / ab
                tau = (a[q, q].real - a[p, p].real) / (2.0 * ab)
                if tau == 0.0:
                    t = 1.0
                else:
                    t = np.sign(tau) / (abs(tau) + np.hypot(1.0, tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                # unitary U: U[p,p]=c, U[p,q]=s*phase, U[q,p]=-s*conj(phase), U[q,q]=c
                rp, rq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * rp - s * phase * rq
                a[q, :] = s * np.conj(phase) * rp + c * rq
                cp, cq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * cp - s * np.conj(phase) * cq
                a[:, q] = s * phase * cp + c * cq
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vp - s * np.conj(phase) * vq
                v[:, q] = s * phase * vp + c * vq
    else:
        off = np.linalg.norm(a - np.diag(np.diagonal(a)))
        converged = off <= conv_tol * norm
    if not converged:
        raise EigenConvergenceError(
            f"Jacobi sweeps did not converge: off-diagonal norm {off:.3e} "
            f"above {conv_tol:.0e} * {norm:.3e} after {max_sweeps} sweeps"
        )
    vals = np.real(np.diagonal(a)).copy()
    order = np.argsort(vals, kind="stable")
    return vals[order], v[:, order]


def realign(m: np.ndarray, dim_a: int, dim_b: int) -> np.ndarray:
    """Realign a bipartite matrix: output[(i,j),(k,l)] = input[(i,k),(j,l)].

    The input is (dim_a*dim_b) square; the output is dim_a^2 x dim_b^2.
    A trace norm above 1 certifies entanglement across the A|B split.
    """
    total = dim_a * dim_b
    if m.shape != (total, total):
        raise ValueError(
            f"matrix shape {m.shape} does not match split {dim_a}x{dim_b}"
        )
    return (
        m.reshape(dim_a, dim_b, dim_a, dim_b)
        .transpose(0, 2, 1, 3)
        .reshape(dim_a * dim_a, dim_b * dim_b)
    )


def trace_norm(m: np.ndarray) -> float:
    """Sum of singular values, via Jacobi eigenvalues of the Gram matrix.

    Uses the smaller of m m^dag and m^dag m.  Squaring the matrix squares
    its condition number, so Gram eigenvalues below 1e-11 times the largest
    are indistinguishable from round-off and are truncated to zero before
    the square root (exact-zero singular values would otherwise surface as
    sqrt(dust) ~ 1e-6 noise).  Singular values down to ~3e-6 of the largest
    are therefore resolved; smaller nonzero ones are reported as 0.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2:
        raise ValueError(f"expected a matrix, got shape {m.shape}")
    if m.shape[0] <= m.shape[1]:
        gram = m @ m.conj().T
    else:
        gram = m.conj().T @ m
    vals, _ = hermitian_eigen(gram, tol=1e-8 * max(1.0, float(np.abs(gram).max())))
    cutoff = 1e-11 * max(float(vals[-1]), 0.0)
    vals = np.where(vals > cutoff, vals, 0.0)
    return float(np.sqrt(vals).sum())


def von_neumann_entropy(m: np.ndarray, log_base: float = 2.0, *, tol: float = 1e-8) -> float:
    """Entropy -sum lambda log(lambda) of a density matrix, 0 log 0 = 0."""
    vals, _ = hermitian_eigen(m)
    if vals.min() < -tol:
        raise NotPSDError(
            f"matrix has eigenvalue {vals.min():.3e} below -{tol:.1e}",
            violation=float(-vals.min()),
        )
    if abs(vals.sum() - 1.0) > tol:
        raise ValueError(f"trace {vals.sum():.6f} differs from 1 beyond {tol:.1e}")
    lam = vals[vals > 1e-15]
    return float(-(lam * np.log(lam)).sum() / np.log(log_base))


def relative_entropy_dense(
    rho: np.ndarray,
    sigma: np.ndarray,
    log_base: float = 2.0,
    *,
    support_tol: float = 1e-12,
    leak_tol: float = 1e-9,
) -> float:
    """Relative entropy Tr[rho log rho - rho log sigma] from dense matrices.

    Both matrices are eigendecomposed with the Jacobi solver.  If rho has
    weight beyond ``leak_tol`` outside sigma's support the result is
    ``inf`` (the flagged value for a support violation).
    """
    vals_r, _ = hermitian_eigen(rho)
    vals_s, vecs_s = hermitian_eigen(sigma)

    lam = vals_r[vals_r > 1e-15]
    tr_r_log_r = float((lam * np.log(lam)).sum())

    support = vals_s > support_tol * max(float(vals_s[-1]), 0.0)
    overlaps = np.einsum("ij,jk,ki->i", vecs_s.conj().T, rho, vecs_s).real
    leakage = float(np.trace(rho).real - overlaps[support].sum())
    if leakage > leak_tol:
        return float("inf")
    tr_r_log_s = float((overlaps[support] * np.log(vals_s[support])).sum())
    return (tr_r_log_r - tr_r_log_s) / float(np.log(log_base))


def su_generators(d: int) -> np.ndarray:
    """The d^2 - 1 traceless Hermitian SU(d) generators, Tr(g_a g_b) = 2 delta_ab.

    Ordering is a convention other modules depend on (the Bloch-tensor
    separability test singles out specific index blocks):

    1. d - 1 diagonal generators, ascending: the i-th (i = 0..d-2) is
       sqrt(2/((i+1)(i+2))) (sum_{a<=i} |a><a| - (i+1)|i+1><i+1|).
    2. (d^2-d)/2 symmetric generators |j><k| + |k><j|, pairs (j, k) with
       j < k in lexicographic order.
    3. (d^2-d)/2 antisymmetric generators -i(|j><k| - |k><j|), same pair
       order.
    """
    if int(d) != d or d < 2:
        raise ValueError(f"dimension must be an integer >= 2, got {d}")
    d = int(d)
    gens = np.zeros((d * d - 1, d, d), dtype=complex)
    pos = 0
    for i in range(d - 1):
        scale = np.sqrt(2.0 / ((i + 1) * (i + 2)))
        for a in range(i + 1):
            gens[pos, a, a] = scale
        gens[pos, i + 1, i + 1] = -(i + 1) * scale
        pos += 1
    for j in range(d):
        for k in range(j + 1, d):
            gens[pos, j, k] = 1.0
            gens[pos, k, j] = 1.0
            pos += 1
    for j in range(d):
        for k in range(j + 1, d):
            gens[pos, j, k] = -1j
            gens[pos, k, j] = 1j
            pos += 1
    return gens


def reduced_density(m: np.ndarray, keep, dims) -> np.ndarray:
    """Partial trace onto the parties in ``keep`` (1-based), order preserved."""
    dims = tuple(int(d) for d in dims)
    k = len(dims)
    total = int(np.prod(dims))
    if m.shape != (total, total):
        raise ValueError(
            f"matrix shape {m.shape} does not match party dimensions {dims}"
        )
    keep = normalize_party_subset(keep, k)
    if 2 * k > 52:
        raise ValueError(f"too many parties for the einsum route ({k})")

    letters = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"
    row = list(letters[:k])
    col = list(letters[k : 2 * k])
    for p in range(1, k + 1):
        if p not in keep:
            col[p - 1] = row[p - 1]  # repeated index = trace over that party
    out = "".join(row[p - 1] for p in keep) + "".join(col[p - 1] for p in keep)
    spec = "".join(row) + "".join(col) + "->" + out
    kept_total = int(np.prod([dims[p - 1] for p in keep]))
    return np.einsum(spec, m.reshape(dims + dims)).reshape(kept_total, kept_total)
