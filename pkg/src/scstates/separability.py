"""Separability criteria for SC states.

Everything an SC state's partial transposes, realignment, and Bloch tensor
can say about entanglement collapses onto the off-diagonal entries of the
coefficient matrix, so each criterion here has a closed form.  The dense
routes in :mod:`scstates.oracle` re-derive the same quantities from the
explicit N^k x N^k matrices for cross-validation.
"""

from dataclasses import dataclass

import numpy as np

from . import oracle
from .oracle import DEFAULT_SIZE_GUARD, repeated_basis_index
from .states import SCState

#: Default threshold on scaled dense traces / coefficient moduli for
#: separability verdicts.
DEFAULT_SEP_TOL = 1e-9

#: Largest multiset PTSpectrum.eigenvalues() will materialize explicitly.
MAX_MATERIALIZED_SPECTRUM = 4_194_304


@dataclass(frozen=True, eq=False)
class PTSpectrum:
    """Closed-form spectrum of any partial transpose of an SC state.

    For every nonempty proper subset of parties, the partially transposed
    density matrix has eigenvalues:

    - ``diagonal``: the N diagonal coefficients a_mm,
    - ``pair_magnitudes``: |a_mn| for m < n, each contributing a +/- pair,
    - zero, with multiplicity N^k - N^2 (stored, never materialized
      unless asked).
    """

    diagonal: np.ndarray
    pair_magnitudes: np.ndarray
    zero_multiplicity: int

    @property
    def total_size(self) -> int:
        return self.diagonal.size + 2 * self.pair_magnitudes.size + self.zero_multiplicity

    def min_eigenvalue(self) -> float:
        """Smallest eigenvalue of the partial transpose."""
        candidates = [float(self.diagonal.min())]
        if self.pair_magnitudes.size:
            candidates.append(float(-self.pair_magnitudes.max()))
        if self.zero_multiplicity > 0:
            candidates.append(0.0)
        return min(candidates)

    def eigenvalues(self) -> np.ndarray:
        """The full eigenvalue multiset, sorted ascending (zeros included).

        Materializes N^k numbers; refuses above
        ``MAX_MATERIALIZED_SPECTRUM`` since the closed form makes the
        explicit list redundant at scale.
        """
        if self.total_size > MAX_MATERIALIZED_SPECTRUM:
            raise ValueError(
                f"refusing to materialize {self.total_size} eigenvalues; "
                f"use the field data directly"
            )
        parts = [
            self.diagonal,
            self.pair_magnitudes,
            -self.pair_magnitudes,
            np.zeros(self.zero_multiplicity),
        ]
        return np.sort(np.concatenate(parts))


def _pair_indices(n: int):
    return [(m, j) for m in range(n) for j in range(m + 1, n)]


def pt_spectrum(state: SCState) -> PTSpectrum:
    """Spectrum of the partially transposed state, in closed form.

    The same multiset is the exact spectrum for EVERY nonempty proper
    party subset; subset independence is asserted by the oracle suite
    rather than assumed.
    """
    a = state.a
    n = state.dim
    diag = np.diagonal(a).real.copy()
    pairs = np.array([abs(a[m, j]) for m, j in _pair_indices(n)])
    zero_mult = state.dim**state.parties - n * n
    return PTSpectrum(diagonal=diag, pair_magnitudes=pairs, zero_multiplicity=zero_mult)


def is_fully_separable(state: SCState, tol: float = DEFAULT_SEP_TOL) -> bool:
    """Separability decision: true iff every off-diagonal |a_mn| <= tol.

    For SC states this single check is equivalent to positivity under all
    partial transpositions and to full separability; a negative verdict
    means genuine multipartite entanglement.
    """
    a = state.a
    off = a - np.diag(np.diagonal(a))
    return float(np.abs(off).max()) <= tol


@dataclass(frozen=True, eq=False)
class Witness:
    """A sparse entanglement witness over the N^k product basis.

    ``terms`` holds (row, col, value) triples with flat row-major indices
    (party 1 most significant); the triple list is closed under Hermitian
    conjugation (r, c, v) <-> (c, r, conj(v)).  ``source_pairs`` records
    the coefficient pairs (m, n), m < n, the witness was built from.
    """

    dims: tuple
    terms: tuple
    source_pairs: tuple

    @property
    def total_dim(self) -> int:
        return int(np.prod(self.dims))

    def to_dense(self, *, size_guard: int = DEFAULT_SIZE_GUARD) -> np.ndarray:
        """Explicit matrix form, for oracle cross-checks."""
        total = self.total_dim
        oracle.check_size_guard(total, size_guard)
        w = np.zeros((total, total), dtype=complex)
        for r, c, v in self.terms:
            w[r, c] += v
        return w


def build_witness(state: SCState) -> Witness:
    """Entanglement witness detecting the state by its own coefficients.

    For each pair m < n with a_mn != 0, take the eigenvector of the
    (first-party) partial transpose with eigenvalue -|a_mn|,

        |Psi_mn> = (|m n...n> - e^{i theta} |n m...m>) / sqrt(2),
        theta = arg(a_mn),

    and add the partial transpose of its projector.  The resulting
    operator has nonnegative expectation on every fully separable state
    but expectation -sum_{m<n} |a_mn| on the source state.  A separable
    source yields an empty witness.
    """
    a = state.a
    n, k = state.dim, state.parties
    terms = []
    pairs = []
    for m, j in _pair_indices(n):
        amn = a[m, j]
        if amn == 0:
            continue
        pairs.append((m, j))
        theta = np.angle(amn)
        # |m n...n> and |n m...m> in flat indices
        idx_mn = m
        idx_nm = j
        for _ in range(k - 1):
            idx_mn = idx_mn * n + j
            idx_nm = idx_nm * n + m
        rep_m = repeated_basis_index(m, k, n)
        rep_n = repeated_basis_index(j, k, n)
        phase = np.exp(1j * theta)
        terms.append((idx_mn, idx_mn, 0.5 + 0j))
        terms.append((idx_nm, idx_nm, 0.5 + 0j))
        terms.append((rep_m, rep_n, -0.5 * phase))
        terms.append((rep_n, rep_m, -0.5 * np.conj(phase)))
    return Witness(dims=(n,) * k, terms=tuple(terms), source_pairs=tuple(pairs))


def _is_repeated_index(idx: int, parties: int, dim: int):
    """Return the repeated digit m if idx encodes |m...m>, else None."""
    digits = []
    for _ in range(parties):
        digits.append(idx % dim)
        idx //= dim
    return digits[0] if all(d == digits[0] for d in digits) else None


def witness_expectation(w: Witness, target) -> float:
    """Expectation value Tr[W target].

    ``target`` may be an :class:`SCState` (evaluated in closed form on the
    SC support, no dense algebra) or an explicit density matrix as an
    ndarray.  Any fully separable target gives a nonnegative result up to
    round-off; the witness's own source state gives -sum_{m<n}|a_mn|.
    """
    if isinstance(target, SCState):
        if target.dim != w.dims[0] or target.parties != len(w.dims):
            raise ValueError(
                f"dimension mismatch: witness on {w.dims}, "
                f"state has (k, N) = ({target.parties}, {target.dim})"
            )
        total = 0.0 + 0.0j
        k, n = target.parties, target.dim
        for r, c, v in w.terms:
            m_row = _is_repeated_index(c, k, n)  # rho[c, r]
            m_col = _is_repeated_index(r, k, n)
            if m_row is None or m_col is None:
                continue
            total += v * target.a[m_row, m_col]
        return float(total.real)

    target = np.asarray(target, dtype=complex)
    total_dim = w.total_dim
    if target.shape != (total_dim, total_dim):
        raise ValueError(
            f"dimension mismatch: witness acts on dimension {total_dim}, "
            f"target has shape {target.shape}"
        )
    acc = complex(sum(v * target[c, r] for r, c, v in w.terms))
    return float(acc.real)


def realignment_norm(state: SCState) -> float:
    """Trace norm of the realigned density matrix (split party 1 | rest).

    Equals sum_{m,n} |a_mn| in closed form; ranges over [1, N], hitting 1
    exactly for separable states and N only for the uniform maximally
    entangled coefficient matrix.
    """
    return float(np.abs(state.a).sum())


@dataclass(frozen=True, eq=False)
class BlochDecomposition:
    """Generator-basis expansion of an SC state across a bipartition.

    Parties 1..split form the first subsystem (dimension M = N^split),
    the rest the second (dimension R).  Coefficients follow

        rho = (1/(M R)) (I + sum_i r_i g_i x I + sum_j s_j I x g_j
                           + sum_ij t_ij g_i x g_j)

    with the generator ordering of :func:`scstates.oracle.su_generators`.
    """

    split: int
    r: np.ndarray
    s: np.ndarray
    t: np.ndarray

    @property
    def dim_first(self) -> int:
        return int(round(np.sqrt(self.r.size + 1)))

    @property
    def dim_rest(self) -> int:
        return int(round(np.sqrt(self.s.size + 1)))


def bloch_decomposition(
    state: SCState, split: int = 1, *, size_guard: int = DEFAULT_SIZE_GUARD
) -> BlochDecomposition:
    """Compute the Bloch vectors and correlation tensor across a split.

    Dense-path operation: builds the N^k x N^k matrix and traces it
    against generator tensor products, so the size guard applies.
    ``split`` must satisfy 1 <= split <= parties - 1.
    """
    k, n = state.parties, state.dim
    if int(split) != split or not 1 <= split <= k - 1:
        raise ValueError(f"split must be an integer in [1, {k - 1}], got {split}")
    split = int(split)
    dim_first = n**split
    dim_rest = n ** (k - split)
    rho = oracle.dense_from_sc(state, size_guard=size_guard)
    gens_first = oracle.su_generators(dim_first)
    gens_rest = oracle.su_generators(dim_rest)
    rho4 = rho.reshape(dim_first, dim_rest, dim_first, dim_rest)

    r = (dim_first / 2.0) * np.einsum("abcb,ica->i", rho4, gens_first)
    s = (dim_rest / 2.0) * np.einsum("abad,jdb->j", rho4, gens_rest)
    t = (dim_first * dim_rest / 4.0) * np.einsum(
        "abcd,ica,jdb->ij", rho4, gens_first, gens_rest
    )
    residue = max(np.abs(r.imag).max(), np.abs(s.imag).max(), np.abs(t.imag).max())
    if residue > 1e-9:  # traces of Hermitian products are real; dust only
        raise RuntimeError(f"imaginary residue {residue:.3e} in Bloch coefficients")
    return BlochDecomposition(split=split, r=r.real, s=s.real, t=t.real)


def check_corollary2(b: BlochDecomposition, tol: float = DEFAULT_SEP_TOL) -> bool:
    """Bloch-tensor separability test.

    True iff every correlation-tensor entry t_ij with both i and j in the
    off-diagonal-generator index range (i >= M - 1, j >= R - 1) vanishes
    within ``tol``.  Agrees with :func:`is_fully_separable` on valid SC
    states.
    """
    corner = b.t[b.dim_first - 1 :, b.dim_rest - 1 :]
    return float(np.abs(corner).max()) <= tol
