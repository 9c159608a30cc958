"""Dense linear algebra over a prime field GF(p).

Matrices are plain ``numpy`` int64 arrays holding residues in ``[0, p)``.
Every routine reduces its inputs, so callers may pass negative integers.
Elimination always pivots on the first nonzero entry of a column, which keeps
all outputs deterministic.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

MAX_MODULUS = 2**15


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class GF:
    """The prime field GF(p) together with matrix routines over it."""

    def __init__(self, p: int = 5):
        p = int(p)
        if not _is_prime(p):
            raise ValueError(f"modulus must be prime, got {p}")
        if p >= MAX_MODULUS:
            raise ValueError(f"modulus must be below {MAX_MODULUS}, got {p}")
        self.p = p
        inverses = np.zeros(p, dtype=np.int64)
        for a in range(1, p):
            inverses[a] = pow(a, p - 2, p)
        self._inverses = inverses

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, GF) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    # -- scalars -------------------------------------------------------------

    def scalar(self, a) -> int:
        return int(a) % self.p

    def inv(self, a) -> int:
        a = int(a) % self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in GF(%d)" % self.p)
        return int(self._inverses[a])

    def neg(self, a) -> int:
        return (-int(a)) % self.p

    # -- construction --------------------------------------------------------

    def array(self, data, shape=None) -> np.ndarray:
        a = np.array(data, dtype=np.int64)
        if shape is not None:
            a = a.reshape(shape)
        return a % self.p

    def zeros(self, rows: int, cols: int) -> np.ndarray:
        return np.zeros((rows, cols), dtype=np.int64)

    def eye(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64)

    def random_matrix(self, rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
        return rng.integers(0, self.p, size=(rows, cols), dtype=np.int64)

    def random_invertible(self, rng: np.random.Generator, n: int) -> np.ndarray:
        while True:
            m = self.random_matrix(rng, n, n)
            if self.rank(m) == n:
                return m

    # -- arithmetic ----------------------------------------------------------

    def matmul(self, *mats) -> np.ndarray:
        """Product of one or more matrices, reduced mod p after each step."""
        out = np.asarray(mats[0], dtype=np.int64) % self.p
        for m in mats[1:]:
            out = (out @ (np.asarray(m, dtype=np.int64) % self.p)) % self.p
        return out

    def trace(self, a: np.ndarray) -> int:
        a = np.asarray(a, dtype=np.int64)
        if a.size == 0:
            return 0
        return int(np.trace(a) % self.p)

    # -- elimination ---------------------------------------------------------

    def rref(self, a) -> tuple[np.ndarray, tuple[int, ...]]:
        """Reduced row echelon form and pivot columns."""
        p = self.p
        r_mat = np.array(a, dtype=np.int64) % p
        if r_mat.ndim != 2:
            raise ValueError("rref expects a 2-d array")
        rows, cols = r_mat.shape
        pivots = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            nz = np.flatnonzero(r_mat[r:, c])
            if nz.size == 0:
                continue
            k = r + int(nz[0])
            if k != r:
                r_mat[[r, k]] = r_mat[[k, r]]
            r_mat[r] = (r_mat[r] * self._inverses[r_mat[r, c]]) % p
            col = r_mat[:, c].copy()
            col[r] = 0
            hit = np.flatnonzero(col)
            if hit.size:
                r_mat[hit] = (r_mat[hit] - np.outer(col[hit], r_mat[r])) % p
            pivots.append(c)
            r += 1
        return r_mat, tuple(pivots)

    def rank(self, a) -> int:
        a = np.asarray(a)
        if a.size == 0:
            return 0
        return len(self.rref(a)[1])

    def kernel_basis(self, a) -> np.ndarray:
        """Basis of the null space, returned as the columns of a matrix.

        The result has shape ``(cols, k)``; ``a @ K == 0`` mod p and the
        columns are independent.
        """
        a = np.asarray(a, dtype=np.int64)
        rows, cols = a.shape
        if rows == 0:
            return self.eye(cols)
        r_mat, pivots = self.rref(a)
        free = [c for c in range(cols) if c not in set(pivots)]
        basis = self.zeros(cols, len(free))
        for j, fc in enumerate(free):
            basis[fc, j] = 1
            for i, pc in enumerate(pivots):
                basis[pc, j] = (-r_mat[i, fc]) % self.p
        return basis

    def solve_affine(self, a, b):
        """Some ``x`` with ``a @ x == b``, or ``None`` when inconsistent.

        Free variables are set to zero.
        """
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64).reshape(-1)
        rows, cols = a.shape
        if b.shape[0] != rows:
            raise ValueError(f"dimension mismatch: A is {rows}x{cols}, b has {b.shape[0]}")
        if rows == 0:
            return np.zeros(cols, dtype=np.int64)
        aug = np.concatenate([a, b[:, None]], axis=1)
        r_mat, pivots = self.rref(aug)
        if pivots and pivots[-1] == cols:
            return None
        x = np.zeros(cols, dtype=np.int64)
        for i, pc in enumerate(pivots):
            x[pc] = r_mat[i, cols]
        return x

    def inverse(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        n = a.shape[0]
        if a.shape != (n, n):
            raise ValueError("inverse of a non-square matrix")
        if n == 0:
            return self.zeros(0, 0)
        r_mat, pivots = self.rref(np.concatenate([a, self.eye(n)], axis=1))
        if pivots[:n] != tuple(range(n)):
            raise np.linalg.LinAlgError("matrix is singular over GF(%d)" % self.p)
        return r_mat[:, n:].copy()

    def is_invertible(self, a) -> bool:
        a = np.asarray(a)
        return a.shape[0] == a.shape[1] and self.rank(a) == a.shape[0]

    def column_basis(self, a) -> np.ndarray:
        """Columns of ``a`` forming a basis of its column space (greedy, in order)."""
        a = np.asarray(a, dtype=np.int64) % self.p
        if a.shape[1] == 0:
            return a
        _, pivots = self.rref(a)
        return a[:, list(pivots)]

    def quotient_basis(self, v, w) -> tuple[np.ndarray, np.ndarray]:
        """Presentation of span(v) / span(w).

        ``v`` and ``w`` hold spanning vectors as columns of the same ambient
        space.  Returns ``(reps, proj)``: the columns of ``reps`` are chosen
        among the columns of ``v`` and map to a basis of the quotient, and
        ``proj`` (``q x ambient``) sends a vector of span(v) to its coordinates
        over ``reps``.  ``proj`` kills span(w).
        """
        v = np.asarray(v, dtype=np.int64) % self.p
        w = np.asarray(w, dtype=np.int64) % self.p
        ambient = v.shape[0]
        if w.shape[0] != ambient:
            raise ValueError("v and w live in different ambient spaces")
        w_basis = self.column_basis(w)
        k = w_basis.shape[1]
        rank_v = self.rank(v)
        if self.rank(np.concatenate([v, w_basis], axis=1)) != rank_v:
            raise ValueError("span(w) is not contained in span(v)")
        # w-basis first, so pivots among v-columns are exactly the reps
        joined = np.concatenate([w_basis, v], axis=1)
        _, pivots = self.rref(joined)
        rep_cols = [c - k for c in pivots if c >= k]
        reps = v[:, rep_cols]
        q = reps.shape[1]
        full = np.concatenate([w_basis, reps], axis=1)
        # left inverse of `full` on its column space, via an invertible row subset
        _, row_pivots = self.rref(full.T)
        sub_inv = self.inverse(full[list(row_pivots), :])
        proj = self.zeros(q, ambient)
        proj[:, list(row_pivots)] = sub_inv[k:, :]
        return reps, proj


@lru_cache(maxsize=None)
def field(p: int) -> GF:
    return GF(p)


def kernel_basis(a, p: int = 5) -> np.ndarray:
    return field(p).kernel_basis(a)


def solve_affine(a, b, p: int = 5):
    return field(p).solve_affine(a, b)


def quotient_basis(v, w, p: int = 5):
    return field(p).quotient_basis(v, w)


def rank(a, p: int = 5) -> int:
    return field(p).rank(a)
