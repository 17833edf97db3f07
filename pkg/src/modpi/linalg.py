"""Exact linear algebra over Z: Bareiss elimination and multi-modular nullspaces."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from typing import Sequence

import numpy as np

IntMatrix = Sequence[Sequence[int]]


def bareiss_echelon(rows: IntMatrix) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form; returns (reduced rows, pivot columns)."""
    A = [list(map(int, r)) for r in rows]
    if not A:
        return [], []
    m, n = len(A), len(A[0])
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        p = A[r][c]
        for i in range(r + 1, m):
            a = A[i][c]
            row_i, row_r = A[i], A[r]
            for j in range(c, n):
                row_i[j] = (p * row_i[j] - a * row_r[j]) // prev
        # columns left of c in rows below r are already zero
        prev = p
        pivots.append(c)
        r += 1
        if r == m:
            break
    return A[:r], pivots


def bareiss_rank(rows: IntMatrix) -> int:
    return len(bareiss_echelon(rows)[1])


def rational_nullspace(rows: IntMatrix) -> list[list[int]]:
    """Basis of the right nullspace over Q, each vector primitive and integral."""
    if not rows:
        return []
    n = len(rows[0])
    ech, pivots = bareiss_echelon(rows)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fcol in free:
        x = [Fraction(0)] * n
        x[fcol] = Fraction(1)
        for k in range(len(pivots) - 1, -1, -1):
            c = pivots[k]
            s = sum((Fraction(ech[k][j]) * x[j] for j in range(c + 1, n) if ech[k][j]), Fraction(0))
            x[c] = -s / ech[k][c]
        den = 1
        for v in x:
            den = den * v.denominator // gcd(den, v.denominator)
        ints = [int(v * den) for v in x]
        g = 0
        for v in ints:
            g = gcd(g, v)
        basis.append([v // g for v in ints])
    return basis


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


def primes_below(bound: int, count: int) -> list[int]:
    out = []
    n = bound - 1
    while len(out) < count:
        if _is_prime(n):
            out.append(n)
        n -= 1
    return out


def nullspace_mod_p(rows: IntMatrix, p: int) -> list[np.ndarray]:
    """Right nullspace basis over GF(p) (p < 2^26 so products fit in int64)."""
    A = np.array([[int(x) % p for x in r] for r in rows], dtype=np.int64)
    m, n = A.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r] = (A[r] * inv) % p
        col = A[:, c].copy()
        col[r] = 0
        mask = np.nonzero(col)[0]
        if mask.size:
            A[mask] = (A[mask] - np.outer(col[mask], A[r]) % p) % p
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in set(pivots)]
    basis = []
    for fcol in free:
        x = np.zeros(n, dtype=np.int64)
        x[fcol] = 1
        for k, c in enumerate(pivots):
            x[c] = (-A[k, fcol]) % p
        basis.append(x)
    return basis


def crt_symmetric(residues: Sequence[int], moduli: Sequence[int]) -> tuple[int, int]:
    """Combine residues into the representative in (-M/2, M/2]; returns (value, M)."""
    x, M = 0, 1
    for r, m in zip(residues, moduli):
        t = ((r - x) * pow(M, -1, m)) % m
        x += M * t
        M *= m
    if x > M // 2:
        x -= M
    return x, M


def integer_kernel_vector(rows: IntMatrix, anchor: int, anchor_value: int,
                          max_primes: int = 64) -> list[int]:
    """The integer vector x with A x = 0 and x[anchor] = anchor_value.

    The kernel over Q must be one-dimensional.  Images mod word-sized primes
    are lifted by CRT until two more primes leave the lift unchanged; callers
    must confirm the result exactly.
    """
    moduli: list[int] = []
    residues: list[list[int]] = []
    stable, last, skipped = 0, None, 0
    for p in primes_below(1 << 26, max_primes):
        basis = nullspace_mod_p(rows, p)
        if len(basis) == 0:
            raise ArithmeticError("the system has only the trivial solution")
        if len(basis) > 1:
            # a rank drop at an unlucky prime shows up as extra nullity; persistent
            # extra nullity means the kernel over Q is larger than one
            skipped += 1
            if skipped >= 3 and not moduli:
                raise ArithmeticError(f"kernel has dimension {len(basis)}, expected 1")
            continue
        v = basis[0]
        a = int(v[anchor]) % p
        if a == 0:
            raise ArithmeticError("anchor coordinate vanishes on the kernel")
        scale = anchor_value * pow(a, -1, p) % p
        moduli.append(p)
        residues.append([int(x) * scale % p for x in v])
        lifted = [crt_symmetric([res[i] for res in residues], moduli)[0]
                  for i in range(len(v))]
        if lifted == last:
            stable += 1
            if stable >= 2:
                return lifted
        else:
            stable = 0
        last = lifted
    if not moduli:
        raise ArithmeticError("kernel dimension is not 1 at any sampled prime")
    raise ArithmeticError("CRT lift did not stabilise; solution may not be integral")
