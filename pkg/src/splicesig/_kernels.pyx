# cython: language_level=3
"""Compiled integer kernels. Mirrors ``_kernels_py`` exactly."""

# q**3 must fit in a signed 64-bit accumulator
DEDEKIND_Q_MAX = 2_000_000
# residue * index must fit in a signed 64-bit product
JUMP_M_MAX = 2_000_000_000


def dedekind_numerator(long long p, long long q):
    """Return N with s(p, q) = N / (4 q^2), for 0 <= p < q <= DEDEKIND_Q_MAX."""
    cdef long long j, r = 0, total = 0
    for j in range(1, q):
        r += p
        if r >= q:
            r -= q
        if r != 0:
            total += (2 * j - q) * (2 * r - q)
    return total


def jump_numerators(residues, long long m):
    """Sweep i = 1..m-1 and return the nonzero sums sum_j [r != 0] (2 r - m), r = res_j * i mod m.

    Returns two lists ``(indices, numerators)``; the equivariant signature at
    i/m is ``numerator / m``.
    """
    cdef Py_ssize_t n = len(residues), k
    cdef long long i, r, acc
    cdef long long[64] res_small
    cdef list idx = [], num = []
    if n > 64:
        raise ValueError("at most 64 directions per node")
    for k in range(n):
        res_small[k] = residues[k]
    for i in range(1, m):
        acc = 0
        for k in range(n):
            r = (res_small[k] * i) % m
            if r != 0:
                acc += 2 * r - m
        if acc != 0:
            idx.append(i)
            num.append(acc)
    return idx, num
