"""Pure-Python twins of the compiled kernels in ``_kernels.pyx``."""

DEDEKIND_Q_MAX = None
JUMP_M_MAX = None


def dedekind_numerator(p, q):
    """Return N with s(p, q) = N / (4 q^2), for 0 <= p < q."""
    total = 0
    r = 0
    for j in range(1, q):
        r += p
        if r >= q:
            r -= q
        if r:
            total += (2 * j - q) * (2 * r - q)
    return total


def jump_numerators(residues, m):
    idx = []
    num = []
    for i in range(1, m):
        acc = 0
        for s in residues:
            r = s * i % m
            if r:
                acc += 2 * r - m
        if acc:
            idx.append(i)
            num.append(acc)
    return idx, num
