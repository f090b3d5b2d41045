# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the kernels in ``_kernels.py``."""

from libc.stdlib cimport calloc, free


def jaro(str s1, str s2):
    cdef Py_ssize_t n1 = len(s1)
    cdef Py_ssize_t n2 = len(s2)
    cdef Py_ssize_t window, i, j, lo, hi, m = 0, k = 0, unaligned = 0
    cdef Py_UCS4 c
    cdef unsigned char *taken
    cdef Py_UCS4 *order1
    cdef double t
    if n1 == 0 or n2 == 0:
        return 0.0
    if s1 == s2:
        return 1.0
    window = min(n1, n2) // 2
    taken = <unsigned char *> calloc(n2, sizeof(unsigned char))
    order1 = <Py_UCS4 *> calloc(n1, sizeof(Py_UCS4))
    if taken == NULL or order1 == NULL:
        free(taken)
        free(order1)
        raise MemoryError()
    try:
        for i in range(n1):
            c = s1[i]
            lo = i - window if i > window else 0
            hi = i + window + 1
            if hi > n2:
                hi = n2
            for j in range(lo, hi):
                if not taken[j] and s2[j] == c:
                    taken[j] = 1
                    order1[m] = c
                    m += 1
                    break
        if m == 0:
            return 0.0
        for j in range(n2):
            if taken[j]:
                if s2[j] != order1[k]:
                    unaligned += 1
                k += 1
    finally:
        free(taken)
        free(order1)
    t = unaligned / 2.0
    return (m / <double> n1 + m / <double> n2 + (m - t) / m) / 3.0


def jaro_winkler(str s1, str s2, double p=0.1, int l_max=4):
    cdef double j = jaro(s1, s2)
    cdef Py_ssize_t prefix = 0
    cdef Py_ssize_t n = min(len(s1), len(s2))
    while prefix < n and prefix < l_max and s1[prefix] == s2[prefix]:
        prefix += 1
    return j + prefix * p * (1.0 - j)


def dfa_scan(symbols, table, accept, int n_symbols):
    cdef const unsigned char[:] sym = bytes(symbols)
    cdef const unsigned char[:] acc = bytes(accept)
    cdef Py_ssize_t n = sym.shape[0]
    cdef Py_ssize_t n_states = acc.shape[0]
    cdef int[:] delta
    cdef unsigned char *failed
    cdef Py_ssize_t *trail
    cdef Py_ssize_t i = 0, j, last, slot, depth
    cdef int q
    import array
    delta = array.array("i", table)
    out = []
    if n == 0:
        return out
    failed = <unsigned char *> calloc(n * n_states, sizeof(unsigned char))
    trail = <Py_ssize_t *> calloc(n + 1, sizeof(Py_ssize_t))
    if failed == NULL or trail == NULL:
        free(failed)
        free(trail)
        raise MemoryError()
    try:
        while i < n:
            q = 1
            j = i
            last = -1
            depth = 0
            while j < n:
                q = delta[q * n_symbols + sym[j]]
                if q == 0:
                    break
                slot = j * n_states + q
                if failed[slot]:
                    break
                if acc[q]:
                    last = j
                    depth = 0
                else:
                    trail[depth] = slot
                    depth += 1
                j += 1
            while depth > 0:
                depth -= 1
                failed[trail[depth]] = 1
            if last >= 0:
                out.append((i, last))
                i = last + 1
            else:
                i += 1
    finally:
        free(failed)
        free(trail)
    return out
