"""Pure-Python implementations of the hot loops.

Mirrors ``_speedups.pyx`` function for function; :mod:`termweaver.kernels`
picks whichever is available.
"""


def jaro(s1, s2):
    n1 = len(s1)
    n2 = len(s2)
    if n1 == 0 or n2 == 0:
        return 0.0
    if s1 == s2:
        return 1.0
    window = min(n1, n2) // 2
    taken = bytearray(n2)
    order1 = []
    for i, c in enumerate(s1):
        lo = i - window if i > window else 0
        hi = i + window + 1
        if hi > n2:
            hi = n2
        for j in range(lo, hi):
            if not taken[j] and s2[j] == c:
                taken[j] = 1
                order1.append(c)
                break
    m = len(order1)
    if m == 0:
        return 0.0
    k = 0
    unaligned = 0
    for j in range(n2):
        if taken[j]:
            if s2[j] != order1[k]:
                unaligned += 1
            k += 1
    t = unaligned / 2.0
    return (m / n1 + m / n2 + (m - t) / m) / 3.0


def jaro_winkler(s1, s2, p=0.1, l_max=4):
    j = jaro(s1, s2)
    prefix = 0
    for a, b in zip(s1, s2):
        if a != b or prefix >= l_max:
            break
        prefix += 1
    return j + prefix * p * (1.0 - j)


def dfa_scan(symbols, table, accept, n_symbols):
    """Leftmost-longest, non-overlapping DFA matches over ``symbols``.

    ``table`` is the flattened transition matrix (row per state, state 0 is
    dead, state 1 is the start). Returns inclusive ``(first, last)`` pairs.

    Scans are memoized on (state, position) pairs known to lead nowhere
    accepting, so each pair is walked past its last accept at most once and
    total work is O(len(symbols) * n_states).
    """
    n = len(symbols)
    n_states = len(accept)
    failed = bytearray(n * n_states)
    out = []
    i = 0
    trail = []
    while i < n:
        q = 1
        j = i
        last = -1
        del trail[:]
        while j < n:
            q = table[q * n_symbols + symbols[j]]
            if q == 0:
                break
            slot = j * n_states + q
            if failed[slot]:
                break
            if accept[q]:
                last = j
                del trail[:]
            else:
                trail.append(slot)
            j += 1
        for slot in trail:
            failed[slot] = 1
        if last >= 0:
            out.append((i, last))
            i = last + 1
        else:
            i += 1
    return out
