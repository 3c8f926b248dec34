"""Pure-Python reduction kernel.

Term lists are sorted descending by packed order key and hold
``(key, exps, coeff)`` triples.  Both ``key`` and ``exps`` are packed
integers, so a monomial product is a pair of integer additions and a
divisibility test is one subtraction against the guard mask (see
:mod:`artifact.groebner`).

With ``modulus == 0`` coefficients are integers and reduction is
fraction-free; otherwise they are residues in ``[0, modulus)`` and every
reducer is monic.  ``_kernel.pyx`` implements the same functions.
"""

from heapq import heappop, heappush
from math import gcd


def axpy(a, p, start, b, mK, mE, g, gstart, modulus):
    """Return ``a*p[start:] - b*m*g[gstart:]`` as a new term list."""
    out = []
    append = out.append
    i = start
    j = gstart
    np_ = len(p)
    ng = len(g)
    while i < np_ and j < ng:
        Kp, Ep, cp = p[i]
        Kg = g[j][0] + mK
        if Kp > Kg:
            if a == 1:
                append(p[i])
            else:
                append((Kp, Ep, a * cp))
            i += 1
        elif Kp < Kg:
            c = -b * g[j][2]
            if modulus:
                c %= modulus
            append((Kg, g[j][1] + mE, c))
            j += 1
        else:
            c = a * cp - b * g[j][2]
            if modulus:
                c %= modulus
            if c:
                append((Kp, Ep, c))
            i += 1
            j += 1
    while i < np_:
        if a == 1:
            append(p[i])
        else:
            Kp, Ep, cp = p[i]
            append((Kp, Ep, a * cp))
        i += 1
    while j < ng:
        Kg, Eg, cg = g[j]
        c = -b * cg
        if modulus:
            c %= modulus
        append((Kg + mK, Eg + mE, c))
        j += 1
    return out


def spoly(f, g, mK1, mE1, mK2, mE2, modulus):
    """S-polynomial ``lc(g)*m1*f - lc(f)*m2*g``, lead terms cancelled."""
    cf = f[0][2]
    cg = g[0][2]
    if modulus:
        # reducers are monic
        shifted = [(K + mK1, E + mE1, c) for K, E, c in f[1:]]
        return axpy(1, shifted, 0, 1, mK2, mE2, g, 1, modulus)
    d = gcd(cf, cg)
    a = cg // d
    b = cf // d
    if a < 0:
        a = -a
        b = -b
    shifted = [(K + mK1, E + mE1, c) for K, E, c in f[1:]]
    return axpy(a, shifted, 0, b, mK2, mE2, g, 1, modulus)


def reduce(p, basis, guard, modulus, full, max_steps):
    """Reduce ``p`` by ``basis`` (a list of term lists, lead term first).

    Returns ``(terms, steps, mult)``: the remainder, the number of reduction
    steps and the integer factor ``p`` was scaled by (always 1 modulo a
    prime).  ``terms`` is ``None`` if ``max_steps`` was exceeded.  With
    ``full`` false only the lead term is reduced.
    """
    leads = [g[0] for g in basis]
    nb = len(leads)
    rem = []
    mult = 1
    steps = 0
    i = 0
    while i < len(p):
        K, E, c = p[i]
        EG = E | guard
        k = 0
        while k < nb:
            if (EG - leads[k][1]) & guard == guard:
                break
            k += 1
        if k == nb:
            if not full:
                break
            rem.append((K, E, c, mult))
            i += 1
            continue
        steps += 1
        if steps > max_steps:
            return None, steps, mult
        gK, gE, gc = leads[k]
        if modulus:
            p = axpy(1, p, i + 1, c, K - gK, E - gE, basis[k], 1, modulus)
        else:
            d = gcd(c, gc)
            a = gc // d
            b = c // d
            if a < 0:
                a = -a
                b = -b
            p = axpy(a, p, i + 1, b, K - gK, E - gE, basis[k], 1, modulus)
            mult *= a
        i = 0
    out = []
    for K, E, c, m in rem:
        out.append((K, E, c * (mult // m)) if m != mult else (K, E, c))
    out.extend(p[i:])
    return out, steps, mult


def lcm(Ea, Eb, guard, fbits):
    """Field-wise maximum of two packed exponent vectors."""
    t = ((Ea | guard) - Eb) & guard
    m = t - (t >> (fbits - 1))
    return (Ea & m) | (Eb & ~m)


def key_of(E, unit_keys, fbits):
    """Order key of a packed exponent vector (the key is linear in exponents)."""
    mask = (1 << fbits) - 1
    K = 0
    for uk in reversed(unit_keys):
        f = E & mask
        if f:
            K += f * uk
        E >>= fbits
    return K


def normalize(terms, modulus):
    """Primitive with positive lead (integers) or monic (modulo a prime)."""
    if modulus:
        lc = terms[0][2]
        if lc == 1:
            return terms
        inv = pow(lc, -1, modulus)
        return [(K, E, c * inv % modulus) for K, E, c in terms]
    g = 0
    for t in terms:
        g = gcd(g, t[2])
        if g == 1:
            break
    if terms[0][2] < 0:
        g = -g
    if g == 1:
        return terms
    return [(K, E, c // g) for K, E, c in terms]


def groebner_loop(inputs, guard, unit_keys, fbits, modulus, step_limit):
    """Buchberger pair loop with the coprime and chain criteria.

    Returns ``(G, stats)``; ``G`` is a (non-reduced) Groebner basis, or
    ``None`` when ``step_limit`` reduction steps were exceeded.
    """
    G = []
    leadE = []
    pending = set()
    heap = []
    stats = {"pairs": 0, "coprime": 0, "chain": 0, "zero": 0, "steps": 0}
    steps = 0

    def add(h):
        j = len(G)
        Ej = h[0][1]
        for i in range(j):
            L = lcm(leadE[i], Ej, guard, fbits)
            heappush(heap, (key_of(L, unit_keys, fbits), j, i, L))
            pending.add((i, j))
        G.append(h)
        leadE.append(Ej)

    for f in inputs:
        if not f:
            continue
        h, n, _ = reduce(f, G, guard, modulus, True, step_limit - steps)
        steps += n
        if h is None:
            stats["steps"] = steps
            return None, stats
        if h:
            add(normalize(h, modulus))

    while heap:
        LK, j, i, LE = heappop(heap)
        pending.discard((i, j))
        stats["pairs"] += 1
        fi = G[i]
        fj = G[j]
        if len(fi) == 1 and len(fj) == 1:
            stats["zero"] += 1
            continue
        Ei = leadE[i]
        Ej = leadE[j]
        if LE == Ei + Ej:
            stats["coprime"] += 1
            continue
        chain = False
        for k in range(len(G)):
            if k == i or k == j:
                continue
            if ((LE | guard) - leadE[k]) & guard != guard:
                continue
            if (min(i, k), max(i, k)) in pending or (min(j, k), max(j, k)) in pending:
                continue
            chain = True
            break
        if chain:
            stats["chain"] += 1
            continue
        s = spoly(fi, fj, LK - fi[0][0], LE - Ei, LK - fj[0][0], LE - Ej, modulus)
        if not s:
            stats["zero"] += 1
            continue
        h, n, _ = reduce(s, G, guard, modulus, True, step_limit - steps)
        steps += n
        if h is None:
            stats["steps"] = steps
            return None, stats
        if h:
            add(normalize(h, modulus))
        else:
            stats["zero"] += 1
    stats["steps"] = steps
    return G, stats
