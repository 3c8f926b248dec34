# cython: language_level=3, boundscheck=False, wraparound=False
# distutils: language = c++
"""Compiled reduction kernel; same contract as ``_kernel_py``.

Keys, packed exponents and rational-mode coefficients stay Python integers
(they are unbounded).  Modular coefficients are C ``long long``: the modulus
must be below 2**31 so products fit.
"""

from heapq import heappop, heappush
from math import gcd

from libc.stdint cimport int32_t, int64_t, uint64_t
from libcpp.unordered_set cimport unordered_set
from libcpp.vector cimport vector


cdef list _axpy_mod(list p, Py_ssize_t start, long long b, object mK, object mE,
                    list g, Py_ssize_t gstart, long long modulus):
    cdef list out = []
    cdef Py_ssize_t i = start, j = gstart
    cdef Py_ssize_t np_ = len(p), ng = len(g)
    cdef long long c, cp, cg
    cdef tuple tp, tg
    cdef object Kp, Kg
    while i < np_ and j < ng:
        tp = <tuple>p[i]
        tg = <tuple>g[j]
        Kp = tp[0]
        Kg = tg[0] + mK
        if Kp > Kg:
            out.append(tp)
            i += 1
        elif Kp < Kg:
            cg = tg[2]
            c = (modulus - (b * cg) % modulus) % modulus
            out.append((Kg, tg[1] + mE, c))
            j += 1
        else:
            cp = tp[2]
            cg = tg[2]
            c = (cp - (b * cg) % modulus) % modulus
            if c < 0:
                c += modulus
            if c:
                out.append((Kp, tp[1], c))
            i += 1
            j += 1
    while i < np_:
        out.append(p[i])
        i += 1
    while j < ng:
        tg = <tuple>g[j]
        cg = tg[2]
        c = (modulus - (b * cg) % modulus) % modulus
        out.append((tg[0] + mK, tg[1] + mE, c))
        j += 1
    return out


cdef list _axpy_int(object a, list p, Py_ssize_t start, object b, object mK,
                    object mE, list g, Py_ssize_t gstart):
    cdef list out = []
    cdef Py_ssize_t i = start, j = gstart
    cdef Py_ssize_t np_ = len(p), ng = len(g)
    cdef tuple tp, tg
    cdef object Kp, Kg, c
    cdef bint unit = a == 1
    while i < np_ and j < ng:
        tp = <tuple>p[i]
        tg = <tuple>g[j]
        Kp = tp[0]
        Kg = tg[0] + mK
        if Kp > Kg:
            if unit:
                out.append(tp)
            else:
                out.append((Kp, tp[1], a * tp[2]))
            i += 1
        elif Kp < Kg:
            out.append((Kg, tg[1] + mE, -b * tg[2]))
            j += 1
        else:
            c = a * tp[2] - b * tg[2]
            if c:
                out.append((Kp, tp[1], c))
            i += 1
            j += 1
    while i < np_:
        tp = <tuple>p[i]
        if unit:
            out.append(tp)
        else:
            out.append((tp[0], tp[1], a * tp[2]))
        i += 1
    while j < ng:
        tg = <tuple>g[j]
        out.append((tg[0] + mK, tg[1] + mE, -b * tg[2]))
        j += 1
    return out


def axpy(a, list p, Py_ssize_t start, b, mK, mE, list g, Py_ssize_t gstart, modulus):
    """Return ``a*p[start:] - b*m*g[gstart:]`` as a new term list."""
    if modulus:
        if a != 1:
            raise ValueError("modular axpy requires a == 1")
        return _axpy_mod(p, start, b % modulus, mK, mE, g, gstart, modulus)
    return _axpy_int(a, p, start, b, mK, mE, g, gstart)


def spoly(list f, list g, mK1, mE1, mK2, mE2, modulus):
    """S-polynomial ``lc(g)*m1*f - lc(f)*m2*g``, lead terms cancelled."""
    cdef list shifted = [(K + mK1, E + mE1, c) for K, E, c in f[1:]]
    if modulus:
        return _axpy_mod(shifted, 0, 1, mK2, mE2, g, 1, modulus)
    cf = f[0][2]
    cg = g[0][2]
    d = gcd(cf, cg)
    a = cg // d
    b = cf // d
    if a < 0:
        a = -a
        b = -b
    return _axpy_int(a, shifted, 0, b, mK2, mE2, g, 1)


def reduce(list p, list basis, guard, modulus, bint full, Py_ssize_t max_steps):
    """Reduce ``p`` by ``basis``; returns ``(terms, steps, mult)``.

    ``terms`` is ``None`` when ``max_steps`` is exceeded.
    """
    cdef list leads = [g[0] for g in basis]
    cdef Py_ssize_t nb = len(leads), k, i = 0, steps = 0
    cdef list rem = []
    cdef tuple t, lead
    cdef long long mod = modulus
    cdef object K, E, c, EG, mult = 1, a, b, d
    while i < len(p):
        t = <tuple>p[i]
        E = t[1]
        EG = E | guard
        k = 0
        while k < nb:
            if (EG - (<tuple>leads[k])[1]) & guard == guard:
                break
            k += 1
        if k == nb:
            if not full:
                break
            rem.append((t[0], E, t[2], mult))
            i += 1
            continue
        steps += 1
        if steps > max_steps:
            return None, steps, mult
        lead = <tuple>leads[k]
        K = t[0]
        c = t[2]
        if mod:
            p = _axpy_mod(p, i + 1, c, K - lead[0], E - lead[1], basis[k], 1, mod)
        else:
            d = gcd(c, lead[2])
            a = lead[2] // d
            b = c // d
            if a < 0:
                a = -a
                b = -b
            p = _axpy_int(a, p, i + 1, b, K - lead[0], E - lead[1], basis[k], 1)
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


def key_of(E, tuple unit_keys, fbits):
    """Order key of a packed exponent vector (the key is linear in exponents)."""
    # fbits stays a Python int: a C shift by 32 would overflow
    mask = (1 << fbits) - 1
    K = 0
    cdef Py_ssize_t i
    for i in range(len(unit_keys) - 1, -1, -1):
        f = E & mask
        if f:
            K += f * unit_keys[i]
        E >>= fbits
    return K


def normalize(list terms, modulus):
    """Primitive with positive lead (integers) or monic (modulo a prime)."""
    if modulus:
        lc = terms[0][2]
        if lc == 1:
            return terms
        inv = pow(lc, -1, modulus)
        return [(K, E, c * inv % modulus) for K, E, c in terms]
    g = 0
    for t in terms:
        g = gcd(g, (<tuple>t)[2])
        if g == 1:
            break
    if terms[0][2] < 0:
        g = -g
    if g == 1:
        return terms
    return [(K, E, c // g) for K, E, c in terms]


# -- Buchberger loop on unpacked data ------------------------------------------
#
# Inside the pair loop exponents are C int arrays and order keys are vectors of
# 64-bit row values (the packed key is these rows concatenated, so comparing
# row vectors lexicographically is the same as comparing packed keys).
# Coefficients are C residues modulo a prime, or Python ints otherwise.


cdef class _Poly:
    cdef vector[int32_t] e      # nterms * n exponents
    cdef vector[int64_t] k      # nterms * r key rows
    cdef vector[int64_t] cm     # residues (modular mode)
    cdef list co                # integers (rational mode)
    cdef Py_ssize_t nt

    def __cinit__(self):
        self.co = []
        self.nt = 0


cdef inline int64_t _inv_mod(int64_t a, int64_t m):
    cdef int64_t t = 0, nt = 1, r = m, nr = a % m, q, tmp
    while nr:
        q = r // nr
        tmp = t - q * nt
        t = nt
        nt = tmp
        tmp = r - q * nr
        r = nr
        nr = tmp
    if t < 0:
        t += m
    return t


cdef class _Loop:
    cdef Py_ssize_t n, r
    cdef int64_t mod
    cdef vector[int64_t] A          # r x n key matrix, row major
    cdef list G                     # basis polynomials (_Poly)
    cdef vector[int32_t] lead_e     # basis leads, nb * n
    cdef vector[uint64_t] lead_mask
    cdef object unit_keys, fbits

    def __init__(self, tuple unit_keys, fbits, modulus):
        cdef Py_ssize_t i, row
        self.n = len(unit_keys)
        self.unit_keys = unit_keys
        self.fbits = fbits
        self.mod = modulus
        mask = (1 << fbits) - 1
        width = max([uk.bit_length() for uk in unit_keys] + [1])
        self.r = (width + fbits - 1) // fbits
        self.A.resize(self.r * self.n)
        for i in range(self.n):
            uk = unit_keys[i]
            for row in range(self.r - 1, -1, -1):
                self.A[row * self.n + i] = uk & mask
                uk >>= fbits
        self.G = []

    # -- conversion ------------------------------------------------------------

    cdef _Poly from_terms(self, list terms):
        cdef _Poly p = _Poly()
        cdef Py_ssize_t i, row, n = self.n, r = self.r, base
        cdef int64_t acc
        fbits = self.fbits
        mask = (1 << fbits) - 1
        p.e.resize(len(terms) * n)
        p.k.resize(len(terms) * r)
        for t in terms:
            E = t[1]
            base = p.nt * n
            for i in range(n - 1, -1, -1):
                p.e[base + i] = E & mask
                E >>= fbits
            for row in range(r):
                acc = 0
                for i in range(n):
                    acc += self.A[row * n + i] * p.e[base + i]
                p.k[p.nt * r + row] = acc
            if self.mod:
                p.cm.push_back(t[2])
            else:
                p.co.append(t[2])
            p.nt += 1
        return p

    cdef list to_terms(self, _Poly p):
        cdef Py_ssize_t t, i, n = self.n
        out = []
        fbits = self.fbits
        uks = self.unit_keys
        for t in range(p.nt):
            E = 0
            K = 0
            for i in range(n):
                E = (E << fbits) | p.e[t * n + i]
                if p.e[t * n + i]:
                    K += p.e[t * n + i] * uks[i]
            out.append((K, E, p.cm[t] if self.mod else p.co[t]))
        return out

    # -- term helpers ----------------------------------------------------------

    cdef inline uint64_t mask_of(self, const int32_t* e):
        cdef uint64_t m = 0
        cdef Py_ssize_t i
        for i in range(self.n):
            if e[i]:
                m |= (<uint64_t>1) << (i & 63)
        return m

    cdef inline bint divides(self, const int32_t* a, const int32_t* b):
        cdef Py_ssize_t i
        for i in range(self.n):
            if a[i] > b[i]:
                return False
        return True

    cdef inline int cmp_shifted(self, const int64_t* x, const int64_t* y, const int64_t* shift):
        """Sign of ``x - (y + shift)`` in the lexicographic order on key rows."""
        cdef Py_ssize_t row
        cdef int64_t yy
        for row in range(self.r):
            yy = y[row] + shift[row]
            if x[row] != yy:
                return 1 if x[row] > yy else -1
        return 0

    cdef inline void push_term(self, _Poly out, const int32_t* e, const int32_t* de,
                               const int64_t* k, const int64_t* dk):
        cdef Py_ssize_t i
        for i in range(self.n):
            out.e.push_back(e[i] + de[i])
        for i in range(self.r):
            out.k.push_back(k[i] + dk[i])
        out.nt += 1

    # -- arithmetic --------------------------------------------------------------

    cdef _Poly axpy(self, object a, _Poly p, Py_ssize_t i0, object b, int64_t bm,
                    const int32_t* me, const int64_t* mk, _Poly g, Py_ssize_t j0):
        """``a*p[i0:] - b*m*g[j0:]``; modular mode uses ``bm`` and ignores ``a``."""
        cdef _Poly out = _Poly()
        cdef Py_ssize_t i = i0, j = j0, n = self.n, r = self.r
        cdef vector[int32_t] zero_e = vector[int32_t](n, 0)
        cdef vector[int64_t] zero_k = vector[int64_t](r, 0)
        cdef int s
        cdef int64_t c, mod = self.mod
        cdef bint unit = (a == 1)
        out.e.reserve((p.nt - i0 + g.nt - j0) * n)
        out.k.reserve((p.nt - i0 + g.nt - j0) * r)
        while i < p.nt and j < g.nt:
            s = self.cmp_shifted(&p.k[i * r], &g.k[j * r], mk)
            if s > 0:
                self.push_term(out, &p.e[i * n], &zero_e[0], &p.k[i * r], &zero_k[0])
                if mod:
                    out.cm.push_back(p.cm[i])
                else:
                    out.co.append(p.co[i] if unit else a * p.co[i])
                i += 1
            elif s < 0:
                self.push_term(out, &g.e[j * n], me, &g.k[j * r], mk)
                if mod:
                    c = (bm * g.cm[j]) % mod
                    out.cm.push_back(mod - c if c else 0)
                else:
                    out.co.append(-b * g.co[j])
                j += 1
            else:
                if mod:
                    c = (p.cm[i] - (bm * g.cm[j]) % mod) % mod
                    if c < 0:
                        c += mod
                    if c:
                        self.push_term(out, &p.e[i * n], &zero_e[0], &p.k[i * r], &zero_k[0])
                        out.cm.push_back(c)
                else:
                    v = a * p.co[i] - b * g.co[j]
                    if v:
                        self.push_term(out, &p.e[i * n], &zero_e[0], &p.k[i * r], &zero_k[0])
                        out.co.append(v)
                i += 1
                j += 1
        while i < p.nt:
            self.push_term(out, &p.e[i * n], &zero_e[0], &p.k[i * r], &zero_k[0])
            if mod:
                out.cm.push_back(p.cm[i])
            else:
                out.co.append(p.co[i] if unit else a * p.co[i])
            i += 1
        while j < g.nt:
            self.push_term(out, &g.e[j * n], me, &g.k[j * r], mk)
            if mod:
                c = (bm * g.cm[j]) % mod
                out.cm.push_back(mod - c if c else 0)
            else:
                out.co.append(-b * g.co[j])
            j += 1
        return out

    cdef _Poly spoly(self, _Poly f, _Poly g, const int32_t* L, const int64_t* LK):
        cdef Py_ssize_t i, n = self.n, r = self.r
        cdef vector[int32_t] m1e = vector[int32_t](n), m2e = vector[int32_t](n)
        cdef vector[int64_t] m1k = vector[int64_t](r), m2k = vector[int64_t](r)
        cdef vector[int32_t] zero_e = vector[int32_t](n, 0)
        cdef vector[int64_t] zero_k = vector[int64_t](r, 0)
        for i in range(n):
            m1e[i] = L[i] - f.e[i]
            m2e[i] = L[i] - g.e[i]
        for i in range(r):
            m1k[i] = LK[i] - f.k[i]
            m2k[i] = LK[i] - g.k[i]
        # shifted tail of f
        cdef _Poly sf = _Poly()
        for i in range(1, f.nt):
            self.push_term(sf, &f.e[i * n], &m1e[0], &f.k[i * r], &m1k[0])
        if self.mod:
            sf.cm.assign(f.cm.begin() + 1, f.cm.end())
            return self.axpy(1, sf, 0, 1, 1, &m2e[0], &m2k[0], g, 1)
        sf.co = f.co[1:]
        cf = f.co[0]
        cg = g.co[0]
        d = gcd(cf, cg)
        a = cg // d
        b = cf // d
        if a < 0:
            a = -a
            b = -b
        return self.axpy(a, sf, 0, b, 0, &m2e[0], &m2k[0], g, 1)

    cdef tuple reduce(self, _Poly p, Py_ssize_t max_steps):
        """Full reduction by the current basis; ``(remainder or None, steps)``."""
        cdef Py_ssize_t n = self.n, r = self.r, nb = len(self.G)
        cdef Py_ssize_t i = 0, k, steps = 0, t
        cdef uint64_t tm
        cdef _Poly rem = _Poly(), g
        cdef list rem_mult = []
        cdef vector[int32_t] me = vector[int32_t](n)
        cdef vector[int64_t] mk = vector[int64_t](r)
        cdef vector[int32_t] zero_e = vector[int32_t](n, 0)
        cdef vector[int64_t] zero_k = vector[int64_t](r, 0)
        cdef int64_t c
        mult = 1
        while i < p.nt:
            tm = self.mask_of(&p.e[i * n])
            k = 0
            while k < nb:
                if (self.lead_mask[k] & ~tm) == 0 and self.divides(&self.lead_e[k * n], &p.e[i * n]):
                    break
                k += 1
            if k == nb:
                self.push_term(rem, &p.e[i * n], &zero_e[0], &p.k[i * r], &zero_k[0])
                if self.mod:
                    rem.cm.push_back(p.cm[i])
                else:
                    rem.co.append(p.co[i])
                    rem_mult.append(mult)
                i += 1
                continue
            steps += 1
            if steps > max_steps:
                return None, steps
            g = <_Poly>self.G[k]
            for t in range(n):
                me[t] = p.e[i * n + t] - g.e[t]
            for t in range(r):
                mk[t] = p.k[i * r + t] - g.k[t]
            if self.mod:
                p = self.axpy(1, p, i + 1, 1, p.cm[i], &me[0], &mk[0], g, 1)
            else:
                cp = p.co[i]
                gc = g.co[0]
                d = gcd(cp, gc)
                a = gc // d
                b = cp // d
                if a < 0:
                    a = -a
                    b = -b
                p = self.axpy(a, p, i + 1, b, 0, &me[0], &mk[0], g, 1)
                mult *= a
            i = 0
        if not self.mod:
            for t in range(rem.nt):
                m = rem_mult[t]
                if m != mult:
                    rem.co[t] = rem.co[t] * (mult // m)
        return rem, steps

    cdef void normalize(self, _Poly p):
        cdef Py_ssize_t t
        cdef int64_t inv, mod = self.mod
        if mod:
            if p.cm[0] != 1:
                inv = _inv_mod(p.cm[0], mod)
                for t in range(p.nt):
                    p.cm[t] = (p.cm[t] * inv) % mod
            return
        g = 0
        for c in p.co:
            g = gcd(g, c)
            if g == 1:
                break
        if p.co[0] < 0:
            g = -g
        if g != 1:
            p.co = [c // g for c in p.co]

    cdef void add_lead(self, _Poly h):
        cdef Py_ssize_t i
        for i in range(self.n):
            self.lead_e.push_back(h.e[i])
        self.lead_mask.push_back(self.mask_of(&h.e[0]))
        self.G.append(h)

    cdef object pair_key(self, const int32_t* L):
        cdef Py_ssize_t row, i, n = self.n
        cdef int64_t acc
        K = 0
        fbits = self.fbits
        for row in range(self.r):
            acc = 0
            for i in range(n):
                acc += self.A[row * n + i] * L[i]
            K = (K << fbits) | acc
        return K


def groebner_loop(list inputs, guard, tuple unit_keys, fbits, modulus, Py_ssize_t step_limit):
    """Buchberger pair loop with the coprime and chain criteria.

    Returns ``(G, stats)``; ``G`` is ``None`` when the step limit was exceeded.
    """
    cdef _Loop lp = _Loop(unit_keys, fbits, modulus)
    cdef Py_ssize_t n = lp.n, r = lp.r
    cdef list heap = []
    cdef unordered_set[int64_t] pending
    cdef Py_ssize_t steps = 0, used, i, j, k, t, ng
    cdef Py_ssize_t npairs = 0, ncoprime = 0, nchain = 0, nzero = 0
    cdef _Poly fi, fj, h, s
    cdef vector[int32_t] L = vector[int32_t](n)
    cdef vector[int64_t] LK = vector[int64_t](r)
    cdef bint chain, coprime
    cdef uint64_t Lmask

    def push_pairs(int jj):
        cdef Py_ssize_t ii, tt
        cdef vector[int32_t] LL = vector[int32_t](n)
        for ii in range(jj):
            for tt in range(n):
                LL[tt] = max(lp.lead_e[ii * n + tt], lp.lead_e[jj * n + tt])
            heappush(heap, (lp.pair_key(&LL[0]), jj, ii))
            pending.insert((<int64_t>ii << 32) | jj)

    for f in inputs:
        if not f:
            continue
        h, used = lp.reduce(lp.from_terms(f), step_limit - steps)
        steps += used
        if h is None:
            return None, {"steps": steps}
        if h.nt:
            lp.normalize(h)
            lp.add_lead(h)
            push_pairs(len(lp.G) - 1)

    while heap:
        _, j, i = heappop(heap)
        pending.erase((<int64_t>i << 32) | j)
        npairs += 1
        fi = <_Poly>lp.G[i]
        fj = <_Poly>lp.G[j]
        if fi.nt == 1 and fj.nt == 1:
            nzero += 1
            continue
        coprime = True
        for t in range(n):
            if fi.e[t] and fj.e[t]:
                coprime = False
            L[t] = max(fi.e[t], fj.e[t])
        if coprime:
            ncoprime += 1
            continue
        Lmask = lp.mask_of(&L[0])
        chain = False
        ng = len(lp.G)
        for k in range(ng):
            if k == i or k == j:
                continue
            if (lp.lead_mask[k] & ~Lmask) != 0 or not lp.divides(&lp.lead_e[k * n], &L[0]):
                continue
            if pending.count((<int64_t>min(i, k) << 32) | max(i, k)) or \
                    pending.count((<int64_t>min(j, k) << 32) | max(j, k)):
                continue
            chain = True
            break
        if chain:
            nchain += 1
            continue
        for t in range(r):
            LK[t] = 0
            for k in range(n):
                LK[t] += lp.A[t * n + k] * L[k]
        s = lp.spoly(fi, fj, &L[0], &LK[0])
        if not s.nt:
            nzero += 1
            continue
        h, used = lp.reduce(s, step_limit - steps)
        steps += used
        if h is None:
            return None, {"steps": steps}
        if h.nt:
            lp.normalize(h)
            lp.add_lead(h)
            push_pairs(len(lp.G) - 1)
        else:
            nzero += 1
    G = [lp.to_terms(<_Poly>p) for p in lp.G]
    return G, {"pairs": npairs, "coprime": ncoprime, "chain": nchain, "zero": nzero, "steps": steps}
