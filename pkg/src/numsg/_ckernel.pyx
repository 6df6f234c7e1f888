# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled counting kernel; same contract as ``numsg._pykernel.count_subtree``.

Traversal keeps one frame per depth: a byte membership array, the list of
effective generators and the index of the next generator to expand.
"""

from libc.stdlib cimport calloc, free
from libc.string cimport memcpy

BACKEND = "cython"


cdef inline int _gcd(int a, int b) noexcept nogil:
    cdef int t
    while b:
        t = a % b
        a = b
        b = t
    return a


cdef inline bint _decomposable(const unsigned char* mem, int y, int lo) noexcept nogil:
    cdef int a
    for a in range(lo, y // 2 + 1):
        if mem[a] and mem[y - a]:
            return True
    return False


cdef inline void _tally(int c, int m, int g, int d, const int* gens, int ngens,
                        long long* count, long long* chain, long long* chain_by_m,
                        long long* fert, int stride) noexcept nogil:
    cdef int kids = 0
    cdef int k
    count[g] += 1
    if d == 1:
        return
    chain[g] += 1
    chain_by_m[g * stride + m] += 1
    for k in range(ngens):
        if gens[k] == c:
            kids += 1
        elif gens[k] == c + 1:
            if _gcd(d, c) != 1:
                kids += 1
        elif gens[k] > c + 1:
            break
    if 2 * kids > ngens:
        fert[g] += 1


def count_subtree(object bits, int c, int m, int g, int max_genus,
                  bint chain_only=False, int fixed_m=0):
    cdef int size = max_genus + 1
    cdef int stride = max_genus + 2
    count = [0] * size
    examined = [0] * size
    chain = [0] * size
    chain_by_m = [0] * (size * stride)
    fert = [0] * size
    if g > max_genus:
        return count, examined, chain, chain_by_m, fert

    cdef int width = max(4 * max_genus + 8, c + m + 2)
    cdef int depth = max_genus - g + 1
    cdef int gcap = max_genus + 2
    cdef unsigned char* mem = <unsigned char*> calloc(depth * width, 1)
    cdef int* gens = <int*> calloc(depth * gcap, sizeof(int))
    cdef int* ngens = <int*> calloc(depth, sizeof(int))
    cdef int* nxt = <int*> calloc(depth, sizeof(int))
    cdef int* cc = <int*> calloc(depth, sizeof(int))
    cdef int* mm = <int*> calloc(depth, sizeof(int))
    cdef int* dd = <int*> calloc(depth, sizeof(int))
    cdef long long* c_count = <long long*> calloc(size, sizeof(long long))
    cdef long long* c_exam = <long long*> calloc(size, sizeof(long long))
    cdef long long* c_chain = <long long*> calloc(size, sizeof(long long))
    cdef long long* c_bym = <long long*> calloc(size * stride, sizeof(long long))
    cdef long long* c_fert = <long long*> calloc(size, sizeof(long long))
    if not (mem and gens and ngens and nxt and cc and mm and dd and c_count
            and c_exam and c_chain and c_bym and c_fert):
        free(mem); free(gens); free(ngens); free(nxt); free(cc); free(mm); free(dd)
        free(c_count); free(c_exam); free(c_chain); free(c_bym); free(c_fert)
        raise MemoryError()

    cdef int i, x, y, top, q, k, nm, nd, gq, d0
    cdef unsigned char* pm
    cdef unsigned char* qm
    cdef int* pg
    cdef int* qg
    try:
        for i in range(width):
            mem[i] = 1 if (i >= c or (bits >> i) & 1) else 0
        k = 0
        for x in range(max(c, 1), c + m + 1):
            if not _decomposable(mem, x, 1):
                gens[k] = x
                k += 1
        d0 = 0
        for i in range(1, c):
            if mem[i]:
                d0 = _gcd(d0, i)
        ngens[0] = k
        nxt[0] = 0
        cc[0] = c
        mm[0] = m
        dd[0] = d0
        c_exam[g] += 1
        _tally(c, m, g, d0, gens, k, c_count, c_chain, c_bym, c_fert, stride)

        with nogil:
            top = 0
            while top >= 0:
                if g + top >= max_genus or nxt[top] >= ngens[top]:
                    top -= 1
                    continue
                pg = gens + top * gcap
                x = pg[nxt[top]]
                nxt[top] += 1
                if x == cc[top]:
                    nd = dd[top]
                elif x == cc[top] + 1:
                    nd = _gcd(dd[top], cc[top])
                else:
                    nd = 1
                nm = mm[top] + 1 if x == mm[top] else mm[top]
                gq = g + top + 1
                c_exam[gq] += 1
                if (fixed_m and nm != fixed_m) or (chain_only and nd == 1):
                    continue
                q = top + 1
                pm = mem + top * width
                qm = mem + q * width
                memcpy(qm, pm, width)
                qm[x] = 0
                qg = gens + q * gcap
                k = 0
                if x == mm[top]:
                    for y in range(nm, 2 * nm):
                        qg[k] = y
                        k += 1
                else:
                    for i in range(nxt[top], ngens[top]):
                        qg[k] = pg[i]
                        k += 1
                    y = x + nm
                    if not _decomposable(qm, y, nm):
                        qg[k] = y
                        k += 1
                ngens[q] = k
                nxt[q] = 0
                cc[q] = x + 1
                mm[q] = nm
                dd[q] = nd
                _tally(x + 1, nm, gq, nd, qg, k, c_count, c_chain, c_bym, c_fert, stride)
                top = q

        for i in range(size):
            count[i] = c_count[i]
            examined[i] = c_exam[i]
            chain[i] = c_chain[i]
            fert[i] = c_fert[i]
        for i in range(size * stride):
            chain_by_m[i] = c_bym[i]
    finally:
        free(mem); free(gens); free(ngens); free(nxt); free(cc); free(mm); free(dd)
        free(c_count); free(c_exam); free(c_chain); free(c_bym); free(c_fert)
    return count, examined, chain, chain_by_m, fert
