# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled lifting kernels; see ``_lift_kernels_py`` for the contract.

Only the exhaustive lift searches are compiled; the square solvers are
cheap backtracking and are shared with the Python module.

Candidates are packed into integer codes with the first column (or table
entry) in the most significant position, so increasing codes enumerate
tuples in lexicographic order.
"""
from libc.stdlib cimport calloc, free
from libc.stdint cimport int64_t, uint8_t, uint64_t

from factorkit._lift_kernels_py import rel_solve, fun_solve

cdef enum:
    MAXN = 64


cdef inline bint _test(uint8_t* bits, uint64_t i):
    return (bits[i >> 3] >> (i & 7)) & 1


cdef inline void _set(uint8_t* bits, uint64_t i):
    bits[i >> 3] |= <uint8_t>(1 << (i & 7))


def rel_lift_witness(f_cols, int nX, g_cols, int nY, int nZ):
    cdef int nW = len(f_cols)
    cdef int w, x, k, s
    cdef uint64_t maskY = (1ULL << nY) - 1
    cdef uint64_t maskZ = (1ULL << nZ) - 1
    cdef int bits_a = nW * nY, bits_b = nX * nZ, bits_h = nX * nY
    cdef int64_t n_h = 1LL << bits_h, n_a = 1LL << bits_a, n_b = 1LL << bits_b
    cdef int64_t n_t = 1LL << (nW * nZ)
    cdef int nmem[MAXN]
    cdef int mem[MAXN][MAXN]
    cdef uint64_t col[MAXN]
    cdef int64_t hc, ac, bc, tc, total, n_img
    cdef uint64_t acc, pair
    if nW > MAXN or nX > MAXN:
        raise ValueError("square too large for the compiled kernel")
    for w in range(nW):
        nmem[w] = 0
        for x in range(nX):
            if (<uint64_t>f_cols[w] >> x) & 1:
                mem[w][nmem[w]] = x
                nmem[w] += 1

    cdef uint64_t* gt = <uint64_t*>calloc(1ULL << nY, sizeof(uint64_t))
    cdef uint8_t* seen = <uint8_t*>calloc(((1ULL << (bits_a + bits_b)) >> 3) + 1, 1)
    cdef int64_t* per_a = <int64_t*>calloc(n_a, sizeof(int64_t))
    cdef int64_t* hist = <int64_t*>calloc(n_t, sizeof(int64_t))
    if gt == NULL or seen == NULL or per_a == NULL or hist == NULL:
        free(gt); free(seen); free(per_a); free(hist)
        raise MemoryError()
    try:
        for s in range(1, 1 << nY):
            k = 0
            while not (s >> k) & 1:
                k += 1
            gt[s] = gt[s & ~(1 << k)] | <uint64_t>g_cols[k]

        n_img = 0
        for hc in range(n_h):
            for x in range(nX):
                col[x] = (<uint64_t>hc >> ((nX - 1 - x) * nY)) & maskY
            ac = 0
            for w in range(nW):
                acc = 0
                for k in range(nmem[w]):
                    acc |= col[mem[w][k]]
                ac |= <int64_t>(acc << ((nW - 1 - w) * nY))
            bc = 0
            for x in range(nX):
                bc |= <int64_t>(gt[col[x]] << ((nX - 1 - x) * nZ))
            pair = (<uint64_t>ac << bits_b) | <uint64_t>bc
            if not _test(seen, pair):
                _set(seen, pair)
                n_img += 1
                per_a[ac] += 1

        for bc in range(n_b):
            tc = 0
            for w in range(nW):
                acc = 0
                for k in range(nmem[w]):
                    x = mem[w][k]
                    acc |= (<uint64_t>bc >> ((nX - 1 - x) * nZ)) & maskZ
                tc |= <int64_t>(acc << ((nW - 1 - w) * nZ))
            hist[tc] += 1

        total = 0
        for ac in range(n_a):
            total += hist[_target(ac, nW, nY, nZ, gt, maskY)]
        if total == n_img:
            return None

        for ac in range(n_a):
            tc = _target(ac, nW, nY, nZ, gt, maskY)
            if per_a[ac] >= hist[tc]:
                continue
            for bc in range(n_b):
                pair = (<uint64_t>ac << bits_b) | <uint64_t>bc
                if _test(seen, pair):
                    continue
                acc = 0
                for w in range(nW):
                    col[0] = 0
                    for k in range(nmem[w]):
                        x = mem[w][k]
                        col[0] |= (<uint64_t>bc >> ((nX - 1 - x) * nZ)) & maskZ
                    acc |= col[0] << ((nW - 1 - w) * nZ)
                if <int64_t>acc == tc:
                    return (_unpack(ac, nW, nY), _unpack(bc, nX, nZ))
        raise AssertionError("count mismatch without a witness")
    finally:
        free(gt); free(seen); free(per_a); free(hist)


cdef inline int64_t _target(int64_t ac, int nW, int nY, int nZ, uint64_t* gt, uint64_t maskY):
    cdef int64_t tc = 0
    cdef int w
    for w in range(nW):
        tc |= <int64_t>(gt[(<uint64_t>ac >> ((nW - 1 - w) * nY)) & maskY] << ((nW - 1 - w) * nZ))
    return tc


cdef tuple _unpack(int64_t code, int n, int width):
    cdef uint64_t mask = (1ULL << width) - 1
    return tuple(int((<uint64_t>code >> ((n - 1 - i) * width)) & mask) for i in range(n))


def fun_lift_witness(f_tab, int nX, g_tab, int nY, int nZ):
    cdef int nW = len(f_tab)
    cdef int w, x
    cdef int64_t n_h = 1, n_a = 1, n_b = 1, n_t = 1
    for x in range(nX):
        n_h *= nY
        n_b *= nZ
    for w in range(nW):
        n_a *= nY
        n_t *= nZ
    cdef int fw[MAXN]
    cdef int gy[MAXN]
    cdef int64_t powY[MAXN]
    cdef int64_t powZ[MAXN]
    cdef int64_t powYw[MAXN]
    cdef int64_t powZw[MAXN]
    cdef int digit[MAXN]
    cdef int64_t hc, ac, bc, tc, total, n_img, rem
    cdef uint64_t pair
    if nW > MAXN or nX > MAXN or nY > MAXN:
        raise ValueError("square too large for the compiled kernel")
    for w in range(nW):
        fw[w] = f_tab[w]
    for x in range(nY):
        gy[x] = g_tab[x]
    # place values: entry 0 is most significant
    for x in range(nX):
        powY[x] = 1
        powZ[x] = 1
        for w in range(nX - 1 - x):
            powY[x] *= nY
            powZ[x] *= nZ
    for w in range(nW):
        powYw[w] = 1
        powZw[w] = 1
        for x in range(nW - 1 - w):
            powYw[w] *= nY
            powZw[w] *= nZ

    if n_a == 0:
        return None
    cdef uint8_t* seen = <uint8_t*>calloc(((<uint64_t>n_a * <uint64_t>n_b) >> 3) + 1, 1)
    cdef int64_t* per_a = <int64_t*>calloc(n_a, sizeof(int64_t))
    cdef int64_t* hist = <int64_t*>calloc(n_t if n_t > 0 else 1, sizeof(int64_t))
    if seen == NULL or per_a == NULL or hist == NULL:
        free(seen); free(per_a); free(hist)
        raise MemoryError()
    try:
        n_img = 0
        for hc in range(n_h):
            rem = hc
            for x in range(nX - 1, -1, -1):
                digit[x] = rem % nY
                rem //= nY
            ac = 0
            for w in range(nW):
                ac += digit[fw[w]] * powYw[w]
            bc = 0
            for x in range(nX):
                bc += gy[digit[x]] * powZ[x]
            pair = <uint64_t>ac * <uint64_t>n_b + <uint64_t>bc
            if not _test(seen, pair):
                _set(seen, pair)
                n_img += 1
                per_a[ac] += 1

        for bc in range(n_b):
            rem = bc
            for x in range(nX - 1, -1, -1):
                digit[x] = rem % nZ
                rem //= nZ
            tc = 0
            for w in range(nW):
                tc += digit[fw[w]] * powZw[w]
            hist[tc] += 1

        total = 0
        for ac in range(n_a):
            rem = ac
            tc = 0
            for w in range(nW - 1, -1, -1):
                tc += gy[rem % nY] * powZw[w]
                rem //= nY
            total += hist[tc]
        if total == n_img:
            return None

        for ac in range(n_a):
            rem = ac
            tc = 0
            for w in range(nW - 1, -1, -1):
                tc += gy[rem % nY] * powZw[w]
                rem //= nY
            if per_a[ac] >= hist[tc]:
                continue
            for bc in range(n_b):
                pair = <uint64_t>ac * <uint64_t>n_b + <uint64_t>bc
                if _test(seen, pair):
                    continue
                rem = bc
                for x in range(nX - 1, -1, -1):
                    digit[x] = rem % nZ
                    rem //= nZ
                rem = 0
                for w in range(nW):
                    rem += digit[fw[w]] * powZw[w]
                if rem == tc:
                    return (_unpack_mixed(ac, nW, nY), _unpack_mixed(bc, nX, nZ))
        raise AssertionError("count mismatch without a witness")
    finally:
        free(seen); free(per_a); free(hist)


cdef tuple _unpack_mixed(int64_t code, int n, int radix):
    out = [0] * n
    cdef int i
    for i in range(n - 1, -1, -1):
        out[i] = int(code % radix)
        code //= radix
    return tuple(out)
