# cython: language_level=3
"""Compiled F_p matrix kernels.

Mirrors polardesign._pykernels exactly (same entry points, same byte
layouts); the pure module is the readable reference, this one is the fast
path for subspace enumeration and bulk products.
"""

from cpython.bytes cimport PyBytes_FromStringAndSize
from libc.stdlib cimport free, malloc, realloc
from libc.string cimport memcpy, memset

NAME = "compiled"

KIND_ALTERNATING = 0
KIND_HERMITIAN = 1
KIND_QUADRATIC = 2

cdef enum:
    MAXD = 64


cdef int _rref_core(unsigned char* a, int rows, int cols, int p,
                    const unsigned char* addt, const unsigned char* mult,
                    const unsigned char* negt, const unsigned char* invt) noexcept nogil:
    cdef int rank = 0, col, r, c, piv, base, rb, pb
    cdef unsigned char s, f, nf, tmp
    for col in range(cols):
        piv = -1
        for r in range(rank, rows):
            if a[r * cols + col]:
                piv = r
                break
        if piv < 0:
            continue
        if piv != rank:
            rb = rank * cols
            pb = piv * cols
            for c in range(col, cols):
                tmp = a[rb + c]
                a[rb + c] = a[pb + c]
                a[pb + c] = tmp
        base = rank * cols
        s = invt[a[base + col]]
        if s != 1:
            for c in range(col, cols):
                a[base + c] = mult[a[base + c] * p + s]
        for r in range(rows):
            if r == rank:
                continue
            f = a[r * cols + col]
            if f:
                nf = negt[f]
                rb = r * cols
                for c in range(col, cols):
                    a[rb + c] = addt[a[rb + c] * p + mult[a[base + c] * p + nf]]
        rank += 1
        if rank == rows:
            break
    return rank


def rref(bytes mat, int rows, int cols, int p,
         bytes addt, bytes mult, bytes negt, bytes invt):
    """Reduced row echelon form.  Returns (bytes, rank); zero rows trail."""
    cdef unsigned char buf[MAXD * MAXD]
    if rows * cols > MAXD * MAXD:
        raise ValueError("matrix too large for kernel buffers")
    cdef const unsigned char* src = mat
    memcpy(buf, src, rows * cols)
    cdef int rank = _rref_core(buf, rows, cols, p,
                               <const unsigned char*> addt,
                               <const unsigned char*> mult,
                               <const unsigned char*> negt,
                               <const unsigned char*> invt)
    return PyBytes_FromStringAndSize(<char*> buf, rows * cols), rank


def extend_level(bytes mats, int count, int j, int d, int p,
                 bytes addt, bytes mult, bytes negt, bytes invt,
                 int kind, bytes gram, bytes quad, bytes conj):
    """One enumeration level: all isotropic (j+1)-space children of each
    j-space in ``mats``, as concatenated canonical RREF matrices (duplicates
    across parents are the caller's problem)."""
    if d > MAXD or j + 1 > MAXD:
        raise ValueError("dimension too large for kernel buffers")
    cdef const unsigned char* ms = mats
    cdef const unsigned char* ta = addt
    cdef const unsigned char* tm = mult
    cdef const unsigned char* tn = negt
    cdef const unsigned char* ti = invt
    cdef const unsigned char* tg = gram
    cdef const unsigned char* tq = quad if kind == KIND_QUADRATIC else gram
    cdef const unsigned char* tc = conj if kind == KIND_HERMITIAN else gram

    cdef int msize = j * d
    cdef int csize = (j + 1) * d
    cdef size_t cap = 1 << 16
    cdef size_t used = 0
    cdef unsigned char* out = <unsigned char*> malloc(cap)
    if out == NULL:
        raise MemoryError()

    cdef unsigned char M[MAXD * MAXD]
    cdef unsigned char comp[MAXD * MAXD]
    cdef unsigned char accum[2 * MAXD * MAXD]
    cdef int accum_lead[2 * MAXD]
    cdef unsigned char v[MAXD]
    cdef unsigned char child[MAXD * MAXD]
    cdef int pivots[MAXD]
    cdef int spiv[MAXD]
    cdef const unsigned char* S
    cdef unsigned char* wp
    cdef unsigned char acc, sg, gc, ci, rc, vi, vc, cv, gv, f, nf, s, qc
    cdef int im, i, c, g, r, mrank, npiv, ncomp, naccum, lead, nfree, pos, c0, pv
    cdef int row_i, ins, slot, skip
    cdef long it, total, x

    try:
        for im in range(count):
            S = ms + im * msize
            for i in range(j):
                pv = 0
                while not S[i * d + pv]:
                    pv += 1
                spiv[i] = pv

            # constraint matrix: new vector v must satisfy B(s_i, v) = 0
            for i in range(j):
                for c in range(d):
                    acc = 0
                    for g in range(d):
                        sg = S[i * d + g]
                        if sg:
                            gc = tg[g * d + c]
                            if gc:
                                acc = ta[acc * p + tm[sg * p + gc]]
                    if kind == KIND_HERMITIAN:
                        acc = tc[acc]
                    M[i * d + c] = acc
            mrank = _rref_core(M, j, d, p, ta, tm, tn, ti) if j else 0
            npiv = 0
            for r in range(mrank):
                c = 0
                while not M[r * d + c]:
                    c += 1
                pivots[npiv] = c
                npiv += 1

            # accumulator starts as S (already RREF, pivots ascending)
            naccum = j
            for i in range(j):
                accum_lead[i] = spiv[i]
                memcpy(accum + i * d, S + i * d, d)

            # kernel basis of M reduced mod the accumulator -> complement of S
            ncomp = 0
            for c0 in range(d):
                skip = 0
                for i in range(npiv):
                    if pivots[i] == c0:
                        skip = 1
                        break
                if skip:
                    continue
                for c in range(d):
                    v[c] = 0
                v[c0] = 1
                for i in range(npiv):
                    v[pivots[i]] = tn[M[i * d + c0]]
                for i in range(naccum):
                    pv = accum_lead[i]
                    f = v[pv]
                    if f:
                        nf = tn[f]
                        wp = accum + i * d
                        for c in range(pv, d):
                            rc = wp[c]
                            if rc:
                                v[c] = ta[v[c] * p + tm[rc * p + nf]]
                lead = -1
                for c in range(d):
                    if v[c]:
                        lead = c
                        break
                if lead < 0:
                    continue
                s = ti[v[lead]]
                if s != 1:
                    for c in range(lead, d):
                        v[c] = tm[v[c] * p + s]
                # insert into accumulator keeping pivots ascending
                slot = naccum
                for i in range(naccum):
                    if accum_lead[i] > lead:
                        slot = i
                        break
                for i in range(naccum, slot, -1):
                    accum_lead[i] = accum_lead[i - 1]
                    memcpy(accum + i * d, accum + (i - 1) * d, d)
                accum_lead[slot] = lead
                memcpy(accum + slot * d, v, d)
                naccum += 1
                memcpy(comp + ncomp * d, v, d)
                ncomp += 1

            # one candidate vector per projective point of perp(S)/S
            for lead in range(ncomp):
                nfree = ncomp - 1 - lead
                total = 1
                for pos in range(nfree):
                    total *= p
                for it in range(total):
                    memcpy(v, comp + lead * d, d)
                    x = it
                    for pos in range(nfree):
                        ci = <unsigned char> (x % p)
                        x //= p
                        if ci:
                            wp = comp + (lead + 1 + pos) * d
                            for c in range(d):
                                rc = wp[c]
                                if rc:
                                    v[c] = ta[v[c] * p + tm[ci * p + rc]]

                    if kind == KIND_HERMITIAN:
                        acc = 0
                        for c in range(d):
                            cv = tc[v[c]]
                            if cv:
                                gv = 0
                                for g in range(d):
                                    vi = v[g]
                                    if vi:
                                        gc = tg[g * d + c]
                                        if gc:
                                            gv = ta[gv * p + tm[vi * p + gc]]
                                acc = ta[acc * p + tm[gv * p + cv]]
                        if acc:
                            continue
                    elif kind == KIND_QUADRATIC:
                        acc = 0
                        for i in range(d):
                            vi = v[i]
                            if vi:
                                for c in range(i, d):
                                    qc = tq[i * d + c]
                                    if qc and v[c]:
                                        acc = ta[acc * p + tm[tm[vi * p + v[c]] * p + qc]]
                        if acc:
                            continue

                    # canonical insertion of v into S
                    c0 = 0
                    while not v[c0]:
                        c0 += 1
                    s = ti[v[c0]]
                    if s != 1:
                        for c in range(c0, d):
                            v[c] = tm[v[c] * p + s]
                    ins = 0
                    row_i = 0
                    for i in range(j):
                        if not ins and c0 < spiv[i]:
                            memcpy(child + row_i * d, v, d)
                            row_i += 1
                            ins = 1
                        memcpy(child + row_i * d, S + i * d, d)
                        f = child[row_i * d + c0]
                        if f:
                            nf = tn[f]
                            for c in range(c0, d):
                                vc = v[c]
                                if vc:
                                    child[row_i * d + c] = ta[
                                        child[row_i * d + c] * p + tm[vc * p + nf]
                                    ]
                        row_i += 1
                    if not ins:
                        memcpy(child + row_i * d, v, d)

                    if used + csize > cap:
                        cap = cap * 2 if cap * 2 > used + csize else used + csize
                        out = <unsigned char*> realloc(out, cap)
                        if out == NULL:
                            raise MemoryError()
                    memcpy(out + used, child, csize)
                    used += csize
        return PyBytes_FromStringAndSize(<char*> out, used)
    finally:
        free(out)


def products(bytes tmats, int count, int t, int kdim, bytes umat, int d, int p,
             bytes addt, bytes mult):
    """Batch of T @ U products: ``count`` many t x kdim matrices against one
    kdim x d matrix.  RREF inputs yield RREF outputs."""
    cdef const unsigned char* tms = tmats
    cdef const unsigned char* um = umat
    cdef const unsigned char* ta = addt
    cdef const unsigned char* tm = mult
    cdef size_t n = <size_t> count * t * d
    cdef unsigned char* out = <unsigned char*> malloc(n if n else 1)
    if out == NULL:
        raise MemoryError()
    memset(out, 0, n)
    cdef int im, i, g, c
    cdef long tb, ob, rb, ub
    cdef unsigned char coef, uv
    try:
        with nogil:
            for im in range(count):
                tb = <long> im * t * kdim
                ob = <long> im * t * d
                for i in range(t):
                    rb = ob + i * d
                    for g in range(kdim):
                        coef = tms[tb + i * kdim + g]
                        if coef:
                            ub = g * d
                            for c in range(d):
                                uv = um[ub + c]
                                if uv:
                                    out[rb + c] = ta[out[rb + c] * p + tm[coef * p + uv]]
        return PyBytes_FromStringAndSize(<char*> out, <Py_ssize_t> n)
    finally:
        free(out)
