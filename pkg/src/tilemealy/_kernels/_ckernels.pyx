# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; behaviour is identical to ``_pure``."""
from cpython.bytes cimport PyBytes_FromStringAndSize
from libc.stdlib cimport malloc, realloc, free
from libc.string cimport memcpy

from tilemealy._kernels._pure import CapExceeded, FOUND, NONE, BUDGET


cdef int* _int_buffer(object seq, Py_ssize_t *size) except NULL:
    cdef Py_ssize_t n = len(seq), i
    cdef int *buf = <int*>malloc((n if n > 0 else 1) * sizeof(int))
    if buf == NULL:
        raise MemoryError()
    for i in range(n):
        buf[i] = seq[i]
    size[0] = n
    return buf


cdef class _IntVec:
    cdef int *data
    cdef Py_ssize_t size, cap

    def __cinit__(self):
        self.cap = 64
        self.size = 0
        self.data = <int*>malloc(self.cap * sizeof(int))
        if self.data == NULL:
            raise MemoryError()

    def __dealloc__(self):
        free(self.data)

    cdef int reserve(self, Py_ssize_t extra) except -1:
        cdef int *grown
        if self.size + extra <= self.cap:
            return 0
        while self.size + extra > self.cap:
            self.cap *= 2
        grown = <int*>realloc(self.data, self.cap * sizeof(int))
        if grown == NULL:
            raise MemoryError()
        self.data = grown
        return 0

    cdef list tolist(self):
        cdef Py_ssize_t i
        return [self.data[i] for i in range(self.size)]


def power_explore(delta, sigma, int k, init, Py_ssize_t cap):
    cdef Py_ssize_t nd, ns, m = len(init), q = 0, i, nwords = 1
    cdef int *d = _int_buffer(delta, &nd)
    cdef int *s
    cdef int *cur
    cdef int x, x0, j
    cdef _IntVec words = _IntVec(), trans = _IntVec(), out = _IntVec()
    cdef dict index = {}
    cdef bytes key
    try:
        s = _int_buffer(sigma, &ns)
    except BaseException:
        free(d)
        raise
    cur = <int*>malloc((m if m > 0 else 1) * sizeof(int))
    try:
        words.reserve(m)
        for i in range(m):
            words.data[i] = init[i]
        words.size = m
        index[PyBytes_FromStringAndSize(<char*>words.data, m * sizeof(int))] = 0
        while q < nwords:
            trans.reserve(k)
            out.reserve(k)
            for x0 in range(k):
                x = x0
                for i in range(m):
                    j = words.data[q * m + i] * k + x
                    cur[i] = d[j]
                    x = s[j]
                key = PyBytes_FromStringAndSize(<char*>cur, m * sizeof(int))
                r = index.get(key)
                if r is None:
                    if nwords >= cap:
                        raise CapExceeded(cap)
                    r = nwords
                    index[key] = r
                    words.reserve(m)
                    memcpy(&words.data[nwords * m], cur, m * sizeof(int))
                    words.size += m
                    nwords += 1
                trans.data[trans.size] = r
                trans.size += 1
                out.data[out.size] = x
                out.size += 1
            q += 1
    finally:
        free(d)
        free(s)
        free(cur)
    return trans.tolist(), out.tolist(), nwords


def compose(t1, o1, int n1, t2, o2, int n2, int k, Py_ssize_t cap):
    cdef Py_ssize_t sz, npairs = 1, q = 0, total = <Py_ssize_t>n1 * n2, pid
    cdef int *a1 = _int_buffer(t1, &sz)
    cdef int *b1 = _int_buffer(o1, &sz)
    cdef int *a2 = _int_buffer(t2, &sz)
    cdef int *b2 = _int_buffer(o2, &sz)
    cdef int *seen = <int*>malloc((total if total > 0 else 1) * sizeof(int))
    cdef _IntVec pairs = _IntVec(), trans = _IntVec(), out = _IntVec()
    cdef int p1, p2, x, y, j1, j2, r
    try:
        if seen == NULL:
            raise MemoryError()
        for pid in range(total):
            seen[pid] = -1
        seen[0] = 0
        pairs.reserve(2)
        pairs.data[0] = 0
        pairs.data[1] = 0
        pairs.size = 2
        while q < npairs:
            p1 = pairs.data[2 * q]
            p2 = pairs.data[2 * q + 1]
            trans.reserve(k)
            out.reserve(k)
            for x in range(k):
                j1 = p1 * k + x
                y = b1[j1]
                j2 = p2 * k + y
                pid = <Py_ssize_t>a1[j1] * n2 + a2[j2]
                r = seen[pid]
                if r < 0:
                    if npairs >= cap:
                        raise CapExceeded(cap)
                    r = npairs
                    seen[pid] = r
                    pairs.reserve(2)
                    pairs.data[pairs.size] = a1[j1]
                    pairs.data[pairs.size + 1] = a2[j2]
                    pairs.size += 2
                    npairs += 1
                trans.data[trans.size] = r
                trans.size += 1
                out.data[out.size] = b2[j2]
                out.size += 1
            q += 1
    finally:
        free(a1)
        free(b1)
        free(a2)
        free(b2)
        free(seen)
    return trans.tolist(), out.tolist(), npairs


def canonical(trans, out, int n, int k):
    cdef Py_ssize_t sz
    cdef int *t = _int_buffer(trans, &sz)
    cdef int *o = _int_buffer(out, &sz)
    cdef int *block = <int*>malloc(n * sizeof(int))
    cdef int *new = <int*>malloc(n * sizeof(int))
    cdef int *sig = <int*>malloc((k + 1) * sizeof(int))
    cdef int *rep
    cdef int *label
    cdef int *queue
    cdef int q, x, count, ncount, b, nb, head, tail, nlab
    cdef dict ids
    cdef _IntVec ctrans = _IntVec(), cout = _IntVec()
    try:
        ids = {}
        for q in range(n):
            key = PyBytes_FromStringAndSize(<char*>&o[q * k], k * sizeof(int))
            block[q] = ids.setdefault(key, len(ids))
        count = len(ids)
        while True:
            ids = {}
            for q in range(n):
                sig[0] = block[q]
                for x in range(k):
                    sig[x + 1] = block[t[q * k + x]]
                key = PyBytes_FromStringAndSize(<char*>sig, (k + 1) * sizeof(int))
                new[q] = ids.setdefault(key, len(ids))
            ncount = len(ids)
            if ncount == count:
                break
            count = ncount
            memcpy(block, new, n * sizeof(int))
        rep = <int*>malloc(count * sizeof(int))
        label = <int*>malloc(count * sizeof(int))
        queue = <int*>malloc(count * sizeof(int))
        try:
            for b in range(count):
                rep[b] = -1
                label[b] = -1
            for q in range(n):
                if rep[block[q]] < 0:
                    rep[block[q]] = q
            label[block[0]] = 0
            nlab = 1
            queue[0] = block[0]
            head, tail = 0, 1
            while head < tail:
                b = queue[head]
                head += 1
                q = rep[b]
                ctrans.reserve(k)
                cout.reserve(k)
                for x in range(k):
                    nb = block[t[q * k + x]]
                    if label[nb] < 0:
                        label[nb] = nlab
                        nlab += 1
                        queue[tail] = nb
                        tail += 1
                    ctrans.data[ctrans.size] = label[nb]
                    ctrans.size += 1
                    cout.data[cout.size] = o[q * k + x]
                    cout.size += 1
        finally:
            free(rep)
            free(label)
            free(queue)
    finally:
        free(t)
        free(o)
        free(block)
        free(new)
        free(sig)
    return ctrans.tolist(), cout.tolist(), nlab


def grid_search(int width, int height, bint torus, tn, ts, te, tw, int ncolors, long long budget):
    cdef Py_ssize_t ntiles, sz
    cdef int *N = _int_buffer(tn, &ntiles)
    cdef int *S = _int_buffer(ts, &sz)
    cdef int *E = _int_buffer(te, &sz)
    cdef int *W = _int_buffer(tw, &sz)
    cdef int nc1 = ncolors + 1, ncells = width * height
    # candidate table: bucket (w+1)*nc1 + (s+1) -> tiles [start[b], start[b+1])
    cdef int nb = nc1 * nc1
    cdef int *start = <int*>malloc((nb + 1) * sizeof(int))
    cdef int *cand = <int*>malloc((nb * ntiles + 1) * sizeof(int))
    cdef int *grid = <int*>malloc((ncells + 1) * sizeof(int))
    cdef int *choice = <int*>malloc((ncells + 1) * sizeof(int))
    cdef int *bucket = <int*>malloc((ncells + 1) * sizeof(int))
    cdef int w, s, t, b, i, x, y, pos = 0, status
    cdef long long nodes = 0
    cdef bint placed
    try:
        for w in range(-1, ncolors):
            for s in range(-1, ncolors):
                b = (w + 1) * nc1 + (s + 1)
                start[b] = pos
                for t in range(ntiles):
                    if (w < 0 or W[t] == w) and (s < 0 or S[t] == s):
                        cand[pos] = t
                        pos += 1
        start[nb] = pos
        if ncells == 0:
            return FOUND, [], 0
        i = 0
        bucket[0] = 0
        choice[0] = 0
        status = -1
        while status < 0:
            x = i % width
            y = i // width
            b = bucket[i]
            placed = False
            while start[b] + choice[i] < start[b + 1]:
                t = cand[start[b] + choice[i]]
                choice[i] += 1
                nodes += 1
                if nodes > budget:
                    status = BUDGET
                    break
                if torus:
                    if x == width - 1 and E[t] != W[grid[y * width] if width > 1 else t]:
                        continue
                    if y == height - 1 and N[t] != S[grid[x] if height > 1 else t]:
                        continue
                grid[i] = t
                placed = True
                break
            if status >= 0:
                break
            if placed:
                i += 1
                if i == ncells:
                    status = FOUND
                    break
                x = i % width
                y = i // width
                w = E[grid[i - 1]] if x > 0 else -1
                s = N[grid[i - width]] if y > 0 else -1
                bucket[i] = (w + 1) * nc1 + (s + 1)
                choice[i] = 0
            else:
                grid[i] = -1
                i -= 1
                if i < 0:
                    status = NONE
        if status == FOUND:
            return FOUND, [grid[i] for i in range(ncells)], nodes
        return status, None, nodes
    finally:
        free(N)
        free(S)
        free(E)
        free(W)
        free(start)
        free(cand)
        free(grid)
        free(choice)
        free(bucket)
