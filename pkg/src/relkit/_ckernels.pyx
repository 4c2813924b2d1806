# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; same signatures as relkit._pykernels."""

from libc.stdint cimport uint8_t, uint32_t, int32_t
from libc.stdlib cimport malloc, free, calloc
from libc.string cimport memset


cdef void _fill_tables(uint32_t* tab, images):
    # tab layout: [4][256]
    cdef int n = len(images)
    cdef int block, b, bit, p
    cdef uint32_t out
    for block in range(4):
        for b in range(256):
            out = 0
            for bit in range(8):
                if (b >> bit) & 1:
                    p = 8 * block + bit
                    if p < n:
                        out |= (<uint32_t>1) << <int>images[p]
            tab[block * 256 + b] = out


cdef inline uint32_t _apply(const uint32_t* tab, uint32_t m) nogil:
    return (tab[m & 255] | tab[256 + ((m >> 8) & 255)]
            | tab[512 + ((m >> 16) & 255)] | tab[768 + (m >> 24)])


def byte_tables(images):
    cdef uint32_t tab[1024]
    _fill_tables(tab, images)
    return tuple(tuple(tab[k * 256 + b] for b in range(256)) for k in range(4))


def mask_image(images, mask):
    cdef uint32_t m = mask
    cdef uint32_t out = 0
    cdef int i = 0
    while m:
        if m & 1:
            out |= (<uint32_t>1) << <int>images[i]
        m >>= 1
        i += 1
    return out


def mask_orbit(gens, mask, limit=0):
    """BFS orbit of one mask; hash set by open addressing."""
    cdef int ng = len(gens)
    cdef Py_ssize_t lim = limit
    cdef uint32_t* tabs = <uint32_t*>malloc(max(ng, 1) * 1024 * sizeof(uint32_t))
    cdef Py_ssize_t cap = 1024
    cdef Py_ssize_t qlen = 0, head = 0, k, slot
    cdef uint32_t* queue
    cdef uint32_t* table
    cdef uint8_t* used
    cdef uint32_t m, y
    cdef int g
    for g in range(ng):
        _fill_tables(tabs + g * 1024, gens[g])
    queue = <uint32_t*>malloc(cap * sizeof(uint32_t))
    # hash table sized 2*cap, rebuilt on growth
    table = <uint32_t*>malloc(2 * cap * sizeof(uint32_t))
    used = <uint8_t*>calloc(2 * cap, 1)
    try:
        queue[0] = mask
        qlen = 1
        slot = _hash_insert(table, used, 2 * cap, mask)
        while head < qlen:
            m = queue[head]
            head += 1
            for g in range(ng):
                y = _apply(tabs + g * 1024, m)
                if _hash_insert(table, used, 2 * cap, y):
                    if qlen == cap:
                        cap *= 2
                        queue = <uint32_t*>_realloc_u32(queue, cap)
                        free(table)
                        free(used)
                        table = <uint32_t*>malloc(2 * cap * sizeof(uint32_t))
                        used = <uint8_t*>calloc(2 * cap, 1)
                        for k in range(qlen):
                            _hash_insert(table, used, 2 * cap, queue[k])
                        _hash_insert(table, used, 2 * cap, y)
                    queue[qlen] = y
                    qlen += 1
                    if lim and qlen >= lim:
                        return [queue[k] for k in range(qlen)]
        return [queue[k] for k in range(qlen)]
    finally:
        free(tabs)
        free(queue)
        free(table)
        free(used)


cdef extern from "stdlib.h":
    void* realloc(void* ptr, size_t size)


cdef void* _realloc_u32(uint32_t* p, Py_ssize_t n):
    return realloc(p, n * sizeof(uint32_t))


cdef inline bint _hash_insert(uint32_t* table, uint8_t* used, Py_ssize_t size, uint32_t key):
    # returns 1 if newly inserted
    cdef Py_ssize_t i = (key * <uint32_t>2654435761u) % size
    while used[i]:
        if table[i] == key:
            return 0
        i += 1
        if i == size:
            i = 0
    used[i] = 1
    table[i] = key
    return 1


def orbit_scan(int n, gens):
    cdef int ng = len(gens)
    cdef Py_ssize_t total = (<Py_ssize_t>1) << n
    cdef uint8_t* visited = <uint8_t*>calloc(total, 1)
    cdef uint32_t* queue = <uint32_t*>malloc(total * sizeof(uint32_t))
    cdef uint32_t* tabs = <uint32_t*>malloc(max(ng, 1) * 1024 * sizeof(uint32_t))
    cdef Py_ssize_t start, head, qlen
    cdef uint32_t m, y
    cdef int g
    if visited == NULL or queue == NULL or tabs == NULL:
        free(visited); free(queue); free(tabs)
        raise MemoryError()
    for g in range(ng):
        _fill_tables(tabs + g * 1024, gens[g])
    reps = []
    sizes = []
    try:
        for start in range(total):
            if visited[start]:
                continue
            visited[start] = 1
            queue[0] = <uint32_t>start
            qlen = 1
            head = 0
            with nogil:
                while head < qlen:
                    m = queue[head]
                    head += 1
                    for g in range(ng):
                        y = _apply(tabs + g * 1024, m)
                        if not visited[y]:
                            visited[y] = 1
                            queue[qlen] = y
                            qlen += 1
            reps.append(start)
            sizes.append(qlen)
        return reps, sizes
    finally:
        free(visited)
        free(queue)
        free(tabs)


cdef void _scan_dfs(int p, int n, int* perm, int* used, uint32_t* img,
                    const int32_t* col, object out):
    cdef uint32_t top = (<uint32_t>1) << p
    cdef uint32_t m, end = top << 1
    cdef int v, i
    cdef bint ok
    if p == n:
        out.extend(bytes([perm[i] for i in range(n)]))
        return
    for v in range(n):
        if used[v]:
            continue
        perm[p] = v
        ok = True
        for m in range(top, end):
            img[m] = img[m ^ top] | ((<uint32_t>1) << v)
            if col[m] >= 0 and col[img[m]] != col[m]:
                ok = False
                break
        if ok:
            used[v] = 1
            _scan_dfs(p + 1, n, perm, used, img, col, out)
            used[v] = 0


def sym_scan(int n, edges, colors=None):
    """All permutations of range(n) mapping each edge to an edge of equal colour.

    Depth-first over image prefixes: once points 0..p have images, every
    edge whose largest point is p is checked. Returns the accepted
    permutations as bytes, n per permutation, in lexicographic order.
    """
    cdef Py_ssize_t size = (<Py_ssize_t>1) << n
    cdef int32_t* col = <int32_t*>malloc(size * sizeof(int32_t))
    cdef uint32_t* img = <uint32_t*>malloc(size * sizeof(uint32_t))
    cdef int perm[32]
    cdef int used[32]
    cdef Py_ssize_t idx
    if col == NULL or img == NULL:
        free(col); free(img)
        raise MemoryError()
    try:
        for idx in range(size):
            col[idx] = -1
        for idx in range(len(edges)):
            col[<uint32_t>edges[idx]] = colors[idx] if colors is not None else 0
        img[0] = 0
        for idx in range(n):
            used[idx] = 0
        out = bytearray()
        _scan_dfs(0, n, perm, used, img, col, out)
        return bytes(out)
    finally:
        free(col)
        free(img)
