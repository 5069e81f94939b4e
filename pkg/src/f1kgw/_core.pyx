# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel: same interface and same outputs as ``_corepy``.

Maps of finite pointed sets are int tuples (length src+1, slot 0 is 0,
nonzero values distinct).  Hot paths work on flat C arrays internally;
composite maps are encoded as base-B integers for dictionary tallies.
"""

from cpython.mem cimport PyMem_Free, PyMem_Malloc

BACKEND = "c"

_HOM_CACHE = {}
_INFL_CACHE = {}
_DEFL_CACHE = {}


def is_valid_map(f, dst):
    cdef Py_ssize_t i, n = len(f)
    cdef int v
    cdef unsigned long long seen = 0
    if n == 0 or f[0] != 0:
        return False
    for i in range(1, n):
        v = f[i]
        if v < 0 or v > dst:
            return False
        if v != 0:
            if seen & (1ULL << v):
                return False
            seen |= 1ULL << v
    return True


def identity(n):
    return tuple(range(n + 1))


def zero_map(src, dst):
    return (0,) * (src + 1)


def compose(g, f):
    """(g∘f)[i] = g[f[i]]."""
    cdef Py_ssize_t i, n = len(f)
    cdef list out = [0] * n
    for i in range(n):
        out[i] = g[f[i]]
    return tuple(out)


def adjoint(f, dst):
    cdef Py_ssize_t m, n = len(f)
    cdef int v
    cdef list adj = [0] * (dst + 1)
    for m in range(1, n):
        v = f[m]
        if v != 0:
            adj[v] = m
    return tuple(adj)


def is_injective(f):
    cdef Py_ssize_t i, n = len(f)
    for i in range(1, n):
        if f[i] == 0:
            return False
    return True


def is_surjective(f, dst):
    cdef Py_ssize_t i, n = len(f)
    cdef int hit = 0
    for i in range(1, n):
        if f[i] != 0:
            hit += 1
    return hit == dst


cdef void _gen(int i, int src, int dst, unsigned int used, int* cur, list out):
    cdef int v
    if i > src:
        out.append(tuple([cur[k] for k in range(src + 1)]))
        return
    cur[i] = 0
    _gen(i + 1, src, dst, used, cur, out)
    for v in range(1, dst + 1):
        if not (used & (1u << v)):
            cur[i] = v
            _gen(i + 1, src, dst, used | (1u << v), cur, out)
    cur[i] = 0


def hom_maps(src, dst):
    """All maps src -> dst in lexicographic order of the value tuple."""
    key = (src, dst)
    cached = _HOM_CACHE.get(key)
    if cached is not None:
        return cached
    cdef int csrc = src
    cdef int* cur = <int*> PyMem_Malloc((csrc + 1) * sizeof(int))
    if cur == NULL:
        raise MemoryError()
    cdef list out = []
    try:
        cur[0] = 0
        _gen(1, csrc, dst, 0, cur, out)
    finally:
        PyMem_Free(cur)
    result = tuple(out)
    _HOM_CACHE[key] = result
    return result


def inflation_maps(src, dst):
    key = (src, dst)
    cached = _INFL_CACHE.get(key)
    if cached is None:
        cached = tuple(f for f in hom_maps(src, dst) if is_injective(f))
        _INFL_CACHE[key] = cached
    return cached


def deflation_maps(src, dst):
    key = (src, dst)
    cached = _DEFL_CACHE.get(key)
    if cached is None:
        cached = tuple(f for f in hom_maps(src, dst) if is_surjective(f, dst))
        _DEFL_CACHE[key] = cached
    return cached


cdef int* _flat(tuple homs, Py_ssize_t stride) except NULL:
    cdef Py_ssize_t i, j, n = len(homs)
    cdef int* buf = <int*> PyMem_Malloc(max(n * stride, 1) * sizeof(int))
    if buf == NULL:
        raise MemoryError()
    for i in range(n):
        row = homs[i]
        for j in range(stride):
            buf[i * stride + j] = row[j]
    return buf


def universal_square_ok(l, t, b, r, u_size, v_size, w_size, x_size, bound):
    """Pullback + pushout universal property vs all test objects of size
    <= bound, by cone counting.  Same algorithm as the pure kernel."""
    cdef int n, u = u_size, v = v_size, w = w_size, x = x_size, bnd = bound
    if u > 12 or v > 12 or w > 12 or x > 12 or bnd > 12:
        raise ValueError("kernel sizes out of supported range")
    cdef int* ml = _flat((tuple(l),), len(l))
    cdef int* mt = _flat((tuple(t),), len(t))
    cdef int* mb = _flat((tuple(b),), len(b))
    cdef int* mr = _flat((tuple(r),), len(r))
    cdef int* ha
    cdef Py_ssize_t i, j, nh
    cdef Py_ssize_t stride
    cdef unsigned long long key, key2, base
    cdef dict tally
    cdef set seen
    cdef long long pairs, m
    try:
        for n in range(bnd + 1):
            base = max(x, w, v, u, n) + 1
            # --- pullback side: cones T -> (W, V) over X vs hom(T, U)
            stride = n + 1
            tally = {}
            homs = hom_maps(n, w)
            ha = _flat(homs, stride)
            nh = len(homs)
            for i in range(nh):
                key = 0
                for j in range(stride - 1, -1, -1):
                    key = key * base + mb[ha[i * stride + j]]
                tally[key] = tally.get(key, 0) + 1
            PyMem_Free(ha)
            homs = hom_maps(n, v)
            ha = _flat(homs, stride)
            nh = len(homs)
            pairs = 0
            for i in range(nh):
                key = 0
                for j in range(stride - 1, -1, -1):
                    key = key * base + mr[ha[i * stride + j]]
                obj = tally.get(key)
                if obj is not None:
                    pairs += <long long> obj
            PyMem_Free(ha)
            homs = hom_maps(n, u)
            ha = _flat(homs, stride)
            nh = len(homs)
            seen = set()
            for i in range(nh):
                key = 0
                key2 = 0
                for j in range(stride - 1, -1, -1):
                    key = key * base + ml[ha[i * stride + j]]
                    key2 = key2 * base + mt[ha[i * stride + j]]
                seen.add((key, key2))
            m = len(seen)
            PyMem_Free(ha)
            if m != nh or m != pairs:
                return False
            # --- pushout side: cocones (W, V) -> T under U vs hom(X, T)
            tally = {}
            homs = hom_maps(w, n)
            nh = len(homs)
            stride = w + 1
            ha = _flat(homs, stride)
            for i in range(nh):
                key = 0
                for j in range(u, -1, -1):
                    key = key * base + ha[i * stride + ml[j]]
                tally[key] = tally.get(key, 0) + 1
            PyMem_Free(ha)
            homs = hom_maps(v, n)
            nh = len(homs)
            stride = v + 1
            ha = _flat(homs, stride)
            pairs = 0
            for i in range(nh):
                key = 0
                for j in range(u, -1, -1):
                    key = key * base + ha[i * stride + mt[j]]
                obj = tally.get(key)
                if obj is not None:
                    pairs += <long long> obj
            PyMem_Free(ha)
            homs = hom_maps(x, n)
            nh = len(homs)
            stride = x + 1
            ha = _flat(homs, stride)
            seen = set()
            for i in range(nh):
                key = 0
                for j in range(w, -1, -1):
                    key = key * base + ha[i * stride + mb[j]]
                key2 = 0
                for j in range(v, -1, -1):
                    key2 = key2 * base + ha[i * stride + mr[j]]
                seen.add((key, key2))
            m = len(seen)
            PyMem_Free(ha)
            if m != nh or m != pairs:
                return False
        return True
    finally:
        PyMem_Free(ml)
        PyMem_Free(mt)
        PyMem_Free(mb)
        PyMem_Free(mr)


def clear_caches():
    _HOM_CACHE.clear()
    _INFL_CACHE.clear()
    _DEFL_CACHE.clear()
