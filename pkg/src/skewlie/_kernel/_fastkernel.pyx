# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for modular skew-matrix scans.

Same contract as _kernel_py; see that module for the semantics.  Dense
n*n buffers are fixed-size, so n is capped at 16 (far above what the
exhaustive scans can enumerate anyway).
"""

BACKEND_NAME = "c"

DEF NMAX = 16
DEF N2MAX = 256
DEF MMAX = 120


cdef inline void _fill(int n, int p, long* A, long* pk) noexcept:
    cdef int i, j, k = 0
    cdef long v
    for i in range(n):
        A[i * n + i] = 0
    for i in range(n):
        for j in range(i + 1, n):
            v = pk[k]
            A[i * n + j] = v
            A[j * n + i] = (p - v) if v else 0
            k += 1


cdef inline long _entry(int n, int p, long* A, long* X, int r, int c) noexcept:
    cdef long s = 0
    cdef int t
    for t in range(n):
        s += A[r * n + t] * X[t * n + c] - X[r * n + t] * A[t * n + c]
    s = (2 * s) % p
    if s < 0:
        s += p
    return s


cdef int _check_dims(int n, int p, int m) except -1:
    if n < 2 or n > NMAX:
        raise ValueError(f"n must be in 2..{NMAX}, got {n}")
    if p < 3:
        raise ValueError(f"p must be an odd prime >= 3, got {p}")
    if m != n * (n - 1) // 2:
        raise ValueError("packed length mismatch")
    return 0


cdef void _load(int n, int p, object packed, long* pk):
    cdef int k
    for k in range(n * (n - 1) // 2):
        pk[k] = packed[k] % p


def deriv_image(int n, int p, a_packed, x_packed):
    cdef long A[N2MAX]
    cdef long X[N2MAX]
    cdef long pa[MMAX]
    cdef long px[MMAX]
    cdef int i, j
    _check_dims(n, p, len(a_packed))
    _check_dims(n, p, len(x_packed))
    _load(n, p, a_packed, pa)
    _load(n, p, x_packed, px)
    _fill(n, p, A, pa)
    _fill(n, p, X, px)
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            out.append(_entry(n, p, A, X, i, j))
    return tuple(out)


def block_image(int n, int p, a_packed, x_packed):
    cdef long A[N2MAX]
    cdef long X[N2MAX]
    cdef long pa[MMAX]
    cdef long px[MMAX]
    cdef int i, j, k
    cdef long s
    _check_dims(n, p, len(a_packed))
    _check_dims(n, p, len(x_packed))
    _load(n, p, a_packed, pa)
    _load(n, p, x_packed, px)
    _fill(n, p, A, pa)
    _fill(n, p, X, px)
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            s = 0
            for k in range(n):
                if k != i and k != j:
                    s += X[i * n + k] * A[j * n + k] - A[i * n + k] * X[j * n + k]
            s = (2 * s) % p
            if s < 0:
                s += p
            out.append(s)
    return tuple(out)


def extraction_scan(int n, int p):
    cdef long A[N2MAX]
    cdef long X[N2MAX]
    cdef long D[N2MAX]
    cdef long pk[MMAX]
    cdef int m = n * (n - 1) // 2
    cdef long inv2 = (p + 1) // 2
    cdef long failures = 0
    cdef long want
    cdef int i, j, k, r, c, t, ok
    _check_dims(n, p, m)
    for t in range(n * n):
        X[t] = 0
    for t in range(m):
        pk[t] = 0
    while True:
        _fill(n, p, A, pk)
        for i in range(n):
            for j in range(i + 1, n):
                X[i * n + j] = 1
                X[j * n + i] = p - 1
                for r in range(n):
                    for c in range(n):
                        D[r * n + c] = _entry(n, p, A, X, r, c)
                ok = 1
                if D[i * n + j] != 0:
                    ok = 0
                for k in range(n):
                    if k == i or k == j:
                        continue
                    if A[k * n + i] != (inv2 * D[k * n + j]) % p:
                        ok = 0
                    want = (inv2 * D[k * n + i]) % p
                    want = (p - want) % p
                    if A[k * n + j] != want:
                        ok = 0
                if not ok:
                    failures += 1
                X[i * n + j] = 0
                X[j * n + i] = 0
        t = m - 1
        while t >= 0:
            pk[t] += 1
            if pk[t] < p:
                break
            pk[t] = 0
            t -= 1
        if t < 0:
            break
    return failures


def witness_scan(int n, int p, x_packed, dx_packed):
    cdef long X[N2MAX]
    cdef long A[N2MAX]
    cdef long px[MMAX]
    cdef long dx[MMAX]
    cdef long pk[MMAX]
    cdef int m = n * (n - 1) // 2
    cdef int i, j, t, k, hit
    _check_dims(n, p, len(x_packed))
    _check_dims(n, p, len(dx_packed))
    _load(n, p, x_packed, px)
    _load(n, p, dx_packed, dx)
    _fill(n, p, X, px)
    for t in range(m):
        pk[t] = 0
    while True:
        _fill(n, p, A, pk)
        hit = 1
        k = 0
        for i in range(n):
            if not hit:
                break
            for j in range(i + 1, n):
                if _entry(n, p, A, X, i, j) != dx[k]:
                    hit = 0
                    break
                k += 1
        if hit:
            return tuple(pk[t] for t in range(m))
        t = m - 1
        while t >= 0:
            pk[t] += 1
            if pk[t] < p:
                break
            pk[t] = 0
            t -= 1
        if t < 0:
            break
    return None


def agreement_zero_scan(int n, int p):
    cdef long C[N2MAX]
    cdef long X[N2MAX]
    cdef long pk[MMAX]
    cdef int m = n * (n - 1) // 2
    cdef long qualifying = 0
    cdef long failures = 0
    cdef int i, j, k, r, c, t, zero_image, ok
    _check_dims(n, p, m)
    for t in range(n * n):
        X[t] = 0
    for t in range(m):
        pk[t] = 0
    while True:
        _fill(n, p, C, pk)
        for i in range(n):
            for j in range(i + 1, n):
                X[i * n + j] = 1
                X[j * n + i] = p - 1
                zero_image = 1
                for r in range(n):
                    if not zero_image:
                        break
                    for c in range(r + 1, n):
                        if _entry(n, p, C, X, r, c) != 0:
                            zero_image = 0
                            break
                if zero_image:
                    qualifying += 1
                    ok = 1
                    for k in range(n):
                        if k == i or k == j:
                            continue
                        if k > j:
                            if C[i * n + k] != 0 or C[j * n + k] != 0:
                                ok = 0
                        elif k > i:
                            if C[i * n + k] != 0 or C[k * n + j] != 0:
                                ok = 0
                        else:
                            if C[k * n + i] != 0 or C[k * n + j] != 0:
                                ok = 0
                        if (
                            C[k * n + i] != 0
                            or C[k * n + j] != 0
                            or C[i * n + k] != 0
                            or C[j * n + k] != 0
                        ):
                            ok = 0
                    if not ok:
                        failures += 1
                X[i * n + j] = 0
                X[j * n + i] = 0
        t = m - 1
        while t >= 0:
            pk[t] += 1
            if pk[t] < p:
                break
            pk[t] = 0
            t -= 1
        if t < 0:
            break
    return qualifying, failures
