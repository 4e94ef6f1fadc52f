"""Pure Python kernels for modular skew-matrix scans.

Same contract as the compiled module: packed matrices are tuples of
ints in [0, p) listing the strictly upper triangle row-major, indices
0-based internally.  Images of the derivation x -> 2(ax - xa) are
always computed from literal matrix products, never from the entry
identities the scans are meant to validate.
"""

from itertools import product

BACKEND_NAME = "python"


def _full(n, p, packed):
    """Flat n*n matrix from a packed upper triangle."""
    a = [0] * (n * n)
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            v = packed[k]
            a[i * n + j] = v
            if v:
                a[j * n + i] = p - v
            k += 1
    return a


def _pack(n, p, flat):
    return tuple(flat[i * n + j] for i in range(n) for j in range(i + 1, n))


def _image_entry(n, p, a, x, r, c):
    """(r, c) entry of 2(ax - xa) by direct dot products."""
    s = 0
    rn = r * n
    for t in range(n):
        s += a[rn + t] * x[t * n + c] - x[rn + t] * a[t * n + c]
    return (2 * s) % p


def deriv_image(n, p, a_packed, x_packed):
    """Packed image of x under the inner derivation generated by a."""
    a = _full(n, p, a_packed)
    x = _full(n, p, x_packed)
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            out.append(_image_entry(n, p, a, x, i, j))
    return tuple(out)


def block_image(n, p, a_packed, x_packed):
    """Packed image of x built entrywise from the block sum
    sum_{k not in {i,j}} 2(x[i,k] a[j,k] - a[i,k] x[j,k]);
    an independent route used to cross-check deriv_image."""
    a = _full(n, p, a_packed)
    x = _full(n, p, x_packed)
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            s = 0
            for k in range(n):
                if k != i and k != j:
                    s += x[i * n + k] * a[j * n + k] - a[i * n + k] * x[j * n + k]
            out.append((2 * s) % p)
    return tuple(out)


def extraction_scan(n, p):
    """Count of generators whose basis images violate the entry-reading
    identities.  For every packed a and every pair (i, j) the image
    d = 2(a s_ij - s_ij a) must satisfy, for each k outside the pair,
    a[k,i] = d[k,j]/2 and a[k,j] = -d[k,i]/2, and d[i,j] = 0.
    """
    m = n * (n - 1) // 2
    inv2 = (p + 1) // 2
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    units = {}
    for (i, j) in pairs:
        x = [0] * (n * n)
        x[i * n + j] = 1
        x[j * n + i] = p - 1
        units[(i, j)] = x
    failures = 0
    for packed in product(range(p), repeat=m):
        a = _full(n, p, packed)
        for (i, j) in pairs:
            x = units[(i, j)]
            if _image_entry(n, p, a, x, i, j) != 0:
                failures += 1
                continue
            ok = True
            for k in range(n):
                if k == i or k == j:
                    continue
                dkj = _image_entry(n, p, a, x, k, j)
                dki = _image_entry(n, p, a, x, k, i)
                if a[k * n + i] != (inv2 * dkj) % p:
                    ok = False
                    break
                if a[k * n + j] != (-inv2 * dki) % p:
                    ok = False
                    break
            if not ok:
                failures += 1
    return failures


def witness_scan(n, p, x_packed, dx_packed):
    """First packed a with 2(ax - xa) == dx in enumeration order, else None."""
    m = n * (n - 1) // 2
    x = _full(n, p, x_packed)
    slots = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for packed in product(range(p), repeat=m):
        a = _full(n, p, packed)
        hit = True
        for k, (i, j) in enumerate(slots):
            if _image_entry(n, p, a, x, i, j) != dx_packed[k]:
                hit = False
                break
        if hit:
            return packed
    return None


def agreement_zero_scan(n, p):
    """Exhaustively confirm the orientation bookkeeping of the agreement
    statement: whenever 2(c s_ij - s_ij c) vanishes, the entries of c in
    rows and columns i and j vanish away from the pair, read three ways
    according to the position of the third index k (k above the pair,
    between, below) and once uniformly in all four orientations.

    Returns (qualifying, failures): qualifying counts (c, pair) events
    with vanishing image, failures counts events where any reading
    disagrees.
    """
    m = n * (n - 1) // 2
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    units = {}
    for (i, j) in pairs:
        x = [0] * (n * n)
        x[i * n + j] = 1
        x[j * n + i] = p - 1
        units[(i, j)] = x
    qualifying = 0
    failures = 0
    for packed in product(range(p), repeat=m):
        c = _full(n, p, packed)
        for (i, j) in pairs:
            x = units[(i, j)]
            zero_image = True
            for (r, s) in pairs:
                if _image_entry(n, p, c, x, r, s) != 0:
                    zero_image = False
                    break
            if not zero_image:
                continue
            qualifying += 1
            ok = True
            for k in range(n):
                if k == i or k == j:
                    continue
                if k > j:
                    # third index above the pair: stored rows i and j
                    if c[i * n + k] != 0 or c[j * n + k] != 0:
                        ok = False
                elif k > i:
                    # third index between: stored row i, stored column j
                    if c[i * n + k] != 0 or c[k * n + j] != 0:
                        ok = False
                else:
                    # third index below: stored columns i and j
                    if c[k * n + i] != 0 or c[k * n + j] != 0:
                        ok = False
                # uniform reading, all four orientations
                if (
                    c[k * n + i] != 0
                    or c[k * n + j] != 0
                    or c[i * n + k] != 0
                    or c[j * n + k] != 0
                ):
                    ok = False
            if not ok:
                failures += 1
    return qualifying, failures
