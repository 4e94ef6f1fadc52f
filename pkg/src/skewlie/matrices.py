"""Dense square matrices and packed skew-symmetric matrices over a ring.

All indices in the public interface are 1-based.  Skew matrices store
only the strictly upper triangle, row-major over pairs (i, j) with
i < j, which makes the skew invariants unrepresentable and fixes the
coordinate order used by the witness solver.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import (
    DegenerateIndexError,
    DimensionMismatchError,
    NotSkewError,
    SchemaError,
)
from .rings import Ring, same_ring


def packed_size(n: int) -> int:
    return n * (n - 1) // 2


def packed_index(n: int, i: int, j: int) -> int:
    """Packed position of entry (i, j), 1-based, requires i < j."""
    return (i - 1) * (2 * n - i) // 2 + (j - i - 1)


@lru_cache(maxsize=None)
def pair_list(n: int) -> tuple:
    """All pairs (i, j) with 1 <= i < j <= n in packed (row-major) order."""
    return tuple((i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1))


def _check_index(n: int, *indices: int) -> None:
    for k in indices:
        if not 1 <= k <= n:
            raise IndexError(f"index {k} out of range 1..{n}")


class SquareMatrix:
    """Immutable dense n x n matrix over a ring."""

    __slots__ = ("ring", "n", "rows")

    def __init__(self, ring: Ring, n: int, rows):
        if n < 1:
            raise DimensionMismatchError(f"dimension must be >= 1, got {n}")
        rows = tuple(tuple(r) for r in rows)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise DimensionMismatchError(f"expected {n}x{n} rows")
        self.ring = ring
        self.n = n
        self.rows = rows

    def entry(self, i: int, j: int):
        _check_index(self.n, i, j)
        return self.rows[i - 1][j - 1]

    def __eq__(self, other):
        return (
            isinstance(other, SquareMatrix)
            and self.n == other.n
            and self.ring == other.ring
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.n, self.rows))

    def __add__(self, other):
        return mat_add(self, other)

    def __sub__(self, other):
        return mat_sub(self, other)

    def __neg__(self):
        return mat_neg(self)

    def __matmul__(self, other):
        return mat_mul(self, other)

    def __repr__(self):
        return f"SquareMatrix(n={self.n}, rows={self.rows!r})"

    def to_json(self):
        enc = self.ring.to_json
        return {"n": self.n, "rows": [[enc(v) for v in row] for row in self.rows]}

    @classmethod
    def from_json(cls, ring: Ring, obj):
        if not isinstance(obj, dict) or "n" not in obj or "rows" not in obj:
            raise SchemaError("square matrix JSON must have fields 'n' and 'rows'")
        n = obj["n"]
        rows = obj["rows"]
        if not isinstance(n, int) or n < 1:
            raise SchemaError(f"bad dimension {n!r}")
        if not isinstance(rows, list) or len(rows) != n:
            raise SchemaError("rows must be a list of n rows")
        dec = ring.from_json
        out = []
        for row in rows:
            if not isinstance(row, list) or len(row) != n:
                raise SchemaError("each row must be a list of n scalars")
            out.append(tuple(dec(v) for v in row))
        return cls(ring, n, out)


class SkewMatrix:
    """Skew-symmetric matrix stored as its strictly upper triangle."""

    __slots__ = ("ring", "n", "upper", "_square")

    def __init__(self, ring: Ring, n: int, upper):
        if n < 2:
            raise DimensionMismatchError(f"skew dimension must be >= 2, got {n}")
        upper = tuple(upper)
        if len(upper) != packed_size(n):
            raise DimensionMismatchError(
                f"packed length {len(upper)} != {packed_size(n)} for n={n}"
            )
        self.ring = ring
        self.n = n
        self.upper = upper
        self._square = None

    def entry(self, i: int, j: int):
        _check_index(self.n, i, j)
        if i == j:
            return self.ring.zero()
        if i < j:
            return self.upper[packed_index(self.n, i, j)]
        return self.ring.neg(self.upper[packed_index(self.n, j, i)])

    def to_square(self) -> SquareMatrix:
        if self._square is None:
            ring, n = self.ring, self.n
            zero = ring.zero()
            rows = [[zero] * n for _ in range(n)]
            k = 0
            for i in range(n):
                for j in range(i + 1, n):
                    v = self.upper[k]
                    rows[i][j] = v
                    rows[j][i] = ring.neg(v)
                    k += 1
            self._square = SquareMatrix(ring, n, rows)
        return self._square

    @classmethod
    def from_square(cls, sq: SquareMatrix) -> "SkewMatrix":
        ring, n = sq.ring, sq.n
        for i in range(n):
            if not ring.is_zero(sq.rows[i][i]):
                raise NotSkewError(f"nonzero diagonal entry at ({i + 1},{i + 1})")
            for j in range(i + 1, n):
                if sq.rows[j][i] != ring.neg(sq.rows[i][j]):
                    raise NotSkewError(f"entries ({i + 1},{j + 1})/({j + 1},{i + 1}) not opposite")
        upper = tuple(sq.rows[i][j] for i in range(n) for j in range(i + 1, n))
        return cls(ring, n, upper)

    def add(self, other: "SkewMatrix") -> "SkewMatrix":
        _check_same_skew(self, other)
        a = self.ring.add
        return SkewMatrix(self.ring, self.n, tuple(a(x, y) for x, y in zip(self.upper, other.upper)))

    def sub(self, other: "SkewMatrix") -> "SkewMatrix":
        _check_same_skew(self, other)
        s = self.ring.sub
        return SkewMatrix(self.ring, self.n, tuple(s(x, y) for x, y in zip(self.upper, other.upper)))

    def neg(self) -> "SkewMatrix":
        ng = self.ring.neg
        return SkewMatrix(self.ring, self.n, tuple(ng(x) for x in self.upper))

    def scale(self, c) -> "SkewMatrix":
        m = self.ring.mul
        return SkewMatrix(self.ring, self.n, tuple(m(c, x) for x in self.upper))

    def is_zero(self) -> bool:
        z = self.ring.is_zero
        return all(z(x) for x in self.upper)

    def __add__(self, other):
        return self.add(other)

    def __sub__(self, other):
        return self.sub(other)

    def __neg__(self):
        return self.neg()

    def __eq__(self, other):
        return (
            isinstance(other, SkewMatrix)
            and self.n == other.n
            and self.ring == other.ring
            and self.upper == other.upper
        )

    def __hash__(self):
        return hash((self.n, self.upper))

    def __repr__(self):
        return f"SkewMatrix(n={self.n}, upper={self.upper!r})"

    def to_json(self):
        enc = self.ring.to_json
        return {"n": self.n, "upper": [enc(v) for v in self.upper]}

    @classmethod
    def from_json(cls, ring: Ring, obj):
        if not isinstance(obj, dict) or "n" not in obj or "upper" not in obj:
            raise SchemaError("skew matrix JSON must have fields 'n' and 'upper'")
        n = obj["n"]
        upper = obj["upper"]
        if not isinstance(n, int) or n < 2:
            raise SchemaError(f"bad dimension {n!r}")
        if not isinstance(upper, list) or len(upper) != packed_size(n):
            raise SchemaError(f"'upper' must hold {packed_size(n)} scalars for n={n}")
        dec = ring.from_json
        return cls(ring, n, tuple(dec(v) for v in upper))


def _check_same_skew(x: SkewMatrix, y: SkewMatrix) -> None:
    same_ring(x.ring, y.ring)
    if x.n != y.n:
        raise DimensionMismatchError(f"dimension mismatch {x.n} vs {y.n}")


def _check_same_square(x: SquareMatrix, y: SquareMatrix) -> None:
    same_ring(x.ring, y.ring)
    if x.n != y.n:
        raise DimensionMismatchError(f"dimension mismatch {x.n} vs {y.n}")


def zero_square(ring: Ring, n: int) -> SquareMatrix:
    zero = ring.zero()
    return SquareMatrix(ring, n, [[zero] * n for _ in range(n)])


def zero_skew(ring: Ring, n: int) -> SkewMatrix:
    return SkewMatrix(ring, n, (ring.zero(),) * packed_size(n))


def identity_matrix(ring: Ring, n: int) -> SquareMatrix:
    zero, one = ring.zero(), ring.one()
    return SquareMatrix(ring, n, [[one if i == j else zero for j in range(n)] for i in range(n)])


def matrix_unit(ring: Ring, n: int, i: int, j: int) -> SquareMatrix:
    _check_index(n, i, j)
    zero = ring.zero()
    rows = [[zero] * n for _ in range(n)]
    rows[i - 1][j - 1] = ring.one()
    return SquareMatrix(ring, n, rows)


def s_unit(ring: Ring, n: int, i: int, j: int) -> SkewMatrix:
    """The basis element with +1 at (i, j); callers may pass either order."""
    _check_index(n, i, j)
    if i == j:
        raise DegenerateIndexError(f"s_unit needs i != j, got ({i},{j})")
    zero = ring.zero()
    upper = [zero] * packed_size(n)
    if i < j:
        upper[packed_index(n, i, j)] = ring.one()
    else:
        upper[packed_index(n, j, i)] = ring.neg(ring.one())
    return SkewMatrix(ring, n, upper)


def mat_add(x: SquareMatrix, y: SquareMatrix) -> SquareMatrix:
    _check_same_square(x, y)
    a = x.ring.add
    return SquareMatrix(
        x.ring, x.n, [tuple(a(u, v) for u, v in zip(rx, ry)) for rx, ry in zip(x.rows, y.rows)]
    )


def mat_sub(x: SquareMatrix, y: SquareMatrix) -> SquareMatrix:
    _check_same_square(x, y)
    s = x.ring.sub
    return SquareMatrix(
        x.ring, x.n, [tuple(s(u, v) for u, v in zip(rx, ry)) for rx, ry in zip(x.rows, y.rows)]
    )


def mat_neg(x: SquareMatrix) -> SquareMatrix:
    ng = x.ring.neg
    return SquareMatrix(x.ring, x.n, [tuple(ng(v) for v in row) for row in x.rows])


def mat_scale(c, x: SquareMatrix) -> SquareMatrix:
    m = x.ring.mul
    return SquareMatrix(x.ring, x.n, [tuple(m(c, v) for v in row) for row in x.rows])


def mat_mul(x: SquareMatrix, y: SquareMatrix) -> SquareMatrix:
    """Exact product; skips exactly-zero entries, which makes products
    against the sparse basis matrices cheap without changing the result."""
    _check_same_square(x, y)
    ring, n = x.ring, x.n
    add, mul, is_zero = ring.add, ring.mul, ring.is_zero
    zero = ring.zero()
    out = [[zero] * n for _ in range(n)]
    yrows = y.rows
    for i in range(n):
        xi = x.rows[i]
        oi = out[i]
        for k in range(n):
            c = xi[k]
            if is_zero(c):
                continue
            yk = yrows[k]
            for j in range(n):
                v = yk[j]
                if not is_zero(v):
                    oi[j] = add(oi[j], mul(c, v))
    return SquareMatrix(ring, n, out)


def mat_transpose(x: SquareMatrix) -> SquareMatrix:
    n = x.n
    return SquareMatrix(x.ring, n, [tuple(x.rows[j][i] for j in range(n)) for i in range(n)])


def project_block(x, i: int, j: int):
    """Keep only the entries (i, j) and (j, i): e_ii x e_jj + e_jj x e_ii.

    Returns the same shape as the input (skew stays skew).
    """
    if i == j:
        raise DegenerateIndexError(f"project_block needs i != j, got ({i},{j})")
    _check_index(x.n, i, j)
    ring, n = x.ring, x.n
    if isinstance(x, SkewMatrix):
        zero = ring.zero()
        upper = [zero] * packed_size(n)
        a, b = min(i, j), max(i, j)
        upper[packed_index(n, a, b)] = x.entry(a, b)
        return SkewMatrix(ring, n, upper)
    out = zero_square(ring, n).rows
    out = [list(r) for r in out]
    out[i - 1][j - 1] = x.rows[i - 1][j - 1]
    out[j - 1][i - 1] = x.rows[j - 1][i - 1]
    return SquareMatrix(ring, n, out)


def random_skew(ring: Ring, n: int, rng) -> SkewMatrix:
    return SkewMatrix(ring, n, tuple(ring.random(rng) for _ in range(packed_size(n))))


def random_square(ring: Ring, n: int, rng) -> SquareMatrix:
    return SquareMatrix(ring, n, [tuple(ring.random(rng) for _ in range(n)) for _ in range(n)])
