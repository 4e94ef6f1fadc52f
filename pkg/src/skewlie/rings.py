"""Exact commutative unital rings with an invertible 2.

Every scalar is a plain hashable Python value in a canonical form, so
``==`` on values decides equality; the ring object carries the
operations.  Shipped instances: rationals, odd prime fields GF(p),
multivariate polynomials over a base ring, and finite products of a
base ring.  Constructing a descriptor whose ring lacks an inverse of 2
fails immediately; ``half`` therefore never fails at call time.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import isqrt
from typing import Any

from .errors import RingMismatchError, SchemaError, UnsupportedOperationError


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    top = isqrt(p)
    while d <= top:
        if p % d == 0:
            return False
        d += 2
    return True


class Ring:
    """Abstract exact commutative unital ring with 2 invertible."""

    kind: str

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def is_zero(self, x) -> bool:
        return x == self.zero()

    def add(self, x, y):
        raise NotImplementedError

    def neg(self, x):
        raise NotImplementedError

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def mul(self, x, y):
        raise NotImplementedError

    def double(self, x):
        return self.add(x, x)

    def half(self, x):
        """Multiply by the inverse of 2: add(half(x), half(x)) == x."""
        raise NotImplementedError

    def inv(self, x):
        raise UnsupportedOperationError(f"{self.kind} ring does not expose inversion")

    def is_field(self) -> bool:
        return False

    def random(self, rng):
        """Sample a small element; bounded so products stay cheap."""
        raise NotImplementedError

    def descriptor(self) -> dict:
        raise NotImplementedError

    def to_json(self, x) -> Any:
        raise NotImplementedError

    def from_json(self, obj) -> Any:
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, Ring) and self.descriptor() == other.descriptor()

    def __hash__(self):
        return hash(json.dumps(self.descriptor(), sort_keys=True))

    def __repr__(self):
        return f"<Ring {json.dumps(self.descriptor(), sort_keys=True)}>"


class Rationals(Ring):
    """Arbitrary-precision exact rationals."""

    kind = "rational"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def is_zero(self, x) -> bool:
        return x == 0

    def add(self, x, y):
        return x + y

    def neg(self, x):
        return -x

    def sub(self, x, y):
        return x - y

    def mul(self, x, y):
        return x * y

    def double(self, x):
        return x + x

    def half(self, x):
        return x / 2

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / x

    def is_field(self) -> bool:
        return True

    def random(self, rng):
        return Fraction(rng.randint(-9, 9), rng.randint(1, 9))

    def descriptor(self) -> dict:
        return {"kind": "rational"}

    def to_json(self, x):
        return f"{x.numerator}/{x.denominator}"

    def from_json(self, obj):
        if isinstance(obj, int) and not isinstance(obj, bool):
            return Fraction(obj)
        if isinstance(obj, str):
            try:
                return Fraction(obj)
            except (ValueError, ZeroDivisionError) as exc:
                raise SchemaError(f"bad rational literal {obj!r}") from exc
        raise SchemaError(f"rational scalar must be a 'p/q' string, got {obj!r}")


class PrimeField(Ring):
    """GF(p) for an odd prime p; elements are canonical residues in [0, p)."""

    kind = "prime_field"

    def __init__(self, p: int):
        if not isinstance(p, int) or not _is_prime(p):
            raise ValueError(f"modulus {p!r} is not prime")
        if p == 2:
            raise ValueError("GF(2) rejected: 2 is not invertible")
        self.p = p
        self._inv2 = (p + 1) // 2

    def zero(self):
        return 0

    def one(self):
        return 1

    def is_zero(self, x) -> bool:
        return x == 0

    def add(self, x, y):
        return (x + y) % self.p

    def neg(self, x):
        return (-x) % self.p

    def sub(self, x, y):
        return (x - y) % self.p

    def mul(self, x, y):
        return (x * y) % self.p

    def double(self, x):
        return (x + x) % self.p

    def half(self, x):
        return (x * self._inv2) % self.p

    def inv(self, x):
        if x % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.p)

    def is_field(self) -> bool:
        return True

    def random(self, rng):
        return rng.randrange(self.p)

    def descriptor(self) -> dict:
        return {"kind": "prime_field", "p": self.p}

    def to_json(self, x):
        return x

    def from_json(self, obj):
        if not isinstance(obj, int) or isinstance(obj, bool):
            raise SchemaError(f"prime-field scalar must be an integer, got {obj!r}")
        return obj % self.p


class PolynomialRing(Ring):
    """Sparse multivariate polynomials over a base ring.

    Canonical value: tuple of (exponent tuple, coefficient) pairs sorted
    by exponent tuple, with no zero coefficients, so ``==`` is exact
    equality of polynomials.
    """

    kind = "polynomial"

    def __init__(self, variables, base: Ring):
        names = tuple(variables)
        if not names or len(set(names)) != len(names):
            raise ValueError("variable names must be nonempty and distinct")
        for name in names:
            if not isinstance(name, str) or not name.isidentifier():
                raise ValueError(f"bad variable name {name!r}")
        self.variables = names
        self.base = base  # base ring constructed first, so 2 is invertible there

    def _canon(self, mapping: dict):
        items = [(e, c) for e, c in mapping.items() if not self.base.is_zero(c)]
        items.sort(key=lambda it: it[0])
        return tuple(items)

    def zero(self):
        return ()

    def one(self):
        zexp = (0,) * len(self.variables)
        return ((zexp, self.base.one()),)

    def is_zero(self, x) -> bool:
        return x == ()

    def variable(self, name: str):
        k = self.variables.index(name)
        exp = tuple(1 if i == k else 0 for i in range(len(self.variables)))
        return ((exp, self.base.one()),)

    def constant(self, c):
        zexp = (0,) * len(self.variables)
        return self._canon({zexp: c})

    def add(self, x, y):
        acc = dict(x)
        for e, c in y:
            if e in acc:
                acc[e] = self.base.add(acc[e], c)
            else:
                acc[e] = c
        return self._canon(acc)

    def neg(self, x):
        return tuple((e, self.base.neg(c)) for e, c in x)

    def mul(self, x, y):
        acc: dict = {}
        for ex, cx in x:
            for ey, cy in y:
                e = tuple(a + b for a, b in zip(ex, ey))
                c = self.base.mul(cx, cy)
                if e in acc:
                    acc[e] = self.base.add(acc[e], c)
                else:
                    acc[e] = c
        return self._canon(acc)

    def half(self, x):
        return tuple((e, self.base.half(c)) for e, c in x)

    def random(self, rng):
        # At most two monomials of total degree <= 3; keeps products small.
        nv = len(self.variables)
        acc: dict = {}
        for _ in range(rng.randint(0, 2)):
            deg = rng.randint(0, 3)
            exp = [0] * nv
            for _ in range(deg):
                exp[rng.randrange(nv)] += 1
            acc_key = tuple(exp)
            c = self.base.random(rng)
            if acc_key in acc:
                acc[acc_key] = self.base.add(acc[acc_key], c)
            else:
                acc[acc_key] = c
        return self._canon(acc)

    def descriptor(self) -> dict:
        return {
            "kind": "polynomial",
            "vars": list(self.variables),
            "base": self.base.descriptor(),
        }

    def to_json(self, x):
        return {
            "monomials": [
                {"exps": list(e), "coef": self.base.to_json(c)} for e, c in x
            ]
        }

    def from_json(self, obj):
        if not isinstance(obj, dict) or set(obj) != {"monomials"}:
            raise SchemaError(f"polynomial scalar must be {{'monomials': [...]}}, got {obj!r}")
        acc: dict = {}
        for mono in obj["monomials"]:
            if not isinstance(mono, dict) or set(mono) != {"exps", "coef"}:
                raise SchemaError(f"bad monomial {mono!r}")
            exps = mono["exps"]
            if (
                not isinstance(exps, list)
                or len(exps) != len(self.variables)
                or any(not isinstance(e, int) or isinstance(e, bool) or e < 0 for e in exps)
            ):
                raise SchemaError(f"bad exponent vector {exps!r}")
            e = tuple(exps)
            c = self.base.from_json(mono["coef"])
            if e in acc:
                acc[e] = self.base.add(acc[e], c)
            else:
                acc[e] = c
        return self._canon(acc)


class ProductRing(Ring):
    """Finite product of copies of a base ring, componentwise operations.

    With more than one factor the ring has zero divisors; everything the
    reconstruction algorithms do remains valid because they only ever
    divide by 2.
    """

    kind = "product"

    def __init__(self, base: Ring, size: int):
        if not isinstance(size, int) or size < 1:
            raise ValueError(f"product size must be a positive integer, got {size!r}")
        self.base = base
        self.size = size

    def zero(self):
        return (self.base.zero(),) * self.size

    def one(self):
        return (self.base.one(),) * self.size

    def is_zero(self, x) -> bool:
        bz = self.base.is_zero
        return all(bz(c) for c in x)

    def add(self, x, y):
        ba = self.base.add
        return tuple(ba(a, b) for a, b in zip(x, y))

    def neg(self, x):
        bn = self.base.neg
        return tuple(bn(a) for a in x)

    def sub(self, x, y):
        bs = self.base.sub
        return tuple(bs(a, b) for a, b in zip(x, y))

    def mul(self, x, y):
        bm = self.base.mul
        return tuple(bm(a, b) for a, b in zip(x, y))

    def double(self, x):
        bd = self.base.double
        return tuple(bd(a) for a in x)

    def half(self, x):
        bh = self.base.half
        return tuple(bh(a) for a in x)

    def random(self, rng):
        return tuple(self.base.random(rng) for _ in range(self.size))

    def descriptor(self) -> dict:
        return {"kind": "product", "base": self.base.descriptor(), "size": self.size}

    def to_json(self, x):
        return [self.base.to_json(c) for c in x]

    def from_json(self, obj):
        if not isinstance(obj, list) or len(obj) != self.size:
            raise SchemaError(f"product scalar must be a list of length {self.size}")
        return tuple(self.base.from_json(c) for c in obj)

    def project(self, x, k: int):
        return x[k]

    def embed(self, components):
        vals = tuple(components)
        if len(vals) != self.size:
            raise ValueError(f"expected {self.size} components, got {len(vals)}")
        return vals


def ring_from_descriptor(desc) -> Ring:
    """Build a ring from a descriptor dict; rejects rings without 1/2."""
    if not isinstance(desc, dict) or "kind" not in desc:
        raise SchemaError(f"ring descriptor must be a dict with 'kind', got {desc!r}")
    kind = desc["kind"]
    try:
        if kind == "rational":
            return Rationals()
        if kind == "prime_field":
            return PrimeField(desc["p"])
        if kind == "polynomial":
            return PolynomialRing(desc["vars"], ring_from_descriptor(desc["base"]))
        if kind == "product":
            return ProductRing(ring_from_descriptor(desc["base"]), desc["size"])
    except KeyError as exc:
        raise SchemaError(f"ring descriptor missing field {exc}") from exc
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc
    raise SchemaError(f"unknown ring kind {kind!r}")


def parse_ring(text: str) -> Ring:
    """Parse a CLI ring argument.

    Shorthand grammar: ``rational``, ``gf<p>``, ``poly(v1,v2,...)`` over
    the rationals, ``product(<base>,<size>)``; a JSON descriptor object
    is accepted verbatim.
    """
    text = text.strip()
    if text.startswith("{"):
        try:
            return ring_from_descriptor(json.loads(text))
        except json.JSONDecodeError as exc:
            raise SchemaError(f"bad ring JSON: {exc}") from exc
    if text == "rational":
        return Rationals()
    if text.startswith("gf"):
        try:
            return PrimeField(int(text[2:]))
        except ValueError as exc:
            raise SchemaError(f"bad prime field {text!r}: {exc}") from exc
    if text.startswith("poly(") and text.endswith(")"):
        names = [v.strip() for v in text[5:-1].split(",") if v.strip()]
        try:
            return PolynomialRing(names, Rationals())
        except ValueError as exc:
            raise SchemaError(str(exc)) from exc
    if text.startswith("product(") and text.endswith(")"):
        body = text[8:-1]
        pos = body.rfind(",")
        if pos < 0:
            raise SchemaError(f"bad product ring {text!r}")
        base = parse_ring(body[:pos])
        try:
            size = int(body[pos + 1 :])
            return ProductRing(base, size)
        except ValueError as exc:
            raise SchemaError(f"bad product size in {text!r}") from exc
    raise SchemaError(f"unrecognized ring {text!r}")


def same_ring(r1: Ring, r2: Ring) -> None:
    if r1 != r2:
        raise RingMismatchError(f"ring mismatch: {r1!r} vs {r2!r}")
