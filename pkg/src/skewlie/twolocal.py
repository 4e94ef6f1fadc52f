"""2-local derivation models, per-pair witness search, and the
Lie/associative model transfer.

A 2-local inner derivation assigns to every PAIR of inputs a single
generator matching the map at both points; nothing about the map itself
is assumed, not even additivity.  The checker therefore works
semi-extensionally: an evaluation procedure plus an optional witness
oracle, sampled pairs for infinite rings, exhausted pairs for tabulated
finite models.
"""

from __future__ import annotations

import random
from typing import Callable, Optional

from .errors import PreconditionError, SchemaError, SkewlieError, UnsupportedOperationError
from .lie import apply_lie_derivation
from .linsolve import LinearSystem, solve
from .matrices import SkewMatrix, packed_index, pair_list, random_skew, s_unit, zero_skew
from .reconstruct import BasisImageTable
from .rings import Ring

LIE = "lie"
ASSOC = "assoc"


class TwoLocalModel:
    """Map under test plus an optional per-pair witness oracle.

    form "lie": a witness w for (x, y) must satisfy map(x) = 2(wx - xw)
    and the same at y.  form "assoc": map(x) = wx - xw.
    """

    def __init__(
        self,
        ring: Ring,
        n: int,
        map_fn: Callable[[SkewMatrix], SkewMatrix],
        witness: Optional[Callable] = None,
        provenance=("custom",),
        form: str = LIE,
        domain: Optional[list] = None,
    ):
        if form not in (LIE, ASSOC):
            raise ValueError(f"bad form {form!r}")
        self.ring = ring
        self.n = n
        self._map_fn = map_fn
        self.witness = witness
        self.provenance = provenance
        self.form = form
        self.domain = domain

    def map(self, x: SkewMatrix) -> SkewMatrix:
        return self._map_fn(x)

    @classmethod
    def inner(cls, a: SkewMatrix) -> "TwoLocalModel":
        """The genuinely inner model: the generator witnesses every pair."""
        return cls(
            a.ring,
            a.n,
            lambda x: apply_lie_derivation(a, x),
            witness=lambda x, y: a,
            provenance=("inner", a),
        )

    @classmethod
    def tabulated(cls, ring: Ring, n: int, pairs) -> "TwoLocalModel":
        """Finite model given by explicit (input, output) pairs."""
        table = {}
        domain = []
        for x, dx in pairs:
            key = x.upper
            if key in table:
                raise SkewlieError(f"duplicate tabulated input {x!r}")
            table[key] = dx
            domain.append(x)

        def map_fn(x):
            try:
                return table[x.upper]
            except KeyError:
                raise SkewlieError("input outside tabulated domain") from None

        return cls(ring, n, map_fn, provenance=("tabulated", table), domain=domain)

    @classmethod
    def from_basis_images(cls, table: BasisImageTable) -> "TwoLocalModel":
        """Additive extension of a basis-image table: the image of x is
        the x-weighted sum of the basis images."""
        ring, n = table.ring, table.n
        pairs = pair_list(n)

        def map_fn(x):
            acc = zero_skew(ring, n)
            for (i, j), d in zip(pairs, (table.images[pq] for pq in pairs)):
                c = x.entry(i, j)
                if not ring.is_zero(c):
                    acc = acc.add(d.scale(c))
            return acc

        return cls(ring, n, map_fn, provenance=("basis_defined", table))

    def basis_images(self) -> BasisImageTable:
        return BasisImageTable.from_map(self.ring, self.n, self.map)

    def pair_equations_hold(self, w, x: SkewMatrix, y: SkewMatrix) -> bool:
        """Does w witness this model at both x and y?"""
        if self.form == LIE:
            return (
                apply_lie_derivation(w, x) == self.map(x)
                and apply_lie_derivation(w, y) == self.map(y)
            )
        half = self.ring.half(self.ring.one())
        wl = w.scale(half)  # assoc witness acts as the Lie witness of w/2
        return (
            apply_lie_derivation(wl, x) == self.map(x)
            and apply_lie_derivation(wl, y) == self.map(y)
        )

    def to_json(self):
        if self.provenance[0] == "inner":
            return {"kind": "inner", "n": self.n, "generator": self.provenance[1].to_json()}
        if self.provenance[0] == "tabulated":
            return {
                "kind": "tabulated",
                "n": self.n,
                "pairs": [[x.to_json(), self.map(x).to_json()] for x in self.domain],
            }
        raise UnsupportedOperationError(
            f"{self.provenance[0]} models have no JSON serialization"
        )


def model_from_json(ring: Ring, obj) -> TwoLocalModel:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise SchemaError("model JSON must have a 'kind' field")
    if obj["kind"] == "inner":
        gen = SkewMatrix.from_json(ring, obj.get("generator"))
        return TwoLocalModel.inner(gen)
    if obj["kind"] == "tabulated":
        pairs_json = obj.get("pairs")
        if not isinstance(pairs_json, list):
            raise SchemaError("'pairs' must be a list of [input, output] pairs")
        pairs = []
        for item in pairs_json:
            if not isinstance(item, list) or len(item) != 2:
                raise SchemaError(f"bad tabulated pair {item!r}")
            pairs.append((SkewMatrix.from_json(ring, item[0]), SkewMatrix.from_json(ring, item[1])))
        if not pairs:
            raise SchemaError("tabulated model must have at least one pair")
        n = pairs[0][0].n
        return TwoLocalModel.tabulated(ring, n, pairs)
    raise SchemaError(f"unknown model kind {obj['kind']!r}")


def find_pair_witness(
    x: SkewMatrix, dx: SkewMatrix, y: SkewMatrix, dy: SkewMatrix
) -> Optional[SkewMatrix]:
    """A skew a with 2(ax - xa) = dx and 2(ay - ya) = dy, or None.

    The image of x is linear in the generator, so the column of unknown
    entry (p, q) is the image of x under the derivation generated by
    s_pq; free variables are zeroed by the solver, which makes the
    returned witness deterministic.
    """
    ring, n = x.ring, x.n
    pairs = pair_list(n)
    m = len(pairs)
    rows = []
    for inp, out in ((x, dx), (y, dy)):
        cols = [apply_lie_derivation(s_unit(ring, n, p, q), inp).upper for p, q in pairs]
        for slot in range(m):
            rows.append(([cols[k][slot] for k in range(m)], out.upper[slot]))
    sol = solve(LinearSystem(ring, m, rows))
    if not sol.ok:
        return None
    return SkewMatrix(ring, n, tuple(sol.values))


def check_two_local(model: TwoLocalModel, pair_budget: int, seed) -> dict:
    """Search for pairs with no witness.

    Tabulated models are exhausted pair by pair (up to the budget);
    otherwise basis-element pairs come first and seeded random pairs
    fill the rest.  When the model carries its own witness oracle, the
    oracle's answers are cross-checked by substitution.
    """
    ring, n = model.ring, model.n
    rng = random.Random(seed)
    pairs_iter = []
    if model.domain is not None:
        dom = model.domain
        for ii in range(len(dom)):
            for jj in range(ii, len(dom)):
                if len(pairs_iter) >= pair_budget:
                    break
                pairs_iter.append((dom[ii], dom[jj]))
            if len(pairs_iter) >= pair_budget:
                break
    else:
        basis = [s_unit(ring, n, i, j) for i, j in pair_list(n)]
        for ii in range(len(basis)):
            for jj in range(ii, len(basis)):
                if len(pairs_iter) >= pair_budget:
                    break
                pairs_iter.append((basis[ii], basis[jj]))
            if len(pairs_iter) >= pair_budget:
                break
        while len(pairs_iter) < pair_budget:
            pairs_iter.append((random_skew(ring, n, rng), random_skew(ring, n, rng)))
    failures = []
    oracle_failures = []
    oracle_checked = 0
    for x, y in pairs_iter:
        dx, dy = model.map(x), model.map(y)
        w = find_pair_witness(x, dx, y, dy)
        if w is None:
            failures.append({"x": x.to_json(), "y": y.to_json(), "reason": "no_witness"})
        elif not model.pair_equations_hold(w, x, y):
            failures.append(
                {"x": x.to_json(), "y": y.to_json(), "reason": "witness_substitution_failed"}
            )
        if model.witness is not None:
            oracle_checked += 1
            wo = model.witness(x, y)
            if not model.pair_equations_hold(wo, x, y):
                oracle_failures.append(
                    {"x": x.to_json(), "y": y.to_json(), "reason": "oracle_witness_failed"}
                )
    report = {
        "pairs_checked": len(pairs_iter),
        "failures": failures,
        "oracle_checked": oracle_checked,
        "oracle_failures": oracle_failures,
        "seed": seed,
        "budget": pair_budget,
    }
    if pair_budget == 0:
        report["warning"] = "budget 0: vacuous pass, nothing was checked"
    return report


def generator_agreement(a: SkewMatrix, b: SkewMatrix, i: int, j: int) -> bool:
    """Given equal images on s_ij (checked), do a and b agree at every
    entry in rows and columns i and j away from the pair?  This must
    always be true; a False return signals an implementation fault."""
    ring, n = a.ring, a.n
    sij = s_unit(ring, n, i, j)
    if apply_lie_derivation(a, sij) != apply_lie_derivation(b, sij):
        raise PreconditionError(f"images on s_({i},{j}) differ")
    for k in range(1, n + 1):
        if k == i or k == j:
            continue
        if a.entry(k, i) != b.entry(k, i) or a.entry(k, j) != b.entry(k, j):
            return False
        if a.entry(i, k) != b.entry(i, k) or a.entry(j, k) != b.entry(j, k):
            return False
    return True


def _require_witness(model: TwoLocalModel):
    if model.witness is None:
        raise UnsupportedOperationError("model transfer needs a witness oracle")


def to_associative_model(model: TwoLocalModel) -> TwoLocalModel:
    """Lie-side model to associative-side model: witnesses double."""
    _require_witness(model)
    if model.form != LIE:
        raise UnsupportedOperationError("model is already on the associative side")
    two = model.ring.double(model.ring.one())
    return TwoLocalModel(
        model.ring,
        model.n,
        model.map,
        witness=lambda x, y: model.witness(x, y).scale(two),
        provenance=("transferred", model),
        form=ASSOC,
        domain=model.domain,
    )


def to_lie_model(model: TwoLocalModel) -> TwoLocalModel:
    """Associative-side model to Lie-side model: witnesses halve."""
    _require_witness(model)
    if model.form != ASSOC:
        raise UnsupportedOperationError("model is already on the Lie side")
    half = model.ring.half(model.ring.one())
    return TwoLocalModel(
        model.ring,
        model.n,
        model.map,
        witness=lambda x, y: model.witness(x, y).scale(half),
        provenance=("transferred", model),
        form=LIE,
        domain=model.domain,
    )


def tamper_point(model: TwoLocalModel, x0: SkewMatrix, delta: SkewMatrix) -> TwoLocalModel:
    """Adversary: add delta to the image of the single input x0."""

    def map_fn(x):
        out = model.map(x)
        if x == x0:
            out = out.add(delta)
        return out

    return TwoLocalModel(
        model.ring,
        model.n,
        map_fn,
        witness=model.witness,
        provenance=("tampered_point", model.provenance),
        form=model.form,
        domain=model.domain,
    )


def tamper_basis_image(
    table: BasisImageTable, i: int, j: int, p: int, q: int, delta
) -> BasisImageTable:
    """Adversary: add the scalar delta at entry (p, q) of the image of
    s_ij, returning a new table."""
    ring, n = table.ring, table.n
    images = dict(table.images)
    d = images[(i, j)]
    upper = list(d.upper)
    if not 1 <= p < q <= n:
        raise ValueError(f"tamper slot must satisfy 1 <= p < q <= n, got ({p},{q})")
    slot = packed_index(n, p, q)
    upper[slot] = ring.add(upper[slot], delta)
    images[(i, j)] = SkewMatrix(ring, n, upper)
    return BasisImageTable(ring, n, images)


def derangement(count: int, rng) -> list:
    """A uniformly random cyclic permutation of range(count) with no
    fixed point (Sattolo's algorithm); needs count >= 2."""
    if count < 2:
        raise ValueError("derangement needs at least two items")
    perm = list(range(count))
    for i in range(count - 1, 0, -1):
        j = rng.randrange(i)
        perm[i], perm[j] = perm[j], perm[i]
    return perm
