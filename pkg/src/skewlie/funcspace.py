"""Finite function-space model: maps from a finite set into skew m x m
matrices, and spatial derivations of their Lie subalgebras.

A map from a set of size k into skew matrices over a base field is the
same thing as one skew matrix over the k-fold product ring, entrywise;
everything is computed in that form and can be projected back to any
point for cross-checking.  A derivation of a subalgebra is spatial when
an element of the AMBIENT algebra implements it; the implementing
element need not belong to the subalgebra, and for the subalgebra of
constant maps it genuinely does not.
"""

from __future__ import annotations

import random
from typing import Callable, Optional

from .errors import (
    DimensionRangeError,
    PreconditionError,
    SchemaError,
    UnsupportedOperationError,
)
from .lie import apply_lie_derivation, bracket
from .matrices import (
    SkewMatrix,
    SquareMatrix,
    identity_matrix,
    mat_add,
    mat_mul,
    mat_sub,
    matrix_unit,
    pair_list,
    random_skew,
    s_unit,
    zero_skew,
)
from .reconstruct import (
    BasisImageTable,
    ReconstructionReport,
    assemble_generator,
    block_sum_image,
)
from .rings import PrimeField, ProductRing, Rationals, Ring

EXPLORATORY_M_NOTE = "matrix dimension 3 is below the guaranteed range (m >= 4)"


class SpatialSetting:
    """Finite point set of size omega_size, matrix dimension m, and a
    base field; the ambient algebra is the skew m x m matrices over the
    product ring with omega_size factors."""

    def __init__(self, omega_size: int, m: int, base: Ring):
        if not isinstance(omega_size, int) or omega_size < 1:
            raise ValueError(f"omega size must be >= 1, got {omega_size!r}")
        if not isinstance(base, (Rationals, PrimeField)):
            raise UnsupportedOperationError(
                "base must be the rationals or an odd prime field"
            )
        if m < 3:
            raise DimensionRangeError(f"matrix dimension must be >= 3, got {m}")
        self.omega_size = omega_size
        self.m = m
        self.base = base
        self.ambient = ProductRing(base, omega_size)

    @property
    def exploratory(self) -> bool:
        return self.m == 3

    def constant_unit(self, i: int, j: int) -> SquareMatrix:
        """The constant map sending every point to the matrix unit
        e_ij: the unit over the product ring with an all-ones entry."""
        return matrix_unit(self.ambient, self.m, i, j)

    def s_unit(self, i: int, j: int) -> SkewMatrix:
        return s_unit(self.ambient, self.m, i, j)

    def lift_constant(self, x: SkewMatrix) -> SkewMatrix:
        """Constant map with value x (a skew matrix over the base)."""
        k = self.omega_size
        return SkewMatrix(self.ambient, self.m, tuple((v,) * k for v in x.upper))

    def project(self, x: SkewMatrix, w: int) -> SkewMatrix:
        """Value of the map x at point index w (0-based)."""
        if not 0 <= w < self.omega_size:
            raise IndexError(f"point index {w} out of range 0..{self.omega_size - 1}")
        return SkewMatrix(self.base, self.m, tuple(v[w] for v in x.upper))

    def glue(self, values) -> SkewMatrix:
        """Inverse of projection: one skew matrix per point, entrywise."""
        vals = list(values)
        if len(vals) != self.omega_size:
            raise ValueError(f"expected {self.omega_size} values, got {len(vals)}")
        uppers = [v.upper for v in vals]
        return SkewMatrix(
            self.ambient,
            self.m,
            tuple(tuple(u[k] for u in uppers) for k in range(len(uppers[0]))),
        )

    def is_constant(self, x: SkewMatrix) -> bool:
        return all(len(set(v)) == 1 for v in x.upper)

    def random_ambient(self, rng) -> SkewMatrix:
        return random_skew(self.ambient, self.m, rng)

    def to_json(self):
        return {"omega": self.omega_size, "m": self.m, "base": self.base.descriptor()}


class SubalgebraSpec:
    """A Lie subalgebra of the ambient algebra containing every s_ij.

    Shipped kinds: the full algebra and the constant maps; a custom
    kind takes a membership predicate plus a sampling basis.  On
    construction, membership of every s_ij is checked, and closure
    under the bracket is spot-checked on sampled pairs.
    """

    def __init__(self, kind: str, predicate: Optional[Callable] = None, basis=None):
        if kind not in ("full", "constant_maps", "custom"):
            raise ValueError(f"unknown subalgebra kind {kind!r}")
        if kind == "custom" and (predicate is None or not basis):
            raise ValueError("custom subalgebra needs a predicate and a sampling basis")
        self.kind = kind
        self.predicate = predicate
        self.basis = list(basis) if basis else None

    @classmethod
    def full(cls) -> "SubalgebraSpec":
        return cls("full")

    @classmethod
    def constant_maps(cls) -> "SubalgebraSpec":
        return cls("constant_maps")

    @classmethod
    def custom(cls, predicate, basis) -> "SubalgebraSpec":
        return cls("custom", predicate, basis)

    def contains(self, setting: SpatialSetting, x: SkewMatrix) -> bool:
        if x.ring != setting.ambient or x.n != setting.m:
            return False
        if self.kind == "full":
            return True
        if self.kind == "constant_maps":
            return setting.is_constant(x)
        return bool(self.predicate(x))

    def sample(self, setting: SpatialSetting, rng) -> SkewMatrix:
        if self.kind == "full":
            return setting.random_ambient(rng)
        if self.kind == "constant_maps":
            return setting.lift_constant(random_skew(setting.base, setting.m, rng))
        acc = zero_skew(setting.ambient, setting.m)
        for b in self.basis:
            c = setting.ambient.random(rng)
            acc = acc.add(b.scale(c))
        return acc

    def validate(self, setting: SpatialSetting, seed=0, trials: int = 20) -> None:
        """Checked on construction of a scenario: contains every s_ij
        and is closed under the bracket on sampled pairs."""
        for i, j in pair_list(setting.m):
            if not self.contains(setting, setting.s_unit(i, j)):
                raise PreconditionError(f"subalgebra lacks s_({i},{j})")
        rng = random.Random(seed)
        for _ in range(trials):
            x = self.sample(setting, rng)
            y = self.sample(setting, rng)
            if not self.contains(setting, x) or not self.contains(setting, y):
                raise PreconditionError("subalgebra sampler escapes the predicate")
            if not self.contains(setting, bracket(x, y)):
                raise PreconditionError("subalgebra not closed under bracket on a sample")


class SpatialDerivation:
    """Derivation of a subalgebra implemented by an ambient element."""

    def __init__(self, setting: SpatialSetting, ambient_generator: SkewMatrix):
        if ambient_generator.ring != setting.ambient or ambient_generator.n != setting.m:
            raise SchemaError("generator must be an ambient skew matrix")
        self.setting = setting
        self.ambient_generator = ambient_generator

    def __call__(self, x: SkewMatrix) -> SkewMatrix:
        return apply_lie_derivation(self.ambient_generator, x)


def projection_agreement(setting: SpatialSetting, a: SkewMatrix, b: SkewMatrix, i: int, j: int) -> bool:
    """Given equal images on s_ij (checked), the four compressions of a
    and b by the constant units at i and j against the complementary
    projection must agree.  Must always be true under the precondition.
    """
    sij = setting.s_unit(i, j)
    if apply_lie_derivation(a, sij) != apply_lie_derivation(b, sij):
        raise PreconditionError(f"images on s_({i},{j}) differ")
    eii = setting.constant_unit(i, i)
    ejj = setting.constant_unit(j, j)
    one = identity_matrix(setting.ambient, setting.m)
    q = mat_sub(one, mat_add(eii, ejj))
    asq, bsq = a.to_square(), b.to_square()
    for left, right in ((q, eii), (q, ejj), (eii, q), (ejj, q)):
        if mat_mul(mat_mul(left, asq), right) != mat_mul(mat_mul(left, bsq), right):
            return False
    return True


def reconstruct_spatial(
    setting: SpatialSetting, subalgebra: SubalgebraSpec, table: BasisImageTable
) -> ReconstructionReport:
    """Reconstruct an ambient generator from basis images; the result
    need not lie in the subalgebra, which is the spatial distinction."""
    if table.ring != setting.ambient or table.n != setting.m:
        raise SchemaError("table must hold ambient images of dimension m")
    return assemble_generator(table, exploratory=setting.exploratory)


def verify_spatial(
    setting: SpatialSetting,
    subalgebra: SubalgebraSpec,
    model,
    a: SkewMatrix,
    budget: int,
    seed,
) -> dict:
    """Sample subalgebra members and check the model against the
    ambient generator: directly, through the block decomposition, and
    pointwise at every omega after projection."""
    rng = random.Random(seed)
    violations = []
    checked = 0
    for _ in range(budget):
        x = subalgebra.sample(setting, rng)
        dx = model.map(x) if hasattr(model, "map") else model(x)
        if dx != apply_lie_derivation(a, x):
            violations.append({"x": x.to_json(), "check": "derivation"})
        if dx != block_sum_image(a, x):
            violations.append({"x": x.to_json(), "check": "block"})
        for w in range(setting.omega_size):
            if setting.project(dx, w) != apply_lie_derivation(
                setting.project(a, w), setting.project(x, w)
            ):
                violations.append({"x": x.to_json(), "check": "pointwise", "omega": w})
        checked += 1
    report = {"checked": checked, "violations": violations, "seed": seed}
    if setting.exploratory:
        report["exploratory"] = True
        report["exploratory_reason"] = EXPLORATORY_M_NOTE
    return report
