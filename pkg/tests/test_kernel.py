"""Backend parity: the compiled kernel and the pure-Python fallback
must be observationally identical, and the selection switch must work."""

import os
import random
import subprocess
import sys

import pytest

from skewlie import _kernel
from skewlie._kernel import _kernel_py
from skewlie.lie import apply_lie_derivation
from skewlie.matrices import SkewMatrix, packed_size, random_skew, s_unit
from skewlie.reconstruct import block_sum_image
from skewlie.rings import PrimeField

try:
    from skewlie._kernel import _fastkernel
except ImportError:
    _fastkernel = None

BACKENDS = [_kernel_py] + ([_fastkernel] if _fastkernel is not None else [])


def random_packed(n, p, rng):
    return tuple(rng.randrange(p) for _ in range(packed_size(n)))


def test_active_backend_is_known():
    assert _kernel.BACKEND_NAME in ("c", "python")
    assert _kernel_py.BACKEND_NAME == "python"
    if _fastkernel is not None:
        assert _fastkernel.BACKEND_NAME == "c"


@pytest.mark.skipif(_fastkernel is None, reason="compiled kernel unavailable")
def test_deriv_image_parity():
    rng = random.Random(90)
    for n, p in ((3, 3), (4, 3), (4, 5), (5, 7), (8, 11)):
        for _ in range(20):
            a = random_packed(n, p, rng)
            x = random_packed(n, p, rng)
            assert _fastkernel.deriv_image(n, p, a, x) == _kernel_py.deriv_image(n, p, a, x)


@pytest.mark.skipif(_fastkernel is None, reason="compiled kernel unavailable")
def test_block_image_parity():
    rng = random.Random(91)
    for n, p in ((4, 3), (5, 5), (6, 7)):
        for _ in range(20):
            a = random_packed(n, p, rng)
            x = random_packed(n, p, rng)
            assert _fastkernel.block_image(n, p, a, x) == _kernel_py.block_image(n, p, a, x)


def test_two_routes_agree_inside_each_backend():
    """deriv_image multiplies matrices; block_image sums the two-index
    formula.  They are independent computations of the same thing."""
    rng = random.Random(92)
    for kern in BACKENDS:
        for _ in range(25):
            a = random_packed(4, 5, rng)
            x = random_packed(4, 5, rng)
            assert kern.deriv_image(4, 5, a, x) == kern.block_image(4, 5, a, x)


def test_kernel_matches_library_path():
    """The kernel output and the SkewMatrix pipeline must agree."""
    rng = random.Random(93)
    g5 = PrimeField(5)
    for _ in range(20):
        a = random_skew(g5, 5, rng)
        x = random_skew(g5, 5, rng)
        want = apply_lie_derivation(a, x).upper
        for kern in BACKENDS:
            assert kern.deriv_image(5, 5, a.upper, x.upper) == want
        assert block_sum_image(a, x).upper == want


def test_extraction_scan_parity_and_value():
    for kern in BACKENDS:
        assert kern.extraction_scan(4, 3) == 0
        assert kern.extraction_scan(3, 5) == 0


@pytest.mark.skipif(_fastkernel is None, reason="compiled kernel unavailable")
def test_witness_scan_parity():
    rng = random.Random(94)
    g3 = PrimeField(3)
    hits = 0
    for _ in range(30):
        x = random_skew(g3, 4, rng)
        if rng.random() < 0.5:
            dx = apply_lie_derivation(random_skew(g3, 4, rng), x)
        else:
            dx = random_skew(g3, 4, rng)
        fast = _fastkernel.witness_scan(4, 3, x.upper, dx.upper)
        slow = _kernel_py.witness_scan(4, 3, x.upper, dx.upper)
        assert fast == slow  # same witness, not just same existence
        if fast is not None:
            hits += 1
            w = SkewMatrix(g3, 4, fast)
            assert apply_lie_derivation(w, x) == dx
    assert hits > 0


def test_witness_scan_returns_first_in_order():
    # for the zero map the first witness in enumeration order is zero
    g3 = PrimeField(3)
    x = s_unit(g3, 4, 1, 2)
    zero = tuple([0] * 6)
    for kern in BACKENDS:
        assert kern.witness_scan(4, 3, x.upper, zero) == zero


def test_agreement_scan_parity_and_frozen_counts():
    for kern in BACKENDS:
        assert kern.agreement_zero_scan(4, 3) == (54, 0)
    # the larger case is what the acceptance suite reruns
    if _fastkernel is not None:
        assert _fastkernel.agreement_zero_scan(5, 3) == (810, 0)


def run_subprocess(env_value):
    env = dict(os.environ)
    if env_value is None:
        env.pop("SKEWLIE_BACKEND", None)
    else:
        env["SKEWLIE_BACKEND"] = env_value
    code = "import skewlie; print(skewlie.KERNEL_BACKEND)"
    return subprocess.run(
        [sys.executable, "-c", code], capture_output=True, text=True, env=env
    )


def test_backend_env_forces_python():
    out = run_subprocess("python")
    assert out.returncode == 0
    assert out.stdout.strip() == "python"


@pytest.mark.skipif(_fastkernel is None, reason="compiled kernel unavailable")
def test_backend_env_forces_c():
    out = run_subprocess("c")
    assert out.returncode == 0
    assert out.stdout.strip() == "c"


def test_backend_env_rejects_unknown():
    out = run_subprocess("fortran")
    assert out.returncode != 0
    assert "SKEWLIE_BACKEND" in out.stderr


def test_results_match_across_forced_backends():
    """End to end: a reconstruction done under each forced backend
    produces byte-identical JSON."""
    code = (
        "import json, random\n"
        "from skewlie.rings import PrimeField\n"
        "from skewlie.matrices import random_skew\n"
        "from skewlie.reconstruct import BasisImageTable, assemble_generator\n"
        "a = random_skew(PrimeField(5), 4, random.Random(7))\n"
        "rep = assemble_generator(BasisImageTable.from_generator(a))\n"
        "print(json.dumps(rep.to_json(), sort_keys=True))\n"
    )
    outs = []
    for backend in ("python", "c") if _fastkernel is not None else ("python",):
        env = dict(os.environ, SKEWLIE_BACKEND=backend)
        r = subprocess.run(
            [sys.executable, "-c", code], capture_output=True, text=True, env=env
        )
        assert r.returncode == 0, r.stderr
        outs.append(r.stdout)
    assert len(set(outs)) == 1
