import os
import subprocess
import sys

import pytest

from numsg import kernel
from numsg.core import NumericalSemigroup
from numsg.families import table1
from numsg.tree import multiplicity_subtree_root

N0 = NumericalSemigroup.natural()

# semigroup counts by genus, g = 0..22; the first 13 come from the
# gap-set oracle in test_tree.py, the rest from both kernels agreeing
N_G = [1, 1, 2, 4, 7, 12, 23, 39, 67, 118, 204, 343, 592, 1001, 1693, 2857, 4806,
       8045, 13467, 22464, 37396, 62194, 103246]

needs_cython = pytest.mark.skipif(
    "cython" not in kernel.available_backends(), reason="compiled kernel not built"
)


def _call(s, G, chain_only=False, fixed_m=0, backend=None):
    return kernel.count_subtree(s.bits, s.conductor, s.multiplicity, s.genus, G,
                                chain_only, fixed_m, backend=backend)


def test_python_kernel_counts():
    count, examined, chain, _, _ = _call(N0, 16, backend="python")
    assert count == N_G[:17]
    assert examined == count
    assert chain[5] == 6


@needs_cython
@pytest.mark.parametrize(
    "root, G, chain_only, fixed_m",
    [
        (N0, 18, False, 0),
        (N0, 18, True, 0),
        (multiplicity_subtree_root(4), 30, True, 4),
        (multiplicity_subtree_root(6), 26, False, 6),
        (multiplicity_subtree_root(5), 20, False, 0),
        (table1("S", 2), 30, True, 6),
        (NumericalSemigroup.from_gaps([1, 2, 3, 5]), 20, False, 0),
        (NumericalSemigroup.from_generators([4, 5, 6]), 10, False, 0),
    ],
)
def test_backends_agree(root, G, chain_only, fixed_m):
    assert _call(root, G, chain_only, fixed_m, "python") == _call(root, G, chain_only, fixed_m, "cython")


@needs_cython
def test_compiled_counts_to_22():
    assert _call(N0, 22, backend="cython")[0] == N_G


def test_root_above_bound_gives_zeros():
    s = NumericalSemigroup.from_gaps([1, 2, 3])
    for name in kernel.available_backends():
        count, *_ = _call(s, 2, backend=name)
        assert count == [0, 0, 0]


def test_fallback_selected_by_environment():
    env = dict(os.environ, NUMSG_KERNEL="python")
    out = subprocess.run(
        [sys.executable, "-c", "import numsg.kernel as k; print(k.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"


@needs_cython
def test_compiled_kernel_active_by_default():
    env = {k: v for k, v in os.environ.items() if k != "NUMSG_KERNEL"}
    out = subprocess.run(
        [sys.executable, "-c", "import numsg.kernel as k; print(k.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "cython"
