import os
import random
import subprocess
import sys

import pytest

from infhecke import KERNEL, _kernel_py
from infhecke.families import FamilySpec, build_presentation
from infhecke.fuzz import DEFAULT_SEED, random_element
from infhecke.poly import T
from infhecke.sl2 import hz_presentation


def _compiled():
    try:
        from infhecke import _kernel
    except ImportError:
        return None
    return _kernel


@pytest.mark.skipif(_compiled() is None, reason="compiled kernel not built")
@pytest.mark.parametrize("pres", [hz_presentation(T ** 2), build_presentation(FamilySpec("gln", 2, 1, 1))],
                         ids=["Hz", "gl2"])
def test_kernels_agree(pres):
    fast = _compiled().Straightener(pres.ngens, pres.corrections)
    slow = _kernel_py.Straightener(pres.ngens, pres.corrections)
    rng = random.Random(DEFAULT_SEED)
    for _ in range(50):
        a = random_element(pres, rng)
        b = random_element(pres, rng)
        assert fast.mul(a.terms, b.terms) == slow.mul(a.terms, b.terms)


def test_pure_python_switch():
    env = dict(os.environ, INFHECKE_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import infhecke; print(infhecke.KERNEL)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_kernel_name():
    assert KERNEL in ("compiled", "python")
