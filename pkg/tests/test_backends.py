from __future__ import annotations

import json
import os
import subprocess
import sys

import pytest

from turanlab import kernels

SNIPPET = """
import json
from turanlab.counting import Cycle
from turanlab.kernels import BACKEND
from turanlab.search import SearchConfig, enumerate_all_orders, search_max
from turanlab.graph import canonical_form
forms = sorted(str(canonical_form(g)) for g in enumerate_all_orders(6))
res = search_max(SearchConfig(8, Cycle(4), (Cycle(6),)))
print(json.dumps({"backend": BACKEND, "forms": forms, "max": res.max_copies, "extremal": res.graph6, "explored": res.explored}))
"""


def run_with(pure: bool) -> dict:
    env = dict(os.environ)
    env.pop("TURANLAB_PURE_PYTHON", None)
    if pure:
        env["TURANLAB_PURE_PYTHON"] = "1"
    out = subprocess.run([sys.executable, "-c", SNIPPET], env=env, capture_output=True, text=True, check=True)
    return json.loads(out.stdout)


def test_pure_python_fallback_is_selectable():
    assert run_with(True)["backend"] == "python"


@pytest.mark.skipif("cython" not in kernels.available_backends(), reason="extension not built")
def test_backends_give_identical_searches():
    fast, slow = run_with(False), run_with(True)
    assert fast.pop("backend") == "cython"
    slow.pop("backend")
    assert fast == slow
