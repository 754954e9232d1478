#!/usr/bin/env python3
"""Smoke test for the qsmp_py extension module.

Builds nothing itself: expects `cargo build -p qsmp-py` (or a workspace
build) to have produced the cdylib already. Usage: python3 python/smoke_test.py
"""

import shutil
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def locate_cdylib() -> Path:
    candidates = []
    for profile in ("debug", "release"):
        for name in ("libqsmp_py.so", "libqsmp_py.dylib", "qsmp_py.dll"):
            candidates.append(ROOT / "target" / profile / name)
    for path in candidates:
        if path.exists():
            return path
    sys.exit("cdylib not found; run `cargo build -p qsmp-py` first")


def main() -> None:
    lib = locate_cdylib()
    tmp = Path(tempfile.mkdtemp(prefix="qsmp_py_"))
    shutil.copy(lib, tmp / "qsmp_py.so")
    sys.path.insert(0, str(tmp))
    import qsmp_py

    assert qsmp_py.hamming_distance("110100", "100110") == 2

    r = qsmp_py.run_hamming("1" * 32 + "0" * 32, "0" * 64, 0.5, seed=7)
    assert r.true_distance == 32.0
    assert r.succeeded, f"estimate {r.estimate} outside tolerance"
    assert r.qubits_total > 0

    same = qsmp_py.run_hamming("1010", "1010", 0.5)
    assert same.estimate == 0.0 and same.succeeded

    triangle = "0 1\n1 2\n2 0\n"
    assert qsmp_py.recognize(triangle) == "l1"
    assert qsmp_py.recognize("0 1\n1 2\n2 3\n3 0\n") == "partial-cube"
    assert qsmp_py.recognize("0 2\n0 3\n0 4\n1 2\n1 3\n1 4\n") == "not-l1"

    emb = qsmp_py.embed(triangle)
    assert emb.startswith("scale 2 dimension 3\n"), emb

    g = qsmp_py.run_graph_distance("0 1\n1 2\n2 3\n3 4\n", 0, 4, 0.5, seed=3)
    assert g.true_distance == 4.0

    vec_a = "dim 3 bits 4 scale 1\n0.5\n-0.5\n1.0\n"
    vec_b = "dim 3 bits 4 scale 1\n-0.5\n-0.5\n0.0\n"
    l1 = qsmp_py.run_l1(vec_a, vec_b, 0.5, seed=4)
    assert l1.true_distance == 2.0

    assert qsmp_py.gt_via_mod(7.0, 3.0, 0.2, mode="low")
    assert not qsmp_py.gt_via_mod(3.0, 7.0, 0.2, mode="high")
    try:
        qsmp_py.gt_via_mod(1.0, 2.0, 0.3)
    except ValueError:
        pass
    else:
        raise AssertionError("eps >= 1/4 must be rejected")

    determinism = [qsmp_py.run_hamming("10" * 32, "01" * 32, 0.5, seed=9).estimate for _ in range(2)]
    assert determinism[0] == determinism[1]

    print("smoke test: all checks passed")


if __name__ == "__main__":
    main()
