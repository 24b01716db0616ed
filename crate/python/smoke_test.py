"""Smoke test for the pypolarcone extension module.

Imports an installed `pypolarcone` if there is one; otherwise loads the
library built by `cargo build --release -p polarcone-py`.
"""

import importlib.machinery
import importlib.util
import math
import pathlib
import sys

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load():
    try:
        import pypolarcone

        return pypolarcone
    except ImportError:
        pass
    for profile in ("release", "debug"):
        lib = ROOT / "target" / profile / "libpypolarcone.so"
        if lib.exists():
            loader = importlib.machinery.ExtensionFileLoader("pypolarcone", str(lib))
            spec = importlib.util.spec_from_loader("pypolarcone", loader)
            module = importlib.util.module_from_spec(spec)
            loader.exec_module(module)
            return module
    sys.exit("pypolarcone not found: run `cargo build --release -p polarcone-py` first")


def close(a, b, tol=1e-9):
    return all(abs(x - y) <= tol for x, y in zip(a, b)) and len(a) == len(b)


def main():
    pc = load()

    c = pc.Cone.from_generators(3, [[3, 1, 0], [3, -1, 0]])
    p = c.polar()
    assert p.polar().equals(c)
    assert len(p.rays) == 2 and len(p.lineality) == 1
    assert not c.is_subspace()

    u = [1.0, 2.0, -0.5]
    y, z = c.moreau(u)
    assert close([a + b for a, b in zip(y, z)], u)
    assert abs(sum(a * b for a, b in zip(y, z))) < 1e-12
    assert c.contains(y) and p.contains(z)
    assert close(c.project(u), y)

    ball = pc.ConvexSet.ball([0.0, 0.0], 1.0)
    assert close(ball.project([3.0, 4.0]), [0.6, 0.8])
    seg = pc.ConvexSet.segment([0.0, -1.0], [0.0, 1.0])
    point, converged = seg.project_oracle([4.9, 0.3])
    assert converged and close(point, seg.project([4.9, 0.3]), 1e-7)

    orthant = pc.Cone.orthant(2)
    v = pc.check_pair(2, pc.ConvexSet.cone(orthant), pc.ConvexSet.cone(orthant.polar()), samples=50)
    assert v["holds"] and v["polar_pair"] is True

    a = pc.ConvexSet.segment([-1.0, 0.0], [2.0, 0.0])
    b = pc.ConvexSet.segment([0.0, -1.0], [0.0, 1.0])
    v = pc.check_pair(3, a, b, samples=50)
    assert not v["holds"] and v["witness_code"] == "SUM_MISMATCH", v

    face = pc.Cone.from_generators(3, [[3, 1, 0]])
    s = pc.separate_face(c, face)
    assert s["contains_face"] and s["strict_sides"]
    n = s["normal"]
    # the plane is (1, -3, 0)-perp
    assert abs(abs(n[0] - 3 * n[1]) / math.sqrt(10) - 1) < 1e-9, n

    names = pc.fixture_names()
    assert "remark5_parabola_line" in names
    for check in pc.run_fixture("polar_orthant", samples=30):
        assert check["passed"], check

    try:
        pc.Cone.from_generators(2, [[1.0, 0.0, 0.0]])
    except ValueError as e:
        assert "dimension" in str(e)
    else:
        raise AssertionError("dimension mismatch not reported")

    print(f"pypolarcone smoke test passed ({len(names)} fixtures)")


if __name__ == "__main__":
    main()
