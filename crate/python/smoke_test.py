"""Smoke test for the fatpoints extension module.

Build first:

    cargo build -p fatpoints-py --release --features extension-module

then run ``python3 python/smoke_test.py``. If ``fatpoints`` is not
importable, the freshly built shared library in target/release is loaded.
"""

import importlib.machinery
import importlib.util
import pathlib
import sys


def load():
    try:
        import fatpoints

        return fatpoints
    except ImportError:
        pass
    root = pathlib.Path(__file__).resolve().parent.parent
    for name in ("libfatpoints.so", "libfatpoints.dylib", "fatpoints.dll"):
        path = root / "target" / "release" / name
        if path.exists():
            loader = importlib.machinery.ExtensionFileLoader("fatpoints", str(path))
            spec = importlib.util.spec_from_file_location("fatpoints", path, loader=loader)
            module = importlib.util.module_from_spec(spec)
            loader.exec_module(module)
            return module
    sys.exit("fatpoints extension not found; build it with cargo first")


def main():
    fp = load()

    assert fp.conjugate([4, 4, 3, 1]) == [4, 3, 3, 2]
    assert fp.majorizes([3, 1], [2, 2])

    z = fp.Scheme([[4, 2, 0], [0, 0, 3], [0, 2, 0], [3, 0, 0]])
    raw, alpha = z.alpha()
    assert raw == [[6, 4, 2, 1], [3, 2, 1], [2, 1], [3, 2, 1]]
    assert len(alpha) == 12
    bc, br = z.border()
    assert bc == [12, 20, 24, 26, 27, 28, 28, 28, 28]
    assert z.degree() == 28
    assert not z.is_acm()
    assert z.acm_certificate().startswith("NOT ACM")
    assert z.verify_border() == 0
    table = z.hilbert()
    assert table[0][0] is None and table[-1][-1] == 28

    y1 = fp.Scheme(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
        row_coords=[(1, 1), (1, 2), (1, 3), (1, 4)],
        col_coords=[(1, 1), (1, 2), (1, 3), (1, 5)],
    )
    assert y1.hilbert(window=(4, 4), oracle=True) == [
        [1, 2, 3, 4, 4],
        [2, 4, 4, 4, 4],
        [3, 4, 4, 4, 4],
        [4, 4, 4, 4, 4],
        [4, 4, 4, 4, 4],
    ]
    y2 = fp.Scheme([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    assert y2.oracle_value(1, 1, exact=True) == 3

    w = fp.Scheme([[3, 2], [2, 0]])
    assert w.is_acm()
    corners, vertices = w.resolution()
    assert sorted(corners) == [(0, 5), (1, 3), (2, 2), (3, 1), (5, 0)]
    assert sorted(vertices) == [(1, 5), (2, 3), (3, 2), (5, 1)]
    assert w.oracle_value(4, 4) == 12
    c = w.classify()
    assert c["almost_homogeneous"] == 3 and c["quasi_homogeneous"] is None
    assert "m ≥ 4" in w.check_classification()

    assert fp.Scheme([[3, 3], [3, 2]]).classify()["quasi_homogeneous"] == [2, 1]
    assert fp.Scheme.normalize([[0, 0], [0, 2]]).mult == [[2]]
    assert fp.Scheme.from_json('{"mult": [[2]]}').resolution()[0] == [(0, 2), (1, 1), (2, 0)]

    for bad in ([[1, 0], [0, 0]], [[0]]):
        try:
            fp.Scheme(bad)
        except ValueError:
            pass
        else:
            raise AssertionError(f"accepted {bad}")

    print("smoke test passed")


if __name__ == "__main__":
    main()
