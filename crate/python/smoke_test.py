#!/usr/bin/env python3
"""Smoke test for the `_hvkit` extension: runs every exported function
on small instances with known answers.

Build the module first (either way works):
  pip install -e crates/python --no-build-isolation   # needs maturin
  cargo build -p hvkit-python --release \
    && cp target/release/lib_hvkit.so python/_hvkit.so
then run:  PYTHONPATH=python python3 python/smoke_test.py
"""

import _hvkit as hv


def expect(condition, message):
    if not condition:
        raise AssertionError(message)


def main():
    points = [[1.0, 3.0], [2.0, 2.0], [3.0, 1.0]]
    ref = [4.0, 4.0]

    total = hv.hypervolume(points, ref)
    expect(total == 6.0, f"hypervolume {total} != 6")
    for algorithm in ("auto", "2d", "wfg", "hso", "ie", "grid"):
        value = hv.hypervolume(points, ref, algorithm)
        expect(abs(value - 6.0) <= 1e-9, f"{algorithm}: {value}")

    contribs = hv.contributions(points, ref)
    expect(contribs == [1.0, 1.0, 1.0], f"contributions {contribs}")

    index, value = hv.least_contributor(points, ref)
    expect((index, value) == (0, 1.0), f"least contributor {(index, value)}")

    grown = hv.updated_hypervolume(points, ref, total, [0.5, 0.5])
    fresh = hv.hypervolume(points + [[0.5, 0.5]], ref)
    expect(abs(grown - fresh) <= 1e-9, f"incremental {grown} vs {fresh}")

    shrunk = hv.updated_hypervolume(points, ref, total, [2.0, 2.0], remove=True)
    rest = hv.hypervolume([points[0], points[2]], ref)
    expect(abs(shrunk - rest) <= 1e-9, f"decremental {shrunk} vs {rest}")

    wide = [[1.0, 4.0], [2.0, 2.0], [4.0, 1.0]]
    wide_ref = [5.0, 5.0]
    selected, best = hv.subset_selection(wide, wide_ref, 1, method="exact2d")
    expect(selected == [1] and best == 9.0, f"exact2d {(selected, best)}")
    _, greedy_val = hv.subset_selection(wide, wide_ref, 2, method="greedy-inc")
    _, opt_val = hv.subset_selection(wide, wide_ref, 2, method="exhaustive")
    expect(greedy_val <= opt_val + 1e-12, f"greedy {greedy_val} vs {opt_val}")
    evo_sel, evo_val = hv.subset_selection(wide, wide_ref, 2, method="gsemo", seed=7)
    recomputed = hv.hypervolume([wide[i] for i in evo_sel], wide_ref)
    expect(abs(recomputed - evo_val) <= 1e-12, f"gsemo {evo_val} vs {recomputed}")

    bounds = hv.local_upper_bounds(points, ref)
    expect(len(bounds) == len(points) + 1, f"{len(bounds)} bounds")
    expect(all(len(b) == 2 for b in bounds), "bound dimension")

    try:
        hv.hypervolume(points, [4.0, 4.0, 4.0])
    except ValueError:
        pass
    else:
        raise AssertionError("dimension mismatch not reported")

    print("python smoke test: PASS")


if __name__ == "__main__":
    main()
