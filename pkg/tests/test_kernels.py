import os
import subprocess
import sys

import numpy as np
import pytest

from kkshadow import _accel
from kkshadow.cliquedeg import check_condition
from kkshadow.hypergraph import Parameters
from kkshadow.search.kernels import bnb_kernel, build_tables, run_bnb, run_scan, scan_kernel, scan_numpy

needs_numba = pytest.mark.skipif(not _accel.USE_JIT, reason="compiled path disabled")


def brute_scan(tables, params):
    best, masks = tables.num_edges + 1, []
    for g in range(1 << tables.num_edges):
        c = bin(g).count("1")
        if c > best:
            continue
        if check_condition(tables.to_graph(g), params)[0]:
            if c < best:
                best, masks = c, []
            masks.append(g)
    return best, masks


def test_tables_layout():
    t = build_tables(5, 3, 2)
    assert t.num_edges == 10
    assert t.edges[:4] == ((1, 2), (1, 3), (2, 3), (1, 4))
    assert t.vert_ksets.shape == (5, 6) and t.incidence.shape == (10, 5)
    h = t.to_graph(0b111)
    assert h.edges == ((1, 2), (1, 3), (2, 3))
    assert t.to_mask(h) == 0b111


@pytest.mark.parametrize("n,t,k,ell", [(4, 2, 3, 2), (5, 2, 3, 2), (5, 3, 4, 2), (5, 3, 4, 3)])
def test_scan_paths_agree_with_brute_force(n, t, k, ell):
    params = Parameters(n, t, k, ell)
    tables = build_tables(n, k, ell)
    ref = brute_scan(tables, params)
    best, masks = scan_numpy(tables.num_edges, tables.kset_masks, tables.incidence, params.threshold, chunk=97)
    assert (best, sorted(int(m) for m in masks)) == ref
    assert run_scan(tables, params.threshold, use_jit=False) == ref
    best, masks = run_scan(tables, params.threshold)
    assert (best, sorted(masks)) == ref


@needs_numba
@pytest.mark.parametrize("n,t,k,ell", [(5, 2, 3, 2), (6, 2, 3, 2), (5, 3, 4, 3)])
def test_compiled_and_python_bnb_agree(n, t, k, ell):
    params = Parameters(n, t, k, ell)
    tables = build_tables(n, k, ell)
    args = (tables.edge_verts, tables.kset_masks, tables.vert_ksets, params.threshold, 2, 10**6)
    for collect in (False, True):
        for prefix in range(4):
            s1, s2 = np.zeros(4096, np.int64), np.zeros(4096, np.int64)
            # the interpreted kernel still calls the compiled helpers; only its own loop differs
            r1 = bnb_kernel(np.int64(prefix), 2, *args, collect, True, s1)
            r2 = bnb_kernel.py_func(np.int64(prefix), 2, *args, collect, True, s2)
            assert tuple(int(x) for x in r1) == tuple(int(x) for x in r2)
            assert list(s1[: r1[1]]) == list(s2[: r2[1]])


@needs_numba
def test_compiled_scan_matches_numpy():
    tables = build_tables(6, 3, 2)
    sols = np.zeros(4096, np.int64)
    best, nsol = scan_kernel(tables.num_edges, tables.kset_masks, tables.vert_ksets, 1, sols)
    b2, m2 = scan_numpy(tables.num_edges, tables.kset_masks, tables.incidence, 1)
    assert best == b2 and sorted(sols[:nsol]) == sorted(m2)


def test_run_bnb_grows_buffer():
    tables = build_tables(6, 3, 2)
    best, masks, nodes = run_bnb(tables, 0, 0, 1, 2, 10**6, True, sym_break=False, cap=1)
    assert best == 6 and len(masks) == 10  # labeled copies of two disjoint triangles
    assert nodes > 0


def test_sym_break_keeps_every_class():
    from kkshadow.search.canon import canonical_key

    tables = build_tables(6, 3, 2)
    _, with_sb, _ = run_bnb(tables, 0, 0, 1, 2, 7, True, sym_break=True)
    _, without, _ = run_bnb(tables, 0, 0, 1, 2, 7, True, sym_break=False)
    assert set(with_sb) <= set(without)
    keys = lambda ms: {canonical_key(tables.to_graph(m)) for m in ms}  # noqa: E731
    assert keys(with_sb) == keys(without)


def _cli_search(env_flag):
    env = dict(os.environ)
    env["KKSHADOW_NO_JIT"] = env_flag
    cmd = [sys.executable, "-m", "kkshadow.cli", "--no-timing", "search",
           "--n", "7", "--t", "2", "--k", "3", "--ell", "2", "--enumerate"]
    return subprocess.run(cmd, env=env, capture_output=True, text=True, check=True).stdout


def test_no_jit_flag_gives_identical_report():
    assert _cli_search("1") == _cli_search("0")


def test_flag_parsing():
    code = "import kkshadow._accel as a; print(a.USE_JIT, a.backend_name())"
    env = dict(os.environ, KKSHADOW_NO_JIT="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True).stdout
    assert out.split() == ["False", "numpy"]
