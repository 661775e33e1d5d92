import itertools

import pytest

import mstc


def triangle():
    return mstc.Instance(3, [(1, 2, 1.0), (2, 3, 2.0), (1, 3, 3.0)], [(1, 2)])


def brute_force(inst):
    best = None
    for tree in itertools.combinations(range(1, inst.m + 1), inst.n - 1):
        if mstc.check_solution(inst, list(tree))["feasible"]:
            w = sum(inst.edges[e - 1][2] for e in tree)
            best = w if best is None else min(best, w)
    return best


def test_instance_roundtrip():
    inst = triangle()
    assert inst.n == 3 and inst.m == 3 and inst.num_conflicts == 1
    assert mstc.from_native(inst.to_native()) == inst


def test_solve_triangle():
    res = mstc.solve(triangle())
    assert res["status"] == "feasible"
    assert res["best"]["weight"] == 4.0
    assert sorted(res["best"]["edges"]) == [1, 3]


def test_bad_input_raises():
    with pytest.raises(mstc.InputError):
        mstc.from_native("3 2 0\n1 2 1\n2 2 1\n")


@pytest.mark.parametrize("seed", range(1, 9))
def test_solve_matches_brute_force(seed):
    inst = mstc.generate(nodes=6, edges=11, conflict_rate=0.1, seed=seed)
    params = mstc.default_params()
    params.global_time_limit = 20
    res = mstc.solve(inst, params)
    expected = brute_force(inst)
    if expected is None:
        assert res["status"] != "feasible"
    else:
        assert res["best"]["weight"] >= expected
        assert mstc.check_solution(inst, res["best"]["edges"])["feasible"]


def test_trace_callback_and_lp():
    inst = mstc.generate(nodes=10, edges=25, conflict_rate=0.05, seed=4, plant_tree=True)
    records = []
    res = mstc.solve(inst, trace=records.append)
    assert res["status"] == "feasible"
    assert all("ub" in r for r in records)
    lp = mstc.solve_lp(inst)
    assert lp["objective"] <= res["best"]["weight"] + 1e-6
