import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from jaya.constraints import ConstraintSet
from jaya.core import RngStream
from jaya.errors import DimensionError, InvalidConfigError, UseJayaInsteadError
from jaya.multi import ParetoArchive, domination_counts, dominates, jaya_multi, pareto_filter
from jaya.single import EarlyStop, SolverConfig

from . import oracles


def f1(x):
    return float(np.dot(x, x))


def f2(x):
    return float(np.dot(x - 2.0, x - 2.0))


# --- dominance --------------------------------------------------------------


def test_dominates_examples():
    assert dominates((1, 1), (2, 2))
    assert not dominates((1, 3), (3, 1)) and not dominates((3, 1), (1, 3))
    assert not dominates((1, 2), (1, 2))
    assert dominates((1, 2), (1, 3))


def test_dominates_length_mismatch():
    with pytest.raises(DimensionError):
        dominates((1, 2), (1, 2, 3))


vec3 = arrays(float, 3, elements=st.integers(-3, 3).map(float))


@given(vec3, vec3)
def test_dominates_irreflexive_antisymmetric_and_matches_oracle(a, b):
    assert not dominates(a, a)
    assert not (dominates(a, b) and dominates(b, a))
    assert dominates(a, b) == oracles.dominates(a, b)


@pytest.mark.parametrize(
    "points,expected",
    [
        ([(1, 1)], [0]),
        ([(1, 3), (3, 1), (2, 2), (4, 4)], [0, 1, 2]),
        ([(0, 0), (0, 0)], [0, 1]),
        ([], []),
    ],
)
def test_pareto_filter_examples(points, expected):
    assert pareto_filter(np.array(points, dtype=float).reshape(len(points), -1) if points else []).tolist() == expected


def test_pareto_filter_example_matches_brute_force():
    pts = [(1, 3), (3, 1), (2, 2), (4, 4)]
    assert pareto_filter(pts).tolist() == oracles.brute_pareto(pts)


@given(
    st.integers(1, 60).flatmap(
        lambda n: st.integers(2, 4).flatmap(
            lambda k: arrays(float, (n, k), elements=st.integers(0, 5).map(float))
        )
    )
)
def test_pareto_filter_equals_brute_force(points):
    idx = pareto_filter(points)
    assert idx.tolist() == oracles.brute_pareto(points)
    front = points[idx]
    for i in range(len(front)):
        for j in range(len(front)):
            assert not dominates(front[i], front[j])


def test_domination_counts_against_brute_force():
    pts = RngStream(1).random((40, 3)).round(1)
    expected = [sum(oracles.dominates(q, p) for q in pts) for p in pts]
    assert domination_counts(pts).tolist() == expected


# --- archive ----------------------------------------------------------------


def _add(archive, x, f, v=None):
    x = np.asarray(x, dtype=float)
    f = np.asarray(f, dtype=float)
    archive.add(x, f, f, np.zeros(len(x)) if v is None else np.asarray(v, dtype=float))


def test_archive_keeps_only_non_dominated():
    a = ParetoArchive(1, 2)
    _add(a, [[0], [1], [2]], [[1, 3], [2, 2], [3, 3]])
    _add(a, [[3]], [[0, 5]])
    _add(a, [[4]], [[1.5, 1.5]])  # dominates (2, 2)
    assert sorted(map(tuple, a.fitness.tolist())) == [(0, 5), (1, 3), (1.5, 1.5)]


def test_archive_skips_repeated_decision_vectors():
    a = ParetoArchive(1, 2)
    _add(a, [[0], [0]], [[1, 1], [1, 1]])
    _add(a, [[0]], [[1, 1]])
    assert len(a) == 1


def test_archive_purges_infeasible_after_first_feasible():
    a = ParetoArchive(1, 2)
    _add(a, [[0], [1]], [[5, 5], [6, 4]], v=[1.0, 2.0])
    assert len(a) == 2
    _add(a, [[2]], [[9, 9]], v=[0.0])
    _add(a, [[3]], [[0, 0]], v=[0.5])  # infeasible: ignored even though it looks better
    assert a.x.ravel().tolist() == [2.0]
    assert np.all(a.violation == 0)


def test_archive_capacity_keeps_extremes():
    a = ParetoArchive(1, 2, capacity=3)
    t = np.linspace(0, 1, 11)
    _add(a, t[:, None], np.column_stack([t, 1 - t]))
    assert len(a) == 3
    f = a.fitness
    assert f[:, 0].min() == 0.0 and f[:, 1].min() == 0.0


def test_archive_rejects_bad_capacity():
    with pytest.raises(InvalidConfigError):
        ParetoArchive(1, 2, capacity=0)


# --- solver -------------------------------------------------------------------


def test_single_objective_rejected():
    with pytest.raises(UseJayaInsteadError):
        jaya_multi([f1], ([0], [1]), max_iter=3)


def test_unknown_selection_rule():
    with pytest.raises(InvalidConfigError):
        jaya_multi([f1, f2], ([0], [1]), max_iter=3, selection="crowding")


def test_two_sphere_front_shape_and_reevaluation():
    res = jaya_multi([f1, f2], ([-5] * 3, [5] * 3), max_iter=100, pop_size=30, seed=1)
    assert len(res.front) >= 10
    for e in res.front.entries:
        assert e["objectives"].tolist() == [f1(e["x"]), f2(e["x"])]
    assert res.front.x.min() > -0.5 and res.front.x.max() < 2.5
    idx = pareto_filter(res.front.objectives)
    assert idx.size == len(res.front)


def test_identical_objectives_collapse_to_one_value():
    res = jaya_multi([f1, f1], ([-5] * 2, [5] * 2), max_iter=60, pop_size=20, seed=2)
    vals = res.front.objectives[:, 0]
    assert vals.max() - vals.min() <= 1e-6


def test_linear_pair_ideal_point_reaches_origin():
    res = jaya_multi([lambda x: x[0], lambda x: x[1]], ([0, 0], [1, 1]), max_iter=100, pop_size=20, seed=3)
    assert np.all(res.ideal_point <= 0.01)


@pytest.mark.parametrize("selection", ["elite", "dominance"])
def test_archive_soundness_against_every_evaluation(selection):
    seen = []

    def g1(x):
        seen.append(np.array(x, dtype=float))
        return f1(x)

    cs = ConstraintSet([lambda x: 1.0 - x[0]])  # x0 >= 1
    res = jaya_multi([g1, f2], ([-3] * 2, [3] * 2), cs, max_iter=25, pop_size=12, seed=4, selection=selection)
    xs = np.array(seen)
    feasible = xs[xs[:, 0] >= 1.0]
    objs = np.column_stack([[f1(x) for x in feasible], [f2(x) for x in feasible]])
    assert np.all(res.front.x[:, 0] >= 1.0)
    for fo in res.front.objectives:
        assert not any(oracles.dominates(o, fo) for o in objs)


def test_senses_are_respected():
    # maximise -f1 and minimise f2 is the two-sphere problem in disguise
    cfg = SolverConfig(max_iter=30, pop_size=15, seed=5)
    a = jaya_multi([f1, f2], ([-5] * 2, [5] * 2), config=cfg)
    b = jaya_multi([lambda x: -f1(x), f2], ([-5] * 2, [5] * 2), config=cfg, senses=("maximize", "minimize"))
    assert np.array_equal(a.front.x, b.front.x)
    assert np.array_equal(a.front.objectives[:, 0], -b.front.objectives[:, 0])
    assert [h.ideal_point for h in a.history] == [h.ideal_point for h in b.history]


def test_sense_count_must_match():
    with pytest.raises(InvalidConfigError):
        jaya_multi([f1, f2], ([0], [1]), max_iter=2, senses=("minimize",))


def test_early_stop_on_ideal_point():
    cfg = SolverConfig(max_iter=500, pop_size=10, seed=6, early_stop=EarlyStop(1e-3, 4))
    res = jaya_multi([lambda x: 1.0, lambda x: 2.0], ([0], [1]), config=cfg)
    assert res.stopped_early and res.iterations_run == 5


def test_adaptive_multi_run_stays_in_range():
    cfg = SolverConfig(max_iter=40, pop_size=20, seed=7, adaptive_pop=True, min_pop=10, max_pop=30)
    res = jaya_multi([f1, f2], ([-5] * 2, [5] * 2), config=cfg)
    assert all(10 <= h.pop_size <= 30 for h in res.history)
    assert len(res.final_population) == len(res.population)


@pytest.mark.parametrize("workers", [1, 4])
def test_multi_is_deterministic(workers):
    cfg = SolverConfig(max_iter=20, pop_size=12, seed=8)
    a = jaya_multi([f1, f2], ([-5] * 2, [5] * 2), config=cfg)
    b = jaya_multi([f1, f2], ([-5] * 2, [5] * 2), config=cfg.with_(workers=workers))
    assert np.array_equal(a.front.x, b.front.x)
    assert a.history == b.history


@given(st.integers(0, 2**63), st.sampled_from(["elite", "dominance"]))
def test_ideal_point_monotone_and_front_mutually_non_dominated(seed, selection):
    res = jaya_multi([f1, f2, lambda x: float(x[0])], ([-2] * 2, [3] * 2), max_iter=8, pop_size=8, seed=seed,
                     selection=selection)
    pts = np.array([h.ideal_point for h in res.history])
    assert np.all(np.diff(pts, axis=0) <= 0)
    assert pareto_filter(res.front.objectives).size == len(res.front)
