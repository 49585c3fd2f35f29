import pytest
from hypothesis import given
from hypothesis import strategies as st

from gtrbench import oracles
from gtrbench.graph import ErConfig, Graph, generate_er_graph
from gtrbench.kinds import TaskKind
from gtrbench.oracles import MALFORMED, ParsedAnswer, extract_answer, judge
from gtrbench.tasks import GroundTruth, Question

from census import census_directed_exhaustive, census_random, census_undirected_exhaustive


def test_census_undirected_exhaustive():
    assert census_undirected_exhaustive(max_n=5) > 0


def test_census_directed_exhaustive():
    assert census_directed_exhaustive(max_n=4) > 0


def test_census_random_graphs():
    assert census_random(count=1000) == 7000


def test_cycle_rejects_directed_input():
    g = Graph(n=2, directed=True, edges=[(0, 1)])
    with pytest.raises(oracles.OracleError):
        oracles.solve_cycle(g)


def test_kahn_prefers_smallest_available_id():
    # after 2 is taken, 0 frees up and beats 3: lexicographically least order
    g = Graph(n=4, directed=True, edges=[(2, 0), (3, 1)])
    assert oracles.kahn_topological_order(g) == [2, 0, 3, 1]


def test_topological_checker_rejects_perturbations():
    g = Graph(n=4, directed=True, edges=[(0, 1), (1, 2), (2, 3)])
    assert oracles.check_topological_order(g, [0, 1, 2, 3])
    assert not oracles.check_topological_order(g, [1, 0, 2, 3])
    assert not oracles.check_topological_order(g, [0, 1, 2])
    assert not oracles.check_topological_order(g, [0, 1, 2, 2])
    assert not oracles.check_topological_order(g, [0, 1, 2, 4])


def test_shortest_path_witness_is_optimal_and_deterministic():
    g = Graph(
        n=4,
        directed=False,
        edges=[(0, 1), (0, 2), (1, 3), (2, 3)],
        weights={(0, 1): 1, (0, 2): 1, (1, 3): 1, (2, 3): 1},
    )
    # two optimal routes; the witness picks the smallest predecessor ids
    assert oracles.solve_shortest_path(g, 0, 3) == (2, [0, 1, 3])


def test_shortest_path_checker_accepts_any_optimum():
    g = Graph(
        n=4,
        directed=False,
        edges=[(0, 1), (0, 2), (1, 3), (2, 3)],
        weights={(0, 1): 1, (0, 2): 1, (1, 3): 1, (2, 3): 1},
    )
    assert oracles.check_shortest_path_answer(g, 0, 3, [0, 2, 3], 2)
    assert oracles.check_shortest_path_answer(g, 0, 3, [0, 1, 3], 2)
    assert not oracles.check_shortest_path_answer(g, 0, 3, [0, 3], 2)
    assert not oracles.check_shortest_path_answer(g, 0, 3, [1, 3], 2)
    assert not oracles.check_shortest_path_answer(g, 0, 3, [], 2)


def test_hamilton_checker_rejects_perturbations():
    g = Graph(n=4, directed=False, edges=[(0, 1), (1, 2), (2, 3)])
    assert oracles.check_hamilton_path(g, [0, 1, 2, 3])
    assert not oracles.check_hamilton_path(g, [1, 0, 2, 3])  # wrong start
    assert not oracles.check_hamilton_path(g, [0, 1, 2])  # short
    assert not oracles.check_hamilton_path(g, [0, 1, 1, 2])  # repeat
    assert not oracles.check_hamilton_path(g, [0, 2, 1, 3])  # missing edge


def test_max_flow_textbook_instance():
    g = Graph(
        n=4,
        directed=True,
        edges=[(0, 1), (0, 2), (1, 3), (2, 3), (1, 2)],
        weights={(0, 1): 3, (0, 2): 2, (1, 3): 2, (2, 3): 3, (1, 2): 5},
    )
    assert oracles.solve_max_flow(g, 0, 3) == 5


def test_bgm_on_small_instances():
    g = Graph(n=4, directed=True, edges=[(0, 2), (0, 3), (1, 2)], bipartite_split=(2, 2))
    assert oracles.solve_bgm(g) == 2
    lone = Graph(n=3, directed=True, edges=[(0, 2), (1, 2)], bipartite_split=(2, 1))
    assert oracles.solve_bgm(lone) == 1


# ---------------------------------------------------------------------------
# answer extraction


def test_extract_yesno():
    assert extract_answer("surely <answer>Yes</answer>", TaskKind.CONN).value is True
    assert extract_answer("<answer> no </answer>", TaskKind.CYC).value is False
    assert extract_answer("<answer>YES.</answer>", TaskKind.LP).value is True
    assert extract_answer("<answer>maybe</answer>", TaskKind.CONN).malformed


def test_extract_uses_last_span():
    raw = "<answer>No</answer> wait <answer>Yes</answer>"
    assert extract_answer(raw, TaskKind.CONN).value is True


def test_extract_without_tags_is_malformed():
    assert extract_answer("the answer is yes", TaskKind.CONN).malformed


def test_extract_path_tolerates_spaces():
    parsed = extract_answer("<answer>0 -> 2 ->3</answer>", TaskKind.SP)
    assert parsed.value == [0, 2, 3]
    assert extract_answer("<answer>0->x</answer>", TaskKind.SP).malformed


def test_extract_int():
    assert extract_answer("<answer>7</answer>", TaskKind.MF).value == 7
    assert extract_answer("<answer>7.</answer>", TaskKind.BGM).value == 7
    assert extract_answer("<answer>seven</answer>", TaskKind.MF).malformed


def test_extract_class_label():
    assert extract_answer("<answer>Class B</answer>", TaskKind.NC).value == "Class B"
    assert extract_answer("<answer>  </answer>", TaskKind.NC).malformed


def test_malformed_never_equals_anything():
    assert MALFORMED != MALFORMED
    assert MALFORMED != ParsedAnswer("yesno", True)
    assert ParsedAnswer("yesno", True) == ParsedAnswer("yesno", True)


def _question(task, graph, value, **params):
    return Question(
        id="t-0",
        task=task,
        graph=graph,
        params=params,
        ground_truth=GroundTruth(kind=task.value, value=value),
    )


def test_judge_yesno():
    g = Graph(n=2, directed=False, edges=[(0, 1)])
    q = _question(TaskKind.CONN, g, True, source=0, target=1)
    assert judge(q, extract_answer("<answer>Yes</answer>", q.task)) == 1
    assert judge(q, extract_answer("<answer>No</answer>", q.task)) == 0
    assert judge(q, MALFORMED) == 0


def test_judge_accepts_alternate_witnesses():
    g = Graph(n=4, directed=True, edges=[(0, 2), (1, 3)])
    q = _question(TaskKind.TS, g, [0, 1, 2, 3])
    assert judge(q, extract_answer("<answer>1->0->3->2</answer>", q.task)) == 1
    assert judge(q, extract_answer("<answer>2->0->1->3</answer>", q.task)) == 0


def test_judge_shortest_path_requires_optimum():
    g = Graph(
        n=3,
        directed=False,
        edges=[(0, 1), (0, 2), (1, 2)],
        weights={(0, 1): 1, (0, 2): 5, (1, 2): 1},
    )
    q = _question(TaskKind.SP, g, 2, source=0, target=2)
    assert judge(q, extract_answer("<answer>0->1->2</answer>", q.task)) == 1
    assert judge(q, extract_answer("<answer>0->2</answer>", q.task)) == 0


def test_judge_class_label_normalizes_whitespace_and_case():
    g = Graph(n=2, directed=False, edges=[(0, 1)])
    q = _question(TaskKind.NC, g, "Class A", node=0, class_names=["Class A", "Class B"])
    assert judge(q, extract_answer("<answer>class  a</answer>", q.task)) == 1
    assert judge(q, extract_answer("<answer>Class B</answer>", q.task)) == 0


@given(st.integers(0, 10**6))
def test_solver_outputs_always_pass_their_checkers(seed):
    g = generate_er_graph(ErConfig(node_range=(3, 10), seed=seed), directed=True)
    order = oracles.kahn_topological_order(g)
    if order is not None:
        assert oracles.check_topological_order(g, order)
    ug = generate_er_graph(ErConfig(node_range=(3, 10), seed=seed), weighted=True)
    got = oracles.solve_shortest_path(ug, 0, ug.n - 1)
    if got is not None:
        dist, path = got
        assert oracles.check_shortest_path_answer(ug, 0, ug.n - 1, path, dist)
    hp = oracles.solve_hamilton_path(ug)
    if hp is not None:
        assert oracles.check_hamilton_path(ug, hp)
