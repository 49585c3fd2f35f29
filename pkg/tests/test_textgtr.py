import pytest

from gtrbench.graph import ErConfig, Graph, generate_er_bipartite, generate_er_graph
from gtrbench.kinds import GtrId, TaskKind
from gtrbench.rng import seed_from
from gtrbench.tasks import GroundTruth, Question
from gtrbench.textgtr import ParseError, parse, serialize

PLAIN_GRAPH = Graph(n=4, directed=False, edges=[(0, 1), (1, 2), (2, 3)])
DAG = Graph(n=3, directed=True, edges=[(0, 1), (0, 2), (1, 2)])
SP_GRAPH = Graph(
    n=3, directed=False, edges=[(0, 1), (1, 2)], weights={(0, 1): 4, (1, 2): 7}
)
MF_GRAPH = Graph(
    n=3, directed=True, edges=[(0, 1), (1, 2)], weights={(0, 1): 3, (1, 2): 5}
)
BGM_GRAPH = Graph(
    n=4, directed=True, edges=[(0, 2), (0, 3), (1, 2)], bipartite_split=(2, 2)
)


def _q(task, graph, **params):
    return Question(id="x-0", task=task, graph=graph, params=params, ground_truth=GroundTruth("checker"))


def test_edge_set_plain_frozen():
    body = serialize(GtrId.TSET, _q(TaskKind.CONN, PLAIN_GRAPH, source=0, target=3)).body
    assert body == (
        "In an undirected graph, (i,j) means that node i and node j are connected "
        "with an undirected edge. The nodes are numbered from 0 to 3, and the edges are:\n"
        "(0, 1) , (1, 2) , (2, 3)"
    )


def test_adjacency_list_plain_frozen():
    body = serialize(GtrId.TLIST, _q(TaskKind.CYC, PLAIN_GRAPH)).body
    assert body == (
        "In an undirected graph, (i,j) means that node i and node j are connected "
        "with an undirected edge. The nodes are numbered from 0 to 3, and the edges "
        "are presented in an adjacent list format:\n"
        "0 <-> 1\n"
        "1 <-> 0, 2\n"
        "2 <-> 1, 3\n"
        "3 <-> 2"
    )


def test_adjacency_matrix_plain_frozen():
    body = serialize(GtrId.TMAT, _q(TaskKind.HP, PLAIN_GRAPH)).body
    assert body == (
        "In an undirected graph, (i,j) means that node i and node j are connected "
        "with an undirected edge. The nodes are numbered from 0 to 3, and the edges "
        "are represented in an adjacent matrix format:\n"
        "node0 1 2 3\n"
        "node0 0 1 0 0\n"
        "node1 1 0 1 0\n"
        "node2 0 1 0 1\n"
        "node3 0 0 1 0"
    )


def test_edge_set_precedence_frozen():
    body = serialize(GtrId.TSET, _q(TaskKind.TS, DAG)).body
    assert body == (
        "In a directed graph with 3 nodes numbered from 0 to 2:\n"
        "node 0 should be visited before node 1\n"
        "node 0 should be visited before node 2\n"
        "node 1 should be visited before node 2"
    )


def test_adjacency_list_precedence_groups_targets():
    body = serialize(GtrId.TLIST, _q(TaskKind.TS, DAG)).body
    assert body == (
        "In a directed graph with 3 nodes numbered from 0 to 2:\n"
        "node 0 should be visited before node 1, 2\n"
        "node 1 should be visited before node 2"
    )


def test_edge_set_weighted_frozen():
    body = serialize(GtrId.TSET, _q(TaskKind.SP, SP_GRAPH, source=0, target=2)).body
    assert body == (
        "In an undirected graph, the nodes are numbered from 0 to 2, and the edges are:\n"
        "an edge between node 0 and node 1 with weight 4,\n"
        "an edge between node 1 and node 2 with weight 7"
    )


def test_adjacency_list_weighted_frozen():
    body = serialize(GtrId.TLIST, _q(TaskKind.SP, SP_GRAPH, source=0, target=2)).body
    assert body == (
        "In an undirected graph, the nodes are numbered from 0 to 2, and the edges "
        "are presented in an adjacent list format:\n"
        "node 0 is connected to: node 1 with distance: 4\n"
        "node 1 is connected to: node 0 with distance: 4, node 2 with distance: 7\n"
        "node 2 is connected to: node 1 with distance: 7"
    )


def test_edge_set_capacity_frozen():
    body = serialize(GtrId.TSET, _q(TaskKind.MF, MF_GRAPH, source=0, target=2)).body
    assert body == (
        "In a directed graph, the nodes are numbered from 0 to 2, and the edges are:\n"
        "an edge from node 0 to node 1 with capacity 3,\n"
        "an edge from node 1 to node 2 with capacity 5"
    )


def test_matrix_weighted_frozen():
    body = serialize(GtrId.TMAT, _q(TaskKind.SP, SP_GRAPH, source=0, target=2)).body
    assert body == (
        "In an undirected graph, the nodes are numbered from 0 to 2, and the edges "
        "are represented in an adjacent matrix format with weights:\n"
        "node0 1 2\n"
        "node0 0 4 0\n"
        "node1 4 0 7\n"
        "node2 0 7 0"
    )


def test_matching_bodies_frozen():
    q = _q(TaskKind.BGM, BGM_GRAPH)
    intro = (
        "There are 2 hosts numbered from 0 to 1, and 2 tasks numbered from 2 to 3. "
        "Each host has a set of tasks that it is interested in"
    )
    assert serialize(GtrId.TSET, q).body == (
        intro + ":\n"
        "Host 0 is interested in task 2.\n"
        "Host 0 is interested in task 3.\n"
        "Host 1 is interested in task 2."
    )
    assert serialize(GtrId.TLIST, q).body == (
        intro + ":\n"
        "Host 0 is interested in tasks 2, 3.\n"
        "Host 1 is interested in tasks 2."
    )
    assert serialize(GtrId.TMAT, q).body == (
        intro + ", represented in an adjacent matrix format:\n"
        "Task0 1\n"
        "Host0 1 1\n"
        "Host1 1 0"
    )


def test_attribute_block_rendered_and_stripped():
    g = Graph(n=3, directed=False, edges=[(0, 1), (1, 2)])
    q = _q(
        TaskKind.NC,
        g,
        node=2,
        class_names=["Class A", "Class B"],
        known_labels={0: "Class A", 1: "Class B"},
    )
    body = serialize(GtrId.TSET, q).body
    assert body.endswith(
        "The node attributes are:\n"
        "Node 0, Attribute Class A\n"
        "Node 1, Attribute Class B"
    )
    assert parse(GtrId.TSET, body, TaskKind.NC) == g


# ---------------------------------------------------------------------------
# round trips


_TASK_FOR = {
    "plain": TaskKind.CONN,
    "dag": TaskKind.TS,
    "weighted": TaskKind.SP,
    "capacity": TaskKind.MF,
    "matching": TaskKind.BGM,
}


def _random_graph(kind: str, seed: int) -> Graph:
    cfg = ErConfig(seed=seed)
    if kind == "plain":
        return generate_er_graph(cfg)
    if kind == "dag":
        return generate_er_graph(cfg, directed=True)
    if kind == "weighted":
        return generate_er_graph(cfg, weighted=True)
    if kind == "capacity":
        return generate_er_graph(cfg, directed=True, weighted=True)
    return generate_er_bipartite(cfg)


@pytest.mark.parametrize("kind", sorted(_TASK_FOR))
@pytest.mark.parametrize("gtr", [GtrId.TSET, GtrId.TLIST, GtrId.TMAT])
def test_parse_inverts_serialize(kind, gtr):
    task = _TASK_FOR[kind]
    for i in range(200):
        g = _random_graph(kind, seed_from("round-trip", kind, i))
        q = _q(task, g, source=0, target=g.n - 1)
        body = serialize(gtr, q).body
        back = parse(gtr, body, task)
        assert back.n == g.n, i
        assert back.directed == g.directed, i
        assert back.edges == g.edges, i
        assert back.weights == g.weights, i


def test_sparse_graphs_make_matrices_longer():
    # quadratic matrix body vs linear edge list on sparse inputs
    cfg = ErConfig(node_range=(10, 30), edge_probability_range=(0.1, 0.3))
    for i in range(200):
        g = generate_er_graph(cfg.with_seed(seed_from("sparsity", i)))
        q = _q(TaskKind.CONN, g, source=0, target=g.n - 1)
        assert len(serialize(GtrId.TMAT, q).body) > len(serialize(GtrId.TSET, q).body), i


# ---------------------------------------------------------------------------
# parse errors


def test_parse_error_reports_line():
    body = (
        "In a directed graph with 3 nodes numbered from 0 to 2:\n"
        "node 0 should be visited before node 1\n"
        "node one should be visited before node 2"
    )
    with pytest.raises(ParseError) as err:
        parse(GtrId.TSET, body, TaskKind.TS)
    assert err.value.line == 3
    assert "line 3" in str(err.value)


def test_parse_error_on_bad_preamble():
    with pytest.raises(ParseError) as err:
        parse(GtrId.TSET, "In a strange graph:\n(0, 1)", TaskKind.CONN)
    assert err.value.line == 1


def test_parse_error_on_bad_pair_reports_column():
    body = (
        "In an undirected graph, (i,j) means that node i and node j are connected "
        "with an undirected edge. The nodes are numbered from 0 to 2, and the edges are:\n"
        "(0, 1) , (1 2)"
    )
    with pytest.raises(ParseError) as err:
        parse(GtrId.TSET, body, TaskKind.CONN)
    assert err.value.line == 2
    assert err.value.col == 10


def test_parse_rejects_node_out_of_range():
    body = (
        "In an undirected graph, (i,j) means that node i and node j are connected "
        "with an undirected edge. The nodes are numbered from 0 to 2, and the edges are:\n"
        "(0, 7)"
    )
    with pytest.raises(ParseError):
        parse(GtrId.TSET, body, TaskKind.CONN)


def test_parse_rejects_asymmetric_undirected_matrix():
    body = (
        "In an undirected graph, (i,j) means that node i and node j are connected "
        "with an undirected edge. The nodes are numbered from 0 to 1, and the edges "
        "are represented in an adjacent matrix format:\n"
        "node0 1\n"
        "node0 0 1\n"
        "node1 0 0"
    )
    with pytest.raises(ParseError):
        parse(GtrId.TMAT, body, TaskKind.CONN)


def test_parse_rejects_nonbinary_unweighted_matrix():
    body = (
        "In an undirected graph, (i,j) means that node i and node j are connected "
        "with an undirected edge. The nodes are numbered from 0 to 1, and the edges "
        "are represented in an adjacent matrix format:\n"
        "node0 1\n"
        "node0 0 2\n"
        "node1 2 0"
    )
    with pytest.raises(ParseError):
        parse(GtrId.TMAT, body, TaskKind.CONN)


def test_parse_rejects_nonzero_diagonal():
    body = (
        "In an undirected graph, (i,j) means that node i and node j are connected "
        "with an undirected edge. The nodes are numbered from 0 to 1, and the edges "
        "are represented in an adjacent matrix format:\n"
        "node0 1\n"
        "node0 1 0\n"
        "node1 0 1"
    )
    with pytest.raises(ParseError):
        parse(GtrId.TMAT, body, TaskKind.CONN)


def test_parse_rejects_wrong_adjacency_row_owner():
    body = (
        "In an undirected graph, (i,j) means that node i and node j are connected "
        "with an undirected edge. The nodes are numbered from 0 to 1, and the edges "
        "are presented in an adjacent list format:\n"
        "0 <-> 1\n"
        "5 <-> 0"
    )
    with pytest.raises(ParseError) as err:
        parse(GtrId.TLIST, body, TaskKind.CONN)
    assert err.value.line == 3


def test_parse_enforces_weighted_set_commas():
    body = (
        "In an undirected graph, the nodes are numbered from 0 to 2, and the edges are:\n"
        "an edge between node 0 and node 1 with weight 4\n"
        "an edge between node 1 and node 2 with weight 7"
    )
    with pytest.raises(ParseError) as err:
        parse(GtrId.TSET, body, TaskKind.SP)
    assert err.value.line == 2


def test_parse_rejects_duplicate_edges():
    body = (
        "In an undirected graph, (i,j) means that node i and node j are connected "
        "with an undirected edge. The nodes are numbered from 0 to 2, and the edges are:\n"
        "(0, 1) , (1, 0)"
    )
    with pytest.raises(ParseError):
        parse(GtrId.TSET, body, TaskKind.CONN)
