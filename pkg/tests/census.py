"""Brute-force agreement sweeps between packaged oracles and reference
solvers. Shared by the oracle tests and the acceptance gate."""

from gtrbench import oracles
from gtrbench.graph import ErConfig, Graph, generate_er_bipartite, generate_er_graph
from gtrbench.rng import Rng, seed_from

from oracle_refs import (
    all_directed_graphs,
    all_undirected_graphs,
    ref_connected,
    ref_has_cycle,
    ref_hamilton_path,
    ref_is_dag,
    ref_max_flow,
    ref_max_matching,
    ref_shortest_path,
    with_weights,
)


def census_undirected_exhaustive(max_n: int = 5) -> int:
    """Every undirected graph up to max_n nodes: connectivity over all pairs,
    cycle detection, shortest path over all pairs, Hamilton path existence."""
    checks = 0
    for n in range(2, max_n + 1):
        for g in all_undirected_graphs(n):
            assert oracles.solve_cycle(g) == ref_has_cycle(g), g
            wg = with_weights(g)
            for s in range(n):
                for t in range(s + 1, n):
                    assert oracles.solve_connectivity(g, s, t) == ref_connected(g, s, t), (g, s, t)
                    expected = ref_shortest_path(wg, s, t)
                    got = oracles.solve_shortest_path(wg, s, t)
                    if expected is None:
                        assert got is None, (wg, s, t)
                    else:
                        dist, path = got
                        assert dist == expected, (wg, s, t)
                        assert oracles.check_shortest_path_answer(wg, s, t, path, expected), (wg, s, t)
                    checks += 2
            ref_path = ref_hamilton_path(g)
            got_path = oracles.solve_hamilton_path(g)
            assert (got_path is not None) == (ref_path is not None), g
            if got_path is not None:
                assert oracles.check_hamilton_path(g, got_path), g
            checks += 2
    return checks


def census_directed_exhaustive(max_n: int = 4) -> int:
    """Every directed graph up to max_n nodes: DAG detection, topological
    order validity, max flow against minimum cuts."""
    checks = 0
    for n in range(2, max_n + 1):
        for g in all_directed_graphs(n):
            dag = ref_is_dag(g)
            assert oracles.is_dag(g) == dag, g
            order = oracles.kahn_topological_order(g)
            assert (order is not None) == dag, g
            if order is not None:
                assert oracles.check_topological_order(g, order), g
            wg = with_weights(g)
            assert oracles.solve_max_flow(wg, 0, n - 1) == ref_max_flow(wg, 0, n - 1), wg
            checks += 3
    return checks


def census_random(count: int = 1000, seed: int = 2024) -> int:
    """Random graphs on 6 to 8 nodes, all oracles against all references."""
    checks = 0
    for i in range(count):
        cfg = ErConfig(node_range=(6, 8), seed=seed_from("census", seed, i))
        rng = Rng(seed_from("census-pick", seed, i))
        g = generate_er_graph(cfg)
        wg = with_weights(g)
        dg = generate_er_graph(cfg.with_seed(seed_from("census-dir", seed, i)), directed=True)
        dwg = with_weights(dg)
        bg = generate_er_bipartite(cfg.with_seed(seed_from("census-bip", seed, i)))

        s = rng.randint(0, g.n - 1)
        t = rng.randint(0, g.n - 1)
        assert oracles.solve_connectivity(g, s, t) == ref_connected(g, s, t), (g, s, t)
        assert oracles.solve_cycle(g) == ref_has_cycle(g), g
        expected = ref_shortest_path(wg, s, t)
        got = oracles.solve_shortest_path(wg, s, t)
        if s == t:
            assert got == (0, [s]), (wg, s)
        elif expected is None:
            assert got is None, (wg, s, t)
        else:
            assert got[0] == expected, (wg, s, t)
            assert oracles.check_shortest_path_answer(wg, s, t, got[1], expected), (wg, s, t)

        assert oracles.is_dag(dg) == ref_is_dag(dg), dg
        order = oracles.kahn_topological_order(dg)
        if order is not None:
            assert oracles.check_topological_order(dg, order), dg
        assert oracles.solve_max_flow(dwg, 0, dg.n - 1) == ref_max_flow(dwg, 0, dg.n - 1), dwg

        assert oracles.solve_bgm(bg) == ref_max_matching(bg), bg

        path = oracles.solve_hamilton_path(g)
        ref_path = ref_hamilton_path(g)
        assert (path is not None) == (ref_path is not None), g
        if path is not None:
            assert oracles.check_hamilton_path(g, path), g
        checks += 7
    return checks
