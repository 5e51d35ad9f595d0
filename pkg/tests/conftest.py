import numpy as np
import pytest

from sparsecut import barbell, complete, erdos_renyi, path, ring_of_cliques


@pytest.fixture(scope="session")
def barbell3():
    return barbell(3)


@pytest.fixture(scope="session")
def family_graphs():
    """Connected representative of each generator family."""
    er = erdos_renyi(60, 0.1, rng_seed=7)
    assert er.connected
    return {
        "ring_of_cliques": ring_of_cliques(5, 6).graph,
        "barbell": barbell(6).graph,
        "path": path(30),
        "complete": complete(12),
        "erdos_renyi": er,
    }


def random_connected_subset(g, rng, max_size=12):
    """Grow a random induced-connected subset by frontier sampling."""
    start = int(rng.integers(g.vertex_count))
    while g.degree(start) == 0:
        start = int(rng.integers(g.vertex_count))
    members = {start}
    frontier = set(int(w) for w in g.neighbors(start))
    size = int(rng.integers(1, max_size + 1))
    while frontier and len(members) < size:
        v = sorted(frontier)[int(rng.integers(len(frontier)))]
        members.add(v)
        frontier.discard(v)
        frontier.update(int(w) for w in g.neighbors(v) if w not in members)
    return sorted(members)


def dense_walk(g, p0, steps):
    """Independent dense oracle: repeated exact steps, returning all states."""
    from sparsecut import lazy_step

    out = [np.asarray(p0, dtype=np.float64)]
    for _ in range(steps):
        out.append(lazy_step(g, out[-1]))
    return out
