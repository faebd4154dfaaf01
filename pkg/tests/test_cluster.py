import pytest

from mcluster.cluster import (
    compatibility_graph,
    complements,
    enumerate_maximal_m_rigid,
    enumerate_slices,
    ext_cluster,
    fundamental_domain,
    is_m_cluster_tilting,
    normalize_to_Dminus,
    tilting_modules,
)
from mcluster.derived import DVertex
from mcluster.errors import CliqueCapExceeded
from mcluster.quiver import make_quiver, positive_roots

from oracles import naive_maximal_cliques


def V(model, dim, shift=0):
    return DVertex(model.ar.by_dim[dim], shift)


def test_fd_sizes(world):
    assert len(fundamental_domain(world("A1", 2)).vertices) == 3
    assert len(fundamental_domain(world("A2", 1)).vertices) == 5
    assert len(fundamental_domain(world("A3", 2)).vertices) == 15
    mod = world("D4", 2)
    assert len(fundamental_domain(mod).vertices) == 2 * 12 + 4
    for v in fundamental_domain(mod).vertices:
        assert 0 <= v.shift <= 2
        if v.shift == 2:
            assert v.module.projective_of is not None


@pytest.mark.parametrize("name,m", [("A1", 2), ("A2", 1), ("A2", 2), ("A3", 1), ("D4", 1)])
def test_everything_self_rigid(world, name, m):
    g = compatibility_graph(world(name, m))
    assert all(g.self_rigid)


def test_self_ext_vanishes_on_indecomposables(world):
    mod = world("A3", 2)
    for v in fundamental_domain(mod).vertices:
        for k in range(1, 3):
            assert ext_cluster(mod, v, v, k) == 0


def test_a2_pentagon(world):
    g = compatibility_graph(world("A2", 1))
    assert len(g.nodes) == 5
    degs = [bin(g.adj[i]).count("1") for i in range(5)]
    assert degs == [2] * 5  # the compatibility graph is a 5-cycle


def test_a1_m2_no_edges(world):
    g = compatibility_graph(world("A1", 2))
    assert len(g.nodes) == 3
    assert all(a == 0 for a in g.adj)
    assert all(g.self_rigid)


def test_a2_m1_example_edge(world):
    mod = world("A2", 1)
    s1, p2 = V(mod, (1, 0)), V(mod, (0, 1))
    assert ext_cluster(mod, s1, p2, 1) == 1  # S(1), P(2) do not pair


COUNTS = [
    ("A2", 1, 5),
    ("A2", 2, 12),
    ("A2", 3, 22),
    ("A3", 1, 14),
    ("A3", 2, 55),
    ("D4", 1, 50),
]


@pytest.mark.parametrize("name,m,count", COUNTS)
def test_enumeration_counts(world, name, m, count):
    g = compatibility_graph(world(name, m))
    objs = enumerate_maximal_m_rigid(g)
    assert len(objs) == count
    n = g.n
    assert all(len(o.summands) == n for o in objs)


@pytest.mark.parametrize("name,m", [("A2", 1), ("A2", 2), ("A3", 1), ("A1", 3)])
def test_enumeration_matches_naive_oracle(world, name, m):
    g = compatibility_graph(world(name, m))
    ours = {o.summands for o in enumerate_maximal_m_rigid(g)}
    naive = naive_maximal_cliques(g.nodes, g.adjacent)
    assert ours == naive


def test_clique_cap(world):
    g = compatibility_graph(world("A3", 2))
    with pytest.raises(CliqueCapExceeded):
        enumerate_maximal_m_rigid(g, max_cliques=10)


def test_complements_pentagon(world):
    mod = world("A2", 1)
    g = compatibility_graph(mod)
    for i, v in enumerate(g.nodes):
        cs = complements(g, frozenset([v]))
        assert len(cs) == 2
        assert all(g.adjacent(v, c) for c in cs)


def test_complements_empty_partial(world):
    g = compatibility_graph(world("A1", 2))
    assert len(complements(g, frozenset())) == 3


def test_complements_validates_input(world):
    mod = world("A2", 1)
    g = compatibility_graph(mod)
    with pytest.raises(ValueError):
        complements(g, frozenset([V(mod, (1, 1)), V(mod, (0, 1))]))
    with pytest.raises(ValueError):
        complements(g, frozenset([V(mod, (1, 1), 0), V(mod, (1, 1), 1)]))


@pytest.mark.parametrize("name,m", [("A2", 1), ("A2", 2), ("A3", 1), ("A3", 2)])
def test_maximal_iff_cluster_tilting(world, name, m):
    g = compatibility_graph(world(name, m))
    objs = enumerate_maximal_m_rigid(g)
    maximal = {o.summands for o in objs}
    seen = set()
    for o in objs:
        members = sorted(o.summands, key=lambda v: v.name())
        for mask in range(1 << len(members)):
            c = frozenset(members[i] for i in range(len(members)) if mask >> i & 1)
            if c in seen:
                continue
            seen.add(c)
            assert is_m_cluster_tilting(g, c) == (c in maximal)


def test_tilting_modules_counts(world):
    assert len(tilting_modules(world("A1", 1).ar)) == 1
    a2 = tilting_modules(world("A2", 1).ar)
    assert len(a2) == 2
    names = {frozenset(v.name for v in t) for t in a2}
    assert names == {frozenset({"11", "01"}), frozenset({"11", "10"})}
    assert len(tilting_modules(world("A3", 1).ar)) == 5


@pytest.mark.parametrize("m", [1, 2, 3])
def test_tilting_modules_embed_as_maximal(world, m):
    mod = world("A3", m)
    g = compatibility_graph(mod)
    maximal = {o.summands for o in enumerate_maximal_m_rigid(g)}
    for t in tilting_modules(mod.ar):
        emb = frozenset(DVertex(v, 0) for v in t)
        assert emb in maximal


@pytest.mark.parametrize("name,m", [("A2", 1), ("A2", 2), ("A3", 1), ("A3", 2)])
def test_calabi_yau_symmetry(world, name, m):
    mod = world(name, m)
    fd = fundamental_domain(mod)
    for x in fd.vertices:
        for y in fd.vertices:
            for k in range(1, m + 1):
                assert ext_cluster(mod, x, y, k) == ext_cluster(
                    mod, y, x, m + 1 - k
                )


def test_slices_of_a2(world):
    mod = world("A2", 1)
    slices = enumerate_slices(mod)
    # every slice spans one copy of an A2 module category; reasonable count
    assert slices
    for sl in slices:
        assert len(sl) == 2


def test_normalize_identity(world):
    mod = world("A2", 1)
    t = frozenset([V(mod, (1, 1)), V(mod, (0, 1))])
    norm = normalize_to_Dminus(mod, t)
    assert norm.identity and norm.world is mod and norm.summands == t


def test_normalize_reslice_case(world):
    # {S1@0, P2@1} admits a slice with both summands at degree 0
    mod = world("A2", 1)
    t = frozenset([V(mod, (1, 0), 0), V(mod, (0, 1), 1)])
    g = compatibility_graph(mod)
    assert g.is_clique(t)
    norm = normalize_to_Dminus(mod, t)
    assert not norm.identity
    assert all(v.shift == 0 for v in norm.summands)


def test_normalize_g_translate_case(world):
    # {P2@0, P1@1} needs a G-translate of one representative
    mod = world("A2", 1)
    t = frozenset([V(mod, (0, 1), 0), V(mod, (1, 1), 1)])
    g = compatibility_graph(mod)
    assert g.is_clique(t)
    norm = normalize_to_Dminus(mod, t)
    assert all(0 <= v.shift <= 0 for v in norm.summands)
    assert len(norm.summands) == 2


@pytest.mark.parametrize("name,m", [("A2", 1), ("A2", 2), ("A3", 1), ("A3", 2)])
def test_normalize_every_maximal_object(world, name, m):
    mod = world(name, m)
    g = compatibility_graph(mod)
    for o in enumerate_maximal_m_rigid(g):
        norm = normalize_to_Dminus(mod, o.summands)
        assert len(norm.summands) == len(o.summands)
        assert all(0 <= v.shift <= m - 1 for v in norm.summands)


def test_coarse_bound(world):
    for name, m in [("A2", 1), ("A3", 2)]:
        mod = world(name, m)
        g = compatibility_graph(mod)
        for o in enumerate_maximal_m_rigid(g):
            assert len(o.summands) <= (m + 1) * g.n


@pytest.mark.parametrize("name,m", [("A2", 1), ("A3", 1), ("A3", 2)])
def test_size_n_cliques_are_maximal(world, name, m):
    g = compatibility_graph(world(name, m))
    objs = enumerate_maximal_m_rigid(g)
    assert {len(o.summands) for o in objs} == {g.n}


def test_tilting_modules_every_a3_orientation():
    from mcluster.arquiver import knit_module_category

    arrows_options = [
        [("1", "2"), ("2", "3")],
        [("2", "1"), ("2", "3")],
        [("1", "2"), ("3", "2")],
        [("2", "1"), ("3", "2")],
    ]
    for arrows in arrows_options:
        q = make_quiver(["1", "2", "3"], arrows)
        ar = knit_module_category(q)
        tms = tilting_modules(ar)
        assert all(len(t) == 3 for t in tms)
        assert len(positive_roots(q)) == 6
