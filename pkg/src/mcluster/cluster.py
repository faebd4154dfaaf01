"""The m-cluster category layer.

Objects of the orbit category are named by representatives in the
fundamental domain (all modules at shifts 0..m-1 plus the projectives at
shift m).  Ext groups are orbit sums of window Hom spaces, rigidity is the
mutual vanishing of those groups for 1 <= k <= m, and maximal m-rigid
objects are the maximal cliques of the resulting compatibility relation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arquiver import ARQuiver, ARVertex, knit_module_category
from .derived import DerivedModel, DVertex, _vkey
from .errors import CliqueCapExceeded, InternalCheckError, WindowOverflow
from .quiver import Quiver, make_quiver


@dataclass(frozen=True)
class FundamentalDomain:
    m: int
    vertices: tuple[DVertex, ...]


def fundamental_domain(model: DerivedModel) -> FundamentalDomain:
    fd = model._fd
    if fd is None:
        vs = [
            DVertex(v, t)
            for v in model.ar.vertices
            for t in range(model.m)
        ]
        vs += [
            DVertex(v, model.m)
            for v in model.ar.vertices
            if v.projective_of is not None
        ]
        vs.sort(key=lambda v: (v.module.slice_index, v.module.name, v.shift))
        fd = FundamentalDomain(model.m, tuple(vs))
        model._fd = fd
    return fd


def ext_cluster(model: DerivedModel, x: DVertex, y: DVertex, k: int) -> int:
    """dim Ext^k of the orbit category between fundamental-domain objects."""
    return model.hom_orbit(x, y, k)


class CompatibilityGraph:
    """The m-rigidity relation on the fundamental domain.

    Edges are mutual vanishing of Ext^k for all 1 <= k <= m; they are
    computed between all vertex pairs, self-rigidity being a separate flag,
    so that the maximal-clique and cluster-tilting predicates stay genuinely
    different tests.
    """

    def __init__(self, model: DerivedModel):
        self.model = model
        self.m = model.m
        self.n = model.quiver.n
        self.nodes = fundamental_domain(model).vertices
        self.index = {v: i for i, v in enumerate(self.nodes)}
        ks = range(1, self.m + 1)
        self.self_rigid = tuple(
            all(ext_cluster(model, v, v, k) == 0 for k in ks) for v in self.nodes
        )
        self.adj = [0] * len(self.nodes)
        for i, x in enumerate(self.nodes):
            for j in range(i + 1, len(self.nodes)):
                y = self.nodes[j]
                if all(
                    ext_cluster(model, x, y, k) == 0
                    and ext_cluster(model, y, x, k) == 0
                    for k in ks
                ):
                    self.adj[i] |= 1 << j
                    self.adj[j] |= 1 << i

    def adjacent(self, x: DVertex, y: DVertex) -> bool:
        return bool(self.adj[self.index[x]] >> self.index[y] & 1)

    def is_clique(self, vertices) -> bool:
        idx = [self.index[v] for v in vertices]
        return all(self.self_rigid[i] for i in idx) and all(
            self.adj[i] >> j & 1 for a, i in enumerate(idx) for j in idx[a + 1:]
        )


def compatibility_graph(model: DerivedModel) -> CompatibilityGraph:
    if model._graph is None:
        model._graph = CompatibilityGraph(model)
    return model._graph


@dataclass(frozen=True)
class MRigidObject:
    summands: frozenset[DVertex]
    maximal: bool

    def sorted_summands(self) -> tuple[DVertex, ...]:
        return tuple(sorted(self.summands, key=_vkey))

    def name(self) -> str:
        return " + ".join(v.name() for v in self.sorted_summands()) or "0"


def _bron_kerbosch(adj, r, p, x, out, cap):
    """Pivoted Bron-Kerbosch over bitmask sets, lowest-bit-first for determinism."""
    if not p and not x:
        out.append(r)
        if cap is not None and len(out) > cap:
            raise CliqueCapExceeded(cap)
        return
    pool = p | x
    pivot, best = -1, -1
    u = pool
    while u:
        v = (u & -u).bit_length() - 1
        u &= u - 1
        cnt = bin(p & adj[v]).count("1")
        if cnt > best:
            best, pivot = cnt, v
    cand = p & ~adj[pivot]
    while cand:
        v = (cand & -cand).bit_length() - 1
        bit = 1 << v
        cand &= cand - 1
        _bron_kerbosch(adj, r | bit, p & adj[v], x & adj[v], out, cap)
        p &= ~bit
        x |= bit


def enumerate_maximal_m_rigid(
    g: CompatibilityGraph, max_cliques: int | None = None
) -> list[MRigidObject]:
    """All maximal m-rigid objects, as maximal cliques over the rigid nodes."""
    rigid_mask = 0
    for i, ok in enumerate(g.self_rigid):
        if ok:
            rigid_mask |= 1 << i
    masks: list[int] = []
    _bron_kerbosch(
        [g.adj[i] & rigid_mask for i in range(len(g.nodes))],
        0,
        rigid_mask,
        0,
        masks,
        max_cliques,
    )
    objs = []
    for mask in sorted(masks):
        members = frozenset(g.nodes[i] for i in _bits(mask))
        objs.append(MRigidObject(members, maximal=True))
    return objs


def _bits(mask):
    while mask:
        yield (mask & -mask).bit_length() - 1
        mask &= mask - 1


def complements(g: CompatibilityGraph, partial) -> list[DVertex]:
    """All vertices completing an almost complete m-rigid object."""
    partial = frozenset(partial)
    if len(partial) != g.n - 1:
        raise ValueError(f"expected {g.n - 1} summands, got {len(partial)}")
    if not g.is_clique(partial):
        raise ValueError("input is not m-rigid")
    out = []
    for i, v in enumerate(g.nodes):
        if v in partial or not g.self_rigid[i]:
            continue
        if all(g.adjacent(v, u) for u in partial):
            out.append(v)
    return out


def is_m_cluster_tilting(g: CompatibilityGraph, t) -> bool:
    """True when every vertex bi-orthogonal to all of t already lies in t.

    The quantifier runs over all fundamental-domain vertices, self-rigid or
    not, so this is the cluster-tilting condition and not a restatement of
    clique maximality.
    """
    t = frozenset(t)
    if not g.is_clique(t):
        raise ValueError("input is not m-rigid")
    for v in g.nodes:
        if v in t:
            continue
        if all(g.adjacent(v, u) for u in t):
            return False
    return True


def tilting_modules(ar: ARQuiver) -> list[frozenset[ARVertex]]:
    """All basic tilting modules: maximal Ext-orthogonal sets of modules.

    Enumerated as maximal cliques of the module-level rigidity relation;
    each must come out with exactly n summands.
    """
    verts = ar.vertices
    adj = [0] * len(verts)
    for i, x in enumerate(verts):
        if ar.ext(x, x) != 0:
            continue
        for j in range(i + 1, len(verts)):
            y = verts[j]
            if ar.ext(x, y) == 0 == ar.ext(y, x) and ar.ext(y, y) == 0:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    masks: list[int] = []
    full = (1 << len(verts)) - 1
    _bron_kerbosch(adj, 0, full, 0, masks, None)
    out = []
    for mask in sorted(masks):
        members = frozenset(verts[i] for i in _bits(mask))
        if len(members) != ar.n:
            raise InternalCheckError(
                f"maximal rigid module set of size {len(members)} != n"
            )
        out.append(members)
    return out


# --- slices and normalization into low degrees ----------------------------


def _tau_orbits(model: DerivedModel) -> list[list[DVertex]]:
    """Window vertices grouped by tau-orbit, each sorted along the orbit."""
    seen = {}
    orbits = []
    for v in model.vertices:
        if v in seen:
            continue
        orbit = [v]
        seen[v] = True
        cur = v
        while True:
            nxt = model.tau_inv_raw(cur)
            if not model.contains(nxt) or nxt in seen:
                break
            orbit.append(nxt)
            seen[nxt] = True
            cur = nxt
        cur = v
        while True:
            prv = model.tau_raw(cur)
            if not model.contains(prv) or prv in seen:
                break
            orbit.insert(0, prv)
            seen[prv] = True
            cur = prv
        orbits.append(orbit)
    if len(orbits) != model.quiver.n:
        raise InternalCheckError(
            f"{len(orbits)} tau-orbits in the window, expected {model.quiver.n}"
        )
    return sorted(orbits, key=lambda o: _vkey(o[0]))


def enumerate_slices(model: DerivedModel):
    """All sections of the window: one vertex per tau-orbit, neighbours
    chosen adjacent across every edge of the underlying diagram."""
    if model._slices is not None:
        return model._slices
    orbits = _tau_orbits(model)
    orbit_of = {}
    for i, o in enumerate(orbits):
        for v in o:
            orbit_of[v] = i
    n = len(orbits)
    edges = {i: set() for i in range(n)}
    for v in model.vertices:
        for w in model.out[v]:
            a, b = orbit_of[v], orbit_of[w]
            if a != b:
                edges[a].add(b)
                edges[b].add(a)

    slices = []
    order = [0]
    parent = {0: None}
    seen = {0}
    queue = [0]
    while queue:
        cur = queue.pop(0)
        for nb in sorted(edges[cur]):
            if nb not in seen:
                seen.add(nb)
                parent[nb] = cur
                order.append(nb)
                queue.append(nb)

    def extend(assign, k):
        if k == n:
            slices.append(tuple(assign[i] for i in range(n)))
            return
        o = order[k]
        par = parent[o]
        if par is None:
            cands = orbits[o]
        else:
            pv = assign[par]
            cands = [
                v
                for v in orbits[o]
                if v in model.out[pv] or pv in model.out[v]
            ]
        for v in sorted(cands, key=_vkey):
            assign[o] = v
            extend(assign, k + 1)
            del assign[o]

    extend({}, 0)
    model._slices = slices
    return slices


def slice_degree(model: DerivedModel, slice_vertices, x: DVertex) -> int | None:
    """Degree of x relative to the heart cut out by the slice.

    x lies in (mod H0)[d] exactly when some slice vertex (a projective of
    H0) has a nonzero map to x[-d]; at most one d can fire.
    """
    lo, hi = model.window
    hits = []
    for d in range(x.shift - hi, x.shift - lo + 1):
        y = DVertex(x.module, x.shift - d)
        if not model.contains(y):
            continue
        if any(model.hom(s, y) > 0 for s in slice_vertices):
            hits.append(d)
    if len(hits) > 1:
        raise InternalCheckError(f"slice degree of {x} is ambiguous: {hits}")
    return hits[0] if hits else None


@dataclass
class SliceWorld:
    """A derived-equivalent algebra H0 cut out by a slice, with its own model."""

    slice_vertices: tuple[DVertex, ...]
    quiver: Quiver
    model: DerivedModel

    def locate(self, parent: DerivedModel, x: DVertex, d: int) -> DVertex:
        """The vertex of this world matching x at slice degree d."""
        y = DVertex(x.module, x.shift - d)
        dim = tuple(parent.hom(s, y) for s in self.slice_vertices)
        try:
            return DVertex(self.model.ar.by_dim[dim], d)
        except KeyError:
            raise InternalCheckError(
                f"{x} maps to dimension vector {dim}, which is not a module "
                "over the slice algebra"
            ) from None


def build_slice_world(model: DerivedModel, slice_vertices) -> SliceWorld:
    key = tuple(sorted(slice_vertices, key=_vkey))
    cached = model._slice_worlds.get(key)
    if cached is not None:
        return cached
    reps = sorted(slice_vertices, key=_vkey)
    labels = [str(i + 1) for i in range(len(reps))]
    pos = {v: i for i, v in enumerate(reps)}
    arrows = []
    for v in reps:
        for w in model.out[v]:
            if w in pos:
                # AR arrow P(b) -> P(a) corresponds to quiver arrow a -> b
                arrows.append((labels[pos[w]], labels[pos[v]]))
    q = make_quiver(labels, arrows)
    ar = knit_module_category(q)
    world = DerivedModel(ar, model.m, model.window)
    ordered = tuple(sorted(reps, key=lambda v: labels[pos[v]]))
    sw = SliceWorld(slice_vertices=ordered, quiver=q, model=world)
    model._slice_worlds[key] = sw
    return sw


@dataclass
class NormalizedObject:
    """A maximal m-rigid object repositioned so all summands have degree
    below m, possibly over a derived-equivalent algebra."""

    slice_vertices: tuple[DVertex, ...]
    world: DerivedModel
    summands: frozenset[DVertex]
    mapping: dict[DVertex, DVertex]
    identity: bool


def normalize_to_Dminus(model: DerivedModel, t) -> NormalizedObject:
    """Find a slice (and per-summand orbit representatives) putting every
    summand of t in degrees 0..m-1, and verify maximality there.

    Summand representatives may move by powers of G: the object of the orbit
    category is unchanged, only its window representative is.
    """
    t = frozenset(t)
    m = model.m
    if all(0 <= v.shift <= m - 1 for v in t):
        identity_slice = tuple(
            sorted(
                (DVertex(p, 0) for p in model.ar.projectives.values()),
                key=_vkey,
            )
        )
        return NormalizedObject(
            slice_vertices=identity_slice,
            world=model,
            summands=t,
            mapping={v: v for v in t},
            identity=True,
        )

    for sl in enumerate_slices(model):
        mapping = {}
        for x in sorted(t, key=_vkey):
            found = None
            for gt in range(-3, 4):
                y = model.g_raw(x, gt)
                if not model.contains(y):
                    continue
                d = slice_degree(model, sl, y)
                if d is not None and 0 <= d <= m - 1:
                    found = (y, d)
                    break
            if found is None:
                break
            mapping[x] = found
        if len(mapping) != len(t):
            continue

        world = build_slice_world(model, sl)
        sw_map = {
            x: world.locate(model, y, d) for x, (y, d) in mapping.items()
        }
        new_t = frozenset(sw_map.values())
        if len(new_t) != len(t):
            raise InternalCheckError("normalization collapsed two summands")
        g = compatibility_graph(world.model)
        if not g.is_clique(new_t):
            raise InternalCheckError("normalized object is not m-rigid")
        if any(
            g.self_rigid[g.index[v]]
            and v not in new_t
            and all(g.adjacent(v, u) for u in new_t)
            for v in g.nodes
        ):
            raise InternalCheckError("normalized object is not maximal")
        return NormalizedObject(
            slice_vertices=world.slice_vertices,
            world=world.model,
            summands=new_t,
            mapping=sw_map,
            identity=False,
        )
    raise WindowOverflow(
        "no normalizing slice found in the window; enlarge it with a wider window"
    )
