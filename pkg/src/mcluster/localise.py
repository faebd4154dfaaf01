"""Localisation of the derived category at a rigid indecomposable summand.

Killing all shifts of a rigid indecomposable M leaves a category equivalent
to the derived category of a hereditary algebra H' with one fewer simple.
We model it through the perpendicular subcategory D0 (objects with no maps
from any shift of M): the image of an arbitrary object is pinned down by
its Hom fingerprint against D0, which is solvable by forward substitution
because the window category is directed with one-dimensional endomorphism
rings.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .arquiver import ARVertex, knit_module_category
from .cluster import compatibility_graph
from .derived import DerivedModel, DObject, DVertex, _vkey
from .errors import InternalCheckError, WindowOverflow
from .meshcat import ApproxTriangle, minimal_right_approximation
from .quiver import Quiver, make_quiver


@dataclass
class PerpendicularData:
    """The perpendicular world of a rigid indecomposable M = X[k]."""

    M: DVertex
    base_module: ARVertex
    model: DerivedModel
    U_members: tuple[ARVertex, ...]
    projectives_of_U: tuple[ARVertex, ...]
    H_prime: Quiver
    prime_model: DerivedModel
    module_map: dict[ARVertex, ARVertex]  # U member -> H' module vertex
    d0_order: tuple[DVertex, ...] = field(default=())

    def in_D0_module(self, v: ARVertex) -> bool:
        return v in self.module_map

    def to_prime(self, v: DVertex) -> DVertex:
        """H'-coordinates of a D0 window vertex U[i]."""
        return DVertex(self.module_map[v.module], v.shift)


def is_in_D0(model: DerivedModel, u: DVertex, M: DVertex) -> bool:
    """No map from any shift of M reaches u."""
    lo, hi = model.window
    for i in range(lo, hi + 1):
        s = DVertex(M.module, i)
        if model.hom(s, u) != 0:
            return False
    return True


def perpendicular_algebra(model: DerivedModel, M: DVertex) -> PerpendicularData:
    """Compute U_M, its projectives, the algebra H' and a fresh H' model.

    H' is the Gabriel quiver of the endomorphism algebra of the sum of the
    projectives of U_M: arrows are counted by rad/rad^2 of the Hom spaces
    among them, composed in the mesh category.
    """
    base = M.module
    cached = model._perp_cache.get(base)
    if cached is not None:
        # the heavy payload only depends on the base module; carry the
        # caller's M so shift-relative operations read correctly
        return cached if cached.M == M else replace(cached, M=M)
    ar = model.ar
    if ar.ext(base, base) != 0:
        raise ValueError(f"{M} is not rigid")
    members = tuple(
        u for u in ar.vertices if ar.hom(base, u) == 0 and ar.ext(base, u) == 0
    )
    projs = tuple(
        p for p in members if all(ar.ext(p, u) == 0 for u in members)
    )
    if len(projs) != ar.n - 1:
        raise InternalCheckError(
            f"{len(projs)} perpendicular projectives, expected {ar.n - 1}"
        )

    mesh = model.mesh_category()
    reps = sorted((DVertex(p, 0) for p in projs), key=_vkey)
    labels = [str(i + 1) for i in range(len(reps))]
    arrows = []
    for a, pa in enumerate(reps):
        for b, pb in enumerate(reps):
            if a == b:
                continue
            full = model.hom(pb, pa)
            if full == 0:
                continue
            through = [r for r in reps if r not in (pa, pb)]
            radsq = mesh.factoring_dim(pb, pa, through)
            count = full - radsq
            if count < 0:
                raise InternalCheckError("negative arrow count in H'")
            # quiver arrow a -> b matches the AR arrow P(b) -> P(a)
            for _ in range(count):
                arrows.append((labels[a], labels[b]))
    q = Quiver((), ()) if not projs else make_quiver(labels, arrows, connected=False)
    prime_ar = knit_module_category(q)
    prime_model = DerivedModel(prime_ar, model.m, model.window)

    module_map = {}
    for u in members:
        dim = tuple(ar.hom(p, u) for p in projs)
        try:
            module_map[u] = prime_ar.by_dim[dim]
        except KeyError:
            raise InternalCheckError(
                f"perpendicular module {u} has no H' counterpart (dim {dim})"
            ) from None
    if len(set(module_map.values())) != len(members) or len(members) != len(
        prime_ar.vertices
    ):
        raise InternalCheckError("U_M does not match mod H'")

    lo, hi = model.window
    d0 = sorted(
        (
            DVertex(u, i)
            for u in members
            for i in range(lo, hi + 1)
        ),
        key=lambda v: (v.shift, v.module.slice_index, v.module.name),
    )
    pd = PerpendicularData(
        M=M,
        base_module=base,
        model=model,
        U_members=members,
        projectives_of_U=projs,
        H_prime=q,
        prime_model=prime_model,
        module_map=module_map,
        d0_order=tuple(d0),
    )
    model._perp_cache[base] = pd
    return pd


def project_to_D0(model: DerivedModel, w: DObject | DVertex, pd: PerpendicularData) -> DObject:
    """The image of w in D0, solved from its Hom fingerprint.

    The unknown multiplicities of D0 window vertices satisfy a unitriangular
    integer system against hom(-, U) for U running over D0 (directedness
    gives the triangle, bricks the unit diagonal), so a forward substitution
    in the (degree, slice) order solves it exactly.
    """
    if isinstance(w, DVertex):
        w = DObject.of([w])
    lo, hi = model.window
    if w.summands and max(v.shift for v, _ in w.summands) + 1 > hi:
        # the image can only live in the degrees of w and one above, so this
        # is the exact condition for the window to see all of its support
        raise WindowOverflow(
            f"projection of {w.name()} may exceed the window {model.window}"
        )
    coeffs: dict[DVertex, int] = {}
    for u in pd.d0_order:
        b = model.hom_objects(w, DObject.of([u]))
        acc = 0
        for v, c in coeffs.items():
            if c:
                acc += c * model.hom(v, u)
        c_u = b - acc
        if c_u < 0:
            raise WindowOverflow(
                f"fingerprint solve went negative at {u}; enlarge the window"
            )
        if c_u:
            coeffs[u] = c_u
    return DObject(tuple(sorted(coeffs.items(), key=lambda it: _vkey(it[0]))))


def approximation_triangle(
    model: DerivedModel, x: DVertex, pd: PerpendicularData
) -> ApproxTriangle:
    """Minimal right approximation of x by shifts of M, with its cone in D0."""
    m = model.m
    cls = [DVertex(pd.base_module, j) for j in range(0, m + 1)]
    mesh = model.mesh_category()
    tri = minimal_right_approximation(mesh, x, cls)
    tri.cone = project_to_D0(model, x, pd)
    for v, _ in tri.cone.summands:
        if not pd.in_D0_module(v.module):
            raise InternalCheckError(f"cone summand {v} is not in D0")
    lo, hi = model.window
    for c, mult in tri.approx_source.summands:
        if not mult:
            continue
        for t in range(1, hi - c.shift + 1):
            if model.hom(x, DVertex(c.module, c.shift + t)) != 0:
                raise InternalCheckError(
                    f"Hom(x, approximation source[{t}]) is nonzero"
                )
    return tri


def find_left_replacements(
    model: DerivedModel, y: DVertex, pd: PerpendicularData, i: int
) -> list[DVertex]:
    """All window vertices x outside D0 with the same image as y and the
    vanishing pattern Hom(x, M[*]) = 0, Hom(M, x[*]) = 0 except at 1-i."""
    if model.hom(y, DVertex(pd.base_module, pd.M.shift + i)) == 0:
        raise ValueError(f"Hom(y, M[{i}]) vanishes; nothing to replace")
    lo, hi = model.window
    margin = 2
    target = project_to_D0(model, y, pd)
    out = []
    for x in model.vertices:
        if not (lo + margin <= x.shift <= hi - margin):
            continue
        if pd.in_D0_module(x.module):
            continue
        if any(
            model.hom(x, DVertex(pd.base_module, s)) != 0 for s in range(lo, hi + 1)
        ):
            continue
        bad = False
        for t in range(lo - x.shift, hi - x.shift + 1):
            if t == 1 - i:
                continue
            if model.hom(DVertex(pd.base_module, pd.M.shift), DVertex(x.module, x.shift + t)) != 0:
                bad = True
                break
        if bad:
            continue
        if project_to_D0(model, x, pd) == target:
            out.append(x)
    if not out:
        raise WindowOverflow(
            "no replacement found in the window; enlarge it and retry"
        )
    return out


def find_left_replacement(
    model: DerivedModel, y: DVertex, pd: PerpendicularData, i: int
) -> DVertex:
    return find_left_replacements(model, y, pd, i)[0]


@dataclass
class LocalisedObject:
    pd: PerpendicularData
    images: tuple[DVertex, ...]        # in the parent window, inside D0
    prime_summands: frozenset[DVertex]  # in the H' model


def localise_object(model: DerivedModel, t, M: DVertex) -> LocalisedObject:
    """Image of a maximal m-rigid object under localisation at its summand M.

    Requires deg(M) <= m-1 (normalize first).  Verifies every postcondition:
    images are indecomposable, pairwise distinct, land in the fundamental
    domain of H', and form a maximal m-rigid object there, checked against
    the independently knitted compatibility graph of H'.
    """
    t = frozenset(t)
    if M not in t:
        raise ValueError("M must be a summand of t")
    if not 0 <= M.shift <= model.m - 1:
        raise ValueError("deg(M) must lie in [0, m-1]; normalize first")
    pd = perpendicular_algebra(model, M)
    images = []
    for x in sorted(t - {M}, key=_vkey):
        img = project_to_D0(model, x, pd)
        if img.total() != 1:
            raise InternalCheckError(f"image of {x} is not indecomposable: {img}")
        images.append(img.summands[0][0])
    if len(set(images)) != len(images):
        raise InternalCheckError("two summands collapsed under localisation")

    m = model.m
    prime = []
    for v in images:
        if not (0 <= v.shift <= m):
            raise InternalCheckError(f"image {v} outside the H' domain")
        if v.shift == m and v.module not in pd.projectives_of_U:
            raise InternalCheckError(
                f"image {v} at degree m is not projective in U_M"
            )
        prime.append(pd.to_prime(v))
    prime_set = frozenset(prime)

    if pd.H_prime.n == 0:
        if prime_set:
            raise InternalCheckError("nonempty image over the zero algebra")
    else:
        g = compatibility_graph(pd.prime_model)
        if not g.is_clique(prime_set):
            raise InternalCheckError("localised object is not m-rigid over H'")
        if any(
            g.self_rigid[g.index[v]]
            and v not in prime_set
            and all(g.adjacent(v, u) for u in prime_set)
            for v in g.nodes
        ):
            raise InternalCheckError("localised object is not maximal over H'")
    return LocalisedObject(pd=pd, images=tuple(images), prime_summands=prime_set)
