"""Endomorphism algebras of maximal m-rigid objects.

A Hom space of the orbit category between domain objects splits into two
window pieces, Hom(a, b) and Hom(a, Gb), and composition twists the second
leg by G.  The Gabriel quiver comes from rad/rad^2 computed on explicit
mesh bases, and the factor theorem compares the quotient by maps through a
chosen summand with the endomorphism data of the localised object.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cluster import MRigidObject
from .derived import DerivedModel, DObject, DVertex, _vkey
from .errors import InternalCheckError
from .linalg import SpanBuilder
from .localise import perpendicular_algebra, project_to_D0


@dataclass
class EndoAlgebraData:
    summands: tuple[DVertex, ...]
    hom_dims: tuple[tuple[int, ...], ...]
    rad_sq_dims: tuple[tuple[int, ...], ...]
    arrows: tuple[tuple[int, ...], ...]
    total_dim: int


class _OrbitHom:
    """Two-component Hom spaces of the orbit category over one model."""

    def __init__(self, model: DerivedModel):
        self.model = model
        self.mesh = model.mesh_category()

    def dims(self, a: DVertex, b: DVertex) -> tuple[int, int]:
        gb = self.model.g(b)
        return (self.model.hom(a, b), self.model.hom(a, gb))

    def basis(self, a: DVertex, b: DVertex):
        """Elements of Hom_C(a, b) as (component, vector) pairs."""
        gb = self.model.g(b)
        out = [(0, v) for v in self.mesh.space(a, b).basis_elements()]
        out += [(1, v) for v in self.mesh.space(a, gb).basis_elements()]
        return out

    def compose(self, a, b, c, f, g):
        """Compose f: a -> b with g: b -> c in the orbit category.

        Components multiply as (g0 f0, g1 f0 + G(g0) f1); the would-be
        G^2 component of f1 against g1 lives in a vanishing Hom space.
        """
        t_f, vf = f
        t_g, vg = g
        gb, gc = self.model.g(b), self.model.g(c)
        if t_f == 0 and t_g == 0:
            return [(0, self.mesh.compose(a, b, c, vf, vg))]
        if t_f == 0 and t_g == 1:
            return [(1, self.mesh.compose(a, b, gc, vf, vg))]
        if t_f == 1 and t_g == 0:
            tw = self.mesh.g_twist(b, c, vg)
            return [(1, self.mesh.compose(a, gb, gc, vf, tw))]
        if self.model.hom(a, self.model.g_raw(c, 2)) != 0:
            raise InternalCheckError("nonzero G^2 component in a composition")
        return []

    def flatten(self, a, c, parts):
        """Concatenate the two component coordinates into one vector."""
        gc = self.model.g(c)
        s0 = self.mesh.space(a, c)
        s1 = self.mesh.space(a, gc)
        vec = [0] * (len(s0.paths) + len(s1.paths))
        for t, v in parts:
            off = 0 if t == 0 else len(s0.paths)
            for i, x in enumerate(v):
                vec[off + i] += x
        return vec

    def width(self, a, c):
        gc = self.model.g(c)
        return len(self.mesh.space(a, c).paths) + len(self.mesh.space(a, gc).paths)


def _summand_order(t) -> tuple[DVertex, ...]:
    if isinstance(t, MRigidObject):
        t = t.summands
    return tuple(sorted(t, key=_vkey))


def _rad_sq(oh: _OrbitHom, summands, a, b, extra_through=()) -> SpanBuilder:
    """Span of two-step radical compositions a -> c -> b inside add(t)."""
    sb = SpanBuilder(oh.width(a, b))
    mids = [c for c in summands if c != a and c != b] + list(extra_through)
    for c in mids:
        for f in oh.basis(a, c):
            for g in oh.basis(c, b):
                sb.add(oh.flatten(a, b, oh.compose(a, c, b, f, g)))
    return sb


def endo_dims(model: DerivedModel, t) -> EndoAlgebraData:
    """Hom matrix, rad^2 matrix and Gabriel arrow counts of End(t)."""
    order = _summand_order(t)
    oh = _OrbitHom(model)
    n = len(order)
    hom = [[0] * n for _ in range(n)]
    radsq = [[0] * n for _ in range(n)]
    arrows = [[0] * n for _ in range(n)]
    for i, a in enumerate(order):
        for j, b in enumerate(order):
            d0, d1 = oh.dims(a, b)
            hom[i][j] = d0 + d1
            if i == j:
                if hom[i][j] != 1:
                    raise InternalCheckError(
                        f"End({a}) has dimension {hom[i][j]}, expected 1"
                    )
                sb = _rad_sq(oh, order, a, b)
                if sb.rank:
                    raise InternalCheckError("nonzero radical square on the diagonal")
                continue
            sb = _rad_sq(oh, order, a, b)
            radsq[i][j] = sb.rank
            arrows[i][j] = hom[i][j] - radsq[i][j]
            if arrows[i][j] < 0:
                raise InternalCheckError("negative arrow count")
    return EndoAlgebraData(
        summands=order,
        hom_dims=tuple(tuple(r) for r in hom),
        rad_sq_dims=tuple(tuple(r) for r in radsq),
        arrows=tuple(tuple(r) for r in arrows),
        total_dim=sum(sum(r) for r in hom),
    )


def _through_span(oh: _OrbitHom, a, b, M) -> SpanBuilder:
    """Span in Hom_C(a, b) of maps factoring through the class of M."""
    sb = SpanBuilder(oh.width(a, b))
    for f in oh.basis(a, M):
        for g in oh.basis(M, b):
            sb.add(oh.flatten(a, b, oh.compose(a, M, b, f, g)))
    return sb


def factor_dims(model: DerivedModel, t, M: DVertex):
    """Dimension matrix of End(t)/(maps through add M), over summands != M."""
    order = [v for v in _summand_order(t) if v != M]
    oh = _OrbitHom(model)
    out = []
    for a in order:
        row = []
        for b in order:
            d0, d1 = oh.dims(a, b)
            row.append(d0 + d1 - _through_span(oh, a, b, M).rank)
        out.append(tuple(row))
    return tuple(out)


def factor_arrows(model: DerivedModel, t, M: DVertex):
    """Gabriel arrow counts of the factor algebra End(t)/(M)."""
    order = [v for v in _summand_order(t) if v != M]
    oh = _OrbitHom(model)
    out = []
    for a in order:
        row = []
        for b in order:
            if a == b:
                row.append(0)
                continue
            d0, d1 = oh.dims(a, b)
            sb = _rad_sq(oh, order, a, b, extra_through=[M])
            row.append(d0 + d1 - sb.rank)
        out.append(tuple(row))
    return tuple(out)


@dataclass
class FactorReport:
    summands: tuple[DVertex, ...]
    factor_matrix: tuple
    localised_matrix: tuple
    factor_arrow_counts: tuple
    localised_arrow_counts: tuple
    dims_agree: bool
    arrows_agree: bool

    @property
    def ok(self) -> bool:
        return self.dims_agree and self.arrows_agree


def verify_factor_theorem(model: DerivedModel, t, M: DVertex) -> FactorReport:
    """Compare End(t)/(M) with the endomorphism data of the localised object.

    Both the dimension matrices and the Gabriel arrow counts must agree; the
    localised side is computed twice, once through D0 fingerprints in the
    parent window and once inside the fresh H' model, and the two must
    match as well.
    """
    t = frozenset(t)
    if M not in t:
        raise ValueError("M must be a summand of t")
    if not 0 <= M.shift <= model.m - 1:
        raise ValueError("deg(M) must lie in [0, m-1]; normalize first")
    order = [v for v in _summand_order(t) if v != M]
    pd = perpendicular_algebra(model, M)
    fmat = factor_dims(model, t, M)
    farrows = factor_arrows(model, t, M)

    images = []
    for a in order:
        img = project_to_D0(model, a, pd)
        if img.total() != 1:
            raise InternalCheckError(f"image of {a} is not indecomposable")
        images.append(img.summands[0][0])

    lmat = []
    for ya in images:
        row = []
        for yb in images:
            gyb = project_to_D0(model, model.g(yb), pd)
            row.append(
                model.hom(ya, yb)
                + model.hom_objects(DObject.of([ya]), gyb)
            )
        lmat.append(tuple(row))
    lmat = tuple(lmat)

    if pd.H_prime.n:
        prime = [pd.to_prime(v) for v in images]
        pdata = endo_dims(pd.prime_model, prime)
        # endo_dims sorts its summands; map back to our image order
        perm = [pdata.summands.index(p) for p in prime]
        pmat = tuple(
            tuple(pdata.hom_dims[i][j] for j in perm) for i in perm
        )
        larrows = tuple(
            tuple(pdata.arrows[i][j] for j in perm) for i in perm
        )
        if pmat != lmat:
            raise InternalCheckError(
                "localised dimensions disagree between the D0 fingerprint "
                "and the H' model"
            )
    else:
        larrows = tuple()

    return FactorReport(
        summands=tuple(order),
        factor_matrix=fmat,
        localised_matrix=lmat,
        factor_arrow_counts=farrows,
        localised_arrow_counts=larrows,
        dims_agree=fmat == lmat,
        arrows_agree=farrows == larrows,
    )
