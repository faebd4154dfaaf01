"""A finite window model of the bounded derived category of mod H.

Indecomposables are pairs (module vertex, shift).  The translation quiver
structure on the window glues shifted copies of the module AR-quiver with
connecting arrows I(j)[t] -> P(i)[t+1] for every quiver arrow j -> i (over a
hereditary algebra rad P(j) is the sum of those P(i), which is exactly what
the connecting meshes need).

Hom dimensions never require the window: for equal shifts they come from
the module-level hammock, for a shift gap of one from the AR formula
Ext^1(X,Y) = D Hom(Y, tau X), and they vanish otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arquiver import ARQuiver, ARVertex
from .errors import InternalCheckError, WindowOverflow


@dataclass(frozen=True)
class DVertex:
    """An indecomposable object of the derived category: module[shift]."""

    module: ARVertex
    shift: int

    @property
    def degree(self) -> int:
        return self.shift

    def name(self) -> str:
        return f"{self.module.name}[{self.shift}]"

    def __repr__(self):
        return self.name()


@dataclass(frozen=True)
class DObject:
    """A finite multiset of DVertex summands."""

    summands: tuple[tuple[DVertex, int], ...]

    @staticmethod
    def of(vertices) -> "DObject":
        counts: dict[DVertex, int] = {}
        for v in vertices:
            counts[v] = counts.get(v, 0) + 1
        items = sorted(counts.items(), key=lambda it: _vkey(it[0]))
        return DObject(tuple(items))

    @staticmethod
    def zero() -> "DObject":
        return DObject(())

    @property
    def basic(self) -> bool:
        return all(mult == 1 for _, mult in self.summands)

    @property
    def is_zero(self) -> bool:
        return not self.summands

    def vertices(self):
        return [v for v, _ in self.summands]

    def total(self) -> int:
        return sum(m for _, m in self.summands)

    def shifted(self, k: int) -> "DObject":
        return DObject(
            tuple((DVertex(v.module, v.shift + k), m) for v, m in self.summands)
        )

    def name(self) -> str:
        if not self.summands:
            return "0"
        parts = []
        for v, m in self.summands:
            parts.extend([v.name()] * m)
        return " + ".join(parts)


def _vkey(v: DVertex):
    return (v.shift, v.module.slice_index, v.module.name)


def degree(x: DVertex) -> int:
    return x.shift


class DerivedModel:
    """The window model: AR-quiver of mod H, a value of m, and a shift window."""

    def __init__(self, ar: ARQuiver, m: int, window: tuple[int, int] | None = None):
        if m < 1:
            raise ValueError("m must be at least 1")
        self.ar = ar
        self.quiver = ar.quiver
        self.m = m
        self.window = window if window is not None else (-3, m + 4)
        lo, hi = self.window
        self.vertices: list[DVertex] = sorted(
            (DVertex(v, t) for t in range(lo, hi + 1) for v in ar.vertices),
            key=_vkey,
        )
        self._vset = set(self.vertices)
        self.out: dict[DVertex, list[DVertex]] = {v: [] for v in self.vertices}
        self.inn: dict[DVertex, list[DVertex]] = {v: [] for v in self.vertices}
        for t in range(lo, hi + 1):
            for src, dst in ar.arrows:
                self._add_arrow(DVertex(src, t), DVertex(dst, t))
            if t + 1 <= hi:
                for j, iv in ar.injectives.items():
                    for w in ar.inn[ar.projectives[j]]:
                        self._add_arrow(DVertex(iv, t), DVertex(w, t + 1))
        for v in self.vertices:
            self.out[v].sort(key=_vkey)
            self.inn[v].sort(key=_vkey)
        self.meshes: list[tuple[DVertex, tuple[DVertex, ...], DVertex]] = []
        for z in self.vertices:
            tz = self.tau_raw(z)
            if tz in self._vset:
                mids = tuple(self.inn[z])
                if set(mids) != set(self.out[tz]):
                    raise InternalCheckError(f"mesh mismatch at {z}")
                self.meshes.append((tz, mids, z))
        self._mesh_cat = None
        self._perp_cache: dict[ARVertex, object] = {}
        self._graph = None
        self._fd = None
        self._slices = None
        self._slice_worlds: dict[tuple, object] = {}

    def mesh_category(self):
        if self._mesh_cat is None:
            from .meshcat import MeshCategory

            self._mesh_cat = MeshCategory(self)
        return self._mesh_cat

    def _add_arrow(self, a: DVertex, b: DVertex):
        self.out[a].append(b)
        self.inn[b].append(a)

    def contains(self, x: DVertex) -> bool:
        return x in self._vset

    def _check(self, x: DVertex) -> DVertex:
        if x not in self._vset:
            raise WindowOverflow(f"{x} is outside the shift window {self.window}")
        return x

    # --- functors ---------------------------------------------------------

    def shift(self, x: DVertex, k: int) -> DVertex:
        return self._check(DVertex(x.module, x.shift + k))

    def shift_object(self, obj: DObject, k: int) -> DObject:
        shifted = obj.shifted(k)
        for v, _ in shifted.summands:
            self._check(v)
        return shifted

    def tau_raw(self, x: DVertex) -> DVertex:
        """tau of the derived category, window-unchecked."""
        if x.module.projective_of is not None:
            return DVertex(self.ar.injectives[x.module.projective_of], x.shift - 1)
        return DVertex(self.ar.tau[x.module], x.shift)

    def tau_inv_raw(self, x: DVertex) -> DVertex:
        if x.module.injective_of is not None:
            return DVertex(self.ar.projectives[x.module.injective_of], x.shift + 1)
        return DVertex(self.ar.tau_inv[x.module], x.shift)

    def tau_d(self, x: DVertex) -> DVertex:
        return self._check(self.tau_raw(x))

    def tau_d_inv(self, x: DVertex) -> DVertex:
        return self._check(self.tau_inv_raw(x))

    def g_raw(self, x: DVertex, t: int = 1) -> DVertex:
        """G^t where G = tau^{-1} [m], window-unchecked."""
        y = x
        for _ in range(t):
            y = self.tau_inv_raw(y)
            y = DVertex(y.module, y.shift + self.m)
        for _ in range(-t):
            y = DVertex(y.module, y.shift - self.m)
            y = self.tau_raw(y)
        return y

    def g(self, x: DVertex, t: int = 1) -> DVertex:
        return self._check(self.g_raw(x, t))

    # --- Hom dimensions ----------------------------------------------------

    def hom(self, x: DVertex, y: DVertex) -> int:
        """dim Hom_D(x, y); nonzero only when deg y is deg x or deg x + 1."""
        gap = y.shift - x.shift
        if gap == 0:
            return self.ar.hom(x.module, y.module)
        if gap == 1:
            return self.ar.ext(x.module, y.module)
        return 0

    def hom_objects(self, a: DObject, b: DObject) -> int:
        return sum(
            ma * mb * self.hom(x, y)
            for x, ma in a.summands
            for y, mb in b.summands
        )

    def hom_orbit(self, x: DVertex, y: DVertex, k: int) -> int:
        """dim of the orbit-category Hom: sum over t of Hom_D(x, G^t(y)[k]).

        Only t in {-1, 0, 1} can contribute; the t = +-2 ends of the scan are
        recomputed and asserted to vanish so that a modeling error is loud.
        """
        if not 0 <= k <= self.m:
            raise ValueError(f"k must be in [0, {self.m}]")
        total = 0
        for t in range(-2, 3):
            z = self.g_raw(y, t)
            z = DVertex(z.module, z.shift + k)
            term = self.hom(x, z)
            if term and abs(t) == 2:
                raise InternalCheckError(
                    f"orbit term t={t} is nonzero for ({x}, {y}, k={k})"
                )
            total += term
        return total
