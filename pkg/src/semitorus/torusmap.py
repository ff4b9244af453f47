"""Toroidal quotients E/K of a tiling template.

Vertices of ``E/K`` are pairs ``(site, cell)`` with ``cell`` a canonical
representative of ``Z^2 / K``.  They are numbered ``cell_index * S + site``
where ``S`` is the number of sites and cells are taken in the order of
:func:`lattice.representatives`.  Darts are numbered ``v * deg + k``, ``k``
being the position in the template's counter-clockwise rotation, so the
rotation system of the quotient is inherited verbatim and faces are traced
from it.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import NotPolyhedral, NotSemiEquivelar
from .lattice import Basis2, Vector, hnf, index, reduce
from .tilings import TilingTemplate, VertexType, template as get_template


@dataclass(frozen=True, eq=False)
class ToroidalMap:
    template: TilingTemplate
    sublattice: Basis2
    heads: np.ndarray = field(repr=False)  # (V, deg) neighbour vertex per dart
    next_dart: np.ndarray = field(repr=False)  # face successor of each dart
    faces: tuple[tuple[int, ...], ...] = field(repr=False)
    dart_face: np.ndarray = field(repr=False)

    # -- sizes ---------------------------------------------------------------

    @property
    def degree(self) -> int:
        return self.heads.shape[1]

    @property
    def n_vertices(self) -> int:
        return self.heads.shape[0]

    @property
    def n_edges(self) -> int:
        return self.heads.size // 2

    @property
    def n_faces(self) -> int:
        return len(self.faces)

    @property
    def vertex_type(self) -> VertexType:
        return self.template.vertex_type

    @property
    def index(self) -> int:
        return index(self.sublattice)

    # -- vertex identities ---------------------------------------------------

    def vertex(self, v: int) -> tuple[int, Vector]:
        """``(site, cell)`` for vertex id ``v``."""
        s = self.template.site_count
        c, site = divmod(v, s)
        i, j = divmod(c, self.sublattice.d)
        return site, (i, j)

    def vertex_id(self, site: int, cell: Vector) -> int:
        h = self.sublattice
        i, j = reduce(h, cell)
        return (i * h.d + j) * self.template.site_count + site

    @property
    def vertices(self) -> list[tuple[int, Vector]]:
        return [self.vertex(v) for v in range(self.n_vertices)]

    def neighbors(self, v: int) -> list[int]:
        return [int(w) for w in self.heads[v]]

    @cached_property
    def edges(self) -> list[tuple[int, int]]:
        out = set()
        for v in range(self.n_vertices):
            for w in self.heads[v]:
                out.add((min(v, int(w)), max(v, int(w))))
        return sorted(out)

    def face_cycle(self, v: int) -> tuple[int, ...]:
        """Face sizes around ``v`` in rotation order."""
        d = self.degree
        return tuple(len(self.faces[self.dart_face[v * d + k]]) for k in range(d))

    @cached_property
    def flags(self):
        from .orbits import FlagSystem

        return FlagSystem.from_map(self)

    # -- exports -------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "template": self.template.name,
            "vertex_type": self.vertex_type.symbol,
            "sublattice": self.sublattice.to_list(),
            "V": self.n_vertices,
            "E": self.n_edges,
            "F": self.n_faces,
            "vertices": [[s, c[0], c[1]] for s, c in self.vertices],
            "edges": [list(e) for e in self.edges],
            "faces": [list(f) for f in self.faces],
            "provenance": {
                "construction": "quotient of the plane tiling by the sub-lattice",
                "vertex_numbering": "cell_index * sites + site",
            },
        }

    def to_dot(self) -> str:
        lines = [f'graph "{self.template.name} {self.sublattice}" {{']
        for v, (s, c) in enumerate(self.vertices):
            lines.append(f'  {v} [label="s{s}@{c[0]},{c[1]}"];')
        for u, w in self.edges:
            lines.append(f"  {u} -- {w};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_faces_text(self) -> str:
        return "".join(" ".join(str(v) for v in f) + "\n" for f in self.faces)

    def to_tsv(self) -> str:
        rows = ["vertex\tsite\tcell_x\tcell_y\tneighbors"]
        for v, (s, c) in enumerate(self.vertices):
            rows.append(f"{v}\t{s}\t{c[0]}\t{c[1]}\t{','.join(map(str, self.neighbors(v)))}")
        return "\n".join(rows) + "\n"


def _quotient_heads(t: TilingTemplate, h: Basis2) -> np.ndarray:
    p, q, r = h.a, h.b, h.d
    n_cells = p * r
    s_count = t.site_count
    deg = len(t.darts[0])
    cells = np.arange(n_cells)
    ci, cj = cells // r, cells % r
    heads = np.empty((n_cells, s_count, deg), dtype=np.int64)
    for s, ds in enumerate(t.darts):
        for k, (w, (ox, oy)) in enumerate(ds):
            x = ci + ox
            kq = np.floor_divide(x, p)
            x = x - kq * p
            y = np.mod(cj + oy - kq * q, r)
            heads[:, s, k] = (x * r + y) * s_count + w
    return heads.reshape(n_cells * s_count, deg)


def build(t, k: Basis2, polyhedral: bool = True) -> ToroidalMap:
    """Quotient of the template's tiling by the sub-lattice ``k``.

    Raises NotPolyhedral when the quotient is a cell complex on the torus but
    not a polyhedral map.  With ``polyhedral=False`` the cell complex is
    returned anyway (small quotients such as the 2x2 square torus have
    doubled edges).
    """
    t = get_template(t)
    h = hnf(k)
    heads = _quotient_heads(t, h)
    n_v, deg = heads.shape
    sites = np.arange(n_v) % t.site_count

    if not polyhedral:
        return _assemble(t, h, heads)
    loops = np.nonzero(heads == np.arange(n_v)[:, None])[0]
    if loops.size:
        raise NotPolyhedral(f"loop at vertex {int(loops[0])}")
    srt = np.sort(heads, axis=1)
    dup = np.nonzero((srt[:, 1:] == srt[:, :-1]).any(axis=1))[0]
    if dup.size:
        raise NotPolyhedral(f"parallel edges at vertex {int(dup[0])}")

    m = _assemble(t, h, heads)
    faces, dart_face = m.faces, m.dart_face
    expected = np.array([[len(w) for w in row] for row in t.face_walks], dtype=np.int64)
    sizes = np.array([len(f) for f in faces], dtype=np.int64)[dart_face].reshape(n_v, deg)
    if not np.array_equal(sizes, expected[sites]):
        bad = int(np.nonzero((sizes != expected[sites]).any(axis=1))[0][0])
        raise NotPolyhedral(f"face around vertex {bad} closes up early")
    _check_faces(faces, heads)
    return m


def _assemble(t: TilingTemplate, h: Basis2, heads: np.ndarray) -> ToroidalMap:
    n_v, deg = heads.shape
    sites = np.arange(n_v) % t.site_count
    # face successor: at the head, the dart just clockwise of the reverse dart
    back = np.empty((t.site_count, deg), dtype=np.int64)
    for s, ds in enumerate(t.darts):
        for kk, (w, off) in enumerate(ds):
            back[s, kk] = (t.dart_index[w][(s, (-off[0], -off[1]))] - 1) % deg
    next_dart = (heads * deg + back[sites]).reshape(-1)

    n_d = n_v * deg
    dart_face = np.full(n_d, -1, dtype=np.int64)
    faces = []
    nd = next_dart.tolist()
    for d0 in range(n_d):
        if dart_face[d0] >= 0:
            continue
        walk = [d0]
        d = nd[d0]
        while d != d0:
            walk.append(d)
            d = nd[d]
        fid = len(faces)
        dart_face[walk] = fid
        faces.append(tuple(x // deg for x in walk))
    return ToroidalMap(t, h, heads, next_dart, tuple(faces), dart_face)


def _check_faces(faces, heads) -> None:
    pairs: dict[tuple[int, int], list[int]] = defaultdict(list)
    for fid, f in enumerate(faces):
        if len(set(f)) != len(f):
            raise NotPolyhedral(f"face {fid} visits a vertex twice")
        n = len(f)
        for a in range(n):
            for b in range(a + 1, n):
                u, w = f[a], f[b]
                pairs[(u, w) if u < w else (w, u)].append(fid)
    shared: dict[tuple[int, int], int] = defaultdict(int)
    for (u, w), fs in pairs.items():
        if len(fs) < 2:
            continue
        if len(fs) > 2:
            raise NotPolyhedral(f"vertices {u} and {w} lie on {len(fs)} common faces")
        if w not in heads[u]:
            raise NotPolyhedral(f"faces {fs[0]} and {fs[1]} meet in non-adjacent vertices {u}, {w}")
        shared[tuple(fs)] += 1
        if shared[tuple(fs)] > 1:
            raise NotPolyhedral(f"faces {fs[0]} and {fs[1]} share more than one edge")
        for fid in fs:
            f = faces[fid]
            a, b = f.index(u), f.index(w)
            if (a - b) % len(f) not in (1, len(f) - 1):
                raise NotPolyhedral(f"face {fid} contains {u}, {w} without the edge")


def try_build(t, k: Basis2) -> ToroidalMap | None:
    try:
        return build(t, k)
    except NotPolyhedral:
        return None


def euler_characteristic(m: ToroidalMap) -> int:
    return m.n_vertices - m.n_edges + m.n_faces


def is_semi_equivelar(m: ToroidalMap) -> VertexType:
    """Recompute the face-cycle at every vertex from the dart arrays."""
    first = None
    for v in range(m.n_vertices):
        vt = VertexType.from_sequence(m.face_cycle(v))
        if first is None:
            first = vt
        elif vt != first:
            raise NotSemiEquivelar(v, vt.symbol, first.symbol)
    if first != m.template.vertex_type:
        raise NotSemiEquivelar(0, first.symbol, m.template.vertex_type.symbol)
    return first


def face_census(m: ToroidalMap) -> dict[int, int]:
    out: dict[int, int] = {}
    for f in m.faces:
        out[len(f)] = out.get(len(f), 0) + 1
    return dict(sorted(out.items()))


def minimal_square_scale(t, limit: int = 12) -> int:
    """Least ``n`` with ``E / nZ^2`` polyhedral."""
    for n in range(1, limit + 1):
        if try_build(t, Basis2.scalar(n)) is not None:
            return n
    raise NotPolyhedral(f"no polyhedral square quotient up to scale {limit}")


def minimal_polyhedral_index(t, limit: int = 36) -> tuple[int, Basis2]:
    """Least index of a polyhedral quotient, with the first basis attaining it."""
    from .lattice import hnf_bases

    for n in range(1, limit + 1):
        for b in hnf_bases(n):
            if try_build(t, b) is not None:
                return n, b
    raise NotPolyhedral(f"no polyhedral quotient up to index {limit}")
