"""The eleven Archimedean tilings as periodic combinatorial templates.

Each tiling is built once from an exact unit-edge geometric seed (a lattice
basis ``A, B`` and a few vertex positions in Q(sqrt 2) or Q(sqrt 3)).  Edges
are found by exact unit distance and the rotation order at each vertex by
angle.  After that only combinatorics is kept:

* a *site* is a translation class of vertices; plane vertices are pairs
  ``(site, cell)`` with ``cell`` an integer vector in the (A, B) frame;
* ``darts[s]`` lists the neighbours ``(site, offset)`` of site ``s`` at cell
  ``(0, 0)`` in counter-clockwise order;
* site coordinates are rationals in the (A, B) frame.  Where the true frame
  coordinates involve sqrt(d) it is replaced by a fixed rational stand-in.
  That substitution is Q-linear, so every symmetry of the tiling stays an
  affine map with integer linear part, and symmetry questions can be decided
  with exact rational arithmetic.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import product

from . import _quadratic as qd
from .errors import NotAnAutomorphism, UnknownType
from .lattice import Vector, apply_linear

Matrix = tuple[tuple[int, int], tuple[int, int]]
PlaneVertex = tuple[int, Vector]

IDENTITY: Matrix = ((1, 0), (0, 1))

# rational stand-ins for sqrt(2) and sqrt(3) in pseudo-coordinates
_ROOT_STANDIN = {2: Fraction(7, 5), 3: Fraction(7, 4)}


# ---------------------------------------------------------------------------
# vertex types
# ---------------------------------------------------------------------------

_SUPERSCRIPTS = str.maketrans("⁰¹²³⁴⁵⁶⁷⁸⁹", "0123456789")


@dataclass(frozen=True)
class VertexType:
    """Cyclic sequence of face sizes around a vertex.

    Stored in canonical form: the lexicographically least sequence over all
    rotations and reversals, so equality is the identification rule for
    symbols read in either direction from any starting face.
    """

    sizes: tuple[int, ...]

    @classmethod
    def from_sequence(cls, seq) -> VertexType:
        seq = tuple(int(x) for x in seq)
        if len(seq) < 3 or any(p < 3 for p in seq):
            raise ValueError(f"not a vertex type: {seq}")
        cands = []
        for s in (seq, seq[::-1]):
            for r in range(len(s)):
                cands.append(s[r:] + s[:r])
        return cls(min(cands))

    @classmethod
    def parse(cls, text: str) -> VertexType:
        """Parse ``[3^4,6^1]``, ``[3^4,6]``, ``[3⁴,6¹]`` or ``3.3.3.3.6``."""
        s = re.sub("[⁰¹²³⁴⁵⁶⁷⁸⁹]+", lambda m: "^" + m.group(0).translate(_SUPERSCRIPTS), text)
        s = s.strip().replace(" ", "")
        if re.fullmatch(r"\d+(\.\d+)+", s):
            return cls.from_sequence(s.split("."))
        m = re.fullmatch(r"\[?((?:\d+(?:\^\d+)?)(?:,\d+(?:\^\d+)?)*)\]?", s)
        if not m:
            raise UnknownType(f"cannot parse vertex type {text!r}")
        seq = []
        for part in m.group(1).split(","):
            p, _, n = part.partition("^")
            seq.extend([int(p)] * int(n or 1))
        try:
            return cls.from_sequence(seq)
        except ValueError as exc:
            raise UnknownType(str(exc)) from None

    def runs(self) -> list[tuple[int, int]]:
        out: list[list[int]] = []
        for p in self.sizes:
            if out and out[-1][0] == p:
                out[-1][1] += 1
            else:
                out.append([p, 1])
        if len(out) > 1 and out[0][0] == out[-1][0]:
            out[0][1] += out.pop()[1]
        return [(p, n) for p, n in out]

    @property
    def symbol(self) -> str:
        return "[" + ",".join(f"{p}^{n}" for p, n in self.runs()) + "]"

    @property
    def short(self) -> str:
        return "[" + ",".join(f"{p}^{n}" if n > 1 else str(p) for p, n in self.runs()) + "]"

    def __str__(self):
        return self.symbol


# ---------------------------------------------------------------------------
# plane symmetries
# ---------------------------------------------------------------------------

def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    return (
        (a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
        (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]),
    )


def _mat_det(a: Matrix) -> int:
    return a[0][0] * a[1][1] - a[0][1] * a[1][0]


def _mat_inv(a: Matrix) -> Matrix:
    d = _mat_det(a)
    if d not in (1, -1):
        raise ValueError("matrix is not unimodular")
    return ((a[1][1] * d, -a[0][1] * d), (-a[1][0] * d, a[0][0] * d))


def matrix_order(a: Matrix, limit: int = 12) -> int | None:
    p = a
    for n in range(1, limit + 1):
        if p == IDENTITY:
            return n
        p = _mat_mul(p, a)
    return None


def _frac_vec(v) -> tuple[Fraction, Fraction]:
    return Fraction(v[0]), Fraction(v[1])


def _mod1(v) -> tuple[Fraction, Fraction]:
    return v[0] - math.floor(v[0]), v[1] - math.floor(v[1])


def _affine(m: Matrix, t, p) -> tuple[Fraction, Fraction]:
    x, y = apply_linear(m, p)
    return x + t[0], y + t[1]


@dataclass(frozen=True)
class PlaneSymmetry:
    """Affine map ``p -> linear @ p + shift`` on (A, B)-frame coordinates."""

    linear: Matrix
    shift: tuple[Fraction, Fraction] = (Fraction(0), Fraction(0))
    kind: str = "translation"
    label: str = ""

    @classmethod
    def translation(cls, v) -> PlaneSymmetry:
        return cls(IDENTITY, _frac_vec(v), "translation", f"translation by {tuple(v)}")

    @property
    def det(self) -> int:
        return _mat_det(self.linear)

    @property
    def order(self) -> int | None:
        """Order of the linear part."""
        return matrix_order(self.linear)

    def __call__(self, p):
        return _affine(self.linear, self.shift, p)

    def compose(self, other: PlaneSymmetry) -> PlaneSymmetry:
        """``self`` after ``other``."""
        m = _mat_mul(self.linear, other.linear)
        t = _affine(self.linear, self.shift, other.shift)
        return PlaneSymmetry(m, t, classify(m, t), "")

    def inverse(self) -> PlaneSymmetry:
        mi = _mat_inv(self.linear)
        t = apply_linear(mi, self.shift)
        t = (-t[0], -t[1])
        return PlaneSymmetry(mi, t, self.kind, self.label and self.label + "^-1")

    def reduced(self) -> PlaneSymmetry:
        """Same coset modulo lattice translations, shift in ``[0, 1)^2``."""
        return PlaneSymmetry(self.linear, _mod1(self.shift), self.kind, self.label)

    def to_json(self) -> dict:
        return {
            "linear": [list(r) for r in self.linear],
            "shift": [str(x) for x in self.shift],
            "kind": self.kind,
            "order": self.order,
            "label": self.label,
        }


def classify(m: Matrix, t) -> str:
    """Kind of the coset ``(m, t + Z^2)``: translation, rotation, reflection or glide."""
    det = _mat_det(m)
    if det == 1:
        return "translation" if m == IDENTITY else "rotation"
    # orientation reversing: a true mirror exists in the coset iff the glide
    # component (I + m)(t + z) vanishes for some integer z
    ip = ((1 + m[0][0], m[0][1]), (m[1][0], 1 + m[1][1]))
    for z in product(range(-2, 3), repeat=2):
        g = apply_linear(ip, (t[0] + z[0], t[1] + z[1]))
        if g[0] == 0 and g[1] == 0:
            return "reflection"
    return "glide"


def axis_direction(m: Matrix) -> Vector:
    """Primitive integer direction fixed by an orientation-reversing ``m``."""
    a, b = m[0][0] - 1, m[0][1]
    c, d = m[1][0], m[1][1] - 1
    v = (-b, a) if (a, b) != (0, 0) else (-d, c)
    g = math.gcd(*v) or 1
    v = (v[0] // g, v[1] // g)
    if v[0] < 0 or (v[0] == 0 and v[1] < 0):
        v = (-v[0], -v[1])
    return v


def describe(m: Matrix, t) -> str:
    kind = classify(m, t)
    if kind == "translation":
        return "identity"
    if kind == "rotation":
        n = matrix_order(m)
        return f"rotation {360 // n} deg (order {n})"
    ax = axis_direction(m)
    return f"{kind}, axis along {ax[0]}A{ax[1]:+d}B"


def conjugate_translation(s: PlaneSymmetry, v: Vector) -> Vector:
    """Translation vector of ``s o t_v o s^-1``, which is ``linear(s) @ v``."""
    return apply_linear(s.linear, v)


# ---------------------------------------------------------------------------
# templates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Site:
    index: int
    coord: tuple[Fraction, Fraction]

    @property
    def label(self) -> str:
        return f"s{self.index}"


@dataclass(frozen=True)
class NamedGenerator:
    name: str
    linear: Matrix
    note: str


@dataclass(frozen=True, eq=False)
class TilingTemplate:
    name: str
    title: str
    vertex_type: VertexType
    sites: tuple[Site, ...]
    darts: tuple[tuple[tuple[int, Vector], ...], ...]
    frame: str
    named: tuple[NamedGenerator, ...] = field(default=(), repr=False)

    @property
    def site_count(self) -> int:
        return len(self.sites)

    @property
    def edges(self) -> list[tuple[int, int, Vector]]:
        """All ``(u, v, offset)`` with ``u`` at cell ``z`` joined to ``v`` at ``z + offset``."""
        return [(u, v, off) for u, ds in enumerate(self.darts) for v, off in ds]

    @cached_property
    def edge_set(self) -> frozenset:
        return frozenset(self.edges)

    @cached_property
    def dart_index(self) -> tuple[dict, ...]:
        return tuple({d: k for k, d in enumerate(ds)} for ds in self.darts)

    def neighbors(self, v: PlaneVertex) -> list[PlaneVertex]:
        s, z = v
        return [(w, (z[0] + o[0], z[1] + o[1])) for w, o in self.darts[s]]

    def next_dart(self, s: int, k: int) -> tuple[int, int, Vector]:
        """Next dart along the face to the left of dart ``k`` at site ``s``."""
        v, off = self.darts[s][k]
        back = self.dart_index[v][(s, (-off[0], -off[1]))]
        kk = (back - 1) % len(self.darts[v])
        return v, kk, off

    @cached_property
    def face_walks(self) -> tuple[tuple[tuple[PlaneVertex, ...], ...], ...]:
        """For each dart ``(s, k)``: the plane vertices of the face on its left."""
        out = []
        for s, ds in enumerate(self.darts):
            row = []
            for k in range(len(ds)):
                verts = [(s, (0, 0))]
                cur, cell = (s, k), (0, 0)
                while True:
                    v, kk, off = self.next_dart(*cur)
                    cell = (cell[0] + off[0], cell[1] + off[1])
                    cur = (v, kk)
                    if cur == (s, k) and cell == (0, 0):
                        break
                    verts.append((v, cell))
                    if len(verts) > 64:
                        raise RuntimeError(f"{self.name}: face walk does not close")
                row.append(tuple(verts))
            out.append(tuple(row))
        return tuple(out)

    def face_cycle(self, s: int) -> tuple[int, ...]:
        return tuple(len(w) for w in self.face_walks[s])

    def face_census(self) -> dict[int, int]:
        """Number of p-gons per fundamental domain."""
        counts: dict[int, int] = {}
        for row in self.face_walks:
            for w in row:
                counts[len(w)] = counts.get(len(w), 0) + 1
        return {p: c // p for p, c in sorted(counts.items())}

    def validate(self) -> list[str]:
        """Self-checks; returns a list of problems (empty when valid)."""
        problems = []
        for u, v, off in self.edges:
            if (v, u, (-off[0], -off[1])) not in self.edge_set:
                problems.append(f"edge {u}->{v}{off} has no reverse")
        for s in range(self.site_count):
            vt = VertexType.from_sequence(self.face_cycle(s))
            if vt != self.vertex_type:
                problems.append(f"site {s}: face-cycle {vt} != {self.vertex_type}")
        for sym in self.catalog:
            if not is_automorphism(sym, self):
                problems.append(f"catalog symmetry {sym.label} fails validation")
        return problems

    # -- symmetry catalogue ------------------------------------------------

    @cached_property
    def point_group(self) -> tuple[PlaneSymmetry, ...]:
        return tuple(point_group(self))

    def find_shift(self, m: Matrix):
        """A shift making ``(m, shift)`` a symmetry, or None."""
        p0 = self.sites[0].coord
        base = apply_linear(m, p0)
        for site in self.sites:
            t = _mod1((site.coord[0] - base[0], site.coord[1] - base[1]))
            cand = PlaneSymmetry(m, t, classify(m, t))
            if is_automorphism(cand, self):
                return t
        return None

    @cached_property
    def _catalog_split(self):
        ok, quarantine = [], []
        for g in self.named:
            t = self.find_shift(g.linear)
            if t is None:
                quarantine.append({
                    "name": g.name,
                    "linear": [list(r) for r in g.linear],
                    "note": g.note,
                    "diagnostic": "no shift makes this linear part an automorphism of the tiling",
                })
            else:
                ok.append(PlaneSymmetry(g.linear, t, classify(g.linear, t), f"{g.name}: {g.note}"))
        return tuple(ok), tuple(quarantine)

    @property
    def catalog(self) -> tuple[PlaneSymmetry, ...]:
        """The named generators that validate, each with a valid shift."""
        return self._catalog_split[0]

    @property
    def quarantine(self) -> tuple[dict, ...]:
        return self._catalog_split[1]

    def generator(self, name: str) -> PlaneSymmetry:
        for s in self.catalog:
            if s.label.split(":")[0] == name:
                return s
        raise KeyError(f"{self.name} has no validated generator {name!r}")

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "title": self.title,
            "vertex_type": self.vertex_type.symbol,
            "frame": self.frame,
            "site_count": self.site_count,
            "sites": [{"id": s.index, "coord": [str(c) for c in s.coord]} for s in self.sites],
            "edges": [[u, v, list(off)] for u, v, off in self.edges],
            "rotation_order": [[[v, list(off)] for v, off in ds] for ds in self.darts],
            "face_census": {str(p): c for p, c in self.face_census().items()},
            "point_group": [s.to_json() for s in self.point_group],
            "catalog": [s.to_json() for s in self.catalog],
            "quarantine": list(self.quarantine),
        }


# ---------------------------------------------------------------------------
# symmetry action
# ---------------------------------------------------------------------------

@lru_cache(maxsize=4096)
def _site_action_cached(t: TilingTemplate, m: Matrix, shift) -> tuple | None:
    where = {_mod1(s.coord): s.index for s in t.sites}
    out = []
    for s in t.sites:
        img = _affine(m, shift, s.coord)
        red = _mod1(img)
        j = where.get(red)
        if j is None:
            return None
        cell = img[0] - red[0], img[1] - red[1]
        # site coordinates are themselves not necessarily in [0, 1)
        base = t.sites[j].coord
        bred = _mod1(base)
        cell = (int(cell[0] + bred[0] - base[0]), int(cell[1] + bred[1] - base[1]))
        out.append((j, cell))
    return tuple(out)


def site_action(s: PlaneSymmetry, t: TilingTemplate) -> tuple[tuple[int, Vector], ...] | None:
    """For every site ``i``: the image ``(pi(i), c_i)`` of vertex ``(i, (0, 0))``.

    Returns None if ``s`` does not even map vertices to vertices.
    """
    return _site_action_cached(t, s.linear, s.shift)


def _image(action, m: Matrix, v: PlaneVertex) -> PlaneVertex:
    s, z = v
    j, c = action[s]
    mz = apply_linear(m, z)
    return j, (mz[0] + c[0], mz[1] + c[1])


def dart_action(s: PlaneSymmetry, t: TilingTemplate):
    """Image of each dart ``(site, k)`` as ``(site', k')``, or None if edges break."""
    action = site_action(s, t)
    if action is None:
        return None
    out = []
    for i, ds in enumerate(t.darts):
        j, c = action[i]
        row = []
        for v, off in ds:
            w, cw = _image(action, s.linear, (v, off))
            key = (w, (cw[0] - c[0], cw[1] - c[1]))
            k = t.dart_index[j].get(key)
            if k is None:
                return None
            row.append(k)
        out.append((j, tuple(row)))
    return tuple(out)


def is_automorphism(s: PlaneSymmetry, t: TilingTemplate) -> bool:
    """Decide whether ``s`` is a symmetry of the tiling.

    Checks that vertices go to vertices bijectively, that the edges at every
    site of one fundamental domain go to edges, and that the rotation order
    is carried to itself (reversed when ``det = -1``), which makes faces go
    to faces.  Periodicity makes the one-domain check sufficient.
    """
    if _mat_det(s.linear) not in (1, -1):
        return False
    action = site_action(s, t)
    if action is None or len({j for j, _ in action}) != t.site_count:
        return False
    da = dart_action(s, t)
    if da is None:
        return False
    for i, (j, ks) in enumerate(da):
        n = len(ks)
        if len(t.darts[j]) != n:
            return False
        step = 1 if _mat_det(s.linear) == 1 else -1
        for a in range(n):
            if ks[(a + 1) % n] != (ks[a] + step) % n:
                return False
    return True


def apply_symmetry(s: PlaneSymmetry, v: PlaneVertex, t: TilingTemplate) -> PlaneVertex:
    action = site_action(s, t)
    if action is None or not is_automorphism(s, t):
        raise NotAnAutomorphism(f"{s.label or s.linear} is not a symmetry of {t.name}")
    return _image(action, s.linear, v)


def _candidate_linear_parts() -> list[Matrix]:
    out = []
    for a, b, c, d in product((-1, 0, 1), repeat=4):
        m = ((a, b), (c, d))
        if _mat_det(m) in (1, -1) and matrix_order(m, 6) is not None:
            out.append(m)
    return out


def point_group(t: TilingTemplate) -> list[PlaneSymmetry]:
    """All symmetries of ``t`` modulo lattice translations, identity first."""
    found = []
    for m in _candidate_linear_parts():
        shift = t.find_shift(m)
        if shift is not None:
            found.append(PlaneSymmetry(m, shift, classify(m, shift), describe(m, shift)))
    found.sort(key=lambda s: (s.kind != "translation", -s.det, s.order, s.linear))
    return found


def point_group_product(t: TilingTemplate, a: PlaneSymmetry, b: PlaneSymmetry) -> PlaneSymmetry:
    """The point-group element equal to ``a o b`` modulo translations."""
    m = _mat_mul(a.linear, b.linear)
    for g in t.point_group:
        if g.linear == m:
            return g
    raise ValueError("product is not in the point group")


def rotation_centers(s: PlaneSymmetry, t: TilingTemplate) -> list[dict]:
    """Inequivalent centres of the rotations in the coset ``s + lattice``.

    Each centre is classified as vertex, edge midpoint, face centre or other,
    in pseudo-coordinates (affine images of the true ones, so midpoints and
    centroids are preserved).
    """
    if s.kind != "rotation":
        return []
    m = s.linear
    im = ((1 - m[0][0], -m[0][1]), (-m[1][0], 1 - m[1][1]))
    det = _mat_det(im)
    inv = ((Fraction(im[1][1], det), Fraction(-im[0][1], det)),
           (Fraction(-im[1][0], det), Fraction(im[0][0], det)))
    vertices = {_mod1(site.coord) for site in t.sites}
    mids = set()
    for u, v, off in t.edges:
        p, q = t.sites[u].coord, t.sites[v].coord
        mids.add(_mod1(((p[0] + q[0] + off[0]) / 2, (p[1] + q[1] + off[1]) / 2)))
    centres = {}
    for row in t.face_walks:
        for w in row:
            cx = sum(t.sites[a].coord[0] + z[0] for a, z in w) / len(w)
            cy = sum(t.sites[a].coord[1] + z[1] for a, z in w) / len(w)
            centres[_mod1((cx, cy))] = len(w)
    seen, out = set(), []
    for z in product(range(-3, 4), repeat=2):
        tz = (s.shift[0] + z[0], s.shift[1] + z[1])
        c = _mod1(apply_linear(inv, tz))
        if c in seen:
            continue
        seen.add(c)
        if c in vertices:
            where = "vertex"
        elif c in mids:
            where = "edge midpoint"
        elif c in centres:
            where = f"centre of a {centres[c]}-gon"
        else:
            where = "other"
        out.append({"centre": [str(c[0]), str(c[1])], "at": where})
    out.sort(key=lambda d: (d["at"], d["centre"]))
    return out


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------

def _q(d, a, b=0):
    return qd.Quad(a, b, d)


def _rot_orbit(points, n, c, s):
    out = []
    for p in points:
        for _ in range(n):
            out.append(p)
            p = qd.rotate(p, c, s)
    return out


def _build(name, title, d, A, B, seeds, frame, named=()) -> TilingTemplate:
    root = _ROOT_STANDIN[d]
    sites = []
    for p in seeds:
        fx, fy = qd.solve_frame(p, A, B)
        if any((fx - gx).is_integer() and (fy - gy).is_integer() for _, (gx, gy) in sites):
            continue
        # move into the cell whose pseudo-coordinates lie in [0, 1)^2
        px, py = fx.substitute(root), fy.substitute(root)
        kx, ky = math.floor(px), math.floor(py)
        p = qd.add(p, qd.add(qd.scale(-kx, A), qd.scale(-ky, B)))
        sites.append((p, (fx - kx, fy - ky)))
    coords = [(fx.substitute(root), fy.substitute(root)) for _, (fx, fy) in sites]
    if len({_mod1(c) for c in coords}) != len(coords):
        raise RuntimeError(f"{name}: pseudo-coordinates collide")
    fa, fb = (float(A[0]), float(A[1])), (float(B[0]), float(B[1]))
    approx = [(float(p[0]), float(p[1])) for p, _ in sites]
    darts = []
    for i, (p, _) in enumerate(sites):
        found = []
        for j, (q, _) in enumerate(sites):
            for zx, zy in product(range(-2, 3), repeat=2):
                # cheap float screen; the exact test below decides
                ex = approx[j][0] + zx * fa[0] + zy * fb[0] - approx[i][0]
                ey = approx[j][1] + zx * fa[1] + zy * fb[1] - approx[i][1]
                if abs(ex * ex + ey * ey - 1) > 1e-6:
                    continue
                qq = qd.add(q, qd.add(qd.scale(zx, A), qd.scale(zy, B)))
                dv = (qq[0] - p[0], qq[1] - p[1])
                if qd.sqnorm(dv) == 1:
                    # angles only order the neighbours; they never enter a decision
                    ang = math.atan2(float(dv[1]), float(dv[0]))
                    found.append((ang, j, (zx, zy)))
        found.sort()
        darts.append(tuple((j, z) for _, j, z in found))
    t = TilingTemplate(
        name=name,
        title=title,
        vertex_type=VertexType((3, 3, 3)),  # placeholder until faces are traced
        sites=tuple(Site(i, c) for i, c in enumerate(coords)),
        darts=tuple(darts),
        frame=frame,
        named=tuple(named),
    )
    object.__setattr__(t, "vertex_type", VertexType.from_sequence(t.face_cycle(0)))
    return t


# linear parts in the hexagonal frame (A at 0 degrees, B at 60 degrees)
R60: Matrix = ((0, -1), (1, 1))
R120: Matrix = ((-1, -1), (1, 0))
R180: Matrix = ((-1, 0), (0, -1))
MIRROR_A: Matrix = ((1, 1), (0, -1))      # axis parallel to A
MIRROR_B: Matrix = ((-1, 0), (1, 1))      # axis parallel to B
MIRROR_PERP_A: Matrix = ((-1, -1), (0, 1))  # axis perpendicular to A
SWAP_AB: Matrix = ((0, 1), (1, 0))        # axis along A + B


def _constructions():
    h3 = _q(3, 0, Fraction(1, 2))
    half = Fraction(1, 2)
    c60, s60 = _q(3, half), h3
    one3, zero3 = _q(3, 1), _q(3, 0)

    def hexframe(length):
        return (length, zero3), (length * half, length * h3)

    out = {}

    # E1 snub square: one square axis-aligned, lattice vectors at 15 degrees
    A = (one3 + h3, _q(3, half))
    B = qd.rotate(A, zero3, one3)
    sq = [(zero3, zero3), (one3, zero3), (one3, one3), (zero3, one3)]
    out["E1"] = ("snub square", 3, A, B, sq, "square", ())

    # E2 truncated square: octagons centred on lattice points
    L2 = _q(2, 1, 1)
    A, B = (L2, _q(2, 0)), (_q(2, 0), L2)
    seeds = _rot_orbit([(L2 * half, _q(2, half)), (L2 * half, _q(2, -half))], 4, _q(2, 0), _q(2, 1))
    out["E2"] = ("truncated square", 2, A, B, seeds, "square", ())

    # E3 snub hexagonal: triangular lattice minus an index-7 sublattice
    A = qd.add(qd.scale(2, (one3, zero3)), (_q(3, half), h3))
    B = qd.rotate(A, c60, s60)
    seeds = _rot_orbit([(one3, zero3)], 6, c60, s60)
    out["E3"] = ("snub hexagonal", 3, A, B, seeds, "hexagonal", (
        NamedGenerator("rho3", R180, "180-degree rotation pairing the six translation classes"),
        NamedGenerator("rho3_conj", R120, "rotation with A -> B - A, B -> -A as in the conjugation algebra"),
        NamedGenerator("tau3", SWAP_AB, "reflection exchanging A and B"),
    ))

    # E4 trihexagonal: midpoints of a triangular lattice of side 2
    A, B = hexframe(_q(3, 2))
    seeds = [qd.scale(half, A), qd.scale(half, B), qd.scale(half, (B[0] - A[0], B[1] - A[1]))]
    out["E4"] = ("trihexagonal", 3, A, B, seeds, "hexagonal", (
        NamedGenerator("rho4", MIRROR_PERP_A, "reflection with A -> -A, B -> B - A"),
    ))

    # E5 rhombitrihexagonal: hexagons at lattice points, squares between them
    A, B = hexframe(_q(3, 1, 1))
    seeds = _rot_orbit([(h3, _q(3, half))], 6, c60, s60)
    out["E5"] = ("rhombitrihexagonal", 3, A, B, seeds, "hexagonal", (
        NamedGenerator("tau5", MIRROR_A, "reflection in a line along A"),
        NamedGenerator("rho5", MIRROR_PERP_A, "reflection in a line perpendicular to A"),
    ))

    dodeca = [(one3 + h3, _q(3, half)), (one3 + h3, _q(3, -half))]

    # E6 truncated hexagonal: dodecagons sharing edges
    A, B = hexframe(_q(3, 2, 1))
    out["E6"] = ("truncated hexagonal", 3, A, B, _rot_orbit(dodeca, 6, c60, s60), "hexagonal", (
        NamedGenerator("rho6", MIRROR_A, "reflection in a line along A"),
        NamedGenerator("tau6", MIRROR_PERP_A, "reflection in a line perpendicular to A"),
    ))

    # E7 truncated trihexagonal: dodecagons separated by squares
    A, B = hexframe(_q(3, 3, 1))
    out["E7"] = ("truncated trihexagonal", 3, A, B, _rot_orbit(dodeca, 6, c60, s60), "hexagonal", (
        NamedGenerator("tau7", MIRROR_A, "reflection in a line parallel to A"),
        NamedGenerator("gamma7", MIRROR_B, "reflection in a line parallel to B"),
        NamedGenerator("omega7", MIRROR_PERP_A, "reflection in a line perpendicular to A"),
        NamedGenerator("lambda7", MIRROR_PERP_A, "reflection in the line perpendicular to the axis of tau7"),
        NamedGenerator("rho7", R60, "rotation by 60 degrees"),
        NamedGenerator("rho7_sq", R120, "rotation by 120 degrees"),
    ))

    # E8 triangular, E9 square, E10 hexagonal
    out["E8"] = ("triangular", 3, (one3, zero3), (_q(3, half), h3), [(zero3, zero3)], "hexagonal", ())
    out["E9"] = ("square", 3, (one3, zero3), (zero3, one3), [(zero3, zero3)], "square", ())
    A, B = (_q(3, 0, 1), zero3), (_q(3, 0, half), _q(3, Fraction(3, 2)))
    out["E10"] = ("hexagonal", 3, A, B, [(zero3, zero3), (_q(3, 0, half), _q(3, half))], "hexagonal", ())

    # E11 elongated triangular: rows of squares and triangles
    A, B = (one3, zero3), (_q(3, half), one3 + h3)
    out["E11"] = ("elongated triangular", 3, A, B, [(zero3, zero3), (zero3, one3)], "oblique", ())
    return out


NAMES = tuple(f"E{i}" for i in range(1, 12))


@lru_cache(maxsize=None)
def _template_by_name(name: str) -> TilingTemplate:
    title, d, A, B, seeds, frame, named = _constructions()[name]
    return _build(name, title, d, A, B, seeds, frame, named)


@lru_cache(maxsize=None)
def _by_type() -> dict[VertexType, str]:
    return {_template_by_name(n).vertex_type: n for n in NAMES}


def all_templates() -> list[TilingTemplate]:
    return [_template_by_name(n) for n in NAMES]


def template(t) -> TilingTemplate:
    """Template for a vertex type (object or symbol) or a name ``E1``..``E11``."""
    if isinstance(t, TilingTemplate):
        return t
    if isinstance(t, str) and t.strip().upper() in NAMES:
        return _template_by_name(t.strip().upper())
    vt = t if isinstance(t, VertexType) else VertexType.parse(t)
    name = _by_type().get(vt)
    if name is None:
        raise UnknownType(f"{vt} is not one of the eleven Archimedean vertex types")
    return _template_by_name(name)


def plane_orbit_count(t: TilingTemplate, symmetries) -> int:
    """Vertex orbits of the group generated by all translations and ``symmetries``."""
    parent = list(range(t.site_count))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s in symmetries:
        action = site_action(s, t)
        if action is None or not is_automorphism(s, t):
            raise NotAnAutomorphism(f"{s.label or s.linear} is not a symmetry of {t.name}")
        for i, (j, _) in enumerate(action):
            a, b = find(i), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
    return len({find(i) for i in range(t.site_count)})
