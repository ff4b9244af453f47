"""Automorphisms and vertex orbits of toroidal maps.

A map is encoded by its flags.  Flag ``2*d + e`` belongs to dart ``d``
(from vertex ``v`` to vertex ``w``): ``e = 0`` is the flag at ``v``, ``e = 1``
the flag at ``w``, both on the face to the left of ``d``.  The three
involutions are

* ``s0``: other end of the same edge, same face;
* ``s1``: other edge at the same vertex, same face;
* ``s2``: other face at the same vertex and edge.

An automorphism is a permutation of flags commuting with all three, and is
fixed by the image of one flag.  Candidates are checked in bulk with numpy.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

import numpy as np

from .errors import NotAnAutomorphism, NotCompatible, TooLarge
from .lattice import Basis2, apply_linear, preserves
from .tilings import PlaneSymmetry, TilingTemplate, dart_action, describe, rotation_centers, site_action
from .torusmap import ToroidalMap, build, minimal_square_scale


# largest vertex orbit count of a toroidal map, per template
ORBIT_BOUNDS = {"E1": 2, "E2": 2, "E3": 3, "E4": 3, "E5": 3, "E6": 3, "E7": 6,
                "E8": 1, "E9": 1, "E10": 1, "E11": 1}


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # smaller root wins so labels do not depend on union order
            if ra < rb:
                self.parent[rb] = ra
            else:
                self.parent[ra] = rb

    def groups(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for x in range(len(self.parent)):
            out.setdefault(self.find(x), []).append(x)
        return sorted(out.values())

    def count(self) -> int:
        return sum(1 for x in range(len(self.parent)) if self.find(x) == x)


@dataclass(frozen=True, eq=False)
class FlagSystem:
    s0: np.ndarray
    s1: np.ndarray
    s2: np.ndarray
    vertex_of: np.ndarray
    n_vertices: int

    @classmethod
    def from_map(cls, m: ToroidalMap) -> FlagSystem:
        t = m.template
        deg = m.degree
        n_v = m.n_vertices
        n_d = n_v * deg
        sites = np.arange(n_v) % t.site_count
        back = np.empty((t.site_count, deg), dtype=np.int64)
        for s, ds in enumerate(t.darts):
            for k, (w, off) in enumerate(ds):
                back[s, k] = t.dart_index[w][(s, (-off[0], -off[1]))]
        rev = (m.heads * deg + back[sites]).reshape(-1)
        nxt = m.next_dart
        prev = np.empty(n_d, dtype=np.int64)
        prev[nxt] = np.arange(n_d)

        darts = np.arange(n_d)
        f0, f1 = 2 * darts, 2 * darts + 1
        s0 = np.empty(2 * n_d, dtype=np.int64)
        s0[f0], s0[f1] = f1, f0
        s1 = np.empty(2 * n_d, dtype=np.int64)
        s1[f1] = 2 * nxt
        s1[f0] = 2 * prev + 1
        s2 = np.empty(2 * n_d, dtype=np.int64)
        s2[f0] = 2 * rev + 1
        s2[f1] = 2 * rev
        vertex_of = np.empty(2 * n_d, dtype=np.int64)
        vertex_of[f0] = darts // deg
        vertex_of[f1] = m.heads.reshape(-1)
        return cls(s0, s1, s2, vertex_of, n_v)

    @property
    def n_flags(self) -> int:
        return len(self.s0)

    @property
    def involutions(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return self.s0, self.s1, self.s2

    @cached_property
    def spanning_tree(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """BFS order from flag 0 with, per flag, its parent and the involution used."""
        n = self.n_flags
        parent = np.full(n, -1, dtype=np.int64)
        via = np.full(n, -1, dtype=np.int64)
        seen = np.zeros(n, dtype=bool)
        seen[0] = True
        order = [0]
        invs = [x.tolist() for x in self.involutions]
        head = 0
        while head < len(order):
            f = order[head]
            head += 1
            for i, s in enumerate(invs):
                g = s[f]
                if not seen[g]:
                    seen[g] = True
                    parent[g] = f
                    via[g] = i
                    order.append(g)
        if len(order) != n:
            raise ValueError("flag graph is not connected")
        return np.array(order, dtype=np.int64), parent, via

    def check(self) -> list[str]:
        problems = []
        ident = np.arange(self.n_flags)
        for name, s in zip(("s0", "s1", "s2"), self.involutions):
            if not np.array_equal(s[s], ident) or np.any(s == ident):
                problems.append(f"{name} is not a fixed-point-free involution")
        s02 = self.s0[self.s2]
        if not np.array_equal(s02[s02], ident):
            problems.append("s0 s2 is not an involution")
        try:
            self.spanning_tree
        except ValueError as exc:
            problems.append(str(exc))
        return problems


@dataclass(frozen=True, eq=False)
class MapAutomorphism:
    flag_perm: np.ndarray
    vertex_perm: np.ndarray
    label: str = ""

    @classmethod
    def from_flags(cls, fs: FlagSystem, perm: np.ndarray, label: str = "") -> MapAutomorphism:
        vp = np.empty(fs.n_vertices, dtype=np.int64)
        vp[fs.vertex_of] = fs.vertex_of[perm]
        return cls(perm, vp, label)

    @cached_property
    def key(self) -> bytes:
        return self.flag_perm.tobytes()

    def compose(self, other: MapAutomorphism) -> MapAutomorphism:
        """``self`` after ``other``."""
        return MapAutomorphism(self.flag_perm[other.flag_perm], self.vertex_perm[other.vertex_perm])

    def is_identity(self) -> bool:
        return bool(np.all(self.flag_perm == np.arange(len(self.flag_perm))))


def commutes(fs: FlagSystem, perm: np.ndarray) -> bool:
    return all(np.array_equal(perm[s], s[perm]) for s in fs.involutions)


def _propagate(src: FlagSystem, dst: FlagSystem, candidates: np.ndarray) -> np.ndarray:
    """Flag maps ``src -> dst`` sending flag 0 to each candidate that extend consistently.

    Returns an array with one row per successful candidate.
    """
    if src.n_flags != dst.n_flags or len(candidates) == 0:
        return np.empty((0, src.n_flags), dtype=np.int64)
    order, parent, via = src.spanning_tree
    dinv = dst.involutions
    img = np.empty((len(candidates), src.n_flags), dtype=np.int64)
    img[:, 0] = candidates
    for f in order[1:].tolist():
        img[:, f] = dinv[via[f]][img[:, parent[f]]]
    ok = np.ones(len(candidates), dtype=bool)
    for s_src, s_dst in zip(src.involutions, dinv):
        ok &= np.all(img[:, s_src] == s_dst[img], axis=1)
    return img[ok]


def _propagate_chunked(src: FlagSystem, dst: FlagSystem, candidates: np.ndarray):
    # keep each candidate block near 16M entries
    chunk = max(1, (1 << 24) // max(1, src.n_flags))
    rows = [_propagate(src, dst, candidates[i:i + chunk]) for i in range(0, len(candidates), chunk)]
    return np.concatenate(rows) if rows else np.empty((0, src.n_flags), dtype=np.int64)


def isomorphic(m1: ToroidalMap, m2: ToroidalMap) -> bool:
    a, b = m1.flags, m2.flags
    if a.n_flags != b.n_flags:
        return False
    return len(_propagate_chunked(a, b, np.arange(b.n_flags))) > 0


# ---------------------------------------------------------------------------
# translations and descended plane symmetries
# ---------------------------------------------------------------------------

def descended_translation(m: ToroidalMap, v) -> MapAutomorphism:
    """The automorphism of E/K induced by the lattice translation ``v``."""
    fs = m.flags
    n_v = m.n_vertices
    s_count = m.template.site_count
    h = m.sublattice
    ids = np.arange(n_v)
    cell, site = ids // s_count, ids % s_count
    x = cell // h.d + v[0]
    kq = np.floor_divide(x, h.a)
    x = x - kq * h.a
    y = np.mod(cell % h.d + v[1] - kq * h.b, h.d)
    vperm = (x * h.d + y) * s_count + site
    deg = m.degree
    dperm = (vperm[:, None] * deg + np.arange(deg)[None, :]).reshape(-1)
    fperm = np.empty(fs.n_flags, dtype=np.int64)
    fperm[0::2] = 2 * dperm
    fperm[1::2] = 2 * dperm + 1
    return MapAutomorphism(fperm, vperm, f"translation {tuple(v)}")


def translation_group(m: ToroidalMap) -> list[MapAutomorphism]:
    from .lattice import representatives

    return [descended_translation(m, z) for z in representatives(m.sublattice)]


def descends(s: PlaneSymmetry, k: Basis2) -> bool:
    return preserves(s.linear, k)


def descended_symmetry(m: ToroidalMap, s: PlaneSymmetry) -> MapAutomorphism:
    """The automorphism of E/K induced by a plane symmetry whose linear part preserves K."""
    t = m.template
    if not descends(s, m.sublattice):
        raise NotCompatible(f"linear part {s.linear} does not preserve {m.sublattice}")
    action = site_action(s, t)
    da = dart_action(s, t)
    if action is None or da is None:
        raise NotAnAutomorphism(f"{s.label or s.linear} is not a symmetry of {t.name}")
    deg = m.degree
    n_v = m.n_vertices
    vperm = np.empty(n_v, dtype=np.int64)
    dperm = np.empty(n_v * deg, dtype=np.int64)
    for v in range(n_v):
        i, z = m.vertex(v)
        j, c = action[i]
        mz = apply_linear(s.linear, z)
        w = m.vertex_id(j, (mz[0] + c[0], mz[1] + c[1]))
        vperm[v] = w
        dperm[v * deg:(v + 1) * deg] = [w * deg + kk for kk in da[i][1]]
    fs = m.flags
    fperm = np.empty(fs.n_flags, dtype=np.int64)
    if s.det == 1:
        fperm[0::2] = 2 * dperm
        fperm[1::2] = 2 * dperm + 1
    else:
        rev = fs.s2[2 * dperm] // 2  # reverse of the image dart
        fperm[0::2] = 2 * rev + 1
        fperm[1::2] = 2 * rev
    a = MapAutomorphism(fperm, vperm, s.label or describe(s.linear, s.shift))
    if not commutes(fs, fperm):
        raise NotAnAutomorphism(f"descended {a.label} does not commute with the flag involutions")
    return a


# ---------------------------------------------------------------------------
# automorphism groups and orbit counts
# ---------------------------------------------------------------------------

def _cell_zero_flags(m: ToroidalMap) -> np.ndarray:
    # vertex ids 0 .. S-1 are the sites at cell (0, 0)
    fs = m.flags
    return np.nonzero(fs.vertex_of < m.template.site_count)[0]


def automorphism_representatives(m: ToroidalMap) -> list[MapAutomorphism]:
    """Automorphisms sending the base flag to a flag at a cell-(0, 0) vertex.

    Every automorphism is a descended translation after exactly one of these.
    """
    fs = m.flags
    rows = _propagate_chunked(fs, fs, _cell_zero_flags(m))
    return [MapAutomorphism.from_flags(fs, r) for r in rows]


def automorphism_group(m: ToroidalMap, method: str = "full") -> list[MapAutomorphism]:
    """All automorphisms of ``m``, sorted by the image of the base flag.

    ``method="full"`` tries every flag as the image of the base flag;
    ``method="translations"`` tries only cell-(0, 0) flags and composes with
    the descended translations (same result, much faster).
    """
    fs = m.flags
    if method == "full":
        rows = _propagate_chunked(fs, fs, np.arange(fs.n_flags))
        auts = [MapAutomorphism.from_flags(fs, r) for r in rows]
    elif method == "translations":
        reps = automorphism_representatives(m)
        auts = [tr.compose(r) for tr in translation_group(m) for r in reps]
    else:
        raise ValueError(f"unknown method {method!r}")
    auts.sort(key=lambda a: int(a.flag_perm[0]))
    return auts


def orbits_under(m: ToroidalMap, gens) -> list[list[int]]:
    """Vertex orbits of the group generated by ``gens``, smallest vertex first."""
    fs = m.flags
    uf = UnionFind(m.n_vertices)
    for g in gens:
        if len(g.flag_perm) != fs.n_flags or not commutes(fs, g.flag_perm):
            raise NotAnAutomorphism(f"generator {g.label or '?'} does not commute with the flag involutions")
        for v, w in enumerate(g.vertex_perm.tolist()):
            uf.union(v, w)
    return uf.groups()


def vertex_orbit_count(m: ToroidalMap) -> int:
    gens = [descended_translation(m, (1, 0)), descended_translation(m, (0, 1))]
    gens += automorphism_representatives(m)
    return len(orbits_under(m, gens))


def vertex_orbits(m: ToroidalMap) -> list[list[int]]:
    gens = [descended_translation(m, (1, 0)), descended_translation(m, (0, 1))]
    return orbits_under(m, gens + automorphism_representatives(m))


def aut_order(m: ToroidalMap) -> int:
    return len(automorphism_representatives(m)) * m.index


def normalizer_symmetries(m: ToroidalMap) -> list[PlaneSymmetry]:
    """Point-group elements of the template whose linear part preserves the sub-lattice."""
    return [s for s in m.template.point_group if descends(s, m.sublattice)]


def normalizer_orbit_count(m: ToroidalMap) -> int:
    """Orbit count from the site action of the descending plane symmetries.

    This never looks at flags: it is the group-theoretic route used to
    cross-check :func:`vertex_orbit_count`.
    """
    t = m.template
    uf = UnionFind(t.site_count)
    for s in normalizer_symmetries(m):
        for i, (j, _) in enumerate(site_action(s, t)):
            uf.union(i, j)
    return uf.count()


def analyze(m: ToroidalMap) -> dict:
    orbs = vertex_orbits(m)
    return {
        "vertex_type": m.vertex_type.symbol,
        "template": m.template.name,
        "sublattice": m.sublattice.to_list(),
        "V": m.n_vertices,
        "E": m.n_edges,
        "F": m.n_faces,
        "flag_count": m.flags.n_flags,
        "aut_order": aut_order(m),
        "orbit_count": len(orbs),
        "orbit_sizes": sorted((len(o) for o in orbs), reverse=True),
    }


# ---------------------------------------------------------------------------
# subgroups of small finite groups
# ---------------------------------------------------------------------------

SUBGROUP_LIMIT = 10 ** 4


class FiniteGroup:
    """A permutation group given by all its elements (numpy permutations)."""

    def __init__(self, perms):
        perms = [np.asarray(p, dtype=np.int64) for p in perms]
        if len(perms) > SUBGROUP_LIMIT:
            raise TooLarge(f"group of order {len(perms)} exceeds {SUBGROUP_LIMIT}")
        self.perms = perms
        self._index = {p.tobytes(): i for i, p in enumerate(perms)}
        if len(self._index) != len(perms):
            raise ValueError("repeated group elements")
        ident = np.arange(len(perms[0]), dtype=np.int64)
        self.identity = self._index.get(ident.tobytes())
        if self.identity is None:
            raise ValueError("identity missing")
        self._mul: dict[tuple[int, int], int] = {}

    def __len__(self):
        return len(self.perms)

    def mul(self, a: int, b: int) -> int:
        """Index of ``a`` after ``b``."""
        key = (a, b)
        r = self._mul.get(key)
        if r is None:
            p = self.perms[a][self.perms[b]]
            r = self._index.get(p.tobytes())
            if r is None:
                raise ValueError("elements are not closed under composition")
            self._mul[key] = r
        return r

    def cyclic(self, a: int) -> frozenset:
        out = {self.identity}
        x = a
        while x not in out:
            out.add(x)
            x = self.mul(a, x)
        return frozenset(out)

    def closure(self, gens) -> frozenset:
        out = {self.identity}
        frontier = [self.identity]
        gens = list(gens)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.mul(g, x)
                    if y not in out:
                        out.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(out)

    def is_subgroup(self, elems) -> bool:
        elems = set(elems)
        if self.identity not in elems:
            return False
        return all(self.mul(a, b) in elems for a in elems for b in elems)


def subgroups(g: FiniteGroup, containing=()) -> list[frozenset]:
    """All subgroups of ``g`` (containing the given elements), by cyclic extension.

    Starting from the group generated by ``containing``, every known subgroup
    is extended by each cyclic subgroup it does not contain until nothing new
    appears.  Every subgroup is generated by its cyclic subgroups, so this is
    exhaustive.  Sorted by order, then by element indices.
    """
    if len(g) > SUBGROUP_LIMIT:
        raise TooLarge(f"group of order {len(g)} exceeds {SUBGROUP_LIMIT}")
    base = g.closure(containing)
    cyc = sorted({g.cyclic(a) for a in range(len(g))}, key=lambda c: (len(c), sorted(c)))
    gen_of = {c: min(c - {g.identity}, default=g.identity) for c in cyc}
    found = {base}
    layer = [base]
    while layer:
        nxt = []
        for h in layer:
            for c in cyc:
                if c <= h:
                    continue
                new = g.closure(list(h) + [gen_of[c]])
                if new not in found:
                    found.add(new)
                    nxt.append(new)
        layer = nxt
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def subgroups_bruteforce(g: FiniteGroup) -> list[frozenset]:
    """Every subset closed under composition (only for tiny groups)."""
    n = len(g)
    if n > 14:
        raise TooLarge("brute-force subgroup enumeration is limited to order 14")
    others = [i for i in range(n) if i != g.identity]
    out = set()
    for r in range(len(others) + 1):
        for sub in combinations(others, r):
            s = frozenset(sub) | {g.identity}
            if g.is_subgroup(s):
                out.add(s)
    return sorted(out, key=lambda s: (len(s), sorted(s)))


# ---------------------------------------------------------------------------
# orbit spectrum
# ---------------------------------------------------------------------------

@dataclass
class SpectrumReport:
    template: str
    vertex_type: str
    quotient: Basis2
    aut_order: int
    translation_order: int
    subgroup_count: int
    spectrum: list[int]
    witnesses: dict[int, dict]
    unlabelled_automorphisms: int
    full_spectrum: list[int] | None = None
    full_subgroup_count: int | None = None
    full_only: dict[int, dict] = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {
            "template": self.template,
            "vertex_type": self.vertex_type,
            "quotient": self.quotient.to_list(),
            "aut_order": self.aut_order,
            "translation_order": self.translation_order,
            "subgroup_count": self.subgroup_count,
            "spectrum": self.spectrum,
            "witnesses": {str(k): v for k, v in sorted(self.witnesses.items())},
            "unlabelled_automorphisms": self.unlabelled_automorphisms,
        }
        if self.full_spectrum is not None:
            out["full_spectrum"] = self.full_spectrum
            out["full_subgroup_count"] = self.full_subgroup_count
            out["full_only"] = {str(k): v for k, v in sorted(self.full_only.items())}
        return out


def _element_labels(m: ToroidalMap, auts: list[MapAutomorphism]) -> dict[bytes, PlaneSymmetry]:
    """Map each automorphism (by flag permutation) to a plane symmetry it descends from."""
    out = {}
    trans = translation_group(m)
    for s in normalizer_symmetries(m):
        d = descended_symmetry(m, s)
        for tr in trans:
            out.setdefault(tr.compose(d).key, s)
    return out


def _witness(m: ToroidalMap, g: FiniteGroup, sub: frozenset, auts, labels, translations) -> dict:
    t = m.template
    kinds = {}
    for i in sorted(sub):
        s = labels.get(auts[i].key)
        if s is None:
            kinds.setdefault("unlabelled", {"description": "automorphism not descended from the tiling"})
            continue
        d = describe(s.linear, s.shift)
        if d not in kinds:
            entry = {"description": d, "linear": [list(r) for r in s.linear]}
            if s.kind == "rotation":
                entry["centres"] = sorted({c["at"] for c in rotation_centers(s, t)})
            kinds[d] = entry
    return {
        "order": len(sub),
        "translations": len(sub & translations),
        "elements": [kinds[k] for k in sorted(kinds)],
    }


def _vertex_orbit_count_of(g: FiniteGroup, sub, auts, n_vertices: int) -> int:
    uf = UnionFind(n_vertices)
    for i in sub:
        for v, w in enumerate(auts[i].vertex_perm.tolist()):
            uf.union(v, w)
    return uf.count()


def orbit_spectrum(t: TilingTemplate, full: bool = False) -> SpectrumReport:
    """Orbit counts of symmetry groups containing all lattice translations.

    Computed on the smallest polyhedral square quotient ``X = E/nZ^2``: its
    automorphism group is enumerated by flag propagation, and the orbit
    count of every subgroup containing the descended translations is taken
    on ``V(X)``.  With ``full=True`` every subgroup of ``Aut(X)`` is also
    used, which corresponds to plane groups that only contain ``nZ^2``.
    """
    n = minimal_square_scale(t)
    x = build(t, Basis2.scalar(n))
    auts = automorphism_group(x, method="full")
    g = FiniteGroup([a.flag_perm for a in auts])
    trans_idx = frozenset(g._index[tr.key] for tr in translation_group(x))
    labels = _element_labels(x, auts)
    unlabelled = sum(1 for a in auts if a.key not in labels)

    subs = subgroups(g, containing=sorted(trans_idx))
    spectrum: dict[int, frozenset] = {}
    for sub in subs:
        c = _vertex_orbit_count_of(g, sub, auts, x.n_vertices)
        spectrum.setdefault(c, sub)
    rep = SpectrumReport(
        template=t.name,
        vertex_type=t.vertex_type.symbol,
        quotient=x.sublattice,
        aut_order=len(auts),
        translation_order=len(trans_idx),
        subgroup_count=len(subs),
        spectrum=sorted(spectrum),
        witnesses={c: _witness(x, g, s, auts, labels, trans_idx) for c, s in spectrum.items()},
        unlabelled_automorphisms=unlabelled,
    )
    if full:
        all_subs = subgroups(g)
        fspec: dict[int, frozenset] = {}
        for sub in all_subs:
            c = _vertex_orbit_count_of(g, sub, auts, x.n_vertices)
            fspec.setdefault(c, sub)
        rep.full_spectrum = sorted(fspec)
        rep.full_subgroup_count = len(all_subs)
        rep.full_only = {
            c: _witness(x, g, s, auts, labels, trans_idx) for c, s in fspec.items() if c not in spectrum
        }
    return rep
