"""Covering maps between toroidal quotients and the k-orbital cover search.

A cover ``E/L -> E/K`` with ``L`` inside ``K`` sends vertex ``(site, cell)``
to the vertex with the same site and the cell reduced modulo ``K``.  Every
construction here is re-checked by :func:`verify_cover`, which only looks at
the two maps and the vertex table.
"""

from __future__ import annotations

import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import orbits
from .errors import NotCompatible, NotPolyhedral, NotSublattice
from .lattice import (
    Basis2,
    cover_exponent,
    hnf,
    hnf_bases,
    index,
    is_sublattice,
    preserves,
    sheet_count,
    transform,
)
from .tilings import TilingTemplate, VertexType, describe, plane_orbit_count, template as get_template
from .torusmap import ToroidalMap, build, try_build


@dataclass(frozen=True, eq=False)
class CoverCertificate:
    source: ToroidalMap
    target: ToroidalMap
    vertex_map: np.ndarray
    sheets: int
    provenance: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "source": {"vertex_type": self.source.vertex_type.symbol,
                       "sublattice": self.source.sublattice.to_list(),
                       "V": self.source.n_vertices},
            "target": {"vertex_type": self.target.vertex_type.symbol,
                       "sublattice": self.target.sublattice.to_list(),
                       "V": self.target.n_vertices},
            "vertex_map": self.vertex_map.tolist(),
            "sheets": self.sheets,
            "provenance": self.provenance,
        }

    @classmethod
    def from_json(cls, doc: dict) -> CoverCertificate:
        vt = doc["source"]["vertex_type"]
        y = build(vt, Basis2(*doc["source"]["sublattice"]))
        x = build(doc["target"]["vertex_type"], Basis2(*doc["target"]["sublattice"]))
        return cls(y, x, np.asarray(doc["vertex_map"], dtype=np.int64), int(doc["sheets"]),
                   dict(doc.get("provenance", {})))


@dataclass(frozen=True)
class CoverCheck:
    ok: bool
    diagnostic: str = ""

    def __bool__(self):
        return self.ok


def _projection(y: ToroidalMap, x: ToroidalMap) -> np.ndarray:
    s_count = y.template.site_count
    ids = np.arange(y.n_vertices)
    cell, site = ids // s_count, ids % s_count
    hy, hx = y.sublattice, x.sublattice
    cx, cy = cell // hy.d, cell % hy.d
    kq = np.floor_divide(cx, hx.a)
    rx = cx - kq * hx.a
    ry = np.mod(cy - kq * hx.b, hx.d)
    return (rx * hx.d + ry) * s_count + site


def cover_between(y: ToroidalMap, x: ToroidalMap, provenance: dict | None = None) -> CoverCertificate:
    """Certificate for the natural projection ``E/L -> E/K`` (``L`` inside ``K``)."""
    if y.template is not x.template:
        raise NotCompatible("covers between different vertex types are not supported")
    if not is_sublattice(y.sublattice, x.sublattice):
        raise NotSublattice(f"{y.sublattice} is not contained in {x.sublattice}")
    sheets = index(y.sublattice) // index(x.sublattice)
    prov = {"construction": "projection E/L -> E/K"}
    prov.update(provenance or {})
    return CoverCertificate(y, x, _projection(y, x), sheets, prov)


def identity_cover(x: ToroidalMap) -> CoverCertificate:
    return CoverCertificate(x, x, np.arange(x.n_vertices), 1, {"construction": "identity"})


def square_cover(x: ToroidalMap, max_multiple: int = 12) -> CoverCertificate:
    """The cover by ``E/mZ^2`` with ``m`` the cover exponent of ``K``.

    If ``E/mZ^2`` is not polyhedral the least multiple of ``m`` that is gets
    used instead; the certificate records both.
    """
    k = x.sublattice
    m = cover_exponent(k)
    for mult in range(1, max_multiple + 1):
        y = try_build(x.template, Basis2.scalar(m * mult))
        if y is not None:
            return cover_between(y, x, {
                "construction": "square cover",
                "exponent": m,
                "scale": m * mult,
                "multiple": mult,
                "sheet_formula": sheet_count(k) * mult * mult,
            })
    raise NotPolyhedral(f"no polyhedral square cover up to {max_multiple} * {m}")


def verify_cover(c: CoverCertificate) -> CoverCheck:
    """Check surjectivity, constant fibres, neighbourhood bijection and face-cycles."""
    y, x, f = c.source, c.target, np.asarray(c.vertex_map)
    if len(f) != y.n_vertices:
        return CoverCheck(False, f"vertex map has {len(f)} entries for {y.n_vertices} vertices")
    if f.min(initial=0) < 0 or f.max(initial=0) >= x.n_vertices:
        return CoverCheck(False, "vertex map leaves the target")
    fib = np.bincount(f, minlength=x.n_vertices)
    if np.any(fib == 0):
        return CoverCheck(False, f"vertex {int(np.nonzero(fib == 0)[0][0])} of the target is not hit")
    if np.any(fib != c.sheets):
        bad = int(np.nonzero(fib != c.sheets)[0][0])
        return CoverCheck(False, f"fibre over {bad} has {int(fib[bad])} vertices, expected {c.sheets}")
    if y.degree != x.degree:
        return CoverCheck(False, "degrees differ")
    deg = y.degree
    img = f[y.heads]  # images of neighbours, in rotation order at each source vertex
    tgt = x.heads[f]
    for v in range(y.n_vertices):
        a, b = img[v].tolist(), tgt[v].tolist()
        if len(set(a)) != deg or set(a) != set(b):
            return CoverCheck(False, f"neighbours of {v} do not map bijectively onto those of {int(f[v])}")
        r = b.index(a[0])
        fa = y.face_cycle(v)
        fb = x.face_cycle(int(f[v]))
        # face i lies between darts i and i+1
        if all(a[i] == b[(r + i) % deg] for i in range(deg)):
            ok = all(fa[i] == fb[(r + i) % deg] for i in range(deg))
        elif all(a[i] == b[(r - i) % deg] for i in range(deg)):
            ok = all(fa[i] == fb[(r - i - 1) % deg] for i in range(deg))
        else:
            return CoverCheck(False, f"rotation at {v} is not carried to the rotation at its image")
        if not ok:
            return CoverCheck(False, f"face-cycle at {v} differs from its image")
    xfaces = {tuple(sorted(fc)) for fc in x.faces}
    for fid, fc in enumerate(y.faces):
        if tuple(sorted(int(f[v]) for v in fc)) not in xfaces:
            return CoverCheck(False, f"face {fid} of the source does not map onto a face")
    return CoverCheck(True, "")


def compose(c1: CoverCertificate, c2: CoverCertificate) -> CoverCertificate:
    """``c2`` after ``c1`` for ``c1: Z -> Y`` and ``c2: Y -> X``."""
    if c1.target is not c2.source and not (
        c1.target.template is c2.source.template and c1.target.sublattice == c2.source.sublattice
    ):
        raise NotCompatible("certificates do not chain")
    return CoverCertificate(
        c1.source, c2.target, np.asarray(c2.vertex_map)[np.asarray(c1.vertex_map)],
        c1.sheets * c2.sheets, {"construction": "composition", "parts": [c1.provenance, c2.provenance]},
    )


def induced_automorphism(a: orbits.MapAutomorphism, y: ToroidalMap, x: ToroidalMap) -> orbits.MapAutomorphism:
    """Push an automorphism of ``Y = E/L`` down to ``X = E/K``.

    Raises NotCompatible if ``a`` does not respect the fibres of the projection.
    """
    p = _projection(y, x)
    deg = y.degree
    # flag 2*(v*deg + k) + e of Y lies over flag 2*(p(v)*deg + k) + e of X
    fy = np.arange(2 * y.n_vertices * deg)
    dart = fy // 2
    proj = 2 * (p[dart // deg] * deg + dart % deg) + fy % 2
    img = proj[a.flag_perm]
    out = np.full(x.flags.n_flags, -1, dtype=np.int64)
    out[proj] = img
    if np.any(out[proj] != img):
        raise NotCompatible("automorphism does not preserve the fibres of the projection")
    if np.any(out < 0):
        raise NotCompatible("projection is not onto the flags")
    return orbits.MapAutomorphism.from_flags(x.flags, out, a.label)


# ---------------------------------------------------------------------------
# k-orbital cover search
# ---------------------------------------------------------------------------

@dataclass
class CoverSearchReport:
    target: dict
    requested_orbits: int
    bound: int
    outcome: str  # "found" or "exhausted"
    certificate: CoverCertificate | None = None
    orbit_count: int | None = None
    ratio: int | None = None
    candidates: int = 0
    flag_checked: int = 0

    def to_json(self) -> dict:
        out = {
            "target": self.target,
            "requested_orbits": self.requested_orbits,
            "bound": self.bound,
            "outcome": self.outcome,
            "candidates_examined": self.candidates,
            "flag_checked": self.flag_checked,
        }
        if self.certificate is not None:
            out["found"] = {
                "sublattice": self.certificate.source.sublattice.to_list(),
                "ratio": self.ratio,
                "orbit_count": self.orbit_count,
                "sheets": self.certificate.sheets,
                "V": self.certificate.source.n_vertices,
            }
        return out


def screen_orbit_count(t: TilingTemplate, l: Basis2) -> int:
    """Vertex orbit count of ``E/L`` from the point symmetries preserving ``L``.

    Site-level union-find only; no map is built.
    """
    from .tilings import site_action

    parent = list(range(t.site_count))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for s in t.point_group:
        if preserves(s.linear, l):
            for i, (j, _) in enumerate(site_action(s, t)):
                a, b = find(i), find(j)
                if a != b:
                    parent[max(a, b)] = min(a, b)
    return sum(1 for i in range(t.site_count) if find(i) == i)


def candidate_sublattices(k: Basis2, ratio: int) -> list[Basis2]:
    return sorted({hnf(transform(tb, k)) for tb in hnf_bases(ratio)})


def _screen_batch(args):
    name, k, ratio = args
    t = get_template(name)
    return [(l, screen_orbit_count(t, l)) for l in candidate_sublattices(k, ratio)]


def find_k_orbital_cover(x: ToroidalMap, k: int, bound: int, jobs: int = 1,
                         flag_every_candidate: bool = False, progress: bool = False) -> CoverSearchReport:
    """First ``E/L`` (``L`` inside ``K``, ``[K:L] <= bound``) with exactly ``k`` vertex orbits.

    Candidates are visited by increasing ratio, then by HNF.  Each is screened
    with the group-theoretic count; a hit is built, its orbit count recomputed
    with the flag engine and its certificate verified before it is returned.
    ``flag_every_candidate`` runs the flag engine on every polyhedral
    candidate instead of screening (slow, for cross-checks).
    """
    t = x.template
    target = {"vertex_type": t.vertex_type.symbol, "sublattice": x.sublattice.to_list()}
    rep = CoverSearchReport(target, k, bound, "exhausted")
    batches = [(t.name, x.sublattice, r) for r in range(1, bound + 1)]
    if jobs > 1 and not flag_every_candidate:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            screened = list(ex.map(_screen_batch, batches))
    else:
        screened = None
    for i, args in enumerate(batches):
        ratio = args[2]
        rows = screened[i] if screened is not None else None
        if rows is None:
            ls = candidate_sublattices(x.sublattice, ratio)
            rows = [(l, None) for l in ls] if flag_every_candidate else [(l, screen_orbit_count(t, l)) for l in ls]
        for l, cheap in rows:
            rep.candidates += 1
            if cheap is not None and cheap != k:
                continue
            y = try_build(t, l)
            if y is None:
                continue
            rep.flag_checked += 1
            count = orbits.vertex_orbit_count(y)
            if count != k:
                continue
            cert = cover_between(y, x, {"construction": "k-orbital cover search", "ratio": ratio})
            check = verify_cover(cert)
            if not check:
                raise AssertionError(f"search produced an invalid certificate: {check.diagnostic}")
            rep.outcome = "found"
            rep.certificate, rep.orbit_count, rep.ratio = cert, count, ratio
            return rep
        if progress:
            print(f"ratio {ratio}: {rep.candidates} candidates", file=sys.stderr)
    return rep


# ---------------------------------------------------------------------------
# spectrum-level reports
# ---------------------------------------------------------------------------

# axis classes of the reflections of [4,6,12], in the (A, B) frame: S1 axes
# are parallel to A, B, B - A; S2 axes to A + B, 2B - A, B - 2A
_S1 = {(1, 0), (0, 1), (1, -1)}
_S2 = {(1, 1), (1, -2), (2, -1)}


def lemma_cases(t: TilingTemplate) -> list[dict]:
    """Orbit counts of translations plus one or two point symmetries, with the expected values.

    Each row: case number, generator descriptions, computed orbit count on
    the plane tiling, the expected count(s), and whether they agree.
    """
    from .tilings import axis_direction

    pg = t.point_group
    rots = [s for s in pg if s.kind == "rotation"]
    refl = [s for s in pg if s.kind == "reflection"]

    def cls(s):
        ax = axis_direction(s.linear)
        return "S1" if ax in _S1 else "S2" if ax in _S2 else "?"

    rows = [{"case": 1, "generators": [], "computed": plane_orbit_count(t, []), "expected": [12]}]
    stated = {6: [2], 3: [3], 2: [6]}  # rotation order -> stated count
    seen = set()
    for s in rots:
        n = s.order
        if n in seen:
            continue
        seen.add(n)
        rows.append({"case": 2, "generators": [describe(s.linear, s.shift)],
                     "computed": plane_orbit_count(t, [s]), "expected": stated.get(n, [])})
    for s in refl:
        rows.append({"case": 3, "generators": [describe(s.linear, s.shift) + f" [{cls(s)}]"],
                     "computed": plane_orbit_count(t, [s]), "expected": [6]})
    for i, a in enumerate(refl):
        for b in refl[i + 1:]:
            exp = [2] if cls(a) == cls(b) else [1, 3]
            rows.append({"case": 4,
                         "generators": [describe(a.linear, a.shift) + f" [{cls(a)}]",
                                        describe(b.linear, b.shift) + f" [{cls(b)}]"],
                         "computed": plane_orbit_count(t, [a, b]), "expected": exp})
    for a in refl:
        for r in rots:
            rows.append({"case": 5,
                         "generators": [describe(a.linear, a.shift), describe(r.linear, r.shift)],
                         "computed": plane_orbit_count(t, [a, r]), "expected": [1, 2, 3]})
    for row in rows:
        row["agrees"] = row["computed"] in row["expected"]
    return rows


def nonexistence_report(t, k: int) -> dict:
    t = get_template(t)
    spec = orbits.orbit_spectrum(t, full=True)
    out = {
        "vertex_type": t.vertex_type.symbol,
        "k": k,
        "verdict": "achievable" if k in spec.spectrum else "unachievable",
        "spectrum": spec.spectrum,
        "witness": spec.witnesses.get(k),
        "spectrum_report": spec.to_json(),
        "note": "spectrum over symmetry groups containing all lattice translations, "
                f"computed on E/{spec.quotient.a}Z^2",
    }
    if t.vertex_type == VertexType.parse("[4,6,12]"):
        cases = lemma_cases(t)
        out["cases"] = cases
        out["disagreements"] = [c for c in cases if not c["agrees"]]
    return out


# presets: named subgroups G and G' with their stated plane orbit counts
PRESETS = [
    {"id": "E3", "type": "[3^4,6]", "G": ["rho3"], "G_count": 3, "Gp": ["rho3", "tau3"], "Gp_count": 2},
    {"id": "E4", "type": "[3,6,3,6]", "G": [], "G_count": 3, "Gp": ["rho4"], "Gp_count": 2},
    {"id": "E5", "type": "[3,4,6,4]", "G": ["tau5"], "G_count": 3, "Gp": ["tau5", "rho5"], "Gp_count": 2},
    {"id": "E6", "type": "[3,12^2]", "G": ["rho6"], "G_count": 3, "Gp": ["rho6", "tau6"], "Gp_count": 2},
    {"id": "E7 case 1", "type": "[4,6,12]", "G": ["tau7"], "G_count": 6, "Gp": ["tau7", "gamma7"], "Gp_count": 2},
    {"id": "E7 case 2", "type": "[4,6,12]", "G": ["tau7"], "G_count": 6, "Gp": ["tau7", "omega7"], "Gp_count": 3},
    {"id": "E7 case 5", "type": "[4,6,12]", "G": ["rho7_sq"], "G_count": 4, "Gp": ["rho7"], "Gp_count": 2},
    {"id": "E7 case 6", "type": "[4,6,12]", "G": ["tau7", "lambda7"], "G_count": 3, "Gp": [], "Gp_count": None},
]


def _named_count(t: TilingTemplate, names: list[str]):
    gens, missing = [], []
    for n in names:
        try:
            gens.append(t.generator(n))
        except KeyError:
            missing.append(n)
    if missing:
        return None, missing
    return plane_orbit_count(t, gens), []


def preset_report(p: dict, witness: ToroidalMap | None = None) -> dict:
    """Stated versus computed counts for one preset, plus its square cover."""
    t = get_template(p["type"])
    out = {"id": p["id"], "vertex_type": t.vertex_type.symbol}
    for key in ("G", "Gp"):
        if p[f"{key}_count"] is None:
            continue
        c, missing = _named_count(t, p[key])
        out[key] = {"generators": p[key], "stated": p[f"{key}_count"], "computed": c,
                    "missing": missing, "agrees": c == p[f"{key}_count"]}
    if witness is not None:
        cert = square_cover(witness)
        out["square_cover"] = {
            "target": witness.sublattice.to_list(),
            "target_orbits": orbits.vertex_orbit_count(witness),
            "scale": cert.provenance["scale"],
            "sheets": cert.sheets,
            "orbit_count": orbits.vertex_orbit_count(cert.source),
            "verified": bool(verify_cover(cert)),
        }
    return out


def certificate_dumps(c: CoverCertificate) -> str:
    return json.dumps(c.to_json(), sort_keys=True)
