"""Command-line front end.

Every command writes one document (JSON unless a format says otherwise) to
standard output or ``--out``.  Exit status: 0 on success, 1 on domain errors
or failed expectations, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import covers, orbits
from .orbits import ORBIT_BOUNDS
from .errors import SemitorusError
from .lattice import Basis2, hnf_bases_upto
from .tilings import NAMES, template
from .torusmap import build, euler_characteristic, face_census, is_semi_equivelar, minimal_polyhedral_index, \
    minimal_square_scale, try_build

def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _basis(text: str) -> Basis2:
    try:
        b = Basis2.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))
    if b.det == 0:
        raise argparse.ArgumentTypeError(f"basis {text} has zero determinant")
    return b


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return n


# -- commands ----------------------------------------------------------------

def cmd_tile_info(args) -> tuple[str, int]:
    t = template(args.type)
    doc = t.to_json()
    n, b = minimal_polyhedral_index(t)
    doc["minimal_polyhedral_index"] = {"index": n, "basis": b.to_list()}
    doc["minimal_square_scale"] = minimal_square_scale(t)
    doc["orbit_bound"] = ORBIT_BOUNDS[t.name]
    return dumps(doc), 0


def cmd_tile_spectrum(args) -> tuple[str, int]:
    rep = orbits.orbit_spectrum(template(args.type), full=args.full)
    return dumps(rep.to_json()), 0


def cmd_map_build(args) -> tuple[str, int]:
    m = build(args.type, args.basis)
    doc = {
        "vertex_type": is_semi_equivelar(m).symbol,
        "template": m.template.name,
        "sublattice": m.sublattice.to_list(),
        "V": m.n_vertices, "E": m.n_edges, "F": m.n_faces,
        "euler_characteristic": euler_characteristic(m),
        "face_census": {str(p): c for p, c in face_census(m).items()},
        "polyhedral": True,
    }
    return dumps(doc), 0


def cmd_map_analyze(args) -> tuple[str, int]:
    m = build(args.type, args.basis)
    doc = orbits.analyze(m)
    if args.format == "tsv":
        keys = ["vertex_type", "V", "E", "F", "flag_count", "aut_order", "orbit_count"]
        return "\t".join(keys) + "\n" + "\t".join(str(doc[k]) for k in keys) + "\n", 0
    return dumps(doc), 0


def cmd_map_export(args) -> tuple[str, int]:
    m = build(args.type, args.basis)
    fmt = args.format
    if fmt == "json":
        return dumps(m.to_json()), 0
    if fmt == "dot":
        return m.to_dot(), 0
    if fmt == "tsv":
        return m.to_tsv(), 0
    return m.to_faces_text(), 0


def cmd_cover_square(args) -> tuple[str, int]:
    x = build(args.type, args.basis)
    cert = covers.square_cover(x)
    check = covers.verify_cover(cert)
    doc = cert.to_json()
    doc["verified"] = check.ok
    doc["source"]["orbit_count"] = orbits.vertex_orbit_count(cert.source)
    doc["target"]["orbit_count"] = orbits.vertex_orbit_count(x)
    return dumps(doc), 0 if check.ok else 1


def cmd_cover_find(args) -> tuple[str, int]:
    x = build(args.type, args.basis)
    rep = covers.find_k_orbital_cover(x, args.orbits, args.max_ratio, jobs=args.jobs, progress=args.progress)
    doc = rep.to_json()
    doc["target"]["orbit_count"] = orbits.vertex_orbit_count(x)
    if rep.certificate is not None:
        doc["verified"] = bool(covers.verify_cover(rep.certificate))
        if args.certificate:
            with open(args.certificate, "w") as fh:
                fh.write(dumps(rep.certificate.to_json()))
    status = 0
    if args.expect and args.expect != rep.outcome:
        status = 1
    return dumps(doc), status


def cmd_cover_verify(args) -> tuple[str, int]:
    with open(args.certificate) as fh:
        cert = covers.CoverCertificate.from_json(json.load(fh))
    check = covers.verify_cover(cert)
    doc = {"valid": check.ok, "diagnostic": check.diagnostic, "sheets": cert.sheets}
    return dumps(doc), 0 if check.ok else 1


def cmd_verify_lemma(args) -> tuple[str, int]:
    rep = covers.nonexistence_report("[4,6,12]", 5)
    doc = {
        "vertex_type": rep["vertex_type"],
        "spectrum": rep["spectrum"],
        "five_orbital": rep["verdict"],
        "witnesses": rep["spectrum_report"]["witnesses"],
        "full_spectrum": rep["spectrum_report"]["full_spectrum"],
        "cases": rep["cases"],
        "disagreements": rep["disagreements"],
    }
    return dumps(doc), 0 if rep["verdict"] == "unachievable" else 1


def cmd_verify_presets(args) -> tuple[str, int]:
    out = []
    for p in covers.PRESETS:
        w = _first_with_orbits(template(p["type"]), ORBIT_BOUNDS[template(p["type"]).name], args.max_index)
        out.append(covers.preset_report(p, w))
    return dumps({"presets": out}), 0


def _first_with_orbits(t, k: int, max_index: int):
    for b in hnf_bases_upto(max_index):
        m = try_build(t, b)
        if m is not None and orbits.vertex_orbit_count(m) == k:
            return m
    return None


def table_orbit_bounds(max_index: int, seed: int = 0, sample: int | None = None, names=NAMES) -> str:
    """TSV: per vertex type the largest observed orbit count and a witness basis."""
    rng = random.Random(seed)
    rows = ["vertex_type\ttemplate\tbound\tmax_observed\tmaps\twitness\tsharp"]
    for name in names:
        t = template(name)
        bases = list(hnf_bases_upto(max_index))
        if sample is not None and sample < len(bases):
            bases = sorted(rng.sample(bases, sample), key=lambda b: (b.det, b))
        best, witness, n_maps = 0, None, 0
        for b in bases:
            m = try_build(t, b)
            if m is None:
                continue
            n_maps += 1
            c = orbits.vertex_orbit_count(m)
            if c > best:
                best, witness = c, b
        bound = ORBIT_BOUNDS[name]
        wit = ",".join(map(str, witness.to_list())) if witness else "-"
        rows.append(f"{t.vertex_type.symbol}\t{name}\t{bound}\t{best}\t{n_maps}\t{wit}\t"
                    f"{'yes' if best == bound else 'no'}")
    return "\n".join(rows) + "\n"


def cmd_table(args) -> tuple[str, int]:
    doc = table_orbit_bounds(args.max_index, args.seed, args.sample)
    ok = all(int(r.split("\t")[3]) <= int(r.split("\t")[2]) for r in doc.splitlines()[1:])
    return doc, 0 if ok else 1


# -- parser --------------------------------------------------------------------

def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="semitorus", description="Semi-equivelar toroidal maps and their covers.")
    p.add_argument("--jobs", type=_positive, default=1, help="worker processes for searches")
    sub = p.add_subparsers(dest="group", required=True)

    tile = sub.add_parser("tile").add_subparsers(dest="cmd", required=True)
    ti = tile.add_parser("info")
    ti.add_argument("type")
    ti.add_argument("--out", help="write the document here instead of standard output")
    ti.set_defaults(func=cmd_tile_info)
    ts = tile.add_parser("spectrum")
    ts.add_argument("type")
    ts.add_argument("--full", action="store_true", help="also use subgroups without all translations")
    ts.add_argument("--out")
    ts.set_defaults(func=cmd_tile_spectrum)

    mp = sub.add_parser("map").add_subparsers(dest="cmd", required=True)
    for name, func, formats in (("build", cmd_map_build, ["json"]),
                                ("analyze", cmd_map_analyze, ["json", "tsv"]),
                                ("export", cmd_map_export, ["json", "tsv", "dot", "faces"])):
        q = mp.add_parser(name)
        q.add_argument("--type", required=True)
        q.add_argument("--basis", required=True, type=_basis)
        q.add_argument("--format", choices=formats, default="json")
        q.add_argument("--out")
        q.set_defaults(func=func)

    cv = sub.add_parser("cover").add_subparsers(dest="cmd", required=True)
    q = cv.add_parser("square")
    q.add_argument("--type", required=True)
    q.add_argument("--basis", required=True, type=_basis)
    q.add_argument("--out")
    q.set_defaults(func=cmd_cover_square)
    q = cv.add_parser("find")
    q.add_argument("--type", required=True)
    q.add_argument("--basis", required=True, type=_basis)
    q.add_argument("--orbits", required=True, type=_positive)
    q.add_argument("--max-ratio", type=_positive, default=64)
    q.add_argument("--expect", choices=["found", "exhausted"])
    q.add_argument("--certificate", help="also write the certificate here")
    q.add_argument("--progress", action="store_true")
    q.add_argument("--out")
    q.set_defaults(func=cmd_cover_find)
    q = cv.add_parser("verify")
    q.add_argument("certificate")
    q.add_argument("--out")
    q.set_defaults(func=cmd_cover_verify)

    vf = sub.add_parser("verify").add_subparsers(dest="cmd", required=True)
    q = vf.add_parser("lemma-4612")
    q.add_argument("--out")
    q.set_defaults(func=cmd_verify_lemma)
    q = vf.add_parser("presets")
    q.add_argument("--max-index", type=_positive, default=36)
    q.add_argument("--out")
    q.set_defaults(func=cmd_verify_presets)

    tb = sub.add_parser("table").add_subparsers(dest="cmd", required=True)
    q = tb.add_parser("orbit-bounds")
    q.add_argument("--max-index", type=_positive, required=True)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--sample", type=_positive, help="only this many random bases per type")
    q.add_argument("--out")
    q.set_defaults(func=cmd_table)
    return p


def run(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        text, status = args.func(args)
    except SemitorusError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
