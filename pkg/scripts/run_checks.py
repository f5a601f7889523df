#!/usr/bin/env python3
"""Run every desk-scale verification and print a summary table.

Covers the layered family through a chosen index: homology and meridian
calibration, exhaustive meridian-disc search with the exponential lower
bound, the boundary pre-core length bound, parallelity-bundle claims on the
minimal discs, and the one-crossing core-curve certificates with their arc
bounds.  Everything recomputes from scratch; expect roughly a minute with
the default settings.
"""
import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from coretorus import (SearchBudget, check_claims, face_bound_check, fib,
                       find_meridian_discs, first_homology, make_61_curve,
                       minimal_complexity_disc, push_off, tet_bound_check,
                       verify_61_1, verify_61_2)
from coretorus.curves import min_boundary_precore_length
from coretorus.layered import family


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-disc-index", type=int, default=3,
                    help="largest family index for the disc enumeration")
    ap.add_argument("--max-claims-index", type=int, default=2)
    ap.add_argument("--max-arith-index", type=int, default=20)
    args = ap.parse_args()

    rows = []

    def row(name, status, detail):
        rows.append((name, status, detail))
        print(f"{name:34} {status:6} {detail}")

    t0 = time.time()
    for i in range(args.max_disc_index + 1):
        lt = family(i)
        h = first_homology(lt.tri)
        ok = h.h1_rank == 1 and not h.h1_torsion and str(h.boundary_map_kernel_slope) == "(0,1)"
        cuts = sorted(h.boundary_edge_cuts.values())
        row(f"homology T_{i}", "ok" if ok else "FAIL",
            f"H1=Z, meridian cuts {cuts}")

    for i in range(args.max_disc_index + 1):
        rep = verify_61_1(i)
        row(f"theorem 6.1(1) T_{i}", rep.status,
            f"min pieces {rep.details.get('min_pieces')} >= fib({i + 3}) = {fib(i + 3)}")

    worst = None
    for i in range(args.max_arith_index + 1):
        rep = verify_61_2(i)
        if rep.status != "pass":
            worst = i
    row("theorem 6.1(2) i <= %d" % args.max_arith_index,
        "ok" if worst is None else "FAIL", "|n x - y| >= x/3 and >= phi^(i-1)")

    for i in range(args.max_claims_index + 1):
        lt = family(i)
        res = minimal_complexity_disc(lt.tri, SearchBudget(fib(i + 6) - 4))
        claims = check_claims(lt.tri, res.disc, minimal_disc=res.disc)
        row(f"claims 1-2 T_{i}",
            "ok" if claims.claim1 and claims.claim2 else "FAIL",
            f"minimal disc ({res.disc.boundary_length},{res.disc.weight}), "
            f"certified={res.certified}, "
            f"{claims.details['components']} bundle component(s)")

    for i in range(args.max_disc_index + 1):
        lt = family(i)
        witness = None
        if i <= args.max_disc_index:
            found = find_meridian_discs(lt.tri, SearchBudget(fib(i + 6) - 4))
            witness = found.discs[0] if found.discs else None
        cert = make_61_curve(lt, witness_disc=witness)
        fb = face_bound_check(cert.curve)
        detail = (f"kind={cert.kind}, hits={cert.one_skeleton_hits}, "
                  f"pairing={cert.algebraic_pairing}, faces<= {fb['max_arcs']}")
        if i >= 1:
            tb = tet_bound_check(push_off(cert.curve))
            detail += f", tets<= {tb['max_arcs']}"
        row(f"core-curve certificate T_{i}",
            "ok" if cert.one_skeleton_hits == 1 and fb["ok"] else "FAIL", detail)

    for i in (0, 5, 10):
        rep = min_boundary_precore_length(i)
        row(f"boundary pre-core length T_{i}",
            "ok" if rep["ok"] else "FAIL",
            f"min {rep['min_length']} at n={rep['minimizing_n']}")

    bad = [r for r in rows if r[1] not in ("ok", "pass")]
    print(f"\n{len(rows)} checks, {len(rows) - len(bad)} ok, "
          f"{len(bad)} failing, {time.time() - t0:.1f}s")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
