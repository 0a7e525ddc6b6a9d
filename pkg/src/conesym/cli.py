"""Command-line driver: runs the certification suite over a range of sizes
and optionally exports the graphs.

Reports are deterministic for a fixed configuration (byte-identical JSON
apart from the timing fields).  Exit status: 0 when every executed check
passes, 1 on any falsification, 2 on configuration, resource, or export
errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from math import comb, factorial
from pathlib import Path

from . import __version__
from .autgrp import (
    ResourceLimitError,
    automorphism_group,
    verify_theorem1,
)
from .cones import (
    adjacency_agreement,
    hypermetric_sweep,
    triangle_incidence_bound,
    triangle_maximality_sweep,
    _facet_incidence_masks,
)
from .core import enumerate_cuts, enumerate_triangle_facets, num_pairs
from .reflections import build_reflection_group, kernel_vector, ray_table
from .ridge import (
    StructureError,
    bfs_distances,
    build_complement,
    build_ridge_graph,
    build_triangle_graph,
    edge_list_lines,
    find_triangles,
    group_facets_by_support,
    intersection_array,
    label_lines,
    to_graph6,
    verify_distance2_property,
    verify_hexagon_neighborhood,
    verify_johnson_isomorphism,
    verify_line_graph_k34,
    verify_rook_neighborhood,
)

SCHEMA_VERSION = 1

CHECK_ORDER = (
    "cuts",
    "facets",
    "incidence",
    "adjacency",
    "hexagons",
    "triangles",
    "gamma",
    "johnson",
    "aut",
    "theorem1",
    "reflect4",
    "hypermetric",
    "theorem2",
)

CLAIMS = {
    "cuts": "nonzero cuts number 2^(n-1)-1 and satisfy every triangle inequality",
    "facets": "triangle facets number 3*C(n,3) with one +1 and two -1 entries on a 3-set",
    "incidence": "every triangle facet contains exactly 3*2^(n-3)-1 cuts",
    "adjacency": "rank-based codimension-2 oracle agrees with the sign-based non-conflicting test",
    "hexagons": "every complement neighborhood is n-3 hexagons on a shared same-support edge",
    "triangles": "common-neighbor census (n-2 vs 2) detects exactly the same-support 3-cliques",
    "gamma": "Triangle quotient: cross-edges in {0,4} as two 2-paths, with the expected regular structure",
    "johnson": "Triangle quotient is the 2-intersection graph on 3-subsets with rook neighborhoods",
    "aut": "automorphism groups have the expected exact orders",
    "theorem1": "ridge-graph automorphisms all come from point permutations (order n!; 144 at n=4)",
    "reflect4": "five ray-swapping reflections generate an order-144 group with a faithful product action",
    "hypermetric": "bounded-coefficient inequalities equal sigma*(1-sigma) on every cut, nonpositive",
    "theorem2": "triangle facets are the unique cut-count maximizers and adjacency is sign-determined",
}

# Exhaustive rank sweeps over all facet pairs stay cheap only up to n=6;
# the bounded-coefficient sweeps are sized for n<=7.
ADJACENCY_SWEEP_MAX_N = 6
HYPERMETRIC_SWEEP_MAX_N = 7


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    n_min: int = 4
    n_max: int = 6
    checks: tuple[str, ...] = CHECK_ORDER
    hypermetric_bound: int = 3
    aut_vertex_cap: int = 300
    output_format: str = "text"
    export_dir: str | None = None

    def validate(self) -> None:
        if not 4 <= self.n_min <= self.n_max:
            raise ConfigError(f"need 4 <= n_min <= n_max, got {self.n_min}..{self.n_max}")
        if self.hypermetric_bound < 1:
            raise ConfigError("hypermetric bound must be positive")
        if self.aut_vertex_cap < 1:
            raise ConfigError("automorphism vertex cap must be positive")
        if self.output_format not in ("text", "json"):
            raise ConfigError(f"unknown output format {self.output_format!r}")
        unknown = [c for c in self.checks if c not in CHECK_ORDER]
        if unknown:
            raise ConfigError(f"unknown checks: {', '.join(unknown)}")

    def as_dict(self) -> dict:
        return {
            "n_min": self.n_min,
            "n_max": self.n_max,
            "checks": list(self.checks),
            "hypermetric_bound": self.hypermetric_bound,
            "aut_vertex_cap": self.aut_vertex_cap,
            "output_format": self.output_format,
            "export_dir": self.export_dir,
        }


# --- check runners ---------------------------------------------------------
# Each runner returns (outcome, details, witness); outcome is one of
# "pass", "fail", "skip".  Witness is None unless the check fails.


def _check_cuts(n: int, cfg: RunConfig):
    cuts = enumerate_cuts(n)
    details = {"cut_count": len(cuts), "expected": 2 ** (n - 1) - 1}
    if len(cuts) != details["expected"] or len(set(cuts)) != len(cuts):
        return "fail", details, {"reason": "wrong cut count or duplicates"}
    for f in enumerate_triangle_facets(n):
        (a, sa), (b, sb), (c, sc) = f.entries()
        for cut in cuts:
            value = sa * cut[a] + sb * cut[b] + sc * cut[c]
            if value > 0:
                return "fail", details, {
                    "facet": repr(f),
                    "cut": sorted(cut.members),
                    "value": value,
                }
    if n == 4:
        details["ray_table_match"] = {c.bits for c in cuts} == set(ray_table())
        if not details["ray_table_match"]:
            return "fail", details, {"reason": "cut set differs from the reference rays"}
    return "pass", details, None


def _check_facets(n: int, cfg: RunConfig):
    facets = enumerate_triangle_facets(n)
    details = {"facet_count": len(facets), "expected": 3 * comb(n, 3)}
    if len(facets) != details["expected"] or len(set(facets)) != len(facets):
        return "fail", details, {"reason": "wrong facet count or duplicates"}
    for f in facets:
        coeffs = f.coeffs()
        if sorted(coeffs) != [-1, -1] + [0] * (num_pairs(n) - 3) + [1]:
            return "fail", details, {"facet": repr(f), "coeffs": coeffs}
        if len(f.support) != 3:
            return "fail", details, {"facet": repr(f)}
    return "pass", details, None


def _check_incidence(n: int, cfg: RunConfig):
    facets, cuts, masks = _facet_incidence_masks(n)
    expected = triangle_incidence_bound(n)
    details = {"facets": len(facets), "cuts_per_facet": expected}
    for f, mask in zip(facets, masks):
        count = mask.bit_count()
        if count != expected:
            return "fail", details, {"facet": repr(f), "count": count, "expected": expected}
    return "pass", details, None


def _check_adjacency(n: int, cfg: RunConfig):
    if n > ADJACENCY_SWEEP_MAX_N:
        return (
            "skip",
            {"reason": f"exhaustive rank sweep capped at n={ADJACENCY_SWEEP_MAX_N}"},
            None,
        )
    total, mismatches = adjacency_agreement(n)
    details = {"pairs": total, "mismatches": len(mismatches)}
    if mismatches:
        f, g, by_rank, by_sign = mismatches[0]
        return "fail", details, {
            "facet_a": repr(f),
            "facet_b": repr(g),
            "rank_oracle": by_rank,
            "sign_test": by_sign,
        }
    return "pass", details, None


def _check_hexagons(n: int, cfg: RunConfig):
    gbar = build_complement(n)
    details = {"vertices": gbar.n, "hexagons_per_vertex": n - 3}
    for u in range(gbar.n):
        try:
            verify_hexagon_neighborhood(gbar, u)
        except StructureError as exc:
            return "fail", details, {"vertex": u, "error": str(exc)}
    return "pass", details, None


def _check_triangles(n: int, cfg: RunConfig):
    gbar = build_complement(n)
    try:
        detected = find_triangles(gbar)
    except StructureError as exc:
        return "fail", {"vertices": gbar.n}, {"error": str(exc)}
    grouped = group_facets_by_support(gbar)
    details = {"triangle_count": len(detected), "expected": comb(n, 3)}
    if detected != grouped:
        return "fail", details, {"reason": "graph detection disagrees with support grouping"}
    if len(detected) != comb(n, 3):
        return "fail", details, {"reason": "wrong Triangle count"}
    if n >= 5:
        triangle_edges = set()
        for t in detected:
            a, b, c = t.vertices
            triangle_edges |= {(a, b), (a, c), (b, c)}
        census = {}
        for e in gbar.edges():
            count = gbar.common_neighbor_count(*e)
            census[count] = census.get(count, 0) + 1
            expected = n - 2 if e in triangle_edges else 2
            if count != expected:
                return "fail", details, {"edge": e, "common_neighbors": count, "expected": expected}
        details["edge_census"] = {str(k): v for k, v in sorted(census.items())}
    else:
        details["note"] = "support-label fallback (census degenerate at n=4)"
    return "pass", details, None


def _check_gamma(n: int, cfg: RunConfig):
    if n < 5:
        return "skip", {"reason": "Triangle quotient degenerate at n=4"}, None
    gbar = build_complement(n)
    try:
        gamma = build_triangle_graph(gbar)
    except StructureError as exc:
        return "fail", {}, {"error": str(exc)}
    details = {"vertices": gamma.n, "degree": 3 * (n - 3)}
    if gamma.n != comb(n, 3):
        return "fail", details, {"reason": "wrong vertex count"}
    if any(gamma.degree(v) != 3 * (n - 3) for v in range(gamma.n)):
        return "fail", details, {"reason": "not regular of degree 3(n-3)"}
    if n == 5:
        # Independent model: complements of the labels are 2-subsets, and the
        # complement of the Petersen graph joins 2-subsets sharing one point.
        duals = [frozenset(set(range(1, 6)) - s) for s in gamma.labels]
        for a in range(10):
            for b in range(a + 1, 10):
                if gamma.has_edge(a, b) != (len(duals[a] & duals[b]) == 1):
                    return "fail", details, {"reason": "not the Petersen complement", "pair": (a, b)}
        details["petersen_complement"] = True
    try:
        arr = intersection_array(gamma)
    except StructureError as exc:
        return "fail", details, {"error": str(exc)}
    details["intersection_array"] = str(arr)
    diameter = len(arr.cs)
    details["diameter"] = diameter
    if n >= 6 and diameter != 3:
        return "fail", details, {"reason": f"diameter {diameter}, expected 3"}
    if n == 6:
        for v in range(gamma.n):
            dist = bfs_distances(gamma, v)
            far = [w for w in range(gamma.n) if dist[w] == 3]
            if len(far) != 1 or gamma.labels[far[0]] != frozenset(range(1, 7)) - gamma.labels[v]:
                return "fail", details, {"vertex": v, "reason": "antipodal pairing failed"}
        details["antipodal_pairing"] = True
        if gamma.n <= cfg.aut_vertex_cap and gbar.n <= cfg.aut_vertex_cap:
            quotient_order = automorphism_group(gamma, cfg.aut_vertex_cap).order
            base_order = automorphism_group(gbar, cfg.aut_vertex_cap).order
            details["aut_gamma6"] = quotient_order
            details["aut_gbar6"] = base_order
            if quotient_order != 1440 or base_order != 720:
                return "fail", details, {
                    "reason": "n=6 exception orders differ from 1440 / 720"
                }
    return "pass", details, None


def _check_johnson(n: int, cfg: RunConfig):
    if n < 5:
        return "skip", {"reason": "Triangle quotient degenerate at n=4"}, None
    gamma = build_triangle_graph(build_complement(n))
    details = {"vertices": gamma.n}
    if not verify_johnson_isomorphism(gamma, n):
        return "fail", details, {"reason": "label map is not an isomorphism"}
    details["johnson_isomorphism"] = True
    for v in range(gamma.n):
        if not verify_rook_neighborhood(gamma, v):
            return "fail", details, {"vertex": v, "reason": "neighborhood is not the rook graph"}
    details["rook_neighborhoods"] = True
    d2 = all(verify_distance2_property(gamma, v) for v in range(gamma.n))
    details["distance2_property"] = d2
    if n >= 7 and not d2:
        return "fail", details, {"reason": "distance-2 4-set condition failed"}
    return "pass", details, None


def _check_aut(n: int, cfg: RunConfig):
    vertices = 3 * comb(n, 3)
    if vertices > cfg.aut_vertex_cap:
        return "skip", {"reason": f"{vertices} vertices above cap {cfg.aut_vertex_cap}"}, None
    gbar = build_complement(n)
    aut = automorphism_group(gbar, cfg.aut_vertex_cap)
    expected = 144 if n == 4 else factorial(n)
    details = {"aut_complement": aut.order, "expected": expected, "generators": len(aut.generators)}
    if aut.order != expected:
        return "fail", details, {"reason": "unexpected automorphism group order"}
    if n >= 5:
        gamma = build_triangle_graph(gbar)
        if gamma.n <= cfg.aut_vertex_cap:
            gamma_order = automorphism_group(gamma, cfg.aut_vertex_cap).order
            gamma_expected = 1440 if n == 6 else factorial(n)
            details["aut_quotient"] = gamma_order
            if gamma_order != gamma_expected:
                return "fail", details, {"reason": "unexpected quotient automorphism order"}
    return "pass", details, None


def _check_theorem1(n: int, cfg: RunConfig):
    vertices = 3 * comb(n, 3)
    if vertices > cfg.aut_vertex_cap:
        return "skip", {"reason": f"{vertices} vertices above cap {cfg.aut_vertex_cap}"}, None
    report = verify_theorem1(n, cfg.aut_vertex_cap)
    details = {
        "aut_order": report.aut_order,
        "induced_order": report.induced_order,
        "expected": report.expected_order,
    }
    if not report.passed:
        witness = {"reason": "automorphism group differs from the induced image"}
        if report.witness is not None:
            witness["extra_automorphism"] = list(report.witness)
        return "fail", details, witness
    return "pass", details, None


def _check_reflect4(n: int, cfg: RunConfig):
    if n != 4:
        return "skip", {"reason": "reflection construction is specific to n=4"}, None
    rays = ray_table()
    others = [rays[k] for k in (0, 1, 2, 5, 6)]
    alpha = kernel_vector(others)
    details = {"kernel_vector": list(alpha)}
    if alpha not in ((0, -1, 1, 1, -1, 0), (0, 1, -1, -1, 1, 0)):
        return "fail", details, {"reason": "kernel vector differs from the reference"}
    report = build_reflection_group()
    details.update(
        {
            "matrix_order": report.matrix_order,
            "perm_order": report.perm_order,
            "faithful": report.faithful,
            "orbit_orders": [report.orbit4_order, report.orbit3_order],
        }
    )
    aut_order = automorphism_group(build_ridge_graph(4), cfg.aut_vertex_cap).order
    details["aut_g4"] = aut_order
    if not report.passed or aut_order != report.matrix_order:
        return "fail", details, {"reason": "reflection certificate failed"}
    return "pass", details, None


def _check_hypermetric(n: int, cfg: RunConfig):
    if n > HYPERMETRIC_SWEEP_MAX_N:
        return (
            "skip",
            {"reason": f"bounded sweep capped at n={HYPERMETRIC_SWEEP_MAX_N}"},
            None,
        )
    sweep = hypermetric_sweep(n, cfg.hypermetric_bound)
    details = {
        "bound": cfg.hypermetric_bound,
        "coefficient_vectors": sweep.vector_count,
        "cuts": sweep.cut_count,
    }
    if sweep.mismatch is not None:
        b, members, direct, closed = sweep.mismatch
        return "fail", details, {
            "coefficients": list(b),
            "cut": members,
            "direct": direct,
            "closed_form": closed,
        }
    if sweep.positive is not None:
        b, members, value = sweep.positive
        return "fail", details, {"coefficients": list(b), "cut": members, "value": value}
    return "pass", details, None


def _check_theorem2(n: int, cfg: RunConfig):
    if n > HYPERMETRIC_SWEEP_MAX_N:
        return (
            "skip",
            {"reason": f"bounded sweep capped at n={HYPERMETRIC_SWEEP_MAX_N}"},
            None,
        )
    sweep = triangle_maximality_sweep(n, cfg.hypermetric_bound)
    details = {
        "bound": cfg.hypermetric_bound,
        "coefficient_vectors": sweep.vector_count,
        "max_cut_count": sweep.max_count,
        "triangle_vectors": sweep.triangle_count,
    }
    if sweep.over_bound is not None:
        b, count = sweep.over_bound
        return "fail", details, {"coefficients": list(b), "count": count}
    if sweep.triangle_failure is not None:
        b, count, rank = sweep.triangle_failure
        return "fail", details, {"coefficients": list(b), "count": count, "rank": rank}
    if sweep.rogue_maximizer is not None:
        b, count, rank = sweep.rogue_maximizer
        return "fail", details, {
            "coefficients": list(b),
            "count": count,
            "rank": rank,
            "reason": "non-triangle facet-inducing maximizer",
        }
    if n <= ADJACENCY_SWEEP_MAX_N:
        total, mismatches = adjacency_agreement(n)
        details["adjacency_pairs"] = total
        if mismatches:
            f, g, by_rank, by_sign = mismatches[0]
            return "fail", details, {"facet_a": repr(f), "facet_b": repr(g)}
    else:
        details["adjacency_note"] = "rank sweep covered for n<=6"
    return "pass", details, None


_RUNNERS = {
    "cuts": _check_cuts,
    "facets": _check_facets,
    "incidence": _check_incidence,
    "adjacency": _check_adjacency,
    "hexagons": _check_hexagons,
    "triangles": _check_triangles,
    "gamma": _check_gamma,
    "johnson": _check_johnson,
    "aut": _check_aut,
    "theorem1": _check_theorem1,
    "reflect4": _check_reflect4,
    "hypermetric": _check_hypermetric,
    "theorem2": _check_theorem2,
}


def run_verify(cfg: RunConfig) -> dict:
    """Execute the selected checks for every n in range and assemble the report."""
    cfg.validate()
    selected = [c for c in CHECK_ORDER if c in cfg.checks]
    records = []
    tally = {"pass": 0, "fail": 0, "skip": 0, "error": 0}
    for n in range(cfg.n_min, cfg.n_max + 1):
        for check in selected:
            start = time.perf_counter()
            try:
                outcome, details, witness = _RUNNERS[check](n, cfg)
            except ResourceLimitError as exc:
                outcome, details, witness = "skip", {"reason": str(exc)}, None
            except Exception as exc:  # surfaced per check, run continues
                outcome, details, witness = "error", {"error": str(exc)}, None
            elapsed = time.perf_counter() - start
            tally[outcome] += 1
            records.append(
                {
                    "check": check,
                    "n": n,
                    "claim": CLAIMS[check],
                    "outcome": outcome,
                    "details": details,
                    "witness": witness,
                    "seconds": round(elapsed, 3),
                }
            )
    return {
        "schema_version": SCHEMA_VERSION,
        "tool": "conesym",
        "tool_version": __version__,
        "config": cfg.as_dict(),
        "checks": records,
        "summary": tally,
    }


def export_graphs(cfg: RunConfig) -> dict:
    """Write the ridge graph, its complement, and the Triangle quotient in
    graph6 and edge-list form with label sidecars, plus a manifest."""
    out_dir = Path(cfg.export_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    manifest = {"schema_version": SCHEMA_VERSION, "files": [], "omitted": []}
    for n in range(cfg.n_min, cfg.n_max + 1):
        graphs = [
            ("ridge", build_ridge_graph(n)),
            ("complement", build_complement(n)),
        ]
        if n >= 5:
            graphs.append(("gamma", build_triangle_graph(build_complement(n))))
        else:
            manifest["omitted"].append(
                {"graph": "gamma", "n": n, "reason": "Triangles are degenerate at n=4"}
            )
        for name, graph in graphs:
            stem = f"{name}_n{n}"
            (out_dir / f"{stem}.g6").write_text(to_graph6(graph) + "\n")
            (out_dir / f"{stem}.edges").write_text("\n".join(edge_list_lines(graph)) + "\n")
            (out_dir / f"{stem}.labels").write_text("\n".join(label_lines(graph)) + "\n")
            manifest["files"].append(
                {
                    "graph": name,
                    "n": n,
                    "vertices": graph.n,
                    "edges": graph.edge_count(),
                    "graph6": f"{stem}.g6",
                    "edge_list": f"{stem}.edges",
                    "labels": f"{stem}.labels",
                }
            )
    manifest["labeling"] = {
        "ridge": "vertex, support i j k, apex pair a b (facet +1 at (a,b))",
        "complement": "vertex, support i j k, apex pair a b (facet +1 at (a,b))",
        "gamma": "vertex, Triangle support i j k",
    }
    (out_dir / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")
    return manifest


def render_text(report: dict) -> str:
    lines = [
        f"conesym {report['tool_version']} verification report",
        f"range n = {report['config']['n_min']}..{report['config']['n_max']}",
        "",
        f"{'check':<12} {'n':>2}  {'outcome':<7} {'seconds':>8}  detail",
        "-" * 78,
    ]
    for rec in report["checks"]:
        detail = ""
        if rec["outcome"] == "pass":
            interesting = {
                k: v
                for k, v in rec["details"].items()
                if not isinstance(v, (dict, list))
            }
            detail = ", ".join(f"{k}={v}" for k, v in list(interesting.items())[:4])
        elif rec["outcome"] == "skip":
            detail = rec["details"].get("reason", "")
        elif rec["outcome"] == "error":
            detail = rec["details"].get("error", "")
        else:
            detail = json.dumps(rec["witness"])
        lines.append(
            f"{rec['check']:<12} {rec['n']:>2}  {rec['outcome']:<7} {rec['seconds']:>8.3f}  {detail}"
        )
    s = report["summary"]
    lines.append("-" * 78)
    lines.append(
        f"summary: {s['pass']} pass, {s['fail']} fail, {s['skip']} skip, {s['error']} error"
    )
    return "\n".join(lines)


def exit_code(report: dict, export_failed: bool = False) -> int:
    if report["summary"]["fail"]:
        return 1
    if report["summary"]["error"] or export_failed:
        return 2
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="conesym",
        description="Certify the combinatorial symmetry structure of cut and metric cones.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    verify = sub.add_parser("verify", help="run the certification checks")
    verify.add_argument("--n-min", type=int, default=4, help="smallest point count (>= 4)")
    verify.add_argument("--n-max", type=int, default=6, help="largest point count")
    verify.add_argument(
        "--checks",
        default=",".join(CHECK_ORDER),
        help="comma-separated check ids: " + ", ".join(CHECK_ORDER),
    )
    verify.add_argument(
        "--hypermetric-bound",
        type=int,
        default=3,
        help="coefficient bound for the bounded inequality sweeps",
    )
    verify.add_argument(
        "--aut-vertex-cap",
        type=int,
        default=300,
        help="skip automorphism computations on graphs above this many vertices",
    )
    verify.add_argument("--format", choices=("text", "json"), default="text")
    verify.add_argument("--export", metavar="DIR", default=None, help="export graphs to DIR")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(
        n_min=args.n_min,
        n_max=args.n_max,
        checks=tuple(c.strip() for c in args.checks.split(",") if c.strip()),
        hypermetric_bound=args.hypermetric_bound,
        aut_vertex_cap=args.aut_vertex_cap,
        output_format=args.format,
        export_dir=args.export,
    )
    try:
        cfg.validate()
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2

    report = run_verify(cfg)

    export_failed = False
    if cfg.export_dir is not None:
        try:
            export_graphs(cfg)
        except OSError as exc:
            export_failed = True
            print(f"export error: {exc}", file=sys.stderr)

    if cfg.output_format == "json":
        print(json.dumps(report, indent=2))
    else:
        print(render_text(report))
    return exit_code(report, export_failed)


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
