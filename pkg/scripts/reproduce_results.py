#!/usr/bin/env python3
"""
Recompute the published dimension tables and report pass/fail per item.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List

PROJECT_ROOT = Path(__file__).resolve().parents[1]
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

from double_poisson import __version__  # noqa: E402
from double_poisson.bracket import is_poisson_tensor  # noqa: E402
from double_poisson.classical import classical_cohomology, comm_poly  # noqa: E402
from double_poisson.cohomology import cohomology_summary, dims_by_weight  # noqa: E402
from double_poisson.config import get_settings  # noqa: E402
from double_poisson.finalg import (  # noqa: E402
    catalogue_2dim,
    catalogue_entry,
    compare_weight1,
    equivalence_trials,
    hochschild_dims,
)
from double_poisson.necklace import PolyField  # noqa: E402
from double_poisson.quiver import free_quiver  # noqa: E402

PLANE = free_quiver(("x", "y"))

TENSORS = {
    "P0": [["x", "*x", "*x"]],
    "P0~": [["x", "*x", "*x"], ["y", "*y", "*y"]],
    "P1": [["x", "*x", "*x"], ["y", "*x", "*y"]],
    "P1~": [["x", "*x", "*y"], ["y", "*y", "*y"]],
    "x d/dx x d/dy": [["x", "*x", "x", "*y"]],
}

# (tensor, star degree, weights, expected dimensions)
COHOMOLOGY_TABLES = [
    ("P0", 0, 7, [1, 2, 2, 2, 2, 2, 2]),
    ("P0", 1, 6, [2, 1, 1, 1, 1, 1]),
    ("P0~", 0, 7, [1, 2, 2, 2, 2, 2, 2]),
    ("P0~", 1, 6, [2, 0, 0, 0, 0, 0]),
    ("P1", 0, 7, [1, 0, 0, 0, 0, 0, 0]),
    ("P1", 1, 6, [1, 0, 0, 0, 0, 0]),
    ("P1~", 0, 7, [1, 0, 0, 0, 0, 0, 0]),
    ("P1~", 1, 6, [1, 0, 0, 0, 0, 0]),
    ("x d/dx x d/dy", 0, 7, [1, 0, 0, 0, 0, 0, 0]),
    ("x d/dx x d/dy", 1, 6, [1, 2, 1, 0, 0, 0]),
]


def parse_args() -> argparse.Namespace:
    parser = argparse.ArgumentParser(description="Reproduce the double Poisson cohomology tables.")
    parser.add_argument("--json", action="store_true", help="Print JSON output.")
    parser.add_argument("--quick", action="store_true", help="Skip the three-dimensional and degree-3 checks.")
    parser.add_argument("--seed", type=int, default=None, help="Seed for the random equivalence trials.")
    parser.add_argument("--log-level", default="WARNING", help="Logging level for progress messages.")
    return parser.parse_args()


def _tensor(name: str) -> PolyField:
    return PolyField.from_words(PLANE, [(1, word) for word in TENSORS[name]])


def _item(name: str, expected: Any, observed: Any) -> Dict[str, Any]:
    return {"item": name, "expected": expected, "observed": observed, "ok": expected == observed}


def _cohomology_items(settings: Any) -> List[Dict[str, Any]]:
    items = []
    for name, k, weights, expected in COHOMOLOGY_TABLES:
        reports = cohomology_summary(_tensor(name), [k], range(weights), settings, representatives=False)
        items.append(_item(f"H^{k}({name}) by weight", expected, dims_by_weight(reports, k)))
    return items


def _catalogue_items() -> List[Dict[str, Any]]:
    items = [
        _item(f"{entry.name} is Poisson", True, is_poisson_tensor(entry.tensor).is_poisson)
        for entry in catalogue_2dim()
    ]
    broken = PolyField.from_word(PLANE, ["x", "*x", "*y"])
    items.append(_item("x d/dx d/dy is Poisson", False, is_poisson_tensor(broken).is_poisson))
    return items


def _algebra_items(settings: Any, seed: int, quick: bool) -> List[Dict[str, Any]]:
    items = [
        _item("equivalence, n=2, 50 trials", True, equivalence_trials(2, 50, seed).equivalence_holds),
        _item("HH(CxC), i=0..3", [2, 0, 0, 0], hochschild_dims(catalogue_entry("CxC").constants, 3, settings).dims()),
    ]
    if quick:
        return items
    items.append(_item("equivalence, n=3, 20 trials", True, equivalence_trials(3, 20, seed).equivalence_holds))
    for entry in catalogue_2dim():
        rows = compare_weight1(entry.constants, 3, settings)
        items.append(
            _item(f"HH({entry.name}) = weight-1 H, i=0..3", True, all(r.dims_match and r.intertwines for r in rows))
        )
    return items


def _classical_items(settings: Any) -> List[Dict[str, Any]]:
    squared = classical_cohomology(comm_poly("x^2"), 6, settings)
    linear = classical_cohomology(comm_poly("y"), 6, settings)
    return [
        _item("H^1(x^2) by degree", [1, 2, 1, 1, 1, 1, 1], squared.column("h1")),
        _item("H^0(x^2) total", 1, squared.totals()["h0"]),
        _item("H(y) totals", {"h0": 1, "h1": 1, "h2": 0}, linear.totals()),
    ]


def collect_results(seed: int, quick: bool) -> Dict[str, Any]:
    settings = get_settings()
    sections: Dict[str, Callable[[], List[Dict[str, Any]]]] = {
        "catalogue": _catalogue_items,
        "cohomology": lambda: _cohomology_items(settings),
        "algebras": lambda: _algebra_items(settings, seed, quick),
        "classical": lambda: _classical_items(settings),
    }
    items: List[Dict[str, Any]] = []
    for section, build in sections.items():
        for item in build():
            item["section"] = section
            items.append(item)
    failed = [item["item"] for item in items if not item["ok"]]
    return {
        "version": __version__,
        "seed": seed,
        "status": "fail" if failed else "pass",
        "failed": failed,
        "items": items,
    }


def format_results(report: Dict[str, Any]) -> str:
    lines = [f"double-poisson {report['version']} (seed {report['seed']}): {report['status'].upper()}"]
    for item in report["items"]:
        mark = "PASS" if item["ok"] else "FAIL"
        lines.append(f"  [{mark}] {item['section']}: {item['item']} -> {item['observed']}")
    return "\n".join(lines)


def main() -> int:
    args = parse_args()
    logging.basicConfig(level=args.log_level.upper(), format="%(asctime)s - %(name)s - %(levelname)s - %(message)s")
    seed = args.seed if args.seed is not None else get_settings().seed
    report = collect_results(seed, args.quick)

    if args.json:
        print(json.dumps(report, indent=2, ensure_ascii=True))
    else:
        print(format_results(report))
    return 0 if report["status"] == "pass" else 1


if __name__ == "__main__":
    raise SystemExit(main())
