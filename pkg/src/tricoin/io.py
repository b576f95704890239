"""CSV and JSON serialization of trajectories.

Floats are written with 12 significant digits so that repeated runs give
byte-identical files.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import IO, Any

from tricoin.analytics import Trajectory

CSV_HEADER = (
    "t",
    "coin_entropy_bits",
    "position_entropy_bits",
    "mutual_information_bits",
    "position_mean",
    "position_variance",
)
DIST_HEADER = ("t", "site", "probability")

TRAJECTORY_SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "tricoin trajectory",
    "type": "object",
    "required": ["tool", "version", "config", "records"],
    "additionalProperties": False,
    "properties": {
        "tool": {"const": "tricoin"},
        "version": {"type": "string"},
        "config": {
            "type": "object",
            "required": ["initial", "rule", "steps", "lattice"],
            "properties": {
                "initial": {"type": "string"},
                "rule": {"type": "string"},
                "steps": {"type": "integer", "minimum": 1},
                "lattice": {"type": "integer", "minimum": 1},
            },
        },
        "records": {
            "type": "array",
            "items": {
                "type": "object",
                "required": list(CSV_HEADER) + ["position_distribution"],
                "additionalProperties": False,
                "properties": {
                    "t": {"type": "integer", "minimum": 0},
                    "coin_entropy_bits": {"type": "number", "minimum": 0},
                    "position_entropy_bits": {"type": "number", "minimum": 0},
                    "mutual_information_bits": {"type": "number", "minimum": 0},
                    "position_mean": {"type": "number"},
                    "position_variance": {"type": "number", "minimum": 0},
                    "position_distribution": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": ["site", "probability"],
                            "properties": {
                                "site": {"type": "integer"},
                                "probability": {"type": "number", "minimum": 0},
                            },
                        },
                    },
                },
            },
        },
    },
}

_DIST_FLOOR = 1e-300


def fmt(x: float) -> str:
    s = f"{float(x):.12g}"
    return "0" if s == "-0" else s


def _num(x: float) -> float:
    return float(fmt(x))


def _support(rec) -> list[tuple[int, float]]:
    half = (rec.position_distribution.size - 1) // 2
    return [(i - half, p) for i, p in enumerate(rec.position_distribution) if p > _DIST_FLOOR]


def write_csv(traj: Trajectory, out: IO[str], dist_out: IO[str] | None = None) -> None:
    out.write(",".join(CSV_HEADER) + "\n")
    for rec in traj:
        row = rec.scalars()
        out.write(",".join(str(row[k]) if k == "t" else fmt(row[k]) for k in CSV_HEADER) + "\n")
    if dist_out is not None:
        dist_out.write(",".join(DIST_HEADER) + "\n")
        for rec in traj:
            for site, p in _support(rec):
                dist_out.write(f"{rec.t},{site},{fmt(p)}\n")


def trajectory_to_json(traj: Trajectory, config: dict, version: str) -> dict:
    records = []
    for rec in traj:
        row = {k: (v if k == "t" else _num(v)) for k, v in rec.scalars().items()}
        row["position_distribution"] = [{"site": s, "probability": _num(p)} for s, p in _support(rec)]
        records.append(row)
    return {"tool": "tricoin", "version": version, "config": config, "records": records}


def write_json(traj: Trajectory, out: IO[str], config: dict, version: str) -> None:
    json.dump(trajectory_to_json(traj, config, version), out, indent=2, sort_keys=True)
    out.write("\n")


def dist_path(out: Path) -> Path:
    return out.with_name(out.name + ".dist.csv")
