"""Benchmark CSV output, per-config summaries and figures."""
from __future__ import annotations

import csv
from pathlib import Path
from typing import Iterable, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

FIELDS = ["instance", "config", "verdict", "seconds", "conflicts", "decisions", "gen_cl_hits", "gen_cu_hits"]
SUMMARY_FIELDS = ["config", "solved", "unsat", "sat", "seconds"]


def write_rows(path: Path | str, rows: Iterable[dict]) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=FIELDS, extrasaction="ignore")
        w.writeheader()
        for r in rows:
            w.writerow(r)


def read_rows(path: Path | str) -> list[dict]:
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def _configs(rows: Sequence[dict]) -> list[str]:
    seen: dict[str, None] = {}
    for r in rows:
        seen.setdefault(r["config"], None)
    return list(seen)


def summarize(rows: Sequence[dict]) -> list[dict]:
    """Solved / UNSAT / SAT counts and total time of solved runs per config."""
    out = []
    for cfg in _configs(rows):
        mine = [r for r in rows if r["config"] == cfg]
        unsat = sum(r["verdict"] == "UNSAT" for r in mine)
        sat = sum(r["verdict"] == "SAT" for r in mine)
        secs = sum(float(r["seconds"]) for r in mine if r["verdict"] != "UNKNOWN")
        out.append({"config": cfg, "solved": unsat + sat, "unsat": unsat, "sat": sat,
                    "seconds": f"{secs:.3f}"})
    return out


def write_summary(path: Path | str, rows: Sequence[dict]) -> list[dict]:
    summary = summarize(rows)
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=SUMMARY_FIELDS)
        w.writeheader()
        w.writerows(summary)
    return summary


def cactus_plot(rows: Sequence[dict], path: Path | str) -> None:
    """Instances solved (x) within a given time (y), one line per config."""
    fig, ax = plt.subplots(figsize=(6, 4))
    for cfg in _configs(rows):
        ts = sorted(float(r["seconds"]) for r in rows if r["config"] == cfg and r["verdict"] != "UNKNOWN")
        acc = 0.0
        ys = []
        for t in ts:
            acc += t
            ys.append(acc)
        ax.step(range(1, len(ys) + 1), ys, where="post", label=cfg)
    ax.set_xlabel("instances solved")
    ax.set_ylabel("cumulative time [s]")
    ax.legend(fontsize=8)
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def counts_plot(rows: Sequence[dict], path: Path | str, key: str = "conflicts") -> None:
    """Mean of a counter column per config."""
    cfgs = _configs(rows)
    means = []
    for cfg in cfgs:
        vals = [int(r[key]) for r in rows if r["config"] == cfg]
        means.append(sum(vals) / len(vals) if vals else 0.0)
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar(range(len(cfgs)), means, color="tab:blue")
    ax.set_xticks(range(len(cfgs)))
    ax.set_xticklabels(cfgs, rotation=30, ha="right")
    ax.set_ylabel(f"mean {key}")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def write_report(rows: Sequence[dict], csv_path: Path | str, fig_dir: Path | str | None = None) -> list[Path]:
    """CSV, summary CSV and figures; returns the files written."""
    csv_path = Path(csv_path)
    csv_path.parent.mkdir(parents=True, exist_ok=True)
    write_rows(csv_path, rows)
    summary_path = csv_path.with_name(csv_path.stem + "_summary.csv")
    write_summary(summary_path, rows)
    fig_dir = Path(fig_dir) if fig_dir is not None else csv_path.parent
    fig_dir.mkdir(parents=True, exist_ok=True)
    cactus = fig_dir / (csv_path.stem + "_cactus.png")
    conflicts = fig_dir / (csv_path.stem + "_conflicts.png")
    decisions = fig_dir / (csv_path.stem + "_decisions.png")
    cactus_plot(rows, cactus)
    counts_plot(rows, conflicts, "conflicts")
    counts_plot(rows, decisions, "decisions")
    return [csv_path, summary_path, cactus, conflicts, decisions]
