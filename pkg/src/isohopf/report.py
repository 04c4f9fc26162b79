"""CSV tables and PNG figures for cross-validation reports and the regression grid."""

from __future__ import annotations

import csv
import re
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .routes import RefinedIndex  # noqa: E402


def _slug(name: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]+", "_", name).strip("_") or "report"


def write_report(report, out_dir: str | Path) -> list[Path]:
    """One CSV row per route plus a bar chart of the per-route answers."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    stem = _slug(report.name)
    csv_path = out / f"{stem}_routes.csv"
    with csv_path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["route", "status", "sqrt_e", "d1", "d2", "detail"])
        for k, r in report.routes.items():
            if isinstance(r, RefinedIndex):
                w.writerow([k, "ok", r.sqrt_e, r.d1 if r.d1 is not None else "", r.d2 if r.d2 is not None else "", ""])
            else:
                w.writerow([k, type(r).__name__, "", "", "", str(r)])
    fig_path = out / f"{stem}_routes.png"
    ok = [(k, r) for k, r in report.routes.items() if isinstance(r, RefinedIndex)]
    fig, ax = plt.subplots(figsize=(max(4.0, 0.8 * len(ok) + 2), 3.2))
    if ok:
        xs = range(len(ok))
        ax.bar(xs, [r.sqrt_e for _, r in ok], color="#4477aa", width=0.5, label="sqrt e")
        d1 = [(x, r.d1) for x, (_, r) in zip(xs, ok) if r.d1 is not None]
        d2 = [(x, r.d2) for x, (_, r) in zip(xs, ok) if r.d2 is not None]
        if d1:
            ax.plot([x for x, _ in d1], [v for _, v in d1], "^", color="#228833", label="d1")
            ax.plot([x for x, _ in d2], [v for _, v in d2], "v", color="#ee6677", label="d2")
        ax.set_xticks(list(xs))
        ax.set_xticklabels([k for k, _ in ok])
        ax.axhline(0, color="black", lw=0.6)
        ax.legend(frameon=False, fontsize=8)
    if report.segre is not None:
        ax.axhline(report.segre, color="grey", ls=":", lw=0.8)
        ax.axhline(-report.segre, color="grey", ls=":", lw=0.8)
    ax.set_title(f"{report.name}: verdict {'pass' if report.passed else 'fail'}", fontsize=10)
    ax.spines["right"].set_visible(False)
    ax.spines["top"].set_visible(False)
    fig.tight_layout()
    fig.savefig(fig_path, dpi=120)
    plt.close(fig)
    return [csv_path, fig_path]


_RUN = re.compile(r"run d=(\d+) i=(\d+) j=(\d+)")


def write_suite(rows: Sequence, out_dir: str | Path) -> list[Path]:
    """All suite rows as CSV, plus per-degree maps of sqrt e over (i, j)."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    csv_path = out / "suite.csv"
    with csv_path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["instance", "route", "expected", "got", "ok"])
        for r in rows:
            w.writerow([r.instance, r.route, r.expected, r.got, int(r.ok)])
    values: dict = {}
    failed: set = set()
    for r in rows:
        m = _RUN.fullmatch(r.instance)
        if not m or r.route not in ("oh8", "rh3"):
            continue
        d, i, j = map(int, m.groups())
        got = r.got
        if isinstance(got, tuple):
            got = got[0] - got[1]
        if isinstance(got, int):
            values[(d, i, j)] = got
        if not r.ok:
            failed.add((d, i, j))
    paths = [csv_path]
    degrees = sorted({k[0] for k in values})
    if degrees:
        fig, axes = plt.subplots(1, len(degrees), figsize=(2.9 * len(degrees), 3.0), squeeze=False, layout="constrained")
        for ax, d in zip(axes[0], degrees):
            grid = [[float("nan")] * (d + 1) for _ in range(d + 1)]
            for (dd, i, j), v in values.items():
                if dd == d:
                    grid[j][i] = v
            im = ax.imshow(grid, origin="lower", cmap="coolwarm", vmin=-16, vmax=16)
            for (dd, i, j), v in values.items():
                if dd == d:
                    ax.text(i, j, str(v), ha="center", va="center", fontsize=7, color="red" if (dd, i, j) in failed else "black")
            ax.set_title(f"d = {d}", fontsize=9)
            ax.set_xlabel("i")
            ax.set_ylabel("j")
            ax.set_xticks(range(d + 1))
            ax.set_yticks(range(d + 1))
        fig.colorbar(im, ax=list(axes[0]), shrink=0.85, label="sqrt e")
        fig_path = out / "grid_sqrt_e.png"
        fig.savefig(fig_path, dpi=120)
        plt.close(fig)
        paths.append(fig_path)
    return paths
