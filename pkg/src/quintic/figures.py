"""Report rendering: delimited check summaries plus diagnostic figures.

``render_report`` writes checks.csv (one row per verification check) next
to PNG figures showing the 5-adic structure the checks certify: the
valuation margins of the operator grid and the valuations of c(n) along
the congruence progressions.
"""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402 - backend must be set first

from . import modeq  # noqa: E402
from .localring import v5  # noqa: E402
from .specialfns import c_series, lam  # noqa: E402


def write_checks_csv(path: Path, checks) -> Path:
    path = Path(path)
    with path.open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["check_id", "statement", "status", "runtime_ms"])
        for chk in checks:
            writer.writerow([chk.check_id, chk.statement, chk.status,
                             chk.runtime_ms])
    return path


def figure_grid_margins(path: Path, m_max: int = 5, n_max: int = 5) -> Path:
    """Heatmap of min_r (v5(coeff_r) - pi_i(m,r)) over the initial grid."""
    fig, axes = plt.subplots(1, 2, figsize=(9, 4), constrained_layout=True)
    for ax, i in zip(axes, (1, 0)):
        table = modeq.h_table(i, m_max, n_max)
        grid = [[0] * n_max for _ in range(m_max)]
        for m in range(1, m_max + 1):
            for n in range(1, n_max + 1):
                margins = [margin for (mm, nn, _), margin
                           in table.margins.items() if mm == m and nn == n]
                grid[m - 1][n - 1] = min(margins) if margins else 0
        image = ax.imshow(grid, origin="lower", cmap="YlGn", vmin=0,
                          extent=(0.5, n_max + 0.5, 0.5, m_max + 0.5))
        for m in range(1, m_max + 1):
            for n in range(1, n_max + 1):
                ax.text(n, m, str(grid[m - 1][n - 1]), ha="center",
                        va="center", fontsize=9)
        ax.set_title(f"U$^{{({i})}}$ margin over $\\pi_{i}$")
        ax.set_xlabel("n")
        ax.set_ylabel("m")
        ax.set_xticks(range(1, n_max + 1))
        ax.set_yticks(range(1, m_max + 1))
        fig.colorbar(image, ax=ax, shrink=0.85)
    fig.suptitle("5-adic valuation margins of the initial operator grid")
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return Path(path)


def figure_family_valuations(path: Path, alpha_max: int = 3,
                             count: int = 40) -> Path:
    """v5(c(5^a n + lambda_a)) against the guaranteed floor a."""
    needed = max(5 ** a * (count - 1) + lam(a)
                 for a in range(1, alpha_max + 1)) + 1
    c = c_series(needed)
    fig, ax = plt.subplots(figsize=(7, 4), constrained_layout=True)
    markers = "o^sd"
    for alpha in range(1, alpha_max + 1):
        xs = list(range(count))
        ys = []
        for n in xs:
            value = c[5 ** alpha * n + lam(alpha)]
            val = v5(value)
            ys.append(alpha + 3 if val == float("inf") else val)
        ax.scatter(xs, ys, s=14, marker=markers[(alpha - 1) % 4],
                   label=f"$v_5(c(5^{alpha} n + {lam(alpha)}))$")
        ax.axhline(alpha, color=f"C{alpha - 1}", linestyle=":", linewidth=1)
    ax.set_xlabel("n")
    ax.set_ylabel("5-adic valuation")
    ax.set_title("coefficient valuations along the congruence progressions")
    ax.legend(fontsize=8)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return Path(path)


def figure_cofactor_residues(path: Path, n_max: int = 15) -> Path:
    """Residues mod 5 of the cofactors h_i(m, n, 1) against n."""
    fig, ax = plt.subplots(figsize=(7, 4), constrained_layout=True)
    series = {
        "$h_1(1,n,1)$": [modeq.h_value(1, 1, n, 1) % 5
                         for n in range(1, n_max + 1)],
        "$h_0(1,n,1)$": [modeq.h_value(0, 1, n, 1) % 5
                         for n in range(1, n_max + 1)],
        "$h_0(2,n,1)$": [modeq.h_value(0, 2, n, 1) % 5
                         for n in range(1, n_max + 1)],
        "$h_0(3,n,1)$": [modeq.h_value(0, 3, n, 1) % 5
                         for n in range(1, n_max + 1)],
    }
    for offset, (label, values) in enumerate(series.items()):
        ax.plot(range(1, n_max + 1),
                [v + offset * 0.04 for v in values],
                marker="o", markersize=4, linewidth=0.8, label=label)
    ax.set_xlabel("n")
    ax.set_ylabel("residue mod 5")
    ax.set_yticks(range(5))
    ax.set_title("linear-coefficient cofactors mod 5")
    ax.legend(fontsize=8)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return Path(path)


def render_report(out_dir: Path, checks) -> list[Path]:
    """Write checks.csv and the diagnostic figures into out_dir."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = [write_checks_csv(out_dir / "checks.csv", checks)]
    written.append(figure_grid_margins(out_dir / "grid_margins.png"))
    written.append(
        figure_family_valuations(out_dir / "family_valuations.png"))
    written.append(
        figure_cofactor_residues(out_dir / "cofactor_residues.png"))
    return written
