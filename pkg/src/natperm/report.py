"""Figure-and-table reports rendered to files.

Each report writes one CSV and one PNG into the target directory and
returns the paths, CSV first. Rendering is headless; nothing here opens
a window.
"""

from __future__ import annotations

import csv
import os
from fractions import Fraction
from typing import List

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .group import finitary_approximation
from .metric import distance
from .rearrange import Rearrangement
from .rotation import BinarySeq, orbit
from .sets import NatSet

# Width over height close to the golden mean; wide enough for axis text.
_FIGSIZE = (7.2, 4.45)


def _finish(fig, path: str):
    fig.tight_layout()
    fig.savefig(path, dpi=144)
    plt.close(fig)


def orbit_report(
    out_dir: str,
    p0: BinarySeq,
    beta: BinarySeq,
    count: int,
    digits: int,
    fuel: int,
) -> List[str]:
    """Orbit points as exact truncations, tabulated and scattered."""
    os.makedirs(out_dir, exist_ok=True)
    points = orbit(p0, beta, count, digits, fuel)
    values = []
    for bits in points:
        total = 0
        for b in bits:
            total = (total << 1) | b
        values.append(Fraction(total, 1 << digits))
    csv_path = os.path.join(out_dir, "orbit.csv")
    with open(csv_path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["step", "digits", "value"])
        for k, (bits, value) in enumerate(zip(points, values)):
            writer.writerow(
                [k, "".join(str(b) for b in bits), f"{value.numerator}/{value.denominator}"]
            )
    fig, ax = plt.subplots(figsize=_FIGSIZE)
    ax.plot(range(count), [float(v) for v in values], ".", markersize=3)
    ax.set_xlabel("step")
    ax.set_ylabel("point in [0, 1)")
    ax.set_ylim(0, 1)
    ax.set_title(f"rotation orbit, {count} steps at {digits} digits")
    png_path = os.path.join(out_dir, "orbit.png")
    _finish(fig, png_path)
    return [csv_path, png_path]


def density_report(out_dir: str, base: NatSet, prefix: int) -> List[str]:
    """Running ones-density of a set against the 1/2 line."""
    os.makedirs(out_dir, exist_ok=True)
    ones = 0
    rows = []
    for n in range(1, prefix + 1):
        if base.contains(n - 1):
            ones += 1
        rows.append((n, ones, Fraction(ones, n)))
    csv_path = os.path.join(out_dir, "density.csv")
    with open(csv_path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["prefix", "ones", "density"])
        for n, count, dens in rows:
            writer.writerow([n, count, f"{dens.numerator}/{dens.denominator}"])
    fig, ax = plt.subplots(figsize=_FIGSIZE)
    ax.plot([r[0] for r in rows], [float(r[2]) for r in rows], linewidth=1)
    ax.axhline(0.5, linestyle="--", linewidth=1)
    ax.set_xlabel("prefix length")
    ax.set_ylabel("ones density")
    ax.set_ylim(0, 1)
    ax.set_title(f"running density of {base.spec}")
    png_path = os.path.join(out_dir, "density.png")
    _finish(fig, png_path)
    return [csv_path, png_path]


def approximation_report(
    out_dir: str, base: NatSet, max_n: int, depth: int = 128
) -> List[str]:
    """Distance caps between a rearrangement and its finite stand-ins.

    Plots the certified exponent of d(approx_n, sigma) against n; the
    guarantee is a line of slope one, and the measured caps sit on or
    above it.
    """
    os.makedirs(out_dir, exist_ok=True)
    sigma = Rearrangement(base).as_permutation()
    rows = []
    for n in range(max_n + 1):
        approx = finitary_approximation(sigma, n)
        value = distance(approx, sigma, depth)
        rows.append((n, value.exponent, value.text()))
    csv_path = os.path.join(out_dir, "approximation.csv")
    with open(csv_path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["window", "exponent", "distance"])
        for n, exponent, text in rows:
            writer.writerow([n, exponent, text])
    fig, ax = plt.subplots(figsize=_FIGSIZE)
    ax.plot([r[0] for r in rows], [r[1] for r in rows], marker="o", markersize=3)
    ax.plot(
        [0, max_n], [1, max_n + 1], linestyle="--", linewidth=1,
        label="guaranteed n + 1",
    )
    ax.set_xlabel("agreement window n")
    ax.set_ylabel("distance exponent j in 2^-j")
    ax.legend()
    ax.set_title(f"finitary approximation of rearrangement by {base.spec}")
    png_path = os.path.join(out_dir, "approximation.png")
    _finish(fig, png_path)
    return [csv_path, png_path]
