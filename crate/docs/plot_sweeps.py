#!/usr/bin/env python3
"""Plot a covsim sweep CSV: first column on x, every other column as a line.

Usage: plot_sweeps.py <sweep.csv> [out.png]

Convenience only; the CSV is the tested contract, this script is not.
"""
import sys

import matplotlib.pyplot as plt


def main() -> None:
    if len(sys.argv) < 2:
        sys.exit(__doc__)
    path = sys.argv[1]

    with open(path) as f:
        rows = [line.strip() for line in f if line.strip() and not line.startswith("#")]
    header = rows[0].split(",")
    data = [[float(v) for v in row.split(",")] for row in rows[1:]]
    columns = list(zip(*data))

    for name, ys in zip(header[1:], columns[1:]):
        plt.plot(columns[0], ys, marker="o", markersize=3, label=name)
    plt.xlabel(header[0])
    plt.legend()
    plt.grid(True, alpha=0.3)
    plt.title(path)

    if len(sys.argv) > 2:
        plt.savefig(sys.argv[2], dpi=150, bbox_inches="tight")
        print(f"saved {sys.argv[2]}")
    else:
        plt.show()


if __name__ == "__main__":
    main()
