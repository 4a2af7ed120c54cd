#!/usr/bin/env python3
"""Fidelity of composite NOT gates across a wide range of amplitude errors.

Sweeps the bare pi pulse against the first two nested gates, prints a
small table, writes the full curves to CSV, and saves a plot next to it.
Output lands in demos/output/.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from pulsenest import PhaseSequence, fidelity_sweep, fn_phases

OUT = Path(__file__).parent / "output"


def main():
    OUT.mkdir(exist_ok=True)
    eps = np.linspace(-0.9, 0.9, 361)
    single = PhaseSequence((0.0,), "applied", "bare pi")
    curves = {}
    for seq in (single, fn_phases(1), fn_phases(2)):
        rows = fidelity_sweep(seq, eps).rows
        curves[seq.label] = np.array([float(r[2]) for r in rows])

    print(f"{'eps':>6} " + " ".join(f"{k:>12}" for k in curves))
    for e in (0.05, 0.1, 0.2, 0.3, 0.5):
        i = int(np.argmin(np.abs(eps - e)))
        print(f"{e:>6.2f} " + " ".join(f"{curves[k][i]:12.9f}" for k in curves))

    csv = OUT / "amplitude_sweep.csv"
    header = "epsilon," + ",".join(k.replace(" ", "_") for k in curves)
    data = np.column_stack([eps] + list(curves.values()))
    np.savetxt(csv, data, delimiter=",", header=header, comments="")
    print(f"\nwrote {csv}")

    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(11, 4))
    for label, fid in curves.items():
        ax1.plot(eps, fid, label=label)
        ax2.semilogy(eps, np.maximum(1 - fid, 1e-17), label=label)
    ax1.set_xlabel("amplitude error fraction")
    ax1.set_ylabel("fidelity with the ideal NOT")
    ax1.set_ylim(0, 1.02)
    ax1.legend()
    ax2.set_xlabel("amplitude error fraction")
    ax2.set_ylabel("infidelity")
    ax2.legend()
    fig.tight_layout()
    png = OUT / "amplitude_sweep.png"
    fig.savefig(png, dpi=130)
    print(f"wrote {png}")


if __name__ == "__main__":
    main()
