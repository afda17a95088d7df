#!/usr/bin/env python3
"""Decompose a named test-function profile and export coefficients + bands.

Usage: python scripts/decompose_profile_demo.py "f_j_lambda(j=3,lambda=8)" [outdir]
"""

import sys
from pathlib import Path

from radialfs.core import Grid1D
from radialfs.covering import AtomSpec
from radialfs.decompose import decompose_profile, dyadic_band_spectrum
from radialfs.families import parse_family


def main(argv):
    desc = argv[0] if argv else "psi_cutoff"
    outdir = Path(argv[1]) if len(argv) > 1 else Path("out/decompose")
    outdir.mkdir(parents=True, exist_ok=True)
    fam = parse_family(desc)
    prof = fam.profile(Grid1D.uniform(2.0 ** -12, max(2.0, fam.support[1] * 1.3)),
                       d=2)
    spec = AtomSpec(2, -1, 1.0, 2.0)
    dec = decompose_profile(prof, spec, J=10)
    dec.to_csv(outdir / "coefficients.csv")
    spectrum = dyadic_band_spectrum(prof, n_fft=2 ** 14)
    spectrum.to_csv(outdir / "bands.csv")
    print(f"{desc}: {len(dec.coefficients)} coefficients, "
          f"residual {dec.residual_norm:.3e}")
    print(f"residual history: "
          f"{', '.join(f'{v:.2e}' for v in dec.residual_history)}")
    print(f"wrote {outdir / 'coefficients.csv'} and {outdir / 'bands.csv'}")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
