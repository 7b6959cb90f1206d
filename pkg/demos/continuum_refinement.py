"""How closely one split step tracks its continuum transport/mass model.

On a Gaussian packet the one-step change should match
cos(t2)*M1*d_x(psi) + M2*psi; the residual is dominated by the packet's
wavenumber content and falls off as the packet widens.  The table shows the
quarter-per-doubling refinement, plus the mass-free case t1 + t2 = 0 where
the model is pure transport.
"""

from oamwalk import WavepacketSpec, continuum_residual
from oamwalk.continuum import mass_matrix


def main():
    widths = (10.0, 20.0, 40.0, 80.0)
    cases = [(0.1, -0.1), (0.2, -0.15), (0.05, 0.05), (0.0, 0.0)]

    header = " | ".join(f"w={w:<5.0f}" for w in widths)
    print(f"relative residual per packet width\n  (t1, t2)      | {header}")
    for t1, t2 in cases:
        rs = [continuum_residual(t1, t2, WavepacketSpec(width=w)) for w in widths]
        row = " | ".join(f"{r:7.1e}" for r in rs)
        print(f"  ({t1:+.2f},{t2:+.2f}) | {row}")

    print("\nrefinement ratios (width doubled) for (0.1, -0.1):")
    rs = [continuum_residual(0.1, -0.1, WavepacketSpec(width=w)) for w in widths]
    for a, b, w in zip(rs, rs[1:], widths[1:]):
        print(f"  residual(w={w:.0f}) / residual(w={w / 2:.0f}) = {b / a:.3f}")

    print("\nmass matrix for opposite angles (0.3, -0.3):")
    print(mass_matrix(0.3, -0.3))


if __name__ == "__main__":
    main()
