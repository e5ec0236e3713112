"""Compare the two orientations of the mirror table on every lattice partner."""

from e3stab.mirror import equivariance_norm, equivariance_residual, lattice_partner

KINDS = ("J", "N11", "N22", "N33", "N12", "N13", "N23", "perm")


def main():
    print(f"{'generator':>9}  {'lexicographic':>8}  {'cyclic':>8}")
    for kind in KINDS:
        g, M = lattice_partner(kind)
        row = [equivariance_residual(g, M, o) for o in ("lexicographic", "cyclic")]
        print(f"{kind:>9}  {row[0]:>13}  {row[1]:>8}")
    g, M = lattice_partner("perm")
    print(f"float residual of perm: lexicographic {equivariance_norm(g, M, 'lexicographic'):.3g}, "
          f"cyclic {equivariance_norm(g, M, 'cyclic'):.3g}")


if __name__ == "__main__":
    main()
