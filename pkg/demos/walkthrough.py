"""A tour: one chain over Z, its t-structure, and the Kronecker side."""

from __future__ import annotations

from hereditary_silting.dercat import GradedComplex, derived_hom, plus_dual
from hereditary_silting.fgab import FgAb
from hereditary_silting.kronlat import build_kron_cosilting, build_kron_silting, compact_chain, pp_loc
from hereditary_silting.kronrep import P, Q, hom_dim, quasi_simples
from hereditary_silting.specz import truncate
from hereditary_silting.zchains import ZEpiChain, build_cosilting, build_silting, filtration_of_chain


def main() -> None:
    chain = ZEpiChain.of_list(0, [[2, 3, 5], [3, 5], [5], []])
    t, c = build_silting(chain), build_cosilting(chain)
    print("chain    ", chain)
    print("silting  ", t)
    print("cosilting", c)
    print("T^+ == C ", plus_dual(t) == c)

    f = filtration_of_chain(chain)
    x = GradedComplex.of({0: FgAb.from_cyclics([0, 12]), 1: FgAb.cyclic(9)}, ring="Z")
    tri = truncate(x, f)
    print(f"\ntruncating {x} along {f}")
    print("  aisle part  ", tri.u)
    print("  coaisle part", tri.v)
    print("  Hom(x, C[1])", derived_hom(x, c, 1).to_json())

    print("\nover F_3 there are", len(quasi_simples(3)), "quasi-simple regular modules")
    print("dim Hom(P0, P1) =", hom_dim(P(0).module(2), P(1).module(2)),
          " dim Hom(Q0, P0) =", hom_dim(Q(0).module(2), P(0).module(2)))
    k = compact_chain(pp_loc(0), 0, 1)
    print("compact chain", k.name())
    print("  silting  ", build_kron_silting(k))
    print("  cosilting", build_kron_cosilting(k))


if __name__ == "__main__":
    main()
