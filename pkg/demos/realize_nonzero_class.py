"""Find groups G whose outer-action cocycle realizes the nonzero class of H^3(C2, Z/2).

The type (C2, Z/2, xi) with xi(s,s,s) = 1 is not strict. Searching the catalog
for kernels C2 -> Out(G) with Z(G) = Z/2 and matching class turns up D8 and Q16.
Each hit is then strictified and the reduction is checked.
"""

from pathlib import Path

from grcat import catalog_group, kernel_search, load, verify_strictification

FX = Path(__file__).resolve().parents[1] / "src" / "grcat" / "data" / "fixtures"

T = load(FX / "grtypes" / "c2_z2_nontrivial.json")
res = kernel_search(T, [(n, catalog_group(n)) for n in ("D4", "Q8", "D8", "Q16", "QD16", "M16")])
for r in res.realizations:
    K = r.kernel
    rep = verify_strictification(K)
    good, total = rep.tally("strictification")
    print(f"G = {K.name:4s} psi = {list(K.psi.image)}  strictification checks {good}/{total}")
