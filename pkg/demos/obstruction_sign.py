"""Compare the factor-set obstruction k of a kernel with the pulled-back outer cocycle.

With f(x, y) taken to be the same group elements h(psi x, psi y) that define
xi', the two cochains are exact negatives. Over Z/2 coefficients, or whenever
the class is zero, the sign is invisible at the level of classes.
"""

from grcat import catalog_group, make_kernel
from grcat.automorphisms import aut_data
from grcat.cohomology import cohomologous
from grcat.extension import kernel_obstruction
from grcat.groups import iter_homomorphisms
from grcat.strict import OuterCocycle

for name in ("C4", "Q8", "D4", "Dic3"):
    G = catalog_group(name)
    out = aut_data(G).out_group
    for P in (catalog_group("C2"), catalog_group("C2xC2")):
        for image in iter_homomorphisms(P, out):
            K = make_kernel(P, G, image, name)
            k = kernel_obstruction(K)
            pulled = OuterCocycle(G).pullback(K.psi).over(k.module)
            print(f"{name:5s} |Pi|={P.order} psi={list(image)}: k == -psi*xi' {k == -pulled}, "
                  f"k ~ psi*xi' {cohomologous(k, pulled) is not None}")
