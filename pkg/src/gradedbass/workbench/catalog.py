"""Built-in example scripts; every entry is expected to run to exit code 0."""

from __future__ import annotations

from ..errors import InputError


class UnknownCatalogEntry(InputError):
    pass


_SCRIPTS: dict[str, str] = {}


def _add(name: str, text: str):
    _SCRIPTS[name] = text.strip() + "\n"


_add("regular-2", """
# The regular ring k[x,y]: the Koszul complex resolves k, R is Gorenstein of dimension 2.
ring R = k[x,y]
module k over R = residue
module F over R = free
koszul R expect resolves
betti k expect 1,2,1,0,0,0,0
bass F expect 0,0,1,0,0,0,0
verify regularity R
""")

_add("max-ideal-kxy", """
# Bass numbers of the maximal ideal of k[x,y] against r*C(d, n-1), zero at n = d+1.
ring R = k[x,y]
module F over R = free
module mF over R = maxideal F
bass mF expect 0,1,2,0,0,0,0
verify regular-remark F
""")

_add("max-ideal-kxyz", """
ring R = k[x,y,z]
module F over R = free
module mF over R = maxideal F
bass mF expect 0,1,3,3,0,0,0
verify regular-remark F
""")

_add("max-ideal-rank2", """
# A free module of rank two over k[x]: r = 2, d = 1.
ring R = k[x]
module F over R = free (0, 0)
module mF over R = maxideal F
bass mF expect 0,2,0,0,0,0,0
verify regular-remark F
""")

_add("zero-maps", """
# beta = pi^N : N -> N/mN induces zero maps on Ext(k, -) when pd N is finite and R is singular.
ring A = k[x]/(x^2)
module RA over A = free
module tA over A = top RA
map piA : RA -> tA = natural
verify zero-map piA
ext-map piA expect zero

ring B = k[x,y]/(x^2)
module RB over B = free
module tB over B = top RB
map piB : RB -> tB = natural
verify zero-map piB
ext-map piB expect zero
module NB over B = quotient (y)
module tN over B = top NB
map piN : NB -> tN = natural
verify zero-map piN
ext-map piN expect zero

ring C = k[x,y]/(x^2, x*y, y^2)
module RC over C = free
module tC over C = top RC
map piC : RC -> tC = natural
verify zero-map piC
ext-map piC expect zero

# over a regular ring the same map is nonzero and the hypothesis check refuses
ring P = k[x]
module RP over P = free
module tP over P = top RP
map piP : RP -> tP = natural
ext-map piP expect nonzero
verify zero-map piP expect violated
""")

_add("regularity-criteria", """
# The five regularity criteria agree on three regular and three singular rings.
ring R1 = k[x]
verify regularity R1
ring R2 = k[x,y]
verify regularity R2
ring R3 = k[x,y,z]
verify regularity R3
ring S1 = k[x]/(x^2)
verify regularity S1
ring S2 = k[x,y]/(x^2)
verify regularity S2
ring S3 = k[x,y]/(x^2, x*y, y^2)
verify regularity S3
""")

_add("bass-decomposition-dim1", """
# mu^n(M cap mN) = mu^n(M) + r mu^{n-1}(k) with M = N = R over k[x,y]/(x^2).
ring R = k[x,y]/(x^2)
module F over R = free
module mF over R = maxideal F
map id : F -> F = identity
bass mF expect 0,2,2,2,2,2,2
verify bass-decomposition id
""")

_add("bass-decomposition-x2", """
ring R = k[x]/(x^2)
module F over R = free
module mF over R = maxideal F
map id : F -> F = identity
bass mF expect 1,1,1,1,1,1,1
verify bass-decomposition id
""")

_add("closed-formula", """
# M = mN for N = R/(y) over k[x,y]/(x^2): closed formula, series form and Foxby's identity.
ring R = k[x,y]/(x^2)
module N over R = quotient (y)
module M over R = maxideal N
map inc : M -> N = inclusion
bass M expect 1,2,2,2,2,2,2
bass N expect 1,1,0,0,0,0,0
verify closed-formula inc
""")

_add("fiber-x2-y2", """
# R = k[x]/(x^2) x_k k[y]/(y^2) and M = S x_k T with v = 1.
ring S = k[x]/(x^2)
ring T = k[y]/(y^2)
fiber S T
ring R = fiber S T
module N over S = free
module P over T = free
module M over R = fiber N P
module mM over R = maxideal M
bass mM expect 2,4,8,16,32,64,128
verify fiber-bass R N P
""")

_add("lescot-x2-y3", """
# Bass series of an S-module over R = S x_k T, divided by the Poincare series of k.
ring S = k[x]/(x^2)
ring T = k[y]/(y^3)
ring R = fiber S T
module N over S = free
module NR over R = restrict N
bass NR expect 1,1,2,4,8,16,32
series bass NR expect 1,1,2,4,8,16,32
verify lescot R N
series divide 1,-1 1,-2 6 expect 1,1,2,4,8,16,32
""")

_add("stable-x2", """
# Stable cohomology over k[x]/(x^2) from the matrix factorization (x, x).
ring R = k[x]/(x^2)
module k over R = residue
module F over R = free
matfac k
stable k k -4 6 expect 1,1,1,1,1,1,1,1,1,1,1
stable k k -4 6 expect periodic
eta k k 0 6 expect injective
stable k F -4 6 expect zero
stable F k -4 6 expect zero
eta k F 0 6 expect zero
additivity k 0 k k
additivity k 3 k k
additivity k 2 k F
""")

_add("hypersurface-dim1", """
# The one-dimensional hypersurface k[x,y]/(x^2).
ring R = k[x,y]/(x^2)
module k over R = residue
module F over R = free
resolve k 6 expect 1,2,2,2,2,2,2
bass F expect 0,1,0,0,0,0,0
series poincare k expect 1,2,2,2,2,2,2
matfac k
stable k k -2 4 expect 2,2,2,2,2,2,2
eta k k 0 4 expect injective
additivity k 1 k F
""")

_add("tor-zero", """
# Tor_n(k, alpha) = 0 for maps out of k routed through modules of finite injective dimension.
ring A = k[x]/(x^2)
module kA over A = residue 1
module RA over A = free
map alphaA : kA -> RA = [[x]]
map idA : RA -> RA = identity
verify tor-zero alphaA via alphaA idA
tor-map alphaA expect zero

ring B = k[x,y]/(x^2)
module k1 over B = residue 1
module W over B = quotient (y)
map alpha : k1 -> W = [[x]]
map idW : W -> W = identity
verify tor-zero alpha via alpha idW
tor-map alpha expect zero
module k2 over B = residue 2
module W2 over B = quotient (y^2)
map alpha2 : k2 -> W2 = [[x*y]]
map idW2 : W2 -> W2 = identity
verify tor-zero alpha2 via alpha2 idW2
tor-map alpha2 expect zero
""")

_add("oracle-random", """
# Seeded random Artinian monomial quotients: Groebner pipeline against dense linear algebra.
ring A1 = random 2
verify oracle A1
ring A2 = random 2
verify oracle A2
ring A3 = random 2
verify oracle A3
ring A4 = random 3
verify oracle A4
ring A5 = random 3
verify oracle A5
ring A6 = random 2
verify oracle A6
""")

_add("oracle-fixed", """
ring A = k[x,y]/(x^2, y^3, x*y^2)
verify oracle A
ring B = k[x,y,z]/(x^2, y^2, z^2, x*y)
verify oracle B
""")


# Older names kept resolvable for scripts that refer to them; not listed.
_ALIASES = {
    "remark-3.4-kxy": "max-ideal-kxy",
    "thm-3.1-hypersurface": "bass-decomposition-dim1",
}


def catalog(name: str | None = None):
    """Names of all entries, or the script text of one entry."""
    if name is None:
        return sorted(_SCRIPTS)
    name = _ALIASES.get(name, name)
    if name not in _SCRIPTS:
        raise UnknownCatalogEntry(f"no catalog entry named '{name}'")
    return _SCRIPTS[name]


__all__ = ["catalog", "UnknownCatalogEntry"]
