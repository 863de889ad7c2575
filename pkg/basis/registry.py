from functools import lru_cache

from basis.fourier import FourierBasis
from basis.hermite import HermiteBasis
from basis.jacobi import HypersphereNBasis, JacobiJBasis
from basis.laguerre import AssocLaguerreBasis, LaguerreMBasis, PlaneZBasis
from basis.spherical import SphericalYBasis
from basis.zernike import ZernikeRBasis, ZernikeWBasis

BASES = {
    cls.tag: cls
    for cls in (
        FourierBasis,
        HermiteBasis,
        LaguerreMBasis,
        AssocLaguerreBasis,
        PlaneZBasis,
        SphericalYBasis,
        JacobiJBasis,
        HypersphereNBasis,
        ZernikeRBasis,
        ZernikeWBasis,
    )
}


@lru_cache(maxsize=None)
def get_basis(family):
    return BASES[family.tag](family)
